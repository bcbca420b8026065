use std::path::{Path, PathBuf};

use crate::error::Error;
use crate::exact::{self, AngularRadius, CenterDistance, CylinderLength};
use crate::geometry::{BallSet, Canonical, Measures, Sphere};
use crate::numerics::{mc_mean_width, mc_surface_area, mc_volume, McConfig};
use crate::skeleton::{ballset_measures, Skeleton};

use super::report::{Method, Report, MEAN_WIDTH, SURFACE_AREA, VOLUME};
use super::CliError;

pub const ADJACENT_VERTEX: &str = "adjacent vertex-to-vertex distance";
pub const VERTEX_DISTANCE: &str = "vertex-to-vertex distance";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolidKind {
    Dihedron,
    Lens,
    Trihedron,
    Tetrahedron,
    Meissner,
    CappedCylinder,
    Segment,
    CapBody,
    Hexahedron,
    Dodecahedron,
    Custom,
}

impl SolidKind {
    pub const ALL: [SolidKind; 11] = [
        SolidKind::Dihedron,
        SolidKind::Lens,
        SolidKind::Trihedron,
        SolidKind::Tetrahedron,
        SolidKind::Meissner,
        SolidKind::CappedCylinder,
        SolidKind::Segment,
        SolidKind::CapBody,
        SolidKind::Hexahedron,
        SolidKind::Dodecahedron,
        SolidKind::Custom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SolidKind::Dihedron => "dihedron",
            SolidKind::Lens => "lens",
            SolidKind::Trihedron => "trihedron",
            SolidKind::Tetrahedron => "tetrahedron",
            SolidKind::Meissner => "meissner",
            SolidKind::CappedCylinder => "capped-cylinder",
            SolidKind::Segment => "segment",
            SolidKind::CapBody => "cap-body",
            SolidKind::Hexahedron => "hexahedron",
            SolidKind::Dodecahedron => "dodecahedron",
            SolidKind::Custom => "custom",
        }
    }

    pub fn from_name(name: &str) -> Result<Self, Error> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == name)
            .ok_or_else(|| Error::UnknownSolid(name.to_owned()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Parameter {
    Phi(AngularRadius),
    Delta(CenterDistance),
    Ell(CylinderLength),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolidSpec {
    pub kind: SolidKind,
    pub parameter: Option<Parameter>,
    pub input: Option<PathBuf>,
}

impl SolidSpec {
    /// Checks that exactly the flags belonging to `kind` are present.
    pub fn from_flags(
        solid: &str,
        phi: Option<f64>,
        delta: Option<f64>,
        ell: Option<f64>,
        input: Option<PathBuf>,
    ) -> Result<Self, Error> {
        let kind = SolidKind::from_name(solid)?;
        let reject = |flag: &str| {
            Err(Error::Invalid(format!("--{flag} does not apply to solid `{solid}`")))
        };
        if phi.is_some() && delta.is_some() {
            return Err(Error::Invalid(
                "--phi and --delta are alternative parametrizations; give only one".into(),
            ));
        }
        let accepts_phi = matches!(kind, SolidKind::Lens | SolidKind::Segment | SolidKind::CapBody);
        if phi.is_some() && !accepts_phi {
            return reject("phi");
        }
        if delta.is_some() && kind != SolidKind::Lens {
            return reject("delta");
        }
        if ell.is_some() && kind != SolidKind::CappedCylinder {
            return reject("ell");
        }
        if input.is_some() && kind != SolidKind::Custom {
            return reject("input");
        }
        let parameter = match kind {
            SolidKind::Lens | SolidKind::Segment | SolidKind::CapBody => {
                match (phi, delta) {
                    (Some(p), _) => Some(Parameter::Phi(AngularRadius::new(p)?)),
                    (_, Some(d)) => Some(Parameter::Delta(CenterDistance::new(d)?)),
                    _ => {
                        return Err(Error::Invalid(format!(
                            "solid `{solid}` needs {}",
                            if kind == SolidKind::Lens { "--phi or --delta" } else { "--phi" }
                        )))
                    }
                }
            }
            SolidKind::CappedCylinder => Some(Parameter::Ell(CylinderLength::new(
                ell.ok_or_else(|| Error::Invalid("solid `capped-cylinder` needs --ell".into()))?,
            )?)),
            _ => None,
        };
        if kind == SolidKind::Custom && input.is_none() {
            return Err(Error::Invalid("solid `custom` needs --input".into()));
        }
        Ok(SolidSpec {
            kind,
            parameter,
            input,
        })
    }
}

fn phi_of(p: Option<Parameter>) -> AngularRadius {
    match p {
        Some(Parameter::Phi(phi)) => phi,
        Some(Parameter::Delta(d)) => AngularRadius::from_delta(d),
        _ => unreachable!("validated by SolidSpec::from_flags"),
    }
}

fn closed(kind: SolidKind, m: Measures) -> Report {
    Report::new(Some(kind.name()), m, [Method::ClosedForm; 3])
}

/// Best available measures: closed forms where they exist, the skeleton for
/// the hexahedron and dodecahedron, and the custom pipeline for sphere files.
pub fn measure(spec: &SolidSpec, mc: &McConfig) -> Result<Report, CliError> {
    let kind = spec.kind;
    let mut report = match kind {
        SolidKind::Dihedron => closed(kind, exact::dihedron_measures()),
        SolidKind::Lens => {
            let phi = phi_of(spec.parameter);
            let mut r = closed(kind, exact::lens_measures(phi));
            match spec.parameter {
                Some(Parameter::Delta(d)) => {
                    r.parameters.insert("delta".into(), d.get());
                    // the δ form avoids the round trip through φ
                    r.volume = exact::lens_volume_from_delta(d);
                }
                _ => {
                    r.parameters.insert("phi".into(), phi.get());
                }
            }
            r
        }
        SolidKind::Trihedron => closed(kind, exact::trihedron_measures()),
        SolidKind::Tetrahedron => closed(kind, exact::reuleaux_tetrahedron_measures()),
        SolidKind::Meissner => closed(kind, exact::meissner_measures()),
        SolidKind::CappedCylinder => {
            let Some(Parameter::Ell(ell)) = spec.parameter else {
                unreachable!("validated by SolidSpec::from_flags")
            };
            let mut r = closed(kind, exact::capped_cylinder_measures(ell));
            r.parameters.insert("ell".into(), ell.get());
            r
        }
        SolidKind::Segment => {
            let phi = phi_of(spec.parameter);
            let mut r = closed(kind, exact::symmetric_segment_measures(phi));
            r.parameters.insert("phi".into(), phi.get());
            r
        }
        SolidKind::CapBody => {
            let phi = phi_of(spec.parameter);
            let mut r = closed(kind, exact::cap_body_measures(phi)?);
            r.parameters.insert("phi".into(), phi.get());
            r
        }
        SolidKind::Hexahedron | SolidKind::Dodecahedron => {
            let canon = Canonical::from_name(kind.name())?;
            let set = canon.ballset();
            let sk = Skeleton::build(&set)?;
            let m = Measures::new(sk.volume(&set), sk.surface_area(), sk.mean_width());
            let mut r = Report::new(Some(kind.name()), m, [Method::Skeleton; 3]);
            if let Some(l) = sk.adjacent_vertex_distance() {
                r.set_lambda(l, ADJACENT_VERTEX);
            }
            if kind == SolidKind::Dodecahedron {
                r.status = Some("informational".into());
            }
            r
        }
        SolidKind::Custom => {
            let path = spec.input.as_deref().expect("validated by SolidSpec::from_flags");
            return custom(path, mc);
        }
    };
    if let SolidKind::Trihedron | SolidKind::Tetrahedron = kind {
        let set = Canonical::from_name(kind.name())?.ballset();
        if let Some(l) = Skeleton::build(&set)?.adjacent_vertex_distance() {
            report.set_lambda(l, VERTEX_DISTANCE);
        }
    }
    Ok(report)
}

/// Reads a JSON array of `{"center": [x, y, z], "radius": r}`.
pub fn read_spheres(path: &Path) -> Result<BallSet, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let spheres: Vec<Sphere> = serde_json::from_str(&text)
        .map_err(|e| CliError::Io(format!("malformed sphere file {}: {e}", path.display())))?;
    for s in &spheres {
        Sphere::new(s.center, s.radius)?;
    }
    Ok(BallSet::new(spheres)?)
}

fn mw_config(mc: &McConfig) -> Result<McConfig, Error> {
    McConfig::with_samples((mc.n_samples() / 100).max(100).min(mc.n_samples()), mc.seed())
}

/// Skeleton measures with a Monte Carlo cross-check, or Monte Carlo alone
/// when the radii differ.
pub fn custom(path: &Path, mc: &McConfig) -> Result<Report, CliError> {
    let set = read_spheres(path)?;
    let vol = mc_volume(&set, mc);
    let area = mc_surface_area(&set, mc);
    match ballset_measures(&set) {
        Ok(bm) if bm.empty => {
            let mut r = Report::new(Some("custom"), Measures::ZERO, [Method::Skeleton; 3]);
            r.empty = true;
            Ok(r)
        }
        Ok(bm) => {
            let mut r = Report::new(Some("custom"), bm.measures, [Method::Skeleton; 3]);
            let mw = mc_mean_width(&set, &mw_config(mc)?)?;
            for (key, reported, est) in [
                (VOLUME, bm.measures.volume, vol),
                (SURFACE_AREA, bm.measures.surface_area, area),
                (MEAN_WIDTH, bm.measures.mean_width, mw),
            ] {
                r.cross_checks.insert(format!("{key}.monte-carlo"), est.value);
                r.cross_checks.insert(format!("{key}.std_error"), est.std_error);
                r.cross_checks.insert(format!("{key}.delta"), est.value - reported);
            }
            if let Some(l) = bm.lambda {
                r.set_lambda(l, ADJACENT_VERTEX);
            }
            Ok(r)
        }
        Err(Error::Unsupported(msg)) => {
            if crate::numerics::support::is_empty_intersection(&set) {
                let mut r = Report::new(Some("custom"), Measures::ZERO, [Method::MonteCarlo; 3]);
                r.empty = true;
                return Ok(r);
            }
            let mw = mc_mean_width(&set, &mw_config(mc)?)?;
            let m = Measures::new(vol.value, area.value, mw.value);
            let mut r = Report::new(Some("custom"), m, [Method::MonteCarlo; 3]);
            r.std_errors.insert(VOLUME.into(), vol.std_error);
            r.std_errors.insert(SURFACE_AREA.into(), area.std_error);
            r.std_errors.insert(MEAN_WIDTH.into(), mw.std_error);
            r.notes.push(format!("{msg}; Monte Carlo only"));
            Ok(r)
        }
        Err(e) => Err(e.into()),
    }
}

/// Skeleton values for the hexahedron or dodecahedron with Monte Carlo
/// cross-checks of each measure and the spread of edge exterior angles.
pub fn open_question(solid: &str, mc: &McConfig) -> Result<Report, CliError> {
    let canon = match solid {
        "hexahedron" => Canonical::Hexahedron,
        "dodecahedron" => Canonical::Dodecahedron,
        other => {
            return Err(Error::Invalid(format!(
                "open-question applies to hexahedron or dodecahedron, not `{other}`"
            ))
            .into())
        }
    };
    let set = canon.ballset();
    let sk = Skeleton::build(&set)?;
    let m = Measures::new(sk.volume(&set), sk.surface_area(), sk.mean_width());
    let mut r = Report::new(Some(solid), m, [Method::Skeleton; 3]);
    let vol = mc_volume(&set, mc);
    let area = mc_surface_area(&set, mc);
    let mw = mc_mean_width(&set, &mw_config(mc)?)?;
    for (key, reported, est) in [
        (VOLUME, m.volume, vol),
        (SURFACE_AREA, m.surface_area, area),
        (MEAN_WIDTH, m.mean_width, mw),
    ] {
        r.cross_checks.insert(format!("{key}.monte-carlo"), est.value);
        r.cross_checks.insert(format!("{key}.std_error"), est.std_error);
        r.cross_checks.insert(format!("{key}.delta"), est.value - reported);
    }
    let third = std::f64::consts::PI / 3.0;
    let spread = sk
        .edges
        .iter()
        .map(|e| (e.exterior_angle - third).abs())
        .fold(0.0, f64::max);
    r.cross_checks.insert("edges.count".into(), sk.edges.len() as f64);
    r.cross_checks.insert("edges.max_angle_deviation_from_pi_over_3".into(), spread);
    if let Some(l) = sk.adjacent_vertex_distance() {
        r.set_lambda(l, ADJACENT_VERTEX);
    }
    r.status = Some(match canon {
        Canonical::Dodecahedron => "informational".into(),
        _ => "numerical".into(),
    });
    if canon == Canonical::Dodecahedron {
        r.notes.push(
            "12 unit spheres centred at half the icosahedron vertices (adjacent centres 1 apart); \
             the reference value VL/lambda^3 ~ 7.86 does not pin this construction"
                .into(),
        );
    }
    Ok(r)
}
