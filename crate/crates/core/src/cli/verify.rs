//! Cross-checks every closed form against independent routes: the explicit
//! double integrals, the skeleton, Monte Carlo, and identities between the
//! formulas.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exact::{self, AngularRadius, CenterDistance, CylinderLength};
use crate::geometry::{BallSet, Canonical, ConvexBody, Direction, Measures, Point3, Sphere, SupportFunction};
use crate::hyperlens::{ndim_lens_area, ndim_lens_volume, Dimension};
use crate::numerics::bodies::{
    profile_area, profile_volume, quadrature_mean_width, CapBody, CappedCylinder, SymmetricSegment,
};
use crate::numerics::{
    mc_mean_width, mc_surface_area, mc_surface_area_radial, mc_volume, double_integral, McConfig,
    QuadratureSolid, Quantity,
};
use crate::skeleton::{ballset_measures, Skeleton};

/// Multiplier applied to a closed-form value named with `--perturb`.
pub const PERTURBATION: f64 = 1.01;
/// Statistical checks pass within this many standard errors.
pub const SIGMAS: f64 = 4.0;
const PROFILE_NODES: usize = 40_000;

pub const LENS_GRID: [f64; 5] = [PI / 12.0, PI / 6.0, PI / 4.0, PI / 3.0, 5.0 * PI / 12.0];
pub const ELL_GRID: [f64; 4] = [0.0, 0.5, 1.0, 2.0];
pub const PHI_GRID: [f64; 4] = [0.0, PI / 6.0, PI / 3.0, 4.0 * PI / 9.0];

#[derive(Debug, Clone, PartialEq)]
pub enum Tolerance {
    Absolute(f64),
    Relative(f64),
    Sigmas { std_error: f64, k: f64 },
    /// Holds when `value <= reference`.
    AtMost,
    /// Holds when `value < reference`.
    Below,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub group: String,
    pub name: String,
    pub value: f64,
    pub reference: f64,
    pub tolerance: Tolerance,
    /// Informational checks are printed but never fail the run.
    pub gating: bool,
}

impl Check {
    /// Deviation as a multiple of the allowed deviation; at most 1 passes.
    pub fn excess(&self) -> f64 {
        let d = (self.value - self.reference).abs();
        if !d.is_finite() {
            return f64::INFINITY;
        }
        match self.tolerance {
            Tolerance::Absolute(t) => d / t,
            Tolerance::Relative(t) => d / (t * self.reference.abs()),
            Tolerance::Sigmas { std_error, k } => {
                if std_error == 0.0 {
                    if d <= 1e-12 * self.reference.abs().max(1.0) { 0.0 } else { f64::INFINITY }
                } else {
                    d / (k * std_error)
                }
            }
            Tolerance::AtMost => {
                if self.value <= self.reference { 0.0 } else { f64::INFINITY }
            }
            Tolerance::Below => {
                if self.value < self.reference { 0.0 } else { f64::INFINITY }
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.excess() <= 1.0
    }

    fn describe_tolerance(&self) -> String {
        match self.tolerance {
            Tolerance::Absolute(t) => format!("abs {t:e}"),
            Tolerance::Relative(t) => format!("rel {t:e}"),
            Tolerance::Sigmas { std_error, k } => format!("{k}σ, σ = {std_error:e}"),
            Tolerance::AtMost => "≤".into(),
            Tolerance::Below => "<".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    /// Absolute tolerance for exact-versus-exact comparisons.
    pub tolerance: f64,
    pub samples: u64,
    pub seed: u64,
    pub solid: Option<String>,
    /// Closed-form values to scale by [`PERTURBATION`], as `solid.quantity`.
    pub perturb: Vec<String>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            tolerance: 1e-6,
            samples: crate::numerics::mc::DEFAULT_SAMPLES,
            seed: crate::numerics::mc::DEFAULT_SEED,
            solid: None,
            perturb: Vec::new(),
        }
    }
}

pub const GROUPS: [&str; 10] = [
    "dihedron",
    "trihedron",
    "tetrahedron",
    "meissner",
    "lens",
    "capped-cylinder",
    "segment",
    "cap-body",
    "hexahedron",
    "dodecahedron",
];

const QUANTITIES: [&str; 3] = ["volume", "surface_area", "mean_width"];

/// Every key accepted by `--perturb`.
pub fn perturbable_keys() -> Vec<String> {
    GROUPS[..8]
        .iter()
        .flat_map(|g| QUANTITIES.iter().map(move |q| format!("{g}.{q}")))
        .collect()
}

/// Closed forms with optional injected faults.
struct ClosedForms {
    perturbed: BTreeSet<String>,
}

impl ClosedForms {
    fn get(&self, group: &str, m: Measures) -> Measures {
        let f = |q: &str, v: f64| {
            if self.perturbed.contains(&format!("{group}.{q}")) {
                v * PERTURBATION
            } else {
                v
            }
        };
        Measures::new(
            f("volume", m.volume),
            f("surface_area", m.surface_area),
            f("mean_width", m.mean_width),
        )
    }
}

struct Suite<'a> {
    opts: &'a VerifyOptions,
    closed: ClosedForms,
    checks: Vec<Check>,
}

impl Suite<'_> {
    fn push(&mut self, group: &str, name: String, value: f64, reference: f64, tolerance: Tolerance) {
        self.checks.push(Check {
            group: group.into(),
            name,
            value,
            reference,
            tolerance,
            gating: true,
        });
    }

    fn info(&mut self, group: &str, name: String, value: f64, reference: f64, tolerance: Tolerance) {
        self.checks.push(Check {
            group: group.into(),
            name,
            value,
            reference,
            tolerance,
            gating: false,
        });
    }

    fn exact(&mut self, group: &str, name: String, value: f64, reference: f64) {
        let t = Tolerance::Absolute(self.opts.tolerance);
        self.push(group, name, value, reference, t);
    }

    fn stat(&mut self, group: &str, name: String, est: crate::numerics::Estimate, reference: f64) {
        let t = Tolerance::Sigmas {
            std_error: est.std_error,
            k: SIGMAS,
        };
        self.push(group, name, est.value, reference, t);
    }

    fn mc(&self, samples: u64) -> Result<McConfig> {
        McConfig::with_samples(samples.max(1), self.opts.seed)
    }

    fn volume_cfg(&self) -> Result<McConfig> {
        self.mc(self.opts.samples)
    }

    /// Radial area needs five bisections per sample, so it gets a tenth.
    fn radial_cfg(&self) -> Result<McConfig> {
        self.mc((self.opts.samples / 10).max(100))
    }

    fn direction_cfg(&self) -> Result<McConfig> {
        self.mc((self.opts.samples / 100).max(100))
    }

    /// Closed form against the double integrals, the skeleton and Monte
    /// Carlo.
    fn ball_solid(&mut self, group: &str, canon: Canonical, q: QuadratureSolid, m: Measures) -> Result<()> {
        let set = canon.ballset();
        let m = self.closed.get(group, m);
        let quad_v = double_integral(q, Quantity::Volume)?;
        let quad_a = double_integral(q, Quantity::SurfaceArea)?;
        let sk = Skeleton::build(&set)?;
        self.exact(group, "volume: closed form vs quadrature".into(), m.volume, quad_v);
        self.exact(group, "surface area: closed form vs quadrature".into(), m.surface_area, quad_a);
        self.exact(group, "volume: closed form vs skeleton".into(), m.volume, sk.volume(&set));
        self.exact(group, "surface area: closed form vs skeleton".into(), m.surface_area, sk.surface_area());
        self.exact(group, "mean width: closed form vs skeleton".into(), m.mean_width, sk.mean_width());
        self.exact(group, "volume: quadrature vs skeleton".into(), quad_v, sk.volume(&set));
        self.exact(group, "surface area: quadrature vs skeleton".into(), quad_a, sk.surface_area());
        let v = mc_volume(&set, &self.volume_cfg()?);
        self.stat(group, "volume: Monte Carlo".into(), v, m.volume);
        let a = mc_surface_area(&set, &self.volume_cfg()?);
        self.stat(group, "surface area: Monte Carlo".into(), a, m.surface_area);
        let w = mc_mean_width(&set, &self.direction_cfg()?)?;
        self.stat(group, "mean width: support-function Monte Carlo".into(), w, m.mean_width);
        Ok(())
    }

    fn dihedron(&mut self) -> Result<()> {
        let m = exact::dihedron_measures();
        self.ball_solid("dihedron", Canonical::Dihedron, QuadratureSolid::Dihedron, m)?;
        let v = self.closed.get("dihedron", m).volume;
        let from_delta = exact::lens_volume_from_delta(CenterDistance::new(1.0)?);
        self.exact("dihedron", "volume: closed form vs center-distance form".into(), v, from_delta);
        let edge = Skeleton::build(&Canonical::Dihedron.ballset())?.edges;
        self.exact("dihedron", "edge length sqrt(3) pi".into(), edge[0].arc_length, 3.0f64.sqrt() * PI);
        Ok(())
    }

    fn trihedron(&mut self) -> Result<()> {
        let m = exact::trihedron_measures();
        self.ball_solid("trihedron", Canonical::Trihedron, QuadratureSolid::Trihedron, m)?;
        self.vertex_ratio("trihedron", Canonical::Trihedron, 2.0 * (2.0f64 / 3.0).sqrt(), 0.154, 0.001)
    }

    fn tetrahedron(&mut self) -> Result<()> {
        let m = exact::reuleaux_tetrahedron_measures();
        self.ball_solid("tetrahedron", Canonical::Tetrahedron, QuadratureSolid::Tetrahedron, m)?;
        self.vertex_ratio("tetrahedron", Canonical::Tetrahedron, 1.0, 0.422, 0.001)?;
        // widths between the constant-width lower bound and the edge-to-edge maximum
        let set = Canonical::Tetrahedron.ballset();
        let hi = 3.0f64.sqrt() - 0.5f64.sqrt();
        let n = (self.opts.samples / 1000).clamp(100, 20_000);
        let golden = PI * (3.0 - 5.0f64.sqrt());
        let (mut lo_seen, mut hi_seen) = (f64::MAX, f64::MIN);
        for i in 0..n {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
            let r = (1.0 - z * z).sqrt();
            let t = golden * i as f64;
            let u = Direction::new(Point3::new(r * t.cos(), r * t.sin(), z))?;
            let w = set.width(&u)?;
            lo_seen = lo_seen.min(w);
            hi_seen = hi_seen.max(w);
        }
        self.push("tetrahedron", format!("min sampled width over {n} directions ≥ 1"), 1.0 - 1e-6, lo_seen, Tolerance::AtMost);
        self.push("tetrahedron", format!("max sampled width over {n} directions ≤ sqrt(3) - 1/sqrt(2)"), hi_seen, hi + 1e-6, Tolerance::AtMost);
        Ok(())
    }

    fn vertex_ratio(&mut self, group: &str, canon: Canonical, lambda: f64, ratio: f64, tol: f64) -> Result<()> {
        let m = self.closed.get(group, match canon {
            Canonical::Trihedron => exact::trihedron_measures(),
            _ => exact::reuleaux_tetrahedron_measures(),
        });
        let sk = Skeleton::build(&canon.ballset())?;
        let l = sk
            .adjacent_vertex_distance()
            .ok_or_else(|| Error::Invalid("no vertex distance".into()))?;
        self.push(group, "vertex-to-vertex distance from skeleton".into(), l, lambda, Tolerance::Absolute(1e-9));
        self.push(group, "VL/lambda^3".into(), m.volume / l.powi(3), ratio, Tolerance::Absolute(tol));
        Ok(())
    }

    /// Constant width 1 forces `V = S/2 - π/3` (Blaschke's relation for
    /// bodies of constant width `w`: `V = wS/2 - πw³/3`), with `w` the mean
    /// width. Also the strict inequalities against the Reuleaux tetrahedron.
    fn meissner(&mut self) -> Result<()> {
        let m = self.closed.get("meissner", exact::meissner_measures());
        let t = self.closed.get("tetrahedron", exact::reuleaux_tetrahedron_measures());
        let w = m.mean_width;
        let blaschke = w * m.surface_area / 2.0 - PI * w.powi(3) / 3.0;
        self.exact("meissner", "volume vs constant-width relation".into(), m.volume, blaschke);
        self.push("meissner", "VL' < VL".into(), m.volume, t.volume, Tolerance::Below);
        self.push("meissner", "AR' < AR".into(), m.surface_area, t.surface_area, Tolerance::Below);
        self.push("meissner", "MW' < MW".into(), m.mean_width, t.mean_width, Tolerance::Below);
        Ok(())
    }

    fn lens(&mut self) -> Result<()> {
        let n3 = Dimension::new(3)?;
        for phi in LENS_GRID {
            let p = AngularRadius::new(phi)?;
            let m = self.closed.get("lens", exact::lens_measures(p));
            let delta = 2.0 * phi.cos();
            let set = BallSet::new(vec![
                Sphere::unit([delta / 2.0, 0.0, 0.0]),
                Sphere::unit([-delta / 2.0, 0.0, 0.0]),
            ])?;
            let sk = ballset_measures(&set)?.measures;
            let tag = format!("phi = {phi:.6}");
            self.exact("lens", format!("{tag}: volume vs skeleton"), m.volume, sk.volume);
            self.exact("lens", format!("{tag}: surface area vs skeleton"), m.surface_area, sk.surface_area);
            self.exact("lens", format!("{tag}: mean width vs skeleton"), m.mean_width, sk.mean_width);
            let from_delta = exact::lens_volume_from_delta(CenterDistance::new(delta)?);
            self.exact("lens", format!("{tag}: volume vs center-distance form"), m.volume, from_delta);
            self.exact("lens", format!("{tag}: volume vs n-dimensional formula, n = 3"), m.volume, ndim_lens_volume(n3, p)?);
            self.exact("lens", format!("{tag}: area vs n-dimensional formula, n = 3"), m.surface_area, ndim_lens_area(n3, p)?);
        }
        Ok(())
    }

    fn hull<B: ConvexBody + SupportFunction>(&mut self, group: &str, tag: String, body: &B, m: Measures) -> Result<()> {
        let m = self.closed.get(group, m);
        let v = mc_volume(body, &self.volume_cfg()?);
        self.stat(group, format!("{tag}: volume, Monte Carlo"), v, m.volume);
        let a = mc_surface_area_radial(body, &self.radial_cfg()?);
        self.stat(group, format!("{tag}: surface area, radial Monte Carlo"), a, m.surface_area);
        let w = mc_mean_width(body, &self.direction_cfg()?)?;
        self.stat(group, format!("{tag}: mean width, support-function Monte Carlo"), w, m.mean_width);
        let q = quadrature_mean_width(body)?;
        self.exact(group, format!("{tag}: mean width, width quadrature"), m.mean_width, q);
        let pv = profile_volume(body)?;
        self.exact(group, format!("{tag}: volume, profile quadrature"), m.volume, pv);
        let pa = profile_area(body, PROFILE_NODES);
        self.exact(group, format!("{tag}: surface area, profile quadrature"), m.surface_area, pa);
        Ok(())
    }

    fn capped_cylinder(&mut self) -> Result<()> {
        for l in ELL_GRID {
            let ell = CylinderLength::new(l)?;
            let body = CappedCylinder::new(ell);
            self.hull("capped-cylinder", format!("ell = {l}"), &body, exact::capped_cylinder_measures(ell))?;
        }
        Ok(())
    }

    fn segment(&mut self) -> Result<()> {
        for phi in PHI_GRID {
            let p = AngularRadius::new(phi)?;
            let body = SymmetricSegment::new(p);
            self.hull("segment", format!("phi = {phi:.6}"), &body, exact::symmetric_segment_measures(p))?;
        }
        Ok(())
    }

    fn cap_body(&mut self) -> Result<()> {
        for phi in PHI_GRID {
            let p = AngularRadius::new(phi)?;
            let body = CapBody::new(p)?;
            self.hull("cap-body", format!("phi = {phi:.6}"), &body, exact::cap_body_measures(p)?)?;
        }
        Ok(())
    }

    /// No closed forms; the skeleton is checked against Monte Carlo and
    /// the published ratio.
    fn open_solid(&mut self, group: &str, canon: Canonical) -> Result<()> {
        let set = canon.ballset();
        let sk = Skeleton::build(&set)?;
        let gating = canon == Canonical::Hexahedron;
        let vol = sk.volume(&set);
        let v = mc_volume(&set, &self.volume_cfg()?);
        let a = mc_surface_area(&set, &self.volume_cfg()?);
        let w = mc_mean_width(&set, &self.direction_cfg()?)?;
        let before = self.checks.len();
        self.stat(group, "volume: skeleton vs Monte Carlo".into(), v, vol);
        self.stat(group, "surface area: skeleton vs Monte Carlo".into(), a, sk.surface_area());
        self.stat(group, "mean width: skeleton vs support-function Monte Carlo".into(), w, sk.mean_width());
        let third = PI / 3.0;
        let worst = sk.edges.iter().map(|e| e.exterior_angle).max_by(|x, y| {
            (x - third).abs().total_cmp(&(y - third).abs())
        });
        if let Some(angle) = worst {
            self.push(group, format!("all {} edge exterior angles = pi/3", sk.edges.len()), angle, third, Tolerance::Absolute(1e-9));
        }
        let l = sk
            .adjacent_vertex_distance()
            .ok_or_else(|| Error::Invalid("no vertex distance".into()))?;
        let ratio = vol / l.powi(3);
        match canon {
            Canonical::Hexahedron => {
                self.push(group, "adjacent vertex-to-vertex distance = sqrt(2)/3".into(), l, 2.0f64.sqrt() / 3.0, Tolerance::Absolute(1e-9));
                self.push(group, "VL/lambda^3".into(), ratio, 1.508, Tolerance::Absolute(0.002));
            }
            _ => {
                self.info(group, "VL/lambda^3 (reference about 7.86)".into(), ratio, 7.86, Tolerance::Relative(0.01));
            }
        }
        if !gating {
            for c in &mut self.checks[before..] {
                c.gating = false;
            }
        }
        Ok(())
    }
}

/// Runs the checks for every group, or for `opts.solid` alone.
pub fn run_checks(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let known = perturbable_keys();
    for key in &opts.perturb {
        if !known.contains(key) {
            return Err(Error::Invalid(format!(
                "unknown perturbation `{key}`; expected one of {}",
                known.join(", ")
            )));
        }
    }
    if let Some(s) = &opts.solid {
        if !GROUPS.contains(&s.as_str()) {
            return Err(Error::UnknownSolid(s.clone()));
        }
    }
    if !(opts.tolerance > 0.0) {
        return Err(Error::domain("tolerance", opts.tolerance, "tolerance > 0"));
    }
    if opts.samples == 0 {
        return Err(Error::Invalid("--samples must be positive".into()));
    }
    let mut suite = Suite {
        opts,
        closed: ClosedForms {
            perturbed: opts.perturb.iter().cloned().collect(),
        },
        checks: Vec::new(),
    };
    let wanted = |g: &str| opts.solid.as_deref().is_none_or(|s| s == g);
    type Step<'a> = fn(&mut Suite<'a>) -> Result<()>;
    let steps: [(&str, Step); 10] = [
        ("dihedron", Suite::dihedron),
        ("trihedron", Suite::trihedron),
        ("tetrahedron", Suite::tetrahedron),
        ("meissner", Suite::meissner),
        ("lens", Suite::lens),
        ("capped-cylinder", Suite::capped_cylinder),
        ("segment", Suite::segment),
        ("cap-body", Suite::cap_body),
        ("hexahedron", |s| s.open_solid("hexahedron", Canonical::Hexahedron)),
        ("dodecahedron", |s| s.open_solid("dodecahedron", Canonical::Dodecahedron)),
    ];
    for (name, step) in steps {
        if wanted(name) {
            step(&mut suite)?;
        }
    }
    Ok(suite.checks)
}

pub fn all_gating_passed(checks: &[Check]) -> bool {
    checks.iter().filter(|c| c.gating).all(Check::passed)
}

/// Failed gating check with the largest excess.
pub fn worst_failure(checks: &[Check]) -> Option<&Check> {
    checks
        .iter()
        .filter(|c| c.gating && !c.passed())
        .max_by(|a, b| a.excess().total_cmp(&b.excess()))
}

pub fn render(checks: &[Check], opts: &VerifyOptions) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "samples {} (radial area {}, directions {}), seed {}, exact tolerance {:e}",
        opts.samples,
        (opts.samples / 10).max(100),
        (opts.samples / 100).max(100),
        opts.seed,
        opts.tolerance
    );
    let _ = writeln!(
        out,
        "mean width of capped cylinder, segment and cap body: support-function Monte Carlo and width quadrature at every grid parameter"
    );
    for c in checks {
        let status = match (c.gating, c.passed()) {
            (true, true) => "PASS",
            (true, false) => "FAIL",
            (false, _) => "INFO",
        };
        let _ = writeln!(
            out,
            "{status}  {:<16} {:<62} value {:<22} reference {:<22} ({})",
            c.group,
            c.name,
            c.value,
            c.reference,
            c.describe_tolerance()
        );
    }
    let failed = checks.iter().filter(|c| c.gating && !c.passed()).count();
    let gating = checks.iter().filter(|c| c.gating).count();
    let _ = writeln!(out, "{} of {gating} gating checks passed", gating - failed);
    if let Some(w) = worst_failure(checks) {
        let _ = writeln!(
            out,
            "worst: {} / {}: value {} reference {} ({:.3}x allowed)",
            w.group,
            w.name,
            w.value,
            w.reference,
            w.excess()
        );
    }
    out
}
