//! Closed-form measures of the lens family, the spherical trihedron and
//! tetrahedron, the Meissner tetrahedron, and three rotation bodies built
//! from the unit ball.
//!
//! Every function evaluates its formula directly in `f64`; `arcsec(3)` is
//! recomputed on each call rather than stored as a literal.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::geometry::Measures;

/// Angular radius of a spherical cap, in `[0, π/2]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct AngularRadius(f64);

impl AngularRadius {
    /// Values up to 1e-9 above π/2 are taken as π/2, so a rounded decimal
    /// for π/2 is accepted.
    pub fn new(phi: f64) -> Result<Self> {
        if phi > FRAC_PI_2 && phi <= FRAC_PI_2 + 1e-9 {
            return Ok(AngularRadius(FRAC_PI_2));
        }
        if !(0.0..=FRAC_PI_2).contains(&phi) {
            return Err(Error::domain("phi", phi, "0 <= phi <= pi/2"));
        }
        Ok(AngularRadius(phi))
    }

    /// The angular radius whose caps produce center distance `delta`
    /// (unit spheres, `delta = 2 cos(phi)`).
    pub fn from_delta(delta: CenterDistance) -> Self {
        AngularRadius((delta.get() / 2.0).acos().min(FRAC_PI_2))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Distance between the centers of two unit spheres, in `[0, 2]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct CenterDistance(f64);

impl CenterDistance {
    pub fn new(delta: f64) -> Result<Self> {
        if !(0.0..=2.0).contains(&delta) {
            return Err(Error::domain("delta", delta, "0 <= delta <= 2"));
        }
        Ok(CenterDistance(delta))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct CylinderLength(f64);

impl CylinderLength {
    pub fn new(ell: f64) -> Result<Self> {
        if !(ell.is_finite() && ell >= 0.0) {
            return Err(Error::domain("ell", ell, "ell >= 0"));
        }
        Ok(CylinderLength(ell))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// `arcsec(x) = arccos(1/x)` for `x >= 1`.
pub fn arcsec(x: f64) -> Result<f64> {
    if !(x >= 1.0) {
        return Err(Error::domain("x", x, "x >= 1"));
    }
    Ok((1.0 / x).acos())
}

fn arcsec3() -> f64 {
    (1.0f64 / 3.0).acos()
}

/// Two unit spheres through each other's centers.
pub fn dihedron_measures() -> Measures {
    Measures::new(
        5.0 * PI / 12.0,
        2.0 * PI,
        1.0 + PI / (4.0 * 3.0f64.sqrt()),
    )
}

/// Symmetric lens made of two caps of angular radius `phi`.
pub fn lens_measures(phi: AngularRadius) -> Measures {
    let (s, c) = phi.get().sin_cos();
    Measures::new(
        // 2 - 3c + c³ factored as (1 - c)²(2 + c)
        2.0 * PI / 3.0 * (1.0 - c).powi(2) * (2.0 + c),
        4.0 * PI * (1.0 - c),
        2.0 - 2.0 * c + (FRAC_PI_2 - phi.get()) * s,
    )
}

/// Lens volume written as a cubic in the center distance,
/// `(4π/3)(1 - 3δ/4 + δ³/16)`.
pub fn lens_volume_from_delta(delta: CenterDistance) -> f64 {
    let d = delta.get();
    // factored form; the expanded cubic cancels badly near delta = 2
    4.0 * PI / 3.0 * (1.0 - d / 2.0).powi(2) * (1.0 + d / 4.0)
}

pub fn trihedron_measures() -> Measures {
    let a = arcsec3();
    let s3 = 3.0f64.sqrt();
    Measures::new(
        (2.0 * 2.0f64.sqrt() + 24.0 * PI - 57.0 * a) / 12.0,
        6.0 * (PI - 2.0 * a),
        (12.0 * PI - (24.0 - s3 * PI) * a) / (4.0 * PI),
    )
}

pub fn reuleaux_tetrahedron_measures() -> Measures {
    let a = arcsec3();
    let s3 = 3.0f64.sqrt();
    Measures::new(
        (3.0 * 2.0f64.sqrt() + 32.0 * PI - 81.0 * a) / 12.0,
        2.0 * (4.0 * PI - 9.0 * a),
        (16.0 * PI - (36.0 - s3 * PI) * a) / (4.0 * PI),
    )
}

/// Reuleaux tetrahedron with three edges rounded to constant width 1.
pub fn meissner_measures() -> Measures {
    let a = arcsec3();
    let s3 = 3.0f64.sqrt();
    Measures::new(
        (8.0 - 3.0 * s3 * a) * PI / 12.0,
        (4.0 - s3 * a) * PI / 2.0,
        1.0,
    )
}

/// Unit-radius cylinder of length `ell` with hemispherical ends.
pub fn capped_cylinder_measures(ell: CylinderLength) -> Measures {
    let l = ell.get();
    Measures::new((l + 4.0 / 3.0) * PI, 2.0 * (l + 2.0) * PI, (l + 4.0) / 2.0)
}

/// Unit ball with two opposite caps of angular radius `phi` removed.
pub fn symmetric_segment_measures(phi: AngularRadius) -> Measures {
    let (s, c) = phi.get().sin_cos();
    Measures::new(
        2.0 * PI / 3.0 * (2.0 + s * s) * c,
        2.0 * PI * (2.0 * c + s * s),
        2.0 * c + phi.get() * s,
    )
}

/// Convex hull of the unit ball and a centered segment whose tangent cones
/// touch the sphere at colatitude `phi`. Requires `phi < π/2`.
pub fn cap_body_measures(phi: AngularRadius) -> Result<Measures> {
    if phi.get() >= FRAC_PI_2 {
        return Err(Error::domain("phi", phi.get(), "phi < pi/2 for the cap body"));
    }
    let c = phi.get().cos();
    let factor = (1.0 + c * c) / c;
    Ok(Measures::new(2.0 * PI / 3.0 * factor, 2.0 * PI * factor, factor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn phi(x: f64) -> AngularRadius {
        AngularRadius::new(x).unwrap()
    }

    fn close(a: Measures, b: Measures, tol: f64) {
        for (x, y) in a.as_array().into_iter().zip(b.as_array()) {
            assert!((x - y).abs() <= tol * y.abs().max(1.0), "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn arcsec_values() {
        assert_eq!(arcsec(1.0).unwrap(), 0.0);
        assert_relative_eq!(arcsec(2.0).unwrap(), PI / 3.0, epsilon = 1e-15);
        assert_relative_eq!(arcsec(3.0).unwrap(), 1.2309594173407747, epsilon = 1e-15);
        assert!(matches!(arcsec(0.5), Err(Error::Domain { .. })));
        assert!(arcsec(f64::NAN).is_err());
    }

    #[test]
    fn dihedron_values() {
        let m = dihedron_measures();
        assert_relative_eq!(m.volume, 1.3089969389957472, epsilon = 1e-15);
        assert_relative_eq!(m.surface_area, 2.0 * PI);
        assert_relative_eq!(m.mean_width, 1.4534498410585544, epsilon = 1e-15);
    }

    #[test]
    fn lens_examples() {
        close(lens_measures(phi(FRAC_PI_2)), Measures::ball(1.0), 1e-15);
        close(lens_measures(phi(PI / 3.0)), dihedron_measures(), 1e-14);
        close(lens_measures(phi(0.0)), Measures::ZERO, 0.0);
        assert!(AngularRadius::new(-0.1).is_err());
        assert!(AngularRadius::new(1.6).is_err());
    }

    #[test]
    fn lens_volume_from_delta_examples() {
        let v = |d| lens_volume_from_delta(CenterDistance::new(d).unwrap());
        assert_relative_eq!(v(0.0), 4.0 * PI / 3.0);
        assert_eq!(v(2.0), 0.0);
        assert_relative_eq!(v(1.0), 5.0 * PI / 12.0, epsilon = 1e-15);
        assert!(CenterDistance::new(2.5).is_err());
        assert!(CenterDistance::new(-0.1).is_err());
    }

    #[test]
    fn trihedron_values() {
        let m = trihedron_measures();
        assert_relative_eq!(m.mean_width, 1.182061751038757, epsilon = 1e-14);
        assert!((m.volume - 0.671_830_335_2).abs() < 1e-9);
        let lambda = 2.0 * (2.0f64 / 3.0).sqrt();
        assert!((m.volume / lambda.powi(3) - 0.154).abs() < 1e-3);
    }

    #[test]
    fn tetrahedron_values() {
        let m = reuleaux_tetrahedron_measures();
        assert_relative_eq!(m.mean_width, 1.006582094946935, epsilon = 1e-14);
        assert!((m.volume - 0.42215773).abs() < 1e-8);
        assert!((m.volume - 0.422).abs() < 1e-3);
        assert!(m.mean_width > 1.0 && m.mean_width < 3.0f64.sqrt() - 0.5f64.sqrt());
    }

    #[test]
    fn meissner_values() {
        let m = meissner_measures();
        let t = reuleaux_tetrahedron_measures();
        assert_eq!(m.mean_width, 1.0);
        assert!((m.volume - 0.41986005).abs() < 1e-8);
        assert!(m.volume < t.volume);
        assert!(m.surface_area < t.surface_area);
        assert!(m.mean_width < t.mean_width);
    }

    #[test]
    fn capped_cylinder_examples() {
        let f = |l| capped_cylinder_measures(CylinderLength::new(l).unwrap());
        close(f(0.0), Measures::ball(1.0), 1e-15);
        close(f(2.0), Measures::new(10.0 * PI / 3.0, 8.0 * PI, 3.0), 1e-15);
        close(f(1.0), Measures::new(7.0 * PI / 3.0, 6.0 * PI, 2.5), 1e-15);
        assert!(CylinderLength::new(-1.0).is_err());
    }

    #[test]
    fn segment_examples() {
        close(symmetric_segment_measures(phi(0.0)), Measures::ball(1.0), 1e-15);
        close(
            symmetric_segment_measures(phi(FRAC_PI_2)),
            Measures::new(0.0, 2.0 * PI, FRAC_PI_2),
            1e-15,
        );
        close(
            symmetric_segment_measures(phi(PI / 3.0)),
            Measures::new(
                2.0 * PI / 3.0 * 11.0 / 8.0,
                2.0 * PI * 7.0 / 4.0,
                1.0 + PI * 3.0f64.sqrt() / 6.0,
            ),
            1e-14,
        );
    }

    #[test]
    fn cap_body_examples() {
        close(cap_body_measures(phi(0.0)).unwrap(), Measures::ball(1.0), 1e-15);
        close(
            cap_body_measures(phi(PI / 3.0)).unwrap(),
            Measures::new(5.0 * PI / 3.0, 5.0 * PI, 2.5),
            1e-14,
        );
        assert!(cap_body_measures(phi(FRAC_PI_2)).is_err());
        let near = cap_body_measures(phi(FRAC_PI_2 - 1e-9)).unwrap();
        assert!(near.volume > 1e8 && near.surface_area > 1e8 && near.mean_width > 1e8);
    }

    #[test]
    fn degenerate_cases_agree() {
        let ball = Measures::ball(1.0);
        close(capped_cylinder_measures(CylinderLength::new(0.0).unwrap()), ball, 1e-13);
        close(symmetric_segment_measures(phi(0.0)), ball, 1e-13);
        close(cap_body_measures(phi(0.0)).unwrap(), ball, 1e-13);
        close(lens_measures(phi(FRAC_PI_2)), ball, 1e-13);
    }

    #[test]
    fn lens_delta_consistency_and_monotonicity() {
        let mut prev = Measures::ZERO;
        for k in 0..=1000 {
            let p = FRAC_PI_2 * k as f64 / 1000.0;
            let m = lens_measures(phi(p));
            let via_delta = lens_volume_from_delta(CenterDistance::new(2.0 * p.cos()).unwrap());
            assert!((via_delta - m.volume).abs() <= 1e-13 * m.volume, "phi = {p}");
            assert!(m.volume >= prev.volume && m.surface_area >= prev.surface_area);
            assert!(m.mean_width >= prev.mean_width);
            prev = m;
        }
    }

    #[test]
    fn isoperimetric_sanity() {
        let iso = |m: Measures| {
            assert!(36.0 * PI * m.volume.powi(2) <= m.surface_area.powi(3) + 1e-9, "{m:?}");
        };
        iso(dihedron_measures());
        iso(trihedron_measures());
        iso(reuleaux_tetrahedron_measures());
        iso(meissner_measures());
        for k in 0..=100 {
            let p = phi(FRAC_PI_2 * k as f64 / 100.0);
            iso(lens_measures(p));
            iso(symmetric_segment_measures(p));
            if k < 100 {
                iso(cap_body_measures(p).unwrap());
            }
            iso(capped_cylinder_measures(CylinderLength::new(k as f64 / 10.0).unwrap()));
        }
    }
}
