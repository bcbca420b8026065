//! Real gamma function, Gauss ₂F₁ by power series, and the volume and
//! boundary measure of the symmetric lens in `n` dimensions.
//!
//! The lens formulas are written in terms of the bracket
//!
//! ```text
//! 1 - 2Γ(p + 1/2) / (√π Γ(p)) · ₂F₁(1/2, 1 - p, 3/2, cos²φ) · cos φ
//! ```
//!
//! with `p = (n+1)/2` for the volume and `p = (n-1)/2` for the area. The
//! bracket is the regularized incomplete beta `I_{sin²φ}(p, 1/2)`. When
//! `cos²φ > 1/2` the bracket loses all its digits to cancellation, so the
//! same quantity is evaluated from the complementary series
//! `x^p cos φ / (p B(p, 1/2)) · ₂F₁(p + 1/2, 1, p + 1, x)`, `x = sin²φ`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::exact::AngularRadius;

const MAX_TERMS: usize = 10_000;
const TAIL_TOL: f64 = 1e-14;

// Lanczos approximation, g = 7, nine coefficients.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Euler's gamma function for `x > 0`.
pub fn gamma_real(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("x", x, "x > 0"));
    }
    if x < 0.5 {
        return Ok(lanczos(x + 1.0) / x);
    }
    Ok(lanczos(x))
}

fn lanczos(x: f64) -> f64 {
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
}

/// Arguments of `₂F₁(a, b; c; z)` restricted to `0 <= z < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypergeomParams {
    a: f64,
    b: f64,
    c: f64,
    z: f64,
}

impl HypergeomParams {
    pub fn new(a: f64, b: f64, c: f64, z: f64) -> Result<Self> {
        if c <= 0.0 && c.fract() == 0.0 {
            return Err(Error::domain("c", c, "c not a non-positive integer"));
        }
        if !(0.0..1.0).contains(&z) {
            return Err(Error::domain("z", z, "0 <= z < 1"));
        }
        if ![a, b, c].iter().all(|v| v.is_finite()) {
            return Err(Error::Invalid("non-finite hypergeometric parameter".into()));
        }
        Ok(HypergeomParams { a, b, c, z })
    }
}

/// Gauss hypergeometric series. Terminating series (a or b a non-positive
/// integer) are summed to the last non-zero term; otherwise summation
/// stops once a geometric bound on the remaining tail drops to 1e-14.
pub fn gauss_2f1(p: HypergeomParams) -> Result<f64> {
    let HypergeomParams { a, b, c, z } = p;
    let mut sum = 1.0;
    let mut term = 1.0;
    // past this index the term ratio is monotone in k
    let settle = 2.0 * a.abs().max(b.abs()).max(c.abs()) + 2.0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        if term == 0.0 {
            return Ok(sum);
        }
        sum += term;
        let kn = kf + 1.0;
        let next_ratio = ((a + kn) * (b + kn) / ((c + kn) * (kn + 1.0)) * z).abs();
        if kn >= settle {
            let q = next_ratio.max(z);
            if q < 1.0 && term.abs() * q / (1.0 - q) <= TAIL_TOL {
                return Ok(sum);
            }
        }
    }
    Err(Error::NoConvergence(format!(
        "2F1({a}, {b}; {c}; {z}) did not reach tail bound {TAIL_TOL} in {MAX_TERMS} terms"
    )))
}

/// Spatial dimension, at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dimension(u32);

impl Dimension {
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain("n", n as f64, "n >= 2"));
        }
        Ok(Dimension(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

/// Regularized incomplete beta `I_{sin²φ}(p, 1/2)`: the fraction of the
/// ball (or sphere) covered by the two caps.
fn cap_fraction(p: f64, phi: AngularRadius) -> Result<f64> {
    let c = phi.get().cos();
    if phi.get() == 0.0 {
        return Ok(0.0);
    }
    let z = c * c;
    if z <= 0.5 {
        let k = 2.0 * gamma_real(p + 0.5)? / (PI.sqrt() * gamma_real(p)?);
        let f = gauss_2f1(HypergeomParams::new(0.5, 1.0 - p, 1.5, z)?)?;
        Ok(1.0 - k * f * c)
    } else {
        // x = sin²φ through the same rounded cos φ as the direct branch
        let x = (1.0 - c) * (1.0 + c);
        let beta = gamma_real(p)? * PI.sqrt() / gamma_real(p + 0.5)?;
        let f = gauss_2f1(HypergeomParams::new(p + 0.5, 1.0, p + 1.0, x)?)?;
        Ok(x.powf(p) * c / (p * beta) * f)
    }
}

/// Volume of the intersection of two unit `n`-balls whose caps have
/// angular radius `phi`.
pub fn ndim_lens_volume(n: Dimension, phi: AngularRadius) -> Result<f64> {
    let half = n.get() as f64 / 2.0;
    let ball = PI.powf(half) / gamma_real(1.0 + half)?;
    Ok(ball * cap_fraction(half + 0.5, phi)?)
}

/// Boundary measure of the same lens (a perimeter when `n = 2`).
pub fn ndim_lens_area(n: Dimension, phi: AngularRadius) -> Result<f64> {
    let half = n.get() as f64 / 2.0;
    let sphere = 2.0 * PI.powf(half) / gamma_real(half)?;
    Ok(sphere * cap_fraction(half - 0.5, phi)?)
}

/// The bracketed ₂F₁ expression evaluated exactly as displayed, with no
/// branch switch. Kept for cross-checking the complementary branch.
pub fn ndim_lens_volume_direct(n: Dimension, phi: AngularRadius) -> Result<f64> {
    let half = n.get() as f64 / 2.0;
    let c = phi.get().cos();
    let ball = PI.powf(half) / gamma_real(1.0 + half)?;
    let k = 2.0 * gamma_real(1.0 + half)? / (PI.sqrt() * gamma_real(half + 0.5)?);
    let f = gauss_2f1(HypergeomParams::new(0.5, (1.0 - half * 2.0) / 2.0, 1.5, c * c)?)?;
    Ok(ball * (1.0 - k * f * c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::lens_measures;
    use std::f64::consts::FRAC_PI_2;

    fn phi(x: f64) -> AngularRadius {
        AngularRadius::new(x).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn gamma_examples() {
        assert!(rel(gamma_real(1.0).unwrap(), 1.0) < 1e-15);
        assert!(rel(gamma_real(0.5).unwrap(), PI.sqrt()) < 1e-14);
        assert!(rel(gamma_real(2.5).unwrap(), 0.75 * PI.sqrt()) < 1e-14);
        assert!(gamma_real(0.0).is_err());
        assert!(gamma_real(-1.5).is_err());
    }

    #[test]
    fn gamma_matches_factorials() {
        let mut fact = 1.0f64;
        for n in 1..=100u32 {
            // Γ(n) = (n-1)!
            assert!(rel(gamma_real(n as f64).unwrap(), fact) < 1e-13, "n = {n}");
            fact *= n as f64;
        }
    }

    #[test]
    fn gamma_recurrence() {
        let mut x = 0.1;
        while x <= 50.0 {
            let lhs = gamma_real(x + 1.0).unwrap();
            let rhs = x * gamma_real(x).unwrap();
            assert!(rel(lhs, rhs) < 1e-13, "x = {x}");
            x += 0.4;
        }
    }

    #[test]
    fn hypergeometric_examples() {
        let f = |a, b, c, z| gauss_2f1(HypergeomParams::new(a, b, c, z).unwrap()).unwrap();
        for z in [0.0, 0.3, 0.99] {
            assert_eq!(f(0.5, 0.0, 1.5, z), 1.0);
        }
        assert!((f(0.5, -1.0, 1.5, 0.25) - 11.0 / 12.0).abs() < 1e-16);
        assert!((f(0.5, 0.5, 1.5, 0.25) - PI / 3.0).abs() < 1e-14);
        // arcsin identity over a range of arguments
        for k in 1..20 {
            let x = k as f64 / 20.0;
            assert!((f(0.5, 0.5, 1.5, x * x) - x.asin() / x).abs() < 1e-13, "x = {x}");
        }
        for (a, b, c) in [(0.5, -1.5, 1.5), (2.0, 3.0, 0.5), (-0.5, 1.0, 4.0)] {
            assert_eq!(f(a, b, c, 0.0), 1.0);
        }
    }

    #[test]
    fn hypergeometric_rejects_bad_params() {
        assert!(HypergeomParams::new(0.5, 0.5, -2.0, 0.1).is_err());
        assert!(HypergeomParams::new(0.5, 0.5, 0.0, 0.1).is_err());
        assert!(HypergeomParams::new(0.5, 0.5, 1.5, 1.0).is_err());
        assert!(HypergeomParams::new(0.5, 0.5, 1.5, -0.1).is_err());
        // converges, but too slowly for the term cap
        let slow = HypergeomParams::new(0.5, -0.5, 1.5, 1.0 - 1e-9).unwrap();
        assert!(matches!(gauss_2f1(slow), Err(Error::NoConvergence(_))));
    }

    #[test]
    fn three_dimensions_reduce_to_lens() {
        let n = Dimension::new(3).unwrap();
        for k in 1..=200 {
            let p = phi(FRAC_PI_2 * k as f64 / 200.0);
            let m = lens_measures(p);
            assert!(rel(ndim_lens_volume(n, p).unwrap(), m.volume) < 1e-12, "phi = {}", p.get());
            assert!(rel(ndim_lens_area(n, p).unwrap(), m.surface_area) < 1e-12);
        }
        assert_eq!(ndim_lens_volume(n, phi(0.0)).unwrap(), 0.0);
    }

    #[test]
    fn full_ball_at_right_angle() {
        for n in 2..=12 {
            let d = Dimension::new(n).unwrap();
            let h = n as f64 / 2.0;
            let v = PI.powf(h) / gamma_real(1.0 + h).unwrap();
            let s = 2.0 * PI.powf(h) / gamma_real(h).unwrap();
            assert!(rel(ndim_lens_volume(d, phi(FRAC_PI_2)).unwrap(), v) < 1e-14);
            assert!(rel(ndim_lens_area(d, phi(FRAC_PI_2)).unwrap(), s) < 1e-14);
        }
    }

    // Lens of two unit disks at distance 1 by midpoint-rule integration of
    // the chord length 2·sqrt(1 - (|x| + 1/2)²) over x in [-1/2, 1/2].
    #[test]
    fn planar_lens_against_brute_force() {
        let n = 2_000_000;
        let h = 1.0 / n as f64;
        let area: f64 = (0..n)
            .map(|i| {
                let x = -0.5 + (i as f64 + 0.5) * h;
                2.0 * (1.0 - (x.abs() + 0.5).powi(2)).max(0.0).sqrt() * h
            })
            .sum();
        let expect = 2.0 * PI / 3.0 - 3.0f64.sqrt() / 2.0;
        assert!((area - expect).abs() < 1e-9);
        let v = ndim_lens_volume(Dimension::new(2).unwrap(), phi(PI / 3.0)).unwrap();
        assert!((v - expect).abs() < 1e-13);
        assert!((v - 1.228_369_69).abs() < 1e-8);
    }

    // The displayed form cancels as the lens shrinks, so compare on the scale
    // of the full ball rather than relative to the lens.
    #[test]
    fn branches_agree_where_both_converge() {
        for n in 2..=9 {
            let d = Dimension::new(n).unwrap();
            let half = n as f64 / 2.0;
            let ball = PI.powf(half) / gamma_real(1.0 + half).unwrap();
            for k in 0..=40 {
                let p = phi(0.3 + 0.03 * k as f64);
                let a = ndim_lens_volume(d, p).unwrap();
                let b = ndim_lens_volume_direct(d, p).unwrap();
                assert!((a - b).abs() < 1e-12 * ball, "n = {n}, phi = {}", p.get());
            }
        }
    }

    #[test]
    fn monotone_in_phi() {
        for n in 2..=8 {
            let d = Dimension::new(n).unwrap();
            let mut pv = 0.0;
            let mut pa = 0.0;
            for k in 0..=300 {
                let p = phi(FRAC_PI_2 * k as f64 / 300.0);
                let v = ndim_lens_volume(d, p).unwrap();
                let a = ndim_lens_area(d, p).unwrap();
                assert!(v >= pv - 1e-15 && a >= pa - 1e-15, "n = {n}, k = {k}");
                pv = v;
                pa = a;
            }
        }
    }

    // Monte Carlo on S³: the lens boundary is two caps of angular radius φ,
    // so its measure is |S³| times the chance that |x₁| >= cos φ.
    #[test]
    fn four_dimensional_area_against_sampling() {
        use rand::SeedableRng;
        use rand_distr::{Distribution, StandardNormal};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let n = 2_000_000;
        let c = (PI / 3.0).cos();
        let mut hits = 0u64;
        for _ in 0..n {
            let v: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(&mut rng));
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if v[0] / norm >= c {
                hits += 1;
            }
        }
        let p = hits as f64 / n as f64;
        let s3 = 2.0 * PI * PI;
        let est = 2.0 * s3 * p;
        let se = 2.0 * s3 * (p * (1.0 - p) / n as f64).sqrt();
        let exact = ndim_lens_area(Dimension::new(4).unwrap(), phi(PI / 3.0)).unwrap();
        assert!((est - exact).abs() <= 4.0 * se, "{est} vs {exact} (se {se})");
    }

    #[test]
    fn dimension_validation() {
        assert!(Dimension::new(1).is_err());
        assert!(Dimension::new(2).is_ok());
    }
}
