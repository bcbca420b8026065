//! Adaptive Gauss–Kronrod quadrature and the explicit double integrals for
//! the lens, trihedron and Reuleaux tetrahedron.
//!
//! Every 1-D integral goes through the substitution
//! `x = a + (b - a)(3s² - 2s³)`, whose Jacobian vanishes at both ends. That
//! turns the `1/√(x - a)` rim singularity of the area integrands into a
//! bounded integrand and makes `√(x - a)` endpoints smooth.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
/// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_INTERVALS: usize = 50_000;

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(mid);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(mid - dx) + f(mid + dx);
        kron += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kron * half, ((kron - gauss) * half).abs())
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// `∫_a^b f` to absolute tolerance `tol` with the 7/15-point Gauss–Kronrod
/// pair, always bisecting the piece with the largest error estimate.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let piece = |a: f64, b: f64| {
        let (value, err) = gk15(&f, a, b);
        Piece { a, b, value, err }
    };
    let mut heap = std::collections::BinaryHeap::new();
    heap.push(piece(a, b));
    loop {
        let total_err: f64 = heap.iter().map(|p| p.err).sum();
        if total_err <= tol {
            break;
        }
        let worst = heap.pop().expect("non-empty");
        let m = 0.5 * (worst.a + worst.b);
        if heap.len() >= MAX_INTERVALS || m <= worst.a || m >= worst.b {
            return Err(Error::NoConvergence(format!(
                "quadrature on [{a:e}, {b:e}]: error estimate {total_err:e} above {tol:e} with {} pieces, worst [{:e}, {:e}]",
                heap.len() + 1,
                worst.a,
                worst.b
            )));
        }
        heap.push(piece(worst.a, m));
        heap.push(piece(m, worst.b));
    }
    let mut pieces = heap.into_vec();
    pieces.sort_by(|x, y| x.a.total_cmp(&y.a));
    Ok(crate::numerics::mc::compensated_sum(pieces.iter().map(|p| p.value)))
}

/// As [`integrate`], after the endpoint-smoothing substitution.
pub fn integrate_smoothed<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    let w = b - a;
    integrate(
        |s| {
            let x = a + w * s * s * (3.0 - 2.0 * s);
            let jac = 6.0 * w * s * (1.0 - s);
            if jac == 0.0 { 0.0 } else { f(x) * jac }
        },
        0.0,
        1.0,
        tol,
    )
}

/// `∫_{y0}^{y1} ∫_{lo(y)}^{hi(y)} f(x, y) dx dy`.
pub fn integrate_2d<F, L, H>(f: F, lo: L, hi: H, y0: f64, y1: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64, f64) -> f64,
    L: Fn(f64) -> f64,
    H: Fn(f64) -> f64,
{
    let inner_tol = tol / (4.0 * (y1 - y0).abs().max(1.0));
    let err = std::cell::RefCell::new(None);
    let v = integrate_smoothed(
        |y| {
            let (a, b) = (lo(y), hi(y));
            if b <= a {
                return 0.0;
            }
            match integrate_smoothed(|x| f(x, y), a, b, inner_tol) {
                Ok(v) => v,
                Err(e) => {
                    err.borrow_mut().get_or_insert(e);
                    0.0
                }
            }
        },
        y0,
        y1,
        tol / 2.0,
    )?;
    match err.into_inner() {
        Some(e) => Err(e),
        None => Ok(v),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureSolid {
    Dihedron,
    Trihedron,
    Tetrahedron,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Volume,
    SurfaceArea,
}

pub const QUADRATURE_TOL: f64 = 1e-10;

/// Height of the unit sphere centred at `(cx, cy, ·)` above its equator, and
/// the area element `√(1 + f_x² + f_y²) = 1 / f`.
fn cap(x: f64, y: f64, cx: f64, cy: f64) -> f64 {
    (1.0 - (x - cx).powi(2) - (y - cy).powi(2)).max(0.0).sqrt()
}

fn inv(h: f64) -> f64 {
    if h > 0.0 { 1.0 / h } else { 0.0 }
}

/// The explicit double integrals for the volume or surface area of the
/// lens, trihedron or Reuleaux tetrahedron, each split along its symmetry
/// planes.
pub fn double_integral(solid: QuadratureSolid, which: Quantity) -> Result<f64> {
    let tol = QUADRATURE_TOL;
    let s3 = 3.0f64.sqrt();
    match solid {
        QuadratureSolid::Dihedron => {
            let f = |x: f64, y: f64| cap(x, y, -0.5, 0.0);
            let a = |x: f64| (1.0 - (x + 0.5).powi(2)).max(0.0).sqrt();
            // integrate over y inside, x outside: swap the roles
            let v = match which {
                Quantity::Volume => integrate_2d(|y, x| f(x, y), |_| 0.0, a, 0.0, 0.5, tol)?,
                Quantity::SurfaceArea => {
                    integrate_2d(|y, x| inv(f(x, y)), |_| 0.0, a, 0.0, 0.5, tol)?
                }
            };
            Ok(8.0 * v)
        }
        QuadratureSolid::Trihedron => {
            let f = |x: f64, y: f64| cap(x, y, 1.0 / s3, 0.0);
            let a = |y: f64| 1.0 / s3 - (1.0 - y * y).sqrt();
            let c = |y: f64| -y / s3;
            let v = match which {
                Quantity::Volume => integrate_2d(f, a, c, 0.0, 0.5, tol)?,
                Quantity::SurfaceArea => integrate_2d(|x, y| inv(f(x, y)), a, c, 0.0, 0.5, tol)?,
            };
            Ok(12.0 * v)
        }
        QuadratureSolid::Tetrahedron => {
            let f = |x: f64, y: f64| cap(x, y, 1.0 / s3, 0.0);
            let top = |x: f64, y: f64| (1.0 - x * x - y * y).max(0.0).sqrt();
            let g = |x: f64, y: f64| (2.0f64 / 3.0).sqrt() - top(x, y);
            let a = |y: f64| 1.0 / s3 - (1.0 - y * y).sqrt();
            let b = |y: f64| (0.5f64.sqrt() - (3.0 - 4.0 * y * y).sqrt()) / 6.0f64.sqrt();
            let c = |y: f64| -y / s3;
            match which {
                Quantity::Volume => {
                    let outer = integrate_2d(f, a, b, 0.0, 0.5, tol)?;
                    let sliver = integrate_2d(|x, y| f(x, y) - g(x, y), b, c, 0.0, 0.5, tol)?;
                    Ok(12.0 * outer + 6.0 * sliver)
                }
                Quantity::SurfaceArea => {
                    let outer = integrate_2d(|x, y| inv(f(x, y)), a, b, 0.0, 0.5, tol)?;
                    let sliver = integrate_2d(
                        |x, y| inv(f(x, y)) + inv(top(x, y)),
                        b,
                        c,
                        0.0,
                        0.5,
                        tol,
                    )?;
                    Ok(12.0 * outer + 6.0 * sliver)
                }
            }
        }
    }
}

/// Mean width of a body symmetric under rotation about z and reflection in
/// the xy-plane, from its width as a function of `t = |u_z|`:
/// `MW = ∫_0^1 w(t) dt`.
pub fn axisymmetric_mean_width<W: Fn(f64) -> f64>(width: W) -> Result<f64> {
    integrate(width, 0.0, 1.0, 1e-12)
}
