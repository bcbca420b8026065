//! Support function of a ball intersection by cyclic Dykstra projection of
//! a far point, followed by an exact solve on the constraints that are
//! nearly active at the projected point.

use crate::error::{Error, Result};
use crate::geometry::{BallSet, Direction, Point3, SupportFunction};
use crate::skeleton::{intersection_circle, CircleIntersection};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const MAX_SWEEPS: usize = 100_000;

/// Feasibility slack for candidate support points, relative to the radius.
const FEASIBLE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Projection {
    pub point: Point3,
    pub sweeps: usize,
    /// Largest `|x - c_i| - r_i` at the returned point.
    pub max_violation: f64,
}

fn project_ball(y: &Point3, c: &Point3, r: f64) -> Point3 {
    let d = y - c;
    let n = d.norm();
    if n <= r { *y } else { c + d * (r / n) }
}

fn max_violation(set: &BallSet, x: &Point3) -> f64 {
    set.spheres()
        .iter()
        .map(|s| (x - s.c()).norm() - s.radius)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Runs Dykstra sweeps from `p` until a sweep moves the iterate less than
/// `tol` while it lies within `tol` of every ball, or the sweep cap is hit.
/// Returns the iterate, the sweep count and whether it converged.
fn dykstra_run(set: &BallSet, p: &Point3, tol: f64) -> (Point3, usize, f64, bool) {
    let spheres = set.spheres();
    let mut x = *p;
    let mut q = vec![Point3::zeros(); spheres.len()];
    let mut moved = f64::INFINITY;
    for sweep in 1..=MAX_SWEEPS {
        let start = x;
        for (s, qi) in spheres.iter().zip(q.iter_mut()) {
            let y = x + *qi;
            x = project_ball(&y, &s.c(), s.radius);
            *qi = y - x;
        }
        moved = (x - start).norm();
        if moved < tol && max_violation(set, &x) <= tol {
            return (x, sweep, moved, true);
        }
    }
    (x, MAX_SWEEPS, moved, false)
}

/// Euclidean projection of `p` onto the intersection by Dykstra's
/// algorithm. Stops when a full sweep moves the iterate less than `tol`.
pub fn dykstra_project(set: &BallSet, p: &Point3, tol: f64) -> Result<Projection> {
    let (x, sweeps, moved, converged) = dykstra_run(set, p, tol);
    if converged {
        return Ok(Projection {
            point: x,
            sweeps,
            max_violation: max_violation(set, &x),
        });
    }
    Err(Error::NoConvergence(format!(
        "Dykstra projection: {MAX_SWEEPS} sweeps, last move {moved:e}, iterate {:?}, violation {:e}",
        [x.x, x.y, x.z],
        max_violation(set, &x)
    )))
}

/// True when the balls share no point: some pair is disjoint, or Dykstra
/// from the centroid ends more than 1e-8 outside some ball.
pub fn is_empty_intersection(set: &BallSet) -> bool {
    let s = set.spheres();
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if (s[i].c() - s[j].c()).norm() > s[i].radius + s[j].radius {
                return true;
            }
        }
    }
    let (x, _, _, _) = dykstra_run(set, &set.centroid(), 1e-12);
    max_violation(set, &x) > 1e-8
}

fn feasible(set: &BallSet, x: &Point3) -> bool {
    set.spheres()
        .iter()
        .all(|s| (x - s.c()).norm() <= s.radius * (1.0 + FEASIBLE))
}

/// Points where `u·x` can be maximal given that exactly the listed spheres
/// are active: the face point, the top of a circle, or a triple point.
fn candidates(set: &BallSet, idx: &[usize], u: &Point3) -> Vec<Point3> {
    let s = set.spheres();
    let mut out = Vec::new();
    for &i in idx {
        out.push(s[i].c() + u * s[i].radius);
    }
    for (a, &i) in idx.iter().enumerate() {
        for &j in &idx[a + 1..] {
            let Ok(CircleIntersection::Circle(c)) = intersection_circle(&s[i], &s[j]) else {
                continue;
            };
            let n = c.normal.as_vec();
            let perp = u - n * n.dot(u);
            let dir = if perp.norm() > 1e-15 {
                perp.normalize()
            } else {
                c.frame().0
            };
            out.push(c.center + dir * c.radius);
            for &k in idx.iter().filter(|&&k| k != i && k != j) {
                let (e1, e2) = c.frame();
                let w = s[k].c() - c.center;
                let (w1, w2) = (w.dot(&e1), w.dot(&e2));
                let m = w1.hypot(w2);
                if m < 1e-15 {
                    continue;
                }
                let qv = (c.radius * c.radius + w.norm_squared() - s[k].radius * s[k].radius)
                    / (2.0 * c.radius * m);
                if qv.abs() > 1.0 {
                    continue;
                }
                let beta = w2.atan2(w1);
                let half = qv.acos();
                out.push(c.point(beta + half));
                out.push(c.point(beta - half));
            }
        }
    }
    out
}

fn best_feasible(set: &BallSet, idx: &[usize], u: &Point3) -> Option<f64> {
    candidates(set, idx, u)
        .iter()
        .filter(|x| feasible(set, x))
        .map(|x| u.dot(x))
        .reduce(f64::max)
}

/// Support value by enumerating every face point, circle top and triple
/// point of the whole set. Cubic in the number of spheres.
pub fn support_by_enumeration(set: &BallSet, u: &Direction) -> Result<f64> {
    let all: Vec<usize> = (0..set.len()).collect();
    best_feasible(set, &all, u.as_vec()).ok_or(Error::Empty)
}

/// `h(u) = max { u·x : x in ∩ balls }`.
///
/// The far point `c̄ + R u`, `R = 100 (max |c| + max r)`, is projected onto
/// the body. The projected point lies near the true support point, so the
/// spheres active there are among those within a tenth of the largest
/// radius of the projected point; the exact maximiser over those is then
/// taken from their face points, circle tops and triple points.
pub fn support_function(set: &BallSet, u: &Direction, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::Invalid(format!("tolerance must be positive, got {tol}")));
    }
    if is_empty_intersection(set) {
        return Err(Error::Empty);
    }
    let s = set.spheres();
    let max_c = s.iter().map(|sp| sp.c().norm()).fold(0.0, f64::max);
    let max_r = s.iter().map(|sp| sp.radius).fold(0.0, f64::max);
    let r_far = 100.0 * (max_c + max_r);
    let uv = u.as_vec();
    let proj = dykstra_project(set, &(set.centroid() + uv * r_far), tol)?;
    let x = proj.point;
    let near: Vec<usize> = (0..s.len())
        .filter(|&i| (x - s[i].c()).norm() >= s[i].radius - 0.1 * max_r)
        .collect();
    Ok(best_feasible(set, &near, uv).unwrap_or_else(|| uv.dot(&x)))
}

/// Uses [`support_by_enumeration`]: exact, and thousands of times faster
/// than the projection route, which can need several thousand sweeps when
/// the support point sits on an edge.
impl SupportFunction for BallSet {
    fn support(&self, u: &Direction) -> Result<f64> {
        support_by_enumeration(self, u)
    }
}

/// The projection route as a [`SupportFunction`].
#[derive(Debug, Clone, Copy)]
pub struct DykstraSupport<'a> {
    pub set: &'a BallSet,
    pub tol: f64,
}

impl SupportFunction for DykstraSupport<'_> {
    fn support(&self, u: &Direction) -> Result<f64> {
        support_function(self.set, u, self.tol)
    }
}
