//! Convex hull solids built from the unit ball, with membership tests and
//! analytic support functions. All are symmetric about the z-axis and the
//! xy-plane and contain the origin.

use crate::error::{Error, Result};
use crate::exact::{AngularRadius, CylinderLength};
use crate::geometry::{Aabb, ConvexBody, Direction, Point3, SupportFunction, MEMBERSHIP_SLACK};
use crate::numerics::quadrature::{axisymmetric_mean_width, integrate_smoothed};

/// Unit-radius cylinder of length `ell` along z with hemispherical ends;
/// the set of points within 1 of the segment `|z| ≤ ell/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CappedCylinder {
    half: f64,
}

impl CappedCylinder {
    pub fn new(ell: CylinderLength) -> Self {
        CappedCylinder {
            half: ell.get() / 2.0,
        }
    }
}

impl ConvexBody for CappedCylinder {
    fn contains(&self, p: &Point3) -> bool {
        let dz = (p.z.abs() - self.half).max(0.0);
        p.x * p.x + p.y * p.y + dz * dz <= 1.0 + MEMBERSHIP_SLACK
    }

    fn bounding_box(&self) -> Aabb {
        let e = Point3::new(1.0, 1.0, 1.0 + self.half);
        Aabb { min: -e, max: e }
    }

    fn interior_point(&self) -> Point3 {
        Point3::zeros()
    }
}

impl SupportFunction for CappedCylinder {
    fn support(&self, u: &Direction) -> Result<f64> {
        Ok(1.0 + self.half * u.as_vec().z.abs())
    }
}

/// Unit ball with the caps `|z| > cos φ` removed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricSegment {
    cos: f64,
    sin: f64,
}

impl SymmetricSegment {
    pub fn new(phi: AngularRadius) -> Self {
        let (sin, cos) = phi.get().sin_cos();
        SymmetricSegment { cos, sin }
    }
}

impl ConvexBody for SymmetricSegment {
    fn contains(&self, p: &Point3) -> bool {
        p.norm_squared() <= 1.0 + MEMBERSHIP_SLACK && p.z.abs() <= self.cos + MEMBERSHIP_SLACK
    }

    fn bounding_box(&self) -> Aabb {
        let e = Point3::new(1.0, 1.0, self.cos);
        Aabb { min: -e, max: e }
    }

    fn interior_point(&self) -> Point3 {
        Point3::zeros()
    }
}

impl SupportFunction for SymmetricSegment {
    /// On the sphere when the direction misses the cut, otherwise at the
    /// rim circle `z = cos φ`, radius `sin φ`.
    fn support(&self, u: &Direction) -> Result<f64> {
        let t = u.as_vec().z.abs();
        if t <= self.cos {
            Ok(1.0)
        } else {
            Ok(t * self.cos + self.sin * (1.0 - t * t).max(0.0).sqrt())
        }
    }
}

/// Convex hull of the unit ball and the segment `|z| ≤ 1/cos φ`. The
/// tangent cones from the segment's tips touch the sphere at colatitude φ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapBody {
    cos: f64,
    tip: f64,
}

impl CapBody {
    pub fn new(phi: AngularRadius) -> Result<Self> {
        let cos = phi.get().cos();
        if phi.get() >= std::f64::consts::FRAC_PI_2 {
            return Err(Error::domain("phi", phi.get(), "phi < pi/2 for the cap body"));
        }
        Ok(CapBody { cos, tip: 1.0 / cos })
    }
}

impl ConvexBody for CapBody {
    fn contains(&self, p: &Point3) -> bool {
        if p.norm_squared() <= 1.0 + MEMBERSHIP_SLACK {
            return true;
        }
        let z = p.z.abs();
        if z < self.cos || z > self.tip + MEMBERSHIP_SLACK {
            return false;
        }
        // cone from the tip with half-angle asin(1/tip)
        let tan = 1.0 / (self.tip * self.tip - 1.0).max(0.0).sqrt();
        (p.x * p.x + p.y * p.y).sqrt() <= (self.tip - z) * tan + MEMBERSHIP_SLACK
    }

    fn bounding_box(&self) -> Aabb {
        let e = Point3::new(1.0, 1.0, self.tip);
        Aabb { min: -e, max: e }
    }

    fn interior_point(&self) -> Point3 {
        Point3::zeros()
    }
}

impl SupportFunction for CapBody {
    fn support(&self, u: &Direction) -> Result<f64> {
        Ok((self.tip * u.as_vec().z.abs()).max(1.0))
    }
}

/// Mean width of one of the solids above by 1-D quadrature of its width
/// over `t = |u_z|`.
pub fn quadrature_mean_width<S: SupportFunction>(body: &S) -> Result<f64> {
    let err = std::cell::RefCell::new(None);
    let v = axisymmetric_mean_width(|t| {
        let u = Direction::new(Point3::new((1.0 - t * t).max(0.0).sqrt(), 0.0, t))
            .expect("unit direction");
        match body.width(&u) {
            Ok(w) => w,
            Err(e) => {
                err.borrow_mut().get_or_insert(e);
                0.0
            }
        }
    })?;
    match err.into_inner() {
        Some(e) => Err(e),
        None => Ok(v),
    }
}

/// Radius of the horizontal cross-section at height `z` of a body that is
/// symmetric about the z-axis, by bisection on membership along +x.
fn profile_radius<B: ConvexBody + ?Sized>(body: &B, z: f64) -> f64 {
    let bb = body.bounding_box();
    let mut hi = bb.max.x.max(-bb.min.x);
    if !body.contains(&Point3::new(0.0, 0.0, z)) {
        return 0.0;
    }
    let mut lo = 0.0;
    hi *= 1.0 + 1e-9;
    for _ in 0..64 {
        let mid = 0.5 * (lo + hi);
        if body.contains(&Point3::new(mid, 0.0, z)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Volume of an axisymmetric body as `∫ π r(z)² dz`, with the profile
/// read off the membership oracle.
pub fn profile_volume<B: ConvexBody + ?Sized>(body: &B) -> Result<f64> {
    let bb = body.bounding_box();
    integrate_smoothed(
        |z| std::f64::consts::PI * profile_radius(body, z).powi(2),
        bb.min.z,
        bb.max.z,
        1e-11,
    )
}

/// Surface area of an axisymmetric body from a polygonal profile with
/// `n` nodes clustered toward the poles: each profile segment sweeps a
/// conical frustum of area `π (r₁ + r₂) |P₂ - P₁|`. End discs are closed
/// through the axis.
pub fn profile_area<B: ConvexBody + ?Sized>(body: &B, n: usize) -> f64 {
    let bb = body.bounding_box();
    let (z0, z1) = (bb.min.z, bb.max.z);
    let mut pts: Vec<(f64, f64)> = Vec::with_capacity(n + 3);
    pts.push((0.0, z0));
    for i in 0..=n {
        let s = i as f64 / n as f64;
        let z = z0 + (z1 - z0) * s * s * (3.0 - 2.0 * s);
        pts.push((profile_radius(body, z), z));
    }
    pts.push((0.0, z1));
    crate::numerics::mc::compensated_sum(pts.windows(2).map(|w| {
        let ((r1, a), (r2, b)) = (w[0], w[1]);
        std::f64::consts::PI * (r1 + r2) * (r2 - r1).hypot(b - a)
    }))
}
