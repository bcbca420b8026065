//! Spheres, finite intersections of balls and the measure triple shared by
//! every other module.

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Point3 = Vector3<f64>;

/// Absolute slack used by the closed-set membership test.
pub const MEMBERSHIP_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sphere {
    pub center: [f64; 3],
    pub radius: f64,
}

impl Sphere {
    pub fn new(center: [f64; 3], radius: f64) -> Result<Self> {
        if !center.iter().all(|c| c.is_finite()) {
            return Err(Error::Invalid(format!("non-finite sphere center {center:?}")));
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::domain("radius", radius, "radius > 0"));
        }
        Ok(Sphere { center, radius })
    }

    pub fn unit(center: [f64; 3]) -> Self {
        Sphere::new(center, 1.0).expect("finite unit sphere")
    }

    #[inline]
    pub fn c(&self) -> Point3 {
        Point3::from(self.center)
    }

    #[inline]
    pub fn contains(&self, p: &Point3) -> bool {
        (p - self.c()).norm() <= self.radius + MEMBERSHIP_SLACK
    }
}

/// Ordered, non-empty list of distinct spheres; the body is the
/// intersection of the closed balls they bound.
#[derive(Debug, Clone, PartialEq)]
pub struct BallSet {
    spheres: Vec<Sphere>,
}

impl BallSet {
    pub fn new(spheres: Vec<Sphere>) -> Result<Self> {
        if spheres.is_empty() {
            return Err(Error::Invalid("a ball set needs at least one sphere".into()));
        }
        for (i, s) in spheres.iter().enumerate() {
            // re-validate: fields are public
            Sphere::new(s.center, s.radius)?;
            if spheres[..i].iter().any(|t| t == s) {
                return Err(Error::Invalid(format!("sphere {i} duplicates an earlier sphere")));
            }
        }
        Ok(BallSet { spheres })
    }

    pub fn spheres(&self) -> &[Sphere] {
        &self.spheres
    }

    pub fn len(&self) -> usize {
        self.spheres.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spheres.is_empty()
    }

    pub fn contains(&self, p: &Point3) -> bool {
        self.spheres.iter().all(|s| s.contains(p))
    }

    pub fn centroid(&self) -> Point3 {
        let sum: Point3 = self.spheres.iter().map(Sphere::c).sum();
        sum / self.spheres.len() as f64
    }

    /// Common radius when all spheres agree to 1e-12 relative.
    pub fn common_radius(&self) -> Option<f64> {
        let r0 = self.spheres[0].radius;
        self.spheres
            .iter()
            .all(|s| (s.radius - r0).abs() <= 1e-12 * r0)
            .then_some(r0)
    }
}

/// Closed membership test with [`MEMBERSHIP_SLACK`].
pub fn point_in_ballset(p: [f64; 3], set: &BallSet) -> bool {
    set.contains(&Point3::from(p))
}

pub fn scale_ballset(set: &BallSet, s: f64) -> Result<BallSet> {
    if !(s.is_finite() && s > 0.0) {
        return Err(Error::domain("scale", s, "s > 0"));
    }
    let spheres = set
        .spheres
        .iter()
        .map(|sp| Sphere::new(sp.center.map(|c| c * s), sp.radius * s))
        .collect::<Result<Vec<_>>>()?;
    BallSet::new(spheres)
}

/// Named ball configurations, all with unit
/// radii. The dodecahedron places twelve spheres on the icosahedron
/// directions so that adjacent centers sit at distance 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Canonical {
    Dihedron,
    Trihedron,
    Tetrahedron,
    Hexahedron,
    Dodecahedron,
}

impl Canonical {
    pub const ALL: [Canonical; 5] = [
        Canonical::Dihedron,
        Canonical::Trihedron,
        Canonical::Tetrahedron,
        Canonical::Hexahedron,
        Canonical::Dodecahedron,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Canonical::Dihedron => "dihedron",
            Canonical::Trihedron => "trihedron",
            Canonical::Tetrahedron => "tetrahedron",
            Canonical::Hexahedron => "hexahedron",
            Canonical::Dodecahedron => "dodecahedron",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Canonical::ALL
            .into_iter()
            .find(|c| c.name() == name)
            .ok_or_else(|| Error::UnknownSolid(name.to_string()))
    }

    pub fn ballset(self) -> BallSet {
        let centers: Vec<[f64; 3]> = match self {
            Canonical::Dihedron => vec![[0.5, 0.0, 0.0], [-0.5, 0.0, 0.0]],
            Canonical::Trihedron => triangle_centers().to_vec(),
            Canonical::Tetrahedron => {
                let mut c = triangle_centers().to_vec();
                c.push([0.0, 0.0, (2.0f64 / 3.0).sqrt()]);
                c
            }
            Canonical::Hexahedron => {
                let a = 1.0 / 2.0f64.sqrt();
                vec![
                    [a, 0.0, 0.0],
                    [-a, 0.0, 0.0],
                    [0.0, a, 0.0],
                    [0.0, -a, 0.0],
                    [0.0, 0.0, a],
                    [0.0, 0.0, -a],
                ]
            }
            Canonical::Dodecahedron => icosahedral_centers(),
        };
        BallSet::new(centers.into_iter().map(Sphere::unit).collect())
            .expect("canonical sets are valid")
    }
}

pub fn canonical_ballsets(name: &str) -> Result<BallSet> {
    Canonical::from_name(name).map(Canonical::ballset)
}

fn triangle_centers() -> [[f64; 3]; 3] {
    let s3 = 3.0f64.sqrt();
    [
        [1.0 / s3, 0.0, 0.0],
        [-1.0 / (2.0 * s3), 0.5, 0.0],
        [-1.0 / (2.0 * s3), -0.5, 0.0],
    ]
}

// Icosahedron vertices (0, ±1, ±g) and cyclic permutations, rescaled so
// neighbouring vertices are one unit apart. The neighbour chord of the raw
// coordinates is 2, so the rescale is simply 1/2.
fn icosahedral_centers() -> Vec<[f64; 3]> {
    let g = (1.0 + 5.0f64.sqrt()) / 2.0;
    let mut out = Vec::with_capacity(12);
    for s1 in [1.0, -1.0] {
        for s2 in [1.0, -1.0] {
            out.push([0.0, s1 * 0.5, s2 * g * 0.5]);
            out.push([s1 * 0.5, s2 * g * 0.5, 0.0]);
            out.push([s2 * g * 0.5, 0.0, s1 * 0.5]);
        }
    }
    out
}

/// Unit vector in R³.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction(Point3);

impl Direction {
    /// Normalizes `v`; fails for zero or non-finite input.
    pub fn new(v: Point3) -> Result<Self> {
        let n = v.norm();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::Invalid(format!("cannot normalize {v:?}")));
        }
        Ok(Direction(v / n))
    }

    /// Accepts `v` only if it already has unit norm within 1e-12.
    pub fn from_unit(v: Point3) -> Result<Self> {
        if ((v.norm() - 1.0).abs()) > 1e-12 {
            return Err(Error::Invalid(format!("{v:?} is not a unit vector")));
        }
        Ok(Direction(v))
    }

    pub fn as_vec(&self) -> &Point3 {
        &self.0
    }
}

impl std::ops::Neg for Direction {
    type Output = Direction;
    fn neg(self) -> Direction {
        Direction(-self.0)
    }
}

/// Volume (length³), surface area (length²) and mean width (length).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Measures {
    pub volume: f64,
    pub surface_area: f64,
    pub mean_width: f64,
}

impl Measures {
    pub const ZERO: Measures = Measures {
        volume: 0.0,
        surface_area: 0.0,
        mean_width: 0.0,
    };

    pub fn new(volume: f64, surface_area: f64, mean_width: f64) -> Self {
        Measures {
            volume,
            surface_area,
            mean_width,
        }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.volume, self.surface_area, self.mean_width]
    }

    /// Measures of the ball of radius `r`.
    pub fn ball(r: f64) -> Self {
        use std::f64::consts::PI;
        Measures::new(4.0 * PI * r.powi(3) / 3.0, 4.0 * PI * r * r, 2.0 * r)
    }

    /// Rescale a body by the linear factor `s`.
    pub fn scaled(&self, s: f64) -> Self {
        Measures::new(self.volume * s.powi(3), self.surface_area * s * s, self.mean_width * s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aabb {
    pub min: Point3,
    pub max: Point3,
}

impl Aabb {
    pub fn volume(&self) -> f64 {
        let d = self.max - self.min;
        d.x.max(0.0) * d.y.max(0.0) * d.z.max(0.0)
    }

    pub fn intersect(&self, other: &Aabb) -> Aabb {
        Aabb {
            min: self.min.sup(&other.min),
            max: self.max.inf(&other.max),
        }
    }
}

/// A compact convex body given by a membership oracle.
pub trait ConvexBody: Sync {
    fn contains(&self, p: &Point3) -> bool;
    fn bounding_box(&self) -> Aabb;
    /// A point in the interior, used as the origin for radial sampling.
    fn interior_point(&self) -> Point3;
}

impl ConvexBody for BallSet {
    fn contains(&self, p: &Point3) -> bool {
        BallSet::contains(self, p)
    }

    /// Intersection of the spheres' circumscribing boxes.
    fn bounding_box(&self) -> Aabb {
        self.spheres
            .iter()
            .map(|s| {
                let r = Point3::repeat(s.radius);
                Aabb {
                    min: s.c() - r,
                    max: s.c() + r,
                }
            })
            .reduce(|a, b| a.intersect(&b))
            .expect("non-empty ball set")
    }

    fn interior_point(&self) -> Point3 {
        self.centroid()
    }
}

/// Support function `h(u) = max { u·x : x in K }`.
pub trait SupportFunction {
    fn support(&self, u: &Direction) -> Result<f64>;

    /// Width of the body in direction `u`.
    fn width(&self, u: &Direction) -> Result<f64> {
        Ok(self.support(u)? + self.support(&-*u)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairwise(set: &BallSet) -> Vec<f64> {
        let s = set.spheres();
        let mut d = Vec::new();
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                d.push((s[i].c() - s[j].c()).norm());
            }
        }
        d
    }

    #[test]
    fn membership_examples() {
        let tet = Canonical::Tetrahedron.ballset();
        assert!(point_in_ballset([0.0, 0.0, 0.0], &tet));
        assert!(!point_in_ballset([2.0, 0.0, 0.0], &tet));
        assert!(point_in_ballset([1.0 / 3.0f64.sqrt(), 0.0, 0.0], &tet));
        assert!(!point_in_ballset([1.0 / 3.0f64.sqrt() + 1e-9, 0.0, 0.0], &tet));
    }

    #[test]
    fn scaling_examples() {
        let ball = BallSet::new(vec![Sphere::unit([0.0; 3])]).unwrap();
        assert_eq!(scale_ballset(&ball, 1.0).unwrap(), ball);
        let big = scale_ballset(&ball, 2.0).unwrap();
        assert_eq!(big.spheres()[0].radius, 2.0);
        assert_eq!(big.spheres()[0].center, [0.0; 3]);

        let di = scale_ballset(&Canonical::Dihedron.ballset(), 3.0).unwrap();
        assert_eq!(di.spheres()[0].center, [1.5, 0.0, 0.0]);
        assert_eq!(di.spheres()[1].center, [-1.5, 0.0, 0.0]);
        assert!(di.spheres().iter().all(|s| s.radius == 3.0));

        assert!(matches!(scale_ballset(&ball, 0.0), Err(Error::Domain { .. })));
        assert!(matches!(scale_ballset(&ball, -1.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn canonical_configurations() {
        for name in ["dihedron", "trihedron", "tetrahedron"] {
            let set = canonical_ballsets(name).unwrap();
            assert!(pairwise(&set).iter().all(|d| (d - 1.0).abs() < 1e-15), "{name}");
        }
        assert_eq!(canonical_ballsets("dihedron").unwrap().len(), 2);
        let tet = canonical_ballsets("tetrahedron").unwrap();
        assert_eq!(tet.spheres()[3].center, [0.0, 0.0, (2.0f64 / 3.0).sqrt()]);

        let hex = canonical_ballsets("hexahedron").unwrap();
        assert_eq!(hex.len(), 6);
        for s in hex.spheres() {
            assert!((s.c().norm() - 0.5f64.sqrt()).abs() < 1e-15);
        }
        let d = pairwise(&hex);
        assert_eq!(d.iter().filter(|d| (*d - 1.0).abs() < 1e-14).count(), 12);
        assert_eq!(d.iter().filter(|d| (*d - 2.0f64.sqrt()).abs() < 1e-14).count(), 3);

        let dod = Canonical::Dodecahedron.ballset();
        let d = pairwise(&dod);
        assert_eq!(d.iter().filter(|d| (*d - 1.0).abs() < 1e-14).count(), 30);

        assert!(matches!(canonical_ballsets("cube"), Err(Error::UnknownSolid(_))));
    }

    #[test]
    fn ballset_rejects_bad_input() {
        assert!(BallSet::new(vec![]).is_err());
        let s = Sphere::unit([0.0; 3]);
        assert!(BallSet::new(vec![s, s]).is_err());
        assert!(Sphere::new([0.0; 3], 0.0).is_err());
        assert!(Sphere::new([f64::NAN, 0.0, 0.0], 1.0).is_err());
    }

    #[test]
    fn direction_validation() {
        assert!(Direction::new(Point3::zeros()).is_err());
        let d = Direction::new(Point3::new(3.0, 4.0, 0.0)).unwrap();
        assert!((d.as_vec().norm() - 1.0).abs() < 1e-15);
        assert!(Direction::from_unit(Point3::new(1.0, 1.0, 0.0)).is_err());
    }

    #[test]
    fn bounding_box_is_box_intersection() {
        let bb = Canonical::Dihedron.ballset().bounding_box();
        assert_eq!(bb.min, Point3::new(-0.5, -1.0, -1.0));
        assert_eq!(bb.max, Point3::new(0.5, 1.0, 1.0));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn removing_a_sphere_never_excludes(
                x in -1.5f64..1.5, y in -1.5f64..1.5, z in -1.5f64..1.5, drop in 0usize..4
            ) {
                let tet = Canonical::Tetrahedron.ballset();
                let mut rest = tet.spheres().to_vec();
                rest.remove(drop);
                let sub = BallSet::new(rest).unwrap();
                if point_in_ballset([x, y, z], &tet) {
                    prop_assert!(point_in_ballset([x, y, z], &sub));
                }
            }

            #[test]
            fn scale_round_trip(s in 0.01f64..100.0, which in 0usize..5) {
                let set = Canonical::ALL[which].ballset();
                let back = scale_ballset(&scale_ballset(&set, s).unwrap(), 1.0 / s).unwrap();
                for (a, b) in set.spheres().iter().zip(back.spheres()) {
                    for k in 0..3 {
                        prop_assert!((a.center[k] - b.center[k]).abs() <= 1e-12);
                    }
                    prop_assert!((a.radius - b.radius).abs() <= 1e-12);
                }
            }
        }
    }
}
