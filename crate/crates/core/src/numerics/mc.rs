//! Seeded Monte Carlo estimators.
//!
//! Work is split into a fixed number of chunks. Chunk `k` draws from a
//! ChaCha8 stream selected by `k`, so the result depends only on
//! `(seed, n_samples, n_chunks)` and not on how many threads run the
//! chunks. Partial results are combined in chunk order.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, UnitSphere};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{BallSet, ConvexBody, Direction, Point3, SupportFunction};

pub const DEFAULT_SAMPLES: u64 = 10_000_000;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_CHUNKS: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    n_samples: u64,
    seed: u64,
    n_chunks: u32,
}

impl McConfig {
    pub fn new(n_samples: u64, seed: u64, n_chunks: u32) -> Result<Self> {
        if n_chunks == 0 {
            return Err(Error::Invalid("n_chunks must be at least 1".into()));
        }
        if n_samples < n_chunks as u64 {
            return Err(Error::Invalid(format!(
                "n_samples ({n_samples}) must be at least n_chunks ({n_chunks})"
            )));
        }
        Ok(McConfig {
            n_samples,
            seed,
            n_chunks,
        })
    }

    /// `n_samples` with the default chunk count, reduced when there are
    /// fewer samples than chunks.
    pub fn with_samples(n_samples: u64, seed: u64) -> Result<Self> {
        let chunks = DEFAULT_CHUNKS.min(n_samples.max(1).min(u32::MAX as u64) as u32);
        Self::new(n_samples, seed, chunks)
    }

    pub fn n_samples(&self) -> u64 {
        self.n_samples
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn n_chunks(&self) -> u32 {
        self.n_chunks
    }

    fn chunk_len(&self, k: u32) -> u64 {
        let base = self.n_samples / self.n_chunks as u64;
        let extra = self.n_samples % self.n_chunks as u64;
        base + u64::from((k as u64) < extra)
    }

    fn rng(&self, k: u32) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(k as u64);
        rng
    }

    /// Runs `f(rng, len)` once per chunk and returns the results in chunk
    /// order.
    fn map_chunks<T, F>(&self, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(&mut ChaCha8Rng, u64) -> T + Sync,
    {
        (0..self.n_chunks)
            .into_par_iter()
            .map(|k| f(&mut self.rng(k), self.chunk_len(k)))
            .collect()
    }
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig {
            n_samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            n_chunks: DEFAULT_CHUNKS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
    pub n_samples: u64,
}

impl Estimate {
    /// `|value - target|` in units of the standard error.
    pub fn z_score(&self, target: f64) -> f64 {
        let d = (self.value - target).abs();
        if self.std_error == 0.0 {
            if d == 0.0 { 0.0 } else { f64::INFINITY }
        } else {
            d / self.std_error
        }
    }

    pub fn within_sigmas(&self, target: f64, k: f64) -> bool {
        self.z_score(target) <= k
    }
}

/// Neumaier-compensated sum, in iteration order.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(xs: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for x in xs {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Mean and standard error from per-chunk `(Σx, Σx²)`.
fn sample_mean(parts: &[(f64, f64)], n: u64) -> Estimate {
    let nf = n as f64;
    let mean = compensated_sum(parts.iter().map(|p| p.0)) / nf;
    let mean_sq = compensated_sum(parts.iter().map(|p| p.1)) / nf;
    let var = if n > 1 {
        ((mean_sq - mean * mean) * nf / (nf - 1.0)).max(0.0)
    } else {
        0.0
    };
    Estimate {
        value: mean,
        std_error: (var / nf).sqrt(),
        n_samples: n,
    }
}

fn uniform_in(rng: &mut ChaCha8Rng, lo: &Point3, hi: &Point3) -> Point3 {
    Point3::new(
        lo.x + (hi.x - lo.x) * rng.random::<f64>(),
        lo.y + (hi.y - lo.y) * rng.random::<f64>(),
        lo.z + (hi.z - lo.z) * rng.random::<f64>(),
    )
}

fn unit_vector(rng: &mut ChaCha8Rng) -> Point3 {
    let [x, y, z]: [f64; 3] = UnitSphere.sample(rng);
    Point3::new(x, y, z)
}

/// Rejection sampling in the body's bounding box. The standard error is
/// the binomial one, `V_box √(p(1-p)/n)`.
pub fn mc_volume<B: ConvexBody + ?Sized>(body: &B, cfg: &McConfig) -> Estimate {
    let bb = body.bounding_box();
    let box_volume = bb.volume();
    if box_volume == 0.0 {
        return Estimate {
            value: 0.0,
            std_error: 0.0,
            n_samples: cfg.n_samples,
        };
    }
    let hits: u64 = cfg
        .map_chunks(|rng, len| {
            (0..len)
                .filter(|_| body.contains(&uniform_in(rng, &bb.min, &bb.max)))
                .count() as u64
        })
        .into_iter()
        .sum();
    let n = cfg.n_samples as f64;
    let p = hits as f64 / n;
    Estimate {
        value: box_volume * p,
        std_error: box_volume * (p * (1.0 - p) / n).sqrt(),
        n_samples: cfg.n_samples,
    }
}

/// Samples each sphere uniformly; the part of sphere `i` strictly inside
/// every other ball is its face. Samples are split evenly across spheres.
pub fn mc_surface_area(set: &BallSet, cfg: &McConfig) -> Estimate {
    let spheres = set.spheres();
    let m = spheres.len();
    let per_chunk: Vec<Vec<u64>> = cfg.map_chunks(|rng, len| {
        let mut hits = vec![0u64; m];
        for s in 0..len {
            let i = (s % m as u64) as usize;
            let sp = &spheres[i];
            let p = sp.c() + sp.radius * unit_vector(rng);
            let inside = spheres.iter().enumerate().all(|(k, other)| {
                k == i || (p - other.c()).norm_squared() < other.radius * other.radius
            });
            hits[i] += u64::from(inside);
        }
        hits
    });
    let mut value = 0.0;
    let mut var = 0.0;
    for (i, sp) in spheres.iter().enumerate() {
        // per-chunk sample counts for sphere i
        let n_i: u64 = (0..cfg.n_chunks)
            .map(|k| {
                let len = cfg.chunk_len(k);
                len / m as u64 + u64::from((i as u64) < len % m as u64)
            })
            .sum();
        if n_i == 0 {
            continue;
        }
        let h: u64 = per_chunk.iter().map(|c| c[i]).sum();
        let p = h as f64 / n_i as f64;
        let area = 4.0 * PI * sp.radius * sp.radius;
        value += area * p;
        var += area * area * p * (1.0 - p) / n_i as f64;
    }
    Estimate {
        value,
        std_error: var.sqrt(),
        n_samples: cfg.n_samples,
    }
}

/// Distance from `o` to the boundary along unit direction `w`, by
/// bisection on membership.
fn radial_distance<B: ConvexBody + ?Sized>(body: &B, o: &Point3, w: &Point3, r_max: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, r_max);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if body.contains(&(o + w * mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Surface area of a body star-shaped about its interior point, from
/// `dA = ρ² / (n·ω) dω` with ρ found by bisection and the normal `n` by
/// central differences of the radial map.
pub fn mc_surface_area_radial<B: ConvexBody + ?Sized>(body: &B, cfg: &McConfig) -> Estimate {
    let o = body.interior_point();
    let bb = body.bounding_box();
    let r_max = (bb.max - bb.min).norm() * 2.0 + (bb.min - o).norm();
    let h = 1e-5;
    let surface_point = |w: &Point3| {
        let w = w.normalize();
        w * radial_distance(body, &o, &w, r_max)
    };
    let parts = cfg.map_chunks(|rng, len| {
        let mut s = (0.0, 0.0);
        for _ in 0..len {
            let w = unit_vector(rng);
            let helper = if w.x.abs() < 0.9 { Point3::x() } else { Point3::y() };
            let t1 = w.cross(&helper).normalize();
            let t2 = w.cross(&t1);
            let rho = radial_distance(body, &o, &w, r_max);
            let d1 = surface_point(&(w + t1 * h)) - surface_point(&(w - t1 * h));
            let d2 = surface_point(&(w + t2 * h)) - surface_point(&(w - t2 * h));
            let n = d1.cross(&d2);
            let cos = (n.dot(&w) / n.norm()).abs();
            let g = 4.0 * PI * rho * rho / cos.max(1e-12);
            s.0 += g;
            s.1 += g * g;
        }
        s
    });
    sample_mean(&parts, cfg.n_samples)
}

/// Mean of `h(u) + h(-u)` over uniform directions. Each draw evaluates the
/// antithetic pair, so the width is one sample.
pub fn mc_mean_width<S: SupportFunction + Sync + ?Sized>(body: &S, cfg: &McConfig) -> Result<Estimate> {
    let parts = cfg.map_chunks(|rng, len| -> Result<(f64, f64)> {
        let mut s = (0.0, 0.0);
        for _ in 0..len {
            let u = Direction::new(unit_vector(rng))?;
            let w = body.width(&u)?;
            s.0 += w;
            s.1 += w * w;
        }
        Ok(s)
    });
    let parts = parts.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(sample_mean(&parts, cfg.n_samples))
}
