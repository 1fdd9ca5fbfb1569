//! Interior angles and angle sums of Euclidean polytopes.
//!
//! Facets are exactly 1/2. Codimension-2 faces use the dihedral angle and
//! codimension-3 faces the spherical excess of their normal cone. Everything
//! else falls back to seeded Monte Carlo over Gaussian directions.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::facelattice::{FaceId, VPolytope};
use crate::linalg;
use crate::scalar::Scalar;
use crate::vectors::AlphaVector;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SamplingConfig {
    /// Samples per Monte Carlo angle.
    pub samples: u64,
    pub seed: u64,
    /// Samples per deterministic stream block.
    pub chunk: u64,
    /// Stop early once the standard error drops below this value.
    pub target_se: Option<f64>,
    /// Skip the closed forms and sample every angle.
    pub force_monte_carlo: bool,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            samples: 100_000,
            seed: 0xC0FFEE,
            chunk: 4096,
            target_se: None,
            force_monte_carlo: false,
        }
    }
}

impl SamplingConfig {
    pub fn with_samples(samples: u64) -> Self {
        SamplingConfig {
            samples,
            ..Default::default()
        }
    }

    pub fn forced(mut self) -> Self {
        self.force_monte_carlo = true;
        self
    }

    pub fn seeded(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AngleMethod {
    Exact,
    Dihedral,
    SphericalExcess,
    MonteCarlo,
}

impl AngleMethod {
    pub fn name(&self) -> &'static str {
        match self {
            AngleMethod::Exact => "exact",
            AngleMethod::Dihedral => "dihedral",
            AngleMethod::SphericalExcess => "spherical-excess",
            AngleMethod::MonteCarlo => "monte-carlo",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AngleEstimate {
    pub value: Scalar,
    pub stderr: f64,
    pub method: AngleMethod,
}

pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of one sample block.
pub fn stream_seed(seed: u64, stream: u64, chunk: u64) -> u64 {
    splitmix64(splitmix64(seed ^ splitmix64(stream)) ^ chunk)
}

pub fn gaussian_vec(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    (0..d).map(|_| StandardNormal.sample(rng)).collect()
}

/// Fraction of Gaussian directions `v` with `n·v < 0` for every normal.
///
/// Returns `(fraction, stderr, samples used)`.
pub fn mc_cone_fraction(
    normals: &[Vec<f64>],
    d: usize,
    cfg: &SamplingConfig,
    stream: u64,
) -> Result<(f64, f64, u64)> {
    mc_fraction(d, cfg, stream, |v| {
        let nv = linalg::norm(v);
        let mut inside = true;
        for n in normals {
            let s = linalg::dot(n, v);
            if s.abs() < 1e-12 * nv {
                return None;
            }
            if s >= 0.0 {
                inside = false;
            }
        }
        Some(inside)
    })
}

/// Generic seeded estimator over Gaussian directions in R^d.
///
/// `test` returns `None` for a direction that must be redrawn.
pub fn mc_fraction<T>(d: usize, cfg: &SamplingConfig, stream: u64, test: T) -> Result<(f64, f64, u64)>
where
    T: Fn(&[f64]) -> Option<bool> + Sync,
{
    if cfg.samples == 0 {
        return Err(Error::Invalid("sampling budget is zero".into()));
    }
    let chunk = cfg.chunk.max(1);
    let n_chunks = cfg.samples.div_ceil(chunk);
    let run_chunk = |c: u64| -> (u64, u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(cfg.seed, stream, c));
        let len = chunk.min(cfg.samples - c * chunk);
        let mut hits = 0;
        let mut done = 0;
        let mut redraws = 0u64;
        while done < len {
            let v = gaussian_vec(&mut rng, d);
            match test(&v) {
                Some(true) => {
                    hits += 1;
                    done += 1;
                }
                Some(false) => done += 1,
                None => {
                    redraws += 1;
                    if redraws > 1000 * len {
                        break;
                    }
                }
            }
        }
        (hits, done)
    };
    // rounds of chunks so the early stop is deterministic
    let round = 16u64;
    let (mut hits, mut total) = (0u64, 0u64);
    let mut c0 = 0;
    while c0 < n_chunks {
        let c1 = (c0 + round).min(n_chunks);
        let (h, t) = (c0..c1)
            .into_par_iter()
            .map(run_chunk)
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
        hits += h;
        total += t;
        c0 = c1;
        if let Some(target) = cfg.target_se {
            let p = hits as f64 / total as f64;
            if total > 0 && (p * (1.0 - p) / total as f64).sqrt() <= target {
                break;
            }
        }
    }
    if total == 0 {
        return Err(Error::Degenerate("every sampled direction was rejected".into()));
    }
    let p = hits as f64 / total as f64;
    Ok((p, (p * (1.0 - p) / total as f64).sqrt(), total))
}

fn face_stream(id: FaceId) -> u64 {
    ((id.dim + 2) as u64) << 32 | id.index as u64
}

// π-multiple of a dihedral angle when the cosine between exact normals is a
// Niven value; `None` otherwise.
fn exact_dihedral_over_pi(a: &[BigRational], b: &[BigRational]) -> Option<BigRational> {
    let dot: BigRational = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: BigRational = a.iter().map(|x| x * x).sum();
    let nb: BigRational = b.iter().map(|x| x * x).sum();
    let c2 = &dot * &dot / (na * nb);
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    // angle between outward normals, as a fraction of π, for cos >= 0
    let acute = if c2.is_zero() {
        q(1, 2)
    } else if c2 == q(1, 4) {
        q(1, 3)
    } else if c2 == q(1, 2) {
        q(1, 4)
    } else if c2 == q(3, 4) {
        q(1, 6)
    } else if c2 == q(1, 1) {
        q(0, 1)
    } else {
        return None;
    };
    let between = if dot.is_negative() { q(1, 1) - acute } else { acute };
    // interior dihedral = π − angle between outward normals
    Some(q(1, 1) - between)
}

fn dihedral(p: &VPolytope, f1: usize, f2: usize) -> (Scalar, f64) {
    let n1 = &p.facet_list()[f1].normal;
    let n2 = &p.facet_list()[f2].normal;
    let c = linalg::dot(n1, n2).clamp(-1.0, 1.0);
    let phi = PI - c.acos();
    if let Some(ns) = p.exact_normals() {
        if let Some(r) = exact_dihedral_over_pi(&ns[f1], &ns[f2]) {
            let f = crate::scalar::rational_to_f64(&r) * PI;
            return (Scalar::Exact(r), f);
        }
    }
    (Scalar::Float(phi / PI), phi)
}

/// Interior angle of a proper face.
pub fn interior_angle(p: &VPolytope, face: FaceId, cfg: &SamplingConfig) -> Result<AngleEstimate> {
    let d = p.dim() as isize;
    let l = p.lattice();
    if face.dim < 0 || face.dim >= d {
        return Err(Error::Invalid(format!(
            "face of dimension {} is not a proper face of a {d}-polytope",
            face.dim
        )));
    }
    if face.index >= l.faces(face.dim).len() {
        return Err(Error::Invalid("face index out of range".into()));
    }
    let codim = d - face.dim;
    let facets = l.facets_containing(face);
    if !cfg.force_monte_carlo {
        match codim {
            1 => {
                return Ok(AngleEstimate {
                    value: Scalar::ratio(1, 2),
                    stderr: 0.0,
                    method: AngleMethod::Exact,
                })
            }
            2 if facets.len() == 2 => {
                let (over_pi, _) = dihedral(p, facets[0], facets[1]);
                return Ok(AngleEstimate {
                    value: over_pi * Scalar::ratio(1, 2),
                    stderr: 0.0,
                    method: AngleMethod::Dihedral,
                });
            }
            3 => {
                // Girard: normalized excess of the cone's cross-section polygon
                let ridges = l.superfaces(face, face.dim + 1);
                let m = ridges.len() as i64;
                let mut sum = Scalar::zero();
                for r in &ridges {
                    let fs = l.facets_containing(*r);
                    if fs.len() != 2 {
                        return Err(Error::Degenerate("ridge not on two facets".into()));
                    }
                    sum += dihedral(p, fs[0], fs[1]).0;
                }
                let value = (sum - Scalar::int(m - 2)) * Scalar::ratio(1, 4);
                return Ok(AngleEstimate {
                    value,
                    stderr: 0.0,
                    method: AngleMethod::SphericalExcess,
                });
            }
            _ => {}
        }
    }
    let normals: Vec<Vec<f64>> = facets
        .iter()
        .map(|&i| p.facet_list()[i].normal.clone())
        .collect();
    let (v, se, _) = mc_cone_fraction(&normals, p.dim(), cfg, face_stream(face))?;
    Ok(AngleEstimate {
        value: Scalar::Float(v),
        stderr: se,
        method: AngleMethod::MonteCarlo,
    })
}

/// The angle sum over the faces of one dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct AngleSum {
    pub dim: usize,
    pub value: Scalar,
    pub stderr: f64,
    /// Methods used, without repeats, in order of first use.
    pub methods: Vec<AngleMethod>,
}

/// `α_0..α_{d−1}` face by face, keeping track of how each angle was obtained.
pub fn angle_sums_by_dim(p: &VPolytope, cfg: &SamplingConfig) -> Result<Vec<AngleSum>> {
    let l = p.lattice();
    let mut out = Vec::with_capacity(p.dim());
    for i in 0..p.dim() {
        let ids: Vec<FaceId> = l.ids(i as isize).collect();
        let ests: Vec<Result<AngleEstimate>> =
            ids.par_iter().map(|&id| interior_angle(p, id, cfg)).collect();
        let mut sum = AngleSum {
            dim: i,
            value: Scalar::zero(),
            stderr: 0.0,
            methods: Vec::new(),
        };
        let mut v = 0.0;
        for e in ests {
            let e = e?;
            sum.value += e.value;
            v += e.stderr * e.stderr;
            if !sum.methods.contains(&e.method) {
                sum.methods.push(e.method);
            }
        }
        sum.stderr = v.sqrt();
        out.push(sum);
    }
    Ok(out)
}

/// Angle sums with per-entry standard errors aggregated in quadrature.
pub fn angle_sums(p: &VPolytope, cfg: &SamplingConfig) -> Result<AlphaVector> {
    let d = p.dim();
    let sums = angle_sums_by_dim(p, cfg)?;
    let mut entries = vec![Scalar::zero()];
    let mut se = vec![0.0];
    for s in sums {
        entries.push(s.value);
        se.push(s.stderr);
    }
    entries.push(Scalar::one());
    se.push(0.0);
    let a = AlphaVector::new(d, entries)?;
    if se.iter().any(|&x| x > 0.0) {
        a.with_stderr(se)
    } else {
        Ok(a)
    }
}

#[derive(Clone, Debug)]
pub struct ProjectionReport {
    pub trials: u64,
    /// Estimated `E f_i(P')` for `0 <= i <= d-2`.
    pub expected: Vec<f64>,
    pub expected_se: Vec<f64>,
    /// `(f_i(P) − E f_i(P'))/2`.
    pub alpha_hat: Vec<f64>,
    pub alpha_hat_se: Vec<f64>,
}

/// Monte Carlo estimate of the face counts of a random projection along a uniform direction.
pub fn projection_expectation(p: &VPolytope, trials: u64, seed: u64) -> Result<ProjectionReport> {
    let d = p.dim();
    if d < 2 {
        return Err(Error::Invalid("projection needs d >= 2".into()));
    }
    if trials == 0 {
        return Err(Error::Invalid("zero trials".into()));
    }
    let f = p.lattice().f_vector();
    let chunk = 256u64;
    let n_chunks = trials.div_ceil(chunk);
    let verts = p.vertices();
    let parts: Vec<Result<(Vec<f64>, Vec<f64>)>> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(seed, 0x5052_4F4A, c));
            let len = chunk.min(trials - c * chunk);
            let mut sum = vec![0.0; d - 1];
            let mut sum2 = vec![0.0; d - 1];
            let mut done = 0;
            let mut failures = 0;
            while done < len {
                let u = gaussian_vec(&mut rng, d);
                if linalg::norm(&u) < 1e-9 {
                    continue;
                }
                let basis = linalg::orth_complement(&[u], d);
                let proj: Vec<Vec<f64>> = verts
                    .iter()
                    .map(|v| basis.iter().map(|b| linalg::dot(b, v)).collect())
                    .collect();
                match VPolytope::hull_f64(proj) {
                    Ok(q) => {
                        let fq = q.lattice().f_vector();
                        for i in 0..d - 1 {
                            let x = fq.get(i as isize) as f64;
                            sum[i] += x;
                            sum2[i] += x * x;
                        }
                        done += 1;
                    }
                    Err(_) => {
                        failures += 1;
                        if failures > 100 + len {
                            return Err(Error::Budget("too many degenerate projections".into()));
                        }
                    }
                }
            }
            Ok((sum, sum2))
        })
        .collect();
    let mut sum = vec![0.0; d - 1];
    let mut sum2 = vec![0.0; d - 1];
    for part in parts {
        let (s, s2) = part?;
        for i in 0..d - 1 {
            sum[i] += s[i];
            sum2[i] += s2[i];
        }
    }
    let n = trials as f64;
    let expected: Vec<f64> = sum.iter().map(|s| s / n).collect();
    let expected_se: Vec<f64> = (0..d - 1)
        .map(|i| {
            let var = (sum2[i] / n - expected[i] * expected[i]).max(0.0);
            (var / n).sqrt()
        })
        .collect();
    let alpha_hat = (0..d - 1)
        .map(|i| (f.get(i as isize) as f64 - expected[i]) / 2.0)
        .collect();
    let alpha_hat_se = expected_se.iter().map(|s| s / 2.0).collect();
    Ok(ProjectionReport {
        trials,
        expected,
        expected_se,
        alpha_hat,
        alpha_hat_se,
    })
}
