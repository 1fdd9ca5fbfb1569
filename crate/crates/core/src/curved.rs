//! Spherical and hyperbolic polytopes of dimension at most 3.
//!
//! A spherical polytope is stored as the unit vectors spanning a pointed cone
//! in `R^{d+1}`; a hyperbolic one by its vertices in the Klein ball. Both are
//! given a Euclidean chart (gnomonic about the cone axis, or the Klein model
//! itself) that carries the combinatorics. Angles are never read off the
//! chart directly:
//!
//! * spherical angles are the Euclidean angles of the cone `conv(0, w_i)` at
//!   the faces through the apex;
//! * hyperbolic angles are read at the Klein origin after a Lorentz boost
//!   takes a relative-interior point of the face there, where the Klein
//!   metric agrees with the Euclidean one.
//!
//! Normalized volumes use `vol(S^d)` of the unit sphere in both geometries.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::angles::{self, gaussian_vec, AngleEstimate, AngleMethod, SamplingConfig};
use crate::complexes::facecx::{classify, predict, Chars, Classification, FaceComplex};
use crate::error::{Error, Result};
use crate::facelattice::{is_simplicial, FaceId, VPolytope};
use crate::linalg;
use crate::relations::{operator_coeffs, Relation, RelationReport};
use crate::scalar::{binom_s, Scalar};
use crate::vectors::{AlphaVector, FVector};

pub const MAX_DIM: usize = 3;
const UNIT_TOL: f64 = 1e-9;
const QUAD_NODES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    Spherical,
    Euclidean,
    Hyperbolic,
}

impl Geometry {
    /// Curvature sign ε.
    pub fn eps(self) -> i8 {
        match self {
            Geometry::Spherical => 1,
            Geometry::Euclidean => 0,
            Geometry::Hyperbolic => -1,
        }
    }

    /// `ε^{d/2}`, read as `cos(dπ/2)` in the hyperbolic case.
    pub fn eps_half_power(self, d: usize) -> Scalar {
        match self {
            Geometry::Spherical => Scalar::one(),
            Geometry::Euclidean => Scalar::zero(),
            Geometry::Hyperbolic => match d % 4 {
                0 => Scalar::one(),
                2 => Scalar::int(-1),
                _ => Scalar::zero(),
            },
        }
    }

    /// `ε^{d/2}(1 + (−1)^d)`, the coefficient of `α_{−1}` in the Gram relation.
    pub fn gram_coefficient(self, d: usize) -> Scalar {
        if d % 2 == 1 {
            Scalar::zero()
        } else {
            Scalar::int(2) * self.eps_half_power(d)
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Geometry::Spherical => "spherical",
            Geometry::Euclidean => "euclidean",
            Geometry::Hyperbolic => "hyperbolic",
        }
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Geometry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "spherical" | "sphere" | "s" => Ok(Geometry::Spherical),
            "euclidean" | "flat" | "e" => Ok(Geometry::Euclidean),
            "hyperbolic" | "klein" | "h" => Ok(Geometry::Hyperbolic),
            other => Err(Error::Parse(format!("unknown geometry {other:?}"))),
        }
    }
}

/// Volume of the unit sphere `S^d` in `R^{d+1}`.
pub fn sphere_volume(d: usize) -> f64 {
    match d {
        0 => 2.0,
        1 => 2.0 * PI,
        _ => 2.0 * PI / (d as f64 - 1.0) * sphere_volume(d - 2),
    }
}

#[derive(Clone, Debug)]
pub struct CurvedPolytope {
    geometry: Geometry,
    dim: usize,
    vertices: Vec<Vec<f64>>,
    chart: VPolytope,
    // spherical: cone axis followed by an orthonormal basis of its complement
    frame: Option<Vec<Vec<f64>>>,
    ideal: Vec<bool>,
    pub label: Option<String>,
}

impl CurvedPolytope {
    /// Spherical input is a list of unit vectors in `R^{d+1}`; Euclidean and
    /// hyperbolic input is a list of points in `R^d`, hyperbolic ones in the
    /// closed Klein ball.
    pub fn new(geometry: Geometry, vertices: Vec<Vec<f64>>) -> Result<Self> {
        let n = vertices.first().map(Vec::len).ok_or_else(|| Error::Degenerate("no vertices".into()))?;
        if vertices.iter().any(|v| v.len() != n) {
            return Err(Error::Dimension("vertices of mixed dimension".into()));
        }
        if vertices.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::Degenerate("non-finite coordinate".into()));
        }
        let dim = match geometry {
            Geometry::Spherical => n.checked_sub(1).ok_or_else(|| Error::Dimension("empty vectors".into()))?,
            _ => n,
        };
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::Dimension(format!(
                "curved polytopes are supported for 1 ≤ d ≤ {MAX_DIM}, got d = {dim}"
            )));
        }
        let mut ideal = vec![false; vertices.len()];
        let (chart_points, frame) = match geometry {
            Geometry::Spherical => {
                for v in &vertices {
                    if (linalg::norm(v) - 1.0).abs() > UNIT_TOL {
                        return Err(Error::Degenerate(format!("{v:?} is not a unit vector")));
                    }
                }
                let refs: Vec<&[f64]> = vertices.iter().map(Vec::as_slice).collect();
                let mean = linalg::centroid(&refs);
                if linalg::norm(&mean) < 1e-9 {
                    return Err(Error::Degenerate("vertices are balanced about the origin; no hemisphere".into()));
                }
                let c = linalg::normalize(&mean);
                if vertices.iter().any(|v| linalg::dot(v, &c) <= 1e-9) {
                    return Err(Error::Degenerate("vertices do not lie in an open hemisphere".into()));
                }
                let rest = linalg::orth_complement(std::slice::from_ref(&c), n);
                let pts = vertices
                    .iter()
                    .map(|v| {
                        let h = linalg::dot(v, &c);
                        rest.iter().map(|e| linalg::dot(v, e) / h).collect()
                    })
                    .collect();
                let mut frame = vec![c];
                frame.extend(rest);
                (pts, Some(frame))
            }
            Geometry::Euclidean => (vertices.clone(), None),
            Geometry::Hyperbolic => {
                for (i, v) in vertices.iter().enumerate() {
                    let r = linalg::norm(v);
                    if r > 1.0 + UNIT_TOL {
                        return Err(Error::Degenerate(format!("{v:?} lies outside the Klein ball")));
                    }
                    ideal[i] = r > 1.0 - UNIT_TOL;
                }
                (vertices.clone(), None)
            }
        };
        let chart = VPolytope::from_f64(chart_points)?;
        if chart.dim() != dim || chart.n_vertices() != vertices.len() {
            return Err(Error::Degenerate("vertices are not in convex position".into()));
        }
        Ok(CurvedPolytope {
            geometry,
            dim,
            vertices,
            chart,
            frame,
            ideal,
            label: None,
        })
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = Some(label.to_string());
        self
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    /// The Euclidean chart carrying the face lattice.
    pub fn chart(&self) -> &VPolytope {
        &self.chart
    }

    pub fn f_vector(&self) -> FVector {
        self.chart.lattice().f_vector()
    }

    pub fn is_simplicial(&self) -> bool {
        is_simplicial(self.chart.lattice())
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.dim + 1
    }

    pub fn ideal_vertices(&self) -> usize {
        self.ideal.iter().filter(|&&b| b).count()
    }

    /// A spherical simplex whose vertices are pairwise orthogonal.
    pub fn is_right_angled(&self) -> bool {
        self.geometry == Geometry::Spherical
            && self.is_simplex()
            && (0..self.vertices.len()).all(|i| {
                (0..i).all(|j| linalg::dot(&self.vertices[i], &self.vertices[j]).abs() < 1e-12)
            })
    }

    /// Interior angle at every proper face.
    pub fn face_angles(&self, cfg: &SamplingConfig) -> Result<Vec<FaceAngle>> {
        let l = self.chart.lattice();
        let d = self.dim as isize;
        let cone = match self.geometry {
            Geometry::Spherical if !self.is_right_angled() => Some(self.cone()?),
            _ => None,
        };
        let mut out = Vec::new();
        for k in 0..d {
            for id in l.ids(k) {
                let vertices = l.face(id).vertices.clone();
                let angle = self.angle_at(id, &vertices, cone.as_ref(), cfg)?;
                out.push(FaceAngle { id, vertices, angle });
            }
        }
        Ok(out)
    }

    fn angle_at(
        &self,
        id: FaceId,
        vertices: &[usize],
        cone: Option<&VPolytope>,
        cfg: &SamplingConfig,
    ) -> Result<AngleEstimate> {
        let codim = self.dim as i32 - id.dim as i32;
        let exact = |v: Scalar| AngleEstimate {
            value: v,
            stderr: 0.0,
            method: AngleMethod::Exact,
        };
        if codim == 1 {
            return Ok(exact(Scalar::ratio(1, 2)));
        }
        match self.geometry {
            Geometry::Euclidean => angles::interior_angle(&self.chart, id, cfg),
            Geometry::Spherical => match cone {
                None => Ok(exact(Scalar::ratio(1, 1 << codim))),
                Some(q) => {
                    let mut qs: Vec<usize> = vertices.iter().map(|v| v + 1).collect();
                    qs.push(0);
                    let qid = q
                        .lattice()
                        .find(&qs)
                        .ok_or_else(|| Error::Degenerate("cone face not found".into()))?;
                    angles::interior_angle(q, qid, cfg)
                }
            },
            Geometry::Hyperbolic => {
                if vertices.len() == 1 && self.ideal[vertices[0]] {
                    return Ok(exact(Scalar::zero()));
                }
                let pts: Vec<&[f64]> = vertices.iter().map(|&v| self.vertices[v].as_slice()).collect();
                let moved = boost_to_origin(&self.vertices, &linalg::centroid(&pts));
                let q = VPolytope::from_f64(moved)?;
                let qid = q
                    .lattice()
                    .find(vertices)
                    .ok_or_else(|| Error::Degenerate("face lost under the boost".into()))?;
                angles::interior_angle(&q, qid, cfg)
            }
        }
    }

    // conv(0, w_i) with w_i on the tangent hyperplane at the cone axis
    fn cone(&self) -> Result<VPolytope> {
        let c = &self.frame.as_ref().expect("spherical frame")[0];
        let mut pts = vec![vec![0.0; self.dim + 1]];
        pts.extend(self.vertices.iter().map(|v| linalg::scale(v, 1.0 / linalg::dot(v, c))));
        VPolytope::from_f64(pts)
    }

    /// `vol(P) / vol(S^d)` by Gauss quadrature over a triangulated chart.
    pub fn volume_quadrature(&self) -> Result<f64> {
        let d = self.dim;
        let density: Box<dyn Fn(&[f64]) -> f64> = match self.geometry {
            Geometry::Euclidean => return Ok(0.0),
            Geometry::Spherical => Box::new(move |y: &[f64]| (1.0 + linalg::dot(y, y)).powf(-(d as f64 + 1.0) / 2.0)),
            Geometry::Hyperbolic => {
                if self.ideal_vertices() > 0 {
                    return Err(Error::Degenerate("volume quadrature needs finite vertices".into()));
                }
                Box::new(move |x: &[f64]| (1.0 - linalg::dot(x, x)).powf(-(d as f64 + 1.0) / 2.0))
            }
        };
        let rule = gauss_legendre_unit(QUAD_NODES);
        let total: f64 = triangulate(&self.chart)
            .iter()
            .map(|s| integrate_simplex(s, &rule, &*density))
            .sum();
        Ok(total / sphere_volume(d))
    }

    /// Seeded Monte Carlo estimate of `vol(P) / vol(S^d)` with its standard error.
    pub fn volume_monte_carlo(&self, samples: u64, seed: u64) -> Result<(f64, f64)> {
        let d = self.dim;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match self.geometry {
            Geometry::Euclidean => Ok((0.0, 0.0)),
            Geometry::Spherical => {
                let frame = self.frame.as_ref().expect("spherical frame");
                let mut hits = 0u64;
                for _ in 0..samples {
                    let x = gaussian_vec(&mut rng, d + 1);
                    let h = linalg::dot(&x, &frame[0]);
                    if h <= 0.0 {
                        continue;
                    }
                    let y: Vec<f64> = frame[1..].iter().map(|e| linalg::dot(&x, e) / h).collect();
                    if self.chart.contains_strictly(&y, 0.0) {
                        hits += 1;
                    }
                }
                let p = hits as f64 / samples as f64;
                Ok((p, (p * (1.0 - p) / samples as f64).sqrt()))
            }
            Geometry::Hyperbolic => {
                if self.ideal_vertices() > 0 {
                    return Err(Error::Degenerate("Monte Carlo volume needs finite vertices".into()));
                }
                let (lo, hi) = bounding_box(self.chart.vertices());
                let boxvol: f64 = lo.iter().zip(&hi).map(|(a, b)| b - a).product();
                let (mut s1, mut s2) = (0.0, 0.0);
                for _ in 0..samples {
                    let x: Vec<f64> = lo.iter().zip(&hi).map(|(a, b)| rng.gen_range(*a..*b)).collect();
                    if self.chart.contains_strictly(&x, 0.0) {
                        let w = (1.0 - linalg::dot(&x, &x)).powf(-(d as f64 + 1.0) / 2.0);
                        s1 += w;
                        s2 += w * w;
                    }
                }
                let n = samples as f64;
                let mean = s1 / n;
                let var = (s2 / n - mean * mean).max(0.0);
                let norm = boxvol / sphere_volume(d);
                Ok((mean * norm, (var / n).sqrt() * norm))
            }
        }
    }

    /// Normalized volume from the angle sums where a closed form exists.
    fn normalized_volume(&self, alpha0: &Scalar) -> Result<Scalar> {
        let n = self.vertices.len() as i64;
        match (self.geometry, self.dim) {
            (Geometry::Euclidean, _) => Ok(Scalar::zero()),
            (Geometry::Spherical, _) if self.is_right_angled() => {
                Ok(Scalar::ratio(1, 1 << (self.dim + 1)))
            }
            (Geometry::Spherical, 1) => {
                let c = linalg::dot(&self.vertices[0], &self.vertices[1]).clamp(-1.0, 1.0);
                Ok(Scalar::float(c.acos() / (2.0 * PI)))
            }
            (Geometry::Hyperbolic, 1) => {
                if self.ideal_vertices() > 0 {
                    return Err(Error::Degenerate("a segment with an ideal endpoint has infinite length".into()));
                }
                let (a, b) = (&self.vertices[0], &self.vertices[1]);
                let ch = (1.0 - linalg::dot(a, b))
                    / ((1.0 - linalg::dot(a, a)) * (1.0 - linalg::dot(b, b))).sqrt();
                Ok(Scalar::float(ch.max(1.0).acosh() / (2.0 * PI)))
            }
            // Girard and its hyperbolic counterpart, in normalized units
            (Geometry::Spherical, 2) => Ok(alpha0 * &Scalar::ratio(1, 2) - Scalar::ratio(n - 2, 4)),
            (Geometry::Hyperbolic, 2) => Ok(Scalar::ratio(n - 2, 4) - alpha0 * &Scalar::ratio(1, 2)),
            _ => Ok(Scalar::float(self.volume_quadrature()?)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FaceAngle {
    pub id: FaceId,
    pub vertices: Vec<usize>,
    pub angle: AngleEstimate,
}

/// Lorentz boost taking the Klein point `p` to the origin, applied to `points`.
pub fn boost_to_origin(points: &[Vec<f64>], p: &[f64]) -> Vec<Vec<f64>> {
    let r2 = linalg::dot(p, p);
    if r2 < 1e-30 {
        return points.to_vec();
    }
    let g = 1.0 / (1.0 - r2).sqrt();
    points
        .iter()
        .map(|x| {
            // lift (1, x), boost, project back to the chart
            let px = linalg::dot(p, x);
            let t = g * (1.0 - px);
            let coef = (g - 1.0) * px / r2 - g;
            x.iter().zip(p).map(|(xi, pi)| (xi + coef * pi) / t).collect()
        })
        .collect()
}

fn bounding_box(points: &[Vec<f64>]) -> (Vec<f64>, Vec<f64>) {
    let n = points[0].len();
    let lo = (0..n).map(|i| points.iter().map(|p| p[i]).fold(f64::INFINITY, f64::min)).collect();
    let hi = (0..n).map(|i| points.iter().map(|p| p[i]).fold(f64::NEG_INFINITY, f64::max)).collect();
    (lo, hi)
}

/// Gauss-Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre_unit(n: usize) -> Vec<(f64, f64)> {
    let legendre = |x: f64| {
        let (mut p0, mut p1) = (1.0, x);
        for k in 2..=n {
            let k = k as f64;
            let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        (p1, dp)
    };
    (0..n)
        .map(|i| {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre(x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre(x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            ((x + 1.0) / 2.0, w / 2.0)
        })
        .collect()
}

/// Simplices of a barycentric-style subdivision: each face is coned from its
/// centroid over the triangulations of its facets.
fn triangulate(p: &VPolytope) -> Vec<Vec<Vec<f64>>> {
    fn go(p: &VPolytope, id: FaceId) -> Vec<Vec<Vec<f64>>> {
        let l = p.lattice();
        if id.dim == 0 {
            let v = l.face(id).vertices[0];
            return vec![vec![p.vertices()[v].clone()]];
        }
        let apex = p.face_centroid(id);
        l.subfaces(id, id.dim - 1)
            .into_iter()
            .flat_map(|g| go(p, g))
            .map(|mut s| {
                s.push(apex.clone());
                s
            })
            .collect()
    }
    let top = FaceId {
        dim: p.dim() as isize,
        index: 0,
    };
    go(p, top)
}

// Collapsed-coordinate tensor rule on a simplex given by its n + 1 corners.
fn integrate_simplex(s: &[Vec<f64>], rule: &[(f64, f64)], f: &dyn Fn(&[f64]) -> f64) -> f64 {
    let n = s.len() - 1;
    let edges: Vec<Vec<f64>> = s[1..].iter().map(|v| linalg::sub(v, &s[0])).collect();
    let m = DMatrix::from_fn(n, n, |i, j| edges[j][i]);
    let vol = m.determinant().abs();
    let mut total = 0.0;
    let mut idx = vec![0usize; n];
    loop {
        // ξ_k = u_k Π_{j<k} (1 − u_j); the Jacobian is the product of those prefixes
        let mut w = 1.0;
        let mut rem = 1.0;
        let mut jac = 1.0;
        let mut x = s[0].clone();
        for (k, &i) in idx.iter().enumerate() {
            let (u, wu) = rule[i];
            w *= wu;
            jac *= rem;
            for (c, e) in x.iter_mut().zip(&edges[k]) {
                *c += rem * u * e;
            }
            rem *= 1.0 - u;
        }
        total += w * jac * f(&x);
        let mut k = 0;
        loop {
            if k == n {
                return total * vol;
            }
            idx[k] += 1;
            if idx[k] < rule.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Angle sums `α_{−1}, …, α_d` of a polytope in one of the three geometries.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvedAlpha {
    pub geometry: Geometry,
    pub alpha: AlphaVector,
    pub f: FVector,
    pub ideal_vertices: usize,
}

impl CurvedAlpha {
    pub fn dim(&self) -> usize {
        self.alpha.dim()
    }

    /// Normalized volume `α_{−1}`.
    pub fn volume(&self) -> Scalar {
        self.alpha.get(-1)
    }

    /// The α̃-vector, with `α̃_{−1} = ε^{d/2} α_{−1}`.
    pub fn alpha_tilde(&self) -> AlphaVector {
        let mut e = self.alpha.entries().to_vec();
        e[0] = self.geometry.eps_half_power(self.dim()) * self.volume();
        let v = AlphaVector::new(self.dim(), e).expect("same length");
        match self.alpha.stderr() {
            Some(se) => v.with_stderr(se.to_vec()).expect("same length"),
            None => v,
        }
    }

    /// `Σ_{i=0}^{d−1} (−1)^i α_i`.
    pub fn chi_alpha(&self) -> Scalar {
        crate::vectors::angle_char(&self.alpha)
    }

    pub fn is_exact(&self) -> bool {
        self.alpha.is_exact()
    }
}

impl fmt::Display for CurvedAlpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.alpha.entries();
        let inner: Vec<String> = e[1..].iter().map(|x| x.to_string()).collect();
        write!(f, "{} ({} | {}) f = {}", self.geometry, e[0], inner.join(", "), self.f)
    }
}

fn assemble(p: &CurvedPolytope, angles: &[FaceAngle]) -> Result<CurvedAlpha> {
    let d = p.dim;
    let mut sums = vec![Scalar::zero(); d];
    let mut var = vec![0.0; d];
    for a in angles {
        let k = a.id.dim as usize;
        sums[k] += a.angle.value.clone();
        var[k] += a.angle.stderr * a.angle.stderr;
    }
    let vol = p.normalized_volume(&sums[0])?;
    let mut entries = vec![vol];
    entries.extend(sums);
    entries.push(Scalar::one());
    let mut se = vec![0.0];
    if d == 2 && p.geometry != Geometry::Euclidean {
        se[0] = var[0].sqrt() / 2.0;
    }
    se.extend(var.iter().map(|v| v.sqrt()));
    se.push(0.0);
    Ok(CurvedAlpha {
        geometry: p.geometry,
        alpha: AlphaVector::new(d, entries)?.with_stderr(se)?,
        f: p.f_vector(),
        ideal_vertices: p.ideal_vertices(),
    })
}

/// Angle sums and normalized volume of any curved polytope.
pub fn curved_alpha(p: &CurvedPolytope, cfg: &SamplingConfig) -> Result<CurvedAlpha> {
    assemble(p, &p.face_angles(cfg)?)
}

pub fn spherical_alpha(p: &CurvedPolytope, cfg: &SamplingConfig) -> Result<CurvedAlpha> {
    if p.geometry != Geometry::Spherical {
        return Err(Error::Invalid(format!("expected a spherical polytope, got {}", p.geometry)));
    }
    curved_alpha(p, cfg)
}

pub fn hyperbolic_alpha(p: &CurvedPolytope, cfg: &SamplingConfig) -> Result<CurvedAlpha> {
    if p.geometry != Geometry::Hyperbolic {
        return Err(Error::Invalid(format!("expected a hyperbolic polytope, got {}", p.geometry)));
    }
    curved_alpha(p, cfg)
}

/// `Σ_{i=0}^{d} (−1)^i α_i = ε^{d/2}(1 + (−1)^d) α_{−1}`.
pub fn check_generalized_gram(a: &CurvedAlpha, tol: Option<f64>) -> RelationReport {
    let d = a.dim() as isize;
    let lhs: Scalar = (0..=d).map(|i| Scalar::sign_pow(i as i64) * a.alpha.get(i)).sum();
    let coef = a.geometry.gram_coefficient(a.dim());
    let rhs = &coef * &a.volume();
    let se = (0..=d)
        .map(|i| a.alpha.stderr_at(i).powi(2))
        .sum::<f64>()
        .sqrt()
        + coef.to_f64().abs() * a.alpha.stderr_at(-1);
    RelationReport::new(Relation::GeneralizedGram(a.geometry.eps()), lhs, rhs, se, tol)
}

/// `(1 + (−1)^d) 2^{−d−1} = Σ_{k=0}^{d} C(d+1, k)(−1/2)^k`, exactly.
pub fn orthant_identity(d: usize) -> RelationReport {
    let half = Scalar::ratio(-1, 2);
    let mut pow = Scalar::one();
    let mut rhs = Scalar::zero();
    for k in 0..=d as i64 {
        rhs += binom_s(d as i64 + 1, k) * pow.clone();
        pow = pow * half.clone();
    }
    let lhs = Scalar::int(if d % 2 == 0 { 2 } else { 0 }) * Scalar::ratio(1, 1 << (d + 1).min(62));
    RelationReport::new(Relation::GeneralizedGram(1), lhs, rhs, 0.0, None)
}

/// The spherical simplex spanned by the coordinate axes of `R^{d+1}`.
pub fn orthant_simplex(d: usize) -> Result<CurvedPolytope> {
    let vs = (0..=d)
        .map(|i| (0..=d).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    Ok(CurvedPolytope::new(Geometry::Spherical, vs)?.with_label(&format!("orthant-{d}")))
}

/// The spherical triangle with three right angles.
pub fn octant_triangle() -> CurvedPolytope {
    orthant_simplex(2).expect("octant").with_label("octant")
}

/// Klein polygon with all vertices on the circle of radius `r` at the given angles.
pub fn klein_polygon(r: f64, thetas: &[f64]) -> Result<CurvedPolytope> {
    let vs = thetas.iter().map(|t| vec![r * t.cos(), r * t.sin()]).collect();
    CurvedPolytope::new(Geometry::Hyperbolic, vs)
}

pub fn regular_klein_polygon(n: usize, r: f64) -> Result<CurvedPolytope> {
    let t: Vec<f64> = (0..n).map(|i| 2.0 * PI * i as f64 / n as f64).collect();
    klein_polygon(r, &t)
}

pub fn ideal_triangle() -> CurvedPolytope {
    regular_klein_polygon(3, 1.0).expect("ideal triangle").with_label("ideal-triangle")
}

/// Named curved fixtures.
pub fn fixture(name: &str) -> Result<CurvedPolytope> {
    match name {
        "octant" => Ok(octant_triangle()),
        "orthant-1" => orthant_simplex(1),
        "orthant-3" => orthant_simplex(3),
        "ideal-triangle" => Ok(ideal_triangle()),
        other => match other.strip_prefix("klein-").map(str::parse::<usize>) {
            Some(Ok(n)) if n >= 3 => Ok(regular_klein_polygon(n, 0.5)?.with_label(other)),
            _ => Err(Error::Invalid(format!(
                "unknown curved fixture {other:?}; known: octant, orthant-1, orthant-3, ideal-triangle, klein-N"
            ))),
        },
    }
}

pub const FIXTURES: &[&str] = &["octant", "orthant-1", "orthant-3", "ideal-triangle", "klein-5"];

/// Perles residual with the `α_k` terms of both sides cancelled first, so
/// that the residual is exact whenever the surviving entries are.
pub fn check_curved_perles(a: &CurvedAlpha, k: isize, tol: Option<f64>) -> Result<RelationReport> {
    let d = a.dim();
    if k < -1 || k > d as isize - 1 {
        return Err(Error::Invalid(format!("k = {k} outside −1..{}", d as isize - 1)));
    }
    let sd = Scalar::sign_pow(d as i64);
    let coeffs = operator_coeffs(d, k);
    let lhs: Scalar = coeffs.iter().map(|(j, c)| c * &a.alpha.get(*j)).sum();
    let rhs = &sd * &(a.alpha.get(k) - Scalar::int(a.f.get(k)));
    let mut residual = &sd * &Scalar::int(a.f.get(k));
    let mut se2 = 0.0;
    for (j, c) in coeffs {
        let c = if j == k { c - sd.clone() } else { c };
        if !c.is_zero() {
            se2 += (c.to_f64() * a.alpha.stderr_at(j)).powi(2);
            residual += c * a.alpha.get(j);
        }
    }
    Ok(RelationReport::with_residual(Relation::Perles(k), lhs, rhs, residual, se2.sqrt(), tol))
}

/// `Σ_{j=k}^{d−1} (−1)^j C(j+1, k+1) α_j = (−1)^d (α_k − f_k)` on a simplicial
/// spherical polytope, `−1 ≤ k ≤ d−1`.
pub fn spherical_perles_check(
    p: &CurvedPolytope,
    k: isize,
    cfg: &SamplingConfig,
    tol: Option<f64>,
) -> Result<RelationReport> {
    if !p.is_simplicial() {
        return Err(Error::Invalid("Perles relations need a simplicial polytope".into()));
    }
    check_curved_perles(&spherical_alpha(p, cfg)?, k, tol)
}

/// One entry of the hyperbolic case suite.
#[derive(Clone, Debug)]
pub struct PerlesCase {
    pub name: String,
    pub report: RelationReport,
    /// Numerical evidence for the open conjecture rather than a proven case.
    pub evidence_only: bool,
}

impl PerlesCase {
    fn new(name: impl Into<String>, report: RelationReport, evidence_only: bool) -> Self {
        PerlesCase {
            name: name.into(),
            report,
            evidence_only,
        }
    }
}

fn random_klein_points(rng: &mut ChaCha8Rng, d: usize, n: usize, rmax: f64) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| {
            let u = linalg::normalize(&gaussian_vec(rng, d));
            let r = rmax * rng.gen::<f64>().powf(1.0 / d as f64).max(0.05);
            linalg::scale(&u, r)
        })
        .collect()
}

/// A random Klein polytope with `n` vertices, all in convex position.
pub fn random_klein_polytope(d: usize, n: usize, rmax: f64, rng: &mut ChaCha8Rng) -> CurvedPolytope {
    loop {
        let pts = random_klein_points(rng, d, n, rmax);
        if let Ok(p) = CurvedPolytope::new(Geometry::Hyperbolic, pts) {
            if p.is_simplicial() {
                return p;
            }
        }
    }
}

/// The hyperbolic Perles case suite: proven low-dimensional cases, evidence
/// for the conjecture on random simplicial 3-polytopes, and the pyramid
/// decomposition identities.
pub fn hyperbolic_perles_cases(seed: u64, cfg: &SamplingConfig) -> Result<Vec<PerlesCase>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let tol = Some(1e-9);

    let seg = CurvedPolytope::new(Geometry::Hyperbolic, vec![vec![-0.3], vec![0.6]])?;
    out.push(PerlesCase::new("segment", check_curved_perles(&hyperbolic_alpha(&seg, cfg)?, 0, None)?, false));

    for n in 3..=8 {
        let r = rng.gen_range(0.1..0.95);
        let mut t: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
        t.sort_by(f64::total_cmp);
        let p = klein_polygon(r, &t)?;
        let a = hyperbolic_alpha(&p, cfg)?;
        for k in 0..=1 {
            out.push(PerlesCase::new(format!("{n}-gon"), check_curved_perles(&a, k, None)?, false));
        }
    }
    let a = hyperbolic_alpha(&ideal_triangle(), cfg)?;
    for k in 0..=1 {
        out.push(PerlesCase::new("ideal triangle", check_curved_perles(&a, k, None)?, false));
    }

    for t in 0..4 {
        let p = random_klein_polytope(3, 4, 0.9, &mut rng);
        let a = hyperbolic_alpha(&p, cfg)?;
        for k in 0..=2 {
            out.push(PerlesCase::new(format!("simplex {t}"), check_curved_perles(&a, k, tol)?, false));
        }
    }

    for t in 0..3 {
        let n = rng.gen_range(6..=9);
        let p = random_klein_polytope(3, n, 0.85, &mut rng);
        let a = hyperbolic_alpha(&p, cfg)?;
        let name = format!("polytope {t} ({n} vertices)");
        out.push(PerlesCase::new(&name, check_curved_perles(&a, 0, tol)?, true));
        for k in 1..=2 {
            out.push(PerlesCase::new(&name, check_curved_perles(&a, k, tol)?, false));
        }
        for r in pyramid_identities(&p, cfg)? {
            out.push(PerlesCase::new(format!("{name} pyramids"), r, false));
        }
    }
    Ok(out)
}

/// Checks the pyramid decomposition identities for `P = ∪ conv(o, F_i)` over
/// the facets `F_i`, with `o` the centroid of the Klein chart.
pub fn pyramid_identities(p: &CurvedPolytope, cfg: &SamplingConfig) -> Result<Vec<RelationReport>> {
    let d = p.dim;
    let l = p.chart.lattice();
    let o = p.chart.centroid();
    let whole = curved_alpha(p, cfg)?;
    let m = l.faces(d as isize - 1).len() as i64;
    let mut alpha_sum = vec![Scalar::zero(); d + 1];
    let mut f_sum = vec![0i64; d + 2];
    for facet in l.faces(d as isize - 1) {
        let mut vs: Vec<Vec<f64>> = facet.vertices.iter().map(|&v| p.vertices[v].clone()).collect();
        vs.push(o.clone());
        let piece = CurvedPolytope::new(p.geometry, vs)?;
        let a = curved_alpha(&piece, cfg)?;
        for j in 0..=d {
            alpha_sum[j] += a.alpha.get(j as isize);
        }
        for (j, x) in a.f.entries().iter().enumerate() {
            f_sum[j] += x;
        }
    }
    let mut out = Vec::new();
    for j in 0..d as isize {
        let rhs = alpha_sum[j as usize].clone() - Scalar::int(whole.f.get(j - 1));
        let lhs = whole.alpha.get(j);
        out.push(RelationReport::new(Relation::PyramidAngles(j), lhs, rhs, 0.0, Some(1e-9)));
    }
    for j in -1..=d as isize {
        let rhs = (binom_s(d as i64, j as i64) + binom_s(d as i64, j as i64 + 1)) * Scalar::int(m);
        let lhs = Scalar::int(f_sum[(j + 1) as usize]);
        out.push(RelationReport::new(Relation::PyramidFaces(j), lhs, rhs, 0.0, None));
    }
    Ok(out)
}

/// The spherical simplex with the given interior dihedral angles (radians):
/// `theta[i][j]` is the angle between the facets opposite vertices `i`, `j`.
pub fn spherical_simplex_from_dihedrals(theta: &[Vec<f64>]) -> Result<CurvedPolytope> {
    let n = theta.len();
    if !(3..=MAX_DIM + 2).contains(&n) || theta.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("need a square matrix of size 3..=5".into()));
    }
    let g = DMatrix::from_fn(n, n, |i, j| if i == j { 1.0 } else { -theta[i][j].cos() });
    let chol = g
        .cholesky()
        .ok_or_else(|| Error::Realization("dihedral angles give no spherical simplex".into()))?;
    let normals = chol.l();
    let inv = normals
        .try_inverse()
        .ok_or_else(|| Error::Realization("singular normal frame".into()))?;
    let vs = (0..n)
        .map(|i| {
            let col: DVector<f64> = -inv.column(i);
            let v: Vec<f64> = col.iter().copied().collect();
            linalg::normalize(&v)
        })
        .collect();
    CurvedPolytope::new(Geometry::Spherical, vs)
}

/// Result of a Schläfli finite-difference check on a spherical simplex.
#[derive(Clone, Debug, Serialize)]
pub struct SchlafliReport {
    pub dim: usize,
    /// The facet pair whose dihedral angle is varied.
    pub facets: (usize, usize),
    pub step: f64,
    /// `Δα_{−1} / Δα(F)` at step `h` and `h/2`.
    pub fd: f64,
    pub fd_half: f64,
    pub extrapolated: f64,
    pub calibration: f64,
    /// `c · ε · α_{−1}(F)`.
    pub expected: f64,
    pub relative_error: f64,
    /// `(k, Δα_k / Δα(F), α_k(F))`.
    pub angle_sums: Vec<(usize, f64, f64)>,
    pub tolerance: f64,
    pub pass: bool,
}

/// Dihedral matrix of the orthant simplex with `n` facets.
pub fn right_angles(n: usize) -> Vec<Vec<f64>> {
    vec![vec![PI / 2.0; n]; n]
}

fn perturbed_alpha(theta: &[Vec<f64>], (i, j): (usize, usize), h: f64, cfg: &SamplingConfig) -> Result<Vec<f64>> {
    let mut t = theta.to_vec();
    t[i][j] += h;
    t[j][i] += h;
    let a = spherical_alpha(&spherical_simplex_from_dihedrals(&t)?, cfg)?;
    Ok(a.alpha.entries().iter().map(Scalar::to_f64).collect())
}

/// Normalized volume of the face opposite facets `i`, `j` in its own sphere.
fn codim2_face_volume(p: &CurvedPolytope, (i, j): (usize, usize)) -> f64 {
    let rest: Vec<&Vec<f64>> = (0..p.vertices.len()).filter(|&v| v != i && v != j).map(|v| &p.vertices[v]).collect();
    match rest.len() {
        // a point of S^0, normalized against vol(S^0) = 2
        1 => 0.5,
        2 => linalg::dot(rest[0], rest[1]).clamp(-1.0, 1.0).acos() / (2.0 * PI),
        _ => f64::NAN,
    }
}

/// Central differences of the normalized volume and angle sums of a spherical
/// simplex against one normalized dihedral angle.
pub fn schlafli_fd(
    theta: &[Vec<f64>],
    facets: (usize, usize),
    h: f64,
    calibration: f64,
    cfg: &SamplingConfig,
) -> Result<SchlafliReport> {
    let n = theta.len();
    let d = n.saturating_sub(1);
    if !(2..=3).contains(&d) || facets.0 == facets.1 || facets.0 >= n || facets.1 >= n {
        return Err(Error::Invalid("need a 2- or 3-simplex and two distinct facets".into()));
    }
    let base = spherical_simplex_from_dihedrals(theta)?;
    let diff = |h: f64| -> Result<Vec<f64>> {
        let up = perturbed_alpha(theta, facets, h, cfg)?;
        let dn = perturbed_alpha(theta, facets, -h, cfg)?;
        let dalpha = 2.0 * h / (2.0 * PI);
        Ok(up.iter().zip(&dn).map(|(a, b)| (a - b) / dalpha).collect())
    };
    let full = diff(h)?;
    let half = diff(h / 2.0)?;
    let (fd, fd_half) = (full[0], half[0]);
    let tolerance = 1e-3;
    // the Richardson estimate of the truncation error in fd(h)
    if 4.0 * (fd - fd_half).abs() / 3.0 > tolerance * fd.abs().max(1e-12) {
        return Err(Error::Invalid(format!(
            "step {h} too large: differences {fd} and {fd_half} disagree"
        )));
    }
    let extrapolated = (4.0 * fd_half - fd) / 3.0;
    let expected = calibration * codim2_face_volume(&base, facets);
    let relative_error = (fd - expected).abs() / expected.abs();
    let face_dim = d - 2;
    let angle_sums = (0..d)
        .map(|k| (k, full[k + 1], if k <= face_dim { 1.0 } else { 0.0 }))
        .collect::<Vec<_>>();
    let sums_ok = angle_sums.iter().all(|(_, x, y)| (x - y).abs() <= tolerance);
    Ok(SchlafliReport {
        dim: d,
        facets,
        step: h,
        fd,
        fd_half,
        extrapolated,
        calibration,
        expected,
        relative_error,
        angle_sums,
        tolerance,
        pass: relative_error <= tolerance && sums_ok,
    })
}

/// Dihedral angles of the generic triangle used for calibration.
pub fn calibration_triangle() -> Vec<Vec<f64>> {
    let deg = PI / 180.0;
    let mut t = right_angles(3);
    for (i, j, a) in [(0, 1, 100.0), (0, 2, 75.0), (1, 2, 60.0)] {
        t[i][j] = a * deg;
        t[j][i] = a * deg;
    }
    t
}

/// The constant `c` in `∂α_{−1}/∂α(F) = c ε α_{−1}(F)`, from central
/// differences on a generic spherical triangle against Girard's formula.
pub fn schlafli_calibration(cfg: &SamplingConfig) -> Result<f64> {
    let t = calibration_triangle();
    let r = schlafli_fd(&t, (0, 1), 1e-3, 1.0, cfg)?;
    Ok(r.fd / codim2_face_volume(&spherical_simplex_from_dihedrals(&t)?, (0, 1)))
}

/// Calibrates on `d = 2`, then checks an edge of the orthant 3-simplex.
pub fn schlafli_orthant(h: f64, cfg: &SamplingConfig) -> Result<(f64, SchlafliReport)> {
    let c = schlafli_calibration(cfg)?;
    Ok((c, schlafli_fd(&right_angles(4), (0, 1), h, c, cfg)?))
}

/// A 2-dimensional complex of curved polygons sharing edges.
#[derive(Clone, Debug)]
pub struct CurvedComplex {
    pub geometry: Geometry,
    pub polygons: Vec<CurvedPolytope>,
}

impl CurvedComplex {
    pub fn new(polygons: Vec<CurvedPolytope>) -> Result<Self> {
        let first = polygons.first().ok_or_else(|| Error::Invalid("empty complex".into()))?;
        let geometry = first.geometry;
        if polygons.iter().any(|p| p.geometry != geometry || p.dim != 2) {
            return Err(Error::Dimension("a curved complex needs polygons of one geometry".into()));
        }
        Ok(CurvedComplex { geometry, polygons })
    }
}

#[derive(Clone, Debug)]
struct ComplexData {
    // face (global vertex ids) → (dimension, summed angle, number of cells)
    faces: BTreeMap<Vec<usize>, (usize, Scalar, usize)>,
    volume: Scalar,
}

impl ComplexData {
    fn boundary(&self) -> impl Iterator<Item = (&Vec<usize>, &(usize, Scalar, usize))> {
        let bedges: BTreeSet<usize> = self
            .faces
            .iter()
            .filter(|(_, (d, _, n))| *d == 1 && *n == 1)
            .flat_map(|(vs, _)| vs.clone())
            .collect();
        self.faces.iter().filter(move |(vs, (d, _, n))| match d {
            1 => *n == 1,
            _ => bedges.contains(&vs[0]),
        })
    }

    fn chars(&self) -> Chars {
        let mut chi = 0;
        let mut ca = Scalar::zero();
        for (_, (d, a, _)) in self.boundary() {
            let s = if *d == 0 { 1 } else { -1 };
            chi += s;
            ca += Scalar::int(s) * a.clone();
        }
        Chars {
            chi_boundary: chi,
            chi_alpha: ca,
        }
    }
}

fn vertex_id(table: &mut Vec<Vec<f64>>, v: &[f64]) -> usize {
    if let Some(i) = table.iter().position(|w| linalg::norm(&linalg::sub(w, v)) < 1e-9) {
        return i;
    }
    table.push(v.to_vec());
    table.len() - 1
}

fn complex_data(polys: &[&CurvedPolytope], table: &mut Vec<Vec<f64>>, cfg: &SamplingConfig) -> Result<ComplexData> {
    let mut faces: BTreeMap<Vec<usize>, (usize, Scalar, usize)> = BTreeMap::new();
    let mut volume = Scalar::zero();
    for p in polys {
        let ids: Vec<usize> = p.vertices.iter().map(|v| vertex_id(table, v)).collect();
        let angles = p.face_angles(cfg)?;
        let mut a0 = Scalar::zero();
        for fa in &angles {
            let mut key: Vec<usize> = fa.vertices.iter().map(|&v| ids[v]).collect();
            key.sort_unstable();
            let e = faces.entry(key).or_insert((fa.id.dim as usize, Scalar::zero(), 0));
            e.1 += fa.angle.value.clone();
            e.2 += 1;
            if fa.id.dim == 0 {
                a0 += fa.angle.value.clone();
            }
        }
        volume += p.normalized_volume(&a0)?;
    }
    Ok(ComplexData { faces, volume })
}

/// Outcome of gluing two curved complexes.
#[derive(Clone, Debug)]
pub struct CurvedGluing {
    pub classification: Classification,
    /// Computed `χ_α(C)` against the gluing proposition with the volume term.
    pub report: RelationReport,
    /// For a single ball, the generalized Gram relation on `C` itself.
    pub gram_on_union: Option<RelationReport>,
    pub volume: Scalar,
}

/// Glues two curved 2-complexes along their common faces and compares the
/// angle characteristic of the union with the prediction from the parts.
pub fn curved_glue_check(
    a: &CurvedComplex,
    b: &CurvedComplex,
    expected: Option<&Classification>,
    cfg: &SamplingConfig,
    tol: Option<f64>,
) -> Result<CurvedGluing> {
    if a.geometry != b.geometry {
        return Err(Error::Invalid("cannot glue complexes of different geometries".into()));
    }
    let d = 2;
    let g = a.geometry;
    let mut table = Vec::new();
    let pa: Vec<&CurvedPolytope> = a.polygons.iter().collect();
    let pb: Vec<&CurvedPolytope> = b.polygons.iter().collect();
    let da = complex_data(&pa, &mut table, cfg)?;
    let db = complex_data(&pb, &mut table, cfg)?;
    let all: Vec<&CurvedPolytope> = pa.iter().chain(&pb).copied().collect();
    let dc = complex_data(&all, &mut table, cfg)?;

    let gram_side = |x: &ComplexData| -> Scalar { Scalar::sign_pow(d as i64 - 1) + g.gram_coefficient(d) * x.volume.clone() };
    let tol_of = |x: &Scalar| if x.is_exact() { None } else { Some(tol.unwrap_or(1e-9)) };
    for (name, x) in [("A", &da), ("B", &db)] {
        let ca = x.chars().chi_alpha;
        let r = RelationReport::new(Relation::GeneralizedGram(g.eps()), ca.clone(), gram_side(x), 0.0, tol_of(&ca));
        if !r.pass {
            return Err(Error::Invalid(format!("part {name} does not satisfy the Gram relation: {r}")));
        }
    }

    let bd_a: BTreeSet<&Vec<usize>> = da.boundary().map(|(k, _)| k).collect();
    let bd_b: BTreeSet<&Vec<usize>> = db.boundary().map(|(k, _)| k).collect();
    let bd_c: BTreeSet<&Vec<usize>> = dc.boundary().map(|(k, _)| k).collect();
    let mut k = FaceComplex::new();
    let mut interior = BTreeSet::new();
    for f in bd_a.intersection(&bd_b) {
        k.insert((*f).clone(), dc.faces[*f].0);
        if !bd_c.contains(*f) {
            interior.insert((*f).clone());
        }
    }
    if k.is_empty() {
        return Err(Error::Gluing("the parts do not meet".into()));
    }
    let classification = classify(&k, d, &interior);
    if let Some(e) = expected {
        if e != &classification {
            return Err(Error::Gluing(format!(
                "expected {}, found {}",
                e.name(),
                classification.name()
            )));
        }
    }
    let (ca, cb, cc) = (da.chars(), db.chars(), dc.chars());
    let pred = predict(&ca, &cb, &classification, d)?;
    // replace χ_α of each part by its Gram value so the volume term appears
    let rhs = pred.chi_alpha.clone() - ca.chi_alpha.clone() - cb.chi_alpha.clone() + gram_side(&da) + gram_side(&db);
    let lhs = cc.chi_alpha.clone();
    let t = if lhs.is_exact() && rhs.is_exact() { None } else { Some(tol.unwrap_or(1e-9)) };
    let report = RelationReport::new(Relation::Gluing, lhs.clone(), rhs, 0.0, t);
    let gram_on_union = matches!(classification, Classification::Balls(1)).then(|| {
        RelationReport::new(Relation::GeneralizedGram(g.eps()), lhs.clone(), gram_side(&dc), 0.0, t)
    });
    Ok(CurvedGluing {
        classification,
        report,
        gram_on_union,
        volume: dc.volume,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SamplingConfig {
        SamplingConfig::default()
    }

    fn close(a: &Scalar, b: f64, tol: f64) -> bool {
        (a.to_f64() - b).abs() < tol
    }

    #[test]
    fn octant_is_exact() {
        let a = spherical_alpha(&octant_triangle(), &cfg()).unwrap();
        assert_eq!(
            a.alpha.entries(),
            &[Scalar::ratio(1, 8), Scalar::ratio(3, 4), Scalar::ratio(3, 2), Scalar::one()]
        );
        let g = check_generalized_gram(&a, None);
        assert!(g.pass && g.residual.is_exact(), "{g}");
        let s = check_curved_perles(&a, -1, None).unwrap();
        assert!(s.pass && s.residual.is_zero());
    }

    #[test]
    fn octant_generic_path_agrees() {
        // force the cone computation on a rotated octant
        let s = 0.5f64.sqrt();
        let rot = vec![vec![s, s, 0.0], vec![-0.5, 0.5, s], vec![0.5, -0.5, s]];
        let p = CurvedPolytope::new(Geometry::Spherical, rot).unwrap();
        let cone = p.cone().unwrap();
        let a = assemble(&p, &{
            let l = p.chart.lattice();
            let mut v = Vec::new();
            for k in 0..2 {
                for id in l.ids(k) {
                    let vs = l.face(id).vertices.clone();
                    let angle = p.angle_at(id, &vs, Some(&cone), &cfg()).unwrap();
                    v.push(FaceAngle { id, vertices: vs, angle });
                }
            }
            v
        })
        .unwrap();
        assert!(close(&a.alpha.get(0), 0.75, 1e-12));
        assert!(close(&a.alpha.get(-1), 0.125, 1e-12));
    }

    #[test]
    fn orthant_simplices() {
        for d in 1..=3 {
            let a = spherical_alpha(&orthant_simplex(d).unwrap(), &cfg()).unwrap();
            for i in 0..d {
                let want = binom_s(d as i64 + 1, i as i64 + 1) * Scalar::ratio(1, 1 << (d - i));
                assert_eq!(a.alpha.get(i as isize), want, "d = {d}, i = {i}");
            }
            assert_eq!(a.volume(), Scalar::ratio(1, 1 << (d + 1)));
            assert!(check_generalized_gram(&a, None).pass);
        }
        for d in 1..=10 {
            let r = orthant_identity(d);
            assert!(r.pass && r.residual.is_exact(), "{r}");
        }
        assert_eq!(orthant_identity(2).lhs, Scalar::ratio(1, 4));
    }

    #[test]
    fn ideal_triangle_gram() {
        let a = hyperbolic_alpha(&ideal_triangle(), &cfg()).unwrap();
        assert_eq!(a.alpha.get(0), Scalar::zero());
        assert_eq!(a.volume(), Scalar::ratio(1, 4));
        assert_eq!(a.ideal_vertices, 3);
        let g = check_generalized_gram(&a, None);
        assert_eq!(g.lhs, Scalar::ratio(-1, 2));
        assert!(g.pass && g.residual.is_zero());
    }

    #[test]
    fn hyperbolic_angles_are_not_klein_angles() {
        // equilateral Klein triangle of circumradius 1/2: the Euclidean angle is π/3
        let p = regular_klein_polygon(3, 0.5).unwrap();
        let a = hyperbolic_alpha(&p, &cfg()).unwrap();
        let r = 0.5f64;
        let side = {
            let (u, v) = ([r, 0.0], [r * (2.0 * PI / 3.0).cos(), r * (2.0 * PI / 3.0).sin()]);
            let ch = (1.0 - (u[0] * v[0] + u[1] * v[1])) / (1.0 - r * r);
            ch.acosh()
        };
        // equilateral hyperbolic triangle: cos θ = cosh a / (1 + cosh a)
        let theta = (side.cosh() / (1.0 + side.cosh())).acos();
        assert!(close(&a.alpha.get(0), 3.0 * theta / (2.0 * PI), 1e-10));
        assert!(a.alpha.get(0).to_f64() < 0.5);
        assert_eq!(a.alpha.get(1), Scalar::ratio(3, 2));
    }

    #[test]
    fn polygon_volume_matches_quadrature() {
        let p = klein_polygon(0.7, &[0.1, 1.3, 2.9, 4.0, 5.5]).unwrap();
        let a = hyperbolic_alpha(&p, &cfg()).unwrap();
        assert!((a.volume().to_f64() - p.volume_quadrature().unwrap()).abs() < 1e-8);
        let s = 0.6f64;
        let vs = vec![
            linalg::normalize(&[1.0, 0.0, s]),
            linalg::normalize(&[0.0, 1.0, s]),
            linalg::normalize(&[-1.0, -0.3, s]),
            linalg::normalize(&[0.2, -1.0, s]),
        ];
        let sp = CurvedPolytope::new(Geometry::Spherical, vs).unwrap();
        let a = spherical_alpha(&sp, &cfg()).unwrap();
        assert!((a.volume().to_f64() - sp.volume_quadrature().unwrap()).abs() < 1e-8);
        let (mc, se) = sp.volume_monte_carlo(200_000, 3).unwrap();
        assert!((mc - a.volume().to_f64()).abs() < 4.0 * se);
    }

    #[test]
    fn three_dimensional_volumes() {
        let o = orthant_simplex(3).unwrap();
        assert!((o.volume_quadrature().unwrap() - 1.0 / 16.0).abs() < 1e-10);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let h = random_klein_polytope(3, 5, 0.8, &mut rng);
        let q = h.volume_quadrature().unwrap();
        let (mc, se) = h.volume_monte_carlo(200_000, 5).unwrap();
        assert!((mc - q).abs() < 4.0 * se, "{mc} ± {se} vs {q}");
        // Gram in odd dimension carries no volume term
        let a = hyperbolic_alpha(&h, &cfg()).unwrap();
        assert!(check_generalized_gram(&a, None).pass);
    }

    #[test]
    fn segment() {
        let p = CurvedPolytope::new(Geometry::Hyperbolic, vec![vec![-0.5], vec![0.5]]).unwrap();
        let a = hyperbolic_alpha(&p, &cfg()).unwrap();
        assert_eq!(&a.alpha.entries()[1..], &[Scalar::one(), Scalar::one()]);
        assert!(close(&a.volume(), 2.0 * 0.5f64.atanh() / (2.0 * PI), 1e-12));
        assert!(check_generalized_gram(&a, None).pass);
    }

    #[test]
    fn alpha_tilde_signs() {
        let a = hyperbolic_alpha(&ideal_triangle(), &cfg()).unwrap();
        assert_eq!(a.alpha_tilde().get(-1), Scalar::ratio(-1, 4));
        let s = spherical_alpha(&octant_triangle(), &cfg()).unwrap();
        assert_eq!(s.alpha_tilde().get(-1), Scalar::ratio(1, 8));
        assert_eq!(Geometry::Hyperbolic.eps_half_power(4), Scalar::one());
        assert_eq!(Geometry::Hyperbolic.eps_half_power(3), Scalar::zero());
    }

    #[test]
    fn validation() {
        let g = Geometry::Spherical;
        assert!(CurvedPolytope::new(g, vec![vec![1.0, 0.0], vec![-1.0, 0.0]]).is_err());
        assert!(CurvedPolytope::new(g, vec![vec![2.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]]).is_err());
        let h = Geometry::Hyperbolic;
        assert!(CurvedPolytope::new(h, vec![vec![1.5, 0.0], vec![0.0, 0.5], vec![-0.5, -0.5]]).is_err());
        assert!(CurvedPolytope::new(h, vec![vec![0.0; 4]; 5]).is_err());
        assert!("klein".parse::<Geometry>().is_ok());
        assert!(fixture("nope").is_err());
        for n in FIXTURES {
            assert!(fixture(n).is_ok(), "{n}");
        }
    }

    #[test]
    fn shrinking_simplices_go_flat() {
        let dirs = [[1.0, 0.0], [-0.5, 0.8], [-0.4, -0.9]];
        let euclid: Vec<Vec<f64>> = dirs.iter().map(|d| d.to_vec()).collect();
        let e = curved_alpha(&CurvedPolytope::new(Geometry::Euclidean, euclid).unwrap(), &cfg()).unwrap();
        let mut prev = f64::INFINITY;
        for t in [0.5, 0.1, 0.01, 0.001] {
            let sph: Vec<Vec<f64>> = dirs.iter().map(|d| linalg::normalize(&[t * d[0], t * d[1], 1.0])).collect();
            let hyp: Vec<Vec<f64>> = dirs.iter().map(|d| vec![t * d[0], t * d[1]]).collect();
            let s = spherical_alpha(&CurvedPolytope::new(Geometry::Spherical, sph).unwrap(), &cfg()).unwrap();
            let h = hyperbolic_alpha(&CurvedPolytope::new(Geometry::Hyperbolic, hyp).unwrap(), &cfg()).unwrap();
            let gap = (s.alpha.get(0).to_f64() - 0.5).abs() + (h.alpha.get(0).to_f64() - 0.5).abs();
            assert!(gap < prev);
            prev = gap;
            assert!(s.volume().to_f64() > 0.0 && h.volume().to_f64() > 0.0);
        }
        assert!(prev < 1e-5);
        assert!(close(&e.alpha.get(0), 0.5, 1e-12));
    }

    #[test]
    fn dilating_klein_polygons_lose_angle() {
        let t = [0.0, 1.1, 2.5, 3.9, 5.0];
        let mut prev = f64::INFINITY;
        for i in 1..10 {
            let a = hyperbolic_alpha(&klein_polygon(0.1 * i as f64, &t).unwrap(), &cfg()).unwrap();
            let x = a.alpha.get(0).to_f64();
            assert!(x < prev);
            prev = x;
        }
    }

    #[test]
    fn hyperbolic_suite() {
        let cases = hyperbolic_perles_cases(1, &cfg()).unwrap();
        for c in &cases {
            assert!(c.report.pass, "{}: {}", c.name, c.report);
        }
        // polygons pass exactly even though α_0 is a float
        let polys: Vec<_> = cases.iter().filter(|c| c.name.ends_with("gon")).collect();
        assert_eq!(polys.len(), 12);
        assert!(polys.iter().all(|c| c.report.residual.is_zero() && c.report.residual.is_exact()));
        assert!(cases.iter().any(|c| c.evidence_only));
        assert!(cases.iter().any(|c| matches!(c.report.relation, Relation::PyramidAngles(_))));
    }

    #[test]
    fn n_gon_perles_one() {
        let p = regular_klein_polygon(6, 0.4).unwrap();
        let r = check_curved_perles(&hyperbolic_alpha(&p, &cfg()).unwrap(), 1, None).unwrap();
        assert_eq!(r.lhs, Scalar::int(-3));
        assert!(r.pass);
    }

    #[test]
    fn spherical_perles_all_k() {
        let p = orthant_simplex(3).unwrap();
        for k in -1..3 {
            let r = spherical_perles_check(&p, k, &cfg(), None).unwrap();
            assert!(r.pass && r.residual.is_exact(), "{r}");
        }
        let vs = vec![
            linalg::normalize(&[1.0, 0.1, 0.2, 1.0]),
            linalg::normalize(&[-0.3, 1.0, 0.0, 1.2]),
            linalg::normalize(&[-0.5, -0.6, 0.4, 1.0]),
            linalg::normalize(&[0.1, -0.2, -1.0, 0.9]),
        ];
        let p = CurvedPolytope::new(Geometry::Spherical, vs).unwrap();
        for k in -1..3 {
            let r = spherical_perles_check(&p, k, &cfg(), Some(1e-8)).unwrap();
            assert!(r.pass, "{r}");
        }
        let sq = vec![
            linalg::normalize(&[0.3, 0.3, 0.0, 1.0]),
            linalg::normalize(&[-0.3, 0.3, 0.0, 1.0]),
            linalg::normalize(&[-0.3, -0.3, 0.0, 1.0]),
            linalg::normalize(&[0.3, -0.3, 0.0, 1.0]),
            linalg::normalize(&[0.0, 0.0, 0.4, 1.0]),
        ];
        let sq = CurvedPolytope::new(Geometry::Spherical, sq).unwrap();
        assert!(spherical_perles_check(&sq, 0, &cfg(), None).is_err());
    }

    #[test]
    fn dihedral_realization() {
        let p = spherical_simplex_from_dihedrals(&right_angles(4)).unwrap();
        assert!(p.is_right_angled());
        assert!(spherical_simplex_from_dihedrals(&vec![vec![0.1; 3]; 3]).is_err());
    }

    #[test]
    fn schlafli() {
        let c = schlafli_calibration(&cfg()).unwrap();
        assert!((c - 1.0).abs() < 1e-6, "c = {c}");
        let (_, r) = schlafli_orthant(1e-3, &cfg()).unwrap();
        assert!(r.pass, "{r:?}");
        assert!((r.expected - 0.25).abs() < 1e-12);
        let mut t = right_angles(4);
        for (i, j, a) in [(0, 2, 1.2), (1, 3, 1.9), (2, 3, 1.4)] {
            t[i][j] = a;
            t[j][i] = a;
        }
        let fine = schlafli_fd(&t, (0, 1), 1e-3, c, &cfg()).unwrap();
        assert!(fine.pass, "{fine:?}");
        assert!(schlafli_fd(&t, (0, 1), 0.4, c, &cfg()).is_err());
    }

    fn tri(g: Geometry, pts: &[[f64; 2]]) -> CurvedPolytope {
        let vs = pts
            .iter()
            .map(|p| match g {
                Geometry::Spherical => linalg::normalize(&[p[0], p[1], 1.0]),
                _ => p.to_vec(),
            })
            .collect();
        CurvedPolytope::new(g, vs).unwrap()
    }

    #[test]
    fn gluing_triangles() {
        for g in [Geometry::Hyperbolic, Geometry::Spherical, Geometry::Euclidean] {
            let a = CurvedComplex::new(vec![tri(g, &[[0.0, -0.5], [0.5, 0.0], [0.0, 0.5]])]).unwrap();
            let b = CurvedComplex::new(vec![tri(g, &[[0.0, -0.5], [0.0, 0.5], [-0.4, 0.1]])]).unwrap();
            let r = curved_glue_check(&a, &b, Some(&Classification::Balls(1)), &cfg(), None).unwrap();
            assert!(r.report.pass, "{g}: {}", r.report);
            assert!(r.gram_on_union.unwrap().pass);
            assert!(curved_glue_check(&a, &b, Some(&Classification::Balls(2)), &cfg(), None).is_err());
            // meeting at a single vertex
            let c = CurvedComplex::new(vec![tri(g, &[[0.5, 0.0], [0.7, 0.3], [0.9, -0.2]])]).unwrap();
            let r = curved_glue_check(&a, &c, None, &cfg(), None).unwrap();
            assert!(matches!(r.classification, Classification::LowerDim { l: 0, .. }));
            assert!(r.report.pass, "{}", r.report);
        }
    }
}
