//! f-, α-, h- and γ-vectors and the triangular transforms between them.
//!
//! Every vector stores its dimension explicitly. f- and α-vectors keep the
//! end entries at index −1 and d; h- and γ-vectors run over 0..d.

use crate::error::{Error, Result};
use crate::scalar::{binom, binom_s, Scalar};
use std::fmt;

/// Face counts `f_{-1}, ..., f_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FVector {
    dim: usize,
    entries: Vec<i64>,
}

impl FVector {
    /// `entries` runs over indices −1..d.
    pub fn new(dim: usize, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != dim + 2 {
            return Err(Error::Dimension(format!(
                "f-vector of a {dim}-object needs {} entries, got {}",
                dim + 2,
                entries.len()
            )));
        }
        if entries.iter().any(|&x| x < 0) {
            return Err(Error::Invalid("negative face count".into()));
        }
        Ok(FVector { dim, entries })
    }

    /// Polytope f-vector from `f_0..f_{d-1}`; the ends are set to 1.
    pub fn polytope(dim: usize, inner: &[i64]) -> Result<Self> {
        if inner.len() != dim {
            return Err(Error::Dimension(format!(
                "expected {dim} inner face counts, got {}",
                inner.len()
            )));
        }
        let mut e = Vec::with_capacity(dim + 2);
        e.push(1);
        e.extend_from_slice(inner);
        e.push(1);
        FVector::new(dim, e)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `f_i` for `-1 <= i <= d`, zero outside.
    pub fn get(&self, i: isize) -> i64 {
        if i < -1 || i > self.dim as isize {
            0
        } else {
            self.entries[(i + 1) as usize]
        }
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// `f_0..f_{d-1}`.
    pub fn proper(&self) -> &[i64] {
        &self.entries[1..=self.dim]
    }

    pub fn as_scalars(&self) -> Vec<Scalar> {
        self.entries.iter().map(|&x| Scalar::int(x)).collect()
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries[1..].iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Angle sums `α_{-1}, ..., α_d` with optional per-entry standard errors.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaVector {
    dim: usize,
    entries: Vec<Scalar>,
    stderr: Option<Vec<f64>>,
}

impl AlphaVector {
    pub fn new(dim: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != dim + 2 {
            return Err(Error::Dimension(format!(
                "α-vector of a {dim}-object needs {} entries, got {}",
                dim + 2,
                entries.len()
            )));
        }
        Ok(AlphaVector {
            dim,
            entries,
            stderr: None,
        })
    }

    /// Euclidean α-vector from `α_0..α_{d-1}`: `α_{-1} = 0`, `α_d = 1`.
    pub fn euclidean(dim: usize, inner: Vec<Scalar>) -> Result<Self> {
        if inner.len() != dim {
            return Err(Error::Dimension(format!(
                "expected {dim} inner angle sums, got {}",
                inner.len()
            )));
        }
        let mut e = Vec::with_capacity(dim + 2);
        e.push(Scalar::zero());
        e.extend(inner);
        e.push(Scalar::one());
        AlphaVector::new(dim, e)
    }

    pub fn with_stderr(mut self, se: Vec<f64>) -> Result<Self> {
        if se.len() != self.dim + 2 {
            return Err(Error::Dimension("stderr length".into()));
        }
        self.stderr = Some(se);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: isize) -> Scalar {
        if i < -1 || i > self.dim as isize {
            Scalar::zero()
        } else {
            self.entries[(i + 1) as usize].clone()
        }
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn stderr(&self) -> Option<&[f64]> {
        self.stderr.as_deref()
    }

    pub fn stderr_at(&self, i: isize) -> f64 {
        match &self.stderr {
            Some(se) if i >= -1 && i <= self.dim as isize => se[(i + 1) as usize],
            _ => 0.0,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.entries.iter().all(Scalar::is_exact)
    }

    /// `α_0..α_{d-1}`.
    pub fn proper(&self) -> &[Scalar] {
        &self.entries[1..=self.dim]
    }
}

impl fmt::Display for AlphaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries[1..].iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlphaFVector {
    pub alpha: AlphaVector,
    pub f: FVector,
}

impl AlphaFVector {
    pub fn new(alpha: AlphaVector, f: FVector) -> Result<Self> {
        if alpha.dim() != f.dim() {
            return Err(Error::Dimension(format!(
                "α has dimension {}, f has {}",
                alpha.dim(),
                f.dim()
            )));
        }
        Ok(AlphaFVector { alpha, f })
    }

    /// Builds from literal `α_0..α_{d-1}` and `f_0..f_{d-1}` of a Euclidean polytope.
    pub fn euclidean(dim: usize, alpha: Vec<Scalar>, f: &[i64]) -> Result<Self> {
        AlphaFVector::new(AlphaVector::euclidean(dim, alpha)?, FVector::polytope(dim, f)?)
    }

    pub fn dim(&self) -> usize {
        self.f.dim()
    }

    /// The flat coordinate list `(α_0..α_d, f_0..f_d)` used for affine spans.
    pub fn coords(&self) -> Vec<Scalar> {
        let d = self.dim() as isize;
        let mut v: Vec<Scalar> = (0..=d).map(|i| self.alpha.get(i)).collect();
        v.extend((0..=d).map(|i| Scalar::int(self.f.get(i))));
        v
    }
}

impl fmt::Display for AlphaFVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.dim() as isize;
        let a: Vec<String> = (0..=d).map(|i| self.alpha.get(i).to_string()).collect();
        let c: Vec<String> = (0..=d).map(|i| self.f.get(i).to_string()).collect();
        write!(f, "({} | {})", a.join(", "), c.join(", "))
    }
}

/// `h_0..h_d`.
#[derive(Clone, Debug, PartialEq)]
pub struct HVector {
    dim: usize,
    entries: Vec<Scalar>,
}

impl HVector {
    pub fn new(dim: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != dim + 1 {
            return Err(Error::Dimension(format!(
                "h-vector of dimension {dim} needs {} entries, got {}",
                dim + 1,
                entries.len()
            )));
        }
        Ok(HVector { dim, entries })
    }

    pub fn from_ints(dim: usize, entries: &[i64]) -> Result<Self> {
        HVector::new(dim, entries.iter().map(|&x| Scalar::int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: isize) -> Scalar {
        if i < 0 || i > self.dim as isize {
            Scalar::zero()
        } else {
            self.entries[i as usize].clone()
        }
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }
}

/// `γ_0..γ_d`; reads outside the range follow γ_i = 0 (i < 0) and γ_i = 1 (i > d).
#[derive(Clone, Debug, PartialEq)]
pub struct GammaVector {
    dim: usize,
    entries: Vec<Scalar>,
}

impl GammaVector {
    pub fn new(dim: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != dim + 1 {
            return Err(Error::Dimension(format!(
                "γ-vector of dimension {dim} needs {} entries, got {}",
                dim + 1,
                entries.len()
            )));
        }
        Ok(GammaVector { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: isize) -> Scalar {
        if i < 0 {
            Scalar::zero()
        } else if i > self.dim as isize {
            Scalar::one()
        } else {
            self.entries[i as usize].clone()
        }
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }
}

impl fmt::Display for GammaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

// Coefficient (−1)^{i−j} C(d−j, d−i) of the h/γ transforms.
fn tri_coeff(d: i64, i: i64, j: i64) -> Scalar {
    Scalar::sign_pow(i - j) * binom_s(d - j, d - i)
}

pub fn h_from_f(f: &FVector) -> HVector {
    let d = f.dim() as i64;
    let entries = (0..=d)
        .map(|i| {
            (0..=i)
                .map(|j| tri_coeff(d, i, j) * Scalar::int(f.get(j as isize - 1)))
                .sum()
        })
        .collect();
    HVector { dim: d as usize, entries }
}

/// Inverts [`h_from_f`]; entries must come out as integers for a valid h-vector.
pub fn f_from_h(h: &HVector) -> Result<FVector> {
    let d = h.dim() as i64;
    let mut entries = vec![1i64];
    for j in 0..d {
        let s: Scalar = (0..=j + 1)
            .map(|i| binom_s(d - i, d - j - 1) * h.get(i as isize))
            .sum();
        entries.push(scalar_to_count(&s)?);
    }
    entries.push(1);
    FVector::new(d as usize, entries)
}

fn scalar_to_count(s: &Scalar) -> Result<i64> {
    match s.as_rational() {
        Some(r) if r.is_integer() => {
            let n: i64 = num_traits::ToPrimitive::to_i64(r.numer())
                .ok_or_else(|| Error::Invalid("face count overflow".into()))?;
            Ok(n)
        }
        _ => Err(Error::Invalid(format!("non-integral face count {s}"))),
    }
}

pub fn gamma_from_alpha(a: &AlphaVector) -> GammaVector {
    let d = a.dim() as i64;
    let entries = (0..=d)
        .map(|i| {
            (0..=i)
                .map(|j| tri_coeff(d, i, j) * a.get(j as isize - 1))
                .sum()
        })
        .collect();
    GammaVector { dim: d as usize, entries }
}

/// Inverts [`gamma_from_alpha`] by forward substitution (unit lower triangular).
/// `α_d` is set to 1.
pub fn alpha_from_gamma(g: &GammaVector) -> AlphaVector {
    let d = g.dim() as i64;
    // a[j] holds α_{j-1}
    let mut a: Vec<Scalar> = Vec::with_capacity(d as usize + 2);
    for i in 0..=d {
        let mut s = g.get(i as isize);
        for (j, aj) in a.iter().enumerate() {
            s -= tri_coeff(d, i, j as i64) * aj;
        }
        a.push(s);
    }
    a.push(Scalar::one());
    AlphaVector {
        dim: d as usize,
        entries: a,
        stderr: None,
    }
}

/// `Σ_{i=0}^{top} (−1)^i f_i`.
pub fn euler_char(f: &FVector, top: usize) -> Scalar {
    Scalar::int(euler_char_int(f, top))
}

pub fn euler_char_int(f: &FVector, top: usize) -> i64 {
    (0..=top as isize)
        .map(|i| if i % 2 == 0 { f.get(i) } else { -f.get(i) })
        .sum()
}

/// `χ_α = Σ_{i=0}^{d-1} (−1)^i α_i`.
pub fn angle_char(a: &AlphaVector) -> Scalar {
    (0..a.dim() as isize)
        .map(|i| Scalar::sign_pow(i as i64) * a.get(i))
        .sum()
}

/// Binomial as a plain integer for callers outside the scalar tower.
pub fn binomial(n: i64, k: i64) -> i128 {
    binom(n, k)
}
