//! Linear relations on f-, α-, h- and γ-vectors, and the DS_k / Pe_k operators.

use std::fmt;

use serde::Serialize;

use crate::complexes::simplicial::SimplicialComplex;
use crate::error::{Error, Result};
use crate::scalar::{binom_s, Scalar};
use crate::vectors::{gamma_from_alpha, h_from_f, AlphaFVector, AlphaVector, FVector, GammaVector, HVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    Euler,
    Gram,
    DS(isize),
    Perles(isize),
    HPerles(usize),
    Sommerville,
    /// Curvature sign ε ∈ {1, 0, −1}.
    GeneralizedGram(i8),
    /// `α_j(P) = Σ α_j(P_i) − f_{j−1}(P)` over a pyramid decomposition.
    PyramidAngles(isize),
    /// `Σ f_j(P_i) = C(d, j) f_{d−1} + C(d, j+1) f_{d−1}`.
    PyramidFaces(isize),
    /// Angle characteristic of a glued complex against its prediction.
    Gluing,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Euler => write!(f, "euler"),
            Relation::Gram => write!(f, "gram"),
            Relation::DS(k) => write!(f, "ds[{k}]"),
            Relation::Perles(k) => write!(f, "perles[{k}]"),
            Relation::HPerles(i) => write!(f, "h-perles[{i}]"),
            Relation::Sommerville => write!(f, "sommerville"),
            Relation::GeneralizedGram(e) => write!(f, "gram[eps={e}]"),
            Relation::PyramidAngles(j) => write!(f, "pyramid-alpha[{j}]"),
            Relation::PyramidFaces(j) => write!(f, "pyramid-f[{j}]"),
            Relation::Gluing => write!(f, "gluing"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationReport {
    pub relation: Relation,
    pub lhs: Scalar,
    pub rhs: Scalar,
    pub residual: Scalar,
    pub tolerance: f64,
    pub pass: bool,
}

impl RelationReport {
    /// Builds a report from both sides; `sigma` is the standard error of `lhs − rhs`.
    ///
    /// Exact residuals get tolerance 0. Float residuals use `tol` when given,
    /// otherwise `max(1e-9, 4σ)`.
    pub fn new(relation: Relation, lhs: Scalar, rhs: Scalar, sigma: f64, tol: Option<f64>) -> Self {
        let residual = &lhs - &rhs;
        Self::with_residual(relation, lhs, rhs, residual, sigma, tol)
    }

    /// As [`RelationReport::new`], with the residual supplied by the caller.
    /// Used when terms common to both sides cancel symbolically, so that an
    /// exact residual survives inexact sides.
    pub fn with_residual(
        relation: Relation,
        lhs: Scalar,
        rhs: Scalar,
        residual: Scalar,
        sigma: f64,
        tol: Option<f64>,
    ) -> Self {
        let (tolerance, pass) = if residual.is_exact() {
            (0.0, residual.is_zero())
        } else {
            let t = tol.unwrap_or_else(|| default_tolerance(sigma));
            (t, residual.to_f64().abs() <= t)
        };
        RelationReport {
            relation,
            lhs,
            rhs,
            residual,
            tolerance,
            pass,
        }
    }
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: lhs = {}, rhs = {}, residual = {} (tol {:e})",
            if self.pass { "PASS" } else { "FAIL" },
            self.relation,
            self.lhs,
            self.rhs,
            self.residual,
            self.tolerance
        )
    }
}

pub fn default_tolerance(sigma: f64) -> f64 {
    (4.0 * sigma).max(1e-9)
}

// Standard error of Σ c_i α_i from per-entry standard errors.
fn combined_se(a: &AlphaVector, coeffs: &[(isize, f64)]) -> f64 {
    coeffs
        .iter()
        .map(|&(i, c)| (c * a.stderr_at(i)).powi(2))
        .sum::<f64>()
        .sqrt()
}

fn check_k(d: usize, k: isize) -> Result<()> {
    if k < -1 || k > d as isize - 1 {
        return Err(Error::Invalid(format!("k = {k} outside −1..{}", d as isize - 1)));
    }
    Ok(())
}

pub fn check_euler(f: &FVector) -> RelationReport {
    let d = f.dim() as isize;
    let lhs: i64 = (0..d).map(|i| if i % 2 == 0 { f.get(i) } else { -f.get(i) }).sum();
    let rhs = 1 + if (d - 1).rem_euclid(2) == 0 { 1 } else { -1 };
    RelationReport::new(Relation::Euler, Scalar::int(lhs), Scalar::int(rhs), 0.0, None)
}

pub fn check_gram(a: &AlphaVector, tol: Option<f64>) -> RelationReport {
    let d = a.dim() as isize;
    let lhs: Scalar = (0..d).map(|i| Scalar::sign_pow(i as i64) * a.get(i)).sum();
    let se = combined_se(a, &(0..d).map(|i| (i, 1.0)).collect::<Vec<_>>());
    RelationReport::new(Relation::Gram, lhs, Scalar::sign_pow(d as i64 - 1), se, tol)
}

// Coefficients (−1)^j C(j+1, k+1) for j = k..d−1.
pub(crate) fn operator_coeffs(d: usize, k: isize) -> Vec<(isize, Scalar)> {
    (k..d as isize)
        .map(|j| (j, Scalar::sign_pow(j as i64) * binom_s(j as i64 + 1, k as i64 + 1)))
        .collect()
}

/// `DS_k = Σ_{j=k}^{d−1} (−1)^j C(j+1, k+1) f_j`.
pub fn ds_operator(f: &FVector, k: isize) -> Result<Scalar> {
    check_k(f.dim(), k)?;
    Ok(operator_coeffs(f.dim(), k)
        .into_iter()
        .map(|(j, c)| c * Scalar::int(f.get(j)))
        .sum())
}

/// `DS_k` applied to raw face counts `counts[j] = f_j`, `j ≥ 0`, of some
/// complex sitting inside a `d`-dimensional one. Missing entries count as 0,
/// and `k = −1` uses `f_{−1} = 0` so that open and partial complexes work.
pub fn ds_of_counts(counts: &[i64], d: usize, k: isize) -> Result<Scalar> {
    check_k(d, k)?;
    Ok(operator_coeffs(d, k)
        .into_iter()
        .filter(|&(j, _)| j >= 0)
        .map(|(j, c)| c * Scalar::int(counts.get(j as usize).copied().unwrap_or(0)))
        .sum())
}

/// `Pe_k = Σ_{j=k}^{d−1} (−1)^j C(j+1, k+1) α_j`.
pub fn pe_operator(a: &AlphaVector, k: isize) -> Result<Scalar> {
    check_k(a.dim(), k)?;
    Ok(operator_coeffs(a.dim(), k)
        .into_iter()
        .map(|(j, c)| c * a.get(j))
        .sum())
}

pub fn check_ds(f: &FVector, k: isize) -> Result<RelationReport> {
    let lhs = ds_operator(f, k)?;
    let rhs = Scalar::sign_pow(f.dim() as i64 - 1) * Scalar::int(f.get(k));
    Ok(RelationReport::new(Relation::DS(k), lhs, rhs, 0.0, None))
}

pub fn check_perles(af: &AlphaFVector, k: isize, tol: Option<f64>) -> Result<RelationReport> {
    let d = af.dim();
    let lhs = pe_operator(&af.alpha, k)?;
    let rhs = Scalar::sign_pow(d as i64) * (af.alpha.get(k) - Scalar::int(af.f.get(k)));
    // α_k appears on both sides, so its coefficient in the residual shifts by (−1)^{d+1}
    let coeffs: Vec<(isize, f64)> = operator_coeffs(d, k)
        .into_iter()
        .map(|(j, c)| {
            let mut c = c.to_f64();
            if j == k {
                c -= if d % 2 == 0 { 1.0 } else { -1.0 };
            }
            (j, c)
        })
        .collect();
    let se = combined_se(&af.alpha, &coeffs);
    Ok(RelationReport::new(Relation::Perles(k), lhs, rhs, se, tol))
}

/// All Dehn-Sommerville checks `k = −1..d−1`.
pub fn check_all_ds(f: &FVector) -> Vec<RelationReport> {
    (-1..f.dim() as isize).map(|k| check_ds(f, k).expect("k in range")).collect()
}

/// All Perles checks `k = −1..d−1`.
pub fn check_all_perles(af: &AlphaFVector, tol: Option<f64>) -> Vec<RelationReport> {
    (-1..af.dim() as isize)
        .map(|k| check_perles(af, k, tol).expect("k in range"))
        .collect()
}

/// `γ_i + γ_{d−i} = h_i` for `0 ≤ i ≤ d`.
pub fn check_h_perles(g: &GammaVector, h: &HVector, tol: Option<f64>) -> Result<Vec<RelationReport>> {
    if g.dim() != h.dim() {
        return Err(Error::Dimension(format!("γ has dimension {}, h has {}", g.dim(), h.dim())));
    }
    let d = g.dim() as isize;
    Ok((0..=d)
        .map(|i| {
            RelationReport::new(
                Relation::HPerles(i as usize),
                g.get(i) + g.get(d - i),
                h.get(i),
                0.0,
                tol,
            )
        })
        .collect())
}

/// The h-Perles checks computed from an α-f-vector, with Monte Carlo error
/// propagated through the γ transform.
pub fn check_h_perles_af(af: &AlphaFVector, tol: Option<f64>) -> Vec<RelationReport> {
    let d = af.dim() as i64;
    let g = gamma_from_alpha(&af.alpha);
    let h = h_from_f(&af.f);
    // γ_i = Σ_{j≤i} (−1)^{i−j} C(d−j, d−i) α_{j−1}
    let coeff = |i: i64, j: i64| -> f64 {
        if j > i || i < 0 {
            0.0
        } else {
            (Scalar::sign_pow(i - j) * binom_s(d - j, d - i)).to_f64()
        }
    };
    (0..=d)
        .map(|i| {
            let coeffs: Vec<(isize, f64)> = (0..=d)
                .map(|j| (j as isize - 1, coeff(i, j) + coeff(d - i, j)))
                .collect();
            let se = combined_se(&af.alpha, &coeffs);
            RelationReport::new(
                Relation::HPerles(i as usize),
                g.get(i as isize) + g.get((d - i) as isize),
                h.get(i as isize),
                se,
                tol,
            )
        })
        .collect()
}

/// `χ(lk F) = χ(S^{dim C − dim F − 1})` for every nonempty face.
pub fn is_semi_eulerian(c: &SimplicialComplex) -> bool {
    c.is_semi_eulerian()
}

/// Euler and Gram always; DS, Perles and h-Perles for every k when `simplicial`.
pub fn full_suite(af: &AlphaFVector, simplicial: bool, tol: Option<f64>) -> Vec<RelationReport> {
    let mut out = vec![check_euler(&af.f), check_gram(&af.alpha, tol)];
    if simplicial {
        out.extend(check_all_perles(af, tol));
        out.extend(check_all_ds(&af.f));
        out.extend(check_h_perles_af(af, tol));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{eval_expr, t1_3};
    use crate::angles::{angle_sums, SamplingConfig};
    use std::f64::consts::PI;

    fn af(s: &str) -> AlphaFVector {
        eval_expr(&s.parse().unwrap()).unwrap().af
    }

    fn tet_alpha1() -> f64 {
        3.0 / PI * (1.0f64 / 3.0).acos()
    }

    #[test]
    fn euler_examples() {
        assert!(check_euler(&FVector::polytope(3, &[8, 12, 6]).unwrap()).pass);
        let torus = check_euler(&FVector::polytope(3, &[16, 32, 16]).unwrap());
        assert!(!torus.pass);
        assert_eq!(torus.residual, Scalar::int(-2));
        assert!(check_euler(&FVector::polytope(1, &[2]).unwrap()).pass);
    }

    #[test]
    fn gram_examples() {
        let cube = AlphaVector::euclidean(3, vec![Scalar::int(1), Scalar::int(3), Scalar::int(3)]).unwrap();
        let r = check_gram(&cube, None);
        assert!(r.pass && r.tolerance == 0.0);
        assert!(check_gram(&af("Pinf tri").alpha, None).pass);
        let torus = AlphaVector::euclidean(3, vec![Scalar::int(4), Scalar::int(12), Scalar::int(8)]).unwrap();
        let r = check_gram(&torus, None);
        assert!(!r.pass);
        assert_eq!(r.residual, Scalar::int(-1));
    }

    #[test]
    fn operators_on_tetrahedra() {
        let tet = FVector::polytope(3, &[4, 6, 4]).unwrap();
        assert_eq!(ds_operator(&tet, 1).unwrap(), Scalar::int(6));
        let t13 = FVector::polytope(3, &[5, 9, 6]).unwrap();
        assert_eq!(ds_operator(&t13, 1).unwrap(), Scalar::int(9));
        let c = tet_alpha1();
        let a = AlphaVector::euclidean(3, vec![Scalar::float(c - 1.0), Scalar::float(c), Scalar::int(2)]).unwrap();
        assert!((pe_operator(&a, 1).unwrap().to_f64() - (6.0 - c)).abs() < 1e-12);
        assert!(ds_operator(&tet, 3).is_err());
        assert!(ds_operator(&tet, -2).is_err());
    }

    #[test]
    fn octahedron_ds_exact() {
        let f = FVector::polytope(3, &[6, 12, 8]).unwrap();
        for r in check_all_ds(&f) {
            assert!(r.pass, "{r}");
            assert_eq!(r.tolerance, 0.0);
        }
        let cube = FVector::polytope(3, &[8, 12, 6]).unwrap();
        assert!(!check_ds(&cube, 0).unwrap().pass);
    }

    #[test]
    fn t13_perles() {
        let p = t1_3();
        let a = angle_sums(&p, &SamplingConfig::default()).unwrap();
        let v = AlphaFVector::new(a, p.lattice().f_vector()).unwrap();
        for k in 0..3 {
            let r = check_perles(&v, k, Some(1e-12)).unwrap();
            assert!(r.pass, "{r}");
        }
    }

    #[test]
    fn gram_is_perles_minus_one() {
        for s in ["B* sq", "Pinf tri", "P0^2 seg", "Pinf^3 P0 seg"] {
            let v = af(s);
            let g = check_gram(&v.alpha, None);
            let p = check_perles(&v, -1, None).unwrap();
            assert_eq!(g.pass, p.pass);
            assert_eq!(g.residual, p.residual);
        }
    }

    #[test]
    fn top_perles_is_facet_halves() {
        let v = af("B*^2 tri");
        assert!(check_perles(&v, 3, None).unwrap().pass);
    }

    #[test]
    fn h_perles_simplex_family() {
        for d in 1..=10 {
            let v = af(&format!("Pinf^{} seg", d - 1));
            let reps = check_h_perles(&gamma_from_alpha(&v.alpha), &h_from_f(&v.f), None).unwrap();
            assert!(reps.iter().all(|r| r.pass && r.tolerance == 0.0), "d = {d}");
        }
        let seg = af("seg");
        let g = gamma_from_alpha(&seg.alpha);
        assert_eq!(g.entries(), &[Scalar::zero(), Scalar::one()]);
        assert!(check_h_perles(&g, &h_from_f(&seg.f), None).unwrap().iter().all(|r| r.pass));
    }

    #[test]
    fn h_perles_octahedron_monte_carlo() {
        let oct = crate::facelattice::shapes::cross_polytope(3);
        let cfg = SamplingConfig::default().forced();
        let a = angle_sums(&oct, &cfg).unwrap();
        let v = AlphaFVector::new(a, oct.lattice().f_vector()).unwrap();
        for r in check_h_perles_af(&v, None) {
            assert!(r.pass, "{r}");
            assert!(r.tolerance > 1e-9);
        }
    }

    #[test]
    fn suite_on_families() {
        for s in ["B*^2 Pinf seg", "P0 B* tri", "B*^3 point"] {
            let v = af(s);
            for r in full_suite(&v, false, None) {
                assert!(r.pass && r.residual.is_zero(), "{s}: {r}");
            }
        }
        for s in ["Pinf^2 P0^2 seg", "Pinf^4 seg", "P0^3 tri"] {
            let v = af(s);
            for r in full_suite(&v, true, None) {
                assert!(r.pass && r.residual.is_zero(), "{s}: {r}");
            }
        }
        // Perles is a simplicial statement: the cube breaks it at k = 0
        let cube = af("B*^3 point");
        assert!(!check_perles(&cube, 0, None).unwrap().pass);
    }
}
