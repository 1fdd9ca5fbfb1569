//! Spanning families of α- and α-f-vectors and their affine ranks.

use num_rational::BigRational;
use rayon::prelude::*;

use crate::angles::{angle_sums, SamplingConfig};
use crate::constructions::{eval_expr, t1_3, t_k_d, Base, ConstructionExpr, Op};
use crate::error::{Error, Result};
use crate::facelattice::VPolytope;
use crate::linalg;
use crate::scalar::Scalar;
use crate::vectors::{AlphaFVector, AlphaVector, FVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Simplices,
    Simplicial,
    General,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub d: usize,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, d: usize) -> Result<Self> {
        let min = if kind == FamilyKind::Simplices { 1 } else { 2 };
        if d < min {
            return Err(Error::Dimension(format!("{kind:?} family needs d >= {min}")));
        }
        if kind == FamilyKind::Simplicial && d > 5 {
            return Err(Error::Dimension("simplicial family is limited to d <= 5".into()));
        }
        Ok(FamilySpec { kind, d })
    }

    /// The dimension the theorems assign to the affine span.
    pub fn expected_rank(&self) -> usize {
        match self.kind {
            FamilyKind::Simplices => (self.d - 1) / 2,
            FamilyKind::Simplicial => self.d - 1,
            FamilyKind::General => 2 * self.d - 3,
        }
    }

    /// Coordinates of every family member, in the order of the constructors below.
    pub fn coords(&self, cfg: &SamplingConfig) -> Result<Vec<Vec<Scalar>>> {
        Ok(match self.kind {
            FamilyKind::Simplices => simplex_family(self.d)
                .iter()
                .map(|a| a.entries().to_vec())
                .collect(),
            FamilyKind::Simplicial => simplicial_family(self.d, cfg)?
                .iter()
                .map(AlphaFVector::coords)
                .collect(),
            FamilyKind::General => general_family(self.d)?
                .iter()
                .map(AlphaFVector::coords)
                .collect(),
        })
    }
}

/// The construction expressions behind [`simplex_family`].
pub fn simplex_exprs(d: usize) -> Vec<ConstructionExpr> {
    assert!(d >= 1);
    let (base, top) = if d % 2 == 1 {
        (Base::Segment, d - 1)
    } else {
        (Base::Triangle, d - 2)
    };
    (0..=top / 2)
        .map(|i| {
            let zero = ConstructionExpr::power(Op::Pyr0, 2 * i as u32, ConstructionExpr::Base(base));
            ConstructionExpr::power(Op::PyrInf, (top - 2 * i) as u32, zero)
        })
        .collect()
}

/// Exact α-vectors spanning the α-vectors of d-simplices.
pub fn simplex_family(d: usize) -> Vec<AlphaVector> {
    simplex_exprs(d)
        .iter()
        .map(|e| eval_expr(e).expect("limiting constructions are exact").af.alpha)
        .collect()
}

/// The construction expressions behind [`general_family`].
pub fn general_exprs(d: usize) -> Result<Vec<ConstructionExpr>> {
    if d < 2 {
        return Err(Error::Dimension("general family needs d >= 2".into()));
    }
    let mut out = Vec::with_capacity(2 * d - 2);
    for i in 0..=d - 2 {
        let inf = (d - 2 - i) as u32;
        let tri = ConstructionExpr::power(Op::Prism, i as u32, ConstructionExpr::Base(Base::Triangle));
        out.push(ConstructionExpr::power(Op::PyrInf, inf, tri));
        let seg = ConstructionExpr::power(Op::Prism, i as u32 + 1, ConstructionExpr::Base(Base::Segment));
        out.push(ConstructionExpr::power(Op::PyrInf, inf, seg));
    }
    Ok(out)
}

pub fn general_family(d: usize) -> Result<Vec<AlphaFVector>> {
    general_exprs(d)?
        .iter()
        .map(|e| eval_expr(e).map(|r| r.af))
        .collect()
}

/// Simplex vectors (exact) plus the stellar polytopes `T_k^d`, `k = 1..⌊d/2⌋`.
pub fn simplicial_family(d: usize, cfg: &SamplingConfig) -> Result<Vec<AlphaFVector>> {
    FamilySpec::new(FamilyKind::Simplicial, d)?;
    let mut out: Vec<AlphaFVector> = simplex_exprs(d)
        .iter()
        .map(|e| eval_expr(e).map(|r| r.af))
        .collect::<Result<_>>()?;
    let stellar: Vec<Result<AlphaFVector>> = (1..=d / 2)
        .into_par_iter()
        .map(|k| {
            let p = if d == 3 && k == 1 { t1_3() } else { t_k_d(d, k)? };
            let a = angle_sums(&p, cfg)?;
            AlphaFVector::new(a, p.lattice().f_vector())
        })
        .collect();
    for s in stellar {
        out.push(s?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RankResult {
    pub vectors: Vec<Vec<Scalar>>,
    pub affine_dim: usize,
    pub exact: bool,
    /// Singular values of the difference matrix when the float method ran.
    pub singular_values: Option<Vec<f64>>,
}

/// Affine dimension of the point set: rank of `{v_i − v_0}`.
///
/// Without `tol` every coordinate must be exact and the rank is computed by
/// fraction-free elimination. With `tol` the rank counts singular values above
/// `tol · max(1, σ_max)`.
pub fn affine_rank(vectors: &[Vec<Scalar>], tol: Option<f64>) -> Result<RankResult> {
    let Some(first) = vectors.first() else {
        return Err(Error::Invalid("affine rank of an empty set".into()));
    };
    if vectors.iter().any(|v| v.len() != first.len()) {
        return Err(Error::Dimension("vectors of different lengths".into()));
    }
    let all_exact = vectors.iter().flatten().all(Scalar::is_exact);
    match tol {
        None => {
            if !all_exact {
                return Err(Error::Invalid(
                    "float coordinates need an explicit rank tolerance".into(),
                ));
            }
            let rows: Vec<Vec<BigRational>> = vectors[1..]
                .iter()
                .map(|v| {
                    v.iter()
                        .zip(first)
                        .map(|(a, b)| {
                            let a = a.as_rational().expect("exact");
                            let b = b.as_rational().expect("exact");
                            a - b
                        })
                        .collect()
                })
                .collect();
            Ok(RankResult {
                vectors: vectors.to_vec(),
                affine_dim: linalg::exact_rank(&rows),
                exact: true,
                singular_values: None,
            })
        }
        Some(t) => {
            let rows: Vec<Vec<f64>> = vectors[1..]
                .iter()
                .map(|v| v.iter().zip(first).map(|(a, b)| a.to_f64() - b.to_f64()).collect())
                .collect();
            let sv = linalg::singular_values(&rows);
            let top = sv.first().copied().unwrap_or(0.0).max(1.0);
            let affine_dim = sv.iter().filter(|&&s| s > t * top).count();
            Ok(RankResult {
                vectors: vectors.to_vec(),
                affine_dim,
                exact: false,
                singular_values: Some(sv),
            })
        }
    }
}

/// One concrete member found by [`backing_off`].
#[derive(Clone, Debug)]
pub struct BackedOff {
    pub expr: ConstructionExpr,
    pub concrete: ConstructionExpr,
    pub height: Scalar,
    pub polytope: VPolytope,
    pub limit: AlphaFVector,
    pub approx: AlphaFVector,
    pub max_deviation: f64,
}

#[derive(Clone, Debug)]
pub struct BackingOffReport {
    pub members: Vec<BackedOff>,
    pub exact_rank: usize,
    pub float_rank: usize,
    pub pass: bool,
}

const BACKING_OFF_STEPS: u32 = 14;

// Replace the k-th limiting node from the bottom by P[δ^k] (flat) or P[N^k]
// (tall), N = 1/δ, so each level is extreme relative to the one below.
fn concretize(e: &ConstructionExpr, delta: &Scalar) -> ConstructionExpr {
    fn go(e: &ConstructionExpr, delta: &Scalar, depth: &mut i32) -> ConstructionExpr {
        use ConstructionExpr as E;
        let pow = |x: &Scalar, k: i32| (0..k).fold(Scalar::one(), |acc, _| acc * x);
        match e {
            E::Base(b) => E::Base(*b),
            E::Prism(c) => E::Prism(Box::new(go(c, delta, depth))),
            E::Pyr(c, h) => E::Pyr(Box::new(go(c, delta, depth)), h.clone()),
            E::Stellar(c, j) => E::Stellar(Box::new(go(c, delta, depth)), *j),
            E::Pyr0(c) => {
                let inner = go(c, delta, depth);
                *depth += 1;
                E::Pyr(Box::new(inner), pow(delta, *depth))
            }
            E::PyrInf(c) => {
                let inner = go(c, delta, depth);
                *depth += 1;
                E::Pyr(Box::new(inner), pow(&(Scalar::one() / delta), *depth))
            }
            E::Power(..) => unreachable!("unrolled"),
        }
    }
    go(&e.unrolled(), delta, &mut 0)
}

/// Finds finite heights whose α-vectors are within `eps` of the limiting ones.
///
/// Heights start at `δ = 1/8`, `N = 8` and are halved and doubled together;
/// nested limiting pyramids use powers of them.
/// Monte Carlo entries are allowed an extra four standard errors. The report
/// passes when the float rank of the concrete family equals the exact rank.
pub fn backing_off(family: &[ConstructionExpr], eps: f64, cfg: &SamplingConfig) -> Result<BackingOffReport> {
    if eps <= 0.0 {
        return Err(Error::Invalid("ε must be positive".into()));
    }
    let members: Vec<Result<BackedOff>> = family
        .par_iter()
        .map(|e| {
            let limit = eval_expr(e)?.af;
            let mut delta = Scalar::ratio(1, 8);
            for _ in 0..BACKING_OFF_STEPS {
                let concrete = concretize(e, &delta);
                let r = crate::constructions::realize(&concrete, cfg)?;
                let p = r.polytope.expect("concrete expressions are geometric");
                let approx = r.af;
                let d = limit.dim() as isize;
                let mut worst = 0.0f64;
                let mut ok = true;
                for i in 0..d {
                    let dev = (approx.alpha.get(i).to_f64() - limit.alpha.get(i).to_f64()).abs();
                    worst = worst.max(dev);
                    if dev > eps + 4.0 * approx.alpha.stderr_at(i) {
                        ok = false;
                    }
                }
                if ok {
                    return Ok(BackedOff {
                        expr: e.clone(),
                        concrete,
                        height: delta,
                        polytope: p,
                        limit,
                        approx,
                        max_deviation: worst,
                    });
                }
                delta = delta * Scalar::ratio(1, 2);
            }
            Err(Error::Budget(format!("no height brings `{e}` within {eps} of its limit")))
        })
        .collect();
    let members: Vec<BackedOff> = members.into_iter().collect::<Result<_>>()?;
    let exact: Vec<Vec<Scalar>> = members.iter().map(|m| m.limit.coords()).collect();
    let approx: Vec<Vec<Scalar>> = members.iter().map(|m| m.approx.coords()).collect();
    let exact_rank = affine_rank(&exact, None)?.affine_dim;
    let float_rank = affine_rank(&approx, Some(1e-6))?.affine_dim;
    Ok(BackingOffReport {
        members,
        exact_rank,
        float_rank,
        pass: exact_rank == float_rank,
    })
}

/// Extended preimage under the pyramid map: `(x_{−1}, f̄_0, …, f̄_{d−1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preimage {
    pub x_minus1: i64,
    pub fbar: Vec<i64>,
}

impl Preimage {
    /// `Σ_{i=0}^{d−1} (−1)^i f̄_i`.
    pub fn alternating_sum(&self) -> i64 {
        self.fbar
            .iter()
            .enumerate()
            .map(|(i, x)| if i % 2 == 0 { *x } else { -*x })
            .sum()
    }

    pub fn entries(&self) -> Vec<i64> {
        let mut v = vec![self.x_minus1];
        v.extend(&self.fbar);
        v
    }
}

pub fn pyramid_preimage(f: &FVector) -> Preimage {
    let d = f.dim() as isize;
    let fbar = (0..d)
        .map(|i| {
            (i + 1..=d)
                .map(|j| if (j - i - 1) % 2 == 0 { f.get(j) } else { -f.get(j) })
                .sum()
        })
        .collect();
    let x_minus1 = (0..=d).map(|j| if j % 2 == 0 { f.get(j) } else { -f.get(j) }).sum();
    Preimage { x_minus1, fbar }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{gamma_pyr_inf, prism_f, pyramid_f};
    use crate::relations::{check_euler, check_gram};
    use crate::vectors::{gamma_from_alpha, GammaVector};

    fn alpha_coords(v: &[AlphaVector]) -> Vec<Vec<Scalar>> {
        v.iter().map(|a| a.entries().to_vec()).collect()
    }

    #[test]
    fn simplex_family_ranks() {
        for d in 1..=10 {
            let fam = simplex_family(d);
            assert_eq!(fam.len(), (d - 1) / 2 + 1);
            let r = affine_rank(&alpha_coords(&fam), None).unwrap();
            assert_eq!(r.affine_dim, (d - 1) / 2, "d = {d}");
            for a in &fam {
                let g = gamma_from_alpha(a);
                for k in 0..=d as isize {
                    assert_eq!(g.get(k) + g.get(d as isize - k), Scalar::one());
                }
            }
        }
        let seg = simplex_family(1);
        assert_eq!(seg[0].entries(), &[Scalar::zero(), Scalar::one(), Scalar::one()]);
    }

    #[test]
    fn general_family_ranks() {
        for d in 2..=10 {
            let fam = general_family(d).unwrap();
            assert_eq!(fam.len(), 2 * d - 2);
            let coords: Vec<_> = fam.iter().map(AlphaFVector::coords).collect();
            assert_eq!(affine_rank(&coords, None).unwrap().affine_dim, 2 * d - 3, "d = {d}");
            for v in &fam {
                assert!(check_euler(&v.f).pass);
                assert!(check_gram(&v.alpha, None).pass);
            }
        }
        let two = general_family(2).unwrap();
        assert_eq!(two[0].to_string(), "(1/2, 3/2, 1 | 3, 3, 1)");
        assert_eq!(two[1].to_string(), "(1, 2, 1 | 4, 4, 1)");
    }

    #[test]
    fn simplicial_family_low_dims() {
        let cfg = SamplingConfig::default();
        let fam = simplicial_family(2, &cfg).unwrap();
        assert_eq!(fam.len(), 2);
        let coords: Vec<_> = fam.iter().map(AlphaFVector::coords).collect();
        assert_eq!(affine_rank(&coords, Some(1e-6)).unwrap().affine_dim, 1);
        let fam = simplicial_family(3, &cfg).unwrap();
        assert_eq!(fam.len(), 3);
        assert_eq!(fam[2].f.entries(), &[1, 5, 9, 6, 1]);
        let coords: Vec<_> = fam.iter().map(AlphaFVector::coords).collect();
        assert_eq!(affine_rank(&coords, Some(1e-4)).unwrap().affine_dim, 2);
        assert!(simplicial_family(6, &cfg).is_err());
    }

    #[test]
    fn rank_edge_cases() {
        let v = vec![Scalar::int(1), Scalar::ratio(1, 2)];
        assert_eq!(affine_rank(&[v.clone(), v.clone()], None).unwrap().affine_dim, 0);
        let w = vec![Scalar::float(0.3), Scalar::int(1)];
        assert!(affine_rank(&[v.clone(), w.clone()], None).is_err());
        assert_eq!(affine_rank(&[v, w], Some(1e-9)).unwrap().affine_dim, 1);
        assert!(affine_rank(&[], None).is_err());
        let fam = general_family(6).unwrap();
        let mut coords: Vec<_> = fam.iter().map(AlphaFVector::coords).collect();
        coords.extend(coords.clone());
        assert_eq!(affine_rank(&coords, None).unwrap().affine_dim, 9);
    }

    #[test]
    fn preimage_examples() {
        let tri = FVector::polytope(2, &[3, 3]).unwrap();
        assert_eq!(pyramid_preimage(&pyramid_f(&tri)).entries(), vec![1, 3, 3, 1]);
        let sq = FVector::polytope(2, &[4, 4]).unwrap();
        let cube = prism_f(&sq);
        assert_eq!(
            pyramid_preimage(&cube).alternating_sum(),
            pyramid_preimage(&sq).alternating_sum() + 1
        );
        let tet = FVector::polytope(3, &[4, 6, 4]).unwrap();
        assert_eq!(pyramid_preimage(&tet).alternating_sum(), 1);
    }

    #[test]
    fn pyr_inf_keeps_independence() {
        let fam = general_family(4).unwrap();
        let gs: Vec<GammaVector> = fam.iter().map(|v| gamma_from_alpha(&v.alpha)).collect();
        let lin = |gs: &[GammaVector]| {
            let rows: Vec<Vec<BigRational>> = gs
                .iter()
                .map(|g| g.entries().iter().map(|x| x.as_rational().unwrap().clone()).collect())
                .collect();
            linalg::exact_rank(&rows)
        };
        let before = lin(&gs);
        let after = lin(&gs.iter().map(gamma_pyr_inf).collect::<Vec<_>>());
        assert_eq!(before, after);
    }

    #[test]
    fn backing_off_simplices_d3() {
        let cfg = SamplingConfig::default();
        let rep = backing_off(&simplex_exprs(3), 1e-2, &cfg).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.exact_rank, 1);
        for m in &rep.members {
            assert!(m.max_deviation <= 1e-2 + 1e-9);
            assert!(!m.concrete.is_limiting());
        }
    }
}
