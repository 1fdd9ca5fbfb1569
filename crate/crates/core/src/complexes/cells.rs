//! Float complexes of convex 3-cells, their boundary angle sums, and the
//! DS/Perles gluing laws for simplicial pieces.

use std::collections::{BTreeMap, BTreeSet};

use super::facecx::{classify, Classification, FaceComplex};
use crate::angles::{interior_angle, SamplingConfig};
use crate::error::{Error, Result};
use crate::facelattice::{FaceId, VPolytope};
use crate::relations::{ds_of_counts, ds_operator, pe_operator, Relation, RelationReport};
use crate::scalar::Scalar;
use crate::vectors::{AlphaFVector, AlphaVector, FVector};

/// Absolute tolerance for identifying vertices of different cells.
pub const MATCH_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct CellComplex3 {
    cells: Vec<VPolytope>,
    points: Vec<Vec<f64>>,
    // local vertex index → global point id, per cell
    local: Vec<Vec<usize>>,
}

/// A boundary face of a subcomplex with its summed interior angle.
#[derive(Clone, Debug, PartialEq)]
pub struct CellFace {
    pub dim: usize,
    pub alpha: Scalar,
    pub stderr: f64,
}

impl CellComplex3 {
    pub fn new(cells: Vec<VPolytope>) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::Invalid("a cell complex needs a cell".into()));
        }
        if let Some(c) = cells.iter().find(|c| c.dim() != 3) {
            return Err(Error::Dimension(format!("cells must be 3-polytopes, got dimension {}", c.dim())));
        }
        let mut points: Vec<Vec<f64>> = Vec::new();
        let mut local = Vec::with_capacity(cells.len());
        for c in &cells {
            let ids = c
                .vertices()
                .iter()
                .map(|v| {
                    let hit = points
                        .iter()
                        .position(|p| p.iter().zip(v).all(|(a, b)| (a - b).abs() <= MATCH_TOL));
                    hit.unwrap_or_else(|| {
                        points.push(v.clone());
                        points.len() - 1
                    })
                })
                .collect();
            local.push(ids);
        }
        let cx = CellComplex3 { cells, points, local };
        cx.check_face_to_face()?;
        Ok(cx)
    }

    fn global(&self, cell: usize, face: FaceId) -> Vec<usize> {
        let l = self.cells[cell].lattice();
        let mut v: Vec<usize> = l.face(face).vertices.iter().map(|&i| self.local[cell][i]).collect();
        v.sort_unstable();
        v
    }

    // Shared vertices of two cells must span a common face of both.
    fn check_face_to_face(&self) -> Result<()> {
        for i in 0..self.cells.len() {
            let si: BTreeSet<usize> = self.local[i].iter().copied().collect();
            for j in i + 1..self.cells.len() {
                let shared: Vec<usize> = self.local[j].iter().copied().filter(|v| si.contains(v)).collect();
                if shared.is_empty() {
                    continue;
                }
                let mut shared = shared;
                shared.sort_unstable();
                for c in [i, j] {
                    let l = self.cells[c].lattice();
                    let found = (0..3).any(|k| l.ids(k).any(|f| self.global(c, f) == shared));
                    if !found {
                        return Err(Error::Gluing(format!(
                            "cells {i} and {j} meet in vertices {shared:?}, which is not a face of cell {c}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn cells(&self) -> &[VPolytope] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn all(&self) -> Vec<usize> {
        (0..self.cells.len()).collect()
    }

    pub fn is_simplicial(&self) -> bool {
        self.cells.iter().all(|c| c.n_vertices() == 4)
    }

    /// Boundary faces of the subcomplex on `subset`, keyed by global vertex
    /// ids, together with the cells (and their face ids) containing each.
    fn boundary_incidence(&self, subset: &[usize]) -> BTreeMap<Vec<usize>, (usize, Vec<(usize, FaceId)>)> {
        let mut all: BTreeMap<Vec<usize>, (usize, Vec<(usize, FaceId)>)> = BTreeMap::new();
        for &c in subset {
            let l = self.cells[c].lattice();
            for k in 0..3 {
                for f in l.ids(k) {
                    all.entry(self.global(c, f)).or_insert((k as usize, vec![])).1.push((c, f));
                }
            }
        }
        let facets: Vec<Vec<usize>> = all
            .iter()
            .filter(|(_, (d, inc))| *d == 2 && inc.len() == 1)
            .map(|(v, _)| v.clone())
            .collect();
        all.into_iter()
            .filter(|(v, _)| facets.iter().any(|f| v.iter().all(|x| f.binary_search(x).is_ok())))
            .collect()
    }

    /// Boundary faces with their angles in the subcomplex.
    pub fn boundary(&self, subset: &[usize], cfg: &SamplingConfig) -> Result<BTreeMap<Vec<usize>, CellFace>> {
        let mut out = BTreeMap::new();
        for (v, (dim, inc)) in self.boundary_incidence(subset) {
            let mut alpha = Scalar::zero();
            let mut var = 0.0;
            for (c, f) in inc {
                let a = interior_angle(&self.cells[c], f, cfg)?;
                alpha += a.value;
                var += a.stderr * a.stderr;
            }
            out.insert(v, CellFace { dim, alpha, stderr: var.sqrt() });
        }
        Ok(out)
    }

    /// Boundary face counts; `f_3` is the number of cells.
    pub fn boundary_f(&self, subset: &[usize]) -> FVector {
        let mut f = vec![1, 0, 0, 0, subset.len() as i64];
        for (dim, _) in self.boundary_incidence(subset).values() {
            f[dim + 1] += 1;
        }
        FVector::new(3, f).expect("length 5")
    }

    /// α- and f-vector of the subcomplex; `α_3` and `f_3` count cells.
    pub fn alpha_f(&self, subset: &[usize], cfg: &SamplingConfig) -> Result<AlphaFVector> {
        let b = self.boundary(subset, cfg)?;
        let mut a = vec![Scalar::zero(); 5];
        let mut se = [0.0f64; 5];
        let mut f = vec![1i64, 0, 0, 0, subset.len() as i64];
        for face in b.values() {
            a[face.dim + 1] += face.alpha.clone();
            se[face.dim + 1] += face.stderr * face.stderr;
            f[face.dim + 1] += 1;
        }
        a[4] = Scalar::int(subset.len() as i64);
        let mut alpha = AlphaVector::new(3, a)?;
        if se.iter().any(|&s| s > 0.0) {
            alpha = alpha.with_stderr(se.iter().map(|s| s.sqrt()).collect())?;
        }
        AlphaFVector::new(alpha, FVector::new(3, f)?)
    }
}

/// Result of checking a simplicial gluing against the DS/Perles laws.
#[derive(Clone, Debug)]
pub struct DsPeGluing {
    pub classification: Classification,
    /// Computed `DS_k(∂C)` and `Pe_k(C)` against the gluing theorem's formula.
    pub theorem: Vec<RelationReport>,
    /// The plain DS and Perles relations on the union.
    pub on_union: Vec<RelationReport>,
}

impl DsPeGluing {
    pub fn theorem_holds(&self) -> bool {
        self.theorem.iter().all(|r| r.pass)
    }
}

fn count_at(v: &[i64], k: isize) -> i64 {
    if k < 0 {
        0
    } else {
        v.get(k as usize).copied().unwrap_or(0)
    }
}

/// Glues two simplicial cell complexes and checks `DS_k(∂C)` and `Pe_k(C)`
/// for `0 ≤ k ≤ 2` against the formulas for the computed intersection class.
pub fn ds_pe_gluing_check(
    a: &CellComplex3,
    b: &CellComplex3,
    cfg: &SamplingConfig,
    tol: Option<f64>,
) -> Result<DsPeGluing> {
    if !a.is_simplicial() || !b.is_simplicial() {
        return Err(Error::Invalid("DS/Perles gluing laws need simplicial cells".into()));
    }
    let d = 3usize;
    let c = CellComplex3::new(a.cells.iter().chain(&b.cells).cloned().collect())?;
    let ia: Vec<usize> = (0..a.len()).collect();
    let ib: Vec<usize> = (a.len()..c.len()).collect();
    let (ba, bb, bc) = (c.boundary_incidence(&ia), c.boundary_incidence(&ib), c.boundary_incidence(&c.all()));

    let mut kc = FaceComplex::new();
    let mut interior = BTreeSet::new();
    for (v, (dim, _)) in &ba {
        if bb.contains_key(v) {
            kc.insert(v.clone(), *dim);
            if !bc.contains_key(v) {
                interior.insert(v.clone());
            }
        }
    }
    if kc.is_empty() {
        return Err(Error::Gluing("the parts do not meet".into()));
    }
    let class = classify(&kc, d, &interior);
    if let Classification::Unclassifiable(why) = &class {
        return Err(Error::Gluing(format!("unclassifiable intersection: {why}")));
    }

    let (afa, afb, afc) = (c.alpha_f(&ia, cfg)?, c.alpha_f(&ib, cfg)?, c.alpha_f(&c.all(), cfg)?);
    let sign = Scalar::sign_pow(d as i64 - 1);
    let kf = kc.counts();
    let kint = {
        let mut v = vec![0i64; d];
        for face in &interior {
            v[kc.dim_of(face).expect("interior face of K")] += 1;
        }
        v
    };
    let se = |af: &AlphaFVector| af.alpha.stderr().map_or(0.0, |s| s.iter().map(|x| x * x).sum::<f64>().sqrt());
    let sigma = (se(&afa).powi(2) + se(&afb).powi(2) + se(&afc).powi(2)).sqrt();

    let mut theorem = Vec::new();
    let mut on_union = Vec::new();
    for k in 0..d as isize {
        let ds_parts = ds_operator(&afa.f, k)? + ds_operator(&afb.f, k)?;
        let pe_parts = pe_operator(&afa.alpha, k)? + pe_operator(&afb.alpha, k)?;
        let (ds_pred, pe_pred) = match &class {
            Classification::LowerDim { .. } => (&ds_parts - &ds_of_counts(&kf, d, k)?, pe_parts),
            _ => {
                // f(K*) = 2 f(int K) + f(∂K)
                let kstar = 2 * count_at(&kint, k) + (count_at(&kf, k) - count_at(&kint, k));
                (
                    &ds_parts - &(&sign * &Scalar::int(kstar)),
                    &pe_parts - &(&sign * &Scalar::int(count_at(&kf, k))),
                )
            }
        };
        let ds_c = ds_operator(&afc.f, k)?;
        let pe_c = pe_operator(&afc.alpha, k)?;
        theorem.push(RelationReport::new(Relation::DS(k), ds_c.clone(), ds_pred, 0.0, None));
        theorem.push(RelationReport::new(Relation::Perles(k), pe_c.clone(), pe_pred, sigma, tol));
        on_union.push(RelationReport::new(
            Relation::DS(k),
            ds_c,
            &sign * &Scalar::int(afc.f.get(k)),
            0.0,
            None,
        ));
        let rhs = Scalar::sign_pow(d as i64) * (afc.alpha.get(k) - Scalar::int(afc.f.get(k)));
        on_union.push(RelationReport::new(Relation::Perles(k), pe_c, rhs, sigma, tol));
    }
    Ok(DsPeGluing {
        classification: class,
        theorem,
        on_union,
    })
}

/// `n` tetrahedra stacked face to face, each on a new facet of the last one.
pub fn stacked_ball(n: usize) -> Result<CellComplex3> {
    if n == 0 {
        return Err(Error::Invalid("need at least one tetrahedron".into()));
    }
    let mut verts: Vec<Vec<f64>> = vec![
        vec![1.0, 1.0, 1.0],
        vec![1.0, -1.0, -1.0],
        vec![-1.0, 1.0, -1.0],
        vec![-1.0, -1.0, 1.0],
    ];
    let mut tets: Vec<[usize; 4]> = vec![[0, 1, 2, 3]];
    for step in 1..n {
        let last = tets[step - 1];
        // glue onto the facet opposite the oldest vertex of the last tetrahedron
        let facet = [last[1], last[2], last[3]];
        let c_f: Vec<f64> = (0..3).map(|i| facet.iter().map(|&v| verts[v][i]).sum::<f64>() / 3.0).collect();
        let c_t: Vec<f64> = (0..3).map(|i| last.iter().map(|&v| verts[v][i]).sum::<f64>() / 4.0).collect();
        let apex: Vec<f64> = (0..3).map(|i| c_f[i] + 0.5 * (c_f[i] - c_t[i])).collect();
        verts.push(apex);
        tets.push([facet[0], facet[1], facet[2], verts.len() - 1]);
    }
    let cells = tets
        .iter()
        .map(|t| VPolytope::from_f64(t.iter().map(|&v| verts[v].clone()).collect()))
        .collect::<Result<Vec<_>>>()?;
    CellComplex3::new(cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::t1_3;
    use crate::facelattice::shapes;

    fn cfg() -> SamplingConfig {
        SamplingConfig::default()
    }

    fn reflect(p: &VPolytope) -> VPolytope {
        VPolytope::from_f64(p.vertices().iter().map(|v| vec![-v[0], -v[1], v[2]]).collect()).unwrap()
    }

    fn tet_pair() -> (CellComplex3, CellComplex3) {
        let t = t1_3();
        let top = VPolytope::from_f64(t.vertices().iter().filter(|v| v[0] > -1.5).cloned().collect()).unwrap();
        let bottom = VPolytope::from_f64(t.vertices().iter().filter(|v| v[0] != 1.0 || v[1] != 1.0).cloned().collect()).unwrap();
        (CellComplex3::new(vec![top]).unwrap(), CellComplex3::new(vec![bottom]).unwrap())
    }

    #[test]
    fn connected_sum_of_two_tetrahedra() {
        let (a, b) = tet_pair();
        let g = ds_pe_gluing_check(&a, &b, &cfg(), None).unwrap();
        assert_eq!(g.classification, Classification::Balls(1));
        assert!(g.theorem_holds(), "{:#?}", g.theorem);
        assert!(g.on_union.iter().all(|r| r.pass), "{:#?}", g.on_union);
    }

    #[test]
    fn stacked_five() {
        let s = stacked_ball(5).unwrap();
        assert_eq!(s.boundary_f(&s.all()).entries(), &[1, 8, 18, 12, 5]);
        let af = s.alpha_f(&s.all(), &cfg()).unwrap();
        for k in 0..3 {
            assert_eq!(ds_operator(&af.f, k).unwrap(), Scalar::int(af.f.get(k)));
        }
        let a = CellComplex3::new(s.cells()[..4].to_vec()).unwrap();
        let b = CellComplex3::new(s.cells()[4..].to_vec()).unwrap();
        let g = ds_pe_gluing_check(&a, &b, &cfg(), None).unwrap();
        assert!(g.theorem_holds());
        assert!(g.on_union.iter().all(|r| r.pass));
    }

    #[test]
    fn gluing_along_an_edge() {
        let t = shapes::simplex(3);
        let a = CellComplex3::new(vec![t.clone()]).unwrap();
        let b = CellComplex3::new(vec![reflect(&t)]).unwrap();
        let g = ds_pe_gluing_check(&a, &b, &cfg(), None).unwrap();
        assert_eq!(g.classification, Classification::LowerDim { l: 1, chi: 1 });
        assert!(g.theorem_holds(), "{:#?}", g.theorem);
        let at = |rel| g.on_union.iter().find(|r| r.relation == rel).unwrap();
        assert!(at(Relation::DS(2)).pass && at(Relation::Perles(2)).pass);
        // k = 1: the DS residual is −DS_1(K) + f_1(K) = 2, the Perles residual f_1(K) = 1
        assert_eq!(at(Relation::DS(1)).residual, Scalar::int(2));
        assert!((at(Relation::Perles(1)).residual.to_f64() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn non_simplicial_and_bad_contacts() {
        let cube = CellComplex3::new(vec![shapes::cube(3)]).unwrap();
        assert!(ds_pe_gluing_check(&cube, &cube, &cfg(), None).is_err());
        // a tetrahedron touching the middle of another's edge shares one vertex only,
        // which is fine; sharing two vertices that are not an edge is not
        let t = shapes::simplex(3);
        let bad = VPolytope::from_ints(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0], vec![1, 1, 1]]).unwrap();
        assert!(CellComplex3::new(vec![t.clone(), bad]).is_ok());
        assert!(CellComplex3::new(vec![t, shapes::cube(3)]).is_err());
    }
}
