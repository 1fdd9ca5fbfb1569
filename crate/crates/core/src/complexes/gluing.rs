//! Gluing of voxel complexes with computed intersection class and the
//! valuation identities checked on the lattice face counts.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::facecx::{classify, predict, Chars, Classification, FaceComplex};
use super::voxel::{BoundaryFace, Cell, LatticeFace, VoxelComplex};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The intersection of a gluing, as computed.
#[derive(Clone, Debug, PartialEq)]
pub struct GluingSpec {
    pub classification: Classification,
    /// Lattice face counts of `A ∩ B`, indexed by dimension.
    pub intersection_f: Vec<i64>,
    /// Lattice face counts of the faces of `A ∩ B` interior to `C`.
    pub interior_f: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GluingReport {
    pub a: Chars,
    pub b: Chars,
    pub c: Chars,
    pub predicted: Option<Chars>,
    /// `f_i(∂C) = f_i(∂A) + f_i(∂B) − 2 f_i(int K) − f_i(∂K)` for all `i`.
    pub f_valuation: bool,
    /// `α_i(C) = α_i(A) + α_i(B) − f_i(int K)` for all `i`.
    pub alpha_valuation: bool,
    /// The angles from both sides sum to 1 at every face that became interior.
    pub interior_angles_sum_to_one: bool,
}

impl GluingReport {
    /// Whether the computed characteristics match the prediction.
    pub fn agrees(&self) -> Option<bool> {
        self.predicted.as_ref().map(|p| p == &self.c)
    }

    /// `χ(∂C) − χ(∂A) − χ(∂B) = 2[χ_α(C) − χ_α(A) − χ_α(B)]`.
    pub fn difference_law(&self) -> bool {
        let de = self.c.chi_boundary - self.a.chi_boundary - self.b.chi_boundary;
        let da = &self.c.chi_alpha - &self.a.chi_alpha - &self.b.chi_alpha;
        Scalar::int(de) == Scalar::int(2) * da
    }

    pub fn all_pass(&self) -> bool {
        self.f_valuation && self.alpha_valuation && self.interior_angles_sum_to_one && self.agrees() != Some(false)
    }
}

#[derive(Clone, Debug)]
pub struct Gluing {
    pub complex: VoxelComplex,
    pub spec: GluingSpec,
    pub report: GluingReport,
}

/// Characteristics from the lattice counts.
pub fn chars(v: &VoxelComplex) -> Chars {
    Chars {
        chi_boundary: v.chi_boundary(),
        chi_alpha: v.chi_alpha(),
    }
}

fn face_map(v: &VoxelComplex) -> HashMap<LatticeFace, BoundaryFace> {
    v.boundary_faces().into_iter().map(|b| (b.face.clone(), b)).collect()
}

/// Builds `A ⊕ B` and checks it against the valuation lemma and the
/// gluing theorems.
pub fn glue(a: &VoxelComplex, b: &VoxelComplex) -> Result<Gluing> {
    let d = a.dim();
    if b.dim() != d {
        return Err(Error::Dimension(format!("cannot glue a {d}-complex to a {}-complex", b.dim())));
    }
    if let Some(c) = a.cells().intersection(b.cells()).next() {
        return Err(Error::Gluing(format!("interiors overlap in cell {c:?}")));
    }
    let cells: BTreeSet<Cell> = a.cells().union(b.cells()).cloned().collect();
    let label = format!("{} + {}", a.label, b.label);
    let c = VoxelComplex::unchecked(d, cells, label.trim_matches(|ch| ch == ' ' || ch == '+'));

    let (ba, bb, bc) = (face_map(a), face_map(b), face_map(&c));
    let k: Vec<&LatticeFace> = ba.keys().filter(|f| bb.contains_key(*f)).collect();
    if k.is_empty() {
        return Err(Error::Gluing("the parts do not meet".into()));
    }
    let is_int = |f: &LatticeFace| !bc.contains_key(f);

    let mut kf = vec![0i64; d];
    let mut intf = vec![0i64; d];
    let mut angles_ok = true;
    for f in &k {
        kf[f.dim()] += 1;
        if is_int(f) {
            intf[f.dim()] += 1;
            angles_ok &= ba[*f].alpha() + bb[*f].alpha() == Scalar::one();
        }
    }

    let counts = |m: &HashMap<LatticeFace, BoundaryFace>| {
        let mut f = vec![0i64; d];
        let mut al = vec![Scalar::zero(); d];
        for bf in m.values() {
            f[bf.face.dim()] += 1;
            al[bf.face.dim()] += bf.alpha();
        }
        (f, al)
    };
    let ((fa, aa), (fb, ab), (fc, ac)) = (counts(&ba), counts(&bb), counts(&bc));
    let f_valuation = (0..d).all(|i| fc[i] == fa[i] + fb[i] - 2 * intf[i] - (kf[i] - intf[i]));
    let alpha_valuation = (0..d).all(|i| ac[i] == &aa[i] + &ab[i] - Scalar::int(intf[i]));

    // the intersection as an abstract complex on lattice points
    let mut ids: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut vid = |p: Vec<i64>| {
        let n = ids.len();
        *ids.entry(p).or_insert(n)
    };
    let mut kc = FaceComplex::new();
    let mut interior = BTreeSet::new();
    for f in &k {
        let mut vs: Vec<usize> = f.corners().into_iter().map(&mut vid).collect();
        vs.sort_unstable();
        if is_int(f) {
            interior.insert(vs.clone());
        }
        kc.insert(vs, f.dim());
    }
    let classification = classify(&kc, d, &interior);
    let (ca, cb, cc) = (chars(a), chars(b), chars(&c));
    let predicted = predict(&ca, &cb, &classification, d).ok();
    Ok(Gluing {
        complex: c,
        spec: GluingSpec {
            classification,
            intersection_f: kf,
            interior_f: intf,
        },
        report: GluingReport {
            a: ca,
            b: cb,
            c: cc,
            predicted,
            f_valuation,
            alpha_valuation,
            interior_angles_sum_to_one: angles_ok,
        },
    })
}

/// A random strongly connected set of `n` cells grown from the origin.
pub fn random_voxels(d: usize, n: usize, rng: &mut impl Rng) -> VoxelComplex {
    let mut cells: BTreeSet<Cell> = BTreeSet::from([vec![0; d]]);
    let mut order = vec![vec![0; d]];
    while cells.len() < n {
        let from = order.choose(rng).expect("nonempty").clone();
        let mut c = from;
        let axis = rng.gen_range(0..d);
        c[axis] += if rng.gen_bool(0.5) { 1 } else { -1 };
        if cells.insert(c.clone()) {
            order.push(c);
        }
    }
    VoxelComplex::unchecked(d, cells, "random")
}

/// Splits a random connected set into two pieces, each strongly connected,
/// by growing the second piece from a random cell.
pub fn random_split(d: usize, n: usize, seed: u64) -> (VoxelComplex, VoxelComplex) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let whole = random_voxels(d, n, &mut rng);
        let all: Vec<Cell> = whole.cells().iter().cloned().collect();
        let target = rng.gen_range(1..n.max(2));
        let start = all.choose(&mut rng).expect("nonempty").clone();
        let mut b: BTreeSet<Cell> = BTreeSet::from([start.clone()]);
        let mut frontier = vec![start];
        while b.len() < target && !frontier.is_empty() {
            let i = rng.gen_range(0..frontier.len());
            let c = frontier[i].clone();
            let nbrs: Vec<Cell> = (0..d)
                .flat_map(|ax| {
                    [-1, 1].into_iter().map({
                        let c = c.clone();
                        move |s| {
                            let mut n = c.clone();
                            n[ax] += s;
                            n
                        }
                    })
                })
                .filter(|n| whole.contains(n) && !b.contains(n))
                .collect();
            match nbrs.choose(&mut rng) {
                Some(n) => {
                    b.insert(n.clone());
                    frontier.push(n.clone());
                }
                None => {
                    frontier.swap_remove(i);
                }
            }
        }
        let a: BTreeSet<Cell> = whole.cells().difference(&b).cloned().collect();
        if let (Ok(a), Ok(b)) = (VoxelComplex::new(d, a), VoxelComplex::new(d, b)) {
            return (a.with_label("A"), b.with_label("B"));
        }
    }
}

/// Tally of classifications over a batch of random gluings.
pub fn random_gluing_census(d: usize, n: usize, trials: usize, seed: u64) -> Result<BTreeMap<String, usize>> {
    let mut out = BTreeMap::new();
    for t in 0..trials {
        let (a, b) = random_split(d, n, seed.wrapping_add(t as u64));
        let g = glue(&a, &b)?;
        if !g.report.all_pass() {
            return Err(Error::Gluing(format!(
                "trial {t}: {} disagrees with the gluing laws",
                g.spec.classification.name()
            )));
        }
        let key = match &g.spec.classification {
            Classification::Unclassifiable(_) => "unclassifiable".to_string(),
            c => c.name(),
        };
        *out.entry(key).or_insert(0) += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(cells: &[[i64; 3]]) -> VoxelComplex {
        VoxelComplex::new(3, cells.iter().map(|c| c.to_vec())).unwrap()
    }

    #[test]
    fn two_cubes_along_a_square() {
        let g = glue(&v(&[[0, 0, 0]]), &v(&[[1, 0, 0]])).unwrap();
        assert_eq!(g.spec.classification, Classification::Balls(1));
        assert!(g.report.all_pass());
        assert_eq!(g.report.c.chi_alpha, Scalar::one());
        assert_eq!(g.spec.intersection_f, vec![4, 4, 1]);
    }

    #[test]
    fn closing_a_ring() {
        let u = v(&[
            [0, 0, 0],
            [1, 0, 0],
            [2, 0, 0],
            [2, 1, 0],
            [2, 2, 0],
            [1, 2, 0],
            [0, 2, 0],
        ]);
        let g = glue(&u, &v(&[[0, 1, 0]])).unwrap();
        assert_eq!(g.spec.classification, Classification::Balls(2));
        assert_eq!(g.report.c.chi_alpha, Scalar::zero());
        assert_eq!(g.report.agrees(), Some(true));
    }

    #[test]
    fn along_an_edge() {
        let g = glue(&v(&[[0, 0, 0]]), &v(&[[1, 1, 0]])).unwrap();
        assert_eq!(g.spec.classification, Classification::LowerDim { l: 1, chi: 1 });
        assert_eq!(g.report.c.chi_alpha, Scalar::int(2));
        assert_eq!(g.report.c.chi_boundary, 3);
        assert!(g.report.all_pass());
    }

    #[test]
    fn overlap_and_disjoint_are_errors() {
        assert!(matches!(glue(&v(&[[0, 0, 0]]), &v(&[[0, 0, 0]])), Err(Error::Gluing(_))));
        assert!(matches!(glue(&v(&[[0, 0, 0]]), &v(&[[5, 0, 0]])), Err(Error::Gluing(_))));
    }

    #[test]
    fn random_gluings_follow_the_laws() {
        for d in [2, 3] {
            let census = random_gluing_census(d, 10, 40, 7).unwrap();
            assert!(census.values().sum::<usize>() == 40, "{census:?}");
        }
    }
}
