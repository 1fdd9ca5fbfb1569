//! Abstract simplicial complexes: links, the semi-Eulerian test, boundaries,
//! doubling, and the DS identities on balls and annuli.

use std::collections::{BTreeMap, BTreeSet};

use super::facecx::{is_subset, FaceComplex};
use crate::error::{Error, Result};
use crate::relations::{ds_of_counts, Relation, RelationReport};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Vec<usize>>,
    faces: FaceComplex,
}

fn sphere_chi(m: isize) -> i64 {
    if m < 0 {
        0
    } else if m % 2 == 0 {
        2
    } else {
        0
    }
}

impl SimplicialComplex {
    /// A pure complex on vertices `0..n` given by its facets.
    pub fn new(n: usize, facets: Vec<Vec<usize>>) -> Result<Self> {
        let mut fs: BTreeSet<Vec<usize>> = BTreeSet::new();
        for mut f in facets {
            f.sort_unstable();
            f.dedup();
            if let Some(&v) = f.iter().find(|&&v| v >= n) {
                return Err(Error::Invalid(format!("vertex {v} out of range 0..{n}")));
            }
            fs.insert(f);
        }
        let Some(first) = fs.iter().next() else {
            return Err(Error::Invalid("a simplicial complex needs a facet".into()));
        };
        let size = first.len();
        if size == 0 || fs.iter().any(|f| f.len() != size) {
            return Err(Error::Invalid("facets must all have the same dimension".into()));
        }
        let facets: Vec<Vec<usize>> = fs.into_iter().collect();
        let faces = FaceComplex::simplicial(&facets);
        Ok(SimplicialComplex { n, facets, faces })
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.facets[0].len() - 1
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn faces(&self) -> &FaceComplex {
        &self.faces
    }

    /// `f_0..f_dim`.
    pub fn f_vector(&self) -> Vec<i64> {
        self.faces.counts()
    }

    pub fn euler(&self) -> i64 {
        self.faces.euler()
    }

    /// `lk(F) = {G : G ∪ F ∈ C, G ∩ F = ∅}`, as the closure of its faces.
    pub fn link(&self, face: &[usize]) -> FaceComplex {
        let mut face = face.to_vec();
        face.sort_unstable();
        let mut out = FaceComplex::new();
        for f in &self.facets {
            if is_subset(&face, f) {
                let rest: Vec<usize> = f.iter().filter(|v| face.binary_search(v).is_err()).copied().collect();
                if !rest.is_empty() {
                    for (g, d) in FaceComplex::simplicial(&[rest]).iter() {
                        out.insert(g.clone(), d);
                    }
                }
            }
        }
        out
    }

    fn ridge_degrees(&self) -> BTreeMap<Vec<usize>, usize> {
        let mut m = BTreeMap::new();
        for f in &self.facets {
            for i in 0..f.len() {
                let mut r = f.clone();
                r.remove(i);
                if !r.is_empty() {
                    *m.entry(r).or_insert(0) += 1;
                }
            }
        }
        m
    }

    /// Every ridge lies in at most two facets.
    pub fn is_pseudomanifold(&self) -> bool {
        self.ridge_degrees().values().all(|&n| n <= 2)
    }

    /// Every nonempty face has a link with the Euler characteristic of a
    /// sphere of dimension `dim C − dim F − 1`.
    pub fn is_semi_eulerian(&self) -> bool {
        let top = self.dim() as isize;
        self.faces
            .iter()
            .all(|(f, d)| self.link(f).euler() == sphere_chi(top - d as isize - 1))
    }

    /// Ridges lying in exactly one facet; `None` when there are none.
    pub fn boundary(&self) -> Option<SimplicialComplex> {
        let ridges: Vec<Vec<usize>> = self
            .ridge_degrees()
            .into_iter()
            .filter(|&(_, n)| n == 1)
            .map(|(r, _)| r)
            .collect();
        if ridges.is_empty() {
            None
        } else {
            SimplicialComplex::new(self.n, ridges).ok()
        }
    }

    /// Faces not in the boundary, counted by dimension.
    pub fn interior_counts(&self) -> Vec<i64> {
        let b = self.boundary();
        let mut out = vec![0i64; self.dim() + 1];
        for (f, d) in self.faces.iter() {
            if b.as_ref().is_none_or(|b| !b.faces.contains(f)) {
                out[d] += 1;
            }
        }
        out
    }

    /// Face counts of the double `K* = K ∪_{∂K} K`: `2 f(int K) + f(∂K)`.
    pub fn double_counts(&self) -> Vec<i64> {
        let f = self.f_vector();
        let fint = self.interior_counts();
        f.iter().zip(&fint).map(|(a, i)| 2 * i + (a - i)).collect()
    }

    /// Whether the double is semi-Eulerian. Links in the double are the
    /// links in `K` for interior faces, and doubles of them along the
    /// boundary link for boundary faces.
    pub fn double_is_semi_eulerian(&self) -> bool {
        let top = self.dim() as isize;
        let b = self.boundary();
        self.faces.iter().all(|(f, d)| {
            let chi = match b.as_ref().filter(|b| b.faces.contains(f)) {
                Some(b) => 2 * self.link(f).euler() - b.link(f).euler(),
                None => self.link(f).euler(),
            };
            chi == sphere_chi(top - d as isize - 1)
        })
    }

    pub fn components(&self) -> usize {
        self.faces.components().len()
    }
}

/// Shape of a complex checked for the ball and annulus DS identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BallOrAnnulus {
    Ball,
    Annulus,
}

/// Recognizes a pseudomanifold ball or annulus: its boundary has one or two
/// sphere components, the Euler characteristic matches, and its double is
/// semi-Eulerian.
pub fn ball_or_annulus(k: &SimplicialComplex) -> Result<BallOrAnnulus> {
    let m = k.dim() as isize;
    let reject = |why: &str| Err(Error::Invalid(format!("not a ball or annulus: {why}")));
    if k.components() != 1 || !k.is_pseudomanifold() {
        return reject("not a connected pseudomanifold");
    }
    let Some(b) = k.boundary() else {
        return reject("no boundary");
    };
    let bcomps = b.faces.components();
    // a 0-sphere is a pair of points, so for paths count points in pairs
    let spheres = if m == 1 {
        bcomps.iter().all(|c| c.len() == 1)
    } else {
        bcomps.iter().all(|c| c.euler() == sphere_chi(m - 1))
    };
    if !k.double_is_semi_eulerian() {
        return reject("the double is not semi-Eulerian");
    }
    let sphere_count = if m == 1 { bcomps.len() / 2 } else { bcomps.len() };
    match (sphere_count, k.euler()) {
        (1, 1) if spheres => Ok(BallOrAnnulus::Ball),
        (2, e) if spheres && m >= 2 && e == sphere_chi(m - 1) => Ok(BallOrAnnulus::Annulus),
        _ => reject("boundary and Euler characteristic match neither"),
    }
}

/// The two identities on a `(d−1)`-ball or annulus `K`, with `d = dim K + 1`:
/// `DS_k(int K) = (−1)^{d−1} f_k(K)` and `DS_k(K) = (−1)^{d−1} f_k(int K)`.
pub fn ds_ball_lemma_check(k_complex: &SimplicialComplex, k: isize) -> Result<(RelationReport, RelationReport)> {
    ball_or_annulus(k_complex)?;
    let d = k_complex.dim() + 1;
    let sign = Scalar::sign_pow(d as i64 - 1);
    let f = k_complex.f_vector();
    let fint = k_complex.interior_counts();
    let at = |v: &[i64]| if k < 0 { 0 } else { v.get(k as usize).copied().unwrap_or(0) };
    let open = RelationReport::new(
        Relation::DS(k),
        ds_of_counts(&fint, d, k)?,
        &sign * &Scalar::int(at(&f)),
        0.0,
        None,
    );
    let closed = RelationReport::new(
        Relation::DS(k),
        ds_of_counts(&f, d, k)?,
        &sign * &Scalar::int(at(&fint)),
        0.0,
        None,
    );
    Ok((open, closed))
}

/// Small named complexes.
pub mod examples {
    use super::SimplicialComplex;

    pub fn tetrahedron_boundary() -> SimplicialComplex {
        SimplicialComplex::new(4, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap()
    }

    pub fn octahedron_boundary() -> SimplicialComplex {
        let mut f = Vec::new();
        for a in [0, 1] {
            for b in [2, 3] {
                for c in [4, 5] {
                    f.push(vec![a, b, c]);
                }
            }
        }
        SimplicialComplex::new(6, f).unwrap()
    }

    /// Möbius' seven-vertex torus.
    pub fn torus7() -> SimplicialComplex {
        let mut f = Vec::new();
        for i in 0..7 {
            f.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
            f.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
        }
        SimplicialComplex::new(7, f).unwrap()
    }

    pub fn triangle() -> SimplicialComplex {
        SimplicialComplex::new(3, vec![vec![0, 1, 2]]).unwrap()
    }

    /// Four triangles around a centre vertex.
    pub fn disk4() -> SimplicialComplex {
        SimplicialComplex::new(5, vec![vec![0, 1, 4], vec![1, 2, 4], vec![2, 3, 4], vec![3, 0, 4]]).unwrap()
    }

    /// Six triangles between an outer and an inner triangle.
    pub fn annulus6() -> SimplicialComplex {
        SimplicialComplex::new(
            6,
            vec![
                vec![0, 1, 3],
                vec![1, 3, 4],
                vec![1, 2, 4],
                vec![2, 4, 5],
                vec![2, 0, 5],
                vec![0, 5, 3],
            ],
        )
        .unwrap()
    }

    /// Boundary of the `(d+1)`-simplex, a `d`-sphere.
    pub fn simplex_boundary(d: usize) -> SimplicialComplex {
        let n = d + 2;
        let f = (0..n).map(|skip| (0..n).filter(|&v| v != skip).collect()).collect();
        SimplicialComplex::new(n, f).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    #[test]
    fn semi_eulerian_examples() {
        assert!(tetrahedron_boundary().is_semi_eulerian());
        let t = torus7();
        assert_eq!(t.f_vector(), vec![7, 21, 14]);
        assert_eq!(t.euler(), 0);
        assert!(t.is_semi_eulerian());
        let oct = octahedron_boundary();
        let ball = SimplicialComplex::new(6, oct.facets()[1..].to_vec()).unwrap();
        assert!(!ball.is_semi_eulerian());
        assert!(ball.is_pseudomanifold());
        assert_eq!(ball.boundary().unwrap().f_vector(), vec![3, 3]);
    }

    #[test]
    fn even_d_spheres_have_zero_euler() {
        for d in [1, 3, 5] {
            let s = simplex_boundary(d);
            assert!(s.is_semi_eulerian());
            assert_eq!(s.euler(), 0);
            for k in 0..d as isize {
                let f = s.f_vector();
                assert_eq!(ds_of_counts(&f, d + 1, k).unwrap(), Scalar::sign_pow(d as i64) * Scalar::int(f[k as usize]));
            }
        }
    }

    #[test]
    fn link_of_a_vertex() {
        let l = octahedron_boundary().link(&[0]);
        assert_eq!(l.counts(), vec![4, 4]);
        assert_eq!(l.euler(), 0);
    }

    #[test]
    fn doubles() {
        let alt = |v: Vec<i64>| v.iter().enumerate().map(|(i, x)| if i % 2 == 0 { *x } else { -x }).sum::<i64>();
        assert_eq!(alt(disk4().double_counts()), 2);
        assert!(disk4().double_is_semi_eulerian());
        assert!(triangle().double_is_semi_eulerian());
        assert_eq!(alt(annulus6().double_counts()), 0);
        assert!(annulus6().double_is_semi_eulerian());
    }

    #[test]
    fn ball_lemmas() {
        assert_eq!(ball_or_annulus(&triangle()).unwrap(), BallOrAnnulus::Ball);
        assert_eq!(ball_or_annulus(&annulus6()).unwrap(), BallOrAnnulus::Annulus);
        let (open, _) = ds_ball_lemma_check(&triangle(), 0).unwrap();
        assert_eq!(open.lhs, Scalar::int(3));
        for k in [0, 1] {
            for c in [triangle(), disk4(), annulus6()] {
                let (a, b) = ds_ball_lemma_check(&c, k).unwrap();
                assert!(a.pass && b.pass, "{a} {b}");
            }
        }
        let path = SimplicialComplex::new(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(ball_or_annulus(&path).unwrap(), BallOrAnnulus::Ball);
        assert!(ds_ball_lemma_check(&torus7(), 0).is_err());
        assert!(ds_ball_lemma_check(&tetrahedron_boundary(), 0).is_err());
    }
}
