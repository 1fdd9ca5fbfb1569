//! Closed complexes stored as vertex sets, and classification of gluing
//! intersections into balls, annuli, closed pieces or lower-dimensional sets.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Faces keyed by sorted vertex ids, each with its dimension. Closed under
/// taking faces when built by the callers in this module tree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FaceComplex {
    faces: BTreeMap<Vec<usize>, usize>,
}

pub(crate) fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().filter(|x| b.binary_search(x).is_ok()).copied().collect()
}

impl FaceComplex {
    pub fn new() -> Self {
        FaceComplex::default()
    }

    pub fn insert(&mut self, mut verts: Vec<usize>, dim: usize) {
        verts.sort_unstable();
        verts.dedup();
        self.faces.insert(verts, dim);
    }

    pub fn from_faces(faces: impl IntoIterator<Item = (Vec<usize>, usize)>) -> Self {
        let mut c = FaceComplex::new();
        for (v, d) in faces {
            c.insert(v, d);
        }
        c
    }

    /// Simplicial closure of the given simplices.
    pub fn simplicial(simplices: &[Vec<usize>]) -> Self {
        let mut c = FaceComplex::new();
        for s in simplices {
            let mut s = s.clone();
            s.sort_unstable();
            let n = s.len();
            for mask in 1u32..(1 << n) {
                let sub: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                let d = sub.len() - 1;
                c.faces.insert(sub, d);
            }
        }
        c
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn contains(&self, verts: &[usize]) -> bool {
        self.faces.contains_key(verts)
    }

    pub fn dim_of(&self, verts: &[usize]) -> Option<usize> {
        self.faces.get(verts).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, usize)> {
        self.faces.iter().map(|(k, v)| (k, *v))
    }

    /// Largest face dimension; `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.faces.values().copied().max()
    }

    pub fn faces_of_dim(&self, k: usize) -> impl Iterator<Item = &Vec<usize>> {
        self.faces.iter().filter(move |(_, &d)| d == k).map(|(v, _)| v)
    }

    /// Face counts `f_0..f_dim`.
    pub fn counts(&self) -> Vec<i64> {
        let Some(top) = self.dim() else { return vec![] };
        let mut out = vec![0i64; top + 1];
        for &d in self.faces.values() {
            out[d] += 1;
        }
        out
    }

    pub fn euler(&self) -> i64 {
        self.faces
            .values()
            .map(|&d| if d % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    pub fn filter(&self, keep: impl Fn(&[usize], usize) -> bool) -> FaceComplex {
        FaceComplex {
            faces: self
                .faces
                .iter()
                .filter(|(v, &d)| keep(v, d))
                .map(|(v, &d)| (v.clone(), d))
                .collect(),
        }
    }

    /// Connected components (through shared vertices).
    pub fn components(&self) -> Vec<FaceComplex> {
        let mut parent: HashMap<usize, usize> = HashMap::new();
        fn find(p: &mut HashMap<usize, usize>, x: usize) -> usize {
            let mut r = x;
            while let Some(&q) = p.get(&r) {
                if q == r {
                    break;
                }
                r = q;
            }
            let mut y = x;
            while y != r {
                let next = p[&y];
                p.insert(y, r);
                y = next;
            }
            r
        }
        for v in self.faces.keys() {
            for &x in v {
                parent.entry(x).or_insert(x);
            }
            for w in v.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                if a != b {
                    parent.insert(a, b);
                }
            }
        }
        let mut groups: BTreeMap<usize, FaceComplex> = BTreeMap::new();
        for (v, &d) in &self.faces {
            let root = find(&mut parent, v[0]);
            groups.entry(root).or_default().faces.insert(v.clone(), d);
        }
        groups.into_values().collect()
    }

    fn by_vertex(&self, dim: usize) -> HashMap<usize, Vec<&Vec<usize>>> {
        let mut m: HashMap<usize, Vec<&Vec<usize>>> = HashMap::new();
        for f in self.faces_of_dim(dim) {
            for &v in f {
                m.entry(v).or_default().push(f);
            }
        }
        m
    }

    /// Every face lies in some face of top dimension.
    pub fn is_pure(&self) -> bool {
        let Some(top) = self.dim() else { return true };
        let tops = self.by_vertex(top);
        self.faces.iter().all(|(v, &d)| {
            d == top
                || tops
                    .get(&v[0])
                    .is_some_and(|ts| ts.iter().any(|t| is_subset(v, t)))
        })
    }

    /// Number of top faces containing each ridge (codimension-1 face).
    fn ridge_degrees(&self) -> Vec<(&Vec<usize>, usize)> {
        let Some(top) = self.dim() else { return vec![] };
        if top == 0 {
            return vec![];
        }
        let tops = self.by_vertex(top);
        self.faces_of_dim(top - 1)
            .map(|r| {
                let n = tops
                    .get(&r[0])
                    .map_or(0, |ts| ts.iter().filter(|t| is_subset(r, t)).count());
                (r, n)
            })
            .collect()
    }

    /// Closure of the ridges that lie in exactly one top face.
    pub fn boundary(&self) -> FaceComplex {
        let ridges: Vec<Vec<usize>> = self
            .ridge_degrees()
            .into_iter()
            .filter(|&(_, n)| n == 1)
            .map(|(r, _)| r.clone())
            .collect();
        let mut out = FaceComplex::new();
        for (v, &d) in &self.faces {
            if ridges.iter().any(|r| is_subset(v, r)) {
                out.faces.insert(v.clone(), d);
            }
        }
        out
    }

    /// Ridges in at most two top faces, and every vertex star connected
    /// through ridges.
    pub fn is_manifold_like(&self) -> bool {
        let Some(top) = self.dim() else { return true };
        if self.ridge_degrees().iter().any(|&(_, n)| n > 2) {
            return false;
        }
        if top < 2 {
            return true;
        }
        let tops = self.by_vertex(top);
        for (v, ts) in &tops {
            let n = ts.len();
            let mut seen = vec![false; n];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(i) = stack.pop() {
                for j in 0..n {
                    if !seen[j] {
                        let s = intersect(ts[i], ts[j]);
                        if s.contains(v) && self.dim_of(&s) == Some(top - 1) {
                            seen[j] = true;
                            stack.push(j);
                        }
                    }
                }
            }
            if seen.iter().any(|s| !s) {
                return false;
            }
        }
        true
    }
}

/// Topological type of one (d−1)-dimensional intersection component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Piece {
    Ball,
    Annulus,
    Closed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Balls(usize),
    Annuli(usize),
    Closed(usize),
    /// Components of more than one of the three kinds.
    Mixed { balls: usize, annuli: usize, closed: usize },
    /// Intersection of dimension `l ≤ d−2` with Euler characteristic `chi`.
    LowerDim { l: isize, chi: i64 },
    Unclassifiable(String),
}

impl Classification {
    pub fn is_classifiable(&self) -> bool {
        !matches!(self, Classification::Unclassifiable(_))
    }

    pub fn name(&self) -> String {
        match self {
            Classification::Balls(m) => format!("balls({m})"),
            Classification::Annuli(m) => format!("annuli({m})"),
            Classification::Closed(m) => format!("closed({m})"),
            Classification::Mixed { balls, annuli, closed } => {
                format!("mixed(balls={balls}, annuli={annuli}, closed={closed})")
            }
            Classification::LowerDim { l, .. } => format!("lower-dim({l})"),
            Classification::Unclassifiable(why) => format!("unclassifiable({why})"),
        }
    }

    fn counts(&self) -> (usize, usize, usize) {
        match *self {
            Classification::Balls(m) => (m, 0, 0),
            Classification::Annuli(m) => (0, m, 0),
            Classification::Closed(m) => (0, 0, m),
            Classification::Mixed { balls, annuli, closed } => (balls, annuli, closed),
            _ => (0, 0, 0),
        }
    }
}

fn sphere_chi(s: isize) -> i64 {
    if s < 0 {
        0
    } else {
        1 + if s % 2 == 0 { 1 } else { -1 }
    }
}

// Is `b` a triangulated s-sphere, given that it bounds a manifold-like piece?
fn looks_like_sphere(b: &FaceComplex, s: isize) -> bool {
    match s {
        s if s < 0 => b.is_empty(),
        0 => b.len() == 2 && b.iter().all(|(_, d)| d == 0),
        _ => b.components().len() == 1 && b.euler() == sphere_chi(s) && b.dim() == Some(s as usize),
    }
}

/// Classifies the intersection `k` of two pieces glued inside a `d`-complex.
///
/// `interior` lists the faces of `k` that became interior in the union; the
/// classification is only trusted when those are exactly the topological
/// interior of each component.
pub fn classify(k: &FaceComplex, d: usize, interior: &BTreeSet<Vec<usize>>) -> Classification {
    let Some(dim) = k.dim() else {
        return Classification::Unclassifiable("empty intersection".into());
    };
    if dim + 2 <= d {
        if !interior.is_empty() {
            return Classification::Unclassifiable("lower-dimensional faces became interior".into());
        }
        return Classification::LowerDim {
            l: dim as isize,
            chi: k.euler(),
        };
    }
    let (mut balls, mut annuli, mut closed) = (0, 0, 0);
    for comp in k.components() {
        if comp.dim() != Some(d - 1) {
            return Classification::Unclassifiable("components of different dimensions".into());
        }
        if !comp.is_pure() || !comp.is_manifold_like() {
            return Classification::Unclassifiable("intersection is not a manifold".into());
        }
        let bd = comp.boundary();
        let topo_interior: BTreeSet<&Vec<usize>> =
            comp.iter().map(|(v, _)| v).filter(|v| !bd.contains(v)).collect();
        let in_c: BTreeSet<&Vec<usize>> = comp.iter().map(|(v, _)| v).filter(|v| interior.contains(*v)).collect();
        if topo_interior != in_c {
            return Classification::Unclassifiable(
                "interior of the intersection differs from the faces interior to the union".into(),
            );
        }
        let s = d as isize - 2;
        let chi = comp.euler();
        if bd.is_empty() && d >= 2 && chi == sphere_chi(d as isize - 1) {
            closed += 1;
        } else if chi == 1 && looks_like_sphere(&bd, s) {
            balls += 1;
        } else if d >= 3 && chi == sphere_chi(s) && {
            let bcs = bd.components();
            bcs.len() == 2 && bcs.iter().all(|c| looks_like_sphere(c, s))
        } {
            annuli += 1;
        } else {
            return Classification::Unclassifiable(format!("component with χ = {chi} is not a ball, annulus or sphere"));
        }
    }
    match (balls, annuli, closed) {
        (m, 0, 0) => Classification::Balls(m),
        (0, m, 0) => Classification::Annuli(m),
        (0, 0, m) => Classification::Closed(m),
        (balls, annuli, closed) => Classification::Mixed { balls, annuli, closed },
    }
}

/// Euler characteristic of the boundary and angle characteristic of a complex.
#[derive(Clone, Debug, PartialEq)]
pub struct Chars {
    pub chi_boundary: i64,
    pub chi_alpha: Scalar,
}

/// The gluing theorems: characteristics of `A ⊕ B` from those of the parts
/// and the class of the intersection.
pub fn predict(a: &Chars, b: &Chars, class: &Classification, d: usize) -> Result<Chars> {
    let sgn = |k: i64| if k.rem_euclid(2) == 0 { 1i64 } else { -1 };
    let d = d as i64;
    let (dchi, dalpha) = match class {
        Classification::Unclassifiable(why) => {
            return Err(Error::Gluing(format!("no prediction for an unclassifiable intersection: {why}")))
        }
        Classification::LowerDim { chi, .. } => (-chi, 0),
        other => {
            let (m_b, m_a, m_c) = other.counts();
            let (m_b, m_a, m_c) = (m_b as i64, m_a as i64, m_c as i64);
            let ball = (-2 * sgn(d - 1) - (1 + sgn(d)), -sgn(d - 1));
            let annulus = (0, 1 + sgn(d));
            let sphere = (-2 * (1 + sgn(d - 1)), -(1 + sgn(d - 1)));
            (
                m_b * ball.0 + m_a * annulus.0 + m_c * sphere.0,
                m_b * ball.1 + m_a * annulus.1 + m_c * sphere.1,
            )
        }
    };
    Ok(Chars {
        chi_boundary: a.chi_boundary + b.chi_boundary + dchi,
        chi_alpha: &a.chi_alpha + &b.chi_alpha + Scalar::int(dalpha),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interior_of(k: &FaceComplex) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for c in k.components() {
            let b = c.boundary();
            out.extend(c.iter().map(|(v, _)| v.clone()).filter(|v| !b.contains(v)));
        }
        out
    }

    #[test]
    fn disk_annulus_sphere() {
        let disk = FaceComplex::simplicial(&[vec![0, 1, 4], vec![1, 2, 4], vec![2, 3, 4], vec![3, 0, 4]]);
        assert_eq!(classify(&disk, 3, &interior_of(&disk)), Classification::Balls(1));
        let ann = FaceComplex::simplicial(&[
            vec![0, 1, 3],
            vec![1, 3, 4],
            vec![1, 2, 4],
            vec![2, 4, 5],
            vec![2, 0, 5],
            vec![0, 5, 3],
        ]);
        assert_eq!(ann.euler(), 0);
        assert_eq!(classify(&ann, 3, &interior_of(&ann)), Classification::Annuli(1));
        let sph = FaceComplex::simplicial(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]);
        assert_eq!(classify(&sph, 3, &interior_of(&sph)), Classification::Closed(1));
        let edge = FaceComplex::simplicial(&[vec![0, 1]]);
        assert_eq!(
            classify(&edge, 3, &BTreeSet::new()),
            Classification::LowerDim { l: 1, chi: 1 }
        );
    }

    #[test]
    fn pinched_disks_are_rejected() {
        // two triangles sharing only a vertex
        let bow = FaceComplex::simplicial(&[vec![0, 1, 2], vec![0, 3, 4]]);
        assert!(!bow.is_manifold_like());
        assert!(!classify(&bow, 3, &interior_of(&bow)).is_classifiable());
    }

    #[test]
    fn predictions_match_theorems() {
        let poly = Chars { chi_boundary: 2, chi_alpha: Scalar::one() };
        let two_balls = predict(&poly, &poly, &Classification::Balls(2), 3).unwrap();
        assert_eq!(two_balls.chi_alpha, Scalar::zero());
        assert_eq!(two_balls.chi_boundary, 0);
        let sphere = predict(&poly, &poly, &Classification::Closed(1), 3).unwrap();
        assert_eq!(sphere.chi_alpha, Scalar::zero());
        assert_eq!(sphere.chi_boundary, 0);
        let lower = predict(&poly, &poly, &Classification::LowerDim { l: 1, chi: 1 }, 3).unwrap();
        assert_eq!(lower.chi_alpha, Scalar::int(2));
        assert_eq!(lower.chi_boundary, 3);
        assert!(predict(&poly, &poly, &Classification::Unclassifiable("x".into()), 3).is_err());
    }
}
