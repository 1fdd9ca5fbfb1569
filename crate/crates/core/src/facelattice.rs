//! Convex polytopes given by vertices: facet enumeration and the face lattice.
//!
//! Facets come from an exhaustive scan over d-subsets of the points. Rational
//! input is tested exactly; float input uses a relative tolerance.

use num_rational::BigRational;
use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, Field};
use crate::scalar::Scalar;
use crate::vectors::FVector;

/// Hard ceiling from the bitmask representation of vertex sets.
pub const MAX_VERTICES_HARD: usize = 64;

#[derive(Clone, Copy, Debug)]
pub struct HullConfig {
    /// Largest point count accepted by the d-subset scan.
    pub max_vertices: usize,
}

impl Default for HullConfig {
    fn default() -> Self {
        HullConfig { max_vertices: 40 }
    }
}

/// A supporting hyperplane `normal · x = offset` with outward unit normal.
#[derive(Clone, Debug)]
pub struct Facet {
    pub normal: Vec<f64>,
    pub offset: f64,
    pub vertices: Vec<usize>,
}

impl Facet {
    /// Signed distance of `x` from the hyperplane, positive outside.
    pub fn eval(&self, x: &[f64]) -> f64 {
        linalg::dot(&self.normal, x) - self.offset
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    pub vertices: Vec<usize>,
    mask: u64,
}

impl Face {
    fn from_mask(mask: u64) -> Self {
        let vertices = (0..64).filter(|i| mask >> i & 1 == 1).collect();
        Face { vertices, mask }
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains(&self, other: &Face) -> bool {
        other.mask & !self.mask == 0
    }
}

/// `(dimension, index within that dimension)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FaceId {
    pub dim: isize,
    pub index: usize,
}

#[derive(Clone, Debug)]
pub struct FaceLattice {
    dim: usize,
    n_vertices: usize,
    faces: Vec<Vec<Face>>,
    // for each face, the indices (into the facet list) of the facets containing it
    facet_incidence: Vec<Vec<Vec<usize>>>,
}

impl FaceLattice {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Faces of dimension `i` for `-1 <= i <= d`.
    pub fn faces(&self, i: isize) -> &[Face] {
        if i < -1 || i > self.dim as isize {
            &[]
        } else {
            &self.faces[(i + 1) as usize]
        }
    }

    pub fn face(&self, id: FaceId) -> &Face {
        &self.faces[(id.dim + 1) as usize][id.index]
    }

    pub fn ids(&self, i: isize) -> impl Iterator<Item = FaceId> + '_ {
        (0..self.faces(i).len()).map(move |index| FaceId { dim: i, index })
    }

    /// Facet indices containing the face.
    pub fn facets_containing(&self, id: FaceId) -> &[usize] {
        &self.facet_incidence[(id.dim + 1) as usize][id.index]
    }

    pub fn f_vector(&self) -> FVector {
        let e = (-1..=self.dim as isize)
            .map(|i| self.faces(i).len() as i64)
            .collect();
        FVector::new(self.dim, e).expect("lattice f-vector")
    }

    /// Containment pairs `(lower, upper)` between ranks `i` and `i + 1`.
    pub fn incidence(&self, i: isize) -> Vec<(usize, usize)> {
        let lo = self.faces(i);
        let hi = self.faces(i + 1);
        let mut out = Vec::new();
        for (a, f) in lo.iter().enumerate() {
            for (b, g) in hi.iter().enumerate() {
                if g.contains(f) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Faces of dimension `j` contained in the given face.
    pub fn subfaces(&self, id: FaceId, j: isize) -> Vec<FaceId> {
        let f = self.face(id);
        self.ids(j).filter(|g| f.contains(self.face(*g))).collect()
    }

    /// Faces of dimension `j` containing the given face.
    pub fn superfaces(&self, id: FaceId, j: isize) -> Vec<FaceId> {
        let f = self.face(id);
        self.ids(j).filter(|g| self.face(*g).contains(f)).collect()
    }

    pub fn find(&self, vertices: &[usize]) -> Option<FaceId> {
        let mask = vertices.iter().fold(0u64, |m, &v| m | 1 << v);
        for i in -1..=self.dim as isize {
            if let Some(index) = self.faces(i).iter().position(|f| f.mask == mask) {
                return Some(FaceId { dim: i, index });
            }
        }
        None
    }
}

pub fn is_simplicial(l: &FaceLattice) -> bool {
    let d = l.dim() as isize;
    l.faces(d - 1).iter().all(|f| f.vertices.len() == l.dim())
}

/// Convex polytope as the hull of its vertices.
#[derive(Clone)]
pub struct VPolytope {
    dim: usize,
    exact: Option<Vec<Vec<BigRational>>>,
    exact_normals: Option<Vec<Vec<BigRational>>>,
    points: Vec<Vec<f64>>,
    facets: Vec<Facet>,
    lattice: FaceLattice,
    pub label: Option<String>,
}

impl fmt::Debug for VPolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VPolytope")
            .field("dim", &self.dim)
            .field("vertices", &self.points)
            .field("label", &self.label)
            .finish()
    }
}

impl VPolytope {
    /// Builds from a vertex list; every point must be a vertex of the hull.
    pub fn new(points: Vec<Vec<Scalar>>) -> Result<Self> {
        Self::build(points, HullConfig::default(), false)
    }

    /// Builds the hull of `points`, discarding points that are not vertices.
    pub fn hull(points: Vec<Vec<Scalar>>) -> Result<Self> {
        Self::build(points, HullConfig::default(), true)
    }

    pub fn hull_with(points: Vec<Vec<Scalar>>, cfg: HullConfig) -> Result<Self> {
        Self::build(points, cfg, true)
    }

    pub fn from_f64(points: Vec<Vec<f64>>) -> Result<Self> {
        Self::new(to_scalars(points))
    }

    pub fn hull_f64(points: Vec<Vec<f64>>) -> Result<Self> {
        Self::hull(to_scalars(points))
    }

    pub fn from_ints(points: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            points
                .iter()
                .map(|p| p.iter().map(|&x| Scalar::int(x)).collect())
                .collect(),
        )
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = Some(label.to_string());
        self
    }

    fn build(points: Vec<Vec<Scalar>>, cfg: HullConfig, prune: bool) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Degenerate("no points".into()));
        }
        let dim = points[0].len();
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::Dimension("points of mixed dimension".into()));
        }
        let limit = cfg.max_vertices.min(MAX_VERTICES_HARD);
        if points.len() > limit {
            return Err(Error::Budget(format!(
                "{} points exceed the enumeration guard of {limit}",
                points.len()
            )));
        }
        let all_exact = points.iter().all(|p| p.iter().all(Scalar::is_exact));
        if all_exact {
            let ex: Vec<Vec<BigRational>> = points
                .iter()
                .map(|p| p.iter().map(|x| x.as_rational().unwrap().clone()).collect())
                .collect();
            let (kept, facets, normals) = hull_generic(&ex, dim, prune)?;
            let ex: Vec<Vec<BigRational>> = kept.iter().map(|&i| ex[i].clone()).collect();
            let points: Vec<Vec<f64>> = ex
                .iter()
                .map(|p| p.iter().map(Field::to_f64).collect())
                .collect();
            let mut p = Self::assemble(dim, Some(ex), points, facets)?;
            p.exact_normals = Some(normals);
            Ok(p)
        } else {
            let fl: Vec<Vec<f64>> = points
                .iter()
                .map(|p| p.iter().map(Scalar::to_f64).collect())
                .collect();
            let (kept, facets, _) = hull_generic(&fl, dim, prune)?;
            let fl: Vec<Vec<f64>> = kept.iter().map(|&i| fl[i].clone()).collect();
            Self::assemble(dim, None, fl, facets)
        }
    }

    fn assemble(
        dim: usize,
        exact: Option<Vec<Vec<BigRational>>>,
        points: Vec<Vec<f64>>,
        facet_sets: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let facets: Vec<Facet> = facet_sets
            .into_iter()
            .map(|vs| float_hyperplane(&points, vs))
            .collect();
        let lattice = build_lattice(dim, points.len(), &facets);
        Ok(VPolytope {
            dim,
            exact,
            exact_normals: None,
            points,
            facets,
            lattice,
            label: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_vertices(&self) -> usize {
        self.points.len()
    }

    /// Vertex coordinates as floats.
    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.points
    }

    /// Exact coordinates when the polytope was built from rationals.
    pub fn exact_vertices(&self) -> Option<&[Vec<BigRational>]> {
        self.exact.as_deref()
    }

    pub fn scalar_vertices(&self) -> Vec<Vec<Scalar>> {
        match &self.exact {
            Some(ex) => ex
                .iter()
                .map(|p| p.iter().map(|x| Scalar::Exact(x.clone())).collect())
                .collect(),
            None => to_scalars(self.points.clone()),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// Outward facet normals in exact arithmetic (not normalized), same order as the facets.
    pub fn exact_normals(&self) -> Option<&[Vec<BigRational>]> {
        self.exact_normals.as_deref()
    }

    pub fn facet_list(&self) -> &[Facet] {
        &self.facets
    }

    pub fn lattice(&self) -> &FaceLattice {
        &self.lattice
    }

    /// Centroid of the vertices of a face.
    pub fn face_centroid(&self, id: FaceId) -> Vec<f64> {
        let f = self.lattice.face(id);
        let pts: Vec<&[f64]> = f.vertices.iter().map(|&v| self.points[v].as_slice()).collect();
        linalg::centroid(&pts)
    }

    pub fn centroid(&self) -> Vec<f64> {
        let pts: Vec<&[f64]> = self.points.iter().map(|p| p.as_slice()).collect();
        linalg::centroid(&pts)
    }

    /// Strict interior test against all facets.
    pub fn contains_strictly(&self, x: &[f64], tol: f64) -> bool {
        self.facets.iter().all(|f| f.eval(x) < -tol)
    }
}

fn to_scalars(points: Vec<Vec<f64>>) -> Vec<Vec<Scalar>> {
    points
        .into_iter()
        .map(|p| p.into_iter().map(Scalar::Float).collect())
        .collect()
}

/// Supporting hyperplanes of the input, as vertex-index sets.
pub fn facets(p: &VPolytope) -> Vec<(Facet, Vec<usize>)> {
    p.facets
        .iter()
        .map(|f| (f.clone(), f.vertices.clone()))
        .collect()
}

pub fn face_lattice(p: &VPolytope) -> FaceLattice {
    p.lattice.clone()
}

fn coord_scale<F: Field>(pts: &[Vec<F>]) -> f64 {
    pts.iter()
        .flat_map(|p| p.iter().map(Field::magnitude))
        .fold(0.0f64, f64::max)
        .max(1.0)
}

fn affine_rank<F: Field>(pts: &[Vec<F>], idx: &[usize]) -> usize {
    if idx.len() <= 1 {
        return 0;
    }
    let base = &pts[idx[0]];
    let rows: Vec<Vec<F>> = idx[1..]
        .iter()
        .map(|&i| pts[i].iter().zip(base).map(|(a, b)| a.sub(b)).collect())
        .collect();
    linalg::rank(&rows)
}

/// Returns the indices of the kept points and the facets as index sets into that kept list.
fn hull_generic<F: Field>(
    pts: &[Vec<F>],
    dim: usize,
    prune: bool,
) -> Result<(Vec<usize>, Vec<Vec<usize>>, Vec<Vec<F>>)> {
    let n = pts.len();
    // duplicates
    let scale = coord_scale(pts);
    for i in 0..n {
        for j in i + 1..n {
            if pts[i]
                .iter()
                .zip(&pts[j])
                .all(|(a, b)| a.sub(b).near_zero(scale * 1e-3))
            {
                return Err(Error::Degenerate(format!("duplicate points {i} and {j}")));
            }
        }
    }
    let all: Vec<usize> = (0..n).collect();
    if affine_rank(pts, &all) < dim {
        return Err(Error::Degenerate(format!(
            "affine span of the points is below dimension {dim}"
        )));
    }
    if dim == 0 {
        return Ok((vec![0], vec![], vec![]));
    }
    let (sets, normals) = facet_scan(pts, dim)?;
    // vertex test: normals of the facets through a point must span R^d
    let mut is_vertex = vec![false; n];
    for (v, flag) in is_vertex.iter_mut().enumerate() {
        let rows: Vec<Vec<F>> = sets
            .iter()
            .zip(&normals)
            .filter(|(s, _)| s.contains(&v))
            .map(|(_, nrm)| nrm.clone())
            .collect();
        *flag = linalg::rank(&rows) == dim;
    }
    if is_vertex.iter().all(|&b| b) {
        return Ok((all, sets, normals));
    }
    if !prune {
        let bad: Vec<usize> = (0..n).filter(|&v| !is_vertex[v]).collect();
        return Err(Error::Degenerate(format!(
            "points {bad:?} are not vertices of the hull"
        )));
    }
    let kept: Vec<usize> = (0..n).filter(|&v| is_vertex[v]).collect();
    let sub: Vec<Vec<F>> = kept.iter().map(|&i| pts[i].clone()).collect();
    let (sets, normals) = facet_scan(&sub, dim)?;
    Ok((kept, sets, normals))
}

// Facet vertex sets plus one normal per facet, by exhaustive d-subset scan.
fn facet_scan<F: Field>(pts: &[Vec<F>], dim: usize) -> Result<(Vec<Vec<usize>>, Vec<Vec<F>>)> {
    let n = pts.len();
    let scale = coord_scale(pts);
    let mut found_masks: Vec<u64> = Vec::new();
    let mut sets = Vec::new();
    let mut normals = Vec::new();
    let mut combo: Vec<usize> = (0..dim).collect();
    if dim > n {
        return Err(Error::Degenerate("fewer points than dimension".into()));
    }
    loop {
        let mask = combo.iter().fold(0u64, |m, &v| m | 1 << v);
        if !found_masks.iter().any(|&f| mask & !f == 0) {
            // hyperplane n·x - b = 0 through the subset
            let rows: Vec<Vec<F>> = combo
                .iter()
                .map(|&i| {
                    let mut r = pts[i].clone();
                    r.push(F::zero().sub(&F::one()));
                    r
                })
                .collect();
            let ns = linalg::nullspace(&rows, dim + 1);
            if ns.len() == 1 {
                let h = &ns[0];
                let normal: Vec<F> = h[..dim].to_vec();
                let nmag = normal.iter().map(|x| x.to_f64().powi(2)).sum::<f64>().sqrt();
                let offset = h[dim].clone();
                let vals: Vec<F> = pts
                    .iter()
                    .map(|p| {
                        let mut s = F::zero().sub(&offset);
                        for (a, b) in normal.iter().zip(p) {
                            s = s.add(&a.mul(b));
                        }
                        s
                    })
                    .collect();
                let tol_scale = nmag * scale;
                let mut pos = false;
                let mut neg = false;
                let mut on = 0u64;
                for (i, v) in vals.iter().enumerate() {
                    if v.near_zero(tol_scale) {
                        on |= 1 << i;
                    } else if v.to_f64() > 0.0 {
                        pos = true;
                    } else {
                        neg = true;
                    }
                }
                if !(pos && neg) {
                    found_masks.push(on);
                    sets.push((0..n).filter(|i| on >> i & 1 == 1).collect());
                    let outward = if pos {
                        normal.iter().map(|x| F::zero().sub(x)).collect()
                    } else {
                        normal
                    };
                    normals.push(outward);
                }
            }
        }
        // next combination
        let mut i = dim;
        loop {
            if i == 0 {
                return finish_scan(sets, normals, dim);
            }
            i -= 1;
            if combo[i] < n - dim + i {
                combo[i] += 1;
                for j in i + 1..dim {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn finish_scan<F: Field>(
    sets: Vec<Vec<usize>>,
    normals: Vec<Vec<F>>,
    dim: usize,
) -> Result<(Vec<Vec<usize>>, Vec<Vec<F>>)> {
    if sets.len() < dim + 1 {
        return Err(Error::Degenerate(format!(
            "found only {} facets in dimension {dim}",
            sets.len()
        )));
    }
    Ok((sets, normals))
}

// Recomputes a unit outward normal in floats from the facet's vertex set.
fn float_hyperplane(points: &[Vec<f64>], vs: Vec<usize>) -> Facet {
    let dim = points[0].len();
    let base = &points[vs[0]];
    let rows: Vec<Vec<f64>> = vs[1..]
        .iter()
        .map(|&i| linalg::sub(&points[i], base))
        .collect();
    let normal = if rows.is_empty() {
        vec![1.0]
    } else {
        let basis = linalg::orth_complement(&rows, dim);
        basis[0].clone()
    };
    let mut offset = linalg::dot(&normal, base);
    let mut normal = normal;
    // orient away from the centroid of all points
    let pts: Vec<&[f64]> = points.iter().map(|p| p.as_slice()).collect();
    let c = linalg::centroid(&pts);
    if linalg::dot(&normal, &c) - offset > 0.0 {
        normal = linalg::scale(&normal, -1.0);
        offset = -offset;
    }
    Facet {
        normal,
        offset,
        vertices: vs,
    }
}

fn build_lattice(dim: usize, n: usize, facets: &[Facet]) -> FaceLattice {
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let facet_masks: Vec<u64> = facets
        .iter()
        .map(|f| f.vertices.iter().fold(0u64, |m, &v| m | 1 << v))
        .collect();
    let mut seen: HashSet<u64> = HashSet::new();
    let mut order: Vec<u64> = Vec::new();
    seen.insert(full);
    order.push(full);
    for &m in &facet_masks {
        if seen.insert(m) {
            order.push(m);
        }
    }
    let mut k = 1;
    while k < order.len() {
        let f = order[k];
        for &g in &facet_masks {
            let h = f & g;
            if seen.insert(h) {
                order.push(h);
            }
        }
        k += 1;
    }
    if dim == 0 {
        seen.insert(0);
        order = vec![0, full];
    }
    if !order.contains(&0) {
        order.push(0);
    }
    // rank by longest chain from the empty face
    order.sort_by_key(|m| m.count_ones());
    let mut rank: HashMap<u64, isize> = HashMap::new();
    for &m in &order {
        let r = order
            .iter()
            .filter(|&&g| g != m && g & !m == 0)
            .map(|g| rank[g] + 1)
            .max()
            .unwrap_or(-1);
        rank.insert(m, r);
    }
    let mut faces: Vec<Vec<Face>> = vec![Vec::new(); dim + 2];
    for &m in &order {
        let r = rank[&m];
        faces[(r + 1) as usize].push(Face::from_mask(m));
    }
    for level in faces.iter_mut() {
        level.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    }
    let facet_incidence = faces
        .iter()
        .map(|level| {
            level
                .iter()
                .map(|f| {
                    facet_masks
                        .iter()
                        .enumerate()
                        .filter(|(_, &g)| f.mask & !g == 0)
                        .map(|(i, _)| i)
                        .collect()
                })
                .collect()
        })
        .collect();
    FaceLattice {
        dim,
        n_vertices: n,
        faces,
        facet_incidence,
    }
}

/// Standard test bodies.
pub mod shapes {
    use super::*;

    pub fn cube(d: usize) -> VPolytope {
        let pts: Vec<Vec<i64>> = (0..1u64 << d)
            .map(|m| (0..d).map(|i| (m >> i & 1) as i64).collect())
            .collect();
        VPolytope::from_ints(&pts).unwrap().with_label("cube")
    }

    /// Standard simplex `conv(0, e_1, ..., e_d)`.
    pub fn simplex(d: usize) -> VPolytope {
        let mut pts = vec![vec![0i64; d]];
        for i in 0..d {
            let mut p = vec![0; d];
            p[i] = 1;
            pts.push(p);
        }
        VPolytope::from_ints(&pts).unwrap().with_label("simplex")
    }

    pub fn cross_polytope(d: usize) -> VPolytope {
        let mut pts = Vec::new();
        for i in 0..d {
            for s in [1i64, -1] {
                let mut p = vec![0; d];
                p[i] = s;
                pts.push(p);
            }
        }
        VPolytope::from_ints(&pts).unwrap().with_label("cross-polytope")
    }

    /// Regular tetrahedron on alternate cube vertices.
    pub fn regular_tetrahedron() -> VPolytope {
        VPolytope::from_ints(&[
            vec![1, 1, 1],
            vec![1, -1, -1],
            vec![-1, 1, -1],
            vec![-1, -1, 1],
        ])
        .unwrap()
        .with_label("regular tetrahedron")
    }

    pub fn square_pyramid() -> VPolytope {
        VPolytope::from_ints(&[
            vec![0, 0, 0],
            vec![2, 0, 0],
            vec![2, 2, 0],
            vec![0, 2, 0],
            vec![1, 1, 1],
        ])
        .unwrap()
        .with_label("square pyramid")
    }
}

#[cfg(test)]
mod tests {
    use super::shapes::*;
    use super::*;

    #[test]
    fn cube_lattice() {
        let c = cube(3);
        assert_eq!(c.facet_list().len(), 6);
        assert_eq!(c.lattice().f_vector().entries(), &[1, 8, 12, 6, 1]);
        assert!(!is_simplicial(c.lattice()));
    }

    #[test]
    fn simplex_lattice() {
        for d in 1..=5 {
            let s = simplex(d);
            let f = s.lattice().f_vector();
            for i in -1..=d as isize {
                assert_eq!(
                    f.get(i) as i128,
                    crate::scalar::binom(d as i64 + 1, i as i64 + 1)
                );
            }
            assert!(is_simplicial(s.lattice()));
        }
    }

    #[test]
    fn segment_and_point() {
        let s = VPolytope::from_ints(&[vec![0], vec![3]]).unwrap();
        assert_eq!(s.lattice().f_vector().entries(), &[1, 2, 1]);
        let p = VPolytope::new(vec![vec![]]).unwrap();
        assert_eq!(p.lattice().f_vector().entries(), &[1, 1]);
    }

    #[test]
    fn square_pyramid_facets() {
        let p = square_pyramid();
        assert_eq!(p.facet_list().len(), 5);
        assert_eq!(p.lattice().f_vector().entries(), &[1, 5, 8, 5, 1]);
    }

    #[test]
    fn octahedron_is_simplicial() {
        let o = cross_polytope(3);
        assert!(is_simplicial(o.lattice()));
        assert_eq!(o.lattice().f_vector().entries(), &[1, 6, 12, 8, 1]);
    }

    #[test]
    fn hull_prunes_interior_and_edge_points() {
        let mut pts: Vec<Vec<f64>> = cube(3)
            .vertices()
            .to_vec();
        pts.push(vec![0.5, 0.5, 0.5]);
        pts.push(vec![0.5, 0.0, 0.0]);
        pts.push(vec![0.5, 0.5, 1.0]);
        let h = VPolytope::hull_f64(pts.clone()).unwrap();
        assert_eq!(h.n_vertices(), 8);
        assert!(VPolytope::from_f64(pts).is_err());
    }

    #[test]
    fn rejects_degenerate() {
        let flat = VPolytope::from_ints(&[vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]);
        assert!(matches!(flat, Err(Error::Degenerate(_))));
        let dup = VPolytope::from_ints(&[vec![0], vec![0], vec![1]]);
        assert!(dup.is_err());
    }

    #[test]
    fn float_cube_matches_exact() {
        let pts: Vec<Vec<f64>> = cube(4).vertices().iter().map(|p| p.iter().map(|x| x * 0.3 + 0.1).collect()).collect();
        let c = VPolytope::from_f64(pts).unwrap();
        assert_eq!(c.lattice().f_vector().entries(), &[1, 16, 32, 24, 8, 1]);
    }

    #[test]
    fn incidence_counts() {
        let c = cube(3);
        // each edge has 2 vertices
        assert_eq!(c.lattice().incidence(0).len(), 24);
        // simple polytope: each vertex lies on exactly 3 facets
        for id in c.lattice().ids(0) {
            assert_eq!(c.lattice().facets_containing(id).len(), 3);
        }
    }
}
