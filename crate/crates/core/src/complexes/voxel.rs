//! Exact cubical complexes on the integer lattice.
//!
//! A cell `x ∈ Z^d` names the unit cube `[x, x+1]^d`. A lattice face is a base
//! point together with the set of axes it spans; its angle in the complex is
//! the fraction of the `2^{d−i}` surrounding cells that belong to the complex.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::vectors::{angle_char, AlphaFVector, AlphaVector, FVector};

pub type Cell = Vec<i64>;

/// Cells are limited to this many dimensions so incidence patterns fit a `u64`.
pub const MAX_DIM: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoxelComplex {
    d: usize,
    cells: BTreeSet<Cell>,
    pub label: String,
}

/// An `i`-dimensional unit cube of the lattice: `base + [0,1]^dirs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeFace {
    pub base: Vec<i64>,
    pub dirs: u32,
}

impl LatticeFace {
    pub fn point(p: Vec<i64>) -> Self {
        LatticeFace { base: p, dirs: 0 }
    }

    pub fn dim(&self) -> usize {
        self.dirs.count_ones() as usize
    }

    fn normal_axes(&self, d: usize) -> Vec<usize> {
        (0..d).filter(|a| self.dirs >> a & 1 == 0).collect()
    }

    /// The cell in orthant `s` around the face: bit `j` of `s` says whether
    /// the cell lies on the positive side of the `j`-th normal axis.
    fn cell_at(&self, normals: &[usize], s: u64) -> Cell {
        let mut c = self.base.clone();
        for (j, &a) in normals.iter().enumerate() {
            if s >> j & 1 == 0 {
                c[a] -= 1;
            }
        }
        c
    }

    /// Corner points of the face.
    pub fn corners(&self) -> Vec<Vec<i64>> {
        let dirs: Vec<usize> = (0..self.base.len()).filter(|a| self.dirs >> a & 1 == 1).collect();
        (0..1u64 << dirs.len())
            .map(|m| {
                let mut p = self.base.clone();
                for (j, &a) in dirs.iter().enumerate() {
                    p[a] += (m >> j & 1) as i64;
                }
                p
            })
            .collect()
    }

    /// Faces of one dimension lower.
    pub fn facets(&self) -> Vec<LatticeFace> {
        let mut out = Vec::new();
        for a in 0..self.base.len() {
            if self.dirs >> a & 1 == 1 {
                let dirs = self.dirs & !(1 << a);
                out.push(LatticeFace { base: self.base.clone(), dirs });
                let mut b = self.base.clone();
                b[a] += 1;
                out.push(LatticeFace { base: b, dirs });
            }
        }
        out
    }
}

/// A boundary lattice face with the orthants around it that are filled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryFace {
    pub face: LatticeFace,
    pub pattern: u64,
    pub count: u32,
    /// Number of orthants, `2^{d−i}`.
    pub total: u32,
}

impl BoundaryFace {
    pub fn alpha(&self) -> Scalar {
        Scalar::ratio(self.count as i64, self.total as i64)
    }
}

/// A maximal connected coplanar region of the boundary with constant angle.
#[derive(Clone, Debug, PartialEq)]
pub struct Flat {
    pub dim: usize,
    /// Axes spanned by the flat.
    pub lineality: u32,
    pub alpha: Scalar,
    /// `Σ (−1)^{dim}` over the lattice faces of the open flat.
    pub chi_c: i64,
    /// Euler characteristic of the open flat, `(−1)^{dim} χ_c`.
    pub chi_int: i64,
    /// Lattice faces making up the flat.
    pub faces: Vec<LatticeFace>,
}

fn sgn(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

fn neighbours(c: &[i64]) -> impl Iterator<Item = Cell> + '_ {
    (0..c.len()).flat_map(move |a| {
        [-1i64, 1].into_iter().map(move |s| {
            let mut n = c.to_vec();
            n[a] += s;
            n
        })
    })
}

impl VoxelComplex {
    pub fn new(d: usize, cells: impl IntoIterator<Item = Cell>) -> Result<Self> {
        if d == 0 || d > MAX_DIM {
            return Err(Error::Dimension(format!("voxel complexes need 1 ≤ d ≤ {MAX_DIM}, got {d}")));
        }
        let cells: BTreeSet<Cell> = cells.into_iter().collect();
        if cells.is_empty() {
            return Err(Error::Invalid("a voxel complex needs at least one cell".into()));
        }
        if let Some(bad) = cells.iter().find(|c| c.len() != d) {
            return Err(Error::Dimension(format!("cell {bad:?} does not have {d} coordinates")));
        }
        let v = VoxelComplex { d, cells, label: String::new() };
        if !v.is_strongly_connected() {
            return Err(Error::Invalid("cells are not connected through shared facets".into()));
        }
        Ok(v)
    }

    pub(crate) fn unchecked(d: usize, cells: BTreeSet<Cell>, label: &str) -> Self {
        VoxelComplex { d, cells, label: label.into() }
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = label.into();
        self
    }

    /// The unit cube `[0,1]^d`.
    pub fn cube(d: usize) -> Self {
        VoxelComplex::unchecked(d, [vec![0; d]].into(), "cube")
    }

    /// The box `[0,n_1] × ... × [0,n_d]` filled with unit cells.
    pub fn block(dims: &[i64]) -> Result<Self> {
        if dims.iter().any(|&n| n < 1) {
            return Err(Error::Invalid(format!("block sides must be positive: {dims:?}")));
        }
        let mut cells = vec![vec![]];
        for &n in dims {
            cells = cells
                .into_iter()
                .flat_map(|c: Vec<i64>| {
                    (0..n).map(move |x| {
                        let mut c = c.clone();
                        c.push(x);
                        c
                    })
                })
                .collect();
        }
        VoxelComplex::new(dims.len(), cells)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn cells(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: &[i64]) -> bool {
        self.cells.contains(c)
    }

    pub fn is_strongly_connected(&self) -> bool {
        let Some(start) = self.cells.iter().next() else { return false };
        let mut seen: BTreeSet<&Cell> = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(c) = queue.pop_front() {
            for n in neighbours(&c) {
                if let Some(k) = self.cells.get(&n) {
                    if seen.insert(k) {
                        queue.push_back(n);
                    }
                }
            }
        }
        seen.len() == self.cells.len()
    }

    /// Same cells, shifted.
    pub fn translate(&self, by: &[i64]) -> Self {
        let cells = self
            .cells
            .iter()
            .map(|c| c.iter().zip(by).map(|(x, t)| x + t).collect())
            .collect();
        VoxelComplex::unchecked(self.d, cells, &self.label)
    }

    /// Adds or removes single cells, rechecking connectivity.
    pub fn with_cells(&self, add: &[Cell], remove: &[Cell]) -> Result<Self> {
        let mut cells = self.cells.clone();
        for c in remove {
            cells.remove(c);
        }
        cells.extend(add.iter().cloned());
        Ok(VoxelComplex::new(self.d, cells)?.with_label(&self.label))
    }

    /// Incidence pattern of a lattice face: bit `s` set when the cell in
    /// orthant `s` is present.
    pub fn pattern(&self, face: &LatticeFace) -> (u64, u32) {
        let normals = face.normal_axes(self.d);
        let total = 1u64 << normals.len();
        let mut pat = 0u64;
        for s in 0..total {
            if self.cells.contains(&face.cell_at(&normals, s)) {
                pat |= 1 << s;
            }
        }
        (pat, total as u32)
    }

    /// All lattice faces of all cells, each once.
    pub fn all_faces(&self) -> BTreeSet<LatticeFace> {
        let d = self.d;
        let mut out = BTreeSet::new();
        for c in &self.cells {
            for dirs in 0u32..(1 << d) {
                let normals: Vec<usize> = (0..d).filter(|a| dirs >> a & 1 == 0).collect();
                for eps in 0u64..(1 << normals.len()) {
                    let mut base = c.clone();
                    for (j, &a) in normals.iter().enumerate() {
                        base[a] += (eps >> j & 1) as i64;
                    }
                    out.insert(LatticeFace { base, dirs });
                }
            }
        }
        out
    }

    /// Lattice faces incident to between 1 and `2^{d−i} − 1` cells, sorted.
    pub fn boundary_faces(&self) -> Vec<BoundaryFace> {
        let faces: Vec<LatticeFace> = self.all_faces().into_iter().collect();
        faces
            .into_par_iter()
            .filter_map(|face| {
                let (pattern, total) = self.pattern(&face);
                let count = pattern.count_ones();
                (count < total).then_some(BoundaryFace { face, pattern, count, total })
            })
            .collect()
    }

    /// Per-face angle sums over the unit lattice, `α_{-1}..α_d` with `α_d` the cell count.
    pub fn lattice_alpha(&self) -> AlphaVector {
        let d = self.d;
        let mut a = vec![Scalar::zero(); d + 2];
        for b in self.boundary_faces() {
            a[b.face.dim() + 1] += b.alpha();
        }
        a[d + 1] = Scalar::int(self.cells.len() as i64);
        AlphaVector::new(d, a).expect("voxel alpha length")
    }

    /// Boundary face counts over the unit lattice; `f_d` is the cell count.
    pub fn lattice_boundary_f(&self) -> FVector {
        let d = self.d;
        let mut f = vec![0i64; d + 2];
        f[0] = 1;
        for b in self.boundary_faces() {
            f[b.face.dim() + 1] += 1;
        }
        f[d + 1] = self.cells.len() as i64;
        FVector::new(d, f).expect("voxel f length")
    }

    /// Groups boundary faces into flats.
    pub fn flats(&self) -> Vec<Flat> {
        let d = self.d;
        let bfaces = self.boundary_faces();
        let index: HashMap<&LatticeFace, usize> = bfaces.iter().enumerate().map(|(i, b)| (&b.face, i)).collect();
        let keys: Vec<(u32, Vec<i64>, u64)> = bfaces.iter().map(|b| flat_key(d, b)).collect();

        let mut parent: Vec<usize> = (0..bfaces.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (i, b) in bfaces.iter().enumerate() {
            for g in b.face.facets() {
                if let Some(&j) = index.get(&g) {
                    if keys[i] == keys[j] {
                        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                        if ri != rj {
                            parent[ri] = rj;
                        }
                    }
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..bfaces.len() {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        let mut out: Vec<Flat> = groups
            .into_values()
            .map(|members| {
                let lineality = keys[members[0]].0;
                let dim = lineality.count_ones() as usize;
                let chi_c = members.iter().map(|&i| sgn(bfaces[i].face.dim())).sum::<i64>();
                Flat {
                    dim,
                    lineality,
                    alpha: bfaces[members[0]].alpha(),
                    chi_c,
                    chi_int: sgn(dim) * chi_c,
                    faces: members.iter().map(|&i| bfaces[i].face.clone()).collect(),
                }
            })
            .collect();
        out.sort_by(|a, b| (a.dim, &a.faces[0]).cmp(&(b.dim, &b.faces[0])));
        out
    }

    /// `χ_α` recomposed from flats: `Σ α(F) χ_c(int F)`.
    pub fn flats_chi_alpha(&self) -> Scalar {
        self.flats().iter().map(|f| &f.alpha * &Scalar::int(f.chi_c)).sum()
    }

    /// Face counts of the coarse cell structure whose cells are convex pieces
    /// of the flats. Only defined for `d ≤ 3`.
    pub fn coarse(&self) -> Option<AlphaFVector> {
        let d = self.d;
        if d > 3 {
            return None;
        }
        let flats = self.flats();
        let mut owner: HashMap<&LatticeFace, usize> = HashMap::new();
        for (i, fl) in flats.iter().enumerate() {
            for f in &fl.faces {
                owner.insert(f, i);
            }
        }
        let mut a = vec![Scalar::zero(); d + 2];
        let mut f = vec![0i64; d + 2];
        f[0] = 1;
        let mut reflex_total = 0i64;
        for (i, fl) in flats.iter().enumerate() {
            let (cells, extra_edges) = match fl.dim {
                0 | 1 => (1, 0),
                _ => {
                    let r = reflex_corners(fl, i, &owner);
                    (r + fl.chi_c, r)
                }
            };
            f[fl.dim + 1] += cells;
            a[fl.dim + 1] += &fl.alpha * &Scalar::int(cells);
            reflex_total += extra_edges;
        }
        if d == 3 {
            f[2] += reflex_total;
            a[2] += Scalar::ratio(reflex_total, 2);
        }
        a[d + 1] = Scalar::int(self.cells.len() as i64);
        f[d + 1] = self.cells.len() as i64;
        let alpha = AlphaVector::new(d, a).ok()?;
        let f = FVector::new(d, f).ok()?;
        AlphaFVector::new(alpha, f).ok()
    }

    /// Coarse counts for `d ≤ 3`, lattice counts above.
    pub fn alpha_f(&self) -> AlphaFVector {
        self.coarse().unwrap_or_else(|| {
            AlphaFVector::new(self.lattice_alpha(), self.lattice_boundary_f()).expect("lattice vectors agree")
        })
    }

    pub fn chi_alpha(&self) -> Scalar {
        angle_char(&self.lattice_alpha())
    }

    pub fn chi_boundary(&self) -> i64 {
        self.boundary_faces().iter().map(|b| sgn(b.face.dim())).sum()
    }

    /// Connected components of the boundary, each with its own characteristics.
    pub fn boundary_components(&self) -> Vec<BoundaryComponent> {
        let bfaces = self.boundary_faces();
        let index: HashMap<&LatticeFace, usize> = bfaces.iter().enumerate().map(|(i, b)| (&b.face, i)).collect();
        let mut parent: Vec<usize> = (0..bfaces.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (i, b) in bfaces.iter().enumerate() {
            for g in b.face.facets() {
                if let Some(&j) = index.get(&g) {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    if ri != rj {
                        parent[ri] = rj;
                    }
                }
            }
        }
        let mut groups: BTreeMap<usize, BoundaryComponent> = BTreeMap::new();
        for (i, b) in bfaces.iter().enumerate() {
            let r = find(&mut parent, i);
            let g = groups.entry(r).or_insert_with(|| BoundaryComponent {
                f: vec![0; self.d],
                chi: 0,
                chi_alpha: Scalar::zero(),
            });
            let k = b.face.dim();
            g.f[k] += 1;
            g.chi += sgn(k);
            g.chi_alpha += Scalar::int(sgn(k)) * b.alpha();
        }
        let mut out: Vec<BoundaryComponent> = groups.into_values().collect();
        out.sort_by(|a, b| b.f.cmp(&a.f));
        out
    }

    /// Splits every cell into `2^d` cells of half the size (coordinates doubled).
    pub fn refine(&self) -> Self {
        let d = self.d;
        let mut cells = BTreeSet::new();
        for c in &self.cells {
            for m in 0u32..(1 << d) {
                cells.insert((0..d).map(|a| 2 * c[a] + (m >> a & 1) as i64).collect());
            }
        }
        VoxelComplex::unchecked(d, cells, &self.label)
    }

    /// Text form: a `dim d` header then one cell per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if !self.label.is_empty() {
            s.push_str(&format!("# {}\n", self.label));
        }
        s.push_str(&format!("dim {}\n", self.d));
        for c in &self.cells {
            let row: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryComponent {
    /// Lattice face counts `f_0..f_{d−1}` of the component.
    pub f: Vec<i64>,
    pub chi: i64,
    pub chi_alpha: Scalar,
}

// Flat key: lineality axes, coordinates across them, and the pattern reduced
// to the normal axes that are not lineality directions.
fn flat_key(d: usize, b: &BoundaryFace) -> (u32, Vec<i64>, u64) {
    let normals = b.face.normal_axes(d);
    let mut lin = b.face.dirs;
    let mut lin_bits = 0u64;
    for (j, &a) in normals.iter().enumerate() {
        let flip = flip_pattern(b.pattern, j, normals.len());
        if flip == b.pattern {
            lin |= 1 << a;
            lin_bits |= 1 << j;
        }
    }
    let coords = (0..d).filter(|a| lin >> a & 1 == 0).map(|a| b.face.base[a]).collect();
    let mut reduced = 0u64;
    let mut k = 0;
    for s in 0..(1u64 << normals.len()) {
        if s & lin_bits == 0 {
            if b.pattern >> s & 1 == 1 {
                reduced |= 1 << k;
            }
            k += 1;
        }
    }
    (lin, coords, reduced)
}

fn flip_pattern(p: u64, j: usize, n: usize) -> u64 {
    let mut out = 0;
    for s in 0..(1u64 << n) {
        if p >> s & 1 == 1 {
            out |= 1 << (s ^ (1 << j));
        }
    }
    out
}

// Reflex corners of a 2-flat: lattice points in its closure but outside it,
// weighted 1 when three of the four coplanar squares belong to the flat and 2
// when all four do.
fn reflex_corners(fl: &Flat, id: usize, owner: &HashMap<&LatticeFace, usize>) -> i64 {
    let axes: Vec<usize> = (0..32).filter(|a| fl.lineality >> a & 1 == 1).collect();
    let (x, y) = (axes[0], axes[1]);
    let squares: BTreeSet<&LatticeFace> = fl.faces.iter().filter(|f| f.dim() == 2).collect();
    let mut corners: BTreeSet<Vec<i64>> = BTreeSet::new();
    for s in &squares {
        corners.extend(s.corners());
    }
    let mut r = 0;
    for p in corners {
        let pf = LatticeFace::point(p.clone());
        if owner.get(&pf) == Some(&id) {
            continue;
        }
        let mut k = 0;
        for (dx, dy) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            let mut b = p.clone();
            b[x] -= dx;
            b[y] -= dy;
            let sq = LatticeFace { base: b, dirs: fl.lineality };
            if squares.contains(&sq) {
                k += 1;
            }
        }
        r += match k {
            3 => 1,
            4 => 2,
            _ => 0,
        };
    }
    r
}

impl fmt::Display for VoxelComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = if self.label.is_empty() { "voxels" } else { &self.label };
        write!(f, "{name} (d = {}, {} cells)", self.d, self.cells.len())
    }
}

impl FromStr for VoxelComplex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut d = None;
        let mut label = String::new();
        let mut cells = Vec::new();
        for (n, raw) in s.lines().enumerate() {
            let (line, comment) = match raw.find('#') {
                Some(i) => (&raw[..i], Some(raw[i + 1..].trim())),
                None => (raw, None),
            };
            if let (true, Some(c)) = (label.is_empty() && d.is_none(), comment) {
                label = c.to_string();
            }
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: String| Error::Parse(format!("line {}: {m}", n + 1));
            match d {
                None => {
                    let rest = line
                        .strip_prefix("dim")
                        .ok_or_else(|| err("expected header `dim d`".into()))?;
                    d = Some(rest.trim().parse::<usize>().map_err(|e| err(e.to_string()))?);
                }
                Some(d) => {
                    let c: Vec<i64> = line
                        .split_whitespace()
                        .map(|t| t.parse::<i64>().map_err(|e| err(format!("{t:?}: {e}"))))
                        .collect::<Result<_>>()?;
                    if c.len() != d {
                        return Err(err(format!("expected {d} coordinates, found {}", c.len())));
                    }
                    cells.push(c);
                }
            }
        }
        let d = d.ok_or_else(|| Error::Parse("missing `dim d` header".into()))?;
        Ok(VoxelComplex::new(d, cells)?.with_label(&label))
    }
}

pub fn voxel_alpha(v: &VoxelComplex) -> AlphaVector {
    v.alpha_f().alpha
}

pub fn boundary_f(v: &VoxelComplex) -> FVector {
    v.alpha_f().f
}

pub fn refine(v: &VoxelComplex) -> VoxelComplex {
    v.refine()
}

pub fn flats(v: &VoxelComplex) -> Vec<Flat> {
    v.flats()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> VoxelComplex {
        let cells = (0..3)
            .flat_map(|x| (0..3).map(move |y| vec![x, y, 0]))
            .filter(|c| c != &vec![1, 1, 0]);
        VoxelComplex::new(3, cells).unwrap()
    }

    fn ints(a: &AlphaVector) -> Vec<Scalar> {
        a.entries().to_vec()
    }

    #[test]
    fn cube_counts() {
        let c = VoxelComplex::cube(3);
        let af = c.alpha_f();
        assert_eq!(ints(&af.alpha)[1..4], [Scalar::one(), Scalar::int(3), Scalar::int(3)]);
        assert_eq!(af.f.entries(), &[1, 8, 12, 6, 1]);
        assert_eq!(c.lattice_alpha(), af.alpha);
        assert_eq!(c.chi_alpha(), Scalar::one());
        assert_eq!(c.chi_boundary(), 2);
    }

    #[test]
    fn torus_ring() {
        let t = ring();
        let af = t.alpha_f();
        assert_eq!(ints(&af.alpha)[1..4], [Scalar::int(4), Scalar::int(12), Scalar::int(8)]);
        assert_eq!(&af.f.entries()[1..4], &[16, 32, 16]);
        assert_eq!(t.chi_alpha(), Scalar::zero());
        assert_eq!(t.chi_boundary(), 0);
        // the lattice reading differs but has the same characteristic
        assert_eq!(t.lattice_alpha().get(0), Scalar::int(8));
    }

    #[test]
    fn flats_of_cube_and_ring() {
        let fl = VoxelComplex::cube(3).flats();
        let by_dim = |k| fl.iter().filter(|f| f.dim == k).count();
        assert_eq!((by_dim(0), by_dim(1), by_dim(2)), (8, 12, 6));
        assert_eq!(VoxelComplex::cube(3).refine().flats().len(), 26);
        assert_eq!(VoxelComplex::cube(3).refine().flats_chi_alpha(), Scalar::one());
        let t = ring().flats();
        let rings: Vec<&Flat> = t.iter().filter(|f| f.dim == 2 && f.faces.len() == 16).collect();
        assert_eq!(rings.len(), 2);
        assert!(rings.iter().all(|f| f.chi_int == 0));
        assert_eq!(ring().flats_chi_alpha(), Scalar::zero());
    }

    #[test]
    fn refinement_keeps_characteristics() {
        for v in [VoxelComplex::cube(3), ring(), VoxelComplex::cube(2)] {
            let r = v.refine();
            assert_eq!(r.len(), v.len() << v.dim());
            assert_eq!(r.chi_alpha(), v.chi_alpha());
            assert_eq!(r.chi_boundary(), v.chi_boundary());
            assert_eq!(r.coarse(), v.coarse().map(|af| {
                let mut f = af.f.entries().to_vec();
                let mut a = af.alpha.entries().to_vec();
                let last = f.len() - 1;
                f[last] *= 1 << v.dim();
                a[last] = Scalar::int(f[last]);
                AlphaFVector::new(AlphaVector::new(v.dim(), a).unwrap(), FVector::new(v.dim(), f).unwrap()).unwrap()
            }));
        }
    }

    #[test]
    fn square_in_the_plane() {
        let s = VoxelComplex::cube(2);
        assert_eq!(s.chi_alpha(), Scalar::int(-1));
        assert_eq!(s.alpha_f().f.entries(), &[1, 4, 4, 1]);
    }

    #[test]
    fn disconnected_input_is_rejected() {
        assert!(VoxelComplex::new(2, vec![vec![0, 0], vec![1, 1]]).is_err());
        assert!(VoxelComplex::new(2, Vec::<Cell>::new()).is_err());
    }

    #[test]
    fn text_round_trip() {
        let t = ring().with_label("torus");
        let back: VoxelComplex = t.to_text().parse().unwrap();
        assert_eq!(back, t);
        assert!("dim 2\n0 0 0\n".parse::<VoxelComplex>().is_err());
        assert!("0 0\n".parse::<VoxelComplex>().is_err());
    }
}
