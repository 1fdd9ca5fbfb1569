//! Prism, pyramid (finite, flat and infinitely tall), bipyramid and stellar
//! subdivision, on α/f/γ/h-vectors and on actual vertex sets.

use num_rational::BigRational;
use num_traits::One;
use std::fmt;
use std::str::FromStr;

use crate::angles::{angle_sums, SamplingConfig};
use crate::error::{Error, Result};
use crate::facelattice::{is_simplicial, FaceId, VPolytope};
use crate::linalg;
use crate::scalar::{binom_s, Scalar};
use crate::vectors::{AlphaFVector, AlphaVector, FVector, GammaVector, HVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base {
    Point,
    Segment,
    Triangle,
    Square,
}

impl Base {
    pub fn dim(&self) -> usize {
        match self {
            Base::Point => 0,
            Base::Segment => 1,
            Base::Triangle | Base::Square => 2,
        }
    }

    pub fn alpha_f(&self) -> AlphaFVector {
        let (d, a, f): (usize, Vec<Scalar>, Vec<i64>) = match self {
            Base::Point => (0, vec![], vec![]),
            Base::Segment => (1, vec![Scalar::one()], vec![2]),
            Base::Triangle => (2, vec![Scalar::ratio(1, 2), Scalar::ratio(3, 2)], vec![3, 3]),
            Base::Square => (2, vec![Scalar::one(), Scalar::int(2)], vec![4, 4]),
        };
        AlphaFVector::euclidean(d, a, &f).expect("base vectors")
    }

    pub fn polytope(&self) -> VPolytope {
        let pts: Vec<Vec<i64>> = match self {
            Base::Point => vec![vec![]],
            Base::Segment => vec![vec![0], vec![1]],
            Base::Triangle => vec![vec![0, 0], vec![1, 0], vec![0, 1]],
            Base::Square => vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 1]],
        };
        VPolytope::from_ints(&pts).expect("base polytope")
    }

    fn name(&self) -> &'static str {
        match self {
            Base::Point => "point",
            Base::Segment => "seg",
            Base::Triangle => "tri",
            Base::Square => "sq",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Op {
    Prism,
    Pyr(Scalar),
    Pyr0,
    PyrInf,
    Stellar(usize),
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::Prism => write!(f, "B*"),
            Op::Pyr(h) => write!(f, "P[{h}]"),
            Op::Pyr0 => write!(f, "P0"),
            Op::PyrInf => write!(f, "Pinf"),
            Op::Stellar(j) => write!(f, "St[{j}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ConstructionExpr {
    Base(Base),
    Prism(Box<ConstructionExpr>),
    Pyr(Box<ConstructionExpr>, Scalar),
    Pyr0(Box<ConstructionExpr>),
    PyrInf(Box<ConstructionExpr>),
    Stellar(Box<ConstructionExpr>, usize),
    Power(Op, u32, Box<ConstructionExpr>),
}

use ConstructionExpr as E;

impl ConstructionExpr {
    pub fn apply(op: &Op, e: ConstructionExpr) -> ConstructionExpr {
        match op {
            Op::Prism => E::Prism(Box::new(e)),
            Op::Pyr(h) => E::Pyr(Box::new(e), h.clone()),
            Op::Pyr0 => E::Pyr0(Box::new(e)),
            Op::PyrInf => E::PyrInf(Box::new(e)),
            Op::Stellar(j) => E::Stellar(Box::new(e), *j),
        }
    }

    pub fn power(op: Op, k: u32, e: ConstructionExpr) -> ConstructionExpr {
        E::Power(op, k, Box::new(e))
    }

    pub fn dim(&self) -> usize {
        match self {
            E::Base(b) => b.dim(),
            E::Prism(e) | E::Pyr(e, _) | E::Pyr0(e) | E::PyrInf(e) => e.dim() + 1,
            E::Stellar(e, _) => e.dim(),
            E::Power(op, k, e) => match op {
                Op::Stellar(_) => e.dim(),
                _ => e.dim() + *k as usize,
            },
        }
    }

    /// True when some node is a limiting pyramid without geometry.
    pub fn is_limiting(&self) -> bool {
        match self {
            E::Base(_) => false,
            E::Pyr0(_) | E::PyrInf(_) => true,
            E::Power(Op::Pyr0 | Op::PyrInf, k, e) => *k > 0 || e.is_limiting(),
            E::Prism(e) | E::Pyr(e, _) | E::Stellar(e, _) | E::Power(_, _, e) => e.is_limiting(),
        }
    }

    /// Whether the result is simplicial, read off the expression so that
    /// limiting constructions without a realization still get an answer.
    pub fn is_simplicial(&self) -> bool {
        self.unrolled().shape().1
    }

    // (is a simplex, is simplicial) for an unrolled expression
    fn shape(&self) -> (bool, bool) {
        let polygon = self.dim() <= 2;
        match self {
            E::Base(b) => (*b != Base::Square, true),
            E::Prism(e) => (e.dim() == 0, polygon),
            E::Pyr(e, _) | E::Pyr0(e) | E::PyrInf(e) => {
                let s = e.shape().0;
                (s, s || polygon)
            }
            E::Stellar(e, _) => (false, e.shape().1),
            E::Power(..) => unreachable!("unrolled"),
        }
    }

    /// Single-step form: `Power` unrolled into nested applications.
    pub fn unrolled(&self) -> ConstructionExpr {
        match self {
            E::Base(b) => E::Base(*b),
            E::Prism(e) => E::Prism(Box::new(e.unrolled())),
            E::Pyr(e, h) => E::Pyr(Box::new(e.unrolled()), h.clone()),
            E::Pyr0(e) => E::Pyr0(Box::new(e.unrolled())),
            E::PyrInf(e) => E::PyrInf(Box::new(e.unrolled())),
            E::Stellar(e, j) => E::Stellar(Box::new(e.unrolled()), *j),
            E::Power(op, k, e) => {
                let mut cur = e.unrolled();
                for _ in 0..*k {
                    cur = ConstructionExpr::apply(op, cur);
                }
                cur
            }
        }
    }
}

impl fmt::Display for ConstructionExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            E::Base(b) => write!(f, "{}", b.name()),
            E::Prism(e) => write!(f, "B* {e}"),
            E::Pyr(e, h) => write!(f, "P[{h}] {e}"),
            E::Pyr0(e) => write!(f, "P0 {e}"),
            E::PyrInf(e) => write!(f, "Pinf {e}"),
            E::Stellar(e, j) => write!(f, "St[{j}] {e}"),
            E::Power(op, k, e) => write!(f, "{op}^{k} {e}"),
        }
    }
}

fn parse_op(tok: &str) -> Result<Op> {
    let bracket = |prefix: &str| -> Option<&str> {
        tok.strip_prefix(prefix)
            .and_then(|r| r.strip_prefix('['))
            .and_then(|r| r.strip_suffix(']'))
    };
    match tok {
        "B*" => return Ok(Op::Prism),
        "P0" => return Ok(Op::Pyr0),
        "Pinf" => return Ok(Op::PyrInf),
        _ => {}
    }
    if let Some(h) = bracket("P") {
        let h = Scalar::parse(h).ok_or_else(|| Error::Parse(format!("bad height in {tok}")))?;
        if h <= Scalar::zero() {
            return Err(Error::Parse(format!("pyramid height must be positive in {tok}")));
        }
        return Ok(Op::Pyr(h));
    }
    if let Some(j) = bracket("St") {
        let j = j
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad face dimension in {tok}")))?;
        return Ok(Op::Stellar(j));
    }
    Err(Error::Parse(format!("unknown operator `{tok}`")))
}

impl FromStr for ConstructionExpr {
    type Err = Error;

    /// Grammar: operator tokens (each optionally `^k`) followed by one base,
    /// applied right to left: `Pinf^2 P0^2 point`.
    fn from_str(s: &str) -> Result<Self> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        let Some((last, ops)) = toks.split_last() else {
            return Err(Error::Parse("empty expression".into()));
        };
        let base = match *last {
            "point" => Base::Point,
            "seg" => Base::Segment,
            "tri" => Base::Triangle,
            "sq" => Base::Square,
            other => return Err(Error::Parse(format!("expected a base, found `{other}`"))),
        };
        let mut e = E::Base(base);
        for tok in ops.iter().rev() {
            let (name, k) = match tok.rsplit_once('^') {
                Some((n, k)) => (
                    n,
                    k.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?,
                ),
                None => (*tok, 1),
            };
            let op = parse_op(name)?;
            e = if k == 1 {
                ConstructionExpr::apply(&op, e)
            } else {
                E::Power(op, k, Box::new(e))
            };
        }
        Ok(e)
    }
}

/// f-vector of the pyramid over `q`.
pub fn pyramid_f(q: &FVector) -> FVector {
    let d = q.dim() as isize + 1;
    let mut e = vec![1i64];
    for i in 0..d {
        e.push(q.get(i) + q.get(i - 1));
    }
    e.push(1);
    FVector::new(d as usize, e).expect("pyramid f")
}

/// f-vector of the prism over `q`.
pub fn prism_f(q: &FVector) -> FVector {
    let d = q.dim() as isize + 1;
    let mut e = vec![1i64, 2 * q.get(0)];
    for i in 1..d {
        e.push(2 * q.get(i) + q.get(i - 1));
    }
    e.push(1);
    FVector::new(d as usize, e).expect("prism f")
}

/// f-vector of the bipyramid over `q`.
pub fn bipyramid_f(q: &FVector) -> FVector {
    let d = q.dim() as isize + 1;
    let mut e = vec![1i64];
    for i in 0..d - 1 {
        e.push(q.get(i) + 2 * q.get(i - 1));
    }
    e.push(2 * q.get(d - 2));
    e.push(1);
    FVector::new(d as usize, e).expect("bipyramid f")
}

pub fn prism_af(q: &AlphaFVector) -> AlphaFVector {
    let d = q.dim() as isize;
    let mut a = vec![Scalar::zero()];
    for i in 0..=d {
        a.push(q.alpha.get(i) + q.alpha.get(i - 1));
    }
    a.push(Scalar::one());
    let mut alpha = AlphaVector::new(d as usize + 1, a).expect("prism α");
    if let Some(se) = q.alpha.stderr() {
        let mut s = vec![0.0];
        for i in 0..=d {
            let x = q.alpha.stderr_at(i);
            let y = q.alpha.stderr_at(i - 1);
            s.push((x * x + y * y).sqrt());
        }
        s.push(0.0);
        let _ = se;
        alpha = alpha.with_stderr(s).expect("stderr");
    }
    AlphaFVector::new(alpha, prism_f(&q.f)).expect("prism")
}

pub fn pyr_zero_af(q: &AlphaFVector) -> AlphaFVector {
    let d = q.dim() as isize + 1;
    let half = Scalar::ratio(1, 2);
    let mut a = vec![Scalar::zero()];
    for i in 0..=d - 2 {
        a.push(Scalar::int(q.f.get(i - 1)) * &half);
    }
    a.push(Scalar::int(q.f.get(d - 2)) * &half + &half);
    a.push(Scalar::one());
    let alpha = AlphaVector::new(d as usize, a).expect("P0 α");
    AlphaFVector::new(alpha, pyramid_f(&q.f)).expect("P0")
}

pub fn pyr_inf_af(q: &AlphaFVector) -> AlphaFVector {
    if q.dim() == 0 {
        // every pyramid over a point is a segment; its apex keeps angle 1/2
        return pyr_zero_af(q);
    }
    let d = q.dim() as isize + 1;
    let half = Scalar::ratio(1, 2);
    let mut a = vec![Scalar::zero()];
    for i in 0..d {
        a.push(q.alpha.get(i) * &half + q.alpha.get(i - 1));
    }
    a.push(Scalar::one());
    let mut alpha = AlphaVector::new(d as usize, a).expect("P∞ α");
    if q.alpha.stderr().is_some() {
        let mut s = vec![0.0];
        for i in 0..d {
            let x = q.alpha.stderr_at(i) / 2.0;
            let y = q.alpha.stderr_at(i - 1);
            s.push((x * x + y * y).sqrt());
        }
        s.push(0.0);
        alpha = alpha.with_stderr(s).expect("stderr");
    }
    AlphaFVector::new(alpha, pyramid_f(&q.f)).expect("P∞")
}

pub fn gamma_prism(g: &GammaVector) -> GammaVector {
    let mut e = g.entries().to_vec();
    e.push(Scalar::one());
    GammaVector::new(g.dim() + 1, e).expect("γ prism")
}

pub fn gamma_pyr_inf(g: &GammaVector) -> GammaVector {
    let d = g.dim() as isize + 1;
    let half = Scalar::ratio(1, 2);
    let e = (0..=d).map(|i| (g.get(i) + g.get(i - 1)) * &half).collect();
    GammaVector::new(d as usize, e).expect("γ P∞")
}

/// `γ_i(P_∞^k Q) = 2^{-k} Σ_j C(k, j) γ_{i-j}(Q)`.
pub fn gamma_pyr_inf_power(g: &GammaVector, k: u32) -> GammaVector {
    let d = g.dim() as isize + k as isize;
    let scale = Scalar::ratio(1, 1i64 << k);
    let e = (0..=d)
        .map(|i| {
            let s: Scalar = (0..=k as i64)
                .map(|j| binom_s(k as i64, j) * g.get(i - j as isize))
                .sum();
            s * &scale
        })
        .collect();
    GammaVector::new(d as usize, e).expect("γ P∞^k")
}

pub fn h_pyramid(h: &HVector) -> HVector {
    let mut e = h.entries().to_vec();
    e.push(Scalar::one());
    HVector::new(h.dim() + 1, e).expect("h pyramid")
}

/// γ of the flat pyramid over a base with h-vector `h`.
pub fn gamma_pyr_zero(h: &HVector) -> GammaVector {
    let d = h.dim() as isize + 1;
    let half = Scalar::ratio(1, 2);
    let mut e: Vec<Scalar> = (0..d).map(|i| h.get(i - 1) * &half).collect();
    e.push(Scalar::one());
    GammaVector::new(d as usize, e).expect("γ P0")
}

/// Embeds `q` in `x_d = 0` and adds the apex over the vertex centroid at height `h`.
pub fn pyramid_geometric(q: &VPolytope, h: &Scalar) -> Result<VPolytope> {
    if *h <= Scalar::zero() {
        return Err(Error::Invalid("pyramid height must be positive".into()));
    }
    let verts = q.scalar_vertices();
    let n = verts.len() as i64;
    let dq = q.dim();
    let mut pts: Vec<Vec<Scalar>> = verts
        .iter()
        .map(|v| {
            let mut p = v.clone();
            p.push(Scalar::zero());
            p
        })
        .collect();
    let mut apex: Vec<Scalar> = (0..dq)
        .map(|i| verts.iter().map(|v| v[i].clone()).sum::<Scalar>() * Scalar::ratio(1, n))
        .collect();
    apex.push(h.clone());
    pts.push(apex);
    VPolytope::new(pts)
}

/// `q × [0, 1]`.
pub fn prism_geometric(q: &VPolytope) -> Result<VPolytope> {
    let verts = q.scalar_vertices();
    let mut pts = Vec::with_capacity(2 * verts.len());
    for t in [0, 1] {
        for v in &verts {
            let mut p = v.clone();
            p.push(Scalar::int(t));
            pts.push(p);
        }
    }
    VPolytope::new(pts)
}

/// Adds a point beyond exactly the facets that contain `face`.
///
/// The new point is `c_F + t (c_F − c_P)` for the face and vertex centroids,
/// starting from `t = push` and halving until the beyond-set is right.
pub fn stellar_subdivision(p: &VPolytope, face: FaceId, push: f64) -> Result<VPolytope> {
    let l = p.lattice();
    if !is_simplicial(l) {
        return Err(Error::Invalid("stellar subdivision needs a simplicial polytope".into()));
    }
    let d = p.dim() as isize;
    if face.dim < 0 || face.dim >= d || face.index >= l.faces(face.dim).len() {
        return Err(Error::Invalid("stellar subdivision needs a proper face".into()));
    }
    if push <= 0.0 {
        return Err(Error::Invalid("push must be positive".into()));
    }
    let containing: Vec<usize> = l.facets_containing(face).to_vec();
    let facets = p.facet_list();
    let verts = l.face(face).vertices.clone();
    // push outward along the ray from the vertex centroid through the face
    // centroid; exact inputs stay exact
    let nv = p.n_vertices();
    let mut t = BigRational::from_float(push).unwrap_or_else(BigRational::one);
    for _ in 0..80 {
        let x: Vec<Scalar> = if let Some(ev) = p.exact_vertices() {
            let k = BigRational::from_integer((verts.len() as i64).into());
            let n = BigRational::from_integer((nv as i64).into());
            (0..d as usize)
                .map(|i| {
                    let c: BigRational = verts.iter().map(|&v| ev[v][i].clone()).sum::<BigRational>() / &k;
                    let g: BigRational = ev.iter().map(|v| v[i].clone()).sum::<BigRational>() / &n;
                    let m = &c - g;
                    Scalar::Exact(c + &t * m)
                })
                .collect()
        } else {
            let c = p.face_centroid(face);
            let m = linalg::sub(&c, &p.centroid());
            let tf = crate::scalar::rational_to_f64(&t);
            c.iter().zip(&m).map(|(a, b)| Scalar::Float(a + tf * b)).collect()
        };
        let xf: Vec<f64> = x.iter().map(Scalar::to_f64).collect();
        let scale = p.vertices().iter().flatten().fold(1.0f64, |a, b| a.max(b.abs()));
        let beyond: Vec<usize> = (0..facets.len())
            .filter(|&f| facets[f].eval(&xf) > 1e-9 * scale)
            .collect();
        let mut want = containing.clone();
        want.sort();
        if beyond == want {
            let mut pts = p.scalar_vertices();
            pts.push(x);
            let q = VPolytope::new(pts)?;
            if !is_simplicial(q.lattice()) {
                return Err(Error::Realization("stellar result is not simplicial".into()));
            }
            return Ok(q);
        }
        t /= BigRational::from_integer(2.into());
    }
    Err(Error::Realization("no push value achieves the beyond-set".into()))
}

/// The two-regular-tetrahedra realization of `T_1^3`.
pub fn t1_3() -> VPolytope {
    let q = |n: i64, d: i64| Scalar::ratio(n, d);
    let pts = vec![
        vec![q(1, 1), q(1, 1), q(1, 1)],
        vec![q(1, 1), q(-1, 1), q(-1, 1)],
        vec![q(-1, 1), q(1, 1), q(-1, 1)],
        vec![q(-1, 1), q(-1, 1), q(1, 1)],
        vec![q(-5, 3), q(-5, 3), q(-5, 3)],
    ];
    VPolytope::new(pts).expect("T_1^3").with_label("T_1^3")
}

/// `T_k^d`: stellar subdivision of a `(d−k)`-face of the standard simplex.
/// `k = 0` returns the simplex itself.
pub fn t_k_d(d: usize, k: usize) -> Result<VPolytope> {
    if k > d / 2 && k != 0 {
        return Err(Error::Invalid(format!("T_k^d needs k <= d/2, got k = {k}, d = {d}")));
    }
    let s = crate::facelattice::shapes::simplex(d);
    if k == 0 {
        return Ok(s);
    }
    // the face on vertices e_1..e_{d-k+1} (vertex 0 is the origin)
    let verts: Vec<usize> = (1..=d - k + 1).collect();
    let face = s
        .lattice()
        .find(&verts)
        .ok_or_else(|| Error::Realization("face not found".into()))?;
    Ok(stellar_subdivision(&s, face, 0.5)?.with_label(&format!("T_{k}^{d}")))
}

/// α-f-vector plus a realization when every node is geometric.
#[derive(Clone, Debug)]
pub struct Evaluated {
    pub af: AlphaFVector,
    pub polytope: Option<VPolytope>,
}

pub fn eval_expr(e: &ConstructionExpr) -> Result<Evaluated> {
    eval_expr_with(e, &SamplingConfig::default())
}

/// Structural recursion; limiting nodes stay exact and drop geometry.
///
/// Vertex sets are only built where a finite pyramid or a stellar subdivision
/// needs them, or at the top when `realize` asks for it.
pub fn eval_expr_with(e: &ConstructionExpr, cfg: &SamplingConfig) -> Result<Evaluated> {
    eval_node(&e.unrolled(), cfg, false)
}

/// Like [`eval_expr_with`] but also returns a realization whenever the
/// expression has one.
pub fn realize(e: &ConstructionExpr, cfg: &SamplingConfig) -> Result<Evaluated> {
    eval_node(&e.unrolled(), cfg, !e.is_limiting())
}

fn eval_node(e: &ConstructionExpr, cfg: &SamplingConfig, want: bool) -> Result<Evaluated> {
    match e {
        E::Base(b) => Ok(Evaluated {
            af: b.alpha_f(),
            polytope: Some(b.polytope()),
        }),
        E::Prism(c) => {
            let q = eval_node(c, cfg, want)?;
            let polytope = match (&q.polytope, want) {
                (Some(p), true) => Some(prism_geometric(p)?),
                _ => None,
            };
            Ok(Evaluated {
                af: prism_af(&q.af),
                polytope,
            })
        }
        E::Pyr0(c) => {
            let q = eval_node(c, cfg, false)?;
            Ok(Evaluated {
                af: pyr_zero_af(&q.af),
                polytope: None,
            })
        }
        E::PyrInf(c) => {
            let q = eval_node(c, cfg, false)?;
            Ok(Evaluated {
                af: pyr_inf_af(&q.af),
                polytope: None,
            })
        }
        E::Pyr(c, h) => {
            let q = eval_node(c, cfg, true)?;
            let base = q.polytope.ok_or_else(|| {
                Error::Realization("finite pyramid over a limiting construction".into())
            })?;
            let p = pyramid_geometric(&base, h)?;
            geometric(p, cfg)
        }
        E::Stellar(c, j) => {
            let q = eval_node(c, cfg, true)?;
            let base = q.polytope.ok_or_else(|| {
                Error::Realization("stellar subdivision of a limiting construction".into())
            })?;
            let face = base
                .lattice()
                .ids(*j as isize)
                .next()
                .filter(|_| (*j as isize) < base.dim() as isize)
                .ok_or_else(|| Error::Invalid(format!("no proper {j}-face to subdivide")))?;
            let p = stellar_subdivision(&base, face, 0.5)?;
            geometric(p, cfg)
        }
        E::Power(..) => unreachable!("unrolled"),
    }
}

fn geometric(p: VPolytope, cfg: &SamplingConfig) -> Result<Evaluated> {
    let alpha = angle_sums(&p, cfg)?;
    let af = AlphaFVector::new(alpha, p.lattice().f_vector())?;
    Ok(Evaluated {
        af,
        polytope: Some(p),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vectors::{gamma_from_alpha, h_from_f};
    use std::f64::consts::PI;

    fn parse(s: &str) -> ConstructionExpr {
        s.parse().unwrap()
    }

    fn exact(s: &str) -> AlphaFVector {
        eval_expr(&parse(s)).unwrap().af
    }

    #[test]
    fn limiting_pyramids_over_triangle() {
        assert_eq!(exact("P0 tri").to_string(), "(1/2, 3/2, 2, 1 | 4, 6, 4, 1)");
        assert_eq!(exact("Pinf tri").to_string(), "(1/4, 5/4, 2, 1 | 4, 6, 4, 1)");
        assert_eq!(exact("Pinf seg").to_string(), "(1/2, 3/2, 1 | 3, 3, 1)");
        assert_eq!(exact("P0 point").to_string(), "(1, 1 | 2, 1)");
        assert_eq!(exact("P0 sq").to_string(), "(1/2, 2, 5/2, 1 | 5, 8, 5, 1)");
        assert_eq!(exact("Pinf sq").to_string(), "(1/2, 2, 5/2, 1 | 5, 8, 5, 1)");
    }

    #[test]
    fn prisms() {
        assert_eq!(exact("B* seg").to_string(), "(1, 2, 1 | 4, 4, 1)");
        assert_eq!(exact("B* point").to_string(), "(1, 1 | 2, 1)");
        assert_eq!(exact("B*^3 seg").to_string(), "(1, 4, 6, 4, 1 | 16, 32, 24, 8, 1)");
        assert_eq!(exact("B*^3 point"), exact("B* sq"));
    }

    #[test]
    fn f_recursions() {
        let tri = FVector::polytope(2, &[3, 3]).unwrap();
        assert_eq!(pyramid_f(&tri).entries(), &[1, 4, 6, 4, 1]);
        assert_eq!(bipyramid_f(&tri).entries(), &[1, 5, 9, 6, 1]);
        let sq = FVector::polytope(2, &[4, 4]).unwrap();
        assert_eq!(pyramid_f(&sq).entries(), &[1, 5, 8, 5, 1]);
        assert_eq!(bipyramid_f(&sq).entries(), &[1, 6, 12, 8, 1]);
        let seg = FVector::polytope(1, &[2]).unwrap();
        assert_eq!(bipyramid_f(&seg).entries(), &[1, 4, 4, 1]);
        let pt = FVector::polytope(0, &[]).unwrap();
        assert_eq!(pyramid_f(&pt).entries(), &[1, 2, 1]);
    }

    #[test]
    fn geometric_face_counts_match_recursions() {
        let sqp = pyramid_geometric(&Base::Square.polytope(), &Scalar::int(1)).unwrap();
        assert_eq!(sqp.lattice().f_vector(), pyramid_f(&FVector::polytope(2, &[4, 4]).unwrap()));
        let tet = pyramid_geometric(&Base::Triangle.polytope(), &Scalar::int(1)).unwrap();
        assert_eq!(tet.lattice().f_vector().entries(), &[1, 4, 6, 4, 1]);
        assert!(pyramid_geometric(&Base::Triangle.polytope(), &Scalar::int(0)).is_err());
    }

    #[test]
    fn limits_of_finite_pyramids() {
        let tri = Base::Triangle.polytope();
        let cfg = SamplingConfig::default();
        let tall = pyramid_geometric(&tri, &Scalar::int(1000)).unwrap();
        let a = angle_sums(&tall, &cfg).unwrap();
        assert!((a.get(0).to_f64() - 0.25).abs() < 1e-2);
        let flat = pyramid_geometric(&tri, &Scalar::ratio(1, 1000)).unwrap();
        let a = angle_sums(&flat, &cfg).unwrap();
        assert!((a.get(0).to_f64() - 0.5).abs() < 1e-2);
    }

    #[test]
    fn t13_realization() {
        let t = t1_3();
        let a = angle_sums(&t, &SamplingConfig::default()).unwrap();
        let c = 6.0 / PI * (1.0f64 / 3.0).acos();
        assert!((a.get(0).to_f64() - (c - 2.0)).abs() < 1e-9);
        assert!((a.get(1).to_f64() - c).abs() < 1e-9);
        assert_eq!(a.get(2), Scalar::int(3));
        assert_eq!(t.lattice().f_vector().entries(), &[1, 5, 9, 6, 1]);
    }

    #[test]
    fn stellar_of_tetrahedron_facet() {
        let t = crate::facelattice::shapes::regular_tetrahedron();
        let face = t.lattice().ids(2).next().unwrap();
        let s = stellar_subdivision(&t, face, 1.0).unwrap();
        assert_eq!(s.lattice().f_vector().entries(), &[1, 5, 9, 6, 1]);
        let cube = crate::facelattice::shapes::cube(3);
        assert!(stellar_subdivision(&cube, FaceId { dim: 0, index: 0 }, 1.0).is_err());
    }

    #[test]
    fn simplicial_from_expression() {
        for s in ["P[1] tri", "P[2] sq", "B* tri", "B* seg", "P[1] B* seg", "St[1] P[1] tri", "P[1] P[1] tri", "B* point"] {
            let e = parse(s);
            let p = realize(&e, &SamplingConfig::default()).unwrap().polytope.unwrap();
            assert_eq!(e.is_simplicial(), crate::facelattice::is_simplicial(p.lattice()), "{s}");
        }
        assert!(parse("Pinf^2 tri").is_simplicial());
        assert!(!parse("Pinf B* tri").is_simplicial());
    }

    #[test]
    fn t_k_d_combinatorics() {
        assert_eq!(t_k_d(3, 0).unwrap().lattice().f_vector().entries(), &[1, 4, 6, 4, 1]);
        assert_eq!(t_k_d(3, 1).unwrap().lattice().f_vector().entries(), &[1, 5, 9, 6, 1]);
        let h = h_from_f(&t_k_d(4, 2).unwrap().lattice().f_vector());
        let want: Vec<Scalar> = [1, 2, 3, 2, 1].iter().map(|&x| Scalar::int(x)).collect();
        assert_eq!(h.entries(), &want[..]);
        let h = h_from_f(&t_k_d(4, 1).unwrap().lattice().f_vector());
        let want: Vec<Scalar> = [1, 2, 2, 2, 1].iter().map(|&x| Scalar::int(x)).collect();
        assert_eq!(h.entries(), &want[..]);
    }

    #[test]
    fn gamma_identities() {
        // simplex h = (1,...,1) from repeated pyramids over a point
        let mut h = HVector::from_ints(0, &[1]).unwrap();
        for _ in 0..4 {
            h = h_pyramid(&h);
        }
        assert!(h.entries().iter().all(|x| *x == Scalar::one()));
        // (B*)^d point has γ = (0, 1, ..., 1)
        let mut g = gamma_from_alpha(&Base::Point.alpha_f().alpha);
        for _ in 0..4 {
            g = gamma_prism(&g);
        }
        let want: Vec<Scalar> = [0, 1, 1, 1, 1].iter().map(|&x| Scalar::int(x)).collect();
        assert_eq!(g.entries(), &want[..]);
        // P_∞ twice equals the binomial form
        let g0 = gamma_from_alpha(&Base::Triangle.alpha_f().alpha);
        assert_eq!(gamma_pyr_inf(&gamma_pyr_inf(&g0)), gamma_pyr_inf_power(&g0, 2));
        // flat pyramid over the triangle
        let gz = gamma_pyr_zero(&h_from_f(&Base::Triangle.alpha_f().f));
        assert_eq!(gz, gamma_from_alpha(&exact("P0 tri").alpha));
    }

    #[test]
    fn pyramid_h_matches_f_route() {
        let sq = FVector::polytope(2, &[4, 4]).unwrap();
        assert_eq!(h_from_f(&pyramid_f(&sq)), h_pyramid(&h_from_f(&sq)));
    }

    #[test]
    fn prism_infinity_commutation() {
        for k in 1..4 {
            let a = exact(&format!("Pinf B*^{k} seg"));
            let b = exact(&format!("B*^{k} tri"));
            assert_eq!(a.alpha, b.alpha);
        }
    }

    #[test]
    fn parser_round_trip_and_errors() {
        let e = parse("Pinf^2 P0^2 point");
        assert_eq!(e.dim(), 4);
        assert!(e.is_limiting());
        assert_eq!(e.to_string(), "Pinf^2 P0^2 point");
        assert_eq!(parse(&e.to_string()), e);
        assert!(!parse("P[1/2] B* seg").is_limiting());
        assert!("".parse::<ConstructionExpr>().is_err());
        assert!("Q tri".parse::<ConstructionExpr>().is_err());
        assert!("P[-1] tri".parse::<ConstructionExpr>().is_err());
        assert!("B* cube".parse::<ConstructionExpr>().is_err());
        assert!(eval_expr(&parse("P[1] P0 seg")).is_err());
    }

    #[test]
    fn finite_pyramid_expression() {
        let r = eval_expr(&parse("P[1] sq")).unwrap();
        assert_eq!(r.af.f.entries(), &[1, 5, 8, 5, 1]);
        assert!(r.polytope.is_some());
    }
}
