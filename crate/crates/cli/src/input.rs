//! Loading polytopes, voxel complexes and curved polytopes from the command line.

use std::fs;
use std::path::Path;

use anglesum::angles::{angle_sums_by_dim, SamplingConfig};
use anglesum::complexes::{fixtures, VoxelComplex};
use anglesum::constructions::{realize, t1_3, ConstructionExpr};
use anglesum::curved::{self, CurvedPolytope, Geometry};
use anglesum::facelattice::{is_simplicial, shapes};
use anglesum::{AlphaFVector, AlphaVector, Error, Result, Scalar, VPolytope};
use serde::Deserialize;
use serde_json::Value;

/// Something with an α-f-vector to report on.
pub struct Subject {
    pub label: String,
    pub af: AlphaFVector,
    pub simplicial: bool,
    /// How each `α_k`, `0 ≤ k < d`, was obtained.
    pub methods: Vec<String>,
}

#[derive(Clone, Debug, Default, clap::Args)]
pub struct SubjectArgs {
    /// Construction expression, e.g. "Pinf tri" or "B*^2 point".
    #[arg(long, conflicts_with_all = ["file", "fixture"])]
    pub expr: Option<String>,
    /// Polytope JSON file {dim, vertices} or a voxel complex file (.vox).
    #[arg(long, conflicts_with = "fixture")]
    pub file: Option<String>,
    /// Named polytope or voxel complex (cube, cube:4, simplex:d, cross:d,
    /// tetrahedron, square-pyramid, t1_3, torus, gamma, handlebody:g, furch, ...).
    #[arg(long)]
    pub fixture: Option<String>,
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

#[derive(Deserialize)]
struct PolytopeFile {
    #[serde(default)]
    dim: Option<usize>,
    vertices: Vec<Vec<Value>>,
    #[serde(default)]
    label: Option<String>,
}

fn coordinate(v: &Value) -> Result<Scalar> {
    let parsed = match v {
        Value::Number(n) => Scalar::parse(&n.to_string()),
        Value::String(s) => Scalar::parse(s),
        _ => None,
    };
    parsed.ok_or_else(|| Error::Parse(format!("bad coordinate {v}")))
}

pub fn polytope_from_json(text: &str) -> Result<VPolytope> {
    let pf: PolytopeFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let pts: Vec<Vec<Scalar>> = pf
        .vertices
        .iter()
        .map(|p| p.iter().map(coordinate).collect())
        .collect::<Result<_>>()?;
    let p = VPolytope::hull(pts)?;
    if let Some(d) = pf.dim {
        if d != p.dim() {
            return Err(Error::Dimension(format!("file says dim {d}, vertices span {}", p.dim())));
        }
    }
    Ok(match pf.label {
        Some(l) => p.with_label(&l),
        None => p,
    })
}

fn named_polytope(name: &str) -> Option<Result<VPolytope>> {
    let (base, d) = match name.split_once(':') {
        Some((b, d)) => (b, d.parse::<usize>().ok()),
        None => (name, None),
    };
    let d = d.unwrap_or(3);
    let p = match base {
        "cube" => shapes::cube(d),
        "simplex" => shapes::simplex(d),
        "cross" | "cross-polytope" => shapes::cross_polytope(d),
        "tetrahedron" | "regular-tetrahedron" => shapes::regular_tetrahedron(),
        "square-pyramid" => shapes::square_pyramid(),
        "t1_3" | "T1_3" => t1_3(),
        _ => return None,
    };
    Some(Ok(p.with_label(name)))
}

/// Voxel fixture names accept `handlebody:2` as well as `handlebody-2`.
pub fn voxel_fixture(name: &str) -> Result<VoxelComplex> {
    fixtures::by_name(&name.replace(':', "-"))
}

pub fn voxel_file(path: &str) -> Result<VoxelComplex> {
    let v: VoxelComplex = read(path)?.parse()?;
    if v.label.is_empty() {
        let stem = Path::new(path).file_stem().and_then(|s| s.to_str()).unwrap_or(path);
        return Ok(v.with_label(stem));
    }
    Ok(v)
}

/// A voxel complex from a fixture name or a file path.
pub fn voxel(spec: &str) -> Result<VoxelComplex> {
    if Path::new(spec).exists() {
        voxel_file(spec)
    } else {
        voxel_fixture(spec)
    }
}

fn from_polytope(p: VPolytope, cfg: &SamplingConfig) -> Result<Subject> {
    let sums = angle_sums_by_dim(&p, cfg)?;
    let mut entries = vec![Scalar::zero()];
    let mut se = vec![0.0];
    let mut methods = Vec::new();
    for s in &sums {
        entries.push(s.value.clone());
        se.push(s.stderr);
        methods.push(s.methods.iter().map(|m| m.name()).collect::<Vec<_>>().join("+"));
    }
    entries.push(Scalar::one());
    se.push(0.0);
    let alpha = AlphaVector::new(p.dim(), entries)?.with_stderr(se)?;
    Ok(Subject {
        label: p.label.clone().unwrap_or_else(|| "polytope".into()),
        af: AlphaFVector::new(alpha, p.lattice().f_vector())?,
        simplicial: is_simplicial(p.lattice()),
        methods,
    })
}

fn from_voxels(v: VoxelComplex) -> Subject {
    let d = v.dim();
    Subject {
        label: v.label.clone(),
        af: v.alpha_f(),
        simplicial: false,
        methods: vec!["lattice".into(); d],
    }
}

pub fn subject(args: &SubjectArgs, cfg: &SamplingConfig) -> Result<Subject> {
    if let Some(e) = &args.expr {
        let expr: ConstructionExpr = e.parse()?;
        let ev = realize(&expr, cfg)?;
        let simplicial = expr.is_simplicial();
        return Ok(Subject {
            label: expr.to_string(),
            methods: vec!["construction".into(); ev.af.dim()],
            af: ev.af,
            simplicial,
        });
    }
    if let Some(f) = &args.file {
        let text = read(f)?;
        if text.trim_start().starts_with('{') {
            let mut p = polytope_from_json(&text)?;
            if p.label.is_none() {
                p = p.with_label(f);
            }
            return from_polytope(p, cfg);
        }
        return Ok(from_voxels(voxel_file(f)?));
    }
    if let Some(name) = &args.fixture {
        if let Some(p) = named_polytope(name) {
            return from_polytope(p?, cfg);
        }
        return Ok(from_voxels(voxel_fixture(name)?));
    }
    Err(Error::Invalid("give one of --expr, --file or --fixture".into()))
}

#[derive(Deserialize)]
struct CurvedFile {
    geometry: String,
    #[serde(default)]
    dim: Option<usize>,
    vertices: Vec<Vec<f64>>,
    #[serde(default)]
    label: Option<String>,
}

pub fn curved_from_json(text: &str) -> Result<CurvedPolytope> {
    let cf: CurvedFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let g: Geometry = cf.geometry.parse()?;
    let p = CurvedPolytope::new(g, cf.vertices)?;
    if let Some(d) = cf.dim {
        if d != p.dim() {
            return Err(Error::Dimension(format!("file says dim {d}, vertices give {}", p.dim())));
        }
    }
    Ok(match cf.label {
        Some(l) => p.with_label(&l),
        None => p,
    })
}

pub fn curved(file: Option<&str>, fixture: Option<&str>) -> Result<CurvedPolytope> {
    match (file, fixture) {
        (Some(f), _) => curved_from_json(&read(f)?),
        (None, Some(n)) => curved::fixture(n),
        (None, None) => Err(Error::Invalid("give --file or --fixture".into())),
    }
}
