//! Named voxel complexes: the torus ring, Γ, handlebodies and Furch's ball.

use std::collections::BTreeSet;

use super::voxel::{Cell, VoxelComplex};
use crate::error::{Error, Result};

pub const NAMES: &[&str] = &["cube", "square", "torus", "gamma", "handlebody-2", "handlebody-3", "furch", "furch-open"];

/// The 3×3×1 ring.
pub fn torus() -> VoxelComplex {
    handlebody(1).with_label("torus")
}

/// The 3×3×3 block with its centre cell removed.
pub fn gamma() -> VoxelComplex {
    let cells = (0..27)
        .map(|i| vec![i % 3, i / 3 % 3, i / 9])
        .filter(|c| c != &vec![1, 1, 1]);
    VoxelComplex::new(3, cells).expect("Γ is connected").with_label("gamma")
}

/// A `(2g+1)×3×1` slab with `g` unit holes.
pub fn handlebody(g: usize) -> VoxelComplex {
    let w = 2 * g as i64 + 1;
    let holes: BTreeSet<Cell> = (0..g as i64).map(|i| vec![2 * i + 1, 1, 0]).collect();
    let cells = (0..w)
        .flat_map(|x| (0..3).map(move |y| vec![x, y, 0]))
        .filter(|c| !holes.contains(c));
    VoxelComplex::new(3, cells)
        .expect("slab is connected")
        .with_label(&format!("handlebody-{g}"))
}

// Corners of the trefoil tunnel: a closed 2-braid σ1^3 cut open on the far
// closing arc, with both ends led up to the top face of the block.
const TUNNEL: &[[i64; 3]] = &[
    [10, 8, 3],
    [10, 8, 0],
    [-2, 8, 0],
    [-2, 4, 0],
    [2, 4, 0],
    [2, 4, 2],
    [2, 2, 2],
    [6, 2, 2],
    [6, 0, 2],
    [6, 0, 0],
    [12, 0, 0],
    [12, 4, 0],
    [18, 4, 0],
    [18, 4, 2],
    [18, 2, 2],
    [22, 2, 2],
    [22, 0, 2],
    [22, 0, 0],
    [26, 0, 0],
    [26, -4, 0],
    [-2, -4, 0],
    [-2, 0, 0],
    [4, 0, 0],
    [4, 4, 0],
    [10, 4, 0],
    [10, 4, 2],
    [10, 2, 2],
    [14, 2, 2],
    [14, 0, 2],
    [14, 0, 0],
    [20, 0, 0],
    [20, 4, 0],
    [26, 4, 0],
    [26, 8, 0],
    [12, 8, 0],
    [12, 8, 3],
];

const BLOCK_LO: [i64; 3] = [-3, -5, -1];
const BLOCK_HI: [i64; 3] = [27, 9, 3];

/// Cells of the knotted tunnel, in order along the arc.
pub fn furch_tunnel() -> Result<Vec<Cell>> {
    let mut path: Vec<Cell> = vec![TUNNEL[0].to_vec()];
    for w in TUNNEL.windows(2) {
        let (p, q) = (w[0], w[1]);
        let axis = (0..3).filter(|&a| p[a] != q[a]).collect::<Vec<_>>();
        if axis.len() != 1 {
            return Err(Error::Invalid(format!("tunnel corner {p:?} → {q:?} is not axis-aligned")));
        }
        let a = axis[0];
        let step = (q[a] - p[a]).signum();
        let mut c = p.to_vec();
        while c[a] != q[a] {
            c[a] += step;
            path.push(c.clone());
        }
    }
    // the tunnel must be a clean tube: cells three or more steps apart never touch
    for i in 0..path.len() {
        for j in i + 3..path.len() {
            let cheb = (0..3).map(|a| (path[i][a] - path[j][a]).abs()).max().unwrap_or(0);
            if cheb < 2 {
                return Err(Error::Invalid(format!("tunnel touches itself at {:?} and {:?}", path[i], path[j])));
            }
        }
    }
    Ok(path)
}

fn block_without(tunnel: &BTreeSet<Cell>) -> Vec<Cell> {
    let mut out = Vec::new();
    for x in BLOCK_LO[0]..=BLOCK_HI[0] {
        for y in BLOCK_LO[1]..=BLOCK_HI[1] {
            for z in BLOCK_LO[2]..=BLOCK_HI[2] {
                let c = vec![x, y, z];
                if !tunnel.contains(&c) {
                    out.push(c);
                }
            }
        }
    }
    out
}

/// The block with the whole trefoil tunnel drilled out: a solid torus-like body.
pub fn furch_open() -> VoxelComplex {
    let tunnel: BTreeSet<Cell> = furch_tunnel().expect("fixed tunnel").into_iter().collect();
    VoxelComplex::new(3, block_without(&tunnel))
        .expect("block minus tunnel is connected")
        .with_label("furch-open")
}

/// Index along the tunnel of the plugging cell.
pub fn furch_plug_index() -> usize {
    furch_tunnel().expect("fixed tunnel").len() / 2
}

/// Furch's knotted-hole ball: the drilled block with one tunnel cell filled.
pub fn furch() -> VoxelComplex {
    let path = furch_tunnel().expect("fixed tunnel");
    let plug = &path[furch_plug_index()];
    let tunnel: BTreeSet<Cell> = path.iter().filter(|c| *c != plug).cloned().collect();
    VoxelComplex::new(3, block_without(&tunnel))
        .expect("plugged block is connected")
        .with_label("furch")
}

pub fn by_name(name: &str) -> Result<VoxelComplex> {
    Ok(match name {
        "cube" => VoxelComplex::cube(3),
        "square" => VoxelComplex::cube(2).with_label("square"),
        "torus" => torus(),
        "gamma" => gamma(),
        "furch" => furch(),
        "furch-open" => furch_open(),
        other => match other.strip_prefix("handlebody-").map(str::parse::<usize>) {
            Some(Ok(g)) => handlebody(g),
            _ => {
                return Err(Error::Invalid(format!(
                    "unknown fixture {other:?}; known: {}",
                    NAMES.join(", ")
                )))
            }
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn gamma_counts() {
        let g = gamma();
        let af = g.alpha_f();
        assert_eq!(&af.alpha.entries()[1..4], &[Scalar::int(8), Scalar::int(12), Scalar::int(6)]);
        assert_eq!(&af.f.entries()[1..4], &[16, 24, 12]);
        assert_eq!(g.chi_boundary(), 4);
        assert_eq!(g.chi_alpha(), Scalar::int(2));
        let comps = g.boundary_components();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.chi == 2));
        assert_eq!(comps[0].chi_alpha, Scalar::one());
        assert_eq!(comps[1].chi_alpha, Scalar::one());
    }

    #[test]
    fn handlebodies() {
        for g in 0..=3 {
            let h = handlebody(g);
            assert_eq!(h.chi_alpha(), Scalar::int(1 - g as i64), "g = {g}");
            assert_eq!(h.chi_boundary(), 2 - 2 * g as i64);
        }
    }

    #[test]
    fn furch_ball() {
        let path = furch_tunnel().unwrap();
        assert_eq!(path.first().unwrap()[2], BLOCK_HI[2]);
        assert_eq!(path.last().unwrap()[2], BLOCK_HI[2]);
        let f = furch();
        assert_eq!(f.chi_alpha(), Scalar::one());
        assert_eq!(f.chi_boundary(), 2);
        let open = furch_open();
        assert_eq!(open.chi_alpha(), Scalar::zero());
        assert_eq!(open.chi_boundary(), 0);
    }

    #[test]
    fn names_resolve() {
        for n in NAMES {
            assert!(by_name(n).is_ok(), "{n}");
        }
        assert!(by_name("klein").is_err());
    }
}
