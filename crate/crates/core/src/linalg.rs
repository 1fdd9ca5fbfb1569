//! Small dense linear algebra over exact rationals and floats.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::rational_to_f64;

/// Arithmetic needed by elimination, with a pluggable zero test.
pub trait Field: Clone + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    /// Zero test; `scale` is the magnitude the value should be compared against.
    fn near_zero(&self, scale: f64) -> bool;
    fn magnitude(&self) -> f64;
    fn to_f64(&self) -> f64;
}

/// Relative tolerance used by float zero tests.
pub const FLOAT_EPS: f64 = 1e-9;

impl Field for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn near_zero(&self, scale: f64) -> bool {
        self.abs() <= FLOAT_EPS * scale.max(f64::MIN_POSITIVE)
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn near_zero(&self, _scale: f64) -> bool {
        self.is_zero()
    }
    fn magnitude(&self) -> f64 {
        rational_to_f64(&self.abs())
    }
    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<F: Field>(m: &mut [Vec<F>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let scale = m
        .iter()
        .flat_map(|r| r.iter().map(Field::magnitude))
        .fold(0.0f64, f64::max)
        .max(1e-300);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // partial pivoting: largest magnitude wins, exact fields just need nonzero
        let mut best = None;
        let mut best_mag = 0.0;
        for (i, row) in m.iter().enumerate().skip(r) {
            if !row[c].near_zero(scale) {
                let mag = row[c].magnitude();
                if best.is_none() || mag > best_mag {
                    best = Some(i);
                    best_mag = mag;
                }
            }
        }
        let Some(p) = best else { continue };
        m.swap(r, p);
        let inv = F::one().div(&m[r][c]);
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].near_zero(scale) {
                let factor = m[i][c].clone();
                for j in 0..cols {
                    let t = factor.mul(&m[r][j]);
                    m[i][j] = m[i][j].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &[Vec<F>]) -> usize {
    let mut m = m.to_vec();
    rref(&mut m).len()
}

/// A basis of the right null space.
pub fn nullspace<F: Field>(m: &[Vec<F>], cols: usize) -> Vec<Vec<F>> {
    let mut m = m.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![F::zero(); cols];
            v[fc] = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = F::zero().sub(&m[r][fc]);
            }
            v
        })
        .collect()
}

/// Rank by fraction-free (Bareiss) elimination after clearing denominators row by row.
pub fn exact_rank(rows: &[Vec<BigRational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let l = r
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            r.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    bareiss_rank(&mut m)
}

pub fn bareiss_rank(m: &mut [Vec<BigInt>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Singular values of a float matrix, largest first.
pub fn singular_values(rows: &[Vec<f64>]) -> Vec<f64> {
    if rows.is_empty() || rows[0].is_empty() {
        return vec![];
    }
    let m = DMatrix::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j]);
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sv
}

/// Number of singular values above `tol` (absolute).
pub fn float_rank(rows: &[Vec<f64>], tol: f64) -> usize {
    singular_values(rows).iter().filter(|&&s| s > tol).count()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

pub fn normalize(a: &[f64]) -> Vec<f64> {
    let n = norm(a);
    scale(a, 1.0 / n)
}

pub fn centroid(points: &[&[f64]]) -> Vec<f64> {
    let d = points[0].len();
    let mut c = vec![0.0; d];
    for p in points {
        for (ci, pi) in c.iter_mut().zip(p.iter()) {
            *ci += pi;
        }
    }
    scale(&c, 1.0 / points.len() as f64)
}

/// Orthonormal basis of the orthogonal complement of `span(vs)` in R^n.
pub fn orth_complement(vs: &[Vec<f64>], n: usize) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vs {
        let mut w = v.clone();
        for b in &basis {
            let t = dot(&w, b);
            w = sub(&w, &scale(b, t));
        }
        if norm(&w) > 1e-12 {
            basis.push(normalize(&w));
        }
    }
    let k = basis.len();
    for i in 0..n {
        let mut w = vec![0.0; n];
        w[i] = 1.0;
        for b in &basis {
            let t = dot(&w, b);
            w = sub(&w, &scale(b, t));
        }
        if norm(&w) > 1e-8 {
            basis.push(normalize(&w));
        }
        if basis.len() == n {
            break;
        }
    }
    basis.split_off(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn exact_rank_small() {
        let m = vec![
            vec![q(1, 2), q(1, 1), q(3, 1)],
            vec![q(1, 1), q(2, 1), q(6, 1)],
            vec![q(0, 1), q(1, 3), q(1, 1)],
        ];
        assert_eq!(exact_rank(&m), 2);
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn nullspace_plane() {
        let m = vec![vec![1.0, 1.0, 1.0]];
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(dot(&v, &[1.0, 1.0, 1.0]).abs() < 1e-12);
        }
    }

    #[test]
    fn svd_rank() {
        let m = vec![vec![1.0, 0.0], vec![2.0, 1e-12]];
        assert_eq!(float_rank(&m, 1e-6), 1);
        assert_eq!(float_rank(&m, 1e-14), 2);
    }

    #[test]
    fn complement_is_orthonormal() {
        let c = orth_complement(&[vec![1.0, 1.0, 0.0]], 3);
        assert_eq!(c.len(), 2);
        for v in &c {
            assert!((norm(v) - 1.0).abs() < 1e-12);
            assert!(dot(v, &[1.0, 1.0, 0.0]).abs() < 1e-12);
        }
    }
}
