//! Small dense rational matrices, enough for module action tables and span checks.

use std::fmt;

use num_traits::{One, Zero};

use crate::lattice::{format_scalar, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    nrows: usize,
    ncols: usize,
    data: Vec<Scalar>,
}

impl QMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        QMatrix { nrows, ncols, data: vec![Scalar::zero(); nrows * ncols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        QMatrix { nrows, ncols, data: rows.into_iter().flatten().collect() }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.ncols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Scalar) {
        let slot = &mut self.data[i * self.ncols + j];
        *slot += v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.ncols, rhs.nrows, "matrix product shape mismatch");
        let mut out = QMatrix::zeros(self.nrows, rhs.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.ncols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.nrows, self.ncols), (rhs.nrows, rhs.ncols));
        QMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.nrows, self.ncols), (rhs.nrows, rhs.ncols));
        QMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> QMatrix {
        QMatrix { nrows: self.nrows, ncols: self.ncols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn transpose(&self) -> QMatrix {
        let mut out = QMatrix::zeros(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// `self * rhs - rhs * self`.
    pub fn commutator(&self, rhs: &QMatrix) -> QMatrix {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.ncols, v.len());
        (0..self.nrows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn trace(&self) -> Scalar {
        (0..self.nrows.min(self.ncols)).fold(Scalar::zero(), |acc, i| acc + self.get(i, i))
    }

    /// Determinant by Gaussian elimination over the rationals.
    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.nrows, self.ncols);
        let n = self.nrows;
        let mut a = self.clone();
        let mut det = Scalar::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
                return Scalar::zero();
            };
            if p != k {
                a.swap_rows(p, k);
                det = -det;
            }
            let pivot = a.get(k, k).clone();
            det *= &pivot;
            for i in k + 1..n {
                let f = a.get(i, k) / &pivot;
                if f.is_zero() {
                    continue;
                }
                for j in k..n {
                    let v = a.get(i, j) - &f * a.get(k, j);
                    a.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn rank(&self) -> usize {
        let mut span = EchelonSpan::new(self.ncols);
        (0..self.nrows).filter(|&i| span.insert(self.row(i).to_vec())).count()
    }

    /// Basis of the right null space `{v : self v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut span = EchelonSpan::new(self.ncols);
        for i in 0..self.nrows {
            span.insert(self.row(i).to_vec());
        }
        let pivots: Vec<usize> = span.rows.iter().map(|(p, _)| *p).collect();
        (0..self.ncols)
            .filter(|j| !pivots.contains(j))
            .map(|free| {
                let mut v = vec![Scalar::zero(); self.ncols];
                v[free] = Scalar::one();
                for (p, row) in &span.rows {
                    v[*p] = -row[free].clone();
                }
                v
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.ncols {
            self.data.swap(a * self.ncols + j, b * self.ncols + j);
        }
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.nrows {
            let row: Vec<String> = self.row(i).iter().map(format_scalar).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Incrementally maintained reduced row-echelon basis of a subspace of `Q^dim`.
#[derive(Clone, Debug)]
pub struct EchelonSpan {
    dim: usize,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl EchelonSpan {
    pub fn new(dim: usize) -> Self {
        EchelonSpan { dim, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the basis; returns the remainder.
    pub fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v.to_vec()).iter().all(Zero::is_zero)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int;

    fn m(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn determinant_and_rank() {
        let a = m(&[&[2, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
        assert_eq!(a.determinant(), int(-2));
        assert_eq!(a.rank(), 3);
        let b = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(b.determinant(), int(0));
        assert_eq!(b.rank(), 1);
    }

    #[test]
    fn commutator_of_sl2_generators() {
        let e = m(&[&[0, 1], &[0, 0]]);
        let f = m(&[&[0, 0], &[1, 0]]);
        assert_eq!(e.commutator(&f), m(&[&[1, 0], &[0, -1]]));
    }

    #[test]
    fn echelon_span_tracks_dimension() {
        let mut s = EchelonSpan::new(3);
        assert!(s.insert(vec![int(1), int(1), int(0)]));
        assert!(!s.insert(vec![int(2), int(2), int(0)]));
        assert!(s.insert(vec![int(0), int(1), int(1)]));
        assert!(s.contains(&[int(1), int(2), int(1)]));
        assert!(!s.contains(&[int(0), int(0), int(1)]));
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn nullspace_vectors_are_killed() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(a.mul_vec(&ns[0]).iter().all(Zero::is_zero));
    }
}
