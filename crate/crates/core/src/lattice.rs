//! Exact scalars, integer exponent vectors and unimodular integer matrices.
//!
//! Everything here is exact: coefficients are arbitrary-precision rationals and
//! lattice computations use integer arithmetic only.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{dim_err, domain_err, Error, Result};

/// Exact rational coefficient. `BigRational` keeps itself in lowest terms with a
/// positive denominator, so zero is always `0/1`.
pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Integer power with negative exponents allowed (base must be nonzero then).
pub fn pow(base: &Scalar, exp: i64) -> Scalar {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), (-exp) as usize)
    }
}

/// Prints `p` for integers and `p/q` otherwise.
pub fn format_scalar(s: &Scalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let bad = |why: &str| Error::Domain(format!("invalid fraction {text:?}: {why}"));
    let t = text.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad("numerator"))?;
    let d: BigInt = d.parse().map_err(|_| bad("denominator"))?;
    if d.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Scalar::new(n, d))
}

/// Grading index `r` of the monomial `t^r = t_1^{r_1} ... t_n^{r_n}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExpVec(Vec<i64>);

impl ExpVec {
    pub fn new(entries: Vec<i64>) -> Self {
        ExpVec(entries)
    }

    pub fn zero(n: usize) -> Self {
        ExpVec(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        ExpVec(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Largest index with a nonzero entry.
    pub fn pivot(&self) -> Option<usize> {
        self.0.iter().rposition(|&x| x != 0)
    }

    /// Standard pairing `(u, r)` with a rational vector.
    pub fn pair(&self, u: &[Scalar]) -> Scalar {
        debug_assert_eq!(u.len(), self.len());
        self.0
            .iter()
            .zip(u)
            .filter(|(&r, _)| r != 0)
            .map(|(&r, c)| c * int(r))
            .fold(Scalar::zero(), |a, b| a + b)
    }

    pub fn dot(&self, other: &ExpVec) -> i64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Drops the coordinate at `idx`.
    pub fn without(&self, idx: usize) -> ExpVec {
        let mut v = self.0.clone();
        v.remove(idx);
        ExpVec(v)
    }

    pub fn with_inserted(&self, idx: usize, value: i64) -> ExpVec {
        let mut v = self.0.clone();
        v.insert(idx, value);
        ExpVec(v)
    }

    pub fn as_scalars(&self) -> Vec<Scalar> {
        self.0.iter().map(|&x| int(x)).collect()
    }
}

impl Index<usize> for ExpVec {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl fmt::Debug for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Add for &ExpVec {
    type Output = ExpVec;
    fn add(self, rhs: &ExpVec) -> ExpVec {
        assert_eq!(self.len(), rhs.len(), "exponent length mismatch");
        ExpVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &ExpVec {
    type Output = ExpVec;
    fn sub(self, rhs: &ExpVec) -> ExpVec {
        assert_eq!(self.len(), rhs.len(), "exponent length mismatch");
        ExpVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &ExpVec {
    type Output = ExpVec;
    fn neg(self) -> ExpVec {
        ExpVec(self.0.iter().map(|a| -a).collect())
    }
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntMatrix {
    rows: Vec<Vec<i64>>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        if let Some(first) = rows.first() {
            if rows.iter().any(|r| r.len() != first.len()) {
                return dim_err("ragged integer matrix");
            }
        }
        Ok(IntMatrix { rows })
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        IntMatrix { rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn transpose(&self) -> IntMatrix {
        let (m, n) = (self.nrows(), self.ncols());
        let rows = (0..n).map(|j| (0..m).map(|i| self.rows[i][j]).collect()).collect();
        IntMatrix { rows }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.ncols() != other.nrows() {
            return dim_err("matrix product shape mismatch");
        }
        let rows = (0..self.nrows())
            .map(|i| {
                (0..other.ncols())
                    .map(|j| (0..self.ncols()).map(|k| self.rows[i][k] * other.rows[k][j]).sum())
                    .collect()
            })
            .collect();
        Ok(IntMatrix { rows })
    }

    /// Column-vector action `M r`.
    pub fn apply(&self, r: &ExpVec) -> Result<ExpVec> {
        if self.ncols() != r.len() {
            return dim_err(format!("{}-column matrix applied to length-{} vector", self.ncols(), r.len()));
        }
        Ok(ExpVec::new(
            self.rows.iter().map(|row| row.iter().zip(r.entries()).map(|(a, b)| a * b).sum()).collect(),
        ))
    }

    pub fn apply_scalars(&self, u: &[Scalar]) -> Result<Vec<Scalar>> {
        if self.ncols() != u.len() {
            return dim_err("matrix applied to vector of wrong length");
        }
        Ok(self
            .rows
            .iter()
            .map(|row| row.iter().zip(u).fold(Scalar::zero(), |acc, (&a, b)| acc + b * int(a)))
            .collect())
    }
}

/// Exact integer determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    let n = m.nrows();
    if n != m.ncols() {
        return dim_err(format!("determinant of non-square {}x{} matrix", n, m.ncols()));
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a: Vec<Vec<BigInt>> = m.rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(sign * &a[n - 1][n - 1])
}

/// Element of `GL(n, Z)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnimodularMatrix {
    m: IntMatrix,
}

impl UnimodularMatrix {
    pub fn new(m: IntMatrix) -> Result<Self> {
        let d = determinant(&m)?;
        if d.abs() != BigInt::one() {
            return domain_err(format!("matrix has determinant {d}, not +-1"));
        }
        Ok(UnimodularMatrix { m })
    }

    pub fn identity(n: usize) -> Self {
        UnimodularMatrix { m: IntMatrix::identity(n) }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.m
    }

    pub fn apply(&self, r: &ExpVec) -> Result<ExpVec> {
        self.m.apply(r)
    }

    pub fn compose(&self, other: &UnimodularMatrix) -> Result<UnimodularMatrix> {
        Ok(UnimodularMatrix { m: self.m.mul(&other.m)? })
    }

    /// Integer inverse, via the adjugate (exact since `det = +-1`).
    pub fn inverse(&self) -> UnimodularMatrix {
        let n = self.dim();
        let det = determinant(&self.m).expect("square").to_i64().expect("unit determinant");
        let mut inv = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let minor: Vec<Vec<i64>> = (0..n)
                    .filter(|&r| r != j)
                    .map(|r| (0..n).filter(|&c| c != i).map(|c| self.m.rows[r][c]).collect())
                    .collect();
                let cof = determinant(&IntMatrix { rows: minor }).expect("square").to_i64().expect("small minor");
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                inv[i][j] = sign * cof * det;
            }
        }
        UnimodularMatrix { m: IntMatrix { rows: inv } }
    }

    pub fn transpose(&self) -> UnimodularMatrix {
        UnimodularMatrix { m: self.m.transpose() }
    }
}

/// Output of [`smith_normalize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithNormalization {
    /// Coordinate change `B`; `B` applied to the subgroup is spanned by `diag[i] e_i`.
    pub transform: UnimodularMatrix,
    pub diag: Vec<i64>,
    pub rank: usize,
}

/// Finds `B` in `GL(n, Z)` carrying the subgroup generated by `generators` onto
/// `diag[0] Z e_1 + ... + diag[k-1] Z e_k` with each diagonal entry dividing the next.
///
/// Pivots are chosen by minimal nonzero absolute value, ties broken by the lowest
/// (row, column) index.
pub fn smith_normalize(generators: &[ExpVec]) -> Result<SmithNormalization> {
    let Some(first) = generators.first() else {
        return dim_err("no generators given");
    };
    let n = first.len();
    if generators.iter().any(|g| g.len() != n) {
        return dim_err("generators have different lengths");
    }
    let m = generators.len();
    let mut a: Vec<Vec<i128>> = generators.iter().map(|g| g.entries().iter().map(|&x| x as i128).collect()).collect();
    // Column operations accumulate in q: a_final = P a_orig q.
    let mut q: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();

    let col_add = |a: &mut Vec<Vec<i128>>, q: &mut Vec<Vec<i128>>, src: usize, dst: usize, f: i128| {
        for row in a.iter_mut() {
            row[dst] -= f * row[src];
        }
        for row in q.iter_mut() {
            row[dst] -= f * row[src];
        }
    };
    let col_swap = |a: &mut Vec<Vec<i128>>, q: &mut Vec<Vec<i128>>, x: usize, y: usize| {
        for row in a.iter_mut() {
            row.swap(x, y);
        }
        for row in q.iter_mut() {
            row.swap(x, y);
        }
    };

    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let v = a[i][j].abs();
                if v != 0 && best.is_none_or(|(bi, bj)| v < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        col_swap(&mut a, &mut q, t, pj);

        loop {
            let p = a[t][t];
            let mut dirty = false;
            for i in t + 1..m {
                let f = Integer::div_floor(&a[i][t], &p);
                if f != 0 {
                    for j in t..n {
                        a[i][j] -= f * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                let f = Integer::div_floor(&a[t][j], &p);
                if f != 0 {
                    col_add(&mut a, &mut q, t, j, f);
                }
                if a[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // Row and column are clear; enforce divisibility of the rest.
                let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| a[i][j] % p != 0));
                match bad {
                    Some(i) => {
                        for j in t..n {
                            a[t][j] += a[i][j];
                        }
                    }
                    None => break,
                }
            }
            // Re-pivot on the smallest entry of row t / column t.
            let mut best = (t, t);
            for i in t..m {
                if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..n {
                if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap(t, best.0);
            }
            if best.1 != t {
                col_swap(&mut a, &mut q, t, best.1);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }

    let to_i64 = |x: i128| i64::try_from(x).map_err(|_| Error::Domain("integer overflow in Smith normal form".into()));
    let q_rows = q
        .into_iter()
        .map(|row| row.into_iter().map(to_i64).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    // Row vectors transform as g -> g q, so the column-vector action is B = q^T.
    let transform = UnimodularMatrix::new(IntMatrix { rows: q_rows }.transpose())?;
    let diag = diag.into_iter().map(to_i64).collect::<Result<Vec<_>>>()?;
    let rank = diag.len();
    Ok(SmithNormalization { transform, diag, rank })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(v: &[i64]) -> ExpVec {
        ExpVec::new(v.to_vec())
    }

    #[test]
    fn single_generator_in_z2() {
        let s = smith_normalize(&[ev(&[2, 4])]).unwrap();
        assert_eq!(s.rank, 1);
        assert_eq!(s.diag, vec![2]);
        assert_eq!(s.transform.apply(&ev(&[2, 4])).unwrap(), ev(&[2, 0]));
        assert_eq!(determinant(s.transform.matrix()).unwrap().abs(), BigInt::one());
    }

    #[test]
    fn zero_subgroup_gives_identity() {
        let s = smith_normalize(&[ev(&[0, 0])]).unwrap();
        assert_eq!(s.rank, 0);
        assert!(s.diag.is_empty());
        assert_eq!(s.transform, UnimodularMatrix::identity(2));
    }

    #[test]
    fn full_lattice() {
        let s = smith_normalize(&[ev(&[1, 0]), ev(&[0, 1])]).unwrap();
        assert_eq!(s.rank, 2);
        assert_eq!(s.diag, vec![1, 1]);
    }

    #[test]
    fn divisibility_chain_is_enforced() {
        // Z/2 x Z/3 style: diag(2,3) must become (1,6).
        let s = smith_normalize(&[ev(&[2, 0]), ev(&[0, 3])]).unwrap();
        assert_eq!(s.diag, vec![1, 6]);
    }

    #[test]
    fn mismatched_lengths_rejected() {
        assert!(matches!(smith_normalize(&[ev(&[1, 2]), ev(&[1])]), Err(Error::Dimension(_))));
        assert!(matches!(smith_normalize(&[]), Err(Error::Dimension(_))));
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&IntMatrix::identity(3)).unwrap(), BigInt::one());
        let m = IntMatrix::from_rows(vec![vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(determinant(&m).unwrap(), BigInt::one());
        let r = IntMatrix::from_rows(vec![vec![2, 4]]).unwrap();
        assert!(matches!(determinant(&r), Err(Error::Dimension(_))));
        let p = IntMatrix::from_rows(vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 5]]).unwrap();
        assert_eq!(determinant(&p).unwrap(), BigInt::from(-5));
    }

    #[test]
    fn unimodular_inverse() {
        let b = UnimodularMatrix::new(IntMatrix::from_rows(vec![vec![2, 1], vec![1, 1]]).unwrap()).unwrap();
        assert_eq!(b.compose(&b.inverse()).unwrap(), UnimodularMatrix::identity(2));
        assert!(UnimodularMatrix::new(IntMatrix::from_rows(vec![vec![2, 0], vec![0, 1]]).unwrap()).is_err());
    }

    #[test]
    fn scalar_text_round_trip() {
        assert_eq!(format_scalar(&frac(-4, 6)), "-2/3");
        assert_eq!(format_scalar(&int(0)), "0");
        assert_eq!(parse_scalar("6/-4").unwrap(), frac(-3, 2));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
    }

    #[test]
    fn pivot_is_last_nonzero() {
        assert_eq!(ev(&[2, 3]).pivot(), Some(1));
        assert_eq!(ev(&[2, 0]).pivot(), Some(0));
        assert_eq!(ev(&[0, 0]).pivot(), None);
    }
}
