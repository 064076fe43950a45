//! The dual space spanned by `alpha_1..alpha_d, delta_1..delta_n, Lambda_1..Lambda_n`,
//! its form, root multiplicities of `tau~`, and the extended (GIM) root matrix.

use num_traits::{ToPrimitive, Zero};

use crate::error::{dim_err, Result};
use crate::lattice::{int, Scalar};
use crate::linalg::QMatrix;
use crate::simple_lie::SimpleAlgebra;

/// Coefficients over `(alpha_1..alpha_d, delta_1..delta_n, Lambda_1..Lambda_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVec {
    d: usize,
    n: usize,
    coeffs: Vec<Scalar>,
}

impl WeightVec {
    pub fn new(d: usize, n: usize, coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.len() != d + 2 * n {
            return dim_err(format!("weight needs {} coefficients, got {}", d + 2 * n, coeffs.len()));
        }
        Ok(WeightVec { d, n, coeffs })
    }

    pub fn zero(d: usize, n: usize) -> Self {
        WeightVec { d, n, coeffs: vec![Scalar::zero(); d + 2 * n] }
    }

    /// `alpha + delta_r` for an integer root-coordinate vector and exponent.
    pub fn from_parts(alpha: &[i64], r: &[i64], n: usize) -> Self {
        let d = alpha.len();
        let mut coeffs: Vec<Scalar> = alpha.iter().map(|&a| int(a)).collect();
        coeffs.extend(r.iter().map(|&x| int(x)));
        coeffs.resize(d + 2 * n, Scalar::zero());
        WeightVec { d, n, coeffs }
    }

    pub fn alpha(d: usize, n: usize, i: usize) -> Self {
        Self::basis(d, n, i)
    }

    pub fn delta(d: usize, n: usize, i: usize) -> Self {
        Self::basis(d, n, d + i)
    }

    pub fn lambda(d: usize, n: usize, i: usize) -> Self {
        Self::basis(d, n, d + n + i)
    }

    fn basis(d: usize, n: usize, k: usize) -> Self {
        let mut w = Self::zero(d, n);
        w.coeffs[k] = int(1);
        w
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn add(&self, other: &WeightVec) -> Result<WeightVec> {
        if (self.d, self.n) != (other.d, other.n) {
            return dim_err("weights of different ambient spaces");
        }
        Ok(WeightVec { d: self.d, n: self.n, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &WeightVec) -> Result<WeightVec> {
        self.add(&WeightVec { d: other.d, n: other.n, coeffs: other.coeffs.iter().map(|c| -c).collect() })
    }
}

/// `[[A, 0, 0], [0, 0, I], [0, I, 0]]` with `A` the Cartan matrix of `G`.
pub fn gram_matrix(g: &SimpleAlgebra, n: usize) -> QMatrix {
    let d = g.rank();
    let size = d + 2 * n;
    let mut m = QMatrix::zeros(size, size);
    for (i, row) in g.cartan_matrix().iter().enumerate() {
        for (j, &a) in row.iter().enumerate() {
            m.set(i, j, int(a));
        }
    }
    for i in 0..n {
        m.set(d + i, d + n + i, int(1));
        m.set(d + n + i, d + i, int(1));
    }
    m
}

pub fn form(g: &SimpleAlgebra, n: usize, lambda: &WeightVec, mu: &WeightVec) -> Result<Scalar> {
    let size = g.rank() + 2 * n;
    if lambda.coeffs.len() != size || mu.coeffs.len() != size {
        return dim_err("weight length does not match the ambient space");
    }
    let gm = gram_matrix(g, n);
    Ok(lambda.coeffs.iter().zip(gm.mul_vec(&mu.coeffs)).fold(Scalar::zero(), |acc, (a, b)| acc + a * b))
}

fn as_integers(v: &[Scalar]) -> Option<Vec<i64>> {
    v.iter().map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None }).collect()
}

/// `dim tau~_gamma`: 1 on real roots `alpha + delta_r`, `d + n - 1` on `delta_r != 0`
/// (`h (x) t^r` plus the center at degree `r`), `d + 2n` at 0, else 0.
pub fn root_space_dim(g: &SimpleAlgebra, n: usize, gamma: &WeightVec) -> Result<usize> {
    let d = g.rank();
    if gamma.coeffs.len() != d + 2 * n {
        return dim_err("weight length does not match the ambient space");
    }
    if gamma.coeffs[d + n..].iter().any(|c| !c.is_zero()) {
        return Ok(0);
    }
    let (Some(alpha), Some(r)) = (as_integers(&gamma.coeffs[..d]), as_integers(&gamma.coeffs[d..d + n])) else {
        return Ok(0);
    };
    let alpha_zero = alpha.iter().all(|&a| a == 0);
    let r_zero = r.iter().all(|&a| a == 0);
    Ok(match (alpha_zero, r_zero) {
        (true, true) => d + 2 * n,
        (true, false) => d + n - 1,
        (false, _) if g.roots().contains(&alpha) => 1,
        _ => 0,
    })
}

/// Gram matrix of `alpha_1..alpha_d, theta - delta_1, .., theta - delta_n`.
pub fn gim_matrix(g: &SimpleAlgebra, n: usize) -> Vec<Vec<i64>> {
    let d = g.rank();
    let mut theta = vec![0i64; d];
    for (i, t) in theta.iter_mut().enumerate() {
        *t = g.roots().iter().map(|r| r[i]).max().unwrap_or(0);
    }
    let mut simple: Vec<WeightVec> = (0..d).map(|i| WeightVec::alpha(d, n, i)).collect();
    for j in 0..n {
        let mut r = vec![0i64; n];
        r[j] = -1;
        simple.push(WeightVec::from_parts(&theta, &r, n));
    }
    simple
        .iter()
        .map(|a| {
            simple
                .iter()
                .map(|b| form(g, n, a, b).expect("same ambient").to_integer().to_i64().expect("small entry"))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simple_lie::build_simple;

    #[test]
    fn gram_sl2_n1() {
        let g = build_simple(1).unwrap();
        let expect = QMatrix::from_rows(vec![
            vec![int(2), int(0), int(0)],
            vec![int(0), int(0), int(1)],
            vec![int(0), int(1), int(0)],
        ]);
        assert_eq!(gram_matrix(&g, 1), expect);
    }

    #[test]
    fn form_examples() {
        let g = build_simple(1).unwrap();
        let n = 2;
        for i in 0..n {
            for j in 0..n {
                let di = WeightVec::delta(1, n, i);
                let dj = WeightVec::delta(1, n, j);
                let lj = WeightVec::lambda(1, n, j);
                assert!(form(&g, n, &di, &dj).unwrap().is_zero());
                assert_eq!(form(&g, n, &lj, &di).unwrap(), int((i == j) as i64));
            }
        }
        let a = WeightVec::alpha(1, n, 0);
        assert_eq!(form(&g, n, &a, &a).unwrap(), int(2));
    }

    #[test]
    fn root_space_examples() {
        let g = build_simple(1).unwrap();
        assert_eq!(root_space_dim(&g, 2, &WeightVec::from_parts(&[1], &[1, 0], 2)).unwrap(), 1);
        assert_eq!(root_space_dim(&g, 2, &WeightVec::zero(1, 2)).unwrap(), 5);
        assert_eq!(root_space_dim(&g, 2, &WeightVec::from_parts(&[0], &[1, 0], 2)).unwrap(), 2);
        assert_eq!(root_space_dim(&g, 2, &WeightVec::from_parts(&[2], &[1, 0], 2)).unwrap(), 0);
        assert_eq!(root_space_dim(&g, 2, &WeightVec::lambda(1, 2, 0)).unwrap(), 0);
    }

    #[test]
    fn gim_examples() {
        let g = build_simple(1).unwrap();
        assert_eq!(gim_matrix(&g, 1), vec![vec![2, 2], vec![2, 2]]);
        assert_eq!(gim_matrix(&g, 2), vec![vec![2; 3]; 3]);
        let g3 = build_simple(2).unwrap();
        let m = gim_matrix(&g3, 2);
        assert!((0..4).all(|i| m[i][i] == 2));
        assert_eq!(m[0][2], 1);
    }
}
