//! Seeded samplers shared by the verification suites and the tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lattice::{frac, ExpVec, IntMatrix, Scalar, UnimodularMatrix};
use crate::toroidal::{center_basis, BasisKey, Flavor, TorElt, ToroidalAlgebra};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn exp(rng: &mut SampleRng, n: usize, bound: i64) -> ExpVec {
    ExpVec::new((0..n).map(|_| rng.gen_range(-bound..=bound)).collect())
}

pub fn nonzero_exp(rng: &mut SampleRng, n: usize, bound: i64) -> ExpVec {
    loop {
        let r = exp(rng, n, bound);
        if !r.is_zero() {
            return r;
        }
    }
}

/// Small nonzero fraction `p/q` with `|p| <= 5`, `1 <= q <= 3`.
pub fn scalar(rng: &mut SampleRng) -> Scalar {
    let mut p = 0;
    while p == 0 {
        p = rng.gen_range(-5..=5);
    }
    frac(p, rng.gen_range(1..=3))
}

pub fn scalars(rng: &mut SampleRng, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| if rng.gen_bool(0.3) { Scalar::from_integer(0.into()) } else { scalar(rng) }).collect()
}

/// A canonical basis key of `alg`, exponents bounded by `bound`.
pub fn key(rng: &mut SampleRng, alg: &ToroidalAlgebra, bound: i64) -> BasisKey {
    let n = alg.n();
    let mut kinds = vec![1u8];
    if alg.flavor().has_g() {
        kinds.push(0);
    }
    if alg.flavor() != Flavor::Tau {
        kinds.push(2);
    }
    match *kinds.choose(rng).unwrap() {
        0 => BasisKey::G { g: rng.gen_range(0..alg.g().unwrap().dim()), exp: exp(rng, n, bound) },
        1 => {
            let mut r = exp(rng, n, bound);
            if n == 1 {
                r = ExpVec::zero(1);
            }
            let options = center_basis(&r);
            options.choose(rng).unwrap().clone()
        }
        _ => {
            let r = if alg.flavor() == Flavor::TauTilde { ExpVec::zero(n) } else { exp(rng, n, bound) };
            BasisKey::Deriv { i: rng.gen_range(0..n), exp: r }
        }
    }
}

pub fn element(rng: &mut SampleRng, alg: &ToroidalAlgebra, terms: usize, bound: i64) -> TorElt {
    let pairs: Vec<(BasisKey, Scalar)> = (0..terms).map(|_| (key(rng, alg, bound), scalar(rng))).collect();
    alg.element(pairs).expect("sampled keys belong to the algebra")
}

/// Canonical basis key with vanishing exponent in variable 0.
pub fn degree_zero_key(rng: &mut SampleRng, alg: &ToroidalAlgebra, bound: i64) -> BasisKey {
    loop {
        let k = key(rng, alg, bound);
        let e = k.exp().entries().to_vec();
        let mut e0 = e.clone();
        e0[0] = 0;
        let k = match k {
            BasisKey::G { g, .. } => BasisKey::G { g, exp: ExpVec::new(e0) },
            BasisKey::Center { i, .. } => BasisKey::Center { i, exp: ExpVec::new(e0) },
            BasisKey::Deriv { i, .. } => BasisKey::Deriv { i, exp: ExpVec::new(e0) },
        };
        if k.is_canonical() {
            return k;
        }
    }
}

/// Product of random elementary integer row operations.
pub fn unimodular(rng: &mut SampleRng, n: usize, steps: usize) -> UnimodularMatrix {
    let mut m: Vec<Vec<i64>> = IntMatrix::identity(n).rows().to_vec();
    for _ in 0..steps {
        match rng.gen_range(0..3) {
            0 if n > 1 => {
                let i = rng.gen_range(0..n);
                let mut j = rng.gen_range(0..n - 1);
                if j >= i {
                    j += 1;
                }
                let f = if rng.gen_bool(0.5) { 1 } else { -1 };
                for c in 0..n {
                    m[i][c] += f * m[j][c];
                }
            }
            1 if n > 1 => {
                let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
                m.swap(i, j);
            }
            _ => {
                let i = rng.gen_range(0..n);
                for c in m[i].iter_mut() {
                    *c = -*c;
                }
            }
        }
    }
    UnimodularMatrix::new(IntMatrix::from_rows(m).unwrap()).expect("elementary operations keep det = +-1")
}
