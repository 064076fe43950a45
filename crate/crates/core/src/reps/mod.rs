//! Concrete modules: Larsson modules `F^alpha(psi, b)`, evaluation tensor
//! modules, and the degree-zero top modules.

mod eval;
mod larsson;
mod top;

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{dim_err, Result};
use crate::lattice::{ExpVec, Scalar};

pub use eval::EvalModule;
pub use larsson::{ClosureReport, LarssonModule};
pub use top::{CenterTrivialModule, DerHatTopModule, TopModule};

/// Basis symbol `w_1 (x) .. (x) w_k (x) t^m`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ModKey {
    pub idx: Vec<usize>,
    pub exp: ExpVec,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModVec {
    n: usize,
    terms: BTreeMap<ModKey, Scalar>,
}

impl ModVec {
    pub fn zero(n: usize) -> Self {
        ModVec { n, terms: BTreeMap::new() }
    }

    pub fn basis(idx: Vec<usize>, exp: ExpVec) -> Self {
        let mut v = ModVec::zero(exp.len());
        v.push(ModKey { idx, exp }, Scalar::from_integer(1.into()));
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<ModKey, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn push(&mut self, key: ModKey, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &ModVec) -> ModVec {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.push(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> ModVec {
        if c.is_zero() {
            return ModVec::zero(self.n);
        }
        ModVec { n: self.n, terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn sub(&self, other: &ModVec) -> ModVec {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.push(k.clone(), -c);
        }
        out
    }

    /// Splits into homogeneous components by `t`-degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<ExpVec, ModVec> {
        let mut out: BTreeMap<ExpVec, ModVec> = BTreeMap::new();
        for (k, c) in &self.terms {
            out.entry(k.exp.clone()).or_insert_with(|| ModVec::zero(self.n)).push(k.clone(), c.clone());
        }
        out
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if self.n != n || self.terms.keys().any(|k| k.exp.len() != n) {
            return dim_err(format!("vector over {} variables used with {n}", self.n));
        }
        Ok(())
    }
}

/// `t^r . v(m) = v(m + r)`.
pub fn a_act(r: &ExpVec, x: &ModVec) -> Result<ModVec> {
    x.check_n(r.len())?;
    let mut out = ModVec::zero(x.n);
    for (k, c) in &x.terms {
        out.push(ModKey { idx: k.idx.clone(), exp: &k.exp + r }, c.clone());
    }
    Ok(out)
}

/// Closed box `lo <= m <= hi` of exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpBox {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl ExpBox {
    pub fn symmetric(n: usize, bound: i64) -> Self {
        ExpBox { lo: vec![-bound; n], hi: vec![bound; n] }
    }

    pub fn n(&self) -> usize {
        self.lo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lo.len() != self.hi.len() || self.lo.iter().zip(&self.hi).any(|(l, h)| l > h)
    }

    pub fn contains(&self, m: &ExpVec) -> bool {
        m.len() == self.lo.len() && (0..m.len()).all(|i| self.lo[i] <= m[i] && m[i] <= self.hi[i])
    }

    /// All points, lexicographic.
    pub fn points(&self) -> Vec<ExpVec> {
        if self.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Vec::new()];
        for i in 0..self.lo.len() {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (self.lo[i]..=self.hi[i]).map(move |x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        out.into_iter().map(ExpVec::new).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int;

    #[test]
    fn shift_examples() {
        let v = ModVec::basis(vec![0], ExpVec::new(vec![2, 3]));
        let r = ExpVec::new(vec![1, 0]);
        assert_eq!(a_act(&r, &v).unwrap(), ModVec::basis(vec![0], ExpVec::new(vec![3, 3])));
        assert_eq!(a_act(&ExpVec::zero(2), &v).unwrap(), v);
        let s = ExpVec::new(vec![-4, 1]);
        let two = a_act(&r, &a_act(&s, &v).unwrap()).unwrap();
        assert_eq!(two, a_act(&(&r + &s), &v).unwrap());
        assert!(a_act(&ExpVec::zero(3), &v).is_err());
    }

    #[test]
    fn box_points() {
        let b = ExpBox::symmetric(2, 1);
        assert_eq!(b.points().len(), 9);
        assert!(b.contains(&ExpVec::new(vec![1, -1])));
        assert!(!b.contains(&ExpVec::new(vec![2, 0])));
        assert!(ExpBox { lo: vec![1], hi: vec![0] }.is_empty());
    }

    #[test]
    fn vector_arithmetic_cancels() {
        let v = ModVec::basis(vec![1], ExpVec::zero(1)).scale(&int(3));
        assert!(v.sub(&v).is_zero());
        assert_eq!(v.add(&v), v.scale(&int(2)));
    }
}
