use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;

use super::{FockKey, FockLattice, FockSpace, FockVec};
use crate::error::{dim_err, Error, Result};
use crate::lattice::{int, ExpVec, Scalar};
use crate::simple_lie::{GBasis, SimpleAlgebra};
use crate::toroidal::{BasisKey, TorElt};

/// Vertex representation of `tau` in `n+1` variables on `V(Gamma)`; the last
/// variable is the vertex-operator variable.
#[derive(Clone, Debug)]
pub struct FockRep {
    g: Arc<SimpleAlgebra>,
    space: FockSpace,
    /// Sign `c_alpha` attached to each root vector, 1 on the Cartan.
    signs: Vec<i64>,
}

impl FockRep {
    /// `n` is the number of lattice `delta`s, so the algebra has `n+1` variables.
    pub fn new(g: Arc<SimpleAlgebra>, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("the vertex representation needs at least two variables".into()));
        }
        let lattice = FockLattice::new(&g, n);
        let signs = root_signs(&g, &lattice);
        Ok(FockRep { g, space: FockSpace::new(lattice), signs })
    }

    pub fn space(&self) -> &FockSpace {
        &self.space
    }

    pub fn algebra(&self) -> &Arc<SimpleAlgebra> {
        &self.g
    }

    pub fn n(&self) -> usize {
        self.space.lattice().n()
    }

    pub fn sign(&self, a: usize) -> i64 {
        self.signs[a]
    }

    /// `alpha + delta_r` as a lattice vector.
    pub fn lattice_vector(&self, alpha: &[i64], r: &[i64]) -> Vec<i64> {
        let d = self.g.rank();
        let mut v = vec![0; self.space.rank()];
        v[..d].copy_from_slice(alpha);
        v[d..d + r.len()].copy_from_slice(r);
        v
    }

    fn direction(&self, i: usize) -> Vec<Scalar> {
        let mut a = vec![Scalar::zero(); self.space.rank()];
        a[i] = int(1);
        a
    }

    fn split(&self, exp: &ExpVec) -> (Vec<i64>, i64) {
        let n = self.n();
        (exp.entries()[..n].to_vec(), exp[n])
    }

    /// Image of one basis symbol, including non-canonical center symbols `t^m K_i`.
    pub fn act_key(&self, key: &BasisKey, x: &FockVec) -> Result<FockVec> {
        let n = self.n();
        if key.exp().len() != n + 1 {
            return dim_err("element has the wrong number of variables");
        }
        let (r, a) = self.split(key.exp());
        let d = self.g.rank();
        match key {
            BasisKey::G { g, .. } => match self.g.basis()[*g] {
                GBasis::Root { .. } => {
                    let alpha = self.g.root_of(*g).expect("root vector");
                    let y = self.space.vertex_component(&self.lattice_vector(&alpha, &r), a, x)?;
                    Ok(y.scale(&int(self.signs[*g])))
                }
                GBasis::Cartan(k) => {
                    self.space.normal_ordered_t(&self.direction(k), a, &self.lattice_vector(&vec![0; d], &r), x)
                }
            },
            BasisKey::Center { i, .. } => {
                let delta = self.lattice_vector(&vec![0; d], &r);
                if *i < n {
                    self.space.normal_ordered_t(&self.direction(d + i), a, &delta, x)
                } else {
                    self.space.vertex_component(&delta, a, x)
                }
            }
            BasisKey::Deriv { .. } => Err(Error::Unsupported("derivations have no vertex-operator image".into())),
        }
    }

    pub fn act(&self, g: &TorElt, x: &FockVec) -> Result<FockVec> {
        let h = g.header();
        if h.rank != Some(self.g.rank()) || h.n != self.n() + 1 {
            return Err(Error::Flavor(format!("expected tau over sl_{} in {} variables", self.g.rank() + 1, self.n() + 1)));
        }
        let mut out = FockVec::zero(self.space.rank());
        for (k, c) in g.terms() {
            out.add_assign(&self.act_key(k, x)?.scale(c));
        }
        Ok(out)
    }

    /// Image of `d(t^m) = sum_i m_i t^m K_i` taken symbol by symbol; zero when the map
    /// factors through `Omega_A / d_A`.
    pub fn exact_form_act(&self, m: &ExpVec, x: &FockVec) -> Result<FockVec> {
        let mut out = FockVec::zero(self.space.rank());
        for i in 0..m.len() {
            if m[i] != 0 {
                let key = BasisKey::Center { i, exp: m.clone() };
                out.add_assign(&self.act_key(&key, x)?.scale(&int(m[i])));
            }
        }
        Ok(out)
    }
}

/// Memoizes images of basis symbols on basis vectors; useful when many
/// operators are applied to overlapping sets of vectors.
#[derive(Debug)]
pub struct FockActionCache<'a> {
    rep: &'a FockRep,
    memo: HashMap<(BasisKey, FockKey), FockVec>,
}

impl<'a> FockActionCache<'a> {
    pub fn new(rep: &'a FockRep) -> Self {
        FockActionCache { rep, memo: HashMap::new() }
    }

    pub fn act(&mut self, g: &TorElt, x: &FockVec) -> Result<FockVec> {
        let h = g.header();
        if h.rank != Some(self.rep.g.rank()) || h.n != self.rep.n() + 1 {
            return Err(Error::Flavor("element does not match the vertex representation".into()));
        }
        let mut out = FockVec::zero(self.rep.space.rank());
        for (k, c) in g.terms() {
            for (v, a) in x.terms() {
                let memo_key = (k.clone(), v.clone());
                if !self.memo.contains_key(&memo_key) {
                    let y = self.rep.act_key(k, &FockVec::basis(v.clone()))?;
                    self.memo.insert(memo_key.clone(), y);
                }
                out.add_assign(&self.memo[&memo_key].scale(&(c * a)));
            }
        }
        Ok(out)
    }
}

/// Signs `c_alpha` with `c_a c_b eps(a,b) = N_ab c_{a+b}` and `c_a c_{-a} eps(a,-a) = 1`,
/// where `[x_a, x_b] = N_ab x_{a+b}`.
fn root_signs(g: &SimpleAlgebra, lattice: &FockLattice) -> Vec<i64> {
    let d = g.rank();
    let lift = |alpha: &[i64]| -> Vec<i64> {
        let mut v = vec![0; lattice.rank()];
        v[..d].copy_from_slice(alpha);
        v
    };
    let mut signs = vec![1i64; g.dim()];
    let roots: Vec<(usize, Vec<i64>)> = (0..g.dim()).filter_map(|a| g.root_of(a).map(|r| (a, r))).collect();
    let find = |r: &[i64]| roots.iter().find(|(_, x)| x == r).map(|(a, _)| *a);
    let mut positive: Vec<&(usize, Vec<i64>)> = roots.iter().filter(|(_, r)| r.iter().all(|&x| x >= 0)).collect();
    positive.sort_by_key(|(_, r)| r.iter().sum::<i64>());
    for (a, r) in &positive {
        if r.iter().sum::<i64>() == 1 {
            continue;
        }
        let i = (0..d)
            .find(|&i| {
                let mut b = r.clone();
                b[i] -= 1;
                r[i] > 0 && find(&b).is_some()
            })
            .expect("positive root decomposes");
        let mut beta = r.clone();
        beta[i] -= 1;
        let mut simple = vec![0; d];
        simple[i] = 1;
        let (b, s) = (find(&beta).unwrap(), find(&simple).unwrap());
        let nab = g
            .bracket_basis(b, s)
            .iter()
            .find(|(c, _)| c == a)
            .map(|(_, v)| v.to_integer())
            .expect("root sum bracket");
        let nab: i64 = num_traits::ToPrimitive::to_i64(&nab).unwrap();
        signs[*a] = signs[b] * signs[s] * lattice.cocycle(&lift(&beta), &lift(&simple)) * nab;
    }
    for (a, r) in &positive {
        let neg: Vec<i64> = r.iter().map(|x| -x).collect();
        let b = find(&neg).unwrap();
        signs[b] = signs[*a] * lattice.cocycle(&lift(r), &lift(&neg));
    }
    signs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simple_lie::build_simple;

    #[test]
    fn sign_constraints_hold() {
        for rank in 1..=3 {
            let g = build_simple(rank).unwrap();
            let rep = FockRep::new(g.clone(), 1).unwrap();
            let l = rep.space().lattice();
            let lift = |a: usize| rep.lattice_vector(&g.root_of(a).unwrap(), &[0]);
            for a in (0..g.dim()).filter(|&a| g.is_root_vector(a)) {
                for b in (0..g.dim()).filter(|&b| g.is_root_vector(b)) {
                    let eps = l.cocycle(&lift(a), &lift(b));
                    let sum: Vec<i64> = g.root_of(a).unwrap().iter().zip(g.root_of(b).unwrap()).map(|(x, y)| x + y).collect();
                    if sum.iter().all(|&x| x == 0) {
                        assert_eq!(rep.sign(a) * rep.sign(b) * eps, 1);
                    } else if let Some(&(c, ref v)) = g.bracket_basis(a, b).first() {
                        assert_eq!(Scalar::from_integer((rep.sign(a) * rep.sign(b) * eps).into()), v * int(rep.sign(c)));
                    }
                }
            }
        }
    }

    #[test]
    fn heisenberg_image() {
        let g = build_simple(1).unwrap();
        let rep = FockRep::new(g, 1).unwrap();
        let x = FockVec::basis(FockKey { charge: vec![1, 0, 1], modes: vec![(0, 2)] });
        for k in -2..=2 {
            let key = BasisKey::G { g: 2, exp: ExpVec::new(vec![0, k]) };
            let expect = rep.space().heis_act(&rep.direction(0), k, &x).unwrap();
            assert_eq!(rep.act_key(&key, &x).unwrap(), expect);
        }
    }

    #[test]
    fn derivations_unsupported() {
        let rep = FockRep::new(build_simple(1).unwrap(), 1).unwrap();
        let key = BasisKey::Deriv { i: 0, exp: ExpVec::zero(2) };
        assert!(matches!(rep.act_key(&key, &FockVec::vacuum(3)), Err(Error::Unsupported(_))));
    }
}
