use std::sync::Arc;

use num_traits::Zero;

use super::{ModKey, ModVec};
use crate::error::{dim_err, domain_err, Error, Result};
use crate::lattice::{int, pow, ExpVec, Scalar};
use crate::simple_lie::{FiniteModule, GElement, SimpleAlgebra};
use crate::toroidal::{BasisKey, Flavor, TorElt};

/// `W_1 (x) .. (x) W_N (x) A` where `X (x) t^r` acts on factor `j` scaled by `a_{I_j}^r`.
#[derive(Clone, Debug)]
pub struct EvalModule {
    g: Arc<SimpleAlgebra>,
    points: Vec<Vec<Scalar>>,
    factors: Vec<FiniteModule>,
    choices: Vec<Vec<usize>>,
    weights: Vec<Vec<Vec<i64>>>,
}

impl EvalModule {
    /// `points[i]` are the evaluation points of `t_{i+1}`; `choices[j]` picks
    /// one point per variable for factor `j`.
    pub fn new(
        g: Arc<SimpleAlgebra>,
        points: Vec<Vec<Scalar>>,
        factors: Vec<FiniteModule>,
        choices: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if points.is_empty() {
            return domain_err("need at least one variable");
        }
        for (i, pts) in points.iter().enumerate() {
            if pts.iter().any(Zero::is_zero) {
                return domain_err(format!("evaluation point of t_{} is zero", i + 1));
            }
            for a in 0..pts.len() {
                if pts[a + 1..].contains(&pts[a]) {
                    return domain_err(format!("evaluation points of t_{} repeat", i + 1));
                }
            }
        }
        if factors.is_empty() || factors.len() != choices.len() {
            return dim_err("one point choice per factor is required");
        }
        for (w, c) in factors.iter().zip(&choices) {
            if w.rank() != g.rank() {
                return domain_err("factor is a module for a different algebra");
            }
            if c.len() != points.len() || c.iter().zip(&points).any(|(&k, p)| k >= p.len()) {
                return dim_err("point choice out of range");
            }
        }
        let weights = factors.iter().map(|w| w.weights(&g)).collect();
        Ok(EvalModule { g, points, factors, choices, weights })
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn algebra(&self) -> &Arc<SimpleAlgebra> {
        &self.g
    }

    pub fn factors(&self) -> &[FiniteModule] {
        &self.factors
    }

    pub fn points(&self) -> &[Vec<Scalar>] {
        &self.points
    }

    pub fn choices(&self) -> &[Vec<usize>] {
        &self.choices
    }

    /// Every index tuple of the tensor product basis.
    pub fn tensor_basis(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for w in &self.factors {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..w.dim()).map(move |i| {
                        let mut q = p.clone();
                        q.push(i);
                        q
                    })
                })
                .collect();
        }
        out
    }

    /// `a_{I_j}^r`.
    pub fn eval_coeff(&self, j: usize, r: &ExpVec) -> Scalar {
        self.choices[j]
            .iter()
            .enumerate()
            .fold(int(1), |acc, (i, &k)| acc * pow(&self.points[i][k], r[i]))
    }

    fn check(&self, x: &ModVec) -> Result<()> {
        x.check_n(self.n())?;
        for k in x.terms.keys() {
            if k.idx.len() != self.factors.len() || k.idx.iter().zip(&self.factors).any(|(&i, w)| i >= w.dim()) {
                return dim_err("vector index outside the tensor product");
            }
        }
        Ok(())
    }

    /// `(X (x) t^r) . v_1 (x) .. (x) v_N (x) t^s`.
    pub fn act(&self, x: &GElement, r: &ExpVec, v: &ModVec) -> Result<ModVec> {
        self.check(v)?;
        if r.len() != self.n() {
            return dim_err("loop degree has the wrong number of variables");
        }
        if x.coeffs.len() != self.g.dim() {
            return domain_err("element of a different algebra");
        }
        let mats: Vec<_> = self.factors.iter().map(|w| w.act(x)).collect();
        let coeffs: Vec<Scalar> = (0..self.factors.len()).map(|j| self.eval_coeff(j, r)).collect();
        let mut out = ModVec::zero(self.n());
        for (k, c) in &v.terms {
            let target = &k.exp + r;
            for (j, m) in mats.iter().enumerate() {
                let col = k.idx[j];
                for row in 0..m.nrows() {
                    let a = m.get(row, col);
                    if !a.is_zero() {
                        let mut idx = k.idx.clone();
                        idx[j] = row;
                        out.push(ModKey { idx, exp: target.clone() }, c * a * &coeffs[j]);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `d_i . (.. (x) t^s) = s_i (.. (x) t^s)`.
    pub fn degree_act(&self, i: usize, v: &ModVec) -> Result<ModVec> {
        self.check(v)?;
        if i >= self.n() {
            return dim_err("degree derivation index out of range");
        }
        let mut out = ModVec::zero(self.n());
        for (k, c) in &v.terms {
            out.push(k.clone(), c * int(k.exp[i]));
        }
        Ok(out)
    }

    /// Action of an element of `tau~` with the center acting by 0.
    pub fn act_element(&self, g: &TorElt, v: &ModVec) -> Result<ModVec> {
        let h = g.header();
        if h.rank != Some(self.g.rank()) || h.n != self.n() || !matches!(h.flavor, Flavor::Tau | Flavor::TauTilde) {
            return Err(Error::Flavor("evaluation modules carry tau or tau_tilde of matching shape".into()));
        }
        let mut out = ModVec::zero(self.n());
        for (k, c) in g.terms() {
            let y = match k {
                BasisKey::G { g: a, exp } => self.act(&self.g.basis_element(*a), exp, v)?,
                BasisKey::Center { .. } => continue,
                BasisKey::Deriv { i, .. } => self.degree_act(*i, v)?,
            };
            out = out.add(&y.scale(c));
        }
        Ok(out)
    }

    /// Smallest `k >= 1` with `(X_alpha (x) t^m)^k x = 0`.
    pub fn nilpotency_index(&self, root: usize, m: &ExpVec, x: &ModVec) -> Result<usize> {
        if root >= self.g.dim() || !self.g.is_root_vector(root) {
            return domain_err("nilpotency index needs a root vector");
        }
        let bound = self.nilpotency_bound(root);
        let xa = self.g.basis_element(root);
        let mut v = self.act(&xa, m, x)?;
        let mut k = 1;
        while !v.is_zero() {
            if k > bound {
                return domain_err("root vector does not act nilpotently");
            }
            v = self.act(&xa, m, &v)?;
            k += 1;
        }
        Ok(k)
    }

    /// `1 + sum_j max{p : rho_j(X)^p != 0}`.
    pub fn nilpotency_bound(&self, root: usize) -> usize {
        1 + self.factors.iter().map(|w| w.nilpotency_degree(root)).sum::<usize>()
    }

    /// Dimension of the space of weight `mu` for the Cartan of `G` at any fixed degree `s`.
    pub fn weight_space_dim(&self, mu: &[i64], s: &ExpVec) -> Result<usize> {
        if mu.len() != self.g.rank() || s.len() != self.n() {
            return dim_err("weight has the wrong shape");
        }
        Ok(self
            .tensor_basis()
            .iter()
            .filter(|idx| {
                (0..mu.len()).all(|k| idx.iter().enumerate().map(|(j, &i)| self.weights[j][i][k]).sum::<i64>() == mu[k])
            })
            .count())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simple_lie::{build_simple, irrep, ModuleLabel};

    fn ev(v: &[i64]) -> ExpVec {
        ExpVec::new(v.to_vec())
    }

    fn nat_nat() -> EvalModule {
        let g = build_simple(1).unwrap();
        let w = irrep(&g, ModuleLabel::Natural).unwrap();
        EvalModule::new(g, vec![vec![int(1), int(-1)]], vec![w.clone(), w], vec![vec![0], vec![1]]).unwrap()
    }

    #[test]
    fn leibniz_with_evaluation() {
        let m = nat_nat();
        let e = m.algebra().basis_element(0);
        // v = v_2, w = v_2 so that e acts nontrivially on both
        let x = ModVec::basis(vec![1, 1], ev(&[0]));
        let expect = ModVec::basis(vec![0, 1], ev(&[1])).sub(&ModVec::basis(vec![1, 0], ev(&[1])));
        assert_eq!(m.act(&e, &ev(&[1]), &x).unwrap(), expect);
        let diag = ModVec::basis(vec![0, 1], ev(&[0])).add(&ModVec::basis(vec![1, 0], ev(&[0])));
        assert_eq!(m.act(&e, &ev(&[0]), &x).unwrap(), diag);
    }

    #[test]
    fn degree_derivation() {
        let m = nat_nat();
        let x = ModVec::basis(vec![0, 1], ev(&[4]));
        assert_eq!(m.degree_act(0, &x).unwrap(), x.scale(&int(4)));
    }

    #[test]
    fn nilpotency_examples() {
        let m = nat_nat();
        let lowest = ModVec::basis(vec![1, 1], ev(&[0]));
        assert_eq!(m.nilpotency_index(0, &ev(&[0]), &lowest).unwrap(), 3);
        let highest = ModVec::basis(vec![0, 0], ev(&[0]));
        assert_eq!(m.nilpotency_index(0, &ev(&[2]), &highest).unwrap(), 1);
        assert!(m.nilpotency_index(2, &ev(&[0]), &lowest).is_err());

        let g = build_simple(1).unwrap();
        let t = irrep(&g, ModuleLabel::Trivial).unwrap();
        let triv = EvalModule::new(g, vec![vec![int(3)]], vec![t], vec![vec![0]]).unwrap();
        assert_eq!(triv.nilpotency_index(1, &ev(&[5]), &ModVec::basis(vec![0], ev(&[0]))).unwrap(), 1);
    }

    #[test]
    fn weight_spaces() {
        let m = nat_nat();
        assert_eq!(m.weight_space_dim(&[0], &ev(&[3])).unwrap(), 2);
        assert_eq!(m.weight_space_dim(&[2], &ev(&[3])).unwrap(), 1);
        assert_eq!(m.weight_space_dim(&[4], &ev(&[0])).unwrap(), 0);
    }

    #[test]
    fn bad_points_rejected() {
        let g = build_simple(1).unwrap();
        let w = irrep(&g, ModuleLabel::Natural).unwrap();
        assert!(EvalModule::new(g.clone(), vec![vec![int(0)]], vec![w.clone()], vec![vec![0]]).is_err());
        assert!(EvalModule::new(g.clone(), vec![vec![int(2), int(2)]], vec![w.clone()], vec![vec![0]]).is_err());
        assert!(EvalModule::new(g, vec![vec![int(2)]], vec![w], vec![vec![1]]).is_err());
    }
}
