//! Degree-zero top modules. In the `(n+1)`-variable algebras the variable
//! with index 0 is `t_0`; vectors carry exponents in the remaining `n` variables.

use num_traits::{One, Zero};

use super::{LarssonModule, ModKey, ModVec};
use crate::error::{dim_err, domain_err, Error, Result};
use crate::lattice::{ExpVec, Scalar};
use crate::linalg::QMatrix;
use crate::simple_lie::FiniteModule;
use crate::toroidal::{BasisKey, Flavor, Header, TorElt};

/// `c * (M on slot) (x) t^{m + r}`, or a plain shift when `mat` is `None`.
fn shift_apply(x: &ModVec, slot: usize, mat: Option<&QMatrix>, c: &Scalar, r: &ExpVec) -> ModVec {
    let mut out = ModVec::zero(x.n);
    if c.is_zero() {
        return out;
    }
    for (k, v) in &x.terms {
        let target = &k.exp + r;
        match mat {
            None => out.push(ModKey { idx: k.idx.clone(), exp: target }, v * c),
            Some(m) => {
                let col = k.idx[slot];
                for row in 0..m.nrows() {
                    let a = m.get(row, col);
                    if !a.is_zero() {
                        let mut idx = k.idx.clone();
                        idx[slot] = row;
                        out.push(ModKey { idx, exp: target.clone() }, v * c * a);
                    }
                }
            }
        }
    }
    out
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut u = vec![Scalar::zero(); n];
    u[i] = Scalar::one();
    u
}

fn check_header(h: Header, rank: Option<usize>, n: usize, flavor: Flavor) -> Result<()> {
    if h.flavor != flavor || h.n != n || h.rank != rank {
        return Err(Error::Flavor(format!("expected {} over {n} variables, got {:?}", flavor.name(), h)));
    }
    Ok(())
}

fn check_fiber(x: &ModVec, n: usize, dims: &[usize]) -> Result<()> {
    x.check_n(n)?;
    for k in x.terms.keys() {
        if k.idx.len() != dims.len() || k.idx.iter().zip(dims).any(|(i, d)| i >= d) {
            return dim_err("vector index outside the module");
        }
    }
    Ok(())
}

/// Splits `t^{(r_0, r)}` into `r`, rejecting nonzero `t_0`-degree.
fn horizontal(exp: &ExpVec) -> Result<ExpVec> {
    if exp[0] != 0 {
        return domain_err(format!("element has t_0-degree {}", exp[0]));
    }
    Ok(exp.without(0))
}

/// `T = W (x) F^alpha(psi, b)` for the degree-zero part of `tau^` in `n+1` variables,
/// with `K(e_0, r)` acting by `c0` and `D(e_0, r)` by `d`.
#[derive(Clone, Debug)]
pub struct TopModule {
    w: FiniteModule,
    larsson: LarssonModule,
    c0: Scalar,
    d: Scalar,
}

impl TopModule {
    pub fn new(w: FiniteModule, larsson: LarssonModule, c0: Scalar, d: Scalar) -> Self {
        TopModule { w, larsson, c0, d }
    }

    pub fn larsson(&self) -> &LarssonModule {
        &self.larsson
    }

    pub fn w(&self) -> &FiniteModule {
        &self.w
    }

    pub fn act(&self, g: &TorElt, x: &ModVec) -> Result<ModVec> {
        let n = self.larsson.n();
        check_header(g.header(), Some(self.w.rank()), n + 1, Flavor::TauHat)?;
        check_fiber(x, n, &[self.w.dim(), self.larsson.fiber_dim()])?;
        let mut out = ModVec::zero(n);
        for (k, c) in g.terms() {
            let r = horizontal(k.exp())?;
            let y = match k {
                BasisKey::G { g: a, .. } => shift_apply(x, 0, Some(self.w.basis_action(*a)), c, &r),
                BasisKey::Deriv { i: 0, .. } => shift_apply(x, 0, None, &(c * &self.d), &r),
                BasisKey::Deriv { i, .. } => self.larsson.act_slot(&unit(n, i - 1), &r, x, 1)?.scale(c),
                BasisKey::Center { i: 0, .. } => shift_apply(x, 0, None, &(c * &self.c0), &r),
                BasisKey::Center { .. } => continue,
            };
            out = out.add(&y);
        }
        Ok(out)
    }
}

/// `V(psi, b) (x) A_n` as a module for the degree-zero part of `DerA^` in `n+1` variables.
#[derive(Clone, Debug)]
pub struct DerHatTopModule {
    larsson: LarssonModule,
    c: Scalar,
    d: Scalar,
}

impl DerHatTopModule {
    pub fn new(larsson: LarssonModule, c: Scalar, d: Scalar) -> Self {
        DerHatTopModule { larsson, c, d }
    }

    pub fn larsson(&self) -> &LarssonModule {
        &self.larsson
    }

    pub fn act(&self, g: &TorElt, x: &ModVec) -> Result<ModVec> {
        let n = self.larsson.n();
        check_header(g.header(), None, n + 1, Flavor::DerAHat)?;
        check_fiber(x, n, &[self.larsson.fiber_dim()])?;
        let mut out = ModVec::zero(n);
        for (k, c) in g.terms() {
            let r = horizontal(k.exp())?;
            let y = match k {
                BasisKey::Deriv { i: 0, .. } => shift_apply(x, 0, None, &(c * &self.d), &r),
                BasisKey::Deriv { i, .. } => self.larsson.act_slot(&unit(n, i - 1), &r, x, 0)?.scale(c),
                BasisKey::Center { i: 0, .. } => shift_apply(x, 0, None, &(c * &self.c), &r),
                BasisKey::Center { .. } => continue,
                BasisKey::G { .. } => unreachable!("checked flavor has no G-part"),
            };
            out = out.add(&y);
        }
        Ok(out)
    }
}

/// `W (x) V(psi, b) (x) A` for all of `tau^` in `n` variables, center acting by 0.
#[derive(Clone, Debug)]
pub struct CenterTrivialModule {
    w: FiniteModule,
    larsson: LarssonModule,
}

impl CenterTrivialModule {
    pub fn new(w: FiniteModule, larsson: LarssonModule) -> Self {
        CenterTrivialModule { w, larsson }
    }

    pub fn act(&self, g: &TorElt, x: &ModVec) -> Result<ModVec> {
        let n = self.larsson.n();
        check_header(g.header(), Some(self.w.rank()), n, Flavor::TauHat)?;
        check_fiber(x, n, &[self.w.dim(), self.larsson.fiber_dim()])?;
        let mut out = ModVec::zero(n);
        for (k, c) in g.terms() {
            let y = match k {
                BasisKey::G { g: a, exp } => shift_apply(x, 0, Some(self.w.basis_action(*a)), c, exp),
                BasisKey::Deriv { i, exp } => self.larsson.act_slot(&unit(n, *i), exp, x, 1)?.scale(c),
                BasisKey::Center { .. } => continue,
            };
            out = out.add(&y);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int;
    use crate::simple_lie::{build_simple, irrep, GlModule, ModuleLabel};
    use crate::toroidal::ToroidalAlgebra;

    fn ev(v: &[i64]) -> ExpVec {
        ExpVec::new(v.to_vec())
    }

    fn top() -> (ToroidalAlgebra, TopModule) {
        let g = build_simple(1).unwrap();
        let w = irrep(&g, ModuleLabel::Natural).unwrap();
        let gl = GlModule::from_label(2, ModuleLabel::Natural, int(3)).unwrap();
        let f = LarssonModule::new(gl, vec![int(1), int(0)]).unwrap();
        (ToroidalAlgebra::new(g, 3, Flavor::TauHat).unwrap(), TopModule::new(w, f, int(2), int(5)))
    }

    #[test]
    fn displayed_rules() {
        let (alg, t) = top();
        let x = ModVec::basis(vec![1, 0], ev(&[1, 1]));
        let k1 = alg.basis(BasisKey::Center { i: 1, exp: ev(&[0, 2, 1]) }).unwrap();
        assert!(t.act(&k1, &x).unwrap().is_zero());
        let d0 = alg.basis(BasisKey::Deriv { i: 0, exp: ev(&[0, 1, -1]) }).unwrap();
        assert_eq!(t.act(&d0, &x).unwrap(), ModVec::basis(vec![1, 0], ev(&[2, 0])).scale(&int(5)));
        let k0 = alg.basis(BasisKey::Center { i: 0, exp: ev(&[0, 1, 0]) }).unwrap();
        assert_eq!(t.act(&k0, &x).unwrap(), ModVec::basis(vec![1, 0], ev(&[2, 1])).scale(&int(2)));
        let e = alg.basis(BasisKey::G { g: 0, exp: ev(&[0, 0, 3]) }).unwrap();
        assert_eq!(t.act(&e, &x).unwrap(), ModVec::basis(vec![0, 0], ev(&[1, 4])));
        let bad = alg.basis(BasisKey::G { g: 0, exp: ev(&[1, 0, 0]) }).unwrap();
        assert!(t.act(&bad, &x).is_err());
    }

    #[test]
    fn derhat_rules() {
        let gl = GlModule::from_label(1, ModuleLabel::Trivial, int(0)).unwrap();
        let f = LarssonModule::new(gl, vec![int(0)]).unwrap();
        let m = DerHatTopModule::new(f, int(7), int(-1));
        let alg = ToroidalAlgebra::dera_hat(2).unwrap();
        let x = ModVec::basis(vec![0], ev(&[3]));
        let k0 = alg.basis(BasisKey::Center { i: 0, exp: ev(&[0, 0]) }).unwrap();
        assert_eq!(m.act(&k0, &x).unwrap(), x.scale(&int(7)));
        let k1 = alg.basis(BasisKey::Center { i: 1, exp: ev(&[0, 0]) }).unwrap();
        assert!(m.act(&k1, &x).unwrap().is_zero());
        let d0 = alg.basis(BasisKey::Deriv { i: 0, exp: ev(&[0, 2]) }).unwrap();
        assert_eq!(m.act(&d0, &x).unwrap(), ModVec::basis(vec![0], ev(&[5])).scale(&int(-1)));
    }

    #[test]
    fn center_trivial_sl2_bracket() {
        let g = build_simple(1).unwrap();
        let w = irrep(&g, ModuleLabel::Natural).unwrap();
        let gl = GlModule::from_label(1, ModuleLabel::Trivial, int(0)).unwrap();
        let f = LarssonModule::new(gl, vec![int(0)]).unwrap();
        let m = CenterTrivialModule::new(w, f);
        let alg = ToroidalAlgebra::new(g, 1, Flavor::TauHat).unwrap();
        let e = alg.basis(BasisKey::G { g: 0, exp: ev(&[2]) }).unwrap();
        let fm = alg.basis(BasisKey::G { g: 1, exp: ev(&[-2]) }).unwrap();
        for idx in 0..2 {
            let x = ModVec::basis(vec![idx, 0], ev(&[1]));
            let comm = m.act(&e, &m.act(&fm, &x).unwrap()).unwrap().sub(&m.act(&fm, &m.act(&e, &x).unwrap()).unwrap());
            let sign = if idx == 0 { 1 } else { -1 };
            assert_eq!(comm, x.scale(&int(sign)));
            assert_eq!(m.act(&alg.bracket(&e, &fm).unwrap(), &x).unwrap(), comm);
        }
    }
}
