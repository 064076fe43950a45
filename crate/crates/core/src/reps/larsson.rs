use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{ExpBox, ModKey, ModVec};
use crate::error::{dim_err, domain_err, Result};
use crate::lattice::{int, ExpVec, Scalar};
use crate::linalg::EchelonSpan;
use crate::simple_lie::{ext_basis, GlModule, ModuleLabel};

/// `F^alpha(psi, b) = V(psi, b) (x) A` with the density action of `DerA`.
#[derive(Clone, Debug)]
pub struct LarssonModule {
    gl: GlModule,
    alpha: Vec<Scalar>,
}

/// Result of a bounded closure computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    /// Spanned dimension stays strictly below the full box dimension.
    pub closed: bool,
    /// Spanned dimension at every degree of the box.
    pub dims: BTreeMap<ExpVec, usize>,
}

impl LarssonModule {
    pub fn new(gl: GlModule, alpha: Vec<Scalar>) -> Result<Self> {
        if alpha.len() != gl.n() {
            return dim_err(format!("alpha has length {}, expected {}", alpha.len(), gl.n()));
        }
        Ok(LarssonModule { gl, alpha })
    }

    pub fn n(&self) -> usize {
        self.gl.n()
    }

    pub fn gl(&self) -> &GlModule {
        &self.gl
    }

    pub fn alpha(&self) -> &[Scalar] {
        &self.alpha
    }

    pub fn fiber_dim(&self) -> usize {
        self.gl.dim()
    }

    pub(crate) fn check(&self, x: &ModVec, slot: usize, width: usize) -> Result<()> {
        x.check_n(self.n())?;
        for k in x.terms.keys() {
            if k.idx.len() != width || k.idx[slot] >= self.fiber_dim() {
                return dim_err("vector index outside the module");
            }
        }
        Ok(())
    }

    /// `D(u,r) v(m) = (u, m+alpha) v(m+r) + (sum u_i r_j E_ji v)(m+r)`.
    pub fn act(&self, u: &[Scalar], r: &ExpVec, x: &ModVec) -> Result<ModVec> {
        self.check(x, 0, 1)?;
        self.act_slot(u, r, x, 0)
    }

    /// The same action on the tensor slot `slot` of a multi-index vector.
    pub(crate) fn act_slot(&self, u: &[Scalar], r: &ExpVec, x: &ModVec, slot: usize) -> Result<ModVec> {
        let n = self.n();
        if u.len() != n || r.len() != n {
            return dim_err("D(u, r) has the wrong number of variables");
        }
        let mut mixed: Vec<(usize, usize, Scalar)> = Vec::new();
        for (i, ui) in u.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for j in 0..n {
                if r[j] != 0 {
                    mixed.push((j, i, ui * int(r[j])));
                }
            }
        }
        let mut out = ModVec::zero(n);
        for (k, c) in &x.terms {
            let target = &k.exp + r;
            let weight = u
                .iter()
                .enumerate()
                .fold(Scalar::zero(), |acc, (i, ui)| acc + ui * (int(k.exp[i]) + &self.alpha[i]));
            out.push(ModKey { idx: k.idx.clone(), exp: target.clone() }, c * weight);
            let v = k.idx[slot];
            for (j, i, f) in &mixed {
                let e = self.gl.elementary(*j, *i);
                for w in 0..self.fiber_dim() {
                    let a = e.get(w, v);
                    if !a.is_zero() {
                        let mut idx = k.idx.clone();
                        idx[slot] = w;
                        out.push(ModKey { idx, exp: target.clone() }, c * f * a);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `D^i(r) = D(e_i, r)`.
    pub fn deriv_act(&self, i: usize, r: &ExpVec, x: &ModVec) -> Result<ModVec> {
        if i >= self.n() {
            return dim_err("derivation index out of range");
        }
        let mut u = vec![Scalar::zero(); self.n()];
        u[i] = Scalar::one();
        self.act(&u, r, x)
    }

    fn alpha_integral(&self) -> Option<Vec<i64>> {
        self.alpha
            .iter()
            .map(|a| if a.is_integer() { num_traits::ToPrimitive::to_i64(&a.to_integer()) } else { None })
            .collect()
    }

    /// Generator of a proper submodule in the two boundary cases:
    /// constants `v(-alpha)` for `(trivial, 0)` with integral `alpha`, and the
    /// exact forms `d(v_I (m))` in `ext^k` with `b = k`.
    pub fn submodule_witness(&self) -> Option<ModVec> {
        let n = self.n();
        let k = match self.gl.label() {
            ModuleLabel::Trivial | ModuleLabel::Ext(0) => 0,
            ModuleLabel::Natural => 1,
            ModuleLabel::Ext(k) => k,
            _ => return None,
        };
        if *self.gl.b() != int(k as i64) {
            return None;
        }
        if k == 0 {
            let m = self.alpha_integral()?;
            return Some(ModVec::basis(vec![0], ExpVec::new(m.iter().map(|x| -x).collect())));
        }
        // d(t^m v_I) = sum_j (m + alpha)_j v_j ^ v_I (m) with I = {0 .. k-2}.
        let lower: Vec<usize> = (0..k - 1).collect();
        let j0 = n - 1;
        let step = if (int(1) + &self.alpha[j0]).is_zero() { 2 } else { 1 };
        let m = ExpVec::unit(n, j0);
        let m = ExpVec::new(m.entries().iter().map(|x| x * step).collect());
        let basis = ext_basis(n, k);
        let mut out = ModVec::zero(n);
        for j in 0..n {
            if lower.contains(&j) {
                continue;
            }
            let coef = int(m[j]) + &self.alpha[j];
            let before = lower.iter().filter(|&&x| x < j).count();
            let sign = if before % 2 == 0 { int(1) } else { int(-1) };
            let mut set = lower.clone();
            set.push(j);
            set.sort_unstable();
            let pos = basis.iter().position(|b| *b == set).expect("subset in basis");
            out.push(ModKey { idx: vec![pos], exp: m.clone() }, coef * sign);
        }
        (!out.is_zero()).then_some(out)
    }

    /// Spans the images of `seed` under repeated `D(u, r)` from `sample`,
    /// keeping only degrees inside `bx`.
    pub fn closure_check(&self, seed: &ModVec, bx: &ExpBox, sample: &[(Vec<Scalar>, ExpVec)]) -> Result<ClosureReport> {
        if bx.is_empty() {
            return domain_err("closure box is empty");
        }
        if bx.n() != self.n() {
            return dim_err("closure box has the wrong number of variables");
        }
        self.check(seed, 0, 1)?;
        let fiber = self.fiber_dim();
        let points = bx.points();
        let mut spans: BTreeMap<ExpVec, EchelonSpan> = points.iter().map(|p| (p.clone(), EchelonSpan::new(fiber))).collect();
        let mut queue: Vec<(ExpVec, Vec<Scalar>)> = Vec::new();
        let coords = |v: &ModVec| -> Vec<Scalar> {
            let mut c = vec![Scalar::zero(); fiber];
            for (k, x) in &v.terms {
                c[k.idx[0]] += x;
            }
            c
        };
        for (m, part) in seed.homogeneous_parts() {
            if let Some(span) = spans.get_mut(&m) {
                let c = coords(&part);
                if span.insert(c.clone()) {
                    queue.push((m, c));
                }
            }
        }
        while let Some((m, c)) = queue.pop() {
            let mut v = ModVec::zero(self.n());
            for (i, x) in c.iter().enumerate() {
                v.push(ModKey { idx: vec![i], exp: m.clone() }, x.clone());
            }
            for (u, r) in sample {
                let target = &m + r;
                let Some(span) = spans.get_mut(&target) else { continue };
                let y = self.act(u, r, &v)?;
                let cy = coords(&y);
                if span.insert(cy.clone()) {
                    queue.push((target, cy));
                }
            }
        }
        let dims: BTreeMap<ExpVec, usize> = spans.into_iter().map(|(m, s)| (m, s.dim())).collect();
        let total: usize = dims.values().sum();
        Ok(ClosureReport { closed: total < fiber * points.len(), dims })
    }
}
