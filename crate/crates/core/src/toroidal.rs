//! Elements and brackets of the toroidal algebras
//!
//! * `tau = G (x) A + Omega_A / d_A`,
//! * `tau~ = tau + span(d_1 .. d_n)`,
//! * `tau^ = tau + DerA` (the full toroidal algebra),
//! * `DerA^ = Omega_A / d_A + DerA` (the abelian extension of `DerA`),
//!
//! over `A = Q[t_1^{+-1}, .., t_n^{+-1}]`.
//!
//! Center symbols `t^r K_i` are stored in canonical form modulo `d_A`: for
//! `r != 0` the key whose index is the last nonzero coordinate of `r` is
//! eliminated using `sum_i r_i t^r K_i = 0`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{dim_err, domain_err, Error, Result};
use crate::lattice::{int, ExpVec, Scalar, UnimodularMatrix};
use crate::simple_lie::{GElement, SimpleAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    /// `G (x) A + Omega_A/d_A`.
    Tau,
    /// `tau` plus the degree derivations `d_i`.
    TauTilde,
    /// `tau` plus all of `DerA`.
    TauHat,
    /// `Omega_A/d_A + DerA`, no `G`-part.
    DerAHat,
}

impl Flavor {
    pub fn name(&self) -> &'static str {
        match self {
            Flavor::Tau => "tau",
            Flavor::TauTilde => "tau_tilde",
            Flavor::TauHat => "tau_hat",
            Flavor::DerAHat => "dera_hat",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "tau" => Flavor::Tau,
            "tau_tilde" => Flavor::TauTilde,
            "tau_hat" => Flavor::TauHat,
            "dera_hat" => Flavor::DerAHat,
            _ => return domain_err(format!("unknown flavor {s:?}")),
        })
    }

    pub fn has_g(&self) -> bool {
        !matches!(self, Flavor::DerAHat)
    }
}

/// Basis symbol. Indices `i` are 0-based here (`K_{i+1}`, `D^{i+1}`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum BasisKey {
    /// `x_g (x) t^r` for basis element `g` of `G`.
    G { g: usize, exp: ExpVec },
    /// `t^r K_i`.
    Center { i: usize, exp: ExpVec },
    /// `t^r t_i d/dt_i`; `exp = 0` gives the degree derivation `d_i`.
    Deriv { i: usize, exp: ExpVec },
}

impl BasisKey {
    pub fn exp(&self) -> &ExpVec {
        match self {
            BasisKey::G { exp, .. } | BasisKey::Center { exp, .. } | BasisKey::Deriv { exp, .. } => exp,
        }
    }

    /// A center key that survives canonicalization.
    pub fn is_canonical(&self) -> bool {
        match self {
            BasisKey::Center { i, exp } => exp.pivot() != Some(*i),
            _ => true,
        }
    }
}

/// Identifies the ambient algebra an element belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Header {
    /// Rank of `G`; `None` for `DerA^`.
    pub rank: Option<usize>,
    pub n: usize,
    pub flavor: Flavor,
}

/// Finite formal sum of basis symbols, always canonical modulo `d_A`.
#[derive(Clone, PartialEq, Eq)]
pub struct TorElt {
    header: Header,
    terms: BTreeMap<BasisKey, Scalar>,
}

impl fmt::Debug for TorElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| format!("({})*{:?}", crate::lattice::format_scalar(c), k))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl TorElt {
    pub fn zero(header: Header) -> Self {
        TorElt { header, terms: BTreeMap::new() }
    }

    pub fn header(&self) -> Header {
        self.header
    }

    pub fn terms(&self) -> &BTreeMap<BasisKey, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &BasisKey) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Adds `c * key`, rewriting a pivot center key into canonical keys.
    pub fn push(&mut self, key: BasisKey, c: Scalar) {
        if c.is_zero() {
            return;
        }
        if let BasisKey::Center { i, exp } = &key {
            if exp.pivot() == Some(*i) {
                let p = *i;
                let rp = int(exp[p]);
                for j in 0..exp.len() {
                    if j != p && exp[j] != 0 {
                        let f = -(&c * int(exp[j])) / &rp;
                        self.push_raw(BasisKey::Center { i: j, exp: exp.clone() }, f);
                    }
                }
                return;
            }
        }
        self.push_raw(key, c);
    }

    fn push_raw(&mut self, key: BasisKey, c: Scalar) {
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

    pub fn add(&self, other: &TorElt) -> TorElt {
        assert_eq!(self.header, other.header, "adding elements of different algebras");
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.push_raw(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> TorElt {
        if c.is_zero() {
            return TorElt::zero(self.header);
        }
        TorElt { header: self.header, terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn sub(&self, other: &TorElt) -> TorElt {
        self.add(&other.scale(&-Scalar::one()))
    }

    /// Homogeneous degree, if all terms share one.
    pub fn degree(&self) -> Option<ExpVec> {
        let mut it = self.terms.keys().map(BasisKey::exp);
        let first = it.next()?.clone();
        it.all(|e| *e == first).then_some(first)
    }
}

/// Canonical form of a raw formal sum of `t^r K_i` symbols.
pub fn canonicalize_center(header: Header, raw: &[(usize, ExpVec, Scalar)]) -> Result<TorElt> {
    let mut out = TorElt::zero(header);
    for (i, exp, c) in raw {
        if exp.len() != header.n || *i >= header.n {
            return dim_err("center symbol outside the ambient variable count");
        }
        out.push(BasisKey::Center { i: *i, exp: exp.clone() }, c.clone());
    }
    Ok(out)
}

/// Canonical center basis keys at degree `r`: `n - 1` of them when `r != 0`, `n` at `r = 0`.
pub fn center_basis(r: &ExpVec) -> Vec<BasisKey> {
    (0..r.len())
        .map(|i| BasisKey::Center { i, exp: r.clone() })
        .filter(BasisKey::is_canonical)
        .collect()
}

/// One of the toroidal algebras over a fixed `G` (type A) and variable count `n`.
#[derive(Clone, Debug)]
pub struct ToroidalAlgebra {
    g: Option<Arc<SimpleAlgebra>>,
    n: usize,
    flavor: Flavor,
}

impl ToroidalAlgebra {
    pub fn new(g: Arc<SimpleAlgebra>, n: usize, flavor: Flavor) -> Result<Self> {
        if n == 0 {
            return domain_err("need at least one variable");
        }
        if flavor == Flavor::DerAHat {
            return Ok(ToroidalAlgebra { g: None, n, flavor });
        }
        Ok(ToroidalAlgebra { g: Some(g), n, flavor })
    }

    pub fn dera_hat(n: usize) -> Result<Self> {
        if n == 0 {
            return domain_err("need at least one variable");
        }
        Ok(ToroidalAlgebra { g: None, n, flavor: Flavor::DerAHat })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn g(&self) -> Option<&Arc<SimpleAlgebra>> {
        self.g.as_ref()
    }

    pub fn header(&self) -> Header {
        Header { rank: self.g.as_ref().map(|g| g.rank()), n: self.n, flavor: self.flavor }
    }

    pub fn zero(&self) -> TorElt {
        TorElt::zero(self.header())
    }

    pub fn allows(&self, key: &BasisKey) -> bool {
        if key.exp().len() != self.n {
            return false;
        }
        match key {
            BasisKey::G { g, .. } => self.g.as_ref().is_some_and(|alg| *g < alg.dim()),
            BasisKey::Center { i, .. } => *i < self.n,
            BasisKey::Deriv { i, exp } => {
                *i < self.n
                    && match self.flavor {
                        Flavor::Tau => false,
                        Flavor::TauTilde => exp.is_zero(),
                        Flavor::TauHat | Flavor::DerAHat => true,
                    }
            }
        }
    }

    /// Element from `(key, coefficient)` pairs, canonicalized.
    pub fn element(&self, terms: impl IntoIterator<Item = (BasisKey, Scalar)>) -> Result<TorElt> {
        let mut out = self.zero();
        for (k, c) in terms {
            if !self.allows(&k) {
                return Err(Error::Flavor(format!("{k:?} is not in {}", self.flavor.name())));
            }
            out.push(k, c);
        }
        Ok(out)
    }

    pub fn basis(&self, key: BasisKey) -> Result<TorElt> {
        self.element([(key, Scalar::one())])
    }

    /// `X (x) t^r` for an arbitrary `X` in `G`.
    pub fn g_elt(&self, x: &GElement, r: &ExpVec) -> Result<TorElt> {
        self.element(
            x.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(g, c)| (BasisKey::G { g, exp: r.clone() }, c.clone())),
        )
    }

    /// `K(u, r) = sum_i u_i t^r K_i`.
    pub fn k_vec(&self, u: &[Scalar], r: &ExpVec) -> Result<TorElt> {
        if u.len() != self.n {
            return dim_err("K(u, r) with u of wrong length");
        }
        self.element(u.iter().enumerate().map(|(i, c)| (BasisKey::Center { i, exp: r.clone() }, c.clone())))
    }

    /// `D(u, r) = sum_i u_i t^r t_i d/dt_i`.
    pub fn d_vec(&self, u: &[Scalar], r: &ExpVec) -> Result<TorElt> {
        if u.len() != self.n {
            return dim_err("D(u, r) with u of wrong length");
        }
        self.element(u.iter().enumerate().map(|(i, c)| (BasisKey::Deriv { i, exp: r.clone() }, c.clone())))
    }

    fn check(&self, x: &TorElt) -> Result<()> {
        if x.header != self.header() {
            return Err(Error::Flavor(format!("element of {:?} used in {:?}", x.header, self.header())));
        }
        Ok(())
    }

    pub fn bracket(&self, x: &TorElt, y: &TorElt) -> Result<TorElt> {
        self.check(x)?;
        self.check(y)?;
        let mut out = self.zero();
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                let c = ca * cb;
                self.bracket_keys(a, b, &c, &mut out);
            }
        }
        Ok(out)
    }

    /// Adds `c * [a, b]` to `out`.
    fn bracket_keys(&self, a: &BasisKey, b: &BasisKey, c: &Scalar, out: &mut TorElt) {
        use BasisKey::*;
        match (a, b) {
            (G { g: x, exp: r }, G { g: y, exp: s }) => {
                let alg = self.g.as_ref().expect("G-part present");
                let rs = r + s;
                for (z, sc) in alg.bracket_basis(*x, *y) {
                    out.push(G { g: *z, exp: rs.clone() }, c * sc);
                }
                let form = alg.form_basis(*x, *y);
                if !form.is_zero() {
                    // <X,Y> d(t^r) t^s = <X,Y> sum_i r_i t^{r+s} K_i
                    for i in 0..self.n {
                        if r[i] != 0 {
                            out.push(Center { i, exp: rs.clone() }, c * form * int(r[i]));
                        }
                    }
                }
            }
            (Center { .. }, _) | (_, Center { .. }) if !matches!((a, b), (Deriv { .. }, _) | (_, Deriv { .. })) => {}
            (Deriv { i, exp: r }, G { g, exp: s }) => {
                if s[*i] != 0 {
                    out.push(G { g: *g, exp: r + s }, c * int(s[*i]));
                }
            }
            (G { .. }, Deriv { .. }) => self.bracket_keys(b, a, &-c, out),
            (Deriv { i, exp: r }, Deriv { i: j, exp: s }) => {
                // [D(e_i,r), D(e_j,s)] = s_i D(e_j,r+s) - r_j D(e_i,r+s) - s_i r_j K(r, r+s)
                let rs = r + s;
                if s[*i] != 0 {
                    out.push(Deriv { i: *j, exp: rs.clone() }, c * int(s[*i]));
                }
                if r[*j] != 0 {
                    out.push(Deriv { i: *i, exp: rs.clone() }, -(c * int(r[*j])));
                }
                let coef = s[*i] * r[*j];
                if coef != 0 {
                    for k in 0..self.n {
                        if r[k] != 0 {
                            out.push(Center { i: k, exp: rs.clone() }, -(c * int(coef * r[k])));
                        }
                    }
                }
            }
            (Deriv { i, exp: r }, Center { i: j, exp: s }) => {
                // [D(e_i,r), K(e_j,s)] = s_i K(e_j, r+s) + delta_ij K(r, r+s)
                let rs = r + s;
                if s[*i] != 0 {
                    out.push(Center { i: *j, exp: rs.clone() }, c * int(s[*i]));
                }
                if i == j {
                    for k in 0..self.n {
                        if r[k] != 0 {
                            out.push(Center { i: k, exp: rs.clone() }, c * int(r[k]));
                        }
                    }
                }
            }
            (Center { .. }, Deriv { .. }) => self.bracket_keys(b, a, &-c, out),
            _ => {}
        }
    }

    /// Coordinate change by `B`: `X t^r -> X t^{Br}`, `K(u,r) -> K(Bu, Br)`,
    /// `D(u,r) -> D((B^T)^{-1} u, Br)`.
    pub fn twist(&self, b: &UnimodularMatrix, x: &TorElt) -> Result<TorElt> {
        self.check(x)?;
        if b.dim() != self.n {
            return dim_err(format!("{}x{} matrix acting on {} variables", b.dim(), b.dim(), self.n));
        }
        let inv_t = b.inverse().transpose();
        let bm = b.matrix();
        let cm = inv_t.matrix();
        let mut out = self.zero();
        for (k, c) in &x.terms {
            let br = b.apply(k.exp())?;
            match k {
                BasisKey::G { g, .. } => out.push(BasisKey::G { g: *g, exp: br }, c.clone()),
                BasisKey::Center { i, .. } => {
                    for j in 0..self.n {
                        let f = bm.get(j, *i);
                        if f != 0 {
                            out.push(BasisKey::Center { i: j, exp: br.clone() }, c * int(f));
                        }
                    }
                }
                BasisKey::Deriv { i, .. } => {
                    for j in 0..self.n {
                        let f = cm.get(j, *i);
                        if f != 0 {
                            out.push(BasisKey::Deriv { i: j, exp: br.clone() }, c * int(f));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// The reduction `tau~ -> G_aff (x) A_{n-1} + D` with `G_aff` the affine
    /// algebra in the last variable `t_n`.
    pub fn phi_reduce(&self, x: &TorElt) -> Result<LoopAffineElt> {
        self.check(x)?;
        if self.flavor != Flavor::TauTilde {
            return Err(Error::Flavor("phi_reduce is defined on tau_tilde".into()));
        }
        let last = self.n - 1;
        let mut out = LoopAffineElt::zero(self.n);
        for (k, c) in &x.terms {
            match k {
                BasisKey::G { g, exp } => {
                    out.push(LoopKey::G { g: *g, loop_power: exp[last], exp: exp.without(last) }, c.clone())
                }
                BasisKey::Center { i, exp } => {
                    if *i == last && exp[last] == 0 {
                        out.push(LoopKey::K { exp: exp.without(last) }, c.clone());
                    }
                }
                BasisKey::Deriv { i, .. } => out.push(LoopKey::D { i: *i }, c.clone()),
            }
        }
        Ok(out)
    }
}

/// Basis of `G_aff (x) A_{n-1} + D` where `G_aff = G (x) Q[t_n^{+-1}] + Q K_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum LoopKey {
    /// `(x_g (x) t_n^{loop_power}) (x) t^{exp}`, `exp` in `Z^{n-1}`.
    G { g: usize, loop_power: i64, exp: ExpVec },
    /// `K_n (x) t^{exp}`.
    K { exp: ExpVec },
    /// Degree derivation `d_{i+1}`.
    D { i: usize },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LoopAffineElt {
    n: usize,
    terms: BTreeMap<LoopKey, Scalar>,
}

impl LoopAffineElt {
    pub fn zero(n: usize) -> Self {
        LoopAffineElt { n, terms: BTreeMap::new() }
    }

    pub fn terms(&self) -> &BTreeMap<LoopKey, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn push(&mut self, key: LoopKey, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Bracket of the loop-of-affine algebra (with `K_n (x) A_{n-1}` central).
    pub fn bracket(&self, other: &LoopAffineElt, g: &SimpleAlgebra) -> LoopAffineElt {
        assert_eq!(self.n, other.n);
        let last = self.n - 1;
        let mut out = LoopAffineElt::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let c = ca * cb;
                match (a, b) {
                    (LoopKey::G { g: x, loop_power: p, exp: r }, LoopKey::G { g: y, loop_power: q, exp: s }) => {
                        let rs = r + s;
                        for (z, sc) in g.bracket_basis(*x, *y) {
                            out.push(LoopKey::G { g: *z, loop_power: p + q, exp: rs.clone() }, &c * sc);
                        }
                        if p + q == 0 && *p != 0 {
                            let f = g.form_basis(*x, *y);
                            out.push(LoopKey::K { exp: rs }, &c * f * int(*p));
                        }
                    }
                    (LoopKey::D { i }, LoopKey::G { g: y, loop_power: q, exp: s }) => {
                        let w = if *i == last { *q } else { s[*i] };
                        out.push(LoopKey::G { g: *y, loop_power: *q, exp: s.clone() }, &c * int(w));
                    }
                    (LoopKey::G { g: x, loop_power: p, exp: r }, LoopKey::D { i }) => {
                        let w = if *i == last { *p } else { r[*i] };
                        out.push(LoopKey::G { g: *x, loop_power: *p, exp: r.clone() }, -(&c * int(w)));
                    }
                    (LoopKey::D { i }, LoopKey::K { exp }) if *i != last => {
                        out.push(LoopKey::K { exp: exp.clone() }, &c * int(exp[*i]));
                    }
                    (LoopKey::K { exp }, LoopKey::D { i }) if *i != last => {
                        out.push(LoopKey::K { exp: exp.clone() }, -(&c * int(exp[*i])));
                    }
                    _ => {}
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{frac, IntMatrix};
    use crate::simple_lie::build_simple;

    fn ev(v: &[i64]) -> ExpVec {
        ExpVec::new(v.to_vec())
    }

    fn alg(n: usize, flavor: Flavor) -> ToroidalAlgebra {
        ToroidalAlgebra::new(build_simple(1).unwrap(), n, flavor).unwrap()
    }

    fn center(i: usize, e: &[i64]) -> BasisKey {
        BasisKey::Center { i, exp: ev(e) }
    }

    #[test]
    fn canonical_center_examples() {
        let a = alg(2, Flavor::Tau);
        let x = a.basis(center(1, &[2, 3])).unwrap();
        assert_eq!(x, a.element([(center(0, &[2, 3]), frac(-2, 3))]).unwrap());

        let y = a.basis(center(0, &[0, 0])).unwrap();
        assert_eq!(y.terms().len(), 1);

        let a1 = alg(1, Flavor::Tau);
        assert!(a1.basis(center(0, &[5])).unwrap().is_zero());
    }

    #[test]
    fn canonicalization_is_idempotent() {
        let h = alg(3, Flavor::Tau).header();
        let raw = vec![(2, ev(&[1, -2, 3]), int(4)), (1, ev(&[1, -2, 3]), int(1))];
        let once = canonicalize_center(h, &raw).unwrap();
        let again: Vec<_> = once
            .terms()
            .iter()
            .map(|(k, c)| match k {
                BasisKey::Center { i, exp } => (*i, exp.clone(), c.clone()),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(canonicalize_center(h, &again).unwrap(), once);
    }

    #[test]
    fn graded_center_dimensions() {
        assert_eq!(center_basis(&ev(&[0, 0, 0])).len(), 3);
        assert_eq!(center_basis(&ev(&[0, 2, 0])).len(), 2);
        assert_eq!(center_basis(&ev(&[4])).len(), 0);
    }

    #[test]
    fn affine_bracket_example() {
        let a = alg(2, Flavor::Tau);
        let e = a.basis(BasisKey::G { g: 0, exp: ev(&[1, 0]) }).unwrap();
        let f = a.basis(BasisKey::G { g: 1, exp: ev(&[-1, 0]) }).unwrap();
        let expect = a
            .element([(BasisKey::G { g: 2, exp: ev(&[0, 0]) }, int(1)), (center(0, &[0, 0]), int(1))])
            .unwrap();
        assert_eq!(a.bracket(&e, &f).unwrap(), expect);
    }

    #[test]
    fn derivation_bracket_example() {
        let a = alg(2, Flavor::DerAHat);
        let d1 = a.basis(BasisKey::Deriv { i: 0, exp: ev(&[0, 1]) }).unwrap();
        let d2 = a.basis(BasisKey::Deriv { i: 1, exp: ev(&[1, 0]) }).unwrap();
        // D(e_2 - e_1, (1,1)) - t^{(1,1)} K_2
        let expect = a
            .element([
                (BasisKey::Deriv { i: 1, exp: ev(&[1, 1]) }, int(1)),
                (BasisKey::Deriv { i: 0, exp: ev(&[1, 1]) }, int(-1)),
                (center(1, &[1, 1]), int(-1)),
            ])
            .unwrap();
        assert_eq!(a.bracket(&d1, &d2).unwrap(), expect);
    }

    #[test]
    fn derivation_on_loop_element() {
        let a = alg(2, Flavor::TauHat);
        let d = a.basis(BasisKey::Deriv { i: 0, exp: ev(&[1, 0]) }).unwrap();
        let x = a.basis(BasisKey::G { g: 2, exp: ev(&[2, 5]) }).unwrap();
        let expect = a.element([(BasisKey::G { g: 2, exp: ev(&[3, 5]) }, int(2))]).unwrap();
        assert_eq!(a.bracket(&d, &x).unwrap(), expect);
    }

    #[test]
    fn center_commutes_with_center() {
        let a = alg(2, Flavor::TauHat);
        let k1 = a.basis(center(0, &[1, 1])).unwrap();
        let k2 = a.basis(center(1, &[2, 0])).unwrap();
        assert!(a.bracket(&k1, &k2).unwrap().is_zero());
    }

    #[test]
    fn flavor_mismatch_rejected() {
        let tau = alg(2, Flavor::Tau);
        let hat = alg(2, Flavor::TauHat);
        assert!(tau.basis(BasisKey::Deriv { i: 0, exp: ev(&[1, 0]) }).is_err());
        let x = hat.basis(center(0, &[0, 0])).unwrap();
        let y = tau.basis(center(0, &[0, 0])).unwrap();
        assert!(matches!(hat.bracket(&x, &y), Err(Error::Flavor(_))));
        let tilde = alg(2, Flavor::TauTilde);
        assert!(tilde.basis(BasisKey::Deriv { i: 0, exp: ev(&[0, 0]) }).is_ok());
        assert!(tilde.basis(BasisKey::Deriv { i: 0, exp: ev(&[1, 0]) }).is_err());
        assert!(ToroidalAlgebra::dera_hat(2).unwrap().basis(BasisKey::G { g: 0, exp: ev(&[0, 0]) }).is_err());
    }

    #[test]
    fn virasoro_degeneration_small() {
        let a = ToroidalAlgebra::dera_hat(1).unwrap();
        for r in -3i64..=3 {
            let x = a.basis(BasisKey::Deriv { i: 0, exp: ev(&[r]) }).unwrap();
            let y = a.basis(BasisKey::Deriv { i: 0, exp: ev(&[-r]) }).unwrap();
            let expect = a
                .element([(BasisKey::Deriv { i: 0, exp: ev(&[0]) }, int(-2 * r)), (center(0, &[0]), int(r * r * r))])
                .unwrap();
            assert_eq!(a.bracket(&x, &y).unwrap(), expect);
        }
    }

    #[test]
    fn twist_examples() {
        let a = alg(2, Flavor::TauHat);
        let x = a.basis(BasisKey::G { g: 0, exp: ev(&[1, 0]) }).unwrap();
        assert_eq!(a.twist(&UnimodularMatrix::identity(2), &x).unwrap(), x);

        let swap = UnimodularMatrix::new(IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap()).unwrap();
        let swapped = a.basis(BasisKey::G { g: 0, exp: ev(&[0, 1]) }).unwrap();
        assert_eq!(a.twist(&swap, &x).unwrap(), swapped);

        // K(e_1, (0,1)) -> K(B e_1, B (0,1)) = t^{(1,1)} K_1 for B = [[1,1],[0,1]].
        let shear = UnimodularMatrix::new(IntMatrix::from_rows(vec![vec![1, 1], vec![0, 1]]).unwrap()).unwrap();
        let k = a.basis(center(0, &[0, 1])).unwrap();
        assert_eq!(a.twist(&shear, &k).unwrap(), a.basis(center(0, &[1, 1])).unwrap());
        // t^{(1,0)} K_1 is exact, so it and its image vanish.
        assert!(a.basis(center(0, &[1, 0])).unwrap().is_zero());
    }

    #[test]
    fn phi_reduce_examples() {
        let a = alg(2, Flavor::TauTilde);
        let k = a.basis(center(1, &[3, 0])).unwrap();
        let mut expect = LoopAffineElt::zero(2);
        expect.push(LoopKey::K { exp: ev(&[3]) }, int(1));
        assert_eq!(a.phi_reduce(&k).unwrap(), expect);

        let k2 = a.basis(center(1, &[3, 1])).unwrap();
        assert!(a.phi_reduce(&k2).unwrap().is_zero());

        let e = a.basis(BasisKey::G { g: 0, exp: ev(&[2, 5]) }).unwrap();
        let mut expect = LoopAffineElt::zero(2);
        expect.push(LoopKey::G { g: 0, loop_power: 5, exp: ev(&[2]) }, int(1));
        assert_eq!(a.phi_reduce(&e).unwrap(), expect);

        assert!(alg(2, Flavor::Tau).phi_reduce(&alg(2, Flavor::Tau).zero()).is_err());
    }
}
