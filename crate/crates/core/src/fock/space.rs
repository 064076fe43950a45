use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::error::{dim_err, domain_err, Result};
use crate::lattice::{int, Scalar};
use crate::roots::gram_matrix;
use crate::simple_lie::SimpleAlgebra;

/// `Gamma` with basis `(alpha_1..alpha_d, delta_1..delta_n, Lambda_1..Lambda_n)`;
/// `Q` is the span of the `alpha`s and `delta`s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockLattice {
    d: usize,
    n: usize,
    gram: Vec<Vec<i64>>,
}

impl FockLattice {
    pub fn new(g: &SimpleAlgebra, n: usize) -> Self {
        let gm = gram_matrix(g, n);
        let size = gm.nrows();
        let gram = (0..size)
            .map(|i| (0..size).map(|j| num_traits::ToPrimitive::to_i64(&gm.get(i, j).to_integer()).expect("small")).collect())
            .collect();
        FockLattice { d: g.rank(), n, gram }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn pair(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut acc = 0;
        for (i, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (j, &y) in b.iter().enumerate().filter(|(_, y)| **y != 0) {
                acc += x * y * self.gram[i][j];
            }
        }
        acc
    }

    /// `(a, b_i)` for every basis vector `b_i`.
    pub fn pairings(&self, a: &[Scalar]) -> Vec<Scalar> {
        (0..self.rank())
            .map(|i| a.iter().enumerate().fold(Scalar::zero(), |acc, (j, x)| acc + x * int(self.gram[j][i])))
            .collect()
    }

    pub fn in_q(&self, v: &[i64]) -> bool {
        v.len() == self.rank() && v[self.d + self.n..].iter().all(|&x| x == 0)
    }

    /// Bimultiplicative sign with `eps(b_i, b_j) = (-1)^{(b_i, b_j)}` for `i > j`, else `+1`.
    pub fn cocycle(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut e = 0i64;
        for i in 0..a.len() {
            for j in 0..i {
                e += a[i] * b[j] * self.gram[i][j];
            }
        }
        if e.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }
}

/// Oscillator monomial: sorted `(direction, mode k > 0)` entries for `b_dir(-k)`.
pub type Monomial = Vec<(usize, i64)>;
type Osc = BTreeMap<Monomial, Scalar>;

/// `e^charge (x) prod b_dir(-k)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FockKey {
    pub charge: Vec<i64>,
    pub modes: Monomial,
}

impl FockKey {
    pub fn vacuum(rank: usize) -> Self {
        FockKey { charge: vec![0; rank], modes: Vec::new() }
    }

    pub fn degree(&self) -> i64 {
        self.modes.iter().map(|(_, k)| k).sum()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FockVec {
    rank: usize,
    terms: BTreeMap<FockKey, Scalar>,
}

impl FockVec {
    pub fn zero(rank: usize) -> Self {
        FockVec { rank, terms: BTreeMap::new() }
    }

    pub fn basis(key: FockKey) -> Self {
        let mut v = FockVec::zero(key.charge.len());
        let mut key = key;
        key.modes.sort_unstable();
        v.push(key, Scalar::one());
        v
    }

    pub fn vacuum(rank: usize) -> Self {
        Self::basis(FockKey::vacuum(rank))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<FockKey, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn push(&mut self, key: FockKey, c: Scalar) {
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

    pub fn add(&self, other: &FockVec) -> FockVec {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &FockVec) {
        for (k, c) in &other.terms {
            self.push(k.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &FockVec) -> FockVec {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.push(k.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> FockVec {
        if c.is_zero() {
            return FockVec::zero(self.rank);
        }
        FockVec { rank: self.rank, terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }
}

fn osc_push(p: &mut Osc, m: Monomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let slot = p.entry(m.clone()).or_insert_with(Scalar::zero);
    *slot += c;
    if slot.is_zero() {
        p.remove(&m);
    }
}

fn merge(a: &[(usize, i64)], b: &[(usize, i64)]) -> Monomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// `a(-k) p` for `k > 0`.
fn osc_create(a: &[Scalar], k: i64, p: &Osc) -> Osc {
    let mut out = Osc::new();
    for (m, c) in p {
        for (dir, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            osc_push(&mut out, merge(m, &[(dir, k)]), c * x);
        }
    }
    out
}

/// `a(k) p` for `k > 0`, given `pairs[i] = (a, b_i)`.
fn osc_annihilate(pairs: &[Scalar], k: i64, p: &Osc) -> Osc {
    let mut out = Osc::new();
    for (m, c) in p {
        for (pos, &(dir, mode)) in m.iter().enumerate() {
            if mode == k && !pairs[dir].is_zero() {
                let mut rest = m.clone();
                rest.remove(pos);
                osc_push(&mut out, rest, c * &pairs[dir] * int(k));
            }
        }
    }
    out
}

fn osc_mul(p: &Osc, q: &Osc) -> Osc {
    let mut out = Osc::new();
    for (a, x) in p {
        for (b, y) in q {
            osc_push(&mut out, merge(a, b), x * y);
        }
    }
    out
}

fn single(m: &Monomial) -> Osc {
    let mut p = Osc::new();
    p.insert(m.clone(), Scalar::one());
    p
}

/// Operators on the Fock space of a fixed lattice (Heisenberg central element acting by 1).
#[derive(Debug)]
pub struct FockSpace {
    lattice: FockLattice,
    /// Creation series `S_0, S_1, ..` per charge, extended on demand.
    series: Mutex<HashMap<Vec<i64>, Arc<Vec<Osc>>>>,
}

impl Clone for FockSpace {
    fn clone(&self) -> Self {
        FockSpace::new(self.lattice.clone())
    }
}

impl FockSpace {
    pub fn new(lattice: FockLattice) -> Self {
        FockSpace { lattice, series: Mutex::new(HashMap::new()) }
    }

    pub fn lattice(&self) -> &FockLattice {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    fn check(&self, x: &FockVec) -> Result<()> {
        let r = self.rank();
        if x.rank != r || x.terms.keys().any(|k| k.charge.len() != r || k.modes.iter().any(|&(d, m)| d >= r || m <= 0)) {
            return dim_err("Fock vector does not live on this lattice");
        }
        Ok(())
    }

    /// `(gamma, gamma)/2 + degree`.
    pub fn energy(&self, key: &FockKey) -> i64 {
        self.lattice.pair(&key.charge, &key.charge) / 2 + key.degree()
    }

    /// `a(mode) x` for a direction `a` in `Gamma (x) Q`.
    pub fn heis_act(&self, a: &[Scalar], mode: i64, x: &FockVec) -> Result<FockVec> {
        self.check(x)?;
        if a.len() != self.rank() {
            return dim_err("Heisenberg direction has the wrong length");
        }
        let pairs = self.lattice.pairings(a);
        let mut out = FockVec::zero(self.rank());
        for (k, c) in &x.terms {
            match mode.signum() {
                0 => {
                    let w = k.charge.iter().zip(&pairs).fold(Scalar::zero(), |acc, (g, p)| acc + p * int(*g));
                    out.push(k.clone(), c * w);
                }
                -1 => {
                    for (m, y) in osc_create(a, -mode, &single(&k.modes)) {
                        out.push(FockKey { charge: k.charge.clone(), modes: m }, c * y);
                    }
                }
                _ => {
                    for (m, y) in osc_annihilate(&pairs, mode, &single(&k.modes)) {
                        out.push(FockKey { charge: k.charge.clone(), modes: m }, c * y);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `S_0 .. S_kmax` with `exp(sum_n gamma(-n) z^n / n) = sum_k S_k z^k`.
    fn creation_series(&self, gamma: &[i64], kmax: i64) -> Arc<Vec<Osc>> {
        let mut cache = self.series.lock().expect("series cache");
        if let Some(s) = cache.get(gamma) {
            if s.len() as i64 > kmax {
                return s.clone();
            }
        }
        let g: Vec<Scalar> = gamma.iter().map(|&v| int(v)).collect();
        let mut s: Vec<Osc> = cache.get(gamma).map_or_else(|| vec![single(&Vec::new())], |s| s.to_vec());
        for k in s.len() as i64..=kmax {
            let mut acc = Osc::new();
            for n in 1..=k {
                for (m, c) in osc_create(&g, n, &s[(k - n) as usize]) {
                    osc_push(&mut acc, m, c);
                }
            }
            let inv = Scalar::new(1.into(), k.into());
            s.push(acc.into_iter().map(|(m, c)| (m, c * &inv)).collect());
        }
        let s = Arc::new(s);
        cache.insert(gamma.to_vec(), s.clone());
        s
    }

    /// `P_j u` for `j = 0..=deg(u)` with `exp(-sum_n gamma(n) z^{-n} / n) = sum_j P_j z^{-j}`.
    fn annihilation_series(&self, pairs: &[Scalar], u: &Monomial) -> Vec<Osc> {
        let deg: i64 = u.iter().map(|(_, k)| k).sum();
        let mut p: Vec<Osc> = vec![single(u)];
        for j in 1..=deg {
            let mut acc = Osc::new();
            for n in 1..=j {
                for (m, c) in osc_annihilate(pairs, n, &p[(j - n) as usize]) {
                    osc_push(&mut acc, m, c);
                }
            }
            let f = Scalar::new((-1).into(), j.into());
            p.push(acc.into_iter().map(|(m, c)| (m, c * &f)).collect());
        }
        p
    }

    fn check_q(&self, gamma: &[i64]) -> Result<()> {
        if gamma.len() != self.rank() {
            return dim_err("lattice vector has the wrong length");
        }
        if !self.lattice.in_q(gamma) {
            return domain_err("vertex operators are defined for charges in Q");
        }
        Ok(())
    }

    /// `X_m(gamma) key` for every `m` in `lo..=hi`.
    ///
    /// `X(gamma, z) e^beta (x) u = eps(gamma, beta) z^{c0} sum_{k,j} z^{k-j} S_k P_j u (x) e^{beta+gamma}`
    /// with `c0 = (gamma,gamma)/2 + (gamma,beta)`, so `X_m` collects `m = j - k - c0`.
    fn vertex_modes(&self, gamma: &[i64], lo: i64, hi: i64, key: &FockKey) -> Vec<FockVec> {
        let mut out = vec![FockVec::zero(self.rank()); (hi - lo + 1).max(0) as usize];
        let deg = key.degree();
        let c0 = self.lattice.pair(gamma, gamma) / 2 + self.lattice.pair(gamma, &key.charge);
        if lo > hi || deg - c0 < lo {
            return out;
        }
        let g: Vec<Scalar> = gamma.iter().map(|&v| int(v)).collect();
        let pairs = self.lattice.pairings(&g);
        let s = self.creation_series(gamma, deg - lo - c0);
        let p = self.annihilation_series(&pairs, &key.modes);
        let sign = int(self.lattice.cocycle(gamma, &key.charge));
        let charge: Vec<i64> = key.charge.iter().zip(gamma).map(|(a, b)| a + b).collect();
        for (j, pj) in p.iter().enumerate() {
            let j = j as i64;
            if pj.is_empty() {
                continue;
            }
            for k in (j - hi - c0).max(0)..=(j - lo - c0) {
                let slot = &mut out[(j - k - c0 - lo) as usize];
                for (mono, y) in osc_mul(&s[k as usize], pj) {
                    slot.push(FockKey { charge: charge.clone(), modes: mono }, &sign * y);
                }
            }
        }
        out
    }

    /// `X_m(gamma)`, the coefficient of `z^{-m}` in
    /// `z^{(gamma,gamma)/2} exp(T_-) eps(gamma, .) e^gamma z^{gamma(0)} exp(T_+)`.
    pub fn vertex_component(&self, gamma: &[i64], m: i64, x: &FockVec) -> Result<FockVec> {
        self.check(x)?;
        self.check_q(gamma)?;
        let mut out = FockVec::zero(self.rank());
        for (key, c) in &x.terms {
            let y = self.vertex_modes(gamma, m, m, key).pop().expect("one mode");
            out.add_assign(&y.scale(c));
        }
        Ok(out)
    }

    /// `T^a_m(gamma) = sum_k :a(k) X_{m-k}(gamma):` with `a(k)`, `k > 0`, on the right.
    pub fn normal_ordered_t(&self, a: &[Scalar], m: i64, gamma: &[i64], x: &FockVec) -> Result<FockVec> {
        self.check(x)?;
        self.check_q(gamma)?;
        let mut out = FockVec::zero(self.rank());
        for (key, c) in &x.terms {
            let v = FockVec::basis(key.clone());
            let deg = key.degree();
            let c0 = self.lattice.pair(gamma, gamma) / 2 + self.lattice.pair(gamma, &key.charge);
            for k in 1..=deg {
                for (key2, c2) in &self.heis_act(a, k, &v)?.terms {
                    let y = self.vertex_modes(gamma, m - k, m - k, key2).pop().expect("one mode");
                    out.add_assign(&y.scale(&(c * c2)));
                }
            }
            // k <= 0: X_{m-k} v is nonzero only for m - k <= deg - c0.
            let hi = deg - c0;
            if m <= hi {
                for (off, y) in self.vertex_modes(gamma, m, hi, key).iter().enumerate() {
                    if !y.is_zero() {
                        out.add_assign(&self.heis_act(a, -(off as i64), y)?.scale(c));
                    }
                }
            }
        }
        Ok(out)
    }

    /// All basis keys with the given charges and energy at most `max_energy`.
    pub fn basis_up_to(&self, charges: &[Vec<i64>], max_energy: i64) -> Vec<FockKey> {
        let mut out = Vec::new();
        for charge in charges {
            let budget = max_energy - self.lattice.pair(charge, charge) / 2;
            for deg in 0..=budget {
                for modes in colored_partitions(deg, self.rank()) {
                    out.push(FockKey { charge: charge.clone(), modes });
                }
            }
        }
        out
    }
}

/// Multisets of `(color, part)` with parts summing to `total`, sorted.
pub fn colored_partitions(total: i64, colors: usize) -> Vec<Monomial> {
    fn go(rest: i64, min: (usize, i64), colors: usize, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for c in 0..colors {
            for k in 1..=rest {
                if (c, k) < min {
                    continue;
                }
                cur.push((c, k));
                go(rest - k, (c, k), colors, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if total >= 0 {
        go(total, (0, 1), colors, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simple_lie::build_simple;

    fn space() -> FockSpace {
        FockSpace::new(FockLattice::new(&build_simple(1).unwrap(), 1))
    }

    fn dir(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn heisenberg_examples() {
        let s = space();
        let a = dir(&[1, 0, 0]);
        let x = s.heis_act(&a, -1, &FockVec::vacuum(3)).unwrap();
        assert_eq!(s.heis_act(&a, 1, &x).unwrap(), FockVec::vacuum(3).scale(&int(2)));
        assert!(s.heis_act(&a, 2, &FockVec::vacuum(3)).unwrap().is_zero());
        let mu = FockVec::basis(FockKey { charge: vec![1, 0, 1], modes: vec![] });
        assert_eq!(s.heis_act(&dir(&[1, 1, 0]), 0, &mu).unwrap(), mu.scale(&int(3)));
    }

    #[test]
    fn vacuum_vertex_values() {
        let s = space();
        let alpha = [1, 0, 0];
        let vac = FockVec::vacuum(3);
        let e = FockVec::basis(FockKey { charge: alpha.to_vec(), modes: vec![] });
        assert_eq!(s.vertex_component(&alpha, -1, &vac).unwrap(), e);
        for m in 0..4 {
            assert!(s.vertex_component(&alpha, m, &vac).unwrap().is_zero());
        }
        let e1 = FockVec::basis(FockKey { charge: alpha.to_vec(), modes: vec![(0, 1)] });
        assert_eq!(s.vertex_component(&alpha, -2, &vac).unwrap(), e1);
        let delta = [0, 1, 0];
        let ed = FockVec::basis(FockKey { charge: delta.to_vec(), modes: vec![] });
        assert_eq!(s.vertex_component(&delta, 0, &vac).unwrap(), ed);
        let x = FockVec::basis(FockKey { charge: vec![0, 1, -1], modes: vec![(2, 1), (0, 2)] });
        assert_eq!(s.vertex_component(&[0, 0, 0], 0, &x).unwrap(), x);
        assert!(s.vertex_component(&[0, 0, 0], 1, &x).unwrap().is_zero());
        assert!(s.vertex_component(&[0, 0, 1], 0, &x).is_err());
    }

    #[test]
    fn normal_ordered_collapse() {
        let s = space();
        let a = dir(&[0, 1, 1]);
        let x = FockVec::basis(FockKey { charge: vec![1, 0, 1], modes: vec![(0, 1), (2, 3)] });
        for m in -3..=3 {
            assert_eq!(s.normal_ordered_t(&a, m, &[0, 0, 0], &x).unwrap(), s.heis_act(&a, m, &x).unwrap());
        }
        assert!(s.normal_ordered_t(&a, 2, &[0, 0, 0], &FockVec::vacuum(3)).unwrap().is_zero());
    }

    #[test]
    fn cocycle_commutator_sign() {
        let l = space().lattice().clone();
        let basis = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [1, -1, 1]];
        for a in &basis {
            for b in &basis {
                let s = l.cocycle(a, b) * l.cocycle(b, a);
                let expect = if l.pair(a, b).rem_euclid(2) == 0 { 1 } else { -1 };
                assert_eq!(s, expect);
            }
        }
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..5).map(|k| colored_partitions(k, 3).len()).collect();
        assert_eq!(counts, vec![1, 3, 9, 22, 51]);
    }
}
