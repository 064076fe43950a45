//! The simple Lie algebra `sl_{d+1}` in its matrix realization, its invariant
//! form, and a small family of finite-dimensional modules (plus `gl_n`-modules
//! obtained by letting the identity act by a scalar).

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{domain_err, Error, Result};
use crate::lattice::{frac, int, Scalar};
use crate::linalg::QMatrix;

/// Basis element of `sl_{d+1}` in matrix terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GBasis {
    /// Elementary matrix `E_{ij}`, `i != j` (0-based).
    Root { i: usize, j: usize },
    /// `h_k = E_{kk} - E_{k+1,k+1}` (0-based `k`).
    Cartan(usize),
}

/// `sl_{d+1}` with Chevalley-ordered basis: `e_alpha` for positive roots, then
/// `f_alpha` in the same order, then `h_1 .. h_d`.
pub struct SimpleAlgebra {
    rank: usize,
    basis: Vec<GBasis>,
    matrices: Vec<QMatrix>,
    brackets: Vec<Vec<Vec<(usize, Scalar)>>>,
    form: Vec<Vec<Scalar>>,
}

impl fmt::Debug for SimpleAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sl_{}", self.rank + 1)
    }
}

impl PartialEq for SimpleAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
    }
}

/// Element of `G` in basis coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GElement {
    pub rank: usize,
    pub coeffs: Vec<Scalar>,
}

pub fn build_simple(rank: usize) -> Result<Arc<SimpleAlgebra>> {
    if rank < 1 {
        return domain_err("simple algebra of type A needs rank >= 1");
    }
    Ok(Arc::new(SimpleAlgebra::type_a(rank)))
}

impl SimpleAlgebra {
    fn type_a(rank: usize) -> Self {
        let n = rank + 1;
        let mut basis = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                basis.push(GBasis::Root { i, j });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                basis.push(GBasis::Root { i: j, j: i });
            }
        }
        basis.extend((0..rank).map(GBasis::Cartan));

        let matrices: Vec<QMatrix> = basis
            .iter()
            .map(|b| {
                let mut m = QMatrix::zeros(n, n);
                match *b {
                    GBasis::Root { i, j } => m.set(i, j, Scalar::one()),
                    GBasis::Cartan(k) => {
                        m.set(k, k, Scalar::one());
                        m.set(k + 1, k + 1, -Scalar::one());
                    }
                }
                m
            })
            .collect();

        let mut alg = SimpleAlgebra { rank, basis, matrices, brackets: Vec::new(), form: Vec::new() };
        let dim = alg.basis.len();
        let mut brackets = vec![vec![Vec::new(); dim]; dim];
        let mut form = vec![vec![Scalar::zero(); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let c = alg.matrices[a].commutator(&alg.matrices[b]);
                brackets[a][b] = alg
                    .coords_of_matrix(&c)
                    .into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect();
                form[a][b] = alg.matrices[a].mul(&alg.matrices[b]).trace();
            }
        }
        alg.brackets = brackets;
        alg.form = form;
        alg
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Size `n` of the defining matrices (`n = rank + 1`).
    pub fn matrix_size(&self) -> usize {
        self.rank + 1
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[GBasis] {
        &self.basis
    }

    pub fn basis_matrix(&self, a: usize) -> &QMatrix {
        &self.matrices[a]
    }

    pub fn basis_name(&self, a: usize) -> String {
        match self.basis[a] {
            GBasis::Root { i, j } if i < j => format!("e{}{}", i + 1, j + 1),
            GBasis::Root { i, j } => format!("f{}{}", i + 1, j + 1),
            GBasis::Cartan(k) => format!("h{}", k + 1),
        }
    }

    pub fn index_of(&self, b: GBasis) -> Option<usize> {
        self.basis.iter().position(|&x| x == b)
    }

    pub fn root_index(&self, i: usize, j: usize) -> usize {
        self.index_of(GBasis::Root { i, j }).expect("valid root")
    }

    pub fn cartan_index(&self, k: usize) -> usize {
        self.index_of(GBasis::Cartan(k)).expect("valid cartan index")
    }

    /// `e_theta = E_{1n}` for the highest root `theta`.
    pub fn highest_root_vector(&self) -> usize {
        self.root_index(0, self.rank)
    }

    pub fn lowest_root_vector(&self) -> usize {
        self.root_index(self.rank, 0)
    }

    /// Coordinates of the coroot `theta^vee = E_11 - E_nn` (sum of all `h_k`).
    pub fn highest_coroot(&self) -> GElement {
        let mut x = self.zero();
        for k in 0..self.rank {
            x.coeffs[self.cartan_index(k)] = Scalar::one();
        }
        x
    }

    pub fn is_root_vector(&self, a: usize) -> bool {
        matches!(self.basis[a], GBasis::Root { .. })
    }

    /// Root of a root vector in simple-root coordinates.
    pub fn root_of(&self, a: usize) -> Option<Vec<i64>> {
        match self.basis[a] {
            GBasis::Root { i, j } => {
                let mut v = vec![0i64; self.rank];
                let (lo, hi, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
                for x in v.iter_mut().take(hi).skip(lo) {
                    *x = sign;
                }
                Some(v)
            }
            GBasis::Cartan(_) => None,
        }
    }

    /// All roots in simple-root coordinates.
    pub fn roots(&self) -> Vec<Vec<i64>> {
        (0..self.dim()).filter_map(|a| self.root_of(a)).collect()
    }

    /// Finite Cartan matrix `A_{ij} = alpha_j(h_i)`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect()
    }

    pub fn zero(&self) -> GElement {
        GElement { rank: self.rank, coeffs: vec![Scalar::zero(); self.dim()] }
    }

    pub fn basis_element(&self, a: usize) -> GElement {
        let mut x = self.zero();
        x.coeffs[a] = Scalar::one();
        x
    }

    pub fn bracket_basis(&self, a: usize, b: usize) -> &[(usize, Scalar)] {
        &self.brackets[a][b]
    }

    /// Invariant trace form on basis elements; `(theta, theta) = 2`.
    pub fn form_basis(&self, a: usize, b: usize) -> &Scalar {
        &self.form[a][b]
    }

    fn check(&self, x: &GElement) -> Result<()> {
        if x.rank != self.rank || x.coeffs.len() != self.dim() {
            return Err(Error::Domain(format!("element of rank {} used in sl_{}", x.rank, self.rank + 1)));
        }
        Ok(())
    }

    pub fn bracket(&self, x: &GElement, y: &GElement) -> Result<GElement> {
        self.check(x)?;
        self.check(y)?;
        let mut out = self.zero();
        for (a, ca) in x.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (b, cb) in y.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                for (c, s) in &self.brackets[a][b] {
                    out.coeffs[*c] += ca * cb * s;
                }
            }
        }
        Ok(out)
    }

    pub fn form(&self, x: &GElement, y: &GElement) -> Result<Scalar> {
        self.check(x)?;
        self.check(y)?;
        let mut acc = Scalar::zero();
        for (a, ca) in x.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (b, cb) in y.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                acc += ca * cb * &self.form[a][b];
            }
        }
        Ok(acc)
    }

    pub fn to_matrix(&self, x: &GElement) -> QMatrix {
        let n = self.matrix_size();
        let mut m = QMatrix::zeros(n, n);
        for (a, c) in x.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            m = m.add(&self.matrices[a].scale(c));
        }
        m
    }

    /// Basis coordinates of a traceless `n x n` matrix.
    pub fn coords_of_matrix(&self, m: &QMatrix) -> Vec<Scalar> {
        let n = self.matrix_size();
        let mut coords = vec![Scalar::zero(); self.dim()];
        for (a, b) in self.basis.iter().enumerate() {
            match *b {
                GBasis::Root { i, j } => coords[a] = m.get(i, j).clone(),
                GBasis::Cartan(k) => {
                    // diag entries a_l give h-coefficients c_k = a_1 + ... + a_k
                    coords[a] = (0..=k).fold(Scalar::zero(), |acc, l| acc + m.get(l, l));
                }
            }
        }
        debug_assert!((0..n).fold(Scalar::zero(), |acc, l| acc + m.get(l, l)).is_zero());
        coords
    }
}

/// Which member of the supported family a module is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModuleLabel {
    Trivial,
    Natural,
    Dual,
    Sym(usize),
    Ext(usize),
    Adjoint,
}

impl ModuleLabel {
    pub fn name(&self) -> String {
        match self {
            ModuleLabel::Trivial => "trivial".into(),
            ModuleLabel::Natural => "natural".into(),
            ModuleLabel::Dual => "dual".into(),
            ModuleLabel::Sym(k) => format!("sym{k}"),
            ModuleLabel::Ext(k) => format!("ext{k}"),
            ModuleLabel::Adjoint => "adjoint".into(),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let num = |rest: &str| rest.parse::<usize>().map_err(|_| Error::Domain(format!("bad module label {s:?}")));
        Ok(match s {
            "trivial" => ModuleLabel::Trivial,
            "natural" => ModuleLabel::Natural,
            "dual" => ModuleLabel::Dual,
            "adjoint" => ModuleLabel::Adjoint,
            _ if s.starts_with("sym") => ModuleLabel::Sym(num(&s[3..])?),
            _ if s.starts_with("ext") => ModuleLabel::Ext(num(&s[3..])?),
            _ => return domain_err(format!("unknown module label {s:?}")),
        })
    }
}

/// Finite-dimensional `G`-module given by one action matrix per basis element.
#[derive(Clone, Debug)]
pub struct FiniteModule {
    label: ModuleLabel,
    rank: usize,
    dim: usize,
    action: Vec<QMatrix>,
}

impl FiniteModule {
    pub fn label(&self) -> ModuleLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_action(&self, a: usize) -> &QMatrix {
        &self.action[a]
    }

    pub fn act(&self, x: &GElement) -> QMatrix {
        let mut m = QMatrix::zeros(self.dim, self.dim);
        for (a, c) in x.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            m = m.add(&self.action[a].scale(c));
        }
        m
    }

    /// `h_k`-eigenvalues of each basis vector (every module here has a weight basis).
    pub fn weights(&self, alg: &SimpleAlgebra) -> Vec<Vec<i64>> {
        (0..self.dim)
            .map(|v| {
                (0..alg.rank())
                    .map(|k| {
                        let m = &self.action[alg.cartan_index(k)];
                        let w = m.get(v, v);
                        assert!(w.is_integer(), "non-integral weight");
                        w.to_integer().try_into().expect("small weight")
                    })
                    .collect()
            })
            .collect()
    }

    /// Largest `p` with `rho(x)^p != 0`.
    pub fn nilpotency_degree(&self, a: usize) -> usize {
        let m = &self.action[a];
        let mut p = m.clone();
        let mut deg = 0;
        while !p.is_zero() {
            deg += 1;
            p = p.mul(m);
            assert!(deg <= self.dim, "action is not nilpotent");
        }
        deg
    }
}

fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for m in multisets(n, k - 1) {
        let start = m.last().copied().unwrap_or(0);
        for i in start..n {
            let mut v = m.clone();
            v.push(i);
            out.push(v);
        }
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for m in subsets(n, k - 1) {
        let start = m.last().map_or(0, |&x| x + 1);
        for i in start..n {
            let mut v = m.clone();
            v.push(i);
            out.push(v);
        }
    }
    out
}

/// Sorts `v` in place and returns the permutation sign.
fn sort_with_sign(v: &mut [usize]) -> i64 {
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    sign
}

/// Induced action of a matrix on a tensor-power basis (`sym` or `ext`).
fn tensor_power_action(x: &QMatrix, basis: &[Vec<usize>], alternating: bool) -> QMatrix {
    let n = x.nrows();
    let dim = basis.len();
    let mut out = QMatrix::zeros(dim, dim);
    for (col, mono) in basis.iter().enumerate() {
        for p in 0..mono.len() {
            for a in 0..n {
                let c = x.get(a, mono[p]);
                if c.is_zero() {
                    continue;
                }
                let mut m = mono.clone();
                m[p] = a;
                let sign = if alternating {
                    let mut seen = m.clone();
                    seen.sort_unstable();
                    if seen.windows(2).any(|w| w[0] == w[1]) {
                        continue;
                    }
                    sort_with_sign(&mut m)
                } else {
                    m.sort_unstable();
                    1
                };
                let row = basis.iter().position(|b| *b == m).expect("basis closed under action");
                out.add_to(row, col, &(c * int(sign)));
            }
        }
    }
    out
}

/// Builds the module with the given label. `ext^k` needs `k <= n` and is
/// trivial for `k = 0` or `k = n`.
pub fn irrep(alg: &SimpleAlgebra, label: ModuleLabel) -> Result<FiniteModule> {
    let n = alg.matrix_size();
    let mats = |f: &dyn Fn(&QMatrix) -> QMatrix| -> Vec<QMatrix> { alg.matrices.iter().map(f).collect() };
    let action = match label {
        ModuleLabel::Trivial => mats(&|_| QMatrix::zeros(1, 1)),
        ModuleLabel::Natural => mats(&|m| m.clone()),
        ModuleLabel::Dual => mats(&|m| m.transpose().scale(&-Scalar::one())),
        ModuleLabel::Sym(k) => {
            let basis = multisets(n, k);
            mats(&|m| tensor_power_action(m, &basis, false))
        }
        ModuleLabel::Ext(k) => {
            if k > n {
                return domain_err(format!("ext^{k} of the natural module of sl_{n} is zero"));
            }
            let basis = subsets(n, k);
            mats(&|m| tensor_power_action(m, &basis, true))
        }
        ModuleLabel::Adjoint => {
            let dim = alg.dim();
            (0..dim)
                .map(|a| {
                    let mut m = QMatrix::zeros(dim, dim);
                    for b in 0..dim {
                        for (c, s) in alg.bracket_basis(a, b) {
                            m.set(*c, b, s.clone());
                        }
                    }
                    m
                })
                .collect()
        }
    };
    let dim = action[0].nrows();
    Ok(FiniteModule { label, rank: alg.rank(), dim, action })
}

/// Basis of `ext^k(Q^n)`: sorted `k`-subsets in lexicographic order.
pub fn ext_basis(n: usize, k: usize) -> Vec<Vec<usize>> {
    subsets(n, k)
}

/// `gl_n`-module `V(psi, b)`: the `sl_n` action of `psi` with the identity acting by `b`.
#[derive(Clone, Debug)]
pub struct GlModule {
    n: usize,
    b: Scalar,
    label: ModuleLabel,
    dim: usize,
    /// `E_{ij}` action, indexed `i * n + j`.
    elementary: Vec<QMatrix>,
}

pub fn gl_module(alg: &SimpleAlgebra, psi: &FiniteModule, b: Scalar) -> Result<GlModule> {
    if psi.rank() != alg.rank() {
        return domain_err("module and algebra ranks differ");
    }
    let n = alg.matrix_size();
    let dim = psi.dim();
    let scalar_part = QMatrix::identity(dim).scale(&(&b / int(n as i64)));
    let mut elementary = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let m = if i != j {
                psi.basis_action(alg.root_index(i, j)).clone()
            } else {
                // E_ii - I/n is traceless; its h-coordinates are c_k = [k >= i] - (k+1)/n.
                let mut x = alg.zero();
                for k in 0..alg.rank() {
                    let c = int(i64::from(k >= i)) - frac(k as i64 + 1, n as i64);
                    x.coeffs[alg.cartan_index(k)] = c;
                }
                psi.act(&x).add(&scalar_part)
            };
            elementary.push(m);
        }
    }
    Ok(GlModule { n, b, label: psi.label(), dim, elementary })
}

impl GlModule {
    /// One-dimensional `V(0, b)`; also covers `gl_1`.
    pub fn one_dimensional(n: usize, b: Scalar) -> Result<Self> {
        if n == 0 {
            return domain_err("gl_0 has no modules");
        }
        let mut elementary = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let v = if i == j { &b / int(n as i64) } else { Scalar::zero() };
                elementary.push(QMatrix::from_rows(vec![vec![v]]));
            }
        }
        Ok(GlModule { n, b, label: ModuleLabel::Trivial, dim: 1, elementary })
    }

    /// Builds `V(psi, b)` for `gl_n` from a label, constructing `sl_n` as needed.
    pub fn from_label(n: usize, label: ModuleLabel, b: Scalar) -> Result<Self> {
        if label == ModuleLabel::Trivial {
            return Self::one_dimensional(n, b);
        }
        if n < 2 {
            return domain_err("only the trivial sl_1-module exists");
        }
        let alg = build_simple(n - 1)?;
        let psi = irrep(&alg, label)?;
        gl_module(&alg, &psi, b)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn b(&self) -> &Scalar {
        &self.b
    }

    pub fn label(&self) -> ModuleLabel {
        self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elementary(&self, i: usize, j: usize) -> &QMatrix {
        &self.elementary[i * self.n + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2() -> Arc<SimpleAlgebra> {
        build_simple(1).unwrap()
    }

    #[test]
    fn sl2_basis_and_form() {
        let g = sl2();
        assert_eq!(g.dim(), 3);
        let (e, f, h) = (0, 1, 2);
        assert_eq!(g.basis_name(e), "e12");
        assert_eq!(g.basis_name(f), "f21");
        assert_eq!(g.basis_name(h), "h1");
        assert_eq!(*g.form_basis(e, f), int(1));
        assert_eq!(*g.form_basis(h, h), int(2));
        assert_eq!(g.bracket(&g.basis_element(e), &g.basis_element(f)).unwrap(), g.basis_element(h));
        let two_e = GElement { rank: 1, coeffs: vec![int(2), int(0), int(0)] };
        assert_eq!(g.bracket(&g.basis_element(h), &g.basis_element(e)).unwrap(), two_e);
        assert_eq!(g.bracket(&g.basis_element(e), &g.basis_element(e)).unwrap(), g.zero());
    }

    #[test]
    fn sl3_dimension_and_roots() {
        let g = build_simple(2).unwrap();
        assert_eq!(g.dim(), 8);
        assert_eq!(g.roots().iter().filter(|r| r.iter().all(|&x| x >= 0)).count(), 3);
        assert_eq!(g.root_of(g.highest_root_vector()).unwrap(), vec![1, 1]);
    }

    #[test]
    fn rank_zero_rejected() {
        assert!(matches!(build_simple(0), Err(Error::Domain(_))));
    }

    #[test]
    fn mixed_algebras_rejected() {
        let g2 = sl2();
        let g3 = build_simple(2).unwrap();
        assert!(g2.bracket(&g2.basis_element(0), &g3.basis_element(0)).is_err());
    }

    #[test]
    fn highest_root_has_norm_two() {
        for d in 1..4 {
            let g = build_simple(d).unwrap();
            let th = g.highest_coroot();
            assert_eq!(g.form(&th, &th).unwrap(), int(2));
        }
    }

    #[test]
    fn natural_and_trivial_modules() {
        let g = sl2();
        let nat = irrep(&g, ModuleLabel::Natural).unwrap();
        assert_eq!(nat.dim(), 2);
        assert_eq!(nat.weights(&g), vec![vec![1], vec![-1]]);
        let triv = irrep(&g, ModuleLabel::Trivial).unwrap();
        assert_eq!(triv.dim(), 1);
        assert!((0..3).all(|a| triv.basis_action(a).is_zero()));
    }

    #[test]
    fn sym2_of_sl2_is_adjoint() {
        let g = sl2();
        let sym = irrep(&g, ModuleLabel::Sym(2)).unwrap();
        let ad = irrep(&g, ModuleLabel::Adjoint).unwrap();
        assert_eq!(sym.dim(), 3);
        // Solve T rho_sym(x) = rho_ad(x) T for the 9 entries of T.
        let mut rows = Vec::new();
        for a in 0..3 {
            let (s, d) = (sym.basis_action(a), ad.basis_action(a));
            for i in 0..3 {
                for j in 0..3 {
                    let mut row = vec![Scalar::zero(); 9];
                    for k in 0..3 {
                        row[i * 3 + k] += s.get(k, j);
                        row[k * 3 + j] -= d.get(i, k);
                    }
                    rows.push(row);
                }
            }
        }
        let ns = QMatrix::from_rows(rows).nullspace();
        assert_eq!(ns.len(), 1, "intertwiners form a line");
        let t = QMatrix::from_rows(ns[0].chunks(3).map(<[Scalar]>::to_vec).collect());
        assert!(!t.determinant().is_zero());
    }

    #[test]
    fn ext_beyond_n_is_rejected() {
        let g = sl2();
        assert!(irrep(&g, ModuleLabel::Ext(3)).is_err());
        assert_eq!(irrep(&g, ModuleLabel::Ext(1)).unwrap().dim(), 2);
        assert_eq!(irrep(&g, ModuleLabel::Ext(2)).unwrap().dim(), 1);
    }

    #[test]
    fn gl_module_examples() {
        let triv = GlModule::one_dimensional(3, int(2)).unwrap();
        assert_eq!(*triv.elementary(1, 1).get(0, 0), frac(2, 3));
        assert!(triv.elementary(0, 1).is_zero());

        let nat1 = GlModule::from_label(2, ModuleLabel::Natural, int(1)).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let mut e = QMatrix::zeros(2, 2);
                e.set(i, j, int(1));
                assert_eq!(*nat1.elementary(i, j), e);
            }
        }

        let nat0 = GlModule::from_label(2, ModuleLabel::Natural, int(0)).unwrap();
        let expect = QMatrix::from_rows(vec![vec![frac(1, 2), int(0)], vec![int(0), frac(-1, 2)]]);
        assert_eq!(*nat0.elementary(0, 0), expect);
    }

    #[test]
    fn module_labels_parse() {
        for l in [ModuleLabel::Trivial, ModuleLabel::Sym(3), ModuleLabel::Ext(2), ModuleLabel::Adjoint, ModuleLabel::Dual] {
            assert_eq!(ModuleLabel::parse(&l.name()).unwrap(), l);
        }
        assert!(ModuleLabel::parse("spin").is_err());
    }
}
