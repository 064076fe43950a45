//! Seeded invariant suites. Every suite is deterministic in `(seed, size)` and
//! reports the first counterexample it meets as a document.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::doc::{scalars_to_strings, ElementDocument, FockDocument, VectorDocument};
use crate::error::{Error, Result};
use crate::fock::{FockActionCache, FockKey, FockRep, FockVec};
use crate::lattice::{determinant, frac, int, ExpVec, IntMatrix, Scalar};
use crate::presentation::{canonical_assignment, check_relations, generators};
use crate::reps::{a_act, DerHatTopModule, EvalModule, LarssonModule, ModVec, TopModule};
use crate::sample::{self, SampleRng};
use crate::simple_lie::{build_simple, irrep, GlModule, ModuleLabel, SimpleAlgebra};
use crate::toroidal::{canonicalize_center, center_basis, BasisKey, Flavor, Header, TorElt, ToroidalAlgebra};

pub const SUITES: &[&str] = &[
    "jacobi",
    "antisym",
    "centrality",
    "virasoro",
    "twist-hom",
    "phi-hom",
    "smith",
    "larsson-rep",
    "eval-rep",
    "top-rep",
    "fock-hom",
    "da-welldef",
    "present",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    pub seed: u64,
    pub size: usize,
    /// Rank of `sl_{rank+1}` for `present`.
    pub rank: usize,
    /// Mode bound for `present`.
    pub modes: i64,
}

impl Default for Params {
    fn default() -> Self {
        Params { seed: 0, size: 100, rank: 1, modes: 3 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub size: usize,
    pub checks: usize,
    pub failures: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub stats: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: usize,
    stats: BTreeMap<String, u64>,
    counterexample: Option<Value>,
}

impl Tally {
    fn check(&mut self, ok: bool, cx: impl FnOnce() -> Value) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(cx());
            }
        }
    }

    fn bump(&mut self, name: &str) {
        *self.stats.entry(name.to_string()).or_default() += 1;
    }

    fn finish(self, suite: &str, p: &Params) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            seed: p.seed,
            size: p.size,
            checks: self.checks,
            failures: self.failures,
            passed: self.failures == 0,
            stats: self.stats,
            counterexample: self.counterexample,
        }
    }
}

pub fn run(suite: &str, p: &Params) -> Result<SuiteReport> {
    let mut rng = sample::rng(p.seed);
    let mut t = Tally::default();
    match suite {
        "jacobi" => jacobi(&mut rng, p.size, &mut t)?,
        "antisym" => antisym(&mut rng, p.size, &mut t)?,
        "centrality" => centrality(&mut rng, p.size, &mut t)?,
        "virasoro" => virasoro(&mut t)?,
        "twist-hom" => twist_hom(&mut rng, p.size, &mut t)?,
        "phi-hom" => phi_hom(&mut rng, p.size, &mut t)?,
        "smith" => smith(&mut rng, p.size, &mut t)?,
        "larsson-rep" => larsson_rep(&mut rng, p.size, &mut t)?,
        "eval-rep" => eval_rep(&mut rng, p.size, &mut t)?,
        "top-rep" => top_rep(&mut rng, p.size, &mut t)?,
        "fock-hom" => fock_hom(&mut rng, p.size, &mut t)?,
        "da-welldef" => da_welldef(&mut rng, p.size, &mut t)?,
        "present" => present(p.rank, p.modes, &mut t)?,
        other => return Err(Error::Unsupported(format!("unknown suite {other:?}"))),
    }
    Ok(t.finish(suite, p))
}

fn el(alg: &ToroidalAlgebra, x: &TorElt) -> Value {
    serde_json::to_value(ElementDocument::from_element(alg, x)).expect("serializable")
}

fn modv(v: &ModVec) -> Value {
    serde_json::to_value(VectorDocument::from_vec(v)).expect("serializable")
}

fn fockv(v: &FockVec) -> Value {
    serde_json::to_value(FockDocument::from_vec(v)).expect("serializable")
}

/// Lie algebras sampled by the structural suites.
fn structural_algebras(flavors: &[Flavor]) -> Result<Vec<ToroidalAlgebra>> {
    let mut out = Vec::new();
    for &flavor in flavors {
        for n in 1..=3 {
            if flavor == Flavor::DerAHat {
                out.push(ToroidalAlgebra::dera_hat(n)?);
            } else {
                for rank in 1..=2 {
                    out.push(ToroidalAlgebra::new(build_simple(rank)?, n, flavor)?);
                }
            }
        }
    }
    Ok(out)
}

fn jacobi(rng: &mut SampleRng, size: usize, t: &mut Tally) -> Result<()> {
    for alg in structural_algebras(&[Flavor::TauHat, Flavor::DerAHat])? {
        for _ in 0..size {
            let [x, y, z] = [0, 1, 2].map(|_| alg.basis(sample::key(rng, &alg, 2)).expect("sampled key"));
            let j = alg
                .bracket(&alg.bracket(&x, &y)?, &z)?
                .add(&alg.bracket(&alg.bracket(&y, &z)?, &x)?)
                .add(&alg.bracket(&alg.bracket(&z, &x)?, &y)?);
            t.check(j.is_zero(), || json!({"x": el(&alg, &x), "y": el(&alg, &y), "z": el(&alg, &z), "jacobiator": el(&alg, &j)}));
        }
    }
    Ok(())
}

fn antisym(rng: &mut SampleRng, size: usize, t: &mut Tally) -> Result<()> {
    let flavors = [Flavor::Tau, Flavor::TauTilde, Flavor::TauHat, Flavor::DerAHat];
    for alg in structural_algebras(&flavors)? {
        for _ in 0..size {
            let x = sample::element(rng, &alg, 3, 2);
            let y = sample::element(rng, &alg, 3, 2);
            let s = alg.bracket(&x, &y)?.add(&alg.bracket(&y, &x)?);
            let xx = alg.bracket(&x, &x)?;
            t.check(s.is_zero() && xx.is_zero(), || json!({"x": el(&alg, &x), "y": el(&alg, &y), "sum": el(&alg, &s)}));
        }
    }
    Ok(())
}

/// Center brackets trivially with `tau`, and the graded center has the
/// expected dimension: the exact form vanishes and every raw `t^r K_i`
/// reduces into the canonical basis at degree `r`.
fn centrality(rng: &mut SampleRng, size: usize, t: &mut Tally) -> Result<()> {
    for alg in structural_algebras(&[Flavor::Tau])? {
        let n = alg.n();
        for _ in 0..size {
            let r = if n == 1 { ExpVec::zero(1) } else { sample::exp(rng, n, 3) };
            let keys = center_basis(&r);
            let k = alg.basis(keys.choose(rng).expect("nonempty for the sampled degree").clone())?;
            let x = sample::element(rng, &alg, 3, 2);
            let b = alg.bracket(&k, &x)?;
            t.check(b.is_zero(), || json!({"center": el(&alg, &k), "x": el(&alg, &x), "bracket": el(&alg, &b)}));
        }
    }
    for n in 1..=3 {
        let header = Header { rank: None, n, flavor: Flavor::DerAHat };
        for step in 0..=size {
            let r = if step == 0 { ExpVec::zero(n) } else { sample::nonzero_exp(rng, n, 4) };
            let basis = center_basis(&r);
            let expected = if r.is_zero() { n } else { n - 1 };
            let exact: Vec<(usize, ExpVec, Scalar)> = (0..n).map(|i| (i, r.clone(), int(r[i]))).collect();
            let exact_zero = canonicalize_center(header, &exact)?.is_zero();
            let mut spans = true;
            for i in 0..n {
                let c = canonicalize_center(header, &[(i, r.clone(), int(1))])?;
                spans &= c.terms().keys().all(|k| basis.contains(k));
            }
            let canonical = basis.iter().all(BasisKey::is_canonical);
            t.check(basis.len() == expected && exact_zero && spans && canonical, || {
                json!({"n": n, "degree": r.entries(), "count": basis.len(), "expected": expected})
            });
            if r.is_zero() {
                t.bump("zero_degree");
            }
        }
    }
    Ok(())
}

/// `[D(1,r), D(1,s)] = (s-r) D(1,r+s)` plus `r^3 K_1` when `r + s = 0`.
fn virasoro(t: &mut Tally) -> Result<()> {
    let algs = [ToroidalAlgebra::dera_hat(1)?, ToroidalAlgebra::new(build_simple(1)?, 1, Flavor::TauHat)?];
    for alg in &algs {
        for r in -5i64..=5 {
            for s in -5i64..=5 {
                let d = |e: i64| alg.basis(BasisKey::Deriv { i: 0, exp: ExpVec::new(vec![e]) });
                let lhs = alg.bracket(&d(r)?, &d(s)?)?;
                let mut rhs = d(r + s)?.scale(&int(s - r));
                if r + s == 0 {
                    rhs = rhs.add(&alg.basis(BasisKey::Center { i: 0, exp: ExpVec::zero(1) })?.scale(&int(r * r * r)));
                }
                let no_k = r + s == 0 || lhs.terms().keys().all(|k| !matches!(k, BasisKey::Center { .. }));
                t.check(lhs == rhs && no_k, || json!({"r": r, "s": s, "bracket": el(alg, &lhs), "expected": el(alg, &rhs)}));
            }
        }
    }
    Ok(())
}

fn twist_hom(rng: &mut SampleRng, size: usize, t: &mut Tally) -> Result<()> {
    for n in 2..=3 {
        let alg = ToroidalAlgebra::new(build_simple(1)?, n, Flavor::TauHat)?;
        for _ in 0..10 {
            let b = sample::unimodular(rng, n, 8);
            let binv = b.inverse();
            for _ in 0..size {
                let x = sample::element(rng, &alg, 2, 2);
                let y = sample::element(rng, &alg, 2, 2);
                let lhs = alg.twist(&b, &alg.bracket(&x, &y)?)?;
                let rhs = alg.bracket(&alg.twist(&b, &x)?, &alg.twist(&b, &y)?)?;
                let back = alg.twist(&binv, &alg.twist(&b, &x)?)?;
                t.check(lhs == rhs && back == x, || {
                    json!({"matrix": b.matrix().rows(), "x": el(&alg, &x), "y": el(&alg, &y),
                           "twisted_bracket": el(&alg, &lhs), "bracket_of_twists": el(&alg, &rhs)})
                });
            }
        }
    }
    Ok(())
}

fn phi_hom(rng: &mut SampleRng, size: usize, t: &mut Tally) -> Result<()> {
    let g = build_simple(1)?;
    for n in 2..=3 {
        let alg = ToroidalAlgebra::new(g.clone(), n, Flavor::TauTilde)?;
        for _ in 0..size {
            let x = sample::element(rng, &alg, 3, 2);
            let y = sample::element(rng, &alg, 3, 2);
            let lhs = alg.phi_reduce(&alg.bracket(&x, &y)?)?;
            let rhs = alg.phi_reduce(&x)?.bracket(&alg.phi_reduce(&y)?, &g);
            t.check(lhs == rhs, || json!({"x": el(&alg, &x), "y": el(&alg, &y)}));
        }
    }
    Ok(())
}

/// gcd of all `k x k` minors of the rows.
fn minor_gcd(rows: &[Vec<i64>], k: usize) -> Result<i64> {
    let cols = rows[0].len();
    let mut g = num_bigint::BigInt::zero();
    for rs in subsets(rows.len(), k) {
        for cs in subsets(cols, k) {
            let m = IntMatrix::from_rows(rs.iter().map(|&r| cs.iter().map(|&c| rows[r][c]).collect()).collect())?;
            g = g.gcd(&determinant(&m)?);
        }
    }
    Ok(g.to_i64().expect("small minors"))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// The normalized lattice has the right index (k-th determinantal divisor),
/// the images lie in `diag[i] Z e_i`, and the diagonal is a divisibility chain.
fn smith(rng: &mut SampleRng, size: usize, t: &mut Tally) -> Result<()> {
    let mut done = 0;
    while done < size {
        let k = rng.gen_range(1..=2);
        let mut rows: Vec<Vec<i64>> = (0..k).map(|_| (0..3).map(|_| rng.gen_range(-6..=6)).collect()).collect();
        if minor_gcd(&rows, k)? == 0 {
            continue;
        }
        let coefs: Vec<i64> = (0..k).map(|_| rng.gen_range(-2..=2)).collect();
        let extra: Vec<i64> = (0..3).map(|c| rows.iter().zip(&coefs).map(|(r, a)| r[c] * a).sum()).collect();
        rows.push(extra);
        done += 1;
        let gens: Vec<ExpVec> = rows.iter().map(|r| ExpVec::new(r.clone())).collect();
        let s = crate::lattice::smith_normalize(&gens)?;
        let det = determinant(s.transform.matrix())?;
        let images: Vec<Vec<i64>> = gens.iter().map(|g| s.transform.apply(g).map(|v| v.entries().to_vec())).collect::<Result<_>>()?;
        let shape = images.iter().all(|v| {
            v.iter().enumerate().all(|(i, &x)| if i < s.rank { x % s.diag[i] == 0 } else { x == 0 })
        });
        let chain = s.diag.iter().all(|&d| d > 0) && s.diag.windows(2).all(|w| w[1] % w[0] == 0);
        let index = s.diag.iter().product::<i64>() == minor_gcd(&images, k)?.abs();
        t.check(s.rank == k && det.abs().is_one() && shape && chain && index, || {
            json!({"generators": rows, "transform": s.transform.matrix().rows(), "diag": s.diag, "rank": s.rank})
        });
    }
    Ok(())
}

fn basis_modvec(rng: &mut SampleRng, dims: &[usize], n: usize, bound: i64) -> ModVec {
    let idx = dims.iter().map(|&d| rng.gen_range(0..d)).collect();
    ModVec::basis(idx, sample::exp(rng, n, bound))
}

fn larsson_rep(rng: &mut SampleRng, size: usize, t: &mut Tally) -> Result<()> {
    let labels = [(ModuleLabel::Trivial, 0), (ModuleLabel::Natural, 1), (ModuleLabel::Natural, 5), (ModuleLabel::Ext(1), 1)];
    for n in 2..=3 {
        for (label, b) in labels {
            for shifted in [false, true] {
                let mut alpha = vec![Scalar::zero(); n];
                if shifted {
                    alpha[0] = int(1);
                }
                let f = LarssonModule::new(GlModule::from_label(n, label, int(b))?, alpha)?;
                let witness = f.submodule_witness().filter(|_| label == ModuleLabel::Trivial);
                for _ in 0..size {
                    let (u, v) = (sample::scalars(rng, n), sample::scalars(rng, n));
                    let (r, s) = (sample::exp(rng, n, 2), sample::exp(rng, n, 2));
                    let x = basis_modvec(rng, &[f.fiber_dim()], n, 2).add(&basis_modvec(rng, &[f.fiber_dim()], n, 2));
                    let comm = f.act(&u, &r, &f.act(&v, &s, &x)?)?.sub(&f.act(&v, &s, &f.act(&u, &r, &x)?)?);
                    let us = s.pair(&u);
                    let vr = r.pair(&v);
                    let w: Vec<Scalar> = (0..n).map(|i| &us * &v[i] - &vr * &u[i]).collect();
                    let rhs = f.act(&w, &(&r + &s), &x)?;
                    let ctx = || json!({"label": label.name(), "b": b, "alpha": scalars_to_strings(f.alpha()),
                        "u": scalars_to_strings(&u), "r": r.entries(), "v": scalars_to_strings(&v), "s": s.entries(), "x": modv(&x)});
                    t.check(comm == rhs, ctx);
                    let k = sample::exp(rng, n, 2);
                    let lhs = f.act(&u, &r, &a_act(&k, &x)?)?.sub(&a_act(&k, &f.act(&u, &r, &x)?)?);
                    let expect = a_act(&(&r + &k), &x)?.scale(&k.pair(&u));
                    t.check(lhs == expect, ctx);
                    if let Some(wv) = &witness {
                        let y = f.act(&u, &r, wv)?;
                        t.check(y.is_zero(), || json!({"witness": modv(wv), "u": scalars_to_strings(&u), "r": r.entries()}));
                        t.bump("witness_checks");
                    }
                }
            }
        }
    }
    Ok(())
}

fn random_eval_module(rng: &mut SampleRng, g: &Arc<SimpleAlgebra>, n: usize, factors: usize) -> Result<EvalModule> {
    let pool: Vec<Scalar> = [(1, 1), (-1, 1), (2, 1), (-2, 1), (3, 1), (1, 2), (-1, 2), (1, 3)].iter().map(|&(p, q)| frac(p, q)).collect();
    let points: Vec<Vec<Scalar>> = (0..n).map(|_| pool.choose_multiple(rng, factors).cloned().collect()).collect();
    let labels = [ModuleLabel::Natural, ModuleLabel::Adjoint];
    let ws = (0..factors).map(|_| irrep(g, *labels.choose(rng).expect("nonempty"))).collect::<Result<Vec<_>>>()?;
    let choices = (0..factors).map(|_| (0..n).map(|_| rng.gen_range(0..factors)).collect()).collect();
    EvalModule::new(g.clone(), points, ws, choices)
}

fn eval_rep(rng: &mut SampleRng, size: usize, t: &mut Tally) -> Result<()> {
    let g = build_simple(1)?;
    let mut configs = Vec::new();
    for n in 1..=2 {
        for factors in 1..=4 {
            let m = random_eval_module(rng, &g, n, factors)?;
            let alg = ToroidalAlgebra::new(g.clone(), n, Flavor::TauTilde)?;
            configs.push((m, alg));
        }
    }
    let roots: Vec<usize> = (0..g.dim()).filter(|&a| g.is_root_vector(a)).collect();
    for step in 0..size {
        let (m, alg) = &configs[step % configs.len()];
        let n = m.n();
        let dims: Vec<usize> = m.factors().iter().map(|w| w.dim()).collect();
        let x = alg.basis(sample::key(rng, alg, 2))?;
        let y = alg.basis(sample::key(rng, alg, 2))?;
        let v = basis_modvec(rng, &dims, n, 2);
        let lhs = m.act_element(&alg.bracket(&x, &y)?, &v)?;
        let rhs = m.act_element(&x, &m.act_element(&y, &v)?)?.sub(&m.act_element(&y, &m.act_element(&x, &v)?)?);
        t.check(lhs == rhs, || json!({"x": el(alg, &x), "y": el(alg, &y), "v": modv(&v)}));

        let root = *roots.choose(rng).expect("sl2 has roots");
        let e = sample::exp(rng, n, 2);
        let k = m.nilpotency_index(root, &e, &v);
        let ok = match &k {
            Ok(k) => {
                let xa = g.basis_element(root);
                let mut w = v.clone();
                for _ in 0..k - 1 {
                    w = m.act(&xa, &e, &w)?;
                }
                *k <= m.nilpotency_bound(root) && !w.is_zero() && m.act(&xa, &e, &w)?.is_zero()
            }
            Err(_) => false,
        };
        t.check(ok, || json!({"root": root, "exp": e.entries(), "v": modv(&v), "bound": m.nilpotency_bound(root)}));

        let mu = rng.gen_range(-4..=4);
        let s = sample::exp(rng, n, 2);
        let (a, b) = (m.weight_space_dim(&[mu], &s)?, m.weight_space_dim(&[-mu], &s)?);
        let total: usize = (-8..=8).map(|w| m.weight_space_dim(&[w], &s)).sum::<Result<usize>>()?;
        t.check(a == b && total == dims.iter().product::<usize>(), || json!({"weight": mu, "dims": [a, b], "total": total}));
    }
    Ok(())
}

enum Top {
    Tau(TopModule, Vec<usize>),
    Der(DerHatTopModule, Vec<usize>),
}

impl Top {
    fn act(&self, g: &TorElt, x: &ModVec) -> Result<ModVec> {
        match self {
            Top::Tau(m, _) => m.act(g, x),
            Top::Der(m, _) => m.act(g, x),
        }
    }

    fn dims(&self) -> &[usize] {
        match self {
            Top::Tau(_, d) | Top::Der(_, d) => d,
        }
    }
}

/// Degree-zero `D(e_i, r)` and `K(e_i, s)` with `i >= 1`; the bracket carries `K(r, r+s)`.
fn forced_dk_pair(rng: &mut SampleRng, alg: &ToroidalAlgebra) -> (BasisKey, BasisKey) {
    let n = alg.n();
    loop {
        let i = rng.gen_range(1..n);
        let mut r = sample::exp(rng, n, 2).entries().to_vec();
        let mut s = sample::exp(rng, n, 2).entries().to_vec();
        r[0] = 0;
        s[0] = 0;
        let kk = BasisKey::Center { i, exp: ExpVec::new(s) };
        if r.iter().all(|&x| x == 0) || !kk.is_canonical() {
            continue;
        }
        return (BasisKey::Deriv { i, exp: ExpVec::new(r) }, kk);
    }
}

fn dk_term_nonzero(alg: &ToroidalAlgebra, a: &BasisKey, b: &BasisKey) -> Result<bool> {
    let (BasisKey::Deriv { i, exp: r }, BasisKey::Center { i: j, exp: s }) = (a, b) else {
        return Ok(false);
    };
    Ok(i == j && !alg.k_vec(&r.as_scalars(), &(r + s))?.is_zero())
}

fn top_rep(rng: &mut SampleRng, size: usize, t: &mut Tally) -> Result<()> {
    let g = build_simple(1)?;
    let nat = irrep(&g, ModuleLabel::Natural)?;
    let adj = irrep(&g, ModuleLabel::Adjoint)?;
    let f1 = LarssonModule::new(GlModule::from_label(2, ModuleLabel::Natural, int(3))?, vec![int(1), int(0)])?;
    let f2 = LarssonModule::new(GlModule::from_label(1, ModuleLabel::Trivial, int(0))?, vec![frac(1, 2)])?;
    let f3 = LarssonModule::new(GlModule::from_label(2, ModuleLabel::Natural, int(1))?, vec![int(0), int(1)])?;
    let f4 = LarssonModule::new(GlModule::from_label(2, ModuleLabel::Ext(2), int(2))?, vec![frac(-1, 3), int(2)])?;
    let modules = [
        (Top::Tau(TopModule::new(nat.clone(), f1.clone(), int(2), int(5)), vec![2, 2]), ToroidalAlgebra::new(g.clone(), 3, Flavor::TauHat)?),
        (Top::Tau(TopModule::new(adj, f2.clone(), int(-1), frac(1, 2)), vec![3, 1]), ToroidalAlgebra::new(g.clone(), 2, Flavor::TauHat)?),
        (Top::Der(DerHatTopModule::new(f3, int(7), int(-1)), vec![2]), ToroidalAlgebra::dera_hat(3)?),
        (Top::Der(DerHatTopModule::new(f4, frac(2, 3), int(4)), vec![1]), ToroidalAlgebra::dera_hat(3)?),
    ];
    for step in 0..size {
        let (m, alg) = &modules[step % modules.len()];
        let (ka, kb) = if step % 3 == 0 {
            let (d, k) = forced_dk_pair(rng, alg);
            if rng.gen_bool(0.5) { (d, k) } else { (k, d) }
        } else {
            (sample::degree_zero_key(rng, alg, 2), sample::degree_zero_key(rng, alg, 2))
        };
        if dk_term_nonzero(alg, &ka, &kb)? || dk_term_nonzero(alg, &kb, &ka)? {
            t.bump("uv_center_pairs");
        }
        let (x, y) = (alg.basis(ka)?, alg.basis(kb)?);
        let v = basis_modvec(rng, m.dims(), alg.n() - 1, 2);
        let lhs = m.act(&alg.bracket(&x, &y)?, &v)?;
        let rhs = m.act(&x, &m.act(&y, &v)?)?.sub(&m.act(&y, &m.act(&x, &v)?)?);
        t.check(lhs == rhs, || json!({"x": el(alg, &x), "y": el(alg, &y), "v": modv(&v), "lhs": modv(&lhs), "rhs": modv(&rhs)}));
    }
    Ok(())
}

/// Charges in `{-1,0,1}^rank`, energy at most 4.
pub fn fock_test_basis(rep: &FockRep) -> Vec<FockKey> {
    let rank = rep.space().rank();
    let mut charges = vec![vec![]];
    for _ in 0..rank {
        charges = charges.into_iter().flat_map(|c: Vec<i64>| (-1..=1).map(move |x| [c.clone(), vec![x]].concat())).collect();
    }
    rep.space().basis_up_to(&charges, 4)
}

fn central_key_pair(rng: &mut SampleRng, g: &SimpleAlgebra, n: usize) -> (BasisKey, BasisKey) {
    let e = g.highest_root_vector();
    let f = g.lowest_root_vector();
    let h = g.cartan_index(0);
    let (a, b) = *[(e, f), (f, e), (h, h)].choose(rng).expect("nonempty");
    let r = sample::nonzero_exp(rng, n, 1);
    (BasisKey::G { g: a, exp: r }, BasisKey::G { g: b, exp: sample::exp(rng, n, 1) })
}

fn fock_hom(rng: &mut SampleRng, size: usize, t: &mut Tally) -> Result<()> {
    let g = build_simple(1)?;
    let rep = FockRep::new(g.clone(), 1)?;
    let alg = ToroidalAlgebra::new(g.clone(), 2, Flavor::Tau)?;
    let basis = fock_test_basis(&rep);
    t.stats.insert("basis_vectors".into(), basis.len() as u64);
    let mut cache = FockActionCache::new(&rep);
    for step in 0..size {
        let (ka, kb) = if step % 5 == 0 {
            central_key_pair(rng, &g, 2)
        } else {
            (sample::key(rng, &alg, 1), sample::key(rng, &alg, 1))
        };
        let (x, y) = (alg.basis(ka)?, alg.basis(kb)?);
        let br = alg.bracket(&x, &y)?;
        if br.terms().keys().any(|k| matches!(k, BasisKey::Center { .. })) {
            t.bump("central_pairs");
        }
        let mut bad = None;
        for key in &basis {
            let v = FockVec::basis(key.clone());
            let lhs = cache.act(&br, &v)?;
            let yv = cache.act(&y, &v)?;
            let xv = cache.act(&x, &v)?;
            let rhs = cache.act(&x, &yv)?.sub(&cache.act(&y, &xv)?);
            if lhs != rhs && bad.is_none() {
                bad = Some((v, lhs, rhs));
            }
        }
        t.check(bad.is_none(), || {
            let (v, lhs, rhs) = bad.clone().expect("failure recorded");
            json!({"x": el(&alg, &x), "y": el(&alg, &y), "v": fockv(&v), "bracket_image": fockv(&lhs), "commutator": fockv(&rhs)})
        });
    }
    // X_{-1}(alpha) vac = +-e^alpha and X_m(alpha) vac = 0 for m >= 0.
    let rank = rep.space().rank();
    let vac = FockVec::vacuum(rank);
    for a in (0..g.dim()).filter(|&a| g.is_root_vector(a)) {
        for r in -1..=1 {
            let alpha = g.root_of(a).expect("root");
            let target = FockKey { charge: rep.lattice_vector(&alpha, &[r]), modes: vec![] };
            for m in -1..=3 {
                let y = rep.act_key(&BasisKey::G { g: a, exp: ExpVec::new(vec![r, m]) }, &vac)?;
                let ok = if m == -1 {
                    y.terms().len() == 1 && y.terms().get(&target).is_some_and(|c| c.abs().is_one())
                } else {
                    y.is_zero()
                };
                t.check(ok, || json!({"root": a, "delta": r, "mode": m, "image": fockv(&y)}));
                t.bump("vacuum_checks");
            }
        }
    }
    Ok(())
}

fn da_welldef(rng: &mut SampleRng, size: usize, t: &mut Tally) -> Result<()> {
    let rep = FockRep::new(build_simple(1)?, 1)?;
    let basis = fock_test_basis(&rep);
    for _ in 0..size {
        let m = sample::nonzero_exp(rng, 2, 2);
        for key in &basis {
            let v = FockVec::basis(key.clone());
            let y = rep.exact_form_act(&m, &v)?;
            t.check(y.is_zero(), || json!({"degree": m.entries(), "v": fockv(&v), "image": fockv(&y)}));
        }
    }
    Ok(())
}

fn present(rank: usize, modes: i64, t: &mut Tally) -> Result<()> {
    let a = canonical_assignment(build_simple(rank)?, 2 * modes)?;
    let describe = |v: &crate::presentation::Violation| {
        json!({"relation": v.relation, "lhs": el(a.algebra(), &v.lhs), "rhs": el(a.algebra(), &v.rhs)})
    };
    let report = check_relations(&a, modes)?;
    t.check(report.is_empty(), || describe(&report[0]));
    let zero_c = check_relations(&a.with_zero_center(), modes)?;
    t.check(!zero_c.is_empty(), || json!({"perturbation": "C -> 0", "detected": false}));
    for gen in generators(a.data(), modes) {
        let v = check_relations(&a.with_flipped(gen), modes)?;
        t.check(!v.is_empty(), || json!({"perturbation": format!("flip {gen}"), "detected": false}));
        t.bump("perturbations");
    }
    t.stats.insert("violations".into(), report.len() as u64);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for suite in ["jacobi", "antisym", "centrality", "virasoro", "twist-hom", "phi-hom", "smith", "larsson-rep", "eval-rep", "top-rep"] {
            let r = run(suite, &Params { seed: 3, size: 5, ..Params::default() }).unwrap();
            assert!(r.passed, "{suite}: {:?}", r.counterexample);
            assert!(r.checks > 0);
        }
    }

    #[test]
    fn deterministic() {
        let p = Params { seed: 11, size: 4, ..Params::default() };
        assert_eq!(run("jacobi", &p).unwrap(), run("jacobi", &p).unwrap());
    }

    #[test]
    fn unknown_suite() {
        assert!(run("nope", &Params::default()).is_err());
    }

    #[test]
    fn subsets_count() {
        assert_eq!(subsets(3, 2).len(), 3);
        assert_eq!(minor_gcd(&[vec![2, 4, 0], vec![0, 6, 0]], 2).unwrap(), 12);
    }
}
