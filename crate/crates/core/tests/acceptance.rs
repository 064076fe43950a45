//! One line per acceptance criterion. All comparisons are exact (tolerance 0).

mod common;

use std::time::{Duration, Instant};

use toroidal::lattice::{determinant, int, smith_normalize, ExpVec};
use toroidal::sample;
use toroidal::simple_lie::build_simple;
use toroidal::toroidal::{center_basis, BasisKey, Flavor, ToroidalAlgebra};
use toroidal::verify::{self, Params, SuiteReport};

struct Line {
    ok: bool,
    detail: String,
}

fn suite(name: &str, seed: u64, size: usize) -> SuiteReport {
    verify::run(name, &Params { seed, size, ..Params::default() }).expect("suite runs")
}

fn summary(r: &SuiteReport) -> String {
    format!("{} {}/{} checks", r.suite, r.checks - r.failures, r.checks)
}

fn secs(d: Duration) -> String {
    format!("{:.2} s", d.as_secs_f64())
}

fn c1() -> Line {
    let t = Instant::now();
    let j = suite("jacobi", 1, 500);
    let a = suite("antisym", 1, 500);
    let el = t.elapsed();
    Line {
        ok: j.passed && a.passed && el < Duration::from_secs(30),
        detail: format!("{}, {}, {} (limit 30 s)", summary(&j), summary(&a), secs(el)),
    }
}

fn c2() -> Line {
    let mut rng = sample::rng(2);
    let mut ok = true;
    for n in 1..=3usize {
        ok &= center_basis(&ExpVec::zero(n)).len() == n;
        for _ in 0..50 {
            let r = sample::nonzero_exp(&mut rng, n, 5);
            ok &= center_basis(&r).len() == n - 1;
        }
    }
    let s = suite("centrality", 2, 50);
    Line { ok: ok && s.passed, detail: format!("150 nonzero degrees + 3 zero degrees, {}", summary(&s)) }
}

fn c3() -> Line {
    let alg = ToroidalAlgebra::dera_hat(1).unwrap();
    let d = |r: i64| alg.basis(BasisKey::Deriv { i: 0, exp: ExpVec::new(vec![r]) }).unwrap();
    let k = alg.basis(BasisKey::Center { i: 0, exp: ExpVec::zero(1) }).unwrap();
    let mut ok = true;
    let mut checks = 0;
    for r in -5i64..=5 {
        let got = alg.bracket(&d(r), &d(-r)).unwrap();
        ok &= got == d(0).scale(&int(-2 * r)).add(&k.scale(&int(r * r * r)));
        checks += 1;
        for s in -5i64..=5 {
            if r + s != 0 {
                let b = alg.bracket(&d(r), &d(s)).unwrap();
                ok &= b.terms().keys().all(|key| !matches!(key, BasisKey::Center { .. }));
                checks += 1;
            }
        }
    }
    let v = suite("virasoro", 3, 0);
    Line { ok: ok && v.passed, detail: format!("{checks} direct checks, {}", summary(&v)) }
}

fn c4() -> Line {
    let tw = suite("twist-hom", 4, 200);
    let phi = suite("phi-hom", 4, 200);
    let alg = ToroidalAlgebra::new(build_simple(1).unwrap(), 2, Flavor::TauTilde).unwrap();
    let k = |r: [i64; 2]| alg.basis(BasisKey::Center { i: 1, exp: ExpVec::new(r.to_vec()) }).unwrap();
    let kept = alg.phi_reduce(&k([3, 0])).unwrap().terms().len() == 1;
    let dropped = alg.phi_reduce(&k([3, 1])).unwrap().is_zero();
    Line {
        ok: tw.passed && phi.passed && kept && dropped,
        detail: format!("{} (10 matrices per n in {{2,3}}), {}", summary(&tw), summary(&phi)),
    }
}

fn c5() -> Line {
    let s = suite("smith", 5, 50);
    let ex = smith_normalize(&[ExpVec::new(vec![2, 4])]).unwrap();
    let img = ex.transform.apply(&ExpVec::new(vec![2, 4])).unwrap();
    let det = determinant(ex.transform.matrix()).unwrap();
    let ok = s.passed && ex.rank == 1 && ex.diag == vec![2] && img == ExpVec::new(vec![2, 0]) && (det == 1.into() || det == (-1).into());
    Line { ok, detail: format!("{}, example (2,4) -> (2,0)", summary(&s)) }
}

fn c6() -> Line {
    let s = suite("larsson-rep", 6, 200);
    let w = s.stats.get("witness_checks").copied().unwrap_or(0);
    Line { ok: s.passed && w > 0, detail: format!("{}, {w} witness annihilation checks", summary(&s)) }
}

fn c7() -> Line {
    let s = suite("eval-rep", 7, 200);
    Line { ok: s.passed, detail: format!("{} (representation, nilpotency bound, weight symmetry)", summary(&s)) }
}

fn c8() -> Line {
    let s = suite("top-rep", 8, 200);
    let uv = s.stats.get("uv_center_pairs").copied().unwrap_or(0);
    Line { ok: s.passed && uv >= 20, detail: format!("{}, {uv} pairs with a (u,v)K(r,r+s) term (need 20)", summary(&s)) }
}

fn c9() -> Line {
    let t = Instant::now();
    let f = suite("fock-hom", 9, 100);
    let el = t.elapsed();
    let d = suite("da-welldef", 9, 10);
    let central = f.stats.get("central_pairs").copied().unwrap_or(0);
    let basis = f.stats.get("basis_vectors").copied().unwrap_or(0);
    let vac = f.stats.get("vacuum_checks").copied().unwrap_or(0);
    Line {
        ok: f.passed && d.passed && central >= 10 && vac > 0 && el < Duration::from_secs(60),
        detail: format!(
            "{} on {basis} basis vectors, {central} central pairs (need 10), {vac} vacuum checks, {}, {} (limit 60 s)",
            summary(&f),
            summary(&d),
            secs(el)
        ),
    }
}

fn c10() -> Line {
    let a = verify::run("present", &Params { rank: 1, modes: 3, ..Params::default() }).unwrap();
    let b = verify::run("present", &Params { rank: 2, modes: 2, ..Params::default() }).unwrap();
    let pa = a.stats.get("perturbations").copied().unwrap_or(0);
    let pb = b.stats.get("perturbations").copied().unwrap_or(0);
    Line {
        ok: a.passed && b.passed && pa > 0 && pb > 0,
        detail: format!("sl2 modes -3..3 and sl3 modes -2..2 empty, {} sign flips detected", pa + pb),
    }
}

fn c11() -> Line {
    match (common::check_corpus(), common::check_round_trips()) {
        (Ok(n), Ok(m)) => Line { ok: n >= 20, detail: format!("{n} golden invocations byte-identical twice, {m} element documents round-trip") },
        (Err(e), _) | (_, Err(e)) => Line { ok: false, detail: e },
    }
}

fn main() {
    let criteria: [(&str, fn() -> Line); 11] = [
        ("jacobi and antisymmetry", c1),
        ("graded center dimensions", c2),
        ("n=1 Virasoro degeneration", c3),
        ("twist and phi homomorphisms", c4),
        ("lattice normalization", c5),
        ("Larsson representation", c6),
        ("evaluation modules", c7),
        ("top module actions", c8),
        ("Fock homomorphism", c9),
        ("presentation", c10),
        ("CLI determinism and round-trip", c11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let line = f();
        if !line.ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<32} {} [exact, tolerance 0] {} ({})",
            i + 1,
            name,
            if line.ok { "PASS" } else { "FAIL" },
            line.detail,
            secs(t.elapsed())
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
