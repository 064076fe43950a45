#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use serde::Deserialize;

#[derive(Deserialize)]
pub struct Case {
    pub name: String,
    pub args: Vec<String>,
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn cases() -> Vec<Case> {
    let text = std::fs::read_to_string(golden_dir().join("cases.json")).expect("cases.json");
    serde_json::from_str(&text).expect("valid manifest")
}

/// Exit code and stdout of one CLI invocation, run inside the golden directory.
pub fn run_cli(args: &[String]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_toroidal"))
        .args(args)
        .current_dir(golden_dir())
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf8"),
        String::from_utf8(out.stderr).expect("utf8"),
    )
}

/// Compares every case against `expected/`, twice for determinism. With
/// `TOROIDAL_BLESS=1` the expected files are rewritten instead.
pub fn check_corpus() -> Result<usize, String> {
    let bless = std::env::var("TOROIDAL_BLESS").is_ok_and(|v| v == "1");
    let dir = golden_dir().join("expected");
    let cases = cases();
    for case in &cases {
        let (code, stdout, stderr) = run_cli(&case.args);
        let (code2, stdout2, _) = run_cli(&case.args);
        if code != code2 || stdout != stdout2 {
            return Err(format!("{}: output differs between runs", case.name));
        }
        if code != 0 && stderr.is_empty() {
            return Err(format!("{}: exit {code} without a message", case.name));
        }
        let expected = format!("exit {code}\n{stdout}");
        let path = dir.join(format!("{}.out", case.name));
        if bless {
            std::fs::write(&path, &expected).expect("write expected");
            continue;
        }
        let want = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", case.name))?;
        if want != expected {
            return Err(format!("{}: output differs from {}\n--- got ---\n{expected}", case.name, path.display()));
        }
    }
    Ok(cases.len())
}

/// Every element document in the corpus survives print . parse . print.
pub fn check_round_trips() -> Result<usize, String> {
    let mut count = 0;
    for dir in ["inputs", "expected"] {
        let mut paths: Vec<_> = std::fs::read_dir(golden_dir().join(dir)).expect("dir").map(|e| e.unwrap().path()).collect();
        paths.sort();
        for p in paths {
            let raw = std::fs::read_to_string(&p).unwrap();
            let text = if dir == "expected" { raw.split_once('\n').map(|x| x.1.to_string()).unwrap_or_default() } else { raw };
            let Ok(v) = serde_json::from_str::<serde_json::Value>(&text) else { continue };
            let deliberately_bad = p.file_name().is_some_and(|f| f.to_string_lossy().starts_with("bad_"));
            if deliberately_bad || v.get("algebra").is_none() || v.get("terms").is_none() {
                continue;
            }
            let (alg, x) = toroidal::doc::parse_element(&text).map_err(|e| format!("{}: {e}", p.display()))?;
            let once = toroidal::doc::print_element(&alg, &x);
            let (alg2, y) = toroidal::doc::parse_element(&once).map_err(|e| format!("{}: {e}", p.display()))?;
            if toroidal::doc::print_element(&alg2, &y) != once || y != x {
                return Err(format!("{}: round trip changed the document", p.display()));
            }
            if dir == "expected" && once != text {
                return Err(format!("{}: printed output is not in canonical print form", p.display()));
            }
            count += 1;
        }
    }
    Ok(count)
}
