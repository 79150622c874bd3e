//! Golden-report regression checking over a directory of fixtures.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::report::{error_report, run_document, Mode, Outcome};

pub const GOLDEN_DIR: &str = "golden";

/// `*.json` files directly inside `dir`, sorted by file name.
pub fn fixtures(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut out: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    out.sort();
    Ok(out)
}

pub fn display_name(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// The golden report text for one fixture.
pub fn golden_text(path: &Path) -> String {
    let name = display_name(path);
    match fs::read_to_string(path) {
        Ok(text) => match run_document(&name, &text, Mode::golden()) {
            Ok((report, _)) => report.to_json(),
            Err(message) => error_report(&name, &text, message).to_json(),
        },
        Err(e) => error_report(&name, "", format!("{name}: {e}")).to_json(),
    }
}

/// First line where `expected` and `actual` differ, 1-based.
fn first_difference<'a>(expected: &'a str, actual: &'a str) -> Option<(usize, &'a str, &'a str)> {
    let mut e = expected.lines();
    let mut a = actual.lines();
    let mut n = 0;
    loop {
        n += 1;
        match (e.next(), a.next()) {
            (None, None) => return None,
            (x, y) if x == y => continue,
            (x, y) => return Some((n, x.unwrap_or("<end of file>"), y.unwrap_or("<end of file>"))),
        }
    }
}

/// Top-level report fields whose values differ.
fn differing_sections(expected: &str, actual: &str) -> Vec<String> {
    let parse = |s: &str| serde_json::from_str::<serde_json::Map<String, serde_json::Value>>(s).ok();
    let (Some(e), Some(a)) = (parse(expected), parse(actual)) else {
        return Vec::new();
    };
    let mut out: Vec<String> = Vec::new();
    for k in e.keys().chain(a.keys()) {
        if e.get(k) != a.get(k) && !out.contains(k) {
            out.push(k.clone());
        }
    }
    out
}

/// Recomputes every fixture's report and compares it byte for byte with
/// `dir/golden/NAME.json`, or rewrites the goldens with `bless`.
pub fn corpus_check(dir: &Path, bless: bool, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let paths = match fixtures(dir) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot read {}: {e}", dir.display());
            return Outcome::Input;
        }
    };
    if paths.is_empty() {
        let _ = writeln!(err, "warning: no fixtures in {}", dir.display());
        return Outcome::Pass;
    }
    let reports: Vec<(PathBuf, String)> = paths
        .par_iter()
        .map(|p| (p.clone(), golden_text(p)))
        .collect();

    let golden_dir = dir.join(GOLDEN_DIR);
    if bless {
        if let Err(e) = fs::create_dir_all(&golden_dir) {
            let _ = writeln!(err, "error: cannot create {}: {e}", golden_dir.display());
            return Outcome::Input;
        }
        for (path, text) in &reports {
            let target = golden_dir.join(display_name(path));
            if let Err(e) = fs::write(&target, text) {
                let _ = writeln!(err, "error: cannot write {}: {e}", target.display());
                return Outcome::Input;
            }
        }
        let _ = writeln!(out, "blessed {} golden report(s)", reports.len());
        return Outcome::Pass;
    }

    let mut differing = 0;
    for (path, actual) in &reports {
        let name = display_name(path);
        let golden = golden_dir.join(&name);
        let Ok(expected) = fs::read_to_string(&golden) else {
            differing += 1;
            let _ = writeln!(err, "{name}: no golden report at {}", golden.display());
            continue;
        };
        if let Some((line, e, a)) = first_difference(&expected, actual) {
            differing += 1;
            let _ = writeln!(err, "{name}: first difference at line {line}");
            let _ = writeln!(err, "  golden:   {}", e.trim());
            let _ = writeln!(err, "  computed: {}", a.trim());
            let sections = differing_sections(&expected, actual);
            if !sections.is_empty() {
                let _ = writeln!(err, "  differing sections: {}", sections.join(", "));
            }
        }
    }
    let _ = writeln!(
        out,
        "corpus-check: {} fixture(s), {} differ",
        reports.len(),
        differing
    );
    if differing == 0 {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}
