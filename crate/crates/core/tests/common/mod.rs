#![allow(dead_code)]

use std::path::PathBuf;

use minlap_core::connection::parse_connection;
use minlap_core::{GaussianRational, ParabolicConnection};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../cli/corpus")
}

/// Every corpus fixture, sorted by name.
pub fn corpus() -> Vec<(String, ParabolicConnection)> {
    let mut entries: Vec<_> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    entries.sort();
    entries
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            let text = std::fs::read_to_string(&p).unwrap();
            let conn = parse_connection(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
            (name, conn)
        })
        .collect()
}

pub fn fixture(name: &str) -> ParabolicConnection {
    let text = std::fs::read_to_string(corpus_dir().join(format!("{name}.json"))).unwrap();
    parse_connection(&text).unwrap()
}

pub fn g(s: &str) -> GaussianRational {
    s.parse().unwrap()
}

pub fn q(s: &str) -> num_rational::BigRational {
    let g: GaussianRational = s.parse().unwrap();
    assert!(g.is_real());
    g.re().clone()
}

/// `d + (ξ₁ + μ/(x - p)) dx` with weights `β` at `p` and `β^∞` at infinity.
pub fn rank_one(p: &str, mu: &str, beta: &str, xi: &str, beta_inf: &str) -> ParabolicConnection {
    use minlap_core::connection::{EigenDatum, IrregularData, RegularSingularity};
    use minlap_core::Matrix;
    ParabolicConnection::new(
        1,
        vec![RegularSingularity {
            point: g(p),
            residue: Matrix::diagonal(&[g(mu)]),
            eigen: vec![EigenDatum {
                value: g(mu),
                weight: q(beta),
                vector: vec![g("1")],
            }],
        }],
        IrregularData {
            leading: vec![g(xi)],
            blocks: vec![1],
            residue: vec![-g(mu)],
            weights: vec![q(beta_inf)],
        },
    )
    .unwrap()
}

/// Rank `r`, one singular point with zero residue.
pub fn all_zero(r: usize) -> ParabolicConnection {
    use minlap_core::connection::{EigenDatum, IrregularData, RegularSingularity};
    use minlap_core::Matrix;
    ParabolicConnection::new(
        r,
        vec![RegularSingularity {
            point: g("0"),
            residue: Matrix::zeros(r, r),
            eigen: (0..r)
                .map(|k| {
                    let mut v = vec![g("0"); r];
                    v[k] = g("1");
                    EigenDatum {
                        value: g("0"),
                        weight: q("0"),
                        vector: v,
                    }
                })
                .collect(),
        }],
        IrregularData {
            leading: (0..r).map(|k| GaussianRational::from_integer(k as i64)).collect(),
            blocks: vec![1; r],
            residue: vec![g("0"); r],
            weights: vec![q("0"); r],
        },
    )
    .unwrap()
}
