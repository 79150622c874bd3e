mod common;

use common::{corpus, fixture, g, q, rank_one};
use minlap_core::connection::{
    dmodule_degrees, extend_filtration, parabolic_degree, parse_connection, slope_of_subdata,
    validate_admissible, validate_resonance_free, Clause, ConnectionDocument, ConnectionError,
    DocumentError, EigenDatum, Exponent, FiltrationError, IrregularBlock, IrregularData,
    LocalExponents, RegularSingularity, SingularityData, SubDatum, SubDatumError,
};
use minlap_core::{GaussianRational, Matrix, ParabolicConnection};
use proptest::prelude::*;

fn exps(list: &[(&str, &str)]) -> Vec<Exponent> {
    list.iter().map(|(v, w)| Exponent::new(g(v), q(w))).collect()
}

fn one_point(finite: &[(&str, &str)], infinity: &[(&str, &str)]) -> SingularityData {
    SingularityData {
        rank: finite.len(),
        regular: vec![LocalExponents {
            point: g("0"),
            exponents: exps(finite),
        }],
        irregular: vec![IrregularBlock {
            leading: g("1"),
            exponents: exps(infinity),
        }],
    }
}

fn clauses(data: &SingularityData) -> Vec<Clause> {
    let mut out: Vec<Clause> = validate_resonance_free(data)
        .violations
        .iter()
        .map(|v| v.clause)
        .collect();
    out.sort_by_key(|c| format!("{c:?}"));
    out
}

#[test]
fn resonance_examples() {
    assert!(validate_resonance_free(&one_point(&[("1/2", "0")], &[("1/3", "0")])).passed());
    assert_eq!(
        clauses(&one_point(&[("1", "0")], &[("1/3", "0")])),
        vec![Clause::IntegralRealPart]
    );
    let report = validate_resonance_free(&one_point(&[("1/5", "0"), ("1/7", "0")], &[("1/2", "0"), ("3/2", "0")]));
    assert!(report.has(Clause::IntegerDifference));
    assert_eq!(report.violations.len(), 1);
    assert!(validate_resonance_free(&one_point(&[("1/4", "1/4")], &[("1/3", "0")]))
        .has(Clause::EigenvalueEqualsWeight));
    // integral imaginary part alone is harmless
    assert!(validate_resonance_free(&one_point(&[("1/2+i", "0")], &[("-1/2-i", "0")])).passed());
}

#[test]
fn zero_eigenvalues_are_exempt_at_finite_points() {
    let data = one_point(&[("0", "0"), ("1/3", "0")], &[("1/4", "0"), ("1/5", "0")]);
    assert!(validate_resonance_free(&data).passed());
    assert!(validate_admissible(&data).passed());
    let bad = one_point(&[("0", "1/4"), ("1/3", "0")], &[("1/4", "0"), ("1/5", "0")]);
    assert!(validate_admissible(&bad).has(Clause::WeightedKernel));
    assert!(validate_admissible(&one_point(&[("1/3", "0")], &[("1/4", "0")])).passed());
}

#[test]
fn parabolic_degree_examples() {
    let all_zero = one_point(&[("1/2", "0"), ("1/3", "0")], &[("1/5", "0"), ("1/7", "0")]);
    assert_eq!(parabolic_degree(&all_zero), q("0"));
    let data = one_point(&[("1/2", "1/3"), ("1/3", "2/3")], &[("1/5", "0"), ("1/7", "0")]);
    assert_eq!(parabolic_degree(&data), q("1"));
    let two = SingularityData {
        rank: 2,
        regular: vec![
            LocalExponents { point: g("0"), exponents: exps(&[("0", "0"), ("1/3", "1/4")]) },
            LocalExponents { point: g("1"), exponents: exps(&[("0", "0"), ("1/5", "1/4")]) },
        ],
        irregular: vec![IrregularBlock { leading: g("1"), exponents: exps(&[("1/7", "1/2"), ("1/9", "0")]) }],
    };
    assert_eq!(parabolic_degree(&two), q("1"));
}

#[test]
fn dmodule_degree_examples() {
    let d = dmodule_degrees(rank_one("0", "1/2", "1/4", "1", "0").data());
    assert_eq!(d.deg, g("0"));
    assert_eq!(d.pdeg, g("1/4"));
    assert_eq!(d.slope, Some(g("1/4")));

    let zeros = one_point(&[("0", "0"), ("0", "0")], &[("0", "0"), ("0", "0")]);
    let d = dmodule_degrees(&zeros);
    assert_eq!((d.deg, d.pdeg, d.slope), (g("0"), g("0"), Some(g("0"))));

    assert_eq!(dmodule_degrees(&SingularityData::empty()).slope, None);
}

#[test]
fn degree_over_the_corpus_is_the_weight_sum() {
    // the residue-sum rule makes deg vanish for every accepted connection
    for (name, conn) in corpus() {
        let d = dmodule_degrees(conn.data());
        assert_eq!(d.deg, g("0"), "{name}");
        assert_eq!(d.pdeg, GaussianRational::from_real(parabolic_degree(conn.data())), "{name}");
    }
}

#[test]
fn filtration_examples() {
    assert_eq!(extend_filtration(&g("1/2"), &g("1/2"), &q("1/4"), 0).unwrap(), (g("1/2"), q("1/4")));
    assert_eq!(extend_filtration(&g("5/2"), &g("1/2"), &q("1/4"), 2).unwrap(), (g("5/2"), q("9/4")));
    assert_eq!(extend_filtration(&g("-4/3"), &g("-1/3"), &q("0"), -1).unwrap(), (g("-4/3"), q("-1")));
    assert!(matches!(
        extend_filtration(&g("1/3"), &g("1/2"), &q("0"), 0),
        Err(FiltrationError::NotIntegralShift { .. })
    ));
    assert!(matches!(
        extend_filtration(&g("3/2"), &g("1/2"), &q("0"), 2),
        Err(FiltrationError::ShiftMismatch { .. })
    ));
}

#[test]
fn slope_of_whole_space_is_slope() {
    for (name, conn) in corpus() {
        let r = conn.rank();
        let spanning = (0..r)
            .map(|k| (0..r).map(|i| if i == k { g("1") } else { g("0") }).collect())
            .collect();
        let s = slope_of_subdata(&conn, &SubDatum { spanning }).unwrap();
        assert_eq!(Some(s), dmodule_degrees(conn.data()).slope, "{name}");
    }
}

fn diagonal_rank_two() -> ParabolicConnection {
    let e = |k: usize| -> Vec<GaussianRational> { (0..2).map(|i| if i == k { g("1") } else { g("0") }).collect() };
    ParabolicConnection::new(
        2,
        vec![RegularSingularity {
            point: g("0"),
            residue: Matrix::diagonal(&[g("1/2"), g("1/3")]),
            eigen: vec![
                EigenDatum { value: g("1/2"), weight: q("1/4"), vector: e(0) },
                EigenDatum { value: g("1/3"), weight: q("0"), vector: e(1) },
            ],
        }],
        IrregularData {
            leading: vec![g("1"), g("2")],
            blocks: vec![1, 1],
            residue: vec![g("-1/2"), g("-1/3")],
            weights: vec![q("0"), q("0")],
        },
    )
    .unwrap()
}

#[test]
fn slope_of_a_line() {
    let conn = diagonal_rank_two();
    let line = SubDatum { spanning: vec![vec![g("1"), g("0")]] };
    assert_eq!(slope_of_subdata(&conn, &line).unwrap(), g("1/4"));
    let other = SubDatum { spanning: vec![vec![g("0"), g("3")]] };
    assert_eq!(slope_of_subdata(&conn, &other).unwrap(), g("0"));
}

#[test]
fn slope_rejects_degenerate_subdata() {
    let conn = diagonal_rank_two();
    assert_eq!(
        slope_of_subdata(&conn, &SubDatum { spanning: vec![] }),
        Err(SubDatumError::ZeroSubspace)
    );
    assert_eq!(
        slope_of_subdata(&conn, &SubDatum { spanning: vec![vec![g("0"), g("0")]] }),
        Err(SubDatumError::ZeroSubspace)
    );
    assert!(matches!(
        slope_of_subdata(&conn, &SubDatum { spanning: vec![vec![g("1"), g("1")]] }),
        Err(SubDatumError::NotEigenSpanned { .. })
    ));
    assert!(matches!(
        slope_of_subdata(&conn, &SubDatum { spanning: vec![vec![g("1")]] }),
        Err(SubDatumError::RankMismatch { .. })
    ));
}

#[test]
fn construction_enforces_compatibility() {
    let r = RegularSingularity {
        point: g("0"),
        residue: Matrix::diagonal(&[g("1/2")]),
        eigen: vec![EigenDatum { value: g("1/2"), weight: q("0"), vector: vec![g("1")] }],
    };
    let irregular = |c: &str| IrregularData {
        leading: vec![g("1")],
        blocks: vec![1],
        residue: vec![g(c)],
        weights: vec![q("0")],
    };
    assert!(ParabolicConnection::new(1, vec![r.clone()], irregular("-1/2")).is_ok());
    assert!(matches!(
        ParabolicConnection::new(1, vec![r.clone()], irregular("1/3")),
        Err(ConnectionError::Compatibility { .. })
    ));
    let mut wrong = r.clone();
    wrong.eigen[0].vector = vec![g("0")];
    assert!(ParabolicConnection::new(1, vec![wrong], irregular("-1/2")).is_err());
    let mut heavy = r;
    heavy.eigen[0].weight = q("1");
    assert!(matches!(
        ParabolicConnection::new(1, vec![heavy], irregular("-1/2")),
        Err(ConnectionError::WeightOutOfRange { .. })
    ));
}

#[test]
fn documents_round_trip() {
    for (name, conn) in corpus() {
        let text = ConnectionDocument::from_connection(&conn).to_json();
        assert_eq!(parse_connection(&text).unwrap(), conn, "{name}");
    }
}

#[test]
fn documents_reject_decimals_and_bad_json() {
    let text = std::fs::read_to_string(common::corpus_dir().join("rank1.json")).unwrap();
    let decimal = text.replace("\"1/4\"", "\"0.25\"");
    match parse_connection(&decimal) {
        Err(DocumentError::Field { path, .. }) => assert!(path.contains("weight"), "{path}"),
        other => panic!("expected a field error, got {other:?}"),
    }
    assert!(matches!(
        parse_connection("{\"rank\": 1,"),
        Err(DocumentError::Syntax { .. })
    ));
}

fn permuted(conn: &ParabolicConnection, order: &[usize]) -> ParabolicConnection {
    let regular = order.iter().map(|&j| conn.regular()[j].clone()).collect();
    ParabolicConnection::new(conn.rank(), regular, conn.irregular().clone()).unwrap()
}

/// Conjugation by `diag(d)`, which preserves the diagonal `A` and `C`.
fn conjugated(conn: &ParabolicConnection, d: &[GaussianRational]) -> ParabolicConnection {
    let p = Matrix::diagonal(d);
    let p_inv = p.inverse().unwrap().unwrap();
    let regular = conn
        .regular()
        .iter()
        .map(|s| RegularSingularity {
            point: s.point.clone(),
            residue: p.checked_mul(&s.residue).unwrap().checked_mul(&p_inv).unwrap(),
            eigen: s
                .eigen
                .iter()
                .map(|e| EigenDatum {
                    vector: p.mul_vec(&e.vector).unwrap(),
                    ..e.clone()
                })
                .collect(),
        })
        .collect();
    ParabolicConnection::new(conn.rank(), regular, conn.irregular().clone()).unwrap()
}

fn fixture_names() -> Vec<String> {
    corpus().into_iter().map(|(n, _)| n).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn filtration_transport_is_a_group_action(
        (a, b, c, d) in (-9i64..=9, 1i64..=7, -9i64..=9, 1i64..=7),
        w in 0i64..6,
        n in -4i64..=4,
        m in -4i64..=4,
    ) {
        let mu = GaussianRational::from_parts(a, b, c, d);
        let beta = q(&format!("{w}/6"));
        let shift = |k: i64| &mu + &GaussianRational::from_integer(k);
        let (a1, b1) = extend_filtration(&shift(n), &mu, &beta, n).unwrap();
        let (a2, b2) = extend_filtration(&shift(n + m), &a1, &b1, m).unwrap();
        let direct = extend_filtration(&shift(n + m), &mu, &beta, n + m).unwrap();
        prop_assert_eq!((a2, b2), direct);
        let back = extend_filtration(&mu, &a1, &b1, -n).unwrap();
        prop_assert_eq!(back, (mu.clone(), beta.clone()));
    }

    #[test]
    fn resonance_is_invariant_under_relabelling(
        idx in 0usize..11,
        seed in any::<u64>(),
        scale in prop::collection::vec((1i64..=5, -3i64..=3), 6),
    ) {
        let names = fixture_names();
        let conn = fixture(&names[idx % names.len()]);
        let mut order: Vec<usize> = (0..conn.regular().len()).collect();
        let mut s = seed;
        for i in (1..order.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let base = clauses(conn.data());
        prop_assert_eq!(clauses(permuted(&conn, &order).data()), base.clone());
        let d: Vec<GaussianRational> = scale
            .iter()
            .take(conn.rank())
            .map(|(a, b)| GaussianRational::from_parts(*a, 1, *b, 1))
            .collect();
        let c = conjugated(&conn, &d);
        prop_assert_eq!(clauses(c.data()), base.clone());
        prop_assert_eq!(validate_admissible(c.data()).passed(), validate_admissible(conn.data()).passed());
    }
}
