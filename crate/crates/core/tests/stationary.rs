mod common;

use common::{all_zero, corpus, g, q, rank_one};
use minlap_core::connection::{
    dmodule_degrees, validate_admissible, validate_resonance_free, EigenDatum, IrregularData,
    RegularSingularity,
};
use minlap_core::stationary::PredictError;
use minlap_core::{
    build_model, predict, transform_connection, verify_involution, verify_stationary_phase,
    GaussianRational, Matrix, ParabolicConnection,
};

#[test]
fn rank_one_prediction() {
    let conn = rank_one("1", "1/2", "1/4", "2", "1/3");
    let p = predict(&conn).unwrap();
    assert_eq!(p.rank, 1);
    assert_eq!(p.regular.len(), 1);
    assert_eq!(p.regular[0].point, g("2"));
    assert_eq!(p.regular[0].exponents.len(), 1);
    assert_eq!(p.regular[0].exponents[0].value, g("-1/2"));
    assert_eq!(p.regular[0].exponents[0].weight, q("1/3"));
    assert_eq!(p.infinity.len(), 1);
    assert_eq!(p.infinity[0].point, g("1"));
    assert_eq!(p.infinity[0].multiplicity, 1);
    assert_eq!(p.infinity[0].exponents[0].value, g("1/2"));
    assert_eq!(p.infinity[0].exponents[0].weight, q("1/4"));
    assert_eq!(p.lambda[0].lambda, g("1/8"));
    assert_eq!(p.pdeg, dmodule_degrees(conn.data()).pdeg);
}

#[test]
fn zero_residues_predict_nothing() {
    let conn = all_zero(3);
    let p = predict(&conn).unwrap();
    assert_eq!(p.rank, 0);
    assert!(p.regular.is_empty() && p.infinity.is_empty());
    let t = transform_connection(&build_model(&conn).unwrap()).unwrap();
    let report = verify_stationary_phase(&p, &t);
    assert!(report.passed, "{report:?}");
    let inv = verify_involution(&conn);
    assert!(inv.passed);
    assert_eq!(inv.checks.len(), 1);
}

#[test]
fn resonant_input_is_rejected() {
    // μ^∞ = 1/3 carries the weight 1/3
    let conn = rank_one("0", "-1/3", "0", "1", "1/3");
    assert!(matches!(predict(&conn), Err(PredictError::Rejected(_))));
    let inv = verify_involution(&conn);
    assert!(!inv.passed);
    assert_eq!(inv.checks[0].name, "predict");
}

#[test]
fn prediction_over_the_corpus() {
    for (name, conn) in corpus() {
        let p = predict(&conn).unwrap();
        let expected_rank: usize = conn.regular().iter().map(|s| conn.rank() - s.zero_multiplicity()).sum();
        assert_eq!(p.rank, expected_rank, "{name}");
        for s in &p.regular {
            assert_eq!(s.exponents.len(), p.rank, "{name}");
            for e in s.exponents.iter().filter(|e| e.value.is_zero()) {
                assert_eq!(e.weight, q("0"), "{name}");
            }
        }
        assert_eq!(p.pdeg, dmodule_degrees(conn.data()).pdeg, "{name}");
        let dual = p.dual_data();
        assert!(validate_resonance_free(&dual).passed(), "{name}");
        assert!(validate_admissible(&dual).passed(), "{name}");
        for l in &p.lambda {
            assert_eq!(l.lambda.is_zero(), l.mu.is_zero(), "{name}");
        }
    }
}

#[test]
fn stationary_phase_over_the_corpus() {
    for (name, conn) in corpus() {
        let p = predict(&conn).unwrap();
        let t = transform_connection(&build_model(&conn).unwrap()).unwrap();
        let report = verify_stationary_phase(&p, &t);
        assert!(report.passed, "{name}: {report:?}");
        assert_eq!(report.convention.as_deref(), Some("residue = +μ^∞ mod Z"), "{name}");
        assert!(report.residues_exact, "{name}");
    }
}

#[test]
fn stationary_phase_detects_a_wrong_prediction() {
    let conn = common::fixture("rank2_two_points");
    let mut p = predict(&conn).unwrap();
    let t = transform_connection(&build_model(&conn).unwrap()).unwrap();
    p.infinity[0].exponents[0].value = g("1/7");
    p.regular[0].point = g("5");
    let report = verify_stationary_phase(&p, &t);
    assert!(!report.passed);
    let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    assert!(failed.contains(&"pole_locations"));
    assert!(failed.contains(&"residue_at_infinity"));
}

#[test]
fn involution_over_the_corpus() {
    for (name, conn) in corpus() {
        let report = verify_involution(&conn);
        assert!(report.passed, "{name}: {report:?}");
        assert!(report.checks.iter().any(|c| c.name == "pdeg"), "{name}");
    }
}

#[test]
fn collisions_across_blocks_are_reported() {
    let e = |k: usize| -> Vec<GaussianRational> { (0..2).map(|i| if i == k { g("1") } else { g("0") }).collect() };
    let point = |p: &str, k: usize, mu: &str| RegularSingularity {
        point: g(p),
        residue: {
            let mut d = vec![g("0"), g("0")];
            d[k] = g(mu);
            Matrix::diagonal(&d)
        },
        eigen: vec![
            EigenDatum { value: if k == 0 { g(mu) } else { g("0") }, weight: q("0"), vector: e(0) },
            EigenDatum { value: if k == 1 { g(mu) } else { g("0") }, weight: q("0"), vector: e(1) },
        ],
    };
    let conn = ParabolicConnection::new(
        2,
        vec![point("0", 0, "-1/3"), point("1", 1, "-4/3")],
        IrregularData {
            leading: vec![g("1"), g("2")],
            blocks: vec![1, 1],
            residue: vec![g("1/3"), g("4/3")],
            weights: vec![q("0"), q("0")],
        },
    )
    .unwrap();
    let p = predict(&conn).unwrap();
    assert_eq!(p.collisions.len(), 1);
    assert_eq!(p.collisions[0].blocks, (0, 1));
}
