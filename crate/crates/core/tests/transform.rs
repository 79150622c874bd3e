mod common;

use common::{all_zero, corpus, fixture, g, q, rank_one};
use minlap_core::transform::{
    fiber_cokernel, harvest, inverse_transform, reduce_section, verify_certificate, FiberError,
    GlobalSectionModel, MeromorphicSection, ReduceError,
};
use minlap_core::{
    build_model, transform_connection, Field, GaussianRational, Matrix, RationalFunction,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn xi() -> RationalFunction {
    RationalFunction::variable()
}

fn constant_section(model: &GlobalSectionModel, poly: &[(usize, Vec<GaussianRational>)], poles: &[(usize, usize, Vec<GaussianRational>)]) -> MeromorphicSection<RationalFunction> {
    let n = model.connection().regular().len();
    let mut s = MeromorphicSection::zero(model.rank(), n);
    let lift = |v: &[GaussianRational]| v.iter().map(RationalFunction::from_gaussian).collect::<Vec<_>>();
    for (k, v) in poly {
        s.add_poly(*k, &lift(v));
    }
    for (j, m, v) in poles {
        s.add_pole(*j, *m, &lift(v));
    }
    s
}

fn random_gr(rng: &mut ChaCha8Rng) -> GaussianRational {
    GaussianRational::from_parts(rng.gen_range(-5..=5), rng.gen_range(1..=4), rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

fn random_vec(rng: &mut ChaCha8Rng, r: usize) -> Vec<GaussianRational> {
    (0..r).map(|_| random_gr(rng)).collect()
}

/// Polynomial part of degree `< degree` and poles of order `≤ order` with
/// random coefficients.
fn random_meromorphic(
    model: &GlobalSectionModel,
    rng: &mut ChaCha8Rng,
    degree: usize,
    order: usize,
) -> MeromorphicSection<GaussianRational> {
    let r = model.rank();
    let n = model.connection().regular().len();
    let mut t = MeromorphicSection::zero(r, n);
    for k in 0..rng.gen_range(0..=degree) {
        t.add_poly(k, &random_vec(rng, r));
    }
    for j in 0..n {
        for m in 1..=rng.gen_range(0..=order) {
            t.add_pole(j, m, &random_vec(rng, r));
        }
    }
    t
}

#[test]
fn rank_one_fixtures_have_the_closed_form() {
    for name in ["rank1", "rank1_gaussian"] {
        let conn = fixture(name);
        let s = &conn.regular()[0];
        let (p, mu) = (s.point.clone(), s.eigen[0].value.clone());
        let xi1 = conn.irregular().leading[0].clone();
        let t = transform_connection(&build_model(&conn).unwrap()).unwrap();
        let expected = &RationalFunction::constant(p) + &RationalFunction::simple_pole(&xi1).scale(&mu);
        assert_eq!(t.x_action(), &Matrix::diagonal(&[expected]), "{name}");
    }
    let t = transform_connection(&build_model(&fixture("rank1")).unwrap()).unwrap();
    assert_eq!(t.entry_strings(), vec![vec!["1 + (1/2)/(xi - 2)".to_string()]]);
}

#[test]
fn rank_one_reductions_by_hand() {
    // d + (ξ₁ + μ/(x - p)) dx with ξ₁ = 2, μ = 1/2, p = 1
    let model = build_model(&fixture("rank1")).unwrap();
    let one = vec![g("1")];
    let dx = constant_section(&model, &[(0, one.clone())], &[]);
    let red = reduce_section(&model, &dx, &xi()).unwrap();
    assert_eq!(red.coordinates, vec![RationalFunction::simple_pole(&g("2")).scale(&g("1/2"))]);
    assert!(verify_certificate(&model, &dx, &red, &xi()));

    // 1/(x - p)^2 dx  ↦  (ξ - ξ₁)/(μ - 1)
    let double = constant_section(&model, &[], &[(0, 2, one)]);
    let red = reduce_section(&model, &double, &xi()).unwrap();
    let expected = (&xi() - &RationalFunction::constant(g("2"))).scale(&g("-2"));
    assert_eq!(red.coordinates, vec![expected]);
    assert!(verify_certificate(&model, &double, &red, &xi()));
}

#[test]
fn sections_outside_the_minimal_extension_are_rejected() {
    // the residue at p = 0 has kernel spanned by (3, -1)
    let model = build_model(&fixture("rank2_two_points")).unwrap();
    let s = constant_section(&model, &[], &[(0, 1, vec![g("3"), g("-1")])]);
    assert_eq!(
        reduce_section(&model, &s, &xi()).unwrap_err(),
        ReduceError::NotInMinimalExtension { j: 0 }
    );
}

#[test]
fn numeric_reduction_fails_only_on_the_spectrum_of_a() {
    let model = build_model(&fixture("rank2_two_points")).unwrap();
    let s = constant_section(&model, &[(1, vec![g("1"), g("2")])], &[]).map(|f| f.as_constant().unwrap());
    assert_eq!(reduce_section(&model, &s, &g("1")).unwrap_err(), ReduceError::LeadingSingular);
    let red = reduce_section(&model, &s, &g("1/3")).unwrap();
    assert!(verify_certificate(&model, &s, &red, &g("1/3")));
}

#[test]
fn transform_shape_over_the_corpus() {
    for (name, conn) in corpus() {
        let model = build_model(&conn).unwrap();
        assert_eq!(model.dimension(), conn.rank() + conn.transform_rank(), "{name}");
        let t = transform_connection(&model).unwrap();
        assert_eq!(t.rank(), conn.transform_rank(), "{name}");
        assert!(t.pole_confinement_violations().is_empty(), "{name}");

        let formal = t.formal_data_at_infinity();
        assert_eq!(formal.leading, Matrix::diagonal(t.label_points()), "{name}");
        let mut mus: Vec<GaussianRational> = t.label_exponents().iter().map(|e| e.value.clone()).collect();
        mus.sort();
        let char_poly = mus.iter().fold(minlap_core::Polynomial::one(), |acc, m| {
            &acc * &minlap_core::Polynomial::linear_root(m)
        });
        assert_eq!(formal.residue_block_diagonal().char_poly().unwrap(), char_poly, "{name}");
    }
}

#[test]
fn residues_at_the_dual_poles_carry_the_block_exponents() {
    for (name, conn) in corpus() {
        let t = transform_connection(&build_model(&conn).unwrap()).unwrap();
        for pole in t.poles() {
            let data = t.residue_data_at(&pole.point);
            let mut nonzero: Vec<GaussianRational> = data
                .eigenvalues
                .expect("split")
                .into_iter()
                .filter(|v| !v.is_zero())
                .collect();
            nonzero.sort();
            let mut expected: Vec<GaussianRational> =
                pole.source_exponents.iter().map(|e| e.value.clone()).collect();
            expected.sort();
            assert_eq!(nonzero, expected, "{name} at {}", pole.point);
        }
    }
}

#[test]
fn graded_steps_are_invertible() {
    for (name, conn) in corpus() {
        for s in conn.regular() {
            for m in 1..=5 {
                let shifted = s
                    .residue
                    .checked_sub(&Matrix::identity(conn.rank()).scale(&GaussianRational::from_integer(m)))
                    .unwrap();
                assert!(!shifted.det().unwrap().is_zero(), "{name} at {} with m = {m}", s.point);
            }
        }
    }
}

#[test]
fn specialization_matches_the_fibre() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, conn) in corpus() {
        let model = build_model(&conn).unwrap();
        let t = transform_connection(&model).unwrap();
        for _ in 0..3 {
            let xi0 = random_gr(&mut rng);
            let Some(x) = t.specialize(&xi0) else { continue };
            let fibre = fiber_cokernel(&model, &xi0).unwrap();
            assert_eq!(fibre.x_action(), x, "{name} at {xi0}");
        }
    }
}

#[test]
fn fibre_refuses_spectral_points() {
    let model = build_model(&fixture("rank1")).unwrap();
    assert!(matches!(fiber_cokernel(&model, &g("2")), Err(FiberError::SpectralPoint(_))));
    assert_eq!(fiber_cokernel(&model, &g("3")).unwrap().dimension(), 1);
}

#[test]
fn zero_residues_give_the_empty_transform() {
    let conn = all_zero(2);
    let model = build_model(&conn).unwrap();
    assert_eq!(model.dimension(), 2);
    let t = transform_connection(&model).unwrap();
    assert_eq!(t.rank(), 0);
    assert!(harvest(&t).is_err());
}

#[test]
fn rank_one_round_trip() {
    let conn = rank_one("1/2", "1/3", "1/5", "-1+i", "1/7");
    let t = transform_connection(&build_model(&conn).unwrap()).unwrap();
    let dual = harvest(&t).unwrap();
    assert_eq!(dual.rank(), 1);
    assert_eq!(dual.regular()[0].point, g("-1+i"));
    assert_eq!(dual.regular()[0].eigen[0].value, g("-1/3"));
    assert_eq!(dual.regular()[0].eigen[0].weight, q("1/7"));
    assert_eq!(dual.irregular().leading, vec![g("-1/2")]);
    assert_eq!(dual.irregular().residue, vec![g("1/3")]);
    assert_eq!(dual.irregular().weights, vec![q("1/5")]);

    let back = harvest(&inverse_transform(&dual).unwrap()).unwrap();
    assert_eq!(back.data(), conn.data());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_one_closed_form(
        p in (-6i64..=6, -6i64..=6),
        mu in (1i64..=11, -3i64..=3),
        xi1 in (-6i64..=6, -6i64..=6),
        beta in 0i64..4,
        beta_inf in 0i64..4,
    ) {
        prop_assume!(p != xi1);
        let point = GaussianRational::from_parts(p.0, 2, p.1, 3);
        let m = GaussianRational::from_parts(mu.0, 12, mu.1, 1);
        prop_assume!(!m.re_is_integer());
        let xi_1 = GaussianRational::from_parts(xi1.0, 1, xi1.1, 2);
        let conn = rank_one(&point.to_string(), &m.to_string(), &format!("{beta}/5"), &xi_1.to_string(), &format!("{beta_inf}/7"));
        let t = transform_connection(&build_model(&conn).unwrap()).unwrap();
        let expected = &RationalFunction::constant(point) + &RationalFunction::simple_pole(&xi_1).scale(&m);
        prop_assert_eq!(t.x_action().get(0, 0), &expected);
    }

    #[test]
    fn image_of_nabla_reduces_to_zero(idx in 0usize..11, seed in any::<u64>()) {
        let all = corpus();
        let (name, conn) = &all[idx % all.len()];
        let model = build_model(conn).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_meromorphic(&model, &mut rng, 1, 2).map(RationalFunction::from_gaussian);
        let s = model.apply_nabla(&t, &xi());
        let red = reduce_section(&model, &s, &xi()).unwrap();
        prop_assert!(red.coordinates.iter().all(|c| c.is_zero()), "{}", name);
        prop_assert!(verify_certificate(&model, &s, &red, &xi()));
    }

    #[test]
    fn reduction_is_linear_and_fixes_the_basis(idx in 0usize..11, seed in any::<u64>()) {
        let all = corpus();
        let (name, conn) = &all[idx % all.len()];
        let model = build_model(conn).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = model.rank();
        let coords: Vec<RationalFunction> = (0..model.labels().len())
            .map(|_| RationalFunction::from_gaussian(&random_gr(&mut rng)))
            .collect();
        let basis = model.basis_section(&coords);
        prop_assert_eq!(&reduce_section(&model, &basis, &xi()).unwrap().coordinates, &coords, "{}", name);

        let mut poly = MeromorphicSection::zero(r, conn.regular().len());
        poly.add_poly(0, &random_vec(&mut rng, r));
        let poly = poly.map(RationalFunction::from_gaussian);
        let a = reduce_section(&model, &poly, &xi()).unwrap();
        let both = reduce_section(&model, &poly.add(&basis), &xi()).unwrap();
        let sum: Vec<RationalFunction> = a.coordinates.iter().zip(&coords).map(|(x, y)| x + y).collect();
        prop_assert_eq!(both.coordinates, sum);
        prop_assert!(verify_certificate(&model, &poly, &a, &xi()));
    }

    #[test]
    fn numeric_reduction_certificates(idx in 0usize..11, seed in any::<u64>()) {
        let all = corpus();
        let (name, conn) = &all[idx % all.len()];
        let model = build_model(conn).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let xi0 = random_gr(&mut rng);
        prop_assume!(!conn.irregular().leading.contains(&xi0));
        let t = random_meromorphic(&model, &mut rng, 3, 3);
        let coords: Vec<GaussianRational> = (0..model.labels().len()).map(|_| random_gr(&mut rng)).collect();
        let mut poly = MeromorphicSection::zero(model.rank(), conn.regular().len());
        for k in 0..rng.gen_range(0..4) {
            poly.add_poly(k, &random_vec(&mut rng, model.rank()));
        }
        let s = model.apply_nabla(&t, &xi0).add(&model.basis_section(&coords)).add(&poly);
        let red = reduce_section(&model, &s, &xi0).unwrap();
        prop_assert!(verify_certificate(&model, &s, &red, &xi0), "{}", name);
        let from_poly = reduce_section(&model, &poly, &xi0).unwrap().coordinates;
        let expected: Vec<GaussianRational> = coords.iter().zip(&from_poly).map(|(a, b)| a + b).collect();
        prop_assert_eq!(red.coordinates, expected);
    }
}
