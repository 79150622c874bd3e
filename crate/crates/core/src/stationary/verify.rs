//! Cross-checks of the prediction against the computed transform, and the
//! round trip through the inverse transform.

use num_rational::BigRational;
use serde::Serialize;

use super::predict::{predict, PredictedData};
use crate::arith::{GaussianRational, Polynomial};
use crate::connection::{
    dmodule_degrees, validate_admissible, validate_resonance_free, Exponent, ParabolicConnection,
    SingularityData,
};
use crate::transform::{build_model, harvest, inverse_transform, transform_connection, TransformedConnection};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhaseReport {
    pub passed: bool,
    /// How the residue eigenvalues at the `ξ_l` relate to the predicted
    /// `μ^∞`; `None` if neither sign matches.
    pub convention: Option<String>,
    /// Whether the matching held exactly rather than only modulo `Z`.
    pub residues_exact: bool,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvolutionReport {
    pub passed: bool,
    pub checks: Vec<Check>,
}

fn show(values: &[GaussianRational]) -> String {
    let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn char_poly_of(values: &[GaussianRational]) -> Polynomial {
    values
        .iter()
        .fold(Polynomial::one(), |acc, v| &acc * &Polynomial::linear_root(v))
}

/// Representative with real part in `[0, 1)`.
fn mod_z(v: &GaussianRational) -> GaussianRational {
    GaussianRational::new(v.re() - v.re().floor(), v.im().clone())
}

fn sorted_mod_z(values: &[GaussianRational]) -> Vec<GaussianRational> {
    let mut out: Vec<GaussianRational> = values.iter().map(mod_z).collect();
    out.sort();
    out
}

/// Compares `T` against `P`: ranks, pole locations, the formal data at
/// infinity (exactly) and the residue spectra at the `ξ_l` (modulo `Z`,
/// under one global sign).
pub fn verify_stationary_phase(p: &PredictedData, t: &TransformedConnection) -> PhaseReport {
    let mut checks = Vec::new();

    checks.push(Check::new(
        "rank",
        p.rank == t.rank(),
        format!("predicted {}, computed {}", p.rank, t.rank()),
    ));

    let mut computed_poles: Vec<GaussianRational> = t
        .poles()
        .iter()
        .filter(|pole| !t.residue_data_at(&pole.point).residue.is_zero())
        .map(|pole| pole.point.clone())
        .collect();
    computed_poles.sort();
    let mut predicted_poles: Vec<GaussianRational> =
        p.regular.iter().map(|s| s.point.clone()).collect();
    predicted_poles.sort();
    let stray = t.pole_confinement_violations();
    checks.push(Check::new(
        "pole_locations",
        computed_poles == predicted_poles && stray.is_empty(),
        format!(
            "predicted {}, computed {}, entries with other poles {}",
            show(&predicted_poles),
            show(&computed_poles),
            stray.len()
        ),
    ));

    let formal = t.formal_data_at_infinity();
    let leading_ok = formal.leading.is_diagonal() && {
        let mut d = formal.leading.diagonal_entries();
        d.sort();
        d == p.leading_multiset()
    };
    checks.push(Check::new(
        "leading_at_infinity",
        leading_ok,
        format!(
            "predicted diag{}, char poly {}",
            show(&p.leading_multiset()),
            formal.leading.char_poly().expect("square").display_with("λ")
        ),
    ));

    let expected = char_poly_of(&p.residue_multiset());
    let computed = formal.residue_block_diagonal().char_poly().expect("square");
    checks.push(Check::new(
        "residue_at_infinity",
        expected == computed,
        format!(
            "predicted {}, computed {}",
            expected.display_with("λ"),
            computed.display_with("λ")
        ),
    ));

    let spectra: Vec<(GaussianRational, Option<Vec<GaussianRational>>, Vec<GaussianRational>)> = p
        .regular
        .iter()
        .map(|s| {
            let data = t.residue_data_at(&s.point);
            let predicted = s.exponents.iter().map(|e| e.value.clone()).collect();
            (s.point.clone(), data.eigenvalues, predicted)
        })
        .collect();
    let matches = |sign: &GaussianRational, exact: bool| {
        spectra.iter().all(|(_, computed, predicted)| {
            let Some(computed) = computed else { return false };
            let signed: Vec<GaussianRational> = predicted.iter().map(|v| sign * v).collect();
            if exact {
                let mut a = computed.clone();
                let mut b = signed;
                a.sort();
                b.sort();
                a == b
            } else {
                sorted_mod_z(computed) == sorted_mod_z(&signed)
            }
        })
    };
    let plus = GaussianRational::one();
    let minus = -&plus;
    let (convention, residues_exact) = if matches(&plus, false) {
        (Some("residue = +μ^∞ mod Z"), matches(&plus, true))
    } else if matches(&minus, false) {
        (Some("residue = -μ^∞ mod Z"), matches(&minus, true))
    } else {
        (None, false)
    };
    let detail = spectra
        .iter()
        .map(|(point, computed, predicted)| {
            format!(
                "at {point}: predicted {}, computed {}",
                show(predicted),
                computed.as_deref().map_or("unsplit".to_string(), show)
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    checks.push(Check::new("residues_at_poles", convention.is_some(), detail));

    PhaseReport {
        passed: checks.iter().all(|c| c.passed),
        convention: convention.map(str::to_string),
        residues_exact,
        checks,
    }
}

/// Local data up to ordering: exponents sorted, points and blocks sorted,
/// points carrying only `(0, 0)` dropped.
fn normalize(data: &SingularityData) -> SingularityData {
    let trivial = |e: &Exponent| e.value.is_zero() && e.weight == BigRational::from_integer(0.into());
    let mut out = data.clone();
    out.regular.retain(|s| !s.exponents.iter().all(trivial));
    for s in &mut out.regular {
        s.exponents.sort();
    }
    out.regular.sort_by(|a, b| a.point.cmp(&b.point));
    for b in &mut out.irregular {
        b.exponents.sort();
    }
    out.irregular.sort_by(|a, b| a.leading.cmp(&b.leading));
    out
}

/// Transform, harvest the dual datum, transform back and compare with the
/// input.
pub fn verify_involution(conn: &ParabolicConnection) -> InvolutionReport {
    let mut checks = Vec::new();
    let finish = |checks: Vec<Check>| InvolutionReport {
        passed: checks.iter().all(|c| c.passed),
        checks,
    };
    if conn.transform_rank() == 0 {
        checks.push(Check::new("rank", true, "transform has rank 0; nothing to invert"));
        return finish(checks);
    }

    let predicted = match predict(conn) {
        Ok(p) => p,
        Err(e) => {
            checks.push(Check::new("predict", false, e.to_string()));
            return finish(checks);
        }
    };
    let transformed = match build_model(conn)
        .map_err(|e| e.to_string())
        .and_then(|m| transform_connection(&m).map_err(|e| e.to_string()))
    {
        Ok(t) => t,
        Err(e) => {
            checks.push(Check::new("transform", false, e));
            return finish(checks);
        }
    };
    let dual = match harvest(&transformed) {
        Ok(d) => d,
        Err(e) => {
            checks.push(Check::new("harvest", false, e.to_string()));
            return finish(checks);
        }
    };
    let report = validate_resonance_free(dual.data()).merge(validate_admissible(dual.data()));
    checks.push(Check::new(
        "dual_validates",
        report.passed(),
        format!("{} violation(s)", report.violations.len()),
    ));
    checks.push(Check::new(
        "dual_matches_prediction",
        normalize(dual.data()) == normalize(&predicted.dual_data()),
        format!("rank {}", dual.rank()),
    ));
    if !report.passed() {
        return finish(checks);
    }

    let back = match inverse_transform(&dual)
        .map_err(|e| e.to_string())
        .and_then(|t| harvest(&t).map_err(|e| e.to_string()))
    {
        Ok(b) => b,
        Err(e) => {
            checks.push(Check::new("inverse_transform", false, e));
            return finish(checks);
        }
    };
    let original = normalize(conn.data());
    let recovered = normalize(back.data());
    checks.push(Check::new(
        "rank",
        back.rank() == conn.rank(),
        format!("original {}, recovered {}", conn.rank(), back.rank()),
    ));
    let points = |d: &SingularityData| d.regular.iter().map(|s| s.point.clone()).collect::<Vec<_>>();
    checks.push(Check::new(
        "points",
        points(&original) == points(&recovered),
        format!(
            "original {}, recovered {}",
            show(&points(&original)),
            show(&points(&recovered))
        ),
    ));
    checks.push(Check::new(
        "regular_exponents",
        original.regular == recovered.regular,
        "eigenvalues and weights at the finite points",
    ));
    checks.push(Check::new(
        "irregular_exponents",
        original.irregular == recovered.irregular,
        "leading values, exponents and weights at infinity",
    ));
    let pdeg_a = dmodule_degrees(conn.data()).pdeg;
    let pdeg_b = dmodule_degrees(back.data()).pdeg;
    checks.push(Check::new(
        "pdeg",
        pdeg_a == pdeg_b,
        format!("original {pdeg_a}, recovered {pdeg_b}"),
    ));
    finish(checks)
}
