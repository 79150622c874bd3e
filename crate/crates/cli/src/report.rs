//! The run report: everything one command computes for one input document.

use std::time::Instant;

use minlap_core::connection::{
    dmodule_degrees, parse_connection, validate_admissible, validate_resonance_free, Degrees,
    ValidationReport,
};
use minlap_core::stationary::{InvolutionReport, PhaseReport};
use minlap_core::{
    build_model, predict, transform_connection, verify_involution, verify_stationary_phase,
    GaussianRational, ParabolicConnection, PredictedData, TransformedConnection,
};
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Exit status: 0 pass, 1 domain failure, 2 unreadable or malformed input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Outcome {
    Pass = 0,
    Fail = 1,
    Input = 2,
}

impl Outcome {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Validate,
    Predict,
    Transform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mode {
    pub stage: Stage,
    /// Include the entries of `X(ξ)`.
    pub full: bool,
    pub involution: bool,
    pub timing: bool,
}

impl Mode {
    pub fn validate() -> Self {
        Self {
            stage: Stage::Validate,
            full: false,
            involution: false,
            timing: false,
        }
    }

    /// What corpus-check stores as golden output.
    pub fn golden() -> Self {
        Self {
            stage: Stage::Transform,
            full: true,
            involution: true,
            timing: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationSection {
    pub passed: bool,
    pub resonance_free: ValidationReport,
    pub admissible: ValidationReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisEntry {
    pub point: String,
    pub eigenvalue: String,
    pub weight: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PoleSummary {
    pub point: String,
    pub residue_char_poly: String,
    pub residue_eigenvalues: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InfinitySummary {
    pub leading_diagonal: Option<Vec<String>>,
    pub leading_char_poly: String,
    pub residue_char_poly: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TransformSummary {
    pub rank: usize,
    pub variable: String,
    pub basis: Vec<BasisEntry>,
    pub poles: Vec<PoleSummary>,
    pub infinity: InfinitySummary,
    pub pole_confinement: bool,
    #[serde(rename = "X", skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeCheck {
    pub passed: bool,
    pub source_pdeg: String,
    pub predicted_pdeg: String,
}

/// Wall-clock microseconds per stage; only reported on request.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Timing {
    pub predict_us: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transform_us: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub involution_us: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub input: String,
    pub input_digest: String,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Degrees>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prediction: Option<PredictedData>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_preservation: Option<DegreeCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transform: Option<TransformSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stationary_phase: Option<PhaseReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub involution: Option<InvolutionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl RunReport {
    fn new(input: &str, text: &str) -> Self {
        Self {
            input: input.to_string(),
            input_digest: format!("sha256:{}", hex::encode(Sha256::digest(text.as_bytes()))),
            verdict: "pass",
            error: None,
            validation: None,
            degrees: None,
            prediction: None,
            degree_preservation: None,
            transform: None,
            stationary_phase: None,
            involution: None,
            timing: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

fn micros(start: Instant) -> u64 {
    start.elapsed().as_micros() as u64
}

fn strings(values: &[GaussianRational]) -> Vec<String> {
    values.iter().map(|v| v.to_string()).collect()
}

fn summarize(t: &TransformedConnection, full: bool) -> TransformSummary {
    let basis = t
        .label_points()
        .iter()
        .zip(t.label_exponents())
        .map(|(p, e)| BasisEntry {
            point: p.to_string(),
            eigenvalue: e.value.to_string(),
            weight: GaussianRational::from_real(e.weight.clone()).to_string(),
        })
        .collect();
    let poles = t
        .poles()
        .iter()
        .map(|pole| {
            let data = t.residue_data_at(&pole.point);
            PoleSummary {
                point: pole.point.to_string(),
                residue_char_poly: data.char_poly.display_with("λ"),
                residue_eigenvalues: data.eigenvalues.as_deref().map(strings),
            }
        })
        .collect();
    let formal = t.formal_data_at_infinity();
    let infinity = InfinitySummary {
        leading_diagonal: formal
            .leading
            .is_diagonal()
            .then(|| strings(&formal.leading.diagonal_entries())),
        leading_char_poly: formal.leading.char_poly().expect("square").display_with("λ"),
        residue_char_poly: formal
            .residue_block_diagonal()
            .char_poly()
            .expect("square")
            .display_with("λ"),
    };
    TransformSummary {
        rank: t.rank(),
        variable: t.variable().to_string(),
        basis,
        poles,
        infinity,
        pole_confinement: t.pole_confinement_violations().is_empty(),
        x: full.then(|| t.entry_strings()),
    }
}

/// Parses `text` and runs `mode` on it. `Err` carries a parse or
/// construction error, which maps to exit status 2.
pub fn run_document(input: &str, text: &str, mode: Mode) -> Result<(RunReport, Outcome), String> {
    let conn = parse_connection(text).map_err(|e| format!("{input}: {e}"))?;
    Ok(run_connection(input, text, &conn, mode))
}

/// A report for input that could not be read as a connection.
pub fn error_report(input: &str, text: &str, message: String) -> RunReport {
    let mut report = RunReport::new(input, text);
    report.verdict = "error";
    report.error = Some(message);
    report
}

pub fn run_connection(
    input: &str,
    text: &str,
    conn: &ParabolicConnection,
    mode: Mode,
) -> (RunReport, Outcome) {
    let mut report = RunReport::new(input, text);
    let resonance_free = validate_resonance_free(conn.data());
    let admissible = validate_admissible(conn.data());
    let valid = resonance_free.passed() && admissible.passed();
    report.validation = Some(ValidationSection {
        passed: valid,
        resonance_free,
        admissible,
    });
    report.degrees = Some(dmodule_degrees(conn.data()));
    let fail = |mut report: RunReport| {
        report.verdict = "fail";
        (report, Outcome::Fail)
    };
    if !valid {
        return fail(report);
    }
    if mode.stage == Stage::Validate {
        return (report, Outcome::Pass);
    }

    let mut timing = Timing::default();
    let start = Instant::now();
    let prediction = match predict(conn) {
        Ok(p) => p,
        Err(e) => {
            report.error = Some(e.to_string());
            return fail(report);
        }
    };
    timing.predict_us = micros(start);
    let source_pdeg = dmodule_degrees(conn.data()).pdeg;
    let degree_check = DegreeCheck {
        passed: source_pdeg == prediction.pdeg,
        source_pdeg: source_pdeg.to_string(),
        predicted_pdeg: prediction.pdeg.to_string(),
    };
    let mut passed = degree_check.passed;
    report.degree_preservation = Some(degree_check);

    if mode.stage == Stage::Transform {
        let start = Instant::now();
        let transformed = build_model(conn)
            .map_err(|e| e.to_string())
            .and_then(|m| transform_connection(&m).map_err(|e| e.to_string()));
        timing.transform_us = Some(micros(start));
        match transformed {
            Ok(t) => {
                let phase = verify_stationary_phase(&prediction, &t);
                passed &= phase.passed;
                report.transform = Some(summarize(&t, mode.full));
                report.stationary_phase = Some(phase);
            }
            Err(e) => {
                report.error = Some(e);
                passed = false;
            }
        }
    }
    report.prediction = Some(prediction);

    if mode.involution {
        let start = Instant::now();
        let inv = verify_involution(conn);
        timing.involution_us = Some(micros(start));
        passed &= inv.passed;
        report.involution = Some(inv);
    }
    if mode.timing {
        report.timing = Some(timing);
    }
    if passed {
        (report, Outcome::Pass)
    } else {
        fail(report)
    }
}
