//! Resonance-freeness and admissibility, reported clause by clause.

use serde::Serialize;

use super::data::{Exponent, SingularityData};
use crate::arith::GaussianRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Clause {
    /// `Re(μ) ∈ Z` for a nonzero eigenvalue.
    IntegralRealPart,
    /// `μ = β`.
    EigenvalueEqualsWeight,
    /// Two eigenvalues in one group differ by a nonzero integer.
    IntegerDifference,
    /// A 0-eigenvector at a finite point carries a nonzero weight.
    WeightedKernel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "at", rename_all = "snake_case")]
pub enum Location {
    Regular { index: usize, point: String },
    Infinity { block: usize, leading: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub clause: Clause,
    #[serde(flatten)]
    pub location: Location,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(mut self, other: ValidationReport) -> Self {
        self.violations.extend(other.violations);
        self
    }

    pub fn has(&self, clause: Clause) -> bool {
        self.violations.iter().any(|v| v.clause == clause)
    }
}

/// Which singularities the resonance conditions are applied to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    All,
    FinitePoints,
}

fn check_group(exps: &[&Exponent], location: &Location, out: &mut Vec<Violation>) {
    let mut push = |clause, detail: String| {
        out.push(Violation {
            clause,
            location: location.clone(),
            detail,
        })
    };
    for e in exps {
        if e.value.re_is_integer() {
            push(
                Clause::IntegralRealPart,
                format!("eigenvalue {} has integral real part", e.value),
            );
        }
        if e.value == GaussianRational::from_real(e.weight.clone()) {
            push(
                Clause::EigenvalueEqualsWeight,
                format!("eigenvalue {} equals its weight", e.value),
            );
        }
    }
    for a in 0..exps.len() {
        for b in a + 1..exps.len() {
            let d = &exps[a].value - &exps[b].value;
            if d.is_integer() && !d.is_zero() {
                push(
                    Clause::IntegerDifference,
                    format!(
                        "eigenvalues {} and {} differ by {d}",
                        exps[a].value, exps[b].value
                    ),
                );
            }
        }
    }
}

/// Resonance-freeness: at finite points the conditions apply to the
/// nonzero eigenvalues; at infinity to every `μ^∞_k`, with differences
/// taken within each eigenblock of `A`.
pub fn validate_resonance_free(data: &SingularityData) -> ValidationReport {
    validate_resonance_free_in(data, Scope::All)
}

pub fn validate_resonance_free_in(data: &SingularityData, scope: Scope) -> ValidationReport {
    let mut violations = Vec::new();
    for (index, s) in data.regular.iter().enumerate() {
        let exps: Vec<&Exponent> = s.exponents.iter().filter(|e| !e.value.is_zero()).collect();
        let location = Location::Regular {
            index,
            point: s.point.to_string(),
        };
        check_group(&exps, &location, &mut violations);
    }
    if scope == Scope::All {
        for (block, b) in data.irregular.iter().enumerate() {
            let exps: Vec<&Exponent> = b.exponents.iter().collect();
            let location = Location::Infinity {
                block,
                leading: b.leading.to_string(),
            };
            check_group(&exps, &location, &mut violations);
        }
    }
    ValidationReport { violations }
}

/// Admissibility: the 0-eigenspace at each finite point has weight 0.
pub fn validate_admissible(data: &SingularityData) -> ValidationReport {
    let mut violations = Vec::new();
    for (index, s) in data.regular.iter().enumerate() {
        for e in &s.exponents {
            if e.value.is_zero() && !num_traits::Zero::is_zero(&e.weight) {
                violations.push(Violation {
                    clause: Clause::WeightedKernel,
                    location: Location::Regular {
                        index,
                        point: s.point.to_string(),
                    },
                    detail: format!(
                        "0-eigenvector carries weight {}",
                        crate::arith::format_rational(&e.weight)
                    ),
                });
            }
        }
    }
    ValidationReport { violations }
}
