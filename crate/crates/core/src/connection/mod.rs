//! The input data model: parabolic connections with logarithmic poles at
//! finite points and a rank-one irregular pole at infinity.

mod data;
mod degree;
mod document;
mod validate;

pub use data::{
    ConnectionError, EigenDatum, Exponent, IrregularBlock, IrregularData, LocalExponents,
    ParabolicConnection, RegularSingularity, SingularityData,
};
pub use degree::{
    dmodule_degrees, extend_filtration, parabolic_degree, slope_of_subdata, Degrees,
    FiltrationError, SubDatum, SubDatumError,
};
pub use document::{
    parse_connection, ConnectionDocument, DocumentError, EigenDocument, IrregularDocument,
    RegularDocument,
};
pub use validate::{
    validate_admissible, validate_resonance_free, validate_resonance_free_in, Clause, Location,
    Scope, ValidationReport, Violation,
};

use num_rational::BigRational;
use serde::Serializer;

use crate::arith::{format_rational, GaussianRational};

pub(crate) fn ser_gaussian<S: Serializer>(v: &GaussianRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub(crate) fn ser_opt_gaussian<S: Serializer>(
    v: &Option<GaussianRational>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

pub(crate) fn ser_rational<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(v))
}
