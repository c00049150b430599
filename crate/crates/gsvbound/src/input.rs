//! Turning command-line text into validated mathematical objects.

use gsvbound_core::blowup::BlowupError;
use gsvbound_core::foliation::{make_foliation, Foliation, FoliationError, Separatrix};
use gsvbound_core::invariants::{InvariantError, SeparatrixDivisor};
use gsvbound_core::parse::{parse_divisor_curves, parse_one_form, parse_polynomial, parse_univariate, ParseError};
use gsvbound_core::poly::Poly;
use gsvbound_core::puiseux::PuiseuxError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot parse {what} {text:?}: {source}")]
    Parse {
        what: &'static str,
        text: String,
        source: ParseError,
    },
    #[error(transparent)]
    Foliation(#[from] FoliationError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Blowup(#[from] BlowupError),
    #[error(transparent)]
    Puiseux(#[from] PuiseuxError),
    #[error("{0}")]
    Io(String),
    #[error("corpus: {0}")]
    Corpus(String),
}

impl CliError {
    /// 1 for a mathematical check that ran and failed, 2 for unusable input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Blowup(BlowupError::MaxStepsExceeded(_)) => 1,
            _ => 2,
        }
    }

    /// Stable name of the error class, printed with every diagnostic.
    pub fn class(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "ParseError",
            CliError::Foliation(e) | CliError::Blowup(BlowupError::Foliation(e)) => foliation_class(e),
            CliError::Invariant(e) | CliError::Blowup(BlowupError::Invariant(e)) => invariant_class(e),
            CliError::Blowup(BlowupError::MaxStepsExceeded(_)) => "MaxStepsExceeded",
            CliError::Blowup(BlowupError::RegularPoint) => "RegularFoliation",
            CliError::Blowup(BlowupError::Poly(_)) => "NotUnitangent",
            CliError::Puiseux(PuiseuxError::NotPrimitive(_)) => "NotPrimitive",
            CliError::Puiseux(PuiseuxError::TruncationInsufficient(_)) => "TruncationInsufficient",
            CliError::Puiseux(_) => "InvalidParametrization",
            CliError::Io(_) => "IoError",
            CliError::Corpus(_) => "CorpusError",
        }
    }
}

fn foliation_class(e: &FoliationError) -> &'static str {
    match e {
        FoliationError::ZeroForm => "ZeroForm",
        FoliationError::NotCoprime(_) => "NotCoprime",
        FoliationError::NotInvariant => "NotInvariant",
        FoliationError::NotThroughOrigin => "NotThroughOrigin",
        FoliationError::NotSquarefree => "NotSquarefree",
        FoliationError::NotCertified(_) => "NotCertified",
    }
}

fn invariant_class(e: &InvariantError) -> &'static str {
    match e {
        InvariantError::Foliation(f) => foliation_class(f),
        InvariantError::NotIsolated => "NotIsolated",
        InvariantError::NotIsolatedForFoliation => "NotIsolatedForFoliation",
        InvariantError::InfiniteIntersection => "InfiniteIntersection",
        InvariantError::RegularFoliation => "RegularFoliation",
        InvariantError::NonReducedForGSV => "NonReducedForGSV",
        InvariantError::SharedComponent(..) => "SharedComponent",
    }
}

fn parse_err<'a>(what: &'static str, text: &'a str) -> impl FnOnce(ParseError) -> CliError + 'a {
    move |source| CliError::Parse { what, text: text.to_string(), source }
}

pub fn foliation(text: &str) -> Result<Foliation, CliError> {
    let form = parse_one_form(text).map_err(parse_err("1-form", text))?;
    Ok(make_foliation(form.dx_part, form.dy_part)?)
}

pub fn polynomial(text: &str) -> Result<Poly, CliError> {
    parse_polynomial(text).map_err(parse_err("curve", text))
}

pub fn series(text: &str) -> Result<Poly, CliError> {
    parse_univariate(text).map_err(parse_err("series", text))
}

pub fn separatrix(text: &str, assume_irreducible: bool) -> Result<Separatrix, CliError> {
    Ok(Separatrix::new(polynomial(text)?, assume_irreducible)?)
}

pub fn divisor(text: &str, assume_irreducible: bool) -> Result<SeparatrixDivisor, CliError> {
    let curves = parse_divisor_curves(text).map_err(parse_err("divisor", text))?;
    let comps = curves
        .into_iter()
        .map(|(a, f)| Ok((Separatrix::new(f, assume_irreducible)?, a)))
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(SeparatrixDivisor::new(comps)?)
}

/// Divisor `[f1] + [f2] + ...` with unit coefficients.
pub fn reduced_divisor<S: AsRef<str>>(curves: &[S], assume_irreducible: bool) -> Result<SeparatrixDivisor, CliError> {
    let comps = curves
        .iter()
        .map(|c| Ok((separatrix(c.as_ref(), assume_irreducible)?, 1)))
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(SeparatrixDivisor::new(comps)?)
}
