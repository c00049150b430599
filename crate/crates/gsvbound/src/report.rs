//! Report values shared by the subcommands and the corpus replay.

use gsvbound_core::blowup::{blowup_foliation, blowup_pair, resolve_branch, Chart, ResolutionTrace};
use gsvbound_core::foliation::Foliation;
use gsvbound_core::invariants::{check_corollary, check_theorem, SeparatrixDivisor};
use gsvbound_core::puiseux::{
    certify_branch, default_truncation_bound, mult_via_parametrization, newton_polygon, verify_parametrization,
    Parametrization,
};
use serde_json::{json, Value};

use crate::input::{self, CliError};

/// A JSON report plus whether every mathematical check in it passed.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub value: Value,
    pub ok: bool,
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn invariants(form: &str, curve: &str, assume: bool) -> Result<Outcome, CliError> {
    let fol = input::foliation(form)?;
    let sep = input::separatrix(curve, assume)?;
    let report = check_theorem(&fol, &sep)?;
    let mut value = to_value(&report);
    value["phi"] = json!(report.phi());
    Ok(Outcome { value, ok: report.identity_checks.all() })
}

pub fn theorem(form: &str, curve: &str, assume: bool) -> Result<Outcome, CliError> {
    let fol = input::foliation(form)?;
    let sep = input::separatrix(curve, assume)?;
    let report = check_theorem(&fol, &sep)?;
    let holds = report.identity_checks.theorem_holds();
    let ok = holds && report.identity_checks.all();
    let mut value = to_value(&report);
    value["phi"] = json!(report.phi());
    value["theorem_holds"] = json!(holds);
    value["verdict"] = json!(verdict(ok));
    Ok(Outcome { value, ok })
}

fn corollary_for(fol: &Foliation, div: &SeparatrixDivisor) -> Result<Outcome, CliError> {
    let report = check_corollary(fol, div)?;
    let mut value = to_value(&report);
    value["verdict"] = json!(verdict(report.strict));
    Ok(Outcome { value, ok: report.strict })
}

pub fn corollary(form: &str, divisor: &str, assume: bool) -> Result<Outcome, CliError> {
    corollary_for(&input::foliation(form)?, &input::divisor(divisor, assume)?)
}

pub fn corollary_curves<S: AsRef<str>>(form: &str, curves: &[S], assume: bool) -> Result<Outcome, CliError> {
    corollary_for(&input::foliation(form)?, &input::reduced_divisor(curves, assume)?)
}

pub fn blowup(form: &str, curve: Option<&str>, chart: Option<Chart>) -> Result<Outcome, CliError> {
    let fol = input::foliation(form)?;
    let value = match curve {
        Some(c) => {
            let f = input::polynomial(c)?;
            let (moved, strict, result) = blowup_pair(&fol, &f)?;
            json!({ "result": to_value(&result), "foliation": to_value(&moved), "curve": strict.to_string() })
        }
        None => {
            let result = blowup_foliation(&fol, chart.unwrap_or(Chart::Chart1))?;
            json!({ "result": to_value(&result), "foliation": to_value(&result.strict_form) })
        }
    };
    Ok(Outcome { value, ok: true })
}

pub fn trace_checks(trace: &ResolutionTrace) -> Value {
    json!({
        "phi_nondecreasing": trace.phi_nondecreasing(),
        "phi_strict_while_singular": trace.phi_strict_while_singular(),
        "multiplicity_law": trace.multiplicity_law_holds(),
        "gsv_law": trace.gsv_law_holds(),
        "terminal_phi_zero": trace.terminal_phi() == 0,
    })
}

pub fn resolution(form: &str, curve: &str, max_steps: u32) -> Result<(ResolutionTrace, Outcome), CliError> {
    let fol = input::foliation(form)?;
    let f = input::polynomial(curve)?;
    let trace = resolve_branch(&fol, &f, max_steps)?;
    let checks = trace_checks(&trace);
    let ok = checks.as_object().expect("object").values().all(|v| v == &Value::Bool(true));
    let mut value = to_value(&trace);
    value["blowups"] = json!(trace.blowups());
    value["phi_sequence"] = json!(trace.phi_sequence());
    value["terminal_phi"] = json!(trace.terminal_phi());
    value["checks"] = checks;
    value["verdict"] = json!(verdict(ok));
    Ok((trace, Outcome { value, ok }))
}

pub fn certify(curve: &str) -> Result<Outcome, CliError> {
    let f = input::polynomial(curve)?;
    let value = json!({
        "certificate": to_value(&certify_branch(&f)),
        "newton_polygon": to_value(&newton_polygon(&f)),
    });
    Ok(Outcome { value, ok: true })
}

pub fn parametrization(
    curve: &str,
    x: &str,
    y: &str,
    order: Option<u32>,
    form: Option<&str>,
) -> Result<Outcome, CliError> {
    let f = input::polynomial(curve)?;
    let order = order.unwrap_or_else(|| default_truncation_bound(&f));
    let gamma = Parametrization::new(input::series(x)?, input::series(y)?, order)?;
    let verified = verify_parametrization(&f, &gamma);
    let mut value = json!({ "order": order, "verified": verified });
    if let Some(form) = form {
        let fol = input::foliation(form)?;
        value["mu_FB"] = json!(mult_via_parametrization(&fol, &gamma)?);
    }
    Ok(Outcome { value, ok: verified })
}
