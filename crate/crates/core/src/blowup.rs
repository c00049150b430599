//! Point blow-ups of foliations and branches, and the branch resolution driver.
//!
//! Chart1 is `(x, y) -> (x, x y)` with exceptional divisor `{x = 0}`;
//! Chart2 is `(x, y) -> (x y, y)` with exceptional divisor `{y = 0}`.

use alloc::vec::Vec;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::foliation::{separatrix_cofactor, Foliation, FoliationError};
use crate::invariants::{InvariantError, PairInvariants};
use crate::poly::{Monomial, Poly, PolyError, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chart {
    Chart1,
    Chart2,
}

impl Chart {
    pub fn other(self) -> Chart {
        match self {
            Chart::Chart1 => Chart::Chart2,
            Chart::Chart2 => Chart::Chart1,
        }
    }

    /// The pair `(u, v)` with `x -> u`, `y -> v`.
    fn map(self) -> (Poly, Poly) {
        let xy = Poly::monomial(1, 1);
        match self {
            Chart::Chart1 => (Poly::x(), xy),
            Chart::Chart2 => (xy, Poly::y()),
        }
    }

    /// Exponent of the exceptional coordinate in a monomial.
    fn exceptional_power(self, p: &Poly) -> Option<u32> {
        match self {
            Chart::Chart1 => p.x_adic_valuation(),
            Chart::Chart2 => p.y_adic_valuation(),
        }
    }

    fn exceptional_monomial(self, k: u32) -> Monomial {
        match self {
            Chart::Chart1 => Monomial::new(k, 0),
            Chart::Chart2 => Monomial::new(0, k),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlowupError {
    #[error("foliation is regular at the origin; nothing to blow up")]
    RegularPoint,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Foliation(#[from] FoliationError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error("branch still singular after {0} blow-ups")]
    MaxStepsExceeded(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupResult {
    pub chart: Chart,
    pub strict_form: Foliation,
    /// Power of the exceptional coordinate divided out of the pullback.
    pub divided_power: u32,
    pub dicritical: bool,
    /// `ν + 1` if dicritical, else `ν`.
    pub m_p: u32,
    /// Coordinate of the new base point on the exceptional divisor.
    #[serde(with = "crate::poly::rat_serde::option")]
    pub center: Option<Rat>,
    /// `ν(F)` before the blow-up.
    pub nu: u32,
}

fn pullback(fol: &Foliation, chart: Chart) -> (Poly, Poly) {
    let (u, v) = chart.map();
    let p = fol.p().substitute(&u, &v);
    let q = fol.q().substitute(&u, &v);
    match chart {
        // dy -> x dy + y dx
        Chart::Chart1 => (&p + &(&Poly::y() * &q), &Poly::x() * &q),
        // dx -> y dx + x dy
        Chart::Chart2 => (&Poly::y() * &p, &(&Poly::x() * &p) + &q),
    }
}

fn saturate(fol: &Foliation, chart: Chart) -> Result<(Foliation, u32), BlowupError> {
    let (p, q) = pullback(fol, chart);
    let k = match (chart.exceptional_power(&p), chart.exceptional_power(&q)) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => unreachable!("pullback of a nonzero form is nonzero"),
    };
    let e = chart.exceptional_monomial(k);
    let p = p.div_monomial(e).expect("k divides both");
    let q = q.div_monomial(e).expect("k divides both");
    Ok((Foliation::new(p, q)?, k))
}

/// Strict transform of the foliation in `chart`; the base point stays at the origin.
pub fn blowup_foliation(fol: &Foliation, chart: Chart) -> Result<BlowupResult, BlowupError> {
    let nu = fol.algebraic_multiplicity();
    if nu == 0 {
        return Err(BlowupError::RegularPoint);
    }
    let (strict, k) = saturate(fol, chart)?;
    assert!(k == nu || k == nu + 1, "divided power {k} outside {{{nu}, {}}}", nu + 1);
    let (_, k_other) = saturate(fol, chart.other())?;
    assert_eq!(k, k_other, "charts disagree on the divided power");
    let e = match chart {
        Chart::Chart1 => Poly::x(),
        Chart::Chart2 => Poly::y(),
    };
    let divisor_invariant = separatrix_cofactor(&strict, &e).is_ok();
    let dicritical = k == nu + 1;
    assert_eq!(dicritical, !divisor_invariant, "dicriticality tests disagree");
    Ok(BlowupResult {
        chart,
        strict_form: strict,
        divided_power: k,
        dicritical,
        m_p: if dicritical { nu + 1 } else { nu },
        center: None,
        nu,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchBlowup {
    pub chart: Chart,
    #[serde(with = "crate::poly::rat_serde")]
    pub center: Rat,
    pub strict: Poly,
}

/// Chart and center for the tangent direction of `f`.
fn branch_chart(f: &Poly) -> Result<(Chart, Rat), PolyError> {
    let (a, b) = f.lowest_form()?.unitangent_root()?;
    // Tangent line a x + b y = 0.
    if b.is_zero() {
        Ok((Chart::Chart2, Rat::zero()))
    } else if a.is_zero() {
        Ok((Chart::Chart1, Rat::zero()))
    } else {
        Ok((Chart::Chart1, -(&a / &b)))
    }
}

/// Substitute `y -> y + center` on Chart1; Chart2 has center 0.
fn recenter(p: &Poly, chart: Chart, center: &Rat) -> Poly {
    match chart {
        Chart::Chart1 => p.translate(&Rat::zero(), center),
        Chart::Chart2 => p.clone(),
    }
}

/// Strict transform of a unitangent branch at the point of its tangent direction.
pub fn blowup_branch(f: &Poly) -> Result<BranchBlowup, PolyError> {
    let nu = f.ord().ok_or(PolyError::ZeroPolynomial)?;
    let (chart, center) = branch_chart(f)?;
    let (u, v) = chart.map();
    let total = f.substitute(&u, &v);
    let strict = total
        .div_monomial(chart.exceptional_monomial(nu))
        .expect("x^ord divides the total transform");
    let strict = recenter(&strict, chart, &center);
    Ok(BranchBlowup { chart, center, strict })
}

/// Blows up the pair at the origin and moves to the point of the strict branch.
pub fn blowup_pair(fol: &Foliation, f: &Poly) -> Result<(Foliation, Poly, BlowupResult), BlowupError> {
    separatrix_cofactor(fol, f)?;
    let branch = blowup_branch(f)?;
    let mut result = blowup_foliation(fol, branch.chart)?;
    let moved = Foliation::new(
        recenter(result.strict_form.p(), branch.chart, &branch.center),
        recenter(result.strict_form.q(), branch.chart, &branch.center),
    )?;
    separatrix_cofactor(&moved, &branch.strict)?;
    result.strict_form = moved.clone();
    result.center = Some(branch.center);
    Ok((moved, branch.strict, result))
}

pub const DEFAULT_MAX_STEPS: u32 = 30;

/// Base point `q` of a blow-up: chart and position on the exceptional divisor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Location {
    pub chart: Chart,
    #[serde(with = "crate::poly::rat_serde")]
    pub center: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionStep {
    pub foliation: Foliation,
    pub curve: Poly,
    /// `None` for the initial pair; otherwise chart and center of the blow-up that produced it.
    pub location: Option<Location>,
    pub nu_f: u32,
    pub nu_b: u32,
    pub mu: u64,
    pub tau: u64,
    pub gsv: i64,
    pub phi: i64,
    /// Dicriticality and `m_p` of the blow-up that produced this step.
    pub dicritical: Option<bool>,
    pub m_p: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionTrace {
    pub steps: Vec<ResolutionStep>,
}

impl ResolutionTrace {
    pub fn blowups(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn phi_sequence(&self) -> Vec<i64> {
        self.steps.iter().map(|s| s.phi).collect()
    }

    pub fn phi_nondecreasing(&self) -> bool {
        self.steps.windows(2).all(|w| w[0].phi <= w[1].phi)
    }

    /// Strict increase at every step from a singular branch.
    pub fn phi_strict_while_singular(&self) -> bool {
        self.steps.windows(2).all(|w| w[0].nu_b == 1 || w[0].phi < w[1].phi)
    }

    /// `μ_q = μ_p − ν_B (m_p − 1)` at every step.
    pub fn multiplicity_law_holds(&self) -> bool {
        self.steps.windows(2).all(|w| {
            let m = i64::from(w[1].m_p.expect("blow-up step"));
            w[1].mu as i64 == w[0].mu as i64 - i64::from(w[0].nu_b) * (m - 1)
        })
    }

    /// `GSV_q = GSV_p + ν_B (ν_B − m_p)` at every step.
    pub fn gsv_law_holds(&self) -> bool {
        self.steps.windows(2).all(|w| {
            let m = i64::from(w[1].m_p.expect("blow-up step"));
            let nb = i64::from(w[0].nu_b);
            w[1].gsv == w[0].gsv + nb * (nb - m)
        })
    }

    pub fn terminal_phi(&self) -> i64 {
        self.steps.last().expect("nonempty").phi
    }
}

fn record(
    fol: &Foliation,
    f: &Poly,
    location: Option<Location>,
    blowup: Option<&BlowupResult>,
) -> Result<ResolutionStep, BlowupError> {
    let inv = PairInvariants::compute(fol, f)?;
    Ok(ResolutionStep {
        foliation: fol.clone(),
        curve: f.clone(),
        location,
        nu_f: fol.algebraic_multiplicity(),
        nu_b: f.ord().expect("nonzero"),
        mu: inv.mu_fb,
        tau: inv.tau_fb,
        gsv: inv.gsv,
        phi: inv.phi(),
        dicritical: blowup.map(|b| b.dicritical),
        m_p: blowup.map(|b| b.m_p),
    })
}

/// Blows up along the branch until it is smooth, recording the invariants at every point.
pub fn resolve_branch(fol: &Foliation, f: &Poly, max_steps: u32) -> Result<ResolutionTrace, BlowupError> {
    let mut steps = alloc::vec![record(fol, f, None, None)?];
    let (mut fol, mut f) = (fol.clone(), f.clone());
    let mut done = 0;
    while f.ord() != Some(1) {
        if done == max_steps {
            return Err(BlowupError::MaxStepsExceeded(max_steps));
        }
        let (nf, nb, res) = blowup_pair(&fol, &f)?;
        let loc = Location { chart: res.chart, center: res.center.clone().expect("set by blowup_pair") };
        steps.push(record(&nf, &nb, Some(loc), Some(&res))?);
        fol = nf;
        f = nb;
        done += 1;
    }
    Ok(ResolutionTrace { steps })
}
