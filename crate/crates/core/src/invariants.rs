//! Numerical invariants of a pair (foliation, invariant curve) and the
//! inequalities relating them.
//!
//! * `μ(B)`, `τ(B)`: Milnor and Tjurina numbers of the curve.
//! * `τ(F,B) = dim O/(P, Q, f)`.
//! * `μ(F,B)`: multiplicity of `F` along `B`. The order along a primitive
//!   parametrization `γ` is by definition `ord_t Q(γ) - ord_t x(γ) + 1`;
//!   since `ord_t g(γ(t)) = i_0(f, g)` for a branch, this is evaluated as
//!   `i_0(f, Q) - i_0(f, x) + 1` (or the `P`, `y` variant when `B = {x = 0}`),
//!   with no Puiseux arithmetic. For a reduced curve the same expression is
//!   the additive multiplicity `Σ μ(F, B_j) - r + 1`.
//! * `GSV(F,B) = τ(F,B) - τ(B)`.
//!
//! For every branch `B`: `GSV ≤ 4 τ(F,B) - 3 μ(F,B)` with equality iff `B` is smooth.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::foliation::{separatrix_cofactor, Foliation, FoliationError, Irreducibility, Separatrix};
use crate::localalg::{colength, intersection_multiplicity, Colength, LocalIdeal};
use crate::poly::Poly;
use crate::puiseux::BranchCertificate;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Foliation(#[from] FoliationError),
    #[error("curve does not have an isolated singularity at the origin")]
    NotIsolated,
    #[error("(P, Q, f) is not zero-dimensional at the origin")]
    NotIsolatedForFoliation,
    #[error("curve lies in the zero set of both components; multiplicity is undefined")]
    InfiniteIntersection,
    #[error("foliation is regular at the origin (algebraic multiplicity 0)")]
    RegularFoliation,
    #[error("GSV index and Tjurina sum need a reduced effective divisor (all coefficients 1)")]
    NonReducedForGSV,
    #[error("divisor components {0} and {1} share a branch")]
    SharedComponent(usize, usize),
}

fn finite(c: Colength, err: InvariantError) -> Result<u64, InvariantError> {
    c.finite().ok_or(err)
}

fn through_origin(f: &Poly) -> Result<(), InvariantError> {
    if f.is_zero() || f.is_unit_germ() {
        return Err(FoliationError::NotThroughOrigin.into());
    }
    Ok(())
}

/// Milnor number `dim O/(f_x, f_y)`.
pub fn milnor_curve(f: &Poly) -> Result<u64, InvariantError> {
    through_origin(f)?;
    finite(colength(&LocalIdeal::new([f.dx(), f.dy()])), InvariantError::NotIsolated)
}

/// Tjurina number `dim O/(f, f_x, f_y)`.
pub fn tjurina_curve(f: &Poly) -> Result<u64, InvariantError> {
    through_origin(f)?;
    finite(
        colength(&LocalIdeal::new([f.dx(), f.dy(), f.clone()])),
        InvariantError::NotIsolated,
    )
}

/// `τ(F, B) = dim O/(P, Q, f)`.
pub fn tjurina_foliation(fol: &Foliation, f: &Poly) -> Result<u64, InvariantError> {
    separatrix_cofactor(fol, f)?;
    finite(
        colength(&LocalIdeal::new([fol.p().clone(), fol.q().clone(), f.clone()])),
        InvariantError::NotIsolatedForFoliation,
    )
}

/// `μ(F, B)` through local intersection numbers.
pub fn mult_foliation(fol: &Foliation, f: &Poly) -> Result<u64, InvariantError> {
    separatrix_cofactor(fol, f)?;
    let route = |axis: Poly, component: &Poly| -> Option<i64> {
        let along_axis = intersection_multiplicity(f, &axis).finite()?;
        let along_component = intersection_multiplicity(f, component).finite()?;
        Some(along_component as i64 - along_axis as i64 + 1)
    };
    let mu = route(Poly::x(), fol.q())
        .or_else(|| route(Poly::y(), fol.p()))
        .ok_or(InvariantError::InfiniteIntersection)?;
    debug_assert!(mu >= 0, "multiplicity along an invariant curve is nonnegative");
    Ok(mu.max(0) as u64)
}

/// `GSV(F, B) = τ(F, B) - τ(B)`; may be negative.
pub fn gsv(fol: &Foliation, f: &Poly) -> Result<i64, InvariantError> {
    let tau_fb = tjurina_foliation(fol, f)?;
    let tau_b = tjurina_curve(f)?;
    Ok(tau_fb as i64 - tau_b as i64)
}

/// `Φ = 3μ - 4τ + GSV`, the quantity that is nondecreasing under blow-up.
pub fn phi(mu: u64, tau: u64, gsv: i64) -> i64 {
    3 * mu as i64 - 4 * tau as i64 + gsv
}

/// The raw invariants of a pair, with no theorem checks attached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairInvariants {
    pub mu_b: u64,
    pub tau_b: u64,
    pub mu_fb: u64,
    pub tau_fb: u64,
    pub gsv: i64,
}

impl PairInvariants {
    pub fn compute(fol: &Foliation, f: &Poly) -> Result<Self, InvariantError> {
        let tau_fb = tjurina_foliation(fol, f)?;
        let mu_fb = mult_foliation(fol, f)?;
        let mu_b = milnor_curve(f)?;
        let tau_b = tjurina_curve(f)?;
        Ok(PairInvariants { mu_b, tau_b, mu_fb, tau_fb, gsv: tau_fb as i64 - tau_b as i64 })
    }

    pub fn phi(&self) -> i64 {
        phi(self.mu_fb, self.tau_fb, self.gsv)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityChecks {
    /// `GSV ≤ 4τ(F,B) - 3μ(F,B)`.
    pub slack_nonnegative: bool,
    /// Equality in the bound exactly when the curve is smooth.
    pub equality_iff_smooth: bool,
    /// `μ(F,B) - τ(F,B) = μ(B) - τ(B)`.
    pub milnor_tjurina_difference: bool,
    /// `μ(F,B) = GSV + μ(B)`.
    pub multiplicity_decomposition: bool,
    /// `τ(F,B) ≤ μ(F,B)`.
    pub tjurina_at_most_multiplicity: bool,
    /// For smooth curves `τ(F,B) = μ(F,B) = GSV`; vacuous otherwise.
    pub smooth_equalities: bool,
}

impl IdentityChecks {
    pub fn all(&self) -> bool {
        self.slack_nonnegative
            && self.equality_iff_smooth
            && self.milnor_tjurina_difference
            && self.multiplicity_decomposition
            && self.tjurina_at_most_multiplicity
            && self.smooth_equalities
    }

    pub fn theorem_holds(&self) -> bool {
        self.slack_nonnegative && self.equality_iff_smooth
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    #[serde(rename = "nu_F")]
    pub nu_f: u32,
    #[serde(rename = "nu_B")]
    pub nu_b: u32,
    #[serde(rename = "mu_B")]
    pub mu_b: u64,
    #[serde(rename = "tau_B")]
    pub tau_b: u64,
    #[serde(rename = "mu_FB")]
    pub mu_fb: u64,
    #[serde(rename = "tau_FB")]
    pub tau_fb: u64,
    pub gsv: i64,
    /// `4 τ(F,B) - 3 μ(F,B) - GSV`.
    pub slack: i64,
    pub smooth: bool,
    pub irreducibility: Irreducibility,
    pub certificate: BranchCertificate,
    pub identity_checks: IdentityChecks,
}

impl InvariantReport {
    pub fn from_invariants(
        nu_f: u32,
        branch: &Separatrix,
        inv: PairInvariants,
    ) -> InvariantReport {
        let smooth = branch.is_smooth();
        let slack = 4 * inv.tau_fb as i64 - 3 * inv.mu_fb as i64 - inv.gsv;
        let identity_checks = IdentityChecks {
            slack_nonnegative: slack >= 0,
            equality_iff_smooth: (slack == 0) == smooth,
            milnor_tjurina_difference: inv.mu_fb as i64 - inv.tau_fb as i64
                == inv.mu_b as i64 - inv.tau_b as i64,
            multiplicity_decomposition: inv.mu_fb as i64 == inv.gsv + inv.mu_b as i64,
            tjurina_at_most_multiplicity: inv.tau_fb <= inv.mu_fb,
            smooth_equalities: !smooth
                || (inv.tau_fb == inv.mu_fb && inv.gsv == inv.mu_fb as i64),
        };
        InvariantReport {
            nu_f,
            nu_b: branch.multiplicity(),
            mu_b: inv.mu_b,
            tau_b: inv.tau_b,
            mu_fb: inv.mu_fb,
            tau_fb: inv.tau_fb,
            gsv: inv.gsv,
            slack,
            smooth,
            irreducibility: branch.status(),
            certificate: branch.certificate(),
            identity_checks,
        }
    }

    /// `3μ - 4τ + GSV`, i.e. `-slack`.
    pub fn phi(&self) -> i64 {
        -self.slack
    }
}

/// Full report for a pair; refuses regular points, where the bound is not stated.
pub fn check_theorem(fol: &Foliation, branch: &Separatrix) -> Result<InvariantReport, InvariantError> {
    if !fol.is_singular() {
        return Err(InvariantError::RegularFoliation);
    }
    let inv = PairInvariants::compute(fol, branch.equation())?;
    Ok(InvariantReport::from_invariants(fol.algebraic_multiplicity(), branch, inv))
}

/// Formal combination `Σ a_B B` of pairwise distinct curve germs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SeparatrixDivisor {
    components: Vec<(Separatrix, i64)>,
}

impl SeparatrixDivisor {
    pub fn new(components: Vec<(Separatrix, i64)>) -> Result<Self, InvariantError> {
        for i in 0..components.len() {
            for k in (i + 1)..components.len() {
                let (a, b) = (components[i].0.equation(), components[k].0.equation());
                if !a.is_coprime_germ(b) {
                    return Err(InvariantError::SharedComponent(i, k));
                }
            }
        }
        Ok(SeparatrixDivisor { components })
    }

    pub fn empty() -> Self {
        SeparatrixDivisor::default()
    }

    pub fn components(&self) -> &[(Separatrix, i64)] {
        &self.components
    }

    pub fn degree(&self) -> i64 {
        self.components.iter().map(|(_, a)| a).sum()
    }

    pub fn is_reduced_effective(&self) -> bool {
        self.components.iter().all(|(_, a)| *a == 1)
    }
}

/// `μ(F, Σ a_B B) = Σ a_B μ(F, B) - deg + 1`, valid for any integer coefficients;
/// equals 1 for the empty divisor.
pub fn divisor_multiplicity(fol: &Foliation, div: &SeparatrixDivisor) -> Result<i64, InvariantError> {
    let mut total = 0i64;
    for (b, a) in div.components() {
        total += a * mult_foliation(fol, b.equation())? as i64;
    }
    Ok(total - div.degree() + 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentInvariants {
    pub curve: String,
    pub mu: u64,
    pub tau: u64,
    pub gsv: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorReport {
    pub mu_div: i64,
    pub gsv_div: i64,
    #[serde(rename = "T")]
    pub t: u64,
    /// `4T - 3 mu_div`.
    pub rhs: i64,
    pub strict: bool,
    pub components: Vec<ComponentInvariants>,
    /// `(i, k, i_0(B_i, B_k))` for `i < k`.
    pub intersections: Vec<(usize, usize, u64)>,
}

/// Multiplicity, Tjurina sum and GSV index of a reduced effective divisor.
/// The GSV index of a union is `Σ GSV(F, B_j) - 2 Σ_{i<k} i_0(B_i, B_k)`.
pub fn divisor_invariants(fol: &Foliation, div: &SeparatrixDivisor) -> Result<DivisorReport, InvariantError> {
    if !div.is_reduced_effective() {
        return Err(InvariantError::NonReducedForGSV);
    }
    let mut components = Vec::new();
    for (b, _) in div.components() {
        let f = b.equation();
        let tau = tjurina_foliation(fol, f)?;
        let mu = mult_foliation(fol, f)?;
        let gsv = tau as i64 - tjurina_curve(f)? as i64;
        components.push(ComponentInvariants { curve: alloc::format!("{f}"), mu, tau, gsv });
    }
    let mut intersections = Vec::new();
    let eqs: Vec<&Poly> = div.components().iter().map(|(b, _)| b.equation()).collect();
    for i in 0..eqs.len() {
        for k in (i + 1)..eqs.len() {
            let n = intersection_multiplicity(eqs[i], eqs[k])
                .finite()
                .ok_or(InvariantError::SharedComponent(i, k))?;
            intersections.push((i, k, n));
        }
    }
    let l = components.len() as i64;
    let mu_div = components.iter().map(|c| c.mu as i64).sum::<i64>() - l + 1;
    let t = components.iter().map(|c| c.tau).sum::<u64>();
    let gsv_div = components.iter().map(|c| c.gsv).sum::<i64>()
        - 2 * intersections.iter().map(|&(_, _, n)| n as i64).sum::<i64>();
    let rhs = 4 * t as i64 - 3 * mu_div;
    Ok(DivisorReport { mu_div, gsv_div, t, rhs, strict: gsv_div < rhs, components, intersections })
}

/// Evaluates `GSV(F, 𝓑) < 4 T(F, 𝓑) - 3 μ(F, 𝓑)`; the verdict is `report.strict`.
pub fn check_corollary(fol: &Foliation, div: &SeparatrixDivisor) -> Result<DivisorReport, InvariantError> {
    if !fol.is_singular() {
        return Err(InvariantError::RegularFoliation);
    }
    divisor_invariants(fol, div)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foliation::{hamiltonian, make_foliation};

    fn p(t: &[(i64, u32, u32)]) -> Poly {
        Poly::from_int_terms(t)
    }

    fn eta(m: i64, n: i64) -> Foliation {
        make_foliation(p(&[(-n, 0, 1)]), p(&[(m, 1, 0)])).unwrap()
    }

    fn ex53() -> Foliation {
        make_foliation(p(&[(2, 7, 0), (5, 0, 5)]), p(&[(-5, 1, 4), (-3, 6, 2)])).unwrap()
    }

    #[test]
    fn curve_numbers() {
        let cusp = p(&[(1, 0, 2), (-1, 3, 0)]);
        assert_eq!(milnor_curve(&cusp), Ok(2));
        assert_eq!(tjurina_curve(&cusp), Ok(2));
        assert_eq!(milnor_curve(&Poly::x()), Ok(0));
        assert_eq!(tjurina_curve(&Poly::x()), Ok(0));
        // x y^2 is singular along y = 0.
        assert_eq!(milnor_curve(&p(&[(1, 1, 2)])), Err(InvariantError::NotIsolated));
        assert!(matches!(milnor_curve(&Poly::one()), Err(InvariantError::Foliation(_))));
    }

    #[test]
    fn eta_family_values() {
        let f = p(&[(1, 0, 2), (-1, 3, 0)]);
        let fol = eta(2, 3);
        assert_eq!(tjurina_foliation(&fol, &f), Ok(1));
        assert_eq!(mult_foliation(&fol, &f), Ok(1));
        assert_eq!(gsv(&fol, &f), Ok(2 + 3 - 6));
    }

    #[test]
    fn example_axis_branch() {
        let fol = ex53();
        assert_eq!(tjurina_foliation(&fol, &Poly::x()), Ok(5));
        assert_eq!(mult_foliation(&fol, &Poly::x()), Ok(5));
        assert_eq!(gsv(&fol, &Poly::x()), Ok(5));
    }

    #[test]
    fn not_invariant_is_rejected() {
        let line = p(&[(1, 0, 1), (-1, 1, 0)]);
        assert_eq!(
            tjurina_foliation(&eta(2, 3), &line),
            Err(InvariantError::Foliation(FoliationError::NotInvariant))
        );
    }

    #[test]
    fn hamiltonian_cusp_has_zero_gsv() {
        let f = p(&[(1, 0, 2), (-1, 3, 0)]);
        let fol = hamiltonian(&f).unwrap();
        assert_eq!(gsv(&fol, &f), Ok(0));
        assert_eq!(mult_foliation(&fol, &f), Ok(2));
    }

    #[test]
    fn regular_foliation_refused() {
        let fol = make_foliation(Poly::one(), Poly::zero()).unwrap();
        let b = Separatrix::new(Poly::y(), false).unwrap();
        assert_eq!(check_theorem(&fol, &b), Err(InvariantError::RegularFoliation));
    }

    #[test]
    fn empty_and_single_divisors() {
        let fol = ex53();
        assert_eq!(divisor_multiplicity(&fol, &SeparatrixDivisor::empty()), Ok(1));
        let single = SeparatrixDivisor::new(alloc::vec![(Separatrix::new(Poly::x(), false).unwrap(), 1)]).unwrap();
        let r = divisor_invariants(&fol, &single).unwrap();
        assert_eq!((r.mu_div, r.t, r.gsv_div, r.rhs, r.strict), (5, 5, 5, 5, false));
    }

    #[test]
    fn radial_axes() {
        let fol = make_foliation(p(&[(-1, 0, 1)]), Poly::x()).unwrap();
        let d = SeparatrixDivisor::new(alloc::vec![
            (Separatrix::new(Poly::x(), false).unwrap(), 1),
            (Separatrix::new(Poly::y(), false).unwrap(), 1),
        ])
        .unwrap();
        let r = check_corollary(&fol, &d).unwrap();
        assert_eq!((r.gsv_div, r.mu_div, r.t, r.rhs, r.strict), (0, 1, 2, 5, true));
    }

    #[test]
    fn non_reduced_divisors() {
        let fol = ex53();
        let x = Separatrix::new(Poly::x(), false).unwrap();
        let twice = SeparatrixDivisor::new(alloc::vec![(x.clone(), 2)]).unwrap();
        assert_eq!(divisor_invariants(&fol, &twice), Err(InvariantError::NonReducedForGSV));
        // 2*mu - 2 + 1 with mu = 5
        assert_eq!(divisor_multiplicity(&fol, &twice), Ok(9));
        let dup = SeparatrixDivisor::new(alloc::vec![(x.clone(), 1), (x, -1)]);
        assert_eq!(dup, Err(InvariantError::SharedComponent(0, 1)));
    }
}
