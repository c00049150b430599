//! Newton polygons, branch certification and truncated parametrizations.

use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::blowup::blowup_branch;
use crate::foliation::Foliation;
use crate::poly::{Monomial, Poly, Rat};

/// Edge of the local Newton polygon between two support points `(i, j)`
/// (exponent of `x`, exponent of `y`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub start: (u32, u32),
    pub end: (u32, u32),
    /// `|Δj / Δi|` in lowest terms.
    #[serde(with = "crate::poly::rat_serde")]
    pub inclination: Rat,
}

impl Segment {
    /// Lattice length `gcd(Δi, Δj)`.
    pub fn lattice_length(&self) -> u32 {
        (self.end.0 - self.start.0).gcd(&(self.start.1 - self.end.1))
    }

    /// Coefficients `c_k` of the monomials at lattice steps `k = 0..=len` from
    /// `start`; the characteristic polynomial is `Σ c_k t^k`.
    pub fn characteristic(&self, f: &Poly) -> Vec<Rat> {
        let g = self.lattice_length();
        let di = (self.end.0 - self.start.0) / g;
        let dj = (self.start.1 - self.end.1) / g;
        (0..=g)
            .map(|k| f.coeff(Monomial::new(self.start.0 + k * di, self.start.1 - k * dj)))
            .collect()
    }
}

/// Compact edges of the lower-left convex hull of `supp(f)`, ordered by
/// increasing `x` exponent; inclinations strictly decrease.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolygon {
    pub segments: Vec<Segment>,
}

pub fn newton_polygon(f: &Poly) -> NewtonPolygon {
    // For each y exponent keep the least x exponent, then walk from the
    // top-left point, always taking the steepest descent.
    let mut best: alloc::collections::BTreeMap<u32, u32> = alloc::collections::BTreeMap::new();
    for (m, _) in f.terms() {
        let e = best.entry(m.y).or_insert(m.x);
        if m.x < *e {
            *e = m.x;
        }
    }
    let pts: Vec<(u32, u32)> = best.into_iter().map(|(j, i)| (i, j)).collect();
    let mut segments = Vec::new();
    let Some(&first) = pts.iter().min_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1))) else {
        return NewtonPolygon { segments };
    };
    let mut cur = first;
    loop {
        // Candidates strictly right and strictly below.
        let next = pts
            .iter()
            .filter(|p| p.0 > cur.0 && p.1 < cur.1)
            .min_by(|a, b| {
                // Compare slopes (a.1 - cur.1)/(a.0 - cur.0); steepest (most negative) first,
                // ties taken by the farther point.
                let lhs = (i64::from(a.1) - i64::from(cur.1)) * (i64::from(b.0) - i64::from(cur.0));
                let rhs = (i64::from(b.1) - i64::from(cur.1)) * (i64::from(a.0) - i64::from(cur.0));
                lhs.cmp(&rhs).then(b.0.cmp(&a.0))
            })
            .copied();
        let Some(n) = next else { break };
        let inclination = Rat::new(
            (i64::from(cur.1) - i64::from(n.1)).into(),
            (i64::from(n.0) - i64::from(cur.0)).into(),
        );
        segments.push(Segment { start: cur, end: n, inclination });
        cur = n;
    }
    NewtonPolygon { segments }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BranchCertificate {
    Yes,
    No,
    Unknown,
}

/// Blow-up steps after which certification gives up.
pub const CERTIFY_MAX_STEPS: u32 = 64;

/// True iff `Σ c_k t^k` is `c (t - r)^g` up to the trailing zero check.
fn is_full_power(c: &[Rat]) -> bool {
    let g = c.len() - 1;
    let lead = &c[g];
    if lead.is_zero() || c[0].is_zero() {
        return false;
    }
    let r = -(&c[g - 1] / (lead * Rat::from_integer(g.into())));
    // (t - r)^g coefficients by binomial recursion.
    let mut binom = Rat::one();
    let mut neg_r_pow: Vec<Rat> = alloc::vec![Rat::one()];
    for _ in 0..g {
        let next = neg_r_pow.last().unwrap() * -&r;
        neg_r_pow.push(next);
    }
    for k in (0..=g).rev() {
        // coefficient of t^k is C(g, k) (-r)^(g-k)
        if c[k] != lead * &binom * &neg_r_pow[g - k] {
            return false;
        }
        if k > 0 {
            binom = binom * Rat::from_integer(k.into()) / Rat::from_integer((g - k + 1).into());
        }
    }
    true
}

/// Decides whether the squarefree germ `f` is irreducible over `C`.
///
/// Each round looks at the Newton polygon: several edges, or an edge whose
/// characteristic polynomial has two distinct complex roots, split the germ;
/// a single edge of lattice length 1 proves irreducibility. In the remaining
/// case (one edge, `c (t - r)^g`, `g > 1`) the germ is replaced by its strict
/// transform under one blow-up, which preserves irreducibility both ways.
/// `Unknown` only when [`CERTIFY_MAX_STEPS`] rounds are exhausted.
pub fn certify_branch(f: &Poly) -> BranchCertificate {
    let mut f = f.clone();
    for _ in 0..CERTIFY_MAX_STEPS {
        match f.ord() {
            None => return BranchCertificate::No,
            Some(0) => return BranchCertificate::No,
            Some(1) => return BranchCertificate::Yes,
            Some(_) => {}
        }
        if f.x_adic_valuation() != Some(0) || f.y_adic_valuation() != Some(0) {
            return BranchCertificate::No;
        }
        let np = newton_polygon(&f);
        if np.segments.len() != 1 {
            return BranchCertificate::No;
        }
        let seg = &np.segments[0];
        if seg.lattice_length() == 1 {
            return BranchCertificate::Yes;
        }
        if !is_full_power(&seg.characteristic(&f)) {
            return BranchCertificate::No;
        }
        match blowup_branch(&f) {
            Ok(b) => f = b.strict,
            Err(_) => return BranchCertificate::No,
        }
    }
    BranchCertificate::Unknown
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PuiseuxError {
    #[error("parametrization is a reparametrization by t^{0}")]
    NotPrimitive(u32),
    #[error("both series are zero")]
    ZeroParametrization,
    #[error("series must have zero constant term")]
    NotCentered,
    #[error("series must be univariate in t")]
    NotUnivariate,
    #[error("order not visible below truncation {0}; default bound is 4*ord(f)*deg(f)")]
    TruncationInsufficient(u32),
}

/// Truncated parametrization `t -> (x(t), y(t))`. Series are univariate
/// polynomials stored in the `x` slot of [`Poly`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parametrization {
    x: Poly,
    y: Poly,
    order: u32,
}

fn series_exponents(s: &Poly) -> impl Iterator<Item = u32> + '_ {
    s.terms().map(|(m, _)| m.x)
}

impl Parametrization {
    /// `order` is the truncation `N`: coefficients of `t^k`, `k > N`, are unknown.
    pub fn new(x: Poly, y: Poly, order: u32) -> Result<Self, PuiseuxError> {
        if x.degree_in_y() > 0 || y.degree_in_y() > 0 {
            return Err(PuiseuxError::NotUnivariate);
        }
        if !x.vanishes_at_origin() || !y.vanishes_at_origin() {
            return Err(PuiseuxError::NotCentered);
        }
        let x = truncated_series(&x, order);
        let y = truncated_series(&y, order);
        if x.is_zero() && y.is_zero() {
            return Err(PuiseuxError::ZeroParametrization);
        }
        let g = series_exponents(&x)
            .chain(series_exponents(&y))
            .fold(0u32, |acc, e| acc.gcd(&e));
        if g > 1 {
            return Err(PuiseuxError::NotPrimitive(g));
        }
        Ok(Parametrization { x, y, order })
    }

    pub fn x_series(&self) -> &Poly {
        &self.x
    }

    pub fn y_series(&self) -> &Poly {
        &self.y
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Same series cut at `n ≤ order`.
    pub fn restricted(&self, n: u32) -> Result<Self, PuiseuxError> {
        Parametrization::new(self.x.clone(), self.y.clone(), n.min(self.order))
    }

    /// `g(x(t), y(t))` modulo `t^(N+1)`.
    pub fn pullback(&self, g: &Poly) -> Poly {
        truncated_series(&g.substitute(&self.x, &self.y), self.order)
    }

    /// `ord_t g(γ(t))` when visible below the truncation.
    pub fn order_of(&self, g: &Poly) -> Result<u32, PuiseuxError> {
        self.pullback(g).ord().ok_or(PuiseuxError::TruncationInsufficient(self.order))
    }
}

/// Univariate truncation: drops `t^k`, `k > n`, from a series stored in the `x` slot.
fn truncated_series(s: &Poly, n: u32) -> Poly {
    Poly::from_terms(s.terms().filter(|(m, _)| m.x <= n).map(|(m, c)| (*m, c.clone())))
}

/// `4 * ord(f) * deg(f)`.
pub fn default_truncation_bound(f: &Poly) -> u32 {
    4 * f.ord().unwrap_or(0) * f.degree().unwrap_or(0)
}

/// True iff `f(x(t), y(t)) ≡ 0` through degree `N`.
pub fn verify_parametrization(f: &Poly, gamma: &Parametrization) -> bool {
    gamma.pullback(f).is_zero()
}

/// `ord_t Q(γ) - ord_t x(γ) + 1`, or the `P`, `y` variant when `x(t) ≡ 0`.
pub fn mult_via_parametrization(fol: &Foliation, gamma: &Parametrization) -> Result<u64, PuiseuxError> {
    let (component, coordinate) = if gamma.x_series().is_zero() {
        (fol.p(), gamma.y_series())
    } else {
        (fol.q(), gamma.x_series())
    };
    let lhs = gamma.order_of(component)?;
    let rhs = coordinate.ord().expect("nonzero series");
    Ok(u64::from(lhs + 1).saturating_sub(u64::from(rhs)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foliation::{hamiltonian, make_foliation};
    use crate::poly::ratio;

    fn p(t: &[(i64, u32, u32)]) -> Poly {
        Poly::from_int_terms(t)
    }

    fn t(terms: &[(i64, u32)]) -> Poly {
        Poly::from_terms(terms.iter().map(|&(c, e)| (Monomial::new(e, 0), Rat::from_integer(c.into()))))
    }

    #[test]
    fn polygons() {
        let cusp = newton_polygon(&p(&[(1, 0, 2), (-1, 3, 0)]));
        assert_eq!(cusp.segments.len(), 1);
        assert_eq!((cusp.segments[0].start, cusp.segments[0].end), ((0, 2), (3, 0)));
        assert_eq!(cusp.segments[0].inclination, ratio(2, 3));
        let line_sum = newton_polygon(&p(&[(1, 1, 0), (1, 0, 1)]));
        assert_eq!((line_sum.segments[0].start, line_sum.segments[0].end), ((0, 1), (1, 0)));
        assert!(newton_polygon(&p(&[(1, 1, 1)])).segments.is_empty());
        let node = newton_polygon(&p(&[(1, 0, 2), (-1, 2, 0)]));
        assert_eq!(node.segments.len(), 1);
        assert_eq!(node.segments[0].lattice_length(), 2);
        // y^3 - x^2 y + x^5: vertices (0,3), (2,1), (5,0).
        let two = newton_polygon(&p(&[(1, 0, 3), (-1, 2, 1), (1, 5, 0)]));
        assert_eq!(two.segments.len(), 2);
        assert!(two.segments[0].inclination > two.segments[1].inclination);
    }

    #[test]
    fn certificates() {
        assert_eq!(certify_branch(&p(&[(1, 0, 2), (-1, 3, 0)])), BranchCertificate::Yes);
        assert_eq!(certify_branch(&p(&[(1, 0, 2), (-1, 2, 0)])), BranchCertificate::No);
        assert_eq!(certify_branch(&Poly::x()), BranchCertificate::Yes);
        // (y^2 - x^3)^2 - 4 x^5 y - x^7: genus-two branch, needs blow-ups.
        let g2 = p(&[(1, 0, 4), (-2, 3, 2), (1, 6, 0), (-4, 5, 1), (-1, 7, 0)]);
        assert_eq!(certify_branch(&g2), BranchCertificate::Yes);
        // (y^2 - x^3)(y^2 + x^3): two distinct characteristic roots.
        assert_eq!(certify_branch(&p(&[(1, 0, 4), (-1, 6, 0)])), BranchCertificate::No);
        // (y^2 - x^3)^2 - x^9: same polygon as the genus-two branch, splits later.
        let split = p(&[(1, 0, 4), (-2, 3, 2), (1, 6, 0), (-1, 9, 0)]);
        assert_eq!(certify_branch(&split), BranchCertificate::No);
        let irrational = p(&[(1, 0, 4), (-4, 2, 2), (4, 4, 0), (-1, 5, 0)]);
        assert_eq!(certify_branch(&irrational), BranchCertificate::No);
        for n in 2..=9u32 {
            for m in (n + 1)..=9 {
                if n.gcd(&m) == 1 {
                    let f = p(&[(1, 0, n), (1, m, 0)]);
                    assert_eq!(certify_branch(&f), BranchCertificate::Yes, "y^{n} + x^{m}");
                }
            }
        }
    }

    #[test]
    fn parametrizations() {
        let cusp = p(&[(1, 0, 2), (-1, 3, 0)]);
        let g = Parametrization::new(t(&[(1, 2)]), t(&[(1, 3)]), 24).unwrap();
        assert!(verify_parametrization(&cusp, &g));
        let bad = Parametrization::new(t(&[(1, 2)]), t(&[(1, 3), (1, 4)]), 24).unwrap();
        assert!(!verify_parametrization(&cusp, &bad));
        assert_eq!(
            Parametrization::new(t(&[(1, 4)]), t(&[(1, 6)]), 24),
            Err(PuiseuxError::NotPrimitive(2))
        );
        assert_eq!(default_truncation_bound(&cusp), 24);
    }

    #[test]
    fn multiplicities() {
        let eta = make_foliation(p(&[(-3, 0, 1)]), p(&[(2, 1, 0)])).unwrap();
        let g = Parametrization::new(t(&[(1, 2)]), t(&[(1, 3)]), 24).unwrap();
        assert_eq!(mult_via_parametrization(&eta, &g), Ok(1));

        let f53 = make_foliation(p(&[(2, 7, 0), (5, 0, 5)]), p(&[(-5, 1, 4), (-3, 6, 2)])).unwrap();
        let axis = Parametrization::new(Poly::zero(), t(&[(1, 1)]), 20).unwrap();
        assert_eq!(mult_via_parametrization(&f53, &axis), Ok(5));

        let h = hamiltonian(&p(&[(1, 0, 2), (-1, 3, 0)])).unwrap();
        assert_eq!(mult_via_parametrization(&h, &g), Ok(2));

        let short = Parametrization::new(Poly::zero(), t(&[(1, 1)]), 3).unwrap();
        assert_eq!(mult_via_parametrization(&f53, &short), Err(PuiseuxError::TruncationInsufficient(3)));
    }
}
