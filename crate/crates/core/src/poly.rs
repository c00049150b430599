//! Sparse bivariate polynomials with exact rational coefficients.
//!
//! All germs handled by this crate are represented by polynomials in `x`, `y`.
//! A convergent series germ has to be passed as a jet of high enough order;
//! every invariant computed here is finitely determined, so a sufficiently
//! long jet gives the same answer as the series.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose `Ord` is the
//! local degree order: ascending total degree, ties broken by descending
//! `x` exponent. The first entry of a polynomial is therefore its leading
//! term for the local order and the last entry is its leading term for the
//! global graded order used by exact division.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("zero polynomial has no lowest form")]
    ZeroPolynomial,
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("form is not a power of a single rational linear form")]
    NotUnitangent,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
}

/// Exponent pair `x^x * y^y`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0 };

    pub const fn new(x: u32, y: u32) -> Self {
        Monomial { x, y }
    }

    pub fn degree(self) -> u32 {
        self.x.checked_add(self.y).expect("monomial degree overflow")
    }

    pub fn divides(self, other: Monomial) -> bool {
        self.x <= other.x && self.y <= other.y
    }

    pub fn checked_div(self, other: Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial::new(self.x - other.x, self.y - other.y))
        } else {
            None
        }
    }

    pub fn lcm(self, other: Monomial) -> Monomial {
        Monomial::new(self.x.max(other.x), self.y.max(other.y))
    }

    pub fn is_coprime(self, other: Monomial) -> bool {
        (self.x == 0 || other.x == 0) && (self.y == 0 || other.y == 0)
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial::new(
            self.x.checked_add(rhs.x).expect("exponent overflow"),
            self.y.checked_add(rhs.y).expect("exponent overflow"),
        )
    }
}

impl Ord for Monomial {
    /// Local degree order: `a < b` means `a` is the *leading* one.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.x.cmp(&self.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factor = |f: &mut fmt::Formatter<'_>, v: &str, e: u32| match e {
            1 => write!(f, "{v}"),
            e => write!(f, "{v}^{e}"),
        };
        match (self.x, self.y) {
            (0, 0) => write!(f, "1"),
            (a, 0) => factor(f, "x", a),
            (0, b) => factor(f, "y", b),
            (a, b) => {
                factor(f, "x", a)?;
                write!(f, "*")?;
                factor(f, "y", b)
            }
        }
    }
}

/// Polynomial in `x`, `y` over the rationals. No zero coefficient is ever
/// stored, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::term(c, Monomial::ONE)
    }

    pub fn term(c: Rat, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn x() -> Self {
        Poly::term(Rat::one(), Monomial::new(1, 0))
    }

    pub fn y() -> Self {
        Poly::term(Rat::one(), Monomial::new(0, 1))
    }

    pub fn monomial(x: u32, y: u32) -> Self {
        Poly::term(Rat::one(), Monomial::new(x, y))
    }

    /// Builds a polynomial from integer-coefficient terms `(c, i, j)` meaning `c x^i y^j`.
    pub fn from_int_terms(terms: &[(i64, u32, u32)]) -> Self {
        let mut p = Poly::zero();
        for &(c, i, j) in terms {
            p.add_term(rat(c), Monomial::new(i, j));
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(terms: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(c, m);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in local order, leading term first.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Monomial) -> Rat {
        self.terms.get(&m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(Monomial::ONE)
    }

    /// True iff the polynomial does not vanish at the origin, i.e. it is a unit germ.
    pub fn is_unit_germ(&self) -> bool {
        self.terms.contains_key(&Monomial::ONE)
    }

    pub fn vanishes_at_origin(&self) -> bool {
        !self.is_unit_germ()
    }

    pub fn add_term(&mut self, c: Rat, m: Monomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// `self -= c * m * g`, in place.
    pub fn sub_scaled(&mut self, c: &Rat, m: Monomial, g: &Poly) {
        for (gm, gc) in &g.terms {
            self.add_term(-(c * gc), m * *gm);
        }
    }

    /// Order at the origin: least total degree of a term, `None` for the zero polynomial.
    pub fn ord(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree())
    }

    /// Largest total degree of a term, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn degree_in_x(&self) -> u32 {
        self.terms.keys().map(|m| m.x).max().unwrap_or(0)
    }

    pub fn degree_in_y(&self) -> u32 {
        self.terms.keys().map(|m| m.y).max().unwrap_or(0)
    }

    /// Leading term for the local degree order.
    pub fn local_leading(&self) -> Option<(Monomial, &Rat)> {
        self.terms.iter().next().map(|(m, c)| (*m, c))
    }

    /// Leading term for the global graded order (highest degree, then highest `y`).
    pub fn global_leading(&self) -> Option<(Monomial, &Rat)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    /// Écart: degree of the polynomial minus degree of its local leading monomial.
    pub fn ecart(&self) -> u32 {
        match (self.degree(), self.ord()) {
            (Some(d), Some(o)) => d - o,
            _ => 0,
        }
    }

    /// Sum of the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Drops every term of total degree `>= d`.
    pub fn truncate_below(&self, d: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .take_while(|(m, _)| m.degree() < d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn lowest_form(&self) -> Result<HomogeneousForm, PolyError> {
        let d = self.ord().ok_or(PolyError::ZeroPolynomial)?;
        HomogeneousForm::from_poly(&self.homogeneous_part(d))
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(k, v)| (*k * m, v.clone())).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative with respect to `x`.
    pub fn dx(&self) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.x > 0)
                .map(|(m, c)| (Monomial::new(m.x - 1, m.y), c * rat(i64::from(m.x)))),
        )
    }

    /// Partial derivative with respect to `y`.
    pub fn dy(&self) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.y > 0)
                .map(|(m, c)| (Monomial::new(m.x, m.y - 1), c * rat(i64::from(m.y)))),
        )
    }

    /// Ring homomorphism `x -> u`, `y -> v`.
    pub fn substitute(&self, u: &Poly, v: &Poly) -> Poly {
        let mut upow = vec![Poly::one()];
        let mut vpow = vec![Poly::one()];
        for _ in 0..self.degree_in_x() {
            let next = upow.last().unwrap() * u;
            upow.push(next);
        }
        for _ in 0..self.degree_in_y() {
            let next = vpow.last().unwrap() * v;
            vpow.push(next);
        }
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let t = &upow[m.x as usize] * &vpow[m.y as usize];
            out.sub_scaled(&-c, Monomial::ONE, &t);
        }
        out
    }

    /// `self(x + a, y + b)`.
    pub fn translate(&self, a: &Rat, b: &Rat) -> Poly {
        if a.is_zero() && b.is_zero() {
            return self.clone();
        }
        let u = &Poly::x() + &Poly::constant(a.clone());
        let v = &Poly::y() + &Poly::constant(b.clone());
        self.substitute(&u, &v)
    }

    /// Exact quotient `self / g`, failing if `g` does not divide `self`.
    pub fn exact_divide(&self, g: &Poly) -> Result<Poly, PolyError> {
        let (gm, gc) = g.global_leading().ok_or(PolyError::NotDivisible)?;
        let gc = gc.clone();
        let mut r = self.clone();
        let mut q = Poly::zero();
        while let Some((rm, rc)) = r.global_leading() {
            let m = rm.checked_div(gm).ok_or(PolyError::NotDivisible)?;
            let c = rc / &gc;
            r.sub_scaled(&c, m, g);
            q.add_term(c, m);
        }
        Ok(q)
    }

    pub fn divides(&self, f: &Poly) -> bool {
        !self.is_zero() && f.exact_divide(self).is_ok()
    }

    /// Largest `k` with `x^k` dividing every term.
    pub fn x_adic_valuation(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.x).min()
    }

    pub fn y_adic_valuation(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.y).min()
    }

    /// Divides every exponent by the monomial `m`; the caller guarantees divisibility.
    pub fn div_monomial(&self, m: Monomial) -> Option<Poly> {
        let mut terms = BTreeMap::new();
        for (k, v) in &self.terms {
            terms.insert(k.checked_div(m)?, v.clone());
        }
        Some(Poly { terms })
    }

    /// Scales so that the global leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.global_leading() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => Poly::zero(),
        }
    }

    /// Scales so that the local leading coefficient is 1.
    pub fn local_monic(&self) -> Poly {
        match self.local_leading() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => Poly::zero(),
        }
    }

    /// Integer multiple with coprime integer coefficients (sign fixed by the global leading term).
    pub fn primitive_integer(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lcm_den = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .terms
            .values()
            .map(|c| (c * Rat::from_integer(lcm_den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let sign = if self.global_leading().unwrap().1.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let scale = Rat::new(lcm_den * sign, g);
        self.scale(&scale)
    }

    /// Coefficient of `y^j` as a polynomial in `x` only.
    fn y_coefficient(&self, j: u32) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.y == j)
                .map(|(m, c)| (Monomial::new(m.x, 0), c.clone())),
        )
    }

    fn y_degree_nonzero(&self) -> u32 {
        self.degree_in_y()
    }

    fn is_x_only(&self) -> bool {
        self.terms.keys().all(|m| m.y == 0)
    }

    /// Greatest common divisor in `Q[x, y]`, normalized to be monic for the global order.
    /// `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if coprime_by_specialization(self, other) {
            return Poly::one();
        }
        let (ca, pa) = split_content(self);
        let (cb, pb) = split_content(other);
        let c = univariate_gcd(&ca, &cb);
        let mut a = pa;
        let mut b = pb;
        if a.y_degree_nonzero() < b.y_degree_nonzero() {
            core::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = pseudo_remainder(&a, &b);
            a = b;
            b = if r.is_zero() { r } else { split_content(&r).1 };
        }
        let g = if a.y_degree_nonzero() == 0 { Poly::one() } else { split_content(&a).1 };
        (&c * &g).monic()
    }

    /// True iff `self` and `other` share no common factor through the origin.
    pub fn is_coprime_germ(&self, other: &Poly) -> bool {
        self.gcd(other).is_unit_germ()
    }

    /// Squarefree as a germ: no repeated factor vanishing at the origin.
    pub fn is_squarefree_germ(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        let g = self.gcd(&self.dx()).gcd(&self.dy());
        g.is_unit_germ()
    }
}

/// Sufficient test for `gcd(a, b) = 1`. If `g` divides both and `a(x0, y)` keeps
/// its `y`-degree, then `g(x0, y)` keeps its own and divides both
/// specializations; coprime specializations therefore force `deg_y g = 0`.
/// The same in the other variable gives `g` constant.
fn coprime_by_specialization(a: &Poly, b: &Poly) -> bool {
    let t = Poly::x();
    let free_in = |a: &Poly, b: &Poly, swap: bool| -> bool {
        let deg = |p: &Poly| if swap { p.degree_in_x() } else { p.degree_in_y() };
        if deg(a) == 0 && deg(b) == 0 {
            return true;
        }
        (0..6i64).map(|k| if k % 2 == 0 { k / 2 + 1 } else { -(k / 2) - 1 }).any(|v| {
            let c = Poly::constant(rat(v));
            let (sa, sb) =
                if swap { (a.substitute(&t, &c), b.substitute(&t, &c)) } else { (a.substitute(&c, &t), b.substitute(&c, &t)) };
            let kept = |p: &Poly, s: &Poly| deg(p) > 0 && s.degree_in_x() == deg(p);
            (kept(a, &sa) || kept(b, &sb)) && univariate_gcd(&sa, &sb).degree() == Some(0)
        })
    };
    free_in(a, b, false) && free_in(a, b, true)
}

/// Splits `f` into its content (a polynomial in `x`) and primitive part, both seen in `Q[x][y]`.
fn split_content(f: &Poly) -> (Poly, Poly) {
    let mut content = Poly::zero();
    for j in 0..=f.degree_in_y() {
        let cj = f.y_coefficient(j);
        if !cj.is_zero() {
            content = univariate_gcd(&content, &cj);
            if content.ord() == Some(0) && content.len() == 1 {
                break;
            }
        }
    }
    let prim = f.exact_divide(&content).expect("content divides");
    (content, prim)
}

/// `lc(b)^k * a mod b` in `Q[x][y]`, with `k` large enough to stay polynomial.
fn pseudo_remainder(a: &Poly, b: &Poly) -> Poly {
    let db = b.degree_in_y();
    let lb = b.y_coefficient(db);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in_y() >= db {
        let dr = r.degree_in_y();
        let lr = r.y_coefficient(dr);
        let shifted = b.mul_monomial(Monomial::new(0, dr - db));
        r = &(&lb * &r) - &(&lr * &shifted);
    }
    r
}

/// Univariate gcd of two `x`-only polynomials, monic, `gcd(0,0) = 0`.
fn univariate_gcd(a: &Poly, b: &Poly) -> Poly {
    debug_assert!(a.is_x_only() && b.is_x_only());
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let r = univariate_rem(&a, &b);
        a = b;
        b = r;
    }
    a.monic()
}

fn univariate_rem(a: &Poly, b: &Poly) -> Poly {
    let (bm, bc) = b.global_leading().expect("nonzero divisor");
    let bc = bc.clone();
    let mut r = a.clone();
    while let Some((rm, rc)) = r.global_leading() {
        if rm.x < bm.x {
            break;
        }
        let c = rc / &bc;
        r.sub_scaled(&c, Monomial::new(rm.x - bm.x, 0), b);
    }
    r
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl fmt::Display for Poly {
    /// Canonical printer; the output parses back to the same polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *m == Monomial::ONE {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Serde adapter writing a rational as `"n"` or `"n/d"`.
pub mod rat_serde {
    use super::Rat;
    use alloc::string::String;
    use core::str::FromStr;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let text = String::deserialize(d)?;
        Rat::from_str(text.trim()).map_err(serde::de::Error::custom)
    }

    pub mod option {
        use super::Rat;
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(r: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
            match r {
                Some(r) => s.collect_str(r),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rat>, D::Error> {
            #[derive(Deserialize)]
            struct W(#[serde(with = "super")] Rat);
            Ok(Option::<W>::deserialize(d)?.map(|w| w.0))
        }
    }
}

impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = <alloc::string::String as serde::Deserialize>::deserialize(d)?;
        crate::parse::parse_polynomial(&text).map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(c.clone(), *m);
        }
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(-c.clone(), *m);
        }
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(c1 * c2, *m1 * *m2);
            }
        }
        out
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Homogeneous form of degree `degree`: `coeffs[i]` multiplies `x^i y^(degree - i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousForm {
    degree: u32,
    coeffs: Vec<Rat>,
}

impl HomogeneousForm {
    pub fn from_poly(p: &Poly) -> Result<Self, PolyError> {
        let degree = p.ord().ok_or(PolyError::ZeroPolynomial)?;
        if p.degree() != Some(degree) {
            return Err(PolyError::NotHomogeneous);
        }
        let mut coeffs = vec![Rat::zero(); degree as usize + 1];
        for (m, c) in p.terms() {
            coeffs[m.x as usize] = c.clone();
        }
        Ok(HomogeneousForm { degree, coeffs })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Coefficient of `x^i y^(degree - i)`.
    pub fn coeff(&self, i: u32) -> &Rat {
        &self.coeffs[i as usize]
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::new(i as u32, self.degree - i as u32), c.clone())),
        )
    }

    /// The unique `(a, b)`, first nonzero entry equal to 1, with
    /// `form = c (a x + b y)^degree`.
    pub fn unitangent_root(&self) -> Result<(Rat, Rat), PolyError> {
        let d = self.degree;
        if d == 0 {
            return Err(PolyError::NotUnitangent);
        }
        let lead = &self.coeffs[d as usize];
        if lead.is_zero() {
            // a = 0 forces form = c y^d.
            if self.coeffs[1..].iter().all(Zero::is_zero) && !self.coeffs[0].is_zero() {
                return Ok((Rat::zero(), Rat::one()));
            }
            return Err(PolyError::NotUnitangent);
        }
        // form = lead (x + b y)^d, so the x^(d-1) y coefficient is lead * d * b.
        let b = &self.coeffs[d as usize - 1] / (lead * rat(i64::from(d)));
        let root = HomogeneousForm::linear_power(&Rat::one(), &b, d).to_poly().scale(lead);
        if root == self.to_poly() {
            Ok((Rat::one(), b))
        } else {
            Err(PolyError::NotUnitangent)
        }
    }

    /// `(a x + b y)^d`.
    pub fn linear_power(a: &Rat, b: &Rat, d: u32) -> HomogeneousForm {
        let l = &Poly::x().scale(a) + &Poly::y().scale(b);
        let p = l.pow(d);
        if p.is_zero() {
            return HomogeneousForm { degree: d, coeffs: vec![Rat::zero(); d as usize + 1] };
        }
        HomogeneousForm::from_poly(&p).expect("power of a linear form is homogeneous")
    }
}

pub fn ord_at_origin(f: &Poly) -> Option<u32> {
    f.ord()
}

pub fn lowest_form(f: &Poly) -> Result<HomogeneousForm, PolyError> {
    f.lowest_form()
}

pub fn unitangent_root(form: &HomogeneousForm) -> Result<(Rat, Rat), PolyError> {
    form.unitangent_root()
}

pub fn exact_divide(f: &Poly, g: &Poly) -> Result<Poly, PolyError> {
    f.exact_divide(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(t: &[(i64, u32, u32)]) -> Poly {
        Poly::from_int_terms(t)
    }

    #[test]
    fn order_examples() {
        assert_eq!(p(&[(1, 2, 1), (1, 0, 4)]).ord(), Some(3));
        assert_eq!(Poly::zero().ord(), None);
        assert_eq!(p(&[(1, 0, 0), (1, 1, 0)]).ord(), Some(0));
    }

    #[test]
    fn lowest_form_examples() {
        let cusp = p(&[(1, 0, 2), (-1, 3, 0)]);
        assert_eq!(cusp.lowest_form().unwrap().to_poly(), Poly::monomial(0, 2));
        let f = p(&[(1, 2, 0), (2, 1, 1), (1, 0, 2), (1, 5, 0)]);
        assert_eq!(f.lowest_form().unwrap().to_poly(), p(&[(1, 2, 0), (2, 1, 1), (1, 0, 2)]));
        assert_eq!(Poly::x().lowest_form().unwrap().to_poly(), Poly::x());
        assert_eq!(Poly::zero().lowest_form(), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn unitangent_examples() {
        let sq = p(&[(1, 2, 0), (2, 1, 1), (1, 0, 2)]).lowest_form().unwrap();
        assert_eq!(sq.unitangent_root().unwrap(), (rat(1), rat(1)));
        let cusp = p(&[(1, 0, 2), (-1, 3, 0)]).lowest_form().unwrap();
        assert_eq!(cusp.unitangent_root().unwrap(), (rat(0), rat(1)));
        let node = p(&[(1, 0, 2), (-1, 2, 0)]).lowest_form().unwrap();
        assert_eq!(node.unitangent_root(), Err(PolyError::NotUnitangent));
        let vertical = p(&[(4, 3, 0)]).lowest_form().unwrap();
        assert_eq!(vertical.unitangent_root().unwrap(), (rat(1), rat(0)));
        let scaled = p(&[(9, 2, 0), (-6, 1, 1), (1, 0, 2)]).lowest_form().unwrap();
        assert_eq!(scaled.unitangent_root().unwrap(), (rat(1), ratio(-1, 3)));
        // y^2 + x*y is not a pure power.
        let mixed = p(&[(1, 0, 2), (1, 1, 1)]).lowest_form().unwrap();
        assert_eq!(mixed.unitangent_root(), Err(PolyError::NotUnitangent));
    }

    #[test]
    fn exact_divide_examples() {
        assert_eq!(p(&[(1, 2, 1)]).exact_divide(&Poly::x()).unwrap(), p(&[(1, 1, 1)]));
        assert_eq!(Poly::x().exact_divide(&Poly::y()), Err(PolyError::NotDivisible));
        let f = p(&[(1, 0, 2), (-1, 3, 0)]);
        let prod = f.scale(&rat(-6));
        assert_eq!(prod.exact_divide(&f).unwrap(), Poly::constant(rat(-6)));
    }

    #[test]
    fn gcd_and_coprimality() {
        let xy = p(&[(1, 1, 1)]);
        let xxy = p(&[(1, 2, 0), (1, 1, 1)]);
        assert_eq!(xy.gcd(&xxy), Poly::x());
        assert!(!xy.is_coprime_germ(&xxy));
        let a = &p(&[(1, 0, 1), (-1, 1, 0)]) * &p(&[(1, 0, 0), (1, 1, 0)]);
        let b = &p(&[(1, 0, 1), (-1, 1, 0)]) * &p(&[(1, 0, 2), (3, 1, 0)]);
        assert_eq!(a.gcd(&b), p(&[(1, 0, 1), (-1, 1, 0)]).monic());
        // Common factor 1 + x is a unit germ.
        let u = p(&[(1, 0, 0), (1, 1, 0)]);
        assert!((&u * &Poly::x()).is_coprime_germ(&(&u * &Poly::y())));
    }

    #[test]
    fn squarefree() {
        assert!(p(&[(1, 0, 2), (-1, 3, 0)]).is_squarefree_germ());
        assert!(!p(&[(1, 2, 1)]).is_squarefree_germ());
        let sq = p(&[(1, 0, 2), (-1, 3, 0)]).pow(2);
        assert!(!sq.is_squarefree_germ());
    }

    #[test]
    fn printer() {
        let f = p(&[(1, 0, 2), (-1, 3, 0)]);
        assert_eq!(alloc::format!("{f}"), "y^2 - x^3");
        let g = Poly::from_terms([(Monomial::new(1, 1), ratio(-3, 4)), (Monomial::ONE, rat(2))]);
        assert_eq!(alloc::format!("{g}"), "2 - 3/4*x*y");
    }

    #[test]
    fn substitution_blowup_chart() {
        let f = p(&[(1, 0, 2), (-1, 3, 0)]);
        let pulled = f.substitute(&Poly::x(), &p(&[(1, 1, 1)]));
        assert_eq!(pulled, p(&[(1, 2, 2), (-1, 3, 0)]));
    }
}
