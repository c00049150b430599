//! Standard bases in the localization of `Q[x, y]` at the origin.
//!
//! The monomial order is the local degree order of [`Monomial`]: lower total
//! degree is larger, ties broken with `x > y`. Reduction uses Mora's normal
//! form with écart selection, which terminates for local orders. Colengths
//! are read off the staircase of the leading-monomial ideal.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::poly::{Monomial, Poly};

/// Dimension of a quotient of the local ring; `Infinite` when the ideal is
/// not zero-dimensional at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Colength {
    Finite(u64),
    Infinite,
}

impl Colength {
    pub fn finite(self) -> Option<u64> {
        match self {
            Colength::Finite(n) => Some(n),
            Colength::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Colength::Infinite
    }
}

impl fmt::Display for Colength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Colength::Finite(n) => write!(f, "{n}"),
            Colength::Infinite => write!(f, "infinity"),
        }
    }
}

/// Ideal of the local ring given by polynomial generators. Zero generators are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalIdeal {
    generators: Vec<Poly>,
}

impl LocalIdeal {
    pub fn new<I: IntoIterator<Item = Poly>>(gens: I) -> Self {
        LocalIdeal { generators: gens.into_iter().filter(|g| !g.is_zero()).collect() }
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn with_generator(&self, g: Poly) -> Self {
        let mut gens = self.generators.clone();
        if !g.is_zero() {
            gens.push(g);
        }
        LocalIdeal { generators: gens }
    }
}

/// Minimal standard basis: no leading monomial divides another, leading coefficients are one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardBasis {
    elements: Vec<Poly>,
}

impl StandardBasis {
    pub fn elements(&self) -> &[Poly] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().filter_map(|g| g.local_leading().map(|(m, _)| m)).collect()
    }

    /// Monomials outside the leading ideal, `None` if there are infinitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        let lms = self.leading_monomials();
        let xa = lms.iter().filter(|m| m.y == 0).map(|m| m.x).min()?;
        let yb = lms.iter().filter(|m| m.x == 0).map(|m| m.y).min()?;
        let mut out = Vec::new();
        for i in 0..xa {
            for j in 0..yb {
                let m = Monomial::new(i, j);
                if !lms.iter().any(|l| l.divides(m)) {
                    out.push(m);
                }
            }
        }
        Some(out)
    }

    pub fn colength(&self) -> Colength {
        match self.standard_monomials() {
            Some(v) => Colength::Finite(v.len() as u64),
            None => Colength::Infinite,
        }
    }

    /// Mora normal form of `f` against this basis; zero iff `f` lies in the ideal.
    pub fn reduce(&self, f: &Poly) -> Poly {
        mora_normal_form(f, &self.elements)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.reduce(f).is_zero()
    }
}

/// Cancels the leading term of `h` against `g`: `h - (lt(h)/lt(g)) g`.
fn spoly_step(h: &mut Poly, g: &Poly) {
    let (hm, hc) = h.local_leading().expect("nonzero");
    let (gm, gc) = g.local_leading().expect("nonzero");
    let m = hm.checked_div(gm).expect("leading monomial divides");
    let c = hc / gc;
    h.sub_scaled(&c, m, g);
}

fn s_polynomial(f: &Poly, g: &Poly) -> Poly {
    let (fm, fc) = f.local_leading().expect("nonzero");
    let (gm, gc) = g.local_leading().expect("nonzero");
    let l = fm.lcm(gm);
    let mut s = f.mul_monomial(l.checked_div(fm).unwrap()).scale(&gc.clone());
    s.sub_scaled(fc, l.checked_div(gm).unwrap(), g);
    s
}

/// Mora's weak normal form. The result `h` satisfies `u f - h ∈ (basis)` for a
/// unit `u`, and `lm(h)` is not divisible by any leading monomial of `basis`.
pub fn mora_normal_form(f: &Poly, basis: &[Poly]) -> Poly {
    normal_form_below(f, basis, None)
}

/// Mora normal form computed modulo `m^corner`, for an ideal known to contain `m^corner`.
fn normal_form_below(f: &Poly, basis: &[Poly], corner: Option<u32>) -> Poly {
    let cut = |p: Poly| match corner {
        Some(d) => p.truncate_below(d),
        None => p,
    };
    let mut h = cut(f.clone());
    let mut extra: Vec<Poly> = Vec::new();
    while let Some((hm, _)) = h.local_leading() {
        let candidate = basis
            .iter()
            .chain(extra.iter())
            .filter(|g| g.local_leading().is_some_and(|(gm, _)| gm.divides(hm)))
            .min_by_key(|g| g.ecart());
        let Some(g) = candidate else { break };
        let g = g.clone();
        if g.ecart() > h.ecart() {
            extra.push(h.clone());
        }
        spoly_step(&mut h, &g);
        h = cut(h);
    }
    h
}

/// Least `D` such that every monomial of degree `D` is divisible by one of `lms`.
/// By Nakayama the ideal then contains `m^D`.
fn highest_corner(lms: &[Monomial]) -> Option<u32> {
    let a = lms.iter().filter(|m| m.y == 0).map(|m| m.x).min()?;
    let b = lms.iter().filter(|m| m.x == 0).map(|m| m.y).min()?;
    (0..a + b).find(|&d| (0..=d).all(|i| lms.iter().any(|l| l.divides(Monomial::new(i, d - i)))))
}

/// Mora standard basis of `ideal`. As soon as the leading monomials cover a
/// whole degree `D`, all further work is done modulo `m^D`.
pub fn standard_basis(ideal: &LocalIdeal) -> StandardBasis {
    let mut basis: Vec<Poly> = Vec::new();
    let mut corner: Option<u32> = None;
    // Pairs ordered by (lcm degree, creation index) so the run is deterministic.
    let mut queue: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let push = |basis: &mut Vec<Poly>, queue: &mut BTreeSet<(u32, usize, usize)>, corner: &mut Option<u32>, g: Poly| {
        let g = g.local_monic();
        let (gm, _) = g.local_leading().unwrap();
        let idx = basis.len();
        for (i, b) in basis.iter().enumerate() {
            let (bm, _) = b.local_leading().unwrap();
            if !bm.is_coprime(gm) {
                queue.insert((bm.lcm(gm).degree(), idx, i));
            }
        }
        basis.push(g);
        let lms: Vec<Monomial> = basis.iter().map(|b| b.local_leading().unwrap().0).collect();
        let next = highest_corner(&lms);
        if next != *corner {
            *corner = next;
            if let Some(d) = next {
                for b in basis.iter_mut() {
                    let lm = b.local_leading().unwrap().0;
                    *b = if lm.degree() >= d { Poly::monomial(lm.x, lm.y) } else { b.truncate_below(d) };
                }
            }
        }
    };
    for g in ideal.generators() {
        let h = normal_form_below(g, &basis, corner);
        if !h.is_zero() {
            if h.ord() == Some(0) {
                return StandardBasis { elements: alloc::vec![Poly::one()] };
            }
            push(&mut basis, &mut queue, &mut corner, h);
        }
    }
    while let Some((lcm_degree, j, i)) = queue.pop_first() {
        if corner.is_some_and(|d| lcm_degree >= d) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j]);
        let h = normal_form_below(&s, &basis, corner);
        if h.is_zero() {
            continue;
        }
        if h.ord() == Some(0) {
            return StandardBasis { elements: alloc::vec![Poly::one()] };
        }
        push(&mut basis, &mut queue, &mut corner, h);
    }
    StandardBasis { elements: minimalize(basis) }
}

/// Drops elements whose leading monomial is divisible by another's.
fn minimalize(basis: Vec<Poly>) -> Vec<Poly> {
    let lms: Vec<Monomial> = basis.iter().map(|g| g.local_leading().unwrap().0).collect();
    let mut keep = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = lms.iter().enumerate().any(|(j, m)| {
            j != i && m.divides(lms[i]) && (*m != lms[i] || j < i)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    keep
}

/// `dim Q{x,y} / I`.
pub fn colength(ideal: &LocalIdeal) -> Colength {
    if ideal.generators().iter().any(|g| g.is_unit_germ()) {
        return Colength::Finite(0);
    }
    standard_basis(ideal).colength()
}

/// Local intersection number `i_0(f, g) = dim Q{x,y}/(f, g)`; zero when either does not
/// pass through the origin, infinite iff they share a branch through the origin.
pub fn intersection_multiplicity(f: &Poly, g: &Poly) -> Colength {
    colength(&LocalIdeal::new([f.clone(), g.clone()]))
}

/// True iff some element of the local ideal `(g)` equals `f`, i.e. `f ∈ g·O`.
pub fn ideal_membership(f: &Poly, ideal: &LocalIdeal) -> bool {
    f.is_zero() || standard_basis(ideal).contains(f)
}
