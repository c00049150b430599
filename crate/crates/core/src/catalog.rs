//! Catalog of irreducible branches and a seeded generator of pairs
//! `ω = h df + f η` for which `f` is invariant by construction.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;

use crate::foliation::{make_foliation, Foliation, Separatrix};
use crate::invariants::PairInvariants;
use crate::poly::{rat, Monomial, Poly};
use crate::puiseux::{certify_branch, BranchCertificate};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogBranch {
    pub name: String,
    pub f: Poly,
}

impl CatalogBranch {
    pub fn is_smooth(&self) -> bool {
        self.f.ord() == Some(1)
    }
}

fn entry(name: &str, terms: &[(i64, u32, u32)]) -> CatalogBranch {
    CatalogBranch { name: name.into(), f: Poly::from_int_terms(terms) }
}

/// Every entry certifies as irreducible.
pub fn branch_catalog() -> Vec<CatalogBranch> {
    let mut out = alloc::vec![
        entry("x", &[(1, 1, 0)]),
        entry("y", &[(1, 0, 1)]),
        entry("y - x^2", &[(1, 0, 1), (-1, 2, 0)]),
        entry("x + y^2", &[(1, 1, 0), (1, 0, 2)]),
        entry("y - x - x^3", &[(1, 0, 1), (-1, 1, 0), (-1, 3, 0)]),
        entry("y + x^2 + x*y", &[(1, 0, 1), (1, 2, 0), (1, 1, 1)]),
    ];
    for (a, b) in [(2, 3), (2, 5), (3, 4), (2, 7), (3, 5), (4, 5)] {
        out.push(CatalogBranch {
            name: format!("y^{a} - x^{b}"),
            f: Poly::from_int_terms(&[(1, 0, a), (-1, b, 0)]),
        });
    }
    out.extend([
        entry("x^3 - y^4", &[(1, 3, 0), (-1, 0, 4)]),
        entry("y^2 - x^3 + x^2*y", &[(1, 0, 2), (-1, 3, 0), (1, 2, 1)]),
        entry("y^3 - x^5 + x^2*y^2", &[(1, 0, 3), (-1, 5, 0), (1, 2, 2)]),
        entry("y^2 - 2*x*y + x^2 - x^3", &[(1, 0, 2), (-2, 1, 1), (1, 2, 0), (-1, 3, 0)]),
        entry("y^2 - x^5 + x^3*y", &[(1, 0, 2), (-1, 5, 0), (1, 3, 1)]),
        entry(
            "(y^2 - x^3)^2 - 4*x^5*y - x^7",
            &[(1, 0, 4), (-2, 3, 2), (1, 6, 0), (-4, 5, 1), (-1, 7, 0)],
        ),
        entry("x^3 + x*y^2 + y^2", &[(1, 3, 0), (1, 1, 2), (1, 0, 2)]),
    ]);
    debug_assert!(out.iter().all(|b| certify_branch(&b.f) == BranchCertificate::Yes));
    out
}

/// Random polynomial with coefficients in `-3..=3` and total degree at most `deg`.
pub fn random_poly<R: Rng + ?Sized>(rng: &mut R, deg: u32, density: f64) -> Poly {
    let mut p = Poly::zero();
    for d in 0..=deg {
        for i in 0..=d {
            if rng.gen_bool(density) {
                p.add_term(rat(rng.gen_range(-3..=3)), Monomial::new(i, d - i));
            }
        }
    }
    p
}

#[derive(Clone, Debug)]
pub struct GeneratedPair {
    pub label: String,
    pub foliation: Foliation,
    pub separatrix: Separatrix,
    pub invariants: PairInvariants,
}

/// One pair for `branch`. Singular branches use a unit `h`; smooth ones an `h`
/// with `h(0) = 0`, since a unit would make the foliation regular.
/// Returns `None` when the draw fails the isolation checks.
pub fn generate_pair<R: Rng + ?Sized>(rng: &mut R, branch: &CatalogBranch) -> Option<GeneratedPair> {
    let f = &branch.f;
    let mut h = random_poly(rng, 2, 0.5);
    h = &h - &Poly::constant(h.constant_term());
    if !branch.is_smooth() {
        h = &h + &Poly::constant(rat(rng.gen_range(1..=3)));
    } else if h.is_zero() {
        h = Poly::x();
    }
    let a = random_poly(rng, 2, 0.4);
    let b = random_poly(rng, 2, 0.4);
    let p = &(&h * &f.dx()) + &(f * &a);
    let q = &(&h * &f.dy()) + &(f * &b);
    let foliation = make_foliation(p, q).ok()?;
    if !foliation.is_singular() {
        return None;
    }
    let separatrix = Separatrix::new(f.clone(), false).ok()?;
    let invariants = PairInvariants::compute(&foliation, f).ok()?;
    let label = format!("{} | h = {h} | eta = ({a}) dx + ({b}) dy", branch.name);
    Some(GeneratedPair { label, foliation, separatrix, invariants })
}

/// `count` pairs cycling through the catalog.
pub fn generate_pairs<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<GeneratedPair> {
    let catalog = branch_catalog();
    let mut out = Vec::with_capacity(count);
    let mut i = 0usize;
    while out.len() < count {
        let branch = &catalog[i % catalog.len()];
        i += 1;
        if let Some(pair) = (0..16).find_map(|_| generate_pair(rng, branch)) {
            out.push(pair);
        }
    }
    out
}
