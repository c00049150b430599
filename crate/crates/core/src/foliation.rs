//! Foliation germs `P dx + Q dy` and their invariant curves.

use alloc::string::String;
use core::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::Poly;
use crate::puiseux::{certify_branch, BranchCertificate};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoliationError {
    #[error("both components of the 1-form are zero")]
    ZeroForm,
    #[error("components share the factor {0} through the origin")]
    NotCoprime(String),
    #[error("curve is not invariant: it does not divide P*f_y - Q*f_x")]
    NotInvariant,
    #[error("curve must be a nonzero polynomial vanishing at the origin")]
    NotThroughOrigin,
    #[error("curve equation has a repeated factor through the origin")]
    NotSquarefree,
    #[error("curve is not certified irreducible ({0:?}); pass it as assumed to proceed")]
    NotCertified(BranchCertificate),
}

/// Germ of foliation given by `ω = P dx + Q dy` with `P`, `Q` coprime as germs.
/// The dual vector field is `-Q ∂x + P ∂y`.
#[derive(Clone, PartialEq, Eq)]
pub struct Foliation {
    p: Poly,
    q: Poly,
    nu: u32,
}

impl Foliation {
    pub fn new(p: Poly, q: Poly) -> Result<Self, FoliationError> {
        if p.is_zero() && q.is_zero() {
            return Err(FoliationError::ZeroForm);
        }
        let g = p.gcd(&q);
        if !g.is_unit_germ() {
            return Err(FoliationError::NotCoprime(alloc::format!("{g}")));
        }
        let nu = match (p.ord(), q.ord()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => unreachable!(),
        };
        Ok(Foliation { p, q, nu })
    }

    pub fn p(&self) -> &Poly {
        &self.p
    }

    pub fn q(&self) -> &Poly {
        &self.q
    }

    /// `ν(F)`: minimum of the orders of `P` and `Q`.
    pub fn algebraic_multiplicity(&self) -> u32 {
        self.nu
    }

    pub fn is_singular(&self) -> bool {
        self.nu >= 1
    }

    /// The polynomial `P f_y - Q f_x`, i.e. `ω ∧ df = (P f_y - Q f_x) dx ∧ dy`.
    pub fn wedge_differential(&self, f: &Poly) -> Poly {
        &(&self.p * &f.dy()) - &(&self.q * &f.dx())
    }

    /// Multiplies both components by `u`; a unit `u` defines the same foliation germ.
    pub fn rescaled(&self, u: &Poly) -> Result<Self, FoliationError> {
        Foliation::new(&self.p * u, &self.q * u)
    }
}

impl fmt::Debug for Foliation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Foliation({self})")
    }
}

impl fmt::Display for Foliation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) dx + ({}) dy", self.p, self.q)
    }
}

#[derive(Serialize, Deserialize)]
struct FormComponents {
    #[serde(rename = "P")]
    p: Poly,
    #[serde(rename = "Q")]
    q: Poly,
}

impl Serialize for Foliation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FormComponents { p: self.p.clone(), q: self.q.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Foliation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let c = FormComponents::deserialize(d)?;
        Foliation::new(c.p, c.q).map_err(serde::de::Error::custom)
    }
}

pub fn make_foliation(p: Poly, q: Poly) -> Result<Foliation, FoliationError> {
    Foliation::new(p, q)
}

pub fn algebraic_multiplicity(fol: &Foliation) -> u32 {
    fol.algebraic_multiplicity()
}

/// The cofactor `h` with `P f_y - Q f_x = f h`; its existence proves `f` is invariant.
pub fn separatrix_cofactor(fol: &Foliation, f: &Poly) -> Result<Poly, FoliationError> {
    if f.is_zero() || f.is_unit_germ() {
        return Err(FoliationError::NotThroughOrigin);
    }
    fol.wedge_differential(f)
        .exact_divide(f)
        .map_err(|_| FoliationError::NotInvariant)
}

pub fn is_invariant(fol: &Foliation, f: &Poly) -> bool {
    separatrix_cofactor(fol, f).is_ok()
}

/// The hamiltonian foliation `df = 0`.
pub fn hamiltonian(f: &Poly) -> Result<Foliation, FoliationError> {
    Foliation::new(f.dx(), f.dy())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Irreducibility {
    /// Proven irreducible by the Newton–Puiseux check.
    Certified,
    /// Accepted on the caller's word; reports carry the certificate that was obtained.
    Assumed,
}

/// A reduced curve germ through the origin meant to be a branch of the separatrix set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separatrix {
    f: Poly,
    status: Irreducibility,
    certificate: BranchCertificate,
}

impl Separatrix {
    /// Validates `f` and certifies irreducibility; with `assume_irreducible` an
    /// uncertified curve is accepted as `Assumed`.
    pub fn new(f: Poly, assume_irreducible: bool) -> Result<Self, FoliationError> {
        if f.is_zero() || f.is_unit_germ() {
            return Err(FoliationError::NotThroughOrigin);
        }
        if !f.is_squarefree_germ() {
            return Err(FoliationError::NotSquarefree);
        }
        let certificate = certify_branch(&f);
        let status = match (certificate, assume_irreducible) {
            (BranchCertificate::Yes, _) => Irreducibility::Certified,
            (_, true) => Irreducibility::Assumed,
            (c, false) => return Err(FoliationError::NotCertified(c)),
        };
        Ok(Separatrix { f, status, certificate })
    }

    pub fn equation(&self) -> &Poly {
        &self.f
    }

    pub fn status(&self) -> Irreducibility {
        self.status
    }

    pub fn certificate(&self) -> BranchCertificate {
        self.certificate
    }

    /// `ν(B)`, the multiplicity of the curve at the origin.
    pub fn multiplicity(&self) -> u32 {
        self.f.ord().expect("nonzero")
    }

    pub fn is_smooth(&self) -> bool {
        self.multiplicity() == 1
    }

    pub fn check_invariant(&self, fol: &Foliation) -> Result<Poly, FoliationError> {
        separatrix_cofactor(fol, &self.f)
    }
}
