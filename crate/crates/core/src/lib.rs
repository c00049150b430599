//! Exact local invariants of germs of holomorphic foliations in the plane.
//!
//! A foliation germ is given by a 1-form `P dx + Q dy` with polynomial,
//! rational-coefficient components; an invariant curve by a polynomial `f`.
//! Everything is computed at the origin in the local ring, exactly.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod blowup;
pub mod catalog;
pub mod foliation;
pub mod invariants;
pub mod localalg;
pub mod oracle;
pub mod parse;
pub mod poly;
pub mod puiseux;
