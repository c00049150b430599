//! Brute-force colength by truncation, independent of the standard-basis path.
//!
//! `dim Q[x,y] / (I + m^k)` is computed by exact linear algebra on the span
//! of all truncated multiples `u * g` (`g` a generator, `u` a monomial). The
//! dimensions are nondecreasing in `k`; once two consecutive values agree,
//! `m^k ⊆ I + m^(k+1)` and Nakayama gives `m^k ⊆ I` locally, so the value
//! is the exact colength.

use alloc::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::localalg::{Colength, LocalIdeal};
use crate::poly::{Monomial, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Consecutive strictly increasing steps after which the colength is declared infinite.
    pub cap: u32,
    /// Hard bound on the truncation order; exceeding it yields `CapExceeded`.
    pub max_order: u32,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { cap: 64, max_order: u32::MAX }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("truncation order {order} reached before the dimension stabilized")]
    CapExceeded { order: u32 },
}

type Row = BTreeMap<Monomial, BigInt>;

fn integer_row(p: &Poly) -> Row {
    p.primitive_integer()
        .terms()
        .map(|(m, c)| (*m, c.to_integer()))
        .collect()
}

fn remove_content(row: &mut Row) {
    let g = row.values().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g > BigInt::from(1) {
        for v in row.values_mut() {
            *v /= &g;
        }
    }
}

/// Fraction-free echelon insertion; returns true if the row was independent.
fn insert_row(pivots: &mut BTreeMap<Monomial, Row>, mut row: Row) -> bool {
    loop {
        let Some((&lead, lc)) = row.iter().next() else { return false };
        let Some(pivot) = pivots.get(&lead) else {
            if lc.is_negative() {
                for v in row.values_mut() {
                    *v = -v.clone();
                }
            }
            pivots.insert(lead, row);
            return true;
        };
        let pc = pivot[&lead].clone();
        let lc = lc.clone();
        let mut next = Row::new();
        for (m, v) in &row {
            next.insert(*m, v * &pc);
        }
        for (m, v) in pivot {
            let e = next.entry(*m).or_insert_with(BigInt::zero);
            *e -= v * &lc;
        }
        next.retain(|_, v| !v.is_zero());
        remove_content(&mut next);
        row = next;
    }
}

/// `dim Q[x,y] / (I + m^k)`.
pub fn truncated_dimension(ideal: &LocalIdeal, k: u32) -> u64 {
    let total = u64::from(k) * (u64::from(k) + 1) / 2;
    let mut pivots: BTreeMap<Monomial, Row> = BTreeMap::new();
    for g in ideal.generators() {
        let base = integer_row(g);
        let ord = g.ord().expect("generators are nonzero");
        if ord >= k {
            continue;
        }
        for d in 0..(k - ord) {
            for i in 0..=d {
                let u = Monomial::new(i, d - i);
                let row: Row = base
                    .iter()
                    .map(|(m, c)| (*m * u, c.clone()))
                    .filter(|(m, _)| m.degree() < k)
                    .collect();
                if !row.is_empty() {
                    insert_row(&mut pivots, row);
                }
            }
        }
    }
    total - pivots.len() as u64
}

pub fn colength_oracle(ideal: &LocalIdeal) -> Result<Colength, OracleError> {
    colength_oracle_with(ideal, OracleConfig::default())
}

pub fn colength_oracle_with(ideal: &LocalIdeal, cfg: OracleConfig) -> Result<Colength, OracleError> {
    let min_ord = ideal.generators().iter().filter_map(Poly::ord).min().unwrap_or(0);
    let k0 = 2 * min_ord + 2;
    if k0 > cfg.max_order {
        return Err(OracleError::CapExceeded { order: k0 });
    }
    let mut prev = truncated_dimension(ideal, k0);
    for step in 1..=cfg.cap {
        let k = k0 + step;
        if k > cfg.max_order {
            return Err(OracleError::CapExceeded { order: k });
        }
        let d = truncated_dimension(ideal, k);
        if d == prev {
            return Ok(Colength::Finite(d));
        }
        prev = d;
    }
    Ok(Colength::Infinite)
}
