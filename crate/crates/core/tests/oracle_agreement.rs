use gsvbound_core::catalog::random_poly;
use gsvbound_core::localalg::{colength, Colength, LocalIdeal};
use gsvbound_core::oracle::{colength_oracle, colength_oracle_with, truncated_dimension, OracleConfig};
use gsvbound_core::poly::Poly;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random polynomial with all terms of degree in `lo..=hi`.
fn banded<R: Rng>(rng: &mut R, lo: u32, hi: u32) -> Poly {
    loop {
        let p = random_poly(rng, hi, 0.35);
        let p = &p - &p.truncate_below(lo);
        if !p.is_zero() {
            return p;
        }
    }
}

#[test]
fn standard_basis_matches_oracle_on_random_ideals() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut finite = 0;
    let mut tried = 0;
    while finite < 120 {
        tried += 1;
        assert!(tried < 1000, "too few zero-dimensional draws");
        let n = rng.gen_range(2..=3);
        let gens: Vec<Poly> = (0..n)
            .map(|_| {
                let lo = rng.gen_range(1..=3);
                let hi = rng.gen_range(lo..=(lo + 3).min(8));
                banded(&mut rng, lo, hi)
            })
            .collect();
        let common = gens.iter().skip(1).fold(gens[0].clone(), |acc, p| acc.gcd(p));
        let ideal = LocalIdeal::new(gens);
        let mora = colength(&ideal);
        // A shared factor through the origin gives infinite colength; a short cap
        // is enough to see the truncated dimensions keep growing.
        let cap = if common.vanishes_at_origin() { 8 } else { 24 };
        let brute = colength_oracle_with(&ideal, OracleConfig { cap, ..OracleConfig::default() }).unwrap();
        assert_eq!(mora, brute, "{:?}", ideal.generators());
        assert_eq!(mora.is_infinite(), common.vanishes_at_origin());
        if mora != Colength::Infinite {
            finite += 1;
        }
    }
}

#[test]
fn truncated_dimension_is_monotone() {
    let ideal = LocalIdeal::new([Poly::from_int_terms(&[(1, 0, 2), (-1, 3, 0)]), Poly::from_int_terms(&[(1, 4, 0)])]);
    let dims: Vec<u64> = (1..12).map(|k| truncated_dimension(&ideal, k)).collect();
    assert!(dims.windows(2).all(|w| w[0] <= w[1]));
    assert_eq!(*dims.last().unwrap(), 8);
}

#[test]
fn milnor_numbers_of_quasihomogeneous_curves() {
    for a in 2..=5u32 {
        for b in a..=7u32 {
            let f = Poly::from_int_terms(&[(1, 0, a), (1, b, 0)]);
            let j = LocalIdeal::new([f.dx(), f.dy()]);
            let expected = u64::from((a - 1) * (b - 1));
            assert_eq!(colength(&j), Colength::Finite(expected));
            assert_eq!(colength_oracle(&j), Ok(Colength::Finite(expected)));
        }
    }
}
