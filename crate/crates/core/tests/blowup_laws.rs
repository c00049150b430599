use gsvbound_core::blowup::{blowup_foliation, blowup_pair, resolve_branch, Chart, DEFAULT_MAX_STEPS};
use gsvbound_core::catalog::{branch_catalog, generate_pairs, random_poly};
use gsvbound_core::foliation::{hamiltonian, make_foliation};
use gsvbound_core::invariants::PairInvariants;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn laws_at_every_blowup() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut checked = 0;
    for g in generate_pairs(&mut rng, 60) {
        let f = g.separatrix.equation();
        let nb = f.ord().unwrap();
        if nb < 2 {
            continue;
        }
        let before = g.invariants;
        let (nf, nbr, res) = blowup_pair(&g.foliation, f).unwrap();
        let after = PairInvariants::compute(&nf, &nbr).unwrap();
        let (nb, m) = (i64::from(nb), i64::from(res.m_p));
        assert_eq!(after.mu_fb as i64, before.mu_fb as i64 - nb * (m - 1), "{}", g.label);
        assert_eq!(after.gsv, before.gsv + nb * (nb - m), "{}", g.label);
        assert!(after.phi() > before.phi());
        assert!(nbr.ord().unwrap() <= f.ord().unwrap());
        checked += 1;
    }
    assert!(checked >= 25, "only {checked} singular pairs");
}

#[test]
fn resolutions_end_at_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for g in generate_pairs(&mut rng, 40) {
        let tr = resolve_branch(&g.foliation, g.separatrix.equation(), DEFAULT_MAX_STEPS).unwrap();
        assert!(tr.phi_nondecreasing() && tr.phi_strict_while_singular(), "{}", g.label);
        assert!(tr.multiplicity_law_holds() && tr.gsv_law_holds(), "{}", g.label);
        assert_eq!(tr.terminal_phi(), 0, "{}", g.label);
    }
    for b in branch_catalog() {
        let fol = hamiltonian(&b.f).unwrap();
        if fol.is_singular() {
            let tr = resolve_branch(&fol, &b.f, DEFAULT_MAX_STEPS).unwrap();
            assert_eq!(tr.terminal_phi(), 0, "{}", b.name);
        }
    }
}

#[test]
fn divided_power_dichotomy_on_random_foliations() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut seen = 0;
    while seen < 100 {
        let p = random_poly(&mut rng, 4, 0.4);
        let q = random_poly(&mut rng, 4, 0.4);
        let (p, q) = (&p - &p.truncate_below(1), &q - &q.truncate_below(1));
        let Ok(fol) = make_foliation(p, q) else { continue };
        if !fol.is_singular() {
            continue;
        }
        for chart in [Chart::Chart1, Chart::Chart2] {
            let r = blowup_foliation(&fol, chart).unwrap();
            let nu = fol.algebraic_multiplicity();
            assert!(r.divided_power == nu || r.divided_power == nu + 1);
            assert_eq!(r.dicritical, r.divided_power == nu + 1);
        }
        seen += 1;
    }
}
