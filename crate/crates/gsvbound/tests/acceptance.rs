//! Acceptance gate: one PASS/FAIL line per criterion, exit status nonzero on any failure.

use std::time::{Duration, Instant};

use gsvbound::corpus::{parse, replay, DEFAULT_CORPUS};
use gsvbound_core::blowup::{blowup_foliation, blowup_pair, resolve_branch, Chart, DEFAULT_MAX_STEPS};
use gsvbound_core::catalog::{branch_catalog, generate_pairs, random_poly, GeneratedPair};
use gsvbound_core::foliation::{hamiltonian, is_invariant, make_foliation, Foliation, Separatrix};
use gsvbound_core::invariants::{check_corollary, check_theorem, PairInvariants, SeparatrixDivisor};
use gsvbound_core::localalg::{colength, intersection_multiplicity, Colength, LocalIdeal};
use gsvbound_core::oracle::{colength_oracle_with, OracleConfig};
use gsvbound_core::parse::{parse_one_form, parse_polynomial};
use gsvbound_core::poly::Poly;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn poly(s: &str) -> Poly {
    parse_polynomial(s).unwrap()
}

fn form(s: &str) -> Foliation {
    let f = parse_one_form(s).unwrap();
    make_foliation(f.dx_part, f.dy_part).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:.0?}"))
}

fn eta_table() -> Check {
    let start = Instant::now();
    let mut rows = 0;
    for m in 1..=6i64 {
        for n in m..=6 {
            if num_gcd(m, n) != 1 {
                continue;
            }
            let fol = form(&format!("{m}*x dy - {n}*y dx"));
            let f = poly(&format!("y^{m} - x^{n}"));
            let inv = PairInvariants::compute(&fol, &f).map_err(|e| e.to_string())?;
            let got = (inv.gsv, inv.mu_fb, inv.tau_fb);
            ensure(got == (m + n - m * n, 1, 1), || format!("(m,n)=({m},{n}): got {got:?}"))?;
            rows += 1;
        }
    }
    within(start, Duration::from_secs(2))?;
    Ok(format!("{rows} rows exact in {:.2?}", start.elapsed()))
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

fn omega_family() -> Check {
    let start = Instant::now();
    for m in 1..=4i64 {
        let p = format!("{}*y*x^{} + {m}*y^{}", 2 * m + 1, m + 1, m + 2);
        let q = format!("{}*x*y^{} - {}*x^{}", 1 - m, m + 1, 2 * m, m + 2);
        let fol = form(&format!("({p}) dx + ({q}) dy"));
        let b = poly(&format!("x^{} + x^{m}*y^{} + y^{}", 2 * m + 1, m + 1, 2 * m));
        let sep = Separatrix::new(b, false).map_err(|e| e.to_string())?;
        let r = check_theorem(&fol, &sep).map_err(|e| e.to_string())?;
        let expected = if m == 1 {
            (3, 2, 2, 5, 5)
        } else {
            (-2 * m * m + 4 * m + 1, 2 * m * (2 * m - 1), 3 * m * m, 2 * m * m + 2 * m + 1, m * m + 4 * m + 1)
        };
        let got = (r.gsv, r.mu_b as i64, r.tau_b as i64, r.mu_fb as i64, r.tau_fb as i64);
        ensure(got == expected, || format!("m={m}: got {got:?}, expected {expected:?}"))?;
        let phi = if m == 1 { -2 } else { -6 * m };
        ensure(r.phi() == phi, || format!("m={m}: phi {} != {phi}", r.phi()))?;
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("m = 1..4 exact in {:.2?}", start.elapsed()))
}

fn divisor_example() -> Check {
    let fol = form("(2*x^7 + 5*y^5) dx - x*y^2*(5*y^2 + 3*x^5) dy");
    let line = Separatrix::new(Poly::x(), false).map_err(|e| e.to_string())?;
    let other = Separatrix::new(poly("y^5 - x^7 + x^5*y^3 - x^5"), true).map_err(|e| e.to_string())?;
    let a = PairInvariants::compute(&fol, line.equation()).map_err(|e| e.to_string())?;
    ensure((a.gsv, a.mu_fb, a.tau_fb) == (5, 5, 5), || format!("line: {a:?}"))?;
    let b = PairInvariants::compute(&fol, other.equation()).map_err(|e| e.to_string())?;
    ensure((b.mu_fb, b.tau_fb) == (21, 21), || format!("second component: {b:?}"))?;
    let i0 = intersection_multiplicity(line.equation(), other.equation());
    ensure(i0 == Colength::Finite(5), || format!("i0 = {i0:?}"))?;
    let div = SeparatrixDivisor::new(vec![(line, 1), (other, 1)]).map_err(|e| e.to_string())?;
    let r = check_corollary(&fol, &div).map_err(|e| e.to_string())?;
    let got = (r.mu_div, r.gsv_div, r.t, r.rhs, r.strict);
    ensure(got == (25, 0, 26, 29, true), || format!("divisor report {got:?}"))?;
    Ok("(25, 0, 26, 29) strict".into())
}

fn theorem_suite(pairs: &[GeneratedPair]) -> Check {
    let (mut smooth, mut singular) = (0, 0);
    for g in pairs {
        let r = check_theorem(&g.foliation, &g.separatrix).map_err(|e| format!("{}: {e}", g.label))?;
        ensure(r.slack >= 0, || format!("{}: slack {}", g.label, r.slack))?;
        ensure((r.slack == 0) == r.smooth, || format!("{}: slack {} smooth {}", g.label, r.slack, r.smooth))?;
        if r.smooth {
            smooth += 1;
        } else {
            singular += 1;
        }
    }
    ensure(pairs.len() >= 50, || format!("only {} pairs", pairs.len()))?;
    ensure(smooth > 0 && singular > 0, || "corpus lacks smooth or singular branches".into())?;
    Ok(format!("{} pairs ({smooth} smooth, {singular} singular)", pairs.len()))
}

fn identity_suite(pairs: &[GeneratedPair]) -> Check {
    for g in pairs {
        let r = check_theorem(&g.foliation, &g.separatrix).map_err(|e| format!("{}: {e}", g.label))?;
        let c = r.identity_checks;
        ensure(c.milnor_tjurina_difference, || format!("{}: mu - tau differs", g.label))?;
        ensure(c.multiplicity_decomposition, || format!("{}: mu_FB != GSV + mu_B", g.label))?;
        ensure(c.tjurina_at_most_multiplicity, || format!("{}: tau_FB > mu_FB", g.label))?;
        ensure(c.smooth_equalities, || format!("{}: smooth equalities", g.label))?;
    }
    Ok(format!("4 identities on {} pairs", pairs.len()))
}

fn blowup_suite(pairs: &[GeneratedPair]) -> Check {
    let mut checked = 0;
    for g in pairs {
        let f = g.separatrix.equation();
        let nb = i64::from(f.ord().unwrap());
        if nb < 2 {
            continue;
        }
        let before = g.invariants;
        let (nf, nbr, res) = blowup_pair(&g.foliation, f).map_err(|e| format!("{}: {e}", g.label))?;
        let after = PairInvariants::compute(&nf, &nbr).map_err(|e| format!("{}: {e}", g.label))?;
        let m = i64::from(res.m_p);
        ensure(after.mu_fb as i64 == before.mu_fb as i64 - nb * (m - 1), || format!("{}: multiplicity law", g.label))?;
        ensure(after.gsv == before.gsv + nb * (nb - m), || format!("{}: GSV law", g.label))?;
        checked += 1;
    }
    ensure(checked >= 25, || format!("only {checked} singular pairs"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut foliations: Vec<Foliation> = pairs.iter().map(|g| g.foliation.clone()).collect();
    while foliations.len() < pairs.len() + 100 {
        let p = random_poly(&mut rng, 4, 0.4);
        let q = random_poly(&mut rng, 4, 0.4);
        let Ok(fol) = make_foliation(&p - &p.truncate_below(1), &q - &q.truncate_below(1)) else { continue };
        if fol.is_singular() {
            foliations.push(fol);
        }
    }
    for fol in &foliations {
        let nu = fol.algebraic_multiplicity();
        for chart in [Chart::Chart1, Chart::Chart2] {
            let r = blowup_foliation(fol, chart).map_err(|e| e.to_string())?;
            ensure(r.divided_power == nu || r.divided_power == nu + 1, || format!("{fol:?}: k = {}", r.divided_power))?;
            let exceptional = match chart {
                Chart::Chart1 => Poly::x(),
                Chart::Chart2 => Poly::y(),
            };
            let invariant = is_invariant(&r.strict_form, &exceptional);
            ensure(r.dicritical == (r.divided_power == nu + 1) && r.dicritical != invariant, || {
                format!("{fol:?}: dicriticality disagrees in {chart:?}")
            })?;
        }
    }
    Ok(format!("laws on {checked} pairs, dichotomy on {} foliations", foliations.len()))
}

fn resolution_suite(pairs: &[GeneratedPair]) -> Check {
    let mut inputs: Vec<(String, Foliation, Poly)> =
        pairs.iter().map(|g| (g.label.clone(), g.foliation.clone(), g.separatrix.equation().clone())).collect();
    for b in branch_catalog() {
        let fol = hamiltonian(&b.f).map_err(|e| e.to_string())?;
        if fol.is_singular() {
            inputs.push((format!("hamiltonian {}", b.name), fol, b.f.clone()));
        }
    }
    let mut longest = 0;
    for (label, fol, f) in &inputs {
        let tr = resolve_branch(fol, f, DEFAULT_MAX_STEPS).map_err(|e| format!("{label}: {e}"))?;
        ensure(tr.phi_nondecreasing(), || format!("{label}: phi decreased"))?;
        ensure(tr.phi_strict_while_singular(), || format!("{label}: phi stalled"))?;
        ensure(tr.terminal_phi() == 0, || format!("{label}: terminal phi {}", tr.terminal_phi()))?;
        longest = longest.max(tr.blowups());
    }
    Ok(format!("{} resolutions, longest {longest} blow-ups", inputs.len()))
}

fn banded<R: Rng>(rng: &mut R, lo: u32, hi: u32) -> Poly {
    loop {
        let p = random_poly(rng, hi, 0.35);
        let p = &p - &p.truncate_below(lo);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Zero-dimensional at the origin iff the generators share no factor through it.
fn zero_dimensional(gens: &[Poly]) -> bool {
    let g = gens.iter().skip(1).fold(gens[0].clone(), |acc, p| acc.gcd(p));
    !g.vanishes_at_origin()
}

fn oracle_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut finite, mut tried) = (0, 0);
    while finite < 100 {
        tried += 1;
        ensure(tried < 1000, || "too few zero-dimensional draws".into())?;
        let n = rng.gen_range(2..=3);
        let gens: Vec<Poly> = (0..n)
            .map(|_| {
                let lo = rng.gen_range(1..=3);
                let hi = rng.gen_range(lo..=(lo + 3).min(8));
                banded(&mut rng, lo, hi)
            })
            .collect();
        let zero_dim = zero_dimensional(&gens);
        let ideal = LocalIdeal::new(gens);
        let mora = colength(&ideal);
        if !zero_dim {
            ensure(mora.is_infinite(), || format!("{:?}: common factor but {mora:?}", ideal.generators()))?;
            continue;
        }
        let brute = colength_oracle_with(&ideal, OracleConfig { cap: 24, ..OracleConfig::default() })
            .map_err(|e| format!("{:?}: {e:?}", ideal.generators()))?;
        ensure(mora == brute && !mora.is_infinite(), || format!("{:?}: {mora:?} vs {brute:?}", ideal.generators()))?;
        finite += 1;
    }
    Ok(format!("{finite} zero-dimensional ideals agree ({tried} drawn)"))
}

fn hamiltonian_suite() -> Check {
    let catalog = branch_catalog();
    for b in &catalog {
        let fol = hamiltonian(&b.f).map_err(|e| e.to_string())?;
        let inv = PairInvariants::compute(&fol, &b.f).map_err(|e| format!("{}: {e}", b.name))?;
        ensure(inv.gsv == 0, || format!("{}: GSV = {}", b.name, inv.gsv))?;
        ensure(4 * inv.tau_b >= 3 * inv.mu_b, || format!("{}: 4 tau < 3 mu", b.name))?;
    }
    Ok(format!("{} catalog branches", catalog.len()))
}

fn corpus_replay() -> Check {
    let corpus = parse(DEFAULT_CORPUS).map_err(|e| e.to_string())?;
    let s = replay(&corpus, None);
    ensure(s.passed == s.total && s.diffs == 0, || format!("{} of {} entries, {} diffs", s.passed, s.total, s.diffs))?;
    Ok(format!("{} entries, 0 diffs", s.total))
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let pairs = generate_pairs(&mut rng, 60);
    let criteria: Vec<(&str, Box<dyn Fn() -> Check + '_>)> = vec![
        ("AC1 eta table", Box::new(eta_table)),
        ("AC2 omega family", Box::new(omega_family)),
        ("AC3 divisor example", Box::new(divisor_example)),
        ("AC4 theorem property suite", Box::new(|| theorem_suite(&pairs))),
        ("AC5 identity suite", Box::new(|| identity_suite(&pairs))),
        ("AC6 blow-up laws", Box::new(|| blowup_suite(&pairs))),
        ("AC7 resolution", Box::new(|| resolution_suite(&pairs))),
        ("AC8 oracle equivalence", Box::new(oracle_suite)),
        ("AC9 hamiltonian specialization", Box::new(hamiltonian_suite)),
        ("corpus replay", Box::new(corpus_replay)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!("PASS {name}: {detail} [{:.2?}]", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why} [{:.2?}]", start.elapsed());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
