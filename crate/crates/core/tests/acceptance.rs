//! Acceptance gate: one test per headline check, each printing a single
//! PASS/FAIL line (run with `--nocapture` to see them on success).
//!
//! Checks 1–2 pin the geometric layer (lemma interval reproduction and
//! end-to-end collapse certificates), 3–6 pin the finite-lattice layer
//! against independent oracles (closure as intersection, meet-stability,
//! the pre-valuation correspondence, and the two-atom filter on MO2), and
//! 7–8 pin the ladder arithmetic and the refutation workflow.

use std::f64::consts::FRAC_PI_2;
use std::time::Instant;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sasaki_core::collapse::{
    collapse, refute_second_element, verify_certificate, verify_refutation, CollapseCertificate,
    VerifyFailure,
};
use sasaki_core::filters::{enumerate_sasaki_filters, enumerate_upsets, PreValuation, UpSet};
use sasaki_core::hilbert3::lemma::{lemma_interval, min_projected_dot, scan_pair_dot};
use sasaki_core::hilbert3::{schedule, Subspace3, Vec3};
use sasaki_core::oml::{self, FiniteOml};
use sasaki_core::Tolerances;

/// Print the one verdict line for a check, then fail the test if needed.
fn conclude(check: &str, problems: &[String], detail: String) {
    let verdict = if problems.is_empty() { "PASS" } else { "FAIL" };
    let note = if problems.is_empty() { detail } else { problems.join("; ") };
    println!("{check}: {verdict} — {note}");
    assert!(problems.is_empty(), "{check}: {}", problems.join("; "));
}

fn tol() -> Tolerances {
    Tolerances::default()
}

fn e(k: usize) -> Vec3 {
    let mut v = Vec3::zeros();
    v[k] = 1.0;
    v
}

fn line(v: Vec3) -> Subspace3 {
    Subspace3::line(v, &tol()).expect("vector spans a ray")
}

/// A unit vector orthogonal to `v` (robust to the direction of `v`).
fn orthogonal_to(v: &Vec3) -> Vec3 {
    let candidate = if v.dot(&e(0)).abs() < 0.9 { e(0) } else { e(1) };
    let w = v.cross(&candidate);
    w / w.norm()
}

fn random_unit(rng: &mut ChaCha8Rng) -> Vec3 {
    loop {
        let v = Vec3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        let n = v.norm();
        if n > 1e-3 {
            return v / n;
        }
    }
}

/// The certificate's item list: initial atoms, then every result in order.
fn item_list(cert: &CollapseCertificate) -> Vec<Vec3> {
    let mut items = cert.initial_atoms.to_vec();
    for round in &cert.rounds {
        items.push(round[0].result_atom);
        items.push(round[1].result_atom);
    }
    items
}

fn valid_lattices() -> Vec<(&'static str, FiniteOml)> {
    [
        ("chain2", oml::chain2()),
        ("boolean4", oml::boolean(2)),
        ("boolean8", oml::boolean(3)),
        ("boolean16", oml::boolean(4)),
        ("mo2", oml::mo(2)),
        ("mo3", oml::mo(3)),
        ("mo4", oml::mo(4)),
    ]
    .into_iter()
    .map(|(name, raw)| {
        let oml = raw.closed().and_then(|r| r.validate()).expect("catalog lattice is a valid OML");
        (name, oml)
    })
    .collect()
}

/// The six-lattice suite for the exhaustive filter checks.
fn filter_suite() -> Vec<(&'static str, FiniteOml)> {
    valid_lattices().into_iter().filter(|(name, _)| *name != "chain2").collect()
}

/// Check 1 — the scanned pair-dot range over a 720×720 grid (with local
/// refinement) matches the analytic interval [(3cosθ−1)/(cosθ+1), 1] to
/// 1e-4 at θ = 10°, 20°, …, 80°, in under 5 s per angle. Anchors: the
/// minimum is 0 at cosθ = 1/3 and 1/3 at θ = 60°.
#[test]
fn check_1_geometric_lemma_reproduction() {
    let mut problems = Vec::new();
    let mut worst_dev: f64 = 0.0;
    let mut worst_time = 0.0f64;
    for deg in (10..=80).step_by(10) {
        let theta = (deg as f64).to_radians();
        let started = Instant::now();
        let (lo, hi) = lemma_interval(theta).expect("theta in range");
        let scan = scan_pair_dot(theta, 720, 3).expect("theta in range");
        let elapsed = started.elapsed().as_secs_f64();
        let dev = (scan.min - lo).abs().max((scan.max - hi).abs());
        worst_dev = worst_dev.max(dev);
        worst_time = worst_time.max(elapsed);
        if dev > 1e-4 {
            problems.push(format!("θ = {deg}°: endpoint deviation {dev:e} exceeds 1e-4"));
        }
        if elapsed >= 5.0 {
            problems.push(format!("θ = {deg}°: scan took {elapsed:.1} s (budget 5 s)"));
        }
    }
    // Anchor values for the interval's lower endpoint.
    let critical = lemma_interval((1.0f64 / 3.0).acos()).unwrap().0;
    if critical.abs() > 1e-12 {
        problems.push(format!("minimum at cosθ = 1/3 is {critical:e}, not 0"));
    }
    let sixty = lemma_interval(60f64.to_radians()).unwrap().0;
    if (sixty - 1.0 / 3.0).abs() > 1e-12 {
        problems.push(format!("minimum at θ = 60° is {sixty}, not 1/3"));
    }
    conclude(
        "check 1 (geometric lemma reproduction)",
        &problems,
        format!(
            "8 angles, grid 720, worst endpoint deviation {worst_dev:.2e}, \
             slowest scan {:.0} ms",
            worst_time * 1e3
        ),
    );
}

/// Check 2 — 200 seeded random pairs collapse in exactly n_min(angle)
/// rounds, the verifier accepts every certificate, the final dot is ≤ 1e-7;
/// and each of the four targeted corruptions is rejected.
#[test]
fn check_2_collapse_correctness_and_mutation_killing() {
    let t = tol();
    let mut problems = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2026);
    let mut cases = 0usize;
    while cases < 200 {
        let (u, v) = (random_unit(&mut rng), random_unit(&mut rng));
        let (a, b) = (line(u), line(v));
        let angle = a.atom_angle(&b).unwrap();
        if angle < 0.05 {
            continue; // nearly parallel draws would need thousands of rounds
        }
        cases += 1;
        let cert = match collapse(&a, &b, &t) {
            Ok(cert) => cert,
            Err(err) => {
                problems.push(format!("case {cases}: collapse failed: {err}"));
                continue;
            }
        };
        let n = schedule::n_min(angle, &t).unwrap();
        if cert.rounds.len() as u64 != n {
            problems.push(format!("case {cases}: {} rounds, schedule says {n}", cert.rounds.len()));
        }
        let items = item_list(&cert);
        let (i, j) = cert.final_pair;
        let residual = items[i].dot(&items[j]).abs();
        if residual > 1e-7 {
            problems.push(format!("case {cases}: final dot {residual:e} exceeds 1e-7"));
        }
        let report = verify_certificate(&cert, &t);
        if !report.accepted {
            problems.push(format!("case {cases}: verifier rejected: {:?}", report.failure));
        }
    }

    // Mutation suite: each corruption targets one verifier check class.
    let reference = collapse(&line(e(0)), &line((e(0) + e(1)) / 2f64.sqrt()), &t).unwrap();
    let expect_rejection =
        |cert: &CollapseCertificate, what: &str, want: fn(&VerifyFailure) -> bool| {
            let report = verify_certificate(cert, &t);
            match report.failure {
                Some(ref failure) if !report.accepted && want(failure) => None,
                _ => Some(format!("{what}: verifier said {report:?}")),
            }
        };

    let mut cert = reference.clone();
    cert.initial_atoms[0] *= 1.01;
    problems.extend(expect_rejection(&cert, "non-unit initial atom", |f| {
        matches!(f, VerifyFailure::InitialAtomNotUnit { which: 0 })
    }));

    let mut cert = reference.clone();
    let atom = cert.rounds[2][0].result_atom;
    let tilt = orthogonal_to(&atom);
    cert.rounds[2][0].result_atom = atom * 1e-3f64.cos() + tilt * 1e-3f64.sin();
    problems.extend(expect_rejection(&cert, "perturbed result atom", |f| {
        matches!(f, VerifyFailure::ResultMismatch { round: 2, step: 0, .. })
    }));

    let mut cert = reference.clone();
    let witness = item_list(&reference)[cert.rounds[1][1].plane_witness];
    let w1 = orthogonal_to(&witness);
    cert.rounds[1][1].plane = [w1, witness.cross(&w1)];
    problems.extend(expect_rejection(&cert, "plane omitting its witness", |f| {
        matches!(f, VerifyFailure::WitnessNotInPlane { round: 1, step: 1 })
    }));

    let skewed = CollapseCertificate {
        tolerance: t.eps_mat,
        basis: [e(0), e(1), e(2)],
        initial_atoms: [e(0), (e(0) + e(1)) / 2f64.sqrt()],
        rounds: Vec::new(),
        final_pair: (0, 1),
    };
    problems.extend(expect_rejection(&skewed, "non-orthogonal final pair", |f| {
        matches!(f, VerifyFailure::FinalNotOrthogonal { .. })
    }));

    conclude(
        "check 2 (collapse correctness)",
        &problems,
        "200 seeded pairs: exact round counts, verifier accepts, |u·v| ≤ 1e-7; \
         all 4 corruptions rejected"
            .to_string(),
    );
}

/// Check 3 — on the six-lattice suite, for every upward-closed subset S,
/// the iterated closure equals the intersection of all Sasaki filters
/// containing S.
#[test]
fn check_3_closure_matches_the_intersection_oracle() {
    let mut problems = Vec::new();
    let mut checked = 0usize;
    for (name, oml) in filter_suite() {
        let filters: Vec<UpSet> = enumerate_sasaki_filters(&oml)
            .expect("suite lattice within bound")
            .map(|f| f.into_upset())
            .collect();
        for set in enumerate_upsets(&oml).expect("suite lattice within bound") {
            let closure = set.sasaki_closure().into_upset();
            let mut oracle = UpSet::full(&oml);
            for filter in filters.iter().filter(|f| set.is_subset(f)) {
                oracle = oracle.intersection(filter);
            }
            if closure != oracle {
                problems.push(format!(
                    "{name}: closure of {:?} is {closure:?}, intersection oracle says {oracle:?}",
                    set
                ));
            }
            checked += 1;
        }
    }
    conclude(
        "check 3 (closure = intersection of covering filters)",
        &problems,
        format!("{checked} upsets across 6 lattices, zero discrepancies"),
    );
}

/// Check 4 — on the same suite, exhaustively: an upset is a Sasaki filter
/// exactly when it is stable under meets of compatible members.
#[test]
fn check_4_sasaki_filters_are_exactly_the_meet_stable_upsets() {
    let mut problems = Vec::new();
    let mut checked = 0usize;
    for (name, oml) in filter_suite() {
        for set in enumerate_upsets(&oml).expect("suite lattice within bound") {
            let members: Vec<_> = set.members().collect();
            let meet_stable = members.iter().all(|&x| {
                members.iter().all(|&y| {
                    !oml.compatible(x, y).unwrap() || set.contains(oml.meet(x, y).unwrap())
                })
            });
            if set.is_sasaki_filter() != meet_stable {
                problems.push(format!(
                    "{name}: {:?} is_sasaki_filter = {}, meet-stable = {meet_stable}",
                    set,
                    set.is_sasaki_filter()
                ));
            }
            checked += 1;
        }
    }
    conclude(
        "check 4 (Sasaki filter ⇔ stable under compatible meets)",
        &problems,
        format!("{checked} upsets across 6 lattices, zero discrepancies"),
    );
}

/// Check 5 — pre-valuations (by exhaustive search over all 2ⁿ labelings)
/// are in bijection with proper Sasaki filters on every bundled lattice,
/// both round-trips are identities, and the valuation counts are
/// boolean8 → 3, MO2 → 4, chain2 → 1.
#[test]
fn check_5_prevaluation_filter_correspondence() {
    let mut problems = Vec::new();
    let mut summary = Vec::new();
    for (name, oml) in valid_lattices() {
        // Independent oracle: test all 2^n two-valued labelings.
        let mut prevals = Vec::new();
        for mask in 0u32..(1 << oml.len()) {
            let mut bit = 0;
            let labeling = PreValuation::new(&oml, |_| {
                let one = mask >> bit & 1 == 1;
                bit += 1;
                one
            });
            if labeling.is_prevaluation() {
                prevals.push(labeling);
            }
        }
        let proper: Vec<_> = enumerate_sasaki_filters(&oml)
            .expect("bundled lattice within bound")
            .filter(|f| f.is_proper())
            .collect();
        if prevals.len() != proper.len() {
            problems.push(format!(
                "{name}: {} pre-valuations but {} proper filters",
                prevals.len(),
                proper.len()
            ));
        }
        for filter in &proper {
            let back = filter.to_prevaluation().unwrap().to_filter().unwrap();
            if back != *filter {
                problems.push(format!("{name}: filter round-trip moved {filter:?}"));
            }
        }
        for labeling in &prevals {
            let back = labeling.to_filter().unwrap().to_prevaluation().unwrap();
            if back != *labeling {
                problems.push(format!("{name}: pre-valuation round-trip moved {labeling:?}"));
            }
        }
        summary.push(format!("{name} {}", prevals.len()));
    }
    for (name, raw, expected) in
        [("boolean8", oml::boolean(3), 3), ("mo2", oml::mo(2), 4), ("chain2", oml::chain2(), 1)]
    {
        let oml = raw.closed().unwrap().validate().unwrap();
        let found = sasaki_core::filters::find_valuations(&oml).unwrap().len();
        if found != expected {
            problems.push(format!("{name}: {found} valuations, expected {expected}"));
        }
    }
    conclude(
        "check 5 (pre-valuations ↔ proper filters)",
        &problems,
        format!(
            "counts match on every lattice ({}), round-trips are identities, \
             valuations boolean8/mo2/chain2 = 3/4/1",
            summary.join(", ")
        ),
    );
}

/// Check 6 — on MO2 the upset {a, b, ⊤} is a proper Sasaki filter with two
/// atoms: the at-most-one-atom theorem needs more than abstract
/// orthomodularity, so its dim ≥ 3 hypothesis is necessary.
#[test]
fn check_6_mo2_has_a_proper_filter_with_two_atoms() {
    let mut problems = Vec::new();
    let oml = oml::mo(2).closed().unwrap().validate().unwrap();
    let (a, b) = (oml.element("a").unwrap(), oml.element("b").unwrap());
    let set = UpSet::upward_closure(&oml, [a, b]).unwrap();
    if set.sorted_names() != ["1", "a", "b"] {
        problems.push(format!("upward closure of {{a, b}} is {set:?}"));
    }
    if !set.is_sasaki_filter() {
        problems.push("{a, b, ⊤} is not closed under the Sasaki projection".to_string());
    }
    if !set.is_proper() {
        problems.push("{a, b, ⊤} is not proper".to_string());
    }
    let atoms = oml.atoms().filter(|&x| set.contains(x)).count();
    if atoms != 2 {
        problems.push(format!("filter contains {atoms} atoms, expected 2"));
    }
    conclude(
        "check 6 (MO2 two-atom filter)",
        &problems,
        "{a, b, ⊤} is a proper Sasaki filter with 2 atoms".to_string(),
    );
}

/// Check 7 — ladder identities: c(n) = n/(n+2) satisfies the exact
/// rational recurrence c(n+1) = (1 + c(n))/(3 − c(n)) up to n = 10⁴;
/// θ₀ = π/2; and f(x) = (3x−1)/(x+1) is strictly increasing with
/// f(x) < x on a 10⁴-point grid of (0, 1).
#[test]
fn check_7_schedule_identities() {
    let mut problems = Vec::new();
    let one = Ratio::from_integer(1i64);
    let three = Ratio::from_integer(3i64);
    let mut ladder = Ratio::from_integer(0i64);
    for n in 0..=10_000u64 {
        if ladder != schedule::c(n) {
            problems.push(format!("recurrence diverges from n/(n+2) at n = {n}"));
            break;
        }
        ladder = (one + ladder) / (three - ladder);
    }
    if schedule::theta(0) != FRAC_PI_2 {
        problems.push(format!("θ₀ = {}, not π/2", schedule::theta(0)));
    }
    let grid = 10_000usize;
    let mut previous = f64::NEG_INFINITY;
    for k in 1..=grid {
        let x = k as f64 / (grid + 1) as f64;
        let fx = min_projected_dot(x);
        if fx <= previous {
            problems.push(format!("f is not strictly increasing at x = {x}"));
            break;
        }
        if fx >= x {
            problems.push(format!("f(x) ≥ x at x = {x}"));
            break;
        }
        previous = fx;
    }
    conclude(
        "check 7 (schedule identities)",
        &problems,
        "c(n) = recurrence exactly for n ≤ 10⁴; θ₀ = π/2; f increasing, f(x) < x \
         on a 10⁴-point grid"
            .to_string(),
    );
}

/// Check 8 — the corollary workflow: for 50 seeded pairs (A, E) with
/// A ≰ E, refute_second_element produces a certificate the verifier
/// accepts — the finite, checkable core of the no-valuation argument.
#[test]
fn check_8_refutation_workflow() {
    let t = tol();
    let mut problems = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2027);
    let mut cases = 0usize;
    let mut immediate = 0usize;
    while cases < 50 {
        let a = line(random_unit(&mut rng));
        let e = if rng.random_range(0..2) == 0 {
            line(random_unit(&mut rng))
        } else {
            Subspace3::span(&[random_unit(&mut rng), random_unit(&mut rng)], &t)
                .expect("random span")
        };
        if a.leq(&e, &t) {
            continue; // nothing to refute
        }
        let b = a.sasaki(&e, &t);
        if !b.is_zero() && a.atom_angle(&b).unwrap() < 0.05 {
            continue; // nearly parallel pair would need thousands of rounds
        }
        cases += 1;
        if b.is_zero() {
            immediate += 1;
        }
        match refute_second_element(&a, &e, &t) {
            Ok(cert) => {
                let report = verify_refutation(&cert, &t);
                if !report.accepted {
                    problems.push(format!("case {cases}: rejected: {:?}", report.failure));
                }
            }
            Err(err) => problems.push(format!("case {cases}: refutation failed: {err}")),
        }
    }
    conclude(
        "check 8 (refutation workflow)",
        &problems,
        format!("50 seeded (A, E) pairs with A ≰ E accepted ({immediate} annihilated directly)"),
    );
}
