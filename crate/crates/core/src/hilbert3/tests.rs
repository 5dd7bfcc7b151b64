use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::lemma::{self, CriticalClass};
use super::schedule;
use super::{GeomError, Subspace3, Vec3};
use crate::config::Tolerances;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn e(k: usize) -> Vec3 {
    let mut v = Vec3::zeros();
    v[k] = 1.0;
    v
}

fn line(v: Vec3) -> Subspace3 {
    Subspace3::line(v, &tol()).unwrap()
}

fn span(vs: &[Vec3]) -> Subspace3 {
    Subspace3::span(vs, &tol()).unwrap()
}

/// A deterministic menagerie of subspaces of every dimension.
fn sample_subspaces() -> Vec<Subspace3> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let rv = |rng: &mut ChaCha8Rng| {
        Vec3::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    };
    let mut out = vec![Subspace3::zero(), Subspace3::full(), line(e(0)), span(&[e(0), e(1)])];
    for _ in 0..12 {
        out.push(line(rv(&mut rng)));
        out.push(span(&[rv(&mut rng), rv(&mut rng)]));
    }
    out
}

#[test]
fn projectors_are_symmetric_idempotent_with_integer_trace() {
    for s in sample_subspaces() {
        let p = *s.projector();
        assert!((p - p.transpose()).amax() <= 1e-12);
        assert!((p * p - p).amax() <= 1e-12);
        assert!((p.trace() - s.dim() as f64).abs() <= 1e-12);
    }
}

#[test]
fn span_examples() {
    let t = tol();
    assert_eq!(Subspace3::span(&[], &t).unwrap().dim(), 0);
    assert_eq!(line(e(0)).dim(), 1);
    assert_eq!(span(&[e(0), e(1)]).dim(), 2);
    assert_eq!(span(&[e(0), e(1), e(0) + e(1)]).dim(), 2);
    assert_eq!(span(&[e(0), e(1), e(2)]).dim(), 3);
    // Collinear vectors span a line.
    assert_eq!(span(&[Vec3::new(1.0, 2.0, 3.0), Vec3::new(-2.0, -4.0, -6.0)]).dim(), 1);
    assert_eq!(Subspace3::span(&[Vec3::zeros()], &t).unwrap_err(), GeomError::DegenerateInput);
    // Projection onto span{e₁, e₂} kills the e₃ component.
    let plane = span(&[e(0), e(1)]);
    assert!((plane.project(Vec3::new(0.25, -3.0, 7.0)) - Vec3::new(0.25, -3.0, 0.0)).norm() <= 1e-12);
}

#[test]
fn lattice_operations_examples() {
    let t = tol();
    let a = line(e(0));
    let plane = span(&[e(0), e(1)]);
    let other = span(&[e(1), e(2)]);

    assert!(a.ortho().approx_eq(&other, &t));
    assert!(plane.meet(&other, &t).approx_eq(&line(e(1)), &t));
    assert!(a.join(&line(e(1)), &t).approx_eq(&plane, &t));
    assert_eq!(plane.meet(&a.ortho(), &t).dim(), 1);

    assert!(Subspace3::zero().leq(&a, &t));
    assert!(a.leq(&plane, &t));
    assert!(plane.leq(&Subspace3::full(), &t));
    assert!(!plane.leq(&a, &t));
    assert!(!a.leq(&other, &t));

    // The orthomodular law, numerically: A ≤ F ⟹ F = A ∨ (F ∧ A⊥).
    let recovered = a.join(&plane.meet(&a.ortho(), &t), &t);
    assert!(recovered.approx_eq(&plane, &t));
}

#[test]
fn sasaki_projection_examples() {
    let t = tol();
    let a = line(e(0));
    let b = line((e(0) + e(1)).normalize());
    let plane = span(&[e(0), e(1)]);

    // A & A = A; orthogonal atoms annihilate.
    assert!(a.sasaki(&a, &t).approx_eq(&a, &t));
    assert!(a.sasaki(&line(e(1)), &t).is_zero());
    // Atom onto atom at 45°: the image ½(e₁+e₂) spans B itself.
    assert!(a.sasaki(&b, &t).approx_eq(&b, &t));
    // Atom onto a plane: the image of (e₁+e₃)/√2 is e₁/√2.
    let slanted = line((e(0) + e(2)).normalize());
    assert!(slanted.sasaki(&plane, &t).approx_eq(&a, &t));
    // Bounds go to bounds.
    assert!(Subspace3::zero().sasaki(&plane, &t).is_zero());
    assert!(Subspace3::full().sasaki(&plane, &t).approx_eq(&plane, &t));
}

#[test]
fn sasaki_image_route_matches_lattice_route() {
    let t = tol();
    for x in sample_subspaces() {
        for y in sample_subspaces() {
            let image = x.sasaki(&y, &t);
            let lattice = y.meet(&x.join(&y.ortho(), &t), &t);
            assert_eq!(image.dim(), lattice.dim());
            assert!(image.approx_eq(&lattice, &t));
        }
    }
}

#[test]
fn basis_is_orthonormal_and_spans() {
    for s in sample_subspaces() {
        let basis = s.basis();
        assert_eq!(basis.len(), s.dim());
        for (i, u) in basis.iter().enumerate() {
            assert!((u.norm() - 1.0).abs() <= 1e-12);
            assert!((s.project(*u) - *u).norm() <= 1e-10);
            for v in &basis[i + 1..] {
                assert!(u.dot(v).abs() <= 1e-10);
            }
        }
    }
}

#[test]
fn representatives_and_atom_angles() {
    let a = line(e(0));
    assert!((a.representative().unwrap() - e(0)).norm() <= 1e-12);
    // Sign canonicalization: the dominant component comes out positive.
    let flipped = line(Vec3::new(-3.0, 0.2, 0.1));
    assert!(flipped.representative().unwrap()[0] > 0.0);
    assert_eq!(span(&[e(0), e(1)]).representative(), Err(GeomError::NotAnAtom));

    assert!(a.atom_angle(&a).unwrap() <= 1e-12);
    assert!((a.atom_angle(&line(e(1))).unwrap() - std::f64::consts::FRAC_PI_2).abs() <= 1e-12);
    let third = std::f64::consts::FRAC_PI_3;
    let v = line(Vec3::new(third.cos(), third.sin(), 0.0));
    assert!((a.atom_angle(&v).unwrap() - third).abs() <= 1e-12);
    // Angles ignore representative sign.
    assert!((a.atom_angle(&line(-Vec3::new(third.cos(), third.sin(), 0.0))).unwrap() - third).abs() <= 1e-12);
}

#[test]
fn v_phi_examples_and_independent_oracle() {
    let t = tol();
    let pi = std::f64::consts::PI;
    // φ = 0 projects v onto its own plane: v itself.
    let theta = 0.9f64;
    let v = Vec3::new(theta.cos(), theta.sin(), 0.0);
    assert!((lemma::v_phi(theta, 0.0).unwrap() - v).norm() <= 1e-15);
    // cosφ = 0 collapses the family onto e₁.
    assert!((lemma::v_phi(theta, pi / 2.0).unwrap() - e(0)).norm() <= 1e-12);
    assert_eq!(lemma::v_phi(0.0, 1.0), Err(GeomError::ThetaOutOfRange));
    assert_eq!(lemma::v_phi(pi / 2.0, 1.0), Err(GeomError::ThetaOutOfRange));

    // Independent route: project v onto span{e₁, cosφ·e₂ + sinφ·e₃} with
    // the subspace machinery and normalize.
    for &theta in &[0.3, pi / 3.0, 1.2, 1.5] {
        let v = Vec3::new(theta.cos(), theta.sin(), 0.0);
        for &phi in &[0.1, pi / 4.0, 2.0, 4.0, 5.9] {
            let w = Vec3::new(0.0, phi.cos(), phi.sin());
            let plane = Subspace3::span(&[e(0), w], &t).unwrap();
            let projected = plane.project(v).normalize();
            let closed_form = lemma::v_phi(theta, phi).unwrap();
            assert!((projected - closed_form).norm() <= 1e-12, "theta={theta} phi={phi}");
        }
    }
}

proptest! {
    #[test]
    fn pair_dot_matches_vector_dot(
        theta in 0.05f64..1.52,
        phi in 0.0f64..std::f64::consts::TAU,
        psi in 0.0f64..std::f64::consts::TAU,
    ) {
        let closed = lemma::pair_dot(theta, phi, psi).unwrap();
        let direct = lemma::v_phi(theta, phi).unwrap().dot(&lemma::v_phi(theta, psi).unwrap());
        prop_assert!((closed - direct).abs() <= 1e-12);
        // Symmetry and the diagonal.
        let swapped = lemma::pair_dot(theta, psi, phi).unwrap();
        prop_assert!((closed - swapped).abs() <= 1e-12);
        prop_assert!((lemma::pair_dot(theta, phi, phi).unwrap() - 1.0).abs() <= 1e-12);
        // The claimed range, with rounding headroom.
        let (lo, hi) = lemma::lemma_interval(theta).unwrap();
        prop_assert!(closed >= lo - 1e-12 && closed <= hi + 1e-12);
    }
}

#[test]
fn endpoint_map_examples() {
    assert_eq!(lemma::min_projected_dot(0.0), -1.0);
    assert_eq!(lemma::min_projected_dot(1.0 / 3.0), 0.0);
    assert_eq!(lemma::min_projected_dot(1.0), 1.0);
    // Strictly increasing, and strictly below the identity, on [0, 1).
    let grid: Vec<f64> = (0..=100).map(|k| k as f64 / 100.0).collect();
    for w in grid.windows(2) {
        assert!(lemma::min_projected_dot(w[0]) < lemma::min_projected_dot(w[1]));
        assert!(lemma::min_projected_dot(w[0]) < w[0] || w[0] == 0.0);
    }
    assert!(lemma::min_projected_dot(0.0) < 0.0);
}

#[test]
fn lemma_extrema_classes_values_and_stationarity() {
    let pi = std::f64::consts::PI;
    for &theta in &[0.4, pi / 3.0, 1.1] {
        let points = lemma::lemma_extrema(theta).unwrap();
        assert_eq!(points.len(), 4);
        let (lo, _) = lemma::lemma_interval(theta).unwrap();
        for p in &points {
            let expected = match p.class {
                CriticalClass::QuarticRoot => lo,
                _ => 1.0,
            };
            assert!((p.value - expected).abs() <= 1e-12, "{:?}", p.class);
            assert!((lemma::pair_dot(theta, p.phi, p.psi).unwrap() - p.value).abs() <= 1e-15);
            // Stationarity via central differences.
            let h = 1e-5;
            let g = |phi: f64, psi: f64| lemma::pair_dot(theta, phi, psi).unwrap();
            let dphi = (g(p.phi + h, p.psi) - g(p.phi - h, p.psi)) / (2.0 * h);
            let dpsi = (g(p.phi, p.psi + h) - g(p.phi, p.psi - h)) / (2.0 * h);
            assert!(dphi.abs() <= 1e-6 && dpsi.abs() <= 1e-6, "{:?}", p.class);
        }
        // The quartic root satisfies its quartic exactly.
        let star = lemma::critical_phi(theta).unwrap();
        let (s2, c2) = (theta.sin().powi(2), theta.cos().powi(2));
        let cp2 = star.cos().powi(2);
        assert!((s2 * cp2 * cp2 + 2.0 * c2 * cp2 - c2).abs() <= 1e-12);
    }
    // At θ = π/3: cos²φ* = (1/2)/(3/2) = 1/3 and the minimum is 1/3.
    let star = lemma::critical_phi(pi / 3.0).unwrap();
    assert!((star.cos().powi(2) - 1.0 / 3.0).abs() <= 1e-12);
    let (lo, hi) = lemma::lemma_interval(pi / 3.0).unwrap();
    assert!((lo - 1.0 / 3.0).abs() <= 1e-12);
    assert_eq!(hi, 1.0);
}

#[test]
fn solve_pair_hits_targets() {
    let t = tol();
    let pi = std::f64::consts::PI;
    for &theta in &[0.35, pi / 3.0, 1.25] {
        let (lo, _) = lemma::lemma_interval(theta).unwrap();
        // The top of the range is the diagonal.
        assert_eq!(lemma::solve_pair(theta, 1.0, &t).unwrap(), (0.0, 0.0));
        // The bottom of the range is the antidiagonal quartic root.
        let (phi, psi) = lemma::solve_pair(theta, lo, &t).unwrap();
        assert_eq!(psi, -phi);
        assert!((phi - lemma::critical_phi(theta).unwrap()).abs() <= 1e-6);
        // Interior targets are met to solver precision.
        for k in 1..8 {
            let target = lo + (1.0 - lo) * k as f64 / 8.0;
            let (phi, psi) = lemma::solve_pair(theta, target, &t).unwrap();
            let got = lemma::pair_dot(theta, phi, psi).unwrap();
            assert!((got - target).abs() <= t.solve_dot_tol, "theta={theta} k={k}");
        }
        // Out-of-range targets are rejected; slack-range ones are clamped.
        assert_eq!(lemma::solve_pair(theta, lo - 1e-6, &t), Err(GeomError::TargetOutOfRange));
        assert_eq!(lemma::solve_pair(theta, 1.0 + 1e-6, &t), Err(GeomError::TargetOutOfRange));
        assert_eq!(lemma::solve_pair(theta, 1.0 + 5e-10, &t).unwrap(), (0.0, 0.0));
    }
    // θ = π/3, target 1/2: a hand-checkable interior case.
    let (phi, psi) = lemma::solve_pair(pi / 3.0, 0.5, &t).unwrap();
    assert!((lemma::pair_dot(pi / 3.0, phi, psi).unwrap() - 0.5).abs() <= 1e-10);
    assert_eq!(lemma::solve_pair(0.0, 0.5, &t), Err(GeomError::ThetaOutOfRange));
}

#[test]
fn scan_agrees_with_the_interval() {
    let pi = std::f64::consts::PI;
    for &theta in &[0.3, pi / 3.0, 1.3] {
        let scan = lemma::scan_pair_dot(theta, 240, 3).unwrap();
        let (lo, hi) = lemma::lemma_interval(theta).unwrap();
        assert!((scan.max - hi).abs() <= 1e-12, "theta={theta}");
        assert!((scan.min - lo).abs() <= 1e-9, "theta={theta} min={} lo={lo}", scan.min);
        // The reported argmin reproduces the reported minimum.
        let replay = lemma::pair_dot(theta, scan.argmin.0, scan.argmin.1).unwrap();
        assert!((replay - scan.min).abs() <= 1e-15);
    }
}

#[test]
fn ladder_is_exact_in_rationals() {
    use num_rational::Ratio;
    let one = Ratio::from_integer(1i64);
    let three = Ratio::from_integer(3i64);
    let mut current = Ratio::new(0i64, 1);
    for n in 0..=10_000u64 {
        assert_eq!(schedule::c(n), current, "n={n}");
        // The endpoint map steps the ladder down exactly: f(cₙ₊₁) = cₙ.
        let next = (one + current) / (three - current);
        assert_eq!((three * next - one) / (next + one), current);
        current = next;
    }
    assert_eq!(schedule::c(0), Ratio::new(0, 1));
    assert_eq!(schedule::c(1), Ratio::new(1, 3));
    assert_eq!(schedule::c(2), Ratio::new(1, 2));
}

#[test]
fn ladder_angles_descend() {
    assert_eq!(schedule::theta(0), std::f64::consts::FRAC_PI_2);
    assert!((schedule::theta(1) - (1.0f64 / 3.0).acos()).abs() <= 1e-15);
    assert!((schedule::theta(2) - std::f64::consts::FRAC_PI_3).abs() <= 1e-15);
    for n in 0..10_000u64 {
        assert!(schedule::theta(n + 1) < schedule::theta(n), "n={n}");
    }
    assert!(schedule::theta(1_000_000) < 1e-2);
}

#[test]
fn n_min_examples_and_least_property() {
    let t = tol();
    let pi = std::f64::consts::PI;
    assert_eq!(schedule::n_min(pi / 2.0, &t).unwrap(), 0);
    assert_eq!(schedule::n_min((1.0f64 / 3.0).acos(), &t).unwrap(), 1);
    assert_eq!(schedule::n_min(pi / 3.0, &t).unwrap(), 2);
    // Slightly under a rung (beyond the slack) costs one more round.
    assert_eq!(schedule::n_min(pi / 3.0 - 1e-6, &t).unwrap(), 3);
    assert_eq!(schedule::n_min(pi / 4.0, &t).unwrap(), 5);

    // Leastness: θ_n clears the angle and θ_{n−1} does not.
    for &angle in &[1.5, 1.0, 0.5, 0.1, 1e-3, 1e-5] {
        let n = schedule::n_min(angle, &t).unwrap();
        assert!(schedule::theta(n) <= angle + t.eps_ang);
        if n > 0 {
            assert!(schedule::theta(n - 1) > angle + t.eps_ang);
        }
    }

    for bad in [0.0, -0.5, pi / 2.0 + 1e-3, f64::NAN] {
        assert_eq!(schedule::n_min(bad, &t), Err(GeomError::ThetaOutOfRange));
    }
}

#[test]
fn v_phi_vectors_are_unit_and_reachable_by_projection() {
    // v_φ lies in span{e₁, w_φ} and is what B & E_φ produces as an atom.
    let t = tol();
    let theta = 1.0f64;
    let b = line(Vec3::new(theta.cos(), theta.sin(), 0.0));
    for &phi in &[0.2f64, 1.0, 2.5] {
        let w = Vec3::new(0.0, phi.cos(), phi.sin());
        let plane = Subspace3::span(&[e(0), w], &t).unwrap();
        let image = b.sasaki(&plane, &t);
        assert_eq!(image.dim(), 1);
        let u = image.representative().unwrap();
        let v = lemma::v_phi(theta, phi).unwrap();
        assert!((u.dot(&v).abs() - 1.0).abs() <= 1e-12, "phi={phi}");
        assert!((v.norm() - 1.0).abs() <= 1e-12);
    }
}
