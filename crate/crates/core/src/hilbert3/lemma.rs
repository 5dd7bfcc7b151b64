//! Projected pairs of atoms: the v_φ family and its inner-product range.
//!
//! Fix unit vectors u, v at angle θ ∈ (0, π/2) and an orthonormal basis
//! with e₁ = u, v = cosθ·e₁ + sinθ·e₂. For each φ let
//! w_φ = cosφ·e₂ + sinφ·e₃ and E_φ = span{u, w_φ}; v_φ is the normalized
//! projection of v onto E_φ. Then
//!
//! v_φ = (cosθ, sinθcos²φ, sinθcosφ·sinφ) / √(cos²θ + sin²θcos²φ)
//!
//! and the achievable inner products v_φ·v_ψ over φ, ψ ∈ [0, 2π] form
//! exactly the interval [(3cosθ−1)/(cosθ+1), 1]. The lower endpoint is hit
//! on the antidiagonal slice ψ = −φ at cos²φ = cosθ/(1+cosθ); along that
//! slice the dot decreases strictly from 1 to the endpoint, which is what
//! makes bisection a complete solver for any target in the interval.

use super::{GeomError, Vec3};
use crate::config::Tolerances;

/// Guard for the open interval 0 < θ < π/2.
fn check_theta(theta: f64) -> Result<(), GeomError> {
    if theta.is_finite() && theta > 0.0 && theta < std::f64::consts::FRAC_PI_2 {
        Ok(())
    } else {
        Err(GeomError::ThetaOutOfRange)
    }
}

/// The endpoint map f(x) = (3x − 1)/(x + 1): the smallest projected-pair
/// dot achievable from a pair at dot x. Strictly increasing on [0, 1] with
/// f(0) = −1, f(1/3) = 0, f(1) = 1 and f(x) < x on [0, 1); its inverse is
/// the schedule recurrence c ↦ (1 + c)/(3 − c).
pub fn min_projected_dot(x: f64) -> f64 {
    (3.0 * x - 1.0) / (x + 1.0)
}

/// The projected unit vector v_φ in the (e₁, e₂, e₃) frame.
pub fn v_phi(theta: f64, phi: f64) -> Result<Vec3, GeomError> {
    check_theta(theta)?;
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let w = Vec3::new(ct, st * cp * cp, st * cp * sp);
    Ok(w / (ct * ct + st * st * cp * cp).sqrt())
}

/// The inner product v_φ·v_ψ by the closed formula
/// (cos²θ + sin²θ(cos²φcos²ψ + cosφcosψ·sinφsinψ)) /
/// √((cos²θ + sin²θcos²φ)(cos²θ + sin²θcos²ψ)).
pub fn pair_dot(theta: f64, phi: f64, psi: f64) -> Result<f64, GeomError> {
    check_theta(theta)?;
    Ok(pair_dot_unchecked(theta, phi, psi))
}

fn pair_dot_unchecked(theta: f64, phi: f64, psi: f64) -> f64 {
    let (st, ct) = theta.sin_cos();
    let (ct2, st2) = (ct * ct, st * st);
    let (sp, cp) = phi.sin_cos();
    let (sq, cq) = psi.sin_cos();
    let num = ct2 + st2 * (cp * cp * cq * cq + cp * cq * sp * sq);
    let den = ((ct2 + st2 * cp * cp) * (ct2 + st2 * cq * cq)).sqrt();
    num / den
}

/// The exact range of v_φ·v_ψ: [f(cosθ), 1].
pub fn lemma_interval(theta: f64) -> Result<(f64, f64), GeomError> {
    check_theta(theta)?;
    Ok((min_projected_dot(theta.cos()), 1.0))
}

/// The antidiagonal parameter φ* = arccos √(cosθ/(1+cosθ)) at which
/// ψ = −φ attains the interval's lower endpoint.
pub fn critical_phi(theta: f64) -> Result<f64, GeomError> {
    check_theta(theta)?;
    let c = theta.cos();
    Ok((c / (1.0 + c)).sqrt().acos())
}

/// Families on which the extrema of (φ, ψ) ↦ v_φ·v_ψ occur: the diagonal
/// φ ≡ ψ, and the antidiagonal φ ≡ −ψ [π] combined with sinφ = 0,
/// cosφ = 0, or the quartic sin²θcos⁴φ + 2cos²θcos²φ − cos²θ = 0.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CriticalClass {
    /// φ = ψ: value 1 (the maximum).
    Diagonal,
    /// sinφ = 0 on the antidiagonal: value 1.
    SinZero,
    /// cosφ = 0 on the antidiagonal: both vectors degrade to e₁, value 1.
    CosZero,
    /// The admissible quartic root cos²φ = cosθ/(1+cosθ): the minimum.
    QuarticRoot,
}

/// A critical point of the pair dot, with a representative (φ, ψ).
#[derive(Clone, Copy, Debug)]
pub struct CriticalPoint {
    pub class: CriticalClass,
    pub phi: f64,
    pub psi: f64,
    pub value: f64,
}

/// Representative critical points of each class, every one a stationary
/// point of (φ, ψ) ↦ v_φ·v_ψ; the quartic root carries the interval
/// minimum f(cosθ).
pub fn lemma_extrema(theta: f64) -> Result<Vec<CriticalPoint>, GeomError> {
    check_theta(theta)?;
    let pi = std::f64::consts::PI;
    let star = critical_phi(theta)?;
    let point = |class, phi: f64, psi: f64| CriticalPoint {
        class,
        phi,
        psi,
        value: pair_dot_unchecked(theta, phi, psi),
    };
    Ok(vec![
        point(CriticalClass::Diagonal, pi / 4.0, pi / 4.0),
        point(CriticalClass::SinZero, 0.0, 0.0),
        point(CriticalClass::CosZero, pi / 2.0, -pi / 2.0),
        point(CriticalClass::QuarticRoot, star, -star),
    ])
}

/// Find (φ, ψ) with v_φ·v_ψ = target.
///
/// Sets ψ = −φ and bisects φ over [0, φ*]; on that slice the dot falls
/// strictly from 1 to f(cosθ), so the intermediate value theorem applies.
/// Targets outside the interval by more than a 1e-9 slack are rejected;
/// inside the slack they are clamped to the achievable endpoint.
pub fn solve_pair(theta: f64, target: f64, tol: &Tolerances) -> Result<(f64, f64), GeomError> {
    let (lo_val, hi_val) = lemma_interval(theta)?;
    const SLACK: f64 = 1e-9;
    if !target.is_finite() || target < lo_val - SLACK || target > hi_val + SLACK {
        return Err(GeomError::TargetOutOfRange);
    }
    let target = target.clamp(lo_val, hi_val);
    if target >= hi_val {
        return Ok((0.0, 0.0));
    }
    let mut lo = 0.0f64; // dot(lo) >= target
    let mut hi = critical_phi(theta)?; // dot(hi) <= target
    while hi - lo > tol.bisect_tol {
        let mid = 0.5 * (lo + hi);
        if pair_dot_unchecked(theta, mid, -mid) >= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let phi = 0.5 * (lo + hi);
    debug_assert!((pair_dot_unchecked(theta, phi, -phi) - target).abs() <= tol.solve_dot_tol);
    Ok((phi, -phi))
}

/// Result of a grid scan of the pair dot over [0, 2π]².
#[derive(Clone, Copy, Debug)]
pub struct ScanResult {
    pub min: f64,
    pub max: f64,
    pub argmin: (f64, f64),
    pub argmax: (f64, f64),
}

/// Scan v_φ·v_ψ on an inclusive (grid+1)×(grid+1) lattice over [0, 2π]²,
/// then sharpen each extremum with `refine` rounds of local re-scanning
/// (window of ± one parent cell at 40× resolution per round).
pub fn scan_pair_dot(theta: f64, grid: usize, refine: usize) -> Result<ScanResult, GeomError> {
    check_theta(theta)?;
    assert!(grid >= 2, "grid too coarse");
    let tau = 2.0 * std::f64::consts::PI;
    let mut result = scan_window(theta, (0.0, tau), (0.0, tau), grid);
    let mut h = tau / grid as f64;
    for _ in 0..refine {
        let fine = 40;
        let around_min = scan_window(
            theta,
            (result.argmin.0 - h, result.argmin.0 + h),
            (result.argmin.1 - h, result.argmin.1 + h),
            fine,
        );
        let around_max = scan_window(
            theta,
            (result.argmax.0 - h, result.argmax.0 + h),
            (result.argmax.1 - h, result.argmax.1 + h),
            fine,
        );
        if around_min.min < result.min {
            result.min = around_min.min;
            result.argmin = around_min.argmin;
        }
        if around_max.max > result.max {
            result.max = around_max.max;
            result.argmax = around_max.argmax;
        }
        h = 2.0 * h / fine as f64;
    }
    Ok(result)
}

fn scan_window(
    theta: f64,
    (phi_lo, phi_hi): (f64, f64),
    (psi_lo, psi_hi): (f64, f64),
    grid: usize,
) -> ScanResult {
    let (st, ct) = theta.sin_cos();
    let (ct2, st2) = (ct * ct, st * st);
    // Precompute per-angle rows: cos, sin and the normalization 1/√(…).
    let rows = |lo: f64, hi: f64| -> Vec<(f64, f64, f64, f64)> {
        (0..=grid)
            .map(|i| {
                let angle = lo + (hi - lo) * i as f64 / grid as f64;
                let (s, c) = angle.sin_cos();
                (angle, c, s, 1.0 / (ct2 + st2 * c * c).sqrt())
            })
            .collect()
    };
    let phis = rows(phi_lo, phi_hi);
    let psis = rows(psi_lo, psi_hi);
    let mut result = ScanResult {
        min: f64::INFINITY,
        max: f64::NEG_INFINITY,
        argmin: (phi_lo, psi_lo),
        argmax: (phi_lo, psi_lo),
    };
    for &(phi, cp, sp, inv_p) in &phis {
        for &(psi, cq, sq, inv_q) in &psis {
            let dot = (ct2 + st2 * (cp * cp * cq * cq + cp * cq * sp * sq)) * inv_p * inv_q;
            if dot < result.min {
                result.min = dot;
                result.argmin = (phi, psi);
            }
            if dot > result.max {
                result.max = dot;
                result.argmax = (phi, psi);
            }
        }
    }
    result
}
