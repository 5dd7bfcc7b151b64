//! The angle ladder θ_n = arccos(n/(n+2)) driving the collapse rounds.
//!
//! One projection round turns a pair at dot x into a pair at dot
//! f(x) = (3x−1)/(x+1) at worst; iterating f⁻¹ from c₀ = 0 gives the
//! exact rational ladder c_n = n/(n+2) (since f(n/(n+2)) = (n−1)/(n+1)).
//! A pair at angle ≤ θ_n therefore reaches orthogonality in n rounds.
//! θ_0 = π/2, θ_1 = arccos(1/3), θ_2 = π/3, and θ_n ↓ 0 like 2/√n.

use super::GeomError;
use crate::config::Tolerances;
use num_rational::Ratio;

/// The exact ladder value c_n = n/(n+2); f(c_n) = c_{n−1} holds in ℚ.
pub fn c(n: u64) -> Ratio<i64> {
    assert!(n <= i64::MAX as u64 - 2, "ladder index out of range");
    Ratio::new(n as i64, n as i64 + 2)
}

/// The ladder angle θ_n = arccos(c_n), strictly decreasing to 0.
pub fn theta(n: u64) -> f64 {
    let x = n as f64;
    (x / (x + 2.0)).acos()
}

/// The least n with θ_n ≤ angle: the number of collapse rounds needed
/// from a pair at the given angle. Domain (0, π/2]; comparisons carry an
/// `eps_ang` slack so that boundary angles such as π/3 (whose cosine is
/// not exactly representable) land on the intended rung.
pub fn n_min(angle: f64, tol: &Tolerances) -> Result<u64, GeomError> {
    if !(angle.is_finite() && angle > 0.0 && angle <= std::f64::consts::FRAC_PI_2) {
        return Err(GeomError::ThetaOutOfRange);
    }
    let reaches = |n: u64| theta(n) <= angle + tol.eps_ang;
    if reaches(0) {
        return Ok(0);
    }
    // θ_n is monotone in n: bracket the crossing by doubling, then
    // bisect for the least rung that dips below the angle.
    let mut hi = 1u64;
    while !reaches(hi) {
        hi *= 2; // terminates: at n = 2⁶³ the ladder value rounds to 1 and θ_n to 0
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if reaches(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}
