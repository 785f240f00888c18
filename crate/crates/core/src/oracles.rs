//! Independent reference solvers used to cross-check the main pipeline.
//!
//! Nothing in this module touches the lattice-based machinery elsewhere in
//! the crate. The interval eigenvalue below integrates the one-dimensional
//! ODE directly and shoots on the Neumann boundary condition, so it stands on
//! its own as an oracle for the graph-based estimates; the closed forms are
//! the textbook values it is checked against.

use crate::error::{Error, Result};

/// The generalized half-period `pi_p = 2 pi / (p sin(pi / p))` of the
/// one-dimensional p-trigonometric system, for `p > 1`.
pub fn pi_p(p: f64) -> f64 {
    2.0 * std::f64::consts::PI / (p * (std::f64::consts::PI / p).sin())
}

/// Closed form for the first nonzero Neumann eigenvalue of the
/// one-dimensional p-Laplacian on an interval of the given length:
/// `(p - 1) (pi_p / length)^p`.
pub fn interval_lambda_closed_form(p: f64, length: f64) -> f64 {
    (p - 1.0) * (pi_p(p) / length).powf(p)
}

/// Closed form for `lambda_{1,p}` of a circle of the given radius. The first
/// eigenfunction is even about its extrema, so the circle problem restricts
/// to a Neumann problem on an interval of half the circumference.
pub fn circle_lambda_closed_form(p: f64, radius: f64) -> f64 {
    interval_lambda_closed_form(p, std::f64::consts::PI * radius)
}

/// Closed form for the scale-invariant product `diam * lambda_{1,p}^{1/p}`
/// on a circle: `2 pi (p - 1)^{1/p} / (p sin(pi / p))`.
pub fn circle_profile_closed_form(p: f64) -> f64 {
    (p - 1.0).powf(1.0 / p) * pi_p(p)
}

/// Smallest nonzero eigenvalue of the periodic second-difference operator on
/// `n` equispaced circle samples of radius `radius` (mesh `2 pi r / n`),
/// found by enumerating the circulant spectrum.
pub fn circle_fd_lambda(n: usize, radius: f64) -> f64 {
    let mesh = 2.0 * std::f64::consts::PI * radius / n as f64;
    let mut best = f64::INFINITY;
    for k in 1..n {
        let ev = (2.0 - 2.0 * (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos())
            / (mesh * mesh);
        if ev > 1e-15 && ev < best {
            best = ev;
        }
    }
    best
}

/// First nonzero Neumann eigenvalue of the one-dimensional p-Laplacian on an
/// interval of the given length, computed by a shooting method.
///
/// The boundary-value problem is `-(|u'|^{p-2} u')' = lambda |u|^{p-2} u`
/// with `u'(0) = u'(length) = 0`. In the flux variable `v = |u'|^{p-2} u'`
/// the system is first order:
///
/// ```text
/// u' = sign(v) |v|^{1/(p-1)},    v' = -lambda sign(u) |u|^{p-1}.
/// ```
///
/// Starting from `(u, v) = (1, 0)` the flux dips negative, `u` descends
/// through one sign change, and `v` returns to zero exactly when `u` reaches
/// its opposite extremum — one Neumann half-period. That return time is
/// strictly decreasing in `lambda`, so bisection on `lambda` pins the value
/// whose half-period equals the interval length.
pub fn neumann_p_eigenvalue_interval(p: f64, length: f64) -> Result<f64> {
    const OP: &str = "oracles::neumann_p_eigenvalue_interval";
    if !(p.is_finite() && p > 1.0) {
        return Err(Error::InvalidExponent {
            op: OP,
            detail: format!("p must be finite and > 1, got {p}"),
        });
    }
    if !(length.is_finite() && length > 0.0) {
        return Err(Error::InvalidArgument {
            op: OP,
            detail: format!("length must be finite and positive, got {length}"),
        });
    }

    // Bracket: half_period(lo) > length > half_period(hi).
    let mut lo = 1.0;
    let mut hi = 1.0;
    for _ in 0..1100 {
        match half_period(p, lo, length) {
            Some(t) if t <= length => lo /= 2.0,
            _ => break,
        }
    }
    for _ in 0..1100 {
        match half_period(p, hi, length) {
            Some(t) if t > length => hi *= 2.0,
            None => hi *= 2.0,
            _ => break,
        }
    }
    if !(lo < hi) {
        return Err(Error::NumericalFailure {
            op: OP,
            detail: format!("failed to bracket the eigenvalue for p={p}, length={length}"),
        });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // adjacent floats
        }
        match half_period(p, mid, length) {
            Some(t) if t <= length => hi = mid,
            _ => lo = mid,
        }
        if (hi - lo) < 1e-13 * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Integrates the flux-form system from `(u, v) = (1, 0)` and returns the
/// first `x > 0` at which `v` comes back to zero after `u` has changed sign,
/// or `None` if that does not happen before `2 * length` (meaning the
/// half-period exceeds the interval and the trial eigenvalue is too small).
fn half_period(p: f64, lambda: f64, length: f64) -> Option<f64> {
    let steps_per_length = 20_000.0;
    let dx = length / steps_per_length;
    let cap = 2.0 * length;

    let du = |v: f64| -> f64 { v.signum() * v.abs().powf(1.0 / (p - 1.0)) };
    let dv = |u: f64| -> f64 { -lambda * u.signum() * u.abs().powf(p - 1.0) };

    let mut x = 0.0;
    let mut u = 1.0f64;
    let mut v = 0.0f64;
    let mut u_crossed = false;
    while x < cap {
        let (k1u, k1v) = (du(v), dv(u));
        let (k2u, k2v) = (du(v + 0.5 * dx * k1v), dv(u + 0.5 * dx * k1u));
        let (k3u, k3v) = (du(v + 0.5 * dx * k2v), dv(u + 0.5 * dx * k2u));
        let (k4u, k4v) = (du(v + dx * k3v), dv(u + dx * k3u));
        let u_next = u + dx / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        let v_next = v + dx / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        if u_next < 0.0 {
            u_crossed = true;
        }
        if u_crossed && v < 0.0 && v_next >= 0.0 {
            // Linear interpolation of the v-zero inside the step.
            let frac = v / (v - v_next);
            return Some(x + frac * dx);
        }
        u = u_next;
        v = v_next;
        x += dx;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms_match_frozen_values() {
        // Frozen from independent high-precision evaluation of the formulas.
        assert!((pi_p(1.5) - 4.836798304625).abs() < 1e-9);
        assert!((pi_p(2.0) - std::f64::consts::PI).abs() < 1e-12);
        assert!((interval_lambda_closed_form(1.5, std::f64::consts::PI) - 0.955173272732).abs() < 1e-9);
        assert!((interval_lambda_closed_form(3.0, std::f64::consts::PI) - 0.912355980942).abs() < 1e-9);
        assert!((interval_lambda_closed_form(5.0, std::f64::consts::PI) - 0.583803267665).abs() < 1e-9);
        assert!((interval_lambda_closed_form(3.0, 1.0) - 28.288761976003).abs() < 1e-8);
        assert!((circle_profile_closed_form(1.5) - 3.046991999046).abs() < 1e-9);
        assert!((circle_profile_closed_form(5.0) - 2.821000590042).abs() < 1e-9);
        assert!((circle_profile_closed_form(10.0) - 2.532921644754).abs() < 1e-9);
        assert!((circle_profile_closed_form(100.0) - 2.094391123337).abs() < 1e-9);
    }

    #[test]
    fn shooting_reproduces_p2_exactly_solvable_cases() {
        // p = 2 is the linear case: lambda = (pi / L)^2.
        let l = neumann_p_eigenvalue_interval(2.0, std::f64::consts::PI).unwrap();
        assert!((l - 1.0).abs() < 1e-7, "lambda(2, pi) = {l}");
        let l = neumann_p_eigenvalue_interval(2.0, 2.0).unwrap();
        assert!((l - 2.467401100272).abs() < 1e-7, "lambda(2, 2) = {l}");
    }

    #[test]
    fn shooting_matches_closed_form_across_exponents() {
        for &p in &[1.2, 1.5, 3.0, 5.0, 10.0] {
            let want = interval_lambda_closed_form(p, std::f64::consts::PI);
            let got = neumann_p_eigenvalue_interval(p, std::f64::consts::PI).unwrap();
            let rel = (got - want).abs() / want;
            assert!(rel < 2e-5, "p={p}: shooting {got} vs closed {want}, rel {rel}");
        }
    }

    #[test]
    fn shooting_scales_with_interval_length() {
        // lambda scales like length^{-p}.
        let a = neumann_p_eigenvalue_interval(3.0, 1.0).unwrap();
        let b = neumann_p_eigenvalue_interval(3.0, 2.0).unwrap();
        assert!((a / b - 8.0).abs() < 1e-4, "ratio {}", a / b);
    }

    #[test]
    fn shooting_rejects_bad_arguments() {
        assert!(neumann_p_eigenvalue_interval(1.0, 1.0).is_err());
        assert!(neumann_p_eigenvalue_interval(2.0, 0.0).is_err());
        assert!(neumann_p_eigenvalue_interval(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn fd_circle_oracle_is_near_one_for_unit_circle() {
        let l = circle_fd_lambda(400, 1.0);
        assert!((l - 1.0).abs() < 1e-3, "fd lambda {l}");
    }
}
