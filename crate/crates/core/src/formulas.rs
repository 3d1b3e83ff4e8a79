//! Closed-form evaluation of the monotonicity quantities.
//!
//! For parameters `x > 0`, `a > 0` the quotient under study is
//! `f(x) = (phi(ax) - phi(x)) / (x (Phi(ax) + Phi(x)))`, and the sign of its
//! derivative is carried by
//!
//! ```text
//! h(x) = (ax phi'(ax) - x phi'(x)) (Phi(ax) + Phi(x))
//!        - (phi(ax) - phi(x)) (Phi(ax) + Phi(x))
//!        - (phi(ax) - phi(x)) (ax phi(ax) + x phi(x)),
//! ```
//!
//! so that `f'(x) = h(x) / (x (Phi(ax) + Phi(x)))^2` by the quotient rule.
//! This module evaluates `h` both term-by-term (`h_closed`) and through the
//! separable moment form `h = 4 (M3 M0 - M1 M2)` over `[-x, ax]`
//! (`h_separable`), plus the four reduction identities that connect the
//! closed-form factors to Gaussian moments. Everything here is pure
//! closed-form arithmetic; the quadrature module supplies the independent
//! integral evaluations these are checked against.

use crate::error::Error;
use crate::specfun::{capital_phi, gaussian_moment, phi, phi_prime, Interval, MomentOrder};
use serde::Serialize;

/// Relative width of the indeterminate band for sign classification:
/// `|h| <= 1e-13 * (|t1| + |t2| + |t3|)` is reported as sign 0.
const SIGN_BAND: f64 = 1e-13;

/// Validated problem parameters: `x > 0`, `a > 0`, both finite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Params {
    x: f64,
    a: f64,
}

impl Params {
    pub fn new(x: f64, a: f64) -> Result<Self, Error> {
        if x.is_finite() && a.is_finite() && x > 0.0 && a > 0.0 {
            Ok(Self { x, a })
        } else {
            Err(Error::InvalidParams { x, a })
        }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// The integration interval `[-x, ax]` shared by the moment and
    /// integral forms.
    pub fn interval(&self) -> Interval {
        Interval::new(-self.x, self.a * self.x).expect("-x < ax for valid Params")
    }
}

/// The four reduction identities tying closed-form factors to moments of
/// `phi` over `[-x, ax]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IdentityId {
    /// `ax phi'(ax) - x phi'(x) = -4 M1 + 4 M3`
    DerivativeTerm,
    /// `Phi(ax) + Phi(x) = M0`
    PhiSum,
    /// `phi(ax) - phi(x) = -2 M1`
    PhiDiff,
    /// `ax phi(ax) + x phi(x) = M0 - 2 M2`
    XPhiSum,
}

impl IdentityId {
    pub const ALL: [IdentityId; 4] = [
        IdentityId::DerivativeTerm,
        IdentityId::PhiSum,
        IdentityId::PhiDiff,
        IdentityId::XPhiSum,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            IdentityId::DerivativeTerm => "identity_a_derivative_term",
            IdentityId::PhiSum => "identity_b_phi_sum",
            IdentityId::PhiDiff => "identity_c_phi_diff",
            IdentityId::XPhiSum => "identity_d_xphi_sum",
        }
    }
}

/// Numerator `phi(ax) - phi(x)`, evaluated as
/// `phi(x) * expm1((1 - a^2) x^2)` so values near `a = 1` lose nothing to
/// cancellation; `1 - a^2` is itself formed as `(1 - a)(1 + a)`, which is
/// exact in the first factor where it matters. This is the canonical
/// numerator path for every formula in the crate; the naive difference is
/// kept only where the exponent would overflow `expm1`, which is far
/// outside the cancellation region.
pub fn phi_diff(p: Params) -> f64 {
    let e = (1.0 - p.a) * (1.0 + p.a) * p.x * p.x;
    if e <= 700.0 {
        phi(p.x) * e.exp_m1()
    } else {
        phi(p.a * p.x) - phi(p.x)
    }
}

/// Denominator `x (Phi(ax) + Phi(x))`; strictly positive for valid Params.
pub fn denominator(p: Params) -> f64 {
    p.x * (capital_phi(p.a * p.x) + capital_phi(p.x))
}

/// The quotient `f(x) = (phi(ax) - phi(x)) / (x (Phi(ax) + Phi(x)))`.
pub fn f_value(p: Params) -> f64 {
    phi_diff(p) / denominator(p)
}

/// The three terms of the closed form of `h`, in display order.
fn h_terms(p: Params) -> [f64; 3] {
    let ax = p.a * p.x;
    let phi_sum = capital_phi(ax) + capital_phi(p.x);
    let num = phi_diff(p);
    [
        (ax * phi_prime(ax) - p.x * phi_prime(p.x)) * phi_sum,
        num * phi_sum,
        num * (ax * phi(ax) + p.x * phi(p.x)),
    ]
}

/// Term-by-term evaluation of the closed form of `h`.
///
/// Exactly zero at `a = 1`: every difference of identical factors vanishes
/// bit-for-bit.
pub fn h_closed(p: Params) -> f64 {
    let [t1, t2, t3] = h_terms(p);
    t1 - t2 - t3
}

/// Sign of `h` with an indeterminate band: returns 0 when `|h|` is below
/// `1e-13` times the summed magnitude of the three closed-form terms
/// (there is then no trustworthy sign at working precision), otherwise
/// -1 or +1.
pub fn h_sign(p: Params) -> i32 {
    let [t1, t2, t3] = h_terms(p);
    let h = t1 - t2 - t3;
    let scale = t1.abs() + t2.abs() + t3.abs();
    if h.abs() <= SIGN_BAND * scale {
        0
    } else if h > 0.0 {
        1
    } else {
        -1
    }
}

/// Separable moment form `h = 4 (M3 M0 - M1 M2)` with all moments taken
/// over `[-x, ax]`.
pub fn h_separable(p: Params) -> f64 {
    let iv = p.interval();
    let m = |k: u32| gaussian_moment(MomentOrder::new(k).expect("k <= 60"), iv);
    4.0 * (m(3) * m(0) - m(1) * m(2))
}

/// Derivative of the quotient, `f'(x) = h(x) / denominator(x)^2`.
pub fn f_prime(p: Params) -> f64 {
    let d = denominator(p);
    h_closed(p) / (d * d)
}

/// Left and right sides of a reduction identity, evaluated through
/// deliberately different code paths: the left side uses only pointwise
/// kernel values, the right side only Gaussian moments over `[-x, ax]`.
pub fn reduction_identity_sides(id: IdentityId, p: Params) -> (f64, f64) {
    let ax = p.a * p.x;
    let iv = p.interval();
    let m = |k: u32| gaussian_moment(MomentOrder::new(k).expect("k <= 60"), iv);
    match id {
        IdentityId::DerivativeTerm => (
            ax * phi_prime(ax) - p.x * phi_prime(p.x),
            -4.0 * m(1) + 4.0 * m(3),
        ),
        IdentityId::PhiSum => (capital_phi(ax) + capital_phi(p.x), m(0)),
        IdentityId::PhiDiff => (phi_diff(p), -2.0 * m(1)),
        IdentityId::XPhiSum => (ax * phi(ax) + p.x * phi(p.x), m(0) - 2.0 * m(2)),
    }
}

/// Limit of `f` as `x -> 0+`, namely `(1 - a^2)/(1 + a) = 1 - a`.
pub fn f_small_x_limit(a: f64) -> Result<f64, Error> {
    if a.is_finite() && a > 0.0 {
        Ok(1.0 - a)
    } else {
        Err(Error::InvalidArgument(format!(
            "small-x limit needs finite a > 0, got {a}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, a: f64) -> Params {
        Params::new(x, a).unwrap()
    }

    fn rel_err(got: f64, want: f64) -> f64 {
        if want == 0.0 {
            got.abs()
        } else {
            ((got - want) / want).abs()
        }
    }

    #[test]
    fn params_reject_bad_values() {
        assert!(Params::new(0.0, 1.0).is_err());
        assert!(Params::new(-1.0, 1.0).is_err());
        assert!(Params::new(1.0, 0.0).is_err());
        assert!(Params::new(1.0, -2.0).is_err());
        assert!(Params::new(f64::NAN, 1.0).is_err());
        assert!(Params::new(1.0, f64::INFINITY).is_err());
        assert!(Params::new(1e-8, 4.0).is_ok());
    }

    #[test]
    fn f_is_exactly_zero_at_a_one() {
        for &x in &[0.1, 1.0, 1.3, 2.7] {
            assert_eq!(f_value(p(x, 1.0)), 0.0, "x = {x}");
        }
    }

    #[test]
    fn f_matches_high_precision_oracle() {
        // 60-digit evaluations at the exact binary parameter values.
        assert!(rel_err(f_value(p(1.0, 1.4)), -0.142711866387982) < 1e-13);
        assert!(rel_err(f_value(p(1.0, 0.5)), 0.3401370696622432) < 1e-13);
        assert!(rel_err(f_value(p(0.5, 3.0)), -1.0222651979473287) < 1e-13);
    }

    #[test]
    fn f_approaches_small_x_limit() {
        for &a in &[0.5, 1.0, 2.0] {
            let f = f_value(p(1e-3, a));
            let lim = f_small_x_limit(a).unwrap();
            assert!((f - lim).abs() <= 5e-3, "a = {a}: f = {f}, limit = {lim}");
        }
    }

    #[test]
    fn small_x_limit_rejects_nonpositive_a() {
        assert!(f_small_x_limit(0.0).is_err());
        assert!(f_small_x_limit(-1.0).is_err());
        assert_eq!(f_small_x_limit(2.0).unwrap(), -1.0);
    }

    #[test]
    fn denominator_matches_oracle_and_stays_positive() {
        assert!(rel_err(denominator(p(1.0, 1.0)), 1.4936482656248542) < 1e-15);
        assert!(rel_err(denominator(p(1.0, 1.4)), 1.5907648466540907) < 1e-14);
        for &(x, a) in &[(1e-8, 2.0), (0.3, 0.25), (3.0, 4.0), (1e-3, 1.0)] {
            assert!(denominator(p(x, a)) > 0.0, "({x}, {a})");
        }
    }

    #[test]
    fn h_closed_matches_oracle() {
        assert!(rel_err(h_closed(p(1.0, 1.4)), 0.7814770540969252) < 1e-13);
        assert!(rel_err(h_closed(p(1.0, 0.5)), -0.38918115725801955) < 1e-13);
        assert!(rel_err(h_closed(p(0.5, 3.0)), 1.1440247419920402) < 1e-13);
    }

    #[test]
    fn h_closed_is_exactly_zero_at_a_one() {
        for &x in &[0.1, 0.9, 2.0, 3.0] {
            assert_eq!(h_closed(p(x, 1.0)), 0.0, "x = {x}");
            assert_eq!(h_sign(p(x, 1.0)), 0, "x = {x}");
        }
    }

    #[test]
    fn h_sign_tracks_a_minus_one() {
        assert_eq!(h_sign(p(1.0, 1.4)), 1);
        assert_eq!(h_sign(p(0.1, 1.25)), 1);
        assert_eq!(h_sign(p(1.0, 0.5)), -1);
        assert_eq!(h_sign(p(2.5, 0.8)), -1);
    }

    #[test]
    fn h_separable_agrees_with_h_closed() {
        let mut a = 0.25;
        while a <= 4.0 {
            let mut x = 0.1;
            while x <= 3.0 {
                let hc = h_closed(p(x, a));
                let hs = h_separable(p(x, a));
                let tol = 1e-14_f64.max(1e-11 * hc.abs().max(hs.abs()));
                assert!(
                    (hc - hs).abs() <= tol,
                    "x = {x}, a = {a}: closed {hc:e} vs separable {hs:e}"
                );
                x += 0.3;
            }
            a += 0.25;
        }
    }

    #[test]
    fn f_prime_matches_oracle_and_quotient_rule() {
        assert!(rel_err(f_prime(p(1.0, 1.4)), 0.30881917630752254) < 1e-13);
        assert!(rel_err(f_prime(p(1.0, 0.5)), -0.2666504626498799) < 1e-13);
        assert!(rel_err(f_prime(p(0.5, 3.0)), 2.6364184034306604) < 1e-13);
    }

    #[test]
    fn f_prime_matches_central_difference() {
        for &(x, a) in &[(0.5f64, 0.5), (1.0, 1.4), (2.0, 2.0), (0.3, 4.0)] {
            let step = 1e-5 * x.max(1.0);
            let fd = (f_value(p(x + step, a)) - f_value(p(x - step, a))) / (2.0 * step);
            let fp = f_prime(p(x, a));
            assert!(
                rel_err(fp, fd) < 1e-6,
                "({x}, {a}): f' = {fp:e}, FD = {fd:e}"
            );
        }
    }

    #[test]
    fn reduction_identities_hold_on_random_params() {
        // Simple deterministic LCG so the sampled points never change.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for trial in 0..200 {
            let x = 0.05 + 2.95 * next();
            let a = 0.1 + 3.9 * next();
            let pt = p(x, a);
            for id in IdentityId::ALL {
                let (lhs, rhs) = reduction_identity_sides(id, pt);
                let tol = 1e-14_f64.max(1e-12 * lhs.abs().max(rhs.abs()));
                assert!(
                    (lhs - rhs).abs() <= tol,
                    "trial {trial}, {:?} at ({x}, {a}): {lhs:e} vs {rhs:e}",
                    id
                );
            }
        }
    }

    #[test]
    fn identity_sides_at_reference_point() {
        // At (1, 1.4): B reads Phi(1.4) + Phi(1) = M0[-1, 1.4].
        let (lhs, rhs) = reduction_identity_sides(IdentityId::PhiSum, p(1.0, 1.4));
        assert!(rel_err(lhs, 1.5907648466540907) < 1e-14);
        assert!((lhs - rhs).abs() <= 1e-14_f64.max(1e-12 * lhs.abs()));
    }

    #[test]
    fn numerator_rearrangement_matches_naive_difference() {
        let mut x = 0.2;
        while x <= 3.0 {
            for &a in &[0.25, 0.5, 0.8, 1.25, 1.4, 2.0, 4.0] {
                if (a - 1.0_f64).abs() * x * x > 0.1 {
                    let pt = p(x, a);
                    let naive = phi(a * x) - phi(x);
                    let canon = phi_diff(pt);
                    assert!(
                        rel_err(canon, naive) <= 1e-13,
                        "({x}, {a}): {canon:e} vs {naive:e}"
                    );
                }
            }
            x += 0.2;
        }
    }
}
