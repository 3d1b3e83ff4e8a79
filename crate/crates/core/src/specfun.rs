//! Gaussian kernel, its primitive, and closed-form Gaussian moments.
//!
//! The kernel is the unnormalized Gaussian `phi(x) = exp(-x^2)` with
//! primitive `Phi(x) = integral of phi from 0 to x = (sqrt(pi)/2) * erf(x)`.
//! The error function is implemented in-house (power series plus a
//! complementary continued fraction) so that the rest of the crate carries
//! no special-function dependency, and `gaussian_moment` evaluates
//! `integral of u^k * phi(u) du` on finite intervals by the stable upward
//! recurrence in `k`.

use crate::error::Error;
use serde::Serialize;

/// sqrt(pi)/2, the factor between erf and the Gaussian primitive.
pub(crate) const SQRT_PI_OVER_2: f64 = 0.886226925452758013649083741670572591398774728061193564;

/// Switch point between the erf power series and the continued fraction.
const ERF_SERIES_CUTOFF: f64 = 2.5;

/// Largest supported moment order; keeps the recurrence well inside the
/// range where `u^(k-1) * phi(u)` cannot silently overflow for finite input.
const MAX_MOMENT_ORDER: u32 = 60;

/// A finite closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    /// Builds an interval, rejecting non-finite or reversed bounds.
    pub fn new(lo: f64, hi: f64) -> Result<Self, Error> {
        if lo.is_finite() && hi.is_finite() && lo <= hi {
            Ok(Self { lo, hi })
        } else {
            Err(Error::InvalidInterval { lo, hi })
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    /// True when `t` lies in the closed interval.
    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }
}

/// Moment order `k` for `gaussian_moment`, validated at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MomentOrder(u32);

impl MomentOrder {
    /// Accepts `k <= 60`; larger orders are rejected rather than risking
    /// overflow in the boundary terms of the recurrence.
    pub fn new(k: u32) -> Result<Self, Error> {
        if k <= MAX_MOMENT_ORDER {
            Ok(Self(k))
        } else {
            Err(Error::MomentOrderTooLarge {
                k,
                max: MAX_MOMENT_ORDER,
            })
        }
    }

    pub fn k(&self) -> u32 {
        self.0
    }
}

/// The Gaussian kernel `exp(-x^2)`.
pub fn phi(x: f64) -> f64 {
    (-x * x).exp()
}

/// Derivative of the kernel, via the recurrence `phi'(x) = -2x * phi(x)`.
pub fn phi_prime(x: f64) -> f64 {
    -2.0 * x * phi(x)
}

/// Error function, accurate to about 1e-15 relative on `|x| <= 6`.
///
/// Odd in `x`. Uses the non-alternating power series
/// `erf(x) = (2/sqrt(pi)) x e^{-x^2} sum_n (2x^2)^n / (2n+1)!!`
/// for `|x| <= 2.5` (every term positive, so no cancellation), and
/// `1 - erfc(x)` with erfc from the Laplace continued fraction beyond it.
pub fn erf_core(x: f64) -> f64 {
    if x < 0.0 {
        return -erf_core(-x);
    }
    if x <= ERF_SERIES_CUTOFF {
        erf_series(x)
    } else {
        1.0 - erfc_fraction(x)
    }
}

fn erf_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut n = 0u32;
    while n < 200 {
        n += 1;
        term *= 2.0 * x2 / (2 * n + 1) as f64;
        sum += term;
        if term <= 0.5 * f64::EPSILON * sum {
            break;
        }
    }
    std::f64::consts::FRAC_2_SQRT_PI * x * (-x2).exp() * sum
}

/// Complementary error function for `x > 2.5` via the continued fraction
/// `sqrt(pi) e^{x^2} erfc(x) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))),`
/// evaluated with the modified Lentz algorithm.
fn erfc_fraction(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    let mut n = 0u32;
    while n < 300 {
        n += 1;
        let a = 0.5 * n as f64;
        d = x + a * d;
        if d == 0.0 {
            d = TINY;
        }
        c = x + a / c;
        if c == 0.0 {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < f64::EPSILON {
            break;
        }
    }
    // 1/sqrt(pi) as an exact halving of the std constant 2/sqrt(pi).
    (-x * x).exp() * (0.5 * std::f64::consts::FRAC_2_SQRT_PI) / f
}

/// Gaussian primitive `Phi(x) = (sqrt(pi)/2) * erf(x)`; odd in `x`.
pub fn capital_phi(x: f64) -> f64 {
    SQRT_PI_OVER_2 * erf_core(x)
}

/// `Phi(hi) - Phi(lo)` without tail cancellation.
///
/// When both bounds sit past the series cutoff on the same side, each
/// `Phi` is within a few parts in 1e4 of its limit and the plain
/// difference loses up to eleven digits. Rewriting it as a difference of
/// complementary values, `(sqrt(pi)/2)(erfc(lo) - erfc(hi))`, keeps the
/// dominant term at full relative accuracy because the subtrahend is
/// orders of magnitude smaller. Straddling or core intervals take the
/// plain difference, which is benign there.
fn capital_phi_difference(lo: f64, hi: f64) -> f64 {
    if lo > ERF_SERIES_CUTOFF {
        SQRT_PI_OVER_2 * (erfc_fraction(lo) - erfc_fraction(hi))
    } else if hi < -ERF_SERIES_CUTOFF {
        SQRT_PI_OVER_2 * (erfc_fraction(-hi) - erfc_fraction(-lo))
    } else {
        capital_phi(hi) - capital_phi(lo)
    }
}

/// Closed-form `integral of u^k exp(-u^2) du` over `iv`.
///
/// Seeds: `M_0 = Phi(hi) - Phi(lo)`, formed so tail intervals do not
/// cancel, and `M_1 = (e^{-lo^2} - e^{-hi^2})/2` through `expm1` so nearly
/// equal bounds do not cancel. Higher orders use integration by parts:
/// `M_k = [-(1/2) u^{k-1} e^{-u^2}]_lo^hi + ((k-1)/2) M_{k-2}`.
pub fn gaussian_moment(order: MomentOrder, iv: Interval) -> f64 {
    let k = order.k();
    let (lo, hi) = (iv.lo(), iv.hi());
    if k == 0 {
        return capital_phi_difference(lo, hi);
    }
    if k == 1 {
        return moment_one(lo, hi);
    }
    let mut j = 2 + (k % 2);
    let mut m = if k % 2 == 0 {
        capital_phi_difference(lo, hi)
    } else {
        moment_one(lo, hi)
    };
    while j <= k {
        let boundary = -0.5 * (weighted_power(hi, j - 1) - weighted_power(lo, j - 1));
        m = boundary + 0.5 * (j - 1) as f64 * m;
        j += 2;
    }
    m
}

/// `t^p * phi(t)`, guarded so the power cannot turn an underflowed kernel
/// into `inf * 0 = NaN` for extreme `t`.
fn weighted_power(t: f64, p: u32) -> f64 {
    let ph = phi(t);
    if ph == 0.0 {
        0.0
    } else {
        t.powi(p as i32) * ph
    }
}

/// `M_1` seed `(e^{-lo^2} - e^{-hi^2})/2`.
///
/// Rewritten as `-phi(lo) * expm1(lo^2 - hi^2) / 2`, which stays fully
/// accurate when the bounds nearly coincide, with the exponent formed as
/// `(lo - hi)(lo + hi)` so the difference of squares itself cannot cancel.
/// The naive difference is kept only for exponents large enough to
/// overflow `expm1`, where no cancellation can occur anyway.
fn moment_one(lo: f64, hi: f64) -> f64 {
    let e = (lo - hi) * (lo + hi);
    if e <= 700.0 {
        -0.5 * phi(lo) * e.exp_m1()
    } else {
        0.5 * (phi(lo) - phi(hi))
    }
}
