//! Cross-checked numerics for a Gaussian monotonicity family.
//!
//! For `phi(t) = exp(-t^2)` with antiderivative
//! `Phi(t) = (sqrt(pi)/2) erf(t)`, the quotient
//!
//! ```text
//! f(x) = (phi(a x) - phi(x)) / (x (Phi(a x) + Phi(x))),    x > 0, a > 0,
//! ```
//!
//! is strictly increasing in `x` for `a > 1`, strictly decreasing for
//! `a < 1`, and identically zero at `a = 1`. The sign of `f'` is carried by
//! a bracket `h` expressible three independent ways: a closed form in
//! pointwise values of `phi` and `Phi`, a separable form in Gaussian
//! moments over `[-x, ax]`, and a double integral of
//! `phi(u) phi(v) gamma(u, v)` over the square `[-x, ax]^2`, where the
//! kernel `gamma(u, v) = 2 (u + v)(u - v)^2` is antisymmetric under
//! `(u, v) -> (-u, -v)` and sign-definite off the symmetric core of the
//! square. Agreement between the three routes, together with the sign
//! structure of the kernel, pins the monotonicity claim numerically.
//!
//! Each ingredient lives behind its own module so every formula is
//! computed at least two independent ways:
//!
//! - [`specfun`]: `phi`, an in-house `erf`, and truncated Gaussian moments.
//! - [`formulas`]: the quotient `f`, the bracket `h` in closed and
//!   separable form, and the four reduction identities tying them together.
//! - [`kernel`]: the integrand kernel, its symmetrization, and the
//!   decomposition of the integration square into core and strips.
//! - [`quadrature`]: deterministic adaptive Gauss-Legendre rules and the
//!   double-integral form of `h`.
//! - [`verify`]: named cross-checks, monotonicity scans, and campaigns.
//! - [`cli`]: the `monoverify` command-line front end.

pub mod cli;
pub mod error;
pub mod formulas;
pub mod kernel;
pub mod quadrature;
pub mod specfun;
pub mod verify;

pub use error::Error;
