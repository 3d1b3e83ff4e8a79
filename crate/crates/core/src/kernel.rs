//! Symmetry kernel of the double-integral form and its sign geometry.
//!
//! Rewriting `h` as a double integral over the square `[-x, ax]^2` puts all
//! sign information into the kernel multiplying `phi(u) phi(v)`:
//! the raw separable kernel is `gamma_tilde(u, v) = 4 (u^3 - u v^2)` and its
//! symmetrization is `gamma(u, v) = 2 (u + v)(u - v)^2`, which vanishes on
//! the diagonal `u = v` and the anti-diagonal `u + v = 0` and otherwise
//! carries the sign of `u + v`. Splitting the square into the core
//! `[-m, m]^2` with `m = min(x, ax)` (where `gamma` integrates to zero by
//! antisymmetry) plus sign-definite strips makes the sign of `h` readable
//! off the geometry; `decompose_rectangle` builds exactly that partition.

use crate::error::Error;
use crate::formulas::Params;
use crate::specfun::Interval;
use serde::Serialize;

/// Axis-aligned rectangle `u x v` in the integration plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rect {
    pub u: Interval,
    pub v: Interval,
}

impl Rect {
    pub fn new(u: Interval, v: Interval) -> Self {
        Self { u, v }
    }

    pub fn area(&self) -> f64 {
        self.u.width() * self.v.width()
    }

    /// True when `(u, v)` lies in the closed rectangle.
    pub fn contains(&self, u: f64, v: f64) -> bool {
        self.u.contains(u) && self.v.contains(v)
    }
}

/// Partition of the full square `[-x, ax]^2` into the symmetric core and
/// sign-definite remainder strips.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Decomposition {
    /// Core square `[-m, m]^2`, `m = min(x, ax)`; `gamma` integrates to
    /// zero over it.
    pub core: Rect,
    /// Remainder strips tiling the rest of the full square; empty at `a = 1`.
    pub strips: Vec<Rect>,
    /// Sign of `gamma` on the strip interiors: `sign(a - 1)`.
    pub strip_sign: i32,
}

/// Sampled kernel values on a lattice, with optional labelled overlay
/// rectangles for downstream rendering.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceGrid {
    pub region: Rect,
    pub n_u: usize,
    pub n_v: usize,
    /// `values[i * n_v + j] = gamma(u_i, v_j)` with `u` the slow axis.
    pub values: Vec<f64>,
    pub overlays: Vec<Overlay>,
}

/// A named rectangle drawn over a surface grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Overlay {
    pub label: String,
    pub rect: Rect,
}

/// Symmetrized kernel `gamma(u, v) = 2 (u + v)(u - v)^2`.
pub fn gamma(u: f64, v: f64) -> f64 {
    let s = u + v;
    let d = u - v;
    2.0 * s * d * d
}

/// Raw separable kernel `gamma_tilde(u, v) = 4 (u^3 - u v^2)`.
pub fn gamma_tilde(u: f64, v: f64) -> f64 {
    4.0 * (u * u * u - u * v * v)
}

/// Returns `(gamma(u, v), (gamma_tilde(u, v) + gamma_tilde(v, u)) / 2)`.
///
/// The two components are algebraically equal; numerically they agree to a
/// few ulp of [`cubic_term_scale`], the magnitude of the cubic products
/// inside `gamma_tilde`. Near the zero set `u = v` or `u + v = 0` both
/// values cancel far below that scale, so agreement must be judged against
/// it rather than the (tiny) common value.
pub fn symmetrize_check(u: f64, v: f64) -> (f64, f64) {
    (
        gamma(u, v),
        0.5 * (gamma_tilde(u, v) + gamma_tilde(v, u)),
    )
}

/// Magnitude `4 max(|u|, |v|)^3` of the cubic products `4 u^3` and
/// `4 u v^2` whose difference forms `gamma_tilde`. Rounding in the kernel
/// evaluations lives at a few ulp of this scale, independent of how small
/// the kernel value itself is.
pub fn cubic_term_scale(u: f64, v: f64) -> f64 {
    let m = u.abs().max(v.abs());
    4.0 * m * m * m
}

/// `gamma(u, v) + gamma(-u, -v)`; exactly zero in IEEE arithmetic because
/// negation commutes with every rounding step of `gamma`.
pub fn antisymmetry_residual(u: f64, v: f64) -> f64 {
    gamma(u, v) + gamma(-u, -v)
}

/// Sign of `gamma` by region: 0 on the diagonal and anti-diagonal,
/// otherwise the sign of `u + v`.
pub fn sign_region(u: f64, v: f64) -> i32 {
    if u == v || u + v == 0.0 {
        0
    } else if u + v > 0.0 {
        1
    } else {
        -1
    }
}

/// Full integration square `[-x, ax]^2`.
pub fn full_rectangle(p: Params) -> Rect {
    let iv = p.interval();
    Rect::new(iv, iv)
}

/// Splits `[-x, ax]^2` into the core square `[-m, m]^2` and sign-definite
/// strips.
///
/// For `a > 1` the remainder is the right strip `[x, ax] x [-x, ax]` plus
/// the top strip `[-x, x] x [x, ax]`, where `u + v >= 0` throughout. For
/// `a < 1` it is the mirrored pair `[-x, -ax] x [-x, ax]` and
/// `[-ax, ax] x [-x, -ax]` with `u + v <= 0`. At `a = 1` there is no
/// remainder.
pub fn decompose_rectangle(p: Params) -> Decomposition {
    let x = p.x();
    let ax = p.a() * p.x();
    let m = x.min(ax);
    let core_iv = Interval::new(-m, m).expect("m > 0");
    let core = Rect::new(core_iv, core_iv);
    let full = p.interval();
    if p.a() > 1.0 && ax > x {
        let right = Interval::new(x, ax).expect("x <= ax");
        Decomposition {
            core,
            strips: vec![
                Rect::new(right, full),
                Rect::new(core_iv, right),
            ],
            strip_sign: 1,
        }
    } else if p.a() < 1.0 && ax < x {
        let left = Interval::new(-x, -ax).expect("-x <= -ax");
        Decomposition {
            core,
            strips: vec![
                Rect::new(left, full),
                Rect::new(core_iv, left),
            ],
            strip_sign: -1,
        }
    } else {
        Decomposition {
            core,
            strips: Vec::new(),
            strip_sign: 0,
        }
    }
}

/// Samples `gamma` on an `n_u x n_v` lattice over `region`, endpoints
/// included. Lattice nodes are formed symmetric-exactly, so a region
/// symmetric about the origin yields values that mirror to their exact
/// negation. Overlays start empty; callers attach them as needed.
pub fn surface_grid(region: Rect, n_u: usize, n_v: usize) -> Result<SurfaceGrid, Error> {
    if n_u < 2 || n_v < 2 {
        return Err(Error::InvalidSurface(format!(
            "lattice needs at least 2 points per axis, got {n_u} x {n_v}"
        )));
    }
    if region.u.width() == 0.0 || region.v.width() == 0.0 {
        return Err(Error::InvalidSurface(
            "region must have positive extent on both axes".into(),
        ));
    }
    let us = lattice(region.u, n_u);
    let vs = lattice(region.v, n_v);
    let mut values = Vec::with_capacity(n_u * n_v);
    for &u in &us {
        for &v in &vs {
            values.push(gamma(u, v));
        }
    }
    Ok(SurfaceGrid {
        region,
        n_u,
        n_v,
        values,
        overlays: Vec::new(),
    })
}

/// Nodes of `surface_grid`, exposed so emitters reproduce the exact
/// coordinates that generated the values.
pub fn lattice(iv: Interval, n: usize) -> Vec<f64> {
    let m = (n - 1) as f64;
    (0..n)
        .map(|i| {
            if i == 0 {
                iv.lo()
            } else if i == n - 1 {
                iv.hi()
            } else {
                // Convex combination keeps symmetric intervals exactly
                // symmetric: node(i) == -node(n-1-i) when lo == -hi.
                (iv.lo() * (m - i as f64) + iv.hi() * i as f64) / m
            }
        })
        .collect()
}
