//! Self-contained adaptive Gauss-Legendre quadrature in 1D and 2D.
//!
//! This is the independent oracle the closed forms are checked against, so
//! it deliberately shares no code with `specfun`'s moment recurrence. Each
//! panel is integrated with a fixed-order Gauss-Legendre rule and an
//! embedded half-order rule; their difference (floored at a rounding-level
//! estimate) is the panel error. The panel with the largest error is split
//! (bisected in 1D, quadrisected in 2D) until the summed estimate meets the
//! tolerance or the panel budget runs out, in which case the result honestly
//! reports `converged = false`. Everything is deterministic: node tables are
//! computed once by Newton iteration on the Legendre polynomials, panels are
//! scanned in a fixed order, and repeated calls give bit-identical results.

use crate::error::Error;
use crate::formulas::Params;
use crate::kernel::{decompose_rectangle, full_rectangle, gamma, gamma_tilde, Rect};
use crate::specfun::{phi, Interval};
use serde::Serialize;
use std::sync::OnceLock;

/// Tolerances and budget for an adaptive integration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadSpec {
    /// Absolute tolerance on the summed error estimate; must be > 0.
    pub abs_tol: f64,
    /// Relative tolerance against the current integral value; must be > 0.
    pub rel_tol: f64,
    /// Hard cap on the number of panels; must be >= 1.
    pub max_panels: usize,
    /// Nodes of the high-order panel rule; the embedded estimate uses half
    /// as many. Must be >= 2.
    pub panel_order: usize,
}

impl Default for QuadSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_panels: 4096,
            panel_order: 20,
        }
    }
}

impl QuadSpec {
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::InvalidQuadSpec(format!(
                "abs_tol must be finite and > 0, got {}",
                self.abs_tol
            )));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::InvalidQuadSpec(format!(
                "rel_tol must be finite and > 0, got {}",
                self.rel_tol
            )));
        }
        if self.max_panels == 0 {
            return Err(Error::InvalidQuadSpec("max_panels must be >= 1".into()));
        }
        if self.panel_order < 2 {
            return Err(Error::InvalidQuadSpec(format!(
                "panel_order must be >= 2, got {}",
                self.panel_order
            )));
        }
        Ok(())
    }
}

/// Outcome of an adaptive integration. `converged = false` means the error
/// estimate still exceeded the tolerance when the panel budget ran out; the
/// value and estimate are still the best available and are never fabricated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: f64,
    pub err_estimate: f64,
    pub evaluations: u64,
    pub converged: bool,
}

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
struct Rule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// Legendre P_n and its derivative at `x` by the three-term recurrence.
fn legendre_pd(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Gauss-Legendre nodes by Newton iteration from the Chebyshev initial
/// guesses, mirrored so the table is exactly symmetric.
fn legendre_rule(n: usize) -> Rule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    if n == 1 {
        weights[0] = 2.0;
        return Rule { nodes, weights };
    }
    for i in 0..n / 2 {
        let mut x =
            (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_pd(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_pd(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        let (_, dp) = legendre_pd(n, 0.0);
        nodes[n / 2] = 0.0;
        weights[n / 2] = 2.0 / (dp * dp);
    }
    Rule { nodes, weights }
}

enum RuleHandle {
    Shared(&'static Rule),
    Owned(Rule),
}

impl RuleHandle {
    fn get(&self) -> &Rule {
        match self {
            RuleHandle::Shared(r) => r,
            RuleHandle::Owned(r) => r,
        }
    }
}

/// The default 20/10 pair is built once and reused; other orders are
/// computed per call, which keeps the engine free of mutable shared state.
fn rule_handle(n: usize) -> RuleHandle {
    static RULE10: OnceLock<Rule> = OnceLock::new();
    static RULE20: OnceLock<Rule> = OnceLock::new();
    match n {
        10 => RuleHandle::Shared(RULE10.get_or_init(|| legendre_rule(10))),
        20 => RuleHandle::Shared(RULE20.get_or_init(|| legendre_rule(20))),
        _ => RuleHandle::Owned(legendre_rule(n)),
    }
}

fn rule_pair(order: usize) -> (RuleHandle, RuleHandle) {
    (rule_handle(order), rule_handle((order / 2).max(1)))
}

/// Panel error: embedded-rule difference, floored at a multiple of the
/// rounding noise of the weighted absolute sum so a fortuitously exact
/// agreement can never understate the achievable accuracy.
fn panel_err(high: f64, low: f64, abs_sum: f64) -> f64 {
    (high - low).abs().max(50.0 * f64::EPSILON * abs_sum)
}

struct Panel1 {
    lo: f64,
    hi: f64,
    value: f64,
    err: f64,
}

fn eval_panel_1d<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, hr: &Rule, lr: &Rule) -> Panel1 {
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let mut s = 0.0;
    let mut s_abs = 0.0;
    for (x, w) in hr.nodes.iter().zip(&hr.weights) {
        let fv = f(c + h * x);
        s += w * fv;
        s_abs += w * fv.abs();
    }
    let mut s_low = 0.0;
    for (x, w) in lr.nodes.iter().zip(&lr.weights) {
        s_low += w * f(c + h * x);
    }
    let value = h * s;
    Panel1 {
        lo,
        hi,
        value,
        err: panel_err(value, h * s_low, h * s_abs),
    }
}

/// Adaptive 1D integration of `f` over `iv`.
pub fn integrate_1d<F: Fn(f64) -> f64>(
    f: F,
    iv: Interval,
    spec: &QuadSpec,
) -> Result<QuadResult, Error> {
    spec.validate()?;
    let (hr, lr) = rule_pair(spec.panel_order);
    let (hr, lr) = (hr.get(), lr.get());
    let per_panel = (hr.nodes.len() + lr.nodes.len()) as u64;
    let mut panels = vec![eval_panel_1d(&f, iv.lo(), iv.hi(), hr, lr)];
    let mut evaluations = per_panel;
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(|p| p.err).sum();
        if err <= spec.abs_tol.max(spec.rel_tol * value.abs()) {
            return Ok(QuadResult {
                value,
                err_estimate: err,
                evaluations,
                converged: true,
            });
        }
        if panels.len() + 1 > spec.max_panels {
            return Ok(QuadResult {
                value,
                err_estimate: err,
                evaluations,
                converged: false,
            });
        }
        let worst = argmax_err(panels.iter().map(|p| p.err));
        let Panel1 { lo, hi, .. } = panels[worst];
        let mid = 0.5 * (lo + hi);
        panels[worst] = eval_panel_1d(&f, lo, mid, hr, lr);
        panels.push(eval_panel_1d(&f, mid, hi, hr, lr));
        evaluations += 2 * per_panel;
    }
}

struct Panel2 {
    rect: Rect,
    value: f64,
    err: f64,
}

fn eval_panel_2d<F: Fn(f64, f64) -> f64>(f: &F, rect: Rect, hr: &Rule, lr: &Rule) -> Panel2 {
    let cu = rect.u.midpoint();
    let hu = 0.5 * rect.u.width();
    let cv = rect.v.midpoint();
    let hv = 0.5 * rect.v.width();
    let mut s = 0.0;
    let mut s_abs = 0.0;
    for (xu, wu) in hr.nodes.iter().zip(&hr.weights) {
        let u = cu + hu * xu;
        for (xv, wv) in hr.nodes.iter().zip(&hr.weights) {
            let fv = f(u, cv + hv * xv);
            let w = wu * wv;
            s += w * fv;
            s_abs += w * fv.abs();
        }
    }
    let mut s_low = 0.0;
    for (xu, wu) in lr.nodes.iter().zip(&lr.weights) {
        let u = cu + hu * xu;
        for (xv, wv) in lr.nodes.iter().zip(&lr.weights) {
            s_low += wu * wv * f(u, cv + hv * xv);
        }
    }
    let scale = hu * hv;
    let value = scale * s;
    Panel2 {
        rect,
        value,
        err: panel_err(value, scale * s_low, scale * s_abs),
    }
}

/// Adaptive 2D tensor-product integration of `f` over `rect`, refining by
/// quadrisection of the worst panel.
pub fn integrate_2d<F: Fn(f64, f64) -> f64>(
    f: F,
    rect: Rect,
    spec: &QuadSpec,
) -> Result<QuadResult, Error> {
    spec.validate()?;
    let (hr, lr) = rule_pair(spec.panel_order);
    let (hr, lr) = (hr.get(), lr.get());
    let nh = hr.nodes.len() as u64;
    let nl = lr.nodes.len() as u64;
    let per_panel = nh * nh + nl * nl;
    let mut panels = vec![eval_panel_2d(&f, rect, hr, lr)];
    let mut evaluations = per_panel;
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(|p| p.err).sum();
        if err <= spec.abs_tol.max(spec.rel_tol * value.abs()) {
            return Ok(QuadResult {
                value,
                err_estimate: err,
                evaluations,
                converged: true,
            });
        }
        if panels.len() + 3 > spec.max_panels {
            return Ok(QuadResult {
                value,
                err_estimate: err,
                evaluations,
                converged: false,
            });
        }
        let worst = argmax_err(panels.iter().map(|p| p.err));
        let r = panels[worst].rect;
        let um = r.u.midpoint();
        let vm = r.v.midpoint();
        let quads = [
            (r.u.lo(), um, r.v.lo(), vm),
            (um, r.u.hi(), r.v.lo(), vm),
            (r.u.lo(), um, vm, r.v.hi()),
            (um, r.u.hi(), vm, r.v.hi()),
        ];
        for (idx, &(ul, uh, vl, vh)) in quads.iter().enumerate() {
            let sub = Rect::new(
                Interval::new(ul, uh).expect("ordered split"),
                Interval::new(vl, vh).expect("ordered split"),
            );
            let panel = eval_panel_2d(&f, sub, hr, lr);
            if idx == 0 {
                panels[worst] = panel;
            } else {
                panels.push(panel);
            }
        }
        evaluations += 4 * per_panel;
    }
}

/// Index of the largest value, first occurrence on ties, so refinement
/// order is deterministic.
fn argmax_err(errs: impl Iterator<Item = f64>) -> usize {
    let mut best = 0;
    let mut best_err = f64::NEG_INFINITY;
    for (i, e) in errs.enumerate() {
        if e > best_err {
            best_err = e;
            best = i;
        }
    }
    best
}

/// The double-integral form of `h`: integral of
/// `phi(u) phi(v) gamma(u, v)` over the full square `[-x, ax]^2`.
pub fn h_double_integral(p: Params, spec: &QuadSpec) -> Result<QuadResult, Error> {
    integrate_2d(
        |u, v| phi(u) * phi(v) * gamma(u, v),
        full_rectangle(p),
        spec,
    )
}

/// The same integral with the raw kernel in both argument orders:
/// `(integral with gamma_tilde(u, v), integral with gamma_tilde(v, u))`.
/// Both equal `h`; disagreement beyond the combined error estimates would
/// expose a quadrature defect.
pub fn h_tilde_integrals(p: Params, spec: &QuadSpec) -> Result<(QuadResult, QuadResult), Error> {
    let rect = full_rectangle(p);
    let uv = integrate_2d(|u, v| phi(u) * phi(v) * gamma_tilde(u, v), rect, spec)?;
    let vu = integrate_2d(|u, v| phi(u) * phi(v) * gamma_tilde(v, u), rect, spec)?;
    Ok((uv, vu))
}

/// Integrates the symmetrized kernel piecewise over the decomposition of
/// the full square: `(core integral, strip integrals in decomposition
/// order)`. The core vanishes by antisymmetry and each strip carries the
/// sign of `a - 1`, so the pieces exhibit the sign mechanism directly.
pub fn integrate_decomposition(
    p: Params,
    spec: &QuadSpec,
) -> Result<(QuadResult, Vec<QuadResult>), Error> {
    let d = decompose_rectangle(p);
    let f = |u: f64, v: f64| phi(u) * phi(v) * gamma(u, v);
    let core = integrate_2d(f, d.core, spec)?;
    let mut strips = Vec::with_capacity(d.strips.len());
    for strip in &d.strips {
        strips.push(integrate_2d(f, *strip, spec)?);
    }
    Ok((core, strips))
}
