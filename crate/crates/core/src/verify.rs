//! Verification campaign tying every formula of the crate together.
//!
//! Each cross-check is materialized as a [`VerificationReport`] whose pass
//! flag is derived from its own stored fields, so a report archive can be
//! re-audited without re-running any numerics. [`verify_identities`] checks
//! the equivalent forms of `h`, the four reduction identities, and the
//! derivative against a finite difference at one parameter point;
//! [`scan_monotonicity`] classifies signs along an `x` grid; [`campaign`]
//! aggregates both over a parameter grid and adds lattice checks of the
//! kernel's pointwise identities.

use crate::error::Error;
use crate::formulas::{
    denominator, f_prime, f_value, h_closed, h_separable, h_sign, IdentityId, Params,
    reduction_identity_sides,
};
use crate::kernel::{antisymmetry_residual, cubic_term_scale, lattice, symmetrize_check};
use crate::quadrature::{h_double_integral, h_tilde_integrals, QuadResult, QuadSpec};
use crate::specfun::{phi, Interval};
use serde::Serialize;

/// Check names emitted by [`verify_identities`], in emission order.
pub const CHECK_NAMES: [&str; 11] = [
    "f_display_quotient",
    "h_closed_vs_h_separable",
    "h_closed_vs_h_double_integral",
    "h_tilde_uv_vs_h_tilde_vu",
    "h_tilde_uv_vs_h_closed",
    "h_tilde_vu_vs_h_closed",
    "identity_a_derivative_term",
    "identity_b_phi_sum",
    "identity_c_phi_diff",
    "identity_d_xphi_sum",
    "f_prime_vs_finite_difference",
];

/// Names of the lattice checks added by [`campaign`] on top of the
/// per-point checks.
pub const KERNEL_CHECK_NAMES: [&str; 2] =
    ["gamma_symmetrization_grid", "gamma_antisymmetry_grid"];

/// Consecutive `f` differences at or below this magnitude carry no sign
/// information at working precision and are exempt from the
/// grid-difference direction check.
const GRID_DIFF_EXEMPT: f64 = 1e-13;

/// Half-width and point count of the symmetric lattice used by the
/// campaign's pointwise kernel checks.
const KERNEL_LATTICE_HALF_WIDTH: f64 = 2.0;
const KERNEL_LATTICE_POINTS: usize = 41;

/// Acceptance thresholds for one comparison: it passes when
/// `|lhs - rhs| <= max(abs_tol, rel_tol * max(|lhs|, |rhs|))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Tolerance {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Self {
        Self { abs_tol, rel_tol }
    }

    /// The error magnitude this tolerance admits for the given sides.
    pub fn threshold(&self, lhs: f64, rhs: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * lhs.abs().max(rhs.abs()))
    }
}

/// Outcome of one named comparison.
///
/// All derived fields (`abs_err`, `rel_err`, `pass`) are recomputable from
/// `lhs`, `rhs`, the stored tolerances, and the note; [`Self::audit`]
/// performs exactly that recomputation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_err: f64,
    /// `abs_err / max(|lhs|, |rhs|)`, or 0 when both sides are zero.
    pub rel_err: f64,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub pass: bool,
    /// Annotation for degraded checks (currently only quadrature
    /// non-convergence); its presence forces `pass = false`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl VerificationReport {
    pub fn new(check_name: &str, lhs: f64, rhs: f64, tol: Tolerance) -> Self {
        Self::annotated(check_name, lhs, rhs, tol, None)
    }

    /// Builds a report with an optional degradation note. `pass` is always
    /// derived from the other fields, never supplied by the caller.
    pub fn annotated(
        check_name: &str,
        lhs: f64,
        rhs: f64,
        tol: Tolerance,
        note: Option<String>,
    ) -> Self {
        let abs_err = (lhs - rhs).abs();
        let scale = lhs.abs().max(rhs.abs());
        let rel_err = if scale > 0.0 { abs_err / scale } else { 0.0 };
        let pass = note.is_none() && abs_err <= tol.threshold(lhs, rhs);
        Self {
            check_name: check_name.to_owned(),
            lhs,
            rhs,
            abs_err,
            rel_err,
            abs_tol: tol.abs_tol,
            rel_tol: tol.rel_tol,
            pass,
            note,
        }
    }

    /// Rebuilds the report from its stored inputs and compares; a tampered
    /// or internally inconsistent report fails its own audit.
    pub fn audit(&self) -> bool {
        let rebuilt = Self::annotated(
            &self.check_name,
            self.lhs,
            self.rhs,
            Tolerance::new(self.abs_tol, self.rel_tol),
            self.note.clone(),
        );
        rebuilt == *self
    }
}

/// One grid point of a monotonicity scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRow {
    pub x: f64,
    pub a: f64,
    pub f: f64,
    pub h: f64,
    pub f_prime: f64,
    /// `sign(a - 1)`: the sign every `h` on the row's grid must take.
    pub sign_expected: i32,
    /// Banded sign classification of `h` at this point.
    pub sign_observed: i32,
    pub consistent: bool,
}

/// A full scan along an `x` grid at fixed `a`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
    /// True when every row is sign-consistent and every consecutive `f`
    /// difference above the exemption band moves in the expected
    /// direction.
    pub monotone_consistent: bool,
    /// Largest magnitude among wrong-direction consecutive differences and
    /// misclassified-row `h` values; 0 when fully consistent.
    pub worst_violation: f64,
}

/// Aggregate outcome of [`campaign`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignResult {
    pub scans: Vec<ScanReport>,
    pub reports: Vec<VerificationReport>,
    pub summary: String,
}

impl CampaignResult {
    /// True when every report passes and every scan is consistent.
    pub fn all_pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
            && self.scans.iter().all(|s| s.monotone_consistent)
    }
}

/// The default `a` grid: both monotonicity regimes, the flat case, and the
/// surface-plot configuration `a = 1.4`.
pub fn default_a_values() -> Vec<f64> {
    vec![0.25, 0.5, 0.8, 1.0, 1.25, 1.4, 2.0, 4.0]
}

/// The default scan grid `x = 0.1, 0.15, ..., 3.0`.
pub fn default_x_grid() -> Vec<f64> {
    uniform_grid(0.1, 3.0, 0.05).expect("default grid parameters are valid")
}

/// Builds the grid `x_min, x_min + step, ...` up to `x_max`. When the span
/// is a whole number of steps (up to rounding) the last point is snapped to
/// exactly `x_max`; otherwise the grid stops at the last point not past
/// `x_max`.
pub fn uniform_grid(x_min: f64, x_max: f64, step: f64) -> Result<Vec<f64>, Error> {
    if !(x_min.is_finite() && x_max.is_finite() && x_min <= x_max) {
        return Err(Error::InvalidGrid(format!(
            "grid needs finite x_min <= x_max, got [{x_min}, {x_max}]"
        )));
    }
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::InvalidGrid(format!("grid step must be > 0, got {step}")));
    }
    let ratio = (x_max - x_min) / step;
    let snapped = (ratio - ratio.round()).abs() <= 1e-9 * ratio.round().max(1.0);
    let n = if snapped { ratio.round() as usize } else { ratio.floor() as usize };
    let mut grid = Vec::with_capacity(n + 1);
    for i in 0..=n {
        if snapped && i == n {
            grid.push(x_max);
        } else {
            grid.push(x_min + step * i as f64);
        }
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidGrid(format!(
            "step {step} is below resolution on [{x_min}, {x_max}]"
        )));
    }
    Ok(grid)
}

fn validate_x_grid(x_grid: &[f64]) -> Result<(), Error> {
    if x_grid.is_empty() {
        return Err(Error::InvalidGrid("x grid must be non-empty".into()));
    }
    if x_grid.iter().any(|&x| !(x.is_finite() && x > 0.0)) {
        return Err(Error::InvalidGrid("x grid values must be finite and > 0".into()));
    }
    if x_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidGrid("x grid must be strictly increasing".into()));
    }
    Ok(())
}

/// Note text for a check backed by adaptive quadrature, present when any
/// contributing integral failed to converge.
fn quad_note(parts: &[(&str, &QuadResult)]) -> Option<String> {
    let bad: Vec<String> = parts
        .iter()
        .filter(|(_, r)| !r.converged)
        .map(|(label, r)| {
            format!(
                "{label} quadrature unconverged (err estimate {:.3e} after {} evaluations)",
                r.err_estimate, r.evaluations
            )
        })
        .collect();
    if bad.is_empty() {
        None
    } else {
        Some(bad.join("; "))
    }
}

/// Runs the full identity suite at one parameter point with the default
/// per-check tolerances. See [`CHECK_NAMES`] for the emission order.
pub fn verify_identities(p: Params, spec: &QuadSpec) -> Result<Vec<VerificationReport>, Error> {
    verify_identities_with_tolerance(p, spec, None)
}

/// [`verify_identities`] with every per-check tolerance replaced by
/// `override_tol` when one is supplied. The override substitutes both
/// members wholesale, so an unattainable override fails the suite even
/// where the default tolerances are dynamic.
pub fn verify_identities_with_tolerance(
    p: Params,
    spec: &QuadSpec,
    override_tol: Option<Tolerance>,
) -> Result<Vec<VerificationReport>, Error> {
    spec.validate()?;
    let tol = |default: Tolerance| override_tol.unwrap_or(default);
    let mut out = Vec::with_capacity(CHECK_NAMES.len());

    let x = p.x();
    let ax = p.a() * p.x();
    let h_cf = h_closed(p);

    // The displayed quotient with its naive numerator against the
    // cancellation-safe evaluation. The absolute tolerance is the forward
    // rounding envelope of the naive form, so the check stays meaningful
    // arbitrarily close to a = 1 where the relative error of the naive
    // numerator blows up legitimately.
    let quotient = (phi(ax) - phi(x)) / denominator(p);
    let envelope = 8.0 * f64::EPSILON * phi(ax).max(phi(x)) / denominator(p);
    out.push(VerificationReport::new(
        "f_display_quotient",
        quotient,
        f_value(p),
        tol(Tolerance::new(envelope, 1e-13)),
    ));

    out.push(VerificationReport::new(
        "h_closed_vs_h_separable",
        h_cf,
        h_separable(p),
        tol(Tolerance::new(1e-14, 1e-11)),
    ));

    let dbl = h_double_integral(p, spec)?;
    out.push(VerificationReport::annotated(
        "h_closed_vs_h_double_integral",
        h_cf,
        dbl.value,
        tol(Tolerance::new(1e-10, 1e-9)),
        quad_note(&[("double-integral", &dbl)]),
    ));

    // The raw kernel in both argument orders: the two integrals must agree
    // within their combined error estimates, and each must reproduce the
    // closed form.
    let (uv, vu) = h_tilde_integrals(p, spec)?;
    out.push(VerificationReport::annotated(
        "h_tilde_uv_vs_h_tilde_vu",
        uv.value,
        vu.value,
        tol(Tolerance::new(uv.err_estimate + vu.err_estimate, 0.0)),
        quad_note(&[("tilde(u, v)", &uv), ("tilde(v, u)", &vu)]),
    ));
    out.push(VerificationReport::annotated(
        "h_tilde_uv_vs_h_closed",
        uv.value,
        h_cf,
        tol(Tolerance::new(1e-10, 1e-9)),
        quad_note(&[("tilde(u, v)", &uv)]),
    ));
    out.push(VerificationReport::annotated(
        "h_tilde_vu_vs_h_closed",
        vu.value,
        h_cf,
        tol(Tolerance::new(1e-10, 1e-9)),
        quad_note(&[("tilde(v, u)", &vu)]),
    ));

    for id in IdentityId::ALL {
        let (lhs, rhs) = reduction_identity_sides(id, p);
        out.push(VerificationReport::new(
            id.name(),
            lhs,
            rhs,
            tol(Tolerance::new(1e-12, 1e-12)),
        ));
    }

    // Central difference of f against the closed-form derivative. The step
    // is clamped below x/2 so both displaced points stay in the domain.
    let step = (1e-5 * x.max(1.0)).min(0.5 * x);
    let f_plus = f_value(Params::new(x + step, p.a())?);
    let f_minus = f_value(Params::new(x - step, p.a())?);
    let fd = (f_plus - f_minus) / (2.0 * step);
    out.push(VerificationReport::new(
        "f_prime_vs_finite_difference",
        f_prime(p),
        fd,
        tol(Tolerance::new(1e-10, 1e-6)),
    ));

    Ok(out)
}

/// Scans `h`'s banded sign and `f`'s direction of change along `x_grid` at
/// fixed `a`. Rows are consistent when the observed sign equals
/// `sign(a - 1)`; the report is monotone-consistent when additionally
/// every consecutive `f` difference larger than `1e-13` in magnitude
/// moves in the expected direction.
pub fn scan_monotonicity(a: f64, x_grid: &[f64], spec: &QuadSpec) -> Result<ScanReport, Error> {
    spec.validate()?;
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "scan needs finite a > 0, got {a}"
        )));
    }
    validate_x_grid(x_grid)?;

    let sign_expected = if a > 1.0 {
        1
    } else if a < 1.0 {
        -1
    } else {
        0
    };
    let mut rows = Vec::with_capacity(x_grid.len());
    for &x in x_grid {
        let p = Params::new(x, a)?;
        let sign_observed = h_sign(p);
        rows.push(ScanRow {
            x,
            a,
            f: f_value(p),
            h: h_closed(p),
            f_prime: f_prime(p),
            sign_expected,
            sign_observed,
            consistent: sign_observed == sign_expected,
        });
    }

    let mut monotone_consistent = rows.iter().all(|r| r.consistent);
    let mut worst_violation = 0.0f64;
    for r in &rows {
        if !r.consistent {
            worst_violation = worst_violation.max(r.h.abs());
        }
    }
    for w in rows.windows(2) {
        let d = w[1].f - w[0].f;
        if d.abs() > GRID_DIFF_EXEMPT {
            let dir = if d > 0.0 { 1 } else { -1 };
            if dir != sign_expected {
                monotone_consistent = false;
                worst_violation = worst_violation.max(d.abs());
            }
        }
    }
    Ok(ScanReport {
        rows,
        monotone_consistent,
        worst_violation,
    })
}

/// Corner and median elements of a non-empty sorted slice, deduplicated.
fn corner_median(sorted: &[f64]) -> Vec<f64> {
    let mut picks = vec![sorted[0], sorted[sorted.len() / 2], sorted[sorted.len() - 1]];
    picks.sort_by(f64::total_cmp);
    picks.dedup();
    picks
}

fn symmetrization_grid_report() -> VerificationReport {
    let pts = kernel_lattice();
    let mut worst = 0.0f64;
    for &u in &pts {
        for &v in &pts {
            let (g, sym) = symmetrize_check(u, v);
            let scale = cubic_term_scale(u, v);
            if scale > 0.0 {
                worst = worst.max((g - sym).abs() / scale);
            }
        }
    }
    VerificationReport::new(
        "gamma_symmetrization_grid",
        worst,
        0.0,
        Tolerance::new(1e-14, 0.0),
    )
}

fn antisymmetry_grid_report() -> VerificationReport {
    let pts = kernel_lattice();
    let mut worst = 0.0f64;
    for &u in &pts {
        for &v in &pts {
            worst = worst.max(antisymmetry_residual(u, v).abs());
        }
    }
    VerificationReport::new(
        "gamma_antisymmetry_grid",
        worst,
        0.0,
        Tolerance::new(0.0, 0.0),
    )
}

fn kernel_lattice() -> Vec<f64> {
    let iv = Interval::new(-KERNEL_LATTICE_HALF_WIDTH, KERNEL_LATTICE_HALF_WIDTH)
        .expect("static lattice bounds are valid");
    lattice(iv, KERNEL_LATTICE_POINTS)
}

/// Runs the identity suite at the corner and median points of
/// `a_values x x_grid`, the two kernel lattice checks, and one
/// monotonicity scan per distinct `a`. Identity reports are ordered by
/// `(a, x, check_name)`; scans by `a`.
pub fn campaign(
    a_values: &[f64],
    x_grid: &[f64],
    spec: &QuadSpec,
) -> Result<CampaignResult, Error> {
    spec.validate()?;
    if a_values.is_empty() {
        return Err(Error::InvalidGrid("a values must be non-empty".into()));
    }
    if a_values.iter().any(|&a| !(a.is_finite() && a > 0.0)) {
        return Err(Error::InvalidGrid("a values must be finite and > 0".into()));
    }
    validate_x_grid(x_grid)?;

    let mut a_sorted = a_values.to_vec();
    a_sorted.sort_by(f64::total_cmp);
    a_sorted.dedup();

    let mut tagged: Vec<(f64, f64, VerificationReport)> = Vec::new();
    for &a in &corner_median(&a_sorted) {
        for &x in &corner_median(x_grid) {
            let p = Params::new(x, a)?;
            for report in verify_identities(p, spec)? {
                tagged.push((a, x, report));
            }
        }
    }
    tagged.sort_by(|l, r| {
        l.0.total_cmp(&r.0)
            .then(l.1.total_cmp(&r.1))
            .then(l.2.check_name.cmp(&r.2.check_name))
    });
    let point_count = tagged.len() / CHECK_NAMES.len();
    let mut reports: Vec<VerificationReport> = tagged.into_iter().map(|t| t.2).collect();
    reports.push(symmetrization_grid_report());
    reports.push(antisymmetry_grid_report());

    let mut scans = Vec::with_capacity(a_sorted.len());
    for &a in &a_sorted {
        scans.push(scan_monotonicity(a, x_grid, spec)?);
    }

    let passed = reports.iter().filter(|r| r.pass).count();
    let consistent = scans.iter().filter(|s| s.monotone_consistent).count();
    let overall = if passed == reports.len() && consistent == scans.len() {
        "PASS"
    } else {
        "FAIL"
    };
    let summary = format!(
        "checks: {passed}/{} passed ({point_count} parameter points, {} lattice checks); \
         scans: {consistent}/{} monotone-consistent; \
         coverage: a in [{}, {}] ({} values), x in [{}, {}] ({} points); overall: {overall}",
        reports.len(),
        KERNEL_CHECK_NAMES.len(),
        scans.len(),
        a_sorted[0],
        a_sorted[a_sorted.len() - 1],
        a_sorted.len(),
        x_grid[0],
        x_grid[x_grid.len() - 1],
        x_grid.len(),
    );

    Ok(CampaignResult {
        scans,
        reports,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(x: f64, a: f64) -> Params {
        Params::new(x, a).unwrap()
    }

    fn spec() -> QuadSpec {
        QuadSpec::default()
    }

    #[test]
    fn figure_point_reports_all_pass() {
        let reports = verify_identities(p(1.0, 1.4), &spec()).unwrap();
        let names: Vec<&str> = reports.iter().map(|r| r.check_name.as_str()).collect();
        assert_eq!(names, CHECK_NAMES);
        for r in &reports {
            assert!(r.pass, "{} failed: {r:?}", r.check_name);
            assert!(r.note.is_none());
        }
    }

    #[test]
    fn symmetric_point_reports_vanish() {
        let reports = verify_identities(p(2.0, 1.0), &spec()).unwrap();
        for r in &reports {
            assert!(r.pass, "{} failed: {r:?}", r.check_name);
        }
        for r in &reports {
            if r.check_name.starts_with("h_") {
                assert!(r.lhs.abs() <= 1e-12, "{}: lhs {}", r.check_name, r.lhs);
                assert!(r.rhs.abs() <= 1e-12, "{}: rhs {}", r.check_name, r.rhs);
            }
        }
        let display = &reports[0];
        assert_eq!(display.check_name, "f_display_quotient");
        assert_eq!(display.lhs, 0.0);
        assert_eq!(display.rhs, 0.0);
    }

    #[test]
    fn asymmetric_point_reports_all_pass() {
        for r in verify_identities(p(0.1, 4.0), &spec()).unwrap() {
            assert!(r.pass, "{} failed: {r:?}", r.check_name);
        }
    }

    #[test]
    fn reports_are_self_auditing() {
        for (x, a) in [(1.0, 1.4), (2.0, 1.0), (0.1, 4.0), (0.5, 0.25)] {
            for r in verify_identities(p(x, a), &spec()).unwrap() {
                assert!(r.audit(), "audit failed for {r:?}");
            }
        }
    }

    #[test]
    fn tampered_report_fails_audit() {
        let mut r = VerificationReport::new("tamper_target", 1.0, 1.0 + 1e-13, Tolerance::new(1e-12, 0.0));
        assert!(r.pass);
        assert!(r.audit());
        r.pass = false;
        assert!(!r.audit());
        r.pass = true;
        r.abs_err = 0.0;
        assert!(!r.audit());
    }

    #[test]
    fn unattainable_override_forces_failure() {
        let reports =
            verify_identities_with_tolerance(p(1.0, 1.4), &spec(), Some(Tolerance::new(0.0, 1e-30)))
                .unwrap();
        assert!(reports.iter().any(|r| !r.pass));
        for r in &reports {
            assert_eq!(r.abs_tol, 0.0);
            assert_eq!(r.rel_tol, 1e-30);
        }
    }

    #[test]
    fn starved_quadrature_is_noted_not_fatal() {
        let starved = QuadSpec {
            max_panels: 1,
            ..QuadSpec::default()
        };
        let reports = verify_identities(p(1.0, 1.4), &starved).unwrap();
        let dbl = reports
            .iter()
            .find(|r| r.check_name == "h_closed_vs_h_double_integral")
            .unwrap();
        assert!(!dbl.pass);
        assert!(dbl.note.as_deref().unwrap().contains("unconverged"));
        for r in &reports {
            if r.check_name.starts_with("identity_") {
                assert!(r.pass, "{} should not depend on quadrature", r.check_name);
            }
            assert!(r.audit());
        }
    }

    #[test]
    fn scan_is_increasing_above_one() {
        let report = scan_monotonicity(1.4, &default_x_grid(), &spec()).unwrap();
        assert!(report.monotone_consistent);
        assert_eq!(report.worst_violation, 0.0);
        for r in &report.rows {
            assert_eq!(r.sign_expected, 1);
            assert_eq!(r.sign_observed, 1, "at x = {}", r.x);
            assert!(r.h > 0.0);
        }
        for w in report.rows.windows(2) {
            assert!(w[1].f > w[0].f, "f not increasing at x = {}", w[1].x);
        }
    }

    #[test]
    fn scan_is_flat_at_one() {
        let report = scan_monotonicity(1.0, &default_x_grid(), &spec()).unwrap();
        assert!(report.monotone_consistent);
        for r in &report.rows {
            assert!(r.f.abs() <= 1e-14);
            assert_eq!(r.sign_observed, 0);
            assert!(r.consistent);
        }
    }

    #[test]
    fn scan_is_decreasing_below_one() {
        let report = scan_monotonicity(0.5, &default_x_grid(), &spec()).unwrap();
        assert!(report.monotone_consistent);
        for r in &report.rows {
            assert_eq!(r.sign_observed, -1, "at x = {}", r.x);
            assert!(r.h < 0.0);
        }
        for w in report.rows.windows(2) {
            assert!(w[1].f < w[0].f, "f not decreasing at x = {}", w[1].x);
        }
    }

    #[test]
    fn scan_rejects_bad_inputs() {
        let s = spec();
        assert!(scan_monotonicity(1.4, &[], &s).is_err());
        assert!(scan_monotonicity(1.4, &[1.0, 1.0], &s).is_err());
        assert!(scan_monotonicity(1.4, &[2.0, 1.0], &s).is_err());
        assert!(scan_monotonicity(1.4, &[-1.0, 1.0], &s).is_err());
        assert!(scan_monotonicity(0.0, &[1.0], &s).is_err());
        assert!(scan_monotonicity(-2.0, &[1.0], &s).is_err());
        assert!(scan_monotonicity(f64::NAN, &[1.0], &s).is_err());
    }

    #[test]
    fn uniform_grid_snaps_commensurate_endpoint() {
        let grid = uniform_grid(0.1, 3.0, 0.05).unwrap();
        assert_eq!(grid.len(), 59);
        assert_eq!(grid[0], 0.1);
        assert_eq!(*grid.last().unwrap(), 3.0);
        assert!(grid.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn uniform_grid_stops_before_incommensurate_endpoint() {
        let grid = uniform_grid(0.0, 1.0, 0.3).unwrap();
        assert_eq!(grid, vec![0.0, 0.3, 0.6, 0.3 * 3.0]);
        assert!(*grid.last().unwrap() <= 1.0);
    }

    #[test]
    fn uniform_grid_handles_degenerate_span() {
        assert_eq!(uniform_grid(2.0, 2.0, 0.5).unwrap(), vec![2.0]);
    }

    #[test]
    fn uniform_grid_rejects_bad_inputs() {
        assert!(uniform_grid(1.0, 0.5, 0.1).is_err());
        assert!(uniform_grid(0.1, 3.0, 0.0).is_err());
        assert!(uniform_grid(0.1, 3.0, -0.05).is_err());
        assert!(uniform_grid(0.1, f64::INFINITY, 0.05).is_err());
        assert!(uniform_grid(0.1, 3.0, f64::NAN).is_err());
    }

    #[test]
    fn campaign_default_configuration_passes() {
        let result = campaign(&default_a_values(), &default_x_grid(), &spec()).unwrap();
        assert!(result.all_pass(), "summary: {}", result.summary);
        assert_eq!(result.scans.len(), 8);
        assert_eq!(result.reports.len(), 9 * CHECK_NAMES.len() + KERNEL_CHECK_NAMES.len());
        assert!(result.summary.contains("overall: PASS"));
        for r in &result.reports {
            assert!(r.audit());
        }
    }

    #[test]
    fn campaign_is_deterministic() {
        let first = campaign(&default_a_values(), &default_x_grid(), &spec()).unwrap();
        let second = campaign(&default_a_values(), &default_x_grid(), &spec()).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn campaign_accepts_degenerate_grids() {
        let result = campaign(&[1.0], &[1.0], &spec()).unwrap();
        assert!(result.all_pass());
        assert_eq!(result.scans.len(), 1);
        assert_eq!(result.reports.len(), CHECK_NAMES.len() + KERNEL_CHECK_NAMES.len());
    }

    #[test]
    fn campaign_rejects_empty_inputs() {
        let s = spec();
        assert!(campaign(&[], &[1.0], &s).is_err());
        assert!(campaign(&[1.0], &[], &s).is_err());
        assert!(campaign(&[0.0], &[1.0], &s).is_err());
    }

    #[test]
    fn campaign_covers_every_check_name() {
        let result = campaign(&default_a_values(), &default_x_grid(), &spec()).unwrap();
        for name in CHECK_NAMES.iter().chain(KERNEL_CHECK_NAMES.iter()) {
            assert!(
                result.reports.iter().any(|r| r.check_name == *name),
                "missing check {name}"
            );
        }
    }

    proptest! {
        #[test]
        fn constructed_reports_always_audit(
            lhs in -1e6f64..1e6,
            rhs in -1e6f64..1e6,
            abs_tol in 0.0f64..1.0,
            rel_tol in 0.0f64..1.0,
        ) {
            let r = VerificationReport::new("proptest_check", lhs, rhs, Tolerance::new(abs_tol, rel_tol));
            prop_assert!(r.audit());
            let threshold = abs_tol.max(rel_tol * lhs.abs().max(rhs.abs()));
            prop_assert_eq!(r.pass, (lhs - rhs).abs() <= threshold);
        }

        #[test]
        fn scan_rows_echo_grid(
            a in 0.1f64..4.0,
            n in 2usize..20,
        ) {
            let grid: Vec<f64> = (0..n).map(|i| 0.2 + 0.1 * i as f64).collect();
            let report = scan_monotonicity(a, &grid, &QuadSpec::default()).unwrap();
            prop_assert_eq!(report.rows.len(), grid.len());
            for (row, &x) in report.rows.iter().zip(&grid) {
                prop_assert_eq!(row.x, x);
                prop_assert_eq!(row.a, a);
            }
        }
    }
}
