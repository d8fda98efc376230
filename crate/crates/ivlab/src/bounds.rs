//! Concentration bounds for the index variable `Z`.
//!
//! The machinery runs on three scalar rate functions (`psi`, `psi_star`,
//! `phi`), moment identities connecting `Z` to the information content
//! `H = pi * dist^2` of the associated Gaussian-tail density, and three tail
//! bounds of increasing looseness: the Bennett-style bound driven by
//! `psi_star`, its Bernstein-style quadratic weakening, and the dimension-only
//! headline bound `2 exp(-3 t^2 / (28 n))`. [`tail_report`] evaluates all of
//! them against the exact tail masses of a sequence on a `t` grid.
//!
//! Everything exponential is assembled in log space and exponentiated last.

use crate::exact::IVSequence;
use crate::ivstats;
use crate::{Check, Error, Result};

/// Which tail of the distribution a bound refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Upper,
    Lower,
}

/// Moments of `Z` and of the information content `H`, tied together by
/// `EZ = n - 2 EH` and `VarZ = 4 (VarH - EH)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcentrationStats {
    pub n: usize,
    pub mean_z: f64,
    pub var_z: f64,
    pub eh: f64,
    pub eh2: f64,
}

impl ConcentrationStats {
    /// Variance of the information content, `EH2 - EH^2`.
    pub fn var_h(&self) -> f64 {
        self.eh2 - self.eh * self.eh
    }
}

/// `psi(s) = (e^{2s} - 2s - 1) / 2`, the mgf rate. Stable near zero via
/// `exp_m1`.
pub fn psi(s: f64) -> f64 {
    (f64::exp_m1(2.0 * s) - 2.0 * s) / 2.0
}

/// Legendre dual rate `psi_star(s) = ((1+s) ln(1+s) - s) / 2` for `s > -1`.
pub fn psi_star(s: f64) -> Result<f64> {
    if s <= -1.0 || s.is_nan() {
        return Err(Error::InvalidInput(format!(
            "psi_star requires s > -1, got {s}"
        )));
    }
    Ok(((1.0 + s) * f64::ln_1p(s) - s) / 2.0)
}

/// `phi(b) = -b - ln(1 - b)` for `b < 1`.
pub fn phi(b: f64) -> Result<f64> {
    if b >= 1.0 || b.is_nan() {
        return Err(Error::InvalidInput(format!("phi requires b < 1, got {b}")));
    }
    Ok(-b - f64::ln_1p(-b))
}

/// Recover the `H` moments exactly from a sequence: `EH = (n - EZ) / 2` and
/// `4 EH2 = E(n - Z)^2 + 2 E(n - Z)`.
pub fn h_moments_from_sequence(a: &IVSequence) -> Result<ConcentrationStats> {
    let d = ivstats::normalize(a)?;
    let n = a.n() as f64;
    let e_nz: f64 = d
        .probs
        .iter()
        .enumerate()
        .map(|(j, p)| (n - j as f64) * p)
        .sum();
    let e_nz2: f64 = d
        .probs
        .iter()
        .enumerate()
        .map(|(j, p)| (n - j as f64) * (n - j as f64) * p)
        .sum();
    Ok(ConcentrationStats {
        n: a.n(),
        mean_z: d.mean,
        var_z: d.variance,
        eh: e_nz / 2.0,
        eh2: (e_nz2 + 2.0 * e_nz) / 4.0,
    })
}

/// The two variance bounds `(2 (n + EZ), 4 n)`; `VarZ` never exceeds either.
pub fn variance_bound(stats: &ConcentrationStats) -> (f64, f64) {
    let n = stats.n as f64;
    (2.0 * (n + stats.mean_z), 4.0 * n)
}

/// Sharpened variance bound `2 (n - EZ)`.
pub fn variance_bound_sharp(stats: &ConcentrationStats) -> f64 {
    2.0 * (stats.n as f64 - stats.mean_z)
}

/// Bennett-style tail bound `exp{-(n + EZ) psi_star(+-t / (n + EZ))}`.
///
/// The upper side is defined for all `t >= 0`. The lower side needs
/// `t < n + EZ`, where `psi_star` exists; at and beyond that point the tail
/// mass is zero anyway and the bound is reported as a domain error.
pub fn bennett_tail(n: usize, ez: f64, t: f64, side: Side) -> Result<f64> {
    let scale = n as f64 + ez;
    if t < 0.0 || t.is_nan() {
        return Err(Error::InvalidInput(format!("t must be >= 0, got {t}")));
    }
    let s = match side {
        Side::Upper => t / scale,
        Side::Lower => -t / scale,
    };
    Ok((-scale * psi_star(s)?).exp())
}

/// Bernstein-style weakening `exp{-(t^2 / 4) / (n + EZ +- t / 3)}`.
///
/// Follows from `psi_star(s) >= (s^2 / 4) / (1 + s / 3)`, which holds on all
/// of `s > -1`, so the upper side accepts every `t >= 0`; the lower side
/// requires a positive denominator.
pub fn bernstein_tail(n: usize, ez: f64, t: f64, side: Side) -> Result<f64> {
    let scale = n as f64 + ez;
    if t < 0.0 || t.is_nan() {
        return Err(Error::InvalidInput(format!("t must be >= 0, got {t}")));
    }
    let denom = match side {
        Side::Upper => scale + t / 3.0,
        Side::Lower => scale - t / 3.0,
    };
    if denom <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "lower-side denominator must be positive, got {denom}"
        )));
    }
    Ok((-(t * t / 4.0) / denom).exp())
}

/// Dimension-only bound `2 exp{-3 t^2 / (28 n)}` with `t` in index units,
/// valid for `0 <= t <= n` (in deviation units, tau <= sqrt(n)).
pub fn headline_tail(n: usize, t: f64) -> Result<f64> {
    if !(t >= 0.0 && t <= n as f64) {
        return Err(Error::InvalidInput(format!(
            "headline bound is stated for 0 <= t <= n = {n}, got {t}"
        )));
    }
    Ok(2.0 * (-3.0 * t * t / (28.0 * n as f64)).exp())
}

/// Centered mgf `E exp{theta (Z - EZ)}` by direct summation.
pub fn mgf_lhs(a: &IVSequence, theta: f64) -> Result<f64> {
    let d = ivstats::normalize(a)?;
    Ok(d.probs
        .iter()
        .enumerate()
        .map(|(j, p)| p * (theta * (j as f64 - d.mean)).exp())
        .sum())
}

/// Log of the mgf bound: `psi(theta) * (n + EZ)`.
pub fn mgf_log_bound(n: usize, ez: f64, theta: f64) -> f64 {
    psi(theta) * (n as f64 + ez)
}

/// The mgf bound itself; overflows to infinity once the log form passes
/// ~709, so comparisons should prefer [`mgf_log_bound`].
pub fn mgf_bound(n: usize, ez: f64, theta: f64) -> f64 {
    mgf_log_bound(n, ez, theta).exp()
}

/// Exact tail masses of a sequence on a `t` grid, next to the three bounds.
///
/// Bounds that are undefined at a grid point (lower side beyond its domain,
/// headline beyond `t = n`) are `None` rather than asserted. `checks`
/// collects the dominance relations wherever both sides exist.
#[derive(Debug, Clone)]
pub struct TailReport {
    pub t: Vec<f64>,
    pub upper_mass: Vec<f64>,
    pub lower_mass: Vec<f64>,
    pub two_sided_mass: Vec<f64>,
    pub bennett_upper: Vec<f64>,
    pub bennett_lower: Vec<Option<f64>>,
    pub bernstein_upper: Vec<f64>,
    pub bernstein_lower: Vec<Option<f64>>,
    pub headline: Vec<Option<f64>>,
    pub checks: Vec<Check>,
}

/// Evaluate empirical tails (closed inequality, `>= t`) and all bounds on
/// the grid.
pub fn tail_report(a: &IVSequence, grid: &[f64]) -> Result<TailReport> {
    let d = ivstats::normalize(a)?;
    let n = a.n();
    let scale = n as f64 + d.mean;
    let mut report = TailReport {
        t: grid.to_vec(),
        upper_mass: Vec::new(),
        lower_mass: Vec::new(),
        two_sided_mass: Vec::new(),
        bennett_upper: Vec::new(),
        bennett_lower: Vec::new(),
        bernstein_upper: Vec::new(),
        bernstein_lower: Vec::new(),
        headline: Vec::new(),
        checks: Vec::new(),
    };
    for &t in grid {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "tail grid values must be finite and >= 0, got {t}"
            )));
        }
        let mut upper = 0.0;
        let mut lower = 0.0;
        let mut two_sided = 0.0;
        for (j, &p) in d.probs.iter().enumerate() {
            let dev = j as f64 - d.mean;
            if dev >= t {
                upper += p;
            }
            if dev <= -t {
                lower += p;
            }
            if dev.abs() >= t {
                two_sided += p;
            }
        }
        let ben_up = bennett_tail(n, d.mean, t, Side::Upper)?;
        let ben_lo = if t < scale {
            Some(bennett_tail(n, d.mean, t, Side::Lower)?)
        } else {
            None
        };
        let bern_up = bernstein_tail(n, d.mean, t, Side::Upper)?;
        let bern_lo = if t < 3.0 * scale {
            Some(bernstein_tail(n, d.mean, t, Side::Lower)?)
        } else {
            None
        };
        let head = if t <= n as f64 {
            Some(headline_tail(n, t)?)
        } else {
            None
        };

        report
            .checks
            .push(Check::le(format!("emp_le_bennett_upper[t={t}]"), upper, ben_up, 1e-12));
        report.checks.push(Check::le(
            format!("bennett_le_bernstein_upper[t={t}]"),
            ben_up,
            bern_up,
            1e-12,
        ));
        if let Some(bl) = ben_lo {
            report
                .checks
                .push(Check::le(format!("emp_le_bennett_lower[t={t}]"), lower, bl, 1e-12));
            report.checks.push(Check::le(
                format!("two_sided_le_bennett_sum[t={t}]"),
                two_sided,
                ben_up + bl,
                1e-12,
            ));
            if let Some(brl) = bern_lo {
                report.checks.push(Check::le(
                    format!("bennett_le_bernstein_lower[t={t}]"),
                    bl,
                    brl,
                    1e-12,
                ));
            }
        }
        if let Some(h) = head {
            report.checks.push(Check::le(
                format!("two_sided_le_headline[t={t}]"),
                two_sided,
                h,
                1e-12,
            ));
        }

        report.upper_mass.push(upper);
        report.lower_mass.push(lower);
        report.two_sided_mass.push(two_sided);
        report.bennett_upper.push(ben_up);
        report.bennett_lower.push(ben_lo);
        report.bernstein_upper.push(bern_up);
        report.bernstein_lower.push(bern_lo);
        report.headline.push(head);
    }
    Ok(report)
}
