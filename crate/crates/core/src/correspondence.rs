//! The open/closed correspondence on a truncation window: the disk
//! potential of the line relative to its equatorial circle on one side, the
//! `z⁻²` coefficient of the paired surface I-function plus the exceptional
//! term on the other.

use serde::Serialize;

use crate::closed::{bessel_i, restricted_i_components, z_coeff};
use crate::error::{Error, Result};
use crate::geometry::{FixedPoint, SurfaceClassId, ToricSurfaceData, UPoly};
use crate::localization::open_invariant;
use crate::series::rational::{format_rational, int, rat, Rational};
use crate::series::{FormalSeries, Monomial, Substitution, TruncationWindow, VLaurent, Var};

fn mono(pairs: &[(Var, i32)]) -> Monomial {
    Monomial::from_pairs(pairs)
}

fn times_laurent(s: &FormalSeries, l: &VLaurent) -> FormalSeries {
    l.terms().fold(FormalSeries::zero(*s.window()), |acc, (k, c)| {
        acc.add(&s.mul_monomial(c, &mono(&[(Var::V, k)])))
    })
}

/// `F = Σ_{μ≠0} e^{μT/v} (v/μ²) I_μ(2μQ/v) X^μ` on the window.
pub fn disk_potential_bessel(window: &TruncationWindow) -> FormalSeries {
    let mut out = FormalSeries::zero(*window);
    if window.is_empty() {
        return out;
    }
    // One extra negative V power survives the multiplication by v.
    let work = window.with_v(window.min_v - 1, window.max_v);
    let argument = mono(&[(Var::Q, 1), (Var::V, -1)]);
    for m in 1..=window.max_abs_x as i32 {
        for mu in [-m, m] {
            let bessel = bessel_i(mu, &int(2 * mu as i64), argument, work);
            let exp = FormalSeries::monomial(int(mu as i64), mono(&[(Var::T, 1), (Var::V, -1)]), work)
                .exp()
                .expect("T-grading bounds the exponential");
            let lead = mono(&[(Var::V, 1), (Var::X, mu)]);
            let term = exp.mul(&bessel).mul_monomial(&rat(1, (mu * mu) as i64), &lead);
            out = out.add(&term.truncate(window));
        }
    }
    out
}

/// `Σ_{β′} Q^{d₋+d₊} N_{β′} X^{d₊-d₋}` from the localization graph sums,
/// for `|μ| ≤ max_abs_mu`, `min(d₋,d₊) ≤ max_d`, at `T = 0`.
pub fn disk_potential_localized(max_abs_mu: u32, max_d: u32) -> Result<FormalSeries> {
    let window = TruncationWindow::new(2 * max_d + max_abs_mu, 0, max_abs_mu, i32::MIN / 2, i32::MAX / 2);
    let mut out = FormalSeries::zero(window);
    for d in 0..=max_d {
        for m in 1..=max_abs_mu {
            for (dm, dp) in [(d + m, d), (d, d + m)] {
                let n = open_invariant((dm, dp), &[])?;
                let base = mono(&[(Var::Q, (dm + dp) as i32), (Var::X, dp as i32 - dm as i32)]);
                for (k, c) in n.terms() {
                    out.add_term(base.with(Var::V, k), c.clone());
                }
            }
        }
    }
    Ok(out)
}

/// Restriction of `F` to the monomials `disk_potential_localized` covers:
/// `T = 0`, `|μ| ≤ max_abs_mu` and `(q - |μ|)/2 ≤ max_d`.
pub fn disk_potential_bessel_small(max_abs_mu: u32, max_d: u32) -> FormalSeries {
    let window = TruncationWindow::new(2 * max_d + max_abs_mu, 0, max_abs_mu, -(4 * max_d as i32 + 2 * max_abs_mu as i32 + 2), 1);
    let f = disk_potential_bessel(&window);
    let kept = f
        .terms()
        .filter(|(m, _)| (m.exp(Var::Q) - m.exp(Var::X).abs()) / 2 <= max_d as i32)
        .map(|(m, c)| (*m, c.clone()));
    FormalSeries::from_terms(kept, window)
}

/// `(I, u1 φ̃0)_S` at `u2 = -u1 = v` is `I|_{σ0}` times this factor; the
/// other two pairing weights vanish.
pub fn pairing_factor() -> Result<VLaurent> {
    let surface = ToricSurfaceData::new();
    let b = surface.class(SurfaceClassId::PhiTilde(0)).scale_poly(&UPoly::u1());
    let kappa = surface.pairing_weights(&b)?;
    for p in [FixedPoint::Sigma1, FixedPoint::Sigma2] {
        if !kappa[p.index()].is_zero() {
            return Err(Error::Degenerate(format!("pairing weight at {} is nonzero", p.name())));
        }
    }
    kappa[FixedPoint::Sigma0.index()].specialize()
}

/// How the exceptional term enters [`rhs_assemble`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExcMode {
    Standard,
    Omitted,
    /// The `T²/(2v)` term with the wrong sign; only for mutation tests.
    Corrupted,
}

/// `Exc = -Q X⁻¹ + Q X - T²/(2v) - Q²/v`.
pub fn exceptional(window: &TruncationWindow, mode: ExcMode) -> FormalSeries {
    let t_sign = if mode == ExcMode::Corrupted { rat(1, 2) } else { rat(-1, 2) };
    let terms = [
        (mono(&[(Var::Q, 1), (Var::X, -1)]), int(-1)),
        (mono(&[(Var::Q, 1), (Var::X, 1)]), int(1)),
        (mono(&[(Var::T, 2), (Var::V, -1)]), t_sign),
        (mono(&[(Var::Q, 2), (Var::V, -1)]), int(-1)),
    ];
    if mode == ExcMode::Omitted {
        return FormalSeries::zero(*window);
    }
    FormalSeries::from_terms(terms, *window)
}

/// `[z⁻²](I_S, u1 φ̃0)|_{u2=-u1=v}` after `q1 ↦ -Q X⁻¹`, `q2 ↦ -Q X`,
/// plus the exceptional term.
pub fn rhs_assemble(window: &TruncationWindow, mode: ExcMode) -> Result<FormalSeries> {
    if window.is_empty() {
        return Ok(FormalSeries::zero(*window));
    }
    let factor = pairing_factor()?;
    let (_, shift) = factor
        .as_monomial()
        .ok_or_else(|| Error::Degenerate("pairing factor is not a monomial".into()))?;
    // Read off the z⁻² coefficient in a window that survives the V shift.
    let work = window.with_v(window.min_v - shift, window.max_v - shift);
    let components = restricted_i_components(&work);
    let coefficient = z_coeff(&components.all(), 2, &work)?;
    let both = work.with_v(work.min_v.min(window.min_v), work.max_v.max(window.max_v));
    let paired = times_laurent(&coefficient.rewindow(both), &factor).truncate(window);
    let substituted = paired.substitute(&Substitution::open_closed()).truncate(window);
    Ok(substituted.add(&exceptional(window, mode)))
}

/// One coefficient of a series in `X, Q, T, V`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiffEntry {
    #[serde(rename = "X")]
    pub x: i32,
    #[serde(rename = "Q")]
    pub q: i32,
    #[serde(rename = "T")]
    pub t: i32,
    #[serde(rename = "V")]
    pub v: i32,
    pub value: String,
}

fn entries(s: &FormalSeries) -> Vec<DiffEntry> {
    s.terms()
        .map(|(m, c)| DiffEntry {
            x: m.exp(Var::X),
            q: m.exp(Var::Q),
            t: m.exp(Var::T),
            v: m.exp(Var::V),
            value: format_rational(c),
        })
        .collect()
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct WindowJson {
    max_q: u32,
    max_t: u32,
    max_abs_mu: u32,
    min_v: i32,
    max_v: i32,
}

#[derive(Serialize)]
struct ReportJson {
    window: WindowJson,
    pass: bool,
    diff: Vec<DiffEntry>,
}

#[derive(Clone, Debug)]
pub struct CorrespondenceReport {
    pub window: TruncationWindow,
    pub lhs: FormalSeries,
    pub rhs: FormalSeries,
    pub diff: FormalSeries,
    pub pass: bool,
}

impl CorrespondenceReport {
    pub fn diff_entries(&self) -> Vec<DiffEntry> {
        entries(&self.diff)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let w = &self.window;
        let report = ReportJson {
            window: WindowJson {
                max_q: w.max_q,
                max_t: w.max_t,
                max_abs_mu: w.max_abs_x,
                min_v: w.min_v,
                max_v: w.max_v,
            },
            pass: self.pass,
            diff: self.diff_entries(),
        };
        serde_json::to_value(report).expect("report is serializable")
    }
}

/// Compares both sides on `window`.
pub fn check(window: &TruncationWindow, mode: ExcMode) -> Result<CorrespondenceReport> {
    let (lhs, rhs) = rayon::join(|| disk_potential_bessel(window), || rhs_assemble(window, mode));
    let rhs = rhs?;
    let diff = lhs.sub(&rhs);
    Ok(CorrespondenceReport {
        window: *window,
        pass: diff.is_zero(),
        lhs,
        rhs,
        diff,
    })
}

/// A row of the disk-potential table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FRow {
    pub mu: i32,
    pub q_power: i32,
    pub t0_power: i32,
    pub v_power: i32,
    pub value: String,
}

/// Coefficients of `F` ordered by `(μ, Q, T, V)`.
pub fn f_rows(f: &FormalSeries) -> Vec<FRow> {
    let mut rows: Vec<FRow> = f
        .terms()
        .map(|(m, c)| FRow {
            mu: m.exp(Var::X),
            q_power: m.exp(Var::Q),
            t0_power: m.exp(Var::T),
            v_power: m.exp(Var::V),
            value: format_rational(c),
        })
        .collect();
    rows.sort_by_key(|r| (r.mu, r.q_power, r.t0_power, r.v_power));
    rows
}

/// A `F` coefficient as a `Rational`, for callers that want to do arithmetic.
pub fn f_coefficient(f: &FormalSeries, mu: i32, q: i32, t: i32, v: i32) -> Rational {
    f.coefficient(&mono(&[(Var::X, mu), (Var::Q, q), (Var::T, t), (Var::V, v)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn small() -> TruncationWindow {
        TruncationWindow::new(6, 2, 3, -6, 1)
    }

    #[test]
    fn leading_disk_coefficients() {
        let f = disk_potential_bessel(&TruncationWindow::default());
        assert_eq!(f_coefficient(&f, 1, 1, 0, 0), int(1));
        assert_eq!(f_coefficient(&f, -1, 1, 0, 0), int(-1));
        assert_eq!(f_coefficient(&f, 2, 2, 0, -1), rat(1, 2));
        assert!(f.terms().all(|(m, _)| m.exp(Var::X) != 0 && m.exp(Var::V) <= 0));
    }

    #[test]
    fn v_exponent_formula() {
        let f = disk_potential_bessel(&TruncationWindow::default());
        for (m, _) in f.terms() {
            let mu = m.exp(Var::X).abs();
            let (q, l) = (m.exp(Var::Q), m.exp(Var::T));
            let two_m = q - mu;
            assert!(two_m >= 0 && two_m % 2 == 0);
            assert_eq!(m.exp(Var::V), 1 - two_m - mu - l);
        }
    }

    #[test]
    fn winding_reversal_flips_v() {
        // X ↦ X⁻¹ together with v ↦ -v changes the sign of every term.
        let f = disk_potential_bessel(&TruncationWindow::default());
        for (m, c) in f.terms() {
            let mirror = m.with(Var::X, -m.exp(Var::X));
            let sign = if m.exp(Var::V) % 2 == 0 { int(-1) } else { int(1) };
            assert_eq!(f.coefficient(&mirror), c * sign, "{m}");
        }
    }

    #[test]
    fn localized_potential_matches_bessel() {
        let loc = disk_potential_localized(2, 1).unwrap();
        let bes = disk_potential_bessel_small(2, 1);
        assert_eq!(loc, bes);
    }

    #[test]
    fn pairing_reduces_to_division_by_v() {
        assert_eq!(pairing_factor().unwrap(), VLaurent::monomial(int(1), -1));
    }

    #[test]
    fn exact_on_a_small_window() {
        let r = check(&small(), ExcMode::Standard).unwrap();
        assert!(r.pass, "{}", r.diff);
    }

    #[test]
    fn exceptional_term_is_forced() {
        let w = small();
        let without = rhs_assemble(&w, ExcMode::Omitted).unwrap();
        let f = disk_potential_bessel(&w);
        assert_eq!(f.sub(&without), exceptional(&w, ExcMode::Standard));
    }

    #[test]
    fn corrupted_exc_fails_at_negative_v() {
        let r = check(&small(), ExcMode::Corrupted).unwrap();
        assert!(!r.pass);
        assert!(r.diff.terms().all(|(m, _)| m.exp(Var::V) == -1));
    }

    #[test]
    fn empty_window_passes() {
        let r = check(&TruncationWindow::empty(), ExcMode::Standard).unwrap();
        assert!(r.pass && r.lhs.is_zero());
    }

    #[test]
    fn rhs_vanishes_at_q_zero() {
        let rhs = rhs_assemble(&TruncationWindow::new(0, 4, 4, -8, 1), ExcMode::Standard).unwrap();
        assert!(rhs.is_zero(), "{rhs}");
    }

    #[test]
    fn report_json_shape() {
        let r = check(&small(), ExcMode::Corrupted).unwrap();
        let j = r.to_json();
        assert_eq!(j["pass"], json!(false));
        let first = &j["diff"][0];
        for key in ["X", "Q", "T", "V", "value"] {
            assert!(first.get(key).is_some());
        }
    }

    #[test]
    fn f_rows_are_sorted() {
        let rows = f_rows(&disk_potential_bessel(&small()));
        assert!(rows.windows(2).all(|w| (w[0].mu, w[0].q_power) <= (w[1].mu, w[1].q_power)));
        assert!(rows.iter().any(|r| r.mu == 1 && r.q_power == 1 && r.v_power == 0 && r.value == "1/1"));
    }
}
