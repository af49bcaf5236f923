//! Floating-point evaluation of the second restricted I-component as an
//! honest function of `v`, its `1/v` asymptotic coefficients `φ_k`, and the
//! ratio test showing that the `φ_k v⁻ᵏ` form an asymptotic series along
//! `v_l = (l + 1/2) z`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::rational::to_f64;
use crate::series::{FormalSeries, LinearFactorTerm, Monomial, Var};

/// Which component is evaluated. The first component is the second one with
/// `q1 ↔ q2` and `v ↦ -v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Branch {
    Second,
    First,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NumericParams {
    pub q0: f64,
    pub q1: f64,
    pub q2: f64,
    pub z: f64,
    pub tail_tolerance: f64,
    pub max_terms: u32,
    pub branch: Branch,
}

impl Default for NumericParams {
    fn default() -> Self {
        NumericParams {
            q0: 1.0,
            q1: 0.25,
            q2: 0.25,
            z: 1.0,
            tail_tolerance: 1e-17,
            max_terms: 400,
            branch: Branch::Second,
        }
    }
}

impl NumericParams {
    fn validate(&self) -> Result<()> {
        let finite = [self.q0, self.q1, self.q2, self.z].iter().all(|x| x.is_finite());
        if !finite || self.q0 <= 0.0 || self.q1 < 0.0 || self.q2 < 0.0 || self.z <= 0.0 {
            return Err(Error::InvalidParameter(
                "need q0 > 0, q1, q2 ≥ 0 and z > 0".into(),
            ));
        }
        Ok(())
    }

    /// Parameters of the equivalent second-component evaluation, and the
    /// sign applied to `v`.
    fn as_second(&self) -> (NumericParams, f64) {
        match self.branch {
            Branch::Second => (*self, 1.0),
            Branch::First => (
                NumericParams { q1: self.q2, q2: self.q1, branch: Branch::Second, ..*self },
                -1.0,
            ),
        }
    }
}

const POLE_GUARD: f64 = 1e-9;

/// `Σ_{d ≥ 0, μ ≥ 1} c(d, μ) · weight(μ)` with
/// `c(d, μ) = q1^d q2^{d+μ} (-1)^μ / (d!(d+μ)! z^{2d+μ})`, times
/// `e^{log q0 / z}`. `bound(μ) ≥ |weight(μ')|` for all `μ' ≥ μ` drives the
/// stopping rule.
fn double_sum(p: &NumericParams, weight: &dyn Fn(u32) -> f64, bound: &dyn Fn(u32) -> f64) -> f64 {
    let a = p.q2 / p.z;
    let b = p.q1 * p.q2 / (p.z * p.z);
    let mut total = 0.0;
    // outer = b^d / d!
    let mut outer = 1.0;
    for d in 0..p.max_terms {
        if d > 0 {
            outer *= b / d as f64;
        }
        // inner = a^μ / (d+μ)!, starting at μ = 1 with 1/(d+1)! folded in.
        let mut inner = outer * a / (1..=d + 1).fold(1.0, |acc, k| acc * k as f64);
        let mut row = 0.0;
        let mut row_bound = 0.0;
        for mu in 1..=p.max_terms {
            if mu > 1 {
                inner *= a / (d + mu) as f64;
            }
            let sign = if mu % 2 == 0 { 1.0 } else { -1.0 };
            row += sign * inner * weight(mu);
            let g = inner * bound(mu);
            row_bound += g;
            // Successive ratios are at most a/(d+μ+1) times the growth of
            // the bound, so the remaining tail is below the current term
            // once that ratio is under one half.
            if a / (d + mu + 1) as f64 * bound(mu + 1) / bound(mu).max(f64::MIN_POSITIVE) < 0.5
                && g < p.tail_tolerance * row_bound.max(1.0)
            {
                break;
            }
        }
        total += row;
        if row_bound < p.tail_tolerance * total.abs().max(1.0) && b / ((d + 1) as f64) < 0.5 {
            break;
        }
    }
    (p.q0.ln() / p.z).exp() * total
}

fn check_pole(v: f64, z: f64) -> Result<()> {
    let mu = (v / z).round();
    if mu >= 1.0 && (v - mu * z).abs() < POLE_GUARD * v.abs().max(1.0) {
        return Err(Error::Pole(format!("v = {mu}z is excluded")));
    }
    Ok(())
}

/// `I(q; v, z)` for the chosen branch.
pub fn eval_i2(params: &NumericParams, v: f64) -> Result<f64> {
    params.validate()?;
    let (p, s) = params.as_second();
    let v = s * v;
    check_pole(v, p.z)?;
    let z = p.z;
    let weight = move |mu: u32| v / (v - mu as f64 * z);
    // For μ past 2v/z the factor is below one in size.
    let bound = move |mu: u32| (2.0 * mu as f64 + 1.0).max(weight(mu).abs());
    Ok(double_sum(&p, &weight, &bound))
}

/// `φ_k(q, z)`. For the first branch this is the coefficient of `(-v)⁻ᵏ`.
pub fn eval_phi_k(params: &NumericParams, k: u32) -> Result<f64> {
    params.validate()?;
    let (p, _) = params.as_second();
    let z = p.z;
    let weight = move |mu: u32| (mu as f64 * z).powi(k as i32);
    Ok(double_sum(&p, &weight, &weight))
}

/// `w^N (I - Σ_{k<N} φ_k w⁻ᵏ)` with `w = v` (second branch) or `w = -v`
/// (first branch), summed termwise as
/// `Σ c(d,μ) (μz)^N v/(v - μz)` so no cancellation happens.
pub fn eval_remainder(params: &NumericParams, n: u32, v: f64) -> Result<f64> {
    params.validate()?;
    let (p, s) = params.as_second();
    let v = s * v;
    check_pole(v, p.z)?;
    let z = p.z;
    let weight = move |mu: u32| (mu as f64 * z).powi(n as i32) * v / (v - mu as f64 * z);
    let bound = move |mu: u32| (mu as f64 * z).powi(n as i32) * (2.0 * mu as f64 + 1.0).max(weight(mu).abs() / (mu as f64 * z).powi(n as i32));
    Ok(double_sum(&p, &weight, &bound))
}

/// `v_l = (l + 1/2) z`.
pub fn v_l(params: &NumericParams, l: u32) -> f64 {
    (l as f64 + 0.5) * params.z
}

/// `(I(v_l) - Σ_{k<N} φ_k v_l⁻ᵏ) / (φ_N v_l⁻ᴺ)`.
pub fn asym_ratio(params: &NumericParams, n: u32, l: u32) -> Result<f64> {
    let phi = eval_phi_k(params, n)?;
    if phi.abs() < f64::MIN_POSITIVE * 1e4 {
        return Err(Error::Degenerate(format!(
            "φ_{n} vanishes at these parameters; choose nonzero q2"
        )));
    }
    let v = v_l(params, l) * if params.branch == Branch::First { -1.0 } else { 1.0 };
    Ok(eval_remainder(params, n, v)? / phi)
}

/// A row of the ratio table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioRow {
    pub l: u32,
    pub v_l: f64,
    #[serde(rename = "N")]
    pub n: u32,
    pub ratio: f64,
    pub abs_error: f64,
}

pub fn ratio_rows(params: &NumericParams, ns: &[u32], ls: &[u32]) -> Result<Vec<RatioRow>> {
    let jobs: Vec<(u32, u32)> = ns.iter().flat_map(|&n| ls.iter().map(move |&l| (n, l))).collect();
    jobs.into_par_iter()
        .map(|(n, l)| {
            let ratio = asym_ratio(params, n, l)?;
            Ok(RatioRow { l, v_l: v_l(params, l), n, ratio, abs_error: (ratio - 1.0).abs() })
        })
        .collect()
}

/// Float value of an exact series in `T = log q0`, `q1`, `q2`, `z`, `v`.
pub fn eval_series(s: &FormalSeries, params: &NumericParams, v: f64) -> f64 {
    s.terms().map(|(m, c)| to_f64(c) * eval_monomial(m, params, v)).sum()
}

fn eval_monomial(m: &Monomial, p: &NumericParams, v: f64) -> f64 {
    p.q0.ln().powi(m.exp(Var::T))
        * p.q1.powi(m.exp(Var::Q1))
        * p.q2.powi(m.exp(Var::Q2))
        * p.z.powi(m.exp(Var::Z))
        * v.powi(m.exp(Var::V))
}

/// Float value of structured terms `c·m·v/(v - s z)`, times `e^{log q0/z}`.
pub fn eval_terms(terms: &[LinearFactorTerm], params: &NumericParams, v: f64) -> f64 {
    let sum: f64 = terms
        .iter()
        .map(|t| {
            let factor = if t.slope == 0 { 1.0 } else { v / (v - t.slope as f64 * params.z) };
            to_f64(&t.coefficient) * eval_monomial(&t.monomial, params, v) * factor
        })
        .sum();
    (params.q0.ln() / params.z).exp() * sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed::{phi_k_coeff, restricted_i_components};
    use crate::series::TruncationWindow;

    fn small() -> NumericParams {
        NumericParams { q0: 1.3, q1: 0.01, q2: 0.02, z: 1.0, ..Default::default() }
    }

    #[test]
    fn vanishes_without_q() {
        let p = NumericParams { q1: 0.0, q2: 0.0, ..Default::default() };
        assert_eq!(eval_i2(&p, 3.5).unwrap(), 0.0);
        assert_eq!(eval_phi_k(&p, 0).unwrap(), 0.0);
    }

    #[test]
    fn poles_are_rejected() {
        let p = NumericParams::default();
        assert!(matches!(eval_i2(&p, 3.0), Err(Error::Pole(_))));
        assert!(eval_i2(&p, 3.5).is_ok());
        let first = NumericParams { branch: Branch::First, ..p };
        assert!(matches!(eval_i2(&first, -2.0), Err(Error::Pole(_))));
        assert!(eval_i2(&first, 2.0).is_ok());
    }

    #[test]
    fn matches_the_exact_truncated_series() {
        let w = TruncationWindow::new(10, 4, 10, -8, 1);
        let r = restricted_i_components(&w);
        let p = small();
        for v in [0.5, 2.5, 7.25, -3.5] {
            let exact = eval_terms(&r.second, &p, v);
            assert!((eval_i2(&p, v).unwrap() - exact).abs() < 1e-10);
            let first = NumericParams { branch: Branch::First, ..p };
            assert!((eval_i2(&first, v).unwrap() - eval_terms(&r.first, &p, v)).abs() < 1e-10);
        }
    }

    #[test]
    fn phi_matches_exact_coefficients() {
        let w = TruncationWindow::new(12, 12, 12, -8, 1);
        let p = small();
        for k in 0..4u32 {
            let exact: f64 = (-(k as i32)..=14)
                .map(|m| eval_series(&phi_k_coeff(k, m, &w), &p, 1.0))
                .sum();
            assert!((eval_phi_k(&p, k).unwrap() - exact).abs() < 1e-10, "k={k}");
        }
    }

    #[test]
    fn remainder_equals_the_subtraction() {
        let p = NumericParams::default();
        for n in 0..3u32 {
            for v in [5.5, 20.5] {
                let direct = eval_i2(&p, v).unwrap()
                    - (0..n).map(|k| eval_phi_k(&p, k).unwrap() * v.powi(-(k as i32))).sum::<f64>();
                let direct = direct * v.powi(n as i32);
                assert!((eval_remainder(&p, n, v).unwrap() - direct).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn asymptotic_scale() {
        let p = NumericParams::default();
        for k in 0..3u32 {
            let ratios: Vec<f64> = [10.0f64, 100.0, 1000.0]
                .iter()
                .map(|v| (eval_phi_k(&p, k + 1).unwrap() / v).abs() / eval_phi_k(&p, k).unwrap().abs())
                .collect();
            assert!(ratios[0] > ratios[1] && ratios[1] > ratios[2] && ratios[2] < 1e-2);
        }
    }

    #[test]
    fn ratio_tends_to_one() {
        let p = NumericParams::default();
        let r = asym_ratio(&p, 1, 200).unwrap();
        assert!((r - 1.0).abs() < 0.05, "{r}");
        let errs: Vec<f64> = [50, 100, 200, 400].iter().map(|&l| (asym_ratio(&p, 1, l).unwrap() - 1.0).abs()).collect();
        assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
        // |ratio - 1| ≤ C / v_l with C fitted on the first two points.
        let c = errs[..2].iter().zip([50, 100]).map(|(e, l)| e * v_l(&p, l)).fold(0.0, f64::max);
        for (e, l) in errs.iter().zip([50u32, 100, 200, 400]) {
            assert!(*e <= c / v_l(&p, l) * (1.0 + 1e-9));
        }
        let r0 = asym_ratio(&p, 0, 400).unwrap();
        assert!((r0 - 1.0).abs() < 0.05);
    }

    #[test]
    fn first_branch_ratio() {
        let p = NumericParams { branch: Branch::First, ..Default::default() };
        let r = asym_ratio(&p, 1, 200).unwrap();
        assert!((r - 1.0).abs() < 0.05, "{r}");
    }

    #[test]
    fn zero_phi_is_reported() {
        let p = NumericParams { q2: 0.0, ..Default::default() };
        assert!(matches!(asym_ratio(&p, 1, 10), Err(Error::Degenerate(_))));
    }

    #[test]
    fn rows_cover_every_job() {
        let rows = ratio_rows(&NumericParams::default(), &[0, 1], &[10, 20, 40]).unwrap();
        assert_eq!(rows.len(), 6);
        assert!(rows.iter().all(|r| (r.abs_error - (r.ratio - 1.0).abs()).abs() < 1e-15));
    }
}
