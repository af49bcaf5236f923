//! Structured terms `c · m · v/(v - s·z)` and their two formal expansions.
//!
//! Such terms stay unexpanded until a direction is chosen:
//!
//! * [`Expansion::InverseV`] expands in powers of `1/v`:
//!   `v/(v - s z) = Σ_{k≥0} (s z / v)^k`. This is the reading under which the
//!   `z⁻²` coefficient of the surface I-function matches the disk potential.
//! * [`Expansion::InverseZ`] is the Laurent expansion at `z = ∞`:
//!   `v/(v - s z) = -Σ_{j≥1} (v / (s z))^j`. The sign is fixed by requiring
//!   that the result times `1 - s z / v` is exactly one; with it the
//!   restricted I-function reads `1 + z⁻¹ log q₀ + O(z⁻²)`, matching the
//!   closed-string mirror statement.

use num_traits::{One, Zero};

use super::formal::FormalSeries;
use super::monomial::{Monomial, Var};
use super::rational::{int, pow_i, Rational};
use super::window::TruncationWindow;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Expansion {
    InverseV,
    InverseZ,
}

/// `coefficient · monomial · v/(v - slope·z)`; slope zero means no factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearFactorTerm {
    pub coefficient: Rational,
    pub monomial: Monomial,
    pub slope: i32,
}

impl LinearFactorTerm {
    pub fn new(coefficient: Rational, monomial: Monomial, slope: i32) -> Self {
        LinearFactorTerm {
            coefficient,
            monomial,
            slope,
        }
    }

    pub fn expand(&self, mode: Expansion, window: TruncationWindow) -> Result<FormalSeries> {
        expand_factor(self, mode, window)
    }
}

/// Expands a structured term into a truncated series.
pub fn expand_factor(
    t: &LinearFactorTerm,
    mode: Expansion,
    window: TruncationWindow,
) -> Result<FormalSeries> {
    let mut out = FormalSeries::zero(window);
    if t.coefficient.is_zero() {
        return Ok(out);
    }
    let slope = int(t.slope as i64);
    match mode {
        Expansion::InverseV => {
            if t.slope == 0 {
                out.add_term(t.monomial, t.coefficient.clone());
                return Ok(out);
            }
            // V decreases by one per order, so stop once below the window.
            let mut k = 0i32;
            while t.monomial.exp(Var::V) - k >= window.min_v {
                let m = t
                    .monomial
                    .mul(&Monomial::from_pairs(&[(Var::Z, k), (Var::V, -k)]));
                out.add_term(m, &t.coefficient * pow_i(&slope, k));
                k += 1;
            }
            Ok(out)
        }
        Expansion::InverseZ => {
            if t.slope == 0 {
                return Err(Error::ZeroSlope);
            }
            let inv = slope.recip();
            let mut j = 1i32;
            while t.monomial.exp(Var::V) + j <= window.max_v
                && t.monomial.exp(Var::Z) - j >= window.min_z
            {
                let m = t
                    .monomial
                    .mul(&Monomial::from_pairs(&[(Var::Z, -j), (Var::V, j)]));
                out.add_term(m, -(&t.coefficient * pow_i(&inv, j)));
                j += 1;
            }
            Ok(out)
        }
    }
}

/// `1 - s·z/v`, the reciprocal of the factor, as a two-term series.
pub fn factor_reciprocal(slope: i32, window: TruncationWindow) -> FormalSeries {
    FormalSeries::from_terms(
        [
            (Monomial::one(), Rational::one()),
            (
                Monomial::from_pairs(&[(Var::Z, 1), (Var::V, -1)]),
                -int(slope as i64),
            ),
        ],
        window,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn win() -> TruncationWindow {
        TruncationWindow::default().with_v(-6, 6).with_z(-6, 6)
    }

    #[test]
    fn inverse_v_expansion_of_unit_slope() {
        let t = LinearFactorTerm::new(int(1), Monomial::one(), 1);
        let s = t.expand(Expansion::InverseV, win()).unwrap();
        for k in 0..=6 {
            let m = Monomial::from_pairs(&[(Var::Z, k), (Var::V, -k)]);
            assert_eq!(s.coefficient(&m), int(1));
        }
        assert_eq!(s.len(), 7);
    }

    #[test]
    fn zero_slope_is_the_bare_monomial() {
        let m = Monomial::from_pairs(&[(Var::Q1, 1), (Var::Z, -1)]);
        let t = LinearFactorTerm::new(int(5), m, 0);
        let s = t.expand(Expansion::InverseV, win()).unwrap();
        assert_eq!(s, FormalSeries::monomial(int(5), m, win()));
        assert_eq!(t.expand(Expansion::InverseZ, win()), Err(Error::ZeroSlope));
    }

    #[test]
    fn inverse_z_matches_laurent_expansion_at_infinity() {
        // v/(v+z): slope -1 gives (v/z) - (v/z)^2 + ...
        let t = LinearFactorTerm::new(int(1), Monomial::one(), -1);
        let s = t.expand(Expansion::InverseZ, win()).unwrap();
        let m1 = Monomial::from_pairs(&[(Var::Z, -1), (Var::V, 1)]);
        let m2 = Monomial::from_pairs(&[(Var::Z, -2), (Var::V, 2)]);
        assert_eq!(s.coefficient(&m1), int(1));
        assert_eq!(s.coefficient(&m2), int(-1));
    }

    #[test]
    fn both_expansions_invert_the_reciprocal() {
        for slope in [-3, -1, 1, 2, 5] {
            let t = LinearFactorTerm::new(int(1), Monomial::one(), slope);
            let recip = factor_reciprocal(slope, win());

            // The telescoped remainder s^7 (z/v)^7 lies outside the window.
            let v = t.expand(Expansion::InverseV, win()).unwrap().mul(&recip);
            assert_eq!(v, FormalSeries::one(win()));

            // Here the remainder -(v/(s z))^6 still sits on the window edge.
            let z = t.expand(Expansion::InverseZ, win()).unwrap().mul(&recip);
            let edge = Monomial::from_pairs(&[(Var::Z, -6), (Var::V, 6)]);
            assert_eq!(z.coefficient(&Monomial::one()), int(1));
            assert_eq!(z.coefficient(&edge), -pow_i(&int(slope as i64).recip(), 6));
            assert_eq!(z.len(), 2);
        }
    }
}
