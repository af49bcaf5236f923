use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::monomial::{Monomial, Var};
use super::rational::{inv_factorial, pow_i, Rational};
use super::window::TruncationWindow;
use crate::error::{Error, Result};

/// Sparse truncated Laurent series with exact rational coefficients.
///
/// Terms are kept in a `BTreeMap`, so iteration order is the lexicographic
/// order of exponent vectors and printed output is stable. No stored
/// coefficient is zero and every stored monomial lies inside `window`.
/// Equality compares the stored terms only.
#[derive(Clone, Debug)]
pub struct FormalSeries {
    terms: BTreeMap<Monomial, Rational>,
    window: TruncationWindow,
}

impl PartialEq for FormalSeries {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for FormalSeries {}

impl FormalSeries {
    pub fn zero(window: TruncationWindow) -> Self {
        FormalSeries {
            terms: BTreeMap::new(),
            window,
        }
    }

    pub fn one(window: TruncationWindow) -> Self {
        Self::monomial(Rational::one(), Monomial::one(), window)
    }

    pub fn monomial(coeff: Rational, m: Monomial, window: TruncationWindow) -> Self {
        let mut s = Self::zero(window);
        s.add_term(m, coeff);
        s
    }

    pub fn from_terms<I>(terms: I, window: TruncationWindow) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut s = Self::zero(window);
        for (m, c) in terms {
            s.add_term(m, c);
        }
        s
    }

    pub fn window(&self) -> &TruncationWindow {
        &self.window
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Coefficient of a single monomial (zero when absent).
    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Accumulates `coeff · m`, dropping it when `m` is outside the window.
    pub fn add_term(&mut self, m: Monomial, coeff: Rational) {
        if coeff.is_zero() || !self.window.contains(&m) {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Re-truncates to the intersection with `window`.
    pub fn truncate(&self, window: &TruncationWindow) -> FormalSeries {
        let window = self.window.intersect(window);
        FormalSeries {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| window.contains(m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
            window,
        }
    }

    /// Replaces the window without dropping terms; `window` must admit every
    /// stored monomial.
    pub fn rewindow(&self, window: TruncationWindow) -> FormalSeries {
        debug_assert!(self.terms.keys().all(|m| window.contains(m)));
        FormalSeries::from_terms(self.terms.iter().map(|(m, c)| (*m, c.clone())), window)
    }

    pub fn scale(&self, c: &Rational) -> FormalSeries {
        if c.is_zero() {
            return Self::zero(self.window);
        }
        FormalSeries {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
            window: self.window,
        }
    }

    /// Multiplies by `c · m` and re-truncates to this series' window.
    pub fn mul_monomial(&self, c: &Rational, m: &Monomial) -> FormalSeries {
        let mut out = Self::zero(self.window);
        for (k, x) in &self.terms {
            out.add_term(k.mul(m), x * c);
        }
        out
    }

    pub fn add(&self, other: &FormalSeries) -> FormalSeries {
        let mut out = Self::zero(self.window.intersect(&other.window));
        for (m, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> FormalSeries {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &FormalSeries) -> FormalSeries {
        self.add(&other.neg())
    }

    /// Convolution product truncated to the intersected window.
    pub fn mul(&self, other: &FormalSeries) -> FormalSeries {
        let mut out = Self::zero(self.window.intersect(&other.window));
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> FormalSeries {
        (0..k).fold(Self::one(self.window), |acc, _| acc.mul(self))
    }

    /// `Σ aᵏ/k!`, truncated. Every monomial of `self` must move some window
    /// grading away from zero so that powers eventually leave the window.
    pub fn exp(&self) -> Result<FormalSeries> {
        if !self.coefficient(&Monomial::one()).is_zero() {
            return Err(Error::ConstantTerm);
        }
        let w = &self.window;
        let cap = w.max_q as i64
            + w.max_t as i64
            + 2 * w.max_abs_x as i64
            + (w.max_v as i64 - w.min_v as i64).max(0)
            + (w.max_z as i64 - w.min_z as i64).max(0)
            + 2;
        let mut out = Self::one(self.window);
        let mut power = Self::one(self.window);
        let mut k = 0u32;
        loop {
            k += 1;
            power = power.mul(self);
            if power.is_zero() {
                return Ok(out);
            }
            if k as i64 > cap {
                return Err(Error::NonTerminating);
            }
            out = out.add(&power.scale(&inv_factorial(k)));
        }
    }

    /// Applies `subst` multiplicatively to every monomial and re-truncates.
    pub fn substitute(&self, subst: &Substitution) -> FormalSeries {
        let mut out = Self::zero(self.window);
        for (m, c) in &self.terms {
            let (k, image) = subst.apply(m);
            out.add_term(image, c * k);
        }
        out
    }

    /// Terms matching `pattern`, with the fixed variables deleted.
    ///
    /// An empty pattern returns the series unchanged. Use
    /// [`FormalSeries::coefficient`] when every variable is fixed.
    pub fn coeff(&self, pattern: &[(Var, i32)]) -> FormalSeries {
        let window = pattern
            .iter()
            .fold(self.window, |w, &(v, e)| w.admit(v, -e));
        let mut out = Self::zero(window);
        for (m, c) in &self.terms {
            if pattern.iter().all(|&(v, e)| m.exp(v) == e) {
                let stripped = pattern.iter().fold(*m, |acc, &(v, _)| acc.with(v, 0));
                out.add_term(stripped, c.clone());
            }
        }
        out
    }
}

impl fmt::Display for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})*{}", c, m)?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a FormalSeries> for &'a FormalSeries {
    type Output = FormalSeries;
    fn add(self, rhs: &'a FormalSeries) -> FormalSeries {
        FormalSeries::add(self, rhs)
    }
}

impl<'a> Sub<&'a FormalSeries> for &'a FormalSeries {
    type Output = FormalSeries;
    fn sub(self, rhs: &'a FormalSeries) -> FormalSeries {
        FormalSeries::sub(self, rhs)
    }
}

impl<'a> Mul<&'a FormalSeries> for &'a FormalSeries {
    type Output = FormalSeries;
    fn mul(self, rhs: &'a FormalSeries) -> FormalSeries {
        FormalSeries::mul(self, rhs)
    }
}

impl Neg for &FormalSeries {
    type Output = FormalSeries;
    fn neg(self) -> FormalSeries {
        FormalSeries::neg(self)
    }
}

/// Variable → signed monomial rewriting rule.
#[derive(Clone, Debug, Default)]
pub struct Substitution {
    images: BTreeMap<Var, (Rational, Monomial)>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sends `var` to `coeff · image`. `coeff` must be nonzero.
    pub fn map(mut self, var: Var, coeff: Rational, image: Monomial) -> Self {
        assert!(!coeff.is_zero(), "substitution image must be invertible");
        self.images.insert(var, (coeff, image));
        self
    }

    /// The change of variables `log q₀ = t⁰`, `q₁ = -√q X⁻¹`, `q₂ = -√q X`.
    /// `log q₀` and `t⁰` share the variable `T`, so only `q1`, `q2` move.
    pub fn open_closed() -> Self {
        let minus = -Rational::one();
        Self::new()
            .map(Var::Q1, minus.clone(), Monomial::from_pairs(&[(Var::Q, 1), (Var::X, -1)]))
            .map(Var::Q2, minus, Monomial::from_pairs(&[(Var::Q, 1), (Var::X, 1)]))
    }

    fn apply(&self, m: &Monomial) -> (Rational, Monomial) {
        let mut coeff = Rational::one();
        let mut out = *m;
        for (var, (c, image)) in &self.images {
            let e = m.exp(*var);
            if e == 0 {
                continue;
            }
            out = out.with(*var, 0).mul(&image.pow(e));
            coeff *= pow_i(c, e);
        }
        (coeff, out)
    }
}
