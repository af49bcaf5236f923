//! The equivariant I-function of the surface, restricted to a fixed point.
//!
//! For a degree `(d1, d2)` the divisor exponents are
//! `a = (d2 - d1, d1 - d2, d1, d2)` and each ratio of infinite products
//! collapses by index alignment:
//!
//! * `a ≥ 0`: `1 / Π_{j=1}^{a} (A + j z)`
//! * `a < 0`: `Π_{j=0}^{|a|-1} (A - j z)`
//!
//! with `A = Dᵢᵀ` restricted to the point. At `p_{σ0}` after `u2 = -u1 = v`
//! the surviving factors reduce to a single `(-1)^μ v/(v ± μz)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{FixedPoint, ToricSurfaceData, UPoly};
use crate::series::rational::{int, inv_factorial, pow_i, sign, Rational};
use crate::series::{Expansion, FormalSeries, LinearFactorTerm, Monomial, TruncationWindow, Var};

/// `u1·a + u2·b + z·c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    pub u1: Rational,
    pub u2: Rational,
    pub z: Rational,
}

impl LinearForm {
    fn from_restriction(a: &UPoly, z: i64) -> Self {
        let (u1, u2) = a.linear_coeffs().expect("divisor restrictions are linear");
        LinearForm { u1, u2, z: int(z) }
    }

    pub fn is_zero(&self) -> bool {
        self.u1.is_zero() && self.u2.is_zero() && self.z.is_zero()
    }

    /// `(coefficient of v, coefficient of z)` after `u2 = -u1 = v`.
    pub fn specialize(&self) -> (Rational, Rational) {
        (&self.u2 - &self.u1, self.z.clone())
    }

    pub fn eval(&self, u1: &Rational, u2: &Rational, z: &Rational) -> Rational {
        &self.u1 * u1 + &self.u2 * u2 + &self.z * z
    }
}

/// One degree of the restricted I-function, `q1^{d1} q2^{d2}` times a ratio
/// of linear forms (the `e^{…/z}` prefactor is kept separately).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IFunctionTerm {
    pub degree: (u32, u32),
    pub point: FixedPoint,
    /// False when some numerator factor vanishes identically.
    pub nonzero: bool,
    pub numerator: Vec<LinearForm>,
    pub denominator: Vec<LinearForm>,
    /// Present when built with `specialize = true`.
    pub value: Option<Vec<LinearFactorTerm>>,
}

fn divisor_exponents(d1: u32, d2: u32) -> [i64; 4] {
    let (d1, d2) = (d1 as i64, d2 as i64);
    [d2 - d1, d1 - d2, d1, d2]
}

/// Raw (uncancelled) factor lists from the closed finite products.
fn raw_factors(surface: &ToricSurfaceData, d1: u32, d2: u32, point: FixedPoint) -> (Vec<LinearForm>, Vec<LinearForm>) {
    let mut num = Vec::new();
    let mut den = Vec::new();
    for (i, &a) in divisor_exponents(d1, d2).iter().enumerate() {
        let restriction = surface.divisor_restriction(i + 1, point);
        if a >= 0 {
            den.extend((1..=a).map(|j| LinearForm::from_restriction(restriction, j)));
        } else {
            num.extend((0..-a).map(|j| LinearForm::from_restriction(restriction, -j)));
        }
    }
    (num, den)
}

/// Removes factors common to both lists (as exact linear forms).
fn cancel_common(num: Vec<LinearForm>, den: Vec<LinearForm>) -> (Vec<LinearForm>, Vec<LinearForm>) {
    let mut counts: BTreeMap<LinearForm, i64> = BTreeMap::new();
    for f in num {
        *counts.entry(f).or_default() += 1;
    }
    for f in den {
        *counts.entry(f).or_default() -= 1;
    }
    let mut n = Vec::new();
    let mut d = Vec::new();
    for (f, c) in counts {
        for _ in 0..c.max(0) {
            n.push(f.clone());
        }
        for _ in 0..(-c).max(0) {
            d.push(f.clone());
        }
    }
    (n, d)
}

/// General I-function term at any fixed point.
pub fn i_term_general(d1: u32, d2: u32, point: FixedPoint, specialize: bool) -> Result<IFunctionTerm> {
    let surface = ToricSurfaceData::new();
    let (num, den) = raw_factors(&surface, d1, d2, point);
    if den.iter().any(LinearForm::is_zero) {
        return Err(Error::Pole(format!("zero denominator at degree ({d1}, {d2})")));
    }
    let nonzero = !num.iter().any(LinearForm::is_zero);
    let (numerator, denominator) = if nonzero { cancel_common(num, den) } else { (Vec::new(), Vec::new()) };
    let mut term = IFunctionTerm {
        degree: (d1, d2),
        point,
        nonzero,
        numerator,
        denominator,
        value: None,
    };
    if specialize {
        term.value = Some(term.specialized()?);
    }
    Ok(term)
}

impl IFunctionTerm {
    fn q_monomial(&self) -> Monomial {
        Monomial::from_pairs(&[(Var::Q1, self.degree.0 as i32), (Var::Q2, self.degree.1 as i32)])
    }

    /// Exact value at numeric weights (used against truncated products).
    pub fn eval(&self, u1: &Rational, u2: &Rational, z: &Rational) -> Result<Rational> {
        if !self.nonzero {
            return Ok(Rational::zero());
        }
        let mut out = Rational::one();
        for f in &self.numerator {
            out *= f.eval(u1, u2, z);
        }
        for f in &self.denominator {
            let x = f.eval(u1, u2, z);
            if x.is_zero() {
                return Err(Error::Pole("a factor vanishes at the evaluation point".into()));
            }
            out /= x;
        }
        Ok(out)
    }

    /// Specializes `u2 = -u1 = v` and reduces to at most one
    /// `LinearFactorTerm`; an empty list means the term vanishes.
    pub fn specialized(&self) -> Result<Vec<LinearFactorTerm>> {
        if !self.nonzero {
            return Ok(Vec::new());
        }
        let mut coeff = Rational::one();
        let mut mono = self.q_monomial();
        // Mixed factors v + r z keyed by r, with multiplicity num - den.
        let mut mixed: BTreeMap<Rational, i64> = BTreeMap::new();
        let factors = self
            .numerator
            .iter()
            .map(|f| (f, 1))
            .chain(self.denominator.iter().map(|f| (f, -1)));
        for (f, e) in factors {
            let (a, c) = f.specialize();
            match (a.is_zero(), c.is_zero()) {
                (true, true) if e > 0 => return Ok(Vec::new()),
                (true, true) => return Err(Error::Pole("denominator vanishes at u2 = -u1".into())),
                (true, false) => {
                    coeff *= pow_i(&c, e);
                    mono = mono.mul(&Monomial::from_pairs(&[(Var::Z, e)]));
                }
                (false, true) => {
                    coeff *= pow_i(&a, e);
                    mono = mono.mul(&Monomial::from_pairs(&[(Var::V, e)]));
                }
                (false, false) => {
                    coeff *= pow_i(&a, e);
                    *mixed.entry(c / a).or_default() += e as i64;
                }
            }
        }
        mixed.retain(|_, m| *m != 0);
        let slope = match mixed.len() {
            0 => 0,
            1 => {
                let (r, m) = mixed.into_iter().next().expect("one entry");
                if m != -1 || !r.is_integer() {
                    return Err(Error::NotSingleFactor);
                }
                // 1/(v + r z) = v⁻¹ · v/(v - s z) with s = -r.
                mono = mono.mul(&Monomial::from_pairs(&[(Var::V, -1)]));
                let s: i64 = (-r).to_integer().try_into().map_err(|_| Error::NotSingleFactor)?;
                s as i32
            }
            _ => return Err(Error::NotSingleFactor),
        };
        Ok(vec![LinearFactorTerm::new(coeff, mono, slope)])
    }
}

/// Which piece of the restriction to `p_{σ0}`: `d1 > d2`, `d2 > d1`, or
/// `d1 = d2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IComponent {
    First,
    Second,
    Third,
}

impl IComponent {
    pub const ALL: [IComponent; 3] = [IComponent::First, IComponent::Second, IComponent::Third];

    pub fn of_degree(d1: u32, d2: u32) -> Self {
        match d1.cmp(&d2) {
            std::cmp::Ordering::Greater => IComponent::First,
            std::cmp::Ordering::Less => IComponent::Second,
            std::cmp::Ordering::Equal => IComponent::Third,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            IComponent::First => "I1",
            IComponent::Second => "I2",
            IComponent::Third => "I3",
        }
    }
}

/// Closed-form term for degree `(d, μ)` of a component:
/// `q1^{d1} q2^{d2} / (d!(d+μ)! z^{2d+μ}) · (-1)^μ v/(v ∓ μz)`.
pub fn closed_form_term(component: IComponent, d: u32, mu: u32) -> LinearFactorTerm {
    let (d1, d2, slope) = match component {
        IComponent::First => (d + mu, d, -(mu as i32)),
        IComponent::Second => (d, d + mu, mu as i32),
        IComponent::Third => (d, d, 0),
    };
    let mu = if component == IComponent::Third { 0 } else { mu };
    let coeff = sign(mu as i64) * inv_factorial(d) * inv_factorial(d + mu);
    let mono = Monomial::from_pairs(&[
        (Var::Q1, d1 as i32),
        (Var::Q2, d2 as i32),
        (Var::Z, -((2 * d + mu) as i32)),
    ]);
    LinearFactorTerm::new(coeff, mono, slope)
}

/// The three components of `I_𝒮|_{p_{σ0}}` at `u2 = -u1 = v`, without the
/// common `e^{(log q0)/z}` prefactor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedI {
    pub first: Vec<LinearFactorTerm>,
    pub second: Vec<LinearFactorTerm>,
    pub third: Vec<LinearFactorTerm>,
}

impl RestrictedI {
    pub fn component(&self, c: IComponent) -> &[LinearFactorTerm] {
        match c {
            IComponent::First => &self.first,
            IComponent::Second => &self.second,
            IComponent::Third => &self.third,
        }
    }

    pub fn all(&self) -> Vec<LinearFactorTerm> {
        self.first.iter().chain(&self.second).chain(&self.third).cloned().collect()
    }
}

/// Every degree with `d1 + d2 ≤ max_q` and `|d1 - d2| ≤ max_abs_x`.
pub fn restricted_i_components(window: &TruncationWindow) -> RestrictedI {
    let mut out = RestrictedI {
        first: Vec::new(),
        second: Vec::new(),
        third: Vec::new(),
    };
    let max_q = window.max_q;
    for d in 0..=max_q / 2 {
        out.third.push(closed_form_term(IComponent::Third, d, 0));
        for mu in 1..=window.max_abs_x {
            if 2 * d + mu > max_q {
                break;
            }
            out.first.push(closed_form_term(IComponent::First, d, mu));
            out.second.push(closed_form_term(IComponent::Second, d, mu));
        }
    }
    out
}

/// The restriction of `e^{(log q0 + H1ᵀ log q1 + H2ᵀ log q2)/z}` to `p_{σ0}`
/// only keeps `log q0`, because both hyperplane classes vanish there.
pub fn prefactor_reduces_to_log_q0(surface: &ToricSurfaceData) -> bool {
    (1..=2).all(|i| surface.hyperplane_restriction(i, FixedPoint::Sigma0).is_zero())
}

/// `e^{T/z}` in the given window.
pub fn log_q0_prefactor(window: TruncationWindow) -> FormalSeries {
    FormalSeries::monomial(int(1), Monomial::from_pairs(&[(Var::T, 1), (Var::Z, -1)]), window)
        .exp()
        .expect("T-grading bounds the exponential")
}

/// Internal window wide enough that no intermediate `Z` exponent is lost
/// before the `z⁻ᵐ` coefficient is read off.
fn working_window(window: &TruncationWindow, terms: &[LinearFactorTerm], m: i32) -> TruncationWindow {
    let max_v_shift = terms.iter().map(|t| t.monomial.exp(Var::V)).max().unwrap_or(0);
    let min_term_z = terms.iter().map(|t| t.monomial.exp(Var::Z)).min().unwrap_or(0);
    let max_term_z = terms.iter().map(|t| t.monomial.exp(Var::Z)).max().unwrap_or(0);
    let spread = (max_v_shift - window.min_v).max(0);
    let lo = (min_term_z - window.max_t as i32 - 1).min(-m - 1);
    let hi = (max_term_z + spread + 1).max(-m + 1);
    window.with_z(lo, hi)
}

/// `[z⁻ᵐ]` of `e^{T/z} · Σ terms`, each factor expanded in `1/v`.
pub fn z_coeff(terms: &[LinearFactorTerm], m: i32, window: &TruncationWindow) -> Result<FormalSeries> {
    let work = working_window(window, terms, m);
    let expanded: Vec<FormalSeries> = terms
        .par_iter()
        .map(|t| t.expand(Expansion::InverseV, work))
        .collect::<Result<_>>()?;
    let sum = expanded
        .iter()
        .fold(FormalSeries::zero(work), |acc, s| acc.add(s));
    let full = log_q0_prefactor(work).mul(&sum);
    Ok(full.coeff(&[(Var::Z, -m)]).truncate(window))
}

/// The closed-form `[z⁻ᵐ]` sum over all `(l, d, μ)` obtained by reading
/// `k = l + 2d + μ - m` off the `1/v` expansion, including the indices with
/// `k < 0` that the expansion itself never produces.
pub fn closed_form_z_coeff(component: IComponent, m: i32, window: &TruncationWindow) -> FormalSeries {
    let mut out = FormalSeries::zero(*window);
    for (l, d, mu) in index_triples(component, window) {
        if let Some((mono, c)) = closed_form_monomial(component, l, d, mu, m) {
            out.add_term(mono, c);
        }
    }
    out
}

/// The part of the closed-form sum that is not produced by the expansion:
/// `z_coeff = closed_form_z_coeff + exceptional_terms`.
pub fn exceptional_terms(component: IComponent, m: i32, window: &TruncationWindow) -> FormalSeries {
    let mut out = FormalSeries::zero(*window);
    for (l, d, mu) in index_triples(component, window) {
        let k = (l + 2 * d + mu) as i32 - m;
        if component != IComponent::Third && k < 0 {
            if let Some((mono, c)) = closed_form_monomial(component, l, d, mu, m) {
                out.add_term(mono, -c);
            }
        }
    }
    out
}

fn index_triples(component: IComponent, window: &TruncationWindow) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for l in 0..=window.max_t {
        for d in 0..=window.max_q / 2 {
            match component {
                IComponent::Third => out.push((l, d, 0)),
                _ => {
                    for mu in 1..=window.max_abs_x {
                        if 2 * d + mu <= window.max_q {
                            out.push((l, d, mu));
                        }
                    }
                }
            }
        }
    }
    out
}

fn closed_form_monomial(component: IComponent, l: u32, d: u32, mu: u32, m: i32) -> Option<(Monomial, Rational)> {
    let k = (l + 2 * d + mu) as i32 - m;
    let base = inv_factorial(l) * inv_factorial(d) * inv_factorial(d + mu);
    let (d1, d2, c) = match component {
        IComponent::First => (d + mu, d, sign(mu as i64) * pow_i(&-int(mu as i64), k)),
        IComponent::Second => (d, d + mu, sign(mu as i64) * pow_i(&int(mu as i64), k)),
        IComponent::Third => {
            if k != 0 {
                return None;
            }
            (d, d, int(1))
        }
    };
    let mono = Monomial::from_pairs(&[
        (Var::T, l as i32),
        (Var::Q1, d1 as i32),
        (Var::Q2, d2 as i32),
        (Var::V, -k),
    ]);
    Some((mono, base * c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::rat;

    fn spec(d1: u32, d2: u32) -> LinearFactorTerm {
        let t = i_term_general(d1, d2, FixedPoint::Sigma0, true).unwrap();
        let v = t.value.unwrap();
        assert_eq!(v.len(), 1);
        v[0].clone()
    }

    #[test]
    fn degree_one_zero() {
        let got = spec(1, 0);
        let want = LinearFactorTerm::new(
            int(-1),
            Monomial::from_pairs(&[(Var::Q1, 1), (Var::Z, -1)]),
            -1,
        );
        assert_eq!(got, want);
    }

    #[test]
    fn degree_zero_is_one() {
        assert_eq!(spec(0, 0), LinearFactorTerm::new(int(1), Monomial::one(), 0));
    }

    #[test]
    fn degree_one_one() {
        let want = LinearFactorTerm::new(
            int(1),
            Monomial::from_pairs(&[(Var::Q1, 1), (Var::Q2, 1), (Var::Z, -2)]),
            0,
        );
        assert_eq!(spec(1, 1), want);
    }

    #[test]
    fn general_terms_match_closed_forms() {
        for d1 in 0..=6u32 {
            for d2 in 0..=(6 - d1) {
                let d = d1.min(d2);
                let mu = d1.abs_diff(d2);
                let c = IComponent::of_degree(d1, d2);
                assert_eq!(spec(d1, d2), closed_form_term(c, d, mu), "({d1}, {d2})");
            }
        }
    }

    /// Polynomial in the formal class `A`, lowest degree first.
    type Poly = Vec<Rational>;

    fn times_linear(p: &Poly, c: &Rational) -> Poly {
        // p · (A + c)
        let mut out = vec![Rational::zero(); p.len() + 1];
        for (i, x) in p.iter().enumerate() {
            out[i + 1] += x;
            out[i] += x * c;
        }
        out
    }

    fn divide_exact(num: &Poly, den: &Poly) -> Poly {
        let mut rem = num.clone();
        let dl = den.len() - 1;
        let lead = den[dl].clone();
        let mut quot = vec![Rational::zero(); num.len() - dl];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dl] / &lead;
            for (j, d) in den.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        assert!(rem.iter().all(Zero::is_zero), "inexact division");
        quot
    }

    fn eval_poly(p: &Poly, a: &Rational) -> Rational {
        p.iter().rev().fold(Rational::zero(), |acc, c| acc * a + c)
    }

    /// Truncates both infinite products at `M` with `A` kept formal,
    /// divides the polynomials literally, then substitutes `A = a0`.
    fn truncated_ratio(a_exp: i64, a0: &Rational, z: &Rational, big_m: i64) -> Rational {
        let product = |lo: i64| {
            (lo..=big_m).fold(vec![Rational::one()], |acc, m| times_linear(&acc, &(int(a_exp - m) * z)))
        };
        let (top, bottom) = (product(a_exp), product(0));
        if a_exp >= 0 {
            eval_poly(&divide_exact(&bottom, &top), a0).recip()
        } else {
            eval_poly(&divide_exact(&top, &bottom), a0)
        }
    }

    #[test]
    fn truncate_and_divide_oracle() {
        let surface = ToricSurfaceData::new();
        let (u1, u2, z) = (rat(3, 7), rat(-5, 11), rat(2, 13));
        for point in FixedPoint::ALL {
            for d1 in 0..=4u32 {
                for d2 in 0..=4u32 {
                    let term = i_term_general(d1, d2, point, false).unwrap();
                    let exps = divisor_exponents(d1, d2);
                    let floor = exps.iter().copied().max().unwrap().max(0);
                    for big_m in [floor, floor + 1, floor + 4] {
                        let mut oracle = Rational::one();
                        for (i, &a) in exps.iter().enumerate() {
                            let a0 = LinearForm::from_restriction(surface.divisor_restriction(i + 1, point), 0)
                                .eval(&u1, &u2, &z);
                            oracle *= truncated_ratio(a, &a0, &z, big_m);
                        }
                        assert_eq!(term.eval(&u1, &u2, &z).unwrap(), oracle, "({d1}, {d2}) at {point:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn other_points_may_not_reduce() {
        // At p_{σ1}, degree (0, 2): D2|σ1 = 0 and a2 = -2, so the term vanishes.
        let t = i_term_general(0, 2, FixedPoint::Sigma1, true).unwrap();
        assert_eq!(t.value, Some(vec![]));
        let t = i_term_general(2, 0, FixedPoint::Sigma1, true);
        assert!(t.is_ok() || t == Err(Error::NotSingleFactor));
    }

    #[test]
    fn prefactor_only_sees_log_q0() {
        assert!(prefactor_reduces_to_log_q0(&ToricSurfaceData::new()));
    }

    fn w() -> TruncationWindow {
        TruncationWindow::new(10, 4, 4, -8, 1)
    }

    #[test]
    fn third_component_z2() {
        let r = restricted_i_components(&TruncationWindow::new(4, 4, 4, -8, 1));
        assert_eq!(r.third.len(), 3);
        let got = z_coeff(&r.third, 2, &w()).unwrap();
        let want = FormalSeries::from_terms(
            [
                (Monomial::from_pairs(&[(Var::T, 2)]), rat(1, 2)),
                (Monomial::from_pairs(&[(Var::Q1, 1), (Var::Q2, 1)]), int(1)),
            ],
            w(),
        );
        assert_eq!(got, want);
    }

    #[test]
    fn exceptional_monomials() {
        let one = |v: Var| Monomial::from_pairs(&[(v, 1), (Var::V, 1)]);
        let e1 = exceptional_terms(IComponent::First, 2, &w());
        assert_eq!(e1, FormalSeries::monomial(int(-1), one(Var::Q1), w()));
        let e2 = exceptional_terms(IComponent::Second, 2, &w());
        assert_eq!(e2, FormalSeries::monomial(int(1), one(Var::Q2), w()));
    }

    #[test]
    fn z2_matches_closed_form_plus_exceptional() {
        let r = restricted_i_components(&w());
        for c in IComponent::ALL {
            let direct = z_coeff(r.component(c), 2, &w()).unwrap();
            let closed = closed_form_z_coeff(c, 2, &w());
            let exc = exceptional_terms(c, 2, &w());
            assert_eq!(direct, closed.add(&exc), "{}", c.name());
        }
    }

    #[test]
    fn direct_expansion_has_no_positive_v_power() {
        let r = restricted_i_components(&w());
        let s = z_coeff(&r.all(), 2, &w()).unwrap();
        assert!(s.terms().all(|(m, _)| m.exp(Var::V) <= 0));
    }

    #[test]
    fn inverse_z_reading_starts_with_one_plus_log_q0() {
        // Under the z⁻¹ expansion the restricted I-function begins 1 + T/z.
        let win = TruncationWindow::new(3, 2, 3, -4, 8).with_z(-12, 0);
        let r = restricted_i_components(&win);
        let mut sum = FormalSeries::zero(win);
        for t in r.all() {
            let s = if t.slope == 0 {
                FormalSeries::monomial(t.coefficient.clone(), t.monomial, win)
            } else {
                t.expand(Expansion::InverseZ, win).unwrap()
            };
            sum = sum.add(&s);
        }
        let full = log_q0_prefactor(win).mul(&sum);
        assert_eq!(full.coeff(&[(Var::Z, 0)]), FormalSeries::one(win));
        let z1 = full.coeff(&[(Var::Z, -1)]);
        assert_eq!(z1, FormalSeries::monomial(int(1), Monomial::var(Var::T), win));
    }
}
