//! The equivariant J-function of the projective line, component by
//! component in the idempotent basis, at `t¹ = 0` with `q = Q²` formal.
//!
//! `J^α = e^{t⁰/z} Σ_d q^d / (d! z^d Π_{m=1}^d (Δ^α + m z))`, each factor
//! expanded at `z = ∞`. At `z = Δ^α/μ` the same series has three exact
//! readings (product, factorial ratio, Bessel), all including the
//! `q^{Δ^α/(2z)} = Q^μ` that comes from `e^{t¹Δ^α/(2z)}`.

use num_traits::{One, Zero};

use super::bessel::bessel_i;
use crate::error::{Error, Result};
use crate::geometry::P1Point;
use crate::series::rational::{factorial, int, inv_factorial, pow_i, Rational};
use crate::series::{Expansion, FormalSeries, LinearFactorTerm, Monomial, TruncationWindow, Var};

fn delta_sign(alpha: P1Point) -> i64 {
    if alpha.tangent_weight() > Rational::zero() {
        1
    } else {
        -1
    }
}

/// `1/(Δ^α + m z)` as `±v⁻¹ · v/(v - s z)`.
fn inverse_factor(alpha: P1Point, m: i32) -> LinearFactorTerm {
    let s = delta_sign(alpha);
    LinearFactorTerm::new(int(s), Monomial::from_pairs(&[(Var::V, -1)]), -(s as i32) * m)
}

/// `e^{c · T · m}` for a monomial `m` that carries `T`.
fn exp_t(c: Rational, m: Monomial, window: TruncationWindow) -> FormalSeries {
    FormalSeries::monomial(c, m, window)
        .exp()
        .expect("T-grading bounds the exponential")
}

/// `J^α` as a series in `T, Q, Z, V` expanded in `z⁻¹`.
pub fn j_component(alpha: P1Point, window: TruncationWindow) -> Result<FormalSeries> {
    let mut sum = FormalSeries::zero(window);
    let mut product = FormalSeries::one(window);
    let mut d = 0u32;
    while 2 * d <= window.max_q {
        if d > 0 {
            let f = inverse_factor(alpha, d as i32).expand(Expansion::InverseZ, window)?;
            product = product.mul(&f);
        }
        let lead = Monomial::from_pairs(&[(Var::Q, 2 * d as i32), (Var::Z, -(d as i32))]);
        sum = sum.add(&product.mul_monomial(&inv_factorial(d), &lead));
        d += 1;
    }
    let prefactor = exp_t(int(1), Monomial::from_pairs(&[(Var::T, 1), (Var::Z, -1)]), window);
    Ok(prefactor.mul(&sum))
}

/// Product form at `z = c·v`, without the `t¹` prefactor: a series in
/// `T, Q, V`. Fails when some `Δ^α + m z` with `q^m` inside the window
/// vanishes.
pub fn j_evaluated(alpha: P1Point, c: &Rational, window: TruncationWindow) -> Result<FormalSeries> {
    if c.is_zero() {
        return Err(Error::InvalidParameter("z must be nonzero".into()));
    }
    let s = int(delta_sign(alpha));
    let mut sum = FormalSeries::zero(window);
    let mut denom = Rational::one();
    let mut d = 0u32;
    while 2 * d <= window.max_q && -2 * (d as i32) >= window.min_v {
        if d > 0 {
            let factor = &s + int(d as i64) * c;
            if factor.is_zero() {
                return Err(Error::Pole(format!("Δ + {d}z vanishes")));
            }
            denom *= factor * int(d as i64) * c;
        }
        let mono = Monomial::from_pairs(&[(Var::Q, 2 * d as i32), (Var::V, -2 * d as i32)]);
        sum.add_term(mono, denom.recip());
        d += 1;
    }
    let prefactor = exp_t(c.recip(), Monomial::from_pairs(&[(Var::T, 1), (Var::V, -1)]), window);
    Ok(prefactor.mul(&sum))
}

fn check_mu(mu: i32) -> Result<()> {
    if mu < 1 {
        return Err(Error::InvalidParameter(format!("winding {mu} must be positive")));
    }
    Ok(())
}

/// `J^α(Δ^α/μ)` in product form.
pub fn j_specialized_product(alpha: P1Point, mu: i32, window: TruncationWindow) -> Result<FormalSeries> {
    check_mu(mu)?;
    let c = int(delta_sign(alpha)) / int(mu as i64);
    let base = j_evaluated(alpha, &c, window.with_v(window.min_v, window.max_v.max(0)))?;
    Ok(base
        .mul_monomial(&int(1), &Monomial::from_pairs(&[(Var::Q, mu)]))
        .truncate(&window))
}

fn t_prefactor(alpha: P1Point, mu: i32, window: TruncationWindow) -> FormalSeries {
    let c = int(mu as i64 * delta_sign(alpha));
    exp_t(c, Monomial::from_pairs(&[(Var::T, 1), (Var::V, -1)]), window)
}

/// `J^α(Δ^α/μ)` through `Γ(μ+1)/(m! Γ(μ+m+1))` with integer arguments.
pub fn j_specialized_gamma(alpha: P1Point, mu: i32, window: TruncationWindow) -> Result<FormalSeries> {
    check_mu(mu)?;
    let mu_u = mu as u32;
    let mut sum = FormalSeries::zero(window);
    let mut m = 0u32;
    while mu_u + 2 * m <= window.max_q && -2 * (m as i32) >= window.min_v {
        let gamma_ratio = Rational::new(factorial(mu_u), factorial(m) * factorial(mu_u + m));
        let coeff = gamma_ratio * pow_i(&int(mu as i64), 2 * m as i32);
        let mono = Monomial::from_pairs(&[(Var::Q, (mu_u + 2 * m) as i32), (Var::V, -2 * m as i32)]);
        sum.add_term(mono, coeff);
        m += 1;
    }
    Ok(t_prefactor(alpha, mu, window).mul(&sum))
}

/// `J^α(Δ^α/μ) = e^{μt⁰/Δ} (Δ/μ)^μ μ! I_μ(2√q μ/Δ)`.
pub fn j_specialized_bessel(alpha: P1Point, mu: i32, window: TruncationWindow) -> Result<FormalSeries> {
    check_mu(mu)?;
    let s = delta_sign(alpha);
    let wide = window.with_v(window.min_v - mu, window.max_v.max(0));
    let arg = Monomial::from_pairs(&[(Var::Q, 1), (Var::V, -1)]);
    let bessel = bessel_i(mu, &int(2 * mu as i64 * s), arg, wide);
    let scale = pow_i(&Rational::new(s.into(), mu.into()), mu) * Rational::from_integer(factorial(mu as u32));
    let shifted = bessel
        .mul_monomial(&scale, &Monomial::from_pairs(&[(Var::V, mu)]))
        .truncate(&window);
    Ok(t_prefactor(alpha, mu, window).mul(&shifted))
}
