use num_bigint::BigInt;

use crate::series::rational::{factorial, int, pow_i, Rational};
use crate::series::{FormalSeries, Monomial, TruncationWindow};

/// Modified Bessel function of the first kind at a monomial argument
/// `x = coeff · monomial`:
///
/// `I_μ(x) = Σ_{m≥0} (x/2)^{2m+|μ|} / (m! (m+|μ|)!)`.
///
/// Negative orders use `I_{-n} = I_n`. The sum stops once a power of the
/// monomial leaves the window along a grading it moves monotonically; a
/// monomial that moves no grading is only accepted as the constant zero.
pub fn bessel_i(order: i32, coeff: &Rational, monomial: Monomial, window: TruncationWindow) -> FormalSeries {
    let n = order.unsigned_abs();
    let half = coeff / int(2);
    let mut out = FormalSeries::zero(window);
    if !moves_some_grading(&monomial) {
        // Evaluation at a number; only the exact value at zero is supported.
        if coeff == &int(0) && n == 0 {
            out.add_term(Monomial::one(), int(1));
        }
        return out;
    }
    let mut m = 0u32;
    loop {
        let power = 2 * m + n;
        let mono = monomial.pow(power as i32);
        if !window.contains(&mono) && leaves_for_good(&monomial, power, &window) {
            break;
        }
        let denom = Rational::from_integer(factorial(m) * factorial(m + n));
        out.add_term(mono, pow_i(&half, power as i32) / denom);
        m += 1;
    }
    out
}

fn moves_some_grading(m: &Monomial) -> bool {
    use crate::series::Var;
    m.q_grade() != 0
        || m.x_grade() != 0
        || [Var::T, Var::V, Var::Z].iter().any(|&v| m.exp(v) != 0)
}

/// Whether every further power of `monomial` past `power` is outside the
/// window (some monotone grading is already out of range).
fn leaves_for_good(monomial: &Monomial, power: u32, window: &TruncationWindow) -> bool {
    use crate::series::Var;
    let p = power as i64;
    let q = monomial.q_grade() as i64;
    let t = monomial.exp(Var::T) as i64;
    let x = monomial.x_grade() as i64;
    let v = monomial.exp(Var::V) as i64;
    let z = monomial.exp(Var::Z) as i64;
    (q > 0 && q * p > window.max_q as i64)
        || (t > 0 && t * p > window.max_t as i64)
        || (x != 0 && x.abs() * p > window.max_abs_x as i64)
        || (v < 0 && v * p < window.min_v as i64)
        || (v > 0 && v * p > window.max_v as i64)
        || (z < 0 && z * p < window.min_z as i64)
        || (z > 0 && z * p > window.max_z as i64)
        || (q < 0 || t < 0)
}

/// Coefficient `2^{-2m-n} / (m!(m+n)!)` of `x^{2m+n}` in `I_n(x)`.
pub fn bessel_coefficient(order: i32, m: u32) -> Rational {
    let n = order.unsigned_abs();
    Rational::new(
        BigInt::from(1),
        BigInt::from(2).pow(2 * m + n) * factorial(m) * factorial(m + n),
    )
}
