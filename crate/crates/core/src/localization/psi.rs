//! Genus-zero ψ-class integrals and single-vertex localization integrands.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::rational::{factorial, int, pow_i, Rational};
use crate::series::VLaurent;

/// `∫_{M̄_{0,n}} ψ₁^{a₁}⋯ψₙ^{aₙ} = (n-3)! / Π aᵢ!` when `Σaᵢ = n-3`, else 0.
/// Unstable `n < 3` gives 0; those cases have their own conventions in
/// [`vertex_integral`].
pub fn psi_integral(exponents: &[u32]) -> Rational {
    let n = exponents.len();
    if n < 3 || exponents.iter().sum::<u32>() as usize != n - 3 {
        return Rational::zero();
    }
    let denom = exponents.iter().fold(num_bigint::BigInt::one(), |acc, &a| acc * factorial(a));
    Rational::new(factorial((n - 3) as u32), denom)
}

/// The same numbers from the string equation and `∫_{M̄_{0,3}} 1 = 1`.
pub fn psi_integral_by_string_equation(exponents: &[u32]) -> Rational {
    let n = exponents.len();
    if n < 3 || exponents.iter().sum::<u32>() as usize != n - 3 {
        return Rational::zero();
    }
    if n == 3 {
        return Rational::one();
    }
    // With Σa = n - 3 < n some exponent is zero; forget that point.
    let zero_at = exponents.iter().position(|&a| a == 0).expect("dimension forces a zero");
    let rest: Vec<u32> = exponents
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != zero_at)
        .map(|(_, &a)| a)
        .collect();
    let mut total = Rational::zero();
    for j in 0..rest.len() {
        if rest[j] > 0 {
            let mut lowered = rest.clone();
            lowered[j] -= 1;
            total += psi_integral_by_string_equation(&lowered);
        }
    }
    total
}

/// A special point on a vertex: its ψ power in the numerator and, for flags
/// and generating descendants, a weight `w` (a multiple of `v`) giving the
/// factor `1/(w - ψ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPoint {
    pub psi: u32,
    pub weight: Option<Rational>,
}

impl VertexPoint {
    pub fn flag(weight: Rational) -> Self {
        VertexPoint { psi: 0, weight: Some(weight) }
    }

    pub fn marking(psi: u32) -> Self {
        VertexPoint { psi, weight: None }
    }
}

/// `∫_{M̄_{0,k}} Π ψᵢ^{aᵢ} / Π_{weighted} (wᵢ - ψᵢ)` as a Laurent polynomial
/// in `v`. Weights are coefficients of `v`.
///
/// Unstable cases follow the localization conventions
/// `∫_{M̄_{0,1}} 1/(w-ψ) = w`, `∫_{M̄_{0,2}} ψ₂ᵃ/(w-ψ₁) = (-w)ᵃ` and
/// `∫_{M̄_{0,2}} 1/((w₁-ψ₁)(w₂-ψ₂)) = 1/(w₁+w₂)`.
pub fn vertex_integral(points: &[VertexPoint]) -> Result<VLaurent> {
    if points.iter().any(|p| p.weight.as_ref().is_some_and(Zero::is_zero)) {
        return Err(Error::ZeroWeight);
    }
    match points {
        [p] => match (&p.weight, p.psi) {
            (Some(w), 0) => Ok(VLaurent::monomial(w.clone(), 1)),
            _ => Err(Error::Degenerate("one-pointed vertex needs a single flag".into())),
        },
        [a, b] => match (&a.weight, &b.weight, a.psi, b.psi) {
            (Some(w), None, 0, k) | (None, Some(w), k, 0) => {
                Ok(VLaurent::monomial(pow_i(&-w.clone(), k as i32), k as i32))
            }
            (Some(w1), Some(w2), 0, 0) => {
                let s = w1 + w2;
                if s.is_zero() {
                    return Err(Error::Pole("opposite weights on a two-pointed vertex".into()));
                }
                Ok(VLaurent::monomial(s.recip(), -1))
            }
            _ => Err(Error::Degenerate("two-pointed vertex outside the conventions".into())),
        },
        _ => Ok(stable_vertex(points)),
    }
}

fn stable_vertex(points: &[VertexPoint]) -> VLaurent {
    let n = points.len();
    let fixed: u32 = points.iter().map(|p| p.psi).sum();
    let dim = n as i64 - 3;
    let mut out = VLaurent::zero();
    let free = dim - fixed as i64;
    if free < 0 {
        return out;
    }
    let weighted: Vec<usize> = (0..n).filter(|&i| points[i].weight.is_some()).collect();
    // Distribute `free` extra ψ powers among the weighted points.
    let mut extra = vec![0u32; weighted.len()];
    distribute(free as u32, 0, &mut extra, &mut |extra| {
        let mut exps: Vec<u32> = points.iter().map(|p| p.psi).collect();
        let mut coeff = Rational::one();
        let mut vpow = 0i32;
        for (slot, &i) in weighted.iter().enumerate() {
            exps[i] += extra[slot];
            let w = points[i].weight.as_ref().expect("weighted");
            coeff *= pow_i(w, -(extra[slot] as i32) - 1);
            vpow -= extra[slot] as i32 + 1;
        }
        let value = psi_integral(&exps);
        out.add_term(vpow, coeff * value);
    });
    out
}

fn distribute(left: u32, slot: usize, extra: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
    if slot == extra.len() {
        if left == 0 {
            f(extra);
        }
        return;
    }
    for k in 0..=left {
        extra[slot] = k;
        distribute(left - k, slot + 1, extra, f);
    }
    extra[slot] = 0;
}

/// Edge factor `h(d) = (-1)^d d^{2d} / ((d!)² v^{2d})`.
pub fn edge_factor(d: u32) -> VLaurent {
    let num = pow_i(&int(d as i64), 2 * d as i32) * pow_i(&int(-1), d as i32);
    let f = Rational::from_integer(factorial(d));
    VLaurent::monomial(num / (&f * &f), -2 * d as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::rat;

    fn all_exponents(n: usize, total: u32) -> Vec<Vec<u32>> {
        if n == 0 {
            return if total == 0 { vec![vec![]] } else { vec![] };
        }
        let mut out = Vec::new();
        for a in 0..=total {
            for mut rest in all_exponents(n - 1, total - a) {
                rest.insert(0, a);
                out.push(rest);
            }
        }
        out
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(psi_integral(&[0, 0, 0]), int(1));
        assert_eq!(psi_integral(&[1, 0, 0, 0]), int(1));
        assert_eq!(psi_integral(&[1, 1, 0, 0, 0]), int(2));
        assert_eq!(psi_integral(&[2, 0, 0, 0]), int(0));
    }

    #[test]
    fn closed_form_equals_string_equation() {
        for n in 3..=8 {
            for e in all_exponents(n, (n - 3) as u32) {
                assert_eq!(psi_integral(&e), psi_integral_by_string_equation(&e), "{e:?}");
            }
        }
    }

    #[test]
    fn unstable_conventions() {
        let one = vertex_integral(&[VertexPoint::flag(rat(1, 3))]).unwrap();
        assert_eq!(one, VLaurent::monomial(rat(1, 3), 1));
        let two = vertex_integral(&[VertexPoint::flag(int(1)), VertexPoint::flag(rat(1, 2))]).unwrap();
        assert_eq!(two, VLaurent::monomial(rat(2, 3), -1));
        let mixed = vertex_integral(&[VertexPoint::flag(int(2)), VertexPoint::marking(3)]).unwrap();
        assert_eq!(mixed, VLaurent::monomial(int(-8), 3));
    }

    #[test]
    fn three_flags() {
        let f = VertexPoint::flag(int(1));
        let got = vertex_integral(&[f.clone(), f.clone(), f]).unwrap();
        assert_eq!(got, VLaurent::monomial(int(1), -3));
    }

    #[test]
    fn four_flags_expand_to_one_psi() {
        // Σ_j 1/w_j · Π_i 1/w_i with ∫ψ_j = 1.
        let ws = [int(1), int(2), int(-1), rat(1, 2)];
        let pts: Vec<VertexPoint> = ws.iter().cloned().map(VertexPoint::flag).collect();
        let prod: Rational = ws.iter().fold(int(1), |a, w| a * w.recip());
        let sum: Rational = ws.iter().fold(int(0), |a, w| a + w.recip());
        assert_eq!(vertex_integral(&pts).unwrap(), VLaurent::monomial(prod * sum, -5));
    }

    #[test]
    fn zero_weight_is_rejected() {
        assert_eq!(vertex_integral(&[VertexPoint::flag(int(0))]), Err(Error::ZeroWeight));
    }

    #[test]
    fn edge_factor_degree_one() {
        assert_eq!(edge_factor(1), VLaurent::monomial(int(-1), -2));
        assert_eq!(edge_factor(2), VLaurent::monomial(rat(16, 4), -4));
    }
}
