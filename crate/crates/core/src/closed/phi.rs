use crate::series::rational::{int, inv_factorial, pow_i, sign};
use crate::series::{FormalSeries, Monomial, TruncationWindow, Var};

/// `[z⁻ᵐ] φ_k`: the finite sum over `l + 2d + μ = k + m` (`μ ≥ 1`) of
/// `T^l/l! · q1^d q2^{d+μ} (-1)^μ / (d!(d+μ)!) · μ^k`.
pub fn phi_k_coeff(k: u32, m: i32, window: &TruncationWindow) -> FormalSeries {
    let mut out = FormalSeries::zero(*window);
    let total = k as i32 + m;
    if total < 1 {
        return out;
    }
    let total = total as u32;
    for mu in 1..=total {
        for d in 0..=(total - mu) / 2 {
            let l = total - mu - 2 * d;
            let coeff = inv_factorial(l)
                * inv_factorial(d)
                * inv_factorial(d + mu)
                * sign(mu as i64)
                * pow_i(&int(mu as i64), k as i32);
            let mono = Monomial::from_pairs(&[
                (Var::T, l as i32),
                (Var::Q1, d as i32),
                (Var::Q2, (d + mu) as i32),
            ]);
            out.add_term(mono, coeff);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed::ifunction::{restricted_i_components, z_coeff};

    fn w() -> TruncationWindow {
        TruncationWindow::new(10, 4, 4, -8, 1)
    }

    #[test]
    fn small_cases() {
        assert!(phi_k_coeff(0, 0, &w()).is_zero());
        let q2 = Monomial::var(Var::Q2);
        assert_eq!(phi_k_coeff(0, 1, &w()), FormalSeries::monomial(int(-1), q2, w()));
        let want = FormalSeries::from_terms(
            [
                (q2.pow(2), int(2)),
                (Monomial::from_pairs(&[(Var::T, 1), (Var::Q2, 1)]), int(-1)),
            ],
            w(),
        );
        assert_eq!(phi_k_coeff(2, 0, &w()), want);
    }

    #[test]
    fn second_component_is_the_phi_expansion() {
        let r = restricted_i_components(&w());
        for m in 0..=3 {
            let direct = z_coeff(&r.second, m, &w()).unwrap();
            let mut assembled = FormalSeries::zero(w());
            for k in 0..=(-w().min_v) as u32 {
                let term = phi_k_coeff(k, m, &w())
                    .mul_monomial(&int(1), &Monomial::from_pairs(&[(Var::V, -(k as i32))]));
                assembled = assembled.add(&term);
            }
            assert_eq!(direct, assembled, "m = {m}");
        }
    }
}
