use std::fmt;

use serde::{Deserialize, Serialize};

/// Formal variables of the engine.
///
/// `Q` stands for the square root of the Kähler parameter `q`, so that
/// half-integer powers of `q` become integer powers of `Q`. `T` is the
/// degree-zero coordinate `t⁰`, which the mirror map identifies with
/// `log q₀`. `X` tracks the winding number and `V` the equivariant weight.
/// `Q1` and `Q2` are the Kähler parameters of the toric surface before the
/// change of variables onto `Q` and `X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    Q,
    T,
    X,
    V,
    Z,
    Q1,
    Q2,
}

impl Var {
    pub const ALL: [Var; 7] = [Var::Q, Var::T, Var::X, Var::V, Var::Z, Var::Q1, Var::Q2];

    fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Q => "Q",
            Var::T => "T",
            Var::X => "X",
            Var::V => "V",
            Var::Z => "Z",
            Var::Q1 => "q1",
            Var::Q2 => "q2",
        }
    }
}

/// A Laurent monomial: a total exponent vector over [`Var::ALL`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial([i32; 7]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; 7])
    }

    pub fn var(v: Var) -> Self {
        Self::one().with(v, 1)
    }

    /// Builds a monomial from `(variable, exponent)` pairs; repeated
    /// variables accumulate.
    pub fn from_pairs(pairs: &[(Var, i32)]) -> Self {
        let mut m = Self::one();
        for &(v, e) in pairs {
            m.0[v.index()] += e;
        }
        m
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0[v.index()]
    }

    pub fn with(mut self, v: Var, e: i32) -> Self {
        self.0[v.index()] = e;
        self
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        out
    }

    pub fn pow(&self, k: i32) -> Monomial {
        Monomial(self.0.map(|e| e * k))
    }

    pub fn inverse(&self) -> Monomial {
        self.pow(-1)
    }

    /// Total `Q`-grade: `Q` plus the degrees of `q1` and `q2`, each of which
    /// maps to one power of `Q` under the change of variables.
    pub fn q_grade(&self) -> i32 {
        self.exp(Var::Q) + self.exp(Var::Q1) + self.exp(Var::Q2)
    }

    /// Winding grade: `X` plus `q2` minus `q1`, preserved by the change of
    /// variables `q1 ↦ -Q/X`, `q2 ↦ -Q X`.
    pub fn x_grade(&self) -> i32 {
        self.exp(Var::X) + self.exp(Var::Q2) - self.exp(Var::Q1)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v.name())?;
            } else {
                write!(f, "{}^{}", v.name(), e)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn missing_variables_have_zero_exponent() {
        let m = Monomial::from_pairs(&[(Var::Q, 2), (Var::X, -1)]);
        assert_eq!(m.exp(Var::T), 0);
        assert_eq!(m.exp(Var::X), -1);
        assert_eq!(m.to_string(), "Q^2*X^-1");
    }

    #[test]
    fn grades_are_preserved_by_the_change_of_variables() {
        // q1^3 q2 has the same grades as its image (-Q/X)^3 (-Q X) = Q^4 X^-2.
        let pre = Monomial::from_pairs(&[(Var::Q1, 3), (Var::Q2, 1)]);
        let post = Monomial::from_pairs(&[(Var::Q, 4), (Var::X, -2)]);
        assert_eq!(pre.q_grade(), post.q_grade());
        assert_eq!(pre.x_grade(), post.x_grade());
    }

    #[test]
    fn inverse_monomials_multiply_to_one() {
        let x = Monomial::var(Var::X);
        assert!(x.mul(&x.inverse()).is_one());
    }
}
