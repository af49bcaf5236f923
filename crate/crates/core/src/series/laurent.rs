use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{pow_i, Rational};

/// Laurent polynomial in the single equivariant weight `v`.
///
/// Fixed-point restrictions, localization contributions and ψ-integrals
/// all live here: every tangent weight is a rational multiple of `v`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VLaurent {
    coeffs: BTreeMap<i32, Rational>,
}

impl VLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0)
    }

    /// `c · v^k`.
    pub fn monomial(c: Rational, k: i32) -> Self {
        let mut out = Self::zero();
        out.add_term(k, c);
        out
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i32) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    /// `(c, k)` when the value is a single monomial `c · v^k`.
    pub fn as_monomial(&self) -> Option<(Rational, i32)> {
        let mut it = self.coeffs.iter();
        match (it.next(), it.next()) {
            (Some((k, c)), None) => Some((c.clone(), *k)),
            _ => None,
        }
    }

    pub fn add_term(&mut self, k: i32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(k).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (k, x) in &self.coeffs {
            out.add_term(*k, x * c);
        }
        out
    }

    pub fn shift(&self, by: i32) -> Self {
        VLaurent {
            coeffs: self.coeffs.iter().map(|(k, c)| (k + by, c.clone())).collect(),
        }
    }

    /// Inverse of a single monomial; `None` for zero or sums.
    pub fn recip(&self) -> Option<Self> {
        let (c, k) = self.as_monomial()?;
        Some(Self::monomial(c.recip(), -k))
    }

    pub fn pow(&self, e: i32) -> Option<Self> {
        if e >= 0 {
            return Some((0..e).fold(Self::one(), |acc, _| &acc * self));
        }
        let (c, k) = self.as_monomial()?;
        Some(Self::monomial(pow_i(&c, e), k * e))
    }

    /// Evaluates at a numeric `v`.
    pub fn eval_f64(&self, v: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|(k, c)| super::rational::to_f64(c) * v.powi(*k))
            .sum()
    }
}

impl Add for &VLaurent {
    type Output = VLaurent;
    fn add(self, rhs: &VLaurent) -> VLaurent {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub for &VLaurent {
    type Output = VLaurent;
    fn sub(self, rhs: &VLaurent) -> VLaurent {
        self + &(-rhs)
    }
}

impl Neg for &VLaurent {
    type Output = VLaurent;
    fn neg(self) -> VLaurent {
        self.scale(&-Rational::one())
    }
}

impl Mul for &VLaurent {
    type Output = VLaurent;
    fn mul(self, rhs: &VLaurent) -> VLaurent {
        let mut out = VLaurent::zero();
        for (a, x) in &self.coeffs {
            for (b, y) in &rhs.coeffs {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl fmt::Display for VLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "({})*v", c)?,
                _ => write!(f, "({})*v^{}", c, k)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::rat;

    #[test]
    fn monomial_arithmetic() {
        let a = VLaurent::monomial(rat(1, 2), 1);
        let b = VLaurent::monomial(rat(-1, 2), 1);
        assert!((&a + &b).is_zero());
        assert_eq!(&a * &a.recip().unwrap(), VLaurent::one());
        assert_eq!(a.pow(-2).unwrap(), VLaurent::monomial(rat(4, 1), -2));
    }
}
