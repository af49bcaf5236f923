use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, Var};

/// Box of admissible exponents for a truncated series.
///
/// The `Q` bound applies to [`Monomial::q_grade`] and the `X` bound to
/// [`Monomial::x_grade`], so truncation commutes with the change of
/// variables `q1 ↦ -Q/X`, `q2 ↦ -Q X`. `Q`- and `T`-grades are never
/// negative.
///
/// Truncating after a product is exact only along gradings in which all
/// factors are one-signed (`Q`, `T`, and whichever of `V`/`Z` the expansion
/// moves monotonically). Callers that multiply genuinely two-sided Laurent
/// factors must pick a window covering every intermediate exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationWindow {
    pub max_q: u32,
    pub max_t: u32,
    pub max_abs_x: u32,
    pub min_v: i32,
    pub max_v: i32,
    pub min_z: i32,
    pub max_z: i32,
}

impl Default for TruncationWindow {
    fn default() -> Self {
        TruncationWindow {
            max_q: 10,
            max_t: 4,
            max_abs_x: 4,
            min_v: -8,
            max_v: 1,
            min_z: -32,
            max_z: 32,
        }
    }
}

impl TruncationWindow {
    pub fn new(max_q: u32, max_t: u32, max_abs_x: u32, min_v: i32, max_v: i32) -> Self {
        TruncationWindow {
            max_q,
            max_t,
            max_abs_x,
            min_v,
            max_v,
            ..Default::default()
        }
    }

    /// A window that admits no monomial at all.
    pub fn empty() -> Self {
        TruncationWindow {
            max_q: 0,
            max_t: 0,
            max_abs_x: 0,
            min_v: 1,
            max_v: 0,
            min_z: 1,
            max_z: 0,
        }
    }

    pub fn with_v(mut self, min_v: i32, max_v: i32) -> Self {
        self.min_v = min_v;
        self.max_v = max_v;
        self
    }

    pub fn with_z(mut self, min_z: i32, max_z: i32) -> Self {
        self.min_z = min_z;
        self.max_z = max_z;
        self
    }

    pub fn is_empty(&self) -> bool {
        self.min_v > self.max_v || self.min_z > self.max_z
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        let q = m.q_grade();
        let t = m.exp(Var::T);
        let v = m.exp(Var::V);
        let z = m.exp(Var::Z);
        !self.is_empty()
            && (0..=self.max_q as i32).contains(&q)
            && (0..=self.max_t as i32).contains(&t)
            && m.x_grade().unsigned_abs() <= self.max_abs_x
            && (self.min_v..=self.max_v).contains(&v)
            && (self.min_z..=self.max_z).contains(&z)
    }

    pub fn intersect(&self, other: &TruncationWindow) -> TruncationWindow {
        TruncationWindow {
            max_q: self.max_q.min(other.max_q),
            max_t: self.max_t.min(other.max_t),
            max_abs_x: self.max_abs_x.min(other.max_abs_x),
            min_v: self.min_v.max(other.min_v),
            max_v: self.max_v.min(other.max_v),
            min_z: self.min_z.max(other.min_z),
            max_z: self.max_z.min(other.max_z),
        }
    }

    /// Widens the `variable` range so that it admits `exponent` and zero.
    pub(crate) fn admit(mut self, variable: Var, exponent: i32) -> Self {
        let lo = exponent.min(0);
        let hi = exponent.max(0);
        match variable {
            Var::V => {
                self.min_v = self.min_v.min(lo);
                self.max_v = self.max_v.max(hi);
            }
            Var::Z => {
                self.min_z = self.min_z.min(lo);
                self.max_z = self.max_z.max(hi);
            }
            Var::X | Var::Q1 | Var::Q2 => {
                self.max_abs_x += exponent.unsigned_abs();
            }
            Var::Q | Var::T => {}
        }
        self
    }
}
