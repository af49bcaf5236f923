//! Exact sparse multivariate Laurent series.
//!
//! Everything in the engine is a [`FormalSeries`] over the variables of
//! [`Var`], with [`Rational`] coefficients and a [`TruncationWindow`].
//! Values are immutable; every operation returns a new series.

mod factor;
mod formal;
mod laurent;
mod monomial;
pub mod rational;
mod window;

pub use factor::{expand_factor, factor_reciprocal, Expansion, LinearFactorTerm};
pub use formal::{FormalSeries, Substitution};
pub use laurent::VLaurent;
pub use monomial::{Monomial, Var};
pub use rational::Rational;
pub use window::TruncationWindow;
