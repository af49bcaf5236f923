//! Fixed-point data for the equivariant projective line and the toric
//! surface, with restriction tables and localized Poincaré pairings.
//!
//! On the line the circle acts with weight `v`; the fixed points `p1`, `p2`
//! have tangent weights `-v` and `v`. On the surface the two-torus has
//! weights `u1`, `u2`, and the specialization used throughout the
//! correspondence is `u2 = -u1 = v`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::rational::{format_rational, int, rat, Rational};
use crate::series::VLaurent;

/// Fixed points of the circle action on the line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum P1Point {
    P1,
    P2,
}

impl P1Point {
    pub const ALL: [P1Point; 2] = [P1Point::P1, P1Point::P2];

    /// Vertex label used by localization graphs (1 or 2).
    pub fn label(self) -> u8 {
        match self {
            P1Point::P1 => 1,
            P1Point::P2 => 2,
        }
    }

    pub fn from_label(label: u8) -> Option<P1Point> {
        match label {
            1 => Some(P1Point::P1),
            2 => Some(P1Point::P2),
            _ => None,
        }
    }

    fn index(self) -> usize {
        self.label() as usize - 1
    }

    /// Tangent weight `w(p)`: `-v` at `p1`, `v` at `p2`. This is also the
    /// equivariant Euler class of the tangent line and the value `Δ^α`.
    pub fn tangent_weight(self) -> Rational {
        match self {
            P1Point::P1 => int(-1),
            P1Point::P2 => int(1),
        }
    }
}

/// An equivariant class on the line, stored by its fixed-point restrictions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P1Class {
    at: [VLaurent; 2],
}

impl P1Class {
    pub fn from_restrictions(at_p1: VLaurent, at_p2: VLaurent) -> Self {
        P1Class { at: [at_p1, at_p2] }
    }

    pub fn one() -> Self {
        Self::from_restrictions(VLaurent::one(), VLaurent::one())
    }

    /// Hyperplane class `H`, with `H|p1 = -v/2`, `H|p2 = v/2`.
    pub fn hyperplane() -> Self {
        Self::from_restrictions(
            VLaurent::monomial(rat(-1, 2), 1),
            VLaurent::monomial(rat(1, 2), 1),
        )
    }

    /// Idempotent basis `φ_α`, restricting to `δ_{αβ}` at `p_β`.
    pub fn phi(alpha: P1Point) -> Self {
        match alpha {
            P1Point::P1 => Self::from_restrictions(VLaurent::one(), VLaurent::zero()),
            P1Point::P2 => Self::from_restrictions(VLaurent::zero(), VLaurent::one()),
        }
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "1" | "one" => Ok(Self::one()),
            "H" => Ok(Self::hyperplane()),
            "phi1" => Ok(Self::phi(P1Point::P1)),
            "phi2" => Ok(Self::phi(P1Point::P2)),
            other => Err(Error::UnknownClass(other.to_string())),
        }
    }

    pub fn restrict(&self, p: P1Point) -> &VLaurent {
        &self.at[p.index()]
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_restrictions(self.at[0].scale(c), self.at[1].scale(c))
    }

    pub fn add(&self, other: &P1Class) -> Self {
        Self::from_restrictions(&self.at[0] + &other.at[0], &self.at[1] + &other.at[1])
    }

    pub fn cup(&self, other: &P1Class) -> Self {
        Self::from_restrictions(&self.at[0] * &other.at[0], &self.at[1] * &other.at[1])
    }

    /// `∫_{P¹} γ = Σ_p γ|_p / w(p)`.
    pub fn integrate(&self) -> VLaurent {
        P1Point::ALL.iter().fold(VLaurent::zero(), |acc, &p| {
            let term = self
                .restrict(p)
                .shift(-1)
                .scale(&p.tangent_weight().recip());
            &acc + &term
        })
    }
}

/// Equivariant Poincaré pairing on the line.
pub fn pairing_p1(a: &P1Class, b: &P1Class) -> VLaurent {
    a.cup(b).integrate()
}

/// Restriction of a named class on the line to a fixed point.
pub fn restrict_p1(class: &str, point: P1Point) -> Result<VLaurent> {
    Ok(P1Class::by_name(class)?.restrict(point).clone())
}

/// Polynomial in the torus weights `u1`, `u2`; keys are `(deg u1, deg u2)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl UPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term((0, 0), c);
        p
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// `a·u1 + b·u2`.
    pub fn linear(a: i64, b: i64) -> Self {
        let mut p = Self::zero();
        p.add_term((1, 0), int(a));
        p.add_term((0, 1), int(b));
        p
    }

    pub fn u1() -> Self {
        Self::linear(1, 0)
    }

    pub fn u2() -> Self {
        Self::linear(0, 1)
    }

    fn add_term(&mut self, k: (u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> UPoly {
        let mut out = UPoly::zero();
        for (k, x) in &self.terms {
            out.add_term(*k, x * c);
        }
        out
    }

    pub fn neg(&self) -> UPoly {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        let mut out = UPoly::zero();
        for ((a1, a2), x) in &self.terms {
            for ((b1, b2), y) in &other.terms {
                out.add_term((a1 + b1, a2 + b2), x * y);
            }
        }
        out
    }

    /// `(coef u1, coef u2)` for a homogeneous linear form (or zero).
    pub fn linear_coeffs(&self) -> Option<(Rational, Rational)> {
        let mut a = Rational::zero();
        let mut b = Rational::zero();
        for (k, c) in &self.terms {
            match k {
                (1, 0) => a = c.clone(),
                (0, 1) => b = c.clone(),
                _ => return None,
            }
        }
        Some((a, b))
    }

    /// Specialization `u1 = -v`, `u2 = v`.
    pub fn specialize(&self) -> VLaurent {
        let mut out = VLaurent::zero();
        for ((i, j), c) in &self.terms {
            let sign = if i % 2 == 0 { c.clone() } else { -c.clone() };
            out.add_term((i + j) as i32, sign);
        }
        out
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((i, j), c) in self.terms.iter().rev() {
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mut factors = Vec::new();
            for (name, e) in [("u1", *i), ("u2", *j)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{}^{}", name, e)),
                }
            }
            if factors.is_empty() || !mag.is_one() {
                factors.insert(0, mag.to_string());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Quotient of two `UPoly`s; no gcd simplification, equality is by
/// cross-multiplication.
#[derive(Clone, Debug)]
pub struct URational {
    pub num: UPoly,
    pub den: UPoly,
}

impl URational {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(URational { num, den })
    }

    pub fn poly(p: UPoly) -> Self {
        URational {
            num: p,
            den: UPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::poly(UPoly::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &URational) -> URational {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return URational {
                num: self.num.add(&other.num),
                den: self.den.clone(),
            };
        }
        URational {
            num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    pub fn mul(&self, other: &URational) -> URational {
        URational {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
    }

    pub fn div(&self, other: &URational) -> Result<URational> {
        URational::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    /// Specializes `u2 = -u1 = v`; the denominator must become a single
    /// nonzero monomial in `v`.
    pub fn specialize(&self) -> Result<VLaurent> {
        if self.is_zero() {
            return Ok(VLaurent::zero());
        }
        let den = self.den.specialize().recip().ok_or(Error::SpecializationPole)?;
        Ok(&self.num.specialize() * &den)
    }
}

impl PartialEq for URational {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl fmt::Display for URational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == UPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Torus-fixed points `p_{σ0}`, `p_{σ1}`, `p_{σ2}` of the surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FixedPoint {
    Sigma0,
    Sigma1,
    Sigma2,
}

impl FixedPoint {
    pub const ALL: [FixedPoint; 3] = [FixedPoint::Sigma0, FixedPoint::Sigma1, FixedPoint::Sigma2];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            FixedPoint::Sigma0 => "sigma0",
            FixedPoint::Sigma1 => "sigma1",
            FixedPoint::Sigma2 => "sigma2",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "sigma0" | "s0" => Ok(FixedPoint::Sigma0),
            "sigma1" | "s1" => Ok(FixedPoint::Sigma1),
            "sigma2" | "s2" => Ok(FixedPoint::Sigma2),
            other => Err(Error::UnknownClass(other.to_string())),
        }
    }
}

/// Named classes on the surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceClassId {
    One,
    /// `H1ᵀ`, `H2ᵀ` (index 1 or 2).
    H(u8),
    /// Toric divisors `Dᵢᵀ`, `i = 1..4`.
    D(u8),
    /// Fixed-point basis `φ̃ᵢ`, `i = 0..2`.
    PhiTilde(u8),
    /// Point class `[p_σ]`.
    Point(FixedPoint),
}

impl SurfaceClassId {
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::UnknownClass(s.to_string());
        let idx = |rest: &str| rest.trim_end_matches('T').parse::<u8>().map_err(|_| bad());
        let id = if s == "1" {
            SurfaceClassId::One
        } else if let Some(rest) = s.strip_prefix("phi~") {
            SurfaceClassId::PhiTilde(idx(rest)?)
        } else if let Some(rest) = s.strip_prefix('H') {
            SurfaceClassId::H(idx(rest)?)
        } else if let Some(rest) = s.strip_prefix('D') {
            SurfaceClassId::D(idx(rest)?)
        } else if let Some(rest) = s.strip_prefix("[p_").and_then(|r| r.strip_suffix(']')) {
            SurfaceClassId::Point(FixedPoint::parse(rest)?)
        } else {
            return Err(bad());
        };
        match id {
            SurfaceClassId::H(1..=2) | SurfaceClassId::D(1..=4) | SurfaceClassId::PhiTilde(0..=2) => Ok(id),
            SurfaceClassId::One | SurfaceClassId::Point(_) => Ok(id),
            _ => Err(bad()),
        }
    }
}

/// An equivariant class on the surface by its three restrictions.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceClass {
    pub at: [URational; 3],
}

impl SurfaceClass {
    pub fn restrict(&self, p: FixedPoint) -> &URational {
        &self.at[p.index()]
    }

    pub fn scale_poly(&self, p: &UPoly) -> SurfaceClass {
        let f = URational::poly(p.clone());
        SurfaceClass {
            at: self.at.clone().map(|x| x.mul(&f)),
        }
    }
}

/// Static combinatorial and equivariant data of the toric surface.
#[derive(Clone, Debug)]
pub struct ToricSurfaceData {
    /// Rays `v1..v4` in `N = ℤ²`.
    pub rays: [[i64; 2]; 4],
    /// Two-dimensional cones as pairs of ray indices (1-based).
    pub cones: [[usize; 2]; 3],
    /// Charge matrix rows `D1..D4` in the dual of the curve lattice.
    pub charges: [[i64; 2]; 4],
    /// Nef cone generators, as divisor indices (metadata only).
    pub nef_generators: [usize; 2],
    weights: BTreeMap<(usize, FixedPoint), UPoly>,
    divisors: [[UPoly; 3]; 4],
    hyperplanes: [[UPoly; 3]; 2],
}

impl Default for ToricSurfaceData {
    fn default() -> Self {
        Self::new()
    }
}

impl ToricSurfaceData {
    pub fn new() -> Self {
        use FixedPoint::*;
        let mut weights = BTreeMap::new();
        weights.insert((1, Sigma1), UPoly::linear(1, 0));
        weights.insert((1, Sigma0), UPoly::linear(-1, 0));
        weights.insert((2, Sigma2), UPoly::linear(0, 1));
        weights.insert((3, Sigma1), UPoly::linear(-1, -1));
        weights.insert((2, Sigma0), UPoly::linear(0, -1));
        weights.insert((4, Sigma2), UPoly::linear(-1, -1));
        let l = UPoly::linear;
        let z = UPoly::zero;
        // Columns are σ0, σ1, σ2.
        let divisors = [
            [l(0, -1), l(-1, -1), z()],
            [l(-1, 0), z(), l(-1, -1)],
            [z(), l(1, 0), z()],
            [z(), z(), l(0, 1)],
        ];
        let hyperplanes = [[z(), l(1, 0), z()], [z(), z(), l(0, 1)]];
        ToricSurfaceData {
            rays: [[0, 1], [1, 0], [-1, 1], [1, -1]],
            cones: [[1, 2], [1, 3], [2, 4]],
            charges: [[-1, 1], [1, -1], [1, 0], [0, 1]],
            nef_generators: [3, 4],
            weights,
            divisors,
            hyperplanes,
        }
    }

    /// Weight of the torus on `T_{p_σ} l_{τ_i}` (for `τ_i ⊂ σ`).
    pub fn weight(&self, ray: usize, point: FixedPoint) -> Option<&UPoly> {
        self.weights.get(&(ray, point))
    }

    /// Euler class of the tangent space at `p_σ`: product of its two cone
    /// weights.
    pub fn euler_class(&self, point: FixedPoint) -> UPoly {
        self.weights
            .iter()
            .filter(|((_, p), _)| *p == point)
            .fold(UPoly::one(), |acc, (_, w)| acc.mul(w))
    }

    pub fn divisor_restriction(&self, i: usize, point: FixedPoint) -> &UPoly {
        &self.divisors[i - 1][point.index()]
    }

    pub fn hyperplane_restriction(&self, i: usize, point: FixedPoint) -> &UPoly {
        &self.hyperplanes[i - 1][point.index()]
    }

    /// The class named by `id`, as its three restrictions.
    pub fn class(&self, id: SurfaceClassId) -> SurfaceClass {
        let from_polys = |f: &dyn Fn(FixedPoint) -> UPoly| SurfaceClass {
            at: FixedPoint::ALL.map(|p| URational::poly(f(p))),
        };
        match id {
            SurfaceClassId::One => from_polys(&|_| UPoly::one()),
            SurfaceClassId::H(i) => from_polys(&|p| self.hyperplane_restriction(i as usize, p).clone()),
            SurfaceClassId::D(i) => from_polys(&|p| self.divisor_restriction(i as usize, p).clone()),
            SurfaceClassId::Point(q) => {
                from_polys(&|p| if p == q { self.euler_class(q) } else { UPoly::zero() })
            }
            SurfaceClassId::PhiTilde(i) => {
                let q = FixedPoint::ALL[i as usize];
                let norm = match q {
                    FixedPoint::Sigma0 => UPoly::u1().mul(&UPoly::u2()),
                    _ => UPoly::linear(-1, -1),
                };
                let point = self.class(SurfaceClassId::Point(q));
                SurfaceClass {
                    at: point.at.map(|x| {
                        URational::new(x.num, x.den.mul(&norm)).expect("nonzero normalization")
                    }),
                }
            }
        }
    }

    pub fn restrict(&self, id: SurfaceClassId, point: FixedPoint) -> URational {
        self.class(id).restrict(point).clone()
    }

    /// Coefficients `κ_p = b|_p / e(T_p)`, so that `(a, b) = Σ_p a|_p κ_p`.
    pub fn pairing_weights(&self, b: &SurfaceClass) -> Result<[URational; 3]> {
        let mut out = [URational::zero(), URational::zero(), URational::zero()];
        for p in FixedPoint::ALL {
            let e = URational::poly(self.euler_class(p));
            out[p.index()] = b.restrict(p).div(&e)?;
        }
        Ok(out)
    }

    /// Localized equivariant Poincaré pairing on the surface.
    pub fn pairing(&self, a: &SurfaceClass, b: &SurfaceClass) -> Result<URational> {
        let kappa = self.pairing_weights(b)?;
        Ok(FixedPoint::ALL.iter().fold(URational::zero(), |acc, &p| {
            let term = if a.restrict(p).is_zero() || kappa[p.index()].is_zero() {
                URational::zero()
            } else {
                a.restrict(p).mul(&kappa[p.index()])
            };
            acc.add(&term)
        }))
    }

    /// The ray map composed with the charge matrix vanishes.
    pub fn exact_sequence_holds(&self) -> bool {
        (0..2).all(|row| {
            (0..2).all(|col| {
                (0..4)
                    .map(|i| self.rays[i][row] * self.charges[i][col])
                    .sum::<i64>()
                    == 0
            })
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Snapshot {
            rays: Vec<[i64; 2]>,
            cones: Vec<[usize; 2]>,
            charges: Vec<[i64; 2]>,
            nef_generators: Vec<usize>,
            weights: BTreeMap<String, String>,
            divisor_restrictions: BTreeMap<String, String>,
            hyperplane_restrictions: BTreeMap<String, String>,
            euler_classes: BTreeMap<String, String>,
        }
        let mut weights = BTreeMap::new();
        for ((ray, p), w) in &self.weights {
            weights.insert(format!("tau{}@{}", ray, p.name()), w.to_string());
        }
        let mut divisor_restrictions = BTreeMap::new();
        let mut hyperplane_restrictions = BTreeMap::new();
        let mut euler_classes = BTreeMap::new();
        for p in FixedPoint::ALL {
            for i in 1..=4 {
                divisor_restrictions.insert(
                    format!("D{}T@{}", i, p.name()),
                    self.divisor_restriction(i, p).to_string(),
                );
            }
            for i in 1..=2 {
                hyperplane_restrictions.insert(
                    format!("H{}T@{}", i, p.name()),
                    self.hyperplane_restriction(i, p).to_string(),
                );
            }
            euler_classes.insert(p.name().to_string(), self.euler_class(p).to_string());
        }
        serde_json::to_value(Snapshot {
            rays: self.rays.to_vec(),
            cones: self.cones.to_vec(),
            charges: self.charges.to_vec(),
            nef_generators: self.nef_generators.to_vec(),
            weights,
            divisor_restrictions,
            hyperplane_restrictions,
            euler_classes,
        })
        .expect("snapshot is serializable")
    }
}

/// Fixed-point tables of the line as JSON.
pub fn p1_to_json() -> serde_json::Value {
    let mut restrictions = BTreeMap::new();
    for name in ["1", "H", "phi1", "phi2"] {
        let class = P1Class::by_name(name).expect("known class");
        for p in P1Point::ALL {
            restrictions.insert(format!("{}@p{}", name, p.label()), class.restrict(p).to_string());
        }
    }
    let weights: BTreeMap<String, String> = P1Point::ALL
        .iter()
        .map(|p| (format!("p{}", p.label()), format!("{}*v", format_rational(&p.tangent_weight()))))
        .collect();
    serde_json::json!({ "tangent_weights": weights, "restrictions": restrictions })
}
