//! Turn-unit phases and exact rational vectors.
//!
//! A "turn exponent" `q` stands for the unit complex number `exp(2*pi*i*q)`.
//! Multiplying phases is adding exponents mod 1, so the whole crate works in
//! the additive group `Q/Z` and never touches floating point here.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use thiserror::Error;

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

/// Convenience constructor for a rational from two machine integers.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Convenience constructor for an integer rational.
pub fn rat_int(num: i64) -> Rat {
    Rat::from_integer(BigInt::from(num))
}

/// Canonical string form `p/q` (lowest terms, positive denominator).
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn rat_from_str(s: &str) -> Result<Rat, PhaseError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| PhaseError::BadRational(s.to_string()))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| PhaseError::BadRational(s.to_string()))?;
    if den.is_zero() {
        return Err(PhaseError::BadRational(s.to_string()));
    }
    Ok(Rat::new(num, den))
}

/// Serde adapter serializing a [`Rat`] as the string `p/q`.
pub mod ratstr {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rat, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&rat_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(de)?;
        rat_from_str(&s).map_err(D::Error::custom)
    }
}

/// Serde adapter for vectors of rationals in `p/q` form.
pub mod ratstr_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rat], ser: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = v.iter().map(rat_to_string).collect();
        strings.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Rat>, D::Error> {
        let strings: Vec<String> = Vec::deserialize(de)?;
        strings
            .iter()
            .map(|s| rat_from_str(s).map_err(D::Error::custom))
            .collect()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PhaseError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("malformed rational literal: {0:?}")]
    BadRational(String),
}

/// Reduces a rational to the fundamental domain `[0, 1)` of `Q/Z`.
pub fn reduce_mod_one(r: &Rat) -> Rat {
    r - r.floor()
}

/// A phase `exp(2*pi*i*q)` stored as `q` normalized to `[0, 1)`.
///
/// Normalization happens on construction, so two exponents are equal exactly
/// when the phases they denote are equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TurnExponent(Rat);

impl TurnExponent {
    pub fn new(q: Rat) -> Self {
        TurnExponent(reduce_mod_one(&q))
    }

    pub fn zero() -> Self {
        TurnExponent(Rat::zero())
    }

    /// A half turn, i.e. the phase `-1`.
    pub fn half() -> Self {
        TurnExponent(rat(1, 2))
    }

    pub fn value(&self) -> &Rat {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn negated(&self) -> Self {
        TurnExponent::new(-&self.0)
    }

    /// Exponent multiplied by an integer (phase raised to that power).
    pub fn times_int(&self, k: &BigInt) -> Self {
        TurnExponent::new(&self.0 * Rat::from_integer(k.clone()))
    }
}

impl Add for &TurnExponent {
    type Output = TurnExponent;
    fn add(self, rhs: &TurnExponent) -> TurnExponent {
        TurnExponent::new(&self.0 + &rhs.0)
    }
}

impl Sub for &TurnExponent {
    type Output = TurnExponent;
    fn sub(self, rhs: &TurnExponent) -> TurnExponent {
        TurnExponent::new(&self.0 - &rhs.0)
    }
}

impl Neg for &TurnExponent {
    type Output = TurnExponent;
    fn neg(self) -> TurnExponent {
        self.negated()
    }
}

impl fmt::Display for TurnExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", rat_to_string(&self.0))
    }
}

impl Serialize for TurnExponent {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&rat_to_string(&self.0))
    }
}

impl<'de> Deserialize<'de> for TurnExponent {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        Ok(TurnExponent::new(
            rat_from_str(&s).map_err(D::Error::custom)?,
        ))
    }
}

/// Adds two turn exponents (multiplies the phases).
pub fn turn_add(a: &TurnExponent, b: &TurnExponent) -> TurnExponent {
    a + b
}

/// A point or displacement of `Q^n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RationalVector(#[serde(with = "ratstr_vec")] pub Vec<Rat>);

impl RationalVector {
    pub fn zeros(n: usize) -> Self {
        RationalVector(vec![Rat::zero(); n])
    }

    /// Standard basis vector `e_i` with 1-based index `i <= n`.
    pub fn unit(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= n, "unit vector index out of range");
        let mut v = vec![Rat::zero(); n];
        v[i - 1] = Rat::one();
        RationalVector(v)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        RationalVector(coords.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rat::is_zero)
    }

    pub fn dot(&self, other: &Self) -> Rat {
        assert_eq!(self.dim(), other.dim(), "dot of mismatched dimensions");
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a * b)
            .fold(Rat::zero(), |acc, t| acc + t)
    }

    pub fn scaled(&self, c: &Rat) -> Self {
        RationalVector(self.0.iter().map(|a| a * c).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(Rat::is_integer)
    }
}

impl Add for &RationalVector {
    type Output = RationalVector;
    fn add(self, rhs: &RationalVector) -> RationalVector {
        assert_eq!(self.dim(), rhs.dim(), "sum of mismatched dimensions");
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RationalVector {
    type Output = RationalVector;
    fn sub(self, rhs: &RationalVector) -> RationalVector {
        assert_eq!(self.dim(), rhs.dim(), "difference of mismatched dimensions");
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RationalVector {
    type Output = RationalVector;
    fn neg(self) -> RationalVector {
        RationalVector(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&Rat> for &RationalVector {
    type Output = RationalVector;
    fn mul(self, c: &Rat) -> RationalVector {
        self.scaled(c)
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (idx, c) in self.0.iter().enumerate() {
            if idx > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", rat_to_string(c))?;
        }
        write!(f, ")")
    }
}

/// An exponent affine in a position variable `x`: the phase
/// `exp(2*pi*i*(c + l.x))`.
///
/// The constant part lives in `Q/Z` and is normalized on construction; the
/// linear part is kept exact, because on `R^n` two affine phases agree only
/// when their slopes agree exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineTurnExponent {
    pub constant: TurnExponent,
    pub linear: RationalVector,
}

impl AffineTurnExponent {
    pub fn new(constant: Rat, linear: RationalVector) -> Self {
        AffineTurnExponent {
            constant: TurnExponent::new(constant),
            linear,
        }
    }

    pub fn zero(n: usize) -> Self {
        AffineTurnExponent {
            constant: TurnExponent::zero(),
            linear: RationalVector::zeros(n),
        }
    }

    pub fn constant_only(n: usize, q: Rat) -> Self {
        AffineTurnExponent {
            constant: TurnExponent::new(q),
            linear: RationalVector::zeros(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.linear.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.linear.is_zero()
    }

    /// Evaluates the exponent at the point `x`.
    pub fn eval(&self, x: &RationalVector) -> Result<TurnExponent, PhaseError> {
        if x.dim() != self.dim() {
            return Err(PhaseError::DimensionMismatch(x.dim(), self.dim()));
        }
        Ok(TurnExponent::new(
            self.constant.value() + &self.linear.dot(x),
        ))
    }

    /// The exponent of the shifted function `x -> f(x + v)`.
    pub fn shift_base(&self, v: &RationalVector) -> Result<Self, PhaseError> {
        if v.dim() != self.dim() {
            return Err(PhaseError::DimensionMismatch(v.dim(), self.dim()));
        }
        Ok(AffineTurnExponent {
            constant: TurnExponent::new(self.constant.value() + &self.linear.dot(v)),
            linear: self.linear.clone(),
        })
    }

    pub fn negated(&self) -> Self {
        AffineTurnExponent {
            constant: self.constant.negated(),
            linear: -&self.linear,
        }
    }

    /// Exponent multiplied by an integer.
    pub fn times_int(&self, k: &BigInt) -> Self {
        let kr = Rat::from_integer(k.clone());
        AffineTurnExponent {
            constant: self.constant.times_int(k),
            linear: self.linear.scaled(&kr),
        }
    }

    /// Equality of the phase functions on all of `R^n`.
    pub fn equal_on_rn(&self, other: &Self) -> bool {
        self.constant == other.constant && self.linear == other.linear
    }

    /// Equality up to a character of the integer lattice: the constants must
    /// agree mod 1 and the slopes may differ by an integer vector.  This is
    /// the comparison appropriate for sections over the torus, where an
    /// integer-slope factor is a change of equivariant trivialization.
    pub fn equal_on_torus(&self, other: &Self) -> bool {
        self.constant == other.constant && (&self.linear - &other.linear).is_integral()
    }

    /// True when the phase is a torus-trivial character: integer constant
    /// (zero after normalization) and integer slopes.
    pub fn is_torus_trivial(&self) -> bool {
        self.constant.is_zero() && self.linear.is_integral()
    }
}

impl Add for &AffineTurnExponent {
    type Output = AffineTurnExponent;
    fn add(self, rhs: &AffineTurnExponent) -> AffineTurnExponent {
        AffineTurnExponent {
            constant: &self.constant + &rhs.constant,
            linear: &self.linear + &rhs.linear,
        }
    }
}

impl Sub for &AffineTurnExponent {
    type Output = AffineTurnExponent;
    fn sub(self, rhs: &AffineTurnExponent) -> AffineTurnExponent {
        AffineTurnExponent {
            constant: &self.constant - &rhs.constant,
            linear: &self.linear - &rhs.linear,
        }
    }
}

impl AddAssign<&AffineTurnExponent> for AffineTurnExponent {
    fn add_assign(&mut self, rhs: &AffineTurnExponent) {
        *self = &*self + rhs;
    }
}

impl fmt::Display for AffineTurnExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}.x", self.constant, self.linear)
    }
}

/// Torus-mode equality test for two affine exponents.
pub fn affine_equal_on_torus(f: &AffineTurnExponent, g: &AffineTurnExponent) -> bool {
    f.equal_on_torus(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduction_lands_in_unit_interval() {
        let q = TurnExponent::new(rat(7, 6));
        assert_eq!(q.value(), &rat(1, 6));
        let q = TurnExponent::new(rat(-1, 6));
        assert_eq!(q.value(), &rat(5, 6));
        let q = TurnExponent::new(rat_int(-3));
        assert!(q.is_zero());
    }

    #[test]
    fn turn_add_examples() {
        assert_eq!(
            turn_add(&TurnExponent::new(rat(2, 3)), &TurnExponent::new(rat(2, 3))),
            TurnExponent::new(rat(1, 3))
        );
        assert_eq!(
            turn_add(&TurnExponent::new(rat(1, 2)), &TurnExponent::new(rat(1, 2))),
            TurnExponent::zero()
        );
    }

    #[test]
    fn rational_string_round_trip() {
        let r = rat(-22, 8);
        let s = rat_to_string(&r);
        assert_eq!(s, "-11/4");
        assert_eq!(rat_from_str(&s).unwrap(), r);
        assert_eq!(rat_from_str("5").unwrap(), rat_int(5));
        assert!(rat_from_str("1/0").is_err());
        assert!(rat_from_str("x/2").is_err());
    }

    #[test]
    fn affine_eval_and_shift() {
        let f = AffineTurnExponent::new(rat(1, 4), RationalVector::from_ints(&[1, -2, 0]));
        let x = RationalVector(vec![rat(1, 2), rat(1, 3), rat_int(9)]);
        let got = f.eval(&x).unwrap();
        // 1/4 + 1/2 - 2/3 = 1/12
        assert_eq!(got, TurnExponent::new(rat(1, 12)));
        let shifted = f.shift_base(&RationalVector::from_ints(&[1, 1, 1])).unwrap();
        assert_eq!(shifted.constant, TurnExponent::new(rat(1, 4) + rat_int(-1)));
        assert_eq!(shifted.linear, f.linear);
        assert!(f
            .eval(&RationalVector::zeros(2))
            .is_err_and(|e| matches!(e, PhaseError::DimensionMismatch(2, 3))));
    }

    #[test]
    fn torus_equality_quotients_integer_slopes() {
        let f = AffineTurnExponent::new(Rat::zero(), RationalVector::from_ints(&[1, 0, 0]));
        let g = AffineTurnExponent::zero(3);
        assert!(affine_equal_on_torus(&f, &g));
        assert!(!f.equal_on_rn(&g));

        let f = AffineTurnExponent::new(rat(1, 3), RationalVector::from_ints(&[2, -1, 0]));
        let g = AffineTurnExponent::new(rat(4, 3), RationalVector::from_ints(&[-1, 0, 0]));
        assert!(affine_equal_on_torus(&f, &g));

        let f = AffineTurnExponent::new(Rat::zero(), RationalVector(vec![rat(1, 2), Rat::zero()]));
        let g = AffineTurnExponent::zero(2);
        assert!(!affine_equal_on_torus(&f, &g));
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-100i64..=100, 1i64..=100).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn turn_group_laws(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
            let (a, b, c) = (TurnExponent::new(a), TurnExponent::new(b), TurnExponent::new(c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &TurnExponent::zero(), a.clone());
            prop_assert_eq!(&a + &a.negated(), TurnExponent::zero());
        }

        #[test]
        fn normalization_is_a_homomorphism(a in arb_rat(), b in arb_rat()) {
            // reducing before or after adding gives the same class
            let direct = TurnExponent::new(&a + &b);
            let reduced = &TurnExponent::new(a) + &TurnExponent::new(b);
            prop_assert_eq!(direct, reduced);
        }
    }
}
