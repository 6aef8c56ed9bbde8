//! Exact arithmetic over possibly-unreduced fractions.
//!
//! A [`Fraction`] is an ordered pair `num/den` of arbitrary-precision
//! integers with `den >= 0`. Representations are never normalized behind
//! the caller's back: `2/4` and `1/2` are distinct values of this type that
//! happen to denote the same rational number. A zero denominator denotes
//! `+infinity` and requires a positive numerator; `0/0` is rejected.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FractionError {
    #[error("denominator must be non-negative")]
    NegativeDenominator,
    #[error("zero denominator requires a positive numerator")]
    InvalidInfinity,
    #[error("incomparable infinities")]
    IncomparableInfinities,
    #[error("cannot parse {0:?} as a fraction: expected \"<integer>/<non-negative integer>\"")]
    Parse(String),
}

/// An exact fraction. Equality and hashing are *structural*: two fractions
/// compare equal only if they have identical numerator and denominator.
/// Use [`Fraction::compare`] or [`Fraction::value_eq`] for numeric order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: BigInt,
    den: BigInt,
}

impl Fraction {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, FractionError> {
        let num = num.into();
        let den = den.into();
        if den.is_negative() {
            return Err(FractionError::NegativeDenominator);
        }
        if den.is_zero() && !num.is_positive() {
            return Err(FractionError::InvalidInfinity);
        }
        Ok(Fraction { num, den })
    }

    /// Bypasses validation. Callers must uphold `den >= 0` and
    /// `den = 0 => num > 0`; every mediant of valid fractions qualifies.
    pub(crate) fn new_unchecked(num: BigInt, den: BigInt) -> Self {
        debug_assert!(!den.is_negative());
        debug_assert!(!den.is_zero() || num.is_positive());
        Fraction { num, den }
    }

    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    /// True when the denominator is zero, i.e. the value is `+infinity`.
    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    /// `den * other.num - num * other.den`. Positive iff `self < other` as
    /// numbers, zero iff they denote the same number. Representation-
    /// sensitive: scaling either argument scales the result.
    pub fn cross_determinant(&self, other: &Fraction) -> BigInt {
        &self.den * &other.num - &self.num * &other.den
    }

    /// Numeric comparison. Errors only when both values are infinite.
    pub fn compare(&self, other: &Fraction) -> Result<Ordering, FractionError> {
        if self.is_infinite() && other.is_infinite() {
            return Err(FractionError::IncomparableInfinities);
        }
        // sign(C(f, g)) translates directly: C > 0 iff f < g.
        Ok(match self.cross_determinant(other).sign() {
            num_bigint::Sign::Plus => Ordering::Less,
            num_bigint::Sign::NoSign => Ordering::Equal,
            num_bigint::Sign::Minus => Ordering::Greater,
        })
    }

    /// True when both fractions denote the same rational number (or both
    /// are infinite), regardless of representation.
    pub fn value_eq(&self, other: &Fraction) -> bool {
        self.cross_determinant(other).is_zero()
    }

    /// The lowest-terms representation of the same number. Infinite values
    /// normalize to `1/0`, zero to `0/1`.
    pub fn reduce_fully(&self) -> Fraction {
        let g = self.num.gcd(&self.den);
        if g.is_one() {
            return self.clone();
        }
        Fraction {
            num: &self.num / &g,
            den: &self.den / &g,
        }
    }

    pub fn parity_class(&self) -> ParityClass {
        ParityClass {
            num_odd: self.num.is_odd(),
            den_odd: self.den.is_odd(),
        }
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Fraction {
    type Err = FractionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || FractionError::Parse(s.to_string());
        let (n, d) = s.trim().split_once('/').ok_or_else(err)?;
        let num = BigInt::from_str(n.trim()).map_err(|_| err())?;
        let den = BigInt::from_str(d.trim()).map_err(|_| err())?;
        if den.is_negative() {
            return Err(FractionError::NegativeDenominator);
        }
        Fraction::new(num, den)
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        // Decimal strings keep arbitrary-precision values exact in JSON.
        let mut s = serializer.serialize_struct("Fraction", 2)?;
        s.serialize_field("num", &self.num.to_string())?;
        s.serialize_field("den", &self.den.to_string())?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            num: String,
            den: String,
        }
        let repr = Repr::deserialize(deserializer)?;
        let num = BigInt::from_str(&repr.num).map_err(D::Error::custom)?;
        let den = BigInt::from_str(&repr.den).map_err(D::Error::custom)?;
        Fraction::new(num, den).map_err(D::Error::custom)
    }
}

/// Componentwise parity of a fraction's representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ParityClass {
    pub num_odd: bool,
    pub den_odd: bool,
}

impl ParityClass {
    /// The even/even class. Only reachable by non-lowest-terms
    /// representations, and it breaks parity-based classification.
    pub fn is_degenerate(&self) -> bool {
        !self.num_odd && !self.den_odd
    }
}

impl fmt::Display for ParityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = |odd: bool| if odd { "odd" } else { "even" };
        write!(f, "({}, {})", word(self.num_odd), word(self.den_odd))
    }
}

/// A 2-adic valuation. `Infinite` is the valuation of zero and is the top
/// element of the order, which is exactly what comparisons need when a
/// cross-determinant vanishes at an endpoint coincidence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "infinite"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => serializer.serialize_u64(*v),
            Valuation::Infinite => serializer.serialize_str("infinite"),
        }
    }
}

/// The exponent of the largest power of two dividing `n`.
pub fn nu2(n: &BigInt) -> Valuation {
    match n.trailing_zeros() {
        Some(v) => Valuation::Finite(v),
        None => Valuation::Infinite,
    }
}

/// `C(lo, x) + C(x, hi)`: how far `x` is from collapsing onto an endpoint
/// of `[lo, hi]`, measured through the given representations. Positive for
/// `x` strictly inside the interval, `1` exactly at a lowest-terms
/// endpoint coincidence.
pub fn modulus(lo: &Fraction, hi: &Fraction, x: &Fraction) -> BigInt {
    lo.cross_determinant(x) + x.cross_determinant(hi)
}
