//! Row-by-row generation of weighted-mediant trees.
//!
//! A tree is determined by two starting fractions `lo < hi`, a weight `k`,
//! and a reduction scheme. Row 0 is `[lo, hi]`; every later row copies the
//! previous row and inserts the `k - 1` weighted mediants between each
//! consecutive pair, each divided by whatever divisor the scheme picks.
//! Entries already emitted are never touched again.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::rational::{Fraction, FractionError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("starting terms must be strictly increasing")]
    UnorderedEndpoints,
    #[error("at most one starting term may be infinite")]
    BothEndpointsInfinite,
    #[error("weight must be at least 2")]
    WeightTooSmall,
    #[error("invalid reduction divisor {divisor} for {mediant} at depth {depth}, position {position}")]
    InvalidDivisor {
        divisor: BigInt,
        mediant: Fraction,
        depth: usize,
        position: BigUint,
    },
    #[error("cannot parse {0:?} as a reduction scheme: expected uniform, none, from-row:<n> or coin:<seed>")]
    SchemeParse(String),
    #[error(transparent)]
    Fraction(#[from] FractionError),
}

/// Decides, per inserted mediant, what divisor to strip from it. Schemes
/// see the child row's depth, the mediant's position in that row (0-based,
/// counting copied entries too), and the unreduced mediant itself. The
/// returned divisor must divide both components; the engine rejects
/// anything else.
#[derive(Clone)]
pub enum ReductionScheme {
    /// Always reduce to lowest terms.
    Uniform,
    /// Never reduce.
    NoReduction,
    /// Reduce to lowest terms from the given row depth on, not before.
    FromRow(usize),
    /// Reduce fully or not at all on a deterministic per-position coin.
    Coin(u64),
    /// Arbitrary positional rule. Must be pure: the same
    /// (depth, position, fraction) must always yield the same divisor.
    Custom(Arc<dyn Fn(usize, &BigUint, &Fraction) -> BigInt + Send + Sync>),
}

impl ReductionScheme {
    pub fn uniform() -> Self {
        ReductionScheme::Uniform
    }

    pub fn none() -> Self {
        ReductionScheme::NoReduction
    }

    pub fn from_row(depth: usize) -> Self {
        ReductionScheme::FromRow(depth)
    }

    pub fn coin(seed: u64) -> Self {
        ReductionScheme::Coin(seed)
    }

    pub fn custom(
        rule: impl Fn(usize, &BigUint, &Fraction) -> BigInt + Send + Sync + 'static,
    ) -> Self {
        ReductionScheme::Custom(Arc::new(rule))
    }

    pub fn divisor(&self, depth: usize, position: &BigUint, unreduced: &Fraction) -> BigInt {
        let full = || unreduced.num().gcd(unreduced.den());
        match self {
            ReductionScheme::Uniform => full(),
            ReductionScheme::NoReduction => BigInt::one(),
            ReductionScheme::FromRow(n) => {
                if depth >= *n {
                    full()
                } else {
                    BigInt::one()
                }
            }
            ReductionScheme::Coin(seed) => {
                if coin_bit(*seed, depth, position) {
                    full()
                } else {
                    BigInt::one()
                }
            }
            ReductionScheme::Custom(rule) => rule(depth, position, unreduced),
        }
    }
}

impl fmt::Display for ReductionScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionScheme::Uniform => write!(f, "uniform"),
            ReductionScheme::NoReduction => write!(f, "none"),
            ReductionScheme::FromRow(n) => write!(f, "from-row:{n}"),
            ReductionScheme::Coin(seed) => write!(f, "coin:{seed}"),
            ReductionScheme::Custom(_) => write!(f, "custom"),
        }
    }
}

impl fmt::Debug for ReductionScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for ReductionScheme {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || TreeError::SchemeParse(s.to_string());
        match s {
            "uniform" => Ok(ReductionScheme::Uniform),
            "none" => Ok(ReductionScheme::NoReduction),
            _ => {
                if let Some(n) = s.strip_prefix("from-row:") {
                    Ok(ReductionScheme::FromRow(n.parse().map_err(|_| err())?))
                } else if let Some(seed) = s.strip_prefix("coin:") {
                    Ok(ReductionScheme::Coin(seed.parse().map_err(|_| err())?))
                } else {
                    Err(err())
                }
            }
        }
    }
}

/// SplitMix64 finalizer; the stable bit mixer behind `coin` schemes and
/// the test-suite sampling.
pub(crate) fn mix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

fn coin_bit(seed: u64, depth: usize, position: &BigUint) -> bool {
    let mut h = mix64(seed ^ 0x5bd1e995);
    h = mix64(h ^ depth as u64);
    for digit in position.iter_u64_digits() {
        h = mix64(h ^ digit);
    }
    mix64(h) & 1 == 1
}

/// One generated row: its depth and its entries, left to right.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    depth: usize,
    entries: Vec<Fraction>,
}

impl Row {
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn entries(&self) -> &[Fraction] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn into_entries(self) -> Vec<Fraction> {
        self.entries
    }
}

/// A tree description: endpoints, weight, reduction scheme.
#[derive(Debug, Clone)]
pub struct TreeSpec {
    lo: Fraction,
    hi: Fraction,
    k: u32,
    scheme: ReductionScheme,
}

impl TreeSpec {
    pub fn new(
        lo: Fraction,
        hi: Fraction,
        k: u32,
        scheme: ReductionScheme,
    ) -> Result<Self, TreeError> {
        if k < 2 {
            return Err(TreeError::WeightTooSmall);
        }
        match lo.compare(&hi) {
            Ok(std::cmp::Ordering::Less) => Ok(TreeSpec { lo, hi, k, scheme }),
            Ok(_) => Err(TreeError::UnorderedEndpoints),
            Err(FractionError::IncomparableInfinities) => Err(TreeError::BothEndpointsInfinite),
            Err(e) => Err(e.into()),
        }
    }

    /// The standard tree on `[0/1, 1/1]` with weight 3.
    pub fn unit(scheme: ReductionScheme) -> Self {
        let lo = Fraction::new(0, 1).unwrap();
        let hi = Fraction::new(1, 1).unwrap();
        TreeSpec::new(lo, hi, 3, scheme).unwrap()
    }

    pub fn lo(&self) -> &Fraction {
        &self.lo
    }

    pub fn hi(&self) -> &Fraction {
        &self.hi
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn scheme(&self) -> &ReductionScheme {
        &self.scheme
    }

    pub fn row_zero(&self) -> Row {
        Row {
            depth: 0,
            entries: vec![self.lo.clone(), self.hi.clone()],
        }
    }

    /// Iterator over rows 0 through `max_depth` inclusive.
    pub fn rows(&self, max_depth: usize) -> Rows<'_> {
        generate(self, max_depth)
    }

    /// Just the row at `depth`, generating everything above it on the way.
    pub fn row(&self, depth: usize) -> Result<Row, TreeError> {
        self.rows(depth)
            .last()
            .expect("row iterator yields at least row zero")
    }
}

impl fmt::Display for TreeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 3 {
            write!(f, "SB({}, {}, {})", self.lo, self.hi, self.scheme)
        } else {
            write!(f, "SB({}, {}, k={}, {})", self.lo, self.hi, self.k, self.scheme)
        }
    }
}

/// The `k - 1` weighted mediants strictly between `f` and `g`, unreduced:
/// the j-th is `((k-j)*f.num + j*g.num) / ((k-j)*f.den + j*g.den)`.
pub fn weighted_mediants(f: &Fraction, g: &Fraction, k: u32) -> Vec<Fraction> {
    assert!(k >= 2, "weight must be at least 2");
    (1..k)
        .map(|j| {
            let wf = BigInt::from(k - j);
            let wg = BigInt::from(j);
            Fraction::new_unchecked(
                &wf * f.num() + &wg * g.num(),
                &wf * f.den() + &wg * g.den(),
            )
        })
        .collect()
}

/// `(2*f + g) / 3`-weighted mediant: the left of the two weight-3 mediants.
pub fn left_mediant(f: &Fraction, g: &Fraction) -> Fraction {
    Fraction::new_unchecked(
        f.num() * 2 + g.num(),
        f.den() * 2 + g.den(),
    )
}

/// The right of the two weight-3 mediants.
pub fn right_mediant(f: &Fraction, g: &Fraction) -> Fraction {
    Fraction::new_unchecked(
        f.num() + g.num() * 2,
        f.den() + g.den() * 2,
    )
}

/// The classical mediant `(f.num + g.num) / (f.den + g.den)`.
pub fn ordinary_mediant(f: &Fraction, g: &Fraction) -> Fraction {
    Fraction::new_unchecked(f.num() + g.num(), f.den() + g.den())
}

/// Builds the child row: copies every entry of `prev` and inserts the
/// scheme-reduced weighted mediants between each consecutive pair.
pub fn next_row(prev: &Row, spec: &TreeSpec) -> Result<Row, TreeError> {
    let k = spec.k as usize;
    let child_depth = prev.depth + 1;
    let mut entries = Vec::with_capacity((prev.entries.len() - 1) * k + 1);
    for (i, pair) in prev.entries.windows(2).enumerate() {
        entries.push(pair[0].clone());
        for (offset, mediant) in weighted_mediants(&pair[0], &pair[1], spec.k)
            .into_iter()
            .enumerate()
        {
            let position = BigUint::from(k * i + offset + 1);
            let divisor = spec.scheme.divisor(child_depth, &position, &mediant);
            entries.push(apply_divisor(mediant, divisor, child_depth, position)?);
        }
    }
    entries.push(prev.entries.last().expect("rows are never empty").clone());
    Ok(Row {
        depth: child_depth,
        entries,
    })
}

pub(crate) fn apply_divisor(
    mediant: Fraction,
    divisor: BigInt,
    depth: usize,
    position: BigUint,
) -> Result<Fraction, TreeError> {
    if divisor.is_one() {
        return Ok(mediant);
    }
    let invalid = |mediant: Fraction, divisor: BigInt| TreeError::InvalidDivisor {
        divisor,
        mediant,
        depth,
        position: position.clone(),
    };
    if !divisor.is_positive() {
        return Err(invalid(mediant, divisor));
    }
    if !(mediant.num() % &divisor).is_zero() || !(mediant.den() % &divisor).is_zero() {
        return Err(invalid(mediant, divisor));
    }
    Ok(Fraction::new_unchecked(
        mediant.num() / &divisor,
        mediant.den() / &divisor,
    ))
}

/// Streams rows 0 through `max_depth` inclusive. Only the row being
/// yielded and its successor are ever held in memory.
pub fn generate(spec: &TreeSpec, max_depth: usize) -> Rows<'_> {
    Rows {
        spec,
        max_depth,
        current: Some(spec.row_zero()),
        error: None,
    }
}

pub struct Rows<'a> {
    spec: &'a TreeSpec,
    max_depth: usize,
    current: Option<Row>,
    error: Option<TreeError>,
}

impl Iterator for Rows<'_> {
    type Item = Result<Row, TreeError>;

    fn next(&mut self) -> Option<Self::Item> {
        if let Some(err) = self.error.take() {
            return Some(Err(err));
        }
        let row = self.current.take()?;
        if row.depth < self.max_depth {
            match next_row(&row, self.spec) {
                Ok(next) => self.current = Some(next),
                Err(e) => self.error = Some(e),
            }
        }
        Some(Ok(row))
    }
}
