//! Which rationals appear in a weight-3 tree, and where.
//!
//! Membership in `SB(lo, hi, R)` does not depend on the reduction scheme:
//! a reduced fraction `x/y` between the starting terms appears iff its
//! parity class matches an endpoint's and the 2-adic valuations of its two
//! cross-determinants against the endpoints straddle the endpoints' own
//! valuation in exactly the right way. [`is_member`] decides that test
//! directly; [`locate`] instead walks the interval descent and produces
//! either coordinates or a certificate of exclusion.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use std::cmp::Ordering;

use crate::rational::{modulus, nu2, Fraction, FractionError, ParityClass, Valuation};
use crate::tree::{self, ordinary_mediant, TreeError, TreeSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("classification undefined for even/even starts")]
    EvenEvenStart,
    #[error("target {x} lies outside [{lo}, {hi}]")]
    OutOfRange {
        x: Fraction,
        lo: Fraction,
        hi: Fraction,
    },
    #[error("interval descent requires weight 3, got {0}")]
    UnsupportedWeight(u32),
    #[error(transparent)]
    Fraction(#[from] FractionError),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// The verdict of the appearance test, with every quantity it was decided
/// on: the two endpoint valuations of the (normalized) target, the
/// endpoints' own valuation, and the parity class the target matched.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MembershipVerdict {
    pub is_member: bool,
    pub parity_ok: bool,
    pub valuation_ok: bool,
    pub matched_class: Option<ParityClass>,
    pub nu_lo_target: Valuation,
    pub nu_target_hi: Valuation,
    pub nu_endpoints: Valuation,
    /// The lowest-terms representation the conditions were evaluated on.
    pub target: Fraction,
}

fn ensure_ordered(lo: &Fraction, hi: &Fraction) -> Result<(), AnalysisError> {
    match lo.compare(hi) {
        Ok(Ordering::Less) => Ok(()),
        Ok(_) => Err(TreeError::UnorderedEndpoints.into()),
        Err(e) => Err(e.into()),
    }
}

fn ensure_classifiable(lo: &Fraction, hi: &Fraction) -> Result<(), AnalysisError> {
    if lo.parity_class().is_degenerate() || hi.parity_class().is_degenerate() {
        return Err(AnalysisError::EvenEvenStart);
    }
    Ok(())
}

fn ensure_in_range(lo: &Fraction, hi: &Fraction, x: &Fraction) -> Result<(), AnalysisError> {
    let out = || AnalysisError::OutOfRange {
        x: x.clone(),
        lo: lo.clone(),
        hi: hi.clone(),
    };
    if lo.compare(x)? == Ordering::Greater || x.compare(hi)? == Ordering::Greater {
        return Err(out());
    }
    Ok(())
}

/// Decides whether the number `x` ever appears in `SB(lo, hi, R)` for any
/// reduction scheme `R`. `x` is normalized to lowest terms first; the
/// endpoint representations are used as given.
pub fn is_member(
    lo: &Fraction,
    hi: &Fraction,
    x: &Fraction,
) -> Result<MembershipVerdict, AnalysisError> {
    ensure_ordered(lo, hi)?;
    ensure_classifiable(lo, hi)?;
    ensure_in_range(lo, hi, x)?;

    let target = x.reduce_fully();
    let class = target.parity_class();
    let lo_class = lo.parity_class();
    let hi_class = hi.parity_class();
    let matched_class = if class == lo_class {
        Some(lo_class)
    } else if class == hi_class {
        Some(hi_class)
    } else {
        None
    };

    let nu_lo_target = nu2(&lo.cross_determinant(&target));
    let nu_target_hi = nu2(&target.cross_determinant(hi));
    let nu_endpoints = nu2(&lo.cross_determinant(hi));
    let min = nu_lo_target.min(nu_target_hi);
    let max = nu_lo_target.max(nu_target_hi);
    let parity_ok = matched_class.is_some();
    let valuation_ok = min == nu_endpoints && nu_endpoints < max;

    Ok(MembershipVerdict {
        is_member: parity_ok && valuation_ok,
        parity_ok,
        valuation_ok,
        matched_class,
        nu_lo_target,
        nu_target_hi,
        nu_endpoints,
        target,
    })
}

fn serialize_biguint<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Where the interval descent for a target ended.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum LocateResult {
    /// The target is an entry: row `depth`, position `index` in that row.
    /// `path` lists the sub-interval (0, 1 or 2) taken at each step; the
    /// index equals the path read as base-3 digits, plus one when the
    /// target was reached as the right endpoint of the final interval.
    Found {
        depth: usize,
        #[serde(serialize_with = "serialize_biguint")]
        index: BigUint,
        path: Vec<u8>,
    },
    /// The target can never appear: it is the ordinary mediant of two
    /// entries that stay consecutive forever. `left` and `right` are those
    /// entries as represented in row `depth`.
    Excluded {
        depth: usize,
        left: Fraction,
        right: Fraction,
    },
    /// No verdict within the requested depth.
    DepthExceeded { depth: usize },
}

/// One step of state shared by [`locate`] and [`modulus_trace`]: the
/// descent visits the bracketing interval for each row in turn, applying
/// the tree's reduction scheme exactly as generation would.
fn descend(
    spec: &TreeSpec,
    x: &Fraction,
    max_depth: usize,
    mut visit: impl FnMut(&Fraction, &Fraction),
) -> Result<LocateResult, AnalysisError> {
    if spec.k() != 3 {
        return Err(AnalysisError::UnsupportedWeight(spec.k()));
    }
    ensure_classifiable(spec.lo(), spec.hi())?;
    ensure_in_range(spec.lo(), spec.hi(), x)?;

    let mut left = spec.lo().clone();
    let mut right = spec.hi().clone();
    let mut index = BigUint::zero(); // of `left` within the current row
    let mut path: Vec<u8> = Vec::new();
    let mut depth = 0usize;
    loop {
        visit(&left, &right);
        if x.value_eq(&left) {
            return Ok(LocateResult::Found { depth, index, path });
        }
        if x.value_eq(&right) {
            return Ok(LocateResult::Found {
                depth,
                index: index + 1u32,
                path,
            });
        }
        if x.value_eq(&ordinary_mediant(&left, &right)) {
            return Ok(LocateResult::Excluded { depth, left, right });
        }
        if depth == max_depth {
            return Ok(LocateResult::DepthExceeded { depth });
        }

        let child_depth = depth + 1;
        let base = index * 3u32;
        let reduced = |raw: Fraction, offset: u32| -> Result<Fraction, TreeError> {
            let position = &base + offset;
            let divisor = spec.scheme().divisor(child_depth, &position, &raw);
            tree::apply_divisor(raw, divisor, child_depth, position)
        };
        let lm = reduced(tree::left_mediant(&left, &right), 1)?;
        let rm = reduced(tree::right_mediant(&left, &right), 2)?;
        // Both mediants are finite, so these comparisons cannot fail. A
        // target equal to a mediant descends as the right endpoint of the
        // interval it closes, so the next visit reports it as found.
        let branch: u8 = if x.compare(&lm).expect("finite") != Ordering::Greater {
            0
        } else if x.compare(&rm).expect("finite") != Ordering::Greater {
            1
        } else {
            2
        };
        match branch {
            0 => right = lm,
            1 => {
                left = lm;
                right = rm;
            }
            _ => left = rm,
        }
        index = base + branch;
        path.push(branch);
        depth = child_depth;
    }
}

/// Runs the interval descent for `x` through rows of `spec`, stopping at
/// the first row where `x` is an entry of the bracketing pair, is its
/// ordinary mediant (and hence excluded for good), or where `max_depth`
/// is exhausted.
pub fn locate(
    spec: &TreeSpec,
    x: &Fraction,
    max_depth: usize,
) -> Result<LocateResult, AnalysisError> {
    descend(spec, x, max_depth, |_, _| {})
}

/// The modulus of `x` against each successive bracketing interval of the
/// descent, starting with `[lo, hi]` itself. The sequence never increases,
/// and it drops strictly whenever the descent takes a side interval.
pub fn modulus_trace(
    spec: &TreeSpec,
    x: &Fraction,
    max_depth: usize,
) -> Result<Vec<BigInt>, AnalysisError> {
    let mut trace = Vec::new();
    descend(spec, x, max_depth, |left, right| {
        trace.push(modulus(left, right, x));
    })?;
    Ok(trace)
}

/// `coeff_x * x + coeff_y * y` rendered the way a human would write it,
/// leading with the positive term.
fn linear_form(coeff_x: &BigInt, coeff_y: &BigInt) -> String {
    let term = |c: &BigInt, var: &str| -> Option<String> {
        if c.is_zero() {
            None
        } else if c.is_one() {
            Some(var.to_string())
        } else if (-c).is_one() {
            Some(format!("-{var}"))
        } else {
            Some(format!("{c}{var}"))
        }
    };
    let mut terms = [term(coeff_x, "x"), term(coeff_y, "y")];
    if coeff_x < &BigInt::zero() && coeff_y > &BigInt::zero() {
        terms.swap(0, 1);
    }
    match terms {
        [None, None] => "0".to_string(),
        [Some(a), None] | [None, Some(a)] => a,
        [Some(a), Some(b)] => {
            if let Some(rest) = b.strip_prefix('-') {
                format!("{a} - {rest}")
            } else {
                format!("{a} + {b}")
            }
        }
    }
}

/// Renders the appearance conditions for `SB(lo, hi)` concretely, with the
/// endpoint cross-determinant expanded into explicit divisibility
/// statements about `x` and `y`.
pub fn describe_tree(lo: &Fraction, hi: &Fraction) -> Result<String, AnalysisError> {
    ensure_ordered(lo, hi)?;
    ensure_classifiable(lo, hi)?;

    let c = lo.cross_determinant(hi);
    let v = match nu2(&c) {
        Valuation::Finite(v) => v,
        Valuation::Infinite => unreachable!("ordered endpoints have nonzero determinant"),
    };
    let power = BigInt::one() << v;
    let lo_class = lo.parity_class();
    let hi_class = hi.parity_class();
    // C(lo, x/y) and C(x/y, hi) as linear forms in x and y.
    let form_a = linear_form(lo.den(), &-lo.num());
    let form_b = linear_form(&-hi.den(), hi.num());

    let mut out = String::new();
    out.push_str(&format!("SB({lo}, {hi}), weight 3\n"));
    out.push_str(&format!(
        "endpoint cross-determinant: {c} (2-adic valuation {v})\n"
    ));
    out.push_str(&format!(
        "admitted parity classes: {lo_class} from {lo}, {hi_class} from {hi}\n"
    ));
    if lo_class == hi_class {
        out.push_str("  note: both endpoints admit the same class; conditions evaluated verbatim\n");
    }
    out.push_str(&format!(
        "a fraction x/y in lowest terms with {lo} <= x/y <= {hi} appears iff\n"
    ));
    out.push_str(&format!(
        "  (1) the parity class of (x, y) is an admitted class, and\n"
    ));
    out.push_str(&format!(
        "  (2) min(nu2({form_a}), nu2({form_b})) = {v} < max of the same pair\n"
    ));
    if v == 0 {
        out.push_str("given (1), condition (2) is automatic\n");
    } else {
        out.push_str(&format!(
            "given (1), condition (2) is equivalent to: {power} | {form_a} and {power} | {form_b}\n"
        ));
    }
    Ok(out)
}
