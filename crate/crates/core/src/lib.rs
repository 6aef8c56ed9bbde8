//! Weighted-mediant generalizations of the Stern-Brocot construction.
//!
//! Starting from two fractions `lo < hi`, each row inserts `k - 1`
//! weighted mediants between consecutive entries, optionally reduced by a
//! pluggable positional scheme. The crate generates such trees exactly,
//! decides which rationals can ever appear in one, locates entries by
//! interval descent, and machine-checks the structural laws the
//! construction obeys.

pub mod analysis;
pub mod rational;
pub mod tree;
pub mod verifier;

pub use analysis::{
    describe_tree, is_member, locate, modulus_trace, AnalysisError, LocateResult,
    MembershipVerdict,
};
pub use rational::{modulus, nu2, Fraction, FractionError, ParityClass, Valuation};
pub use tree::{
    generate, left_mediant, next_row, ordinary_mediant, right_mediant, weighted_mediants,
    ReductionScheme, Row, Rows, TreeError, TreeSpec,
};
pub use verifier::{
    check_2adic_lemma, check_membership_theorem, check_one_third, check_parity_lemma,
    check_reduction_divisor, check_unavoidable_reduction, default_suite, CheckFailure,
    CheckReport,
};
