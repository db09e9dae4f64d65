//! Auxiliary codes: unary and complementary unary, majority vote, the
//! repetition map for the row-index header, and the inner binary linear code.

mod inner;
mod repetition;
mod unary;

pub use inner::{estimate_pfail, InnerCode, PfailEstimate};
pub use repetition::RepetitionParams;
pub use unary::{unary_decode, unary_distance, unary_encode, UnaryVariant};

/// Majority bit of an odd-length slice. Ties (even lengths) resolve to 0.
pub fn majority(s: &[bool]) -> bool {
    2 * crate::bits::weight(s) > s.len()
}
