//! Robust Gray codes for the binary symmetric channel.
//!
//! The construction concatenates a Reed-Solomon outer code with a small
//! binary inner code, orders the codewords with the binary reflected code,
//! pads them with parity buffers and a row-index header, and walks between
//! consecutive codewords one bit at a time. The result is a Gray code whose
//! noisy encodings decode to an index close to the original.
//!
//! ```
//! use robust_gray::{CodeParams, RobustGrayCode};
//!
//! let params = CodeParams {
//!     p: 0.05, field_width: 3, k: 2, inner_n: 6,
//!     buffer: 5, rho: 3, beta: 0.1, xi: 0.5,
//! };
//! let code = RobustGrayCode::with_seeded_inner(params, 64, 7).unwrap();
//! let word = code.encode(42).unwrap();
//! assert_eq!(code.decode(&word).unwrap().j_hat, 42);
//! ```

pub mod bits;
pub mod brc;
pub mod channel;
pub mod cli;
pub mod concat;
pub mod config;
pub mod error;
pub mod gf2m;
pub mod report;
pub mod rng;
pub mod robust_gray;
pub mod rs;
pub mod small_codes;

pub use error::{Error, Result};
pub use gf2m::{Field, FieldElement};
pub use robust_gray::{Branch, CodeParams, Decoded, RobustGrayCode};
pub use small_codes::InnerCode;
