//! The binary reflected code R_k, its inverse, and its bit-flip sequence.
//!
//! Coordinate 0 is the one that flips on every odd step, so `R_k(i)[t]` is
//! bit `t` of `i ^ (i >> 1)`.

use crate::bits;
use crate::error::{Error, Result};

/// Largest supported width; indices are held in a `u64`.
pub const MAX_WIDTH: u32 = 63;

fn check(i: u64, k: u32) -> Result<()> {
    if k == 0 || k > MAX_WIDTH {
        return Err(Error::Params(format!("BRC width {k} out of range 1..={MAX_WIDTH}")));
    }
    if i >> k != 0 {
        return Err(Error::OutOfRange {
            what: "BRC index",
            value: i,
            bound: 1 << k,
        });
    }
    Ok(())
}

/// `R_k(i)` packed into an integer, coordinate `t` at bit `t`.
#[inline]
pub fn encode_word(i: u64) -> u64 {
    i ^ (i >> 1)
}

/// Inverse of [`encode_word`]: bit `t` of the index is the XOR of codeword bits `t..`.
#[inline]
pub fn decode_word(g: u64) -> u64 {
    let mut i = g;
    let mut shift = 1;
    while shift < 64 {
        i ^= i >> shift;
        shift <<= 1;
    }
    i
}

pub fn brc_encode(i: u64, k: u32) -> Result<Vec<bool>> {
    check(i, k)?;
    Ok(bits::from_u64(encode_word(i), k as usize))
}

pub fn brc_decode(g: &[bool]) -> u64 {
    decode_word(bits::to_u64(g))
}

/// `z_i`: the coordinate where `R_k(i-1)` and `R_k(i)` differ.
pub fn flip_index(i: u64, k: u32) -> Result<u32> {
    check(i, k)?;
    if i == 0 {
        return Err(Error::OutOfRange {
            what: "flip index (needs i >= 1)",
            value: 0,
            bound: 1 << k,
        });
    }
    Ok(i.trailing_zeros())
}

/// `N_k(z, i) = floor((i + 2^z) / 2^(z+1))`, the number of `t` in `1..=i` with `z_t = z`.
pub fn flip_count(z: u32, i: u64) -> u64 {
    if z >= 64 {
        return 0;
    }
    let x = i >> z;
    x / 2 + (x & 1)
}
