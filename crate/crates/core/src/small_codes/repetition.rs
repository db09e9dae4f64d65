use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The header map: the `bit_count`-bit binary expansion of a row index
/// (least significant bit first), each bit repeated `rho` times.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepetitionParams {
    /// Number of row indices, `k * k'`; encodable values are `0..rows`.
    pub rows: u64,
    pub bit_count: usize,
    pub rho: usize,
}

impl RepetitionParams {
    pub fn new(rows: u64, rho: usize) -> Result<Self> {
        if rows < 2 {
            return Err(Error::Params(format!("header needs at least 2 rows, got {rows}")));
        }
        if rho == 0 || rho % 2 == 0 {
            return Err(Error::Params(format!("rho must be odd and positive, got {rho}")));
        }
        let bit_count = (64 - (rows - 1).leading_zeros()) as usize;
        Ok(RepetitionParams {
            rows,
            bit_count,
            rho,
        })
    }

    /// Header length `L = rho * bit_count`.
    pub fn len(&self) -> usize {
        self.rho * self.bit_count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn encode(&self, z: u64) -> Result<Vec<bool>> {
        if z >= self.rows {
            return Err(Error::OutOfRange {
                what: "row index",
                value: z,
                bound: self.rows,
            });
        }
        let mut out = Vec::with_capacity(self.len());
        for t in 0..self.bit_count {
            out.extend(std::iter::repeat(z >> t & 1 == 1).take(self.rho));
        }
        Ok(out)
    }

    /// Per-block majority, reassembled without a range check.
    pub fn decode_raw(&self, x: &[bool]) -> u64 {
        x.chunks(self.rho)
            .take(self.bit_count)
            .enumerate()
            .fold(0, |acc, (t, block)| acc | (super::majority(block) as u64) << t)
    }

    /// As [`decode_raw`](Self::decode_raw), rejecting values `>= rows` as a corrupt header.
    pub fn decode(&self, x: &[bool]) -> Result<u64> {
        if x.len() != self.len() {
            return Err(Error::Length {
                expected: self.len(),
                actual: x.len(),
            });
        }
        let z = self.decode_raw(x);
        if z >= self.rows {
            return Err(Error::OutOfRange {
                what: "decoded header",
                value: z,
                bound: self.rows,
            });
        }
        Ok(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits;

    #[test]
    fn layout() {
        let p = RepetitionParams::new(6, 4 + 1).unwrap();
        assert_eq!(p.bit_count, 3);
        assert_eq!(p.len(), 15);
        assert!(RepetitionParams::new(6, 4).is_err());
        assert!(RepetitionParams::new(1, 3).is_err());
        assert_eq!(RepetitionParams::new(8, 1).unwrap().bit_count, 3);
        assert_eq!(RepetitionParams::new(9, 1).unwrap().bit_count, 4);
    }

    #[test]
    fn encode_expansion() {
        let p = RepetitionParams::new(6, 3).unwrap();
        assert_eq!(p.encode(0).unwrap(), vec![false; 9]);
        assert_eq!(bits::to_string(&p.encode(1).unwrap()), "111000000");
        assert!(p.encode(6).is_err());
        // Weight identity: ||rep(z)|| = rho * ||bin(z)||.
        for z in 0..6 {
            assert_eq!(bits::weight(&p.encode(z).unwrap()), 3 * z.count_ones() as usize);
        }
    }

    #[test]
    fn all_ones_header() {
        let p = RepetitionParams::new(6, 3).unwrap();
        assert_eq!(p.decode_raw(&[true; 9]), 7);
        assert!(p.decode(&[true; 9]).is_err());
        let p = RepetitionParams::new(8, 3).unwrap();
        assert_eq!(p.decode(&[true; 9]).unwrap(), 7);
    }

    #[test]
    fn corrects_minority_flips_per_block() {
        // Flip up to (rho-1)/2 bits of every block, at every placement.
        let p = RepetitionParams::new(12, 5).unwrap();
        for z in 0..12 {
            let clean = p.encode(z).unwrap();
            for mask in 0u32..32 {
                if mask.count_ones() > 2 {
                    continue;
                }
                let mut x = clean.clone();
                for block in 0..p.bit_count {
                    for t in 0..5 {
                        if mask >> t & 1 == 1 {
                            x[block * 5 + t] ^= true;
                        }
                    }
                }
                assert_eq!(p.decode(&x).unwrap(), z);
            }
        }
    }
}
