use serde::{Deserialize, Serialize};

use super::RobustGrayCode;
use crate::bits;
use crate::error::{Error, Result};
use crate::gf2m::FieldElement;
use crate::small_codes::{majority, unary_decode, unary_distance, UnaryVariant};

/// Which estimator produced the answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// Crossover estimate strictly inside `(βn, n - βn)`.
    Middle,
    Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decoded {
    pub j_hat: u64,
    pub branch: Branch,
    /// The chunk-level crossover estimate `ℓ̂ ∈ [0, n + 1]`.
    pub chunk_estimate: usize,
}

impl RobustGrayCode {
    /// Decode a received word to an index estimate.
    ///
    /// Outer-code failures surface as [`Error::DecodeFailure`] and corrupt
    /// headers as [`Error::HeaderFailure`]; no fallback guess is made.
    pub fn decode(&self, x: &[bool]) -> Result<Decoded> {
        if x.len() != self.len() {
            return Err(Error::Length {
                expected: self.len(),
                actual: x.len(),
            });
        }
        let n = self.layout.n;
        let view = self.layout.view(x);

        let s_hat: Vec<bool> = (1..=n + 1).map(|m| majority(view.buffer(m))).collect();
        let l1 = unary_decode(&s_hat, UnaryVariant::Plain);
        let l2 = unary_decode(&s_hat, UnaryVariant::Complement);
        let chunk_estimate = if unary_distance(&s_hat, l1, UnaryVariant::Plain)
            < unary_distance(&s_hat, l2, UnaryVariant::Complement)
        {
            l1
        } else {
            l2
        };

        let inner = self.base.inner();
        let sigma: Vec<FieldElement> = (1..=n)
            .map(|m| FieldElement(inner.decode(view.payload(m))))
            .collect();

        let beta_n = self.params.beta * n as f64;
        let l = chunk_estimate as f64;
        if l > beta_n && l < n as f64 - beta_n {
            let j_hat = self.get_est(x, sigma, chunk_estimate)?;
            Ok(Decoded {
                j_hat,
                branch: Branch::Middle,
                chunk_estimate,
            })
        } else {
            let j_hat = self.boundary_get_est(x, sigma, chunk_estimate)?;
            Ok(Decoded {
                j_hat,
                branch: Branch::Boundary,
                chunk_estimate,
            })
        }
    }

    fn clamp(&self, j: i128) -> u64 {
        j.clamp(0, self.total as i128 - 1) as u64
    }

    fn outer_index(&self, received: &[Option<FieldElement>]) -> Result<u64> {
        let message = self.base.outer().decode(received)?;
        Ok(self.base.index_of(&message))
    }

    /// Estimate when the crossover chunk is away from both ends.
    fn get_est(&self, x: &[bool], sigma: Vec<FieldElement>, l_hat: usize) -> Result<u64> {
        let c = self.params.window() as isize;
        let start = l_hat as isize - c;
        let end = l_hat as isize + c;

        let view = self.layout.view(x);
        let z_hat = self
            .header
            .decode(view.header())
            .map_err(|_| Error::HeaderFailure)? as usize;
        let row = self.base.symbol_row(z_hat);

        // Chunks before the window still carry c_{i+1}; translate them back to c_i.
        let received: Vec<Option<FieldElement>> = sigma
            .iter()
            .enumerate()
            .map(|(idx, &s)| {
                let m = idx as isize + 1;
                if m < start {
                    Some(s + row[idx])
                } else if m <= end {
                    None
                } else {
                    Some(s)
                }
            })
            .collect();
        let i_hat = self.outer_index(&received)?;
        let r = self.compr_wide(i_hat) as i128;
        if i_hat + 1 >= self.base.size() {
            return Ok(self.clamp(r));
        }
        let w = self.make_w(i_hat)?;
        let next = self.make_w(i_hat + 1)?;
        let h = Self::differing_positions(&w, &next);
        let y: Vec<bool> = h.iter().map(|&pos| x[pos] ^ w[pos]).collect();
        let offset = unary_decode(&y, UnaryVariant::Plain) as i128;
        Ok(self.clamp(r + offset))
    }

    /// Estimate when the crossover chunk is near either end; the window wraps
    /// around and both neighbouring intervals are tried.
    fn boundary_get_est(&self, x: &[bool], sigma: Vec<FieldElement>, l_hat: usize) -> Result<u64> {
        let n = self.layout.n as isize;
        let c = self.params.window() as isize;
        let l = l_hat as isize;
        let (end, start) = if l_hat as f64 <= self.params.beta * n as f64 {
            (l + c, n + 1 + l - c)
        } else {
            (l + c - (n + 1), l - c)
        };
        let received: Vec<Option<FieldElement>> = sigma
            .iter()
            .enumerate()
            .map(|(idx, &s)| {
                let m = idx as isize + 1;
                (m > end && m < start).then_some(s)
            })
            .collect();
        let i_hat = self.outer_index(&received)?;
        let r = self.compr_wide(i_hat) as i128;
        let w = self.make_w(i_hat)?;
        let span = 2 * c as usize * (self.params.inner_n + self.params.buffer);

        // Crossover early in the interval starting at w_î.
        let early = if i_hat + 1 < self.base.size() {
            let next = self.make_w(i_hat + 1)?;
            let limit = self.layout.header + span;
            let h: Vec<usize> = Self::differing_positions(&w, &next)
                .into_iter()
                .take_while(|&pos| pos < limit)
                .collect();
            let y: Vec<bool> = h.iter().map(|&pos| x[pos] ^ w[pos]).collect();
            Some(self.clamp(r + unary_decode(&y, UnaryVariant::Plain) as i128))
        } else {
            None
        };

        // Crossover late in the interval ending at w_î.
        let late = if i_hat > 0 {
            let prev = self.make_w(i_hat - 1)?;
            let limit = self.len().saturating_sub(span);
            let h: Vec<usize> = Self::differing_positions(&w, &prev)
                .into_iter()
                .filter(|&pos| pos >= limit)
                .collect();
            let y: Vec<bool> = h.iter().map(|&pos| x[pos] ^ w[pos]).collect();
            // y should look like 0^a 1^b, the b trailing ones being the
            // positions not yet flipped from w_{î-1}.
            let unflipped = h.len() - unary_decode(&y, UnaryVariant::Complement);
            Some(self.clamp(r - unflipped as i128))
        } else {
            None
        };

        match (early, late) {
            (Some(a), Some(b)) if a != b => {
                let da = bits::hamming(x, &self.encode(a)?);
                let db = bits::hamming(x, &self.encode(b)?);
                Ok(if db < da { b } else { a })
            }
            (Some(a), _) => Ok(a),
            (None, Some(b)) => Ok(b),
            (None, None) => unreachable!("q^k >= 4, so some neighbour exists"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::small_code;
    use super::*;
    use crate::small_codes::unary_encode;

    #[test]
    fn noiseless_round_trip_exhaustive() {
        let code = small_code();
        let mut branches = [0usize; 2];
        for j in 0..code.size() {
            let g = code.encode(j).unwrap();
            let d = code.decode(&g).unwrap();
            assert_eq!(d.j_hat, j, "j={j} branch={:?} l={}", d.branch, d.chunk_estimate);
            branches[(d.branch == Branch::Boundary) as usize] += 1;
        }
        assert!(branches[0] > 0 && branches[1] > 0);
    }

    #[test]
    fn interval_starts_decode_exactly() {
        let code = small_code();
        for i in 0..code.intermediate_size() - 1 {
            let w = code.make_w(i).unwrap();
            assert_eq!(code.decode(&w).unwrap().j_hat, code.compr(i).unwrap());
        }
    }

    #[test]
    fn single_payload_flip_is_corrected() {
        // The [6,3] inner code has distance 3, so one flip in a payload is absorbed.
        let code = small_code();
        assert_eq!(code.base().inner().min_distance(), 3);
        for i in 0..code.intermediate_size() - 1 {
            let r = code.compr(i).unwrap();
            let g = code.encode(r).unwrap();
            for m in 1..=code.layout().n {
                for pos in code.layout().payload_range(m) {
                    let mut x = g.clone();
                    x[pos] ^= true;
                    assert_eq!(code.decode(&x).unwrap().j_hat, r, "i={i} pos={pos}");
                }
            }
        }
    }

    #[test]
    fn crossover_in_header_or_last_buffer() {
        let code = small_code();
        let lay = *code.layout();
        let (mut in_header, mut in_last) = (0, 0);
        for j in 0..code.size() {
            let Some(h) = code.crossover(j).unwrap() else { continue };
            let chunk = lay.chunk_of(h);
            if chunk == 0 || chunk == lay.n + 1 {
                let d = code.decode(&code.encode(j).unwrap()).unwrap();
                assert_eq!(d.j_hat, j);
                assert_eq!(d.branch, Branch::Boundary);
                if chunk == 0 {
                    in_header += 1;
                } else {
                    in_last += 1;
                }
            }
        }
        assert!(in_header > 0 && in_last > 0);
    }

    #[test]
    fn offset_reads_as_unary_on_differing_positions() {
        let code = small_code();
        for j in 0..code.size() {
            let loc = code.locate(j).unwrap();
            let w = code.make_w(loc.interval).unwrap();
            let next = code.make_w(loc.interval + 1).unwrap();
            let g = code.encode(j).unwrap();
            let h = RobustGrayCode::differing_positions(&w, &next);
            let y: Vec<bool> = h.iter().map(|&p| g[p] ^ w[p]).collect();
            assert_eq!(y, unary_encode(loc.offset as usize, h.len(), UnaryVariant::Plain));
        }
    }

    #[test]
    fn at_most_one_broken_chunk() {
        let code = small_code();
        for j in 0..code.size() {
            let loc = code.locate(j).unwrap();
            let g = code.encode(j).unwrap();
            let w = code.make_w(loc.interval).unwrap();
            let next = code.make_w(loc.interval + 1).unwrap();
            let (gv, wv, nv) = (code.layout().view(&g), code.layout().view(&w), code.layout().view(&next));
            let broken = gv
                .chunks()
                .iter()
                .zip(wv.chunks())
                .zip(nv.chunks())
                .filter(|((c, a), b)| **c != *a && **c != *b)
                .count();
            assert!(broken <= 1, "j={j}");
        }
    }

    #[test]
    fn wrong_length_is_rejected() {
        let code = small_code();
        assert!(matches!(code.decode(&[false; 3]), Err(Error::Length { .. })));
    }
}
