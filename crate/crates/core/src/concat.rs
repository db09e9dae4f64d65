//! The concatenated base code `C_out ∘ C_in`, ordered by the binary reflected code.
//!
//! Index `i` maps to the outer message read off `R_{kk'}(i)`: block `b` is
//! the `k'` bits starting at coordinate `b·k'`, least significant first.
//! Generator row `z = b·k' + t` is therefore the encoding of the message
//! holding `x^t` in block `b` and zero elsewhere, and consecutive codewords
//! differ by exactly the row named by the BRC flip index.

use crate::bits;
use crate::brc;
use crate::error::{Error, Result};
use crate::gf2m::FieldElement;
use crate::rs::OuterCode;
use crate::small_codes::InnerCode;

#[derive(Debug, Clone)]
pub struct BaseCodebook {
    outer: OuterCode,
    inner: InnerCode,
    symbol_rows: Vec<Vec<FieldElement>>,
    row_weights: Vec<usize>,
}

impl BaseCodebook {
    pub fn new(outer: OuterCode, inner: InnerCode) -> Result<Self> {
        let kp = outer.field().width() as usize;
        if inner.dim() != kp {
            return Err(Error::Params(format!(
                "inner dimension {} must equal the field width {kp}",
                inner.dim()
            )));
        }
        let rows = outer.dim() * kp;
        if rows as u32 > brc::MAX_WIDTH - 1 {
            return Err(Error::Params(format!("k*k' = {rows} too large for 64-bit indices")));
        }
        let mut symbol_rows = Vec::with_capacity(rows);
        for z in 0..rows {
            let mut message = vec![FieldElement::ZERO; outer.dim()];
            message[z / kp] = FieldElement(1 << (z % kp));
            symbol_rows.push(outer.encode(&message)?);
        }
        let row_weights = symbol_rows
            .iter()
            .map(|sym| sym.iter().map(|s| inner.encode_mask(s.0).count_ones() as usize).sum())
            .collect();
        Ok(BaseCodebook {
            outer,
            inner,
            symbol_rows,
            row_weights,
        })
    }

    pub fn outer(&self) -> &OuterCode {
        &self.outer
    }

    pub fn inner(&self) -> &InnerCode {
        &self.inner
    }

    /// `k * k'`, the number of generator rows.
    pub fn rows(&self) -> usize {
        self.symbol_rows.len()
    }

    /// `q^k = 2^(kk')`, the number of codewords.
    pub fn size(&self) -> u64 {
        1 << self.rows()
    }

    /// Bit length `n * n'`.
    pub fn bit_len(&self) -> usize {
        self.outer.len() * self.inner.len()
    }

    pub fn row_weight(&self, z: usize) -> usize {
        self.row_weights[z]
    }

    pub fn row_weights(&self) -> &[usize] {
        &self.row_weights
    }

    fn check_index(&self, i: u64) -> Result<()> {
        if i >= self.size() {
            return Err(Error::OutOfRange {
                what: "codeword index",
                value: i,
                bound: self.size(),
            });
        }
        Ok(())
    }

    /// Bit and symbol views of generator row `a_z`.
    pub fn row(&self, z: usize) -> Result<(Vec<bool>, &[FieldElement])> {
        let sym = self.symbol_rows.get(z).ok_or(Error::OutOfRange {
            what: "generator row",
            value: z as u64,
            bound: self.rows() as u64,
        })?;
        Ok((self.inner_encode_all(sym), sym))
    }

    pub fn symbol_row(&self, z: usize) -> &[FieldElement] {
        &self.symbol_rows[z]
    }

    /// Outer message for ordering index `i`.
    pub fn message(&self, i: u64) -> Vec<FieldElement> {
        let g = brc::encode_word(i);
        let kp = self.outer.field().width() as usize;
        let mask = (1u64 << kp) - 1;
        (0..self.outer.dim())
            .map(|b| FieldElement((g >> (b * kp) & mask) as u16))
            .collect()
    }

    /// Ordering index of an outer message (inverse of [`message`](Self::message)).
    pub fn index_of(&self, message: &[FieldElement]) -> u64 {
        let kp = self.outer.field().width() as usize;
        let g = message
            .iter()
            .enumerate()
            .fold(0u64, |acc, (b, s)| acc | (s.0 as u64) << (b * kp));
        brc::decode_word(g)
    }

    /// `σ_i`, the `i`-th outer codeword.
    pub fn outer_codeword(&self, i: u64) -> Result<Vec<FieldElement>> {
        self.check_index(i)?;
        self.outer.encode(&self.message(i))
    }

    fn inner_encode_all(&self, sigma: &[FieldElement]) -> Vec<bool> {
        let np = self.inner.len();
        let mut out = Vec::with_capacity(sigma.len() * np);
        for s in sigma {
            out.extend(bits::from_u64(self.inner.encode_mask(s.0), np));
        }
        out
    }

    /// `(c_i, σ_i)`.
    pub fn encode(&self, i: u64) -> Result<(Vec<bool>, Vec<FieldElement>)> {
        let sigma = self.outer_codeword(i)?;
        Ok((self.inner_encode_all(&sigma), sigma))
    }

    /// `c_i` computed as the XOR of the rows selected by `R_{kk'}(i)`.
    pub fn encode_by_rows(&self, i: u64) -> Result<Vec<bool>> {
        self.check_index(i)?;
        let g = brc::encode_word(i);
        let mut acc = vec![false; self.bit_len()];
        for z in 0..self.rows() {
            if g >> z & 1 == 1 {
                bits::xor_into(&mut acc, &self.row(z)?.0);
            }
        }
        Ok(acc)
    }
}
