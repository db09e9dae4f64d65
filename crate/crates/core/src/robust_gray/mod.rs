//! The intermediate code W, the robust Gray code G, its encoder, and its decoder.
//!
//! A word of length `d = n'n + B(n+1) + L` is laid out as
//! `header ∘ s_1 ∘ c_1 ∘ s_2 ∘ … ∘ c_n ∘ s_{n+1}`: an `L`-bit repetition-coded
//! row index, then `n` inner codewords separated by `B`-bit parity buffers.
//! `w_i` carries the header of `z_i`, buffers of parity `i mod 2`, and the
//! inner codewords of `c_i`. Gray codeword `g_j` for `j ∈ [r_i, r_{i+1})`
//! is `w_i` with its first `j - r_i` positions that differ from `w_{i+1}`
//! already flipped.

mod decode;
mod params;

use std::ops::Range;

pub use decode::{Branch, Decoded};
pub use params::{CodeParams, Constraint, ConstraintReport};

use crate::bits;
use crate::brc;
use crate::concat::BaseCodebook;
use crate::error::{Error, Result};
use crate::gf2m::Field;
use crate::rs::OuterCode;
use crate::small_codes::{InnerCode, RepetitionParams};

/// Chunk geometry of a length-`d` word. Buffers are numbered `1..=n+1`,
/// payloads `1..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layout {
    pub header: usize,
    pub buffer: usize,
    pub payload: usize,
    pub n: usize,
}

impl Layout {
    pub fn len(&self) -> usize {
        self.header + self.n * self.payload + (self.n + 1) * self.buffer
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn header_range(&self) -> Range<usize> {
        0..self.header
    }

    pub fn buffer_range(&self, m: usize) -> Range<usize> {
        debug_assert!((1..=self.n + 1).contains(&m));
        let start = self.header + (m - 1) * (self.buffer + self.payload);
        start..start + self.buffer
    }

    pub fn payload_range(&self, m: usize) -> Range<usize> {
        debug_assert!((1..=self.n).contains(&m));
        let start = self.header + m * self.buffer + (m - 1) * self.payload;
        start..start + self.payload
    }

    /// Chunk index `ℓ` of a bit position: 0 for the header, `m` for
    /// `s_m ∘ c_m`, `n + 1` for the final buffer.
    pub fn chunk_of(&self, pos: usize) -> usize {
        if pos < self.header {
            0
        } else {
            ((pos - self.header) / (self.buffer + self.payload) + 1).min(self.n + 1)
        }
    }

    pub fn view<'a>(&self, word: &'a [bool]) -> ChunkView<'a> {
        assert_eq!(word.len(), self.len());
        ChunkView { word, layout: *self }
    }
}

/// A word split into header, buffers and payloads.
#[derive(Debug, Clone, Copy)]
pub struct ChunkView<'a> {
    word: &'a [bool],
    layout: Layout,
}

impl<'a> ChunkView<'a> {
    pub fn header(&self) -> &'a [bool] {
        &self.word[self.layout.header_range()]
    }

    pub fn buffer(&self, m: usize) -> &'a [bool] {
        &self.word[self.layout.buffer_range(m)]
    }

    pub fn payload(&self, m: usize) -> &'a [bool] {
        &self.word[self.layout.payload_range(m)]
    }

    /// All chunks in order: header, `s_1`, `c_1`, …, `c_n`, `s_{n+1}`.
    pub fn chunks(&self) -> Vec<&'a [bool]> {
        let mut out = vec![self.header()];
        for m in 1..=self.layout.n {
            out.push(self.buffer(m));
            out.push(self.payload(m));
        }
        out.push(self.buffer(self.layout.n + 1));
        out
    }
}

/// Position of `j` in the ordering: `j ∈ [r_i, r_{i+1})`, `offset = j - r_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrayIndex {
    pub j: u64,
    pub interval: u64,
    pub offset: u64,
}

/// A fully built robust Gray code. Immutable; share it freely across threads.
#[derive(Debug, Clone)]
pub struct RobustGrayCode {
    params: CodeParams,
    base: BaseCodebook,
    header: RepetitionParams,
    layout: Layout,
    total: u64,
    // ||a_z|| + 2 rho ||bin(z)|| for each row z.
    step_weights: Vec<u64>,
}

impl RobustGrayCode {
    pub fn new(params: CodeParams, inner: InnerCode) -> Result<Self> {
        params.validate()?;
        if inner.dim() != params.field_width as usize || inner.len() != params.inner_n {
            return Err(Error::Params(format!(
                "inner code is [{}, {}] but parameters ask for [{}, {}]",
                inner.len(),
                inner.dim(),
                params.inner_n,
                params.field_width
            )));
        }
        let outer = OuterCode::new(Field::new(params.field_width)?, params.k)?;
        let base = BaseCodebook::new(outer, inner)?;
        let header = RepetitionParams::new(base.rows() as u64, params.rho)?;
        let layout = Layout {
            header: header.len(),
            buffer: params.buffer,
            payload: params.inner_n,
            n: params.n(),
        };
        let step_weights = (0..base.rows())
            .map(|z| (base.row_weight(z) + 2 * params.rho * z.count_ones() as usize) as u64)
            .collect();
        let mut code = RobustGrayCode {
            params,
            base,
            header,
            layout,
            total: 0,
            step_weights,
        };
        let last = code.base.size() - 1;
        let total = code.compr_wide(last);
        if total >= 1 << 63 {
            return Err(Error::Params(format!("N = {total} does not fit in 63 bits")));
        }
        code.total = total as u64;
        Ok(code)
    }

    /// Build with a seeded random inner code (best of `candidates` draws).
    pub fn with_seeded_inner(params: CodeParams, candidates: usize, seed: u64) -> Result<Self> {
        params.validate()?;
        let inner =
            InnerCode::seeded(params.field_width as usize, params.inner_n, candidates, seed)?;
        Self::new(params, inner)
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn base(&self) -> &BaseCodebook {
        &self.base
    }

    pub fn header_code(&self) -> &RepetitionParams {
        &self.header
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    /// Word length `d`.
    pub fn len(&self) -> usize {
        self.layout.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `N = r_{q^k - 1}`, the number of Gray codewords.
    pub fn size(&self) -> u64 {
        self.total
    }

    /// Number of intermediate codewords, `q^k`.
    pub fn intermediate_size(&self) -> u64 {
        self.base.size()
    }

    /// `log2(N) / d`.
    pub fn rate(&self) -> f64 {
        (self.total as f64).log2() / self.len() as f64
    }

    /// `R_out R_in / (1 + (B/n')(1 + 1/n) + L/(n n'))`, a lower bound on [`rate`](Self::rate).
    pub fn rate_bound(&self) -> f64 {
        let n = self.layout.n as f64;
        let np = self.params.inner_n as f64;
        let r_out = self.base.outer().rate();
        let r_in = self.base.inner().rate();
        r_out * r_in
            / (1.0 + self.params.buffer as f64 / np * (1.0 + 1.0 / n) + self.header.len() as f64 / (n * np))
    }

    /// `z_i` with `z_0 := 0`.
    pub fn flip_row(&self, i: u64) -> usize {
        if i == 0 {
            0
        } else {
            i.trailing_zeros() as usize
        }
    }

    fn check_interval(&self, i: u64) -> Result<()> {
        if i >= self.base.size() {
            return Err(Error::OutOfRange {
                what: "intermediate index",
                value: i,
                bound: self.base.size(),
            });
        }
        Ok(())
    }

    /// The intermediate codeword `w_i`.
    pub fn make_w(&self, i: u64) -> Result<Vec<bool>> {
        self.check_interval(i)?;
        let (c, _) = self.base.encode(i)?;
        let parity = i & 1 == 1;
        let np = self.params.inner_n;
        let mut w = Vec::with_capacity(self.len());
        w.extend(self.header.encode(self.flip_row(i) as u64)?);
        for block in c.chunks(np) {
            w.extend(std::iter::repeat(parity).take(self.params.buffer));
            w.extend_from_slice(block);
        }
        w.extend(std::iter::repeat(parity).take(self.params.buffer));
        Ok(w)
    }

    fn compr_wide(&self, i: u64) -> u128 {
        let per_step = ((self.layout.n + 1) * self.params.buffer) as u128;
        let mut r = i as u128 * per_step;
        for (z, &wt) in self.step_weights.iter().enumerate() {
            r += brc::flip_count(z as u32, i) as u128 * wt as u128;
        }
        // Each header excursion to z_t > 0 is paid twice, on the way out and
        // on the way back. At even i the return step has not happened yet.
        if i > 0 && i % 2 == 0 {
            r -= (self.params.rho * i.trailing_zeros().count_ones() as usize) as u128;
        }
        r
    }

    /// `r_i`, the number of Gray steps before `w_i`.
    pub fn compr(&self, i: u64) -> Result<u64> {
        self.check_interval(i)?;
        Ok(self.compr_wide(i) as u64)
    }

    /// Find the interval containing `j` by binary search over `compr`.
    pub fn locate(&self, j: u64) -> Result<GrayIndex> {
        if j >= self.total {
            return Err(Error::OutOfRange {
                what: "Gray index",
                value: j,
                bound: self.total,
            });
        }
        // Largest i in [0, q^k - 2] with r_i <= j.
        let (mut lo, mut hi) = (0u64, self.base.size() - 1);
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.compr_wide(mid) <= j as u128 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let start = self.compr_wide(lo) as u64;
        Ok(GrayIndex {
            j,
            interval: lo,
            offset: j - start,
        })
    }

    /// Positions where `w_i` and `w_{i+1}` differ, in increasing order.
    pub fn differing_positions(a: &[bool], b: &[bool]) -> Vec<usize> {
        a.iter()
            .zip(b)
            .enumerate()
            .filter_map(|(pos, (x, y))| (x != y).then_some(pos))
            .collect()
    }

    /// `g_j`.
    pub fn encode(&self, j: u64) -> Result<Vec<bool>> {
        let idx = self.locate(j)?;
        self.encode_in_interval(idx.interval, idx.offset)
    }

    /// `w_i` with its first `offset` positions differing from `w_{i+1}` flipped.
    pub fn encode_in_interval(&self, i: u64, offset: u64) -> Result<Vec<bool>> {
        let mut w = self.make_w(i)?;
        if offset == 0 {
            return Ok(w);
        }
        let next = self.make_w(i + 1)?;
        let diffs = Self::differing_positions(&w, &next);
        if offset as usize > diffs.len() {
            return Err(Error::OutOfRange {
                what: "interval offset",
                value: offset,
                bound: diffs.len() as u64 + 1,
            });
        }
        for &pos in &diffs[..offset as usize] {
            w[pos] ^= true;
        }
        Ok(w)
    }

    /// The crossover position `h_{i, offset}` of `g_j`, if `j` is not an interval start.
    pub fn crossover(&self, j: u64) -> Result<Option<usize>> {
        let idx = self.locate(j)?;
        if idx.offset == 0 {
            return Ok(None);
        }
        let a = self.make_w(idx.interval)?;
        let b = self.make_w(idx.interval + 1)?;
        Ok(Some(Self::differing_positions(&a, &b)[idx.offset as usize - 1]))
    }

    pub fn encode_hex(&self, j: u64) -> Result<String> {
        Ok(bits::to_hex(&self.encode(j)?))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// q = 8, k = 2, a fixed [6, 3] inner code, B = 5, rho = 3.
    pub(crate) fn small_code() -> RobustGrayCode {
        let params = CodeParams {
            p: 0.05,
            field_width: 3,
            k: 2,
            inner_n: 6,
            buffer: 5,
            rho: 3,
            beta: 0.1,
            xi: 0.5,
        };
        let inner = InnerCode::parse("100110\n010101\n001011\n").unwrap();
        RobustGrayCode::new(params, inner).unwrap()
    }

    #[test]
    fn layout_partitions_word() {
        let code = small_code();
        let lay = *code.layout();
        assert_eq!(code.len(), 6 * 7 + 5 * 8 + 9);
        let mut covered = vec![0u8; lay.len()];
        for r in std::iter::once(lay.header_range())
            .chain((1..=7).map(|m| lay.buffer_range(m)))
            .chain(std::iter::once(lay.buffer_range(8)))
            .chain((1..=7).map(|m| lay.payload_range(m)))
        {
            for p in r {
                covered[p] += 1;
            }
        }
        assert!(covered.iter().all(|&c| c == 1));
        assert_eq!(lay.chunk_of(0), 0);
        assert_eq!(lay.chunk_of(9), 1);
        assert_eq!(lay.chunk_of(lay.len() - 1), 8);
        assert_eq!(lay.chunk_of(lay.payload_range(7).end - 1), 7);
    }

    #[test]
    fn zero_word_and_buffer_parity() {
        let code = small_code();
        assert!(code.make_w(0).unwrap().iter().all(|&b| !b));
        for i in 0..code.intermediate_size() {
            let w = code.make_w(i).unwrap();
            let view = code.layout().view(&w);
            for m in 1..=8 {
                assert!(view.buffer(m).iter().all(|&b| b == (i % 2 == 1)));
            }
        }
        assert!(code.make_w(64).is_err());
    }

    #[test]
    fn step_distance_formula() {
        let code = small_code();
        let rho = code.params().rho;
        let per_step = 8 * 5;
        for i in 1..code.intermediate_size() {
            let a = code.make_w(i - 1).unwrap();
            let b = code.make_w(i).unwrap();
            let zp = code.flip_row(i - 1) as u32;
            let z = code.flip_row(i);
            let expect = per_step + code.base().row_weight(z) + rho * (zp ^ z as u32).count_ones() as usize;
            assert_eq!(bits::hamming(&a, &b), expect);
        }
    }

    #[test]
    fn compr_small_values() {
        let code = small_code();
        assert_eq!(code.compr(0).unwrap(), 0);
        let w0 = code.make_w(0).unwrap();
        let w1 = code.make_w(1).unwrap();
        assert_eq!(code.compr(1).unwrap() as usize, bits::hamming(&w0, &w1));
        assert_eq!(code.compr(1).unwrap() as usize, 8 * 5 + code.base().row_weight(0));
    }

    #[test]
    fn encode_edges() {
        let code = small_code();
        assert_eq!(code.encode(0).unwrap(), code.make_w(0).unwrap());
        assert!(code.encode(code.size()).is_err());
        let last = code.encode(code.size() - 1).unwrap();
        let w_last = code.make_w(code.intermediate_size() - 1).unwrap();
        assert_eq!(bits::hamming(&last, &w_last), 1);
        assert_eq!(code.crossover(0).unwrap(), None);
    }

    #[test]
    fn rate_bound_holds() {
        let code = small_code();
        assert!(code.rate() >= code.rate_bound());
    }
}
