use std::path::Path;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{self, domain};

/// A binary linear `[n', k']` code with brute-force maximum-likelihood decoding.
///
/// Codewords are packed into `u64` masks, coordinate 0 at bit 0. Message `v`
/// (an integer below `2^k'`) encodes to the XOR of the generator rows selected
/// by its set bits, bit `t` selecting row `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerCode {
    n: usize,
    k: usize,
    rows: Vec<u64>,
    table: Vec<u64>,
    min_distance: usize,
}

impl InnerCode {
    pub const MAX_LEN: usize = 64;
    pub const MAX_DIM: usize = 16;

    /// Build from generator rows given as masks; rejects rank-deficient generators.
    pub fn from_masks(rows: Vec<u64>, n: usize) -> Result<Self> {
        let k = rows.len();
        if n == 0 || n > Self::MAX_LEN {
            return Err(Error::Generator(format!("length {n} out of range 1..=64")));
        }
        if k == 0 || k > Self::MAX_DIM || k > n {
            return Err(Error::Generator(format!("dimension {k} invalid for length {n}")));
        }
        if n < 64 && rows.iter().any(|&r| r >> n != 0) {
            return Err(Error::Generator("row wider than code length".into()));
        }
        if rank(&rows) != k {
            return Err(Error::Generator("generator is not full rank".into()));
        }
        let mut table = vec![0u64; 1 << k];
        for v in 1..table.len() {
            let low = v.trailing_zeros() as usize;
            table[v] = table[v & (v - 1)] ^ rows[low];
        }
        let min_distance = table[1..].iter().map(|c| c.count_ones() as usize).min().unwrap();
        Ok(InnerCode {
            n,
            k,
            rows,
            table,
            min_distance,
        })
    }

    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Generator("rows have differing lengths".into()));
        }
        Self::from_masks(rows.iter().map(|r| crate::bits::to_u64(r)).collect(), n)
    }

    /// Parse the text format: one row per line of `0`/`1` characters.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .enumerate()
            .map(|(idx, l)| {
                crate::bits::parse(l)
                    .ok_or_else(|| Error::Generator(format!("row {}: expected only 0/1", idx + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(&rows)
    }

    pub fn from_file(path: impl AsRef<Path>) -> std::io::Result<Result<Self>> {
        Ok(Self::parse(&std::fs::read_to_string(path)?))
    }

    /// Render in the text format accepted by [`parse`](Self::parse).
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for &r in &self.rows {
            s.push_str(&crate::bits::to_string(&crate::bits::from_u64(r, self.n)));
            s.push('\n');
        }
        s
    }

    /// The `[n, 1]` repetition code.
    pub fn repetition(n: usize) -> Result<Self> {
        let mask = if n >= 64 { u64::MAX } else { (1 << n) - 1 };
        Self::from_masks(vec![mask], n)
    }

    /// Uniformly random generator, redrawn until it has full rank.
    pub fn random<R: Rng + ?Sized>(k: usize, n: usize, rng: &mut R) -> Result<Self> {
        if n == 0 || n > Self::MAX_LEN || k == 0 || k > Self::MAX_DIM || k > n {
            return Err(Error::Generator(format!("cannot draw a [{n}, {k}] code")));
        }
        let mask = if n >= 64 { u64::MAX } else { (1 << n) - 1 };
        loop {
            let rows: Vec<u64> = (0..k).map(|_| rng.gen::<u64>() & mask).collect();
            if rank(&rows) == k {
                return Self::from_masks(rows, n);
            }
        }
    }

    /// Draw `candidates` random full-rank codes and keep the best one:
    /// largest minimum distance, then fewest minimum-weight codewords.
    pub fn random_best_of<R: Rng + ?Sized>(
        k: usize,
        n: usize,
        candidates: usize,
        rng: &mut R,
    ) -> Result<Self> {
        let mut best = Self::random(k, n, rng)?;
        let score = |c: &InnerCode| (c.min_distance, usize::MAX - c.min_weight_count());
        for _ in 1..candidates {
            let c = Self::random(k, n, rng)?;
            if score(&c) > score(&best) {
                best = c;
            }
        }
        Ok(best)
    }

    /// Seeded variant of [`random_best_of`](Self::random_best_of).
    pub fn seeded(k: usize, n: usize, candidates: usize, seed: u64) -> Result<Self> {
        let mut rng = rng::stream(seed, domain::INNER_CODE, 0);
        Self::random_best_of(k, n, candidates.max(1), &mut rng)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn min_distance(&self) -> usize {
        self.min_distance
    }

    fn min_weight_count(&self) -> usize {
        self.table[1..]
            .iter()
            .filter(|c| c.count_ones() as usize == self.min_distance)
            .count()
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    pub fn generator_rows(&self) -> &[u64] {
        &self.rows
    }

    #[inline]
    pub fn encode_mask(&self, message: u16) -> u64 {
        self.table[message as usize]
    }

    pub fn encode(&self, message: u16) -> Vec<bool> {
        crate::bits::from_u64(self.encode_mask(message), self.n)
    }

    /// Nearest codeword by Hamming distance; ties go to the smaller message.
    pub fn decode_mask(&self, y: u64) -> u16 {
        let mut best = (u32::MAX, 0u16);
        for (v, &c) in self.table.iter().enumerate() {
            let d = (c ^ y).count_ones();
            if d < best.0 {
                best = (d, v as u16);
                if d == 0 {
                    break;
                }
            }
        }
        best.1
    }

    pub fn decode(&self, y: &[bool]) -> u16 {
        self.decode_mask(crate::bits::to_u64(y))
    }
}

fn rank(rows: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for &r in rows {
        let mut v = r;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// A sampled block-failure probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PfailEstimate {
    /// Largest per-message failure rate observed.
    pub estimate: f64,
    /// Number of messages sampled (message 0 is always included).
    pub messages: usize,
    pub trials_per_message: u64,
}

/// Monte Carlo block-failure rate of ML decoding on a BSC with crossover `p`.
///
/// The maximum over all messages is approximated by message 0 plus up to 32
/// random messages, each run for `trials` noise draws; the largest observed
/// failure rate is returned.
pub fn estimate_pfail(code: &InnerCode, p: f64, trials: u64, seed: u64) -> PfailEstimate {
    let mut picker = rng::stream(seed, domain::PFAIL, u64::MAX);
    let mut messages = vec![0u16];
    let total = 1usize << code.dim();
    if total <= 33 {
        messages.extend(1..total as u16);
    } else {
        while messages.len() < 33 {
            let v = picker.gen_range(1..total) as u16;
            if !messages.contains(&v) {
                messages.push(v);
            }
        }
    }
    let trials = trials.max(1);
    let worst = messages
        .iter()
        .enumerate()
        .map(|(mi, &v)| {
            let sent = code.encode_mask(v);
            let failures: u64 = (0..trials)
                .into_par_iter()
                .map(|t| {
                    let mut r = rng::stream(seed, domain::PFAIL, (mi as u64) << 40 | t);
                    let mut noise = 0u64;
                    for bit in 0..code.len() {
                        if r.gen_bool(p) {
                            noise |= 1 << bit;
                        }
                    }
                    (code.decode_mask(sent ^ noise) != v) as u64
                })
                .sum();
            failures as f64 / trials as f64
        })
        .fold(0.0, f64::max);
    PfailEstimate {
        estimate: worst,
        messages: messages.len(),
        trials_per_message: trials,
    }
}
