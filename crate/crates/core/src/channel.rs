//! BSC noise and the Monte Carlo tail measurement `Pr[|j - ĵ| >= t]`.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;
use crate::robust_gray::{Branch, RobustGrayCode};

/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959963984540054;

/// Flip each of `len` bits independently with probability `p`.
pub fn bsc_sample<R: Rng + ?Sized>(len: usize, p: f64, rng: &mut R) -> Vec<bool> {
    (0..len).map(|_| rng.gen_bool(p)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Middle,
    Boundary,
    RsFailure,
    HeaderFailure,
}

impl From<Branch> for Outcome {
    fn from(b: Branch) -> Self {
        match b {
            Branch::Middle => Outcome::Middle,
            Branch::Boundary => Outcome::Boundary,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub j: u64,
    /// `None` when decoding failed.
    pub j_hat: Option<u64>,
    pub noise_weight: usize,
    pub outcome: Outcome,
}

impl TrialRecord {
    /// `|j - ĵ|`, or `None` for a failed trial (counted in every tail).
    pub fn deviation(&self) -> Option<u64> {
        self.j_hat.map(|h| h.abs_diff(self.j))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "j")]
pub enum Mode {
    Uniform,
    Fixed(u64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Experiment {
    pub trials: u64,
    pub t_grid: Vec<u64>,
    pub seed: u64,
    pub mode: Mode,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailPoint {
    pub t: u64,
    pub hits: u64,
    pub tail_estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchStats {
    pub middle: u64,
    pub boundary: u64,
    pub rs_failure: u64,
    pub header_failure: u64,
}

impl BranchStats {
    pub fn failures(&self) -> u64 {
        self.rs_failure + self.header_failure
    }

    fn record(&mut self, outcome: Outcome) {
        match outcome {
            Outcome::Middle => self.middle += 1,
            Outcome::Boundary => self.boundary += 1,
            Outcome::RsFailure => self.rs_failure += 1,
            Outcome::HeaderFailure => self.header_failure += 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub trials: u64,
    pub tails: Vec<TailPoint>,
    pub stats: BranchStats,
    /// Mean `|j - ĵ|` over trials that decoded.
    pub mean_deviation: f64,
    pub failure_rate: f64,
    pub mean_noise_weight: f64,
}

/// Wilson score interval for `hits` successes in `n` trials.
pub fn wilson(hits: u64, n: u64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let n = n as f64;
    let phat = hits as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let centre = (phat + z2 / (2.0 * n)) / denom;
    let half = Z95 * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if hits == 0 { 0.0 } else { (centre - half).max(0.0) };
    let hi = if hits as f64 == n { 1.0 } else { (centre + half).min(1.0) };
    (lo, hi)
}

/// Run a single trial on its own random stream.
pub fn run_trial(code: &RobustGrayCode, seed: u64, index: u64, mode: Mode) -> TrialRecord {
    let mut rng = rng::stream(seed, rng::domain::TRIAL, index);
    let j = match mode {
        Mode::Uniform => rng.gen_range(0..code.size()),
        Mode::Fixed(j) => j,
    };
    let mut x = code.encode(j).expect("j drawn inside the domain");
    let noise = bsc_sample(x.len(), code.params().p, &mut rng);
    let mut noise_weight = 0;
    for (b, e) in x.iter_mut().zip(&noise) {
        *b ^= e;
        noise_weight += *e as usize;
    }
    let (j_hat, outcome) = match code.decode(&x) {
        Ok(d) => (Some(d.j_hat), d.branch.into()),
        Err(Error::HeaderFailure) => (None, Outcome::HeaderFailure),
        Err(_) => (None, Outcome::RsFailure),
    };
    TrialRecord {
        j,
        j_hat,
        noise_weight,
        outcome,
    }
}

/// Run every trial in parallel; records come back in trial order.
pub fn run_trials(code: &RobustGrayCode, exp: &Experiment) -> Result<Vec<TrialRecord>> {
    if exp.trials == 0 {
        return Err(Error::Params("trials must be at least 1".into()));
    }
    if let Mode::Fixed(j) = exp.mode {
        if j >= code.size() {
            return Err(Error::OutOfRange {
                what: "fixed j",
                value: j,
                bound: code.size(),
            });
        }
    }
    if exp.t_grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Params("t grid must be sorted ascending".into()));
    }
    Ok((0..exp.trials)
        .into_par_iter()
        .map(|i| run_trial(code, exp.seed, i, exp.mode))
        .collect())
}

pub fn summarize(records: &[TrialRecord], t_grid: &[u64]) -> ExperimentResult {
    let trials = records.len() as u64;
    let mut stats = BranchStats::default();
    let mut deviation_sum = 0u128;
    let mut noise_sum = 0u128;
    let mut hits = vec![0u64; t_grid.len()];
    for r in records {
        stats.record(r.outcome);
        noise_sum += r.noise_weight as u128;
        let dev = r.deviation();
        if let Some(d) = dev {
            deviation_sum += d as u128;
        }
        for (h, &t) in hits.iter_mut().zip(t_grid) {
            if dev.map_or(true, |d| d >= t) {
                *h += 1;
            }
        }
    }
    let decoded = trials - stats.failures();
    let tails = t_grid
        .iter()
        .zip(&hits)
        .map(|(&t, &h)| {
            let (ci_low, ci_high) = wilson(h, trials);
            TailPoint {
                t,
                hits: h,
                tail_estimate: h as f64 / trials as f64,
                ci_low,
                ci_high,
            }
        })
        .collect();
    ExperimentResult {
        trials,
        tails,
        stats,
        mean_deviation: if decoded == 0 {
            0.0
        } else {
            deviation_sum as f64 / decoded as f64
        },
        failure_rate: stats.failures() as f64 / trials as f64,
        mean_noise_weight: noise_sum as f64 / trials as f64,
    }
}

pub fn run_experiment(code: &RobustGrayCode, exp: &Experiment) -> Result<ExperimentResult> {
    let records = run_trials(code, exp)?;
    Ok(summarize(&records, &exp.t_grid))
}
