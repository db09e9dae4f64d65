use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The full parameter bundle of a robust Gray code.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CodeParams {
    /// BSC crossover probability the code is tuned for.
    pub p: f64,
    /// `k'`: field width, so `q = 2^k'` and the inner code has dimension `k'`.
    pub field_width: u32,
    /// Outer message length `k`.
    pub k: usize,
    /// Inner code length `n'`.
    pub inner_n: usize,
    /// Buffer length `B` (odd).
    pub buffer: usize,
    /// Header repetitions per bit (odd).
    pub rho: usize,
    /// Boundary fraction `β`.
    pub beta: f64,
    /// Slack `ξ` in the outer decoding condition.
    pub xi: f64,
}

/// One inequality of the decoding conditions, evaluated numerically.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl Constraint {
    fn less(name: &str, lhs: f64, rhs: f64) -> Self {
        Constraint {
            name: name.to_string(),
            lhs,
            rhs,
            holds: lhs < rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintReport {
    pub c_p: f64,
    pub p_fail: f64,
    pub delta_out: f64,
    pub constraints: Vec<Constraint>,
}

impl ConstraintReport {
    pub fn all_hold(&self) -> bool {
        self.constraints.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Constraint> {
        self.constraints.iter().filter(|c| !c.holds)
    }
}

impl CodeParams {
    /// Outer length `n = q - 1`.
    pub fn n(&self) -> usize {
        (1usize << self.field_width) - 1
    }

    pub fn q(&self) -> usize {
        1 << self.field_width
    }

    /// `k * k'`.
    pub fn rows(&self) -> usize {
        self.k * self.field_width as usize
    }

    /// `δ_out = (n - k + 1) / n`.
    pub fn delta_out(&self) -> f64 {
        (self.n() - self.k + 1) as f64 / self.n() as f64
    }

    /// `⌈βn⌉`, the half-width of every erasure window.
    pub fn window(&self) -> usize {
        // Guard against products like 0.2 * 15 = 3.0000000000000004.
        ((self.beta * self.n() as f64) - 1e-9).ceil().max(0.0) as usize
    }

    /// `C_p = p (1/(2p) - 1)^2 / 3`, the buffer majority failure exponent.
    /// Written as `(1 - 2p)^2 / (12 p)` so that `p = 0` gives infinity.
    pub fn c_p(&self) -> f64 {
        let t = 1.0 - 2.0 * self.p;
        t * t / (12.0 * self.p)
    }

    /// Structural checks needed to build the code at all.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Params(msg));
        if !(2..=16).contains(&self.field_width) {
            return fail(format!("field width k'={} out of range 2..=16", self.field_width));
        }
        if self.k == 0 || self.k >= self.n() {
            return fail(format!("k={} must satisfy 1 <= k < n={}", self.k, self.n()));
        }
        if self.rows() < 2 || self.rows() > 62 {
            return fail(format!("k*k'={} out of range 2..=62", self.rows()));
        }
        if self.inner_n < self.field_width as usize || self.inner_n > 64 {
            return fail(format!(
                "inner length n'={} must satisfy k'={} <= n' <= 64",
                self.inner_n, self.field_width
            ));
        }
        if self.buffer % 2 == 0 {
            return fail(format!("B={} must be odd", self.buffer));
        }
        if self.rho % 2 == 0 {
            return fail(format!("rho={} must be odd", self.rho));
        }
        if !(self.p >= 0.0 && self.p < 0.5) {
            return fail(format!("p={} must lie in [0, 1/2)", self.p));
        }
        if !(self.beta > 0.0 && self.beta < 0.5) {
            return fail(format!("beta={} must lie in (0, 1/2)", self.beta));
        }
        if !(self.xi > 0.0) {
            return fail(format!("xi={} must be positive", self.xi));
        }
        Ok(())
    }

    /// Evaluate the decoding conditions given an inner failure probability.
    pub fn constraints(&self, p_fail: f64) -> ConstraintReport {
        let c_p = self.c_p();
        let delta_out = self.delta_out();
        let constraints = vec![
            Constraint::less(
                "2*exp(-C_p*B) < beta",
                2.0 * (-c_p * self.buffer as f64).exp(),
                self.beta,
            ),
            Constraint::less("beta < 1/4", self.beta, 0.25),
            Constraint::less(
                "2*(1+xi)*p_fail + 2*beta < delta_out",
                2.0 * (1.0 + self.xi) * p_fail + 2.0 * self.beta,
                delta_out,
            ),
        ];
        ConstraintReport {
            c_p,
            p_fail,
            delta_out,
            constraints,
        }
    }
}
