//! The outer `[n, k]_q` Reed-Solomon code over all of F_q^* (`n = q - 1`),
//! with errors-and-erasures decoding.
//!
//! Evaluation point `m` is `α^m`. A message `(f_0, …, f_{k-1})` holds the
//! coefficients of `f(X) = Σ f_t X^t`, and the codeword is `(f(α^0), …, f(α^{n-1}))`.
//!
//! Decoding punctures the erased positions and runs Berlekamp-Welch on the
//! rest, so `e` errors and `t` erasures are corrected whenever `2e + t < n - k + 1`.

use crate::error::{Error, Result};
use crate::gf2m::{Field, FieldElement};

#[derive(Debug, Clone)]
pub struct OuterCode {
    field: Field,
    k: usize,
    points: Vec<FieldElement>,
}

impl OuterCode {
    pub fn new(field: Field, k: usize) -> Result<Self> {
        let n = field.order() - 1;
        if k == 0 || k >= n {
            return Err(Error::Params(format!("outer dimension k={k} must satisfy 1 <= k < n={n}")));
        }
        let points = (0..n).map(|m| field.alpha_pow(m)).collect();
        Ok(OuterCode { field, k, points })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.points.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.k
    }

    /// Minimum distance `n - k + 1`.
    pub fn distance(&self) -> usize {
        self.len() - self.k + 1
    }

    /// Relative distance `(n - k + 1) / n`.
    pub fn relative_distance(&self) -> f64 {
        self.distance() as f64 / self.len() as f64
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.len() as f64
    }

    pub fn points(&self) -> &[FieldElement] {
        &self.points
    }

    fn eval(&self, poly: &[FieldElement], x: FieldElement) -> FieldElement {
        poly.iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| self.field.mul(acc, x) + c)
    }

    pub fn encode(&self, message: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if message.len() != self.k {
            return Err(Error::Length {
                expected: self.k,
                actual: message.len(),
            });
        }
        Ok(self.points.iter().map(|&x| self.eval(message, x)).collect())
    }

    /// Decode a received word; `None` marks an erasure.
    pub fn decode(&self, received: &[Option<FieldElement>]) -> Result<Vec<FieldElement>> {
        if received.len() != self.len() {
            return Err(Error::Length {
                expected: self.len(),
                actual: received.len(),
            });
        }
        let known: Vec<(FieldElement, FieldElement)> = self
            .points
            .iter()
            .zip(received)
            .filter_map(|(&x, y)| y.map(|y| (x, y)))
            .collect();
        let erasures = self.len() - known.len();
        if known.len() < self.k {
            return Err(Error::DecodeFailure);
        }
        let e = (known.len() - self.k) / 2;
        let f = self.berlekamp_welch(&known, e)?;

        let disagreements = known.iter().filter(|&&(x, y)| self.eval(&f, x) != y).count();
        if 2 * disagreements + erasures >= self.distance() {
            return Err(Error::DecodeFailure);
        }
        Ok(f)
    }

    /// Find `Q` (degree < e + k) and monic `E` (degree e) with `Q(x) = y E(x)`
    /// on every known point, then return `Q / E`.
    fn berlekamp_welch(
        &self,
        known: &[(FieldElement, FieldElement)],
        e: usize,
    ) -> Result<Vec<FieldElement>> {
        let f = &self.field;
        let q_len = e + self.k;
        let cols = q_len + e;
        // Row: [x^0 .. x^(q_len-1) | y x^0 .. y x^(e-1) | y x^e], all in characteristic 2.
        let mut rows: Vec<Vec<FieldElement>> = known
            .iter()
            .map(|&(x, y)| {
                let mut row = Vec::with_capacity(cols + 1);
                let mut pw = FieldElement::ONE;
                for _ in 0..q_len {
                    row.push(pw);
                    pw = f.mul(pw, x);
                }
                let mut pw = y;
                for _ in 0..=e {
                    row.push(pw);
                    pw = f.mul(pw, x);
                }
                row
            })
            .collect();
        let sol = solve(f, &mut rows, cols).ok_or(Error::DecodeFailure)?;
        let q_poly = &sol[..q_len];
        let mut e_poly = sol[q_len..].to_vec();
        e_poly.push(FieldElement::ONE);
        let (quot, rem) = divide(f, q_poly, &e_poly);
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::DecodeFailure);
        }
        let mut quot = quot;
        quot.resize(self.k, FieldElement::ZERO);
        Ok(quot)
    }
}

/// Gaussian elimination on an augmented matrix (last column is the right-hand side).
/// Free variables are set to zero; `None` if inconsistent.
fn solve(f: &Field, rows: &mut [Vec<FieldElement>], cols: usize) -> Option<Vec<FieldElement>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]).unwrap();
        for v in rows[r][c..].iter_mut() {
            *v = f.mul(*v, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c];
                for (v, &pv) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *v = *v + f.mul(factor, pv);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    if rows[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut sol = vec![FieldElement::ZERO; cols];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = rows[i][cols];
    }
    Some(sol)
}

/// Polynomial division by a monic divisor; returns (quotient, remainder).
fn divide(
    f: &Field,
    num: &[FieldElement],
    den: &[FieldElement],
) -> (Vec<FieldElement>, Vec<FieldElement>) {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let mut quot = vec![FieldElement::ZERO; rem.len() - dd];
    for s in (0..quot.len()).rev() {
        let lead = rem[s + dd];
        if lead.is_zero() {
            continue;
        }
        quot[s] = lead;
        for (t, &dc) in den.iter().enumerate() {
            rem[s + t] = rem[s + t] + f.mul(lead, dc);
        }
    }
    rem.truncate(dd);
    (quot, rem)
}
