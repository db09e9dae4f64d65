//! Run configuration: a flat `key = value` file with flag overrides.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::channel::Mode;
use crate::error::Error;
use crate::robust_gray::{CodeParams, RobustGrayCode};
use crate::small_codes::{InnerCode, RepetitionParams};

/// Exit status classes of the command line tool.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitKind {
    Config = 1,
    Runtime = 2,
    Io = 3,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub kind: ExitKind,
    pub message: String,
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        CliError { kind: ExitKind::Config, message: message.into() }
    }

    pub fn runtime(message: impl Into<String>) -> Self {
        CliError { kind: ExitKind::Runtime, message: message.into() }
    }

    pub fn io(message: impl Into<String>) -> Self {
        CliError { kind: ExitKind::Io, message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        self.kind as i32
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::DecodeFailure | Error::HeaderFailure => CliError::runtime(e.to_string()),
            _ => CliError::config(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(CliError::config(format!("unknown format {s:?} (csv or json)"))),
        }
    }
}

/// `uniform`, `uniform-j`, `fixed:J` or `fixed-j:J`.
pub fn parse_mode(s: &str) -> Result<Mode, CliError> {
    let s = s.trim();
    if s == "uniform" || s == "uniform-j" {
        return Ok(Mode::Uniform);
    }
    let j = s
        .strip_prefix("fixed-j:")
        .or_else(|| s.strip_prefix("fixed:"))
        .ok_or_else(|| CliError::config(format!("unknown mode {s:?} (uniform-j or fixed-j:J)")))?;
    parse_num(j, "mode").map(Mode::Fixed)
}

pub fn mode_to_string(mode: Mode) -> String {
    match mode {
        Mode::Uniform => "uniform-j".into(),
        Mode::Fixed(j) => format!("fixed-j:{j}"),
    }
}

fn parse_num<T: FromStr>(value: &str, key: &str) -> Result<T, CliError> {
    value
        .trim()
        .parse()
        .map_err(|_| CliError::config(format!("cannot parse {key} = {value:?}")))
}

/// Map `q` to the field width `log2 q`.
pub fn field_width_of(q: u64) -> Result<u32, CliError> {
    if q.is_power_of_two() && (4..=1 << 16).contains(&q) {
        Ok(q.trailing_zeros())
    } else {
        Err(CliError::config(format!("q={q} must be a power of two in 4..=65536")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: CodeParams,
    pub trials: u64,
    pub t_grid: Vec<u64>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub mode: Mode,
    pub inner_generator_file: Option<PathBuf>,
    /// Random inner codes drawn when no generator file is given; the best is kept.
    pub inner_candidates: usize,
    pub pfail_trials: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            params: CodeParams {
                p: 0.05,
                field_width: 3,
                k: 2,
                inner_n: 6,
                buffer: 5,
                rho: 3,
                beta: 0.1,
                xi: 0.5,
            },
            trials: 1000,
            t_grid: vec![1, 10, 100, 1000],
            seed: None,
            threads: None,
            format: Format::Csv,
            out: None,
            mode: Mode::Uniform,
            inner_generator_file: None,
            inner_candidates: 64,
            pfail_trials: 20_000,
        }
    }
}

impl RunConfig {
    /// Apply one `key = value` setting. Keys match the long flag names.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let key = key.trim().trim_start_matches("--").replace('-', "_");
        let v = value.trim();
        let p = &mut self.params;
        match key.as_str() {
            "p" => p.p = parse_num(v, "p")?,
            "q" => p.field_width = field_width_of(parse_num(v, "q")?)?,
            "k" => p.k = parse_num(v, "k")?,
            "inner_n" => p.inner_n = parse_num(v, "inner_n")?,
            "B" | "b" | "buffer" => p.buffer = parse_num(v, "B")?,
            "rho" => p.rho = parse_num(v, "rho")?,
            "beta" => p.beta = parse_num(v, "beta")?,
            "xi" => p.xi = parse_num(v, "xi")?,
            "trials" => self.trials = parse_num(v, "trials")?,
            "t_grid" => {
                self.t_grid = v
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| parse_num(s, "t_grid"))
                    .collect::<Result<_, _>>()?
            }
            "seed" => self.seed = Some(parse_num(v, "seed")?),
            "threads" => self.threads = Some(parse_num(v, "threads")?),
            "format" => self.format = v.parse()?,
            "out" => self.out = Some(PathBuf::from(v)),
            "mode" => self.mode = parse_mode(v)?,
            "inner_generator_file" => self.inner_generator_file = Some(PathBuf::from(v)),
            "inner_candidates" => self.inner_candidates = parse_num(v, "inner_candidates")?,
            "pfail_trials" => self.pfail_trials = parse_num(v, "pfail_trials")?,
            _ => return Err(CliError::config(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    /// Parse a config file body on top of the defaults.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = RunConfig::default();
        cfg.apply_text(text)?;
        Ok(cfg)
    }

    pub fn apply_text(&mut self, text: &str) -> Result<(), CliError> {
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::config(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            self.set(key, value)
                .map_err(|e| CliError::config(format!("line {}: {}", lineno + 1, e.message)))?;
        }
        Ok(())
    }

    /// Render back to the file format; `parse(to_text())` is the identity.
    pub fn to_text(&self) -> String {
        let p = &self.params;
        let mut s = String::new();
        let mut line = |k: &str, v: String| s.push_str(&format!("{k} = {v}\n"));
        line("p", p.p.to_string());
        line("q", p.q().to_string());
        line("k", p.k.to_string());
        line("inner-n", p.inner_n.to_string());
        line("B", p.buffer.to_string());
        line("rho", p.rho.to_string());
        line("beta", p.beta.to_string());
        line("xi", p.xi.to_string());
        line("trials", self.trials.to_string());
        line(
            "t-grid",
            self.t_grid.iter().map(u64::to_string).collect::<Vec<_>>().join(","),
        );
        if let Some(seed) = self.seed {
            line("seed", seed.to_string());
        }
        if let Some(t) = self.threads {
            line("threads", t.to_string());
        }
        line("format", format!("{:?}", self.format).to_lowercase());
        if let Some(out) = &self.out {
            line("out", out.display().to_string());
        }
        line("mode", mode_to_string(self.mode));
        if let Some(f) = &self.inner_generator_file {
            line("inner-generator-file", f.display().to_string());
        }
        line("inner-candidates", self.inner_candidates.to_string());
        line("pfail-trials", self.pfail_trials.to_string());
        s
    }

    pub fn require_seed(&self) -> Result<u64, CliError> {
        self.seed
            .ok_or_else(|| CliError::config("an explicit --seed is required"))
    }

    pub fn inner_code(&self) -> Result<InnerCode, CliError> {
        self.params.validate()?;
        let k = self.params.field_width as usize;
        let n = self.params.inner_n;
        match &self.inner_generator_file {
            Some(path) => InnerCode::from_file(path)
                .map_err(|e| CliError::io(format!("{}: {e}", path.display())))?
                .map_err(CliError::from),
            None => Ok(InnerCode::seeded(k, n, self.inner_candidates.max(1), self.require_seed()?)?),
        }
    }

    pub fn build(&self) -> Result<RobustGrayCode, CliError> {
        Ok(RobustGrayCode::new(self.params, self.inner_code()?)?)
    }
}

/// A parameter set derived from a target rate loss `ε`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Preset {
    pub params: CodeParams,
    pub epsilon: f64,
    /// Header budget `(ε/8) n n'` in bits.
    pub header_budget: f64,
}

/// Pick outer, header, window and buffer parameters for loss `ε`.
///
/// `n = q - 1`, `k = n - ⌈εn/2⌉ + 1`, `ρ` is the largest odd value with
/// `ρ ⌈log2(k k')⌉ <= (ε/8) n n'`, `β = min(δ_out/8, 1/5)`, `ξ = 1/2` and
/// `B` is the smallest odd integer above `ln(2/β) / C_p`.
pub fn preset(epsilon: f64, p: f64, q: u64, inner_n: usize) -> Result<Preset, CliError> {
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(CliError::config(format!("epsilon={epsilon} must lie in (0, 1/2)")));
    }
    if !(p > 0.0 && p < 0.5) {
        return Err(CliError::config(format!("p={p} must lie in (0, 1/2)")));
    }
    let field_width = field_width_of(q)?;
    let n = (q - 1) as usize;
    let redundancy = (epsilon * n as f64 / 2.0 - 1e-9).ceil().max(1.0) as usize;
    if redundancy >= n {
        return Err(Error::Infeasible(format!("epsilon={epsilon} leaves no message symbols at q={q}")).into());
    }
    let k = n - redundancy + 1;
    let rows = k * field_width as usize;
    if rows > 62 {
        return Err(Error::Infeasible(format!(
            "k*k'={rows} exceeds the 62-bit index space; use a smaller q or a larger epsilon"
        ))
        .into());
    }
    let bits = RepetitionParams::new(rows as u64, 1)?.bit_count;
    let header_budget = epsilon / 8.0 * (n * inner_n) as f64;
    let mut rho = (header_budget / bits as f64).floor() as usize;
    if rho % 2 == 0 {
        rho = rho.saturating_sub(1);
    }
    if rho == 0 {
        return Err(Error::Infeasible(format!(
            "header budget {header_budget:.2} bits < {bits} bits needed for k*k'={rows}; \
             epsilon is too small for q={q}, use a larger q"
        ))
        .into());
    }
    let delta_out = redundancy as f64 / n as f64;
    let beta = (delta_out / 8.0).min(0.2);
    let mut params = CodeParams {
        p,
        field_width,
        k,
        inner_n,
        buffer: 1,
        rho,
        beta,
        xi: 0.5,
    };
    let mut buffer = (2.0 / beta).ln() / params.c_p();
    buffer = buffer.floor() + 1.0;
    let mut buffer = buffer as usize;
    if buffer % 2 == 0 {
        buffer += 1;
    }
    params.buffer = buffer;
    params.validate()?;
    Ok(Preset {
        params,
        epsilon,
        header_budget,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let mut cfg = RunConfig::default();
        cfg.set("q", "16").unwrap();
        cfg.set("inner-n", "14").unwrap();
        cfg.set("B", "25").unwrap();
        cfg.set("t_grid", "1, 5,1000").unwrap();
        cfg.set("seed", "9").unwrap();
        cfg.set("mode", "fixed-j:77").unwrap();
        cfg.set("format", "json").unwrap();
        assert_eq!(cfg.params.field_width, 4);
        assert_eq!(cfg.t_grid, vec![1, 5, 1000]);
        assert_eq!(RunConfig::parse(&cfg.to_text()).unwrap(), cfg);
    }

    #[test]
    fn parse_errors_are_config_errors() {
        for text in ["q = 12", "nonsense = 1", "k", "mode = sometimes", "p = x"] {
            let e = RunConfig::parse(text).unwrap_err();
            assert_eq!(e.exit_code(), 1, "{text}: {e}");
        }
        let text = "# comment\n\nk = 3   # trailing\n";
        assert_eq!(RunConfig::parse(text).unwrap().params.k, 3);
    }

    #[test]
    fn seed_required_for_random_inner_code() {
        let cfg = RunConfig::default();
        assert_eq!(cfg.build().unwrap_err().kind, ExitKind::Config);
        let cfg = RunConfig { seed: Some(1), ..cfg };
        assert_eq!(cfg.build().unwrap().size() > 0, true);
    }

    #[test]
    fn error_classes() {
        assert_eq!(CliError::from(Error::DecodeFailure).exit_code(), 2);
        assert_eq!(CliError::from(Error::Params("x".into())).exit_code(), 1);
        assert_eq!(CliError::io("x").exit_code(), 3);
    }

    #[test]
    fn preset_arithmetic() {
        // n = 15, εn/2 = 2.25, so k = 15 - 3 + 1.
        let pr = preset(0.3, 0.02, 16, 14).unwrap();
        assert_eq!(pr.params.n(), 15);
        assert_eq!(pr.params.k, 13);
        // k k' = 52 needs 6 header bits; budget 0.0375 * 15 * 14 = 7.875.
        assert_eq!(pr.params.rho, 1);
        assert!((pr.header_budget - 7.875).abs() < 1e-12);
        assert!((pr.params.beta - 0.2 / 8.0).abs() < 1e-12);
        // ln(2/β)/C_p = ln 80 / 3.84 = 1.14, next odd integer is 3.
        assert_eq!(pr.params.buffer, 3);
        let b = pr.params.buffer as f64;
        let bound = (2.0 / pr.params.beta).ln() / pr.params.c_p();
        assert!(b > bound && b - 2.0 <= bound);
    }

    #[test]
    fn preset_index_space_limit() {
        let e = preset(0.2, 0.02, 256, 16).unwrap_err();
        assert!(e.message.contains("62-bit"), "{e}");
    }

    #[test]
    fn preset_too_small_epsilon_is_infeasible() {
        let e = preset(0.2, 0.02, 16, 14).unwrap_err();
        assert!(e.message.contains("larger q"), "{e}");
        assert_eq!(e.exit_code(), 1);
    }
}
