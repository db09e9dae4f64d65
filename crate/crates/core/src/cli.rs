//! Command line front end. The binary only parses arguments and maps the
//! returned error to an exit code.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bits;
use crate::channel::{self, Experiment};
use crate::config::{self, CliError, Format, RunConfig};
use crate::report::{self, SimulationReport};
use crate::robust_gray::{ConstraintReport, RobustGrayCode};
use crate::small_codes::estimate_pfail;

#[derive(Debug, Parser)]
#[command(name = "robust-gray", version, about = "Robust Gray codes for the binary symmetric channel")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the decoding conditions and report rate, length and size.
    Validate(CodeArgs),
    /// Print the codeword of index `j`.
    Encode {
        #[arg(long)]
        j: u64,
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Decode a word given as a 0/1 string (`-` reads stdin).
    Decode {
        word: String,
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Monte Carlo estimate of the deviation tail.
    Simulate(CodeArgs),
    /// Derive a parameter set from a target rate loss.
    Preset(PresetArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct CodeArgs {
    /// Flat `key = value` file; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long = "p")]
    pub p: Option<f64>,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long = "inner-n")]
    pub inner_n: Option<usize>,
    #[arg(long = "B")]
    pub buffer: Option<usize>,
    #[arg(long)]
    pub rho: Option<usize>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub xi: Option<f64>,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long = "t-grid")]
    pub t_grid: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub format: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// `uniform-j` or `fixed-j:J`.
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long = "inner-generator-file")]
    pub inner_generator_file: Option<PathBuf>,
    #[arg(long = "inner-candidates")]
    pub inner_candidates: Option<usize>,
    #[arg(long = "pfail-trials")]
    pub pfail_trials: Option<u64>,
}

impl CodeArgs {
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::parse(&read_to_string(path)?)?,
            None => RunConfig::default(),
        };
        let pairs: [(&str, Option<String>); 18] = [
            ("p", self.p.map(|v| v.to_string())),
            ("q", self.q.map(|v| v.to_string())),
            ("k", self.k.map(|v| v.to_string())),
            ("inner_n", self.inner_n.map(|v| v.to_string())),
            ("B", self.buffer.map(|v| v.to_string())),
            ("rho", self.rho.map(|v| v.to_string())),
            ("beta", self.beta.map(|v| v.to_string())),
            ("xi", self.xi.map(|v| v.to_string())),
            ("trials", self.trials.map(|v| v.to_string())),
            ("t_grid", self.t_grid.clone()),
            ("seed", self.seed.map(|v| v.to_string())),
            ("threads", self.threads.map(|v| v.to_string())),
            ("format", self.format.clone()),
            ("out", self.out.as_ref().map(|v| v.display().to_string())),
            ("mode", self.mode.clone()),
            (
                "inner_generator_file",
                self.inner_generator_file.as_ref().map(|v| v.display().to_string()),
            ),
            ("inner_candidates", self.inner_candidates.map(|v| v.to_string())),
            ("pfail_trials", self.pfail_trials.map(|v| v.to_string())),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                cfg.set(key, &v)?;
            }
        }
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Args)]
pub struct PresetArgs {
    #[arg(long)]
    pub epsilon: f64,
    #[arg(long = "p")]
    pub p: f64,
    #[arg(long, default_value_t = 256)]
    pub q: u64,
    #[arg(long = "inner-n")]
    pub inner_n: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long = "inner-candidates", default_value_t = 64)]
    pub inner_candidates: usize,
    #[arg(long = "pfail-trials", default_value_t = 20_000)]
    pub pfail_trials: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn read_to_string(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::io(e.to_string())
}

pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Validate(args) => cmd_validate(&args.resolve()?, stdout),
        Command::Encode { j, code } => cmd_encode(j, &code.resolve()?, stdout),
        Command::Decode { word, code } => {
            let text = if word == "-" {
                let mut s = String::new();
                std::io::stdin().read_line(&mut s).map_err(io_err)?;
                s
            } else {
                word
            };
            let x = bits::parse(&text)
                .ok_or_else(|| CliError::config("word must consist of 0 and 1 characters"))?;
            cmd_decode(&x, &code.resolve()?, stdout)
        }
        Command::Simulate(args) => cmd_simulate(&args.resolve()?, stdout),
        Command::Preset(args) => cmd_preset(&args, stdout),
    }
}

/// Estimate `p_fail` for the configured inner code and evaluate the conditions.
pub fn check(cfg: &RunConfig, code: &RobustGrayCode) -> Result<ConstraintReport, CliError> {
    let seed = cfg.seed.unwrap_or(0);
    let p_fail = estimate_pfail(code.base().inner(), cfg.params.p, cfg.pfail_trials, seed).estimate;
    Ok(cfg.params.constraints(p_fail))
}

fn write_constraints(r: &ConstraintReport, w: &mut dyn Write) -> std::io::Result<()> {
    writeln!(w, "C_p = {}", r.c_p)?;
    writeln!(w, "p_fail = {}", r.p_fail)?;
    writeln!(w, "delta_out = {}", r.delta_out)?;
    for c in &r.constraints {
        let tag = if c.holds { "pass" } else { "FAIL" };
        writeln!(w, "[{tag}] {}: lhs = {} rhs = {}", c.name, c.lhs, c.rhs)?;
    }
    Ok(())
}

fn failed(r: &ConstraintReport) -> CliError {
    let names: Vec<_> = r.failures().map(|c| c.name.clone()).collect();
    CliError::config(format!("decoding conditions violated: {}", names.join("; ")))
}

pub fn cmd_validate(cfg: &RunConfig, w: &mut dyn Write) -> Result<(), CliError> {
    let code = cfg.build()?;
    let report = check(cfg, &code)?;
    let inner = code.base().inner();
    (|| -> std::io::Result<()> {
        writeln!(w, "d = {}", code.len())?;
        writeln!(w, "N = {}", code.size())?;
        writeln!(w, "rate = {}", code.rate())?;
        writeln!(w, "rate_bound = {}", code.rate_bound())?;
        writeln!(w, "inner = [{}, {}, {}]", inner.len(), inner.dim(), inner.min_distance())?;
        write_constraints(&report, w)
    })()
    .map_err(io_err)?;
    if report.all_hold() {
        Ok(())
    } else {
        Err(failed(&report))
    }
}

pub fn cmd_encode(j: u64, cfg: &RunConfig, w: &mut dyn Write) -> Result<(), CliError> {
    let code = cfg.build()?;
    if j >= code.size() {
        return Err(CliError::config(format!(
            "j={j} out of range: valid indices are 0..{} (N = {})",
            code.size(),
            code.size()
        )));
    }
    let loc = code.locate(j)?;
    let word = bits::to_string(&code.encode(j)?);
    let res = match cfg.format {
        Format::Json => writeln!(
            w,
            "{}",
            serde_json::json!({"j": j, "d": code.len(), "N": code.size(), "interval": loc.interval, "word": word})
        ),
        Format::Csv => writeln!(
            w,
            "j = {j}\nd = {}\nN = {}\ninterval = {}\nword = {word}",
            code.len(),
            code.size(),
            loc.interval
        ),
    };
    res.map_err(io_err)
}

pub fn cmd_decode(x: &[bool], cfg: &RunConfig, w: &mut dyn Write) -> Result<(), CliError> {
    let code = cfg.build()?;
    let d = code.decode(x)?;
    let branch = serde_json::to_value(d.branch).expect("enum serializes");
    let res = match cfg.format {
        Format::Json => writeln!(
            w,
            "{}",
            serde_json::json!({"j_hat": d.j_hat, "branch": branch, "chunk_estimate": d.chunk_estimate})
        ),
        Format::Csv => writeln!(
            w,
            "j_hat = {}\nbranch = {}\nchunk_estimate = {}",
            d.j_hat,
            branch.as_str().unwrap_or_default(),
            d.chunk_estimate
        ),
    };
    res.map_err(io_err)
}

/// Run the experiment and render the results file body.
pub fn simulate_bytes(cfg: &RunConfig) -> Result<Vec<u8>, CliError> {
    let seed = cfg.require_seed()?;
    let code = cfg.build()?;
    let report = check(cfg, &code)?;
    if !report.all_hold() {
        return Err(failed(&report));
    }
    let exp = Experiment {
        trials: cfg.trials,
        t_grid: cfg.t_grid.clone(),
        seed,
        mode: cfg.mode,
    };
    let result = match cfg.threads {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| CliError::runtime(e.to_string()))?
            .install(|| channel::run_experiment(&code, &exp)),
        None => channel::run_experiment(&code, &exp),
    }?;
    let rep = SimulationReport::new(&code, seed, cfg.mode, result);
    let mut buf = Vec::new();
    match cfg.format {
        Format::Csv => report::write_csv(&rep.csv_rows(), &mut buf)
            .map_err(|e| CliError::runtime(e.to_string()))?,
        Format::Json => report::write_json(&rep, &mut buf).map_err(io_err)?,
    }
    Ok(buf)
}

pub fn cmd_simulate(cfg: &RunConfig, w: &mut dyn Write) -> Result<(), CliError> {
    let bytes = simulate_bytes(cfg)?;
    match &cfg.out {
        Some(path) => {
            fs::write(path, &bytes).map_err(|e| CliError::io(format!("{}: {e}", path.display())))
        }
        None => w.write_all(&bytes).map_err(io_err),
    }
}

pub fn cmd_preset(args: &PresetArgs, w: &mut dyn Write) -> Result<(), CliError> {
    let preset = config::preset(args.epsilon, args.p, args.q, args.inner_n)?;
    let cfg = RunConfig {
        params: preset.params,
        seed: Some(args.seed),
        inner_candidates: args.inner_candidates,
        pfail_trials: args.pfail_trials,
        ..RunConfig::default()
    };
    let code = cfg.build()?;
    let report = check(&cfg, &code)?;
    let inner_rate = code.base().inner().rate();
    let mut text = format!(
        "# epsilon = {}\n# header budget = {} bits, header length = {}\n\
         # d = {}, N = {}\n# rate = {}, target R_in - epsilon = {}\n",
        args.epsilon,
        preset.header_budget,
        code.header_code().len(),
        code.len(),
        code.size(),
        code.rate(),
        inner_rate - args.epsilon
    );
    let mut lines = Vec::new();
    write_constraints(&report, &mut lines).map_err(io_err)?;
    for line in String::from_utf8_lossy(&lines).lines() {
        text.push_str(&format!("# {line}\n"));
    }
    text.push_str(&cfg.to_text());
    match &args.out {
        Some(path) => fs::write(path, &text).map_err(|e| CliError::io(format!("{}: {e}", path.display())))?,
        None => w.write_all(text.as_bytes()).map_err(io_err)?,
    }
    if report.all_hold() {
        Ok(())
    } else {
        Err(failed(&report))
    }
}
