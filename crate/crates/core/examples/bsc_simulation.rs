//! Monte Carlo tail estimate with CSV output, reproducible for any thread count.

use robust_gray::channel::{run_experiment, Experiment, Mode};
use robust_gray::report::{write_csv, SimulationReport};
use robust_gray::{CodeParams, RobustGrayCode};

fn main() {
    let params = CodeParams {
        p: 0.03,
        field_width: 3,
        k: 3,
        inner_n: 9,
        buffer: 11,
        rho: 3,
        beta: 0.1,
        xi: 0.5,
    };
    let code = RobustGrayCode::with_seeded_inner(params, 64, 1).unwrap();
    let exp = Experiment {
        trials: 20_000,
        t_grid: vec![1, 2, 4, 8, 16, 32, 64, 128],
        seed: 1,
        mode: Mode::Uniform,
    };
    let result = run_experiment(&code, &exp).unwrap();
    eprintln!("{:?}, failure rate {}", result.stats, result.failure_rate);
    let report = SimulationReport::new(&code, exp.seed, exp.mode, result);
    write_csv(&report.csv_rows(), std::io::stdout()).unwrap();
}
