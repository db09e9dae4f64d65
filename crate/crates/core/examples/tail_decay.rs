//! Deviation tail at desk scale: q = 16, k = 11, a [14, 4] inner code,
//! B = 25, β = 0.05 over BSC(0.02).
//!
//! ```text
//! cargo run --release --example tail_decay -- [trials] [inner candidates] [seed]
//! ```

use robust_gray::channel::{run_experiment, Experiment, Mode};
use robust_gray::{CodeParams, RobustGrayCode};

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("integer argument"));
    let trials = args.next().unwrap_or(10_000);
    let candidates = args.next().unwrap_or(4096) as usize;
    let seed = args.next().unwrap_or(2024);

    let params = CodeParams {
        p: 0.02,
        field_width: 4,
        k: 11,
        inner_n: 14,
        buffer: 25,
        rho: 7,
        beta: 0.05,
        xi: 0.5,
    };
    let code = RobustGrayCode::with_seeded_inner(params, candidates, seed).unwrap();
    println!(
        "d = {}, N = {}, rate = {:.4}, inner d_min = {}",
        code.len(),
        code.size(),
        code.rate(),
        code.base().inner().min_distance()
    );

    let exp = Experiment {
        trials,
        t_grid: vec![1, 2, 5, 10, 20, 50, 100, 200, 500, 1000],
        seed,
        mode: Mode::Uniform,
    };
    let start = std::time::Instant::now();
    let r = run_experiment(&code, &exp).unwrap();
    println!("{trials} trials in {:.1?}", start.elapsed());
    println!("{:>6} {:>10} {:>10} {:>10}", "t", "tail", "ci_low", "ci_high");
    for p in &r.tails {
        println!("{:>6} {:>10.6} {:>10.6} {:>10.6}", p.t, p.tail_estimate, p.ci_low, p.ci_high);
    }
    println!("branches: {:?}", r.stats);
    println!("mean deviation {:.3}, mean noise weight {:.2}", r.mean_deviation, r.mean_noise_weight);
}
