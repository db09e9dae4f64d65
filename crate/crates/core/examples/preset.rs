//! Derive parameters from a target rate loss and check the decoding conditions.

use robust_gray::config::preset;
use robust_gray::small_codes::estimate_pfail;
use robust_gray::RobustGrayCode;

fn main() {
    for (eps, q, inner_n) in [(0.2, 16, 14), (0.3, 16, 14), (0.45, 8, 9), (0.2, 256, 16)] {
        match preset(eps, 0.02, q, inner_n) {
            Err(e) => println!("epsilon {eps}, q {q}: {e}"),
            Ok(pr) => {
                let code = RobustGrayCode::with_seeded_inner(pr.params, 256, 1).unwrap();
                let p_fail = estimate_pfail(code.base().inner(), pr.params.p, 20_000, 1).estimate;
                let report = pr.params.constraints(p_fail);
                println!(
                    "epsilon {eps}, q {q}: k = {}, rho = {}, B = {}, beta = {:.4}, rate {:.4} vs R_in - epsilon = {:.4}",
                    pr.params.k,
                    pr.params.rho,
                    pr.params.buffer,
                    pr.params.beta,
                    code.rate(),
                    code.base().inner().rate() - eps
                );
                for c in &report.constraints {
                    println!("    {:<5} {}: {:.4e} vs {:.4e}", c.holds, c.name, c.lhs, c.rhs);
                }
            }
        }
    }
}
