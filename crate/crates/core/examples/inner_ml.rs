//! Brute-force maximum-likelihood decoding of a small binary linear code.

use robust_gray::bits;
use robust_gray::small_codes::estimate_pfail;
use robust_gray::InnerCode;

fn main() {
    let code = InnerCode::seeded(4, 14, 256, 2024).unwrap();
    println!("[{}, {}] code, d_min = {}", code.len(), code.dim(), code.min_distance());
    print!("{}", code.to_text());

    let msg = 0b1011;
    let mut y = code.encode(msg);
    println!("codeword {}", bits::to_string(&y));
    for pos in [0, 5, 13].iter().take((code.min_distance() - 1) / 2) {
        y[*pos] ^= true;
    }
    println!("received {} -> {:04b}", bits::to_string(&y), code.decode(&y));

    for p in [0.01, 0.02, 0.05, 0.1] {
        let est = estimate_pfail(&code, p, 20_000, 1);
        println!("p = {p:<5} p_fail <= {:.5} over {} messages", est.estimate, est.messages);
    }
}
