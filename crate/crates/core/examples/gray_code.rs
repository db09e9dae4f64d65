//! Encode, corrupt and decode with a small robust Gray code.

use rand::SeedableRng;
use robust_gray::channel::bsc_sample;
use robust_gray::{bits, CodeParams, InnerCode, RobustGrayCode};

fn main() {
    let params = CodeParams {
        p: 0.05,
        field_width: 3,
        k: 2,
        inner_n: 6,
        buffer: 5,
        rho: 3,
        beta: 0.1,
        xi: 0.5,
    };
    let inner = InnerCode::parse("100110\n010101\n001011").unwrap();
    let code = RobustGrayCode::new(params, inner).unwrap();
    println!("d = {}, N = {}, rate = {:.4} (bound {:.4})", code.len(), code.size(), code.rate(), code.rate_bound());

    for j in [0, 1, 2, 1234, 1235] {
        let loc = code.locate(j).unwrap();
        println!("g_{j:<4} interval {:>2} offset {:>2}  {}", loc.interval, loc.offset, code.encode_hex(j).unwrap());
    }

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
    for j in [17, 900, 2500, 4000] {
        let mut x = code.encode(j).unwrap();
        let noise = bsc_sample(x.len(), params.p, &mut rng);
        bits::xor_into(&mut x, &noise);
        match code.decode(&x) {
            Ok(d) => println!(
                "j = {j:<4} {} flips -> {:<4} ({:?}, chunk {})",
                bits::weight(&noise),
                d.j_hat,
                d.branch,
                d.chunk_estimate
            ),
            Err(e) => println!("j = {j:<4} {} flips -> {e}", bits::weight(&noise)),
        }
    }
}
