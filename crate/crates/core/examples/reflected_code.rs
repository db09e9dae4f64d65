//! The binary reflected Gray code, its inverse and per-coordinate flip counts.

use robust_gray::bits;
use robust_gray::brc::{brc_decode, brc_encode, flip_count, flip_index};

fn main() {
    let k = 4;
    println!(" i  R_k(i)  flips z  N(0,i) N(1,i) N(2,i) N(3,i)");
    for i in 0..1u64 << k {
        let g = brc_encode(i, k).unwrap();
        assert_eq!(brc_decode(&g), i);
        let z = if i == 0 { "-".to_string() } else { flip_index(i, k).unwrap().to_string() };
        let counts: Vec<String> = (0..k).map(|z| format!("{:>6}", flip_count(z, i))).collect();
        println!("{i:>2}  {}    {z:>5} {}", bits::to_string(&g), counts.join(" "));
    }
}
