//! Log/antilog arithmetic in GF(2^m).

use robust_gray::{Field, FieldElement};

fn main() {
    let f = Field::new(4).unwrap();
    println!("GF(16) modulo {:#x}, generator {}", f.polynomial(), f.generator());

    let a = FieldElement(0b0110);
    let b = FieldElement(0b1011);
    println!("{a} + {b} = {}", f.add(a, b));
    println!("{a} * {b} = {}", f.mul(a, b));
    let inv = f.inv(a).unwrap();
    println!("{a}^-1 = {inv}, check {}", f.mul(a, inv));
    println!("log {a} = {}, alpha^{} = {}", f.log(a).unwrap(), f.log(a).unwrap(), f.alpha_pow(f.log(a).unwrap()));

    print!("powers of alpha:");
    for e in 0..15 {
        print!(" {}", f.alpha_pow(e).value());
    }
    println!();
}
