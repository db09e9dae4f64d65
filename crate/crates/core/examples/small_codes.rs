//! Unary codes, repetition headers and majority vote.

use robust_gray::bits;
use robust_gray::small_codes::{majority, unary_decode, unary_encode, RepetitionParams, UnaryVariant};

fn main() {
    let word = unary_encode(5, 12, UnaryVariant::Plain);
    let mut noisy = word.clone();
    noisy[1] ^= true;
    noisy[9] ^= true;
    println!("unary 5:      {}", bits::to_string(&word));
    println!("received:     {}", bits::to_string(&noisy));
    println!("decoded:      {}", unary_decode(&noisy, UnaryVariant::Plain));

    let comp = unary_encode(5, 12, UnaryVariant::Complement);
    println!("complement 5: {} -> {}", bits::to_string(&comp), unary_decode(&comp, UnaryVariant::Complement));

    let header = RepetitionParams::new(44, 5).unwrap();
    let mut h = header.encode(37).unwrap();
    println!("header of 37 ({} bits): {}", header.len(), bits::to_string(&h));
    for t in [0, 6, 11, 22] {
        h[t] ^= true;
    }
    println!("after 4 flips decodes to {}", header.decode(&h).unwrap());
    println!("majority(10110) = {}", majority(&bits::parse("10110").unwrap()));
}
