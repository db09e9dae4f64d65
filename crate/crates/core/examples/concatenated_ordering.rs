//! Concatenated codewords ordered by the reflected Gray code: consecutive
//! codewords differ by one generator row.

use robust_gray::bits;
use robust_gray::concat::BaseCodebook;
use robust_gray::rs::OuterCode;
use robust_gray::{Field, InnerCode};

fn main() {
    let outer = OuterCode::new(Field::new(3).unwrap(), 2).unwrap();
    let inner = InnerCode::parse("100110\n010101\n001011").unwrap();
    let base = BaseCodebook::new(outer, inner).unwrap();
    println!("{} codewords of {} bits, {} generator rows", base.size(), base.bit_len(), base.rows());

    let mut prev = base.encode(0).unwrap().0;
    for i in 1..10u64 {
        let cur = base.encode(i).unwrap().0;
        let z = i.trailing_zeros() as usize;
        let diff = bits::xor(&prev, &cur);
        assert_eq!(diff, base.row(z).unwrap().0);
        println!("c_{i}: {}  (flipped row {z}, weight {})", bits::to_string(&cur), base.row_weight(z));
        prev = cur;
    }
}
