//! Errors-and-erasures decoding of a Reed-Solomon code over GF(8).

use robust_gray::rs::OuterCode;
use robust_gray::{Field, FieldElement};

fn show(v: &[Option<FieldElement>]) -> String {
    v.iter()
        .map(|s| s.map_or("_".to_string(), |e| e.value().to_string()))
        .collect::<Vec<_>>()
        .join(" ")
}

fn main() {
    let code = OuterCode::new(Field::new(3).unwrap(), 3).unwrap();
    println!("[{}, {}, {}] over GF(8)", code.len(), code.dim(), code.distance());

    let msg: Vec<FieldElement> = [5, 0, 3].into_iter().map(FieldElement).collect();
    let cw = code.encode(&msg).unwrap();
    let mut rx: Vec<Option<FieldElement>> = cw.iter().copied().map(Some).collect();
    println!("sent     {}", show(&rx));

    // One error and two erasures: 2e + t = 4 < 5.
    rx[1] = Some(cw[1] + FieldElement(6));
    rx[4] = None;
    rx[6] = None;
    println!("received {}", show(&rx));
    let out = code.decode(&rx).unwrap();
    println!("decoded  {:?}", out.iter().map(|e| e.value()).collect::<Vec<_>>());

    // Beyond the radius the decoder either fails or lands on another codeword.
    rx[0] = Some(cw[0] + FieldElement(1));
    match code.decode(&rx) {
        Ok(m) => println!("with a second error: {:?}", m.iter().map(|e| e.value()).collect::<Vec<_>>()),
        Err(e) => println!("with a second error: {e}"),
    }
}
