//! Small helpers for bit words stored as `bool` slices.

/// Hamming distance; panics if the lengths differ.
pub fn hamming(a: &[bool], b: &[bool]) -> usize {
    assert_eq!(a.len(), b.len(), "hamming distance of unequal lengths");
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

pub fn weight(a: &[bool]) -> usize {
    a.iter().filter(|&&x| x).count()
}

pub fn xor(a: &[bool], b: &[bool]) -> Vec<bool> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x ^ y).collect()
}

pub fn xor_into(acc: &mut [bool], other: &[bool]) {
    assert_eq!(acc.len(), other.len());
    for (a, b) in acc.iter_mut().zip(other) {
        *a ^= *b;
    }
}

/// The low `len` bits of `value`, least significant first.
pub fn from_u64(value: u64, len: usize) -> Vec<bool> {
    (0..len).map(|t| t < 64 && value >> t & 1 == 1).collect()
}

/// Inverse of [`from_u64`]; bits beyond 64 are ignored.
pub fn to_u64(bits: &[bool]) -> u64 {
    bits.iter()
        .take(64)
        .enumerate()
        .fold(0, |acc, (t, &b)| acc | (b as u64) << t)
}

/// Render as a string of `0`/`1` characters.
pub fn to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Parse a `0`/`1` string, ignoring whitespace.
pub fn parse(s: &str) -> Option<Vec<bool>> {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })
        .collect()
}

/// Hex rendering, four bits per digit, first bit as the high bit of the first digit.
pub fn to_hex(bits: &[bool]) -> String {
    bits.chunks(4)
        .map(|nib| {
            let v = nib
                .iter()
                .enumerate()
                .fold(0u32, |acc, (t, &b)| acc | (b as u32) << (3 - t));
            char::from_digit(v, 16).unwrap()
        })
        .collect()
}
