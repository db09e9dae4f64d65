/// Which unary code a word is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryVariant {
    /// `1^j 0^(l-j)`
    Plain,
    /// `0^j 1^(l-j)`
    Complement,
}

pub fn unary_encode(j: usize, len: usize, variant: UnaryVariant) -> Vec<bool> {
    assert!(j <= len);
    let lead = variant == UnaryVariant::Plain;
    (0..len).map(|t| if t < j { lead } else { !lead }).collect()
}

/// Distance from `x` to the codeword of value `j`.
pub fn unary_distance(x: &[bool], j: usize, variant: UnaryVariant) -> usize {
    let lead = variant == UnaryVariant::Plain;
    x.iter()
        .enumerate()
        .filter(|&(t, &b)| b != if t < j { lead } else { !lead })
        .count()
}

/// Nearest unary codeword in one prefix-count pass; ties go to the smallest `j`.
pub fn unary_decode(x: &[bool], variant: UnaryVariant) -> usize {
    let lead = variant == UnaryVariant::Plain;
    // Start with j = 0: every bit should be !lead.
    let mut dist = x.iter().filter(|&&b| b == lead).count();
    let mut best = (dist, 0);
    for (t, &b) in x.iter().enumerate() {
        // Moving position t into the prefix swaps its expected value.
        if b == lead {
            dist -= 1;
        } else {
            dist += 1;
        }
        if dist < best.0 {
            best = (dist, t + 1);
        }
    }
    best.1
}
