//! Arithmetic in GF(2^m) for 2 <= m <= 16.
//!
//! Each width uses one fixed primitive polynomial: the numerically smallest
//! primitive polynomial of that degree. Polynomials are written as bit
//! masks including the leading term (bit `m`).
//!
//! | m | polynomial | m | polynomial |
//! |---|------------|---|------------|
//! | 2 | `0x7`      | 10 | `0x409`   |
//! | 3 | `0xb`      | 11 | `0x805`   |
//! | 4 | `0x13`     | 12 | `0x1053`  |
//! | 5 | `0x25`     | 13 | `0x201b`  |
//! | 6 | `0x43`     | 14 | `0x402b`  |
//! | 7 | `0x83`     | 15 | `0x8003`  |
//! | 8 | `0x11d`    | 16 | `0x1002d` |
//! | 9 | `0x211`    |    |           |

use std::fmt;
use std::ops::Add;

use crate::error::{Error, Result};

/// Primitive polynomial for width `m`, indexed by `m - 2`.
pub const PRIMITIVE_POLYS: [u32; 15] = [
    0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11d, 0x211, 0x409, 0x805, 0x1053, 0x201b, 0x402b, 0x8003,
    0x1002d,
];

/// An element of GF(2^m); the bits are polynomial coefficients, bit 0 first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(pub u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn value(self) -> u16 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl Add for FieldElement {
    type Output = FieldElement;

    #[inline]
    fn add(self, rhs: FieldElement) -> FieldElement {
        FieldElement(self.0 ^ rhs.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

/// Field context with log/antilog tables. Immutable once built.
#[derive(Clone)]
pub struct Field {
    m: u32,
    poly: u32,
    // exp has 2 * (q - 1) entries so products of logs need no reduction.
    exp: Vec<u16>,
    log: Vec<u16>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("m", &self.m)
            .field("poly", &format_args!("{:#x}", self.poly))
            .finish()
    }
}

impl Field {
    pub fn new(m: u32) -> Result<Self> {
        if !(2..=16).contains(&m) {
            return Err(Error::FieldWidth(m));
        }
        let poly = PRIMITIVE_POLYS[(m - 2) as usize];
        let q = 1usize << m;
        let mut exp = vec![0u16; 2 * (q - 1)];
        let mut log = vec![0u16; q];
        let mut x: u32 = 1;
        for e in 0..q - 1 {
            exp[e] = x as u16;
            log[x as usize] = e as u16;
            x <<= 1;
            if x & (1 << m) != 0 {
                x ^= poly;
            }
        }
        debug_assert_eq!(x, 1, "polynomial {poly:#x} is not primitive");
        for e in q - 1..2 * (q - 1) {
            exp[e] = exp[e - (q - 1)];
        }
        Ok(Field { m, poly, exp, log })
    }

    #[inline]
    pub fn width(&self) -> u32 {
        self.m
    }

    /// Field order q = 2^m.
    #[inline]
    pub fn order(&self) -> usize {
        1 << self.m
    }

    #[inline]
    pub fn polynomial(&self) -> u32 {
        self.poly
    }

    /// The primitive element α (the class of `x`).
    #[inline]
    pub fn generator(&self) -> FieldElement {
        FieldElement(2)
    }

    pub fn element(&self, value: u32) -> Result<FieldElement> {
        if (value as usize) < self.order() {
            Ok(FieldElement(value as u16))
        } else {
            Err(Error::OutOfRange {
                what: "field element",
                value: value as u64,
                bound: self.order() as u64,
            })
        }
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        a + b
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let e = self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize;
        FieldElement(self.exp[e])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        let n = self.order() - 1;
        let l = self.log[a.0 as usize] as usize;
        Some(FieldElement(self.exp[(n - l) % n]))
    }

    /// α^e for any exponent.
    pub fn alpha_pow(&self, e: usize) -> FieldElement {
        FieldElement(self.exp[e % (self.order() - 1)])
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let n = (self.order() - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        FieldElement(self.exp[((l * (e % n)) % n) as usize])
    }

    /// Discrete log base α; `None` for zero.
    pub fn log(&self, a: FieldElement) -> Option<usize> {
        (!a.is_zero()).then(|| self.log[a.0 as usize] as usize)
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FieldElement) -> Option<usize> {
        let l = self.log(a)?;
        let n = self.order() - 1;
        Some(n / gcd(n, l))
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
