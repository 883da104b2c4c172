// SPDX-License-Identifier: Apache-2.0
//! Arithmetic in GF(2^k) for 2 <= k <= 32.
//!
//! Elements are polynomials over GF(2) packed into the low `k` bits of a
//! `u32`. Each degree uses a fixed low-weight irreducible modulus:
//!
//! | k  | modulus                  | k  | modulus                      |
//! |----|--------------------------|----|------------------------------|
//! | 2  | x^2 + x + 1              | 18 | x^18 + x^7 + 1               |
//! | 3  | x^3 + x + 1              | 19 | x^19 + x^5 + x^2 + x + 1     |
//! | 4  | x^4 + x + 1              | 20 | x^20 + x^3 + 1               |
//! | 5  | x^5 + x^2 + 1            | 21 | x^21 + x^2 + 1               |
//! | 6  | x^6 + x + 1              | 22 | x^22 + x + 1                 |
//! | 7  | x^7 + x + 1              | 23 | x^23 + x^5 + 1               |
//! | 8  | x^8 + x^4 + x^3 + x + 1  | 24 | x^24 + x^4 + x^3 + x + 1     |
//! | 9  | x^9 + x^4 + 1            | 25 | x^25 + x^3 + 1               |
//! | 10 | x^10 + x^3 + 1           | 26 | x^26 + x^4 + x^3 + x + 1     |
//! | 11 | x^11 + x^2 + 1           | 27 | x^27 + x^5 + x^2 + x + 1     |
//! | 12 | x^12 + x^3 + 1           | 28 | x^28 + x^3 + 1               |
//! | 13 | x^13 + x^4 + x^3 + x + 1 | 29 | x^29 + x^2 + 1               |
//! | 14 | x^14 + x^5 + 1           | 30 | x^30 + x + 1                 |
//! | 15 | x^15 + x + 1             | 31 | x^31 + x^3 + 1               |
//! | 16 | x^16 + x^5 + x^3 + x + 1 | 32 | x^32 + x^7 + x^3 + x^2 + 1   |
//! | 17 | x^17 + x^3 + 1           |    |                              |

use std::fmt;
use thiserror::Error;

pub const MIN_DEGREE: u32 = 2;
pub const MAX_DEGREE: u32 = 32;

/// Moduli indexed by `k`, with the `x^k` term included.
const MODULI: [u64; 33] = [
    0,
    0,
    0b111,
    0b1011,
    0b10011,
    (1 << 5) | 0b101,
    (1 << 6) | 0b11,
    (1 << 7) | 0b11,
    0x11B,
    (1 << 9) | (1 << 4) | 1,
    (1 << 10) | (1 << 3) | 1,
    (1 << 11) | (1 << 2) | 1,
    (1 << 12) | (1 << 3) | 1,
    (1 << 13) | 0b11011,
    (1 << 14) | (1 << 5) | 1,
    (1 << 15) | 0b11,
    (1 << 16) | 0b101011,
    (1 << 17) | (1 << 3) | 1,
    (1 << 18) | (1 << 7) | 1,
    (1 << 19) | 0b100111,
    (1 << 20) | (1 << 3) | 1,
    (1 << 21) | (1 << 2) | 1,
    (1 << 22) | 0b11,
    (1 << 23) | (1 << 5) | 1,
    (1 << 24) | 0b11011,
    (1 << 25) | (1 << 3) | 1,
    (1 << 26) | 0b11011,
    (1 << 27) | 0b100111,
    (1 << 28) | (1 << 3) | 1,
    (1 << 29) | (1 << 2) | 1,
    (1 << 30) | 0b11,
    (1 << 31) | (1 << 3) | 1,
    (1 << 32) | 0b10001101,
];

/// The reduction polynomial for degree `k`, `x^k` bit included.
pub fn modulus(k: u32) -> Option<u64> {
    (MIN_DEGREE..=MAX_DEGREE).contains(&k).then(|| MODULI[k as usize])
}

/// Smallest `k` with `2^k > m`, clamped to at least 2.
pub fn degree_for(m: usize) -> u32 {
    let bits = usize::BITS - m.leading_zeros();
    bits.max(MIN_DEGREE)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GfError {
    #[error("unsupported field degree {0}")]
    BadDegree(u32),
    #[error("value {value:#x} does not fit in {k} bits")]
    OutOfRange { value: u64, k: u32 },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("zero has no inverse")]
    ZeroInverse,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    bits: u32,
    k: u8,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#0w$b}@GF(2^{})", self.bits, self.k, w = self.k as usize + 2)
    }
}

impl FieldElement {
    pub fn new(k: u32, bits: u64) -> Result<Self, GfError> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&k) {
            return Err(GfError::BadDegree(k));
        }
        if k < 64 && bits >> k != 0 {
            return Err(GfError::OutOfRange { value: bits, k });
        }
        Ok(FieldElement {
            bits: bits as u32,
            k: k as u8,
        })
    }

    pub fn zero(k: u32) -> Result<Self, GfError> {
        Self::new(k, 0)
    }

    pub fn one(k: u32) -> Result<Self, GfError> {
        Self::new(k, 1)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn degree(&self) -> u32 {
        self.k as u32
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    fn same_k(&self, other: &Self) -> Result<(), GfError> {
        if self.k == other.k {
            Ok(())
        } else {
            Err(GfError::DegreeMismatch(self.k as u32, other.k as u32))
        }
    }

    pub fn add(self, other: Self) -> Result<Self, GfError> {
        self.same_k(&other)?;
        Ok(FieldElement {
            bits: self.bits ^ other.bits,
            k: self.k,
        })
    }

    pub fn mul(self, other: Self) -> Result<Self, GfError> {
        self.same_k(&other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(self, other: Self) -> Self {
        let k = self.k as u32;
        let prod = clmul(self.bits, other.bits);
        FieldElement {
            bits: reduce(prod, k),
            k: self.k,
        }
    }

    /// `x^(2^k - 2)`, which is `x^-1` for nonzero `x`.
    pub fn inv(self) -> Result<Self, GfError> {
        if self.bits == 0 {
            return Err(GfError::ZeroInverse);
        }
        // 2^k - 2 = 2 + 4 + ... + 2^(k-1): multiply together the k-1 successive squares.
        let mut s = self;
        let mut r = FieldElement { bits: 1, k: self.k };
        for _ in 1..self.k {
            s = s.mul_unchecked(s);
            r = r.mul_unchecked(s);
        }
        Ok(r)
    }
}

/// Carry-less 32x32 -> 64 bit product.
fn clmul(a: u32, b: u32) -> u64 {
    let a = a as u64;
    let mut b = b;
    let mut r = 0u64;
    while b != 0 {
        let i = b.trailing_zeros();
        r ^= a << i;
        b &= b - 1;
    }
    r
}

fn reduce(mut x: u64, k: u32) -> u32 {
    let m = MODULI[k as usize];
    while x >> k != 0 {
        let top = 63 - x.leading_zeros();
        x ^= m << (top - k);
    }
    x as u32
}
