//! Binary extension fields `GF(2^gamma)` for `1 <= gamma <= 16`, with
//! log/antilog tables.
//!
//! The primitive polynomial per degree is fixed (conventional choices) so
//! that codewords are bit-compatible across implementations.

use crate::error::{Error, Result};

/// Primitive polynomials, index = gamma; value includes the leading term
/// (e.g. gamma = 4 -> x^4 + x + 1 = 0b1_0011).
pub const PRIMITIVE_POLY: [u32; 17] = [
    0, 0x3, 0x7, 0xB, 0x13, 0x25, 0x43, 0x89, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B,
    0x4443, 0x8003, 0x1100B,
];

/// Field tables for `GF(2^gamma)`.
pub struct Field {
    pub gamma: u32,
    pub order: u32,
    exp: Vec<u16>,
    log: Vec<u16>,
}

impl Field {
    pub fn new(gamma: u32) -> Result<Field> {
        if !(1..=16).contains(&gamma) {
            return Err(Error::InvalidParams(format!("gamma must be in [1, 16], got {gamma}")));
        }
        let order = 1u32 << gamma;
        let poly = PRIMITIVE_POLY[gamma as usize];
        let n = (order - 1) as usize;
        let mut exp = vec![0u16; 2 * n];
        let mut log = vec![0u16; order as usize];
        let mut v = 1u32;
        for i in 0..n {
            exp[i] = v as u16;
            log[v as usize] = i as u16;
            v <<= 1;
            if v & order != 0 {
                v ^= poly;
            }
        }
        debug_assert_eq!(v, 1, "polynomial for gamma={gamma} is not primitive");
        for i in n..2 * n {
            exp[i] = exp[i - n];
        }
        Ok(Field { gamma, order, exp, log })
    }

    #[inline]
    pub fn num_elements(&self) -> usize {
        self.order as usize
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            0
        } else {
            let n = (self.order - 1) as usize;
            self.exp[(self.log[a as usize] as usize + self.log[b as usize] as usize) % (2 * n)]
        }
    }

    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        assert!(a != 0, "inverse of zero");
        let n = (self.order - 1) as usize;
        self.exp[n - self.log[a as usize] as usize]
    }

    #[inline]
    pub fn div(&self, a: u16, b: u16) -> u16 {
        self.mul(a, self.inv(b))
    }

    /// `alpha^i` for the fixed primitive element alpha.
    #[inline]
    pub fn alpha_pow(&self, i: usize) -> u16 {
        self.exp[i % (self.order as usize - 1)]
    }

    /// Evaluates a polynomial (coefficients low-to-high) at `x`.
    pub fn poly_eval(&self, poly: &[u16], x: u16) -> u16 {
        let mut acc = 0u16;
        for &c in poly.iter().rev() {
            acc = self.add(self.mul(acc, x), c);
        }
        acc
    }

    /// Polynomial product (coefficients low-to-high).
    pub fn poly_mul(&self, a: &[u16], b: &[u16]) -> Vec<u16> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u16; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] ^= self.mul(ai, bj);
            }
        }
        out
    }
}
