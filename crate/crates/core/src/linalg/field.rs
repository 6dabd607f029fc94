//! Prime fields `F_p` with `p < 2^31`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::LinalgError;

/// An element of a prime field, always stored as its canonical residue in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Caller guarantees `v < p`.
    #[inline]
    pub(crate) fn from_reduced(v: u32) -> FieldElem {
        FieldElem(v)
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The prime field `F_p`.
///
/// Elements do not carry their modulus; every arithmetic operation goes through
/// the field so that mixing moduli is impossible without an explicit conversion.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

pub const MAX_PRIME: u64 = (1 << 31) - 1;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, LinalgError> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn zero(self) -> FieldElem {
        FieldElem::ZERO
    }

    #[inline]
    pub fn one(self) -> FieldElem {
        FieldElem::ONE
    }

    /// Reduces an arbitrary signed integer.
    #[inline]
    pub fn elem(self, v: i64) -> FieldElem {
        FieldElem(v.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    pub fn from_u64(self, v: u64) -> FieldElem {
        FieldElem((v % self.p as u64) as u32)
    }

    #[inline]
    pub fn add(self, a: FieldElem, b: FieldElem) -> FieldElem {
        let s = a.0 as u64 + b.0 as u64;
        let p = self.p as u64;
        FieldElem(if s >= p { s - p } else { s } as u32)
    }

    #[inline]
    pub fn sub(self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 >= b.0 {
            FieldElem(a.0 - b.0)
        } else {
            FieldElem((a.0 as u64 + self.p as u64 - b.0 as u64) as u32)
        }
    }

    #[inline]
    pub fn neg(self, a: FieldElem) -> FieldElem {
        if a.0 == 0 {
            a
        } else {
            FieldElem(self.p - a.0)
        }
    }

    #[inline]
    pub fn mul(self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32)
    }

    /// `a + b * c`
    #[inline]
    pub fn mul_add(self, a: FieldElem, b: FieldElem, c: FieldElem) -> FieldElem {
        FieldElem(((a.0 as u64 + b.0 as u64 * c.0 as u64) % self.p as u64) as u32)
    }

    pub fn pow(self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut base = a;
        let mut acc = FieldElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: FieldElem) -> Option<FieldElem> {
        if a.is_zero() {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, a.0 as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.elem(s0))
    }

    /// All field elements in increasing order.
    pub fn elements(self) -> impl Iterator<Item = FieldElem> {
        (0..self.p).map(FieldElem)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites_and_out_of_range() {
        assert!(PrimeField::new(0).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(91).is_err());
        assert!(PrimeField::new(MAX_PRIME + 2).is_err());
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(MAX_PRIME).is_ok());
    }

    #[test]
    fn inverse_table_f7() {
        let k = PrimeField::new(7).unwrap();
        for a in k.elements().skip(1) {
            let b = k.inv(a).unwrap();
            assert_eq!(k.mul(a, b), k.one());
        }
        assert_eq!(k.inv(k.zero()), None);
        assert_eq!(k.inv(k.elem(2)), Some(k.elem(4)));
    }

    #[test]
    fn large_prime_arithmetic_stays_reduced() {
        let k = PrimeField::new(MAX_PRIME).unwrap();
        let a = k.elem(-1);
        assert_eq!(a.value() as u64, MAX_PRIME - 1);
        assert_eq!(k.mul(a, a), k.one());
        assert_eq!(k.add(a, k.one()), k.zero());
        assert_eq!(k.mul(a, k.inv(a).unwrap()), k.one());
    }
}
