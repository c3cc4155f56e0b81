//! Scalar traits and the prime-field element type.
//!
//! Every kernel in the crate is written against [`Field`]; anything that needs
//! to enumerate, sample, or take roots additionally requires [`PrimeField`].

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use rand::Rng;

/// An exact commutative field.
pub trait Field:
    Copy
    + Eq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    /// Multiplicative inverse, `None` for zero.
    fn inv(self) -> Option<Self>;

    fn from_i64(v: i64) -> Self;

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }
}

/// A field of odd prime order `MODULUS`, with canonical residues in `[0, p)`.
pub trait PrimeField: Field + Ord + Hash + fmt::Display {
    const MODULUS: u64;

    fn from_u64(v: u64) -> Self;

    /// Canonical residue.
    fn value(self) -> u64;

    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::from_u64(rng.gen_range(0..Self::MODULUS))
    }

    fn random_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::from_u64(rng.gen_range(1..Self::MODULUS))
    }
}

/// Residue class modulo the compile-time prime `P`.
///
/// `P` must be an odd prime below 2^32 so that products fit in a `u64`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub const fn new(v: u64) -> Self {
        Fp(v % P)
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Fp(if self.0 >= rhs.0 {
            self.0 - rhs.0
        } else {
            self.0 + P - rhs.0
        })
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        Fp(self.0 * rhs.0 % P)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero in Fp")
    }
}

impl<const P: u64> AddAssign for Fp<P> {
    #[inline]
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<const P: u64> SubAssign for Fp<P> {
    #[inline]
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<const P: u64> MulAssign for Fp<P> {
    #[inline]
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn inv(self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // extended Euclid on (a, P)
        let (mut r0, mut r1) = (P as i128, self.0 as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(Fp(t0.rem_euclid(P as i128) as u64))
    }

    fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }
}

impl<const P: u64> PrimeField for Fp<P> {
    const MODULUS: u64 = P;

    fn from_u64(v: u64) -> Self {
        Fp(v % P)
    }

    fn value(self) -> u64 {
        self.0
    }
}

/// Dot product of two equal-length slices.
pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(F::zero(), |acc, (&x, &y)| acc + x * y)
}

/// Scales `v` so that its first nonzero entry is 1. Returns `false` for the zero vector.
pub fn normalize_first_nonzero<F: Field>(v: &mut [F]) -> bool {
    let Some(lead) = v.iter().copied().find(|x| !x.is_zero()) else {
        return false;
    };
    let inv = lead.inv().expect("nonzero");
    for x in v.iter_mut() {
        *x *= inv;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    type F7 = Fp<7>;
    type Big = Fp<1_000_003>;

    #[test]
    fn inverse_roundtrip() {
        for v in 1..7 {
            let x = F7::new(v);
            assert_eq!(x * x.inv().unwrap(), F7::one());
        }
        assert!(F7::zero().inv().is_none());
        for v in [1u64, 2, 999_999, 1_000_002, 123_456] {
            let x = Big::new(v);
            assert_eq!(x * x.inv().unwrap(), Big::one());
        }
    }

    #[test]
    fn negative_conversion() {
        assert_eq!(F7::from_i64(-2), F7::new(5));
        assert_eq!(-F7::new(3), F7::new(4));
        assert_eq!(F7::new(2) - F7::new(5), F7::new(4));
    }

    #[test]
    fn fermat() {
        let x = Big::new(424_242);
        assert_eq!(x.pow(Big::MODULUS - 1), Big::one());
    }

    #[test]
    fn normalization() {
        let mut v = vec![F7::zero(), F7::new(3), F7::new(6)];
        assert!(normalize_first_nonzero(&mut v));
        assert_eq!(v, vec![F7::zero(), F7::one(), F7::new(2)]);
        let mut z = vec![F7::zero(); 3];
        assert!(!normalize_first_nonzero(&mut z));
    }
}
