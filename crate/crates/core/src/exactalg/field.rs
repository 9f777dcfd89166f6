use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational, always kept reduced with a positive
/// denominator.
pub type Rat = BigRational;

/// Two fixed primes just below 2^61 used by the modular fast path.
pub const DEFAULT_PRIMES: [u64; 2] = [2_305_843_009_213_693_951, 2_305_843_009_213_693_921];

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Ring element usable as a polynomial or matrix coefficient.
///
/// Prime-field elements carry their modulus, so the additive and
/// multiplicative identities are produced from an existing element.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn is_zero_coeff(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    /// Image of an integer in the same ring.
    fn from_i64_like(&self, n: i64) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn add_assign_coeff(&mut self, o: &Self) {
        *self = self.plus(o);
    }
}

pub trait FieldElem: Coeff {
    fn inv(&self) -> Option<Self>;
}

impl Coeff for Rat {
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Rat::from_integer(BigInt::from(n))
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn add_assign_coeff(&mut self, o: &Self) {
        *self += o;
    }
}

impl FieldElem for Rat {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Element of the prime field `F_p` for a runtime prime `p < 2^63`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: u64, modulus: u64) -> Self {
        Fp {
            value: value % modulus,
            modulus,
        }
    }

    pub fn from_i64(n: i64, modulus: u64) -> Self {
        let r = n.rem_euclid(modulus as i64);
        Fp::new(r as u64, modulus)
    }

    pub fn from_bigint(n: &BigInt, modulus: u64) -> Self {
        let r = n.mod_floor(&BigInt::from(modulus));
        Fp::new(r.to_u64().expect("reduced residue fits in u64"), modulus)
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::new(1, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add<&Fp> for &Fp {
    type Output = Fp;
    fn add(self, o: &Fp) -> Fp {
        debug_assert_eq!(self.modulus, o.modulus);
        let s = self.value as u128 + o.value as u128;
        Fp {
            value: (s % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }
}

impl Sub<&Fp> for &Fp {
    type Output = Fp;
    fn sub(self, o: &Fp) -> Fp {
        debug_assert_eq!(self.modulus, o.modulus);
        let v = if self.value >= o.value {
            self.value - o.value
        } else {
            self.modulus - (o.value - self.value)
        };
        Fp {
            value: v,
            modulus: self.modulus,
        }
    }
}

impl Mul<&Fp> for &Fp {
    type Output = Fp;
    fn mul(self, o: &Fp) -> Fp {
        debug_assert_eq!(self.modulus, o.modulus);
        let m = self.value as u128 * o.value as u128;
        Fp {
            value: (m % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }
}

impl Neg for &Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            value: if self.value == 0 {
                0
            } else {
                self.modulus - self.value
            },
            modulus: self.modulus,
        }
    }
}

impl Coeff for Fp {
    fn is_zero_coeff(&self) -> bool {
        self.value == 0
    }
    fn zero_like(&self) -> Self {
        Fp::new(0, self.modulus)
    }
    fn one_like(&self) -> Self {
        Fp::new(1, self.modulus)
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Fp::from_i64(n, self.modulus)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
}

impl FieldElem for Fp {
    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        // extended Euclid on i128 to stay exact for moduli near 2^63
        let (mut r0, mut r1) = (self.modulus as i128, self.value as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        if r0 != 1 {
            return None;
        }
        let v = s0.rem_euclid(self.modulus as i128) as u64;
        Some(Fp::new(v, self.modulus))
    }
}

/// Reduction modulo a prime. Fails when a stored denominator is divisible
/// by the prime.
pub trait ModP {
    type Output;
    fn modp(&self, prime: u64) -> Result<Self::Output>;
}

impl ModP for Rat {
    type Output = Fp;
    fn modp(&self, prime: u64) -> Result<Fp> {
        let den = Fp::from_bigint(self.denom(), prime);
        let inv = den.inv().ok_or(Error::DenominatorDivisibleByP { prime })?;
        Ok(&Fp::from_bigint(self.numer(), prime) * &inv)
    }
}

/// Least common multiple of the denominators, as a positive integer.
pub(crate) fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_sixths_mod_seven() {
        assert_eq!(rat(5, 6).modp(7).unwrap().value(), 2);
    }

    #[test]
    fn seventh_mod_seven_fails() {
        assert_eq!(
            rat(1, 7).modp(7),
            Err(Error::DenominatorDivisibleByP { prime: 7 })
        );
    }

    #[test]
    fn negative_rationals_reduce() {
        let p = DEFAULT_PRIMES[0];
        let a = rat(-3, 4).modp(p).unwrap();
        let four = Fp::new(4, p);
        assert_eq!(&a * &four, Fp::from_i64(-3, p));
    }

    #[test]
    fn inverse_near_2_61() {
        for &p in &DEFAULT_PRIMES {
            for v in [1u64, 2, 12345, p - 1, p / 3] {
                let a = Fp::new(v, p);
                assert_eq!(&a * &a.inv().unwrap(), Fp::new(1, p));
            }
        }
    }

    #[test]
    fn fermat() {
        let p = DEFAULT_PRIMES[1];
        assert_eq!(Fp::new(987654321, p).pow(p - 1), Fp::new(1, p));
    }
}
