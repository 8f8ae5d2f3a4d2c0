//! Arithmetic in the prime field `F_p` for a runtime odd prime `p`.
//!
//! Scalars are plain residues; the [`Prime`] value carries the modulus and
//! does the arithmetic. Binomial and multinomial coefficients are reduced
//! digit-by-digit with Lucas' theorem so the top argument can be any `u64`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest prime accepted as a modulus.
pub const MAX_PRIME: u64 = 61;

/// A residue in `0..p`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpScalar(u64);

impl FpScalar {
    pub const ZERO: FpScalar = FpScalar(0);
    pub const ONE: FpScalar = FpScalar(1);

    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Base-`p` digits of a nonnegative integer, least significant first, with
/// trailing zeros trimmed (so `0` has no digits).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PadicDigits(Vec<u64>);

impl PadicDigits {
    pub fn digits(&self) -> &[u64] {
        &self.0
    }

    /// The `i`-th digit; zero beyond the stored length.
    pub fn get(&self, i: usize) -> u64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Reassembles `Σ digits[i]·p^i`.
    pub fn to_integer(&self, p: Prime) -> u128 {
        self.0
            .iter()
            .rev()
            .fold(0u128, |acc, &d| acc * p.get() as u128 + d as u128)
    }
}

/// An odd prime `3 <= p <= 61`, the characteristic of the coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u64);

impl TryFrom<u64> for Prime {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p % 2 == 1 && (3..=MAX_PRIME).contains(&p) && is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::InvalidPrime(p))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Reduces a signed integer into `0..p`.
    #[inline]
    pub fn scalar(self, v: i64) -> FpScalar {
        FpScalar(v.rem_euclid(self.0 as i64) as u64)
    }

    #[inline]
    pub fn reduce(self, v: u64) -> FpScalar {
        FpScalar(v % self.0)
    }

    /// `(-1)^e` as a field element.
    #[inline]
    pub fn sign(self, e: u64) -> FpScalar {
        if e.is_multiple_of(2) {
            FpScalar::ONE
        } else {
            FpScalar(self.0 - 1)
        }
    }

    #[inline]
    pub fn add(self, a: FpScalar, b: FpScalar) -> FpScalar {
        let s = a.0 + b.0;
        FpScalar(if s >= self.0 { s - self.0 } else { s })
    }

    #[inline]
    pub fn sub(self, a: FpScalar, b: FpScalar) -> FpScalar {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(self, a: FpScalar) -> FpScalar {
        if a.0 == 0 {
            a
        } else {
            FpScalar(self.0 - a.0)
        }
    }

    #[inline]
    pub fn mul(self, a: FpScalar, b: FpScalar) -> FpScalar {
        FpScalar(a.0 * b.0 % self.0)
    }

    pub fn pow(self, a: FpScalar, mut e: u64) -> FpScalar {
        let mut base = a;
        let mut acc = FpScalar::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat's little theorem; `None` for zero.
    pub fn inv(self, a: FpScalar) -> Option<FpScalar> {
        (!a.is_zero()).then(|| self.pow(a, self.0 - 2))
    }

    /// `p^e`, or `None` on `u64` overflow.
    pub fn power(self, e: u32) -> Option<u64> {
        self.0.checked_pow(e)
    }

    /// Smallest generator of the multiplicative group `F_p^*`.
    pub fn primitive_root(self) -> FpScalar {
        let order = self.0 - 1;
        let factors: Vec<u64> = (2..=order)
            .filter(|&q| order.is_multiple_of(q) && is_prime(q))
            .collect();
        (2..self.0)
            .map(FpScalar)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&q| self.pow(g, order / q) != FpScalar::ONE)
            })
            .expect("every prime field has a primitive root")
    }

    pub fn padic_digits(self, mut a: u64) -> PadicDigits {
        let mut digits = Vec::new();
        while a > 0 {
            digits.push(a % self.0);
            a /= self.0;
        }
        PadicDigits(digits)
    }

    /// `C(n, k)` for single digits `n, k < p`.
    fn small_binom(self, n: u64, k: u64) -> FpScalar {
        if k > n {
            return FpScalar::ZERO;
        }
        let k = k.min(n - k);
        let mut num = FpScalar::ONE;
        let mut den = FpScalar::ONE;
        for t in 0..k {
            num = self.mul(num, FpScalar(n - t));
            den = self.mul(den, FpScalar(t + 1));
        }
        self.mul(num, self.inv(den).expect("digit factorials are units"))
    }

    /// `C(b, i) mod p`, zero when `i < 0` or `i > b`.
    pub fn binom_mod_p(self, b: u64, i: i64) -> FpScalar {
        if i < 0 || i as u64 > b {
            return FpScalar::ZERO;
        }
        let (mut b, mut i) = (b, i as u64);
        let mut acc = FpScalar::ONE;
        while i > 0 {
            let (bd, id) = (b % self.0, i % self.0);
            if id > bd {
                return FpScalar::ZERO;
            }
            acc = self.mul(acc, self.small_binom(bd, id));
            b /= self.0;
            i /= self.0;
        }
        acc
    }

    /// `b! / ((b - Σr)! r_1! … r_m!) mod p`, zero when `Σr > b`.
    pub fn multinom_mod_p(self, b: u64, r: &[u64]) -> FpScalar {
        let mut rest = b;
        let mut acc = FpScalar::ONE;
        for &ri in r {
            if ri > rest {
                return FpScalar::ZERO;
            }
            acc = self.mul(acc, self.binom_mod_p(rest, ri as i64));
            if acc.is_zero() {
                return acc;
            }
            rest -= ri;
        }
        acc
    }

    /// `|R| = Σ (p^i - 1)·r_i` with `i` counted from 1; `None` on overflow.
    pub fn abs_r(self, r: &[u64]) -> Option<u64> {
        r.iter().enumerate().try_fold(0u64, |acc, (idx, &ri)| {
            if ri == 0 {
                return Some(acc);
            }
            let weight = self.power(u32::try_from(idx + 1).ok()?)? - 1;
            acc.checked_add(weight.checked_mul(ri)?)
        })
    }
}
