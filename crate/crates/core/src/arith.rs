//! Small-integer modular helpers shared by every module.
//!
//! Residues are always canonical, i.e. in `0..m`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A modulus `m >= 2`, typically a prime power.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidModulus(m));
        }
        Ok(Modulus(m))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// Canonical residue of an arbitrary-precision integer.
    pub fn reduce(self, value: &BigInt) -> u64 {
        let m = BigInt::from(self.0);
        value.mod_floor(&m).to_u64().expect("residue fits in u64")
    }

    pub fn reduce_i64(self, value: i64) -> u64 {
        (value as i128).rem_euclid(self.0 as i128) as u64
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.0 as u128) as u64
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        ((a as u128 + self.0 as u128 - (b % self.0) as u128) % self.0 as u128) as u64
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    pub fn neg(self, a: u64) -> u64 {
        self.sub(0, a)
    }

    pub fn pow(self, base: u64, mut exp: u64) -> u64 {
        let mut result = 1 % self.0;
        let mut base = base % self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        result
    }

    /// Inverse by extended gcd; `None` when `a` is not a unit.
    pub fn inv(self, a: u64) -> Option<u64> {
        let e = (a as i128).extended_gcd(&(self.0 as i128));
        if e.gcd != 1 {
            return None;
        }
        Some(e.x.rem_euclid(self.0 as i128) as u64)
    }

    pub fn is_unit(self, a: u64) -> bool {
        (a as u128).gcd(&(self.0 as u128)) == 1
    }

    /// Balanced representative in `(-m/2, m/2]`, for display.
    pub fn signed(self, a: u64) -> i64 {
        let a = a % self.0;
        if a > self.0 / 2 {
            a as i64 - self.0 as i64
        } else {
            a as i64
        }
    }
}

impl TryFrom<u64> for Modulus {
    type Error = Error;
    fn try_from(m: u64) -> Result<Self> {
        Modulus::new(m)
    }
}

impl From<Modulus> for u64 {
    fn from(m: Modulus) -> u64 {
        m.0
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A prime, checked by trial division on construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn modulus(self) -> Modulus {
        Modulus(self.0)
    }

    /// `p^r` as a modulus.
    pub fn power(self, r: u32) -> Result<Modulus> {
        if r == 0 {
            return Err(Error::InvalidInput("power r must be at least 1".into()));
        }
        self.0
            .checked_pow(r)
            .map(Modulus)
            .ok_or_else(|| Error::InvalidInput(format!("{}^{} overflows", self.0, r)))
    }

    pub fn is_odd(self) -> bool {
        self.0 != 2
    }
}

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

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes `<= bound` in increasing order.
pub fn primes_up_to(bound: u64) -> Vec<Prime> {
    (2..=bound).filter(|&n| is_prime(n)).map(Prime).collect()
}

/// Residue of a signed integer coefficient taken from a polynomial.
pub fn residue_of(value: &BigInt, m: Modulus) -> u64 {
    if let Some(v) = value.to_i64() {
        m.reduce_i64(v)
    } else {
        m.reduce(value)
    }
}

/// `true` iff `p` divides `value` exactly (integer test, not residue test).
pub fn divides(p: Prime, value: &BigInt) -> bool {
    (value.abs() % BigInt::from(p.get())) == BigInt::from(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_rejects_small() {
        assert!(Modulus::new(0).is_err());
        assert!(Modulus::new(1).is_err());
        assert!(Modulus::new(2).is_ok());
    }

    #[test]
    fn canonical_residues() {
        let m = Modulus::new(5).unwrap();
        assert_eq!(m.reduce_i64(-1), 4);
        assert_eq!(m.reduce(&BigInt::from(-12)), 3);
        assert_eq!(m.signed(4), -1);
        assert_eq!(m.signed(2), 2);
    }

    #[test]
    fn inverses() {
        let m = Modulus::new(9).unwrap();
        assert_eq!(m.inv(2), Some(5));
        assert_eq!(m.inv(3), None);
        assert!(!m.is_unit(6));
    }

    #[test]
    fn primes() {
        let ps: Vec<u64> = primes_up_to(30).into_iter().map(Prime::get).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(Prime::new(1).is_err());
        assert!(Prime::new(91).is_err());
        assert_eq!(Prime::new(3).unwrap().power(2).unwrap().get(), 9);
    }
}
