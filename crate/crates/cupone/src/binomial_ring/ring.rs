use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient ring: the integers or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingSpec {
    Z,
    Zp(u64),
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl RingSpec {
    pub fn zp(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(RingSpec::Zp(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> Option<u64> {
        match self {
            RingSpec::Z => None,
            RingSpec::Zp(p) => Some(*p),
        }
    }

    /// Largest exponent allowed in a multi-index (p-1 over Z_p).
    pub fn max_exponent(&self) -> Option<u32> {
        self.characteristic().map(|p| (p - 1) as u32)
    }

    /// Canonical representative: unchanged over Z, residue in 0..p over Z_p.
    pub fn reduce(&self, a: BigInt) -> BigInt {
        match self {
            RingSpec::Z => a,
            RingSpec::Zp(p) => a.mod_floor(&BigInt::from(*p)),
        }
    }

    pub fn from_i64(&self, a: i64) -> BigInt {
        self.reduce(BigInt::from(a))
    }

    pub fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(a + b)
    }

    pub fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(a - b)
    }

    pub fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(a * b)
    }

    pub fn neg(&self, a: &BigInt) -> BigInt {
        self.reduce(-a)
    }

    pub fn is_unit(&self, a: &BigInt) -> bool {
        match self {
            RingSpec::Z => a.abs().is_one(),
            RingSpec::Zp(_) => !self.reduce(a.clone()).is_zero(),
        }
    }

    /// Exact division `a / b`; over Z the remainder must vanish.
    pub fn div_exact(&self, a: &BigInt, b: &BigInt) -> Result<BigInt> {
        if b.is_zero() {
            return Err(Error::InexactDivision(format!("{a} / 0")));
        }
        match self {
            RingSpec::Z => {
                let (q, r) = a.div_rem(b);
                if !r.is_zero() {
                    return Err(Error::InexactDivision(format!("{a} / {b}")));
                }
                Ok(q)
            }
            RingSpec::Zp(_) => Ok(self.mul(a, &self.inverse(b)?)),
        }
    }

    /// Multiplicative inverse of a unit.
    pub fn inverse(&self, a: &BigInt) -> Result<BigInt> {
        match self {
            RingSpec::Z => {
                if a.is_one() || (-a).is_one() {
                    Ok(a.clone())
                } else {
                    Err(Error::InexactDivision(format!("{a} is not a unit in Z")))
                }
            }
            RingSpec::Zp(p) => {
                let m = BigInt::from(*p);
                let r = a.mod_floor(&m);
                if r.is_zero() {
                    return Err(Error::InexactDivision(format!("0 has no inverse mod {p}")));
                }
                let e = r.extended_gcd(&m);
                Ok(e.x.mod_floor(&m))
            }
        }
    }

    /// Division with remainder used by Smith normal form: returns (q, r)
    /// with a = q b + r and r "smaller" than b (always 0 over a field).
    pub fn div_rem_euclid(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        match self {
            RingSpec::Z => {
                let (q, r) = a.div_mod_floor(b);
                // balanced remainder keeps entries small
                let r2 = &r - b;
                if r2.abs() < r.abs() {
                    (q + 1, r2)
                } else {
                    (q, r)
                }
            }
            RingSpec::Zp(_) => (self.div_exact(a, b).expect("nonzero divisor"), BigInt::zero()),
        }
    }

    /// Size used for pivot selection.
    pub fn magnitude(&self, a: &BigInt) -> BigInt {
        match self {
            RingSpec::Z => a.abs(),
            RingSpec::Zp(_) => {
                if a.is_zero() {
                    BigInt::zero()
                } else {
                    BigInt::one()
                }
            }
        }
    }

    pub fn check_same(&self, other: &RingSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.to_string(), other.to_string()))
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Z => write!(f, "Z"),
            RingSpec::Zp(p) => write!(f, "Zp:{p}"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Z" {
            return Ok(RingSpec::Z);
        }
        let rest = s
            .strip_prefix("Zp:")
            .or_else(|| s.strip_prefix("Zp "))
            .ok_or_else(|| Error::Parse { line: 0, msg: format!("unknown ring `{s}`") })?;
        let p: u64 = rest
            .trim()
            .parse()
            .map_err(|_| Error::Parse { line: 0, msg: format!("bad modulus `{rest}`") })?;
        RingSpec::zp(p)
    }
}

/// Binomial coefficient binom(a, n) in R, computed as an exact quotient.
pub fn binom_of(ring: RingSpec, a: &BigInt, n: u32) -> Result<BigInt> {
    if let Some(maxe) = ring.max_exponent() {
        if n > maxe {
            return Err(Error::OutOfRange(format!("binom(_, {n}) is undefined over {ring}")));
        }
    }
    Ok(ring.reduce(binom_z(a, n)))
}

/// Integer binomial coefficient for arbitrary integer top argument.
pub fn binom_z(a: &BigInt, n: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..n {
        num *= a - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    let (q, r) = num.div_rem(&den);
    assert!(r.is_zero(), "falling factorial not divisible by {n}!");
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binom_of(RingSpec::Z, &BigInt::from(5), 2).unwrap(), BigInt::from(10));
        assert_eq!(binom_of(RingSpec::Z, &BigInt::from(-1), 2).unwrap(), BigInt::from(1));
        for a in -5..5 {
            assert_eq!(binom_of(RingSpec::Z, &BigInt::from(a), 0).unwrap(), BigInt::one());
        }
        assert!(binom_of(RingSpec::Zp(3), &BigInt::from(1), 3).is_err());
        assert_eq!(binom_of(RingSpec::Zp(5), &BigInt::from(7), 2).unwrap(), BigInt::from(1));
    }

    #[test]
    fn ring_parsing() {
        assert_eq!("Z".parse::<RingSpec>().unwrap(), RingSpec::Z);
        assert_eq!("Zp:5".parse::<RingSpec>().unwrap(), RingSpec::Zp(5));
        assert!("Zp:6".parse::<RingSpec>().is_err());
        assert_eq!(RingSpec::Zp(7).to_string(), "Zp:7");
    }

    #[test]
    fn inverses_mod_p() {
        let r = RingSpec::Zp(7);
        for a in 1..7 {
            let inv = r.inverse(&BigInt::from(a)).unwrap();
            assert_eq!(r.mul(&inv, &BigInt::from(a)), BigInt::one());
        }
        assert_eq!(RingSpec::Zp(5).div_exact(&BigInt::from(3), &BigInt::from(2)).unwrap(), BigInt::from(4));
    }
}
