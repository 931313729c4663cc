//! Exact arithmetic on positive integers kept in fully factored form.
//!
//! Group orders in this crate grow like `(mi)!`, so they are never expanded
//! unless a decimal string is asked for. A [`FactoredInteger`] is a map
//! `prime -> exponent`; the empty map is 1, and 0 is not representable.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::Product;
use std::ops::{Mul, MulAssign};

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// A positive integer stored as its prime factorization.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactoredInteger {
    factors: BTreeMap<u64, u64>,
}

impl FactoredInteger {
    pub fn one() -> Self {
        Self::default()
    }

    /// `p^e`. Fails if `p` is not prime.
    pub fn prime_power(p: u64, e: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut out = Self::one();
        if e > 0 {
            out.factors.insert(p, e);
        }
        Ok(out)
    }

    /// Builds a value from `(prime, exponent)` pairs; zero exponents are dropped.
    pub fn from_pairs<I: IntoIterator<Item = (u64, u64)>>(pairs: I) -> Result<Self> {
        let mut out = Self::one();
        for (p, e) in pairs {
            out *= Self::prime_power(p, e)?;
        }
        Ok(out)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Exponent of `p`; 0 if `p` does not divide the value.
    pub fn exponent(&self, p: u64) -> u64 {
        self.factors.get(&p).copied().unwrap_or(0)
    }

    /// `(prime, exponent)` pairs in increasing order of the prime.
    pub fn factors(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.factors.iter().map(|(&p, &e)| (p, e))
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.keys().copied()
    }

    /// True iff `other` divides `self`.
    pub fn is_divisible_by(&self, other: &Self) -> bool {
        other.factors().all(|(p, e)| self.exponent(p) >= e)
    }

    /// `self / other`, failing unless the division is exact.
    pub fn div_exact(&self, other: &Self) -> Result<Self> {
        if !self.is_divisible_by(other) {
            return Err(Error::NotDivisible {
                dividend: self.to_string(),
                divisor: other.to_string(),
            });
        }
        let mut out = self.clone();
        for (p, e) in other.factors() {
            let slot = out.factors.get_mut(&p).expect("checked divisibility");
            *slot -= e;
            if *slot == 0 {
                out.factors.remove(&p);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u64) -> Self {
        if e == 0 {
            return Self::one();
        }
        Self {
            factors: self.factors.iter().map(|(&p, &k)| (p, k * e)).collect(),
        }
    }

    /// The largest power of `p` dividing the value.
    pub fn p_part(&self, p: u64) -> Self {
        let mut out = Self::one();
        if let Some(&e) = self.factors.get(&p) {
            out.factors.insert(p, e);
        }
        out
    }

    /// The value with every factor of `p` removed.
    pub fn prime_to_p_part(&self, p: u64) -> Self {
        let mut out = self.clone();
        out.factors.remove(&p);
        out
    }

    pub fn to_biguint(&self) -> BigUint {
        self.factors()
            .map(|(p, e)| BigUint::from(p).pow(u32::try_from(e).expect("exponent fits in u32")))
            .product()
    }

    /// Decimal expansion of the value.
    pub fn to_decimal(&self) -> String {
        self.to_biguint().to_str_radix(10)
    }

    /// The value as a `u64`, if it fits.
    pub fn to_u64(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for (p, e) in self.factors() {
            let e = u32::try_from(e).ok()?;
            acc = acc.checked_mul(p.checked_pow(e)?)?;
        }
        Some(acc)
    }

    /// Compact factored notation such as `2^4*3^2*5`; `1` for the empty product.
    pub fn factored_string(&self) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        self.factors()
            .map(|(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.factored_string())
    }
}

impl MulAssign<&FactoredInteger> for FactoredInteger {
    // multiplying adds exponents
    #[allow(clippy::suspicious_op_assign_impl)]
    fn mul_assign(&mut self, rhs: &FactoredInteger) {
        for (p, e) in rhs.factors() {
            *self.factors.entry(p).or_insert(0) += e;
        }
    }
}

impl MulAssign for FactoredInteger {
    fn mul_assign(&mut self, rhs: FactoredInteger) {
        *self *= &rhs;
    }
}

impl Mul for FactoredInteger {
    type Output = FactoredInteger;
    fn mul(mut self, rhs: FactoredInteger) -> FactoredInteger {
        self *= &rhs;
        self
    }
}

impl Mul<&FactoredInteger> for &FactoredInteger {
    type Output = FactoredInteger;
    fn mul(self, rhs: &FactoredInteger) -> FactoredInteger {
        let mut out = self.clone();
        out *= rhs;
        out
    }
}

impl Product for FactoredInteger {
    fn product<I: Iterator<Item = FactoredInteger>>(iter: I) -> Self {
        iter.fold(FactoredInteger::one(), |acc, x| acc * x)
    }
}

impl<'a> Product<&'a FactoredInteger> for FactoredInteger {
    fn product<I: Iterator<Item = &'a FactoredInteger>>(iter: I) -> Self {
        let mut acc = FactoredInteger::one();
        for x in iter {
            acc *= x;
        }
        acc
    }
}

/// A prime number, checked on construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
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

    /// `p^e`, or `None` on overflow.
    pub fn checked_pow(self, e: u64) -> Option<u64> {
        u32::try_from(e).ok().and_then(|e| self.0.checked_pow(e))
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        Prime::new(p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// All primes `<= n`, ascending.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = usize::try_from(n).expect("sieve bound fits in usize");
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for k in 2..=n {
        if composite[k] {
            continue;
        }
        out.push(k as u64);
        let mut j = k.saturating_mul(k);
        while j <= n {
            composite[j] = true;
            j += k;
        }
    }
    out
}

/// The exponent of `p` in `k`.
pub fn vp(p: u64, k: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::domain("p-adic valuation of 0"));
    }
    Ok(vp_unchecked(p, k))
}

pub(crate) fn vp_unchecked(p: u64, mut k: u64) -> u64 {
    let mut e = 0;
    while k % p == 0 {
        k /= p;
        e += 1;
    }
    e
}

/// Prime factorization of `n` by trial division.
pub fn factor(n: u64) -> Result<FactoredInteger> {
    if n == 0 {
        return Err(Error::domain("cannot factor 0"));
    }
    let mut out = FactoredInteger::one();
    let mut rest = n;
    let mut d = 2u64;
    while d.saturating_mul(d) <= rest {
        if rest % d == 0 {
            let mut e = 0;
            while rest % d == 0 {
                rest /= d;
                e += 1;
            }
            out.factors.insert(d, e);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        *out.factors.entry(rest).or_insert(0) += 1;
    }
    Ok(out)
}

/// Legendre's formula: the exponent of `p` in `n!`.
pub fn legendre(p: u64, n: u64) -> u64 {
    let mut total = 0;
    let mut q = n;
    while q > 0 {
        q /= p;
        total += q;
    }
    total
}

/// `n!` in factored form.
pub fn factorial_factored(n: u64) -> FactoredInteger {
    FactoredInteger {
        factors: primes_up_to(n).into_iter().map(|p| (p, legendre(p, n))).collect(),
    }
}

/// Positive divisors of `n`, ascending. `n` must be positive.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let f = factor(n)?;
    let mut out = vec![1u64];
    for (p, e) in f.factors() {
        let len = out.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for idx in 0..len {
                out.push(out[idx] * pk);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// `n` with every factor of `p` removed, together with the number removed.
pub fn split_p(p: u64, mut n: u64) -> (u64, u64) {
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    (e, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fi(pairs: &[(u64, u64)]) -> FactoredInteger {
        FactoredInteger::from_pairs(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn valuations() {
        assert_eq!(vp(2, 24).unwrap(), 3);
        assert_eq!(vp(5, 7).unwrap(), 0);
        assert_eq!(vp(3, 720).unwrap(), 2);
        assert!(matches!(vp(2, 0), Err(Error::Domain(_))));
        assert_eq!(vp(4, 16), Err(Error::NotPrime(4)));
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial_factored(6), fi(&[(2, 4), (3, 2), (5, 1)]));
        assert!(factorial_factored(0).is_one());
        assert!(factorial_factored(1).is_one());
        assert_eq!(factorial_factored(10).exponent(2), 8);
        assert_eq!(factorial_factored(6).to_decimal(), "720");
    }

    #[test]
    fn exact_division_and_parts() {
        let a = factor(720).unwrap();
        let b = factor(24).unwrap();
        assert_eq!(a.div_exact(&b).unwrap().to_u64(), Some(30));
        assert_eq!(a.p_part(2).to_u64(), Some(16));
        assert_eq!(a.prime_to_p_part(2).to_u64(), Some(45));
        assert!(matches!(b.div_exact(&a), Err(Error::NotDivisible { .. })));
        assert_eq!(a.pow(0), FactoredInteger::one());
        assert_eq!(b.pow(3).to_u64(), Some(13824));
    }

    #[test]
    fn display_and_decimal() {
        assert_eq!(fi(&[(2, 4), (3, 2), (5, 1)]).to_string(), "2^4*3^2*5");
        assert_eq!(FactoredInteger::one().to_string(), "1");
        assert_eq!(FactoredInteger::one().to_decimal(), "1");
        assert_eq!(factor(1).unwrap(), FactoredInteger::one());
        assert!(factor(0).is_err());
        assert!(FactoredInteger::prime_power(9, 1).is_err());
    }

    #[test]
    fn small_helpers() {
        assert_eq!(primes_up_to(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1).unwrap(), vec![1]);
        assert_eq!(split_p(2, 48), (4, 3));
        assert!(is_prime(999_983));
        assert!(!is_prime(1));
        assert_eq!(factor(999_983 * 2).unwrap().to_string(), "2*999983");
        assert_eq!(FactoredInteger::prime_power(2, 70).unwrap().to_u64(), None);
    }
}
