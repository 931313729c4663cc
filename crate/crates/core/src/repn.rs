//! Finite dimensional complex T-representations, modeled by their weights.
//!
//! A weight `w` stands for the summand `C(w)` on which `z` acts by `z^w`.
//! The family `λ_d = C(d) ⊕ ... ⊕ C(1)` shows up at levels where `d` is
//! on the order of `10^10`, so a [`Rep`] keeps a run `{1, ..., d}` in
//! closed form next to a sorted list of the remaining weights.

use std::fmt;
use std::str::FromStr;

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// A finite multiset of nonnegative weights.
///
/// Canonical form: `run` is the largest `d` such that every weight
/// `1..=d` occurs, and `extra` holds what is left after removing one copy of
/// each, sorted ascending. Equality is therefore multiset equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rep {
    run: u64,
    extra: Vec<u64>,
}

impl Rep {
    pub fn empty() -> Self {
        Self::default()
    }

    /// `λ_d`, the weights `1, ..., d`.
    pub fn lambda(d: u64) -> Self {
        Self { run: d, extra: Vec::new() }
    }

    pub fn from_weights<I: IntoIterator<Item = u64>>(weights: I) -> Self {
        let mut extra: Vec<u64> = weights.into_iter().collect();
        extra.sort_unstable();
        Self::canonical(0, extra)
    }

    fn canonical(mut run: u64, mut extra: Vec<u64>) -> Self {
        // `extra` is sorted; absorb run+1, run+2, ... while present
        let mut kept = Vec::with_capacity(extra.len());
        for w in extra.drain(..) {
            if w == run + 1 {
                run += 1;
            } else {
                kept.push(w);
            }
        }
        Self { run, extra: kept }
    }

    /// Length of the initial run `{1, ..., d}`.
    pub fn run(&self) -> u64 {
        self.run
    }

    /// Weights outside the run, ascending.
    pub fn extra_weights(&self) -> &[u64] {
        &self.extra
    }

    /// All weights, ascending. Expands the run, so only use on small reps.
    pub fn weights(&self) -> Vec<u64> {
        let mut all: Vec<u64> = (1..=self.run).chain(self.extra.iter().copied()).collect();
        all.sort_unstable();
        all
    }

    pub fn is_empty(&self) -> bool {
        self.run == 0 && self.extra.is_empty()
    }

    /// Complex dimension: the number of weights.
    pub fn dim(&self) -> u64 {
        self.run + self.extra.len() as u64
    }

    /// Dimension of the `C_e`-fixed part: the number of weights divisible by `e`.
    ///
    /// # Panics
    /// If `e == 0`.
    pub fn fixed_dim(&self, e: u64) -> u64 {
        assert!(e >= 1, "fixed_dim needs a positive subgroup order");
        self.run / e + self.extra.iter().filter(|&&w| w % e == 0).count() as u64
    }

    /// `ρ_s^*(λ^{C_s})`: keep the weights divisible by `s` and divide them by `s`.
    ///
    /// # Panics
    /// If `s == 0`.
    pub fn restrict(&self, s: u64) -> Rep {
        assert!(s >= 1, "restrict needs a positive subgroup order");
        if s == 1 {
            return self.clone();
        }
        let extra = self
            .extra
            .iter()
            .filter(|&&w| w % s == 0)
            .map(|&w| w / s)
            .collect();
        Self::canonical(self.run / s, extra)
    }

    pub fn has_trivial_summand(&self) -> bool {
        self.extra.first() == Some(&0)
    }

    pub fn max_weight(&self) -> u64 {
        self.extra.last().copied().unwrap_or(0).max(self.run)
    }

    pub(crate) fn require_positive_weights(&self) -> Result<()> {
        if self.has_trivial_summand() {
            Err(Error::TrivialSummand(self.to_string()))
        } else {
            Ok(())
        }
    }
}

/// Shorthand for [`Rep::lambda`].
pub fn lambda_d(d: u64) -> Rep {
    Rep::lambda(d)
}

impl fmt::Display for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        if self.extra.is_empty() {
            return write!(f, "d:{}", self.run);
        }
        let list: Vec<String> = self.weights().iter().map(u64::to_string).collect();
        write!(f, "w:{}", list.join(","))
    }
}

impl FromStr for Rep {
    type Err = Error;

    /// Grammar: `0` (empty), `d:<n>` (`λ_n`), `w:<c1,c2,...>` (explicit weights).
    fn from_str(s: &str) -> Result<Rep> {
        let bad = || Error::RepSyntax(s.to_string());
        let number = |t: &str| -> Result<u64> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<u64>().map_err(|_| bad())
        };
        if s == "0" {
            return Ok(Rep::empty());
        }
        if let Some(rest) = s.strip_prefix("d:") {
            return Ok(Rep::lambda(number(rest)?));
        }
        if let Some(rest) = s.strip_prefix("w:") {
            let weights = rest.split(',').map(number).collect::<Result<Vec<_>>>()?;
            return Ok(Rep::from_weights(weights));
        }
        Err(bad())
    }
}

/// `d(m, r)`: the integer part of `(r - 1)/m`.
pub fn d_of(m: u64, r: u64) -> u64 {
    assert!(m >= 1 && r >= 1, "d_of needs positive arguments");
    (r - 1) / m
}

/// The unique `s >= 1` with `p^(s-1) j <= m i < p^s j`.
pub fn s_p(p: u64, m: u64, i: u64, j: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mi = m
        .checked_mul(i)
        .ok_or_else(|| Error::domain("m*i overflows"))?;
    if j < 1 || j > mi {
        return Err(Error::domain(format!("s_p needs 1 <= j <= m*i, got j = {j}, m*i = {mi}")));
    }
    // walk p^(s-1) j upward until it passes mi
    let mut s = 1;
    let mut low = j as u128;
    let mi = mi as u128;
    while low * p as u128 <= mi {
        low *= p as u128;
        s += 1;
    }
    Ok(s)
}

/// `δ_p(λ) = (1-p) Σ_{s>=0} dim(λ^{C_{p^s}}) p^s`.
///
/// Defined only for representations without trivial summands.
pub fn delta_p(p: u64, rep: &Rep) -> Result<i128> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    rep.require_positive_weights()?;
    let mut sum: i128 = 0;
    let mut pk: u64 = 1;
    loop {
        let f = rep.fixed_dim(pk);
        if f == 0 {
            break;
        }
        sum += f as i128 * pk as i128;
        match pk.checked_mul(p) {
            Some(next) => pk = next,
            None => break,
        }
    }
    Ok((1 - p as i128) * sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(ws: &[u64]) -> Rep {
        Rep::from_weights(ws.iter().copied())
    }

    #[test]
    fn dimensions() {
        assert_eq!(lambda_d(3).dim(), 3);
        assert_eq!(Rep::empty().dim(), 0);
        assert_eq!(w(&[0, 0, 5]).dim(), 3);
        assert_eq!(lambda_d(5).fixed_dim(2), 2);
        assert_eq!(lambda_d(7).fixed_dim(1), 7);
        assert_eq!(w(&[0, 3]).fixed_dim(7), 1);
    }

    #[test]
    fn canonical_form_is_multiset_equality() {
        assert_eq!(w(&[3, 1, 2]), lambda_d(3));
        assert_eq!(w(&[2, 1, 1]), w(&[1, 1, 2]));
        assert_ne!(w(&[1, 2]), w(&[1, 2, 2]));
        assert_eq!(w(&[1, 2, 2]).run(), 2);
        assert_eq!(w(&[1, 2, 2]).extra_weights(), &[2]);
        assert_eq!(w(&[2, 4, 6]).restrict(2), lambda_d(3));
    }

    #[test]
    fn restriction() {
        assert_eq!(lambda_d(6).restrict(2), lambda_d(3));
        for d in 0..=10 {
            assert_eq!(lambda_d(2 * d + 1).restrict(2), lambda_d(d));
        }
        let r = w(&[0, 4, 6, 9]);
        assert_eq!(r.restrict(1), r);
        assert_eq!(r.restrict(2), w(&[0, 2, 3]));
        assert_eq!(r.restrict(2).restrict(3), r.restrict(6));
    }

    #[test]
    fn lambda_family() {
        assert!(lambda_d(0).is_empty());
        assert_eq!(lambda_d(3).weights(), vec![1, 2, 3]);
        for d in 0..=20 {
            for e in 1..=20 {
                let brute = (1..=d).filter(|x| x % e == 0).count() as u64;
                assert_eq!(lambda_d(d).fixed_dim(e), brute);
            }
        }
    }

    #[test]
    fn truncation_index() {
        assert_eq!(d_of(2, 1), 0);
        assert_eq!(d_of(2, 7), 3);
        assert_eq!(d_of(3, 9), 2);
    }

    #[test]
    fn level_index() {
        assert_eq!(s_p(2, 2, 3, 1).unwrap(), 3);
        assert_eq!(s_p(3, 2, 3, 1).unwrap(), 2);
        // mi/p < j <= mi gives level 1
        assert_eq!(s_p(5, 3, 4, 12).unwrap(), 1);
        assert_eq!(s_p(5, 3, 4, 3).unwrap(), 1);
        assert!(matches!(s_p(2, 2, 3, 7), Err(Error::Domain(_))));
        assert!(matches!(s_p(2, 2, 3, 0), Err(Error::Domain(_))));
        assert_eq!(s_p(6, 2, 3, 1), Err(Error::NotPrime(6)));
    }

    #[test]
    fn delta() {
        assert_eq!(delta_p(2, &lambda_d(1)).unwrap(), -1);
        assert_eq!(delta_p(7, &Rep::empty()).unwrap(), 0);
        assert_eq!(delta_p(3, &lambda_d(3)).unwrap(), -12);
        assert!(matches!(delta_p(2, &w(&[0, 1])), Err(Error::TrivialSummand(_))));
    }

    #[test]
    fn grammar() {
        assert_eq!("0".parse::<Rep>().unwrap(), Rep::empty());
        assert_eq!("d:4".parse::<Rep>().unwrap(), lambda_d(4));
        assert_eq!("w:3,1,2".parse::<Rep>().unwrap(), lambda_d(3));
        assert_eq!("w:0,5".parse::<Rep>().unwrap(), w(&[0, 5]));
        for bad in ["", "d:", "d:-1", "w:", "w:1,,2", "w:1, 2", "x:3", "00", "d:3x", "w:+1"] {
            assert!(bad.parse::<Rep>().is_err(), "{bad:?} should be rejected");
        }
        for rep in [Rep::empty(), lambda_d(5), w(&[0, 2, 2, 7])] {
            assert_eq!(rep.to_string().parse::<Rep>().unwrap(), rep);
        }
    }
}
