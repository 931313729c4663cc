//! The p-typical groups `TR^n_{q-λ}(Z;p)` and the skeleton spectral
//! sequence bookkeeping behind their orders.
//!
//! Even degrees are free, with rank counted by fixed-point dimensions. Odd
//! degrees are finite, with order given by a recursion in `n` that restricts
//! `λ` along `ρ_p^*` at every step. Cyclic structure is only claimed at
//! level 1; above that the decomposition is in general unknown.

use crate::arith::{factor, FactoredInteger, Prime};
use crate::error::{Error, Result};
use crate::group::{AbelianGroupInfo, CyclicFactor};
use crate::repn::{delta_p, Rep};

/// `dim(λ^{C_{p^s}})`; zero once `p^s` exceeds every weight.
pub(crate) fn fixed_dim_p(rep: &Rep, p: Prime, s: u64) -> u64 {
    match p.checked_pow(s) {
        Some(e) => rep.fixed_dim(e),
        None => 0,
    }
}

fn dim_i64(rep: &Rep) -> i64 {
    i64::try_from(rep.dim()).expect("dimension fits in i64")
}

/// `TR^1_{q-λ}(Z)`, which only depends on `q - 2 dim(λ)`: cyclic of order
/// `i` in degree `2i - 1 > 0`, `Z` in degree 0, zero otherwise.
pub fn tr1_group(q: i64, rep: &Rep) -> AbelianGroupInfo {
    let dim = dim_i64(rep);
    if q.rem_euclid(2) == 1 {
        let i = (q + 1).div_euclid(2) - dim;
        if i >= 1 {
            return AbelianGroupInfo::cyclic(&factor(i as u64).expect("positive"));
        }
        return AbelianGroupInfo::zero();
    }
    if q == 2 * dim {
        AbelianGroupInfo::free(1)
    } else {
        AbelianGroupInfo::zero()
    }
}

/// Rank of `TR^n_{2i-λ}(Z;p)`: the number of `0 <= s < n` with
/// `i = dim(λ^{C_{p^s}})`.
pub fn tr_even_rank(p: Prime, n: u64, i: i64, rep: &Rep) -> u64 {
    if i < 0 {
        return 0;
    }
    (0..n).filter(|&s| fixed_dim_p(rep, p, s) == i as u64).count() as u64
}

/// One step of the odd-degree order recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionStep {
    /// Level `k` of `TR^k`, counting down from `n` to 1.
    pub level: u64,
    /// The representation in play at this level.
    pub rep: Rep,
    /// `p^(k-1) (i - dim)` when `i > dim`, else 1.
    pub factor: FactoredInteger,
}

/// The factors contributed by each level of the recursion for
/// `|TR^n_{2i-1-λ}(Z;p)|`, from level `n` down to level 1.
pub fn tr_odd_recursion(p: Prime, n: u64, i: i64, rep: &Rep) -> Vec<RecursionStep> {
    let mut steps = Vec::with_capacity(n as usize);
    let mut current = rep.clone();
    for level in (1..=n).rev() {
        let dim = dim_i64(&current);
        let factor_here = if i > dim {
            let mut f = factor((i - dim) as u64).expect("positive");
            f *= FactoredInteger::prime_power(p.get(), level - 1).expect("prime");
            f
        } else {
            FactoredInteger::one()
        };
        let next = current.restrict(p.get());
        steps.push(RecursionStep { level, rep: current, factor: factor_here });
        current = next;
    }
    steps
}

/// `|TR^n_{2i-1-λ}(Z;p)|`. Level 0 is the trivial group.
pub fn tr_odd_order(p: Prime, n: u64, i: i64, rep: &Rep) -> FactoredInteger {
    tr_odd_recursion(p, n, i, rep).into_iter().map(|s| s.factor).product()
}

/// Vanishing range: `TR^n_{q-λ}(Z;p) = 0` when `q < 2 dim(λ^{C_{p^{n-1}}})`.
pub fn tr_is_zero(p: Prime, n: u64, q: i64, rep: &Rep) -> Result<bool> {
    if n == 0 {
        return Err(Error::domain("TR level must be positive"));
    }
    Ok(q < 2 * fixed_dim_p(rep, p, n - 1) as i64)
}

/// `TR^n_{q-λ}(Z;p)` as a group descriptor.
pub fn tr_group(p: Prime, n: u64, q: i64, rep: &Rep) -> Result<AbelianGroupInfo> {
    if n == 0 {
        return Err(Error::domain("TR level must be positive"));
    }
    if q.rem_euclid(2) == 0 {
        return Ok(AbelianGroupInfo::free(tr_even_rank(p, n, q / 2, rep)));
    }
    let i = (q + 1).div_euclid(2);
    let order = tr_odd_order(p, n, i, rep);
    if n == 1 {
        Ok(AbelianGroupInfo::cyclic(&order))
    } else {
        Ok(AbelianGroupInfo::order_only(0, order))
    }
}

fn congruent_to_delta(q: i64, delta: i128, modulus: i128) -> bool {
    let q = q as i128;
    (q - 2 * delta).rem_euclid(modulus) == 0 || (q - 2 * delta + 1).rem_euclid(modulus) == 0
}

fn two_p_pow(p: Prime, e: u64) -> Result<i128> {
    p.checked_pow(e)
        .map(|x| 2 * x as i128)
        .ok_or_else(|| Error::domain(format!("{p}^{e} overflows")))
}

/// Length of `TR^n_{q-λ}(Z;p, Z/p)` as a `Z_(p)`-module.
///
/// The degree ranges are scanned in the order: vanishing range, then
/// `2 dim(λ^{C_{p^s}}) <= q < 2 dim(λ^{C_{p^{s-1}}})` for `s = n-1, ..., 1`
/// (empty ranges are skipped), then `q >= 2 dim(λ)`.
pub fn modp_length(p: Prime, n: u64, q: i64, rep: &Rep) -> Result<u64> {
    if n == 0 {
        return Err(Error::domain("TR level must be positive"));
    }
    rep.require_positive_weights()?;
    let bound = |s: u64| 2 * fixed_dim_p(rep, p, s) as i64;
    if q < bound(n - 1) {
        return Ok(0);
    }
    for s in (1..n).rev() {
        if bound(s) <= q && q < bound(s - 1) {
            let restricted = p.checked_pow(s).map(|e| rep.restrict(e)).unwrap_or_default();
            let delta = delta_p(p.get(), &restricted)?;
            let hit = congruent_to_delta(q, delta, two_p_pow(p, n - s)?);
            return Ok(if hit { n - s } else { n - s - 1 });
        }
    }
    let delta = delta_p(p.get(), rep)?;
    let hit = congruent_to_delta(q, delta, two_p_pow(p, n)?);
    Ok(if hit { n } else { n - 1 })
}

/// `TR^n_{q-λ}(Z;p, Z/p)`, which has exponent `p`: `(Z/p)^length`.
pub fn modp_group(p: Prime, n: u64, q: i64, rep: &Rep) -> Result<AbelianGroupInfo> {
    Ok(AbelianGroupInfo::elementary(p.get(), modp_length(p, n, q, rep)?))
}

/// A nonzero cell `E^2_{s,t}` of the skeleton spectral sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E2Cell {
    pub s: u64,
    pub t: i64,
    pub group: AbelianGroupInfo,
}

/// `E^2_{s,t} = H_s(C_{p^u}, TR^1_{t-λ}(Z))` with trivial action.
pub fn e2_order(p: Prime, u: u64, s: u64, t: i64, rep: &Rep) -> AbelianGroupInfo {
    let coeff = tr1_group(t, rep);
    if s == 0 || coeff.is_zero() {
        return coeff;
    }
    if coeff.rank() == 1 {
        // H_odd(C_{p^u}; Z) = Z/p^u, H_even(C_{p^u}; Z) = 0 above degree 0
        return if s % 2 == 1 {
            AbelianGroupInfo::with_structure(0, vec![CyclicFactor::new(p.get(), u)])
        } else {
            AbelianGroupInfo::zero()
        };
    }
    // cyclic coefficients of order c: every positive degree has order gcd(p^u, c)
    let e = u.min(coeff.torsion_order().exponent(p.get()));
    AbelianGroupInfo::with_structure(0, vec![CyclicFactor::new(p.get(), e)])
}

/// The nonzero `E^2` cells on the anti-diagonal `s + t = total`.
pub fn e2_antidiagonal(p: Prime, u: u64, total: i64, rep: &Rep) -> Vec<E2Cell> {
    // coefficients vanish for t < 2 dim(λ)
    let lowest_t = 2 * dim_i64(rep);
    (lowest_t..=total)
        .filter_map(|t| {
            let s = (total - t) as u64;
            let group = e2_order(p, u, s, t, rep);
            (!group.is_zero()).then_some(E2Cell { s, t, group })
        })
        .collect()
}

/// Checks that the `E^2` orders on the anti-diagonals `2i-1` and `2i-2` of
/// the `C_{p^{n-1}}` skeleton spectral sequence have ratio
/// `(i - dim λ) p^{n-1}`. Only meaningful for `i > dim(λ) + 1`, where both
/// anti-diagonals are finite.
pub fn borel_ratio_check(p: Prime, n: u64, i: i64, rep: &Rep) -> Result<bool> {
    if n < 2 {
        return Err(Error::domain("borel ratio needs n >= 2"));
    }
    let dim = dim_i64(rep);
    if i <= dim + 1 {
        return Err(Error::domain(format!("borel ratio needs i > dim + 1 = {}", dim + 1)));
    }
    let u = n - 1;
    let order = |total: i64| -> Result<FactoredInteger> {
        let cells = e2_antidiagonal(p, u, total, rep);
        if cells.iter().any(|c| !c.group.is_finite()) {
            return Err(Error::Invariant(format!("infinite E2 cell on anti-diagonal {total}")));
        }
        Ok(cells.iter().map(|c| c.group.torsion_order().clone()).product())
    };
    let odd = order(2 * i - 1)?;
    let even = order(2 * i - 2)?;
    let Ok(ratio) = odd.div_exact(&even) else {
        return Ok(false);
    };
    let mut expected = factor((i - dim) as u64).expect("positive");
    expected *= FactoredInteger::prime_power(p.get(), u).expect("prime");
    Ok(ratio == expected)
}
