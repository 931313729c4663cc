//! Integral groups `TR^r_{q-λ}(Z)`.
//!
//! Ranks count divisors of `r`. Odd-degree orders are assembled one prime
//! at a time: after localizing at `p`, with `r = p^(n-1) r'`, the group
//! splits as a product over `j | r'` of `TR^n_{q-λ_j}(Z;p)` where
//! `λ_j = ρ^*_{r'/j} λ^{C_{r'/j}}`.

use crate::arith::{divisors, factor, primes_up_to, split_p, FactoredInteger, Prime};
use crate::error::{Error, Result};
use crate::repn::Rep;
use crate::tr::tr_odd_order;

/// `ℓ(r, q, λ)`: the number of divisors `e | r` with `q = 2 dim(λ^{C_e})`.
pub fn ell(r: u64, q: i64, rep: &Rep) -> Result<u64> {
    if r == 0 {
        return Err(Error::domain("level r must be positive"));
    }
    if q.rem_euclid(2) == 1 || q < 0 {
        return Ok(0);
    }
    Ok(divisors(r)?
        .into_iter()
        .filter(|&e| 2 * rep.fixed_dim(e) == q as u64)
        .count() as u64)
}

/// Rank of `TR^r_{q-λ}(Z)`.
pub fn integral_rank(r: u64, q: i64, rep: &Rep) -> Result<u64> {
    ell(r, q, rep)
}

/// `TR^r_{q-λ}(Z) = 0` for `q < 2 dim(λ^{C_r})`.
pub fn integral_is_zero(r: u64, q: i64, rep: &Rep) -> Result<bool> {
    if r == 0 {
        return Err(Error::domain("level r must be positive"));
    }
    Ok(q < 2 * rep.fixed_dim(r) as i64)
}

/// One factor `TR^n_{q-λ_j}(Z;p)_(p)` of the p-local splitting of `TR^r_{q-λ}(Z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaFactor {
    pub j: u64,
    pub n: u64,
    pub rep: Rep,
    /// p-part of the odd-degree order of this factor.
    pub p_part: FactoredInteger,
}

/// The factors of `TR^r_{2i-1-λ}(Z)_(p)`, one per divisor `j` of the
/// prime-to-p part of `r`.
pub fn gamma_factors(p: Prime, r: u64, i: i64, rep: &Rep) -> Result<Vec<GammaFactor>> {
    if r == 0 {
        return Err(Error::domain("level r must be positive"));
    }
    let (v, r_prime) = split_p(p.get(), r);
    let n = v + 1;
    Ok(divisors(r_prime)?
        .into_iter()
        .map(|j| {
            let rep_j = rep.restrict(r_prime / j);
            let p_part = tr_odd_order(p, n, i, &rep_j).p_part(p.get());
            GammaFactor { j, n, rep: rep_j, p_part }
        })
        .collect())
}

/// Primes that can divide `|TR^r_{2i-1-λ}(Z)|`: those up to `i` and those dividing `r`.
fn candidate_primes(r: u64, i: i64) -> Result<Vec<u64>> {
    let mut primes = if i >= 2 { primes_up_to(i as u64) } else { Vec::new() };
    primes.extend(factor(r)?.primes());
    primes.sort_unstable();
    primes.dedup();
    Ok(primes)
}

/// `|TR^r_{2i-1-λ}(Z)|`, the product over primes `p` of the p-parts of the
/// gamma factors at `p`.
pub fn integral_odd_order(r: u64, i: i64, rep: &Rep) -> Result<FactoredInteger> {
    let mut order = FactoredInteger::one();
    for p in candidate_primes(r, i)? {
        let p = Prime::new(p)?;
        for g in gamma_factors(p, r, i, rep)? {
            order *= g.p_part;
        }
    }
    Ok(order)
}

/// `ℓ(q, r', λ) + ℓ(q, r/p, λ') = ℓ(q, r, λ)` with `r'` the prime-to-p part
/// of `r` and `λ' = ρ_p^* λ^{C_p}`.
pub fn divisor_identity_holds(r: u64, p: u64, q: i64, rep: &Rep) -> Result<bool> {
    let p = Prime::new(p)?;
    if r == 0 || r % p.get() != 0 {
        return Err(Error::domain(format!("{p} does not divide r = {r}")));
    }
    let (_, r_prime) = split_p(p.get(), r);
    let lhs = ell(r_prime, q, rep)? + ell(r / p.get(), q, &rep.restrict(p.get()))?;
    Ok(lhs == ell(r, q, rep)?)
}

fn check_eps(eps: u8) -> Result<()> {
    if eps > 1 {
        return Err(Error::domain(format!("epsilon must be 0 or 1, got {eps}")));
    }
    Ok(())
}

/// Smallest `e >= 0` with `bound < p^(e+1)`.
fn exponent_exceeding(p: u64, bound: u64) -> u64 {
    let mut e = 0;
    let mut pk = p as u128;
    while pk <= bound as u128 {
        pk *= p as u128;
        e += 1;
    }
    e
}

/// True iff `bound < p^(v_p(level)+1)` for every prime `p`. Only primes
/// `p <= bound` can fail.
fn all_primes_exceed(bound: i64, level: u64) -> bool {
    if bound < 2 {
        return true;
    }
    primes_up_to(bound as u64)
        .into_iter()
        .all(|p| split_p(p, level).0 >= exponent_exceeding(p, bound as u64))
}

/// Stabilization criterion for the middle term: `m(i+1) < p^(v_p(r)+1)` for all primes.
pub fn stable_iso_middle(m: u64, i: i64, eps: u8, r: u64) -> Result<bool> {
    check_eps(eps)?;
    if m == 0 || r == 0 {
        return Err(Error::domain("m and r must be positive"));
    }
    Ok(all_primes_exceed(m as i64 * (i + 1), r))
}

/// Stabilization criterion for the left term: `i+1 < p^(v_p(r/m)+1)` for all primes.
pub fn stable_iso_left(m: u64, i: i64, eps: u8, r: u64) -> Result<bool> {
    check_eps(eps)?;
    if m == 0 || r == 0 || r % m != 0 {
        return Err(Error::domain(format!("m = {m} must divide r = {r}")));
    }
    Ok(all_primes_exceed(i + 1, r / m))
}

fn split_degree(q: i64) -> (i64, u8) {
    (q.div_euclid(2), q.rem_euclid(2) as u8)
}

/// The least `r` divisible by `m` at which both stabilization criteria hold
/// in degree `q`.
///
/// Both criteria are lower bounds on `v_p(r)` for finitely many primes, so
/// the admissible levels are exactly the multiples of the value built here.
pub fn find_stable_level(m: u64, q: i64) -> Result<u64> {
    if m == 0 {
        return Err(Error::domain("m must be positive"));
    }
    let (i, _) = split_degree(q);
    let overflow = || Error::domain(format!("stable level for m = {m}, q = {q} overflows u64"));
    let middle_bound = (m as i64).saturating_mul(i + 1);
    let left_bound = i + 1;
    let mut r: u64 = 1;
    let m_factors = factor(m)?;
    let mut primes = if middle_bound >= 2 { primes_up_to(middle_bound as u64) } else { Vec::new() };
    primes.extend(m_factors.primes());
    primes.sort_unstable();
    primes.dedup();
    for p in primes {
        let in_m = m_factors.exponent(p);
        let mid = if middle_bound >= 2 { exponent_exceeding(p, middle_bound as u64) } else { 0 };
        let left = if left_bound >= 2 { exponent_exceeding(p, left_bound as u64) } else { 0 };
        let e = mid.max(in_m + left);
        let pe = u32::try_from(e).ok().and_then(|e| p.checked_pow(e)).ok_or_else(overflow)?;
        r = r.checked_mul(pe).ok_or_else(overflow)?;
    }
    Ok(r)
}

/// Both stabilization predicates at level `r` for degree `q`.
pub fn is_stable_level(m: u64, q: i64, r: u64) -> Result<bool> {
    let (i, eps) = split_degree(q);
    if r % m != 0 {
        return Ok(false);
    }
    Ok(stable_iso_middle(m, i, eps, r)? && stable_iso_left(m, i, eps, r)?)
}

/// Certificate that no multiple of `m` below `r` is a stable level.
///
/// The predicates depend on `r` only through `v_p(r)` for primes
/// `p <= m(i+1)`, and are monotone in each exponent. So if `r` is stable and
/// lowering any single prime exponent of `r` breaks either a predicate or
/// `m | r`, every admissible level is a multiple of `r`.
pub fn stable_level_is_minimal(m: u64, q: i64, r: u64) -> Result<bool> {
    if !is_stable_level(m, q, r)? {
        return Ok(false);
    }
    for p in factor(r)?.primes() {
        let lower = r / p;
        if lower % m == 0 && is_stable_level(m, q, lower)? {
            return Ok(false);
        }
    }
    Ok(true)
}
