//! The limit groups `lim_R TR^r_{q-λ_d}(Z)` and `lim_R TR^{r/m}_{q-λ_d}(Z)`
//! with `d = d(m, r)`, and the cokernel of `V_m` between them.
//!
//! After localizing at `p`, the middle term in degrees `2i-2`, `2i-1` is a
//! finite product over `1 <= j <= mi` prime to `p` of `TR^s(Z;p)` with
//! `s = s_p(m, i, j)`. The left term runs over `j ∈ m'I_p` (with
//! `m = p^v m'`) at level `s - v`. Odd orders are computed from these
//! products and checked against the closed forms `(mi)!(i!)^m` and `(i!)^2`.

use crate::arith::{factorial_factored, primes_up_to, FactoredInteger, Prime};
use crate::arith::split_p;
use crate::error::{Error, Result};
use crate::group::AbelianGroupInfo;
use crate::repn::{d_of, lambda_d, s_p};
use crate::tr::tr_odd_order;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(q: i64) -> Parity {
        if q.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// One factor `TR^level_{2i-1-λ_d}(Z;p)_(p)` of a limit decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimEntry {
    pub j: u64,
    /// `s_p(m, i, j)`.
    pub s: u64,
    /// The p-typical level of the factor: `s` for the middle term, `s - v_p(m)`
    /// (floored at 0) for the left term.
    pub level: u64,
    /// `d(m, p^(s-1) j)`.
    pub d: u64,
    /// p-adic length of the factor in odd degree.
    pub length: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimDecomposition {
    pub p: Prime,
    pub entries: Vec<LimEntry>,
}

impl LimDecomposition {
    pub fn total_length(&self) -> u64 {
        self.entries.iter().map(|e| e.length).sum()
    }
}

fn decomposition(p: Prime, m: u64, i: u64, left: bool) -> Result<LimDecomposition> {
    if m == 0 {
        return Err(Error::domain("m must be positive"));
    }
    let (v, m_prime) = split_p(p.get(), m);
    let mi = m.checked_mul(i).ok_or_else(|| Error::domain("m*i overflows"))?;
    let i_signed = i64::try_from(i).map_err(|_| Error::domain("i too large"))?;
    let mut entries = Vec::new();
    for j in 1..=mi {
        if j % p.get() == 0 || (left && j % m_prime != 0) {
            continue;
        }
        let s = s_p(p.get(), m, i, j)?;
        let level = if left { s.saturating_sub(v) } else { s };
        let r = p.checked_pow(s - 1).and_then(|x| x.checked_mul(j)).expect("p^(s-1) j <= m i");
        let d = d_of(m, r);
        let length = tr_odd_order(p, level, i_signed, &lambda_d(d)).exponent(p.get());
        entries.push(LimEntry { j, s, level, d, length });
    }
    Ok(LimDecomposition { p, entries })
}

/// Factors of `lim_R TR^r_{2i-1-λ_d}(Z)_(p)`.
pub fn limr_middle_decomposition(p: Prime, m: u64, i: u64) -> Result<LimDecomposition> {
    decomposition(p, m, i, false)
}

/// Factors of `lim_R TR^{r/m}_{2i-1-λ_d}(Z)_(p)`.
pub fn limr_left_decomposition(p: Prime, m: u64, i: u64) -> Result<LimDecomposition> {
    decomposition(p, m, i, true)
}

/// Assembles the odd order from the per-prime decompositions and checks it
/// against `closed_form`.
fn assembled_order(m: u64, i: u64, left: bool, closed_form: FactoredInteger) -> Result<FactoredInteger> {
    let mut assembled = FactoredInteger::one();
    for p in primes_up_to(m * i) {
        let p = Prime::new(p)?;
        let total = decomposition(p, m, i, left)?.total_length();
        assembled *= FactoredInteger::prime_power(p.get(), total)?;
    }
    if assembled != closed_form {
        let which = if left { "left" } else { "middle" };
        return Err(Error::Invariant(format!(
            "{which} limit for m = {m}, i = {i}: decomposition gives {assembled}, closed form {closed_form}"
        )));
    }
    Ok(assembled)
}

/// `lim_R TR^r_{2i-λ_d}(Z) = Z^m`; `lim_R TR^r_{2i-1-λ_d}(Z)` is finite of
/// order `(mi)!(i!)^m`.
pub fn limr_middle(m: u64, i: u64, parity: Parity) -> Result<AbelianGroupInfo> {
    if m == 0 {
        return Err(Error::domain("m must be positive"));
    }
    match parity {
        Parity::Even => Ok(AbelianGroupInfo::free(m)),
        Parity::Odd => {
            let closed = factorial_factored(m * i) * factorial_factored(i).pow(m);
            Ok(AbelianGroupInfo::order_only(0, assembled_order(m, i, false, closed)?))
        }
    }
}

/// `lim_R TR^{r/m}_{2i-λ_d}(Z) = Z`; `lim_R TR^{r/m}_{2i-1-λ_d}(Z)` is finite
/// of order `(i!)^2`.
pub fn limr_left(m: u64, i: u64, parity: Parity) -> Result<AbelianGroupInfo> {
    if m == 0 {
        return Err(Error::domain("m must be positive"));
    }
    match parity {
        Parity::Even => Ok(AbelianGroupInfo::free(1)),
        Parity::Odd => {
            let closed = factorial_factored(i).pow(2);
            Ok(AbelianGroupInfo::order_only(0, assembled_order(m, i, true, closed)?))
        }
    }
}

/// Cokernel of the injective map `V_m` from the left to the middle limit.
pub fn limr_vm_coker(m: u64, i: u64, parity: Parity) -> Result<AbelianGroupInfo> {
    let middle = limr_middle(m, i, parity)?;
    let left = limr_left(m, i, parity)?;
    match parity {
        Parity::Even => Ok(AbelianGroupInfo::free(middle.rank() - left.rank())),
        Parity::Odd => {
            let order = middle
                .torsion_order()
                .div_exact(left.torsion_order())
                .map_err(|e| Error::Invariant(format!("V_{m} cokernel order: {e}")))?;
            Ok(AbelianGroupInfo::order_only(0, order))
        }
    }
}
