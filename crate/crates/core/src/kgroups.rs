//! Relative K-groups `K_q(Z[x]/(x^m), (x))` and the structure of the
//! dual-numbers case `m = 2`.
//!
//! Odd degrees are free of rank `m - 1`; even degrees `2i` are finite of
//! order `(mi)!(i!)^(m-2)`. For `m = 2` the odd p-primary parts are
//! determined whenever `2i < p^2`, and the 2-primary part is tabulated for
//! `i <= 3`. Everything else is reported as order-only.

use rayon::prelude::*;

use crate::arith::{factorial_factored, is_prime, legendre, primes_up_to, FactoredInteger};
use crate::error::{Error, Result};
use crate::group::{AbelianGroupInfo, CyclicFactor};

/// `K_q(Z[x]/(x^m), (x))`, with the dual-numbers structure filled in where known.
pub fn k_group(m: u64, q: u64) -> Result<AbelianGroupInfo> {
    k_group_with(m, q, true)
}

fn k_group_with(m: u64, q: u64, include_structure: bool) -> Result<AbelianGroupInfo> {
    if m == 0 {
        return Err(Error::domain("m must be positive"));
    }
    let i = q / 2;
    if q % 2 == 1 {
        return Ok(AbelianGroupInfo::free(m - 1));
    }
    let mi = m.checked_mul(i).ok_or_else(|| Error::domain("m*i overflows"))?;
    let i_fact = factorial_factored(i);
    // (i!)^(m-2) by exact division, so m = 1 needs no negative exponent
    let order = (factorial_factored(mi) * i_fact.pow(m)).div_exact(&i_fact.pow(2))?;
    if include_structure && m == 2 && i >= 1 {
        let dual = dual_structure(i)?;
        if dual.is_fully_known() {
            return Ok(dual.group());
        }
    }
    Ok(AbelianGroupInfo::order_only(0, order))
}

/// `(r1, r2)` with the p-primary part of `K_{2i}(Z[x]/(x^2), (x))` equal to
/// `(Z/p)^r1 ⊕ (Z/p^2)^r2`, for odd `p` and `2i < p^2`.
pub fn dual_odd_part(p: u64, i: u64) -> Result<(u64, u64)> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::domain("dual_odd_part needs an odd prime"));
    }
    if i == 0 {
        return Err(Error::domain("dual_odd_part needs i >= 1"));
    }
    if 2 * i >= p * p {
        return Err(Error::domain(format!("dual_odd_part needs 2i < p^2, got i = {i}, p = {p}")));
    }
    let floor = 2 * i / p;
    let residue = (2 * i + 1) % p;
    if residue == 0 {
        return Ok((0, i / p));
    }
    if residue % 2 == 1 && residue * p <= 2 * i {
        return Ok((floor - 2, 1));
    }
    Ok((floor, 0))
}

/// The p = 2 part of `K_{2i}(Z[x]/(x^2), (x))` for `i <= 3`.
fn two_primary_table(i: u64) -> Option<Vec<CyclicFactor>> {
    let c = |e| CyclicFactor::new(2, e);
    match i {
        1 => Some(vec![c(1)]),
        2 => Some(vec![c(3)]),
        3 => Some(vec![c(1), c(1), c(2)]),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentPart {
    Full(Vec<CyclicFactor>),
    /// Only the order `p^exponent` is known.
    OrderOnly { exponent: u64 },
}

/// The p-primary part of a dual-numbers K-group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualComponent {
    pub prime: u64,
    pub part: ComponentPart,
}

impl DualComponent {
    pub fn order(&self) -> FactoredInteger {
        match &self.part {
            ComponentPart::Full(factors) => factors.iter().map(CyclicFactor::order).product(),
            ComponentPart::OrderOnly { exponent } => {
                FactoredInteger::prime_power(self.prime, *exponent).expect("prime")
            }
        }
    }
}

/// `K_{2i}(Z[x]/(x^2), (x))`, of order `(2i)!`, one component per prime `p <= 2i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualStructure {
    pub i: u64,
    pub order: FactoredInteger,
    pub components: Vec<DualComponent>,
}

impl DualStructure {
    pub fn is_fully_known(&self) -> bool {
        self.components.iter().all(|c| matches!(c.part, ComponentPart::Full(_)))
    }

    pub fn group(&self) -> AbelianGroupInfo {
        self.components
            .iter()
            .map(|c| match &c.part {
                ComponentPart::Full(factors) => AbelianGroupInfo::with_structure(0, factors.clone()),
                ComponentPart::OrderOnly { .. } => AbelianGroupInfo::order_only(0, c.order()),
            })
            .fold(AbelianGroupInfo::zero(), |acc, g| acc.direct_sum(&g))
    }
}

pub fn dual_structure(i: u64) -> Result<DualStructure> {
    if i == 0 {
        return Err(Error::domain("dual_structure needs i >= 1"));
    }
    let order = factorial_factored(2 * i);
    let mut components = Vec::new();
    for p in primes_up_to(2 * i) {
        let exponent = legendre(p, 2 * i);
        let part = if p == 2 {
            match two_primary_table(i) {
                Some(factors) => ComponentPart::Full(factors),
                None => ComponentPart::OrderOnly { exponent },
            }
        } else if p * p > 2 * i {
            let (r1, r2) = dual_odd_part(p, i)?;
            if r1 + 2 * r2 != exponent {
                return Err(Error::Invariant(format!(
                    "p = {p}, i = {i}: r1 + 2 r2 = {} but v_p((2i)!) = {exponent}",
                    r1 + 2 * r2
                )));
            }
            let mut factors = vec![CyclicFactor::new(p, 1); r1 as usize];
            factors.extend(std::iter::repeat_n(CyclicFactor::new(p, 2), r2 as usize));
            ComponentPart::Full(factors)
        } else {
            ComponentPart::OrderOnly { exponent }
        };
        components.push(DualComponent { prime: p, part });
    }
    let structure = DualStructure { i, order, components };
    let product: FactoredInteger = structure.components.iter().map(DualComponent::order).product();
    if product != structure.order {
        return Err(Error::Invariant(format!("dual components multiply to {product}, not (2i)!")));
    }
    Ok(structure)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KRow {
    pub m: u64,
    pub q: u64,
    pub group: AbelianGroupInfo,
}

/// All `K_q(Z[x]/(x^m), (x))` for `1 <= m <= m_max`, `0 <= q <= 2 i_max + 1`,
/// ordered by `m` then `q`. Without `include_structure`, torsion is reported
/// by order only.
pub fn k_table(m_max: u64, i_max: u64, include_structure: bool) -> Result<Vec<KRow>> {
    if m_max == 0 || i_max == 0 {
        return Err(Error::domain("table bounds must be positive"));
    }
    let rows: Vec<Vec<KRow>> = (1..=m_max)
        .into_par_iter()
        .map(|m| {
            (0..=2 * i_max + 1)
                .map(|q| Ok(KRow { m, q, group: k_group_with(m, q, include_structure)? }))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}
