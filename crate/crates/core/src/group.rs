use std::fmt;

use crate::arith::FactoredInteger;
use crate::error::{Error, Result};

/// A cyclic group of prime power order `prime^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicFactor {
    pub prime: u64,
    pub exponent: u64,
}

impl CyclicFactor {
    pub fn new(prime: u64, exponent: u64) -> Self {
        Self { prime, exponent }
    }

    pub fn order(&self) -> FactoredInteger {
        FactoredInteger::prime_power(self.prime, self.exponent).expect("cyclic factor has prime base")
    }
}

impl fmt::Display for CyclicFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order = self.prime.checked_pow(self.exponent as u32);
        match order {
            Some(n) => write!(f, "Z/{n}"),
            None => write!(f, "Z/{}^{}", self.prime, self.exponent),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StructureKnown {
    /// The full cyclic decomposition is known.
    Full,
    /// Only rank and torsion order are known.
    OrderOnly,
}

impl StructureKnown {
    pub fn as_str(&self) -> &'static str {
        match self {
            StructureKnown::Full => "full",
            StructureKnown::OrderOnly => "order-only",
        }
    }
}

/// A finitely generated abelian group `Z^rank ⊕ T` with `|T|` known exactly
/// and, when determined, the cyclic decomposition of `T`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroupInfo {
    rank: u64,
    torsion_order: FactoredInteger,
    structure: Option<Vec<CyclicFactor>>,
}

impl AbelianGroupInfo {
    pub fn zero() -> Self {
        Self::free(0)
    }

    pub fn free(rank: u64) -> Self {
        Self { rank, torsion_order: FactoredInteger::one(), structure: Some(Vec::new()) }
    }

    /// A group with the given cyclic decomposition of its torsion.
    pub fn with_structure(rank: u64, mut factors: Vec<CyclicFactor>) -> Self {
        factors.retain(|c| c.exponent > 0);
        factors.sort();
        let torsion_order = factors.iter().map(CyclicFactor::order).product();
        Self { rank, torsion_order, structure: Some(factors) }
    }

    /// A group known only up to rank and torsion order. Trivial torsion is
    /// always fully known, so that case is reported with structure.
    pub fn order_only(rank: u64, torsion_order: FactoredInteger) -> Self {
        if torsion_order.is_one() {
            return Self::free(rank);
        }
        Self { rank, torsion_order, structure: None }
    }

    /// The cyclic group of order `order`, split into its primary parts.
    pub fn cyclic(order: &FactoredInteger) -> Self {
        Self::with_structure(0, order.factors().map(|(p, e)| CyclicFactor::new(p, e)).collect())
    }

    /// `(Z/p)^length`.
    pub fn elementary(p: u64, length: u64) -> Self {
        Self::with_structure(0, vec![CyclicFactor::new(p, 1); length as usize])
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    pub fn torsion_order(&self) -> &FactoredInteger {
        &self.torsion_order
    }

    pub fn structure(&self) -> Option<&[CyclicFactor]> {
        self.structure.as_deref()
    }

    pub fn structure_known(&self) -> StructureKnown {
        if self.structure.is_some() {
            StructureKnown::Full
        } else {
            StructureKnown::OrderOnly
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion_order.is_one()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Direct sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let rank = self.rank + other.rank;
        match (&self.structure, &other.structure) {
            (Some(a), Some(b)) => Self::with_structure(rank, a.iter().chain(b).copied().collect()),
            _ => Self::order_only(rank, &self.torsion_order * &other.torsion_order),
        }
    }

    /// Checks that a recorded structure multiplies out to the torsion order.
    pub fn validate(&self) -> Result<()> {
        if let Some(factors) = &self.structure {
            let product: FactoredInteger = factors.iter().map(CyclicFactor::order).product();
            if product != self.torsion_order {
                return Err(Error::Invariant(format!(
                    "cyclic factors multiply to {product}, torsion order is {}",
                    self.torsion_order
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for AbelianGroupInfo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        match &self.structure {
            Some(factors) => parts.extend(factors.iter().map(CyclicFactor::to_string)),
            None => parts.push(format!("(finite of order {})", self.torsion_order.to_decimal())),
        }
        f.write_str(&parts.join(" ⊕ "))
    }
}
