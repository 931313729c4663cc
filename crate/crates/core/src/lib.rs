//! Exact orders, ranks and (where determined) cyclic structure of the
//! equivariant groups `TR^n_{q-λ}(Z;p)`, their integral and limit variants,
//! and the relative K-groups `K_q(Z[x]/(x^m), (x))`.
//!
//! All orders are kept as [`FactoredInteger`]s; decimal expansion happens
//! only on request.
//!
//! ```
//! use trk::{k_group, tr_odd_order, Prime, Rep};
//!
//! let k4 = k_group(2, 4).unwrap();
//! assert_eq!(k4.to_string(), "Z/8 ⊕ Z/3");
//!
//! let two = Prime::new(2).unwrap();
//! assert_eq!(tr_odd_order(two, 2, 2, &Rep::empty()).to_decimal(), "8");
//! ```

pub mod arith;
pub mod error;
pub mod group;
pub mod integral;
pub mod kgroups;
pub mod limits;
pub mod repn;
pub mod tr;
pub mod verify;

pub use arith::{factor, factorial_factored, vp, FactoredInteger, Prime};
pub use error::{Error, Result};
pub use group::{AbelianGroupInfo, CyclicFactor, StructureKnown};
pub use integral::{
    divisor_identity_holds, ell, find_stable_level, integral_odd_order, integral_rank,
    stable_iso_left, stable_iso_middle,
};
pub use kgroups::{dual_odd_part, dual_structure, k_group, k_table, DualStructure, KRow};
pub use limits::{
    limr_left, limr_left_decomposition, limr_middle, limr_middle_decomposition, limr_vm_coker,
    LimDecomposition, Parity,
};
pub use repn::{d_of, delta_p, lambda_d, s_p, Rep};
pub use tr::{
    borel_ratio_check, e2_order, modp_group, modp_length, tr1_group, tr_even_rank, tr_group,
    tr_is_zero, tr_odd_order, E2Cell,
};
