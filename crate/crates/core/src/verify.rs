//! Verification suites: the consistency identities between the formulas in
//! this crate, and the published example values.
//!
//! Randomized sweeps draw from a ChaCha stream seeded by the caller, so a
//! given seed always checks the same instances. Checks run in parallel;
//! failures are collected per check and sorted, so reports are deterministic.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{factor, factorial_factored, primes_up_to, FactoredInteger, Prime};
use crate::error::{Error, Result};
use crate::group::AbelianGroupInfo;
use crate::integral::{
    divisor_identity_holds, find_stable_level, integral_odd_order, integral_rank, stable_level_is_minimal,
};
use crate::kgroups::{dual_odd_part, dual_structure, k_group, k_table};
use crate::limits::{
    limr_left, limr_left_decomposition, limr_middle, limr_middle_decomposition, limr_vm_coker, Parity,
};
use crate::repn::{d_of, lambda_d, Rep};
use crate::tr::{
    borel_ratio_check, modp_group, modp_length, tr1_group, tr_even_rank, tr_group, tr_is_zero, tr_odd_order,
    tr_odd_recursion,
};

pub const DEFAULT_SEED: u64 = 20_100_601;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Paper,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "identities" => Ok(Suite::Identities),
            "paper" => Ok(Suite::Paper),
            other => Err(Error::domain(format!("unknown suite {other:?}"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Identities => "identities",
            Suite::Paper => "paper",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub suite: Suite,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

/// A case either passes or explains itself.
type Outcome = std::result::Result<(), String>;

fn expect(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn prime(p: u64) -> Prime {
    Prime::new(p).expect("suite primes are prime")
}

/// Runs `case` on every item in parallel and gathers the failures.
fn run_cases<T, F>(name: &'static str, items: Vec<T>, case: F) -> CheckResult
where
    T: Send + Sync + fmt::Debug,
    F: Fn(&T) -> Outcome + Sync,
{
    let cases = items.len();
    let mut failures: Vec<String> = items
        .par_iter()
        .filter_map(|item| case(item).err().map(|e| format!("{item:?}: {e}")))
        .collect();
    failures.sort();
    CheckResult { name, cases, failures }
}

/// A random representation with 1..=max_len weights, each in 1..=max_weight.
pub fn random_positive_rep<R: Rng>(rng: &mut R, max_len: usize, max_weight: u64) -> Rep {
    let len = rng.gen_range(1..=max_len);
    Rep::from_weights((0..len).map(|_| rng.gen_range(1..=max_weight)))
}

pub fn run_suite(suite: Suite, seed: u64) -> VerifyReport {
    let checks = match suite {
        Suite::Identities => identities(seed),
        Suite::Paper => paper(),
    };
    VerifyReport { suite, seed, checks }
}

fn identities(seed: u64) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reps: Vec<Rep> = (1..=6).map(lambda_d).collect();
    reps.extend((0..100).map(|_| random_positive_rep(&mut rng, 8, 20)));
    let divisor_cases: Vec<(u64, u64, i64, Rep)> = (0..1000)
        .map(|_| {
            let r = rng.gen_range(2..=5000u64);
            let primes: Vec<u64> = factor(r).expect("positive").primes().collect();
            let p = primes[rng.gen_range(0..primes.len())];
            let rep = Rep::from_weights((0..rng.gen_range(0..=6)).map(|_| rng.gen_range(1..=30u64)));
            let q = rng.gen_range(-2..=2 * rep.dim() as i64 + 4);
            (r, p, q, rep)
        })
        .collect();

    vec![
        closed_form_check(),
        k_order_check(),
        run_cases("k2_is_m_factorial", (1..=10u64).collect(), |&m| {
            let order = lift(k_group(m, 2))?.torsion_order().clone();
            expect(order == factorial_factored(m), || format!("order {order}"))
        }),
        dual_golden_check(),
        odd_torsion_check(),
        run_cases("dual_product_is_factorial", (1..=30u64).collect(), |&i| {
            let d = lift(dual_structure(i))?;
            let product: FactoredInteger = d.components.iter().map(|c| c.order()).product();
            expect(product == factorial_factored(2 * i), || format!("product {product}"))
        }),
        bockstein_check(&reps),
        run_cases("divisor_identity", divisor_cases, |(r, p, q, rep)| {
            expect(lift(divisor_identity_holds(*r, *p, *q, rep))?, || "identity fails".into())
        }),
        length_sum_check(),
        borel_check(),
        stabilization_check(),
        tr_structure_check(&reps),
    ]
}

fn closed_form_check() -> CheckResult {
    let items: Vec<(u64, u64, i64)> = [2u64, 3, 5, 7]
        .iter()
        .flat_map(|&p| (0..=6u64).flat_map(move |n| (1..=30i64).map(move |i| (p, n, i))))
        .collect();
    run_cases("closed_form_lambda_zero", items, |&(p, n, i)| {
        let got = tr_odd_order(prime(p), n, i, &Rep::empty());
        let want = FactoredInteger::prime_power(p, n * (n.saturating_sub(1)) / 2).expect("prime")
            * factor(i as u64).expect("positive").pow(n);
        expect(got == want, || format!("got {got}, want {want}"))
    })
}

fn k_order_check() -> CheckResult {
    let items: Vec<(u64, u64)> = (1..=8u64).flat_map(|m| (0..=12u64).map(move |i| (m, i))).collect();
    run_cases("k_group_orders", items, |&(m, i)| {
        let k = lift(k_group(m, 2 * i))?;
        let i_fact = factorial_factored(i);
        let closed = lift((factorial_factored(m * i) * i_fact.pow(m)).div_exact(&i_fact.pow(2)))?;
        expect(k.torsion_order() == &closed && k.rank() == 0, || format!("K_2i = {k}"))?;
        let middle = lift(limr_middle(m, i, Parity::Odd))?;
        let left = lift(limr_left(m, i, Parity::Odd))?;
        let quotient = lift(middle.torsion_order().div_exact(left.torsion_order()))?;
        expect(quotient == closed, || format!("limit quotient {quotient}"))?;
        let coker = lift(limr_vm_coker(m, i, Parity::Odd))?;
        expect(coker.torsion_order() == &closed, || "V_m cokernel order".into())?;
        let odd = lift(k_group(m, 2 * i + 1))?;
        expect(odd == AbelianGroupInfo::free(m - 1), || format!("K_2i+1 = {odd}"))?;
        let even_coker = lift(limr_vm_coker(m, i, Parity::Even))?;
        expect(even_coker.rank() == m - 1, || "V_m even cokernel rank".into())
    })
}

fn dual_golden_check() -> CheckResult {
    let golden = vec![
        (1u64, "Z/2", 2u64),
        (2, "Z/8 ⊕ Z/3", 24),
        (3, "Z/2 ⊕ Z/2 ⊕ Z/4 ⊕ Z/9 ⊕ Z/5", 720),
    ];
    run_cases("dual_numbers_golden", golden, |&(i, text, order)| {
        let d = lift(dual_structure(i))?;
        let g = d.group();
        expect(g.to_string() == text && d.order.to_u64() == Some(order), || format!("got {g}"))
    })
}

fn odd_torsion_check() -> CheckResult {
    let items: Vec<(u64, u64)> = primes_up_to(59)
        .into_iter()
        .filter(|&p| p > 2)
        .flat_map(|p| (1..=(p * p - 1) / 2).map(move |i| (p, i)))
        .collect();
    run_cases("odd_torsion", items, |&(p, i)| {
        let (r1, r2) = lift(dual_odd_part(p, i))?;
        expect(r1 + 2 * r2 == 2 * i / p, || format!("r1 + 2r2 = {}", r1 + 2 * r2))?;
        let expected = if i <= (p - 1) / 2 {
            Some((0, 0))
        } else if i < p {
            Some((1, 0))
        } else if i == p {
            Some((0, 1))
        } else if i == p + 1 {
            Some(if p == 3 { (0, 1) } else { (2, 0) })
        } else {
            None
        };
        match expected {
            Some(want) => expect((r1, r2) == want, || format!("got {:?}, want {want:?}", (r1, r2))),
            None => Ok(()),
        }
    })
}

fn bockstein_check(reps: &[Rep]) -> CheckResult {
    let mut items = Vec::new();
    for p in [2u64, 3, 5] {
        for n in 1..=4u64 {
            for rep in reps {
                items.push((p, n, rep.clone()));
            }
        }
    }
    run_cases("bockstein_identity", items, |(p, n, rep)| {
        let p = prime(*p);
        for i in -2..=40i64 {
            let even = lift(modp_length(p, *n, 2 * i, rep))?;
            let odd = lift(modp_length(p, *n, 2 * i - 1, rep))?;
            let rank = tr_even_rank(p, *n, i, rep);
            if even as i64 - odd as i64 != rank as i64 {
                return Err(format!("i = {i}: {even} - {odd} != {rank}"));
            }
        }
        Ok(())
    })
}

fn length_sum_check() -> CheckResult {
    let items: Vec<(u64, u64, u64)> = primes_up_to(13)
        .into_iter()
        .flat_map(|p| (1..=4u64).flat_map(move |m| (0..=10u64).map(move |i| (p, m, i))))
        .collect();
    run_cases("limit_length_sums", items, |&(p, m, i)| {
        let pr = prime(p);
        let middle = lift(limr_middle_decomposition(pr, m, i))?;
        let left = lift(limr_left_decomposition(pr, m, i))?;
        let want_mid = (factorial_factored(m * i) * factorial_factored(i).pow(m)).exponent(p);
        let want_left = factorial_factored(i).pow(2).exponent(p);
        expect(middle.total_length() == want_mid, || format!("middle {}", middle.total_length()))?;
        expect(left.total_length() == want_left, || format!("left {}", left.total_length()))?;
        for e in middle.entries.iter().chain(&left.entries) {
            let lo = p.pow(e.s as u32 - 1) * e.j;
            expect(lo <= m * i && m * i < lo * p, || format!("bad level for j = {}", e.j))?;
            expect(e.d == d_of(m, lo), || format!("bad d for j = {}", e.j))?;
        }
        Ok(())
    })
}

fn borel_check() -> CheckResult {
    let mut items = Vec::new();
    for p in [2u64, 3] {
        for n in 2..=4u64 {
            for d in 0..=4u64 {
                for i in (d as i64 + 2)..=20 {
                    items.push((p, n, d, i));
                }
            }
        }
    }
    run_cases("borel_ratio", items, |&(p, n, d, i)| {
        expect(lift(borel_ratio_check(prime(p), n, i, &lambda_d(d)))?, || "ratio mismatch".into())
    })
}

fn stabilization_check() -> CheckResult {
    let items: Vec<(u64, i64)> = (1..=4u64).flat_map(|m| (0..=12i64).map(move |q| (m, q))).collect();
    run_cases("stabilization", items, |&(m, q)| {
        let r = lift(find_stable_level(m, q))?;
        expect(lift(stable_level_is_minimal(m, q, r))?, || format!("level {r} not minimal"))?;
        for degree in [q, q - 1] {
            let at = |level: u64| -> std::result::Result<(u64, FactoredInteger), String> {
                let rep = lambda_d(d_of(m, level));
                let rank = lift(integral_rank(level, degree, &rep))?;
                let order = if degree.rem_euclid(2) == 1 {
                    lift(integral_odd_order(level, (degree + 1) / 2, &rep))?
                } else {
                    FactoredInteger::one()
                };
                Ok((rank, order))
            };
            let base = at(r)?;
            for k in [2, 3] {
                let other = at(k * r)?;
                expect(other == base, || format!("degree {degree}: level {} differs from {r}", k * r))?;
            }
        }
        Ok(())
    })
}

/// Vanishing, Verschiebung cokernel ranks, recursion telescoping and the
/// level-one cyclic groups.
fn tr_structure_check(reps: &[Rep]) -> CheckResult {
    let mut items = Vec::new();
    for p in [2u64, 3, 5] {
        for rep in reps.iter().take(30).chain(std::iter::once(&Rep::empty())) {
            items.push((p, rep.clone()));
        }
    }
    run_cases("tr_structure", items, |(p, rep)| {
        let p = prime(*p);
        for n in 1..=4u64 {
            for i in -2..=25i64 {
                let d_rank = tr_even_rank(p, n, i, rep) as i64 - tr_even_rank(p, n - 1, i, rep) as i64;
                let at_top = i >= 0 && rep.fixed_dim(p.checked_pow(n - 1).unwrap()) == i as u64;
                expect(d_rank == at_top as i64, || format!("n = {n}, i = {i}: V cokernel rank {d_rank}"))?;
                if lift(tr_is_zero(p, n, 2 * i, rep))? {
                    expect(tr_even_rank(p, n, i, rep) == 0, || format!("n = {n}, i = {i}: nonzero rank"))?;
                }
                if lift(tr_is_zero(p, n, 2 * i - 1, rep))? {
                    expect(tr_odd_order(p, n, i, rep).is_one(), || format!("n = {n}, i = {i}: nonzero order"))?;
                }
                let steps = tr_odd_recursion(p, n, i, rep);
                let below = tr_odd_order(p, n - 1, i, &rep.restrict(p.get()));
                expect(below * steps[0].factor.clone() == tr_odd_order(p, n, i, rep), || {
                    format!("n = {n}, i = {i}: recursion does not telescope")
                })?;
            }
        }
        for q in -3..=25i64 {
            let g = lift(tr_group(p, 1, q, rep))?;
            expect(g == tr1_group(q, rep), || format!("level one, q = {q}: {g}"))?;
        }
        Ok(())
    })
}

/// Published values, checked one by one.
fn paper() -> Vec<CheckResult> {
    type Case = (&'static str, fn() -> Outcome);
    let cases: Vec<Case> = vec![
        ("lambda_3 weights", || expect(lambda_d(3).weights() == vec![1, 2, 3], || "weights".into())),
        ("TR^1_5 = Z/3", || expect(tr1_group(5, &Rep::empty()).to_string() == "Z/3", || "TR^1_5".into())),
        ("TR^1_0 = Z", || expect(tr1_group(0, &Rep::empty()).to_string() == "Z", || "TR^1_0".into())),
        ("TR^n_0 free of rank n", || {
            for p in [2u64, 3, 5, 7] {
                for n in 1..=6u64 {
                    let g = lift(tr_group(prime(p), n, 0, &Rep::empty()))?;
                    expect(g == AbelianGroupInfo::free(n), || format!("p = {p}, n = {n}: {g}"))?;
                    for i in 1..=5 {
                        expect(tr_even_rank(prime(p), n, i, &Rep::empty()) == 0, || "even group nonzero".into())?;
                    }
                }
            }
            Ok(())
        }),
        ("|TR^n_{2i-1}| = p^(n(n-1)/2) i^n", || {
            for p in [2u64, 3, 5, 7] {
                for n in 1..=6u64 {
                    for i in 1..=12i64 {
                        let got = tr_odd_order(prime(p), n, i, &Rep::empty());
                        let want = FactoredInteger::prime_power(p, n * (n - 1) / 2).expect("prime")
                            * factor(i as u64).expect("positive").pow(n);
                        expect(got == want, || format!("p = {p}, n = {n}, i = {i}"))?;
                    }
                }
            }
            Ok(())
        }),
        ("TR^2_3(Z;2) has order 8", || {
            expect(tr_odd_order(prime(2), 2, 2, &Rep::empty()).to_u64() == Some(8), || "order".into())
        }),
        ("TR^1_3(Z;2) = Z/2", || {
            expect(lift(tr_group(prime(2), 1, 3, &Rep::empty()))?.to_string() == "Z/2", || "group".into())
        }),
        ("TR^3_{5-λ_1}(Z;2) has 2-primary order 16", || {
            let o = tr_odd_order(prime(2), 3, 3, &lambda_d(1));
            expect(o.p_part(2).to_u64() == Some(16), || format!("order {o}"))
        }),
        ("mod p groups vanish below 2 dim λ^{C_{p^(n-1)}}", || {
            let z = lift(modp_length(prime(3), 3, 7, &lambda_d(40)))?;
            expect(z == 0, || format!("length {z}"))
        }),
        ("mod p groups have exponent p", || {
            for q in -2..=30 {
                let g = lift(modp_group(prime(2), 3, q, &lambda_d(3)))?;
                let ok = g.structure().is_some_and(|fs| fs.iter().all(|c| c.prime == 2 && c.exponent == 1));
                expect(ok, || format!("q = {q}: {g}"))?;
            }
            Ok(())
        }),
        ("TR^1_0(Z) has rank one", || expect(lift(integral_rank(1, 0, &Rep::empty()))? == 1, || "rank".into())),
        ("integral groups vanish below 2 dim λ^{C_r}", || {
            expect(lift(integral_rank(6, 2, &lambda_d(12)))? == 0, || "rank".into())?;
            expect(lift(integral_odd_order(6, 2, &lambda_d(12)))?.is_one(), || "order".into())
        }),
        ("|TR^1_{2i-1}(Z)| = i", || {
            for i in 1..=20i64 {
                expect(lift(integral_odd_order(1, i, &Rep::empty()))?.to_u64() == Some(i as u64), || format!("i = {i}"))?;
            }
            Ok(())
        }),
        ("middle limit orders 2 and 96", || {
            let a = lift(limr_middle(2, 1, Parity::Odd))?;
            let b = lift(limr_middle(2, 2, Parity::Odd))?;
            expect(a.torsion_order().to_u64() == Some(2) && b.torsion_order().to_u64() == Some(96), || "orders".into())?;
            expect(lift(limr_middle(3, 2, Parity::Even))? == AbelianGroupInfo::free(3), || "free rank m".into())
        }),
        ("left limit order (i!)^2 and rank one", || {
            let a = lift(limr_left(2, 2, Parity::Odd))?;
            expect(a.torsion_order().to_u64() == Some(4), || "order".into())?;
            expect(lift(limr_left(3, 2, Parity::Even))? == AbelianGroupInfo::free(1), || "rank".into())
        }),
        ("V_2 cokernel has order (2i)!", || {
            for i in 0..=10u64 {
                let c = lift(limr_vm_coker(2, i, Parity::Odd))?;
                expect(c.torsion_order() == &factorial_factored(2 * i), || format!("i = {i}"))?;
            }
            expect(lift(limr_vm_coker(4, 3, Parity::Even))? == AbelianGroupInfo::free(3), || "rank m-1".into())
        }),
        ("K_4(Z[x]/(x^2),(x)) = Z/8 ⊕ Z/3", || {
            let k = lift(k_group(2, 4))?;
            expect(k.to_string() == "Z/8 ⊕ Z/3", || format!("{k}"))
        }),
        ("K_2(Z[x]/(x^3),(x)) has order 6", || {
            expect(lift(k_group(3, 2))?.torsion_order().to_u64() == Some(6), || "order".into())
        }),
        ("K_{2i+1} free of rank m-1", || {
            for m in 1..=6u64 {
                expect(lift(k_group(m, 5))? == AbelianGroupInfo::free(m - 1), || format!("m = {m}"))?;
            }
            Ok(())
        }),
        ("odd torsion (3,3) and (5,3)", || {
            expect(lift(dual_odd_part(3, 3))? == (0, 1), || "p = 3".into())?;
            expect(lift(dual_odd_part(5, 3))? == (1, 0), || "p = 5".into())
        }),
        ("odd torsion vanishes for i <= (p-1)/2", || {
            for p in primes_up_to(59).into_iter().filter(|&p| p > 2) {
                for i in 1..=(p - 1) / 2 {
                    expect(lift(dual_odd_part(p, i))? == (0, 0), || format!("p = {p}, i = {i}"))?;
                }
            }
            Ok(())
        }),
        ("dual numbers table i = 1, 2, 3", || {
            let want = ["Z/2", "Z/8 ⊕ Z/3", "Z/2 ⊕ Z/2 ⊕ Z/4 ⊕ Z/9 ⊕ Z/5"];
            for (i, text) in (1..=3u64).zip(want) {
                let g = lift(dual_structure(i))?.group();
                expect(g.to_string() == text, || format!("i = {i}: {g}"))?;
            }
            Ok(())
        }),
        ("K-table carries the dual numbers rows", || {
            let rows = lift(k_table(2, 3, true))?;
            let want = [(2u64, "Z/2"), (4, "Z/8 ⊕ Z/3"), (6, "Z/2 ⊕ Z/2 ⊕ Z/4 ⊕ Z/9 ⊕ Z/5")];
            for (q, text) in want {
                let row = rows.iter().find(|r| r.m == 2 && r.q == q).ok_or("missing row")?;
                expect(row.group.to_string() == text, || format!("q = {q}: {}", row.group))?;
            }
            Ok(())
        }),
    ];
    cases
        .into_par_iter()
        .map(|(name, f)| CheckResult { name, cases: 1, failures: f().err().into_iter().collect() })
        .collect()
}
