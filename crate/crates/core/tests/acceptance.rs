//! Acceptance suite. Each criterion prints one PASS/FAIL line (written to the
//! real stdout so it shows without `--nocapture`); the test fails if any does.
//!
//! Where possible the expected values come from independent oracles:
//! schoolbook big-integer arithmetic, brute-force valuations, and an
//! exhaustive scan for stable levels.

use std::io::Write;
use std::time::Instant;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trk::arith::primes_up_to;
use trk::integral::{is_stable_level, stable_level_is_minimal};
use trk::{
    borel_ratio_check, d_of, divisor_identity_holds, dual_odd_part, dual_structure, find_stable_level,
    integral_odd_order, integral_rank, k_group, lambda_d, limr_left, limr_left_decomposition, limr_middle,
    limr_middle_decomposition, modp_length, tr_even_rank, tr_odd_order, AbelianGroupInfo, FactoredInteger,
    Parity, Prime, Rep,
};

const SEED: u64 = 0x5eed_2010;

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T>(r: trk::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn big_factorial(n: u64) -> BigUint {
    (1..=n).fold(big(1), |acc, k| acc * big(k))
}

/// `v_p(n!)` by summing valuations of each factor.
fn brute_vp_factorial(p: u64, n: u64) -> u64 {
    (1..=n)
        .map(|mut k| {
            let mut e = 0;
            while k % p == 0 {
                k /= p;
                e += 1;
            }
            e
        })
        .sum()
}

fn brute_vp(p: u64, mut n: u64) -> u32 {
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    e
}

fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

fn criterion_1() -> Outcome {
    for p in [2u64, 3, 5, 7] {
        for n in 0..=6u64 {
            for i in 1..=30u64 {
                let got = tr_odd_order(prime(p), n, i as i64, &Rep::empty());
                let want = big(p).pow((n * n.saturating_sub(1) / 2) as u32) * big(i).pow(n as u32);
                ensure(got.to_biguint() == want, || format!("p={p} n={n} i={i}: {got} != {want}"))?;
            }
        }
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    for m in 1..=8u64 {
        for i in 0..=12u64 {
            let i_fact = big_factorial(i);
            let want = big_factorial(m * i) * i_fact.pow(m as u32) / i_fact.pow(2);
            let k = ok(k_group(m, 2 * i))?;
            ensure(k.rank() == 0 && k.torsion_order().to_biguint() == want, || format!("m={m} i={i}: K = {k}"))?;
            let middle = ok(limr_middle(m, i, Parity::Odd))?;
            let left = ok(limr_left(m, i, Parity::Odd))?;
            let quotient = ok(middle.torsion_order().div_exact(left.torsion_order()))?;
            ensure(&quotient == k.torsion_order(), || format!("m={m} i={i}: limit quotient {quotient}"))?;
            let odd = ok(k_group(m, 2 * i + 1))?;
            ensure(odd == AbelianGroupInfo::free(m - 1), || format!("m={m} q={}: {odd}", 2 * i + 1))?;
        }
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let golden = [(1u64, "Z/2", 2u64), (2, "Z/8 ⊕ Z/3", 24), (3, "Z/2 ⊕ Z/2 ⊕ Z/4 ⊕ Z/9 ⊕ Z/5", 720)];
    for (i, text, order) in golden {
        let d = ok(dual_structure(i))?;
        let g = d.group();
        ensure(g.to_string() == text, || format!("i={i}: {g}"))?;
        ensure(d.order.to_u64() == Some(order) && g.torsion_order().to_u64() == Some(order), || {
            format!("i={i}: order {}", d.order)
        })?;
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    for p in primes_up_to(59).into_iter().filter(|&p| p > 2) {
        for i in (1..).take_while(|&i| 2 * i < p * p) {
            let (r1, r2) = ok(dual_odd_part(p, i))?;
            let here = || format!("p={p} i={i}: ({r1},{r2})");
            ensure(r1 + 2 * r2 == 2 * i / p, here)?;
            // the p-part of (2i)! has the same length
            ensure(r1 + 2 * r2 == brute_vp_factorial(p, 2 * i), here)?;
            if i <= (p - 1) / 2 {
                ensure((r1, r2) == (0, 0), here)?;
            } else if i < p {
                ensure((r1, r2) == (1, 0), here)?;
            } else if i == p {
                ensure((r1, r2) == (0, 1), here)?;
            } else if i == p + 1 && p == 3 {
                ensure(r2 == 1 && p.pow((r1 + 2 * r2) as u32) == 9, here)?;
            } else if i == p + 1 {
                ensure((r1, r2) == (2, 0), here)?;
            }
        }
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut reps: Vec<Rep> = (1..=6).map(lambda_d).collect();
    for _ in 0..100 {
        let len = rng.gen_range(1..=8);
        reps.push(Rep::from_weights((0..len).map(|_| rng.gen_range(1..=20u64))));
    }
    for p in [2u64, 3, 5] {
        for n in 1..=4u64 {
            for rep in &reps {
                for i in -2..=40i64 {
                    let even = ok(modp_length(prime(p), n, 2 * i, rep))? as i64;
                    let odd = ok(modp_length(prime(p), n, 2 * i - 1, rep))? as i64;
                    let rank = tr_even_rank(prime(p), n, i, rep) as i64;
                    ensure(even - odd == rank, || format!("p={p} n={n} λ={rep} i={i}: {even} - {odd} != {rank}"))?;
                }
            }
        }
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    for _ in 0..1000 {
        let r = rng.gen_range(2..=5000u64);
        let primes: Vec<u64> = primes_up_to(r).into_iter().filter(|p| r % p == 0).collect();
        let p = primes[rng.gen_range(0..primes.len())];
        let rep = Rep::from_weights((0..rng.gen_range(0..=6)).map(|_| rng.gen_range(1..=30u64)));
        let q = rng.gen_range(-2..=2 * rep.dim() as i64 + 4);
        ensure(ok(divisor_identity_holds(r, p, q, &rep))?, || format!("r={r} p={p} q={q} λ={rep}"))?;
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    for p in primes_up_to(13) {
        for m in 1..=4u64 {
            for i in 0..=10u64 {
                let mid = ok(limr_middle_decomposition(prime(p), m, i))?.total_length();
                let left = ok(limr_left_decomposition(prime(p), m, i))?.total_length();
                let want_mid = brute_vp_factorial(p, m * i) + m * brute_vp_factorial(p, i);
                let want_left = 2 * brute_vp_factorial(p, i);
                ensure(mid == want_mid && left == want_left, || {
                    format!("p={p} m={m} i={i}: lengths ({mid}, {left}) vs ({want_mid}, {want_left})")
                })?;
            }
        }
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    for p in [2u64, 3] {
        for n in 2..=4u64 {
            for d in 0..=4u64 {
                let rep = lambda_d(d);
                for i in (d as i64 + 2)..=20 {
                    ensure(ok(borel_ratio_check(prime(p), n, i, &rep))?, || format!("p={p} n={n} d={d} i={i}"))?;
                }
            }
        }
    }
    Ok(())
}

/// Both stabilization predicates, written out directly: every prime `p`
/// satisfies `m(i+1) < p^(v_p(r)+1)` and `i+1 < p^(v_p(r/m)+1)`.
fn predicates_oracle(primes: &[u64], m: u64, i: u64, r: u64) -> bool {
    r % m == 0
        && primes.iter().all(|&p| {
            let pe = |k: u64| p.checked_pow(brute_vp(p, k) + 1).unwrap_or(u64::MAX);
            m * (i + 1) < pe(r) && i + 1 < pe(r / m)
        })
}

const SCAN_LIMIT: u64 = 1_000_000;

fn criterion_9() -> Outcome {
    for m in 1..=4u64 {
        for q in 0..=12i64 {
            let i = (q / 2) as u64;
            let primes = primes_up_to(m * (i + 1));
            let r = ok(find_stable_level(m, q))?;
            let here = |what: &str| format!("m={m} q={q} r={r}: {what}");
            ensure(r % m == 0 && predicates_oracle(&primes, m, i, r), || here("predicates fail at r"))?;
            ensure(ok(is_stable_level(m, q, r))?, || here("library predicates fail at r"))?;
            ensure(ok(stable_level_is_minimal(m, q, r))?, || here("minimality certificate fails"))?;
            // every stable level is a multiple of r, so lowering one prime exponent must break it
            for &p in primes.iter().filter(|&&p| r % p == 0) {
                ensure(!predicates_oracle(&primes, m, i, r / p), || here(&format!("r/{p} is also stable")))?;
            }
            if r / m <= SCAN_LIMIT {
                if let Some(k) = (1..r / m).find(|k| predicates_oracle(&primes, m, i, k * m)) {
                    return Err(here(&format!("smaller stable level {}", k * m)));
                }
            }
            for degree in [q, q - 1] {
                let invariants = |level: u64| -> Result<(u64, FactoredInteger), String> {
                    let rep = lambda_d(d_of(m, level));
                    let rank = ok(integral_rank(level, degree, &rep))?;
                    let order = if degree.rem_euclid(2) == 1 {
                        ok(integral_odd_order(level, (degree + 1) / 2, &rep))?
                    } else {
                        FactoredInteger::one()
                    };
                    Ok((rank, order))
                };
                let base = invariants(r)?;
                for k in [2, 3] {
                    let other = invariants(k * r)?;
                    ensure(other == base, || here(&format!("degree {degree} differs at {k}r: {other:?} vs {base:?}")))?;
                }
            }
        }
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    for m in 1..=10u64 {
        let k = ok(k_group(m, 2))?;
        ensure(k.rank() == 0 && k.torsion_order().to_biguint() == big_factorial(m), || format!("m={m}: {k}"))?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1  closed form p^(n(n-1)/2) i^n", criterion_1),
        ("2  K-group orders and limit quotients", criterion_2),
        ("3  dual numbers golden table", criterion_3),
        ("4  odd torsion of the dual numbers", criterion_4),
        ("5  Bockstein identity", criterion_5),
        ("6  divisor identity", criterion_6),
        ("7  limit length sums", criterion_7),
        ("8  Borel ratio", criterion_8),
        ("9  stabilization", criterion_9),
        ("10 K_2 has order m!", criterion_10),
    ];
    let start = Instant::now();
    let mut failed = Vec::new();
    let mut out = std::io::stdout();
    for (name, check) in criteria {
        let t = Instant::now();
        let result = check();
        let status = if result.is_ok() { "PASS" } else { "FAIL" };
        writeln!(out, "{status} criterion {name} ({:.2?})", t.elapsed()).unwrap();
        if let Err(msg) = result {
            writeln!(out, "     {msg}").unwrap();
            failed.push(name);
        }
    }
    writeln!(out, "acceptance: {} of 10 passed in {:.2?}", 10 - failed.len(), start.elapsed()).unwrap();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
