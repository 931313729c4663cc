use num_bigint::BigUint;
use proptest::prelude::*;
use trk::arith::{divisors, is_prime, primes_up_to};
use trk::tr::tr_odd_recursion;
use trk::{
    factor, factorial_factored, integral_odd_order, integral_rank, k_group, limr_vm_coker, modp_length, s_p,
    tr_even_rank, tr_is_zero, tr_odd_order, vp, FactoredInteger, Parity, Prime, Rep,
};

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])
}

fn rep() -> impl Strategy<Value = Rep> {
    prop::collection::vec(1u64..=20, 0..=8).prop_map(Rep::from_weights)
}

fn factored() -> impl Strategy<Value = FactoredInteger> {
    prop::collection::vec((small_prime(), 0u64..=12), 0..=5)
        .prop_map(|pairs| FactoredInteger::from_pairs(pairs).unwrap())
}

#[test]
fn factorial_matches_schoolbook() {
    let mut acc = BigUint::from(1u32);
    for n in 0..=500u64 {
        if n > 0 {
            acc *= n;
        }
        assert_eq!(factorial_factored(n).to_biguint(), acc, "n = {n}");
    }
}

proptest! {
    #[test]
    fn multiplication_is_commutative_and_associative(a in factored(), b in factored(), c in factored()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!((&a * &b).to_biguint(), a.to_biguint() * b.to_biguint());
    }

    #[test]
    fn exact_division_inverts_multiplication(a in factored(), b in factored()) {
        let prod = &a * &b;
        prop_assert_eq!(prod.div_exact(&b).unwrap(), a.clone());
        prop_assert!(prod.is_divisible_by(&a));
        if !b.is_one() && !a.is_divisible_by(&b) {
            prop_assert!(a.div_exact(&b).is_err());
        }
    }

    #[test]
    fn decimal_agrees_with_factorization(a in factored()) {
        prop_assert_eq!(a.to_decimal(), a.to_biguint().to_string());
    }

    #[test]
    fn valuation_matches_factorization(k in 1u64..1_000_000, p in small_prime()) {
        prop_assert_eq!(vp(p, k).unwrap(), factor(k).unwrap().exponent(p));
        prop_assert_eq!(factor(k).unwrap().to_u64(), Some(k));
    }

    #[test]
    fn factor_primes_are_prime(k in 1u64..1_000_000) {
        for (p, e) in factor(k).unwrap().factors() {
            prop_assert!(is_prime(p) && e >= 1);
        }
    }

    /// `e | f` implies `dim λ^{C_f} <= dim λ^{C_e}`.
    #[test]
    fn fixed_dim_decreases_along_divisibility(r in rep(), e in 1u64..50, k in 1u64..50) {
        prop_assert!(r.fixed_dim(e * k) <= r.fixed_dim(e));
        prop_assert!(r.fixed_dim(e) <= r.dim());
        prop_assert_eq!(r.fixed_dim(1), r.dim());
    }

    #[test]
    fn restriction_properties(r in rep(), s in 1u64..30, t in 1u64..30) {
        prop_assert_eq!(r.restrict(1), r.clone());
        prop_assert_eq!(r.restrict(s).dim(), r.fixed_dim(s));
        prop_assert_eq!(r.restrict(s).restrict(t), r.restrict(s * t));
        prop_assert_eq!(r.restrict(s).fixed_dim(t), r.fixed_dim(s * t));
    }

    #[test]
    fn text_grammar_round_trips(r in rep()) {
        prop_assert_eq!(r.to_string().parse::<Rep>().unwrap(), r);
    }

    /// `s_p(m,i,j)` is the unique level with `p^(s-1) j <= mi < p^s j`.
    #[test]
    fn level_index_is_unique(p in small_prime(), m in 1u64..6, i in 1u64..30, j_seed in 0u64..1000) {
        let j = 1 + j_seed % (m * i);
        let s = s_p(p, m, i, j).unwrap();
        prop_assert!(s >= 1);
        prop_assert!(p.pow(s as u32 - 1) * j <= m * i && m * i < p.pow(s as u32) * j);
        let fits = |t: u32| {
            let low = p.checked_pow(t - 1).and_then(|x| x.checked_mul(j));
            let high = p.checked_pow(t).and_then(|x| x.checked_mul(j));
            low.is_some_and(|l| l <= m * i) && high.is_none_or(|h| m * i < h)
        };
        let others = (1..=64u32).filter(|&t| fits(t)).count();
        prop_assert_eq!(others, 1);
    }

    /// Ranks count the divisors e of r with q = 2 dim(λ^{C_e}); odd degrees have none.
    #[test]
    fn integral_rank_counts_divisors(r in 1u64..2000, q in 0i64..30, rep in rep()) {
        let count = divisors(r).unwrap().into_iter().filter(|&e| 2 * rep.fixed_dim(e) as i64 == q).count() as u64;
        prop_assert_eq!(integral_rank(r, q, &rep).unwrap(), count);
        prop_assert_eq!(integral_rank(r, 2 * q + 1, &rep).unwrap(), 0);
    }

    #[test]
    fn large_primes_do_not_divide_integral_orders(r in 1u64..500, i in 1i64..25, rep in rep()) {
        let order = integral_odd_order(r, i, &rep).unwrap();
        for p in order.primes() {
            prop_assert!(p <= i as u64 || r % p == 0, "prime {} divides the order", p);
        }
    }

    /// The cokernel of the Verschiebung `TR^{n-1} -> TR^n` in degree 2i has rank 0 or 1.
    #[test]
    fn verschiebung_rank_step(p in small_prime(), n in 1u64..6, i in -2i64..30, rep in rep()) {
        let p = Prime::new(p).unwrap();
        let diff = tr_even_rank(p, n, i, &rep) as i64 - tr_even_rank(p, n - 1, i, &rep) as i64;
        prop_assert!(diff == 0 || diff == 1);
    }

    #[test]
    fn vanishing_is_coherent(p in small_prime(), n in 1u64..5, q in -4i64..50, rep in rep()) {
        let p = Prime::new(p).unwrap();
        if tr_is_zero(p, n, q, &rep).unwrap() {
            if q % 2 == 0 {
                prop_assert_eq!(tr_even_rank(p, n, q / 2, &rep), 0);
            } else {
                prop_assert!(tr_odd_order(p, n, (q + 1) / 2, &rep).is_one());
            }
            prop_assert_eq!(modp_length(p, n, q, &rep).unwrap(), 0);
        }
    }

    /// The recursive order is the product of its level factors.
    #[test]
    fn recursion_telescopes(p in small_prime(), n in 0u64..6, i in 1i64..40, rep in rep()) {
        let pr = Prime::new(p).unwrap();
        let steps = tr_odd_recursion(pr, n, i, &rep);
        let product: FactoredInteger = steps.iter().map(|s| s.factor.clone()).product();
        prop_assert_eq!(product, tr_odd_order(pr, n, i, &rep));
    }

    #[test]
    fn cokernel_matches_k_groups(m in 1u64..8, i in 0u64..12) {
        let coker = limr_vm_coker(m, i, Parity::Odd).unwrap();
        let k = k_group(m, 2 * i).unwrap();
        prop_assert_eq!(coker.torsion_order(), k.torsion_order());
        let even = limr_vm_coker(m, i, Parity::Even).unwrap();
        prop_assert_eq!(even.rank(), k_group(m, 2 * i + 1).unwrap().rank());
    }
}

#[test]
fn primes_sieve_agrees_with_trial_division() {
    let sieve = primes_up_to(2000);
    let trial: Vec<u64> = (2..=2000u64).filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)).collect();
    assert_eq!(sieve, trial);
}
