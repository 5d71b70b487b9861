use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use proptest::prelude::*;
use weingarten::exactmath::{factorial, rat, RatFuncQ};
use weingarten::pairings::{act, enumerate_hyperoctahedral, pair_coset_type};
use weingarten::partitions::{dim_f, mn_character, z_mu};
use weingarten::{
    enumerate_pairings, integrate_orth, integrate_unit, partitions_of, wg_orth, wg_unit, Dim, MonomialSpec, Partition,
    PolyQ, Rational,
};

fn monomial(max_index: usize, max_len: usize) -> impl Strategy<Value = Vec<(usize, usize)>> {
    prop::collection::vec((1..=max_index, 1..=max_index), 0..=max_len)
}

fn partition(max_n: usize) -> impl Strategy<Value = Partition> {
    (1..=max_n).prop_flat_map(|n| {
        let all = partitions_of(n);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn integral_ignores_factor_order(entries in monomial(3, 6), seed in any::<u64>(), d in 3i64..6) {
        let mut shuffled = entries.clone();
        let len = shuffled.len();
        for i in (1..len).rev() {
            shuffled.swap(i, (seed as usize ^ i.wrapping_mul(31)) % (i + 1));
        }
        let a = integrate_orth(&MonomialSpec::new(entries), d).unwrap();
        let b = integrate_orth(&MonomialSpec::new(shuffled), d).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn integral_is_invariant_under_relabeling(entries in monomial(3, 6), d in 3i64..6) {
        let rows = [2usize, 3, 1];
        let base = integrate_orth(&MonomialSpec::new(entries.clone()), d).unwrap();
        let relabeled: Vec<_> = entries.iter().map(|&(i, j)| (rows[i - 1], j)).collect();
        prop_assert_eq!(&base, &integrate_orth(&MonomialSpec::new(relabeled), d).unwrap());
        let columns: Vec<_> = entries.iter().map(|&(i, j)| (i, rows[j - 1])).collect();
        prop_assert_eq!(&base, &integrate_orth(&MonomialSpec::new(columns), d).unwrap());
        let transposed: Vec<_> = entries.iter().map(|&(i, j)| (j, i)).collect();
        prop_assert_eq!(&base, &integrate_orth(&MonomialSpec::new(transposed), d).unwrap());
    }

    #[test]
    fn odd_row_count_vanishes(entries in monomial(3, 6), d in 3i64..6) {
        let odd_row = (1..=3).any(|r| entries.iter().filter(|e| e.0 == r).count() % 2 == 1);
        let odd_col = (1..=3).any(|c| entries.iter().filter(|e| e.1 == c).count() % 2 == 1);
        if odd_row || odd_col {
            prop_assert!(integrate_orth(&MonomialSpec::new(entries), d).unwrap().is_zero());
        }
    }

    #[test]
    fn unitary_modulus_moments(p in 1usize..4, d in 1i64..6) {
        // E|g11|^{2p} = p! (d-1)! / (d+p-1)!
        let conj: Vec<bool> = (0..2 * p).map(|k| k >= p).collect();
        let spec = MonomialSpec::with_conjugates(vec![(1, 1); 2 * p], conj).unwrap();
        let num = factorial(p) * factorial(d as usize - 1);
        let want = Rational::new(num.into(), factorial(d as usize + p - 1).into());
        prop_assert_eq!(integrate_unit(&spec, d).unwrap(), want);
    }

    #[test]
    fn coset_type_is_bi_invariant(n in 1usize..4, i in 0usize..1000, j in 0usize..1000, h in 0usize..1000) {
        let pairings = enumerate_pairings(n);
        let group = enumerate_hyperoctahedral(n).unwrap();
        let m = &pairings[i % pairings.len()];
        let q = &pairings[j % pairings.len()];
        let before = pair_coset_type(m, q).unwrap();
        let sigma = &group[h % group.len()];
        let moved = pair_coset_type(&act(sigma, m).unwrap(), &act(sigma, q).unwrap()).unwrap();
        prop_assert_eq!(&before, &moved);
        let swapped = pair_coset_type(q, m).unwrap();
        prop_assert_eq!(&before, &swapped);
    }

    #[test]
    fn fixed_dimension_matches_symbolic(mu in partition(5), extra in 0i64..4) {
        let d = mu.weight() as i64 + extra;
        for wg in [wg_orth, wg_unit] {
            let symbolic = wg(&mu, Dim::Symbolic).unwrap();
            let fixed = wg(&mu, Dim::Fixed(d)).unwrap();
            prop_assert_eq!(symbolic.at(d).unwrap(), fixed.fixed().unwrap().clone());
        }
    }

    #[test]
    fn conjugation_is_an_involution(mu in partition(12)) {
        prop_assert_eq!(mu.conjugate().conjugate(), mu.clone());
        prop_assert_eq!(mu.conjugate().weight(), mu.weight());
        prop_assert_eq!(dim_f(&mu.conjugate()), dim_f(&mu));
    }

    #[test]
    fn ratfunc_arithmetic_commutes_with_evaluation(
        a in prop::collection::vec(-5i64..5, 1..4),
        b in prop::collection::vec(-5i64..5, 1..4),
        shift in 1i64..4,
        x in 5i64..20,
    ) {
        let f = RatFuncQ::new(PolyQ::from_ints(&a), PolyQ::linear(shift)).unwrap();
        let g = RatFuncQ::new(PolyQ::from_ints(&b), PolyQ::linear(-shift)).unwrap();
        let fx = f.eval_int(x).unwrap();
        let gx = g.eval_int(x).unwrap();
        prop_assert_eq!((&f + &g).eval_int(x).unwrap(), &fx + &gx);
        prop_assert_eq!((&f * &g).eval_int(x).unwrap(), &fx * &gx);
        let reparsed: RatFuncQ = f.to_string().parse().unwrap();
        prop_assert_eq!(reparsed, f);
    }
}

#[test]
fn character_table_relations() {
    for n in 1..=7usize {
        let parts = partitions_of(n);
        let square_sum: BigUint = parts.iter().map(|l| dim_f(l) * dim_f(l)).sum();
        assert_eq!(square_sum, factorial(n));
        for mu in &parts {
            let column: BigInt = parts.iter().map(|l| mn_character(l, mu).unwrap().pow(2)).sum();
            assert_eq!(column, BigInt::from(z_mu(mu)), "n={n} mu=({mu})");
        }
    }
}

#[test]
fn second_moment_identity() {
    for d in 1..=6i64 {
        assert_eq!(integrate_orth(&MonomialSpec::power(1, 1, 2), d).unwrap(), rat(1, d));
        let row: Rational = (1..=d as usize)
            .map(|j| integrate_orth(&MonomialSpec::power(1, j, 2), d).unwrap())
            .sum();
        assert_eq!(row, rat(1, 1));
    }
}
