use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use tilescale::diophantine::{dirichlet, dirichlet_varied, ApproxGroup};
use tilescale::generators::{
    random_guillotine_cuboid, random_guillotine_rect, random_ratio_tiling,
};
use tilescale::integerize::integerize_rect_tiling;
use tilescale::json::{parse_tiling, tiling_to_string};
use tilescale::numeric::{nearest_int_distance, round_nearest};
use tilescale::oracle::{min_squares_with_limit, minimal_scale_oracle};
use tilescale::tiling::Tiling;
use tilescale::Rat;

fn fractions(max_len: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((1i64..=50).prop_flat_map(|d| (0..d, Just(d))), 0..=max_len)
}

fn rats(v: &[(i64, i64)]) -> Vec<Rat> {
    v.iter().map(|&(n, d)| Rat::new(n, d)).collect()
}

/// `‖q·n/d‖ < 1/m` in plain integer arithmetic.
fn close(q: i64, n: i64, d: i64, m: i64) -> bool {
    let r = (q * n).rem_euclid(d);
    m * r.min(d - r) < d
}

fn all_close(q: i64, v: &[(i64, i64)], m: i64) -> bool {
    v.iter().all(|&(n, d)| close(q, n, d, m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn dirichlet_is_the_least_good_q(v in fractions(5), m in 2u64..=4) {
        let res = dirichlet(&rats(&v), m).unwrap();
        let q = res.q.to_i64().unwrap();
        let distinct: std::collections::BTreeSet<Rat> = rats(&v).into_iter().collect();
        prop_assert!(q >= 1);
        prop_assert!(BigInt::from(q) <= BigInt::from(m).pow(distinct.len() as u32));
        prop_assert!(all_close(q, &v, m as i64));
        for smaller in 1..q {
            prop_assert!(!all_close(smaller, &v, m as i64));
        }
    }

    #[test]
    fn larger_m_never_needs_smaller_q(v in fractions(4), m in 2u64..=4) {
        let lo = dirichlet(&rats(&v), m).unwrap().q;
        let hi = dirichlet(&rats(&v), m + 1).unwrap().q;
        prop_assert!(lo <= hi);
    }

    #[test]
    fn one_group_matches_plain_search(v in fractions(4), m in 2u64..=4) {
        let plain = dirichlet(&rats(&v), m).unwrap();
        let varied = dirichlet_varied(&[ApproxGroup::new(rats(&v), m)]).unwrap();
        prop_assert_eq!(plain.q, varied.q);
        prop_assert_eq!(plain.bound, varied.bound);
    }

    #[test]
    fn rounding_contract(n in -1000i64..1000, d in 1i64..60) {
        let x = Rat::new(n, d);
        let r = Rat::from_int(round_nearest(&x));
        let diff = &r - &x;
        prop_assert!(diff > -Rat::half());
        prop_assert!(diff <= Rat::half());
        prop_assert_eq!(nearest_int_distance(&x), diff.abs());
    }

    #[test]
    fn rect_json_round_trip(seed in any::<u64>(), depth in 0usize..6) {
        let t = Tiling::Rect(random_guillotine_rect(seed, depth));
        let text = tiling_to_string(&t);
        prop_assert_eq!(parse_tiling(&text).unwrap(), t);
    }

    #[test]
    fn guillotine_tilings_validate(seed in any::<u64>(), depth in 0usize..6, d in 2usize..5) {
        prop_assert!(random_guillotine_rect(seed, depth).is_valid());
        prop_assert!(random_guillotine_cuboid(seed, depth.min(4), d).unwrap().is_valid());
    }

    #[test]
    fn pipeline_q_is_a_multiple_of_the_oracle(seed in any::<u64>(), leaves in 1usize..7) {
        let t = random_ratio_tiling(seed, leaves, 5).unwrap();
        let cert = integerize_rect_tiling(&t).unwrap();
        let lambda = minimal_scale_oracle(&Tiling::Rect(tilescale::tiling::normalize_rect(&t))).unwrap();
        let ratio = Rat::from_int(cert.q.clone()) / &lambda;
        prop_assert!(ratio.is_integer(), "q = {} but oracle = {}", cert.q, lambda);
    }

    #[test]
    fn cuboid_json_round_trip(seed in any::<u64>(), depth in 0usize..4, d in 2usize..5) {
        let t = Tiling::Cuboid(random_guillotine_cuboid(seed, depth, d).unwrap());
        prop_assert_eq!(parse_tiling(&tiling_to_string(&t)).unwrap(), t);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn quilt_symmetry_and_multiples(w in 1u64..=7, h in 1u64..=7) {
        let f = |a, b| min_squares_with_limit(a, b, 40, 20_000_000).unwrap().count().unwrap();
        let base = f(w, h);
        prop_assert_eq!(base, f(h, w));
        prop_assert!(f(2 * w, 2 * h) <= base);
    }
}
