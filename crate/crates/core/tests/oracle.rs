use num_bigint::BigInt;
use tilescale::generators::{dehn_sharpness_tiling, fibonacci_tiling};
use tilescale::oracle::*;
use tilescale::tiling::{normalize_rect, Tiling};
use tilescale::{Error, Rat};

fn minimum(w: u64, h: u64) -> usize {
    min_squares_with_limit(w, h, 64, 50_000_000)
        .unwrap()
        .count()
        .unwrap()
}

#[test]
fn oracle_on_normalized_fibonacci() {
    let t = Tiling::Rect(normalize_rect(&fibonacci_tiling(5).unwrap()));
    assert_eq!(minimal_scale_oracle(&t).unwrap(), Rat::from_int(8));
}

#[test]
fn oracle_on_dehn_tiling() {
    let t = Tiling::Rect(dehn_sharpness_tiling());
    assert_eq!(minimal_scale_oracle(&t).unwrap(), Rat::from_int(4));
    assert_eq!(normalized_scale_oracle(&t).unwrap(), Rat::from_int(8));
}

#[test]
fn integer_tiling_has_unit_oracle() {
    let t = Tiling::Rect(fibonacci_tiling(4).unwrap());
    assert_eq!(minimal_scale_oracle(&t).unwrap(), Rat::one());
    assert_eq!(normalized_scale_oracle(&t).unwrap(), Rat::from_int(5));
}

#[test]
fn oracle_is_minimal_by_scan() {
    let t = Tiling::Rect(normalize_rect(&fibonacci_tiling(6).unwrap()));
    let lambda = minimal_scale_oracle(&t).unwrap();
    let sides: Vec<Rat> = t.side_lengths().into_iter().flatten().collect();
    let ok = |l: &Rat| sides.iter().all(|s| (l * s).is_integer());
    assert!(ok(&lambda));
    // any integerizing λ = a/b must have b | gcd of numerators; scan a/b < λ
    for b in 1..=8i64 {
        for a in 1..200i64 {
            let l = Rat::new(a, b);
            if l < lambda {
                assert!(!ok(&l), "{l} also integerizes");
            }
        }
    }
}

#[test]
fn quilt_small_cases() {
    assert_eq!(minimum(1, 1), 1);
    assert_eq!(minimum(2, 3), 3);
    assert_eq!(minimum(5, 6), 5);
    assert_eq!(minimum(3, 3), 1);
}

#[test]
fn quilt_witness_validates() {
    let QuiltOutcome::Minimum { squares, count, .. } =
        min_squares_with_limit(6, 5, 10, 1_000_000).unwrap()
    else {
        panic!("expected a minimum");
    };
    assert_eq!(count, 5);
    let mut sides: Vec<u64> = squares.iter().map(|s| s.side).collect();
    sides.sort_unstable();
    assert_eq!(sides, vec![2, 2, 2, 3, 3]);
    assert!(quilt_tiling(6, 5, &squares).is_valid());
}

#[test]
fn quilt_symmetric_and_scaling() {
    for (w, h) in [(2, 3), (3, 4), (4, 7), (5, 6)] {
        let f = minimum(w, h);
        assert_eq!(f, minimum(h, w));
        assert!(minimum(2 * w, 2 * h) <= f);
    }
}

#[test]
fn quilt_max_tiles_cutoff() {
    let out = min_squares_with_limit(5, 6, 4, 1_000_000).unwrap();
    assert!(matches!(out, QuiltOutcome::ExceedsMaxTiles { .. }));
}

#[test]
fn quilt_node_limit_is_an_error() {
    let err = min_squares_with_limit(7, 9, 20, 10).unwrap_err();
    assert!(matches!(err, Error::NodeLimit(10)));
}

#[test]
fn audits() {
    let a = bound_audit(2, 3, 3).unwrap();
    assert_eq!(a.four_pow, BigInt::from(64));
    assert!(a.holds && a.two_pow_holds);
    assert!(bound_audit(1, 1, 1).unwrap().holds);
    assert!(bound_audit(5, 6, 5).unwrap().holds);
    assert!(matches!(bound_audit(2, 4, 2), Err(Error::Precondition(_))));
    assert!(matches!(
        bound_audit(1, 9, 1),
        Err(Error::TheoremViolation(_))
    ));
}
