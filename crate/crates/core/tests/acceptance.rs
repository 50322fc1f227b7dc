use std::collections::BTreeSet;
use std::io::Write;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tilescale::coords::{
    cuboid_best_axis_pair, cuboid_hyperplane_cover, rect_coord_sets, tri_best_rotation,
};
use tilescale::diophantine::{dirichlet, verify_approx};
use tilescale::generators::*;
use tilescale::integerize::*;
use tilescale::numeric::{nearest_int_distance, round_nearest};
use tilescale::oracle::{
    bound_audit, min_squares_exhaustive, minimal_scale_oracle, quilt_tiling, QuiltOutcome,
};
use tilescale::tiling::*;
use tilescale::Rat;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

fn int(n: i64) -> Rat {
    Rat::from_int(n)
}

fn r(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

fn all_integer(c: &ScalingCertificate) -> bool {
    c.tiling.validate().is_valid()
        && c.tiling
            .side_lengths()
            .iter()
            .flatten()
            .all(|s| s.is_integer() && s.is_positive())
}

/// `‖q·n/d‖ < 1/m` in plain integer arithmetic.
fn close(q: u64, n: u64, d: u64, m: u64) -> bool {
    let rem = (q * n) % d;
    m * rem.min(d - rem) < d
}

fn dirichlet_contract() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for trial in 0..1000 {
        let k = rng.gen_range(1..=5);
        let m = rng.gen_range(2..=4u64);
        let pairs: Vec<(u64, u64)> = (0..k)
            .map(|_| {
                let d = rng.gen_range(1..=50u64);
                (rng.gen_range(0..d), d)
            })
            .collect();
        let values: Vec<Rat> = pairs.iter().map(|&(n, d)| r(n as i64, d as i64)).collect();
        let res = dirichlet(&values, m).map_err(|e| format!("trial {trial}: {e}"))?;
        let q = res.q.to_u64().ok_or("q does not fit u64")?;
        ensure(q >= 1 && big(q) <= big(m).pow(k as u32), || {
            format!("trial {trial}: q = {q} outside [1, {m}^{k}]")
        })?;
        ensure(pairs.iter().all(|&(n, d)| close(q, n, d, m)), || {
            format!("trial {trial}: q = {q} misses a strict inequality")
        })?;
        ensure(verify_approx(&values, m, &res.q).unwrap().ok, || {
            format!("trial {trial}: verify_approx disagrees")
        })?;
        for smaller in 1..q {
            ensure(!pairs.iter().all(|&(n, d)| close(smaller, n, d, m)), || {
                format!("trial {trial}: {smaller} < {q} also works")
            })?;
        }
    }
    Ok(())
}

fn square_pipeline() -> Check {
    let fib = fibonacci_numbers(13);
    for (n, next) in fib.iter().enumerate().skip(1) {
        let t = fibonacci_tiling(n).map_err(|e| e.to_string())?;
        let c = integerize_square_tiling(&t).map_err(|e| format!("fibonacci {n}: {e}"))?;
        let cap = BigInt::from(4u32).pow(n as u32);
        ensure(c.q <= cap && all_integer(&c), || {
            format!("fibonacci {n}: q = {}", c.q)
        })?;
        let lambda =
            minimal_scale_oracle(&Tiling::Rect(normalize_rect(&t))).map_err(|e| e.to_string())?;
        ensure(
            lambda == Rat::from_int(next.clone()) && *next <= cap,
            || format!("fibonacci {n}: oracle {lambda}, expected {next}"),
        )?;
    }
    for k in 1..=6usize {
        let t = dyadic_square_tiling(k).map_err(|e| e.to_string())?;
        let n = t.tiles.len() as u32;
        let c = integerize_square_tiling(&t).map_err(|e| format!("dyadic {k}: {e}"))?;
        ensure(c.q <= BigInt::from(4u32).pow(n) && all_integer(&c), || {
            format!("dyadic {k}: q = {}", c.q)
        })?;
    }
    Ok(())
}

fn sharpness() -> Check {
    let t = dehn_sharpness_tiling();
    ensure(t.is_valid(), || "tiling does not validate".into())?;
    let coords: BTreeSet<Rat> = t
        .tiles
        .iter()
        .flat_map(|tile| [&tile.rect.x0, &tile.rect.x1, &tile.rect.y0, &tile.rect.y1])
        .cloned()
        .collect();
    let far = coords.iter().map(nearest_int_distance).max().unwrap();
    ensure(far == r(1, 4), || format!("max coordinate distance {far}"))?;
    ensure(almost_integer_snap(&t).is_err(), || {
        "snap accepted the tiling".into()
    })?;
    let sides: BTreeSet<Rat> = t.side_lengths().into_iter().flatten().collect();
    let expected: BTreeSet<Rat> = [r(3, 4), r(1, 2), r(1, 4)].into_iter().collect();
    ensure(sides == expected, || format!("sides {sides:?}"))?;
    let lambda = minimal_scale_oracle(&Tiling::Rect(t)).map_err(|e| e.to_string())?;
    ensure(lambda == int(4), || format!("oracle {lambda}"))
}

fn coordinate_count() -> Check {
    let mut corpus: Vec<(String, RectTiling)> = Vec::new();
    for n in 1..=12 {
        corpus.push((format!("fibonacci {n}"), fibonacci_tiling(n).unwrap()));
    }
    for k in 1..=6 {
        corpus.push((format!("dyadic {k}"), dyadic_square_tiling(k).unwrap()));
    }
    corpus.push(("dehn".into(), dehn_sharpness_tiling()));
    for seed in 0..20 {
        corpus.push((
            format!("ratio {seed}"),
            random_ratio_tiling(seed, 6, 5).unwrap(),
        ));
    }
    for seed in 0..1000u64 {
        corpus.push((
            format!("guillotine {seed}"),
            random_guillotine_rect(seed, (seed % 7) as usize),
        ));
    }
    for (name, t) in &corpus {
        let rep = rect_coord_sets(t);
        ensure(rep.pass, || {
            format!("{name}: {} > {}", rep.count, rep.bound)
        })?;
    }
    let single = rect_coord_sets(&fibonacci_tiling(1).unwrap());
    let fib3 = rect_coord_sets(&fibonacci_tiling(3).unwrap());
    ensure(single.count == 4 && fib3.count == 6, || {
        format!("equality cases gave {} and {}", single.count, fib3.count)
    })
}

fn covered(t: &CuboidTiling, planes: &BTreeSet<(usize, Rat)>) -> bool {
    t.tiles.iter().all(|tile| {
        (0..t.dim()).all(|axis| {
            [&tile.cuboid.lo[axis], &tile.cuboid.hi[axis]]
                .into_iter()
                .all(|v| {
                    *v == t.region.lo[axis]
                        || *v == t.region.hi[axis]
                        || planes.contains(&(axis, v.clone()))
                })
        })
    })
}

fn hyperplane_cover() -> Check {
    let mut corpus = Vec::new();
    for d in 2..=4 {
        for k in 1..=3 {
            corpus.push((
                format!("dyadic d={d} k={k}"),
                dyadic_cube_tiling(d, k).unwrap(),
            ));
        }
    }
    for seed in 0..200u64 {
        let d = 2 + (seed % 3) as usize;
        let t = random_guillotine_cuboid(seed, (seed % 5) as usize, d).unwrap();
        corpus.push((format!("guillotine {seed}"), t));
    }
    for (name, t) in &corpus {
        let cover = cuboid_hyperplane_cover(t);
        let planes: BTreeSet<(usize, Rat)> = cover
            .hyperplanes
            .iter()
            .map(|h| (h.axis, h.value.clone()))
            .collect();
        ensure(
            cover.pass && cover.hyperplanes.len() < t.tiles.len().max(1),
            || format!("{name}: {} hyperplanes", cover.hyperplanes.len()),
        )?;
        ensure(covered(t, &planes), || {
            format!("{name}: a face is not covered")
        })?;
        let pair = cuboid_best_axis_pair(t).map_err(|e| e.to_string())?;
        ensure(pair.pass, || {
            format!("{name}: pair count {} > {}", pair.count, pair.bound)
        })?;
    }
    Ok(())
}

fn hypercube_pipeline() -> Check {
    for (k, n) in [(1usize, 8u64), (2, 15), (3, 22), (4, 29)] {
        let t = dyadic_cube_tiling(3, k).unwrap();
        ensure(t.tiles.len() as u64 == n, || {
            format!("k = {k}: {} cubes", t.tiles.len())
        })?;
        let c = integerize_hypercube_tiling(&t).map_err(|e| format!("k = {k}: {e}"))?;
        ensure(c.q == BigInt::one() << k && all_integer(&c), || {
            format!("k = {k}: q = {}", c.q)
        })?;
        let lhs = BigInt::from(2u32).pow(3 * k as u32);
        let rhs = BigInt::from(4u32).pow((2 * (n - 1) + 3) as u32);
        ensure(lhs <= rhs, || format!("k = {k}: bound comparison fails"))?;
        let Tiling::Cuboid(scaled) = &c.tiling else {
            return Err("pipeline returned a non-box tiling".into());
        };
        let [i, j] = c.axes.ok_or("no axes recorded")?;
        for anchor in section_anchors(scaled, i, j) {
            let sec = cuboid_cross_section(scaled, i, j, &anchor).map_err(|e| e.to_string())?;
            let ok = sec.side_lengths().iter().flatten().all(Rat::is_integer);
            ensure(ok, || {
                format!("k = {k}: section at {anchor:?} has a fractional side")
            })?;
        }
    }
    Ok(())
}

fn triangle_pipeline() -> Check {
    for k in 1..=5usize {
        let t = dyadic_triangle_tiling(k).unwrap();
        let n = t.tiles.len() as u32;
        let c = integerize_triangle_tiling(&t).map_err(|e| format!("k = {k}: {e}"))?;
        ensure(c.q == BigInt::one() << k && all_integer(&c), || {
            format!("k = {k}: q = {}", c.q)
        })?;
        ensure(c.q.pow(3) <= BigInt::from(4u32).pow(2 * n - 2), || {
            format!("k = {k}: q^3 too big")
        })?;
        let choice = tri_best_rotation(&t).map_err(|e| e.to_string())?;
        ensure(3 * choice.coords.len() as u32 <= 2 * n - 2, || {
            format!("k = {k}: {} coordinates for {n} tiles", choice.coords.len())
        })?;
    }
    Ok(())
}

fn ratio_ok(c: &ScalingCertificate) -> bool {
    let Tiling::Rect(scaled) = &c.tiling else {
        return false;
    };
    c.bound.admits(&c.q)
        && all_integer(c)
        && scaled.tiles.iter().all(|tile| {
            let ratio = tile.ratio.expect("ratios survive scaling");
            let s = tile.rect.height() / int(ratio.p as i64);
            s.is_integer() && tile.rect.width() == &s * &int(ratio.q as i64)
        })
}

fn ratio_pipeline() -> Check {
    let third = RectTiling::new(
        Rect::new(int(0), int(1), int(0), int(1)),
        vec![
            RectTile::with_ratio(Rect::new(int(0), r(1, 3), int(0), int(1)), Ratio::new(3, 1)),
            RectTile::with_ratio(Rect::new(r(1, 3), int(1), int(0), int(1)), Ratio::new(3, 2)),
        ],
    );
    let c = integerize_rect_tiling(&third).map_err(|e| e.to_string())?;
    ensure(c.q == big(3) && ratio_ok(&c), || {
        format!("third cut: q = {}", c.q)
    })?;
    for seed in 0..100u64 {
        let t = random_ratio_tiling(seed, 1 + (seed % 6) as usize, 5).unwrap();
        let c = integerize_rect_tiling(&t).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(ratio_ok(&c), || {
            format!("seed {seed}: q = {} (bound {})", c.q, c.bound)
        })?;
    }
    Ok(())
}

fn rn(x: &Rat) -> Rat {
    Rat::from_int(round_nearest(x))
}

fn flow_harness() -> Check {
    let mut rects: Vec<(String, RectTiling)> = Vec::new();
    let mut tris: Vec<(String, TriTiling)> = Vec::new();
    let mut add = |name: String, c: ScalingCertificate| match c.tiling {
        Tiling::Rect(t) => rects.push((name, t)),
        Tiling::Tri(t) => tris.push((name, t)),
        Tiling::Cuboid(t) => {
            let [i, j] = c.axes.expect("box certificates carry axes");
            for anchor in section_anchors(&t, i, j).into_iter().take(16) {
                let sec = cuboid_cross_section(&t, i, j, &anchor).expect("section");
                rects.push((format!("{name} section {anchor:?}"), sec));
            }
        }
    };
    for n in 1..=12 {
        add(
            format!("fibonacci {n}"),
            integerize_square_tiling(&fibonacci_tiling(n).unwrap()).unwrap(),
        );
    }
    for k in 1..=6 {
        add(
            format!("dyadic {k}"),
            integerize_square_tiling(&dyadic_square_tiling(k).unwrap()).unwrap(),
        );
    }
    add(
        "dehn".into(),
        integerize_square_tiling(&dehn_sharpness_tiling()).unwrap(),
    );
    for seed in 0..30 {
        let t = random_ratio_tiling(seed, 5, 5).unwrap();
        add(format!("ratio {seed}"), integerize_rect_tiling(&t).unwrap());
    }
    for k in 1..=3 {
        add(
            format!("cube {k}"),
            integerize_hypercube_tiling(&dyadic_cube_tiling(3, k).unwrap()).unwrap(),
        );
    }
    for k in 1..=5 {
        add(
            format!("triangle {k}"),
            integerize_triangle_tiling(&dyadic_triangle_tiling(k).unwrap()).unwrap(),
        );
    }
    for seed in 0..20 {
        let t = random_triangle_splits(seed, 4);
        add(
            format!("split {seed}"),
            integerize_triangle_tiling(&t).unwrap(),
        );
    }

    let shift = r(1, 8);
    for (name, t) in &rects {
        let rep = rfunction_flow_check(t, rn).map_err(|e| format!("{name}: {e}"))?;
        ensure(rep.hypotheses_hold && rep.consistent(), || {
            format!("{name}: {rep:?}")
        })?;
        let moved = t
            .scale_translate(&Rat::one(), &[shift.clone(), Rat::zero()])
            .unwrap();
        let rep = rfunction_flow_check(&moved, rn).map_err(|e| format!("{name}: {e}"))?;
        ensure(rep.consistent(), || {
            format!("{name} shifted: counterexample {rep:?}")
        })?;
    }
    for (name, t) in &tris {
        let rep = tri_flow_check(t, rn).map_err(|e| format!("{name}: {e}"))?;
        ensure(rep.hypotheses_hold && rep.consistent(), || {
            format!("{name}: {rep:?}")
        })?;
    }
    Ok(())
}

fn quilt_search() -> Check {
    let mut expected = vec![((1, 1), 1), ((2, 3), 3), ((5, 6), 5)];
    for p in 1..=10u64 {
        for q in p..=10u64 {
            if p.gcd(&q) != 1 {
                continue;
            }
            let out = min_squares_exhaustive(p, q, 32).map_err(|e| format!("{p} x {q}: {e}"))?;
            let QuiltOutcome::Minimum { count, squares, .. } = out else {
                return Err(format!("{p} x {q}: more than 32 squares"));
            };
            ensure(quilt_tiling(p, q, &squares).is_valid(), || {
                format!("{p} x {q}: bad witness")
            })?;
            let audit = bound_audit(p, q, count).map_err(|e| e.to_string())?;
            ensure(audit.holds, || format!("{p} x {q}: 4^{count} < {q}"))?;
            expected.retain(|&(dims, n)| {
                if dims == (p, q) {
                    assert_eq!(count, n, "{p} x {q}");
                    false
                } else {
                    true
                }
            });
        }
    }
    ensure(expected.is_empty(), || {
        format!("cases not reached: {expected:?}")
    })
}

fn completed_regions() -> Check {
    let h = r(1, 2);
    let trapezoid = TriTiling::new(
        TriRegion::Trapezoid {
            a: int(0),
            b: int(0),
            base: int(1),
            top: h.clone(),
            height: h.clone(),
        },
        vec![
            TriTile::new(int(0), int(0), h.clone()),
            TriTile::new(h.clone(), int(0), h.clone()),
            TriTile::new(h.clone(), h.clone(), -h.clone()),
        ],
    );
    let parallelogram = TriTiling::new(
        TriRegion::Parallelogram {
            a: int(0),
            b: int(0),
            p: int(2),
            q: int(1),
        },
        vec![
            TriTile::new(int(0), int(0), int(1)),
            TriTile::new(int(1), int(1), int(-1)),
            TriTile::new(int(1), int(0), int(1)),
            TriTile::new(int(2), int(1), int(-1)),
        ],
    );
    let mut corpus = vec![
        ("trapezoid".to_string(), trapezoid),
        ("parallelogram".to_string(), parallelogram),
    ];
    for seed in 0..25u64 {
        let splits = 1 + (seed % 4) as usize;
        corpus.push((format!("trapezoid {seed}"), random_trapezoid(seed, splits)));
        corpus.push((
            format!("parallelogram {seed}"),
            random_parallelogram(seed, splits),
        ));
    }
    for (name, t) in &corpus {
        let c = integerize_trapezoid_or_parallelogram(t).map_err(|e| format!("{name}: {e}"))?;
        let n = t.tiles.len() as u64;
        let exponent = match t.region {
            TriRegion::Trapezoid { .. } => 2 * n,
            _ => 2 * n + 2,
        };
        let bound_ok = c.q.pow(3) <= BigInt::from(4u32).pow(exponent as u32);
        let Tiling::Tri(out) = &c.tiling else {
            return Err(format!("{name}: not a triangle tiling"));
        };
        ensure(bound_ok && c.bound.admits(&c.q), || {
            format!("{name}: q = {}", c.q)
        })?;
        ensure(
            out.tiles.len() == t.tiles.len() && out.region.kind() == t.region.kind(),
            || format!("{name}: augmentation tiles leaked into the result"),
        )?;
        ensure(all_integer(&c), || format!("{name}: non-integer sides"))?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("Dirichlet contract", dirichlet_contract),
        ("square pipeline within 4^n", square_pipeline),
        ("sharpness of 1/4", sharpness),
        ("coordinate count n+3", coordinate_count),
        ("hyperplane cover", hyperplane_cover),
        ("hypercube pipeline", hypercube_pipeline),
        ("triangle pipeline", triangle_pipeline),
        ("ratio pipeline", ratio_pipeline),
        ("rounding flow harness", flow_harness),
        ("quilt search vs 4^n", quilt_search),
        ("trapezoid and parallelogram", completed_regions),
    ];
    let mut out = std::io::stdout();
    let mut failed = Vec::new();
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        let line = match &result {
            Ok(()) => format!("criterion {:2} PASS  {name} ({secs:.2}s)", k + 1),
            Err(e) => format!("criterion {:2} FAIL  {name}: {e}", k + 1),
        };
        writeln!(out, "{line}").unwrap();
        if result.is_err() {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
