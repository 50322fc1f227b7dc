//! Example tilings: Fibonacci spirals, dyadic squares/cubes/triangles, the
//! 17-square tiling that shows the 1/4 threshold is sharp, and seeded random
//! tilings for property tests.

use num_bigint::BigInt;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numeric::Rat;
use crate::tiling::{
    Cuboid, CuboidTile, CuboidTiling, Ratio, Rect, RectTile, RectTiling, Tiling, TriRegion,
    TriTile, TriTiling,
};

/// Largest denominator used for random cut positions.
pub const RANDOM_CUT_DENOMINATOR: u64 = 6;

const MAX_DIM: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RandomKind {
    Rect,
    Cuboid,
    Triangle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorSpec {
    Fibonacci {
        n: usize,
    },
    DyadicSquare {
        k: usize,
    },
    DyadicCube {
        d: usize,
        k: usize,
    },
    DyadicTriangle {
        k: usize,
    },
    DehnSharpness,
    RandomGuillotine {
        kind: RandomKind,
        seed: u64,
        depth: usize,
        /// Dimension for cuboid tilings.
        d: usize,
    },
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<Tiling> {
        Ok(match *self {
            GeneratorSpec::Fibonacci { n } => Tiling::Rect(fibonacci_tiling(n)?),
            GeneratorSpec::DyadicSquare { k } => Tiling::Rect(dyadic_square_tiling(k)?),
            GeneratorSpec::DyadicCube { d, k } => Tiling::Cuboid(dyadic_cube_tiling(d, k)?),
            GeneratorSpec::DyadicTriangle { k } => Tiling::Tri(dyadic_triangle_tiling(k)?),
            GeneratorSpec::DehnSharpness => Tiling::Rect(dehn_sharpness_tiling()),
            GeneratorSpec::RandomGuillotine {
                kind,
                seed,
                depth,
                d,
            } => match kind {
                RandomKind::Rect => Tiling::Rect(random_guillotine_rect(seed, depth)),
                RandomKind::Cuboid => Tiling::Cuboid(random_guillotine_cuboid(seed, depth, d)?),
                RandomKind::Triangle => Tiling::Tri(random_triangle_splits(seed, depth)),
            },
        })
    }
}

fn at_least(name: &str, value: usize, min: usize) -> Result<()> {
    if value < min {
        return Err(Error::Precondition(format!(
            "{name} must be at least {min}, got {value}"
        )));
    }
    Ok(())
}

fn int(n: i64) -> Rat {
    Rat::from_int(n)
}

fn dyadic(exp: usize) -> Rat {
    Rat::new(BigInt::one(), BigInt::one() << exp)
}

/// `u_1, …, u_n` with `u_1 = u_2 = 1`.
pub fn fibonacci_numbers(n: usize) -> Vec<BigInt> {
    let mut u: Vec<BigInt> = Vec::with_capacity(n);
    for i in 0..n {
        let next = if i < 2 {
            BigInt::one()
        } else {
            &u[i - 1] + &u[i - 2]
        };
        u.push(next);
    }
    u
}

/// The `u_n × u_{n+1}` rectangle tiled by squares of sides `u_1, …, u_n`,
/// built by attaching each new square to the right, bottom, left and top in
/// turn, then made upright with the corner at the origin.
pub fn fibonacci_tiling(n: usize) -> Result<RectTiling> {
    at_least("n", n, 1)?;
    let u = fibonacci_numbers(n);
    let mut region = Rect::new(int(0), int(1), int(0), int(1));
    let mut tiles = vec![RectTile::square(int(0), int(0), int(1))];
    for (k, side) in u.iter().enumerate().skip(1) {
        let s = Rat::from_int(side.clone());
        let tile = match k % 4 {
            1 => RectTile::square(region.x1.clone(), region.y0.clone(), s.clone()),
            2 => RectTile::square(region.x0.clone(), &region.y0 - &s, s.clone()),
            3 => RectTile::square(&region.x0 - &s, region.y0.clone(), s.clone()),
            _ => RectTile::square(region.x0.clone(), region.y1.clone(), s.clone()),
        };
        region = Rect::new(
            region.x0.clone().min(tile.rect.x0.clone()),
            region.x1.clone().max(tile.rect.x1.clone()),
            region.y0.clone().min(tile.rect.y0.clone()),
            region.y1.clone().max(tile.rect.y1.clone()),
        );
        tiles.push(tile);
    }
    let offset = [-&region.x0, -&region.y0];
    let t = RectTiling::new(region, tiles).scale_translate(&Rat::one(), &offset)?;
    Ok(if t.region.width() > t.region.height() {
        t.transpose()
    } else {
        t
    })
}

/// Unit square: at each of the first `k − 1` levels three quadrant squares
/// are kept and the top-right quadrant is subdivided again; the last level
/// keeps all four. `3k + 1` tiles.
pub fn dyadic_square_tiling(k: usize) -> Result<RectTiling> {
    let cubes = dyadic_cube_tiling(2, k)?;
    let to_rect = |c: &Cuboid| {
        Rect::new(
            c.lo[0].clone(),
            c.hi[0].clone(),
            c.lo[1].clone(),
            c.hi[1].clone(),
        )
    };
    Ok(RectTiling::new(
        to_rect(&cubes.region),
        cubes
            .tiles
            .iter()
            .map(|t| RectTile::new(to_rect(&t.cuboid)))
            .collect(),
    ))
}

/// Unit `d`-cube analogue of [`dyadic_square_tiling`]: `2^d − 1` cubes per
/// level, recursing into the top orthant; `(2^d − 1)k + 1` tiles.
pub fn dyadic_cube_tiling(d: usize, k: usize) -> Result<CuboidTiling> {
    at_least("d", d, 2)?;
    at_least("k", k, 1)?;
    if d > MAX_DIM {
        return Err(Error::Precondition(format!(
            "d must be at most {MAX_DIM}, got {d}"
        )));
    }
    let mut tiles = Vec::new();
    let mut origin = vec![Rat::zero(); d];
    for level in 1..=k {
        let h = dyadic(level);
        let last = level == k;
        for mask in 0u32..(1 << d) {
            let top = mask == (1 << d) - 1;
            if top && !last {
                continue;
            }
            let lo = (0..d)
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        &origin[i] + &h
                    } else {
                        origin[i].clone()
                    }
                })
                .collect();
            tiles.push(CuboidTile::new(Cuboid::cube(lo, &h)));
        }
        origin = origin.iter().map(|x| x + &h).collect();
    }
    Ok(CuboidTiling::new(
        Cuboid::cube(vec![Rat::zero(); d], &Rat::one()),
        tiles,
    ))
}

/// The four half-size triangles of `t`: three corner copies and the
/// oppositely oriented middle one. Works for either orientation.
pub fn split_triangle(t: &TriTile) -> [TriTile; 4] {
    let h = &t.c / &int(2);
    [
        TriTile::new(t.a.clone(), t.b.clone(), h.clone()),
        TriTile::new(&t.a + &h, t.b.clone(), h.clone()),
        TriTile::new(t.a.clone(), &t.b + &h, h.clone()),
        TriTile::new(&t.a + &h, &t.b + &h, -h),
    ]
}

/// `T(0, 0, 1)` split into four, recursing into the apex triangle; `3k + 1`
/// tiles, smallest side `2^{-k}`.
pub fn dyadic_triangle_tiling(k: usize) -> Result<TriTiling> {
    at_least("k", k, 1)?;
    let mut tiles = Vec::new();
    let mut apex = TriTile::new(Rat::zero(), Rat::zero(), Rat::one());
    for level in 1..=k {
        let [left, right, top, middle] = split_triangle(&apex);
        tiles.extend([left, right, middle]);
        if level == k {
            tiles.push(top);
        } else {
            apex = top;
        }
    }
    Ok(TriTiling::new(TriRegion::unit_triangle(), tiles))
}

/// `[−1, 1]²` tiled by four 3/4-squares in the corners, five 1/2-squares
/// (centre and edge middles) and eight 1/4-squares between each edge-middle
/// square and the boundary. Vertex coordinates are `0, ±1/4, ±3/4, ±1`.
pub fn dehn_sharpness_tiling() -> RectTiling {
    let q = |n: i64| Rat::new(n, 4);
    let sq = |x: i64, y: i64, s: i64| RectTile::square(q(x), q(y), q(s));
    let mut tiles = vec![
        // corners
        sq(-4, -4, 3),
        sq(1, -4, 3),
        sq(-4, 1, 3),
        sq(1, 1, 3),
        // centre
        sq(-1, -1, 2),
        // edge middles
        sq(-1, -3, 2),
        sq(-1, 1, 2),
        sq(-3, -1, 2),
        sq(1, -1, 2),
    ];
    tiles.extend([
        sq(-1, -4, 1),
        sq(0, -4, 1),
        sq(-1, 3, 1),
        sq(0, 3, 1),
        sq(-4, -1, 1),
        sq(-4, 0, 1),
        sq(3, -1, 1),
        sq(3, 0, 1),
    ]);
    RectTiling::new(Rect::new(q(-4), q(4), q(-4), q(4)), tiles)
}

/// A cut strictly inside `(lo, hi)` at a fraction with denominator at most
/// [`RANDOM_CUT_DENOMINATOR`], avoiding values in `used` when possible.
fn random_cut(rng: &mut ChaCha8Rng, lo: &Rat, hi: &Rat, used: &[Rat]) -> Rat {
    let span = hi - lo;
    let mut cut = None;
    for _ in 0..16 {
        let m = rng.gen_range(2..=RANDOM_CUT_DENOMINATOR);
        let j = rng.gen_range(1..m);
        let c = lo + &(&span * &Rat::new(j, m));
        let fresh = !used.contains(&c);
        cut = Some(c);
        if fresh {
            break;
        }
    }
    cut.expect("at least one attempt")
}

fn guillotine_boxes(rng: &mut ChaCha8Rng, region: Cuboid, depth: usize) -> Vec<Cuboid> {
    let d = region.dim();
    let mut used: Vec<Vec<Rat>> = (0..d)
        .map(|i| vec![region.lo[i].clone(), region.hi[i].clone()])
        .collect();
    let mut boxes = vec![region];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(boxes.len() * 2);
        for b in boxes {
            let axis = rng.gen_range(0..d);
            let cut = random_cut(rng, &b.lo[axis], &b.hi[axis], &used[axis]);
            used[axis].push(cut.clone());
            let mut left = b.clone();
            let mut right = b;
            left.hi[axis] = cut.clone();
            right.lo[axis] = cut;
            next.push(left);
            next.push(right);
        }
        boxes = next;
    }
    boxes
}

/// Unit square cut recursively `depth` times into `2^depth` rectangles.
pub fn random_guillotine_rect(seed: u64, depth: usize) -> RectTiling {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let unit = Cuboid::cube(vec![Rat::zero(); 2], &Rat::one());
    let boxes = guillotine_boxes(&mut rng, unit, depth);
    RectTiling::new(
        Rect::new(int(0), int(1), int(0), int(1)),
        boxes
            .into_iter()
            .map(|b| {
                RectTile::new(Rect::new(
                    b.lo[0].clone(),
                    b.hi[0].clone(),
                    b.lo[1].clone(),
                    b.hi[1].clone(),
                ))
            })
            .collect(),
    )
}

/// Unit `d`-cube cut recursively `depth` times into `2^depth` boxes.
pub fn random_guillotine_cuboid(seed: u64, depth: usize, d: usize) -> Result<CuboidTiling> {
    at_least("d", d, 2)?;
    if d > MAX_DIM {
        return Err(Error::Precondition(format!(
            "d must be at most {MAX_DIM}, got {d}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let region = Cuboid::cube(vec![Rat::zero(); d], &Rat::one());
    let boxes = guillotine_boxes(&mut rng, region.clone(), depth);
    Ok(CuboidTiling::new(
        region,
        boxes.into_iter().map(CuboidTile::new).collect(),
    ))
}

fn split_random_tiles(rng: &mut ChaCha8Rng, tiles: &mut Vec<TriTile>, splits: usize) {
    for _ in 0..splits {
        let i = rng.gen_range(0..tiles.len());
        let t = tiles.swap_remove(i);
        tiles.extend(split_triangle(&t));
    }
}

/// `T(0, 0, 1)` after `depth` 4-splits of randomly chosen tiles; `3·depth + 1`
/// tiles.
pub fn random_triangle_splits(seed: u64, depth: usize) -> TriTiling {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tiles = vec![TriTile::new(Rat::zero(), Rat::zero(), Rat::one())];
    split_random_tiles(&mut rng, &mut tiles, depth);
    TriTiling::new(TriRegion::unit_triangle(), tiles)
}

/// Triangles of side `1/m` filling the bottom `rows` rows of `T(0, 0, 1)`.
fn triangle_grid_rows(m: i64, rows: i64) -> Vec<TriTile> {
    let s = Rat::new(1, m);
    let mut tiles = Vec::new();
    for r in 0..rows {
        for i in 0..m - r {
            tiles.push(TriTile::new(Rat::new(i, m), Rat::new(r, m), s.clone()));
        }
        for i in 0..m - r - 1 {
            tiles.push(TriTile::new(
                Rat::new(i + 1, m),
                Rat::new(r + 1, m),
                -s.clone(),
            ));
        }
    }
    tiles
}

/// A trapezoid cut from the bottom of `T(0, 0, 1)`: a grid of triangles of
/// side `1/m` over the bottom rows, with `splits` random 4-splits applied.
pub fn random_trapezoid(seed: u64, splits: usize) -> TriTiling {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m: i64 = rng.gen_range(2..=4);
    let rows: i64 = rng.gen_range(1..m);
    let mut tiles = triangle_grid_rows(m, rows);
    split_random_tiles(&mut rng, &mut tiles, splits);
    tiles.shuffle(&mut rng);
    let region = TriRegion::Trapezoid {
        a: Rat::zero(),
        b: Rat::zero(),
        base: Rat::one(),
        top: Rat::new(m - rows, m),
        height: Rat::new(rows, m),
    };
    TriTiling::new(region, tiles)
}

/// A `p × q` parallelogram of unit rhombi, each cut into an up and a down
/// triangle, with `splits` random 4-splits, scaled by a random `1/s`.
pub fn random_parallelogram(seed: u64, splits: usize) -> TriTiling {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p: i64 = rng.gen_range(1..=3);
    let q: i64 = rng.gen_range(1..=3);
    let mut tiles = Vec::new();
    for i in 0..p {
        for j in 0..q {
            tiles.push(TriTile::new(int(i), int(j), int(1)));
            tiles.push(TriTile::new(int(i + 1), int(j + 1), int(-1)));
        }
    }
    split_random_tiles(&mut rng, &mut tiles, splits);
    tiles.shuffle(&mut rng);
    let region = TriRegion::Parallelogram {
        a: Rat::zero(),
        b: Rat::zero(),
        p: int(p),
        q: int(q),
    };
    let scale = Rat::new(1, rng.gen_range(1..=5));
    TriTiling::new(region, tiles)
        .scale_translate(&scale, &[Rat::zero(), Rat::zero()])
        .expect("positive scale")
}

/// Rectangle tiling whose tiles carry random coprime ratios `p:q` with
/// entries at most `max_entry`, built bottom-up: leaves are `q × p` boxes
/// and each internal node rescales one child to glue it beside or above the
/// other. Has `leaves` tiles.
pub fn random_ratio_tiling(seed: u64, leaves: usize, max_entry: u64) -> Result<RectTiling> {
    at_least("leaves", leaves, 1)?;
    if max_entry < 1 {
        return Err(Error::Precondition("max_entry must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // (width, height, tiles placed relative to the lower-left corner)
    type Block = (Rat, Rat, Vec<RectTile>);
    let leaf = |rng: &mut ChaCha8Rng| -> Block {
        let ratio = loop {
            let r = Ratio::new(rng.gen_range(1..=max_entry), rng.gen_range(1..=max_entry));
            if r.is_reduced() {
                break r;
            }
        };
        let (w, h) = (Rat::from_int(ratio.q), Rat::from_int(ratio.p));
        let tile = RectTile::with_ratio(Rect::new(int(0), w.clone(), int(0), h.clone()), ratio);
        (w, h, vec![tile])
    };
    let place = |tiles: Vec<RectTile>, f: &Rat, dx: &Rat, dy: &Rat| -> Vec<RectTile> {
        tiles
            .into_iter()
            .map(|t| RectTile {
                rect: t.rect.map(f, dx, dy),
                ratio: t.ratio,
            })
            .collect()
    };

    let mut blocks: Vec<Block> = (0..leaves).map(|_| leaf(&mut rng)).collect();
    while blocks.len() > 1 {
        let i = rng.gen_range(0..blocks.len());
        let (w1, h1, t1) = blocks.swap_remove(i);
        let j = rng.gen_range(0..blocks.len());
        let (w2, h2, t2) = blocks.swap_remove(j);
        let zero = Rat::zero();
        let merged = if rng.gen_bool(0.5) {
            // side by side: match heights
            let f = &h1 / &h2;
            let mut tiles = t1;
            tiles.extend(place(t2, &f, &w1, &zero));
            (&w1 + &(&w2 * &f), h1, tiles)
        } else {
            // stacked: match widths
            let f = &w1 / &w2;
            let mut tiles = t1;
            tiles.extend(place(t2, &f, &zero, &h1));
            (w1, &h1 + &(&h2 * &f), tiles)
        };
        blocks.push(merged);
    }
    let (w, h, tiles) = blocks.pop().expect("one block");
    Ok(RectTiling::new(Rect::new(int(0), w, int(0), h), tiles))
}
