//! Brute-force oracles: the exact minimal integerizing scale of a tiling, and
//! an exhaustive search for the fewest integer squares tiling a `p × q`
//! rectangle.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{pow, rational_group_generator, serialize_bigint, Rat};
use crate::tiling::{Rect, RectTile, RectTiling, Tiling, TriRegion};

/// Environment variable overriding [`DEFAULT_NODE_LIMIT`].
pub const NODE_LIMIT_ENV: &str = "TILESCALE_SEARCH_NODE_LIMIT";

pub const DEFAULT_NODE_LIMIT: u64 = 200_000_000;

/// The smallest `λ > 0` making every side of every tile an integer.
pub fn minimal_scale_oracle(t: &Tiling) -> Result<Rat> {
    t.validate().into_result()?;
    let sides: Vec<Rat> = t.side_lengths().into_iter().flatten().collect();
    rational_group_generator(&sides)
}

/// The length the pipelines scale to 1: the longest region side for
/// rectangles and boxes, the side of the (completed) triangle otherwise.
pub fn normalizing_length(t: &Tiling) -> Rat {
    match t {
        Tiling::Rect(r) => r.region.width().max(r.region.height()),
        Tiling::Cuboid(c) => c
            .region
            .sides()
            .into_iter()
            .max()
            .expect("regions have at least one axis"),
        Tiling::Tri(tt) => match &tt.region {
            TriRegion::Triangle { c, .. } => c.clone(),
            TriRegion::Trapezoid { base, .. } => base.clone(),
            TriRegion::Parallelogram { p, q, .. } => p + q,
        },
    }
}

/// [`minimal_scale_oracle`] of the tiling scaled by `1 / normalizing_length`.
pub fn normalized_scale_oracle(t: &Tiling) -> Result<Rat> {
    Ok(minimal_scale_oracle(t)? * normalizing_length(t))
}

/// Node limit from [`NODE_LIMIT_ENV`], falling back to the default.
pub fn node_limit_from_env() -> Result<u64> {
    match std::env::var(NODE_LIMIT_ENV) {
        Ok(s) => s.trim().parse::<u64>().map_err(|_| {
            Error::Precondition(format!(
                "{NODE_LIMIT_ENV} must be a non-negative integer, got {s:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_NODE_LIMIT),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlacedSquare {
    pub x: u64,
    pub y: u64,
    pub side: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuiltOutcome {
    Minimum {
        count: usize,
        squares: Vec<PlacedSquare>,
        nodes: u64,
    },
    /// Every tiling needs more than `max_tiles` squares.
    ExceedsMaxTiles { nodes: u64 },
}

impl QuiltOutcome {
    pub fn count(&self) -> Option<usize> {
        match self {
            QuiltOutcome::Minimum { count, .. } => Some(*count),
            QuiltOutcome::ExceedsMaxTiles { .. } => None,
        }
    }
}

/// The squares as a tiling of `[0, width] × [0, height]`.
pub fn quilt_tiling(width: u64, height: u64, squares: &[PlacedSquare]) -> RectTiling {
    let region = Rect::new(
        Rat::zero(),
        Rat::from_int(width),
        Rat::zero(),
        Rat::from_int(height),
    );
    let tiles = squares
        .iter()
        .map(|s| {
            RectTile::square(
                Rat::from_int(s.x),
                Rat::from_int(s.y),
                Rat::from_int(s.side),
            )
        })
        .collect();
    RectTiling::new(region, tiles)
}

/// Squares cut off by the Euclidean algorithm; always a valid tiling.
pub fn euclid_squares(width: u64, height: u64) -> Vec<PlacedSquare> {
    let mut out = Vec::new();
    let (mut x, mut y, mut w, mut h) = (0, 0, width, height);
    while w > 0 && h > 0 {
        if w >= h {
            out.push(PlacedSquare { x, y, side: h });
            x += h;
            w -= h;
        } else {
            out.push(PlacedSquare { x, y, side: w });
            y += w;
            h -= w;
        }
    }
    out
}

struct Search {
    height: u32,
    limit: u64,
    nodes: u64,
    heights: Vec<u32>,
    stack: Vec<PlacedSquare>,
    best: usize,
    best_squares: Option<Vec<PlacedSquare>>,
    largest_area: u64,
}

impl Search {
    fn run(&mut self, remaining: u64) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::NodeLimit(self.limit));
        }
        if remaining == 0 {
            if self.stack.len() < self.best {
                self.best = self.stack.len();
                self.best_squares = Some(self.stack.clone());
            }
            return Ok(());
        }
        let needed = remaining.div_ceil(self.largest_area) as usize;
        if self.stack.len() + needed.max(1) >= self.best {
            return Ok(());
        }
        let (x, &h) = self
            .heights
            .iter()
            .enumerate()
            .min_by_key(|&(i, h)| (*h, i))
            .expect("non-empty skyline");
        let run = self.heights[x..].iter().take_while(|&&v| v == h).count();
        let largest = run.min((self.height - h) as usize);
        for s in (1..=largest).rev() {
            for v in &mut self.heights[x..x + s] {
                *v += s as u32;
            }
            self.stack.push(PlacedSquare {
                x: x as u64,
                y: h as u64,
                side: s as u64,
            });
            let result = self.run(remaining - (s * s) as u64);
            self.stack.pop();
            for v in &mut self.heights[x..x + s] {
                *v -= s as u32;
            }
            result?;
        }
        Ok(())
    }
}

/// Fewest integer squares tiling a `width × height` rectangle, searching at
/// most `max_tiles` squares and [`node_limit_from_env`] nodes.
pub fn min_squares_exhaustive(width: u64, height: u64, max_tiles: usize) -> Result<QuiltOutcome> {
    min_squares_with_limit(width, height, max_tiles, node_limit_from_env()?)
}

/// [`min_squares_exhaustive`] with an explicit node limit. Running out of
/// nodes is an error, never a truncated answer.
pub fn min_squares_with_limit(
    width: u64,
    height: u64,
    max_tiles: usize,
    node_limit: u64,
) -> Result<QuiltOutcome> {
    if width == 0 || height == 0 {
        return Err(Error::Precondition(format!(
            "rectangle {width} x {height} must have positive sides"
        )));
    }
    if width > 64 || height > 64 {
        return Err(Error::Precondition(format!(
            "rectangle {width} x {height} is beyond desk scale (sides up to 64)"
        )));
    }
    let euclid = euclid_squares(width, height);
    let (best, best_squares) = if euclid.len() <= max_tiles {
        (euclid.len(), Some(euclid))
    } else {
        (max_tiles + 1, None)
    };
    let side = width.min(height);
    let mut search = Search {
        height: height as u32,
        limit: node_limit,
        nodes: 0,
        heights: vec![0; width as usize],
        stack: Vec::new(),
        best,
        best_squares,
        largest_area: side * side,
    };
    search.run(width * height)?;
    Ok(match search.best_squares {
        Some(squares) => QuiltOutcome::Minimum {
            count: squares.len(),
            squares,
            nodes: search.nodes,
        },
        None => QuiltOutcome::ExceedsMaxTiles {
            nodes: search.nodes,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundAudit {
    pub width: u64,
    pub height: u64,
    pub count: usize,
    pub longest: u64,
    /// `4^count`, which must be at least `longest`.
    #[serde(serialize_with = "serialize_bigint")]
    pub four_pow: BigInt,
    pub holds: bool,
    /// Whether `2^count ≥ longest`; reported for comparison only.
    pub two_pow_holds: bool,
}

/// Checks `4^n ≥ max(p, q)` for a minimal coprime quilt of `n` squares.
pub fn bound_audit(width: u64, height: u64, count: usize) -> Result<BoundAudit> {
    if width.gcd(&height) != 1 {
        return Err(Error::Precondition(format!(
            "{width} x {height} is not a coprime rectangle"
        )));
    }
    let longest = width.max(height);
    let four_pow = pow(4, count as u64);
    let holds = four_pow >= BigInt::from(longest);
    let audit = BoundAudit {
        width,
        height,
        count,
        longest,
        two_pow_holds: pow(2, count as u64) >= BigInt::from(longest),
        four_pow,
        holds,
    };
    if !holds {
        return Err(Error::TheoremViolation(format!(
            "{width} x {height} tiled by {count} squares, but 4^{count} < {longest}"
        )));
    }
    Ok(audit)
}
