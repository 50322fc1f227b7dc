//! ½-shifted grid lines and the almost-integer certification.
//!
//! A ½-shifted grid line sits at `k + 1/2` for an integer `k`. The number of
//! such lines strictly inside `(lo, hi)` is `r(hi) − r(lo)` with
//! `r(x) = ⌊x + 1/2⌋`. When every tile coordinate of a square tiling is
//! within `1/4` of an integer, each square is crossed by as many vertical as
//! horizontal ½-shifted lines, and the flow identity then forces every side
//! length to equal that count.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{nearest_int_distance, round_nearest, serialize_bigint, Rat};
use crate::tiling::{Rect, RectTiling, TriRegion, TriTile, TriTiling};

/// ½-shifted vertical (`v`) and horizontal (`h`) lines through a rectangle.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GridLineCount {
    #[serde(serialize_with = "serialize_bigint")]
    pub v: BigInt,
    #[serde(serialize_with = "serialize_bigint")]
    pub h: BigInt,
}

impl GridLineCount {
    pub fn is_balanced(&self) -> bool {
        self.v == self.h
    }
}

/// ½-shifted 60° diagonal and horizontal lines through a triangle.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DiagLineCount {
    #[serde(serialize_with = "serialize_bigint")]
    pub diag: BigInt,
    #[serde(serialize_with = "serialize_bigint")]
    pub h: BigInt,
}

fn check_not_half(x: &Rat, what: &str) -> Result<()> {
    if x.has_half_fraction() {
        return Err(Error::Precondition(format!(
            "{what} {x} has fractional part 1/2 and lies on a half-shifted line"
        )));
    }
    Ok(())
}

fn quarter() -> Rat {
    Rat::new(1, 4)
}

fn check_near_integer(x: &Rat, what: &str) -> Result<()> {
    let d = nearest_int_distance(x);
    if d >= quarter() {
        return Err(Error::Precondition(format!(
            "{what} {x} is at distance {d} from the nearest integer, not below 1/4"
        )));
    }
    Ok(())
}

/// Number of `k + 1/2` strictly between `lo` and `hi`.
pub fn count_half_shifted(lo: &Rat, hi: &Rat) -> Result<BigInt> {
    if lo >= hi {
        return Err(Error::Precondition(format!(
            "interval [{lo}, {hi}] is empty"
        )));
    }
    check_not_half(lo, "endpoint")?;
    check_not_half(hi, "endpoint")?;
    Ok(round_nearest(hi) - round_nearest(lo))
}

pub fn grid_line_count(r: &Rect) -> Result<GridLineCount> {
    Ok(GridLineCount {
        v: count_half_shifted(&r.x0, &r.x1)?,
        h: count_half_shifted(&r.y0, &r.y1)?,
    })
}

/// `v = h` for a square whose four coordinates are all within `1/4` of
/// integers.
pub fn check_balanced_lines_square(r: &Rect) -> Result<bool> {
    if !r.is_square() {
        return Err(Error::Precondition(format!(
            "tile {} x {} is not a square",
            r.width(),
            r.height()
        )));
    }
    for x in [&r.x0, &r.x1, &r.y0, &r.y1] {
        check_near_integer(x, "coordinate")?;
    }
    Ok(grid_line_count(r)?.is_balanced())
}

fn require_squares(t: &RectTiling) -> Result<()> {
    t.validate().into_result()?;
    if let Some(k) = t.tiles.iter().position(|tile| !tile.rect.is_square()) {
        return Err(Error::Precondition(format!("tile {k} is not a square")));
    }
    Ok(())
}

/// The aspect ratio `h/v` of a square tiling read off ½-shifted line counts.
///
/// Requires at least one ½-shifted vertical line across the region, no tile
/// vertex on any ½-shifted line, and `v = h` for every tile. The result is
/// checked against `height / width`.
pub fn dehn_aspect_ratio(t: &RectTiling) -> Result<Rat> {
    require_squares(t)?;
    for (k, tile) in t.tiles.iter().enumerate() {
        let r = &tile.rect;
        for x in [&r.x0, &r.x1, &r.y0, &r.y1] {
            check_not_half(x, &format!("tile {k} coordinate"))?;
        }
    }
    let region = grid_line_count(&t.region)?;
    if !region.v.is_positive() {
        return Err(Error::Precondition(
            "no half-shifted vertical line meets the region".into(),
        ));
    }
    for (k, tile) in t.tiles.iter().enumerate() {
        let c = grid_line_count(&tile.rect)?;
        if !c.is_balanced() {
            return Err(Error::Precondition(format!(
                "tile {k} meets {} vertical but {} horizontal half-shifted lines",
                c.v, c.h
            )));
        }
    }
    let ratio = Rat::new(region.h, region.v);
    let aspect = t.region.height() / t.region.width();
    if ratio != aspect {
        return Err(Error::TheoremViolation(format!(
            "line ratio {ratio} differs from aspect ratio {aspect}"
        )));
    }
    Ok(ratio)
}

/// Result of checking the flow identity for a candidate function `r`.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct FlowReport {
    /// Tiles where the hypothesis equation fails.
    pub hypothesis_failures: Vec<usize>,
    pub hypotheses_hold: bool,
    /// Tiles whose fixed-point conclusion fails although every hypothesis
    /// held. Non-empty means a counterexample.
    pub conclusion_failures: Vec<usize>,
    pub conclusion_holds: Option<bool>,
}

impl FlowReport {
    fn build(hyp: Vec<usize>, conclusion: impl FnOnce() -> Vec<usize>) -> FlowReport {
        if !hyp.is_empty() {
            return FlowReport {
                hypothesis_failures: hyp,
                ..Default::default()
            };
        }
        let bad = conclusion();
        FlowReport {
            hypothesis_failures: hyp,
            hypotheses_hold: true,
            conclusion_holds: Some(bad.is_empty()),
            conclusion_failures: bad,
        }
    }

    /// False only when the hypotheses hold and the conclusion does not.
    pub fn consistent(&self) -> bool {
        self.conclusion_holds != Some(false)
    }
}

fn require_fixed(r: &impl Fn(&Rat) -> Rat, x: &Rat, what: &str) -> Result<()> {
    let y = r(x);
    if &y != x {
        return Err(Error::Precondition(format!(
            "r({x}) = {y} but the {what} must be fixed"
        )));
    }
    Ok(())
}

/// For tiles `[a,b]×[c,d]` checks `(b−a)(r(d)−r(c)) = (r(b)−r(a))(d−c)`;
/// when all hold, checks `r(c) = c` and `r(d) = d` for every tile.
pub fn rfunction_flow_check(t: &RectTiling, r: impl Fn(&Rat) -> Rat) -> Result<FlowReport> {
    require_fixed(&r, &t.region.y0, "region bottom")?;
    require_fixed(&r, &t.region.y1, "region top")?;
    let hyp = t
        .tiles
        .iter()
        .enumerate()
        .filter(|(_, tile)| {
            let q = &tile.rect;
            q.width() * (r(&q.y1) - r(&q.y0)) != (r(&q.x1) - r(&q.x0)) * q.height()
        })
        .map(|(k, _)| k)
        .collect();
    Ok(FlowReport::build(hyp, || {
        t.tiles
            .iter()
            .enumerate()
            .filter(|(_, tile)| {
                r(&tile.rect.y0) != tile.rect.y0 || r(&tile.rect.y1) != tile.rect.y1
            })
            .map(|(k, _)| k)
            .collect()
    }))
}

/// Triangle version: `r(a+c) − r(a) = r(b+c) − r(b)` per tile implies
/// `r(b) = b` and `r(b+c) = b+c`, given `r` fixes the region's bottom and
/// top heights.
pub fn tri_flow_check(t: &TriTiling, r: impl Fn(&Rat) -> Rat) -> Result<FlowReport> {
    let TriRegion::Triangle { b, c, .. } = &t.region else {
        return Err(Error::Precondition(format!(
            "flow check needs a triangle region, got a {}",
            t.region.kind()
        )));
    };
    require_fixed(&r, b, "region bottom")?;
    require_fixed(&r, &(b + c), "region top")?;
    let hyp = t
        .tiles
        .iter()
        .enumerate()
        .filter(|(_, s)| r(&(&s.a + &s.c)) - r(&s.a) != r(&(&s.b + &s.c)) - r(&s.b))
        .map(|(k, _)| k)
        .collect();
    Ok(FlowReport::build(hyp, || {
        t.tiles
            .iter()
            .enumerate()
            .filter(|(_, s)| {
                let top = &s.b + &s.c;
                r(&s.b) != s.b || r(&top) != top
            })
            .map(|(k, _)| k)
            .collect()
    }))
}

/// Certifies that a square tiling whose coordinates are all within `1/4` of
/// integers, with integer region bottom and top (or left and right), has
/// integer sides: each side equals its ½-shifted line count. Returns the
/// sides in tile order.
pub fn almost_integer_snap(t: &RectTiling) -> Result<Vec<BigInt>> {
    require_squares(t)?;
    let reg = &t.region;
    let vertical = if reg.y0.is_integer() && reg.y1.is_integer() {
        true
    } else if reg.x0.is_integer() && reg.x1.is_integer() {
        false
    } else {
        return Err(Error::Precondition(
            "neither the region's y-extent nor its x-extent has integer ends".into(),
        ));
    };
    for (k, tile) in t.tiles.iter().enumerate() {
        let r = &tile.rect;
        for x in [&r.x0, &r.x1, &r.y0, &r.y1] {
            check_near_integer(x, &format!("tile {k} coordinate"))?;
        }
    }
    t.tiles
        .iter()
        .enumerate()
        .map(|(k, tile)| {
            let r = &tile.rect;
            let count = if vertical {
                count_half_shifted(&r.y0, &r.y1)?
            } else {
                count_half_shifted(&r.x0, &r.x1)?
            };
            if Rat::from_int(count.clone()) != r.height() {
                return Err(Error::TheoremViolation(format!(
                    "tile {k} has side {} but is crossed by {count} half-shifted lines",
                    r.height()
                )));
            }
            Ok(count)
        })
        .collect()
}

/// `diag = |r(a+c) − r(a)|`, `h = |r(b+c) − r(b)|`.
pub fn count_half_shifted_diag(tile: &TriTile) -> Result<DiagLineCount> {
    let a2 = &tile.a + &tile.c;
    let b2 = &tile.b + &tile.c;
    for x in [&tile.a, &tile.b, &a2, &b2] {
        check_not_half(x, "vertex coordinate")?;
    }
    Ok(DiagLineCount {
        diag: (round_nearest(&a2) - round_nearest(&tile.a)).abs(),
        h: (round_nearest(&b2) - round_nearest(&tile.b)).abs(),
    })
}
