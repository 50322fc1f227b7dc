//! Coordinate sets of tile vertices and the counting bounds they obey:
//! `|X| + |Y| ≤ n + 3` for rectangle tilings, interior boundaries covered by
//! `n − 1` hyperplanes (boxes) or lines (triangles), a pair of axes with at
//! most `2(n − 1)/d + 4` coordinates, and a rotation of a triangle tiling
//! with at most `(2n − 2)/3` inner coordinates.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::Rat;

use crate::tiling::{rotate_tri_120, CuboidTiling, Direction, RectTiling, TriRegion, TriTiling};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AxisSet {
    pub axis: String,
    pub values: Vec<Rat>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CoordReport {
    pub tiles: usize,
    pub sets: Vec<AxisSet>,
    pub count: usize,
    pub bound: Rat,
    pub pass: bool,
}

impl CoordReport {
    fn new(tiles: usize, sets: Vec<AxisSet>, bound: Rat) -> CoordReport {
        let count = sets.iter().map(|s| s.values.len()).sum();
        let pass = Rat::from_int(count as i64) <= bound;
        CoordReport {
            tiles,
            sets,
            count,
            bound,
            pass,
        }
    }
}

fn distinct<'a>(values: impl IntoIterator<Item = &'a Rat>) -> Vec<Rat> {
    values
        .into_iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Distinct x- and y-coordinates of tile vertices, bounded by `n + 3`.
pub fn rect_coord_sets(t: &RectTiling) -> CoordReport {
    let xs = distinct(t.tiles.iter().flat_map(|t| [&t.rect.x0, &t.rect.x1]));
    let ys = distinct(t.tiles.iter().flat_map(|t| [&t.rect.y0, &t.rect.y1]));
    let n = t.tiles.len();
    CoordReport::new(
        n,
        vec![
            AxisSet {
                axis: "x".into(),
                values: xs,
            },
            AxisSet {
                axis: "y".into(),
                values: ys,
            },
        ],
        Rat::from_int(n as i64 + 3),
    )
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq, PartialOrd, Ord)]
pub struct Hyperplane {
    pub axis: usize,
    pub value: Rat,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HyperplaneCover {
    pub hyperplanes: Vec<Hyperplane>,
    pub bound: usize,
    pub pass: bool,
}

/// Hyperplanes `x_axis = value` carrying tile facets that are not on the
/// region boundary. Axes are 0-based.
pub fn cuboid_hyperplane_cover(t: &CuboidTiling) -> HyperplaneCover {
    let mut planes = BTreeSet::new();
    for tile in &t.tiles {
        for axis in 0..t.dim() {
            for v in [&tile.cuboid.lo[axis], &tile.cuboid.hi[axis]] {
                if *v != t.region.lo[axis] && *v != t.region.hi[axis] {
                    planes.insert(Hyperplane {
                        axis,
                        value: v.clone(),
                    });
                }
            }
        }
    }
    let bound = t.tiles.len().saturating_sub(1);
    HyperplaneCover {
        pass: planes.len() <= bound,
        hyperplanes: planes.into_iter().collect(),
        bound,
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AxisPair {
    pub i: usize,
    pub j: usize,
    pub count: usize,
    pub bound: Rat,
    pub pass: bool,
}

/// The axes `i < j` minimising the number of distinct `i`- plus
/// `j`-coordinates of tile vertices; ties go to the smallest pair.
pub fn cuboid_best_axis_pair(t: &CuboidTiling) -> Result<AxisPair> {
    let d = t.dim();
    if d < 2 {
        return Err(Error::Precondition(format!("need d >= 2, got {d}")));
    }
    let counts: Vec<usize> = (0..d).map(|i| t.axis_values(i).len()).collect();
    let mut best: Option<(usize, usize, usize)> = None;
    for i in 0..d {
        for j in i + 1..d {
            let c = counts[i] + counts[j];
            if best.is_none_or(|(_, _, b)| c < b) {
                best = Some((i, j, c));
            }
        }
    }
    let (i, j, count) = best.expect("d >= 2");
    let n = t.tiles.len() as i64;
    let bound = Rat::new(2 * (n - 1), d as i64) + Rat::from_int(4);
    Ok(AxisPair {
        i,
        j,
        count,
        pass: Rat::from_int(count as i64) <= bound,
        bound,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq, PartialOrd, Ord)]
pub struct Line {
    pub direction: Direction,
    pub value: Rat,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LineCover {
    pub lines: Vec<Line>,
    pub bound: usize,
    pub pass: bool,
}

/// Lines carrying tile edges that are not on the boundary of a triangle or
/// trapezoid region.
pub fn tri_line_cover(t: &TriTiling) -> Result<LineCover> {
    if matches!(t.region, TriRegion::Parallelogram { .. }) {
        return Err(Error::Precondition(
            "line cover is defined for triangle and trapezoid regions".into(),
        ));
    }
    let boundary = t.region.boundary_lines();
    let mut lines = BTreeSet::new();
    for tile in &t.tiles {
        for (direction, value, _) in tile.edges() {
            if !boundary.contains(&(direction, value.clone())) {
                lines.insert(Line { direction, value });
            }
        }
    }
    let bound = t.tiles.len().saturating_sub(1);
    Ok(LineCover {
        pass: lines.len() <= bound,
        lines: lines.into_iter().collect(),
        bound,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RotationChoice {
    /// Number of 120° turns applied, 0..=2.
    pub rotation: usize,
    /// Distinct first and second Ψ-coordinates of vertices, without 0 and 1.
    pub coords: Vec<Rat>,
    pub sizes: [usize; 3],
    pub bound: Rat,
    pub pass: bool,
}

/// First and second Ψ-coordinates of every tile vertex, minus `{0, 1}`.
pub fn inner_psi_coords(t: &TriTiling) -> Vec<Rat> {
    let (zero, one) = (Rat::zero(), Rat::one());
    t.tiles
        .iter()
        .flat_map(|tile| tile.vertices())
        .flat_map(|(a, b)| [a, b])
        .filter(|x| *x != zero && *x != one)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Picks the rotation of a tiling of `T(0, 0, 1)` with the fewest inner
/// first/second Ψ-coordinates; ties go to the smaller rotation.
pub fn tri_best_rotation(t: &TriTiling) -> Result<RotationChoice> {
    let r1 = rotate_tri_120(t)?;
    let r2 = rotate_tri_120(&r1)?;
    let candidates = [
        inner_psi_coords(t),
        inner_psi_coords(&r1),
        inner_psi_coords(&r2),
    ];
    let sizes = [
        candidates[0].len(),
        candidates[1].len(),
        candidates[2].len(),
    ];
    let rotation = (0..3)
        .min_by_key(|&r| (sizes[r], r))
        .expect("three rotations");
    let n = t.tiles.len() as i64;
    let bound = Rat::new(2 * n - 2, 3);
    let coords = candidates[rotation].clone();
    Ok(RotationChoice {
        rotation,
        pass: Rat::from_int(coords.len() as i64) <= bound,
        coords,
        sizes,
        bound,
    })
}

/// Applies `turns` rotations of 120°.
pub fn rotate_times(t: &TriTiling, turns: usize) -> Result<TriTiling> {
    let mut out = t.clone();
    for _ in 0..turns % 3 {
        out = rotate_tri_120(&out)?;
    }
    Ok(out)
}
