//! Tilings of rectangles, hypercuboids and Ψ-coordinate triangle regions,
//! with exact partition validators.
//!
//! A tile list partitions its region iff every tile lies in the region, no
//! two tiles share interior points, and the tile measures add up to the
//! region's measure. All three checks are exact.

mod cuboid;
mod rect;
mod tri;

pub use cuboid::{Cuboid, CuboidTile, CuboidTiling};
pub use rect::{normalize_rect, Ratio, Rect, RectTile, RectTiling};
pub use tri::{rotate_tri_120, Direction, TriRegion, TriTile, TriTiling};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::Rat;

/// Outcome of one of the three partition checks.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Check {
    pub passed: bool,
    pub failures: Vec<String>,
}

impl Check {
    fn from_failures(failures: Vec<String>) -> Check {
        Check {
            passed: failures.is_empty(),
            failures,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct ValidationReport {
    pub kind: &'static str,
    pub tiles: usize,
    /// Malformed input; when non-empty the other checks are not run.
    pub structural: Vec<String>,
    pub containment: Check,
    pub disjoint_interiors: Check,
    pub measure_balance: Check,
    pub region_measure: Rat,
    pub tile_measure: Rat,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.structural.is_empty()
            && self.containment.passed
            && self.disjoint_interiors.passed
            && self.measure_balance.passed
    }

    /// Converts a failing report into an error naming the first problem.
    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            return Ok(());
        }
        if let Some(s) = self.structural.first() {
            return Err(Error::Structural(s.clone()));
        }
        let first = [
            &self.containment,
            &self.disjoint_interiors,
            &self.measure_balance,
        ]
        .into_iter()
        .find_map(|c| c.failures.first().cloned())
        .unwrap_or_default();
        Err(Error::InvalidTiling(first))
    }

    fn structural(kind: &'static str, tiles: usize, errors: Vec<String>) -> ValidationReport {
        ValidationReport {
            kind,
            tiles,
            structural: errors,
            ..Default::default()
        }
    }

    fn measure_check(&mut self) {
        let mut failures = Vec::new();
        if self.region_measure != self.tile_measure {
            failures.push(format!(
                "tile measure {} differs from region measure {}",
                self.tile_measure, self.region_measure
            ));
        }
        self.measure_balance = Check::from_failures(failures);
    }
}

/// Any of the three tiling families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tiling {
    Rect(RectTiling),
    Cuboid(CuboidTiling),
    Tri(TriTiling),
}

impl Tiling {
    pub fn kind(&self) -> &'static str {
        match self {
            Tiling::Rect(_) => "rect",
            Tiling::Cuboid(_) => "cuboid",
            Tiling::Tri(_) => "triangle",
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Tiling::Rect(t) => t.tiles.len(),
            Tiling::Cuboid(t) => t.tiles.len(),
            Tiling::Tri(t) => t.tiles.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn validate(&self) -> ValidationReport {
        match self {
            Tiling::Rect(t) => t.validate(),
            Tiling::Cuboid(t) => t.validate(),
            Tiling::Tri(t) => t.validate(),
        }
    }

    /// Per-tile edge lengths: `[width, height]` for rectangles, one entry per
    /// axis for hypercuboids, `[|c|]` for triangles.
    pub fn side_lengths(&self) -> Vec<Vec<Rat>> {
        match self {
            Tiling::Rect(t) => t.side_lengths(),
            Tiling::Cuboid(t) => t.side_lengths(),
            Tiling::Tri(t) => t.side_lengths().into_iter().map(|s| vec![s]).collect(),
        }
    }

    pub fn scale_translate(&self, factor: &Rat, offset: &[Rat]) -> Result<Tiling> {
        Ok(match self {
            Tiling::Rect(t) => Tiling::Rect(t.scale_translate(factor, offset)?),
            Tiling::Cuboid(t) => Tiling::Cuboid(t.scale_translate(factor, offset)?),
            Tiling::Tri(t) => Tiling::Tri(t.scale_translate(factor, offset)?),
        })
    }
}

impl From<RectTiling> for Tiling {
    fn from(t: RectTiling) -> Tiling {
        Tiling::Rect(t)
    }
}

impl From<CuboidTiling> for Tiling {
    fn from(t: CuboidTiling) -> Tiling {
        Tiling::Cuboid(t)
    }
}

impl From<TriTiling> for Tiling {
    fn from(t: TriTiling) -> Tiling {
        Tiling::Tri(t)
    }
}

/// The edge length shared by all sides of each tile, when every tile is a
/// square, cube or triangle.
pub fn uniform_side_lengths(sides: &[Vec<Rat>]) -> Option<Vec<Rat>> {
    sides
        .iter()
        .map(|s| {
            let first = s.first()?;
            s.iter().all(|x| x == first).then(|| first.clone())
        })
        .collect()
}

fn check_factor(factor: &Rat) -> Result<()> {
    if !factor.is_positive() {
        return Err(Error::Precondition(format!(
            "scale factor must be positive, got {factor}"
        )));
    }
    Ok(())
}

fn check_offset(offset: &[Rat], dim: usize) -> Result<()> {
    if offset.len() != dim {
        return Err(Error::Precondition(format!(
            "offset has {} components, expected {dim}",
            offset.len()
        )));
    }
    Ok(())
}
