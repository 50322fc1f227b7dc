use super::{check_factor, check_offset, Check, ValidationReport};
use crate::error::Result;
use crate::numeric::Rat;

/// Axis-parallel box `[lo[0], hi[0]] × … × [lo[d-1], hi[d-1]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cuboid {
    pub lo: Vec<Rat>,
    pub hi: Vec<Rat>,
}

impl Cuboid {
    pub fn new(lo: Vec<Rat>, hi: Vec<Rat>) -> Cuboid {
        Cuboid { lo, hi }
    }

    /// Cube with lower corner `lo` and the given side.
    pub fn cube(lo: Vec<Rat>, side: &Rat) -> Cuboid {
        let hi = lo.iter().map(|x| x + side).collect();
        Cuboid { lo, hi }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn side(&self, axis: usize) -> Rat {
        &self.hi[axis] - &self.lo[axis]
    }

    pub fn sides(&self) -> Vec<Rat> {
        (0..self.dim()).map(|i| self.side(i)).collect()
    }

    pub fn volume(&self) -> Rat {
        (0..self.dim()).fold(Rat::one(), |acc, i| acc * self.side(i))
    }

    pub fn is_cube(&self) -> bool {
        let s = self.side(0);
        (1..self.dim()).all(|i| self.side(i) == s)
    }

    fn structural_errors(&self) -> Vec<String> {
        let mut errs = Vec::new();
        if self.lo.len() != self.hi.len() {
            errs.push(format!(
                "corner lengths differ ({} vs {})",
                self.lo.len(),
                self.hi.len()
            ));
            return errs;
        }
        for i in 0..self.dim() {
            if self.lo[i] >= self.hi[i] {
                errs.push(format!(
                    "axis {i}: lower bound {} is not below upper bound {}",
                    self.lo[i], self.hi[i]
                ));
            }
        }
        errs
    }

    pub fn contains(&self, other: &Cuboid) -> bool {
        (0..self.dim()).all(|i| self.lo[i] <= other.lo[i] && other.hi[i] <= self.hi[i])
    }

    /// Two closed boxes share interior points iff their open intervals
    /// overlap on every axis.
    pub fn interiors_overlap(&self, other: &Cuboid) -> bool {
        (0..self.dim()).all(|i| {
            let lo = self.lo[i].clone().max(other.lo[i].clone());
            let hi = self.hi[i].clone().min(other.hi[i].clone());
            lo < hi
        })
    }

    pub fn map(&self, factor: &Rat, offset: &[Rat]) -> Cuboid {
        let f =
            |v: &[Rat]| -> Vec<Rat> { v.iter().zip(offset).map(|(x, o)| factor * x + o).collect() };
        Cuboid::new(f(&self.lo), f(&self.hi))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CuboidTile {
    pub cuboid: Cuboid,
    /// Positive integers the tile's sides are proportional to.
    pub shape: Option<Vec<u64>>,
}

impl CuboidTile {
    pub fn new(cuboid: Cuboid) -> CuboidTile {
        CuboidTile {
            cuboid,
            shape: None,
        }
    }

    pub fn with_shape(cuboid: Cuboid, shape: Vec<u64>) -> CuboidTile {
        CuboidTile {
            cuboid,
            shape: Some(shape),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuboidTiling {
    pub region: Cuboid,
    pub tiles: Vec<CuboidTile>,
}

impl CuboidTiling {
    pub fn new(region: Cuboid, tiles: Vec<CuboidTile>) -> CuboidTiling {
        CuboidTiling { region, tiles }
    }

    pub fn dim(&self) -> usize {
        self.region.dim()
    }

    pub fn validate(&self) -> ValidationReport {
        let boxes: Vec<Cuboid> = self.tiles.iter().map(|t| t.cuboid.clone()).collect();
        let mut report = validate_boxes("cuboid", &self.region, &boxes);
        if !report.structural.is_empty() {
            return report;
        }
        for (k, t) in self.tiles.iter().enumerate() {
            let Some(shape) = &t.shape else { continue };
            if shape.len() != self.dim() {
                report.structural.push(format!(
                    "tile {k}: shape has {} entries, expected {}",
                    shape.len(),
                    self.dim()
                ));
            } else if shape.contains(&0) {
                report
                    .structural
                    .push(format!("tile {k}: shape entries must be positive"));
            } else {
                // side_i / shape_i must be the same for every axis
                let unit = t.cuboid.side(0) / Rat::from_int(shape[0]);
                let proportional =
                    (1..self.dim()).all(|i| t.cuboid.side(i) == &unit * &Rat::from_int(shape[i]));
                if !proportional {
                    report.structural.push(format!(
                        "tile {k}: sides {:?} are not proportional to shape {shape:?}",
                        t.cuboid.sides()
                    ));
                }
            }
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    pub fn all_cubes(&self) -> bool {
        self.tiles.iter().all(|t| t.cuboid.is_cube())
    }

    pub fn all_have_shapes(&self) -> bool {
        self.tiles.iter().all(|t| t.shape.is_some())
    }

    pub fn side_lengths(&self) -> Vec<Vec<Rat>> {
        self.tiles.iter().map(|t| t.cuboid.sides()).collect()
    }

    pub fn scale_translate(&self, factor: &Rat, offset: &[Rat]) -> Result<CuboidTiling> {
        check_factor(factor)?;
        check_offset(offset, self.dim())?;
        Ok(CuboidTiling {
            region: self.region.map(factor, offset),
            tiles: self
                .tiles
                .iter()
                .map(|t| CuboidTile {
                    cuboid: t.cuboid.map(factor, offset),
                    shape: t.shape.clone(),
                })
                .collect(),
        })
    }

    /// Distinct values of tile vertex coordinates along `axis`, sorted.
    pub fn axis_values(&self, axis: usize) -> Vec<Rat> {
        let mut v: Vec<Rat> = self
            .tiles
            .iter()
            .flat_map(|t| [t.cuboid.lo[axis].clone(), t.cuboid.hi[axis].clone()])
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

/// Containment, pairwise interior disjointness and volume balance for a box
/// region tiled by boxes of the same dimension.
pub(crate) fn validate_boxes(
    kind: &'static str,
    region: &Cuboid,
    tiles: &[Cuboid],
) -> ValidationReport {
    let mut structural = Vec::new();
    let d = region.dim();
    if d < 2 {
        structural.push(format!("dimension must be at least 2, got {d}"));
    }
    structural.extend(
        region
            .structural_errors()
            .into_iter()
            .map(|e| format!("region: {e}")),
    );
    for (k, t) in tiles.iter().enumerate() {
        if t.lo.len() != d || t.hi.len() != d {
            structural.push(format!(
                "tile {k}: dimension {} does not match region dimension {d}",
                t.lo.len().max(t.hi.len())
            ));
            continue;
        }
        structural.extend(
            t.structural_errors()
                .into_iter()
                .map(|e| format!("tile {k}: {e}")),
        );
    }
    if !structural.is_empty() {
        return ValidationReport::structural(kind, tiles.len(), structural);
    }

    let containment = tiles
        .iter()
        .enumerate()
        .filter(|(_, t)| !region.contains(t))
        .map(|(k, _)| format!("tile {k} is not contained in the region"))
        .collect();

    let mut overlaps = Vec::new();
    for i in 0..tiles.len() {
        for j in i + 1..tiles.len() {
            if tiles[i].interiors_overlap(&tiles[j]) {
                overlaps.push(format!("tiles {i} and {j} overlap"));
            }
        }
    }

    let mut report = ValidationReport {
        kind,
        tiles: tiles.len(),
        structural,
        containment: Check::from_failures(containment),
        disjoint_interiors: Check::from_failures(overlaps),
        region_measure: region.volume(),
        tile_measure: tiles.iter().map(Cuboid::volume).sum(),
        ..Default::default()
    };
    report.measure_check();
    report
}
