use num_integer::Integer;

use super::{check_factor, check_offset, Cuboid, ValidationReport};
use crate::error::Result;
use crate::numeric::Rat;

/// Axis-parallel rectangle `[x0, x1] × [y0, y1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rect {
    pub x0: Rat,
    pub x1: Rat,
    pub y0: Rat,
    pub y1: Rat,
}

impl Rect {
    pub fn new(x0: Rat, x1: Rat, y0: Rat, y1: Rat) -> Rect {
        Rect { x0, x1, y0, y1 }
    }

    pub fn width(&self) -> Rat {
        &self.x1 - &self.x0
    }

    pub fn height(&self) -> Rat {
        &self.y1 - &self.y0
    }

    pub fn area(&self) -> Rat {
        self.width() * self.height()
    }

    pub fn is_square(&self) -> bool {
        self.width() == self.height()
    }

    pub fn transpose(&self) -> Rect {
        Rect::new(
            self.y0.clone(),
            self.y1.clone(),
            self.x0.clone(),
            self.x1.clone(),
        )
    }

    pub fn map(&self, factor: &Rat, dx: &Rat, dy: &Rat) -> Rect {
        Rect::new(
            factor * &self.x0 + dx,
            factor * &self.x1 + dx,
            factor * &self.y0 + dy,
            factor * &self.y1 + dy,
        )
    }

    pub(crate) fn to_cuboid(&self) -> Cuboid {
        Cuboid::new(
            vec![self.x0.clone(), self.y0.clone()],
            vec![self.x1.clone(), self.y1.clone()],
        )
    }
}

/// Declared side ratio of a tile: `p` is the vertical side and `q` the
/// horizontal side, so `height · q = width · p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ratio {
    pub p: u64,
    pub q: u64,
}

impl Ratio {
    pub fn new(p: u64, q: u64) -> Ratio {
        Ratio { p, q }
    }

    pub fn is_reduced(&self) -> bool {
        self.p > 0 && self.q > 0 && self.p.gcd(&self.q) == 1
    }

    pub fn max(&self) -> u64 {
        self.p.max(self.q)
    }

    pub fn transpose(&self) -> Ratio {
        Ratio::new(self.q, self.p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RectTile {
    pub rect: Rect,
    pub ratio: Option<Ratio>,
}

impl RectTile {
    pub fn new(rect: Rect) -> RectTile {
        RectTile { rect, ratio: None }
    }

    pub fn with_ratio(rect: Rect, ratio: Ratio) -> RectTile {
        RectTile {
            rect,
            ratio: Some(ratio),
        }
    }

    /// Square `[x, x+s] × [y, y+s]`.
    pub fn square(x: Rat, y: Rat, side: Rat) -> RectTile {
        let x1 = &x + &side;
        let y1 = &y + &side;
        RectTile::new(Rect::new(x, x1, y, y1))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RectTiling {
    pub region: Rect,
    pub tiles: Vec<RectTile>,
}

impl RectTiling {
    pub fn new(region: Rect, tiles: Vec<RectTile>) -> RectTiling {
        RectTiling { region, tiles }
    }

    pub fn validate(&self) -> ValidationReport {
        let region = self.region.to_cuboid();
        let tiles: Vec<Cuboid> = self.tiles.iter().map(|t| t.rect.to_cuboid()).collect();
        let mut report = super::cuboid::validate_boxes("rect", &region, &tiles);
        for (i, t) in self.tiles.iter().enumerate() {
            let Some(ratio) = t.ratio else { continue };
            if !ratio.is_reduced() {
                report.structural.push(format!(
                    "tile {i}: ratio {}:{} is not in lowest terms",
                    ratio.p, ratio.q
                ));
            } else if t.rect.height() * Rat::from_int(ratio.q)
                != t.rect.width() * Rat::from_int(ratio.p)
            {
                report.structural.push(format!(
                    "tile {i}: sides {}x{} do not have ratio {}:{}",
                    t.rect.width(),
                    t.rect.height(),
                    ratio.p,
                    ratio.q
                ));
            }
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    pub fn all_squares(&self) -> bool {
        self.tiles.iter().all(|t| t.rect.is_square())
    }

    pub fn all_have_ratios(&self) -> bool {
        self.tiles.iter().all(|t| t.ratio.is_some())
    }

    pub fn side_lengths(&self) -> Vec<Vec<Rat>> {
        self.tiles
            .iter()
            .map(|t| vec![t.rect.width(), t.rect.height()])
            .collect()
    }

    pub fn scale_translate(&self, factor: &Rat, offset: &[Rat]) -> Result<RectTiling> {
        check_factor(factor)?;
        check_offset(offset, 2)?;
        let (dx, dy) = (&offset[0], &offset[1]);
        Ok(RectTiling {
            region: self.region.map(factor, dx, dy),
            tiles: self
                .tiles
                .iter()
                .map(|t| RectTile {
                    rect: t.rect.map(factor, dx, dy),
                    ratio: t.ratio,
                })
                .collect(),
        })
    }

    /// Mirror across the diagonal `x = y`, swapping declared ratios.
    pub fn transpose(&self) -> RectTiling {
        RectTiling {
            region: self.region.transpose(),
            tiles: self
                .tiles
                .iter()
                .map(|t| RectTile {
                    rect: t.rect.transpose(),
                    ratio: t.ratio.map(|r| r.transpose()),
                })
                .collect(),
        }
    }
}

/// Moves the region's lower-left corner to the origin, makes the longest side
/// vertical (a square region keeps its orientation) and scales it to length 1.
pub fn normalize_rect(t: &RectTiling) -> RectTiling {
    let moved = t
        .scale_translate(&Rat::one(), &[-&t.region.x0, -&t.region.y0])
        .expect("unit factor");
    let upright = if moved.region.width() > moved.region.height() {
        moved.transpose()
    } else {
        moved
    };
    let factor = upright.region.height().recip();
    upright
        .scale_translate(&factor, &[Rat::zero(), Rat::zero()])
        .expect("positive factor")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn int(n: i64) -> Rat {
        Rat::from_int(n)
    }

    fn unit_square() -> Rect {
        Rect::new(int(0), int(1), int(0), int(1))
    }

    #[test]
    fn single_tile_is_valid() {
        let t = RectTiling::new(unit_square(), vec![RectTile::new(unit_square())]);
        assert!(t.validate().is_valid());
    }

    #[test]
    fn half_cover_fails_measure() {
        let t = RectTiling::new(
            unit_square(),
            vec![RectTile::new(Rect::new(int(0), r(1, 2), int(0), int(1)))],
        );
        let report = t.validate();
        assert!(!report.is_valid());
        assert!(report.containment.passed);
        assert!(report.disjoint_interiors.passed);
        assert!(!report.measure_balance.passed);
    }

    #[test]
    fn overlap_names_the_pair() {
        let t = RectTiling::new(
            unit_square(),
            vec![
                RectTile::new(Rect::new(int(0), r(3, 4), int(0), int(1))),
                RectTile::new(Rect::new(r(1, 4), int(1), int(0), int(1))),
            ],
        );
        let report = t.validate();
        assert!(!report.disjoint_interiors.passed);
        assert!(report.disjoint_interiors.failures[0].contains("tiles 0 and 1"));
    }

    #[test]
    fn degenerate_tile_is_structural() {
        let t = RectTiling::new(
            unit_square(),
            vec![RectTile::new(Rect::new(int(1), int(0), int(0), int(1)))],
        );
        assert!(!t.validate().structural.is_empty());
    }

    #[test]
    fn wrong_ratio_is_structural() {
        let t = RectTiling::new(
            unit_square(),
            vec![RectTile::with_ratio(unit_square(), Ratio::new(2, 1))],
        );
        assert!(!t.validate().structural.is_empty());
        let t = RectTiling::new(
            unit_square(),
            vec![RectTile::with_ratio(unit_square(), Ratio::new(2, 2))],
        );
        assert!(!t.validate().structural.is_empty());
    }

    #[test]
    fn normalize_landscape_region() {
        // 3 wide, 2 tall: two squares of side 1 beside a 2-square.
        let t = RectTiling::new(
            Rect::new(int(1), int(4), int(5), int(7)),
            vec![
                RectTile::square(int(1), int(5), int(2)),
                RectTile::square(int(3), int(5), int(1)),
                RectTile::square(int(3), int(6), int(1)),
            ],
        );
        let n = normalize_rect(&t);
        assert_eq!(n.region, Rect::new(int(0), r(2, 3), int(0), int(1)));
        assert!(n.is_valid());
        assert_eq!(normalize_rect(&n), n);
    }

    #[test]
    fn normalize_square_region_keeps_orientation() {
        let t = RectTiling::new(
            Rect::new(int(0), int(2), int(0), int(2)),
            vec![
                RectTile::with_ratio(Rect::new(int(0), int(2), int(0), int(1)), Ratio::new(1, 2)),
                RectTile::with_ratio(Rect::new(int(0), int(2), int(1), int(2)), Ratio::new(1, 2)),
            ],
        );
        let n = normalize_rect(&t);
        assert_eq!(n.region, unit_square());
        assert_eq!(n.tiles[0].ratio, Some(Ratio::new(1, 2)));
    }

    #[test]
    fn transpose_swaps_ratio() {
        let t = RectTiling::new(
            Rect::new(int(0), int(1), int(0), int(3)),
            vec![RectTile::with_ratio(
                Rect::new(int(0), int(1), int(0), int(3)),
                Ratio::new(3, 1),
            )],
        );
        let tt = t.transpose();
        assert_eq!(tt.tiles[0].ratio, Some(Ratio::new(1, 3)));
        assert!(tt.is_valid());
    }
}
