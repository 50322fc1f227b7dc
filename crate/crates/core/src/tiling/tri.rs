//! Equilateral triangles in the oblique coordinate system
//! `Ψ(a, b) = a·(1, 0) + b·(1/2, √3/2)`.
//!
//! Every edge of an equilateral tile lies on a level set of one of the three
//! linear forms `u`, `v` and `u + v`, so a tile is the set of points whose
//! three forms fall in three closed intervals. Containment, overlap and the
//! line covers in `coords` are all decided on those intervals.

use serde::Serialize;

use super::{check_factor, check_offset, Check, ValidationReport};
use crate::error::{Error, Result};
use crate::numeric::Rat;

/// `T(a, b, c)`: vertices `Ψ(a, b)`, `Ψ(a + c, b)`, `Ψ(a, b + c)`. Negative
/// `c` is a downward triangle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TriTile {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
}

/// An edge: its direction, the form's constant value along it, and its
/// endpoints.
pub type Edge = (Direction, Rat, [(Rat, Rat); 2]);

/// One of the three edge directions, named by the form that is constant
/// along it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `b = const`
    Horizontal,
    /// `a = const`, parallel to `Ψ(0, 1)`
    Diagonal,
    /// `a + b = const`, parallel to `Ψ(-1, 1)`
    AntiDiagonal,
}

impl Direction {
    pub const ALL: [Direction; 3] = [
        Direction::Horizontal,
        Direction::Diagonal,
        Direction::AntiDiagonal,
    ];

    pub fn eval(&self, (a, b): (&Rat, &Rat)) -> Rat {
        match self {
            Direction::Horizontal => b.clone(),
            Direction::Diagonal => a.clone(),
            Direction::AntiDiagonal => a + b,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Direction::Horizontal => "b",
            Direction::Diagonal => "a",
            Direction::AntiDiagonal => "a+b",
        }
    }
}

impl TriTile {
    pub fn new(a: Rat, b: Rat, c: Rat) -> TriTile {
        TriTile { a, b, c }
    }

    pub fn side(&self) -> Rat {
        self.c.abs()
    }

    pub fn is_up(&self) -> bool {
        self.c.is_positive()
    }

    pub fn vertices(&self) -> [(Rat, Rat); 3] {
        [
            (self.a.clone(), self.b.clone()),
            (&self.a + &self.c, self.b.clone()),
            (self.a.clone(), &self.b + &self.c),
        ]
    }

    /// Ψ-area `c²/2`; a constant multiple of the Euclidean area.
    pub fn psi_area(&self) -> Rat {
        &self.c * &self.c / Rat::from_int(2)
    }

    /// Closed range of the form `dir` over the tile.
    pub fn range(&self, dir: Direction) -> (Rat, Rat) {
        let base = match dir {
            Direction::Horizontal => self.b.clone(),
            Direction::Diagonal => self.a.clone(),
            Direction::AntiDiagonal => &self.a + &self.b,
        };
        let other = &base + &self.c;
        if base <= other {
            (base, other)
        } else {
            (other, base)
        }
    }

    /// The three edges as `(direction, line value, (vertex, vertex))`.
    pub fn edges(&self) -> [Edge; 3] {
        let [p, q, r] = self.vertices();
        [
            (
                Direction::Horizontal,
                self.b.clone(),
                [p.clone(), q.clone()],
            ),
            (Direction::Diagonal, self.a.clone(), [p, r.clone()]),
            (Direction::AntiDiagonal, &self.a + &self.b + &self.c, [q, r]),
        ]
    }

    pub fn interiors_overlap(&self, other: &TriTile) -> bool {
        // Separating-axis test: the edge normals of both triangles are the
        // three forms, so disjoint interiors means one form separates them.
        Direction::ALL.iter().all(|&dir| {
            let (lo1, hi1) = self.range(dir);
            let (lo2, hi2) = other.range(dir);
            lo1.max(lo2) < hi1.min(hi2)
        })
    }

    fn map(&self, factor: &Rat, da: &Rat, db: &Rat) -> TriTile {
        TriTile::new(
            factor * &self.a + da,
            factor * &self.b + db,
            factor * &self.c,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TriRegion {
    /// `T(a, b, c)` with `c > 0`.
    Triangle { a: Rat, b: Rat, c: Rat },
    /// Bottom side from `Ψ(a, b)` to `Ψ(a + base, b)`, top side at height
    /// `b + height` of length `top`; legs at 60° so `base = top + height`.
    Trapezoid {
        a: Rat,
        b: Rat,
        base: Rat,
        top: Rat,
        height: Rat,
    },
    /// Sides `p` along `Ψ(1, 0)` and `q` along `Ψ(0, 1)` from `Ψ(a, b)`.
    Parallelogram { a: Rat, b: Rat, p: Rat, q: Rat },
}

/// Optional bounds on the three forms.
type Bounds = [(Option<Rat>, Option<Rat>); 3];

impl TriRegion {
    pub fn kind(&self) -> &'static str {
        match self {
            TriRegion::Triangle { .. } => "triangle",
            TriRegion::Trapezoid { .. } => "trapezoid",
            TriRegion::Parallelogram { .. } => "parallelogram",
        }
    }

    pub fn unit_triangle() -> TriRegion {
        TriRegion::Triangle {
            a: Rat::zero(),
            b: Rat::zero(),
            c: Rat::one(),
        }
    }

    pub fn is_unit_triangle(&self) -> bool {
        *self == TriRegion::unit_triangle()
    }

    fn structural_errors(&self) -> Vec<String> {
        let mut errs = Vec::new();
        let mut positive = |name: &str, x: &Rat| {
            if !x.is_positive() {
                errs.push(format!("region {name} must be positive, got {x}"));
            }
        };
        match self {
            TriRegion::Triangle { c, .. } => positive("side", c),
            TriRegion::Trapezoid {
                base, top, height, ..
            } => {
                positive("base", base);
                positive("top", top);
                positive("height", height);
                if *base != top + height {
                    errs.push(format!(
                        "trapezoid base {base} must equal top {top} plus height {height}"
                    ));
                }
            }
            TriRegion::Parallelogram { p, q, .. } => {
                positive("p", p);
                positive("q", q);
            }
        }
        errs
    }

    fn bounds(&self) -> Bounds {
        use Direction::*;
        let mut out: Bounds = Default::default();
        let mut set = |d: Direction, lo: Option<Rat>, hi: Option<Rat>| {
            out[d as usize] = (lo, hi);
        };
        match self {
            TriRegion::Triangle { a, b, c } => {
                set(Diagonal, Some(a.clone()), None);
                set(Horizontal, Some(b.clone()), None);
                set(AntiDiagonal, None, Some(a + b + c));
            }
            TriRegion::Trapezoid {
                a, b, base, height, ..
            } => {
                set(Diagonal, Some(a.clone()), None);
                set(Horizontal, Some(b.clone()), Some(b + height));
                set(AntiDiagonal, None, Some(a + b + base));
            }
            TriRegion::Parallelogram { a, b, p, q } => {
                set(Diagonal, Some(a.clone()), Some(a + p));
                set(Horizontal, Some(b.clone()), Some(b + q));
            }
        }
        out
    }

    /// Lines carrying the region's boundary.
    pub fn boundary_lines(&self) -> Vec<(Direction, Rat)> {
        let b = self.bounds();
        Direction::ALL
            .iter()
            .flat_map(|&d| {
                let (lo, hi) = &b[d as usize];
                [lo.clone(), hi.clone()]
                    .into_iter()
                    .flatten()
                    .map(move |v| (d, v))
            })
            .collect()
    }

    pub fn contains_point(&self, p: (&Rat, &Rat)) -> bool {
        let b = self.bounds();
        Direction::ALL.iter().all(|&d| {
            let x = d.eval(p);
            let (lo, hi) = &b[d as usize];
            lo.as_ref().is_none_or(|lo| lo <= &x) && hi.as_ref().is_none_or(|hi| &x <= hi)
        })
    }

    pub fn psi_area(&self) -> Rat {
        let two = Rat::from_int(2);
        match self {
            TriRegion::Triangle { c, .. } => c * c / two,
            TriRegion::Trapezoid { base, top, .. } => (base * base - top * top) / two,
            TriRegion::Parallelogram { p, q, .. } => p * q,
        }
    }

    /// Corners in counter-clockwise order, as Ψ-coordinates.
    pub fn vertices(&self) -> Vec<(Rat, Rat)> {
        match self {
            TriRegion::Triangle { a, b, c } => {
                vec![
                    (a.clone(), b.clone()),
                    (a + c, b.clone()),
                    (a.clone(), b + c),
                ]
            }
            TriRegion::Trapezoid {
                a,
                b,
                base,
                top,
                height,
            } => vec![
                (a.clone(), b.clone()),
                (a + base, b.clone()),
                (a + top, b + height),
                (a.clone(), b + height),
            ],
            TriRegion::Parallelogram { a, b, p, q } => vec![
                (a.clone(), b.clone()),
                (a + p, b.clone()),
                (a + p, b + q),
                (a.clone(), b + q),
            ],
        }
    }

    fn map(&self, f: &Rat, da: &Rat, db: &Rat) -> TriRegion {
        let at = |x: &Rat, d: &Rat| f * x + d;
        match self {
            TriRegion::Triangle { a, b, c } => TriRegion::Triangle {
                a: at(a, da),
                b: at(b, db),
                c: f * c,
            },
            TriRegion::Trapezoid {
                a,
                b,
                base,
                top,
                height,
            } => TriRegion::Trapezoid {
                a: at(a, da),
                b: at(b, db),
                base: f * base,
                top: f * top,
                height: f * height,
            },
            TriRegion::Parallelogram { a, b, p, q } => TriRegion::Parallelogram {
                a: at(a, da),
                b: at(b, db),
                p: f * p,
                q: f * q,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriTiling {
    pub region: TriRegion,
    pub tiles: Vec<TriTile>,
}

impl TriTiling {
    pub fn new(region: TriRegion, tiles: Vec<TriTile>) -> TriTiling {
        TriTiling { region, tiles }
    }

    pub fn validate(&self) -> ValidationReport {
        let mut structural: Vec<String> = self.region.structural_errors();
        for (k, t) in self.tiles.iter().enumerate() {
            if t.c.is_zero() {
                structural.push(format!("tile {k}: side c must be non-zero"));
            }
        }
        if !structural.is_empty() {
            return ValidationReport::structural("triangle", self.tiles.len(), structural);
        }

        let containment = self
            .tiles
            .iter()
            .enumerate()
            .filter(|(_, t)| {
                !t.vertices()
                    .iter()
                    .all(|(a, b)| self.region.contains_point((a, b)))
            })
            .map(|(k, _)| format!("tile {k} is not contained in the region"))
            .collect();

        let mut overlaps = Vec::new();
        for i in 0..self.tiles.len() {
            for j in i + 1..self.tiles.len() {
                if self.tiles[i].interiors_overlap(&self.tiles[j]) {
                    overlaps.push(format!("tiles {i} and {j} overlap"));
                }
            }
        }

        let mut report = ValidationReport {
            kind: "triangle",
            tiles: self.tiles.len(),
            structural,
            containment: Check::from_failures(containment),
            disjoint_interiors: Check::from_failures(overlaps),
            region_measure: self.region.psi_area(),
            tile_measure: self.tiles.iter().map(TriTile::psi_area).sum(),
            ..Default::default()
        };
        report.measure_check();
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    pub fn side_lengths(&self) -> Vec<Rat> {
        self.tiles.iter().map(TriTile::side).collect()
    }

    /// `(a, b) ↦ factor·(a, b) + offset` in Ψ-coordinates.
    pub fn scale_translate(&self, factor: &Rat, offset: &[Rat]) -> Result<TriTiling> {
        check_factor(factor)?;
        check_offset(offset, 2)?;
        let (da, db) = (&offset[0], &offset[1]);
        Ok(TriTiling {
            region: self.region.map(factor, da, db),
            tiles: self.tiles.iter().map(|t| t.map(factor, da, db)).collect(),
        })
    }
}

/// Rotation by 120° about the centre of `T(0, 0, 1)`:
/// `(a, b) ↦ (1 − a − b, a)`, which sends `T(a, b, c)` to
/// `T(1 − a − b − c, a, c)`.
pub fn rotate_tri_120(t: &TriTiling) -> Result<TriTiling> {
    if !t.region.is_unit_triangle() {
        return Err(Error::Precondition(format!(
            "rotation needs the region T(0,0,1), got {:?}",
            t.region
        )));
    }
    let one = Rat::one();
    Ok(TriTiling {
        region: t.region.clone(),
        tiles: t
            .tiles
            .iter()
            .map(|x| TriTile::new(&one - &x.a - &x.b - &x.c, x.a.clone(), x.c.clone()))
            .collect(),
    })
}
