//! Scaling pipelines that turn rational tilings into integer-sided ones.
//!
//! Each pipeline normalizes the tiling, collects the coordinates that must
//! become almost-integers, runs a Dirichlet search for the scale `q`, scales,
//! and then certifies the result: the scaled tiling validates, every side is
//! a positive integer, and `q` respects the stated bound (compared exactly,
//! fractional exponents included).

mod cuboid;
mod lines;
mod rect;
mod tri;

pub use cuboid::{
    cuboid_cross_section, integerize_hypercube_tiling, integerize_hypercuboid_tiling,
    section_anchors, MAX_SECTIONS,
};
pub use lines::{
    almost_integer_snap, check_balanced_lines_square, count_half_shifted, count_half_shifted_diag,
    dehn_aspect_ratio, grid_line_count, rfunction_flow_check, tri_flow_check, DiagLineCount,
    FlowReport, GridLineCount,
};
pub use rect::{integerize_rect_tiling, integerize_square_tiling};
pub use tri::{integerize_trapezoid_or_parallelogram, integerize_triangle_tiling};

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed};
use serde::{Serialize, Serializer};

use crate::diophantine::ApproxResult;
use crate::error::{Error, Result};
use crate::numeric::{big_pow, pow, serialize_bigint, Rat};
use crate::tiling::Tiling;

/// The real number `factor · base^(num/den)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bound {
    pub factor: BigInt,
    pub base: u64,
    pub num: u64,
    pub den: u64,
}

impl Bound {
    pub fn integer(value: BigInt) -> Bound {
        Bound {
            factor: value,
            base: 1,
            num: 0,
            den: 1,
        }
    }

    /// `factor · base^(num/den)`; `den` must be positive.
    pub fn power(factor: BigInt, base: u64, num: u64, den: u64) -> Bound {
        assert!(den > 0, "zero exponent denominator");
        let g = num.gcd(&den).max(1);
        Bound {
            factor,
            base,
            num: num / g,
            den: den / g,
        }
    }

    /// The bound's value when it is an integer.
    pub fn exact_integer(&self) -> Option<BigInt> {
        let root = self.base.nth_root(self.den as u32);
        (pow(root, self.den) == pow(self.base, 1)).then(|| &self.factor * pow(root, self.num))
    }

    /// `x ≤ self`, decided by comparing `x^den` with `factor^den · base^num`.
    pub fn admits(&self, x: &BigInt) -> bool {
        if x.is_negative() {
            return true;
        }
        big_pow(x, self.den) <= big_pow(&self.factor, self.den) * pow(self.base, self.num)
    }

    fn ensure(&self, x: &BigInt, what: &str) -> Result<()> {
        if !self.admits(x) {
            return Err(Error::TheoremViolation(format!(
                "{what} {x} exceeds the bound {self}"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        if let Some(v) = self.exact_integer() {
            return write!(f, "{v}");
        }
        if !self.factor.is_one() {
            write!(f, "{}*", self.factor)?;
        }
        write!(f, "{}^({}/{})", self.base, self.num, self.den)
    }
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn serialize_sides<S: Serializer>(
    sides: &[Vec<BigInt>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let strings: Vec<Vec<String>> = sides
        .iter()
        .map(|v| v.iter().map(|x| x.to_string()).collect())
        .collect();
    strings.serialize(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct ScalingCertificate {
    #[serde(serialize_with = "serialize_bigint")]
    pub q: BigInt,
    pub bound: Bound,
    /// Factor taking the input's lengths to the scaled tiling's; equals `q`
    /// divided by the input's normalizing length.
    pub input_scale: Rat,
    /// Integer side lengths of each scaled tile, one entry per axis.
    #[serde(serialize_with = "serialize_sides")]
    pub sides: Vec<Vec<BigInt>>,
    /// 120° turns applied before collecting triangle coordinates.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rotation: Option<usize>,
    /// Axis pair `(i, j)` used by the box pipelines, 0-based.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axes: Option<[usize; 2]>,
    /// The Dirichlet search that produced `q`.
    pub approx: ApproxResult,
    /// The normalized tiling scaled by `q`.
    pub tiling: Tiling,
}

impl ScalingCertificate {
    /// One side length per tile when all tiles are squares, cubes or
    /// triangles.
    pub fn edge_lengths(&self) -> Option<Vec<BigInt>> {
        self.sides
            .iter()
            .map(|s| {
                let first = s.first()?;
                s.iter().all(|x| x == first).then(|| first.clone())
            })
            .collect()
    }
}

/// Picks the pipeline for `t`: rectangles with declared ratios use the ratio
/// pipeline and plain ones the square pipeline, boxes with shapes the
/// hypercuboid pipeline and plain ones the hypercube pipeline, triangle
/// regions the triangle pipeline and the rest the trapezoid/parallelogram
/// one. Returns the pipeline's name with its certificate.
pub fn integerize(t: &Tiling) -> Result<(&'static str, ScalingCertificate)> {
    match t {
        Tiling::Rect(r) if r.tiles.iter().any(|tile| tile.ratio.is_some()) => {
            Ok(("ratio", integerize_rect_tiling(r)?))
        }
        Tiling::Rect(r) => Ok(("square", integerize_square_tiling(r)?)),
        Tiling::Cuboid(c) if c.tiles.iter().any(|tile| tile.shape.is_some()) => {
            Ok(("hypercuboid", integerize_hypercuboid_tiling(c)?))
        }
        Tiling::Cuboid(c) => Ok(("hypercube", integerize_hypercube_tiling(c)?)),
        Tiling::Tri(tt) if matches!(tt.region, crate::tiling::TriRegion::Triangle { .. }) => {
            Ok(("triangle", integerize_triangle_tiling(tt)?))
        }
        Tiling::Tri(tt) => Ok(("trapezoid", integerize_trapezoid_or_parallelogram(tt)?)),
    }
}

/// Distinct values without 0 and 1.
fn inner_values<'a>(values: impl IntoIterator<Item = &'a Rat>) -> Vec<Rat> {
    let (zero, one) = (Rat::zero(), Rat::one());
    values
        .into_iter()
        .filter(|x| **x != zero && **x != one)
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Validates the scaled tiling and converts every side to a positive integer.
fn integer_sides(t: &Tiling) -> Result<Vec<Vec<BigInt>>> {
    let report = t.validate();
    if !report.is_valid() {
        let e = report.into_result().unwrap_err();
        return Err(Error::TheoremViolation(format!(
            "scaled tiling does not validate: {e}"
        )));
    }
    t.side_lengths()
        .into_iter()
        .enumerate()
        .map(|(k, sides)| {
            sides
                .into_iter()
                .map(|s| match s.to_integer() {
                    Some(v) if v.is_positive() => Ok(v),
                    _ => Err(Error::TheoremViolation(format!(
                        "scaled tile {k} has non-integer side {s}"
                    ))),
                })
                .collect()
        })
        .collect()
}
