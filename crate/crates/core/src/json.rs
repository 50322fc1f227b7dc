//! The JSON exchange format for tilings.
//!
//! ```json
//! {"kind": "rect",
//!  "region": {"x0": "0", "x1": "2", "y0": "0", "y1": "3"},
//!  "tiles": [{"x0": "0", "x1": "2", "y0": "0", "y1": "2", "ratio": ["1", "1"]}, …]}
//! {"kind": "cuboid", "dim": 3,
//!  "region": {"lo": ["0","0","0"], "hi": ["1","1","1"]},
//!  "tiles": [{"lo": […], "hi": […], "shape": ["1","1","1"]}, …]}
//! {"kind": "triangle",
//!  "region": {"type": "triangle", "a": "0", "b": "0", "c": "1"},
//!  "tiles": [{"a": "0", "b": "0", "c": "1/2"}, …]}
//! ```
//!
//! Rationals are `"num/den"` strings (bare integers are accepted on input).
//! A rectangle ratio `[p, q]` is vertical side to horizontal side. Triangle
//! regions use `"type"` values `triangle {a,b,c}`, `trapezoid
//! {a,b,base,top,height}` and `parallelogram {a,b,p,q}`.

use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numeric::Rat;
use crate::tiling::{
    Cuboid, CuboidTile, CuboidTiling, Ratio, Rect, RectTile, RectTiling, Tiling, TriRegion,
    TriTile, TriTiling,
};

/// A positive integer written as a string (integers are accepted on input).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Count(u64);

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Count {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Count, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Count;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a non-negative integer")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Count, E> {
                Ok(Count(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Count, E> {
                u64::try_from(v)
                    .map(Count)
                    .map_err(|_| E::custom(format!("expected a non-negative integer, got {v}")))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Count, E> {
                v.trim()
                    .parse()
                    .map(Count)
                    .map_err(|_| E::custom(format!("expected a non-negative integer, got {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Serialize)]
struct RectDoc {
    x0: Rat,
    x1: Rat,
    y0: Rat,
    y1: Rat,
}

#[derive(Serialize)]
struct RectTileDoc {
    x0: Rat,
    x1: Rat,
    y0: Rat,
    y1: Rat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ratio: Option<[Count; 2]>,
}

#[derive(Serialize)]
struct BoxDoc {
    lo: Vec<Rat>,
    hi: Vec<Rat>,
}

#[derive(Serialize)]
struct BoxTileDoc {
    lo: Vec<Rat>,
    hi: Vec<Rat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    shape: Option<Vec<Count>>,
}

#[derive(Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum TriRegionDoc {
    Triangle {
        a: Rat,
        b: Rat,
        c: Rat,
    },
    Trapezoid {
        a: Rat,
        b: Rat,
        base: Rat,
        top: Rat,
        height: Rat,
    },
    Parallelogram {
        a: Rat,
        b: Rat,
        p: Rat,
        q: Rat,
    },
}

#[derive(Serialize)]
struct TriTileDoc {
    a: Rat,
    b: Rat,
    c: Rat,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum Doc {
    Rect {
        region: RectDoc,
        tiles: Vec<RectTileDoc>,
    },
    Cuboid {
        dim: usize,
        region: BoxDoc,
        tiles: Vec<BoxTileDoc>,
    },
    Triangle {
        region: TriRegionDoc,
        tiles: Vec<TriTileDoc>,
    },
}

fn rect_doc(r: &Rect) -> RectDoc {
    RectDoc {
        x0: r.x0.clone(),
        x1: r.x1.clone(),
        y0: r.y0.clone(),
        y1: r.y1.clone(),
    }
}

impl From<&Tiling> for Doc {
    fn from(t: &Tiling) -> Doc {
        match t {
            Tiling::Rect(t) => Doc::Rect {
                region: rect_doc(&t.region),
                tiles: t
                    .tiles
                    .iter()
                    .map(|tile| {
                        let r = rect_doc(&tile.rect);
                        RectTileDoc {
                            x0: r.x0,
                            x1: r.x1,
                            y0: r.y0,
                            y1: r.y1,
                            ratio: tile.ratio.map(|r| [Count(r.p), Count(r.q)]),
                        }
                    })
                    .collect(),
            },
            Tiling::Cuboid(t) => Doc::Cuboid {
                dim: t.dim(),
                region: BoxDoc {
                    lo: t.region.lo.clone(),
                    hi: t.region.hi.clone(),
                },
                tiles: t
                    .tiles
                    .iter()
                    .map(|tile| BoxTileDoc {
                        lo: tile.cuboid.lo.clone(),
                        hi: tile.cuboid.hi.clone(),
                        shape: tile
                            .shape
                            .as_ref()
                            .map(|s| s.iter().copied().map(Count).collect()),
                    })
                    .collect(),
            },
            Tiling::Tri(t) => Doc::Triangle {
                region: match t.region.clone() {
                    TriRegion::Triangle { a, b, c } => TriRegionDoc::Triangle { a, b, c },
                    TriRegion::Trapezoid {
                        a,
                        b,
                        base,
                        top,
                        height,
                    } => TriRegionDoc::Trapezoid {
                        a,
                        b,
                        base,
                        top,
                        height,
                    },
                    TriRegion::Parallelogram { a, b, p, q } => {
                        TriRegionDoc::Parallelogram { a, b, p, q }
                    }
                },
                tiles: t
                    .tiles
                    .iter()
                    .map(|tile| TriTileDoc {
                        a: tile.a.clone(),
                        b: tile.b.clone(),
                        c: tile.c.clone(),
                    })
                    .collect(),
            },
        }
    }
}

/// Every field any document kind can carry. Reading into this flat shape
/// straight from the text keeps serde_json's line and column information for
/// type errors.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDoc {
    kind: String,
    dim: Option<usize>,
    region: RawItem,
    tiles: Vec<RawItem>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawItem {
    #[serde(rename = "type")]
    ty: Option<String>,
    x0: Option<Rat>,
    x1: Option<Rat>,
    y0: Option<Rat>,
    y1: Option<Rat>,
    ratio: Option<[Count; 2]>,
    lo: Option<Vec<Rat>>,
    hi: Option<Vec<Rat>>,
    shape: Option<Vec<Count>>,
    a: Option<Rat>,
    b: Option<Rat>,
    c: Option<Rat>,
    base: Option<Rat>,
    top: Option<Rat>,
    height: Option<Rat>,
    p: Option<Rat>,
    q: Option<Rat>,
}

fn field<T>(v: Option<T>, what: &str, name: &str) -> Result<T> {
    v.ok_or_else(|| Error::Parse(format!("{what}: missing field `{name}`")))
}

fn forbid(present: bool, what: &str, name: &str, kind: &str) -> Result<()> {
    if present {
        return Err(Error::Parse(format!(
            "{what}: field `{name}` is not allowed in a {kind} document"
        )));
    }
    Ok(())
}

impl RawItem {
    fn rect(&mut self, what: &str) -> Result<Rect> {
        Ok(Rect::new(
            field(self.x0.take(), what, "x0")?,
            field(self.x1.take(), what, "x1")?,
            field(self.y0.take(), what, "y0")?,
            field(self.y1.take(), what, "y1")?,
        ))
    }

    fn cuboid(&mut self, what: &str, dim: usize) -> Result<Cuboid> {
        let lo = field(self.lo.take(), what, "lo")?;
        let hi = field(self.hi.take(), what, "hi")?;
        for (name, len) in [("lo", lo.len()), ("hi", hi.len())] {
            check_dim(what, name, len, dim)?;
        }
        Ok(Cuboid::new(lo, hi))
    }

    fn ab(&mut self, what: &str) -> Result<(Rat, Rat)> {
        Ok((
            field(self.a.take(), what, "a")?,
            field(self.b.take(), what, "b")?,
        ))
    }

    /// Rejects any field left over after the kind-specific ones were taken.
    fn finish(self, what: &str, kind: &str) -> Result<()> {
        let present = [
            ("type", self.ty.is_some()),
            ("x0", self.x0.is_some()),
            ("x1", self.x1.is_some()),
            ("y0", self.y0.is_some()),
            ("y1", self.y1.is_some()),
            ("ratio", self.ratio.is_some()),
            ("lo", self.lo.is_some()),
            ("hi", self.hi.is_some()),
            ("shape", self.shape.is_some()),
            ("a", self.a.is_some()),
            ("b", self.b.is_some()),
            ("c", self.c.is_some()),
            ("base", self.base.is_some()),
            ("top", self.top.is_some()),
            ("height", self.height.is_some()),
            ("p", self.p.is_some()),
            ("q", self.q.is_some()),
        ];
        for (name, is) in present {
            forbid(is, what, name, kind)?;
        }
        Ok(())
    }
}

fn check_dim(what: &str, name: &str, len: usize, dim: usize) -> Result<()> {
    if len != dim {
        return Err(Error::Parse(format!(
            "{what} {name} has {len} entries but dim is {dim}"
        )));
    }
    Ok(())
}

impl TryFrom<RawDoc> for Tiling {
    type Error = Error;

    fn try_from(doc: RawDoc) -> Result<Tiling> {
        let RawDoc {
            kind,
            dim,
            mut region,
            tiles,
        } = doc;
        let kind = kind.as_str();
        if kind != "cuboid" {
            forbid(dim.is_some(), "document", "dim", kind)?;
        }
        match kind {
            "rect" => {
                let r = region.rect("region")?;
                region.finish("region", kind)?;
                let mut out = Vec::with_capacity(tiles.len());
                for (k, mut t) in tiles.into_iter().enumerate() {
                    let what = format!("tile {k}");
                    let rect = t.rect(&what)?;
                    out.push(match t.ratio.take() {
                        Some([p, q]) => RectTile::with_ratio(rect, Ratio::new(p.0, q.0)),
                        None => RectTile::new(rect),
                    });
                    t.finish(&what, kind)?;
                }
                Ok(Tiling::Rect(RectTiling::new(r, out)))
            }
            "cuboid" => {
                let dim = field(dim, "document", "dim")?;
                let r = region.cuboid("region", dim)?;
                region.finish("region", kind)?;
                let mut out = Vec::with_capacity(tiles.len());
                for (k, mut t) in tiles.into_iter().enumerate() {
                    let what = format!("tile {k}");
                    let cuboid = t.cuboid(&what, dim)?;
                    out.push(match t.shape.take() {
                        Some(s) => {
                            check_dim(&what, "shape", s.len(), dim)?;
                            CuboidTile::with_shape(cuboid, s.into_iter().map(|c| c.0).collect())
                        }
                        None => CuboidTile::new(cuboid),
                    });
                    t.finish(&what, kind)?;
                }
                Ok(Tiling::Cuboid(CuboidTiling::new(r, out)))
            }
            "triangle" => {
                let ty = field(region.ty.take(), "region", "type")?;
                let (a, b) = region.ab("region")?;
                let r = match ty.as_str() {
                    "triangle" => TriRegion::Triangle {
                        a,
                        b,
                        c: field(region.c.take(), "region", "c")?,
                    },
                    "trapezoid" => TriRegion::Trapezoid {
                        a,
                        b,
                        base: field(region.base.take(), "region", "base")?,
                        top: field(region.top.take(), "region", "top")?,
                        height: field(region.height.take(), "region", "height")?,
                    },
                    "parallelogram" => TriRegion::Parallelogram {
                        a,
                        b,
                        p: field(region.p.take(), "region", "p")?,
                        q: field(region.q.take(), "region", "q")?,
                    },
                    other => {
                        return Err(Error::Parse(format!(
                            "region: unknown type {other:?}, expected triangle, trapezoid or parallelogram"
                        )))
                    }
                };
                region.finish("region", &ty)?;
                let mut out = Vec::with_capacity(tiles.len());
                for (k, mut t) in tiles.into_iter().enumerate() {
                    let what = format!("tile {k}");
                    let (a, b) = t.ab(&what)?;
                    out.push(TriTile::new(a, b, field(t.c.take(), &what, "c")?));
                    t.finish(&what, kind)?;
                }
                Ok(Tiling::Tri(TriTiling::new(r, out)))
            }
            other => Err(Error::Parse(format!(
                "unknown kind {other:?}, expected rect, cuboid or triangle"
            ))),
        }
    }
}

impl Serialize for Tiling {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Doc::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tiling {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Tiling, D::Error> {
        let doc = RawDoc::deserialize(d)?;
        Tiling::try_from(doc).map_err(de::Error::custom)
    }
}

/// Parses a tiling document; errors carry the line and column.
pub fn parse_tiling(text: &str) -> Result<Tiling> {
    let doc: RawDoc = serde_json::from_str(text).map_err(|e| {
        Error::Parse(format!(
            "line {}, column {}: {}",
            e.line(),
            e.column(),
            strip_position(&e.to_string())
        ))
    })?;
    Tiling::try_from(doc)
}

fn strip_position(msg: &str) -> &str {
    msg.rfind(" at line ").map_or(msg, |i| &msg[..i])
}

pub fn tiling_to_value(t: &Tiling) -> serde_json::Value {
    serde_json::to_value(t).expect("tilings always serialize")
}

pub fn tiling_to_string(t: &Tiling) -> String {
    serde_json::to_string_pretty(t).expect("tilings always serialize")
}


#[cfg(test)]
mod strict_tests {
    use super::*;

    #[test]
    fn rejects_foreign_fields_and_kinds() {
        let e = parse_tiling(
            r#"{"kind":"rect","region":{"x0":"0","x1":"1","y0":"0","y1":"1","a":"0"},"tiles":[]}"#,
        )
        .unwrap_err();
        assert!(e.to_string().contains("`a`"), "{e}");
        let e = parse_tiling(r#"{"kind":"hex","region":{},"tiles":[]}"#).unwrap_err();
        assert!(e.to_string().contains("unknown kind"), "{e}");
        let e = parse_tiling(r#"{"kind":"rect","region":{"x0":"0","x1":"1","y0":"0"},"tiles":[]}"#)
            .unwrap_err();
        assert!(e.to_string().contains("missing field `y1`"), "{e}");
    }
}
