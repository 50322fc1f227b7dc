//! Deterministic SVG output for planar tilings.
//!
//! Coordinates stay exact until emission; each number is then written as
//! an `f64` rounded to 12 significant digits, in its shortest form. The y
//! axis is flipped so the picture has y pointing up. Triangle tilings are
//! drawn through Ψ(a, b) = (a + b/2, b·√3/2).

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::numeric::Rat;
use crate::tiling::{RectTiling, Tiling, TriTiling};

const RECT_FILL: &str = "#dbe4ee";
const UP_FILL: &str = "#dbe4ee";
const DOWN_FILL: &str = "#f3e3c9";
const STROKE: &str = "#1d3a56";
const PIXELS: f64 = 480.0;

/// A decimal with at most 12 significant digits and no trailing zeros.
pub fn format_number(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".into();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float");
    if rounded == 0.0 {
        "0".into()
    } else {
        format!("{rounded}")
    }
}

struct Canvas {
    min_x: f64,
    max_x: f64,
    min_y: f64,
    max_y: f64,
    body: String,
}

impl Canvas {
    fn new(points: impl IntoIterator<Item = (f64, f64)>) -> Canvas {
        let mut c = Canvas {
            min_x: f64::INFINITY,
            max_x: f64::NEG_INFINITY,
            min_y: f64::INFINITY,
            max_y: f64::NEG_INFINITY,
            body: String::new(),
        };
        for (x, y) in points {
            c.min_x = c.min_x.min(x);
            c.max_x = c.max_x.max(x);
            c.min_y = c.min_y.min(y);
            c.max_y = c.max_y.max(y);
        }
        c
    }

    fn polygon(&mut self, points: &[(f64, f64)], fill: &str) {
        let pts: Vec<String> = points
            .iter()
            .map(|(x, y)| format!("{},{}", format_number(*x), format_number(-*y)))
            .collect();
        writeln!(
            self.body,
            r#"  <polygon points="{}" fill="{fill}"/>"#,
            pts.join(" ")
        )
        .expect("writing to a string");
    }

    fn finish(self) -> String {
        let w = self.max_x - self.min_x;
        let h = self.max_y - self.min_y;
        let longest = w.max(h);
        let (pw, ph) = (PIXELS * w / longest, PIXELS * h / longest);
        format!(
            concat!(
                r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="{}" height="{}">"#,
                "\n",
                r#"<g stroke="{}" stroke-width="1" stroke-linejoin="round" vector-effect="non-scaling-stroke">"#,
                "\n{}</g>\n</svg>\n"
            ),
            format_number(self.min_x),
            format_number(-self.max_y),
            format_number(w),
            format_number(h),
            format_number(pw),
            format_number(ph),
            STROKE,
            self.body
        )
    }
}

fn f(x: &Rat) -> f64 {
    x.to_f64()
}

pub fn render_rect(t: &RectTiling) -> String {
    let r = &t.region;
    let mut canvas = Canvas::new([(f(&r.x0), f(&r.y0)), (f(&r.x1), f(&r.y1))]);
    for tile in &t.tiles {
        let q = &tile.rect;
        let (x0, x1, y0, y1) = (f(&q.x0), f(&q.x1), f(&q.y0), f(&q.y1));
        canvas.polygon(&[(x0, y0), (x1, y0), (x1, y1), (x0, y1)], RECT_FILL);
    }
    canvas.finish()
}

fn psi((a, b): &(Rat, Rat)) -> (f64, f64) {
    let x = a + &(b * &Rat::half());
    (f(&x), f(b) * 3f64.sqrt() / 2.0)
}

pub fn render_tri(t: &TriTiling) -> String {
    let mut canvas = Canvas::new(t.region.vertices().iter().map(psi));
    for tile in &t.tiles {
        let pts: Vec<(f64, f64)> = tile.vertices().iter().map(psi).collect();
        let fill = if tile.is_up() { UP_FILL } else { DOWN_FILL };
        canvas.polygon(&pts, fill);
    }
    canvas.finish()
}

/// Renders a rectangle or triangle tiling; boxes need a cross-section first.
pub fn render_svg(t: &Tiling) -> Result<String> {
    match t {
        Tiling::Rect(r) => Ok(render_rect(r)),
        Tiling::Tri(tt) => Ok(render_tri(tt)),
        Tiling::Cuboid(c) => Err(Error::Precondition(format!(
            "cannot draw a {}-dimensional tiling directly; pick a cross-section",
            c.dim()
        ))),
    }
}
