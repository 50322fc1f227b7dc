use num_bigint::BigInt;
use num_traits::One;

use super::{almost_integer_snap, inner_values, integer_sides, Bound, ScalingCertificate};
use crate::diophantine::{dirichlet, dirichlet_varied, ApproxGroup};
use crate::error::{Error, Result};
use crate::numeric::{pow, Rat};
use crate::tiling::{normalize_rect, RectTiling, Tiling};

fn vertex_coords(t: &RectTiling) -> Vec<Rat> {
    inner_values(
        t.tiles
            .iter()
            .flat_map(|tile| [&tile.rect.x0, &tile.rect.x1, &tile.rect.y0, &tile.rect.y1]),
    )
}

fn input_scale(t: &RectTiling, q: &BigInt) -> Rat {
    let longest = t.region.width().max(t.region.height());
    Rat::from_int(q.clone()) / longest
}

fn scale(t: &RectTiling, q: &BigInt) -> Result<RectTiling> {
    t.scale_translate(&Rat::from_int(q.clone()), &[Rat::zero(), Rat::zero()])
}

/// Square tiling scaled so every square has an integer side, with the
/// longest region side `q ≤ 4^n`.
pub fn integerize_square_tiling(t: &RectTiling) -> Result<ScalingCertificate> {
    t.validate().into_result()?;
    if let Some(k) = t.tiles.iter().position(|tile| !tile.rect.is_square()) {
        return Err(Error::Precondition(format!("tile {k} is not a square")));
    }
    let n = t.tiles.len() as u64;
    let norm = normalize_rect(t);
    let s = vertex_coords(&norm);
    if s.len() as u64 > n {
        return Err(Error::TheoremViolation(format!(
            "{} inner coordinates for {n} squares",
            s.len()
        )));
    }
    let approx = dirichlet(&s, 4)?;
    let q = approx.q.clone();
    Bound::integer(pow(4, s.len() as u64)).ensure(&q, "scale")?;
    let bound = Bound::integer(pow(4, n));
    bound.ensure(&q, "scale")?;

    let scaled = scale(&norm, &q)?;
    if scaled.region.height() != Rat::from_int(q.clone()) {
        return Err(Error::TheoremViolation(
            "scaled region's longest side differs from q".into(),
        ));
    }
    let snapped = almost_integer_snap(&scaled)?;
    let tiling = Tiling::Rect(scaled);
    let sides = integer_sides(&tiling)?;
    debug_assert!(sides.iter().zip(&snapped).all(|(s, x)| &s[0] == x));
    Ok(ScalingCertificate {
        input_scale: input_scale(t, &q),
        q,
        bound,
        sides,
        rotation: None,
        axes: None,
        approx,
        tiling,
    })
}

/// Rectangle tiling whose tiles carry ratios `p:q` (vertical:horizontal),
/// scaled so every tile becomes an integer multiple of its ratio, with
/// `q ≤ 8^n ∏ max(pᵢ, qᵢ)`.
pub fn integerize_rect_tiling(t: &RectTiling) -> Result<ScalingCertificate> {
    if let Some(k) = t.tiles.iter().position(|tile| tile.ratio.is_none()) {
        return Err(Error::Precondition(format!(
            "tile {k} has no declared ratio"
        )));
    }
    t.validate().into_result()?;
    let n = t.tiles.len() as u64;
    let norm = normalize_rect(t);
    let ratios: Vec<_> = norm
        .tiles
        .iter()
        .map(|tile| tile.ratio.expect("checked above"))
        .collect();

    let mut groups = vec![ApproxGroup::new(vertex_coords(&norm), 4)];
    let mut product = BigInt::one();
    for (tile, ratio) in norm.tiles.iter().zip(&ratios) {
        let c = tile.rect.height() / Rat::from_int(ratio.p);
        groups.push(ApproxGroup::new(vec![c], 2 * ratio.max()));
        product *= ratio.max();
    }
    let approx = dirichlet_varied(&groups)?;
    let q = approx.q.clone();
    let bound = Bound::power(product, 8, n, 1);
    bound.ensure(&q, "scale")?;

    let scaled = scale(&norm, &q)?;
    for (k, (tile, ratio)) in scaled.tiles.iter().zip(&ratios).enumerate() {
        let s = tile.rect.height() / Rat::from_int(ratio.p);
        if !s.is_integer() || tile.rect.width() != &s * &Rat::from_int(ratio.q) {
            return Err(Error::TheoremViolation(format!(
                "scaled tile {k} is {} x {}, not an integer multiple of {}:{}",
                tile.rect.width(),
                tile.rect.height(),
                ratio.p,
                ratio.q
            )));
        }
    }
    let tiling = Tiling::Rect(scaled);
    let sides = integer_sides(&tiling)?;
    Ok(ScalingCertificate {
        input_scale: input_scale(t, &q),
        q,
        bound,
        sides,
        rotation: None,
        axes: None,
        approx,
        tiling,
    })
}
