use num_bigint::BigInt;
use num_traits::One;

use super::{count_half_shifted_diag, integer_sides, Bound, ScalingCertificate};
use crate::coords::{rotate_times, tri_best_rotation};
use crate::diophantine::dirichlet;
use crate::error::{Error, Result};
use crate::numeric::Rat;
use crate::tiling::{Tiling, TriRegion, TriTile, TriTiling};

fn tri_bound(exponent: u64) -> Bound {
    Bound::power(BigInt::one(), 4, exponent, 3)
}

/// Triangle tiling scaled so every tile has an integer side, with
/// `q ≤ 4^((2n−2)/3)`.
pub fn integerize_triangle_tiling(t: &TriTiling) -> Result<ScalingCertificate> {
    let TriRegion::Triangle { a, b, c } = &t.region else {
        return Err(Error::Precondition(format!(
            "region is a {}; use the trapezoid or parallelogram pipeline",
            t.region.kind()
        )));
    };
    t.validate().into_result()?;
    let n = t.tiles.len() as u64;
    let f = c.recip();
    let norm = t.scale_translate(&f, &[-(&f * a), -(&f * b)])?;

    let choice = tri_best_rotation(&norm)?;
    if 3 * choice.coords.len() as u64 > 2 * n - 2 {
        return Err(Error::TheoremViolation(format!(
            "{} inner coordinates for {n} triangles",
            choice.coords.len()
        )));
    }
    let approx = dirichlet(&choice.coords, 4)?;
    let q = approx.q.clone();
    let bound = tri_bound(2 * n - 2);
    bound.ensure(&q, "scale")?;

    let qr = Rat::from_int(q.clone());
    let zero = [Rat::zero(), Rat::zero()];
    let turned = rotate_times(&norm, choice.rotation)?.scale_translate(&qr, &zero)?;
    for (k, tile) in turned.tiles.iter().enumerate() {
        let count = count_half_shifted_diag(tile)?;
        let side = tile.side();
        let expect = Rat::from_int(count.h.clone());
        if count.diag != count.h || side != expect {
            return Err(Error::TheoremViolation(format!(
                "scaled tile {k} has side {side} but meets {} diagonal and {} horizontal half-shifted lines",
                count.diag, count.h
            )));
        }
    }

    let tiling = Tiling::Tri(norm.scale_translate(&qr, &zero)?);
    let sides = integer_sides(&tiling)?;
    Ok(ScalingCertificate {
        q,
        bound,
        input_scale: &qr * &f,
        sides,
        rotation: Some(choice.rotation),
        axes: None,
        approx,
        tiling,
    })
}

/// Completes a trapezoid or parallelogram region to a triangle; returns the
/// triangle's `(a, b, side)` and the added tiles.
fn completion(region: &TriRegion) -> Result<((Rat, Rat, Rat), Vec<TriTile>)> {
    match region {
        TriRegion::Trapezoid {
            a,
            b,
            base,
            top,
            height,
        } => Ok((
            (a.clone(), b.clone(), base.clone()),
            vec![TriTile::new(a.clone(), b + height, top.clone())],
        )),
        TriRegion::Parallelogram { a, b, p, q } => Ok((
            (a.clone(), b.clone(), p + q),
            vec![
                TriTile::new(a + p, b.clone(), q.clone()),
                TriTile::new(a.clone(), b + q, p.clone()),
            ],
        )),
        TriRegion::Triangle { .. } => Err(Error::Precondition(
            "region is a triangle; use the triangle pipeline".into(),
        )),
    }
}

/// Trapezoid or parallelogram tiling, completed to a triangle with one or
/// two extra tiles and scaled by the triangle pipeline. The bound is
/// `4^(2n/3)` for a trapezoid and `4^((2n+2)/3)` for a parallelogram; the
/// extra tiles are dropped from the result.
pub fn integerize_trapezoid_or_parallelogram(t: &TriTiling) -> Result<ScalingCertificate> {
    let ((a, b, c), extra) = completion(&t.region)?;
    t.validate().into_result()?;
    let n = t.tiles.len() as u64;
    let mut tiles = t.tiles.clone();
    tiles.extend(extra.iter().cloned());
    let augmented = TriTiling::new(
        TriRegion::Triangle {
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
        },
        tiles,
    );
    augmented.validate().into_result().map_err(|e| {
        Error::TheoremViolation(format!("completed triangle does not validate: {e}"))
    })?;

    let inner = integerize_triangle_tiling(&augmented)?;
    let q = inner.q.clone();
    let bound = tri_bound(2 * n + 2 * extra.len() as u64 - 2);
    bound.ensure(&q, "scale")?;

    let f = Rat::from_int(q.clone()) / &c;
    let scaled = t.scale_translate(&f, &[-(&f * &a), -(&f * &b)])?;
    let Tiling::Tri(full) = &inner.tiling else {
        unreachable!("triangle pipeline returns a triangle tiling")
    };
    if full.tiles[..t.tiles.len()] != scaled.tiles[..] {
        return Err(Error::TheoremViolation(
            "scaled tiles differ from the completed triangle's".into(),
        ));
    }
    let tiling = Tiling::Tri(scaled);
    let sides = integer_sides(&tiling)?;
    Ok(ScalingCertificate {
        q,
        bound,
        input_scale: f,
        sides,
        rotation: inner.rotation,
        axes: None,
        approx: inner.approx,
        tiling,
    })
}
