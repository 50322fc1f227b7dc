use num_bigint::BigInt;
use num_traits::One;

use super::{almost_integer_snap, inner_values, integer_sides, Bound, ScalingCertificate};
use crate::coords::cuboid_best_axis_pair;
use crate::diophantine::{dirichlet, dirichlet_varied, ApproxGroup};
use crate::error::{Error, Result};
use crate::numeric::Rat;
use crate::tiling::{CuboidTiling, Rect, RectTile, RectTiling, Tiling};

/// Upper limit on the number of cross-sections checked per tiling.
pub const MAX_SECTIONS: usize = 4096;

fn other_axes(d: usize, i: usize, j: usize) -> Vec<usize> {
    (0..d).filter(|&k| k != i && k != j).collect()
}

/// Section with the tiles it came from.
fn section(
    t: &CuboidTiling,
    i: usize,
    j: usize,
    anchor: &[Rat],
) -> Result<(RectTiling, Vec<usize>)> {
    let d = t.dim();
    if i >= d || j >= d || i == j {
        return Err(Error::Precondition(format!(
            "axes ({i}, {j}) are not two distinct axes of a {d}-dimensional tiling"
        )));
    }
    let others = other_axes(d, i, j);
    if anchor.len() != others.len() {
        return Err(Error::Precondition(format!(
            "anchor has {} values, expected {}",
            anchor.len(),
            others.len()
        )));
    }
    for (&k, a) in others.iter().zip(anchor) {
        if !(t.region.lo[k] < *a && *a < t.region.hi[k]) {
            return Err(Error::Precondition(format!(
                "anchor x{k} = {a} misses the region"
            )));
        }
        if t.tiles
            .iter()
            .any(|tile| tile.cuboid.lo[k] == *a || tile.cuboid.hi[k] == *a)
        {
            return Err(Error::Precondition(format!(
                "anchor x{k} = {a} is a vertex coordinate"
            )));
        }
    }
    let face = |c: &crate::tiling::Cuboid| {
        Rect::new(
            c.lo[i].clone(),
            c.hi[i].clone(),
            c.lo[j].clone(),
            c.hi[j].clone(),
        )
    };
    let mut tiles = Vec::new();
    let mut origin = Vec::new();
    for (idx, tile) in t.tiles.iter().enumerate() {
        let c = &tile.cuboid;
        if others
            .iter()
            .zip(anchor)
            .all(|(&k, a)| c.lo[k] < *a && *a < c.hi[k])
        {
            tiles.push(RectTile::new(face(c)));
            origin.push(idx);
        }
    }
    Ok((RectTiling::new(face(&t.region), tiles), origin))
}

/// The rectangles cut out of a box tiling by the plane through `anchor`
/// (values for the axes other than `i` and `j`, in increasing axis order),
/// with `x` along axis `i` and `y` along axis `j`.
pub fn cuboid_cross_section(
    t: &CuboidTiling,
    i: usize,
    j: usize,
    anchor: &[Rat],
) -> Result<RectTiling> {
    t.validate().into_result()?;
    let (rect, _) = section(t, i, j, anchor)?;
    rect.validate().into_result().map_err(|e| {
        Error::TheoremViolation(format!("cross-section does not tile the face: {e}"))
    })?;
    Ok(rect)
}

/// One anchor per cell between consecutive vertex coordinates on each of
/// the axes other than `i` and `j`, at the cell midpoints, in lexicographic
/// order and truncated to `MAX_SECTIONS`.
pub fn section_anchors(t: &CuboidTiling, i: usize, j: usize) -> Vec<Vec<Rat>> {
    let two = Rat::from_int(2);
    let mids: Vec<Vec<Rat>> = other_axes(t.dim(), i, j)
        .into_iter()
        .map(|k| {
            t.axis_values(k)
                .windows(2)
                .map(|w| (&w[0] + &w[1]) / &two)
                .collect()
        })
        .collect();
    let mut out = vec![Vec::new()];
    for axis in &mids {
        let mut next = Vec::new();
        'fill: for prefix in &out {
            for m in axis {
                if next.len() == MAX_SECTIONS {
                    break 'fill;
                }
                let mut p = prefix.clone();
                p.push(m.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Translates the region's low corner to the origin and scales its side on
/// `axis` to 1.
fn normalize_on(t: &CuboidTiling, axis: usize) -> Result<CuboidTiling> {
    let offset: Vec<Rat> = t.region.lo.iter().map(|x| -x).collect();
    let f = t.region.side(axis).recip();
    let moved = t.scale_translate(&Rat::one(), &offset)?;
    moved.scale_translate(&f, &vec![Rat::zero(); t.dim()])
}

fn pair_coords(t: &CuboidTiling, i: usize, j: usize) -> Vec<Rat> {
    let vi = t.axis_values(i);
    let vj = t.axis_values(j);
    inner_values(vi.iter().chain(&vj))
}

fn region_sides(t: &CuboidTiling) -> Result<Vec<BigInt>> {
    t.region
        .sides()
        .into_iter()
        .map(|s| {
            s.to_integer().ok_or_else(|| {
                Error::TheoremViolation(format!("scaled region has non-integer side {s}"))
            })
        })
        .collect()
}

/// Hypercube tiling scaled to integer cubes. The shortest region side is at
/// most `4^(2(n−1)/d + 1)` and the longest at most `n` times that.
pub fn integerize_hypercube_tiling(t: &CuboidTiling) -> Result<ScalingCertificate> {
    t.validate().into_result()?;
    if let Some(k) = t.tiles.iter().position(|tile| !tile.cuboid.is_cube()) {
        return Err(Error::Precondition(format!("tile {k} is not a hypercube")));
    }
    let d = t.dim() as u64;
    let n = t.tiles.len() as u64;
    let pair = cuboid_best_axis_pair(t)?;
    let (i, j) = (pair.i, pair.j);
    let norm = normalize_on(t, i)?;
    let s = pair_coords(&norm, i, j);
    // |S| ≤ 2(n−1)/d + 1
    if d * s.len() as u64 > 2 * (n - 1) + d {
        return Err(Error::TheoremViolation(format!(
            "{} inner coordinates on axes ({i}, {j}) for {n} cubes in dimension {d}",
            s.len()
        )));
    }
    let approx = dirichlet(&s, 4)?;
    let q = approx.q.clone();
    let bound = Bound::power(BigInt::one(), 4, 2 * (n - 1) + d, d);
    bound.ensure(&q, "scale")?;

    let scaled = norm.scale_translate(&Rat::from_int(q.clone()), &vec![Rat::zero(); d as usize])?;
    for (k, tile) in scaled.tiles.iter().enumerate() {
        if !tile.cuboid.side(i).is_integer() {
            return Err(Error::TheoremViolation(format!(
                "scaled cube {k} has non-integer side {}",
                tile.cuboid.side(i)
            )));
        }
    }
    let tiling = Tiling::Cuboid(scaled);
    let sides = integer_sides(&tiling)?;
    let Tiling::Cuboid(scaled) = tiling else {
        unreachable!()
    };

    let dims = region_sides(&scaled)?;
    let shortest = dims.iter().min().expect("d >= 2");
    let longest = dims.iter().max().expect("d >= 2");
    bound.ensure(shortest, "shortest region side")?;
    let long_bound = Bound::power(BigInt::from(n), 4, 2 * (n - 1) + d, d);
    long_bound.ensure(longest, "longest region side")?;

    for anchor in section_anchors(&scaled, i, j) {
        let (rect, origin) = section(&scaled, i, j, &anchor)?;
        let snapped = almost_integer_snap(&rect)
            .map_err(|e| Error::TheoremViolation(format!("cross-section at {anchor:?}: {e}")))?;
        for (side, &k) in snapped.iter().zip(&origin) {
            if sides[k][i] != *side {
                return Err(Error::TheoremViolation(format!(
                    "cross-section at {anchor:?} gives side {side} for cube {k}"
                )));
            }
        }
    }

    Ok(ScalingCertificate {
        input_scale: Rat::from_int(q.clone()) / t.region.side(i),
        q,
        bound,
        sides,
        rotation: None,
        axes: Some([i, j]),
        approx,
        tiling: Tiling::Cuboid(scaled),
    })
}

/// Box tiling whose tiles carry shape vectors, scaled so every tile becomes
/// an integer multiple of its shape, with `q ≤ 8^n ∏ max(q_{k,i}, q_{k,j})`.
pub fn integerize_hypercuboid_tiling(t: &CuboidTiling) -> Result<ScalingCertificate> {
    if let Some(k) = t.tiles.iter().position(|tile| tile.shape.is_none()) {
        return Err(Error::Precondition(format!("tile {k} has no shape vector")));
    }
    t.validate().into_result()?;
    let d = t.dim();
    let n = t.tiles.len() as u64;
    let shapes: Vec<&Vec<u64>> = t
        .tiles
        .iter()
        .map(|tile| tile.shape.as_ref().expect("checked above"))
        .collect();

    let region = t.region.sides();
    let i = (0..d)
        .max_by(|&a, &b| region[a].cmp(&region[b]).then(b.cmp(&a)))
        .expect("d >= 2");
    let factor = |j: usize| -> BigInt {
        shapes
            .iter()
            .map(|s| BigInt::from(s[i].max(s[j])))
            .product()
    };
    let (j, product) = (0..d)
        .filter(|&j| j != i)
        .map(|j| (j, factor(j)))
        .min_by(|(ja, fa), (jb, fb)| fa.cmp(fb).then(ja.cmp(jb)))
        .expect("d >= 2");

    let norm = normalize_on(t, i)?;
    let mut groups = vec![ApproxGroup::new(pair_coords(&norm, i, j), 4)];
    for (tile, shape) in norm.tiles.iter().zip(&shapes) {
        let c = tile.cuboid.side(i) / Rat::from_int(shape[i]);
        groups.push(ApproxGroup::new(vec![c], 2 * shape[i].max(shape[j])));
    }
    let approx = dirichlet_varied(&groups)?;
    let q = approx.q.clone();
    let bound = Bound::power(product, 8, n, 1);
    bound.ensure(&q, "scale")?;

    let scaled = norm.scale_translate(&Rat::from_int(q.clone()), &vec![Rat::zero(); d])?;
    for (k, (tile, shape)) in scaled.tiles.iter().zip(&shapes).enumerate() {
        let s = tile.cuboid.side(i) / Rat::from_int(shape[i]);
        let multiple =
            s.is_integer() && (0..d).all(|a| tile.cuboid.side(a) == &s * &Rat::from_int(shape[a]));
        if !multiple {
            return Err(Error::TheoremViolation(format!(
                "scaled tile {k} with sides {:?} is not an integer multiple of {shape:?}",
                tile.cuboid.sides()
            )));
        }
    }
    let tiling = Tiling::Cuboid(scaled);
    let sides = integer_sides(&tiling)?;
    Ok(ScalingCertificate {
        input_scale: Rat::from_int(q.clone()) / t.region.side(i),
        q,
        bound,
        sides,
        rotation: None,
        axes: Some([i, j]),
        approx,
        tiling,
    })
}
