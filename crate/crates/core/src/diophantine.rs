//! Simultaneous Dirichlet approximation over exact rationals.
//!
//! For rationals `a_1, …, a_k` and `N ≥ 2` some `1 ≤ q ≤ N^k` has
//! `‖q·a_i‖ < 1/N` for every `i`; with several groups, each with its own
//! tolerance `1/m`, the bound becomes `∏ m^{|S|}`. The search scans
//! `q = 1, 2, …` and returns the first success, so the result is the minimal
//! such `q`. Since `q = lcm(denominators)` always succeeds, the scan stops at
//! the smaller of that and the pigeonhole bound.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{denominator_lcm, nearest_int_distance, pow, serialize_bigint, Rat};

/// Values that must all land within `1/m` of an integer after scaling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxGroup {
    pub values: Vec<Rat>,
    pub m: u64,
}

impl ApproxGroup {
    pub fn new(values: Vec<Rat>, m: u64) -> ApproxGroup {
        ApproxGroup { values, m }
    }

    fn distinct_values(&self) -> Vec<Rat> {
        self.values
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Witness {
    pub value: Rat,
    pub m: u64,
    /// `‖q·value‖`, strictly below `1/m`.
    pub distance: Rat,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ApproxResult {
    #[serde(serialize_with = "serialize_bigint")]
    pub q: BigInt,
    /// `∏ m^{|S|}` over the groups.
    #[serde(serialize_with = "serialize_bigint")]
    pub bound: BigInt,
    pub witnesses: Vec<Witness>,
}

fn check_m(m: u64) -> Result<()> {
    if m < 2 {
        return Err(Error::Precondition(format!(
            "tolerance denominator must be at least 2, got {m}"
        )));
    }
    Ok(())
}

/// Smallest `q ≥ 1` with `‖q·a‖ < 1/n` for every `a` in `values`.
pub fn dirichlet(values: &[Rat], n: u64) -> Result<ApproxResult> {
    dirichlet_varied(&[ApproxGroup::new(values.to_vec(), n)])
}

/// Smallest `q ≥ 1` meeting every group's strict tolerance.
pub fn dirichlet_varied(groups: &[ApproxGroup]) -> Result<ApproxResult> {
    let mut bound = BigInt::one();
    let mut targets: Vec<(Rat, u64)> = Vec::new();
    for g in groups {
        check_m(g.m)?;
        let vals = g.distinct_values();
        bound *= pow(g.m, vals.len() as u64);
        targets.extend(vals.into_iter().map(|v| (v, g.m)));
    }
    let lcm = denominator_lcm(targets.iter().map(|(v, _)| v));
    let limit = if lcm < bound { lcm } else { bound.clone() };

    let q = scan(&targets, &limit).ok_or_else(|| {
        Error::TheoremViolation(format!(
            "no q <= {limit} satisfies the approximation (pigeonhole bound {bound})"
        ))
    })?;
    let qr = Rat::from_int(q.clone());
    let witnesses = targets
        .into_iter()
        .map(|(value, m)| Witness {
            distance: nearest_int_distance(&(&qr * &value)),
            value,
            m,
        })
        .collect();
    Ok(ApproxResult {
        q,
        bound,
        witnesses,
    })
}

/// `m·‖q·r/d‖ < 1` with `q·r mod d` tracked incrementally.
fn scan(targets: &[(Rat, u64)], limit: &BigInt) -> Option<BigInt> {
    if let Some(q) = scan_small(targets, limit) {
        return q;
    }
    // residues (numerator mod d, d, m)
    let terms: Vec<(BigInt, BigInt, BigInt)> = targets
        .iter()
        .map(|(v, m)| {
            (
                v.numer().mod_floor(v.denom()),
                v.denom().clone(),
                BigInt::from(*m),
            )
        })
        .collect();
    let mut residues: Vec<BigInt> = vec![BigInt::zero(); terms.len()];
    let mut q = BigInt::zero();
    while &q < limit {
        q += 1u32;
        let mut ok = true;
        for ((r, d, m), acc) in terms.iter().zip(residues.iter_mut()) {
            *acc += r;
            if &*acc >= d {
                *acc -= d;
            }
            let dist = std::cmp::min(acc.clone(), d - &*acc);
            if m * dist >= *d {
                ok = false;
            }
        }
        if ok {
            return Some(q);
        }
    }
    None
}

/// Machine-word version of [`scan`]; `None` when the inputs do not fit.
fn scan_small(targets: &[(Rat, u64)], limit: &BigInt) -> Option<Option<BigInt>> {
    let limit = limit.to_u64()?;
    let mut terms: Vec<(u128, u128, u128)> = Vec::with_capacity(targets.len());
    for (v, m) in targets {
        let d = v.denom().to_u64()? as u128;
        let r = v.numer().mod_floor(v.denom()).to_u64()? as u128;
        terms.push((r, d, *m as u128));
    }
    let mut residues = vec![0u128; terms.len()];
    for q in 1..=limit {
        let mut ok = true;
        for (&(r, d, m), acc) in terms.iter().zip(residues.iter_mut()) {
            *acc += r;
            if *acc >= d {
                *acc -= d;
            }
            let dist = (*acc).min(d - *acc);
            ok &= m * dist < d;
        }
        if ok {
            return Some(Some(BigInt::from(q)));
        }
    }
    Some(None)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Verification {
    pub ok: bool,
    pub witnesses: Vec<Witness>,
}

/// Checks `‖q·a‖ < 1/n` for each value exactly.
pub fn verify_approx(values: &[Rat], n: u64, q: &BigInt) -> Result<Verification> {
    if *q < BigInt::one() {
        return Err(Error::Precondition(format!("q must be positive, got {q}")));
    }
    let qr = Rat::from_int(q.clone());
    let tol = Rat::new(1, n as i64);
    let witnesses: Vec<Witness> = values
        .iter()
        .map(|v| Witness {
            value: v.clone(),
            m: n,
            distance: nearest_int_distance(&(&qr * v)),
        })
        .collect();
    Ok(Verification {
        ok: witnesses.iter().all(|w| w.distance < tol),
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    /// Independent oracle: the first q in 1..=limit passing `verify_approx`.
    fn brute(values: &[Rat], n: u64, limit: i64) -> Option<i64> {
        (1..=limit).find(|&q| verify_approx(values, n, &big(q)).unwrap().ok)
    }

    #[test]
    fn plain_examples() {
        let res = dirichlet(&[], 4).unwrap();
        assert_eq!(res.q, big(1));
        assert_eq!(res.bound, big(1));

        let res = dirichlet(&[r(1, 3)], 4).unwrap();
        assert_eq!(brute(&[r(1, 3)], 4, 4), Some(3));
        assert_eq!(res.q, big(3));
        assert_eq!(res.bound, big(4));

        let vals = [r(2, 5), r(1, 5)];
        assert_eq!(brute(&vals, 4, 16), Some(5));
        let res = dirichlet(&vals, 4).unwrap();
        assert_eq!(res.q, big(5));
        assert_eq!(res.bound, big(16));
    }

    #[test]
    fn varied_examples() {
        let one = dirichlet_varied(&[ApproxGroup::new(vec![r(1, 3)], 4)]).unwrap();
        assert_eq!(one.q, big(3));

        let two = dirichlet_varied(&[
            ApproxGroup::new(vec![r(1, 3)], 4),
            ApproxGroup::new(vec![r(1, 5)], 10),
        ])
        .unwrap();
        assert_eq!(two.q, big(15));
        assert_eq!(two.bound, big(40));

        let half = dirichlet_varied(&[ApproxGroup::new(vec![r(1, 2)], 4)]).unwrap();
        assert_eq!(half.q, big(2));
        assert_eq!(half.bound, big(4));
    }

    #[test]
    fn verify_examples() {
        assert!(verify_approx(&[r(1, 3)], 4, &big(3)).unwrap().ok);
        let v = verify_approx(&[r(1, 3)], 4, &big(2)).unwrap();
        assert!(!v.ok);
        assert_eq!(v.witnesses[0].distance, r(1, 3));
        assert!(verify_approx(&[Rat::from_int(5)], 4, &big(1)).unwrap().ok);
        assert!(verify_approx(&[], 4, &big(0)).is_err());
    }

    #[test]
    fn strict_inequality_at_the_threshold() {
        // ‖1/4‖ = 1/4 is not < 1/4
        assert!(!verify_approx(&[r(1, 4)], 4, &big(1)).unwrap().ok);
        assert_eq!(dirichlet(&[r(1, 4)], 4).unwrap().q, big(4));
    }

    #[test]
    fn duplicates_do_not_inflate_the_bound() {
        let res = dirichlet(&[r(1, 3), r(1, 3)], 4).unwrap();
        assert_eq!(res.bound, big(4));
    }

    #[test]
    fn rejects_small_tolerance() {
        assert!(dirichlet(&[r(1, 3)], 1).is_err());
        assert!(dirichlet_varied(&[ApproxGroup::new(vec![], 0)]).is_err());
    }

    #[test]
    fn big_denominators_use_the_wide_path() {
        let huge: BigInt = BigInt::from(u64::MAX) * 3 + 1;
        let v = Rat::new(BigInt::one(), huge.clone());
        let targets = vec![(v, 2)];
        // q = 1 already within 1/2
        assert_eq!(scan(&targets, &huge), Some(big(1)));
        let v = Rat::new(huge.clone() - 1, huge.clone());
        assert_eq!(scan(&[(v, 4)], &huge), Some(big(1)));
    }
}
