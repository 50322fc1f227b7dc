//! Exact rational arithmetic used for every coordinate, side length and scale.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Rat {
        let denom = denom.into();
        assert!(!denom.is_zero(), "zero denominator");
        Rat(BigRational::new(numer.into(), denom))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Rat {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    pub fn half() -> Rat {
        Rat::new(1, 2)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Rat {
        Rat(self.0.recip())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// The integer value, if this rational is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }

    /// `x - floor(x)`, in `[0, 1)`.
    pub fn fract(&self) -> Rat {
        self - &Rat::from_int(self.floor())
    }

    pub fn has_half_fraction(&self) -> bool {
        self.fract() == Rat::half()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rat {
    fn from(r: BigRational) -> Self {
        Rat(r)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Self {
        Rat::from_int(n)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl std::iter::Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl<'a> std::iter::Sum<&'a Rat> for Rat {
    fn sum<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = Error;

    /// Accepts `"num"` or `"num/den"` with a non-zero denominator.
    fn from_str(s: &str) -> Result<Rat> {
        let bad = |why: &str| Error::Parse(format!("invalid rational {s:?}: {why}"));
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let numer: BigInt = n.trim().parse().map_err(|_| bad("bad numerator"))?;
        let denom: BigInt = match d {
            Some(d) => d.trim().parse().map_err(|_| bad("bad denominator"))?,
            None => BigInt::one(),
        };
        if denom.is_zero() {
            return Err(bad("zero denominator"));
        }
        Ok(Rat::new(numer, denom))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        use serde::de::{self, Visitor};

        struct RatVisitor;

        impl<'de> Visitor<'de> for RatVisitor {
            type Value = Rat;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational as a \"num/den\" string or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rat, E> {
                v.parse().map_err(|e: Error| match e {
                    Error::Parse(msg) => E::custom(msg),
                    other => E::custom(other),
                })
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rat, E> {
                Ok(Rat::from_int(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rat, E> {
                Ok(Rat::from_int(v))
            }
        }

        d.deserialize_any(RatVisitor)
    }
}

/// `‖x‖`: distance from `x` to the closest integer, in `[0, 1/2]`.
pub fn nearest_int_distance(x: &Rat) -> Rat {
    let f = x.fract();
    let g = Rat::one() - &f;
    if f <= g {
        f
    } else {
        g
    }
}

/// `⌊x + 1/2⌋`; ties round up.
pub fn round_nearest(x: &Rat) -> BigInt {
    (x + &Rat::half()).floor()
}

/// Smallest positive `λ` with `λ·s ∈ ℤ` for every `s`: the lcm of the
/// denominators over the gcd of the numerators.
pub fn rational_group_generator(values: &[Rat]) -> Result<Rat> {
    if values.is_empty() {
        return Err(Error::Precondition(
            "rational_group_generator needs at least one value".into(),
        ));
    }
    if let Some(v) = values.iter().find(|v| !v.is_positive()) {
        return Err(Error::Precondition(format!(
            "rational_group_generator needs positive values, got {v}"
        )));
    }
    let mut den_lcm = BigInt::one();
    let mut num_gcd = BigInt::zero();
    for v in values {
        den_lcm = den_lcm.lcm(v.denom());
        num_gcd = num_gcd.gcd(v.numer());
    }
    Ok(Rat::new(den_lcm, num_gcd))
}

/// Least common multiple of the denominators of `values` (1 when empty).
/// Serializes a big integer as a decimal string, for use with
/// `#[serde(serialize_with = "...")]`.
pub fn serialize_bigint<S: Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(n)
}

pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn pow(base: u64, exp: u64) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

pub fn big_pow(base: &BigInt, exp: u64) -> BigInt {
    num_traits::pow(base.clone(), exp as usize)
}

/// Compares `x` against `base^(num/den)` exactly, without roots:
/// `x ≤ base^(num/den)` iff `x^den ≤ base^num` for `x ≥ 0`.
pub fn le_fractional_power(x: &BigInt, base: u64, num: u64, den: u64) -> bool {
    if x.is_negative() {
        return true;
    }
    big_pow(x, den).cmp(&pow(base, num)) != Ordering::Greater
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn nearest_int_distance_examples() {
        assert_eq!(nearest_int_distance(&r(7, 4)), r(1, 4));
        assert_eq!(nearest_int_distance(&r(-2, 5)), r(2, 5));
        assert_eq!(nearest_int_distance(&Rat::from_int(3)), Rat::zero());
        assert_eq!(nearest_int_distance(&r(-1, 2)), r(1, 2));
    }

    #[test]
    fn round_nearest_examples() {
        assert_eq!(round_nearest(&r(1, 2)), BigInt::from(1));
        assert_eq!(round_nearest(&r(-1, 2)), BigInt::from(0));
        assert_eq!(round_nearest(&r(3, 4)), BigInt::from(1));
        assert_eq!(round_nearest(&r(-3, 4)), BigInt::from(-1));
    }

    #[test]
    fn group_generator_examples() {
        let g = |v: &[Rat]| rational_group_generator(v).unwrap();
        assert_eq!(g(&[Rat::from_int(1), Rat::from_int(2)]), Rat::one());
        assert_eq!(g(&[r(1, 3), r(1, 3), r(2, 3)]), Rat::from_int(3));
        assert_eq!(g(&[r(3, 4), r(1, 2), r(1, 4)]), Rat::from_int(4));
        assert_eq!(g(&[r(2, 3), r(4, 3)]), r(3, 2));
    }

    #[test]
    fn group_generator_rejects_bad_input() {
        assert!(rational_group_generator(&[]).is_err());
        assert!(rational_group_generator(&[Rat::zero()]).is_err());
        assert!(rational_group_generator(&[r(-1, 2)]).is_err());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("6/8".parse::<Rat>().unwrap(), r(3, 4));
        assert_eq!("-5".parse::<Rat>().unwrap(), Rat::from_int(-5));
        assert_eq!(r(3, 4).to_string(), "3/4");
        assert_eq!(r(-8, 4).to_string(), "-2");
        assert_eq!(r(1, -3).to_string(), "-1/3");
        assert!("3/0".parse::<Rat>().is_err());
        assert!("x/2".parse::<Rat>().is_err());
        assert!("".parse::<Rat>().is_err());
    }

    #[test]
    fn fractional_power_comparison() {
        // 8 = 2^3 <= 4^(6/3) = 16
        assert!(le_fractional_power(&BigInt::from(16), 4, 6, 3));
        assert!(!le_fractional_power(&BigInt::from(17), 4, 6, 3));
    }
}
