//! Exact rational scalars and vectors.
//!
//! All fan and polytope combinatorics run on arbitrary-precision rationals;
//! floating point only enters in the analytic layers built on top.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;
pub type RatVec = Vec<Rat>;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parse "p/q" or "p" into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    let bad = |detail: &str| Error::InvalidInput(format!("bad rational {s:?}: {detail}"));
    let (num_str, den_str) = match t.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (t, None),
    };
    let numer: BigInt = num_str.trim().parse().map_err(|_| bad("numerator"))?;
    let denom: BigInt = match den_str {
        Some(d) => d.trim().parse().map_err(|_| bad("denominator"))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rat::new(numer, denom))
}

pub fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().expect("rational out of f64 range")
}

/// Exact rational from a float. Every finite f64 is a rational, so this is
/// lossless; NaN and infinities are rejected.
pub fn rat_from_f64(x: f64) -> Result<Rat> {
    Rat::from_float(x).ok_or_else(|| Error::InvalidInput(format!("non-finite value {x}")))
}

pub fn ratvec_from_ints(v: &[i64]) -> RatVec {
    v.iter().map(|&c| rat_int(c)).collect()
}

pub fn ratvec_to_f64(v: &[Rat]) -> Vec<f64> {
    v.iter().map(rat_to_f64).collect()
}

pub fn ratvec_from_f64(v: &[f64]) -> Result<RatVec> {
    v.iter().map(|&x| rat_from_f64(x)).collect()
}

pub fn rat_dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

/// Dot product of an integer vector with a rational vector.
pub fn int_rat_dot(a: &[i64], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if *x != 0 {
            acc += y * rat_int(*x);
        }
    }
    acc
}

pub fn is_integral(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Least common multiple of the denominators of a set of rationals.
pub fn denominator_lcm<'a>(values: impl Iterator<Item = &'a Rat>) -> BigInt {
    let mut acc = BigInt::one();
    for v in values {
        acc = num_integer::lcm(acc, v.denom().abs());
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_lowest_terms() {
        let r = parse_rat("6/4").unwrap();
        assert_eq!(r, rat(3, 2));
        assert_eq!(rat_to_string(&r), "3/2");
        assert_eq!(parse_rat("-1").unwrap(), rat_int(-1));
        assert_eq!(parse_rat("2/-4").unwrap(), rat(-1, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn float_round_trip_is_exact() {
        for &x in &[0.5, -0.1, 1.0 / 3.0, 123456.789] {
            let r = rat_from_f64(x).unwrap();
            assert_eq!(rat_to_f64(&r), x);
        }
        assert!(rat_from_f64(f64::NAN).is_err());
    }

    #[test]
    fn denominator_lcm_of_mixed_values() {
        let vals = [rat(1, 2), rat(-1, 3), rat_int(4)];
        assert_eq!(denominator_lcm(vals.iter()), BigInt::from(6));
    }
}
