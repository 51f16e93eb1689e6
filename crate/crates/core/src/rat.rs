//! Exact rational scalars and their text format.
//!
//! Rationals are printed as `p/q` (or `p` when the denominator is one) with
//! no whitespace, and parsed back from the same format.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn format(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(p, q))
        }
        None => {
            if let Ok(p) = s.parse::<BigInt>() {
                return Ok(Rat::from_integer(p));
            }
            // decimal literal such as "0.25" or "1e-3"
            let x: f64 = s.parse().map_err(|_| bad())?;
            Rat::from_float(x).ok_or_else(bad)
        }
    }
}

/// Parses a comma separated list of rationals, e.g. `"1/2,3"`.
pub fn parse_list(s: &str) -> Result<Vec<Rat>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse).collect()
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator/denominator too large for a direct conversion
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Rounds a positive float to a rational with six significant decimal digits.
pub fn snap_positive(x: f64) -> Rat {
    assert!(x > 0.0 && x.is_finite(), "snap_positive needs a positive finite input");
    let e = x.log10().floor() as i32;
    let k = 5 - e;
    if k >= 0 {
        let scale = BigInt::from(10u32).pow(k as u32);
        let p = (x * 10f64.powi(k)).round() as i64;
        Rat::new(BigInt::from(p.max(1)), scale)
    } else {
        let scale = 10f64.powi(-k);
        let p = (x / scale).round() as i64;
        Rat::from_integer(BigInt::from(p) * BigInt::from(10u32).pow((-k) as u32))
    }
}

pub fn is_positive(r: &Rat) -> bool {
    r.is_positive()
}

pub fn pow(r: &Rat, e: i64) -> Rat {
    if e >= 0 {
        num_traits::pow(r.clone(), e as usize)
    } else {
        num_traits::pow(r.recip(), (-e) as usize)
    }
}
