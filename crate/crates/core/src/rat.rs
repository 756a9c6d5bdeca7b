//! Exact rationals and the textual forms used across the crate.
//!
//! Rationals are written `p/q` or `p`; a leading sign is allowed on the
//! numerator only.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `2^-k` for any signed `k`.
pub fn pow2_neg(k: i32) -> Rat {
    let two = BigInt::from(2);
    if k >= 0 {
        Rat::new(BigInt::one(), num_traits::pow(two, k as usize))
    } else {
        Rat::from_integer(num_traits::pow(two, k.unsigned_abs() as usize))
    }
}

/// Least `k` with `2^-k ≤ bound`.
pub fn least_dyadic_exponent(bound: &Rat) -> i32 {
    assert!(bound.is_positive(), "dyadic bound must be positive");
    let mut k = 0i32;
    while &pow2_neg(k) > bound {
        k += 1;
    }
    while &pow2_neg(k - 1) <= bound {
        k -= 1;
    }
    k
}

pub fn ceil_to_u64(x: &Rat) -> Option<u64> {
    let c = x.ceil().to_integer();
    u64::try_from(c).ok()
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let valid_int = |t: &str, signed: bool| {
        let digits = if signed {
            t.strip_prefix(['-', '+']).unwrap_or(t)
        } else {
            t
        };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid_int(num, true) {
        return Err(bad());
    }
    let n = BigInt::from_str(num.trim_start_matches('+')).map_err(|_| bad())?;
    let d = match den {
        Some(d) if valid_int(d, false) => BigInt::from_str(d).map_err(|_| bad())?,
        Some(_) => return Err(bad()),
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rat::new(n, d))
}

/// Decimal rendering truncated toward zero after `digits` fractional digits.
pub fn to_decimal(x: &Rat, digits: usize) -> String {
    let neg = x.is_negative();
    let a = x.abs();
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (a.numer() * &scale).div_floor(a.denom());
    let (int_part, frac_part) = scaled.div_rem(&scale);
    let truncated_is_zero = scaled.is_zero();
    let mut out = String::new();
    if neg && !truncated_is_zero {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if digits > 0 {
        out.push('.');
        out.push_str(&format!(
            "{:0>width$}",
            frac_part.to_string(),
            width = digits
        ));
    }
    out
}
