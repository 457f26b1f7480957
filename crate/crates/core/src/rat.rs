//! Exact scalar arithmetic: arbitrary-precision integers and rationals.
//!
//! `Rat` values are always reduced with a positive denominator; this is
//! guaranteed by the underlying [`num_rational::BigRational`] representation.
//! Literals parse from `"p/q"` or `"p"` (optional leading `-`) and print the
//! same way, with the `/q` part omitted when the denominator is 1.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

/// `n` as an [`Int`].
pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// `n/d` as a reduced [`Rat`]. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// `n` as a [`Rat`] with denominator 1.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Parses `"p/q"` or `"p"`, rejecting zero denominators and anything else.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    if let Some((_, den)) = t.split_once('/') {
        let d = Int::from_str(den.trim()).map_err(|e| Error::Parse(format!("{t:?}: {e}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("{t:?}: zero denominator")));
        }
    }
    Rat::from_str(t).map_err(|e| Error::Parse(format!("{t:?}: {e}")))
}

/// Greatest integer `<= r`.
pub fn rat_floor(r: &Rat) -> Int {
    r.floor().to_integer()
}

/// Least integer `>= r`.
pub fn rat_ceil(r: &Rat) -> Int {
    r.ceil().to_integer()
}

/// `base^exp` for a possibly negative exponent. `base` must be nonzero when
/// `exp < 0`.
pub fn rat_pow(base: &Rat, exp: &Int) -> Result<Rat> {
    let e = i64::try_from(exp)
        .map_err(|_| Error::InvalidInput(format!("exponent {exp} out of range")))?;
    let mag = e.unsigned_abs() as u32;
    let p = Rat::new_raw(base.numer().pow(mag), base.denom().pow(mag));
    if e >= 0 {
        Ok(p)
    } else if p.is_zero() {
        Err(Error::InvalidInput("negative power of zero".into()))
    } else {
        Ok(p.recip())
    }
}

/// `(-1)^d` as an `i64`.
pub fn sign_pow(d: usize) -> i64 {
    if d % 2 == 0 {
        1
    } else {
        -1
    }
}

/// True when `r` has denominator 1.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}
