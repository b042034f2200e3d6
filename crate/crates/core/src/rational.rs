//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient field for every form, vector and matrix in the crate.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Formats as `p` or `p/q`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p`, `-p`, `p/q` or `-p/q`.
pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    let err = || Error::Syntax {
        pos: 0,
        msg: format!("not a rational number: `{s}`"),
    };
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(Error::Syntax {
            pos: 0,
            msg: "zero denominator".into(),
        });
    }
    Ok(Q::new(num, den))
}

/// Magnitude and sign split used by the printers.
pub(crate) fn sign_abs(x: &Q) -> (bool, Q) {
    (x.is_negative(), x.abs())
}

pub(crate) fn is_one(x: &Q) -> bool {
    x.is_one()
}
