//! Exact rational scalars and their text form.
//!
//! All polyhedral computations run over arbitrary-precision rationals; floats
//! appear only where Euclidean norms force irrational values. The two modes
//! never mix silently: a value is either `Exact` or `Approx` and operations
//! that cross the boundary say so in their signatures.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

pub type Rat = BigRational;

/// A scalar tagged with its arithmetic mode.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(Rat),
    Approx(f64),
}

impl Scalar {
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(q) => rat_to_f64(q),
            Scalar::Approx(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&Rat> {
        match self {
            Scalar::Exact(q) => Some(q),
            Scalar::Approx(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) => write!(f, "{}", rat_to_string(q)),
            Scalar::Approx(x) => write!(f, "{x}"),
        }
    }
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_to_f64(q: &Rat) -> f64 {
    let num = q.numer();
    let den = q.denom();
    // Good enough for the magnitudes seen here; exact paths never call this
    // for decision-making.
    let nf = num.to_string().parse::<f64>().unwrap_or(f64::NAN);
    let df = den.to_string().parse::<f64>().unwrap_or(f64::NAN);
    nf / df
}

/// Renders `p/q`, or just `p` when the denominator is one.
pub fn rat_to_string(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p/q` or a plain integer.
pub fn rat_from_str(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let num = BigInt::from_str(n.trim()).map_err(|e| format!("bad numerator {n:?}: {e}"))?;
        let den = BigInt::from_str(d.trim()).map_err(|e| format!("bad denominator {d:?}: {e}"))?;
        if den.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(Rat::new(num, den))
    } else {
        let num = BigInt::from_str(s).map_err(|e| format!("bad rational {s:?}: {e}"))?;
        Ok(Rat::from_integer(num))
    }
}

pub fn rat_abs(q: &Rat) -> Rat {
    q.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        assert_eq!(rat_from_str("3/4").unwrap(), ratio(3, 4));
        assert_eq!(rat_from_str("-7").unwrap(), rat(-7));
        assert_eq!(rat_from_str(" 2 / 6 ").unwrap(), ratio(1, 3));
        assert_eq!(rat_to_string(&ratio(3, 4)), "3/4");
        assert_eq!(rat_to_string(&rat(5)), "5");
        assert!(rat_from_str("1/0").is_err());
        assert!(rat_from_str("x").is_err());
    }

    #[test]
    fn f64_conversion() {
        assert_eq!(rat_to_f64(&ratio(1, 2)), 0.5);
        assert_eq!(Scalar::Exact(ratio(-3, 2)).to_f64(), -1.5);
    }
}
