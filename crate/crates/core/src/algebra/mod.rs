//! Exact scalars, sparse polynomials, linear forms and rational linear algebra.

pub mod linform;
pub mod matrix;
pub mod poly;

pub use linform::LinearForm;
pub use matrix::{kernel_basis, kernel_of_columns, RatMatrix, RowReducer};
pub use poly::{Mono, SparsePoly};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn q_zero() -> Q {
    Q::zero()
}

pub fn q_one() -> Q {
    Q::one()
}

/// Renders `p/q`, or `p` when the denominator is 1.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_canonical_form() {
        let x = qf(6, -4);
        assert_eq!(fmt_q(&x), "-3/2");
        assert_eq!(fmt_q(&qf(4, 2)), "2");
        assert_eq!(fmt_q(&q_zero()), "0");
        assert_eq!(parse_q("-3/2").unwrap(), x);
        assert_eq!(parse_q("10/5").unwrap(), q(2));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("abc").is_err());
    }
}
