//! Exact rationals for threshold parameters, plus the simplest-fraction
//! search used when reporting candidate exact values.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseError;

/// An arbitrary-precision rational, stored in lowest terms with a positive
/// denominator. In threshold computations these are almost always of the
/// form a/p^e.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PRational(BigRational);

impl PRational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        let d: BigInt = denom.into();
        assert!(!d.is_zero(), "zero denominator");
        PRational(BigRational::new(numer.into(), d))
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        PRational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        PRational(BigRational::zero())
    }

    pub fn one() -> Self {
        PRational(BigRational::one())
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

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// ⌊self * k⌋ as a big integer.
    pub fn floor_times(&self, k: u64) -> BigInt {
        let scaled = &self.0 * BigRational::from_integer(BigInt::from(k));
        scaled.floor().to_integer()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn min(self, other: PRational) -> PRational {
        if self <= other {
            self
        } else {
            other
        }
    }
}

impl PartialOrd for PRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PRational {
    /// Exact comparison; `BigRational` cross-multiplies reduced forms.
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

macro_rules! prational_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &PRational {
            type Output = PRational;
            fn $method(self, rhs: &PRational) -> PRational {
                PRational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for PRational {
            type Output = PRational;
            fn $method(self, rhs: PRational) -> PRational {
                (&self).$method(&rhs)
            }
        }
    };
}

prational_binop!(Add, add);
prational_binop!(Sub, sub);
prational_binop!(Mul, mul);

impl Div for &PRational {
    type Output = PRational;
    fn div(self, rhs: &PRational) -> PRational {
        assert!(!rhs.is_zero(), "division by zero rational");
        PRational(&self.0 / &rhs.0)
    }
}

impl fmt::Display for PRational {
    /// `a/b`, or plain `a` for integers. Never a float.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for PRational {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parse_int = |text: &str, at: usize| -> Result<BigInt, ParseError> {
            text.parse::<BigInt>()
                .map_err(|_| ParseError::new(at, format!("expected an integer, found {:?}", text)))
        };
        match s.split_once('/') {
            None => Ok(PRational::integer(parse_int(s, 0)?)),
            Some((n, d)) => {
                let numer = parse_int(n, 0)?;
                let denom = parse_int(d, n.len() + 1)?;
                if denom.is_zero() {
                    return Err(ParseError::new(n.len() + 1, "zero denominator"));
                }
                Ok(PRational::new(numer, denom))
            }
        }
    }
}

/// The fraction with the smallest denominator in the closed interval
/// `[lo, hi]` (smallest numerator on ties), by Stern-Brocot / continued
/// fraction descent. Both endpoints must be non-negative.
pub fn simplest_in(lo: &PRational, hi: &PRational) -> PRational {
    assert!(lo <= hi, "empty interval");
    assert!(!lo.is_negative(), "negative interval endpoint");
    simplest_rec(&lo.0, &hi.0)
}

fn simplest_rec(lo: &BigRational, hi: &BigRational) -> PRational {
    let lo_ceil = lo.ceil().to_integer();
    if BigRational::from_integer(lo_ceil.clone()) <= *hi {
        return PRational::integer(lo_ceil);
    }
    // Both endpoints share the integer part; recurse on reciprocals of the
    // fractional parts (which swaps the interval).
    let n = lo.floor().to_integer();
    let n_rat = BigRational::from_integer(n.clone());
    let inner = simplest_rec(
        &(BigRational::one() / (hi - &n_rat)),
        &(BigRational::one() / (lo - &n_rat)),
    );
    let inv = BigRational::one() / inner.0;
    PRational(n_rat + inv)
}
