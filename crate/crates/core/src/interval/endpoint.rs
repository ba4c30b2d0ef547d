use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;

use num_traits::Zero;

use crate::error::{Error, Result};

/// Exact rational scalar used for every endpoint and filtration value.
pub type Rational = num_rational::Rational64;

/// An extended-real endpoint. The derived order puts `NegInf` below every
/// finite value and `PosInf` above.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Endpoint {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Endpoint {
    pub fn int(v: i64) -> Self {
        Endpoint::Finite(Rational::from_integer(v))
    }

    pub fn zero() -> Self {
        Endpoint::Finite(Rational::zero())
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Endpoint::Finite(_))
    }

    pub fn finite(self) -> Option<Rational> {
        match self {
            Endpoint::Finite(q) => Some(q),
            _ => None,
        }
    }

    pub fn checked_add(self, other: Endpoint) -> Result<Endpoint> {
        use Endpoint::*;
        match (self, other) {
            (Finite(x), Finite(y)) => Ok(Finite(x + y)),
            (PosInf, NegInf) | (NegInf, PosInf) => Err(Error::IndeterminateSum),
            (PosInf, _) | (_, PosInf) => Ok(PosInf),
            (NegInf, _) | (_, NegInf) => Ok(NegInf),
        }
    }

    pub fn checked_sub(self, other: Endpoint) -> Result<Endpoint> {
        self.checked_add(-other)
    }

    pub fn shift(self, s: Rational) -> Endpoint {
        match self {
            Endpoint::Finite(x) => Endpoint::Finite(x + s),
            inf => inf,
        }
    }

    pub fn min(self, other: Endpoint) -> Endpoint {
        std::cmp::min(self, other)
    }

    pub fn max(self, other: Endpoint) -> Endpoint {
        std::cmp::max(self, other)
    }

    /// Compares against a plain rational.
    pub fn cmp_value(self, v: Rational) -> Ordering {
        self.cmp(&Endpoint::Finite(v))
    }
}

impl Neg for Endpoint {
    type Output = Endpoint;

    fn neg(self) -> Endpoint {
        match self {
            Endpoint::NegInf => Endpoint::PosInf,
            Endpoint::PosInf => Endpoint::NegInf,
            Endpoint::Finite(q) => Endpoint::Finite(-q),
        }
    }
}

impl From<i64> for Endpoint {
    fn from(v: i64) -> Self {
        Endpoint::int(v)
    }
}

impl From<Rational> for Endpoint {
    fn from(q: Rational) -> Self {
        Endpoint::Finite(q)
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::NegInf => f.write_str("-inf"),
            Endpoint::PosInf => f.write_str("inf"),
            Endpoint::Finite(q) => write!(f, "{q}"),
        }
    }
}

/// Parses `p/q` or an integer, with optional sign. The denominator must be positive.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let int = |t: &str| -> Result<i64> {
        let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse::<i64>().map_err(|_| bad())
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(int(s)?)),
        Some((p, q)) => {
            if q.starts_with(['-', '+']) {
                return Err(bad());
            }
            let q = int(q)?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational::new(int(p)?, q))
        }
    }
}

impl std::str::FromStr for Endpoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "-inf" => Ok(Endpoint::NegInf),
            "inf" | "+inf" => Ok(Endpoint::PosInf),
            t => parse_rational(t).map(Endpoint::Finite),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_places_infinities_outside() {
        assert!(Endpoint::NegInf < Endpoint::int(-1000));
        assert!(Endpoint::int(1000) < Endpoint::PosInf);
        assert!(Endpoint::Finite(Rational::new(1, 3)) < Endpoint::Finite(Rational::new(1, 2)));
    }

    #[test]
    fn arithmetic_with_infinities() {
        let three = Endpoint::int(3);
        assert_eq!(Endpoint::PosInf.checked_add(three), Ok(Endpoint::PosInf));
        assert_eq!(three.checked_add(Endpoint::NegInf), Ok(Endpoint::NegInf));
        assert_eq!(
            Endpoint::PosInf.checked_add(Endpoint::NegInf),
            Err(Error::IndeterminateSum)
        );
        assert_eq!(Endpoint::PosInf.checked_sub(Endpoint::PosInf), Err(Error::IndeterminateSum));
        assert_eq!(-Endpoint::NegInf, Endpoint::PosInf);
    }

    #[test]
    fn rational_grammar() {
        assert_eq!(parse_rational("-3/6").unwrap(), Rational::new(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), Rational::from_integer(7));
        for bad in ["", "1/0", "1/-2", "a", "1.5", "--1", "1/"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
        assert_eq!(Endpoint::Finite(Rational::new(-1, 2)).to_string(), "-1/2");
        assert_eq!("-inf".parse::<Endpoint>().unwrap(), Endpoint::NegInf);
    }
}
