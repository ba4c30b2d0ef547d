//! Intervals of the real line with exact rational endpoints, and the closed-form
//! algebra of their interval modules.

mod endpoint;
mod ops;
mod rect;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

pub use endpoint::{parse_rational, Endpoint, Rational};
pub use ops::{
    classify, gr_ext1, gr_tensor, gr_tor1, hom_dim, matlis_dual, sh_ext1, sh_tensor, sheaf_dual,
    sheaf_hom, translate, underline_hom, IntervalClass,
};
pub use rect::{rect_gr_tensor, rect_underline_hom, MaybeRectangle, Rectangle};

use crate::error::{Error, Result};

/// A nonempty interval. Infinite ends are always open.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Endpoint,
    lo_closed: bool,
    hi: Endpoint,
    hi_closed: bool,
}

/// The shapes on which the graded bifunctors have closed forms: a closed
/// (or unbounded) left end and an open (or unbounded) right end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Shape {
    /// `[a,b)`
    Bar,
    /// `[a,∞)`
    UpRay,
    /// `(−∞,b)`
    DownRay,
    /// `(−∞,∞)`
    Line,
}

impl Interval {
    pub fn new(lo: Endpoint, lo_closed: bool, hi: Endpoint, hi_closed: bool) -> Result<Self> {
        match MaybeInterval::from_bounds(lo, lo_closed, hi, hi_closed)? {
            MaybeInterval::Interval(i) => Ok(i),
            MaybeInterval::Zero => Err(Error::EmptyInterval(format_bounds(
                lo, lo_closed, hi, hi_closed,
            ))),
        }
    }

    /// `[lo, hi)`, where an infinite end is taken open.
    pub fn half_open(lo: impl Into<Endpoint>, hi: impl Into<Endpoint>) -> Result<Self> {
        let lo = lo.into();
        Interval::new(lo, lo.is_finite(), hi.into(), false)
    }

    pub fn up_ray(lo: impl Into<Endpoint>) -> Result<Self> {
        Interval::half_open(lo, Endpoint::PosInf)
    }

    pub fn down_ray(hi: impl Into<Endpoint>) -> Result<Self> {
        Interval::half_open(Endpoint::NegInf, hi)
    }

    pub fn line() -> Self {
        Interval {
            lo: Endpoint::NegInf,
            lo_closed: false,
            hi: Endpoint::PosInf,
            hi_closed: false,
        }
    }

    pub fn lo(&self) -> Endpoint {
        self.lo
    }

    pub fn hi(&self) -> Endpoint {
        self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    /// Shape among the four half-open kinds, if any.
    pub fn shape(&self) -> Option<Shape> {
        let left = match self.lo {
            Endpoint::NegInf => false,
            _ if self.lo_closed => true,
            _ => return None,
        };
        let right = match self.hi {
            Endpoint::PosInf => false,
            _ if !self.hi_closed => true,
            _ => return None,
        };
        Some(match (left, right) {
            (true, true) => Shape::Bar,
            (true, false) => Shape::UpRay,
            (false, true) => Shape::DownRay,
            (false, false) => Shape::Line,
        })
    }

    pub fn contains(&self, x: Rational) -> bool {
        let x = Endpoint::Finite(x);
        let above = match self.lo.cmp(&x) {
            Ordering::Less => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Greater => false,
        };
        let below = match x.cmp(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => self.hi_closed,
            Ordering::Greater => false,
        };
        above && below
    }

    /// Integer points of the interval within `[lo, hi]`, as an inclusive range.
    pub fn integer_span(&self, lo: i64, hi: i64) -> Option<(i64, i64)> {
        let first = match self.lo {
            Endpoint::NegInf => lo,
            Endpoint::Finite(q) => {
                let c = q.ceil().to_integer();
                let c = if self.lo_closed || Rational::from_integer(c) != q { c } else { c + 1 };
                c.max(lo)
            }
            Endpoint::PosInf => unreachable!("lower endpoint is never +inf"),
        };
        let last = match self.hi {
            Endpoint::PosInf => hi,
            Endpoint::Finite(q) => {
                let f = q.floor().to_integer();
                let f = if self.hi_closed || Rational::from_integer(f) != q { f } else { f - 1 };
                f.min(hi)
            }
            Endpoint::NegInf => unreachable!("upper endpoint is never -inf"),
        };
        (first <= last).then_some((first, last))
    }

    /// Sort key realizing the canonical bar order.
    fn key(&self) -> (Endpoint, Endpoint, bool, bool) {
        (self.lo, self.hi, !self.lo_closed, !self.hi_closed)
    }
}

impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An interval module or the zero module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MaybeInterval {
    Zero,
    Interval(Interval),
}

impl MaybeInterval {
    /// Builds from raw bounds, collapsing empty sets to `Zero`.
    pub fn from_bounds(lo: Endpoint, lo_closed: bool, hi: Endpoint, hi_closed: bool) -> Result<Self> {
        if (!lo.is_finite() && lo_closed) || (!hi.is_finite() && hi_closed) {
            return Err(Error::ClosedInfinity(format_bounds(lo, lo_closed, hi, hi_closed)));
        }
        if lo == Endpoint::PosInf || hi == Endpoint::NegInf {
            return Ok(MaybeInterval::Zero);
        }
        let nonempty = match lo.cmp(&hi) {
            Ordering::Less => true,
            Ordering::Equal => lo_closed && hi_closed,
            Ordering::Greater => false,
        };
        Ok(if nonempty {
            MaybeInterval::Interval(Interval {
                lo,
                lo_closed,
                hi,
                hi_closed,
            })
        } else {
            MaybeInterval::Zero
        })
    }

    /// `[lo, hi)` with infinite ends open; `Zero` when empty.
    pub fn half_open(lo: Endpoint, hi: Endpoint) -> Self {
        MaybeInterval::from_bounds(lo, lo.is_finite(), hi, false)
            .expect("half-open bounds never close an infinite end")
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, MaybeInterval::Zero)
    }

    pub fn interval(self) -> Option<Interval> {
        match self {
            MaybeInterval::Interval(i) => Some(i),
            MaybeInterval::Zero => None,
        }
    }
}

impl From<Interval> for MaybeInterval {
    fn from(i: Interval) -> Self {
        MaybeInterval::Interval(i)
    }
}

fn format_bounds(lo: Endpoint, lo_closed: bool, hi: Endpoint, hi_closed: bool) -> String {
    format!(
        "{}{},{}{}",
        if lo_closed { '[' } else { '(' },
        lo,
        hi,
        if hi_closed { ']' } else { ')' }
    )
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_bounds(self.lo, self.lo_closed, self.hi, self.hi_closed))
    }
}

impl fmt::Display for MaybeInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaybeInterval::Zero => f.write_str("0"),
            MaybeInterval::Interval(i) => i.fmt(f),
        }
    }
}

impl FromStr for Interval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.parse::<MaybeInterval>()? {
            MaybeInterval::Interval(i) => Ok(i),
            MaybeInterval::Zero => Err(Error::Parse(format!("expected a nonzero interval, got {s:?}"))),
        }
    }
}

impl FromStr for MaybeInterval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "0" {
            return Ok(MaybeInterval::Zero);
        }
        let bad = || Error::Parse(format!("invalid interval {s:?}"));
        let lo_closed = match t.chars().next() {
            Some('[') => true,
            Some('(') => false,
            _ => return Err(bad()),
        };
        let hi_closed = match t.chars().last() {
            Some(']') => true,
            Some(')') => false,
            _ => return Err(bad()),
        };
        let body = t.get(1..t.len() - 1).ok_or_else(bad)?;
        let (lo, hi) = body.split_once(',').ok_or_else(bad)?;
        let (lo, hi): (Endpoint, Endpoint) = (lo.parse()?, hi.parse()?);
        match MaybeInterval::from_bounds(lo, lo_closed, hi, hi_closed)? {
            MaybeInterval::Zero => Err(Error::EmptyInterval(t.to_string())),
            nonzero => Ok(nonzero),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(s: &str) -> Interval {
        s.parse().unwrap()
    }

    #[test]
    fn grammar_round_trip() {
        for s in ["[0,1)", "(-1/2,3]", "[2,2]", "(-inf,3)", "(-inf,inf)", "[5/3,inf)", "(0,1)"] {
            assert_eq!(iv(s).to_string(), s);
        }
        assert_eq!("0".parse::<MaybeInterval>().unwrap(), MaybeInterval::Zero);
    }

    #[test]
    fn grammar_rejects_malformed_and_empty() {
        for s in ["[0,0)", "[1,0]", "[-inf,0)", "(0,inf]", "0,1", "[0;1)", "[0,1", "[]"] {
            assert!(s.parse::<Interval>().is_err(), "{s}");
        }
    }

    #[test]
    fn shapes() {
        assert_eq!(iv("[0,1)").shape(), Some(Shape::Bar));
        assert_eq!(iv("[0,inf)").shape(), Some(Shape::UpRay));
        assert_eq!(iv("(-inf,0)").shape(), Some(Shape::DownRay));
        assert_eq!(Interval::line().shape(), Some(Shape::Line));
        assert_eq!(iv("(0,1)").shape(), None);
        assert_eq!(iv("(-inf,0]").shape(), None);
    }

    #[test]
    fn integer_span_respects_closedness() {
        assert_eq!(iv("[0,3)").integer_span(-10, 10), Some((0, 2)));
        assert_eq!(iv("(0,3]").integer_span(-10, 10), Some((1, 3)));
        assert_eq!(iv("(1/2,5/2)").integer_span(-10, 10), Some((1, 2)));
        assert_eq!(iv("(0,1)").integer_span(-10, 10), None);
        assert_eq!(iv("(-inf,2)").integer_span(-4, 4), Some((-4, 1)));
    }

    #[test]
    fn canonical_order_closed_first() {
        let mut v = [iv("(0,1)"), iv("[0,1)"), iv("(-inf,0)"), iv("[0,inf)"), iv("[0,1]")];
        v.sort();
        let s: Vec<String> = v.iter().map(|i| i.to_string()).collect();
        assert_eq!(s, ["(-inf,0)", "[0,1]", "[0,1)", "(0,1)", "[0,inf)"]);
    }
}
