use super::{Endpoint, Interval, MaybeInterval, Rational, Shape};
use crate::error::{Error, Result};

use Shape::{Bar, DownRay, Line, UpRay};

/// Homological type of an interval module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntervalClass {
    pub injective: bool,
    pub projective: bool,
    pub flat: bool,
}

fn shape_of(op: &'static str, i: &Interval, j: &Interval) -> Result<(Shape, Shape)> {
    match (i.shape(), j.shape()) {
        (Some(s), Some(t)) => Ok((s, t)),
        _ => Err(Error::unsupported(op, format!("({i}, {j})"))),
    }
}

fn add(x: Endpoint, y: Endpoint) -> Endpoint {
    x.checked_add(y).expect("callers only add endpoints of compatible sign")
}

fn sub(x: Endpoint, y: Endpoint) -> Endpoint {
    x.checked_sub(y).expect("callers only subtract endpoints of compatible sign")
}

/// Graded tensor product of interval modules.
pub fn gr_tensor(i: &Interval, j: &Interval) -> Result<MaybeInterval> {
    let (s, t) = shape_of("gr_tensor", i, j)?;
    if s > t {
        return gr_tensor(j, i);
    }
    let (a, b, c, d) = (i.lo(), i.hi(), j.lo(), j.hi());
    Ok(match (s, t) {
        (Bar, Bar) => MaybeInterval::half_open(add(a, c), add(a, d).min(add(b, c))),
        (Bar, UpRay) => MaybeInterval::half_open(add(a, c), add(b, c)),
        (UpRay, UpRay) => MaybeInterval::half_open(add(a, c), Endpoint::PosInf),
        (UpRay, DownRay) => MaybeInterval::half_open(Endpoint::NegInf, add(a, d)),
        (UpRay, Line) | (Line, Line) => Interval::line().into(),
        (Bar, DownRay) | (Bar, Line) | (DownRay, DownRay) | (DownRay, Line) => MaybeInterval::Zero,
        _ => unreachable!("arguments are ordered by shape"),
    })
}

/// Sheaf tensor product: the intersection.
pub fn sh_tensor(i: &Interval, j: &Interval) -> MaybeInterval {
    let (lo, lo_closed) = match i.lo().cmp(&j.lo()) {
        std::cmp::Ordering::Less => (j.lo(), j.lo_closed()),
        std::cmp::Ordering::Greater => (i.lo(), i.lo_closed()),
        std::cmp::Ordering::Equal => (i.lo(), i.lo_closed() && j.lo_closed()),
    };
    let (hi, hi_closed) = match i.hi().cmp(&j.hi()) {
        std::cmp::Ordering::Less => (i.hi(), i.hi_closed()),
        std::cmp::Ordering::Greater => (j.hi(), j.hi_closed()),
        std::cmp::Ordering::Equal => (i.hi(), i.hi_closed() && j.hi_closed()),
    };
    MaybeInterval::from_bounds(lo, lo_closed, hi, hi_closed)
        .expect("intersection keeps infinite ends open")
}

/// Whether a natural transformation k[i] → k[j] can be nonzero, for
/// half-open shapes: c ≤ a < d ≤ b.
fn hom_nonzero(i: &Interval, j: &Interval) -> bool {
    let (a, b, c, d) = (i.lo(), i.hi(), j.lo(), j.hi());
    c <= a && a < d && d <= b
}

/// Dimension of the space of natural transformations k[i] → k[j].
pub fn hom_dim(i: &Interval, j: &Interval) -> Result<usize> {
    shape_of("hom_dim", i, j)?;
    Ok(usize::from(hom_nonzero(i, j)))
}

/// Internal hom of the graded tensor product.
pub fn underline_hom(i: &Interval, j: &Interval) -> Result<MaybeInterval> {
    let (s, t) = shape_of("underline_hom", i, j)?;
    let (a, b, c, d) = (i.lo(), i.hi(), j.lo(), j.hi());
    let neg = Endpoint::NegInf;
    let pos = Endpoint::PosInf;
    // Grade r is in the support iff k[i] maps nontrivially into k[j − r].
    Ok(match (s, t) {
        (Bar, Bar) => MaybeInterval::half_open(sub(c, a).max(sub(d, b)), sub(d, a)),
        (Bar, DownRay) => MaybeInterval::half_open(sub(d, b), sub(d, a)),
        (UpRay, Bar) => MaybeInterval::half_open(sub(c, a), sub(d, a)),
        (UpRay, UpRay) => MaybeInterval::half_open(sub(c, a), pos),
        (UpRay, DownRay) => MaybeInterval::half_open(neg, sub(d, a)),
        (DownRay, DownRay) => MaybeInterval::half_open(sub(d, b), pos),
        (UpRay, Line) | (Line, DownRay) | (Line, Line) => Interval::line().into(),
        (Bar, UpRay) | (Bar, Line) | (DownRay, Bar) | (DownRay, UpRay) | (DownRay, Line)
        | (Line, Bar) | (Line, UpRay) => MaybeInterval::Zero,
    })
}

/// Internal hom of the sheaf tensor product: at x, the homs between the
/// restrictions to [x,∞).
pub fn sheaf_hom(i: &Interval, j: &Interval) -> Result<MaybeInterval> {
    shape_of("sheaf_hom", i, j)?;
    let (a, b, c, d) = (i.lo(), i.hi(), j.lo(), j.hi());
    if !(d <= b && a < d) {
        return Ok(MaybeInterval::Zero);
    }
    Ok(if c <= a {
        MaybeInterval::half_open(Endpoint::NegInf, d)
    } else {
        MaybeInterval::half_open(c, d)
    })
}

/// First derived functor of the graded tensor product.
pub fn gr_tor1(i: &Interval, j: &Interval) -> Result<MaybeInterval> {
    let (s, t) = shape_of("gr_tor1", i, j)?;
    match (s, t) {
        (UpRay | Line, _) | (_, UpRay | Line) => Ok(MaybeInterval::Zero),
        (Bar, Bar | DownRay) => {
            // Kernel of k[j + b] → k[j + a] from the resolution of k[i].
            let (a, b, c, d) = (i.lo(), i.hi(), j.lo(), j.hi());
            Ok(MaybeInterval::half_open(add(a, d).max(add(b, c)), add(b, d)))
        }
        (DownRay, Bar) => gr_tor1(j, i),
        (DownRay, DownRay) => Err(Error::unsupported("gr_tor1", format!("({i}, {j})"))),
    }
}

/// First derived functor of the graded internal hom.
pub fn gr_ext1(i: &Interval, j: &Interval) -> Result<MaybeInterval> {
    let (s, _) = shape_of("gr_ext1", i, j)?;
    let (a, b, c, d) = (i.lo(), i.hi(), j.lo(), j.hi());
    match s {
        UpRay => Ok(MaybeInterval::Zero),
        Bar if c == Endpoint::NegInf => Ok(MaybeInterval::Zero),
        // Cokernel of k[j − a] → k[j − b] from the resolution of k[i].
        Bar => Ok(MaybeInterval::half_open(sub(c, b), sub(c, a).min(sub(d, b)))),
        DownRay | Line => Err(Error::unsupported("gr_ext1", format!("({i}, {j})"))),
    }
}

/// First derived functor of the sheaf hom.
pub fn sh_ext1(i: &Interval, j: &Interval) -> Result<MaybeInterval> {
    let (s, _) = shape_of("sh_ext1", i, j)?;
    let (a, b, c, d) = (i.lo(), i.hi(), j.lo(), j.hi());
    match s {
        UpRay => Ok(MaybeInterval::Zero),
        Bar if a < c && c <= b && b < d => Ok(MaybeInterval::half_open(Endpoint::NegInf, c)),
        Bar => Ok(MaybeInterval::Zero),
        DownRay | Line => Err(Error::unsupported("sh_ext1", format!("({i}, {j})"))),
    }
}

/// Matlis dual: negation, with the closedness of the ends exchanged.
pub fn matlis_dual(i: &Interval) -> Interval {
    Interval::new(-i.hi(), i.hi_closed(), -i.lo(), i.lo_closed())
        .expect("negation preserves nonemptiness")
}

/// Sheaf dual: the sheaf hom into the line.
pub fn sheaf_dual(i: &Interval) -> Result<MaybeInterval> {
    sheaf_hom(i, &Interval::line()).map_err(|_| Error::unsupported("sheaf_dual", i.to_string()))
}

pub fn classify(i: &Interval) -> IntervalClass {
    let class = match (i.lo(), i.hi()) {
        (Endpoint::NegInf, Endpoint::PosInf) => IntervalClass {
            injective: true,
            projective: false,
            flat: true,
        },
        (Endpoint::NegInf, _) => IntervalClass {
            injective: true,
            projective: false,
            flat: false,
        },
        (_, Endpoint::PosInf) => IntervalClass {
            injective: false,
            projective: i.lo_closed(),
            flat: true,
        },
        _ => IntervalClass {
            injective: false,
            projective: false,
            flat: false,
        },
    };
    debug_assert!(!class.projective || class.flat);
    class
}

pub fn translate(i: &Interval, s: Rational) -> Interval {
    Interval::new(i.lo().shift(s), i.lo_closed(), i.hi().shift(s), i.hi_closed())
        .expect("translation preserves nonemptiness")
}
