use std::fmt;

use super::{gr_tensor, underline_hom, Interval, MaybeInterval, Shape};
use crate::error::{Error, Result};

/// A product of half-open factors `[a,b)` or `[a,∞)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rectangle {
    factors: Vec<Interval>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MaybeRectangle {
    Zero,
    Rectangle(Rectangle),
}

impl Rectangle {
    pub fn new(factors: Vec<Interval>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::unsupported("rectangle", "no factors"));
        }
        if let Some(bad) = factors
            .iter()
            .find(|f| !matches!(f.shape(), Some(Shape::Bar | Shape::UpRay)))
        {
            return Err(Error::unsupported("rectangle", bad.to_string()));
        }
        Ok(Rectangle { factors })
    }

    pub fn factors(&self) -> &[Interval] {
        &self.factors
    }

    pub fn dim(&self) -> usize {
        self.factors.len()
    }
}

impl fmt::Display for Rectangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, factor) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str("x")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

fn factorwise(
    m: &Rectangle,
    n: &Rectangle,
    op: fn(&Interval, &Interval) -> Result<MaybeInterval>,
) -> Result<MaybeRectangle> {
    if m.dim() != n.dim() {
        return Err(Error::DimensionMismatch {
            left: m.dim(),
            right: n.dim(),
        });
    }
    let mut out = Vec::with_capacity(m.dim());
    for (x, y) in m.factors.iter().zip(&n.factors) {
        match op(x, y)? {
            MaybeInterval::Zero => return Ok(MaybeRectangle::Zero),
            MaybeInterval::Interval(i) => out.push(i),
        }
    }
    Ok(MaybeRectangle::Rectangle(Rectangle { factors: out }))
}

/// Graded tensor product of rectangle modules, one factor at a time.
pub fn rect_gr_tensor(m: &Rectangle, n: &Rectangle) -> Result<MaybeRectangle> {
    factorwise(m, n, gr_tensor)
}

/// Graded internal hom of rectangle modules, one factor at a time.
pub fn rect_underline_hom(m: &Rectangle, n: &Rectangle) -> Result<MaybeRectangle> {
    factorwise(m, n, underline_hom)
}
