use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::interval::{parse_rational, Rational};

/// Name of a cell, unique within its complex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellId(String);

impl CellId {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if name.is_empty() || name.starts_with(['+', '-', '#']) || name.contains(char::is_whitespace) {
            return Err(Error::Parse(format!("invalid cell id {name:?}")));
        }
        Ok(CellId(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The id of a product cell.
    pub fn pair(a: &CellId, b: &CellId) -> CellId {
        CellId(format!("{}*{}", a.0, b.0))
    }
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Orientation of a face in a boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    fn of_parity(n: usize) -> Sign {
        if n.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub id: CellId,
    pub dim: usize,
    pub value: Rational,
    pub boundary: Vec<(Sign, CellId)>,
}

/// How the filtration value of a product cell is formed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProductMode {
    /// Sum of the factor values; realizes the graded tensor product.
    Additive,
    /// Maximum of the factor values; realizes the sheaf tensor product.
    Max,
}

impl FromStr for ProductMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "additive" => Ok(ProductMode::Additive),
            "max" => Ok(ProductMode::Max),
            _ => Err(Error::Parse(format!("unknown product mode {s:?}"))),
        }
    }
}

/// A cell complex with a filtration value per cell. Ids are unique and
/// every face named in a boundary exists and has dimension one less; the
/// monotonicity of values is checked when building the chain complex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FilteredComplex {
    cells: Vec<Cell>,
}

impl FilteredComplex {
    pub fn new(cells: Vec<Cell>) -> Result<Self> {
        let mut dims = HashMap::new();
        for c in &cells {
            if dims.insert(c.id.clone(), c.dim).is_some() {
                return Err(Error::InvalidComplex(format!("duplicate cell id {}", c.id)));
            }
        }
        for c in &cells {
            if c.dim == 0 && !c.boundary.is_empty() {
                return Err(Error::InvalidComplex(format!("vertex {} has a boundary", c.id)));
            }
            for (_, face) in &c.boundary {
                match dims.get(face) {
                    None => return Err(Error::InvalidComplex(format!("{} names unknown face {face}", c.id))),
                    Some(&d) if d + 1 != c.dim => {
                        return Err(Error::InvalidComplex(format!(
                            "face {face} of {} has dimension {d}, expected {}",
                            c.id,
                            c.dim - 1
                        )))
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(FilteredComplex { cells })
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.cells.iter().map(|c| c.dim).max()
    }

    /// Product cell complex; the boundary follows the graded Leibniz rule
    /// `∂(σ×τ) = ∂σ×τ + (−1)^{dim σ} σ×∂τ`.
    pub fn product(&self, other: &FilteredComplex, mode: ProductMode) -> FilteredComplex {
        let mut cells = Vec::with_capacity(self.len() * other.len());
        for s in &self.cells {
            for t in &other.cells {
                let value = match mode {
                    ProductMode::Additive => s.value + t.value,
                    ProductMode::Max => s.value.max(t.value),
                };
                let mut boundary: Vec<(Sign, CellId)> =
                    s.boundary.iter().map(|(sign, f)| (*sign, CellId::pair(f, &t.id))).collect();
                let twist = Sign::of_parity(s.dim);
                boundary.extend(
                    t.boundary
                        .iter()
                        .map(|(sign, f)| (twist.times(*sign), CellId::pair(&s.id, f))),
                );
                cells.push(Cell {
                    id: CellId::pair(&s.id, &t.id),
                    dim: s.dim + t.dim,
                    value,
                    boundary,
                });
            }
        }
        FilteredComplex::new(cells).expect("products of valid complexes are valid")
    }
}

impl FromStr for FilteredComplex {
    type Err = Error;

    /// Line format: `cell <id> dim <d> val <rational> bdry <±id ...>`, with
    /// `#` starting a comment.
    fn from_str(text: &str) -> Result<Self> {
        let mut cells = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |m: &str| Error::Parse(format!("line {}: {m}", k + 1));
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let (["cell", id, "dim", dim, "val", val, "bdry", faces @ ..]
            | ["cell", id, "dim", dim, "val", val, faces @ ..]) = tokens.as_slice()
            else {
                return Err(bad("expected `cell <id> dim <d> val <v> bdry <faces>`"));
            };
            if tokens.len() > 6 && tokens[6] != "bdry" {
                return Err(bad("expected `bdry` after the value"));
            }
            let dim: usize = dim.parse().map_err(|_| bad("dimension must be a natural number"))?;
            let value = parse_rational(val).map_err(|e| bad(&e.to_string()))?;
            let boundary = faces
                .iter()
                .map(|f| {
                    let (sign, name) = match f.as_bytes().first() {
                        Some(b'+') => (Sign::Plus, &f[1..]),
                        Some(b'-') => (Sign::Minus, &f[1..]),
                        _ => (Sign::Plus, *f),
                    };
                    Ok((sign, CellId::new(name).map_err(|e| bad(&e.to_string()))?))
                })
                .collect::<Result<Vec<_>>>()?;
            cells.push(Cell {
                id: CellId::new(*id).map_err(|e| bad(&e.to_string()))?,
                dim,
                value,
                boundary,
            });
        }
        FilteredComplex::new(cells)
    }
}

impl fmt::Display for FilteredComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cells {
            write!(f, "cell {} dim {} val {}", c.id, c.dim, c.value)?;
            if !c.boundary.is_empty() {
                f.write_str(" bdry")?;
            }
            for (sign, face) in &c.boundary {
                let s = if *sign == Sign::Plus { '+' } else { '-' };
                write!(f, " {s}{face}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
