//! Barcodes, graded barcodes, and the Künneth and universal-coefficient
//! pipelines on them.

mod pipeline;

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Map, Value};

pub use pipeline::{
    bc_apply, bc_equals, kunneth_homology, uct_cohomology, uct_homology, Bifunctor, Mode,
};

use crate::error::{Error, Result};
use crate::interval::{Interval, MaybeInterval, Rational};

/// A multiset of intervals kept in canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Barcode {
    bars: Vec<Interval>,
}

impl Barcode {
    pub fn new(mut bars: Vec<Interval>) -> Self {
        bars.sort();
        Barcode { bars }
    }

    pub fn empty() -> Self {
        Barcode::default()
    }

    pub fn bars(&self) -> &[Interval] {
        &self.bars
    }

    pub fn len(&self) -> usize {
        self.bars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Interval> {
        self.bars.iter()
    }

    /// Multiset union.
    pub fn union(&self, other: &Barcode) -> Barcode {
        let mut bars = self.bars.clone();
        bars.extend_from_slice(&other.bars);
        Barcode::new(bars)
    }

    pub fn translate(&self, s: Rational) -> Barcode {
        self.bars.iter().map(|b| crate::interval::translate(b, s)).collect()
    }

    /// Restriction to the integer points of `[lo, hi]`, with every bar
    /// rewritten as the half-open integer range it covers.
    pub fn restrict_to_grid(&self, lo: i64, hi: i64) -> Barcode {
        self.bars
            .iter()
            .filter_map(|b| b.integer_span(lo, hi))
            .map(|(s, t)| Interval::half_open(s, t + 1).expect("span is nonempty"))
            .collect()
    }

    pub fn parse_list<S: AsRef<str>>(items: &[S]) -> Result<Barcode> {
        items.iter().map(|s| s.as_ref().parse::<Interval>()).collect()
    }
}

impl FromIterator<Interval> for Barcode {
    fn from_iter<T: IntoIterator<Item = Interval>>(iter: T) -> Self {
        Barcode::new(iter.into_iter().collect())
    }
}

impl FromIterator<MaybeInterval> for Barcode {
    fn from_iter<T: IntoIterator<Item = MaybeInterval>>(iter: T) -> Self {
        iter.into_iter().filter_map(MaybeInterval::interval).collect()
    }
}

impl<'a> IntoIterator for &'a Barcode {
    type Item = &'a Interval;
    type IntoIter = std::slice::Iter<'a, Interval>;

    fn into_iter(self) -> Self::IntoIter {
        self.bars.iter()
    }
}

impl fmt::Display for Barcode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, b) in self.bars.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str("}")
    }
}

/// Barcodes indexed by homological degree; absent degrees are empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedBarcode {
    by_degree: BTreeMap<usize, Barcode>,
}

impl GradedBarcode {
    pub fn new() -> Self {
        GradedBarcode::default()
    }

    pub fn get(&self, degree: usize) -> Barcode {
        self.by_degree.get(&degree).cloned().unwrap_or_default()
    }

    /// Adds bars to a degree, keeping the map free of empty entries.
    pub fn extend(&mut self, degree: usize, bars: &Barcode) {
        if bars.is_empty() {
            return;
        }
        let slot = self.by_degree.entry(degree).or_default();
        *slot = slot.union(bars);
    }

    pub fn with(mut self, degree: usize, bars: Barcode) -> Self {
        self.extend(degree, &bars);
        self
    }

    pub fn degrees(&self) -> impl Iterator<Item = (usize, &Barcode)> {
        self.by_degree.iter().map(|(d, b)| (*d, b))
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.by_degree.keys().next_back().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.by_degree.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let mut degrees = Map::new();
        for (d, bars) in &self.by_degree {
            let items: Vec<Value> = bars.iter().map(|b| Value::String(b.to_string())).collect();
            degrees.insert(d.to_string(), Value::Array(items));
        }
        json!({ "degrees": degrees })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("graded barcode: {m}"));
        let degrees = v
            .get("degrees")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("missing \"degrees\" object"))?;
        let mut out = GradedBarcode::new();
        for (key, items) in degrees {
            let degree: usize = key.parse().map_err(|_| bad("degree keys must be naturals"))?;
            let items = items.as_array().ok_or_else(|| bad("degree entries must be arrays"))?;
            let strs = items
                .iter()
                .map(|s| s.as_str().ok_or_else(|| bad("bars must be strings")))
                .collect::<Result<Vec<_>>>()?;
            out.extend(degree, &Barcode::parse_list(&strs)?);
        }
        Ok(out)
    }
}

impl fmt::Display for GradedBarcode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (d, bars)) in self.by_degree.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "H{d} = {bars}")?;
        }
        Ok(())
    }
}
