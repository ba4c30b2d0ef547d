use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use super::chain::{product_complex, FreeChainComplex};
use super::filtration::ProductMode;
use super::persistence::persistence;
use crate::barcode::{kunneth_homology, uct_cohomology, uct_homology, GradedBarcode, Mode};
use crate::error::{Error, Result};
use crate::interval::{self, Interval, MaybeInterval};
use crate::oracle::{decompose, grid_homology, tensor_complex, Fp, IntervalComplex, Matrix, Window};

/// Both sides of the Künneth comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KunnethReport {
    pub mode: Mode,
    /// Persistence of the product complex.
    pub product: GradedBarcode,
    /// Künneth prediction from the factor barcodes.
    pub predicted: GradedBarcode,
    /// Per-degree agreement, over every degree present on either side.
    pub degrees: Vec<(usize, bool)>,
}

impl KunnethReport {
    pub fn verdict(&self) -> bool {
        self.degrees.iter().all(|(_, ok)| *ok)
    }

    pub fn to_json(&self) -> Value {
        let degrees: serde_json::Map<String, Value> = self
            .degrees
            .iter()
            .map(|(d, ok)| (d.to_string(), Value::Bool(*ok)))
            .collect();
        json!({
            "mode": mode_name(self.mode),
            "product": self.product.to_json(),
            "predicted": self.predicted.to_json(),
            "degrees": degrees,
            "verdict": self.verdict(),
        })
    }
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Graded => "graded",
        Mode::Sheaf => "sheaf",
    }
}

fn compare(a: &GradedBarcode, b: &GradedBarcode) -> Vec<(usize, bool)> {
    let mut degrees: Vec<usize> = a.degrees().chain(b.degrees()).map(|(d, _)| d).collect();
    degrees.sort_unstable();
    degrees.dedup();
    degrees.into_iter().map(|d| (d, a.get(d) == b.get(d))).collect()
}

/// Persistence of the product complex against the Künneth prediction; the
/// graded mode uses additive filtrations and the sheaf mode maximum ones.
pub fn verify_kunneth(k: &FreeChainComplex, l: &FreeChainComplex, mode: Mode) -> Result<KunnethReport> {
    let product_mode = match mode {
        Mode::Graded => ProductMode::Additive,
        Mode::Sheaf => ProductMode::Max,
    };
    let product = persistence(&product_complex(k, l, product_mode)?);
    let predicted = kunneth_homology(&persistence(k), &persistence(l), mode)?;
    let degrees = compare(&product, &predicted);
    Ok(KunnethReport {
        mode,
        product,
        predicted,
        degrees,
    })
}

/// Whether the coefficient module enters through a tensor product or a hom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variance {
    Tensor,
    Hom,
}

impl FromStr for Variance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tensor" => Ok(Variance::Tensor),
            "hom" => Ok(Variance::Hom),
            _ => Err(Error::Parse(format!("unknown variance {s:?}"))),
        }
    }
}

impl fmt::Display for Variance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variance::Tensor => "tensor",
            Variance::Hom => "hom",
        })
    }
}

/// The two computations of homology (or cohomology) with coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientChange {
    /// Universal-coefficient prediction from the barcode of the complex.
    pub formula: GradedBarcode,
    /// Homology of the transformed complex, computed on the grid.
    pub direct: GradedBarcode,
}

impl CoefficientChange {
    pub fn agree(&self) -> bool {
        self.formula == self.direct
    }

    pub fn to_json(&self) -> Value {
        json!({
            "formula": self.formula.to_json(),
            "direct": self.direct.to_json(),
            "agree": self.agree(),
        })
    }
}

/// Barcodes of an interval complex, read off grid homology on its cell grid.
pub fn grid_barcodes(c: &IntervalComplex, field: Fp) -> Result<GradedBarcode> {
    let (grid, complex) = c.realize(field)?;
    let mut out = GradedBarcode::new();
    for (n, h) in grid_homology(&complex).iter().enumerate() {
        out.extend(n, &grid.barcode(h));
    }
    Ok(out)
}

/// Persistence computed on the grid instead of by column reduction.
pub fn grid_persistence(k: &FreeChainComplex) -> Result<GradedBarcode> {
    grid_barcodes(&k.as_interval_complex(), k.field())
}

/// Homology of the product, computed as the tensor product of the two chain
/// complexes realized on the integer points of `[lo, hi]` and never forming
/// the product filtration. Births must be integers, and `hi` must exceed
/// every product birth for the result to match the product complex
/// restricted to the window.
pub fn grid_product_homology(k: &FreeChainComplex, l: &FreeChainComplex, mode: Mode, lo: i64, hi: i64) -> Result<GradedBarcode> {
    let w = Window::line(lo, hi);
    let gk = k.as_interval_complex().realize_on(w, k.field())?;
    let gl = l.as_interval_complex().realize_on(w, l.field())?;
    let mut out = GradedBarcode::new();
    for (n, h) in grid_homology(&tensor_complex(&gk, &gl, mode)?).iter().enumerate() {
        out.extend(n, &decompose(h));
    }
    Ok(out)
}

/// (Co)homology of `k` with coefficients in `k[a]`, by the universal
/// coefficient formulas and directly from the termwise-transformed complex.
pub fn coefficient_change(k: &FreeChainComplex, a: &Interval, variance: Variance, mode: Mode) -> Result<CoefficientChange> {
    let h = persistence(k);
    let formula = match variance {
        Variance::Tensor => uct_homology(&h, a, mode)?,
        Variance::Hom => uct_cohomology(&h, a, mode)?,
    };
    let ray = |t| Interval::up_ray(t).expect("finite birth");
    let transform = |t| -> Result<MaybeInterval> {
        match (variance, mode) {
            (Variance::Tensor, Mode::Graded) => interval::gr_tensor(&ray(t), a),
            (Variance::Tensor, Mode::Sheaf) => Ok(interval::sh_tensor(&ray(t), a)),
            (Variance::Hom, Mode::Graded) => interval::underline_hom(&ray(t), a),
            (Variance::Hom, Mode::Sheaf) => interval::sheaf_hom(&ray(t), a),
        }
    };
    let mut generators = Vec::with_capacity(k.top_degree() + 1);
    for n in 0..=k.top_degree() {
        generators.push(k.generators(n).iter().map(|g| transform(g.birth)).collect::<Result<Vec<_>>>()?);
    }
    let direct = match variance {
        Variance::Tensor => grid_barcodes(
            &IntervalComplex {
                generators,
                boundaries: k.boundaries().to_vec(),
            },
            k.field(),
        )?,
        Variance::Hom => {
            // Cochains C^n with δ^n = ∂_{n+1}ᵀ, reindexed as the chain complex
            // D_m = C^{N−m} so that H^n = H_{N−n}(D).
            let top = k.top_degree();
            generators.reverse();
            let boundaries: Vec<Matrix> = (1..=top).map(|m| k.boundary(top - m + 1).transpose()).collect();
            let chains = grid_barcodes(&IntervalComplex { generators, boundaries }, k.field())?;
            let mut out = GradedBarcode::new();
            for (m, bars) in chains.degrees() {
                out.extend(top - m, bars);
            }
            out
        }
    };
    Ok(CoefficientChange { formula, direct })
}

#[cfg(test)]
mod tests {
    use super::super::chain::chain_complex;
    use super::super::filtration::FilteredComplex;
    use super::*;
    use crate::barcode::Barcode;
    use crate::oracle::Fp;

    fn bc(items: &[&str]) -> Barcode {
        Barcode::parse_list(items).unwrap()
    }

    fn edge(a: i64, b: i64, c: i64) -> FreeChainComplex {
        let text = format!("cell u dim 0 val {a}\ncell v dim 0 val {b}\ncell e dim 1 val {c} bdry +v -u");
        chain_complex(&text.parse::<FilteredComplex>().unwrap(), Fp::new(5).unwrap()).unwrap()
    }

    #[test]
    fn kunneth_of_two_edges() {
        let (k, l) = (edge(0, 1, 2), edge(0, 1, 3));
        let graded = verify_kunneth(&k, &l, Mode::Graded).unwrap();
        assert!(graded.verdict(), "{graded:?}");
        assert_eq!(graded.product.get(1), bc(&["[4,5)"]));
        let sheaf = verify_kunneth(&k, &l, Mode::Sheaf).unwrap();
        assert!(sheaf.verdict(), "{sheaf:?}");
        assert!(sheaf.product.get(1).is_empty());
    }

    #[test]
    fn grid_tensor_complex_matches_product() {
        let (k, l) = (edge(0, 1, 2), edge(0, 2, 3));
        for mode in [Mode::Graded, Mode::Sheaf] {
            let product_mode = match mode {
                Mode::Graded => ProductMode::Additive,
                Mode::Sheaf => ProductMode::Max,
            };
            let direct = persistence(&product_complex(&k, &l, product_mode).unwrap());
            let grid = grid_product_homology(&k, &l, mode, -1, 8).unwrap();
            for n in 0..=2 {
                assert_eq!(grid.get(n), direct.get(n).restrict_to_grid(-1, 8), "{mode:?} degree {n}");
            }
        }
    }

    #[test]
    fn grid_agrees_with_column_reduction() {
        let k = edge(0, 1, 2);
        assert_eq!(grid_persistence(&k).unwrap(), persistence(&k));
    }

    #[test]
    fn unit_coefficients() {
        let k = edge(0, 1, 2);
        let unit = coefficient_change(&k, &"[0,inf)".parse().unwrap(), Variance::Tensor, Mode::Graded).unwrap();
        assert!(unit.agree());
        assert_eq!(unit.direct, persistence(&k));
        let line = coefficient_change(&k, &Interval::line(), Variance::Tensor, Mode::Sheaf).unwrap();
        assert!(line.agree());
    }

    #[test]
    fn cohomology_of_an_edge() {
        let k = edge(0, 1, 2);
        let c = coefficient_change(&k, &"[10,inf)".parse().unwrap(), Variance::Hom, Mode::Graded).unwrap();
        assert!(c.agree(), "{c:?}");
        assert_eq!(c.formula.get(0), bc(&["[10,inf)"]));
        assert_eq!(c.formula.get(1), bc(&["[8,9)"]));
    }
}
