use std::collections::HashMap;

use super::filtration::{CellId, FilteredComplex, ProductMode};
use crate::error::{Error, Result};
use crate::interval::{Interval, MaybeInterval, Rational};
use crate::oracle::{Fp, IntervalComplex, Matrix};

/// A free generator `k[birth, ∞)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub id: CellId,
    pub birth: Rational,
}

/// A chain complex of free persistence modules: sums of up-rays with
/// degree-zero boundary matrices over a prime field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeChainComplex {
    field: Fp,
    generators: Vec<Vec<Generator>>,
    /// `boundaries[n − 1]` maps degree `n` to degree `n − 1`: one column per
    /// degree `n` generator.
    boundaries: Vec<Matrix>,
}

impl FreeChainComplex {
    /// Checks shapes, the degree-zero condition (an entry may be nonzero only
    /// when the face is born no later than the cell) and `∂∂ = 0`.
    pub fn new(field: Fp, mut generators: Vec<Vec<Generator>>, boundaries: Vec<Matrix>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidComplex(m));
        if generators.is_empty() {
            generators.push(Vec::new());
        }
        if boundaries.len() + 1 != generators.len() {
            return bad("one boundary matrix per positive degree is required".into());
        }
        for (k, d) in boundaries.iter().enumerate() {
            let (lower, upper) = (&generators[k], &generators[k + 1]);
            if d.rows() != lower.len() || d.cols() != upper.len() {
                return bad(format!("boundary {} has the wrong shape", k + 1));
            }
            for (c, cell) in upper.iter().enumerate() {
                for (r, face) in lower.iter().enumerate() {
                    if d.get(r, c) != 0 && face.birth > cell.birth {
                        return Err(Error::NonMonotone {
                            cell: cell.id.to_string(),
                            cell_value: cell.birth.to_string(),
                            face: face.id.to_string(),
                            face_value: face.birth.to_string(),
                        });
                    }
                }
            }
        }
        for k in 1..boundaries.len() {
            if !boundaries[k - 1].mul(&boundaries[k], field).is_zero() {
                return bad(format!("boundary {k} composed with boundary {} is nonzero", k + 1));
            }
        }
        Ok(FreeChainComplex {
            field,
            generators,
            boundaries,
        })
    }

    pub fn empty(field: Fp) -> Self {
        FreeChainComplex {
            field,
            generators: vec![Vec::new()],
            boundaries: Vec::new(),
        }
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn top_degree(&self) -> usize {
        self.generators.len() - 1
    }

    pub fn generators(&self, degree: usize) -> &[Generator] {
        self.generators.get(degree).map_or(&[], Vec::as_slice)
    }

    /// `∂_degree`, for `1 ≤ degree ≤ top_degree`.
    pub fn boundary(&self, degree: usize) -> &Matrix {
        &self.boundaries[degree - 1]
    }

    pub fn boundaries(&self) -> &[Matrix] {
        &self.boundaries
    }

    pub fn len(&self) -> usize {
        self.generators.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The same complex with every generator `k[t,∞)` replaced by `f(t)`.
    pub fn map_generators(&self, mut f: impl FnMut(Rational) -> MaybeInterval) -> IntervalComplex {
        IntervalComplex {
            generators: self
                .generators
                .iter()
                .map(|gens| gens.iter().map(|g| f(g.birth)).collect())
                .collect(),
            boundaries: self.boundaries.clone(),
        }
    }

    /// The complex as interval modules, ready for the grid.
    pub fn as_interval_complex(&self) -> IntervalComplex {
        self.map_generators(|t| Interval::up_ray(t).expect("finite birth").into())
    }

    /// Tensor product complex; generator `(σ, τ)` is born at the sum or the
    /// maximum of the births and the boundary is
    /// `∂(σ⊗τ) = ∂σ⊗τ + (−1)^{|σ|} σ⊗∂τ`.
    pub fn product(&self, other: &FreeChainComplex, mode: ProductMode) -> Result<FreeChainComplex> {
        let f = self.field;
        if other.field != f {
            return Err(Error::InvalidComplex("factors over different fields".into()));
        }
        if self.is_empty() || other.is_empty() {
            return Ok(FreeChainComplex::empty(f));
        }
        let top = self.top_degree() + other.top_degree();
        // index[n] lists (p, i, j) for generator i of degree p and j of degree n − p.
        let mut index: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); top + 1];
        let mut generators: Vec<Vec<Generator>> = vec![Vec::new(); top + 1];
        for p in 0..=self.top_degree() {
            for q in 0..=other.top_degree() {
                for (i, s) in self.generators[p].iter().enumerate() {
                    for (j, t) in other.generators[q].iter().enumerate() {
                        index[p + q].push((p, i, j));
                        generators[p + q].push(Generator {
                            id: CellId::pair(&s.id, &t.id),
                            birth: match mode {
                                ProductMode::Additive => s.birth + t.birth,
                                ProductMode::Max => s.birth.max(t.birth),
                            },
                        });
                    }
                }
            }
        }
        let position: Vec<HashMap<(usize, usize, usize), usize>> = index
            .iter()
            .map(|gens| gens.iter().enumerate().map(|(k, g)| (*g, k)).collect())
            .collect();
        let boundaries = (1..=top)
            .map(|n| {
                let mut d = Matrix::zeros(index[n - 1].len(), index[n].len());
                for (col, &(p, i, j)) in index[n].iter().enumerate() {
                    let q = n - p;
                    if p > 0 {
                        let dk = self.boundary(p);
                        for r in 0..dk.rows() {
                            let c = dk.get(r, i);
                            if c != 0 {
                                let row = position[n - 1][&(p - 1, r, j)];
                                d.set(row, col, f.add(d.get(row, col), c));
                            }
                        }
                    }
                    if q > 0 {
                        let dl = other.boundary(q);
                        for r in 0..dl.rows() {
                            let mut c = dl.get(r, j);
                            if c != 0 {
                                if p % 2 == 1 {
                                    c = f.neg(c);
                                }
                                let row = position[n - 1][&(p, i, r)];
                                d.set(row, col, f.add(d.get(row, col), c));
                            }
                        }
                    }
                }
                d
            })
            .collect();
        FreeChainComplex::new(f, generators, boundaries)
    }
}

/// One generator per cell, born at the cell's value, with the boundary
/// matrices read off the boundary lists.
pub fn chain_complex(x: &FilteredComplex, field: Fp) -> Result<FreeChainComplex> {
    let Some(top) = x.max_dim() else {
        return Ok(FreeChainComplex::empty(field));
    };
    let mut generators: Vec<Vec<Generator>> = vec![Vec::new(); top + 1];
    let mut position = HashMap::new();
    for c in x.cells() {
        position.insert(c.id.clone(), (c.dim, generators[c.dim].len()));
        generators[c.dim].push(Generator {
            id: c.id.clone(),
            birth: c.value,
        });
    }
    let mut boundaries: Vec<Matrix> = (1..=top)
        .map(|n| Matrix::zeros(generators[n - 1].len(), generators[n].len()))
        .collect();
    for c in x.cells().iter().filter(|c| c.dim > 0) {
        let col = position[&c.id].1;
        let d = &mut boundaries[c.dim - 1];
        for (sign, face) in &c.boundary {
            let row = position[face].1;
            let v = field.add(d.get(row, col), field.elem(sign.value()));
            d.set(row, col, v);
        }
    }
    FreeChainComplex::new(field, generators, boundaries)
}

/// Tensor product of free chain complexes under the given filtration rule.
pub fn product_complex(k: &FreeChainComplex, l: &FreeChainComplex, mode: ProductMode) -> Result<FreeChainComplex> {
    k.product(l, mode)
}
