use super::complex::GridComplex;
use super::field::{Fp, Matrix};
use super::module::{decompose, GridModule, Window};
use super::morphism::GridMorphism;
use crate::barcode::Barcode;
use crate::error::{Error, Result};
use crate::interval::{Endpoint, Interval, MaybeInterval, Rational};

/// Order-embedding of the real line, cut at finitely many values, into a
/// one-dimensional grid: with sorted values `v₀ < … < v_k`, cell `2i+1` is
/// the point `vᵢ` and the even cells are the open gaps around them, the
/// outer two being rays. A module whose intervals all end at these values
/// is constant on cells, so nothing is lost by the embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellGrid {
    values: Vec<Rational>,
}

impl CellGrid {
    pub fn new(values: impl IntoIterator<Item = Rational>) -> Self {
        let mut values: Vec<Rational> = values.into_iter().collect();
        values.sort();
        values.dedup();
        CellGrid { values }
    }

    /// The grid spanned by every finite endpoint of the given intervals.
    pub fn spanning<'a>(intervals: impl IntoIterator<Item = &'a Interval>) -> Self {
        CellGrid::new(
            intervals
                .into_iter()
                .flat_map(|i| [i.lo().finite(), i.hi().finite()])
                .flatten(),
        )
    }

    pub fn window(&self) -> Window {
        Window::line(0, 2 * self.values.len() as i64)
    }

    /// A real number lying in the given cell.
    fn representative(&self, cell: i64) -> Rational {
        let v = &self.values;
        let k = v.len() as i64;
        if k == 0 {
            return Rational::from_integer(0);
        }
        let one = Rational::from_integer(1);
        match cell {
            0 => v[0] - one,
            c if c == 2 * k => v[(k - 1) as usize] + one,
            c if c % 2 == 1 => v[(c / 2) as usize],
            c => (v[(c / 2 - 1) as usize] + v[(c / 2) as usize]) / Rational::from_integer(2),
        }
    }

    pub fn indicator(&self, i: &Interval, field: Fp) -> GridModule {
        GridModule::indicator(self.window(), field, |p| i.contains(self.representative(p[0])))
            .expect("intervals are convex")
    }

    /// The interval covering cells `s..t`.
    pub fn interval(&self, s: i64, t: i64) -> Interval {
        let v = &self.values;
        let k = v.len() as i64;
        let (lo, lo_closed) = match s {
            0 => (Endpoint::NegInf, false),
            c if c % 2 == 1 => (Endpoint::Finite(v[(c / 2) as usize]), true),
            c => (Endpoint::Finite(v[(c / 2 - 1) as usize]), false),
        };
        let last = t - 1;
        let (hi, hi_closed) = match last {
            c if c == 2 * k => (Endpoint::PosInf, false),
            c if c % 2 == 1 => (Endpoint::Finite(v[(c / 2) as usize]), true),
            c => (Endpoint::Finite(v[(c / 2) as usize]), false),
        };
        Interval::new(lo, lo_closed, hi, hi_closed).expect("cells s..t are nonempty")
    }

    /// Reads a barcode of a module on this grid back as real intervals.
    pub fn barcode(&self, m: &GridModule) -> Barcode {
        decompose(m)
            .iter()
            .map(|bar| {
                let s = bar.lo().finite().expect("grid bars are bounded").to_integer();
                let t = bar.hi().finite().expect("grid bars are bounded").to_integer();
                self.interval(s, t)
            })
            .collect()
    }
}

/// A chain complex whose terms are direct sums of interval modules, each
/// boundary entry being a scalar times the canonical map between intervals.
#[derive(Clone, Debug)]
pub struct IntervalComplex {
    /// Generator intervals per degree; `Zero` generators contribute nothing.
    pub generators: Vec<Vec<MaybeInterval>>,
    /// `boundaries[n − 1]` has one row per degree `n − 1` generator and one
    /// column per degree `n` generator.
    pub boundaries: Vec<Matrix>,
}

impl IntervalComplex {
    fn endpoints(&self) -> CellGrid {
        CellGrid::spanning(
            self.generators
                .iter()
                .flatten()
                .filter_map(|g| match g {
                    MaybeInterval::Interval(i) => Some(i),
                    MaybeInterval::Zero => None,
                }),
        )
    }

    /// Realizes the complex on its cell grid; fails if some boundary entry
    /// does not define a natural map.
    pub fn realize(&self, field: Fp) -> Result<(CellGrid, GridComplex)> {
        let grid = self.endpoints();
        let complex = self.build(grid.window(), field, |i, x| i.contains(grid.representative(x)))?;
        Ok((grid, complex))
    }

    /// Realizes the complex on the integer points of a one-dimensional window,
    /// truncating every generator to it. Exact for intervals with integer
    /// endpoints inside the window; unlike the cell grid, integer points are
    /// compatible with translation, which the graded tensor needs.
    pub fn realize_on(&self, window: Window, field: Fp) -> Result<GridComplex> {
        if window.rank() != 1 {
            return Err(Error::InvalidComplex("interval complexes live on a line".into()));
        }
        self.build(window, field, |i, x| i.contains(Rational::from_integer(x)))
    }

    fn build(&self, w: Window, field: Fp, contains: impl Fn(&Interval, i64) -> bool) -> Result<GridComplex> {
        let lo = w.lo();
        let alive: Vec<Vec<Vec<usize>>> = self
            .generators
            .iter()
            .map(|gens| {
                w.points()
                    .map(|p| {
                        gens.iter()
                            .enumerate()
                            .filter(|(_, g)| match g {
                                MaybeInterval::Interval(i) => contains(i, p[0]),
                                MaybeInterval::Zero => false,
                            })
                            .map(|(k, _)| k)
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let chains: Vec<GridModule> = alive
            .iter()
            .map(|per_point| {
                let dims = per_point.iter().map(Vec::len).collect();
                GridModule::from_dims(w, field, dims, |p, _, rows, cols| {
                    let k = (p[0] - lo) as usize;
                    let mut m = Matrix::zeros(rows, cols);
                    for (c, g) in per_point[k].iter().enumerate() {
                        if let Some(r) = per_point[k + 1].iter().position(|h| h == g) {
                            m.set(r, c, 1);
                        }
                    }
                    m
                })
            })
            .collect();
        let boundaries = self
            .boundaries
            .iter()
            .enumerate()
            .map(|(n, d)| {
                let (src, tgt) = (&alive[n + 1], &alive[n]);
                let maps = (0..w.len())
                    .map(|k| {
                        let mut m = Matrix::zeros(tgt[k].len(), src[k].len());
                        for (c, &gc) in src[k].iter().enumerate() {
                            for (r, &gr) in tgt[k].iter().enumerate() {
                                m.set(r, c, d.get(gr, gc));
                            }
                        }
                        m
                    })
                    .collect();
                GridMorphism::unchecked(chains[n + 1].clone(), chains[n].clone(), maps)
            })
            .collect();
        GridComplex::new(chains, boundaries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(s: &str) -> Interval {
        s.parse().unwrap()
    }

    #[test]
    fn cells_round_trip_every_closedness() {
        let f = Fp::default();
        for s in ["[0,1)", "(0,1]", "[0,1]", "(0,1)", "(-inf,1]", "(0,inf)", "(-inf,inf)", "[1/2,1/2]"] {
            let i = iv(s);
            let grid = CellGrid::new([0, 1].map(Rational::from_integer).into_iter().chain(i.lo().finite()));
            let m = grid.indicator(&i, f);
            assert_eq!(grid.barcode(&m), Barcode::new(vec![i]), "{s}");
        }
    }

    #[test]
    fn empty_grid_is_one_cell() {
        let grid = CellGrid::new([]);
        assert_eq!(grid.window().len(), 1);
        assert_eq!(grid.interval(0, 1), Interval::line());
    }
}
