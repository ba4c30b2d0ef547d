use super::field::{FieldElem, Fp, Matrix, Subspace};
use super::module::{GridModule, Point, Window};
use super::morphism::GridMorphism;
use super::tensor::same_window;
use crate::error::Result;

fn add(x: Point, s: Point) -> Point {
    [x[0] + s[0], x[1] + s[1]]
}

/// One unknown block `α_x : M_x → N_{x+shift}`, stored row-major.
#[derive(Clone, Debug)]
struct Block {
    x: Point,
    offset: usize,
    rows: usize,
    cols: usize,
}

/// Natural transformations `M|P → N(shift)|P` for an up-closed set of grid
/// points `P`, as the solution space of the naturality equations.
#[derive(Clone, Debug)]
struct NatSpace {
    shift: Point,
    blocks: Vec<Block>,
    unknowns: usize,
    solutions: Subspace,
}

impl NatSpace {
    fn new(m: &GridModule, n: &GridModule, shift: Point, member: impl Fn(Point) -> bool) -> NatSpace {
        let w = m.window();
        let f = m.field();
        let mut blocks = Vec::new();
        let mut unknowns = 0;
        for x in w.points().filter(|&x| member(x)) {
            let (rows, cols) = (n.dim(add(x, shift)), m.dim(x));
            if rows > 0 && cols > 0 {
                blocks.push(Block {
                    x,
                    offset: unknowns,
                    rows,
                    cols,
                });
                unknowns += rows * cols;
            }
        }
        let find = |x: Point| blocks.iter().find(|b| b.x == x);
        let mut equations: Vec<Vec<FieldElem>> = Vec::new();
        for x in w.points().filter(|&x| member(x)) {
            let xs = add(x, shift);
            for axis in 0..w.rank() {
                let y = Window::step(x, axis);
                if w.contains(y) && !member(y) {
                    continue;
                }
                let ys = add(y, shift);
                let (rows, cols) = (n.dim(ys), m.dim(x));
                if rows == 0 || cols == 0 {
                    continue;
                }
                let here = find(x);
                let there = find(y);
                // N_step · α_x − α_y · M_step, one equation per entry.
                for i in 0..rows {
                    for j in 0..cols {
                        let mut eq = vec![0; unknowns];
                        if let Some(b) = here {
                            let step = n.step(xs, axis);
                            for k in 0..b.rows {
                                let c = step.get(i, k);
                                if c != 0 {
                                    let slot = &mut eq[b.offset + k * b.cols + j];
                                    *slot = f.add(*slot, c);
                                }
                            }
                        }
                        if let Some(b) = there {
                            let step = m.step(x, axis);
                            for l in 0..b.cols {
                                let c = step.get(l, j);
                                if c != 0 {
                                    let slot = &mut eq[b.offset + i * b.cols + l];
                                    *slot = f.sub(*slot, c);
                                }
                            }
                        }
                        if eq.iter().any(|&v| v != 0) {
                            equations.push(eq);
                        }
                    }
                }
            }
        }
        let system = if equations.is_empty() {
            Matrix::zeros(0, unknowns)
        } else {
            Matrix::from_rows(equations.len(), unknowns, equations.concat())
        };
        let solutions = Subspace::span(unknowns, &system.kernel(f), f);
        NatSpace {
            shift,
            blocks,
            unknowns,
            solutions,
        }
    }

    fn dim(&self) -> usize {
        self.solutions.dim()
    }

    fn basis_block<'a>(&self, v: &'a [FieldElem], b: &Block) -> &'a [FieldElem] {
        &v[b.offset..b.offset + b.rows * b.cols]
    }

    /// Expresses a family of blocks, given per point, in solution coordinates.
    fn coords(&self, block_of: impl Fn(Point) -> Option<Matrix>, f: Fp) -> Vec<FieldElem> {
        let mut v = vec![0; self.unknowns];
        for b in &self.blocks {
            if let Some(m) = block_of(b.x) {
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        v[b.offset + i * b.cols + j] = m.get(i, j);
                    }
                }
            }
        }
        self.solutions.coords(&v, f)
    }

    /// The basis transformations, each as a lookup from a point to its block.
    fn basis_maps(&self) -> Vec<Vec<(Point, Matrix)>> {
        self.solutions
            .basis()
            .iter()
            .map(|v| {
                self.blocks
                    .iter()
                    .map(|b| {
                        let data = self.basis_block(v, b).to_vec();
                        (b.x, Matrix::from_rows(b.rows, b.cols, data))
                    })
                    .collect()
            })
            .collect()
    }
}

fn lookup(family: &[(Point, Matrix)], x: Point) -> Option<&Matrix> {
    family.iter().find(|(p, _)| *p == x).map(|(_, m)| m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum HomKind {
    /// Grade `s` holds `Nat(M, N(s))`.
    Graded,
    /// Point `x` holds `Nat(M|↑x, N|↑x)`.
    Sheaf,
}

/// An internal hom module together with the solution spaces behind it.
#[derive(Clone, Debug)]
pub struct HomModule {
    kind: HomKind,
    module: GridModule,
    spaces: Vec<NatSpace>,
}

fn up_set(x: Point, rank: usize) -> impl Fn(Point) -> bool {
    move |y: Point| (0..rank).all(|k| y[k] >= x[k])
}

impl HomModule {
    pub fn graded(m: &GridModule, n: &GridModule) -> Result<Self> {
        let w = same_window(m, n)?;
        let spaces = w.points().map(|s| NatSpace::new(m, n, s, |_| true)).collect();
        Ok(HomModule::assemble(HomKind::Graded, m, n, spaces))
    }

    pub fn sheaf(m: &GridModule, n: &GridModule) -> Result<Self> {
        let w = same_window(m, n)?;
        let spaces = w
            .points()
            .map(|x| NatSpace::new(m, n, [0, 0], up_set(x, w.rank())))
            .collect();
        Ok(HomModule::assemble(HomKind::Sheaf, m, n, spaces))
    }

    fn assemble(kind: HomKind, m: &GridModule, n: &GridModule, spaces: Vec<NatSpace>) -> Self {
        let w = m.window();
        let f = m.field();
        let dims = spaces.iter().map(NatSpace::dim).collect();
        let module = GridModule::from_dims(w, f, dims, |p, axis, _, _| {
            let here = &spaces[w.index(p).expect("point in window")];
            let next = &spaces[w.index(Window::step(p, axis)).expect("target in window")];
            let columns: Vec<Vec<FieldElem>> = here
                .basis_maps()
                .iter()
                .map(|family| match kind {
                    // Postcompose with the step of N.
                    HomKind::Graded => next.coords(
                        |x| {
                            let a = lookup(family, x)?;
                            Some(n.step(add(x, here.shift), axis).mul(a, f))
                        },
                        f,
                    ),
                    // Restrict to the smaller up-set.
                    HomKind::Sheaf => next.coords(|x| lookup(family, x).cloned(), f),
                })
                .collect();
            Matrix::from_columns(next.dim(), &columns)
        });
        HomModule {
            kind,
            module,
            spaces,
        }
    }

    pub fn module(&self) -> &GridModule {
        &self.module
    }

    /// The map `Hom(M, N) → Hom(M, N')` given by postcomposition with
    /// `g : N → N'`; `target` must be the hom module of the same kind into `N'`.
    pub fn postcompose(&self, target: &HomModule, g: &GridMorphism) -> GridMorphism {
        assert_eq!(self.kind, target.kind, "hom modules of different kinds");
        let w = self.module.window();
        let f = self.module.field();
        let maps = self
            .spaces
            .iter()
            .zip(&target.spaces)
            .map(|(here, there)| {
                let columns: Vec<Vec<FieldElem>> = here
                    .basis_maps()
                    .iter()
                    .map(|family| {
                        there.coords(
                            |x| {
                                let a = lookup(family, x)?;
                                let k = w.index(add(x, here.shift))?;
                                Some(g.at(k).mul(a, f))
                            },
                            f,
                        )
                    })
                    .collect();
                Matrix::from_columns(there.dim(), &columns)
            })
            .collect();
        GridMorphism::unchecked(self.module.clone(), target.module.clone(), maps)
    }
}

/// Dimension of the space of natural transformations `M → N`.
pub fn grid_nat_hom_dim(m: &GridModule, n: &GridModule) -> Result<usize> {
    same_window(m, n)?;
    Ok(NatSpace::new(m, n, [0, 0], |_| true).dim())
}

/// Graded internal hom: grade `s` is `Nat(M, N(s))` with `N(s)_x = N_{x+s}`.
pub fn grid_underline_hom(m: &GridModule, n: &GridModule) -> Result<GridModule> {
    Ok(HomModule::graded(m, n)?.module)
}

/// Sheaf hom: the stalk at `x` is `Nat(M|↑x, N|↑x)`, with restriction maps.
pub fn grid_sheaf_hom(m: &GridModule, n: &GridModule) -> Result<GridModule> {
    Ok(HomModule::sheaf(m, n)?.module)
}

#[cfg(test)]
mod tests {
    use super::super::module::{decompose, realize, realize_rectangle};
    use super::*;
    use crate::interval::{rect_underline_hom, MaybeRectangle, Rectangle};
    use crate::Barcode;

    fn bc(items: &[&str]) -> Barcode {
        Barcode::parse_list(items).unwrap()
    }

    fn line(items: &[&str], f: Fp) -> GridModule {
        realize(&bc(items), Window::line(-10, 10), f).unwrap()
    }

    #[test]
    fn nat_hom_dims() {
        let f = Fp::new(5).unwrap();
        let dim = |a: &str, b: &str| grid_nat_hom_dim(&line(&[a], f), &line(&[b], f)).unwrap();
        assert_eq!(dim("[1,4)", "[0,2)"), 1);
        assert_eq!(dim("[0,2)", "[3,5)"), 0);
        assert_eq!(dim("[0,1)", "[0,1)"), 1);
        assert_eq!(dim("[0,2)", "[1,4)"), 0);
        assert_eq!(grid_nat_hom_dim(&line(&["[0,3)", "[0,3)"], f), &line(&["[0,3)", "[0,3)"], f)).unwrap(), 4);
    }

    #[test]
    fn graded_hom_of_bars() {
        let f = Fp::new(5).unwrap();
        let got = grid_underline_hom(&line(&["[1,3)"], f), &line(&["[2,5)"], f)).unwrap();
        assert_eq!(decompose(&got), bc(&["[2,4)"]));
        let ray = grid_underline_hom(&line(&["[1,inf)"], f), &line(&["[2,5)"], f)).unwrap();
        assert_eq!(decompose(&ray), bc(&["[1,4)"]));
    }

    #[test]
    fn sheaf_hom_of_bars() {
        let f = Fp::default();
        let got = grid_sheaf_hom(&line(&["[0,5)"], f), &line(&["[0,2)"], f)).unwrap();
        assert_eq!(decompose(&got), bc(&["[-10,2)"]));
        let inner = grid_sheaf_hom(&line(&["[0,5)"], f), &line(&["[1,3)"], f)).unwrap();
        assert_eq!(decompose(&inner), bc(&["[1,3)"]));
        let wide = grid_sheaf_hom(&line(&["[0,5)"], f), &line(&["[2,5)"], f)).unwrap();
        assert_eq!(decompose(&wide), bc(&["[2,5)"]));
    }

    #[test]
    fn rectangle_hom() {
        let f = Fp::default();
        let w = Window::square(-1, 6);
        let rect = |a: &str, b: &str| Rectangle::new(vec![a.parse().unwrap(), b.parse().unwrap()]).unwrap();
        let m = rect("[0,2)", "[1,3)");
        let n = rect("[1,4)", "[1,3)");
        let got = grid_underline_hom(&realize_rectangle(&m, w, f).unwrap(), &realize_rectangle(&n, w, f).unwrap()).unwrap();
        let MaybeRectangle::Rectangle(expected) = rect_underline_hom(&m, &n).unwrap() else {
            panic!("nonzero hom expected");
        };
        assert_eq!(got.dims(), realize_rectangle(&expected, w, f).unwrap().dims());
        assert!(got.commutes());
    }

    #[test]
    fn two_components_give_two_maps() {
        let f = Fp::default();
        let w = Window::square(0, 5);
        let up = GridModule::indicator(w, f, |p| (p[0] >= 1 && p[1] >= 3) || (p[0] >= 3 && p[1] >= 1)).unwrap();
        let down = GridModule::indicator(w, f, |p| (p[0] <= 1 && p[1] <= 3) || (p[0] <= 3 && p[1] <= 1)).unwrap();
        assert_eq!(grid_nat_hom_dim(&up, &down).unwrap(), 2);
    }
}
