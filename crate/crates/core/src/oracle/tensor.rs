use super::field::{FieldElem, Fp, Matrix, Quotient, Subspace};
use super::module::{GridModule, Point, Window};
use super::morphism::GridMorphism;
use crate::error::{Error, Result};

fn sub(r: Point, s: Point) -> Point {
    [r[0] - s[0], r[1] - s[1]]
}

fn unit(axis: usize) -> Point {
    let mut e = [0, 0];
    e[axis] = 1;
    e
}

pub(crate) fn same_window(m: &GridModule, n: &GridModule) -> Result<Window> {
    if m.window() != n.window() || m.field() != n.field() {
        return Err(Error::InvalidModule(format!(
            "modules live on different windows or fields: {:?} and {:?}",
            m.window(),
            n.window()
        )));
    }
    Ok(m.window())
}

#[derive(Clone, Debug)]
struct Summand {
    s: Point,
    t: Point,
    offset: usize,
    dim_m: usize,
    dim_n: usize,
}

/// `⊕_{s+t=r} M_s ⊗ N_t` modulo the relations coming from level `r − e_i`.
#[derive(Clone, Debug)]
struct Level {
    summands: Vec<Summand>,
    quotient: Quotient,
}

impl Level {
    fn find(&self, s: Point) -> Option<&Summand> {
        self.summands.iter().find(|x| x.s == s)
    }

    fn ambient(&self) -> usize {
        self.quotient.ambient()
    }
}

/// The graded tensor product computed as a colimit at every grade, with
/// enough bookkeeping to push morphisms through it.
#[derive(Clone, Debug)]
pub struct GradedTensor {
    module: GridModule,
    levels: Vec<Level>,
}

fn level_summands(m: &GridModule, n: &GridModule, r: Point) -> Vec<Summand> {
    let w = m.window();
    let mut out = Vec::new();
    let mut offset = 0;
    for s in w.points() {
        let t = sub(r, s);
        let (dim_m, dim_n) = (m.dim(s), n.dim(t));
        if dim_m > 0 && dim_n > 0 {
            out.push(Summand {
                s,
                t,
                offset,
                dim_m,
                dim_n,
            });
            offset += dim_m * dim_n;
        }
    }
    out
}

/// Adds `block · v` into the slot of summand `x` inside `out`.
fn accumulate(out: &mut [FieldElem], x: &Summand, block: &Matrix, v: &[FieldElem], f: Fp) {
    for (k, y) in block.apply(v, f).into_iter().enumerate() {
        let slot = &mut out[x.offset + k];
        *slot = f.add(*slot, y);
    }
}

impl GradedTensor {
    pub fn new(m: &GridModule, n: &GridModule) -> Result<Self> {
        let w = same_window(m, n)?;
        let f = m.field();
        let summands: Vec<Vec<Summand>> = w.points().map(|r| level_summands(m, n, r)).collect();
        let mut levels = Vec::with_capacity(w.len());
        for (r, here) in w.points().zip(&summands) {
            let ambient: usize = here.iter().map(|x| x.dim_m * x.dim_n).sum();
            let find = |s: Point| here.iter().find(|x| x.s == s);
            let mut relations = Vec::new();
            for axis in 0..w.rank() {
                let e = unit(axis);
                for s in w.points() {
                    let t = sub(sub(r, e), s);
                    let (dm, dn) = (m.dim(s), n.dim(t));
                    if dm == 0 || dn == 0 {
                        continue;
                    }
                    let via_m = find(Window::step(s, axis)).map(|x| (x, m.step(s, axis).kron(&Matrix::identity(dn), f)));
                    let via_n = find(s).map(|x| (x, Matrix::identity(dm).kron(n.step(t, axis), f)));
                    for basis in 0..dm * dn {
                        let mut v = vec![0; dm * dn];
                        v[basis] = 1;
                        let mut rel = vec![0; ambient];
                        if let Some((x, block)) = &via_m {
                            accumulate(&mut rel, x, block, &v, f);
                        }
                        if let Some((x, block)) = &via_n {
                            accumulate(&mut rel, x, &block.scale(f.neg(1), f), &v, f);
                        }
                        relations.push(rel);
                    }
                }
            }
            levels.push(Level {
                summands: here.clone(),
                quotient: Quotient::new(Subspace::span(ambient, &relations, f)),
            });
        }
        let dims = levels.iter().map(|l| l.quotient.dim()).collect();
        let module = GridModule::from_dims(w, f, dims, |r, axis, _, _| {
            let here = &levels[w.index(r).expect("grade in window")];
            let next = &levels[w.index(Window::step(r, axis)).expect("target in window")];
            let columns: Vec<Vec<FieldElem>> = (0..here.quotient.dim())
                .map(|c| {
                    let mut e = vec![0; here.quotient.dim()];
                    e[c] = 1;
                    let v = here.quotient.lift(&e);
                    let mut out = vec![0; next.ambient()];
                    for x in &here.summands {
                        if let Some(y) = next.find(Window::step(x.s, axis)) {
                            let block = m.step(x.s, axis).kron(&Matrix::identity(x.dim_n), f);
                            accumulate(&mut out, y, &block, &v[x.offset..x.offset + x.dim_m * x.dim_n], f);
                        }
                    }
                    next.quotient.project(&out, f)
                })
                .collect();
            Matrix::from_columns(next.quotient.dim(), &columns)
        });
        Ok(GradedTensor { module, levels })
    }

    pub fn module(&self) -> &GridModule {
        &self.module
    }

    /// The map `f ⊗ g` from this tensor product to `target`, where `f` and
    /// `g` go from the factors of `self` to the factors of `target`.
    pub fn induced(&self, target: &GradedTensor, f: &GridMorphism, g: &GridMorphism) -> GridMorphism {
        let field = self.module.field();
        let w = self.module.window();
        let maps = self
            .levels
            .iter()
            .zip(&target.levels)
            .map(|(here, there)| {
                let columns: Vec<Vec<FieldElem>> = (0..here.quotient.dim())
                    .map(|c| {
                        let mut e = vec![0; here.quotient.dim()];
                        e[c] = 1;
                        let v = here.quotient.lift(&e);
                        let mut out = vec![0; there.ambient()];
                        for x in &here.summands {
                            if let Some(y) = there.find(x.s) {
                                let (ks, kt) = (w.index(x.s).expect("in window"), w.index(x.t).expect("in window"));
                                let block = f.at(ks).kron(g.at(kt), field);
                                accumulate(&mut out, y, &block, &v[x.offset..x.offset + x.dim_m * x.dim_n], field);
                            }
                        }
                        there.quotient.project(&out, field)
                    })
                    .collect();
                Matrix::from_columns(there.quotient.dim(), &columns)
            })
            .collect();
        GridMorphism::unchecked(self.module.clone(), target.module.clone(), maps)
    }
}

/// Graded tensor product: at grade `r`, the colimit of `M_s ⊗ N_t` over
/// `s + t ≤ r`.
pub fn grid_gr_tensor(m: &GridModule, n: &GridModule) -> Result<GridModule> {
    Ok(GradedTensor::new(m, n)?.module)
}

/// Pointwise tensor product with Kronecker step maps.
pub fn grid_sh_tensor(m: &GridModule, n: &GridModule) -> Result<GridModule> {
    let w = same_window(m, n)?;
    let f = m.field();
    let dims = m.dims().iter().zip(n.dims()).map(|(a, b)| a * b).collect();
    Ok(GridModule::from_dims(w, f, dims, |p, axis, _, _| {
        m.step(p, axis).kron(n.step(p, axis), f)
    }))
}

/// `f ⊗ g` for the pointwise tensor product.
pub fn grid_sh_tensor_map(f: &GridMorphism, g: &GridMorphism) -> Result<GridMorphism> {
    let field = f.source().field();
    let source = grid_sh_tensor(f.source(), g.source())?;
    let target = grid_sh_tensor(f.target(), g.target())?;
    let maps = f.maps().iter().zip(g.maps()).map(|(a, b)| a.kron(b, field)).collect();
    Ok(GridMorphism::unchecked(source, target, maps))
}

#[cfg(test)]
mod tests {
    use super::super::module::{decompose, realize, realize_rectangle};
    use super::*;
    use crate::interval::{rect_gr_tensor, MaybeRectangle, Rectangle};
    use crate::Barcode;

    fn bc(items: &[&str]) -> Barcode {
        Barcode::parse_list(items).unwrap()
    }

    fn line(items: &[&str], f: Fp) -> GridModule {
        realize(&bc(items), Window::line(-8, 8), f).unwrap()
    }

    #[test]
    fn bars_tensor_to_the_shorter_persistence() {
        for p in [2, 5] {
            let f = Fp::new(p).unwrap();
            let got = grid_gr_tensor(&line(&["[1,3)"], f), &line(&["[2,4)"], f)).unwrap();
            assert_eq!(decompose(&got), bc(&["[3,5)"]));
            let zero = grid_gr_tensor(&line(&["[0,2)"], f), &line(&["[-3,-1)"], f)).unwrap();
            assert_eq!(decompose(&zero), bc(&["[-3,-1)"]));
        }
    }

    #[test]
    fn sums_distribute() {
        let f = Fp::new(5).unwrap();
        let got = grid_gr_tensor(&line(&["[0,1)", "[2,3)"], f), &line(&["[0,2)"], f)).unwrap();
        assert_eq!(decompose(&got), bc(&["[0,1)", "[2,3)"]));
    }

    #[test]
    fn pointwise_tensor_intersects() {
        let f = Fp::default();
        let got = grid_sh_tensor(&line(&["[0,3)"], f), &line(&["[2,5)"], f)).unwrap();
        assert_eq!(decompose(&got), bc(&["[2,3)"]));
    }

    #[test]
    fn rectangles_tensor_factorwise() {
        let f = Fp::default();
        let w = Window::square(-1, 7);
        let rect = |a: &str, b: &str| Rectangle::new(vec![a.parse().unwrap(), b.parse().unwrap()]).unwrap();
        let m = rect("[0,2)", "[0,3)");
        let n = rect("[1,2)", "[0,1)");
        let got = grid_gr_tensor(&realize_rectangle(&m, w, f).unwrap(), &realize_rectangle(&n, w, f).unwrap()).unwrap();
        assert!(got.commutes());
        let MaybeRectangle::Rectangle(expected) = rect_gr_tensor(&m, &n).unwrap() else {
            panic!("nonzero product expected");
        };
        assert_eq!(got, realize_rectangle(&expected, w, f).unwrap());
    }
}
