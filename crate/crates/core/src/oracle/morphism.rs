use super::field::{Matrix, Quotient, Subspace};
use super::module::{GridModule, Window};
use crate::error::{Error, Result};

/// A natural transformation between grid modules on a common window, one
/// matrix per grid point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridMorphism {
    source: GridModule,
    target: GridModule,
    maps: Vec<Matrix>,
}

impl GridMorphism {
    pub fn new(source: GridModule, target: GridModule, maps: Vec<Matrix>) -> Result<Self> {
        let m = GridMorphism::unchecked(source, target, maps);
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn unchecked(source: GridModule, target: GridModule, maps: Vec<Matrix>) -> Self {
        GridMorphism {
            source,
            target,
            maps,
        }
    }

    pub fn zero(source: GridModule, target: GridModule) -> Self {
        let w = source.window();
        let maps = w
            .points()
            .map(|p| Matrix::zeros(target.dim(p), source.dim(p)))
            .collect();
        GridMorphism::unchecked(source, target, maps)
    }

    pub fn identity(m: &GridModule) -> Self {
        let maps = m.dims().iter().map(|&d| Matrix::identity(d)).collect();
        GridMorphism::unchecked(m.clone(), m.clone(), maps)
    }

    /// The canonical map between indicator modules: identity wherever both
    /// are nonzero. Fails unless that is natural.
    pub fn canonical(source: &GridModule, target: &GridModule) -> Result<Self> {
        let maps = source
            .window()
            .points()
            .map(|p| {
                let (r, c) = (target.dim(p), source.dim(p));
                if r == 1 && c == 1 {
                    Matrix::identity(1)
                } else {
                    Matrix::zeros(r, c)
                }
            })
            .collect();
        GridMorphism::new(source.clone(), target.clone(), maps)
    }

    fn validate(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        let w = s.window();
        let bad = |m: String| Err(Error::InvalidModule(m));
        if t.window() != w || self.maps.len() != w.len() {
            return bad("morphism between modules on different windows".into());
        }
        let f = s.field();
        for (k, p) in w.points().enumerate() {
            let m = &self.maps[k];
            if (m.rows(), m.cols()) != (t.dim(p), s.dim(p)) {
                return bad(format!("map at {p:?} has the wrong shape"));
            }
            for axis in 0..w.rank() {
                let q = Window::step(p, axis);
                let Some(kq) = w.index(q) else { continue };
                let left = t.step(p, axis).mul(m, f);
                let right = self.maps[kq].mul(s.step(p, axis), f);
                if left != right {
                    return bad(format!("naturality fails on the step out of {p:?}"));
                }
            }
        }
        Ok(())
    }

    /// `f ⊕ g` between the direct sums of the sources and of the targets.
    pub fn direct_sum(&self, other: &GridMorphism) -> GridMorphism {
        let source = self.source.direct_sum(&other.source);
        let target = self.target.direct_sum(&other.target);
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| {
                let mut m = Matrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
                m.set_block(0, 0, a);
                m.set_block(a.rows(), a.cols(), b);
                m
            })
            .collect();
        GridMorphism::unchecked(source, target, maps)
    }

    pub fn source(&self) -> &GridModule {
        &self.source
    }

    pub fn target(&self) -> &GridModule {
        &self.target
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn at(&self, k: usize) -> &Matrix {
        &self.maps[k]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GridMorphism) -> GridMorphism {
        let f = self.source.field();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| b.mul(a, f))
            .collect();
        GridMorphism::unchecked(self.source.clone(), other.target.clone(), maps)
    }

    pub fn add(&self, other: &GridMorphism) -> GridMorphism {
        let f = self.source.field();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| a.add(b, f))
            .collect();
        GridMorphism::unchecked(self.source.clone(), self.target.clone(), maps)
    }

    pub fn scale(&self, c: u32) -> GridMorphism {
        let f = self.source.field();
        let maps = self.maps.iter().map(|a| a.scale(c, f)).collect();
        GridMorphism::unchecked(self.source.clone(), self.target.clone(), maps)
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    /// Pointwise ranks.
    pub fn ranks(&self) -> Vec<usize> {
        let f = self.source.field();
        self.maps.iter().map(|m| m.rank(f)).collect()
    }

    /// The kernel module and its inclusion into the source.
    pub fn kernel(&self) -> (GridModule, GridMorphism) {
        let s = &self.source;
        let f = s.field();
        let w = s.window();
        let spaces: Vec<Subspace> = self
            .maps
            .iter()
            .zip(s.dims())
            .map(|(m, &d)| Subspace::span(d, &m.kernel(f), f))
            .collect();
        let dims = spaces.iter().map(Subspace::dim).collect();
        let module = GridModule::from_dims(w, f, dims, |p, axis, _, _| {
            let k = w.index(p).expect("point in window");
            let next = &spaces[w.index(Window::step(p, axis)).expect("target in window")];
            let step = s.step(p, axis);
            let columns: Vec<Vec<u32>> = spaces[k]
                .basis()
                .iter()
                .map(|v| next.coords(&step.apply(v, f), f))
                .collect();
            Matrix::from_columns(next.dim(), &columns)
        });
        let inclusions = spaces
            .iter()
            .map(|sp| Matrix::from_columns(sp.ambient(), sp.basis()))
            .collect();
        let inc = GridMorphism::unchecked(module.clone(), s.clone(), inclusions);
        (module, inc)
    }

    /// The cokernel module and the projection onto it from the target.
    pub fn cokernel(&self) -> (GridModule, GridMorphism) {
        let t = &self.target;
        let f = t.field();
        let w = t.window();
        let quotients: Vec<Quotient> = self
            .maps
            .iter()
            .zip(t.dims())
            .map(|(m, &d)| {
                let image: Vec<_> = (0..m.cols()).map(|c| m.column(c)).collect();
                Quotient::new(Subspace::span(d, &image, f))
            })
            .collect();
        let dims = quotients.iter().map(Quotient::dim).collect();
        let module = GridModule::from_dims(w, f, dims, |p, axis, _, _| {
            let k = w.index(p).expect("point in window");
            let next = &quotients[w.index(Window::step(p, axis)).expect("target in window")];
            let step = t.step(p, axis);
            let columns: Vec<Vec<u32>> = (0..quotients[k].dim())
                .map(|c| {
                    let mut e = vec![0; quotients[k].dim()];
                    e[c] = 1;
                    next.project(&step.apply(&quotients[k].lift(&e), f), f)
                })
                .collect();
            Matrix::from_columns(next.dim(), &columns)
        });
        let projections = quotients
            .iter()
            .map(|q| {
                let columns: Vec<Vec<u32>> = (0..q.ambient())
                    .map(|c| {
                        let mut e = vec![0; q.ambient()];
                        e[c] = 1;
                        q.project(&e, f)
                    })
                    .collect();
                Matrix::from_columns(q.dim(), &columns)
            })
            .collect();
        let proj = GridMorphism::unchecked(t.clone(), module.clone(), projections);
        (module, proj)
    }

    /// Factors `self` through an injective morphism `mono` with the same
    /// target, assuming the image of `self` lies in the image of `mono`.
    pub fn factor_through(&self, mono: &GridMorphism) -> Result<GridMorphism> {
        let f = self.source.field();
        let maps = self
            .maps
            .iter()
            .zip(&mono.maps)
            .map(|(a, m)| {
                let columns: Vec<Vec<u32>> = (0..m.cols()).map(|c| m.column(c)).collect();
                let image = Subspace::span(m.rows(), &columns, f);
                if image.dim() != m.cols() {
                    return Err(Error::InvalidModule("factoring through a non-injective map".into()));
                }
                // Coordinates in the RREF basis, then back to the columns of `m`.
                let to_rref = Matrix::from_columns(
                    image.dim(),
                    &columns.iter().map(|v| image.coords(v, f)).collect::<Vec<_>>(),
                );
                let back = to_rref.inverse(f).expect("columns are independent");
                let coords = (0..a.cols())
                    .map(|c| {
                        let v = a.column(c);
                        if !image.contains(&v, f) {
                            return Err(Error::InvalidModule("map does not factor".into()));
                        }
                        Ok(back.apply(&image.coords(&v, f), f))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Matrix::from_columns(m.cols(), &coords))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GridMorphism::unchecked(
            self.source.clone(),
            mono.source.clone(),
            maps,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::super::field::Fp;
    use super::super::module::{decompose, realize};
    use super::*;
    use crate::Barcode;

    fn module(items: &[&str]) -> GridModule {
        realize(&Barcode::parse_list(items).unwrap(), Window::line(-8, 8), Fp::new(3).unwrap()).unwrap()
    }

    #[test]
    fn canonical_rejects_unnatural_maps() {
        assert!(GridMorphism::canonical(&module(&["[1,inf)"]), &module(&["[0,inf)"])).is_ok());
        assert!(GridMorphism::canonical(&module(&["[0,inf)"]), &module(&["[1,inf)"])).is_err());
        assert!(GridMorphism::canonical(&module(&["[0,3)"]), &module(&["(-inf,2)"])).is_ok());
    }

    #[test]
    fn resolution_sequence() {
        // 0 → [2,∞) → [0,∞) → [0,2) → 0
        let inc = GridMorphism::canonical(&module(&["[2,inf)"]), &module(&["[0,inf)"])).unwrap();
        let (ker, _) = inc.kernel();
        assert_eq!(ker.total_dim(), 0);
        let (coker, proj) = inc.cokernel();
        assert_eq!(decompose(&coker), Barcode::parse_list(&["[0,2)"]).unwrap());
        assert!(inc.then(&proj).is_zero());
    }

    #[test]
    fn factoring_recovers_the_map() {
        let src = module(&["[3,inf)"]);
        let mid = module(&["[1,inf)"]);
        let top = module(&["[0,inf)"]);
        let a = GridMorphism::canonical(&src, &mid).unwrap();
        let b = GridMorphism::canonical(&mid, &top).unwrap();
        let through = a.then(&b).factor_through(&b).unwrap();
        assert_eq!(through, a);
    }
}
