use super::field::Matrix;
use super::module::GridModule;
use super::morphism::GridMorphism;
use super::tensor::{grid_sh_tensor, grid_sh_tensor_map, GradedTensor};
use crate::barcode::Mode;
use crate::error::{Error, Result};

/// A chain complex of grid modules: `boundaries[n − 1]` is `∂ₙ : Cₙ → Cₙ₋₁`.
#[derive(Clone, Debug)]
pub struct GridComplex {
    chains: Vec<GridModule>,
    boundaries: Vec<GridMorphism>,
}

impl GridComplex {
    /// Checks shapes, naturality of every boundary and `∂∂ = 0`.
    pub fn new(chains: Vec<GridModule>, boundaries: Vec<GridMorphism>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidComplex(m));
        if chains.is_empty() {
            return bad("a complex needs at least one chain module".into());
        }
        if boundaries.len() + 1 != chains.len() {
            return bad(format!(
                "{} chain modules need {} boundaries, got {}",
                chains.len(),
                chains.len() - 1,
                boundaries.len()
            ));
        }
        for (n, d) in boundaries.iter().enumerate() {
            if d.source() != &chains[n + 1] || d.target() != &chains[n] {
                return bad(format!("boundary {} has the wrong source or target", n + 1));
            }
            GridMorphism::new(d.source().clone(), d.target().clone(), d.maps().to_vec())
                .map_err(|e| Error::InvalidComplex(format!("boundary {}: {e}", n + 1)))?;
        }
        for n in 1..boundaries.len() {
            if !boundaries[n].then(&boundaries[n - 1]).is_zero() {
                return bad(format!("boundary {n} composed with boundary {} is nonzero", n + 1));
            }
        }
        Ok(GridComplex { chains, boundaries })
    }

    pub fn chains(&self) -> &[GridModule] {
        &self.chains
    }

    pub fn boundaries(&self) -> &[GridMorphism] {
        &self.boundaries
    }

    pub fn top_degree(&self) -> usize {
        self.chains.len() - 1
    }
}

/// Pointwise `ker ∂ₙ / im ∂ₙ₊₁` with the induced step maps, one module per
/// degree.
pub fn grid_homology(c: &GridComplex) -> Vec<GridModule> {
    (0..c.chains.len())
        .map(|n| {
            let chains = &c.chains[n];
            let inclusion = match n {
                0 => GridMorphism::identity(chains),
                _ => c.boundaries[n - 1].kernel().1,
            };
            match c.boundaries.get(n) {
                None => inclusion.source().clone(),
                Some(d) => d
                    .factor_through(&inclusion)
                    .expect("boundaries land in cycles")
                    .cokernel()
                    .0,
            }
        })
        .collect()
}

fn direct_sum_all(parts: &[GridModule], like: &GridModule) -> GridModule {
    parts
        .iter()
        .fold(GridModule::zero(like.window(), like.field()), |acc, m| acc.direct_sum(m))
}

/// Assembles a map between direct sums from `(target part, source part, map)`
/// blocks; absent blocks are zero.
fn block_map(
    source: &GridModule,
    sources: &[GridModule],
    target: &GridModule,
    targets: &[GridModule],
    blocks: &[(usize, usize, GridMorphism)],
) -> GridMorphism {
    let w = source.window();
    let offsets = |parts: &[GridModule], k: usize| -> Vec<usize> {
        let p = w.point(k);
        parts
            .iter()
            .scan(0, |acc, m| {
                let o = *acc;
                *acc += m.dim(p);
                Some(o)
            })
            .collect()
    };
    let maps = (0..w.len())
        .map(|k| {
            let p = w.point(k);
            let (so, to) = (offsets(sources, k), offsets(targets, k));
            let mut m = Matrix::zeros(target.dim(p), source.dim(p));
            for (t, s, f) in blocks {
                m.set_block(to[*t], so[*s], f.at(k));
            }
            m
        })
        .collect();
    GridMorphism::unchecked(source.clone(), target.clone(), maps)
}

/// Tensor product of grid complexes, with
/// `∂(x⊗y) = ∂x⊗y + (−1)^{|x|} x⊗∂y`; graded mode uses the colimit tensor
/// and sheaf mode the pointwise one.
pub fn tensor_complex(k: &GridComplex, l: &GridComplex, mode: Mode) -> Result<GridComplex> {
    let f = k.chains[0].field();
    let top = k.top_degree() + l.top_degree();
    // parts[n] lists (p, q) with p + q = n.
    let parts: Vec<Vec<(usize, usize)>> = (0..=top)
        .map(|n| {
            (0..=n)
                .filter(|&p| p <= k.top_degree() && n - p <= l.top_degree())
                .map(|p| (p, n - p))
                .collect()
        })
        .collect();
    let graded: Vec<Vec<Option<GradedTensor>>> = (0..=k.top_degree())
        .map(|p| {
            (0..=l.top_degree())
                .map(|q| match mode {
                    Mode::Graded => GradedTensor::new(&k.chains[p], &l.chains[q]).map(Some),
                    Mode::Sheaf => Ok(None),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let factor = |p: usize, q: usize| -> Result<GridModule> {
        match &graded[p][q] {
            Some(t) => Ok(t.module().clone()),
            None => grid_sh_tensor(&k.chains[p], &l.chains[q]),
        }
    };
    let tensor_map = |from: (usize, usize), to: (usize, usize), a: &GridMorphism, b: &GridMorphism| -> Result<GridMorphism> {
        match (&graded[from.0][from.1], &graded[to.0][to.1]) {
            (Some(s), Some(t)) => Ok(s.induced(t, a, b)),
            _ => grid_sh_tensor_map(a, b),
        }
    };
    let pieces: Vec<Vec<GridModule>> = parts
        .iter()
        .map(|ps| ps.iter().map(|&(p, q)| factor(p, q)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let chains: Vec<GridModule> = pieces.iter().map(|ps| direct_sum_all(ps, &k.chains[0])).collect();
    let mut boundaries = Vec::with_capacity(top);
    for n in 1..=top {
        let mut blocks = Vec::new();
        for (si, &(p, q)) in parts[n].iter().enumerate() {
            if p > 0 {
                let ti = parts[n - 1].iter().position(|&x| x == (p - 1, q)).expect("part exists");
                let id = GridMorphism::identity(&l.chains[q]);
                blocks.push((ti, si, tensor_map((p, q), (p - 1, q), &k.boundaries[p - 1], &id)?));
            }
            if q > 0 {
                let ti = parts[n - 1].iter().position(|&x| x == (p, q - 1)).expect("part exists");
                let id = GridMorphism::identity(&k.chains[p]);
                let mut g = tensor_map((p, q), (p, q - 1), &id, &l.boundaries[q - 1])?;
                if p % 2 == 1 {
                    g = g.scale(f.neg(1));
                }
                blocks.push((ti, si, g));
            }
        }
        boundaries.push(block_map(&chains[n], &pieces[n], &chains[n - 1], &pieces[n - 1], &blocks));
    }
    GridComplex::new(chains, boundaries)
}
