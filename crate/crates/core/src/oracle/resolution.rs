use super::field::Fp;
use super::hom::HomModule;
use super::module::{GridModule, Layout};
use super::morphism::GridMorphism;
use super::tensor::GradedTensor;
use crate::barcode::Barcode;
use crate::error::{Error, Result};
use crate::interval::{Endpoint, Interval};

/// Two-term resolution `0 → k[hi,∞) → k[lo,∞) → k[i] → 0`; the left term
/// is absent for an up-ray and the middle term is the line for a down-ray.
fn projective_terms(i: &Interval) -> Result<(Barcode, Barcode)> {
    if (i.lo().is_finite() && !i.lo_closed()) || (i.hi().is_finite() && i.hi_closed()) {
        return Err(Error::unsupported("projective resolution", i.to_string()));
    }
    let p0 = match i.lo() {
        Endpoint::Finite(a) => Interval::up_ray(a)?,
        _ => Interval::line(),
    };
    let p1 = match i.hi() {
        Endpoint::Finite(b) => Barcode::new(vec![Interval::up_ray(b)?]),
        _ => Barcode::empty(),
    };
    Ok((p1, Barcode::new(vec![p0])))
}

/// Two-term resolution `0 → k[j] → k(−∞,hi) → k(−∞,lo) → 0`; the right
/// term is absent for a down-ray and the middle term is the line for an
/// up-ray.
fn injective_terms(j: &Interval) -> Result<(Barcode, Barcode)> {
    if (j.lo().is_finite() && !j.lo_closed()) || (j.hi().is_finite() && j.hi_closed()) {
        return Err(Error::unsupported("injective resolution", j.to_string()));
    }
    let i0 = match j.hi() {
        Endpoint::Finite(d) => Interval::down_ray(d)?,
        _ => Interval::line(),
    };
    let i1 = match j.lo() {
        Endpoint::Finite(c) => Barcode::new(vec![Interval::down_ray(c)?]),
        _ => Barcode::empty(),
    };
    Ok((Barcode::new(vec![i0]), i1))
}

/// `Tor₁(i, j)` as the kernel of `P₁ ⊗ j → P₀ ⊗ j` for the projective
/// resolution of `i`.
pub fn grid_resolution_tor1(i: &Interval, j: &Interval, layout: &Layout, field: Fp) -> Result<GridModule> {
    let (p1, p0) = projective_terms(i)?;
    let p1 = layout.realize_first(&p1, field)?;
    let p0 = layout.realize_first(&p0, field)?;
    let jm = layout.realize_second(&Barcode::new(vec![*j]), field)?;
    let inclusion = GridMorphism::canonical(&p1, &p0)?;
    let t1 = GradedTensor::new(&p1, &jm)?;
    let t0 = GradedTensor::new(&p0, &jm)?;
    let map = t1.induced(&t0, &inclusion, &GridMorphism::identity(&jm));
    Ok(map.kernel().0)
}

fn ext1_with(
    i: &Interval,
    j: &Interval,
    layout: &Layout,
    field: Fp,
    hom: fn(&GridModule, &GridModule) -> Result<HomModule>,
) -> Result<GridModule> {
    let (i0, i1) = injective_terms(j)?;
    let im = layout.realize_first(&Barcode::new(vec![*i]), field)?;
    let i0 = layout.realize_second(&i0, field)?;
    let i1 = layout.realize_second(&i1, field)?;
    let projection = GridMorphism::canonical(&i0, &i1)?;
    let h0 = hom(&im, &i0)?;
    let h1 = hom(&im, &i1)?;
    Ok(h0.postcompose(&h1, &projection).cokernel().0)
}

/// Graded `Ext¹(i, j)` as the cokernel of `Hom(i, I⁰) → Hom(i, I¹)` for the
/// injective resolution of `j`.
pub fn grid_resolution_ext1(i: &Interval, j: &Interval, layout: &Layout, field: Fp) -> Result<GridModule> {
    ext1_with(i, j, layout, field, HomModule::graded)
}

/// Sheaf `Ext¹(i, j)`, computed like the graded one with sheaf homs.
pub fn grid_resolution_sh_ext1(i: &Interval, j: &Interval, layout: &Layout, field: Fp) -> Result<GridModule> {
    ext1_with(i, j, layout, field, HomModule::sheaf)
}

#[cfg(test)]
mod tests {
    use super::super::module::{decompose, Window};
    use super::*;

    fn iv(s: &str) -> Interval {
        s.parse().unwrap()
    }

    fn bc(items: &[&str]) -> Barcode {
        Barcode::parse_list(items).unwrap()
    }

    #[test]
    fn tor_of_bars() {
        let layout = Layout::uniform(Window::line(-12, 20));
        for p in [2, 5] {
            let f = Fp::new(p).unwrap();
            let got = grid_resolution_tor1(&iv("[1,3)"), &iv("[2,4)"), &layout, f).unwrap();
            assert_eq!(decompose(&got), bc(&["[5,7)"]));
            let ray = grid_resolution_tor1(&iv("[1,inf)"), &iv("[2,4)"), &layout, f).unwrap();
            assert_eq!(ray.total_dim(), 0);
        }
    }

    #[test]
    fn ext_of_bars() {
        let layout = Layout::uniform(Window::line(-12, 12));
        let f = Fp::new(5).unwrap();
        let got = grid_resolution_ext1(&iv("[1,3)"), &iv("[2,4)"), &layout, f).unwrap();
        assert_eq!(decompose(&got), bc(&["[-1,1)"]));
        let same = grid_resolution_ext1(&iv("[0,3)"), &iv("[0,3)"), &layout, f).unwrap();
        assert_eq!(decompose(&same), bc(&["[-3,0)"]));
        let sheaf = grid_resolution_sh_ext1(&iv("[0,2)"), &iv("[1,3)"), &layout, f).unwrap();
        assert_eq!(decompose(&sheaf), bc(&["[-12,1)"]));
    }

    #[test]
    fn closed_ends_have_no_resolution() {
        let layout = Layout::uniform(Window::line(-8, 8));
        let err = grid_resolution_tor1(&iv("(0,1)"), &iv("[0,1)"), &layout, Fp::default()).unwrap_err();
        assert!(matches!(err, Error::UnsupportedShape { .. }));
    }
}
