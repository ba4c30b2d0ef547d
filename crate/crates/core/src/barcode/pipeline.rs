use std::fmt;
use std::str::FromStr;

use super::{Barcode, GradedBarcode};
use crate::error::{Error, Result};
use crate::interval::{self, Interval, MaybeInterval};

/// The interval bifunctors that extend bilinearly to barcodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bifunctor {
    GrTensor,
    ShTensor,
    UnderlineHom,
    SheafHom,
    GrTor1,
    GrExt1,
    ShExt1,
}

/// Which tensor–hom pair a pipeline uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Graded,
    Sheaf,
}

impl Bifunctor {
    pub const ALL: [Bifunctor; 7] = [
        Bifunctor::GrTensor,
        Bifunctor::ShTensor,
        Bifunctor::UnderlineHom,
        Bifunctor::SheafHom,
        Bifunctor::GrTor1,
        Bifunctor::GrExt1,
        Bifunctor::ShExt1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Bifunctor::GrTensor => "gr_tensor",
            Bifunctor::ShTensor => "sh_tensor",
            Bifunctor::UnderlineHom => "underline_hom",
            Bifunctor::SheafHom => "sheaf_hom",
            Bifunctor::GrTor1 => "gr_tor1",
            Bifunctor::GrExt1 => "gr_ext1",
            Bifunctor::ShExt1 => "sh_ext1",
        }
    }

    pub fn apply(self, i: &Interval, j: &Interval) -> Result<MaybeInterval> {
        match self {
            Bifunctor::GrTensor => interval::gr_tensor(i, j),
            Bifunctor::ShTensor => Ok(interval::sh_tensor(i, j)),
            Bifunctor::UnderlineHom => interval::underline_hom(i, j),
            Bifunctor::SheafHom => interval::sheaf_hom(i, j),
            Bifunctor::GrTor1 => interval::gr_tor1(i, j),
            Bifunctor::GrExt1 => interval::gr_ext1(i, j),
            Bifunctor::ShExt1 => interval::sh_ext1(i, j),
        }
    }
}

impl fmt::Display for Bifunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Bifunctor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Bifunctor::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown bifunctor {s:?}")))
    }
}

impl Mode {
    pub fn tensor(self) -> Bifunctor {
        match self {
            Mode::Graded => Bifunctor::GrTensor,
            Mode::Sheaf => Bifunctor::ShTensor,
        }
    }

    pub fn hom(self) -> Bifunctor {
        match self {
            Mode::Graded => Bifunctor::UnderlineHom,
            Mode::Sheaf => Bifunctor::SheafHom,
        }
    }

    /// Tor term of the Künneth sequence; the sheaf tensor is exact.
    pub fn tor(self) -> Option<Bifunctor> {
        match self {
            Mode::Graded => Some(Bifunctor::GrTor1),
            Mode::Sheaf => None,
        }
    }

    pub fn ext(self) -> Bifunctor {
        match self {
            Mode::Graded => Bifunctor::GrExt1,
            Mode::Sheaf => Bifunctor::ShExt1,
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graded" => Ok(Mode::Graded),
            "sheaf" => Ok(Mode::Sheaf),
            _ => Err(Error::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

/// Applies `op` to every pair of bars and collects the nonzero results.
pub fn bc_apply(op: Bifunctor, b1: &Barcode, b2: &Barcode) -> Result<Barcode> {
    let mut out = Vec::new();
    for i in b1 {
        for j in b2 {
            match op.apply(i, j) {
                Ok(MaybeInterval::Interval(r)) => out.push(r),
                Ok(MaybeInterval::Zero) => {}
                Err(Error::UnsupportedShape { .. }) => {
                    return Err(Error::UnsupportedShape {
                        op: op.name(),
                        args: format!("({i}, {j})"),
                    })
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(Barcode::new(out))
}

pub fn bc_equals(b1: &Barcode, b2: &Barcode) -> bool {
    b1 == b2
}

/// Predicted homology of the tensor product of two complexes: degree n
/// collects tensors over p+q = n and, in graded mode, Tor over p+q = n−1.
pub fn kunneth_homology(hk: &GradedBarcode, hl: &GradedBarcode, mode: Mode) -> Result<GradedBarcode> {
    let mut out = GradedBarcode::new();
    for (p, bk) in hk.degrees() {
        for (q, bl) in hl.degrees() {
            out.extend(p + q, &bc_apply(mode.tensor(), bk, bl)?);
            if let Some(tor) = mode.tor() {
                out.extend(p + q + 1, &bc_apply(tor, bk, bl)?);
            }
        }
    }
    Ok(out)
}

/// Predicted homology of a complex tensored with the coefficient module k[a].
pub fn uct_homology(hk: &GradedBarcode, a: &Interval, mode: Mode) -> Result<GradedBarcode> {
    let coef = Barcode::new(vec![*a]);
    let mut out = GradedBarcode::new();
    for (n, bars) in hk.degrees() {
        out.extend(n, &bc_apply(mode.tensor(), bars, &coef)?);
        if let Some(tor) = mode.tor() {
            out.extend(n + 1, &bc_apply(tor, bars, &coef)?);
        }
    }
    Ok(out)
}

/// Predicted cohomology of the hom complex into the coefficient module k[a].
pub fn uct_cohomology(hk: &GradedBarcode, a: &Interval, mode: Mode) -> Result<GradedBarcode> {
    let coef = Barcode::new(vec![*a]);
    let mut out = GradedBarcode::new();
    for (n, bars) in hk.degrees() {
        out.extend(n, &bc_apply(mode.hom(), bars, &coef)?);
        out.extend(n + 1, &bc_apply(mode.ext(), bars, &coef)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bc(items: &[&str]) -> Barcode {
        Barcode::parse_list(items).unwrap()
    }

    fn iv(s: &str) -> Interval {
        s.parse().unwrap()
    }

    fn triangle() -> GradedBarcode {
        GradedBarcode::new()
            .with(0, bc(&["[0,inf)", "[1,3)", "[2,4)"]))
            .with(1, bc(&["[5,6)"]))
    }

    #[test]
    fn apply_is_pairwise_and_drops_zeros() {
        let got = bc_apply(Bifunctor::GrTensor, &bc(&["[0,1)", "[2,3)"]), &bc(&["[0,2)"])).unwrap();
        assert_eq!(got, bc(&["[0,1)", "[2,3)"]));
        let tor = bc_apply(Bifunctor::GrTor1, &bc(&["[3,inf)"]), &bc(&["[0,1)", "[4,9)"])).unwrap();
        assert!(tor.is_empty());
    }

    #[test]
    fn apply_names_the_offending_pair() {
        let err = bc_apply(Bifunctor::GrTensor, &bc(&["[0,1)"]), &bc(&["(0,1]"])).unwrap_err();
        assert_eq!(
            err,
            Error::UnsupportedShape {
                op: "gr_tensor",
                args: "([0,1), (0,1])".into()
            }
        );
    }

    #[test]
    fn kunneth_one_simplices() {
        let k = GradedBarcode::new().with(0, bc(&["[0,inf)", "[1,2)"]));
        let l = GradedBarcode::new().with(0, bc(&["[0,inf)", "[1,3)"]));
        let graded = kunneth_homology(&k, &l, Mode::Graded).unwrap();
        assert_eq!(graded.get(0), bc(&["[0,inf)", "[1,3)", "[1,2)", "[2,3)"]));
        assert_eq!(graded.get(1), bc(&["[4,5)"]));
        let sheaf = kunneth_homology(&k, &l, Mode::Sheaf).unwrap();
        assert_eq!(sheaf.get(0), bc(&["[0,inf)", "[1,3)", "[1,2)", "[1,2)"]));
        assert_eq!(sheaf.max_degree(), Some(0));
    }

    #[test]
    fn uct_examples() {
        let h = triangle();
        let tensor = uct_homology(&h, &iv("(-inf,0)"), Mode::Graded).unwrap();
        assert_eq!(tensor.get(0), bc(&["(-inf,0)"]));
        assert_eq!(tensor.get(1), bc(&["[1,3)", "[2,4)"]));
        assert_eq!(tensor.get(2), bc(&["[5,6)"]));

        let line = uct_homology(&h, &Interval::line(), Mode::Graded).unwrap();
        assert_eq!(line, GradedBarcode::new().with(0, bc(&["(-inf,inf)"])));

        let ray = uct_cohomology(&h, &iv("[10,inf)"), Mode::Graded).unwrap();
        assert_eq!(ray.get(0), bc(&["[10,inf)"]));
        assert_eq!(ray.get(1), bc(&["[6,8)", "[7,9)"]));
        assert_eq!(ray.get(2), bc(&["[4,5)"]));

        let sheaf = uct_cohomology(&h, &iv("[3/2,20)"), Mode::Sheaf).unwrap();
        assert_eq!(sheaf.get(0), bc(&["[3/2,20)"]));
        assert_eq!(sheaf.get(1), bc(&["(-inf,3/2)"]));
        assert!(sheaf.get(2).is_empty());
    }

    #[test]
    fn unit_coefficient_is_identity() {
        let h = triangle();
        assert_eq!(uct_homology(&h, &iv("[0,inf)"), Mode::Graded).unwrap(), h);
        assert_eq!(uct_homology(&h, &Interval::line(), Mode::Sheaf).unwrap(), h);
        assert!(uct_homology(&GradedBarcode::new(), &iv("[0,1)"), Mode::Graded).unwrap().is_empty());
    }
}
