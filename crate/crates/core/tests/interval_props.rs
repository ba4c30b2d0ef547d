use proptest::prelude::*;

use persalg::barcode::{bc_apply, uct_cohomology, uct_homology};
use persalg::interval::{
    classify, gr_tensor, gr_tor1, matlis_dual, sh_tensor, underline_hom, Endpoint, Interval, MaybeInterval, Rational,
};
use persalg::oracle::{decompose, grid_gr_tensor, grid_sh_tensor, realize, Fp, Layout, Window};
use persalg::{Barcode, Bifunctor, GradedBarcode, Mode, Shape};

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=4).prop_map(|(p, q)| Rational::new(p, q))
}

/// Any nonempty interval, every closedness allowed.
fn any_interval() -> impl Strategy<Value = Interval> {
    (
        prop::option::weighted(0.8, rational()),
        prop::option::weighted(0.8, rational()),
        any::<bool>(),
        any::<bool>(),
    )
        .prop_filter_map("empty", |(lo, hi, lc, hc)| {
            let lo = lo.map_or(Endpoint::NegInf, Endpoint::Finite);
            let hi = hi.map_or(Endpoint::PosInf, Endpoint::Finite);
            Interval::new(lo, lc && lo.is_finite(), hi, hc && hi.is_finite()).ok()
        })
}

/// `[a,b)`, `[a,∞)`, `(−∞,b)` or the line, with small integer endpoints.
fn half_open(range: i64) -> impl Strategy<Value = Interval> {
    (0..4u8, -range..=range, 1..=range).prop_map(|(kind, a, len)| match kind {
        0 | 1 => Interval::half_open(a, a + len).unwrap(),
        2 => Interval::up_ray(a).unwrap(),
        _ if len % 2 == 0 => Interval::line(),
        _ => Interval::down_ray(a).unwrap(),
    })
}

fn bar(range: i64) -> impl Strategy<Value = Interval> {
    (-range..=range, 1..=range).prop_map(|(a, len)| Interval::half_open(a, a + len).unwrap())
}

fn barcode(range: i64, max: usize) -> impl Strategy<Value = Barcode> {
    prop::collection::vec(half_open(range), 0..=max).prop_map(Barcode::new)
}

proptest! {
    #[test]
    fn grammar_round_trips(i in any_interval()) {
        let text = i.to_string();
        prop_assert_eq!(text.parse::<Interval>().unwrap(), i);
        let m = MaybeInterval::from(i);
        prop_assert_eq!(m.to_string().parse::<MaybeInterval>().unwrap(), m);
    }

    #[test]
    fn tensors_commute(i in half_open(6), j in half_open(6), x in any_interval(), y in any_interval()) {
        prop_assert_eq!(gr_tensor(&i, &j).unwrap(), gr_tensor(&j, &i).unwrap());
        prop_assert_eq!(sh_tensor(&x, &y), sh_tensor(&y, &x));
    }

    #[test]
    fn tensor_units(j in half_open(6), x in any_interval()) {
        prop_assert_eq!(gr_tensor(&Interval::up_ray(0).unwrap(), &j).unwrap(), MaybeInterval::from(j));
        prop_assert_eq!(sh_tensor(&Interval::line(), &x), MaybeInterval::from(x));
    }

    #[test]
    fn matlis_is_an_involution_exchanging_flat_and_injective(i in any_interval()) {
        let d = matlis_dual(&i);
        prop_assert_eq!(matlis_dual(&d), i);
        prop_assert_eq!(classify(&i).flat, classify(&d).injective);
        prop_assert_eq!(classify(&i).injective, classify(&d).flat);
    }

    #[test]
    fn projective_implies_flat(i in any_interval()) {
        let c = classify(&i);
        prop_assert!(!c.projective || c.flat);
    }

    #[test]
    fn tor_vanishes_on_flats(i in half_open(6), j in half_open(6)) {
        prop_assume!(classify(&i).flat);
        prop_assert_eq!(gr_tor1(&i, &j).unwrap(), MaybeInterval::Zero);
    }

    #[test]
    fn tensor_of_bars_keeps_the_shorter_persistence(i in bar(8), j in bar(8)) {
        let len = |x: &Interval| x.hi().finite().unwrap() - x.lo().finite().unwrap();
        if let MaybeInterval::Interval(t) = gr_tensor(&i, &j).unwrap() {
            prop_assert_eq!(len(&t), len(&i).min(len(&j)));
        }
    }

    #[test]
    fn hom_of_bars_is_half_open(i in bar(6), j in bar(6)) {
        if let MaybeInterval::Interval(h) = underline_hom(&i, &j).unwrap() {
            prop_assert_eq!(h.shape(), Some(Shape::Bar));
        }
    }

    #[test]
    fn bc_apply_is_bilinear(b1 in barcode(5, 3), b2 in barcode(5, 3), c in barcode(5, 3)) {
        for op in [Bifunctor::GrTensor, Bifunctor::ShTensor, Bifunctor::UnderlineHom, Bifunctor::SheafHom] {
            let whole = bc_apply(op, &b1.union(&b2), &c).unwrap();
            let parts = bc_apply(op, &b1, &c).unwrap().union(&bc_apply(op, &b2, &c).unwrap());
            prop_assert_eq!(whole, parts, "{}", op);
        }
    }

    #[test]
    fn unit_coefficients_change_nothing(b0 in barcode(5, 3), b1 in barcode(5, 3)) {
        let h = GradedBarcode::new().with(0, b0).with(1, b1);
        prop_assert_eq!(uct_homology(&h, &Interval::up_ray(0).unwrap(), Mode::Graded).unwrap(), h.clone());
        prop_assert_eq!(uct_homology(&h, &Interval::line(), Mode::Sheaf).unwrap(), h);
    }

    #[test]
    fn hom_into_a_ray_shifts_free_bars(births in prop::collection::vec(-5i64..=5, 1..4), alpha in -5i64..=5) {
        let rays: Vec<Interval> = births.iter().map(|&t| Interval::up_ray(t).unwrap()).collect();
        let h = GradedBarcode::new().with(0, Barcode::new(rays));
        let got = uct_cohomology(&h, &Interval::up_ray(alpha).unwrap(), Mode::Graded).unwrap();
        let want: Vec<Interval> = births.iter().map(|&t| Interval::up_ray(alpha - t).unwrap()).collect();
        prop_assert_eq!(got.get(0), Barcode::new(want));
    }

    #[test]
    fn grid_tensors_match_bc_apply(b1 in prop::collection::vec(bar(4), 1..=3), b2 in prop::collection::vec(bar(4), 1..=3)) {
        let (b1, b2) = (Barcode::new(b1), Barcode::new(b2));
        let f = Fp::new(5).unwrap();
        let layout = Layout::uniform(Window::line(-12, 20));
        let (m, n) = (layout.realize_first(&b1, f).unwrap(), layout.realize_second(&b2, f).unwrap());
        let gr = decompose(&grid_gr_tensor(&m, &n).unwrap());
        prop_assert_eq!(gr, bc_apply(Bifunctor::GrTensor, &b1, &b2).unwrap().restrict_to_grid(-12, 20));
        let sh = decompose(&grid_sh_tensor(&m, &n).unwrap());
        prop_assert_eq!(sh, bc_apply(Bifunctor::ShTensor, &b1, &b2).unwrap().restrict_to_grid(-12, 20));
    }

    #[test]
    fn decompose_inverts_realize(b in barcode(6, 5)) {
        let m = realize(&b, Window::line(-14, 14), Fp::default()).unwrap();
        prop_assert_eq!(decompose(&m), b.restrict_to_grid(-14, 14));
    }
}
