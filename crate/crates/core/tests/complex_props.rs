use proptest::prelude::*;

use persalg::complex::{
    chain_complex, coefficient_change, grid_persistence, grid_product_homology, persistence, product_complex,
    verify_kunneth, FilteredComplex, FreeChainComplex, ProductMode, Variance,
};
use persalg::oracle::Fp;
use persalg::{Error, Interval, Mode, Rational};

/// A filtered graph as filtration text: vertices with integer values, edges
/// born no earlier than their endpoints. At most 12 cells.
fn graph() -> impl Strategy<Value = String> {
    (1usize..=5)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(0i64..=4, n),
                prop::collection::vec((0..n, 0..n, 0i64..=3), 0..=(12 - n)),
            )
        })
        .prop_map(|(vertices, edges)| {
            let mut text = String::new();
            for (i, v) in vertices.iter().enumerate() {
                text += &format!("cell v{i} dim 0 val {v}\n");
            }
            for (k, &(i, j, extra)) in edges.iter().enumerate() {
                if i == j {
                    continue;
                }
                let birth = vertices[i].max(vertices[j]) + extra;
                text += &format!("cell e{k} dim 1 val {birth} bdry +v{j} -v{i}\n");
            }
            text
        })
}

/// A filtered 1-simplex with vertex values `a ≤ b` and edge value `c ≥ b`.
fn edge() -> impl Strategy<Value = String> {
    (0i64..=3, 0i64..=3, 0i64..=3).prop_map(|(a, db, dc)| {
        let (b, c) = (a + db, a + db + dc);
        format!("cell u dim 0 val {a}\ncell v dim 0 val {b}\ncell e dim 1 val {c} bdry +v -u\n")
    })
}

fn complex(text: &str, p: u32) -> FreeChainComplex {
    chain_complex(&text.parse::<FilteredComplex>().unwrap(), Fp::new(p).unwrap()).unwrap()
}

fn coefficient() -> impl Strategy<Value = Interval> {
    (0u8..4, -6i64..=6, 1i64..=6, any::<bool>()).prop_map(|(kind, a, len, half)| {
        let a = if half { Rational::new(2 * a + 1, 2) } else { Rational::from_integer(a) };
        match kind {
            0 | 1 => Interval::half_open(a, a + Rational::from_integer(len)).unwrap(),
            2 => Interval::up_ray(a).unwrap(),
            _ => Interval::down_ray(a).unwrap(),
        }
    })
}

/// Reverses the order of ids: `v3` becomes `n96`, `e0` becomes `m99`.
fn rename_id(id: &str) -> String {
    let (kind, index) = id.split_at(1);
    let index: u32 = index.parse().unwrap();
    format!("{}{}", if kind == "v" { "n" } else { "m" }, 99 - index)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn kunneth_holds_on_random_graphs(g in graph(), e in edge(), p in prop::sample::select(vec![2u32, 3, 5])) {
        let (k, l) = (complex(&g, p), complex(&e, p));
        for mode in [Mode::Graded, Mode::Sheaf] {
            let r = verify_kunneth(&k, &l, mode).unwrap();
            prop_assert!(r.verdict(), "{:?}: {} vs {}", mode, r.product, r.predicted);
        }
    }

    #[test]
    fn reduction_agrees_with_the_grid(g in graph(), p in prop::sample::select(vec![2u32, 5])) {
        let k = complex(&g, p);
        prop_assert_eq!(grid_persistence(&k).unwrap(), persistence(&k));
    }

    #[test]
    fn coefficient_routes_agree(
        g in graph(),
        a in coefficient(),
        variance in prop::sample::select(vec![Variance::Tensor, Variance::Hom]),
        mode in prop::sample::select(vec![Mode::Graded, Mode::Sheaf]),
    ) {
        let k = complex(&g, 5);
        let c = coefficient_change(&k, &a, variance, mode).unwrap();
        prop_assert!(c.agree(), "{} {} {:?}: {} vs {}", a, variance, mode, c.formula, c.direct);
    }

    #[test]
    fn tie_breaks_do_not_matter(g in graph(), seed in any::<u64>()) {
        // Rotate or reverse the cell lines and rename every id so that the
        // id order differs from the original.
        let rename = |t: &str| match t.strip_prefix(['+', '-']) {
            Some(id) => format!("{}{}", &t[..1], rename_id(id)),
            None if t.starts_with('v') || t.starts_with('e') => rename_id(t),
            None => t.to_string(),
        };
        let mut reordered: Vec<String> = g
            .lines()
            .map(|l| {
                let tokens: Vec<&str> = l.split_whitespace().collect();
                tokens
                    .iter()
                    .enumerate()
                    .map(|(k, t)| if k == 1 || k >= 7 { rename(t) } else { t.to_string() })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        let shift = (seed as usize) % reordered.len().max(1);
        reordered.rotate_left(shift);
        if seed % 2 == 0 {
            reordered.reverse();
        }
        let k = complex(&g, 3);
        let renamed = complex(&reordered.join("\n"), 3);
        prop_assert_eq!(persistence(&k), persistence(&renamed));
    }

    #[test]
    fn euler_characteristic_of_products(g in graph(), e in edge()) {
        let (k, l) = (complex(&g, 2), complex(&e, 2));
        for mode in [ProductMode::Additive, ProductMode::Max] {
            let p = product_complex(&k, &l, mode).unwrap();
            let h = persistence(&p);
            for x in -1..=12 {
                let x = Rational::from_integer(x);
                let sign = |n: usize| if n.is_multiple_of(2) { 1i64 } else { -1 };
                let homology: i64 = h
                    .degrees()
                    .map(|(n, bars)| sign(n) * bars.iter().filter(|b| b.contains(x)).count() as i64)
                    .sum();
                let chains: i64 = (0..=p.top_degree())
                    .map(|n| sign(n) * p.generators(n).iter().filter(|g| g.birth <= x).count() as i64)
                    .sum();
                prop_assert_eq!(homology, chains);
            }
        }
    }

    #[test]
    fn monotonicity_is_enforced(u in 0i64..=4, v in 0i64..=4, e in 0i64..=4) {
        let text = format!("cell u dim 0 val {u}\ncell v dim 0 val {v}\ncell e dim 1 val {e} bdry +v -u");
        let x: FilteredComplex = text.parse().unwrap();
        let result = chain_complex(&x, Fp::default());
        let late_face = u > e || v > e;
        prop_assert_eq!(matches!(result, Err(Error::NonMonotone { .. })), late_face);
        prop_assert_eq!(result.is_ok(), !late_face);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn tensoring_grid_complexes_matches_products(g in graph(), e in edge()) {
        let (k, l) = (complex(&g, 3), complex(&e, 3));
        for (mode, product_mode) in [(Mode::Graded, ProductMode::Additive), (Mode::Sheaf, ProductMode::Max)] {
            let direct = persistence(&product_complex(&k, &l, product_mode).unwrap());
            let grid = grid_product_homology(&k, &l, mode, -1, 16).unwrap();
            for n in 0..=2 {
                prop_assert_eq!(grid.get(n), direct.get(n).restrict_to_grid(-1, 16), "{:?} degree {}", mode, n);
            }
        }
    }
}
