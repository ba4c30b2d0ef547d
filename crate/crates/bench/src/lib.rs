//! Deterministic inputs shared by the benchmarks.

use persalg::complex::{chain_complex, FilteredComplex, FreeChainComplex};
use persalg::oracle::Fp;
use persalg::{Barcode, Interval};

/// `n` bars `[a, a + len)` with `a` cycling through `[-spread, spread]` and
/// lengths through `1..=spread`.
pub fn bars(n: usize, spread: i64) -> Barcode {
    let width = 2 * spread + 1;
    let bars = (0..n as i64)
        .map(|k| {
            let a = (7 * k) % width - spread;
            let len = (3 * k) % spread + 1;
            Interval::half_open(a, a + len).unwrap()
        })
        .collect();
    Barcode::new(bars)
}

/// One interval of every half-open shape, each paired with every other.
pub fn interval_pairs() -> Vec<(Interval, Interval)> {
    let shapes = [
        Interval::half_open(0, 3).unwrap(),
        Interval::half_open(-2, 5).unwrap(),
        Interval::up_ray(1).unwrap(),
        Interval::down_ray(2).unwrap(),
        Interval::line(),
    ];
    shapes.iter().flat_map(|i| shapes.iter().map(move |j| (*i, *j))).collect()
}

/// Filtration text for the triangulated `side × side` grid of vertices.
/// Vertex values are scrambled so that finite bars appear in degrees 0 and 1.
pub fn grid_filtration(side: usize) -> String {
    let value = |x: usize, y: usize| (x * 3 + y * 7) % 5 + x + y;
    let v = |x: usize, y: usize| format!("v{x}_{y}");
    let mut text = String::new();
    for x in 0..side {
        for y in 0..side {
            text += &format!("cell {} dim 0 val {}\n", v(x, y), value(x, y));
        }
    }
    let edge = |a: (usize, usize), b: (usize, usize), text: &mut String| {
        let id = format!("e{}_{}_{}_{}", a.0, a.1, b.0, b.1);
        let val = value(a.0, a.1).max(value(b.0, b.1));
        *text += &format!("cell {id} dim 1 val {val} bdry +{} -{}\n", v(b.0, b.1), v(a.0, a.1));
        id
    };
    for x in 0..side {
        for y in 0..side {
            if x + 1 < side {
                edge((x, y), (x + 1, y), &mut text);
            }
            if y + 1 < side {
                edge((x, y), (x, y + 1), &mut text);
            }
        }
    }
    for x in 0..side.saturating_sub(1) {
        for y in 0..side - 1 {
            // Diagonal (x,y)-(x+1,y+1) splits the square into two triangles.
            let d = edge((x, y), (x + 1, y + 1), &mut text);
            let low = format!("e{x}_{y}_{}_{y}", x + 1);
            let right = format!("e{}_{y}_{}_{}", x + 1, x + 1, y + 1);
            let left = format!("e{x}_{y}_{x}_{}", y + 1);
            let top = format!("e{x}_{}_{}_{}", y + 1, x + 1, y + 1);
            // Triangles enter after their last vertex, so after every edge.
            let a = value(x, y).max(value(x + 1, y)).max(value(x + 1, y + 1));
            let b = value(x, y).max(value(x, y + 1)).max(value(x + 1, y + 1));
            text += &format!("cell t{x}_{y}a dim 2 val {} bdry +{low} +{right} -{d}\n", a + 1);
            text += &format!("cell t{x}_{y}b dim 2 val {} bdry +{left} +{top} -{d}\n", b + 2);
        }
    }
    text
}

pub fn grid_complex(side: usize) -> FreeChainComplex {
    let x: FilteredComplex = grid_filtration(side).parse().unwrap();
    chain_complex(&x, Fp::default()).expect("valid grid filtration")
}
