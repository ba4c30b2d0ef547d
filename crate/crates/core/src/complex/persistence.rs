use super::chain::FreeChainComplex;
use crate::barcode::{Barcode, GradedBarcode};
use crate::interval::{Interval, Rational};
use crate::oracle::FieldElem;

/// Sparse column over the field, sorted by row.
type Column = Vec<(usize, FieldElem)>;

/// Barcodes of the homology of a free chain complex by column reduction of
/// the total boundary matrix. Generators are ordered by birth, then degree,
/// then id; zero-length bars are dropped.
pub fn persistence(k: &FreeChainComplex) -> GradedBarcode {
    let f = k.field();
    // (birth, degree, index within degree)
    let mut order: Vec<(Rational, usize, usize)> = (0..=k.top_degree())
        .flat_map(|n| k.generators(n).iter().enumerate().map(move |(i, g)| (g.birth, n, i)))
        .collect();
    order.sort_by(|x, y| {
        (x.0, x.1, &k.generators(x.1)[x.2].id).cmp(&(y.0, y.1, &k.generators(y.1)[y.2].id))
    });
    let mut slot = vec![Vec::new(); k.top_degree() + 1];
    for n in 0..=k.top_degree() {
        slot[n] = vec![0; k.generators(n).len()];
    }
    for (pos, &(_, n, i)) in order.iter().enumerate() {
        slot[n][i] = pos;
    }
    let mut columns: Vec<Column> = order
        .iter()
        .map(|&(_, n, i)| {
            if n == 0 {
                return Vec::new();
            }
            let d = k.boundary(n);
            let mut col: Column = (0..d.rows())
                .filter(|&r| d.get(r, i) != 0)
                .map(|r| (slot[n - 1][r], d.get(r, i)))
                .collect();
            col.sort_unstable();
            col
        })
        .collect();

    // owner[row] = column whose lowest entry sits in that row.
    let mut owner: Vec<Option<usize>> = vec![None; order.len()];
    for j in 0..columns.len() {
        while let Some(&(low, x)) = columns[j].last() {
            let Some(i) = owner[low] else {
                owner[low] = Some(j);
                break;
            };
            let y = *columns[i].last().expect("owner columns are nonzero");
            let factor = f.neg(f.mul(x, f.inv(y.1)));
            columns[j] = add_scaled(&columns[j], &columns[i], factor, f);
        }
    }

    let mut out = GradedBarcode::new();
    let mut killed = vec![false; order.len()];
    for (row, j) in owner.iter().enumerate() {
        if let Some(j) = *j {
            killed[row] = true;
            let (birth, n, _) = order[row];
            let death = order[j].0;
            if birth < death {
                out.extend(n, &Barcode::new(vec![Interval::half_open(birth, death).expect("birth < death")]));
            }
        }
    }
    for (j, &(birth, n, _)) in order.iter().enumerate() {
        if !killed[j] && columns[j].is_empty() {
            out.extend(n, &Barcode::new(vec![Interval::up_ray(birth).expect("finite birth")]));
        }
    }
    out
}

fn add_scaled(a: &Column, b: &Column, c: FieldElem, f: crate::oracle::Fp) -> Column {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&(ra, xa)), Some(&(rb, _))) if ra < rb => {
                i += 1;
                (ra, xa)
            }
            (Some(&(ra, _)), Some(&(rb, xb))) if rb < ra => {
                j += 1;
                (rb, f.mul(c, xb))
            }
            (Some(&(r, xa)), Some(&(_, xb))) => {
                i += 1;
                j += 1;
                (r, f.add(xa, f.mul(c, xb)))
            }
            (Some(&(r, xa)), None) => {
                i += 1;
                (r, xa)
            }
            (None, Some(&(r, xb))) => {
                j += 1;
                (r, f.mul(c, xb))
            }
            (None, None) => unreachable!("loop condition"),
        };
        if next.1 != 0 {
            out.push(next);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::chain::chain_complex;
    use super::super::filtration::FilteredComplex;
    use super::*;
    use crate::oracle::Fp;

    fn bc(items: &[&str]) -> Barcode {
        Barcode::parse_list(items).unwrap()
    }

    #[test]
    fn triangle_barcodes() {
        let x: FilteredComplex = "\
cell a dim 0 val 0
cell b dim 0 val 1
cell c dim 0 val 2
cell ab dim 1 val 3 bdry +b -a
cell bc dim 1 val 4 bdry +c -b
cell ac dim 1 val 5 bdry +c -a
cell abc dim 2 val 6 bdry +bc -ac +ab"
            .parse()
            .unwrap();
        for p in [2, 3, 5] {
            let h = persistence(&chain_complex(&x, Fp::new(p).unwrap()).unwrap());
            assert_eq!(h.get(0), bc(&["[0,inf)", "[1,3)", "[2,4)"]));
            assert_eq!(h.get(1), bc(&["[5,6)"]));
            assert!(h.get(2).is_empty());
        }
    }

    #[test]
    fn zero_boundaries_give_rays() {
        let x: FilteredComplex = "cell a dim 0 val 2\ncell b dim 0 val 1/2".parse().unwrap();
        let h = persistence(&chain_complex(&x, Fp::default()).unwrap());
        assert_eq!(h.get(0), bc(&["[1/2,inf)", "[2,inf)"]));
    }

    #[test]
    fn simultaneous_births_leave_no_bar() {
        let x: FilteredComplex = "cell a dim 0 val 0\ncell b dim 0 val 1\ncell e dim 1 val 1 bdry +b -a".parse().unwrap();
        let h = persistence(&chain_complex(&x, Fp::default()).unwrap());
        assert_eq!(h.get(0), bc(&["[0,inf)"]));
        assert!(h.get(1).is_empty());
    }
}
