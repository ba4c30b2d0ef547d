use super::field::{FieldElem, Fp, Matrix};
use super::module::{GridModule, Point, Window};
use crate::error::{Error, Result};

/// Dimension of `lim_{x∈U} M` together with a basis of global sections.
fn sections(m: &GridModule, member: &dyn Fn(Point) -> bool) -> (Vec<(Point, usize)>, Vec<Vec<FieldElem>>) {
    let w = m.window();
    let f = m.field();
    let mut offsets = Vec::new();
    let mut unknowns = 0;
    for x in w.points().filter(|&x| member(x)) {
        offsets.push((x, unknowns));
        unknowns += m.dim(x);
    }
    let offset = |x: Point| offsets.iter().find(|(p, _)| *p == x).map(|(_, o)| *o);
    let mut equations = Vec::new();
    for &(x, ox) in &offsets {
        for axis in 0..w.rank() {
            let y = Window::step(x, axis);
            let Some(oy) = offset(y) else { continue };
            // step · v_x − v_y = 0
            let step = m.step(x, axis);
            for r in 0..step.rows() {
                let mut eq = vec![0; unknowns];
                for c in 0..step.cols() {
                    eq[ox + c] = step.get(r, c);
                }
                eq[oy + r] = f.sub(eq[oy + r], 1);
                equations.push(eq);
            }
        }
    }
    let system = Matrix::from_rows(equations.len(), unknowns, equations.concat());
    (offsets, system.kernel(f))
}

/// Whether `lim_W M → lim_U M` is onto for an up-set `U` of the window.
fn restriction_is_onto(m: &GridModule, global: &[Vec<FieldElem>], member: &dyn Fn(Point) -> bool, f: Fp) -> bool {
    let (offsets, local) = sections(m, member);
    let w = m.window();
    let global_offsets: Vec<usize> = {
        let mut acc = 0;
        w.points()
            .map(|x| {
                let o = acc;
                acc += m.dim(x);
                o
            })
            .collect()
    };
    let restricted: Vec<Vec<FieldElem>> = global
        .iter()
        .map(|v| {
            offsets
                .iter()
                .flat_map(|&(x, _)| {
                    let o = global_offsets[w.index(x).expect("point in window")];
                    v[o..o + m.dim(x)].iter().copied()
                })
                .collect()
        })
        .collect();
    let ambient: usize = offsets.iter().map(|&(x, _)| m.dim(x)).sum();
    let rank = if restricted.is_empty() || ambient == 0 {
        0
    } else {
        Matrix::from_rows(restricted.len(), ambient, restricted.concat()).rank(f)
    };
    rank == local.len()
}

fn principal(a: Point, rank: usize) -> impl Fn(Point) -> bool {
    move |y: Point| (0..rank).all(|k| y[k] >= a[k])
}

/// Flabbiness test: every checked restriction from global sections is onto.
/// One-dimensional windows check every up-set; two-dimensional ones check
/// unions of at most two principal up-sets.
pub fn is_flabby(m: &GridModule) -> bool {
    let w = m.window();
    let f = m.field();
    let all = |_: Point| true;
    let (_, global) = sections(m, &all);
    let points: Vec<Point> = w.points().collect();
    match w.rank() {
        1 => points
            .iter()
            .all(|&a| restriction_is_onto(m, &global, &principal(a, 1), f)),
        _ => points.iter().enumerate().all(|(k, &a)| {
            points[k..].iter().all(|&b| {
                let (ua, ub) = (principal(a, 2), principal(b, 2));
                restriction_is_onto(m, &global, &|y| ua(y) || ub(y), f)
            })
        }),
    }
}

/// A down-closed set of points of a square window.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DownSet {
    window: Window,
    members: Vec<bool>,
}

impl DownSet {
    pub fn new(window: Window, members: Vec<bool>) -> Result<Self> {
        if window.rank() != 2 || members.len() != window.len() {
            return Err(Error::InvalidModule("down-sets live on square windows".into()));
        }
        let d = DownSet { window, members };
        for x in window.points().filter(|&x| d.contains(x)) {
            for axis in 0..2 {
                let mut y = x;
                y[axis] -= 1;
                if window.contains(y) && !d.contains(y) {
                    return Err(Error::InvalidModule(format!("{x:?} is in the set but {y:?} is not")));
                }
            }
        }
        Ok(d)
    }

    pub fn from_fn(window: Window, member: impl Fn(Point) -> bool) -> Result<Self> {
        DownSet::new(window, window.points().map(member).collect())
    }

    /// The points below `a`.
    pub fn principal(window: Window, a: Point) -> Self {
        DownSet::from_fn(window, |x| x[0] <= a[0] && x[1] <= a[1]).expect("principal sets are down-closed")
    }

    /// Down-set under a staircase: column `i` (from the low edge) keeps its
    /// lowest `heights[i]` points; heights must be nonincreasing.
    pub fn staircase(window: Window, heights: &[usize]) -> Result<Self> {
        let lo = window.lo();
        DownSet::from_fn(window, |x| {
            heights.get((x[0] - lo) as usize).is_some_and(|&h| ((x[1] - lo) as usize) < h)
        })
    }

    pub fn union(&self, other: &DownSet) -> DownSet {
        assert_eq!(self.window, other.window, "down-sets on different windows");
        let members = self.members.iter().zip(&other.members).map(|(a, b)| *a || *b).collect();
        DownSet {
            window: self.window,
            members,
        }
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn contains(&self, x: Point) -> bool {
        self.window.index(x).is_some_and(|k| self.members[k])
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.window.points().filter(|&x| self.contains(x))
    }

    pub fn indicator(&self, field: Fp) -> GridModule {
        GridModule::indicator(self.window, field, |x| self.contains(x)).expect("down-sets are convex")
    }

    /// Every down-set of a square window, one per monotone staircase.
    pub fn enumerate(window: Window) -> Vec<DownSet> {
        let side = (window.hi() - window.lo() + 1) as usize;
        let mut out = Vec::new();
        let mut heights = vec![0; side];
        fn rec(col: usize, max: usize, heights: &mut Vec<usize>, window: Window, out: &mut Vec<DownSet>) {
            if col == heights.len() {
                out.push(DownSet::staircase(window, heights).expect("staircases are down-closed"));
                return;
            }
            for h in 0..=max {
                heights[col] = h;
                rec(col + 1, h, heights, window, out);
            }
        }
        rec(0, side, &mut heights, window, &mut out);
        out
    }
}

/// Whether the down-set is closed under pairwise joins.
pub fn join_closed_downset_injective(d: &DownSet) -> bool {
    let points: Vec<Point> = d.points().collect();
    points.iter().all(|a| {
        points
            .iter()
            .all(|b| d.contains([a[0].max(b[0]), a[1].max(b[1])]))
    })
}
