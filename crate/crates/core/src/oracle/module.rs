use super::field::{FieldElem, Fp, Matrix};
use crate::barcode::Barcode;
use crate::error::{Error, Result};
use crate::interval::{Endpoint, Interval, Rational, Rectangle};

/// A grid point; one-dimensional windows use only the first coordinate.
pub type Point = [i64; 2];

/// A finite box of ℤ or ℤ², both ends inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Window {
    Line { lo: i64, hi: i64 },
    Square { lo: i64, hi: i64 },
}

impl Window {
    pub fn line(lo: i64, hi: i64) -> Window {
        assert!(lo <= hi, "empty window");
        Window::Line { lo, hi }
    }

    pub fn square(lo: i64, hi: i64) -> Window {
        assert!(lo <= hi, "empty window");
        Window::Square { lo, hi }
    }

    pub fn rank(self) -> usize {
        match self {
            Window::Line { .. } => 1,
            Window::Square { .. } => 2,
        }
    }

    pub fn bounds(self) -> (i64, i64) {
        match self {
            Window::Line { lo, hi } | Window::Square { lo, hi } => (lo, hi),
        }
    }

    pub fn lo(self) -> i64 {
        self.bounds().0
    }

    pub fn hi(self) -> i64 {
        self.bounds().1
    }

    fn side(self) -> usize {
        let (lo, hi) = self.bounds();
        (hi - lo + 1) as usize
    }

    pub fn len(self) -> usize {
        self.side().pow(self.rank() as u32)
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn contains(self, p: Point) -> bool {
        let (lo, hi) = self.bounds();
        let inside = |x: i64| lo <= x && x <= hi;
        match self {
            Window::Line { .. } => inside(p[0]) && p[1] == 0,
            Window::Square { .. } => inside(p[0]) && inside(p[1]),
        }
    }

    pub fn index(self, p: Point) -> Option<usize> {
        if !self.contains(p) {
            return None;
        }
        let lo = self.lo();
        Some(match self {
            Window::Line { .. } => (p[0] - lo) as usize,
            Window::Square { .. } => (p[0] - lo) as usize * self.side() + (p[1] - lo) as usize,
        })
    }

    pub fn point(self, idx: usize) -> Point {
        let lo = self.lo();
        match self {
            Window::Line { .. } => [lo + idx as i64, 0],
            Window::Square { .. } => {
                let side = self.side();
                [lo + (idx / side) as i64, lo + (idx % side) as i64]
            }
        }
    }

    pub fn points(self) -> impl Iterator<Item = Point> {
        (0..self.len()).map(move |k| self.point(k))
    }

    pub fn step(p: Point, axis: usize) -> Point {
        let mut q = p;
        q[axis] += 1;
        q
    }

    pub fn union(self, other: Window) -> Window {
        assert_eq!(self.rank(), other.rank(), "windows of different rank");
        let lo = self.lo().min(other.lo());
        let hi = self.hi().max(other.hi());
        match self {
            Window::Line { .. } => Window::line(lo, hi),
            Window::Square { .. } => Window::square(lo, hi),
        }
    }

    pub fn covers(self, other: Window) -> bool {
        self.rank() == other.rank() && self.lo() <= other.lo() && other.hi() <= self.hi()
    }
}

/// A persistence module on a grid window, zero outside the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridModule {
    window: Window,
    field: Fp,
    dims: Vec<usize>,
    /// `steps[axis][k]` maps the space at point `k` to the space one unit
    /// further along `axis`; it has zero rows when that point leaves the window.
    steps: Vec<Vec<Matrix>>,
}

impl GridModule {
    pub fn new(window: Window, field: Fp, dims: Vec<usize>, steps: Vec<Vec<Matrix>>) -> Result<Self> {
        let m = GridModule {
            window,
            field,
            dims,
            steps,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn zero(window: Window, field: Fp) -> GridModule {
        GridModule::from_dims(window, field, vec![0; window.len()], |_, _, rows, cols| {
            Matrix::zeros(rows, cols)
        })
    }

    /// Builds a module from its dimensions and a step-matrix callback
    /// `(point, axis, target dim, source dim)`; used internally where
    /// functoriality holds by construction.
    pub(crate) fn from_dims(
        window: Window,
        field: Fp,
        dims: Vec<usize>,
        mut step: impl FnMut(Point, usize, usize, usize) -> Matrix,
    ) -> GridModule {
        let steps = (0..window.rank())
            .map(|axis| {
                window
                    .points()
                    .map(|p| {
                        let target = window
                            .index(Window::step(p, axis))
                            .map_or(0, |k| dims[k]);
                        let source = dims[window.index(p).expect("point in window")];
                        if target == 0 || source == 0 {
                            Matrix::zeros(target, source)
                        } else {
                            step(p, axis, target, source)
                        }
                    })
                    .collect()
            })
            .collect();
        GridModule {
            window,
            field,
            dims,
            steps,
        }
    }

    fn validate(&self) -> Result<()> {
        let w = self.window;
        let bad = |m: String| Err(Error::InvalidModule(m));
        if self.dims.len() != w.len() || self.steps.len() != w.rank() {
            return bad("dimension table does not match the window".into());
        }
        for axis in 0..w.rank() {
            if self.steps[axis].len() != w.len() {
                return bad(format!("axis {axis} has the wrong number of steps"));
            }
            for (k, p) in w.points().enumerate() {
                let target = w.index(Window::step(p, axis)).map_or(0, |t| self.dims[t]);
                let m = &self.steps[axis][k];
                if (m.rows(), m.cols()) != (target, self.dims[k]) {
                    return bad(format!("step at {p:?} along axis {axis} has the wrong shape"));
                }
            }
        }
        if w.rank() == 2 && !self.commutes() {
            return bad("unit squares do not commute".into());
        }
        Ok(())
    }

    /// Both composites around every unit square agree.
    pub fn commutes(&self) -> bool {
        let w = self.window;
        w.points().all(|p| {
            let (Some(px), Some(py)) = (w.index(Window::step(p, 0)), w.index(Window::step(p, 1)))
            else {
                return true;
            };
            let k = w.index(p).expect("point in window");
            let via_x = self.steps[1][px].mul(&self.steps[0][k], self.field);
            let via_y = self.steps[0][py].mul(&self.steps[1][k], self.field);
            via_x == via_y
        })
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Dimension at a point; zero outside the window.
    pub fn dim(&self, p: Point) -> usize {
        self.window.index(p).map_or(0, |k| self.dims[k])
    }

    /// Step matrix out of `p` along `axis`; `p` must lie in the window.
    pub fn step(&self, p: Point, axis: usize) -> &Matrix {
        &self.steps[axis][self.window.index(p).expect("point in window")]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Composite of the unit steps from `x` to `y ≥ x` in one dimension.
    pub fn composite(&self, x: i64, y: i64) -> Matrix {
        assert_eq!(self.window.rank(), 1, "composite is one-dimensional");
        let mut acc = Matrix::identity(self.dim([x, 0]));
        for z in x..y {
            if !self.window.contains([z, 0]) {
                return Matrix::zeros(self.dim([y, 0]), self.dim([x, 0]));
            }
            acc = self.step([z, 0], 0).mul(&acc, self.field);
        }
        acc
    }

    /// Extension by zero to a larger window.
    pub fn pad_to(&self, window: Window) -> Result<GridModule> {
        if !window.covers(self.window) {
            return Err(Error::InvalidModule(format!(
                "cannot pad {:?} into {:?}",
                self.window, window
            )));
        }
        let dims = window.points().map(|p| self.dim(p)).collect();
        Ok(GridModule::from_dims(window, self.field, dims, |p, axis, _, _| {
            self.step(p, axis).clone()
        }))
    }

    /// Changes basis at every point: the step out of `p` becomes
    /// `Q_{p+e} · step · Q_p^{-1}`. Each `bases[k]` must be invertible.
    pub fn conjugate(&self, bases: &[Matrix]) -> Result<GridModule> {
        let f = self.field;
        let w = self.window;
        let inverses = bases
            .iter()
            .map(|q| q.inverse(f).ok_or_else(|| Error::InvalidModule("singular change of basis".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(GridModule::from_dims(w, f, self.dims.clone(), |p, axis, _, _| {
            let k = w.index(p).expect("point in window");
            let t = w.index(Window::step(p, axis)).expect("nonzero target lies in the window");
            bases[t].mul(&self.step(p, axis).mul(&inverses[k], f), f)
        }))
    }

    /// Indicator module of a convex set of grid points, with identity steps.
    pub fn indicator(window: Window, field: Fp, support: impl Fn(Point) -> bool) -> Result<GridModule> {
        let dims = window.points().map(|p| usize::from(support(p))).collect();
        let m = GridModule::from_dims(window, field, dims, |_, _, _, _| Matrix::identity(1));
        m.validate()?;
        Ok(m)
    }

    /// Direct sum, with the basis of `self` first at every point.
    pub fn direct_sum(&self, other: &GridModule) -> GridModule {
        assert_eq!(self.window, other.window, "direct sum needs a common window");
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        GridModule::from_dims(self.window, self.field, dims, |p, axis, rows, cols| {
            let mut m = Matrix::zeros(rows, cols);
            let a = self.step(p, axis);
            m.set_block(0, 0, a);
            m.set_block(a.rows(), a.cols(), other.step(p, axis));
            m
        })
    }
}

/// Where each operand of a binary operation is truncated, and the common
/// window both are then zero-extended into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Layout {
    pub first: Window,
    pub second: Window,
    pub ambient: Window,
}

impl Layout {
    pub fn uniform(window: Window) -> Layout {
        Layout {
            first: window,
            second: window,
            ambient: window,
        }
    }

    pub fn realize_first(&self, b: &Barcode, field: Fp) -> Result<GridModule> {
        realize(b, self.first, field)?.pad_to(self.ambient)
    }

    pub fn realize_second(&self, b: &Barcode, field: Fp) -> Result<GridModule> {
        realize(b, self.second, field)?.pad_to(self.ambient)
    }
}

fn grid_value(e: Endpoint) -> Option<Rational> {
    e.finite()
}

/// Restriction of an interval-decomposable module to the integer points of a
/// one-dimensional window; one basis vector per bar alive at each point.
pub fn realize(b: &Barcode, window: Window, field: Fp) -> Result<GridModule> {
    let Window::Line { lo, hi } = window else {
        return Err(Error::InvalidModule("realize expects a one-dimensional window".into()));
    };
    for bar in b {
        for e in [bar.lo(), bar.hi()] {
            if let Some(q) = grid_value(e) {
                if !(Rational::from_integer(lo) < q && q < Rational::from_integer(hi)) {
                    return Err(Error::WindowTooSmall {
                        lo,
                        hi,
                        endpoint: q.to_string(),
                    });
                }
            }
        }
    }
    let spans: Vec<Option<(i64, i64)>> = b.iter().map(|bar| bar.integer_span(lo, hi)).collect();
    let alive = |x: i64| -> Vec<usize> {
        spans
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_some_and(|(a, z)| a <= x && x <= z))
            .map(|(k, _)| k)
            .collect()
    };
    let dims = window.points().map(|p| alive(p[0]).len()).collect();
    Ok(GridModule::from_dims(window, field, dims, |p, _, rows, cols| {
        let here = alive(p[0]);
        let next = alive(p[0] + 1);
        let mut m = Matrix::zeros(rows, cols);
        for (c, bar) in here.iter().enumerate() {
            if let Some(r) = next.iter().position(|x| x == bar) {
                m.set(r, c, 1);
            }
        }
        m
    }))
}

/// Indicator module of a rectangle on a two-dimensional window.
pub fn realize_rectangle(r: &Rectangle, window: Window, field: Fp) -> Result<GridModule> {
    if r.dim() != 2 || window.rank() != 2 {
        return Err(Error::DimensionMismatch {
            left: r.dim(),
            right: window.rank(),
        });
    }
    let inside = |f: &Interval, x: i64| f.contains(Rational::from_integer(x));
    GridModule::indicator(window, field, |p| {
        inside(&r.factors()[0], p[0]) && inside(&r.factors()[1], p[1])
    })
}

/// Barcode of a one-dimensional module from its rank function:
/// the multiplicity of `[s,t)` is
/// `rk(s,t−1) − rk(s,t) − rk(s−1,t−1) + rk(s−1,t)`, with ranks vanishing
/// outside the window.
pub fn decompose(m: &GridModule) -> Barcode {
    let Window::Line { lo, hi } = m.window else {
        panic!("decompose expects a one-dimensional module");
    };
    let n = (hi - lo + 1) as usize;
    // rk[x][y] for lo ≤ x ≤ y ≤ hi, indexed from lo.
    let mut rk = vec![vec![0usize; n]; n];
    for x in 0..n {
        let mut acc = Matrix::identity(m.dims[x]);
        rk[x][x] = m.dims[x];
        for y in x + 1..n {
            acc = m.steps[0][y - 1].mul(&acc, m.field);
            rk[x][y] = acc.rank(m.field);
        }
    }
    let rank = |x: i64, y: i64| -> i64 {
        if x < lo || y > hi || x > y {
            0
        } else {
            rk[(x - lo) as usize][(y - lo) as usize] as i64
        }
    };
    let mut bars = Vec::new();
    for s in lo..=hi {
        for t in s + 1..=hi + 1 {
            let mult = rank(s, t - 1) - rank(s, t) - rank(s - 1, t - 1) + rank(s - 1, t);
            debug_assert!(mult >= 0, "rank function is not that of a module");
            for _ in 0..mult {
                bars.push(Interval::half_open(s, t).expect("s < t"));
            }
        }
    }
    Barcode::new(bars)
}

/// A random invertible matrix, built from random elementary operations so
/// that the distribution does not depend on rejection sampling.
pub fn random_invertible(n: usize, f: Fp, rng: &mut impl rand::Rng) -> Matrix {
    let p = f.prime();
    let mut m = Matrix::identity(n);
    for k in 0..n {
        let unit: FieldElem = rng.random_range(1..p);
        for c in 0..n {
            let v = m.get(k, c);
            m.set(k, c, f.mul(v, unit));
        }
    }
    for _ in 0..3 * n * n {
        let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
        if a == b {
            continue;
        }
        let c: FieldElem = rng.random_range(0..p);
        for col in 0..n {
            let v = f.add(m.get(a, col), f.mul(c, m.get(b, col)));
            m.set(a, col, v);
        }
    }
    m
}

/// Conjugates every point of `m` by an independent random basis change.
pub fn scramble(m: &GridModule, rng: &mut impl rand::Rng) -> GridModule {
    let bases: Vec<Matrix> = m
        .dims
        .iter()
        .map(|&d| random_invertible(d, m.field, rng))
        .collect();
    m.conjugate(&bases).expect("random bases are invertible")
}
