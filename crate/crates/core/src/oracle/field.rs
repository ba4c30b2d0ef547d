//! Dense linear algebra over a prime field.

use crate::error::{Error, Result};

/// A residue in `[0, p)`.
pub type FieldElem = u32;

pub const PRIME_ENV: &str = "PERSALG_PRIME";

/// The prime field GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

impl Default for Fp {
    fn default() -> Self {
        Fp { p: 2 }
    }
}

impl Fp {
    pub fn new(p: u32) -> Result<Fp> {
        let prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
        // Products of two residues must fit in u64 without overflow.
        if prime && p < (1 << 31) {
            Ok(Fp { p })
        } else {
            Err(Error::InvalidPrime(p))
        }
    }

    /// The prime named by `PERSALG_PRIME`, or GF(2).
    pub fn from_env() -> Result<Fp> {
        match std::env::var(PRIME_ENV) {
            Ok(v) => {
                let p = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("{PRIME_ENV}={v:?} is not an integer")))?;
                Fp::new(p)
            }
            Err(_) => Ok(Fp::default()),
        }
    }

    pub fn prime(self) -> u32 {
        self.p
    }

    pub fn elem(self, v: i64) -> FieldElem {
        v.rem_euclid(i64::from(self.p)) as u32
    }

    pub fn add(self, a: FieldElem, b: FieldElem) -> FieldElem {
        ((u64::from(a) + u64::from(b)) % u64::from(self.p)) as u32
    }

    pub fn sub(self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn neg(self, a: FieldElem) -> FieldElem {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(self, a: FieldElem, b: FieldElem) -> FieldElem {
        ((u64::from(a) * u64::from(b)) % u64::from(self.p)) as u32
    }

    pub fn inv(self, a: FieldElem) -> FieldElem {
        assert!(a != 0, "division by zero in GF({})", self.p);
        let (mut base, mut exp, mut acc) = (a, self.p - 2, 1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// `y ← y + c·x`, entrywise.
    fn axpy(self, y: &mut [FieldElem], c: FieldElem, x: &[FieldElem]) {
        if c == 0 {
            return;
        }
        let p = u64::from(self.p);
        for (yi, &xi) in y.iter_mut().zip(x) {
            if xi != 0 {
                *yi = ((u64::from(*yi) + u64::from(c) * u64::from(xi)) % p) as u32;
            }
        }
    }
}

/// Row-major matrix over GF(p). A `rows × cols` matrix maps `F^cols → F^rows`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for k in 0..n {
            m.set(k, k, 1);
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<FieldElem>) -> Matrix {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        Matrix { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<FieldElem>]) -> Matrix {
        let mut m = Matrix::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (r, &v) in col.iter().enumerate() {
                m.set(r, c, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElem {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<FieldElem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c));
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.set(r, c, self.get(r0 + r, c0 + c));
            }
        }
        out
    }

    pub fn scale(&self, c: FieldElem, f: Fp) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| f.mul(v, c)).collect(),
        }
    }

    pub fn add(&self, other: &Matrix, f: Fp) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix, f: Fp) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a != 0 {
                    f.axpy(dst, a, other.row(k));
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[FieldElem], f: Fp) -> Vec<FieldElem> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        let mut out = vec![0; self.rows];
        for (c, &x) in v.iter().enumerate() {
            if x != 0 {
                for (r, o) in out.iter_mut().enumerate() {
                    let a = self.get(r, c);
                    if a != 0 {
                        *o = f.add(*o, f.mul(a, x));
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    /// Kronecker product; basis order is `(i, j) ↦ i·dim_b + j`.
    pub fn kron(&self, other: &Matrix, f: Fp) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a == 0 {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        let b = other.get(r2, c2);
                        if b != 0 {
                            out.set(r1 * other.rows + r2, c1 * other.cols + c2, f.mul(a, b));
                        }
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self, f: Fp) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            if next == self.rows {
                break;
            }
            let Some(pr) = (next..self.rows).find(|&r| self.get(r, c) != 0) else {
                continue;
            };
            self.swap_rows(pr, next);
            let inv = f.inv(self.get(next, c));
            for v in &mut self.data[next * self.cols..(next + 1) * self.cols] {
                *v = f.mul(*v, inv);
            }
            let pivot_row = self.row(next).to_vec();
            for r in 0..self.rows {
                if r != next {
                    let x = self.get(r, c);
                    if x != 0 {
                        let dst = &mut self.data[r * self.cols..(r + 1) * self.cols];
                        f.axpy(dst, f.neg(x), &pivot_row);
                    }
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub fn rank(&self, f: Fp) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.clone().rref(f).len()
    }

    /// Basis of the null space, as vectors of length `cols`.
    pub fn kernel(&self, f: Fp) -> Vec<Vec<FieldElem>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0; self.cols];
                v[free] = 1;
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(m.get(r, free));
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self, f: Fp) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Matrix::identity(n));
        let pivots = aug.rref(f);
        (pivots.len() == n && pivots.iter().enumerate().all(|(k, &p)| k == p))
            .then(|| aug.block(0, n, n, n))
    }
}

/// A subspace of `F^ambient` held as an RREF basis, so that coordinates of a
/// member are its entries at the pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<FieldElem>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[Vec<FieldElem>], f: Fp) -> Subspace {
        let mut m = Matrix::zeros(vectors.len(), ambient);
        for (r, v) in vectors.iter().enumerate() {
            assert_eq!(v.len(), ambient, "spanning vector has the wrong length");
            for (c, &x) in v.iter().enumerate() {
                m.set(r, c, x);
            }
        }
        let pivots = m.rref(f);
        let basis = (0..pivots.len()).map(|r| m.row(r).to_vec()).collect();
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<FieldElem>] {
        &self.basis
    }

    /// `v` minus its component along the subspace; zero at every pivot column.
    pub fn reduce(&self, v: &[FieldElem], f: Fp) -> Vec<FieldElem> {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let x = out[p];
            if x != 0 {
                f.axpy(&mut out, f.neg(x), row);
            }
        }
        out
    }

    pub fn contains(&self, v: &[FieldElem], f: Fp) -> bool {
        self.reduce(v, f).iter().all(|&x| x == 0)
    }

    /// Coordinates of a member in the RREF basis.
    pub fn coords(&self, v: &[FieldElem], f: Fp) -> Vec<FieldElem> {
        debug_assert!(self.contains(v, f), "vector is not in the subspace");
        self.pivots.iter().map(|&p| v[p]).collect()
    }

    pub fn combine(&self, coords: &[FieldElem], f: Fp) -> Vec<FieldElem> {
        let mut out = vec![0; self.ambient];
        for (row, &c) in self.basis.iter().zip(coords) {
            f.axpy(&mut out, c, row);
        }
        out
    }

    /// Columns not used as pivots; they index a basis of the quotient.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }
}

/// `F^ambient / W` with the basis given by the free columns of `W`.
#[derive(Clone, Debug)]
pub struct Quotient {
    relations: Subspace,
    free: Vec<usize>,
}

impl Quotient {
    pub fn new(relations: Subspace) -> Quotient {
        let free = relations.free_columns();
        Quotient { relations, free }
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn ambient(&self) -> usize {
        self.relations.ambient()
    }

    pub fn project(&self, v: &[FieldElem], f: Fp) -> Vec<FieldElem> {
        let r = self.relations.reduce(v, f);
        self.free.iter().map(|&c| r[c]).collect()
    }

    pub fn lift(&self, coords: &[FieldElem]) -> Vec<FieldElem> {
        let mut v = vec![0; self.ambient()];
        for (&c, &x) in self.free.iter().zip(coords) {
            v[c] = x;
        }
        v
    }
}
