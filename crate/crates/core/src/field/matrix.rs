use std::fmt;

use super::{Cyc, CyclotomicField, Field, FieldOps, PrimeField, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Data {
    Prime(Vec<u32>),
    Cyclo(Vec<Cyc>),
}

/// Native storage access for each concrete field.
trait Storage: FieldOps {
    fn slice<'a>(&self, d: &'a Data) -> &'a [Self::Elem];
    fn slice_mut<'a>(&self, d: &'a mut Data) -> &'a mut [Self::Elem];
    fn wrap(&self, v: Vec<Self::Elem>) -> Data;
    fn elem(&self, s: &Scalar) -> Self::Elem;
    fn scalar(&self, e: &Self::Elem) -> Scalar;
}

impl Storage for PrimeField {
    fn slice<'a>(&self, d: &'a Data) -> &'a [u32] {
        match d {
            Data::Prime(v) => v,
            Data::Cyclo(_) => unreachable!("storage does not match field"),
        }
    }
    fn slice_mut<'a>(&self, d: &'a mut Data) -> &'a mut [u32] {
        match d {
            Data::Prime(v) => v,
            Data::Cyclo(_) => unreachable!("storage does not match field"),
        }
    }
    fn wrap(&self, v: Vec<u32>) -> Data {
        Data::Prime(v)
    }
    fn elem(&self, s: &Scalar) -> u32 {
        match s {
            Scalar::Prime(x) => *x,
            Scalar::Cyclo(_) => panic!("cyclotomic scalar used over F_{}", self.p()),
        }
    }
    fn scalar(&self, e: &u32) -> Scalar {
        Scalar::Prime(*e)
    }
}

impl Storage for CyclotomicField {
    fn slice<'a>(&self, d: &'a Data) -> &'a [Cyc] {
        match d {
            Data::Cyclo(v) => v,
            Data::Prime(_) => unreachable!("storage does not match field"),
        }
    }
    fn slice_mut<'a>(&self, d: &'a mut Data) -> &'a mut [Cyc] {
        match d {
            Data::Cyclo(v) => v,
            Data::Prime(_) => unreachable!("storage does not match field"),
        }
    }
    fn wrap(&self, v: Vec<Cyc>) -> Data {
        Data::Cyclo(v)
    }
    fn elem(&self, s: &Scalar) -> Cyc {
        match s {
            Scalar::Cyclo(x) => x.clone(),
            Scalar::Prime(_) => panic!("prime-field scalar used over Q(z_{})", self.n()),
        }
    }
    fn scalar(&self, e: &Cyc) -> Scalar {
        Scalar::Cyclo(e.clone())
    }
}

macro_rules! dispatch {
    ($field:expr, $f:ident => $body:expr) => {
        match $field {
            Field::Prime(ff) => {
                let $f: &PrimeField = ff;
                $body
            }
            Field::Cyclotomic(ff) => {
                let $f: &CyclotomicField = ff;
                $body
            }
        }
    };
}

fn mul_kernel<F: Storage>(f: &F, a: &[F::Elem], b: &[F::Elem], n: usize, k: usize, m: usize) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); n * m];
    for i in 0..n {
        for t in 0..k {
            let x = &a[i * k + t];
            if f.is_zero(x) {
                continue;
            }
            for j in 0..m {
                let y = &b[t * m + j];
                if !f.is_zero(y) {
                    f.mul_add_assign(&mut out[i * m + j], x, y);
                }
            }
        }
    }
    out
}

/// Gauss-Jordan on the first `pivot_cols` columns; returns the pivot columns.
/// With `full = false` only entries below each pivot are cleared.
fn eliminate<F: Storage>(
    f: &F,
    a: &mut [F::Elem],
    rows: usize,
    cols: usize,
    pivot_cols: usize,
    full: bool,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !f.is_zero(&a[i * cols + c])) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                a.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(&a[r * cols + c]).expect("pivot is nonzero");
        for j in c..cols {
            if !f.is_zero(&a[r * cols + j]) {
                a[r * cols + j] = f.mul(&a[r * cols + j], &inv);
            }
        }
        let pivot_row: Vec<(usize, F::Elem)> = (c..cols)
            .filter(|&j| !f.is_zero(&a[r * cols + j]))
            .map(|j| (j, a[r * cols + j].clone()))
            .collect();
        let start = if full { 0 } else { r + 1 };
        for i in start..rows {
            if i == r || f.is_zero(&a[i * cols + c]) {
                continue;
            }
            let factor = a[i * cols + c].clone();
            for (j, y) in &pivot_row {
                f.mul_sub_assign(&mut a[i * cols + j], &factor, y);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Outcome of solving `A x = B`.
#[derive(Clone, Debug)]
pub struct Solution {
    /// Pivot columns of the reduced row echelon form of `A`.
    pub pivots: Vec<usize>,
    /// Some `x0` with `A x0 = B`, or `None` when the system is inconsistent.
    pub particular: Option<Matrix>,
    /// Columns spanning `{x : A x = 0}`.
    pub nullspace: Matrix,
}

impl Solution {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Dense row-major matrix over a [`Field`].
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Data,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(out, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| self.field.format_scalar(&self.get(r, c)))
                .collect();
            writeln!(out, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        let data = dispatch!(field, f => f.wrap(vec![f.zero(); rows * cols]));
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        let one = field.one();
        for i in 0..n {
            m.set(i, i, one.clone());
        }
        m
    }

    pub fn from_fn(field: &Field, rows: usize, cols: usize, mut entry: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                let s = entry(r, c);
                if !field.is_zero(&s) {
                    m.set(r, c, s);
                }
            }
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        if let Some(bad) = rows.iter().flatten().find(|s| !field.contains(s)) {
            return Err(Error::FieldMismatch(format!("{bad:?}"), field.to_string()));
        }
        Ok(Matrix::from_fn(field, rows.len(), cols, |r, c| rows[r][c].clone()))
    }

    pub fn from_i64_rows(field: &Field, rows: &[Vec<i64>]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_fn(field, rows.len(), cols, |r, c| field.from_i64(rows[r][c]))
    }

    /// Build from a column list; every column must have length `rows`.
    pub fn from_columns(field: &Field, rows: usize, columns: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (r, s) in col.iter().enumerate() {
                if !field.is_zero(s) {
                    m.set(r, c, s.clone());
                }
            }
        }
        m
    }

    /// Sparse construction; later duplicates overwrite earlier ones.
    pub fn from_entries(field: &Field, rows: usize, cols: usize, entries: &[(usize, usize, Scalar)]) -> Result<Matrix> {
        let mut m = Matrix::zeros(field, rows, cols);
        for (r, c, s) in entries {
            if *r >= rows || *c >= cols {
                return Err(Error::OutOfRange(format!("entry ({r}, {c}) outside {rows}x{cols}")));
            }
            if !field.contains(s) {
                return Err(Error::FieldMismatch(format!("{s:?}"), field.to_string()));
            }
            m.set(*r, *c, s.clone());
        }
        Ok(m)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        let i = r * self.cols + c;
        dispatch!(&self.field, f => f.scalar(&f.slice(&self.data)[i]))
    }

    pub fn set(&mut self, r: usize, c: usize, s: Scalar) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        let i = r * self.cols + c;
        dispatch!(&self.field, f => f.slice_mut(&mut self.data)[i] = f.elem(&s));
    }

    pub fn is_zero_at(&self, r: usize, c: usize) -> bool {
        let i = r * self.cols + c;
        dispatch!(&self.field, f => f.is_zero(&f.slice(&self.data)[i]))
    }

    pub fn is_zero(&self) -> bool {
        dispatch!(&self.field, f => f.slice(&self.data).iter().all(|x| f.is_zero(x)))
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> Vec<(usize, usize, Scalar)> {
        let cols = self.cols;
        dispatch!(&self.field, f => f
            .slice(&self.data)
            .iter()
            .enumerate()
            .filter(|(_, x)| !f.is_zero(x))
            .map(|(i, x)| (i / cols, i % cols, f.scalar(x)))
            .collect())
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row(&self, r: usize) -> Vec<Scalar> {
        (0..self.cols).map(|c| self.get(r, c)).collect()
    }

    /// All entries in row-major order.
    pub fn entries_flat(&self) -> Vec<Scalar> {
        dispatch!(&self.field, f => f.slice(&self.data).iter().map(|x| f.scalar(x)).collect())
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let data = dispatch!(&self.field, f => {
            let v = mul_kernel(f, f.slice(&self.data), f.slice(&other.data), n, k, m);
            f.wrap(v)
        });
        Ok(Matrix {
            field: self.field.clone(),
            rows: n,
            cols: m,
            data,
        })
    }

    /// Product; panics on shape or field mismatch.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.try_mul(other).expect("matrix product")
    }

    fn zip(&self, other: &Matrix, subtract: bool) -> Result<Matrix> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = dispatch!(&self.field, f => {
            let v = f
                .slice(&self.data)
                .iter()
                .zip(f.slice(&other.data))
                .map(|(a, b)| if subtract { f.sub(a, b) } else { f.add(a, b) })
                .collect();
            f.wrap(v)
        });
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip(other, false)
    }
    pub fn try_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip(other, true)
    }
    pub fn add(&self, other: &Matrix) -> Matrix {
        self.try_add(other).expect("matrix sum")
    }
    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.try_sub(other).expect("matrix difference")
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = dispatch!(&self.field, f => {
            let e = f.elem(s);
            f.wrap(f.slice(&self.data).iter().map(|x| f.mul(x, &e)).collect())
        });
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&self.field.from_i64(-1))
    }

    pub fn transpose(&self) -> Matrix {
        let (rows, cols) = (self.rows, self.cols);
        let data = dispatch!(&self.field, f => {
            let s = f.slice(&self.data);
            let v = (0..cols * rows).map(|i| s[(i % rows) * cols + i / rows].to_owned()).collect();
            f.wrap(v)
        });
        Matrix {
            field: self.field.clone(),
            rows: cols,
            cols: rows,
            data,
        }
    }

    pub fn pow(&self, e: usize) -> Matrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Matrix::identity(&self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Kronecker product: index (i, j) of the result is i = a*rows(B)+b.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.field, other.field, "kron over different fields");
        let mut out = Matrix::zeros(&self.field, self.rows * other.rows, self.cols * other.cols);
        let oe = other.entries();
        for (r1, c1, a) in self.entries() {
            for (r2, c2, b) in &oe {
                out.set(r1 * other.rows + r2, c1 * other.cols + c2, self.field.mul(&a, b));
            }
        }
        out
    }

    pub fn block_diag(field: &Field, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.paste(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn hstack(field: &Field, rows: usize, blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut c0 = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row count");
            out.paste(0, c0, b);
            c0 += b.cols;
        }
        out
    }

    pub fn vstack(field: &Field, cols: usize, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut r0 = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column count");
            out.paste(r0, 0, b);
            r0 += b.rows;
        }
        out
    }

    /// Overwrite the block starting at (r0, c0) with `b`.
    pub fn paste(&mut self, r0: usize, c0: usize, b: &Matrix) {
        assert!(
            r0 + b.rows <= self.rows && c0 + b.cols <= self.cols,
            "paste out of range"
        );
        for r in 0..b.rows {
            for c in 0..b.cols {
                self.set(r0 + r, c0 + c, b.get(r, c));
            }
        }
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(&self.field, rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]))
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, cols)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.select(rows, &cols)
    }

    pub fn rank(&self) -> usize {
        let (rows, cols) = (self.rows, self.cols);
        let mut work = self.data.clone();
        dispatch!(&self.field, f => eliminate(f, f.slice_mut(&mut work), rows, cols, cols, false).len())
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let (rows, cols) = (self.rows, self.cols);
        let mut out = self.clone();
        let pivots = dispatch!(&self.field, f => eliminate(f, f.slice_mut(&mut out.data), rows, cols, cols, true));
        (out, pivots)
    }

    /// Rows forming a basis of the row space (echelon form, zero rows dropped).
    pub fn row_basis(&self) -> Matrix {
        let (rows, cols) = (self.rows, self.cols);
        let mut out = self.clone();
        let rank = dispatch!(&self.field, f => eliminate(f, f.slice_mut(&mut out.data), rows, cols, cols, false).len());
        let keep: Vec<usize> = (0..rank).collect();
        out.select_rows(&keep)
    }

    /// Columns spanning the null space.
    pub fn nullspace(&self) -> Matrix {
        let (r, pivots) = self.rref();
        Self::nullspace_from_rref(&r, &pivots, self.cols)
    }

    fn nullspace_from_rref(r: &Matrix, pivots: &[usize], n: usize) -> Matrix {
        let field = &r.field;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(field, n, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, field.one());
            for (i, &pc) in pivots.iter().enumerate() {
                let v = r.get(i, fc);
                if !field.is_zero(&v) {
                    out.set(pc, k, field.neg(&v));
                }
            }
        }
        out
    }

    /// Solve `self * X = rhs` exactly.
    pub fn solve(&self, rhs: &Matrix) -> Result<Solution> {
        self.check_field(rhs)?;
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "system has {} rows, right-hand side {}",
                self.rows, rhs.rows
            )));
        }
        let n = self.cols;
        let aug = Matrix::hstack(&self.field, self.rows, &[self, rhs]);
        let (rows, cols) = (aug.rows, aug.cols);
        let mut red = aug;
        let pivots = dispatch!(&self.field, f => eliminate(f, f.slice_mut(&mut red.data), rows, cols, n, true));
        let rank = pivots.len();
        let consistent = (rank..rows).all(|i| (n..cols).all(|j| red.is_zero_at(i, j)));
        let particular = consistent.then(|| {
            let mut x = Matrix::zeros(&self.field, n, rhs.cols);
            for (i, &pc) in pivots.iter().enumerate() {
                for j in 0..rhs.cols {
                    x.set(pc, j, red.get(i, n + j));
                }
            }
            x
        });
        let nullspace = Self::nullspace_from_rref(&red, &pivots, n);
        if let Some(x) = &particular {
            debug_assert_eq!(&self.mul(x), rhs, "back-substitution failed");
        }
        debug_assert!(self.mul(&nullspace).is_zero(), "null space check failed");
        Ok(Solution {
            pivots,
            particular,
            nullspace,
        })
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let sol = self.solve(&Matrix::identity(&self.field, self.rows))?;
        match sol.particular {
            Some(x) if sol.pivots.len() == self.rows => Ok(x),
            _ => Err(Error::DivisionByZero),
        }
    }
}
