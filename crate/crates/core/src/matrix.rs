//! Dense exact matrices.
//!
//! Matrices hold plain elements; arithmetic takes the coefficient ring as an
//! explicit argument. Field routines use Gauss-Jordan elimination, domain
//! routines use fraction-free (Bareiss) elimination.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::algebra::{Domain, Field, PrimeField, Ring};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

fn dim_err(msg: String) -> Error {
    Error::Dimension(msg)
}

impl<E: Clone> Matrix<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds from row vectors. An empty list gives a 0×0 matrix.
    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(dim_err(alloc::format!("row {bad} has wrong length")));
        }
        let nrows = rows.len();
        Ok(Matrix { rows: nrows, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Builds from column vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<E>]) -> Result<Self> {
        if let Some(bad) = columns.iter().position(|c| c.len() != rows) {
            return Err(dim_err(alloc::format!("column {bad} has wrong length")));
        }
        Ok(Self::from_fn(rows, columns.len(), |r, c| columns[c][r].clone()))
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

    pub fn get(&self, r: usize, c: usize) -> &E {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// The submatrix on the given row and column indices, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        if rows.iter().any(|&r| r >= self.rows) || cols.iter().any(|&c| c >= self.cols) {
            return Err(dim_err(String::from("submatrix index out of range")));
        }
        Ok(Self::from_fn(rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone()))
    }

    /// Contiguous block starting at `(r0, c0)`.
    pub fn window(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |r, c| self.get(r0 + r, c0 + c).clone())
    }

    pub fn map<T: Clone>(&self, f: impl Fn(&E) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<T: Clone>(&self, f: impl Fn(&E) -> Result<T>) -> Result<Matrix<T>> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn entries(&self) -> impl Iterator<Item = &E> {
        self.data.iter()
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(dim_err(String::from("hstack row mismatch")));
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.cols).clone()
            }
        }))
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(dim_err(String::from("vstack column mismatch")));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }
}

impl<E: Clone> Matrix<E> {
    pub fn zeros<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| ring.zero())
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { ring.one() } else { ring.zero() })
    }

    /// Lifts a matrix of `i64` into the ring.
    pub fn from_i64<R: Ring<Elem = E>>(ring: &R, rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| ring.from_i64(v)).collect()).collect())
    }

    /// Block-diagonal matrix with the given square blocks.
    pub fn block_diagonal<R: Ring<Elem = E>>(ring: &R, blocks: &[Matrix<E>]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(ring, n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out.set(r0 + r, c0 + c, b.get(r, c).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn is_zero<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.data.iter().all(|e| ring.is_zero(e))
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| ring.add(a, b))
    }

    pub fn sub<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| ring.sub(a, b))
    }

    fn zip(&self, other: &Self, f: impl Fn(&E, &E) -> E) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(dim_err(alloc::format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, s: &E) -> Self {
        self.map(|a| ring.mul(a, s))
    }

    pub fn neg<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        self.map(|a| ring.neg(a))
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(dim_err(alloc::format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(ring, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if ring.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if ring.is_zero(b) {
                        continue;
                    }
                    let idx = r * out.cols + c;
                    out.data[idx] = ring.add(&out.data[idx], &ring.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec<R: Ring<Elem = E>>(&self, ring: &R, v: &[E]) -> Result<Vec<E>> {
        if v.len() != self.cols {
            return Err(dim_err(alloc::format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(ring.zero(), |acc, (a, b)| ring.add(&acc, &ring.mul(a, b)))
            })
            .collect())
    }

    pub fn pow<R: Ring<Elem = E>>(&self, ring: &R, mut e: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(dim_err(String::from("power of a non-square matrix")));
        }
        let mut base = self.clone();
        let mut acc = Self::identity(ring, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(ring, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(ring, &base)?;
            }
        }
        Ok(acc)
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self> {
        self.mul(ring, other)?.sub(ring, &other.mul(ring, self)?)
    }

    pub fn trace<R: Ring<Elem = E>>(&self, ring: &R) -> Result<E> {
        if !self.is_square() {
            return Err(dim_err(String::from("trace of a non-square matrix")));
        }
        Ok((0..self.rows).fold(ring.zero(), |acc, i| ring.add(&acc, self.get(i, i))))
    }

    /// Least `k` with `self^k = 0`, or `None` if `self^n ≠ 0`.
    pub fn nilpotency_index<R: Ring<Elem = E>>(&self, ring: &R) -> Result<Option<usize>> {
        if !self.is_square() {
            return Err(dim_err(String::from("nilpotency of a non-square matrix")));
        }
        let n = self.rows;
        let mut p = Self::identity(ring, n);
        for k in 0..=n {
            if p.is_zero(ring) {
                return Ok(Some(k));
            }
            p = p.mul(ring, self)?;
        }
        Ok(None)
    }
}

/// Reduced row echelon form over a field with the pivot column list.
pub fn rref<F: Field>(field: &F, m: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| !field.is_zero(a.get(r, col))) else {
            continue;
        };
        a.swap_rows(row, p);
        let inv = field.inv(a.get(row, col)).expect("nonzero pivot");
        for c in col..a.cols {
            let v = field.mul(a.get(row, c), &inv);
            a.set(row, c, v);
        }
        for r in 0..a.rows {
            if r == row || field.is_zero(a.get(r, col)) {
                continue;
            }
            let f = a.get(r, col).clone();
            for c in col..a.cols {
                let v = field.sub(a.get(r, c), &field.mul(&f, a.get(row, c)));
                a.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

pub fn rank_over_field<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    rref(field, m).1.len()
}

/// Basis of the right null space, one vector per free column, read off the
/// reduced echelon form.
pub fn kernel_basis<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let (r, pivots) = rref(field, m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![field.zero(); m.cols];
            v[f] = field.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = field.neg(r.get(i, f));
            }
            v
        })
        .collect()
}

pub fn inverse<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows;
    let aug = m.hstack(&Matrix::identity(field, n)).ok()?;
    let (r, pivots) = rref(field, &aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.window(0, n, n, n))
}

/// A uniformly random invertible `n × n` matrix over `F_p` and its inverse,
/// by rejection.
pub fn random_invertible<G: Rng + ?Sized>(field: &PrimeField, n: usize, rng: &mut G) -> (Matrix<u64>, Matrix<u64>) {
    loop {
        let g = Matrix::from_fn(n, n, |_, _| field.random(rng));
        if let Some(g_inv) = inverse(field, &g) {
            return (g, g_inv);
        }
    }
}

/// Solves `m·X = rhs` for square invertible `m`.
pub fn solve<F: Field>(
    field: &F,
    m: &Matrix<F::Elem>,
    rhs: &Matrix<F::Elem>,
) -> Option<Matrix<F::Elem>> {
    if !m.is_square() || rhs.rows != m.rows {
        return None;
    }
    let n = m.rows;
    let (r, pivots) = rref(field, &m.hstack(rhs).ok()?);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.window(0, n, n, rhs.cols))
}

/// Fraction-free elimination state shared by `det_fraction_free` and
/// `rank_fraction_free`. Returns the number of pivots, the permutation sign
/// and the last pivot.
fn bareiss<D: Domain>(ring: &D, m: &Matrix<D::Elem>) -> (usize, bool, D::Elem) {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<D::Elem>> = m.to_rows();
    let mut negate = false;
    let mut prev = ring.one();
    let mut k = 0;
    while k < rows.min(cols) {
        let mut best: Option<(usize, usize, usize)> = None;
        for c in k..cols {
            for (r, row) in a.iter().enumerate().skip(k) {
                let e = &row[c];
                if ring.is_zero(e) {
                    continue;
                }
                let s = ring.size(e);
                if best.is_none_or(|(bs, _, _)| s < bs) {
                    best = Some((s, r, c));
                }
            }
        }
        let Some((_, pr, pc)) = best else { break };
        if pr != k {
            a.swap(pr, k);
            negate = !negate;
        }
        if pc != k {
            for row in a.iter_mut() {
                row.swap(pc, k);
            }
            negate = !negate;
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = pivot_row[k].clone();
        for row in rest.iter_mut() {
            let lead = row[k].clone();
            for c in k + 1..cols {
                let num = if ring.is_zero(&lead) {
                    ring.mul(&pivot, &row[c])
                } else {
                    ring.sub(&ring.mul(&pivot, &row[c]), &ring.mul(&lead, &pivot_row[c]))
                };
                row[c] = ring
                    .div_exact(&num, &prev)
                    .expect("fraction-free elimination divides exactly");
            }
            row[k] = ring.zero();
        }
        prev = pivot;
        k += 1;
    }
    (k, negate, prev)
}

/// Determinant over an integral domain by fraction-free elimination, pivoting
/// on the lowest-weight nonzero entry (leftmost column on ties).
pub fn det_fraction_free<D: Domain>(ring: &D, m: &Matrix<D::Elem>) -> Result<D::Elem> {
    if !m.is_square() {
        return Err(dim_err(alloc::format!("determinant of a {}x{} matrix", m.rows, m.cols)));
    }
    if m.rows == 0 {
        return Ok(ring.one());
    }
    let (k, negate, last) = bareiss(ring, m);
    if k < m.rows {
        return Ok(ring.zero());
    }
    Ok(if negate { ring.neg(&last) } else { last })
}

/// Rank over the fraction field of an integral domain.
pub fn rank_fraction_free<D: Domain>(ring: &D, m: &Matrix<D::Elem>) -> usize {
    bareiss(ring, m).0
}

/// Rank over `K(x)` of a matrix with entries in `K[x]`.
pub fn rank_over_polynomial_ring<F: Field>(
    ring: &crate::algebra::UniPolyRing<F>,
    m: &Matrix<crate::algebra::UniPoly<F>>,
) -> usize {
    rank_fraction_free(ring, m)
}

/// Incrementally maintained echelon basis of a subspace of `F^n`.
#[derive(Clone, Debug)]
pub struct SpanBuilder<F: Field> {
    field: F,
    dim: usize,
    /// Rows normalized so the pivot entry is one.
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> SpanBuilder<F> {
    pub fn new(field: F, dim: usize) -> Self {
        SpanBuilder { field, dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            if f.is_zero(&w[*p]) {
                continue;
            }
            let c = w[*p].clone();
            for (wi, ri) in w.iter_mut().zip(row) {
                *wi = f.sub(wi, &f.mul(&c, ri));
            }
        }
        w
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|e| self.field.is_zero(e))
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length");
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|e| !self.field.is_zero(e)) else {
            return false;
        };
        let inv = self.field.inv(&w[p]).expect("nonzero");
        for e in w.iter_mut() {
            *e = self.field.mul(e, &inv);
        }
        for (_, row) in self.rows.iter_mut() {
            if self.field.is_zero(&row[p]) {
                continue;
            }
            let c = row[p].clone();
            for (ri, wi) in row.iter_mut().zip(&w) {
                *ri = self.field.sub(ri, &self.field.mul(&c, wi));
            }
        }
        self.rows.push((p, w));
        true
    }
}

/// Block partition of a matrix into `(X_{hk})` by row and column sizes.
#[derive(Clone, Debug)]
pub struct BlockView<'a, E> {
    parent: &'a Matrix<E>,
    row_offsets: Vec<usize>,
    col_offsets: Vec<usize>,
}

impl<'a, E: Clone> BlockView<'a, E> {
    /// Square block structure: both rows and columns split by `sizes`.
    pub fn new(parent: &'a Matrix<E>, sizes: &[usize]) -> Result<Self> {
        Self::with_sizes(parent, sizes, sizes)
    }

    pub fn with_sizes(parent: &'a Matrix<E>, row_sizes: &[usize], col_sizes: &[usize]) -> Result<Self> {
        if row_sizes.iter().sum::<usize>() != parent.rows || col_sizes.iter().sum::<usize>() != parent.cols {
            return Err(dim_err(String::from("block sizes do not match the matrix")));
        }
        let offsets = |s: &[usize]| {
            let mut o = vec![0];
            for x in s {
                o.push(o.last().unwrap() + x);
            }
            o
        };
        Ok(BlockView { parent, row_offsets: offsets(row_sizes), col_offsets: offsets(col_sizes) })
    }

    pub fn block_rows(&self) -> usize {
        self.row_offsets.len() - 1
    }

    pub fn block_cols(&self) -> usize {
        self.col_offsets.len() - 1
    }

    pub fn block(&self, h: usize, k: usize) -> Matrix<E> {
        let (r0, r1) = (self.row_offsets[h], self.row_offsets[h + 1]);
        let (c0, c1) = (self.col_offsets[k], self.col_offsets[k + 1]);
        self.parent.window(r0, c0, r1 - r0, c1 - c0)
    }
}

impl<E: fmt::Display> fmt::Display for Matrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            f.write_str("[")?;
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.data[r * self.cols + c])?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

/// The `k×k` nilpotent Jordan block with ones on the superdiagonal.
pub fn jordan_block<R: Ring>(ring: &R, k: usize) -> Matrix<R::Elem> {
    Matrix::from_fn(k, k, |r, c| if c == r + 1 { ring.one() } else { ring.zero() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Integers, MultiPoly, MultiPolyRing, PrimeField, UniPoly, UniPolyRing, Variables};
    use num_bigint::BigInt;

    #[test]
    fn jordan_block_ranks() {
        let f = PrimeField::new(101).unwrap();
        for n in 1..6 {
            let j = jordan_block(&f, n);
            assert_eq!(rank_over_field(&f, &j), n - 1);
            assert_eq!(j.nilpotency_index(&f).unwrap(), Some(n));
        }
        let empty: Matrix<u64> = Matrix::zeros(&f, 0, 3);
        assert_eq!(rank_over_field(&f, &empty), 0);
        assert!(kernel_basis(&f, &Matrix::identity(&f, 3)).is_empty());
    }

    #[test]
    fn polynomial_determinant() {
        let vars = Variables::new(["x"]);
        let r = MultiPolyRing::new(Integers, vars.clone());
        let x = r.var(0).unwrap();
        let m = Matrix::from_rows(alloc::vec![
            alloc::vec![x.clone(), r.one()],
            alloc::vec![r.one(), x.clone()]
        ])
        .unwrap();
        let d = det_fraction_free(&r, &m).unwrap();
        assert_eq!(d, MultiPoly::parse(vars, "x^2 - 1").unwrap());
        assert!(det_fraction_free(&r, &Matrix::zeros(&r, 2, 3)).is_err());
    }

    #[test]
    fn univariate_rank() {
        let f = PrimeField::new(101).unwrap();
        let r = UniPolyRing::new(f);
        let m = Matrix::from_rows(alloc::vec![
            alloc::vec![r.x(), r.zero()],
            alloc::vec![r.zero(), r.zero()]
        ])
        .unwrap();
        assert_eq!(rank_over_polynomial_ring(&r, &m), 1);
        let _ = UniPoly::x(f);
    }

    #[test]
    fn integer_determinant_small() {
        let z = Integers;
        let m = Matrix::from_i64(&z, &[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]).unwrap();
        assert_eq!(det_fraction_free(&z, &m).unwrap(), BigInt::from(6));
    }

    #[test]
    fn inverse_and_solve() {
        let f = PrimeField::new(7).unwrap();
        let m = Matrix::from_i64(&f, &[&[1, 2], &[3, 4]]).unwrap();
        let inv = inverse(&f, &m).unwrap();
        assert_eq!(m.mul(&f, &inv).unwrap(), Matrix::identity(&f, 2));
        let singular = Matrix::from_i64(&f, &[&[1, 2], &[2, 4]]).unwrap();
        assert!(inverse(&f, &singular).is_none());
        let rhs = Matrix::from_i64(&f, &[&[1], &[0]]).unwrap();
        let x = solve(&f, &m, &rhs).unwrap();
        assert_eq!(m.mul(&f, &x).unwrap(), rhs);
    }

    #[test]
    fn span_builder() {
        let f = PrimeField::new(5).unwrap();
        let mut s = SpanBuilder::new(f, 3);
        assert!(s.insert(&[1, 2, 0]));
        assert!(s.insert(&[0, 1, 1]));
        assert!(!s.insert(&[1, 3, 1]));
        assert!(s.contains(&[2, 4, 0]));
        assert!(!s.contains(&[0, 0, 1]));
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn blocks() {
        let f = PrimeField::new(5).unwrap();
        let m = Matrix::from_fn(3, 3, |r, c| (r * 3 + c) as u64 % 5);
        let v = BlockView::new(&m, &[2, 1]).unwrap();
        assert_eq!(v.block(0, 1), Matrix::from_rows(alloc::vec![alloc::vec![2], alloc::vec![0]]).unwrap());
        assert_eq!(v.block(1, 0).cols(), 2);
        assert!(BlockView::new(&m, &[2, 2]).is_err());
        let _ = f;
    }
}
