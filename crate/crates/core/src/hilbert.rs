//! Triples `(A, B, v)` and colength-`n` ideals of `K[x,y]/(x,y)^n`, and
//! tangent-space probes on the commuting nilpotent variety.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::algebra::{PrimeField, Ring};
use crate::matrix::{self, Matrix, SpanBuilder};
use crate::upsilon::{z_set, IndexPair, LnOrder};
use crate::{Error, Result};

/// `K[x,y]/(x,y)^n` with monomial basis `x^i y^j`, `(i,j) ∈ L_n`, in
/// [`LnOrder`]. Elements are coefficient vectors of length `N = n(n+1)/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedQuotient {
    order: LnOrder,
}

impl TruncatedQuotient {
    pub fn new(n: usize) -> Self {
        TruncatedQuotient { order: LnOrder::new(n) }
    }

    pub fn n(&self) -> usize {
        self.order.n()
    }

    pub fn dim(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &LnOrder {
        &self.order
    }

    pub fn monomial(&self, p: IndexPair) -> Vec<u64> {
        let mut v = vec![0; self.dim()];
        if let Some(k) = self.order.position(p) {
            v[k] = 1;
        }
        v
    }

    fn shift(&self, v: &[u64], di: usize, dj: usize) -> Vec<u64> {
        let mut out = vec![0; self.dim()];
        for (k, p) in self.order.pairs().iter().enumerate() {
            if let Some(t) = self.order.position(IndexPair::new(p.i + di, p.j + dj)) {
                out[t] = v[k];
            }
        }
        out
    }

    pub fn mul_x(&self, v: &[u64]) -> Vec<u64> {
        self.shift(v, 1, 0)
    }

    pub fn mul_y(&self, v: &[u64]) -> Vec<u64> {
        self.shift(v, 0, 1)
    }
}

/// A subspace `V` of the truncated quotient that is an ideal of codimension
/// `n` meeting `span{x^i y^j : (i,j) ∈ Z_m}` only in zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaircaseIdeal {
    n: usize,
    m: usize,
    /// Reduced row echelon basis.
    basis: Vec<Vec<u64>>,
}

fn canonical_basis(field: &PrimeField, dim: usize, vecs: &[Vec<u64>]) -> Result<Vec<Vec<u64>>> {
    if vecs.is_empty() {
        return Ok(Vec::new());
    }
    let (r, pivots) = matrix::rref(field, &Matrix::from_rows(vecs.to_vec())?);
    Ok((0..pivots.len()).map(|i| r.row(i).to_vec()).inspect(|row| debug_assert_eq!(row.len(), dim)).collect())
}

impl StaircaseIdeal {
    /// Validates dimension, the ideal property and complementarity.
    pub fn new(field: &PrimeField, n: usize, m: usize, spanning: &[Vec<u64>]) -> Result<Self> {
        let q = TruncatedQuotient::new(n);
        if spanning.iter().any(|v| v.len() != q.dim()) {
            return Err(Error::Dimension(format!("vectors must have length {}", q.dim())));
        }
        let basis = canonical_basis(field, q.dim(), spanning)?;
        let ideal = StaircaseIdeal { n, m, basis };
        if ideal.basis.len() + n != q.dim() {
            return Err(Error::Domain(format!("codimension {} is not n = {n}", q.dim() - ideal.basis.len())));
        }
        if !ideal.is_ideal(field) {
            return Err(Error::Domain("subspace is not closed under x and y".to_string()));
        }
        if !ideal.complementary(field)? {
            return Err(Error::Domain("subspace meets the Z_m monomials".to_string()));
        }
        Ok(ideal)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    fn span(&self, field: &PrimeField) -> SpanBuilder<PrimeField> {
        let mut s = SpanBuilder::new(*field, self.n * (self.n + 1) / 2);
        for v in &self.basis {
            s.insert(v);
        }
        s
    }

    pub fn contains(&self, field: &PrimeField, v: &[u64]) -> bool {
        self.span(field).contains(v)
    }

    pub fn is_ideal(&self, field: &PrimeField) -> bool {
        let q = TruncatedQuotient::new(self.n);
        let s = self.span(field);
        self.basis.iter().all(|v| s.contains(&q.mul_x(v)) && s.contains(&q.mul_y(v)))
    }

    pub fn complementary(&self, field: &PrimeField) -> Result<bool> {
        let q = TruncatedQuotient::new(self.n);
        let mut s = self.span(field);
        Ok(z_set(self.n, self.m)?.into_iter().all(|p| s.insert(&q.monomial(p))))
    }
}

/// `(A, B, v)` with `A`, `B` commuting nilpotent `n × n` matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    pub a: Matrix<u64>,
    pub b: Matrix<u64>,
    pub v: Vec<u64>,
}

impl Triple {
    pub fn n(&self) -> usize {
        self.v.len()
    }

    /// `A^i B^j v`.
    pub fn word(&self, field: &PrimeField, p: IndexPair) -> Result<Vec<u64>> {
        let w = self.b.pow(field, p.j as u32)?.mul_vec(field, &self.v)?;
        self.a.pow(field, p.i as u32)?.mul_vec(field, &w)
    }

    /// `(G A G⁻¹, G B G⁻¹, G v)`.
    pub fn conjugate(&self, field: &PrimeField, g: &Matrix<u64>) -> Result<Triple> {
        let g_inv = matrix::inverse(field, g).ok_or_else(|| Error::Domain("G is singular".to_string()))?;
        let c = |x: &Matrix<u64>| g.mul(field, x)?.mul(field, &g_inv);
        Ok(Triple { a: c(&self.a)?, b: c(&self.b)?, v: g.mul_vec(field, &self.v)? })
    }

    /// The `G` with `G·self = other`, if both triples lie in one orbit.
    /// The `Z_m` words of a triple in the domain of `ζ_m` form a basis, so
    /// `G` is forced by them.
    pub fn orbit_element(&self, field: &PrimeField, other: &Triple, m: usize) -> Result<Option<Matrix<u64>>> {
        let n = self.n();
        let words = |t: &Triple| -> Result<Matrix<u64>> {
            let cols = z_set(n, m)?.into_iter().map(|p| t.word(field, p)).collect::<Result<Vec<_>>>()?;
            Matrix::from_columns(n, &cols)
        };
        let Some(w_inv) = matrix::inverse(field, &words(self)?) else {
            return Ok(None);
        };
        let g = words(other)?.mul(field, &w_inv)?;
        if matrix::inverse(field, &g).is_none() {
            return Ok(None);
        }
        Ok((self.conjugate(field, &g)? == *other).then_some(g))
    }

    /// Dimension of `{X : [X,A] = [X,B] = 0, Xv = 0}`, the Lie algebra of the
    /// stabilizer of the triple.
    pub fn stabilizer_dimension(&self, field: &PrimeField) -> Result<usize> {
        let n = self.n();
        let mut rows = Vec::new();
        for mat in [&self.a, &self.b] {
            // ([X,M])_{rc} = Σ_k X_rk M_kc − M_rk X_kc
            for r in 0..n {
                for c in 0..n {
                    let mut row = vec![0; n * n];
                    for k in 0..n {
                        row[r * n + k] = field.add(&row[r * n + k], mat.get(k, c));
                        row[k * n + c] = field.sub(&row[k * n + c], mat.get(r, k));
                    }
                    rows.push(row);
                }
            }
        }
        for r in 0..n {
            let mut row = vec![0; n * n];
            row[r * n..(r + 1) * n].copy_from_slice(&self.v);
            rows.push(row);
        }
        Ok(n * n - matrix::rank_over_field(field, &Matrix::from_rows(rows)?))
    }

    fn check(&self, field: &PrimeField, m: usize) -> Result<()> {
        let n = self.n();
        if self.a.rows() != n || self.b.rows() != n || !self.a.is_square() || !self.b.is_square() {
            return Err(Error::Dimension("A, B must be n×n with v of length n".to_string()));
        }
        if !self.a.commutator(field, &self.b)?.is_zero(field) {
            return Err(Error::Domain("A and B do not commute".to_string()));
        }
        if self.a.nilpotency_index(field)?.is_none() || self.b.nilpotency_index(field)?.is_none() {
            return Err(Error::Domain("A and B must be nilpotent".to_string()));
        }
        let mut s = SpanBuilder::new(*field, n);
        for p in z_set(n, m)? {
            s.insert(&self.word(field, p)?);
        }
        if s.rank() != n {
            return Err(Error::Domain(format!("the Z_{m} words span only {} dimensions", s.rank())));
        }
        Ok(())
    }
}

/// The kernel of `g ↦ g(A,B)v` on `K[x,y]/(x,y)^n`.
pub fn zeta(field: &PrimeField, t: &Triple, m: usize) -> Result<StaircaseIdeal> {
    t.check(field, m)?;
    let n = t.n();
    let order = LnOrder::new(n);
    let cols = order.pairs().iter().map(|&p| t.word(field, p)).collect::<Result<Vec<_>>>()?;
    let eval = Matrix::from_columns(n, &cols)?;
    StaircaseIdeal::new(field, n, m, &matrix::kernel_basis(field, &eval))
}

/// Multiplication by `x` and `y` on the classes of the `Z_m` monomials, with
/// `v` the class of `1` (the last basis vector).
pub fn zeta_hat(field: &PrimeField, ideal: &StaircaseIdeal) -> Result<Triple> {
    let (n, m) = (ideal.n, ideal.m);
    if !ideal.is_ideal(field) || !ideal.complementary(field)? {
        return Err(Error::Domain("not a staircase ideal for this m".to_string()));
    }
    let q = TruncatedQuotient::new(n);
    let z = z_set(n, m)?;
    // Columns: Z_m monomials, then a basis of V; coordinates of a class are
    // the first n entries of the solution.
    let mut cols: Vec<Vec<u64>> = z.iter().map(|&p| q.monomial(p)).collect();
    cols.extend(ideal.basis.iter().cloned());
    let system = Matrix::from_columns(q.dim(), &cols)?;
    let inv = matrix::inverse(field, &system).ok_or_else(|| Error::Domain("not complementary".to_string()))?;
    let coords = |w: Vec<u64>| -> Result<Vec<u64>> { Ok(inv.mul_vec(field, &w)?[..n].to_vec()) };
    let mut a_cols = Vec::with_capacity(n);
    let mut b_cols = Vec::with_capacity(n);
    for &p in &z {
        let mono = q.monomial(p);
        a_cols.push(coords(q.mul_x(&mono))?);
        b_cols.push(coords(q.mul_y(&mono))?);
    }
    let one = z.iter().position(|&p| p == IndexPair::new(0, 0)).expect("Z_m contains (0,0)");
    let mut v = vec![0; n];
    v[one] = 1;
    Ok(Triple { a: Matrix::from_columns(n, &a_cols)?, b: Matrix::from_columns(n, &b_cols)?, v })
}

/// Closure of `gens` under multiplication by `x` and `y`.
pub fn ideal_closure(field: &PrimeField, n: usize, gens: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let q = TruncatedQuotient::new(n);
    let mut span = SpanBuilder::new(*field, q.dim());
    let mut kept = Vec::new();
    let mut queue: Vec<Vec<u64>> = gens.to_vec();
    while let Some(v) = queue.pop() {
        if span.insert(&v) {
            queue.push(q.mul_x(&v));
            queue.push(q.mul_y(&v));
            kept.push(v);
        }
    }
    kept
}

/// A random order ideal of `L_n` with `n` elements.
fn random_staircase<G: Rng + ?Sized>(n: usize, rng: &mut G) -> Vec<IndexPair> {
    let mut s = vec![IndexPair::new(0, 0)];
    while s.len() < n {
        let corners: Vec<IndexPair> = s
            .iter()
            .flat_map(|p| [IndexPair::new(p.i + 1, p.j), IndexPair::new(p.i, p.j + 1)])
            .filter(|c| {
                !s.contains(c)
                    && (c.i == 0 || s.contains(&IndexPair::new(c.i - 1, c.j)))
                    && (c.j == 0 || s.contains(&IndexPair::new(c.i, c.j - 1)))
            })
            .collect();
        s.push(corners[rng.random_range(0..corners.len())]);
    }
    s
}

/// Rejection budget of [`random_staircase_ideal`].
pub const IDEAL_DRAWS: usize = 1000;

/// A random ideal in `𝓘_m`: a staircase `S` (`Z_m` half of the time),
/// generators `x^a y^b + (random tail of higher degree in S)` for the corners
/// of `S`, closed to an ideal, rejected unless colength `n` and complementary
/// to `Z_m`. A quarter of the draws use no tail and so are monomial.
pub fn random_staircase_ideal<G: Rng + ?Sized>(
    field: &PrimeField,
    n: usize,
    m: usize,
    rng: &mut G,
) -> Result<StaircaseIdeal> {
    let zm = z_set(n, m)?;
    let q = TruncatedQuotient::new(n);
    for _ in 0..IDEAL_DRAWS {
        let s = if rng.random_bool(0.5) { zm.clone() } else { random_staircase(n, rng) };
        let monomial = rng.random_bool(0.25);
        let corners: Vec<IndexPair> = q
            .order()
            .pairs()
            .iter()
            .copied()
            .filter(|c| {
                !s.contains(c)
                    && (c.i == 0 || s.contains(&IndexPair::new(c.i - 1, c.j)))
                    && (c.j == 0 || s.contains(&IndexPair::new(c.i, c.j - 1)))
            })
            .collect();
        let gens: Vec<Vec<u64>> = corners
            .iter()
            .map(|c| {
                let mut g = q.monomial(*c);
                if !monomial {
                    for t in s.iter().filter(|t| t.i + t.j > c.i + c.j) {
                        g[q.order().position(*t).expect("in L_n")] = field.random(rng);
                    }
                }
                g
            })
            .collect();
        let closed = ideal_closure(field, n, &gens);
        if let Ok(ideal) = StaircaseIdeal::new(field, n, m, &closed) {
            return Ok(ideal);
        }
    }
    Err(Error::Precondition(format!("no ideal in {IDEAL_DRAWS} draws was complementary to Z_{m}")))
}

fn check_char(field: &PrimeField, n: usize) -> Result<()> {
    if field.characteristic() <= n as u64 {
        return Err(Error::Domain(format!("characteristic {} must exceed n = {n}", field.characteristic())));
    }
    Ok(())
}

/// Rows `X ↦ tr(M^k X)` for `k = 0..n−1`, placed at column offset `off` of a
/// `width`-wide Jacobian.
fn trace_rows(field: &PrimeField, m: &Matrix<u64>, off: usize, width: usize) -> Result<Vec<Vec<u64>>> {
    let n = m.rows();
    let mut out = Vec::new();
    let mut p = Matrix::identity(field, n);
    for _ in 0..n {
        // tr(P X) = Σ_{r,c} P[c][r] X[r][c]
        let mut row = vec![0; width];
        for r in 0..n {
            for c in 0..n {
                row[off + r * n + c] = *p.get(c, r);
            }
        }
        out.push(row);
        p = p.mul(field, m)?;
    }
    Ok(out)
}

/// Kernel dimension of the Jacobian of `[A,B] = 0` and the characteristic
/// coefficients of `A` and `B` at `(A,B)`: pairs `(X,Y)` with
/// `[X,B] + [A,Y] = 0`, `tr(A^k X) = 0`, `tr(B^k Y) = 0`, `k = 0..n−1`.
pub fn tangent_dimension(field: &PrimeField, a: &Matrix<u64>, b: &Matrix<u64>) -> Result<usize> {
    let n = a.rows();
    check_char(field, n)?;
    let width = 2 * n * n;
    let mut rows = Vec::new();
    // ([X,B] + [A,Y])_{rc} = Σ_k X_rk B_kc − B_rk X_kc + A_rk Y_kc − Y_rk A_kc
    for r in 0..n {
        for c in 0..n {
            let mut row = vec![0; width];
            for k in 0..n {
                let xi = |i: usize, j: usize| i * n + j;
                let yi = |i: usize, j: usize| n * n + i * n + j;
                row[xi(r, k)] = field.add(&row[xi(r, k)], b.get(k, c));
                row[xi(k, c)] = field.sub(&row[xi(k, c)], b.get(r, k));
                row[yi(k, c)] = field.add(&row[yi(k, c)], a.get(r, k));
                row[yi(r, k)] = field.sub(&row[yi(r, k)], a.get(k, c));
            }
            rows.push(row);
        }
    }
    rows.extend(trace_rows(field, a, 0, width)?);
    rows.extend(trace_rows(field, b, n * n, width)?);
    Ok(width - matrix::rank_over_field(field, &Matrix::from_rows(rows)?))
}

/// Kernel dimension of the Jacobian of the characteristic coefficients at
/// `A`: matrices `X` with `tr(A^k X) = 0`, `k = 0..n−1`.
pub fn nilpotent_cone_tangent_dimension(field: &PrimeField, a: &Matrix<u64>) -> Result<usize> {
    let n = a.rows();
    check_char(field, n)?;
    let rows = trace_rows(field, a, 0, n * n)?;
    Ok(n * n - matrix::rank_over_field(field, &Matrix::from_rows(rows)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::trial_rng;

    fn f() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn regular_with_zero_b_gives_y_ideal() {
        let f = f();
        let n = 5;
        let mut v = vec![0; n];
        v[n - 1] = 1;
        let t = Triple { a: matrix::jordan_block(&f, n), b: Matrix::zeros(&f, n, n), v };
        let ideal = zeta(&f, &t, 2).unwrap();
        let q = TruncatedQuotient::new(n);
        for p in q.order().pairs() {
            assert_eq!(ideal.contains(&f, &q.monomial(*p)), p.j >= 1);
        }
        let back = zeta_hat(&f, &ideal).unwrap();
        assert_eq!(matrix::rank_over_field(&f, &back.a), n - 1);
        assert!(back.b.is_zero(&f));
    }

    #[test]
    fn round_trip_random() {
        let f = f();
        let mut rng = trial_rng(5, 0);
        for n in 5usize..=6 {
            for m in 2..=n.div_ceil(2) {
                for _ in 0..10 {
                    let ideal = random_staircase_ideal(&f, n, m, &mut rng).unwrap();
                    let t = zeta_hat(&f, &ideal).unwrap();
                    assert_eq!(zeta(&f, &t, m).unwrap(), ideal);
                }
            }
        }
    }

    #[test]
    fn tangent_dimensions() {
        let f = f();
        let a = matrix::jordan_block(&f, 4);
        assert_eq!(nilpotent_cone_tangent_dimension(&f, &a).unwrap(), 12);
        let b = a.pow(&f, 2).unwrap();
        assert_eq!(tangent_dimension(&f, &a, &b).unwrap(), 15);
        assert!(tangent_dimension(&PrimeField::new(3).unwrap(), &a, &b).is_err());
    }
}
