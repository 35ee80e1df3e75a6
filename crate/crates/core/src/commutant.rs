//! Jordan structure of nilpotent matrices and the centralizer of a Jordan
//! matrix.
//!
//! Conventions: `J_k` has ones on the superdiagonal, so `J e_{r+1} = e_r`.
//! A Jordan matrix of partition `(u_1, …, u_t)` is `diag(J_{u_1}, …, J_{u_t})`.
//! Block indices are 0-based throughout the API.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use num_bigint::BigUint;
use rand::Rng;

use crate::algebra::{PrimeField, Ring};
use crate::matrix::{self, jordan_block, BlockView, Matrix, SpanBuilder};
use crate::{Error, Result};

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Domain("empty partition".to_string()));
        }
        if parts.contains(&0) {
            return Err(Error::Domain("partition parts must be positive".to_string()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain("partition parts must be weakly decreasing".to_string()));
        }
        Ok(Partition(parts))
    }

    /// Parses `"3,2,2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(alloc::format!("bad part {p:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }

    /// The single block `(n)`.
    pub fn regular(n: usize) -> Self {
        Partition(vec![n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of parts `t`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// First row index of each block.
    pub fn offsets(&self) -> Vec<usize> {
        let mut o = Vec::with_capacity(self.0.len());
        let mut acc = 0;
        for &u in &self.0 {
            o.push(acc);
            acc += u;
        }
        o
    }

    pub fn conjugate(&self) -> Partition {
        let max = self.0[0];
        Partition((1..=max).map(|k| self.0.iter().filter(|&&u| u >= k).count()).collect())
    }

    /// All partitions of `n`, in decreasing lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=max.min(rem)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, n, &mut Vec::new(), &mut out);
        }
        out
    }

    /// Maximal index ranges whose parts differ by at most one.
    pub fn near_equal_sets(&self) -> Vec<Range<usize>> {
        let u = &self.0;
        let mut sets: Vec<Range<usize>> = Vec::new();
        for s in 0..u.len() {
            if s > 0 && u[s] == u[s - 1] {
                continue;
            }
            let mut e = s;
            while e < u.len() && u[s] - u[e] <= 1 {
                e += 1;
            }
            sets.push(s..e);
        }
        let all = sets.clone();
        sets.retain(|r| !all.iter().any(|o| o != r && o.start <= r.start && r.end <= o.end));
        sets
    }

    /// Jordan matrix `diag(J_{u_1}, …, J_{u_t})`.
    pub fn jordan_matrix<R: Ring>(&self, ring: &R) -> Matrix<R::Elem> {
        let blocks: Vec<_> = self.0.iter().map(|&u| jordan_block(ring, u)).collect();
        Matrix::block_diagonal(ring, &blocks)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|u| u.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

/// Combinatorial invariants of a partition. All indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionInvariants {
    /// Group ends `q_1 < … < q_t̂ = t`; group `α` is `q_{α-1}..q_α` with `q_0 = 0`.
    pub qs: Vec<usize>,
    pub t_hat: usize,
    /// The indices `n_i`.
    pub n_indices: Vec<usize>,
    pub r_b: usize,
    pub s_b: usize,
    /// `h_table[i][j]` for `i ≤ j`; zero below the diagonal.
    pub h_table: Vec<Vec<usize>>,
}

impl PartitionInvariants {
    /// `h(min(i,j), max(i,j))`.
    pub fn h(&self, i: usize, j: usize) -> usize {
        self.h_table[i.min(j)][i.max(j)]
    }

    /// Block index ranges of the groups of equal parts.
    pub fn groups(&self) -> Vec<Range<usize>> {
        let mut prev = 0;
        self.qs
            .iter()
            .map(|&q| {
                let r = prev..q;
                prev = q;
                r
            })
            .collect()
    }

    /// Block index ranges `n_i .. n_{i+1}`.
    pub fn segments(&self, t: usize) -> Vec<Range<usize>> {
        let mut ends = self.n_indices[1..].to_vec();
        ends.push(t);
        self.n_indices.iter().zip(ends).map(|(&a, b)| a..b).collect()
    }
}

pub fn partition_invariants(p: &Partition) -> PartitionInvariants {
    let u = p.parts();
    let t = u.len();
    let mut qs: Vec<usize> = (1..t).filter(|&h| u[h] != u[h - 1]).collect();
    qs.push(t);
    let mut n_indices = vec![0];
    loop {
        let cur = *n_indices.last().unwrap();
        match (cur + 1..t).find(|&k| u[cur] - u[k] >= 2) {
            Some(k) => n_indices.push(k),
            None => break,
        }
    }
    let s_b = (0..t)
        .map(|s| u.iter().filter(|&&x| x <= u[s] && u[s] - x <= 1).count())
        .max()
        .unwrap_or(0);
    let mut h_table = vec![vec![0; t]; t];
    for i in 0..t {
        for j in i..t {
            h_table[i][j] = greedy_h(u, i, j);
        }
    }
    PartitionInvariants {
        t_hat: qs.len(),
        qs,
        r_b: n_indices.len(),
        n_indices,
        s_b,
        h_table,
    }
}

/// Length of the forced chain `k_{l+1}` = first index with gap at least two.
fn greedy_h(u: &[usize], i: usize, j: usize) -> usize {
    if u[i] - u[j] <= 1 {
        return 0;
    }
    let mut k = i;
    let mut h = 0;
    while u[k] - u[j] > 1 {
        k = (k + 1..u.len()).find(|&x| u[k] - u[x] >= 2).expect("j qualifies");
        h += 1;
    }
    h
}

/// Result of bringing a nilpotent matrix to Jordan form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanData {
    pub partition: Partition,
    /// The Jordan matrix `J`.
    pub jordan: Matrix<u64>,
    /// Columns form the basis `Δ_B`: `basis⁻¹ · B · basis = J`.
    pub basis: Matrix<u64>,
    pub basis_inv: Matrix<u64>,
}

impl JordanData {
    /// Jordan data of a matrix already in Jordan form.
    pub fn trivial(field: &PrimeField, partition: Partition) -> Self {
        let n = partition.n();
        JordanData {
            jordan: partition.jordan_matrix(field),
            partition,
            basis: Matrix::identity(field, n),
            basis_inv: Matrix::identity(field, n),
        }
    }

    /// `basis⁻¹ · a · basis`.
    pub fn to_jordan_coords(&self, field: &PrimeField, a: &Matrix<u64>) -> Result<Matrix<u64>> {
        self.basis_inv.mul(field, a)?.mul(field, &self.basis)
    }

    /// `basis · a · basis⁻¹`.
    pub fn from_jordan_coords(&self, field: &PrimeField, a: &Matrix<u64>) -> Result<Matrix<u64>> {
        self.basis.mul(field, a)?.mul(field, &self.basis_inv)
    }
}

fn check_nilpotent(field: &PrimeField, b: &Matrix<u64>) -> Result<usize> {
    if !b.is_square() {
        return Err(Error::Dimension("matrix is not square".to_string()));
    }
    b.nilpotency_index(field)?
        .ok_or_else(|| Error::Domain("matrix is not nilpotent".to_string()))
}

/// Jordan type from ranks of powers.
pub fn jordan_partition(field: &PrimeField, b: &Matrix<u64>) -> Result<Partition> {
    let idx = check_nilpotent(field, b)?;
    let n = b.rows();
    if n == 0 {
        return Err(Error::Domain("empty matrix has no Jordan type".to_string()));
    }
    let mut ranks = vec![n];
    let mut p = Matrix::identity(field, n);
    for _ in 0..idx {
        p = p.mul(field, b)?;
        ranks.push(matrix::rank_over_field(field, &p));
    }
    // At least k parts have size ≥ k+1 iff rank B^k − rank B^{k+1} > k-th entry of the conjugate.
    let conj: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let parts = (0..conj[0])
        .map(|i| conj.iter().filter(|&&c| c > i).count())
        .collect();
    Partition::new(parts)
}

/// Chain basis bringing `b` to Jordan form. Deterministic in `b`: chains are
/// extracted top-down from the reduced-echelon kernel bases of the powers.
pub fn jordan_basis(field: &PrimeField, b: &Matrix<u64>) -> Result<JordanData> {
    let idx = check_nilpotent(field, b)?;
    let n = b.rows();
    let mut powers = vec![Matrix::identity(field, n)];
    for _ in 0..idx {
        let next = powers.last().unwrap().mul(field, b)?;
        powers.push(next);
    }
    let kernels: Vec<Vec<Vec<u64>>> = powers.iter().map(|p| matrix::kernel_basis(field, p)).collect();
    let mut chains: Vec<(usize, Vec<u64>)> = Vec::new();
    for s in (1..=idx).rev() {
        let mut span = SpanBuilder::new(*field, n);
        for v in &kernels[s - 1] {
            span.insert(v);
        }
        for (d, w) in &chains {
            span.insert(&powers[d - s].mul_vec(field, w)?);
        }
        for v in &kernels[s] {
            if span.insert(v) {
                chains.push((s, v.clone()));
            }
        }
    }
    let mut cols = Vec::with_capacity(n);
    for (d, w) in &chains {
        for k in (0..*d).rev() {
            cols.push(powers[k].mul_vec(field, w)?);
        }
    }
    let basis = Matrix::from_columns(n, &cols)?;
    let basis_inv = matrix::inverse(field, &basis)
        .ok_or_else(|| Error::Domain("chain vectors are dependent".to_string()))?;
    let partition = Partition::new(chains.iter().map(|c| c.0).collect())?;
    Ok(JordanData { jordan: partition.jordan_matrix(field), partition, basis, basis_inv })
}

/// Positions `(r, c)` inside block `(h,k)` of shape `u_h × u_k` carrying the
/// parameter `a^s_{hk}` (1-based `s`).
pub fn parameter_positions(u_h: usize, u_k: usize, s: usize) -> impl Iterator<Item = (usize, usize)> {
    let m = u_h.min(u_k);
    let col_off = u_k - m;
    (0..m + 1 - s).map(move |r| (r, col_off + r + s - 1))
}

/// The free parameters `a^s_{hk}` of an element of the centralizer of a
/// Jordan matrix; `values[h*t + k][s-1] = a^s_{hk}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutantParams {
    pub partition: Partition,
    pub values: Vec<Vec<u64>>,
}

impl CommutantParams {
    pub fn zero(partition: &Partition) -> Self {
        let u = partition.parts();
        let t = u.len();
        let values = (0..t * t).map(|i| vec![0; u[i / t].min(u[i % t])]).collect();
        CommutantParams { partition: partition.clone(), values }
    }

    pub fn count(partition: &Partition) -> usize {
        let u = partition.parts();
        u.iter().flat_map(|a| u.iter().map(move |b| *a.min(b))).sum()
    }

    pub fn get(&self, h: usize, k: usize, s: usize) -> u64 {
        self.values[h * self.partition.len() + k][s - 1]
    }

    pub fn set(&mut self, h: usize, k: usize, s: usize, v: u64) {
        let t = self.partition.len();
        self.values[h * t + k][s - 1] = v;
    }

    /// Uniform parameters; with `triangular`, `a^1_{hk} = 0` for `h ≥ k`
    /// inside each group of equal parts.
    pub fn random<G: Rng + ?Sized>(field: &PrimeField, partition: &Partition, rng: &mut G, triangular: bool) -> Self {
        let mut p = Self::zero(partition);
        let u = partition.parts();
        let t = u.len();
        for h in 0..t {
            for k in 0..t {
                for s in 1..=u[h].min(u[k]) {
                    let forced = triangular && s == 1 && u[h] == u[k] && h >= k;
                    let v = if forced { 0 } else { field.random(rng) };
                    p.set(h, k, s, v);
                }
            }
        }
        p
    }

    pub fn to_matrix(&self, field: &PrimeField) -> Matrix<u64> {
        let u = self.partition.parts();
        let off = self.partition.offsets();
        let n = self.partition.n();
        let mut m = Matrix::zeros(field, n, n);
        for h in 0..u.len() {
            for k in 0..u.len() {
                for s in 1..=u[h].min(u[k]) {
                    let v = self.get(h, k, s);
                    for (r, c) in parameter_positions(u[h], u[k], s) {
                        m.set(off[h] + r, off[k] + c, v);
                    }
                }
            }
        }
        m
    }

    /// Reads the parameters off a matrix in Jordan coordinates. Fails if the
    /// matrix does not commute with the Jordan matrix.
    pub fn from_matrix(field: &PrimeField, partition: &Partition, a: &Matrix<u64>) -> Result<Self> {
        let j = partition.jordan_matrix(field);
        if !a.commutator(field, &j)?.is_zero(field) {
            return Err(Error::Domain("matrix does not commute with the Jordan matrix".to_string()));
        }
        let u = partition.parts();
        let off = partition.offsets();
        let mut p = Self::zero(partition);
        for h in 0..u.len() {
            for k in 0..u.len() {
                for s in 1..=u[h].min(u[k]) {
                    let (r, c) = parameter_positions(u[h], u[k], s).next().expect("s ≤ min");
                    p.set(h, k, s, *a.get(off[h] + r, off[k] + c));
                }
            }
        }
        Ok(p)
    }

    /// `Ā_{αα} = (a^1_{hk})` over the group `α` of equal parts.
    pub fn bar_block(&self, group: Range<usize>) -> Matrix<u64> {
        let g0 = group.start;
        Matrix::from_fn(group.len(), group.len(), |r, c| self.get(g0 + r, g0 + c, 1))
    }
}

/// One matrix per parameter, in the order `(h, k, s)`.
pub fn commutant_basis(field: &PrimeField, partition: &Partition) -> Vec<Matrix<u64>> {
    let u = partition.parts();
    let mut out = Vec::with_capacity(CommutantParams::count(partition));
    for h in 0..u.len() {
        for k in 0..u.len() {
            for s in 1..=u[h].min(u[k]) {
                let mut p = CommutantParams::zero(partition);
                p.set(h, k, s, 1);
                out.push(p.to_matrix(field));
            }
        }
    }
    out
}

/// Nilpotency of the centralizer element through its diagonal group blocks.
pub fn is_nilpotent_in_centralizer(field: &PrimeField, params: &CommutantParams) -> bool {
    let inv = partition_invariants(&params.partition);
    inv.groups().into_iter().all(|g| {
        let b = params.bar_block(g);
        matches!(b.nilpotency_index(field), Ok(Some(_)))
    })
}

fn is_strictly_upper(field: &PrimeField, m: &Matrix<u64>) -> bool {
    (0..m.rows()).all(|r| (0..m.cols().min(r + 1)).all(|c| field.is_zero(m.get(r, c))))
}

/// Checks `a` (in Jordan coordinates) lies in `N_{B,Δ_B}`: it commutes with
/// the Jordan matrix and every `Ā_{αα}` is strictly upper triangular.
pub fn in_triangular_cone(field: &PrimeField, partition: &Partition, a: &Matrix<u64>) -> Result<bool> {
    let params = match CommutantParams::from_matrix(field, partition, a) {
        Ok(p) => p,
        Err(Error::Domain(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    let inv = partition_invariants(partition);
    Ok(inv.groups().into_iter().all(|g| is_strictly_upper(field, &params.bar_block(g))))
}

/// Basis of `F^g` along the kernel flag of nilpotent `n`, so that
/// `C⁻¹ n C` is strictly upper triangular.
fn flag_basis(field: &PrimeField, n: &Matrix<u64>) -> Result<Matrix<u64>> {
    let g = n.rows();
    let mut span = SpanBuilder::new(*field, g);
    let mut cols = Vec::with_capacity(g);
    let mut p = Matrix::identity(field, g);
    while span.rank() < g {
        p = p.mul(field, n)?;
        for v in matrix::kernel_basis(field, &p) {
            if span.insert(&v) {
                cols.push(v);
            }
        }
    }
    Matrix::from_columns(g, &cols)
}

/// A new chain basis keeping `B` in the same Jordan form and making every
/// `Ā_{αα}` of `a` strictly upper triangular.
pub fn triangularize(field: &PrimeField, a: &Matrix<u64>, jd: &JordanData) -> Result<JordanData> {
    let ap = jd.to_jordan_coords(field, a)?;
    let params = CommutantParams::from_matrix(field, &jd.partition, &ap)
        .map_err(|_| Error::Domain("A does not commute with B".to_string()))?;
    if !is_nilpotent_in_centralizer(field, &params) {
        return Err(Error::Domain("A is not nilpotent".to_string()));
    }
    let u = jd.partition.parts();
    let off = jd.partition.offsets();
    let n = jd.partition.n();
    let mut q = Matrix::identity(field, n);
    for g in partition_invariants(&jd.partition).groups() {
        let bar = params.bar_block(g.clone());
        if is_strictly_upper(field, &bar) {
            continue;
        }
        let c = flag_basis(field, &bar)?;
        let size = u[g.start];
        for (ki, k) in g.clone().enumerate() {
            for (hi, h) in g.clone().enumerate() {
                for r in 0..size {
                    q.set(off[k] + r, off[h] + r, *c.get(ki, hi));
                }
            }
        }
    }
    let basis = jd.basis.mul(field, &q)?;
    let basis_inv = matrix::inverse(field, &basis).ok_or_else(|| Error::Domain("singular basis".to_string()))?;
    Ok(JordanData { partition: jd.partition.clone(), jordan: jd.jordan.clone(), basis, basis_inv })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleMode {
    /// Uniform over the `F_p`-points of `N_B`.
    Uniform,
    /// Uniform parameters with strictly upper triangular `Ā_{αα}`, i.e.
    /// uniform over `N_{B,Δ_B}`.
    Triangular,
    /// Block-regular witness of rank `n − r_B`.
    Witness,
}

/// `|GL_m(F_q)| / |C(J_λ)|`, the number of nilpotent matrices of type `λ`.
fn orbit_size(q: u64, lambda: &Partition) -> BigUint {
    let q = BigUint::from(q);
    let qk_minus_1 = |k: usize| q.pow(k as u32) - 1u32;
    let m = lambda.n();
    let mut gl = q.pow((m * (m - 1) / 2) as u32);
    for k in 1..=m {
        gl *= qk_minus_1(k);
    }
    let dual: usize = lambda.conjugate().parts().iter().map(|c| c * c).sum();
    let mut exp = dual;
    let mut cent = BigUint::from(1u32);
    for size in 1..=lambda.parts()[0] {
        let mult = lambda.parts().iter().filter(|&&u| u == size).count();
        exp -= mult * (mult + 1) / 2;
        for k in 1..=mult {
            cent *= qk_minus_1(k);
        }
    }
    cent *= q.pow(exp as u32);
    gl / cent
}

/// A uniformly random nilpotent `m × m` matrix: a Jordan type drawn with
/// weight equal to its orbit size (the sizes sum to `p^{m(m−1)}`), then a
/// uniform conjugate of it.
pub fn random_nilpotent<G: Rng + ?Sized>(field: &PrimeField, m: usize, rng: &mut G) -> Matrix<u64> {
    if m == 0 {
        return Matrix::zeros(field, 0, 0);
    }
    let q = field.modulus();
    // Base-q digits give a uniform integer below q^{m(m−1)}.
    let mut r = BigUint::from(0u32);
    for _ in 0..m * (m - 1) {
        r = r * q + field.random(rng);
    }
    let types = Partition::all(m);
    let mut lambda = types.last().expect("nonempty").clone();
    for t in types {
        let size = orbit_size(q, &t);
        if r < size {
            lambda = t;
            break;
        }
        r -= size;
    }
    let (g, g_inv) = matrix::random_invertible(field, m, rng);
    g.mul(field, &lambda.jordan_matrix(field)).expect("square").mul(field, &g_inv).expect("square")
}

/// `A` is nilpotent exactly when each `Ā_{αα}` is (the rest of the
/// centralizer is its radical), so the bar blocks are uniform nilpotent
/// matrices and every other parameter is uniform.
fn uniform_params<G: Rng + ?Sized>(field: &PrimeField, partition: &Partition, rng: &mut G) -> CommutantParams {
    let mut p = CommutantParams::random(field, partition, rng, false);
    for g in partition_invariants(partition).groups() {
        let bar = random_nilpotent(field, g.len(), rng);
        for r in 0..g.len() {
            for c in 0..g.len() {
                p.set(g.start + r, g.start + c, 1, *bar.get(r, c));
            }
        }
    }
    p
}

/// An element of `N_B` for `B` the Jordan matrix of `partition`, returned in
/// the same coordinates.
pub fn sample_nilpotent_commuting<G: Rng + ?Sized>(
    field: &PrimeField,
    partition: &Partition,
    rng: &mut G,
    mode: SampleMode,
) -> Result<Matrix<u64>> {
    match mode {
        SampleMode::Uniform => Ok(uniform_params(field, partition, rng).to_matrix(field)),
        SampleMode::Triangular => Ok(CommutantParams::random(field, partition, rng, true).to_matrix(field)),
        SampleMode::Witness => witness(field, partition),
    }
}

/// On each segment `n_i .. n_{i+1}` the Jordan matrix is conjugate to `J_m^s`;
/// the witness is `J_m` carried into those coordinates.
fn witness(field: &PrimeField, partition: &Partition) -> Result<Matrix<u64>> {
    let inv = partition_invariants(partition);
    let u = partition.parts();
    let mut blocks = Vec::new();
    for seg in inv.segments(u.len()) {
        let sizes = &u[seg.clone()];
        let m: usize = sizes.iter().sum();
        let c = jordan_block(field, m);
        let d = c.pow(field, seg.len() as u32)?;
        let jd = jordan_basis(field, &d)?;
        debug_assert_eq!(jd.partition.parts(), sizes);
        let a_seg = jd.to_jordan_coords(field, &c)?;
        let tri = triangularize(field, &a_seg, &JordanData::trivial(field, jd.partition.clone()))?;
        blocks.push(tri.to_jordan_coords(field, &a_seg)?);
    }
    Ok(Matrix::block_diagonal(field, &blocks))
}

/// Rank of every block `(A)_{ij}` under the partition's block structure.
pub fn block_ranks(field: &PrimeField, partition: &Partition, a: &Matrix<u64>) -> Result<Vec<Vec<usize>>> {
    let view = BlockView::new(a, partition.parts())?;
    let t = partition.len();
    Ok((0..t)
        .map(|i| (0..t).map(|j| matrix::rank_over_field(field, &view.block(i, j))).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::trial_rng;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn invariants_examples() {
        let i = partition_invariants(&Partition::regular(5));
        assert_eq!((i.r_b, i.s_b, i.t_hat), (1, 1, 1));
        let i = partition_invariants(&Partition::parse("3,1").unwrap());
        assert_eq!((i.n_indices.clone(), i.r_b), (vec![0, 1], 2));
        let i = partition_invariants(&Partition::parse("2,2").unwrap());
        assert_eq!((i.r_b, i.s_b), (1, 2));
        let i = partition_invariants(&Partition::parse("5,3,2").unwrap());
        assert_eq!((i.h(0, 1), i.h(0, 2), i.h(1, 2)), (1, 1, 0));
    }

    #[test]
    fn near_equal_sets() {
        let p = Partition::parse("4,3,3,2,1,1").unwrap();
        assert_eq!(p.near_equal_sets(), vec![0..3, 1..4, 3..6]);
        assert_eq!(Partition::parse("2,2").unwrap().near_equal_sets(), vec![0..2]);
    }

    #[test]
    fn partitions_enumerated() {
        let counts: Vec<usize> = (1..=8).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, [1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn jordan_form_input_gives_identity_basis() {
        let field = f(101);
        for p in Partition::all(5) {
            let j = p.jordan_matrix(&field);
            let jd = jordan_basis(&field, &j).unwrap();
            assert_eq!(jd.partition, p);
            assert_eq!(jd.basis, Matrix::identity(&field, 5));
        }
    }

    #[test]
    fn commutant_dimensions() {
        let field = f(5);
        assert_eq!(commutant_basis(&field, &Partition::regular(4)).len(), 4);
        assert_eq!(commutant_basis(&field, &Partition::parse("1,1").unwrap()).len(), 4);
        assert_eq!(commutant_basis(&field, &Partition::parse("2,1").unwrap()).len(), 5);
    }

    #[test]
    fn triangularize_swaps_chains() {
        let field = f(101);
        let p = Partition::parse("2,2").unwrap();
        let mut params = CommutantParams::zero(&p);
        params.set(1, 0, 1, 1);
        let a = params.to_matrix(&field);
        let jd = JordanData::trivial(&field, p.clone());
        let tri = triangularize(&field, &a, &jd).unwrap();
        let ap = tri.to_jordan_coords(&field, &a).unwrap();
        assert_eq!(tri.to_jordan_coords(&field, &jd.jordan).unwrap(), jd.jordan);
        let bar = CommutantParams::from_matrix(&field, &p, &ap).unwrap().bar_block(0..2);
        assert_eq!(bar, Matrix::from_i64(&field, &[&[0, 1], &[0, 0]]).unwrap());
    }

    #[test]
    fn orbit_sizes_count_all_nilpotent_matrices() {
        // The nilpotent m × m matrices over F_q number q^{m(m−1)}.
        for q in [2u64, 3, 101] {
            for m in 1..=8usize {
                let total: BigUint = Partition::all(m).iter().map(|l| orbit_size(q, l)).sum();
                assert_eq!(total, BigUint::from(q).pow((m * (m - 1)) as u32), "q={q} m={m}");
            }
        }
        assert_eq!(orbit_size(5, &Partition::regular(2)), BigUint::from(24u32));
    }

    #[test]
    fn witness_ranks() {
        let field = f(101);
        let mut rng = trial_rng(1, 0);
        let w = sample_nilpotent_commuting(&field, &Partition::parse("3,1").unwrap(), &mut rng, SampleMode::Witness).unwrap();
        assert_eq!(matrix::rank_over_field(&field, &w), 2);
        let w = sample_nilpotent_commuting(&field, &Partition::regular(4), &mut rng, SampleMode::Witness).unwrap();
        assert_eq!(matrix::rank_over_field(&field, &w), 3);
    }
}
