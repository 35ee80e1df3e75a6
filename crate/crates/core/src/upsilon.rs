//! The polynomial matrices `Φ(n,l)`, `Ψ(n,l)` and `Υ(n,l)`, their column
//! labels, minors and the identities they satisfy.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use crate::algebra::{Field, Integers, MultiPoly, MultiPolyRing, PrimeField, Variables};
use crate::matrix::{self, Matrix};
use crate::rank_laws::{a_ln, j_ln};
use crate::{Error, Result};

pub type IntPoly = MultiPoly<Integers>;

/// The column label `(i,j)`, standing for `A^i B^j v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexPair {
    pub i: usize,
    pub j: usize,
}

impl IndexPair {
    pub const fn new(i: usize, j: usize) -> Self {
        IndexPair { i, j }
    }
}

impl fmt::Display for IndexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// `L_n = {(i,j) : i + j < n}` ordered by `i` descending, then `j` descending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LnOrder {
    n: usize,
    pairs: Vec<IndexPair>,
}

impl LnOrder {
    pub fn new(n: usize) -> Self {
        let pairs = (0..n).rev().flat_map(|i| (0..n - i).rev().map(move |j| IndexPair::new(i, j))).collect();
        LnOrder { n, pairs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[IndexPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn position(&self, p: IndexPair) -> Option<usize> {
        let n = self.n;
        if p.i + p.j >= n {
            return None;
        }
        Some((n - 1 - p.i) * (n - p.i) / 2 + (n - 1 - p.i - p.j))
    }
}

fn check_l(n: usize, l: usize) -> Result<()> {
    if l < 2 || l > n.div_ceil(2) {
        return Err(Error::Domain(format!("l={l} outside 2..=ceil(n/2) for n={n}")));
    }
    Ok(())
}

/// `Z_l`: `n` index pairs used as a distinguished minor.
pub fn z_set(n: usize, l: usize) -> Result<Vec<IndexPair>> {
    check_l(n, l)?;
    if l == 2 {
        return Ok((0..n).rev().map(|i| IndexPair::new(i, 0)).collect());
    }
    let mut out: Vec<IndexPair> = (l - 2..=n - l + 1).rev().map(|i| IndexPair::new(i, 0)).collect();
    for h in (0..l - 2).rev() {
        out.push(IndexPair::new(h, 1));
        out.push(IndexPair::new(h, 0));
    }
    debug_assert_eq!(out.len(), n);
    Ok(out)
}

/// `Z_{m−1,i}`: `Z_{m−1}` with `(n−m+2, 0)` replaced by `(n−m+2−i, 1)`, for
/// `1 ≤ i ≤ n−2m+4`.
pub fn z_set_variant(n: usize, m: usize, i: usize) -> Result<Vec<IndexPair>> {
    if m < 3 {
        return Err(Error::Domain(format!("m={m} must be at least 3")));
    }
    check_l(n, m)?;
    if i == 0 || i + 2 * m > n + 4 {
        return Err(Error::Domain(format!("i={i} outside 1..=n-2m+4")));
    }
    let mut z = z_set(n, m - 1)?;
    let old = IndexPair::new(n - m + 2, 0);
    let pos = z.iter().position(|&p| p == old).expect("Z_{m-1} contains (n-m+2,0)");
    z[pos] = IndexPair::new(n - m + 2 - i, 1);
    Ok(z)
}

/// Coefficients of `F(l,l')^k` after the substitution `x^i y^j ↦ y^{i+j}`,
/// over `ℤ[x_1..x_l, y_1..y_{l'}]`.
#[derive(Clone, Debug)]
pub struct LemmaA {
    lx: usize,
    ly: usize,
    vars: Variables,
    /// `f[k][h] = f_h(l,l',k)`.
    f: Vec<Vec<IntPoly>>,
    /// `fp[k][h] = f'_h(l,l',k)`.
    fp: Vec<Vec<IntPoly>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffKind {
    /// `f_h`, the coefficient of `x^h`.
    X,
    /// `f'_h`, the coefficient of `y^h`.
    Y,
    /// `f_0`.
    Const,
}

impl LemmaA {
    pub fn variables(lx: usize, ly: usize) -> Variables {
        let mut names = Variables::indexed("x", lx);
        names.extend(Variables::indexed("y", ly));
        Variables::new(names)
    }

    /// Table for all `k ≤ k_max`, `h ≤ h_max`.
    pub fn new(lx: usize, ly: usize, k_max: usize, h_max: usize) -> Self {
        let vars = Self::variables(lx, ly);
        let ring = Integers;
        let zero = MultiPoly::zero(ring, vars.clone());
        let var = |idx: usize| MultiPoly::var(ring, vars.clone(), idx).expect("in range");
        let xs: Vec<IntPoly> = (0..lx).map(var).collect();
        let ys: Vec<IntPoly> = (0..ly).map(|j| var(lx + j)).collect();
        let mul = |a: &IntPoly, b: &IntPoly| a.checked_mul(b).expect("same variables");
        let add = |a: &IntPoly, b: IntPoly| a.checked_add(&b).expect("same variables");

        let mut f = vec![vec![zero.clone(); h_max + 1]];
        f[0][0] = MultiPoly::one(ring, vars.clone());
        let mut fp = vec![vec![zero.clone(); h_max + 1]];
        for k in 1..=k_max {
            let (pf, pfp) = (&f[k - 1], &fp[k - 1]);
            let mut fk = vec![zero.clone(); h_max + 1];
            let mut fpk = vec![zero.clone(); h_max + 1];
            for h in 0..=h_max {
                for i in 1..=lx.min(h) {
                    fk[h] = add(&fk[h], mul(&xs[i - 1], &pf[h - i]));
                }
            }
            for h in 0..h_max {
                let mut v = zero.clone();
                for i in 1..=lx.min(h) {
                    v = add(&v, mul(&xs[i - 1], &pfp[h + 1 - i]));
                }
                for i in 1..=ly.min(h) {
                    v = add(&v, mul(&ys[i - 1], &pfp[h + 1 - i]));
                }
                for i in 1..=ly.min(h + 1) {
                    v = add(&v, mul(&ys[i - 1], &pf[h + 1 - i]));
                }
                fpk[h + 1] = v;
            }
            f.push(fk);
            fp.push(fpk);
        }
        LemmaA { lx, ly, vars, f, fp }
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn lx(&self) -> usize {
        self.lx
    }

    pub fn ly(&self) -> usize {
        self.ly
    }

    fn lookup<'a>(&self, table: &'a [Vec<IntPoly>], h: usize, k: usize) -> Result<&'a IntPoly> {
        table
            .get(k)
            .and_then(|row| row.get(h))
            .ok_or_else(|| Error::Domain(format!("(h,k)=({h},{k}) outside the computed table")))
    }

    pub fn f(&self, h: usize, k: usize) -> Result<&IntPoly> {
        self.lookup(&self.f, h, k)
    }

    pub fn f_prime(&self, h: usize, k: usize) -> Result<&IntPoly> {
        self.lookup(&self.fp, h, k)
    }
}

/// `f_h(l,l',k)`, `f'_h(l,l',k)` or `f_0(l,l',k)` over `ℤ[x_1..x_l, y_1..y_{l'}]`.
pub fn f_coeff(l: usize, l_prime: usize, k: usize, h: usize, kind: CoeffKind) -> Result<IntPoly> {
    match kind {
        CoeffKind::X if l == 0 => return Err(Error::Domain("no x variables when l = 0".to_string())),
        CoeffKind::X | CoeffKind::Y if h == 0 => return Err(Error::Domain("h must be positive".to_string())),
        _ => {}
    }
    let h = if kind == CoeffKind::Const { 0 } else { h };
    let table = LemmaA::new(l, l_prime, k, h);
    Ok(match kind {
        CoeffKind::Y => table.f_prime(h, k)?.clone(),
        _ => table.f(h, k)?.clone(),
    })
}

/// Variables of `Υ(n,l)`: `x_1..x_{n−l+1}, y_1..y_{l−1}, z`.
pub fn upsilon_variables(n: usize, l: usize) -> Variables {
    let mut names = Variables::indexed("x", n - l + 1);
    names.extend(Variables::indexed("y", l - 1));
    names.push("z".to_string());
    Variables::new(names)
}

/// `Φ(n,l)` computed with `l'` y-variables in the recurrence table.
pub fn build_phi_with(n: usize, l: usize, l_prime: usize) -> Result<Matrix<IntPoly>> {
    check_l(n, l)?;
    let lx = n - l + 1;
    let table = LemmaA::new(lx, l_prime, n, n - l + 1);
    let target = Variables::new(Variables::indexed("x", lx));
    let mut rows = Vec::new();
    for h in 1..=n - l + 2 {
        rows.push((1..=n).map(|k| table.f(h - 1, n - k)?.embed(&target)).collect::<Result<Vec<_>>>()?);
    }
    Matrix::from_rows(rows)
}

pub fn build_phi(n: usize, l: usize) -> Result<Matrix<IntPoly>> {
    build_phi_with(n, l, 1)
}

/// `Ψ(n,l)` computed with `l' ≥ l−2` x-variables in the recurrence table.
pub fn build_psi_with(n: usize, l: usize, l_prime: usize) -> Result<Matrix<IntPoly>> {
    if l < 2 || n < l {
        return Err(Error::Domain(format!("l={l} outside 2..=n for n={n}")));
    }
    if l_prime + 2 < l {
        return Err(Error::Domain(format!("l'={l_prime} must be at least l-2")));
    }
    let table = LemmaA::new(l_prime, l - 1, n, l - 1);
    let mut names = Variables::indexed("x", l - 2);
    names.extend(Variables::indexed("y", l - 1));
    let target = Variables::new(names);
    let mut rows = Vec::new();
    for h in 1..l {
        rows.push((1..=n).map(|k| table.f_prime(h, n - k)?.embed(&target)).collect::<Result<Vec<_>>>()?);
    }
    Matrix::from_rows(rows)
}

pub fn build_psi(n: usize, l: usize) -> Result<Matrix<IntPoly>> {
    build_psi_with(n, l, l - 2)
}

/// An `n × N` polynomial matrix whose columns carry `L_n` labels.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledPolyMatrix {
    pub order: LnOrder,
    pub matrix: Matrix<IntPoly>,
}

impl LabeledPolyMatrix {
    pub fn vars(&self) -> &Variables {
        self.matrix.get(0, 0).vars()
    }

    pub fn column(&self, p: IndexPair) -> Option<Vec<IntPoly>> {
        self.order.position(p).map(|c| self.matrix.column(c))
    }

    /// Substitutes integer values for named variables; the variable list is
    /// kept.
    pub fn specialize(&self, values: &[(&str, BigInt)]) -> Result<LabeledPolyMatrix> {
        Ok(LabeledPolyMatrix {
            order: self.order.clone(),
            matrix: self.matrix.try_map(|e| e.specialize_named(values))?,
        })
    }

    /// Evaluates every entry over `F_p`.
    pub fn evaluate_mod(&self, field: &PrimeField, point: &[u64]) -> Result<Matrix<u64>> {
        self.matrix.try_map(|e| e.reduce_mod_p(*field).evaluate_at(point))
    }
}

/// `Υ(n,l)` with columns in [`LnOrder`].
pub fn build_upsilon(n: usize, l: usize) -> Result<LabeledPolyMatrix> {
    check_l(n, l)?;
    let vars = upsilon_variables(n, l);
    let table = LemmaA::new(n - l + 1, l - 1, n, n + 1);
    let ring = Integers;
    let zero = MultiPoly::zero(ring, vars.clone());
    let z = MultiPoly::var_named(ring, vars.clone(), "z")?;
    let order = LnOrder::new(n);
    let mut columns = Vec::with_capacity(order.len());
    for p in order.pairs() {
        let (i, j) = (p.i, p.j);
        let mut full = Vec::with_capacity(n + 1);
        for h in 1..=n - l + 2 {
            full.push(if i > n - l + 1 || h <= i { zero.clone() } else { table.f(h - 1 - i, j)?.embed(&vars)? });
        }
        for hp in 1..l {
            full.push(if i + 2 > l || hp <= i { zero.clone() } else { table.f_prime(hp - i, j)?.embed(&vars)? });
        }
        let last = full.pop().expect("n+1 rows");
        let r = n - l + 1;
        full[r] = full[r].checked_add(&z.checked_mul(&last)?)?;
        columns.push(full);
    }
    Ok(LabeledPolyMatrix { order, matrix: Matrix::from_columns(n, &columns)? })
}

/// `det μ(I, M)`: the minor on the columns `I`, taken in label order.
pub fn minor_det(m: &LabeledPolyMatrix, set: &[IndexPair]) -> Result<IntPoly> {
    let n = m.matrix.rows();
    if set.len() != n {
        return Err(Error::Domain(format!("index set has {} elements, expected {n}", set.len())));
    }
    let mut cols = set
        .iter()
        .map(|&p| m.order.position(p).ok_or_else(|| Error::Domain(format!("{p} is not in L_{n}"))))
        .collect::<Result<Vec<_>>>()?;
    cols.sort_unstable();
    if cols.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Domain("index set has repeated elements".to_string()));
    }
    let rows: Vec<usize> = (0..n).collect();
    let sub = m.matrix.submatrix(&rows, &cols)?;
    matrix::det_fraction_free(&MultiPolyRing::new(Integers, m.vars().clone()), &sub)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Specialization {
    /// `Ῡ(n,m)`: all `x` and `y_2..` zero, `y_1 = 1`.
    Bar,
    /// `Υ̂(n,m−1)`: `x_{n−2m+5}..` and `y_2..` zero, `y_1 = 1`.
    Hat,
}

/// The named specialization. `z` stays symbolic unless a value is given.
pub fn specialize_upsilon(n: usize, m: usize, which: Specialization, z: Option<BigInt>) -> Result<LabeledPolyMatrix> {
    let mut values: Vec<(String, BigInt)> = Vec::new();
    let base = match which {
        Specialization::Bar => {
            let u = build_upsilon(n, m)?;
            for i in 1..=n - m + 1 {
                values.push((format!("x{i}"), BigInt::zero()));
            }
            for j in 2..m {
                values.push((format!("y{j}"), BigInt::zero()));
            }
            u
        }
        Specialization::Hat => {
            if m < 3 {
                return Err(Error::Domain(format!("m={m} must be at least 3")));
            }
            check_l(n, m)?;
            let u = build_upsilon(n, m - 1)?;
            for i in n + 5 - 2 * m..=n - m + 2 {
                values.push((format!("x{i}"), BigInt::zero()));
            }
            for j in 2..m - 1 {
                values.push((format!("y{j}"), BigInt::zero()));
            }
            u
        }
    };
    values.push(("y1".to_string(), BigInt::one()));
    if let Some(z) = z {
        values.push(("z".to_string(), z));
    }
    let refs: Vec<(&str, BigInt)> = values.iter().map(|(s, v)| (s.as_str(), v.clone())).collect();
    base.specialize(&refs)
}

/// `I ⊇ {(n−l,0),…,(0,0)}` and the remaining `l−1` pairs have one `(h,k)`
/// with `k ≥ 1` in each degree `1..l−2`, plus one pair that is `(n−l+1,0)`
/// or has `k ≥ 1` and degree `l−1`.
pub fn has_property_p(set: &[IndexPair], l: usize, n: usize) -> bool {
    if l < 2 || l > n + 1 {
        return false;
    }
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != set.len() {
        return false;
    }
    if !(0..=n - l).all(|i| sorted.contains(&IndexPair::new(i, 0))) {
        return false;
    }
    let rest: Vec<IndexPair> = sorted.into_iter().filter(|p| !(p.j == 0 && p.i + l <= n)).collect();
    if rest.len() != l - 1 {
        return false;
    }
    let mut seen = vec![false; l.saturating_sub(1)];
    let mut extra = Vec::new();
    for p in rest {
        let d = p.i + p.j;
        if p.j >= 1 && (1..=l - 2).contains(&d) {
            if seen[d] {
                return false;
            }
            seen[d] = true;
        } else {
            extra.push(p);
        }
    }
    extra.len() == 1 && {
        let p = extra[0];
        p == IndexPair::new(n - l + 1, 0) || (p.j >= 1 && p.i + p.j == l - 1)
    }
}

/// One of the three determinant identities on `Υ̂(n,m−1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MinorIdentity {
    pub n: usize,
    pub m: usize,
    /// `"Z_{m-1}"`, `"Z_m"` or `"Z_{m-1,i}"` with `i` filled in.
    pub set_name: String,
    pub expected: IntPoly,
    pub actual: IntPoly,
}

impl MinorIdentity {
    pub fn holds(&self) -> bool {
        self.actual == self.expected
    }

    pub fn holds_up_to_sign(&self) -> bool {
        self.holds() || self.actual == self.expected.neg()
    }
}

/// `det μ(Z_{m−1}, Υ̂) = 1`, `det μ(Z_m, Υ̂) = z` and
/// `det μ(Z_{m−1,i}, Υ̂) = x_i` for every valid `m` at this `n`.
pub fn prop_4_3_identities(n: usize) -> Result<Vec<MinorIdentity>> {
    let mut out = Vec::new();
    for m in 3..=n.div_ceil(2) {
        let hat = specialize_upsilon(n, m, Specialization::Hat, None)?;
        let vars = hat.vars().clone();
        let named = |s: &str| MultiPoly::var_named(Integers, vars.clone(), s);
        let mut push = |name: String, expected: IntPoly, set: Vec<IndexPair>| -> Result<()> {
            out.push(MinorIdentity { n, m, set_name: name, expected, actual: minor_det(&hat, &set)? });
            Ok(())
        };
        push("Z_{m-1}".to_string(), MultiPoly::one(Integers, vars.clone()), z_set(n, m - 1)?)?;
        push("Z_m".to_string(), named("z")?, z_set(n, m)?)?;
        for i in 1..=n + 4 - 2 * m {
            push(format!("Z_{{m-1,{i}}}"), named(&format!("x{i}"))?, z_set_variant(n, m, i)?)?;
        }
    }
    Ok(out)
}

/// The index set of the characteristic-3 example.
pub fn char3_index_set() -> Vec<IndexPair> {
    [(3, 0), (2, 0), (1, 0), (0, 3), (0, 2), (0, 1), (0, 0)].into_iter().map(|(i, j)| IndexPair::new(i, j)).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct CharWitness {
    pub prime: u64,
    /// `det μ(I, Υ(7,3))` over `ℤ`.
    pub det_l3: IntPoly,
    /// `det μ(I, Υ(7,4))` over `ℤ`.
    pub det_l4: IntPoly,
    pub l3_vanishes_mod_p: bool,
    pub l4_vanishes_mod_p: bool,
}

impl CharWitness {
    pub fn holds(&self) -> bool {
        self.l3_vanishes_mod_p && !self.l4_vanishes_mod_p
    }
}

pub fn char_p_witness() -> Result<CharWitness> {
    let set = char3_index_set();
    let f3 = PrimeField::new(3)?;
    let det_l3 = minor_det(&build_upsilon(7, 3)?, &set)?;
    let det_l4 = minor_det(&build_upsilon(7, 4)?, &set)?;
    Ok(CharWitness {
        prime: 3,
        l3_vanishes_mod_p: det_l3.reduce_mod_p(f3).is_zero(),
        l4_vanishes_mod_p: det_l4.reduce_mod_p(f3).is_zero(),
        det_l3,
        det_l4,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LemmaMCase {
    /// `Υ(n,2)` against a regular nilpotent `A`.
    Regular,
    /// `Υ(n,l)` against `A_{l,n}(c)`.
    Aln,
}

/// Column-by-column comparison of an evaluated `Υ` with coordinates of
/// `A^i B^j v` in the stated basis. `upsilon` must be `build_upsilon(n, l)`
/// (`l = 2` for [`LemmaMCase::Regular`]).
pub fn verify_lemma_m<G: Rng + ?Sized>(
    case: LemmaMCase,
    upsilon: &LabeledPolyMatrix,
    l: usize,
    field: &PrimeField,
    rng: &mut G,
) -> Result<bool> {
    let n = upsilon.matrix.rows();
    let f = field;
    let rand_vec = |rng: &mut G| -> Vec<u64> { (0..n).map(|_| f.random(rng)).collect() };
    let (a, b, basis, point) = match case {
        LemmaMCase::Regular => {
            if l != 2 {
                return Err(Error::Domain("the regular case uses l = 2".to_string()));
            }
            let (p, p_inv) = matrix::random_invertible(f, n, rng);
            let a = p.mul(f, &matrix::jordan_block(f, n))?.mul(f, &p_inv)?;
            let alpha: Vec<u64> = (0..n - 1).map(|_| f.random(rng)).collect();
            let mut b = Matrix::zeros(f, n, n);
            let mut ap = a.clone();
            for al in &alpha {
                b = b.add(f, &ap.scale(f, al))?;
                ap = ap.mul(f, &a)?;
            }
            let top = a.pow(f, (n - 1) as u32)?;
            let v = resample(rng, |rng| {
                let v = rand_vec(rng);
                top.mul_vec(f, &v).map(|w| w.iter().any(|&x| x != 0).then_some(v))
            })?;
            let basis = krylov(f, &[(&a, n - 1)], &v)?;
            let mut point = alpha[..n - 2].to_vec();
            point.extend([0, 1, alpha[n - 2]]);
            (a, b, basis, point)
        }
        LemmaMCase::Aln => {
            if l < 3 || l > n.div_ceil(2) {
                return Err(Error::Domain(format!("l={l} outside 3..=ceil(n/2) for n={n}")));
            }
            let c = f.random_nonzero(rng);
            let a = a_ln(f, l, n, c);
            let j = j_ln(f, l, n);
            let alpha: Vec<u64> = (0..n - l + 1).map(|_| f.random(rng)).collect();
            let beta: Vec<u64> = (0..l - 2).map(|_| f.random(rng)).collect();
            let mut b = Matrix::zeros(f, n, n);
            for (k, al) in alpha.iter().enumerate() {
                b = b.add(f, &a.pow(f, (k + 1) as u32)?.scale(f, al))?;
            }
            for (k, be) in beta.iter().enumerate() {
                b = b.add(f, &j.pow(f, (k + 1) as u32)?.scale(f, be))?;
            }
            let top = j.pow(f, (l - 1) as u32)?;
            let v = resample(rng, |rng| {
                let v = rand_vec(rng);
                top.mul_vec(f, &v).map(|w| w.iter().any(|&x| x != 0).then_some(v))
            })?;
            let basis = krylov(f, &[(&a, n - l + 1), (&j, l - 2)], &v)?;
            let mut point = alpha;
            point.extend(beta);
            point.extend([0, f.inv(&c).expect("nonzero")]);
            (a, b, basis, point)
        }
    };
    let evaluated = upsilon.evaluate_mod(f, &point)?;
    let basis_inv = matrix::inverse(f, &basis)
        .ok_or_else(|| Error::Domain("basis vectors are dependent".to_string()))?;
    let v = basis.column(0);
    for (col, p) in upsilon.order.pairs().iter().enumerate() {
        let w = a.pow(f, p.i as u32)?.mul(f, &b.pow(f, p.j as u32)?)?.mul_vec(f, &v)?;
        if basis_inv.mul_vec(f, &w)? != evaluated.column(col) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaACharReport {
    pub polynomials: usize,
    pub failures: Vec<String>,
}

impl LemmaACharReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For `k ≤ k_max`: no coefficient of `f_h`, `f'_h` or of `f'_h` at
/// `y_1 = 1, y_{≥2} = 0` is divisible by a listed prime `p > k`; for `k ≠ 1`
/// the entries vanish when `h ≤ k−1`, and otherwise are homogeneous of degree
/// `k` in `x_1..x_{min(l,h−k+1)}` (and `y_1..y_{min(l',h−k+1)}`).
pub fn check_lemma_a_char(l: usize, l_prime: usize, k_max: usize, primes: &[u64]) -> Result<LemmaACharReport> {
    let h_max = l.max(l_prime) * k_max + 1;
    let table = LemmaA::new(l, l_prime, k_max, h_max);
    let mut values: Vec<(&str, BigInt)> = vec![("y1", BigInt::one())];
    let names: Vec<String> = (2..=l_prime).map(|j| format!("y{j}")).collect();
    values.extend(names.iter().map(|s| (s.as_str(), BigInt::zero())));
    let mut report = LemmaACharReport::default();
    for k in 0..=k_max {
        for h in 1..=h_max {
            let fh = table.f(h, k)?;
            let fph = table.f_prime(h, k)?;
            let special = if l_prime > 0 { fph.specialize_named(&values)? } else { fph.clone() };
            for (name, poly) in [("f", fh), ("f'", fph), ("f'|y1=1", &special)] {
                report.polynomials += 1;
                for (_, c) in poly.terms() {
                    for &p in primes.iter().filter(|&&p| p as usize > k) {
                        if (c % BigInt::from(p)).is_zero() {
                            report.failures.push(format!("{name}_{h}(k={k}) has coefficient {c} divisible by {p}"));
                        }
                    }
                }
            }
            if k == 1 {
                continue;
            }
            if h < k {
                if !fh.is_zero() || !fph.is_zero() {
                    report.failures.push(format!("f_{h}(k={k}) or f'_{h}(k={k}) nonzero below the diagonal"));
                }
                continue;
            }
            if l == 0 {
                continue;
            }
            let bx = l.min(h + 1 - k);
            let by = l_prime.min(h + 1 - k);
            let within = |poly: &IntPoly, ybound: usize| {
                poly.support().into_iter().all(|v| if v < l { v < bx } else { v - l < ybound })
            };
            if !fh.is_zero() && (!fh.is_homogeneous(k as u32) || !within(fh, 0)) {
                report.failures.push(format!("f_{h}(k={k}) fails homogeneity or support"));
            }
            if !fph.is_zero() && (!fph.is_homogeneous(k as u32) || !within(fph, by)) {
                report.failures.push(format!("f'_{h}(k={k}) fails homogeneity or support"));
            }
        }
    }
    Ok(report)
}

fn resample<G: Rng + ?Sized, T>(rng: &mut G, mut draw: impl FnMut(&mut G) -> Result<Option<T>>) -> Result<T> {
    for _ in 0..64 {
        if let Some(t) = draw(rng)? {
            return Ok(t);
        }
    }
    Err(Error::Precondition("no vector met the nondegeneracy premise in 64 draws".to_string()))
}

/// Columns `v, M_1 v, …, M_1^{e_1} v, M_2 v, …, M_2^{e_2} v`.
fn krylov(field: &PrimeField, gens: &[(&Matrix<u64>, usize)], v: &[u64]) -> Result<Matrix<u64>> {
    let mut cols = vec![v.to_vec()];
    for (m, e) in gens {
        let mut w = v.to_vec();
        for _ in 0..*e {
            w = m.mul_vec(field, &w)?;
            cols.push(w.clone());
        }
    }
    Matrix::from_columns(v.len(), &cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::trial_rng;

    fn parse_rows(vars: &Variables, rows: &[&[&str]]) -> Matrix<IntPoly> {
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|s| MultiPoly::parse(vars.clone(), s).unwrap()).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn phi_7_3_golden() {
        let vars = Variables::new(Variables::indexed("x", 5));
        let expected = parse_rows(
            &vars,
            &[
                &["0", "0", "0", "0", "0", "0", "1"],
                &["0", "0", "0", "0", "0", "x1", "0"],
                &["0", "0", "0", "0", "x1^2", "x2", "0"],
                &["0", "0", "0", "x1^3", "2*x1*x2", "x3", "0"],
                &["0", "0", "x1^4", "3*x1^2*x2", "x2^2 + 2*x1*x3", "x4", "0"],
                &["0", "x1^5", "4*x1^3*x2", "3*x1^2*x3 + 3*x1*x2^2", "2*x1*x4 + 2*x2*x3", "x5", "0"],
            ],
        );
        assert_eq!(build_phi(7, 3).unwrap(), expected);
        assert_eq!(build_phi_with(7, 3, 4).unwrap(), expected);
    }

    #[test]
    fn psi_7_4_golden() {
        let vars = Variables::new(["x1", "x2", "y1", "y2", "y3"]);
        let expected = parse_rows(
            &vars,
            &[
                &["0", "0", "0", "0", "0", "y1", "0"],
                &["0", "0", "0", "0", "y1^2 + 2*x1*y1", "y2", "0"],
                &["0", "0", "0", "y1^3 + 3*x1*y1^2 + 3*x1^2*y1", "2*y1*y2 + 2*x1*y2 + 2*x2*y1", "y3", "0"],
            ],
        );
        assert_eq!(build_psi(7, 4).unwrap(), expected);
        assert_eq!(build_psi_with(7, 4, 5).unwrap(), expected);
    }

    #[test]
    fn ln_order_positions() {
        let o = LnOrder::new(4);
        assert_eq!(o.len(), 10);
        for (k, p) in o.pairs().iter().enumerate() {
            assert_eq!(o.position(*p), Some(k));
        }
        assert_eq!(o.pairs()[0], IndexPair::new(3, 0));
        assert_eq!(o.pairs()[9], IndexPair::new(0, 0));
    }

    #[test]
    fn z_sets() {
        assert_eq!(z_set(5, 2).unwrap(), (0..5).rev().map(|i| IndexPair::new(i, 0)).collect::<Vec<_>>());
        for n in 5usize..=9 {
            for l in 2..=n.div_ceil(2) {
                let z = z_set(n, l).unwrap();
                assert_eq!(z.len(), n);
                assert!(has_property_p(&z, l, n), "Z_{l} for n={n}");
            }
        }
        assert!(!has_property_p(&z_set(8, 3).unwrap(), 4, 8));
    }

    #[test]
    fn upsilon_shape_and_z_row() {
        let u = build_upsilon(7, 3).unwrap();
        assert_eq!((u.matrix.rows(), u.matrix.cols()), (7, 28));
        let z = u.vars().index_of("z").unwrap();
        for r in 0..7 {
            for c in 0..28 {
                if r != 7 - 3 + 1 {
                    assert!(u.matrix.get(r, c).degree_in(z).unwrap_or(0) == 0);
                }
            }
        }
    }

    #[test]
    fn minor_rejects_bad_sets() {
        let u = build_upsilon(5, 2).unwrap();
        assert!(minor_det(&u, &z_set(5, 2).unwrap()[..4]).is_err());
        let mut s = z_set(5, 2).unwrap();
        s[0] = IndexPair::new(5, 0);
        assert!(minor_det(&u, &s).is_err());
    }

    #[test]
    fn lemma_m_both_cases() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = trial_rng(3, 0);
        for n in 4..=7 {
            let u = build_upsilon(n, 2).unwrap();
            assert!(verify_lemma_m(LemmaMCase::Regular, &u, 2, &f, &mut rng).unwrap());
        }
        for (n, l) in [(6, 3), (7, 3), (7, 4)] {
            let u = build_upsilon(n, l).unwrap();
            assert!(verify_lemma_m(LemmaMCase::Aln, &u, l, &f, &mut rng).unwrap(), "n={n} l={l}");
        }
    }

    #[test]
    fn lemma_a_char_small() {
        let r = check_lemma_a_char(5, 3, 4, &[5, 7]).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn identities_n7_report() {
        for id in prop_4_3_identities(7).unwrap() {
            assert!(id.holds_up_to_sign(), "{} {} {} = {}", id.n, id.m, id.set_name, id.actual);
        }
    }
}
