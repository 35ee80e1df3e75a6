//! Verifiers for the rank inequalities on powers of commuting nilpotent
//! matrices, the perturbation scans that coarsen Jordan types, and the
//! `A_{l,n}(c)` normal form.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use rand::Rng;

use crate::algebra::{Field, Integers, MultiPoly, MultiPolyRing, PrimeField, Ring, UniPoly, UniPolyRing, Variables};
use crate::commutant::{
    block_ranks, in_triangular_cone, jordan_basis, jordan_partition, partition_invariants,
    sample_nilpotent_commuting, JordanData, Partition, SampleMode,
};
use crate::matrix::{self, Matrix, SpanBuilder};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Law {
    Lemma31,
    Cor32,
    Lemma33,
    Prop35,
}

impl Law {
    pub const ALL: [Law; 4] = [Law::Lemma31, Law::Cor32, Law::Lemma33, Law::Prop35];

    pub fn id(self) -> &'static str {
        match self {
            Law::Lemma31 => "lemma-3.1",
            Law::Cor32 => "cor-3.2",
            Law::Lemma33 => "lemma-3.3",
            Law::Prop35 => "prop-3.5",
        }
    }

    pub fn parse(s: &str) -> Option<Law> {
        Law::ALL.into_iter().find(|l| l.id() == s)
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// A single bound that failed. Block indices are 0-based; `m` is the power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub law: Law,
    pub partition: Partition,
    pub prime: u64,
    pub i: usize,
    pub j: usize,
    pub m: usize,
    pub rank: usize,
    pub bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankLawReport {
    pub law: Law,
    pub trials: u64,
    pub violations: Vec<Violation>,
}

impl RankLawReport {
    pub fn new(law: Law) -> Self {
        RankLawReport { law, trials: 0, violations: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Associative merge of two reports for the same law.
    pub fn merge(mut self, other: RankLawReport) -> RankLawReport {
        debug_assert_eq!(self.law, other.law);
        self.trials += other.trials;
        self.violations.extend(other.violations);
        self
    }
}

struct Recorder<'a> {
    report: RankLawReport,
    partition: &'a Partition,
    prime: u64,
}

impl Recorder<'_> {
    fn check(&mut self, i: usize, j: usize, m: usize, rank: usize, bound: usize) {
        if rank > bound {
            self.report.violations.push(Violation {
                law: self.report.law,
                partition: self.partition.clone(),
                prime: self.prime,
                i,
                j,
                m,
                rank,
                bound,
            });
        }
    }
}

fn recorder<'a>(law: Law, partition: &'a Partition, field: &PrimeField) -> Recorder<'a> {
    let mut report = RankLawReport::new(law);
    report.trials = 1;
    Recorder { report, partition, prime: field.modulus() }
}

/// `a` in Jordan coordinates of `b`, after checking `a ∈ N_B`.
fn in_centralizer(field: &PrimeField, a: &Matrix<u64>, b: &Matrix<u64>) -> Result<(JordanData, Matrix<u64>)> {
    let jd = jordan_basis(field, b)?;
    if !a.commutator(field, b)?.is_zero(field) {
        return Err(Error::Domain("A does not commute with B".to_string()));
    }
    if a.nilpotency_index(field)?.is_none() {
        return Err(Error::Domain("A is not nilpotent".to_string()));
    }
    let ap = jd.to_jordan_coords(field, a)?;
    Ok((jd, ap))
}

/// Block rank bounds on `A^m` inside each maximal near-equal block set, for
/// `A ∈ N_{B,Δ_B}` with `Δ_B` the basis carried by `jd`.
pub fn check_lemma_3_1(field: &PrimeField, a: &Matrix<u64>, jd: &JordanData) -> Result<RankLawReport> {
    let ap = jd.to_jordan_coords(field, a)?;
    if !in_triangular_cone(field, &jd.partition, &ap)? {
        return Err(Error::Domain("A is not in N_{B,Δ_B}".to_string()));
    }
    let u = jd.partition.parts();
    let mut rec = recorder(Law::Lemma31, &jd.partition, field);
    let sets = jd.partition.near_equal_sets();
    let r_max = sets.iter().map(|s| s.len()).max().unwrap_or(0);
    let mut power = ap.clone();
    for m in 2..=r_max {
        power = power.mul(field, &ap)?;
        let ranks = block_ranks(field, &jd.partition, &power)?;
        for set in sets.iter().filter(|s| s.len() >= m) {
            let r = set.len();
            for i in set.clone() {
                for j in set.clone() {
                    if j >= i && j - i < m {
                        rec.check(i, j, m, ranks[i][j], u[j] - 1);
                    }
                    if i >= j && i - j >= r + 1 - m {
                        rec.check(i, j, m, ranks[i][j], u[j].saturating_sub(2));
                    }
                }
            }
        }
    }
    Ok(rec.report)
}

/// `rank (A^{s_B})_{ij} ≤ min(u_i,u_j) − 1` whenever `|u_i − u_j| ≤ 1`.
pub fn check_cor_3_2(field: &PrimeField, a: &Matrix<u64>, b: &Matrix<u64>) -> Result<RankLawReport> {
    let (jd, ap) = in_centralizer(field, a, b)?;
    let u = jd.partition.parts();
    let s_b = partition_invariants(&jd.partition).s_b;
    let ranks = block_ranks(field, &jd.partition, &ap.pow(field, s_b as u32)?)?;
    let mut rec = recorder(Law::Cor32, &jd.partition, field);
    for i in 0..u.len() {
        for j in 0..u.len() {
            if u[i].abs_diff(u[j]) <= 1 {
                rec.check(i, j, s_b, ranks[i][j], u[i].min(u[j]) - 1);
            }
        }
    }
    Ok(rec.report)
}

/// `rank (A^m)_{ij} ≤ min(u_i,u_j) − m + h(i,j)` for `A ∈ N̂_B` and all `m ≤ n`.
pub fn check_lemma_3_3(field: &PrimeField, a: &Matrix<u64>, b: &Matrix<u64>) -> Result<RankLawReport> {
    let (jd, ap) = in_centralizer(field, a, b)?;
    let u = jd.partition.parts();
    let inv = partition_invariants(&jd.partition);
    let first = block_ranks(field, &jd.partition, &ap)?;
    for i in 0..u.len() {
        for j in 0..u.len() {
            if u[i].abs_diff(u[j]) <= 1 && first[i][j] + 1 > u[i].min(u[j]) {
                return Err(Error::Precondition(alloc::format!(
                    "A is not in N̂_B: block ({i},{j}) has rank {}",
                    first[i][j]
                )));
            }
        }
    }
    let mut rec = recorder(Law::Lemma33, &jd.partition, field);
    let mut power = ap.clone();
    for m in 1..=jd.partition.n() {
        if m > 1 {
            power = power.mul(field, &ap)?;
        }
        let ranks = if m == 1 { first.clone() } else { block_ranks(field, &jd.partition, &power)? };
        for i in 0..u.len() {
            for j in 0..u.len() {
                let bound = (u[i].min(u[j]) + inv.h(i, j)).saturating_sub(m);
                rec.check(i, j, m, ranks[i][j], bound);
            }
        }
    }
    Ok(rec.report)
}

/// Ranks compared by the function-field rank inequality at one power `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop35Check {
    pub m: usize,
    pub rank_b_power: usize,
    /// `rank (A^{s_B})^m`.
    pub rank_a_power: usize,
    /// `rank (B + x A^{s_B})^m` over `F_p(x)`.
    pub rank_perturbed: usize,
}

impl Prop35Check {
    pub fn holds(&self) -> bool {
        self.rank_a_power <= self.rank_b_power && self.rank_perturbed <= self.rank_b_power
    }
}

/// Embeds a field matrix as constant polynomials.
pub fn constant_poly_matrix(field: &PrimeField, m: &Matrix<u64>) -> Matrix<UniPoly<PrimeField>> {
    m.map(|&c| UniPoly::constant(*field, c))
}

pub fn check_prop_3_5(field: &PrimeField, a: &Matrix<u64>, b: &Matrix<u64>, m: usize) -> Result<Prop35Check> {
    let (jd, _) = in_centralizer(field, a, b)?;
    let s_b = partition_invariants(&jd.partition).s_b;
    let a_s = a.pow(field, s_b as u32)?;
    let ring = UniPolyRing::new(*field);
    let x = ring.x();
    let y = constant_poly_matrix(field, b).add(&ring, &constant_poly_matrix(field, &a_s).scale(&ring, &x))?;
    Ok(Prop35Check {
        m,
        rank_b_power: matrix::rank_over_field(field, &b.pow(field, m as u32)?),
        rank_a_power: matrix::rank_over_field(field, &a_s.pow(field, m as u32)?),
        rank_perturbed: matrix::rank_over_polynomial_ring(&ring, &y.pow(&ring, m as u32)?),
    })
}

/// Outcome of scanning `a ∈ F_p` for a rank-dropping perturbation
/// `B + a·A^{s_B}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerturbationOutcome {
    pub coefficient: Option<u64>,
    pub before: Partition,
    pub after: Option<Partition>,
    pub cond_a: bool,
    pub cond_b: bool,
    pub cond_c: bool,
    /// Number of scanned values satisfying condition a).
    pub hits: usize,
    pub scanned: usize,
}

impl PerturbationOutcome {
    pub fn full(&self) -> bool {
        self.cond_a && self.cond_b && self.cond_c
    }
}

/// Largest field for which every element is scanned.
pub const FULL_SCAN_LIMIT: u64 = 65_536;
/// Random probes used above [`FULL_SCAN_LIMIT`].
pub const RANDOM_PROBES: usize = 4096;

/// Scans for `a` with a) `rank (B+aA^{s_B})^{u_{i_1}−1} < rank B^{u_{i_1}−1}`,
/// b) `rank (B+aA^{s_B}) ≥ rank B − 1` and c) equal ranks of the powers
/// `u_{i_1}, …, u_1`. Returns the first full hit, else the best partial hit
/// (a and c, then a and b, then a alone).
pub fn perturb_scan<G: Rng + ?Sized>(
    field: &PrimeField,
    a: &Matrix<u64>,
    b: &Matrix<u64>,
    set: &[usize],
    rng: &mut G,
) -> Result<PerturbationOutcome> {
    let (jd, _) = in_centralizer(field, a, b)?;
    let u = jd.partition.parts().to_vec();
    let s_b = partition_invariants(&jd.partition).s_b;
    validate_set(&u, s_b, set)?;
    let top = u[set[0]];
    let a_s = a.pow(field, s_b as u32)?;
    let rank_pow = |m: &Matrix<u64>, e: usize| -> Result<usize> {
        Ok(matrix::rank_over_field(field, &m.pow(field, e as u32)?))
    };
    let target = rank_pow(b, top - 1)?;
    let rank_b = matrix::rank_over_field(field, b);
    let b_ranks: Vec<usize> = (top..=u[0]).map(|l| rank_pow(b, l)).collect::<Result<_>>()?;
    let candidates: Vec<u64> = if field.modulus() <= FULL_SCAN_LIMIT {
        (0..field.modulus()).collect()
    } else {
        (0..RANDOM_PROBES).map(|_| field.random(rng)).collect()
    };
    let mut best: Option<(u8, u64, bool, bool)> = None;
    let mut hits = 0;
    for &c in &candidates {
        let m = b.add(field, &a_s.scale(field, &c))?;
        if rank_pow(&m, top - 1)? >= target {
            continue;
        }
        hits += 1;
        let cb = matrix::rank_over_field(field, &m) + 1 >= rank_b;
        let mut cc = true;
        for (k, l) in (top..=u[0]).enumerate() {
            if rank_pow(&m, l)? != b_ranks[k] {
                cc = false;
                break;
            }
        }
        let score = match (cb, cc) {
            (true, true) => 3,
            (false, true) => 2,
            (true, false) => 1,
            (false, false) => 0,
        };
        if best.is_none_or(|(s, ..)| score > s) {
            best = Some((score, c, cb, cc));
        }
    }
    let before = jd.partition.clone();
    Ok(match best {
        None => PerturbationOutcome {
            coefficient: None,
            before,
            after: None,
            cond_a: false,
            cond_b: false,
            cond_c: false,
            hits,
            scanned: candidates.len(),
        },
        Some((_, c, cb, cc)) => {
            let after = jordan_partition(field, &b.add(field, &a_s.scale(field, &c))?)?;
            PerturbationOutcome {
                coefficient: Some(c),
                before,
                after: Some(after),
                cond_a: true,
                cond_b: cb,
                cond_c: cc,
                hits,
                scanned: candidates.len(),
            }
        }
    })
}

fn validate_set(u: &[usize], s_b: usize, set: &[usize]) -> Result<()> {
    let bad = |m: &str| Err(Error::Precondition(m.to_string()));
    if set.len() != s_b {
        return bad("index set must have s_B elements");
    }
    if set.iter().any(|&i| i >= u.len()) || set.windows(2).any(|w| w[0] >= w[1]) {
        return bad("index set must be increasing block indices");
    }
    if u[set[0]] - u[set[set.len() - 1]] > 1 {
        return bad("index set parts differ by more than one");
    }
    if u[set[0]] < 2 {
        return bad("index set must start at a part of size at least two");
    }
    Ok(())
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoarsenOptions {
    /// Index set for the first stage; later stages pick their own.
    pub initial_set: Option<Vec<usize>>,
    /// Stage budget; zero means `n²`.
    pub max_stages: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoarsenStage {
    pub s: usize,
    pub set: Vec<usize>,
    pub outcome: PerturbationOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoarsenOutcome {
    /// `f` with `x | f`.
    pub f: UniPoly<PrimeField>,
    pub final_partition: Partition,
    pub stages: Vec<CoarsenStage>,
}

/// Evaluates `f(A)`.
pub fn eval_poly_at_matrix(field: &PrimeField, f: &UniPoly<PrimeField>, a: &Matrix<u64>) -> Result<Matrix<u64>> {
    let n = a.rows();
    let mut acc = Matrix::zeros(field, n, n);
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(field, a)?.add(field, &Matrix::identity(field, n).scale(field, c))?;
    }
    Ok(acc)
}

/// Repeated perturbation until `B + f(A)` has `s` blocks of order one, `s`
/// its own near-equal maximum.
pub fn coarsen_to_singletons<G: Rng + ?Sized>(
    field: &PrimeField,
    a: &Matrix<u64>,
    b: &Matrix<u64>,
    opts: &CoarsenOptions,
    rng: &mut G,
) -> Result<CoarsenOutcome> {
    in_centralizer(field, a, b)?;
    let n = a.rows();
    let budget = if opts.max_stages == 0 { n * n } else { opts.max_stages };
    let mut f = UniPoly::zero(*field);
    let mut stages: Vec<CoarsenStage> = Vec::new();
    loop {
        let cur = b.add(field, &eval_poly_at_matrix(field, &f, a)?)?;
        let part = jordan_partition(field, &cur)?;
        let s = partition_invariants(&part).s_b;
        let ones = part.parts().iter().filter(|&&x| x == 1).count();
        if ones == s {
            return Ok(CoarsenOutcome { f, final_partition: part, stages });
        }
        if stages.len() >= budget {
            return Err(Error::ScanExhausted { stage: stages.len(), trace: trace(&stages) });
        }
        let set: Vec<usize> = match (&opts.initial_set, stages.is_empty()) {
            (Some(set), true) => set.clone(),
            _ => part
                .near_equal_sets()
                .into_iter()
                .rev()
                .find(|r| r.len() == s && part.parts()[r.start] >= 2)
                .map(|r| r.collect())
                .ok_or_else(|| Error::Domain("no admissible index set".to_string()))?,
        };
        let outcome = perturb_scan(field, a, &cur, &set, rng)?;
        let Some(c) = outcome.coefficient else {
            stages.push(CoarsenStage { s, set, outcome });
            return Err(Error::ScanExhausted { stage: stages.len() - 1, trace: trace(&stages) });
        };
        f = f.add(&UniPoly::monomial(*field, c, s));
        stages.push(CoarsenStage { s, set, outcome });
    }
}

fn trace(stages: &[CoarsenStage]) -> String {
    let parts: Vec<String> = stages
        .iter()
        .map(|st| {
            alloc::format!(
                "[{}] s={} set={:?} a={:?}",
                st.outcome.before, st.s, st.set, st.outcome.coefficient
            )
        })
        .collect();
    parts.join("; ")
}

/// One named claim and whether it held.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop38Report {
    pub claims: Vec<Claim>,
}

impl Prop38Report {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.holds)
    }
}

/// Checks the monic-degree claims for the entries of
/// `H^k = [[x,1],[1,x+y]]^k`, `det H`, and the period of `H(x,1)^k` over
/// `F_2` modulo `x^3 − 1`.
pub fn check_prop_3_8_prime(k_max: usize) -> Result<Prop38Report> {
    if k_max < 2 {
        return Err(Error::Precondition("k_max must be at least 2".to_string()));
    }
    let vars = Variables::new(["x", "y"]);
    let ring = MultiPolyRing::new(Integers, vars.clone());
    let p = |s: &str| MultiPoly::parse(vars.clone(), s);
    let h = Matrix::from_rows(vec![vec![p("x")?, p("1")?], vec![p("1")?, p("x + y")?]])?;
    let mut claims = Vec::new();
    let det = matrix::det_fraction_free(&ring, &h)?;
    claims.push(Claim { name: "det H = x^2 + y*x - 1".to_string(), holds: det == p("x^2 + x*y - 1")? });

    let zero = BigInt::from(0);
    let monic = |e: &MultiPoly<Integers>, keep: usize, deg: usize| -> Result<bool> {
        let other = 1 - keep;
        let u = e.specialize(&[(other, zero.clone())])?.to_univariate(keep)?;
        Ok(u.is_monic() && u.degree() == Some(deg))
    };
    let mut hk = h.clone();
    let mut all = true;
    for k in 2..=k_max {
        hk = hk.mul(&ring, &h)?;
        let ok = monic(hk.get(0, 0), 0, k)?
            && monic(hk.get(0, 0), 1, k - 2)?
            && monic(hk.get(0, 1), 1, k - 1)?
            && monic(hk.get(1, 0), 1, k - 1)?
            && monic(hk.get(1, 1), 1, k)?;
        if !ok {
            claims.push(Claim { name: alloc::format!("monic degrees at k={k}"), holds: false });
        }
        all &= ok;
    }
    claims.push(Claim { name: alloc::format!("monic degree claims for k=2..{k_max}"), holds: all });

    let f2 = PrimeField::new(2)?;
    let r2 = UniPolyRing::new(f2);
    let h1 = Matrix::from_rows(vec![
        vec![r2.x(), r2.one()],
        vec![r2.one(), r2.x().add(&r2.one())],
    ])?;
    let wrap = |m: &Matrix<UniPoly<PrimeField>>| m.map(|e| e.wrap_exponents(3));
    let tilde = |k: u32| -> Result<Matrix<UniPoly<PrimeField>>> { Ok(wrap(&h1.pow(&r2, k)?)) };
    let poly = |c: &[u64]| UniPoly::from_coeffs(f2, c.to_vec());
    let shown2 = Matrix::from_rows(vec![vec![poly(&[1, 0, 1]), poly(&[1])], vec![poly(&[1]), poly(&[0, 0, 1])]])?;
    let shown3 = Matrix::from_rows(vec![
        vec![poly(&[0, 1]), poly(&[0, 1, 1])],
        vec![poly(&[0, 1, 1]), poly(&[0, 0, 1])],
    ])?;
    claims.push(Claim { name: "H~_2 over F_2".to_string(), holds: tilde(2)? == shown2 });
    claims.push(Claim { name: "H~_3 over F_2".to_string(), holds: tilde(3)? == shown3 });
    claims.push(Claim { name: "H~_4 = H~_1 over F_2".to_string(), holds: tilde(4)? == tilde(1)? });
    Ok(Prop38Report { claims })
}

/// `J_{l,n} = diag(J_l, 0)`.
pub fn j_ln(field: &PrimeField, l: usize, n: usize) -> Matrix<u64> {
    let mut parts = vec![l];
    parts.extend(core::iter::repeat_n(1, n - l));
    Partition::new(parts).expect("valid").jordan_matrix(field)
}

/// `A_{l,n}(c) = [[J_l, E(c)], [E', J_{n−l}]]` with `c` at `(1, l+1)` and a
/// one at `(n, l)` (1-based).
pub fn a_ln(field: &PrimeField, l: usize, n: usize, c: u64) -> Matrix<u64> {
    let mut m = Matrix::block_diagonal(field, &[matrix::jordan_block(field, l), matrix::jordan_block(field, n - l)]);
    m.set(0, l, c);
    m.set(n - 1, l - 1, 1);
    m
}

fn lemma_4_2_range(l: usize, n: usize) -> Result<()> {
    if l < 3 || l > n.div_ceil(2) {
        return Err(Error::Domain(alloc::format!("l={l} outside 3..=ceil(n/2) for n={n}")));
    }
    Ok(())
}

/// The normal form: `basis⁻¹·A·basis = A_{l,n}(c)` and
/// `basis⁻¹·J_{l,n}·basis = f̂(J_{l,n})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma42Normal {
    pub c: u64,
    pub f_hat: UniPoly<PrimeField>,
    pub basis: Matrix<u64>,
}

fn check_lemma_4_2_premise(field: &PrimeField, a: &Matrix<u64>, l: usize, n: usize) -> Result<Matrix<u64>> {
    lemma_4_2_range(l, n)?;
    if a.rows() != n || !a.is_square() {
        return Err(Error::Dimension("A must be n×n".to_string()));
    }
    let j = j_ln(field, l, n);
    if !a.commutator(field, &j)?.is_zero(field) || a.nilpotency_index(field)?.is_none() {
        return Err(Error::Domain("A is not in N_{J_{l,n}}".to_string()));
    }
    let rank = matrix::rank_over_field(field, a);
    if rank != n - 2 {
        return Err(Error::Domain(alloc::format!("rank A = {rank}, expected {}", n - 2)));
    }
    let ind = a.nilpotency_index(field)?.unwrap_or(0);
    if ind != n - l + 2 {
        return Err(Error::Domain(alloc::format!("ind A = {ind}, expected {}", n - l + 2)));
    }
    Ok(j)
}

pub fn normalize_lemma_4_2(field: &PrimeField, a: &Matrix<u64>, l: usize, n: usize) -> Result<Lemma42Normal> {
    let j = check_lemma_4_2_premise(field, a, l, n)?;
    let internal = |m: &str| Error::Domain(alloc::format!("normal form construction failed: {m}"));
    // g_A(J_l) is the leading l×l block.
    let g: Vec<u64> = (0..l).map(|i| *a.get(0, i)).collect();
    // Rank n−2 and index n−l+2 do not force a linear term when l = 3.
    if g[1] == 0 {
        return Err(Error::Domain("x^2 divides g_A, so no A_{l,n}(c) normal form exists".to_string()));
    }
    let g_poly = UniPoly::from_coeffs(*field, g.clone());
    let gj = eval_poly_at_matrix(field, &g_poly, &j)?;
    let a0 = a.sub(field, &gj)?;
    let mut e_l = vec![0; n];
    e_l[l - 1] = 1;
    let top = a0.pow(field, (n - l + 1) as u32)?.mul_vec(field, &e_l)?;
    let a_a = top[0];
    if a_a == 0 || top[1..].iter().any(|&v| v != 0) {
        return Err(internal("A_0^{n-l+1} e_l is not a nonzero multiple of e_1"));
    }
    // x ≡ Σ γ_i g^i (mod x^l): triangular system in the coefficients of degree 1..l-1.
    let gx = UniPoly::from_coeffs(*field, g.clone());
    let cols: Vec<Vec<u64>> = (1..l)
        .map(|i| {
            let gi = gx.pow(i as u32);
            (1..l).map(|d| gi.coeff(d)).collect()
        })
        .collect();
    let sys = Matrix::from_columns(l - 1, &cols)?;
    let mut rhs = Matrix::zeros(field, l - 1, 1);
    rhs.set(0, 0, 1);
    let gamma = matrix::solve(field, &sys, &rhs).ok_or_else(|| internal("g_A has no linear term"))?.column(0);
    let c_prime = g[1];
    let c = field
        .div(&a_a, &field.pow(&c_prime, (l - 1) as u32))
        .ok_or_else(|| internal("zero linear coefficient"))?;
    let ratio = field.div(&gamma[l - 2], &gamma[0]).ok_or_else(|| internal("γ_1 = 0"))?;
    // e'_{l-i} = g_A(J)^i e_l
    let mut e_prime = vec![Vec::new(); l];
    let mut v = e_l.clone();
    for i in 1..l {
        v = gj.mul_vec(field, &v)?;
        e_prime[l - i] = v.clone();
    }
    let axpy = |x: &[u64], s: u64, y: &[u64]| -> Vec<u64> {
        x.iter().zip(y).map(|(a, b)| field.add(a, &field.mul(&s, b))).collect()
    };
    let mut basis_cols: Vec<Vec<u64>> = (1..l - 1).map(|k| e_prime[k].clone()).collect();
    basis_cols.push(axpy(&e_prime[l - 1], ratio, &e_prime[1]));
    let a0_top = a0.pow(field, (n - l) as u32)?.mul_vec(field, &e_l)?;
    let c_inv = field.inv(&c).ok_or_else(|| internal("c = 0"))?;
    basis_cols.push(axpy(&e_l, field.mul(&ratio, &c_inv), &a0_top));
    for k in (1..=n - l).rev() {
        basis_cols.push(a0.pow(field, k as u32)?.mul_vec(field, &e_l)?);
    }
    let basis = Matrix::from_columns(n, &basis_cols)?;
    let mut f_hat = vec![0];
    f_hat.extend_from_slice(&gamma[..l - 2]);
    Ok(Lemma42Normal { c, f_hat: UniPoly::from_coeffs(*field, f_hat), basis })
}

/// Independence of `{v, Av, …, A^{n−l+1}v, Jv, …, J^{l−2}v}` and of
/// `{A^i J^j v : (i,j) ∈ Z_l}` for `J = J_{l,n}`.
pub fn check_lemma_4_2_b(field: &PrimeField, a: &Matrix<u64>, l: usize, n: usize, v: &[u64]) -> Result<(bool, bool)> {
    let j = check_lemma_4_2_premise(field, a, l, n)?;
    if j.pow(field, (l - 1) as u32)?.mul_vec(field, v)?.iter().all(|&x| x == 0) {
        return Err(Error::Precondition("J^{l-1} v = 0".to_string()));
    }
    let independent = |vecs: &[Vec<u64>]| {
        let mut s = SpanBuilder::new(*field, n);
        vecs.iter().all(|w| s.insert(w))
    };
    let mut first = Vec::new();
    let mut w = v.to_vec();
    for _ in 0..=n - l + 1 {
        first.push(w.clone());
        w = a.mul_vec(field, &w)?;
    }
    let mut w = v.to_vec();
    for _ in 1..=l - 2 {
        w = j.mul_vec(field, &w)?;
        first.push(w.clone());
    }
    let second = crate::upsilon::z_set(n, l)?
        .iter()
        .map(|p| {
            let m = a.pow(field, p.i as u32)?.mul(field, &j.pow(field, p.j as u32)?)?;
            m.mul_vec(field, v)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((independent(&first), independent(&second)))
}

/// Samples `A ∈ N_{J_{l,n}}` with `rank A = n−2`, `ind A = n−l+2` and a
/// linear term in `g_A`, retrying up to 64 times.
pub fn sample_lemma_4_2<G: Rng + ?Sized>(field: &PrimeField, l: usize, n: usize, rng: &mut G) -> Result<Matrix<u64>> {
    lemma_4_2_range(l, n)?;
    let mut parts = vec![l];
    parts.extend(core::iter::repeat_n(1, n - l));
    let partition = Partition::new(parts)?;
    for _ in 0..64 {
        let a = sample_nilpotent_commuting(field, &partition, rng, SampleMode::Triangular)?;
        if *a.get(0, 1) != 0 && check_lemma_4_2_premise(field, &a, l, n).is_ok() {
            return Ok(a);
        }
    }
    Err(Error::Precondition("no sample met rank n-2 and index n-l+2 in 64 draws".to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericRankStats {
    pub partition: Partition,
    pub trials: usize,
    pub histogram: BTreeMap<usize, usize>,
    /// `n − r_B`.
    pub expected: usize,
    pub max_observed: usize,
    pub witness_rank: usize,
    /// Samples attaining `expected`.
    pub attained: usize,
}

impl GenericRankStats {
    pub fn attained_fraction(&self) -> f64 {
        self.attained as f64 / self.trials as f64
    }

    /// Never above `n − r_B`, and the witness reaches it.
    pub fn bound_holds(&self) -> bool {
        self.max_observed <= self.expected && self.witness_rank == self.expected
    }
}

pub fn generic_rank_experiment<G: Rng + ?Sized>(
    field: &PrimeField,
    partition: &Partition,
    trials: usize,
    rng: &mut G,
) -> Result<GenericRankStats> {
    if trials == 0 {
        return Err(Error::Precondition("trials must be at least 1".to_string()));
    }
    let expected = partition.n() - partition_invariants(partition).r_b;
    let mut histogram = BTreeMap::new();
    for _ in 0..trials {
        let a = sample_nilpotent_commuting(field, partition, rng, SampleMode::Uniform)?;
        *histogram.entry(matrix::rank_over_field(field, &a)).or_insert(0) += 1;
    }
    let w = sample_nilpotent_commuting(field, partition, rng, SampleMode::Witness)?;
    Ok(GenericRankStats {
        partition: partition.clone(),
        trials,
        max_observed: *histogram.keys().next_back().unwrap_or(&0),
        attained: histogram.get(&expected).copied().unwrap_or(0),
        histogram,
        expected,
        witness_rank: matrix::rank_over_field(field, &w),
    })
}
