use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use super::{Domain, Field, Integers, PrimeField, Ring};
use crate::{Error, Result};

/// An ordered list of indeterminate names.
#[derive(Clone, Debug)]
pub struct Variables(Arc<[String]>);

impl Variables {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Variables(names.into_iter().map(Into::into).collect())
    }

    /// `prefix1, …, prefixk`.
    pub fn indexed(prefix: &str, k: usize) -> Vec<String> {
        (1..=k).map(|i| alloc::format!("{prefix}{i}")).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }
}

impl PartialEq for Variables {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Variables {}

/// Exponent vector, one entry per variable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Graded order: total degree first, then lexicographic.
    fn graded_cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Sparse polynomial with coefficients in `R`. Zero coefficients are never
/// stored.
#[derive(Clone, Debug)]
pub struct MultiPoly<R: Ring> {
    ring: R,
    vars: Variables,
    terms: BTreeMap<Monomial, R::Elem>,
}

impl<R: Ring> PartialEq for MultiPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms
    }
}

impl<R: Ring> MultiPoly<R> {
    pub fn zero(ring: R, vars: Variables) -> Self {
        MultiPoly { ring, vars, terms: BTreeMap::new() }
    }

    pub fn constant(ring: R, vars: Variables, c: R::Elem) -> Self {
        let mono = Monomial::one(vars.len());
        Self::from_terms_unchecked(ring, vars, [(mono, c)])
    }

    pub fn one(ring: R, vars: Variables) -> Self {
        let c = ring.one();
        Self::constant(ring, vars, c)
    }

    /// The variable with index `idx`.
    pub fn var(ring: R, vars: Variables, idx: usize) -> Result<Self> {
        if idx >= vars.len() {
            return Err(Error::Dimension(alloc::format!(
                "variable index {idx} out of {}",
                vars.len()
            )));
        }
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        let c = ring.one();
        Ok(Self::from_terms_unchecked(ring, vars, [(Monomial(e), c)]))
    }

    pub fn var_named(ring: R, vars: Variables, name: &str) -> Result<Self> {
        let idx = vars
            .index_of(name)
            .ok_or_else(|| Error::MissingVariable(name.to_string()))?;
        Self::var(ring, vars, idx)
    }

    pub fn from_terms<I>(ring: R, vars: Variables, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, R::Elem)>,
    {
        let mut out = Self::zero(ring, vars);
        for (e, c) in terms {
            if e.len() != out.vars.len() {
                return Err(Error::Dimension(alloc::format!(
                    "exponent vector of length {} for {} variables",
                    e.len(),
                    out.vars.len()
                )));
            }
            out.add_term(Monomial(e), c);
        }
        Ok(out)
    }

    fn from_terms_unchecked<I>(ring: R, vars: Variables, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, R::Elem)>,
    {
        let mut out = Self::zero(ring, vars);
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: R::Elem) {
        if self.ring.is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.ring.add(o.get(), &c);
                if self.ring.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R::Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> R::Elem {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    /// True when every term has total degree `d` (vacuously for zero).
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    /// Indices of variables that occur in some term.
    pub fn support(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&v| self.terms.keys().any(|m| m.0[v] > 0))
            .collect()
    }

    /// The constant term as a ring element, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<R::Elem> {
        match self.terms.len() {
            0 => Some(self.ring.zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VariableMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.vars.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), self.ring.mul(ca, cb));
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), self.ring.neg(c)));
        Self::from_terms_unchecked(self.ring.clone(), self.vars.clone(), terms)
    }

    pub fn scale(&self, s: &R::Elem) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), self.ring.mul(c, s)));
        Self::from_terms_unchecked(self.ring.clone(), self.vars.clone(), terms)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.ring.clone(), self.vars.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Evaluation at a point given positionally, one value per variable.
    pub fn evaluate_at(&self, point: &[R::Elem]) -> Result<R::Elem> {
        if point.len() != self.vars.len() {
            return Err(Error::Dimension(alloc::format!(
                "{} values for {} variables",
                point.len(),
                self.vars.len()
            )));
        }
        let mut acc = self.ring.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = self.ring.mul(&t, &self.ring.pow(&point[v], e));
                }
            }
            acc = self.ring.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Evaluation at a named assignment. Every variable occurring in the
    /// polynomial must be assigned; extra names are ignored.
    pub fn evaluate(&self, assignment: &[(&str, R::Elem)]) -> Result<R::Elem> {
        let mut point = vec![self.ring.zero(); self.vars.len()];
        for v in self.support() {
            let name = &self.vars.names()[v];
            let (_, val) = assignment
                .iter()
                .find(|(n, _)| n == name)
                .ok_or_else(|| Error::MissingVariable(name.clone()))?;
            point[v] = val.clone();
        }
        self.evaluate_at(&point)
    }

    /// Substitutes constants for some variables. The variable list is kept;
    /// substituted variables simply no longer occur.
    pub fn specialize(&self, values: &[(usize, R::Elem)]) -> Result<Self> {
        if let Some((v, _)) = values.iter().find(|(v, _)| *v >= self.vars.len()) {
            return Err(Error::Dimension(alloc::format!("variable index {v} out of range")));
        }
        let mut out = Self::zero(self.ring.clone(), self.vars.clone());
        for (m, c) in &self.terms {
            let mut m = m.clone();
            let mut c = c.clone();
            for (v, val) in values {
                let e = m.0[*v];
                if e > 0 {
                    c = self.ring.mul(&c, &self.ring.pow(val, e));
                    m.0[*v] = 0;
                }
            }
            out.add_term(m, c);
        }
        Ok(out)
    }

    /// `specialize` with variables named.
    pub fn specialize_named(&self, values: &[(&str, R::Elem)]) -> Result<Self> {
        let idx = values
            .iter()
            .map(|(n, v)| {
                self.vars
                    .index_of(n)
                    .map(|i| (i, v.clone()))
                    .ok_or_else(|| Error::MissingVariable(n.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        self.specialize(&idx)
    }

    /// Re-expresses the polynomial over `target`, matching variables by
    /// name. Fails if an occurring variable is absent from `target`.
    pub fn embed(&self, target: &Variables) -> Result<Self> {
        let map = self
            .vars
            .names()
            .iter()
            .map(|n| target.index_of(n))
            .collect::<Vec<_>>();
        let mut out = Self::zero(self.ring.clone(), target.clone());
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (v, &k) in m.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let t = map[v].ok_or_else(|| Error::MissingVariable(self.vars.names()[v].clone()))?;
                e[t] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Applies `f` to every coefficient, landing in ring `target`.
    pub fn map_coeffs<S: Ring>(&self, target: S, f: impl Fn(&R::Elem) -> S::Elem) -> MultiPoly<S> {
        let mut out = MultiPoly::zero(target, self.vars.clone());
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Univariate view in variable `var`; fails if another variable occurs.
    pub fn to_univariate(&self, var: usize) -> Result<super::UniPoly<R>> {
        let mut coeffs = Vec::new();
        for (m, c) in &self.terms {
            if m.0.iter().enumerate().any(|(v, &e)| v != var && e > 0) {
                return Err(Error::Domain("polynomial is not univariate".to_string()));
            }
            let d = m.0[var] as usize;
            if coeffs.len() <= d {
                coeffs.resize(d + 1, self.ring.zero());
            }
            coeffs[d] = c.clone();
        }
        Ok(super::UniPoly::from_coeffs(self.ring.clone(), coeffs))
    }

    /// Terms in display order: graded, highest first.
    fn sorted_terms(&self) -> Vec<(&Monomial, &R::Elem)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| b.0.graded_cmp(a.0));
        t
    }

    /// Leading term under the lexicographic order.
    fn lex_leading(&self) -> Option<(&Monomial, &R::Elem)> {
        self.terms.iter().next_back()
    }
}

impl MultiPoly<Integers> {
    /// Coefficient-wise reduction into `F_p`, dropping vanishing terms.
    pub fn reduce_mod_p(&self, field: PrimeField) -> MultiPoly<PrimeField> {
        self.map_coeffs(field, |c| field.from_bigint(c))
    }

    /// Parses the canonical rendering, e.g. `3*x1^2*x3 - x2 + 7`.
    pub fn parse(vars: Variables, text: &str) -> Result<Self> {
        parse_integer_poly(vars, text)
    }
}

impl<R: Ring> fmt::Display for MultiPoly<R> {
    /// Canonical rendering: terms by descending total degree then
    /// descending lexicographic exponent, `coeff*var^e` factors.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = self.ring.is_negative(c);
            let abs = if neg { self.ring.neg(c) } else { c.clone() };
            match (k == 0, neg) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            let mut factors = Vec::new();
            if !self.ring.is_one(&abs) || m.degree() == 0 {
                factors.push(abs.to_string());
            }
            for (v, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars.names()[v].clone()),
                    _ => factors.push(alloc::format!("{}^{}", self.vars.names()[v], e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

fn parse_integer_poly(vars: Variables, text: &str) -> Result<MultiPoly<Integers>> {
    let bad = |msg: &str| Error::Parse(alloc::format!("{msg} in {text:?}"));
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad("empty polynomial"));
    }
    let mut out = MultiPoly::zero(Integers, vars.clone());
    let bytes = s.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() {
        let mut sign = 1i64;
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            if bytes[pos] == b'-' {
                sign = -1;
            }
            pos += 1;
        } else if pos > 0 {
            return Err(bad("expected sign"));
        }
        let end = s[pos..]
            .find(['+', '-'])
            .map_or(bytes.len(), |k| pos + k);
        let term = &s[pos..end];
        if term.is_empty() {
            return Err(bad("empty term"));
        }
        let mut coeff = num_bigint::BigInt::from(sign);
        let mut exps = vec![0u32; vars.len()];
        for factor in term.split('*') {
            if factor.is_empty() {
                return Err(bad("empty factor"));
            }
            if factor.bytes().all(|b| b.is_ascii_digit()) {
                let v: num_bigint::BigInt = factor.parse().map_err(|_| bad("bad integer"))?;
                coeff *= v;
                continue;
            }
            let (name, e) = match factor.split_once('^') {
                Some((n, e)) => (n, e.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                None => (factor, 1),
            };
            let v = vars
                .index_of(name)
                .ok_or_else(|| Error::MissingVariable(name.to_string()))?;
            exps[v] += e;
        }
        out.add_term(Monomial(exps), coeff);
        pos = end;
    }
    Ok(out)
}

/// `R[vars]` as a ring, for matrices with polynomial entries. All entries
/// must share the ring's variable list.
#[derive(Clone, Debug)]
pub struct MultiPolyRing<R: Ring> {
    coeffs: R,
    vars: Variables,
}

impl<R: Ring> MultiPolyRing<R> {
    pub fn new(coeffs: R, vars: Variables) -> Self {
        MultiPolyRing { coeffs, vars }
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn coeff_ring(&self) -> &R {
        &self.coeffs
    }

    pub fn var(&self, idx: usize) -> Result<MultiPoly<R>> {
        MultiPoly::var(self.coeffs.clone(), self.vars.clone(), idx)
    }

    pub fn var_named(&self, name: &str) -> Result<MultiPoly<R>> {
        MultiPoly::var_named(self.coeffs.clone(), self.vars.clone(), name)
    }

    pub fn constant(&self, c: R::Elem) -> MultiPoly<R> {
        MultiPoly::constant(self.coeffs.clone(), self.vars.clone(), c)
    }
}

impl<R: Ring> Ring for MultiPolyRing<R> {
    type Elem = MultiPoly<R>;

    fn zero(&self) -> MultiPoly<R> {
        MultiPoly::zero(self.coeffs.clone(), self.vars.clone())
    }
    fn one(&self) -> MultiPoly<R> {
        MultiPoly::one(self.coeffs.clone(), self.vars.clone())
    }
    fn from_i64(&self, v: i64) -> MultiPoly<R> {
        self.constant(self.coeffs.from_i64(v))
    }
    fn add(&self, a: &MultiPoly<R>, b: &MultiPoly<R>) -> MultiPoly<R> {
        debug_assert!(a.vars == b.vars);
        a.add_unchecked(b)
    }
    fn sub(&self, a: &MultiPoly<R>, b: &MultiPoly<R>) -> MultiPoly<R> {
        debug_assert!(a.vars == b.vars);
        a.add_unchecked(&b.neg())
    }
    fn neg(&self, a: &MultiPoly<R>) -> MultiPoly<R> {
        a.neg()
    }
    fn mul(&self, a: &MultiPoly<R>, b: &MultiPoly<R>) -> MultiPoly<R> {
        debug_assert!(a.vars == b.vars);
        a.mul_unchecked(b)
    }
    fn is_zero(&self, a: &MultiPoly<R>) -> bool {
        a.is_zero()
    }
}

impl<R: Domain> Domain for MultiPolyRing<R> {
    /// Exact division by repeated cancellation of lexicographic leading
    /// terms. Over a domain this succeeds precisely when `b | a`.
    fn div_exact(&self, a: &MultiPoly<R>, b: &MultiPoly<R>) -> Option<MultiPoly<R>> {
        let (lb, cb) = b.lex_leading()?;
        let (lb, cb) = (lb.clone(), cb.clone());
        if b.terms.len() == 1 {
            let mut q = self.zero();
            for (m, c) in &a.terms {
                if !lb.divides(m) {
                    return None;
                }
                q.add_term(m.div(&lb), self.coeffs.div_exact(c, &cb)?);
            }
            return Some(q);
        }
        let mut rem = a.clone();
        let mut q = self.zero();
        while let Some((lr, cr)) = rem.lex_leading() {
            if !lb.divides(lr) {
                return None;
            }
            let tm = lr.div(&lb);
            let tc = self.coeffs.div_exact(cr, &cb)?;
            for (m, c) in &b.terms {
                rem.add_term(m.mul(&tm), self.coeffs.neg(&self.coeffs.mul(c, &tc)));
            }
            q.add_term(tm, tc);
        }
        Some(q)
    }

    fn size(&self, a: &MultiPoly<R>) -> usize {
        a.total_degree().unwrap_or(0) as usize
    }
}

impl<F: Field> MultiPoly<F> {
    /// True when the coefficient ring is a field and the polynomial is a
    /// nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.as_constant().is_some_and(|c| !self.ring.is_zero(&c))
    }
}
