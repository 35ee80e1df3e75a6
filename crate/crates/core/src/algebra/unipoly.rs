use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{Domain, Field, Ring};

/// Dense univariate polynomial; `coeffs[d]` is the coefficient of `x^d`.
/// The leading stored coefficient is never zero.
#[derive(Clone, Debug)]
pub struct UniPoly<R: Ring> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: Ring> PartialEq for UniPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<R: Ring> Eq for UniPoly<R> where R::Elem: Eq {}

impl<R: Ring> UniPoly<R> {
    pub fn zero(ring: R) -> Self {
        UniPoly { ring, coeffs: Vec::new() }
    }

    pub fn constant(ring: R, c: R::Elem) -> Self {
        Self::from_coeffs(ring, vec![c])
    }

    /// The polynomial `c * x^d`.
    pub fn monomial(ring: R, c: R::Elem, d: usize) -> Self {
        let mut coeffs = vec![ring.zero(); d + 1];
        coeffs[d] = c;
        Self::from_coeffs(ring, coeffs)
    }

    pub fn x(ring: R) -> Self {
        let one = ring.one();
        Self::monomial(ring, one, 1)
    }

    pub fn from_coeffs(ring: R, mut coeffs: Vec<R::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { ring, coeffs }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> R::Elem {
        self.coeffs.get(d).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&R::Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.ring.is_one(c))
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !self.ring.is_zero(c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|d| self.ring.add(&self.coeff(d), &other.coeff(d)))
            .collect();
        Self::from_coeffs(self.ring.clone(), c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|d| self.ring.sub(&self.coeff(d), &other.coeff(d)))
            .collect();
        Self::from_coeffs(self.ring.clone(), c)
    }

    pub fn neg(&self) -> Self {
        let c = self.coeffs.iter().map(|a| self.ring.neg(a)).collect();
        Self::from_coeffs(self.ring.clone(), c)
    }

    pub fn scale(&self, s: &R::Elem) -> Self {
        let c = self.coeffs.iter().map(|a| self.ring.mul(a, s)).collect();
        Self::from_coeffs(self.ring.clone(), c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ring.clone());
        }
        let mut c = vec![self.ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = self.ring.mul(a, b);
                c[i + j] = self.ring.add(&c[i + j], &t);
            }
        }
        Self::from_coeffs(self.ring.clone(), c)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(self.ring.clone(), self.ring.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &R::Elem) -> R::Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(self.ring.zero(), |acc, c| self.ring.add(&self.ring.mul(&acc, x), c))
    }

    /// Reduces exponents modulo `period`, i.e. the image in `R[x]/(x^period - 1)`.
    pub fn wrap_exponents(&self, period: usize) -> Self {
        assert!(period > 0, "period must be positive");
        let mut c = vec![self.ring.zero(); period.min(self.coeffs.len())];
        for (d, a) in self.coeffs.iter().enumerate() {
            let k = d % period;
            c[k] = self.ring.add(&c[k], a);
        }
        Self::from_coeffs(self.ring.clone(), c)
    }
}

impl<F: Field> UniPoly<F> {
    /// Euclidean division; `None` when dividing by zero.
    pub fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let lead_inv = self.ring.inv(d.leading()?)?;
        let mut rem = self.coeffs.clone();
        let mut q = vec![self.ring.zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = self.ring.mul(&rem[top], &lead_inv);
            let shift = top - dd;
            for (i, b) in d.coeffs.iter().enumerate() {
                let t = self.ring.mul(&c, b);
                rem[shift + i] = self.ring.sub(&rem[shift + i], &t);
            }
            q[shift] = c;
            rem.pop();
            while rem.last().is_some_and(|c| self.ring.is_zero(c)) {
                rem.pop();
            }
        }
        Some((
            Self::from_coeffs(self.ring.clone(), q),
            Self::from_coeffs(self.ring.clone(), rem),
        ))
    }
}

impl<R: Ring> fmt::Display for UniPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for d in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[d];
            if self.ring.is_zero(c) {
                continue;
            }
            let neg = self.ring.is_negative(c);
            let abs = if neg { self.ring.neg(c) } else { c.clone() };
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            first = false;
            let unit = self.ring.is_one(&abs);
            match d {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !unit {
                        write!(f, "{abs}*")?;
                    }
                    f.write_str("x")?;
                    if d > 1 {
                        write!(f, "^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// `F[x]` as a ring, for matrices with univariate polynomial entries.
#[derive(Clone, Debug)]
pub struct UniPolyRing<F: Field> {
    field: F,
}

impl<F: Field> UniPolyRing<F> {
    pub fn new(field: F) -> Self {
        UniPolyRing { field }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn x(&self) -> UniPoly<F> {
        UniPoly::x(self.field.clone())
    }

    pub fn constant(&self, c: F::Elem) -> UniPoly<F> {
        UniPoly::constant(self.field.clone(), c)
    }
}

impl<F: Field> Ring for UniPolyRing<F> {
    type Elem = UniPoly<F>;

    fn zero(&self) -> UniPoly<F> {
        UniPoly::zero(self.field.clone())
    }
    fn one(&self) -> UniPoly<F> {
        UniPoly::constant(self.field.clone(), self.field.one())
    }
    fn from_i64(&self, v: i64) -> UniPoly<F> {
        UniPoly::constant(self.field.clone(), self.field.from_i64(v))
    }
    fn add(&self, a: &UniPoly<F>, b: &UniPoly<F>) -> UniPoly<F> {
        a.add(b)
    }
    fn sub(&self, a: &UniPoly<F>, b: &UniPoly<F>) -> UniPoly<F> {
        a.sub(b)
    }
    fn neg(&self, a: &UniPoly<F>) -> UniPoly<F> {
        a.neg()
    }
    fn mul(&self, a: &UniPoly<F>, b: &UniPoly<F>) -> UniPoly<F> {
        a.mul(b)
    }
    fn is_zero(&self, a: &UniPoly<F>) -> bool {
        a.is_zero()
    }
}

impl<F: Field> Domain for UniPolyRing<F> {
    fn div_exact(&self, a: &UniPoly<F>, b: &UniPoly<F>) -> Option<UniPoly<F>> {
        let (q, r) = a.div_rem(b)?;
        r.is_zero().then_some(q)
    }
    fn size(&self, a: &UniPoly<F>) -> usize {
        a.degree().unwrap_or(0)
    }
}
