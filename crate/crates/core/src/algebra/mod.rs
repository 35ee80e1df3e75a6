//! Coefficient rings and polynomials.

mod integers;
mod multipoly;
mod prime_field;
mod unipoly;

pub use integers::Integers;
pub use multipoly::{Monomial, MultiPoly, MultiPolyRing, Variables};
pub use prime_field::{is_prime, PrimeField};
pub use unipoly::{UniPoly, UniPolyRing};

use core::fmt::{Debug, Display};

/// A commutative ring with unit. Elements carry no context; every operation
/// goes through the ring value.
pub trait Ring: Clone + Debug {
    type Elem: Clone + PartialEq + Debug + Display;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// True when `a` prints with a leading minus sign.
    fn is_negative(&self, _a: &Self::Elem) -> bool {
        false
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// A ring in which nonzero elements can be inverted.
pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

/// An integral domain with exact division, as needed by fraction-free
/// elimination.
pub trait Domain: Ring {
    /// `a / b` when `b` divides `a`, otherwise `None`.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    /// Pivot weight; smaller is preferred. Degree for polynomials.
    fn size(&self, a: &Self::Elem) -> usize;
}
