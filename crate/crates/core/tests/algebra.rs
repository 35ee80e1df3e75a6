use nilcommute_core::algebra::{Integers, MultiPoly, MultiPolyRing, PrimeField, Ring, UniPoly, Variables};
use num_bigint::BigInt;
use proptest::prelude::*;

fn vars() -> Variables {
    Variables::new(["a", "b", "c"])
}

fn poly() -> impl Strategy<Value = MultiPoly<Integers>> {
    prop::collection::vec((prop::array::uniform3(0u32..3), -9i64..10), 0..6).prop_map(|terms| {
        MultiPoly::from_terms(Integers, vars(), terms.into_iter().map(|(e, c)| (e.to_vec(), BigInt::from(c)))).unwrap()
    })
}

fn point() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..6, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        let ring = MultiPolyRing::new(Integers, vars());
        prop_assert_eq!(ring.mul(&ring.mul(&a, &b), &c), ring.mul(&a, &ring.mul(&b, &c)));
        prop_assert_eq!(ring.add(&ring.add(&a, &b), &c), ring.add(&a, &ring.add(&b, &c)));
        prop_assert_eq!(ring.mul(&a, &ring.add(&b, &c)), ring.add(&ring.mul(&a, &b), &ring.mul(&a, &c)));
        prop_assert_eq!(ring.mul(&a, &b), ring.mul(&b, &a));
        prop_assert!(ring.is_zero(&ring.sub(&a, &a)));
        prop_assert_eq!(ring.mul(&a, &ring.one()), a.clone());
    }

    #[test]
    fn reduction_is_a_homomorphism(a in poly(), b in poly(), p in prop::sample::select(vec![2u64, 3, 5, 101])) {
        let f = PrimeField::new(p).unwrap();
        let prod = a.checked_mul(&b).unwrap().reduce_mod_p(f);
        prop_assert_eq!(prod, a.reduce_mod_p(f).checked_mul(&b.reduce_mod_p(f)).unwrap());
        let sum = a.checked_add(&b).unwrap().reduce_mod_p(f);
        prop_assert_eq!(sum, a.reduce_mod_p(f).checked_add(&b.reduce_mod_p(f)).unwrap());
    }

    #[test]
    fn evaluation_commutes(a in poly(), b in poly(), pt in point()) {
        let big: Vec<BigInt> = pt.iter().map(|&v| BigInt::from(v)).collect();
        let ev = |q: &MultiPoly<Integers>| q.evaluate_at(&big).unwrap();
        prop_assert_eq!(ev(&a.checked_mul(&b).unwrap()), ev(&a) * ev(&b));
        let f = PrimeField::new(101).unwrap();
        let small: Vec<u64> = pt.iter().map(|&v| f.from_i64(v)).collect();
        prop_assert_eq!(f.from_bigint(&ev(&a)), a.reduce_mod_p(f).evaluate_at(&small).unwrap());
    }

    #[test]
    fn display_parse_round_trip(a in poly()) {
        let text = a.to_string();
        prop_assert_eq!(MultiPoly::parse(vars(), &text).unwrap(), a);
    }

    #[test]
    fn univariate_division(a in prop::collection::vec(0u64..101, 0..8), d in prop::collection::vec(0u64..101, 1..5)) {
        let f = PrimeField::new(101).unwrap();
        let a = UniPoly::from_coeffs(f, a);
        let d = UniPoly::from_coeffs(f, d);
        prop_assume!(!d.is_zero());
        let (q, r) = a.div_rem(&d).unwrap();
        prop_assert_eq!(q.mul(&d).add(&r), a);
        prop_assert!(r.is_zero() || r.degree() < d.degree());
    }
}

#[test]
fn mixed_variable_sets_are_rejected() {
    let x = MultiPoly::var_named(Integers, Variables::new(["x"]), "x").unwrap();
    let y = MultiPoly::var_named(Integers, Variables::new(["y"]), "y").unwrap();
    assert!(x.checked_mul(&y).is_err());
}

#[test]
fn parity_of_paper_coefficients() {
    let v = Variables::new(["x1", "x2", "y1", "y2"]);
    let e = MultiPoly::parse(v.clone(), "2*y1*y2 + 2*x1*y2 + 2*x2*y1").unwrap();
    assert!(e.reduce_mod_p(PrimeField::new(2).unwrap()).is_zero());
    let g = MultiPoly::parse(v, "y1^2 + 2*x1*y1").unwrap();
    assert_eq!(g.evaluate(&[("x1", BigInt::from(0)), ("y1", BigInt::from(1))]).unwrap(), BigInt::from(1));
}

#[test]
fn primes_are_validated() {
    assert!(PrimeField::new(4).is_err());
    assert!(PrimeField::new(1).is_err());
    assert!(PrimeField::new(1_000_000_007).is_ok());
}
