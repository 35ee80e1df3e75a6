use rand::Rng;

use nilcommute_core::algebra::{PrimeField, Ring};
use nilcommute_core::hilbert::*;
use nilcommute_core::matrix::{self, Matrix};
use nilcommute_core::rng::trial_rng;
use nilcommute_core::upsilon::{z_set, IndexPair};

fn field() -> PrimeField {
    PrimeField::new(101).unwrap()
}

fn grid() -> impl Iterator<Item = (usize, usize)> {
    (3usize..=6).flat_map(|n| (2..=n.div_ceil(2)).map(move |m| (n, m)))
}

fn words(f: &PrimeField, t: &Triple, m: usize) -> Matrix<u64> {
    let cols: Vec<Vec<u64>> = z_set(t.n(), m).unwrap().into_iter().map(|p| t.word(f, p).unwrap()).collect();
    Matrix::from_columns(t.n(), &cols).unwrap()
}

/// The unique `G` with `G·s = t`, if the triples are in one orbit.
fn orbit_witness(f: &PrimeField, s: &Triple, t: &Triple, m: usize) -> Option<Matrix<u64>> {
    let ws = words(f, s, m);
    let g = words(f, t, m).mul(f, &matrix::inverse(f, &ws)?).unwrap();
    (s.conjugate(f, &g).ok()? == *t).then_some(g)
}

fn is_nilpotent(f: &PrimeField, a: &Matrix<u64>) -> bool {
    a.pow(f, a.rows() as u32).unwrap().is_zero(f)
}

#[test]
fn round_trip_on_random_ideals() {
    let f = field();
    for (n, m) in grid() {
        for t in 0..100 {
            let mut rng = trial_rng((10 * n + m) as u64, t);
            let ideal = random_staircase_ideal(&f, n, m, &mut rng).unwrap();
            assert!(ideal.is_ideal(&f) && ideal.complementary(&f).unwrap());
            let triple = zeta_hat(&f, &ideal).unwrap();
            assert!(triple.a.commutator(&f, &triple.b).unwrap().is_zero(&f), "n={n} m={m} draw {t}");
            assert!(is_nilpotent(&f, &triple.a) && is_nilpotent(&f, &triple.b));
            assert_eq!(zeta(&f, &triple, m).unwrap(), ideal, "n={n} m={m} draw {t}");
        }
    }
}

#[test]
fn generator_covers_monomial_and_non_monomial_ideals() {
    let f = field();
    let q = TruncatedQuotient::new(5);
    let (mut monomial, mut other) = (0, 0);
    for t in 0..200 {
        let ideal = random_staircase_ideal(&f, 5, 3, &mut trial_rng(7, t)).unwrap();
        if ideal.basis().iter().all(|v| v.iter().filter(|&&c| c != 0).count() == 1) {
            monomial += 1;
            let inside = q.order().pairs().iter().filter(|p| ideal.contains(&f, &q.monomial(**p))).count();
            assert_eq!(inside, q.dim() - 5);
        } else {
            other += 1;
        }
    }
    assert!(monomial > 0 && other > 0, "{monomial} monomial, {other} other");
}

#[test]
fn zeta_hat_of_zeta_is_in_the_orbit() {
    let f = field();
    for (n, m) in grid() {
        for t in 0..50 {
            let mut rng = trial_rng((100 + 10 * n + m) as u64, t);
            let ideal = random_staircase_ideal(&f, n, m, &mut rng).unwrap();
            let (g, _) = matrix::random_invertible(&f, n, &mut rng);
            let triple = zeta_hat(&f, &ideal).unwrap().conjugate(&f, &g).unwrap();
            let v = zeta(&f, &triple, m).unwrap();
            let normal = zeta_hat(&f, &v).unwrap();
            let g = orbit_witness(&f, &triple, &normal, m);
            assert!(g.is_some(), "n={n} m={m} draw {t}");
            assert_eq!(triple.orbit_element(&f, &normal, m).unwrap(), g);
            assert_eq!(zeta(&f, &normal, m).unwrap(), v);
        }
    }
}

#[test]
fn zeta_is_constant_on_orbits() {
    let f = field();
    for (n, m) in grid() {
        for t in 0..30 {
            let mut rng = trial_rng((200 + 10 * n + m) as u64, t);
            let triple = zeta_hat(&f, &random_staircase_ideal(&f, n, m, &mut rng).unwrap()).unwrap();
            let (g, _) = matrix::random_invertible(&f, n, &mut rng);
            let moved = triple.conjugate(&f, &g).unwrap();
            assert_eq!(zeta(&f, &moved, m).unwrap(), zeta(&f, &triple, m).unwrap());
        }
    }
}

#[test]
fn stabilizers_are_trivial() {
    // X with [X,A] = [X,B] = 0 and X v = 0 must vanish.
    let f = field();
    for (n, m) in grid() {
        for t in 0..20 {
            let mut rng = trial_rng((300 + 10 * n + m) as u64, t);
            let tr = zeta_hat(&f, &random_staircase_ideal(&f, n, m, &mut rng).unwrap()).unwrap();
            let mut rows = Vec::new();
            for mat in [&tr.a, &tr.b] {
                for r in 0..n {
                    for c in 0..n {
                        let mut row = vec![0u64; n * n];
                        for k in 0..n {
                            row[r * n + k] = f.add(&row[r * n + k], mat.get(k, c));
                            row[k * n + c] = f.sub(&row[k * n + c], mat.get(r, k));
                        }
                        rows.push(row);
                    }
                }
            }
            for r in 0..n {
                let mut row = vec![0u64; n * n];
                for c in 0..n {
                    row[r * n + c] = tr.v[c];
                }
                rows.push(row);
            }
            assert!(matrix::kernel_basis(&f, &Matrix::from_rows(rows).unwrap()).is_empty());
            assert_eq!(tr.stabilizer_dimension(&f).unwrap(), 0);
        }
    }
}

#[test]
fn stabilizer_of_a_degenerate_triple() {
    let f = field();
    let n = 4;
    let t = Triple { a: Matrix::zeros(&f, n, n), b: Matrix::zeros(&f, n, n), v: vec![1, 0, 0, 0] };
    // Only Xv = 0 constrains X: the first column vanishes.
    assert_eq!(t.stabilizer_dimension(&f).unwrap(), n * n - n);
    let other = Triple { v: vec![0, 1, 0, 0], ..t.clone() };
    assert_eq!(t.orbit_element(&f, &other, 2).unwrap(), None);
}

#[test]
fn polynomial_b_puts_y_minus_f_in_the_ideal() {
    let f = field();
    let n = 6;
    let q = TruncatedQuotient::new(n);
    for t in 0..20 {
        let mut rng = trial_rng(400, t);
        let (g, g_inv) = matrix::random_invertible(&f, n, &mut rng);
        let a = g.mul(&f, &matrix::jordan_block(&f, n)).unwrap().mul(&f, &g_inv).unwrap();
        let coeffs: Vec<u64> = (1..n).map(|_| f.random(&mut rng)).collect();
        let mut b = Matrix::zeros(&f, n, n);
        for (k, c) in coeffs.iter().enumerate() {
            b = b.add(&f, &a.pow(&f, k as u32 + 1).unwrap().scale(&f, c)).unwrap();
        }
        let top = a.pow(&f, n as u32 - 1).unwrap();
        let v = loop {
            let v: Vec<u64> = (0..n).map(|_| f.random(&mut rng)).collect();
            if top.mul_vec(&f, &v).unwrap().iter().any(|&x| x != 0) {
                break v;
            }
        };
        let ideal = zeta(&f, &Triple { a, b, v }, 2).unwrap();
        let mut element = q.monomial(IndexPair::new(0, 1));
        for (k, c) in coeffs.iter().enumerate() {
            let pos = q.order().position(IndexPair::new(k + 1, 0)).unwrap();
            element[pos] = f.neg(c);
        }
        assert!(ideal.contains(&f, &element));
    }
}

#[test]
fn zeta_rejects_non_spanning_triples() {
    let f = field();
    let n = 4;
    let t = Triple { a: Matrix::zeros(&f, n, n), b: Matrix::zeros(&f, n, n), v: vec![1, 0, 0, 0] };
    assert!(zeta(&f, &t, 2).is_err());
    let q = TruncatedQuotient::new(n);
    let not_ideal = vec![q.monomial(IndexPair::new(0, 1))];
    assert!(StaircaseIdeal::new(&f, n, 2, &not_ideal).is_err());
}

/// `G U G⁻¹` for a random strictly upper triangular `U`.
fn random_nilpotent<G: Rng>(f: &PrimeField, n: usize, rng: &mut G) -> Matrix<u64> {
    let u = Matrix::from_fn(n, n, |r, c| if c > r { f.random(rng) } else { 0 });
    let (g, g_inv) = matrix::random_invertible(f, n, rng);
    g.mul(f, &u).unwrap().mul(f, &g_inv).unwrap()
}

#[test]
fn nilpotent_cone_tangent_minimum() {
    let f = field();
    for n in 2usize..=5 {
        let min = (0..64)
            .map(|t| {
                let a = random_nilpotent(&f, n, &mut trial_rng(500 + n as u64, t));
                nilpotent_cone_tangent_dimension(&f, &a).unwrap()
            })
            .min()
            .unwrap();
        assert_eq!(min, n * n - n, "n={n}");
    }
}

#[test]
fn commuting_nilpotent_tangent_minimum() {
    let f = field();
    for n in 2usize..=5 {
        let min = (0..64)
            .map(|t| {
                let mut rng = trial_rng(600 + n as u64, t);
                let a = random_nilpotent(&f, n, &mut rng);
                let mut b = Matrix::zeros(&f, n, n);
                for k in 1..n {
                    b = b.add(&f, &a.pow(&f, k as u32).unwrap().scale(&f, &f.random(&mut rng))).unwrap();
                }
                tangent_dimension(&f, &a, &b).unwrap()
            })
            .min()
            .unwrap();
        assert_eq!(min, n * n - 1, "n={n}");
    }
}

#[test]
fn tangent_dimension_at_special_points() {
    let f = field();
    let j = matrix::jordan_block(&f, 4);
    assert_eq!(nilpotent_cone_tangent_dimension(&f, &j).unwrap(), 12);
    assert_eq!(tangent_dimension(&f, &j, &j.pow(&f, 2).unwrap()).unwrap(), 15);
    let zero = Matrix::zeros(&f, 4, 4);
    // Only the trace rows survive at the origin.
    assert_eq!(tangent_dimension(&f, &zero, &zero).unwrap(), 2 * 16 - 2);
    let f3 = PrimeField::new(3).unwrap();
    assert!(tangent_dimension(&f3, &matrix::jordan_block(&f3, 4), &Matrix::zeros(&f3, 4, 4)).is_err());
}
