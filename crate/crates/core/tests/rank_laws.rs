use nilcommute_core::algebra::{Field, PrimeField, Ring};
use nilcommute_core::commutant::*;
use nilcommute_core::matrix::{self, Matrix};
use nilcommute_core::rank_laws::*;
use nilcommute_core::rng::trial_rng;
use nilcommute_core::Error;
use rand::Rng;

/// `(A, B)` with `B` of type `part` and `A ∈ N_B`, in random coordinates.
fn random_pair<G: Rng>(f: &PrimeField, part: &Partition, rng: &mut G) -> (Matrix<u64>, Matrix<u64>) {
    let a = sample_nilpotent_commuting(f, part, rng, SampleMode::Uniform).unwrap();
    let (g, gi) = matrix::random_invertible(f, part.n(), rng);
    let c = |m: &Matrix<u64>| g.mul(f, m).unwrap().mul(f, &gi).unwrap();
    (c(&a), c(&part.jordan_matrix(f)))
}

#[test]
fn laws_hold_on_random_pairs() {
    for p in [101, 1009] {
        let f = PrimeField::new(p).unwrap();
        let mut rng = trial_rng(p, 0);
        for n in 1..=6 {
            for part in Partition::all(n) {
                for _ in 0..3 {
                    let (a, b) = random_pair(&f, &part, &mut rng);
                    let jd = triangularize(&f, &a, &jordan_basis(&f, &b).unwrap()).unwrap();
                    assert!(check_lemma_3_1(&f, &a, &jd).unwrap().passed(), "{part}");
                    assert!(check_cor_3_2(&f, &a, &b).unwrap().passed(), "{part}");
                    let s = partition_invariants(&part).s_b as u32;
                    assert!(check_lemma_3_3(&f, &a.pow(&f, s).unwrap(), &b).unwrap().passed(), "{part}");
                    for m in 1..=n {
                        assert!(check_prop_3_5(&f, &a, &b, m).unwrap().holds(), "{part} m={m}");
                    }
                }
            }
        }
    }
}

#[test]
fn lemma_3_1_rejects_untriangular_input() {
    let f = PrimeField::new(101).unwrap();
    let part = Partition::parse("2,2").unwrap();
    let mut a = Matrix::zeros(&f, 4, 4);
    a.set(2, 0, 1);
    a.set(3, 1, 1);
    let jd = JordanData::trivial(&f, part);
    assert!(matches!(check_lemma_3_1(&f, &a, &jd), Err(Error::Domain(_))));
}

#[test]
fn second_branch_of_lemma_3_1_is_exercised() {
    let f = PrimeField::new(101).unwrap();
    let part = Partition::parse("3,3,2,2").unwrap();
    let mut rng = trial_rng(31, 0);
    for _ in 0..50 {
        let a = sample_nilpotent_commuting(&f, &part, &mut rng, SampleMode::Triangular).unwrap();
        let report = check_lemma_3_1(&f, &a, &JordanData::trivial(&f, part.clone())).unwrap();
        assert!(report.passed());
        let a4 = a.pow(&f, 4).unwrap();
        let ranks = block_ranks(&f, &part, &a4).unwrap();
        for i in 1..4 {
            for j in 0..i {
                assert!(ranks[i][j] <= part.parts()[j].saturating_sub(2));
            }
        }
    }
}

#[test]
fn polynomial_rank_matches_evaluation_oracle() {
    let f = PrimeField::new(101).unwrap();
    let mut rng = trial_rng(41, 0);
    for n in 2..=5 {
        for part in Partition::all(n) {
            let (a, b) = random_pair(&f, &part, &mut rng);
            let s = partition_invariants(&part).s_b as u32;
            let a_s = a.pow(&f, s).unwrap();
            for m in 1..=n {
                let check = check_prop_3_5(&f, &a, &b, m).unwrap();
                let best = (0..101)
                    .map(|x| {
                        let y = b.add(&f, &a_s.scale(&f, &x)).unwrap();
                        matrix::rank_over_field(&f, &y.pow(&f, m as u32).unwrap())
                    })
                    .max()
                    .unwrap();
                assert_eq!(check.rank_perturbed, best);
            }
        }
    }
}

#[test]
fn regular_square_satisfies_prop_3_5() {
    let f = PrimeField::new(101).unwrap();
    for n in [4, 6, 8] {
        let a = matrix::jordan_block(&f, n);
        let b = a.pow(&f, 2).unwrap();
        for m in 1..=n {
            assert!(check_prop_3_5(&f, &a, &b, m).unwrap().holds());
        }
    }
}

#[test]
fn structured_perturbation_is_unique() {
    let f = PrimeField::new(101).unwrap();
    let mut rng = trial_rng(43, 0);
    for (n, s) in [(4usize, 2usize), (5, 2), (6, 3), (7, 3), (8, 4), (7, 2)] {
        let a = matrix::jordan_block(&f, n);
        let c1 = f.random_nonzero(&mut rng);
        let c2 = f.random_nonzero(&mut rng);
        let b = a.pow(&f, s as u32).unwrap().scale(&f, &c1).add(&f, &a.pow(&f, s as u32 + 1).unwrap().scale(&f, &c2)).unwrap();
        let part = jordan_partition(&f, &b).unwrap();
        assert_eq!(partition_invariants(&part).s_b, s);
        let set: Vec<usize> = (0..s).collect();
        let out = perturb_scan(&f, &a, &b, &set, &mut rng).unwrap();
        assert_eq!(out.coefficient, Some(f.neg(&c1)), "n={n} s={s}");
        assert_eq!(out.hits, 1);
    }
}

#[test]
fn perturbation_hits_satisfy_condition_a() {
    let f = PrimeField::new(101).unwrap();
    let mut rng = trial_rng(47, 0);
    for part in ["3,3", "2,2", "3,2", "4,3,3", "2,2,1"] {
        let part = Partition::parse(part).unwrap();
        let (a, b) = random_pair(&f, &part, &mut rng);
        let s = partition_invariants(&part).s_b;
        let set = part
            .near_equal_sets()
            .into_iter()
            .find(|r| r.len() == s && part.parts()[r.start] >= 2)
            .unwrap();
        let set: Vec<usize> = set.collect();
        let out = perturb_scan(&f, &a, &b, &set, &mut rng).unwrap();
        let c = out.coefficient.expect("a generic pair has a hit");
        let e = part.parts()[set[0]] as u32 - 1;
        let y = b.add(&f, &a.pow(&f, s as u32).unwrap().scale(&f, &c)).unwrap();
        let lhs = matrix::rank_over_field(&f, &y.pow(&f, e).unwrap());
        assert!(lhs < matrix::rank_over_field(&f, &b.pow(&f, e).unwrap()));
    }
    let part = Partition::parse("3,3").unwrap();
    let (a, b) = random_pair(&f, &part, &mut rng);
    let out = perturb_scan(&f, &a, &b, &[0, 1], &mut rng).unwrap();
    assert!(out.full(), "{out:?}");
}

#[test]
fn zero_perturbation_has_no_hit() {
    let f = PrimeField::new(101).unwrap();
    let part = Partition::parse("3,3").unwrap();
    let b = part.jordan_matrix(&f);
    let z = Matrix::zeros(&f, 6, 6);
    let out = perturb_scan(&f, &z, &b, &[0, 1], &mut trial_rng(0, 0)).unwrap();
    assert_eq!(out.coefficient, None);
    assert!(matches!(perturb_scan(&f, &z, &b, &[0], &mut trial_rng(0, 0)), Err(Error::Precondition(_))));
}

#[test]
fn coarsening_reaches_singletons() {
    let f = PrimeField::new(101).unwrap();
    let mut rng = trial_rng(53, 0);
    for part in ["2,2", "3,3", "3,2,2", "4,4,3", "5,3,2", "2,2,2,1"] {
        let part = Partition::parse(part).unwrap();
        let a = sample_nilpotent_commuting(&f, &part, &mut rng, SampleMode::Witness).unwrap();
        let b = part.jordan_matrix(&f);
        let out = coarsen_to_singletons(&f, &a, &b, &CoarsenOptions::default(), &mut rng).unwrap();
        assert_eq!(out.f.coeff(0), 0);
        let b2 = b.add(&f, &eval_poly_at_matrix(&f, &out.f, &a).unwrap()).unwrap();
        assert!(a.commutator(&f, &b2).unwrap().is_zero(&f));
        assert_eq!(jordan_partition(&f, &b2).unwrap(), out.final_partition);
        let s = partition_invariants(&out.final_partition).s_b;
        assert_eq!(out.final_partition.parts().iter().filter(|&&x| x == 1).count(), s, "{part}");
        if let Some(first) = out.stages.first() {
            let i1 = first.set[0];
            assert_eq!(&out.final_partition.parts()[..i1], &part.parts()[..i1]);
        }
    }
    let ones = Partition::parse("1,1,1").unwrap();
    let out = coarsen_to_singletons(
        &f,
        &Matrix::zeros(&f, 3, 3),
        &ones.jordan_matrix(&f),
        &CoarsenOptions::default(),
        &mut rng,
    )
    .unwrap();
    assert!(out.f.is_zero() && out.stages.is_empty());
}

#[test]
fn normal_form_identities() {
    let f = PrimeField::new(101).unwrap();
    let mut rng = trial_rng(59, 0);
    for (l, n) in [(3, 5), (3, 6), (3, 7), (4, 7), (3, 8), (4, 8)] {
        for _ in 0..5 {
            let a = sample_lemma_4_2(&f, l, n, &mut rng).unwrap();
            let nf = normalize_lemma_4_2(&f, &a, l, n).unwrap();
            let pi = matrix::inverse(&f, &nf.basis).unwrap();
            let conj = |m: &Matrix<u64>| pi.mul(&f, m).unwrap().mul(&f, &nf.basis).unwrap();
            let aln = a_ln(&f, l, n, nf.c);
            let j = j_ln(&f, l, n);
            assert_eq!(conj(&a), aln);
            assert_eq!(conj(&j), eval_poly_at_matrix(&f, &nf.f_hat, &j).unwrap());
            assert_eq!(aln.mul(&f, &j).unwrap(), j.pow(&f, 2).unwrap());
            let lhs = j.pow(&f, (l - 1) as u32).unwrap();
            let rhs = aln.pow(&f, (n - l + 1) as u32).unwrap().scale(&f, &f.inv(&nf.c).unwrap());
            assert_eq!(lhs, rhs);
            let v: Vec<u64> = (0..n).map(|_| f.random(&mut rng)).collect();
            if j.pow(&f, (l - 1) as u32).unwrap().mul_vec(&f, &v).unwrap().iter().any(|&x| x != 0) {
                assert_eq!(check_lemma_4_2_b(&f, &a, l, n, &v).unwrap(), (true, true));
            }
        }
    }
}

#[test]
fn normal_form_names_the_failed_premise() {
    let f = PrimeField::new(101).unwrap();
    let j = j_ln(&f, 3, 7);
    match normalize_lemma_4_2(&f, &j, 3, 7) {
        Err(Error::Domain(msg)) => assert!(msg.contains("rank"), "{msg}"),
        other => panic!("{other:?}"),
    }
    assert!(normalize_lemma_4_2(&f, &j, 5, 7).is_err());
}

#[test]
fn premise_admits_quadratic_g_when_l_is_3() {
    // g_A = x^2: rank n−2 and index n−l+2 hold, yet A J = 0 rules out a).
    let f = PrimeField::new(101).unwrap();
    let (l, n) = (3, 5);
    let mut a = Matrix::zeros(&f, n, n);
    a.set(0, 2, 1);
    a.set(0, 3, 1);
    a.set(3, 4, 1);
    a.set(4, 2, 1);
    let j = j_ln(&f, l, n);
    assert!(a.commutator(&f, &j).unwrap().is_zero(&f));
    assert_eq!(matrix::rank_over_field(&f, &a), n - 2);
    assert_eq!(a.nilpotency_index(&f).unwrap(), Some(n - l + 2));
    assert!(a.mul(&f, &j).unwrap().is_zero(&f));
    match normalize_lemma_4_2(&f, &a, l, n) {
        Err(Error::Domain(msg)) => assert!(msg.contains("x^2"), "{msg}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn generic_rank_statistics() {
    let f = PrimeField::new(101).unwrap();
    let mut rng = trial_rng(61, 0);
    let s = generic_rank_experiment(&f, &Partition::parse("3,1").unwrap(), 200, &mut rng).unwrap();
    assert_eq!(s.expected, 2);
    assert!(s.bound_holds());
    let s = generic_rank_experiment(&f, &Partition::regular(5), 50, &mut rng).unwrap();
    assert_eq!((s.expected, s.max_observed), (4, 4));
    // All parts one: r_B = 1 and the cone is the strictly upper triangular matrices.
    let s = generic_rank_experiment(&f, &Partition::parse("1,1,1").unwrap(), 200, &mut rng).unwrap();
    assert_eq!(s.expected, 2);
    assert!(s.bound_holds());
}

#[test]
fn h_matrix_claims() {
    let r = check_prop_3_8_prime(20).unwrap();
    assert!(r.passed(), "{:?}", r.claims);
}
