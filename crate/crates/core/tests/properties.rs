use nilcommute_core::algebra::PrimeField;
use nilcommute_core::commutant::*;
use nilcommute_core::hilbert::*;
use nilcommute_core::matrix::{self, Matrix};
use nilcommute_core::rank_laws::*;
use nilcommute_core::rng::trial_rng;
use proptest::prelude::*;

fn partition(max_n: usize) -> impl Strategy<Value = Partition> {
    (1..=max_n).prop_flat_map(|n| {
        let all = Partition::all(n);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

fn prime() -> impl Strategy<Value = PrimeField> {
    prop::sample::select(vec![2u64, 3, 5, 101, 1009]).prop_map(|p| PrimeField::new(p).unwrap())
}

fn mode() -> impl Strategy<Value = SampleMode> {
    prop::sample::select(vec![SampleMode::Uniform, SampleMode::Triangular, SampleMode::Witness])
}

fn conjugate(f: &PrimeField, g: &(Matrix<u64>, Matrix<u64>), m: &Matrix<u64>) -> Matrix<u64> {
    g.0.mul(f, m).unwrap().mul(f, &g.1).unwrap()
}

fn report(law: Law, trials: u64, violations: usize) -> RankLawReport {
    let v = Violation { law, partition: Partition::regular(2), prime: 2, i: 0, j: 0, m: 1, rank: 2, bound: 1 };
    RankLawReport { law, trials, violations: (0..violations).map(|k| Violation { m: k, ..v.clone() }).collect() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn centralizer_nilpotence_matches_powers(part in partition(6), f in prime(), seed in any::<u64>()) {
        let params = CommutantParams::random(&f, &part, &mut trial_rng(seed, 0), false);
        let a = params.to_matrix(&f);
        prop_assert!(a.commutator(&f, &part.jordan_matrix(&f)).unwrap().is_zero(&f));
        let nilpotent = a.pow(&f, part.n() as u32).unwrap().is_zero(&f);
        prop_assert_eq!(is_nilpotent_in_centralizer(&f, &params), nilpotent);
    }

    #[test]
    fn samples_lie_in_the_nilpotent_commutant(part in partition(6), f in prime(), mode in mode(), seed in any::<u64>()) {
        let a = sample_nilpotent_commuting(&f, &part, &mut trial_rng(seed, 1), mode).unwrap();
        prop_assert!(a.commutator(&f, &part.jordan_matrix(&f)).unwrap().is_zero(&f));
        prop_assert!(a.pow(&f, part.n() as u32).unwrap().is_zero(&f));
        let params = CommutantParams::from_matrix(&f, &part, &a).unwrap();
        prop_assert_eq!(params.to_matrix(&f), a.clone());
        // A sits in N_B, whose generic rank is n minus the number of runs of near-equal parts.
        let r_b = part.near_equal_sets().len();
        prop_assert!(matrix::rank_over_field(&f, &a) <= part.n() - r_b);
    }

    #[test]
    fn triangularize_keeps_b_and_the_class_of_a(part in partition(6), seed in any::<u64>()) {
        let f = PrimeField::new(101).unwrap();
        let mut rng = trial_rng(seed, 2);
        let a = sample_nilpotent_commuting(&f, &part, &mut rng, SampleMode::Uniform).unwrap();
        let g = matrix::random_invertible(&f, part.n(), &mut rng);
        let (a, b) = (conjugate(&f, &g, &a), conjugate(&f, &g, &part.jordan_matrix(&f)));
        let jd = triangularize(&f, &a, &jordan_basis(&f, &b).unwrap()).unwrap();
        prop_assert_eq!(jd.to_jordan_coords(&f, &b).unwrap(), part.jordan_matrix(&f));
        let ap = jd.to_jordan_coords(&f, &a).unwrap();
        prop_assert!(in_triangular_cone(&f, &part, &ap).unwrap());
        prop_assert_eq!(jd.from_jordan_coords(&f, &ap).unwrap(), a);
    }

    #[test]
    fn rank_laws_hold(part in partition(6), p in prop::sample::select(vec![101u64, 1009]), seed in any::<u64>()) {
        let f = PrimeField::new(p).unwrap();
        let mut rng = trial_rng(seed, 3);
        let a = sample_nilpotent_commuting(&f, &part, &mut rng, SampleMode::Uniform).unwrap();
        let g = matrix::random_invertible(&f, part.n(), &mut rng);
        let (a, b) = (conjugate(&f, &g, &a), conjugate(&f, &g, &part.jordan_matrix(&f)));
        let jd = triangularize(&f, &a, &jordan_basis(&f, &b).unwrap()).unwrap();
        prop_assert!(check_lemma_3_1(&f, &a, &jd).unwrap().passed());
        prop_assert!(check_cor_3_2(&f, &a, &b).unwrap().passed());
        let s = partition_invariants(&part).s_b as u32;
        prop_assert!(check_lemma_3_3(&f, &a.pow(&f, s).unwrap(), &b).unwrap().passed());
        for m in 1..=part.n() {
            prop_assert!(check_prop_3_5(&f, &a, &b, m).unwrap().holds());
        }
    }

    #[test]
    fn merge_is_associative_and_commutative_up_to_order(
        t in prop::collection::vec((0u64..100, 0usize..3), 3),
    ) {
        let r: Vec<_> = t.iter().map(|&(n, v)| report(Law::Cor32, n, v)).collect();
        let left = r[0].clone().merge(r[1].clone()).merge(r[2].clone());
        let right = r[0].clone().merge(r[1].clone().merge(r[2].clone()));
        prop_assert_eq!(&left, &right);
        let swapped = r[1].clone().merge(r[0].clone());
        let straight = r[0].clone().merge(r[1].clone());
        prop_assert_eq!(swapped.trials, straight.trials);
        prop_assert_eq!(swapped.violations.len(), straight.violations.len());
        prop_assert_eq!(left.passed(), r.iter().all(RankLawReport::passed));
    }

    #[test]
    fn zeta_inverts_zeta_hat(n in 3usize..=6, pick in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let f = PrimeField::new(101).unwrap();
        let m = 2 + pick.index(n.div_ceil(2) - 1);
        let mut rng = trial_rng(seed, 4);
        let ideal = random_staircase_ideal(&f, n, m, &mut rng).unwrap();
        let triple = zeta_hat(&f, &ideal).unwrap();
        prop_assert!(triple.a.commutator(&f, &triple.b).unwrap().is_zero(&f));
        prop_assert_eq!(zeta(&f, &triple, m).unwrap(), ideal.clone());
        let (g, _) = matrix::random_invertible(&f, n, &mut rng);
        let moved = triple.conjugate(&f, &g).unwrap();
        prop_assert_eq!(zeta(&f, &moved, m).unwrap(), ideal);
        prop_assert_eq!(triple.orbit_element(&f, &moved, m).unwrap(), Some(g));
        prop_assert_eq!(moved.stabilizer_dimension(&f).unwrap(), 0);
    }
}
