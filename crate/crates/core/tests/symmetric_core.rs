use homspec::symmetric::*;
use homspec::Error;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_perm(n: usize, seed: u64) -> Permutation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v: Vec<usize> = (1..=n).collect();
    v.shuffle(&mut rng);
    Permutation::new(&v).unwrap()
}

fn comp(parts: &[usize]) -> Composition {
    Composition::new(parts).unwrap()
}

fn part(parts: &[usize]) -> Partition {
    Partition::new(parts).unwrap()
}

fn osp(blocks: &[&[usize]]) -> OrderedSetPartition {
    OrderedSetPartition::new(blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
}

#[test]
fn omega_sizes() {
    assert_eq!(enumerate_omega(&comp(&[1, 1])).unwrap().len(), 2);
    assert_eq!(enumerate_omega(&comp(&[2, 1, 1])).unwrap().len(), 12);
    // 5!/(2!·2!·1!) by hand
    assert_eq!(enumerate_omega(&comp(&[2, 2, 1])).unwrap().len(), 120 / 4);
}

#[test]
fn zero_part_is_rejected() {
    assert!(matches!(Composition::new(&[2, 0, 1]), Err(Error::InvalidInput(_))));
}

#[test]
fn omega_counts_and_distinctness_up_to_eight() {
    for n in 1..=8 {
        for a in Composition::all(n) {
            let expected = factorial(n) / a.parts().iter().map(|&p| factorial(p)).product::<u128>();
            match enumerate_omega(&a) {
                Ok(om) => {
                    assert_eq!(om.len() as u128, expected, "{a:?}");
                    let mut words: Vec<_> = (0..om.len()).map(|k| om.word(k).to_vec()).collect();
                    assert!(words.windows(2).all(|w| w[0] < w[1]), "canonical order for {a:?}");
                    words.dedup();
                    assert_eq!(words.len(), om.len());
                    for k in 0..om.len() {
                        assert_eq!(om.index_of(&om.point(k)), Some(k));
                    }
                }
                Err(Error::ResourceCap(_)) => assert!(expected > MAX_SPACE as u128),
                Err(e) => panic!("{a:?}: {e}"),
            }
        }
    }
}

#[test]
fn base_point_is_consecutive_intervals() {
    let om = enumerate_omega(&comp(&[2, 1, 1])).unwrap();
    assert_eq!(om.point(om.base_index()), osp(&[&[1, 2], &[3], &[4]]));
}

#[test]
fn act_examples() {
    let a = osp(&[&[1, 2], &[3], &[4]]);
    assert_eq!(act(&Permutation::identity(4), &a).unwrap(), a);
    assert_eq!(act(&Permutation::transposition(4, 1, 2).unwrap(), &a).unwrap(), a);
    assert_eq!(act(&Permutation::transposition(4, 1, 3).unwrap(), &a).unwrap(), osp(&[&[2, 3], &[1], &[4]]));
    assert!(matches!(act(&Permutation::identity(5), &a), Err(Error::InvalidInput(_))));
}

#[test]
fn orbit_examples() {
    let om11 = enumerate_omega(&comp(&[1, 1])).unwrap();
    assert_eq!(subgroup_orbits(&[], &om11).unwrap(), vec![vec![0], vec![1]]);
    let om = enumerate_omega(&comp(&[2, 1, 1])).unwrap();
    let k = young_generators(&comp(&[2, 1, 1]));
    assert_eq!(subgroup_orbits(&k, &om).unwrap().len(), 7);
    assert_eq!(subgroup_orbits(&sn_generators(4), &om).unwrap().len(), 1);
}

#[test]
fn character_examples() {
    for n in 1..=6 {
        let triv = part(&[n]);
        let sign = part(&vec![1; n]);
        for mu in Partition::all(n) {
            assert_eq!(sn_character(&triv, &mu).unwrap(), 1);
            let even_parts = mu.parts().iter().filter(|&&p| p % 2 == 0).count();
            let expected = if (n - mu.len()) % 2 == 0 { 1 } else { -1 };
            assert_eq!(sn_character(&sign, &mu).unwrap(), expected, "{mu:?}");
            assert_eq!(expected, if even_parts % 2 == 0 { 1 } else { -1 });
        }
    }
    assert_eq!(sn_character(&part(&[2, 1]), &part(&[3])).unwrap(), -1);
    assert!(sn_character(&part(&[2, 1]), &part(&[2, 2])).is_err());
}

/// The standard representation is the permutation representation minus the trivial one.
#[test]
fn standard_character_is_fixed_points_minus_one() {
    for n in 2..=6 {
        let std = part(&[n - 1, 1]);
        for g in all_permutations(n).unwrap() {
            let fixed = (1..=n).filter(|&i| g.image(i) == i).count() as i64;
            assert_eq!(sn_character(&std, &g.cycle_type()).unwrap(), fixed - 1);
        }
    }
}

#[test]
fn hook_examples() {
    for n in 2..=7 {
        assert_eq!(hook_dimension(&part(&[n])), 1);
        assert_eq!(hook_dimension(&part(&[n - 1, 1])), (n - 1) as u64);
    }
    let id5 = part(&[1, 1, 1, 1, 1]);
    assert_eq!(sn_character(&part(&[2, 2, 1]), &id5).unwrap(), 5);
    assert_eq!(hook_dimension(&part(&[2, 2, 1])), 5);
}

#[test]
fn dominance_and_interlacing_examples() {
    for n in 1..=6 {
        assert!(dominates(&part(&[n]), &comp(&[n])));
    }
    assert!(interlaces(&part(&[4, 1]), &part(&[3])));
    assert!(!dominates(&part(&[2, 2, 1]), &comp(&[3, 1, 1])));
    assert!(dominates(&part(&[3, 1, 1]), &comp(&[1, 2, 2])));
}

#[test]
fn character_orthonormality_and_hook_formula() {
    for n in 1..=7 {
        let classes = Partition::all(n);
        for lam in Partition::all(n) {
            let total: i128 = classes
                .iter()
                .map(|mu| mu.class_size() as i128 * (sn_character(&lam, mu).unwrap() as i128).pow(2))
                .sum();
            assert_eq!(total, factorial(n) as i128, "{lam:?}");
            let id = part(&vec![1; n]);
            assert_eq!(sn_character(&lam, &id).unwrap(), hook_dimension(&lam) as i64);
        }
    }
}

#[test]
fn max_group_reads_environment_default() {
    assert!(max_group() >= 1);
}

proptest! {
    #[test]
    fn act_is_a_group_action(s1 in any::<u64>(), s2 in any::<u64>(), k in 0usize..60) {
        let a = comp(&[2, 2, 1]);
        let om = enumerate_omega(&a).unwrap();
        let (sigma, tau) = (random_perm(5, s1), random_perm(5, s2));
        let x = om.point(k % om.len());
        let lhs = act(&sigma.compose(&tau), &x).unwrap();
        let rhs = act(&sigma, &act(&tau, &x).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(om.act_index(&sigma, k % om.len()), om.index_of(&act(&sigma, &x).unwrap()).unwrap());
    }

    #[test]
    fn coset_rep_maps_base_point(k in 0usize..60) {
        let om = enumerate_omega(&comp(&[2, 2, 1])).unwrap();
        let k = k % om.len();
        prop_assert_eq!(om.act_index(&om.coset_rep(k), om.base_index()), k);
    }

    #[test]
    fn orbits_are_closed_and_exhaustive(seeds in proptest::collection::vec(any::<u64>(), 0..3)) {
        let om = enumerate_omega(&comp(&[2, 1, 1, 1])).unwrap();
        let gens: Vec<Permutation> = seeds.iter().map(|&s| random_perm(5, s)).collect();
        let orbits = subgroup_orbits(&gens, &om).unwrap();
        let mut all: Vec<usize> = orbits.iter().flatten().copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..om.len()).collect::<Vec<_>>());
        for o in &orbits {
            prop_assert!(o.windows(2).all(|w| w[0] < w[1]));
            for g in &gens {
                for &x in o {
                    prop_assert!(o.binary_search(&om.act_index(g, x)).is_ok());
                }
            }
            // closure of the minimal element under the generators
            let mut seen = vec![o[0]];
            let mut i = 0;
            while i < seen.len() {
                for g in &gens {
                    let y = om.act_index(g, seen[i]);
                    if !seen.contains(&y) {
                        seen.push(y);
                    }
                }
                i += 1;
            }
            seen.sort_unstable();
            prop_assert_eq!(&seen, o);
        }
        prop_assert!(orbits.windows(2).all(|w| w[0][0] < w[1][0]));
    }
}
