use homspec::algebra::{isotypic_projector, ModuleVector, RationalOperator};
use homspec::gt::{gt_projector, index_of_pair, pair_of, ChainSpec};
use homspec::linalg::{q, qf};
use homspec::m211::*;
use homspec::symmetric::{Composition, Partition, Permutation};
use homspec::{Matrix, Q};
use num_traits::Zero;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn iso(parts: &[usize], n: usize) -> RationalOperator {
    isotypic_projector(&Partition::new(parts).unwrap(), &Composition::new(&[n - 2, 1, 1]).unwrap()).unwrap()
}

fn random_f(n: usize, rng: &mut ChaCha8Rng) -> ModuleVector {
    let space = pair_space(n).unwrap();
    let c = (0..space.len()).map(|_| q(rng.gen_range(0..=20))).collect();
    ModuleVector::new(space, c).unwrap()
}

fn from_fn(n: usize, f: impl Fn(usize, usize) -> Q) -> ModuleVector {
    let space = pair_space(n).unwrap();
    let c = (0..space.len())
        .map(|k| {
            let (i, j) = pair_of(&space, k).unwrap();
            f(i, j)
        })
        .collect();
    ModuleVector::new(space, c).unwrap()
}

fn check_chain(n: usize, blocks: &[(&str, &str, Arc<RationalOperator>)]) {
    let nn = n as u64;
    let ranks: Vec<u64> = blocks.iter().map(|b| b.2.matrix.rank() as u64).collect();
    let mut expected = vec![1, nn - 1, nn - 1, nn * (nn - 3) / 2, (nn - 1) * (nn - 2) / 2];
    let mut got = ranks.clone();
    expected.sort_unstable();
    got.sort_unstable();
    assert_eq!(got, expected, "n = {n}");
    let len = blocks[0].2.space.len();
    let mut sum = Matrix::zeros(len, len);
    for (i, (_, _, e)) in blocks.iter().enumerate() {
        assert!(e.matrix.is_idempotent());
        assert!(e.matrix.is_symmetric());
        for (_, _, f) in &blocks[i + 1..] {
            assert!(e.matrix.mul(&f.matrix).is_zero());
        }
        sum = sum.add(&e.matrix);
    }
    assert_eq!(sum, Matrix::identity(len));
}

#[test]
fn projectors_of_both_chains() {
    for n in 4..=6 {
        let p = M211Projectors::new(n).unwrap();
        check_chain(n, &p.chain_a());
        check_chain(n, &p.chain_b());
        let names_a: Vec<&str> = p.chain_a().iter().map(|b| b.0).collect();
        assert_eq!(names_a, ["mean", "S^{n-1,1}_S", "S^{n-2,2}", "S^{n-1,1}_A", "S^{n-2,1,1}"]);
        let names_b: Vec<&str> = p.chain_b().iter().map(|b| b.0).collect();
        assert_eq!(names_b, ["mean", "S^{n-1,1}_1", "S^{n-1,1}_2", "S^{n-2,2}", "S^{n-2,1,1}"]);

        let standard = iso(&[n - 1, 1], n);
        assert_eq!(p.e1_s.add(&p.e1_a), standard);
        assert_eq!(p.e1_1.add(&p.e1_2), standard);
        assert_eq!(*p.e1_1, gt_projector(&ChainSpec::from_parts(&[n - 2, 1, 1]).unwrap(), 3).unwrap());
        assert_eq!(*p.a_s22, iso(&[n - 2, 2], n));
        assert_eq!(*p.b_s22, iso(&[n - 2, 2], n));
        assert_eq!(*p.a_s211, iso(&[n - 2, 1, 1], n));
        assert_eq!(*p.b_s211, iso(&[n - 2, 1, 1], n));
        assert_eq!(*p.mean, iso(&[n], n));
    }
}

#[test]
fn dimensions_for_four_candidates() {
    let f = from_fn(4, |i, j| q((i * 10 + j) as i64));
    let r = decompose_chain_a(&f).unwrap();
    let dims: Vec<u64> = r.components.iter().map(|c| c.dimension).collect();
    assert_eq!(dims, [1, 3, 2, 3, 3]);
    assert_eq!(dims.iter().sum::<u64>(), 12);
    assert_eq!(r.chain_label, LABEL_SYM_ANTISYM);
    assert_eq!(decompose_chain_b(&f).unwrap().chain_label, LABEL_LAST_COORDINATE);
}

#[test]
fn constant_input_is_all_mean() {
    for n in 4..=5 {
        let f = from_fn(n, |_, _| q(7));
        for r in [decompose_chain_a(&f).unwrap(), decompose_chain_b(&f).unwrap()] {
            for c in &r.components {
                assert_eq!(c.vector.is_zero(), c.name != "mean", "{}", c.name);
            }
        }
    }
}

#[test]
fn too_few_candidates() {
    assert!(pair_space(3).is_err());
    assert!(M211Projectors::new(2).is_err());
}

#[test]
fn second_coordinate_functions() {
    let n = 5;
    let g = [q(2), q(-1), q(3), q(-4), q(0)];
    let f = from_fn(n, |_, j| g[j - 1].clone());
    let r = decompose_chain_b(&f).unwrap();
    for c in &r.components {
        if c.name == "S^{n-1,1}_1" {
            assert_eq!(c.vector, f);
        } else {
            assert!(c.vector.is_zero(), "{}", c.name);
        }
    }
    let nn = q(n as i64 - 1);
    let f = from_fn(n, |i, j| &nn * &g[i - 1] + &g[j - 1]);
    let r = decompose_chain_b(&f).unwrap();
    for c in &r.components {
        if c.name == "S^{n-1,1}_2" {
            assert_eq!(c.vector, f);
        } else {
            assert!(c.vector.is_zero(), "{}", c.name);
        }
    }
}

#[test]
fn component_shapes_in_the_second_chain() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in 4..=6 {
        let f = random_f(n, &mut rng);
        let r = decompose_chain_b(&f).unwrap();
        let space = &f.space;
        let c1 = &r.component("S^{n-1,1}_1").unwrap().vector;
        let c2 = &r.component("S^{n-1,1}_2").unwrap().vector;
        // depends only on j, zero mean
        let mut by_j = vec![None; n + 1];
        for k in 0..space.len() {
            let (_, j) = pair_of(space, k).unwrap();
            match &by_j[j] {
                None => by_j[j] = Some(c1.coeffs[k].clone()),
                Some(v) => assert_eq!(v, &c1.coeffs[k]),
            }
        }
        assert!(c1.coeffs.iter().sum::<Q>().is_zero());
        // (n−1)g(i) + g(j) with Σg = 0; row sums give n(n−2)·g(i)
        let nn = n as i64;
        let g: Vec<Q> = (1..=n)
            .map(|i| {
                let row: Q =
                    (1..=n).filter(|&j| j != i).map(|j| c2.coeffs[index_of_pair(space, i, j).unwrap()].clone()).sum();
                row / q(nn * (nn - 2))
            })
            .collect();
        assert!(g.iter().sum::<Q>().is_zero());
        for k in 0..space.len() {
            let (i, j) = pair_of(space, k).unwrap();
            assert_eq!(c2.coeffs[k], q(nn - 1) * &g[i - 1] + &g[j - 1]);
        }
    }
}

#[test]
fn chains_agree_on_shared_blocks() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for n in 4..=6 {
        let p = M211Projectors::new(n).unwrap();
        let f = random_f(n, &mut rng);
        let a = decompose_chain_a_with(&p, &f).unwrap();
        let b = decompose_chain_b_with(&p, &f).unwrap();
        for name in ["mean", "S^{n-2,2}", "S^{n-2,1,1}"] {
            assert_eq!(a.component(name).unwrap().vector, b.component(name).unwrap().vector);
        }
    }
}

#[test]
fn election_examples() {
    let r = election_report(5, &[Ballot { president: 1, director: 2, count: 6 }]).unwrap();
    for chain in &r.chains {
        let e: Q = chain.components.iter().map(|c| c.norm_sq.clone()).sum();
        assert_eq!(e, q(36));
    }
    assert_eq!(r.total_votes, 6);

    let ballots = [
        Ballot { president: 1, director: 2, count: 4 },
        Ballot { president: 2, director: 1, count: 4 },
        Ballot { president: 3, director: 4, count: 1 },
        Ballot { president: 4, director: 3, count: 1 },
    ];
    let r = election_report(4, &ballots).unwrap();
    let a = &r.chains[0];
    assert!(a.component("S^{n-1,1}_A").unwrap().vector.is_zero());
    assert!(a.component("S^{n-2,1,1}").unwrap().vector.is_zero());

    let ballots = [Ballot { president: 1, director: 2, count: 3 }, Ballot { president: 2, director: 1, count: 1 }];
    let r = election_report(4, &ballots).unwrap();
    assert_eq!(r.chains[0].component("mean").unwrap().norm_sq, qf(16, 12));
    let top = top_entries(&r.tally, 5).unwrap();
    assert_eq!(top.len(), 2);
    assert_eq!((top[0].president, top[0].director, top[0].value.clone()), (1, 2, q(3)));
}

#[test]
fn malformed_ballots() {
    assert!(tally(4, &[Ballot { president: 3, director: 3, count: 1 }]).is_err());
    assert!(tally(4, &[Ballot { president: 1, director: 2, count: -2 }]).is_err());
    assert!(tally(4, &[Ballot { president: 1, director: 5, count: 1 }]).is_err());
    assert!(tally(4, &[Ballot { president: 0, director: 2, count: 1 }]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn parseval_and_resolution(seed in any::<u64>(), n in 4usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_f(n, &mut rng);
        for r in [decompose_chain_a(&f).unwrap(), decompose_chain_b(&f).unwrap()] {
            let e: Q = r.components.iter().map(|c| c.norm_sq.clone()).sum();
            prop_assert_eq!(&e, &f.norm_sq());
            prop_assert_eq!(&r.input_norm_sq, &f.norm_sq());
            for (i, x) in r.components.iter().enumerate() {
                for y in &r.components[i + 1..] {
                    prop_assert!(x.vector.dot(&y.vector).is_zero());
                }
            }
        }
    }

    #[test]
    fn decompositions_are_equivariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 5;
        let p = M211Projectors::new(n).unwrap();
        let f = random_f(n, &mut rng);
        let mut imgs: Vec<usize> = (1..=n).collect();
        imgs.shuffle(&mut rng);
        let sigma = Permutation::new(&imgs).unwrap();
        let g = f.translate(&sigma);
        for (x, y) in [
            (decompose_chain_a_with(&p, &f).unwrap(), decompose_chain_a_with(&p, &g).unwrap()),
            (decompose_chain_b_with(&p, &f).unwrap(), decompose_chain_b_with(&p, &g).unwrap()),
        ] {
            for (cx, cy) in x.components.iter().zip(&y.components) {
                prop_assert_eq!(&cx.vector.translate(&sigma), &cy.vector);
                prop_assert_eq!(&cx.norm_sq, &cy.norm_sq);
            }
        }
    }
}
