use homspec::algebra::decompose_module;
use homspec::gt::{spherical_phi, ChainSpec};
use homspec::linalg::q;
use homspec::schemes::action::{composition_action, fibre_partition, first_coordinate_partition, pairs_action};
use homspec::schemes::crested::{
    brute_force_orbits, composition_multiplicity_table, crested_spherical_products, CompositionInput, InnerRow,
    ProductCase,
};
use homspec::schemes::expo::{
    exponentiation_action, function_orbits, regular_action, stabilizer_orbit_count, EtaRow, MAX_EXPO_POINTS,
};
use homspec::schemes::*;
use homspec::symmetric::{enumerate_omega, sn_generators, Composition, Permutation};
use homspec::{Error, Q};
use num_traits::Zero;
use proptest::prelude::*;
use std::collections::BTreeSet;

fn action(images: &[&[usize]], base: usize) -> FiniteAction {
    let imgs: Vec<Vec<usize>> = images.iter().map(|v| v.to_vec()).collect();
    FiniteAction::from_images(images[0].len(), &imgs, base).unwrap()
}

fn s2() -> FiniteAction {
    action(&[&[1, 0]], 0)
}

fn s3() -> FiniteAction {
    action(&[&[1, 0, 2], &[1, 2, 0]], 0)
}

fn d4() -> FiniteAction {
    action(&[&[1, 2, 3, 0], &[0, 3, 2, 1]], 0)
}

/// `S_n` on `Ω_a`, base point index 0.
fn omega_action(parts: &[usize]) -> FiniteAction {
    let om = enumerate_omega(&Composition::new(parts).unwrap()).unwrap();
    let imgs: Vec<Vec<usize>> = sn_generators(om.n()).iter().map(|g| om.index_permutation(g)).collect();
    FiniteAction::from_images(om.len(), &imgs, 0).unwrap()
}

fn perm0(images: &[usize]) -> Permutation {
    Permutation::new(&images.iter().map(|x| x + 1).collect::<Vec<_>>()).unwrap()
}

fn partition(degree: usize, blocks: &[&[usize]]) -> InvariantPartition {
    InvariantPartition::new(degree, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
}

fn row(label: &str, multiplicity: u64, dimension: u64) -> RepRow {
    RepRow { label: label.into(), multiplicity, dimension }
}

fn inner_row(label: &str, multiplicity: u64, dimension: u64, in_delta0: bool) -> InnerRow {
    InnerRow { label: label.into(), multiplicity, dimension, in_delta0 }
}

fn set_of(classes: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    classes.iter().cloned().collect()
}

/// Group convolution of functions on `Y` lifted to `F`, weighted by `1/|H|`.
fn group_convolve(act: &FiniteAction, f1: &[Q], f2: &[Q]) -> Vec<Q> {
    let elems = act.elements().unwrap();
    let base = act.base_point();
    let h = elems.iter().filter(|g| g.image(base + 1) == base + 1).count();
    (0..act.degree())
        .map(|y| {
            let s: Q = elems.iter().map(|g| &f1[g.image(base + 1) - 1] * &f2[g.inverse().image(y + 1) - 1]).sum();
            s / q(h as i64)
        })
        .collect()
}

fn block_indicator(act: &FiniteAction, p: &InvariantPartition) -> Vec<Q> {
    let b0 = p.block_of(act.base_point());
    (0..act.degree()).map(|x| if p.block_of(x) == b0 { q(1) } else { Q::zero() }).collect()
}

fn simgroup(n: usize) -> (SuborbitDecomposition, InvariantPartition) {
    let (act, pairs) = pairs_action(n).unwrap();
    (suborbits(&act).unwrap(), first_coordinate_partition(&pairs).unwrap())
}

fn wreath_fixture() -> (SuborbitDecomposition, InvariantPartition) {
    let act = composition_action(&s3(), &s2()).unwrap();
    (suborbits(&act).unwrap(), fibre_partition(3, 2))
}

/// Named crested fixtures.
fn crested_fixtures() -> Vec<(&'static str, CrestedSpec)> {
    let a3 = vec![perm0(&[1, 2, 0])];
    let (pairs3, _) = pairs_action(3).unwrap();
    // the second generator is the 3-cycle acting on both coordinates
    let a3_pairs = vec![pairs3.generators()[1].clone()];
    let iter_outer = composition_action(&s2(), &s2()).unwrap();
    let iter_inner = composition_action(&s2(), &s3()).unwrap();
    let fibre_gens = iter_inner.generators()[s2().generators().len()..].to_vec();
    vec![
        (
            "direct",
            CrestedSpec {
                outer: s3(),
                outer_partition: InvariantPartition::universal(3),
                inner: s3(),
                normal_generators: vec![],
                inner_partition: Some(InvariantPartition::equality(3)),
            },
        ),
        (
            "wreath",
            CrestedSpec {
                outer: s3(),
                outer_partition: InvariantPartition::equality(3),
                inner: s3(),
                normal_generators: s3().generators().to_vec(),
                inner_partition: Some(InvariantPartition::universal(3)),
            },
        ),
        (
            "s3_a3_by_s2",
            CrestedSpec {
                outer: s2(),
                outer_partition: InvariantPartition::equality(2),
                inner: s3(),
                normal_generators: a3.clone(),
                inner_partition: None,
            },
        ),
        (
            "d4_blocks_a3",
            CrestedSpec {
                outer: d4(),
                outer_partition: partition(4, &[&[0, 2], &[1, 3]]),
                inner: s3(),
                normal_generators: a3,
                inner_partition: None,
            },
        ),
        (
            "d4_blocks_regular_s3",
            CrestedSpec {
                outer: d4(),
                outer_partition: partition(4, &[&[0, 2], &[1, 3]]),
                inner: pairs3.clone(),
                normal_generators: a3_pairs.clone(),
                inner_partition: None,
            },
        ),
        (
            "s2_universal_regular_s3",
            CrestedSpec {
                outer: s2(),
                outer_partition: InvariantPartition::universal(2),
                inner: pairs3,
                normal_generators: a3_pairs,
                inner_partition: None,
            },
        ),
        (
            "iterated_wreath",
            CrestedSpec {
                outer: iter_outer,
                outer_partition: fibre_partition(2, 2),
                inner: iter_inner,
                normal_generators: fibre_gens,
                inner_partition: Some(fibre_partition(2, 3)),
            },
        ),
    ]
}

/// Hand-computed decompositions for each crested fixture.
fn composition_input(name: &str, dec: &CrestedDecomposition) -> CompositionInput {
    let s3_rows = || vec![row("triv", 1, 1), row("std", 1, 2)];
    let s2_rows = || vec![row("triv", 1, 1), row("sgn", 1, 1)];
    let d4_rows = || vec![row("triv", 1, 1), row("chi", 1, 1), row("two", 1, 2)];
    let regular_s3 =
        || vec![inner_row("triv", 1, 1, true), inner_row("sgn", 1, 1, true), inner_row("std", 2, 2, false)];
    let (outer, block, num_blocks, inner) = match name {
        "direct" => (s3_rows(), s3_rows(), 1, vec![inner_row("triv", 1, 1, true), inner_row("std", 1, 2, true)]),
        "wreath" => {
            (s3_rows(), vec![row("triv", 1, 1)], 3, vec![inner_row("triv", 1, 1, true), inner_row("std", 1, 2, false)])
        }
        "s3_a3_by_s2" => {
            (s2_rows(), vec![row("triv", 1, 1)], 2, vec![inner_row("triv", 1, 1, true), inner_row("std", 1, 2, false)])
        }
        "d4_blocks_a3" => (d4_rows(), s2_rows(), 2, vec![inner_row("triv", 1, 1, true), inner_row("std", 1, 2, false)]),
        "d4_blocks_regular_s3" => (d4_rows(), s2_rows(), 2, regular_s3()),
        "s2_universal_regular_s3" => (s2_rows(), s2_rows(), 1, regular_s3()),
        // X×X′ under S_2≀S_2 and Y×Y′ under S_3≀S_2
        "iterated_wreath" => (
            vec![row("triv⊗triv′", 1, 1), row("sgn⊗triv′", 1, 1), row("L(X)⊗sgn′", 1, 2)],
            s2_rows(),
            2,
            vec![
                inner_row("triv⊗triv′", 1, 1, true),
                inner_row("sgn⊗triv′", 1, 1, true),
                inner_row("L(Y)⊗std′", 1, 4, false),
            ],
        ),
        other => panic!("no decomposition for {other}"),
    };
    CompositionInput {
        outer,
        inner,
        block,
        num_blocks,
        i_count: dec.outer.len(),
        i0_count: dec.i0.len(),
        j_count: dec.inner.len(),
        j_sim_count: dec.sim.len(),
        x_size: dec.outer.action.degree(),
        y_size: dec.inner.action.degree(),
    }
}

#[test]
fn suborbit_examples() {
    let dec = suborbits(&s3()).unwrap();
    assert_eq!(dec.orbits, vec![vec![0], vec![1, 2]]);
    for n in 4..=6 {
        let (dec, _) = simgroup(n);
        assert_eq!(dec.len(), 7);
        assert_eq!(dec.orbits[0], vec![0]);
    }
    // orbit count agrees with the Wielandt count on Ω_a
    for parts in [vec![2, 1, 1], vec![2, 2], vec![1, 1, 1], vec![3, 2]] {
        let c = Composition::new(&parts).unwrap();
        let expected: u128 = decompose_module(&c).unwrap().sum_sq();
        assert_eq!(suborbits(&omega_action(&parts)).unwrap().len() as u128, expected);
    }
    assert!(suborbits(&action(&[&[1, 0, 2]], 0)).is_err());
}

#[test]
fn simgroup_labels_match_the_listed_orbits() {
    let n = 5;
    let (act, pairs) = pairs_action(n).unwrap();
    let dec = suborbits(&act).unwrap();
    let label = |(i, j): (usize, usize)| match (i, j) {
        (1, 2) => 0,
        (2, 1) => 1,
        (1, _) => 2,
        (2, _) => 3,
        (_, 1) => 4,
        (_, 2) => 5,
        _ => 6,
    };
    for (k, &p) in pairs.iter().enumerate() {
        assert_eq!(dec.orbit_of(k), label(p), "{p:?}");
    }
}

#[test]
fn simgroup_classes() {
    for n in 4..=6 {
        let (dec, part) = simgroup(n);
        assert_eq!(sim_classes(&dec, &part).unwrap(), vec![vec![0, 2], vec![1, 4], vec![3, 5, 6]]);
        assert_eq!(approx_classes(&dec, &part).unwrap(), vec![vec![0, 2], vec![1, 3], vec![4, 5, 6]]);
    }
    let (dec, _) = simgroup(5);
    let discrete: Vec<Vec<usize>> = (0..7).map(|j| vec![j]).collect();
    assert_eq!(sim_classes(&dec, &InvariantPartition::equality(20)).unwrap(), discrete);
    assert_eq!(approx_classes(&dec, &InvariantPartition::equality(20)).unwrap(), discrete);
    assert_eq!(approx_classes(&dec, &InvariantPartition::universal(20)).unwrap(), vec![(0..7).collect::<Vec<_>>()]);
}

#[test]
fn non_invariant_partition_is_rejected() {
    let (dec, _) = simgroup(4);
    let mut blocks: Vec<Vec<usize>> = vec![vec![0, 1]];
    blocks.extend((2..12).map(|p| vec![p]));
    let bad = InvariantPartition::new(12, blocks).unwrap();
    assert!(sim_classes(&dec, &bad).is_err());
    assert!(approx_classes(&dec, &bad).is_err());
    assert!(InvariantPartition::new(3, vec![vec![0, 1]]).is_err());
}

/// Checks `1_{B_0} * 1_{Λ_i} = m_i 1_{Λ_[i]}` (right) or the left analogue
/// with an independent group convolution.
fn check_witness(dec: &SuborbitDecomposition, part: &InvariantPartition, side: Side) -> IdealWitness {
    let w = ideal_check(dec, part, side).unwrap();
    let b0 = block_indicator(&dec.action, part);
    for i in 0..dec.len() {
        let li = dec.indicator(&[i]);
        let c = match side {
            Side::Right => group_convolve(&dec.action, &b0, &li),
            Side::Left => group_convolve(&dec.action, &li, &b0),
        };
        let class = w.classes.iter().find(|c| c.contains(&i)).unwrap();
        let m = w.scalars[i].clone().expect("witness");
        let expected: Vec<Q> = dec.indicator(class).iter().map(|v| v * &m).collect();
        assert_eq!(c, expected, "i = {i}");
    }
    w
}

#[test]
fn ideal_witnesses_on_simgroup() {
    for n in 4..=5 {
        let (dec, part) = simgroup(n);
        let w = check_witness(&dec, &part, Side::Right);
        assert!(w.holds);
        assert_eq!(w.classes, vec![vec![0, 2], vec![1, 4], vec![3, 5, 6]]);
        // m_0 = 1; |Λ_2 ∪ Λ_0| = n − 1 points reached from B_0
        assert_eq!(w.scalars[0], Some(q(1)));
        let w = check_witness(&dec, &part, Side::Left);
        assert!(w.holds);
        assert_eq!(w.classes, vec![vec![0, 2], vec![1, 3], vec![4, 5, 6]]);
    }
}

#[test]
fn ideal_witnesses_on_wreath() {
    let (dec, part) = wreath_fixture();
    let w = check_witness(&dec, &part, Side::Right);
    assert!(w.holds);
    let outer = suborbits(&s3()).unwrap();
    // classes are exactly Λ_j × Y′
    let got: BTreeSet<Vec<usize>> = w
        .classes
        .iter()
        .map(|c| {
            let mut pts: Vec<usize> = c.iter().flat_map(|&j| dec.orbits[j].clone()).collect();
            pts.sort_unstable();
            pts
        })
        .collect();
    let expected: BTreeSet<Vec<usize>> = outer
        .orbits
        .iter()
        .map(|o| o.iter().flat_map(|&y| [2 * y, 2 * y + 1]).collect::<BTreeSet<_>>().into_iter().collect())
        .collect();
    assert_eq!(got, expected);
    assert!(check_witness(&dec, &part, Side::Left).holds);
}

#[test]
fn centrality_matches_coincidence_of_relations() {
    let mut cases: Vec<(SuborbitDecomposition, InvariantPartition)> = vec![simgroup(4), simgroup(5), wreath_fixture()];
    let (dec, _) = simgroup(4);
    cases.push((dec.clone(), InvariantPartition::equality(12)));
    cases.push((dec, InvariantPartition::universal(12)));
    let d = suborbits(&d4()).unwrap();
    cases.push((d, partition(4, &[&[0, 2], &[1, 3]])));
    let (act, pairs) = pairs_action(4).unwrap();
    let second: Vec<Vec<usize>> = (1..=4).map(|j| (0..pairs.len()).filter(|&k| pairs[k].1 == j).collect()).collect();
    cases.push((suborbits(&act).unwrap(), InvariantPartition::new(12, second).unwrap()));
    let comp = composition_action(&d4(), &s3()).unwrap();
    cases.push((suborbits(&comp).unwrap(), fibre_partition(4, 3)));
    let mut seen = BTreeSet::new();
    for (dec, part) in &cases {
        let central = block_indicator_is_central(dec, part).unwrap();
        let same = set_of(&sim_classes(dec, part).unwrap()) == set_of(&approx_classes(dec, part).unwrap());
        assert_eq!(central, same);
        // independent commutation check
        let b0 = block_indicator(&dec.action, part);
        let direct = (0..dec.len()).all(|j| {
            let lj = dec.indicator(&[j]);
            group_convolve(&dec.action, &b0, &lj) == group_convolve(&dec.action, &lj, &b0)
        });
        assert_eq!(central, direct);
        seen.insert(central);
    }
    assert_eq!(seen.len(), 2, "fixtures cover both outcomes");
}

#[test]
fn sim_zero_class_is_the_block_of_the_base_point() {
    for (dec, part) in [simgroup(4), simgroup(6), wreath_fixture()] {
        let classes = sim_classes(&dec, &part).unwrap();
        let b0 = part.block_of(dec.action.base_point());
        let j0: Vec<usize> =
            (0..dec.len()).filter(|&j| dec.orbits[j].iter().all(|&p| part.block_of(p) == b0)).collect();
        assert_eq!(classes[0], j0);
    }
}

#[test]
fn crested_orbits_match_brute_force() {
    let fixtures = crested_fixtures();
    assert!(fixtures.len() >= 5);
    for (name, spec) in &fixtures {
        let dec = crested_orbits(spec).unwrap();
        assert!(dec.brute_force_checked, "{name}");
        let closed: Vec<Vec<usize>> = dec.orbits.iter().map(|o| o.points.clone()).collect();
        assert_eq!(closed, brute_force_orbits(spec).unwrap(), "{name}");
        assert_eq!(dec.orbits.len(), dec.predicted_count(), "{name}");
        let mut all: Vec<usize> = closed.concat();
        all.sort_unstable();
        assert_eq!(all, (0..spec.size()).collect::<Vec<_>>());
    }
}

#[test]
fn crested_degenerations() {
    let fixtures = crested_fixtures();
    let get = |n: &str| crested_orbits(&fixtures.iter().find(|f| f.0 == n).unwrap().1).unwrap();
    // direct product: every Ξ_i × Λ_j separately
    let dec = get("direct");
    let expected: BTreeSet<(usize, Vec<usize>)> = (0..2).flat_map(|i| (0..2).map(move |j| (i, vec![j]))).collect();
    let got: BTreeSet<(usize, Vec<usize>)> =
        dec.orbits.iter().map(|o| (o.outer_index, o.inner_indices.clone())).collect();
    assert_eq!(got, expected);
    // wreath: Λ_0 × Λ′_j, then Λ_i × Y′
    let dec = get("wreath");
    let got: BTreeSet<(usize, Vec<usize>)> =
        dec.orbits.iter().map(|o| (o.outer_index, o.inner_indices.clone())).collect();
    let expected: BTreeSet<(usize, Vec<usize>)> = [(0, vec![0]), (0, vec![1]), (1, vec![0, 1])].into_iter().collect();
    assert_eq!(got, expected);
}

#[test]
fn crested_spec_errors() {
    // N = ⟨(0 1)⟩ is not normal in S_3
    let spec = CrestedSpec {
        outer: s2(),
        outer_partition: InvariantPartition::universal(2),
        inner: s3(),
        normal_generators: vec![perm0(&[1, 0, 2])],
        inner_partition: None,
    };
    assert!(crested_orbits(&spec).is_err());
    // 𝒬 given but N is not transitive on its blocks
    let spec = CrestedSpec {
        outer: s2(),
        outer_partition: InvariantPartition::universal(2),
        inner: s3(),
        normal_generators: vec![],
        inner_partition: Some(InvariantPartition::universal(3)),
    };
    assert!(crested_orbits(&spec).is_err());
    // 𝒫 not invariant
    let spec = CrestedSpec {
        outer: d4(),
        outer_partition: partition(4, &[&[0, 1], &[2, 3]]),
        inner: s3(),
        normal_generators: vec![],
        inner_partition: None,
    };
    assert!(crested_orbits(&spec).is_err());
}

#[test]
fn composition_tables_match_orbit_counts() {
    for (name, spec) in crested_fixtures() {
        let dec = crested_orbits(&spec).unwrap();
        let t = composition_multiplicity_table(&composition_input(name, &dec)).unwrap();
        assert_eq!(t.sum_sq(), dec.orbits.len() as u128, "{name}");
        assert_eq!(t.total_dimension(), spec.size() as u128, "{name}");
    }
}

#[test]
fn wreath_and_iterated_tables() {
    let fixtures = crested_fixtures();
    let table = |n: &str| {
        let spec = &fixtures.iter().find(|f| f.0 == n).unwrap().1;
        composition_multiplicity_table(&composition_input(n, &crested_orbits(spec).unwrap())).unwrap()
    };
    // b_δ (W_δ ⊗ W′_0) and b′_δ (L(Y) ⊗ W′_δ)
    let t = table("wreath");
    let rows: Vec<(u64, u64)> = t.rows.iter().map(|r| (r.multiplicity, r.dimension)).collect();
    assert_eq!(rows, [(1, 1), (1, 2), (1, 6)]);
    // three blocks: a_ω b_δ, a′_ω b_δ for ω ≠ 0, a′_ω b′_δ for δ ≠ 0
    let t = table("iterated_wreath");
    let mut rows: Vec<(u64, u64)> = t.rows.iter().map(|r| (r.multiplicity, r.dimension)).collect();
    rows.sort_unstable();
    let mut expected = vec![(1, 1), (1, 1), (1, 1), (1, 1), (1, 2), (1, 2), (1, 8), (1, 8)];
    expected.sort_unstable();
    assert_eq!(rows, expected);
}

#[test]
fn inconsistent_composition_input() {
    let (name, spec) = crested_fixtures().into_iter().next().unwrap();
    let dec = crested_orbits(&spec).unwrap();
    let mut input = composition_input(name, &dec);
    input.outer[1].multiplicity = 2;
    assert!(composition_multiplicity_table(&input).is_err());
    let mut input = composition_input(name, &dec);
    input.j_sim_count = 1;
    assert!(composition_multiplicity_table(&input).is_err());
}

#[test]
fn spherical_products_are_orbit_constant() {
    let chain = ChainSpec::from_parts(&[2, 1, 1]).unwrap();
    let phi = spherical_phi(&chain, 2).unwrap();
    let outer = omega_action(&[2, 1, 1]);
    let dx = outer.degree();
    let spec = CrestedSpec {
        outer,
        outer_partition: InvariantPartition::universal(dx),
        inner: s2(),
        normal_generators: vec![],
        inner_partition: None,
    };
    let dec = crested_orbits(&spec).unwrap();
    let psi = vec![q(1), q(-1)];
    let zeros = vec![Q::zero(); dx];
    let t = crested_spherical_products(&dec, &spec, &phi.coeffs, &phi.coeffs, &psi, ProductCase::Delta0).unwrap();
    assert_eq!(t[0], q(1));
    for o in &dec.orbits {
        assert!(o.points.iter().all(|&p| t[p] == t[o.points[0]]));
    }
    let ones_x = vec![q(1); dx];
    let t = crested_spherical_products(&dec, &spec, &ones_x, &zeros, &[q(1), q(1)], ProductCase::Delta0).unwrap();
    assert!(t.iter().all(|v| *v == q(1)));
    // non-invariant φ
    let bad_phi: Vec<Q> = (0..dx).map(|x| q(x as i64)).collect();
    assert!(crested_spherical_products(&dec, &spec, &bad_phi, &zeros, &psi, ProductCase::Delta0).is_err());

    // θ̃ supported on A_0 = {x_0}
    let mut spec = spec;
    spec.outer_partition = InvariantPartition::equality(dx);
    let dec = crested_orbits(&spec).unwrap();
    let mut theta = zeros.clone();
    theta[0] = q(1);
    let t = crested_spherical_products(&dec, &spec, &phi.coeffs, &theta, &psi, ProductCase::Complement).unwrap();
    assert_eq!(t[0], q(1));
    assert_eq!(t[1], q(-1));
    assert!(t[2..].iter().all(|v| v.is_zero()));
    let mut bad = zeros;
    bad[1] = q(1);
    assert!(crested_spherical_products(&dec, &spec, &phi.coeffs, &bad, &psi, ProductCase::Complement).is_err());
}

#[test]
fn exponentiation_c2_for_s3() {
    let act = exponentiation_action(&s3(), &s2(), None).unwrap();
    assert_eq!(act.degree(), 9);
    assert_eq!(act.order().unwrap(), 72);
    assert_eq!(stabilizer_orbit_count(&act).unwrap(), 3);
    let t = expo_c2(&[row("triv", 1, 1), row("std", 1, 2)]).unwrap();
    let nonzero: Vec<(u64, u64)> = t.nonzero_rows().map(|r| (r.multiplicity, r.dimension)).collect();
    assert_eq!(nonzero, [(1, 1), (1, 4), (1, 4)]);
    assert_eq!(t.sum_sq(), 3);
}

#[test]
fn c2_rows_at_multiplicity_one() {
    let reps = [row("a", 1, 1), row("b", 1, 3), row("c", 1, 2)];
    let t = expo_c2(&reps).unwrap();
    for r in &t.rows {
        if r.label.ends_with(",+)") {
            assert_eq!(r.multiplicity, 1);
        } else if r.label.ends_with(",-)") {
            assert_eq!(r.multiplicity, 0);
        }
    }
}

#[test]
fn c2_tables_match_brute_force_for_permutation_modules() {
    for parts in [vec![1, 1, 1], vec![2, 1], vec![3, 1], vec![2, 2], vec![2, 1, 1]] {
        let c = Composition::new(&parts).unwrap();
        let reps: Vec<RepRow> =
            decompose_module(&c).unwrap().nonzero_rows().map(|r| row(&r.label, r.multiplicity, r.dimension)).collect();
        let t = expo_c2(&reps).unwrap();
        let act = exponentiation_action(&omega_action(&parts), &s2(), None).unwrap();
        assert_eq!(t.sum_sq(), stabilizer_orbit_count(&act).unwrap() as u128, "{parts:?}");
    }
}

#[test]
fn multiplicity_free_tables() {
    let (t, orbits) = expo_multiplicity_free(&[1, 2], &s2(), 1, None).unwrap();
    assert_eq!(orbits.len(), 3);
    let rows: Vec<(u64, u64)> = t.rows.iter().map(|r| (r.multiplicity, r.dimension)).collect();
    assert_eq!(rows, [(1, 1), (1, 4), (1, 4)]);

    for g in [s2(), s3(), d4()] {
        let (t, _) = expo_multiplicity_free(&[1, 2], &g, 1, None).unwrap();
        let act = exponentiation_action(&s3(), &g, None).unwrap();
        assert_eq!(t.sum_sq(), stabilizer_orbit_count(&act).unwrap() as u128);
    }
}

/// `η` rows for `Z = G` regular: `L(G)` restricted to `I` is `|G|/|I|`
/// copies of the regular representation of `I`.
fn regular_eta(orbits: &[homspec::schemes::expo::FunctionOrbit], g_order: usize) -> Vec<Vec<EtaRow>> {
    orbits
        .iter()
        .map(|o| {
            let k = (g_order / o.inertia.len()) as u64;
            let irreps: &[(&str, u64)] = match o.inertia.len() {
                1 => &[("triv", 1)],
                2 => &[("triv", 1), ("sgn", 1)],
                6 => &[("triv", 1), ("sgn", 1), ("std", 2)],
                other => panic!("no character table for an inertia group of order {other}"),
            };
            irreps.iter().map(|&(l, d)| EtaRow { label: l.into(), dimension: d, multiplicity: d * k }).collect()
        })
        .collect()
}

#[test]
fn multiplicity_free_with_regular_z() {
    for g in [s2(), s3()] {
        let order = g.order().unwrap();
        let orbits = function_orbits(2, &g).unwrap();
        let eta = regular_eta(&orbits, order);
        let (t, _) = expo_multiplicity_free(&[1, 2], &g, order, Some(&eta)).unwrap();
        let z = regular_action(&g).unwrap();
        let act = exponentiation_action(&s3(), &g, Some(&z)).unwrap();
        assert_eq!(t.total_dimension(), act.degree() as u128);
        assert_eq!(t.sum_sq(), stabilizer_orbit_count(&act).unwrap() as u128);
    }
    assert!(expo_multiplicity_free(&[1, 2], &s2(), 2, None).is_err());
}

#[test]
fn regular_representation_identity() {
    let (f, _) = pairs_action(3).unwrap();
    for g in [s2(), action(&[&[1, 2, 0]], 0)] {
        let (t, rows) = regular_representation_check(&[1, 1, 2], &g).unwrap();
        let order = g.order().unwrap();
        for r in &rows {
            let j: u64 = r.representative.iter().map(|&s| [1, 1, 2][s]).product();
            assert_eq!(r.multiplicity, r.induced_dimension);
            assert_eq!(r.induced_dimension, j * (order / r.inertia_order) as u64);
        }
        // L(F^X × G) is the regular representation of F ≀ G
        let z = regular_action(&g).unwrap();
        let act = exponentiation_action(&f, &g, Some(&z)).unwrap();
        let group_order = act.order().unwrap();
        assert_eq!(group_order, act.degree());
        assert_eq!(t.sum_sq(), stabilizer_orbit_count(&act).unwrap() as u128);
        assert_eq!(t.sum_sq(), group_order as u128);
    }
}

#[test]
fn general_rows_and_caps() {
    let rows = [row("x", 1, 1), row("y", 2, 4)];
    assert!(expo_general(&rows, 9).is_ok());
    assert!(matches!(expo_general(&rows, 10), Err(Error::ContractViolation(_))));
    let big = FiniteAction::from_images(11, &[(1..11).chain([0]).collect::<Vec<usize>>()], 0).unwrap();
    assert!(3usize.pow(11) > MAX_EXPO_POINTS);
    assert!(matches!(exponentiation_action(&s3(), &big, None), Err(Error::ResourceCap(_))));
    assert!(expo_c2(&[]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn crested_count_formula(idx in 0usize..7) {
        let (name, spec) = crested_fixtures().swap_remove(idx);
        let dec = crested_orbits(&spec).unwrap();
        let expected = dec.i0.len() * dec.inner.len() + (dec.outer.len() - dec.i0.len()) * dec.sim.len();
        prop_assert_eq!(dec.orbits.len(), expected, "{}", name);
        prop_assert!(dec.brute_force_checked);
    }

    #[test]
    fn suborbit_indicators_convolve_like_the_group(n in 4usize..=5, i in 0usize..7, j in 0usize..7) {
        let (dec, _) = simgroup(n);
        let (a, b) = (dec.indicator(&[i]), dec.indicator(&[j]));
        prop_assert_eq!(dec.convolve(&a, &b), group_convolve(&dec.action, &a, &b));
    }

    #[test]
    fn ideal_scalars_count_points(n in 4usize..=5, i in 0usize..7) {
        let (dec, part) = simgroup(n);
        let w = ideal_check(&dec, &part, Side::Right).unwrap();
        // total mass: |B_0| · |Λ_i| = m_i · |Λ_[i]|
        let class = w.classes.iter().find(|c| c.contains(&i)).unwrap();
        let size: usize = class.iter().map(|&j| dec.orbits[j].len()).sum();
        let m = w.scalars[i].clone().unwrap();
        prop_assert_eq!(q((n - 1) as i64 * dec.orbits[i].len() as i64), m * q(size as i64));
    }
}
