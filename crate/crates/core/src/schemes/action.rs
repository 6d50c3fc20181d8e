//! Permutation actions on `{0, …, degree−1}`, their suborbits, invariant
//! partitions and the relations `∼` and `≈` on suborbit indices.

use crate::error::{contract, invalid, Error, Result};
use crate::linalg::Q;
use crate::symmetric::{max_group, Permutation};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::{HashSet, VecDeque};
use std::sync::{Arc, OnceLock};

/// A group given by generators acting on `0..degree`.
#[derive(Clone, Debug)]
pub struct FiniteAction {
    degree: usize,
    generators: Vec<Permutation>,
    base_point: usize,
    elements: Arc<OnceLock<std::result::Result<Vec<Permutation>, String>>>,
}

impl PartialEq for FiniteAction {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.generators == other.generators && self.base_point == other.base_point
    }
}

impl FiniteAction {
    pub fn new(degree: usize, generators: Vec<Permutation>, base_point: usize) -> Result<Self> {
        if degree == 0 {
            return invalid("an action needs at least one point");
        }
        if base_point >= degree {
            return invalid(format!("base point {base_point} outside 0..{degree}"));
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return invalid(format!("generator of degree {} on {degree} points", g.degree()));
        }
        Ok(FiniteAction { degree, generators, base_point, elements: Arc::new(OnceLock::new()) })
    }

    /// Builds an action from 0-based image arrays.
    pub fn from_images(degree: usize, images: &[Vec<usize>], base_point: usize) -> Result<Self> {
        let gens = images
            .iter()
            .map(|img| {
                if img.len() != degree {
                    return invalid(format!("generator has {} images on {degree} points", img.len()));
                }
                Permutation::new(&img.iter().map(|x| x + 1).collect::<Vec<_>>())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(degree, gens, base_point)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base_point(&self) -> usize {
        self.base_point
    }

    pub fn with_base_point(&self, base_point: usize) -> Result<Self> {
        Self::new(self.degree, self.generators.clone(), base_point)
    }

    /// Every group element, found by breadth-first closure and capped by
    /// [`max_group`]. The result is computed once and shared by clones.
    pub fn elements(&self) -> Result<&[Permutation]> {
        let res = self.elements.get_or_init(|| {
            let cap = max_group();
            let id = Permutation::identity(self.degree);
            let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
            let mut out = vec![id.clone()];
            let mut queue = VecDeque::from([id]);
            while let Some(x) = queue.pop_front() {
                for g in &self.generators {
                    let y = g.compose(&x);
                    if seen.insert(y.clone()) {
                        if out.len() >= cap {
                            return Err(format!("group closure exceeds {cap} elements"));
                        }
                        out.push(y.clone());
                        queue.push_back(y);
                    }
                }
            }
            Ok(out)
        });
        res.as_deref().map_err(|e| Error::ResourceCap(e.clone()))
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.elements()?.len())
    }

    /// The orbit of `p` with a transversal: `u[y]` maps `p` to `y`.
    pub fn orbit_transversal(&self, p: usize) -> (Vec<usize>, Vec<Option<Permutation>>) {
        let mut trans: Vec<Option<Permutation>> = vec![None; self.degree];
        trans[p] = Some(Permutation::identity(self.degree));
        let mut orbit = vec![p];
        let mut k = 0;
        while k < orbit.len() {
            let y = orbit[k];
            let uy = trans[y].clone().expect("visited");
            for g in &self.generators {
                let z = g.image0(y);
                if trans[z].is_none() {
                    trans[z] = Some(g.compose(&uy));
                    orbit.push(z);
                }
            }
            k += 1;
        }
        (orbit, trans)
    }

    pub fn orbit(&self, p: usize) -> Vec<usize> {
        let mut o = self.orbit_transversal(p).0;
        o.sort_unstable();
        o
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit_transversal(self.base_point).0.len() == self.degree
    }

    /// Schreier generators of the stabilizer of `p`.
    pub fn stabilizer_generators(&self, p: usize) -> Vec<Permutation> {
        let (orbit, trans) = self.orbit_transversal(p);
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for &y in &orbit {
            let uy = trans[y].as_ref().expect("in orbit");
            for g in &self.generators {
                let z = g.image0(y);
                let uz = trans[z].as_ref().expect("in orbit");
                let s = uz.inverse().compose(&g.compose(uy));
                if !s.is_identity() && seen.insert(s.clone()) {
                    out.push(s);
                }
            }
        }
        out
    }

    /// Orbits of the group generated by `gens`, each sorted, ordered by
    /// smallest point.
    pub fn orbits_of(degree: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
        let perms: Vec<Vec<usize>> = gens.iter().map(|g| (0..degree).map(|x| g.image0(x)).collect()).collect();
        crate::symmetric::orbits_of_index_perms(&perms, degree)
    }
}

/// A partition of the points of an action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantPartition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl InvariantPartition {
    /// Blocks are sorted internally and ordered by smallest point.
    pub fn new(degree: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        if blocks.iter().any(|b| b.is_empty()) {
            return invalid("empty block in partition");
        }
        blocks.sort();
        let mut block_of = vec![usize::MAX; degree];
        for (k, b) in blocks.iter().enumerate() {
            for &p in b {
                if p >= degree {
                    return invalid(format!("point {p} outside 0..{degree}"));
                }
                if block_of[p] != usize::MAX {
                    return invalid(format!("point {p} appears in two blocks"));
                }
                block_of[p] = k;
            }
        }
        if let Some(p) = block_of.iter().position(|&b| b == usize::MAX) {
            return invalid(format!("point {p} is not covered by the partition"));
        }
        Ok(InvariantPartition { blocks, block_of })
    }

    pub fn equality(degree: usize) -> Self {
        Self::new(degree, (0..degree).map(|p| vec![p]).collect()).expect("singletons")
    }

    pub fn universal(degree: usize) -> Self {
        Self::new(degree, vec![(0..degree).collect()]).expect("one block")
    }

    pub fn from_orbits(action: &FiniteAction, gens: &[Permutation]) -> Self {
        Self::new(action.degree(), FiniteAction::orbits_of(action.degree(), gens)).expect("orbits partition")
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, p: usize) -> usize {
        self.block_of[p]
    }

    pub fn degree(&self) -> usize {
        self.block_of.len()
    }

    /// Whether every generator maps blocks onto blocks.
    pub fn is_invariant(&self, gens: &[Permutation]) -> bool {
        gens.iter().all(|g| {
            self.blocks.iter().all(|b| {
                let target = self.block_of[g.image0(b[0])];
                b.iter().all(|&p| self.block_of[g.image0(p)] == target)
            })
        })
    }
}

/// The orbits `Λ_j` of the stabilizer `H` of the base point.
#[derive(Clone, Debug)]
pub struct SuborbitDecomposition {
    pub action: FiniteAction,
    pub orbits: Vec<Vec<usize>>,
    orbit_of: Vec<usize>,
    transversal: Vec<Permutation>,
    pub stabilizer_generators: Vec<Permutation>,
}

/// `Λ_0 = {base}`, the remaining orbits ordered by size and then by
/// smallest point.
pub fn suborbits(action: &FiniteAction) -> Result<SuborbitDecomposition> {
    let (orbit, trans) = action.orbit_transversal(action.base_point());
    if orbit.len() != action.degree() {
        return invalid("the action is not transitive");
    }
    let stab = action.stabilizer_generators(action.base_point());
    let mut orbits = FiniteAction::orbits_of(action.degree(), &stab);
    let base = action.base_point();
    orbits.sort_by_key(|o| (o[0] != base, o.len(), o[0]));
    let mut orbit_of = vec![0; action.degree()];
    for (j, o) in orbits.iter().enumerate() {
        for &p in o {
            orbit_of[p] = j;
        }
    }
    let transversal = trans.into_iter().map(|t| t.expect("transitive")).collect();
    Ok(SuborbitDecomposition { action: action.clone(), orbits, orbit_of, transversal, stabilizer_generators: stab })
}

impl SuborbitDecomposition {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn orbit_of(&self, p: usize) -> usize {
        self.orbit_of[p]
    }

    /// `u_y` with `u_y y_0 = y`.
    pub fn transversal(&self, y: usize) -> &Permutation {
        &self.transversal[y]
    }

    /// Indicator of a union of suborbits.
    pub fn indicator(&self, indices: &[usize]) -> Vec<Q> {
        let one = Q::from_integer(BigInt::from(1));
        (0..self.action.degree())
            .map(|p| if indices.contains(&self.orbit_of[p]) { one.clone() } else { Q::zero() })
            .collect()
    }

    /// `(f1 * f2)(y) = Σ_z f1(z)·f2(u_z⁻¹ y)`; equal to the group
    /// convolution with weight `1/|H|` when `f2` is constant on suborbits.
    pub fn convolve(&self, f1: &[Q], f2: &[Q]) -> Vec<Q> {
        let d = self.action.degree();
        let mut out = vec![Q::zero(); d];
        for (z, a) in f1.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let inv = self.transversal[z].inverse();
            for (y, o) in out.iter_mut().enumerate() {
                let b = &f2[inv.image0(y)];
                if !b.is_zero() {
                    *o += a * b;
                }
            }
        }
        out
    }
}

fn check_partition(dec: &SuborbitDecomposition, q: &InvariantPartition) -> Result<()> {
    if q.degree() != dec.action.degree() {
        return invalid("partition and action have different degrees");
    }
    if !q.is_invariant(dec.action.generators()) {
        return invalid("the partition is not invariant under the acting group");
    }
    Ok(())
}

/// Classes of `∼`: `i ∼ j` when `Λ_i` and `Λ_j` lie in one orbit of the
/// stabilizer `S` of the block `B_0 ∋ y_0`. Classes are ordered by their
/// smallest index, so `[0]` comes first.
pub fn sim_classes(dec: &SuborbitDecomposition, q: &InvariantPartition) -> Result<Vec<Vec<usize>>> {
    check_partition(dec, q)?;
    let b0 = &q.blocks()[q.block_of(dec.action.base_point())];
    let mut gens = dec.stabilizer_generators.clone();
    gens.extend(b0.iter().map(|&z| dec.transversal(z).clone()).filter(|u| !u.is_identity()));
    let s_orbits = FiniteAction::orbits_of(dec.action.degree(), &gens);
    Ok(classes_from_groups(dec, s_orbits.iter().map(|o| o.as_slice())))
}

/// Classes of `≈`: the join of `𝒬` with the suborbit partition.
pub fn approx_classes(dec: &SuborbitDecomposition, q: &InvariantPartition) -> Result<Vec<Vec<usize>>> {
    check_partition(dec, q)?;
    let mut parent: Vec<usize> = (0..dec.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for b in q.blocks() {
        let first = dec.orbit_of(b[0]);
        for &p in &b[1..] {
            let (x, y) = (find(&mut parent, first), find(&mut parent, dec.orbit_of(p)));
            if x != y {
                parent[x.max(y)] = x.min(y);
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; dec.len()];
    for i in 0..dec.len() {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[r]].push(i);
    }
    Ok(classes)
}

fn classes_from_groups<'a>(dec: &SuborbitDecomposition, groups: impl Iterator<Item = &'a [usize]>) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = groups
        .map(|pts| {
            let mut c: Vec<usize> = pts.iter().map(|&p| dec.orbit_of(p)).collect();
            c.sort_unstable();
            c.dedup();
            c
        })
        .collect();
    classes.sort();
    classes
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

/// Result of an ideal check: for each suborbit `i`, the scalar `m_i`
/// (right: `1_{B_0} * 1_{Λ_i} = m_i 1_{Λ_[i]}`) or `M_i` (left:
/// `1_{Λ_i} * 1_{B_0} = M_i 1_{Λ_{i}}`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealWitness {
    pub side: Side,
    pub holds: bool,
    pub classes: Vec<Vec<usize>>,
    pub scalars: Vec<Option<Q>>,
}

/// Verifies the ideal identity by exact convolution.
pub fn ideal_check(dec: &SuborbitDecomposition, q: &InvariantPartition, side: Side) -> Result<IdealWitness> {
    let classes = match side {
        Side::Right => sim_classes(dec, q)?,
        Side::Left => approx_classes(dec, q)?,
    };
    let b0 = q.block_of(dec.action.base_point());
    let b0_ind: Vec<Q> = (0..dec.action.degree())
        .map(|p| if q.block_of(p) == b0 { Q::from_integer(BigInt::from(1)) } else { Q::zero() })
        .collect();
    let mut scalars = Vec::with_capacity(dec.len());
    for i in 0..dec.len() {
        let li = dec.indicator(&[i]);
        let c = match side {
            Side::Right => dec.convolve(&b0_ind, &li),
            Side::Left => dec.convolve(&li, &b0_ind),
        };
        let class = classes.iter().find(|c| c.contains(&i)).expect("every index has a class");
        scalars.push(scalar_multiple(dec, &c, class));
    }
    let holds = scalars.iter().all(|s| s.as_ref().is_some_and(|x| !x.is_zero()));
    Ok(IdealWitness { side, holds, classes, scalars })
}

/// `Some(m)` when `c = m·1_{∪_{j∈class} Λ_j}`.
fn scalar_multiple(dec: &SuborbitDecomposition, c: &[Q], class: &[usize]) -> Option<Q> {
    let mut m: Option<Q> = None;
    for (p, v) in c.iter().enumerate() {
        if class.contains(&dec.orbit_of(p)) {
            match &m {
                None => m = Some(v.clone()),
                Some(x) if x != v => return None,
                _ => {}
            }
        } else if !v.is_zero() {
            return None;
        }
    }
    m
}

/// Whether `1_{B_0}` commutes with every `1_{Λ_j}` under convolution.
pub fn block_indicator_is_central(dec: &SuborbitDecomposition, q: &InvariantPartition) -> Result<bool> {
    check_partition(dec, q)?;
    let b0 = q.block_of(dec.action.base_point());
    let b0_ind: Vec<Q> = (0..dec.action.degree())
        .map(|p| if q.block_of(p) == b0 { Q::from_integer(BigInt::from(1)) } else { Q::zero() })
        .collect();
    Ok((0..dec.len()).all(|j| {
        let lj = dec.indicator(&[j]);
        dec.convolve(&b0_ind, &lj) == dec.convolve(&lj, &b0_ind)
    }))
}

/// `S_n` on ordered pairs of distinct points, listed lexicographically,
/// with base point `(1, 2)`.
pub fn pairs_action(n: usize) -> Result<(FiniteAction, Vec<(usize, usize)>)> {
    if n < 2 {
        return invalid("pairs need n ≥ 2");
    }
    let pairs: Vec<(usize, usize)> =
        (1..=n).flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let index = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).expect("pair");
    let gens = crate::symmetric::sn_generators(n)
        .iter()
        .map(|g| {
            let img: Vec<usize> = pairs.iter().map(|&(i, j)| index(g.image(i), g.image(j)) + 1).collect();
            Permutation::new(&img)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((FiniteAction::new(pairs.len(), gens, 0)?, pairs))
}

/// The blocks `B_i = {(i, j)}` of the pair action.
pub fn first_coordinate_partition(pairs: &[(usize, usize)]) -> Result<InvariantPartition> {
    let n = pairs.iter().map(|p| p.0).max().unwrap_or(0);
    let blocks = (1..=n).map(|i| (0..pairs.len()).filter(|&k| pairs[k].0 == i).collect()).collect();
    InvariantPartition::new(pairs.len(), blocks)
}

/// Composition action of `F′ ≀ F` on `Y × Y′`, point `(y, y′)` at
/// `y·|Y′| + y′`, with the base point `(y_0, y′_0)`.
pub fn composition_action(outer: &FiniteAction, inner: &FiniteAction) -> Result<FiniteAction> {
    let (dy, dz) = (outer.degree(), inner.degree());
    let mut gens = Vec::new();
    for u in outer.generators() {
        gens.push(Permutation::from_zero_based((0..dy * dz).map(|p| u.image0(p / dz) * dz + p % dz).collect()));
    }
    for y in 0..dy {
        for f in inner.generators() {
            gens.push(Permutation::from_zero_based(
                (0..dy * dz).map(|p| if p / dz == y { y * dz + f.image0(p % dz) } else { p }).collect(),
            ));
        }
    }
    FiniteAction::new(dy * dz, gens, outer.base_point() * dz + inner.base_point())
}

/// The blocks `B_y = {y} × Y′` of a composition action.
pub fn fibre_partition(outer_degree: usize, inner_degree: usize) -> InvariantPartition {
    let blocks = (0..outer_degree).map(|y| (y * inner_degree..(y + 1) * inner_degree).collect()).collect();
    InvariantPartition::new(outer_degree * inner_degree, blocks).expect("fibres")
}

/// Asserts that `f` is constant on the suborbits of `dec`.
pub fn check_bi_invariant(dec: &SuborbitDecomposition, f: &[Q], what: &str) -> Result<()> {
    if f.len() != dec.action.degree() {
        return invalid(format!("{what}: table of length {} on {} points", f.len(), dec.action.degree()));
    }
    for o in &dec.orbits {
        if o.iter().any(|&p| f[p] != f[o[0]]) {
            return invalid(format!("{what} is not constant on the suborbit containing point {}", o[0]));
        }
    }
    Ok(())
}

pub(crate) fn require(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        contract(msg)
    }
}
