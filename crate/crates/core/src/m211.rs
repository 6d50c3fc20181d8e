//! Two five-block decompositions of the module of ordered pairs
//! `M^{n-2,1,1}`, and a report for two-office election data.
//!
//! Points of the module are ordered pairs `(i, j)` of distinct candidates.
//! The first decomposition splits `f` into its symmetric and antisymmetric
//! parts and refines each along the chain `(1,1,n-2)`; the second
//! conditions on the second coordinate first, following the chain
//! `(n-2,1,1)`.

use crate::algebra::{ModuleVector, RationalOperator};
use crate::error::{contract, invalid, Result};
use crate::gt::{gt_projector, gt_projector_on, index_of_pair, pair_of, symmetrize_projector, ChainSpec};
use crate::linalg::{Matrix, Q};
use crate::symmetric::{enumerate_omega, Composition, OmegaIndex, Partition};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::sync::Arc;

pub const LABEL_SYM_ANTISYM: &str = "sym-antisym";
pub const LABEL_LAST_COORDINATE: &str = "last-coordinate";

/// One block of a decomposition.
#[derive(Clone, Debug)]
pub struct Component {
    pub name: String,
    pub interpretation: String,
    pub projector: Arc<RationalOperator>,
    pub dimension: u64,
    pub vector: ModuleVector,
    pub norm_sq: Q,
}

#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub chain_label: String,
    pub components: Vec<Component>,
    pub input_norm_sq: Q,
}

impl DecompositionReport {
    pub fn component(&self, name: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.name == name)
    }
}

/// The projectors of both decompositions for a fixed `n`.
#[derive(Clone, Debug)]
pub struct M211Projectors {
    pub space: Arc<OmegaIndex>,
    pub mean: Arc<RationalOperator>,
    pub sym: Arc<RationalOperator>,
    pub antisym: Arc<RationalOperator>,
    pub e1_s: Arc<RationalOperator>,
    pub e1_a: Arc<RationalOperator>,
    pub p1: Arc<RationalOperator>,
    pub e1_1: Arc<RationalOperator>,
    pub e1_2: Arc<RationalOperator>,
    pub a_s22: Arc<RationalOperator>,
    pub a_s211: Arc<RationalOperator>,
    pub b_s22: Arc<RationalOperator>,
    pub b_s211: Arc<RationalOperator>,
}

pub fn pair_space(n: usize) -> Result<Arc<OmegaIndex>> {
    if n < 4 {
        return invalid(format!("the pair decompositions need n ≥ 4, got {n}"));
    }
    Ok(Arc::new(enumerate_omega(&Composition::new(&[n - 2, 1, 1])?)?))
}

/// Moves an operator on `Ω_{(1,1,n-2)}` to `Ω_{(n-2,1,1)}` through the
/// identification of both with ordered pairs.
fn transport_to_pairs(op: &RationalOperator, target: &Arc<OmegaIndex>) -> Result<RationalOperator> {
    let len = target.len();
    let map = (0..len)
        .map(|k| {
            let (i, j) = pair_of(&op.space, k)?;
            index_of_pair(target, i, j)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut m = Matrix::zeros(len, len);
    for r in 0..len {
        for c in 0..len {
            m.set(map[r], map[c], op.matrix.get(r, c).clone());
        }
    }
    RationalOperator::new(target.clone(), m)
}

impl M211Projectors {
    pub fn new(n: usize) -> Result<Self> {
        let space = pair_space(n)?;
        let len = space.len();
        let mean = RationalOperator::new(
            space.clone(),
            Matrix::from_fn(len, len, |_, _| Q::new(BigInt::one(), BigInt::from(len))),
        )?;
        let sym = symmetrize_projector(&Partition::new(&[2])?, n)?;
        let antisym = symmetrize_projector(&Partition::new(&[1, 1])?, n)?;

        let chain_a = ChainSpec::from_parts(&[1, 1, n - 2])?;
        let e1_a = transport_to_pairs(&gt_projector(&chain_a, 2)?, &space)?;
        let e1_s = transport_to_pairs(&gt_projector(&chain_a, 3)?, &space)?;
        let a_s22 = sym.sub(&e1_s).sub(&mean);
        let a_s211 = antisym.sub(&e1_a);

        let second: Vec<usize> = (0..len).map(|k| pair_of(&space, k).map(|p| p.1)).collect::<Result<_>>()?;
        let w = Q::new(BigInt::one(), BigInt::from(n - 1));
        let p1 = RationalOperator::new(
            space.clone(),
            Matrix::from_fn(len, len, |r, c| if second[r] == second[c] { w.clone() } else { Q::zero() }),
        )?;
        let e1_1 = p1.sub(&mean);
        let e1_2 = gt_projector_on(&ChainSpec::from_parts(&[n - 2, 1, 1])?, 2, space.clone())?;
        let rest = RationalOperator::identity(space.clone()).sub(&p1).sub(&e1_2);
        let b_s22 = rest.compose(&sym);
        let b_s211 = rest.compose(&antisym);

        Ok(M211Projectors {
            space,
            mean: Arc::new(mean),
            sym: Arc::new(sym),
            antisym: Arc::new(antisym),
            e1_s: Arc::new(e1_s),
            e1_a: Arc::new(e1_a),
            p1: Arc::new(p1),
            e1_1: Arc::new(e1_1),
            e1_2: Arc::new(e1_2),
            a_s22: Arc::new(a_s22),
            a_s211: Arc::new(a_s211),
            b_s22: Arc::new(b_s22),
            b_s211: Arc::new(b_s211),
        })
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    /// `(name, interpretation, projector)` for the first decomposition.
    pub fn chain_a(&self) -> Vec<(&'static str, &'static str, Arc<RationalOperator>)> {
        vec![
            ("mean", MEAN_TEXT, self.mean.clone()),
            ("S^{n-1,1}_S", "popularity of each candidate, regardless of office", self.e1_s.clone()),
            ("S^{n-2,2}", S22_TEXT, self.a_s22.clone()),
            (
                "S^{n-1,1}_A",
                "how strongly each candidate leans toward president rather than director",
                self.e1_a.clone(),
            ),
            ("S^{n-2,1,1}", S211_TEXT, self.a_s211.clone()),
        ]
    }

    /// `(name, interpretation, projector)` for the second decomposition.
    pub fn chain_b(&self) -> Vec<(&'static str, &'static str, Arc<RationalOperator>)> {
        vec![
            ("mean", MEAN_TEXT, self.mean.clone()),
            ("S^{n-1,1}_1", "centered average support of each candidate as director", self.e1_1.clone()),
            ("S^{n-1,1}_2", "additive president/director effects left after the director effect", self.e1_2.clone()),
            ("S^{n-2,2}", S22_TEXT, self.b_s22.clone()),
            ("S^{n-2,1,1}", S211_TEXT, self.b_s211.clone()),
        ]
    }
}

const MEAN_TEXT: &str = "average number of votes per ordered pair";
const S22_TEXT: &str = "support for two candidates together, beyond their individual popularity";
const S211_TEXT: &str = "support for a specific ordered ticket once every other effect is removed";

fn check_input(p: &M211Projectors, f: &ModuleVector) -> Result<()> {
    if f.space.composition() != p.space.composition() {
        return invalid(format!("expected a function on pairs of 1..{}, got one on {}", p.n(), f.space.composition()));
    }
    Ok(())
}

fn build_report(
    label: &str,
    blocks: Vec<(&'static str, &'static str, Arc<RationalOperator>)>,
    f: &ModuleVector,
) -> Result<DecompositionReport> {
    let input_norm_sq = f.norm_sq();
    let mut components = Vec::with_capacity(blocks.len());
    let mut sum = vec![Q::zero(); f.coeffs.len()];
    let mut energy = Q::zero();
    for (name, text, proj) in blocks {
        let vector = proj.apply(f);
        for (s, v) in sum.iter_mut().zip(&vector.coeffs) {
            *s += v;
        }
        let norm_sq = vector.norm_sq();
        energy += &norm_sq;
        components.push(Component {
            name: name.to_string(),
            interpretation: text.to_string(),
            dimension: proj.projector_rank()?,
            projector: proj,
            vector,
            norm_sq,
        });
    }
    if sum != f.coeffs {
        return contract(format!("{label}: components do not add up to the input"));
    }
    if energy != input_norm_sq {
        return contract(format!("{label}: component energies {energy} differ from ‖f‖² = {input_norm_sq}"));
    }
    Ok(DecompositionReport { chain_label: label.to_string(), components, input_norm_sq })
}

/// Symmetric/antisymmetric decomposition with precomputed projectors.
pub fn decompose_chain_a_with(p: &M211Projectors, f: &ModuleVector) -> Result<DecompositionReport> {
    check_input(p, f)?;
    build_report(LABEL_SYM_ANTISYM, p.chain_a(), f)
}

/// Last-coordinate decomposition with precomputed projectors.
pub fn decompose_chain_b_with(p: &M211Projectors, f: &ModuleVector) -> Result<DecompositionReport> {
    check_input(p, f)?;
    build_report(LABEL_LAST_COORDINATE, p.chain_b(), f)
}

/// Components `mean, S^{n-1,1}_S, S^{n-2,2}, S^{n-1,1}_A, S^{n-2,1,1}`.
pub fn decompose_chain_a(f: &ModuleVector) -> Result<DecompositionReport> {
    let p = M211Projectors::new(f.space.n())?;
    decompose_chain_a_with(&p, f)
}

/// Components `mean, S^{n-1,1}_1, S^{n-1,1}_2, S^{n-2,2}, S^{n-2,1,1}`.
pub fn decompose_chain_b(f: &ModuleVector) -> Result<DecompositionReport> {
    let p = M211Projectors::new(f.space.n())?;
    decompose_chain_b_with(&p, f)
}

/// One voter group: `count` ballots naming `president` and `director` (1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ballot {
    pub president: usize,
    pub director: usize,
    pub count: i64,
}

/// Tallies ballots into `f(i, j)`.
pub fn tally(n: usize, ballots: &[Ballot]) -> Result<ModuleVector> {
    let space = pair_space(n)?;
    let mut coeffs = vec![Q::zero(); space.len()];
    for (k, b) in ballots.iter().enumerate() {
        if b.count < 0 {
            return invalid(format!("ballot {}: negative count {}", k + 1, b.count));
        }
        if b.president == b.director {
            return invalid(format!("ballot {}: candidate {} named for both offices", k + 1, b.president));
        }
        if b.president == 0 || b.director == 0 || b.president > n || b.director > n {
            return invalid(format!("ballot {}: candidates must be in 1..{n}", k + 1));
        }
        let x = index_of_pair(&space, b.president, b.director)?;
        coeffs[x] += Q::from_integer(BigInt::from(b.count));
    }
    ModuleVector::new(space, coeffs)
}

/// An entry of a component: pair `(i, j)` and its value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairValue {
    pub president: usize,
    pub director: usize,
    pub value: Q,
}

/// The `k` entries of largest absolute value, ties broken by pair order.
pub fn top_entries(v: &ModuleVector, k: usize) -> Result<Vec<PairValue>> {
    let mut all = (0..v.coeffs.len())
        .map(|x| {
            let (i, j) = pair_of(&v.space, x)?;
            Ok(PairValue { president: i, director: j, value: v.coeffs[x].clone() })
        })
        .collect::<Result<Vec<_>>>()?;
    all.retain(|p| !p.value.is_zero());
    all.sort_by(|a, b| {
        b.value.abs().cmp(&a.value.abs()).then((a.president, a.director).cmp(&(b.president, b.director)))
    });
    all.truncate(k);
    Ok(all)
}

#[derive(Clone, Debug)]
pub struct ElectionReport {
    pub n: usize,
    pub total_votes: i64,
    pub tally: ModuleVector,
    pub chains: Vec<DecompositionReport>,
}

/// Both decompositions of the tallied ballots.
pub fn election_report(n: usize, ballots: &[Ballot]) -> Result<ElectionReport> {
    let f = tally(n, ballots)?;
    let p = M211Projectors::new(n)?;
    let chains = vec![decompose_chain_a_with(&p, &f)?, decompose_chain_b_with(&p, &f)?];
    Ok(ElectionReport { n, total_votes: ballots.iter().map(|b| b.count).sum(), tally: f, chains })
}
