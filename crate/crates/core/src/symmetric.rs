//! Permutations, compositions, partitions and the homogeneous spaces `Ω_a`.
//!
//! Points of `Ω_a` are ordered set partitions `(A_1, …, A_h)` of `{1..n}`
//! with `|A_i| = a_i`. Each point is encoded as the word `w` with
//! `w[p] = i` when point `p+1` lies in block `A_{i+1}`; `Ω_a` is listed in
//! lexicographic order of these words. The base point `A*` uses consecutive
//! intervals `A_1 = {1..a_1}`, `A_2 = {a_1+1..a_1+a_2}`, …, so it is always
//! the first point of the enumeration.
//!
//! Point labels in the public API are 1-based.

use crate::error::{invalid, Error, Result};
use std::cell::RefCell;
use std::collections::{HashMap, VecDeque};
use std::fmt;

/// Largest space (number of points) an [`OmegaIndex`] may hold.
pub const MAX_SPACE: usize = 5040;

/// Default cap on enumerated group elements; override with `HOMSPEC_MAX_GROUP`.
pub const DEFAULT_MAX_GROUP: usize = 1_000_000;

pub fn max_group() -> usize {
    std::env::var("HOMSPEC_MAX_GROUP").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_MAX_GROUP)
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub fn binomial(n: i64, k: i64) -> u128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// A permutation of `{1..n}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    img: Vec<usize>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images())
    }
}

impl Permutation {
    /// Builds a permutation from its 1-based image list.
    pub fn new(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut img = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return invalid(format!("{images:?} is not a permutation of 1..{n}"));
            }
            seen[x - 1] = true;
            img.push(x - 1);
        }
        Ok(Permutation { img })
    }

    pub(crate) fn from_zero_based(img: Vec<usize>) -> Self {
        debug_assert!({
            let mut s = img.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &x)| i == x)
        });
        Permutation { img }
    }

    pub fn identity(n: usize) -> Self {
        Permutation { img: (0..n).collect() }
    }

    /// The transposition `(i j)` of `{1..n}`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        Self::cycle(n, &[i, j])
    }

    /// The cycle `(c_1 c_2 … c_k)` of `{1..n}`.
    pub fn cycle(n: usize, points: &[usize]) -> Result<Self> {
        let mut img: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for &p in points {
            if p == 0 || p > n || seen[p - 1] {
                return invalid(format!("bad cycle {points:?} on 1..{n}"));
            }
            seen[p - 1] = true;
        }
        for (k, &p) in points.iter().enumerate() {
            img[p - 1] = points[(k + 1) % points.len()] - 1;
        }
        Ok(Permutation { img })
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    /// Image of the 1-based point `i`.
    pub fn image(&self, i: usize) -> usize {
        self.img[i - 1] + 1
    }

    pub(crate) fn image0(&self, i: usize) -> usize {
        self.img[i]
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.img.iter().map(|x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in compose");
        Permutation { img: other.img.iter().map(|&x| self.img[x]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.img.len()];
        for (i, &x) in self.img.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { img: inv }
    }

    pub fn cycle_type(&self) -> Partition {
        let n = self.img.len();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.img[x];
                len += 1;
            }
            parts.push(len);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn sign(&self) -> i64 {
        let ct = self.cycle_type();
        if (self.degree() - ct.parts.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// All permutations of `{1..n}` in lexicographic order of image lists.
pub fn all_permutations(n: usize) -> Result<Vec<Permutation>> {
    let count = factorial(n);
    if count > max_group() as u128 {
        return Err(Error::ResourceCap(format!("|S_{n}| = {count} exceeds the group cap {}", max_group())));
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation { img: cur.clone() });
        if !next_permutation(&mut cur) {
            break;
        }
    }
    Ok(out)
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Generators `(1 2)` and `(1 2 … n)` of the full symmetric group.
pub fn sn_generators(n: usize) -> Vec<Permutation> {
    if n < 2 {
        return Vec::new();
    }
    let cyc: Vec<usize> = (1..=n).collect();
    let mut gens = vec![Permutation::transposition(n, 1, 2).unwrap()];
    if n > 2 {
        gens.push(Permutation::cycle(n, &cyc).unwrap());
    }
    gens
}

/// Adjacent transpositions generating the Young subgroup `S_{a_1}×…×S_{a_h}`
/// that stabilizes the base point of `Ω_a`.
pub fn young_generators(a: &Composition) -> Vec<Permutation> {
    let n = a.n();
    let mut gens = Vec::new();
    let mut start = 1;
    for &p in a.parts() {
        for x in start..start + p - 1 {
            gens.push(Permutation::transposition(n, x, x + 1).unwrap());
        }
        start += p;
    }
    gens
}

/// A finite sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: &[usize]) -> Result<Self> {
        if parts.is_empty() {
            return invalid("a composition needs at least one part");
        }
        if parts.contains(&0) {
            return invalid(format!("composition {parts:?} has a zero part"));
        }
        Ok(Composition { parts: parts.to_vec() })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `n! / (a_1! … a_h!)`.
    pub fn multinomial(&self) -> u128 {
        let mut acc = 1u128;
        let mut total = 0usize;
        for &p in &self.parts {
            total += p;
            acc *= binomial(total as i64, p as i64);
        }
        acc
    }

    /// Parts sorted into a partition.
    pub fn sorted(&self) -> Partition {
        let mut parts = self.parts.clone();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Every composition of `n`, in lexicographic order.
    pub fn all(n: usize) -> Vec<Composition> {
        fn rec(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if rest == 0 {
                out.push(Composition { parts: cur.clone() });
                return;
            }
            for p in 1..=rest {
                cur.push(p);
                rec(rest - p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Accepts trailing zeros, which are dropped.
    pub fn new(parts: &[usize]) -> Result<Self> {
        let trimmed: Vec<usize> = parts.iter().copied().filter(|&p| p > 0).collect();
        if trimmed.len() != parts.iter().take_while(|&&p| p > 0).count() {
            return invalid(format!("{parts:?} has a zero before a positive part"));
        }
        if trimmed.windows(2).any(|w| w[0] < w[1]) {
            return invalid(format!("{parts:?} is not weakly decreasing"));
        }
        Ok(Partition { parts: trimmed })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Part `i` (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn to_composition(&self) -> Result<Composition> {
        Composition::new(&self.parts)
    }

    /// `z_μ = ∏ i^{m_i} m_i!`, the centralizer order of the class `μ`.
    pub fn z(&self) -> u128 {
        let mut counts: HashMap<usize, usize> = HashMap::new();
        for &p in &self.parts {
            *counts.entry(p).or_default() += 1;
        }
        counts.iter().map(|(&i, &m)| (i as u128).pow(m as u32) * factorial(m)).product()
    }

    /// Number of permutations of cycle type `self`.
    pub fn class_size(&self) -> u128 {
        factorial(self.n()) / self.z()
    }

    /// All partitions of `n`, in reverse lexicographic order (`(n)` first).
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// An ordered set partition `(A_1, …, A_h)` of `{1..n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedSetPartition {
    blocks: Vec<Vec<usize>>,
}

impl OrderedSetPartition {
    /// Blocks are 1-based point sets; each block must be nonempty.
    pub fn new(blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n: usize = blocks.iter().map(|b| b.len()).sum();
        let mut seen = vec![false; n];
        let mut sorted = Vec::with_capacity(blocks.len());
        for b in blocks {
            if b.is_empty() {
                return invalid("ordered set partition has an empty block");
            }
            for &p in &b {
                if p == 0 || p > n || seen[p - 1] {
                    return invalid(format!("point {p} repeated or outside 1..{n}"));
                }
                seen[p - 1] = true;
            }
            let mut b = b;
            b.sort_unstable();
            sorted.push(b);
        }
        Ok(OrderedSetPartition { blocks: sorted })
    }

    pub(crate) fn from_word(word: &[u8], h: usize) -> Self {
        let mut blocks = vec![Vec::new(); h];
        for (p, &b) in word.iter().enumerate() {
            blocks[b as usize].push(p + 1);
        }
        OrderedSetPartition { blocks }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).sum()
    }

    pub fn type_of(&self) -> Composition {
        Composition { parts: self.blocks.iter().map(|b| b.len()).collect() }
    }

    /// `w[p] = i` when point `p+1` lies in block `i`.
    pub fn word(&self) -> Vec<u8> {
        let mut w = vec![0u8; self.n()];
        for (i, b) in self.blocks.iter().enumerate() {
            for &p in b {
                w[p - 1] = i as u8;
            }
        }
        w
    }

    /// Block index (0-based) containing the 1-based point `p`.
    pub fn block_of(&self, p: usize) -> usize {
        self.blocks.iter().position(|b| b.contains(&p)).expect("point outside partition")
    }
}

/// The canonically ordered points of `Ω_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaIndex {
    composition: Composition,
    words: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

impl OmegaIndex {
    pub fn composition(&self) -> &Composition {
        &self.composition
    }

    pub fn n(&self) -> usize {
        self.composition.n()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn word(&self, k: usize) -> &[u8] {
        &self.words[k]
    }

    pub fn point(&self, k: usize) -> OrderedSetPartition {
        OrderedSetPartition::from_word(&self.words[k], self.composition.len())
    }

    pub fn points(&self) -> Vec<OrderedSetPartition> {
        (0..self.len()).map(|k| self.point(k)).collect()
    }

    pub fn index_of_word(&self, w: &[u8]) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn index_of(&self, a: &OrderedSetPartition) -> Option<usize> {
        if a.type_of() != self.composition {
            return None;
        }
        self.index_of_word(&a.word())
    }

    /// Index of the base point `A*` (always 0).
    pub fn base_index(&self) -> usize {
        0
    }

    /// Index of `σ·points[k]`.
    pub fn act_index(&self, sigma: &Permutation, k: usize) -> usize {
        let w = &self.words[k];
        let mut out = vec![0u8; w.len()];
        for (p, &b) in w.iter().enumerate() {
            out[sigma.image0(p)] = b;
        }
        self.index[&out]
    }

    /// The permutation of indices induced by `σ`: `perm[k] = index of σ·points[k]`.
    pub fn index_permutation(&self, sigma: &Permutation) -> Vec<usize> {
        (0..self.len()).map(|k| self.act_index(sigma, k)).collect()
    }

    /// The coset representative `σ_B` with `σ_B A* = B`: the k-th smallest
    /// point of `A*_i` goes to the k-th smallest point of `B_i`.
    pub fn coset_rep(&self, k: usize) -> Permutation {
        let w = &self.words[k];
        let h = self.composition.len();
        let mut targets: Vec<Vec<usize>> = vec![Vec::new(); h];
        for (p, &b) in w.iter().enumerate() {
            targets[b as usize].push(p);
        }
        let mut img = Vec::with_capacity(w.len());
        for t in targets {
            img.extend(t);
        }
        Permutation::from_zero_based(img)
    }
}

/// All points of `Ω_a` in canonical order.
pub fn enumerate_omega(a: &Composition) -> Result<OmegaIndex> {
    let size = a.multinomial();
    if size > MAX_SPACE as u128 {
        return Err(Error::ResourceCap(format!("|Ω_{a}| = {size} exceeds {MAX_SPACE} points")));
    }
    let h = a.len();
    let n = a.n();
    let mut remaining = a.parts().to_vec();
    let mut cur = Vec::with_capacity(n);
    let mut words = Vec::with_capacity(size as usize);
    fn rec(remaining: &mut [usize], cur: &mut Vec<u8>, n: usize, h: usize, out: &mut Vec<Vec<u8>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..h {
            if remaining[b] > 0 {
                remaining[b] -= 1;
                cur.push(b as u8);
                rec(remaining, cur, n, h, out);
                cur.pop();
                remaining[b] += 1;
            }
        }
    }
    rec(&mut remaining, &mut cur, n, h, &mut words);
    let index = words.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
    Ok(OmegaIndex { composition: a.clone(), words, index })
}

/// Blockwise image `σ·A`.
pub fn act(sigma: &Permutation, a: &OrderedSetPartition) -> Result<OrderedSetPartition> {
    if sigma.degree() != a.n() {
        return invalid(format!("permutation of degree {} acting on a partition of {}", sigma.degree(), a.n()));
    }
    let blocks = a
        .blocks
        .iter()
        .map(|b| {
            let mut nb: Vec<usize> = b.iter().map(|&p| sigma.image(p)).collect();
            nb.sort_unstable();
            nb
        })
        .collect();
    Ok(OrderedSetPartition { blocks })
}

/// Orbits of the group generated by `generators` on `space`, each sorted,
/// listed by minimal element.
pub fn subgroup_orbits(generators: &[Permutation], space: &OmegaIndex) -> Result<Vec<Vec<usize>>> {
    for g in generators {
        if g.degree() != space.n() {
            return invalid(format!("generator of degree {} on a space of degree {}", g.degree(), space.n()));
        }
    }
    let perms: Vec<Vec<usize>> = generators.iter().map(|g| space.index_permutation(g)).collect();
    Ok(orbits_of_index_perms(&perms, space.len()))
}

/// Orbits of index permutations on `0..len`, sorted by minimal element.
pub(crate) fn orbits_of_index_perms(perms: &[Vec<usize>], len: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; len];
    let mut orbits = Vec::new();
    for s in 0..len {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut orbit = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for p in perms {
                let y = p[x];
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                    queue.push_back(y);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits
}

type CharMemo = HashMap<(Vec<usize>, Vec<usize>), i64>;

thread_local! {
    static CHAR_MEMO: RefCell<CharMemo> = RefCell::new(HashMap::new());
}

/// `χ_λ` evaluated on the class of cycle type `μ` (Murnaghan–Nakayama).
pub fn sn_character(lambda: &Partition, cycle_type: &Partition) -> Result<i64> {
    if lambda.n() != cycle_type.n() {
        return invalid(format!("|λ| = {} but |μ| = {}", lambda.n(), cycle_type.n()));
    }
    Ok(mn(lambda.parts(), cycle_type.parts()))
}

fn mn(lambda: &[usize], mu: &[usize]) -> i64 {
    if mu.is_empty() {
        return 1;
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(v) = CHAR_MEMO.with(|m| m.borrow().get(&key).copied()) {
        return v;
    }
    let r = mu[0];
    let rest = &mu[1..];
    let l = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + l - 1 - i).collect();
    let mut total = 0i64;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > b - r && x < b).count();
        let mut nb = beta.clone();
        nb[idx] = b - r;
        nb.sort_unstable_by(|x, y| y.cmp(x));
        let new_lambda: Vec<usize> = nb.iter().enumerate().map(|(i, &x)| x - (l - 1 - i)).filter(|&p| p > 0).collect();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn(&new_lambda, rest);
    }
    CHAR_MEMO.with(|m| m.borrow_mut().insert(key, total));
    total
}

/// `dim S^λ` by the hook-length formula.
pub fn hook_dimension(lambda: &Partition) -> u64 {
    let parts = lambda.parts();
    let mut hooks: u128 = 1;
    for (i, &row) in parts.iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = parts[i + 1..].iter().filter(|&&r| r > j).count();
            hooks *= (arm + leg + 1) as u128;
        }
    }
    (factorial(lambda.n()) / hooks) as u64
}

/// Dominance `λ ⊵ μ`: every sum of the `k` largest parts of `μ` is at most
/// `λ_1 + … + λ_k`.
pub fn dominates(lambda: &Partition, mu: &Composition) -> bool {
    if lambda.n() != mu.n() {
        return false;
    }
    let sorted = mu.sorted();
    let (mut sl, mut sm) = (0usize, 0usize);
    for k in 0..sorted.len().max(lambda.len()) {
        sl += lambda.part(k);
        sm += sorted.part(k);
        if sl < sm {
            return false;
        }
    }
    true
}

/// Interlacing `λ_1 ≥ μ_1 ≥ λ_2 ≥ μ_2 ≥ …`, i.e. `λ/μ` is a horizontal strip.
pub fn interlaces(lambda: &Partition, mu: &Partition) -> bool {
    if mu.len() > lambda.len() || mu.n() > lambda.n() {
        return false;
    }
    (0..lambda.len()).all(|i| lambda.part(i) >= mu.part(i) && mu.part(i) >= lambda.part(i + 1))
}
