//! Pair partitions of `{1, …, 2n}`, their embedding in `S_{2n}`, coset types
//! and the hyperoctahedral group `H_n`.
//!
//! Pair partitions are stored canonically as the sequence `m(1), …, m(2n)`
//! with `m(2i-1) < m(2i)` and `m(1) < m(3) < …`, so equality is structural.
//! Text form is a block list such as `{1,2}{3,4}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Largest `n` for which `H_n` is enumerated.
pub const HYPEROCTAHEDRAL_CAP: usize = 7;

/// A permutation of `{1, …, m}`. Stored 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(m: usize) -> Self {
        Perm {
            images: (0..m).collect(),
        }
    }

    /// From 1-based images: `images[k-1] = σ(k)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        let mut out = Vec::with_capacity(m);
        for &x in images {
            if x == 0 || x > m || seen[x - 1] {
                return Err(Error::Parse(format!("{images:?} is not a permutation")));
            }
            seen[x - 1] = true;
            out.push(x - 1);
        }
        Ok(Perm { images: out })
    }

    /// From 1-based disjoint cycles on `{1, …, m}`.
    pub fn from_cycles(m: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=m).collect();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a == 0 || a > m || b == 0 || b > m {
                    return Err(Error::Parse(format!("cycle entry out of range 1..={m}")));
                }
                images[a - 1] = b;
            }
        }
        Perm::from_images(&images)
    }

    pub(crate) fn from_zero_based(images: Vec<usize>) -> Self {
        Perm { images }
    }

    pub(crate) fn raw(&self) -> &[usize] {
        &self.images
    }

    /// Number of points acted on.
    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// `σ(k)` for 1-based `k`.
    pub fn apply(&self, k: usize) -> usize {
        self.images[k - 1] + 1
    }

    /// 1-based image sequence.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch(self.size(), other.size()));
        }
        Ok(Perm {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        })
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Perm { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::new(cycle_lengths(&self.images))
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images())
    }
}

pub(crate) fn cycle_lengths(images: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; images.len()];
    let mut lengths = Vec::new();
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = images[x];
            len += 1;
        }
        lengths.push(len);
    }
    lengths
}

/// A perfect matching of `{1, …, 2n}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairPartition {
    /// 0-based canonical sequence.
    seq: Vec<usize>,
}

impl PairPartition {
    /// Canonicalizes an arbitrary list of 1-based blocks.
    pub fn from_blocks(blocks: &[(usize, usize)]) -> Result<Self> {
        let m = 2 * blocks.len();
        let mut seen = vec![false; m];
        let mut pairs = Vec::with_capacity(blocks.len());
        for &(a, b) in blocks {
            for x in [a, b] {
                if x == 0 || x > m || seen[x - 1] {
                    return Err(Error::Parse(format!("blocks {blocks:?} do not partition 1..={m}")));
                }
                seen[x - 1] = true;
            }
            pairs.push((a.min(b) - 1, a.max(b) - 1));
        }
        Ok(Self::from_pairs_zero_based(pairs))
    }

    pub(crate) fn from_pairs_zero_based(mut pairs: Vec<(usize, usize)>) -> Self {
        for p in pairs.iter_mut() {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
        }
        pairs.sort_unstable();
        PairPartition {
            seq: pairs.into_iter().flat_map(|(a, b)| [a, b]).collect(),
        }
    }

    /// The identity pairing `{1,2}{3,4}…{2n-1,2n}`.
    pub fn identity(n: usize) -> Self {
        PairPartition {
            seq: (0..2 * n).collect(),
        }
    }

    /// Number of blocks `n`.
    pub fn n(&self) -> usize {
        self.seq.len() / 2
    }

    /// 1-based canonical sequence `m(1), …, m(2n)`.
    pub fn sequence(&self) -> Vec<usize> {
        self.seq.iter().map(|x| x + 1).collect()
    }

    /// 1-based blocks in canonical order.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        self.seq.chunks(2).map(|c| (c[0] + 1, c[1] + 1)).collect()
    }

    #[cfg(test)]
    pub(crate) fn raw(&self) -> &[usize] {
        &self.seq
    }

    /// Partner of every point, 0-based.
    pub(crate) fn partner_map(&self) -> Vec<usize> {
        let mut partner = vec![0; self.seq.len()];
        for c in self.seq.chunks(2) {
            partner[c[0]] = c[1];
            partner[c[1]] = c[0];
        }
        partner
    }

    /// The permutation `k ↦ m(k)` in `S_{2n}`.
    pub fn to_perm(&self) -> Perm {
        Perm::from_zero_based(self.seq.clone())
    }
}

impl fmt::Display for PairPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in self.blocks() {
            write!(f, "{{{a},{b}}}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PairPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for PairPartition {
    type Err = Error;

    /// Accepts blocks in any order, e.g. `{3,4}{2,1}`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let err = || Error::Parse(format!("invalid pair partition {s:?}"));
        let mut blocks = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let inner = rest.strip_prefix('{').ok_or_else(err)?;
            let close = inner.find('}').ok_or_else(err)?;
            let (a, b) = inner[..close].split_once(',').ok_or_else(err)?;
            let a: usize = a.trim().parse().map_err(|_| err())?;
            let b: usize = b.trim().parse().map_err(|_| err())?;
            if a == b {
                return Err(err());
            }
            blocks.push((a, b));
            rest = inner[close + 1..].trim_start().trim_start_matches(',').trim_start();
        }
        if blocks.is_empty() {
            return Err(err());
        }
        PairPartition::from_blocks(&blocks)
    }
}

impl Serialize for PairPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PairPartition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// All `(2n-1)!!` pair partitions, lexicographic in the canonical sequence.
pub fn enumerate_pairings(n: usize) -> Vec<PairPartition> {
    fn go(free: &mut Vec<usize>, seq: &mut Vec<usize>, out: &mut Vec<PairPartition>) {
        if free.is_empty() {
            out.push(PairPartition { seq: seq.clone() });
            return;
        }
        let first = free.remove(0);
        for k in 0..free.len() {
            let partner = free.remove(k);
            seq.push(first);
            seq.push(partner);
            go(free, seq, out);
            seq.truncate(seq.len() - 2);
            free.insert(k, partner);
        }
        free.insert(0, first);
    }
    let mut out = Vec::new();
    go(&mut (0..2 * n).collect(), &mut Vec::with_capacity(2 * n), &mut out);
    out
}

/// Pair partitions of `2n` points that only join points with equal labels.
/// This is the set of `m` with `∏ δ(labels[m(2k-1)], labels[m(2k)]) = 1`.
pub fn matching_pairings(labels: &[usize]) -> Vec<PairPartition> {
    fn go(labels: &[usize], free: &mut Vec<usize>, seq: &mut Vec<usize>, out: &mut Vec<PairPartition>) {
        if free.is_empty() {
            out.push(PairPartition { seq: seq.clone() });
            return;
        }
        let first = free.remove(0);
        for k in 0..free.len() {
            if labels[free[k]] != labels[first] {
                continue;
            }
            let partner = free.remove(k);
            seq.push(first);
            seq.push(partner);
            go(labels, free, seq, out);
            seq.truncate(seq.len() - 2);
            free.insert(k, partner);
        }
        free.insert(0, first);
    }
    let mut out = Vec::new();
    if labels.len().is_multiple_of(2) {
        go(labels, &mut (0..labels.len()).collect(), &mut Vec::new(), &mut out);
    }
    out
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big;
        self.size[big] += self.size[small];
    }

    fn component_sizes(&mut self) -> Vec<usize> {
        let roots: Vec<usize> = (0..self.parent.len()).filter(|&x| self.find(x) == x).collect();
        roots.into_iter().map(|x| self.size[x]).collect()
    }
}

pub(crate) fn coset_type_raw(images: &[usize]) -> Partition {
    let m = images.len();
    let mut uf = UnionFind::new(m);
    for i in (0..m).step_by(2) {
        uf.union(i, i + 1);
        uf.union(images[i], images[i + 1]);
    }
    let halves = uf
        .component_sizes()
        .into_iter()
        .map(|s| {
            debug_assert!(s % 2 == 0, "components of the coset graph have even size");
            s / 2
        })
        .collect();
    Partition::new(halves)
}

/// Coset type `Ξ(σ)`: half the component sizes of the graph with edges
/// `{2i-1, 2i}` and `{σ(2i-1), σ(2i)}`.
pub fn coset_type(sigma: &Perm) -> Result<Partition> {
    if !sigma.size().is_multiple_of(2) {
        return Err(Error::OddDomain(sigma.size()));
    }
    Ok(coset_type_raw(sigma.raw()))
}

/// Coset type of `m⁻¹ n`, computed without forming the product.
pub fn pair_coset_type(m: &PairPartition, n: &PairPartition) -> Result<Partition> {
    if m.n() != n.n() {
        return Err(Error::SizeMismatch(m.n(), n.n()));
    }
    // Γ(m⁻¹n) is the image of Γ(m, n) under m⁻¹, so the component sizes agree.
    let mut uf = UnionFind::new(m.seq.len());
    for (a, b) in m.seq.chunks(2).zip(n.seq.chunks(2)) {
        uf.union(a[0], a[1]);
        uf.union(b[0], b[1]);
    }
    Ok(Partition::new(
        uf.component_sizes().into_iter().map(|s| s / 2).collect(),
    ))
}

/// Number of connected components (loops) of the union of both matchings.
pub fn loops(m: &PairPartition, n: &PairPartition) -> Result<usize> {
    if m.n() != n.n() {
        return Err(Error::SizeMismatch(m.n(), n.n()));
    }
    let (pm, pn) = (m.partner_map(), n.partner_map());
    let mut seen = vec![false; pm.len()];
    let mut count = 0;
    for start in 0..pm.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        // alternate m-edges and n-edges around the cycle
        let mut x = start;
        loop {
            seen[x] = true;
            let y = pm[x];
            seen[y] = true;
            x = pn[y];
            if x == start {
                break;
            }
        }
    }
    Ok(count)
}

/// `ρ_{2n}(σ) m = {{σ(m(1)), σ(m(2))}, …}`, re-canonicalized.
pub fn act(sigma: &Perm, m: &PairPartition) -> Result<PairPartition> {
    if sigma.size() != m.seq.len() {
        return Err(Error::SizeMismatch(sigma.size(), m.seq.len()));
    }
    let s = sigma.raw();
    let pairs = m.seq.chunks(2).map(|c| (s[c[0]], s[c[1]])).collect();
    Ok(PairPartition::from_pairs_zero_based(pairs))
}

/// Heap's algorithm over `0..n`.
pub(crate) fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = vec![a.clone()];
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out.sort();
    out
}

/// All `2^n n!` elements of the hyperoctahedral group `H_n ⊂ S_{2n}`, the
/// centralizer of `(1,2)(3,4)…(2n-1,2n)`.
///
/// Built as the wreath product: a permutation of the `n` blocks combined
/// with an optional flip inside each block.
pub fn enumerate_hyperoctahedral(n: usize) -> Result<Vec<Perm>> {
    if n > HYPEROCTAHEDRAL_CAP {
        return Err(Error::AboveCap {
            what: "hyperoctahedral enumeration",
            n,
            cap: HYPEROCTAHEDRAL_CAP,
        });
    }
    let mut out = Vec::with_capacity((1 << n) * (1..=n).product::<usize>());
    for block_perm in all_permutations(n) {
        for flips in 0u32..(1 << n) {
            out.push(Perm::from_zero_based(hyperoctahedral_element(&block_perm, flips)));
        }
    }
    Ok(out)
}

pub(crate) fn hyperoctahedral_element(block_perm: &[usize], flips: u32) -> Vec<usize> {
    let mut images = vec![0; 2 * block_perm.len()];
    for (i, &b) in block_perm.iter().enumerate() {
        let flip = (flips >> i) & 1 == 1;
        let (lo, hi) = (2 * b, 2 * b + 1);
        images[2 * i] = if flip { hi } else { lo };
        images[2 * i + 1] = if flip { lo } else { hi };
    }
    images
}

/// A pair `(m, n)` with `Ξ(m⁻¹ n) = ρ`: `m` is the identity pairing and `n`
/// chains the blocks of each part of `ρ` into one loop of length `2ρ_i`.
pub fn coset_rep_pair(rho: &Partition) -> (PairPartition, PairPartition) {
    let n = rho.weight();
    let mut pairs = Vec::with_capacity(n);
    let mut offset = 0;
    for &r in rho.parts() {
        if r == 1 {
            pairs.push((offset, offset + 1));
        } else {
            for k in 0..r - 1 {
                pairs.push((offset + 2 * k + 1, offset + 2 * k + 2));
            }
            pairs.push((offset, offset + 2 * r - 1));
        }
        offset += 2 * r;
    }
    (PairPartition::identity(n), PairPartition::from_pairs_zero_based(pairs))
}

/// The `n!` pairings joining `{1..n}` to `{n+1..2n}`, ordered like the
/// associated permutations of `S_n` (lexicographic).
pub fn unitary_pairings(n: usize) -> Vec<PairPartition> {
    all_permutations(n).iter().map(|p| unitary_from_sn(p)).collect()
}

pub(crate) fn unitary_from_sn(sigma: &[usize]) -> PairPartition {
    let n = sigma.len();
    PairPartition {
        seq: sigma.iter().enumerate().flat_map(|(i, &s)| [i, n + s]).collect(),
    }
}

/// The permutation `σ ∈ S_n` with `σ(i) = j` iff `m` links `i` and `n + j`.
pub fn unitary_to_sn(m: &PairPartition) -> Result<Perm> {
    let n = m.n();
    let mut images = vec![usize::MAX; n];
    for c in m.seq.chunks(2) {
        let (a, b) = (c[0], c[1]);
        if a >= n || b < n {
            return Err(Error::NotUnitary(m.to_string()));
        }
        images[a] = b - n;
    }
    Ok(Perm::from_zero_based(images))
}
