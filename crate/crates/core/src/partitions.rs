//! Integer partitions, hook lengths and irreducible characters of the
//! symmetric group.
//!
//! Partitions serialize as comma-separated part lists (`"2,1,1"`); the empty
//! partition serializes as the empty string.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::factorial;

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, sorting the parts and dropping zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(n)`; empty for `n = 0`.
    pub fn row(n: usize) -> Self {
        Partition::new(vec![n])
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `|λ|`
    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `ℓ(λ)`
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Multiplicity `m_i(λ)` of the part `i`.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }

    /// The partition with every part doubled, `2λ`.
    pub fn double(&self) -> Partition {
        Partition {
            parts: self.parts.iter().map(|p| 2 * p).collect(),
        }
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (1..=width)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// Cells `(i, j)` of the Young diagram, 1-based row and column.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p).map(move |j| (i + 1, j)))
    }

    /// Hook length of the cell `(i, j)` (1-based).
    pub fn hook(&self, i: usize, j: usize) -> usize {
        let arm = self.part(i - 1) - j;
        let leg = self.parts[i..].iter().filter(|&&p| p >= j).count();
        arm + leg + 1
    }

    /// Sign of a permutation with this cycle type: `(-1)^{|μ| - ℓ(μ)}`.
    pub fn sign(&self) -> i32 {
        if (self.weight() - self.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                match t.parse::<usize>() {
                    Ok(0) | Err(_) => Err(Error::Parse(format!("invalid part {t:?}"))),
                    Ok(p) => Ok(p),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("parts of {s:?} are not weakly decreasing")));
        }
        Ok(Partition { parts })
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n` in reverse-lexicographic order: `(n)` first, `(1^n)` last.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            prefix.push(p);
            go(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// `z_μ = ∏ i^{m_i} m_i!`, the order of the centralizer of a permutation of cycle type `μ`.
pub fn z_mu(mu: &Partition) -> BigUint {
    let mut z = BigUint::one();
    let mut k = 0;
    while k < mu.parts.len() {
        let part = mu.parts[k];
        let m = mu.parts[k..].iter().take_while(|&&p| p == part).count();
        z *= BigUint::from(part).pow(m as u32) * factorial(m);
        k += m;
    }
    z
}

/// Number of standard Young tableaux of shape `λ` (hook-length formula).
pub fn dim_f(lambda: &Partition) -> BigUint {
    let hooks: BigUint = lambda.cells().map(|(i, j)| BigUint::from(lambda.hook(i, j))).product();
    factorial(lambda.weight()) / hooks
}

/// `(2n)! / f^{2λ}` for `λ = (r, s, 1^{n-r-s})`, in closed product form.
pub fn hook_rsn(r: usize, s: usize, n: usize) -> Result<BigUint> {
    if s == 0 || r < s || r + s > n {
        return Err(Error::InvalidHookTriple { r, s, n });
    }
    let b = |x: usize| BigUint::from(x);
    let numer = b(n + r - s + 1)
        * b(n + r - s)
        * b(n - r + s)
        * b(n - r + s - 1)
        * factorial(n - r - s + 1)
        * factorial(n - r - s)
        * factorial(2 * s - 2)
        * factorial(2 * r - 1);
    let denom = b(2 * r - 2 * s + 1);
    debug_assert!((&numer % &denom).is_zero());
    Ok(numer / denom)
}

/// Memo table for Murnaghan–Nakayama, keyed by (shape, remaining cycle type).
///
/// Safe to share across characters of the same symmetric group and across
/// different class arguments.
#[derive(Default, Debug)]
pub struct CharacterCache {
    memo: HashMap<(Vec<usize>, Vec<usize>), BigInt>,
}

impl CharacterCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    /// `χ^λ(μ)`; see [`mn_character`].
    pub fn character(&mut self, lambda: &Partition, mu: &Partition) -> Result<BigInt> {
        if lambda.weight() != mu.weight() {
            return Err(Error::WeightMismatch {
                left: lambda.to_string(),
                left_weight: lambda.weight(),
                right: mu.to_string(),
                right_weight: mu.weight(),
            });
        }
        Ok(self.eval(&lambda.parts, &mu.parts))
    }

    fn eval(&mut self, shape: &[usize], cycles: &[usize]) -> BigInt {
        let Some((&r, rest)) = cycles.split_first() else {
            return BigInt::one();
        };
        if shape.len() <= 1 {
            // one-row shapes carry the trivial character
            return BigInt::one();
        }
        let key = (shape.to_vec(), cycles.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }

        // Border strips of length r correspond to moving a bead of the
        // beta-set down by r into an empty position.
        let len = shape.len();
        let beta: Vec<usize> = shape.iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
        let mut total = BigInt::zero();
        for (idx, &b) in beta.iter().enumerate() {
            if b < r || beta.contains(&(b - r)) {
                continue;
            }
            let target = b - r;
            let crossed = beta.iter().filter(|&&c| c > target && c < b).count();
            let mut moved = beta.clone();
            moved[idx] = target;
            moved.sort_unstable_by(|x, y| y.cmp(x));
            let smaller: Vec<usize> = moved
                .iter()
                .enumerate()
                .map(|(i, &c)| c - (len - 1 - i))
                .filter(|&p| p > 0)
                .collect();
            let value = self.eval(&smaller, rest);
            if crossed % 2 == 0 {
                total += value;
            } else {
                total -= value;
            }
        }
        self.memo.insert(key, total.clone());
        total
    }
}

/// Irreducible character `χ^λ` of `S_{|λ|}` on the class of cycle type `μ`.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    CharacterCache::new().character(lambda, mu)
}
