//! Orthogonal and unitary Weingarten functions, Gram matrices and the
//! pseudo-inverse oracle.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{
    big, factorial, format_rational, pairing_weight, PolyQ, RatFuncMatrix, RatFuncQ, RatMatrix, Rational,
};
use crate::pairings::{enumerate_pairings, loops, pair_coset_type, unitary_pairings, unitary_to_sn, PairPartition};
use crate::partitions::{dim_f, partitions_of, CharacterCache, Partition};
use crate::zonal::{schur_one_spec, zonal_one_spec, zonal_table};

/// Largest `n` for [`gram`] over `O(d)`.
pub const GRAM_CAP_ORTH: usize = 6;
/// Largest `n` for [`gram`] over `U(d)`.
pub const GRAM_CAP_UNIT: usize = 7;
/// Largest `n` for [`wg_matrix_oracle`] over `O(d)`.
pub const ORACLE_CAP_ORTH: usize = 5;
/// Largest `n` for [`wg_matrix_oracle`] over `U(d)`.
pub const ORACLE_CAP_UNIT: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Orthogonal,
    Unitary,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::Orthogonal => "orth",
            Group::Unitary => "unit",
        })
    }
}

impl FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "orth" | "orthogonal" | "o" => Ok(Group::Orthogonal),
            "unit" | "unitary" | "u" => Ok(Group::Unitary),
            _ => Err(Error::Parse(format!("unknown group {s:?}"))),
        }
    }
}

/// The dimension argument: an indeterminate `d`, or a fixed integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dim {
    Symbolic,
    Fixed(i64),
}

impl Dim {
    fn check(self) -> Result<Self> {
        match self {
            Dim::Fixed(d) if d < 1 => Err(Error::InvalidDimension(d)),
            _ => Ok(self),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WgExact {
    Symbolic(RatFuncQ),
    Fixed(Rational),
}

/// A Weingarten value together with what it is the value of.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WgValue {
    pub n: usize,
    pub group: Group,
    pub coset: Partition,
    pub dim: Dim,
    pub value: WgExact,
}

impl WgValue {
    pub fn symbolic(&self) -> Option<&RatFuncQ> {
        match &self.value {
            WgExact::Symbolic(r) => Some(r),
            WgExact::Fixed(_) => None,
        }
    }

    pub fn fixed(&self) -> Option<&Rational> {
        match &self.value {
            WgExact::Fixed(r) => Some(r),
            WgExact::Symbolic(_) => None,
        }
    }

    /// The value at integer `d`; symbolic values are substituted.
    pub fn at(&self, d: i64) -> Result<Rational> {
        match (&self.value, self.dim) {
            (WgExact::Symbolic(r), _) => r.eval_int(d),
            (WgExact::Fixed(x), Dim::Fixed(e)) if e == d => Ok(x.clone()),
            (WgExact::Fixed(_), _) => Err(Error::InvalidDimension(d)),
        }
    }
}

impl fmt::Display for WgValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            WgExact::Symbolic(r) => write!(f, "{r}"),
            WgExact::Fixed(x) => f.write_str(&format_rational(x)),
        }
    }
}

fn symbolic_cache() -> &'static Mutex<HashMap<(Group, Partition), RatFuncQ>> {
    static CACHE: OnceLock<Mutex<HashMap<(Group, Partition), RatFuncQ>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn cached_symbolic(group: Group, mu: &Partition, compute: impl FnOnce() -> Result<RatFuncQ>) -> Result<RatFuncQ> {
    let key = (group, mu.clone());
    if let Some(v) = symbolic_cache().lock().expect("wg cache poisoned").get(&key) {
        return Ok(v.clone());
    }
    let v = compute()?;
    symbolic_cache()
        .lock()
        .expect("wg cache poisoned")
        .insert(key, v.clone());
    Ok(v)
}

fn sum_ratfuncs(terms: Vec<RatFuncQ>) -> RatFuncQ {
    // pairwise tree keeps intermediate degrees small
    let mut terms = terms;
    while terms.len() > 1 {
        terms = terms
            .par_chunks(2)
            .map(|c| if c.len() == 2 { &c[0] + &c[1] } else { c[0].clone() })
            .collect();
    }
    terms.pop().unwrap_or_else(RatFuncQ::zero)
}

/// `Wg^{O(d)}(μ) = (2^n n!/(2n)!) Σ_{λ ⊢ n, ℓ(λ) ≤ d} f^{2λ} ω^λ_μ / Z_λ(1^d)`.
///
/// Symbolic mode sums over every `λ ⊢ n`; integer mode applies the cutoff.
pub fn wg_orth(mu: &Partition, dim: Dim) -> Result<WgValue> {
    let dim = dim.check()?;
    let n = mu.weight();
    let table = zonal_table(n)?;
    let col = table.index(mu).expect("mu is a partition of n");
    let weight = pairing_weight(n);
    let value = match dim {
        Dim::Symbolic => WgExact::Symbolic(cached_symbolic(Group::Orthogonal, mu, || {
            let terms = table
                .partitions()
                .iter()
                .enumerate()
                .filter(|(row, _)| !table.omega_at(*row, col).is_zero())
                .map(|(row, lambda)| {
                    let c = big(&table.dims()[row]) * table.omega_at(row, col) * &weight;
                    RatFuncQ::new(PolyQ::constant(c), zonal_one_spec(lambda))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(sum_ratfuncs(terms))
        })?),
        Dim::Fixed(d) => {
            let mut acc = Rational::zero();
            for (row, lambda) in table.partitions().iter().enumerate() {
                if lambda.len() as i64 > d {
                    continue;
                }
                acc += big(&table.dims()[row]) * table.omega_at(row, col) / zonal_one_spec(lambda).eval_int(d);
            }
            WgExact::Fixed(acc * weight)
        }
    };
    Ok(WgValue {
        n,
        group: Group::Orthogonal,
        coset: mu.clone(),
        dim,
        value,
    })
}

/// `Wg^{U(d)}(μ) = (n!)^{-2} Σ_{λ ⊢ n, ℓ(λ) ≤ d} (f^λ)² χ^λ(μ) / s_λ(1^d)`,
/// with `μ` the cycle type of the associated permutation in `S_n`.
pub fn wg_unit(mu: &Partition, dim: Dim) -> Result<WgValue> {
    let dim = dim.check()?;
    let n = mu.weight();
    let norm = big(&factorial(n)).pow(2);
    let terms = || -> Result<Vec<(Partition, Rational)>> {
        let mut chars = CharacterCache::new();
        partitions_of(n)
            .into_iter()
            .map(|lambda| {
                let f = big(&dim_f(&lambda));
                let chi = Rational::from_integer(chars.character(&lambda, mu)?);
                Ok((lambda, f.pow(2) * chi / &norm))
            })
            .collect()
    };
    let value = match dim {
        Dim::Symbolic => WgExact::Symbolic(cached_symbolic(Group::Unitary, mu, || {
            let parts = terms()?
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(lambda, c)| RatFuncQ::new(PolyQ::constant(c), schur_one_spec(&lambda)))
                .collect::<Result<Vec<_>>>()?;
            Ok(sum_ratfuncs(parts))
        })?),
        Dim::Fixed(d) => {
            let mut acc = Rational::zero();
            for (lambda, c) in terms()? {
                if lambda.len() as i64 <= d && !c.is_zero() {
                    acc += c / schur_one_spec(&lambda).eval_int(d);
                }
            }
            WgExact::Fixed(acc)
        }
    };
    Ok(WgValue {
        n,
        group: Group::Unitary,
        coset: mu.clone(),
        dim,
        value,
    })
}

/// `Wg` for the given group and coset type.
pub fn wg(group: Group, mu: &Partition, dim: Dim) -> Result<WgValue> {
    match group {
        Group::Orthogonal => wg_orth(mu, dim),
        Group::Unitary => wg_unit(mu, dim),
    }
}

/// The pairings indexing the matrices for `group`, in their frozen order.
pub fn index_pairings(n: usize, group: Group) -> Vec<PairPartition> {
    match group {
        Group::Orthogonal => enumerate_pairings(n),
        Group::Unitary => unitary_pairings(n),
    }
}

/// The coset type that determines the matrix entry at `(m, k)`: `Ξ(m⁻¹k)`
/// for `O(d)`, the cycle type of `σ_m⁻¹σ_k ∈ S_n` for `U(d)`.
pub fn entry_type(group: Group, m: &PairPartition, k: &PairPartition) -> Result<Partition> {
    match group {
        Group::Orthogonal => pair_coset_type(m, k),
        Group::Unitary => {
            let (a, b) = (unitary_to_sn(m)?, unitary_to_sn(k)?);
            Ok(a.inverse().compose(&b)?.cycle_type())
        }
    }
}

fn check_cap(what: &'static str, n: usize, cap: usize) -> Result<()> {
    if n == 0 || n > cap {
        return Err(Error::AboveCap { what, n, cap });
    }
    Ok(())
}

fn loop_matrix(n: usize, group: Group) -> Vec<Vec<usize>> {
    let idx = index_pairings(n, group);
    idx.par_iter()
        .map(|a| idx.iter().map(|b| loops(a, b).expect("same size")).collect())
        .collect()
}

/// `G(m, k) = d^{loop(m, k)}` over the pairings of [`index_pairings`].
pub fn gram(n: usize, group: Group, d: i64) -> Result<RatMatrix> {
    match group {
        Group::Orthogonal => check_cap("orthogonal Gram matrix", n, GRAM_CAP_ORTH)?,
        Group::Unitary => check_cap("unitary Gram matrix", n, GRAM_CAP_UNIT)?,
    }
    if d < 1 {
        return Err(Error::InvalidDimension(d));
    }
    let powers: Vec<Rational> = (0..=n as u32)
        .map(|k| Rational::from_integer(BigInt::from(d).pow(k)))
        .collect();
    let l = loop_matrix(n, group);
    Ok(RatMatrix::from_fn(l.len(), l.len(), |i, j| powers[l[i][j]].clone()))
}

/// The Gram matrix with `d` left symbolic.
pub fn gram_symbolic(n: usize, group: Group) -> Result<RatFuncMatrix> {
    match group {
        Group::Orthogonal => check_cap("orthogonal Gram matrix", n, GRAM_CAP_ORTH)?,
        Group::Unitary => check_cap("unitary Gram matrix", n, GRAM_CAP_UNIT)?,
    }
    let l = loop_matrix(n, group);
    let powers: Vec<RatFuncQ> = (0..=n as u32).map(|k| PolyQ::var().pow(k).into()).collect();
    Ok(RatFuncMatrix::from_fn(l.len(), l.len(), |i, j| powers[l[i][j]].clone()))
}

/// The exact Moore–Penrose pseudo-inverse of [`gram`].
pub fn wg_matrix_oracle(n: usize, group: Group, d: i64) -> Result<RatMatrix> {
    match group {
        Group::Orthogonal => check_cap("orthogonal pseudo-inverse", n, ORACLE_CAP_ORTH)?,
        Group::Unitary => check_cap("unitary pseudo-inverse", n, ORACLE_CAP_UNIT)?,
    }
    gram(n, group, d)?.pseudo_inverse()
}

/// Matrix entry `Wg(m, k)` from the character formula.
pub fn wg_entry_via_formula(group: Group, m: &PairPartition, k: &PairPartition, dim: Dim) -> Result<WgValue> {
    wg(group, &entry_type(group, m, k)?, dim)
}

fn entry_types(n: usize, group: Group) -> Vec<Vec<Partition>> {
    let idx = index_pairings(n, group);
    idx.par_iter()
        .map(|a| {
            idx.iter()
                .map(|b| entry_type(group, a, b).expect("same size"))
                .collect()
        })
        .collect()
}

/// The full Weingarten matrix at integer `d`, assembled from the formula.
pub fn wg_matrix_formula(n: usize, group: Group, d: i64) -> Result<RatMatrix> {
    let values: HashMap<Partition, Rational> = partitions_of(n)
        .into_iter()
        .map(|mu| {
            let v = wg(group, &mu, Dim::Fixed(d))?;
            Ok((mu, v.fixed().expect("fixed").clone()))
        })
        .collect::<Result<_>>()?;
    let types = entry_types(n, group);
    Ok(RatMatrix::from_fn(types.len(), types.len(), |i, j| {
        values[&types[i][j]].clone()
    }))
}

/// The full Weingarten matrix with `d` symbolic.
pub fn wg_matrix_symbolic(n: usize, group: Group) -> Result<RatFuncMatrix> {
    let values: HashMap<Partition, RatFuncQ> = partitions_of(n)
        .into_iter()
        .map(|mu| {
            let v = wg(group, &mu, Dim::Symbolic)?;
            Ok((mu, v.symbolic().expect("symbolic").clone()))
        })
        .collect::<Result<_>>()?;
    let types = entry_types(n, group);
    Ok(RatFuncMatrix::from_fn(types.len(), types.len(), |i, j| {
        values[&types[i][j]].clone()
    }))
}

/// All orthogonal Weingarten values of weight `n`, in [`partitions_of`] order.
pub fn orth_table(n: usize, dim: Dim) -> Result<Vec<WgValue>> {
    partitions_of(n).par_iter().map(|mu| wg_orth(mu, dim)).collect()
}

/// Outcome of the pseudo-inverse identities for a Gram matrix `G` and the
/// formula matrix `W`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GramIdentities {
    /// `G W G = G`
    pub gwg: bool,
    /// `W G W = W`
    pub wgw: bool,
    /// `G W = I`
    pub inverse: bool,
    /// `W` is symmetric
    pub symmetric: bool,
}

/// Checks the identities at integer `d`.
pub fn gram_identities(n: usize, group: Group, d: i64) -> Result<GramIdentities> {
    let g = gram(n, group, d)?;
    let w = wg_matrix_formula(n, group, d)?;
    let gw = g.mul(&w)?;
    Ok(GramIdentities {
        gwg: gw.mul(&g)? == g,
        wgw: w.mul(&g)?.mul(&w)? == w,
        inverse: gw == RatMatrix::identity(g.rows()),
        symmetric: w.is_symmetric(),
    })
}

/// Checks the identities with `d` symbolic.
pub fn gram_identities_symbolic(n: usize, group: Group) -> Result<GramIdentities> {
    let g = gram_symbolic(n, group)?;
    let w = wg_matrix_symbolic(n, group)?;
    let gw = g.mul(&w)?;
    let size = g.rows();
    Ok(GramIdentities {
        gwg: gw.mul(&g)? == g,
        wgw: w.mul(&g)?.mul(&w)? == w,
        inverse: gw == RatFuncMatrix::identity(size),
        symmetric: (0..size).all(|i| (0..size).all(|j| w[(i, j)] == w[(j, i)])),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn r(s: &str) -> RatFuncQ {
        s.parse().unwrap()
    }

    #[test]
    fn small_orthogonal_values() {
        assert_eq!(wg_orth(&p("1"), Dim::Symbolic).unwrap().symbolic().unwrap(), &r("1/d"));
        assert_eq!(
            wg_orth(&p("2"), Dim::Symbolic).unwrap().symbolic().unwrap(),
            &r("-1/(d(d+2)(d-1))")
        );
        assert_eq!(
            wg_orth(&p("1,1"), Dim::Symbolic).unwrap().symbolic().unwrap(),
            &r("(d+1)/(d(d+2)(d-1))")
        );
        assert_eq!(
            wg_orth(&p("2"), Dim::Symbolic).unwrap().to_string(),
            "(-1)/(d(d+2)(d-1))"
        );
    }

    #[test]
    fn d_equal_one_constant() {
        for n in 1..=5 {
            let c = pairing_weight(n).pow(2);
            for mu in partitions_of(n) {
                assert_eq!(wg_orth(&mu, Dim::Fixed(1)).unwrap().fixed().unwrap(), &c);
            }
        }
    }

    #[test]
    fn symbolic_and_fixed_agree_above_n() {
        for n in 1..=5 {
            for mu in partitions_of(n) {
                let s = wg_orth(&mu, Dim::Symbolic).unwrap();
                let u = wg_unit(&mu, Dim::Symbolic).unwrap();
                for d in n as i64..=n as i64 + 4 {
                    assert_eq!(&s.at(d).unwrap(), wg_orth(&mu, Dim::Fixed(d)).unwrap().fixed().unwrap());
                    assert_eq!(&u.at(d).unwrap(), wg_unit(&mu, Dim::Fixed(d)).unwrap().fixed().unwrap());
                }
            }
        }
    }

    #[test]
    fn small_unitary_values() {
        assert_eq!(wg_unit(&p("1"), Dim::Symbolic).unwrap().symbolic().unwrap(), &r("1/d"));
        assert_eq!(
            wg_unit(&p("2"), Dim::Symbolic).unwrap().symbolic().unwrap(),
            &r("-1/(d(d-1)(d+1))")
        );
        assert_eq!(
            wg_unit(&p("1,1"), Dim::Symbolic).unwrap().symbolic().unwrap(),
            &r("1/(d^2-1)")
        );
    }

    #[test]
    fn dimension_errors() {
        assert_eq!(wg_orth(&p("1"), Dim::Fixed(0)).unwrap_err(), Error::InvalidDimension(0));
        assert_eq!(
            wg_unit(&p("1"), Dim::Fixed(-2)).unwrap_err(),
            Error::InvalidDimension(-2)
        );
        assert!(gram(7, Group::Orthogonal, 3).is_err());
        assert!(wg_matrix_oracle(6, Group::Orthogonal, 3).is_err());
        assert!(gram(2, Group::Orthogonal, 0).is_err());
    }

    #[test]
    fn gram_shapes() {
        let g = gram(2, Group::Orthogonal, 5).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(g[(i, j)], if i == j { int(25) } else { int(5) });
            }
        }
        assert_eq!(gram(1, Group::Orthogonal, 4).unwrap()[(0, 0)], int(4));
        let u = gram(2, Group::Unitary, 3).unwrap();
        assert_eq!(
            u,
            RatMatrix::from_rows(vec![vec![int(9), int(3)], vec![int(3), int(9)]]).unwrap()
        );
    }

    #[test]
    fn oracle_small_cases() {
        let w = wg_matrix_oracle(2, Group::Orthogonal, 3).unwrap();
        assert_eq!(w[(0, 0)], rat(2, 15));
        assert_eq!(w[(0, 1)], rat(-1, 30));
        assert_eq!(wg_matrix_oracle(1, Group::Orthogonal, 7).unwrap()[(0, 0)], rat(1, 7));
        let w1 = wg_matrix_oracle(3, Group::Orthogonal, 1).unwrap();
        assert!((0..15).all(|i| (0..15).all(|j| w1[(i, j)] == rat(1, 225))));
    }

    #[test]
    fn formula_matches_oracle_small() {
        for group in [Group::Orthogonal, Group::Unitary] {
            for n in 1..=3 {
                for d in 1..=4 {
                    assert_eq!(
                        wg_matrix_formula(n, group, d).unwrap(),
                        wg_matrix_oracle(n, group, d).unwrap(),
                        "{group} n={n} d={d}"
                    );
                }
            }
        }
    }

    #[test]
    fn entries_by_pairing() {
        let a: PairPartition = "{1,2}{3,4}".parse().unwrap();
        let b: PairPartition = "{1,3}{2,4}".parse().unwrap();
        let same = wg_entry_via_formula(Group::Orthogonal, &a, &a, Dim::Symbolic).unwrap();
        assert_eq!(same.symbolic().unwrap(), &r("(d+1)/(d(d+2)(d-1))"));
        let diff = wg_entry_via_formula(Group::Orthogonal, &a, &b, Dim::Symbolic).unwrap();
        assert_eq!(diff.symbolic().unwrap(), &r("-1/(d(d+2)(d-1))"));
        assert!(wg_entry_via_formula(Group::Unitary, &a, &b, Dim::Symbolic).is_err());
    }

    #[test]
    fn identities_small() {
        for group in [Group::Orthogonal, Group::Unitary] {
            let s = gram_identities_symbolic(2, group).unwrap();
            assert!(s.gwg && s.wgw && s.inverse && s.symmetric);
        }
        let low = gram_identities(2, Group::Orthogonal, 1).unwrap();
        assert!(low.gwg && low.wgw && !low.inverse);
        let high = gram_identities(3, Group::Orthogonal, 3).unwrap();
        assert!(high.gwg && high.wgw && high.inverse);
    }

    #[test]
    fn group_parsing() {
        assert_eq!("orth".parse::<Group>().unwrap(), Group::Orthogonal);
        assert_eq!("Unitary".parse::<Group>().unwrap(), Group::Unitary);
        assert!("sp".parse::<Group>().is_err());
    }
}
