//! Zonal spherical functions `ω^λ` of the Gelfand pair `(S_{2n}, H_n)` and
//! the principal specializations `Z_λ(1^d)`, `s_λ(1^d)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactmath::{big, factorial, format_rational, pairing_count, pairing_weight, PolyQ, Rational};
use crate::pairings::{
    all_permutations, coset_rep_pair, cycle_lengths, enumerate_pairings, hyperoctahedral_element, pair_coset_type,
    HYPEROCTAHEDRAL_CAP,
};
use crate::partitions::{dim_f, partitions_of, CharacterCache, Partition};

/// Largest `n` for which [`zonal_table`] runs the character sum.
pub const ZONAL_CAP: usize = HYPEROCTAHEDRAL_CAP;

/// The values `ω^λ_ρ` for all `λ, ρ ⊢ n`, with `f^{2λ}` per row.
#[derive(Clone, Debug, PartialEq)]
pub struct ZonalTable {
    n: usize,
    partitions: Vec<Partition>,
    omega: Vec<Vec<Rational>>,
    dims: Vec<BigUint>,
}

impl ZonalTable {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Row and column labels, in [`partitions_of`] order.
    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn index(&self, lambda: &Partition) -> Option<usize> {
        self.partitions.iter().position(|p| p == lambda)
    }

    /// `ω^λ_ρ`, or `None` if either label is not a partition of `n`.
    pub fn omega(&self, lambda: &Partition, rho: &Partition) -> Option<&Rational> {
        Some(&self.omega[self.index(lambda)?][self.index(rho)?])
    }

    /// Entry by row and column index.
    pub fn omega_at(&self, row: usize, col: usize) -> &Rational {
        &self.omega[row][col]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.omega
    }

    /// `f^{2λ}` for each row.
    pub fn dims(&self) -> &[BigUint] {
        &self.dims
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "partitions": self.partitions.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "dims": self.dims.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            "omega": self.omega.iter()
                .map(|row| row.iter().map(format_rational).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

fn table_cache() -> &'static Mutex<HashMap<usize, Arc<ZonalTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<ZonalTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The zonal table for `n`, computed from the character sum
/// `ω^λ(σ) = (2^n n!)^{-1} Σ_{ζ ∈ H_n} χ^{2λ}(σζ)` and cached.
pub fn zonal_table(n: usize) -> Result<Arc<ZonalTable>> {
    if n == 0 || n > ZONAL_CAP {
        return Err(Error::AboveCap {
            what: "zonal table",
            n,
            cap: ZONAL_CAP,
        });
    }
    if let Some(t) = table_cache().lock().expect("zonal cache poisoned").get(&n) {
        return Ok(t.clone());
    }
    // built outside the lock: construction uses rayon and may be re-entered
    let table = Arc::new(build_table(n));
    let mut cache = table_cache().lock().expect("zonal cache poisoned");
    Ok(cache.entry(n).or_insert(table).clone())
}

/// Distribution of cycle types of `σζ` as `ζ` runs over `H_n`.
fn cycle_type_counts(sigma: &[usize]) -> HashMap<Vec<usize>, u64> {
    let n = sigma.len() / 2;
    all_permutations(n)
        .into_par_iter()
        .fold(HashMap::new, |mut acc: HashMap<Vec<usize>, u64>, block_perm| {
            let mut product = vec![0; 2 * n];
            for flips in 0u32..(1 << n) {
                let zeta = hyperoctahedral_element(&block_perm, flips);
                for (x, z) in zeta.iter().enumerate() {
                    product[x] = sigma[*z];
                }
                let mut lengths = cycle_lengths(&product);
                lengths.sort_unstable_by(|a, b| b.cmp(a));
                *acc.entry(lengths).or_default() += 1;
            }
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        })
}

fn build_table(n: usize) -> ZonalTable {
    let partitions = partitions_of(n);
    let order = big(&(BigUint::from(1u32 << n) * factorial(n)));
    let counts: Vec<Vec<(Partition, u64)>> = partitions
        .par_iter()
        .map(|rho| {
            let (m, k) = coset_rep_pair(rho);
            let sigma = m.to_perm().inverse().compose(&k.to_perm()).expect("same size");
            let mut c: Vec<(Partition, u64)> = cycle_type_counts(sigma.raw())
                .into_iter()
                .map(|(t, c)| (Partition::new(t), c))
                .collect();
            c.sort();
            c
        })
        .collect();

    let mut chars = CharacterCache::new();
    let mut omega = Vec::with_capacity(partitions.len());
    for lambda in &partitions {
        let shape = lambda.double();
        let row = counts
            .iter()
            .map(|per_rho| {
                let mut sum = BigInt::zero();
                for (t, c) in per_rho {
                    sum += chars.character(&shape, t).expect("weights agree") * BigInt::from(*c);
                }
                Rational::from_integer(sum) / &order
            })
            .collect();
        omega.push(row);
    }
    let dims = partitions.iter().map(|l| dim_f(&l.double())).collect();
    ZonalTable {
        n,
        partitions,
        omega,
        dims,
    }
}

/// `ω^λ_{(n)}` in closed form:
/// `(2^{n-1}(n-1)!)^{-1} ∏_{(i,j) ∈ λ, (i,j) ≠ (1,1)} (2j - i - 1)`.
///
/// Vanishes exactly when `λ` contains the cell `(3, 2)`.
pub fn zonal_fullcycle(lambda: &Partition) -> Rational {
    let n = lambda.weight();
    if n == 0 {
        return Rational::one();
    }
    let numer: BigInt = lambda
        .cells()
        .filter(|&c| c != (1, 1))
        .map(|(i, j)| BigInt::from(2 * j as i64 - i as i64 - 1))
        .product();
    let denom = BigUint::from(2u32).pow(n as u32 - 1) * factorial(n - 1);
    Rational::new(numer, BigInt::from(denom))
}

/// `Z_λ(1^d) = ∏_{(i,j) ∈ λ} (d + 2j - i - 1)` as a polynomial in `d`.
pub fn zonal_one_spec(lambda: &Partition) -> PolyQ {
    lambda
        .cells()
        .map(|(i, j)| PolyQ::linear(2 * j as i64 - i as i64 - 1))
        .product()
}

/// `s_λ(1^d) = ∏_{(i,j) ∈ λ} (d + j - i) / h(i,j)`.
pub fn schur_one_spec(lambda: &Partition) -> PolyQ {
    let hooks: BigInt = lambda.cells().map(|(i, j)| BigInt::from(lambda.hook(i, j))).product();
    let contents: PolyQ = lambda
        .cells()
        .map(|(i, j)| PolyQ::linear(j as i64 - i as i64))
        .product();
    contents.scale(&Rational::new(BigInt::one(), hooks))
}

/// First failing instance of the power expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionFailure {
    pub mu: Partition,
    pub d: i64,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionReport {
    pub n: usize,
    pub checked: usize,
    pub failure: Option<ExpansionFailure>,
}

impl ExpansionReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks `d^{ℓ(μ)} = (2^n n!/(2n)!) Σ_{λ ⊢ n, ℓ(λ) ≤ d} f^{2λ} ω^λ_μ Z_λ(1^d)`
/// for every `μ ⊢ n` and every supplied `d ≥ 1`.
pub fn power_expansion_check(n: usize, d_values: &[i64]) -> Result<ExpansionReport> {
    let table = zonal_table(n)?;
    let weight = pairing_weight(n);
    let specs: Vec<PolyQ> = table.partitions().iter().map(zonal_one_spec).collect();
    let mut checked = 0;
    for &d in d_values {
        if d < 1 {
            return Err(Error::InvalidDimension(d));
        }
        for (col, mu) in table.partitions().iter().enumerate() {
            let mut rhs = Rational::zero();
            for (row, lambda) in table.partitions().iter().enumerate() {
                if lambda.len() as i64 > d {
                    continue;
                }
                rhs += big(&table.dims()[row]) * table.omega_at(row, col) * specs[row].eval_int(d);
            }
            rhs *= &weight;
            let lhs = Rational::from_integer(BigInt::from(d).pow(mu.len() as u32));
            checked += 1;
            if lhs != rhs {
                return Ok(ExpansionReport {
                    n,
                    checked,
                    failure: Some(ExpansionFailure {
                        mu: mu.clone(),
                        d,
                        lhs,
                        rhs,
                    }),
                });
            }
        }
    }
    Ok(ExpansionReport {
        n,
        checked,
        failure: None,
    })
}

/// Result of checking
/// `Σ_{m,k} ω^λ(m⁻¹k) ω^μ(m⁻¹k) = ((2n)!/(2^n n!))² δ_{λμ} / f^{2λ}`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthogonalityReport {
    pub n: usize,
    pub checked: usize,
    /// `(λ, μ, sum, expected)` for every failing pair.
    pub failures: Vec<(Partition, Partition, Rational, Rational)>,
}

impl OrthogonalityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The orthogonality of zonal spherical functions summed over all pairs of
/// pair partitions.
pub fn pairing_orthogonality(n: usize) -> Result<OrthogonalityReport> {
    let table = zonal_table(n)?;
    let all = enumerate_pairings(n);
    let counts: HashMap<Partition, u64> = all
        .par_iter()
        .fold(HashMap::new, |mut acc: HashMap<Partition, u64>, a| {
            for b in &all {
                *acc.entry(pair_coset_type(a, b).expect("same size")).or_default() += 1;
            }
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });
    let total = big(&pairing_count(n)).pow(2);
    let k = table.partitions().len();
    let mut failures = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let sum: Rational = table
                .partitions()
                .iter()
                .enumerate()
                .map(|(c, rho)| {
                    let count = Rational::from_integer(BigInt::from(counts.get(rho).copied().unwrap_or(0)));
                    count * table.omega_at(i, c) * table.omega_at(j, c)
                })
                .sum();
            let expected = if i == j {
                &total / big(&table.dims()[i])
            } else {
                Rational::zero()
            };
            if sum != expected {
                failures.push((
                    table.partitions()[i].clone(),
                    table.partitions()[j].clone(),
                    sum,
                    expected,
                ));
            }
        }
    }
    Ok(OrthogonalityReport {
        n,
        checked: k * k,
        failures,
    })
}
