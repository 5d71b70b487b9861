//! Haar integrals of monomials, truncated-trace moments, the full-cycle
//! polynomials `P_n(d)` and leading asymptotics.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::{big, catalan, double_factorial, factorial, pairing_weight, PolyQ, RatFuncQ, Rational};
use crate::pairings::{enumerate_pairings, loops, matching_pairings, pair_coset_type, PairPartition};
use crate::partitions::{dim_f, hook_rsn, partitions_of, Partition};
use crate::weingarten::{entry_type, wg, wg_orth, Dim, Group, WgExact, WgValue};
use crate::zonal::{zonal_one_spec, ZONAL_CAP};

/// Largest `n` accepted by [`truncated_trace_bruteforce`].
pub const BRUTEFORCE_CAP: usize = 5;

/// A monomial `∏ g_{i_k j_k}` (with some factors conjugated in the unitary case).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialSpec {
    entries: Vec<(usize, usize)>,
    conjugated: Vec<bool>,
}

impl MonomialSpec {
    /// A monomial without conjugates. Indices are 1-based.
    pub fn new(entries: Vec<(usize, usize)>) -> Self {
        let conjugated = vec![false; entries.len()];
        MonomialSpec { entries, conjugated }
    }

    pub fn with_conjugates(entries: Vec<(usize, usize)>, conjugated: Vec<bool>) -> Result<Self> {
        if entries.len() != conjugated.len() {
            return Err(Error::SizeMismatch(entries.len(), conjugated.len()));
        }
        Ok(MonomialSpec { entries, conjugated })
    }

    /// `g_{ij}^power`.
    pub fn power(i: usize, j: usize, power: usize) -> Self {
        Self::new(vec![(i, j); power])
    }

    pub fn entries(&self) -> &[(usize, usize)] {
        &self.entries
    }

    pub fn conjugated(&self) -> &[bool] {
        &self.conjugated
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn has_conjugates(&self) -> bool {
        self.conjugated.iter().any(|&c| c)
    }

    fn check_indices(&self, d: i64) -> Result<()> {
        if d < 1 {
            return Err(Error::InvalidDimension(d));
        }
        for &(i, j) in &self.entries {
            for index in [i, j] {
                if index == 0 || index as i64 > d {
                    return Err(Error::IndexOutOfRange { index, d });
                }
            }
        }
        Ok(())
    }

    /// Factors sorted, plain ones first.
    fn canonical(&self) -> Vec<(bool, (usize, usize))> {
        let mut f: Vec<(bool, (usize, usize))> = self
            .conjugated
            .iter()
            .copied()
            .zip(self.entries.iter().copied())
            .collect();
        f.sort_unstable();
        f
    }
}

impl fmt::Display for MonomialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (&(i, j), &c)) in self.entries.iter().zip(&self.conjugated).enumerate() {
            if k > 0 {
                f.write_str(";")?;
            }
            write!(f, "{i},{j}{}", if c { "*" } else { "" })?;
        }
        Ok(())
    }
}

impl FromStr for MonomialSpec {
    type Err = Error;

    /// Semicolon-separated `i,j` pairs, a trailing `*` marking a conjugate:
    /// `1,1;2,2;1,1*;2,2*`.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse(format!("invalid monomial {s:?}"));
        let mut entries = Vec::new();
        let mut conjugated = Vec::new();
        for factor in s.split(';').map(str::trim).filter(|f| !f.is_empty()) {
            let (body, conj) = match factor.strip_suffix('*') {
                Some(b) => (b.trim(), true),
                None => (factor, false),
            };
            let (i, j) = body.split_once(',').ok_or_else(err)?;
            let i: usize = i.trim().parse().map_err(|_| err())?;
            let j: usize = j.trim().parse().map_err(|_| err())?;
            if i == 0 || j == 0 {
                return Err(err());
            }
            entries.push((i, j));
            conjugated.push(conj);
        }
        if entries.is_empty() {
            return Err(err());
        }
        Ok(MonomialSpec { entries, conjugated })
    }
}

impl Serialize for MonomialSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for MonomialSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

fn fixed_value(v: WgValue) -> Rational {
    match v.value {
        WgExact::Fixed(x) => x,
        WgExact::Symbolic(_) => unreachable!("fixed dimension requested"),
    }
}

/// `Σ_{m, k} Wg(m, k)` over the pairings matching the row and column labels.
fn pairing_double_sum(group: Group, rows: &[usize], cols: &[usize], d: i64) -> Result<Rational> {
    let keep = |m: &PairPartition| match group {
        Group::Orthogonal => true,
        Group::Unitary => {
            let n = m.n();
            m.blocks().iter().all(|&(a, b)| a <= n && b > n)
        }
    };
    let left: Vec<PairPartition> = matching_pairings(rows).into_iter().filter(keep).collect();
    let right: Vec<PairPartition> = matching_pairings(cols).into_iter().filter(keep).collect();
    if left.is_empty() || right.is_empty() {
        return Ok(Rational::zero());
    }
    let values: HashMap<Partition, Rational> = partitions_of(rows.len() / 2)
        .into_iter()
        .map(|mu| Ok((mu.clone(), fixed_value(wg(group, &mu, Dim::Fixed(d))?))))
        .collect::<Result<_>>()?;
    let partial: Vec<Rational> = left
        .par_iter()
        .map(|m| {
            let mut counts: HashMap<Partition, u64> = HashMap::new();
            for k in &right {
                *counts.entry(entry_type(group, m, k).expect("same size")).or_default() += 1;
            }
            counts
                .into_iter()
                .map(|(mu, c)| &values[&mu] * Rational::from_integer(c.into()))
                .fold(Rational::zero(), |a, b| a + b)
        })
        .collect();
    Ok(partial.into_iter().fold(Rational::zero(), |a, b| a + b))
}

/// `∫_{O(d)} ∏ g_{i_k j_k} dg`, exactly.
pub fn integrate_orth(spec: &MonomialSpec, d: i64) -> Result<Rational> {
    spec.check_indices(d)?;
    if spec.has_conjugates() {
        return Err(Error::Parse("conjugated factors in an orthogonal integrand".into()));
    }
    if spec.is_empty() {
        return Ok(Rational::one());
    }
    if spec.len() % 2 == 1 {
        return Ok(Rational::zero());
    }
    let n = spec.len() / 2;
    if n > ZONAL_CAP {
        return Err(Error::AboveCap {
            what: "orthogonal integration",
            n,
            cap: ZONAL_CAP,
        });
    }
    let factors = spec.canonical();
    let rows: Vec<usize> = factors.iter().map(|(_, (i, _))| *i).collect();
    let cols: Vec<usize> = factors.iter().map(|(_, (_, j))| *j).collect();
    pairing_double_sum(Group::Orthogonal, &rows, &cols, d)
}

/// `∫_{U(d)} g_{i_1 j_1} ⋯ g_{i_n j_n} conj(g_{i'_1 j'_1} ⋯ g_{i'_n j'_n}) dg`.
///
/// Factors may appear in any order; monomials with unequal numbers of plain
/// and conjugated factors integrate to zero.
pub fn integrate_unit(spec: &MonomialSpec, d: i64) -> Result<Rational> {
    spec.check_indices(d)?;
    let conj = spec.conjugated.iter().filter(|&&c| c).count();
    if 2 * conj != spec.len() {
        return Ok(Rational::zero());
    }
    if spec.is_empty() {
        return Ok(Rational::one());
    }
    let factors = spec.canonical();
    let rows: Vec<usize> = factors.iter().map(|(_, (i, _))| *i).collect();
    let cols: Vec<usize> = factors.iter().map(|(_, (_, j))| *j).collect();
    pairing_double_sum(Group::Unitary, &rows, &cols, d)
}

fn check_truncation(k: i64, d: i64) -> Result<()> {
    if d < 1 {
        return Err(Error::InvalidDimension(d));
    }
    if k < 1 {
        return Err(Error::InvalidDimension(k));
    }
    if k > d {
        return Err(Error::TruncationTooLarge { k, d });
    }
    Ok(())
}

/// `∫_{O(d)} (tr g^{(k)})^{2n} dg = Σ_{λ ⊢ n, ℓ(λ) ≤ k} f^{2λ} Z_λ(1^k) / Z_λ(1^d)`,
/// where `g^{(k)}` is the upper-left `k × k` corner.
pub fn truncated_trace_moment(n: usize, k: i64, d: i64) -> Result<Rational> {
    check_truncation(k, d)?;
    let mut acc = Rational::zero();
    for lambda in partitions_of(n) {
        if lambda.len() as i64 > k {
            continue;
        }
        let z = zonal_one_spec(&lambda);
        acc += big(&dim_f(&lambda.double())) * z.eval_int(k) / z.eval_int(d);
    }
    Ok(acc)
}

/// `∫_{O(d)} (tr g^{(k)})^p dg` for any `p`; odd powers vanish.
pub fn truncated_trace_power(p: usize, k: i64, d: i64) -> Result<Rational> {
    if p % 2 == 1 {
        check_truncation(k, d)?;
        return Ok(Rational::zero());
    }
    truncated_trace_moment(p / 2, k, d)
}

/// `Σ_{m, n} Wg^{O(d)}(m, n) k^{loop(m, n)}`, the trace of `Wg · G^{O(k)}`.
pub fn truncated_trace_bruteforce(n: usize, k: i64, d: i64) -> Result<Rational> {
    check_truncation(k, d)?;
    if n > BRUTEFORCE_CAP {
        return Err(Error::AboveCap {
            what: "brute-force truncated moment",
            n,
            cap: BRUTEFORCE_CAP,
        });
    }
    if n == 0 {
        return Ok(Rational::one());
    }
    let values: HashMap<Partition, Rational> = partitions_of(n)
        .into_iter()
        .map(|mu| Ok((mu.clone(), fixed_value(wg_orth(&mu, Dim::Fixed(d))?))))
        .collect::<Result<_>>()?;
    let powers: Vec<Rational> = (0..=n as u32)
        .map(|e| Rational::from_integer(BigInt::from(k).pow(e)))
        .collect();
    let all = enumerate_pairings(n);
    let partial: Vec<Rational> = all
        .par_iter()
        .map(|a| {
            all.iter()
                .map(|b| {
                    let mu = pair_coset_type(a, b).expect("same size");
                    &values[&mu] * &powers[loops(a, b).expect("same size")]
                })
                .fold(Rational::zero(), |x, y| x + y)
        })
        .collect();
    Ok(partial.into_iter().fold(Rational::zero(), |a, b| a + b))
}

/// `d ∏_{j=1}^{n-1} (d+2j)(d-j) ∏_{k=1}^{⌊n/2⌋-1} (d+2k-1)`.
pub fn full_cycle_denominator(n: usize) -> PolyQ {
    let mut den = PolyQ::var();
    for j in 1..n as i64 {
        den = &(&den * &PolyQ::linear(2 * j)) * &PolyQ::linear(-j);
    }
    for k in 1..(n / 2) as i64 {
        den = &den * &PolyQ::linear(2 * k - 1);
    }
    den
}

fn sign(n: usize) -> Rational {
    if n % 2 == 1 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `Wg^O((n), d)` symbolically, summing only over `λ ⊢ n` with `λ_3 ≤ 1`:
/// `((2n-1)!)^{-1} Σ f^{2λ} d^{-1} ∏_{(i,j) ≠ (1,1)} (2j-i-1)/(d+2j-i-1)`.
pub fn wg_orth_fullcycle(n: usize) -> RatFuncQ {
    if n == 0 {
        return RatFuncQ::one();
    }
    let prefactor = Rational::new(BigInt::one(), BigInt::from(factorial(2 * n - 1)));
    let terms: Vec<RatFuncQ> = partitions_of(n)
        .into_par_iter()
        .filter(|lambda| lambda.part(2) <= 1)
        .map(|lambda| {
            let mut coeff = big(&dim_f(&lambda.double())) * &prefactor;
            let mut den = PolyQ::var();
            for (i, j) in lambda.cells().filter(|&c| c != (1, 1)) {
                let shift = 2 * j as i64 - i as i64 - 1;
                coeff *= Rational::from_integer(shift.into());
                den = &den * &PolyQ::linear(shift);
            }
            RatFuncQ::new(PolyQ::constant(coeff), den).expect("non-zero denominator")
        })
        .collect();
    terms.iter().fold(RatFuncQ::zero(), |a, b| &a + b)
}

fn extract_full_cycle(n: usize, wg: &RatFuncQ) -> Result<PolyQ> {
    let scaled = &(wg * &RatFuncQ::from_poly(full_cycle_denominator(n))) * &RatFuncQ::constant(sign(n));
    scaled
        .as_poly()
        .ok_or_else(|| Error::NonPolynomial(format!("P_{n}: {scaled}")))
}

/// `P_n(d)`, defined by
/// `Wg^O((n), d) = (-1)^{n-1} P_n(d) / (d ∏_{j<n} (d+2j)(d-j) ∏_{k<⌊n/2⌋} (d+2k-1))`.
pub fn full_cycle_poly(n: usize) -> Result<PolyQ> {
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    extract_full_cycle(n, &wg_orth_fullcycle(n))
}

/// `P_n(d)` through the hook-length expansion over `λ = (r, s, 1^{n-r-s})`,
/// an independent route to [`full_cycle_poly`].
pub fn full_cycle_poly_via_hooks(n: usize) -> Result<PolyQ> {
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let ratio = |num: i64, shift: i64| {
        RatFuncQ::new(
            PolyQ::constant(Rational::from_integer(num.into())),
            PolyQ::linear(shift),
        )
        .expect("non-zero denominator")
    };
    let row_product = |r: usize| (2..=r as i64).fold(RatFuncQ::one(), |acc, j| &acc * &ratio(2 * j - 2, 2 * j - 2));
    let mut sum = row_product(n).scale(&Rational::new(BigInt::one(), BigInt::from(factorial(2 * n))));
    for r in 1..n {
        for s in 1..=r.min(n - r) {
            let mut term = row_product(r);
            for j in 1..=s as i64 {
                term = &term * &ratio(2 * j - 3, 2 * j - 3);
            }
            for i in 3..=(n - r - s + 2) as i64 {
                term = &term * &ratio(-(i - 1), -(i - 1));
            }
            let h = hook_rsn(r, s, n)?;
            sum = &sum + &term.scale(&Rational::new(BigInt::one(), BigInt::from(h)));
        }
    }
    let mut outside = full_cycle_denominator(n).scale(&(sign(n) * Rational::from_integer((2 * n).into())));
    // the leading factor d of the denominator is absorbed by the 1/d in every term
    outside = outside.div_exact(&PolyQ::var())?;
    let p = &RatFuncQ::from_poly(outside) * &sum;
    p.as_poly()
        .ok_or_else(|| Error::NonPolynomial(format!("P_{n} via hooks: {p}")))
}

/// `(n-4)!!` for odd `n ≥ 5`, `(n-3)!!` for even `n ≥ 4`, else 1.
fn constant_term_factor(n: usize) -> BigInt {
    let f = if n >= 5 && n % 2 == 1 {
        double_factorial(n - 4)
    } else if n >= 4 && n.is_multiple_of(2) {
        double_factorial(n - 3)
    } else {
        One::one()
    };
    BigInt::from(f)
}

/// `Σ_{λ ⊢ n, λ_3 ≤ 1} f^{2λ} · (n-1)!/(2n-1)!! · c(n)` with the parity factor above.
pub fn full_cycle_constant_formula(n: usize) -> Rational {
    let sum: BigInt = partitions_of(n)
        .into_iter()
        .filter(|l| l.part(2) <= 1)
        .map(|l| BigInt::from(dim_f(&l.double())))
        .sum();
    Rational::from_integer(sum * constant_term_factor(n)) * big(&factorial(n - 1)) * pairing_weight(n)
}

/// Outcome of checking degree, leading coefficient and constant term of `P_n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FullCycleReport {
    pub n: usize,
    #[serde(serialize_with = "ser_poly_coeffs")]
    pub poly: PolyQ,
    pub degree: usize,
    pub expected_degree: usize,
    #[serde(serialize_with = "ser_rational")]
    pub leading: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub catalan: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub constant: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub constant_formula: Rational,
}

fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::exactmath::format_rational(r))
}

fn ser_poly_coeffs<S: Serializer>(p: &PolyQ, s: S) -> std::result::Result<S::Ok, S::Error> {
    p.serialize(s)
}

impl FullCycleReport {
    pub fn degree_ok(&self) -> bool {
        self.degree == self.expected_degree
    }

    pub fn leading_ok(&self) -> bool {
        self.leading == self.catalan
    }

    pub fn constant_ok(&self) -> bool {
        self.constant == self.constant_formula
    }

    pub fn passed(&self) -> bool {
        self.degree_ok() && self.leading_ok() && self.constant_ok()
    }
}

/// Degree `⌊n/2⌋ - 1`, leading coefficient `c_{n-1}` and the constant-term
/// formula, for `n ≥ 2`.
pub fn full_cycle_properties(n: usize) -> Result<FullCycleReport> {
    if n < 2 {
        return Err(Error::InvalidDimension(n as i64));
    }
    let poly = full_cycle_poly(n)?;
    Ok(FullCycleReport {
        n,
        degree: poly.degree().unwrap_or(0),
        expected_degree: n / 2 - 1,
        leading: poly.leading().cloned().unwrap_or_else(Rational::zero),
        catalan: big(&catalan(n - 1)),
        constant: poly.coeff(0),
        constant_formula: full_cycle_constant_formula(n),
        poly,
    })
}

/// Whether every coefficient of `P_n` is a nonnegative integer, per `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjectureReport {
    pub rows: Vec<(usize, PolyQ, bool)>,
}

impl ConjectureReport {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.2)
    }
}

/// Evaluates the nonnegativity/integrality property for `n = 1..=n_max`.
pub fn conjecture_check(n_max: usize) -> Result<ConjectureReport> {
    let rows = (1..=n_max)
        .map(|n| {
            let p = full_cycle_poly(n)?;
            let ok = p.coeffs().iter().all(|c| c.is_integer() && !c.is_negative());
            Ok((n, p, ok))
        })
        .collect::<Result<_>>()?;
    Ok(ConjectureReport { rows })
}

/// Leading behaviour `Wg^O(μ, d) ~ C d^e` as `d → ∞`:
/// `C = ∏ (-1)^{μ_i - 1} c_{μ_i - 1}` and `e = -2n + ℓ(μ)`.
pub fn wg_asymptotic_leading(mu: &Partition) -> (BigInt, i64) {
    let mut c = BigInt::one();
    for &part in mu.parts() {
        let cat = BigInt::from(catalan(part - 1));
        c *= if part % 2 == 1 { cat } else { -cat };
    }
    (c, -2 * mu.weight() as i64 + mu.len() as i64)
}

/// `Wg^U((n), d) = (-1)^{n-1} c_{n-1} ∏_{-n < j < n} (d - j)^{-1}`.
pub fn wg_unit_fullcycle(n: usize, dim: Dim) -> Result<WgValue> {
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let c = sign(n) * big(&catalan(n - 1));
    let den: PolyQ = (-(n as i64) + 1..n as i64).map(|j| PolyQ::linear(-j)).product();
    let value = match dim {
        Dim::Symbolic => WgExact::Symbolic(RatFuncQ::new(PolyQ::constant(c), den)?),
        Dim::Fixed(d) if d < n as i64 => return Err(Error::DimensionTooSmall { d, min: n as i64 }),
        Dim::Fixed(d) => WgExact::Fixed(c / den.eval_int(d)),
    };
    Ok(WgValue {
        n,
        group: Group::Unitary,
        coset: Partition::row(n),
        dim,
        value,
    })
}

/// Lowest common multiple of denominators of `P_n`'s coefficients; 1 when
/// the polynomial has integer coefficients.
pub fn coefficient_denominator(p: &PolyQ) -> BigInt {
    p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}
