//! Haar sampling on `O(d)` and `U(d)` and Monte Carlo estimates of monomial
//! integrals.
//!
//! Samples come from the QR decomposition of a Gaussian matrix, with the
//! columns of `Q` rotated by the phases of `R`'s diagonal. Randomness is
//! ChaCha8: sample chunk `c` of a run with master seed `s` uses the stream
//! `c` of the generator seeded by `s`, so results do not depend on the
//! number of threads.

use num_complex::{Complex64, ComplexFloat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::moments::MonomialSpec;
use crate::weingarten::Group;

/// Samples drawn per generator stream.
pub const CHUNK: usize = 10_000;

/// Square matrix of floats, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatMatrix<T> {
    d: usize,
    data: Vec<T>,
}

impl<T: Copy> FloatMatrix<T> {
    pub fn dim(&self) -> usize {
        self.d
    }

    /// Entry `(i, j)`, 0-based.
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.d + j]
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }
}

impl<T: ComplexFloat<Real = f64>> FloatMatrix<T> {
    /// `max |(M^* M - I)_{ij}|`.
    pub fn unitarity_residual(&self) -> f64 {
        let d = self.d;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let mut s = T::zero();
                for k in 0..d {
                    s = s + self.get(k, i).conj() * self.get(k, j);
                }
                if i == j {
                    s = s - T::one();
                }
                worst = worst.max(s.abs());
            }
        }
        worst
    }
}

trait Gaussian: Sized {
    fn gaussian<R: Rng>(rng: &mut R) -> Self;
}

impl Gaussian for f64 {
    fn gaussian<R: Rng>(rng: &mut R) -> Self {
        rng.sample(StandardNormal)
    }
}

impl Gaussian for Complex64 {
    fn gaussian<R: Rng>(rng: &mut R) -> Self {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }
}

/// `x / |x|`, or 1 for `x = 0`.
fn phase<T: ComplexFloat<Real = f64> + From<f64>>(x: T) -> T {
    let a = x.abs();
    if a == 0.0 {
        T::one()
    } else {
        x / <T as From<f64>>::from(a)
    }
}

fn haar<T, R>(d: usize, rng: &mut R) -> FloatMatrix<T>
where
    T: ComplexFloat<Real = f64> + From<f64> + Gaussian,
    R: Rng,
{
    let mut a: Vec<T> = (0..d * d).map(|_| T::gaussian(rng)).collect();
    let mut q: Vec<T> = (0..d * d)
        .map(|k| if k / d == k % d { T::one() } else { T::zero() })
        .collect();
    let mut diag = vec![T::one(); d];
    let mut v = vec![T::zero(); d];
    for k in 0..d {
        let norm = (k..d).map(|i| a[i * d + k].abs().powi(2)).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = -phase(a[k * d + k]) * <T as From<f64>>::from(norm);
        diag[k] = alpha;
        for i in k..d {
            v[i] = a[i * d + k];
        }
        v[k] = v[k] - alpha;
        let vnorm = (k..d).map(|i| v[i].abs().powi(2)).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for x in v[k..].iter_mut() {
            *x = *x / <T as From<f64>>::from(vnorm);
        }
        let two = <T as From<f64>>::from(2.0);
        // A <- (I - 2 v v^*) A on rows k.., columns k..
        for j in k..d {
            let s = (k..d).fold(T::zero(), |s, i| s + v[i].conj() * a[i * d + j]);
            for i in k..d {
                a[i * d + j] = a[i * d + j] - two * v[i] * s;
            }
        }
        // Q <- Q (I - 2 v v^*)
        for r in 0..d {
            let s = (k..d).fold(T::zero(), |s, i| s + q[r * d + i] * v[i]);
            for i in k..d {
                q[r * d + i] = q[r * d + i] - two * s * v[i].conj();
            }
        }
    }
    for (k, &rk) in diag.iter().enumerate() {
        let p = phase(rk);
        for r in 0..d {
            q[r * d + k] = q[r * d + k] * p;
        }
    }
    FloatMatrix { d, data: q }
}

/// One Haar-distributed orthogonal matrix.
pub fn sample_haar_orth(d: usize, seed: u64) -> FloatMatrix<f64> {
    haar(d, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// One Haar-distributed unitary matrix.
pub fn sample_haar_unit(d: usize, seed: u64) -> FloatMatrix<Complex64> {
    haar(d, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Empirical mean of a monomial over Haar samples.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SampleEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: usize,
    pub seed: u64,
}

impl SampleEstimate {
    /// `(mean - exact) / stderr`; zero when both the error and the spread vanish.
    pub fn zscore(&self, exact: f64) -> f64 {
        let diff = self.mean - exact;
        if self.stderr > 0.0 {
            diff / self.stderr
        } else if diff.abs() < 1e-12 {
            0.0
        } else {
            f64::INFINITY.copysign(diff)
        }
    }

    /// `|mean - exact| ≤ sigmas · stderr` (with a tiny floor for zero spread).
    pub fn agrees(&self, exact: f64, sigmas: f64) -> bool {
        self.zscore(exact).abs() <= sigmas
    }
}

/// Running count, mean and sum of squared deviations.
#[derive(Clone, Copy, Debug, Default)]
struct Moments {
    count: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.count += 1.0;
        let delta = x - self.mean;
        self.mean += delta / self.count;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if self.count == 0.0 {
            return other;
        }
        if other.count == 0.0 {
            return self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        Moments {
            count,
            mean: self.mean + delta * other.count / count,
            m2: self.m2 + other.m2 + delta * delta * self.count * other.count / count,
        }
    }
}

fn evaluate<T: ComplexFloat<Real = f64>>(g: &FloatMatrix<T>, spec: &MonomialSpec) -> T {
    spec.entries()
        .iter()
        .zip(spec.conjugated())
        .fold(T::one(), |acc, (&(i, j), &c)| {
            let x = g.get(i - 1, j - 1);
            acc * if c { x.conj() } else { x }
        })
}

/// Monte Carlo estimate of the Haar integral of `spec` over `group`.
///
/// Unitary estimates use the real part of the monomial.
pub fn estimate_monomial(
    spec: &MonomialSpec,
    group: Group,
    d: usize,
    samples: usize,
    seed: u64,
) -> Result<SampleEstimate> {
    if d == 0 {
        return Err(Error::InvalidDimension(0));
    }
    for &(i, j) in spec.entries() {
        for index in [i, j] {
            if index == 0 || index > d {
                return Err(Error::IndexOutOfRange { index, d: d as i64 });
            }
        }
    }
    if group == Group::Orthogonal && spec.has_conjugates() {
        return Err(Error::Parse("conjugated factors in an orthogonal integrand".into()));
    }
    if samples < 2 {
        return Err(Error::TooFewSamples(samples));
    }
    let chunks = samples.div_ceil(CHUNK);
    let parts: Vec<Moments> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let count = CHUNK.min(samples - c * CHUNK);
            let mut m = Moments::default();
            for _ in 0..count {
                let x = match group {
                    Group::Orthogonal => evaluate(&haar::<f64, _>(d, &mut rng), spec),
                    Group::Unitary => evaluate(&haar::<Complex64, _>(d, &mut rng), spec).re,
                };
                m.push(x);
            }
            m
        })
        .collect();
    let total = parts.into_iter().fold(Moments::default(), Moments::merge);
    let variance = total.m2 / (total.count - 1.0);
    Ok(SampleEstimate {
        mean: total.mean,
        stderr: (variance / total.count).sqrt(),
        samples,
        seed,
    })
}
