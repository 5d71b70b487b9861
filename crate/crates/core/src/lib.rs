//! Exact Weingarten calculus for the orthogonal group `O(d)` and the unitary
//! group `U(d)`.
//!
//! Weingarten functions are computed from zonal spherical functions of the
//! Gelfand pair `(S_{2n}, H_n)` (orthogonal) or from irreducible characters
//! of `S_n` (unitary), either as rational functions of `d` or at a fixed
//! integer `d`. All arithmetic is exact.
//!
//! ```
//! use weingarten::{wg_orth, Dim, Partition};
//!
//! let mu: Partition = "2".parse().unwrap();
//! let w = wg_orth(&mu, Dim::Symbolic).unwrap();
//! assert_eq!(w.to_string(), "(-1)/(d(d+2)(d-1))");
//! ```

pub mod error;
pub mod exactmath;
pub mod moments;
pub mod montecarlo;
pub mod pairings;
pub mod partitions;
pub mod reference;
pub mod verify;
pub mod weingarten;
pub mod zonal;

pub use error::{Error, Result};
pub use exactmath::{format_rational, parse_rational, PolyQ, RatFuncMatrix, RatFuncQ, RatMatrix, Rational};
pub use moments::{
    conjecture_check, full_cycle_poly, full_cycle_properties, integrate_orth, integrate_unit,
    truncated_trace_bruteforce, truncated_trace_moment, wg_asymptotic_leading, wg_unit_fullcycle, MonomialSpec,
};
pub use montecarlo::{estimate_monomial, sample_haar_orth, sample_haar_unit, SampleEstimate};
pub use pairings::{coset_type, enumerate_pairings, loops, PairPartition, Perm};
pub use partitions::{partitions_of, Partition};
pub use weingarten::{gram, wg, wg_matrix_oracle, wg_orth, wg_unit, Dim, Group, WgExact, WgValue};
pub use zonal::{zonal_table, ZonalTable};
