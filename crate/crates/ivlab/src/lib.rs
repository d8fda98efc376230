//! Intrinsic-volume laboratory.
//!
//! This crate computes exact intrinsic-volume sequences for a compositional
//! family of convex bodies, derives the distributional statistics of the
//! normalized sequence (Wills functional, central intrinsic volume, variance,
//! intrinsic entropy), evaluates concentration bounds on the index
//! distribution, and cross-checks everything against independent seeded
//! Monte Carlo estimators.
//!
//! | Module        | Contents                                                     |
//! |---------------|--------------------------------------------------------------|
//! | [`bodies`]    | `BodySpec`: points, balls, boxes, products, scalings, translations, embeddings; projection and distance |
//! | [`exact`]     | Exact intrinsic-volume sequences `V_0..V_n` per body class    |
//! | [`ivstats`]   | Normalization, Wills functional, central intrinsic volume, entropy, log-concavity checks, generating function |
//! | [`bounds`]    | Variance and exponential tail bounds for the index variable `Z` |
//! | [`montecarlo`]| Seeded, chunk-deterministic estimators: rotation averages, Gaussian-weighted integrals, hit-or-miss volumes |
//! | [`maxent`]    | Binomial reference distributions and the entropy comparison   |
//! | [`corpus`]    | Built-in body corpus and composed invariant checks            |
//!
//! Quick example: the box `[0,1] x [0,2] x [0,3]` has intrinsic volumes
//! `(1, 6, 11, 6)`, Wills functional `24`, and central intrinsic volume
//! `23/12`.
//!
//! ```
//! use ivlab::bodies::BodySpec;
//! use ivlab::{exact, ivstats};
//!
//! let body = BodySpec::Box { lengths: vec![1.0, 2.0, 3.0] };
//! let seq = exact::sequence_of(&body).unwrap();
//! assert_eq!(seq.values(), &[1.0, 6.0, 11.0, 6.0]);
//! assert_eq!(ivstats::wills(&seq), 24.0);
//! assert!((ivstats::central_iv(&seq) - 23.0 / 12.0).abs() < 1e-14);
//! ```

#![forbid(unsafe_code)]

use thiserror::Error;

pub mod bodies;
pub mod bounds;
pub mod corpus;
pub mod exact;
pub mod ivstats;
pub mod maxent;
pub mod montecarlo;

/// Error type shared by every module.
///
/// `DimensionMismatch` and `InvalidInput` are input errors: the arguments lie
/// outside an operation's domain. `Unsupported` is a capability error: the
/// arguments are valid but the requested operation has no implementation for
/// that body class.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: body lives in R^{expected}, got {got} coordinates")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("{estimator} does not support this body: {reason}")]
    Unsupported {
        estimator: &'static str,
        reason: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

/// One verified inequality or identity: `pass` records whether `lhs` is
/// compatible with `rhs` under the tolerance the producing check chose.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub id: String,
    pub pass: bool,
    pub lhs: f64,
    pub rhs: f64,
}

impl Check {
    /// `lhs <= rhs` with additive slack `rel_tol * max(1, |rhs|)`.
    pub fn le(id: impl Into<String>, lhs: f64, rhs: f64, rel_tol: f64) -> Check {
        let slack = rel_tol * rhs.abs().max(1.0);
        Check {
            id: id.into(),
            pass: lhs <= rhs + slack,
            lhs,
            rhs,
        }
    }

    /// `lhs == rhs` to relative tolerance `rel_tol` (absolute below 1).
    pub fn eq(id: impl Into<String>, lhs: f64, rhs: f64, rel_tol: f64) -> Check {
        let slack = rel_tol * lhs.abs().max(rhs.abs()).max(1.0);
        Check {
            id: id.into(),
            pass: (lhs - rhs).abs() <= slack,
            lhs,
            rhs,
        }
    }
}

/// True when every check in the slice passed.
pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}
