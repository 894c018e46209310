//! Neutrality boundary values.
//!
//! A neutrality boundary value `nb` is the normalized distance of an
//! observed contrast from the set of parameter values where the effect is
//! null, `|delta - delta0| / (|delta - delta0| + S)`, with `S > 0` a scale
//! parameter. It lies in `[0, 1)`, is zero exactly at neutrality and does
//! not depend on sample size when `delta` and `S` are population-scale
//! quantities.
//!
//! - [`boundary`]: the general form and the `x / (1 + x)` transform
//! - [`contingency`]: Risk Quotient for 2x2 and r x c tables
//! - [`anova`]: partial eta squared and Cohen's f for one-way designs
//! - [`correlation`]: Fisher-z distance to independence
//! - [`classify`]: qualitative robustness bands
//! - [`simulation`]: exact and Monte-Carlo sample-size invariance checks
//! - [`io`], [`report`], [`cli`]: CSV ingestion, reports and the `nbf` binary

pub mod anova;
pub mod boundary;
pub mod classify;
pub mod cli;
pub mod contingency;
pub mod correlation;
pub mod error;
pub mod io;
pub mod report;
pub mod simulation;

pub use boundary::{canonical_transform, nb_general, Contrast, Domain, NbValue};
pub use classify::{classify, BandLabel, RobustnessBand};
pub use error::{NbError, Result};
