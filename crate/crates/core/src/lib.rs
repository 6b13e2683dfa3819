//! Exact values of `r_{t-1}^t` for families of stars, and for stars plus one
//! matching, together with the extremal colorings that certify the lower
//! bounds and an exhaustive search used as ground truth at small orders.
//!
//! Everything here is `no_std` + `alloc`. File formats, the parallel search
//! driver and the command-line tool live in the `ramsey-cli` crate.
//!
//! ```
//! use ramsey_core::{formulas, params::Parameters};
//!
//! let params = Parameters::normalize(3, &[3, 3, 3], None).unwrap();
//! let (value, _trace) = formulas::star_ramsey(&params).unwrap();
//! assert_eq!(value, 5);
//! ```
#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod checker;
pub mod coloring;
pub mod constructions;
pub mod factorization;
pub mod formulas;
pub mod oracle;
pub mod params;
pub mod target;
pub mod trace;

pub use coloring::{Color, ColorSet, Coloring};
pub use params::{ParamError, Parameters};
pub use target::{Pattern, Target, TargetSpec};
pub use trace::{DerivationTrace, Rule};
