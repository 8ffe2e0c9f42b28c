//! Exact finite-window workbench for difference sets, densities, Delta sets
//! and finite embeddability of sets of integers.
//!
//! Every set lives on a closed [`Window`] and is stored one bit per element.
//! Densities are exact rationals; every pipeline returns a certificate whose
//! inequalities are checked by integer cross-multiplication.
//!
//! Module map:
//!
//! * [`intset`]: windowed sets and set arithmetic (shift, sumset, `A - B`, dilation, quotient).
//! * [`density`]: Banach, asymptotic and Schnirelmann estimators plus thick/syndetic classifiers.
//! * [`delta`]: ε-Delta sets under both density notions.
//! * [`embed`]: finite and dense embeddability witnesses, arithmetic progressions.
//! * [`cover`]: Cauchy–Schwarz family bound and the greedy shift cover.
//! * [`extract`]: pigeonhole shift, trace extraction and the difference-set pipelines.
//! * [`bohr`]: Bohr sets and piecewise-Bohr witness search.
//! * [`gen`]: seeded generators for test families.
//! * [`selftest`]: the invariant suite behind `diffembed selftest`.
//! * [`cli`]: command-line surface and JSON reports.

pub mod bohr;
pub mod cli;
pub mod cover;
pub mod delta;
pub mod density;
pub mod embed;
pub mod error;
pub mod extract;
pub mod gen;
pub mod intset;
pub mod ratio;
pub mod report;
pub mod selftest;
pub mod setfile;

pub use error::{Error, Result};
pub use intset::{IntSet, Window};
pub use ratio::Rat;
