//! Scenario runner behind the `floquet-forge` binary.
//!
//! A run reads a flat `key = value` config, validates it against the
//! scenario's keys, computes everything in memory and only then writes the
//! CSV/text outputs and a `manifest.txt` with SHA-256 checksums.

// `!(x > 0.0)` is how NaN gets rejected along with the bad values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod output;
pub mod scenario;

#[cfg(any(doc, doctest))]
#[doc = include_str!("../../../book/src/cli.md")]
pub mod guide {}

use std::path::{Path, PathBuf};

pub use config::{parse_pairs, Params, Units};
pub use error::RunError;
pub use output::Outputs;
pub use scenario::Scenario;

/// Validates `text` for `scenario` and computes its outputs without touching
/// the filesystem.
pub fn evaluate(scenario: Scenario, text: &str) -> Result<(Params, Outputs), RunError> {
    let raw = parse_pairs(text)?;
    let params = Params::validate(&raw, &scenario.schema(), scenario.units())?;
    let out = scenario.run(&params)?;
    Ok((params, out))
}

/// [`evaluate`] a config file and write the results under `out_dir`.
pub fn run(scenario: Scenario, config: &Path, out_dir: &Path) -> Result<Vec<PathBuf>, RunError> {
    let text = std::fs::read_to_string(config).map_err(|e| RunError::io(config, e))?;
    let (params, out) = evaluate(scenario, &text)?;
    out.write(out_dir, scenario.name(), &params)
}
