//! Experiment harness: configuration, reproducible runs, manifests and
//! plot-data emission.

pub mod config;
pub mod dump;
pub mod error;
pub mod experiments;
pub mod manifest;
pub mod plotdata;

use std::path::Path;

pub use error::{LabError, LabResult};
pub use experiments::Kind;
pub use manifest::Artifacts;

/// Validates `config_text` (defaults when `None`), runs `kind` and returns
/// the artifacts, including the canonical `config.txt`.
pub fn build_experiment(kind: Kind, config_text: Option<&str>, seed: u64) -> LabResult<(Artifacts, String)> {
    let given = match config_text {
        Some(t) => config::parse(t)?,
        None => Default::default(),
    };
    let resolved = config::Resolved::new(&kind.schema(), &given)?;
    let canonical = resolved.canonical();
    let mut art = experiments::run_kind(kind, &resolved, seed)?;
    art.add_text("config.txt", canonical.clone());
    Ok((art, canonical))
}

/// Runs an experiment and writes its artifacts and manifest into `out`.
pub fn run_experiment(kind: Kind, config_text: Option<&str>, seed: u64, out: &Path) -> LabResult<Artifacts> {
    let (art, canonical) = build_experiment(kind, config_text, seed)?;
    let header = [
        ("kind", kind.label().to_string()),
        ("seed", seed.to_string()),
        ("config_sha256", manifest::sha256_hex(canonical.as_bytes())),
    ];
    art.write_all(out, &header)?;
    Ok(art)
}
