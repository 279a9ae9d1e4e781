use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::config::Params;
use crate::error::RunError;

pub const MANIFEST: &str = "manifest.txt";

/// Files of one run, held in memory until every computation has succeeded.
#[derive(Debug, Default)]
pub struct Outputs {
    files: Vec<(String, String)>,
    grid: Vec<String>,
}

impl Outputs {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn text(&mut self, name: &str, body: String) {
        self.files.push((name.to_string(), body));
    }

    /// CSV with a header row; every row must have as many fields.
    pub fn csv(
        &mut self,
        name: &str,
        header: &[&str],
        rows: impl IntoIterator<Item = Vec<String>>,
    ) {
        let mut body = header.join(",");
        body.push('\n');
        for r in rows {
            debug_assert_eq!(r.len(), header.len());
            body.push_str(&r.join(","));
            body.push('\n');
        }
        self.text(name, body);
    }

    /// Grid or basis size recorded in the manifest.
    pub fn grid(&mut self, line: String) {
        self.grid.push(line);
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.files.iter().map(|(n, _)| n.as_str())
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.files
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, b)| b.as_str())
    }

    /// Manifest listing the inputs, library version, grid sizes and the
    /// SHA-256 of every emitted file. Contains nothing run-specific.
    pub fn manifest(&self, scenario: &str, params: &Params) -> String {
        let mut m = String::new();
        let _ = writeln!(m, "floquet-forge {}", floquet_forge::VERSION);
        let _ = writeln!(m, "scenario = {scenario}");
        let _ = writeln!(m, "\n[inputs]");
        for l in params.lines() {
            let _ = writeln!(m, "{l}");
        }
        let _ = writeln!(m, "\n[grid]");
        for l in &self.grid {
            let _ = writeln!(m, "{l}");
        }
        let _ = writeln!(m, "\n[files]");
        for (name, body) in &self.files {
            let _ = writeln!(
                m,
                "{}  {} bytes  {name}",
                sha256_hex(body.as_bytes()),
                body.len()
            );
        }
        m
    }

    /// Writes every file and the manifest under `dir`, in order.
    pub fn write(
        &self,
        dir: &Path,
        scenario: &str,
        params: &Params,
    ) -> Result<Vec<PathBuf>, RunError> {
        fs::create_dir_all(dir).map_err(|e| RunError::io(dir, e))?;
        let mut written = Vec::new();
        let manifest = self.manifest(scenario, params);
        for (name, body) in self
            .files
            .iter()
            .map(|(n, b)| (n.as_str(), b))
            .chain([(MANIFEST, &manifest)])
        {
            let path = dir.join(name);
            fs::write(&path, body).map_err(|e| RunError::io(&path, e))?;
            written.push(path);
        }
        Ok(written)
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Shortest round-trip representation, so files are exact and diffable.
/// Negative zero prints as `0`.
pub fn num(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x}")
    }
}
