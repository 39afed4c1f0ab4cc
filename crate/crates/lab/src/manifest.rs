//! In-memory artifact set written out together with a checksum manifest.

use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{LabError, LabResult};

pub const MANIFEST_NAME: &str = "manifest.txt";

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Default, Clone, PartialEq)]
pub struct Artifacts {
    files: Vec<(String, Vec<u8>)>,
}

impl Artifacts {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, name: impl Into<String>, bytes: Vec<u8>) {
        let name = name.into();
        assert!(name != MANIFEST_NAME, "reserved artifact name");
        self.files.push((name, bytes));
    }

    pub fn add_text(&mut self, name: impl Into<String>, text: String) {
        self.add(name, text.into_bytes());
    }

    pub fn get(&self, name: &str) -> Option<&[u8]> {
        self.files.iter().find(|(n, _)| n == name).map(|(_, b)| b.as_slice())
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.files.iter().map(|(n, _)| n.as_str())
    }

    /// Manifest text: run header lines, then `file <name> <sha256> <bytes>`.
    pub fn manifest(&self, header: &[(&str, String)]) -> String {
        let mut s = String::new();
        for (k, v) in header {
            s.push_str(&format!("{k} = {v}\n"));
        }
        for (name, bytes) in &self.files {
            s.push_str(&format!("file {name} {} {}\n", sha256_hex(bytes), bytes.len()));
        }
        s
    }

    /// Writes every artifact and the manifest into `dir`.
    pub fn write_all(&self, dir: &Path, header: &[(&str, String)]) -> LabResult<()> {
        let io = |path: &Path| {
            let path = path.to_path_buf();
            move |source| LabError::Io { path, source }
        };
        fs::create_dir_all(dir).map_err(io(dir))?;
        for (name, bytes) in &self.files {
            let p = dir.join(name);
            fs::write(&p, bytes).map_err(io(&p))?;
        }
        let p = dir.join(MANIFEST_NAME);
        fs::write(&p, self.manifest(header)).map_err(io(&p))?;
        Ok(())
    }
}
