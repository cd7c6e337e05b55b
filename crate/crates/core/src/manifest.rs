//! Run manifests: the self-contained record of a pipeline stage (resolved
//! configuration, seed, input digests, outputs) from which the stage can be
//! reproduced. Wall-clock time is recorded but excluded from the digest, so
//! two identical runs produce manifests with equal digests.

use std::path::Path;

use crate::digest;
use crate::error::{Error, Result};
use crate::textfile;

#[derive(Debug, Clone, PartialEq)]
pub struct RunManifest {
    pub command: String,
    entries: Vec<(String, String)>,
    pub wall_clock_ms: Option<u128>,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            entries: Vec::new(),
            wall_clock_ms: None,
        }
    }

    pub fn push(&mut self, key: &str, value: impl ToString) -> &mut Self {
        assert!(
            !key.starts_with("wall_clock") && key != "digest" && key != "command",
            "reserved manifest key {key:?}"
        );
        self.entries.push((key.to_string(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    fn body(&self) -> String {
        let mut body = String::from("hho-mlp-manifest v1\n");
        body.push_str(&format!("command {}\n", self.command));
        for (key, value) in &self.entries {
            body.push_str(&format!("{key} {value}\n"));
        }
        if let Some(ms) = self.wall_clock_ms {
            body.push_str(&format!("wall_clock_ms {ms}\n"));
        }
        body
    }

    pub fn to_text(&self) -> String {
        digest::stamp(&self.body())
    }

    /// The run digest: covers command and entries, never wall-clock.
    pub fn digest(&self) -> u64 {
        digest::text_digest(&self.body())
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        textfile::write_text(path, &self.to_text())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = textfile::read_text(path)?;
        let path_str = path.display().to_string();
        digest::verify(&text, &path_str)?;
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, "hho-mlp-manifest v1")) => {}
            _ => {
                return Err(Error::CorruptFile {
                    path: path_str,
                    reason: "missing `hho-mlp-manifest v1` header".to_string(),
                })
            }
        }
        let mut manifest = RunManifest::new("");
        for (idx, line) in lines {
            if line.trim().is_empty() || line.starts_with("digest ") {
                continue;
            }
            let (key, value) = line.split_once(' ').ok_or_else(|| Error::Parse {
                path: path_str.clone(),
                line: idx + 1,
                message: format!("expected `<key> <value>`, found {line:?}"),
            })?;
            match key {
                "command" => manifest.command = value.to_string(),
                "wall_clock_ms" => {
                    manifest.wall_clock_ms =
                        Some(textfile::parse_usize(value, &path_str, idx + 1)? as u128)
                }
                _ => manifest.entries.push((key.to_string(), value.to_string())),
            }
        }
        if manifest.command.is_empty() {
            return Err(Error::CorruptFile {
                path: path_str,
                reason: "missing command line".to_string(),
            });
        }
        Ok(manifest)
    }
}
