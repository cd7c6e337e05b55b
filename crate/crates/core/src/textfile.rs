//! Small helpers shared by the plain-text artifact readers and writers.

use std::path::Path;

use crate::error::{Error, Result};

pub(crate) fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub(crate) fn write_text(path: &Path, content: &str) -> Result<()> {
    std::fs::write(path, content).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub(crate) fn parse_f64(token: &str, path: &str, line: usize) -> Result<f64> {
    token.parse::<f64>().map_err(|_| Error::Parse {
        path: path.to_string(),
        line,
        message: format!("expected a number, found {token:?}"),
    })
}

pub(crate) fn parse_usize(token: &str, path: &str, line: usize) -> Result<usize> {
    token.parse::<usize>().map_err(|_| Error::Parse {
        path: path.to_string(),
        line,
        message: format!("expected an integer, found {token:?}"),
    })
}

/// Space-joined floats in shortest round-trip form. `f64` display in Rust
/// prints the shortest decimal that parses back to the identical bits, which
/// is what keeps artifact round-trips bit-exact.
pub(crate) fn join_f64(values: &[f64]) -> String {
    let mut out = String::new();
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&v.to_string());
    }
    out
}
