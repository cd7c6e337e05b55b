//! Content digests for the plain-text artifacts this crate emits.
//!
//! Every artifact file ends with a `digest fnv1a64:<hex>` line covering the
//! rest of the file, so re-runs can be compared without parsing. Lines that
//! record wall-clock time are excluded: they are the only part of an artifact
//! that is allowed to differ between identical runs.

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

/// 64-bit FNV-1a over raw bytes.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = FNV_OFFSET;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(FNV_PRIME);
    }
    hash
}

/// Digest of a text artifact: hashes every line except the trailing
/// `digest` line itself and volatile `wall_clock` lines.
pub fn text_digest(text: &str) -> u64 {
    let mut hash = FNV_OFFSET;
    for line in text.lines() {
        if line.starts_with("digest ") || line.starts_with("wall_clock") {
            continue;
        }
        for &b in line.as_bytes() {
            hash ^= u64::from(b);
            hash = hash.wrapping_mul(FNV_PRIME);
        }
        hash ^= u64::from(b'\n');
        hash = hash.wrapping_mul(FNV_PRIME);
    }
    hash
}

/// Render a digest the way artifact files store it.
pub fn format_digest(digest: u64) -> String {
    format!("fnv1a64:{digest:016x}")
}

/// Append the digest line to an artifact body.
pub fn stamp(body: &str) -> String {
    let mut out = String::with_capacity(body.len() + 32);
    out.push_str(body);
    if !body.is_empty() && !body.ends_with('\n') {
        out.push('\n');
    }
    out.push_str("digest ");
    out.push_str(&format_digest(text_digest(body)));
    out.push('\n');
    out
}

/// Check the trailing digest line of a loaded artifact.
pub fn verify(text: &str, path: &str) -> crate::Result<()> {
    let recorded = text
        .lines()
        .rev()
        .find(|l| l.starts_with("digest "))
        .ok_or_else(|| crate::Error::CorruptFile {
            path: path.to_string(),
            reason: "missing digest line".to_string(),
        })?;
    let expected = format!("digest {}", format_digest(text_digest(text)));
    if recorded != expected {
        return Err(crate::Error::CorruptFile {
            path: path.to_string(),
            reason: format!("digest mismatch: found {recorded:?}"),
        });
    }
    Ok(())
}
