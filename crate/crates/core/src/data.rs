//! Dataset ingestion for KDD-style traffic CSVs: schema-driven parsing,
//! categorical encoding, min-max normalization, label binarization, and
//! seeded train/test splitting.
//!
//! Normalization statistics and categorical codings are always fitted on the
//! training partition only; [`prepare`] wires the leak-free order (split raw
//! records first, then fit, then apply to both partitions).

use std::collections::HashMap;
use std::path::Path;

use crate::digest;
use crate::error::{Error, Result};
use crate::rng::DeterministicRng;
use crate::textfile;

/// Role of one CSV column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnKind {
    Numeric,
    Categorical,
    Label,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Column {
    pub name: String,
    pub kind: ColumnKind,
}

/// Ordered column layout of a traffic CSV. Exactly one label column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schema {
    columns: Vec<Column>,
    label_index: usize,
}

impl Schema {
    pub fn new(columns: Vec<Column>) -> Result<Self> {
        let label_positions: Vec<usize> = columns
            .iter()
            .enumerate()
            .filter(|(_, c)| c.kind == ColumnKind::Label)
            .map(|(i, _)| i)
            .collect();
        if label_positions.len() != 1 {
            return Err(Error::InvalidConfig(format!(
                "schema must contain exactly one label column, found {}",
                label_positions.len()
            )));
        }
        if columns.len() < 2 {
            return Err(Error::InvalidConfig(
                "schema needs at least one feature column".to_string(),
            ));
        }
        Ok(Self {
            label_index: label_positions[0],
            columns,
        })
    }

    /// The 41-feature KDD connection-record layout plus its label column.
    /// `protocol_type`, `service` and `flag` are text; binary indicator
    /// columns are already numeric in the files.
    pub fn kdd41() -> Self {
        const NUMERIC: ColumnKind = ColumnKind::Numeric;
        const CATEGORICAL: ColumnKind = ColumnKind::Categorical;
        let spec: [(&str, ColumnKind); 42] = [
            ("duration", NUMERIC),
            ("protocol_type", CATEGORICAL),
            ("service", CATEGORICAL),
            ("flag", CATEGORICAL),
            ("src_bytes", NUMERIC),
            ("dst_bytes", NUMERIC),
            ("land", NUMERIC),
            ("wrong_fragment", NUMERIC),
            ("urgent", NUMERIC),
            ("hot", NUMERIC),
            ("num_failed_logins", NUMERIC),
            ("logged_in", NUMERIC),
            ("num_compromised", NUMERIC),
            ("root_shell", NUMERIC),
            ("su_attempted", NUMERIC),
            ("num_root", NUMERIC),
            ("num_file_creations", NUMERIC),
            ("num_shells", NUMERIC),
            ("num_access_files", NUMERIC),
            ("num_outbound_cmds", NUMERIC),
            ("is_host_login", NUMERIC),
            ("is_guest_login", NUMERIC),
            ("count", NUMERIC),
            ("srv_count", NUMERIC),
            ("serror_rate", NUMERIC),
            ("srv_serror_rate", NUMERIC),
            ("rerror_rate", NUMERIC),
            ("srv_rerror_rate", NUMERIC),
            ("same_srv_rate", NUMERIC),
            ("diff_srv_rate", NUMERIC),
            ("srv_diff_host_rate", NUMERIC),
            ("dst_host_count", NUMERIC),
            ("dst_host_srv_count", NUMERIC),
            ("dst_host_same_srv_rate", NUMERIC),
            ("dst_host_diff_srv_rate", NUMERIC),
            ("dst_host_same_src_port_rate", NUMERIC),
            ("dst_host_srv_diff_host_rate", NUMERIC),
            ("dst_host_serror_rate", NUMERIC),
            ("dst_host_srv_serror_rate", NUMERIC),
            ("dst_host_rerror_rate", NUMERIC),
            ("dst_host_srv_rerror_rate", NUMERIC),
            ("label", ColumnKind::Label),
        ];
        Self::new(
            spec.iter()
                .map(|(name, kind)| Column {
                    name: (*name).to_string(),
                    kind: *kind,
                })
                .collect(),
        )
        .expect("builtin schema is valid")
    }

    /// All-numeric feature columns `f0..f{n-1}` plus a trailing label;
    /// the layout the synthetic fixtures use.
    pub fn all_numeric(features: usize) -> Result<Self> {
        if features == 0 {
            return Err(Error::InvalidConfig(
                "schema needs at least one feature column".to_string(),
            ));
        }
        let mut columns: Vec<Column> = (0..features)
            .map(|i| Column {
                name: format!("f{i}"),
                kind: ColumnKind::Numeric,
            })
            .collect();
        columns.push(Column {
            name: "label".to_string(),
            kind: ColumnKind::Label,
        });
        Self::new(columns)
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn arity(&self) -> usize {
        self.columns.len()
    }

    pub fn label_index(&self) -> usize {
        self.label_index
    }

    /// Feature columns in order, with their index into a raw record's cells.
    pub fn feature_columns(&self) -> impl Iterator<Item = (usize, &Column)> {
        self.columns
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != self.label_index)
            .enumerate()
            .map(|(cell_idx, (_, col))| (cell_idx, col))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut body = String::from("hho-mlp-schema v1\n");
        for col in &self.columns {
            let kind = match col.kind {
                ColumnKind::Numeric => "numeric",
                ColumnKind::Categorical => "categorical",
                ColumnKind::Label => "label",
            };
            body.push_str(&format!("column {} {}\n", col.name, kind));
        }
        textfile::write_text(path, &digest::stamp(&body))
    }

    /// Load a schema file: `column <name> numeric|categorical|label` lines.
    /// The digest line is optional so hand-written schemas stay convenient.
    pub fn load(path: &Path) -> Result<Self> {
        let text = textfile::read_text(path)?;
        let path_str = path.display().to_string();
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, header)) if header.trim() == "hho-mlp-schema v1" => {}
            _ => {
                return Err(Error::CorruptFile {
                    path: path_str,
                    reason: "missing `hho-mlp-schema v1` header".to_string(),
                })
            }
        }
        let mut columns = Vec::new();
        for (idx, line) in lines {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with("digest ") {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (tag, name, kind) = (parts.next(), parts.next(), parts.next());
            match (tag, name, kind) {
                (Some("column"), Some(name), Some(kind)) => {
                    let kind = match kind {
                        "numeric" => ColumnKind::Numeric,
                        "categorical" => ColumnKind::Categorical,
                        "label" => ColumnKind::Label,
                        other => {
                            return Err(Error::Parse {
                                path: path_str,
                                line: idx + 1,
                                message: format!("unknown column kind {other:?}"),
                            })
                        }
                    };
                    columns.push(Column {
                        name: name.to_string(),
                        kind,
                    });
                }
                _ => {
                    return Err(Error::Parse {
                        path: path_str,
                        line: idx + 1,
                        message: format!("expected `column <name> <kind>`, found {line:?}"),
                    })
                }
            }
        }
        Schema::new(columns)
    }
}

/// One feature cell, parsed according to the schema.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Number(f64),
    Text(String),
}

/// One parsed CSV row: feature cells in schema order plus the label string.
#[derive(Debug, Clone, PartialEq)]
pub struct RawRecord {
    pub cells: Vec<Cell>,
    pub label: String,
}

/// Parse a comma-separated traffic file against a schema. Every malformed
/// row is reported with its line number. An empty file is an empty list.
pub fn load_csv(path: &Path, schema: &Schema, has_header: bool) -> Result<Vec<RawRecord>> {
    let text = textfile::read_text(path)?;
    let path_str = path.display().to_string();
    let mut records = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if has_header && idx == 0 {
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != schema.arity() {
            return Err(Error::Parse {
                path: path_str,
                line: line_no,
                message: format!(
                    "expected {} columns, found {}",
                    schema.arity(),
                    fields.len()
                ),
            });
        }
        let mut cells = Vec::with_capacity(schema.arity() - 1);
        let mut label = String::new();
        for (field, column) in fields.iter().zip(schema.columns()) {
            match column.kind {
                ColumnKind::Label => label = (*field).to_string(),
                ColumnKind::Categorical => cells.push(Cell::Text((*field).to_string())),
                ColumnKind::Numeric => {
                    let value = field.parse::<f64>().map_err(|_| Error::Parse {
                        path: path_str.clone(),
                        line: line_no,
                        message: format!(
                            "column {:?}: expected a number, found {field:?}",
                            column.name
                        ),
                    })?;
                    cells.push(Cell::Number(value));
                }
            }
        }
        records.push(RawRecord { cells, label });
    }
    Ok(records)
}

/// How text-valued columns become numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EncodingPolicy {
    /// Integer codes assigned by first appearance in the fitting records.
    /// A value unseen at fit time maps to code 0.
    #[default]
    Ordinal,
    /// One indicator column per fitted value; unseen values map to all
    /// zeros. Inflates the feature count.
    OneHot,
}

/// Fitted categorical coding; applies the same mapping to later partitions.
#[derive(Debug, Clone)]
pub struct CategoricalCoding {
    policy: EncodingPolicy,
    /// Per feature cell: `None` for numeric columns, or the fitted values in
    /// first-appearance order.
    codebooks: Vec<Option<Vec<String>>>,
    feature_names: Vec<String>,
}

/// Fit a coding on records (first-appearance order, deterministic).
pub fn fit_encoding(
    records: &[RawRecord],
    schema: &Schema,
    policy: EncodingPolicy,
) -> Result<CategoricalCoding> {
    let feature_count = schema.arity() - 1;
    let mut codebooks: Vec<Option<Vec<String>>> = vec![None; feature_count];
    let mut seen: Vec<HashMap<String, usize>> = vec![HashMap::new(); feature_count];
    for (cell_idx, column) in schema.feature_columns() {
        if column.kind == ColumnKind::Categorical {
            codebooks[cell_idx] = Some(Vec::new());
        }
    }
    for record in records {
        if record.cells.len() != feature_count {
            return Err(Error::DimensionMismatch {
                context: "record cells vs schema",
                expected: feature_count,
                actual: record.cells.len(),
            });
        }
        for (cell_idx, cell) in record.cells.iter().enumerate() {
            if let (Some(book), Cell::Text(value)) = (&mut codebooks[cell_idx], cell) {
                if !seen[cell_idx].contains_key(value) {
                    seen[cell_idx].insert(value.clone(), book.len());
                    book.push(value.clone());
                }
            }
        }
    }

    let mut feature_names = Vec::new();
    for (cell_idx, column) in schema.feature_columns() {
        match (&codebooks[cell_idx], policy) {
            (Some(book), EncodingPolicy::OneHot) => {
                for value in book {
                    feature_names.push(format!("{}={}", column.name, value));
                }
            }
            _ => feature_names.push(column.name.clone()),
        }
    }

    Ok(CategoricalCoding {
        policy,
        codebooks,
        feature_names,
    })
}

impl CategoricalCoding {
    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    /// Encode records into a numeric matrix using the fitted coding.
    pub fn apply(&self, records: &[RawRecord]) -> Result<Vec<Vec<f64>>> {
        let mut matrix = Vec::with_capacity(records.len());
        for record in records {
            if record.cells.len() != self.codebooks.len() {
                return Err(Error::DimensionMismatch {
                    context: "record cells vs fitted coding",
                    expected: self.codebooks.len(),
                    actual: record.cells.len(),
                });
            }
            let mut row = Vec::with_capacity(self.feature_names.len());
            for (cell, book) in record.cells.iter().zip(&self.codebooks) {
                match (cell, book) {
                    (Cell::Number(v), None) => row.push(*v),
                    (Cell::Text(value), Some(book)) => {
                        let code = book.iter().position(|v| v == value);
                        match self.policy {
                            EncodingPolicy::Ordinal => {
                                row.push(code.unwrap_or(0) as f64);
                            }
                            EncodingPolicy::OneHot => {
                                for i in 0..book.len() {
                                    row.push(if code == Some(i) { 1.0 } else { 0.0 });
                                }
                            }
                        }
                    }
                    (Cell::Number(_), Some(_)) | (Cell::Text(_), None) => {
                        return Err(Error::Mismatch(
                            "record cell kinds do not match the fitted coding".to_string(),
                        ))
                    }
                }
            }
            matrix.push(row);
        }
        Ok(matrix)
    }
}

/// Convenience wrapper: fit on the given records and encode them.
pub fn encode_categoricals(
    records: &[RawRecord],
    schema: &Schema,
    policy: EncodingPolicy,
) -> Result<(Vec<Vec<f64>>, Vec<String>, CategoricalCoding)> {
    let coding = fit_encoding(records, schema, policy)?;
    let matrix = coding.apply(records)?;
    let names = coding.feature_names().to_vec();
    Ok((matrix, names, coding))
}

/// Known attack labels, lowercase. Covers the KDD'99 training attacks plus
/// the UNSW-NB15 attack categories so those files binarize as well.
const ATTACK_LABELS: [&str; 31] = [
    // DOS
    "back", "land", "neptune", "pod", "smurf", "teardrop",
    // Probe
    "ipsweep", "nmap", "portsweep", "satan",
    // R2L
    "ftp_write", "guess_passwd", "imap", "multihop", "phf", "spy", "warezclient", "warezmaster",
    // U2R
    "buffer_overflow", "loadmodule", "perl", "rootkit",
    // UNSW-NB15 categories
    "analysis", "backdoor", "backdoors", "dos", "exploits", "fuzzers", "generic",
    "reconnaissance", "worms",
];

const NORMAL_LABELS: [&str; 2] = ["normal", "shellcode_benign_placeholder"];

/// Map a raw label string to 0 (normal) or 1 (intrusion). Trailing periods
/// (KDD convention) are stripped; comparison is case-insensitive. Unknown
/// labels are an error, never a silent guess.
pub fn binarize_label(label: &str) -> Result<u8> {
    let cleaned = label.trim().trim_end_matches('.').to_ascii_lowercase();
    if NORMAL_LABELS.contains(&cleaned.as_str()) {
        return Ok(0);
    }
    if ATTACK_LABELS.contains(&cleaned.as_str()) || cleaned == "shellcode" {
        return Ok(1);
    }
    Err(Error::UnknownLabel(label.to_string()))
}

/// Binarize every record's label.
pub fn binarize_labels(records: &[RawRecord]) -> Result<Vec<u8>> {
    records.iter().map(|r| binarize_label(&r.label)).collect()
}

/// Per-feature min-max statistics captured from the training partition,
/// together with the target range they map onto.
#[derive(Debug, Clone, PartialEq)]
pub struct NormStats {
    pub mins: Vec<f64>,
    pub maxs: Vec<f64>,
    pub na: f64,
    pub nb: f64,
    /// Row count of the partition the stats were fitted on; recorded so the
    /// fitting partition is auditable.
    pub fitted_rows: usize,
}

/// Seeded train/test split parameters.
#[derive(Debug, Clone)]
pub struct SplitSpec {
    pub train_fraction: f64,
    pub stratified: bool,
    pub seed: u64,
}

impl SplitSpec {
    pub fn new(train_fraction: f64, stratified: bool, seed: u64) -> Self {
        Self {
            train_fraction,
            stratified,
            seed,
        }
    }
}

/// Normalized traffic rows with binary labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    rows: Vec<Vec<f64>>,
    labels: Vec<u8>,
    feature_names: Vec<String>,
    norm_stats: Option<NormStats>,
}

impl Dataset {
    pub fn new(rows: Vec<Vec<f64>>, labels: Vec<u8>, feature_names: Vec<String>) -> Result<Self> {
        if rows.len() != labels.len() {
            return Err(Error::DimensionMismatch {
                context: "rows vs labels",
                expected: rows.len(),
                actual: labels.len(),
            });
        }
        let width = feature_names.len();
        if width == 0 {
            return Err(Error::EmptyInput("feature names"));
        }
        for row in &rows {
            if row.len() != width {
                return Err(Error::DimensionMismatch {
                    context: "row width vs feature names",
                    expected: width,
                    actual: row.len(),
                });
            }
        }
        if labels.iter().any(|&l| l > 1) {
            return Err(Error::InvalidConfig(
                "labels must be 0 or 1".to_string(),
            ));
        }
        Ok(Self {
            rows,
            labels,
            feature_names,
            norm_stats: None,
        })
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.feature_names.len()
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn row(&self, index: usize) -> &[f64] {
        &self.rows[index]
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn norm_stats(&self) -> Option<&NormStats> {
        self.norm_stats.as_ref()
    }

    /// Fit min-max statistics on this dataset (call on the training
    /// partition only).
    pub fn fit_norm_stats(&self, na: f64, nb: f64) -> Result<NormStats> {
        if self.rows.is_empty() {
            return Err(Error::EmptyInput("dataset"));
        }
        if !na.is_finite() || !nb.is_finite() || na >= nb {
            return Err(Error::InvalidConfig(format!(
                "normalization range [{na}, {nb}] is empty"
            )));
        }
        let width = self.width();
        let mut mins = vec![f64::INFINITY; width];
        let mut maxs = vec![f64::NEG_INFINITY; width];
        for row in &self.rows {
            for (d, &v) in row.iter().enumerate() {
                mins[d] = mins[d].min(v);
                maxs[d] = maxs[d].max(v);
            }
        }
        Ok(NormStats {
            mins,
            maxs,
            na,
            nb,
            fitted_rows: self.rows.len(),
        })
    }

    /// Apply min-max normalization with previously fitted statistics.
    /// Constant features map to `na`; values outside the fitted range clip
    /// into `[na, nb]`.
    pub fn normalize(&self, stats: &NormStats) -> Result<Dataset> {
        if stats.mins.len() != self.width() {
            return Err(Error::DimensionMismatch {
                context: "norm stats vs dataset width",
                expected: self.width(),
                actual: stats.mins.len(),
            });
        }
        let span = stats.nb - stats.na;
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(d, &v)| {
                        let (min, max) = (stats.mins[d], stats.maxs[d]);
                        if min == max {
                            stats.na
                        } else {
                            let scaled = (v - min) / (max - min) * span + stats.na;
                            scaled.clamp(stats.na, stats.nb)
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(Dataset {
            rows,
            labels: self.labels.clone(),
            feature_names: self.feature_names.clone(),
            norm_stats: Some(stats.clone()),
        })
    }

    /// Inverse of [`Dataset::normalize`] for values inside the fitted range.
    pub fn denormalize(&self, stats: &NormStats) -> Result<Dataset> {
        if stats.mins.len() != self.width() {
            return Err(Error::DimensionMismatch {
                context: "norm stats vs dataset width",
                expected: self.width(),
                actual: stats.mins.len(),
            });
        }
        let span = stats.nb - stats.na;
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(d, &v)| {
                        let (min, max) = (stats.mins[d], stats.maxs[d]);
                        if min == max {
                            min
                        } else {
                            (v - stats.na) / span * (max - min) + min
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(Dataset {
            rows,
            labels: self.labels.clone(),
            feature_names: self.feature_names.clone(),
            norm_stats: None,
        })
    }

    /// Keep only the listed feature columns (ascending indices). Subsets the
    /// embedded statistics alongside the matrix.
    pub fn select_columns(&self, indices: &[usize]) -> Result<Dataset> {
        if indices.is_empty() {
            return Err(Error::EmptyInput("selected columns"));
        }
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.width()) {
            return Err(Error::DimensionMismatch {
                context: "column index vs dataset width",
                expected: self.width(),
                actual: bad,
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|row| indices.iter().map(|&i| row[i]).collect())
            .collect();
        let feature_names = indices
            .iter()
            .map(|&i| self.feature_names[i].clone())
            .collect();
        let norm_stats = self.norm_stats.as_ref().map(|s| NormStats {
            mins: indices.iter().map(|&i| s.mins[i]).collect(),
            maxs: indices.iter().map(|&i| s.maxs[i]).collect(),
            na: s.na,
            nb: s.nb,
            fitted_rows: s.fitted_rows,
        });
        Ok(Dataset {
            rows,
            labels: self.labels.clone(),
            feature_names,
            norm_stats,
        })
    }

    /// Seeded split into disjoint, exhaustive train/test partitions. Both
    /// inherit this dataset's normalization statistics.
    pub fn split(&self, spec: &SplitSpec) -> Result<(Dataset, Dataset)> {
        let (train_idx, test_idx) = split_indices(&self.labels, spec)?;
        Ok((self.subset(&train_idx), self.subset(&test_idx)))
    }

    fn subset(&self, indices: &[usize]) -> Dataset {
        Dataset {
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            feature_names: self.feature_names.clone(),
            norm_stats: self.norm_stats.clone(),
        }
    }

    /// Serialize to the columnar plain-text cache format. Requires the
    /// dataset to carry normalization statistics.
    pub fn save_cache(&self, path: &Path) -> Result<()> {
        let text = self.to_cache_text()?;
        textfile::write_text(path, &text)
    }

    pub fn to_cache_text(&self) -> Result<String> {
        let stats = self.norm_stats.as_ref().ok_or_else(|| {
            Error::InvalidConfig("only normalized datasets are cached".to_string())
        })?;
        let mut body = String::from("hho-mlp-cache v1\n");
        body.push_str(&format!("rows {}\n", self.n_rows()));
        body.push_str(&format!("cols {}\n", self.width()));
        body.push_str(&format!("range {} {}\n", stats.na, stats.nb));
        body.push_str(&format!("fitted_rows {}\n", stats.fitted_rows));
        for (d, name) in self.feature_names.iter().enumerate() {
            body.push_str(&format!("col {} {} {}\n", name, stats.mins[d], stats.maxs[d]));
            let column: Vec<f64> = self.rows.iter().map(|r| r[d]).collect();
            body.push_str(&textfile::join_f64(&column));
            body.push('\n');
        }
        body.push_str("labels\n");
        for (i, &l) in self.labels.iter().enumerate() {
            if i > 0 {
                body.push(' ');
            }
            body.push_str(if l == 0 { "0" } else { "1" });
        }
        body.push('\n');
        Ok(digest::stamp(&body))
    }

    pub fn load_cache(path: &Path) -> Result<Dataset> {
        let text = textfile::read_text(path)?;
        let path_str = path.display().to_string();
        digest::verify(&text, &path_str)?;
        Self::from_cache_text(&text, &path_str)
    }

    fn from_cache_text(text: &str, path: &str) -> Result<Dataset> {
        let corrupt = |reason: &str| Error::CorruptFile {
            path: path.to_string(),
            reason: reason.to_string(),
        };
        let lines: Vec<&str> = text.lines().collect();
        let mut cursor = 0usize;
        let next_line = |cursor: &mut usize| -> Option<(usize, &str)> {
            let idx = *cursor;
            if idx < lines.len() {
                *cursor += 1;
                Some((idx, lines[idx]))
            } else {
                None
            }
        };
        let expect_kv = |cursor: &mut usize, key: &str| -> Result<Vec<String>> {
            let idx = *cursor;
            if idx >= lines.len() {
                return Err(corrupt("truncated header"));
            }
            *cursor += 1;
            let line = lines[idx];
            let mut parts = line.split_whitespace();
            if parts.next() != Some(key) {
                return Err(Error::Parse {
                    path: path.to_string(),
                    line: idx + 1,
                    message: format!("expected `{key}` line, found {line:?}"),
                });
            }
            Ok(parts.map(str::to_string).collect())
        };

        match next_line(&mut cursor) {
            Some((_, "hho-mlp-cache v1")) => {}
            _ => return Err(corrupt("missing `hho-mlp-cache v1` header")),
        }
        let rows: usize = textfile::parse_usize(&expect_kv(&mut cursor, "rows")?[0], path, 2)?;
        let cols: usize = textfile::parse_usize(&expect_kv(&mut cursor, "cols")?[0], path, 3)?;
        let range = expect_kv(&mut cursor, "range")?;
        if range.len() != 2 {
            return Err(corrupt("range line needs two values"));
        }
        let na = textfile::parse_f64(&range[0], path, 4)?;
        let nb = textfile::parse_f64(&range[1], path, 4)?;
        let fitted_rows =
            textfile::parse_usize(&expect_kv(&mut cursor, "fitted_rows")?[0], path, 5)?;

        let mut feature_names = Vec::with_capacity(cols);
        let mut mins = Vec::with_capacity(cols);
        let mut maxs = Vec::with_capacity(cols);
        let mut columns: Vec<Vec<f64>> = Vec::with_capacity(cols);
        for _ in 0..cols {
            let header = expect_kv(&mut cursor, "col")?;
            if header.len() != 3 {
                return Err(corrupt("col line needs `col <name> <min> <max>`"));
            }
            feature_names.push(header[0].clone());
            mins.push(textfile::parse_f64(&header[1], path, 0)?);
            maxs.push(textfile::parse_f64(&header[2], path, 0)?);
            let (idx, values_line) =
                next_line(&mut cursor).ok_or_else(|| corrupt("missing column values"))?;
            let values: Result<Vec<f64>> = values_line
                .split_whitespace()
                .map(|t| textfile::parse_f64(t, path, idx + 1))
                .collect();
            let values = values?;
            if values.len() != rows {
                return Err(corrupt(&format!(
                    "column {:?} has {} values, expected {rows}",
                    feature_names.last().unwrap(),
                    values.len()
                )));
            }
            columns.push(values);
        }
        let (_, labels_tag) = next_line(&mut cursor).ok_or_else(|| corrupt("missing labels"))?;
        if labels_tag != "labels" {
            return Err(corrupt("expected `labels` line"));
        }
        let (idx, labels_line) =
            next_line(&mut cursor).ok_or_else(|| corrupt("missing label values"))?;
        let labels: Result<Vec<u8>> = labels_line
            .split_whitespace()
            .map(|t| match t {
                "0" => Ok(0u8),
                "1" => Ok(1u8),
                other => Err(Error::Parse {
                    path: path.to_string(),
                    line: idx + 1,
                    message: format!("label must be 0 or 1, found {other:?}"),
                }),
            })
            .collect();
        let labels = labels?;
        if labels.len() != rows {
            return Err(corrupt("label count does not match rows"));
        }

        let matrix: Vec<Vec<f64>> = (0..rows)
            .map(|r| columns.iter().map(|c| c[r]).collect())
            .collect();
        let mut dataset = Dataset::new(matrix, labels, feature_names)?;
        dataset.norm_stats = Some(NormStats {
            mins,
            maxs,
            na,
            nb,
            fitted_rows,
        });
        Ok(dataset)
    }

    /// Digest of the cache serialization; stamps run manifests.
    pub fn digest(&self) -> Result<u64> {
        Ok(digest::text_digest(&self.to_cache_text()?))
    }
}

/// Seeded index split shared by dataset- and record-level splitting.
pub fn split_indices(labels: &[u8], spec: &SplitSpec) -> Result<(Vec<usize>, Vec<usize>)> {
    let n = labels.len();
    if n < 2 {
        return Err(Error::InvalidConfig(format!(
            "cannot split {n} rows into two partitions"
        )));
    }
    if !(spec.train_fraction > 0.0 && spec.train_fraction < 1.0) {
        return Err(Error::InvalidConfig(format!(
            "train fraction must lie in (0, 1), got {}",
            spec.train_fraction
        )));
    }
    let mut rng = DeterministicRng::from_seed(spec.seed);
    let mut train = Vec::new();
    let mut test = Vec::new();

    let groups: Vec<Vec<usize>> = if spec.stratified {
        let mut zeros = Vec::new();
        let mut ones = Vec::new();
        for (i, &l) in labels.iter().enumerate() {
            if l == 0 {
                zeros.push(i);
            } else {
                ones.push(i);
            }
        }
        [zeros, ones].into_iter().filter(|g| !g.is_empty()).collect()
    } else {
        vec![(0..n).collect()]
    };

    for mut group in groups {
        // Fisher-Yates with the shared stream.
        for i in (1..group.len()).rev() {
            let j = rng.index(i + 1);
            group.swap(i, j);
        }
        let take = ((group.len() as f64) * spec.train_fraction).round() as usize;
        let take = take.clamp(
            if group.len() > 1 { 1 } else { 0 },
            group.len().saturating_sub(1).max(1),
        );
        train.extend_from_slice(&group[..take]);
        test.extend_from_slice(&group[take..]);
    }

    // Keep at least one row on each side overall.
    if test.is_empty() {
        test.push(train.pop().expect("n >= 2"));
    }
    if train.is_empty() {
        train.push(test.pop().expect("n >= 2"));
    }
    train.sort_unstable();
    test.sort_unstable();
    Ok((train, test))
}

/// Both partitions of a prepared dataset, normalized with statistics fitted
/// on the training rows only.
#[derive(Debug, Clone)]
pub struct PreparedData {
    pub train: Dataset,
    pub test: Dataset,
}

/// The leak-free preparation pipeline: binarize labels, split the raw
/// records, fit the categorical coding and min-max statistics on the
/// training partition, then encode and normalize both partitions.
pub fn prepare(
    records: &[RawRecord],
    schema: &Schema,
    split: &SplitSpec,
    policy: EncodingPolicy,
    na: f64,
    nb: f64,
) -> Result<PreparedData> {
    if records.is_empty() {
        return Err(Error::EmptyInput("records"));
    }
    let labels = binarize_labels(records)?;
    let (train_idx, test_idx) = split_indices(&labels, split)?;

    let pick = |idx: &[usize]| -> (Vec<RawRecord>, Vec<u8>) {
        (
            idx.iter().map(|&i| records[i].clone()).collect(),
            idx.iter().map(|&i| labels[i]).collect(),
        )
    };
    let (train_records, train_labels) = pick(&train_idx);
    let (test_records, test_labels) = pick(&test_idx);

    let coding = fit_encoding(&train_records, schema, policy)?;
    let names = coding.feature_names().to_vec();
    let train_matrix = coding.apply(&train_records)?;
    let test_matrix = coding.apply(&test_records)?;

    let train_raw = Dataset::new(train_matrix, train_labels, names.clone())?;
    let test_raw = Dataset::new(test_matrix, test_labels, names)?;

    let stats = train_raw.fit_norm_stats(na, nb)?;
    Ok(PreparedData {
        train: train_raw.normalize(&stats)?,
        test: test_raw.normalize(&stats)?,
    })
}
