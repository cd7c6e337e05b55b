//! Seeded synthetic traffic generators for fixtures and desk-scale
//! benchmarks: a KDD-style connection-record generator with class-dependent
//! feature distributions, a linearly separable two-feature set, and a
//! one-informative-feature set for feature-selection fixtures.

use std::path::Path;

use crate::data::{Cell, RawRecord, Schema};
use crate::error::Result;
use crate::rng::DeterministicRng;
use crate::textfile;

/// Traffic classes the KDD-style generator emits, with their mix weights.
/// Denial-of-service floods dominate the attack share, the way the public
/// capture's training split does.
const CLASS_MIX: [(&str, f64); 7] = [
    ("normal", 0.50),
    ("neptune", 0.24),
    ("smurf", 0.15),
    ("satan", 0.06),
    ("ipsweep", 0.03),
    ("guess_passwd", 0.015),
    ("buffer_overflow", 0.005),
];

/// One connection record under construction; fields default to quiet
/// values and each class overrides its own signature.
struct KddRow {
    duration: f64,
    protocol_type: &'static str,
    service: &'static str,
    flag: &'static str,
    src_bytes: f64,
    dst_bytes: f64,
    land: f64,
    wrong_fragment: f64,
    urgent: f64,
    hot: f64,
    num_failed_logins: f64,
    logged_in: f64,
    num_compromised: f64,
    root_shell: f64,
    su_attempted: f64,
    num_root: f64,
    num_file_creations: f64,
    num_shells: f64,
    num_access_files: f64,
    num_outbound_cmds: f64,
    is_host_login: f64,
    is_guest_login: f64,
    count: f64,
    srv_count: f64,
    serror_rate: f64,
    srv_serror_rate: f64,
    rerror_rate: f64,
    srv_rerror_rate: f64,
    same_srv_rate: f64,
    diff_srv_rate: f64,
    srv_diff_host_rate: f64,
    dst_host_count: f64,
    dst_host_srv_count: f64,
    dst_host_same_srv_rate: f64,
    dst_host_diff_srv_rate: f64,
    dst_host_same_src_port_rate: f64,
    dst_host_srv_diff_host_rate: f64,
    dst_host_serror_rate: f64,
    dst_host_srv_serror_rate: f64,
    dst_host_rerror_rate: f64,
    dst_host_srv_rerror_rate: f64,
}

impl Default for KddRow {
    fn default() -> Self {
        Self {
            duration: 0.0,
            protocol_type: "tcp",
            service: "http",
            flag: "SF",
            src_bytes: 0.0,
            dst_bytes: 0.0,
            land: 0.0,
            wrong_fragment: 0.0,
            urgent: 0.0,
            hot: 0.0,
            num_failed_logins: 0.0,
            logged_in: 0.0,
            num_compromised: 0.0,
            root_shell: 0.0,
            su_attempted: 0.0,
            num_root: 0.0,
            num_file_creations: 0.0,
            num_shells: 0.0,
            num_access_files: 0.0,
            num_outbound_cmds: 0.0,
            is_host_login: 0.0,
            is_guest_login: 0.0,
            count: 1.0,
            srv_count: 1.0,
            serror_rate: 0.0,
            srv_serror_rate: 0.0,
            rerror_rate: 0.0,
            srv_rerror_rate: 0.0,
            same_srv_rate: 1.0,
            diff_srv_rate: 0.0,
            srv_diff_host_rate: 0.0,
            dst_host_count: 1.0,
            dst_host_srv_count: 1.0,
            dst_host_same_srv_rate: 1.0,
            dst_host_diff_srv_rate: 0.0,
            dst_host_same_src_port_rate: 0.0,
            dst_host_srv_diff_host_rate: 0.0,
            dst_host_serror_rate: 0.0,
            dst_host_srv_serror_rate: 0.0,
            dst_host_rerror_rate: 0.0,
            dst_host_srv_rerror_rate: 0.0,
        }
    }
}

impl KddRow {
    /// Flatten into cells in the [`Schema::kdd41`] column order.
    fn into_cells(self) -> Vec<Cell> {
        vec![
            Cell::Number(self.duration),
            Cell::Text(self.protocol_type.to_string()),
            Cell::Text(self.service.to_string()),
            Cell::Text(self.flag.to_string()),
            Cell::Number(self.src_bytes),
            Cell::Number(self.dst_bytes),
            Cell::Number(self.land),
            Cell::Number(self.wrong_fragment),
            Cell::Number(self.urgent),
            Cell::Number(self.hot),
            Cell::Number(self.num_failed_logins),
            Cell::Number(self.logged_in),
            Cell::Number(self.num_compromised),
            Cell::Number(self.root_shell),
            Cell::Number(self.su_attempted),
            Cell::Number(self.num_root),
            Cell::Number(self.num_file_creations),
            Cell::Number(self.num_shells),
            Cell::Number(self.num_access_files),
            Cell::Number(self.num_outbound_cmds),
            Cell::Number(self.is_host_login),
            Cell::Number(self.is_guest_login),
            Cell::Number(self.count),
            Cell::Number(self.srv_count),
            Cell::Number(self.serror_rate),
            Cell::Number(self.srv_serror_rate),
            Cell::Number(self.rerror_rate),
            Cell::Number(self.srv_rerror_rate),
            Cell::Number(self.same_srv_rate),
            Cell::Number(self.diff_srv_rate),
            Cell::Number(self.srv_diff_host_rate),
            Cell::Number(self.dst_host_count),
            Cell::Number(self.dst_host_srv_count),
            Cell::Number(self.dst_host_same_srv_rate),
            Cell::Number(self.dst_host_diff_srv_rate),
            Cell::Number(self.dst_host_same_src_port_rate),
            Cell::Number(self.dst_host_srv_diff_host_rate),
            Cell::Number(self.dst_host_serror_rate),
            Cell::Number(self.dst_host_srv_serror_rate),
            Cell::Number(self.dst_host_rerror_rate),
            Cell::Number(self.dst_host_srv_rerror_rate),
        ]
    }
}

fn uniform_int(rng: &mut DeterministicRng, lo: u32, hi: u32) -> f64 {
    f64::from(lo + rng.index((hi - lo + 1) as usize) as u32)
}

fn rate(rng: &mut DeterministicRng, lo: f64, hi: f64) -> f64 {
    // Two-decimal rates, the way the original files quantize them.
    (rng.uniform(lo, hi) * 100.0).round() / 100.0
}

fn pick<'a>(rng: &mut DeterministicRng, choices: &[(&'a str, f64)]) -> &'a str {
    let total: f64 = choices.iter().map(|(_, w)| w).sum();
    let mut draw = rng.uniform(0.0, total);
    for (value, weight) in choices {
        if draw < *weight {
            return value;
        }
        draw -= weight;
    }
    choices.last().expect("non-empty choices").0
}

fn normal_row(rng: &mut DeterministicRng) -> KddRow {
    let mut row = KddRow {
        protocol_type: pick(rng, &[("tcp", 0.7), ("udp", 0.2), ("icmp", 0.1)]),
        service: pick(
            rng,
            &[
                ("http", 0.5),
                ("smtp", 0.2),
                ("domain_u", 0.15),
                ("ftp_data", 0.1),
                ("other", 0.05),
            ],
        ),
        flag: pick(rng, &[("SF", 0.9), ("REJ", 0.05), ("RSTO", 0.03), ("S0", 0.02)]),
        src_bytes: uniform_int(rng, 100, 5000),
        dst_bytes: uniform_int(rng, 100, 8000),
        logged_in: f64::from(rng.open01() < 0.85),
        count: uniform_int(rng, 1, 20),
        srv_count: uniform_int(rng, 1, 20),
        serror_rate: rate(rng, 0.0, 0.04),
        rerror_rate: rate(rng, 0.0, 0.04),
        same_srv_rate: rate(rng, 0.85, 1.0),
        diff_srv_rate: rate(rng, 0.0, 0.1),
        dst_host_count: uniform_int(rng, 10, 255),
        dst_host_srv_count: uniform_int(rng, 60, 255),
        dst_host_same_srv_rate: rate(rng, 0.8, 1.0),
        dst_host_diff_srv_rate: rate(rng, 0.0, 0.08),
        dst_host_serror_rate: rate(rng, 0.0, 0.04),
        ..KddRow::default()
    };
    if rng.open01() < 0.4 {
        row.duration = uniform_int(rng, 1, 1000);
    }
    row.srv_serror_rate = row.serror_rate;
    row.dst_host_srv_serror_rate = row.dst_host_serror_rate;
    row
}

fn neptune_row(rng: &mut DeterministicRng) -> KddRow {
    let serror = rate(rng, 0.85, 1.0);
    KddRow {
        service: pick(rng, &[("private", 0.7), ("telnet", 0.15), ("finger", 0.15)]),
        flag: pick(rng, &[("S0", 0.9), ("REJ", 0.1)]),
        count: uniform_int(rng, 150, 511),
        srv_count: uniform_int(rng, 1, 20),
        serror_rate: serror,
        srv_serror_rate: rate(rng, 0.85, 1.0),
        same_srv_rate: rate(rng, 0.0, 0.12),
        diff_srv_rate: rate(rng, 0.03, 0.3),
        dst_host_count: 255.0,
        dst_host_srv_count: uniform_int(rng, 1, 20),
        dst_host_same_srv_rate: rate(rng, 0.0, 0.1),
        dst_host_diff_srv_rate: rate(rng, 0.03, 0.3),
        dst_host_serror_rate: serror,
        dst_host_srv_serror_rate: rate(rng, 0.8, 1.0),
        ..KddRow::default()
    }
}

fn smurf_row(rng: &mut DeterministicRng) -> KddRow {
    KddRow {
        protocol_type: "icmp",
        service: "ecr_i",
        src_bytes: uniform_int(rng, 508, 1032),
        count: uniform_int(rng, 250, 511),
        srv_count: uniform_int(rng, 250, 511),
        dst_host_count: 255.0,
        dst_host_srv_count: 255.0,
        dst_host_same_src_port_rate: rate(rng, 0.9, 1.0),
        ..KddRow::default()
    }
}

fn satan_row(rng: &mut DeterministicRng) -> KddRow {
    KddRow {
        protocol_type: pick(rng, &[("tcp", 0.8), ("udp", 0.2)]),
        service: pick(rng, &[("other", 0.4), ("private", 0.4), ("http", 0.2)]),
        flag: pick(rng, &[("REJ", 0.5), ("SF", 0.3), ("RSTR", 0.2)]),
        src_bytes: uniform_int(rng, 0, 60),
        dst_bytes: uniform_int(rng, 0, 200),
        count: uniform_int(rng, 20, 120),
        srv_count: uniform_int(rng, 1, 10),
        rerror_rate: rate(rng, 0.4, 1.0),
        srv_rerror_rate: rate(rng, 0.4, 1.0),
        same_srv_rate: rate(rng, 0.0, 0.25),
        diff_srv_rate: rate(rng, 0.4, 1.0),
        dst_host_count: uniform_int(rng, 100, 255),
        dst_host_srv_count: uniform_int(rng, 1, 30),
        dst_host_same_srv_rate: rate(rng, 0.0, 0.15),
        dst_host_diff_srv_rate: rate(rng, 0.4, 0.9),
        dst_host_rerror_rate: rate(rng, 0.3, 0.9),
        dst_host_srv_rerror_rate: rate(rng, 0.3, 0.9),
        ..KddRow::default()
    }
}

fn ipsweep_row(rng: &mut DeterministicRng) -> KddRow {
    KddRow {
        protocol_type: pick(rng, &[("icmp", 0.7), ("tcp", 0.3)]),
        service: pick(rng, &[("eco_i", 0.7), ("other", 0.3)]),
        src_bytes: uniform_int(rng, 8, 20),
        count: uniform_int(rng, 1, 10),
        srv_count: uniform_int(rng, 1, 10),
        srv_diff_host_rate: rate(rng, 0.2, 0.8),
        dst_host_count: uniform_int(rng, 1, 60),
        dst_host_srv_count: uniform_int(rng, 1, 10),
        dst_host_same_srv_rate: rate(rng, 0.2, 0.6),
        dst_host_srv_diff_host_rate: rate(rng, 0.2, 0.8),
        ..KddRow::default()
    }
}

fn guess_passwd_row(rng: &mut DeterministicRng) -> KddRow {
    KddRow {
        duration: uniform_int(rng, 1, 10),
        service: pick(rng, &[("ftp", 0.5), ("telnet", 0.5)]),
        flag: pick(rng, &[("SF", 0.7), ("RSTO", 0.3)]),
        src_bytes: uniform_int(rng, 100, 300),
        dst_bytes: uniform_int(rng, 100, 500),
        hot: uniform_int(rng, 0, 2),
        num_failed_logins: uniform_int(rng, 1, 6),
        count: uniform_int(rng, 1, 5),
        srv_count: uniform_int(rng, 1, 5),
        dst_host_count: uniform_int(rng, 1, 40),
        dst_host_srv_count: uniform_int(rng, 1, 10),
        ..KddRow::default()
    }
}

fn buffer_overflow_row(rng: &mut DeterministicRng) -> KddRow {
    KddRow {
        duration: uniform_int(rng, 50, 300),
        service: pick(rng, &[("telnet", 0.6), ("ftp", 0.4)]),
        src_bytes: uniform_int(rng, 1000, 6000),
        dst_bytes: uniform_int(rng, 200, 2000),
        hot: uniform_int(rng, 1, 5),
        logged_in: 1.0,
        num_compromised: uniform_int(rng, 0, 3),
        root_shell: f64::from(rng.open01() < 0.7),
        num_root: uniform_int(rng, 0, 4),
        num_file_creations: uniform_int(rng, 0, 4),
        count: uniform_int(rng, 1, 5),
        srv_count: uniform_int(rng, 1, 5),
        dst_host_count: uniform_int(rng, 1, 30),
        dst_host_srv_count: uniform_int(rng, 1, 10),
        ..KddRow::default()
    }
}

/// KDD-style labeled connection records with class-dependent signatures.
/// Labels carry the trailing period of the original files.
pub fn kdd_like(rows: usize, seed: u64) -> (Schema, Vec<RawRecord>) {
    let mut rng = DeterministicRng::from_seed(seed);
    let records = (0..rows)
        .map(|_| {
            let class = pick(&mut rng, &CLASS_MIX);
            let row = match class {
                "normal" => normal_row(&mut rng),
                "neptune" => neptune_row(&mut rng),
                "smurf" => smurf_row(&mut rng),
                "satan" => satan_row(&mut rng),
                "ipsweep" => ipsweep_row(&mut rng),
                "guess_passwd" => guess_passwd_row(&mut rng),
                _ => buffer_overflow_row(&mut rng),
            };
            RawRecord {
                cells: row.into_cells(),
                label: format!("{class}."),
            }
        })
        .collect();
    (Schema::kdd41(), records)
}

/// Two uniform features, linearly separable with a margin: rows whose
/// distance to the boundary `x0 + x1 = 1` is below the margin are
/// resampled, so a unit-weight classifier separates the set perfectly.
pub fn separable2(rows: usize, seed: u64) -> (Schema, Vec<RawRecord>) {
    const MARGIN: f64 = 0.2;
    let mut rng = DeterministicRng::from_seed(seed);
    let records = (0..rows)
        .map(|_| {
            let (x0, x1) = loop {
                let x0 = rng.uniform(0.0, 1.0);
                let x1 = rng.uniform(0.0, 1.0);
                if (x0 + x1 - 1.0).abs() >= MARGIN {
                    break (x0, x1);
                }
            };
            let label = if x0 + x1 > 1.0 { "smurf" } else { "normal" };
            RawRecord {
                cells: vec![Cell::Number(x0), Cell::Number(x1)],
                label: label.to_string(),
            }
        })
        .collect();
    (
        Schema::all_numeric(2).expect("two-feature schema"),
        records,
    )
}

/// Feature-selection fixture: feature 0 equals the label exactly and the
/// remaining `noise_features` are uniform noise, so feature 0 is uniquely
/// error-minimizing. Labels alternate for an exact class balance.
pub fn one_informative(rows: usize, noise_features: usize, seed: u64) -> (Schema, Vec<RawRecord>) {
    let mut rng = DeterministicRng::from_seed(seed);
    let records = (0..rows)
        .map(|i| {
            let label = (i % 2) as u8;
            let mut cells = Vec::with_capacity(noise_features + 1);
            cells.push(Cell::Number(f64::from(label)));
            for _ in 0..noise_features {
                cells.push(Cell::Number(rng.uniform(0.0, 1.0)));
            }
            RawRecord {
                cells,
                label: if label == 1 { "smurf" } else { "normal" }.to_string(),
            }
        })
        .collect();
    (
        Schema::all_numeric(noise_features + 1).expect("fixture schema"),
        records,
    )
}

/// Write records as a comma-separated file in schema column order (no
/// header, label last), the layout [`crate::data::load_csv`] reads back.
pub fn write_csv(path: &Path, records: &[RawRecord]) -> Result<()> {
    let mut out = String::new();
    for record in records {
        let mut first = true;
        for cell in &record.cells {
            if !first {
                out.push(',');
            }
            first = false;
            match cell {
                Cell::Number(v) => out.push_str(&v.to_string()),
                Cell::Text(v) => out.push_str(v),
            }
        }
        out.push(',');
        out.push_str(&record.label);
        out.push('\n');
    }
    textfile::write_text(path, &out)
}
