//! Harris Hawks optimization of multilayer perceptrons for network
//! intrusion detection.
//!
//! The crate wires a swarm optimizer ([`hho`]) to a small sigmoid network
//! ([`mlp`]) in two roles: evolving the network's weights and biases to
//! minimize detection error ([`train`]), and driving wrapper feature
//! selection over traffic features ([`featsel`]). [`data`] ingests KDD-style
//! connection CSVs (schema-driven parsing, categorical encoding, min-max
//! normalization, seeded splits), [`metrics`] scores detectors, and
//! [`synth`] generates seeded traffic fixtures. Every artifact the pipeline
//! writes is plain text stamped with a content digest, and every stage is
//! deterministic for a fixed seed.

pub mod data;
pub mod digest;
pub mod error;
pub mod featsel;
pub mod hho;
pub mod manifest;
pub mod metrics;
pub mod mlp;
pub mod rng;
pub mod synth;
pub mod train;

mod textfile;

pub use error::{Error, Result};
