//! Shared loaders for the committed fixture files.
#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;
use unilat::io;
use unilat::{BinOpTable, Lattice, UnaryOpTable};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).expect("fixture file")
}

pub fn lattice(name: &str) -> Arc<Lattice> {
    let raw = io::parse_lattice_raw(&fixture_text(name)).expect("parse");
    Arc::new(io::build_lattice(&raw).expect("build"))
}

pub fn table(name: &str, lat: &Arc<Lattice>) -> BinOpTable {
    let raw = io::parse_table_raw(&fixture_text(name)).expect("parse");
    io::resolve_table(&raw, lat.clone()).expect("resolve")
}

pub fn unary(name: &str, lat: &Arc<Lattice>) -> UnaryOpTable {
    let raw = io::parse_unary_raw(&fixture_text(name)).expect("parse");
    io::resolve_unary(&raw, lat.clone()).expect("resolve")
}
