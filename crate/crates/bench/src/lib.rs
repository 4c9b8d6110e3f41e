//! Benchmark-only crate; the measurements live in `benches/degree_tables.rs`.
