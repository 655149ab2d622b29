//! Criterion benchmarks for the construction and sweep routines; see
//! `benches/construction.rs`.
