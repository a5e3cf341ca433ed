//! Criterion benchmarks for `fracterm-core`; see `benches/fracterm.rs`.
