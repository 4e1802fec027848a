//! Criterion benchmarks for `vpv-core` live in `benches/`.
