//! Criterion benchmarks for ggm-core live in `benches/`.
