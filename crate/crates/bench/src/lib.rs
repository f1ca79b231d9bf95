//! Criterion benchmarks for the sweep and factoring hot paths; see `benches/`.
