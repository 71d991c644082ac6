//! Criterion benchmarks for `approxmu-core`; see `benches/`.
