//! Criterion benchmarks for the `kplanar-core` pipeline; see `benches/`.
