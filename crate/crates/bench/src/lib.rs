//! Criterion benchmarks for the `tswave` kernels; see `benches/`.
