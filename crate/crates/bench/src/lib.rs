//! Criterion benchmarks for `eigensign`; see `benches/`.
