//! Criterion benchmarks for the determinant scans live in `benches/`.
