//! Criterion benchmarks for the airyqc engines; see `benches/`.
