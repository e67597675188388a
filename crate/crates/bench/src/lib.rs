//! Benchmarks for `flagorbits` live in `benches/`.
