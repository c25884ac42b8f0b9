//! Benchmark harness for the superlie kernels; see `benches/`.
