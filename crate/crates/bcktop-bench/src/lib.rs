//! Benchmark-only crate; see `benches/topology.rs`.
