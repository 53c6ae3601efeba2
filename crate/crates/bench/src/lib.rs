//! Placeholder library target; the crate exists to host the criterion
//! benchmarks under `benches/`.
