//! Criterion benchmarks; run with `cargo bench -p ea-lab-bench`.
