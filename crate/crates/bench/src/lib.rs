//! Criterion benchmarks for the core kernels; see `benches/`.

use swanson_core::{ExtensionSpec, ModelParams};

/// Non-Hermitian model used by every benchmark.
pub fn bench_model() -> ModelParams {
    ModelParams::new(2.0, 0.5, 0.25).expect("valid parameters")
}

pub fn bench_extension() -> ExtensionSpec {
    ExtensionSpec::new(2).expect("even seed")
}
