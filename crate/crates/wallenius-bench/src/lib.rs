//! Shared fixtures for the benchmark targets.

use wallenius::{simulate_dataset, Dataset, UrnSpec, WeightVector};

pub fn urn3() -> UrnSpec {
    UrnSpec::with_default_labels(vec![10, 10, 10]).unwrap()
}

pub fn weights3() -> WeightVector {
    WeightVector::new(vec![0.5, 0.3, 0.2]).unwrap()
}

/// The reference workload: simulated 3-category tables.
pub fn dataset3(tables: usize) -> Dataset {
    simulate_dataset(&urn3(), &weights3(), 10, tables, 7).unwrap()
}
