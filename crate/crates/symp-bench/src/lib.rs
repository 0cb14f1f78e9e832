//! Shared fixtures for the criterion benchmarks.

use symp_core::engine::{Engine, Kind};
use symp_core::model::InvariantModel;

pub fn kt() -> InvariantModel {
    InvariantModel::builtin("kt").expect("kt is built in")
}

pub fn torus3() -> InvariantModel {
    InvariantModel::builtin("torus3").expect("torus3 is built in")
}

/// Full dimension table for every kind and degree of a model.
pub fn full_table(model: &InvariantModel) -> Vec<(Kind, usize, usize)> {
    let engine = Engine::new(model).expect("valid model");
    let mut out = Vec::new();
    for kind in Kind::FULL {
        for k in 0..=model.dim() {
            let dim = engine.cohomology(kind, k, false).expect("computes").dim;
            out.push((kind, k, dim));
        }
    }
    out
}
