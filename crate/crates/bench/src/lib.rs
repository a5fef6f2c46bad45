//! Shared helpers for the benchmark targets.

use subshift_core::fixtures;
use subshift_core::shift::ShiftSpec;

pub fn golden_mean() -> ShiftSpec {
    fixtures::fixture("golden-mean", None)
        .unwrap()
        .spec
        .unwrap()
}

pub fn context_free(bound: u32) -> ShiftSpec {
    fixtures::fixture("context-free", Some(bound))
        .unwrap()
        .spec
        .unwrap()
}
