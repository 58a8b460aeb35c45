//! Shared fixtures for the benchmarks.

use toric_core::{paper_tower, Fan};

/// `(X, W, Y)` from the blow-up tower over `P4`.
pub fn tower() -> (Fan, Fan, Fan) {
    let t = paper_tower().expect("the tower is built from fixed data");
    (t.x, t.w, t.y)
}
