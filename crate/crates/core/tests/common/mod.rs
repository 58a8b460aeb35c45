#![allow(dead_code)]

use toric_core::catalog::catalog;
use toric_core::{enumerate_fano, star_subdivide, Fan};

/// Catalog fans, the Fano surfaces and the line, and every blow-up of the
/// catalog fans of dimension at most 3 along a cone of dimension >= 2.
pub fn corpus() -> Vec<(String, Fan)> {
    let mut out = Vec::new();
    for e in catalog().unwrap() {
        out.push((e.key.to_string(), e.fan));
    }
    for d in [1, 2] {
        for (i, f) in enumerate_fano(d).unwrap().into_iter().enumerate() {
            out.push((format!("fano{d}-{i}"), f));
        }
    }
    let bases: Vec<(String, Fan)> = out.iter().filter(|(_, f)| (2..=3).contains(&f.dim())).cloned().collect();
    for (name, fan) in bases {
        for cone in fan.all_cones().into_iter().filter(|c| c.len() >= 2) {
            let label = fan.cone_label(&cone);
            out.push((format!("{name}+{label}"), star_subdivide(&fan, &cone, None).unwrap()));
        }
    }
    out
}

/// Minimal non-faces by exhaustive subset search.
pub fn brute_force_primitive_collections(fan: &Fan) -> Vec<Vec<usize>> {
    let n = fan.generators().len();
    let max: Vec<u64> = fan.max_cones().iter().map(|c| c.mask()).collect();
    let is_cone = |s: u64| max.iter().any(|&m| s & !m == 0);
    let mut out = Vec::new();
    for s in 1u64..(1 << n) {
        if is_cone(s) {
            continue;
        }
        if (0..n).filter(|&i| s >> i & 1 == 1).all(|i| is_cone(s & !(1 << i))) {
            out.push((0..n).filter(|&i| s >> i & 1 == 1).collect());
        }
    }
    out.sort();
    out
}
