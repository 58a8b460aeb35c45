//! The exact LP and the primitive-collection search against slower, independent methods.

mod common;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use toric_core::lattice::nonneg_rational_combination;
use toric_core::primitive_collections;

/// Exact solution of `sum l_i cols[i] = t` when the columns are independent.
fn solve_independent(cols: &[&Vec<i64>], t: &[i64]) -> Option<Vec<BigRational>> {
    let q = |x: i64| BigRational::from_integer(x.into());
    let k = cols.len();
    // Augmented rows [a_r1 .. a_rk | t_r].
    let mut m: Vec<Vec<BigRational>> = t
        .iter()
        .enumerate()
        .map(|(r, &tr)| cols.iter().map(|c| q(c[r])).chain([q(tr)]).collect())
        .collect();
    for col in 0..k {
        let p = (col..m.len()).find(|&r| !m[r][col].is_zero())?; // dependent columns
        m.swap(col, p);
        let pivot = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x = &*x / &pivot;
        }
        for r in 0..m.len() {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let src = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(&src) {
                    *x = &*x - &f * y;
                }
            }
        }
    }
    if m[k..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    Some(m[..k].iter().map(|r| r[k].clone()).collect())
}

/// Caratheodory: `t` lies in the cone iff it is a nonnegative combination of
/// an independent subset of the generators.
fn caratheodory_feasible(gens: &[Vec<i64>], target: &[i64]) -> bool {
    (0u32..1 << gens.len()).any(|mask| {
        let cols: Vec<&Vec<i64>> = (0..gens.len()).filter(|i| mask >> i & 1 == 1).map(|i| &gens[i]).collect();
        cols.len() <= target.len()
            && solve_independent(&cols, target).is_some_and(|l| l.iter().all(|x| !x.is_negative()))
    })
}

fn small_vectors(dim: usize, count: std::ops::Range<usize>) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, dim), count)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn simplex_agrees_with_caratheodory(
        (gens, target) in (1usize..=4).prop_flat_map(|d| (small_vectors(d, 1..6), prop::collection::vec(-4i64..=4, d)))
    ) {
        let found = nonneg_rational_combination(&gens, &target).unwrap();
        prop_assert_eq!(found.is_some(), caratheodory_feasible(&gens, &target));
        if let Some(l) = found {
            prop_assert!(l.iter().all(|x| !x.is_negative()));
            for (r, t) in target.iter().enumerate() {
                let sum: BigRational = gens.iter().zip(&l).map(|(g, x)| x * BigRational::from_integer(g[r].into())).sum();
                prop_assert_eq!(sum, BigRational::from_integer((*t).into()));
            }
        }
    }
}

#[test]
fn oracle_sanity() {
    assert!(caratheodory_feasible(&[vec![1, 0], vec![0, 1]], &[2, 3]));
    assert!(!caratheodory_feasible(&[vec![1, 0], vec![0, 1]], &[-1, 3]));
    assert!(caratheodory_feasible(&[vec![1, 1], vec![-1, -1]], &[0, 0]));
    assert!(BigRational::zero().is_zero());
}

#[test]
fn primitive_collections_match_subset_search() {
    for (name, fan) in common::corpus() {
        let fast: Vec<Vec<usize>> = primitive_collections(&fan).iter().map(|p| p.rays().to_vec()).collect();
        assert_eq!(fast, common::brute_force_primitive_collections(&fan), "{name}");
    }
}
