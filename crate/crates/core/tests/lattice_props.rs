use proptest::prelude::*;
use toric_core::lattice::{determinant, is_primitive, primitive_part, UnimodularBasis};
use toric_core::LatticeVector;

fn vector(dim: usize) -> impl Strategy<Value = LatticeVector> {
    prop::collection::vec(-50i64..=50, dim).prop_map(LatticeVector::new)
}

/// A unimodular basis built from elementary row operations on the identity.
fn unimodular(dim: usize) -> impl Strategy<Value = Vec<LatticeVector>> {
    prop::collection::vec((0..dim, 0..dim, -3i64..=3), 0..12).prop_map(move |ops| {
        let mut rows: Vec<Vec<i64>> = (0..dim).map(|i| (0..dim).map(|j| i64::from(i == j)).collect()).collect();
        for (i, j, k) in ops {
            if i != j {
                let src = rows[j].clone();
                for (x, y) in rows[i].iter_mut().zip(src) {
                    *x += k * y;
                }
            }
        }
        rows.into_iter().map(LatticeVector::new).collect()
    })
}

proptest! {
    #[test]
    fn primitive_part_divides_out_the_gcd(v in (1usize..=5).prop_flat_map(vector)) {
        prop_assume!(!v.is_zero());
        let (w, g) = primitive_part(&v).unwrap();
        prop_assert!(g > 0 && is_primitive(&w));
        prop_assert_eq!(w.checked_scale(g).unwrap(), v);
    }

    #[test]
    fn elementary_products_are_unimodular(basis in (1usize..=4).prop_flat_map(unimodular)) {
        prop_assert_eq!(determinant(&basis).unwrap().abs(), 1);
        let b = UnimodularBasis::new(&basis).unwrap().expect("unimodular");
        for (i, d) in b.dual().iter().enumerate() {
            for (j, v) in basis.iter().enumerate() {
                prop_assert_eq!(d.dot(v).unwrap(), i64::from(i == j));
            }
        }
    }

    #[test]
    fn coordinates_reconstruct_points(
        (basis, p) in (1usize..=4).prop_flat_map(|d| (unimodular(d), vector(d)))
    ) {
        let b = UnimodularBasis::new(&basis).unwrap().expect("unimodular");
        let coords = b.coordinates(&p).unwrap();
        let mut sum = LatticeVector::zero(p.dim());
        for (v, c) in basis.iter().zip(coords) {
            sum = sum.checked_add(&v.checked_scale(c).unwrap()).unwrap();
        }
        prop_assert_eq!(sum, p);
    }
}
