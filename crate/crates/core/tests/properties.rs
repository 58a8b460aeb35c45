//! Structural properties over a corpus of smooth complete fans.

mod common;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use toric_core::fan::{contract_along, lattice_canonical_key};
use toric_core::lattice::solve_rational;
use toric_core::mori::MoriConeSummary;
use toric_core::{
    anticanonical_degree, blow_down_candidates, curve_class, fan_isomorphism, is_projective,
    locate_relint, mori_cone, primitive_relations, refines, star_subdivide, validate_fan, Cone,
    Fan, LatticeVector, Rational,
};

/// Whether `p` is a positive combination of all rays of `cone`.
fn in_relint(fan: &Fan, cone: &Cone, p: &LatticeVector) -> bool {
    if cone.is_empty() {
        return p.is_zero();
    }
    let cols: Vec<Vec<Rational>> = cone
        .rays()
        .iter()
        .map(|&i| fan.vector(i).coords().iter().map(|&x| Rational::from_integer(x.into())).collect())
        .collect();
    let t: Vec<Rational> = p.coords().iter().map(|&x| Rational::from_integer(x.into())).collect();
    solve_rational(&cols, &t).is_some_and(|l| l.iter().all(|x| x > &Rational::from_integer(0.into())))
}

#[test]
fn catalog_and_corpus_validate() {
    for (name, fan) in common::corpus() {
        let r = validate_fan(&fan);
        assert!(r.is_valid(), "{name}: {:?}", r.witnesses);
    }
}

#[test]
fn deleting_any_maximal_cone_is_rejected() {
    for (name, fan) in common::corpus() {
        for skip in 0..fan.max_cones().len() {
            let cones: Vec<Cone> = fan
                .max_cones()
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, c)| c.clone())
                .collect();
            let broken = Fan::new(fan.dim(), fan.generators().to_vec(), cones).unwrap();
            assert!(!validate_fan(&broken).is_valid(), "{name} without cone {skip}");
        }
    }
}

#[test]
fn relative_interiors_partition_the_lattice() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for (name, fan) in common::corpus().into_iter().filter(|(n, _)| !n.contains('+')) {
        let cones = fan.all_cones();
        for _ in 0..1000 {
            let p = LatticeVector::new((0..fan.dim()).map(|_| rng.gen_range(-6..=6)).collect());
            let (cone, coeffs) = locate_relint(&fan, &p).unwrap();
            assert!(coeffs.iter().all(|&c| c > 0), "{name}: {p}");
            let rebuilt = LatticeVector::checked_sum(
                fan.dim(),
                cone.rays().iter().zip(&coeffs).map(|(&i, &c)| fan.vector(i).checked_scale(c).unwrap()).collect::<Vec<_>>().iter(),
            )
            .unwrap();
            assert_eq!(rebuilt, p, "{name}");
            let holders: Vec<&Cone> = cones.iter().filter(|c| in_relint(&fan, c, &p)).collect();
            assert_eq!(holders, [&cone], "{name}: {p}");
        }
    }
}

#[test]
fn blow_up_then_down_is_the_identity() {
    for (name, fan) in common::corpus() {
        for cone in fan.all_cones().into_iter().filter(|c| c.len() >= 2) {
            let up = star_subdivide(&fan, &cone, None).unwrap();
            let around = fan.max_cones().iter().filter(|m| cone.is_subset_of(m)).count();
            assert_eq!(up.max_cones().len(), fan.max_cones().len() + (cone.len() - 1) * around);
            let new_ray = up.generators().len() - 1;
            assert!(refines(&up, &fan).unwrap());
            let down = contract_along(&up, new_ray, cone.rays()).unwrap();
            assert_eq!(down, fan, "{name} at {}", fan.cone_label(&cone));
        }
    }
}

#[test]
fn anticanonical_degree_is_relation_degree() {
    for (name, fan) in common::corpus() {
        for rel in primitive_relations(&fan).unwrap() {
            assert_eq!(anticanonical_degree(&curve_class(&fan, &rel)), rel.degree, "{name}");
        }
    }
}

fn extremal_in(summary: &MoriConeSummary, collection: &[usize]) -> bool {
    summary
        .entries
        .iter()
        .find(|e| e.relation.collection.rays() == collection)
        .expect("relation present")
        .extremal
}

#[test]
fn blow_down_target_projective_iff_class_extremal() {
    let mut checked = 0;
    for (name, fan) in common::corpus() {
        let summary = mori_cone(&fan).unwrap();
        for cand in blow_down_candidates(&fan).unwrap() {
            let Some(target) = cand.target else { continue };
            assert_eq!(
                extremal_in(&summary, cand.relation.collection.rays()),
                is_projective(&target).unwrap(),
                "{name}: {}",
                cand.relation.describe(&fan)
            );
            checked += 1;
        }
    }
    assert!(checked > 50);
}

#[test]
fn refinement_is_reflexive_and_transitive() {
    for (name, fan) in common::corpus() {
        assert!(refines(&fan, &fan).unwrap(), "{name}");
        let cones: Vec<Cone> = fan.all_cones().into_iter().filter(|c| c.len() >= 2).take(3).collect();
        for c in cones {
            let once = star_subdivide(&fan, &c, None).unwrap();
            let extra = once.all_cones().into_iter().rev().find(|c| c.len() >= 2).unwrap();
            let twice = star_subdivide(&once, &extra, None).unwrap();
            assert!(refines(&twice, &once).unwrap() && refines(&once, &fan).unwrap());
            assert!(refines(&twice, &fan).unwrap(), "{name}");
            assert!(!refines(&fan, &once).unwrap(), "{name}");
        }
    }
}

#[test]
fn isomorphism_is_an_equivalence() {
    let fans: Vec<Fan> = common::corpus().into_iter().map(|(_, f)| f).filter(|f| f.dim() == 2).collect();
    for a in &fans {
        assert!(fan_isomorphism(a, a).unwrap().is_some());
    }
    let iso = |a: &Fan, b: &Fan| fan_isomorphism(a, b).unwrap().is_some();
    for a in &fans {
        for b in &fans {
            let ab = iso(a, b);
            assert_eq!(ab, iso(b, a));
            assert_eq!(ab, lattice_canonical_key(a).unwrap() == lattice_canonical_key(b).unwrap());
            if let Some(m) = fan_isomorphism(a, b).unwrap() {
                for g in a.generators() {
                    let image = m.apply(&g.vector).unwrap();
                    assert!(b.generators().iter().any(|h| h.vector == image));
                }
            }
        }
    }
    let sample: Vec<&Fan> = fans.iter().step_by(3).collect();
    for a in &sample {
        for b in &sample {
            for c in &sample {
                if iso(a, b) && iso(b, c) {
                    assert!(iso(a, c));
                }
            }
        }
    }
}
