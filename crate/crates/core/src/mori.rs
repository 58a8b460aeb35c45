//! Primitive collections and relations, curve classes, and the Mori cone.
//!
//! For a smooth complete fan the Mori cone is generated by the classes of the
//! primitive relations, so extremality of a class is decided by an exact
//! cone-membership test against the other primitive classes. The Fano verdict
//! reads degrees directly off the relations.

use std::collections::BTreeSet;

use crate::fan::{Cone, Fan, Locator, Result};
use crate::lattice::{
    nonneg_rational_combination, strictly_positive_functional, LatticeVector, Rational,
    RationalVector,
};

/// A minimal set of rays spanning no cone.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimitiveCollection(Cone);

impl PrimitiveCollection {
    pub fn rays(&self) -> &[usize] {
        self.0.rays()
    }

    pub fn as_cone(&self) -> &Cone {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `x1 + ... + xh = a1 y1 + ... + ak yk`, with the `y`s spanning the cone whose
/// relative interior contains the left-hand side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveRelation {
    pub collection: PrimitiveCollection,
    pub target_cone: Cone,
    pub coefficients: Vec<i64>,
    pub degree: i64,
}

impl PrimitiveRelation {
    /// True for relations `x1 + ... + xh = x` that come from a blow-up.
    pub fn is_blowdown_shape(&self) -> bool {
        self.target_cone.len() == 1 && self.coefficients == [1] && self.collection.len() >= 2
    }

    /// `e1+e6 = e4+e5`, `e0+e7 = 0`, `x+y = 2z`.
    pub fn describe(&self, fan: &Fan) -> String {
        let lhs: Vec<&str> = self.collection.rays().iter().map(|&i| fan.name(i)).collect();
        let rhs: Vec<String> = self
            .target_cone
            .rays()
            .iter()
            .zip(&self.coefficients)
            .map(|(&i, &a)| {
                if a == 1 {
                    fan.name(i).to_string()
                } else {
                    format!("{a}{}", fan.name(i))
                }
            })
            .collect();
        let rhs = if rhs.is_empty() { "0".to_string() } else { rhs.join("+") };
        format!("{} = {}", lhs.join("+"), rhs)
    }
}

/// An integral relation among the generators, i.e. an element of `A_1(X)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveClass {
    entries: Vec<i64>,
}

impl CurveClass {
    /// Checks that `Σ entries[x] · x = 0` in the lattice.
    pub fn new(fan: &Fan, entries: Vec<i64>) -> Option<Self> {
        if entries.len() != fan.generators().len() {
            return None;
        }
        let mut sum = LatticeVector::zero(fan.dim());
        for (g, &a) in fan.generators().iter().zip(&entries) {
            sum = sum.checked_add(&g.vector.checked_scale(a).ok()?).ok()?;
        }
        sum.is_zero().then_some(CurveClass { entries })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// Intersection number with the invariant divisor `V(ray)`.
    pub fn intersection(&self, ray: usize) -> i64 {
        self.entries[ray]
    }

    pub fn to_vec(&self) -> Vec<i64> {
        self.entries.clone()
    }
}

/// Every primitive collection, in lexicographic order of sorted ray indices.
pub fn primitive_collections(fan: &Fan) -> Vec<PrimitiveCollection> {
    let n = fan.generators().len();
    let mut found = BTreeSet::new();
    // Deleting any element of a primitive collection leaves a cone, so every
    // primitive collection is a cone plus one ray.
    for face in fan.all_cones() {
        let f = face.mask();
        for x in 0..n {
            if f >> x & 1 == 1 {
                continue;
            }
            let p = f | 1 << x;
            if fan.is_cone_mask(p) {
                continue;
            }
            let minimal = (0..n)
                .filter(|&y| p >> y & 1 == 1)
                .all(|y| fan.is_cone_mask(p & !(1 << y)));
            if minimal {
                found.insert(Cone::from_mask(p));
            }
        }
    }
    found.into_iter().map(PrimitiveCollection).collect()
}

fn relation_with(fan: &Fan, locator: &Locator<'_>, p: &PrimitiveCollection) -> Result<PrimitiveRelation> {
    let sum = LatticeVector::checked_sum(fan.dim(), p.rays().iter().map(|&i| fan.vector(i)))?;
    let (target_cone, coefficients) = locator.locate(&sum)?;
    let degree = p.len() as i64 - coefficients.iter().sum::<i64>();
    Ok(PrimitiveRelation {
        collection: p.clone(),
        target_cone,
        coefficients,
        degree,
    })
}

pub fn primitive_relation(fan: &Fan, p: &PrimitiveCollection) -> Result<PrimitiveRelation> {
    relation_with(fan, &Locator::new(fan)?, p)
}

/// The primitive relations of all primitive collections, in collection order.
pub fn primitive_relations(fan: &Fan) -> Result<Vec<PrimitiveRelation>> {
    let locator = Locator::new(fan)?;
    primitive_collections(fan)
        .iter()
        .map(|p| relation_with(fan, &locator, p))
        .collect()
}

/// The relations of shape `x1 + ... + xh = x`.
pub fn blowdown_relations(fan: &Fan) -> Result<Vec<PrimitiveRelation>> {
    Ok(primitive_relations(fan)?
        .into_iter()
        .filter(PrimitiveRelation::is_blowdown_shape)
        .collect())
}

pub fn curve_class(fan: &Fan, rel: &PrimitiveRelation) -> CurveClass {
    let mut entries = vec![0i64; fan.generators().len()];
    for &x in rel.collection.rays() {
        entries[x] += 1;
    }
    for (&y, &a) in rel.target_cone.rays().iter().zip(&rel.coefficients) {
        entries[y] -= a;
    }
    CurveClass { entries }
}

/// `-K · C`, the sum of the intersections with all invariant divisors.
pub fn anticanonical_degree(class: &CurveClass) -> i64 {
    class.entries.iter().sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoriEntry {
    pub relation: PrimitiveRelation,
    pub class: CurveClass,
    pub extremal: bool,
    /// For a non-extremal class: nonnegative coefficients on other entries
    /// (by index) reproducing it.
    pub decomposition: Option<Vec<(usize, Rational)>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoriConeSummary {
    pub entries: Vec<MoriEntry>,
    pub picard_number: i64,
    pub strictly_convex: bool,
    /// A functional positive on every primitive class, when one exists.
    pub positive_functional: Option<RationalVector>,
}

impl MoriConeSummary {
    pub fn extremal_count(&self) -> usize {
        self.entries.iter().filter(|e| e.extremal).count()
    }
}

fn combination_over(
    classes: &[Vec<i64>],
    pool: &[usize],
    target: &[i64],
) -> Result<Option<Vec<(usize, Rational)>>> {
    let gens: Vec<Vec<i64>> = pool.iter().map(|&j| classes[j].clone()).collect();
    let coeffs = nonneg_rational_combination(&gens, &target.to_vec())?;
    Ok(coeffs.map(|c| {
        pool.iter()
            .copied()
            .zip(c)
            .filter(|(_, q)| *q != Rational::from_integer(0.into()))
            .collect()
    }))
}

fn positively_proportional(a: &[i64], b: &[i64]) -> bool {
    let Some(k) = a.iter().position(|&x| x != 0) else {
        return false;
    };
    if b[k] == 0 || (a[k] > 0) != (b[k] > 0) {
        return false;
    }
    a.iter()
        .zip(b)
        .all(|(&x, &y)| i128::from(x) * i128::from(b[k]) == i128::from(y) * i128::from(a[k]))
}

pub fn mori_cone(fan: &Fan) -> Result<MoriConeSummary> {
    let relations = primitive_relations(fan)?;
    let classes: Vec<Vec<i64>> = relations.iter().map(|r| curve_class(fan, r).to_vec()).collect();
    let all: Vec<usize> = (0..classes.len()).collect();

    let mut extremal = Vec::with_capacity(classes.len());
    let mut found = Vec::with_capacity(classes.len());
    for (i, c) in classes.iter().enumerate() {
        // Classes on the same ray as `c` must not count against its extremality.
        let others: Vec<usize> = all
            .iter()
            .copied()
            .filter(|&j| j != i && !positively_proportional(&classes[j], c))
            .collect();
        let combo = combination_over(&classes, &others, c)?;
        extremal.push(combo.is_none());
        found.push(combo);
    }

    // Prefer decompositions over the extremal classes when they exist.
    let extremal_pool: Vec<usize> = all.iter().copied().filter(|&j| extremal[j]).collect();
    let mut entries = Vec::with_capacity(classes.len());
    for (i, (relation, combo)) in relations.into_iter().zip(found).enumerate() {
        let decomposition = if extremal[i] {
            None
        } else {
            combination_over(&classes, &extremal_pool, &classes[i])?.or(combo)
        };
        entries.push(MoriEntry {
            class: CurveClass {
                entries: classes[i].clone(),
            },
            relation,
            extremal: extremal[i],
            decomposition,
        });
    }

    let positive_functional = if classes.is_empty() {
        None
    } else {
        strictly_positive_functional(&classes)?
    };
    Ok(MoriConeSummary {
        entries,
        picard_number: fan.picard_number(),
        strictly_convex: classes.is_empty() || positive_functional.is_some(),
        positive_functional,
    })
}

/// Kleiman: projective iff the Mori cone is strictly convex.
pub fn is_projective(fan: &Fan) -> Result<bool> {
    let relations = primitive_relations(fan)?;
    if relations.is_empty() {
        return Ok(true);
    }
    let classes: Vec<Vec<i64>> = relations.iter().map(|r| curve_class(fan, r).to_vec()).collect();
    Ok(strictly_positive_functional(&classes)?.is_some())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanoVerdict {
    pub fano: bool,
    /// Relations of degree `<= 0`.
    pub witnesses: Vec<PrimitiveRelation>,
}

/// Fano iff every primitive relation has strictly positive degree.
pub fn is_fano(fan: &Fan) -> Result<FanoVerdict> {
    let witnesses: Vec<PrimitiveRelation> = primitive_relations(fan)?
        .into_iter()
        .filter(|r| r.degree <= 0)
        .collect();
    Ok(FanoVerdict {
        fano: witnesses.is_empty(),
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{paper_tower, projective_space};

    fn names(fan: &Fan, p: &PrimitiveCollection) -> String {
        fan.set_label(p.rays())
    }

    #[test]
    fn collections_of_the_tower() {
        let t = paper_tower().unwrap();
        let p4: Vec<String> = primitive_collections(&t.p4).iter().map(|p| names(&t.p4, p)).collect();
        assert_eq!(p4, ["{e0,e1,e2,e3,e4}"]);
        let x: Vec<String> = primitive_collections(&t.x).iter().map(|p| names(&t.x, p)).collect();
        assert_eq!(x, ["{e0,e4,e5}", "{e1,e2,e3}"]);
        // {e0,e5,e6} survives the last blow-up: none of its 2-subsets contains
        // the center {e4,e5}.
        let y: Vec<String> = primitive_collections(&t.y).iter().map(|p| names(&t.y, p)).collect();
        assert_eq!(
            y,
            [
                "{e0,e5,e6}",
                "{e0,e7}",
                "{e1,e2,e3}",
                "{e1,e6}",
                "{e2,e3,e4}",
                "{e2,e3,e7}",
                "{e4,e5}"
            ]
        );
    }

    #[test]
    fn relation_examples() {
        let t = paper_tower().unwrap();
        let find = |fan: &Fan, names: &[&str]| {
            let c = fan.cone_by_names(names).unwrap();
            primitive_relations(fan)
                .unwrap()
                .into_iter()
                .find(|r| r.collection.as_cone() == &c)
                .unwrap()
        };
        let r = find(&t.x, &["e1", "e2", "e3"]);
        assert_eq!(r.describe(&t.x), "e1+e2+e3 = e5");
        assert_eq!(r.degree, 2);
        let r = find(&t.w, &["e1", "e6"]);
        assert_eq!(r.describe(&t.w), "e1+e6 = e4+e5");
        assert_eq!(r.degree, 0);
        let r = find(&t.p4, &["e0", "e1", "e2", "e3", "e4"]);
        assert_eq!(r.describe(&t.p4), "e0+e1+e2+e3+e4 = 0");
        assert!(r.target_cone.is_empty());
        assert_eq!(r.degree, 5);
    }

    #[test]
    fn curve_class_readoff() {
        let t = paper_tower().unwrap();
        let rels = primitive_relations(&t.x).unwrap();
        let r = rels.iter().find(|r| r.describe(&t.x) == "e1+e2+e3 = e5").unwrap();
        let c = curve_class(&t.x, r);
        assert_eq!(c.entries(), &[0, 1, 1, 1, 0, -1]);
        assert_eq!(c.intersection(5), -1);
        assert!(CurveClass::new(&t.x, c.to_vec()).is_some());
        assert!(CurveClass::new(&t.x, vec![1, 0, 0, 0, 0, 0]).is_none());

        let p4 = projective_space(4).unwrap();
        let rel = &primitive_relations(&p4).unwrap()[0];
        assert_eq!(curve_class(&p4, rel).entries(), &[1, 1, 1, 1, 1]);
    }

    #[test]
    fn anticanonical_degrees() {
        let t = paper_tower().unwrap();
        for fan in [&t.w, &t.y] {
            for r in primitive_relations(fan).unwrap() {
                assert_eq!(anticanonical_degree(&curve_class(fan, &r)), r.degree);
            }
        }
        let y07 = primitive_relations(&t.y)
            .unwrap()
            .into_iter()
            .find(|r| r.describe(&t.y) == "e0+e7 = 0")
            .unwrap();
        assert_eq!(anticanonical_degree(&curve_class(&t.y, &y07)), 2);
        assert_eq!(anticanonical_degree(&CurveClass { entries: vec![0; 3] }), 0);
    }

    #[test]
    fn mori_cone_of_x_and_y() {
        let t = paper_tower().unwrap();
        let x = mori_cone(&t.x).unwrap();
        assert_eq!(x.picard_number, 2);
        assert!(x.entries.iter().all(|e| e.extremal));
        let y = mori_cone(&t.y).unwrap();
        assert_eq!(y.picard_number, 4);
        assert_eq!(y.extremal_count(), 4);
        assert!(y.strictly_convex);
    }

    #[test]
    fn projectivity() {
        let t = paper_tower().unwrap();
        assert!(is_projective(&t.x).unwrap());
        assert!(is_projective(&t.w).unwrap());
        assert!(is_projective(&projective_space(1).unwrap()).unwrap());
    }

    #[test]
    fn fano_verdicts() {
        let t = paper_tower().unwrap();
        assert!(is_fano(&t.y).unwrap().fano);
        assert!(is_fano(&t.p4).unwrap().fano);
        let w = is_fano(&t.w).unwrap();
        assert!(!w.fano);
        assert_eq!(w.witnesses.len(), 1);
        assert_eq!(t.w.set_label(w.witnesses[0].collection.rays()), "{e1,e6}");
        assert_eq!(w.witnesses[0].degree, 0);
    }
}
