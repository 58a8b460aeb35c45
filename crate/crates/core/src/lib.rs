//! Exact combinatorics of smooth complete toric varieties.
//!
//! A variety is described by its [`Fan`](fan::Fan): primitive ray generators
//! in `Z^n` and simplicial, unimodular maximal cones. On top of that this
//! crate computes primitive collections and relations, the Mori cone with its
//! extremal classes, Fano and projectivity verdicts, equivariant blow-ups and
//! blow-downs, and searches for factorizations of a refinement into smooth
//! blow-ups.
//!
//! ```
//! use toric_core::{catalog, mori};
//!
//! let tower = catalog::paper_tower().unwrap();
//! assert!(mori::is_fano(&tower.y).unwrap().fano);
//! assert!(!mori::is_fano(&tower.w).unwrap().fano);
//! ```

pub mod birational;
pub mod catalog;
pub mod fan;
pub mod lattice;
pub mod mori;

pub use birational::{
    blow_down_candidates, blow_downs, factor_morphism, Blowdown, BlowdownCandidate, FactorError,
    FactorOptions, FactorizationPath, Obstruction,
};
pub use catalog::{enumerate_fano, paper_tower, projective_space, CatalogError, PaperTower};
pub use fan::{
    contract_ray, fan_isomorphism, locate_relint, parse_fan, refines, serialize_fan,
    star_subdivide, validate_fan, Cone, Fan, FanError, LatticeMap, ParseError, RayGenerator,
    ValidationReport,
};
pub use lattice::{LatticeError, LatticeVector, Rational, RationalVector};
pub use mori::{
    anticanonical_degree, curve_class, is_fano, is_projective, mori_cone, primitive_collections,
    primitive_relation, primitive_relations, CurveClass, MoriConeSummary, PrimitiveCollection,
    PrimitiveRelation,
};
