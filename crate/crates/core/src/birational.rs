//! Blow-downs and the factorization of refinement morphisms into smooth
//! equivariant blow-ups.

use std::collections::HashSet;

use thiserror::Error;

use crate::fan::{contract_along, refines, star_subdivide, Cone, Fan, FanError, StructuralKey};
use crate::mori::{blowdown_relations, is_fano, is_projective, PrimitiveRelation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    /// Maximal cones around the ray that do not contain all but one of the
    /// collection's rays.
    Star(Vec<Cone>),
    /// The merged cones do not form a valid fan.
    Invalid(String),
}

/// A relation `x1 + ... + xh = x` and whether contracting `x` along it works.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowdownCandidate {
    pub relation: PrimitiveRelation,
    pub ray: usize,
    pub target: Option<Fan>,
    pub obstruction: Option<Obstruction>,
}

impl BlowdownCandidate {
    pub fn valid(&self) -> bool {
        self.target.is_some()
    }
}

pub fn blow_down_candidates(fan: &Fan) -> Result<Vec<BlowdownCandidate>, FanError> {
    let mut out = Vec::new();
    for relation in blowdown_relations(fan)? {
        let ray = relation.target_cone.rays()[0];
        let (target, obstruction) = match contract_along(fan, ray, relation.collection.rays()) {
            Ok(t) => (Some(t), None),
            Err(FanError::StarConditionViolated { witness_cones, .. }) => {
                (None, Some(Obstruction::Star(witness_cones)))
            }
            Err(FanError::ResultInvalid(why)) => (None, Some(Obstruction::Invalid(why))),
            Err(e) => return Err(e),
        };
        out.push(BlowdownCandidate {
            relation,
            ray,
            target,
            obstruction,
        });
    }
    Ok(out)
}

/// A valid blow-down together with the verdicts on its target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Blowdown {
    pub ray: String,
    pub relation: PrimitiveRelation,
    /// The blow-up center in the target, by ray name.
    pub center: Vec<String>,
    pub target: Fan,
    pub fano: bool,
    pub projective: bool,
}

/// Valid blow-downs, ordered by contracted ray name and then by collection.
pub fn blow_downs(fan: &Fan) -> Result<Vec<Blowdown>, FanError> {
    let mut out = Vec::new();
    for c in blow_down_candidates(fan)? {
        let Some(target) = c.target else { continue };
        let center = c
            .relation
            .collection
            .rays()
            .iter()
            .map(|&i| fan.name(i).to_string())
            .collect();
        out.push(Blowdown {
            ray: fan.name(c.ray).to_string(),
            fano: is_fano(&target)?.fano,
            projective: is_projective(&target)?,
            relation: c.relation,
            center,
            target,
        });
    }
    out.sort_by(|a, b| (&a.ray, &a.center).cmp(&(&b.ray, &b.center)));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorStep {
    /// Ray removed by this blow-down.
    pub contracted: String,
    /// Blow-up center in the resulting fan.
    pub center: Vec<String>,
    /// The fan after contraction.
    pub fan: Fan,
    pub fano: bool,
    pub projective: bool,
}

/// Blow-downs leading from the fine fan to the coarse one, in order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FactorizationPath {
    pub steps: Vec<FactorStep>,
}

impl FactorizationPath {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Re-applies the blow-ups from `coarse` upward and returns the rebuilt fine fan.
    pub fn replay(&self, coarse: &Fan) -> Result<Fan, FanError> {
        let mut fan = coarse.clone();
        for step in self.steps.iter().rev() {
            let center = fan.cone_by_names(&step.center)?;
            fan = star_subdivide(&fan, &center, Some(&step.contracted))?;
        }
        Ok(fan)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FactorOptions {
    /// Reject intermediate fans (strictly between fine and coarse) that are not Fano.
    pub require_fano: bool,
    /// Return every path instead of the first one found.
    pub exhaustive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("the fine fan does not refine the coarse fan")]
    NotARefinement,
    #[error(transparent)]
    Fan(#[from] FanError),
}

struct Search<'a> {
    coarse: &'a Fan,
    coarse_key: StructuralKey,
    options: FactorOptions,
    dead: HashSet<StructuralKey>,
    path: Vec<FactorStep>,
    found: Vec<FactorizationPath>,
}

impl Search<'_> {
    fn visit(&mut self, current: &Fan) -> Result<bool, FanError> {
        let key = current.structural_key();
        if key == self.coarse_key {
            self.found.push(FactorizationPath {
                steps: self.path.clone(),
            });
            return Ok(true);
        }
        if current.generators().len() <= self.coarse.generators().len() || self.dead.contains(&key) {
            return Ok(false);
        }
        let mut any = false;
        for b in blow_downs(current)? {
            if !refines(&b.target, self.coarse)? {
                continue;
            }
            let reaches_coarse = b.target.structural_key() == self.coarse_key;
            if self.options.require_fano && !reaches_coarse && !b.fano {
                continue;
            }
            self.path.push(FactorStep {
                contracted: b.ray,
                center: b.center,
                fan: b.target.clone(),
                fano: b.fano,
                projective: b.projective,
            });
            let ok = self.visit(&b.target)?;
            self.path.pop();
            any |= ok;
            if ok && !self.options.exhaustive {
                return Ok(true);
            }
        }
        if !any {
            self.dead.insert(key);
        }
        Ok(any)
    }
}

/// Depth-first search for sequences of smooth blow-downs from `fine` to `coarse`.
///
/// An empty result means the search was exhausted without finding a path.
pub fn factor_morphism(
    fine: &Fan,
    coarse: &Fan,
    options: FactorOptions,
) -> Result<Vec<FactorizationPath>, FactorError> {
    if !refines(fine, coarse)? {
        return Err(FactorError::NotARefinement);
    }
    let mut search = Search {
        coarse,
        coarse_key: coarse.structural_key(),
        options,
        dead: HashSet::new(),
        path: Vec::new(),
        found: Vec::new(),
    };
    search.visit(fine)?;
    Ok(search.found)
}
