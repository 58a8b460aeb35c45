//! Built-in fans: projective spaces, the blow-up tower `P4 <- X <- W <- Y`,
//! and enumeration of smooth toric Fano varieties of dimension at most 3.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::fan::{
    lattice_canonical_key, star_subdivide, validate_fan, Cone, Fan, FanError, RayGenerator,
    StructuralKey,
};
use crate::lattice::{LatticeVector, UnimodularBasis};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("invalid dimension {0}; must be at least 1")]
    InvalidDimension(usize),
    #[error("enumeration is not supported in dimension {0}")]
    UnsupportedDimension(usize),
    #[error("unknown catalog key `{0}`")]
    UnknownKey(String),
    #[error(transparent)]
    Fan(#[from] FanError),
}

pub const CATALOG_KEYS: [&str; 7] = ["p1", "p2", "p3", "p4", "paper-X", "paper-W", "paper-Y"];

/// Rays `e1..en` the standard basis and `e0 = -(e1+...+en)`; every `n`-subset is a cone.
pub fn projective_space(n: usize) -> Result<Fan, CatalogError> {
    if n < 1 {
        return Err(CatalogError::InvalidDimension(n));
    }
    let mut generators = vec![RayGenerator {
        name: "e0".into(),
        vector: LatticeVector::new(vec![-1; n]),
    }];
    generators.extend((0..n).map(|i| RayGenerator {
        name: format!("e{}", i + 1),
        vector: LatticeVector::unit(n, i),
    }));
    let cones = (0..=n)
        .map(|skip| Cone::new((0..=n).filter(|&i| i != skip)))
        .collect();
    Ok(Fan::new(n, generators, cones)?)
}

/// The four fans of the 4-dimensional counterexample.
#[derive(Debug, Clone)]
pub struct PaperTower {
    pub p4: Fan,
    /// `P4` blown up along `V(⟨e1,e2,e3⟩)`.
    pub x: Fan,
    /// `X` blown up along `V(⟨e2,e3,e4⟩)`.
    pub w: Fan,
    /// `W` blown up along `V(⟨e4,e5⟩)`.
    pub y: Fan,
}

const TOWER_STEPS: [(&[&str], &str); 3] = [
    (&["e1", "e2", "e3"], "e5"),
    (&["e2", "e3", "e4"], "e6"),
    (&["e4", "e5"], "e7"),
];

pub fn paper_tower() -> Result<PaperTower, CatalogError> {
    let p4 = projective_space(4)?;
    let mut fans = vec![p4.clone()];
    for (center, name) in TOWER_STEPS {
        let last = fans.last().expect("nonempty");
        let cone = last.cone_by_names(center)?;
        fans.push(star_subdivide(last, &cone, Some(name))?);
    }
    let y = fans.pop().expect("y");
    let w = fans.pop().expect("w");
    let x = fans.pop().expect("x");
    Ok(PaperTower { p4, x, w, y })
}

/// A blow-up step in a construction recipe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupRecipe {
    pub center: Vec<String>,
    pub new_ray: String,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub key: &'static str,
    pub fan: Fan,
    pub base: String,
    pub blowups: Vec<BlowupRecipe>,
}

impl CatalogEntry {
    /// `P4, blow up ⟨e1,e2,e3⟩ -> e5, ...`
    pub fn provenance(&self) -> String {
        let mut s = self.base.clone();
        for b in &self.blowups {
            s.push_str(&format!(", blow up ⟨{}⟩ -> {}", b.center.join(","), b.new_ray));
        }
        s
    }
}

pub fn catalog_entry(key: &str) -> Result<CatalogEntry, CatalogError> {
    let (key, n, steps) = match key {
        "p1" => ("p1", 1, 0),
        "p2" => ("p2", 2, 0),
        "p3" => ("p3", 3, 0),
        "p4" => ("p4", 4, 0),
        "paper-X" => ("paper-X", 4, 1),
        "paper-W" => ("paper-W", 4, 2),
        "paper-Y" => ("paper-Y", 4, 3),
        other => return Err(CatalogError::UnknownKey(other.to_string())),
    };
    let mut fan = projective_space(n)?;
    let mut blowups = Vec::new();
    for (center, name) in TOWER_STEPS.iter().take(steps) {
        fan = star_subdivide(&fan, &fan.cone_by_names(center)?, Some(name))?;
        blowups.push(BlowupRecipe {
            center: center.iter().map(|s| s.to_string()).collect(),
            new_ray: name.to_string(),
        });
    }
    Ok(CatalogEntry {
        key,
        fan,
        base: format!("P{n}"),
        blowups,
    })
}

pub fn catalog() -> Result<Vec<CatalogEntry>, CatalogError> {
    CATALOG_KEYS.iter().map(|k| catalog_entry(k)).collect()
}

// ---------------------------------------------------------------------------
// enumeration

/// Search limits for the Fano enumeration. Coordinates are measured after a
/// unimodular change of basis sending one maximal cone to the standard cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBounds {
    pub max_rays: usize,
    pub max_coord: i64,
}

impl Default for EnumerationBounds {
    fn default() -> Self {
        EnumerationBounds {
            max_rays: 8,
            max_coord: 4,
        }
    }
}

/// Smooth toric Fano varieties of dimension `dim` up to lattice isomorphism.
pub fn enumerate_fano(dim: usize) -> Result<Vec<Fan>, CatalogError> {
    enumerate_fano_with(dim, EnumerationBounds::default())
}

pub fn enumerate_fano_with(dim: usize, bounds: EnumerationBounds) -> Result<Vec<Fan>, CatalogError> {
    let candidates = match dim {
        2 => surface_cycles(bounds)?,
        1 | 3 => grow_fano_fans(dim, bounds)?,
        other => return Err(CatalogError::UnsupportedDimension(other)),
    };
    dedupe(candidates)
}

fn dedupe(candidates: Vec<Fan>) -> Result<Vec<Fan>, CatalogError> {
    let mut unique: BTreeMap<(usize, StructuralKey), Fan> = BTreeMap::new();
    for fan in candidates {
        let key = lattice_canonical_key(&fan)?;
        unique.entry((fan.generators().len(), key)).or_insert(fan);
    }
    Ok(unique
        .into_values()
        .filter(|f| validate_fan(f).is_valid())
        .collect())
}

fn named_fan(dim: usize, rays: Vec<LatticeVector>, cones: Vec<Cone>) -> Result<Fan, FanError> {
    let generators = rays
        .into_iter()
        .enumerate()
        .map(|(i, vector)| RayGenerator {
            name: format!("e{i}"),
            vector,
        })
        .collect();
    Fan::new(dim, generators, cones)
}

fn det2(a: &LatticeVector, b: &LatticeVector) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Surfaces as cyclic ray sequences with `v[i-1] + v[i+1] = b_i v[i]`, starting
/// from the standard cone. Consecutive pairs are unimodular by construction.
fn surface_cycles(bounds: EnumerationBounds) -> Result<Vec<Fan>, CatalogError> {
    let start = vec![LatticeVector::new(vec![1, 0]), LatticeVector::new(vec![0, 1])];
    let mut out = Vec::new();
    let mut stack = vec![start];
    while let Some(seq) = stack.pop() {
        let k = seq.len();
        let (prev, last) = (&seq[k - 2], &seq[k - 1]);
        // b >= 2 would give the primitive relation prev + next = b * last a
        // nonpositive degree.
        for b in (-2 * bounds.max_coord..=1).rev() {
            let next = last
                .checked_scale(b)
                .and_then(|v| v.checked_sub(prev))
                .map_err(FanError::from)?;
            if next.coords().iter().any(|c| c.abs() > bounds.max_coord) {
                continue;
            }
            debug_assert_eq!(det2(last, &next), 1);
            if next == seq[0] {
                if k >= 3 {
                    let cones = (0..k).map(|i| Cone::new([i, (i + 1) % k])).collect();
                    out.push(named_fan(2, seq.clone(), cones)?);
                }
                continue;
            }
            if seq.contains(&next) || k >= bounds.max_rays {
                continue;
            }
            let mut longer = seq.clone();
            longer.push(next);
            stack.push(longer);
        }
    }
    let mut fano = Vec::new();
    for fan in out {
        if crate::mori::is_fano(&fan)?.fano {
            fano.push(fan);
        }
    }
    Ok(fano)
}

/// Partial fan grown one maximal cone at a time across open walls. Every cone
/// `σ` carries the functional `m_σ` equal to 1 on its rays; keeping
/// `m_σ(v) < 1` for every ray `v` outside `σ` makes the support function of
/// the anticanonical divisor strictly convex, which is the Fano condition.
#[derive(Clone)]
struct Grower {
    dim: usize,
    rays: Vec<LatticeVector>,
    cones: Vec<u64>,
    units: Vec<LatticeVector>,
    walls: HashMap<u64, u8>,
}

impl Grower {
    fn start(dim: usize) -> Result<Self, FanError> {
        let rays: Vec<LatticeVector> = (0..dim).map(|i| LatticeVector::unit(dim, i)).collect();
        let mut g = Grower {
            dim,
            rays,
            cones: Vec::new(),
            units: Vec::new(),
            walls: HashMap::new(),
        };
        let mask = (1u64 << dim) - 1;
        let unit = g.unit_of(mask)?.expect("standard basis");
        g.add_cone(mask, unit);
        Ok(g)
    }

    fn vectors(&self, mask: u64) -> Vec<LatticeVector> {
        Cone::from_mask(mask)
            .rays()
            .iter()
            .map(|&i| self.rays[i].clone())
            .collect()
    }

    fn unit_of(&self, mask: u64) -> Result<Option<LatticeVector>, FanError> {
        match UnimodularBasis::new(&self.vectors(mask))? {
            Some(b) => Ok(Some(b.unit_functional()?)),
            None => Ok(None),
        }
    }

    fn add_cone(&mut self, mask: u64, unit: LatticeVector) {
        for r in Cone::from_mask(mask).rays() {
            *self.walls.entry(mask & !(1 << r)).or_default() += 1;
        }
        self.cones.push(mask);
        self.units.push(unit);
    }

    fn open_wall(&self) -> Option<u64> {
        self.walls
            .iter()
            .filter(|(_, &n)| n == 1)
            .map(|(&w, _)| w)
            .min()
    }

    /// Adds the cone `wall ∪ {ray}` if it keeps the strict convexity condition.
    fn try_close(&self, wall: u64, ray: usize) -> Result<Option<Grower>, FanError> {
        let mask = wall | 1 << ray;
        if self.cones.contains(&mask) {
            return Ok(None);
        }
        for r in Cone::from_mask(mask).rays() {
            let w = mask & !(1 << r);
            if w != wall && self.walls.get(&w).copied().unwrap_or(0) >= 2 {
                return Ok(None);
            }
        }
        let Some(unit) = self.unit_of(mask)? else {
            return Ok(None);
        };
        for (i, v) in self.rays.iter().enumerate() {
            if mask >> i & 1 == 0 && unit.dot(v)? >= 1 {
                return Ok(None);
            }
        }
        let is_new = ray == self.rays.len() - 1 && !self.cones.iter().any(|c| c >> ray & 1 == 1);
        if is_new {
            for u in &self.units {
                if u.dot(&self.rays[ray])? >= 1 {
                    return Ok(None);
                }
            }
        }
        let mut next = self.clone();
        next.add_cone(mask, unit);
        Ok(Some(next))
    }

    fn into_fan(self) -> Result<Fan, FanError> {
        let cones = self.cones.iter().map(|&m| Cone::from_mask(m)).collect();
        named_fan(self.dim, self.rays, cones)
    }
}

fn box_points(dim: usize, bound: i64) -> Vec<LatticeVector> {
    let side = (2 * bound + 1) as usize;
    let total = side.pow(dim as u32);
    (0..total)
        .map(|mut k| {
            let mut v = Vec::with_capacity(dim);
            for _ in 0..dim {
                v.push((k % side) as i64 - bound);
                k /= side;
            }
            LatticeVector::new(v)
        })
        .collect()
}

fn grow_fano_fans(dim: usize, bounds: EnumerationBounds) -> Result<Vec<Fan>, FanError> {
    let points = box_points(dim, bounds.max_coord);
    let mut out = Vec::new();
    let mut stack = vec![Grower::start(dim)?];
    while let Some(g) = stack.pop() {
        let Some(wall) = g.open_wall() else {
            out.push(g.into_fan()?);
            continue;
        };
        let k = g
            .cones
            .iter()
            .position(|&c| c & wall == wall)
            .expect("open wall has a cone");
        let cone = g.cones[k];
        let apex = Cone::from_mask(cone & !wall).rays()[0];
        let basis = UnimodularBasis::new(&g.vectors(cone))?.expect("cones are unimodular");
        let slot = Cone::from_mask(cone).rays().iter().position(|&r| r == apex).expect("apex");
        let across = &basis.dual()[slot];
        let unit = &g.units[k];

        for (i, v) in g.rays.iter().enumerate() {
            if cone >> i & 1 == 0 && across.dot(v)? == -1 {
                if let Some(next) = g.try_close(wall, i)? {
                    stack.push(next);
                }
            }
        }
        if g.rays.len() >= bounds.max_rays {
            continue;
        }
        for p in &points {
            if across.dot(p)? != -1 || unit.dot(p)? >= 1 || g.rays.contains(p) {
                continue;
            }
            let mut extended = g.clone();
            extended.rays.push(p.clone());
            if let Some(next) = extended.try_close(wall, extended.rays.len() - 1)? {
                stack.push(next);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mori::{is_fano, mori_cone};

    #[test]
    fn projective_spaces() {
        let p1 = projective_space(1).unwrap();
        assert_eq!(p1.generators().len(), 2);
        assert_eq!(p1.max_cones().len(), 2);
        let p4 = projective_space(4).unwrap();
        assert_eq!((p4.generators().len(), p4.max_cones().len()), (5, 5));
        let p2 = projective_space(2).unwrap();
        assert!(is_fano(&p2).unwrap().fano);
        assert_eq!(mori_cone(&p2).unwrap().picard_number, 1);
        assert_eq!(projective_space(0), Err(CatalogError::InvalidDimension(0)));
    }

    #[test]
    fn tower_generators() {
        let t = paper_tower().unwrap();
        let names = |f: &Fan| f.generators().iter().map(|g| g.name.clone()).collect::<Vec<_>>();
        assert_eq!(names(&t.w), ["e0", "e1", "e2", "e3", "e4", "e5", "e6"]);
        assert_eq!(names(&t.y), ["e0", "e1", "e2", "e3", "e4", "e5", "e6", "e7"]);
    }

    #[test]
    fn catalog_entries_validate() {
        for e in catalog().unwrap() {
            assert!(validate_fan(&e.fan).is_valid(), "{}", e.key);
        }
        assert_eq!(
            catalog_entry("paper-Y").unwrap().provenance(),
            "P4, blow up ⟨e1,e2,e3⟩ -> e5, blow up ⟨e2,e3,e4⟩ -> e6, blow up ⟨e4,e5⟩ -> e7"
        );
        assert!(matches!(catalog_entry("p9"), Err(CatalogError::UnknownKey(_))));
    }

    #[test]
    fn low_dimensional_counts() {
        assert_eq!(enumerate_fano(1).unwrap().len(), 1);
        let surfaces = enumerate_fano(2).unwrap();
        assert_eq!(surfaces.len(), 5);
        let rays: Vec<usize> = surfaces.iter().map(|f| f.generators().len()).collect();
        assert_eq!(rays, [3, 4, 4, 5, 6]);
        assert!(matches!(enumerate_fano(4), Err(CatalogError::UnsupportedDimension(4))));
    }

    #[test]
    fn grower_agrees_on_surfaces() {
        let grown = dedupe(grow_fano_fans(2, EnumerationBounds::default()).unwrap()).unwrap();
        let cycles = enumerate_fano(2).unwrap();
        assert_eq!(grown.len(), cycles.len());
        for (a, b) in grown.iter().zip(&cycles) {
            assert_eq!(lattice_canonical_key(a).unwrap(), lattice_canonical_key(b).unwrap());
        }
    }
}
