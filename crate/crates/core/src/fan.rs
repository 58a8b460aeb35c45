//! Smooth complete fans: the data model, the text format, validation, and the
//! elementary operations (star subdivision, contraction, refinement,
//! isomorphism).

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::lattice::{
    self, determinant, is_primitive, separating_functional, LatticeError, LatticeVector,
    UnimodularBasis,
};
use crate::mori;

/// Fans are stored with ray sets as `u64` masks, so at most 64 generators.
pub const MAX_RAYS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("duplicate ray name `{0}`")]
    DuplicateName(String),
    #[error("unknown ray `{0}` in cone")]
    UnknownRayInCone(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ray `{0}` is not a primitive nonzero lattice vector")]
    NonPrimitiveRay(String),
    #[error("invalid ray name `{0}`")]
    InvalidName(String),
    #[error("cone lists ray `{0}` twice")]
    RepeatedRayInCone(String),
    #[error("maximal cone {0} listed twice")]
    DuplicateCone(String),
    #[error("too many rays ({0}, at most {MAX_RAYS})")]
    TooManyRays(usize),
    #[error("unknown ray `{0}`")]
    UnknownRay(String),
    #[error("center {0} is not a cone of the fan")]
    CenterNotInFan(String),
    #[error("center has {0} ray(s); a blow-up center needs at least 2")]
    CenterTooSmall(usize),
    #[error("ray name `{0}` already in use")]
    NameCollision(String),
    #[error("no primitive relation of the form x1+...+xh = {0}")]
    NoBlowdownRelation(String),
    #[error("ray {ray} is the target of several blow-down relations ({options}); choose one")]
    AmbiguousBlowdown { ray: String, options: String },
    #[error("contracting {ray}: cone(s) {} do not contain all but one of {collection}", witnesses.join(", "))]
    StarConditionViolated {
        ray: String,
        collection: String,
        witnesses: Vec<String>,
        witness_cones: Vec<Cone>,
    },
    #[error("contraction result is not a valid smooth complete fan: {0}")]
    ResultInvalid(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

pub type Result<T> = std::result::Result<T, FanError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {source}")]
    Structure {
        line: usize,
        #[source]
        source: FanError,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RayGenerator {
    pub name: String,
    pub vector: LatticeVector,
}

/// A cone of the fan, as a sorted set of ray indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Cone(Vec<usize>);

impl Cone {
    pub fn new<I: IntoIterator<Item = usize>>(rays: I) -> Self {
        let mut v: Vec<usize> = rays.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Cone(v)
    }

    pub fn zero() -> Self {
        Cone(Vec::new())
    }

    pub fn from_mask(mask: u64) -> Self {
        Cone((0..MAX_RAYS).filter(|i| mask >> i & 1 == 1).collect())
    }

    pub fn rays(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, ray: usize) -> bool {
        self.0.binary_search(&ray).is_ok()
    }

    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &i| m | 1 << i)
    }

    pub fn is_subset_of(&self, other: &Cone) -> bool {
        self.mask() & !other.mask() == 0
    }
}

/// A fan with named primitive generators and simplicial maximal cones.
///
/// Construction only enforces structural consistency; geometry is checked by
/// [`validate_fan`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    generators: Vec<RayGenerator>,
    max_cones: Vec<Cone>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Fan {
    /// Builds a fan, checking names, vector lengths, primitivity and cone sizes.
    /// Maximal cones are stored sorted.
    pub fn new(dim: usize, generators: Vec<RayGenerator>, max_cones: Vec<Cone>) -> Result<Self> {
        if generators.len() > MAX_RAYS {
            return Err(FanError::TooManyRays(generators.len()));
        }
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !valid_name(&g.name) {
                return Err(FanError::InvalidName(g.name.clone()));
            }
            if !seen.insert(g.name.as_str()) {
                return Err(FanError::DuplicateName(g.name.clone()));
            }
            if g.vector.dim() != dim {
                return Err(FanError::DimensionMismatch {
                    expected: dim,
                    found: g.vector.dim(),
                });
            }
            if !is_primitive(&g.vector) {
                return Err(FanError::NonPrimitiveRay(g.name.clone()));
            }
        }
        let mut cones = BTreeSet::new();
        for c in max_cones {
            if let Some(&bad) = c.rays().iter().find(|&&i| i >= generators.len()) {
                return Err(FanError::UnknownRayInCone(format!("#{bad}")));
            }
            if c.len() != dim {
                return Err(FanError::DimensionMismatch {
                    expected: dim,
                    found: c.len(),
                });
            }
            if !cones.insert(c.clone()) {
                return Err(FanError::DuplicateCone(cone_label_with(&generators, &c)));
            }
        }
        Ok(Fan {
            dim,
            generators,
            max_cones: cones.into_iter().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[RayGenerator] {
        &self.generators
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    pub fn vector(&self, ray: usize) -> &LatticeVector {
        &self.generators[ray].vector
    }

    pub fn name(&self, ray: usize) -> &str {
        &self.generators[ray].name
    }

    pub fn ray_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Resolves a list of ray names to a cone (not necessarily in the fan).
    pub fn cone_by_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Cone> {
        names
            .iter()
            .map(|n| {
                self.ray_index(n.as_ref())
                    .ok_or_else(|| FanError::UnknownRay(n.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>>>()
            .map(Cone::new)
    }

    pub fn cone_vectors(&self, cone: &Cone) -> Vec<LatticeVector> {
        cone.rays().iter().map(|&i| self.vector(i).clone()).collect()
    }

    /// `⟨e1,e2⟩`-style label.
    pub fn cone_label(&self, cone: &Cone) -> String {
        cone_label_with(&self.generators, cone)
    }

    /// `{e1,e2}`-style label.
    pub fn set_label(&self, rays: &[usize]) -> String {
        let names: Vec<&str> = rays.iter().map(|&i| self.name(i)).collect();
        format!("{{{}}}", names.join(","))
    }

    fn max_masks(&self) -> Vec<u64> {
        self.max_cones.iter().map(Cone::mask).collect()
    }

    /// True iff the rays in `mask` span a cone of the fan (a face of a maximal cone).
    pub fn is_cone_mask(&self, mask: u64) -> bool {
        self.max_cones.iter().any(|c| mask & !c.mask() == 0)
    }

    pub fn is_cone(&self, cone: &Cone) -> bool {
        self.is_cone_mask(cone.mask())
    }

    /// Every cone of the fan, including the zero cone, sorted.
    pub fn all_cones(&self) -> Vec<Cone> {
        let mut out = BTreeSet::new();
        for m in self.max_masks() {
            let mut sub = m;
            loop {
                out.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & m;
            }
        }
        let mut cones: Vec<Cone> = out.into_iter().map(Cone::from_mask).collect();
        cones.sort();
        cones
    }

    /// Key identifying the fan up to relabelling of rays (names ignored).
    pub fn structural_key(&self) -> StructuralKey {
        let mut order: Vec<usize> = (0..self.generators.len()).collect();
        order.sort_by(|&a, &b| self.vector(a).cmp(self.vector(b)));
        let mut position = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        let mut cones: Vec<Vec<usize>> = self
            .max_cones
            .iter()
            .map(|c| {
                let mut v: Vec<usize> = c.rays().iter().map(|&i| position[i]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        cones.sort();
        StructuralKey {
            dim: self.dim,
            vectors: order.iter().map(|&i| self.vector(i).clone()).collect(),
            cones,
        }
    }

    /// Same vectors and same cones, names ignored.
    pub fn structurally_equal(&self, other: &Fan) -> bool {
        self.structural_key() == other.structural_key()
    }

    /// Picard number `|G| - n` of a smooth complete fan.
    pub fn picard_number(&self) -> i64 {
        self.generators.len() as i64 - self.dim as i64
    }

    fn next_auto_name(&self) -> String {
        let next = self
            .generators
            .iter()
            .filter_map(|g| g.name.strip_prefix('e').and_then(|s| s.parse::<usize>().ok()))
            .map(|k| k + 1)
            .max()
            .unwrap_or(self.generators.len());
        (next..)
            .map(|k| format!("e{k}"))
            .find(|n| self.ray_index(n).is_none())
            .expect("unbounded name supply")
    }
}

fn cone_label_with(generators: &[RayGenerator], cone: &Cone) -> String {
    let names: Vec<&str> = cone
        .rays()
        .iter()
        .map(|&i| generators.get(i).map_or("?", |g| g.name.as_str()))
        .collect();
    format!("⟨{}⟩", names.join(","))
}

/// Ray vectors sorted lexicographically and cones relabelled accordingly.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StructuralKey {
    pub dim: usize,
    pub vectors: Vec<LatticeVector>,
    pub cones: Vec<Vec<usize>>,
}

impl fmt::Display for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_fan(self))
    }
}

// ---------------------------------------------------------------------------
// text format

fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch == ' ' || ch == '\t' {
            if let Some(s) = start.take() {
                out.push((s, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out
}

pub fn parse_fan(text: &str) -> std::result::Result<Fan, ParseError> {
    let syntax = |line: usize, column: usize, message: String| ParseError::Syntax {
        line,
        column,
        message,
    };
    let mut dim: Option<usize> = None;
    let mut generators: Vec<RayGenerator> = Vec::new();
    let mut names: HashMap<String, usize> = HashMap::new();
    let mut cones: Vec<(usize, Cone)> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(&(col, keyword)) = toks.first() else {
            continue;
        };
        let structure = |source: FanError| ParseError::Structure {
            line: lineno,
            source,
        };
        match (keyword, dim) {
            ("dim", None) => {
                if toks.len() != 2 {
                    return Err(syntax(lineno, col + 1, "expected `dim <n>`".into()));
                }
                let (c, t) = toks[1];
                let n: usize = t
                    .parse()
                    .ok()
                    .filter(|&n| n > 0)
                    .ok_or_else(|| syntax(lineno, c + 1, format!("invalid dimension `{t}`")))?;
                dim = Some(n);
            }
            ("dim", Some(_)) => {
                return Err(syntax(lineno, col + 1, "repeated `dim` line".into()));
            }
            (_, None) => {
                return Err(syntax(lineno, col + 1, "file must start with `dim <n>`".into()));
            }
            ("ray", Some(n)) => {
                let Some(&(nc, name)) = toks.get(1) else {
                    return Err(syntax(lineno, col + 1, "expected `ray <name> <coords>`".into()));
                };
                if !valid_name(name) {
                    return Err(syntax(lineno, nc + 1, format!("invalid ray name `{name}`")));
                }
                let coords = toks[2..]
                    .iter()
                    .map(|&(c, t)| {
                        t.parse::<i64>()
                            .map_err(|_| syntax(lineno, c + 1, format!("invalid integer `{t}`")))
                    })
                    .collect::<std::result::Result<Vec<i64>, _>>()?;
                if coords.len() != n {
                    return Err(structure(FanError::DimensionMismatch {
                        expected: n,
                        found: coords.len(),
                    }));
                }
                if names.insert(name.to_string(), generators.len()).is_some() {
                    return Err(structure(FanError::DuplicateName(name.to_string())));
                }
                let vector = LatticeVector::new(coords);
                if !is_primitive(&vector) {
                    return Err(structure(FanError::NonPrimitiveRay(name.to_string())));
                }
                generators.push(RayGenerator {
                    name: name.to_string(),
                    vector,
                });
            }
            ("maxcone", Some(n)) => {
                let members = &toks[1..];
                if members.len() != n {
                    return Err(structure(FanError::DimensionMismatch {
                        expected: n,
                        found: members.len(),
                    }));
                }
                let mut idx = Vec::with_capacity(n);
                for &(c, t) in members {
                    if !valid_name(t) {
                        return Err(syntax(lineno, c + 1, format!("invalid ray name `{t}`")));
                    }
                    let i = *names
                        .get(t)
                        .ok_or_else(|| structure(FanError::UnknownRayInCone(t.to_string())))?;
                    if idx.contains(&i) {
                        return Err(structure(FanError::RepeatedRayInCone(t.to_string())));
                    }
                    idx.push(i);
                }
                cones.push((lineno, Cone::new(idx)));
            }
            (other, Some(_)) => {
                return Err(syntax(lineno, col + 1, format!("unknown keyword `{other}`")));
            }
        }
    }
    let Some(dim) = dim else {
        return Err(syntax(1, 1, "missing `dim <n>` line".into()));
    };
    let mut seen = HashMap::new();
    for (line, c) in &cones {
        if seen.insert(c.clone(), *line).is_some() {
            return Err(ParseError::Structure {
                line: *line,
                source: FanError::DuplicateCone(cone_label_with(&generators, c)),
            });
        }
    }
    let last = cones.last().map_or(1, |(l, _)| *l);
    Fan::new(dim, generators, cones.into_iter().map(|(_, c)| c).collect())
        .map_err(|source| ParseError::Structure { line: last, source })
}

/// Canonical text: rays in index order, maximal cones sorted.
pub fn serialize_fan(fan: &Fan) -> String {
    let mut out = format!("dim {}\n", fan.dim);
    for g in &fan.generators {
        out.push_str("ray ");
        out.push_str(&g.name);
        for c in g.vector.coords() {
            out.push_str(&format!(" {c}"));
        }
        out.push('\n');
    }
    for c in &fan.max_cones {
        out.push_str("maxcone");
        for &i in c.rays() {
            out.push(' ');
            out.push_str(fan.name(i));
        }
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// validation

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub smooth: bool,
    pub complete: bool,
    pub faces_ok: bool,
    pub witnesses: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.smooth && self.complete && self.faces_ok
    }
}

pub fn validate_fan(fan: &Fan) -> ValidationReport {
    let mut witnesses = Vec::new();

    let mut smooth = true;
    for c in &fan.max_cones {
        match determinant(&fan.cone_vectors(c)) {
            Ok(d) if d.abs() == 1 => {}
            Ok(d) => {
                smooth = false;
                witnesses.push(format!(
                    "cone {} is not unimodular (|det| = {})",
                    fan.cone_label(c),
                    d.abs()
                ));
            }
            Err(e) => {
                smooth = false;
                witnesses.push(format!("cone {}: {e}", fan.cone_label(c)));
            }
        }
    }

    let mut complete = true;
    if fan.max_cones.is_empty() {
        complete = false;
        witnesses.push("fan has no maximal cones".into());
    } else {
        let mut walls: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        for (k, c) in fan.max_cones.iter().enumerate() {
            let m = c.mask();
            for &r in c.rays() {
                walls.entry(m & !(1 << r)).or_default().push(k);
            }
        }
        let mut adjacency = vec![Vec::new(); fan.max_cones.len()];
        for (&wall, owners) in &walls {
            if owners.len() != 2 {
                complete = false;
                witnesses.push(format!(
                    "wall {} lies in {} maximal cone(s)",
                    fan.cone_label(&Cone::from_mask(wall)),
                    owners.len()
                ));
            } else {
                adjacency[owners[0]].push(owners[1]);
                adjacency[owners[1]].push(owners[0]);
            }
        }
        let mut seen = vec![false; fan.max_cones.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(k) = queue.pop_front() {
            for &j in &adjacency[k] {
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            complete = false;
            witnesses.push("wall-adjacency graph of maximal cones is disconnected".into());
        }
    }

    let mut faces_ok = true;
    let used = fan.max_cones.iter().fold(0u64, |m, c| m | c.mask());
    for (i, g) in fan.generators.iter().enumerate() {
        if used >> i & 1 == 0 {
            faces_ok = false;
            witnesses.push(format!("ray {} lies in no maximal cone", g.name));
        }
    }
    for (a, sa) in fan.max_cones.iter().enumerate() {
        for sb in &fan.max_cones[a + 1..] {
            if !meet_in_common_face(fan, sa, sb) {
                faces_ok = false;
                witnesses.push(format!(
                    "cones {} and {} do not meet in a common face",
                    fan.cone_label(sa),
                    fan.cone_label(sb)
                ));
            }
        }
    }

    ValidationReport {
        smooth,
        complete,
        faces_ok,
        witnesses,
    }
}

/// Certifies `σ ∩ τ = cone(shared rays)` by a functional vanishing on the shared
/// rays, positive on the rest of `σ` and negative on the rest of `τ`.
fn meet_in_common_face(fan: &Fan, a: &Cone, b: &Cone) -> bool {
    let shared = a.mask() & b.mask();
    let mut positive = Vec::new();
    for &i in a.rays() {
        if shared >> i & 1 == 0 {
            positive.push(fan.vector(i).clone());
        }
    }
    for &i in b.rays() {
        if shared >> i & 1 == 0 {
            match fan.vector(i).checked_neg() {
                Ok(v) => positive.push(v),
                Err(_) => return false,
            }
        }
    }
    let zero = fan.cone_vectors(&Cone::from_mask(shared));
    if positive.is_empty() {
        return true;
    }
    matches!(separating_functional(&positive, &zero), Ok(Some(_)))
}

// ---------------------------------------------------------------------------
// point location

/// Precomputed dual bases of the maximal cones, for repeated point location.
#[derive(Debug, Clone)]
pub struct Locator<'a> {
    fan: &'a Fan,
    bases: Vec<UnimodularBasis>,
}

impl<'a> Locator<'a> {
    pub fn new(fan: &'a Fan) -> Result<Self> {
        let bases = fan
            .max_cones
            .iter()
            .map(|c| {
                UnimodularBasis::new(&fan.cone_vectors(c))?.ok_or_else(|| {
                    FanError::InternalInconsistency(format!(
                        "cone {} is not unimodular",
                        fan.cone_label(c)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Locator { fan, bases })
    }

    /// The cone containing `point` in its relative interior, with the
    /// (strictly positive) coefficients of `point` on that cone's rays.
    pub fn locate(&self, point: &LatticeVector) -> Result<(Cone, Vec<i64>)> {
        if point.dim() != self.fan.dim {
            return Err(FanError::DimensionMismatch {
                expected: self.fan.dim,
                found: point.dim(),
            });
        }
        if point.is_zero() {
            return Ok((Cone::zero(), Vec::new()));
        }
        for (cone, basis) in self.fan.max_cones.iter().zip(&self.bases) {
            let coords = basis.coordinates(point)?;
            if coords.iter().all(|&c| c >= 0) {
                let support: Vec<(usize, i64)> = cone
                    .rays()
                    .iter()
                    .zip(&coords)
                    .filter(|(_, &c)| c > 0)
                    .map(|(&r, &c)| (r, c))
                    .collect();
                return Ok((
                    Cone::new(support.iter().map(|&(r, _)| r)),
                    support.iter().map(|&(_, c)| c).collect(),
                ));
            }
        }
        Err(FanError::InternalInconsistency(format!(
            "point {point} lies in no maximal cone"
        )))
    }
}

pub fn locate_relint(fan: &Fan, point: &LatticeVector) -> Result<(Cone, Vec<i64>)> {
    Locator::new(fan)?.locate(point)
}

// ---------------------------------------------------------------------------
// blow-ups and blow-downs

/// Star subdivision at `center`: the smooth equivariant blow-up along `V(center)`.
pub fn star_subdivide(fan: &Fan, center: &Cone, new_name: Option<&str>) -> Result<Fan> {
    if center.len() < 2 {
        return Err(FanError::CenterTooSmall(center.len()));
    }
    if center.rays().iter().any(|&i| i >= fan.generators.len()) || !fan.is_cone(center) {
        return Err(FanError::CenterNotInFan(fan.cone_label(center)));
    }
    let name = match new_name {
        Some(n) if fan.ray_index(n).is_some() => return Err(FanError::NameCollision(n.into())),
        Some(n) => n.to_string(),
        None => fan.next_auto_name(),
    };
    let vector = LatticeVector::checked_sum(fan.dim, center.rays().iter().map(|&i| fan.vector(i)))?;
    let new_index = fan.generators.len();
    let mut generators = fan.generators.clone();
    generators.push(RayGenerator { name, vector });

    let mut cones = Vec::with_capacity(fan.max_cones.len() + center.len());
    for c in &fan.max_cones {
        if center.is_subset_of(c) {
            for &x in center.rays() {
                cones.push(Cone::new(
                    c.rays().iter().copied().filter(|&r| r != x).chain([new_index]),
                ));
            }
        } else {
            cones.push(c.clone());
        }
    }
    Fan::new(fan.dim, generators, cones)
}

/// Inverse of [`star_subdivide`]: removes `ray`, whose vector must be the sum of
/// the rays in `collection`, merging the cones around it.
pub fn contract_along(fan: &Fan, ray: usize, collection: &[usize]) -> Result<Fan> {
    let collection = Cone::new(collection.iter().copied());
    if collection.len() < 2 || collection.contains(ray) {
        return Err(FanError::NoBlowdownRelation(fan.name(ray).to_string()));
    }
    let sum = LatticeVector::checked_sum(
        fan.dim,
        collection.rays().iter().map(|&i| fan.vector(i)),
    )?;
    if &sum != fan.vector(ray) {
        return Err(FanError::NoBlowdownRelation(fan.name(ray).to_string()));
    }
    let h = collection.len();
    let cmask = collection.mask();
    let mut merged = BTreeSet::new();
    let mut offending = Vec::new();
    for c in &fan.max_cones {
        if !c.contains(ray) {
            merged.insert(c.mask());
        } else if (c.mask() & cmask).count_ones() as usize != h - 1 {
            offending.push(c.clone());
        } else {
            merged.insert((c.mask() & !(1 << ray)) | cmask);
        }
    }
    if !offending.is_empty() {
        return Err(FanError::StarConditionViolated {
            ray: fan.name(ray).to_string(),
            collection: fan.set_label(collection.rays()),
            witnesses: offending.iter().map(|c| fan.cone_label(c)).collect(),
            witness_cones: offending,
        });
    }
    // Drop the ray and shift indices above it down by one.
    let reindex = |m: u64| -> Cone {
        Cone::new(
            Cone::from_mask(m)
                .rays()
                .iter()
                .map(|&i| if i > ray { i - 1 } else { i }),
        )
    };
    let mut generators = fan.generators.clone();
    generators.remove(ray);
    let result = Fan::new(fan.dim, generators, merged.into_iter().map(reindex).collect())?;
    let report = validate_fan(&result);
    if !report.is_valid() {
        return Err(FanError::ResultInvalid(report.witnesses.join("; ")));
    }
    Ok(result)
}

/// Contracts the named ray using a primitive relation `x1+...+xh = ray`.
///
/// With `via = None` the relation must be unique; when several relations
/// target the ray the caller must name the collection.
pub fn contract_ray<S: AsRef<str>>(fan: &Fan, ray: &str, via: Option<&[S]>) -> Result<Fan> {
    let r = fan
        .ray_index(ray)
        .ok_or_else(|| FanError::UnknownRay(ray.to_string()))?;
    let relations: Vec<Vec<usize>> = mori::blowdown_relations(fan)?
        .into_iter()
        .filter(|rel| rel.target_cone.rays() == [r])
        .map(|rel| rel.collection.rays().to_vec())
        .collect();
    let chosen = match via {
        Some(names) => {
            let wanted = fan.cone_by_names(names)?;
            relations
                .into_iter()
                .find(|c| c.as_slice() == wanted.rays())
                .ok_or_else(|| FanError::NoBlowdownRelation(ray.to_string()))?
        }
        None => match relations.len() {
            0 => return Err(FanError::NoBlowdownRelation(ray.to_string())),
            1 => relations.into_iter().next().expect("one relation"),
            _ => {
                return Err(FanError::AmbiguousBlowdown {
                    ray: ray.to_string(),
                    options: relations
                        .iter()
                        .map(|c| fan.set_label(c))
                        .collect::<Vec<_>>()
                        .join(", "),
                })
            }
        },
    };
    contract_along(fan, r, &chosen)
}

// ---------------------------------------------------------------------------
// refinement and isomorphism

/// True iff every maximal cone of `fine` lies in some maximal cone of `coarse`.
pub fn refines(fine: &Fan, coarse: &Fan) -> Result<bool> {
    if fine.dim != coarse.dim {
        return Err(FanError::DimensionMismatch {
            expected: coarse.dim,
            found: fine.dim,
        });
    }
    let locator = Locator::new(coarse)?;
    'cones: for c in &fine.max_cones {
        'targets: for basis in &locator.bases {
            for &r in c.rays() {
                if basis.coordinates(fine.vector(r))?.iter().any(|&x| x < 0) {
                    continue 'targets;
                }
            }
            continue 'cones;
        }
        return Ok(false);
    }
    Ok(true)
}

/// An element of `GL(n, Z)`, acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeMap {
    rows: Vec<LatticeVector>,
}

impl LatticeMap {
    pub fn identity(n: usize) -> Self {
        LatticeMap {
            rows: (0..n).map(|i| LatticeVector::unit(n, i)).collect(),
        }
    }

    pub fn rows(&self) -> &[LatticeVector] {
        &self.rows
    }

    pub fn apply(&self, v: &LatticeVector) -> lattice::Result<LatticeVector> {
        self.rows
            .iter()
            .map(|r| r.dot(v))
            .collect::<lattice::Result<Vec<_>>>()
            .map(LatticeVector::new)
    }

    /// The map sending `from[i]` to `to[i]`; `from` must be a lattice basis.
    fn from_bases(from: &UnimodularBasis, to: &[LatticeVector]) -> lattice::Result<Self> {
        let n = to.len();
        let mut rows = vec![vec![0i64; n]; n];
        for (r, row) in rows.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                let mut acc: i64 = 0;
                for (d, b) in from.dual().iter().zip(to) {
                    acc = d[j]
                        .checked_mul(b[r])
                        .and_then(|t| acc.checked_add(t))
                        .ok_or(LatticeError::Overflow)?;
                }
                *entry = acc;
            }
        }
        Ok(LatticeMap {
            rows: rows.into_iter().map(LatticeVector::new).collect(),
        })
    }
}

impl fmt::Display for LatticeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let cells: Vec<String> = r.coords().iter().map(|c| format!("{c:>3}")).collect();
            writeln!(f, "[{} ]", cells.join(""))?;
        }
        Ok(())
    }
}

pub(crate) fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// A unimodular map carrying `a` onto `b` (generators and cones), if any.
pub fn fan_isomorphism(a: &Fan, b: &Fan) -> Result<Option<LatticeMap>> {
    if a.dim != b.dim
        || a.generators.len() != b.generators.len()
        || a.max_cones.len() != b.max_cones.len()
    {
        return Ok(None);
    }
    let Some(anchor) = a.max_cones.first() else {
        return Ok(Some(LatticeMap::identity(a.dim)));
    };
    let Some(from) = UnimodularBasis::new(&a.cone_vectors(anchor))? else {
        return Ok(None);
    };
    let b_index: HashMap<&LatticeVector, usize> = b
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| (&g.vector, i))
        .collect();
    let b_cones: BTreeSet<&Cone> = b.max_cones.iter().collect();
    for target in &b.max_cones {
        for order in permutations(target.rays()) {
            let images: Vec<LatticeVector> = order.iter().map(|&i| b.vector(i).clone()).collect();
            let map = LatticeMap::from_bases(&from, &images)?;
            if let Some(perm) = ray_bijection(a, &map, &b_index)? {
                let all = a
                    .max_cones
                    .iter()
                    .all(|c| b_cones.contains(&Cone::new(c.rays().iter().map(|&i| perm[i]))));
                if all {
                    return Ok(Some(map));
                }
            }
        }
    }
    Ok(None)
}

fn ray_bijection(
    a: &Fan,
    map: &LatticeMap,
    b_index: &HashMap<&LatticeVector, usize>,
) -> Result<Option<Vec<usize>>> {
    let mut perm = Vec::with_capacity(a.generators.len());
    for g in &a.generators {
        match b_index.get(&map.apply(&g.vector)?) {
            Some(&j) => perm.push(j),
            None => return Ok(None),
        }
    }
    Ok(Some(perm))
}

/// A form of the fan that is invariant under `GL(n, Z)`: the least structural
/// key over all images sending an ordered maximal-cone basis to the standard basis.
pub fn lattice_canonical_key(fan: &Fan) -> Result<StructuralKey> {
    let mut best: Option<StructuralKey> = None;
    for c in &fan.max_cones {
        for order in permutations(c.rays()) {
            let vectors: Vec<LatticeVector> = order.iter().map(|&i| fan.vector(i).clone()).collect();
            let Some(basis) = UnimodularBasis::new(&vectors)? else {
                continue;
            };
            let generators = fan
                .generators
                .iter()
                .map(|g| {
                    Ok(RayGenerator {
                        name: g.name.clone(),
                        vector: LatticeVector::new(basis.coordinates(&g.vector)?),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let image = Fan {
                dim: fan.dim,
                generators,
                max_cones: fan.max_cones.clone(),
            };
            let key = image.structural_key();
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
    }
    Ok(best.unwrap_or_else(|| fan.structural_key()))
}
