//! Cluster tilting objects of `C`, generalized cluster tilting objects of
//! `C_{F^m}`, complements of almost (near) tilting objects and the tilting
//! graph.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::orbit::{delta, FStableObject, OrbitCategory, OrbitError, OrbitObject};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TiltingError {
    #[error("expected an orbit category with m = {expected}, got m = {found}")]
    WrongModulus { expected: u32, found: u32 },
    #[error("object is not rigid: Ext¹({0}, {1}) ≠ 0")]
    NotRigid(OrbitObject, OrbitObject),
    #[error("expected {expected} pairwise non-isomorphic summands, found {found}")]
    WrongSize { expected: usize, found: usize },
    #[error("expected {expected} F-orbits of summands, found {found}")]
    WrongOrbitCount { expected: usize, found: usize },
    #[error("generator has {found} complements in the cluster category, expected 2")]
    NotAlmostTilting { found: usize },
    #[error("completion by {0} fails the cluster tilting condition")]
    CompletionNotTilting(OrbitObject),
    #[error("{0} and {1} are not an exchange pair")]
    NotExchangePair(OrbitObject, OrbitObject),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
}

/// A basic cluster tilting object of `C`, as sorted ids into the `m = 1`
/// catalog.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ClusterTilting {
    pub members: Vec<usize>,
}

/// A generalized cluster tilting object of `C_{F^m}`, carried as the
/// `F`-stable object generated by a cluster tilting object of `C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenClusterTilting {
    pub f_stable: FStableObject,
}

impl GenClusterTilting {
    pub fn summands(&self) -> &[OrbitObject] {
        &self.f_stable.expansion
    }

    pub fn generator(&self) -> &[OrbitObject] {
        &self.f_stable.generator
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    /// `Ext¹(X, T)`
    Left,
    /// `Ext¹(T, X)`
    Right,
}

/// An indecomposable `X` for which "`X ∈ add T` iff `Ext¹(X, T) = 0`" (or the
/// mirrored condition) fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub object: OrbitObject,
    pub side: Side,
    pub in_add: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn witness(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

/// Checks the two-sided add-characterization of a generalized cluster
/// tilting object by scanning every indecomposable of the category.
pub fn verify_definition(
    cat: &OrbitCategory,
    candidate: &[OrbitObject],
) -> Result<Verdict, TiltingError> {
    let ids: Vec<usize> = candidate
        .iter()
        .map(|c| cat.id(c))
        .collect::<Result<_, _>>()?;
    Ok(verify_ids(cat, &ids, false))
}

/// The scan behind [`verify_definition`] on catalog ids; with `first_only`
/// it stops at the first violation.
fn verify_ids(cat: &OrbitCategory, ids: &[usize], first_only: bool) -> Verdict {
    let mut member = vec![false; cat.len()];
    for &i in ids {
        member[i] = true;
    }
    let mut violations = Vec::new();
    for (x, &in_add) in member.iter().enumerate() {
        let left = ids.iter().all(|&t| cat.ext_id(x, t) == 0);
        let right = ids.iter().all(|&t| cat.ext_id(t, x) == 0);
        for (side, vanishes) in [(Side::Left, left), (Side::Right, right)] {
            if vanishes != in_add {
                violations.push(Violation {
                    object: cat.object(x),
                    side,
                    in_add,
                });
                if first_only {
                    return Verdict {
                        holds: false,
                        violations,
                    };
                }
            }
        }
    }
    Verdict {
        holds: violations.is_empty(),
        violations,
    }
}

/// First pair with non-vanishing Ext¹, if any.
pub fn rigidity_witness(
    cat: &OrbitCategory,
    objects: &[OrbitObject],
) -> Result<Option<(OrbitObject, OrbitObject)>, TiltingError> {
    let ids: Vec<usize> = objects
        .iter()
        .map(|o| cat.id(o))
        .collect::<Result<_, _>>()?;
    for &a in &ids {
        for &b in &ids {
            if cat.ext_id(a, b) != 0 {
                return Ok(Some((cat.object(a), cat.object(b))));
            }
        }
    }
    Ok(None)
}

pub fn is_rigid(cat: &OrbitCategory, objects: &[OrbitObject]) -> Result<bool, TiltingError> {
    Ok(rigidity_witness(cat, objects)?.is_none())
}

/// All maximal sets of pairwise Ext¹-orthogonal indecomposables, as sorted
/// id lists. Bron–Kerbosch with pivoting over the compatibility graph.
pub fn maximal_rigid_sets(cat: &OrbitCategory) -> Vec<Vec<usize>> {
    let size = cat.len();
    let adj: Vec<Vec<bool>> = (0..size)
        .map(|a| {
            (0..size)
                .map(|b| a != b && cat.ext_id(a, b) == 0 && cat.ext_id(b, a) == 0)
                .collect()
        })
        .collect();
    let candidates: Vec<usize> = (0..size).filter(|&v| cat.ext_id(v, v) == 0).collect();
    let mut out = Vec::new();
    bron_kerbosch(&adj, &mut Vec::new(), candidates, Vec::new(), &mut out);
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    out
}

fn bron_kerbosch(
    adj: &[Vec<bool>],
    clique: &mut Vec<usize>,
    candidates: Vec<usize>,
    excluded: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if candidates.is_empty() {
        if excluded.is_empty() {
            out.push(clique.clone());
        }
        return;
    }
    let pivot = candidates
        .iter()
        .chain(&excluded)
        .copied()
        .max_by_key(|&u| candidates.iter().filter(|&&v| adj[u][v]).count())
        .expect("candidates is non-empty");
    let mut candidates = candidates;
    let mut excluded = excluded;
    let branch: Vec<usize> = candidates
        .iter()
        .copied()
        .filter(|&v| !adj[pivot][v])
        .collect();
    for v in branch {
        clique.push(v);
        let next_c = candidates.iter().copied().filter(|&w| adj[v][w]).collect();
        let next_x = excluded.iter().copied().filter(|&w| adj[v][w]).collect();
        bron_kerbosch(adj, clique, next_c, next_x, out);
        clique.pop();
        candidates.retain(|&w| w != v);
        excluded.push(v);
    }
}

/// Every basic cluster tilting object of the cluster category, in
/// lexicographic order of member ids.
///
/// Candidates are the maximal compatible sets with `n` members; each one is
/// confirmed by the full add-characterization scan.
pub fn enumerate_cluster_tilting(
    base: &OrbitCategory,
) -> Result<Vec<ClusterTilting>, TiltingError> {
    if base.modulus() != 1 {
        return Err(TiltingError::WrongModulus {
            expected: 1,
            found: base.modulus(),
        });
    }
    let n = base.modules().vertex_count();
    let mut out = Vec::new();
    for set in maximal_rigid_sets(base) {
        if set.len() == n && verify_ids(base, &set, false).holds {
            out.push(ClusterTilting { members: set });
        }
    }
    Ok(out)
}

/// Direct enumeration inside `C_{F^m}`: every set of indecomposables that
/// satisfies the add-characterization, without assuming `F`-stability.
pub fn enumerate_by_definition(cat: &OrbitCategory) -> Result<Vec<Vec<usize>>, TiltingError> {
    let mut out = Vec::new();
    for set in maximal_rigid_sets(cat) {
        if verify_ids(cat, &set, false).holds {
            out.push(set);
        }
    }
    Ok(out)
}

pub fn cluster_objects(base: &OrbitCategory, t: &ClusterTilting) -> Vec<OrbitObject> {
    t.members.iter().map(|&i| base.object(i)).collect()
}

/// `T ⊕ FT ⊕ ... ⊕ F^{m-1}T` in `C_{F^m}`.
pub fn lift(
    base: &OrbitCategory,
    cat: &OrbitCategory,
    t: &ClusterTilting,
) -> Result<GenClusterTilting, TiltingError> {
    let f_stable = cat.build_f_stable(&cluster_objects(base, t))?;
    Ok(GenClusterTilting { f_stable })
}

/// Outcome of a complement search on a rigid input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Completion {
    Complements(Vec<OrbitObject>),
    /// Rigid, but no single indecomposable completes it.
    NotExtendable,
}

/// All indecomposables `Y` such that `a ⊕ Y` is a generalized cluster
/// tilting object, for a rigid `a` with `nm - 1` summands.
pub fn complements_almost(
    cat: &OrbitCategory,
    a: &[OrbitObject],
) -> Result<Completion, TiltingError> {
    let expected = cat.modules().vertex_count() * cat.modulus() as usize - 1;
    let found = delta(a);
    if found != expected {
        return Err(TiltingError::WrongSize { expected, found });
    }
    if let Some((x, y)) = rigidity_witness(cat, a)? {
        return Err(TiltingError::NotRigid(x, y));
    }
    let mut candidate: Vec<usize> = a.iter().map(|x| cat.id(x)).collect::<Result<_, _>>()?;
    candidate.sort_unstable();
    candidate.dedup();
    let mut found = Vec::new();
    for y in 0..cat.len() {
        if candidate.binary_search(&y).is_ok() {
            continue;
        }
        candidate.push(y);
        if verify_ids(cat, &candidate, true).holds {
            found.push(cat.object(y));
        }
        candidate.pop();
    }
    Ok(if found.is_empty() {
        Completion::NotExtendable
    } else {
        Completion::Complements(found)
    })
}

/// The two `F`-stable completions `a ⊕ N₁`, `a ⊕ N₂` of an almost near
/// tilting object, with `N_i` generated by the two complements of the
/// generator in the cluster category.
pub fn complements_almost_near(
    base: &OrbitCategory,
    cat: &OrbitCategory,
    a: &FStableObject,
) -> Result<(FStableObject, FStableObject), TiltingError> {
    if base.modulus() != 1 {
        return Err(TiltingError::WrongModulus {
            expected: 1,
            found: base.modulus(),
        });
    }
    let n = base.modules().vertex_count();
    if a.orbit_count() + 1 != n {
        return Err(TiltingError::WrongOrbitCount {
            expected: n - 1,
            found: a.orbit_count(),
        });
    }
    if let Some((x, y)) = rigidity_witness(cat, &a.expansion)? {
        return Err(TiltingError::NotRigid(x, y));
    }
    let generator: Vec<OrbitObject> = a
        .generator
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let complements = match complements_almost(base, &generator) {
        Ok(Completion::Complements(c)) => c,
        Ok(Completion::NotExtendable) => return Err(TiltingError::NotAlmostTilting { found: 0 }),
        Err(e) => return Err(e),
    };
    if complements.len() != 2 {
        return Err(TiltingError::NotAlmostTilting {
            found: complements.len(),
        });
    }
    let complete = |x: OrbitObject| -> Result<FStableObject, TiltingError> {
        let mut g = generator.clone();
        g.push(x);
        g.sort();
        let m = cat.build_f_stable(&g)?;
        if !verify_definition(cat, &m.expansion)?.holds {
            return Err(TiltingError::CompletionNotTilting(x));
        }
        Ok(m)
    };
    Ok((complete(complements[0])?, complete(complements[1])?))
}

#[derive(Debug, Clone)]
pub struct TiltingGraph {
    pub modulus: u32,
    pub vertices: Vec<GenClusterTilting>,
    /// Unordered pairs `(i, j)` with `i < j`, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl TiltingGraph {
    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| match (a == v, b == v) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbours(v).len()
    }

    pub fn is_connected(&self) -> bool {
        is_connected(self)
    }
}

/// Vertices are the lifts of all cluster tilting objects (in catalog order);
/// two are joined when they share an almost near tilting object whose two
/// `F`-stable completions are exactly these two.
pub fn build_tilting_graph(
    base: &OrbitCategory,
    cat: &OrbitCategory,
    tiltings: &[ClusterTilting],
) -> Result<TiltingGraph, TiltingError> {
    let vertices: Vec<GenClusterTilting> = tiltings
        .iter()
        .map(|t| lift(base, cat, t))
        .collect::<Result<_, _>>()?;
    let position: HashMap<Vec<OrbitObject>, usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (sorted(v.generator()), i))
        .collect();
    let mut edges = BTreeSet::new();
    for (v, vertex) in vertices.iter().enumerate() {
        let gen = vertex.generator();
        for k in 0..gen.len() {
            let rest: Vec<OrbitObject> = gen
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, &g)| g)
                .collect();
            let almost = cat.build_f_stable(&rest)?;
            let (m1, m2) = complements_almost_near(base, cat, &almost)?;
            let ends: Vec<usize> = [m1, m2]
                .iter()
                .map(|m| position.get(&sorted(&m.generator)).copied())
                .collect::<Option<_>>()
                .ok_or(TiltingError::CompletionNotTilting(gen[k]))?;
            if !ends.contains(&v) {
                return Err(TiltingError::CompletionNotTilting(gen[k]));
            }
            let (a, b) = (ends[0].min(ends[1]), ends[0].max(ends[1]));
            if a != b {
                edges.insert((a, b));
            }
        }
    }
    Ok(TiltingGraph {
        modulus: cat.modulus(),
        vertices,
        edges: edges.into_iter().collect(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphVertex {
    pub index: usize,
    pub generator: Vec<OrbitObject>,
    /// Catalog ids of the summands in `C_{F^m}`, sorted.
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphReport {
    pub schema_version: u32,
    pub m: u32,
    pub vertices: Vec<GraphVertex>,
    pub edges: Vec<(usize, usize)>,
    pub connected: bool,
}

impl TiltingGraph {
    pub fn report(&self, cat: &OrbitCategory) -> Result<GraphReport, TiltingError> {
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .map(|(index, v)| {
                let mut members: Vec<usize> = v
                    .summands()
                    .iter()
                    .map(|s| cat.id(s))
                    .collect::<Result<_, _>>()?;
                members.sort_unstable();
                Ok(GraphVertex {
                    index,
                    generator: v.generator().to_vec(),
                    members,
                })
            })
            .collect::<Result<_, TiltingError>>()?;
        Ok(GraphReport {
            schema_version: crate::SCHEMA_VERSION,
            m: self.modulus,
            vertices,
            edges: self.edges.clone(),
            connected: self.is_connected(),
        })
    }

    /// Graphviz rendering; each vertex is labelled with its generator.
    pub fn to_dot(&self) -> String {
        let mut out = format!("graph tilting_m{} {{\n", self.modulus);
        for (i, v) in self.vertices.iter().enumerate() {
            let label: Vec<String> = v.generator().iter().map(ToString::to_string).collect();
            out.push_str(&format!(
                "  v{i} [label=\"T{i}: {}\"];\n",
                label.join(" + ")
            ));
        }
        for (a, b) in &self.edges {
            out.push_str(&format!("  v{a} -- v{b};\n"));
        }
        out.push_str("}\n");
        out
    }
}

fn sorted(objs: &[OrbitObject]) -> Vec<OrbitObject> {
    let mut v = objs.to_vec();
    v.sort();
    v
}

pub fn is_connected(g: &TiltingGraph) -> bool {
    let n = g.vertices.len();
    if n == 0 {
        return true;
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in &g.edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// `dim Ext¹_C(x₁, x₂)` for the two complements of an almost tilting object
/// of the cluster category.
pub fn exchange_pair_homdim(
    base: &OrbitCategory,
    tiltings: &[ClusterTilting],
    x1: &OrbitObject,
    x2: &OrbitObject,
) -> Result<u32, TiltingError> {
    let (i1, i2) = (base.id(x1)?, base.id(x2)?);
    let known: BTreeSet<&Vec<usize>> = tiltings.iter().map(|t| &t.members).collect();
    let exchange = tiltings.iter().any(|t| {
        if !t.members.contains(&i1) || t.members.contains(&i2) {
            return false;
        }
        let mut swapped: Vec<usize> = t
            .members
            .iter()
            .map(|&i| if i == i1 { i2 } else { i })
            .collect();
        swapped.sort_unstable();
        known.contains(&swapped)
    });
    if !exchange {
        return Err(TiltingError::NotExchangePair(*x1, *x2));
    }
    Ok(base.ext1_orbit(x1, x2)?)
}
