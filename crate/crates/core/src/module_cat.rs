//! Indecomposable modules over a Dynkin path algebra, the Auslander–Reiten
//! quiver obtained by knitting from the projectives, and Hom/Ext¹ dimension
//! tables.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::quiver::{DimVector, Quiver};
use crate::rep::{self, Morphism, Representation};
use crate::scalar::ExactField;

/// Position of a module in the knitting catalog. Printed 1-based as `m<k>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleId(pub usize);

impl Serialize for ModuleId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for ModuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{}", self.0 + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnitError {
    #[error("knitting produced the non-positive dimension vector {dim} at vertex {vertex}, level {level}")]
    NonPositive {
        vertex: usize,
        level: usize,
        dim: DimVector,
    },
    #[error("knitting stopped at {found} modules, expected {expected}")]
    WrongCount { expected: usize, found: usize },
    #[error("mesh cokernel for {module} is not the expected indecomposable: {reason}")]
    BadCokernel { module: ModuleId, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndModule {
    pub id: ModuleId,
    pub dim: DimVector,
    /// 0-based vertex `i` when this is the projective cover of the simple at `i`.
    pub projective_at: Option<usize>,
    /// 0-based vertex `i` when this is the injective envelope of the simple at `i`.
    pub injective_at: Option<usize>,
    /// Coordinates in the translation quiver: the module is `τ^{-level} P_vertex`.
    pub vertex: usize,
    pub level: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IrreducibleArrow {
    pub source: ModuleId,
    pub target: ModuleId,
    pub multiplicity: u32,
}

#[derive(Debug, Clone)]
pub struct ARQuiver {
    modules: Vec<IndModule>,
    arrows: Vec<IrreducibleArrow>,
    /// Indices into `arrows` of the arrows ending at each module, in creation order.
    incoming: Vec<Vec<usize>>,
    tau: Vec<Option<ModuleId>>,
    tau_inverse: Vec<Option<ModuleId>>,
    projectives: Vec<ModuleId>,
    injectives: Vec<ModuleId>,
}

impl ARQuiver {
    pub fn modules(&self) -> &[IndModule] {
        &self.modules
    }

    pub fn module(&self, id: ModuleId) -> &IndModule {
        &self.modules[id.0]
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn arrows(&self) -> &[IrreducibleArrow] {
        &self.arrows
    }

    pub fn predecessors(&self, id: ModuleId) -> impl Iterator<Item = &IrreducibleArrow> + '_ {
        self.incoming[id.0].iter().map(move |&a| &self.arrows[a])
    }

    pub fn successors(&self, id: ModuleId) -> impl Iterator<Item = &IrreducibleArrow> + '_ {
        self.arrows.iter().filter(move |a| a.source == id)
    }

    pub fn tau(&self, id: ModuleId) -> Option<ModuleId> {
        self.tau[id.0]
    }

    pub fn tau_inverse(&self, id: ModuleId) -> Option<ModuleId> {
        self.tau_inverse[id.0]
    }

    /// Projective cover `P_i` and injective envelope `I_i` of the simple at
    /// 0-based vertex `i`.
    pub fn nakayama_pair(&self, vertex: usize) -> (ModuleId, ModuleId) {
        (self.projectives[vertex], self.injectives[vertex])
    }

    pub fn projectives(&self) -> &[ModuleId] {
        &self.projectives
    }

    pub fn injectives(&self) -> &[ModuleId] {
        &self.injectives
    }

    pub fn find_by_dim(&self, dim: &DimVector) -> Option<ModuleId> {
        self.modules.iter().find(|m| &m.dim == dim).map(|m| m.id)
    }
}

/// Builds the AR quiver of `mod kQ` by knitting the preprojective component
/// from the projectives.
///
/// Within a level, vertices are processed sinks first, which is also the
/// catalog order.
pub fn knit_ar_quiver(q: &Quiver) -> Result<ARQuiver, KnitError> {
    let n = q.vertex_count();
    let order = q.sink_first_order();
    let injective_dims: HashMap<DimVector, usize> = (0..n).map(|v| (q.paths_to(v), v)).collect();
    let mut k = Knitter {
        injective_dims,
        modules: Vec::new(),
        arrows: Vec::new(),
        incoming: Vec::new(),
        tau: Vec::new(),
        at: HashMap::new(),
    };

    for &v in &order {
        k.push(v, 0, q.paths_from(v), None);
    }
    // rad P_i = ⊕_{i -> j} P_j
    for &v in &order {
        for &(i, j) in q.arrows() {
            if i == v {
                k.link(k.at[&(j, 0)], k.at[&(i, 0)]);
            }
        }
    }

    let mut level = 0;
    loop {
        let mut created = false;
        for &v in &order {
            let Some(&m) = k.at.get(&(v, level)) else {
                continue;
            };
            if k.modules[m.0].injective_at.is_some() {
                continue;
            }
            // successors of (v, level): (j, level + 1) for v -> j and (j, level) for j -> v
            let mut succ = Vec::new();
            for &(s, t) in q.arrows() {
                if s == v {
                    succ.extend(k.at.get(&(t, level + 1)).copied());
                }
            }
            for &(s, t) in q.arrows() {
                if t == v {
                    succ.extend(k.at.get(&(s, level)).copied());
                }
            }
            let sum = succ
                .iter()
                .fold(DimVector::zero(n), |acc, e| acc.add(&k.modules[e.0].dim));
            let dim = sum.sub(&k.modules[m.0].dim);
            if !dim.is_positive() {
                return Err(KnitError::NonPositive {
                    vertex: v + 1,
                    level: level + 1,
                    dim,
                });
            }
            let new = k.push(v, level + 1, dim, Some(m));
            for e in succ {
                k.link(e, new);
            }
            created = true;
        }
        if !created {
            break;
        }
        level += 1;
    }

    let Knitter {
        modules,
        arrows,
        incoming,
        tau,
        at,
        ..
    } = k;
    let expected = q.class().positive_root_count();
    if modules.len() != expected {
        return Err(KnitError::WrongCount {
            expected,
            found: modules.len(),
        });
    }
    let mut tau_inverse = vec![None; modules.len()];
    for (i, t) in tau.iter().enumerate() {
        if let Some(t) = t {
            tau_inverse[t.0] = Some(ModuleId(i));
        }
    }
    let projectives = (0..n).map(|v| at[&(v, 0)]).collect();
    let mut injectives = vec![None; n];
    for m in &modules {
        if let Some(v) = m.injective_at {
            injectives[v] = Some(m.id);
        }
    }
    let Some(injectives) = injectives.into_iter().collect::<Option<Vec<_>>>() else {
        return Err(KnitError::WrongCount {
            expected: n,
            found: modules.iter().filter(|m| m.injective_at.is_some()).count(),
        });
    };
    for a in &arrows {
        assert_eq!(a.multiplicity, 1, "Dynkin meshes are multiplicity free");
    }
    Ok(ARQuiver {
        modules,
        arrows,
        incoming,
        tau,
        tau_inverse,
        projectives,
        injectives,
    })
}

struct Knitter {
    injective_dims: HashMap<DimVector, usize>,
    modules: Vec<IndModule>,
    arrows: Vec<IrreducibleArrow>,
    incoming: Vec<Vec<usize>>,
    tau: Vec<Option<ModuleId>>,
    at: HashMap<(usize, usize), ModuleId>,
}

impl Knitter {
    fn push(
        &mut self,
        vertex: usize,
        level: usize,
        dim: DimVector,
        prev: Option<ModuleId>,
    ) -> ModuleId {
        let id = ModuleId(self.modules.len());
        let injective_at = self.injective_dims.get(&dim).copied();
        self.modules.push(IndModule {
            id,
            dim,
            projective_at: (level == 0).then_some(vertex),
            injective_at,
            vertex,
            level,
        });
        self.incoming.push(Vec::new());
        self.tau.push(prev);
        self.at.insert((vertex, level), id);
        id
    }

    fn link(&mut self, source: ModuleId, target: ModuleId) {
        // a second arrow between the same pair would mean multiplicity 2
        if let Some(&a) = self.incoming[target.0]
            .iter()
            .find(|&&a| self.arrows[a].source == source)
        {
            self.arrows[a].multiplicity += 1;
            return;
        }
        self.incoming[target.0].push(self.arrows.len());
        self.arrows.push(IrreducibleArrow {
            source,
            target,
            multiplicity: 1,
        });
    }
}

/// Dimensions of Hom and Ext¹ between all pairs of indecomposables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomTable {
    hom: Vec<Vec<u32>>,
    ext: Vec<Vec<u32>>,
}

impl HomTable {
    /// Fills the table by mesh recursion:
    /// `dim Hom(P_i, N) = (dim N)_i` and, for the mesh ending at `M`,
    /// `dim Hom(M, N) = Σ_{E -> M} dim Hom(E, N) − dim Hom(τM, N) + [τM ≅ N]`.
    /// Ext¹ then follows from the Euler form.
    pub fn by_mesh_recursion(q: &Quiver, ar: &ARQuiver) -> Self {
        let size = ar.len();
        let mut hom = vec![vec![0i64; size]; size];
        for (target, tm) in ar.modules().iter().enumerate() {
            let tdim = &tm.dim;
            for m in ar.modules() {
                hom[m.id.0][target] = match ar.tau(m.id) {
                    None => tdim.0[m.projective_at.expect("no τ only for projectives")],
                    Some(t) => {
                        let mid: i64 = ar.predecessors(m.id).map(|a| hom[a.source.0][target]).sum();
                        mid - hom[t.0][target] + i64::from(t.0 == target)
                    }
                };
            }
        }
        let mut ext = vec![vec![0i64; size]; size];
        for a in 0..size {
            for b in 0..size {
                let euler = q
                    .euler_form(&ar.modules[a].dim, &ar.modules[b].dim)
                    .expect("catalog vectors match the quiver");
                ext[a][b] = hom[a][b] - euler;
            }
        }
        let to_u32 = |t: Vec<Vec<i64>>| -> Vec<Vec<u32>> {
            t.into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|x| u32::try_from(x).expect("dimensions are non-negative"))
                        .collect()
                })
                .collect()
        };
        HomTable {
            hom: to_u32(hom),
            ext: to_u32(ext),
        }
    }

    pub fn size(&self) -> usize {
        self.hom.len()
    }

    pub fn hom(&self, m: ModuleId, n: ModuleId) -> u32 {
        self.hom[m.0][n.0]
    }

    pub fn ext(&self, m: ModuleId, n: ModuleId) -> u32 {
        self.ext[m.0][n.0]
    }

    /// Overwrites one Hom entry. Only for fault-injection checks of the
    /// verification suite.
    #[doc(hidden)]
    pub fn corrupt_hom(&mut self, m: ModuleId, n: ModuleId, value: u32) {
        self.hom[m.0][n.0] = value;
    }

    /// Tab-separated export: a header row and column of module ids.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (title, table) in [("hom", &self.hom), ("ext", &self.ext)] {
            out.push_str(title);
            for j in 0..table.len() {
                out.push_str(&format!("\t{}", ModuleId(j)));
            }
            out.push('\n');
            for (i, row) in table.iter().enumerate() {
                out.push_str(&ModuleId(i).to_string());
                for x in row {
                    out.push_str(&format!("\t{x}"));
                }
                out.push('\n');
            }
        }
        out
    }
}

/// `mod kQ` for a Dynkin quiver: the knitted AR quiver and its Hom table.
#[derive(Debug, Clone)]
pub struct ModuleCategory {
    quiver: Quiver,
    ar: ARQuiver,
    table: HomTable,
}

impl ModuleCategory {
    pub fn new(quiver: Quiver) -> Result<Self, KnitError> {
        let ar = knit_ar_quiver(&quiver)?;
        let table = HomTable::by_mesh_recursion(&quiver, &ar);
        Ok(ModuleCategory { quiver, ar, table })
    }

    /// Same quiver, replaced table. Used to feed deliberately corrupted data
    /// into the verification suite.
    #[doc(hidden)]
    pub fn with_table(mut self, table: HomTable) -> Self {
        self.table = table;
        self
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn ar(&self) -> &ARQuiver {
        &self.ar
    }

    pub fn table(&self) -> &HomTable {
        &self.table
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn len(&self) -> usize {
        self.ar.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ar.is_empty()
    }

    pub fn hom_dim(&self, m: ModuleId, n: ModuleId) -> u32 {
        self.table.hom(m, n)
    }

    pub fn ext_dim(&self, m: ModuleId, n: ModuleId) -> u32 {
        self.table.ext(m, n)
    }

    pub fn ids(&self) -> impl Iterator<Item = ModuleId> {
        (0..self.ar.len()).map(ModuleId)
    }
}

/// Explicit representations of every catalog module together with the
/// irreducible maps between them.
#[derive(Debug, Clone)]
pub struct Realization<T> {
    pub modules: Vec<Representation<T>>,
    /// One morphism per entry of [`ARQuiver::arrows`].
    pub arrows: Vec<Morphism<T>>,
}

/// Realizes the catalog over `T`: projectives from paths, every other module
/// as the cokernel of its mesh `τM -> ⊕ E`.
///
/// Each cokernel is checked to have the knitted dimension vector and a
/// one-dimensional endomorphism ring.
pub fn realize<T: ExactField>(q: &Quiver, ar: &ARQuiver) -> Result<Realization<T>, KnitError> {
    let mut modules: Vec<Option<Representation<T>>> = vec![None; ar.len()];
    let mut maps: Vec<Option<Morphism<T>>> = vec![None; ar.arrows().len()];

    for m in ar.modules() {
        let built = match ar.tau(m.id) {
            None => {
                let v = m.projective_at.expect("level 0 is projective");
                let p = Representation::projective(q, v);
                // arrows between projectives: P_j -> P_i for each quiver arrow i -> j
                for &a in &ar.incoming[m.id.0] {
                    let src = ar.module(ar.arrows()[a].source);
                    let qa = q
                        .arrows()
                        .iter()
                        .position(|&(s, t)| s == v && Some(t) == src.projective_at)
                        .expect("arrow between projectives comes from the quiver");
                    maps[a] = Some(rep::projective_inclusion(q, qa));
                }
                p
            }
            Some(t) => {
                let source = modules[t.0].as_ref().expect("τM precedes M");
                let preds: Vec<usize> = ar.incoming[m.id.0].clone();
                let parts: Vec<&Representation<T>> = preds
                    .iter()
                    .map(|&a| {
                        modules[ar.arrows()[a].source.0]
                            .as_ref()
                            .expect("predecessors come first")
                    })
                    .collect();
                let middle = Representation::direct_sum(q, &parts);
                // τM -> E arrows were realized when each E was created
                let out_maps: Vec<&Morphism<T>> = preds
                    .iter()
                    .map(|&a| {
                        let e = ar.arrows()[a].source;
                        let idx = ar.incoming[e.0]
                            .iter()
                            .copied()
                            .find(|&b| ar.arrows()[b].source == t)
                            .expect("mesh arrow τM -> E exists");
                        maps[idx].as_ref().expect("realized earlier")
                    })
                    .collect();
                let components = (0..q.vertex_count())
                    .map(|v| {
                        let blocks: Vec<_> =
                            out_maps.iter().map(|f| f.components[v].clone()).collect();
                        crate::linalg::Matrix::vstack(&blocks, source.dims[v])
                    })
                    .collect();
                let f = Morphism { components };
                let (coker, proj) = rep::cokernel(q, &middle, &f);
                if coker.dim_vector() != m.dim {
                    return Err(KnitError::BadCokernel {
                        module: m.id,
                        reason: format!(
                            "dimension vector {} instead of {}",
                            coker.dim_vector(),
                            m.dim
                        ),
                    });
                }
                if rep::hom_dimension(q, &coker, &coker) != 1 {
                    return Err(KnitError::BadCokernel {
                        module: m.id,
                        reason: "cokernel is decomposable".into(),
                    });
                }
                let mut offset = vec![0; q.vertex_count()];
                for (k, &a) in preds.iter().enumerate() {
                    let part = parts[k];
                    let components = (0..q.vertex_count())
                        .map(|v| {
                            proj.components[v].block(0, offset[v], coker.dims[v], part.dims[v])
                        })
                        .collect();
                    for (o, d) in offset.iter_mut().zip(&part.dims) {
                        *o += d;
                    }
                    maps[a] = Some(Morphism { components });
                }
                coker
            }
        };
        modules[m.id.0] = Some(built);
    }
    Ok(Realization {
        modules: modules.into_iter().map(|m| m.expect("all built")).collect(),
        arrows: maps
            .into_iter()
            .map(|m| m.expect("all arrows realized"))
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn dims(ar: &ARQuiver) -> Vec<Vec<i64>> {
        ar.modules().iter().map(|m| m.dim.0.clone()).collect()
    }

    #[test]
    fn knits_a2() {
        let q = Quiver::new(2, &[(1, 2)]).unwrap();
        let ar = knit_ar_quiver(&q).unwrap();
        assert_eq!(dims(&ar), vec![vec![0, 1], vec![1, 1], vec![1, 0]]);
        let s1 = ar.find_by_dim(&DimVector(vec![1, 0])).unwrap();
        let s2 = ar.find_by_dim(&DimVector(vec![0, 1])).unwrap();
        assert_eq!(ar.tau(s1), Some(s2));
        assert_eq!(ar.tau_inverse(s2), Some(s1));
        let (p1, i1) = ar.nakayama_pair(0);
        assert_eq!(ar.module(p1).dim, DimVector(vec![1, 1]));
        assert_eq!(ar.module(i1).dim, DimVector(vec![1, 0]));
        let (p2, i2) = ar.nakayama_pair(1);
        assert_eq!(ar.module(p2).dim, DimVector(vec![0, 1]));
        assert_eq!(ar.module(i2).dim, DimVector(vec![1, 1]));
    }

    #[test]
    fn knits_a1() {
        let q = Quiver::new(1, &[]).unwrap();
        let ar = knit_ar_quiver(&q).unwrap();
        assert_eq!(ar.len(), 1);
        assert!(ar.arrows().is_empty());
        assert_eq!(ar.tau(ModuleId(0)), None);
        assert_eq!(ar.nakayama_pair(0), (ModuleId(0), ModuleId(0)));
    }

    #[test]
    fn knits_a3_intervals() {
        let q = Quiver::new(3, &[(1, 2), (2, 3)]).unwrap();
        let ar = knit_ar_quiver(&q).unwrap();
        let mut got = dims(&ar);
        got.sort();
        let mut intervals = Vec::new();
        for a in 0..3 {
            for b in a..3 {
                intervals.push(
                    (0..3)
                        .map(|i| i64::from(a <= i && i <= b))
                        .collect::<Vec<_>>(),
                );
            }
        }
        intervals.sort();
        assert_eq!(got, intervals);
    }

    #[test]
    fn mesh_additivity_and_tau_bijection() {
        for q in [
            Quiver::new(4, &[(1, 2), (3, 2), (4, 2)]).unwrap(),
            Quiver::new(4, &[(2, 1), (2, 3), (4, 3)]).unwrap(),
        ] {
            let ar = knit_ar_quiver(&q).unwrap();
            for m in ar.modules() {
                if let Some(t) = ar.tau(m.id) {
                    let sum = ar.predecessors(m.id).fold(DimVector::zero(4), |acc, a| {
                        acc.add(&ar.module(a.source).dim)
                    });
                    assert_eq!(sum, ar.module(t).dim.add(&m.dim));
                    assert_eq!(ar.tau_inverse(t), Some(m.id));
                }
            }
            let nonproj = ar
                .modules()
                .iter()
                .filter(|m| ar.tau(m.id).is_some())
                .count();
            let noninj = ar
                .modules()
                .iter()
                .filter(|m| ar.tau_inverse(m.id).is_some())
                .count();
            assert_eq!(nonproj, ar.len() - 4);
            assert_eq!(noninj, ar.len() - 4);
        }
    }

    #[test]
    fn a2_hom_and_ext_examples() {
        let q = Quiver::new(2, &[(1, 2)]).unwrap();
        let mc = ModuleCategory::new(q).unwrap();
        let ar = mc.ar();
        let (p1, _) = ar.nakayama_pair(0);
        let s1 = ar.find_by_dim(&DimVector(vec![1, 0])).unwrap();
        let s2 = ar.find_by_dim(&DimVector(vec![0, 1])).unwrap();
        assert_eq!(mc.hom_dim(p1, s1), 1);
        assert_eq!(mc.hom_dim(s1, s2), 0);
        assert_eq!(mc.ext_dim(s1, s2), 1);
        for m in mc.ids() {
            assert_eq!(mc.hom_dim(m, m), 1);
            assert_eq!(mc.ext_dim(m, m), 0);
        }
    }

    #[test]
    fn realization_matches_tables_on_d4() {
        let q = Quiver::new(4, &[(1, 2), (2, 3), (4, 2)]).unwrap();
        let mc = ModuleCategory::new(q.clone()).unwrap();
        let real = realize::<Rational64>(&q, mc.ar()).unwrap();
        for (i, a) in mc.ar().arrows().iter().enumerate() {
            let (s, t) = (&real.modules[a.source.0], &real.modules[a.target.0]);
            assert!(s.is_morphism_to(&q, t, &real.arrows[i]));
        }
        for a in mc.ids() {
            for b in mc.ids() {
                let (ra, rb) = (&real.modules[a.0], &real.modules[b.0]);
                assert_eq!(rep::hom_dimension(&q, ra, rb) as u32, mc.hom_dim(a, b));
                assert_eq!(rep::ext_dimension(&q, ra, rb) as u32, mc.ext_dim(a, b));
            }
        }
    }

    #[test]
    fn tsv_has_headers() {
        let mc = ModuleCategory::new(Quiver::new(2, &[(1, 2)]).unwrap()).unwrap();
        let tsv = mc.table().to_tsv();
        let mut lines = tsv.lines();
        assert_eq!(lines.next(), Some("hom\tm1\tm2\tm3"));
        assert_eq!(lines.next(), Some("m1\t1\t1\t0"));
        assert_eq!(tsv.lines().count(), 8);
    }
}
