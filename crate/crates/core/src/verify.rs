//! The invariant battery: every structural statement the library relies on,
//! checked exhaustively on small Dynkin quivers.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::derived::DObject;
use crate::endo::{endo_profile, s12_dimension, single_object_end_dim};
use crate::module_cat::ModuleCategory;
use crate::orbit::{OrbitCategory, OrbitObject};
use crate::quiver::{DynkinClass, Family, Quiver};
use crate::rep::{ext_dimension, hom_dimension};
use crate::tilting::{
    build_tilting_graph, cluster_objects, complements_almost, complements_almost_near,
    enumerate_by_definition, enumerate_cluster_tilting, exchange_pair_homdim, lift,
    maximal_rigid_sets, verify_definition, ClusterTilting, Completion, TiltingGraph,
};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub quiver: String,
    /// `None` for checks that do not depend on `m`.
    pub m: Option<u32>,
    pub passed: bool,
    /// First failure, if any.
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub schema_version: u32,
    pub passed: bool,
    pub total: usize,
    pub failed: usize,
    pub checks: Vec<CheckResult>,
}

impl Summary {
    pub fn from_checks(checks: Vec<CheckResult>) -> Self {
        let failed = checks.iter().filter(|c| !c.passed).count();
        Summary {
            schema_version: crate::SCHEMA_VERSION,
            passed: failed == 0,
            total: checks.len(),
            failed,
            checks,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// `A_1 .. A_4` and `D_4` in every orientation.
pub fn default_battery() -> Vec<Quiver> {
    let mut out = Vec::new();
    for n in 1..=4 {
        out.extend(
            Quiver::standard(DynkinClass::new(Family::A, n).expect("valid rank"))
                .all_orientations(),
        );
    }
    out.extend(
        Quiver::standard(DynkinClass::new(Family::D, 4).expect("valid rank")).all_orientations(),
    );
    out
}

pub const DEFAULT_MODULI: [u32; 3] = [1, 2, 3];

/// `A3[1>2,3>2]`: the Dynkin type followed by the 1-based arrows.
pub fn quiver_label(q: &Quiver) -> String {
    let arrows: Vec<String> = q
        .arrows()
        .iter()
        .map(|(s, t)| format!("{}>{}", s + 1, t + 1))
        .collect();
    format!("{}[{}]", q.class(), arrows.join(","))
}

type Outcome = Result<(), String>;

fn ensure(cond: bool, detail: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(detail())
    }
}

struct Recorder {
    quiver: String,
    out: Vec<CheckResult>,
}

impl Recorder {
    fn record(&mut self, check: &str, m: Option<u32>, outcome: Outcome) {
        self.out.push(CheckResult {
            check: check.to_string(),
            quiver: self.quiver.clone(),
            m,
            passed: outcome.is_ok(),
            detail: outcome.err(),
        });
    }
}

/// Runs every check for one quiver and the given moduli.
pub fn run_quiver(mc: &ModuleCategory, moduli: &[u32]) -> Vec<CheckResult> {
    let mut rec = Recorder {
        quiver: quiver_label(mc.quiver()),
        out: Vec::new(),
    };
    rec.record("module_count_is_root_count", None, module_count(mc));
    rec.record("hom_matches_matrix_oracle", None, matrix_oracle(mc, true));
    rec.record("ext_matches_matrix_oracle", None, matrix_oracle(mc, false));
    rec.record("euler_form_is_hom_minus_ext", None, euler_form(mc));
    rec.record("derived_serre_duality", None, derived_serre(mc));

    let base = match OrbitCategory::new(mc, 1) {
        Ok(b) => b,
        Err(e) => {
            rec.record("cluster_category_builds", None, Err(e.to_string()));
            return rec.out;
        }
    };
    let tiltings = match enumerate_cluster_tilting(&base) {
        Ok(t) => t,
        Err(e) => {
            rec.record("cluster_tilting_enumeration", None, Err(e.to_string()));
            return rec.out;
        }
    };
    rec.record("two_calabi_yau_symmetry", Some(1), two_cy(&base));
    rec.record(
        "exchange_pairs_have_one_dimensional_ext",
        Some(1),
        exchange_pairs(&base, &tiltings),
    );
    let base_graph = build_tilting_graph(&base, &base, &tiltings).map_err(|e| e.to_string());

    for &m in moduli {
        let cat = match OrbitCategory::new(mc, m) {
            Ok(c) => c,
            Err(e) => {
                rec.record("orbit_category_builds", Some(m), Err(e.to_string()));
                continue;
            }
        };
        let s = Some(m);
        rec.record("orbit_catalog_size", s, catalog_size(mc, &cat));
        rec.record(
            "indecomposables_have_local_endomorphisms",
            s,
            local_ends(&cat),
        );
        rec.record("indecomposables_are_rigid", s, self_ext(&cat));
        rec.record("orbit_serre_duality", s, orbit_serre(&cat));
        rec.record("fractional_calabi_yau_permutation", s, fractional_cy(&cat));
        rec.record("f_action_has_order_m", s, f_order(&cat));
        rec.record("projection_fibres_have_size_m", s, rho_fibres(&base, &cat));
        rec.record("rigidity_transfer", s, rigidity_transfer(&base, &cat));
        rec.record("f_twist_hom_invariance", s, f_twist(&base, &cat));
        rec.record(
            "lifts_satisfy_add_characterization",
            s,
            lifts_ok(&base, &cat, &tiltings),
        );
        rec.record(
            "direct_enumeration_matches_lifts",
            s,
            direct_matches(&base, &cat, &tiltings),
        );
        rec.record(
            "orbit_count_criterion",
            s,
            orbit_count_criterion(&base, &cat),
        );
        rec.record(
            "almost_tilting_complement_count",
            s,
            complement_counts(&cat, &base, &tiltings),
        );
        rec.record(
            "almost_near_tilting_two_completions",
            s,
            near_completions(&base, &cat, &tiltings),
        );
        match build_tilting_graph(&base, &cat, &tiltings) {
            Ok(g) => {
                rec.record(
                    "tilting_graph_connected",
                    s,
                    ensure(g.is_connected(), || "graph is disconnected".into()),
                );
                rec.record(
                    "tilting_graph_regular_of_degree_n",
                    s,
                    regular(&g, mc.vertex_count()),
                );
                rec.record(
                    "tilting_graph_edges_are_single_exchanges",
                    s,
                    single_exchanges(&g),
                );
                rec.record(
                    "tilting_graph_independent_of_m",
                    s,
                    same_edges(&g, &base_graph),
                );
                rec.record("exchange_module_dimension_is_m", s, s12(&cat, &g));
            }
            Err(e) => rec.record("tilting_graph_builds", s, Err(e.to_string())),
        }
        rec.record(
            "endomorphism_block_pattern",
            s,
            block_pattern(&base, &cat, &tiltings),
        );
    }
    rec.out
}

pub fn run_battery(quivers: &[Quiver], moduli: &[u32]) -> Summary {
    let mut checks = Vec::new();
    for q in quivers {
        match ModuleCategory::new(q.clone()) {
            Ok(mc) => checks.extend(run_quiver(&mc, moduli)),
            Err(e) => checks.push(CheckResult {
                check: "ar_quiver_knits".into(),
                quiver: quiver_label(q),
                m: None,
                passed: false,
                detail: Some(e.to_string()),
            }),
        }
    }
    Summary::from_checks(checks)
}

fn module_count(mc: &ModuleCategory) -> Outcome {
    let expected = mc.quiver().class().positive_root_count();
    ensure(mc.len() == expected, || {
        format!("{} modules, {} positive roots", mc.len(), expected)
    })
}

fn matrix_oracle(mc: &ModuleCategory, hom: bool) -> Outcome {
    let q = mc.quiver();
    let real = crate::module_cat::realize::<Rational>(q, mc.ar()).map_err(|e| e.to_string())?;
    for a in mc.ids() {
        for b in mc.ids() {
            let (ra, rb) = (&real.modules[a.0], &real.modules[b.0]);
            let (table, oracle) = if hom {
                (mc.hom_dim(a, b), hom_dimension(q, ra, rb))
            } else {
                (mc.ext_dim(a, b), ext_dimension(q, ra, rb))
            };
            ensure(table as usize == oracle, || {
                format!("({a}, {b}): table {table}, oracle {oracle}")
            })?;
        }
    }
    Ok(())
}

fn euler_form(mc: &ModuleCategory) -> Outcome {
    let q = mc.quiver();
    for a in mc.ids() {
        for b in mc.ids() {
            let e = q
                .euler_form(&mc.ar().module(a).dim, &mc.ar().module(b).dim)
                .map_err(|e| e.to_string())?;
            let d = mc.hom_dim(a, b) as i64 - mc.ext_dim(a, b) as i64;
            ensure(d == e, || {
                format!("({a}, {b}): hom - ext = {d}, Euler form {e}")
            })?;
        }
    }
    Ok(())
}

fn derived_serre(mc: &ModuleCategory) -> Outcome {
    let d = crate::derived::DerivedCategory::new(mc);
    let objs: Vec<DObject> = mc
        .ids()
        .flat_map(|m| {
            (-2..=2).map(move |s| DObject {
                module: m,
                shift: s,
            })
        })
        .collect();
    for &x in &objs {
        let sx = d
            .tau(x)
            .and_then(|t| t.shifted(1))
            .map_err(|e| e.to_string())?;
        for &y in &objs {
            ensure(d.hom(x, y) == d.hom(y, sx), || {
                format!("Hom({x}, {y}) ≠ Hom({y}, S{x})")
            })?;
        }
    }
    Ok(())
}

fn two_cy(base: &OrbitCategory) -> Outcome {
    for i in 0..base.len() {
        for j in 0..base.len() {
            ensure(base.ext_id(i, j) == base.ext_id(j, i), || {
                format!("Ext¹({}, {}) asymmetric", base.object(i), base.object(j))
            })?;
        }
    }
    Ok(())
}

fn exchange_pairs(base: &OrbitCategory, tiltings: &[ClusterTilting]) -> Outcome {
    for (a, t) in tiltings.iter().enumerate() {
        for u in &tiltings[a + 1..] {
            let only_t: Vec<usize> = t
                .members
                .iter()
                .copied()
                .filter(|x| !u.members.contains(x))
                .collect();
            let only_u: Vec<usize> = u
                .members
                .iter()
                .copied()
                .filter(|x| !t.members.contains(x))
                .collect();
            if only_t.len() != 1 {
                continue;
            }
            let (x1, x2) = (base.object(only_t[0]), base.object(only_u[0]));
            for (p, q) in [(x1, x2), (x2, x1)] {
                let v = exchange_pair_homdim(base, tiltings, &p, &q).map_err(|e| e.to_string())?;
                ensure(v == 1, || format!("Ext¹({p}, {q}) = {v}"))?;
            }
        }
    }
    Ok(())
}

fn catalog_size(mc: &ModuleCategory, cat: &OrbitCategory) -> Outcome {
    let expected = cat.modulus() as usize * (mc.len() + mc.vertex_count());
    ensure(cat.len() == expected, || {
        format!("{} objects, expected {expected}", cat.len())
    })
}

fn local_ends(cat: &OrbitCategory) -> Outcome {
    for x in cat.objects() {
        let d = single_object_end_dim(cat, &x).map_err(|e| e.to_string())?;
        ensure(d == 1, || format!("dim End({x}) = {d}"))?;
    }
    Ok(())
}

fn self_ext(cat: &OrbitCategory) -> Outcome {
    for i in 0..cat.len() {
        ensure(cat.ext_id(i, i) == 0, || {
            format!("Ext¹({0}, {0}) ≠ 0", cat.object(i))
        })?;
    }
    Ok(())
}

fn orbit_serre(cat: &OrbitCategory) -> Outcome {
    for i in 0..cat.len() {
        let s = cat.serre_id(i);
        for j in 0..cat.len() {
            ensure(cat.hom_id(i, j) == cat.hom_id(j, s), || {
                format!(
                    "Hom({0}, {1}) ≠ Hom({1}, S{0})",
                    cat.object(i),
                    cat.object(j)
                )
            })?;
        }
    }
    Ok(())
}

fn fractional_cy(cat: &OrbitCategory) -> Outcome {
    let m = cat.modulus();
    for i in 0..cat.len() {
        let x = cat.object(i);
        let shifted = x
            .rep
            .shifted(2 * m as i64)
            .map_err(|e| e.to_string())
            .and_then(|y| cat.canonical_id(y).map_err(|e| e.to_string()))?;
        let serre = (0..m).fold(i, |k, _| cat.serre_id(k));
        ensure(shifted == serre, || format!("{x}[{}] ≠ S^{m}({x})", 2 * m))?;
    }
    Ok(())
}

fn f_order(cat: &OrbitCategory) -> Outcome {
    let m = cat.modulus() as usize;
    for i in 0..cat.len() {
        let mut k = i;
        for step in 1..=m {
            k = cat.f_action_id(k);
            ensure((k == i) == (step == m), || {
                format!("F-orbit of {} has the wrong length", cat.object(i))
            })?;
        }
    }
    Ok(())
}

fn rho_fibres(base: &OrbitCategory, cat: &OrbitCategory) -> Outcome {
    let mut counts = vec![0u32; base.len()];
    for x in cat.objects() {
        let r = cat.rho(&x).map_err(|e| e.to_string())?;
        let rf = cat
            .rho(&cat.f_action(&x).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ensure(r == rf, || format!("projection of {x} is not F-invariant"))?;
        counts[base.id(&r).map_err(|e| e.to_string())?] += 1;
    }
    ensure(counts.iter().all(|&c| c == cat.modulus()), || {
        format!("fibre sizes {counts:?}")
    })
}

/// Ext¹ of an `F`-stable expansion is `m` times Ext¹ of its generator in the
/// cluster category. Both sides are bilinear, so ordered pairs of
/// indecomposable generators cover every `F`-stable object.
fn rigidity_transfer(base: &OrbitCategory, cat: &OrbitCategory) -> Outcome {
    let m = cat.modulus();
    let lifts: Vec<Vec<OrbitObject>> = (0..base.len())
        .map(|i| cat.build_f_stable(&[base.object(i)]).map(|f| f.expansion))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    for i in 0..base.len() {
        for j in 0..base.len() {
            let up = cat
                .ext_total(&lifts[i], &lifts[j])
                .map_err(|e| e.to_string())?;
            let down = base.ext_id(i, j);
            ensure(up == m * down, || {
                format!(
                    "Ext¹ over ({}, {}): {up} upstairs, {down} downstairs",
                    base.object(i),
                    base.object(j)
                )
            })?;
        }
    }
    Ok(())
}

/// `Hom(M, F^j Y) = Hom(M, Y)` for `F`-stable `M`; by additivity it is enough
/// to take `M` generated by one indecomposable.
fn f_twist(base: &OrbitCategory, cat: &OrbitCategory) -> Outcome {
    for i in 0..base.len() {
        let lift = cat
            .build_f_stable(&[base.object(i)])
            .map_err(|e| e.to_string())?;
        for y in 0..cat.len() {
            let plain = cat
                .hom_total(&lift.expansion, &[cat.object(y)])
                .map_err(|e| e.to_string())?;
            let mut k = y;
            for _ in 1..cat.modulus() {
                k = cat.f_action_id(k);
                let twisted = cat
                    .hom_total(&lift.expansion, &[cat.object(k)])
                    .map_err(|e| e.to_string())?;
                ensure(plain == twisted, || {
                    format!("Hom(M, F^j {}) changes", cat.object(y))
                })?;
            }
        }
    }
    Ok(())
}

fn lifts_ok(base: &OrbitCategory, cat: &OrbitCategory, tiltings: &[ClusterTilting]) -> Outcome {
    let expected = cat.modules().vertex_count() * cat.modulus() as usize;
    for t in tiltings {
        let l = lift(base, cat, t).map_err(|e| e.to_string())?;
        let delta = crate::orbit::delta(l.summands());
        ensure(delta == expected, || {
            format!("lift of {:?} has {delta} summands", t.members)
        })?;
        let v = verify_definition(cat, l.summands()).map_err(|e| e.to_string())?;
        ensure(v.holds, || {
            format!("lift of {:?} fails at {:?}", t.members, v.witness())
        })?;
    }
    Ok(())
}

fn direct_matches(
    base: &OrbitCategory,
    cat: &OrbitCategory,
    tiltings: &[ClusterTilting],
) -> Outcome {
    let direct: BTreeSet<Vec<usize>> = enumerate_by_definition(cat)
        .map_err(|e| e.to_string())?
        .into_iter()
        .collect();
    let lifted: BTreeSet<Vec<usize>> = tiltings
        .iter()
        .map(|t| {
            let l = lift(base, cat, t)?;
            let mut ids: Vec<usize> = l
                .summands()
                .iter()
                .map(|s| cat.id(s))
                .collect::<Result<_, _>>()?;
            ids.sort_unstable();
            Ok(ids)
        })
        .collect::<Result<_, crate::tilting::TiltingError>>()
        .map_err(|e| e.to_string())?;
    ensure(direct == lifted, || {
        format!("{} found directly, {} lifted", direct.len(), lifted.len())
    })
}

/// An `F`-stable rigid object is generalized cluster tilting iff it has `n`
/// orbits; checked over every rigid generator in the cluster category.
fn orbit_count_criterion(base: &OrbitCategory, cat: &OrbitCategory) -> Outcome {
    let n = cat.modules().vertex_count();
    let mut rigid: BTreeSet<Vec<usize>> = BTreeSet::new();
    for set in maximal_rigid_sets(base) {
        for mask in 1u32..(1 << set.len()) {
            rigid.insert(
                (0..set.len())
                    .filter(|b| mask & (1 << b) != 0)
                    .map(|b| set[b])
                    .collect(),
            );
        }
    }
    for gen in rigid {
        let objs: Vec<OrbitObject> = gen.iter().map(|&i| base.object(i)).collect();
        let f = cat.build_f_stable(&objs).map_err(|e| e.to_string())?;
        let holds = verify_definition(cat, &f.expansion)
            .map_err(|e| e.to_string())?
            .holds;
        ensure(holds == (f.orbit_count() == n), || {
            format!(
                "generator {gen:?} with {} orbits: tilting = {holds}",
                f.orbit_count()
            )
        })?;
    }
    Ok(())
}

fn complement_counts(
    cat: &OrbitCategory,
    base: &OrbitCategory,
    tiltings: &[ClusterTilting],
) -> Outcome {
    let want = if cat.modulus() == 1 { 2 } else { 1 };
    for t in tiltings {
        let l = lift(base, cat, t).map_err(|e| e.to_string())?;
        for k in 0..l.summands().len() {
            let mut rest = l.summands().to_vec();
            let gone = rest.remove(k);
            let got = match complements_almost(cat, &rest).map_err(|e| e.to_string())? {
                Completion::Complements(c) => c,
                Completion::NotExtendable => Vec::new(),
            };
            ensure(got.len() == want && got.contains(&gone), || {
                format!(
                    "removing {gone} from {:?} leaves {} complements",
                    t.members,
                    got.len()
                )
            })?;
        }
    }
    Ok(())
}

fn near_completions(
    base: &OrbitCategory,
    cat: &OrbitCategory,
    tiltings: &[ClusterTilting],
) -> Outcome {
    for t in tiltings {
        let gen = cluster_objects(base, t);
        for k in 0..gen.len() {
            let rest: Vec<OrbitObject> = gen
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, &g)| g)
                .collect();
            let a = cat.build_f_stable(&rest).map_err(|e| e.to_string())?;
            let (m1, m2) = complements_almost_near(base, cat, &a).map_err(|e| e.to_string())?;
            ensure(m1 != m2, || {
                format!(
                    "both completions of {:?} minus {} coincide",
                    t.members, gen[k]
                )
            })?;
        }
    }
    Ok(())
}

fn regular(g: &TiltingGraph, n: usize) -> Outcome {
    for v in 0..g.vertices.len() {
        ensure(g.degree(v) == n, || {
            format!("vertex {v} has degree {}", g.degree(v))
        })?;
    }
    Ok(())
}

fn single_exchanges(g: &TiltingGraph) -> Outcome {
    let mut expected = Vec::new();
    for a in 0..g.vertices.len() {
        for b in a + 1..g.vertices.len() {
            let ga: BTreeSet<_> = g.vertices[a].generator().iter().collect();
            let gb: BTreeSet<_> = g.vertices[b].generator().iter().collect();
            if ga.symmetric_difference(&gb).count() == 2 {
                expected.push((a, b));
            }
        }
    }
    ensure(expected == g.edges, || {
        format!(
            "{} edges, {} pairs differing in one orbit",
            g.edges.len(),
            expected.len()
        )
    })
}

fn same_edges(g: &TiltingGraph, base: &Result<TiltingGraph, String>) -> Outcome {
    let base = base.as_ref().map_err(Clone::clone)?;
    ensure(g.edges == base.edges, || {
        "edge set differs from the cluster category".into()
    })
}

fn s12(cat: &OrbitCategory, g: &TiltingGraph) -> Outcome {
    for &(a, b) in &g.edges {
        for (x, y) in [(a, b), (b, a)] {
            let d =
                s12_dimension(cat, &g.vertices[x], &g.vertices[y]).map_err(|e| e.to_string())?;
            ensure(d == cat.modulus(), || {
                format!("edge ({x}, {y}): dimension {d}")
            })?;
        }
    }
    Ok(())
}

fn block_pattern(
    base: &OrbitCategory,
    cat: &OrbitCategory,
    tiltings: &[ClusterTilting],
) -> Outcome {
    for t in tiltings {
        let l = lift(base, cat, t).map_err(|e| e.to_string())?;
        let p = endo_profile(cat, &l).map_err(|e| e.to_string())?;
        if !p.module_tier {
            continue;
        }
        ensure(p.total() == cat.modulus() * (p.dim_c + p.dim_e), || {
            format!(
                "{:?}: total {} for dim_C {} dim_E {}",
                t.members,
                p.total(),
                p.dim_c,
                p.dim_e
            )
        })?;
        ensure(p.pattern_ok == Some(true), || {
            format!("{:?}: deviations {:?}", t.members, p.deviations)
        })?;
    }
    Ok(())
}

/// Plain-text rendering, one line per check.
pub fn render_text(summary: &Summary) -> String {
    let mut out = String::new();
    for c in &summary.checks {
        let m = c.m.map(|m| format!(" m={m}")).unwrap_or_default();
        let _ = write!(
            out,
            "{} {} {}{}",
            if c.passed { "ok  " } else { "FAIL" },
            c.check,
            c.quiver,
            m
        );
        if let Some(d) = &c.detail {
            let _ = write!(out, ": {d}");
        }
        out.push('\n');
    }
    let _ = writeln!(out, "{} checks, {} failed", summary.total, summary.failed);
    out
}
