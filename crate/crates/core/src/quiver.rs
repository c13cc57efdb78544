//! Quivers of Dynkin type: ingestion, validation, classification and the
//! Euler form of the path algebra.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange {
        line: usize,
        vertex: usize,
        n: usize,
    },
    #[error("line {line}: loop at vertex {vertex}")]
    Loop { line: usize, vertex: usize },
    #[error("line {line}: duplicate arrow {from} -> {to}")]
    DuplicateArrow { line: usize, from: usize, to: usize },
    #[error("oriented cycle through vertices {vertices:?}")]
    OrientedCycle { vertices: Vec<usize> },
    #[error("underlying graph is disconnected: vertex {vertex} is not reachable from vertex 1")]
    Disconnected { vertex: usize },
    #[error("underlying graph is not of Dynkin type: {reason}")]
    NotDynkin { reason: String },
    #[error("dimension vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
}

/// A dimension vector; entry `i` belongs to vertex `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct DimVector(pub Vec<i64>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&x| x >= 0) && !self.is_zero()
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    D,
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DynkinClass {
    pub family: Family,
    pub rank: usize,
}

impl DynkinClass {
    pub fn new(family: Family, rank: usize) -> Option<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        ok.then_some(DynkinClass { family, rank })
    }

    /// Number of positive roots, which is also the number of isoclasses of
    /// indecomposable modules over any orientation.
    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match (self.family, n) {
            (Family::A, _) => n * (n + 1) / 2,
            (Family::D, _) => n * (n - 1),
            (Family::E, 6) => 36,
            (Family::E, 7) => 63,
            (Family::E, 8) => 120,
            (Family::E, _) => unreachable!("validated at construction"),
        }
    }

    /// Edges of the standard labelling, 1-based. `D_n` branches at `n - 2`,
    /// `E_n` attaches vertex `n` to vertex 3.
    pub fn standard_edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.family {
            Family::A => (1..n).map(|i| (i, i + 1)).collect(),
            Family::D => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i, i + 1)).collect();
                e.push((n - 2, n));
                e
            }
            Family::E => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i, i + 1)).collect();
                e.push((3, n));
                e
            }
        }
    }
}

impl fmt::Display for DynkinClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

/// Acyclic connected quiver with Dynkin underlying graph.
///
/// Vertices are `0..n` internally and printed 1-based; the numbering of the
/// input is kept as is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<(usize, usize)>,
    class: DynkinClass,
}

impl Quiver {
    /// Validates a quiver given with 1-based arrow endpoints.
    pub fn new(vertex_count: usize, arrows: &[(usize, usize)]) -> Result<Self, QuiverError> {
        let mut raw = Vec::with_capacity(arrows.len());
        for (k, &(s, t)) in arrows.iter().enumerate() {
            raw.push((k + 1, s, t));
        }
        Self::from_located(vertex_count, &raw)
    }

    fn from_located(n: usize, arrows: &[(usize, usize, usize)]) -> Result<Self, QuiverError> {
        if n == 0 {
            return Err(QuiverError::Syntax {
                line: 1,
                message: "a quiver needs at least one vertex".into(),
            });
        }
        let mut seen = BTreeSet::new();
        let mut zero_based = Vec::with_capacity(arrows.len());
        for &(line, s, t) in arrows {
            for v in [s, t] {
                if v == 0 || v > n {
                    return Err(QuiverError::VertexOutOfRange { line, vertex: v, n });
                }
            }
            if s == t {
                return Err(QuiverError::Loop { line, vertex: s });
            }
            if !seen.insert((s, t)) {
                return Err(QuiverError::DuplicateArrow {
                    line,
                    from: s,
                    to: t,
                });
            }
            zero_based.push((s - 1, t - 1));
        }
        if let Some(cycle) = find_oriented_cycle(n, &zero_based) {
            return Err(QuiverError::OrientedCycle {
                vertices: cycle.into_iter().map(|v| v + 1).collect(),
            });
        }
        check_connected(n, &zero_based)?;
        let class = classify_edges(n, &zero_based)?;
        Ok(Quiver {
            vertex_count: n,
            arrows: zero_based,
            class,
        })
    }

    /// Standard orientation of a Dynkin diagram: every edge `(i, j)` of the
    /// standard labelling becomes the arrow `i -> j`.
    pub fn standard(class: DynkinClass) -> Self {
        Quiver::new(class.rank, &class.standard_edges()).expect("standard diagrams are Dynkin")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Arrows as 0-based `(source, target)` pairs in input order.
    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn class(&self) -> DynkinClass {
        self.class
    }

    /// The opposite quiver.
    pub fn reversed(&self) -> Quiver {
        Quiver {
            vertex_count: self.vertex_count,
            arrows: self.arrows.iter().map(|&(s, t)| (t, s)).collect(),
            class: self.class,
        }
    }

    /// Every orientation of the underlying graph, in a fixed order.
    pub fn all_orientations(&self) -> Vec<Quiver> {
        let edges: Vec<(usize, usize)> = self
            .arrows
            .iter()
            .map(|&(s, t)| (s.min(t), s.max(t)))
            .collect();
        let mut out = Vec::with_capacity(1 << edges.len());
        for mask in 0u64..(1u64 << edges.len()) {
            let arrows = edges
                .iter()
                .enumerate()
                .map(|(k, &(a, b))| if mask >> k & 1 == 0 { (a, b) } else { (b, a) })
                .collect();
            out.push(Quiver {
                vertex_count: self.vertex_count,
                arrows,
                class: self.class,
            });
        }
        out
    }

    /// Number of paths from `source` to each vertex; the dimension vector of
    /// the indecomposable projective at `source`.
    pub fn paths_from(&self, source: usize) -> DimVector {
        let order = self.topological_order();
        let mut count = vec![0i64; self.vertex_count];
        count[source] = 1;
        for &v in &order {
            for &(s, t) in &self.arrows {
                if s == v {
                    count[t] += count[v];
                }
            }
        }
        DimVector(count)
    }

    /// Number of paths from each vertex to `target`; the dimension vector of
    /// the indecomposable injective at `target`.
    pub fn paths_to(&self, target: usize) -> DimVector {
        self.reversed().paths_from(target)
    }

    /// Sources before targets; ties broken by smallest vertex.
    pub fn topological_order(&self) -> Vec<usize> {
        let n = self.vertex_count;
        let mut indeg = vec![0usize; n];
        for &(_, t) in &self.arrows {
            indeg[t] += 1;
        }
        let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &(s, t) in &self.arrows {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        ready.insert(t);
                    }
                }
            }
        }
        order
    }

    /// Sinks before sources; ties broken by smallest vertex.
    pub fn sink_first_order(&self) -> Vec<usize> {
        self.reversed().topological_order()
    }

    /// `<d, e> = sum_i d_i e_i - sum_{i -> j} d_i e_j`.
    pub fn euler_form(&self, d: &DimVector, e: &DimVector) -> Result<i64, QuiverError> {
        for v in [d, e] {
            if v.len() != self.vertex_count {
                return Err(QuiverError::LengthMismatch {
                    expected: self.vertex_count,
                    found: v.len(),
                });
            }
        }
        let diag: i64 = d.0.iter().zip(&e.0).map(|(a, b)| a * b).sum();
        let off: i64 = self.arrows.iter().map(|&(s, t)| d.0[s] * e.0[t]).sum();
        Ok(diag - off)
    }

    /// Serializes back to the line-oriented file format.
    pub fn to_text(&self) -> String {
        let mut s = format!("vertices {}\n", self.vertex_count);
        for &(a, b) in &self.arrows {
            s.push_str(&format!("arrow {} {}\n", a + 1, b + 1));
        }
        s
    }
}

/// Parses the line-oriented quiver format:
///
/// ```text
/// # comment
/// vertices 3
/// arrow 1 2
/// arrow 2 3
/// ```
pub fn parse_quiver(text: &str) -> Result<Quiver, QuiverError> {
    let mut vertex_count: Option<usize> = None;
    let mut arrows = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let syntax = |message: String| QuiverError::Syntax { line, message };
        let number = |tok: &str| {
            tok.parse::<usize>()
                .map_err(|_| syntax(format!("expected a non-negative integer, found `{tok}`")))
        };
        match (tokens[0], vertex_count) {
            ("vertices", None) => {
                if tokens.len() != 2 {
                    return Err(syntax("expected `vertices <n>`".into()));
                }
                let n = number(tokens[1])?;
                if n == 0 {
                    return Err(syntax("vertex count must be positive".into()));
                }
                vertex_count = Some(n);
            }
            ("vertices", Some(_)) => return Err(syntax("repeated `vertices` line".into())),
            ("arrow", Some(_)) => {
                if tokens.len() != 3 {
                    return Err(syntax("expected `arrow <i> <j>`".into()));
                }
                arrows.push((line, number(tokens[1])?, number(tokens[2])?));
            }
            ("arrow", None) => {
                return Err(syntax("`arrow` before the `vertices` line".into()));
            }
            (other, _) => return Err(syntax(format!("unknown keyword `{other}`"))),
        }
    }
    let n = vertex_count.ok_or(QuiverError::Syntax {
        line: last_line.max(1),
        message: "missing `vertices <n>` line".into(),
    })?;
    Quiver::from_located(n, &arrows)
}

/// Classifies the underlying graph of a quiver.
pub fn classify_dynkin(q: &Quiver) -> DynkinClass {
    q.class
}

fn find_oriented_cycle(n: usize, arrows: &[(usize, usize)]) -> Option<Vec<usize>> {
    // 0 = unvisited, 1 = on stack, 2 = done
    fn visit(
        v: usize,
        arrows: &[(usize, usize)],
        state: &mut [u8],
        stack: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        state[v] = 1;
        stack.push(v);
        for &(s, t) in arrows {
            if s != v {
                continue;
            }
            match state[t] {
                1 => {
                    let start = stack.iter().position(|&x| x == t).unwrap();
                    return Some(stack[start..].to_vec());
                }
                0 => {
                    if let Some(c) = visit(t, arrows, state, stack) {
                        return Some(c);
                    }
                }
                _ => {}
            }
        }
        stack.pop();
        state[v] = 2;
        None
    }
    let mut state = vec![0u8; n];
    let mut stack = Vec::new();
    (0..n).find_map(|v| {
        if state[v] == 0 {
            visit(v, arrows, &mut state, &mut stack)
        } else {
            None
        }
    })
}

fn neighbours(n: usize, arrows: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(s, t) in arrows {
        adj[s].push(t);
        adj[t].push(s);
    }
    adj
}

fn check_connected(n: usize, arrows: &[(usize, usize)]) -> Result<(), QuiverError> {
    let adj = neighbours(n, arrows);
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    match seen.iter().position(|&s| !s) {
        Some(v) => Err(QuiverError::Disconnected { vertex: v + 1 }),
        None => Ok(()),
    }
}

fn classify_edges(n: usize, arrows: &[(usize, usize)]) -> Result<DynkinClass, QuiverError> {
    let undirected: BTreeSet<(usize, usize)> =
        arrows.iter().map(|&(s, t)| (s.min(t), s.max(t))).collect();
    if undirected.len() != arrows.len() {
        return Err(QuiverError::NotDynkin {
            reason: "multiple edges between a pair of vertices".into(),
        });
    }
    if arrows.len() != n - 1 {
        return Err(QuiverError::NotDynkin {
            reason: "underlying graph contains a cycle".into(),
        });
    }
    let adj = neighbours(n, arrows);
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    match branch.as_slice() {
        [] => Ok(DynkinClass {
            family: Family::A,
            rank: n,
        }),
        [centre] => {
            let c = *centre;
            if adj[c].len() > 3 {
                return Err(QuiverError::NotDynkin {
                    reason: format!("vertex {} has degree {}", c + 1, adj[c].len()),
                });
            }
            // in a tree with a single branch point every arm is a path
            let mut arms: Vec<usize> = adj[c]
                .iter()
                .map(|&start| {
                    let (mut prev, mut cur, mut len) = (c, start, 1);
                    loop {
                        let next = adj[cur].iter().copied().find(|&w| w != prev);
                        match next {
                            Some(w) => {
                                prev = cur;
                                cur = w;
                                len += 1;
                            }
                            None => break len,
                        }
                    }
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Ok(DynkinClass {
                    family: Family::D,
                    rank: n,
                }),
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => Ok(DynkinClass {
                    family: Family::E,
                    rank: n,
                }),
                _ => Err(QuiverError::NotDynkin {
                    reason: format!("arm lengths {arms:?} at vertex {}", c + 1),
                }),
            }
        }
        _ => Err(QuiverError::NotDynkin {
            reason: "more than one branch vertex".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_smallest_inputs() {
        let q = parse_quiver("vertices 2\narrow 1 2\n").unwrap();
        assert_eq!(q.vertex_count(), 2);
        assert_eq!(q.arrows(), &[(0, 1)]);
        let q = parse_quiver("# lonely\nvertices 1   # A1\n").unwrap();
        assert_eq!(q.vertex_count(), 1);
        assert!(q.arrows().is_empty());
        assert_eq!(q.class(), DynkinClass::new(Family::A, 1).unwrap());
    }

    #[test]
    fn rejects_bad_inputs_with_distinct_errors() {
        let cyc = parse_quiver("vertices 3\narrow 1 2\narrow 2 3\narrow 3 1\n");
        assert!(matches!(cyc, Err(QuiverError::OrientedCycle { .. })));
        assert!(matches!(
            parse_quiver("vertices 2\narrow 1 1\n"),
            Err(QuiverError::Loop { line: 2, vertex: 1 })
        ));
        assert!(matches!(
            parse_quiver("vertices 2\narrow 1 2\narrow 1 2\n"),
            Err(QuiverError::DuplicateArrow { line: 3, .. })
        ));
        assert!(matches!(
            parse_quiver("vertices 3\narrow 1 2\n"),
            Err(QuiverError::Disconnected { vertex: 3 })
        ));
        assert!(matches!(
            parse_quiver("vertices 2\narrow 1 5\n"),
            Err(QuiverError::VertexOutOfRange { vertex: 5, .. })
        ));
        assert!(matches!(
            parse_quiver("vertices 2\narow 1 2\n"),
            Err(QuiverError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_quiver("arrow 1 2\n"),
            Err(QuiverError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_quiver("vertices x\n"),
            Err(QuiverError::Syntax { .. })
        ));
        assert!(matches!(
            parse_quiver("# nothing\n"),
            Err(QuiverError::Syntax { .. })
        ));
        let square = "vertices 4\narrow 1 2\narrow 2 3\narrow 3 4\narrow 1 4\n";
        assert!(matches!(
            parse_quiver(square),
            Err(QuiverError::NotDynkin { .. })
        ));
        let kronecker = "vertices 2\narrow 1 2\narrow 2 1\n";
        assert!(matches!(
            parse_quiver(kronecker),
            Err(QuiverError::OrientedCycle { .. })
        ));
    }

    #[test]
    fn classifies_small_diagrams() {
        let a3 = Quiver::new(3, &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(a3.class(), DynkinClass::new(Family::A, 3).unwrap());
        let d4 = Quiver::new(4, &[(1, 2), (3, 2), (4, 2)]).unwrap();
        assert_eq!(
            classify_dynkin(&d4),
            DynkinClass::new(Family::D, 4).unwrap()
        );
        for (n, fam) in [
            (5, Family::D),
            (6, Family::E),
            (7, Family::E),
            (8, Family::E),
        ] {
            let c = DynkinClass::new(fam, n).unwrap();
            assert_eq!(Quiver::standard(c).class(), c);
        }
        let d7 = DynkinClass::new(Family::D, 7).unwrap();
        assert_eq!(Quiver::standard(d7).class(), d7);
        // extended D4 and E~6 shapes
        let star5 = Quiver::new(5, &[(1, 2), (3, 2), (4, 2), (5, 2)]);
        assert!(matches!(star5, Err(QuiverError::NotDynkin { .. })));
        let e6_tilde = Quiver::new(7, &[(1, 2), (2, 3), (4, 3), (5, 4), (6, 3), (7, 6)]);
        assert!(matches!(e6_tilde, Err(QuiverError::NotDynkin { .. })));
        let two_branch = Quiver::new(7, &[(1, 2), (2, 3), (3, 4), (4, 5), (2, 6), (4, 7)]);
        assert!(matches!(two_branch, Err(QuiverError::NotDynkin { .. })));
    }

    #[test]
    fn euler_form_examples() {
        let q = Quiver::new(2, &[(1, 2)]).unwrap();
        let v = |a: &[i64]| DimVector(a.to_vec());
        assert_eq!(q.euler_form(&v(&[1, 0]), &v(&[0, 1])).unwrap(), -1);
        assert_eq!(q.euler_form(&v(&[0, 0]), &v(&[0, 0])).unwrap(), 0);
        assert_eq!(q.euler_form(&v(&[1, 1]), &v(&[1, 0])).unwrap(), 1);
        assert!(matches!(
            q.euler_form(&v(&[1]), &v(&[1, 0])),
            Err(QuiverError::LengthMismatch {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn positive_root_counts() {
        let c = |f, n| DynkinClass::new(f, n).unwrap().positive_root_count();
        assert_eq!(c(Family::A, 1), 1);
        assert_eq!(c(Family::A, 2), 3);
        assert_eq!(c(Family::D, 4), 12);
        assert_eq!(c(Family::E, 8), 120);
        assert!(DynkinClass::new(Family::D, 3).is_none());
        assert!(DynkinClass::new(Family::E, 9).is_none());
    }

    /// Enumerates integer vectors with entries in `0..=bound` whose Tits form
    /// equals one.
    fn brute_force_roots(q: &Quiver, bound: i64) -> Vec<DimVector> {
        let n = q.vertex_count();
        let mut out = Vec::new();
        let mut cur = vec![0i64; n];
        loop {
            let d = DimVector(cur.clone());
            if !d.is_zero() && q.euler_form(&d, &d).unwrap() == 1 {
                out.push(d);
            }
            let mut i = 0;
            loop {
                if i == n {
                    return out;
                }
                cur[i] += 1;
                if cur[i] <= bound {
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn root_enumeration_matches_counts() {
        let cases = [
            (Family::A, 1, 1),
            (Family::A, 2, 1),
            (Family::A, 3, 1),
            (Family::A, 4, 1),
            (Family::D, 4, 2),
            (Family::D, 5, 2),
            (Family::E, 6, 3),
        ];
        for (f, n, bound) in cases {
            let c = DynkinClass::new(f, n).unwrap();
            let roots = brute_force_roots(&Quiver::standard(c), bound + 1);
            assert_eq!(roots.len(), c.positive_root_count(), "{c}");
        }
    }

    #[test]
    fn tits_form_positive_definite_on_small_boxes() {
        for q in [
            Quiver::new(3, &[(2, 1), (2, 3)]).unwrap(),
            Quiver::new(4, &[(1, 2), (3, 2), (2, 4)]).unwrap(),
        ] {
            let n = q.vertex_count();
            let bound = 6i64;
            let total = (bound + 1).pow(n as u32);
            for code in 1..total {
                let mut c = code;
                let d = DimVector(
                    (0..n)
                        .map(|_| {
                            let x = c % (bound + 1);
                            c /= bound + 1;
                            x
                        })
                        .collect(),
                );
                assert!(q.euler_form(&d, &d).unwrap() >= 1);
            }
        }
    }

    #[test]
    fn projective_and_injective_dimension_vectors() {
        let q = Quiver::new(3, &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(q.paths_from(0), DimVector(vec![1, 1, 1]));
        assert_eq!(q.paths_to(0), DimVector(vec![1, 0, 0]));
        assert_eq!(q.sink_first_order(), vec![2, 1, 0]);
    }

    fn dim_vec(n: usize) -> impl Strategy<Value = DimVector> {
        prop::collection::vec(-5i64..6, n).prop_map(DimVector)
    }

    proptest! {
        #[test]
        fn euler_form_is_bilinear(d in dim_vec(4), d2 in dim_vec(4), e in dim_vec(4)) {
            let q = Quiver::new(4, &[(1, 2), (3, 2), (2, 4)]).unwrap();
            let lhs = q.euler_form(&d.add(&d2), &e).unwrap();
            prop_assert_eq!(lhs, q.euler_form(&d, &e).unwrap() + q.euler_form(&d2, &e).unwrap());
            let rhs = q.euler_form(&e, &d.add(&d2)).unwrap();
            prop_assert_eq!(rhs, q.euler_form(&e, &d).unwrap() + q.euler_form(&e, &d2).unwrap());
        }

        #[test]
        fn classification_ignores_orientation(mask in 0u32..8) {
            let base = [(1usize, 2usize), (2, 3), (2, 4)];
            let arrows: Vec<_> = base.iter().enumerate()
                .map(|(k, &(a, b))| if mask >> k & 1 == 1 { (b, a) } else { (a, b) })
                .collect();
            let q = Quiver::new(4, &arrows).unwrap();
            prop_assert_eq!(q.class(), q.reversed().class());
            prop_assert_eq!(q.class(), DynkinClass::new(Family::D, 4).unwrap());
        }
    }
}
