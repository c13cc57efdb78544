//! Explicit quiver representations over an exact field, used as the
//! independent check on the combinatorial Hom/Ext tables.

use crate::linalg::Matrix;
use crate::quiver::{DimVector, Quiver};
use crate::scalar::ExactField;

/// A representation: one vector space per vertex and one linear map per
/// arrow. `maps[a]` has shape `dims[target] x dims[source]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation<T> {
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix<T>>,
}

/// A morphism of representations, one matrix per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct Morphism<T> {
    pub components: Vec<Matrix<T>>,
}

impl<T: ExactField> Representation<T> {
    pub fn dim_vector(&self) -> DimVector {
        DimVector(self.dims.iter().map(|&d| d as i64).collect())
    }

    /// The indecomposable projective at `vertex`; basis of `P(j)` is the set
    /// of paths from `vertex` to `j`.
    pub fn projective(q: &Quiver, vertex: usize) -> Self {
        let paths = paths_from(q, vertex);
        let mut dims = vec![0; q.vertex_count()];
        let mut index = Vec::with_capacity(paths.len());
        for p in &paths {
            index.push(dims[p.end]);
            dims[p.end] += 1;
        }
        let mut maps: Vec<Matrix<T>> = q
            .arrows()
            .iter()
            .map(|&(s, t)| Matrix::zeros(dims[t], dims[s]))
            .collect();
        for (pi, p) in paths.iter().enumerate() {
            for (a, &(s, _)) in q.arrows().iter().enumerate() {
                if s != p.end {
                    continue;
                }
                let ext = paths
                    .iter()
                    .position(|r| {
                        r.arrows.len() == p.arrows.len() + 1
                            && r.arrows[..p.arrows.len()] == p.arrows[..]
                            && r.arrows[p.arrows.len()] == a
                    })
                    .expect("path extension is a path");
                maps[a][(index[ext], index[pi])] = T::one();
            }
        }
        Representation { dims, maps }
    }

    /// Checks that `f` is a morphism `self -> target`.
    pub fn is_morphism_to(&self, q: &Quiver, target: &Representation<T>, f: &Morphism<T>) -> bool {
        q.arrows().iter().enumerate().all(|(a, &(s, t))| {
            &target.maps[a] * &f.components[s] == &f.components[t] * &self.maps[a]
        })
    }

    pub fn direct_sum(q: &Quiver, parts: &[&Representation<T>]) -> Self {
        let n = q.vertex_count();
        let dims: Vec<usize> = (0..n)
            .map(|v| parts.iter().map(|p| p.dims[v]).sum())
            .collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let mut m = Matrix::zeros(dims[t], dims[s]);
                let (mut r, mut c) = (0, 0);
                for p in parts {
                    m.set_block(r, c, &p.maps[a]);
                    r += p.dims[t];
                    c += p.dims[s];
                }
                m
            })
            .collect();
        Representation { dims, maps }
    }
}

struct Path {
    end: usize,
    arrows: Vec<usize>,
}

fn paths_from(q: &Quiver, start: usize) -> Vec<Path> {
    let mut out = vec![Path {
        end: start,
        arrows: Vec::new(),
    }];
    let mut i = 0;
    while i < out.len() {
        let end = out[i].end;
        for (a, &(s, t)) in q.arrows().iter().enumerate() {
            if s == end {
                let mut arrows = out[i].arrows.clone();
                arrows.push(a);
                out.push(Path { end: t, arrows });
            }
        }
        i += 1;
    }
    out
}

/// The map `P(source) -> P(target)` given by precomposition with the arrow
/// `target -> source`: a path `p` from `source` goes to `arrow . p`.
pub fn projective_inclusion<T: ExactField>(q: &Quiver, arrow: usize) -> Morphism<T> {
    let (from, to) = q.arrows()[arrow];
    let src = paths_from(q, to);
    let dst = paths_from(q, from);
    let n = q.vertex_count();
    let local = |paths: &[Path]| {
        let mut idx = Vec::with_capacity(paths.len());
        let mut dims = vec![0; n];
        for p in paths {
            idx.push(dims[p.end]);
            dims[p.end] += 1;
        }
        (idx, dims)
    };
    let (src_idx, src_dims) = local(&src);
    let (dst_idx, dst_dims) = local(&dst);
    let mut components: Vec<Matrix<T>> = (0..n)
        .map(|v| Matrix::zeros(dst_dims[v], src_dims[v]))
        .collect();
    for (k, p) in src.iter().enumerate() {
        let j = dst
            .iter()
            .position(|r| {
                r.arrows.len() == p.arrows.len() + 1
                    && r.arrows[0] == arrow
                    && r.arrows[1..] == p.arrows[..]
            })
            .expect("prefixing an arrow gives a path");
        components[p.end][(dst_idx[j], src_idx[k])] = T::one();
    }
    Morphism { components }
}

/// The matrix of the standard two-term complex
/// `⊕_v Hom(M_v, N_v) -> ⊕_{a: s -> t} Hom(M_s, N_t)`, `φ ↦ N_a φ_s − φ_t M_a`.
/// Its kernel is `Hom(M, N)` and its cokernel is `Ext¹(M, N)`, since it is
/// `Hom(-, N)` applied to the standard projective resolution of `M`.
fn standard_complex<T: ExactField>(
    q: &Quiver,
    m: &Representation<T>,
    n: &Representation<T>,
) -> Matrix<T> {
    let verts = q.vertex_count();
    let mut var_offset = vec![0; verts + 1];
    for v in 0..verts {
        var_offset[v + 1] = var_offset[v] + n.dims[v] * m.dims[v];
    }
    let var = |v: usize, r: usize, c: usize| var_offset[v] + r * m.dims[v] + c;
    let eq_count: usize = q.arrows().iter().map(|&(s, t)| n.dims[t] * m.dims[s]).sum();
    let mut sys = Matrix::<T>::zeros(eq_count, var_offset[verts]);
    let mut row = 0;
    for (a, &(s, t)) in q.arrows().iter().enumerate() {
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                // (N_a φ_s)[r, c]
                for k in 0..n.dims[s] {
                    let coef = n.maps[a][(r, k)].clone();
                    if !coef.is_zero() {
                        let cur = sys[(row, var(s, k, c))].clone();
                        sys[(row, var(s, k, c))] = cur + coef;
                    }
                }
                // −(φ_t M_a)[r, c]
                for k in 0..m.dims[t] {
                    let coef = m.maps[a][(k, c)].clone();
                    if !coef.is_zero() {
                        let cur = sys[(row, var(t, r, k))].clone();
                        sys[(row, var(t, r, k))] = cur - coef;
                    }
                }
                row += 1;
            }
        }
    }
    sys
}

/// `dim Hom(M, N)` by solving the intertwining equations.
pub fn hom_dimension<T: ExactField>(
    q: &Quiver,
    m: &Representation<T>,
    n: &Representation<T>,
) -> usize {
    let sys = standard_complex(q, m, n);
    sys.cols() - sys.rank()
}

/// `dim Ext¹(M, N)` as the cokernel of `Hom(P_0, N) -> Hom(P_1, N)` for the
/// standard projective resolution `0 -> P_1 -> P_0 -> M -> 0`.
pub fn ext_dimension<T: ExactField>(
    q: &Quiver,
    m: &Representation<T>,
    n: &Representation<T>,
) -> usize {
    let sys = standard_complex(q, m, n);
    sys.rows() - sys.rank()
}

/// Cokernel of `f: source -> target`, returned with the projection
/// `target -> cokernel`.
pub fn cokernel<T: ExactField>(
    q: &Quiver,
    target: &Representation<T>,
    f: &Morphism<T>,
) -> (Representation<T>, Morphism<T>) {
    let proj: Vec<Matrix<T>> = f
        .components
        .iter()
        .map(Matrix::cokernel_projection)
        .collect();
    let sections: Vec<Matrix<T>> = proj
        .iter()
        .map(|p| {
            p.right_inverse()
                .expect("cokernel projection has full row rank")
        })
        .collect();
    let dims = proj.iter().map(Matrix::rows).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| &(&proj[t] * &target.maps[a]) * &sections[s])
        .collect();
    (Representation { dims, maps }, Morphism { components: proj })
}
