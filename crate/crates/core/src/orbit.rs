//! The orbit categories `C_{F^m} = D^b(kQ)/(F^m)`; `m = 1` is the cluster
//! category.
//!
//! Objects are stored by canonical representative. The fundamental domain for
//! `F` is `ind kQ` in degree 0 together with the shifted projectives `P_i[1]`;
//! the indecomposables of `C_{F^m}` are the `m` tiers `F^t(domain)`,
//! `0 <= t < m`, and the representative of an object is its member of those
//! tiers.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::derived::{DObject, DerivedCategory, DerivedError};
use crate::module_cat::{ModuleCategory, ModuleId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("modulus must be at least 1")]
    ZeroModulus,
    #[error("objects live in different orbit categories (m = {0} and m = {1})")]
    ModulusMismatch(u32, u32),
    #[error("F-stable generators must be objects of the cluster category, got modulus {0}")]
    GeneratorModulus(u32),
    #[error("{0} is not a canonical representative for m = {1}")]
    NotCanonical(DObject, u32),
    #[error(transparent)]
    Derived(#[from] DerivedError),
}

/// An indecomposable of `C_{F^m}`, identified by its canonical representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitObject {
    pub rep: DObject,
    pub modulus: u32,
}

/// Serialized as the text of its representative.
impl Serialize for OrbitObject {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.rep)
    }
}

impl fmt::Display for OrbitObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

/// An object `X ⊕ FX ⊕ ... ⊕ F^{m-1}X` of `C_{F^m}`, kept both as its
/// generator `X` (a multiset of cluster-category objects) and as the
/// expanded multiset of indecomposables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FStableObject {
    pub generator: Vec<OrbitObject>,
    pub modulus: u32,
    pub expansion: Vec<OrbitObject>,
}

impl FStableObject {
    /// Number of `F`-orbits among the summands: the number of distinct
    /// generator elements.
    pub fn orbit_count(&self) -> usize {
        delta(&self.generator)
    }
}

/// Number of pairwise non-isomorphic indecomposables in a multiset.
pub fn delta(objects: &[OrbitObject]) -> usize {
    objects.iter().collect::<BTreeSet<_>>().len()
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub id: usize,
    pub object: DObject,
    pub module: ModuleId,
    pub shift: i64,
    pub tier: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableEntry {
    pub x: usize,
    pub y: usize,
    pub hom: u32,
    pub ext: u32,
}

/// The generalized cluster category `C_{F^m}` with precomputed Hom and Ext¹
/// dimension tables over its finite catalog of indecomposables.
#[derive(Debug, Clone)]
pub struct OrbitCategory<'a> {
    derived: DerivedCategory<'a>,
    modulus: u32,
    domain_len: usize,
    catalog: Vec<DObject>,
    index: HashMap<DObject, usize>,
    hom: Vec<Vec<u32>>,
    ext: Vec<Vec<u32>>,
}

impl<'a> OrbitCategory<'a> {
    pub fn new(mc: &'a ModuleCategory, modulus: u32) -> Result<Self, OrbitError> {
        if modulus == 0 {
            return Err(OrbitError::ZeroModulus);
        }
        let derived = DerivedCategory::new(mc);
        let mut domain: Vec<DObject> = mc
            .ids()
            .map(|m| DObject {
                module: m,
                shift: 0,
            })
            .collect();
        let mut projectives: Vec<ModuleId> = mc.ar().projectives().to_vec();
        projectives.sort();
        domain.extend(projectives.into_iter().map(|p| DObject {
            module: p,
            shift: 1,
        }));
        let domain_len = domain.len();

        let mut catalog = Vec::with_capacity(domain_len * modulus as usize);
        for tier in 0..modulus {
            for &d in &domain {
                catalog.push(derived.f_power(d, i64::from(tier))?);
            }
        }
        let index = catalog.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut cat = OrbitCategory {
            derived,
            modulus,
            domain_len,
            catalog,
            index,
            hom: Vec::new(),
            ext: Vec::new(),
        };
        let size = cat.catalog.len();
        let mut hom = vec![vec![0; size]; size];
        let mut ext = vec![vec![0; size]; size];
        for i in 0..size {
            for j in 0..size {
                let (x, y) = (cat.catalog[i], cat.catalog[j]);
                hom[i][j] = cat.hom_sum(x, y)?;
                let y1 = cat.canonical_id(y.shifted(1)?)?;
                ext[i][j] = cat.hom_sum(x, cat.catalog[y1])?;
            }
        }
        cat.hom = hom;
        cat.ext = ext;
        Ok(cat)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn derived(&self) -> DerivedCategory<'a> {
        self.derived
    }

    pub fn modules(&self) -> &'a ModuleCategory {
        self.derived.modules()
    }

    /// Number of indecomposables, `m · (|ind kQ| + n)`.
    pub fn len(&self) -> usize {
        self.catalog.len()
    }

    pub fn is_empty(&self) -> bool {
        self.catalog.is_empty()
    }

    /// Size of one tier, `|ind C| = |ind kQ| + n`.
    pub fn tier_len(&self) -> usize {
        self.domain_len
    }

    pub fn object(&self, id: usize) -> OrbitObject {
        OrbitObject {
            rep: self.catalog[id],
            modulus: self.modulus,
        }
    }

    pub fn objects(&self) -> impl Iterator<Item = OrbitObject> + '_ {
        (0..self.len()).map(|i| self.object(i))
    }

    pub fn tier(&self, id: usize) -> u32 {
        (id / self.domain_len) as u32
    }

    /// Catalog position of an object; errors if it is not one of this
    /// category's canonical representatives.
    pub fn id(&self, x: &OrbitObject) -> Result<usize, OrbitError> {
        if x.modulus != self.modulus {
            return Err(OrbitError::ModulusMismatch(x.modulus, self.modulus));
        }
        self.index
            .get(&x.rep)
            .copied()
            .ok_or(OrbitError::NotCanonical(x.rep, self.modulus))
    }

    /// Position of `x` in the fundamental domain together with the power `j`
    /// such that `x = F^j(domain element)`.
    fn locate(&self, mut x: DObject) -> Result<(usize, i64), OrbitError> {
        let ar = self.modules().ar();
        let mut j = 0i64;
        loop {
            let projective = ar.module(x.module).projective_at.is_some();
            if x.shift == 0 {
                return Ok((x.module.0, j));
            }
            if x.shift == 1 && projective {
                let k = self.catalog[self.modules().len()..self.domain_len]
                    .iter()
                    .position(|d| d.module == x.module)
                    .expect("every projective has a shifted copy in the domain");
                return Ok((self.modules().len() + k, j));
            }
            if x.shift > 0 {
                x = self.derived.f_inverse(x)?;
                j += 1;
            } else {
                x = self.derived.f(x)?;
                j -= 1;
            }
        }
    }

    pub fn canonical_id(&self, x: DObject) -> Result<usize, OrbitError> {
        let (d, j) = self.locate(x)?;
        let tier = j.rem_euclid(i64::from(self.modulus)) as usize;
        Ok(tier * self.domain_len + d)
    }

    /// The canonical representative of the `F^m`-orbit of `x`.
    pub fn canonicalize(&self, x: DObject) -> Result<OrbitObject, OrbitError> {
        Ok(self.object(self.canonical_id(x)?))
    }

    /// `Σ_{l ∈ Z} dim Hom_D(x, F^{ml} y)`. Shifts grow strictly along an
    /// `F`-orbit, so only the window `shift(x) <= shift <= shift(x) + 1`
    /// contributes.
    fn hom_sum(&self, x: DObject, y: DObject) -> Result<u32, OrbitError> {
        let m = i64::from(self.modulus);
        let mut z = y;
        while z.shift >= x.shift {
            z = self.derived.f_power(z, -m)?;
        }
        let mut total = 0;
        loop {
            z = self.derived.f_power(z, m)?;
            if z.shift > x.shift + 1 {
                return Ok(total);
            }
            total += self.derived.hom(x, z);
        }
    }

    fn check(&self, x: &OrbitObject, y: &OrbitObject) -> Result<(usize, usize), OrbitError> {
        if x.modulus != y.modulus {
            return Err(OrbitError::ModulusMismatch(x.modulus, y.modulus));
        }
        Ok((self.id(x)?, self.id(y)?))
    }

    pub fn hom_orbit(&self, x: &OrbitObject, y: &OrbitObject) -> Result<u32, OrbitError> {
        let (i, j) = self.check(x, y)?;
        Ok(self.hom[i][j])
    }

    /// `dim Ext¹(x, y) = dim Hom(x, y[1])`.
    pub fn ext1_orbit(&self, x: &OrbitObject, y: &OrbitObject) -> Result<u32, OrbitError> {
        let (i, j) = self.check(x, y)?;
        Ok(self.ext[i][j])
    }

    pub fn hom_id(&self, i: usize, j: usize) -> u32 {
        self.hom[i][j]
    }

    pub fn ext_id(&self, i: usize, j: usize) -> u32 {
        self.ext[i][j]
    }

    /// Image under the covering functor to the cluster category.
    pub fn rho(&self, x: &OrbitObject) -> Result<OrbitObject, OrbitError> {
        self.id(x)?;
        let (d, _) = self.locate(x.rep)?;
        Ok(OrbitObject {
            rep: self.catalog[d],
            modulus: 1,
        })
    }

    pub fn f_action_id(&self, i: usize) -> usize {
        let fx = self
            .derived
            .f(self.catalog[i])
            .expect("catalog shifts are small");
        self.canonical_id(fx).expect("catalog shifts are small")
    }

    pub fn f_action(&self, x: &OrbitObject) -> Result<OrbitObject, OrbitError> {
        Ok(self.object(self.f_action_id(self.id(x)?)))
    }

    /// The Serre functor `τ[1]` on the catalog.
    pub fn serre_id(&self, i: usize) -> usize {
        let x = self.derived.tau(self.catalog[i]).and_then(|t| t.shifted(1));
        self.canonical_id(x.expect("catalog shifts are small"))
            .expect("catalog shifts are small")
    }

    /// Lifts cluster-category objects to `X ⊕ FX ⊕ ... ⊕ F^{m-1}X`.
    pub fn build_f_stable(&self, generator: &[OrbitObject]) -> Result<FStableObject, OrbitError> {
        let mut expansion = Vec::with_capacity(generator.len() * self.modulus as usize);
        for g in generator {
            if g.modulus != 1 {
                return Err(OrbitError::GeneratorModulus(g.modulus));
            }
            // cluster-category representatives are exactly the tier-0 objects here
            let d = self.locate(g.rep)?.0;
            if self.catalog[d] != g.rep {
                return Err(OrbitError::NotCanonical(g.rep, 1));
            }
            for t in 0..self.modulus as usize {
                expansion.push(self.object(t * self.domain_len + d));
            }
        }
        Ok(FStableObject {
            generator: generator.to_vec(),
            modulus: self.modulus,
            expansion,
        })
    }

    /// Sum of `dim Hom` over all pairs drawn from two multisets.
    pub fn hom_total(&self, xs: &[OrbitObject], ys: &[OrbitObject]) -> Result<u32, OrbitError> {
        let mut t = 0;
        for x in xs {
            for y in ys {
                t += self.hom_orbit(x, y)?;
            }
        }
        Ok(t)
    }

    /// Sum of `dim Ext¹` over all pairs drawn from two multisets.
    pub fn ext_total(&self, xs: &[OrbitObject], ys: &[OrbitObject]) -> Result<u32, OrbitError> {
        let mut t = 0;
        for x in xs {
            for y in ys {
                t += self.ext1_orbit(x, y)?;
            }
        }
        Ok(t)
    }

    pub fn catalog_entries(&self) -> Vec<CatalogEntry> {
        self.catalog
            .iter()
            .enumerate()
            .map(|(id, &x)| CatalogEntry {
                id,
                object: x,
                module: x.module,
                shift: x.shift,
                tier: self.tier(id),
            })
            .collect()
    }

    pub fn table_entries(&self) -> Vec<TableEntry> {
        let mut out = Vec::with_capacity(self.len() * self.len());
        for x in 0..self.len() {
            for y in 0..self.len() {
                out.push(TableEntry {
                    x,
                    y,
                    hom: self.hom[x][y],
                    ext: self.ext[x][y],
                });
            }
        }
        out
    }
}
