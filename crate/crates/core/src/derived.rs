//! Indecomposables of `D^b(kQ)` as shifted modules, with the shift, the AR
//! translation `τ` and `F = τ⁻¹[1]`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::module_cat::{ModuleCategory, ModuleId};

/// Largest accepted absolute shift.
pub const MAX_SHIFT: i64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivedError {
    #[error("shift {0} exceeds the supported range ±{MAX_SHIFT}")]
    ShiftOutOfRange(i64),
    #[error("malformed object `{0}`: expected `m<id>[<shift>]`")]
    Malformed(String),
    #[error("unknown module id `{0}`")]
    UnknownModule(String),
}

/// The stalk complex `module[shift]`. Every indecomposable of the bounded
/// derived category of a hereditary algebra has this form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DObject {
    pub module: ModuleId,
    pub shift: i64,
}

impl DObject {
    pub fn new(module: ModuleId, shift: i64) -> Result<Self, DerivedError> {
        if shift.abs() > MAX_SHIFT {
            return Err(DerivedError::ShiftOutOfRange(shift));
        }
        Ok(DObject { module, shift })
    }

    pub fn shifted(self, t: i64) -> Result<Self, DerivedError> {
        let s = self
            .shift
            .checked_add(t)
            .ok_or(DerivedError::ShiftOutOfRange(i64::MAX))?;
        DObject::new(self.module, s)
    }
}

impl fmt::Display for DObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.module, self.shift)
    }
}

impl Serialize for DObject {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parses `m<k>[<shift>]` with a 1-based module number. The catalog bound
/// is checked by [`DerivedCategory::parse_object`].
impl FromStr for DObject {
    type Err = DerivedError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DerivedError::Malformed(s.to_string());
        let t = s.trim();
        let rest = t.strip_prefix('m').ok_or_else(bad)?;
        let open = rest.find('[').ok_or_else(bad)?;
        let body = rest[open + 1..].strip_suffix(']').ok_or_else(bad)?;
        let k: usize = rest[..open].parse().map_err(|_| bad())?;
        if k == 0 {
            return Err(DerivedError::UnknownModule(format!("m{k}")));
        }
        let shift: i64 = body.parse().map_err(|_| {
            if body
                .trim_start_matches('-')
                .chars()
                .all(|c| c.is_ascii_digit())
                && !body.is_empty()
            {
                DerivedError::ShiftOutOfRange(i64::MAX)
            } else {
                bad()
            }
        })?;
        DObject::new(ModuleId(k - 1), shift)
    }
}

/// Functors and Hom dimensions on `ind D^b(kQ)`.
#[derive(Debug, Clone, Copy)]
pub struct DerivedCategory<'a> {
    mc: &'a ModuleCategory,
}

impl<'a> DerivedCategory<'a> {
    pub fn new(mc: &'a ModuleCategory) -> Self {
        DerivedCategory { mc }
    }

    pub fn modules(&self) -> &'a ModuleCategory {
        self.mc
    }

    pub fn parse_object(&self, s: &str) -> Result<DObject, DerivedError> {
        let x: DObject = s.parse()?;
        if x.module.0 >= self.mc.len() {
            return Err(DerivedError::UnknownModule(x.module.to_string()));
        }
        Ok(x)
    }

    pub fn shift(&self, x: DObject, t: i64) -> Result<DObject, DerivedError> {
        x.shifted(t)
    }

    /// `τ(M[s]) = (τM)[s]`, and `τ(P_i[s]) = I_i[s-1]`.
    pub fn tau(&self, x: DObject) -> Result<DObject, DerivedError> {
        let ar = self.mc.ar();
        match ar.tau(x.module) {
            Some(t) => DObject::new(t, x.shift),
            None => {
                let v = ar
                    .module(x.module)
                    .projective_at
                    .expect("τ undefined only on projectives");
                DObject::new(ar.nakayama_pair(v).1, x.shift - 1)
            }
        }
    }

    /// `τ⁻¹(M[s]) = (τ⁻¹M)[s]`, and `τ⁻¹(I_i[s]) = P_i[s+1]`.
    pub fn tau_inverse(&self, x: DObject) -> Result<DObject, DerivedError> {
        let ar = self.mc.ar();
        match ar.tau_inverse(x.module) {
            Some(t) => DObject::new(t, x.shift),
            None => {
                let v = ar
                    .module(x.module)
                    .injective_at
                    .expect("τ⁻¹ undefined only on injectives");
                DObject::new(ar.nakayama_pair(v).0, x.shift + 1)
            }
        }
    }

    /// `F = τ⁻¹[1]`.
    pub fn f(&self, x: DObject) -> Result<DObject, DerivedError> {
        self.tau_inverse(x)?.shifted(1)
    }

    pub fn f_inverse(&self, x: DObject) -> Result<DObject, DerivedError> {
        self.tau(x.shifted(-1)?)
    }

    pub fn f_power(&self, mut x: DObject, t: i64) -> Result<DObject, DerivedError> {
        for _ in 0..t.unsigned_abs() {
            x = if t > 0 {
                self.f(x)?
            } else {
                self.f_inverse(x)?
            };
        }
        Ok(x)
    }

    /// `dim Hom(x, y)`: only shift gaps 0 and 1 can carry morphisms, since
    /// the algebra is hereditary.
    pub fn hom(&self, x: DObject, y: DObject) -> u32 {
        match y.shift - x.shift {
            0 => self.mc.hom_dim(x.module, y.module),
            1 => self.mc.ext_dim(x.module, y.module),
            _ => 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{DimVector, Quiver};

    fn a2() -> ModuleCategory {
        ModuleCategory::new(Quiver::new(2, &[(1, 2)]).unwrap()).unwrap()
    }

    fn id(mc: &ModuleCategory, d: &[i64]) -> ModuleId {
        mc.ar().find_by_dim(&DimVector(d.to_vec())).unwrap()
    }

    #[test]
    fn shift_examples() {
        let mc = a2();
        let d = DerivedCategory::new(&mc);
        let x = DObject::new(ModuleId(0), 0).unwrap();
        assert_eq!(
            d.shift(x, 1).unwrap(),
            DObject::new(ModuleId(0), 1).unwrap()
        );
        let y = DObject::new(ModuleId(0), 3).unwrap();
        assert_eq!(d.shift(y, -3).unwrap(), x);
        assert_eq!(d.shift(x, 0).unwrap(), x);
        assert!(matches!(
            d.shift(x, MAX_SHIFT + 1),
            Err(DerivedError::ShiftOutOfRange(_))
        ));
    }

    #[test]
    fn tau_and_f_on_a2() {
        let mc = a2();
        let d = DerivedCategory::new(&mc);
        let (s1, s2, p1) = (id(&mc, &[1, 0]), id(&mc, &[0, 1]), id(&mc, &[1, 1]));
        let at = |m, s| DObject::new(m, s).unwrap();
        assert_eq!(d.tau(at(s1, 0)).unwrap(), at(s2, 0));
        // P_2 = S_2 goes to I_2[-1] = P_1[-1]
        assert_eq!(d.tau(at(s2, 0)).unwrap(), at(p1, -1));
        assert_eq!(d.f(at(s2, 0)).unwrap(), at(s1, 1));
        // I_1 = S_1 is injective, so τ⁻¹ bumps the shift
        assert_eq!(d.f(at(s1, 0)).unwrap(), at(p1, 2));
        for m in mc.ids() {
            for s in -3..=3 {
                let x = at(m, s);
                assert_eq!(d.tau_inverse(d.tau(x).unwrap()).unwrap(), x);
                assert_eq!(d.f(d.f_power(x, -1).unwrap()).unwrap(), x);
                assert_eq!(d.f_power(x, 0).unwrap(), x);
            }
        }
    }

    #[test]
    fn hom_examples() {
        let mc = a2();
        let d = DerivedCategory::new(&mc);
        let (s1, s2) = (id(&mc, &[1, 0]), id(&mc, &[0, 1]));
        let at = |m, s| DObject::new(m, s).unwrap();
        for m in mc.ids() {
            assert_eq!(d.hom(at(m, 0), at(m, 0)), 1);
            for n in mc.ids() {
                assert_eq!(d.hom(at(m, 0), at(n, 5)), 0);
            }
        }
        assert_eq!(d.hom(at(s1, 0), at(s2, 1)), 1);
    }

    #[test]
    fn parses_textual_form() {
        let mc = a2();
        let d = DerivedCategory::new(&mc);
        assert_eq!(
            d.parse_object("m3[-1]").unwrap(),
            DObject::new(ModuleId(2), -1).unwrap()
        );
        assert!(matches!(
            d.parse_object("m1["),
            Err(DerivedError::Malformed(_))
        ));
        assert!(matches!(
            d.parse_object("x1[0]"),
            Err(DerivedError::Malformed(_))
        ));
        assert!(matches!(
            d.parse_object("m4[0]"),
            Err(DerivedError::UnknownModule(_))
        ));
        assert!(matches!(
            d.parse_object("m0[0]"),
            Err(DerivedError::UnknownModule(_))
        ));
        assert!(matches!(
            d.parse_object("m1[2000000]"),
            Err(DerivedError::ShiftOutOfRange(_))
        ));
        assert!(matches!(
            d.parse_object("m1[99999999999999999999]"),
            Err(DerivedError::ShiftOutOfRange(_))
        ));
        let x = DObject::new(ModuleId(1), 4).unwrap();
        assert_eq!(x.to_string().parse::<DObject>().unwrap(), x);
    }

    #[test]
    fn serre_duality_in_the_derived_category() {
        let q = Quiver::new(4, &[(2, 1), (2, 3), (4, 2)]).unwrap();
        let mc = ModuleCategory::new(q).unwrap();
        let d = DerivedCategory::new(&mc);
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
            let sx = d.tau(x).unwrap().shifted(1).unwrap();
            for &y in &objs {
                assert_eq!(d.hom(x, y), d.hom(y, sx), "{x} {y}");
            }
            let gap = d.f(x).unwrap().shift - x.shift;
            let injective = mc.ar().module(x.module).injective_at.is_some();
            assert_eq!(gap, if injective { 2 } else { 1 });
            assert_eq!(
                d.f(x.shifted(1).unwrap()).unwrap(),
                d.f(x).unwrap().shifted(1).unwrap()
            );
        }
    }
}
