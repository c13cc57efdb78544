use proptest::prelude::*;

use clustercat::tilting::{enumerate_cluster_tilting, lift, verify_definition};
use clustercat::{DObject, DynkinClass, Family, ModuleCategory, ModuleId, OrbitCategory, Quiver};

fn quiver() -> impl Strategy<Value = Quiver> {
    prop_oneof![
        (1usize..=5).prop_map(|n| (Family::A, n)),
        Just((Family::D, 4)),
        Just((Family::D, 5)),
    ]
    .prop_flat_map(|(f, n)| {
        let orientations = Quiver::standard(DynkinClass::new(f, n).unwrap()).all_orientations();
        (0..orientations.len()).prop_map(move |k| orientations[k].clone())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn canonical_form_is_an_f_power_invariant(q in quiver(), m in 1u32..=3, k in 0usize..64, shift in -40i64..40, l in -4i64..4) {
        let mc = ModuleCategory::new(q).unwrap();
        let cat = OrbitCategory::new(&mc, m).unwrap();
        let x = DObject::new(ModuleId(k % mc.len()), shift).unwrap();
        let c = cat.canonicalize(x).unwrap();
        prop_assert_eq!(cat.canonicalize(c.rep).unwrap(), c);
        let moved = cat.derived().f_power(x, l * m as i64).unwrap();
        prop_assert_eq!(cat.canonicalize(moved).unwrap(), c);
        let once = cat.derived().f(x).unwrap();
        prop_assert_eq!(cat.canonicalize(once).unwrap() == c, m == 1);
    }

    #[test]
    fn euler_form_is_hom_minus_ext(q in quiver()) {
        let mc = ModuleCategory::new(q.clone()).unwrap();
        for a in mc.ids() {
            for b in mc.ids() {
                let e = q.euler_form(&mc.ar().module(a).dim, &mc.ar().module(b).dim).unwrap();
                prop_assert_eq!(e, mc.hom_dim(a, b) as i64 - mc.ext_dim(a, b) as i64);
            }
        }
    }

    #[test]
    fn orbit_hom_is_symmetric_under_serre(q in quiver(), m in 1u32..=3) {
        let mc = ModuleCategory::new(q).unwrap();
        let cat = OrbitCategory::new(&mc, m).unwrap();
        for i in 0..cat.len() {
            prop_assert_eq!(cat.hom_id(i, i), 1);
            prop_assert_eq!(cat.ext_id(i, i), 0);
            let s = cat.serre_id(i);
            for j in 0..cat.len() {
                prop_assert_eq!(cat.hom_id(i, j), cat.hom_id(j, s));
            }
        }
    }

    #[test]
    fn lifts_are_tilting_with_mn_summands(q in quiver().prop_filter("small", |q| q.vertex_count() <= 4), m in 1u32..=3, pick in 0usize..1000) {
        let mc = ModuleCategory::new(q).unwrap();
        let base = OrbitCategory::new(&mc, 1).unwrap();
        let cat = OrbitCategory::new(&mc, m).unwrap();
        let ts = enumerate_cluster_tilting(&base).unwrap();
        let t = &ts[pick % ts.len()];
        let l = lift(&base, &cat, t).unwrap();
        prop_assert_eq!(clustercat::orbit::delta(l.summands()), m as usize * mc.vertex_count());
        prop_assert!(verify_definition(&cat, l.summands()).unwrap().holds);
        for s in l.summands() {
            prop_assert!(l.summands().contains(&cat.f_action(s).unwrap()));
        }
    }
}
