mod common;

use common::*;
use fuchsian_core::covolume::{area_jacobian, covol, minkowski_area, verify_inequalities};
use fuchsian_core::lorentz::{bilinear, hyp_distance};
use fuchsian_core::polyhedra::{build, support_number, support_value};
use fuchsian_core::{LorentzVector, SupportVector};
use proptest::prelude::*;

fn hyperboloid_point() -> impl Strategy<Value = LorentzVector> {
    (0.0..std::f64::consts::TAU, 0.0..3.0f64)
        .prop_map(|(t, r)| LorentzVector::hyperboloid_point(&[t.cos(), t.sin()], r).unwrap())
}

fn support3() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.88..1.12f64, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn generators_preserve_the_form(x in hyperboloid_point(), y in hyperboloid_point(), k in 0usize..8) {
        let group = octagon();
        let g = &group.generators()[k];
        let (gx, gy) = (g.apply(&x).unwrap(), g.apply(&y).unwrap());
        let before = bilinear(&x, &y).unwrap();
        let after = bilinear(&gx, &gy).unwrap();
        prop_assert!((before - after).abs() <= 1e-9 * before.abs());
        let d = hyp_distance(&x, &y).unwrap();
        prop_assert!((d - hyp_distance(&gx, &gy).unwrap()).abs() <= 1e-9 * (1.0 + d));
    }

    #[test]
    fn support_number_is_linear(hi in 0.1..5.0f64, hj in 0.1..5.0f64, phi in 0.05..4.0f64, s in 0.1..10.0f64) {
        let a = support_number(hi, hj, phi).unwrap();
        let b = support_number(s * hi, s * hj, phi).unwrap();
        prop_assert!((s * a - b).abs() <= 1e-12 * (1.0 + b.abs()));
    }

    #[test]
    fn jacobian_is_a_certified_m_matrix(h in support3()) {
        let p = build(&three_orbit_family(), &SupportVector::new(h).unwrap());
        prop_assume!(p.is_ok());
        let cert = area_jacobian(&p.unwrap()).certificate();
        prop_assert!(cert.holds(), "{:?}", cert);
    }

    #[test]
    fn homogeneity_chain(h in support3(), lambda in 0.3..3.0f64) {
        let fam = three_orbit_family();
        let h = SupportVector::new(h).unwrap();
        let p = build(&fam, &h);
        prop_assume!(p.is_ok());
        let p = p.unwrap();
        let q = build(&fam, &h.scaled(lambda).unwrap()).unwrap();
        prop_assert!(rel_err(covol(&q).covol, lambda.powi(3) * covol(&p).covol) <= 1e-10);
        for (a, b) in p.areas().iter().zip(q.areas()) {
            prop_assert!(rel_err(b, lambda * lambda * a) <= 1e-10);
        }
        prop_assert!(rel_err(minkowski_area(&q), lambda * lambda * minkowski_area(&p)) <= 1e-10);
    }

    #[test]
    fn facets_are_closed_and_reciprocal(h in support3()) {
        let fam = three_orbit_family();
        let p = build(&fam, &SupportVector::new(h).unwrap());
        prop_assume!(p.is_ok());
        let p = p.unwrap();
        for f in &p.facets {
            prop_assert!(f.area > 0.0 && f.polygon.len() >= 3);
            for e in &f.edges {
                let inv = fam.group().inverse(&e.element);
                let back = p.facets[e.neighbor].edges.iter()
                    .find(|b| b.neighbor == f.rep_index && b.element.approx_eq(&inv));
                prop_assert!(back.is_some_and(|b| (b.length - e.length).abs() <= 1e-9));
            }
        }
    }

    #[test]
    fn support_function_is_invariant(eta in hyperboloid_point(), k in 0usize..8) {
        let p = build(&three_orbit_family(), &SupportVector::new(vec![1.0, 0.97, 1.03]).unwrap()).unwrap();
        let g = &p.group().generators()[k];
        let a = support_value(&p, &eta).unwrap();
        let b = support_value(&p, &g.apply(&eta).unwrap()).unwrap();
        prop_assert!(a < 0.0);
        prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a.abs()));
    }

    #[test]
    fn reversed_inequalities(seed in 0u64..1_000, t in 0.05..0.95f64) {
        let (class, base) = simple_class();
        let mut r = rng(seed);
        let k1 = class_member(&class, &base, 0.01, &mut r);
        let k2 = class_member(&class, &base, 0.01, &mut r);
        for rep in verify_inequalities(&class, &k1, &k2, t, seed).unwrap() {
            prop_assert!(rep.pass, "{:?}", rep);
        }
    }
}
