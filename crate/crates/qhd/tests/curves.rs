use std::collections::BTreeMap;

use proptest::prelude::*;
use qhd::curves::{
    adjunction_delta, count_required_exceptional, filter_cubic_singularity, filter_exc_curve_forced,
    filter_no_cycle, filter_no_nonneg_off_l, is_plane_state, CurveConfiguration, CurveError, DualFamily, FilterSet,
    HomologyClass, Role,
};

fn inc(pairs: &[(&str, i64)]) -> BTreeMap<String, i64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn c6(k: usize) -> CurveConfiguration {
    let mut f = vec![-2; k + 1];
    f[0] = 2 - k as i64;
    CurveConfiguration::from_dual_family(DualFamily::C6, k, &f).unwrap()
}

#[test]
fn component_counts() {
    assert_eq!(c6(3).len(), 5);
    assert_eq!(c6(7).len(), 9);
    let c3 = CurveConfiguration::from_dual_family(DualFamily::C3, 1, &[-2, -2]).unwrap();
    assert_eq!(c3.len(), 6);
    for k in 1..=4 {
        let cfg = CurveConfiguration::from_dual_family(DualFamily::C3, k, &vec![-2; k + 1]).unwrap();
        assert_eq!(cfg.len(), k + 5);
    }
}

#[test]
fn layout_of_the_c6_configuration() {
    let cfg = c6(4);
    assert_eq!(cfg.square("L"), Some(1));
    assert_eq!(cfg.square("D"), Some(1));
    assert_eq!(cfg.intersection("L", "D"), 3);
    assert_eq!(cfg.intersection("D", "C1"), 1);
    assert_eq!(cfg.intersection("C3", "C4"), 1);
    assert_eq!(cfg.intersection("C1", "C3"), 0);
    assert!(cfg.meets_line("D") && !cfg.meets_line("C1"));
    assert_eq!(cfg.num_contractible(), 4);
    assert_eq!(count_required_exceptional(DualFamily::C6), 1);
    assert_eq!(count_required_exceptional(DualFamily::A4Leg), 3);
}

#[test]
fn dual_family_parameter_errors() {
    assert!(matches!(
        CurveConfiguration::from_dual_family(DualFamily::C6, 0, &[-1]),
        Err(CurveError::BadParameters(_))
    ));
    assert!(matches!(
        CurveConfiguration::from_dual_family(DualFamily::C3, 2, &[-2, -2]),
        Err(CurveError::BadParameters(_))
    ));
    assert!(matches!(
        CurveConfiguration::from_dual_family(DualFamily::C3, 1, &[0, -2]),
        Err(CurveError::BadParameters(_))
    ));
    assert!(matches!(
        CurveConfiguration::from_dual_family(DualFamily::C3, 1, &[-2, -1]),
        Err(CurveError::BadParameters(_))
    ));
    assert!(matches!("Z9".parse::<DualFamily>(), Err(CurveError::UnknownFamily(_))));
    for f in DualFamily::ALL {
        assert_eq!(f.name().parse::<DualFamily>().unwrap(), f);
    }
}

#[test]
fn blow_down_step_examples() {
    let mut cfg = CurveConfiguration::with_line("L");
    cfg.add_curve("D", 5, Role::Cubic).unwrap();
    cfg.add_event("L", "D", "P", 3).unwrap();
    cfg.add_curve("C", -2, Role::Contract).unwrap();
    cfg.add_event("D", "C", "q", 1).unwrap();
    cfg.add_exceptional("E", &inc(&[("C", 1), ("D", 1)])).unwrap();

    assert_eq!(cfg.blow_down_step("C").unwrap_err(), CurveError::NotMinusOne("C".into()));
    assert_eq!(cfg.blow_down_step("D").unwrap_err(), CurveError::WrongRole("D".into(), Role::Cubic));
    assert_eq!(cfg.blow_down_step("X").unwrap_err(), CurveError::UnknownCurve("X".into()));

    let next = cfg.blow_down_step("E").unwrap();
    assert_eq!(next.square("C"), Some(-1));
    assert_eq!(next.square("D"), Some(6));
    assert_eq!(next.intersection("C", "D"), 2);
    // C and D now meet twice: once at q and once at the image of E
    let last = next.blow_down_step("C").unwrap();
    assert_eq!(last.square("D"), Some(10));
    assert_eq!(last.singular_points("D"), vec![(last.singular_points("D")[0].0.clone(), 2)]);
    assert_eq!(last.image_class("D").unwrap(), HomologyClass::new(3, vec![1, 2]));

    let mut bad = CurveConfiguration::with_line("L");
    bad.add_exceptional("E", &inc(&[("L", 1)])).unwrap();
    assert_eq!(bad.blow_down_step("E").unwrap_err(), CurveError::MeetsL("E".into()));
}

#[test]
fn construction_errors() {
    let mut cfg = CurveConfiguration::with_line("L");
    assert_eq!(cfg.add_curve("L", 1, Role::Line), Err(CurveError::DuplicateCurve("L".into())));
    assert_eq!(cfg.add_event("L", "M", "p", 1), Err(CurveError::UnknownCurve("M".into())));
    assert!(matches!(cfg.add_exceptional("E", &inc(&[("Q", 1)])), Err(CurveError::UnknownCurve(_))));
}

#[test]
fn adjunction_examples() {
    assert_eq!(adjunction_delta(&HomologyClass::new(3, vec![])).unwrap(), 1);
    assert_eq!(adjunction_delta(&HomologyClass::new(1, vec![])).unwrap(), 0);
    assert_eq!(adjunction_delta(&HomologyClass::new(2, vec![1, 1, 1])).unwrap(), 0);
    assert_eq!(adjunction_delta(&HomologyClass::new(3, vec![2])).unwrap(), 0);
    assert_eq!(adjunction_delta(&HomologyClass::new(4, vec![])).unwrap(), 3);
    assert!(matches!(adjunction_delta(&HomologyClass::new(1, vec![2])), Err(CurveError::NonRational(_))));
    assert_eq!(HomologyClass::new(3, vec![1, 2]).square(), 4);
    assert_eq!(HomologyClass::new(3, vec![1]).pairing(&HomologyClass::new(1, vec![1, 1])), 2);
}

#[test]
fn cycle_filter() {
    let base = || {
        let mut cfg = CurveConfiguration::with_line("L");
        for id in ["A", "B", "C"] {
            cfg.add_curve(id, -2, Role::Contract).unwrap();
        }
        cfg
    };
    let mut chain = base();
    chain.add_event("A", "B", "x", 1).unwrap();
    chain.add_event("B", "C", "y", 1).unwrap();
    assert!(filter_no_cycle(&chain));
    let mut triangle = chain.clone();
    triangle.add_event("A", "C", "z", 1).unwrap();
    assert!(!filter_no_cycle(&triangle));
    let mut bigon = base();
    bigon.add_event("A", "B", "x", 2).unwrap();
    assert!(!filter_no_cycle(&bigon));
    let mut singular = base();
    singular.add_event("A", "A", "s", 2).unwrap();
    assert!(!filter_no_cycle(&singular));
    // curves meeting L are ignored
    let mut on_l = base();
    on_l.add_event("A", "L", "u", 1).unwrap();
    on_l.add_event("A", "B", "x", 2).unwrap();
    assert!(filter_no_cycle(&on_l));
}

#[test]
fn square_and_singularity_filters() {
    let mut cfg = CurveConfiguration::with_line("L");
    cfg.add_curve("A", 0, Role::Contract).unwrap();
    assert!(!filter_no_nonneg_off_l(&cfg));
    cfg.add_event("A", "L", "u", 1).unwrap();
    assert!(filter_no_nonneg_off_l(&cfg));

    let mut cubic = CurveConfiguration::with_line("L");
    cubic.add_curve("D", 9, Role::Cubic).unwrap();
    cubic.add_event("D", "L", "P", 3).unwrap();
    assert!(filter_cubic_singularity(&cubic));
    cubic.add_event("D", "D", "s", 2).unwrap();
    assert!(filter_cubic_singularity(&cubic));
    let mut two = cubic.clone();
    two.add_event("D", "D", "t", 2).unwrap();
    assert!(!filter_cubic_singularity(&two));
    let mut triple = cubic.clone();
    triple.add_event("D", "D", "s", 3).unwrap();
    assert!(!filter_cubic_singularity(&triple));
    assert!(!FilterSet::default().passes(&two));
    assert!(FilterSet::none().passes(&two));
}

#[test]
fn terminal_states() {
    let mut cfg = CurveConfiguration::with_line("L");
    cfg.add_curve("D", 9, Role::Cubic).unwrap();
    cfg.add_event("L", "D", "P", 3).unwrap();
    assert!(!filter_exc_curve_forced(&cfg));
    // the cubic has no double point yet
    assert!(!is_plane_state(&cfg));

    let mut nodal = CurveConfiguration::with_line("L");
    nodal.add_curve("D", 5, Role::Cubic).unwrap();
    nodal.add_event("L", "D", "P", 3).unwrap();
    nodal.add_exceptional("E", &inc(&[("D", 2)])).unwrap();
    assert!(filter_exc_curve_forced(&nodal));
    let done = nodal.blow_down_step("E").unwrap();
    assert_eq!(done.square("D"), Some(9));
    assert!(is_plane_state(&done));
    assert!(!filter_exc_curve_forced(&done));
    assert_eq!(adjunction_delta(&done.image_class("D").unwrap()).unwrap(), 0);

    let mut lines = CurveConfiguration::with_line("L");
    lines.add_curve("M", 1, Role::Line).unwrap();
    lines.add_event("L", "M", "p", 1).unwrap();
    assert!(is_plane_state(&lines));
    lines.add_curve("N", 1, Role::Line).unwrap();
    lines.add_event("L", "N", "q", 1).unwrap();
    assert!(!is_plane_state(&lines));
}

#[test]
fn json_is_sorted_and_stable() {
    let a = c6(3).to_json();
    let b = c6(3).to_json();
    assert_eq!(a, b);
    assert_eq!(a["line"], "L");
    assert_eq!(a["curves"].as_array().unwrap().len(), 5);
}

fn arb_config() -> impl Strategy<Value = (CurveConfiguration, usize)> {
    (2usize..6)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(-4i64..=2, n),
                prop::collection::vec((0..n, 0..n, 1i64..=2), 0..8),
                0..n,
            )
        })
        .prop_map(|(squares, events, pick)| {
            let mut cfg = CurveConfiguration::with_line("L");
            for (i, s) in squares.iter().enumerate() {
                cfg.add_curve(&format!("X{i}"), *s, Role::Contract).unwrap();
            }
            for (j, (a, b, m)) in events.into_iter().enumerate() {
                if a != b {
                    cfg.add_event(&format!("X{a}"), &format!("X{b}"), &format!("e{j}"), m).unwrap();
                }
            }
            (cfg, pick)
        })
}

proptest! {
    #[test]
    fn contraction_updates_the_form((cfg, pick) in arb_config()) {
        let e = format!("X{pick}");
        let mut next = cfg.clone();
        next.contract_unchecked(&e).unwrap();
        prop_assert_eq!(next.len(), cfg.len() - 1);
        let ids: Vec<String> = next.curves().iter().map(|c| c.id.clone()).collect();
        for x in &ids {
            let ex = cfg.intersection(&e, x);
            prop_assert_eq!(next.square(x).unwrap(), cfg.square(x).unwrap() + ex * ex);
            prop_assert_eq!(*next.curve(x).unwrap().history.last().unwrap(), ex);
            for y in &ids {
                if x != y {
                    let ey = cfg.intersection(&e, y);
                    prop_assert_eq!(next.intersection(x, y), cfg.intersection(x, y) + ex * ey);
                }
            }
        }
    }

    #[test]
    fn homology_pairing_is_symmetric_and_bilinear(d1 in -5i64..5, d2 in -5i64..5,
        m1 in prop::collection::vec(-3i64..4, 0..5), m2 in prop::collection::vec(-3i64..4, 0..5)) {
        let a = HomologyClass::new(d1, m1.clone());
        let b = HomologyClass::new(d2, m2.clone());
        prop_assert_eq!(a.pairing(&b), b.pairing(&a));
        let sum = HomologyClass::new(
            d1 + d2,
            (0..m1.len().max(m2.len())).map(|i| m1.get(i).unwrap_or(&0) + m2.get(i).unwrap_or(&0)).collect(),
        );
        prop_assert_eq!(sum.square(), a.square() + 2 * a.pairing(&b) + b.square());
    }
}
