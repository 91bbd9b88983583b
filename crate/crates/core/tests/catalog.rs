use num_traits::Zero;
use specrec_core::algebra::{int, rat, Rational};
use specrec_core::catalog::{catalog_get, catalog_list, parse_params, CatalogEntry, Convention};
use specrec_core::curve::Side;
use specrec_core::duality::free_energy_duality;
use specrec_core::tr::dilaton_free_energy;

const CASES: &[(&str, &[&str])] = &[
    ("harer-zagier", &[]),
    ("rational-poles", &["c=1,4"]),
    ("log-points", &["a=0,1"]),
    ("log-points", &["a=0,1,5"]),
    ("gaiotto", &["Q=-1,1"]),
    ("cdo", &["P=1,2", "Q=5"]),
    ("r-spin", &["r=3"]),
    ("neg-r-spin", &["r=2"]),
    ("neg-r-spin", &["r=3", "eps=2"]),
];

fn entry(name: &str, params: &[&str]) -> CatalogEntry {
    catalog_get(name, &parse_params(params).unwrap()).unwrap()
}

fn dual(e: &CatalogEntry, g: usize) -> Rational {
    free_energy_duality(&e.curve, g).unwrap().value
}

#[test]
fn every_family_is_listed() {
    let names: Vec<_> = catalog_list().into_iter().map(|i| i.name).collect();
    for (n, _) in CASES {
        assert!(names.contains(n), "{n}");
    }
}

#[test]
fn duality_matches_reconciled_closed_form() {
    for (name, params) in CASES {
        let e = entry(name, params);
        for g in 2..=3 {
            let cf = e.closed_form(g).unwrap();
            assert_eq!(&dual(&e, g), cf.value(Convention::Reconciled), "{name} {params:?} g={g}");
        }
    }
}

#[test]
fn tr_agrees_with_duality_where_ramification_is_rational() {
    let mut checked = 0;
    for (name, params) in CASES {
        let e = entry(name, params);
        let ram = e.curve.ramification(Side::X).unwrap();
        if ram.irrational_factor.is_some() || ram.points.is_empty() {
            continue;
        }
        let t = dilaton_free_energy(&e.curve, 2).unwrap().value;
        assert_eq!(t, dual(&e, 2), "{name} {params:?}");
        checked += 1;
    }
    assert!(checked >= 4, "only {checked} curves had rational ramification");
}

#[test]
fn hand_values() {
    assert_eq!(dual(&entry("harer-zagier", &[]), 2), rat(-1, 240));
    assert_eq!(dual(&entry("log-points", &["a=0,1,5"]), 2), rat(147, 32000));
    assert_eq!(dual(&entry("cdo", &["P=1,2", "Q=5"]), 3), rat(-3107999, 3136589568));
    assert!(dual(&entry("r-spin", &["r=4"]), 2).is_zero());
}

#[test]
fn neg_r_spin_is_independent_of_r() {
    let base = dual(&entry("neg-r-spin", &["r=2", "eps=3"]), 2);
    assert_eq!(dual(&entry("neg-r-spin", &["r=3", "eps=3"]), 2), base);
    assert_eq!(base, rat(1, 240) * rat(1, 9));
    for r in ["r=1", "r=2", "r=3"] {
        assert_eq!(entry("neg-r-spin", &[r, "eps=3"]).closed_form(2).unwrap().printed, base);
    }
}

#[test]
fn neg_r_spin_r1_is_unramified() {
    // x = (1 - eps)/z is a Moebius map
    let e = entry("neg-r-spin", &["r=1", "eps=3"]);
    assert!(e.curve.ramification(Side::X).unwrap().points.is_empty());
    assert!(dual(&e, 2).is_zero());
}

#[test]
fn log_points_translation_invariant() {
    let a = dual(&entry("log-points", &["a=0,1,5"]), 2);
    let b = dual(&entry("log-points", &["a=-3,-2,2"]), 2);
    assert_eq!(a, b);
}

#[test]
fn lambda_does_not_change_free_energies() {
    for (name, params) in [("gaiotto", &["Q=-1,1"][..]), ("cdo", &["P=1,2", "Q=5"][..])] {
        let mut with_l = params.to_vec();
        with_l.push("L=3");
        for g in 2..=3 {
            assert_eq!(dual(&entry(name, params), g), dual(&entry(name, &with_l), g), "{name}");
        }
    }
}

#[test]
fn closed_form_scales_with_c() {
    let a = entry("rational-poles", &["c=2"]).closed_form(2).unwrap();
    let b = entry("rational-poles", &["c=1"]).closed_form(2).unwrap();
    assert_eq!(a.printed, &b.printed / int(4));
}
