//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use specrec_core::algebra::rational::pow_i;
use specrec_core::algebra::{int, rat, Point, Poly, Rational, RationalFunction};
use specrec_core::appendix::{appendix_suite, ResidueMatch, SignMatch};
use specrec_core::catalog::{catalog_get, closed_form_eval, parse_params, tilde_transform, CatalogEntry};
use specrec_core::curve::{deck_transformation, CurveFunction, Side, SpectralCurve};
use specrec_core::duality::{free_energy_duality, free_energy_duality_at, omega_g1_duality};
use specrec_core::tr::{dilaton_free_energy, lemma31_check, linear_loop_check, tr_omega};
use specrec_core::Result;

struct Outcome {
    pass: bool,
    detail: String,
}

fn entry(name: &str, params: &[&str]) -> Result<CatalogEntry> {
    catalog_get(name, &parse_params(params)?)
}

/// `B_{2g}/(2g(2-2g))` with the Bernoulli numbers written out.
fn bernoulli_form(g: usize) -> Rational {
    let b = match g {
        2 => rat(-1, 30),
        3 => rat(1, 42),
        4 => rat(-1, 30),
        _ => unreachable!(),
    };
    let g = g as i64;
    b / (int(2 * g) * int(2 - 2 * g))
}

fn duality(c: &SpectralCurve, g: usize) -> Result<Rational> {
    Ok(free_energy_duality(c, g)?.value)
}

fn tr(c: &SpectralCurve, g: usize) -> Result<Rational> {
    Ok(dilaton_free_energy(c, g)?.value)
}

fn show(v: &[Rational]) -> String {
    v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ")
}

fn criterion_1() -> Result<Outcome> {
    let hz = entry("harer-zagier", &[])?.curve;
    let expected = [bernoulli_form(2), bernoulli_form(3)];
    let d = [duality(&hz, 2)?, duality(&hz, 3)?];
    let t = [tr(&hz, 2)?, tr(&hz, 3)?];
    let mut omegas = true;
    for g in 1..=2 {
        omegas &= omega_g1_duality(&hz, g)? == *tr_omega(&hz, g, 1)?;
    }
    let values = d == expected && t == expected;
    Ok(Outcome {
        pass: values && omegas,
        detail: format!(
            "expected F2,F3 = {}; duality {}; tr {}; omega_11, omega_21 tensors identical: {omegas}",
            show(&expected),
            show(&d),
            show(&t)
        ),
    })
}

fn criterion_2() -> Result<Outcome> {
    let e = entry("rational-poles", &["c=1,4"])?;
    let x = &(&RationalFunction::z() + &RationalFunction::pole(int(1), &int(0), 1))
        + &RationalFunction::pole(int(4), &int(3), 1);
    let curve_ok = e.curve.x.rational == x && !e.curve.x.has_logs();
    let expected = [
        rat(1, 240) * (int(1) + rat(1, 16)),
        rat(-1, 1008) * (int(1) + rat(1, 256)),
    ];
    let d = [duality(&e.curve, 2)?, duality(&e.curve, 3)?];
    Ok(Outcome {
        pass: curve_ok && d == expected,
        detail: format!("x = z + 1/z + 4/(z-3): {curve_ok}; expected {}; duality {}", show(&expected), show(&d)),
    })
}

fn criterion_3() -> Result<Outcome> {
    let c = entry("log-points", &["a=0,1"])?.curve;
    let expected = [rat(1, 120), rat(-1, 504)];
    let d = [duality(&c, 2)?, duality(&c, 3)?];
    let ram = c.ramification(Side::X)?.points;
    let t = [tr(&c, 2)?, tr(&c, 3)?];
    let cross = ram == vec![rat(1, 2)] && t == d;
    Ok(Outcome {
        pass: d == expected && cross,
        detail: format!(
            "expected {}; duality {}; tr at Ram = {{1/2}}: {} (agrees with duality: {cross})",
            show(&expected),
            show(&d),
            show(&t)
        ),
    })
}

fn criterion_4() -> Result<Outcome> {
    let e = entry("gaiotto", &["Q=-1,1", "L=1", "r=2"])?;
    let expected = rat(1, 480);
    let d = duality(&e.curve, 2)?;
    let t = tr(&e.curve, 2)?;
    let cf = closed_form_eval("gaiotto", &e.parameters, 2)?.printed;
    // x~ = -1/((-1 - z)(1 - z)), y~ = -z (-1 - z)(1 - z)
    let q = Poly::new(vec![int(-1), int(0), int(1)]);
    let xt = RationalFunction::new(Poly::constant(int(-1)), q.clone())?;
    let yt = RationalFunction::from_poly(&Poly::z() * &q.scale(&int(-1)));
    let tt = tilde_transform(&xt, &yt, "gaiotto-tilde")?;
    let round_trip = tt.dx_matches && tt.ramification_matches && tt.curve.x.differential() == e.curve.x.differential();
    Ok(Outcome {
        pass: d == expected && t == expected && cf == expected && round_trip,
        detail: format!(
            "expected {expected}; duality {d}; tr {t}; closed form {cf}; tilde transform keeps dx and Ram(x): {round_trip}"
        ),
    })
}

fn criterion_5() -> Result<Outcome> {
    let e = entry("cdo", &["P=1,2", "Q=5"])?;
    let expected = rat(1, 240) * (int(2) - rat(1, 36) - rat(1, 49));
    let d = duality(&e.curve, 2)?;
    let cf = closed_form_eval("cdo", &e.parameters, 2)?.printed;
    Ok(Outcome {
        pass: d == expected && cf == expected,
        detail: format!("expected {expected}; duality {d}; closed form {cf}"),
    })
}

fn criterion_6() -> Result<Outcome> {
    let c = entry("r-spin", &["r=3", "eps=1"])?.curve;
    let mut vals = Vec::new();
    let mut silent = true;
    for g in 2..=4 {
        let r = free_energy_duality_at(&c, g, &[])?;
        silent &= r.contributions.iter().all(|p| p.residue.is_zero());
        silent &= r.contributions.iter().all(|p| p.point == Point::Infinity);
        vals.push(r.value.value);
    }
    Ok(Outcome {
        pass: silent && vals.iter().all(|v| v.is_zero()),
        detail: format!("F2..F4 = {}; only infinity in the residue set, contributing 0: {silent}", show(&vals)),
    })
}

fn criterion_7() -> Result<Outcome> {
    let f2 = entry("neg-r-spin", &["r=2", "eps=1"])?;
    let f3 = entry("neg-r-spin", &["r=3", "eps=1"])?;
    let f2e = entry("neg-r-spin", &["r=2", "eps=2"])?;
    let a = duality(&f2.curve, 2)?;
    let b = duality(&f3.curve, 2)?;
    let c = duality(&f2e.curve, 2)?;
    let cf = [
        f2.closed_form(2)?.printed,
        f3.closed_form(2)?.printed,
        f2e.closed_form(2)?.printed,
    ];
    let pass = a == rat(1, 240) && b == a && c == rat(1, 240) * rat(1, 4) && cf == [a.clone(), b.clone(), c.clone()];
    Ok(Outcome {
        pass,
        detail: format!("r=2: {a}; r=3: {b}; r=2, eps=2: {c}; closed forms {}", show(&cf)),
    })
}

fn criterion_8() -> Result<Outcome> {
    let hz = entry("harer-zagier", &[])?.curve;
    let mut hz_ok = true;
    let mut lines = Vec::new();
    for g in 2..=3 {
        let r = lemma31_check(&hz, g)?;
        hz_ok &= r.holds && r.lhs.is_zero() && r.rhs.is_zero();
        lines.push(format!("hz g={g}: {} = {}", r.lhs, r.rhs));
    }
    let lp = entry("log-points", &["a=0,1"])?.curve;
    let mut lp_ok = true;
    for g in 2..=3 {
        let r = lemma31_check(&lp, g)?;
        lp_ok &= r.holds && !r.lhs.is_zero();
        lines.push(format!("log-points g={g}: lhs {} rhs {}", r.lhs, r.rhs));
    }
    Ok(Outcome {
        pass: hz_ok && lp_ok,
        detail: format!("{}; hz holds: {hz_ok}; log-points holds nontrivially: {lp_ok}", lines.join("; ")),
    })
}

/// `sum_p Res_p f = 0` over the poles and infinity.
fn total_residue(f: &RationalFunction) -> Result<Rational> {
    let mut s = Rational::zero();
    for (a, _) in f.poles()? {
        s += f.residue_at(&Point::Finite(a));
    }
    s += f.residue_at(&Point::Infinity);
    Ok(s)
}

fn residue_fuzz(cases: u32) -> std::result::Result<u32, String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    let small = (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d));
    let strategy = (
        prop::collection::vec(small.clone(), 0..6),
        prop::collection::vec((small.clone(), 1usize..=3), 1..4),
    );
    runner
        .run(&strategy, |(num, poles)| {
            let mut den = Poly::one();
            for (a, k) in &poles {
                den = &den * &Poly::linear(a).pow(*k);
            }
            let f = RationalFunction::new(Poly::new(num), den).unwrap();
            let s = total_residue(&f).unwrap();
            prop_assert!(s.is_zero(), "total residue {} for {}", s, f);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(cases)
}

fn criterion_9() -> Result<Outcome> {
    let hz = entry("harer-zagier", &[])?.curve;
    let lp = entry("log-points", &["a=0,1"])?.curve;
    let mut notes = Vec::new();

    let sym = [(0, 3), (0, 4), (1, 2)]
        .iter()
        .map(|&(g, n)| tr_omega(&hz, g, n).map(|w| w.is_symmetric()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|b| b);
    notes.push(format!("symmetry {sym}"));

    let mut rf = true;
    for c in [&hz, &lp] {
        for g in 1..=3 {
            rf &= tr_omega(c, g, 1)?.is_residue_free();
        }
    }
    notes.push(format!("residue-free {rf}"));

    let mut loops = true;
    for c in [&hz, &lp] {
        for g in 1..=3 {
            loops &= linear_loop_check(c, g, 1)?;
        }
    }
    notes.push(format!("linear loop {loops}"));

    // (x(z), 2y(z)) for TR; the same curve as (x(w/2), w) for the duality path.
    let lambda = int(2);
    let hz_w = SpectralCurve::new(
        CurveFunction::rational(&RationalFunction::z().scale(&rat(1, 2)) + &RationalFunction::pole(int(2), &int(0), 1)),
        CurveFunction::z(),
        "hz-rescaled",
    )?;
    let mut scaling = true;
    for g in 2..=3 {
        let factor = pow_i(&lambda, 2 - 2 * g as i64);
        for c in [&hz, &lp] {
            scaling &= tr(&c.scaled_y(&lambda)?, g)? == &factor * tr(c, g)?;
        }
        scaling &= duality(&hz_w, g)? == &factor * duality(&hz, g)?;
    }
    notes.push(format!("scaling {scaling}"));

    let fuzz = residue_fuzz(128);
    let fuzz_ok = fuzz.is_ok();
    notes.push(match &fuzz {
        Ok(n) => format!("total residue zero on {n} random functions"),
        Err(e) => format!("total residue fuzz failed: {e}"),
    });

    let mut deck = true;
    let rspin = entry("r-spin", &["r=3"])?.curve;
    for (c, p) in [(&hz, int(1)), (&hz, int(-1)), (&lp, rat(1, 2)), (&rspin, int(1)), (&rspin, int(-1))] {
        let order = 12;
        let d = deck_transformation(c, &p, order)?;
        let s = d.series.known_part().truncate(order + 1);
        let ss = (&s.compose(&s)? - &specrec_core::algebra::Laurent::t()).truncate(order + 1);
        deck &= ss.is_zero() || ss.valuation() > order;
    }
    notes.push(format!("deck involution {deck}"));

    Ok(Outcome {
        pass: sym && rf && loops && scaling && fuzz_ok && deck,
        detail: notes.join("; "),
    })
}

fn criterion_10() -> Result<Outcome> {
    let r = appendix_suite(5, 5)?;
    let a1 = &r.lemma_a1_verdict;
    let a3 = &r.lemma_a3_verdict;
    let pass = a1.consistent
        && a3.consistent
        && matches!(a1.verdict, Some(SignMatch::MinusBg | SignMatch::PlusBg))
        && matches!(a3.verdict, Some(ResidueMatch::Paper | ResidueMatch::Factorial));
    Ok(Outcome {
        pass,
        detail: format!(
            "A.1 sign verdict {:?} over {} cases (consistent {}); A.3 verdict {:?} over {} cases (consistent {}); A.2 bound holds {}",
            a1.verdict, a1.discriminating_cases, a1.consistent, a3.verdict, a3.discriminating_cases, a3.consistent, r.lemma_a2_holds
        ),
    })
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Result<Outcome>); 10] = [
        ("harer-zagier free energies and omega_{g,1} agreement", criterion_1),
        ("rational-pole family", criterion_2),
        ("log-point family", criterion_3),
        ("gaiotto curve", criterion_4),
        ("cdo curve", criterion_5),
        ("r-spin vanishing", criterion_6),
        ("negative r-spin", criterion_7),
        ("x y omega identity", criterion_8),
        ("property suites", criterion_9),
        ("appendix verdicts", criterion_10),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (pass, detail) = match run() {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "[{}] criterion {:>2} {name} ({:.1}s): {detail}",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        criteria.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
