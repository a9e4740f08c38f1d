//! The twelve delivery criteria for this stack, one test per criterion.
//!
//! Each test prints a single `ACCEPTANCE NN: PASS|FAIL — …` verdict line
//! (visible with `cargo test --test acceptance -- --nocapture`) and then
//! asserts the *expected* state, so the build stays green exactly when the
//! stack behaves as documented.
//!
//! Criteria 8 and 12 are FAIL verdicts by design: the one-step ladder
//! recurrences they test are mathematically false as commonly stated (the
//! first counterexample sits at row 2 for every sequence), so a suite that
//! checks them honestly cannot come up all-green. Those two tests assert
//! that the failure is exactly the documented counterexample — nothing
//! else — and that the corrected two-step forms hold. See the README for
//! the derivation.

use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::One;

use cfnum::identity::{
    check_closed_forms, check_inverse_relations, check_orthogonality, check_quadruple_sums,
    check_recurrences, check_sum_rule, CheckStatus, IdentityCheck,
};
use cfnum::poly::{Basis, Polynomial};
use cfnum::rational::{falling, int, rat, Rational};
use cfnum::series::{two_sinh_half, TruncatedSeries};
use cfnum::triangles::{triangle, triangle_by_algebra, triangle_by_series, TriangleFamily};
use cfnum::umbral::{
    assoc_t1, assoc_t2, catalog, central_exp, central_log, CatalogParams, PolySequenceSpec,
    T1Route, T2Route, CATALOG,
};

fn report(number: usize, passed: bool, details: &str) {
    let verdict = if passed { "PASS" } else { "FAIL" };
    println!("ACCEPTANCE {number:02}: {verdict} — {details}");
}

/// Every catalog sequence at the default parameters (λ = 1/3, r = 2, s = 1,
/// a = 1/2), plus a λ = 1 rerun of each λ-parameterized entry.
fn catalog_units() -> Vec<PolySequenceSpec> {
    let defaults = CatalogParams::default();
    let collapsed = CatalogParams {
        lambda: Rational::one(),
        ..CatalogParams::default()
    };
    let mut units = Vec::new();
    for (name, params) in CATALOG {
        units.push(catalog(name, &defaults).expect("catalog entry builds"));
        if params.contains(&"lambda") {
            units.push(catalog(name, &collapsed).expect("catalog entry builds at λ = 1"));
        }
    }
    units
}

fn all_families() -> Vec<TriangleFamily> {
    let lam = rat(1, 3);
    vec![
        TriangleFamily::S1,
        TriangleFamily::S2,
        TriangleFamily::S1Lambda(lam.clone()),
        TriangleFamily::S2Lambda(lam.clone()),
        TriangleFamily::T1,
        TriangleFamily::T2,
        TriangleFamily::T1Lambda(lam.clone()),
        TriangleFamily::T2Lambda(lam.clone()),
        TriangleFamily::R1Lambda(lam.clone()),
        TriangleFamily::R2Lambda(lam),
        TriangleFamily::Lah,
        TriangleFamily::L1Central,
        TriangleFamily::L2Central,
        TriangleFamily::TL1,
        TriangleFamily::TL2,
        TriangleFamily::GouldHopper {
            r: int(2),
            s: int(1),
        },
    ]
}

#[test]
fn criterion_01_classical_triangle_fidelity() {
    let started = Instant::now();
    let pinned: [(TriangleFamily, &[((usize, usize), Rational)]); 2] = [
        (
            TriangleFamily::T2,
            &[
                ((6, 4), int(5)),
                ((4, 2), int(1)),
                ((3, 1), rat(1, 4)),
            ],
        ),
        (TriangleFamily::T1, &[((6, 4), int(-5)), ((6, 2), int(4))]),
    ];
    let mut ok = true;
    for (family, cases) in &pinned {
        let by_series = triangle_by_series(family, 6).expect("series route builds");
        let by_algebra = triangle_by_algebra(family, 6).expect("algebra route builds");
        for ((n, k), expected) in cases.iter() {
            ok &= by_series.entry(*n, *k) == *expected;
            ok &= by_algebra.entry(*n, *k) == *expected;
        }
    }
    let elapsed = started.elapsed();
    let in_budget = elapsed < Duration::from_secs(1);
    report(
        1,
        ok && in_budget,
        &format!(
            "T2(6,4)=5, T2(4,2)=1, T2(3,1)=1/4, T1(6,4)=-5, T1(6,2)=4 on both routes in \
             {elapsed:.2?}; note the entry at (6,4) is the number written T2(3,2)=5 in the \
             even-index convention that counts only even rows and columns"
        ),
    );
    assert!(ok, "a pinned classical entry disagreed");
    assert!(in_budget, "took {elapsed:.2?}, budget 1s");
}

#[test]
fn criterion_02_two_route_agreement_for_all_families() {
    let started = Instant::now();
    let mut checked = 0usize;
    for family in all_families() {
        let by_series = triangle_by_series(&family, 12).expect("series route builds");
        let by_algebra = triangle_by_algebra(&family, 12).expect("algebra route builds");
        assert_eq!(
            by_series.rows(),
            by_algebra.rows(),
            "routes disagree for {family}"
        );
        checked += 1;
    }
    let elapsed = started.elapsed();
    let in_budget = elapsed < Duration::from_secs(30);
    report(
        2,
        checked == 16 && in_budget,
        &format!(
            "series and recurrence routes agree entrywise for all {checked} triangle \
             families up to row 12 in {elapsed:.2?}"
        ),
    );
    assert_eq!(checked, 16);
    assert!(in_budget, "took {elapsed:.2?}, budget 30s");
}

#[test]
fn criterion_03_orthogonality_across_the_catalog() {
    let started = Instant::now();
    let units = catalog_units();
    for spec in &units {
        let check = check_orthogonality(spec, 12).expect("orthogonality check runs");
        assert!(check.passed(), "{spec}: {:?}", check.status);
    }
    let elapsed = started.elapsed();
    let in_budget = elapsed < Duration::from_secs(60);
    report(
        3,
        in_budget,
        &format!(
            "T1·T2 = T2·T1 = identity exactly for all {} sequence/parameter units up to \
             row 12, both multiplication orders, in {elapsed:.2?}",
            units.len()
        ),
    );
    assert!(in_budget, "took {elapsed:.2?}, budget 60s");
}

#[test]
fn criterion_04_inverse_relations_round_trip() {
    let units = catalog_units();
    for (index, spec) in units.iter().enumerate() {
        let check = check_inverse_relations(spec, 10, 100, 1000 + index as u64)
            .expect("inverse-relation check runs");
        assert!(check.passed(), "{spec}: {:?}", check.status);
    }
    report(
        4,
        true,
        &format!(
            "100 seeded random vectors per unit recover exactly through both the lower and \
             upper summation inversions for all {} units at n_max = 10",
            units.len()
        ),
    );
}

#[test]
fn criterion_05_second_kind_route_triple_agreement() {
    let defaults = CatalogParams::default();
    let mut checked = Vec::new();
    for (name, _) in CATALOG {
        let spec = catalog(name, &defaults).expect("catalog entry builds");
        if spec.pair(4).expect("pair probe").is_none() {
            continue; // no generating-function pair, so no genfunc route
        }
        let explicit = assoc_t2(&spec, 10, T2Route::Explicit, None).expect("explicit route");
        let derivative = assoc_t2(&spec, 10, T2Route::Derivative, None).expect("derivative route");
        let genfunc = assoc_t2(&spec, 10, T2Route::GenFunc, None).expect("genfunc route");
        assert_eq!(explicit.rows(), derivative.rows(), "{name}");
        assert_eq!(explicit.rows(), genfunc.rows(), "{name}");
        checked.push(*name);
    }
    report(
        5,
        checked.len() == 19,
        &format!(
            "explicit, derivative (Taylor at -k/2, half-integer points included), and \
             generating-function routes agree exactly up to row 10 for all {} pair-backed \
             sequences",
            checked.len()
        ),
    );
    assert_eq!(checked.len(), 19, "pair-backed catalog entries: {checked:?}");
}

#[test]
fn criterion_06_first_kind_route_agreement_and_transport_inverse() {
    let defaults = CatalogParams::default();
    let mut functional_checked = 0usize;
    let mut genfunc_checked = 0usize;
    for (name, _) in CATALOG {
        let spec = catalog(name, &defaults).expect("catalog entry builds");
        let Some(pair) = spec.pair(cfnum::default_order(10)).expect("pair probe") else {
            continue;
        };
        let solve = assoc_t1(&spec, 10, T1Route::Solve, None).expect("solve route");
        let functional = assoc_t1(&spec, 10, T1Route::Functional, None).expect("functional route");
        assert_eq!(solve.rows(), functional.rows(), "{name}");
        functional_checked += 1;
        if pair.g_is_one() {
            let genfunc = assoc_t1(&spec, 10, T1Route::GenFunc, None).expect("genfunc route");
            assert_eq!(solve.rows(), genfunc.rows(), "{name}");
            genfunc_checked += 1;
        }
    }

    // The central log/exp transports must invert each other to order 20 on
    // a spread of delta series: t itself, the degenerate exponential base,
    // 1 - e^{-t}, t/(t-1), and the central Lah base 4t/(4 - t²).
    let order = 20;
    let t = TruncatedSeries::t(order);
    let transports = [
        t.clone(),
        catalog("falling_lambda", &defaults)
            .unwrap()
            .pair(order)
            .unwrap()
            .unwrap()
            .f()
            .clone(),
        catalog("rising", &defaults)
            .unwrap()
            .pair(order)
            .unwrap()
            .unwrap()
            .f()
            .clone(),
        catalog("laguerre", &defaults)
            .unwrap()
            .pair(order)
            .unwrap()
            .unwrap()
            .f()
            .clone(),
        TriangleFamily::L2Central.base_series(order).unwrap(),
    ];
    for f in &transports {
        let roundtrip = central_exp(f)
            .expect("central exp")
            .compose(&central_log(f).expect("central log"))
            .expect("transports compose");
        assert_eq!(roundtrip, t, "transport roundtrip failed");
    }

    report(
        6,
        functional_checked == 19 && genfunc_checked == 14,
        &format!(
            "functional route matches solve on all {functional_checked} pair-backed \
             sequences, generating-function route matches on all {genfunc_checked} with \
             prefactor 1, and central exp∘log = id to order 20 on 5 delta series"
        ),
    );
    assert_eq!(functional_checked, 19);
    assert_eq!(genfunc_checked, 14);
}

#[test]
fn criterion_07_closed_forms_composition_identities_and_quadruple_sums() {
    let units = catalog_units();
    for spec in &units {
        for check in check_closed_forms(spec, 8).expect("closed-form check runs") {
            assert!(check.passed(), "{spec} {}: {:?}", check.id, check.status);
        }
    }

    // The mixed central-Lah triangles factor through the classical ones:
    // TL1 = L2C · T1 and TL2 = T2 · L1C as lower-triangular products.
    let product = |a: &[Vec<Rational>], b: &[Vec<Rational>]| -> Vec<Vec<Rational>> {
        (0..a.len())
            .map(|n| {
                (0..=n)
                    .map(|k| (k..=n).map(|l| &a[n][l] * &b[l][k]).sum())
                    .collect()
            })
            .collect()
    };
    let rows = |family: &TriangleFamily| triangle(family, 8).expect("triangle builds");
    let tl1 = rows(&TriangleFamily::TL1);
    let tl2 = rows(&TriangleFamily::TL2);
    let t1 = rows(&TriangleFamily::T1);
    let t2 = rows(&TriangleFamily::T2);
    let l1c = rows(&TriangleFamily::L1Central);
    let l2c = rows(&TriangleFamily::L2Central);
    assert_eq!(tl1.rows(), product(l2c.rows(), t1.rows()), "TL1 = L2C·T1");
    assert_eq!(tl2.rows(), product(t2.rows(), l1c.rows()), "TL2 = T2·L1C");

    let quads = check_quadruple_sums(6).expect("quadruple sums run");
    for check in &quads {
        assert!(
            check.passed(),
            "{} {}: {:?}",
            check.sequence,
            check.id,
            check.status
        );
    }

    report(
        7,
        true,
        &format!(
            "both closed forms match the computed triangles up to row 8 for all {} units, \
             the mixed central-Lah triangles factor as L2C·T1 and T2·L1C, and all {} \
             expanded quadruple-sum displays collapse to the identity up to row 6",
            units.len(),
            quads.len()
        ),
    );
}

#[test]
fn criterion_08_one_step_recurrences_fail_two_step_forms_hold() {
    // Expected first counterexamples at (n, k) = (2, 1): lhs/rhs of the
    // second-kind then first-kind one-step recurrence per sequence.
    let expected: [(&str, (Rational, Rational), (Rational, Rational)); 3] = [
        ("monomials", (int(0), rat(1, 2)), (int(0), rat(-1, 2))),
        ("bernoulli", (rat(-1, 2), int(0)), (rat(1, 2), int(0))),
        ("rising", (int(0), rat(1, 2)), (int(0), rat(-1, 2))),
    ];
    let defaults = CatalogParams::default();
    let mut as_documented = true;
    for (name, t2_sides, t1_sides) in &expected {
        let spec = catalog(name, &defaults).expect("catalog entry builds");
        let checks = check_recurrences(&spec, 8).expect("recurrence checks run");
        let by_id = |id: &str| -> &IdentityCheck {
            checks
                .iter()
                .find(|c| c.id == id)
                .unwrap_or_else(|| panic!("{id} missing"))
        };
        for (id, sides) in [("recurrence_t2", t2_sides), ("recurrence_t1", t1_sides)] {
            match &by_id(id).status {
                CheckStatus::Fail(w) => {
                    as_documented &= (w.n, w.k) == (2, 1)
                        && w.lhs == sides.0
                        && w.rhs == sides.1;
                }
                CheckStatus::Pass => as_documented = false,
            }
        }
        as_documented &= by_id("recurrence_t2_step2").passed();
        as_documented &= by_id("recurrence_t1_step2").passed();
    }
    report(
        8,
        false,
        "the one-step ladder recurrences are false as stated: multiplying the sequence by x \
         once cannot track the half-integer shift in the central factorials, and the first \
         counterexample sits at (n,k) = (2,1) for every sequence (monomials, second kind: \
         lhs 0 vs rhs 1/2). The two-step forms over x²·P with squared shift coefficients \
         hold exactly up to row 8 for monomials, Bernoulli, and rising factorials",
    );
    assert!(
        as_documented,
        "the recurrence failure moved away from the documented counterexample"
    );
}

#[test]
fn criterion_09_sum_rule_at_one() {
    let units = catalog_units();
    for spec in &units {
        let check = check_sum_rule(spec, 10).expect("sum-rule check runs");
        assert!(check.passed(), "{spec}: {:?}", check.status);
    }
    // Spot value at n = 3: (3/2)·(1/2) = 3/4.
    let spot = falling(&rat(3, 2), 2);
    assert_eq!(spot, rat(3, 4));
    report(
        9,
        true,
        &format!(
            "Σ_k T1(n,k;P)·p_k(1) = (n/2)_(n-1) for 1 ≤ n ≤ 10 across all {} units; the \
             n = 3 value is 3/4 as pinned",
            units.len()
        ),
    );
}

#[test]
fn criterion_10_bernoulli_product_solve_and_reconstruction() {
    let spec = catalog("bernoulli_product", &CatalogParams::default()).expect("entry builds");
    let t1 = assoc_t1(&spec, 8, T1Route::Solve, None).expect("solve route");
    assert_eq!(
        t1.rows()[2],
        vec![rat(11, 36), rat(1, 2), rat(1, 3)],
        "pinned row 2"
    );
    let polys = spec.polys(8).expect("product polynomials build");
    for n in 0..=8usize {
        let mut rebuilt = Polynomial::zero();
        for k in 0..=n {
            rebuilt = &rebuilt + &polys[k].scale(&t1.entry(n, k));
        }
        assert_eq!(rebuilt, Basis::Central.element(n), "row {n}");
    }
    report(
        10,
        true,
        "the Bernoulli-product solve reproduces row 2 = (11/36, 1/2, 1/3) and rebuilds \
         every central factorial x^[n] from the product sequence exactly for n ≤ 8",
    );
}

#[test]
fn criterion_11_series_engine_inverse_against_the_closed_form() {
    let order = 20;
    let t = TruncatedSeries::t(order);
    let root = (&(&t * &t) + &TruncatedSeries::constant(int(4), order))
        .sqrt_series()
        .expect("t² + 4 has an exact series square root");
    // Form one: 2·log((t + √(t²+4))/2).
    let form_one = (&t + &root)
        .scale(&rat(1, 2))
        .log_series()
        .expect("constant term is 1")
        .scale(&int(2));
    // Form two: log(1 + (t/2)·(t + √(t²+4))).
    let form_two = (&TruncatedSeries::one(order) + &(&t.scale(&rat(1, 2)) * &(&t + &root)))
        .log_series()
        .expect("constant term is 1");
    let inverse = two_sinh_half(order)
        .comp_inverse()
        .expect("2·sinh(t/2) is a delta series");
    assert_eq!(form_one, inverse, "closed form vs composed inverse");
    assert_eq!(form_one, form_two, "the two closed forms agree");
    report(
        11,
        true,
        "comp_inverse(2·sinh(t/2)) equals 2·log((t+√(t²+4))/2) to order 20, and the \
         equivalent form log(1 + (t/2)(t+√(t²+4))) matches it coefficient for coefficient",
    );
}

#[test]
fn criterion_12_full_verification_suite_run() {
    let started = Instant::now();
    let output = Command::new(env!("CARGO_BIN_EXE_cfnum"))
        .args(["verify", "--suite", "all", "--n", "8", "--seed", "42"])
        .env_remove("CFNUM_ORDER")
        .output()
        .expect("the cfnum binary should run");
    let elapsed = started.elapsed();
    let in_budget = elapsed < Duration::from_secs(120);
    let code = output.status.code();

    let report_doc: serde_json::Value =
        serde_json::from_slice(&output.stdout).expect("verify emits a JSON report");
    let checks = report_doc["checks"].as_array().expect("checks array");
    let failed: Vec<&serde_json::Value> = checks
        .iter()
        .filter(|c| c["status"] == "fail")
        .collect();
    let only_known_failures = failed.iter().all(|c| {
        let id = c["id"].as_str().unwrap_or("");
        (id == "recurrence_t1" || id == "recurrence_t2")
            && c["witness"]["n"] == 2
            && c["witness"]["k"] == 1
    });
    // 22 sequences + 7 λ = 1 reruns, one t1 + one t2 one-step check each.
    let expected_failures = failed.len() == 58;

    report(
        12,
        false,
        &format!(
            "`verify --suite all --n 8` finishes in {elapsed:.2?} (budget 120s) but exits \
             {code:?}, not 0: of {} checks, the {} one-step recurrence checks fail — all at \
             their universal counterexample (n,k) = (2,1) — and every other check passes; \
             exit 0 is unattainable without either weakening those checks or asserting a \
             false identity",
            checks.len(),
            failed.len(),
        ),
    );
    assert!(in_budget, "took {elapsed:.2?}, budget 120s");
    assert_eq!(code, Some(1), "honest reporting exits 1 while the one-step checks fail");
    assert!(only_known_failures, "an unexpected check failed: {failed:?}");
    assert!(expected_failures, "expected 58 one-step failures, got {}", failed.len());
    assert_eq!(report_doc["all_pass"], false);
}
