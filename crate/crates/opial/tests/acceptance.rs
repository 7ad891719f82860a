//! Acceptance gate: seven criteria with pinned tolerances. Each prints one
//! PASS/FAIL line; run with `cargo test --test acceptance -- --nocapture`.

use opial::accenter::{asymptotic_center, asymptotic_center_bruteforce, GridSpec};
use opial::cluster::{orthogonality_check, weak_clusters_proxy, DEFAULT_MERGE_RADIUS};
use opial::generators::{
    case_test_points, make_example, opial_limit_predictor, random_km_case, ExampleName,
};
use opial::hilbert::{distance, distance_trace, tail_limit_estimate, TailVerdict};
use opial::monotonicity::{classify, robbins_siegmund_check, SequenceClass, Status};
use opial::verify::run_suite;
use opial::{ConvexSet, SequencePrefix, Tolerance, Vector};

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "acceptance {criterion}: {} ({detail})",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "{criterion}: {detail}");
}

/// Criterion 1: exact traces and projections of the two-bump drift at
/// horizon 64, all within 1e-12.
#[test]
fn criterion_1_two_bump_exactness() {
    let case = make_example(ExampleName::TwoBumpDrift, 64, None).unwrap();
    let dim = case.seq.dim();
    let plane = case.set("hyperplane").unwrap();
    let cap = case.set("cap").unwrap();
    let sqrt2 = 2f64.sqrt();

    let mut max_err: f64 = 0.0;
    for (n, x) in case.seq.points().iter().enumerate() {
        let d_plane = plane.distance(x).unwrap();
        let want_plane = if n % 2 == 0 { 1.0 } else { 0.0 };
        max_err = max_err.max((d_plane - want_plane).abs());

        let d_cap = cap.distance(x).unwrap();
        let want_cap = if n % 2 == 0 { 1.0 } else { sqrt2 - 1.0 };
        max_err = max_err.max((d_cap - want_cap).abs());

        if n % 2 == 1 {
            let p = cap.project(x).unwrap().point;
            let want = Vector::unit(dim, 1)
                .add(&Vector::unit(dim, n + 1))
                .scale(1.0 / sqrt2);
            max_err = max_err.max(distance(&p, &want));
        }
    }
    report(
        "criterion 1 (two-bump traces and projections)",
        max_err <= 1e-12,
        &format!("max error {max_err:.3e}"),
    );
}

/// Criterion 2: weak-cluster difference orthogonality within 1e-9 on the
/// alternating-sign and two-bump examples.
#[test]
fn criterion_2_orthogonality() {
    let mut worst: f64 = 0.0;
    let mut ok = true;

    let alt = make_example(ExampleName::AlternatingSign, 64, None).unwrap();
    let weak = weak_clusters_proxy(&alt.seq, DEFAULT_MERGE_RADIUS).unwrap();
    let seg = alt.set("segment").unwrap();
    let samples = case_test_points(seg).unwrap();
    let r = orthogonality_check(&weak, seg, &samples, 1e-9).unwrap();
    ok &= r.pass && !r.degenerate;
    worst = worst.max(r.max_abs_inner);

    let bumps = make_example(ExampleName::TwoBumpDrift, 128, None).unwrap();
    let weak = weak_clusters_proxy(&bumps.seq, DEFAULT_MERGE_RADIUS).unwrap();
    let plane = bumps.set("hyperplane").unwrap();
    let samples = case_test_points(plane).unwrap();
    let r = orthogonality_check(&weak, plane, &samples, 1e-9).unwrap();
    ok &= r.pass && !r.degenerate;
    worst = worst.max(r.max_abs_inner);

    report(
        "criterion 2 (weak-cluster orthogonality)",
        ok && worst <= 1e-9,
        &format!("max |<w-w', c-c'>| = {worst:.3e}"),
    );
}

/// Criterion 3: solver vs brute-force oracle within 1e-4 on the alternating
/// sequence (two constraint sets), plus the centroid law for the escaping
/// basis within 1e-6.
#[test]
fn criterion_3_asymptotic_center_oracles() {
    let case = make_example(ExampleName::AlternatingSign, 64, None).unwrap();
    let mut worst: f64 = 0.0;

    // vertical axis {0} x R
    let axis = ConvexSet::affine_subspace(
        Vector(vec![0.0, 0.0]),
        vec![Vector(vec![0.0, 1.0])],
    )
    .unwrap();
    let solver = asymptotic_center(&case.seq, &axis, 1e-10).unwrap();
    let grid = GridSpec::new(vec![0.0, -1.5], vec![0.0, 1.5], 1e-3);
    let oracle = asymptotic_center_bruteforce(&case.seq, &axis, &grid).unwrap();
    worst = worst.max(distance(&solver.center, &oracle));

    // unconstrained
    let space = ConvexSet::whole_space(2);
    let solver = asymptotic_center(&case.seq, &space, 1e-10).unwrap();
    let grid = GridSpec::new(vec![-1.5, -1.5], vec![1.5, 1.5], 1e-3);
    let oracle = asymptotic_center_bruteforce(&case.seq, &space, &grid).unwrap();
    worst = worst.max(distance(&solver.center, &oracle));

    // centroid law: for the k escaping unit vectors the center is the
    // centroid, with norm 1/sqrt(k)
    let k = 64;
    let points: Vec<Vector> = (0..k).map(|n| Vector::unit(k, n)).collect();
    let seq = SequencePrefix::new(points, 0).unwrap();
    let res = asymptotic_center(&seq, &ConvexSet::whole_space(k), 1e-12).unwrap();
    let norm_err = (opial::hilbert::norm(&res.center) - 1.0 / (k as f64).sqrt()).abs();

    report(
        "criterion 3 (center solver vs oracles)",
        worst <= 1e-4 && norm_err <= 1e-6,
        &format!("max grid deviation {worst:.3e}, centroid-norm error {norm_err:.3e}"),
    );
}

/// Criterion 4: hierarchy consistency on 200 seeded iteration cases, and
/// the interleaved-decay verdict pattern with its excess trace.
#[test]
fn criterion_4_classifier_hierarchy() {
    let tol = Tolerance::default();
    let mut violations = Vec::new();
    for seed in 0..200u64 {
        let case = random_km_case(seed).unwrap();
        let set = case.set("fix").unwrap();
        let points = case_test_points(set).unwrap();
        let rep = classify(&case.seq, &points, tol).unwrap();
        let fejer = rep.status(SequenceClass::Fejer).holds();
        if fejer {
            // Fejér at every step forces the whole chain
            let chain_ok = rep.status(SequenceClass::FejerStar).holds()
                && rep.status(SequenceClass::QuasiFejerI).holds()
                && rep.status(SequenceClass::QuasiFejerII).holds()
                && rep.status(SequenceClass::QuasiFejerIII).holds()
                && !rep.status(SequenceClass::Opial).fails();
            if !chain_ok {
                violations.push(seed);
            }
        } else if rep.status(SequenceClass::FejerStar).holds()
            && rep.status(SequenceClass::Fejer).fails()
        {
            // Fejér* holding with Fejér failing is consistent; nothing to do
        }
        // a failing Opial verdict together with a holding Fejér one would
        // contradict the hierarchy; covered by chain_ok above
    }

    let case = make_example(ExampleName::InterleavedDecay, 128, None).unwrap();
    let points = case_test_points(case.set("origin").unwrap()).unwrap();
    let rep = classify(&case.seq, &points, tol).unwrap();
    let opial_ok = rep.status(SequenceClass::Opial).holds();
    let fejer_ok = match rep.status(SequenceClass::Fejer) {
        Status::Fails { witness } => {
            let trace = distance_trace(&case.seq, &witness.test_point).unwrap();
            trace[witness.index + 1] > trace[witness.index] && witness.magnitude > 0.0
        }
        _ => false,
    };
    let quasi_ok = [
        SequenceClass::QuasiFejerI,
        SequenceClass::QuasiFejerII,
        SequenceClass::QuasiFejerIII,
    ]
    .iter()
    .all(|c| !rep.status(*c).holds());
    // the shared plain excess trace carries the 1/sqrt(k) bumps
    let trace = rep
        .verdict(SequenceClass::QuasiFejerI)
        .excess_trace
        .as_ref()
        .unwrap();
    let trace_ok = (0..20).all(|k| {
        (trace[2 * k] - 1.0 / ((k + 1) as f64).sqrt()).abs() <= 1e-12
    });

    report(
        "criterion 4 (hierarchy + interleaved-decay verdicts)",
        violations.is_empty() && opial_ok && fejer_ok && quasi_ok && trace_ok,
        &format!(
            "{} seed violations; opial {opial_ok}, fejer-witness {fejer_ok}, quasi {quasi_ok}, trace {trace_ok}",
            violations.len()
        ),
    );
}

/// Criterion 5: the affine-combination limit predictor matches empirical
/// tail limits within 1e-6 on at least 20 combinations.
#[test]
fn criterion_5_limit_predictor() {
    let tol = Tolerance::default();
    let mut combos_checked = 0usize;
    let mut worst: f64 = 0.0;

    // alternating sign: points on the axis of symmetry have exact limits
    let alt = make_example(ExampleName::AlternatingSign, 64, None).unwrap();
    let heights = [-1.0, -0.5, -0.25, 0.0, 0.4, 0.8, 1.3];
    for (i, &a) in heights.iter().enumerate() {
        for &b in heights.iter().skip(i + 1) {
            for lambda in [0.25, 0.5, 0.75] {
                let c1 = Vector(vec![0.0, a]);
                let c2 = Vector(vec![0.0, b]);
                let combined = c1.scale(lambda).axpy(1.0 - lambda, &c2);
                let predicted = opial_limit_predictor(
                    &alt.seq,
                    &[(lambda, c1), (1.0 - lambda, c2)],
                    tol,
                )
                .unwrap();
                let trace = distance_trace(&alt.seq, &combined).unwrap();
                let measured =
                    match tail_limit_estimate(&trace, alt.seq.tail_start(), tol).unwrap() {
                        TailVerdict::Converges { limit } => limit,
                        other => panic!("combined point must converge, got {other:?}"),
                    };
                worst = worst.max((predicted.limit - measured).abs());
                combos_checked += 1;
            }
        }
    }

    // two-bump drift: low-support points inside the hyperplane
    let bumps = make_example(ExampleName::TwoBumpDrift, 128, None).unwrap();
    let dim = bumps.seq.dim();
    let anchors = [
        Vector::unit(dim, 1),
        Vector::unit(dim, 1).scale(0.5),
        Vector::unit(dim, 1).add(&Vector::unit(dim, 2).scale(0.3)),
        Vector::unit(dim, 3).scale(-0.7),
    ];
    for (i, c1) in anchors.iter().enumerate() {
        for c2 in anchors.iter().skip(i + 1) {
            let lambda = 0.5;
            let combined = c1.scale(lambda).axpy(1.0 - lambda, c2);
            let predicted = opial_limit_predictor(
                &bumps.seq,
                &[(lambda, c1.clone()), (1.0 - lambda, c2.clone())],
                tol,
            )
            .unwrap();
            let trace = distance_trace(&bumps.seq, &combined).unwrap();
            let measured =
                match tail_limit_estimate(&trace, bumps.seq.tail_start(), tol).unwrap() {
                    TailVerdict::Converges { limit } => limit,
                    other => panic!("combined point must converge, got {other:?}"),
                };
            worst = worst.max((predicted.limit - measured).abs());
            combos_checked += 1;
        }
    }

    report(
        "criterion 5 (affine-combination limit predictor)",
        combos_checked >= 20 && worst <= 1e-6,
        &format!("{combos_checked} combinations, max deviation {worst:.3e}"),
    );
}

/// Criterion 6: the full scenario suite passes and is deterministic across
/// two runs.
#[test]
fn criterion_6_verify_suite() {
    let first = run_suite(None).unwrap();
    let second = run_suite(None).unwrap();
    let all_pass = first.all_passed();
    let deterministic = first == second;
    let count = first.scenarios.len();
    report(
        "criterion 6 (verification suite)",
        all_pass && deterministic && count == opial::verify::SCENARIO_IDS.len(),
        &format!(
            "{count} scenarios, failures: {:?}, deterministic: {deterministic}",
            first.failed_ids()
        ),
    );
}

/// Criterion 7: the geometric almost-supermartingale instance.
#[test]
fn criterion_7_robbins_siegmund() {
    let n = 96;
    let delta: Vec<f64> = (0..n).map(|k| 0.5f64.powi(k as i32)).collect();
    let eps = delta.clone();
    let beta: Vec<f64> = (0..n).map(|k| 0.5f64.powi(k as i32 + 1)).collect();
    let mut alpha = vec![1.0f64];
    for k in 0..n - 1 {
        alpha.push((1.0 + delta[k]) * alpha[k] - beta[k] + eps[k]);
    }
    let rep = robbins_siegmund_check(
        &alpha,
        &beta,
        &delta,
        &eps,
        Tolerance::new(1e-9, 1e-9).unwrap(),
    )
    .unwrap();
    let alpha_converges = matches!(rep.alpha_verdict, TailVerdict::Converges { .. });
    report(
        "criterion 7 (almost-supermartingale recursion)",
        rep.inequality_holds_all_n && alpha_converges && rep.beta_sum_bounded,
        &format!(
            "inequality {}, alpha {:?}, sum beta {:.6} <= {:.6}",
            rep.inequality_holds_all_n, rep.alpha_verdict, rep.beta_sum, rep.beta_bound
        ),
    );
}
