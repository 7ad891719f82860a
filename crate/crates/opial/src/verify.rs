//! Scenario harness: each scenario instantiates one structural statement
//! about the monotonicity hierarchy on concrete finite truncations and
//! checks its observable consequences. Counterexample scenarios assert that
//! a tempting stronger statement visibly breaks.

use serde::{Deserialize, Serialize};

use crate::accenter::subsequence_center_invariance;
use crate::cluster::{
    orthogonality_check, strong_clusters, weak_clusters_proxy, DEFAULT_MERGE_RADIUS,
};
use crate::error::Result;
use crate::generators::{
    case_test_points, km_iteration, make_example, ExampleName, NonexpansiveMapSpec,
};
use crate::hilbert::{
    distance, distance_trace, is_nonincreasing, norm, tail_limit_estimate, SequencePrefix,
    TailVerdict, Tolerance, Vector,
};
use crate::monotonicity::{
    classify, finite_length, robbins_siegmund_check, SequenceClass, SummabilityVerdict,
};
use crate::sets::ConvexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    /// The scenario checks consequences of a law on instances satisfying
    /// its hypotheses.
    Law,
    /// The scenario checks that a plausible strengthening fails on a
    /// specific instance; "pass" means the failure is reproduced.
    ExpectedCounterexample,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub key: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(key: &str, passed: bool, detail: impl Into<String>) -> Self {
        CheckResult {
            key: key.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub id: String,
    pub kind: ScenarioKind,
    pub description: String,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub scenarios: Vec<ScenarioReport>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.scenarios.iter().all(|s| s.passed)
    }

    pub fn failed_ids(&self) -> Vec<&str> {
        self.scenarios
            .iter()
            .filter(|s| !s.passed)
            .map(|s| s.id.as_str())
            .collect()
    }

    /// Markdown table mapping each scenario to its statement and outcome.
    pub fn traceability_matrix(&self) -> String {
        let mut out = String::from("| scenario | kind | statement | status |\n|---|---|---|---|\n");
        for s in &self.scenarios {
            let kind = match s.kind {
                ScenarioKind::Law => "law",
                ScenarioKind::ExpectedCounterexample => "counterexample",
            };
            let status = if s.passed { "pass" } else { "FAIL" };
            out.push_str(&format!(
                "| {} | {} | {} | {} |\n",
                s.id, kind, s.description, status
            ));
        }
        out
    }
}

struct Scenario {
    id: &'static str,
    kind: ScenarioKind,
    description: &'static str,
    run: fn() -> Result<Vec<CheckResult>>,
}

/// Identifiers of every scenario, in execution order. Kept explicit so the
/// coverage test can diff it against the registry.
pub const SCENARIO_IDS: [&str; 18] = [
    "fejer_bounded_and_distance_monotone",
    "weak_cluster_orthogonality",
    "weak_convergence_from_fejer_plus_cluster_location",
    "weakly_null_without_opial",
    "strong_convergence_from_strong_cluster",
    "opial_extends_to_affine_hull",
    "affine_hull_enlargement_is_sharp",
    "opial_wrt_whole_space_contrast",
    "norm_convergence_upgrades_weak_to_strong",
    "finite_dimension_weak_equals_strong",
    "vanishing_set_distance_gives_limit_in_set",
    "projected_iterates_cluster_inside_set",
    "recurrent_clusters_attract_the_tail",
    "affine_projections_of_drift_settle",
    "projection_onto_curved_set_can_oscillate",
    "projection_limit_without_sequence_limit",
    "robbins_siegmund_recursion",
    "path_length_dichotomy",
];

fn registry() -> Vec<Scenario> {
    vec![
        Scenario {
            id: "fejer_bounded_and_distance_monotone",
            kind: ScenarioKind::Law,
            description: "Fejér monotone iterates keep every distance trace \
                          nonincreasing and bounded by its initial value",
            run: scenario_fejer_bounded,
        },
        Scenario {
            id: "weak_cluster_orthogonality",
            kind: ScenarioKind::Law,
            description: "differences of weak cluster points are orthogonal \
                          to differences of target-set elements",
            run: scenario_orthogonality,
        },
        Scenario {
            id: "weak_convergence_from_fejer_plus_cluster_location",
            kind: ScenarioKind::Law,
            description: "Fejér monotone + all weak clusters inside the set \
                          forces a unique weak cluster point",
            run: scenario_weak_convergence,
        },
        Scenario {
            id: "weakly_null_without_opial",
            kind: ScenarioKind::ExpectedCounterexample,
            description: "a weakly null sequence whose distance trace to the \
                          origin refuses to converge",
            run: scenario_weakly_null_not_opial,
        },
        Scenario {
            id: "strong_convergence_from_strong_cluster",
            kind: ScenarioKind::Law,
            description: "Fejér monotone + one strong cluster point in the \
                          set implies strong convergence to it",
            run: scenario_strong_convergence,
        },
        Scenario {
            id: "opial_extends_to_affine_hull",
            kind: ScenarioKind::Law,
            description: "convergence of distance traces survives enlarging \
                          the set to its affine hull",
            run: scenario_affine_hull,
        },
        Scenario {
            id: "affine_hull_enlargement_is_sharp",
            kind: ScenarioKind::ExpectedCounterexample,
            description: "one probe point beyond the affine hull already \
                          breaks the distance-trace convergence",
            run: scenario_affine_hull_sharp,
        },
        Scenario {
            id: "opial_wrt_whole_space_contrast",
            kind: ScenarioKind::Law,
            description: "distance traces can converge at every point of the \
                          space for one drift and fail for another",
            run: scenario_whole_space_contrast,
        },
        Scenario {
            id: "norm_convergence_upgrades_weak_to_strong",
            kind: ScenarioKind::Law,
            description: "weak-proxy limit plus norm convergence yields a \
                          strong limit",
            run: scenario_radon_riesz,
        },
        Scenario {
            id: "finite_dimension_weak_equals_strong",
            kind: ScenarioKind::Law,
            description: "for genuinely finite-dimensional sequences the weak \
                          proxy adds nothing beyond the strong clusters",
            run: scenario_finite_dim,
        },
        Scenario {
            id: "vanishing_set_distance_gives_limit_in_set",
            kind: ScenarioKind::Law,
            description: "Fejér monotone + distance to the set tending to 0 \
                          gives a strong limit inside the set",
            run: scenario_vanishing_distance,
        },
        Scenario {
            id: "projected_iterates_cluster_inside_set",
            kind: ScenarioKind::Law,
            description: "strong clusters of the projected iterates always \
                          lie in the set",
            run: scenario_projected_clusters,
        },
        Scenario {
            id: "recurrent_clusters_attract_the_tail",
            kind: ScenarioKind::Law,
            description: "distance from the tail to the strong-cluster set \
                          collapses when the clusters are recurrent",
            run: scenario_cluster_attraction,
        },
        Scenario {
            id: "affine_projections_of_drift_settle",
            kind: ScenarioKind::Law,
            description: "projecting the two-bump drift onto the hyperplane \
                          leaves a sequence with a single weak-proxy limit",
            run: scenario_affine_projection_settles,
        },
        Scenario {
            id: "projection_onto_curved_set_can_oscillate",
            kind: ScenarioKind::ExpectedCounterexample,
            description: "projections of the two-bump drift onto the capped \
                          ball keep two weak-proxy points and an oscillating \
                          distance trace",
            run: scenario_curved_projection_oscillates,
        },
        Scenario {
            id: "projection_limit_without_sequence_limit",
            kind: ScenarioKind::ExpectedCounterexample,
            description: "projections onto a line converge although the \
                          sequence itself keeps two separated clusters",
            run: scenario_projection_limit_only,
        },
        Scenario {
            id: "robbins_siegmund_recursion",
            kind: ScenarioKind::Law,
            description: "the almost-supermartingale recursion forces alpha \
                          to settle and bounds the beta mass",
            run: scenario_robbins_siegmund,
        },
        Scenario {
            id: "path_length_dichotomy",
            kind: ScenarioKind::Law,
            description: "geometric iterates have summable increments while \
                          the escaping drift does not",
            run: scenario_path_length,
        },
    ]
}

const SOLVER_TOL: f64 = 1e-8;

// long enough that the tail norms fall well below the cluster radii used
// by the convergence scenarios (contraction factor ~0.94 per step)
fn rotation_case() -> Result<crate::generators::GeneratedCase> {
    km_iteration(
        &NonexpansiveMapSpec::Rotation { angle: 0.7 },
        &Vector(vec![1.5, -0.5]),
        0.5,
        512,
    )
}

fn halfspace_pipeline_case() -> Result<crate::generators::GeneratedCase> {
    let a = ConvexSet::halfspace(Vector(vec![1.0, 0.0]), 0.0)?;
    let b = ConvexSet::halfspace(Vector(vec![0.0, 1.0]), 0.0)?;
    km_iteration(
        &NonexpansiveMapSpec::ProjectionComposition { sets: vec![a, b] },
        &Vector(vec![3.0, 2.0]),
        1.0,
        64,
    )
}

fn scenario_fejer_bounded() -> Result<Vec<CheckResult>> {
    let tol = Tolerance::default();
    let mut checks = Vec::new();
    for (label, case) in [
        ("rotation", rotation_case()?),
        ("halfspace_pipeline", halfspace_pipeline_case()?),
    ] {
        let set = case.set("fix")?;
        let points = case_test_points(set)?;
        let rep = classify(&case.seq, &points, tol)?;
        checks.push(CheckResult::new(
            &format!("{label}.fejer_holds"),
            rep.status(SequenceClass::Fejer).holds(),
            "pointwise inequality at every step",
        ));
        let mut monotone = true;
        let mut bounded = true;
        for c in &points {
            let trace = distance_trace(&case.seq, c)?;
            monotone &= is_nonincreasing(&trace, tol);
            bounded &= trace.iter().all(|&d| d <= trace[0] + tol.at(trace[0]));
        }
        checks.push(CheckResult::new(
            &format!("{label}.traces_nonincreasing"),
            monotone,
            "every distance trace is nonincreasing",
        ));
        checks.push(CheckResult::new(
            &format!("{label}.traces_bounded_by_initial"),
            bounded,
            "every distance trace stays below its first value",
        ));
        // distance to the set itself inherits the monotonicity
        let d_set: Vec<f64> = case
            .seq
            .points()
            .iter()
            .map(|x| set.distance(x))
            .collect::<Result<_>>()?;
        checks.push(CheckResult::new(
            &format!("{label}.set_distance_nonincreasing"),
            is_nonincreasing(&d_set, tol),
            "d_C(x_n) is nonincreasing",
        ));
    }
    Ok(checks)
}

fn scenario_orthogonality() -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();
    // two-bump drift against both the hyperplane and the capped ball
    let case = make_example(ExampleName::TwoBumpDrift, 128, None)?;
    let weak = weak_clusters_proxy(&case.seq, DEFAULT_MERGE_RADIUS)?;
    checks.push(CheckResult::new(
        "two_bump.weak_count",
        weak.len() == 2,
        format!("expected 2 weak-proxy points, found {}", weak.len()),
    ));
    for set_name in ["hyperplane", "cap"] {
        let set = case.set(set_name)?;
        let samples = case_test_points(set)?;
        let rep = orthogonality_check(&weak, set, &samples, 1e-9)?;
        checks.push(CheckResult::new(
            &format!("two_bump.{set_name}.orthogonal"),
            rep.pass && !rep.degenerate,
            format!("max |<w−w', c−c'>| = {:.3e}", rep.max_abs_inner),
        ));
    }
    // alternating-sign example against its segment
    let alt = make_example(ExampleName::AlternatingSign, 64, None)?;
    let weak_alt = weak_clusters_proxy(&alt.seq, DEFAULT_MERGE_RADIUS)?;
    let seg = alt.set("segment")?;
    let samples = case_test_points(seg)?;
    let rep = orthogonality_check(&weak_alt, seg, &samples, 1e-9)?;
    checks.push(CheckResult::new(
        "alternating.orthogonal",
        rep.pass,
        format!("max |<w−w', c−c'>| = {:.3e}", rep.max_abs_inner),
    ));
    Ok(checks)
}

fn scenario_weak_convergence() -> Result<Vec<CheckResult>> {
    // Fejér iterates in the plane: all weak clusters (here: strong, finite
    // dimension) lie in the fixed set, so there is exactly one of them.
    let case = rotation_case()?;
    let weak = weak_clusters_proxy(&case.seq, 1e-4)?;
    let set = case.set("fix")?;
    let mut checks = vec![CheckResult::new(
        "unique_weak_cluster",
        weak.len() == 1,
        format!("found {} weak-proxy points", weak.len()),
    )];
    let inside = weak
        .iter()
        .map(|w| set.distance(w))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|d| d <= 1e-6);
    checks.push(CheckResult::new(
        "clusters_inside_set",
        inside,
        "every weak-proxy point lies in the fixed set",
    ));
    Ok(checks)
}

fn scenario_weakly_null_not_opial() -> Result<Vec<CheckResult>> {
    let case = make_example(ExampleName::UnitVectorWithGaps, 256, None)?;
    let weak = weak_clusters_proxy(&case.seq, DEFAULT_MERGE_RADIUS)?;
    let zero = Vector::zeros(case.seq.dim());
    let mut checks = vec![CheckResult::new(
        "weakly_null",
        weak.len() == 1 && distance(&weak[0], &zero) <= 1e-9,
        "the only weak-proxy point is the origin",
    )];
    // yet ‖x_n − 0‖ alternates between 1 and 0 forever
    let rep = classify(&case.seq, std::slice::from_ref(&zero), Tolerance::default())?;
    checks.push(CheckResult::new(
        "distance_trace_to_origin_diverges",
        rep.status(SequenceClass::Opial).fails(),
        "the trace oscillates between 0 and 1 without settling",
    ));
    Ok(checks)
}

fn scenario_strong_convergence() -> Result<Vec<CheckResult>> {
    let case = rotation_case()?;
    let strong = strong_clusters(&case.seq, 1e-3)?;
    let set = case.set("fix")?;
    let mut checks = vec![CheckResult::new(
        "single_strong_cluster",
        strong.len() == 1,
        format!("found {} strong clusters", strong.len()),
    )];
    if let Some(limit) = strong.first() {
        checks.push(CheckResult::new(
            "cluster_in_set",
            set.distance(limit)? <= 1e-6,
            "the strong cluster lies in the fixed set",
        ));
        let trace = distance_trace(&case.seq, limit)?;
        let verdict = tail_limit_estimate(&trace, case.seq.tail_start(), Tolerance::new(1e-3, 1e-3)?)?;
        let to_zero = matches!(verdict, TailVerdict::Converges { limit } if limit <= 1e-3);
        checks.push(CheckResult::new(
            "distance_to_cluster_vanishes",
            to_zero,
            format!("tail verdict {verdict:?}"),
        ));
    }
    Ok(checks)
}

fn scenario_affine_hull() -> Result<Vec<CheckResult>> {
    let case = make_example(ExampleName::AlternatingSign, 64, None)?;
    let tol = Tolerance::default();
    let mut checks = Vec::new();
    for set_name in ["segment", "hull"] {
        let points = case_test_points(case.set(set_name)?)?;
        let rep = classify(&case.seq, &points, tol)?;
        checks.push(CheckResult::new(
            &format!("opial_wrt_{set_name}"),
            !rep.status(SequenceClass::Opial).fails(),
            "distance traces converge on sampled points",
        ));
    }
    // the hull really is larger: it contains points outside the segment
    let hull = case.set("hull")?;
    let tall = Vector(vec![0.0, 5.0]);
    checks.push(CheckResult::new(
        "hull_strictly_larger",
        hull.contains(&tall, 1e-9)? && !case.set("segment")?.contains(&tall, 1e-9)?,
        "(0,5) lies in the hull but not in the segment",
    ));
    Ok(checks)
}

fn scenario_affine_hull_sharp() -> Result<Vec<CheckResult>> {
    let case = make_example(ExampleName::AlternatingSign, 64, None)?;
    let probe = Vector(vec![0.5, 0.0]);
    let hull = case.set("hull")?;
    let mut checks = vec![CheckResult::new(
        "probe_outside_hull",
        !hull.contains(&probe, 1e-9)?,
        "the probe leaves the affine hull",
    )];
    let rep = classify(&case.seq, std::slice::from_ref(&probe), Tolerance::default())?;
    checks.push(CheckResult::new(
        "probe_breaks_convergence",
        rep.status(SequenceClass::Opial).fails(),
        "the distance trace to the probe keeps oscillating",
    ));
    Ok(checks)
}

fn scenario_whole_space_contrast() -> Result<Vec<CheckResult>> {
    let tol = Tolerance::default();
    let drift = make_example(ExampleName::UnitVectorDrift, 256, None)?;
    let points = case_test_points(drift.set("space")?)?;
    let rep = classify(&drift.seq, &points, tol)?;
    let mut checks = vec![CheckResult::new(
        "escaping_basis_is_opial_everywhere",
        !rep.status(SequenceClass::Opial).fails(),
        "‖e_n − c‖ settles for every sampled c",
    )];
    let bumps = make_example(ExampleName::TwoBumpDrift, 256, None)?;
    let points = case_test_points(bumps.set("space")?)?;
    let rep = classify(&bumps.seq, &points, tol)?;
    checks.push(CheckResult::new(
        "two_bump_drift_is_not",
        rep.status(SequenceClass::Opial).fails(),
        "some sampled c sees a persistently oscillating trace",
    ));
    Ok(checks)
}

fn scenario_radon_riesz() -> Result<Vec<CheckResult>> {
    // long horizon: the norm envelope 1/sqrt(k) must sink below the cluster
    // radius within the declared tail
    let case = make_example(ExampleName::InterleavedDecay, 1600, None)?;
    let norms: Vec<f64> = case.seq.points().iter().map(norm).collect();
    // the norms oscillate with a shrinking envelope, so the trend test is
    // the right convergence reading
    let trend = crate::hilbert::tail_trend(&norms, case.seq.tail_start(), Tolerance::default())?;
    let mut checks = vec![CheckResult::new(
        "norms_converge",
        matches!(trend, crate::hilbert::TrendVerdict::Converging { .. }),
        format!("‖x_n‖ trend {trend:?}"),
    )];
    let strong = strong_clusters(&case.seq, 0.05)?;
    checks.push(CheckResult::new(
        "strong_limit_is_weak_limit",
        strong.len() == 1 && norm(&strong[0]) <= 0.05,
        "the strong cluster coincides with the weak-proxy limit 0",
    ));
    Ok(checks)
}

fn scenario_finite_dim() -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();
    for name in [ExampleName::AlternatingSign, ExampleName::ShrinkingOscillation] {
        let case = make_example(name, 128, None)?;
        let weak = weak_clusters_proxy(&case.seq, 1e-2)?;
        let strong = strong_clusters(&case.seq, 1e-2)?;
        let covered = weak
            .iter()
            .all(|w| strong.iter().any(|s| distance(w, s) <= 1e-2));
        checks.push(CheckResult::new(
            &format!("{}.weak_subset_strong", case.name),
            covered && !weak.is_empty(),
            format!("{} weak vs {} strong", weak.len(), strong.len()),
        ));
    }
    Ok(checks)
}

fn scenario_vanishing_distance() -> Result<Vec<CheckResult>> {
    let case = halfspace_pipeline_case()?;
    let set = case.set("fix")?;
    let d_set: Vec<f64> = case
        .seq
        .points()
        .iter()
        .map(|x| set.distance(x))
        .collect::<Result<_>>()?;
    let verdict = tail_limit_estimate(&d_set, case.seq.tail_start(), Tolerance::new(1e-6, 1e-6)?)?;
    let vanishes = matches!(verdict, TailVerdict::Converges { limit } if limit <= 1e-6);
    let mut checks = vec![CheckResult::new(
        "set_distance_vanishes",
        vanishes,
        format!("d_C(x_n) verdict {verdict:?}"),
    )];
    let strong = strong_clusters(&case.seq, 1e-4)?;
    let limit_in_set = strong.len() == 1 && set.distance(&strong[0])? <= 1e-4;
    checks.push(CheckResult::new(
        "limit_lies_in_set",
        limit_in_set,
        "the single strong cluster belongs to the set",
    ));
    Ok(checks)
}

fn scenario_projected_clusters() -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();
    for (label, case, set_name) in [
        ("rotation", rotation_case()?, "fix"),
        (
            "two_bump",
            make_example(ExampleName::TwoBumpDrift, 128, None)?,
            "cap",
        ),
    ] {
        let set = case.set(set_name)?;
        let projected: Vec<Vector> = case
            .seq
            .points()
            .iter()
            .map(|x| Ok(set.project(x)?.point))
            .collect::<Result<_>>()?;
        let pseq = SequencePrefix::new(projected, case.seq.tail_start())?;
        let strong = strong_clusters(&pseq, 1e-4)?;
        let all_inside = strong
            .iter()
            .map(|s| set.distance(s))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .all(|d| d <= 1e-6);
        checks.push(CheckResult::new(
            &format!("{label}.projected_clusters_in_set"),
            all_inside && !strong.is_empty(),
            format!("{} projected clusters, all inside", strong.len()),
        ));
    }
    Ok(checks)
}

fn scenario_cluster_attraction() -> Result<Vec<CheckResult>> {
    let case = make_example(ExampleName::AlternatingSign, 128, None)?;
    let strong = strong_clusters(&case.seq, DEFAULT_MERGE_RADIUS)?;
    let mut checks = vec![CheckResult::new(
        "two_recurrent_clusters",
        strong.len() == 2,
        format!("found {}", strong.len()),
    )];
    // distance from each tail point to the nearest cluster
    let max_gap = case
        .seq
        .tail()
        .iter()
        .map(|x| {
            strong
                .iter()
                .map(|s| distance(x, s))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0f64, f64::max);
    checks.push(CheckResult::new(
        "tail_within_cluster_set",
        max_gap <= 1e-9,
        format!("max tail distance to the cluster set = {max_gap:.3e}"),
    ));
    Ok(checks)
}

fn scenario_affine_projection_settles() -> Result<Vec<CheckResult>> {
    let case = make_example(ExampleName::TwoBumpDrift, 256, None)?;
    let plane = case.set("hyperplane")?;
    let projected: Vec<Vector> = case
        .seq
        .points()
        .iter()
        .map(|x| Ok(plane.project(x)?.point))
        .collect::<Result<_>>()?;
    let pseq = SequencePrefix::new(projected, case.seq.tail_start())?;
    let weak = weak_clusters_proxy(&pseq, DEFAULT_MERGE_RADIUS)?;
    let e1 = Vector::unit(case.seq.dim(), 1);
    Ok(vec![CheckResult::new(
        "projected_weak_limit_is_e1",
        weak.len() == 1 && distance(&weak[0], &e1) <= 1e-9,
        format!("{} weak-proxy points for the projected drift", weak.len()),
    )])
}

fn scenario_curved_projection_oscillates() -> Result<Vec<CheckResult>> {
    // contrast with the affine case: the same drift projected onto the
    // curved set never settles, weakly or strongly
    let case = make_example(ExampleName::TwoBumpDrift, 256, None)?;
    let cap = case.set("cap")?;
    let projected: Vec<Vector> = case
        .seq
        .points()
        .iter()
        .map(|x| Ok(cap.project(x)?.point))
        .collect::<Result<_>>()?;
    let pseq = SequencePrefix::new(projected, case.seq.tail_start())?;
    let dim = case.seq.dim();
    let e1 = Vector::unit(dim, 1);
    let weak = weak_clusters_proxy(&pseq, DEFAULT_MERGE_RADIUS)?;
    let has_both = weak.iter().any(|w| distance(w, &e1) <= 1e-9)
        && weak
            .iter()
            .any(|w| distance(w, &e1.scale(1.0 / 2f64.sqrt())) <= 1e-9);
    let mut checks = vec![CheckResult::new(
        "two_weak_proxy_points",
        weak.len() == 2 && has_both,
        format!("{} weak-proxy points for the projected drift", weak.len()),
    )];
    // the trace to the even-step value e_1 oscillates with a fixed gap
    let rep = classify(&pseq, std::slice::from_ref(&e1), Tolerance::default())?;
    checks.push(CheckResult::new(
        "distance_trace_oscillates",
        rep.status(SequenceClass::Opial).fails(),
        "‖P(x_n) − e_1‖ alternates between 0 and a fixed positive value",
    ));
    Ok(checks)
}

fn scenario_projection_limit_only() -> Result<Vec<CheckResult>> {
    let case = make_example(ExampleName::ShrinkingOscillation, 256, None)?;
    let axis = case.set("axis")?;
    let projected: Vec<Vector> = case
        .seq
        .points()
        .iter()
        .map(|x| Ok(axis.project(x)?.point))
        .collect::<Result<_>>()?;
    let pseq = SequencePrefix::new(projected, case.seq.tail_start())?;
    let strong = strong_clusters(&pseq, 1e-2)?;
    let origin = Vector(vec![0.0, 0.0]);
    let mut checks = vec![CheckResult::new(
        "projections_converge_to_origin",
        strong.len() == 1 && distance(&strong[0], &origin) <= 1e-2,
        "P(x_n) has the single strong cluster (0,0)",
    )];
    // the projected limit is far from the projection of the first point
    let p0 = axis.project(&case.seq.points()[0])?.point;
    checks.push(CheckResult::new(
        "limit_differs_from_projected_start",
        distance(&p0, &origin) > 0.5,
        format!("‖P(x_0) − lim P(x_n)‖ = {:.3}", distance(&p0, &origin)),
    ));
    // while the sequence itself keeps two separated clusters
    let strong_orig = strong_clusters(&case.seq, 1e-1)?;
    checks.push(CheckResult::new(
        "sequence_itself_does_not_converge",
        strong_orig.len() == 2,
        format!("{} strong clusters in the unprojected sequence", strong_orig.len()),
    ));
    Ok(checks)
}

fn scenario_robbins_siegmund() -> Result<Vec<CheckResult>> {
    let n = 96;
    let delta: Vec<f64> = (0..n).map(|k| 0.5f64.powi(k as i32)).collect();
    let eps = delta.clone();
    let beta: Vec<f64> = (0..n).map(|k| 0.5f64.powi(k as i32 + 1)).collect();
    let mut alpha = vec![1.0f64];
    for k in 0..n - 1 {
        alpha.push((1.0 + delta[k]) * alpha[k] - beta[k] + eps[k]);
    }
    let rep = robbins_siegmund_check(&alpha, &beta, &delta, &eps, Tolerance::default())?;
    Ok(vec![
        CheckResult::new(
            "inequality_holds",
            rep.inequality_holds_all_n,
            "the recursion holds at every step",
        ),
        CheckResult::new(
            "alpha_settles",
            matches!(rep.alpha_verdict, TailVerdict::Converges { .. }),
            format!("alpha verdict {:?}", rep.alpha_verdict),
        ),
        CheckResult::new(
            "slacks_summable",
            rep.delta_summability == SummabilityVerdict::Summable
                && rep.eps_summability == SummabilityVerdict::Summable,
            "delta and eps both read as summable",
        ),
        CheckResult::new(
            "beta_mass_bounded",
            rep.beta_sum_bounded && rep.beta_sum <= rep.beta_bound,
            format!("sum beta = {:.6} <= bound {:.6}", rep.beta_sum, rep.beta_bound),
        ),
    ])
}

fn scenario_path_length() -> Result<Vec<CheckResult>> {
    let contractive = rotation_case()?;
    let fl = finite_length(&contractive.seq)?;
    let mut checks = vec![CheckResult::new(
        "contractive_increments_summable",
        fl.trend == SummabilityVerdict::Summable,
        format!("partial path length {:.6}", fl.partial_sum),
    )];
    let drift = make_example(ExampleName::UnitVectorDrift, 128, None)?;
    let fl = finite_length(&drift.seq)?;
    checks.push(CheckResult::new(
        "escaping_increments_not_summable",
        fl.trend == SummabilityVerdict::NotSummable,
        format!(
            "constant step sqrt(2); partial length {:.3}",
            fl.partial_sum
        ),
    ));
    Ok(checks)
}

/// Run one scenario by id.
pub fn run_scenario(id: &str) -> Result<Option<ScenarioReport>> {
    for s in registry() {
        if s.id == id {
            let checks = (s.run)()?;
            let passed = checks.iter().all(|c| c.passed);
            return Ok(Some(ScenarioReport {
                id: s.id.into(),
                kind: s.kind,
                description: s.description.into(),
                checks,
                passed,
            }));
        }
    }
    Ok(None)
}

/// Run all scenarios whose id contains `filter` (all when None), in the
/// fixed registry order.
pub fn run_suite(filter: Option<&str>) -> Result<SuiteReport> {
    let mut scenarios = Vec::new();
    for s in registry() {
        if let Some(f) = filter {
            if !s.id.contains(f) {
                continue;
            }
        }
        let checks = (s.run)()?;
        let passed = checks.iter().all(|c| c.passed);
        scenarios.push(ScenarioReport {
            id: s.id.into(),
            kind: s.kind,
            description: s.description.into(),
            checks,
            passed,
        });
    }
    Ok(SuiteReport { scenarios })
}

/// Spread of asymptotic centers over arithmetic subsequences; exposed for
/// the suite consumers that want the numeric report rather than a verdict.
pub fn center_invariance_report(
    seq: &SequencePrefix,
    set: &ConvexSet,
) -> Result<crate::accenter::CenterSpreadReport> {
    subsequence_center_invariance(seq, set, &[(2, 0), (2, 1)], SOLVER_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_matches_declared_ids() {
        let reg = registry();
        assert_eq!(reg.len(), SCENARIO_IDS.len());
        for (s, id) in reg.iter().zip(SCENARIO_IDS) {
            assert_eq!(s.id, id);
        }
        // ids are unique
        let mut sorted: Vec<&str> = SCENARIO_IDS.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), SCENARIO_IDS.len());
    }

    #[test]
    fn unknown_scenario_id_is_none() {
        assert!(run_scenario("no_such_scenario").unwrap().is_none());
    }

    #[test]
    fn filtered_suite_runs_single_scenario() {
        let report = run_suite(Some("robbins_siegmund_recursion")).unwrap();
        assert_eq!(report.scenarios.len(), 1);
        assert!(report.all_passed(), "{:#?}", report.scenarios[0]);
    }

    #[test]
    fn traceability_matrix_mentions_every_scenario() {
        let report = run_suite(Some("path_length_dichotomy")).unwrap();
        let matrix = report.traceability_matrix();
        assert!(matrix.contains("path_length_dichotomy"));
        assert!(matrix.starts_with("| scenario |"));
    }

    #[test]
    fn center_invariance_on_alternating_hull() {
        let case = make_example(ExampleName::AlternatingSign, 64, None).unwrap();
        let rep = center_invariance_report(&case.seq, case.set("hull").unwrap()).unwrap();
        assert!(
            rep.max_center_spread <= 1e-3,
            "spread {}",
            rep.max_center_spread
        );
    }

    #[test]
    fn center_invariance_breaks_without_the_opial_property() {
        // wrt the whole plane the even/odd subsequences have centers at
        // (±1, 0): the invariance needs convergent distance traces
        let case = make_example(ExampleName::AlternatingSign, 64, None).unwrap();
        let space = ConvexSet::whole_space(2);
        let rep = center_invariance_report(&case.seq, &space).unwrap();
        assert!(
            rep.max_center_spread > 0.9,
            "spread {}",
            rep.max_center_spread
        );
    }
}
