//! Certified constructors for the reference sequences and for generic
//! Fejér-producing iterations. Each case carries ground-truth tags that the
//! harness re-checks; the tag checks double as the master regression suite.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cluster::{strong_clusters, weak_clusters_proxy, DEFAULT_MERGE_RADIUS};
use crate::error::{Error, Result};
use crate::hilbert::{
    distance, distance_trace, tail_limit_estimate, SequencePrefix, Tolerance, Vector,
};
use crate::monotonicity::{classify, SequenceClass, Status};
use crate::sets::{sample_points_decaying, AffinePart, ConvexSet};

/// Built-in example sequences. The short `ExN_M` aliases accepted by the
/// CLI map onto these.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExampleName {
    /// dim 1: `0, 1/sqrt(1), 0, 1/sqrt(2), ...` — strongly null, Opial wrt
    /// the origin, but with non-summable upward excursions.
    InterleavedDecay,
    /// dim 2: `((-1)^n, 0)` — Opial wrt the vertical segment and its
    /// affine hull, with two strong cluster points.
    AlternatingSign,
    /// standard unit vectors `e_n` — the escaping-basis drift case.
    UnitVectorDrift,
    /// `e_0, 0, e_1, 0, ...` — weakly null yet Opial wrt nothing.
    UnitVectorWithGaps,
    /// `e_0+e_1` on even steps, `e_1+e_{n+1}` on odd — the projection
    /// counterexample machine.
    TwoBumpDrift,
    /// dim 2: `(eps_n, (-1)^n)` with `eps_n` strictly decreasing to 0.
    ShrinkingOscillation,
}

impl ExampleName {
    pub const ALL: [ExampleName; 6] = [
        ExampleName::InterleavedDecay,
        ExampleName::AlternatingSign,
        ExampleName::UnitVectorDrift,
        ExampleName::UnitVectorWithGaps,
        ExampleName::TwoBumpDrift,
        ExampleName::ShrinkingOscillation,
    ];

    pub fn parse(s: &str) -> Option<ExampleName> {
        let norm = s.to_ascii_lowercase().replace(['-', '.'], "_");
        match norm.as_str() {
            "interleaved_decay" | "ex1_5" => Some(ExampleName::InterleavedDecay),
            "alternating_sign" | "ex2_8" => Some(ExampleName::AlternatingSign),
            "unit_vector_drift" | "ex2_15i" => Some(ExampleName::UnitVectorDrift),
            "unit_vector_with_gaps" | "ex2_15ii" => Some(ExampleName::UnitVectorWithGaps),
            "two_bump_drift" | "ex3_12" => Some(ExampleName::TwoBumpDrift),
            "shrinking_oscillation" | "ex3_15" => Some(ExampleName::ShrinkingOscillation),
            _ => None,
        }
    }

    pub fn slug(&self) -> &'static str {
        match self {
            ExampleName::InterleavedDecay => "interleaved_decay",
            ExampleName::AlternatingSign => "alternating_sign",
            ExampleName::UnitVectorDrift => "unit_vector_drift",
            ExampleName::UnitVectorWithGaps => "unit_vector_with_gaps",
            ExampleName::TwoBumpDrift => "two_bump_drift",
            ExampleName::ShrinkingOscillation => "shrinking_oscillation",
        }
    }

    /// Default horizon: 64 for periodic-structure examples, 256 for drift
    /// examples so tails contain plenty of structural periods.
    pub fn default_horizon(&self) -> usize {
        match self {
            ExampleName::UnitVectorDrift
            | ExampleName::UnitVectorWithGaps
            | ExampleName::TwoBumpDrift => 256,
            _ => 64,
        }
    }
}

/// Checkable ground-truth claims about a generated case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum TruthTag {
    OpialWrt { set: String },
    NotOpialWrt { set: String },
    FejerWrt { set: String },
    NotFejerWrt { set: String },
    NotFejerStarWrt { set: String },
    NotQuasiFejerWrt { set: String },
    FejerHoldsAtPoint { point: Vector },
    FejerFailsAtPoint { point: Vector },
    WeakProxyClusters { points: Vec<Vector> },
    StrongClusters { points: Vec<Vector> },
    /// Strong cluster at `point` plus Opial wrt `{point}`: together these
    /// certify strong convergence to `point`.
    StrongLimit { point: Vector },
    /// A single probe point whose distance trace refuses to settle,
    /// witnessing that the Opial set cannot be enlarged past it.
    ProbeBreaksOpial { point: Vector },
    /// The distance trace to the named set repeats this pattern from n = 0.
    DistanceTracePattern { set: String, period: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratedCase {
    pub name: String,
    pub seq: SequencePrefix,
    pub sets: Vec<(String, ConvexSet)>,
    pub truth: Vec<TruthTag>,
}

impl GeneratedCase {
    pub fn set(&self, name: &str) -> Result<&ConvexSet> {
        self.sets
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, s)| s)
            .ok_or_else(|| Error::InvalidArgument(format!("case has no set named {name}")))
    }
}

pub const SAMPLER_SEED: u64 = 0x0D1A1;
pub const SAMPLER_COUNT: usize = 8;
pub const SAMPLER_SPREAD: f64 = 2.0;

/// Deterministic test points for a case set.
pub fn case_test_points(set: &ConvexSet) -> Result<Vec<Vector>> {
    sample_points_decaying(set, SAMPLER_COUNT, SAMPLER_SEED, SAMPLER_SPREAD)
}

fn hyperplane_perp_e0(dim: usize) -> ConvexSet {
    ConvexSet::AffineSubspace {
        affine: AffinePart {
            anchor: Vector::zeros(dim),
            basis: (1..dim).map(|k| Vector::unit(dim, k)).collect(),
        },
    }
}

/// Build a reference example at the given horizon (number of points).
pub fn make_example(
    name: ExampleName,
    horizon: usize,
    eps: Option<Vec<f64>>,
) -> Result<GeneratedCase> {
    if horizon < 8 {
        return Err(Error::InvalidArgument("horizon must be >= 8".into()));
    }
    if eps.is_some() && name != ExampleName::ShrinkingOscillation {
        return Err(Error::InvalidArgument(
            "eps parameter only applies to shrinking_oscillation".into(),
        ));
    }
    let tail_start = horizon / 2;
    match name {
        ExampleName::InterleavedDecay => {
            let points: Vec<Vector> = (0..horizon)
                .map(|n| {
                    if n % 2 == 0 {
                        Vector(vec![0.0])
                    } else {
                        Vector(vec![1.0 / ((n / 2 + 1) as f64).sqrt()])
                    }
                })
                .collect();
            let seq = SequencePrefix::new(points, tail_start)?;
            let origin = ConvexSet::singleton(Vector(vec![0.0]));
            Ok(GeneratedCase {
                name: name.slug().into(),
                seq,
                sets: vec![("origin".into(), origin)],
                truth: vec![
                    TruthTag::StrongLimit {
                        point: Vector(vec![0.0]),
                    },
                    TruthTag::OpialWrt {
                        set: "origin".into(),
                    },
                    TruthTag::NotFejerWrt {
                        set: "origin".into(),
                    },
                    TruthTag::NotFejerStarWrt {
                        set: "origin".into(),
                    },
                    TruthTag::NotQuasiFejerWrt {
                        set: "origin".into(),
                    },
                ],
            })
        }
        ExampleName::AlternatingSign => {
            let points: Vec<Vector> = (0..horizon)
                .map(|n| Vector(vec![if n % 2 == 0 { 1.0 } else { -1.0 }, 0.0]))
                .collect();
            let seq = SequencePrefix::new(points, tail_start)?;
            let segment =
                ConvexSet::boxed(vec![Some(0.0), Some(-1.0)], vec![Some(0.0), Some(1.0)])?;
            let hull = segment.affine_hull()?;
            Ok(GeneratedCase {
                name: name.slug().into(),
                seq,
                sets: vec![("segment".into(), segment), ("hull".into(), hull)],
                truth: vec![
                    TruthTag::OpialWrt {
                        set: "segment".into(),
                    },
                    TruthTag::OpialWrt { set: "hull".into() },
                    TruthTag::ProbeBreaksOpial {
                        point: Vector(vec![0.5, 0.0]),
                    },
                    TruthTag::StrongClusters {
                        points: vec![Vector(vec![-1.0, 0.0]), Vector(vec![1.0, 0.0])],
                    },
                    TruthTag::WeakProxyClusters {
                        points: vec![Vector(vec![-1.0, 0.0]), Vector(vec![1.0, 0.0])],
                    },
                ],
            })
        }
        ExampleName::UnitVectorDrift => {
            let dim = horizon;
            let points: Vec<Vector> = (0..horizon).map(|n| Vector::unit(dim, n)).collect();
            let seq = SequencePrefix::new(points, tail_start)?;
            let space = ConvexSet::whole_space(dim);
            // coordinates increasing along the drift -> Fejér holds there
            let increasing = Vector((0..dim).map(|k| -1.0 / (k + 1) as f64).collect());
            let decreasing = Vector((0..dim).map(|k| 1.0 / (k + 1) as f64).collect());
            Ok(GeneratedCase {
                name: name.slug().into(),
                seq,
                sets: vec![("space".into(), space)],
                truth: vec![
                    TruthTag::OpialWrt {
                        set: "space".into(),
                    },
                    TruthTag::WeakProxyClusters {
                        points: vec![Vector::zeros(dim)],
                    },
                    TruthTag::StrongClusters { points: vec![] },
                    TruthTag::FejerHoldsAtPoint { point: increasing },
                    TruthTag::FejerFailsAtPoint { point: decreasing },
                ],
            })
        }
        ExampleName::UnitVectorWithGaps => {
            let dim = horizon / 2 + 1;
            let points: Vec<Vector> = (0..horizon)
                .map(|n| {
                    if n % 2 == 0 {
                        Vector::unit(dim, n / 2)
                    } else {
                        Vector::zeros(dim)
                    }
                })
                .collect();
            let seq = SequencePrefix::new(points, tail_start)?;
            let space = ConvexSet::whole_space(dim);
            Ok(GeneratedCase {
                name: name.slug().into(),
                seq,
                sets: vec![("space".into(), space)],
                truth: vec![
                    TruthTag::NotOpialWrt {
                        set: "space".into(),
                    },
                    TruthTag::ProbeBreaksOpial {
                        point: Vector::zeros(dim),
                    },
                    TruthTag::WeakProxyClusters {
                        points: vec![Vector::zeros(dim)],
                    },
                    TruthTag::StrongClusters {
                        points: vec![Vector::zeros(dim)],
                    },
                ],
            })
        }
        ExampleName::TwoBumpDrift => {
            let dim = horizon + 2;
            let e = |k: usize| Vector::unit(dim, k);
            let points: Vec<Vector> = (0..horizon)
                .map(|n| {
                    if n % 2 == 0 {
                        e(0).add(&e(1))
                    } else {
                        e(1).add(&e(n + 1))
                    }
                })
                .collect();
            let seq = SequencePrefix::new(points, tail_start)?;
            let hyperplane = hyperplane_perp_e0(dim);
            let cap = match &hyperplane {
                ConvexSet::AffineSubspace { affine } => {
                    ConvexSet::ball_cap_subspace(Vector::zeros(dim), 1.0, affine.clone())?
                }
                _ => unreachable!(),
            };
            let sqrt2 = 2f64.sqrt();
            Ok(GeneratedCase {
                name: name.slug().into(),
                seq,
                sets: vec![
                    ("hyperplane".into(), hyperplane),
                    ("cap".into(), cap),
                    ("space".into(), ConvexSet::whole_space(dim)),
                ],
                truth: vec![
                    TruthTag::OpialWrt {
                        set: "hyperplane".into(),
                    },
                    TruthTag::OpialWrt { set: "cap".into() },
                    TruthTag::NotOpialWrt {
                        set: "space".into(),
                    },
                    TruthTag::StrongClusters {
                        points: vec![e(0).add(&e(1))],
                    },
                    TruthTag::WeakProxyClusters {
                        points: vec![e(1), e(0).add(&e(1))],
                    },
                    TruthTag::DistanceTracePattern {
                        set: "hyperplane".into(),
                        period: vec![1.0, 0.0],
                    },
                    TruthTag::DistanceTracePattern {
                        set: "cap".into(),
                        period: vec![1.0, sqrt2 - 1.0],
                    },
                ],
            })
        }
        ExampleName::ShrinkingOscillation => {
            let eps = match eps {
                Some(e) => e,
                None => (0..horizon).map(|n| 1.0 / (n + 1) as f64).collect(),
            };
            if eps.len() < horizon {
                return Err(Error::InvalidArgument(
                    "eps must cover the whole horizon".into(),
                ));
            }
            for w in eps.windows(2) {
                if !(w[1] > 0.0 && w[1] < w[0]) {
                    return Err(Error::InvalidArgument(
                        "eps must be strictly decreasing and positive".into(),
                    ));
                }
            }
            let points: Vec<Vector> = (0..horizon)
                .map(|n| Vector(vec![eps[n], if n % 2 == 0 { 1.0 } else { -1.0 }]))
                .collect();
            let seq = SequencePrefix::new(points, tail_start)?;
            let axis =
                ConvexSet::affine_subspace(Vector(vec![0.0, 0.0]), vec![Vector(vec![1.0, 0.0])])?;
            Ok(GeneratedCase {
                name: name.slug().into(),
                seq,
                sets: vec![("axis".into(), axis)],
                truth: vec![
                    TruthTag::OpialWrt { set: "axis".into() },
                    TruthTag::ProbeBreaksOpial {
                        point: Vector(vec![0.0, 0.5]),
                    },
                ],
            })
        }
    }
}

/// Closed catalogue of nonexpansive maps for the relaxed iteration. Closed
/// so the attached truth tags stay sound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "map", rename_all = "snake_case")]
pub enum NonexpansiveMapSpec {
    Identity { dim: usize },
    /// Rotation about the origin in the plane; an isometry fixing only 0.
    Rotation { angle: f64 },
    /// Cyclic composition of projections; every common point is fixed.
    ProjectionComposition { sets: Vec<ConvexSet> },
    /// Half-averaged composition of two reflections; common points of the
    /// two sets are fixed.
    AveragedReflections { a: Box<ConvexSet>, b: Box<ConvexSet> },
}

impl NonexpansiveMapSpec {
    pub fn ambient_dim(&self) -> usize {
        match self {
            NonexpansiveMapSpec::Identity { dim } => *dim,
            NonexpansiveMapSpec::Rotation { .. } => 2,
            NonexpansiveMapSpec::ProjectionComposition { sets } => sets[0].ambient_dim(),
            NonexpansiveMapSpec::AveragedReflections { a, .. } => a.ambient_dim(),
        }
    }

    /// A nonempty closed convex subset of the fixed-point set.
    pub fn fixed_set(&self) -> Result<ConvexSet> {
        match self {
            NonexpansiveMapSpec::Identity { dim } => Ok(ConvexSet::whole_space(*dim)),
            NonexpansiveMapSpec::Rotation { .. } => {
                Ok(ConvexSet::singleton(Vector::zeros(2)))
            }
            NonexpansiveMapSpec::ProjectionComposition { sets } => {
                if sets.len() == 1 {
                    Ok(sets[0].clone())
                } else {
                    ConvexSet::intersection(sets.clone())
                }
            }
            NonexpansiveMapSpec::AveragedReflections { a, b } => {
                ConvexSet::intersection(vec![(**a).clone(), (**b).clone()])
            }
        }
    }

    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        match self {
            NonexpansiveMapSpec::Identity { .. } => Ok(x.clone()),
            NonexpansiveMapSpec::Rotation { angle } => {
                let (s, c) = angle.sin_cos();
                Ok(Vector(vec![
                    c * x.0[0] - s * x.0[1],
                    s * x.0[0] + c * x.0[1],
                ]))
            }
            NonexpansiveMapSpec::ProjectionComposition { sets } => {
                let mut y = x.clone();
                for s in sets {
                    y = s.project(&y)?.point;
                }
                Ok(y)
            }
            NonexpansiveMapSpec::AveragedReflections { a, b } => {
                let ra = a.project(x)?.point.scale(2.0).sub(x);
                let rb = b.project(&ra)?.point.scale(2.0).sub(&ra);
                Ok(x.add(&rb).scale(0.5))
            }
        }
    }
}

/// Relaxed fixed-point iteration `x_{n+1} = (1-λ) x_n + λ T x_n`.
/// For λ in (0, 1] and T nonexpansive the iterates are Fejér monotone with
/// respect to any set of fixed points of T.
pub fn km_iteration(
    map: &NonexpansiveMapSpec,
    x0: &Vector,
    relaxation: f64,
    horizon: usize,
) -> Result<GeneratedCase> {
    if !(relaxation > 0.0 && relaxation <= 1.0) {
        return Err(Error::InvalidArgument(
            "relaxation must lie in (0, 1]".into(),
        ));
    }
    if horizon < 2 {
        return Err(Error::InvalidArgument("horizon must be >= 2".into()));
    }
    x0.check_dim(map.ambient_dim())?;
    let mut points = Vec::with_capacity(horizon);
    let mut x = x0.clone();
    points.push(x.clone());
    for _ in 1..horizon {
        let tx = map.apply(&x)?;
        x = x.scale(1.0 - relaxation).axpy(relaxation, &tx);
        points.push(x.clone());
    }
    let seq = SequencePrefix::new(points, horizon / 2)?;
    let fix = map.fixed_set()?;
    Ok(GeneratedCase {
        name: "km_iteration".into(),
        seq,
        sets: vec![("fix".into(), fix)],
        truth: vec![
            TruthTag::FejerWrt { set: "fix".into() },
            TruthTag::OpialWrt { set: "fix".into() },
        ],
    })
}

/// Seeded random relaxed-iteration case for the regression sweep: a
/// projection pipeline over sets sharing a known common point.
pub fn random_km_case(seed: u64) -> Result<GeneratedCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = rng.gen_range(2..=5usize);
    let common = Vector((0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect());
    let n_sets = rng.gen_range(1..=3usize);
    let mut sets = Vec::new();
    for _ in 0..n_sets {
        match rng.gen_range(0..3) {
            0 => {
                // halfspace through a point beyond `common`
                let normal =
                    Vector((0..dim).map(|_| rng.gen_range(-1.0..1.0f64)).collect());
                let normal = if crate::hilbert::norm(&normal) < 1e-3 {
                    Vector::unit(dim, 0)
                } else {
                    normal
                };
                let offset =
                    crate::hilbert::inner(&normal, &common)? + rng.gen_range(0.0..0.5);
                sets.push(ConvexSet::halfspace(normal, offset)?);
            }
            1 => {
                let radius = rng.gen_range(0.5..2.0);
                let shift = Vector(
                    (0..dim)
                        .map(|_| rng.gen_range(-0.3..0.3) * radius)
                        .collect(),
                );
                sets.push(ConvexSet::ball(common.add(&shift), radius)?);
            }
            _ => {
                let lower: Vec<Option<f64>> = common
                    .0
                    .iter()
                    .map(|&c| Some(c - rng.gen_range(0.1..1.0)))
                    .collect();
                let upper: Vec<Option<f64>> = common
                    .0
                    .iter()
                    .map(|&c| Some(c + rng.gen_range(0.1..1.0)))
                    .collect();
                sets.push(ConvexSet::boxed(lower, upper)?);
            }
        }
    }
    let map = NonexpansiveMapSpec::ProjectionComposition { sets };
    let x0 = Vector((0..dim).map(|_| rng.gen_range(-3.0..3.0)).collect());
    let relaxation = rng.gen_range(0.2..=1.0);
    let horizon = 48;
    let mut case = km_iteration(&map, &x0, relaxation, horizon)?;
    case.name = format!("km_random_{seed}");
    Ok(case)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictedLimit {
    pub limit: f64,
    pub raw_squared: f64,
    pub clamped: bool,
}

/// Predict the distance limit to an affine combination of points from the
/// measured limits at those points:
/// `l²(Σ λ_i c_i) = Σ λ_i l²(c_i) − ½ Σ_{i,j} λ_i λ_j ‖c_i − c_j‖²`.
pub fn opial_limit_predictor(
    seq: &SequencePrefix,
    combo: &[(f64, Vector)],
    tol: Tolerance,
) -> Result<PredictedLimit> {
    if combo.is_empty() {
        return Err(Error::InvalidArgument("combination must be nonempty".into()));
    }
    let sum_lambda: f64 = combo.iter().map(|(l, _)| l).sum();
    if (sum_lambda - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidArgument(format!(
            "coefficients must sum to 1 (got {sum_lambda})"
        )));
    }
    let mut limits = Vec::with_capacity(combo.len());
    for (_, c) in combo {
        let trace = distance_trace(seq, c)?;
        match tail_limit_estimate(&trace, seq.tail_start(), tol)? {
            crate::hilbert::TailVerdict::Converges { limit } => limits.push(limit),
            other => {
                return Err(Error::InvalidArgument(format!(
                    "tail not converged at a combination point: {other:?}"
                )))
            }
        }
    }
    let mut value: f64 = combo
        .iter()
        .zip(&limits)
        .map(|((l, _), lim)| l * lim * lim)
        .sum();
    for (i, (li, ci)) in combo.iter().enumerate() {
        for (lj, cj) in combo.iter().skip(i + 1) {
            let d = distance(ci, cj);
            // the double sum counts each unordered pair twice
            value -= li * lj * d * d;
        }
    }
    let clamped = value < 0.0;
    Ok(PredictedLimit {
        limit: value.max(0.0).sqrt(),
        raw_squared: value,
        clamped,
    })
}

/// Re-check every truth tag of a case with the harness operations.
/// Returns one (description, passed) entry per tag.
pub fn check_truth_tags(case: &GeneratedCase) -> Result<Vec<(String, bool)>> {
    let tol = Tolerance::default();
    let mut results = Vec::new();
    for tag in &case.truth {
        let (desc, pass) = match tag {
            TruthTag::OpialWrt { set } => {
                let points = case_test_points(case.set(set)?)?;
                let rep = classify(&case.seq, &points, tol)?;
                (
                    format!("opial holds wrt {set}"),
                    !rep.status(SequenceClass::Opial).fails(),
                )
            }
            TruthTag::NotOpialWrt { set } => {
                let points = case_test_points(case.set(set)?)?;
                let rep = classify(&case.seq, &points, tol)?;
                (
                    format!("opial fails wrt {set}"),
                    rep.status(SequenceClass::Opial).fails(),
                )
            }
            TruthTag::FejerWrt { set } => {
                let points = case_test_points(case.set(set)?)?;
                let rep = classify(&case.seq, &points, tol)?;
                (
                    format!("fejer holds wrt {set}"),
                    rep.status(SequenceClass::Fejer).holds(),
                )
            }
            TruthTag::NotFejerWrt { set } => {
                let points = case_test_points(case.set(set)?)?;
                let rep = classify(&case.seq, &points, tol)?;
                let ok = match rep.status(SequenceClass::Fejer) {
                    Status::Fails { witness } => {
                        // the witness must reproduce the violated inequality
                        let t = distance_trace(&case.seq, &witness.test_point)?;
                        t[witness.index + 1] > t[witness.index]
                    }
                    _ => false,
                };
                (format!("fejer fails wrt {set} with valid witness"), ok)
            }
            TruthTag::NotFejerStarWrt { set } => {
                let points = case_test_points(case.set(set)?)?;
                let rep = classify(&case.seq, &points, tol)?;
                (
                    format!("fejer* fails wrt {set}"),
                    rep.status(SequenceClass::FejerStar).fails(),
                )
            }
            TruthTag::NotQuasiFejerWrt { set } => {
                let points = case_test_points(case.set(set)?)?;
                let rep = classify(&case.seq, &points, tol)?;
                let ok = [
                    SequenceClass::QuasiFejerI,
                    SequenceClass::QuasiFejerII,
                    SequenceClass::QuasiFejerIII,
                ]
                .iter()
                .all(|c| !rep.status(*c).holds());
                (format!("no quasi-fejer type holds wrt {set}"), ok)
            }
            TruthTag::FejerHoldsAtPoint { point } => {
                let rep = classify(&case.seq, std::slice::from_ref(point), tol)?;
                (
                    "fejer holds at the designated point".into(),
                    rep.status(SequenceClass::Fejer).holds(),
                )
            }
            TruthTag::FejerFailsAtPoint { point } => {
                let rep = classify(&case.seq, std::slice::from_ref(point), tol)?;
                (
                    "fejer fails at the designated point".into(),
                    rep.status(SequenceClass::Fejer).fails(),
                )
            }
            TruthTag::WeakProxyClusters { points } => {
                let got = weak_clusters_proxy(&case.seq, DEFAULT_MERGE_RADIUS)?;
                (
                    format!("weak proxy clusters ({} expected)", points.len()),
                    same_point_set(&got, points, 1e-5),
                )
            }
            TruthTag::StrongClusters { points } => {
                let got = strong_clusters(&case.seq, DEFAULT_MERGE_RADIUS)?;
                (
                    format!("strong clusters ({} expected)", points.len()),
                    same_point_set(&got, points, 1e-5),
                )
            }
            TruthTag::StrongLimit { point } => {
                let strong = strong_clusters(&case.seq, DEFAULT_MERGE_RADIUS)?;
                let has_cluster = strong.iter().any(|p| distance(p, point) <= 1e-5);
                let rep = classify(&case.seq, std::slice::from_ref(point), tol)?;
                (
                    "strong cluster + opial at the limit point".into(),
                    has_cluster && !rep.status(SequenceClass::Opial).fails(),
                )
            }
            TruthTag::ProbeBreaksOpial { point } => {
                let rep = classify(&case.seq, std::slice::from_ref(point), tol)?;
                (
                    "probe point breaks the opial property".into(),
                    rep.status(SequenceClass::Opial).fails(),
                )
            }
            TruthTag::DistanceTracePattern { set, period } => {
                let s = case.set(set)?;
                let mut ok = true;
                for (n, x) in case.seq.points().iter().enumerate() {
                    let d = s.distance(x)?;
                    let want = period[n % period.len()];
                    if (d - want).abs() > 1e-12 {
                        ok = false;
                        break;
                    }
                }
                (format!("distance trace to {set} is periodic"), ok)
            }
        };
        results.push((desc, pass));
    }
    Ok(results)
}

fn same_point_set(got: &[Vector], want: &[Vector], tol: f64) -> bool {
    got.len() == want.len()
        && want
            .iter()
            .all(|w| got.iter().any(|g| distance(g, w) <= tol))
}
