//! Finite-horizon classifiers for the monotonicity hierarchy
//! (Fejér, Fejér*, quasi-Fejér of types I/II/III, Opial), the deterministic
//! Robbins–Siegmund verifier, and the finite-length diagnostic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{
    distance_trace, is_nonincreasing, tail_limit_estimate, tail_trend, SequencePrefix,
    TailVerdict, Tolerance, TrendVerdict, Vector,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SequenceClass {
    Fejer,
    FejerStar,
    QuasiFejerI,
    QuasiFejerII,
    QuasiFejerIII,
    Opial,
}

pub const ALL_CLASSES: [SequenceClass; 6] = [
    SequenceClass::Fejer,
    SequenceClass::FejerStar,
    SequenceClass::QuasiFejerI,
    SequenceClass::QuasiFejerII,
    SequenceClass::QuasiFejerIII,
    SequenceClass::Opial,
];

/// A concrete violation: step index, offending test point, magnitude.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub index: usize,
    pub test_point: Vector,
    pub magnitude: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails { witness: Witness },
    UndecidedAtHorizon,
}

impl Status {
    pub fn holds(&self) -> bool {
        matches!(self, Status::Holds)
    }
    pub fn fails(&self) -> bool {
        matches!(self, Status::Fails { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassVerdict {
    pub class: SequenceClass,
    #[serde(flatten)]
    pub status: Status,
    /// Per-step slack trace for the quasi classes (shared across test points
    /// for types I/II, worst point for type III).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub excess_trace: Option<Vec<f64>>,
    /// Minimal split index found by the eventual-inequality search.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eventual_from: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub verdicts: Vec<ClassVerdict>,
    pub test_points: Vec<Vector>,
    pub tolerance: Tolerance,
}

impl ClassificationReport {
    pub fn verdict(&self, class: SequenceClass) -> &ClassVerdict {
        self.verdicts
            .iter()
            .find(|v| v.class == class)
            .expect("all classes present")
    }

    pub fn status(&self, class: SequenceClass) -> &Status {
        &self.verdict(class).status
    }
}

/// Three-valued summability reading of a nonnegative slack sequence at
/// finite horizon. Summability is undecidable from a prefix, so the middle
/// verdict is honest and common.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SummabilityVerdict {
    Summable,
    NotSummable,
    Undecided,
}

/// Two-part heuristic: the tail slack must be at noise level, or the
/// windowed partial sums must shrink decisively; flat windows certify the
/// opposite.
pub fn summability_verdict(eps: &[f64], tail_start: usize, tol: Tolerance) -> SummabilityVerdict {
    if eps.is_empty() {
        return SummabilityVerdict::Summable;
    }
    let tail_start = tail_start.min(eps.len().saturating_sub(1));
    let tail = &eps[tail_start..];
    let max_tail = tail.iter().fold(0.0f64, |m, &v| m.max(v));
    if max_tail <= tol.abs {
        return SummabilityVerdict::Summable;
    }
    let mid = tail.len() / 2;
    let s1: f64 = tail[..mid].iter().sum();
    let s2: f64 = tail[mid..].iter().sum();
    if s1 <= tol.abs {
        // mass appears only late in the window
        return SummabilityVerdict::Undecided;
    }
    // Calibration: geometric slack gives ratio ~0, 1/k^2 gives ~0.5,
    // harmonic (non-summable) gives ~0.71, constant gives ~1. The summable
    // cutoff sits below the harmonic signature.
    let ratio = s2 / s1;
    if ratio <= 0.6 {
        SummabilityVerdict::Summable
    } else if ratio >= 0.95 {
        SummabilityVerdict::NotSummable
    } else {
        SummabilityVerdict::Undecided
    }
}

fn positive_excess(trace: &[f64], squared: bool) -> Vec<f64> {
    trace
        .windows(2)
        .map(|w| {
            let (a, b) = if squared {
                (w[0] * w[0], w[1] * w[1])
            } else {
                (w[0], w[1])
            };
            (b - a).max(0.0)
        })
        .collect()
}

fn quasi_status(
    excess: &[f64],
    worst_point: &Vector,
    tail_start: usize,
    tol: Tolerance,
) -> Status {
    match summability_verdict(excess, tail_start, tol) {
        SummabilityVerdict::Summable => Status::Holds,
        SummabilityVerdict::NotSummable => {
            let (idx, &mag) = excess
                .iter()
                .enumerate()
                .skip(tail_start.min(excess.len().saturating_sub(1)))
                .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
                .expect("excess nonempty");
            Status::Fails {
                witness: Witness {
                    index: idx,
                    test_point: worst_point.clone(),
                    magnitude: mag,
                },
            }
        }
        SummabilityVerdict::Undecided => Status::UndecidedAtHorizon,
    }
}

/// Classify a sequence prefix against a finite set of test points assumed to
/// lie in the intended Opial set.
pub fn classify(
    seq: &SequencePrefix,
    test_points: &[Vector],
    tol: Tolerance,
) -> Result<ClassificationReport> {
    if test_points.is_empty() {
        return Err(Error::InvalidArgument("test_points must be nonempty".into()));
    }
    let traces: Vec<Vec<f64>> = test_points
        .iter()
        .map(|c| distance_trace(seq, c))
        .collect::<Result<_>>()?;
    let tail_start = seq.tail_start();
    let steps = seq.len() - 1;

    // Fejér: pointwise inequality at every step for every test point.
    let mut fejer_witness: Option<Witness> = None;
    'outer: for (c, trace) in test_points.iter().zip(&traces) {
        for n in 0..steps {
            let scale = trace[n].abs().max(trace[n + 1].abs());
            let excess = trace[n + 1] - trace[n];
            if excess > tol.at(scale) {
                fejer_witness = Some(Witness {
                    index: n,
                    test_point: c.clone(),
                    magnitude: excess,
                });
                break 'outer;
            }
        }
    }
    let fejer = ClassVerdict {
        class: SequenceClass::Fejer,
        status: match &fejer_witness {
            None => Status::Holds,
            Some(w) => Status::Fails { witness: w.clone() },
        },
        excess_trace: None,
        eventual_from: None,
    };

    // Fejér*: per test point, minimal N with no violation at or after N.
    // A violation inside the declared tail window means the violations have
    // not died out at the horizon.
    let mut star_status = Status::Holds;
    let mut star_from = Some(0usize);
    for (c, trace) in test_points.iter().zip(&traces) {
        let mut last_violation: Option<(usize, f64)> = None;
        for n in 0..steps {
            let scale = trace[n].abs().max(trace[n + 1].abs());
            let excess = trace[n + 1] - trace[n];
            if excess > tol.at(scale) {
                last_violation = Some((n, excess));
            }
        }
        if let Some((n, mag)) = last_violation {
            let minimal_n = n + 1;
            if n >= tail_start {
                star_status = Status::Fails {
                    witness: Witness {
                        index: n,
                        test_point: c.clone(),
                        magnitude: mag,
                    },
                };
                star_from = None;
                break;
            }
            star_from = star_from.map(|cur| cur.max(minimal_n));
        }
    }
    let fejer_star = ClassVerdict {
        class: SequenceClass::FejerStar,
        status: star_status,
        excess_trace: None,
        eventual_from: star_from,
    };

    // Quasi-Fejér types. The inequalities are pointwise satisfiable with
    // eps_n := positive excess, so only summability is in question.
    let shared_excess_plain: Vec<f64> = (0..steps)
        .map(|n| {
            traces
                .iter()
                .map(|t| (t[n + 1] - t[n]).max(0.0))
                .fold(0.0f64, f64::max)
        })
        .collect();
    let shared_excess_sq: Vec<f64> = (0..steps)
        .map(|n| {
            traces
                .iter()
                .map(|t| (t[n + 1] * t[n + 1] - t[n] * t[n]).max(0.0))
                .fold(0.0f64, f64::max)
        })
        .collect();
    let worst_plain = worst_point_for_excess(test_points, &traces, false, tail_start);
    let worst_sq = worst_point_for_excess(test_points, &traces, true, tail_start);

    let quasi_i = ClassVerdict {
        class: SequenceClass::QuasiFejerI,
        status: quasi_status(&shared_excess_plain, &worst_plain, tail_start, tol),
        excess_trace: Some(shared_excess_plain),
        eventual_from: None,
    };
    let quasi_ii = ClassVerdict {
        class: SequenceClass::QuasiFejerII,
        status: quasi_status(&shared_excess_sq, &worst_sq, tail_start, tol),
        excess_trace: Some(shared_excess_sq),
        eventual_from: None,
    };

    // Type III: per-point slack sequences, each must look summable.
    let mut q3_status = Status::Holds;
    let mut q3_trace: Option<Vec<f64>> = None;
    for (c, trace) in test_points.iter().zip(&traces) {
        let excess = positive_excess(trace, true);
        let status = quasi_status(&excess, c, tail_start, tol);
        match (&q3_status, &status) {
            (_, Status::Fails { .. }) => {
                q3_status = status;
                q3_trace = Some(excess);
                break;
            }
            (Status::Holds, Status::UndecidedAtHorizon) => {
                q3_status = status;
                q3_trace = Some(excess);
            }
            _ => {
                if q3_trace.is_none() {
                    q3_trace = Some(excess);
                }
            }
        }
    }
    let quasi_iii = ClassVerdict {
        class: SequenceClass::QuasiFejerIII,
        status: q3_status,
        excess_trace: q3_trace,
        eventual_from: None,
    };

    // Opial: every distance trace must have a tail limit. Monotone traces
    // are convergent outright; otherwise the tail-gap trend decides.
    let mut opial_status = Status::Holds;
    for (c, trace) in test_points.iter().zip(&traces) {
        if is_nonincreasing(trace, tol) {
            continue;
        }
        match tail_limit_estimate(trace, tail_start, tol)? {
            TailVerdict::Converges { .. } => continue,
            TailVerdict::Diverges => {
                opial_status = Status::Fails {
                    witness: Witness {
                        index: trace.len() - 1,
                        test_point: c.clone(),
                        magnitude: trace[trace.len() - 1],
                    },
                };
                break;
            }
            TailVerdict::Oscillates { .. } => match tail_trend(trace, tail_start, tol)? {
                TrendVerdict::Converging { .. } => continue,
                TrendVerdict::Persistent { gap } => {
                    opial_status = Status::Fails {
                        witness: Witness {
                            index: tail_start,
                            test_point: c.clone(),
                            magnitude: gap,
                        },
                    };
                    break;
                }
            },
        }
    }
    let opial = ClassVerdict {
        class: SequenceClass::Opial,
        status: opial_status,
        excess_trace: None,
        eventual_from: None,
    };

    Ok(ClassificationReport {
        verdicts: vec![fejer, fejer_star, quasi_i, quasi_ii, quasi_iii, opial],
        test_points: test_points.to_vec(),
        tolerance: tol,
    })
}

fn worst_point_for_excess(
    test_points: &[Vector],
    traces: &[Vec<f64>],
    squared: bool,
    tail_start: usize,
) -> Vector {
    let mut best = 0usize;
    let mut best_sum = -1.0f64;
    for (i, trace) in traces.iter().enumerate() {
        let excess = positive_excess(trace, squared);
        let start = tail_start.min(excess.len().saturating_sub(1));
        let s: f64 = excess[start..].iter().sum();
        if s > best_sum {
            best_sum = s;
            best = i;
        }
    }
    test_points[best].clone()
}

/// Outcome of the deterministic Robbins–Siegmund check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RobbinsSiegmundReport {
    pub inequality_holds_all_n: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_violation: Option<(usize, f64)>,
    pub alpha_verdict: TailVerdict,
    pub delta_summability: SummabilityVerdict,
    pub eps_summability: SummabilityVerdict,
    pub beta_sum: f64,
    /// `prod(1+delta) * (alpha_0 + sum(eps))`, the bound the recursion implies.
    pub beta_bound: f64,
    pub beta_sum_bounded: bool,
}

/// Verify `alpha_{n+1} <= (1 + delta_n) alpha_n - beta_n + eps_n` pointwise
/// and report the conclusions the recursion supports at this horizon.
pub fn robbins_siegmund_check(
    alpha: &[f64],
    beta: &[f64],
    delta: &[f64],
    eps: &[f64],
    horizon_tol: Tolerance,
) -> Result<RobbinsSiegmundReport> {
    let n = alpha.len();
    if beta.len() != n || delta.len() != n || eps.len() != n {
        return Err(Error::InvalidArgument(
            "alpha, beta, delta, eps must have equal lengths".into(),
        ));
    }
    if n < 2 {
        return Err(Error::InvalidArgument("need at least two entries".into()));
    }
    for (name, xs) in [("alpha", alpha), ("beta", beta), ("delta", delta), ("eps", eps)] {
        if let Some((i, &v)) = xs.iter().enumerate().find(|(_, &v)| !(v >= 0.0)) {
            return Err(Error::InvalidArgument(format!(
                "{name}[{i}] = {v} must be nonnegative"
            )));
        }
    }

    let mut first_violation = None;
    for k in 0..n - 1 {
        let rhs = (1.0 + delta[k]) * alpha[k] - beta[k] + eps[k];
        let scale = alpha[k].abs().max(rhs.abs());
        if alpha[k + 1] > rhs + horizon_tol.at(scale) {
            first_violation = Some((k, alpha[k + 1] - rhs));
            break;
        }
    }

    let tail_start = n / 2;
    let alpha_verdict = tail_limit_estimate(alpha, tail_start, horizon_tol)?;
    let delta_summability = summability_verdict(delta, tail_start, horizon_tol);
    let eps_summability = summability_verdict(eps, tail_start, horizon_tol);

    let beta_sum: f64 = beta.iter().sum();
    let eps_sum: f64 = eps.iter().sum();
    let growth: f64 = delta.iter().map(|d| 1.0 + d).product();
    let beta_bound = growth * (alpha[0] + eps_sum);
    let beta_sum_bounded = beta_sum <= beta_bound + horizon_tol.at(beta_bound);

    Ok(RobbinsSiegmundReport {
        inequality_holds_all_n: first_violation.is_none(),
        first_violation,
        alpha_verdict,
        delta_summability,
        eps_summability,
        beta_sum,
        beta_bound,
        beta_sum_bounded,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteLengthReport {
    /// `sum_n ‖x_n − x_{n+1}‖` over the prefix.
    pub partial_sum: f64,
    pub increments: Vec<f64>,
    pub trend: SummabilityVerdict,
}

/// Partial path length and a tail trend verdict for the increments.
pub fn finite_length(seq: &SequencePrefix) -> Result<FiniteLengthReport> {
    if seq.len() < 2 {
        return Err(Error::InvalidArgument("need at least two points".into()));
    }
    let increments: Vec<f64> = seq
        .points()
        .windows(2)
        .map(|w| crate::hilbert::distance(&w[0], &w[1]))
        .collect();
    let partial_sum = increments.iter().sum();
    let trend = summability_verdict(&increments, seq.tail_start(), Tolerance::default());
    Ok(FiniteLengthReport {
        partial_sum,
        increments,
        trend,
    })
}
