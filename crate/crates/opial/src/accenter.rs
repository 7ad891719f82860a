//! Approximate asymptotic centers: minimize the tail objective
//! `f(x) = max_{n in tail} ‖x − u_n‖²` over a convex set.
//!
//! The limsup over an infinite sequence is approximated by the max over the
//! declared tail window; the window is a first-class parameter and every
//! result records it.
//!
//! The solver runs the projected subgradient iteration (modulus-2 strong
//! convexity, step 1/(k+1), smallest active index on ties) and then tightens
//! the result with ascent on the concave dual
//! `psi(w) = min_{x in C} sum_n w_n ‖x − u_n‖²` over the simplex, whose value
//! is a certified lower bound on the optimum. The reported gap certificate is
//! `f(best) − max psi`, an upper bound on the suboptimality, and by strong
//! convexity also on `‖best − center‖²`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{distance, norm, SequencePrefix, Vector};
use crate::sets::{ConvexSet, MEMBERSHIP_TOL};

const SUBGRADIENT_ITERS: usize = 500;
const DUAL_MAX_ITERS: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticCenterResult {
    pub center: Vector,
    pub objective: f64,
    /// Upper bound on the suboptimality of `objective`.
    pub gap_certificate: f64,
    pub iterations: usize,
    pub tail_start: usize,
    pub tail_len: usize,
}

/// Objective value and smallest active index over the tail points.
fn objective(x: &Vector, tail: &[Vector]) -> (f64, usize) {
    let mut best = f64::NEG_INFINITY;
    let mut idx = 0;
    for (n, u) in tail.iter().enumerate() {
        let d = distance(x, u);
        let v = d * d;
        if v > best {
            best = v;
            idx = n;
        }
    }
    (best, idx)
}

/// Euclidean projection onto the probability simplex.
fn project_simplex(w: &[f64]) -> Vec<f64> {
    let mut sorted = w.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (i, &v) in sorted.iter().enumerate() {
        cumsum += v;
        let t = (cumsum - 1.0) / (i + 1) as f64;
        if v - t > 0.0 {
            theta = t;
        }
    }
    w.iter().map(|&v| (v - theta).max(0.0)).collect()
}

fn weighted_mean(tail: &[Vector], w: &[f64]) -> Vector {
    let mut m = Vector::zeros(tail[0].dim());
    for (u, &wi) in tail.iter().zip(w) {
        m = m.axpy(wi, u);
    }
    m
}

/// Dual value and gradient at weights `w`:
/// `psi(w) = d_C²(mean) + sum w ‖u‖² − ‖mean‖²`, gradient `‖x*(w) − u_n‖²`.
fn dual_value_grad(
    set: &ConvexSet,
    tail: &[Vector],
    w: &[f64],
) -> Result<(f64, Vec<f64>, Vector)> {
    let mean = weighted_mean(tail, w);
    let xstar = set.project(&mean)?.point;
    let mut value = 0.0;
    let mut grad = Vec::with_capacity(tail.len());
    for (u, &wi) in tail.iter().zip(w) {
        let d = distance(&xstar, u);
        let sq = d * d;
        value += wi * sq;
        grad.push(sq);
    }
    Ok((value, grad, xstar))
}

pub fn asymptotic_center(
    seq: &SequencePrefix,
    set: &ConvexSet,
    solver_tol: f64,
) -> Result<AsymptoticCenterResult> {
    if !(solver_tol > 0.0) {
        return Err(Error::InvalidArgument("solver_tol must be > 0".into()));
    }
    if set.ambient_dim() != seq.dim() {
        return Err(Error::DimensionMismatch {
            expected: seq.dim(),
            got: set.ambient_dim(),
        });
    }
    let tail = seq.tail();
    let max_norm = tail.iter().map(norm).fold(0.0f64, f64::max);
    if !max_norm.is_finite() {
        return Err(Error::InvalidArgument("tail is unbounded".into()));
    }

    // init: project the tail centroid, the unconstrained minimizer of the
    // averaged objective
    let centroid = {
        let mut c = Vector::zeros(seq.dim());
        for u in tail {
            c = c.add(u);
        }
        c.scale(1.0 / tail.len() as f64)
    };
    let mut x = set.project(&centroid)?.point;
    let (mut best_obj, _) = objective(&x, tail);
    let mut best_x = x.clone();
    let mut iterations = 0usize;

    // phase 1: projected subgradient with the strong-convexity step schedule
    for k in 0..SUBGRADIENT_ITERS {
        let (_, active) = objective(&x, tail);
        let g = x.sub(&tail[active]).scale(2.0);
        let step = 1.0 / (k + 1) as f64;
        x = set.project(&x.axpy(-step, &g))?.point;
        let (fx, _) = objective(&x, tail);
        if fx < best_obj {
            best_obj = fx;
            best_x = x.clone();
        }
        iterations += 1;
    }

    // phase 2: dual ascent over the simplex with Nesterov momentum and
    // backtracking; each dual point certifies a lower bound
    let m = tail.len();
    let mut w = vec![1.0 / m as f64; m];
    let mut y = w.clone();
    let mut t_momentum = 1.0f64;
    let mut best_dual = f64::NEG_INFINITY;
    // crude curvature scale: squared spread of the tail
    let spread = tail
        .iter()
        .map(|u| distance(u, &centroid))
        .fold(0.0f64, f64::max);
    let mut lipschitz = (8.0 * spread * spread).max(1e-6);

    let mut gap = f64::INFINITY;
    for _ in 0..DUAL_MAX_ITERS {
        let (psi_y, grad_y, xstar) = dual_value_grad(set, tail, &y)?;
        let (f_xstar, _) = objective(&xstar, tail);
        if f_xstar < best_obj {
            best_obj = f_xstar;
            best_x = xstar;
        }
        best_dual = best_dual.max(psi_y);
        gap = (best_obj - best_dual).max(0.0);
        if gap <= solver_tol {
            break;
        }

        // backtracking ascent step from y
        let mut step_ok = None;
        for _ in 0..40 {
            let cand: Vec<f64> = y
                .iter()
                .zip(&grad_y)
                .map(|(&wi, &gi)| wi + gi / lipschitz)
                .collect();
            let cand = project_simplex(&cand);
            let (psi_c, _, _) = dual_value_grad(set, tail, &cand)?;
            let dw: f64 = cand
                .iter()
                .zip(&y)
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            let linear: f64 = cand
                .iter()
                .zip(&y)
                .zip(&grad_y)
                .map(|((a, b), g)| (a - b) * g)
                .sum();
            // ascent analogue of the descent lemma test
            if psi_c >= psi_y + linear - 0.5 * lipschitz * dw - 1e-15 {
                step_ok = Some((cand, psi_c));
                break;
            }
            lipschitz *= 2.0;
        }
        let (w_next, psi_next) = match step_ok {
            Some(v) => v,
            None => break, // cannot make progress at this precision
        };
        best_dual = best_dual.max(psi_next);

        let t_next = 0.5 * (1.0 + (1.0 + 4.0 * t_momentum * t_momentum).sqrt());
        let beta = (t_momentum - 1.0) / t_next;
        y = w_next
            .iter()
            .zip(&w)
            .map(|(a, b)| a + beta * (a - b))
            .collect();
        y = project_simplex(&y);
        w = w_next;
        t_momentum = t_next;
        iterations += 1;

        gap = (best_obj - best_dual).max(0.0);
        if gap <= solver_tol {
            break;
        }
        lipschitz = (lipschitz * 0.9).max(1e-6);
    }

    Ok(AsymptoticCenterResult {
        center: best_x,
        objective: best_obj,
        gap_certificate: gap,
        iterations,
        tail_start: seq.tail_start(),
        tail_len: tail.len(),
    })
}

/// Grid box and pitch for the exhaustive oracle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub pitch: f64,
    /// Membership filter threshold; defaults to the shared membership tol.
    pub membership_tol: f64,
}

impl GridSpec {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>, pitch: f64) -> Self {
        GridSpec {
            lower,
            upper,
            pitch,
            membership_tol: MEMBERSHIP_TOL,
        }
    }
}

/// Exhaustive grid minimizer of the tail objective, for dimensions <= 3.
/// Ties break lexicographically (the first grid point in scan order wins).
pub fn asymptotic_center_bruteforce(
    seq: &SequencePrefix,
    set: &ConvexSet,
    grid: &GridSpec,
) -> Result<Vector> {
    let dim = seq.dim();
    if dim > 3 {
        return Err(Error::InvalidArgument(
            "brute-force oracle supports dim <= 3".into(),
        ));
    }
    if grid.lower.len() != dim || grid.upper.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: grid.lower.len(),
        });
    }
    if !(grid.pitch > 0.0) {
        return Err(Error::InvalidArgument("grid pitch must be > 0".into()));
    }

    // objective only depends on distinct tail points
    let mut distinct: Vec<Vector> = Vec::new();
    for u in seq.tail() {
        if !distinct.iter().any(|v| distance(v, u) <= 1e-12) {
            distinct.push(u.clone());
        }
    }

    let counts: Vec<usize> = (0..dim)
        .map(|j| ((grid.upper[j] - grid.lower[j]) / grid.pitch).round() as usize + 1)
        .collect();
    let total: usize = counts.iter().product();
    let mut best: Option<(f64, Vector)> = None;
    // linear scan in lexicographic order; strict improvement means the
    // first grid point wins ties
    for flat in 0..total {
        let mut rem = flat;
        let mut coords = vec![0.0; dim];
        for j in (0..dim).rev() {
            coords[j] = grid.lower[j] + (rem % counts[j]) as f64 * grid.pitch;
            rem /= counts[j];
        }
        let point = Vector(coords);
        if set.distance(&point)? <= grid.membership_tol {
            let (val, _) = objective(&point, &distinct);
            if best.as_ref().map_or(true, |(b, _)| val < *b) {
                best = Some((val, point));
            }
        }
    }
    let (_, point) =
        best.ok_or_else(|| Error::InvalidArgument("no feasible grid point found".into()))?;
    Ok(point)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CenterSpreadReport {
    pub full_center: Vector,
    pub subsequence_centers: Vec<Vector>,
    pub max_center_spread: f64,
}

/// Asymptotic centers of the full tail and of arithmetic subsequences, and
/// the maximal pairwise distance between them. For an Opial sequence the
/// spread vanishes; the report documents how far a given prefix is from
/// that.
pub fn subsequence_center_invariance(
    seq: &SequencePrefix,
    set: &ConvexSet,
    stride_subseqs: &[(usize, usize)],
    solver_tol: f64,
) -> Result<CenterSpreadReport> {
    let full = asymptotic_center(seq, set, solver_tol)?;
    let mut centers = vec![full.center.clone()];
    let mut sub_centers = Vec::new();
    for &(stride, offset) in stride_subseqs {
        let sub = seq.arithmetic_subsequence(stride, offset)?;
        let r = asymptotic_center(&sub, set, solver_tol)?;
        sub_centers.push(r.center.clone());
        centers.push(r.center);
    }
    let mut spread = 0.0f64;
    for i in 0..centers.len() {
        for j in i + 1..centers.len() {
            spread = spread.max(distance(&centers[i], &centers[j]));
        }
    }
    Ok(CenterSpreadReport {
        full_center: full.center,
        subsequence_centers: sub_centers,
        max_center_spread: spread,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec2(x: f64, y: f64) -> Vector {
        Vector(vec![x, y])
    }

    fn alternating(n: usize, tail: usize) -> SequencePrefix {
        let pts = (0..n)
            .map(|k| vec2(if k % 2 == 0 { 1.0 } else { -1.0 }, 0.0))
            .collect();
        SequencePrefix::new(pts, tail).unwrap()
    }

    fn vertical_line() -> ConvexSet {
        ConvexSet::affine_subspace(vec2(0.0, 0.0), vec![vec2(0.0, 1.0)]).unwrap()
    }

    #[test]
    fn simplex_projection_basics() {
        let p = project_simplex(&[0.5, 0.5]);
        assert!((p[0] - 0.5).abs() < 1e-12);
        let p = project_simplex(&[2.0, 0.0]);
        assert!((p[0] - 1.0).abs() < 1e-12 && p[1].abs() < 1e-12);
        let p = project_simplex(&[0.2, 0.3, 0.1]);
        let s: f64 = p.iter().sum();
        assert!((s - 1.0).abs() < 1e-12);
        assert!(p.iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn center_of_alternating_on_vertical_line() {
        let seq = alternating(32, 8);
        let r = asymptotic_center(&seq, &vertical_line(), 1e-10).unwrap();
        assert!(distance(&r.center, &vec2(0.0, 0.0)) < 1e-5, "{:?}", r.center);
        assert!((r.objective - 1.0).abs() < 1e-8);
        assert!(r.gap_certificate <= 1e-10);
    }

    #[test]
    fn center_of_constant_sequence_is_the_point() {
        let p = vec2(0.7, -0.2);
        let seq = SequencePrefix::new(vec![p.clone(); 8], 2).unwrap();
        let ball = ConvexSet::ball(vec2(0.0, 0.0), 5.0).unwrap();
        let r = asymptotic_center(&seq, &ball, 1e-10).unwrap();
        assert!(distance(&r.center, &p) < 1e-6);
        assert!(r.objective < 1e-10);
    }

    #[test]
    fn bruteforce_symmetry_whole_space() {
        let seq = alternating(16, 4);
        let grid = GridSpec::new(vec![-2.0, -2.0], vec![2.0, 2.0], 0.01);
        let c = asymptotic_center_bruteforce(&seq, &ConvexSet::whole_space(2), &grid).unwrap();
        assert!(distance(&c, &vec2(0.0, 0.0)) < 1e-9);
    }

    #[test]
    fn bruteforce_singleton_set() {
        let seq = alternating(16, 4);
        let p = vec2(0.25, 0.5);
        let mut grid = GridSpec::new(vec![-1.0, -1.0], vec![1.0, 1.0], 0.25);
        grid.membership_tol = 1e-9;
        let c =
            asymptotic_center_bruteforce(&seq, &ConvexSet::singleton(p.clone()), &grid).unwrap();
        assert_eq!(c, p);
    }

    #[test]
    fn solver_matches_bruteforce_on_line() {
        let seq = alternating(32, 8);
        let set = vertical_line();
        let grid = GridSpec::new(vec![-2.0, -2.0], vec![2.0, 2.0], 0.001);
        let oracle = asymptotic_center_bruteforce(&seq, &set, &grid).unwrap();
        let solved = asymptotic_center(&seq, &set, 1e-10).unwrap();
        assert!(distance(&oracle, &solved.center) <= 0.001 + 1e-5);
    }

    #[test]
    fn constant_sequence_spread_is_zero() {
        let p = vec2(1.0, 1.0);
        let seq = SequencePrefix::new(vec![p.clone(); 12], 3).unwrap();
        let r = subsequence_center_invariance(
            &seq,
            &ConvexSet::whole_space(2),
            &[(2, 0), (2, 1)],
            1e-10,
        )
        .unwrap();
        assert!(r.max_center_spread < 1e-8);
    }

    #[test]
    fn centroid_law_for_distinct_unit_vectors() {
        let k = 16;
        let points: Vec<Vector> = (0..k).map(|n| Vector::unit(k, n)).collect();
        let seq = SequencePrefix::new(points, 0).unwrap();
        let r = asymptotic_center(&seq, &ConvexSet::whole_space(k), 1e-12).unwrap();
        let want = 1.0 / (k as f64).sqrt();
        assert!(
            (norm(&r.center) - want).abs() < 1e-7,
            "norm {} want {}",
            norm(&r.center),
            want
        );
    }
}
