//! Closed convex set descriptors with closed-form projections, distances,
//! and the set algebra the diagnostics need.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{distance as vdist, inner, norm, Vector};

/// Orthonormality tolerance for affine subspace bases.
pub const BASIS_ORTHO_TOL: f64 = 1e-10;
/// Default membership test threshold: x is in the set when d(set, x) <= this.
pub const MEMBERSHIP_TOL: f64 = 1e-8;
/// Dykstra cycle budget.
pub const DYKSTRA_MAX_CYCLES: usize = 10_000;
/// Dykstra convergence threshold on per-cycle movement.
pub const DYKSTRA_TOL: f64 = 1e-12;

/// A closed affine subspace: `anchor + span(basis)` with an orthonormal basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffinePart {
    pub anchor: Vector,
    pub basis: Vec<Vector>,
}

impl AffinePart {
    pub fn validate(&self) -> Result<()> {
        let dim = self.anchor.dim();
        for b in &self.basis {
            b.check_dim(dim)?;
        }
        if self.basis.len() > dim {
            return Err(Error::InvalidArgument(
                "basis larger than ambient dimension".into(),
            ));
        }
        for (i, bi) in self.basis.iter().enumerate() {
            for (j, bj) in self.basis.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                let got = inner(bi, bj)?;
                if (got - want).abs() > BASIS_ORTHO_TOL {
                    return Err(Error::InvalidArgument(format!(
                        "basis not orthonormal: <b{i}, b{j}> = {got}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn project(&self, x: &Vector) -> Result<Vector> {
        let shifted = x.sub(&self.anchor);
        let mut p = self.anchor.clone();
        for b in &self.basis {
            let t = inner(&shifted, b)?;
            p = p.axpy(t, b);
        }
        Ok(p)
    }
}

/// Descriptor of a closed convex set with a computable projection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum ConvexSet {
    WholeSpace {
        dim: usize,
    },
    Singleton {
        point: Vector,
    },
    Ball {
        center: Vector,
        radius: f64,
    },
    AffineSubspace {
        #[serde(flatten)]
        affine: AffinePart,
    },
    /// `{x : <normal, x> <= offset}`.
    Halfspace {
        normal: Vector,
        offset: f64,
    },
    /// Coordinatewise bounds; `null` means unbounded on that side.
    Box {
        lower: Vec<Option<f64>>,
        upper: Vec<Option<f64>>,
    },
    NonnegativeCone {
        dim: usize,
    },
    /// Ball intersected with an affine subspace containing the ball center;
    /// the projection is the exact composition `P_ball ∘ P_subspace`.
    BallCapSubspace {
        center: Vector,
        radius: f64,
        subspace: AffinePart,
    },
    /// Arbitrary intersection, projected iteratively with Dykstra.
    GeneralIntersection {
        sets: Vec<ConvexSet>,
    },
}

/// Result of a projection: nearest point, distance from the input, and
/// whether it came from a closed form or an iterative scheme.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectionResult {
    pub point: Vector,
    pub distance: f64,
    pub exact: bool,
    /// Final per-cycle movement when the iterative path was used.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterative_gap: Option<f64>,
}

impl ConvexSet {
    pub fn whole_space(dim: usize) -> Self {
        ConvexSet::WholeSpace { dim }
    }

    pub fn singleton(point: Vector) -> Self {
        ConvexSet::Singleton { point }
    }

    pub fn ball(center: Vector, radius: f64) -> Result<Self> {
        let s = ConvexSet::Ball { center, radius };
        s.validate()?;
        Ok(s)
    }

    pub fn affine_subspace(anchor: Vector, basis: Vec<Vector>) -> Result<Self> {
        let s = ConvexSet::AffineSubspace {
            affine: AffinePart { anchor, basis },
        };
        s.validate()?;
        Ok(s)
    }

    pub fn halfspace(normal: Vector, offset: f64) -> Result<Self> {
        let s = ConvexSet::Halfspace { normal, offset };
        s.validate()?;
        Ok(s)
    }

    pub fn boxed(lower: Vec<Option<f64>>, upper: Vec<Option<f64>>) -> Result<Self> {
        let s = ConvexSet::Box { lower, upper };
        s.validate()?;
        Ok(s)
    }

    pub fn ball_cap_subspace(center: Vector, radius: f64, subspace: AffinePart) -> Result<Self> {
        let s = ConvexSet::BallCapSubspace {
            center,
            radius,
            subspace,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn intersection(sets: Vec<ConvexSet>) -> Result<Self> {
        let s = ConvexSet::GeneralIntersection { sets };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ConvexSet::WholeSpace { dim } | ConvexSet::NonnegativeCone { dim } => {
                if *dim == 0 {
                    return Err(Error::InvalidArgument("dim must be >= 1".into()));
                }
            }
            ConvexSet::Singleton { .. } => {}
            ConvexSet::Ball { radius, .. } => {
                if !(*radius > 0.0) {
                    return Err(Error::InvalidArgument("ball radius must be > 0".into()));
                }
            }
            ConvexSet::AffineSubspace { affine } => affine.validate()?,
            ConvexSet::Halfspace { normal, .. } => {
                if norm(normal) <= 0.0 {
                    return Err(Error::InvalidArgument(
                        "halfspace normal must be nonzero".into(),
                    ));
                }
            }
            ConvexSet::Box { lower, upper } => {
                if lower.len() != upper.len() || lower.is_empty() {
                    return Err(Error::InvalidArgument(
                        "box bounds must be nonempty and of equal length".into(),
                    ));
                }
                for (lo, hi) in lower.iter().zip(upper) {
                    if let (Some(lo), Some(hi)) = (lo, hi) {
                        if lo > hi {
                            return Err(Error::InvalidArgument(format!(
                                "box bound {lo} > {hi}"
                            )));
                        }
                    }
                }
            }
            ConvexSet::BallCapSubspace {
                center,
                radius,
                subspace,
            } => {
                if !(*radius > 0.0) {
                    return Err(Error::InvalidArgument("ball radius must be > 0".into()));
                }
                subspace.validate()?;
                center.check_dim(subspace.anchor.dim())?;
                let p = subspace.project(center)?;
                let d = vdist(&p, center);
                if d > MEMBERSHIP_TOL {
                    return Err(Error::InvalidArgument(format!(
                        "ball center must lie in the subspace (distance {d:.3e})"
                    )));
                }
            }
            ConvexSet::GeneralIntersection { sets } => {
                if sets.is_empty() {
                    return Err(Error::InvalidArgument(
                        "intersection needs at least one set".into(),
                    ));
                }
                let dim = sets[0].ambient_dim();
                for s in sets {
                    s.validate()?;
                    if s.ambient_dim() != dim {
                        return Err(Error::DimensionMismatch {
                            expected: dim,
                            got: s.ambient_dim(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn ambient_dim(&self) -> usize {
        match self {
            ConvexSet::WholeSpace { dim } | ConvexSet::NonnegativeCone { dim } => *dim,
            ConvexSet::Singleton { point } => point.dim(),
            ConvexSet::Ball { center, .. } => center.dim(),
            ConvexSet::AffineSubspace { affine } => affine.anchor.dim(),
            ConvexSet::Halfspace { normal, .. } => normal.dim(),
            ConvexSet::Box { lower, .. } => lower.len(),
            ConvexSet::BallCapSubspace { center, .. } => center.dim(),
            ConvexSet::GeneralIntersection { sets } => sets[0].ambient_dim(),
        }
    }

    /// Nearest point of the set.
    pub fn project(&self, x: &Vector) -> Result<ProjectionResult> {
        x.check_dim(self.ambient_dim())?;
        let (point, exact, gap) = match self {
            ConvexSet::WholeSpace { .. } => (x.clone(), true, None),
            ConvexSet::Singleton { point } => (point.clone(), true, None),
            ConvexSet::Ball { center, radius } => {
                (project_ball(x, center, *radius), true, None)
            }
            ConvexSet::AffineSubspace { affine } => (affine.project(x)?, true, None),
            ConvexSet::Halfspace { normal, offset } => {
                let excess = inner(normal, x)? - offset;
                if excess <= 0.0 {
                    (x.clone(), true, None)
                } else {
                    let nn = inner(normal, normal)?;
                    (x.axpy(-excess / nn, normal), true, None)
                }
            }
            ConvexSet::Box { lower, upper } => {
                let coords = x
                    .0
                    .iter()
                    .zip(lower.iter().zip(upper))
                    .map(|(&v, (lo, hi))| {
                        let v = match lo {
                            Some(lo) => v.max(*lo),
                            None => v,
                        };
                        match hi {
                            Some(hi) => v.min(*hi),
                            None => v,
                        }
                    })
                    .collect();
                (Vector(coords), true, None)
            }
            ConvexSet::NonnegativeCone { .. } => {
                (Vector(x.0.iter().map(|v| v.max(0.0)).collect()), true, None)
            }
            ConvexSet::BallCapSubspace {
                center,
                radius,
                subspace,
            } => {
                let y = subspace.project(x)?;
                (project_ball(&y, center, *radius), true, None)
            }
            ConvexSet::GeneralIntersection { sets } => {
                let (p, gap) = dykstra(sets, x)?;
                (p, false, Some(gap))
            }
        };
        let distance = vdist(x, &point);
        Ok(ProjectionResult {
            point,
            distance,
            exact,
            iterative_gap: gap,
        })
    }

    /// Distance to the set.
    pub fn distance(&self, x: &Vector) -> Result<f64> {
        Ok(self.project(x)?.distance)
    }

    /// Membership test: distance at most `tol`.
    pub fn contains(&self, x: &Vector, tol: f64) -> Result<bool> {
        Ok(self.distance(x)? <= tol)
    }

    /// Orthonormal basis of `span{c_i - c_0}` from samples of the set.
    /// For an affine subspace the stored basis is returned exactly.
    pub fn difference_span_basis(&self, samples: &[Vector]) -> Result<Vec<Vector>> {
        for s in samples {
            let d = self.distance(s)?;
            if d > MEMBERSHIP_TOL {
                return Err(Error::SampleOutsideSet {
                    distance: d,
                    tol: MEMBERSHIP_TOL,
                });
            }
        }
        if let ConvexSet::AffineSubspace { affine } = self {
            return Ok(affine.basis.clone());
        }
        if samples.len() < 2 {
            return Ok(Vec::new());
        }
        let diffs: Vec<Vector> = samples[1..].iter().map(|s| s.sub(&samples[0])).collect();
        Ok(gram_schmidt(&diffs))
    }

    /// Closed affine hull as a descriptor.
    pub fn affine_hull(&self) -> Result<ConvexSet> {
        match self {
            ConvexSet::WholeSpace { dim } => Ok(ConvexSet::WholeSpace { dim: *dim }),
            ConvexSet::Singleton { point } => Ok(ConvexSet::AffineSubspace {
                affine: AffinePart {
                    anchor: point.clone(),
                    basis: Vec::new(),
                },
            }),
            ConvexSet::Ball { center, .. } => Ok(ConvexSet::WholeSpace {
                dim: center.dim(),
            }),
            ConvexSet::AffineSubspace { affine } => Ok(ConvexSet::AffineSubspace {
                affine: affine.clone(),
            }),
            ConvexSet::Halfspace { normal, .. } => Ok(ConvexSet::WholeSpace {
                dim: normal.dim(),
            }),
            ConvexSet::Box { lower, upper } => {
                let dim = lower.len();
                let mut anchor = vec![0.0; dim];
                let mut basis = Vec::new();
                for j in 0..dim {
                    match (&lower[j], &upper[j]) {
                        (Some(lo), Some(hi)) if lo == hi => anchor[j] = *lo,
                        (lo, hi) => {
                            // free direction; anchor stays inside the slab
                            if let Some(lo) = lo {
                                anchor[j] = anchor[j].max(*lo);
                            }
                            if let Some(hi) = hi {
                                anchor[j] = anchor[j].min(*hi);
                            }
                            basis.push(Vector::unit(dim, j));
                        }
                    }
                }
                if basis.len() == dim {
                    Ok(ConvexSet::WholeSpace { dim })
                } else {
                    Ok(ConvexSet::AffineSubspace {
                        affine: AffinePart {
                            anchor: Vector(anchor),
                            basis,
                        },
                    })
                }
            }
            ConvexSet::NonnegativeCone { dim } => Ok(ConvexSet::WholeSpace { dim: *dim }),
            ConvexSet::BallCapSubspace { subspace, .. } => Ok(ConvexSet::AffineSubspace {
                affine: subspace.clone(),
            }),
            ConvexSet::GeneralIntersection { .. } => Err(Error::UnsupportedVariant(
                "affine hull of a general intersection".into(),
            )),
        }
    }
}

fn project_ball(x: &Vector, center: &Vector, radius: f64) -> Vector {
    let d = x.sub(center);
    let n = norm(&d);
    if n <= radius {
        x.clone()
    } else {
        center.axpy(radius / n, &d)
    }
}

fn gram_schmidt(vectors: &[Vector]) -> Vec<Vector> {
    let mut basis: Vec<Vector> = Vec::new();
    for v in vectors {
        let scale = norm(v);
        let mut w = v.clone();
        for b in &basis {
            let t = inner(&w, b).expect("dims checked");
            w = w.axpy(-t, b);
        }
        let n = norm(&w);
        if n > BASIS_ORTHO_TOL * (1.0 + scale) {
            basis.push(w.scale(1.0 / n));
        }
    }
    basis
}

/// Dykstra's alternating projection scheme for an intersection.
///
/// Returns the projection and the final per-cycle movement. An empty
/// intersection is reported through a divergence certificate: the
/// correction vectors grow without bound while the iterate stays
/// bounded away from at least one of the sets.
fn dykstra(sets: &[ConvexSet], x0: &Vector) -> Result<(Vector, f64)> {
    let dim = x0.dim();
    let mut x = x0.clone();
    let mut corrections = vec![Vector::zeros(dim); sets.len()];
    let scale = 1.0 + norm(x0);
    let mut movement = f64::INFINITY;
    let mut midway_correction_norm = 0.0f64;
    let mut final_correction_norm = 0.0f64;
    for _cycle in 0..DYKSTRA_MAX_CYCLES {
        let x_before = x.clone();
        // the iterate can be stationary while corrections still migrate
        // between sets, so convergence must watch both
        let mut correction_change = 0.0f64;
        for (set, p) in sets.iter().zip(corrections.iter_mut()) {
            let shifted = x.add(p);
            let y = set.project(&shifted)?.point;
            let p_next = shifted.sub(&y);
            correction_change = correction_change.max(vdist(&p_next, p));
            *p = p_next;
            x = y;
        }
        movement = vdist(&x, &x_before).max(correction_change);
        let correction_norm = corrections.iter().map(norm).fold(0.0f64, f64::max);
        if correction_norm > 1e8 * scale {
            return Err(Error::InfeasibleIntersection(format!(
                "correction norm {correction_norm:.3e} after {_cycle} cycles"
            )));
        }
        if _cycle == DYKSTRA_MAX_CYCLES / 2 {
            midway_correction_norm = correction_norm;
        }
        final_correction_norm = correction_norm;
        if movement <= DYKSTRA_TOL {
            break;
        }
    }
    // Stalled far from feasibility also certifies an empty intersection.
    let max_dist = sets
        .iter()
        .map(|s| s.distance(&x))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0f64, f64::max);
    if movement <= DYKSTRA_TOL && max_dist > 1e-6 * scale {
        return Err(Error::InfeasibleIntersection(format!(
            "stalled at distance {max_dist:.3e} from the farthest set"
        )));
    }
    // Corrections that are still growing at cycle exhaustion while the
    // iterate stays away from some set witness the linear divergence that
    // Dykstra exhibits on disjoint intersections: for feasible problems the
    // corrections converge to fixed vectors.
    if movement > DYKSTRA_TOL
        && max_dist > 1e-6 * scale
        && final_correction_norm - midway_correction_norm > 1e-3 * scale
    {
        return Err(Error::InfeasibleIntersection(format!(
            "corrections grew from {midway_correction_norm:.3e} to \
             {final_correction_norm:.3e} with residual distance {max_dist:.3e}"
        )));
    }
    Ok((x, movement))
}

/// Deterministic test points: a seeded quasi-random cloud projected onto the
/// set. Reports built from these are reproducible run to run.
pub fn sample_points(set: &ConvexSet, count: usize, seed: u64, spread: f64) -> Result<Vec<Vector>> {
    let dim = set.ambient_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(count);
    for _ in 0..count {
        let raw = Vector(
            (0..dim)
                .map(|_| rng.gen_range(-spread..spread))
                .collect(),
        );
        points.push(set.project(&raw)?.point);
    }
    Ok(points)
}

/// Like [`sample_points`], but the cloud coordinates carry a geometric
/// envelope `spread * 2^-j`. Points produced this way behave like fixed
/// square-summable elements under coordinate drift: their high coordinates
/// are at noise level, so tail inner products against escaping basis
/// vectors vanish within tolerance.
pub fn sample_points_decaying(
    set: &ConvexSet,
    count: usize,
    seed: u64,
    spread: f64,
) -> Result<Vec<Vector>> {
    let dim = set.ambient_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(count);
    for _ in 0..count {
        let raw = Vector(
            (0..dim)
                .map(|j| {
                    let envelope = spread * 0.5f64.powi(j.min(500) as i32);
                    if envelope > 0.0 {
                        rng.gen_range(-envelope..envelope)
                    } else {
                        0.0
                    }
                })
                .collect(),
        );
        points.push(set.project(&raw)?.point);
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec2(x: f64, y: f64) -> Vector {
        Vector(vec![x, y])
    }

    /// Y = {e_0}^perp in the given dimension.
    fn hyperplane_perp_e0(dim: usize) -> ConvexSet {
        let basis = (1..dim).map(|k| Vector::unit(dim, k)).collect();
        ConvexSet::affine_subspace(Vector::zeros(dim), basis).unwrap()
    }

    #[test]
    fn project_onto_perp_hyperplane_drops_first_coordinate() {
        let dim = 6;
        let y = hyperplane_perp_e0(dim);
        let x = Vector::unit(dim, 0).add(&Vector::unit(dim, 1));
        let r = y.project(&x).unwrap();
        assert_eq!(r.point, Vector::unit(dim, 1));
        assert!((r.distance - 1.0).abs() < 1e-15);
        assert!(r.exact);
    }

    #[test]
    fn ball_cap_subspace_composition_value() {
        // C = unit ball ∩ {e_0}^perp; input e_1 + e_{n+1}.
        let dim = 8;
        let y_basis: Vec<Vector> = (1..dim).map(|k| Vector::unit(dim, k)).collect();
        let c = ConvexSet::ball_cap_subspace(
            Vector::zeros(dim),
            1.0,
            AffinePart {
                anchor: Vector::zeros(dim),
                basis: y_basis,
            },
        )
        .unwrap();
        let x = Vector::unit(dim, 1).add(&Vector::unit(dim, 5));
        let r = c.project(&x).unwrap();
        let want = x.scale(1.0 / 2f64.sqrt());
        assert!(vdist(&r.point, &want) < 1e-14);
        assert!((r.distance - (2f64.sqrt() - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn projecting_a_member_is_identity() {
        let sets: Vec<ConvexSet> = vec![
            ConvexSet::whole_space(2),
            ConvexSet::singleton(vec2(0.5, -0.25)),
            ConvexSet::ball(vec2(0.5, -0.25), 2.0).unwrap(),
            ConvexSet::halfspace(vec2(1.0, 1.0), 1.0).unwrap(),
            ConvexSet::boxed(
                vec![Some(0.0), Some(-1.0)],
                vec![Some(1.0), Some(0.0)],
            )
            .unwrap(),
            ConvexSet::NonnegativeCone { dim: 2 },
        ];
        let members = [
            vec2(0.5, -0.25),
            vec2(0.5, -0.25),
            vec2(0.5, -0.25),
            vec2(0.25, 0.25),
            vec2(0.5, -0.25),
            vec2(0.5, 0.25),
        ];
        for (set, m) in sets.iter().zip(&members) {
            let r = set.project(m).unwrap();
            assert!(vdist(&r.point, m) < 1e-12, "{set:?}");
            assert!(r.distance < 1e-12);
        }
    }

    #[test]
    fn distance_examples() {
        let dim = 4;
        let y = hyperplane_perp_e0(dim);
        let x = Vector::unit(dim, 0).add(&Vector::unit(dim, 1));
        assert!((y.distance(&x).unwrap() - 1.0).abs() < 1e-15);

        let ws = ConvexSet::whole_space(3);
        assert_eq!(ws.distance(&Vector(vec![1.0, 2.0, 3.0])).unwrap(), 0.0);

        let ball = ConvexSet::ball(Vector::zeros(3), 1.0).unwrap();
        assert!((ball.distance(&Vector(vec![0.0, 0.0, 2.0])).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn dykstra_matches_composition_on_ball_cap() {
        let dim = 5;
        let y_basis: Vec<Vector> = (1..dim).map(|k| Vector::unit(dim, k)).collect();
        let part = AffinePart {
            anchor: Vector::zeros(dim),
            basis: y_basis.clone(),
        };
        let cap = ConvexSet::ball_cap_subspace(Vector::zeros(dim), 1.0, part.clone()).unwrap();
        let inter = ConvexSet::intersection(vec![
            ConvexSet::ball(Vector::zeros(dim), 1.0).unwrap(),
            ConvexSet::AffineSubspace { affine: part },
        ])
        .unwrap();
        let x = Vector(vec![0.7, 1.4, -0.3, 2.0, 0.1]);
        let a = cap.project(&x).unwrap();
        let b = inter.project(&x).unwrap();
        assert!(a.exact);
        assert!(!b.exact);
        assert!(vdist(&a.point, &b.point) < 1e-6);
    }

    #[test]
    fn dykstra_detects_empty_intersection() {
        let inter = ConvexSet::intersection(vec![
            ConvexSet::ball(vec2(0.0, 0.0), 1.0).unwrap(),
            ConvexSet::ball(vec2(10.0, 0.0), 1.0).unwrap(),
        ])
        .unwrap();
        match inter.project(&vec2(5.0, 0.0)) {
            Err(Error::InfeasibleIntersection(_)) => {}
            other => panic!("expected infeasibility, got {other:?}"),
        }
    }

    #[test]
    fn difference_span_basis_of_segment() {
        // C = {0} x [-1, 1]
        let c = ConvexSet::boxed(vec![Some(0.0), Some(-1.0)], vec![Some(0.0), Some(1.0)]).unwrap();
        let samples = vec![vec2(0.0, -1.0), vec2(0.0, 0.5), vec2(0.0, 1.0)];
        let basis = c.difference_span_basis(&samples).unwrap();
        assert_eq!(basis.len(), 1);
        assert!((basis[0].0[1].abs() - 1.0).abs() < 1e-12);
        assert!(basis[0].0[0].abs() < 1e-12);
    }

    #[test]
    fn difference_span_basis_singleton_and_box() {
        let s = ConvexSet::singleton(vec2(1.0, 2.0));
        assert!(s
            .difference_span_basis(&[vec2(1.0, 2.0), vec2(1.0, 2.0)])
            .unwrap()
            .is_empty());

        let b = ConvexSet::boxed(vec![Some(0.0), Some(0.0)], vec![Some(1.0), Some(1.0)]).unwrap();
        let corners = vec![vec2(0.0, 0.0), vec2(1.0, 0.0), vec2(0.0, 1.0)];
        assert_eq!(b.difference_span_basis(&corners).unwrap().len(), 2);
    }

    #[test]
    fn difference_span_basis_rejects_outsider() {
        let b = ConvexSet::ball(vec2(0.0, 0.0), 1.0).unwrap();
        let samples = vec![vec2(0.0, 0.0), vec2(5.0, 0.0)];
        assert!(matches!(
            b.difference_span_basis(&samples),
            Err(Error::SampleOutsideSet { .. })
        ));
    }

    #[test]
    fn affine_hull_of_segment_is_vertical_line() {
        let c = ConvexSet::boxed(vec![Some(0.0), Some(-1.0)], vec![Some(0.0), Some(1.0)]).unwrap();
        match c.affine_hull().unwrap() {
            ConvexSet::AffineSubspace { affine } => {
                assert_eq!(affine.basis.len(), 1);
                assert_eq!(affine.basis[0], vec2(0.0, 1.0));
                assert_eq!(affine.anchor.0[0], 0.0);
            }
            other => panic!("unexpected hull {other:?}"),
        }
    }

    #[test]
    fn affine_hull_trivia() {
        let p = vec2(3.0, 4.0);
        match ConvexSet::singleton(p.clone()).affine_hull().unwrap() {
            ConvexSet::AffineSubspace { affine } => {
                assert_eq!(affine.anchor, p);
                assert!(affine.basis.is_empty());
            }
            other => panic!("unexpected hull {other:?}"),
        }
        assert!(matches!(
            ConvexSet::ball(vec2(1.0, 1.0), 0.5).unwrap().affine_hull().unwrap(),
            ConvexSet::WholeSpace { dim: 2 }
        ));
    }

    #[test]
    fn ball_cap_requires_center_in_subspace() {
        let dim = 3;
        let part = AffinePart {
            anchor: Vector::zeros(dim),
            basis: vec![Vector::unit(dim, 1), Vector::unit(dim, 2)],
        };
        assert!(ConvexSet::ball_cap_subspace(Vector::unit(dim, 0), 1.0, part).is_err());
    }

    #[test]
    fn sampler_is_deterministic_and_feasible() {
        let ball = ConvexSet::ball(vec2(1.0, 1.0), 0.5).unwrap();
        let a = sample_points(&ball, 8, 7, 4.0).unwrap();
        let b = sample_points(&ball, 8, 7, 4.0).unwrap();
        assert_eq!(a, b);
        for p in &a {
            assert!(ball.distance(p).unwrap() <= MEMBERSHIP_TOL);
        }
    }
}
