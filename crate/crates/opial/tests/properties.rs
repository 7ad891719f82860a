//! Property-based invariants for the geometric primitives, the projections,
//! and the classifiers.

use proptest::prelude::*;

use opial::accenter::{asymptotic_center, asymptotic_center_bruteforce, GridSpec};
use opial::hilbert::{distance, inner, norm, SequencePrefix, Tolerance, Vector};
use opial::monotonicity::{classify, SequenceClass};
use opial::ConvexSet;

const DIM: usize = 4;

fn coord() -> impl Strategy<Value = f64> {
    -10.0..10.0f64
}

fn vector() -> impl Strategy<Value = Vector> {
    prop::collection::vec(coord(), DIM).prop_map(Vector)
}

fn vector_of(dim: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(coord(), dim).prop_map(Vector)
}

fn convex_set() -> impl Strategy<Value = ConvexSet> {
    prop_oneof![
        Just(ConvexSet::whole_space(DIM)),
        vector_of(DIM).prop_map(ConvexSet::singleton),
        (vector_of(DIM), 0.1..5.0f64).prop_map(|(c, r)| ConvexSet::ball(c, r).unwrap()),
        (vector_of(DIM), -5.0..5.0f64).prop_filter_map("nonzero normal", |(n, off)| {
            (norm(&n) > 1e-3).then(|| ConvexSet::halfspace(n, off).unwrap())
        }),
        (prop::collection::vec(-5.0..0.0f64, DIM), prop::collection::vec(0.0..5.0f64, DIM))
            .prop_map(|(lo, hi)| {
                ConvexSet::boxed(
                    lo.into_iter().map(Some).collect(),
                    hi.into_iter().map(Some).collect(),
                )
                .unwrap()
            }),
        Just(ConvexSet::NonnegativeCone { dim: DIM }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cauchy_schwarz(a in vector(), b in vector()) {
        let lhs = inner(&a, &b).unwrap().abs();
        let rhs = norm(&a) * norm(&b);
        prop_assert!(lhs <= rhs + 1e-9 * (1.0 + rhs));
    }

    #[test]
    fn parallelogram_identity(a in vector(), b in vector()) {
        let sum = norm(&a.add(&b)).powi(2) + norm(&a.sub(&b)).powi(2);
        let twice = 2.0 * (norm(&a).powi(2) + norm(&b).powi(2));
        prop_assert!((sum - twice).abs() <= 1e-9 * (1.0 + twice));
    }

    #[test]
    fn triangle_inequality(a in vector(), b in vector(), c in vector()) {
        let lhs = distance(&a, &c);
        let rhs = distance(&a, &b) + distance(&b, &c);
        prop_assert!(lhs <= rhs + 1e-9 * (1.0 + rhs));
    }

    #[test]
    fn projection_is_idempotent(set in convex_set(), x in vector()) {
        let p = set.project(&x).unwrap().point;
        let pp = set.project(&p).unwrap().point;
        prop_assert!(distance(&p, &pp) <= 1e-9);
    }

    #[test]
    fn projection_is_firmly_nonexpansive(set in convex_set(), x in vector(), y in vector()) {
        let px = set.project(&x).unwrap().point;
        let py = set.project(&y).unwrap().point;
        // ‖Px − Py‖² ≤ <Px − Py, x − y>
        let d = px.sub(&py);
        let lhs = norm(&d).powi(2);
        let rhs = inner(&d, &x.sub(&y)).unwrap();
        prop_assert!(lhs <= rhs + 1e-8 * (1.0 + lhs));
    }

    #[test]
    fn projection_minimizes_distance(set in convex_set(), x in vector(), probe in vector()) {
        let r = set.project(&x).unwrap();
        let q = set.project(&probe).unwrap().point;
        // no set member found via another projection may be closer
        prop_assert!(distance(&x, &q) + 1e-9 >= r.distance);
    }

    #[test]
    fn distance_is_one_lipschitz(set in convex_set(), x in vector(), y in vector()) {
        let dx = set.distance(&x).unwrap();
        let dy = set.distance(&y).unwrap();
        prop_assert!((dx - dy).abs() <= distance(&x, &y) + 1e-9);
    }

    #[test]
    fn classifier_is_translation_invariant(
        points in prop::collection::vec(vector(), 6..14),
        c in vector(),
        shift in vector(),
    ) {
        let tol = Tolerance::default();
        let seq = SequencePrefix::new(points.clone(), points.len() / 2).unwrap();
        let shifted = SequencePrefix::new(
            points.iter().map(|p| p.add(&shift)).collect(),
            points.len() / 2,
        )
        .unwrap();
        let rep = classify(&seq, std::slice::from_ref(&c), tol).unwrap();
        let rep_shift = classify(&shifted, &[c.add(&shift)], tol).unwrap();
        for class in opial::monotonicity::ALL_CLASSES {
            // statuses agree up to the witness payload
            let a = rep.status(class);
            let b = rep_shift.status(class);
            prop_assert_eq!(
                std::mem::discriminant(a),
                std::mem::discriminant(b),
                "class {:?}: {:?} vs {:?}",
                class,
                a,
                b
            );
        }
    }

    #[test]
    fn fejer_implies_the_full_chain(
        start in vector(),
        c in vector(),
        lambda in 0.1..1.0f64,
    ) {
        // contraction toward c is Fejér wrt {c}; the chain must follow
        let mut points = vec![start.clone()];
        for _ in 0..12 {
            let last = points.last().unwrap();
            points.push(last.axpy(lambda, &c.sub(last)));
        }
        let seq = SequencePrefix::new(points, 6).unwrap();
        let rep = classify(&seq, std::slice::from_ref(&c), Tolerance::default()).unwrap();
        prop_assert!(rep.status(SequenceClass::Fejer).holds());
        prop_assert!(rep.status(SequenceClass::FejerStar).holds());
        prop_assert!(rep.status(SequenceClass::QuasiFejerI).holds());
        prop_assert!(rep.status(SequenceClass::QuasiFejerII).holds());
        prop_assert!(rep.status(SequenceClass::QuasiFejerIII).holds());
        prop_assert!(!rep.status(SequenceClass::Opial).fails());
    }

    #[test]
    fn center_solver_matches_bruteforce_in_the_plane(
        pts in prop::collection::vec(prop::collection::vec(-1.0..1.0f64, 2), 4..8),
    ) {
        let points: Vec<Vector> = pts.into_iter().map(Vector).collect();
        let seq = SequencePrefix::new(points, 0).unwrap();
        let space = ConvexSet::whole_space(2);
        let solver = asymptotic_center(&seq, &space, 1e-10).unwrap();
        let grid = GridSpec::new(vec![-1.5, -1.5], vec![1.5, 1.5], 0.01);
        let oracle = asymptotic_center_bruteforce(&seq, &space, &grid).unwrap();
        // compare objective values: the grid point is only pitch-accurate,
        // which translates to O(sqrt(pitch)) in position but O(pitch) in value
        let f = |x: &Vector| {
            seq.points()
                .iter()
                .map(|u| distance(x, u).powi(2))
                .fold(0.0f64, f64::max)
        };
        let f_solver = f(&solver.center);
        let f_oracle = f(&oracle);
        prop_assert!(
            f_solver <= f_oracle + 1e-9,
            "solver value {f_solver} worse than oracle {f_oracle}"
        );
        prop_assert!(
            f_oracle - f_solver <= 0.1,
            "oracle value {f_oracle} too far above solver {f_solver}"
        );
    }

    #[test]
    fn center_objective_is_certified(
        pts in prop::collection::vec(prop::collection::vec(-2.0..2.0f64, 3), 3..10),
    ) {
        let points: Vec<Vector> = pts.into_iter().map(Vector).collect();
        let seq = SequencePrefix::new(points.clone(), 0).unwrap();
        let space = ConvexSet::whole_space(3);
        let res = asymptotic_center(&seq, &space, 1e-8).unwrap();
        prop_assert!(res.gap_certificate <= 1e-8);
        // the reported objective matches a recomputation at the center
        let recomputed = points
            .iter()
            .map(|u| distance(&res.center, u).powi(2))
            .fold(0.0f64, f64::max);
        prop_assert!((res.objective - recomputed).abs() <= 1e-12);
    }
}
