mod common;

use common::*;
use located_core::algorithms::{default_r_max, DEFAULT_DEPTH};
use located_core::cover::DEFAULT_MAX_DEPTH;
use located_core::instances::{interval_oracle, points_oracle, union_oracle};
use located_core::rat::{int, parse_rat, pow2_neg, rat};
use located_core::{distance, point_extract, FormalBall, MetricSpace, Point, Rat};
use num_traits::Signed;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn arb_rat(bound: i64) -> impl Strategy<Value = Rat> {
    (-bound * 64..=bound * 64, 1i64..=64).prop_map(|(n, d)| rat(n, d))
}

fn arb_pos_rat(bound: i64) -> impl Strategy<Value = Rat> {
    (1..=bound * 64, 1i64..=64).prop_map(|(n, d)| rat(n, d))
}

fn arb_box_point(dim: usize, bound: i64) -> impl Strategy<Value = Point> {
    proptest::collection::vec((-bound * 16..=bound * 16).prop_map(|n| rat(n, 16)), dim)
        .prop_map(Point::Coords)
}

fn arb_line_ball() -> impl Strategy<Value = FormalBall> {
    (arb_rat(4), arb_pos_rat(3)).prop_map(|(c, r)| line_ball(c, r))
}

fn finite_on_line(xs: &[i64]) -> MetricSpace {
    let m = xs
        .iter()
        .map(|a| xs.iter().map(|b| int((a - b).abs())).collect())
        .collect();
    MetricSpace::finite(m).unwrap()
}

proptest! {
    #[test]
    fn rationals_round_trip(x in arb_rat(1000)) {
        prop_assert_eq!(parse_rat(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn box_metric_axioms(p in arb_box_point(3, 5), q in arb_box_point(3, 5), r in arb_box_point(3, 5)) {
        let m = MetricSpace::boxed(3, int(5)).unwrap();
        let pq = m.dist(&p, &q).unwrap();
        prop_assert_eq!(&pq, &m.dist(&q, &p).unwrap());
        prop_assert_eq!(pq == int(0), p == q);
        prop_assert!(m.dist(&p, &r).unwrap() <= pq + m.dist(&q, &r).unwrap());
    }

    #[test]
    fn finite_metric_axioms(i in 0usize..6, j in 0usize..6, k in 0usize..6) {
        let m = finite_on_line(&[0, 1, 3, 7, 8, 20]);
        let (p, q, r) = (Point::Index(i), Point::Index(j), Point::Index(k));
        let pq = m.dist(&p, &q).unwrap();
        prop_assert_eq!(&pq, &m.dist(&q, &p).unwrap());
        prop_assert_eq!(pq == int(0), i == j);
        prop_assert!(m.dist(&p, &r).unwrap() <= pq + m.dist(&q, &r).unwrap());
    }

    #[test]
    fn strict_implies_weak(a in arb_line_ball(), b in arb_line_ball()) {
        let m = MetricSpace::Line;
        if m.ball_lt(&a, &b).unwrap() {
            prop_assert!(m.ball_le(&a, &b).unwrap());
        }
    }

    #[test]
    fn orders_compose(a in arb_line_ball(), b in arb_line_ball(), c in arb_line_ball()) {
        let m = MetricSpace::Line;
        let (le_ab, le_bc) = (m.ball_le(&a, &b).unwrap(), m.ball_le(&b, &c).unwrap());
        let (lt_ab, lt_bc) = (m.ball_lt(&a, &b).unwrap(), m.ball_lt(&b, &c).unwrap());
        if le_ab && le_bc { prop_assert!(m.ball_le(&a, &c).unwrap()); }
        if lt_ab && lt_bc { prop_assert!(m.ball_lt(&a, &c).unwrap()); }
        if lt_ab && le_bc { prop_assert!(m.ball_lt(&a, &c).unwrap()); }
    }

    #[test]
    fn refine_members_sit_below(b in arb_line_ball(), extra in 1i32..4) {
        let m = MetricSpace::Line;
        let k = located_core::rat::least_dyadic_exponent(&(b.radius() / int(2))) + extra - 1;
        let members = m.refine(&b, k).unwrap();
        prop_assert!(!members.is_empty());
        for c in &members {
            prop_assert!(m.ball_le(c, &b).unwrap());
            prop_assert!(c.radius() * int(2) <= *b.radius());
        }
        prop_assert_eq!(members, m.refine(&b, k).unwrap());
    }

    #[test]
    fn box_refine_members_sit_below(c in arb_box_point(2, 3), r in arb_pos_rat(2)) {
        let m = MetricSpace::boxed(2, int(3)).unwrap();
        let b = FormalBall::new(c, r).unwrap();
        let k = located_core::rat::least_dyadic_exponent(&(b.radius() / int(2)));
        for member in m.refine(&b, k).unwrap() {
            prop_assert!(m.ball_le(&member, &b).unwrap());
        }
    }

    #[test]
    fn cover_is_monotone_in_the_family(
        c in arb_rat(2),
        members in proptest::collection::vec((arb_rat(3), arb_pos_rat(2)), 1..4),
        extra in (arb_rat(3), arb_pos_rat(2)),
    ) {
        let m = MetricSpace::Line;
        let a = line_ball(c, int(1));
        let u: Vec<FormalBall> = members.iter().map(|(c, r)| line_ball(c.clone(), r.clone())).collect();
        if let located_core::CoverVerdict::Covered(w) = m.kov_check(&a, &u, 6).unwrap() {
            let mut bigger = u.clone();
            bigger.push(line_ball(extra.0, extra.1));
            prop_assert!(m.verify_cover_witness(&a, &bigger, &w).unwrap());
            prop_assert!(m.kov_check(&a, &bigger, w.depth).unwrap().is_covered());
        }
    }
}

#[test]
fn local_net_covers_sampled_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let line = MetricSpace::Line;
    let boxed = MetricSpace::boxed(2, int(3)).unwrap();
    let settings = [
        (rat(1, 3), int(1), rat(1, 2)),
        (rat(-5, 2), rat(7, 3), rat(1, 5)),
        (int(0), int(2), int(3)),
    ];
    for (x, radius, step) in settings {
        let center = Point::scalar(x.clone());
        let net = line.local_net(&center, &radius, &step).unwrap();
        for _ in 0..1000 {
            let p = &x + rat(rng.gen_range(-999..=999), 1000) * &radius;
            let p = Point::scalar(p);
            assert!(net.iter().any(|z| line.dist(&p, z).unwrap() <= step));
        }
        let center = Point::Coords(vec![x.clone() / int(2), int(1)]);
        let net = boxed.local_net(&center, &radius, &step).unwrap();
        let mut tested = 0;
        while tested < 1000 {
            let coords = center.coords().unwrap();
            let p: Vec<Rat> = coords
                .iter()
                .map(|c| c + rat(rng.gen_range(-999..=999), 1000) * &radius)
                .collect();
            let p = Point::Coords(p);
            if boxed.check_point(&p).is_err() {
                continue;
            }
            tested += 1;
            assert!(net.iter().any(|z| boxed.dist(&p, z).unwrap() <= step));
        }
    }
}

#[test]
fn covered_verdicts_are_semantically_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let m = MetricSpace::Line;
    let max_depth = 8;
    let mut covered = 0;
    for _ in 0..60 {
        let c = rand_rat(&mut rng, 2, 8);
        let r = rand_pos_rat(&mut rng, 2, 8);
        let a = line_ball(c.clone(), r.clone());
        let members: Vec<(Rat, Rat)> = (0..rng.gen_range(1..=3))
            .map(|_| (&c + rand_rat(&mut rng, 2, 8), rand_pos_rat(&mut rng, 2, 8)))
            .collect();
        let u: Vec<FormalBall> = members
            .iter()
            .map(|(c, r)| line_ball(c.clone(), r.clone()))
            .collect();
        if !m.kov_check(&a, &u, max_depth).unwrap().is_covered() {
            continue;
        }
        covered += 1;
        let depth_bound = &r - pow2_neg(max_depth as i32);
        for _ in 0..10_000 {
            let p = &c + rat(rng.gen_range(-99_999..=99_999), 100_000) * &depth_bound;
            assert!(
                members.iter().any(|(cu, ru)| (&p - cu).abs() < *ru),
                "{p} escapes {members:?}"
            );
        }
    }
    assert!(covered >= 5, "only {covered} covered cases sampled");
}

#[test]
fn default_depth_covers_example_pair() {
    let m = MetricSpace::Line;
    let a = line_ball(int(0), int(1));
    let u = [
        line_ball(rat(-2, 3), rat(3, 4)),
        line_ball(rat(2, 3), rat(3, 4)),
    ];
    assert!(m.kov_check(&a, &u, DEFAULT_MAX_DEPTH).unwrap().is_covered());
    assert_eq!(
        closed_cover_slack(
            &int(0),
            &int(1),
            &[(rat(-2, 3), rat(3, 4)), (rat(2, 3), rat(3, 4))]
        ),
        rat(1, 12)
    );
}

#[test]
fn distance_matches_closed_form_for_shipped_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let line = MetricSpace::Line;
    let tol = pow2_neg(20);
    let pieces = vec![(int(-3), int(-2)), (rat(1, 2), rat(5, 4))];
    let ys = vec![int(0), int(3), rat(-7, 2)];
    type Truth = Box<dyn Fn(&Rat) -> Rat>;
    let cases: Vec<(located_core::PositivityOracle, Truth)> = vec![
        (
            interval_oracle(&line, int(0), int(1)).unwrap(),
            Box::new(|x| interval_distance(x, &int(0), &int(1))),
        ),
        (
            union_oracle(&line, pieces.clone()).unwrap(),
            Box::new(move |x| union_distance(x, &pieces)),
        ),
        (
            points_oracle(&line, ys.iter().cloned().map(Point::scalar).collect()).unwrap(),
            Box::new(move |x| points_distance(x, &ys)),
        ),
    ];
    for (oracle, truth) in &cases {
        for _ in 0..100 {
            let x = rand_rat(&mut rng, 10, 97);
            let bounds = distance(oracle, &Point::scalar(x.clone()), 20, &default_r_max()).unwrap();
            let d = truth(&x);
            assert!(bounds.lo <= d && d <= bounds.hi, "{}: {x}", oracle.label());
            assert!((bounds.midpoint() - &d).abs() <= tol);
            assert!(bounds.oracle_calls <= 64 + 20);
        }
    }
}

#[test]
fn extracted_chains_keep_their_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let line = MetricSpace::Line;
    let oracle = union_oracle(&line, vec![(int(0), int(1)), (int(4), int(4))]).unwrap();
    let mut done = 0;
    while done < 100 {
        let b = line_ball(rand_rat(&mut rng, 6, 16), rand_pos_rat(&mut rng, 3, 16));
        if !oracle.is_positive(&b).unwrap() {
            continue;
        }
        done += 1;
        let found = point_extract(&oracle, &b, 12, DEFAULT_DEPTH).unwrap();
        assert_eq!(found.chain[0], b);
        for w in found.chain.windows(2) {
            assert!(line.ball_le(&w[1], &w[0]).unwrap());
            assert!(w[1].radius() * int(2) <= *w[0].radius());
        }
        assert!(found.chain.iter().all(|c| oracle.is_positive(c).unwrap()));
        assert!(found.last().radius() <= &pow2_neg(12));
        let d = union_distance(
            &scalar(&found.approx),
            &[(int(0), int(1)), (int(4), int(4))],
        );
        assert!(d <= pow2_neg(12));
    }
}
