//! Property-based invariants over the geometric predicates, the flip
//! operation, and serialization, plus an independent brute-force oracle for
//! the memoized longest-sequence search.

use proptest::prelude::*;
use untangle_core::engine::{longest_untangle, run_policy, Policy};
use untangle_core::generators::{sample_random, RandomKind};
use untangle_core::geometry::{
    check_general_position, convex_hull, format_coord, int, orientation, parse_coord,
    segments_cross, Coord, Orientation, Point, Segment,
};
use untangle_core::json::{matching_from_json, matching_to_json};
use untangle_core::matching::{Flip, Matching, PairState};

fn small_coord() -> impl Strategy<Value = i64> {
    -40i64..=40
}

fn red(x: i64, y: i64) -> Point {
    Point::red(int(x), int(y))
}

fn blue(x: i64, y: i64) -> Point {
    Point::blue(int(x), int(y))
}

fn kind_from(id: u8) -> RandomKind {
    match id % 3 {
        0 => RandomKind::RedOnLine,
        1 => RandomKind::Convex,
        _ => RandomKind::General,
    }
}

proptest! {
    #[test]
    fn orientation_is_antisymmetric(
        (px, py, qx, qy, rx, ry) in (small_coord(), small_coord(), small_coord(), small_coord(), small_coord(), small_coord())
    ) {
        let p = red(px, py);
        let q = red(qx, qy);
        let r = red(rx, ry);
        let a = orientation(&p, &q, &r);
        let b = orientation(&p, &r, &q);
        let expected = match a {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
            Orientation::Collinear => Orientation::Collinear,
        };
        prop_assert_eq!(b, expected);
    }

    #[test]
    fn crossing_is_symmetric(
        (ax, ay, bx, by, cx, cy, dx, dy) in (small_coord(), small_coord(), small_coord(), small_coord(), small_coord(), small_coord(), small_coord(), small_coord())
    ) {
        let mk = |rx, ry, bx2, by2| -> Option<Segment> {
            Segment::new(red(rx, ry), blue(bx2, by2)).ok()
        };
        if let (Some(s1), Some(s2)) = (mk(ax, ay, bx, by), mk(cx, cy, dx, dy)) {
            match (segments_cross(&s1, &s2), segments_cross(&s2, &s1)) {
                (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
                (Err(_), Err(_)) => {}
                other => prop_assert!(false, "asymmetric result {:?}", other),
            }
        }
    }

    #[test]
    fn general_position_check_is_permutation_invariant(
        coords in proptest::collection::vec((small_coord(), small_coord(), any::<bool>()), 3..7),
        shuffle_seed in any::<u64>(),
    ) {
        let points: Vec<Point> = coords
            .iter()
            .map(|&(x, y, is_red)| if is_red { red(x, y) } else { blue(x, y) })
            .collect();
        let mut shuffled = points.clone();
        let mut state = shuffle_seed | 1;
        for i in (1..shuffled.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (state >> 33) as usize % (i + 1));
        }
        let a = check_general_position(&points, false).is_valid();
        let b = check_general_position(&shuffled, false).is_valid();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn hull_is_invariant_under_permutation_and_scaling(
        coords in proptest::collection::vec((small_coord(), small_coord()), 1..9),
        scale in 1i64..=5,
    ) {
        let points: Vec<Point> = coords.iter().map(|&(x, y)| red(x, y)).collect();
        let mut reversed = points.clone();
        reversed.reverse();
        let hull_a = convex_hull(&points);
        let hull_b = convex_hull(&reversed);
        prop_assert_eq!(hull_a.len(), hull_b.len());
        // Same vertex set regardless of input order.
        for p in &hull_a {
            prop_assert!(hull_b.iter().any(|q| q.same_position(p)));
        }
        let scaled: Vec<Point> = points
            .iter()
            .map(|p| Point::red(&p.x * int(scale), &p.y * int(scale)))
            .collect();
        let hull_s = convex_hull(&scaled);
        prop_assert_eq!(hull_a.len(), hull_s.len());
    }

    #[test]
    fn coord_strings_round_trip(n in any::<i64>(), d in 1i64..=1_000_000) {
        let c: Coord = untangle_core::geometry::frac(n, d);
        let s = format_coord(&c);
        prop_assert_eq!(parse_coord(&s).unwrap(), c);
        prop_assert!(s.contains('/'));
    }

    #[test]
    fn matching_json_round_trips(kind in any::<u8>(), n in 1usize..=6, seed in any::<u64>()) {
        let m = sample_random(kind_from(kind), n, seed);
        let json = matching_to_json(&m);
        let back = matching_from_json(&json).unwrap();
        prop_assert_eq!(&back, &m);
        prop_assert_eq!(matching_to_json(&back), json);
    }

    #[test]
    fn flips_preserve_points_and_move_two_partners(kind in any::<u8>(), n in 2usize..=6, seed in any::<u64>()) {
        let m = sample_random(kind_from(kind), n, seed);
        for (i, j) in m.crossing_pairs() {
            let next = m.apply_flip(Flip::new(i, j)).unwrap();
            prop_assert_eq!(m.reds(), next.reds());
            prop_assert_eq!(m.blues(), next.blues());
            let moved = m.mate().iter().zip(next.mate()).filter(|(a, b)| a != b).count();
            prop_assert_eq!(moved, 2);
            prop_assert!(!next.cross(i, j));
        }
    }

    #[test]
    fn convex_pairs_are_never_t(n in 2usize..=6, seed in any::<u64>()) {
        let m = sample_random(RandomKind::Convex, n, seed);
        for i in 0..n {
            for j in (i + 1)..n {
                prop_assert_ne!(m.pair_state(i, j), PairState::T);
            }
        }
    }

    #[test]
    fn policy_runs_never_revisit_configurations(kind in any::<u8>(), n in 2usize..=5, seed in any::<u64>()) {
        let m = sample_random(kind_from(kind), n, seed);
        let seq = run_policy(&m, Policy::Random(seed));
        let mut seen = std::collections::HashSet::new();
        for state in seq.states() {
            prop_assert!(seen.insert(state.mate().to_vec()), "configuration repeated");
        }
        prop_assert!(seq.is_complete());
    }
}

/// Plain recursive longest-path search without memoization; the independent
/// oracle for the memoized engine on tiny instances.
fn naive_longest(m: &Matching) -> usize {
    m.crossing_pairs()
        .into_iter()
        .map(|(i, j)| 1 + naive_longest(&m.apply_flip(Flip::new(i, j)).unwrap()))
        .max()
        .unwrap_or(0)
}

#[test]
fn memoized_longest_matches_naive_oracle() {
    for seed in 0..40u64 {
        let n = 2 + (seed % 3) as usize; // 2..=4
        let kind = kind_from(seed as u8);
        let m = sample_random(kind, n, seed);
        let memoized = longest_untangle(&m, 1_000_000).unwrap().length;
        assert_eq!(memoized, naive_longest(&m), "seed {seed}");
    }
}
