//! Branching matchings: one trigger segment crossed by several verticals,
//! each vertical paired with a small keeper segment near its top.
//!
//! When a variable fans out to several clause connections, every untangle
//! sequence resolves each vertical in two flips: one against the piece of
//! the trigger covering it, and one against its keeper once its top has been
//! redirected. All sequences have length `2(a+b)` and one common final
//! matching; `verify_branching` reproduces that by exhaustive enumeration.

use super::or_gadget::matching_of;
use super::report::GadgetReport;
use crate::geometry::{frac, int, Coord, Point};

fn bowl(x: &Coord) -> Coord {
    // Concave-up arc through (0,0) and (20,0); bottoms sit on it so that
    // every chord of resolved pieces covers exactly the verticals under it.
    -(x * (frac(20, 1) - x)) / frac(100, 1)
}

fn line_x_at_y(p: &(Coord, Coord), q: &(Coord, Coord), y: &Coord) -> Coord {
    &p.0 + (&q.0 - &p.0) * (y - &p.1) / (&q.1 - &p.1)
}

/// Builds the branching matching with `a` red-bottom verticals followed by
/// `b` blue-bottom verticals, enumerates every untangle sequence, and
/// reports whether all of them have length `2(a+b)` and a common end.
pub fn verify_branching(a: usize, b: usize) -> GadgetReport {
    let d = a + b;
    assert!(d >= 1, "branching needs at least one vertical");
    let left = Point::red(int(0), int(0));
    let right = Point::blue(int(20), int(0));

    let slot = |t: usize| -> Coord { frac(20 * (t as i64 + 1), d as i64 + 1) };
    // Residue-staggered heights: equally spaced tops with any arithmetic
    // height progression would put mixed-color triples on one line.
    let stagger = |t: usize| -> Coord { frac(((t as i64 + 1) * 37) % 101, 512) };
    let top_y = |t: usize| -> Coord { frac(30, 1) + stagger(t) };
    let keeper_y = |t: usize| -> Coord { frac(29, 1) + stagger(t) };

    let mut segments: Vec<(Point, Point)> = vec![(left.clone(), right.clone())];
    for t in 0..d {
        let x = slot(t);
        let top = (x.clone(), top_y(t));
        let bottom = (x.clone(), bowl(&x));
        let red_bottom = t < a;

        // Keeper straddling the fan of the top's possible redirections:
        // red-bottom verticals have blue tops that redirect to red targets on
        // the left (the trigger's red end and red bottoms); blue-bottom
        // verticals mirror this to the right.
        let yk = keeper_y(t);
        let yk2 = &yk - frac(1, 64);
        let (near_target, far_target): ((Coord, Coord), (Coord, Coord)) = if red_bottom {
            let near = if t == 0 {
                (int(0), int(0))
            } else {
                let xs = slot(t - 1);
                (xs.clone(), bowl(&xs))
            };
            (near, (int(0), int(0)))
        } else {
            let near = if t + 1 < d {
                let xs = slot(t + 1);
                (xs.clone(), bowl(&xs))
            } else {
                (int(20), int(0))
            };
            (near, (int(20), int(0)))
        };
        let x_near = line_x_at_y(&top, &near_target, &yk);
        let x_far = line_x_at_y(&top, &far_target, &yk);
        let margin = frac(1, 25);
        // Inner endpoint halfway between the slot and the nearest fan line,
        // outer endpoint just past the farthest fan line.
        let x_inner = (&x + &x_near) / frac(2, 1);
        let x_outer = if red_bottom {
            &x_far - &margin
        } else {
            &x_far + &margin
        };

        if red_bottom {
            // Blue top; keeper's blue end is the inner substitute.
            segments.push((Point::red(bottom.0, bottom.1), Point::blue(top.0, top.1)));
            segments.push((Point::red(x_outer, yk2), Point::blue(x_inner, yk)));
        } else {
            segments.push((Point::red(top.0, top.1), Point::blue(bottom.0, bottom.1)));
            segments.push((Point::red(x_inner, yk), Point::blue(x_outer, yk2)));
        }
    }

    let m = matching_of(&segments);
    let (mut report, _) = GadgetReport::enumerate(&format!("branching {a},{b}"), &m, 1 << 20);
    let expected_initial = d;
    let initial_ok = m.crossing_count() == expected_initial;
    report.verdict = initial_ok && report.all_length(2 * d) && report.distinct_ends == 1;
    report.detail = format!(
        "{d} verticals with keepers; every sequence must have length {} and one common end",
        2 * d
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_branchings_verify() {
        for (a, b) in [(1, 0), (0, 1), (1, 1), (2, 0)] {
            let report = verify_branching(a, b);
            assert!(report.verdict, "branching ({a},{b}): {report:?}");
            assert!(report.all_length(2 * (a + b)));
        }
    }
}
