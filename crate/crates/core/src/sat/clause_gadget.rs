//! The clause gadget: two OR gadgets chained on thirteen points.
//!
//! The first OR gate reads the left and middle inputs; its output segment
//! doubles as the left input of the second gate, which reads the right
//! input. A falsified clause (all inputs 0) is forced through four flips to
//! a unique final matching containing the top output segment, which is what
//! triggers the padding chain.

use super::or_gadget::{audit_or_constraints, matching_of, OrPoints};
use super::padding::chain_segments;
use super::report::GadgetReport;
use super::variable_gadget::end_has_segment;
use super::ConstraintUnsatisfied;
use crate::geometry::{frac, properly_cross, Color, Coord, Point};
use crate::matching::Matching;
use num_rational::BigRational;
use num_traits::Zero;

/// The thirteen clause points, named by function. The three inputs enter at
/// the tops `left_top` (red), `mid_top` (blue), `right_top` (blue); their
/// input-1 partners are the bottoms, their input-0 partners the anchors.
/// `stage one` is the first OR gate's crossed segment, `stage two` the
/// second's.
#[derive(Debug, Clone)]
pub struct ClauseGadget {
    pub left_top: Point,     // red
    pub left_bottom: Point,  // blue
    pub left_anchor: Point,  // blue
    pub mid_top: Point,      // blue
    pub mid_bottom: Point,   // red
    pub mid_anchor: Point,   // red
    pub right_top: Point,    // blue
    pub right_bottom: Point, // red
    pub right_anchor: Point, // red
    pub h1_red: Point,
    pub h1_blue: Point,
    pub h2_red: Point,
    pub h2_blue: Point,
    /// Enumeration reports for the eight input combinations (x, y, z) in
    /// binary order 000, 001, …, 111.
    pub reports: Vec<GadgetReport>,
}

impl ClauseGadget {
    fn or1_points(&self) -> OrPoints {
        OrPoints {
            out_red: self.left_top.clone(),
            left_in_blue: self.left_bottom.clone(),
            right_in_red: self.mid_bottom.clone(),
            out_blue: self.mid_top.clone(),
            mid_red: self.h1_red.clone(),
            mid_blue: self.h1_blue.clone(),
            detour_red: self.mid_anchor.clone(),
            detour_blue: self.left_anchor.clone(),
        }
    }

    fn or2_points(&self) -> OrPoints {
        OrPoints {
            out_red: self.left_top.clone(),
            left_in_blue: self.h1_blue.clone(),
            right_in_red: self.right_bottom.clone(),
            out_blue: self.right_top.clone(),
            mid_red: self.h2_red.clone(),
            mid_blue: self.h2_blue.clone(),
            detour_red: self.right_anchor.clone(),
            detour_blue: self.mid_top.clone(),
        }
    }

    /// The five-segment matching with inputs `(x, y, z)`.
    pub fn matching(&self, x: bool, y: bool, z: bool) -> Matching {
        let mut segments = Vec::new();
        segments.push(if x {
            (self.left_top.clone(), self.left_bottom.clone())
        } else {
            (self.left_top.clone(), self.left_anchor.clone())
        });
        segments.push(if y {
            (self.mid_bottom.clone(), self.mid_top.clone())
        } else {
            (self.mid_anchor.clone(), self.mid_top.clone())
        });
        segments.push(if z {
            (self.right_bottom.clone(), self.right_top.clone())
        } else {
            (self.right_anchor.clone(), self.right_top.clone())
        });
        segments.push((self.h1_red.clone(), self.h1_blue.clone()));
        segments.push((self.h2_red.clone(), self.h2_blue.clone()));
        matching_of(&segments)
    }

    /// The all-zero matching together with a `k`-link padding chain hanging
    /// off the output segment's position.
    pub fn padded_matching(&self, k: usize) -> Matching {
        let base = self.matching(false, false, false);
        let trigger = crate::geometry::Segment::new(self.left_top.clone(), self.right_top.clone())
            .expect("output endpoints are red/blue");
        let chain = chain_segments(k, &trigger);
        let mut reds: Vec<Point> = base.reds().to_vec();
        let mut blues: Vec<Point> = base.blues().to_vec();
        let mut mate = base.mate().to_vec();
        for (r, b) in chain {
            reds.push(r);
            blues.push(b);
            mate.push(blues.len() - 1);
        }
        Matching::new(reds, blues, mate).expect("padded clause is a valid matching")
    }

    /// True iff the matching contains the clause output segment.
    pub fn has_output_segment(&self, m: &Matching) -> bool {
        end_has_segment(m, &self.left_top, &self.right_top)
    }
}

fn line_x_at_y(p: &Point, q: &Point, y: &Coord) -> Coord {
    // x(y) on the line through p, q; requires p.y != q.y.
    &p.x + (&q.x - &p.x) * (y - &p.y) / (&q.y - &p.y)
}

fn line_y_at_x(p: &Point, q: &Point, x: &Coord) -> Coord {
    &p.y + (&q.y - &p.y) * (x - &p.x) / (&q.x - &p.x)
}

pub(crate) fn line_intersection(
    a1: &Point,
    a2: &Point,
    b1: &Point,
    b2: &Point,
) -> Option<(Coord, Coord)> {
    let d1x = &a2.x - &a1.x;
    let d1y = &a2.y - &a1.y;
    let d2x = &b2.x - &b1.x;
    let d2y = &b2.y - &b1.y;
    let den = &d1x * &d2y - &d1y * &d2x;
    if den.is_zero() {
        return None;
    }
    let t = ((&b1.x - &a1.x) * &d2y - (&b1.y - &a1.y) * &d2x) / den;
    Some((&a1.x + &d1x * &t, &a1.y + &d1y * &t))
}

/// Builds a clause gadget with input verticals at the given x-positions
/// (left < middle < right), fitted into `rect`, then audits the two OR-gate
/// mappings, the stage-two placement, and the full truth table by
/// exhaustive enumeration.
pub fn build_clause_gadget(
    rect: &super::embedding::Rect,
    inputs_x: &[Coord; 3],
) -> Result<ClauseGadget, ConstraintUnsatisfied> {
    if !(inputs_x[0] < inputs_x[1] && inputs_x[1] < inputs_x[2]) {
        return Err(ConstraintUnsatisfied(
            "input x-positions must be strictly increasing".into(),
        ));
    }
    if rect.x0 >= rect.x1 || rect.y0 >= rect.y1 {
        return Err(ConstraintUnsatisfied("degenerate clause rectangle".into()));
    }
    // Piecewise-linear x map sending template slots 0, 10, 20 to the input
    // positions; linear y map sending template 0..20 into the rectangle.
    let sx = |x: BigRational| -> Coord {
        let ten = frac(10, 1);
        if x <= ten {
            &inputs_x[0] + (&inputs_x[1] - &inputs_x[0]) * x / &ten
        } else {
            &inputs_x[1] + (&inputs_x[2] - &inputs_x[1]) * (x - &ten) / &ten
        }
    };
    let sy = |y: BigRational| -> Coord { &rect.y0 + (&rect.y1 - &rect.y0) * y / frac(20, 1) };
    let pt = |x: BigRational, y: BigRational, c: Color| Point::new(sx(x), sy(y), c);

    let gadget = ClauseGadget {
        left_top: pt(frac(0, 1), frac(20, 1), Color::Red),
        left_bottom: pt(frac(-8, 1), frac(0, 1), Color::Blue),
        left_anchor: pt(frac(-6, 1), frac(1, 1), Color::Blue),
        mid_top: pt(frac(10, 1), frac(18, 1), Color::Blue),
        mid_bottom: pt(frac(10, 1), frac(-1, 4), Color::Red),
        mid_anchor: pt(frac(4, 1), frac(5, 4), Color::Red),
        right_top: pt(frac(20, 1), frac(20, 1), Color::Blue),
        right_bottom: pt(frac(20, 1), frac(-1, 2), Color::Red),
        right_anchor: pt(frac(13, 1), frac(3, 2), Color::Red),
        h1_red: pt(frac(-21, 5), frac(83, 10), Color::Red),
        h1_blue: pt(frac(34, 5), frac(44, 5), Color::Blue),
        h2_red: pt(frac(5, 1), frac(1867, 100), Color::Red),
        h2_blue: pt(frac(199, 10), frac(3781, 200), Color::Blue),
        reports: Vec::new(),
    };
    audit_clause_gadget(gadget)
}

/// Runs the full audit battery on a placed clause gadget.
pub(crate) fn audit_clause_gadget(
    gadget: ClauseGadget,
) -> Result<ClauseGadget, ConstraintUnsatisfied> {
    audit_or_constraints(&gadget.or1_points(), "clause stage one")?;
    audit_or_constraints(&gadget.or2_points(), "clause stage two")?;
    audit_stage_two_placement(&gadget)?;
    audit_handoff_configs(&gadget)?;
    let mut reports = Vec::new();
    for bits in 0..8u8 {
        let (x, y, z) = (bits & 4 != 0, bits & 2 != 0, bits & 1 != 0);
        let m = gadget.matching(x, y, z);
        let id = format!("clause {}|{}|{}", x as u8, y as u8, z as u8);
        let (mut report, sequences) = GadgetReport::enumerate(&id, &m, 256);
        let ones = [x, y, z].iter().filter(|&&b| b).count();
        let output_expected = ones == 0;
        let ends_ok = sequences
            .iter()
            .all(|seq| gadget.has_output_segment(&seq.end) == output_expected);
        // Expected lengths: all-zero resolves in 4; a single 1 on the left
        // or middle input in 2; a single 1 on the right input still pays the
        // full first gate and resolves in 3; two 1s in a unique single flip;
        // all-ones is already untangled.
        report.verdict = ends_ok
            && match (x, y, z) {
                (false, false, false) => report.all_length(4) && report.distinct_ends == 1,
                (true, false, false) | (false, true, false) => report.all_length(2),
                (false, false, true) => report.all_length(3) && report.distinct_ends == 1,
                (true, true, false) | (true, false, true) | (false, true, true) => {
                    report.sequence_count == 1 && report.all_length(1)
                }
                (true, true, true) => report.sequence_count == 1 && report.all_length(0),
            };
        report.detail = format!(
            "{} true input(s); output segment {}",
            ones,
            if output_expected {
                "required"
            } else {
                "forbidden"
            }
        );
        if !report.verdict {
            return Err(ConstraintUnsatisfied(format!(
                "clause enumeration mismatch: {report:?}"
            )));
        }
        reports.push(report);
    }
    Ok(ClauseGadget { reports, ..gadget })
}

/// The stage-two crossed segment's red endpoint must sit strictly inside the
/// first gate's top triangle: the region under the first output segment
/// bounded by the two hand-off lines.
fn audit_stage_two_placement(g: &ClauseGadget) -> Result<(), ConstraintUnsatisfied> {
    let apex = line_intersection(&g.left_top, &g.h1_blue, &g.h1_red, &g.mid_top)
        .ok_or_else(|| ConstraintUnsatisfied("top-triangle boundary lines are parallel".into()))?;
    let apex_pt = Point::new(apex.0, apex.1, Color::Red);
    match crate::geometry::point_in_triangle(&g.h2_red, &g.left_top, &g.mid_top, &apex_pt) {
        Ok(crate::geometry::TrianglePosition::Inside) => Ok(()),
        other => Err(ConstraintUnsatisfied(format!(
            "stage-two red endpoint not inside the first gate's top triangle: {other:?}"
        ))),
    }
}

/// Configurations where the stage-one hand-off segment plays the role of the
/// second gate's left input must behave like a genuine 1-input.
fn audit_handoff_configs(g: &ClauseGadget) -> Result<(), ConstraintUnsatisfied> {
    let handoff = (g.h1_red.clone(), g.mid_top.clone());
    let configs: Vec<(&str, Vec<(Point, Point)>, Vec<(usize, usize)>)> = vec![
        (
            "handoff-1|1",
            vec![
                handoff.clone(),
                (g.right_bottom.clone(), g.right_top.clone()),
                (g.h2_red.clone(), g.h2_blue.clone()),
            ],
            vec![],
        ),
        (
            "handoff-1|0",
            vec![
                (g.right_anchor.clone(), g.right_top.clone()),
                (g.h2_red.clone(), g.h2_blue.clone()),
                handoff.clone(),
            ],
            vec![(0, 1)],
        ),
        (
            "handoff-final",
            vec![
                handoff,
                (g.right_anchor.clone(), g.h2_blue.clone()),
                (g.h2_red.clone(), g.right_top.clone()),
            ],
            vec![],
        ),
    ];
    for (name, segments, crossing) in configs {
        for i in 0..segments.len() {
            for j in (i + 1)..segments.len() {
                let (r1, b1) = &segments[i];
                let (r2, b2) = &segments[j];
                let crosses = properly_cross(r1, b1, r2, b2);
                let required = crossing.contains(&(i, j));
                if crosses != required {
                    return Err(ConstraintUnsatisfied(format!(
                        "clause {name}: pair ({i},{j}) {} cross",
                        if required { "must" } else { "must not" }
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Places the in-assembly clause top points and internal segments from the
/// actual connection geometry. Used by the assembler, which supplies the
/// already-placed tops, bottoms and anchors; this computes the two crossed
/// internal segments from the broken-vertical lines they must thread.
pub(crate) struct InternalPlacement {
    pub h1_red: Point,
    pub h1_blue: Point,
    pub h2_red: Point,
    pub h2_blue: Point,
}

pub(crate) fn place_internals(
    left_top: &Point,
    left_anchor: &Point,
    mid_top: &Point,
    mid_anchor: &Point,
    right_top: &Point,
    right_anchor: &Point,
) -> InternalPlacement {
    let two = frac(2, 1);
    // Stage-one segment: threads between the broken-left and broken-middle
    // lines, strictly between the two intact verticals.
    let h1_y = &left_top.y - frac(16, 1);
    let y_lo = &h1_y - frac(1, 1);
    let y_hi = &h1_y + frac(1, 1);
    let x_bl = line_x_at_y(left_top, left_anchor, &y_lo);
    let x_bm = line_x_at_y(mid_top, mid_anchor, &y_hi);
    let h1_red = Point::red((&left_top.x + &x_bl) / &two, y_lo);
    let h1_blue = Point::blue((&x_bm + &mid_top.x) / &two, y_hi);

    // Stage-two segment: starts under the stage-one output's line, ends
    // just left of the intact right vertical, past the broken-right line.
    let h2_x = &left_top.x + (&mid_top.x - &left_top.x) * frac(7, 10);
    let h2_y = line_y_at_x(left_top, mid_top, &h2_x) - frac(1, 2);
    let h2_red = Point::red(h2_x, h2_y);
    let b8_y = &left_top.y - frac(7, 5);
    let x_br = line_x_at_y(right_top, right_anchor, &b8_y);
    let h2_blue = Point::blue((&x_br + &right_top.x) / &two, b8_y);
    InternalPlacement {
        h1_red,
        h1_blue,
        h2_red,
        h2_blue,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::int;

    fn template() -> ClauseGadget {
        let rect = super::super::embedding::Rect {
            x0: int(-10),
            y0: int(0),
            x1: int(22),
            y1: int(20),
        };
        build_clause_gadget(&rect, &[int(0), int(10), int(20)]).unwrap()
    }

    #[test]
    fn truth_table_reports_all_pass() {
        let g = template();
        assert_eq!(g.reports.len(), 8);
        assert!(g.reports.iter().all(|r| r.verdict));
        // All-zero: every sequence has length 4 with a common end.
        assert!(g.reports[0].all_length(4));
        assert_eq!(g.reports[0].distinct_ends, 1);
        // All-one: crossing-free.
        assert!(g.matching(true, true, true).is_crossing_free());
    }

    #[test]
    fn uneven_middle_input_is_accepted() {
        let rect = super::super::embedding::Rect {
            x0: int(-10),
            y0: int(0),
            x1: int(30),
            y1: int(20),
        };
        let g = build_clause_gadget(&rect, &[int(0), int(13), int(28)]).unwrap();
        assert!(g.reports.iter().all(|r| r.verdict));
    }

    #[test]
    fn padded_all_zero_forces_long_sequences() {
        let g = template();
        let k = 3;
        let padded = g.padded_matching(k);
        assert_eq!(padded.crossing_count(), 3);
        let e = crate::engine::enumerate_sequences(&padded, 4096);
        assert!(!e.truncated);
        assert!(!e.sequences.is_empty());
        for seq in &e.sequences {
            assert_eq!(seq.len(), 4 + k);
        }
    }
}
