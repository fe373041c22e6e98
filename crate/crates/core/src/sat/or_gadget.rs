//! The OR gadget: four three-segment matchings on a common eight-point set.
//!
//! The gadget is a logical OR gate. Each input is 0 or 1 depending on which
//! of two points its vertical uses; the output is 0 exactly when the top
//! segment between the two input tops appears in every final matching. The
//! whole definition is a list of crossing/non-crossing constraints over ten
//! named three-segment matchings; `audit_or_constraints` checks every one of
//! them exactly, and the construction refuses point sets that fail any.

use super::report::GadgetReport;
use super::variable_gadget::end_has_segment;
use super::ConstraintUnsatisfied;
use crate::geometry::{int, properly_cross, Coord, Point};
use crate::matching::Matching;

/// Affine placement: `p -> origin + scale * p`.
#[derive(Debug, Clone)]
pub struct Frame {
    pub origin: (Coord, Coord),
    pub scale: Coord,
}

impl Frame {
    pub fn identity() -> Self {
        Frame {
            origin: (int(0), int(0)),
            scale: int(1),
        }
    }

    fn apply(&self, x: Coord, y: Coord, color: crate::geometry::Color) -> Point {
        Point::new(
            &self.origin.0 + &self.scale * x,
            &self.origin.1 + &self.scale * y,
            color,
        )
    }
}

/// The eight points of an OR gadget, named by function.
///
/// `out_red`/`out_blue` are the tops of the left and right input verticals;
/// the output segment joins them. `left_in_blue`/`right_in_red` are the
/// other vertical endpoints. `mid_*` is the short segment crossed by both
/// zero-inputs, and `detour_*` are the partners the zero-input tops start
/// matched to.
#[derive(Debug, Clone)]
pub struct OrPoints {
    pub out_red: Point,
    pub left_in_blue: Point,
    pub right_in_red: Point,
    pub out_blue: Point,
    pub mid_red: Point,
    pub mid_blue: Point,
    pub detour_red: Point,
    pub detour_blue: Point,
}

/// One audited configuration: named segments plus the required crossing
/// pattern among them (pairs listed cross; all others must not).
struct ConfigCase {
    name: &'static str,
    segments: Vec<(Point, Point)>,
    crossing_pairs: Vec<(usize, usize)>,
}

fn config_cases(p: &OrPoints) -> Vec<ConfigCase> {
    let s = |r: &Point, b: &Point| (r.clone(), b.clone());
    vec![
        // The four input matchings.
        ConfigCase {
            name: "0|0",
            segments: vec![
                s(&p.out_red, &p.detour_blue),
                s(&p.detour_red, &p.out_blue),
                s(&p.mid_red, &p.mid_blue),
            ],
            crossing_pairs: vec![(0, 2), (1, 2)],
        },
        ConfigCase {
            name: "0|1",
            segments: vec![
                s(&p.out_red, &p.detour_blue),
                s(&p.mid_red, &p.mid_blue),
                s(&p.right_in_red, &p.out_blue),
            ],
            crossing_pairs: vec![(0, 1)],
        },
        ConfigCase {
            name: "1|0",
            segments: vec![
                s(&p.detour_red, &p.out_blue),
                s(&p.mid_red, &p.mid_blue),
                s(&p.out_red, &p.left_in_blue),
            ],
            crossing_pairs: vec![(0, 1)],
        },
        ConfigCase {
            name: "1|1",
            segments: vec![
                s(&p.out_red, &p.left_in_blue),
                s(&p.right_in_red, &p.out_blue),
                s(&p.mid_red, &p.mid_blue),
            ],
            crossing_pairs: vec![],
        },
        // Crossing-free final matchings.
        ConfigCase {
            name: "final-both-zero",
            segments: vec![
                s(&p.out_red, &p.out_blue),
                s(&p.detour_red, &p.mid_blue),
                s(&p.mid_red, &p.detour_blue),
            ],
            crossing_pairs: vec![],
        },
        ConfigCase {
            name: "final-left-zero",
            segments: vec![
                s(&p.out_red, &p.mid_blue),
                s(&p.right_in_red, &p.out_blue),
                s(&p.mid_red, &p.detour_blue),
            ],
            crossing_pairs: vec![],
        },
        ConfigCase {
            name: "final-right-zero",
            segments: vec![
                s(&p.out_red, &p.left_in_blue),
                s(&p.detour_red, &p.mid_blue),
                s(&p.mid_red, &p.out_blue),
            ],
            crossing_pairs: vec![],
        },
        // Intermediate states where exactly the first two segments cross.
        ConfigCase {
            name: "mid-left-zero",
            segments: vec![
                s(&p.out_red, &p.mid_blue),
                s(&p.detour_red, &p.out_blue),
                s(&p.mid_red, &p.detour_blue),
            ],
            crossing_pairs: vec![(0, 1)],
        },
        ConfigCase {
            name: "mid-right-zero",
            segments: vec![
                s(&p.out_red, &p.detour_blue),
                s(&p.mid_red, &p.out_blue),
                s(&p.detour_red, &p.mid_blue),
            ],
            crossing_pairs: vec![(0, 1)],
        },
    ]
}

/// Checks every named configuration's crossing pattern exactly.
pub(crate) fn audit_or_constraints(
    points: &OrPoints,
    tag: &str,
) -> Result<(), ConstraintUnsatisfied> {
    for case in config_cases(points) {
        for i in 0..case.segments.len() {
            for j in (i + 1)..case.segments.len() {
                let (r1, b1) = &case.segments[i];
                let (r2, b2) = &case.segments[j];
                let crosses = properly_cross(r1, b1, r2, b2);
                let required = case.crossing_pairs.contains(&(i, j));
                if crosses != required {
                    return Err(ConstraintUnsatisfied(format!(
                        "{tag}: config {}: pair ({i},{j}) {} cross",
                        case.name,
                        if required { "must" } else { "must not" },
                    )));
                }
            }
        }
    }
    Ok(())
}

pub(crate) fn matching_of(segments: &[(Point, Point)]) -> Matching {
    let reds = segments.iter().map(|(r, _)| r.clone()).collect();
    let blues = segments.iter().map(|(_, b)| b.clone()).collect();
    let mate = (0..segments.len()).collect();
    Matching::new(reds, blues, mate).expect("gadget configuration is a valid matching")
}

#[derive(Debug, Clone)]
pub struct OrGadget {
    pub points: OrPoints,
    /// One enumeration report per input combination, in the order
    /// (0,0), (0,1), (1,0), (1,1).
    pub reports: Vec<GadgetReport>,
}

impl OrGadget {
    /// The three-segment matching for the given inputs.
    pub fn matching(&self, left: bool, right: bool) -> Matching {
        let p = &self.points;
        let mut segments = Vec::new();
        match left {
            true => segments.push((p.out_red.clone(), p.left_in_blue.clone())),
            false => segments.push((p.out_red.clone(), p.detour_blue.clone())),
        }
        match right {
            true => segments.push((p.right_in_red.clone(), p.out_blue.clone())),
            false => segments.push((p.detour_red.clone(), p.out_blue.clone())),
        }
        segments.push((p.mid_red.clone(), p.mid_blue.clone()));
        matching_of(&segments)
    }

    /// True iff the matching contains the output segment (tops joined).
    pub fn has_output_segment(&self, m: &Matching) -> bool {
        end_has_segment(m, &self.points.out_red, &self.points.out_blue)
    }
}

/// Canonical template satisfying every OR-gadget constraint, placed by
/// `frame`.
pub fn or_template(frame: &Frame) -> OrPoints {
    use crate::geometry::Color::{Blue, Red};
    let f = |x: i64, y: i64, c| frame.apply(int(x), int(y), c);
    let fq = |x: (i64, i64), y: (i64, i64), c| {
        frame.apply(
            crate::geometry::frac(x.0, x.1),
            crate::geometry::frac(y.0, y.1),
            c,
        )
    };
    OrPoints {
        out_red: f(0, 8, Red),
        left_in_blue: f(0, -20, Blue),
        right_in_red: f(10, -20, Red),
        out_blue: f(10, 7, Blue),
        mid_red: f(1, -1, Red),
        mid_blue: f(9, 0, Blue),
        detour_red: fq((7, 1), (-9, 2), Red),
        detour_blue: f(5, -3, Blue),
    }
}

/// Builds an OR gadget in the given frame, audits the full constraint list,
/// and reproduces the gate behavior by exhaustive enumeration:
/// 0|0 has exactly two untangle sequences of length 2 sharing one final
/// matching that contains the output segment; 0|1 and 1|0 have a unique
/// length-1 sequence excluding it; 1|1 is already crossing-free.
pub fn build_or_gadget(frame: &Frame) -> Result<OrGadget, ConstraintUnsatisfied> {
    let points = or_template(frame);
    audit_or_constraints(&points, "or-gadget")?;
    let gadget = OrGadget {
        points,
        reports: Vec::new(),
    };
    let mut reports = Vec::new();
    for (left, right) in [(false, false), (false, true), (true, false), (true, true)] {
        let m = gadget.matching(left, right);
        let id = format!("or {}|{}", left as u8, right as u8);
        let (mut report, sequences) = GadgetReport::enumerate(&id, &m, 64);
        let output_expected = !left && !right;
        let ends_ok = sequences
            .iter()
            .all(|seq| gadget.has_output_segment(&seq.end) == output_expected);
        report.verdict = ends_ok
            && match (left, right) {
                (false, false) => {
                    report.sequence_count == 2 && report.all_length(2) && report.distinct_ends == 1
                }
                (false, true) | (true, false) => report.sequence_count == 1 && report.all_length(1),
                (true, true) => report.sequence_count == 1 && report.all_length(0),
            };
        report.detail = format!(
            "inputs {}|{}: output segment {}",
            left as u8,
            right as u8,
            if output_expected {
                "required"
            } else {
                "forbidden"
            }
        );
        if !report.verdict {
            return Err(ConstraintUnsatisfied(format!(
                "or gadget enumeration mismatch: {report:?}"
            )));
        }
        reports.push(report);
    }
    Ok(OrGadget { reports, ..gadget })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn template_passes_constraints_and_gate_behavior() {
        let g = build_or_gadget(&Frame::identity()).unwrap();
        assert_eq!(g.reports.len(), 4);
        assert!(g.reports.iter().all(|r| r.verdict));
        // 0|0: two sequences of length 2.
        assert_eq!(g.reports[0].sequence_count, 2);
        assert!(g.reports[0].all_length(2));
        // 1|1 crossing-free.
        assert!(g.matching(true, true).is_crossing_free());
    }

    #[test]
    fn scaled_frame_still_valid() {
        let frame = Frame {
            origin: (int(100), int(-50)),
            scale: crate::geometry::frac(3, 7),
        };
        assert!(build_or_gadget(&frame).is_ok());
    }
}
