//! The three-segment variable gadget.
//!
//! Built on the four corners of an axis-parallel rectangle (left corners
//! red, right corners blue) plus one red point just above and one blue point
//! just below the main diagonal, on the vertical center line. It has exactly
//! two crossings and exactly two untangle sequences, both of length one:
//! one creates the bottom edge (the truth value 1), the other the top edge
//! (the value 0).

use super::embedding::Rect;
use super::report::GadgetReport;
use super::ConstraintUnsatisfied;
use crate::geometry::{frac, Point};
use crate::matching::{Flip, Matching};
use num_rational::BigRational;

#[derive(Debug, Clone)]
pub struct VariableGadget {
    pub rect: Rect,
    /// Bottom-left corner (red).
    pub bottom_left: Point,
    /// Top-left corner (red).
    pub top_left: Point,
    /// Inner red point just above the diagonal.
    pub inner_red: Point,
    /// Top-right corner (blue).
    pub top_right: Point,
    /// Bottom-right corner (blue).
    pub bottom_right: Point,
    /// Inner blue point just below the diagonal.
    pub inner_blue: Point,
    pub report: GadgetReport,
}

impl VariableGadget {
    /// Initial matching: diagonal, inner-red to bottom-right, top-left to
    /// inner-blue. Red order: [bottom_left, top_left, inner_red]; blue
    /// order: [top_right, bottom_right, inner_blue].
    pub fn matching(&self) -> Matching {
        Matching::new(
            vec![
                self.bottom_left.clone(),
                self.top_left.clone(),
                self.inner_red.clone(),
            ],
            vec![
                self.top_right.clone(),
                self.bottom_right.clone(),
                self.inner_blue.clone(),
            ],
            vec![0, 2, 1],
        )
        .expect("variable gadget coordinates are valid")
    }

    /// Flip assigning the value 1 (creates the bottom edge).
    pub fn true_flip(&self) -> Flip {
        Flip::new(0, 2)
    }

    /// Flip assigning the value 0 (creates the top edge).
    pub fn false_flip(&self) -> Flip {
        Flip::new(0, 1)
    }

    /// The triangle spanned by the three topmost points (both top corners
    /// and the inner red point); connection drops end inside it.
    pub fn top_triangle(&self) -> (Point, Point, Point) {
        (
            self.top_left.clone(),
            self.top_right.clone(),
            self.inner_red.clone(),
        )
    }
}

/// Builds and audits a variable gadget over `rect`.
pub fn build_variable_gadget(rect: &Rect) -> Result<VariableGadget, ConstraintUnsatisfied> {
    if rect.x0 >= rect.x1 || rect.y0 >= rect.y1 {
        return Err(ConstraintUnsatisfied("degenerate rectangle".into()));
    }
    let two = BigRational::from_integer(2.into());
    let xc = (&rect.x0 + &rect.x1) / &two;
    let yc = (&rect.y0 + &rect.y1) / &two;
    let h = &rect.y1 - &rect.y0;
    let off = &h * frac(1, 8);

    let gadget = VariableGadget {
        rect: rect.clone(),
        bottom_left: Point::red(rect.x0.clone(), rect.y0.clone()),
        top_left: Point::red(rect.x0.clone(), rect.y1.clone()),
        inner_red: Point::red(xc.clone(), &yc + &off),
        top_right: Point::blue(rect.x1.clone(), rect.y1.clone()),
        bottom_right: Point::blue(rect.x1.clone(), rect.y0.clone()),
        inner_blue: Point::blue(xc, &yc - &off),
        report: GadgetReport {
            id: String::new(),
            sequence_count: 0,
            lengths: Default::default(),
            distinct_ends: 0,
            verdict: false,
            detail: String::new(),
        },
    };

    let m = gadget.matching();
    if m.crossing_count() != 2 {
        return Err(ConstraintUnsatisfied(format!(
            "variable gadget has {} crossings, expected 2",
            m.crossing_count()
        )));
    }
    let (mut report, sequences) = GadgetReport::enumerate("variable", &m, 64);
    let ends_ok = sequences.iter().all(|seq| {
        let end = &seq.end;
        // One flip creates the bottom edge, the other the top edge.
        let has_bottom = end_has_segment(end, &gadget.bottom_left, &gadget.bottom_right);
        let has_top = end_has_segment(end, &gadget.top_left, &gadget.top_right);
        has_bottom != has_top
    });
    report.verdict =
        report.sequence_count == 2 && report.all_length(1) && report.distinct_ends == 2 && ends_ok;
    report.detail = "two untangle sequences of length 1 with distinct ends, one per edge".into();
    if !report.verdict {
        return Err(ConstraintUnsatisfied(format!(
            "variable gadget enumeration mismatch: {report:?}"
        )));
    }
    Ok(VariableGadget { report, ..gadget })
}

/// True iff the matching pairs a red at `red`'s position with a blue at
/// `blue`'s position.
pub(crate) fn end_has_segment(m: &Matching, red: &Point, blue: &Point) -> bool {
    (0..m.len()).any(|i| m.red(i).same_position(red) && m.blue_of(i).same_position(blue))
}
