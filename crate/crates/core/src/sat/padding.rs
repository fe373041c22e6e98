//! Padding gadgets: a chain of `k` initially crossing-free segments that the
//! trigger segment sets off one after another, forcing exactly `k` extra
//! flips once the trigger appears.
//!
//! The chain lives on the far side of the trigger. Link `i` crosses only the
//! segment created by the previous link's flip, whose moving endpoint always
//! carries the trigger's blue point; so the untangle sequence of the
//! triggered matching is unique and has length exactly `k`.

use super::report::GadgetReport;
use super::ConstraintUnsatisfied;
use crate::geometry::{frac, int, Color, Coord, Point, Segment};
use crate::matching::Matching;
use num_rational::BigRational;

#[derive(Debug, Clone)]
pub struct Padding {
    /// The trigger segment plus the chain; unique untangle sequence of
    /// length exactly `k`.
    pub triggered: Matching,
    /// The chain alone (crossing-free). `None` when `k = 0`.
    pub non_triggered: Option<Matching>,
    pub report: GadgetReport,
}

/// Chain links in the trigger's frame, as (red, blue) pairs.
///
/// Canonically the trigger runs from red `(0,20)` to blue `(20,20)`; a
/// general trigger maps that frame affinely, with the chain on the left side
/// of the red-to-blue direction.
pub(crate) fn chain_segments(k: usize, trigger: &Segment) -> Vec<(Point, Point)> {
    chain_segments_scaled(k, trigger, &int(1), 1)
}

/// Same as [`chain_segments`] with the perpendicular axis rescaled by
/// `vscale` and flipped to the right-hand side when `side` is negative.
/// Anisotropic scaling is affine, so the chain's crossing structure is
/// untouched; the assembler uses it to keep chains inside fixed-height
/// clause bands.
pub(crate) fn chain_segments_scaled(
    k: usize,
    trigger: &Segment,
    vscale: &Coord,
    side: i8,
) -> Vec<(Point, Point)> {
    let r = &trigger.red;
    let b = &trigger.blue;
    let ux = (&b.x - &r.x) / frac(20, 1);
    let uy = (&b.y - &r.y) / frac(20, 1);
    // Perpendicular of the trigger direction, scaled and oriented.
    let flip = if side >= 0 { int(1) } else { int(-1) };
    let vx = -&uy * vscale * &flip;
    let vy = &ux * vscale * &flip;
    let place = |x: Coord, y: Coord, color: Color| -> Point {
        let dy = y - frac(20, 1);
        Point::new(
            &r.x + &ux * &x + &vx * &dy,
            &r.y + &uy * &x + &vy * &dy,
            color,
        )
    };

    if k == 0 {
        return Vec::new();
    }
    let kq = BigRational::from_integer((k as i64 + 1).into());
    let step = frac(18, 1) / &kq;
    let dip = &step / frac(40, 1);
    let quarter = &step / frac(4, 1);

    let rho = |i: usize| -> (Coord, Coord) {
        let iq = BigRational::from_integer((i as i64).into());
        (&iq * &step - &quarter, frac(25, 1) + iq)
    };
    let mut out = Vec::new();
    let mut prev_rho = rho(1);
    for i in 1..=k {
        let (rx, ry) = rho(i);
        let beta_x = &rx + &quarter + &quarter;
        let beta_y = if i == 1 {
            frac(20, 1) - &dip
        } else {
            // Just below the line from the previous link's red point to the
            // trigger's blue endpoint (the live segment after its flip).
            let (px, py) = prev_rho.clone();
            let live_at = &py + (frac(20, 1) - &py) * (&beta_x - &px) / (frac(20, 1) - &px);
            live_at - &dip
        };
        prev_rho = (rx.clone(), ry.clone());
        out.push((
            place(rx, ry, Color::Red),
            place(beta_x, beta_y, Color::Blue),
        ));
    }
    out
}

/// Builds the triggered and non-triggered forms of a `k`-padding for the
/// given trigger segment and audits them: the chain alone is crossing-free,
/// and the triggered matching has exactly one untangle sequence, of length
/// exactly `k`.
pub fn build_padding(k: usize, trigger: &Segment) -> Result<Padding, ConstraintUnsatisfied> {
    let chain = chain_segments(k, trigger);
    let mut reds = vec![trigger.red.clone()];
    let mut blues = vec![trigger.blue.clone()];
    for (r, b) in &chain {
        reds.push(r.clone());
        blues.push(b.clone());
    }
    let mate = (0..reds.len()).collect();
    let triggered = Matching::new(reds, blues, mate)
        .map_err(|e| ConstraintUnsatisfied(format!("padding point set invalid: {e}")))?;

    // The trigger must cross exactly the first link; the chain alone must be
    // crossing-free.
    let crossings = triggered.crossing_pairs();
    let expected = if k == 0 {
        vec![]
    } else {
        vec![(0usize, 1usize)]
    };
    if crossings != expected {
        return Err(ConstraintUnsatisfied(format!(
            "padding initial crossings {crossings:?}, expected {expected:?}"
        )));
    }
    let non_triggered = if k == 0 {
        None
    } else {
        let m = matching_without_first(&triggered);
        if !m.is_crossing_free() {
            return Err(ConstraintUnsatisfied(
                "non-triggered padding is not crossing-free".into(),
            ));
        }
        Some(m)
    };

    let (mut report, _) = GadgetReport::enumerate(&format!("padding k={k}"), &triggered, 64);
    report.verdict = report.sequence_count == 1 && report.all_length(k);
    report.detail = format!("unique untangle sequence of length {k}");
    if !report.verdict {
        return Err(ConstraintUnsatisfied(format!(
            "padding enumeration mismatch: {report:?}"
        )));
    }
    Ok(Padding {
        triggered,
        non_triggered,
        report,
    })
}

fn matching_without_first(m: &Matching) -> Matching {
    let reds: Vec<Point> = m.reds()[1..].to_vec();
    let blues: Vec<Point> = m.blues()[1..].to_vec();
    let mate: Vec<usize> = m.mate()[1..].iter().map(|&b| b - 1).collect();
    Matching::new(reds, blues, mate).expect("chain alone is a valid matching")
}

/// Canonical horizontal trigger used by stand-alone padding builds.
pub fn canonical_trigger() -> Segment {
    Segment::new(Point::red(int(0), int(20)), Point::blue(int(20), int(20)))
        .expect("canonical trigger is red-blue")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn padding_lengths_are_exact() {
        for k in [0usize, 1, 3, 9] {
            let p = build_padding(k, &canonical_trigger()).unwrap();
            assert!(p.report.verdict, "k={k}: {:?}", p.report);
            assert_eq!(p.report.sequence_count, 1);
            assert!(p.report.all_length(k));
            if k > 0 {
                assert!(p.non_triggered.as_ref().unwrap().is_crossing_free());
            } else {
                assert!(p.non_triggered.is_none());
            }
        }
    }

    #[test]
    fn padding_works_for_slanted_triggers() {
        let trigger = Segment::new(
            Point::red(frac(3, 2), int(-4)),
            Point::blue(int(-11), int(7)),
        )
        .unwrap();
        for k in [1usize, 4, 9] {
            let p = build_padding(k, &trigger).unwrap();
            assert!(p.report.verdict);
        }
    }
}
