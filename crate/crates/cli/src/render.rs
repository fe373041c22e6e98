//! SVG rendering: reds as filled squares, blues as hollow circles, one
//! frame per configuration. Output is deterministic for a fixed input.
//!
//! Coordinates are converted to floats for drawing only; files that need
//! exactness (matchings, sequences) use the JSON formats instead.

use num_traits::ToPrimitive;
use untangle_core::engine::FlipSequence;
use untangle_core::geometry::Coord;
use untangle_core::Matching;

fn approx(c: &Coord) -> f64 {
    c.to_f64().unwrap_or(0.0)
}

/// Renders one matching as a standalone SVG document.
pub fn render_svg(m: &Matching) -> String {
    let xs: Vec<f64> = m
        .reds()
        .iter()
        .chain(m.blues().iter())
        .map(|p| approx(&p.x))
        .collect();
    let ys: Vec<f64> = m
        .reds()
        .iter()
        .chain(m.blues().iter())
        .map(|p| approx(&p.y))
        .collect();
    let min_x = xs.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_x = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min_y = ys.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_y = ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let span = ((max_x - min_x).max(max_y - min_y)).max(1.0);
    let margin = span * 0.08;
    let marker = span * 0.018 + 0.05;
    let stroke = span * 0.006 + 0.02;

    // Flip the y-axis so larger y draws upward.
    let tx = |x: f64| x;
    let ty = |y: f64| max_y + min_y - y;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.4} {:.4} {:.4} {:.4}\">\n",
        min_x - margin,
        min_y - margin,
        max_x - min_x + 2.0 * margin,
        max_y - min_y + 2.0 * margin
    ));
    for i in 0..m.len() {
        let r = m.red(i);
        let b = m.blue_of(i);
        out.push_str(&format!(
            "  <line x1=\"{:.4}\" y1=\"{:.4}\" x2=\"{:.4}\" y2=\"{:.4}\" stroke=\"black\" stroke-width=\"{:.4}\"/>\n",
            tx(approx(&r.x)),
            ty(approx(&r.y)),
            tx(approx(&b.x)),
            ty(approx(&b.y)),
            stroke
        ));
    }
    for p in m.reds() {
        out.push_str(&format!(
            "  <rect x=\"{:.4}\" y=\"{:.4}\" width=\"{:.4}\" height=\"{:.4}\" fill=\"crimson\"/>\n",
            tx(approx(&p.x)) - marker,
            ty(approx(&p.y)) - marker,
            2.0 * marker,
            2.0 * marker
        ));
    }
    for p in m.blues() {
        out.push_str(&format!(
            "  <circle cx=\"{:.4}\" cy=\"{:.4}\" r=\"{:.4}\" fill=\"white\" stroke=\"royalblue\" stroke-width=\"{:.4}\"/>\n",
            tx(approx(&p.x)),
            ty(approx(&p.y)),
            marker,
            stroke
        ));
    }
    out.push_str("</svg>\n");
    out
}

/// Renders every configuration along a sequence: `steps + 1` frames.
pub fn render_sequence(seq: &FlipSequence) -> Vec<String> {
    seq.states().iter().map(render_svg).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use untangle_core::generators::{make_star, scripted_star_sequence};

    #[test]
    fn single_segment_has_two_markers() {
        let m = make_star(1);
        let svg = render_svg(&m);
        assert_eq!(svg.matches("<line").count(), 1);
        assert_eq!(svg.matches("<rect").count(), 1);
        assert_eq!(svg.matches("<circle").count(), 1);
    }

    #[test]
    fn sequence_renders_one_frame_per_state() {
        let seq = scripted_star_sequence(3);
        let frames = render_sequence(&seq);
        assert_eq!(frames.len(), seq.len() + 1);
    }

    #[test]
    fn output_is_deterministic() {
        let m = make_star(4);
        assert_eq!(render_svg(&m), render_svg(&m));
    }
}
