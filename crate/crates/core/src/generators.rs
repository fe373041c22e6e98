//! Instance constructions: stars, butterflies, fences, their scripted flip
//! sequences, and seeded random samplers.
//!
//! Stars and butterflies are red-on-a-line; the reds are emitted in
//! left-to-right order so the red index equals its rank on the line.
//! Fences are convex instances realized on the parabola `y = x^2`, which
//! keeps every lemma-level audit coordinate-independent while guaranteeing
//! strict convex position.

use crate::engine::{FlipSequence, ReplayError};
use crate::geometry::{frac, int, Color, Point};
use crate::matching::{Flip, Matching, MatchingError};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeneratorError {
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error("perturbation changed a pair state or crossing")]
    PerturbationChangedStates,
    #[error("scripted flip at step {0} is not a crossing pair")]
    ScriptInvalidated(usize),
}

/// Whether butterfly blue heights are left tied (the literal construction)
/// or broken by a documented tiny perturbation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Perturb {
    Off,
    Epsilon,
}

/// An `n`-star: a red-on-a-line matching in which all `n(n-1)/2` pairs of
/// segments cross. Reds sit at `x = 1..n` on the axis; blues sit on the
/// line `y = -x` through the looked-at point `(0, 0)`; red `i` is matched
/// to blue `n-1-i`, which makes every pair cross.
pub fn make_star(n: usize) -> Matching {
    assert!(n >= 1, "star needs at least one segment");
    let reds: Vec<Point> = (0..n)
        .map(|i| Point::red(int(i as i64 + 1), int(0)))
        .collect();
    let blues: Vec<Point> = (0..n)
        .map(|j| Point::blue(int(-(j as i64 + 1)), int(j as i64 + 1)))
        .collect();
    let mate: Vec<usize> = (0..n).map(|i| n - 1 - i).collect();
    let m = Matching::new(reds, blues, mate).expect("star coordinates are valid");
    debug_assert_eq!(m.crossing_count(), n * (n - 1) / 2);
    m
}

/// An `m`-butterfly: two fully crossing `m`-stars looking at the origin,
/// with `2m` segments and all pairs crossing.
///
/// Exact coordinates: reds `(±i/(m+1), 0)`, blues `(i-(m+1), (m+1)-i)` and
/// `((m+1)-i, (m+1)-i)` for `i = 1..m`, mate aligned. Reds are emitted left
/// to right. With [`Perturb::Epsilon`], blue `t` gets `y += (t+1)·ε` for a
/// power-of-two `ε` small enough to preserve every pair state; an exact
/// audit of the full state matrix gates the result.
pub fn make_butterfly(m: usize, perturb: Perturb) -> Result<Matching, GeneratorError> {
    assert!(m >= 1, "butterfly needs at least one segment per star");
    let mm = m as i64;
    let den = mm + 1;
    let mut reds = Vec::with_capacity(2 * m);
    let mut blues = Vec::with_capacity(2 * m);
    // Left reds r'_m .. r'_1 matched to right blues b'_m .. b'_1.
    for t in 0..mm {
        reds.push(Point::red(frac(t - mm, den), int(0)));
        blues.push(Point::blue(int(t + 1), int(t + 1)));
    }
    // Right reds r_1 .. r_m matched to left blues b_1 .. b_m.
    for t in mm..(2 * mm) {
        reds.push(Point::red(frac(t - mm + 1, den), int(0)));
        blues.push(Point::blue(int(t - 2 * mm), int(2 * mm - t)));
    }
    let mate: Vec<usize> = (0..2 * m).collect();
    let base = Matching::new(reds.clone(), blues.clone(), mate.clone())?;
    debug_assert_eq!(base.crossing_count(), m * (2 * m - 1));

    match perturb {
        Perturb::Off => Ok(base),
        Perturb::Epsilon => {
            // 2^k > 16 m (m+1)^3 keeps every orientation sign intact; the
            // state-matrix audit below is the actual gate.
            let bound: u128 = 16 * (m as u128) * ((m as u128 + 1).pow(3));
            let k = 128 - bound.leading_zeros() + 1;
            let eps = BigRational::new(BigInt::from(1), BigInt::from(1u8) << k as usize);
            let blues_eps: Vec<Point> = blues
                .iter()
                .enumerate()
                .map(|(t, p)| {
                    Point::blue(
                        p.x.clone(),
                        &p.y + &eps * BigRational::from_integer(BigInt::from(t as i64 + 1)),
                    )
                })
                .collect();
            let pert = Matching::new(reds, blues_eps, mate)?;
            for i in 0..base.len() {
                for j in (i + 1)..base.len() {
                    if base.pair_state(i, j) != pert.pair_state(i, j) {
                        return Err(GeneratorError::PerturbationChangedStates);
                    }
                }
            }
            Ok(pert)
        }
    }
}

/// Point family of a fence label: the `p_i` run or the `q_i` run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    P,
    Q,
}

/// Crossing classification inside a derived fence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossingKind {
    End,
    Middle,
}

/// Label of one fence point: family plus the paper-style index
/// (`1, 3, 4, …, 2m, 2m+2`; indices `2` and `2m+1` are skipped).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FenceLabel {
    pub family: Family,
    pub index: usize,
}

impl FenceLabel {
    /// Column of the label: indices `2k-1` and `2k` form column `k`.
    pub fn column(&self) -> usize {
        (self.index + 1) / 2
    }
}

/// Descriptor tying a fence matching's point arrays back to their labels.
#[derive(Debug, Clone)]
pub struct FenceDescriptor {
    pub m: usize,
    /// Label of each red point, parallel to the matching's red array.
    pub red_labels: Vec<FenceLabel>,
    /// Label of each blue point, parallel to the matching's blue array.
    pub blue_labels: Vec<FenceLabel>,
    reds: Vec<Point>,
    blues: Vec<Point>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FenceError {
    #[error("matching is not on the descriptor's point set")]
    WrongPointSet,
    #[error("crossing ({0}, {1}) fits neither the end nor the middle pattern")]
    UnclassifiableCrossing(usize, usize),
    #[error("pair ({0}, {1}) does not cross")]
    NotACrossing(usize, usize),
}

fn fence_color(index: usize) -> Color {
    match index % 4 {
        1 | 2 => Color::Red,
        _ => Color::Blue,
    }
}

/// Builds an `m`-fence: `4m` points in convex position with colors
/// alternating every two points, matched as `p_i q_{i+3}` and `q_i p_{i+3}`
/// for odd `i`, giving `2m` segments and exactly `3m - 2` crossings.
pub fn make_fence(m: usize) -> (Matching, FenceDescriptor) {
    assert!(m >= 2, "fence needs m >= 2");
    // Counter-clockwise label order along the parabola.
    let mut ccw: Vec<FenceLabel> = Vec::with_capacity(4 * m);
    ccw.push(FenceLabel {
        family: Family::Q,
        index: 2 * m + 2,
    });
    for i in (3..=2 * m).rev() {
        ccw.push(FenceLabel {
            family: Family::Q,
            index: i,
        });
    }
    ccw.push(FenceLabel {
        family: Family::Q,
        index: 1,
    });
    ccw.push(FenceLabel {
        family: Family::P,
        index: 1,
    });
    for i in 3..=2 * m {
        ccw.push(FenceLabel {
            family: Family::P,
            index: i,
        });
    }
    ccw.push(FenceLabel {
        family: Family::P,
        index: 2 * m + 2,
    });
    debug_assert_eq!(ccw.len(), 4 * m);

    let mut reds = Vec::new();
    let mut blues = Vec::new();
    let mut red_labels = Vec::new();
    let mut blue_labels = Vec::new();
    let mut red_of = std::collections::HashMap::new();
    let mut blue_of = std::collections::HashMap::new();
    for (t, label) in ccw.iter().enumerate() {
        let x = t as i64 - 2 * m as i64;
        let color = fence_color(label.index);
        let point = Point::new(int(x), int(x * x), color);
        match color {
            Color::Red => {
                red_of.insert(*label, reds.len());
                reds.push(point);
                red_labels.push(*label);
            }
            Color::Blue => {
                blue_of.insert(*label, blues.len());
                blues.push(point);
                blue_labels.push(*label);
            }
        }
    }

    let mut mate = vec![usize::MAX; reds.len()];
    let mut link = |a: FenceLabel, b: FenceLabel| {
        let (r, b) = if fence_color(a.index) == Color::Red {
            (red_of[&a], blue_of[&b])
        } else {
            (red_of[&b], blue_of[&a])
        };
        mate[r] = b;
    };
    for i in (1..=2 * m - 1).step_by(2) {
        link(
            FenceLabel {
                family: Family::P,
                index: i,
            },
            FenceLabel {
                family: Family::Q,
                index: i + 3,
            },
        );
        link(
            FenceLabel {
                family: Family::Q,
                index: i,
            },
            FenceLabel {
                family: Family::P,
                index: i + 3,
            },
        );
    }

    let matching =
        Matching::new(reds.clone(), blues.clone(), mate).expect("fence coordinates are valid");
    let descriptor = FenceDescriptor {
        m,
        red_labels,
        blue_labels,
        reds,
        blues,
    };
    debug_assert_eq!(matching.crossing_count(), 3 * m - 2);
    debug_assert!(is_derived_fence(&matching, &descriptor).expect("own point set"));
    (matching, descriptor)
}

fn partner_label(m: &Matching, d: &FenceDescriptor, label: FenceLabel) -> FenceLabel {
    if fence_color(label.index) == Color::Red {
        let r = d
            .red_labels
            .iter()
            .position(|l| *l == label)
            .expect("label exists");
        d.blue_labels[m.mate()[r]]
    } else {
        let b = d
            .blue_labels
            .iter()
            .position(|l| *l == label)
            .expect("label exists");
        let r = m
            .mate()
            .iter()
            .position(|&mb| mb == b)
            .expect("mate is a bijection");
        d.red_labels[r]
    }
}

/// True iff `m` is a derived fence over `d`'s point set: for every middle
/// column `k` and family `w`, the pair `(w_{2k-1}, w_{2k})` is matched to
/// the neighboring columns `(k-1, k+1)` in one of the two orders.
pub fn is_derived_fence(m: &Matching, d: &FenceDescriptor) -> Result<bool, FenceError> {
    if m.reds() != d.reds.as_slice() || m.blues() != d.blues.as_slice() {
        return Err(FenceError::WrongPointSet);
    }
    for k in 2..=d.m {
        for family in [Family::P, Family::Q] {
            let lo = FenceLabel {
                family,
                index: 2 * k - 1,
            };
            let hi = FenceLabel {
                family,
                index: 2 * k,
            };
            let lo_col = partner_label(m, d, lo).column();
            let hi_col = partner_label(m, d, hi).column();
            let straight = lo_col == k - 1 && hi_col == k + 1;
            let crossed = lo_col == k + 1 && hi_col == k - 1;
            if !straight && !crossed {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Classifies a crossing of a derived fence as an end crossing (a swapped
/// `(w_{2k-1}, w_{2k})` pair) or a middle crossing (a `{p q, q p}` pattern
/// across two columns). Any other shape is an error; it cannot occur on a
/// derived fence.
pub fn classify_crossing(
    m: &Matching,
    d: &FenceDescriptor,
    i: usize,
    j: usize,
) -> Result<CrossingKind, FenceError> {
    if !m.cross(i, j) {
        return Err(FenceError::NotACrossing(i, j));
    }
    let seg_labels =
        |r: usize| -> (FenceLabel, FenceLabel) { (d.red_labels[r], d.blue_labels[m.mate()[r]]) };
    let (ri, bi) = seg_labels(i);
    let (rj, bj) = seg_labels(j);

    // End: the two segments are the mates of w_{2k-1} and w_{2k} for one
    // family and one middle column, matched in the swapped order.
    for k in 2..=d.m {
        for family in [Family::P, Family::Q] {
            let lo = FenceLabel {
                family,
                index: 2 * k - 1,
            };
            let hi = FenceLabel {
                family,
                index: 2 * k,
            };
            let endpoints_i = [ri, bi];
            let endpoints_j = [rj, bj];
            let covers = (endpoints_i.contains(&lo) && endpoints_j.contains(&hi))
                || (endpoints_i.contains(&hi) && endpoints_j.contains(&lo));
            if covers {
                let lo_col = partner_label(m, d, lo).column();
                let hi_col = partner_label(m, d, hi).column();
                if lo_col == k + 1 && hi_col == k - 1 {
                    return Ok(CrossingKind::End);
                }
            }
        }
    }

    // Middle: {p_a q_b, q_c p_d} with col(a) = col(c) and col(b) = col(d).
    let mixed = |r: FenceLabel, b: FenceLabel| -> Option<(FenceLabel, FenceLabel)> {
        match (r.family, b.family) {
            (Family::P, Family::Q) => Some((r, b)),
            (Family::Q, Family::P) => Some((b, r)),
            _ => None,
        }
    };
    if let (Some((pi, qi)), Some((pj, qj))) = (mixed(ri, bi), mixed(rj, bj)) {
        // One segment goes p->q, the other q->p, anchored in the same
        // column pair.
        let same_cols = pi.column() == qj.column() && qi.column() == pj.column();
        if same_cols {
            return Ok(CrossingKind::Middle);
        }
    }
    Err(FenceError::UnclassifiableCrossing(i, j))
}

/// The bubble-sort untangle sequence of an `n`-star: exactly `n(n-1)/2`
/// flips of adjacent reds, ending crossing-free.
pub fn scripted_star_sequence(n: usize) -> FlipSequence {
    let start = make_star(n);
    let mut steps = Vec::new();
    for pass in 0..n.saturating_sub(1) {
        for i in 0..(n - 1 - pass) {
            steps.push(Flip::new(i, i + 1));
        }
    }
    let seq = FlipSequence::replay(start, steps).expect("star bubble sort is valid");
    debug_assert!(seq.is_complete());
    debug_assert_eq!(seq.len(), n * (n - 1) / 2);
    seq
}

/// The long scripted untangle sequence of a perturbed `m`-butterfly:
/// both stars are bubble-sorted internally, then `m` rounds of an innermost
/// flip followed by a right-to-left sweep on the left star and a
/// left-to-right sweep on the right star. Total length
/// `2·C(m,2) + 2m(m-1) + m = (3/2)·C(2m,2) - m/2`.
pub fn scripted_butterfly_sequence(m: usize) -> Result<FlipSequence, GeneratorError> {
    let start = make_butterfly(m, Perturb::Epsilon)?;
    let mut steps = Vec::new();
    // Phase 1: untangle each star internally (bubble sort).
    for pass in 0..m.saturating_sub(1) {
        for t in 0..(m - 1 - pass) {
            steps.push(Flip::new(t, t + 1));
        }
    }
    for pass in 0..m.saturating_sub(1) {
        for t in 0..(m - 1 - pass) {
            steps.push(Flip::new(m + t, m + t + 1));
        }
    }
    // Phase 2: m rounds of innermost flip plus two sweeps.
    for _ in 0..m {
        steps.push(Flip::new(m - 1, m));
        for k in 1..m {
            steps.push(Flip::new(m - 1 - k, m - k));
        }
        for k in 1..m {
            steps.push(Flip::new(m - 1 + k, m + k));
        }
    }
    let expected = 2 * (m * (m - 1) / 2) + 2 * m * (m - 1) + m;
    debug_assert_eq!(steps.len(), expected);
    let seq = match FlipSequence::replay(start, steps) {
        Ok(seq) => seq,
        Err(ReplayError::InvalidStep(idx, _)) => {
            return Err(GeneratorError::ScriptInvalidated(idx))
        }
    };
    if !seq.is_complete() {
        return Err(GeneratorError::ScriptInvalidated(seq.len()));
    }
    Ok(seq)
}

/// Families of random instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RandomKind {
    /// Reds on `y = 0`, blues strictly above with pairwise distinct heights.
    RedOnLine,
    /// All `2n` points in strictly convex position (on a parabola).
    Convex,
    /// Unconstrained general-position points.
    General,
}

/// Deterministic seeded sampler. The result always passes the
/// general-position check for its kind.
pub fn sample_random(kind: RandomKind, n: usize, seed: u64) -> Matching {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = (4 * n * n).max(16) as i64;
    loop {
        let candidate = match kind {
            RandomKind::RedOnLine => {
                let xs = distinct_ints(&mut rng, n, -span, span);
                let reds: Vec<Point> = {
                    let mut xs = xs;
                    xs.sort_unstable();
                    xs.into_iter().map(|x| Point::red(int(x), int(0))).collect()
                };
                let ys = distinct_ints(&mut rng, n, 1, span);
                let blues: Vec<Point> = ys
                    .into_iter()
                    .map(|y| Point::blue(int(rng.gen_range(-span..=span)), int(y)))
                    .collect();
                Matching::new(reds, blues, random_mate(&mut rng, n))
            }
            RandomKind::Convex => {
                let xs = distinct_ints(&mut rng, 2 * n, -span, span);
                let mut pts: Vec<(i64, Color)> = xs
                    .iter()
                    .enumerate()
                    .map(|(idx, &x)| (x, if idx < n { Color::Red } else { Color::Blue }))
                    .collect();
                pts.shuffle(&mut rng);
                let reds: Vec<Point> = pts
                    .iter()
                    .filter(|(_, c)| *c == Color::Red)
                    .map(|(x, _)| Point::red(int(*x), int(x * x + 1)))
                    .collect();
                let blues: Vec<Point> = pts
                    .iter()
                    .filter(|(_, c)| *c == Color::Blue)
                    .map(|(x, _)| Point::blue(int(*x), int(x * x + 1)))
                    .collect();
                Matching::new(reds, blues, random_mate(&mut rng, n))
            }
            RandomKind::General => {
                let reds: Vec<Point> = (0..n)
                    .map(|_| {
                        Point::red(
                            int(rng.gen_range(-span..=span)),
                            int(rng.gen_range(-span..=span)),
                        )
                    })
                    .collect();
                let blues: Vec<Point> = (0..n)
                    .map(|_| {
                        Point::blue(
                            int(rng.gen_range(-span..=span)),
                            int(rng.gen_range(-span..=span)),
                        )
                    })
                    .collect();
                Matching::new(reds, blues, random_mate(&mut rng, n))
            }
        };
        match candidate {
            Ok(m) => {
                if kind == RandomKind::RedOnLine {
                    // Distinct blue heights are part of this kind's contract.
                    if m.top_segment().is_err() {
                        continue;
                    }
                    let all: Vec<Point> =
                        m.reds().iter().chain(m.blues().iter()).cloned().collect();
                    if !crate::geometry::check_general_position(&all, true).is_valid() {
                        continue;
                    }
                }
                return m;
            }
            Err(_) => continue,
        }
    }
}

fn distinct_ints(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> Vec<i64> {
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let v = rng.gen_range(lo..=hi);
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

fn random_mate(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut mate: Vec<usize> = (0..n).collect();
    mate.shuffle(rng);
    mate
}

/// Number of pairs of `n` segments, `C(n, 2)`.
pub fn pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::TopSegmentError;

    #[test]
    fn star_crossing_counts() {
        assert_eq!(make_star(2).crossing_count(), 1);
        assert_eq!(make_star(4).crossing_count(), 6);
        assert_eq!(make_star(1).crossing_count(), 0);
    }

    #[test]
    fn star_is_red_on_line() {
        let m = make_star(5);
        assert!(m.is_red_on_line());
        assert!(m.top_segment().is_ok());
    }

    #[test]
    fn butterfly_coordinates_match_construction() {
        let m = make_butterfly(3, Perturb::Off).unwrap();
        // r_1 = (1/4, 0) is the first right red (index 3).
        assert_eq!(m.red(3).x, frac(1, 4));
        // b_1 = (-3, 3) is its mate.
        assert_eq!(m.blue_of(3).x, int(-3));
        assert_eq!(m.blue_of(3).y, int(3));
        // b'_1 = (3, 3) is the mate of r'_1 (index 2).
        assert_eq!(m.blue_of(2).x, int(3));
        assert_eq!(m.crossing_count(), 15);
    }

    #[test]
    fn butterfly_m1_has_one_crossing() {
        let m = make_butterfly(1, Perturb::Off).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m.crossing_count(), 1);
    }

    #[test]
    fn butterfly_heights_tie_without_perturbation() {
        let m = make_butterfly(3, Perturb::Off).unwrap();
        assert_eq!(m.top_segment(), Err(TopSegmentError::TiedBlueHeights));
        let p = make_butterfly(3, Perturb::Epsilon).unwrap();
        // After perturbation the topmost blue is b_1, the mate of r_1.
        assert_eq!(p.top_segment().unwrap(), 3);
    }

    #[test]
    fn perturbed_butterfly_preserves_state_matrix() {
        for m in 1..=4 {
            let base = make_butterfly(m, Perturb::Off).unwrap();
            let pert = make_butterfly(m, Perturb::Epsilon).unwrap();
            for i in 0..base.len() {
                for j in (i + 1)..base.len() {
                    assert_eq!(base.pair_state(i, j), pert.pair_state(i, j));
                }
            }
        }
    }

    #[test]
    fn butterfly_stars_fully_cross() {
        let mb = make_butterfly(3, Perturb::Off).unwrap();
        for i in 0..3 {
            for j in 3..6 {
                assert!(mb.cross(i, j), "inter-star pair ({i},{j}) must cross");
            }
        }
    }

    #[test]
    fn fence_counts() {
        let (m5, _) = make_fence(5);
        assert_eq!(m5.len(), 10);
        assert_eq!(m5.crossing_count(), 13);
        let (m2, d2) = make_fence(2);
        assert_eq!(m2.crossing_count(), 4);
        assert!(is_derived_fence(&m2, &d2).unwrap());
    }

    #[test]
    fn fence_is_convex_position() {
        let (m, _) = make_fence(3);
        let pts: Vec<Point> = m.reds().iter().chain(m.blues().iter()).cloned().collect();
        assert!(crate::geometry::in_convex_position(&pts));
    }

    #[test]
    fn fence_crossings_classify() {
        for m in [2, 3] {
            let (fence, d) = make_fence(m);
            let mut ends = 0;
            let mut middles = 0;
            for (i, j) in fence.crossing_pairs() {
                match classify_crossing(&fence, &d, i, j).unwrap() {
                    CrossingKind::End => ends += 1,
                    CrossingKind::Middle => middles += 1,
                }
            }
            assert_eq!(ends, 2 * (m - 1));
            assert_eq!(middles, m);
        }
    }

    #[test]
    fn fence_flip_keeps_derived_and_drops_one_crossing() {
        let (fence, d) = make_fence(3);
        for (i, j) in fence.crossing_pairs() {
            let next = fence.apply_flip(Flip::new(i, j)).unwrap();
            assert!(is_derived_fence(&next, &d).unwrap());
            assert_eq!(next.crossing_count(), fence.crossing_count() - 1);
        }
    }

    #[test]
    fn scripted_star_lengths() {
        for n in [1, 3, 6] {
            let seq = scripted_star_sequence(n);
            assert_eq!(seq.len(), n * (n - 1) / 2);
            assert!(seq.is_complete());
        }
    }

    #[test]
    fn star_script_drops_one_inversion_per_flip() {
        let seq = scripted_star_sequence(5);
        let inversions = |m: &Matching| -> usize {
            let mut c = 0;
            for i in 0..m.len() {
                for j in (i + 1)..m.len() {
                    if m.mate()[i] > m.mate()[j] {
                        c += 1;
                    }
                }
            }
            c
        };
        let states = seq.states();
        for w in states.windows(2) {
            assert_eq!(inversions(&w[0]), inversions(&w[1]) + 1);
            assert_eq!(w[0].crossing_count(), w[1].crossing_count() + 1);
        }
    }

    #[test]
    fn scripted_butterfly_lengths() {
        for m in 1..=4 {
            let seq = scripted_butterfly_sequence(m).unwrap();
            let n = 2 * m;
            assert_eq!(seq.len(), (3 * n * (n - 1) / 2 - m) / 2);
            assert!(seq.is_complete());
        }
        assert_eq!(scripted_butterfly_sequence(3).unwrap().len(), 21);
        assert_eq!(scripted_butterfly_sequence(2).unwrap().len(), 8);
    }

    #[test]
    fn samplers_are_deterministic_and_valid() {
        for kind in [
            RandomKind::RedOnLine,
            RandomKind::Convex,
            RandomKind::General,
        ] {
            let a = sample_random(kind, 5, 1);
            let b = sample_random(kind, 5, 1);
            assert_eq!(a, b);
        }
        let r = sample_random(RandomKind::RedOnLine, 5, 1);
        assert!(r.is_red_on_line());
        assert!(r.top_segment().is_ok());
        let c = sample_random(RandomKind::Convex, 6, 2);
        let pts: Vec<Point> = c.reds().iter().chain(c.blues().iter()).cloned().collect();
        assert!(crate::geometry::in_convex_position(&pts));
        assert_eq!(pts.len(), 12);
    }
}
