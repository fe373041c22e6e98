//! The matching configuration object, the flip operation, and pair-state
//! classification.
//!
//! A [`Matching`] owns two fixed point arrays (reds and blues) plus a
//! pairing permutation `mate`, with `mate[i]` the blue index matched to red
//! `i`. Flips permute blue partners only, so the red index doubles as a
//! stable segment id across a whole flip sequence.

use crate::geometry::{
    self, check_general_position, convex_hull, convex_regions_intersect, orientation, Color, Coord,
    Orientation, Point, Segment,
};
use num_rational::BigRational;
use num_traits::Zero;
use std::sync::Arc;
use thiserror::Error;

/// State of a pair of segments:
/// `X` crossing, `H` non-crossing with endpoints in convex position,
/// `T` endpoints not in convex position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairState {
    X,
    H,
    T,
}

/// A flip of the segments with red indices `i < j`; only valid when they
/// cross in the matching it is applied to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Flip {
    pub i: usize,
    pub j: usize,
}

impl Flip {
    pub fn new(a: usize, b: usize) -> Self {
        assert!(a != b, "flip needs two distinct segments");
        Flip {
            i: a.min(b),
            j: a.max(b),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchingError {
    #[error("matching needs the same positive number of red and blue points")]
    SizeMismatch,
    #[error("mate is not a bijection")]
    NotABijection,
    #[error("point set violates general position ({0} violations)")]
    GeneralPosition(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlipError {
    #[error("segments {0} and {1} do not cross")]
    NotCrossing(usize, usize),
    #[error("segment index {0} out of range")]
    IndexOutOfRange(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopSegmentError {
    #[error("matching is not red-on-a-line")]
    NotRedOnLine,
    #[error("two blue points share the topmost height")]
    TiedBlueHeights,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SideSplitError {
    #[error("segment {0} still crosses another segment")]
    SegmentStillCrossing(usize),
    #[error("segment {0} has endpoints on both sides of the split line")]
    SplitAmbiguous(usize),
}

/// A perfect straight-line red-blue matching.
///
/// Point arrays are shared behind `Arc`, so cloning a matching (as search
/// does for every explored configuration) copies only the permutation.
#[derive(Debug, Clone)]
pub struct Matching {
    reds: Arc<Vec<Point>>,
    blues: Arc<Vec<Point>>,
    mate: Vec<usize>,
}

impl PartialEq for Matching {
    fn eq(&self, other: &Self) -> bool {
        self.mate == other.mate
            && Arc::ptr_eq(&self.reds, &other.reds)
            && Arc::ptr_eq(&self.blues, &other.blues)
            || (self.mate == other.mate && *self.reds == *other.reds && *self.blues == *other.blues)
    }
}
impl Eq for Matching {}

impl Matching {
    /// Validates sizes, bijectivity, colors and general position.
    pub fn new(
        reds: Vec<Point>,
        blues: Vec<Point>,
        mate: Vec<usize>,
    ) -> Result<Self, MatchingError> {
        if reds.is_empty() || reds.len() != blues.len() || mate.len() != reds.len() {
            return Err(MatchingError::SizeMismatch);
        }
        if reds.iter().any(|p| p.color != Color::Red)
            || blues.iter().any(|p| p.color != Color::Blue)
        {
            return Err(MatchingError::SizeMismatch);
        }
        let mut seen = vec![false; mate.len()];
        for &m in &mate {
            if m >= mate.len() || seen[m] {
                return Err(MatchingError::NotABijection);
            }
            seen[m] = true;
        }
        let all: Vec<Point> = reds.iter().chain(blues.iter()).cloned().collect();
        let report = check_general_position(&all, false);
        if !report.is_valid() {
            return Err(MatchingError::GeneralPosition(report.violations.len()));
        }
        Ok(Matching {
            reds: Arc::new(reds),
            blues: Arc::new(blues),
            mate,
        })
    }

    /// Number of segments.
    pub fn len(&self) -> usize {
        self.mate.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mate.is_empty()
    }

    pub fn reds(&self) -> &[Point] {
        &self.reds
    }

    pub fn blues(&self) -> &[Point] {
        &self.blues
    }

    pub fn mate(&self) -> &[usize] {
        &self.mate
    }

    pub fn red(&self, i: usize) -> &Point {
        &self.reds[i]
    }

    pub fn blue(&self, j: usize) -> &Point {
        &self.blues[j]
    }

    /// Blue endpoint of segment `i`.
    pub fn blue_of(&self, i: usize) -> &Point {
        &self.blues[self.mate[i]]
    }

    /// Owned segment for red index `i`.
    pub fn segment(&self, i: usize) -> Segment {
        Segment {
            red: self.reds[i].clone(),
            blue: self.blue_of(i).clone(),
        }
    }

    /// Crossing test between segments `i` and `j` without allocating.
    pub fn cross(&self, i: usize, j: usize) -> bool {
        geometry::properly_cross(self.red(i), self.blue_of(i), self.red(j), self.blue_of(j))
    }

    /// X / H / T classification of the pair `(i, j)`.
    ///
    /// Under general position no three of the four endpoints are collinear
    /// (any three mix colors), so the hull of the four endpoints has either
    /// four vertices (convex position) or three (one endpoint inside).
    pub fn pair_state(&self, i: usize, j: usize) -> PairState {
        assert!(i != j, "pair_state needs two distinct segments");
        if self.cross(i, j) {
            return PairState::X;
        }
        let pts = [
            self.red(i).clone(),
            self.blue_of(i).clone(),
            self.red(j).clone(),
            self.blue_of(j).clone(),
        ];
        if convex_hull(&pts).len() == 4 {
            PairState::H
        } else {
            PairState::T
        }
    }

    /// Applies a flip, returning the new matching. The two blue partners are
    /// exchanged; everything else is untouched.
    pub fn apply_flip(&self, f: Flip) -> Result<Matching, FlipError> {
        if f.j >= self.len() {
            return Err(FlipError::IndexOutOfRange(f.j));
        }
        if !self.cross(f.i, f.j) {
            return Err(FlipError::NotCrossing(f.i, f.j));
        }
        let mut mate = self.mate.clone();
        mate.swap(f.i, f.j);
        let next = Matching {
            reds: Arc::clone(&self.reds),
            blues: Arc::clone(&self.blues),
            mate,
        };
        debug_assert!(!next.cross(f.i, f.j));
        Ok(next)
    }

    /// All crossing pairs `(i, j)` with `i < j`, in lexicographic order.
    /// The matching is crossing-free iff this is empty.
    pub fn crossing_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if self.cross(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn crossing_count(&self) -> usize {
        self.crossing_pairs().len()
    }

    pub fn is_crossing_free(&self) -> bool {
        let n = self.len();
        for i in 0..n {
            for j in (i + 1)..n {
                if self.cross(i, j) {
                    return false;
                }
            }
        }
        true
    }

    /// Sum of Euclidean segment lengths, each square root taken with at
    /// least `2^-96` absolute precision. Diagnostic only: every flip
    /// strictly shortens it, but no control flow depends on the value.
    pub fn total_length(&self) -> BigRational {
        let mut sum = BigRational::zero();
        for i in 0..self.len() {
            let r = self.red(i);
            let b = self.blue_of(i);
            let dx = &r.x - &b.x;
            let dy = &r.y - &b.y;
            let sq = &dx * &dx + &dy * &dy;
            sum += geometry::sqrt_approx(&sq, 96);
        }
        sum
    }

    /// Number of pairs in state `X` or `T`.
    pub fn non_h_count(&self) -> usize {
        let n = self.len();
        let mut count = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                if self.pair_state(i, j) != PairState::H {
                    count += 1;
                }
            }
        }
        count
    }

    /// True iff all reds lie on `y = 0` and all blues strictly above.
    pub fn is_red_on_line(&self) -> bool {
        self.reds.iter().all(|p| p.y.is_zero())
            && self.blues.iter().all(|p| p.y > BigRational::zero())
    }

    /// Index of the segment with the topmost blue endpoint.
    pub fn top_segment(&self) -> Result<usize, TopSegmentError> {
        if !self.is_red_on_line() {
            return Err(TopSegmentError::NotRedOnLine);
        }
        let mut best = 0usize;
        let mut tied = false;
        for i in 1..self.len() {
            let a = &self.blue_of(i).y;
            let b = &self.blue_of(best).y;
            if a > b {
                best = i;
                tied = false;
            } else if a == b {
                tied = true;
            }
        }
        if tied {
            return Err(TopSegmentError::TiedBlueHeights);
        }
        Ok(best)
    }

    /// Splits the other segments across the line through segment `i`.
    ///
    /// Requires segment `i` to cross nothing. Every other segment must have
    /// both endpoints strictly on one side of the line; a straddling segment
    /// signals an upstream bug and is reported as `SplitAmbiguous`.
    pub fn side_split(&self, i: usize) -> Result<SideSplit, SideSplitError> {
        for j in 0..self.len() {
            if j != i && self.cross(i, j) {
                return Err(SideSplitError::SegmentStillCrossing(i));
            }
        }
        let a = self.red(i);
        let b = self.blue_of(i);
        let mut left = Vec::new();
        let mut right = Vec::new();
        for j in 0..self.len() {
            if j == i {
                continue;
            }
            let o1 = orientation(a, b, self.red(j));
            let o2 = orientation(a, b, self.blue_of(j));
            match (o1, o2) {
                (Orientation::Ccw, Orientation::Ccw) => left.push(j),
                (Orientation::Cw, Orientation::Cw) => right.push(j),
                _ => return Err(SideSplitError::SplitAmbiguous(j)),
            }
        }
        Ok(SideSplit {
            left: SubMatching::from_indices(self, left),
            right: SubMatching::from_indices(self, right),
        })
    }

    /// Restriction of the matching to the given red indices (paired with
    /// their current blues).
    pub fn restrict(&self, indices: &[usize]) -> Matching {
        let reds: Vec<Point> = indices.iter().map(|&i| self.red(i).clone()).collect();
        let blues: Vec<Point> = indices.iter().map(|&i| self.blue_of(i).clone()).collect();
        let mate = (0..indices.len()).collect();
        Matching {
            reds: Arc::new(reds),
            blues: Arc::new(blues),
            mate,
        }
    }

    /// Finest partition of the given segments into groups whose convex hulls
    /// are pairwise disjoint: start from singletons and merge any two groups
    /// whose hulls intersect, until stable.
    pub fn disjoint_hull_parts(&self, indices: &[usize]) -> Vec<Vec<usize>> {
        let mut parts: Vec<Vec<usize>> = indices.iter().map(|&i| vec![i]).collect();
        loop {
            let hulls: Vec<Vec<Point>> = parts.iter().map(|part| self.hull_of(part)).collect();
            let mut merged = false;
            'outer: for a in 0..parts.len() {
                for b in (a + 1)..parts.len() {
                    if convex_regions_intersect(&hulls[a], &hulls[b]) {
                        let tail = parts.remove(b);
                        parts[a].extend(tail);
                        merged = true;
                        break 'outer;
                    }
                }
            }
            if !merged {
                return parts;
            }
        }
    }

    fn hull_of(&self, part: &[usize]) -> Vec<Point> {
        let pts: Vec<Point> = part
            .iter()
            .flat_map(|&i| [self.red(i).clone(), self.blue_of(i).clone()])
            .collect();
        convex_hull(&pts)
    }

    /// Conservative sufficient freeness check: segment `i` crosses nothing
    /// and is disjoint from the convex hull of every part of the
    /// disjoint-hull decomposition of the remaining segments.
    ///
    /// Whether this recursive check captures every free segment in the sense
    /// of an arbitrary disjoint-hull partition is open; greedy untangling
    /// only relies on the crossing-free-top-segment case.
    pub fn is_free(&self, i: usize) -> bool {
        for j in 0..self.len() {
            if j != i && self.cross(i, j) {
                return false;
            }
        }
        let rest: Vec<usize> = (0..self.len()).filter(|&j| j != i).collect();
        if rest.is_empty() {
            return true;
        }
        let seg_hull = vec![self.red(i).clone(), self.blue_of(i).clone()];
        self.disjoint_hull_parts(&rest)
            .iter()
            .all(|part| !convex_regions_intersect(&seg_hull, &self.hull_of(part)))
    }

    /// Rebuilds a matching sharing this one's point arrays with a different
    /// mate permutation. Used by search to materialize visited states.
    pub fn with_mate(&self, mate: Vec<usize>) -> Matching {
        assert_eq!(mate.len(), self.len());
        Matching {
            reds: Arc::clone(&self.reds),
            blues: Arc::clone(&self.blues),
            mate,
        }
    }

    /// Maximum y over all points, as a reference height for projections.
    pub fn max_y(&self) -> Coord {
        let mut best = self.reds[0].y.clone();
        for p in self.reds.iter().chain(self.blues.iter()) {
            if p.y > best {
                best = p.y.clone();
            }
        }
        best
    }
}

/// One side of a [`Matching::side_split`].
#[derive(Debug, Clone)]
pub struct SubMatching {
    /// Red indices in the parent matching.
    pub indices: Vec<usize>,
    /// Standalone matching restricted to those segments.
    pub matching: Option<Matching>,
}

impl SubMatching {
    fn from_indices(parent: &Matching, indices: Vec<usize>) -> Self {
        let matching = if indices.is_empty() {
            None
        } else {
            Some(parent.restrict(&indices))
        };
        SubMatching { indices, matching }
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }
}

#[derive(Debug, Clone)]
pub struct SideSplit {
    pub left: SubMatching,
    pub right: SubMatching,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{frac, int};
    use num_traits::Signed;

    fn x_shape() -> Matching {
        Matching::new(
            vec![Point::red(int(0), int(0)), Point::red(int(0), int(2))],
            vec![Point::blue(int(2), int(2)), Point::blue(int(2), int(0))],
            vec![0, 1],
        )
        .unwrap()
    }

    #[test]
    fn x_shape_flip_removes_crossing() {
        let m = x_shape();
        assert_eq!(m.crossing_pairs(), vec![(0, 1)]);
        assert_eq!(m.pair_state(0, 1), PairState::X);
        let after = m.apply_flip(Flip::new(0, 1)).unwrap();
        assert!(after.is_crossing_free());
        assert_eq!(after.pair_state(0, 1), PairState::H);
        // Re-flipping the same pair is invalid.
        assert_eq!(
            after.apply_flip(Flip::new(0, 1)),
            Err(FlipError::NotCrossing(0, 1))
        );
    }

    #[test]
    fn flip_changes_exactly_two_mates_and_shortens() {
        let m = x_shape();
        let before = m.total_length();
        let after = m.apply_flip(Flip::new(0, 1)).unwrap();
        let changed = m
            .mate()
            .iter()
            .zip(after.mate())
            .filter(|(a, b)| a != b)
            .count();
        assert_eq!(changed, 2);
        assert!(after.total_length() < before);
        // Two unit-square diagonals, 4*sqrt(2) total, vs two sides plus
        // two verticals after the flip.
        let diff = before - int(4) * crate::geometry::sqrt_approx(&int(2), 96);
        assert!(diff.abs() < frac(1, 1 << 40));
    }

    #[test]
    fn t_state_detected() {
        // Segment 1's blue endpoint lies inside the triangle of the other
        // three endpoints.
        let m = Matching::new(
            vec![Point::red(int(0), int(0)), Point::red(int(10), int(1))],
            vec![Point::blue(int(4), int(9)), Point::blue(int(5), int(3))],
            vec![0, 1],
        )
        .unwrap();
        assert_eq!(m.pair_state(0, 1), PairState::T);
        assert_eq!(m.non_h_count(), 1);
    }

    #[test]
    fn parallel_pair_is_h() {
        let m = Matching::new(
            vec![Point::red(int(0), int(0)), Point::red(int(0), int(3))],
            vec![Point::blue(int(2), int(1)), Point::blue(int(2), int(4))],
            vec![0, 1],
        )
        .unwrap();
        assert_eq!(m.pair_state(0, 1), PairState::H);
    }

    #[test]
    fn top_segment_basics() {
        let m = Matching::new(
            vec![Point::red(int(0), int(0)), Point::red(int(4), int(0))],
            vec![Point::blue(int(1), int(5)), Point::blue(int(3), int(2))],
            vec![0, 1],
        )
        .unwrap();
        assert_eq!(m.top_segment().unwrap(), 0);

        let tied = Matching::new(
            vec![Point::red(int(0), int(0)), Point::red(int(4), int(0))],
            vec![Point::blue(int(1), int(5)), Point::blue(int(3), int(5))],
            vec![0, 1],
        )
        .unwrap();
        assert_eq!(tied.top_segment(), Err(TopSegmentError::TiedBlueHeights));

        let general = x_shape();
        assert_eq!(general.top_segment(), Err(TopSegmentError::NotRedOnLine));
    }

    #[test]
    fn side_split_two_sides() {
        // Tall middle segment, one segment fully on each side.
        let m = Matching::new(
            vec![
                Point::red(int(0), int(0)),
                Point::red(int(-3), int(0)),
                Point::red(int(3), int(0)),
            ],
            vec![
                Point::blue(int(0), int(10)),
                Point::blue(int(-2), int(2)),
                Point::blue(int(4), int(2)),
            ],
            vec![0, 1, 2],
        )
        .unwrap();
        let split = m.side_split(0).unwrap();
        assert_eq!(split.left.len() + split.right.len(), 2);
        assert!(!split.left.is_empty());
        assert!(!split.right.is_empty());
    }

    #[test]
    fn side_split_single_segment() {
        let m = Matching::new(
            vec![Point::red(int(0), int(0))],
            vec![Point::blue(int(1), int(1))],
            vec![0],
        )
        .unwrap();
        let split = m.side_split(0).unwrap();
        assert!(split.left.is_empty() && split.right.is_empty());
    }

    #[test]
    fn crossing_segment_is_not_free() {
        let m = x_shape();
        assert!(!m.is_free(0));
        assert!(!m.is_free(1));
    }

    #[test]
    fn distant_segment_is_free() {
        let m = Matching::new(
            vec![Point::red(int(0), int(0)), Point::red(int(100), int(0))],
            vec![Point::blue(int(1), int(1)), Point::blue(int(101), int(1))],
            vec![0, 1],
        )
        .unwrap();
        assert!(m.is_free(0));
        assert!(m.is_free(1));
    }
}
