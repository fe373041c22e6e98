//! Untangling engines: the greedy top-segment algorithm, arbitrary-policy
//! untangling, and exhaustive search over the reconfiguration DAG.
//!
//! Search state is keyed by the mate permutation alone — all configurations
//! on a fixed point set share the arrays, and a permutation pins the
//! geometry completely.

use crate::matching::{Flip, Matching, SideSplitError, TopSegmentError};
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{HashMap, VecDeque};
use thiserror::Error;

/// A replayable flip sequence with its start and cached end configuration.
#[derive(Debug, Clone)]
pub struct FlipSequence {
    pub start: Matching,
    pub steps: Vec<Flip>,
    pub end: Matching,
}

impl FlipSequence {
    /// Replays `steps` from `start`, failing on the first invalid flip.
    pub fn replay(start: Matching, steps: Vec<Flip>) -> Result<Self, ReplayError> {
        let mut cur = start.clone();
        for (idx, &f) in steps.iter().enumerate() {
            cur = cur
                .apply_flip(f)
                .map_err(|_| ReplayError::InvalidStep(idx, f))?;
        }
        Ok(FlipSequence {
            start,
            steps,
            end: cur,
        })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// True iff the sequence ends in a crossing-free matching.
    pub fn is_complete(&self) -> bool {
        self.end.is_crossing_free()
    }

    /// Every configuration along the sequence, including start and end.
    pub fn states(&self) -> Vec<Matching> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut cur = self.start.clone();
        out.push(cur.clone());
        for &f in &self.steps {
            cur = cur.apply_flip(f).expect("sequence validated on build");
            out.push(cur.clone());
        }
        out
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReplayError {
    #[error("flip {1:?} at step {0} is invalid")]
    InvalidStep(usize, Flip),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GreedyError {
    #[error(transparent)]
    Top(#[from] TopSegmentError),
    #[error(transparent)]
    Split(#[from] SideSplitError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("search budget exhausted after exploring {0} configurations")]
    BudgetExhausted(usize),
}

/// Result of an exact shortest or longest search.
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub length: usize,
    pub witness: FlipSequence,
    pub explored: usize,
}

/// Flip-choice policies for [`run_policy`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Policy {
    /// Lexicographically first crossing pair.
    FirstFound,
    /// Uniformly random crossing pair, deterministic per seed.
    Random(u64),
    /// Crossing pair whose higher blue endpoint is topmost; ties broken by
    /// the lower blue endpoint, then lexicographically.
    TopMost,
}

/// Runs the greedy algorithm: while the top segment crosses anything, flip
/// it with the topmost segment crossing it; once the top segment is free,
/// recurse on the two sides it splits off.
///
/// Requires a red-on-a-line matching with pairwise distinct blue heights.
/// The returned sequence ends crossing-free and its length never exceeds
/// the number of non-H pairs of the start (hence `n(n-1)/2`).
pub fn run_greedy_top(m: &Matching) -> Result<FlipSequence, GreedyError> {
    if !m.is_red_on_line() {
        return Err(GreedyError::Top(TopSegmentError::NotRedOnLine));
    }
    let mut cur = m.clone();
    let mut steps = Vec::new();
    let all: Vec<usize> = (0..m.len()).collect();
    greedy_on_subset(&mut cur, &all, &mut steps)?;
    debug_assert!(cur.is_crossing_free());
    Ok(FlipSequence {
        start: m.clone(),
        steps: steps.clone(),
        end: cur,
    })
}

fn top_of_subset(m: &Matching, subset: &[usize]) -> Result<usize, TopSegmentError> {
    let mut best: Option<usize> = None;
    let mut tied = false;
    for &i in subset {
        match best {
            None => best = Some(i),
            Some(b) => {
                let yi = &m.blue_of(i).y;
                let yb = &m.blue_of(b).y;
                if yi > yb {
                    best = Some(i);
                    tied = false;
                } else if yi == yb {
                    tied = true;
                }
            }
        }
    }
    if tied {
        return Err(TopSegmentError::TiedBlueHeights);
    }
    Ok(best.expect("subset is non-empty"))
}

fn greedy_on_subset(
    cur: &mut Matching,
    subset: &[usize],
    steps: &mut Vec<Flip>,
) -> Result<(), GreedyError> {
    if subset.is_empty() {
        return Ok(());
    }
    // The topmost blue point of the subset is fixed; the top segment is
    // whichever red currently holds it, so each flip hands the role to the
    // flip partner.
    let mut top = top_of_subset(cur, subset)?;
    loop {
        // Topmost segment among those crossing the top segment.
        let mut partner: Option<usize> = None;
        for &j in subset {
            if j != top && cur.cross(top, j) {
                partner = match partner {
                    None => Some(j),
                    Some(p) => {
                        if cur.blue_of(j).y > cur.blue_of(p).y {
                            Some(j)
                        } else {
                            Some(p)
                        }
                    }
                };
            }
        }
        match partner {
            Some(j) => {
                let f = Flip::new(top, j);
                *cur = cur.apply_flip(f).expect("partner crosses top");
                steps.push(f);
                top = j;
            }
            None => break,
        }
    }
    // The top segment is now free within this subset; split the rest across
    // its supporting line and recurse.
    let a = cur.red(top).clone();
    let b = cur.blue_of(top).clone();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for &j in subset {
        if j == top {
            continue;
        }
        use crate::geometry::{orientation, Orientation};
        let o1 = orientation(&a, &b, cur.red(j));
        let o2 = orientation(&a, &b, cur.blue_of(j));
        match (o1, o2) {
            (Orientation::Ccw, Orientation::Ccw) => left.push(j),
            (Orientation::Cw, Orientation::Cw) => right.push(j),
            _ => return Err(GreedyError::Split(SideSplitError::SplitAmbiguous(j))),
        }
    }
    greedy_on_subset(cur, &left, steps)?;
    greedy_on_subset(cur, &right, steps)?;
    Ok(())
}

/// Repeatedly flips a crossing pair chosen by `policy` until the matching is
/// crossing-free. Always terminates: each flip strictly shortens total
/// segment length, so no configuration repeats.
pub fn run_policy(m: &Matching, policy: Policy) -> FlipSequence {
    let mut rng = match policy {
        Policy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut cur = m.clone();
    let mut steps = Vec::new();
    loop {
        let pairs = cur.crossing_pairs();
        if pairs.is_empty() {
            break;
        }
        let (i, j) = match policy {
            Policy::FirstFound => pairs[0],
            Policy::Random(_) => {
                let rng = rng.as_mut().expect("rng initialized for Random policy");
                pairs[rng.gen_range(0..pairs.len())]
            }
            Policy::TopMost => {
                let mut best = pairs[0];
                for &(i, j) in &pairs[1..] {
                    if topmost_key(&cur, (i, j)) > topmost_key(&cur, best) {
                        best = (i, j);
                    }
                }
                best
            }
        };
        let f = Flip::new(i, j);
        cur = cur.apply_flip(f).expect("chosen pair crosses");
        steps.push(f);
    }
    FlipSequence {
        start: m.clone(),
        steps,
        end: cur,
    }
}

fn topmost_key(m: &Matching, (i, j): (usize, usize)) -> (BigRational, BigRational) {
    let yi = m.blue_of(i).y.clone();
    let yj = m.blue_of(j).y.clone();
    if yi >= yj {
        (yi, yj)
    } else {
        (yj, yi)
    }
}

/// Exact `dist(M)`: length of a shortest untangle sequence, via
/// breadth-first exploration keyed by mate permutation.
pub fn shortest_untangle(m: &Matching, budget: usize) -> Result<SearchResult, SearchError> {
    let start_key = m.mate().to_vec();
    let mut parents: HashMap<Vec<usize>, Option<(Vec<usize>, Flip)>> = HashMap::new();
    parents.insert(start_key.clone(), None);
    let mut queue = VecDeque::new();
    queue.push_back((m.clone(), 0usize));
    let mut explored = 1usize;
    while let Some((cur, depth)) = queue.pop_front() {
        let pairs = cur.crossing_pairs();
        if pairs.is_empty() {
            let steps = backtrace(&parents, cur.mate().to_vec());
            let witness = FlipSequence::replay(m.clone(), steps).expect("BFS path replays");
            return Ok(SearchResult {
                length: depth,
                witness,
                explored,
            });
        }
        for (i, j) in pairs {
            let f = Flip::new(i, j);
            let next = cur.apply_flip(f).expect("crossing pair");
            let key = next.mate().to_vec();
            if !parents.contains_key(&key) {
                if explored >= budget {
                    return Err(SearchError::BudgetExhausted(explored));
                }
                explored += 1;
                parents.insert(key, Some((cur.mate().to_vec(), f)));
                queue.push_back((next, depth + 1));
            }
        }
    }
    unreachable!("every matching reaches a crossing-free state");
}

fn backtrace(
    parents: &HashMap<Vec<usize>, Option<(Vec<usize>, Flip)>>,
    mut key: Vec<usize>,
) -> Vec<Flip> {
    let mut steps = Vec::new();
    while let Some(Some((prev, f))) = parents.get(&key) {
        steps.push(*f);
        key = prev.clone();
    }
    steps.reverse();
    steps
}

/// Exact longest untangle sequence length, via depth-first search with
/// memoized longest-distance-to-sink. Correct because the reconfiguration
/// graph is acyclic.
pub fn longest_untangle(m: &Matching, budget: usize) -> Result<SearchResult, SearchError> {
    let mut memo: HashMap<Vec<usize>, (usize, Option<Flip>)> = HashMap::new();
    let mut explored = 0usize;
    longest_rec(m, budget, &mut memo, &mut explored)?;
    let mut steps = Vec::new();
    let mut cur = m.clone();
    while let Some(&(_, Some(f))) = memo.get(cur.mate()) {
        steps.push(f);
        cur = cur.apply_flip(f).expect("memoized flip is valid");
    }
    let length = memo[m.mate()].0;
    let witness = FlipSequence::replay(m.clone(), steps).expect("memoized path replays");
    debug_assert_eq!(witness.len(), length);
    Ok(SearchResult {
        length,
        witness,
        explored,
    })
}

fn longest_rec(
    m: &Matching,
    budget: usize,
    memo: &mut HashMap<Vec<usize>, (usize, Option<Flip>)>,
    explored: &mut usize,
) -> Result<usize, SearchError> {
    if let Some(&(len, _)) = memo.get(m.mate()) {
        return Ok(len);
    }
    if *explored >= budget {
        return Err(SearchError::BudgetExhausted(*explored));
    }
    *explored += 1;
    let mut best: usize = 0;
    let mut best_flip: Option<Flip> = None;
    for (i, j) in m.crossing_pairs() {
        let f = Flip::new(i, j);
        let next = m.apply_flip(f).expect("crossing pair");
        let sub = longest_rec(&next, budget, memo, explored)?;
        if sub + 1 > best {
            best = sub + 1;
            best_flip = Some(f);
        }
    }
    memo.insert(m.mate().to_vec(), (best, best_flip));
    Ok(best)
}

/// Outcome of a [`visit_sequences`] walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VisitSummary {
    /// Number of maximal sequences visited.
    pub count: usize,
    /// True when the walk stopped early because `limit` was reached.
    pub truncated: bool,
}

/// Depth-first enumeration of every maximal flip sequence from `m`, in
/// lexicographic flip order, visiting each exactly once. The visitor
/// receives the flip steps and the final (crossing-free) matching.
///
/// Stops after `limit` sequences, reporting truncation in the summary.
pub fn visit_sequences<F>(m: &Matching, limit: usize, mut visitor: F) -> VisitSummary
where
    F: FnMut(&[Flip], &Matching),
{
    let mut steps: Vec<Flip> = Vec::new();
    let mut summary = VisitSummary {
        count: 0,
        truncated: false,
    };
    visit_rec(m, limit, &mut steps, &mut visitor, &mut summary);
    summary
}

fn visit_rec<F>(
    m: &Matching,
    limit: usize,
    steps: &mut Vec<Flip>,
    visitor: &mut F,
    summary: &mut VisitSummary,
) where
    F: FnMut(&[Flip], &Matching),
{
    if summary.count >= limit {
        summary.truncated = true;
        return;
    }
    let pairs = m.crossing_pairs();
    if pairs.is_empty() {
        visitor(steps, m);
        summary.count += 1;
        return;
    }
    for (i, j) in pairs {
        let f = Flip::new(i, j);
        let next = m.apply_flip(f).expect("crossing pair");
        steps.push(f);
        visit_rec(&next, limit, steps, visitor, summary);
        steps.pop();
        if summary.truncated {
            return;
        }
    }
}

/// Materialized enumeration of maximal flip sequences.
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub sequences: Vec<FlipSequence>,
    pub truncated: bool,
}

/// Collects every maximal flip sequence from `m`, up to `limit`.
pub fn enumerate_sequences(m: &Matching, limit: usize) -> Enumeration {
    let mut sequences = Vec::new();
    let summary = visit_sequences(m, limit, |steps, _end| {
        let seq = FlipSequence::replay(m.clone(), steps.to_vec()).expect("enumerated path replays");
        sequences.push(seq);
    });
    Enumeration {
        sequences,
        truncated: summary.truncated,
    }
}

/// Replay report for an externally supplied flip list.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    /// Number of leading steps that replayed validly.
    pub valid_prefix: usize,
    /// Index of the first invalid step, if any.
    pub first_invalid: Option<usize>,
    /// Crossing count after the valid prefix.
    pub final_crossings: usize,
    /// Change in crossing count at each valid step.
    pub crossing_deltas: Vec<i64>,
    /// Final matching after the valid prefix.
    pub end: Matching,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.first_invalid.is_none()
    }

    /// Valid and ending crossing-free.
    pub fn is_complete(&self) -> bool {
        self.is_valid() && self.final_crossings == 0
    }
}

/// Replays `steps` on `m`, reporting the first invalid step (if any), the
/// final crossing count, and per-step crossing deltas.
pub fn verify_sequence(m: &Matching, steps: &[Flip]) -> VerificationReport {
    let mut cur = m.clone();
    let mut crossings = cur.crossing_count() as i64;
    let mut deltas = Vec::new();
    for (idx, &f) in steps.iter().enumerate() {
        match cur.apply_flip(f) {
            Ok(next) => {
                let c = next.crossing_count() as i64;
                deltas.push(c - crossings);
                crossings = c;
                cur = next;
            }
            Err(_) => {
                return VerificationReport {
                    valid_prefix: idx,
                    first_invalid: Some(idx),
                    final_crossings: crossings as usize,
                    crossing_deltas: deltas,
                    end: cur,
                };
            }
        }
    }
    VerificationReport {
        valid_prefix: steps.len(),
        first_invalid: None,
        final_crossings: crossings as usize,
        crossing_deltas: deltas,
        end: cur,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{int, Point};

    fn x_shape() -> Matching {
        Matching::new(
            vec![Point::red(int(0), int(0)), Point::red(int(4), int(0))],
            vec![Point::blue(int(3), int(2)), Point::blue(int(1), int(1))],
            vec![0, 1],
        )
        .unwrap()
    }

    #[test]
    fn greedy_on_x_shape_is_one_flip() {
        let m = x_shape();
        let seq = run_greedy_top(&m).unwrap();
        assert_eq!(seq.len(), 1);
        assert!(seq.is_complete());
    }

    #[test]
    fn policy_on_crossing_free_is_empty() {
        let m = x_shape().apply_flip(Flip::new(0, 1)).unwrap();
        for policy in [Policy::FirstFound, Policy::Random(0), Policy::TopMost] {
            let seq = run_policy(&m, policy);
            assert!(seq.is_empty());
            assert!(seq.is_complete());
        }
    }

    #[test]
    fn shortest_and_longest_on_x_shape() {
        let m = x_shape();
        let s = shortest_untangle(&m, 1_000).unwrap();
        assert_eq!(s.length, 1);
        assert!(s.witness.is_complete());
        let l = longest_untangle(&m, 1_000).unwrap();
        assert_eq!(l.length, 1);
        assert!(l.witness.is_complete());
    }

    #[test]
    fn shortest_of_crossing_free_is_zero() {
        let m = x_shape().apply_flip(Flip::new(0, 1)).unwrap();
        let s = shortest_untangle(&m, 1_000).unwrap();
        assert_eq!(s.length, 0);
    }

    #[test]
    fn budget_exhaustion_reported() {
        let m = x_shape();
        assert!(matches!(
            shortest_untangle(&m, 1),
            Err(SearchError::BudgetExhausted(_))
        ));
        assert!(matches!(
            longest_untangle(&m, 0),
            Err(SearchError::BudgetExhausted(_))
        ));
    }

    #[test]
    fn enumerate_crossing_free_yields_single_empty_sequence() {
        let m = x_shape().apply_flip(Flip::new(0, 1)).unwrap();
        let e = enumerate_sequences(&m, 10);
        assert_eq!(e.sequences.len(), 1);
        assert!(e.sequences[0].is_empty());
        assert!(!e.truncated);
    }

    #[test]
    fn verify_reports_invalid_step() {
        let m = x_shape();
        let report = verify_sequence(&m, &[Flip::new(0, 1), Flip::new(0, 1)]);
        assert_eq!(report.first_invalid, Some(1));
        assert_eq!(report.valid_prefix, 1);
        assert_eq!(report.final_crossings, 0);
        let ok = verify_sequence(&m, &[Flip::new(0, 1)]);
        assert!(ok.is_complete());
        assert_eq!(ok.crossing_deltas, vec![-1]);
    }
}
