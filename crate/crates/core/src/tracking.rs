//! Per-flip state tracking of spectator pairs.
//!
//! A flip touches two segments; every other segment `s` has two affected
//! pairs before the flip and two after. A *tracking choice* pairs the old
//! indices with the new ones, either straight or swapped, and the choice can
//! always be made so no `H` pair turns into an `X` pair. On red-on-a-line
//! matchings the `H -> T` transition can additionally be avoided whenever
//! the spectator's blue point stays out of two explicit upper cones.

use crate::geometry::{orientation, Orientation, Point};
use crate::matching::{Flip, FlipError, Matching, PairState};
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrackingError {
    #[error("spectator {0} is part of the flip")]
    SpectatorIsFlipping(usize),
    #[error(transparent)]
    Flip(#[from] FlipError),
    #[error("no tracking choice avoids H->X; the geometry is inconsistent")]
    NoValidChoice,
    #[error("matching is not red-on-a-line")]
    NotRedOnLine,
}

/// States of the two affected pairs of one spectator, before and after a
/// flip: `before = (state(s,s1), state(s,s2))`,
/// `after = (state(s,s1'), state(s,s2'))` where segment ids are stable red
/// indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpectatorProfile {
    pub spectator: usize,
    pub before: (PairState, PairState),
    pub after: (PairState, PairState),
}

/// A tracking choice for one spectator: keep the index correspondence
/// straight or swap it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrackBit {
    Straight,
    Swapped,
}

impl SpectatorProfile {
    /// The two transitions induced by a tracking bit.
    pub fn transitions(&self, bit: TrackBit) -> [(PairState, PairState); 2] {
        match bit {
            TrackBit::Straight => [(self.before.0, self.after.0), (self.before.1, self.after.1)],
            TrackBit::Swapped => [(self.before.0, self.after.1), (self.before.1, self.after.0)],
        }
    }
}

/// Computes the four pair states of a spectator around a flip.
pub fn spectator_profile(
    m: &Matching,
    f: Flip,
    spectator: usize,
) -> Result<SpectatorProfile, TrackingError> {
    if spectator == f.i || spectator == f.j {
        return Err(TrackingError::SpectatorIsFlipping(spectator));
    }
    let after = m.apply_flip(f)?;
    Ok(SpectatorProfile {
        spectator,
        before: (m.pair_state(spectator, f.i), m.pair_state(spectator, f.j)),
        after: (
            after.pair_state(spectator, f.i),
            after.pair_state(spectator, f.j),
        ),
    })
}

fn bit_avoids(profile: &SpectatorProfile, bit: TrackBit, forbidden: &[PairState]) -> bool {
    profile
        .transitions(bit)
        .iter()
        .all(|&(from, to)| !(from == PairState::H && forbidden.contains(&to)))
}

/// A tracking bit under which no `H` pair turns into an `X` pair. Such a bit
/// always exists; when both work, `Straight` is returned for deterministic
/// logs. An error here signals a geometry bug, not an input condition.
pub fn choose_avoid_hx(profile: &SpectatorProfile) -> Result<TrackBit, TrackingError> {
    for bit in [TrackBit::Straight, TrackBit::Swapped] {
        if bit_avoids(profile, bit, &[PairState::X]) {
            return Ok(bit);
        }
    }
    Err(TrackingError::NoValidChoice)
}

/// The upward-opening cone of two segments sharing a blue apex over two red
/// points on the line: the sector at the apex vertically opposite the one
/// facing the red line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperCone {
    pub apex: Point,
    pub left_red: Point,
    pub right_red: Point,
}

/// Strict containment test: `p` is beyond both boundary lines, on the side
/// away from the red line.
pub fn upper_cone_contains(cone: &UpperCone, p: &Point) -> bool {
    let side = |a: &Point, b: &Point, q: &Point| match orientation(a, b, q) {
        Orientation::Ccw => 1i8,
        Orientation::Cw => -1,
        Orientation::Collinear => 0,
    };
    let s1 = side(&cone.left_red, &cone.apex, p);
    let r1 = side(&cone.left_red, &cone.apex, &cone.right_red);
    let s2 = side(&cone.right_red, &cone.apex, p);
    let r2 = side(&cone.right_red, &cone.apex, &cone.left_red);
    s1 * r1 < 0 && s2 * r2 < 0
}

/// The two upper cones a flip defines: among the four segments before and
/// after, exactly two pairs share a blue point, one at each old blue.
pub fn flip_upper_cones(m: &Matching, f: Flip) -> (UpperCone, UpperCone) {
    let r1 = m.red(f.i).clone();
    let r2 = m.red(f.j).clone();
    let b1 = m.blue_of(f.i).clone();
    let b2 = m.blue_of(f.j).clone();
    (
        UpperCone {
            apex: b1,
            left_red: r1.clone(),
            right_red: r2.clone(),
        },
        UpperCone {
            apex: b2,
            left_red: r1,
            right_red: r2,
        },
    )
}

/// Which cone obstructed a stronger tracking choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeSide {
    FirstBlue,
    SecondBlue,
}

/// Result of the red-on-a-line tracking choice: either a bit avoiding both
/// `H -> X` and `H -> T`, or a marker that the spectator's blue point sits
/// inside one of the two upper cones (in which case only `H -> X` avoidance
/// is guaranteed).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeCheckedChoice {
    Bit(TrackBit),
    Obstructed(ConeSide),
}

/// Red-on-a-line tracking choice avoiding `H -> T` as well as `H -> X`
/// whenever the spectator's blue is outside both upper cones of the flip.
pub fn choose_avoid_hx_ht(
    m: &Matching,
    f: Flip,
    spectator: usize,
) -> Result<ConeCheckedChoice, TrackingError> {
    if !m.is_red_on_line() {
        return Err(TrackingError::NotRedOnLine);
    }
    if spectator == f.i || spectator == f.j {
        return Err(TrackingError::SpectatorIsFlipping(spectator));
    }
    let (cone1, cone2) = flip_upper_cones(m, f);
    let b = m.blue_of(spectator);
    if upper_cone_contains(&cone1, b) {
        return Ok(ConeCheckedChoice::Obstructed(ConeSide::FirstBlue));
    }
    if upper_cone_contains(&cone2, b) {
        return Ok(ConeCheckedChoice::Obstructed(ConeSide::SecondBlue));
    }
    let profile = spectator_profile(m, f, spectator)?;
    for bit in [TrackBit::Straight, TrackBit::Swapped] {
        if bit_avoids(&profile, bit, &[PairState::X, PairState::T]) {
            return Ok(ConeCheckedChoice::Bit(bit));
        }
    }
    Err(TrackingError::NoValidChoice)
}

/// One logged `H -> T` transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HtEvent {
    /// Flip index in the tracked sequence.
    pub step: usize,
    /// Trajectory slot that degraded.
    pub slot: usize,
    /// Cone that held the spectator's blue, when that was the cause.
    pub obstruction: Option<ConeSide>,
}

/// Full per-pair state trajectories along a flip sequence under greedy
/// tracking choices (avoid `H -> T` when possible, always avoid `H -> X`).
#[derive(Debug, Clone)]
pub struct TrackTrace {
    /// Initial pair of each trajectory slot.
    pub slots: Vec<(usize, usize)>,
    /// `states[slot][step]`, with `steps + 1` entries per slot.
    pub states: Vec<Vec<PairState>>,
    /// Transition counts over affected slots, including the flipping pair.
    pub transitions: BTreeMap<(PairState, PairState), usize>,
    /// Every `H -> T` occurrence.
    pub ht_events: Vec<HtEvent>,
}

impl TrackTrace {
    /// Number of `H` slots at each step.
    pub fn h_counts(&self) -> Vec<usize> {
        let steps = self.states.first().map_or(0, Vec::len);
        (0..steps)
            .map(|t| {
                self.states
                    .iter()
                    .filter(|traj| traj[t] == PairState::H)
                    .count()
            })
            .collect()
    }

    /// True iff no trajectory ever reaches `T`.
    pub fn never_t(&self) -> bool {
        self.states
            .iter()
            .all(|traj| traj.iter().all(|&s| s != PairState::T))
    }

    /// Compressed trajectory of one slot: consecutive duplicates removed.
    pub fn compressed(&self, slot: usize) -> Vec<PairState> {
        let mut out: Vec<PairState> = Vec::new();
        for &s in &self.states[slot] {
            if out.last() != Some(&s) {
                out.push(s);
            }
        }
        out
    }
}

/// Tracks all pair trajectories along `steps`, applying per-flip tracking
/// choices: the cone-checked choice when the matching is red-on-a-line,
/// falling back to plain `H -> X` avoidance otherwise or under obstruction.
pub fn track_sequence(m: &Matching, steps: &[Flip]) -> Result<TrackTrace, TrackingError> {
    let n = m.len();
    let mut slots = Vec::new();
    let mut slot_of: HashMap<(usize, usize), usize> = HashMap::new();
    for i in 0..n {
        for j in (i + 1)..n {
            slot_of.insert((i, j), slots.len());
            slots.push((i, j));
        }
    }
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    let mut states: Vec<Vec<PairState>> = slots
        .iter()
        .map(|&(i, j)| vec![m.pair_state(i, j)])
        .collect();
    let mut transitions: BTreeMap<(PairState, PairState), usize> = BTreeMap::new();
    let mut ht_events = Vec::new();

    let red_on_line = m.is_red_on_line();
    let mut cur = m.clone();
    for (step, &f) in steps.iter().enumerate() {
        let next = cur.apply_flip(f)?;
        // Start from the previous column; affected slots are overwritten.
        for traj in states.iter_mut() {
            let last = *traj.last().expect("non-empty trajectory");
            traj.push(last);
        }

        let mut record = |slot: usize,
                          to: PairState,
                          obstruction: Option<ConeSide>,
                          states: &mut Vec<Vec<PairState>>| {
            let col = states[slot].len() - 1;
            let from = states[slot][col - 1];
            states[slot][col] = to;
            *transitions.entry((from, to)).or_insert(0) += 1;
            if from == PairState::H && to == PairState::T {
                ht_events.push(HtEvent {
                    step,
                    slot,
                    obstruction,
                });
            }
        };

        // Flipping pair keeps its slot.
        let flip_slot = slot_of[&key(f.i, f.j)];
        record(flip_slot, next.pair_state(f.i, f.j), None, &mut states);

        for s in 0..n {
            if s == f.i || s == f.j {
                continue;
            }
            let mut obstruction = None;
            let bit = if red_on_line {
                match choose_avoid_hx_ht(&cur, f, s)? {
                    ConeCheckedChoice::Bit(bit) => bit,
                    ConeCheckedChoice::Obstructed(side) => {
                        obstruction = Some(side);
                        let profile = spectator_profile(&cur, f, s)?;
                        choose_avoid_hx(&profile)?
                    }
                }
            } else {
                let profile = spectator_profile(&cur, f, s)?;
                choose_avoid_hx(&profile)?
            };
            let slot_i = slot_of[&key(s, f.i)];
            let slot_j = slot_of[&key(s, f.j)];
            let after = (next.pair_state(s, f.i), next.pair_state(s, f.j));
            match bit {
                TrackBit::Straight => {
                    record(slot_i, after.0, obstruction, &mut states);
                    record(slot_j, after.1, obstruction, &mut states);
                }
                TrackBit::Swapped => {
                    record(slot_i, after.1, obstruction, &mut states);
                    record(slot_j, after.0, obstruction, &mut states);
                    slot_of.insert(key(s, f.i), slot_j);
                    slot_of.insert(key(s, f.j), slot_i);
                }
            }
        }
        cur = next;
    }
    Ok(TrackTrace {
        slots,
        states,
        transitions,
        ht_events,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{sample_random, RandomKind};
    use crate::geometry::int;

    #[test]
    fn cone_basic_containment() {
        let cone = UpperCone {
            apex: Point::blue(int(0), int(2)),
            left_red: Point::red(int(-1), int(0)),
            right_red: Point::red(int(1), int(0)),
        };
        assert!(upper_cone_contains(&cone, &Point::blue(int(0), int(3))));
        assert!(!upper_cone_contains(&cone, &Point::blue(int(0), int(-5))));
        assert!(!upper_cone_contains(&cone, &Point::blue(int(2), int(0))));
        // The apex itself is on the boundary, not inside.
        assert!(!upper_cone_contains(&cone, &cone.apex.clone()));
    }

    #[test]
    fn spectator_must_not_flip() {
        let m = sample_random(RandomKind::RedOnLine, 3, 7);
        if let Some(&(i, j)) = m.crossing_pairs().first() {
            let f = Flip::new(i, j);
            assert!(matches!(
                spectator_profile(&m, f, i),
                Err(TrackingError::SpectatorIsFlipping(_))
            ));
        }
    }

    #[test]
    fn hx_avoidance_never_fails_on_samples() {
        let mut checked = 0;
        for seed in 0..60 {
            let m = sample_random(RandomKind::General, 5, seed);
            for (i, j) in m.crossing_pairs() {
                let f = Flip::new(i, j);
                for s in 0..m.len() {
                    if s == i || s == j {
                        continue;
                    }
                    let profile = spectator_profile(&m, f, s).unwrap();
                    choose_avoid_hx(&profile).expect("a safe tracking choice exists");
                    checked += 1;
                }
            }
        }
        assert!(checked > 100);
    }

    #[test]
    fn convex_tracking_has_no_t_and_h_grows() {
        for seed in 0..10 {
            let m = sample_random(RandomKind::Convex, 5, seed);
            let seq = crate::engine::run_policy(&m, crate::engine::Policy::FirstFound);
            let trace = track_sequence(&m, &seq.steps).unwrap();
            assert!(trace.never_t());
            let h = trace.h_counts();
            for w in h.windows(2) {
                assert!(w[1] >= w[0] + 1, "H count must rise at every flip");
            }
        }
    }
}
