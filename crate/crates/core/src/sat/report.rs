//! Enumeration-backed evidence that a gadget behaves as required.

use crate::engine::{visit_sequences, FlipSequence};
use crate::matching::Matching;
use std::collections::{BTreeMap, BTreeSet};

/// Summary of the exhaustive untangle-sequence enumeration of one gadget
/// configuration, with the verdict of its governing requirement.
#[derive(Debug, Clone)]
pub struct GadgetReport {
    pub id: String,
    /// Number of maximal untangle sequences.
    pub sequence_count: usize,
    /// Multiset of sequence lengths (length -> how many sequences).
    pub lengths: BTreeMap<usize, usize>,
    /// Number of distinct final matchings.
    pub distinct_ends: usize,
    /// True only when counts, lengths and ends match the requirement exactly.
    pub verdict: bool,
    /// Human-readable notes on what was checked.
    pub detail: String,
}

impl GadgetReport {
    /// Enumerates all untangle sequences of `m` and fills in the raw counts;
    /// `verdict` starts false and is set by the caller's check.
    pub fn enumerate(id: &str, m: &Matching, limit: usize) -> (Self, Vec<FlipSequence>) {
        let mut lengths: BTreeMap<usize, usize> = BTreeMap::new();
        let mut ends: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut sequences = Vec::new();
        let summary = visit_sequences(m, limit, |steps, end| {
            *lengths.entry(steps.len()).or_insert(0) += 1;
            ends.insert(end.mate().to_vec());
            sequences.push(
                FlipSequence::replay(m.clone(), steps.to_vec()).expect("enumerated path replays"),
            );
        });
        assert!(
            !summary.truncated,
            "gadget enumeration exceeded limit {limit}"
        );
        (
            GadgetReport {
                id: id.to_string(),
                sequence_count: summary.count,
                lengths,
                distinct_ends: ends.len(),
                verdict: false,
                detail: String::new(),
            },
            sequences,
        )
    }

    /// All sequences have this exact length.
    pub fn all_length(&self, len: usize) -> bool {
        self.lengths.len() == 1 && self.lengths.contains_key(&len)
    }
}
