//! Projection potentials for red-on-a-line matchings.
//!
//! Fixing a focal red point and projecting every blue point from it onto a
//! horizontal line above all points turns each segment into a segment
//! between the two lines. Counting projected crossings among the pairs that
//! span the focal point yields a per-focal potential that never increases
//! and strictly decreases at flips spanning the focal point; summing over
//! all focal points bounds the length of any untangle sequence.

use crate::geometry::Coord;
use crate::matching::Matching;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PotentialError {
    #[error("matching is not red-on-a-line")]
    NotRedOnLine,
    #[error("projection line is not strictly above all points")]
    LineNotAbove,
    #[error("pair ({1}, {2}) does not span focal red {0}")]
    NotAKPair(usize, usize, usize),
    #[error("two blue points project to the same x (general position violated)")]
    ProjectedTie,
}

/// Blue images under projection from one focal red point onto `y = line_y`.
#[derive(Debug, Clone)]
pub struct ProjectedConfig {
    /// Focal red index.
    pub k: usize,
    pub line_y: Coord,
    /// Projected x per blue index.
    pub images: Vec<Coord>,
}

/// Word symbol for the inversion cross-check: each projected blue is
/// labeled by where its matched red sits relative to the focal red.
/// Ordered `L < C < R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum WordSymbol {
    L,
    C,
    R,
}

/// Symbols in increasing projected-x order; exactly one `C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InversionWord {
    pub symbols: Vec<WordSymbol>,
}

impl fmt::Display for InversionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            let c = match s {
                WordSymbol::L => 'L',
                WordSymbol::C => 'C',
                WordSymbol::R => 'R',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

fn require_red_on_line(m: &Matching) -> Result<(), PotentialError> {
    if m.is_red_on_line() {
        Ok(())
    } else {
        Err(PotentialError::NotRedOnLine)
    }
}

/// Left-to-right rank of each red point on the line (0-based).
pub fn red_ranks(m: &Matching) -> Result<Vec<usize>, PotentialError> {
    require_red_on_line(m)?;
    let mut order: Vec<usize> = (0..m.len()).collect();
    order.sort_by(|&a, &b| m.red(a).x.cmp(&m.red(b).x));
    let mut rank = vec![0usize; m.len()];
    for (r, &id) in order.iter().enumerate() {
        rank[id] = r;
    }
    Ok(rank)
}

/// Default projection height: one above the topmost point. Any height
/// strictly above all points gives the same potentials.
pub fn default_line_y(m: &Matching) -> Coord {
    m.max_y() + BigRational::one()
}

/// Projects every blue point from focal red `k` onto `y = line_y`.
pub fn project_tk(
    m: &Matching,
    k: usize,
    line_y: &Coord,
) -> Result<ProjectedConfig, PotentialError> {
    require_red_on_line(m)?;
    if *line_y <= m.max_y() {
        return Err(PotentialError::LineNotAbove);
    }
    let focal_x = &m.red(k).x;
    let images = m
        .blues()
        .iter()
        .map(|b| {
            // Ray from (focal_x, 0) through b meets y = line_y at
            // focal_x + (b.x - focal_x) * line_y / b.y; b.y > 0 on this side.
            focal_x + (&b.x - focal_x) * line_y / &b.y
        })
        .collect();
    Ok(ProjectedConfig {
        k,
        line_y: line_y.clone(),
        images,
    })
}

fn is_k_pair(rank: &[usize], k: usize, i: usize, j: usize) -> bool {
    if i == j {
        return false;
    }
    let (lo, hi) = if rank[i] <= rank[j] { (i, j) } else { (j, i) };
    rank[lo] <= rank[k] && rank[k] <= rank[hi]
}

/// True iff the projections from focal red `k` map segments `i` and `j` to
/// crossing segments. Requires `(i, j)` to span `k` on the red line.
pub fn k_observed_crossing(
    m: &Matching,
    k: usize,
    i: usize,
    j: usize,
) -> Result<bool, PotentialError> {
    let rank = red_ranks(m)?;
    if !is_k_pair(&rank, k, i, j) {
        return Err(PotentialError::NotAKPair(k, i, j));
    }
    let line_y = default_line_y(m);
    let proj = project_tk(m, k, &line_y)?;
    Ok(observed(m, &proj, i, j))
}

/// Projected segments both run from the red line to the projection line, so
/// they cross iff the red order and the image order disagree.
fn observed(m: &Matching, proj: &ProjectedConfig, i: usize, j: usize) -> bool {
    let red_cmp = m.red(i).x.cmp(&m.red(j).x);
    let img_cmp = proj.images[m.mate()[i]].cmp(&proj.images[m.mate()[j]]);
    match (red_cmp, img_cmp) {
        (Ordering::Less, Ordering::Greater) | (Ordering::Greater, Ordering::Less) => true,
        _ => false,
    }
}

/// The potential of focal red `k`: the number of `k`-spanning pairs whose
/// projections cross. Ranges over `0 ..= r(n+1) - r^2 - 1` for rank `r`
/// (1-based).
pub fn phi_k(m: &Matching, k: usize) -> Result<usize, PotentialError> {
    phi_k_at(m, k, &default_line_y(m))
}

/// Same as [`phi_k`] with an explicit projection height (the value does not
/// depend on it).
pub fn phi_k_at(m: &Matching, k: usize, line_y: &Coord) -> Result<usize, PotentialError> {
    let rank = red_ranks(m)?;
    let proj = project_tk(m, k, line_y)?;
    let n = m.len();
    let mut count = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if is_k_pair(&rank, k, i, j) && observed(m, &proj, i, j) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// The total potential: sum of [`phi_k`] over all focal reds. Decreases by
/// at least 2 at every flip, which bounds every untangle sequence by half
/// the start potential.
pub fn phi_total(m: &Matching) -> Result<usize, PotentialError> {
    let line_y = default_line_y(m);
    let mut sum = 0;
    for k in 0..m.len() {
        sum += phi_k_at(m, k, &line_y)?;
    }
    Ok(sum)
}

/// Word over `{L, C, R}` reading the projected blues left to right and
/// labeling each by the side of its matched red relative to focal `k`.
pub fn inversion_word(m: &Matching, k: usize) -> Result<InversionWord, PotentialError> {
    let rank = red_ranks(m)?;
    let proj = project_tk(m, k, &default_line_y(m))?;
    let mut blues: Vec<usize> = (0..m.len()).collect();
    blues.sort_by(|&a, &b| proj.images[a].cmp(&proj.images[b]));
    for w in blues.windows(2) {
        if proj.images[w[0]] == proj.images[w[1]] {
            return Err(PotentialError::ProjectedTie);
        }
    }
    // Red matched to each blue.
    let mut red_of = vec![0usize; m.len()];
    for (r, &b) in m.mate().iter().enumerate() {
        red_of[b] = r;
    }
    let symbols = blues
        .iter()
        .map(|&b| {
            let r = red_of[b];
            match rank[r].cmp(&rank[k]) {
                Ordering::Less => WordSymbol::L,
                Ordering::Equal => WordSymbol::C,
                Ordering::Greater => WordSymbol::R,
            }
        })
        .collect();
    Ok(InversionWord { symbols })
}

/// Number of out-of-order pairs under `L < C < R`.
pub fn count_inversions(word: &InversionWord) -> usize {
    let w = &word.symbols;
    let mut count = 0;
    for a in 0..w.len() {
        for b in (a + 1)..w.len() {
            if w[b] < w[a] {
                count += 1;
            }
        }
    }
    count
}

/// Upper bound on `phi_k` for 1-based rank `r` among `n` reds:
/// the number of pairs spanning that rank, `r(n+1) - r^2 - 1`.
pub fn phi_k_bound(n: usize, rank1: usize) -> usize {
    rank1 * (n + 1) - rank1 * rank1 - 1
}

/// Upper bound on the total potential: `C(n,2)(n+4)/3 = n(n^2+3n-4)/6`.
pub fn phi_total_bound(n: usize) -> usize {
    n * (n * n + 3 * n - 4) / 6
}

/// Upper bound on the length of any red-on-a-line untangle sequence:
/// half the potential bound, `C(n,2)(n+4)/6`.
pub fn sequence_length_bound(n: usize) -> usize {
    let b = BigInt::from(n) * (BigInt::from(n) - 1) * (BigInt::from(n) + 4);
    let (q, r) = num_integer::Integer::div_rem(&b, &BigInt::from(12));
    // C(n,2)(n+4)/6 need not be an integer; round up.
    let mut out: BigInt = q;
    if r > BigInt::from(0) {
        out += 1;
    }
    use num_traits::ToPrimitive;
    out.to_usize().expect("bound fits in usize at desk scale")
}
