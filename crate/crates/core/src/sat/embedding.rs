//! Planar embeddings of monotone formulas: variable rectangles on the axis,
//! clause rectangles above (positive) or below (negative), and vertical
//! edges connecting clauses to their variables.
//!
//! `derive_embedding` lays a formula out from its clause levels and variable
//! order with fixed spacing constants; `validate_embedding` checks the four
//! drawing conventions exactly and is also run on derived embeddings, since
//! not every leveled formula admits this layout.

use super::formula::{Polarity, RpmFormula};
use crate::geometry::{frac, int, Coord};
use num_rational::BigRational;

/// Closed axis-parallel rectangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rect {
    pub x0: Coord,
    pub y0: Coord,
    pub x1: Coord,
    pub y1: Coord,
}

impl Rect {
    pub fn width(&self) -> Coord {
        &self.x1 - &self.x0
    }

    pub fn height(&self) -> Coord {
        &self.y1 - &self.y0
    }

    fn interiors_overlap(&self, other: &Rect) -> bool {
        self.x0 < other.x1 && other.x0 < self.x1 && self.y0 < other.y1 && other.y0 < self.y1
    }
}

/// One vertical connection: clause `clause`'s input `input` drops to
/// variable `var` at abscissa `x`.
#[derive(Debug, Clone)]
pub struct EdgeDrop {
    pub clause: usize,
    pub input: usize,
    pub var: usize,
    pub x: Coord,
}

#[derive(Debug, Clone)]
pub struct Embedding {
    pub var_rects: Vec<Rect>,
    pub clause_rects: Vec<Rect>,
    /// Three drops per clause, in input order (left, middle, right).
    pub edges: Vec<[EdgeDrop; 3]>,
}

/// Report of convention violations; empty means the embedding is valid.
#[derive(Debug, Clone, Default)]
pub struct EmbeddingReport {
    pub violations: Vec<String>,
}

impl EmbeddingReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Half-width of a variable rectangle.
pub(crate) fn var_half_width() -> Coord {
    int(16)
}

/// Half-height of variable rectangle `v`, staggered by a multiplicative
/// residue. The offsets carry no arithmetic progression, so equally spaced
/// rectangle corners and connection points of different variables do not
/// line up; the assembled point set is still checked exactly afterwards.
pub(crate) fn var_half_height(v: usize) -> Coord {
    let residue = ((v as i64 + 1) * 37) % 101;
    int(8) + frac(residue, 256)
}

/// Center abscissa of variable rectangle `v`.
pub(crate) fn var_center(v: usize) -> Coord {
    int(64 * v as i64)
}

/// Base height of the level-`level` clause band, for chains of length `k`.
pub(crate) fn band_base(level: u32, k: usize) -> Coord {
    int(12) + int((level as i64 - 1) * (50 + 2 * k as i64))
}

pub(crate) fn box_height(k: usize) -> Coord {
    int(46 + 2 * k as i64)
}

/// Lays out the formula: connection slots are allocated inside each
/// variable's positive (right) or negative (left) zone, ordering a
/// variable's connections so that clause rectangles extending over the
/// variable leave vertical corridors for higher-level edges.
pub fn derive_embedding(f: &RpmFormula, k: usize) -> Embedding {
    let v = f.num_variables();
    let var_rects: Vec<Rect> = (0..v)
        .map(|i| {
            let c = var_center(i);
            let hw = var_half_width();
            let hh = var_half_height(i);
            Rect {
                x0: &c - &hw,
                y0: -hh.clone(),
                x1: &c + &hw,
                y1: hh,
            }
        })
        .collect();

    // Collect connections per (variable, polarity): (role, key, clause,
    // input). role 0 = the clause's right endpoint, 1 = middle, 2 = left.
    // Right-endpoint boxes extend leftward, so inner (low-level) clauses sit
    // lefter; left-endpoint boxes extend rightward, so inner clauses sit
    // righter. Sorting by (role, key) with the level negated for left
    // endpoints realizes both.
    let mut per_var: Vec<Vec<(usize, i64, usize, usize)>> = vec![Vec::new(); 2 * v];
    for (ci, clause) in f.clauses.iter().enumerate() {
        for (input, &var) in clause.vars.iter().enumerate() {
            let role = 2 - input;
            let key = if role == 2 {
                -(clause.level as i64)
            } else {
                clause.level as i64
            };
            let side = match clause.polarity {
                Polarity::Positive => 0,
                Polarity::Negative => 1,
            };
            per_var[2 * var + side].push((role, key, ci, input));
        }
    }

    let mut slot_x: Vec<[Option<Coord>; 3]> = vec![[None, None, None]; f.num_clauses()];
    for var in 0..v {
        for side in 0..2 {
            let conns = &mut per_var[2 * var + side];
            conns.sort();
            let c = var_center(var);
            // Positive connections use the right half of the rectangle,
            // negative ones the left half.
            let (lo, hi) = if side == 0 {
                (&c + int(2), &c + int(14))
            } else {
                (&c - int(14), &c - int(2))
            };
            let n = conns.len() as i64;
            for (i, &(_, _, ci, input)) in conns.iter().enumerate() {
                let t = BigRational::from_integer(((i as i64) + 1).into())
                    / BigRational::from_integer((n + 1).into());
                slot_x[ci][input] = Some(&lo + (&hi - &lo) * t);
            }
        }
    }

    let mut clause_rects = Vec::new();
    let mut edges = Vec::new();
    for (ci, clause) in f.clauses.iter().enumerate() {
        let xs: Vec<Coord> = (0..3)
            .map(|i| slot_x[ci][i].clone().expect("slot assigned"))
            .collect();
        let base = band_base(clause.level, k);
        let (y0, y1) = match clause.polarity {
            Polarity::Positive => (base.clone(), &base + box_height(k)),
            Polarity::Negative => (-(&base + box_height(k)), -base),
        };
        clause_rects.push(Rect {
            x0: &xs[0] - int(2),
            y0,
            x1: &xs[2] + int(2),
            y1,
        });
        edges.push([
            EdgeDrop {
                clause: ci,
                input: 0,
                var: clause.vars[0],
                x: xs[0].clone(),
            },
            EdgeDrop {
                clause: ci,
                input: 1,
                var: clause.vars[1],
                x: xs[1].clone(),
            },
            EdgeDrop {
                clause: ci,
                input: 2,
                var: clause.vars[2],
                x: xs[2].clone(),
            },
        ]);
    }

    Embedding {
        var_rects,
        clause_rects,
        edges,
    }
}

/// Checks the four conventions exactly: (i) non-overlapping axis-parallel
/// rectangles, (ii) variable centroids on the x-axis, (iii) positive clause
/// rectangles above the axis and negative below, (iv) vertical edges inside
/// both rectangles' x-ranges that cross no other rectangle.
pub fn validate_embedding(f: &RpmFormula, e: &Embedding) -> EmbeddingReport {
    let mut report = EmbeddingReport::default();
    let mut flag = |msg: String| report.violations.push(msg);

    if e.var_rects.len() != f.num_variables() || e.clause_rects.len() != f.num_clauses() {
        flag("rectangle counts do not match the formula".into());
        return report;
    }

    let all_rects: Vec<(&Rect, String)> = e
        .var_rects
        .iter()
        .enumerate()
        .map(|(i, r)| (r, format!("variable {i}")))
        .chain(
            e.clause_rects
                .iter()
                .enumerate()
                .map(|(i, r)| (r, format!("clause {i}"))),
        )
        .collect();
    for (r, name) in &all_rects {
        if r.x0 >= r.x1 || r.y0 >= r.y1 {
            flag(format!("{name} rectangle is degenerate"));
        }
    }
    for i in 0..all_rects.len() {
        for j in (i + 1)..all_rects.len() {
            if all_rects[i].0.interiors_overlap(all_rects[j].0) {
                flag(format!(
                    "{} and {} rectangles overlap",
                    all_rects[i].1, all_rects[j].1
                ));
            }
        }
    }
    for (i, r) in e.var_rects.iter().enumerate() {
        if (&r.y0 + &r.y1) != int(0) {
            flag(format!("variable {i} centroid is off the x-axis"));
        }
    }
    for (i, (r, clause)) in e.clause_rects.iter().zip(&f.clauses).enumerate() {
        match clause.polarity {
            Polarity::Positive => {
                if r.y0 <= int(0) {
                    flag(format!("positive clause {i} rectangle not above the axis"));
                }
            }
            Polarity::Negative => {
                if r.y1 >= int(0) {
                    flag(format!("negative clause {i} rectangle not below the axis"));
                }
            }
        }
    }
    for (ci, drops) in e.edges.iter().enumerate() {
        let clause = &f.clauses[ci];
        let crect = &e.clause_rects[ci];
        for drop in drops {
            if drop.clause != ci || drop.var != clause.vars[drop.input] {
                flag(format!("clause {ci} edge {} is miswired", drop.input));
                continue;
            }
            let vrect = &e.var_rects[drop.var];
            if drop.x <= vrect.x0 || drop.x >= vrect.x1 {
                flag(format!(
                    "clause {ci} edge {} misses its variable rectangle",
                    drop.input
                ));
            }
            if drop.x <= crect.x0 || drop.x >= crect.x1 {
                flag(format!(
                    "clause {ci} edge {} misses its clause rectangle",
                    drop.input
                ));
            }
            // The open vertical segment between the two rectangles.
            let (y_lo, y_hi) = match clause.polarity {
                Polarity::Positive => (vrect.y1.clone(), crect.y0.clone()),
                Polarity::Negative => (crect.y1.clone(), vrect.y0.clone()),
            };
            for (r, name) in &all_rects {
                if **r == *vrect || **r == *crect {
                    continue;
                }
                if r.x0 < drop.x && drop.x < r.x1 && r.y0 < y_hi && y_lo < r.y1 {
                    flag(format!(
                        "clause {ci} edge {} crosses the {name} rectangle",
                        drop.input
                    ));
                }
            }
        }
    }
    report
}
