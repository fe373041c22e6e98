//! Bound reports: runs the untangling engines over a family of instances
//! and checks every recorded length against its proven ceiling.

use std::fmt;
use untangle_core::engine::{
    longest_untangle, run_greedy_top, run_policy, shortest_untangle, Policy,
};
use untangle_core::generators::{
    make_butterfly, make_fence, make_star, pairs, sample_random, Perturb, RandomKind,
};
use untangle_core::potential::{phi_total, phi_total_bound, sequence_length_bound};
use untangle_core::Matching;

/// Per-instance record with its bound checks.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub id: String,
    pub n: usize,
    pub crossings: usize,
    pub non_h: usize,
    /// Total projection potential; red-on-a-line instances only.
    pub phi: Option<usize>,
    pub greedy_len: Option<usize>,
    pub shortest: Option<usize>,
    pub longest: Option<usize>,
    pub policy_len: usize,
    /// Greedy length within the non-H count (red-on-a-line instances).
    pub greedy_within_non_h: Option<bool>,
    /// Longest sequence within half the potential ceiling.
    pub longest_within_potential_bound: Option<bool>,
    /// Longest sequence within the pair count (convex instances).
    pub longest_within_pair_bound: Option<bool>,
}

impl BoundReport {
    pub fn passed(&self) -> bool {
        self.greedy_within_non_h.unwrap_or(true)
            && self.longest_within_potential_bound.unwrap_or(true)
            && self.longest_within_pair_bound.unwrap_or(true)
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
        let chk = |v: Option<bool>| match v {
            None => "-",
            Some(true) => "ok",
            Some(false) => "FAIL",
        };
        write!(
            f,
            "{:<26} n={:<3} cross={:<4} nonH={:<4} phi={:<5} greedy={:<4} short={:<4} long={:<4} any={:<4} [greedy<=nonH {}, long<=phi/2 {}, long<=C(n,2) {}]",
            self.id,
            self.n,
            self.crossings,
            self.non_h,
            opt(self.phi),
            opt(self.greedy_len),
            opt(self.shortest),
            opt(self.longest),
            self.policy_len,
            chk(self.greedy_within_non_h),
            chk(self.longest_within_potential_bound),
            chk(self.longest_within_pair_bound),
        )
    }
}

fn report_for(id: &str, m: &Matching, convex: bool, budget: usize) -> BoundReport {
    let n = m.len();
    let red_on_line = m.is_red_on_line();
    let crossings = m.crossing_count();
    let non_h = m.non_h_count();
    let phi = if red_on_line { phi_total(m).ok() } else { None };
    let greedy_len = if red_on_line {
        run_greedy_top(m).ok().map(|s| s.len())
    } else {
        None
    };
    let shortest = shortest_untangle(m, budget).ok().map(|r| r.length);
    let longest = longest_untangle(m, budget).ok().map(|r| r.length);
    let policy_len = run_policy(m, Policy::TopMost).len();

    BoundReport {
        id: id.to_string(),
        n,
        crossings,
        non_h,
        phi,
        greedy_len,
        shortest,
        longest,
        greedy_within_non_h: greedy_len.map(|g| g <= non_h && non_h <= pairs(n)),
        longest_within_potential_bound: match (longest, red_on_line) {
            (Some(l), true) => {
                Some(l <= sequence_length_bound(n) && phi.map_or(true, |p| p <= phi_total_bound(n)))
            }
            _ => None,
        },
        longest_within_pair_bound: if convex {
            longest.map(|l| l <= pairs(n))
        } else {
            None
        },
        policy_len,
    }
}

/// Runs the full bound suite: stars and butterflies (red-on-a-line), fences
/// (convex) and seeded random instances of both kinds up to `max_n`
/// segments, `trials` random instances per size.
pub fn table_report(max_n: usize, trials: usize, seed: u64, budget: usize) -> Vec<BoundReport> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        out.push(report_for(
            &format!("star n={n}"),
            &make_star(n),
            true,
            budget,
        ));
    }
    for m in 1..=(max_n / 2) {
        if let Ok(b) = make_butterfly(m, Perturb::Epsilon) {
            out.push(report_for(&format!("butterfly m={m}"), &b, false, budget));
        }
    }
    for m in 2..=(max_n / 2) {
        let (fence, _) = make_fence(m);
        out.push(report_for(&format!("fence m={m}"), &fence, true, budget));
    }
    for t in 0..trials {
        let n = 2 + (seed as usize + t) % (max_n.saturating_sub(1)).max(1);
        let line = sample_random(RandomKind::RedOnLine, n, seed + t as u64);
        out.push(report_for(
            &format!("random-line n={n} t={t}"),
            &line,
            false,
            budget,
        ));
        let convex = sample_random(RandomKind::Convex, n, seed + 1000 + t as u64);
        out.push(report_for(
            &format!("random-convex n={n} t={t}"),
            &convex,
            true,
            budget,
        ));
    }
    out
}

/// Overall verdict plus a rendered text table.
pub fn format_report(reports: &[BoundReport]) -> (bool, String) {
    let mut text = String::new();
    let mut all_ok = true;
    for r in reports {
        all_ok &= r.passed();
        text.push_str(&r.to_string());
        text.push('\n');
    }
    text.push_str(&format!(
        "{} instances, {}\n",
        reports.len(),
        if all_ok {
            "all bounds hold"
        } else {
            "BOUND VIOLATION"
        }
    ));
    (all_ok, text)
}

/// Convenience used by tests: the numeric ceiling `C(n,2)(n+4)/6` rounded
/// down when integral.
pub fn longest_bound_exact(n: usize) -> f64 {
    (pairs(n) as f64) * ((n + 4) as f64) / 6.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let reports = table_report(6, 4, 7, 2_000_000);
        let (ok, text) = format_report(&reports);
        assert!(ok, "bound suite failed:\n{text}");
        // Star n=6: longest within the pair bound and exactly 15.
        let star6 = reports.iter().find(|r| r.id == "star n=6").unwrap();
        assert_eq!(star6.longest, Some(15));
        // Fence m=2: shortest and longest both 4.
        let fence2 = reports.iter().find(|r| r.id == "fence m=2").unwrap();
        assert_eq!(fence2.shortest, Some(4));
        assert_eq!(fence2.longest, Some(4));
    }

    #[test]
    fn float_bound_matches_integer_bound() {
        for n in 2..=12 {
            assert!(
                (longest_bound_exact(n)).ceil() as usize
                    >= untangle_core::potential::sequence_length_bound(n)
            );
        }
    }
}
