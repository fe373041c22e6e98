//! JSON interchange for matchings and flip sequences.
//!
//! Coordinates are serialized as canonical `num/den` strings (`"1/4"`,
//! `"-3/1"`), never as floats, so files round-trip bit-exactly.
//!
//! Matching: `{"reds": [["x","y"],…], "blues": [["x","y"],…], "mate": [j0,…]}`
//! Flip sequence: `{"flips": [[i,j],…]}`

use crate::geometry::{format_coord, parse_coord, Point};
use crate::matching::{Flip, Matching, MatchingError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Serialize, Deserialize)]
struct MatchingDoc {
    reds: Vec<[String; 2]>,
    blues: Vec<[String; 2]>,
    mate: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
struct FlipsDoc {
    flips: Vec<[usize; 2]>,
}

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("json syntax: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("coordinate: {0}")]
    Coord(#[from] crate::geometry::CoordParseError),
    #[error("matching: {0}")]
    Matching(#[from] MatchingError),
    #[error("flip entry {0} has equal indices")]
    DegenerateFlip(usize),
}

pub fn matching_to_json(m: &Matching) -> String {
    let doc = MatchingDoc {
        reds: m
            .reds()
            .iter()
            .map(|p| [format_coord(&p.x), format_coord(&p.y)])
            .collect(),
        blues: m
            .blues()
            .iter()
            .map(|p| [format_coord(&p.x), format_coord(&p.y)])
            .collect(),
        mate: m.mate().to_vec(),
    };
    serde_json::to_string_pretty(&doc).expect("matching doc serializes")
}

pub fn matching_from_json(s: &str) -> Result<Matching, JsonError> {
    let doc: MatchingDoc = serde_json::from_str(s)?;
    let reds = doc
        .reds
        .iter()
        .map(|[x, y]| Ok(Point::red(parse_coord(x)?, parse_coord(y)?)))
        .collect::<Result<Vec<_>, JsonError>>()?;
    let blues = doc
        .blues
        .iter()
        .map(|[x, y]| Ok(Point::blue(parse_coord(x)?, parse_coord(y)?)))
        .collect::<Result<Vec<_>, JsonError>>()?;
    Ok(Matching::new(reds, blues, doc.mate)?)
}

pub fn flips_to_json(steps: &[Flip]) -> String {
    let doc = FlipsDoc {
        flips: steps.iter().map(|f| [f.i, f.j]).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("flips doc serializes")
}

pub fn flips_from_json(s: &str) -> Result<Vec<Flip>, JsonError> {
    let doc: FlipsDoc = serde_json::from_str(s)?;
    doc.flips
        .iter()
        .enumerate()
        .map(|(idx, &[i, j])| {
            if i == j {
                Err(JsonError::DegenerateFlip(idx))
            } else {
                Ok(Flip::new(i, j))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{frac, int};

    #[test]
    fn matching_round_trip_is_exact() {
        let m = Matching::new(
            vec![
                Point::red(frac(1, 4), int(0)),
                Point::red(frac(-3, 1), int(0)),
            ],
            vec![
                Point::blue(frac(22, 7), frac(1, 3)),
                Point::blue(int(5), frac(99, 100)),
            ],
            vec![1, 0],
        )
        .unwrap();
        let s = matching_to_json(&m);
        let back = matching_from_json(&s).unwrap();
        assert_eq!(back, m);
        assert!(s.contains("\"1/4\""));
        assert!(s.contains("\"-3/1\""));
    }

    #[test]
    fn flips_round_trip() {
        let steps = vec![Flip::new(0, 3), Flip::new(2, 1)];
        let s = flips_to_json(&steps);
        assert_eq!(flips_from_json(&s).unwrap(), steps);
    }
}
