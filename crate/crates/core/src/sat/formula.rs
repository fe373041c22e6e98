//! Rectilinear planar monotone 3-CNF formulas and their text format.
//!
//! File format: a variable-order line followed by one clause per line,
//! `+|- v_i v_j v_k @level`. Clauses are monotone (all positive or all
//! negative literals); each clause's variables are kept in left-to-right
//! variable order.

use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    Positive,
    Negative,
}

/// One monotone clause over three distinct variables, with a nesting level
/// used by the embedding (level 1 hugs the variable line).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RpmClause {
    pub polarity: Polarity,
    /// Variable indices, strictly increasing (left-to-right order).
    pub vars: [usize; 3],
    pub level: u32,
}

/// A monotone 3-CNF formula with an ordered variable list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RpmFormula {
    pub variables: Vec<String>,
    pub clauses: Vec<RpmClause>,
}

impl RpmFormula {
    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// True iff `assignment` satisfies every clause.
    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            c.vars.iter().any(|&v| match c.polarity {
                Polarity::Positive => assignment[v],
                Polarity::Negative => !assignment[v],
            })
        })
    }

    /// Exhaustive satisfiability test (desk scale).
    pub fn brute_force_satisfiable(&self) -> bool {
        let v = self.num_variables();
        assert!(v <= 24, "brute force limited to small formulas");
        (0u32..(1 << v)).any(|bits| {
            let assignment: Vec<bool> = (0..v).map(|i| bits >> i & 1 == 1).collect();
            self.satisfied_by(&assignment)
        })
    }
}

impl fmt::Display for RpmFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.variables.join(" "))?;
        for c in &self.clauses {
            let sign = match c.polarity {
                Polarity::Positive => '+',
                Polarity::Negative => '-',
            };
            writeln!(
                f,
                "{} {} {} {} @{}",
                sign,
                self.variables[c.vars[0]],
                self.variables[c.vars[1]],
                self.variables[c.vars[2]],
                c.level
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("missing variable-order line")]
    MissingHeader,
    #[error("duplicate variable name {0:?}")]
    DuplicateVariable(String),
    #[error("line {0}: expected `+|- v v v @level`")]
    BadClauseSyntax(usize),
    #[error("line {0}: unknown variable {1:?}")]
    UnknownVariable(usize, String),
    #[error("line {0}: clause variables are not distinct")]
    RepeatedVariable(usize),
    #[error("formula has no clauses and no variables")]
    Empty,
}

/// Parses the text format. Clause variables are normalized to
/// left-to-right order.
pub fn parse_formula(text: &str) -> Result<RpmFormula, FormulaError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .enumerate()
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, header) = lines.next().ok_or(FormulaError::MissingHeader)?;
    let variables: Vec<String> = header.split_whitespace().map(str::to_string).collect();
    if variables.is_empty() {
        return Err(FormulaError::Empty);
    }
    let mut index = HashMap::new();
    for (i, name) in variables.iter().enumerate() {
        if index.insert(name.clone(), i).is_some() {
            return Err(FormulaError::DuplicateVariable(name.clone()));
        }
    }
    let mut clauses = Vec::new();
    for (lineno, line) in lines {
        let lineno = lineno + 1;
        let mut parts = line.split_whitespace();
        let sign = parts.next().ok_or(FormulaError::BadClauseSyntax(lineno))?;
        let polarity = match sign {
            "+" => Polarity::Positive,
            "-" => Polarity::Negative,
            _ => return Err(FormulaError::BadClauseSyntax(lineno)),
        };
        let mut vars = [0usize; 3];
        for slot in &mut vars {
            let name = parts.next().ok_or(FormulaError::BadClauseSyntax(lineno))?;
            *slot = *index
                .get(name)
                .ok_or_else(|| FormulaError::UnknownVariable(lineno, name.to_string()))?;
        }
        let level_tok = parts.next().ok_or(FormulaError::BadClauseSyntax(lineno))?;
        if parts.next().is_some() || !level_tok.starts_with('@') {
            return Err(FormulaError::BadClauseSyntax(lineno));
        }
        let level: u32 = level_tok[1..]
            .parse()
            .map_err(|_| FormulaError::BadClauseSyntax(lineno))?;
        vars.sort_unstable();
        if vars[0] == vars[1] || vars[1] == vars[2] {
            return Err(FormulaError::RepeatedVariable(lineno));
        }
        clauses.push(RpmClause {
            polarity,
            vars,
            level: level.max(1),
        });
    }
    Ok(RpmFormula { variables, clauses })
}
