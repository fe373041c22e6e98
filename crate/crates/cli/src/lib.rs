//! Library half of the `untangle` command-line tool: SVG rendering of
//! matchings and flip sequences, and the bound-report generator.

pub mod render;
pub mod report;
