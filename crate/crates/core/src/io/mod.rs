//! Interchange formats, report serialization, and the on-disk
//! classification cache.

mod cache;
mod edgelist;
mod graph6;
mod report;

use std::fmt;

use thiserror::Error;

use crate::graph::GraphError;

pub use cache::{CacheRecord, CacheStats, DiskCache, CACHE_DIR_ENV};
pub use edgelist::{parse_edge_list, render_edge_list};
pub use graph6::{decode_graph6, encode_graph6};
pub use report::{report_for, CertificateReport, ClassificationReport, TraceEntry, REPORT_SCHEMA};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    Graph(GraphError),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(msg) => f.write_str(msg),
            ParseErrorKind::Graph(e) => write!(f, "{e}"),
        }
    }
}

/// 1-based position of the offending character.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn at(text: &str, offset: usize, kind: ParseErrorKind) -> Self {
        let before = &text[..offset.min(text.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        ParseError { line, column, kind }
    }
}

/// Edge-list text when it contains `;`, otherwise a graph6 line.
pub fn parse_graph(text: &str) -> Result<crate::graph::Graph, ParseError> {
    if text.contains(';') {
        parse_edge_list(text)
    } else {
        decode_graph6(text)
    }
}
