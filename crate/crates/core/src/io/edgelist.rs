//! `<order> ; u-v, u-v, ...` with arbitrary whitespace. An order followed
//! by `;` alone is an edgeless graph.

use std::collections::{BTreeSet, HashSet};

use crate::graph::{Edge, Graph, GraphError};

use super::{ParseError, ParseErrorKind};

struct Scanner<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn error(&self, offset: usize, msg: impl Into<String>) -> ParseError {
        ParseError::at(self.text, offset, ParseErrorKind::Syntax(msg.into()))
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.error(self.pos, format!("expected '{want}', found '{c}'"))),
            None => Err(self.error(self.pos, format!("expected '{want}', found end of input"))),
        }
    }

    fn int(&mut self) -> Result<(usize, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.text[start..].bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(match self.text[start..].chars().next() {
                Some(c) => self.error(start, format!("expected a non-negative integer, found '{c}'")),
                None => self.error(start, "expected a non-negative integer, found end of input"),
            });
        }
        self.pos += digits;
        let value = self.text[start..self.pos]
            .parse()
            .map_err(|_| self.error(start, "integer out of range"))?;
        Ok((value, start))
    }
}

/// Parses edge-list text. Labels need not be dense: when some label is at
/// least the declared order, the distinct labels are renumbered `0..` in
/// increasing order and any remaining vertices are isolated.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut s = Scanner { text, pos: 0 };
    let (order, _) = s.int()?;
    s.expect(';')?;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    if s.peek().is_some() {
        loop {
            let (u, at) = s.int()?;
            s.expect('-')?;
            let (v, _) = s.int()?;
            edges.push((u, v, at));
            match s.peek() {
                None => break,
                Some(',') => s.pos += 1,
                Some(c) => return Err(s.error(s.pos, format!("expected ',' or end of input, found '{c}'"))),
            }
        }
    }
    let labels: BTreeSet<usize> = edges.iter().flat_map(|&(u, v, _)| [u, v]).collect();
    if labels.len() > order {
        let at = edges.last().map_or(0, |e| e.2);
        return Err(ParseError::at(
            text,
            at,
            ParseErrorKind::Syntax(format!("{} distinct vertex labels exceed the declared order {order}", labels.len())),
        ));
    }
    let dense = labels.iter().next_back().is_none_or(|&max| max < order);
    let index: Vec<usize> = labels.iter().copied().collect();
    let id = |x: usize| if dense { x } else { index.binary_search(&x).expect("label collected") };
    let mut seen = HashSet::new();
    let mut list = Vec::with_capacity(edges.len());
    for &(u, v, at) in &edges {
        let (a, b) = (id(u), id(v));
        let err = |e: GraphError| ParseError::at(text, at, ParseErrorKind::Graph(e));
        if a == b {
            return Err(err(GraphError::SelfLoop(u)));
        }
        if !seen.insert(Edge::new(a, b)) {
            return Err(err(GraphError::DuplicateEdge(u, v)));
        }
        list.push((a, b));
    }
    Ok(Graph::from_edges(order, list).expect("labels checked above"))
}

pub fn render_edge_list(g: &Graph) -> String {
    g.to_string()
}
