//! Named graph families with fixed vertex layouts.
//!
//! | family        | layout                                                   |
//! |---------------|----------------------------------------------------------|
//! | `C m`         | cycle `0-1-…-(m-1)-0`                                    |
//! | `P m`         | path `0-1-…-(m-1)`                                       |
//! | `G(r,m)`      | cycle on `0..m`, tail `m, m+1, …` hung from 0 by `(0,m)` |
//! | `F m`         | cycle on `0..m` plus chord `(0,2)`                       |
//! | `CL(x,y,z)`   | centre 0, legs laid out consecutively from vertex 1      |

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::canonical_code;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("parameter out of range for {family}: {detail}")]
    Range { family: &'static str, detail: String },
    #[error("unrecognized family spec {0:?}")]
    Syntax(String),
}

fn range_err(family: &'static str, detail: impl Into<String>) -> FamilyError {
    FamilyError::Range {
        family,
        detail: detail.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilySpec {
    Cycle(usize),
    Path(usize),
    Grm { r: usize, m: usize },
    Fm(usize),
    Spider(usize, usize, usize),
}

impl FamilySpec {
    pub fn build(&self) -> Result<Graph, FamilyError> {
        match *self {
            FamilySpec::Cycle(m) => make_cycle(m),
            FamilySpec::Path(m) => make_path(m),
            FamilySpec::Grm { r, m } => make_grm(r, m),
            FamilySpec::Fm(m) => make_fm(m),
            FamilySpec::Spider(x, y, z) => make_spider(x, y, z),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Cycle(m) => write!(f, "C{m}"),
            FamilySpec::Path(m) => write!(f, "P{m}"),
            FamilySpec::Grm { r, m } => write!(f, "G(r={r},m={m})"),
            FamilySpec::Fm(m) => write!(f, "F{m}"),
            FamilySpec::Spider(x, y, z) => write!(f, "CL({x},{y},{z})"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let syntax = || FamilyError::Syntax(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let num = |t: &str| t.parse::<usize>().map_err(|_| syntax());
        let args = |t: &str| -> Result<Vec<String>, FamilyError> {
            let inner = t
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(syntax)?;
            Ok(inner.split(',').map(str::to_string).collect())
        };
        if let Some(rest) = compact.strip_prefix("CL") {
            let a = args(rest)?;
            if a.len() != 3 {
                return Err(syntax());
            }
            return Ok(FamilySpec::Spider(num(&a[0])?, num(&a[1])?, num(&a[2])?));
        }
        if let Some(rest) = compact.strip_prefix('G') {
            let mut r = None;
            let mut m = None;
            for part in args(rest)? {
                let (key, value) = part.split_once('=').ok_or_else(syntax)?;
                match key {
                    "r" => r = Some(num(value)?),
                    "m" => m = Some(num(value)?),
                    _ => return Err(syntax()),
                }
            }
            return match (r, m) {
                (Some(r), Some(m)) => Ok(FamilySpec::Grm { r, m }),
                _ => Err(syntax()),
            };
        }
        let (head, tail) = compact.split_at(compact.chars().next().map_or(0, char::len_utf8));
        match head {
            "C" => Ok(FamilySpec::Cycle(num(tail)?)),
            "P" => Ok(FamilySpec::Path(num(tail)?)),
            "F" => Ok(FamilySpec::Fm(num(tail)?)),
            _ => Err(syntax()),
        }
    }
}

pub fn make_cycle(m: usize) -> Result<Graph, FamilyError> {
    if m < 3 {
        return Err(range_err("C", format!("m = {m} < 3")));
    }
    Ok(Graph::from_edges(m, (0..m).map(|i| (i, (i + 1) % m))).expect("valid cycle"))
}

pub fn make_path(m: usize) -> Result<Graph, FamilyError> {
    if m < 1 {
        return Err(range_err("P", "m = 0 < 1"));
    }
    Ok(Graph::from_edges(m, (1..m).map(|i| (i - 1, i))).expect("valid path"))
}

/// Cycle of size `m` with a pendant path of order `r` attached at vertex 0.
pub fn make_grm(r: usize, m: usize) -> Result<Graph, FamilyError> {
    if m < 3 || r < 1 {
        return Err(range_err("G", format!("need m >= 3 and r >= 1, got r = {r}, m = {m}")));
    }
    let cycle = (0..m).map(|i| (i, (i + 1) % m));
    let tail = std::iter::once((0, m)).chain((m + 1..m + r).map(|i| (i - 1, i)));
    Ok(Graph::from_edges(m + r, cycle.chain(tail)).expect("valid G(r,m)"))
}

/// Cycle of size `m` chorded between two vertices at distance 2.
pub fn make_fm(m: usize) -> Result<Graph, FamilyError> {
    if m < 4 {
        return Err(range_err("F", format!("m = {m} < 4")));
    }
    let edges = (0..m).map(|i| (i, (i + 1) % m)).chain([(0, 2)]);
    Ok(Graph::from_edges(m, edges).expect("valid F_m"))
}

/// Three paths of orders `x`, `y`, `z`, each joined by an end to a centre.
pub fn make_spider(x: usize, y: usize, z: usize) -> Result<Graph, FamilyError> {
    if x < 1 || y < 1 || z < 1 {
        return Err(range_err("CL", format!("legs must be >= 1, got ({x},{y},{z})")));
    }
    let mut edges = Vec::new();
    let mut next = 1;
    for leg in [x, y, z] {
        edges.push((0, next));
        for i in next + 1..next + leg {
            edges.push((i - 1, i));
        }
        next += leg;
    }
    Ok(Graph::from_edges(x + y + z + 1, edges).expect("valid spider"))
}

/// `[G(r, n-r) for r in 1..=n-3]`, deduplicated up to isomorphism.
pub fn delta_members(n: usize) -> Result<Vec<Graph>, FamilyError> {
    if n < 4 {
        return Err(range_err("delta", format!("n = {n} < 4")));
    }
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for r in 1..=n - 3 {
        let g = make_grm(r, n - r)?;
        let code = canonical_code(&g).expect("delta members are small");
        if !seen.contains(&code) {
            seen.push(code);
            out.push(g);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;
    use crate::cycles::{circumference, girth};

    #[test]
    fn cycles_and_paths() {
        assert_eq!(make_cycle(3).unwrap().size(), 3);
        let k1 = make_path(1).unwrap();
        assert_eq!((k1.order(), k1.size()), (1, 0));
        assert!(make_cycle(6).unwrap().degrees().iter().all(|&d| d == 2));
        assert!(make_cycle(2).is_err());
        assert!(make_path(0).is_err());
    }

    #[test]
    fn grm_layout() {
        let g = make_grm(2, 4).unwrap();
        assert_eq!((g.order(), g.size()), (6, 6));
        assert_eq!(g.to_string(), "6; 0-1, 0-3, 0-4, 1-2, 2-3, 4-5");
        let g13 = make_grm(1, 3).unwrap();
        assert_eq!(g13.order(), 4);
        assert_eq!(circumference(&make_grm(3, 5).unwrap()).unwrap(), 5);
        assert!(make_grm(0, 4).is_err());
        assert!(make_grm(1, 2).is_err());
    }

    #[test]
    fn fm_properties() {
        let k4_minus_e = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert!(is_isomorphic(&make_fm(4).unwrap(), &k4_minus_e).unwrap());
        for m in 4..10 {
            let f = make_fm(m).unwrap();
            assert_eq!(girth(&f), 3);
            assert_eq!(f.degrees().iter().filter(|&&d| d == 3).count(), 2);
        }
        assert_eq!(make_fm(7).unwrap().size(), 8);
        assert!(make_fm(3).is_err());
    }

    #[test]
    fn spiders() {
        let claw = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(is_isomorphic(&make_spider(1, 1, 1).unwrap(), &claw).unwrap());
        assert_eq!(make_spider(3, 3, 2).unwrap().order(), 9);
        let mut d = make_spider(2, 1, 1).unwrap().degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(d, vec![3, 2, 1, 1, 1]);
        assert!(make_spider(0, 1, 1).is_err());
    }

    #[test]
    fn delta_family() {
        let d5 = delta_members(5).unwrap();
        assert_eq!(d5.len(), 2);
        assert_eq!(d5[0], make_grm(1, 4).unwrap());
        assert_eq!(d5[1], make_grm(2, 3).unwrap());
        assert_eq!(delta_members(4).unwrap(), vec![make_grm(1, 3).unwrap()]);
        for g in delta_members(7).unwrap() {
            assert_eq!((g.order(), g.size()), (7, 7));
        }
        assert!(delta_members(3).is_err());
    }

    #[test]
    fn spec_text_round_trips() {
        for text in ["C6", "P4", "G(r=2,m=4)", "F7", "CL(3,3,2)"] {
            let spec: FamilySpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
        }
        assert_eq!("G(m=4, r=2)".parse::<FamilySpec>().unwrap(), FamilySpec::Grm { r: 2, m: 4 });
        assert!("Q5".parse::<FamilySpec>().is_err());
        assert!("CL(1,2)".parse::<FamilySpec>().is_err());
        assert!("C".parse::<FamilySpec>().is_err());
    }
}
