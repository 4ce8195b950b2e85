//! graph6: a size prefix, then the upper triangle of the adjacency matrix
//! column by column, six bits per printable byte (value + 63). Vertex ids
//! are kept as given, so encode/decode is an exact round trip.

use crate::graph::Graph;

use super::{ParseError, ParseErrorKind};

const HEADER: &str = ">>graph6<<";

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    }
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            bits += 1;
            if bits == 6 {
                out.push(acc + 63);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push((acc << (6 - bits)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn decode_graph6(line: &str) -> Result<Graph, ParseError> {
    let lead = line.len() - line.trim_start().len();
    let mut body = line.trim();
    let mut offset = lead;
    if let Some(rest) = body.strip_prefix(HEADER) {
        body = rest;
        offset += HEADER.len();
    }
    let err = |at: usize, msg: String| ParseError::at(line, offset + at, ParseErrorKind::Syntax(msg));
    let bytes = body.as_bytes();
    if let Some(at) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(err(at, format!("byte {:#04x} is outside the graph6 range", bytes[at])));
    }
    let six = |at: usize| -> Result<usize, ParseError> {
        bytes
            .get(at)
            .map(|&b| (b - 63) as usize)
            .ok_or_else(|| err(at, "truncated size prefix".into()))
    };
    let (n, start) = match bytes.first() {
        None => return Err(err(0, "empty graph6 line".into())),
        Some(&126) if bytes.get(1) == Some(&126) => {
            let n = (2..8).try_fold(0, |acc, i| Ok::<_, ParseError>((acc << 6) | six(i)?))?;
            (n, 8)
        }
        Some(&126) => {
            let n = (1..4).try_fold(0, |acc, i| Ok::<_, ParseError>((acc << 6) | six(i)?))?;
            (n, 4)
        }
        Some(&b) => ((b - 63) as usize, 1),
    };
    let pairs = n * n.saturating_sub(1) / 2;
    let need = pairs.div_ceil(6);
    let data = &bytes[start..];
    if data.len() != need {
        return Err(err(
            start + data.len().min(need),
            format!("expected {need} data bytes for {n} vertices, found {}", data.len()),
        ));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if k % 6 != 0 {
        let pad = (data[k / 6] - 63) & ((1 << (6 - k % 6)) - 1);
        if pad != 0 {
            return Err(err(start + k / 6, "nonzero padding bits".into()));
        }
    }
    Ok(Graph::from_edges(n, edges).expect("upper triangle is simple"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_cycle, make_path};

    #[test]
    fn k4() {
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(decode_graph6("C~").unwrap(), k4);
        assert_eq!(encode_graph6(&k4), "C~");
        assert_eq!(decode_graph6(">>graph6<<C~\n").unwrap(), k4);
    }

    #[test]
    fn known_encodings() {
        // Cross-checked against networkx.to_graph6_bytes.
        assert_eq!(encode_graph6(&make_path(4).unwrap()), "Ch");
        assert_eq!(encode_graph6(&make_cycle(5).unwrap()), "Dhc");
        assert_eq!(encode_graph6(&Graph::default()), "?");
        assert_eq!(encode_graph6(&Graph::edgeless(1)), "@");
    }

    #[test]
    fn long_form_round_trips() {
        let g = make_cycle(70).unwrap();
        let text = encode_graph6(&g);
        assert!(text.starts_with("~?@EhC"));
        assert_eq!(decode_graph6(&text).unwrap(), g);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(decode_graph6("").is_err());
        assert!(decode_graph6("C~~").is_err());
        let e = decode_graph6("C\u{7f}").unwrap_err();
        assert_eq!(e.column, 2);
        assert!(decode_graph6("A`").is_err());
    }
}
