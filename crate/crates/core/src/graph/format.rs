//! Text encodings: graph6, plain edge lists, and DOT.

use std::fmt::Write as _;

use super::{Graph, MAX_VERTICES};
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

/// Decode one graph6 record. A leading `>>graph6<<` header and trailing
/// whitespace are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.trim_end_matches(['\n', '\r', ' ', '\t']);
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Error::MalformedGraph6("empty record".into()));
    }
    if let Some(pos) = bytes.iter().position(|&b| !(63..=126).contains(&b)) {
        return Err(Error::MalformedGraph6(format!(
            "byte {} at position {pos} outside 63..126",
            bytes[pos]
        )));
    }

    let (n, body) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else {
        if bytes.len() < 4 || bytes[1] == 126 {
            return Err(Error::MalformedGraph6(
                "unsupported or truncated size header".into(),
            ));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        if n < 63 {
            return Err(Error::MalformedGraph6(format!(
                "long size header used for n={n}"
            )));
        }
        (n, &bytes[4..])
    };
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n,
            limit: MAX_VERTICES,
        });
    }

    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::MalformedGraph6(format!(
            "expected {expected} data bytes for n={n}, found {}",
            body.len()
        )));
    }

    let mut adj = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let chunk = body[k / 6] - 63;
            if chunk >> (5 - k % 6) & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            k += 1;
        }
    }
    if nbits % 6 != 0 {
        let last = body[expected - 1] - 63;
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Error::MalformedGraph6("nonzero padding bits".into()));
        }
    }
    Ok(Graph::from_rows_unchecked(adj))
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::new();
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    }
    let mut chunk = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            chunk = chunk << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((chunk + 63) as char);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((chunk << (6 - filled)) + 63) as char);
    }
    out
}

/// Parse the plain edge-list format: the vertex count on the first line,
/// then one `u v` pair per line. Blank lines and `#` comments are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let n: usize = lines
        .next()
        .ok_or_else(|| Error::MalformedEdgeList("missing vertex count".into()))?
        .parse()
        .map_err(|_| Error::MalformedEdgeList("vertex count is not an integer".into()))?;
    let mut edges = Vec::new();
    for line in lines {
        let mut it = line.split_whitespace().map(str::parse::<usize>);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(u)), Some(Ok(v)), None) => edges.push((u, v)),
            _ => return Err(Error::MalformedEdgeList(format!("bad edge line {line:?}"))),
        }
    }
    Graph::from_edge_list(n, &edges)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn to_dot(g: &Graph, name: &str) -> String {
    let mut out = format!("graph {name} {{\n");
    for v in 0..g.n() {
        let _ = writeln!(out, "  {v};");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path};

    #[test]
    fn header_only_records() {
        assert_eq!(parse_graph6("?").unwrap().n(), 0);
        let k1 = parse_graph6("@").unwrap();
        assert_eq!((k1.n(), k1.edge_count()), (1, 0));
        assert_eq!(to_graph6(&k1), "@");
    }

    #[test]
    fn k2_is_a_underscore() {
        // n=2 -> 'A'; single bit 1 padded to 100000 = 32, +63 = '_'.
        assert_eq!(parse_graph6("A_").unwrap(), complete(2).unwrap());
        assert_eq!(to_graph6(&complete(2).unwrap()), "A_");
    }

    #[test]
    fn known_records() {
        // Reference encodings from the format description.
        assert_eq!(to_graph6(&path(3).unwrap()), "Bg");
        assert_eq!(to_graph6(&complete(4).unwrap()), "C~");
        assert_eq!(to_graph6(&cycle(5).unwrap()), "Dhc");
        let g = Graph::from_edge_list(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
        assert_eq!(parse_graph6(">>graph6<<DQc\n").unwrap(), g);
    }

    #[test]
    fn long_header() {
        let g = cycle(64).unwrap();
        let s = to_graph6(&g);
        assert!(s.starts_with("~?@?"));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn malformed() {
        assert!(matches!(parse_graph6(""), Err(Error::MalformedGraph6(_))));
        assert!(matches!(parse_graph6("A"), Err(Error::MalformedGraph6(_))));
        assert!(matches!(
            parse_graph6("A_?"),
            Err(Error::MalformedGraph6(_))
        ));
        assert!(matches!(parse_graph6("A`"), Err(Error::MalformedGraph6(_))));
        assert!(matches!(
            parse_graph6("A\x7f"),
            Err(Error::MalformedGraph6(_))
        ));
        assert!(matches!(parse_graph6("B1"), Err(Error::MalformedGraph6(_))));
        assert!(matches!(
            parse_graph6("~??~"),
            Err(Error::MalformedGraph6(_))
        ));
    }

    #[test]
    fn edge_list_roundtrip_and_errors() {
        let g = cycle(5).unwrap();
        assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
        assert_eq!(
            parse_edge_list("# c\n3\n0 1 # a\n\n1 2\n").unwrap(),
            path(3).unwrap()
        );
        assert!(parse_edge_list("").is_err());
        assert!(parse_edge_list("3\n0 1 2\n").is_err());
        assert!(parse_edge_list("3\n0 3\n").is_err());
    }

    #[test]
    fn dot_output() {
        let d = to_dot(&path(2).unwrap(), "G");
        assert_eq!(d, "graph G {\n  0;\n  1;\n  0 -- 1;\n}\n");
    }
}
