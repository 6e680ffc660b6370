//! Edge-list text format and graph6 interop.
//!
//! Edge lists are a vertex count on the first data line followed by one
//! `u v` pair per line, 0-based. Everything after `#` on a line is ignored.

use crate::error::GraphError;
use crate::graph::Graph;

pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| GraphError::Parse { line: idx + 1, msg: msg.to_string() };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let nums: Vec<usize> = fields
            .iter()
            .map(|f| f.parse::<usize>().map_err(|_| err(&format!("not a vertex index: {f:?}"))))
            .collect::<Result<_, _>>()?;
        match (n, nums.as_slice()) {
            (None, [count]) => n = Some(*count),
            (None, _) => return Err(err("expected the vertex count")),
            (Some(_), [u, v]) => edges.push((*u, *v)),
            (Some(_), _) => return Err(err("expected two vertex indices")),
        }
    }
    let n = n.ok_or(GraphError::Parse { line: 0, msg: "empty input".into() })?;
    Graph::from_edges(n, &edges)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.vertex_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Decodes one graph6 string (an optional `>>graph6<<` header is accepted).
pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let s = text.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    let err = |msg: &str| GraphError::Parse { line: 1, msg: msg.to_string() };
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(err("graph6 bytes must lie in 63..=126"));
    }
    let (n, body) = match bytes {
        [] => return Err(err("empty graph6 string")),
        [126, 126, ..] => return Err(err("orders above 258047 are not supported")),
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(err("truncated order"));
            }
            let n = rest[..3].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &rest[3..])
        }
        [first, rest @ ..] => ((first - 63) as usize, rest),
    };
    let pairs = n * n.saturating_sub(1) / 2;
    if body.len() != pairs.div_ceil(6) {
        return Err(err("edge section has the wrong length"));
    }
    let bit = |i: usize| (body[i / 6] - 63) >> (5 - i % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(idx) {
                edges.push((i, j));
            }
            idx += 1;
        }
    }
    Graph::from_edges(n, &edges)
}

pub fn write_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.extend([(n >> 12) & 63, (n >> 6) & 63, n & 63].iter().map(|&b| b as u8 + 63));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_with_comments() {
        let g = parse_edge_list("# a path\n4\n0 1 # first\n1 2\n\n2 3\n").unwrap();
        assert_eq!(g, Graph::path(4));
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn edge_list_errors() {
        assert!(matches!(parse_edge_list(""), Err(GraphError::Parse { .. })));
        assert!(matches!(parse_edge_list("3\n0 x\n"), Err(GraphError::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list("3\n0 1 2\n"), Err(GraphError::Parse { .. })));
        assert_eq!(parse_edge_list("2\n0 5\n"), Err(GraphError::VertexOutOfRange { u: 0, v: 5, n: 2 }));
    }

    #[test]
    fn graph6_known_vector() {
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(write_graph6(&g), "DQc");
        assert_eq!(parse_graph6("DQc").unwrap(), g);
        assert_eq!(parse_graph6(">>graph6<<DQc\n").unwrap(), g);
        assert_eq!(parse_graph6("@").unwrap().vertex_count(), 1);
        assert!(parse_graph6("DQ").is_err());
    }

    #[test]
    fn graph6_large_order() {
        let g = Graph::path(70);
        assert_eq!(parse_graph6(&write_graph6(&g)).unwrap(), g);
    }
}
