//! Text serialization.
//!
//! ```text
//! circflow-graph v1
//! vertices 3
//! a
//! b
//! c
//! edges 3
//! ab a b
//! ab~1 a b
//! bc b c
//! ```
//!
//! One vertex name per line, then one `edge-id tail head` triple per line.
//! Lines starting with `#` and blank lines are ignored. Copy `k` of an edge
//! is written `base~k`.

use super::{EdgeId, GraphError, Matching, Multigraph, Result};

pub const FORMAT_HEADER: &str = "circflow-graph v1";

pub fn write_graph(g: &Multigraph) -> String {
    let mut out = String::new();
    out.push_str(FORMAT_HEADER);
    out.push('\n');
    out.push_str(&format!("vertices {}\n", g.vertex_count()));
    for v in g.vertices() {
        out.push_str(g.vertex_name(v).as_str());
        out.push('\n');
    }
    out.push_str(&format!("edges {}\n", g.edge_count()));
    for e in g.edges() {
        out.push_str(&format!(
            "{} {} {}\n",
            e.id,
            g.vertex_name(e.ends.0),
            g.vertex_name(e.ends.1)
        ));
    }
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn next_content(&mut self) -> Option<(usize, &'a str)> {
        for (i, line) in self.inner.by_ref() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            return Some((i + 1, line));
        }
        None
    }
}

fn err(line: usize, column: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn column_of(line: &str, token: &str) -> usize {
    let base = line.as_ptr() as usize;
    token.as_ptr() as usize - base + 1
}

fn counted_section<'a>(lines: &mut Lines<'a>, keyword: &str, last: usize) -> Result<usize> {
    let (ln, line) = lines
        .next_content()
        .ok_or_else(|| err(last + 1, 1, format!("expected `{keyword} <count>`")))?;
    let mut toks = line.split_whitespace();
    match (toks.next(), toks.next(), toks.next()) {
        (Some(k), Some(n), None) if k == keyword => n
            .parse()
            .map_err(|_| err(ln, column_of(line, n), format!("invalid {keyword} count `{n}`"))),
        _ => Err(err(ln, 1, format!("expected `{keyword} <count>`"))),
    }
}

pub fn parse_graph(text: &str) -> Result<Multigraph> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
    };
    let (ln, header) = lines.next_content().ok_or_else(|| err(1, 1, "empty input"))?;
    if header.trim() != FORMAT_HEADER {
        return Err(err(ln, 1, format!("expected header `{FORMAT_HEADER}`")));
    }
    let nv = counted_section(&mut lines, "vertices", ln)?;
    let mut g = Multigraph::new();
    let mut last = ln;
    for _ in 0..nv {
        let (ln, line) = lines
            .next_content()
            .ok_or_else(|| err(last + 1, 1, "unexpected end of vertex list"))?;
        last = ln;
        let mut toks = line.split_whitespace();
        let name = toks.next().unwrap();
        if let Some(extra) = toks.next() {
            return Err(err(ln, column_of(line, extra), "trailing token after vertex name"));
        }
        g.add_vertex(name)
            .map_err(|e| err(ln, column_of(line, name), e.to_string()))?;
    }
    let ne = counted_section(&mut lines, "edges", last)?;
    for _ in 0..ne {
        let (ln, line) = lines
            .next_content()
            .ok_or_else(|| err(last + 1, 1, "unexpected end of edge list"))?;
        last = ln;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(err(ln, 1, "expected `edge-id tail head`"));
        }
        let id = EdgeId::parse(toks[0]).map_err(|e| err(ln, column_of(line, toks[0]), e.to_string()))?;
        let u = g
            .vertex_idx(toks[1])
            .ok_or_else(|| err(ln, column_of(line, toks[1]), format!("unknown vertex `{}`", toks[1])))?;
        let v = g
            .vertex_idx(toks[2])
            .ok_or_else(|| err(ln, column_of(line, toks[2]), format!("unknown vertex `{}`", toks[2])))?;
        g.add_edge_idx(id, u, v)
            .map_err(|e| err(ln, column_of(line, toks[0]), e.to_string()))?;
    }
    if let Some((ln, line)) = lines.next_content() {
        return Err(err(ln, column_of(line, line.trim_start()), "trailing content"));
    }
    Ok(g)
}

pub const MATCHING_HEADER: &str = "circflow-matching v1";

/// `circflow-matching v1` then one `edge <edge-id>` line per matching edge.
pub fn write_matching(m: &Matching) -> String {
    let mut out = format!("{MATCHING_HEADER}\n");
    for id in m.ids() {
        out.push_str(&format!("edge {id}\n"));
    }
    out
}

pub fn parse_matching_file(text: &str) -> Result<Matching> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
    };
    let (ln, header) = lines.next_content().ok_or_else(|| err(1, 1, "empty input"))?;
    if header.trim() != MATCHING_HEADER {
        return Err(err(ln, 1, format!("expected header `{MATCHING_HEADER}`")));
    }
    let mut m = Matching::default();
    while let Some((ln, line)) = lines.next_content() {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [kw, id] = toks[..] else {
            return Err(err(ln, 1, "expected `edge <edge-id>`"));
        };
        if kw != "edge" {
            return Err(err(ln, column_of(line, kw), "expected `edge <edge-id>`"));
        }
        m.insert(EdgeId::parse(id).map_err(|e| err(ln, column_of(line, id), e.to_string()))?);
    }
    Ok(m)
}

/// Imports a simple graph from graph6. Vertices are named `0..n`, edges `i-j`.
pub fn from_graph6(text: &str) -> Result<Multigraph> {
    let bytes: Vec<u8> = text.trim().bytes().collect();
    let bytes = bytes.strip_prefix(b">>graph6<<").unwrap_or(&bytes);
    if bytes.is_empty() {
        return Err(GraphError::Graph6("empty input".into()));
    }
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(GraphError::Graph6("byte outside 63..=126".into()));
    }
    let (n, rest) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else if bytes.len() >= 4 && bytes[1] != 126 {
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, &bytes[4..])
    } else {
        return Err(GraphError::Graph6("graphs beyond 258047 vertices unsupported".into()));
    };
    let needed = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if rest.len() != needed {
        return Err(GraphError::Graph6(format!(
            "expected {needed} data bytes for {n} vertices, found {}",
            rest.len()
        )));
    }
    let mut g = Multigraph::new();
    for v in 0..n {
        g.add_vertex(v.to_string())?;
    }
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = rest[k / 6] - 63;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                g.add_edge_idx(EdgeId::new(format!("{i}-{j}"))?, i, j)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Exports a simple graph to graph6 using the vertex order of `g`.
pub fn to_graph6(g: &Multigraph) -> Result<String> {
    if !g.is_simple() {
        return Err(GraphError::Graph6("graph6 cannot carry parallel edges".into()));
    }
    let n = g.vertex_count();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut bits = Vec::with_capacity(n * n / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(g.is_adjacent(i, j));
        }
    }
    for chunk in bits.chunks(6) {
        let mut b = 0u8;
        for (k, &bit) in chunk.iter().enumerate() {
            if bit {
                b |= 1 << (5 - k);
            }
        }
        out.push(b + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 is ascii"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::petersen;

    #[test]
    fn round_trip_petersen() {
        let p = petersen();
        let text = write_graph(&p);
        assert_eq!(parse_graph(&text).unwrap(), p);
    }

    #[test]
    fn round_trip_parallel_edges() {
        let text = "circflow-graph v1\nvertices 2\nu\nv\nedges 3\ne u v\ne~1 u v\ne~2 v u\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.multiplicity(0, 1), 3);
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn loop_is_rejected_with_position() {
        let text = "circflow-graph v1\nvertices 1\nu\nedges 1\nl u u\n";
        match parse_graph(text) {
            Err(GraphError::Parse { line, column, message }) => {
                assert_eq!((line, column), (5, 1));
                assert!(message.contains("loop"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_vertex_column() {
        let text = "circflow-graph v1\nvertices 1\nu\nedges 1\ne u w\n";
        match parse_graph(text) {
            Err(GraphError::Parse { line, column, .. }) => assert_eq!((line, column), (5, 5)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_header() {
        assert!(matches!(
            parse_graph("graph v0\n"),
            Err(GraphError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn graph6_petersen() {
        // Standard graph6 string of the Petersen graph.
        let g = from_graph6("IheA@GUAo").unwrap();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.edge_count(), 15);
        assert_eq!(g.regular_degree(), Some(3));
        let again = from_graph6(&to_graph6(&g).unwrap()).unwrap();
        assert_eq!(again, g);
        assert!(from_graph6("I?").is_err());
    }
}
