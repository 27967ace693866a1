//! Flow files:
//!
//! ```text
//! circflow-flow v1
//! r 9/2
//! mode nowhere-zero          # or: mode one-zero <edge-id>
//! edge <edge-id> <tail> <head> <p/q>
//! ```
//!
//! Every edge of the graph appears exactly once; `#` starts a comment.

use num_traits::Zero;

use crate::graph::{EdgeId, Multigraph};
use crate::rational::{format_rational, parse_rational, Rational};

use super::{FlowError, FlowMode, Orientation, RationalFlow, Result};

pub const FLOW_HEADER: &str = "circflow-flow v1";

pub fn write_flow(g: &Multigraph, flow: &RationalFlow) -> String {
    let mut out = format!("{FLOW_HEADER}\nr {}\n", format_rational(&flow.r));
    match flow.mode {
        FlowMode::NowhereZero => out.push_str("mode nowhere-zero\n"),
        FlowMode::OneZero { edge } => out.push_str(&format!("mode one-zero {}\n", g.edge(edge).id)),
    }
    for e in 0..g.edge_count() {
        out.push_str(&format!(
            "edge {} {} {} {}\n",
            g.edge(e).id,
            g.vertex_name(flow.orientation.tail(g, e)),
            g.vertex_name(flow.orientation.head(g, e)),
            format_rational(&flow.values[e])
        ));
    }
    out
}

fn perr(line: usize, message: impl Into<String>) -> FlowError {
    FlowError::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_flow(g: &Multigraph, text: &str) -> Result<RationalFlow> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, FLOW_HEADER)) => {}
        Some((ln, _)) => return Err(perr(ln, format!("expected header `{FLOW_HEADER}`"))),
        None => return Err(perr(1, "empty flow file")),
    }
    let mut r: Option<Rational> = None;
    let mut mode = FlowMode::NowhereZero;
    let mut forward: Vec<Option<bool>> = vec![None; g.edge_count()];
    let mut values = vec![Rational::zero(); g.edge_count()];
    let edge_of = |ln: usize, id: &str| -> Result<usize> {
        let id = EdgeId::parse(id).map_err(|e| perr(ln, e.to_string()))?;
        g.edge_idx(&id).ok_or_else(|| perr(ln, format!("unknown edge `{id}`")))
    };
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            ["r", value] => r = Some(parse_rational(value).ok_or_else(|| perr(ln, "bad r"))?),
            ["mode", "nowhere-zero"] => mode = FlowMode::NowhereZero,
            ["mode", "one-zero", id] => mode = FlowMode::OneZero { edge: edge_of(ln, id)? },
            ["edge", id, tail, head, value] => {
                let e = edge_of(ln, id)?;
                let t = g
                    .vertex_idx(tail)
                    .ok_or_else(|| perr(ln, format!("unknown vertex `{tail}`")))?;
                let h = g
                    .vertex_idx(head)
                    .ok_or_else(|| perr(ln, format!("unknown vertex `{head}`")))?;
                let (a, b) = g.edge(e).ends;
                let fwd = match (t, h) {
                    _ if (t, h) == (a, b) => true,
                    _ if (t, h) == (b, a) => false,
                    _ => return Err(perr(ln, format!("`{tail}`, `{head}` are not the ends of `{id}`"))),
                };
                if forward[e].replace(fwd).is_some() {
                    return Err(perr(ln, format!("edge `{id}` listed twice")));
                }
                values[e] = parse_rational(value).ok_or_else(|| perr(ln, "bad value"))?;
            }
            _ => return Err(perr(ln, format!("unrecognised line `{line}`"))),
        }
    }
    let got = forward.iter().filter(|f| f.is_some()).count();
    if got != g.edge_count() {
        return Err(FlowError::Coverage {
            expected: g.edge_count(),
            got,
        });
    }
    let r = r.ok_or_else(|| perr(0, "missing `r` line"))?;
    Ok(RationalFlow {
        orientation: Orientation {
            forward: forward.into_iter().map(Option::unwrap).collect(),
        },
        values,
        r,
        mode,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flows::build_flower_flow;

    #[test]
    fn round_trip() {
        let ff = build_flower_flow(2).unwrap();
        let g = &ff.flower.graph;
        for f in [&ff.flow, &ff.base] {
            let text = write_flow(g, f);
            assert_eq!(parse_flow(g, &text).unwrap(), *f);
        }
    }

    #[test]
    fn missing_edge_is_a_coverage_error() {
        let ff = build_flower_flow(1).unwrap();
        let g = &ff.flower.graph;
        let text = write_flow(g, &ff.flow);
        let cut: String = text
            .lines()
            .take(text.lines().count() - 1)
            .map(|l| format!("{l}\n"))
            .collect();
        assert!(matches!(parse_flow(g, &cut), Err(FlowError::Coverage { .. })));
    }

    #[test]
    fn wrong_ends_rejected() {
        let ff = build_flower_flow(1).unwrap();
        let g = &ff.flower.graph;
        let text = write_flow(g, &ff.flow).replacen("edge ba[0] a[0] b[0]", "edge ba[0] a[0] c[0]", 1);
        assert!(matches!(parse_flow(g, &text), Err(FlowError::Parse { .. })));
    }
}
