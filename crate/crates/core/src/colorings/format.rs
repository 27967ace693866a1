//! Coloring files:
//!
//! ```text
//! circflow-coloring v1
//! palette 4
//! mode proper                # or: mode sees-odd
//! edge <edge-id> <color>
//! ```

use crate::graph::{EdgeId, Multigraph};

use super::{ColoringError, ColoringMode, EdgeColoring, Result};

pub const COLORING_HEADER: &str = "circflow-coloring v1";

pub fn write_coloring(g: &Multigraph, c: &EdgeColoring) -> String {
    let mut out = format!("{COLORING_HEADER}\npalette {}\nmode {}\n", c.palette, c.mode.as_str());
    for e in 0..g.edge_count() {
        out.push_str(&format!("edge {} {}\n", g.edge(e).id, c.colors[e]));
    }
    out
}

fn perr(line: usize, message: impl Into<String>) -> ColoringError {
    ColoringError::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_coloring(g: &Multigraph, text: &str) -> Result<EdgeColoring> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, COLORING_HEADER)) => {}
        Some((ln, _)) => return Err(perr(ln, format!("expected header `{COLORING_HEADER}`"))),
        None => return Err(perr(1, "empty coloring file")),
    }
    let mut palette = None;
    let mut mode = ColoringMode::Proper;
    let mut colors: Vec<Option<u32>> = vec![None; g.edge_count()];
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            ["palette", k] => palette = Some(k.parse::<usize>().map_err(|_| perr(ln, "bad palette"))?),
            ["mode", "proper"] => mode = ColoringMode::Proper,
            ["mode", "sees-odd"] => mode = ColoringMode::SeesOdd,
            ["edge", id, col] => {
                let id = EdgeId::parse(id).map_err(|e| perr(ln, e.to_string()))?;
                let e = g
                    .edge_idx(&id)
                    .ok_or_else(|| perr(ln, format!("unknown edge `{id}`")))?;
                let col = col.parse::<u32>().map_err(|_| perr(ln, "bad color"))?;
                if colors[e].replace(col).is_some() {
                    return Err(perr(ln, format!("edge `{id}` listed twice")));
                }
            }
            _ => return Err(perr(ln, format!("unrecognised line `{line}`"))),
        }
    }
    let got = colors.iter().filter(|c| c.is_some()).count();
    if got != g.edge_count() {
        return Err(ColoringError::Coverage {
            expected: g.edge_count(),
            got,
        });
    }
    Ok(EdgeColoring {
        palette: palette.ok_or_else(|| perr(0, "missing `palette` line"))?,
        mode,
        colors: colors.into_iter().map(Option::unwrap).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::complete_bipartite;

    #[test]
    fn round_trip() {
        let g = complete_bipartite(3).unwrap();
        let c = EdgeColoring::proper(3, (0..9).map(|e| (e % 3) as u32).collect());
        assert_eq!(parse_coloring(&g, &write_coloring(&g, &c)).unwrap(), c);
        let bad = write_coloring(&g, &c).replace("palette 3", "palette x");
        assert!(matches!(
            parse_coloring(&g, &bad),
            Err(ColoringError::Parse { line: 2, .. })
        ));
    }
}
