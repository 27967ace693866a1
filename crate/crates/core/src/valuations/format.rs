//! Valuation files: a header, then `vertex <name> <p/q>` for every vertex.

use crate::graph::Multigraph;
use crate::rational::{format_rational, parse_rational, Rational};

use super::{BalancedValuation, Result, ValuationError};

pub const VALUATION_HEADER: &str = "circflow-valuation v1";

pub fn write_valuation(g: &Multigraph, omega: &BalancedValuation) -> String {
    let mut out = format!("{VALUATION_HEADER}\n");
    for v in g.vertices() {
        out.push_str(&format!(
            "vertex {} {}\n",
            g.vertex_name(v),
            format_rational(&omega.values[v])
        ));
    }
    out
}

fn perr(line: usize, message: impl Into<String>) -> ValuationError {
    ValuationError::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_valuation(g: &Multigraph, text: &str) -> Result<BalancedValuation> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, VALUATION_HEADER)) => {}
        Some((ln, _)) => return Err(perr(ln, format!("expected header `{VALUATION_HEADER}`"))),
        None => return Err(perr(1, "empty valuation file")),
    }
    let mut values: Vec<Option<Rational>> = vec![None; g.vertex_count()];
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let ["vertex", name, value] = toks.as_slice() else {
            return Err(perr(ln, format!("unrecognised line `{line}`")));
        };
        let v = g
            .vertex_idx(name)
            .ok_or_else(|| perr(ln, format!("unknown vertex `{name}`")))?;
        let x = parse_rational(value).ok_or_else(|| perr(ln, "bad value"))?;
        if values[v].replace(x).is_some() {
            return Err(perr(ln, format!("vertex `{name}` listed twice")));
        }
    }
    let got = values.iter().filter(|x| x.is_some()).count();
    if got != g.vertex_count() {
        return Err(ValuationError::Coverage {
            expected: g.vertex_count(),
            got,
        });
    }
    Ok(BalancedValuation {
        values: values.into_iter().map(Option::unwrap).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::petersen;
    use crate::rational::rat;

    #[test]
    fn round_trip() {
        let g = petersen();
        let omega = BalancedValuation {
            values: (0..10)
                .map(|i| if i % 2 == 0 { rat(5, 3) } else { rat(-5, 3) })
                .collect(),
        };
        let text = write_valuation(&g, &omega);
        assert_eq!(parse_valuation(&g, &text).unwrap(), omega);
        let short: String = text.lines().take(5).map(|l| format!("{l}\n")).collect();
        assert!(matches!(
            parse_valuation(&g, &short),
            Err(ValuationError::Coverage { .. })
        ));
    }
}
