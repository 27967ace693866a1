use crate::graph::{EdgeId, Multigraph};

use super::{FamilyError, Result};

/// Flower snark `J_{2n+1}` on `a[i], b[i], c[i], d[i]`, `i ∈ Z_{2n+1}`.
///
/// Edge ids: `ba[i]`, `bc[i]`, `bd[i]` inside block `i`; `aa[i]` joins
/// `a_i a_{i+1}`, `cd[i]` joins `c_i d_{i+1}` and `dc[i]` joins `c_{i+1} d_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowerSnark {
    pub n: usize,
    pub graph: Multigraph,
}

impl FlowerSnark {
    /// Number of blocks, `2n + 1`.
    pub fn order(&self) -> usize {
        2 * self.n + 1
    }

    fn wrap(&self, i: isize) -> usize {
        i.rem_euclid(self.order() as isize) as usize
    }

    pub fn a(&self, i: isize) -> usize {
        self.wrap(i)
    }

    pub fn b(&self, i: isize) -> usize {
        self.order() + self.wrap(i)
    }

    pub fn c(&self, i: isize) -> usize {
        2 * self.order() + self.wrap(i)
    }

    pub fn d(&self, i: isize) -> usize {
        3 * self.order() + self.wrap(i)
    }

    /// Edge index by kind (`ba`, `bc`, `bd`, `aa`, `cd`, `dc`) and block.
    pub fn edge(&self, kind: &str, i: isize) -> usize {
        let id = EdgeId::new(format!("{kind}[{}]", self.wrap(i))).unwrap();
        self.graph.edge_idx(&id).expect("flower edge kind")
    }
}

pub fn flower_snark(n: usize) -> Result<FlowerSnark> {
    if n < 1 {
        return Err(FamilyError::InvalidParameter(format!(
            "flower snark needs n >= 1, got {n}"
        )));
    }
    let order = 2 * n + 1;
    let mut g = Multigraph::new();
    for prefix in ["a", "b", "c", "d"] {
        for i in 0..order {
            g.add_vertex(format!("{prefix}[{i}]"))?;
        }
    }
    let (a, b, c, d) = (0, order, 2 * order, 3 * order);
    let next = |i: usize| (i + 1) % order;
    for i in 0..order {
        g.add_edge_idx(EdgeId::new(format!("ba[{i}]"))?, b + i, a + i)?;
        g.add_edge_idx(EdgeId::new(format!("bc[{i}]"))?, b + i, c + i)?;
        g.add_edge_idx(EdgeId::new(format!("bd[{i}]"))?, b + i, d + i)?;
    }
    for i in 0..order {
        g.add_edge_idx(EdgeId::new(format!("aa[{i}]"))?, a + i, a + next(i))?;
        g.add_edge_idx(EdgeId::new(format!("cd[{i}]"))?, c + i, d + next(i))?;
        g.add_edge_idx(EdgeId::new(format!("dc[{i}]"))?, c + next(i), d + i)?;
    }
    Ok(FlowerSnark { n, graph: g })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_definition() {
        for n in 1..=6 {
            let j = flower_snark(n).unwrap();
            assert_eq!(j.graph.vertex_count(), 4 * (2 * n + 1));
            assert_eq!(j.graph.edge_count(), 6 * (2 * n + 1));
            assert_eq!(j.graph.regular_degree(), Some(3));
            assert!(j.graph.is_simple());
            assert!(j.graph.is_bridgeless());
        }
        assert!(flower_snark(0).is_err());
    }

    #[test]
    fn named_edges() {
        let j = flower_snark(2).unwrap();
        let e = j.graph.edge(j.edge("dc", 4));
        assert_eq!(e.ends, (j.c(0), j.d(4)));
        let e = j.graph.edge(j.edge("aa", 4));
        assert_eq!(e.ends, (j.a(4), j.a(0)));
    }
}
