use std::collections::VecDeque;

use num_traits::{One, Zero};

use crate::graph::Multigraph;
use crate::rational::{format_rational, int, Rational};

use super::{check_flow, FlowError, Orientation, RationalFlow, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(RationalFlow),
    /// A side `X` with `|∂⁺(X)| > (r - 1)|∂⁻(X)|`.
    Infeasible {
        side: Vec<usize>,
        out: usize,
        inn: usize,
    },
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

struct Network {
    head: Vec<usize>,
    cap: Vec<Rational>,
    adj: Vec<Vec<usize>>,
}

impl Network {
    fn new(n: usize) -> Self {
        Network {
            head: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Adds `u → v` and its reverse residual arc; returns the forward arc id.
    fn arc(&mut self, u: usize, v: usize, c: Rational) -> usize {
        let id = self.head.len();
        self.head.push(v);
        self.cap.push(c);
        self.adj[u].push(id);
        self.head.push(u);
        self.cap.push(Rational::zero());
        self.adj[v].push(id + 1);
        id
    }

    fn bfs(&self, s: usize) -> Vec<Option<usize>> {
        let mut via: Vec<Option<usize>> = vec![None; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &a in &self.adj[u] {
                let v = self.head[a];
                if !seen[v] && self.cap[a] > Rational::zero() {
                    seen[v] = true;
                    via[v] = Some(a);
                    q.push_back(v);
                }
            }
        }
        via
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let via = self.bfs(s);
        (0..self.adj.len()).map(|v| v == s || via[v].is_some()).collect()
    }

    /// Edmonds–Karp; returns the flow value.
    fn max_flow(&mut self, s: usize, t: usize) -> Rational {
        let mut total = Rational::zero();
        loop {
            let via = self.bfs(s);
            if via[t].is_none() {
                return total;
            }
            let mut bottleneck: Option<Rational> = None;
            let mut v = t;
            while v != s {
                let a = via[v].unwrap();
                bottleneck = Some(bottleneck.map_or(self.cap[a], |b| b.min(self.cap[a])));
                v = self.head[a ^ 1];
            }
            let b = bottleneck.unwrap();
            let mut v = t;
            while v != s {
                let a = via[v].unwrap();
                self.cap[a] -= b;
                self.cap[a ^ 1] += b;
                v = self.head[a ^ 1];
            }
            total += b;
        }
    }
}

/// Decides whether `d` carries a flow with every value in `[1, r - 1]`.
///
/// Lower bounds are removed by the usual excess transformation and the
/// remainder solved as a maximum flow over exact rationals.
pub fn circulation_feasible(g: &Multigraph, d: &Orientation, r: Rational) -> Result<Feasibility> {
    if r < int(2) {
        return Err(FlowError::RBelowTwo(format_rational(&r)));
    }
    if d.forward.len() != g.edge_count() {
        return Err(FlowError::Coverage {
            expected: g.edge_count(),
            got: d.forward.len(),
        });
    }
    let n = g.vertex_count();
    let indeg: Vec<usize> = g.vertices().map(|v| d.in_degree(g, v)).collect();
    // A vertex with no incoming edge is its own witness.
    if let Some(v) = g.vertices().find(|&v| indeg[v] == 0 && g.degree(v) > 0) {
        return Ok(Feasibility::Infeasible {
            side: vec![v],
            out: g.degree(v),
            inn: 0,
        });
    }
    let (s, t) = (n, n + 1);
    let mut net = Network::new(n + 2);
    let spread = r - int(2);
    let arcs: Vec<usize> = (0..g.edge_count())
        .map(|e| net.arc(d.tail(g, e), d.head(g, e), spread))
        .collect();
    let mut demand = Rational::zero();
    for v in g.vertices() {
        let b = indeg[v] as i64 - (g.degree(v) - indeg[v]) as i64;
        if b > 0 {
            net.arc(s, v, int(b));
            demand += int(b);
        } else if b < 0 {
            net.arc(v, t, int(-b));
        }
    }
    let value = net.max_flow(s, t);
    if value == demand {
        let values: Vec<Rational> = arcs.iter().map(|&a| Rational::one() + (spread - net.cap[a])).collect();
        let flow = RationalFlow::new(d.clone(), values, r);
        if let Some(v) = check_flow(g, &flow)? {
            return Err(FlowError::Construction(format!("circulation witness invalid: {v}")));
        }
        return Ok(Feasibility::Feasible(flow));
    }
    let reach = net.reachable(s);
    let rm1 = r - Rational::one();
    for candidate in [false, true] {
        let side: Vec<bool> = (0..n).map(|v| reach[v] == candidate).collect();
        if side.iter().all(|&x| x) || side.iter().all(|&x| !x) {
            continue;
        }
        let (out, inn) = d.cut_counts(g, &side);
        if int(out as i64) > rm1 * int(inn as i64) {
            return Ok(Feasibility::Infeasible {
                side: (0..n).filter(|&v| side[v]).collect(),
                out,
                inn,
            });
        }
    }
    Err(FlowError::Construction("min cut yielded no violating side".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete_graph, cycle, petersen};
    use crate::rational::rat;

    #[test]
    fn directed_cycle_at_two() {
        let g = cycle(6).unwrap();
        match circulation_feasible(&g, &Orientation::as_stored(&g), int(2)).unwrap() {
            Feasibility::Feasible(f) => assert!(f.values.iter().all(|&v| v == int(1))),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn k4_with_a_source() {
        let g = complete_graph(4).unwrap();
        // As stored, v[0] is the tail of all its edges.
        let d = Orientation::as_stored(&g);
        for r in [int(2), int(4), int(100)] {
            match circulation_feasible(&g, &d, r).unwrap() {
                Feasibility::Infeasible { side, out, inn } => {
                    assert_eq!(side, vec![0]);
                    assert_eq!((out, inn), (3, 0));
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn rejects_small_r() {
        let g = cycle(3).unwrap();
        assert!(matches!(
            circulation_feasible(&g, &Orientation::as_stored(&g), rat(3, 2)),
            Err(FlowError::RBelowTwo(_))
        ));
    }

    #[test]
    fn infeasible_side_violates_the_cut_condition() {
        let g = petersen();
        // A strongly connected orientation: outer cycle forward, inner
        // pentagram forward, spokes alternate.
        let mut d = Orientation::as_stored(&g);
        for i in [5, 7] {
            d.forward[i] = false;
        }
        for r in [int(2), rat(5, 2), int(3), int(4), int(5), int(6)] {
            match circulation_feasible(&g, &d, r).unwrap() {
                Feasibility::Feasible(f) => assert_eq!(check_flow(&g, &f).unwrap(), None),
                Feasibility::Infeasible { side, out, inn } => {
                    let mask: Vec<bool> = g.vertices().map(|v| side.contains(&v)).collect();
                    assert_eq!(d.cut_counts(&g, &mask), (out, inn));
                    assert!(int(out as i64) > (r - 1) * int(inn as i64));
                }
            }
        }
    }
}
