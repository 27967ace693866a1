use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::graph::Multigraph;
use crate::rational::{rat, Rational};

use super::{check_flow, circulation_feasible, Feasibility, FlowError, Orientation, RationalFlow, Result};

pub const DEFAULT_EDGE_CAP: usize = 16;
const MAX_VERTICES: usize = 24;
const CHUNK: u64 = 1 << 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhiOptions {
    /// Largest edge count accepted for full orientation enumeration.
    pub edge_cap: usize,
}

impl Default for PhiOptions {
    fn default() -> Self {
        PhiOptions {
            edge_cap: DEFAULT_EDGE_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNumber {
    pub value: Rational,
    pub orientation: Orientation,
    pub flow: RationalFlow,
    /// Orientations that survived the source/sink filter.
    pub examined: u64,
}

enum Ratio {
    /// `max |∂⁺X| / |∂⁻X|` as `(num, den)`.
    Finite(u64, u64),
    Unbounded,
    Pruned,
}

/// `a/b > c/d` for nonnegative fractions with positive denominators.
fn gt(a: u64, b: u64, c: u64, d: u64) -> bool {
    a * d > c * b
}

struct Arcs {
    n: usize,
    out_nb: Vec<Vec<usize>>,
    in_nb: Vec<Vec<usize>>,
}

impl Arcs {
    fn new(g: &Multigraph, d: &Orientation) -> Self {
        let n = g.vertex_count();
        let mut out_nb = vec![Vec::new(); n];
        let mut in_nb = vec![Vec::new(); n];
        for e in 0..g.edge_count() {
            let (t, h) = (d.tail(g, e), d.head(g, e));
            out_nb[t].push(h);
            in_nb[h].push(t);
        }
        Arcs { n, out_nb, in_nb }
    }

    /// Gray-code walk over the subsets avoiding the last vertex; each subset
    /// also stands for its complement. Stops once the ratio exceeds `bound`.
    fn max_ratio(&self, bound: Option<(u64, u64)>) -> Ratio {
        let n = self.n;
        if n < 2 {
            return Ratio::Finite(0, 1);
        }
        let mut inside = vec![false; n];
        let (mut out, mut inn) = (0u64, 0u64);
        let mut best = (0u64, 1u64);
        for i in 1u64..(1u64 << (n - 1)) {
            let v = i.trailing_zeros() as usize;
            let entering = !inside[v];
            for &u in &self.out_nb[v] {
                match (entering, inside[u]) {
                    (true, true) => inn -= 1,
                    (true, false) => out += 1,
                    (false, true) => inn += 1,
                    (false, false) => out -= 1,
                }
            }
            for &u in &self.in_nb[v] {
                match (entering, inside[u]) {
                    (true, true) => out -= 1,
                    (true, false) => inn += 1,
                    (false, true) => out += 1,
                    (false, false) => inn -= 1,
                }
            }
            inside[v] = entering;
            match (out, inn) {
                (0, 0) => continue,
                (0, _) | (_, 0) => return Ratio::Unbounded,
                _ => {}
            }
            let (hi, lo) = if out >= inn { (out, inn) } else { (inn, out) };
            if gt(hi, lo, best.0, best.1) {
                best = (hi, lo);
                if let Some((bn, bd)) = bound {
                    if gt(hi, lo, bn, bd) {
                        return Ratio::Pruned;
                    }
                }
            }
        }
        Ratio::Finite(best.0, best.1)
    }
}

/// `1 + max_X |∂⁺X|/|∂⁻X|` for one orientation, or `None` when some cut is
/// crossed in one direction only.
pub fn orientation_ratio(g: &Multigraph, d: &Orientation) -> Result<Option<Rational>> {
    if g.vertex_count() > MAX_VERTICES {
        return Err(FlowError::TooManyVertices(g.vertex_count()));
    }
    if d.forward.len() != g.edge_count() {
        return Err(FlowError::Coverage {
            expected: g.edge_count(),
            got: d.forward.len(),
        });
    }
    Ok(match Arcs::new(g, d).max_ratio(None) {
        Ratio::Finite(a, b) => Some(rat((a + b) as i64, b as i64)),
        _ => None,
    })
}

fn pack(a: u64, b: u64) -> u64 {
    a << 32 | b
}

fn unpack(x: u64) -> (u64, u64) {
    (x >> 32, x & 0xffff_ffff)
}

/// Exact `φ_c(g)` by enumerating orientations with edge 0 fixed and taking the
/// least `1 + max_X |∂⁺X|/|∂⁻X|`. The optimum is attained on the orientation
/// with the lowest index among ties, independent of thread count.
pub fn circular_flow_number(g: &Multigraph, opts: PhiOptions) -> Result<FlowNumber> {
    let m = g.edge_count();
    let n = g.vertex_count();
    if m == 0 {
        return Err(FlowError::Precondition("graph has no edges".into()));
    }
    if let Some(&b) = g.bridges().first() {
        return Err(FlowError::Bridge(g.edge(b).id.to_string()));
    }
    if m > opts.edge_cap || m > 40 {
        return Err(FlowError::CapExceeded {
            edges: m,
            cap: opts.edge_cap.min(40),
        });
    }
    if n > MAX_VERTICES {
        return Err(FlowError::TooManyVertices(n));
    }
    // out(v) = |o ∧ tails_v| + |¬o ∧ heads_v| for orientation bitmask o.
    let mut tails = vec![0u64; n];
    let mut heads = vec![0u64; n];
    for (e, edge) in g.edges().iter().enumerate() {
        tails[edge.ends.0] |= 1 << e;
        heads[edge.ends.1] |= 1 << e;
    }
    let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let degrees: Vec<u32> = g.vertices().map(|v| g.degree(v) as u32).collect();
    let total = 1u64 << (m - 1);
    let best = AtomicU64::new(u64::MAX);
    let examined = AtomicU64::new(0);

    let chunks = total.div_ceil(CHUNK);
    let winner = (0..chunks)
        .into_par_iter()
        .filter_map(|c| {
            let mut local: Option<(u64, u64, u64)> = None;
            let mut count = 0u64;
            for idx in c * CHUNK..((c + 1) * CHUNK).min(total) {
                let o = idx << 1 | 1;
                let balanced = (0..n).all(|v| {
                    let out = (o & tails[v]).count_ones() + (!o & full & heads[v]).count_ones();
                    degrees[v] == 0 || (out > 0 && out < degrees[v])
                });
                if !balanced {
                    continue;
                }
                count += 1;
                let d = Orientation {
                    forward: (0..m).map(|e| o >> e & 1 == 1).collect(),
                };
                let bound = match best.load(Ordering::Relaxed) {
                    u64::MAX => None,
                    x => Some(unpack(x)),
                };
                if let Ratio::Finite(a, b) = Arcs::new(g, &d).max_ratio(bound) {
                    let better = match local {
                        None => true,
                        Some((la, lb, _)) => gt(la, lb, a, b),
                    };
                    if better {
                        local = Some((a, b, idx));
                        let _ = best.fetch_update(Ordering::Relaxed, Ordering::Relaxed, |cur| {
                            let replace = cur == u64::MAX || {
                                let (ca, cb) = unpack(cur);
                                gt(ca, cb, a, b)
                            };
                            replace.then(|| pack(a, b))
                        });
                    }
                }
            }
            examined.fetch_add(count, Ordering::Relaxed);
            local
        })
        .min_by(|x, y| (x.0 * y.1).cmp(&(y.0 * x.1)).then(x.2.cmp(&y.2)));

    let (a, b, idx) = winner.ok_or_else(|| FlowError::Construction("no strongly connected orientation".into()))?;
    let o = idx << 1 | 1;
    let orientation = Orientation {
        forward: (0..m).map(|e| o >> e & 1 == 1).collect(),
    };
    let value = rat((a + b) as i64, b as i64);
    let flow = match circulation_feasible(g, &orientation, value)? {
        Feasibility::Feasible(f) => f,
        Feasibility::Infeasible { .. } => {
            return Err(FlowError::Construction(
                "optimal orientation rejected by circulation".into(),
            ))
        }
    };
    if let Some(v) = check_flow(g, &flow)? {
        return Err(FlowError::Construction(format!("witness flow invalid: {v}")));
    }
    Ok(FlowNumber {
        value,
        orientation,
        flow,
        examined: examined.into_inner(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete_bipartite, complete_graph, cycle, petersen};
    use crate::rational::int;

    fn phi(g: &Multigraph) -> Rational {
        circular_flow_number(g, PhiOptions::default()).unwrap().value
    }

    #[test]
    fn small_values() {
        assert_eq!(phi(&complete_graph(4).unwrap()), int(4));
        assert_eq!(phi(&complete_bipartite(3).unwrap()), int(3));
        assert_eq!(phi(&cycle(5).unwrap()), int(2));
    }

    #[test]
    fn orientation_ratio_of_directed_cycle() {
        let g = cycle(4).unwrap();
        let d = Orientation::as_stored(&g);
        assert_eq!(orientation_ratio(&g, &d).unwrap(), Some(int(2)));
        let mut bad = d.clone();
        bad.forward[0] = false;
        assert_eq!(orientation_ratio(&g, &bad).unwrap(), None);
    }

    #[test]
    fn bridge_is_rejected() {
        let mut g = Multigraph::new();
        g.add_edge("e", "a", "b").unwrap();
        assert!(matches!(
            circular_flow_number(&g, PhiOptions::default()),
            Err(FlowError::Bridge(_))
        ));
    }

    #[test]
    fn cap_is_enforced() {
        let g = petersen();
        let opts = PhiOptions { edge_cap: 12 };
        assert!(matches!(
            circular_flow_number(&g, opts),
            Err(FlowError::CapExceeded { edges: 15, cap: 12 })
        ));
    }
}
