use num_traits::Zero;

use crate::families::{flower_snark, FlowerSnark};
use crate::graph::{one_factorization_bipartite, Matching, Multigraph};
use crate::rational::{int, rat, Rational};
use crate::valuations::{flow_to_bipartition, Bipartition};

use super::{
    add_signed_circuit_flow, check_flow, DirectedCircuit, FlowError, FlowMode, Orientation, RationalFlow, Result,
};

/// A constructive `(2 + 1/t)`-flow on a bipartite `(2t+1)`-regular graph.
///
/// `t + 1` perfect matchings carry value 1 from the first colour class to the
/// second and the remaining `t` carry `1 + 1/t` back.
pub fn bipartite_regular_flow(g: &Multigraph, t: usize) -> Result<RationalFlow> {
    if t < 1 {
        return Err(FlowError::Precondition("t must be at least 1".into()));
    }
    let side = g
        .bipartition()
        .ok_or_else(|| FlowError::Precondition("graph is not bipartite".into()))?;
    if g.regular_degree() != Some(2 * t + 1) {
        return Err(FlowError::Precondition(format!("graph is not {}-regular", 2 * t + 1)));
    }
    let factors =
        one_factorization_bipartite(g).ok_or_else(|| FlowError::Construction("no 1-factorization found".into()))?;
    let mut orientation = Orientation::as_stored(g);
    let mut values = vec![Rational::zero(); g.edge_count()];
    let back = int(1) + rat(1, t as i64);
    for (k, factor) in factors.iter().enumerate() {
        for &e in factor {
            let (a, b) = g.edge(e).ends;
            let (left, right) = if side[a] { (b, a) } else { (a, b) };
            if k <= t {
                orientation.set(g, e, left);
                values[e] = int(1);
            } else {
                orientation.set(g, e, right);
                values[e] = back;
            }
        }
    }
    let flow = RationalFlow::new(orientation, values, int(2) + rat(1, t as i64));
    if let Some(v) = check_flow(g, &flow)? {
        return Err(FlowError::Construction(format!("bipartite flow invalid: {v}")));
    }
    Ok(flow)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowerFlow {
    pub flower: FlowerSnark,
    /// Integer 4-flow with the single zero on `a_0 b_0`.
    pub base: RationalFlow,
    pub circuits: Vec<DirectedCircuit>,
    /// Nowhere-zero `(4 + 1/n)`-flow.
    pub flow: RationalFlow,
    pub matching: Matching,
    pub bipartition: Bipartition,
}

/// The integer 4-flow on `J_{2n+1}`, edge by edge.
fn flower_base(fs: &FlowerSnark) -> RationalFlow {
    let g = &fs.graph;
    let order = fs.order() as isize;
    let mut d = Orientation::as_stored(g);
    let mut values = vec![Rational::zero(); g.edge_count()];
    let mut put = |kind: &str, i: isize, forward: bool, v: i64| {
        let e = fs.edge(kind, i);
        d.forward[e] = forward;
        values[e] = int(v);
    };
    // Stored ends: ba (b,a), bc (b,c), bd (b,d), aa (a_i,a_{i+1}),
    // cd (c_i,d_{i+1}), dc (c_{i+1},d_i).
    put("ba", 0, false, 0);
    put("bc", 0, true, 2);
    put("bd", 0, false, 2);
    for i in (1..order).step_by(2) {
        put("ba", i, true, 1);
        put("ba", i + 1, false, 1);
        put("bc", i, true, 2);
        put("bc", i + 1, true, 3);
        put("bd", i, false, 3);
        put("bd", i + 1, false, 2);
    }
    for i in 0..order {
        let odd = i % 2 == 1;
        put("aa", i, true, if odd { 2 } else { 1 });
        put("dc", i, true, if odd { 2 } else { 1 });
        put("cd", i, true, 1);
    }
    let zero = fs.edge("ba", 0);
    RationalFlow::new(d, values, int(4)).with_mode(FlowMode::OneZero { edge: zero })
}

/// `C_j = a_0 b_0 c_0 d_1 c_2 d_3 … d_{2j-1} b_{2j-1} a_{2j-1} a_{2j} … a_0`.
///
/// The steps `d_{2k-1} c_{2k}` run against the base orientation.
pub fn flower_circuit(fs: &FlowerSnark, j: usize) -> Result<DirectedCircuit> {
    if j < 1 || j > fs.n {
        return Err(FlowError::Precondition(format!(
            "circuit index {j} outside 1..={}",
            fs.n
        )));
    }
    let j = j as isize;
    let mut vertices = vec![fs.a(0), fs.b(0), fs.c(0)];
    let mut edges = vec![fs.edge("ba", 0), fs.edge("bc", 0), fs.edge("cd", 0)];
    for k in 1..j {
        vertices.push(fs.d(2 * k - 1));
        edges.push(fs.edge("dc", 2 * k - 1));
        vertices.push(fs.c(2 * k));
        edges.push(fs.edge("cd", 2 * k));
    }
    let last = 2 * j - 1;
    vertices.extend([fs.d(last), fs.b(last)]);
    edges.extend([fs.edge("bd", last), fs.edge("ba", last)]);
    for i in last..fs.order() as isize {
        vertices.push(fs.a(i));
        edges.push(fs.edge("aa", i));
    }
    let c = DirectedCircuit { vertices, edges };
    c.validate(&fs.graph)?;
    Ok(c)
}

/// The nowhere-zero `(4 + 1/n)`-flow on `J_{2n+1}` with matching
/// `M_n = {a_i b_i, c_{i+1} d_i}` and its induced bipartition.
pub fn build_flower_flow(n: usize) -> Result<FlowerFlow> {
    let fs = flower_snark(n).map_err(|e| FlowError::Precondition(e.to_string()))?;
    let g = &fs.graph;
    let base = flower_base(&fs);
    if let Some(v) = check_flow(g, &base)? {
        return Err(FlowError::Construction(format!("base 4-flow invalid: {v}")));
    }
    let share = rat(1, n as i64);
    let circuits = (1..=n).map(|j| flower_circuit(&fs, j)).collect::<Result<Vec<_>>>()?;
    let mut flow = base.clone();
    for c in &circuits {
        flow = add_signed_circuit_flow(g, &flow, c, share)?;
    }
    let flow = flow.with_r(int(4) + share).with_mode(FlowMode::NowhereZero);
    if let Some(v) = check_flow(g, &flow)? {
        return Err(FlowError::Construction(format!("flower flow invalid: {v}")));
    }
    if flow.orientation != base.orientation {
        return Err(FlowError::Construction("final orientation differs from D".into()));
    }
    let order = fs.order() as isize;
    let ids = (0..order).flat_map(|i| [fs.edge("ba", i), fs.edge("dc", i)]);
    let matching = Matching::new(ids.map(|e| g.edge(e).id.clone()).collect::<Vec<_>>());
    let bipartition = flow_to_bipartition(g, &flow).map_err(|e| FlowError::Construction(e.to_string()))?;
    if !bipartition.pairs(g, &matching)? {
        return Err(FlowError::Construction("M_n does not pair black with white".into()));
    }
    Ok(FlowerFlow {
        flower: fs,
        base,
        circuits,
        flow,
        matching,
        bipartition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete_bipartite, cycle};

    #[test]
    fn k33_three_flow() {
        let g = complete_bipartite(3).unwrap();
        let f = bipartite_regular_flow(&g, 1).unwrap();
        assert_eq!(f.r, int(3));
        assert!(f.values.iter().all(|v| *v == int(1) || *v == int(2)));
    }

    #[test]
    fn k55_five_halves_flow() {
        let g = complete_bipartite(5).unwrap();
        let f = bipartite_regular_flow(&g, 2).unwrap();
        assert_eq!(f.r, rat(5, 2));
        assert_eq!(check_flow(&g, &f).unwrap(), None);
    }

    #[test]
    fn odd_cycle_rejected() {
        let g = cycle(5).unwrap();
        assert!(matches!(bipartite_regular_flow(&g, 1), Err(FlowError::Precondition(_))));
    }

    #[test]
    fn flower_n2() {
        let ff = build_flower_flow(2).unwrap();
        let g = &ff.flower.graph;
        assert_eq!(ff.flow.r, rat(9, 2));
        assert_eq!(ff.flow.values[ff.flower.edge("ba", 0)], int(1));
        assert_eq!(check_flow(g, &ff.flow).unwrap(), None);
        assert_eq!(ff.matching.len(), 10);
        assert!(ff.matching.is_perfect(g));
        assert_eq!(ff.bipartition.black_count(), 10);
    }

    #[test]
    fn every_circuit_uses_the_zero_edge() {
        for n in 1..=4 {
            let ff = build_flower_flow(n).unwrap();
            let zero = ff.flower.edge("ba", 0);
            assert!(ff.circuits.iter().all(|c| c.contains_edge(zero)));
            assert_eq!(ff.flow.r, int(4) + rat(1, n as i64));
        }
    }
}
