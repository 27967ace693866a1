//! Orientations, exact rational flows and their verification.

mod blanusa;
mod circulation;
mod constructions;
mod format;
mod phi;

pub use blanusa::{
    build_blanusa_chain_flow, build_blanusa_seed, chain_flow_for_seed, search_blanusa_seed, verify_seed,
    BlanusaChainFlow, SeedReport,
};
pub use circulation::{circulation_feasible, Feasibility};
pub use constructions::{bipartite_regular_flow, build_flower_flow, flower_circuit, FlowerFlow};
pub use format::{parse_flow, write_flow, FLOW_HEADER};
pub use phi::{circular_flow_number, orientation_ratio, FlowNumber, PhiOptions, DEFAULT_EDGE_CAP};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::{GraphError, Multigraph};
use crate::rational::{format_rational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlowError {
    #[error("flow covers {got} edges but the graph has {expected}")]
    Coverage { expected: usize, got: usize },
    #[error("flow parameter r = {0} is below 2")]
    RBelowTwo(String),
    #[error("edge `{0}` is a bridge; no nowhere-zero flow exists")]
    Bridge(String),
    #[error("graph has {edges} edges, above the enumeration cap {cap}")]
    CapExceeded { edges: usize, cap: usize },
    #[error("graph has {0} vertices, above the subset-enumeration limit 24")]
    TooManyVertices(usize),
    #[error("circuit traverses edge `{0}` against the orientation")]
    BackwardEdge(String),
    #[error("not a closed circuit: {0}")]
    BadCircuit(String),
    #[error("edge `{edge}` would drop to {value}")]
    Negative { edge: String, value: String },
    #[error("input rejected: {0}")]
    Precondition(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub type Result<T> = std::result::Result<T, FlowError>;

/// A direction for every edge: `forward[e]` means `ends.0 → ends.1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Orientation {
    pub forward: Vec<bool>,
}

impl Orientation {
    /// Every edge directed as stored.
    pub fn as_stored(g: &Multigraph) -> Self {
        Orientation {
            forward: vec![true; g.edge_count()],
        }
    }

    pub fn tail(&self, g: &Multigraph, e: usize) -> usize {
        let (a, b) = g.edge(e).ends;
        if self.forward[e] {
            a
        } else {
            b
        }
    }

    pub fn head(&self, g: &Multigraph, e: usize) -> usize {
        let (a, b) = g.edge(e).ends;
        if self.forward[e] {
            b
        } else {
            a
        }
    }

    /// Orientation with `tail → head` for edge `e`.
    pub fn set(&mut self, g: &Multigraph, e: usize, tail: usize) {
        self.forward[e] = g.edge(e).ends.0 == tail;
    }

    pub fn reversed(&self) -> Self {
        Orientation {
            forward: self.forward.iter().map(|f| !f).collect(),
        }
    }

    pub fn in_degree(&self, g: &Multigraph, v: usize) -> usize {
        g.incident(v).iter().filter(|&&e| self.head(g, e) == v).count()
    }

    /// `(|∂⁺(X)|, |∂⁻(X)|)` for the side given as a membership vector.
    pub fn cut_counts(&self, g: &Multigraph, side: &[bool]) -> (usize, usize) {
        let mut out = 0;
        let mut inn = 0;
        for e in 0..g.edge_count() {
            let (t, h) = (self.tail(g, e), self.head(g, e));
            match (side[t], side[h]) {
                (true, false) => out += 1,
                (false, true) => inn += 1,
                _ => {}
            }
        }
        (out, inn)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FlowMode {
    NowhereZero,
    /// Value 0 is permitted on the flagged edge only.
    OneZero {
        edge: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFlow {
    pub orientation: Orientation,
    pub values: Vec<Rational>,
    pub r: Rational,
    pub mode: FlowMode,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlowViolation {
    Conservation {
        vertex: String,
        inflow: Rational,
        outflow: Rational,
    },
    OutOfRange {
        edge: String,
        value: Rational,
    },
}

impl std::fmt::Display for FlowViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FlowViolation::Conservation {
                vertex,
                inflow,
                outflow,
            } => write!(
                f,
                "conservation fails at vertex `{vertex}`: in {} vs out {}",
                format_rational(inflow),
                format_rational(outflow)
            ),
            FlowViolation::OutOfRange { edge, value } => {
                write!(f, "edge `{edge}` has value {} outside [1, r-1]", format_rational(value))
            }
        }
    }
}

impl RationalFlow {
    pub fn new(orientation: Orientation, values: Vec<Rational>, r: Rational) -> Self {
        RationalFlow {
            orientation,
            values,
            r,
            mode: FlowMode::NowhereZero,
        }
    }

    pub fn with_r(mut self, r: Rational) -> Self {
        self.r = r;
        self
    }

    pub fn with_mode(mut self, mode: FlowMode) -> Self {
        self.mode = mode;
        self
    }

    /// Same flow on the reversed orientation.
    pub fn reversed(&self) -> Self {
        RationalFlow {
            orientation: self.orientation.reversed(),
            ..self.clone()
        }
    }

    pub fn max_value(&self) -> Rational {
        self.values.iter().copied().max().unwrap_or_else(Rational::zero)
    }

    /// Net inflow minus outflow at each vertex.
    pub fn excess(&self, g: &Multigraph) -> Vec<Rational> {
        let mut ex = vec![Rational::zero(); g.vertex_count()];
        for e in 0..g.edge_count() {
            ex[self.orientation.head(g, e)] += self.values[e];
            ex[self.orientation.tail(g, e)] -= self.values[e];
        }
        ex
    }
}

/// Checks conservation and the `[1, r-1]` window exactly. Errors only on
/// coverage mismatch; a failing flow yields `Ok(Some(violation))`.
pub fn check_flow(g: &Multigraph, flow: &RationalFlow) -> Result<Option<FlowViolation>> {
    let m = g.edge_count();
    if flow.values.len() != m || flow.orientation.forward.len() != m {
        return Err(FlowError::Coverage {
            expected: m,
            got: flow.values.len().min(flow.orientation.forward.len()),
        });
    }
    let one = Rational::one();
    let hi = flow.r - one;
    for (e, &v) in flow.values.iter().enumerate() {
        let zero_ok = matches!(flow.mode, FlowMode::OneZero { edge } if edge == e) && v.is_zero();
        if !zero_ok && (v < one || v > hi) {
            return Ok(Some(FlowViolation::OutOfRange {
                edge: g.edge(e).id.to_string(),
                value: v,
            }));
        }
    }
    let mut inflow = vec![Rational::zero(); g.vertex_count()];
    let mut outflow = vec![Rational::zero(); g.vertex_count()];
    for e in 0..m {
        inflow[flow.orientation.head(g, e)] += flow.values[e];
        outflow[flow.orientation.tail(g, e)] += flow.values[e];
    }
    for v in g.vertices() {
        if inflow[v] != outflow[v] {
            return Ok(Some(FlowViolation::Conservation {
                vertex: g.vertex_name(v).to_string(),
                inflow: inflow[v],
                outflow: outflow[v],
            }));
        }
    }
    Ok(None)
}

/// `check_flow` wrapped in a certificate.
pub fn verify_flow(g: &Multigraph, flow: &RationalFlow) -> Result<crate::certificates::Certificate> {
    let violation = check_flow(g, flow)?;
    Ok(crate::certificates::Certificate::flow_valid(
        g,
        flow,
        violation.as_ref(),
    ))
}

/// A closed walk with distinct edges: `edges[i]` joins `vertices[i]` and
/// `vertices[i + 1]` (cyclically).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedCircuit {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl DirectedCircuit {
    /// Builds a circuit from a closed vertex sequence of a graph where each
    /// consecutive pair is joined by exactly one edge.
    pub fn from_vertex_names(g: &Multigraph, names: &[String]) -> Result<Self> {
        let vertices: Vec<usize> = names
            .iter()
            .map(|n| g.require_vertex(n))
            .collect::<std::result::Result<_, _>>()?;
        let k = vertices.len();
        let mut edges = Vec::with_capacity(k);
        for i in 0..k {
            let (u, v) = (vertices[i], vertices[(i + 1) % k]);
            let between = g.edges_between(u, v);
            if between.len() != 1 {
                return Err(FlowError::BadCircuit(format!(
                    "{} edges between `{}` and `{}`",
                    between.len(),
                    g.vertex_name(u),
                    g.vertex_name(v)
                )));
            }
            edges.push(between[0]);
        }
        let c = DirectedCircuit { vertices, edges };
        c.validate(g)?;
        Ok(c)
    }

    pub fn validate(&self, g: &Multigraph) -> Result<()> {
        let k = self.vertices.len();
        if k < 2 || self.edges.len() != k {
            return Err(FlowError::BadCircuit("length mismatch".into()));
        }
        let mut seen_e = std::collections::HashSet::new();
        let mut seen_v = std::collections::HashSet::new();
        for i in 0..k {
            let e = self.edges[i];
            let (u, v) = (self.vertices[i], self.vertices[(i + 1) % k]);
            let edge = g.edge(e);
            if !(edge.ends == (u, v) || edge.ends == (v, u)) {
                return Err(FlowError::BadCircuit(format!(
                    "edge `{}` is not between its neighbours",
                    edge.id
                )));
            }
            if !seen_e.insert(e) {
                return Err(FlowError::BadCircuit(format!("edge `{}` repeats", edge.id)));
            }
            if !seen_v.insert(u) {
                return Err(FlowError::BadCircuit(format!("vertex `{}` repeats", g.vertex_name(u))));
            }
        }
        Ok(())
    }

    /// `+1` where step `i` follows the orientation, `-1` where it opposes it.
    pub fn signs(&self, g: &Multigraph, d: &Orientation) -> Vec<i8> {
        (0..self.edges.len())
            .map(|i| {
                if d.tail(g, self.edges[i]) == self.vertices[i] {
                    1
                } else {
                    -1
                }
            })
            .collect()
    }

    pub fn contains_edge(&self, e: usize) -> bool {
        self.edges.contains(&e)
    }
}

/// Adds `amount` along a circuit every edge of which is traversed tail to head.
pub fn add_circuit_flow(
    g: &Multigraph,
    flow: &RationalFlow,
    circuit: &DirectedCircuit,
    amount: Rational,
) -> Result<RationalFlow> {
    circuit.validate(g)?;
    if let Some(i) = circuit.signs(g, &flow.orientation).iter().position(|&s| s < 0) {
        return Err(FlowError::BackwardEdge(g.edge(circuit.edges[i]).id.to_string()));
    }
    let mut out = flow.clone();
    for &e in &circuit.edges {
        out.values[e] += amount;
    }
    Ok(out)
}

/// Adds `amount` along a circuit, decreasing the value of edges traversed
/// against the orientation. Fails if a value would become negative.
pub fn add_signed_circuit_flow(
    g: &Multigraph,
    flow: &RationalFlow,
    circuit: &DirectedCircuit,
    amount: Rational,
) -> Result<RationalFlow> {
    circuit.validate(g)?;
    let signs = circuit.signs(g, &flow.orientation);
    let mut out = flow.clone();
    for (&e, &s) in circuit.edges.iter().zip(&signs) {
        if s > 0 {
            out.values[e] += amount;
        } else {
            out.values[e] -= amount;
        }
        if out.values[e] < Rational::zero() {
            return Err(FlowError::Negative {
                edge: g.edge(e).id.to_string(),
                value: format_rational(&out.values[e]),
            });
        }
    }
    Ok(out)
}

/// Re-orients so every value is positive: zero-valued edges keep their
/// direction, negative ones flip.
pub fn normalize_signs(flow: &RationalFlow) -> RationalFlow {
    let mut out = flow.clone();
    for e in 0..out.values.len() {
        if out.values[e] < Rational::zero() {
            out.values[e] = -out.values[e];
            out.orientation.forward[e] = !out.orientation.forward[e];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cycle, petersen};
    use crate::rational::{int, rat};

    fn unit_cycle(m: usize) -> (Multigraph, RationalFlow) {
        let g = cycle(m).unwrap();
        let f = RationalFlow::new(Orientation::as_stored(&g), vec![int(1); m], int(2));
        (g, f)
    }

    #[test]
    fn directed_cycle_is_a_two_flow() {
        let (g, f) = unit_cycle(6);
        assert_eq!(check_flow(&g, &f).unwrap(), None);
        assert_eq!(check_flow(&g, &f.reversed()).unwrap(), None);
    }

    #[test]
    fn alternating_cycle_fails_conservation() {
        let (g, mut f) = unit_cycle(4);
        f.orientation.forward[1] = false;
        assert!(matches!(
            check_flow(&g, &f).unwrap(),
            Some(FlowViolation::Conservation { .. })
        ));
    }

    #[test]
    fn coverage_mismatch_is_an_error() {
        let (g, mut f) = unit_cycle(4);
        f.values.pop();
        assert!(matches!(check_flow(&g, &f), Err(FlowError::Coverage { .. })));
    }

    #[test]
    fn petersen_has_no_four_flow() {
        // A 4-flow exists iff two even subgraphs cover every edge.
        let g = petersen();
        let m = g.edge_count();
        let even: Vec<u32> = (0u32..1 << m)
            .filter(|&mask| {
                g.vertices()
                    .all(|v| g.incident(v).iter().filter(|&&e| mask >> e & 1 == 1).count() % 2 == 0)
            })
            .collect();
        assert_eq!(even.len(), 1 << (m - g.vertex_count() + 1));
        let full = (1u32 << m) - 1;
        assert!(!even.iter().any(|&a| even.iter().any(|&b| a | b == full)));
    }

    #[test]
    fn circuit_flow_addition() {
        let (g, f) = unit_cycle(5);
        let names: Vec<String> = (0..5).map(|i| format!("u[{i}]")).collect();
        let c = DirectedCircuit::from_vertex_names(&g, &names).unwrap();
        let same = add_circuit_flow(&g, &f, &c, int(0)).unwrap();
        assert_eq!(same, f);
        let more = add_circuit_flow(&g, &f, &c, rat(1, 2)).unwrap();
        assert!(more.values.iter().all(|&v| v == rat(3, 2)));
        let back = add_circuit_flow(&g, &f.reversed(), &c, rat(1, 2));
        assert!(matches!(back, Err(FlowError::BackwardEdge(_))));
        let signed = add_signed_circuit_flow(&g, &f.reversed(), &c, rat(1, 2)).unwrap();
        assert!(signed.values.iter().all(|&v| v == rat(1, 2)));
    }
}
