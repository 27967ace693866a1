//! The seed 4-flow on `G_1` and its inductive extension along the chain.
//!
//! The seed search walks every `(N1, N2)`-dot-product of two Petersen graphs
//! with the matchings and removed pair fixed, every labeled 9-circuit
//! `x0 … x8` through an `M1` edge `x0x1`, and every integer 4-flow that
//! matches the values the chain construction needs on that circuit.

use num_traits::Zero;

use crate::families::{
    blanusa_chain, build_chain, m_dot_product, petersen, BlanusaChain, BlanusaSeed, DotSplice, SeedProvenance,
};
use crate::graph::{perfect_matchings, Matching, Multigraph};
use crate::rational::{int, rat, Rational};
use crate::valuations::{flow_to_bipartition, Bipartition};

use super::{add_circuit_flow, check_flow, DirectedCircuit, FlowError, FlowMode, Orientation, RationalFlow, Result};

fn fail(msg: impl Into<String>) -> FlowError {
    FlowError::Construction(msg.into())
}

fn family(e: crate::families::FamilyError) -> FlowError {
    FlowError::Construction(e.to_string())
}

/// Named pass/fail checks collected while verifying a construction.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Checks(pub Vec<(String, bool)>);

impl Checks {
    fn add(&mut self, name: &str, ok: bool) {
        self.0.push((name.to_string(), ok));
    }

    pub fn all_pass(&self) -> bool {
        self.0.iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.0.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.as_str()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedReport {
    /// Integer 4-flow with the single zero on `x0x1`.
    pub base: RationalFlow,
    /// `[C1, C2]`.
    pub circuits: Vec<DirectedCircuit>,
    /// Nowhere-zero 9/2-flow obtained by adding 1/2 on both circuits.
    pub flow: RationalFlow,
    pub bipartition: Bipartition,
    pub checks: Checks,
}

fn seed_base_flow(seed: &BlanusaSeed) -> RationalFlow {
    let g = &seed.graph;
    let mut d = Orientation::as_stored(g);
    let mut values = vec![Rational::zero(); g.edge_count()];
    for (e, &(t, _, v)) in seed.flow.iter().enumerate() {
        d.set(g, e, t);
        values[e] = int(v);
    }
    RationalFlow::new(d, values, int(4)).with_mode(FlowMode::OneZero {
        edge: seed.edge("x0", "x1"),
    })
}

/// Vertex sequence of a walk in `g` as edge indices, requiring one edge per step.
fn path_edges(g: &Multigraph, vertices: &[usize]) -> Result<Vec<usize>> {
    vertices
        .windows(2)
        .map(|w| {
            let between = g.edges_between(w[0], w[1]);
            if between.len() == 1 {
                Ok(between[0])
            } else {
                Err(FlowError::BadCircuit(format!(
                    "{} edges between `{}` and `{}`",
                    between.len(),
                    g.vertex_name(w[0]),
                    g.vertex_name(w[1])
                )))
            }
        })
        .collect()
}

fn directed_along(g: &Multigraph, d: &Orientation, vertices: &[usize]) -> Result<bool> {
    let edges = path_edges(g, vertices)?;
    Ok(edges.iter().zip(vertices).all(|(&e, &v)| d.tail(g, e) == v))
}

/// Checks every property of the seed that the chain construction relies on.
pub fn verify_seed(seed: &BlanusaSeed) -> Result<SeedReport> {
    let g = &seed.graph;
    let base = seed_base_flow(seed);
    let mut checks = Checks::default();
    checks.add("integer 4-flow", check_flow(g, &base)?.is_none());
    let zero = seed.edge("x0", "x1");
    let zeros: Vec<usize> = (0..g.edge_count()).filter(|&e| base.values[e].is_zero()).collect();
    checks.add("unique zero edge x0x1", zeros == vec![zero]);

    let c1 = DirectedCircuit::from_vertex_names(g, &seed.circuits[0])?;
    let c2 = DirectedCircuit::from_vertex_names(g, &seed.circuits[1])?;
    let xs: Vec<String> = (0..9).map(|i| format!("x{i}")).collect();
    checks.add("C2 is x0 … x8", seed.circuits[1] == xs);
    let value = |a: &str, b: &str| -> Option<i64> {
        let e = seed.edge(a, b);
        let (t, _, v) = seed.flow[e];
        (t == seed.vertex(a)).then_some(v)
    };
    checks.add("f(x7x8) = 1", value("x7", "x8") == Some(1));
    checks.add("f(x4x5) = 2", value("x4", "x5") == Some(2));
    checks.add("f(x8x0) = 2", value("x8", "x0") == Some(2));
    checks.add("f(x0y0) = 2", value("x0", "y0") == Some(2));
    checks.add("f(y1x1) = 1", value("y1", "x1") == Some(1));
    checks.add("f(x1x2) = 1", value("x1", "x2") == Some(1));
    let on_c2 = |v: &str| seed.circuits[1].iter().any(|x| x == v);
    checks.add(
        "y0, y1 off C2 and adjacent to x0, x1",
        !on_c2("y0")
            && !on_c2("y1")
            && g.is_adjacent(seed.vertex("y0"), seed.vertex("x0"))
            && g.is_adjacent(seed.vertex("y1"), seed.vertex("x1")),
    );

    let mut flow = base.clone();
    let mut directed = true;
    for c in [&c1, &c2] {
        match add_circuit_flow(g, &flow, c, rat(1, 2)) {
            Ok(f) => flow = f,
            Err(_) => directed = false,
        }
    }
    checks.add("C1, C2 directed in D1", directed);
    checks.add(
        "P1: zero edge on both circuits",
        c1.contains_edge(zero) && c2.contains_edge(zero),
    );
    let threes = (0..g.edge_count()).filter(|&e| base.values[e] == int(3));
    checks.add(
        "P2: value-3 edges on at most one circuit",
        threes
            .into_iter()
            .all(|e| !(c1.contains_edge(e) && c2.contains_edge(e))),
    );
    let tail: Vec<usize> = ["x4", "x5", "x6", "x7", "x8"].iter().map(|v| seed.vertex(v)).collect();
    let tail_edges = path_edges(g, &tail)?;
    checks.add("C2 contains x4 … x8", tail_edges.iter().all(|&e| c2.contains_edge(e)));
    checks.add("C1 avoids x4 … x8", tail_edges.iter().all(|&e| !c1.contains_edge(e)));

    let bypass: Vec<usize> = seed
        .bypass
        .iter()
        .map(|v| g.require_vertex(v))
        .collect::<std::result::Result<_, _>>()?;
    let mut ok = seed.bypass.first().map(String::as_str) == Some("x2")
        && seed.bypass.get(1).map(String::as_str) == Some("x3")
        && seed.bypass.last().map(String::as_str) == Some("x8")
        && directed_along(g, &base.orientation, &bypass)?;
    let mut seen = std::collections::HashSet::new();
    ok &= bypass.iter().all(|v| seen.insert(*v));
    ok &= !seed.bypass.iter().any(|v| v == "x0" || v == "x1");
    let straight: Vec<usize> = (2..9).map(|i| seed.vertex(&format!("x{i}"))).collect();
    let straight_edges = path_edges(g, &straight)?;
    let shared: Vec<usize> = path_edges(g, &bypass)?
        .into_iter()
        .filter(|e| straight_edges.contains(e))
        .collect();
    checks.add(
        "bypass x2 x3 … x8 directed, sharing only x2x3",
        ok && shared == vec![seed.edge("x2", "x3")],
    );

    let flow = flow.with_r(rat(9, 2)).with_mode(FlowMode::NowhereZero);
    checks.add("nowhere-zero 9/2-flow", check_flow(g, &flow)?.is_none());
    let m = &seed.matching;
    checks.add("M1 perfect", m.is_perfect(g));
    checks.add(
        "x0x1 in M1, x4x5 and x7x8 not",
        m.contains(&g.edge(zero).id)
            && !m.contains(&g.edge(seed.edge("x4", "x5")).id)
            && !m.contains(&g.edge(seed.edge("x7", "x8")).id),
    );
    let bipartition = flow_to_bipartition(g, &flow).map_err(|e| fail(e.to_string()))?;
    checks.add("M1 pairs black with white", bipartition.pairs(g, m)?);
    Ok(SeedReport {
        base,
        circuits: vec![c1, c2],
        flow,
        bipartition,
        checks,
    })
}

/// Verifies the committed seed.
pub fn build_blanusa_seed() -> Result<SeedReport> {
    verify_seed(BlanusaSeed::golden().map_err(family)?)
}

// ---------------------------------------------------------------------------
// Seed search

/// Signed value per edge: positive means `ends.0 → ends.1`.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Domain {
    Fixed(i64),
    /// Magnitude 1..=3 with the given sign.
    Signed(i64),
    Free,
}

struct FlowSearch<'a> {
    g: &'a Multigraph,
    domain: Vec<Domain>,
}

impl FlowSearch<'_> {
    fn candidates(&self, e: usize) -> Vec<i64> {
        match self.domain[e] {
            Domain::Fixed(v) => vec![v],
            Domain::Signed(s) => vec![s, 2 * s, 3 * s],
            Domain::Free => vec![1, -1, 2, -2, 3, -3],
        }
    }

    fn allowed(&self, e: usize, v: i64) -> bool {
        match self.domain[e] {
            Domain::Fixed(x) => v == x,
            Domain::Signed(s) => v * s > 0 && v.abs() <= 3,
            Domain::Free => v != 0 && v.abs() <= 3,
        }
    }

    /// Net inflow at `v` from assigned edges, and the unassigned edges there.
    fn status(&self, vals: &[Option<i64>], v: usize) -> (i64, Vec<usize>) {
        let mut net = 0;
        let mut open = Vec::new();
        for &e in self.g.incident(v) {
            match vals[e] {
                Some(x) => net += if self.g.edge(e).ends.1 == v { x } else { -x },
                None => open.push(e),
            }
        }
        (net, open)
    }

    /// Assigns forced values to fixpoint; `false` on contradiction.
    fn propagate(&self, vals: &mut [Option<i64>]) -> bool {
        loop {
            let mut changed = false;
            for v in self.g.vertices() {
                let (net, open) = self.status(vals, v);
                match open.as_slice() {
                    [] if net != 0 => return false,
                    [e] => {
                        let e = *e;
                        // Its contribution must cancel `net`.
                        let x = if self.g.edge(e).ends.1 == v { -net } else { net };
                        if !self.allowed(e, x) {
                            return false;
                        }
                        vals[e] = Some(x);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn run(&self, vals: &mut Vec<Option<i64>>, visit: &mut dyn FnMut(&[i64]) -> bool) -> bool {
        if !self.propagate(vals) {
            return false;
        }
        let Some(e) = vals.iter().position(Option::is_none) else {
            let flat: Vec<i64> = vals.iter().map(|x| x.unwrap()).collect();
            return visit(&flat);
        };
        for x in self.candidates(e) {
            let mut next = vals.clone();
            next[e] = Some(x);
            if self.run(&mut next, visit) {
                return true;
            }
        }
        false
    }
}

/// Every simple directed path `from → … → to` in `d` avoiding the marked
/// vertices and edges.
fn directed_paths(
    g: &Multigraph,
    d: &Orientation,
    from: usize,
    to: usize,
    bad_v: &[bool],
    bad_e: &[bool],
) -> Vec<Vec<usize>> {
    fn go(
        g: &Multigraph,
        d: &Orientation,
        to: usize,
        bad_v: &[bool],
        bad_e: &[bool],
        path: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let v = *path.last().unwrap();
        if v == to {
            out.push(path.clone());
            return;
        }
        for &e in g.incident(v) {
            if bad_e[e] || d.tail(g, e) != v {
                continue;
            }
            let w = d.head(g, e);
            if used[w] || (bad_v[w] && w != to) {
                continue;
            }
            used[w] = true;
            path.push(w);
            go(g, d, to, bad_v, bad_e, path, used, out);
            path.pop();
            used[w] = false;
        }
    }
    let mut out = Vec::new();
    let mut used = vec![false; g.vertex_count()];
    used[from] = true;
    go(g, d, to, bad_v, bad_e, &mut vec![from], &mut used, &mut out);
    out
}

/// A witness found by the search, in dot-product vertex indices.
struct Witness {
    cycle: [usize; 9],
    y: [usize; 2],
    values: Vec<i64>,
    c1: Vec<usize>,
    bypass: Vec<usize>,
}

fn third_neighbor(g: &Multigraph, v: usize, a: usize, b: usize) -> Option<usize> {
    let rest: Vec<usize> = g.neighbors(v).filter(|&w| w != a && w != b).collect();
    match rest.as_slice() {
        [w] => Some(*w),
        _ => None,
    }
}

/// Labeled directed 9-circuits `x0 … x8` with `x0x1 ∈ m`.
fn labeled_nine_cycles(g: &Multigraph, m: &[bool]) -> Vec<[usize; 9]> {
    let mut out = Vec::new();
    for e in (0..g.edge_count()).filter(|&e| m[e]) {
        let (a, b) = g.edge(e).ends;
        for (x0, x1) in [(a, b), (b, a)] {
            let mut path = vec![x0, x1];
            let mut used = vec![false; g.vertex_count()];
            used[x0] = true;
            used[x1] = true;
            extend_cycle(g, &mut path, &mut used, &mut out);
        }
    }
    out
}

fn extend_cycle(g: &Multigraph, path: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<[usize; 9]>) {
    let v = *path.last().unwrap();
    if path.len() == 9 {
        if g.is_adjacent(v, path[0]) {
            out.push(path.as_slice().try_into().unwrap());
        }
        return;
    }
    let next: Vec<usize> = g.neighbors(v).collect();
    for w in next {
        if used[w] {
            continue;
        }
        used[w] = true;
        path.push(w);
        extend_cycle(g, path, used, out);
        path.pop();
        used[w] = false;
    }
}

/// Tries one dot-product realization; returns the first witness.
fn search_realization(g: &Multigraph, matching: &Matching) -> Option<Witness> {
    let m_mask: Vec<bool> = g.edges().iter().map(|e| matching.contains(&e.id)).collect();
    let edge = |a: usize, b: usize| g.edges_between(a, b)[0];
    for x in labeled_nine_cycles(g, &m_mask) {
        let (Some(y0), Some(y1)) = (third_neighbor(g, x[0], x[1], x[8]), third_neighbor(g, x[1], x[0], x[2])) else {
            continue;
        };
        if x.contains(&y0) || x.contains(&y1) {
            continue;
        }
        if m_mask[edge(x[4], x[5])] || m_mask[edge(x[7], x[8])] {
            continue;
        }
        let (Some(q2), Some(z)) = (third_neighbor(g, x[2], x[1], x[3]), third_neighbor(g, x[3], x[2], x[4])) else {
            continue;
        };
        let mut domain = vec![Domain::Free; g.edge_count()];
        let mut fix = |t: usize, h: usize, v: i64| {
            let e = edge(t, h);
            let s = if g.edge(e).ends.0 == t { 1 } else { -1 };
            domain[e] = if v == 0 { Domain::Fixed(0) } else { Domain::Fixed(s * v) };
        };
        fix(x[8], x[0], 2);
        fix(x[0], x[1], 0);
        fix(x[1], x[2], 1);
        fix(x[0], y0, 2);
        fix(y1, x[1], 1);
        fix(q2, x[2], 1);
        fix(x[2], x[3], 2);
        fix(x[3], x[4], 1);
        fix(x[3], z, 1);
        fix(x[4], x[5], 2);
        fix(x[7], x[8], 1);
        for (t, h) in [(x[5], x[6]), (x[6], x[7])] {
            let e = edge(t, h);
            domain[e] = Domain::Signed(if g.edge(e).ends.0 == t { 1 } else { -1 });
        }
        let search = FlowSearch { g, domain };
        let mut found = None;
        let mut vals = vec![None; g.edge_count()];
        search.run(&mut vals, &mut |values| {
            found = complete_witness(g, &x, [y0, y1], &m_mask, values);
            found.is_some()
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

fn complete_witness(g: &Multigraph, x: &[usize; 9], y: [usize; 2], m: &[bool], values: &[i64]) -> Option<Witness> {
    let d = Orientation {
        forward: values.iter().map(|&v| v >= 0).collect(),
    };
    let black: Vec<bool> = g.vertices().map(|v| d.in_degree(g, v) == 2).collect();
    let pairs = (0..g.edge_count())
        .filter(|&e| m[e])
        .all(|e| black[g.edge(e).ends.0] != black[g.edge(e).ends.1]);
    if !pairs {
        return None;
    }
    let edge = |a: usize, b: usize| g.edges_between(a, b)[0];
    let c2_edges: Vec<usize> = (0..9).map(|i| edge(x[i], x[(i + 1) % 9])).collect();
    let tail_edges: Vec<usize> = (4..8).map(|i| edge(x[i], x[i + 1])).collect();
    let three = |e: usize| values[e].abs() == 3;

    let mut bad_e = vec![false; g.edge_count()];
    for &e in &tail_edges {
        bad_e[e] = true;
    }
    let mut bad_v = vec![false; g.vertex_count()];
    bad_v[x[0]] = true;
    bad_v[x[1]] = true;
    let pick = |paths: Vec<Vec<usize>>, ok: &dyn Fn(&[usize]) -> bool| -> Option<Vec<usize>> {
        let (clean, rest): (Vec<_>, Vec<_>) = paths
            .into_iter()
            .filter(|p| ok(p))
            .partition(|p| p[1..p.len() - 1].iter().all(|v| !x[4..8].contains(v)));
        clean.into_iter().chain(rest).next()
    };
    let c1_ok = |p: &[usize]| {
        let edges = path_edges(g, p).unwrap();
        !edges.iter().any(|&e| three(e) && c2_edges.contains(&e))
    };
    let c1 = pick(directed_paths(g, &d, x[2], x[8], &bad_v, &bad_e), &c1_ok)?;

    let mut bad_e2 = bad_e.clone();
    bad_e2[edge(x[3], x[4])] = true;
    bad_e2[edge(x[1], x[2])] = true;
    let mut bad_v2 = bad_v.clone();
    bad_v2[x[2]] = true;
    let bypass_ok = |_: &[usize]| true;
    let rest = pick(directed_paths(g, &d, x[3], x[8], &bad_v2, &bad_e2), &bypass_ok)?;
    let mut bypass = vec![x[2]];
    bypass.extend(rest);
    Some(Witness {
        cycle: *x,
        y,
        values: values.to_vec(),
        c1,
        bypass,
    })
}

/// The splice configurations in search order: removed edges, their end
/// order, and the order of the neighbours of the removed pair.
fn splice_configs(p1: &Multigraph, n1: &[usize], p2: &Multigraph, xy: usize) -> Vec<DotSplice> {
    let name = |g: &Multigraph, v: usize| g.vertex_name(v).to_string();
    let free: Vec<usize> = (0..p1.edge_count()).filter(|e| !n1.contains(e)).collect();
    let (u, w) = p2.edge(xy).ends;
    let un: Vec<usize> = p2.neighbors(u).filter(|&v| v != w).collect();
    let wn: Vec<usize> = p2.neighbors(w).filter(|&v| v != u).collect();
    let mut out = Vec::new();
    for (i, &e1) in free.iter().enumerate() {
        for &e2 in &free[i + 1..] {
            let (a, b) = p1.edge(e1).ends;
            let (c, dd) = p1.edge(e2).ends;
            if p1.edge(e2).touches(a) || p1.edge(e2).touches(b) {
                continue;
            }
            for (v1, v2) in [(a, b), (b, a)] {
                for (v3, v4) in [(c, dd), (dd, c)] {
                    for uo in [[un[0], un[1]], [un[1], un[0]]] {
                        for wo in [[wn[0], wn[1]], [wn[1], wn[0]]] {
                            out.push(DotSplice {
                                e1: p1.edge(e1).id.clone(),
                                e2: p1.edge(e2).id.clone(),
                                v: [name(p1, v1), name(p1, v2), name(p1, v3), name(p1, v4)],
                                u: name(p2, u),
                                w: name(p2, w),
                                u_nbrs: uo.map(|v| name(p2, v)),
                                w_nbrs: wo.map(|v| name(p2, v)),
                                join_tag: "j".into(),
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Number of automorphisms, by backtracking over adjacency-preserving maps.
fn automorphism_count(g: &Multigraph) -> usize {
    let n = g.vertex_count();
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in g.vertices() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = std::collections::VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            order.push(v);
            for w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
    }
    fn go(g: &Multigraph, order: &[usize], k: usize, map: &mut Vec<Option<usize>>, used: &mut Vec<bool>) -> usize {
        if k == order.len() {
            return 1;
        }
        let v = order[k];
        let mut total = 0;
        for img in g.vertices() {
            if used[img] || g.degree(img) != g.degree(v) {
                continue;
            }
            let consistent = order[..k]
                .iter()
                .all(|&u| g.multiplicity(u, v) == g.multiplicity(map[u].unwrap(), img));
            if !consistent {
                continue;
            }
            map[v] = Some(img);
            used[img] = true;
            total += go(g, order, k + 1, map, used);
            used[img] = false;
            map[v] = None;
        }
        total
    }
    go(g, &order, 0, &mut vec![None; n], &mut vec![false; n])
}

/// Runs the exhaustive search and returns the first witness as a seed.
pub fn search_blanusa_seed() -> Result<BlanusaSeed> {
    let p1 = petersen().tagged("1");
    let p2 = petersen().tagged("2");
    let n1 = perfect_matchings(&p1).into_iter().next().unwrap();
    let n2 = perfect_matchings(&p2).into_iter().next().unwrap();
    let m1 = Matching::from_indices(&p1, &n1);
    let m2 = Matching::from_indices(&p2, &n2);
    let configs = splice_configs(&p1, &n1, &p2, n2[0]);
    for (idx, splice) in configs.iter().enumerate() {
        let (g, m) = m_dot_product(&p1, &m1, &p2, &m2, splice).map_err(family)?;
        let Some(w) = search_realization(&g, &m) else {
            continue;
        };
        let mut role: Vec<Option<String>> = vec![None; g.vertex_count()];
        for (i, &v) in w.cycle.iter().enumerate() {
            role[v] = Some(format!("x{i}"));
        }
        role[w.y[0]] = Some("y0".into());
        role[w.y[1]] = Some("y1".into());
        let mut r = 0;
        for slot in role.iter_mut().filter(|s| s.is_none()) {
            *slot = Some(format!("r{r}"));
            r += 1;
        }
        let role: Vec<String> = role.into_iter().map(Option::unwrap).collect();
        let rename = g
            .vertices()
            .map(|v| (g.vertex_name(v).to_string(), role[v].clone()))
            .collect();
        let flow: Vec<(String, String, i64)> = (0..g.edge_count())
            .map(|e| {
                let (a, b) = g.edge(e).ends;
                let v = w.values[e];
                let (t, h) = if v >= 0 { (a, b) } else { (b, a) };
                (role[t].clone(), role[h].clone(), v.abs())
            })
            .collect();
        let mut c1: Vec<String> = vec!["x0".into(), "x1".into()];
        c1.extend(w.c1.iter().map(|&v| role[v].clone()));
        let c2: Vec<String> = (0..9).map(|i| format!("x{i}")).collect();
        let bypass = w.bypass.iter().map(|&v| role[v].clone()).collect();
        let descriptor = format!(
            "petersen-dot-petersen config={idx}/{} girth=5 automorphisms={} perfect-matchings={}",
            configs.len(),
            automorphism_count(&g),
            perfect_matchings(&g).len()
        );
        let provenance = SeedProvenance {
            splice: splice.clone(),
            n1: m1.clone(),
            n2: m2.clone(),
            rename,
        };
        return BlanusaSeed::from_parts(provenance, &flow, [c1, c2], bypass, descriptor).map_err(family);
    }
    Err(fail("no dot-product realization admits the required seed flow"))
}

// ---------------------------------------------------------------------------
// Chain flow

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlanusaChainFlow {
    pub chain: BlanusaChain,
    /// Integer 4-flow with the single zero on `x0x1` of copy 1.
    pub base: RationalFlow,
    /// `n + 1` directed circuits through the zero edge.
    pub circuits: Vec<DirectedCircuit>,
    /// Nowhere-zero `(4 + 1/(n+1))`-flow.
    pub flow: RationalFlow,
    pub bipartition: Bipartition,
    pub checks: Checks,
}

fn chain_flow(seed: &BlanusaSeed, chain: &BlanusaChain) -> Result<BlanusaChainFlow> {
    let n = chain.n;
    let g = &chain.graph;
    let sg = &seed.graph;
    let zero = g
        .edge_idx(&BlanusaChain::copy_edge_id("x0", "x1", 1))
        .ok_or_else(|| fail("missing zero edge"))?;
    let mut d = Orientation::as_stored(g);
    let mut values: Vec<Option<Rational>> = vec![None; g.edge_count()];
    for k in 1..=n {
        // Copy k carries D1 when k is odd and its reverse when k is even.
        let flip = k % 2 == 0;
        for &(t, h, v) in &seed.flow {
            let (tn, hn) = (sg.vertex_name(t).as_str(), sg.vertex_name(h).as_str());
            let Some(ce) = g.edge_idx(&BlanusaChain::copy_edge_id(tn, hn, k)) else {
                continue;
            };
            let tail = if flip { hn } else { tn };
            d.set(g, ce, g.require_vertex(&BlanusaChain::vertex_name(tail, k))?);
            values[ce] = Some(int(v));
        }
    }
    // Splice edges take the deficit at their copy-k end.
    for k in 1..n {
        for (j, (a, _)) in BlanusaChain::SPLICES.iter().enumerate() {
            let e = g
                .edge_idx(&BlanusaChain::splice_edge_id(k, j + 1))
                .ok_or_else(|| fail("missing splice edge"))?;
            let v = g.require_vertex(&BlanusaChain::vertex_name(a, k))?;
            let mut net = Rational::zero();
            for &f in g.incident(v) {
                if let Some(x) = values[f] {
                    net += if d.head(g, f) == v { x } else { -x };
                }
            }
            if net > Rational::zero() {
                d.set(g, e, v);
                values[e] = Some(net);
            } else {
                d.set(g, e, g.edge(e).other(v));
                values[e] = Some(-net);
            }
        }
    }
    let values: Vec<Rational> = values
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| fail("flow does not cover the chain"))?;
    let base = RationalFlow::new(d, values, int(4)).with_mode(FlowMode::OneZero { edge: zero });

    let mut checks = Checks::default();
    checks.add("integer 4-flow", check_flow(g, &base)?.is_none());
    let last = |a: &str, b: &str| -> Option<Rational> {
        let e = g.edge_idx(&BlanusaChain::copy_edge_id(a, b, n))?;
        let want = BlanusaChain::vertex_name(a, n);
        let forward = base.orientation.tail(g, e) == g.vertex_idx(&want)?;
        let odd = n % 2 == 1;
        (forward == odd).then_some(base.values[e])
    };
    checks.add("f(x7x8) = 1 on the last copy", last("x7", "x8") == Some(int(1)));
    checks.add("f(x4x5) = 2 on the last copy", last("x4", "x5") == Some(int(2)));

    // Circuits as vertex-index cycles; `main` contains x4 … x8 of the last copy.
    let v = |role: &str, k: usize| {
        g.vertex_idx(&BlanusaChain::vertex_name(role, k))
            .ok_or_else(|| fail("missing vertex"))
    };
    let mut circuits: Vec<Vec<usize>> = Vec::new();
    for c in &seed.circuits {
        circuits.push(c.iter().map(|r| v(r, 1)).collect::<Result<_>>()?);
    }
    let main = 1;
    for k in 1..n {
        let next = k + 1;
        let straight: Vec<&str> = vec!["x8", "x7", "x6", "x5", "x4", "x3", "x2"];
        let bypass: Vec<&str> = seed.bypass.iter().rev().map(String::as_str).collect();
        let c = circuits[main].clone();
        let (p4, p8) = (v("x4", k)?, v("x8", k)?);
        let len = c.len();
        let i4 = c
            .iter()
            .position(|&x| x == p4)
            .ok_or_else(|| fail("main circuit misses x4"))?;
        let i8 = c
            .iter()
            .position(|&x| x == p8)
            .ok_or_else(|| fail("main circuit misses x8"))?;
        let forward = (i4 + 4) % len == i8;
        if !forward && (i8 + 4) % len != i4 {
            return Err(fail("main circuit does not contain x4 … x8 as a segment"));
        }
        let build = |route: &[&str]| -> Result<Vec<usize>> {
            let mut inner: Vec<usize> = route.iter().map(|r| v(r, next)).collect::<Result<_>>()?;
            if !forward {
                inner.reverse();
            }
            // Rotate so the segment sits at the end, then rebuild.
            let (start, end) = if forward { (i4, i8) } else { (i8, i4) };
            let mut out = Vec::new();
            let mut i = end;
            loop {
                out.push(c[i]);
                if i == start {
                    break;
                }
                i = (i + 1) % len;
            }
            out.extend(inner);
            Ok(out)
        };
        let c2 = build(&straight)?;
        let c1 = build(&bypass)?;
        // The straight route keeps the role of main circuit.
        circuits[main] = c2;
        circuits.push(c1);
    }
    let circuits: Vec<DirectedCircuit> = circuits
        .into_iter()
        .map(|vs| {
            let mut closed = vs.clone();
            closed.push(vs[0]);
            let edges = path_edges(g, &closed)?;
            let c = DirectedCircuit { vertices: vs, edges };
            c.validate(g)?;
            Ok(c)
        })
        .collect::<Result<_>>()?;
    checks.add("n + 1 circuits", circuits.len() == n + 1);
    checks.add(
        "P1: zero edge on every circuit",
        circuits.iter().all(|c| c.contains_edge(zero)),
    );
    let p2 = (0..g.edge_count())
        .filter(|&e| base.values[e] == int(3))
        .all(|e| circuits.iter().filter(|c| c.contains_edge(e)).count() <= 1);
    checks.add("P2: value-3 edges on at most one circuit", p2);

    let share = rat(1, (n + 1) as i64);
    let mut flow = base.clone();
    let mut directed = true;
    for c in &circuits {
        match add_circuit_flow(g, &flow, c, share) {
            Ok(f) => flow = f,
            Err(_) => directed = false,
        }
    }
    checks.add("circuits directed", directed);
    let flow = flow.with_r(int(4) + share).with_mode(FlowMode::NowhereZero);
    checks.add("nowhere-zero (4 + 1/(n+1))-flow", check_flow(g, &flow)?.is_none());
    let bipartition = flow_to_bipartition(g, &flow).map_err(|e| fail(e.to_string()))?;
    checks.add("M_n perfect", chain.matching.is_perfect(g));
    checks.add("M_n pairs black with white", bipartition.pairs(g, &chain.matching)?);
    Ok(BlanusaChainFlow {
        chain: chain.clone(),
        base,
        circuits,
        flow,
        bipartition,
        checks,
    })
}

/// The inductive flow on `G_n` from the committed seed.
pub fn build_blanusa_chain_flow(n: usize) -> Result<BlanusaChainFlow> {
    let chain = blanusa_chain(n).map_err(|e| FlowError::Precondition(e.to_string()))?;
    chain_flow(BlanusaSeed::golden().map_err(family)?, &chain)
}

/// Chain flow for an arbitrary seed, used when checking a fresh search result.
pub fn chain_flow_for_seed(seed: &BlanusaSeed, n: usize) -> Result<BlanusaChainFlow> {
    let chain = build_chain(seed, n).map_err(family)?;
    chain_flow(seed, &chain)
}
