//! Exact edge-coloring search.
//!
//! A `k`-coloring of a `k`-regular multigraph is a decomposition into perfect
//! matchings, so regular instances at `k = Δ` are refuted by 1-factor peeling:
//! every perfect matching is removed in turn and the `(k-1)`-regular remainder
//! is solved recursively, with failed remainders memoized. Other instances use
//! a most-constrained-edge backtracking search. Both count their nodes and
//! hash their branch decisions, so a refutation can be replayed exactly.

use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::graph::Multigraph;

use super::{ColoringError, EdgeColoring, Result};

pub const TRACE_VERSION: u32 = 1;
/// Nodes spent on a quick backtracking attempt before peeling starts.
const QUICK_NODES: u64 = 200_000;
const MAX_COLORS: usize = 64;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Budget {
    pub nodes: Option<u64>,
    pub time: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn seconds(s: f64) -> Self {
        Budget {
            nodes: None,
            time: Some(Duration::from_secs_f64(s)),
        }
    }

    pub fn nodes(n: u64) -> Self {
        Budget {
            nodes: Some(n),
            time: None,
        }
    }
}

/// Replayable record of an exhausted search: the method, the color count,
/// the number of search nodes and a SHA-256 digest of every branch decision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefutationTrace {
    pub version: u32,
    pub method: String,
    pub colors: usize,
    pub nodes: u64,
    pub digest: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColorSearch {
    Colored(EdgeColoring),
    Refuted(RefutationTrace),
    /// Budget ran out after this many nodes.
    Exhausted {
        nodes: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChromaticIndex {
    pub lower: usize,
    pub upper: usize,
    /// A coloring with `upper` colors, when one was found.
    pub coloring: Option<EdgeColoring>,
    /// Refutations of `Δ, …, lower - 1` colors, in order.
    pub refutations: Vec<RefutationTrace>,
}

impl ChromaticIndex {
    pub fn exact(&self) -> Option<usize> {
        (self.lower == self.upper && self.coloring.is_some()).then_some(self.lower)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Found,
    Fail,
    Abort,
}

struct Shared {
    nodes: AtomicU64,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    aborted: AtomicBool,
    /// Lowest branch index that found a coloring; later branches stop.
    found_at: AtomicUsize,
}

impl Shared {
    fn new(budget: &Budget) -> Self {
        Shared {
            nodes: AtomicU64::new(0),
            max_nodes: budget.nodes,
            deadline: budget.time.map(|t| Instant::now() + t),
            aborted: AtomicBool::new(false),
            found_at: AtomicUsize::new(usize::MAX),
        }
    }
}

/// Node counter and decision hash for one branch.
struct Counter<'a> {
    shared: &'a Shared,
    branch: usize,
    nodes: u64,
    pending: u64,
    hasher: Sha256,
}

impl<'a> Counter<'a> {
    fn new(shared: &'a Shared, branch: usize) -> Self {
        Counter {
            shared,
            branch,
            nodes: 0,
            pending: 0,
            hasher: Sha256::new(),
        }
    }

    /// Records one node; `false` once the search must stop.
    fn tick(&mut self, data: &[u32]) -> bool {
        self.nodes += 1;
        for x in data {
            self.hasher.update(x.to_le_bytes());
        }
        self.hasher.update([0xff]);
        self.pending += 1;
        if self.pending >= 1024 || self.shared.max_nodes.is_some() {
            self.flush();
        }
        !self.stopped()
    }

    fn flush(&mut self) {
        let total = self.shared.nodes.fetch_add(self.pending, Ordering::Relaxed) + self.pending;
        self.pending = 0;
        let over_nodes = self.shared.max_nodes.is_some_and(|m| total > m);
        let over_time = self.shared.deadline.is_some_and(|d| Instant::now() > d);
        if over_nodes || over_time {
            self.shared.aborted.store(true, Ordering::Relaxed);
        }
    }

    fn stopped(&self) -> bool {
        self.shared.aborted.load(Ordering::Relaxed) || self.shared.found_at.load(Ordering::Relaxed) < self.branch
    }

    fn finish(mut self) -> (u64, [u8; 32]) {
        self.flush();
        (self.nodes, self.hasher.finalize().into())
    }
}

fn combine(method: &str, colors: usize, parts: &[(u64, [u8; 32])], head: u64) -> RefutationTrace {
    let mut h = Sha256::new();
    h.update(method.as_bytes());
    h.update((colors as u64).to_le_bytes());
    h.update(head.to_le_bytes());
    for (n, d) in parts {
        h.update(n.to_le_bytes());
        h.update(d);
    }
    RefutationTrace {
        version: TRACE_VERSION,
        method: method.to_string(),
        colors,
        nodes: head + parts.iter().map(|p| p.0).sum::<u64>(),
        digest: hex::encode(h.finalize()),
    }
}

type Bits = Vec<u64>;

fn bit(b: &Bits, e: usize) -> bool {
    b[e / 64] >> (e % 64) & 1 == 1
}

fn flip(b: &mut Bits, e: usize) {
    b[e / 64] ^= 1 << (e % 64);
}

struct Peeler<'a, 'b> {
    n: usize,
    inc: &'a [Vec<(usize, usize)>],
    memo: HashSet<Bits>,
    counter: Counter<'b>,
}

impl Peeler<'_, '_> {
    /// Solves the `k`-regular graph on `alive`, appending color classes.
    fn peel(&mut self, alive: &mut Bits, k: usize, classes: &mut Vec<Vec<usize>>) -> Outcome {
        match k {
            0 => return Outcome::Found,
            1 => {
                classes.push(self.alive_edges(alive));
                return Outcome::Found;
            }
            2 => return self.two_factor(alive, classes),
            _ => {}
        }
        if self.memo.contains(alive) {
            return Outcome::Fail;
        }
        let mut matched = vec![false; self.n];
        let mut chosen = Vec::with_capacity(self.n / 2);
        let r = self.matchings(alive, &mut matched, &mut chosen, k, classes);
        if r == Outcome::Fail {
            self.memo.insert(alive.clone());
        }
        r
    }

    fn alive_edges(&self, alive: &Bits) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.n)
            .flat_map(|v| self.inc[v].iter().map(|&(e, _)| e))
            .filter(|&e| bit(alive, e))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// A 2-regular graph splits into two matchings iff all cycles are even.
    fn two_factor(&mut self, alive: &Bits, classes: &mut Vec<Vec<usize>>) -> Outcome {
        let mut seen = vec![false; self.n];
        let (mut x, mut y) = (Vec::new(), Vec::new());
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut v = s;
            let mut prev = usize::MAX;
            let mut len = 0;
            loop {
                seen[v] = true;
                let &(e, u) = self.inc[v]
                    .iter()
                    .find(|&&(e, _)| bit(alive, e) && e != prev)
                    .expect("2-regular remainder");
                if len % 2 == 0 {
                    x.push(e);
                } else {
                    y.push(e);
                }
                len += 1;
                prev = e;
                v = u;
                if v == s {
                    break;
                }
            }
            if len % 2 == 1 {
                return Outcome::Fail;
            }
        }
        classes.push(x);
        classes.push(y);
        Outcome::Found
    }

    fn matchings(
        &mut self,
        alive: &mut Bits,
        matched: &mut [bool],
        chosen: &mut Vec<usize>,
        k: usize,
        classes: &mut Vec<Vec<usize>>,
    ) -> Outcome {
        let Some(v) = (0..self.n).find(|&v| !matched[v]) else {
            let data: Vec<u32> = chosen.iter().map(|&e| e as u32).collect();
            if !self.counter.tick(&data) {
                return Outcome::Abort;
            }
            for &e in chosen.iter() {
                flip(alive, e);
            }
            let r = self.peel(alive, k - 1, classes);
            for &e in chosen.iter() {
                flip(alive, e);
            }
            if r == Outcome::Found {
                classes.push(chosen.clone());
            }
            return r;
        };
        matched[v] = true;
        let mut tried: Vec<usize> = Vec::new();
        for i in 0..self.inc[v].len() {
            let (e, u) = self.inc[v][i];
            // Parallel copies are interchangeable: try one per neighbour.
            if matched[u] || !bit(alive, e) || tried.contains(&u) {
                continue;
            }
            tried.push(u);
            matched[u] = true;
            chosen.push(e);
            let r = self.matchings(alive, matched, chosen, k, classes);
            chosen.pop();
            matched[u] = false;
            if r != Outcome::Fail {
                matched[v] = false;
                return r;
            }
        }
        matched[v] = false;
        Outcome::Fail
    }
}

fn incidence(g: &Multigraph) -> Vec<Vec<(usize, usize)>> {
    g.vertices()
        .map(|v| {
            let mut l: Vec<(usize, usize)> = g.incident(v).iter().map(|&e| (e, g.edge(e).other(v))).collect();
            l.sort_unstable();
            l
        })
        .collect()
}

fn classes_to_coloring(g: &Multigraph, k: usize, classes: &[Vec<usize>]) -> EdgeColoring {
    let mut colors = vec![0u32; g.edge_count()];
    for (c, class) in classes.iter().enumerate() {
        for &e in class {
            colors[e] = c as u32;
        }
    }
    EdgeColoring::proper(k, colors)
}

/// Peeling for a `k`-regular graph; top-level matchings run in parallel.
fn peel_search(g: &Multigraph, k: usize, budget: &Budget) -> ColorSearch {
    let shared = Shared::new(budget);
    let inc = incidence(g);
    let n = g.vertex_count();
    let words = g.edge_count().div_ceil(64).max(1);
    let full: Bits = {
        let mut b = vec![0u64; words];
        for e in 0..g.edge_count() {
            flip(&mut b, e);
        }
        b
    };
    // Top-level perfect matchings, in enumeration order.
    let mut tops: Vec<Vec<usize>> = Vec::new();
    {
        fn rec(inc: &[Vec<(usize, usize)>], matched: &mut [bool], chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let Some(v) = (0..matched.len()).find(|&v| !matched[v]) else {
                out.push(chosen.clone());
                return;
            };
            matched[v] = true;
            let mut tried = Vec::new();
            for &(e, u) in &inc[v] {
                if matched[u] || tried.contains(&u) {
                    continue;
                }
                tried.push(u);
                matched[u] = true;
                chosen.push(e);
                rec(inc, matched, chosen, out);
                chosen.pop();
                matched[u] = false;
            }
            matched[v] = false;
        }
        rec(&inc, &mut vec![false; n], &mut Vec::new(), &mut tops);
    }
    let head = tops.len() as u64;
    let results: Vec<(Outcome, u64, [u8; 32], Vec<Vec<usize>>)> = tops
        .par_iter()
        .enumerate()
        .map(|(i, top)| {
            let mut p = Peeler {
                n,
                inc: &inc,
                memo: HashSet::new(),
                counter: Counter::new(&shared, i),
            };
            let data: Vec<u32> = top.iter().map(|&e| e as u32).collect();
            if !p.counter.tick(&data) {
                let (nodes, d) = p.counter.finish();
                return (Outcome::Abort, nodes, d, Vec::new());
            }
            let mut alive = full.clone();
            for &e in top {
                flip(&mut alive, e);
            }
            let mut classes = Vec::new();
            let r = p.peel(&mut alive, k - 1, &mut classes);
            if r == Outcome::Found {
                classes.push(top.clone());
                shared.found_at.fetch_min(i, Ordering::Relaxed);
            }
            let (nodes, d) = p.counter.finish();
            (r, nodes, d, classes)
        })
        .collect();
    if let Some((_, _, _, classes)) = results.iter().find(|r| r.0 == Outcome::Found) {
        return ColorSearch::Colored(classes_to_coloring(g, k, classes));
    }
    let total = head + results.iter().map(|r| r.1).sum::<u64>();
    if results.iter().any(|r| r.0 == Outcome::Abort) {
        return ColorSearch::Exhausted { nodes: total };
    }
    let parts: Vec<(u64, [u8; 32])> = results.iter().map(|r| (r.1, r.2)).collect();
    ColorSearch::Refuted(combine("peel", k, &parts, head))
}

struct Dfs<'a> {
    ends: Vec<(usize, usize)>,
    k: usize,
    used: Vec<u64>,
    color: Vec<u32>,
    counter: Counter<'a>,
}

const NONE: u32 = u32::MAX;

impl Dfs<'_> {
    fn avail(&self, e: usize) -> u64 {
        let (a, b) = self.ends[e];
        let full = if self.k == 64 { u64::MAX } else { (1u64 << self.k) - 1 };
        !(self.used[a] | self.used[b]) & full
    }

    fn run(&mut self, colored: usize, next_new: u32) -> Outcome {
        if colored == self.ends.len() {
            return Outcome::Found;
        }
        let mut best: Option<(u32, usize)> = None;
        for e in 0..self.ends.len() {
            if self.color[e] == NONE {
                let c = self.avail(e).count_ones();
                if best.is_none_or(|(bc, _)| c < bc) {
                    best = Some((c, e));
                    if c == 0 {
                        break;
                    }
                }
            }
        }
        let (_, e) = best.expect("an uncolored edge remains");
        let mut avail = self.avail(e);
        // Colors above `next_new` are interchangeable with it.
        if next_new < 63 {
            avail &= (1u64 << (next_new + 1)) - 1;
        }
        while avail != 0 {
            let c = avail.trailing_zeros();
            avail &= avail - 1;
            if !self.counter.tick(&[e as u32, c]) {
                return Outcome::Abort;
            }
            let (a, b) = self.ends[e];
            self.used[a] |= 1 << c;
            self.used[b] |= 1 << c;
            self.color[e] = c;
            let r = self.run(colored + 1, next_new.max(c + 1));
            if r == Outcome::Found {
                return r;
            }
            self.color[e] = NONE;
            self.used[a] &= !(1 << c);
            self.used[b] &= !(1 << c);
            if r != Outcome::Fail {
                return r;
            }
        }
        Outcome::Fail
    }
}

fn dfs_search(g: &Multigraph, k: usize, budget: &Budget) -> ColorSearch {
    let shared = Shared::new(budget);
    let mut dfs = Dfs {
        ends: g.edges().iter().map(|e| e.ends).collect(),
        k,
        used: vec![0; g.vertex_count()],
        color: vec![NONE; g.edge_count()],
        counter: Counter::new(&shared, 0),
    };
    match dfs.run(0, 0) {
        Outcome::Found => ColorSearch::Colored(EdgeColoring::proper(k, dfs.color)),
        Outcome::Abort => ColorSearch::Exhausted {
            nodes: dfs.counter.nodes,
        },
        Outcome::Fail => {
            let part = dfs.counter.finish();
            ColorSearch::Refuted(combine("backtrack", k, &[part], 0))
        }
    }
}

fn degree_refutation(k: usize) -> RefutationTrace {
    combine("degree", k, &[], 0)
}

/// Searches for a proper `k`-edge-coloring.
pub fn try_color(g: &Multigraph, k: usize, budget: &Budget) -> Result<ColorSearch> {
    if k > MAX_COLORS {
        return Err(ColoringError::Precondition(format!(
            "at most {MAX_COLORS} colors supported"
        )));
    }
    if g.edge_count() == 0 {
        return Ok(ColorSearch::Colored(EdgeColoring::proper(k, Vec::new())));
    }
    if k < g.max_degree() {
        return Ok(ColorSearch::Refuted(degree_refutation(k)));
    }
    if g.regular_degree() == Some(k) && k >= 3 {
        let quick = Budget {
            nodes: Some(budget.nodes.map_or(QUICK_NODES, |n| n.min(QUICK_NODES))),
            time: budget.time,
        };
        if let ColorSearch::Colored(c) = dfs_search(g, k, &quick) {
            return Ok(ColorSearch::Colored(c));
        }
        return Ok(peel_search(g, k, budget));
    }
    Ok(dfs_search(g, k, budget))
}

/// Exact `χ′` within `Δ ≤ χ′ ≤ Δ + μ`, or the bounds reached in budget.
pub fn chromatic_index(g: &Multigraph, budget: &Budget) -> Result<ChromaticIndex> {
    if g.edge_count() == 0 {
        return Ok(ChromaticIndex {
            lower: 0,
            upper: 0,
            coloring: Some(EdgeColoring::proper(0, Vec::new())),
            refutations: Vec::new(),
        });
    }
    let delta = g.max_degree();
    let top = delta + g.max_multiplicity();
    let mut refutations = Vec::new();
    for k in delta..=top {
        match try_color(g, k, budget)? {
            ColorSearch::Colored(c) => {
                return Ok(ChromaticIndex {
                    lower: k,
                    upper: k,
                    coloring: Some(c),
                    refutations,
                })
            }
            ColorSearch::Refuted(t) => refutations.push(t),
            ColorSearch::Exhausted { .. } => {
                return Ok(ChromaticIndex {
                    lower: k,
                    upper: top,
                    coloring: None,
                    refutations,
                })
            }
        }
    }
    Err(ColoringError::Construction(format!(
        "no coloring with {top} colors, above the Vizing bound"
    )))
}

/// Re-runs the refutation the trace describes and compares node count and
/// digest.
pub fn replay_refutation(g: &Multigraph, trace: &RefutationTrace) -> bool {
    if trace.version != TRACE_VERSION {
        return false;
    }
    let k = trace.colors;
    let budget = Budget::unlimited();
    let replayed = match trace.method.as_str() {
        "degree" => (k < g.max_degree()).then(|| degree_refutation(k)),
        "peel" if g.regular_degree() == Some(k) => match peel_search(g, k, &budget) {
            ColorSearch::Refuted(t) => Some(t),
            _ => None,
        },
        "backtrack" => match dfs_search(g, k, &budget) {
            ColorSearch::Refuted(t) => Some(t),
            _ => None,
        },
        _ => None,
    };
    replayed.as_ref() == Some(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorings::is_proper;
    use crate::families::{complete_bipartite, complete_graph, petersen};
    use crate::graph::{perfect_matchings, Matching};

    fn chi(g: &Multigraph) -> ChromaticIndex {
        let c = chromatic_index(g, &Budget::unlimited()).unwrap();
        if let Some(col) = &c.coloring {
            assert_eq!(is_proper(g, col).unwrap(), None);
        }
        c
    }

    #[test]
    fn petersen_is_class_two() {
        let g = petersen();
        let c = chi(&g);
        assert_eq!(c.exact(), Some(4));
        assert_eq!(c.refutations.len(), 1);
        assert!(replay_refutation(&g, &c.refutations[0]));
    }

    #[test]
    fn small_class_one() {
        assert_eq!(chi(&complete_bipartite(3).unwrap()).exact(), Some(3));
        assert_eq!(chi(&complete_graph(4).unwrap()).exact(), Some(3));
        assert_eq!(chi(&complete_graph(5).unwrap()).exact(), Some(5));
    }

    #[test]
    fn petersen_plus_matching() {
        let g = petersen();
        let pm = &perfect_matchings(&g)[0];
        let h = g.add_matching_copies(&Matching::from_indices(&g, pm), 1).unwrap();
        assert_eq!(chi(&h).exact(), Some(5));
    }

    #[test]
    fn tampered_trace_fails_replay() {
        let g = petersen();
        let mut t = chi(&g).refutations[0].clone();
        t.nodes += 1;
        assert!(!replay_refutation(&g, &t));
    }

    #[test]
    fn budget_gives_bounds() {
        let g = petersen();
        let c = chromatic_index(&g, &Budget::nodes(1)).unwrap();
        assert_eq!((c.lower, c.upper, c.coloring.is_none()), (3, 4, true));
    }
}
