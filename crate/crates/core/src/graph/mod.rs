//! Loopless undirected multigraphs with stable vertex and edge identities.
//!
//! Vertices carry structured names such as `a[3]` or `x4@2`; edges carry an
//! [`EdgeId`] made of a base name and a copy index. The copy index is what
//! keeps matching edges addressable after [`Multigraph::add_matching_copies`].

mod format;
mod matching;

pub use format::{
    from_graph6, parse_graph, parse_matching_file, to_graph6, write_graph, write_matching, FORMAT_HEADER,
    MATCHING_HEADER,
};
pub use matching::{bipartite_perfect_matching, one_factorization_bipartite, perfect_matchings};

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("edge `{0}` would be a loop")]
    Loop(String),
    #[error("invalid name `{0}`")]
    InvalidName(String),
    #[error("vertex subset must be nonempty and proper")]
    TrivialCut,
    #[error("edge set is not a matching: {0}")]
    NotAMatching(String),
    #[error("attachment for vertex `{vertex}` is incomplete or inconsistent: {reason}")]
    BadAttachment { vertex: String, reason: String },
    #[error("component through `{0}` is a cycle of divalent vertices")]
    DivalentCycle(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("graph6: {0}")]
    Graph6(String),
}

pub type Result<T> = std::result::Result<T, GraphError>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if !valid_name(&name) {
            return Err(GraphError::InvalidName(name));
        }
        Ok(VertexId(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && !name.starts_with('#') && name.chars().all(|c| !c.is_whitespace() && c != '~')
}

/// Edge identity: a base name plus a copy index (0 for original edges).
///
/// The `k`-th added copy of an edge keeps the base and gets copy index `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeId {
    base: String,
    copy: u32,
}

impl EdgeId {
    pub fn new(base: impl Into<String>) -> Result<Self> {
        Self::with_copy(base, 0)
    }

    pub fn with_copy(base: impl Into<String>, copy: u32) -> Result<Self> {
        let base = base.into();
        if !valid_name(&base) {
            return Err(GraphError::InvalidName(base));
        }
        Ok(EdgeId { base, copy })
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn copy_index(&self) -> u32 {
        self.copy
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text.split_once('~') {
            Some((base, k)) => {
                let k: u32 = k.parse().map_err(|_| GraphError::InvalidName(text.to_string()))?;
                if k == 0 {
                    return Err(GraphError::InvalidName(text.to_string()));
                }
                Self::with_copy(base, k)
            }
            None => Self::new(text),
        }
    }

    fn tagged(&self, tag: &str) -> EdgeId {
        EdgeId {
            base: format!("{}@{}", self.base, tag),
            copy: self.copy,
        }
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.copy == 0 {
            f.write_str(&self.base)
        } else {
            write!(f, "{}~{}", self.base, self.copy)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub ends: (usize, usize),
}

impl Edge {
    pub fn other(&self, v: usize) -> usize {
        if self.ends.0 == v {
            self.ends.1
        } else {
            self.ends.0
        }
    }

    pub fn touches(&self, v: usize) -> bool {
        self.ends.0 == v || self.ends.1 == v
    }
}

#[derive(Debug, Clone, Default)]
pub struct Multigraph {
    names: Vec<VertexId>,
    vertex_index: HashMap<VertexId, usize>,
    edges: Vec<Edge>,
    edge_index: HashMap<EdgeId, usize>,
    incidence: Vec<Vec<usize>>,
}

impl PartialEq for Multigraph {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.edges == other.edges
    }
}

impl Eq for Multigraph {}

/// `∂_G(X)`: the side `X` and the edges with exactly one end in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCut {
    pub side: BTreeSet<usize>,
    pub edges: Vec<usize>,
}

impl EdgeCut {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// A set of edges addressed by id, so it survives copying and subgraph operations.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Matching {
    edges: BTreeSet<EdgeId>,
}

impl Matching {
    pub fn new(edges: impl IntoIterator<Item = EdgeId>) -> Self {
        Matching {
            edges: edges.into_iter().collect(),
        }
    }

    pub fn from_indices(g: &Multigraph, edges: &[usize]) -> Self {
        Matching::new(edges.iter().map(|&e| g.edge(e).id.clone()))
    }

    pub fn ids(&self) -> impl Iterator<Item = &EdgeId> {
        self.edges.iter()
    }

    pub fn contains(&self, id: &EdgeId) -> bool {
        self.edges.contains(id)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn insert(&mut self, id: EdgeId) {
        self.edges.insert(id);
    }

    pub fn remove(&mut self, id: &EdgeId) -> bool {
        self.edges.remove(id)
    }

    /// Edge indices in `g`; fails on ids that `g` does not have.
    pub fn resolve(&self, g: &Multigraph) -> Result<Vec<usize>> {
        self.edges
            .iter()
            .map(|id| g.edge_idx(id).ok_or_else(|| GraphError::UnknownEdge(id.to_string())))
            .collect()
    }

    /// Checks that no two edges share an endpoint.
    pub fn check(&self, g: &Multigraph) -> Result<Vec<usize>> {
        let idx = self.resolve(g)?;
        let mut seen = vec![false; g.vertex_count()];
        for &e in &idx {
            let (u, v) = g.edge(e).ends;
            for w in [u, v] {
                if seen[w] {
                    return Err(GraphError::NotAMatching(format!(
                        "vertex `{}` covered twice",
                        g.vertex_name(w)
                    )));
                }
                seen[w] = true;
            }
        }
        Ok(idx)
    }

    pub fn is_perfect(&self, g: &Multigraph) -> bool {
        match self.check(g) {
            Ok(idx) => 2 * idx.len() == g.vertex_count(),
            Err(_) => false,
        }
    }

    /// The copies of this matching's edges as they appear under `tag`.
    pub fn tagged(&self, tag: &str) -> Matching {
        Matching::new(self.edges.iter().map(|e| e.tagged(tag)))
    }
}

impl Multigraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<usize> {
        let id = VertexId::new(name)?;
        if self.vertex_index.contains_key(&id) {
            return Err(GraphError::DuplicateVertex(id.0));
        }
        let idx = self.names.len();
        self.vertex_index.insert(id.clone(), idx);
        self.names.push(id);
        self.incidence.push(Vec::new());
        Ok(idx)
    }

    /// Adds an edge between two existing vertex indices.
    pub fn add_edge_idx(&mut self, id: EdgeId, u: usize, v: usize) -> Result<usize> {
        if u >= self.names.len() {
            return Err(GraphError::UnknownVertex(u.to_string()));
        }
        if v >= self.names.len() {
            return Err(GraphError::UnknownVertex(v.to_string()));
        }
        if u == v {
            return Err(GraphError::Loop(id.to_string()));
        }
        if self.edge_index.contains_key(&id) {
            return Err(GraphError::DuplicateEdge(id.to_string()));
        }
        let idx = self.edges.len();
        self.edge_index.insert(id.clone(), idx);
        self.edges.push(Edge { id, ends: (u, v) });
        self.incidence[u].push(idx);
        self.incidence[v].push(idx);
        Ok(idx)
    }

    pub fn add_edge(&mut self, id: &str, u: &str, v: &str) -> Result<usize> {
        let eid = EdgeId::parse(id)?;
        let u = match self.vertex_idx(u) {
            Some(i) => i,
            None => self.add_vertex(u)?,
        };
        let v = match self.vertex_idx(v) {
            Some(i) => i,
            None => self.add_vertex(v)?,
        };
        self.add_edge_idx(eid, u, v)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.names.len()
    }

    pub fn vertex_name(&self, v: usize) -> &VertexId {
        &self.names[v]
    }

    pub fn vertex_idx(&self, name: &str) -> Option<usize> {
        self.vertex_index.get(&VertexId(name.to_string())).copied()
    }

    pub fn require_vertex(&self, name: &str) -> Result<usize> {
        self.vertex_idx(name)
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edge_idx(&self, id: &EdgeId) -> Option<usize> {
        self.edge_index.get(id).copied()
    }

    pub fn require_edge(&self, id: &str) -> Result<usize> {
        let eid = EdgeId::parse(id)?;
        self.edge_idx(&eid)
            .ok_or_else(|| GraphError::UnknownEdge(id.to_string()))
    }

    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    /// Number of edge-endpoint incidences at `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn degree_of(&self, name: &str) -> Result<usize> {
        Ok(self.degree(self.require_vertex(name)?))
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.max_degree();
        (self.vertex_count() > 0 && self.min_degree() == d).then_some(d)
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.incidence[u]
            .iter()
            .filter(|&&e| self.edges[e].other(u) == v)
            .count()
    }

    pub fn edges_between(&self, u: usize, v: usize) -> Vec<usize> {
        self.incidence[u]
            .iter()
            .copied()
            .filter(|&e| self.edges[e].other(u) == v)
            .collect()
    }

    /// Maximum edge multiplicity `μ(G)`.
    pub fn max_multiplicity(&self) -> usize {
        let mut counts: HashMap<(usize, usize), usize> = HashMap::new();
        for e in &self.edges {
            let key = (e.ends.0.min(e.ends.1), e.ends.0.max(e.ends.1));
            *counts.entry(key).or_default() += 1;
        }
        counts.values().copied().max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.incidence[v].iter().map(move |&e| self.edges[e].other(v))
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).any(|w| w == v)
    }

    pub fn is_simple(&self) -> bool {
        self.max_multiplicity() <= 1
    }

    /// Returns `∂_G(X)`; `X` must be nonempty and proper.
    pub fn edge_cut(&self, side: &BTreeSet<usize>) -> Result<EdgeCut> {
        if side.is_empty() || side.len() >= self.vertex_count() {
            return Err(GraphError::TrivialCut);
        }
        if let Some(&v) = side.iter().find(|&&v| v >= self.vertex_count()) {
            return Err(GraphError::UnknownVertex(v.to_string()));
        }
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(_, e)| side.contains(&e.ends.0) != side.contains(&e.ends.1))
            .map(|(i, _)| i)
            .collect();
        Ok(EdgeCut {
            side: side.clone(),
            edges,
        })
    }

    /// Cut size by vertex mask, for enumeration-scale graphs.
    pub fn cut_size_mask(&self, mask: u64) -> usize {
        self.edges
            .iter()
            .filter(|e| ((mask >> e.ends.0) & 1) != ((mask >> e.ends.1) & 1))
            .count()
    }

    /// `G + kM`: `k` parallel copies of every edge of `m`.
    ///
    /// Copies continue the copy numbering already present for each base, so
    /// adding `j` then `k` copies gives the same ids as adding `j + k` at once.
    pub fn add_matching_copies(&self, m: &Matching, k: usize) -> Result<Multigraph> {
        let idx = m.check(self)?;
        let mut out = self.clone();
        for e in idx {
            let edge = self.edge(e).clone();
            let mut next = self
                .edges
                .iter()
                .filter(|x| x.id.base == edge.id.base)
                .map(|x| x.id.copy)
                .max()
                .unwrap_or(0);
            for _ in 0..k {
                next += 1;
                let id = EdgeId {
                    base: edge.id.base.clone(),
                    copy: next,
                };
                out.add_edge_idx(id, edge.ends.0, edge.ends.1)?;
            }
        }
        Ok(out)
    }

    /// The parallel copies (including the original) of each matching edge.
    pub fn copies_of(&self, id: &EdgeId) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.id.base == id.base)
            .map(|(i, _)| i)
            .collect()
    }

    /// Replaces `v` by `replacement`, reattaching each edge at `v` to the
    /// replacement vertex named in `attachment`.
    pub fn expand_vertex(
        &self,
        v: &str,
        replacement: &Multigraph,
        attachment: &HashMap<EdgeId, String>,
    ) -> Result<Multigraph> {
        let vi = self.require_vertex(v)?;
        let bad = |reason: String| GraphError::BadAttachment {
            vertex: v.to_string(),
            reason,
        };
        for id in attachment.keys() {
            match self.edge_idx(id) {
                Some(e) if self.edges[e].touches(vi) => {}
                _ => return Err(bad(format!("edge `{id}` is not incident to `{v}`"))),
            }
        }
        let mut out = Multigraph::new();
        for u in self.vertices().filter(|&u| u != vi) {
            out.add_vertex(self.names[u].0.clone())?;
        }
        for name in &replacement.names {
            out.add_vertex(name.0.clone())
                .map_err(|_| bad(format!("replacement vertex `{name}` clashes")))?;
        }
        for edge in &self.edges {
            let map_end = |x: usize| -> Result<usize> {
                if x == vi {
                    let target = attachment
                        .get(&edge.id)
                        .ok_or_else(|| bad(format!("edge `{}` has no attachment", edge.id)))?;
                    if replacement.vertex_idx(target).is_none() {
                        return Err(bad(format!("`{target}` is not a replacement vertex")));
                    }
                    out.require_vertex(target)
                } else {
                    out.require_vertex(self.names[x].as_str())
                }
            };
            let a = map_end(edge.ends.0)?;
            let b = map_end(edge.ends.1)?;
            out.add_edge_idx(edge.id.clone(), a, b)?;
        }
        for edge in &replacement.edges {
            let a = out.require_vertex(replacement.names[edge.ends.0].as_str())?;
            let b = out.require_vertex(replacement.names[edge.ends.1].as_str())?;
            out.add_edge_idx(edge.id.clone(), a, b)?;
        }
        Ok(out)
    }

    /// Smooths every degree-2 vertex into a single edge, to a fixpoint.
    ///
    /// The merged edge keeps the smaller of the two ids.
    pub fn suppress_divalent(&self) -> Result<Multigraph> {
        let mut alive_v: Vec<bool> = vec![true; self.vertex_count()];
        let mut edges: Vec<Option<Edge>> = self.edges.iter().cloned().map(Some).collect();
        let mut inc: Vec<Vec<usize>> = self.incidence.clone();
        let mut stack: Vec<usize> = self.vertices().filter(|&v| inc[v].len() == 2).collect();
        while let Some(v) = stack.pop() {
            if !alive_v[v] || inc[v].len() != 2 {
                continue;
            }
            let (e1, e2) = (inc[v][0], inc[v][1]);
            let a = edges[e1].as_ref().unwrap().other(v);
            let b = edges[e2].as_ref().unwrap().other(v);
            if a == b {
                if inc[a].len() == 2 {
                    return Err(GraphError::DivalentCycle(self.names[v].0.clone()));
                }
                return Err(GraphError::Loop(format!(
                    "suppressing `{}` joins `{}` to itself",
                    self.names[v], self.names[a]
                )));
            }
            let (keep, drop) = {
                let (i1, i2) = (&edges[e1].as_ref().unwrap().id, &edges[e2].as_ref().unwrap().id);
                if i1 <= i2 {
                    (e1, e2)
                } else {
                    (e2, e1)
                }
            };
            edges[drop] = None;
            edges[keep].as_mut().unwrap().ends = (a, b);
            alive_v[v] = false;
            inc[v].clear();
            for x in [a, b] {
                inc[x].retain(|&e| e != drop && e != keep);
            }
            inc[a].push(keep);
            inc[b].push(keep);
            for x in [a, b] {
                if inc[x].len() == 2 {
                    stack.push(x);
                }
            }
        }
        // A surviving vertex still of degree 2 can only sit on a divalent cycle.
        let mut out = Multigraph::new();
        let mut map = vec![usize::MAX; self.vertex_count()];
        for v in self.vertices().filter(|&v| alive_v[v]) {
            if inc[v].len() == 2 {
                return Err(GraphError::DivalentCycle(self.names[v].0.clone()));
            }
            map[v] = out.add_vertex(self.names[v].0.clone())?;
        }
        for e in edges.into_iter().flatten() {
            out.add_edge_idx(e.id, map[e.ends.0], map[e.ends.1])?;
        }
        Ok(out)
    }

    /// Same graph with `@tag` appended to every vertex name and edge base.
    pub fn tagged(&self, tag: &str) -> Multigraph {
        let mut out = Multigraph::new();
        for name in &self.names {
            out.add_vertex(format!("{}@{}", name, tag))
                .expect("tagging preserves uniqueness");
        }
        for e in &self.edges {
            out.add_edge_idx(e.id.tagged(tag), e.ends.0, e.ends.1)
                .expect("tagging preserves uniqueness");
        }
        out
    }

    /// Disjoint union; fails if names or ids collide.
    pub fn union(&self, other: &Multigraph) -> Result<Multigraph> {
        let mut out = self.clone();
        let offset = out.vertex_count();
        for name in &other.names {
            out.add_vertex(name.0.clone())?;
        }
        for e in &other.edges {
            out.add_edge_idx(e.id.clone(), e.ends.0 + offset, e.ends.1 + offset)?;
        }
        Ok(out)
    }

    /// Subgraph without the given edges; all other ids are kept.
    pub fn without_edges(&self, remove: &[usize]) -> Multigraph {
        let drop: BTreeSet<usize> = remove.iter().copied().collect();
        let mut out = Multigraph::new();
        for name in &self.names {
            out.add_vertex(name.0.clone()).unwrap();
        }
        for (i, e) in self.edges.iter().enumerate() {
            if !drop.contains(&i) {
                out.add_edge_idx(e.id.clone(), e.ends.0, e.ends.1).unwrap();
            }
        }
        out
    }

    /// Subgraph without the given vertices and their edges.
    pub fn without_vertices(&self, remove: &[usize]) -> Multigraph {
        let keep: Vec<usize> = self.vertices().filter(|v| !remove.contains(v)).collect();
        self.induced(&keep)
    }

    pub fn induced(&self, keep: &[usize]) -> Multigraph {
        let mut map = vec![usize::MAX; self.vertex_count()];
        let mut out = Multigraph::new();
        for &v in keep {
            map[v] = out.add_vertex(self.names[v].0.clone()).unwrap();
        }
        for e in &self.edges {
            let (a, b) = (map[e.ends.0], map[e.ends.1]);
            if a != usize::MAX && b != usize::MAX {
                out.add_edge_idx(e.id.clone(), a, b).unwrap();
            }
        }
        out
    }

    /// Same graph with vertex names passed through `rename`; ids unchanged.
    pub fn renamed<F: Fn(&str) -> String>(&self, rename: F) -> Result<Multigraph> {
        let mut out = Multigraph::new();
        for name in &self.names {
            out.add_vertex(rename(name.as_str()))?;
        }
        for e in &self.edges {
            out.add_edge_idx(e.id.clone(), e.ends.0, e.ends.1)?;
        }
        Ok(out)
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count() == 0 {
            return true;
        }
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Edges whose removal disconnects their component.
    pub fn bridges(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut timer = 0;
        let mut out = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // Iterative DFS: (vertex, parent edge, next incidence position).
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while let Some(&mut (v, pe, ref mut pos)) = stack.last_mut() {
                if *pos < self.incidence[v].len() {
                    let e = self.incidence[v][*pos];
                    *pos += 1;
                    if e == pe {
                        continue;
                    }
                    let w = self.edges[e].other(v);
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, e, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] > disc[p] {
                            out.push(pe);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_bridgeless(&self) -> bool {
        self.bridges().is_empty()
    }

    /// A proper 2-coloring of the vertices if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let n = self.vertex_count();
        let mut side: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                let sv = side[v].unwrap();
                for w in self.neighbors(v) {
                    match side[w] {
                        None => {
                            side[w] = Some(!sv);
                            stack.push(w);
                        }
                        Some(sw) if sw == sv => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap()).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// SHA-256 of the canonical text serialization, hex encoded.
    pub fn content_hash(&self) -> String {
        let text = write_graph(self);
        hex::encode(Sha256::digest(text.as_bytes()))
    }
}

impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_graph(self))
    }
}
