//! Deterministic generators for the graph families used throughout the crate.

mod blanusa;
mod dot;
mod flower;
mod mp;

pub use blanusa::{blanusa_chain, build_chain, BlanusaChain, BlanusaSeed, SeedProvenance, BLANUSA_SEED};
pub use dot::{dot_product, m_dot_product, DotProductError, DotProductSpec, DotSplice};
pub use flower::{flower_snark, FlowerSnark};
pub use mp::{mp_graph, MpFamily, MpLayout, MpStage};

use thiserror::Error;

use crate::graph::{EdgeId, GraphError, Multigraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("dot product: {0}")]
    DotProduct(#[from] DotProductError),
    #[error("seed data: {0}")]
    Seed(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub type Result<T> = std::result::Result<T, FamilyError>;

/// The Petersen graph: outer 5-cycle `o[i]`, spokes, inner pentagram `n[i]`.
pub fn petersen() -> Multigraph {
    let mut g = Multigraph::new();
    for i in 0..5 {
        g.add_vertex(format!("o[{i}]")).unwrap();
    }
    for i in 0..5 {
        g.add_vertex(format!("n[{i}]")).unwrap();
    }
    for i in 0..5 {
        g.add_edge_idx(EdgeId::new(format!("oo[{i}]")).unwrap(), i, (i + 1) % 5)
            .unwrap();
    }
    for i in 0..5 {
        g.add_edge_idx(EdgeId::new(format!("on[{i}]")).unwrap(), i, 5 + i)
            .unwrap();
    }
    for i in 0..5 {
        g.add_edge_idx(EdgeId::new(format!("nn[{i}]")).unwrap(), 5 + i, 5 + (i + 2) % 5)
            .unwrap();
    }
    g
}

/// `K_m` on vertices `v[0..m]`.
pub fn complete_graph(m: usize) -> Result<Multigraph> {
    if m < 2 {
        return Err(FamilyError::InvalidParameter(format!(
            "complete graph needs m >= 2, got {m}"
        )));
    }
    let mut g = Multigraph::new();
    for i in 0..m {
        g.add_vertex(format!("v[{i}]"))?;
    }
    for i in 0..m {
        for j in i + 1..m {
            g.add_edge_idx(EdgeId::new(format!("k[{i},{j}]"))?, i, j)?;
        }
    }
    Ok(g)
}

/// `K_{m,m}` with sides `l[i]` and `r[j]`.
pub fn complete_bipartite(m: usize) -> Result<Multigraph> {
    if m < 1 {
        return Err(FamilyError::InvalidParameter("K_{m,m} needs m >= 1".into()));
    }
    let mut g = Multigraph::new();
    for i in 0..m {
        g.add_vertex(format!("l[{i}]"))?;
    }
    for j in 0..m {
        g.add_vertex(format!("r[{j}]"))?;
    }
    for i in 0..m {
        for j in 0..m {
            g.add_edge_idx(EdgeId::new(format!("lr[{i},{j}]"))?, i, m + j)?;
        }
    }
    Ok(g)
}

/// Prism over a cycle of length `m` (cubic, class 1 for even `m`).
pub fn prism(m: usize) -> Result<Multigraph> {
    if m < 3 {
        return Err(FamilyError::InvalidParameter("prism needs m >= 3".into()));
    }
    let mut g = Multigraph::new();
    for i in 0..m {
        g.add_vertex(format!("p[{i}]"))?;
    }
    for i in 0..m {
        g.add_vertex(format!("q[{i}]"))?;
    }
    for i in 0..m {
        g.add_edge_idx(EdgeId::new(format!("pp[{i}]"))?, i, (i + 1) % m)?;
        g.add_edge_idx(EdgeId::new(format!("qq[{i}]"))?, m + i, m + (i + 1) % m)?;
        g.add_edge_idx(EdgeId::new(format!("pq[{i}]"))?, i, m + i)?;
    }
    Ok(g)
}

/// Cycle `C_m` on `u[0..m]`.
pub fn cycle(m: usize) -> Result<Multigraph> {
    if m < 2 {
        return Err(FamilyError::InvalidParameter("cycle needs m >= 2".into()));
    }
    let mut g = Multigraph::new();
    for i in 0..m {
        g.add_vertex(format!("u[{i}]"))?;
    }
    for i in 0..m {
        g.add_edge_idx(EdgeId::new(format!("uu[{i}]"))?, i, (i + 1) % m)?;
    }
    Ok(g)
}

/// Girth of a simple graph by BFS from every vertex (`None` for forests).
pub fn girth(g: &Multigraph) -> Option<usize> {
    if !g.is_simple() {
        return Some(2);
    }
    let n = g.vertex_count();
    let mut best: Option<usize> = None;
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent_edge = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &e in g.incident(v) {
                if e == parent_edge[v] {
                    continue;
                }
                let w = g.edge(e).other(v);
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent_edge[w] = e;
                    queue.push_back(w);
                } else {
                    let len = dist[v] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn petersen_shape() {
        let p = petersen();
        assert_eq!(p.vertex_count(), 10);
        assert_eq!(p.edge_count(), 15);
        assert_eq!(p.regular_degree(), Some(3));
        assert_eq!(girth(&p), Some(5));
    }

    #[test]
    fn complete_graph_counts() {
        assert_eq!(complete_graph(4).unwrap().edge_count(), 6);
        assert_eq!(complete_graph(6).unwrap().edge_count(), 15);
        assert_eq!(complete_graph(12).unwrap().edge_count(), 66);
        assert!(complete_graph(1).is_err());
    }

    #[test]
    fn small_families() {
        let k33 = complete_bipartite(3).unwrap();
        assert!(k33.is_bipartite());
        assert_eq!(k33.regular_degree(), Some(3));
        assert_eq!(prism(3).unwrap().regular_degree(), Some(3));
        assert_eq!(cycle(5).unwrap().edge_count(), 5);
    }
}
