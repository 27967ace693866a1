use thiserror::Error;

use crate::graph::{EdgeId, Matching, Multigraph};

use super::Result;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DotProductError {
    #[error("removed edge `{0}` is not an edge of the first graph")]
    MissingEdge(String),
    #[error("removed edge `{edge}` does not join `{a}` and `{b}`")]
    EdgeEnds { edge: String, a: String, b: String },
    #[error("removed edges must form a 2-edge matching")]
    RemovedEdgesAdjacent,
    #[error("removed vertices `{0}` and `{1}` are not adjacent")]
    PairNotAdjacent(String, String),
    #[error("listed neighbours of `{0}` do not match the graph")]
    NeighborMismatch(String),
    #[error("removed edge `{0}` lies in the first matching")]
    RemovedEdgeInMatching(String),
    #[error("removed pair is not joined by an edge of the second matching")]
    PairNotInMatching,
    #[error("{0} matching is not perfect")]
    NotPerfect(&'static str),
    #[error("combined matching is not perfect")]
    ResultNotPerfect,
}

/// The splice data of `G · H`: `e1 = v1v2`, `e2 = v3v4` leave `G`, the adjacent
/// pair `u, w` leaves `H`, and the new edges are `v1u1, v2u2, v3w1, v4w2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DotSplice {
    pub e1: EdgeId,
    pub e2: EdgeId,
    pub v: [String; 4],
    pub u: String,
    pub w: String,
    pub u_nbrs: [String; 2],
    pub w_nbrs: [String; 2],
    /// Prefix of the four join edge ids, `{tag}.1` through `{tag}.4`.
    pub join_tag: String,
}

#[derive(Debug, Clone, Copy)]
pub struct DotProductSpec<'a> {
    pub g: &'a Multigraph,
    pub h: &'a Multigraph,
    pub splice: &'a DotSplice,
}

fn sorted_pair(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

fn check_removed_edge(g: &Multigraph, id: &EdgeId, a: &str, b: &str) -> Result<usize> {
    let e = g
        .edge_idx(id)
        .ok_or_else(|| DotProductError::MissingEdge(id.to_string()))?;
    let (x, y) = g.edge(e).ends;
    let ends = sorted_pair(g.vertex_name(x).as_str(), g.vertex_name(y).as_str());
    if ends != sorted_pair(a, b) {
        return Err(DotProductError::EdgeEnds {
            edge: id.to_string(),
            a: a.to_string(),
            b: b.to_string(),
        }
        .into());
    }
    Ok(e)
}

fn check_neighbors(h: &Multigraph, x: usize, other: usize, listed: &[String; 2]) -> Result<()> {
    let mut actual: Vec<&str> = h
        .neighbors(x)
        .filter(|&y| y != other)
        .map(|y| h.vertex_name(y).as_str())
        .collect();
    let mut want: Vec<&str> = listed.iter().map(String::as_str).collect();
    actual.sort_unstable();
    want.sort_unstable();
    if actual != want {
        return Err(DotProductError::NeighborMismatch(h.vertex_name(x).to_string()).into());
    }
    Ok(())
}

/// `G · H`. Vertex names of `G` and `H` must be disjoint.
pub fn dot_product(spec: &DotProductSpec<'_>) -> Result<Multigraph> {
    let (g, h, s) = (spec.g, spec.h, spec.splice);
    let e1 = check_removed_edge(g, &s.e1, &s.v[0], &s.v[1])?;
    let e2 = check_removed_edge(g, &s.e2, &s.v[2], &s.v[3])?;
    let (a, b) = g.edge(e1).ends;
    if e1 == e2 || g.edge(e2).touches(a) || g.edge(e2).touches(b) {
        return Err(DotProductError::RemovedEdgesAdjacent.into());
    }
    let u = h.require_vertex(&s.u)?;
    let w = h.require_vertex(&s.w)?;
    if !h.is_adjacent(u, w) {
        return Err(DotProductError::PairNotAdjacent(s.u.clone(), s.w.clone()).into());
    }
    check_neighbors(h, u, w, &s.u_nbrs)?;
    check_neighbors(h, w, u, &s.w_nbrs)?;

    let g_prime = g.without_edges(&[e1, e2]);
    let h_prime = h.without_vertices(&[u, w]);
    let mut out = g_prime.union(&h_prime)?;
    let joins = [
        (&s.v[0], &s.u_nbrs[0]),
        (&s.v[1], &s.u_nbrs[1]),
        (&s.v[2], &s.w_nbrs[0]),
        (&s.v[3], &s.w_nbrs[1]),
    ];
    for (k, (x, y)) in joins.into_iter().enumerate() {
        let id = EdgeId::new(format!("{}.{}", s.join_tag, k + 1))?;
        let xi = out.require_vertex(x)?;
        let yi = out.require_vertex(y)?;
        out.add_edge_idx(id, xi, yi)?;
    }
    Ok(out)
}

/// `(M1, M2)`-dot-product: returns `G1 · G2` with `M = M1 ∪ M2 ∖ {xy}`.
pub fn m_dot_product(
    g1: &Multigraph,
    m1: &Matching,
    g2: &Multigraph,
    m2: &Matching,
    splice: &DotSplice,
) -> Result<(Multigraph, Matching)> {
    if !m1.is_perfect(g1) {
        return Err(DotProductError::NotPerfect("first").into());
    }
    if !m2.is_perfect(g2) {
        return Err(DotProductError::NotPerfect("second").into());
    }
    for e in [&splice.e1, &splice.e2] {
        if m1.contains(e) {
            return Err(DotProductError::RemovedEdgeInMatching(e.to_string()).into());
        }
    }
    let x = g2.require_vertex(&splice.u)?;
    let y = g2.require_vertex(&splice.w)?;
    if !g2.is_adjacent(x, y) {
        return Err(DotProductError::PairNotAdjacent(splice.u.clone(), splice.w.clone()).into());
    }
    let xy = g2
        .edges_between(x, y)
        .into_iter()
        .find(|&e| m2.contains(&g2.edge(e).id))
        .ok_or(DotProductError::PairNotInMatching)?;
    let g = dot_product(&DotProductSpec { g: g1, h: g2, splice })?;
    let mut m = Matching::new(m1.ids().cloned().chain(m2.ids().cloned()));
    m.remove(&g2.edge(xy).id);
    if !m.is_perfect(&g) {
        return Err(DotProductError::ResultNotPerfect.into());
    }
    Ok((g, m))
}
