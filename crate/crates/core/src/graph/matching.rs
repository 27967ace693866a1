use super::Multigraph;

/// Every perfect matching of `g` as a sorted list of edge indices.
///
/// Branches on the lowest uncovered vertex, so each matching is produced once.
/// Parallel edges give distinct matchings.
pub fn perfect_matchings(g: &Multigraph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if g.vertex_count() % 2 == 1 {
        return out;
    }
    let mut covered = vec![false; g.vertex_count()];
    let mut chosen = Vec::new();
    enumerate(g, &mut covered, &mut chosen, &mut out);
    out
}

fn enumerate(g: &Multigraph, covered: &mut [bool], chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let Some(v) = covered.iter().position(|&c| !c) else {
        let mut m = chosen.clone();
        m.sort_unstable();
        out.push(m);
        return;
    };
    covered[v] = true;
    for &e in g.incident(v) {
        let w = g.edge(e).other(v);
        if covered[w] {
            continue;
        }
        covered[w] = true;
        chosen.push(e);
        enumerate(g, covered, chosen, out);
        chosen.pop();
        covered[w] = false;
    }
    covered[v] = false;
}

/// Perfect matching of a bipartite graph restricted to edges with `usable[e]`,
/// by augmenting paths. `left[v]` tells the side of each vertex.
pub fn bipartite_perfect_matching(g: &Multigraph, left: &[bool], usable: &[bool]) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut mate_edge: Vec<Option<usize>> = vec![None; n];
    for u in (0..n).filter(|&u| left[u]) {
        let mut seen = vec![false; n];
        if !augment(g, left, usable, u, &mut seen, &mut mate_edge) {
            return None;
        }
    }
    let mut out: Vec<usize> = (0..n)
        .filter(|&v| left[v])
        .map(|v| mate_edge[v])
        .collect::<Option<Vec<_>>>()?;
    out.sort_unstable();
    if 2 * out.len() != n {
        return None;
    }
    Some(out)
}

fn augment(
    g: &Multigraph,
    left: &[bool],
    usable: &[bool],
    u: usize,
    seen: &mut [bool],
    mate_edge: &mut [Option<usize>],
) -> bool {
    for &e in g.incident(u) {
        if !usable[e] {
            continue;
        }
        let w = g.edge(e).other(u);
        if left[w] || seen[w] {
            continue;
        }
        seen[w] = true;
        let free = match mate_edge[w] {
            None => true,
            Some(f) => augment(g, left, usable, g.edge(f).other(w), seen, mate_edge),
        };
        if free {
            mate_edge[u] = Some(e);
            mate_edge[w] = Some(e);
            return true;
        }
    }
    false
}

/// Splits a `d`-regular bipartite multigraph into `d` perfect matchings.
pub fn one_factorization_bipartite(g: &Multigraph) -> Option<Vec<Vec<usize>>> {
    let d = g.regular_degree()?;
    let sides = g.bipartition()?;
    let mut usable = vec![true; g.edge_count()];
    let mut factors = Vec::with_capacity(d);
    for _ in 0..d {
        let m = bipartite_perfect_matching(g, &sides, &usable)?;
        for &e in &m {
            usable[e] = false;
        }
        factors.push(m);
    }
    Some(factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete_bipartite, complete_graph, petersen};

    #[test]
    fn petersen_has_six_perfect_matchings() {
        // Brute force over all 5-subsets of the 15 edges.
        let p = petersen();
        let mut brute = 0;
        for mask in 0u32..(1 << 15) {
            if mask.count_ones() != 5 {
                continue;
            }
            let mut cover = 0u32;
            let mut ok = true;
            for e in 0..15 {
                if mask >> e & 1 == 1 {
                    let (a, b) = p.edge(e).ends;
                    if cover >> a & 1 == 1 || cover >> b & 1 == 1 {
                        ok = false;
                        break;
                    }
                    cover |= 1 << a | 1 << b;
                }
            }
            if ok {
                brute += 1;
            }
        }
        assert_eq!(brute, 6);
        assert_eq!(perfect_matchings(&p).len(), 6);
    }

    #[test]
    fn k4_matchings() {
        assert_eq!(perfect_matchings(&complete_graph(4).unwrap()).len(), 3);
        assert_eq!(perfect_matchings(&complete_graph(6).unwrap()).len(), 15);
    }

    #[test]
    fn koenig_factorization() {
        let k = complete_bipartite(5).unwrap();
        let f = one_factorization_bipartite(&k).unwrap();
        assert_eq!(f.len(), 5);
        let mut all: Vec<usize> = f.concat();
        all.sort_unstable();
        assert_eq!(all, (0..25).collect::<Vec<_>>());
        assert!(one_factorization_bipartite(&petersen()).is_none());
    }
}
