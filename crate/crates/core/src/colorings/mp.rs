//! The `(4p+1)`-colorings of `M_p′` (every vertex sees every color an odd
//! number of times) and of `M̃_p` (proper), for `p = 2t + 1`.
//!
//! Inside copy `i`, `K_{4p}` on `Z_{8t+3} ∪ {∞}` is colored by the cyclic
//! 1-factorization `M_j = M_0 + j`. The six-circuits through the triangles and
//! the circuit `C` through the junction neighbours are recolored with the two
//! new colors `8t+3, 8t+4`; the freed colors go to the triangle edges and to
//! the spokes. A per-copy palette permutation then aligns the spoke colors at
//! the junctions, and the junction and hub edges are colored by index.

use std::collections::{BTreeSet, HashMap};

use crate::families::{mp_graph, MpLayout, MpStage};
use crate::graph::{EdgeId, Multigraph};

use super::{is_proper, sees_odd_violation, ColoringError, ColoringMode, EdgeColoring, Result};

/// A vertex of `K_{4p}`: a residue mod `8t+3`, or `None` for `∞`.
pub type Label = Option<usize>;

/// `M_j = {j∞} ∪ {(j+i, j-i) : i = 1 … 4t+1}` for `j ∈ Z_{8t+3}`.
pub fn k4p_one_factorization(t: usize) -> Result<Vec<Vec<(Label, Label)>>> {
    if t < 1 {
        return Err(ColoringError::Precondition("t must be at least 1".into()));
    }
    let n = 8 * t + 3;
    Ok((0..n)
        .map(|j| {
            let mut m = vec![(Some(j), None)];
            for i in 1..=(n - 1) / 2 {
                m.push((Some((j + i) % n), Some((j + n - i) % n)));
            }
            m
        })
        .collect())
}

/// Color of the `K_{4p}` edge `xy` in the cyclic factorization.
fn factor_color(x: Label, y: Label, n: usize) -> u32 {
    let inv2 = n.div_ceil(2);
    (match (x, y) {
        (Some(a), None) | (None, Some(a)) => a,
        (Some(a), Some(b)) => (a + b) * inv2 % n,
        (None, None) => unreachable!("loop at infinity"),
    }) as u32
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MpColoring {
    pub p: usize,
    pub graph: Multigraph,
    pub coloring: EdgeColoring,
    /// Palette permutation applied to copy `i` (index `i - 1`).
    pub permutations: Vec<Vec<u32>>,
}

fn id(s: String) -> EdgeId {
    EdgeId::new(s).expect("generated id")
}

struct CopyColoring {
    /// Colors before the copy's palette permutation, keyed by edge id.
    raw: HashMap<EdgeId, u32>,
    /// Colors of the circuit `C`, which both junctions receive.
    spoke_set: BTreeSet<u32>,
}

/// Steps (a) to (c) inside copy `i`.
fn color_copy(layout: &MpLayout, i: usize) -> Result<CopyColoring> {
    let p = layout.p;
    let t = layout.t();
    let n = layout.modulus();
    let (new1, new2) = (n as u32, n as u32 + 1);
    let neg = |x: usize| (n - x % n) % n;
    let idx = |l: Label| layout.index_of_label(l);
    let kedge = |a: usize, b: usize| id(format!("k[{},{}]@{i}", a.min(b), a.max(b)));
    let mut raw: HashMap<EdgeId, u32> = HashMap::new();
    for a in 1..=4 * p {
        for b in a + 1..=4 * p {
            raw.insert(kedge(a, b), factor_color(layout.label(a), layout.label(b), n));
        }
    }
    // Six-circuits A, -A, B, -C, C, -B through each pair of triangles.
    let mut freed: HashMap<usize, Vec<u32>> = HashMap::new();
    for j in (0..t).map(|j| 3 * j) {
        let (a, b, c) = (t + 2 + j, t + 3 + j, t + 4 + j);
        let walk = [a, neg(a), b, neg(c), c, neg(b)].map(|l| idx(Some(l)));
        for s in 0..6 {
            let (u, v) = (walk[s], walk[(s + 1) % 6]);
            let e = kedge(u, v);
            let old = raw[&e];
            freed.entry(u).or_default().push(old);
            freed.entry(v).or_default().push(old);
            raw.insert(e, if s % 2 == 0 { new1 } else { new2 });
        }
    }
    for tri in layout.triangles() {
        for (x, y) in [(tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])] {
            let common: Vec<u32> = freed[&x].iter().filter(|c| freed[&y].contains(c)).copied().collect();
            let [c] = common.as_slice() else {
                return Err(ColoringError::Construction(format!(
                    "triangle edge t[{x},{y}]@{i} has freed colors {common:?}"
                )));
            };
            raw.insert(id(format!("t[{x},{y}]@{i}")), *c);
        }
    }
    // C = 0, 1, …, t+1, ∞, -(t+1), …, -1.
    let mut circuit: Vec<Label> = (0..=t + 1).map(Some).collect();
    circuit.push(None);
    circuit.extend((1..=t + 1).rev().map(|x| Some(neg(x))));
    let cv: Vec<usize> = circuit.iter().map(|&l| idx(l)).collect();
    let len = cv.len();
    let mut forward = vec![0u32; len];
    for s in 0..len {
        let e = kedge(cv[s], cv[(s + 1) % len]);
        forward[s] = raw[&e];
        raw.insert(e, if s % 2 == 0 { new1 } else { new2 });
    }
    let spoke_set: BTreeSet<u32> = forward.iter().copied().collect();
    if spoke_set.len() != len {
        return Err(ColoringError::Construction(format!(
            "circuit C in copy {i} repeats a color"
        )));
    }
    // Each vertex of C sends its forward color to c_i and its backward one to c_{i+1}.
    for s in 0..len {
        let k = cv[s];
        let back = forward[(s + len - 1) % len];
        let (to1, to2) = if k == 4 * p {
            (format!("xz1.1@{i}"), format!("xz2.1@{i}"))
        } else {
            (format!("z1[{k}]@{i}"), format!("z2[{k}]@{i}"))
        };
        raw.insert(id(to1), forward[s]);
        raw.insert(id(to2), back);
    }
    Ok(CopyColoring { raw, spoke_set })
}

/// Permutation of `0..palette` sending `from` onto `to` and the complements
/// onto each other, both in ascending order.
fn aligning_permutation(from: &BTreeSet<u32>, to: &BTreeSet<u32>, palette: u32) -> Vec<u32> {
    let mut perm = vec![0u32; palette as usize];
    for (a, b) in from.iter().zip(to) {
        perm[*a as usize] = *b;
    }
    let rest_from = (0..palette).filter(|c| !from.contains(c));
    let rest_to: Vec<u32> = (0..palette).filter(|c| !to.contains(c)).collect();
    for (a, b) in rest_from.zip(rest_to) {
        perm[a as usize] = b;
    }
    perm
}

/// The sees-odd `(4p+1)`-coloring of `M_p′`, `p = 2t + 1`, verified.
pub fn mp_prime_coloring(t: usize) -> Result<MpColoring> {
    if t < 1 {
        return Err(ColoringError::Precondition("t must be at least 1".into()));
    }
    let p = 2 * t + 1;
    let fam = mp_graph(p, MpStage::Prime).map_err(|e| ColoringError::Construction(e.to_string()))?;
    let (g, layout) = (fam.graph, fam.layout);
    let q = layout.copies();
    let palette = q as u32;
    let modp = |x: usize| (x % q) as u32;
    let mut colors = vec![u32::MAX; g.edge_count()];
    let mut permutations = Vec::with_capacity(q);
    for i in 1..=q {
        let cc = color_copy(&layout, i)?;
        let target: BTreeSet<u32> = (0..2 * t + 4).map(|j| modp(i + 2 * j + 1)).collect();
        let perm = aligning_permutation(&cc.spoke_set, &target, palette);
        for (eid, c) in &cc.raw {
            let e = g
                .edge_idx(eid)
                .ok_or_else(|| ColoringError::Construction(format!("missing edge `{eid}`")))?;
            colors[e] = perm[*c as usize];
        }
        permutations.push(perm);
        // p - 2 parallel edges c_i c_{i+1}, in id order.
        let a = g.require_vertex(&layout.junction(i))?;
        let b = g.require_vertex(&layout.junction(i + 1))?;
        let mut par = g.edges_between(a, b);
        par.sort_by(|x, y| g.edge(*x).id.cmp(&g.edge(*y).id));
        for (r, &e) in par.iter().enumerate() {
            colors[e] = modp(i + 4 * t + 8 + 2 * r);
        }
        let hub = g.require_edge(&format!("h[{i}]"))?;
        colors[hub] = modp(i + 4 * t + 7);
    }
    if let Some(e) = colors.iter().position(|&c| c == u32::MAX) {
        return Err(ColoringError::Construction(format!(
            "edge `{}` left uncolored",
            g.edge(e).id
        )));
    }
    let coloring = EdgeColoring {
        palette: q,
        mode: ColoringMode::SeesOdd,
        colors,
    };
    if let Some(v) = sees_odd_violation(&g, &coloring)? {
        return Err(ColoringError::Construction(format!("M_p' coloring fails: {v}")));
    }
    Ok(MpColoring {
        p,
        graph: g,
        coloring,
        permutations,
    })
}

/// `M̃_p` with its proper `(4p+1)`-coloring.
///
/// Each `c_i` splits into a vertex seeing every color once and a divalent
/// vertex on the two non-hub edges of the thrice-seen color; the divalent
/// vertices are then suppressed.
pub fn mp_tilde_coloring(t: usize) -> Result<(Multigraph, EdgeColoring)> {
    let mc = mp_prime_coloring(t)?;
    let layout = MpLayout { p: mc.p };
    let q = layout.copies();
    let mut g = mc.graph.clone();
    let color_of: HashMap<EdgeId, u32> = mc
        .graph
        .edges()
        .iter()
        .zip(&mc.coloring.colors)
        .map(|(e, &c)| (e.id.clone(), c))
        .collect();
    for i in 1..=q {
        let name = layout.junction(i);
        let v = g.require_vertex(&name)?;
        let thrice = ((i + 4 * t + 7) % q) as u32;
        let hub = id(format!("h[{i}]"));
        let side = format!("{name}.s");
        let mut replacement = Multigraph::new();
        replacement.add_vertex(name.clone())?;
        replacement.add_vertex(side.clone())?;
        let mut attach = HashMap::new();
        let mut routed = 0;
        for &e in g.incident(v) {
            let eid = g.edge(e).id.clone();
            let to = if color_of[&eid] == thrice && eid != hub {
                routed += 1;
                side.clone()
            } else {
                name.clone()
            };
            attach.insert(eid, to);
        }
        if routed != 2 {
            return Err(ColoringError::Construction(format!(
                "`{name}` has {routed} extra edges of color {thrice}"
            )));
        }
        g = g.expand_vertex(&name, &replacement, &attach)?;
    }
    let g = g.suppress_divalent()?;
    let colors: Vec<u32> = g.edges().iter().map(|e| color_of[&e.id]).collect();
    let coloring = EdgeColoring::proper(q, colors);
    if let Some(v) = is_proper(&g, &coloring)? {
        return Err(ColoringError::Construction(format!("M̃_p coloring is improper: {v}")));
    }
    if g.regular_degree() != Some(q) {
        return Err(ColoringError::Construction("M̃_p is not regular".into()));
    }
    Ok((g, coloring))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_t1() {
        let f = k4p_one_factorization(1).unwrap();
        assert_eq!(f.len(), 11);
        let m0: BTreeSet<_> = f[0].iter().copied().collect();
        let want: BTreeSet<(Label, Label)> = [
            (0, None),
            (1, Some(10)),
            (2, Some(9)),
            (3, Some(8)),
            (4, Some(7)),
            (5, Some(6)),
        ]
        .into_iter()
        .map(|(a, b)| (Some(a), b))
        .collect();
        assert_eq!(m0, want);
        assert!(f[1].contains(&(Some(1), None)) && f[1].contains(&(Some(2), Some(0))));
        let mut all: Vec<(Label, Label)> = f.iter().flatten().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 66);
    }

    #[test]
    fn factor_colors_match_matchings() {
        for t in 1..=3 {
            let n = 8 * t + 3;
            for (j, m) in k4p_one_factorization(t).unwrap().iter().enumerate() {
                for &(a, b) in m {
                    assert_eq!(factor_color(a, b, n), j as u32);
                }
            }
        }
    }

    #[test]
    fn prime_t1_sees_odd() {
        let mc = mp_prime_coloring(1).unwrap();
        assert_eq!(mc.coloring.palette, 13);
        let g = &mc.graph;
        let w = g.require_vertex("w").unwrap();
        let seen: BTreeSet<u32> = mc.coloring.seen(g, w).into_iter().collect();
        assert_eq!(seen.len(), 13);
        for i in 1..=13 {
            let c = g.require_vertex(&format!("c[{i}]")).unwrap();
            assert_eq!(g.degree(c), 15);
            let thrice = ((i + 11) % 13) as u32;
            let seen = mc.coloring.seen(g, c);
            assert_eq!(seen.iter().filter(|&&x| x == thrice).count(), 3);
        }
    }

    #[test]
    fn tilde_t1_proper() {
        let (g, c) = mp_tilde_coloring(1).unwrap();
        assert_eq!(g.regular_degree(), Some(13));
        assert_eq!(c.used_colors(), 13);
        assert_eq!(is_proper(&g, &c).unwrap(), None);
    }
}
