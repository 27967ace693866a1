//! Proper 4-colorings of `J_{2n+1} + M` for every perfect matching `M`.
//!
//! The ring of blocks is shortened by two blocks at a time until three remain,
//! the short ring is colored by search, and each removed pair of blocks is
//! colored back in from a frozen table of gadget colorings. The gadget is the
//! induced graph on blocks `i+1, i+2` with their matching copies; its boundary
//! receives color sets `S_a` at `a_{i+1}, a_{i+2}`, `S_cd` at `d_{i+1}, c_{i+2}`
//! and `S_dc` at `c_{i+1}, d_{i+2}`, which are the colors of the three edges
//! `a_i a_{i+3}`, `c_i d_{i+3}`, `c_{i+3} d_i` of the shortened ring.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use crate::families::{flower_snark, FlowerSnark};
use crate::graph::{EdgeId, Matching, Multigraph};

use super::{is_proper, try_color, Budget, ColorSearch, ColoringError, EdgeColoring, Result};

pub const FLOWER_GADGET: &str = include_str!("../../data/flower_gadget.txt");
const GADGET_HEADER: &str = "circflow-flower-gadget v1";

const INNER: [&str; 3] = ["ba", "bc", "bd"];
const LINK: [&str; 3] = ["aa", "cd", "dc"];

/// Type of a link `E_{i,i+1}` meeting the matching in one edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TransitionType {
    /// `c_i d_{i+1}`.
    X1,
    /// `c_{i+1} d_i`.
    X2,
    /// `a_i a_{i+1}`.
    X3,
}

impl TransitionType {
    fn allowed_next(self, other: TransitionType) -> bool {
        use TransitionType::*;
        matches!(
            (self, other),
            (X1, X1) | (X1, X3) | (X2, X2) | (X2, X3) | (X3, X1) | (X3, X2)
        )
    }
}

/// Index `j` with `types[j] = types[j+2]` (cyclically), or `None` if there is
/// none. The input must obey the adjacency rules of matched links.
pub fn transition_claim_check(types: &[TransitionType]) -> Result<Option<usize>> {
    let n = types.len();
    for i in 0..n {
        let (a, b) = (types[i], types[(i + 1) % n]);
        if !a.allowed_next(b) {
            return Err(ColoringError::Precondition(format!(
                "types {a:?} and {b:?} cannot be adjacent (position {i})"
            )));
        }
    }
    Ok((0..n).find(|&j| types[j] == types[(j + 2) % n]))
}

/// Matching membership per block position and per link.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Ring {
    inner: Vec<[bool; 3]>,
    link: Vec<[bool; 3]>,
}

/// Colors per edge; two entries (ascending) for matched edges.
#[derive(Debug, Clone, PartialEq, Eq)]
struct RingColoring {
    inner: Vec<[Vec<u8>; 3]>,
    link: Vec<[Vec<u8>; 3]>,
}

fn membership(fs: &FlowerSnark, m: &Matching) -> Ring {
    let order = fs.order();
    let has = |kind: &str, i: usize| m.contains(&fs.graph.edge(fs.edge(kind, i as isize)).id);
    Ring {
        inner: (0..order).map(|i| INNER.map(|k| has(k, i))).collect(),
        link: (0..order).map(|i| LINK.map(|k| has(k, i))).collect(),
    }
}

fn link_type(link: &[bool; 3]) -> Option<TransitionType> {
    match link {
        [false, true, false] => Some(TransitionType::X1),
        [false, false, true] => Some(TransitionType::X2),
        [true, false, false] => Some(TransitionType::X3),
        _ => None,
    }
}

/// Link types of `J_{2n+1}` against `m`, when every link meets `m` once.
pub fn transition_types(fs: &FlowerSnark, m: &Matching) -> Option<Vec<TransitionType>> {
    membership(fs, m).link.iter().map(link_type).collect()
}

/// Gadget table key: matching membership of the nine gadget edges
/// (`ba, bc, bd` of both blocks, then `aa, cd, dc` between them), which of the
/// boundary edges `aa, cd, dc` are matched, and the canonical boundary sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GadgetKey {
    pub edges: [bool; 9],
    pub boundary: [bool; 3],
    /// `S_a, S_cd, S_dc`, each sorted.
    pub sets: [Vec<u8>; 3],
}

fn bits(b: &[bool]) -> String {
    b.iter().map(|&x| if x { '1' } else { '0' }).collect()
}

fn digits(s: &[u8]) -> String {
    s.iter().map(|c| char::from(b'0' + c)).collect()
}

impl fmt::Display for GadgetKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {} {}",
            bits(&self.edges),
            bits(&self.boundary),
            digits(&self.sets[0]),
            digits(&self.sets[1]),
            digits(&self.sets[2])
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GadgetTable {
    /// `None` marks a boundary proven uncolorable by exhaustion.
    pub entries: BTreeMap<GadgetKey, Option<[Vec<u8>; 9]>>,
}

// Gadget vertices a1 b1 c1 d1 a2 b2 c2 d2 and edge ends in table order.
const GADGET_ENDS: [(usize, usize); 9] = [(1, 0), (1, 2), (1, 3), (5, 4), (5, 6), (5, 7), (0, 4), (2, 7), (6, 3)];

/// Boundary set index (`S_a, S_cd, S_dc`) received by each gadget vertex.
const BOUNDARY_AT: [Option<usize>; 8] = [Some(0), None, Some(2), Some(1), Some(0), None, Some(1), Some(2)];

fn covered_once(edges: &[bool; 9], boundary: &[bool; 3]) -> bool {
    (0..8).all(|v| {
        let inner = GADGET_ENDS
            .iter()
            .zip(edges)
            .filter(|(&(a, b), &m)| m && (a == v || b == v))
            .count();
        let outer = BOUNDARY_AT[v].is_some_and(|s| boundary[s]) as usize;
        inner + outer == 1
    })
}

/// First coloring in lexicographic order, parallel copies ascending.
fn solve_gadget(key: &GadgetKey) -> Option<[Vec<u8>; 9]> {
    let mut used = [0u8; 8];
    for v in 0..8 {
        if let Some(s) = BOUNDARY_AT[v] {
            for &c in &key.sets[s] {
                used[v] |= 1 << c;
            }
        }
    }
    let copies: Vec<usize> = (0..9)
        .flat_map(|e| std::iter::repeat_n(e, 1 + key.edges[e] as usize))
        .collect();
    let mut colors = vec![0u8; copies.len()];
    fn rec(i: usize, copies: &[usize], colors: &mut [u8], used: &mut [u8; 8]) -> bool {
        if i == copies.len() {
            return true;
        }
        let e = copies[i];
        let (a, b) = GADGET_ENDS[e];
        let start = if i > 0 && copies[i - 1] == e {
            colors[i - 1] + 1
        } else {
            0
        };
        for c in start..4 {
            if (used[a] | used[b]) >> c & 1 == 0 {
                used[a] |= 1 << c;
                used[b] |= 1 << c;
                colors[i] = c;
                if rec(i + 1, copies, colors, used) {
                    return true;
                }
                used[a] &= !(1 << c);
                used[b] &= !(1 << c);
            }
        }
        false
    }
    if !rec(0, &copies, &mut colors, &mut used) {
        return None;
    }
    let mut out: [Vec<u8>; 9] = Default::default();
    for (i, &e) in copies.iter().enumerate() {
        out[e].push(colors[i]);
    }
    Some(out)
}

fn permutations4() -> Vec<[u8; 4]> {
    let mut out = Vec::new();
    for a in 0..4u8 {
        for b in 0..4u8 {
            for c in 0..4u8 {
                for d in 0..4u8 {
                    let p = [a, b, c, d];
                    if (0..4).all(|x| p.contains(&x)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn apply(p: &[u8; 4], s: &[u8]) -> Vec<u8> {
    let mut v: Vec<u8> = s.iter().map(|&c| p[c as usize]).collect();
    v.sort_unstable();
    v
}

/// Least relabeling of the boundary sets, with the permutation achieving it.
fn canonical(sets: &[Vec<u8>; 3]) -> ([Vec<u8>; 3], [u8; 4]) {
    permutations4()
        .into_iter()
        .map(|p| ([apply(&p, &sets[0]), apply(&p, &sets[1]), apply(&p, &sets[2])], p))
        .min()
        .unwrap()
}

fn subsets(size: usize) -> Vec<Vec<u8>> {
    (0u8..16)
        .filter(|m| m.count_ones() as usize == size)
        .map(|m| (0..4).filter(|c| m >> c & 1 == 1).collect())
        .collect()
}

/// Recomputes every table entry by exhaustive search.
pub fn compute_gadget_table() -> GadgetTable {
    let mut table = GadgetTable::default();
    for boundary_bits in [0u8, 1, 2, 4] {
        let boundary = [boundary_bits & 1 != 0, boundary_bits & 2 != 0, boundary_bits & 4 != 0];
        for mask in 0u16..512 {
            let edges: [bool; 9] = std::array::from_fn(|e| mask >> e & 1 == 1);
            if !covered_once(&edges, &boundary) {
                continue;
            }
            for sa in subsets(1 + boundary[0] as usize) {
                for scd in subsets(1 + boundary[1] as usize) {
                    for sdc in subsets(1 + boundary[2] as usize) {
                        let (sets, _) = canonical(&[sa.clone(), scd.clone(), sdc]);
                        let key = GadgetKey { edges, boundary, sets };
                        if !table.entries.contains_key(&key) {
                            let sol = solve_gadget(&key);
                            table.entries.insert(key, sol);
                        }
                    }
                }
            }
        }
    }
    table
}

impl GadgetTable {
    pub fn to_text(&self) -> String {
        let mut out = format!("{GADGET_HEADER}\n");
        out.push_str("# edges boundary S_a S_cd S_dc : colors of ba1 bc1 bd1 ba2 bc2 bd2 aa cd dc\n");
        for (key, sol) in &self.entries {
            let rhs = match sol {
                Some(c) => c.iter().map(|x| digits(x)).collect::<Vec<_>>().join(","),
                None => "absent".to_string(),
            };
            out.push_str(&format!("{key} : {rhs}\n"));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let perr = |line: usize, m: &str| ColoringError::Parse {
            line,
            message: m.to_string(),
        };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
            .filter(|(_, l)| !l.is_empty());
        if lines.next().map(|x| x.1) != Some(GADGET_HEADER) {
            return Err(perr(1, "missing gadget header"));
        }
        let flags = |s: &str, n: usize, ln: usize| -> Result<Vec<bool>> {
            if s.len() != n || !s.chars().all(|c| c == '0' || c == '1') {
                return Err(perr(ln, "bad bit string"));
            }
            Ok(s.chars().map(|c| c == '1').collect())
        };
        let colors = |s: &str, ln: usize| -> Result<Vec<u8>> {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .filter(|&d| d < 4)
                        .map(|d| d as u8)
                        .ok_or_else(|| perr(ln, "bad color"))
                })
                .collect()
        };
        let mut table = GadgetTable::default();
        for (ln, line) in lines {
            let (lhs, rhs) = line.split_once(':').ok_or_else(|| perr(ln, "missing `:`"))?;
            let toks: Vec<&str> = lhs.split_whitespace().collect();
            let [e, b, sa, scd, sdc] = toks.as_slice() else {
                return Err(perr(ln, "expected five key fields"));
            };
            let edges: [bool; 9] = flags(e, 9, ln)?.try_into().unwrap();
            let boundary: [bool; 3] = flags(b, 3, ln)?.try_into().unwrap();
            let sets = [colors(sa, ln)?, colors(scd, ln)?, colors(sdc, ln)?];
            let sol = match rhs.trim() {
                "absent" => None,
                r => {
                    let parts = r.split(',').map(|p| colors(p, ln)).collect::<Result<Vec<_>>>()?;
                    Some(parts.try_into().map_err(|_| perr(ln, "expected nine color groups"))?)
                }
            };
            table.entries.insert(GadgetKey { edges, boundary, sets }, sol);
        }
        Ok(table)
    }

    /// Gadget colors for actual boundary sets, undoing the canonical relabeling.
    fn lookup(&self, edges: [bool; 9], boundary: [bool; 3], sets: &[Vec<u8>; 3]) -> Option<[Vec<u8>; 9]> {
        let (canon, p) = canonical(sets);
        let sol = self.entries.get(&GadgetKey {
            edges,
            boundary,
            sets: canon,
        })?;
        let mut inv = [0u8; 4];
        for (c, &pc) in p.iter().enumerate() {
            inv[pc as usize] = c as u8;
        }
        sol.as_ref().map(|s| s.clone().map(|x| apply(&inv, &x)))
    }
}

/// The frozen gadget table.
pub fn gadget_table() -> &'static GadgetTable {
    static TABLE: OnceLock<GadgetTable> = OnceLock::new();
    TABLE.get_or_init(|| GadgetTable::parse(FLOWER_GADGET).expect("bundled gadget table parses"))
}

/// Short rings (`J_3`, `J_5`) by direct search.
fn color_base(ring: &Ring) -> Result<RingColoring> {
    let order = ring.inner.len();
    let fs = flower_snark(order / 2).map_err(|e| ColoringError::Construction(e.to_string()))?;
    let g = &fs.graph;
    let mut m = Matching::default();
    for i in 0..order {
        for k in 0..3 {
            if ring.inner[i][k] {
                m.insert(g.edge(fs.edge(INNER[k], i as isize)).id.clone());
            }
            if ring.link[i][k] {
                m.insert(g.edge(fs.edge(LINK[k], i as isize)).id.clone());
            }
        }
    }
    let h = g.add_matching_copies(&m, 1)?;
    let c = match try_color(&h, 4, &Budget::unlimited())? {
        ColorSearch::Colored(c) => c,
        _ => return Err(ColoringError::Construction(format!("J_{order} + M is not 4-colorable"))),
    };
    let group = |kind: &str, i: usize| -> Vec<u8> {
        let base = g.edge(fs.edge(kind, i as isize)).id.clone();
        let mut v: Vec<u8> = h.copies_of(&base).iter().map(|&e| c.colors[e] as u8).collect();
        v.sort_unstable();
        v
    };
    Ok(RingColoring {
        inner: (0..order).map(|i| INNER.map(|k| group(k, i))).collect(),
        link: (0..order).map(|i| LINK.map(|k| group(k, i))).collect(),
    })
}

fn remove_two<T: Clone>(v: &[T], i: usize) -> Vec<T> {
    let n = v.len();
    let (p1, p2) = ((i + 1) % n, (i + 2) % n);
    v.iter()
        .enumerate()
        .filter(|(j, _)| *j != p1 && *j != p2)
        .map(|(_, x)| x.clone())
        .collect()
}

/// Position of `i` once `i+1, i+2` are removed.
fn shifted(n: usize, i: usize) -> usize {
    let (p1, p2) = ((i + 1) % n, (i + 2) % n);
    i - (p1 < i) as usize - (p2 < i) as usize
}

fn color_ring(ring: &Ring, table: &GadgetTable) -> Result<RingColoring> {
    let n = ring.inner.len();
    if n <= 5 {
        return color_base(ring);
    }
    let empty = |l: &[bool; 3]| l.iter().all(|&x| !x);
    let i = match ring.link.iter().position(empty) {
        Some(i) => i,
        None => {
            let types: Vec<TransitionType> = ring
                .link
                .iter()
                .map(link_type)
                .collect::<Option<_>>()
                .ok_or_else(|| ColoringError::Construction("a link meets the matching twice".into()))?;
            transition_claim_check(&types)?
                .ok_or_else(|| ColoringError::Construction("no j with t(j) = t(j+2)".into()))?
        }
    };
    let (p1, p2, p3) = ((i + 1) % n, (i + 2) % n, (i + 3) % n);
    if ring.link[i] != ring.link[p2] {
        return Err(ColoringError::Construction(format!("links {i} and {p2} differ")));
    }
    // Shortened ring: link i now joins i to i+3 and keeps its membership.
    let mut short = Ring {
        inner: remove_two(&ring.inner, i),
        link: remove_two(&ring.link, i),
    };
    let si = shifted(n, i);
    short.link[si] = ring.link[i];
    let sc = color_ring(&short, table)?;

    let mut inner: Vec<Option<[Vec<u8>; 3]>> = vec![None; n];
    let mut link: Vec<Option<[Vec<u8>; 3]>> = vec![None; n];
    let kept: Vec<usize> = (0..n).filter(|&j| j != p1 && j != p2).collect();
    for (s, &j) in kept.iter().enumerate() {
        inner[j] = Some(sc.inner[s].clone());
        link[j] = Some(sc.link[s].clone());
    }
    let joined = sc.link[si].clone();
    link[p2] = Some(joined.clone());
    let edges: [bool; 9] = std::array::from_fn(|e| match e {
        0..=2 => ring.inner[p1][e],
        3..=5 => ring.inner[p2][e - 3],
        _ => ring.link[p1][e - 6],
    });
    let sol = table.lookup(edges, ring.link[i], &joined).ok_or_else(|| {
        ColoringError::Construction(format!(
            "no gadget coloring for blocks {p1}, {p2} with boundary {:?} (i = {i}, i+3 = {p3})",
            joined
        ))
    })?;
    inner[p1] = Some([sol[0].clone(), sol[1].clone(), sol[2].clone()]);
    inner[p2] = Some([sol[3].clone(), sol[4].clone(), sol[5].clone()]);
    link[p1] = Some([sol[6].clone(), sol[7].clone(), sol[8].clone()]);
    Ok(RingColoring {
        inner: inner.into_iter().map(Option::unwrap).collect(),
        link: link.into_iter().map(Option::unwrap).collect(),
    })
}

/// A proper 4-coloring of `J_{2n+1} + m`, re-verified before returning.
///
/// Returns the multigraph `J_{2n+1} + m` with the coloring.
pub fn flower_plus_m_coloring(n: usize, m: &Matching) -> Result<(Multigraph, EdgeColoring)> {
    let fs = flower_snark(n).map_err(|e| ColoringError::Precondition(e.to_string()))?;
    let g = &fs.graph;
    if !m.is_perfect(g) {
        return Err(ColoringError::Precondition("matching is not perfect".into()));
    }
    let ring = membership(&fs, m);
    let rc = color_ring(&ring, gadget_table())?;
    let h = g.add_matching_copies(m, 1)?;
    let mut colors = vec![u32::MAX; h.edge_count()];
    let mut put = |kind: &str, i: usize, group: &[u8]| {
        let base: EdgeId = g.edge(fs.edge(kind, i as isize)).id.clone();
        for (&e, &c) in h.copies_of(&base).iter().zip(group) {
            colors[e] = c as u32;
        }
    };
    for i in 0..fs.order() {
        for k in 0..3 {
            put(INNER[k], i, &rc.inner[i][k]);
            put(LINK[k], i, &rc.link[i][k]);
        }
    }
    let c = EdgeColoring::proper(4, colors);
    if let Some(v) = is_proper(&h, &c)? {
        return Err(ColoringError::Construction(format!("flower coloring is improper: {v}")));
    }
    Ok((h, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::perfect_matchings;
    use TransitionType::*;

    #[test]
    fn claim_examples() {
        assert_eq!(transition_claim_check(&[X1, X1, X1]).unwrap(), Some(0));
        assert_eq!(transition_claim_check(&[X1, X3, X2, X3, X1]).unwrap(), Some(1));
        assert!(transition_claim_check(&[X1, X2, X3]).is_err());
    }

    #[test]
    fn gadget_table_is_current() {
        let fresh = compute_gadget_table();
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/flower_gadget.txt");
        if std::env::var("CIRCFLOW_REGEN").is_ok() {
            std::fs::write(path, fresh.to_text()).unwrap();
        }
        assert_eq!(*gadget_table(), fresh);
    }

    #[test]
    fn j3_plus_m_is_class1_for_two_matchings_only() {
        let fs = flower_snark(1).unwrap();
        let pms = perfect_matchings(&fs.graph);
        let ok = pms
            .iter()
            .filter(|pm| flower_plus_m_coloring(1, &Matching::from_indices(&fs.graph, pm)).is_ok())
            .count();
        assert_eq!((pms.len(), ok), (8, 2));
    }

    #[test]
    fn all_matchings_of_j5_and_j7() {
        for n in [2, 3] {
            let fs = flower_snark(n).unwrap();
            for pm in perfect_matchings(&fs.graph) {
                let m = Matching::from_indices(&fs.graph, &pm);
                let (h, c) = flower_plus_m_coloring(n, &m).unwrap();
                assert_eq!(is_proper(&h, &c).unwrap(), None);
            }
        }
    }
}
