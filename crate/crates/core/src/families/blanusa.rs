//! The Blanuša seed graph `G_1` and the chain `G_{n+1} = G_n · G_1`.
//!
//! `G_1` is stored as the splice data of a dot product of two Petersen graphs
//! plus a renaming onto the roles `x0 … x8`, `y0`, `y1` and `r0 …`. Its edge
//! ids are `a-b` with `a < b`. The seed also carries the integer 4-flow with
//! one zero edge, the two circuits and the bypass path used by the flow
//! construction, all found by the search in the flows module.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::graph::{EdgeId, Matching, Multigraph};

use super::{m_dot_product, petersen, DotSplice, FamilyError, Result};

pub const BLANUSA_SEED: &str = include_str!("../../data/blanusa_seed.txt");

const SEED_HEADER: &str = "circflow-blanusa-seed v1";

/// How `G_1` was obtained from two Petersen graphs `P@1`, `P@2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedProvenance {
    pub splice: DotSplice,
    pub n1: Matching,
    pub n2: Matching,
    /// Dot-product vertex name to role name.
    pub rename: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlanusaSeed {
    pub provenance: SeedProvenance,
    pub graph: Multigraph,
    pub matching: Matching,
    /// `(tail, head, value)` per edge index of `graph`.
    pub flow: Vec<(usize, usize, i64)>,
    /// `C1` (edge-disjoint from `x4 … x8`) and `C2` (the circuit `x0 … x8`),
    /// as closed vertex sequences directed along the flow.
    pub circuits: [Vec<String>; 2],
    /// The directed path `x2 x3 … x8` other than `C2`'s, sharing only `x2x3`.
    pub bypass: Vec<String>,
    pub descriptor: String,
}

/// Edge id of the role-named seed edge between `a` and `b`.
pub fn seed_edge_id(a: &str, b: &str) -> EdgeId {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    EdgeId::new(format!("{a}-{b}")).expect("role names are valid")
}

/// The `(N1, N2)`-dot-product of two tagged Petersen graphs, before renaming.
pub fn realize_dot_product(p: &SeedProvenance) -> Result<(Multigraph, Matching)> {
    let (g1, g2) = (petersen().tagged("1"), petersen().tagged("2"));
    m_dot_product(&g1, &p.n1, &g2, &p.n2, &p.splice)
}

/// Renames vertices onto roles and edges onto `a-b` ids.
pub fn apply_rename(g: &Multigraph, m: &Matching, rename: &[(String, String)]) -> Result<(Multigraph, Matching)> {
    let map: HashMap<&str, &str> = rename.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    if map.len() != g.vertex_count() {
        return Err(FamilyError::Seed("renaming must cover every vertex".into()));
    }
    let mut out = Multigraph::new();
    let mut order: Vec<usize> = g.vertices().collect();
    let role = |v: usize| -> Result<&str> {
        map.get(g.vertex_name(v).as_str())
            .copied()
            .ok_or_else(|| FamilyError::Seed(format!("no role for `{}`", g.vertex_name(v))))
    };
    let mut keyed = Vec::new();
    for &v in &order {
        keyed.push((role_key(role(v)?), v));
    }
    keyed.sort();
    order = keyed.into_iter().map(|(_, v)| v).collect();
    let mut new_idx = vec![0; g.vertex_count()];
    for &v in &order {
        new_idx[v] = out.add_vertex(role(v)?)?;
    }
    let mut edges: Vec<(EdgeId, usize, usize)> = Vec::new();
    let mut new_m = Matching::default();
    for e in g.edges() {
        let (a, b) = (role(e.ends.0)?, role(e.ends.1)?);
        let id = seed_edge_id(a, b);
        if m.contains(&e.id) {
            new_m.insert(id.clone());
        }
        let (u, v) = (new_idx[e.ends.0], new_idx[e.ends.1]);
        edges.push((id, u.min(v), u.max(v)));
    }
    edges.sort();
    for (id, u, v) in edges {
        out.add_edge_idx(id, u, v)?;
    }
    Ok((out, new_m))
}

/// Sort key placing `x0 … x8`, then `y0, y1`, then `r0 …`.
fn role_key(name: &str) -> (u8, usize, String) {
    let rank = match name.chars().next() {
        Some('x') => 0,
        Some('y') => 1,
        _ => 2,
    };
    let num = name[1..].parse().unwrap_or(usize::MAX);
    (rank, num, name.to_string())
}

fn seed_err(line: usize, msg: impl Into<String>) -> FamilyError {
    FamilyError::Seed(format!("line {line}: {}", msg.into()))
}

fn parse_list(s: &str) -> Vec<String> {
    s.split(',').filter(|x| !x.is_empty()).map(str::to_string).collect()
}

fn parse_ids(s: &str, line: usize) -> Result<Matching> {
    let ids = parse_list(s)
        .iter()
        .map(|x| EdgeId::parse(x).map_err(|e| seed_err(line, e.to_string())))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matching::new(ids))
}

impl BlanusaSeed {
    /// Builds the seed from its provenance and role-named flow data.
    pub fn from_parts(
        provenance: SeedProvenance,
        flow: &[(String, String, i64)],
        circuits: [Vec<String>; 2],
        bypass: Vec<String>,
        descriptor: String,
    ) -> Result<Self> {
        let (dot, m) = realize_dot_product(&provenance)?;
        let (graph, matching) = apply_rename(&dot, &m, &provenance.rename)?;
        let mut arcs: Vec<Option<(usize, usize, i64)>> = vec![None; graph.edge_count()];
        for (tail, head, value) in flow {
            let (u, v) = (graph.require_vertex(tail)?, graph.require_vertex(head)?);
            let e = graph
                .edge_idx(&seed_edge_id(tail, head))
                .ok_or_else(|| FamilyError::Seed(format!("no edge {tail}-{head}")))?;
            if arcs[e].replace((u, v, *value)).is_some() {
                return Err(FamilyError::Seed(format!("edge {tail}-{head} listed twice")));
            }
        }
        let flow = arcs
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| FamilyError::Seed("flow does not cover every edge".into()))?;
        let seed = BlanusaSeed {
            provenance,
            graph,
            matching,
            flow,
            circuits,
            bypass,
            descriptor,
        };
        seed.check_shape()?;
        Ok(seed)
    }

    /// Cheap structural checks; the flow-level properties are verified in the
    /// flows module.
    fn check_shape(&self) -> Result<()> {
        let g = &self.graph;
        if g.vertex_count() != 18 || g.regular_degree() != Some(3) {
            return Err(FamilyError::Seed("G1 must be cubic on 18 vertices".into()));
        }
        for name in ["x0", "x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8", "y0", "y1"] {
            g.require_vertex(name)?;
        }
        let mut balance = vec![0i64; g.vertex_count()];
        for &(t, h, val) in &self.flow {
            balance[t] -= val;
            balance[h] += val;
        }
        if let Some(v) = balance.iter().position(|&b| b != 0) {
            return Err(FamilyError::Seed(format!(
                "flow not conserved at `{}`",
                g.vertex_name(v)
            )));
        }
        if !self.matching.is_perfect(g) {
            return Err(FamilyError::Seed("M1 is not a perfect matching".into()));
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        match lines.next() {
            Some((_, SEED_HEADER)) => {}
            _ => return Err(FamilyError::Seed(format!("missing header `{SEED_HEADER}`"))),
        }
        let mut splice = None;
        let (mut n1, mut n2) = (None, None);
        let mut rename = Vec::new();
        let mut flow = Vec::new();
        let mut circuits: Vec<Vec<String>> = Vec::new();
        let mut bypass = None;
        let mut matching = None;
        let mut descriptor = String::new();
        for (ln, line) in lines {
            let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
            let toks: Vec<&str> = rest.split_whitespace().collect();
            match key {
                "splice" => {
                    let kv: HashMap<&str, &str> = toks.iter().filter_map(|t| t.split_once('=')).collect();
                    let get = |k: &str| {
                        kv.get(k)
                            .copied()
                            .ok_or_else(|| seed_err(ln, format!("splice needs `{k}=`")))
                    };
                    let pair = |k: &str| -> Result<[String; 2]> {
                        let v = parse_list(get(k)?);
                        <[String; 2]>::try_from(v).map_err(|_| seed_err(ln, format!("`{k}` needs two names")))
                    };
                    let v = parse_list(get("v")?);
                    let v = <[String; 4]>::try_from(v).map_err(|_| seed_err(ln, "`v` needs four names"))?;
                    splice = Some(DotSplice {
                        e1: EdgeId::parse(get("e1")?)?,
                        e2: EdgeId::parse(get("e2")?)?,
                        v,
                        u: get("u")?.to_string(),
                        w: get("w")?.to_string(),
                        u_nbrs: pair("un")?,
                        w_nbrs: pair("wn")?,
                        join_tag: get("tag")?.to_string(),
                    });
                }
                "n1" => n1 = Some(parse_ids(rest.trim(), ln)?),
                "n2" => n2 = Some(parse_ids(rest.trim(), ln)?),
                "rename" if toks.len() == 2 => rename.push((toks[0].to_string(), toks[1].to_string())),
                "arc" if toks.len() == 3 => {
                    let value = toks[2].parse().map_err(|_| seed_err(ln, "bad flow value"))?;
                    flow.push((toks[0].to_string(), toks[1].to_string(), value));
                }
                "circuit" => circuits.push(toks.iter().map(|s| s.to_string()).collect()),
                "bypass" => bypass = Some(toks.iter().map(|s| s.to_string()).collect()),
                "matching" => matching = Some(parse_ids(rest.trim(), ln)?),
                "descriptor" => descriptor = rest.trim().to_string(),
                _ => return Err(seed_err(ln, format!("unrecognised line `{line}`"))),
            }
        }
        let provenance = SeedProvenance {
            splice: splice.ok_or_else(|| FamilyError::Seed("missing splice".into()))?,
            n1: n1.ok_or_else(|| FamilyError::Seed("missing n1".into()))?,
            n2: n2.ok_or_else(|| FamilyError::Seed("missing n2".into()))?,
            rename,
        };
        let circuits =
            <[Vec<String>; 2]>::try_from(circuits).map_err(|_| FamilyError::Seed("expected two circuits".into()))?;
        let bypass = bypass.ok_or_else(|| FamilyError::Seed("missing bypass".into()))?;
        let seed = Self::from_parts(provenance, &flow, circuits, bypass, descriptor)?;
        if let Some(m) = matching {
            if m != seed.matching {
                return Err(FamilyError::Seed("stored M1 differs from N1 ∪ N2 ∖ {x'y'}".into()));
            }
        }
        Ok(seed)
    }

    pub fn to_text(&self) -> String {
        let p = &self.provenance;
        let s = &p.splice;
        let ids = |m: &Matching| m.ids().map(|e| e.to_string()).collect::<Vec<_>>().join(",");
        let mut out = format!("{SEED_HEADER}\n");
        out.push_str("# G1 as an (N1,N2)-dot-product of Petersen graphs P@1 and P@2\n");
        out.push_str(&format!(
            "splice e1={} e2={} v={} u={} w={} un={} wn={} tag={}\n",
            s.e1,
            s.e2,
            s.v.join(","),
            s.u,
            s.w,
            s.u_nbrs.join(","),
            s.w_nbrs.join(","),
            s.join_tag
        ));
        out.push_str(&format!("n1 {}\n", ids(&p.n1)));
        out.push_str(&format!("n2 {}\n", ids(&p.n2)));
        for (a, b) in &p.rename {
            out.push_str(&format!("rename {a} {b}\n"));
        }
        out.push_str("# integer 4-flow: edge tail head value\n");
        for &(t, h, val) in &self.flow {
            out.push_str(&format!(
                "arc {} {} {}\n",
                self.graph.vertex_name(t),
                self.graph.vertex_name(h),
                val
            ));
        }
        for c in &self.circuits {
            out.push_str(&format!("circuit {}\n", c.join(" ")));
        }
        out.push_str(&format!("bypass {}\n", self.bypass.join(" ")));
        out.push_str(&format!("matching {}\n", ids(&self.matching)));
        out.push_str(&format!("descriptor {}\n", self.descriptor));
        out
    }

    /// The committed seed, parsed once.
    pub fn golden() -> Result<&'static BlanusaSeed> {
        static SEED: OnceLock<Result<BlanusaSeed>> = OnceLock::new();
        SEED.get_or_init(|| BlanusaSeed::parse(BLANUSA_SEED))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn vertex(&self, role: &str) -> usize {
        self.graph.vertex_idx(role).expect("seed role")
    }

    pub fn edge(&self, a: &str, b: &str) -> usize {
        self.graph.edge_idx(&seed_edge_id(a, b)).expect("seed edge")
    }
}

/// `G_n` with its perfect matching `M_n`. Vertex `v` of copy `k` is `v@k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlanusaChain {
    pub n: usize,
    pub graph: Multigraph,
    pub matching: Matching,
}

impl BlanusaChain {
    pub fn vertex_name(role: &str, copy: usize) -> String {
        format!("{role}@{copy}")
    }

    pub fn vertex(&self, role: &str, copy: usize) -> usize {
        self.graph
            .vertex_idx(&Self::vertex_name(role, copy))
            .expect("chain vertex")
    }

    /// Id of the seed edge `ab` inside copy `k`.
    pub fn copy_edge_id(a: &str, b: &str, copy: usize) -> EdgeId {
        let base = seed_edge_id(a, b);
        EdgeId::new(format!("{}@{copy}", base)).unwrap()
    }

    /// Id of the `j`-th splice edge between copies `k` and `k + 1`:
    /// `x4^k x8`, `x5^k y0`, `x7^k y1`, `x8^k x2` for `j = 1..=4`.
    pub fn splice_edge_id(k: usize, j: usize) -> EdgeId {
        EdgeId::new(format!("s[{k}].{j}")).unwrap()
    }

    pub const SPLICES: [(&'static str, &'static str); 4] = [("x4", "x8"), ("x5", "y0"), ("x7", "y1"), ("x8", "x2")];
}

pub fn blanusa_chain(n: usize) -> Result<BlanusaChain> {
    if n < 1 {
        return Err(FamilyError::InvalidParameter(format!(
            "blanusa chain needs n >= 1, got {n}"
        )));
    }
    let seed = BlanusaSeed::golden()?;
    build_chain(seed, n)
}

pub fn build_chain(seed: &BlanusaSeed, n: usize) -> Result<BlanusaChain> {
    let mut g = seed.graph.tagged("1");
    let mut m = seed.matching.tagged("1");
    let h_prime = seed.graph.without_vertices(&[seed.vertex("x0"), seed.vertex("x1")]);
    let zero = seed_edge_id("x0", "x1");
    let mut inner = seed.matching.clone();
    inner.remove(&zero);
    for k in 2..=n {
        let prev = k - 1;
        let drop: Vec<usize> = [("x4", "x5"), ("x7", "x8")]
            .iter()
            .map(|&(a, b)| g.edge_idx(&BlanusaChain::copy_edge_id(a, b, prev)).unwrap())
            .collect();
        g = g.without_edges(&drop).union(&h_prime.tagged(&k.to_string()))?;
        for (j, (a, b)) in BlanusaChain::SPLICES.iter().enumerate() {
            let u = g.require_vertex(&BlanusaChain::vertex_name(a, prev))?;
            let v = g.require_vertex(&BlanusaChain::vertex_name(b, k))?;
            g.add_edge_idx(BlanusaChain::splice_edge_id(prev, j + 1), u, v)?;
        }
        for id in inner.tagged(&k.to_string()).ids() {
            m.insert(id.clone());
        }
    }
    if !m.is_perfect(&g) {
        return Err(FamilyError::Seed("chain matching is not perfect".into()));
    }
    Ok(BlanusaChain {
        n,
        graph: g,
        matching: m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_seed_parses_and_round_trips() {
        let seed = BlanusaSeed::golden().unwrap();
        assert_eq!(BlanusaSeed::parse(&seed.to_text()).unwrap(), *seed);
        assert!(seed.graph.is_bridgeless());
        assert!(seed.matching.contains(&seed_edge_id("x0", "x1")));
        assert!(!seed.matching.contains(&seed_edge_id("x4", "x5")));
        assert!(!seed.matching.contains(&seed_edge_id("x7", "x8")));
    }

    #[test]
    fn chain_sizes() {
        for n in 1..=4 {
            let c = blanusa_chain(n).unwrap();
            assert_eq!(c.graph.vertex_count(), 18 + 16 * (n - 1));
            assert_eq!(c.graph.regular_degree(), Some(3));
            assert!(c.matching.is_perfect(&c.graph));
            assert!(c.graph.is_bridgeless());
            for (a, b) in [("x4", "x5"), ("x7", "x8")] {
                assert!(!c.matching.contains(&BlanusaChain::copy_edge_id(a, b, n)));
            }
        }
        assert!(blanusa_chain(0).is_err());
    }

    #[test]
    fn chain_copies_match_seed() {
        let seed = BlanusaSeed::golden().unwrap();
        let c = blanusa_chain(3).unwrap();
        let h_prime = seed.graph.without_vertices(&[seed.vertex("x0"), seed.vertex("x1")]);
        let x45 = h_prime.edge_idx(&seed_edge_id("x4", "x5")).unwrap();
        let x78 = h_prime.edge_idx(&seed_edge_id("x7", "x8")).unwrap();
        for k in 2..=3 {
            let keep: Vec<usize> = c
                .graph
                .vertices()
                .filter(|&v| c.graph.vertex_name(v).as_str().ends_with(&format!("@{k}")))
                .collect();
            let induced = c.graph.induced(&keep);
            let expect = if k < 3 {
                h_prime.without_edges(&[x45, x78])
            } else {
                h_prime.clone()
            };
            assert_eq!(induced, expect.tagged(&k.to_string()));
        }
    }
}
