//! The `M`-class property of `G + (2t-2)M` and its transfer through dot
//! products along the 4-edge-cut of the joins.
//!
//! Take `H = G + (2t-2)M` for `G = G1 · G2` and the cut `C = {a1, a2, a3, a4}`
//! of the joins at `v1, v2, v3, v4`. In a `(2t+1)`-coloring of `H`, the Parity
//! Lemma leaves two patterns on `C`: `c(a1) = c(a2)` and `c(a3) = c(a4)`,
//! which restores `e1, e2` and colors `H1`; or `{c(a3), c(a4)} = {c(a1), c(a2)}`,
//! which restores `x, y` and colors `H2`. So class 2 for `H1` and `H2` forces
//! class 2 for `H`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::certificates::{
    join_list, matching_ids, parse_graph_text, parse_matching, reverify, split_list, CertError, Certificate, ClaimKind,
    DotCutRecord, Part, Reverification, Verdict, Witness,
};
use crate::families::{build_chain, m_dot_product, petersen, BlanusaChain, BlanusaSeed, DotSplice};
use crate::graph::{write_graph, EdgeId, Matching, Multigraph};

use super::{is_proper, parse_coloring, replay_refutation, try_color, write_coloring};
use super::{Budget, ColorSearch, ColoringError, EdgeColoring, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassWhich {
    Class1,
    Class2,
}

impl ClassWhich {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassWhich::Class1 => "class-1",
            ClassWhich::Class2 => "class-2",
        }
    }

    fn opposite(self) -> Self {
        match self {
            ClassWhich::Class1 => ClassWhich::Class2,
            ClassWhich::Class2 => ClassWhich::Class1,
        }
    }
}

impl std::str::FromStr for ClassWhich {
    type Err = ColoringError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "class-1" | "1" => Ok(ClassWhich::Class1),
            "class-2" | "2" => Ok(ClassWhich::Class2),
            _ => Err(ColoringError::Precondition(format!("unknown class `{s}`"))),
        }
    }
}

/// Per-`t` outcome: a class, or `None` when the budget ran out.
type Outcomes = BTreeMap<usize, Option<ClassWhich>>;

fn outcome_text(o: Option<ClassWhich>) -> &'static str {
    o.map_or("inconclusive", ClassWhich::as_str)
}

fn format_outcomes(outcomes: &Outcomes) -> String {
    outcomes
        .iter()
        .map(|(t, o)| format!("{t}:{}", outcome_text(*o)))
        .collect::<Vec<_>>()
        .join(",")
}

fn verdict_for(which: ClassWhich, outcomes: &Outcomes) -> Verdict {
    if outcomes.values().all(|o| *o == Some(which)) {
        Verdict::Verified
    } else if outcomes.values().any(|o| *o == Some(which.opposite())) {
        Verdict::Refuted
    } else {
        Verdict::Inconclusive
    }
}

fn class_note(ts: &[usize]) -> String {
    format!(
        "decided for t in {{{}}} only; the property over all t is not decided",
        ts.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
    )
}

fn cubic_with_perfect(g: &Multigraph, m: &Matching) -> Result<()> {
    if g.regular_degree() != Some(3) {
        return Err(ColoringError::Precondition("graph is not cubic".into()));
    }
    if !m.is_perfect(g) {
        return Err(ColoringError::Precondition("matching is not perfect".into()));
    }
    Ok(())
}

fn with_copies(g: &Multigraph, m: &Matching, t: usize) -> Result<Multigraph> {
    if t < 1 {
        return Err(ColoringError::Precondition("t must be at least 1".into()));
    }
    Ok(g.add_matching_copies(m, 2 * t - 2)?)
}

/// Decides, for each `t`, whether `g + (2t-2)m` is `(2t+1)`-edge-colorable.
pub fn class_property(
    g: &Multigraph,
    m: &Matching,
    which: ClassWhich,
    ts: &[usize],
    budget: &Budget,
) -> Result<Certificate> {
    cubic_with_perfect(g, m)?;
    let mut outcomes = Outcomes::new();
    let mut parts = Vec::new();
    for &t in ts {
        let h = with_copies(g, m, t)?;
        let (outcome, witness) = match try_color(&h, 2 * t + 1, budget)? {
            ColorSearch::Colored(c) => (
                Some(ClassWhich::Class1),
                Witness::Coloring {
                    text: write_coloring(&h, &c),
                },
            ),
            ColorSearch::Refuted(trace) => (Some(ClassWhich::Class2), Witness::Refutation { trace }),
            ColorSearch::Exhausted { .. } => (
                None,
                Witness::Bounds {
                    lower: 2 * t + 1,
                    upper: 2 * t + 2,
                },
            ),
        };
        outcomes.insert(t, outcome);
        parts.push(Part::new(format!("t={t}"), witness));
    }
    let verdict = verdict_for(which, &outcomes);
    let mut cert = Certificate::new(ClaimKind::ClassProperty, g, verdict, Witness::Composite { parts });
    cert.param("which", which.as_str())
        .param("t", ts.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
        .param("results", format_outcomes(&outcomes))
        .param("matching", join_list(&matching_ids(m)));
    cert.notes.push(class_note(ts));
    Ok(cert)
}

/// `G = G1 · G2` with `e1 = v1v2`, `e2 = v3v4` removed from `G1`, the
/// adjacent `x, y` removed from `G2`, and joins `a_j = v_j n_j` where
/// `n1, n2` were the other neighbours of `x` and `n3, n4` those of `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DotCut {
    pub g: Multigraph,
    pub m: Matching,
    pub g1: Multigraph,
    pub m1: Matching,
    pub g2: Multigraph,
    pub m2: Matching,
    pub e1: EdgeId,
    pub e2: EdgeId,
    pub x: String,
    pub y: String,
    /// `(id, end in G1, end in G2)` for `a1 … a4`.
    pub joins: [(EdgeId, String, String); 4],
}

fn pre(msg: impl Into<String>) -> ColoringError {
    ColoringError::Precondition(msg.into())
}

fn name_pairs(g: &Multigraph, edges: impl Iterator<Item = usize>) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = edges
        .map(|e| {
            let (a, b) = g.edge(e).ends;
            let (a, b) = (g.vertex_name(a).to_string(), g.vertex_name(b).to_string());
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    out.sort();
    out
}

/// Same vertex names and the same id-to-ends map.
fn same_graph(a: &Multigraph, b: &Multigraph) -> bool {
    let names = |g: &Multigraph| {
        g.vertices()
            .map(|v| g.vertex_name(v).to_string())
            .collect::<BTreeSet<_>>()
    };
    let edges = |g: &Multigraph| {
        g.edges()
            .iter()
            .enumerate()
            .map(|(e, edge)| (edge.id.clone(), name_pairs(g, std::iter::once(e)).remove(0)))
            .collect::<BTreeMap<_, _>>()
    };
    a.edge_count() == b.edge_count() && names(a) == names(b) && edges(a) == edges(b)
}

impl DotCut {
    /// Assembles `G` and `M = M1 ∪ M2 ∖ {xy}` after checking every hypothesis.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        g1: Multigraph,
        m1: Matching,
        g2: Multigraph,
        m2: Matching,
        e1: EdgeId,
        e2: EdgeId,
        x: String,
        y: String,
        joins: [(EdgeId, String, String); 4],
    ) -> Result<Self> {
        cubic_with_perfect(&g1, &m1)?;
        cubic_with_perfect(&g2, &m2)?;
        let ie1 = g1
            .edge_idx(&e1)
            .ok_or_else(|| pre(format!("`{e1}` is not an edge of G1")))?;
        let ie2 = g1
            .edge_idx(&e2)
            .ok_or_else(|| pre(format!("`{e2}` is not an edge of G1")))?;
        if m1.contains(&e1) || m1.contains(&e2) {
            return Err(pre("a removed edge lies in M1"));
        }
        let (a, b) = g1.edge(ie1).ends;
        if ie1 == ie2 || g1.edge(ie2).touches(a) || g1.edge(ie2).touches(b) {
            return Err(pre("removed edges are adjacent"));
        }
        let xi = g2.require_vertex(&x)?;
        let yi = g2.require_vertex(&y)?;
        let xy = g2
            .edges_between(xi, yi)
            .into_iter()
            .find(|&e| m2.contains(&g2.edge(e).id))
            .ok_or_else(|| pre("x and y are not joined by an edge of M2"))?;
        let ends_of = |e: usize| {
            let (p, q) = g1.edge(e).ends;
            [g1.vertex_name(p).to_string(), g1.vertex_name(q).to_string()]
        };
        for (pair, e) in [(0, ie1), (1, ie2)] {
            let mut got = [joins[2 * pair].1.clone(), joins[2 * pair + 1].1.clone()];
            let mut want = ends_of(e);
            got.sort();
            want.sort();
            if got != want {
                return Err(pre(format!(
                    "joins a{} and a{} do not start at the ends of the removed edge",
                    2 * pair + 1,
                    2 * pair + 2
                )));
            }
        }
        for (pair, (v, other)) in [(0, (xi, yi)), (1, (yi, xi))] {
            let mut nb: Vec<String> = g2
                .neighbors(v)
                .filter(|&u| u != other)
                .map(|u| g2.vertex_name(u).to_string())
                .collect();
            let mut got = vec![joins[2 * pair].2.clone(), joins[2 * pair + 1].2.clone()];
            nb.sort();
            got.sort();
            if nb != got {
                return Err(pre(format!(
                    "joins a{} and a{} do not end at the other neighbours",
                    2 * pair + 1,
                    2 * pair + 2
                )));
            }
        }
        let mut g = g1.without_edges(&[ie1, ie2]).union(&g2.without_vertices(&[xi, yi]))?;
        for (id, p, q) in &joins {
            let (pi, qi) = (g.require_vertex(p)?, g.require_vertex(q)?);
            g.add_edge_idx(id.clone(), pi, qi)?;
        }
        let mut m = Matching::new(m1.ids().cloned().chain(m2.ids().cloned()));
        m.remove(&g2.edge(xy).id);
        if !m.is_perfect(&g) {
            return Err(pre("M1 ∪ M2 ∖ {xy} is not a perfect matching"));
        }
        Ok(DotCut {
            g,
            m,
            g1,
            m1,
            g2,
            m2,
            e1,
            e2,
            x,
            y,
            joins,
        })
    }

    /// From the splice data of an `(M1, M2)`-dot-product, cross-checked
    /// against [`m_dot_product`].
    pub fn from_splice(g1: &Multigraph, m1: &Matching, g2: &Multigraph, m2: &Matching, s: &DotSplice) -> Result<Self> {
        let (product, pm) = m_dot_product(g1, m1, g2, m2, s).map_err(|e| pre(e.to_string()))?;
        let nbrs = [&s.u_nbrs[0], &s.u_nbrs[1], &s.w_nbrs[0], &s.w_nbrs[1]];
        let joins: [(EdgeId, String, String); 4] = std::array::from_fn(|k| {
            (
                EdgeId::new(format!("{}.{}", s.join_tag, k + 1)).expect("join id"),
                s.v[k].clone(),
                nbrs[k].clone(),
            )
        });
        let cut = DotCut::new(
            g1.clone(),
            m1.clone(),
            g2.clone(),
            m2.clone(),
            s.e1.clone(),
            s.e2.clone(),
            s.u.clone(),
            s.w.clone(),
            joins,
        )?;
        if !same_graph(&cut.g, &product) || cut.m != pm {
            return Err(ColoringError::Construction(
                "assembled product differs from the dot product".into(),
            ));
        }
        Ok(cut)
    }

    /// `G_{n+1} = G_n · G_1` in the chain built on `seed`.
    pub fn chain_step(seed: &BlanusaSeed, n: usize) -> Result<Self> {
        let fam = |e: crate::families::FamilyError| pre(e.to_string());
        let prev = build_chain(seed, n).map_err(fam)?;
        let next = build_chain(seed, n + 1).map_err(fam)?;
        let k = (n + 1).to_string();
        let role = |r: &str, c: usize| BlanusaChain::vertex_name(r, c);
        let nbrs = ["x8", "y0", "y1", "x2"];
        let joins: [(EdgeId, String, String); 4] = std::array::from_fn(|j| {
            let (a, _) = BlanusaChain::SPLICES[j];
            (BlanusaChain::splice_edge_id(n, j + 1), role(a, n), role(nbrs[j], n + 1))
        });
        let cut = DotCut::new(
            prev.graph,
            prev.matching,
            seed.graph.tagged(&k),
            seed.matching.tagged(&k),
            BlanusaChain::copy_edge_id("x4", "x5", n),
            BlanusaChain::copy_edge_id("x7", "x8", n),
            role("x0", n + 1),
            role("x1", n + 1),
            joins,
        )?;
        if !same_graph(&cut.g, &next.graph) || cut.m != next.matching {
            return Err(ColoringError::Construction(format!(
                "chain step {n} differs from G_{}",
                n + 1
            )));
        }
        Ok(cut)
    }

    pub fn h(&self, t: usize) -> Result<Multigraph> {
        with_copies(&self.g, &self.m, t)
    }

    pub fn h1(&self, t: usize) -> Result<Multigraph> {
        with_copies(&self.g1, &self.m1, t)
    }

    pub fn h2(&self, t: usize) -> Result<Multigraph> {
        with_copies(&self.g2, &self.m2, t)
    }

    /// Turns a `(2t+1)`-coloring of `H` into one of `H1` or `H2`, following
    /// the two cases of the Parity Lemma on the cut.
    pub fn reduce_coloring(&self, t: usize, c: &EdgeColoring) -> Result<Reduced> {
        let k = 2 * t + 1;
        let h = self.h(t)?;
        if c.palette != k {
            return Err(pre(format!("coloring has {} colors, expected {k}", c.palette)));
        }
        if let Some(v) = is_proper(&h, c)? {
            return Err(pre(format!("coloring of H is not proper: {v}")));
        }
        let color_of: HashMap<&EdgeId, u32> = h.edges().iter().map(|e| &e.id).zip(c.colors.iter().copied()).collect();
        let a: [u32; 4] = std::array::from_fn(|j| color_of[&self.joins[j].0]);
        if a[0] == a[1] {
            if a[2] != a[3] {
                return Err(ColoringError::Construction(
                    "cut colors violate the Parity Lemma".into(),
                ));
            }
            let h1 = self.h1(t)?;
            let colors = h1
                .edges()
                .iter()
                .map(|e| {
                    if e.id == self.e1 {
                        a[0]
                    } else if e.id == self.e2 {
                        a[2]
                    } else {
                        color_of[&e.id]
                    }
                })
                .collect();
            let out = EdgeColoring::proper(k, colors);
            if let Some(v) = is_proper(&h1, &out)? {
                return Err(ColoringError::Construction(format!(
                    "restored coloring of H1 is improper: {v}"
                )));
            }
            return Ok(Reduced::First(out));
        }
        let mut pair = [a[0], a[1]];
        let mut other = [a[2], a[3]];
        pair.sort();
        other.sort();
        if pair != other {
            return Err(ColoringError::Construction(
                "cut colors violate the Parity Lemma".into(),
            ));
        }
        let h2 = self.h2(t)?;
        let (xi, yi) = (h2.require_vertex(&self.x)?, h2.require_vertex(&self.y)?);
        let mut colors: Vec<Option<u32>> = h2
            .edges()
            .iter()
            .map(|e| {
                if e.touches(xi) || e.touches(yi) {
                    None
                } else {
                    Some(color_of[&e.id])
                }
            })
            .collect();
        for (j, &end) in [xi, xi, yi, yi].iter().enumerate() {
            let n = h2.require_vertex(&self.joins[j].2)?;
            let e = h2
                .edges_between(end, n)
                .into_iter()
                .find(|&e| colors[e].is_none())
                .ok_or_else(|| ColoringError::Construction("missing edge at x or y".into()))?;
            colors[e] = Some(a[j]);
        }
        let mut free = (0..k as u32).filter(|col| !pair.contains(col));
        for e in h2.edges_between(xi, yi) {
            colors[e] = Some(
                free.next()
                    .ok_or_else(|| ColoringError::Construction("too many xy copies".into()))?,
            );
        }
        let colors: Vec<u32> = colors
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| ColoringError::Construction("edge of H2 left uncolored".into()))?;
        let out = EdgeColoring::proper(k, colors);
        if let Some(v) = is_proper(&h2, &out)? {
            return Err(ColoringError::Construction(format!(
                "restored coloring of H2 is improper: {v}"
            )));
        }
        Ok(Reduced::Second(out))
    }

    pub fn to_record(&self, components: Vec<Certificate>) -> DotCutRecord {
        DotCutRecord {
            g1: write_graph(&self.g1),
            m1: matching_ids(&self.m1),
            g2: write_graph(&self.g2),
            m2: matching_ids(&self.m2),
            e1: self.e1.to_string(),
            e2: self.e2.to_string(),
            x: self.x.clone(),
            y: self.y.clone(),
            joins: self.joins.iter().map(|(id, p, q)| format!("{id} {p} {q}")).collect(),
            components,
        }
    }

    pub fn from_record(rec: &DotCutRecord) -> std::result::Result<Self, CertError> {
        let w = |e: String| CertError::Witness(e);
        let id = |s: &str| EdgeId::parse(s).map_err(|e| w(e.to_string()));
        if rec.joins.len() != 4 {
            return Err(w("a dot-product cut has four joins".into()));
        }
        let mut joins = Vec::new();
        for j in &rec.joins {
            let [i, p, q] = j.split_whitespace().collect::<Vec<_>>()[..] else {
                return Err(w(format!("bad join `{j}`")));
            };
            joins.push((id(i)?, p.to_string(), q.to_string()));
        }
        DotCut::new(
            parse_graph_text(&rec.g1)?,
            parse_matching(&rec.m1)?,
            parse_graph_text(&rec.g2)?,
            parse_matching(&rec.m2)?,
            id(&rec.e1)?,
            id(&rec.e2)?,
            rec.x.clone(),
            rec.y.clone(),
            joins.try_into().expect("four joins"),
        )
        .map_err(|e| w(e.to_string()))
    }
}

/// A coloring of `H1` (first case) or of `H2` (second case).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reduced {
    First(EdgeColoring),
    Second(EdgeColoring),
}

/// Why a component certificate does not supply class 2 at `t`; `Err` for a
/// certificate about a different graph or matching.
fn component_gap(cert: &Certificate, g: &Multigraph, m: &Matching, t: usize) -> Result<Option<String>> {
    if cert.kind != ClaimKind::ClassProperty {
        return Err(pre("component certificate is not a class-property claim"));
    }
    if cert.graph_hash != g.content_hash() {
        return Err(pre("component certificate names a different graph"));
    }
    if cert.get("matching") != Some(join_list(&matching_ids(m)).as_str()) {
        return Err(pre("component certificate names a different matching"));
    }
    let class2_at_t = cert
        .get("results")
        .unwrap_or("")
        .split(',')
        .any(|r| r == format!("{t}:class-2"));
    if !class2_at_t {
        return Ok(Some(format!("component is not certified class 2 at t = {t}")));
    }
    if cert.get("which") != Some("class-2") || cert.verdict != Verdict::Verified {
        return Ok(Some("component certificate is not a verified class-2 claim".into()));
    }
    match reverify(cert, g) {
        Ok(rv) if rv.ok => Ok(None),
        Ok(rv) => Ok(Some(format!("component certificate fails to reverify: {}", rv.detail))),
        Err(e) => Ok(Some(format!("component certificate fails to reverify: {e}"))),
    }
}

/// Certifies `G + (2t-2)M` class 2 from class-2 certificates of `H1` and
/// `H2`; declines with an inconclusive certificate if they do not supply it.
pub fn dot_product_class2_prover(cut: &DotCut, t: usize, c1: &Certificate, c2: &Certificate) -> Result<Certificate> {
    if t < 1 {
        return Err(pre("t must be at least 1"));
    }
    let gaps: Vec<String> = [
        component_gap(c1, &cut.g1, &cut.m1, t)?.map(|s| format!("G1: {s}")),
        component_gap(c2, &cut.g2, &cut.m2, t)?.map(|s| format!("G2: {s}")),
    ]
    .into_iter()
    .flatten()
    .collect();
    let verdict = if gaps.is_empty() {
        Verdict::Verified
    } else {
        Verdict::Inconclusive
    };
    let mut outcomes = Outcomes::new();
    outcomes.insert(t, gaps.is_empty().then_some(ClassWhich::Class2));
    let record = cut.to_record(vec![c1.clone(), c2.clone()]);
    let mut cert = Certificate::new(
        ClaimKind::ClassProperty,
        &cut.g,
        verdict,
        Witness::DotCut {
            record: Box::new(record),
        },
    );
    cert.param("which", "class-2")
        .param("t", t)
        .param("results", format_outcomes(&outcomes))
        .param("matching", join_list(&matching_ids(&cut.m)))
        .param("method", "dot-product-cut")
        .param(
            "cut",
            join_list(&cut.joins.iter().map(|j| j.0.to_string()).collect::<Vec<_>>()),
        );
    cert.notes.extend(gaps);
    cert.notes.push(class_note(&[t]));
    Ok(cert)
}

fn graph_edge_ends(g: &Multigraph, rename: &HashMap<&str, &str>) -> Option<Vec<(String, String)>> {
    let mut out = Vec::new();
    for e in g.edges() {
        let a = rename.get(g.vertex_name(e.ends.0).as_str())?;
        let b = rename.get(g.vertex_name(e.ends.1).as_str())?;
        out.push(if a <= b {
            (a.to_string(), b.to_string())
        } else {
            (b.to_string(), a.to_string())
        });
    }
    out.sort();
    Some(out)
}

/// Checks that `rename` is a bijection carrying `(from, from_m)` onto `(to, to_m)`.
fn check_rename(
    from: &Multigraph,
    from_m: &Matching,
    to: &Multigraph,
    to_m: &Matching,
    rename: &[(String, String)],
) -> std::result::Result<(), String> {
    let map: HashMap<&str, &str> = rename.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let images: BTreeSet<&str> = map.values().copied().collect();
    if map.len() != rename.len() || map.len() != from.vertex_count() || images.len() != map.len() {
        return Err("renaming is not a bijection on the vertices".into());
    }
    if images.iter().any(|v| to.vertex_idx(v).is_none()) || to.vertex_count() != images.len() {
        return Err("renaming does not land on the target vertices".into());
    }
    let ident: HashMap<&str, &str> = to
        .vertices()
        .map(|v| (to.vertex_name(v).as_str(), to.vertex_name(v).as_str()))
        .collect();
    if graph_edge_ends(from, &map) != graph_edge_ends(to, &ident) {
        return Err("renamed graph differs from the target".into());
    }
    let ends =
        |g: &Multigraph, m: &Matching, r: &HashMap<&str, &str>| -> std::result::Result<Vec<(String, String)>, String> {
            let idx = m.resolve(g).map_err(|e| e.to_string())?;
            let mut out: Vec<(String, String)> = idx
                .into_iter()
                .map(|e| {
                    let (a, b) = g.edge(e).ends;
                    let (a, b) = (
                        r[g.vertex_name(a).as_str()].to_string(),
                        r[g.vertex_name(b).as_str()].to_string(),
                    );
                    if a <= b {
                        (a, b)
                    } else {
                        (b, a)
                    }
                })
                .collect();
            out.sort();
            Ok(out)
        };
    if ends(from, from_m, &map)? != ends(to, to_m, &ident)? || !to_m.is_perfect(to) {
        return Err("renamed matching differs from the target".into());
    }
    Ok(())
}

/// Carries a class-property certificate across a vertex renaming.
pub fn relabel_class_certificate(
    cert: &Certificate,
    from: &Multigraph,
    from_m: &Matching,
    to: &Multigraph,
    to_m: &Matching,
    rename: &[(String, String)],
) -> Result<Certificate> {
    if cert.kind != ClaimKind::ClassProperty || cert.graph_hash != from.content_hash() {
        return Err(pre("certificate is not a class-property claim about the source graph"));
    }
    check_rename(from, from_m, to, to_m, rename).map_err(pre)?;
    let mut out = Certificate::new(
        ClaimKind::ClassProperty,
        to,
        cert.verdict,
        Witness::Relabel {
            graph: write_graph(from),
            matching: matching_ids(from_m),
            rename: rename.to_vec(),
            source: Box::new(cert.clone()),
        },
    );
    for key in ["which", "t", "results", "method"] {
        if let Some(v) = cert.get(key) {
            out.param(key, v);
        }
    }
    out.param("matching", join_list(&matching_ids(to_m)));
    out.notes.push("transferred by vertex renaming".into());
    out.notes
        .extend(cert.notes.iter().filter(|n| n.starts_with("decided")).cloned());
    Ok(out)
}

/// `G1 + (2t-2)M1` class 2 for the seed, proved on its `P@1 · P@2`
/// realization from Petersen certificates and carried onto the role names.
pub fn seed_class2_certificate(seed: &BlanusaSeed, t: usize, budget: &Budget) -> Result<Certificate> {
    let p = &seed.provenance;
    let (p1, p2) = (petersen().tagged("1"), petersen().tagged("2"));
    let cut = DotCut::from_splice(&p1, &p.n1, &p2, &p.n2, &p.splice)?;
    let c1 = class_property(&p1, &p.n1, ClassWhich::Class2, &[t], budget)?;
    let c2 = class_property(&p2, &p.n2, ClassWhich::Class2, &[t], budget)?;
    let cert = dot_product_class2_prover(&cut, t, &c1, &c2)?;
    relabel_class_certificate(&cert, &cut.g, &cut.m, &seed.graph, &seed.matching, &p.rename)
}

fn ts_param(cert: &Certificate) -> std::result::Result<Vec<usize>, CertError> {
    cert.get("t")
        .unwrap_or("")
        .split(',')
        .map(|s| s.parse().map_err(|_| CertError::Witness(format!("bad t list `{s}`"))))
        .collect()
}

/// Reverification of class-property certificates of every witness shape.
pub(crate) fn reverify_class(cert: &Certificate, g: &Multigraph) -> std::result::Result<Reverification, CertError> {
    let werr = |e: ColoringError| CertError::Witness(e.to_string());
    let which: ClassWhich = cert.get("which").unwrap_or("").parse().map_err(werr)?;
    let ts = ts_param(cert)?;
    let ids = split_list(cert.get("matching").unwrap_or(""));
    let m = parse_matching(&ids)?;
    let fail = |s: String| Ok(Reverification { ok: false, detail: s });
    let (outcomes, detail) = match &cert.witness {
        Witness::Composite { parts } => {
            let mut outcomes = Outcomes::new();
            for &t in &ts {
                let part = parts
                    .iter()
                    .find(|p| p.label == format!("t={t}"))
                    .ok_or_else(|| CertError::Witness(format!("no witness for t = {t}")))?;
                let h = with_copies(g, &m, t).map_err(werr)?;
                let o = match &part.witness {
                    Witness::Coloring { text } => {
                        let c = parse_coloring(&h, text).map_err(werr)?;
                        if c.palette != 2 * t + 1 || is_proper(&h, &c).map_err(werr)?.is_some() {
                            return fail(format!("coloring at t = {t} is not a proper {}-coloring", 2 * t + 1));
                        }
                        Some(ClassWhich::Class1)
                    }
                    Witness::Refutation { trace } => {
                        if trace.colors != 2 * t + 1 || !replay_refutation(&h, trace) {
                            return fail(format!("refutation at t = {t} does not replay"));
                        }
                        Some(ClassWhich::Class2)
                    }
                    _ => None,
                };
                outcomes.insert(t, o);
            }
            (outcomes, "per-t witnesses checked".to_string())
        }
        Witness::DotCut { record } => {
            let cut = DotCut::from_record(record)?;
            if !same_graph(&cut.g, g) || cut.m != m || ts.len() != 1 || record.components.len() != 2 {
                return fail("dot-product record does not assemble to the certified graph".into());
            }
            let t = ts[0];
            let mut gaps = Vec::new();
            for (c, (gi, mi)) in record.components.iter().zip([(&cut.g1, &cut.m1), (&cut.g2, &cut.m2)]) {
                if let Some(gap) = component_gap(c, gi, mi, t).map_err(werr)? {
                    gaps.push(gap);
                }
            }
            let mut outcomes = Outcomes::new();
            outcomes.insert(t, gaps.is_empty().then_some(ClassWhich::Class2));
            let detail = if gaps.is_empty() {
                "both factors class 2".to_string()
            } else {
                gaps.join("; ")
            };
            (outcomes, detail)
        }
        Witness::Relabel {
            graph,
            matching,
            rename,
            source,
        } => {
            let from = parse_graph_text(graph)?;
            let from_m = parse_matching(matching)?;
            if let Err(e) = check_rename(&from, &from_m, g, &m, rename) {
                return fail(e);
            }
            if source.get("results") != cert.get("results") || source.get("which") != cert.get("which") {
                return fail("relabelled parameters differ from the source".into());
            }
            let rv = reverify(source, &from)?;
            if !rv.ok {
                return fail(format!("source certificate: {}", rv.detail));
            }
            return Ok(Reverification::compare(
                cert.verdict,
                source.verdict,
                "source certificate reverified",
            ));
        }
        _ => {
            return Err(CertError::Witness(
                "unexpected witness for a class-property claim".into(),
            ))
        }
    };
    if cert.get("results") != Some(format_outcomes(&outcomes).as_str()) {
        return fail(format!("recorded results differ from {}", format_outcomes(&outcomes)));
    }
    Ok(Reverification::compare(
        cert.verdict,
        verdict_for(which, &outcomes),
        detail,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete_bipartite, petersen, prism};
    use crate::graph::perfect_matchings;

    fn some_matching(g: &Multigraph) -> Matching {
        Matching::from_indices(g, &perfect_matchings(g)[0])
    }

    #[test]
    fn petersen_is_class2_at_t1_t2() {
        let g = petersen();
        let m = some_matching(&g);
        let cert = class_property(&g, &m, ClassWhich::Class2, &[1, 2], &Budget::unlimited()).unwrap();
        assert_eq!(cert.verdict, Verdict::Verified);
        assert_eq!(cert.get("results"), Some("1:class-2,2:class-2"));
        assert!(reverify(&cert, &g).unwrap().ok);
        let class1 = class_property(&g, &m, ClassWhich::Class1, &[1], &Budget::unlimited()).unwrap();
        assert_eq!(class1.verdict, Verdict::Refuted);
    }

    /// Some valid splice of `g1 · g2` with both matchings avoiding it.
    fn class1_cut(t_tag: &str) -> DotCut {
        let g1 = complete_bipartite(3).unwrap().tagged(&format!("a{t_tag}"));
        let g2 = prism(3).unwrap().tagged(&format!("b{t_tag}"));
        for pm2 in perfect_matchings(&g2) {
            let m2 = Matching::from_indices(&g2, &pm2);
            let xy = pm2[0];
            let (xi, yi) = g2.edge(xy).ends;
            for pm1 in perfect_matchings(&g1) {
                let m1 = Matching::from_indices(&g1, &pm1);
                for e1 in 0..g1.edge_count() {
                    for e2 in e1 + 1..g1.edge_count() {
                        if pm1.contains(&e1) || pm1.contains(&e2) {
                            continue;
                        }
                        let (a, b) = g1.edge(e1).ends;
                        if g1.edge(e2).touches(a) || g1.edge(e2).touches(b) {
                            continue;
                        }
                        let (c, d) = g1.edge(e2).ends;
                        let nx: Vec<usize> = g2.neighbors(xi).filter(|&u| u != yi).collect();
                        let ny: Vec<usize> = g2.neighbors(yi).filter(|&u| u != xi).collect();
                        let n1 = |v: usize| g1.vertex_name(v).to_string();
                        let n2 = |v: usize| g2.vertex_name(v).to_string();
                        let jid = |k: usize| EdgeId::new(format!("j.{k}")).unwrap();
                        let joins = [
                            (jid(1), n1(a), n2(nx[0])),
                            (jid(2), n1(b), n2(nx[1])),
                            (jid(3), n1(c), n2(ny[0])),
                            (jid(4), n1(d), n2(ny[1])),
                        ];
                        if let Ok(cut) = DotCut::new(
                            g1.clone(),
                            m1.clone(),
                            g2.clone(),
                            m2.clone(),
                            g1.edge(e1).id.clone(),
                            g1.edge(e2).id.clone(),
                            n2(xi),
                            n2(yi),
                            joins,
                        ) {
                            return cut;
                        }
                    }
                }
            }
        }
        panic!("no splice found");
    }

    #[test]
    fn reduction_on_class1_product() {
        let cut = class1_cut("");
        assert_eq!(cut.g.regular_degree(), Some(3));
        for t in 1..=2 {
            let h = cut.h(t).unwrap();
            let ColorSearch::Colored(c) = try_color(&h, 2 * t + 1, &Budget::unlimited()).unwrap() else {
                panic!("product of class-1 factors should be colorable here");
            };
            match cut.reduce_coloring(t, &c).unwrap() {
                Reduced::First(c1) => assert_eq!(is_proper(&cut.h1(t).unwrap(), &c1).unwrap(), None),
                Reduced::Second(c2) => assert_eq!(is_proper(&cut.h2(t).unwrap(), &c2).unwrap(), None),
            }
        }
    }

    #[test]
    fn prover_declines_on_class1_components() {
        let cut = class1_cut("");
        let b = Budget::unlimited();
        let c1 = class_property(&cut.g1, &cut.m1, ClassWhich::Class2, &[2], &b).unwrap();
        let c2 = class_property(&cut.g2, &cut.m2, ClassWhich::Class2, &[2], &b).unwrap();
        let cert = dot_product_class2_prover(&cut, 2, &c1, &c2).unwrap();
        assert_eq!(cert.verdict, Verdict::Inconclusive);
        let rv = reverify(&cert, &cut.g).unwrap();
        assert!(rv.ok, "{}", rv.detail);
        assert!(dot_product_class2_prover(&cut, 2, &c2, &c1).is_err());
    }

    #[test]
    fn petersen_product_is_class2_at_t2() {
        let (p1, p2) = (petersen().tagged("1"), petersen().tagged("2"));
        let b = Budget::unlimited();
        for pm1 in perfect_matchings(&p1) {
            let m1 = Matching::from_indices(&p1, &pm1);
            let Some((e1, e2)) = (0..15).flat_map(|a| (a + 1..15).map(move |b| (a, b))).find(|&(a, b)| {
                !pm1.contains(&a)
                    && !pm1.contains(&b)
                    && !p1.edge(b).touches(p1.edge(a).ends.0)
                    && !p1.edge(b).touches(p1.edge(a).ends.1)
            }) else {
                continue;
            };
            let m2 = some_matching(&p2);
            let xy = m2.resolve(&p2).unwrap()[0];
            let (xi, yi) = p2.edge(xy).ends;
            let name = |g: &Multigraph, v: usize| g.vertex_name(v).to_string();
            let nx: Vec<String> = p2.neighbors(xi).filter(|&u| u != yi).map(|u| name(&p2, u)).collect();
            let ny: Vec<String> = p2.neighbors(yi).filter(|&u| u != xi).map(|u| name(&p2, u)).collect();
            let (a, bb) = p1.edge(e1).ends;
            let (c, d) = p1.edge(e2).ends;
            let splice = DotSplice {
                e1: p1.edge(e1).id.clone(),
                e2: p1.edge(e2).id.clone(),
                v: [name(&p1, a), name(&p1, bb), name(&p1, c), name(&p1, d)],
                u: name(&p2, xi),
                w: name(&p2, yi),
                u_nbrs: [nx[0].clone(), nx[1].clone()],
                w_nbrs: [ny[0].clone(), ny[1].clone()],
                join_tag: "j".into(),
            };
            let cut = DotCut::from_splice(&p1, &m1, &p2, &m2, &splice).unwrap();
            let c1 = class_property(&p1, &m1, ClassWhich::Class2, &[2], &b).unwrap();
            let c2 = class_property(&p2, &m2, ClassWhich::Class2, &[2], &b).unwrap();
            let cert = dot_product_class2_prover(&cut, 2, &c1, &c2).unwrap();
            assert_eq!(cert.verdict, Verdict::Verified);
            let back = Certificate::from_json(&cert.to_json()).unwrap();
            assert!(reverify(&back, &cut.g).unwrap().ok);
            let direct = try_color(&cut.h(2).unwrap(), 5, &b).unwrap();
            assert!(matches!(direct, ColorSearch::Refuted(_)));
            return;
        }
        panic!("no admissible splice");
    }

    #[test]
    fn golden_seed_is_class2_at_t2() {
        let seed = BlanusaSeed::golden().unwrap();
        let cert = seed_class2_certificate(seed, 2, &Budget::unlimited()).unwrap();
        assert_eq!(cert.verdict, Verdict::Verified);
        let back = Certificate::from_json(&cert.to_json()).unwrap();
        assert!(reverify(&back, &seed.graph).unwrap().ok);
    }
}
