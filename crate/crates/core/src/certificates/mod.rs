//! Claim, witness and verdict records, serialized as canonical JSON and
//! re-checkable against the graph they name.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::colorings::{
    is_proper, parity_lemma_check, parse_coloring, replay_refutation, verify_coloring, write_coloring, ChromaticIndex,
    ColoringViolation, EdgeColoring, RefutationTrace,
};
use crate::flows::{check_flow, parse_flow, write_flow, FlowNumber, FlowViolation, RationalFlow};
use crate::graph::{parse_graph, write_graph, EdgeId, Matching, Multigraph};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::valuations::{
    check_balanced, flow_to_bipartition, parse_valuation, write_valuation, BalanceOutcome, BalancedValuation,
    InequalityReport,
};

pub const SCHEMA: &str = "circflow-cert v1";
pub const PROVER: &str = concat!("circflow ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertError {
    #[error("graph hash mismatch: certificate names {expected}, graph is {actual}")]
    HashMismatch { expected: String, actual: String },
    #[error("unsupported schema `{0}`")]
    Schema(String),
    #[error("malformed certificate: {0}")]
    Json(String),
    #[error("malformed witness: {0}")]
    Witness(String),
}

pub type Result<T> = std::result::Result<T, CertError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimKind {
    FlowValid,
    PhiCValue,
    PhiCBound,
    ChromaticIndex,
    ColoringValid,
    ClassProperty,
    Parity,
    Balanced,
    InequalityCheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Verified,
    Refuted,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Verified => "verified",
            Verdict::Refuted => "refuted",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    /// Process exit code: 0 verified, 1 refuted, 2 inconclusive.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Verified => 0,
            Verdict::Refuted => 1,
            Verdict::Inconclusive => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Part {
    pub label: String,
    pub witness: Witness,
}

impl Part {
    pub fn new(label: impl Into<String>, witness: Witness) -> Self {
        Part {
            label: label.into(),
            witness,
        }
    }
}

/// The pieces of a dot product `G1 · G2` and the certificates of both
/// factors; graphs and matchings are stored in their text forms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DotCutRecord {
    pub g1: String,
    pub m1: Vec<String>,
    pub g2: String,
    pub m2: Vec<String>,
    pub e1: String,
    pub e2: String,
    pub x: String,
    pub y: String,
    pub joins: Vec<String>,
    pub components: Vec<Certificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Witness {
    None,
    Flow {
        text: String,
    },
    Coloring {
        text: String,
    },
    Refutation {
        trace: RefutationTrace,
    },
    Bounds {
        lower: usize,
        upper: usize,
    },
    Subset {
        vertices: Vec<String>,
        detail: String,
    },
    Valuation {
        text: String,
    },
    Composite {
        parts: Vec<Part>,
    },
    DotCut {
        record: Box<DotCutRecord>,
    },
    /// The source certificate holds for `graph`; `rename` maps its vertices
    /// onto the certified graph.
    Relabel {
        graph: String,
        matching: Vec<String>,
        rename: Vec<(String, String)>,
        source: Box<Certificate>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: String,
    pub kind: ClaimKind,
    pub graph_hash: String,
    pub params: BTreeMap<String, String>,
    pub witness: Witness,
    pub verdict: Verdict,
    pub prover: String,
    pub notes: Vec<String>,
}

/// Outcome of [`reverify`]: whether the verdict was reproduced, and why not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reverification {
    pub ok: bool,
    pub detail: String,
}

impl Reverification {
    pub fn pass(detail: impl Into<String>) -> Self {
        Reverification {
            ok: true,
            detail: detail.into(),
        }
    }

    pub fn fail(detail: impl Into<String>) -> Self {
        Reverification {
            ok: false,
            detail: detail.into(),
        }
    }

    /// Pass iff the recomputed verdict matches the recorded one.
    pub fn compare(recorded: Verdict, recomputed: Verdict, detail: impl Into<String>) -> Self {
        let detail = detail.into();
        if recorded == recomputed {
            Reverification::pass(detail)
        } else {
            Reverification::fail(format!("recorded {recorded}, recomputed {recomputed}: {detail}"))
        }
    }
}

pub fn matching_ids(m: &Matching) -> Vec<String> {
    m.ids().map(ToString::to_string).collect()
}

/// Space-separated list; edge ids and vertex names may contain commas.
pub fn join_list<S: AsRef<str>>(items: &[S]) -> String {
    items.iter().map(AsRef::as_ref).collect::<Vec<_>>().join(" ")
}

pub fn split_list(text: &str) -> Vec<String> {
    text.split_whitespace().map(String::from).collect()
}

pub fn parse_matching(ids: &[String]) -> Result<Matching> {
    ids.iter()
        .map(|s| EdgeId::parse(s).map_err(|e| CertError::Witness(e.to_string())))
        .collect::<Result<Vec<_>>>()
        .map(Matching::new)
}

pub fn parse_graph_text(text: &str) -> Result<Multigraph> {
    parse_graph(text).map_err(|e| CertError::Witness(e.to_string()))
}

fn witness_err(e: impl fmt::Display) -> CertError {
    CertError::Witness(e.to_string())
}

impl Certificate {
    pub fn new(kind: ClaimKind, g: &Multigraph, verdict: Verdict, witness: Witness) -> Self {
        Certificate {
            schema: SCHEMA.to_string(),
            kind,
            graph_hash: g.content_hash(),
            params: BTreeMap::new(),
            witness,
            verdict,
            prover: PROVER.to_string(),
            notes: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.params.get(key).map(String::as_str)
    }

    fn rational_param(&self, key: &str) -> Result<Rational> {
        self.get(key)
            .and_then(parse_rational)
            .ok_or_else(|| CertError::Witness(format!("missing or bad parameter `{key}`")))
    }

    fn usize_param(&self, key: &str) -> Result<usize> {
        self.get(key)
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| CertError::Witness(format!("missing or bad parameter `{key}`")))
    }

    /// A flow checked at its own `r`.
    pub fn flow_valid(g: &Multigraph, flow: &RationalFlow, violation: Option<&FlowViolation>) -> Self {
        let verdict = if violation.is_none() {
            Verdict::Verified
        } else {
            Verdict::Refuted
        };
        let mut cert = Certificate::new(
            ClaimKind::FlowValid,
            g,
            verdict,
            Witness::Flow {
                text: write_flow(g, flow),
            },
        );
        cert.param("r", format_rational(&flow.r));
        if let Some(v) = violation {
            cert.notes.push(v.to_string());
        }
        cert
    }

    /// `φ_c ≤ r`, witnessed by a flow.
    pub fn phi_c_upper(g: &Multigraph, flow: &RationalFlow, violation: Option<&FlowViolation>) -> Self {
        let mut cert = Certificate::flow_valid(g, flow, violation);
        cert.kind = ClaimKind::PhiCBound;
        cert.param("side", "upper");
        cert
    }

    /// Exact `φ_c` from orientation enumeration; the flow attains the value.
    pub fn phi_c_value(g: &Multigraph, fnum: &FlowNumber) -> Self {
        let mut cert = Certificate::new(
            ClaimKind::PhiCValue,
            g,
            Verdict::Verified,
            Witness::Flow {
                text: write_flow(g, &fnum.flow),
            },
        );
        cert.param("value", format_rational(&fnum.value));
        cert.param("examined", fnum.examined);
        cert.notes
            .push("the lower bound rests on the enumeration of every orientation".into());
        cert
    }

    /// A coloring checked in its own mode.
    pub fn coloring_valid(g: &Multigraph, c: &EdgeColoring, violation: Option<&ColoringViolation>) -> Self {
        let verdict = if violation.is_none() {
            Verdict::Verified
        } else {
            Verdict::Refuted
        };
        let mut cert = Certificate::new(
            ClaimKind::ColoringValid,
            g,
            verdict,
            Witness::Coloring {
                text: write_coloring(g, c),
            },
        );
        cert.param("mode", c.mode.as_str()).param("palette", c.palette);
        if let Some(v) = violation {
            cert.notes.push(v.to_string());
        }
        cert
    }

    pub fn chromatic_index(g: &Multigraph, ci: &ChromaticIndex) -> Self {
        let mut parts = Vec::new();
        if let Some(c) = &ci.coloring {
            parts.push(Part::new(
                "coloring",
                Witness::Coloring {
                    text: write_coloring(g, c),
                },
            ));
        }
        for t in &ci.refutations {
            parts.push(Part::new(
                format!("refute {}", t.colors),
                Witness::Refutation { trace: t.clone() },
            ));
        }
        let verdict = if ci.exact().is_some() {
            Verdict::Verified
        } else {
            Verdict::Inconclusive
        };
        let mut cert = Certificate::new(ClaimKind::ChromaticIndex, g, verdict, Witness::Composite { parts });
        cert.param("delta", g.max_degree())
            .param("lower", ci.lower)
            .param("upper", ci.upper);
        if let Some(k) = ci.exact() {
            cert.param("value", k);
        }
        cert
    }

    pub fn balanced(g: &Multigraph, omega: &BalancedValuation, outcome: &BalanceOutcome) -> Self {
        let mut parts = vec![Part::new(
            "valuation",
            Witness::Valuation {
                text: write_valuation(g, omega),
            },
        )];
        let verdict = match outcome {
            BalanceOutcome::Balanced => Verdict::Verified,
            BalanceOutcome::Violated { side, sum, cut } => {
                parts.push(Part::new(
                    "violation",
                    Witness::Subset {
                        vertices: side.iter().map(|&v| g.vertex_name(v).to_string()).collect(),
                        detail: format!("|sum| = {} exceeds cut {cut}", format_rational(&sum.abs())),
                    },
                ));
                Verdict::Refuted
            }
        };
        Certificate::new(ClaimKind::Balanced, g, verdict, Witness::Composite { parts })
    }

    /// The `G + (2t-2)M` inequality chain, witnessed by the `r`-flow on `g`
    /// and the bound flow on `H`.
    pub fn inequality(g: &Multigraph, flow: &RationalFlow, m: &Matching, report: &InequalityReport) -> Self {
        let mut parts = vec![Part::new(
            "flow",
            Witness::Flow {
                text: write_flow(g, flow),
            },
        )];
        if let Some(hf) = &report.flow {
            parts.push(Part::new(
                "h-flow",
                Witness::Flow {
                    text: write_flow(&report.h_graph, hf),
                },
            ));
        }
        let name = |side: &Vec<usize>| side.iter().map(|&v| g.vertex_name(v).to_string()).collect::<Vec<_>>();
        for (label, v) in [
            ("r-bipartition", &report.r_bipartition_violation),
            ("matching", &report.matching_violation),
            ("h-inequality", &report.h_violation),
        ] {
            if let Some(side) = v {
                parts.push(Part::new(
                    label,
                    Witness::Subset {
                        vertices: name(side),
                        detail: format!("{label} inequality fails"),
                    },
                ));
            }
        }
        let verdict = if report.passed() {
            Verdict::Verified
        } else {
            Verdict::Refuted
        };
        let mut cert = Certificate::new(ClaimKind::InequalityCheck, g, verdict, Witness::Composite { parts });
        cert.param("t", report.t)
            .param("r", format_rational(&report.r))
            .param("bound", format_rational(&report.bound))
            .param("enumerated", report.enumerated)
            .param("matching", join_list(&matching_ids(m)));
        cert
    }

    /// Canonical pretty JSON: fixed field order, sorted parameters.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificates serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cert: Certificate = serde_json::from_str(text).map_err(|e| CertError::Json(e.to_string()))?;
        if cert.schema != SCHEMA {
            return Err(CertError::Schema(cert.schema));
        }
        Ok(cert)
    }

    pub fn parts(&self) -> &[Part] {
        match &self.witness {
            Witness::Composite { parts } => parts,
            _ => &[],
        }
    }

    fn part(&self, label: &str) -> Option<&Witness> {
        self.parts().iter().find(|p| p.label == label).map(|p| &p.witness)
    }
}

/// Re-checks the certificate's witness against `g` without searching;
/// refutation traces are replayed.
pub fn reverify(cert: &Certificate, g: &Multigraph) -> Result<Reverification> {
    if cert.schema != SCHEMA {
        return Err(CertError::Schema(cert.schema.clone()));
    }
    let actual = g.content_hash();
    if cert.graph_hash != actual {
        return Err(CertError::HashMismatch {
            expected: cert.graph_hash.clone(),
            actual,
        });
    }
    match cert.kind {
        ClaimKind::FlowValid | ClaimKind::PhiCBound => reverify_flow(cert, g),
        ClaimKind::PhiCValue => reverify_phi_value(cert, g),
        ClaimKind::ChromaticIndex => reverify_chromatic(cert, g),
        ClaimKind::ColoringValid => reverify_coloring(cert, g),
        ClaimKind::ClassProperty => crate::colorings::reverify_class(cert, g),
        ClaimKind::Parity => reverify_parity(cert, g),
        ClaimKind::Balanced => reverify_balanced(cert, g),
        ClaimKind::InequalityCheck => reverify_inequality(cert, g),
    }
}

fn flow_outcome(g: &Multigraph, text: &str) -> Result<(RationalFlow, Option<FlowViolation>)> {
    let flow = parse_flow(g, text).map_err(witness_err)?;
    let v = check_flow(g, &flow).map_err(witness_err)?;
    Ok((flow, v))
}

fn reverify_flow(cert: &Certificate, g: &Multigraph) -> Result<Reverification> {
    let Witness::Flow { text } = &cert.witness else {
        return Err(CertError::Witness("expected a flow witness".into()));
    };
    let (flow, v) = flow_outcome(g, text)?;
    if flow.r != cert.rational_param("r")? {
        return Ok(Reverification::fail("flow file and certificate disagree on r"));
    }
    let recomputed = if v.is_none() {
        Verdict::Verified
    } else {
        Verdict::Refuted
    };
    let detail = v.map_or_else(|| format!("valid {}-flow", format_rational(&flow.r)), |v| v.to_string());
    Ok(Reverification::compare(cert.verdict, recomputed, detail))
}

fn reverify_phi_value(cert: &Certificate, g: &Multigraph) -> Result<Reverification> {
    let Witness::Flow { text } = &cert.witness else {
        return Err(CertError::Witness("expected a flow witness".into()));
    };
    let value = cert.rational_param("value")?;
    let (flow, v) = flow_outcome(g, text)?;
    if flow.r != value {
        return Ok(Reverification::fail("witness flow is not at the claimed value"));
    }
    let recomputed = if v.is_none() {
        Verdict::Verified
    } else {
        Verdict::Refuted
    };
    let detail = v.map_or_else(
        || {
            format!(
                "upper bound {} witnessed; lower bound by enumeration",
                format_rational(&value)
            )
        },
        |v| v.to_string(),
    );
    Ok(Reverification::compare(cert.verdict, recomputed, detail))
}

fn reverify_chromatic(cert: &Certificate, g: &Multigraph) -> Result<Reverification> {
    let delta = cert.usize_param("delta")?;
    let lower = cert.usize_param("lower")?;
    let upper = cert.usize_param("upper")?;
    if delta != g.max_degree() {
        return Ok(Reverification::fail("recorded maximum degree is wrong"));
    }
    let mut refuted = Vec::new();
    let mut colored = None;
    for part in cert.parts() {
        match &part.witness {
            Witness::Coloring { text } => {
                let c = parse_coloring(g, text).map_err(witness_err)?;
                if let Some(v) = is_proper(g, &c).map_err(witness_err)? {
                    return Ok(Reverification::fail(format!("coloring is improper: {v}")));
                }
                colored = Some(c.palette);
            }
            Witness::Refutation { trace } => {
                if !replay_refutation(g, trace) {
                    return Ok(Reverification::fail(format!(
                        "refutation of {} colors does not replay",
                        trace.colors
                    )));
                }
                refuted.push(trace.colors);
            }
            _ => return Err(CertError::Witness(format!("unexpected part `{}`", part.label))),
        }
    }
    if (delta..lower).any(|k| !refuted.contains(&k)) {
        return Ok(Reverification::fail(
            "a color count below the lower bound lacks a refutation",
        ));
    }
    let recomputed = match colored {
        Some(k) if k == lower && k == upper => Verdict::Verified,
        Some(k) if k < upper => return Ok(Reverification::fail("coloring beats the recorded upper bound")),
        _ => Verdict::Inconclusive,
    };
    Ok(Reverification::compare(
        cert.verdict,
        recomputed,
        format!("chromatic index in [{lower}, {upper}]"),
    ))
}

fn reverify_coloring(cert: &Certificate, g: &Multigraph) -> Result<Reverification> {
    let Witness::Coloring { text } = &cert.witness else {
        return Err(CertError::Witness("expected a coloring witness".into()));
    };
    let c = parse_coloring(g, text).map_err(witness_err)?;
    let (recomputed, detail) = match verify_coloring(g, &c).map_err(witness_err)? {
        None => (Verdict::Verified, format!("{} {}-coloring", c.mode.as_str(), c.palette)),
        Some(v) => (Verdict::Refuted, v.to_string()),
    };
    Ok(Reverification::compare(cert.verdict, recomputed, detail))
}

fn reverify_parity(cert: &Certificate, g: &Multigraph) -> Result<Reverification> {
    let Witness::Coloring { text } = &cert.witness else {
        return Err(CertError::Witness("expected a coloring witness".into()));
    };
    let c = parse_coloring(g, text).map_err(witness_err)?;
    let sides_text = cert.get("sides").unwrap_or("");
    let mut sides = Vec::new();
    for side in sides_text.split(';').filter(|s| !s.is_empty()) {
        let mut set = std::collections::BTreeSet::new();
        for name in side.split_whitespace() {
            set.insert(g.require_vertex(name).map_err(witness_err)?);
        }
        sides.push(set);
    }
    if sides.len() != cert.usize_param("cuts")? {
        return Err(CertError::Witness("cut count mismatch".into()));
    }
    let again = parity_lemma_check(g, &c, &sides).map_err(witness_err)?;
    let detail = again
        .notes
        .first()
        .cloned()
        .unwrap_or_else(|| format!("{} cuts satisfy parity", sides.len()));
    Ok(Reverification::compare(cert.verdict, again.verdict, detail))
}

fn reverify_balanced(cert: &Certificate, g: &Multigraph) -> Result<Reverification> {
    let Some(Witness::Valuation { text }) = cert.part("valuation") else {
        return Err(CertError::Witness("missing valuation".into()));
    };
    let omega = parse_valuation(g, text).map_err(witness_err)?;
    if let Some(Witness::Subset { vertices, .. }) = cert.part("violation") {
        // A violating side is checked directly.
        let mut side = std::collections::BTreeSet::new();
        for name in vertices {
            side.insert(g.require_vertex(name).map_err(witness_err)?);
        }
        let sum: Rational = side.iter().map(|&v| omega.values[v]).sum();
        let cut = g.edge_cut(&side).map_err(witness_err)?.len();
        let violated = sum.abs() > Rational::from_integer(cut as i64);
        let recomputed = if violated { Verdict::Refuted } else { Verdict::Verified };
        return Ok(Reverification::compare(
            cert.verdict,
            recomputed,
            format!(
                "side of {} vertices: |sum| = {}, cut {cut}",
                side.len(),
                format_rational(&sum.abs())
            ),
        ));
    }
    let outcome = check_balanced(g, &omega).map_err(witness_err)?;
    let recomputed = if outcome.is_balanced() {
        Verdict::Verified
    } else {
        Verdict::Refuted
    };
    Ok(Reverification::compare(
        cert.verdict,
        recomputed,
        "all sides enumerated",
    ))
}

fn reverify_inequality(cert: &Certificate, g: &Multigraph) -> Result<Reverification> {
    let t = cert.usize_param("t")?;
    let r = cert.rational_param("r")?;
    let bound = cert.rational_param("bound")?;
    let ids = split_list(cert.get("matching").unwrap_or(""));
    let m = parse_matching(&ids)?;
    let Some(Witness::Flow { text }) = cert.part("flow") else {
        return Err(CertError::Witness("missing flow".into()));
    };
    let (flow, v) = flow_outcome(g, text)?;
    if let Some(v) = v {
        return Ok(Reverification::fail(format!("flow on G is invalid: {v}")));
    }
    if flow.r != r {
        return Ok(Reverification::fail("flow is not at the recorded r"));
    }
    let bip = flow_to_bipartition(g, &flow).map_err(witness_err)?;
    if !bip.pairs(g, &m).map_err(witness_err)? {
        return Ok(Reverification::compare(
            cert.verdict,
            Verdict::Refuted,
            "matching does not pair black and white",
        ));
    }
    let h = g.add_matching_copies(&m, 2 * t - 2).map_err(witness_err)?;
    let recomputed = match cert.part("h-flow") {
        Some(Witness::Flow { text }) => {
            let (hf, hv) = flow_outcome(&h, text)?;
            if hf.r != bound {
                return Ok(Reverification::fail("bound flow is not at the recorded bound"));
            }
            if hv.is_none() {
                Verdict::Verified
            } else {
                Verdict::Refuted
            }
        }
        _ => Verdict::Refuted,
    };
    Ok(Reverification::compare(
        cert.verdict,
        recomputed,
        format!("flow on H at {}", format_rational(&bound)),
    ))
}

/// Graph text for embedding in a witness.
pub fn graph_text(g: &Multigraph) -> String {
    write_graph(g)
}
