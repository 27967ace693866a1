//! Edge-colorings: verification, exact chromatic index, the Parity Lemma,
//! and the explicit colorings behind the `M_p` and flower constructions.

mod class2;
mod flower;
mod format;
mod mp;
mod solver;

pub(crate) use class2::reverify_class;
pub use class2::{
    class_property, dot_product_class2_prover, relabel_class_certificate, seed_class2_certificate, ClassWhich, DotCut,
    Reduced,
};
pub use flower::{
    compute_gadget_table, flower_plus_m_coloring, gadget_table, transition_claim_check, transition_types, GadgetKey,
    GadgetTable, TransitionType, FLOWER_GADGET,
};
pub use format::{parse_coloring, write_coloring, COLORING_HEADER};
pub use mp::{k4p_one_factorization, mp_prime_coloring, mp_tilde_coloring, MpColoring};
pub use solver::{chromatic_index, replay_refutation, try_color, Budget, ChromaticIndex, ColorSearch, RefutationTrace};

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::certificates::{Certificate, ClaimKind, Verdict, Witness};
use crate::graph::{GraphError, Multigraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("coloring covers {got} edges but the graph has {expected}")]
    Coverage { expected: usize, got: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub type Result<T> = std::result::Result<T, ColoringError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ColoringMode {
    /// Adjacent edges differ.
    Proper,
    /// Every vertex sees every color an odd number of times.
    SeesOdd,
}

impl ColoringMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ColoringMode::Proper => "proper",
            ColoringMode::SeesOdd => "sees-odd",
        }
    }
}

/// A color in `0..palette` per edge index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    pub palette: usize,
    pub mode: ColoringMode,
    pub colors: Vec<u32>,
}

impl EdgeColoring {
    pub fn proper(palette: usize, colors: Vec<u32>) -> Self {
        EdgeColoring {
            palette,
            mode: ColoringMode::Proper,
            colors,
        }
    }

    /// Number of distinct colors actually used.
    pub fn used_colors(&self) -> usize {
        self.colors.iter().collect::<BTreeSet<_>>().len()
    }

    /// Colors of the edges of `g` at `v`, with repetition.
    pub fn seen(&self, g: &Multigraph, v: usize) -> Vec<u32> {
        g.incident(v).iter().map(|&e| self.colors[e]).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColoringViolation {
    OutOfPalette {
        edge: String,
        color: u32,
    },
    Clash {
        vertex: String,
        edges: (String, String),
        color: u32,
    },
    EvenCount {
        vertex: String,
        color: u32,
        count: usize,
    },
}

impl fmt::Display for ColoringViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColoringViolation::OutOfPalette { edge, color } => {
                write!(f, "edge `{edge}` has color {color} outside the palette")
            }
            ColoringViolation::Clash { vertex, edges, color } => {
                write!(
                    f,
                    "edges `{}` and `{}` share color {color} at `{vertex}`",
                    edges.0, edges.1
                )
            }
            ColoringViolation::EvenCount { vertex, color, count } => {
                write!(f, "`{vertex}` sees color {color} {count} times")
            }
        }
    }
}

fn check_coverage(g: &Multigraph, c: &EdgeColoring) -> Result<()> {
    if c.colors.len() != g.edge_count() {
        return Err(ColoringError::Coverage {
            expected: g.edge_count(),
            got: c.colors.len(),
        });
    }
    Ok(())
}

fn palette_violation(g: &Multigraph, c: &EdgeColoring) -> Option<ColoringViolation> {
    c.colors
        .iter()
        .position(|&x| x as usize >= c.palette)
        .map(|e| ColoringViolation::OutOfPalette {
            edge: g.edge(e).id.to_string(),
            color: c.colors[e],
        })
}

/// First pair of equal-colored edges at a common vertex, in vertex order.
pub fn is_proper(g: &Multigraph, c: &EdgeColoring) -> Result<Option<ColoringViolation>> {
    check_coverage(g, c)?;
    if let Some(v) = palette_violation(g, c) {
        return Ok(Some(v));
    }
    for v in g.vertices() {
        let mut first: Vec<Option<usize>> = vec![None; c.palette];
        for &e in g.incident(v) {
            let col = c.colors[e] as usize;
            if let Some(prev) = first[col] {
                return Ok(Some(ColoringViolation::Clash {
                    vertex: g.vertex_name(v).to_string(),
                    edges: (g.edge(prev).id.to_string(), g.edge(e).id.to_string()),
                    color: col as u32,
                }));
            }
            first[col] = Some(e);
        }
    }
    Ok(None)
}

/// First `(vertex, color)` seen an even number of times (zero included).
pub fn sees_odd_violation(g: &Multigraph, c: &EdgeColoring) -> Result<Option<ColoringViolation>> {
    check_coverage(g, c)?;
    if let Some(v) = palette_violation(g, c) {
        return Ok(Some(v));
    }
    for v in g.vertices() {
        let mut count = vec![0usize; c.palette];
        for col in c.seen(g, v) {
            count[col as usize] += 1;
        }
        if let Some(col) = count.iter().position(|k| k % 2 == 0) {
            return Ok(Some(ColoringViolation::EvenCount {
                vertex: g.vertex_name(v).to_string(),
                color: col as u32,
                count: count[col],
            }));
        }
    }
    Ok(None)
}

/// Verifies the coloring in its own mode.
pub fn verify_coloring(g: &Multigraph, c: &EdgeColoring) -> Result<Option<ColoringViolation>> {
    match c.mode {
        ColoringMode::Proper => is_proper(g, c),
        ColoringMode::SeesOdd => sees_odd_violation(g, c),
    }
}

/// Checks `|C ∩ c⁻¹(i)| ≡ |C| (mod 2)` for every cut side and color.
///
/// `g` must be regular and `c` a proper coloring with exactly `Δ` colors;
/// a failed congruence is reported as a refuted certificate.
pub fn parity_lemma_check(g: &Multigraph, c: &EdgeColoring, sides: &[BTreeSet<usize>]) -> Result<Certificate> {
    let delta = g
        .regular_degree()
        .ok_or_else(|| ColoringError::Precondition("graph is not regular".into()))?;
    if c.palette != delta {
        return Err(ColoringError::Precondition(format!(
            "palette {} differs from the degree {delta}",
            c.palette
        )));
    }
    if let Some(v) = is_proper(g, c)? {
        return Err(ColoringError::Precondition(format!("coloring is not proper: {v}")));
    }
    let mut failure = None;
    'cuts: for (k, side) in sides.iter().enumerate() {
        let cut = g.edge_cut(side)?;
        let mut count = vec![0usize; delta];
        for &e in &cut.edges {
            count[c.colors[e] as usize] += 1;
        }
        for (col, &n) in count.iter().enumerate() {
            if n % 2 != cut.len() % 2 {
                failure = Some(format!("cut {k}: color {col} appears {n} times on {} edges", cut.len()));
                break 'cuts;
            }
        }
    }
    let verdict = if failure.is_none() {
        Verdict::Verified
    } else {
        Verdict::Refuted
    };
    let mut cert = Certificate::new(
        ClaimKind::Parity,
        g,
        verdict,
        Witness::Coloring {
            text: write_coloring(g, c),
        },
    );
    cert.param("cuts", sides.len());
    cert.param(
        "sides",
        sides
            .iter()
            .map(|s| {
                s.iter()
                    .map(|&v| g.vertex_name(v).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join(";"),
    );
    if let Some(f) = failure {
        cert.notes.push(f);
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete_graph, petersen};

    #[test]
    fn single_edge_and_parallel_pair() {
        let mut g = Multigraph::new();
        g.add_edge("e", "u", "v").unwrap();
        assert_eq!(is_proper(&g, &EdgeColoring::proper(1, vec![0])).unwrap(), None);
        g.add_edge("f", "u", "v").unwrap();
        let v = is_proper(&g, &EdgeColoring::proper(1, vec![0, 0])).unwrap().unwrap();
        assert!(matches!(v, ColoringViolation::Clash { color: 0, .. }));
    }

    #[test]
    fn coverage_is_checked() {
        let g = petersen();
        assert!(matches!(
            is_proper(&g, &EdgeColoring::proper(4, vec![0; 3])),
            Err(ColoringError::Coverage { expected: 15, got: 3 })
        ));
    }

    #[test]
    fn parity_on_k6_all_cuts() {
        let g = complete_graph(6).unwrap();
        let chi = chromatic_index(&g, &Budget::unlimited()).unwrap();
        let c = chi.coloring.unwrap();
        let sides: Vec<BTreeSet<usize>> = (1u32..(1 << 5))
            .map(|mask| (0..6).filter(|&v| mask >> v & 1 == 1).collect())
            .collect();
        let cert = parity_lemma_check(&g, &c, &sides).unwrap();
        assert_eq!(cert.verdict, Verdict::Verified);
    }

    #[test]
    fn parity_rejects_excess_palette() {
        let g = complete_graph(4).unwrap();
        let c = EdgeColoring::proper(6, (0..6).collect());
        assert!(matches!(
            parity_lemma_check(&g, &c, &[]),
            Err(ColoringError::Precondition(_))
        ));
    }
}
