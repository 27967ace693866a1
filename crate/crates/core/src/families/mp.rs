use std::collections::HashMap;

use crate::graph::{EdgeId, Multigraph};

use super::{FamilyError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MpStage {
    /// `M_p` as built by identifying junctions and adding the hub.
    Base,
    /// `M_p′`: each `v_{4p}^i` split into `x^i` and suppressed divalent vertices.
    Prime,
    /// `M̃_p`: each junction split along the thrice-seen color, then suppressed.
    Tilde,
}

impl std::str::FromStr for MpStage {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "base" | "mp" => Ok(MpStage::Base),
            "prime" => Ok(MpStage::Prime),
            "tilde" => Ok(MpStage::Tilde),
            _ => Err(FamilyError::InvalidParameter(format!("unknown stage `{s}`"))),
        }
    }
}

/// Naming scheme and label bookkeeping shared by all stages.
///
/// Copy `i ∈ 1..=4p+1` holds `v[k]@i` for `k ∈ 1..=4p` (with `v[4p]@i` renamed
/// `x@i` from stage `Prime` on). Junction `c[i]` is `z1` of copy `i` and `z2`
/// of copy `i-1`; the hub is `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MpLayout {
    pub p: usize,
}

impl MpLayout {
    pub fn t(&self) -> usize {
        (self.p - 1) / 2
    }

    pub fn copies(&self) -> usize {
        4 * self.p + 1
    }

    /// `8t + 3`, the modulus of the cyclic labeling of `K_{4p} - ∞`.
    pub fn modulus(&self) -> usize {
        8 * self.t() + 3
    }

    /// Junction `c_i`; indices wrap into `1..=4p+1`.
    pub fn junction(&self, i: usize) -> String {
        format!("c[{}]", self.wrap(i))
    }

    pub fn wrap(&self, i: usize) -> usize {
        (i + self.copies() - 1) % self.copies() + 1
    }

    pub fn vertex(&self, k: usize, i: usize, stage: MpStage) -> String {
        if k == 4 * self.p && stage != MpStage::Base {
            format!("x@{i}")
        } else {
            format!("v[{k}]@{i}")
        }
    }

    /// Triangle triples on `v_1 … v_{3(p-1)}`: consecutive triples.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        (0..self.p - 1).map(|j| [3 * j + 1, 3 * j + 2, 3 * j + 3]).collect()
    }

    /// Cyclic label of `v_k` in `Z_{8t+3} ∪ {∞}`; `None` is `∞`.
    ///
    /// Triangle triples map onto `(t+2+j, t+3+j, t+4+j)` and their negatives;
    /// `v_{6t+1} … v_{8t+3}` map onto `0, …, t+1, -(t+1), …, -1`.
    pub fn label(&self, k: usize) -> Option<usize> {
        let t = self.t();
        let n = self.modulus();
        let neg = |x: usize| (n - x % n) % n;
        assert!((1..=4 * self.p).contains(&k), "vertex index out of range");
        if k == 4 * self.p {
            return None;
        }
        Some(if k <= 3 * t {
            t + 1 + k
        } else if k <= 6 * t {
            neg(t + 1 + (k - 3 * t))
        } else if k <= 7 * t + 2 {
            k - 6 * t - 1
        } else {
            neg(t + 1 - (k - 7 * t - 3))
        })
    }

    /// Inverse of [`label`](Self::label).
    pub fn index_of_label(&self, label: Option<usize>) -> usize {
        (1..=4 * self.p)
            .find(|&k| self.label(k) == label)
            .expect("label bijection")
    }

    /// Vertices joined to both junctions of their copy: `v_{3p-2} … v_{4p-1}`.
    pub fn junction_neighbors(&self) -> std::ops::RangeInclusive<usize> {
        3 * self.p - 2..=4 * self.p - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MpFamily {
    pub p: usize,
    pub stage: MpStage,
    pub graph: Multigraph,
    pub layout: MpLayout,
}

fn check_p(p: usize) -> Result<()> {
    if p < 3 || p % 2 == 0 {
        return Err(FamilyError::InvalidParameter(format!(
            "p must be an odd integer >= 3, got {p}"
        )));
    }
    Ok(())
}

fn eid(s: String) -> EdgeId {
    EdgeId::new(s).expect("generated id")
}

fn build_base(layout: MpLayout) -> Result<Multigraph> {
    let p = layout.p;
    let q = layout.copies();
    let mut g = Multigraph::new();
    for i in 1..=q {
        for k in 1..=4 * p {
            g.add_vertex(layout.vertex(k, i, MpStage::Base))?;
        }
    }
    for i in 1..=q {
        g.add_vertex(layout.junction(i))?;
    }
    let hub = g.add_vertex("w")?;
    let v = |k: usize, i: usize| (i - 1) * 4 * p + (k - 1);
    let c = |i: usize| q * 4 * p + layout.wrap(i) - 1;
    for i in 1..=q {
        for a in 1..=4 * p {
            for b in a + 1..=4 * p {
                g.add_edge_idx(eid(format!("k[{a},{b}]@{i}")), v(a, i), v(b, i))?;
            }
        }
        for tri in layout.triangles() {
            for (x, y) in [(tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])] {
                g.add_edge_idx(eid(format!("t[{x},{y}]@{i}")), v(x, i), v(y, i))?;
            }
        }
        let (z1, z2) = (c(i), c(i + 1));
        g.add_edge_idx(eid(format!("zz@{i}")), z1, z2)?;
        for r in 1..=p - 2 {
            g.add_edge_idx(eid(format!("xz1.{r}@{i}")), v(4 * p, i), z1)?;
            g.add_edge_idx(eid(format!("xz2.{r}@{i}")), v(4 * p, i), z2)?;
        }
        for k in layout.junction_neighbors() {
            g.add_edge_idx(eid(format!("z1[{k}]@{i}")), v(k, i), z1)?;
            g.add_edge_idx(eid(format!("z2[{k}]@{i}")), v(k, i), z2)?;
        }
    }
    for i in 1..=q {
        g.add_edge_idx(eid(format!("h[{i}]")), c(i), hub)?;
    }
    Ok(g)
}

/// Splits every `v_{4p}^i` into `x^i` (all `K_{4p}` edges plus one edge to
/// each junction) and `p - 3` divalent vertices on the remaining junction
/// pairs, then suppresses the divalent vertices.
fn expand_prime(base: &Multigraph, layout: MpLayout) -> Result<Multigraph> {
    let p = layout.p;
    let mut g = base.clone();
    for i in 1..=layout.copies() {
        let centre = layout.vertex(4 * p, i, MpStage::Base);
        let x = layout.vertex(4 * p, i, MpStage::Prime);
        let ci = g.require_vertex(&centre)?;
        let mut replacement = Multigraph::new();
        replacement.add_vertex(x.clone())?;
        for r in 1..=p.saturating_sub(3) {
            replacement.add_vertex(format!("s[{r}]@{i}"))?;
        }
        let mut attach: HashMap<EdgeId, String> = HashMap::new();
        for &e in g.incident(ci) {
            let id = g.edge(e).id.clone();
            let target = match id.base().strip_prefix("xz1.").or(id.base().strip_prefix("xz2.")) {
                Some(rest) => {
                    let r: usize = rest.split('@').next().unwrap().parse().unwrap();
                    if r == 1 {
                        x.clone()
                    } else {
                        format!("s[{}]@{i}", r - 1)
                    }
                }
                None => x.clone(),
            };
            attach.insert(id, target);
        }
        g = g.expand_vertex(&centre, &replacement, &attach)?;
    }
    Ok(g.suppress_divalent()?)
}

/// `M_p`, `M_p′` or `M̃_p` for odd `p >= 3`.
///
/// `Tilde` runs the coloring construction, since the split at each junction
/// is guided by the coloring.
pub fn mp_graph(p: usize, stage: MpStage) -> Result<MpFamily> {
    check_p(p)?;
    let layout = MpLayout { p };
    let graph = match stage {
        MpStage::Base => build_base(layout)?,
        MpStage::Prime => expand_prime(&build_base(layout)?, layout)?,
        MpStage::Tilde => {
            let (g, _) = crate::colorings::mp_tilde_coloring(layout.t())
                .map_err(|e| FamilyError::InvalidParameter(e.to_string()))?;
            g
        }
    };
    Ok(MpFamily {
        p,
        stage,
        graph,
        layout,
    })
}
