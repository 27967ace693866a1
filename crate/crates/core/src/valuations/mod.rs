//! Balanced valuations, `r`-bipartitions of cubic graphs, and the bound
//! obtained by adding parallel copies of a black-white matching.

mod format;

pub use format::{parse_valuation, write_valuation, VALUATION_HEADER};

use num_traits::One;
use rayon::prelude::*;
use thiserror::Error;

use crate::flows::{circulation_feasible, normalize_signs, Feasibility, FlowError, Orientation, RationalFlow};
use crate::graph::{GraphError, Matching, Multigraph};
use crate::rational::{format_rational, int, Rational};

/// Subset enumeration is exact but exponential; beyond this size callers use
/// a flow witness instead.
pub const SUBSET_CAP: usize = 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValuationError {
    #[error("graph is not cubic")]
    NotCubic,
    #[error("graph has {0} vertices, above the subset-enumeration cap {SUBSET_CAP}")]
    CapExceeded(usize),
    #[error("valuation covers {got} vertices but the graph has {expected}")]
    Coverage { expected: usize, got: usize },
    #[error("r = {0} outside the admissible range")]
    OutOfRange(String),
    #[error("matching edge `{0}` does not join a black and a white vertex")]
    NotPaired(String),
    #[error("flow is not a valid nowhere-zero flow")]
    InvalidFlow,
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Flow(#[from] FlowError),
}

pub type Result<T> = std::result::Result<T, ValuationError>;

/// Black/white partition of the vertex set, indexed by vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bipartition {
    pub black: Vec<bool>,
}

impl Bipartition {
    pub fn black_count(&self) -> usize {
        self.black.iter().filter(|&&b| b).count()
    }

    pub fn white_count(&self) -> usize {
        self.black.len() - self.black_count()
    }

    pub fn swapped(&self) -> Self {
        Bipartition {
            black: self.black.iter().map(|b| !b).collect(),
        }
    }

    /// Whether every matching edge joins a black and a white vertex.
    pub fn pairs(&self, g: &Multigraph, m: &Matching) -> std::result::Result<bool, GraphError> {
        Ok(m.resolve(g)?.into_iter().all(|e| {
            let (a, b) = g.edge(e).ends;
            self.black[a] != self.black[b]
        }))
    }
}

/// `v` is black iff it has two incoming edges once every value is positive.
pub fn flow_to_bipartition(g: &Multigraph, flow: &RationalFlow) -> Result<Bipartition> {
    if g.regular_degree() != Some(3) {
        return Err(ValuationError::NotCubic);
    }
    if crate::flows::check_flow(g, flow)?.is_some() {
        return Err(ValuationError::InvalidFlow);
    }
    let f = normalize_signs(flow);
    let black: Vec<bool> = g.vertices().map(|v| f.orientation.in_degree(g, v) == 2).collect();
    let bip = Bipartition { black };
    debug_assert_eq!(bip.black_count(), bip.white_count());
    Ok(bip)
}

/// `ω(v) = k_v · r/(r-2)` per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedValuation {
    pub values: Vec<Rational>,
}

impl BalancedValuation {
    /// `+s` on black and `-s` on white vertices.
    pub fn signed(bip: &Bipartition, s: Rational) -> Self {
        BalancedValuation {
            values: bip.black.iter().map(|&b| if b { s } else { -s }).collect(),
        }
    }

    /// The cubic valuation `±r/(r-2)` of an `r`-bipartition.
    pub fn from_bipartition(bip: &Bipartition, r: Rational) -> Result<Self> {
        if r <= int(2) {
            return Err(ValuationError::OutOfRange(format_rational(&r)));
        }
        Ok(Self::signed(bip, r / (r - int(2))))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BalanceOutcome {
    Balanced,
    /// The smallest violating side (lowest mask among ties).
    Violated {
        side: Vec<usize>,
        sum: Rational,
        cut: usize,
    },
}

impl BalanceOutcome {
    pub fn is_balanced(&self) -> bool {
        matches!(self, BalanceOutcome::Balanced)
    }
}

/// Adjacency as neighbour lists with multiplicity, as bitmask-friendly data.
struct CutWalker {
    n: usize,
    nbrs: Vec<Vec<usize>>,
}

impl CutWalker {
    fn new(g: &Multigraph) -> Self {
        CutWalker {
            n: g.vertex_count(),
            nbrs: g
                .vertices()
                .map(|v| g.incident(v).iter().map(|&e| g.edge(e).other(v)).collect())
                .collect(),
        }
    }

    /// Visits every nonempty proper subset as `(mask, cut size)`, split into
    /// blocks by the top vertices and walked in Gray-code order inside each.
    fn for_each<T: Send>(
        &self,
        init: impl Fn() -> T + Sync,
        visit: impl Fn(&mut T, u64, usize) + Sync,
        merge: impl Fn(T, T) -> T + Sync + Send,
    ) -> T {
        let n = self.n;
        let high = n.min(6);
        let low = n - high;
        (0u64..1 << high)
            .into_par_iter()
            .map(|h| {
                let mut acc = init();
                let mut inside = vec![false; n];
                for b in 0..high {
                    inside[low + b] = h >> b & 1 == 1;
                }
                let mut cut = 0usize;
                for v in 0..n {
                    for &u in &self.nbrs[v] {
                        if inside[v] && !inside[u] {
                            cut += 1;
                        }
                    }
                }
                let mut mask = h << low;
                for i in 0u64..1 << low {
                    if i > 0 {
                        let v = i.trailing_zeros() as usize;
                        // Flip v: edges to the same side become cut, others uncut.
                        for &u in &self.nbrs[v] {
                            if inside[u] == inside[v] {
                                cut += 1;
                            } else {
                                cut -= 1;
                            }
                        }
                        inside[v] = !inside[v];
                        mask ^= 1 << v;
                    }
                    if mask != 0 && mask != (1u64 << n) - 1 {
                        visit(&mut acc, mask, cut);
                    }
                }
                acc
            })
            .reduce(&init, merge)
    }
}

fn mask_members(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

/// Smaller violation first: fewer vertices, then lower mask.
fn better(a: Option<(u64, Rational, usize)>, b: Option<(u64, Rational, usize)>) -> Option<(u64, Rational, usize)> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => {
            let kx = (x.0.count_ones(), x.0);
            let ky = (y.0.count_ones(), y.0);
            Some(if kx <= ky { x } else { y })
        }
    }
}

/// Checks `|Σ_{v∈X} ω(v)| ≤ |∂(X)|` over every nonempty proper subset.
pub fn check_balanced(g: &Multigraph, omega: &BalancedValuation) -> Result<BalanceOutcome> {
    let n = g.vertex_count();
    if n > SUBSET_CAP {
        return Err(ValuationError::CapExceeded(n));
    }
    if omega.values.len() != n {
        return Err(ValuationError::Coverage {
            expected: n,
            got: omega.values.len(),
        });
    }
    let walker = CutWalker::new(g);
    // Integer numerators over a common denominator keep the inner loop cheap.
    let lcm = omega.values.iter().fold(1i64, |l, v| num_integer::lcm(l, *v.denom()));
    let nums: Vec<i64> = omega.values.iter().map(|v| v.numer() * (lcm / v.denom())).collect();
    let worst = walker.for_each(
        || None,
        |acc: &mut Option<(u64, Rational, usize)>, mask, cut| {
            let sum: i64 = (0..n).filter(|&v| mask >> v & 1 == 1).map(|v| nums[v]).sum();
            if sum.abs() > cut as i64 * lcm {
                *acc = better(acc.take(), Some((mask, Rational::new(sum, lcm), cut)));
            }
        },
        better,
    );
    Ok(match worst {
        None => BalanceOutcome::Balanced,
        Some((mask, sum, cut)) => BalanceOutcome::Violated {
            side: mask_members(mask, n),
            sum,
            cut,
        },
    })
}

/// Least `r` for which `±r/(r-2)` on the bipartition is balanced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlowBound {
    Finite(Rational),
    /// Some side has `|b_X - w_X| ≥ |∂X|`, which no `r > 2` satisfies.
    Unbounded,
}

/// `r = 2s/(s-1)` where `s = min_X |∂X| / |b_X - w_X|`, valid when `s > 1`.
pub fn bipartition_to_flow_bound(g: &Multigraph, bip: &Bipartition) -> Result<FlowBound> {
    let n = g.vertex_count();
    if n > SUBSET_CAP {
        return Err(ValuationError::CapExceeded(n));
    }
    if bip.black.len() != n {
        return Err(ValuationError::Coverage {
            expected: n,
            got: bip.black.len(),
        });
    }
    let walker = CutWalker::new(g);
    let sign: Vec<i64> = bip.black.iter().map(|&b| if b { 1 } else { -1 }).collect();
    let s = walker.for_each(
        || None::<Rational>,
        |acc, mask, cut| {
            let d: i64 = (0..n)
                .filter(|&v| mask >> v & 1 == 1)
                .map(|v| sign[v])
                .sum::<i64>()
                .abs();
            if d > 0 {
                let ratio = Rational::new(cut as i64, d);
                if acc.is_none_or(|a| ratio < a) {
                    *acc = Some(ratio);
                }
            }
        },
        |a, b| match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) | (None, x) => x,
        },
    );
    Ok(match s {
        Some(s) if s > Rational::one() => FlowBound::Finite(int(2) * s / (s - Rational::one())),
        _ => FlowBound::Unbounded,
    })
}

/// `2 + 2(r-2) / (r + (2t-3)(r-2))` for `4 < r < 5`, `t ≥ 1`.
pub fn asymptotic_bound(r: Rational, t: usize) -> Result<Rational> {
    if r <= int(4) || r >= int(5) {
        return Err(ValuationError::OutOfRange(format_rational(&r)));
    }
    if t < 1 {
        return Err(ValuationError::OutOfRange(format!("t = {t}")));
    }
    let two = int(2);
    let k = int(2 * t as i64 - 3);
    Ok(two + two * (r - two) / (r + k * (r - two)))
}

/// Outcome of the matched-bipartition inequality check on `H = G + (2t-2)M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityReport {
    pub t: usize,
    pub r: Rational,
    /// `φ`-bound `2 + 2/(h-1)` with `h = r/(r-2) + 2t - 2`.
    pub bound: Rational,
    pub h_graph: Multigraph,
    /// Whether the subset enumeration ran (`|V| ≤ SUBSET_CAP`).
    pub enumerated: bool,
    /// First subset failing `|∂_G Y| ≥ r/(r-2)|b_Y - w_Y|`, if any.
    pub r_bipartition_violation: Option<Vec<usize>>,
    /// First subset failing `d = |M ∩ ∂ Y| ≥ |b_Y - w_Y|`, if any.
    pub matching_violation: Option<Vec<usize>>,
    /// First subset failing `|∂_H Y| ≥ (r/(r-2) + 2t - 2)|b_Y - w_Y|`, if any.
    pub h_violation: Option<Vec<usize>>,
    /// Nowhere-zero `bound`-flow on `H` under the induced orientation.
    pub flow: Option<RationalFlow>,
}

impl InequalityReport {
    pub fn passed(&self) -> bool {
        self.r_bipartition_violation.is_none()
            && self.matching_violation.is_none()
            && self.h_violation.is_none()
            && self.flow.is_some()
    }
}

/// Orientation of `H` whose in- minus out-degree is `+1` on black and `-1` on
/// white vertices: `G` keeps `d`, the copies of each matching edge alternate.
fn h_orientation(g: &Multigraph, d: &Orientation, h: &Multigraph) -> Orientation {
    let mut out = Orientation::as_stored(h);
    for e in 0..h.edge_count() {
        let edge = h.edge(e);
        let copy = edge.id.copy_index();
        let base_id = crate::graph::EdgeId::new(edge.id.base()).unwrap();
        let ge = g.edge_idx(&base_id).expect("H extends G");
        let forward = d.forward[ge];
        out.forward[e] = if copy % 2 == 0 { forward } else { !forward };
    }
    out
}

/// Verifies the chain of inequalities behind the `G + (2t-2)M` flow bound,
/// by subset enumeration where feasible, and always by an explicit flow.
///
/// `flow` is a nowhere-zero `r`-flow on cubic `g` whose bipartition `m` pairs.
pub fn matched_bipartition_inequality_check(
    g: &Multigraph,
    flow: &RationalFlow,
    m: &Matching,
    t: usize,
) -> Result<InequalityReport> {
    let r = flow.r;
    if t < 1 || r <= int(2) {
        return Err(ValuationError::OutOfRange(format!(
            "t = {t}, r = {}",
            format_rational(&r)
        )));
    }
    let bip = flow_to_bipartition(g, flow)?;
    for e in m.check(g)? {
        let (a, b) = g.edge(e).ends;
        if bip.black[a] == bip.black[b] {
            return Err(ValuationError::NotPaired(g.edge(e).id.to_string()));
        }
    }
    let h = g.add_matching_copies(m, 2 * t - 2)?;
    let s = r / (r - int(2));
    let hs = s + int(2 * t as i64 - 2);
    let bound = int(2) + int(2) / (hs - Rational::one());
    let n = g.vertex_count();
    let mut report = InequalityReport {
        t,
        r,
        bound,
        h_graph: h.clone(),
        enumerated: false,
        r_bipartition_violation: None,
        matching_violation: None,
        h_violation: None,
        flow: None,
    };
    if n <= SUBSET_CAP {
        report.enumerated = true;
        let walker = CutWalker::new(g);
        let in_m: Vec<bool> = g.edges().iter().map(|e| m.contains(&e.id)).collect();
        let sign: Vec<i64> = bip.black.iter().map(|&b| if b { 1 } else { -1 }).collect();
        type Found = [Option<u64>; 3];
        let pick = |a: Option<u64>, b: Option<u64>| match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) | (None, x) => x,
        };
        let found: Found = walker.for_each(
            || [None; 3],
            |acc: &mut Found, mask, cut| {
                let imb = (0..n)
                    .filter(|&v| mask >> v & 1 == 1)
                    .map(|v| sign[v])
                    .sum::<i64>()
                    .abs();
                if imb == 0 {
                    return;
                }
                let d = g
                    .edges()
                    .iter()
                    .zip(&in_m)
                    .filter(|(e, &im)| im && ((mask >> e.ends.0) & 1) != ((mask >> e.ends.1) & 1))
                    .count() as i64;
                let imb_r = int(imb);
                if int(cut as i64) < s * imb_r {
                    acc[0] = pick(acc[0], Some(mask));
                }
                if d < imb {
                    acc[1] = pick(acc[1], Some(mask));
                }
                let h_cut = cut as i64 + (2 * t as i64 - 2) * d;
                if int(h_cut) < hs * imb_r {
                    acc[2] = pick(acc[2], Some(mask));
                }
            },
            |a, b| [pick(a[0], b[0]), pick(a[1], b[1]), pick(a[2], b[2])],
        );
        report.r_bipartition_violation = found[0].map(|x| mask_members(x, n));
        report.matching_violation = found[1].map(|x| mask_members(x, n));
        report.h_violation = found[2].map(|x| mask_members(x, n));
    }
    let positive = normalize_signs(flow);
    let dh = h_orientation(g, &positive.orientation, &h);
    if let Feasibility::Feasible(f) = circulation_feasible(&h, &dh, bound)? {
        report.flow = Some(f);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete_bipartite, complete_graph, petersen};
    use crate::flows::{circular_flow_number, PhiOptions};
    use crate::rational::rat;
    use num_traits::Signed;

    #[test]
    fn k4_bipartition_halves() {
        let g = complete_graph(4).unwrap();
        let phi = circular_flow_number(&g, PhiOptions::default()).unwrap();
        let bip = flow_to_bipartition(&g, &phi.flow).unwrap();
        assert_eq!((bip.black_count(), bip.white_count()), (2, 2));
        let rev = flow_to_bipartition(&g, &phi.flow.reversed()).unwrap();
        assert_eq!(rev, bip.swapped());
    }

    #[test]
    fn bipartite_sides_give_three() {
        let g = complete_bipartite(3).unwrap();
        let side = g.bipartition().unwrap();
        let bip = Bipartition { black: side };
        assert_eq!(bipartition_to_flow_bound(&g, &bip).unwrap(), FlowBound::Finite(int(3)));
        let omega = BalancedValuation::from_bipartition(&bip, int(3)).unwrap();
        assert!(omega.values.iter().all(|v| v.abs() == int(3)));
        assert!(check_balanced(&g, &omega).unwrap().is_balanced());
    }

    #[test]
    fn petersen_optimal_bipartition_gives_five() {
        let g = petersen();
        let phi = circular_flow_number(&g, PhiOptions::default()).unwrap();
        let bip = flow_to_bipartition(&g, &phi.flow).unwrap();
        assert_eq!(bipartition_to_flow_bound(&g, &bip).unwrap(), FlowBound::Finite(int(5)));
        let omega = BalancedValuation::from_bipartition(&bip, int(5)).unwrap();
        assert!(omega.values.iter().all(|v| v.abs() == rat(5, 3)));
        assert!(check_balanced(&g, &omega).unwrap().is_balanced());
    }

    #[test]
    fn all_positive_valuation_is_violated_at_a_vertex() {
        let g = petersen();
        let omega = BalancedValuation {
            values: vec![int(5); 10],
        };
        match check_balanced(&g, &omega).unwrap() {
            BalanceOutcome::Violated { side, sum, cut } => {
                assert_eq!(side.len(), 1);
                assert_eq!((sum, cut), (int(5), 3));
            }
            BalanceOutcome::Balanced => panic!("expected a violation"),
        }
    }

    #[test]
    fn unbalanced_bipartition_is_unbounded() {
        let g = complete_graph(4).unwrap();
        let bip = Bipartition {
            black: vec![true, true, true, false],
        };
        assert_eq!(bipartition_to_flow_bound(&g, &bip).unwrap(), FlowBound::Unbounded);
    }

    #[test]
    fn asymptotic_values() {
        assert_eq!(asymptotic_bound(rat(9, 2), 2).unwrap(), int(2) + rat(5, 7));
        // t = 1: 2 + 5 / (9/2 - 5/2) = 2 + 5/2.
        assert_eq!(asymptotic_bound(rat(9, 2), 1).unwrap(), int(2) + rat(5, 2));
        assert!(asymptotic_bound(int(4), 2).is_err());
        assert!(asymptotic_bound(int(5), 2).is_err());
    }
}
