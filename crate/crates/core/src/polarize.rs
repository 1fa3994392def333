//! Covering-pair polarizations and pole certification.
//!
//! Given an edge-dual labeling of a stable dual graph at an even level, a
//! covering pair assigns each node half a perturbation `e_x` drawn from the
//! admissible two-element set of its weight (or the midpoint), with the two
//! halves of every node summing to zero, and gives each component the degree
//!
//! `deg_i = level * ((2 g_i - 2 + n_i)/2 + sum of e_x over halves on i)`.
//!
//! The pole ledger audits, node by node, the three contributions to the order
//! of pole of a section pushed across a one-parameter degeneration: the
//! transfer term from twisting by `t^{f(i)}` per component, the matrix
//! coefficient bound for diagonal gluing data, and the determinant term from
//! the node quotient. Whenever every `e_x` lies in its admissible interval,
//! every per-node total is nonpositive, certifying that the section extends.
//!
//! Also here: multi-component slope semistability in its linear form, the
//! weight translation between polarization data and ample twists, and the
//! uniform-rank limit form.

use num_traits::{Signed, Zero};

use crate::curve::{DualGraph, EdgeLabeling};
use crate::rat::{is_integral, rat_int, Rat};
use crate::snf::SmithDecomposition;
use crate::weights::{epsilon_midpoint, epsilon_pair, Weight};
use crate::{Error, Result};

/// Which element of the admissible set a node half takes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EpsilonChoice {
    Low,
    High,
    Midpoint,
}

/// Per-node choices, or one choice for every node.
#[derive(Clone, Debug)]
pub enum ChoiceSpec {
    Uniform(EpsilonChoice),
    PerNode(Vec<EpsilonChoice>),
}

impl ChoiceSpec {
    fn at(&self, node: usize) -> EpsilonChoice {
        match self {
            ChoiceSpec::Uniform(c) => *c,
            ChoiceSpec::PerNode(v) => v[node],
        }
    }

    fn has_endpoint(&self, nodes: usize) -> bool {
        (0..nodes).any(|i| self.at(i) != EpsilonChoice::Midpoint)
    }
}

/// One node of a covering pair: component indices of the two halves, the
/// weight on the first half (dual on the second), and its perturbation.
#[derive(Clone, Debug)]
pub struct NodeData {
    pub comp_a: usize,
    pub comp_b: usize,
    pub weight: Weight,
    pub epsilon_a: Rat,
}

/// Per-component polarization data.
#[derive(Clone, Debug)]
pub struct ComponentData {
    pub genus: u32,
    pub node_halves: usize,
    /// `deg(G_i)`, with `rk(G) = level`.
    pub degree: Rat,
    /// `deg(G_i) / rk(G)`, which equals `(g - 1) a_i`.
    pub normalized_degree: Rat,
    /// `a_i` itself (the curve has arithmetic genus at least 2).
    pub a_weight: Rat,
    pub integral: bool,
}

#[derive(Clone, Debug)]
pub struct CoveringPair {
    pub level: u32,
    pub genus: u32,
    pub nodes: Vec<NodeData>,
    pub components: Vec<ComponentData>,
}

impl CoveringPair {
    /// Parity vector in `(Z/2)^components`: 1 marks a half-integral degree.
    pub fn trace(&self) -> Vec<u8> {
        self.components
            .iter()
            .map(|c| if c.integral { 0 } else { 1 })
            .collect()
    }

    pub fn all_integral(&self) -> bool {
        self.components.iter().all(|c| c.integral)
    }

    /// `sum_i deg(G_i)/rk(G)`, which equals `g - 1` since node perturbations
    /// cancel in pairs.
    pub fn total_normalized_degree(&self) -> Rat {
        self.components
            .iter()
            .map(|c| c.normalized_degree.clone())
            .sum()
    }
}

/// Builds the covering pair for a labeling. Endpoint choices require an even
/// level; the midpoint accepts any level and may produce half-integral
/// degrees, reported through the integrality flags and trace vector.
pub fn build_covering_pair(
    graph: &DualGraph,
    level: u32,
    labeling: &EdgeLabeling,
    choice: &ChoiceSpec,
) -> Result<CoveringPair> {
    let genus = graph.validate_genus_at_least(2)?;
    if level == 0 {
        return Err(Error::BadInput("covering pairs require level >= 1".into()));
    }
    let edges = graph.edges();
    if labeling.edge_weights.len() != edges.len() {
        return Err(Error::BadInput(format!(
            "labeling has {} weights for {} edges",
            labeling.edge_weights.len(),
            edges.len()
        )));
    }
    if choice.has_endpoint(edges.len()) && level % 2 != 0 {
        return Err(Error::OddLevelEndpoint(level));
    }

    let mut nodes = Vec::with_capacity(edges.len());
    for (e, &(a, b)) in edges.iter().enumerate() {
        let w = &labeling.edge_weights[e];
        let epsilon_a = match choice.at(e) {
            EpsilonChoice::Low => epsilon_pair(w, level)?.low,
            EpsilonChoice::High => epsilon_pair(w, level)?.high,
            EpsilonChoice::Midpoint => epsilon_midpoint(w, level)?,
        };
        nodes.push(NodeData {
            comp_a: a,
            comp_b: b,
            weight: w.clone(),
            epsilon_a,
        });
    }

    let mut components = Vec::with_capacity(graph.vertex_count());
    for v in 0..graph.vertex_count() {
        let g_v = graph.genus_of(v);
        let mut halves = 0usize;
        let mut eps_sum = Rat::zero();
        for node in &nodes {
            if node.comp_a == v {
                halves += 1;
                eps_sum += node.epsilon_a.clone();
            }
            if node.comp_b == v {
                halves += 1;
                eps_sum -= node.epsilon_a.clone();
            }
        }
        let canonical_half = Rat::new((2 * g_v as i64 - 2 + halves as i64).into(), 2.into());
        let normalized = canonical_half + eps_sum;
        let degree = &normalized * rat_int(level as i64);
        let a_weight = &normalized / rat_int(genus as i64 - 1);
        components.push(ComponentData {
            genus: g_v,
            node_halves: halves,
            integral: is_integral(&degree),
            degree,
            normalized_degree: normalized,
            a_weight,
        });
    }

    Ok(CoveringPair {
        level,
        genus,
        nodes,
        components,
    })
}

/// Bound for the order of pole of a matrix coefficient `v*(g_t v)` with
/// diagonal gluing data: `(m_1 - m_r)|b| - m . m*(x_{r-1})`, verified exactly
/// equal to `(m_1 - m_r)|a| + m . m(x_{r-1})`.
pub fn pole_order_bound(mu: &Weight, alpha: &[u32], beta: &[u32], m: i64) -> Result<Rat> {
    let asum: i64 = alpha.iter().map(|&x| x as i64).sum();
    let bsum: i64 = beta.iter().map(|&x| x as i64).sum();
    if m + asum != bsum {
        return Err(Error::InconsistentExponents(format!(
            "m + |alpha| = {} + {} does not equal |beta| = {}",
            m, asum, bsum
        )));
    }
    let spread = rat_int(mu.level() as i64);
    let via_beta = &spread * rat_int(bsum) - rat_int(m) * mu.dual().x_pairing();
    let via_alpha = &spread * rat_int(asum) + rat_int(m) * mu.x_pairing();
    debug_assert_eq!(via_beta, via_alpha);
    Ok(via_beta)
}

/// One node's pole accounting: the three contributions and their sum.
#[derive(Clone, Debug)]
pub struct NodeLedger {
    /// Transfer term from twisting components by `t^{f(i)}`.
    pub transfer: Rat,
    /// Upper bound for the matrix-coefficient (Peter-Weyl) term.
    pub coefficient_bound: Rat,
    /// Determinant term of the node quotient.
    pub determinant: Rat,
    pub total: Rat,
}

#[derive(Clone, Debug)]
pub struct PoleLedger {
    pub nodes: Vec<NodeLedger>,
}

impl PoleLedger {
    /// The certificate holds when every per-node total is nonpositive.
    pub fn certifies(&self) -> bool {
        self.nodes.iter().all(|n| !n.total.is_positive())
    }

    pub fn total(&self) -> Rat {
        self.nodes.iter().map(|n| n.total.clone()).sum()
    }
}

/// Audits the pole contributions of a covering pair against per-component
/// lift exponents `f` and per-node diagonal exponent data `(alpha, beta)`.
///
/// Consistency demands `f(a) + |alpha| = f(b) + |beta|` at every node. The
/// ledger's per-node totals are all nonpositive whenever each perturbation
/// lies in its admissible interval, which holds for every covering pair
/// built by [`build_covering_pair`].
pub fn pole_certificate(
    cp: &CoveringPair,
    f: &[u32],
    exponents: &[(Vec<u32>, Vec<u32>)],
) -> Result<PoleLedger> {
    if f.len() != cp.components.len() {
        return Err(Error::InconsistentExponents(format!(
            "{} lift exponents for {} components",
            f.len(),
            cp.components.len()
        )));
    }
    if exponents.len() != cp.nodes.len() {
        return Err(Error::InconsistentExponents(format!(
            "{} exponent pairs for {} nodes",
            exponents.len(),
            cp.nodes.len()
        )));
    }
    let level = rat_int(cp.level as i64);
    let mut nodes = Vec::with_capacity(cp.nodes.len());
    for (node, (alpha, beta)) in cp.nodes.iter().zip(exponents) {
        let fa = f[node.comp_a] as i64;
        let fb = f[node.comp_b] as i64;
        let asum: i64 = alpha.iter().map(|&x| x as i64).sum();
        let bsum: i64 = beta.iter().map(|&x| x as i64).sum();
        if fa + asum != fb + bsum {
            return Err(Error::InconsistentExponents(format!(
                "node: f(a) + |alpha| = {} but f(b) + |beta| = {}",
                fa + asum,
                fb + bsum
            )));
        }
        let m = fa - fb;
        let transfer =
            &level * (Rat::new((fa + fb).into(), 2.into()) + &node.epsilon_a * rat_int(m));
        let coefficient_bound = pole_order_bound(&node.weight, alpha, beta, m)?;
        let determinant = -&level * rat_int(fa + asum);
        let total = &transfer + &coefficient_bound + &determinant;
        nodes.push(NodeLedger {
            transfer,
            coefficient_bound,
            determinant,
            total,
        });
    }
    Ok(PoleLedger { nodes })
}

/// Extracts the exponent list for one node half from the Smith normal form of
/// its matrix, for the end-to-end path matrix -> normal form -> ledger.
pub fn exponents_from_snf(snf: &SmithDecomposition) -> Result<Vec<u32>> {
    snf.t_power_exponents().ok_or_else(|| {
        Error::InconsistentExponents("invariant factors are not powers of t".into())
    })
}

/// Multi-rank and Euler characteristic of a sheaf on the components of a
/// curve, for both the ambient object and candidate subsheaves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheafData {
    pub ranks: Vec<u32>,
    pub euler: i64,
}

impl SheafData {
    pub fn new(ranks: Vec<u32>, euler: i64) -> SheafData {
        SheafData { ranks, euler }
    }

    fn weighted_rank(&self, gamma: &[Rat]) -> Rat {
        self.ranks
            .iter()
            .zip(gamma)
            .map(|(&r, g)| g * rat_int(r as i64))
            .sum()
    }
}

/// Linear semistability: requires `chi(E) = sum gamma_i r_i(E)` exactly, then
/// checks `chi(F) <= sum gamma_i r_i(F)` for every supplied subsheaf.
pub fn linear_semistable(e: &SheafData, subsheaves: &[SheafData], gamma: &[Rat]) -> Result<bool> {
    if gamma.len() != e.ranks.len() {
        return Err(Error::BadInput(format!(
            "{} weights for {} components",
            gamma.len(),
            e.ranks.len()
        )));
    }
    if rat_int(e.euler) != e.weighted_rank(gamma) {
        return Err(Error::EulerMismatch);
    }
    Ok(subsheaves
        .iter()
        .all(|f| rat_int(f.euler) <= f.weighted_rank(gamma)))
}

/// Slope semistability with possibly negative weights: reduces to the linear
/// form with `gamma_i = a_i * slope(E)` where `slope(E) = chi(E) / sum a_i r_i(E)`.
pub fn a_semistable(e: &SheafData, subsheaves: &[SheafData], a: &[Rat]) -> Result<bool> {
    if a.len() != e.ranks.len() {
        return Err(Error::BadInput(format!(
            "{} weights for {} components",
            a.len(),
            e.ranks.len()
        )));
    }
    let denom = e.weighted_rank(a);
    if denom.is_zero() {
        return Err(Error::SlopeUndefined);
    }
    let slope = rat_int(e.euler) / denom;
    let gamma: Vec<Rat> = a.iter().map(|ai| ai * &slope).collect();
    linear_semistable(e, subsheaves, &gamma)
}

/// Uniform-multirank limit form: `chi(F)/r' <= chi(E)/r` for all supplied
/// uniform subsheaf data.
pub fn limit_semistable(e: &SheafData, subsheaves: &[SheafData]) -> Result<bool> {
    let r = uniform_rank(e)?;
    if r == 0 {
        return Err(Error::NonUniformRank);
    }
    let slope_e = Rat::new(e.euler.into(), (r as i64).into());
    for f in subsheaves {
        let rf = uniform_rank(f)?;
        if rf == 0 {
            continue;
        }
        if Rat::new(f.euler.into(), (rf as i64).into()) > slope_e {
            return Ok(false);
        }
    }
    Ok(true)
}

fn uniform_rank(s: &SheafData) -> Result<u32> {
    let r = s.ranks.first().copied().unwrap_or(0);
    if s.ranks.iter().any(|&x| x != r) {
        return Err(Error::NonUniformRank);
    }
    Ok(r)
}

/// Translates polarization weights into integral twist weights:
/// `alpha_i = scale * (deg_i(L) - a_i (g-1) / sum a_j)`.
pub fn twist_alpha_from_a(a: &[Rat], deg_l: &[i64], genus: u32, scale: i64) -> Result<Vec<i64>> {
    if a.len() != deg_l.len() {
        return Err(Error::BadInput(format!(
            "{} weights for {} degrees",
            a.len(),
            deg_l.len()
        )));
    }
    let total: Rat = a.iter().cloned().sum();
    if !total.is_positive() {
        return Err(Error::BadInput("sum of a_i must be positive".into()));
    }
    let gm1 = rat_int(genus as i64 - 1);
    let s = rat_int(scale);
    let mut out = Vec::with_capacity(a.len());
    for (i, (ai, &dl)) in a.iter().zip(deg_l).enumerate() {
        let v = &s * (rat_int(dl) - ai * &gm1 / &total);
        if !is_integral(&v) {
            return Err(Error::NonIntegralTwist {
                index: i,
                value: crate::rat::format_rat(&v),
            });
        }
        out.push(v.numer().try_into().map_err(|_| {
            Error::BadInput("twist weight exceeds machine integers".into())
        })?);
    }
    Ok(out)
}
