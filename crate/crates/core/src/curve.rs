//! Dual graphs of stable curves: vertices carry genera, edges are nodes
//! (loops allowed), legs are marked points labeled by weights.
//!
//! An edge labeling assigns a weight to the first half of each edge; the
//! second half always carries the dual weight, so edge-duality holds by
//! construction. Labelings are enumerated in lexicographic order over the
//! level weights, edge by edge, and can be pre-filtered by the per-vertex
//! root-lattice test that forces zero contributions.

use serde::Deserialize;

use crate::weights::{level_weights, Weight};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct DualGraph {
    genera: Vec<u32>,
    edges: Vec<(usize, usize)>,
    legs: Vec<(usize, Weight)>,
}

impl DualGraph {
    pub fn new(
        genera: Vec<u32>,
        edges: Vec<(usize, usize)>,
        legs: Vec<(usize, Weight)>,
    ) -> Result<DualGraph> {
        let g = DualGraph {
            genera,
            edges,
            legs,
        };
        for &(a, b) in &g.edges {
            if a >= g.genera.len() || b >= g.genera.len() {
                return Err(Error::BadInput(format!(
                    "edge ({a},{b}) references a missing vertex"
                )));
            }
        }
        for &(v, _) in &g.legs {
            if v >= g.genera.len() {
                return Err(Error::BadInput(format!(
                    "leg references missing vertex {v}"
                )));
            }
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.genera.len()
    }

    pub fn genus_of(&self, v: usize) -> u32 {
        self.genera[v]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn legs(&self) -> &[(usize, Weight)] {
        &self.legs
    }

    /// Half-edges plus legs incident to a vertex.
    pub fn valence(&self, v: usize) -> usize {
        let half_edges: usize = self
            .edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum();
        let legs = self.legs.iter().filter(|&&(w, _)| w == v).count();
        half_edges + legs
    }

    /// Checks connectivity and per-vertex stability, returning the arithmetic
    /// genus `sum g_i + #edges - #vertices + 1`.
    pub fn validate(&self) -> Result<u32> {
        if self.genera.is_empty() {
            return Err(Error::BadInput("graph has no vertices".into()));
        }
        let n = self.genera.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::Disconnected);
        }
        for v in 0..n {
            if 2 * self.genera[v] as i64 - 2 + self.valence(v) as i64 <= 0 {
                return Err(Error::UnstableVertex(v));
            }
        }
        let genus_sum: u32 = self.genera.iter().sum();
        Ok(genus_sum + self.edges.len() as u32 - n as u32 + 1)
    }

    /// Validates and additionally requires the arithmetic genus to reach a
    /// declared bound.
    pub fn validate_genus_at_least(&self, bound: u32) -> Result<u32> {
        let genus = self.validate()?;
        if genus < bound {
            return Err(Error::GenusBelowBound { genus, bound });
        }
        Ok(genus)
    }

    /// Weights inserted at a vertex for a given labeling: legs, then for each
    /// incident edge the labeled weight on the first half and its dual on the
    /// second (a loop contributes both).
    pub fn vertex_weights(&self, v: usize, labeling: &EdgeLabeling) -> Vec<Weight> {
        let mut out: Vec<Weight> = self
            .legs
            .iter()
            .filter(|&&(w, _)| w == v)
            .map(|(_, w)| w.clone())
            .collect();
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if a == v {
                out.push(labeling.edge_weights[e].clone());
            }
            if b == v {
                out.push(labeling.edge_weights[e].dual());
            }
        }
        out
    }

    /// Parses the JSON document format:
    /// `{"vertices":[{"id":0,"genus":1}],"edges":[[0,0]],"legs":[{"vertex":0,"weight":"1,0"}]}`.
    pub fn from_json(text: &str) -> Result<DualGraph> {
        let doc: GraphDoc = serde_json::from_str(text)
            .map_err(|e| Error::BadInput(format!("graph file: {e}")))?;
        let mut ids: Vec<u64> = doc.vertices.iter().map(|v| v.id).collect();
        ids.sort_unstable();
        ids.dedup();
        if ids.len() != doc.vertices.len() {
            return Err(Error::BadInput("graph file: duplicate vertex id".into()));
        }
        let lookup = |id: u64, what: &str| -> Result<usize> {
            ids.binary_search(&id)
                .map_err(|_| Error::BadInput(format!("graph file: {what} references unknown vertex {id}")))
        };
        let mut genera = vec![0u32; ids.len()];
        for v in &doc.vertices {
            genera[lookup(v.id, "vertex")?] = v.genus;
        }
        let mut edges = Vec::new();
        for (i, e) in doc.edges.iter().enumerate() {
            if e.len() != 2 {
                return Err(Error::BadInput(format!(
                    "graph file: edge {i} must have exactly two endpoints"
                )));
            }
            edges.push((lookup(e[0], "edge")?, lookup(e[1], "edge")?));
        }
        let mut legs = Vec::new();
        for leg in &doc.legs {
            legs.push((lookup(leg.vertex, "leg")?, Weight::parse(&leg.weight)?));
        }
        DualGraph::new(genera, edges, legs)
    }
}

#[derive(Deserialize)]
struct GraphDoc {
    vertices: Vec<VertexDoc>,
    #[serde(default)]
    edges: Vec<Vec<u64>>,
    #[serde(default)]
    legs: Vec<LegDoc>,
}

#[derive(Deserialize)]
struct VertexDoc {
    id: u64,
    genus: u32,
}

#[derive(Deserialize)]
struct LegDoc {
    vertex: u64,
    weight: String,
}

/// Weights on the first half of each edge, in edge order; the other half is
/// dual by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeLabeling {
    pub edge_weights: Vec<Weight>,
}

/// The space of edge labelings for a graph at `(rank, level)`, in
/// lexicographic order (edge by edge over the lex-ordered level weights).
pub struct LabelingSpace<'g> {
    graph: &'g DualGraph,
    weights: Vec<Weight>,
}

impl<'g> LabelingSpace<'g> {
    pub fn new(graph: &'g DualGraph, rank: usize, level: u32) -> LabelingSpace<'g> {
        LabelingSpace {
            graph,
            weights: level_weights(rank, level),
        }
    }

    pub fn count(&self) -> u64 {
        (self.weights.len() as u64).pow(self.graph.edges().len() as u32)
    }

    /// Decodes the labeling at a lexicographic position.
    pub fn get(&self, mut index: u64) -> EdgeLabeling {
        let e = self.graph.edges().len();
        let base = self.weights.len() as u64;
        let mut ws = vec![Weight::zero(2); e];
        for slot in (0..e).rev() {
            ws[slot] = self.weights[(index % base) as usize].clone();
            index /= base;
        }
        EdgeLabeling { edge_weights: ws }
    }

    /// Per-vertex root-lattice test: the weight sizes incident to every
    /// vertex (legs included) must sum to a multiple of the rank. Labelings
    /// failing it contribute zero.
    pub fn passes_root_filter(&self, labeling: &EdgeLabeling) -> bool {
        let rank = self
            .weights
            .first()
            .map(|w| w.rank() as u64)
            .unwrap_or(2);
        (0..self.graph.vertex_count()).all(|v| {
            let total: u64 = self
                .graph
                .vertex_weights(v, labeling)
                .iter()
                .map(|w| w.size())
                .sum();
            total % rank == 0
        })
    }
}

/// All labelings in deterministic order, optionally root-lattice filtered.
pub fn enumerate_labelings(
    graph: &DualGraph,
    rank: usize,
    level: u32,
    root_filter: bool,
) -> Vec<EdgeLabeling> {
    let space = LabelingSpace::new(graph, rank, level);
    (0..space.count())
        .map(|i| space.get(i))
        .filter(|l| !root_filter || space.passes_root_filter(l))
        .collect()
}

/// The seven stable dual graphs of arithmetic genus two, with short names.
pub fn stable_genus_two_graphs() -> Vec<(&'static str, DualGraph)> {
    vec![
        ("smooth", DualGraph::new(vec![2], vec![], vec![]).unwrap()),
        (
            "irreducible-one-node",
            DualGraph::new(vec![1], vec![(0, 0)], vec![]).unwrap(),
        ),
        (
            "irreducible-two-nodes",
            DualGraph::new(vec![0], vec![(0, 0), (0, 0)], vec![]).unwrap(),
        ),
        (
            "two-elliptic",
            DualGraph::new(vec![1, 1], vec![(0, 1)], vec![]).unwrap(),
        ),
        (
            "elliptic-plus-nodal",
            DualGraph::new(vec![1, 0], vec![(0, 1), (1, 1)], vec![]).unwrap(),
        ),
        (
            "theta",
            DualGraph::new(vec![0, 0], vec![(0, 1), (0, 1), (0, 1)], vec![]).unwrap(),
        ),
        (
            "dumbbell",
            DualGraph::new(vec![0, 0], vec![(0, 0), (0, 1), (1, 1)], vec![]).unwrap(),
        ),
    ]
}

/// A sample of five stable genus-three dual graphs.
pub fn sample_genus_three_graphs() -> Vec<(&'static str, DualGraph)> {
    vec![
        ("smooth", DualGraph::new(vec![3], vec![], vec![]).unwrap()),
        (
            "genus-two-with-loop",
            DualGraph::new(vec![2], vec![(0, 0)], vec![]).unwrap(),
        ),
        (
            "two-elliptic-double-edge",
            DualGraph::new(vec![1, 1], vec![(0, 1), (0, 1)], vec![]).unwrap(),
        ),
        (
            "elliptic-two-loops",
            DualGraph::new(vec![1], vec![(0, 0), (0, 0)], vec![]).unwrap(),
        ),
        (
            "four-banana",
            DualGraph::new(vec![0, 0], vec![(0, 1), (0, 1), (0, 1), (0, 1)], vec![]).unwrap(),
        ),
    ]
}
