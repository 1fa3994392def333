//! Ranks of conformal-block spaces at stable curves, by factorization over
//! the dual graph.
//!
//! A smooth genus-`h` component with boundary insertions is reduced with the
//! handle operator: the rank is the unit coefficient of the ring element
//! `(product of insertions) . T^h`. A nodal curve is the sum over edge-dual
//! labelings of the product of its smooth-vertex ranks. The labeling sum is a
//! parallel map-reduce over a deterministic enumeration; reduction is plain
//! addition, so any grouping gives identical output.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::curve::{DualGraph, EdgeLabeling, LabelingSpace};
use crate::fusion::FusionTable;
use crate::weights::{check_level, Weight};
use crate::Result;

/// One summand of the factorization: a labeling and the product of the
/// smooth-vertex ranks it induces.
#[derive(Clone, Debug)]
pub struct DecompositionRow {
    pub labeling: EdgeLabeling,
    pub contribution: BigInt,
}

/// Rank on a smooth genus-`h` component with the given insertions.
pub fn rank_smooth(rank: usize, level: u32, genus: u32, insertions: &[Weight]) -> Result<BigInt> {
    let table = FusionTable::shared(rank, level)?;
    rank_smooth_with(&table, genus, insertions)
}

fn rank_smooth_with(table: &FusionTable, genus: u32, insertions: &[Weight]) -> Result<BigInt> {
    let m = table.weights().len();
    let mut vec = vec![BigInt::zero(); m];
    vec[0] = BigInt::one();
    for w in insertions {
        check_level(w, table.level())?;
        let i = table.index_of(w).expect("level-checked weight is in the table");
        let mut next = vec![BigInt::zero(); m];
        for (j, c) in vec.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, slot) in next.iter_mut().enumerate() {
                let n = table.coeff_by_index(i, j, k);
                if n != 0 {
                    *slot += c * BigInt::from(n);
                }
            }
        }
        vec = next;
    }
    if genus > 0 {
        let t = table.handle_matrix();
        for _ in 0..genus {
            let mut next = vec![BigInt::zero(); m];
            for (j, c) in vec.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (k, slot) in next.iter_mut().enumerate() {
                    if t[j][k] != 0 {
                        *slot += c * BigInt::from(t[j][k]);
                    }
                }
            }
            vec = next;
        }
    }
    Ok(vec.swap_remove(0))
}

fn check_legs(graph: &DualGraph, rank: usize, level: u32) -> Result<()> {
    for (_, w) in graph.legs() {
        if w.rank() != rank {
            return Err(crate::Error::BadWeight(format!(
                "leg weight {w} does not have rank {rank}"
            )));
        }
        check_level(w, level)?;
    }
    Ok(())
}

fn contribution(
    table: &FusionTable,
    graph: &DualGraph,
    labeling: &EdgeLabeling,
) -> Result<BigInt> {
    let mut product = BigInt::one();
    for v in 0..graph.vertex_count() {
        let ws = graph.vertex_weights(v, labeling);
        let r = rank_smooth_with(table, graph.genus_of(v), &ws)?;
        if r.is_zero() {
            return Ok(BigInt::zero());
        }
        product *= r;
    }
    Ok(product)
}

/// Rank of the block space at a nodal curve: the sum over edge-dual labelings
/// of the product of smooth-vertex ranks. Uses the root-lattice pre-filter,
/// which removes only zero rows.
pub fn rank_nodal(graph: &DualGraph, rank: usize, level: u32) -> Result<BigInt> {
    graph.validate()?;
    check_legs(graph, rank, level)?;
    let table = FusionTable::shared(rank, level)?;
    let space = LabelingSpace::new(graph, rank, level);
    (0..space.count())
        .into_par_iter()
        .map(|i| {
            let labeling = space.get(i);
            if !space.passes_root_filter(&labeling) {
                return Ok(BigInt::zero());
            }
            contribution(&table, graph, &labeling)
        })
        .try_reduce(BigInt::zero, |a, b| Ok(a + b))
}

/// All rows of the factorization in deterministic labeling order, without
/// filtering; the contributions sum to [`rank_nodal`].
pub fn decomposition_table(
    graph: &DualGraph,
    rank: usize,
    level: u32,
) -> Result<Vec<DecompositionRow>> {
    graph.validate()?;
    check_legs(graph, rank, level)?;
    let table = FusionTable::shared(rank, level)?;
    let space = LabelingSpace::new(graph, rank, level);
    (0..space.count())
        .map(|i| {
            let labeling = space.get(i);
            let contribution = contribution(&table, graph, &labeling)?;
            Ok(DecompositionRow {
                labeling,
                contribution,
            })
        })
        .collect()
}
