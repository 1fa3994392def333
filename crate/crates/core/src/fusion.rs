//! Fusion coefficients of `sl_r` at a level, by two independent algorithms.
//!
//! Both start from the classical Littlewood-Richardson expansion of a product
//! and truncate it to the level:
//!
//! - [`fusion_affine_fold`] folds each constituent into the level alcove with
//!   the shifted action of the affine Weyl group at level `l + r`, tracking
//!   signs; constituents landing on a wall contribute zero.
//! - [`fusion_rim_hook`] reduces each constituent into the `r x l` box by
//!   removing rim hooks of size `l + r` from the first row, with the sign
//!   `(-1)^(r - h)` for a hook spanning `h` rows, then strips full columns.
//!
//! The two must agree on every input; the test suites check this exhaustively
//! on small ranks and levels.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

use crate::partitions::{lr_expand, pad};
use crate::weights::{check_level, level_weights, Weight};
use crate::{Error, Result};

/// Which algorithm produced a [`FusionTable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FusionAlgorithm {
    AffineFold,
    RimHook,
}

/// All fusion coefficients `N_{lm}^n` for a fixed rank and level, on the
/// lexicographically ordered weight basis.
pub struct FusionTable {
    rank: usize,
    level: u32,
    weights: Vec<Weight>,
    index: HashMap<Weight, usize>,
    duals: Vec<usize>,
    coeffs: Vec<i64>,
    algorithm: FusionAlgorithm,
}

impl FusionTable {
    pub fn build(rank: usize, level: u32, algorithm: FusionAlgorithm) -> Result<FusionTable> {
        if rank < 2 {
            return Err(Error::BadInput(format!("rank must be >= 2, got {rank}")));
        }
        let weights = level_weights(rank, level);
        let index: HashMap<Weight, usize> = weights
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        let duals: Vec<usize> = weights.iter().map(|w| index[&w.dual()]).collect();
        let m = weights.len();
        let mut coeffs = vec![0i64; m * m * m];
        for i in 0..m {
            for j in i..m {
                let expansion = match algorithm {
                    FusionAlgorithm::AffineFold => {
                        fusion_affine_fold(rank, level, &weights[i], &weights[j])?
                    }
                    FusionAlgorithm::RimHook => {
                        fusion_rim_hook(rank, level, &weights[i], &weights[j])?
                    }
                };
                for (w, c) in expansion {
                    let k = index[&w];
                    coeffs[(i * m + j) * m + k] = c;
                    coeffs[(j * m + i) * m + k] = c;
                }
            }
        }
        Ok(FusionTable {
            rank,
            level,
            weights,
            index,
            duals,
            coeffs,
            algorithm,
        })
    }

    /// Memoized affine-fold table, shared across callers.
    pub fn shared(rank: usize, level: u32) -> Result<Arc<FusionTable>> {
        static CACHE: Lazy<Mutex<HashMap<(usize, u32), Arc<FusionTable>>>> =
            Lazy::new(|| Mutex::new(HashMap::new()));
        if let Some(t) = CACHE.lock().unwrap().get(&(rank, level)) {
            return Ok(t.clone());
        }
        let table = Arc::new(FusionTable::build(rank, level, FusionAlgorithm::AffineFold)?);
        CACHE
            .lock()
            .unwrap()
            .insert((rank, level), table.clone());
        Ok(table)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn algorithm(&self) -> FusionAlgorithm {
        self.algorithm
    }

    /// The level weights in lexicographic order; index 0 is the unit.
    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn index_of(&self, w: &Weight) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn dual_index(&self, i: usize) -> usize {
        self.duals[i]
    }

    pub fn coeff_by_index(&self, i: usize, j: usize, k: usize) -> i64 {
        let m = self.weights.len();
        self.coeffs[(i * m + j) * m + k]
    }

    /// `N_{lm}^n`; zero when any weight is outside the table.
    pub fn coeff(&self, l: &Weight, m: &Weight, n: &Weight) -> i64 {
        match (self.index_of(l), self.index_of(m), self.index_of(n)) {
            (Some(i), Some(j), Some(k)) => self.coeff_by_index(i, j, k),
            _ => 0,
        }
    }

    /// Fusion matrix of a weight: `(N_l)_{mn} = N_{lm}^n`.
    pub fn fusion_matrix(&self, l: &Weight) -> Result<Vec<Vec<i64>>> {
        let i = self
            .index_of(l)
            .ok_or(Error::LevelViolation {
                level: l.level(),
                max: self.level,
            })?;
        let m = self.weights.len();
        Ok((0..m)
            .map(|j| (0..m).map(|k| self.coeff_by_index(i, j, k)).collect())
            .collect())
    }

    /// Handle operator `T = sum_l N_l N_{l*}`: symmetric with non-negative
    /// entries, and `T[0][0]` counts the level weights.
    pub fn handle_matrix(&self) -> Vec<Vec<i64>> {
        let m = self.weights.len();
        let mut t = vec![vec![0i64; m]; m];
        for l in 0..m {
            let ld = self.duals[l];
            for a in 0..m {
                for s in 0..m {
                    let left = self.coeff_by_index(l, a, s);
                    if left == 0 {
                        continue;
                    }
                    for b in 0..m {
                        t[a][b] += left * self.coeff_by_index(ld, s, b);
                    }
                }
            }
        }
        t
    }
}

/// Expansion of `l . m` in the level fusion ring via affine Weyl folding.
pub fn fusion_affine_fold(
    rank: usize,
    level: u32,
    l: &Weight,
    m: &Weight,
) -> Result<BTreeMap<Weight, i64>> {
    check_inputs(rank, level, l, m)?;
    let mut out: BTreeMap<Weight, i64> = BTreeMap::new();
    for (nu, c) in lr_expand(l.parts(), m.parts(), rank) {
        if let Some((w, sign)) = affine_fold(&nu, rank, level) {
            *out.entry(w).or_insert(0) += sign * c;
        }
    }
    out.retain(|_, c| *c != 0);
    debug_assert!(out.values().all(|&c| c > 0));
    Ok(out)
}

/// Expansion of `l . m` via rim-hook reduction; must agree with
/// [`fusion_affine_fold`] on every input.
///
/// Each removed hook has size `l + r`, which is not divisible by the rank, so
/// the reduction shifts the congruence class `|nu| mod r`. The landed box
/// class is rotated back by the simple current once per removed hook, which
/// restores the class the folded product lives in.
pub fn fusion_rim_hook(
    rank: usize,
    level: u32,
    l: &Weight,
    m: &Weight,
) -> Result<BTreeMap<Weight, i64>> {
    check_inputs(rank, level, l, m)?;
    let mut out: BTreeMap<Weight, i64> = BTreeMap::new();
    for (nu, c) in lr_expand(l.parts(), m.parts(), rank) {
        if let Some((core, hooks, sign)) = box_rim_reduce(&nu, rank, (level + rank as u32) as usize)
        {
            let mut w = Weight::new(&core).expect("box reduction yields a partition");
            for _ in 0..(hooks as usize % rank) {
                w = simple_current_twist(&w, level);
            }
            *out.entry(w).or_insert(0) += sign * c;
        }
    }
    out.retain(|_, c| *c != 0);
    debug_assert!(out.values().all(|&c| c > 0));
    Ok(out)
}

/// Fusion action of the level-`l` simple current: in partition coordinates,
/// prepend `l` and drop the last part, then renormalize.
fn simple_current_twist(w: &Weight, level: u32) -> Weight {
    let mut parts = Vec::with_capacity(w.rank());
    parts.push(level);
    parts.extend_from_slice(&w.parts()[..w.rank() - 1]);
    Weight::new(&parts).expect("twist yields a partition")
}

fn check_inputs(rank: usize, level: u32, l: &Weight, m: &Weight) -> Result<()> {
    if l.rank() != rank || m.rank() != rank {
        return Err(Error::BadWeight(format!(
            "weights of rank {}/{} in a rank-{} ring",
            l.rank(),
            m.rank(),
            rank
        )));
    }
    check_level(l, level)?;
    check_level(m, level)?;
    Ok(())
}

/// Folds a partition with at most `rank` rows into the level alcove under the
/// shifted affine Weyl action at level `level + rank`. Returns the landed
/// weight and sign, or `None` on a wall.
fn affine_fold(nu: &[u32], rank: usize, level: u32) -> Option<(Weight, i64)> {
    let n = level as i64 + rank as i64;
    let mut x: Vec<i64> = nu
        .iter()
        .enumerate()
        .map(|(i, &p)| p as i64 + (rank - 1 - i) as i64)
        .collect();
    let mut sign = 1i64;
    loop {
        // Insertion sort, flipping the sign per transposition.
        for i in 1..rank {
            let mut j = i;
            while j > 0 && x[j] > x[j - 1] {
                x.swap(j, j - 1);
                sign = -sign;
                j -= 1;
            }
        }
        if x.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        let spread = x[0] - x[rank - 1];
        if spread < n {
            break;
        }
        if spread == n {
            return None;
        }
        let (a, b) = (x[0], x[rank - 1]);
        x[0] = b + n;
        x[rank - 1] = a - n;
        sign = -sign;
    }
    let last = x[rank - 1];
    let parts: Vec<u32> = x
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let p = v - (rank - 1 - i) as i64 - last;
            debug_assert!(p >= 0);
            p as u32
        })
        .collect();
    Some((Weight::new(&parts).expect("fold yields a partition"), sign))
}

/// Reduces a partition with at most `k` rows into the `k x (n - k)` box by
/// repeatedly removing the size-`n` rim hook that contains the last cell of
/// the first row. Each removed hook spanning `h` rows contributes the sign
/// `(-1)^(k - h)` and one power of q. Returns `None` when a removal is
/// illegal, which makes the class zero.
pub(crate) fn box_rim_reduce(nu: &[u32], k: usize, n: usize) -> Option<(Vec<u32>, u32, i64)> {
    let width = (n - k) as i64;
    let mut x: Vec<i64> = pad(nu, k)
        .iter()
        .enumerate()
        .map(|(i, &p)| p as i64 + (k - 1 - i) as i64)
        .collect();
    let mut sign = 1i64;
    let mut hooks = 0u32;
    while x[0] - (k as i64 - 1) > width {
        let moved = x[0] - n as i64;
        debug_assert!(moved >= 0);
        if x[1..].contains(&moved) {
            return None;
        }
        let passed = x[1..].iter().filter(|&&v| v > moved).count();
        x.remove(0);
        x.insert(passed, moved);
        let h = passed + 1;
        if (k - h) % 2 == 1 {
            sign = -sign;
        }
        hooks += 1;
    }
    let parts: Vec<u32> = x
        .iter()
        .enumerate()
        .map(|(i, &v)| (v - (k - 1 - i) as i64) as u32)
        .collect();
    Some((parts, hooks, sign))
}

/// Rank of the genus-zero three-point block: `N_{lm}^{n*}`.
pub fn three_point_rank(rank: usize, level: u32, l: &Weight, m: &Weight, n: &Weight) -> Result<i64> {
    check_level(n, level)?;
    let expansion = fusion_affine_fold(rank, level, l, m)?;
    Ok(expansion.get(&n.dual()).copied().unwrap_or(0))
}

/// Handle operator matrix on the lexicographic weight basis.
pub fn handle_operator(rank: usize, level: u32) -> Result<Vec<Vec<i64>>> {
    Ok(FusionTable::shared(rank, level)?.handle_matrix())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(parts: &[u32]) -> Weight {
        Weight::new(parts).unwrap()
    }

    fn expand_classical(rank: usize, l: &Weight, m: &Weight) -> BTreeMap<Weight, i64> {
        let mut out = BTreeMap::new();
        for (nu, c) in lr_expand(l.parts(), m.parts(), rank) {
            *out.entry(w(&nu)).or_insert(0) += c;
        }
        out
    }

    #[test]
    fn sl2_level1_square() {
        let got = fusion_affine_fold(2, 1, &w(&[1, 0]), &w(&[1, 0])).unwrap();
        assert_eq!(got, BTreeMap::from([(w(&[0, 0]), 1)]));
        let got = fusion_rim_hook(2, 1, &w(&[1, 0]), &w(&[1, 0])).unwrap();
        assert_eq!(got, BTreeMap::from([(w(&[0, 0]), 1)]));
    }

    #[test]
    fn sl2_level2_square() {
        let expect = BTreeMap::from([(w(&[0, 0]), 1), (w(&[2, 0]), 1)]);
        assert_eq!(
            fusion_affine_fold(2, 2, &w(&[1, 0]), &w(&[1, 0])).unwrap(),
            expect
        );
        assert_eq!(
            fusion_rim_hook(2, 2, &w(&[1, 0]), &w(&[1, 0])).unwrap(),
            expect
        );
    }

    #[test]
    fn unit_acts_trivially() {
        for (r, l) in [(2, 3), (3, 2), (4, 1)] {
            for v in level_weights(r, l) {
                let got = fusion_affine_fold(r, l, &Weight::zero(r), &v).unwrap();
                assert_eq!(got, BTreeMap::from([(v.clone(), 1)]));
            }
        }
    }

    #[test]
    fn sl2_simple_current_square_is_vacuum() {
        let expect = BTreeMap::from([(w(&[0, 0]), 1)]);
        assert_eq!(
            fusion_affine_fold(2, 2, &w(&[2, 0]), &w(&[2, 0])).unwrap(),
            expect
        );
        assert_eq!(
            fusion_rim_hook(2, 2, &w(&[2, 0]), &w(&[2, 0])).unwrap(),
            expect
        );
    }

    #[test]
    fn algorithms_agree_on_small_grid() {
        for (r, lmax) in [(2usize, 4u32), (3, 3), (4, 2)] {
            for l in 1..=lmax {
                let ws = level_weights(r, l);
                for a in &ws {
                    for b in &ws {
                        let fold = fusion_affine_fold(r, l, a, b).unwrap();
                        let hook = fusion_rim_hook(r, l, a, b).unwrap();
                        assert_eq!(fold, hook, "disagreement at r={r} l={l} {a} . {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn stabilization_recovers_classical_product() {
        for (r, a, b) in [
            (2usize, vec![2u32, 0], vec![3u32, 0]),
            (3, vec![2, 1, 0], vec![1, 1, 0]),
            (4, vec![1, 1, 0, 0], vec![2, 0, 0, 0]),
        ] {
            let (a, b) = (w(&a), w(&b));
            let l = a.level() + b.level();
            assert_eq!(
                fusion_affine_fold(r, l, &a, &b).unwrap(),
                expand_classical(r, &a, &b)
            );
        }
    }

    #[test]
    fn three_point_examples() {
        let z = Weight::zero(2);
        let om = w(&[1, 0]);
        assert_eq!(three_point_rank(2, 1, &z, &z, &z).unwrap(), 1);
        assert_eq!(three_point_rank(2, 1, &om, &om, &z).unwrap(), 1);
        assert_eq!(three_point_rank(2, 1, &om, &om, &om).unwrap(), 0);
    }

    #[test]
    fn three_point_rejects_level_violation() {
        assert!(three_point_rank(2, 1, &w(&[2, 0]), &w(&[1, 0]), &w(&[1, 0])).is_err());
        assert!(three_point_rank(2, 1, &w(&[1, 0]), &w(&[1, 0]), &w(&[2, 0])).is_err());
    }

    #[test]
    fn handle_operator_sl2_level1() {
        let t = handle_operator(2, 1).unwrap();
        assert_eq!(t, vec![vec![2, 0], vec![0, 2]]);
        // Row sums 2, unit entry |P_1| = 2. The full trace is 4 = 2 |P_1|.
        assert!(t.iter().all(|row| row.iter().sum::<i64>() == 2));
        assert_eq!(t[0][0], 2);
    }

    #[test]
    fn handle_operator_unit_row_counts_weights() {
        for (r, l) in [(2usize, 0u32), (2, 3), (3, 2)] {
            let table = FusionTable::shared(r, l).unwrap();
            let t = table.handle_matrix();
            assert_eq!(t[0][0] as usize, table.weights().len());
            // T[0][n] counts l with N_{l l*}^n != 0, with multiplicity.
            for (k, _) in table.weights().iter().enumerate() {
                let direct: i64 = (0..table.weights().len())
                    .map(|i| table.coeff_by_index(i, table.dual_index(i), k))
                    .sum();
                assert_eq!(t[0][k], direct);
            }
        }
        assert_eq!(handle_operator(2, 0).unwrap(), vec![vec![1]]);
    }

    #[test]
    fn table_symmetries_small() {
        for (r, l) in [(2usize, 3u32), (3, 2)] {
            let table = FusionTable::build(r, l, FusionAlgorithm::AffineFold).unwrap();
            let m = table.weights().len();
            for i in 0..m {
                for j in 0..m {
                    for k in 0..m {
                        let c = table.coeff_by_index(i, j, k);
                        assert_eq!(c, table.coeff_by_index(j, i, k));
                        // N_{lm}^n = N_{l n*}^{m*}
                        assert_eq!(
                            c,
                            table.coeff_by_index(i, table.dual_index(k), table.dual_index(j))
                        );
                        assert!(c >= 0);
                    }
                }
            }
        }
    }

    #[test]
    fn s3_symmetry_of_three_point_rank() {
        let ws = level_weights(3, 2);
        for a in &ws {
            for b in &ws {
                for c in &ws {
                    let base = three_point_rank(3, 2, a, b, c).unwrap();
                    assert_eq!(base, three_point_rank(3, 2, b, a, c).unwrap());
                    assert_eq!(base, three_point_rank(3, 2, a, c, b).unwrap());
                    assert_eq!(base, three_point_rank(3, 2, c, b, a).unwrap());
                }
            }
        }
    }

    #[test]
    fn root_lattice_vanishing() {
        for (r, l) in [(2usize, 2u32), (3, 2)] {
            let ws = level_weights(r, l);
            for a in &ws {
                for b in &ws {
                    for c in &ws {
                        if (a.size() + b.size() + c.size()) % r as u64 != 0 {
                            assert_eq!(three_point_rank(r, l, a, b, c).unwrap(), 0);
                        }
                    }
                }
            }
        }
    }
}
