//! Partition utilities and the classical Littlewood-Richardson expansion.
//!
//! The expansion enumerates LR fillings strip by strip: the boxes labeled `i`
//! form a horizontal strip, and the running row-prefix counts satisfy the
//! ballot condition (the number of `i`-boxes in rows `1..=t` never exceeds the
//! number of `(i-1)`-boxes in rows `1..=t-1`). Exponential, which is fine at
//! the scales this library targets; correctness is what matters here.

use std::collections::HashMap;

/// Expands `s_lambda * s_mu` in at most `max_rows` variables.
///
/// Inputs are partitions (weakly decreasing, trailing zeros allowed). Returns
/// `(nu, c)` pairs with `c > 0`, each `nu` a partition padded to `max_rows`
/// parts, sorted lexicographically.
pub fn lr_expand(lambda: &[u32], mu: &[u32], max_rows: usize) -> Vec<(Vec<u32>, i64)> {
    let lam = pad(lambda, max_rows);
    debug_assert!(lam.iter().skip(max_rows).all(|&p| p == 0));

    // State: (shape, row-prefix counts of the previous strip) -> multiplicity.
    let mut states: HashMap<(Vec<u32>, Vec<u32>), i64> = HashMap::new();
    states.insert((lam, Vec::new()), 1);

    for (i, &strip) in mu.iter().enumerate() {
        if strip == 0 {
            continue;
        }
        let mut next: HashMap<(Vec<u32>, Vec<u32>), i64> = HashMap::new();
        for ((shape, prev), count) in &states {
            let mut placement = vec![0u32; max_rows];
            place_strip(
                shape,
                if i == 0 { None } else { Some(prev) },
                strip,
                0,
                0,
                &mut placement,
                &mut |p: &[u32]| {
                    let mut ns = shape.clone();
                    for (s, k) in ns.iter_mut().zip(p) {
                        *s += k;
                    }
                    let mut prefix = Vec::with_capacity(max_rows);
                    let mut acc = 0u32;
                    for &k in p {
                        acc += k;
                        prefix.push(acc);
                    }
                    *next.entry((ns, prefix)).or_insert(0) += count;
                },
            );
        }
        states = next;
    }

    let mut out: HashMap<Vec<u32>, i64> = HashMap::new();
    for ((shape, _), count) in states {
        *out.entry(shape).or_insert(0) += count;
    }
    let mut out: Vec<_> = out.into_iter().filter(|(_, c)| *c != 0).collect();
    out.sort();
    out
}

/// Recursively distributes `remaining` boxes of one label over rows
/// `row..max_rows`, enforcing the horizontal-strip and ballot constraints.
fn place_strip(
    shape: &[u32],
    prev_prefix: Option<&Vec<u32>>,
    remaining: u32,
    row: usize,
    placed_prefix: u32,
    placement: &mut Vec<u32>,
    emit: &mut dyn FnMut(&[u32]),
) {
    if remaining == 0 {
        for slot in placement.iter_mut().skip(row) {
            *slot = 0;
        }
        emit(placement);
        return;
    }
    if row == shape.len() {
        return;
    }
    // Horizontal strip: boxes added to this row cannot pass the previous
    // row's old right edge.
    let cap_strip = if row == 0 {
        remaining
    } else {
        shape[row - 1].saturating_sub(shape[row]).min(remaining)
    };
    // Ballot: prefix counts of this label stay below the previous label's
    // prefix counts shifted down one row.
    let cap_ballot = match prev_prefix {
        None => remaining,
        Some(prev) => {
            let allowed = if row == 0 { 0 } else { prev[row - 1] };
            allowed.saturating_sub(placed_prefix).min(remaining)
        }
    };
    for k in 0..=cap_strip.min(cap_ballot) {
        placement[row] = k;
        place_strip(
            shape,
            prev_prefix,
            remaining - k,
            row + 1,
            placed_prefix + k,
            placement,
            emit,
        );
    }
    placement[row] = 0;
}

pub fn pad(parts: &[u32], len: usize) -> Vec<u32> {
    let mut v: Vec<u32> = parts.iter().copied().filter(|&p| p > 0).collect();
    assert!(v.len() <= len, "partition {parts:?} has more than {len} rows");
    v.resize(len, 0);
    v
}

/// Strips trailing zeros for display.
pub fn trim(parts: &[u32]) -> Vec<u32> {
    let mut v = parts.to_vec();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}
