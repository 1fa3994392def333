//! Smith normal form of square nonsingular matrices over `Q[t]`.
//!
//! Returns monic diagonal entries `d_1 | d_2 | ... | d_n` together with the
//! invertible transforms: `left * M * right = diag(d)`. Transform
//! determinants are nonzero constants. For matrices whose invariant factors
//! are pure powers of `t`, the exponent list consumed by the pole ledger is
//! extracted with [`t_power_exponents`].

use num_traits::One;

use crate::poly::{Poly, PolyMatrix};
use crate::rat::Rat;
use crate::{Error, Result};

pub struct SmithDecomposition {
    pub diagonal: Vec<Poly>,
    pub left: PolyMatrix,
    pub right: PolyMatrix,
}

impl SmithDecomposition {
    /// Exponents `a_j` when every invariant factor is `t^{a_j}`.
    pub fn t_power_exponents(&self) -> Option<Vec<u32>> {
        self.diagonal
            .iter()
            .map(|d| {
                d.as_monomial()
                    .filter(|(_, c)| c.is_one())
                    .map(|(k, _)| k as u32)
            })
            .collect()
    }
}

pub fn smith_normal_form(m: &PolyMatrix) -> Result<SmithDecomposition> {
    if m.rows() != m.cols() {
        return Err(Error::BadInput("matrix must be square".into()));
    }
    if m.det().is_zero() {
        return Err(Error::SingularMatrix);
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut left = PolyMatrix::identity(n);
    let mut right = PolyMatrix::identity(n);

    for pivot in 0..n {
        loop {
            // Bring a minimal-degree nonzero entry of the trailing block to
            // the pivot.
            let mut best: Option<(usize, usize, usize)> = None;
            for i in pivot..n {
                for j in pivot..n {
                    if let Some(d) = a.at(i, j).degree() {
                        if best.map_or(true, |(bd, _, _)| d < bd) {
                            best = Some((d, i, j));
                        }
                    }
                }
            }
            let (_, bi, bj) = best.expect("nonsingular matrix has a nonzero trailing block");
            a.row_swap(pivot, bi);
            left.row_swap(pivot, bi);
            a.col_swap(pivot, bj);
            right.col_swap(pivot, bj);

            // Clear the pivot row and column by Euclidean reduction.
            let mut dirty = false;
            for i in pivot + 1..n {
                if a.at(i, pivot).is_zero() {
                    continue;
                }
                let (q, _) = a.at(i, pivot).divmod(a.at(pivot, pivot));
                let f = -&q;
                a.row_add(i, pivot, &f);
                left.row_add(i, pivot, &f);
                if !a.at(i, pivot).is_zero() {
                    dirty = true;
                }
            }
            for j in pivot + 1..n {
                if a.at(pivot, j).is_zero() {
                    continue;
                }
                let (q, _) = a.at(pivot, j).divmod(a.at(pivot, pivot));
                let f = -&q;
                a.col_add(j, pivot, &f);
                right.col_add(j, pivot, &f);
                if !a.at(pivot, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Pivot must divide the whole trailing block; if not, absorb the
            // offending row and retry with a smaller pivot degree.
            let mut offender = None;
            'scan: for i in pivot + 1..n {
                for j in pivot + 1..n {
                    if !a.at(pivot, pivot).divides(a.at(i, j)) {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    a.row_add(pivot, i, &Poly::one());
                    left.row_add(pivot, i, &Poly::one());
                }
                None => break,
            }
        }
    }

    // Normalize to monic diagonal entries, compensating in the left
    // transform so left * M * right stays exact.
    let mut diagonal = Vec::with_capacity(n);
    for i in 0..n {
        let lead = a.at(i, i).leading().cloned().unwrap();
        let inv = Rat::one() / lead;
        a.row_scale(i, &inv);
        left.row_scale(i, &inv);
        diagonal.push(a.at(i, i).clone());
    }

    debug_assert!(diagonal.windows(2).all(|w| w[0].divides(&w[1])));
    Ok(SmithDecomposition {
        diagonal,
        left,
        right,
    })
}
