//! Small quantum cohomology of Grassmannians `Gr(k, n)` with exact integer
//! coefficients and q-degree tracking.
//!
//! Products are computed by the classical Littlewood-Richardson expansion in
//! `k` rows followed by reduction into the `k x (n-k)` box: while a
//! constituent is too wide, the size-`n` rim hook containing the last cell of
//! its first row is removed, contributing one power of `q` and the sign
//! `(-1)^(k - h)` for a hook spanning `h` rows (an illegal removal kills the
//! class). This matches the presentation of the quantum ring in which
//! `h_n = (-1)^(k+1) q`.
//!
//! Schubert classes indexed by `k`-subsets `I = {i_1 < ... < i_k}` of
//! `{1..n}` correspond to partitions by `l_j = n - k + j - i_j`; under this
//! convention the identities `s_I^2 = s_{{1,2}}` and
//! `s_I^b = q^(b-2) s_{{b-1,b}}` for `I = {1, n}` in `Gr(2, n)` hold verbatim
//! and are pinned by tests.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::fusion::box_rim_reduce;
use crate::partitions::{lr_expand, trim};
use crate::rat::{rat_int, Rat};
use crate::weights::Weight;
use crate::{Error, Result};

/// An element of the quantum cohomology ring: a finite sum of terms
/// `coeff * q^c * s_partition` with partitions inside the `k x (n-k)` box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QClass {
    k: usize,
    n: usize,
    terms: BTreeMap<(Vec<u32>, u32), BigInt>,
}

impl QClass {
    pub fn zero(k: usize, n: usize) -> QClass {
        QClass {
            k,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(k: usize, n: usize) -> QClass {
        QClass::schubert(k, n, &[]).expect("empty partition fits any box")
    }

    /// The Schubert class of a partition inside the box.
    pub fn schubert(k: usize, n: usize, partition: &[u32]) -> Result<QClass> {
        check_box(k, n, partition)?;
        let mut terms = BTreeMap::new();
        terms.insert((trim(partition), 0u32), BigInt::from(1));
        Ok(QClass { k, n, terms })
    }

    /// The Schubert class of a `k`-subset of `{1..n}` under the convention
    /// `l_j = n - k + j - i_j`.
    pub fn from_subset(k: usize, n: usize, subset: &[usize]) -> Result<QClass> {
        if subset.len() != k
            || subset.windows(2).any(|w| w[0] >= w[1])
            || subset.iter().any(|&i| i < 1 || i > n)
        {
            return Err(Error::BadInput(format!(
                "subset {subset:?} is not an increasing k-subset of 1..={n}"
            )));
        }
        let parts: Vec<u32> = subset
            .iter()
            .enumerate()
            .map(|(j, &i)| (n - k + (j + 1) - i) as u32)
            .collect();
        QClass::schubert(k, n, &parts)
    }

    pub fn grassmannian(&self) -> (usize, usize) {
        (self.k, self.n)
    }

    /// Terms `(partition, q_exponent, coefficient)` in deterministic order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], u32, &BigInt)> {
        self.terms
            .iter()
            .map(|((p, q), c)| (p.as_slice(), *q, c))
    }

    pub fn coefficient(&self, partition: &[u32], q: u32) -> BigInt {
        self.terms
            .get(&(trim(partition), q))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Smallest q-exponent among nonzero terms.
    pub fn min_q_exponent(&self) -> Option<u32> {
        self.terms.keys().map(|(_, q)| *q).min()
    }

    /// The classical (q-degree zero) part.
    pub fn classical_part(&self) -> QClass {
        QClass {
            k: self.k,
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|((_, q), _)| *q == 0)
                .map(|(key, c)| (key.clone(), c.clone()))
                .collect(),
        }
    }

    fn insert(&mut self, partition: Vec<u32>, q: u32, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let key = (partition, q);
        let entry = self.terms.entry(key.clone()).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }
}

fn check_box(k: usize, n: usize, partition: &[u32]) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::BadInput(format!("Gr({k},{n}) is not a Grassmannian")));
    }
    let p = trim(partition);
    if p.len() > k || p.first().map_or(0, |&x| x) > (n - k) as u32 {
        return Err(Error::BadInput(format!(
            "partition {partition:?} does not fit the {k} x {} box",
            n - k
        )));
    }
    if p.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::BadInput(format!(
            "{partition:?} is not a partition"
        )));
    }
    Ok(())
}

/// Quantum product of two classes on the same Grassmannian.
pub fn quantum_product(a: &QClass, b: &QClass) -> Result<QClass> {
    if a.grassmannian() != b.grassmannian() {
        return Err(Error::BadInput(
            "classes live on different Grassmannians".into(),
        ));
    }
    let (k, n) = a.grassmannian();
    let mut out = QClass::zero(k, n);
    for ((pa, qa), ca) in &a.terms {
        for ((pb, qb), cb) in &b.terms {
            for (nu, c) in lr_expand(pa, pb, k) {
                if let Some((core, hooks, sign)) = box_rim_reduce(&nu, k, n) {
                    out.insert(
                        trim(&core),
                        qa + qb + hooks,
                        ca * cb * BigInt::from(sign * c),
                    );
                }
            }
        }
    }
    Ok(out)
}

/// `a^e` by repeated quantum multiplication; `e = 0` gives the unit.
pub fn power_with_qdegrees(a: &QClass, e: u32) -> Result<QClass> {
    let (k, n) = a.grassmannian();
    let mut acc = QClass::unit(k, n);
    for _ in 0..e {
        acc = quantum_product(&acc, a)?;
    }
    Ok(acc)
}

/// The class `s_I` for `I = {1, ..., k-1, n}`: a `(k-1) x (n-k)` rectangle.
/// For `Gr(2, n)` this is the single row `(n-2)`.
pub fn coupling_class(k: usize, n: usize) -> Result<QClass> {
    let mut subset: Vec<usize> = (1..k).collect();
    subset.push(n);
    QClass::from_subset(k, n, &subset)
}

/// Whether `s_I^e` contains a term `q^c s_J` with `c <= e - 2`, together with
/// the smallest such `c`.
pub fn gw_nonvanishing_bound(k: usize, n: usize, e: u32) -> Result<(bool, Option<u32>)> {
    if e < 3 {
        return Err(Error::BadInput(format!(
            "need at least 3 insertions, got {e}"
        )));
    }
    let power = power_with_qdegrees(&coupling_class(k, n)?, e)?;
    let min_c = power.min_q_exponent();
    Ok((min_c.map_or(false, |c| c + 2 <= e), min_c))
}

/// The multiplicative eigenvalue inequality for a genus-zero vertex: with
/// `m^x = (dual of l_x) / level`, checks
/// `sum_x ((m^x_1 + m^x_r) - (2/r)|m^x|) <= n - 2` exactly.
pub fn horn_inequality_check(rank: usize, level: u32, weights: &[Weight]) -> Result<bool> {
    let n = weights.len();
    if n < 3 {
        return Err(Error::BadInput(format!(
            "need at least 3 weights, got {n}"
        )));
    }
    if level == 0 {
        return Err(Error::BadInput("horn inequality requires level >= 1".into()));
    }
    let mut lhs = Rat::zero();
    for w in weights {
        if w.rank() != rank {
            return Err(Error::BadWeight(format!(
                "weight {w} does not have rank {rank}"
            )));
        }
        crate::weights::check_level(w, level)?;
        let d = w.dual();
        let first_plus_last = rat_int(d.parts()[0] as i64 + d.parts()[rank - 1] as i64);
        let size = Rat::new((2 * d.size() as i64).into(), (rank as i64).into());
        lhs += (first_plus_last - size) / rat_int(level as i64);
    }
    Ok(lhs <= rat_int(n as i64 - 2))
}
