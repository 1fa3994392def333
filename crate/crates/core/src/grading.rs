//! Section-ring Hilbert functions and their structure: exact quasi-polynomial
//! fitting, Veronese reindexing, Hilbert bases of the degree semigroups used
//! to choose polarization weights, and the explicit `sl_2` Chern-coefficient
//! polynomials.

use num_bigint::BigInt;
#[cfg(test)]
use num_traits::One;

use crate::curve::DualGraph;
use crate::factorize::rank_nodal;
use crate::poly::{interpolate, Poly};
use crate::rat::{binomial, rat_int, Rat};
use crate::{Error, Result};

/// A function agreeing with one polynomial constituent per residue class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPolynomial {
    pub period: usize,
    pub constituents: Vec<Poly>,
    pub degree: usize,
}

impl QuasiPolynomial {
    pub fn eval(&self, n: u64) -> Rat {
        self.constituents[(n % self.period as u64) as usize].eval(&rat_int(n as i64))
    }
}

/// Graded ranks `m -> rank at level m * base_level` for `m = 0..=max`.
pub fn hilbert_function(
    graph: &DualGraph,
    rank: usize,
    base_level: u32,
    max: u32,
) -> Result<Vec<BigInt>> {
    (0..=max)
        .map(|m| rank_nodal(graph, rank, m * base_level))
        .collect()
}

/// Fits the lexicographically smallest `(period, degree)` quasi-polynomial
/// that interpolates a training window and predicts every remaining value
/// exactly. A candidate `(s, d)` is admissible when each residue class has at
/// least `d + 3` points (`d + 1` to interpolate, two or more held out).
pub fn qp_fit(values: &[Rat], max_period: usize, max_degree: usize) -> Result<QuasiPolynomial> {
    if max_period == 0 {
        return Err(Error::BadInput("period bound must be at least 1".into()));
    }
    let mut any_admissible = false;
    for s in 1..=max_period {
        for d in 0..=max_degree {
            // Residue class i holds the values at indices i, i+s, ...
            let smallest_class = (0..s)
                .map(|i| values.len().saturating_sub(i).div_ceil(s))
                .min()
                .unwrap();
            if smallest_class < d + 3 {
                continue;
            }
            any_admissible = true;
            if let Some(qp) = try_fit(values, s, d) {
                return Ok(qp);
            }
        }
    }
    if !any_admissible {
        return Err(Error::InsufficientData(format!(
            "need at least degree + 3 points per residue class for some period <= {max_period}"
        )));
    }
    Err(Error::InsufficientData(format!(
        "no quasi-polynomial with period <= {max_period}, degree <= {max_degree} fits"
    )))
}

fn try_fit(values: &[Rat], period: usize, degree: usize) -> Option<QuasiPolynomial> {
    let mut constituents = Vec::with_capacity(period);
    for class in 0..period {
        let pts: Vec<(Rat, Rat)> = values
            .iter()
            .enumerate()
            .skip(class)
            .step_by(period)
            .map(|(n, v)| (rat_int(n as i64), v.clone()))
            .collect();
        let train = &pts[..degree + 1];
        let p = interpolate(train);
        for (x, y) in &pts[degree + 1..] {
            if &p.eval(x) != y {
                return None;
            }
        }
        constituents.push(p);
    }
    let actual_degree = constituents
        .iter()
        .filter_map(|p| p.degree())
        .max()
        .unwrap_or(0);
    Some(QuasiPolynomial {
        period,
        constituents,
        degree: actual_degree,
    })
}

/// Subsequence at indices `0, d, 2d, ...`.
pub fn veronese<T: Clone>(values: &[T], d: usize) -> Result<Vec<T>> {
    if d == 0 {
        return Err(Error::BadInput("veronese step must be at least 1".into()));
    }
    Ok(values.iter().step_by(d).cloned().collect())
}

/// The degree cone for polarization weights: integer tuples `(d_1..d_k, l)`
/// with `sum d_i = (g-1) l` and `d_i >= r0 l`, `l >= 0`.
#[derive(Clone, Debug)]
pub struct ConeSpec {
    pub components: usize,
    pub genus: u32,
    pub lower_bound: Rat,
}

impl ConeSpec {
    fn contains(&self, point: &(Vec<i64>, u32)) -> bool {
        let (d, l) = point;
        let sum: i64 = d.iter().sum();
        if sum != (self.genus as i64 - 1) * *l as i64 {
            return false;
        }
        let bound = &self.lower_bound * rat_int(*l as i64);
        d.iter().all(|&di| rat_int(di) >= bound)
    }

    /// All integer points at a fixed grading level, lexicographic on `d`.
    fn slice(&self, l: u32) -> Vec<(Vec<i64>, u32)> {
        let total = (self.genus as i64 - 1) * l as i64;
        let low = num_integer::Integer::div_ceil(
            &(self.lower_bound.numer() * BigInt::from(l)),
            self.lower_bound.denom(),
        );
        let low: i64 = low.try_into().unwrap_or(i64::MIN / 4);
        let mut out = Vec::new();
        let mut point = vec![0i64; self.components];
        fill_slice(self.components, total, low, &mut point, 0, &mut out, l);
        out
    }
}

fn fill_slice(
    k: usize,
    remaining: i64,
    low: i64,
    point: &mut Vec<i64>,
    pos: usize,
    out: &mut Vec<(Vec<i64>, u32)>,
    l: u32,
) {
    if pos + 1 == k {
        if remaining >= low {
            point[pos] = remaining;
            out.push((point.clone(), l));
        }
        return;
    }
    let rest_min = low * (k - pos - 1) as i64;
    let mut v = low;
    while v + rest_min <= remaining {
        point[pos] = v;
        fill_slice(k, remaining - v, low, point, pos + 1, out, l);
        v += 1;
    }
}

/// A minimal generating set of the cone's semigroup of integer points,
/// certified complete for all points of grading level at most `bound`.
#[derive(Clone, Debug)]
pub struct HilbertBasis {
    pub generators: Vec<(Vec<i64>, u32)>,
    /// `a_i = d_i / l` per generator.
    pub ratios: Vec<Vec<Rat>>,
    pub certified_bound: u32,
}

/// Bounded saturation enumeration: walk levels `1..=bound`, keep each point
/// that is not a sum of two previously seen cone points. Every enumerated
/// point then decomposes into generators, which is the certificate.
pub fn hilbert_basis(cone: &ConeSpec, bound: u32) -> Result<HilbertBasis> {
    if cone.components == 0 {
        return Err(Error::BadInput("cone needs at least one component".into()));
    }
    if cone.genus < 2 {
        return Err(Error::ConeNotPointed(format!(
            "genus {} gives a non-positive grading slope",
            cone.genus
        )));
    }
    if bound == 0 {
        return Err(Error::InsufficientData(
            "certification bound must be at least 1".into(),
        ));
    }
    let mut generators: Vec<(Vec<i64>, u32)> = Vec::new();
    let mut seen: Vec<(Vec<i64>, u32)> = Vec::new();
    for l in 1..=bound {
        for point in cone.slice(l) {
            if !is_reducible(&point, &seen, cone) {
                generators.push(point.clone());
            }
            seen.push(point);
        }
    }
    let ratios = generators
        .iter()
        .map(|(d, l)| {
            d.iter()
                .map(|&di| Rat::new(di.into(), (*l as i64).into()))
                .collect()
        })
        .collect();
    Ok(HilbertBasis {
        generators,
        ratios,
        certified_bound: bound,
    })
}

fn is_reducible(point: &(Vec<i64>, u32), seen: &[(Vec<i64>, u32)], cone: &ConeSpec) -> bool {
    for q in seen {
        if q.1 >= point.1 {
            continue;
        }
        let rest = (
            point
                .0
                .iter()
                .zip(&q.0)
                .map(|(a, b)| a - b)
                .collect::<Vec<i64>>(),
            point.1 - q.1,
        );
        if rest.1 >= 1 && cone.contains(&rest) {
            return true;
        }
    }
    false
}

/// Decomposes a cone point as a non-negative integer combination of the given
/// generators, or reports failure. Used to verify completeness.
pub fn decompose_in_basis(
    point: &(Vec<i64>, u32),
    generators: &[(Vec<i64>, u32)],
    cone: &ConeSpec,
) -> bool {
    if point.1 == 0 {
        return point.0.iter().all(|&d| d == 0);
    }
    for g in generators {
        if g.1 > point.1 {
            continue;
        }
        let rest = (
            point
                .0
                .iter()
                .zip(&g.0)
                .map(|(a, b)| a - b)
                .collect::<Vec<i64>>(),
            point.1 - g.1,
        );
        if rest.1 == 0 {
            if rest.0.iter().all(|&d| d == 0) {
                return true;
            }
            continue;
        }
        if cone.contains(&rest) && decompose_in_basis(&rest, generators, cone) {
            return true;
        }
    }
    false
}

/// All cone points with grading level in `1..=bound`.
pub fn cone_points(cone: &ConeSpec, bound: u32) -> Vec<(Vec<i64>, u32)> {
    (1..=bound).flat_map(|l| cone.slice(l)).collect()
}

/// The two displayed binomial coefficient polynomials tying the first Chern
/// class of the level-`2m` sl_2 bundles to `c_1` and the boundary class:
/// returns `(alpha(m), beta(m))` evaluated exactly.
pub fn chern_sl2_coefficients(m: u32) -> (Rat, Rat) {
    let m = m as u64;
    let b = |n: u64, k: u64| Rat::from_integer(binomial(n, k));
    let alpha = b(9 + m, 10) - rat_int(20) * b(7 + m, 10) + rat_int(64) * b(6 + m, 10)
        - rat_int(90) * b(5 + m, 10)
        + rat_int(64) * b(4 + m, 10)
        - rat_int(20) * b(3 + m, 10)
        + b(1 + m, 10);
    let beta = rat_int(-8) * b(9 + m, 9) + Rat::new(192.into(), 5.into()) * b(6 + m, 9)
        - rat_int(72) * b(5 + m, 9)
        + rat_int(64) * b(4 + m, 9)
        - rat_int(24) * b(3 + m, 9)
        + Rat::new(8.into(), 5.into()) * b(1 + m, 9);
    (alpha, beta)
}
