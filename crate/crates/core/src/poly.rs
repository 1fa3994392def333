//! Univariate polynomials over the exact rationals, plus dense matrices of
//! them. Enough Euclidean-domain structure for Smith normal form and exact
//! interpolation; nothing more.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rat::{format_rat, parse_rat, Rat};
use crate::{Error, Result};

/// Coefficients in ascending degree, normalized with no trailing zeros; the
/// zero polynomial has an empty coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(coeffs: Vec<Rat>) -> Poly {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Poly {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Poly {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Poly {
        Poly::new(vec![c])
    }

    /// The monomial `c t^k`.
    pub fn monomial(c: Rat, k: usize) -> Poly {
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.push(c);
        Poly::new(coeffs)
    }

    pub fn t_power(k: usize) -> Poly {
        Poly::monomial(Rat::one(), k)
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Monic associate, or zero for zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&(Rat::one() / l.clone())),
        }
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn divmod(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap();
        let dl = d.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut q = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading().unwrap().clone() / dl.clone();
            let shift = rd - dd;
            q[shift] = factor.clone();
            let sub = d.scale(&factor);
            let mut coeffs = rem.coeffs.clone();
            for (i, c) in sub.coeffs.iter().enumerate() {
                coeffs[i + shift] -= c;
            }
            rem = Poly::new(coeffs);
        }
        (Poly::new(q), rem)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.divmod(self).1.is_zero()
    }

    /// If this is a single term `c t^k`, returns `(k, c)`.
    pub fn as_monomial(&self) -> Option<(usize, Rat)> {
        let d = self.degree()?;
        if self.coeffs[..d].iter().all(|c| c.is_zero()) {
            Some((d, self.coeffs[d].clone()))
        } else {
            None
        }
    }

    /// Parses comma-separated ascending coefficients, e.g. `"0,1"` is `t` and
    /// `"1,0,2"` is `1 + 2t^2`. Coefficients may be rationals `p/q`.
    pub fn parse(s: &str) -> Result<Poly> {
        let coeffs = s
            .split(',')
            .map(parse_rat)
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(coeffs))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{}", format_rat(&mag))?;
            }
            if k > 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if k == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{k}")?;
                }
            }
            first = false;
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| self.coeff(i) + rhs.coeff(i))
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| self.coeff(i) - rhs.coeff(i))
                .collect(),
        )
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

/// Dense matrix of polynomials, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Poly>) -> PolyMatrix {
        assert_eq!(data.len(), rows * cols);
        PolyMatrix { rows, cols, data }
    }

    pub fn identity(n: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Poly::one();
        }
        m
    }

    pub fn zeros(rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix {
            rows,
            cols,
            data: vec![Poly::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Poly {
        &mut self.data[i * self.cols + j]
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = PolyMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.at(i, k).is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = self.at(i, k) * rhs.at(k, j);
                    *out.at_mut(i, j) = &*out.at(i, j) + &prod;
                }
            }
        }
        out
    }

    /// Determinant by evaluation at enough points followed by interpolation;
    /// each evaluation is a scalar Gaussian elimination.
    pub fn det(&self) -> Poly {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Poly::one();
        }
        // The determinant degree is at most the sum over rows of the largest
        // entry degree.
        let bound: usize = (0..n)
            .map(|i| {
                (0..n)
                    .filter_map(|j| self.at(i, j).degree())
                    .max()
                    .unwrap_or(0)
            })
            .sum();
        let points: Vec<(Rat, Rat)> = (0..=bound as i64)
            .map(|x| {
                let xr = Rat::from_integer(x.into());
                (xr.clone(), self.eval_det(&xr))
            })
            .collect();
        interpolate(&points)
    }

    fn eval_det(&self, x: &Rat) -> Rat {
        let n = self.rows;
        let mut m: Vec<Vec<Rat>> = (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j).eval(x)).collect())
            .collect();
        let mut det = Rat::one();
        for col in 0..n {
            let pivot = match (col..n).find(|&i| !m[i][col].is_zero()) {
                Some(p) => p,
                None => return Rat::zero(),
            };
            if pivot != col {
                m.swap(pivot, col);
                det = -det;
            }
            det *= m[col][col].clone();
            let inv = Rat::one() / m[col][col].clone();
            for i in col + 1..n {
                if m[i][col].is_zero() {
                    continue;
                }
                let factor = &m[i][col] * &inv;
                for j in col..n {
                    let sub = &factor * &m[col][j];
                    m[i][j] -= sub;
                }
            }
        }
        det
    }

    pub fn row_swap(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn col_swap(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[a] += f * row[b]`
    pub fn row_add(&mut self, a: usize, b: usize, f: &Poly) {
        for j in 0..self.cols {
            let add = self.at(b, j) * f;
            *self.at_mut(a, j) = &*self.at(a, j) + &add;
        }
    }

    /// `col[a] += f * col[b]`
    pub fn col_add(&mut self, a: usize, b: usize, f: &Poly) {
        for i in 0..self.rows {
            let add = self.at(i, b) * f;
            *self.at_mut(i, a) = &*self.at(i, a) + &add;
        }
    }

    pub fn row_scale(&mut self, a: usize, f: &Rat) {
        for j in 0..self.cols {
            *self.at_mut(a, j) = self.at(a, j).scale(f);
        }
    }

    /// Parses a matrix document: one row per line, entries separated by `;`,
    /// each entry comma-separated ascending coefficients.
    pub fn parse(text: &str) -> Result<PolyMatrix> {
        let mut rows: Vec<Vec<Poly>> = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split(';')
                .map(Poly::parse)
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::BadInput(format!("matrix line {}: {e}", ln + 1)))?;
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::BadInput("matrix file is empty".into()));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::BadInput("matrix rows have unequal lengths".into()));
        }
        let rows_n = rows.len();
        Ok(PolyMatrix::new(
            rows_n,
            cols,
            rows.into_iter().flatten().collect(),
        ))
    }
}

/// Exact Lagrange interpolation through `(x, y)` points with distinct `x`.
pub fn interpolate(points: &[(Rat, Rat)]) -> Poly {
    let mut acc = Poly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = Poly::constant(yi.clone());
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = xi - xj;
            assert!(!denom.is_zero(), "interpolation nodes must be distinct");
            let factor = Poly::new(vec![-xj / &denom, Rat::one() / denom]);
            basis = &basis * &factor;
        }
        acc = &acc + &basis;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    #[test]
    fn divmod_round_trips() {
        let a = Poly::new(vec![rat_int(2), rat_int(-3), rat_int(0), rat_int(1)]);
        let d = Poly::new(vec![rat_int(-1), rat_int(1)]);
        let (q, r) = a.divmod(&d);
        assert_eq!(&(&q * &d) + &r, a);
        assert!(r.degree() < d.degree() || r.is_zero());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(Poly::t_power(2).to_string(), "t^2");
        assert_eq!(
            Poly::new(vec![rat_int(1), rat_int(-2)]).to_string(),
            "-2*t + 1"
        );
        assert_eq!(Poly::new(vec![rat(1, 2)]).to_string(), "1/2");
    }

    #[test]
    fn parse_matrix_document() {
        let m = PolyMatrix::parse("0,1;1\n0;0,1").unwrap();
        assert_eq!(m.at(0, 0), &Poly::t_power(1));
        assert_eq!(m.at(0, 1), &Poly::one());
        assert_eq!(m.at(1, 0), &Poly::zero());
        assert_eq!(m.det(), Poly::t_power(2));
        assert!(PolyMatrix::parse("1;2\n3").is_err());
    }

    #[test]
    fn interpolation_recovers_cubic() {
        // (m+1)(m+2)(m+3)/6 through four points, checked elsewhere.
        let f = |m: i64| rat_int((m + 1) * (m + 2) * (m + 3) / 6);
        let pts: Vec<(Rat, Rat)> = (0..4).map(|m| (rat_int(m), f(m))).collect();
        let p = interpolate(&pts);
        for m in 0..10 {
            assert_eq!(p.eval(&rat_int(m)), f(m));
        }
    }

    #[test]
    fn determinant_multiplies() {
        let a = PolyMatrix::parse("0,1;1\n1;0,0,1").unwrap();
        let b = PolyMatrix::parse("1;0,2\n0;0,1").unwrap();
        assert_eq!(a.mul(&b).det(), &a.det() * &b.det());
    }
}
