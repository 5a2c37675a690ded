//! Exact rational scalars, vectors and dense matrices.
//!
//! Everything downstream (weights, structure constants, Gram blocks) is built
//! on [`Rat`], an arbitrary-precision rational kept in lowest terms.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Spec(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Canonical text form: `p/q` in lowest terms, or `p` when the denominator is 1.
pub fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

pub fn pow(base: &Rat, exp: i64) -> Rat {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), (-exp) as usize)
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(fmt_rat).collect())
            .collect();
        write!(f, "RatMatrix{rows:?}")
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        Self::from_rows(rows).expect("ragged literal matrix")
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("{} columns, vector of {}", self.cols, v.len())));
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> RatMatrix {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// Rows are first cleared of denominators so the elimination runs over
    /// integers; every division in the recurrence is exact.
    pub fn det(&self) -> Result<Rat> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("det of {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rat::one());
        }
        let mut scale = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let row = self.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
            scale *= &l;
            a.push(row.iter().map(|x| x.numer() * (&l / x.denom())).collect());
        }
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(p) => {
                        a.swap(k, p);
                        sign = -sign;
                    }
                    None => return Ok(Rat::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let d = Rat::new(a[n - 1][n - 1].clone() * sign, scale);
        Ok(d)
    }

    /// Reduced row echelon form; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    let v = &self[(r, j)] * &f;
                    self[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Indices of a maximal linearly independent set of rows, chosen greedily
    /// in order.
    pub fn independent_rows(&self) -> Vec<usize> {
        let t = self.transpose();
        t.clone().rref()
    }

    /// Basis of the right null space `{v : m v = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Solves `m x = b` for square invertible `m`.
    pub fn solve(&self, b: &[Rat]) -> Result<Vec<Rat>> {
        if !self.is_square() || b.len() != self.rows {
            return Err(Error::Dimension(format!(
                "solve with {}x{} matrix and rhs of {}",
                self.rows,
                self.cols,
                b.len()
            )));
        }
        let n = self.rows;
        let mut aug = Self::from_fn(n, n + 1, |i, j| {
            if j < n { self[(i, j)].clone() } else { b[i].clone() }
        });
        let pivots = aug.rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
            return Err(Error::Singular);
        }
        Ok((0..n).map(|i| aug[(i, n)].clone()).collect())
    }

    pub fn inverse(&self) -> Result<RatMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                Rat::one()
            } else {
                Rat::zero()
            }
        });
        let pivots = aug.rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
            return Err(Error::Singular);
        }
        Ok(Self::from_fn(n, n, |i, j| aug[(i, n + j)].clone()))
    }

    /// Solves `m x = b` for a matrix with independent columns; `None` when
    /// `b` is outside the column span.
    pub fn solve_in_span(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        let (r, c) = (self.rows, self.cols);
        let mut aug = Self::from_fn(r, c + 1, |i, j| {
            if j < c { self[(i, j)].clone() } else { b[i].clone() }
        });
        let pivots = aug.rref();
        if pivots.contains(&c) {
            return None;
        }
        let mut x = vec![Rat::zero(); c];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = aug[(row, c)].clone();
        }
        Some(x)
    }

    pub fn max_abs_entry(&self) -> Rat {
        self.data.iter().map(Signed::abs).max().unwrap_or_else(Rat::zero)
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

/// Coefficients of the interpolating polynomial through `(xs[i], ys[i])`,
/// lowest degree first. Abscissae must be distinct.
pub fn interpolate(xs: &[Rat], ys: &[Rat]) -> Vec<Rat> {
    let n = xs.len();
    // divided differences
    let mut dd = ys.to_vec();
    for k in 1..n {
        for i in (k..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - k]);
        }
    }
    // expand the Newton form
    let mut coeffs = vec![Rat::zero(); n];
    for k in (0..n).rev() {
        // coeffs = coeffs * (x - xs[k]) + dd[k]
        let mut next = vec![Rat::zero(); n];
        for d in 0..n {
            if coeffs[d].is_zero() {
                continue;
            }
            if d + 1 < n {
                next[d + 1] += &coeffs[d];
            }
            next[d] -= &coeffs[d] * &xs[k];
        }
        next[0] += &dd[k];
        coeffs = next;
    }
    coeffs
}

/// Degree of a coefficient list; `None` for the zero polynomial.
pub fn degree(coeffs: &[Rat]) -> Option<usize> {
    coeffs.iter().rposition(|c| !c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn det_examples() {
        assert_eq!(RatMatrix::zeros(0, 0).det().unwrap(), int(1));
        assert_eq!(RatMatrix::identity(3).det().unwrap(), int(1));
        assert_eq!(RatMatrix::from_i64(&[&[1, 2], &[3, 4]]).det().unwrap(), int(-2));
        assert!(matches!(RatMatrix::zeros(2, 3).det(), Err(Error::Dimension(_))));
    }

    #[test]
    fn det_needs_pivoting_and_fractions() {
        let m = RatMatrix::from_rows(vec![
            vec![int(0), rat(1, 2), int(1)],
            vec![rat(2, 3), int(0), int(1)],
            vec![int(1), int(1), int(0)],
        ])
        .unwrap();
        // cofactor expansion along the first row
        let expected = -rat(1, 2) * (rat(2, 3) * int(0) - int(1) * int(1))
            + int(1) * (rat(2, 3) * int(1) - int(0) * int(1));
        assert_eq!(m.det().unwrap(), expected);
    }

    #[test]
    fn kernel_examples() {
        assert!(RatMatrix::identity(2).kernel_basis().is_empty());
        let k = RatMatrix::zeros(2, 2).kernel_basis();
        assert_eq!(k.len(), 2);
        assert_eq!(RatMatrix::from_rows(k).unwrap().rank(), 2);
        let k = RatMatrix::from_i64(&[&[1, 1], &[1, 1]]).kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(&k[0][0] + &k[0][1], int(0));
        assert!(!k[0][0].is_zero());
    }

    #[test]
    fn solve_examples() {
        let b = vec![int(5), rat(-1, 3)];
        assert_eq!(RatMatrix::identity(2).solve(&b).unwrap(), b);
        let d = RatMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        assert_eq!(d.solve(&[int(2), int(3)]).unwrap(), vec![int(1), int(1)]);
        let u = RatMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        assert_eq!(u.solve(&[int(3), int(1)]).unwrap(), vec![int(2), int(1)]);
        let s = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.solve(&[int(1), int(1)]), Err(Error::Singular));
    }

    #[test]
    fn independent_rows_picks_basis() {
        let m = RatMatrix::from_i64(&[&[0, 0], &[1, 2], &[2, 4], &[0, 1]]);
        assert_eq!(m.independent_rows(), vec![1, 3]);
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let f = |x: &Rat| x * x * x - int(2) * x + rat(1, 2);
        let xs: Vec<Rat> = (0..6).map(int).collect();
        let ys: Vec<Rat> = xs.iter().map(f).collect();
        let c = interpolate(&xs, &ys);
        assert_eq!(degree(&c), Some(3));
        assert_eq!(c[0], rat(1, 2));
        assert_eq!(c[1], int(-2));
        assert_eq!(c[3], int(1));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rat(" 7 ").unwrap(), int(7));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert_eq!(fmt_rat(&rat(-3, 2)), "-3/2");
        assert_eq!(fmt_rat(&int(4)), "4");
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = RatMatrix> {
        proptest::collection::vec((-5i64..=5, 1i64..=3), n * n).prop_map(move |v| {
            let data = v.into_iter().map(|(p, q)| rat(p, q)).collect();
            RatMatrix { rows: n, cols: n, data }
        })
    }

    proptest! {
        #[test]
        fn det_is_multiplicative(a in small_matrix(3), b in small_matrix(3)) {
            let ab = a.mul(&b).unwrap();
            prop_assert_eq!(ab.det().unwrap(), a.det().unwrap() * b.det().unwrap());
        }

        #[test]
        fn det_is_alternating(a in small_matrix(4), i in 0usize..4, j in 0usize..4) {
            prop_assume!(i != j);
            let mut s = a.clone();
            s.swap_rows(i, j);
            prop_assert_eq!(s.det().unwrap(), -a.det().unwrap());
        }

        #[test]
        fn kernel_vectors_are_annihilated(a in small_matrix(3), z in 0usize..3) {
            let mut m = a.clone();
            for j in 0..3 {
                m[(z, j)] = Rat::zero();
            }
            let rank = m.rank();
            let k = m.kernel_basis();
            prop_assert_eq!(k.len(), 3 - rank);
            for v in k {
                prop_assert!(m.mul_vec(&v).unwrap().iter().all(Zero::is_zero));
            }
        }
    }
}
