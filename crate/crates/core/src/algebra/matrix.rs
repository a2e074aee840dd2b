//! Dense matrices over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::GradedPoly;
use super::rational::{fmt_rational, Rational};
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    // row-major
    data: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &Rational::one())
    }

    pub fn scalar(n: usize, c: &Rational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn diag(entries: &[Rational]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::Ragged);
        }
        Ok(ExactMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| super::rational::int(x)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    /// Column vector.
    pub fn column(entries: &[Rational]) -> Self {
        ExactMatrix {
            rows: entries.len(),
            cols: 1,
            data: entries.to_vec(),
        }
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

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::Shape {
                op: "mul",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(AlgebraError::Shape {
                op: "add",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// `self + c * I`.
    pub fn shift(&self, c: &Rational) -> Self {
        assert!(self.is_square(), "shift of non-square matrix");
        let mut m = self.clone();
        for i in 0..self.rows {
            m.data[i * self.cols + i] += c;
        }
        m
    }

    pub fn pow(&self, n: u32) -> Self {
        assert!(self.is_square(), "power of non-square matrix");
        let mut out = Self::identity(self.rows);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Block-diagonal sum.
    pub fn block_diag(blocks: &[&ExactMatrix]) -> Self {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.write_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn write_block(&mut self, r0: usize, c0: usize, b: &ExactMatrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).recip();
            for j in 0..m.cols {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i != row && !m.get(i, col).is_zero() {
                    let f = m.get(i, col).clone();
                    for j in 0..m.cols {
                        let v = m.get(i, j) - &f * m.get(row, j);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
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
        self.rref().1.len()
    }

    /// Basis of the right kernel, as column vectors.
    pub fn kernel(&self) -> Vec<ExactMatrix> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                ExactMatrix::column(&v)
            })
            .collect()
    }

    /// Basis of the column space (pivot columns of `self`).
    pub fn image(&self) -> Vec<ExactMatrix> {
        let (_, pivots) = self.rref();
        pivots
            .iter()
            .map(|&c| {
                ExactMatrix::column(
                    &(0..self.rows)
                        .map(|i| self.get(i, c).clone())
                        .collect::<Vec<_>>(),
                )
            })
            .collect()
    }

    /// Evaluates a univariate polynomial at this matrix (Horner).
    pub fn eval_poly(&self, p: &GradedPoly) -> Self {
        let coeffs = p.univariate_coeffs();
        let n = self.rows;
        let mut acc = Self::zeros(n, n);
        for c in coeffs.iter().rev() {
            acc = (&acc * self).shift(c);
        }
        acc
    }

    fn flatten(&self) -> Vec<Rational> {
        self.data.clone()
    }
}

/// Monic polynomial of least degree annihilating `m`, found as the first
/// linear dependence among `I, m, m^2, ...`.
pub fn minimal_polynomial(m: &ExactMatrix) -> Result<GradedPoly, AlgebraError> {
    if !m.is_square() {
        return Err(AlgebraError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(GradedPoly::univariate("x", &[Rational::one()]));
    }
    // columns: vec(m^0), vec(m^1), ...
    let mut powers: Vec<Vec<Rational>> = vec![ExactMatrix::identity(n).flatten()];
    let mut current = ExactMatrix::identity(n);
    for k in 1..=n {
        current = &current * m;
        powers.push(current.flatten());
        let cols = powers.len();
        let rows = n * n;
        let mut sys = ExactMatrix::zeros(rows, cols);
        for (j, col) in powers.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                sys.set(i, j, v.clone());
            }
        }
        let kernel = sys.kernel();
        if let Some(v) = kernel.first() {
            // the newest power is the only free column, normalise it to 1
            let lead = v.get(k, 0).clone();
            let coeffs: Vec<Rational> = (0..=k).map(|i| v.get(i, 0) / &lead).collect();
            return Ok(GradedPoly::univariate("x", &coeffs));
        }
    }
    unreachable!("Cayley-Hamilton bounds the degree by {n}")
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols)
                .map(|j| fmt_rational(self.get(i, j)))
                .collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: Self) -> ExactMatrix {
        self.checked_mul(rhs).expect("shape mismatch")
    }
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: Self) -> ExactMatrix {
        self.checked_add(rhs).expect("shape mismatch")
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: Self) -> ExactMatrix {
        self.checked_add(&-rhs).expect("shape mismatch")
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    #[test]
    fn identity_minpoly() {
        let p = minimal_polynomial(&ExactMatrix::identity(3)).unwrap();
        assert_eq!(p, GradedPoly::from_roots("x", &[int(1)]));
    }

    #[test]
    fn distinct_eigenvalues() {
        let p = minimal_polynomial(&ExactMatrix::diag(&[int(4), int(-2)])).unwrap();
        assert_eq!(p, GradedPoly::from_roots("x", &[int(4), int(-2)]));
        let p = minimal_polynomial(&ExactMatrix::diag(&[int(16), int(-8), int(4)])).unwrap();
        assert_eq!(p, GradedPoly::from_roots("x", &[int(16), int(-8), int(4)]));
    }

    #[test]
    fn jordan_block_needs_square() {
        let j = ExactMatrix::from_i64(&[&[2, 1], &[0, 2]]);
        let p = minimal_polynomial(&j).unwrap();
        assert_eq!(p, GradedPoly::from_roots("x", &[int(2), int(2)]));
        assert!(j.eval_poly(&p).is_zero());
    }

    #[test]
    fn non_square_rejected() {
        assert!(matches!(
            minimal_polynomial(&ExactMatrix::zeros(2, 3)),
            Err(AlgebraError::NotSquare { .. })
        ));
    }

    #[test]
    fn kernel_and_rank() {
        let m = ExactMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(m.rank(), 1);
        let ker = m.kernel();
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!((&m * &v).is_zero());
        }
    }

    #[test]
    fn empty_matrix_minpoly_is_one() {
        let p = minimal_polynomial(&ExactMatrix::zeros(0, 0)).unwrap();
        assert_eq!(p.degree(), Some(0));
    }
}
