//! Z2-graded square matrices and the Berezinian.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;
use crate::torus::TorusRational;

/// Exact field operations needed by matrix routines.
///
/// Constants are produced from an existing element (`zero_like`, `one_like`)
/// because torus functions carry their number of variables.
pub trait Field: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
}

impl Field for GaussianRational {
    fn zero_like(&self) -> Self {
        GaussianRational::zero()
    }
    fn one_like(&self) -> Self {
        GaussianRational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        GaussianRational::inv(self)
    }
}

impl Field for TorusRational {
    fn zero_like(&self) -> Self {
        TorusRational::zero(self.num_vars())
    }
    fn one_like(&self) -> Self {
        TorusRational::one(self.num_vars())
    }
    fn is_zero(&self) -> bool {
        TorusRational::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        TorusRational::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        TorusRational::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        TorusRational::mul(self, other)
    }
    fn neg(&self) -> Self {
        TorusRational::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        TorusRational::inv(self)
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn filled(rows: usize, cols: usize, value: F) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    /// Identity of size `n` whose entries are built from `unit`.
    pub fn identity(n: usize, unit: &F) -> Self {
        let mut m = Self::filled(n, n, unit.zero_like());
        for i in 0..n {
            m[(i, i)] = unit.one_like();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        let mut data = Vec::with_capacity((r1 - r0) * (c1 - c0));
        for i in r0..r1 {
            data.extend_from_slice(&self.row(i)[c0..c1]);
        }
        Matrix { rows: r1 - r0, cols: c1 - c0, data }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: Option<F> = None;
                for k in 0..self.cols {
                    let a = &self[(i, k)];
                    let b = &other[(k, j)];
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let p = a.mul(b);
                    acc = Some(match acc {
                        Some(x) => x.add(&p),
                        None => p,
                    });
                }
                data.push(acc.unwrap_or_else(|| self.data[0].zero_like()));
            }
        }
        Ok(Matrix { rows: self.rows, cols: other.cols, data })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    /// Determinant by Gaussian elimination. The empty matrix has determinant `unit`.
    pub fn det(&self, unit: &F) -> F {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = unit.one_like();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return unit.zero_like();
            };
            if p != col {
                a.swap_rows(p, col);
                det = det.neg();
            }
            let pivot = a[(col, col)].clone();
            det = det.mul(&pivot);
            let pinv = pivot.inv().expect("nonzero pivot");
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].mul(&pinv);
                for c in col..n {
                    let v = a[(r, c)].sub(&factor.mul(&a[(col, c)]));
                    a[(r, c)] = v;
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan elimination; `None` when singular.
    pub fn inverse(&self, unit: &F) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n, unit);
        for col in 0..n {
            let p = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            a.swap_rows(p, col);
            inv.swap_rows(p, col);
            let pinv = a[(col, col)].inv()?;
            for c in 0..n {
                a[(col, c)] = a[(col, c)].mul(&pinv);
                inv[(col, c)] = inv[(col, c)].mul(&pinv);
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                for c in 0..n {
                    let v = a[(r, c)].sub(&factor.mul(&a[(col, c)]));
                    a[(r, c)] = v;
                    let w = inv[(r, c)].sub(&factor.mul(&inv[(col, c)]));
                    inv[(r, c)] = w;
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::is_zero)
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

/// A `(p|q)`-graded square matrix `[[A, B], [C, D]]`; even coordinates come first.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperMatrix<F> {
    even_dim: usize,
    odd_dim: usize,
    full: Matrix<F>,
    unit: F,
}

impl<F: Field> SuperMatrix<F> {
    /// `unit` fixes the scalar ring for empty blocks (relevant for torus functions).
    pub fn new(even_dim: usize, odd_dim: usize, full: Matrix<F>, unit: F) -> Result<Self> {
        let n = even_dim + odd_dim;
        if full.rows() != n || full.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "({even_dim}|{odd_dim}) supermatrix from a {}x{} matrix",
                full.rows(),
                full.cols()
            )));
        }
        Ok(SuperMatrix { even_dim, odd_dim, full, unit: unit.one_like() })
    }

    pub fn from_blocks(a: Matrix<F>, b: Matrix<F>, c: Matrix<F>, d: Matrix<F>, unit: F) -> Result<Self> {
        let (p, q) = (a.rows(), d.rows());
        let shapes_ok = a.cols() == p
            && d.cols() == q
            && b.rows() == p
            && b.cols() == q
            && c.rows() == q
            && c.cols() == p;
        if !shapes_ok {
            return Err(Error::DimensionMismatch("block shapes".into()));
        }
        let mut full = Matrix::filled(p + q, p + q, unit.zero_like());
        for i in 0..p + q {
            for j in 0..p + q {
                full[(i, j)] = match (i < p, j < p) {
                    (true, true) => a[(i, j)].clone(),
                    (true, false) => b[(i, j - p)].clone(),
                    (false, true) => c[(i - p, j)].clone(),
                    (false, false) => d[(i - p, j - p)].clone(),
                };
            }
        }
        Self::new(p, q, full, unit)
    }

    pub fn identity(even_dim: usize, odd_dim: usize, unit: &F) -> Self {
        let full = Matrix::identity(even_dim + odd_dim, unit);
        SuperMatrix { even_dim, odd_dim, full, unit: unit.one_like() }
    }

    pub fn even_dim(&self) -> usize {
        self.even_dim
    }

    pub fn odd_dim(&self) -> usize {
        self.odd_dim
    }

    pub fn full(&self) -> &Matrix<F> {
        &self.full
    }

    pub fn block_a(&self) -> Matrix<F> {
        self.full.submatrix(0, self.even_dim, 0, self.even_dim)
    }

    pub fn block_b(&self) -> Matrix<F> {
        let n = self.even_dim + self.odd_dim;
        self.full.submatrix(0, self.even_dim, self.even_dim, n)
    }

    pub fn block_c(&self) -> Matrix<F> {
        let n = self.even_dim + self.odd_dim;
        self.full.submatrix(self.even_dim, n, 0, self.even_dim)
    }

    pub fn block_d(&self) -> Matrix<F> {
        let n = self.even_dim + self.odd_dim;
        self.full.submatrix(self.even_dim, n, self.even_dim, n)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if (self.even_dim, self.odd_dim) != (other.even_dim, other.odd_dim) {
            return Err(Error::DimensionMismatch("supermatrix gradings differ".into()));
        }
        Ok(SuperMatrix {
            even_dim: self.even_dim,
            odd_dim: self.odd_dim,
            full: self.full.mul(&other.full)?,
            unit: self.unit.clone(),
        })
    }

    /// `ber(M) = det(A - B D⁻¹ C) / det(D)`.
    pub fn berezinian(&self) -> Result<F> {
        let u = &self.unit;
        let a = self.block_a();
        let d = self.block_d();
        let d_inv = d.inverse(u).ok_or(Error::SingularOddBlock)?;
        let det_d = d.det(u);
        let schur = if self.even_dim == 0 || self.odd_dim == 0 {
            a
        } else {
            let bdc = self.block_b().mul(&d_inv)?.mul(&self.block_c())?;
            a.sub(&bdc)
        };
        let inv_det_d = det_d.inv().ok_or(Error::SingularOddBlock)?;
        Ok(schur.det(u).mul(&inv_det_d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPoly;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    fn m(rows: &[&[i64]]) -> Matrix<GaussianRational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| g(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn identity_has_berezinian_one() {
        for (p, q) in [(1, 1), (2, 1), (0, 2), (3, 0)] {
            let id = SuperMatrix::identity(p, q, &g(1));
            assert_eq!(id.berezinian().unwrap(), g(1));
        }
    }

    #[test]
    fn diagonal_one_one() {
        let sm = SuperMatrix::new(1, 1, m(&[&[6, 0], &[0, 4]]), g(1)).unwrap();
        assert_eq!(sm.berezinian().unwrap(), GaussianRational::ratio(3, 2));
    }

    #[test]
    fn singular_odd_block() {
        let sm = SuperMatrix::new(1, 1, m(&[&[6, 1], &[1, 0]]), g(1)).unwrap();
        assert!(matches!(sm.berezinian(), Err(Error::SingularOddBlock)));
    }

    #[test]
    fn schur_complement_is_used() {
        // A - B D^-1 C = 5 - 2*3/1 = -1
        let sm = SuperMatrix::new(1, 1, m(&[&[5, 2], &[3, 1]]), g(1)).unwrap();
        assert_eq!(sm.berezinian().unwrap(), g(-1));
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(a.det(&g(1)), g(18));
        let inv = a.inverse(&g(1)).unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(3, &g(1)));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse(&g(1)).is_none());
    }

    #[test]
    fn berezinian_over_torus_functions() {
        let x = TorusRational::from_poly(LaurentPoly::monomial(vec![2], g(1)));
        let one = TorusRational::one(1);
        let zero = TorusRational::zero(1);
        let full = Matrix::from_rows(vec![vec![one.clone(), zero.clone()], vec![zero, x.clone()]]).unwrap();
        let sm = SuperMatrix::new(1, 1, full, one).unwrap();
        assert_eq!(sm.berezinian().unwrap(), x.inv().unwrap());
    }
}
