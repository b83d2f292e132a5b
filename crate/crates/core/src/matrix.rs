//! Dense matrices with exact linear algebra over a [`Field`].

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::field::{Field, ScalarField};
use crate::univariate::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
  #[error("shape mismatch: {0}")]
  ShapeMismatch(String),
  #[error("matrix is not square")]
  NotSquare,
  #[error("matrix is singular")]
  Singular,
  #[error("matrix is not symmetric")]
  NotSymmetric,
  #[error("eigenvalues do not lie in the scalar field (characteristic polynomial has an irreducible factor of degree {0})")]
  EigenvaluesNotInField(usize),
  #[error("matrix is not diagonalizable over the scalar field")]
  NotDiagonalizable,
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T> {
  rows: usize,
  cols: usize,
  data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
  pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
    assert_eq!(data.len(), rows * cols, "data length must be rows * cols");
    Self { rows, cols, data }
  }

  pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
    let mut data = Vec::with_capacity(rows * cols);
    for i in 0..rows {
      for j in 0..cols {
        data.push(f(i, j));
      }
    }
    Self { rows, cols, data }
  }

  pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
    Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
  }

  pub fn rows(&self) -> usize { self.rows }

  pub fn cols(&self) -> usize { self.cols }

  pub fn shape(&self) -> (usize, usize) { (self.rows, self.cols) }

  pub fn get(&self, i: usize, j: usize) -> &T { &self.data[i * self.cols + j] }

  pub fn set(&mut self, i: usize, j: usize, v: T) { self.data[i * self.cols + j] = v; }

  pub fn row(&self, i: usize) -> &[T] { &self.data[i * self.cols..(i + 1) * self.cols] }

  pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
    self.data.iter().enumerate().map(move |(idx, v)| (idx / self.cols.max(1), idx % self.cols.max(1), v))
  }

  pub fn transpose(&self) -> Self { Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone()) }

  pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
    Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
  }

  pub fn try_map<U: Clone, E>(&self, f: impl FnMut(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
    Ok(Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect::<Result<_, _>>()? })
  }

  /// Submatrix with the given rows and columns.
  pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
    Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
  }

  pub fn into_rows(self) -> Vec<Vec<T>> {
    let cols = self.cols;
    if cols == 0 {
      return vec![Vec::new(); self.rows];
    }
    let mut it = self.data.into_iter();
    (0..self.rows).map(|_| it.by_ref().take(cols).collect()).collect()
  }
}

impl<T: Clone + Zero> Matrix<T> {
  pub fn zeros(rows: usize, cols: usize) -> Self { Self::from_fn(rows, cols, |_, _| T::zero()) }

  pub fn is_zero(&self) -> bool { self.data.iter().all(Zero::is_zero) }
}

impl<T: Clone + Zero + One> Matrix<T> {
  pub fn identity(n: usize) -> Self { Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() }) }

  pub fn diag(d: &[T]) -> Self {
    Self::from_fn(d.len(), d.len(), |i, j| if i == j { d[i].clone() } else { T::zero() })
  }
}

impl<F: Field> Matrix<F> {
  pub fn add(&self, o: &Self) -> Self {
    assert_eq!(self.shape(), o.shape());
    Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).clone() + o.get(i, j).clone())
  }

  pub fn sub(&self, o: &Self) -> Self {
    assert_eq!(self.shape(), o.shape());
    Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).clone() - o.get(i, j).clone())
  }

  pub fn scale(&self, c: &F) -> Self { self.map(|x| x.clone() * c.clone()) }

  pub fn mul(&self, o: &Self) -> Self {
    assert_eq!(self.cols, o.rows, "inner dimensions must agree");
    let mut out = Self::zeros(self.rows, o.cols);
    for i in 0..self.rows {
      for k in 0..self.cols {
        let a = self.get(i, k);
        if a.is_zero() {
          continue;
        }
        for j in 0..o.cols {
          let b = o.get(k, j);
          if !b.is_zero() {
            let v = out.get(i, j).clone() + a.clone() * b.clone();
            out.set(i, j, v);
          }
        }
      }
    }
    out
  }

  pub fn trace(&self) -> F { (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc + self.get(i, i).clone()) }

  pub fn is_symmetric(&self) -> bool { self.rows == self.cols && *self == self.transpose() }

  /// Reduced row echelon form and pivot columns.
  pub fn rref(&self) -> (Self, Vec<usize>) {
    let mut m = self.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
      if r == m.rows {
        break;
      }
      let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
      if p != r {
        for j in 0..m.cols {
          m.data.swap(p * m.cols + j, r * m.cols + j);
        }
      }
      let inv = m.get(r, c).inv().expect("pivot is nonzero");
      for j in c..m.cols {
        let v = m.get(r, j).clone() * inv.clone();
        m.set(r, j, v);
      }
      for i in 0..m.rows {
        if i == r {
          continue;
        }
        let f = m.get(i, c).clone();
        if f.is_zero() {
          continue;
        }
        for j in c..m.cols {
          let v = m.get(i, j).clone() - f.clone() * m.get(r, j).clone();
          m.set(i, j, v);
        }
      }
      pivots.push(c);
      r += 1;
    }
    (m, pivots)
  }

  pub fn rank(&self) -> usize { self.rref().1.len() }

  pub fn inverse(&self) -> Result<Self, MatrixError> {
    if self.rows != self.cols {
      return Err(MatrixError::NotSquare);
    }
    let n = self.rows;
    let aug = Self::from_fn(n, 2 * n, |i, j| {
      if j < n {
        self.get(i, j).clone()
      } else if j - n == i {
        F::one()
      } else {
        F::zero()
      }
    });
    let (r, pivots) = aug.rref();
    if pivots.len() < n || pivots[n - 1] >= n {
      return Err(MatrixError::Singular);
    }
    Ok(Self::from_fn(n, n, |i, j| r.get(i, j + n).clone()))
  }

  /// Moore–Penrose pseudoinverse through a rank factorization `M = C·F`.
  pub fn pseudoinverse(&self) -> Self {
    let (r, pivots) = self.rref();
    let rank = pivots.len();
    if rank == 0 {
      return Self::zeros(self.cols, self.rows);
    }
    let all_rows: Vec<usize> = (0..self.rows).collect();
    let c = self.select(&all_rows, &pivots);
    let f = r.select(&(0..rank).collect::<Vec<_>>(), &(0..self.cols).collect::<Vec<_>>());
    let ct = c.transpose();
    let ft = f.transpose();
    let ctc_inv = ct.mul(&c).inverse().expect("full column rank");
    let fft_inv = f.mul(&ft).inverse().expect("full row rank");
    ft.mul(&fft_inv).mul(&ctc_inv).mul(&ct)
  }

  /// Orthogonal projector `I - M⁺M` onto the kernel of a symmetric matrix.
  pub fn kernel_projector(&self) -> Result<Self, MatrixError> {
    if !self.is_symmetric() {
      return Err(MatrixError::NotSymmetric);
    }
    Ok(Self::identity(self.rows).sub(&self.pseudoinverse().mul(self)))
  }

  /// Characteristic polynomial `det(xI - M)` by the Faddeev–LeVerrier recursion.
  pub fn char_poly(&self) -> Result<UniPoly<F>, MatrixError> {
    if self.rows != self.cols {
      return Err(MatrixError::NotSquare);
    }
    let n = self.rows;
    let mut coeffs = vec![F::zero(); n + 1];
    coeffs[n] = F::one();
    let mut m_k = Self::zeros(n, n);
    let id = Self::identity(n);
    for k in 1..=n {
      m_k = self.mul(&m_k).add(&id.scale(&coeffs[n - k + 1]));
      let c = -(self.mul(&m_k).trace()) * F::from_i64(k as i64).inv().expect("characteristic zero");
      coeffs[n - k] = c;
    }
    Ok(UniPoly::new(coeffs))
  }
}

/// One eigenvalue with its spectral projector.
#[derive(Clone, PartialEq, Debug)]
pub struct Eigenspace<F> {
  pub eigenvalue: F,
  pub projector: Matrix<F>,
}

impl<F: ScalarField> Matrix<F> {
  /// Distinct eigenvalues, sorted canonically, with their projectors from
  /// Lagrange interpolation. Fails unless the characteristic polynomial
  /// splits over the field and the matrix is diagonalizable.
  pub fn spectral_decomposition(&self) -> Result<Vec<Eigenspace<F>>, MatrixError> {
    let n = self.rows;
    if n == 0 {
      return Ok(Vec::new());
    }
    let cp = self.char_poly()?;
    let mut eig = F::roots(cp.coeffs());
    eig.sort_by(|a, b| a.canonical_cmp(b));
    let mut rest = cp;
    for l in &eig {
      let lin = UniPoly::linear(l.clone());
      loop {
        let (q, r) = rest.div_rem(&lin);
        if !r.is_zero() {
          break;
        }
        rest = q;
      }
    }
    if let Some(d) = rest.degree().filter(|d| *d > 0) {
      return Err(MatrixError::EigenvaluesNotInField(d));
    }
    let id = Self::identity(n);
    let mut out = Vec::with_capacity(eig.len());
    for (i, l) in eig.iter().enumerate() {
      let mut p = id.clone();
      for (j, mu) in eig.iter().enumerate() {
        if i != j {
          let denom = (l.clone() - mu.clone()).inv().expect("distinct eigenvalues");
          p = p.mul(&self.sub(&id.scale(mu))).scale(&denom);
        }
      }
      out.push(Eigenspace { eigenvalue: l.clone(), projector: p });
    }
    let recon = out.iter().fold(Self::zeros(n, n), |acc, e| acc.add(&e.projector.scale(&e.eigenvalue)));
    if recon != *self {
      return Err(MatrixError::NotDiagonalizable);
    }
    Ok(out)
  }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
    let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(1);
    for i in 0..self.rows {
      let row: Vec<String> = (0..self.cols).map(|j| format!("{:>width$}", cells[i * self.cols + j])).collect();
      writeln!(f, "[ {} ]", row.join("  "))?;
    }
    Ok(())
  }
}
