//! Dense complex linear algebra on the handful of shapes this crate needs.
//!
//! Everything is `Complex<f64>` and column-major. The sizes involved are
//! modest (array dimension N up to a few hundred, sample counts L up to a
//! few hundred), so the implementations favor clarity and deterministic
//! arithmetic order over blocking tricks: loops always run in column order,
//! sums always accumulate in index order, which keeps results bit-identical
//! across runs and thread counts.

mod evd;
mod pinv;
mod solve;

pub use evd::{herm_evd, HermEvd};
pub use pinv::{default_rank_rtol, pinv_psd};
pub use solve::solve_hermitian_pd;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex column vector, length ≥ 1, all entries finite.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector {
    data: Vec<Complex64>,
}

impl ComplexVector {
    /// Wraps a `Vec`, rejecting empty input and non-finite entries.
    pub fn from_vec(data: Vec<Complex64>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::invalid("ComplexVector::from_vec", "length must be >= 1"));
        }
        if let Some(i) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::invalid(
                "ComplexVector::from_vec",
                format!("entry {i} is not finite"),
            ));
        }
        Ok(ComplexVector { data })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("ComplexVector::zeros", "length must be >= 1"));
        }
        Ok(ComplexVector {
            data: vec![Complex64::new(0.0, 0.0); n],
        })
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        false // the constructors reject length 0
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn get(&self, i: usize) -> Complex64 {
        self.data[i]
    }

    pub fn set(&mut self, i: usize, v: Complex64) {
        self.data[i] = v;
    }

    /// Inner product `self^H other` (conjugate-linear in `self`).
    pub fn inner(&self, other: &ComplexVector) -> Result<Complex64> {
        if self.len() != other.len() {
            return Err(Error::dimension(
                "inner",
                format!("lengths {} vs {}", self.len(), other.len()),
            ));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, b) in self.data.iter().zip(&other.data) {
            acc += a.conj() * b;
        }
        Ok(acc)
    }

    /// Euclidean norm.
    pub fn norm2(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, c: Complex64) -> ComplexVector {
        ComplexVector {
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    pub fn add(&self, other: &ComplexVector) -> Result<ComplexVector> {
        if self.len() != other.len() {
            return Err(Error::dimension(
                "ComplexVector::add",
                format!("lengths {} vs {}", self.len(), other.len()),
            ));
        }
        Ok(ComplexVector {
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &ComplexVector) -> Result<ComplexVector> {
        if self.len() != other.len() {
            return Err(Error::dimension(
                "ComplexVector::sub",
                format!("lengths {} vs {}", self.len(), other.len()),
            ));
        }
        Ok(ComplexVector {
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Complex64> {
        self.data.iter()
    }
}

/// Dense complex matrix, column-major, both dimensions ≥ 1, entries finite.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>, // data[col * rows + row]
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::invalid(
                "ComplexMatrix::zeros",
                "both dimensions must be >= 1",
            ));
        }
        Ok(ComplexMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        Ok(m)
    }

    /// Builds a matrix entry by entry; rejects non-finite values.
    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Complex64,
    ) -> Result<Self> {
        let mut m = Self::zeros(rows, cols)?;
        for j in 0..cols {
            for i in 0..rows {
                let v = f(i, j);
                if !v.re.is_finite() || !v.im.is_finite() {
                    return Err(Error::invalid(
                        "ComplexMatrix::from_fn",
                        format!("entry ({i}, {j}) is not finite"),
                    ));
                }
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    /// Stacks equal-length vectors as columns.
    pub fn from_columns(cols: &[ComplexVector]) -> Result<Self> {
        if cols.is_empty() {
            return Err(Error::invalid(
                "ComplexMatrix::from_columns",
                "need at least one column",
            ));
        }
        let rows = cols[0].len();
        if let Some(j) = cols.iter().position(|c| c.len() != rows) {
            return Err(Error::dimension(
                "ComplexMatrix::from_columns",
                format!("column {j} has length {}, expected {rows}", cols[j].len()),
            ));
        }
        let mut m = Self::zeros(rows, cols.len())?;
        for (j, c) in cols.iter().enumerate() {
            m.col_mut(j).copy_from_slice(c.as_slice());
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[j * self.rows + i]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[j * self.rows + i] = v;
    }

    pub fn col(&self, j: usize) -> &[Complex64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn col_mut(&mut self, j: usize) -> &mut [Complex64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    /// Copies column `j` out as a vector.
    pub fn col_vector(&self, j: usize) -> ComplexVector {
        ComplexVector {
            data: self.col(j).to_vec(),
        }
    }

    /// Matrix product `self * other`.
    pub fn matmul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.rows {
            return Err(Error::dimension(
                "matmul",
                format!(
                    "left is {}x{}, right is {}x{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            ));
        }
        let mut out = ComplexMatrix::zeros(self.rows, other.cols)?;
        for j in 0..other.cols {
            let bcol = other.col(j);
            let ocol = out.col_mut(j);
            for (k, &bkj) in bcol.iter().enumerate() {
                if bkj == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let acol = &self.data[k * self.rows..(k + 1) * self.rows];
                for (o, &a) in ocol.iter_mut().zip(acol) {
                    *o += a * bkj;
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `self * x`.
    pub fn gemv(&self, x: &ComplexVector) -> Result<ComplexVector> {
        if self.cols != x.len() {
            return Err(Error::dimension(
                "gemv",
                format!("matrix is {}x{}, vector has length {}", self.rows, self.cols, x.len()),
            ));
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for (k, &xk) in x.as_slice().iter().enumerate() {
            if xk == Complex64::new(0.0, 0.0) {
                continue;
            }
            let acol = self.col(k);
            for (o, &a) in out.iter_mut().zip(acol) {
                *o += a * xk;
            }
        }
        Ok(ComplexVector { data: out })
    }

    /// Adjoint-vector product `self^H x` without forming the adjoint.
    pub fn adjoint_gemv(&self, x: &ComplexVector) -> Result<ComplexVector> {
        if self.rows != x.len() {
            return Err(Error::dimension(
                "adjoint_gemv",
                format!("matrix is {}x{}, vector has length {}", self.rows, self.cols, x.len()),
            ));
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.cols];
        for (j, o) in out.iter_mut().enumerate() {
            let acol = self.col(j);
            let mut acc = Complex64::new(0.0, 0.0);
            for (&a, &xi) in acol.iter().zip(x.as_slice()) {
                acc += a.conj() * xi;
            }
            *o = acc;
        }
        Ok(ComplexVector { data: out })
    }

    /// Conjugate transpose.
    pub fn hermitian_transpose(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows).expect("dims >= 1");
        for j in 0..self.cols {
            for i in 0..self.rows {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn add(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::dimension(
                "ComplexMatrix::add",
                format!(
                    "{}x{} vs {}x{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            ));
        }
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::dimension(
                "ComplexMatrix::sub",
                format!(
                    "{}x{} vs {}x{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            ));
        }
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    /// Adds `d` to every diagonal entry (square matrices only).
    pub fn add_scaled_identity(&self, d: f64) -> Result<ComplexMatrix> {
        if self.rows != self.cols {
            return Err(Error::dimension(
                "add_scaled_identity",
                format!("matrix is {}x{}", self.rows, self.cols),
            ));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            let v = out.get(i, i);
            out.set(i, i, v + Complex64::new(d, 0.0));
        }
        Ok(out)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Max absolute deviation from Hermitian symmetry, `max |a_ij - conj(a_ji)|`.
    pub fn hermitian_deviation(&self) -> f64 {
        if self.rows != self.cols {
            return f64::INFINITY;
        }
        let mut worst = 0.0_f64;
        for j in 0..self.cols {
            for i in 0..=j {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Replaces the matrix with its Hermitian part `(A + A^H) / 2`.
    pub fn hermitize(&self) -> ComplexMatrix {
        let mut out = self.clone();
        for j in 0..self.cols.min(self.rows) {
            for i in 0..=j {
                let avg = (self.get(i, j) + self.get(j, i).conj()) * 0.5;
                out.set(i, j, avg);
                out.set(j, i, avg.conj());
            }
        }
        out
    }
}

#[cfg(test)]
pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
