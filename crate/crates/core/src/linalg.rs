//! Small dense linear algebra: a row-major matrix, Householder QR for least
//! squares and LU with partial pivoting for square solves.

use crate::error::{Error, Result};

/// Relative threshold on the diagonal of R (after scaling columns to unit
/// norm) below which a column counts as linearly dependent.
pub const RANK_RTOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} values for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from equal-length rows. An empty slice gives a 0x0 matrix.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} columns, expected {}",
                    i,
                    r.len(),
                    cols
                )));
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[f64]> {
        // chunks_exact(0) panics, and a zero-column matrix still has rows
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Copies the rows in `range` into a new matrix.
    pub fn slice_rows(&self, range: std::ops::Range<usize>) -> Matrix {
        Matrix {
            rows: range.len(),
            cols: self.cols,
            data: self.data[range.start * self.cols..range.end * self.cols].to_vec(),
        }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack {} columns onto {}",
                other.cols, self.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Matrix-vector product `self * v`.
    pub fn mul_vec(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok(self.iter_rows().map(|r| dot(r, v)).collect())
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Householder QR of a tall matrix, stored compactly.
#[derive(Debug, Clone)]
pub struct HouseholderQr {
    rows: usize,
    cols: usize,
    // column-major working copy; below-diagonal entries hold the reflectors
    qr: Vec<f64>,
    diag: Vec<f64>,
    scale: Vec<f64>,
}

impl HouseholderQr {
    /// Factors `a` after scaling every column to unit Euclidean norm.
    ///
    /// Requires `rows >= cols`. Returns `RankDeficient` naming the first column
    /// whose scaled diagonal entry falls below [`RANK_RTOL`].
    pub fn new(a: &Matrix, names: &[String]) -> Result<Self> {
        let (m, n) = (a.rows(), a.cols());
        if m < n {
            return Err(Error::Underdetermined { rows: m, cols: n });
        }
        let name = |j: usize| names.get(j).cloned().unwrap_or_else(|| format!("x{}", j));
        let mut scale = vec![0.0; n];
        let mut qr = vec![0.0; m * n];
        for j in 0..n {
            let norm = (0..m).map(|i| a.get(i, j).powi(2)).sum::<f64>().sqrt();
            if norm == 0.0 {
                return Err(Error::RankDeficient {
                    column: j,
                    name: name(j),
                });
            }
            scale[j] = norm;
            for i in 0..m {
                qr[j * m + i] = a.get(i, j) / norm;
            }
        }

        let mut diag = vec![0.0; n];
        for k in 0..n {
            let col = k * m;
            let norm = (k..m).map(|i| qr[col + i].powi(2)).sum::<f64>().sqrt();
            if norm <= RANK_RTOL {
                return Err(Error::RankDeficient {
                    column: k,
                    name: name(k),
                });
            }
            let alpha = if qr[col + k] > 0.0 { -norm } else { norm };
            // v = x - alpha e1, stored in place and normalized so v[k] = 1
            let v0 = qr[col + k] - alpha;
            for i in k + 1..m {
                qr[col + i] /= v0;
            }
            qr[col + k] = 1.0;
            let beta = -v0 / alpha;
            for j in k + 1..n {
                let cj = j * m;
                let s: f64 = (k..m).map(|i| qr[col + i] * qr[cj + i]).sum();
                let f = beta * s;
                for i in k..m {
                    qr[cj + i] -= f * qr[col + i];
                }
            }
            diag[k] = alpha;
            // remember beta in the (now unused) diagonal slot
            qr[col + k] = beta;
        }
        Ok(HouseholderQr {
            rows: m,
            cols: n,
            qr,
            diag,
            scale,
        })
    }

    /// Least-squares solution of `a x ≈ b`.
    pub fn solve_least_squares(&self, b: &[f64]) -> Result<Vec<f64>> {
        let (m, n) = (self.rows, self.cols);
        if b.len() != m {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                m
            )));
        }
        let mut y = b.to_vec();
        for k in 0..n {
            let col = k * m;
            let beta = self.qr[col + k];
            let s = y[k] + (k + 1..m).map(|i| self.qr[col + i] * y[i]).sum::<f64>();
            let f = beta * s;
            y[k] -= f;
            for i in k + 1..m {
                y[i] -= f * self.qr[col + i];
            }
        }
        let mut x = vec![0.0; n];
        for k in (0..n).rev() {
            let mut s = y[k];
            for j in k + 1..n {
                s -= self.qr[j * m + k] * x[j];
            }
            x[k] = s / self.diag[k];
        }
        for (xj, s) in x.iter_mut().zip(&self.scale) {
            *xj /= s;
        }
        Ok(x)
    }
}

/// LU factorization with partial pivoting of a square matrix.
#[derive(Debug, Clone)]
pub struct Lu {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
}

impl Lu {
    /// Returns `None` if a pivot is exactly zero or below `pivot_tol` times the
    /// largest entry of the input.
    pub fn new(a: &Matrix, pivot_tol: f64) -> Option<Self> {
        let n = a.rows();
        assert_eq!(n, a.cols(), "LU needs a square matrix");
        let mut lu = a.as_slice().to_vec();
        let amax = lu.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (piv, pval) = (k..n)
                .map(|i| (i, lu[i * n + k].abs()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pval == 0.0 || pval <= pivot_tol * amax {
                return None;
            }
            if piv != k {
                for j in 0..n {
                    lu.swap(k * n + j, piv * n + j);
                }
                perm.swap(k, piv);
            }
            let d = lu[k * n + k];
            for i in k + 1..n {
                let f = lu[i * n + k] / d;
                lu[i * n + k] = f;
                for j in k + 1..n {
                    lu[i * n + j] -= f * lu[k * n + j];
                }
            }
        }
        Some(Lu { n, lu, perm })
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                x[i] -= self.lu[i * n + j] * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                x[i] -= self.lu[i * n + j] * x[j];
            }
            x[i] /= self.lu[i * n + i];
        }
        x
    }

    /// Explicit inverse, row-major.
    pub fn inverse(&self) -> Matrix {
        let n = self.n;
        let mut inv = Matrix::zeros(n, n);
        let mut e = vec![0.0; n];
        for j in 0..n {
            e.iter_mut().for_each(|v| *v = 0.0);
            e[j] = 1.0;
            let col = self.solve(&e);
            for (i, v) in col.into_iter().enumerate() {
                inv.set(i, j, v);
            }
        }
        inv
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qr_solves_overdetermined_line() {
        let a = Matrix::from_rows(&[[0.0, 1.0], [1.0, 1.0], [2.0, 1.0], [3.0, 1.0]]).unwrap();
        let qr = HouseholderQr::new(&a, &[]).unwrap();
        let x = qr.solve_least_squares(&[0.0, 1.0, 2.0, 4.0]).unwrap();
        assert!((x[0] - 1.3).abs() < 1e-12);
        assert!((x[1] + 0.2).abs() < 1e-12);
    }

    #[test]
    fn qr_flags_dependent_column() {
        let a = Matrix::from_rows(&[[1.0, 2.0, 1.0], [2.0, 4.0, 1.0], [3.0, 6.0, 1.0]]).unwrap();
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        match HouseholderQr::new(&a, &names) {
            Err(Error::RankDeficient { column, name }) => {
                assert_eq!(column, 1);
                assert_eq!(name, "b");
            }
            other => panic!("expected rank deficiency, got {:?}", other),
        }
    }

    #[test]
    fn lu_inverse_roundtrip() {
        let a = Matrix::from_rows(&[[0.0, 2.0, 1.0], [1.0, 1.0, 0.0], [3.0, 0.0, 1.0]]).unwrap();
        let inv = Lu::new(&a, 1e-14).unwrap().inverse();
        for i in 0..3 {
            for j in 0..3 {
                let v: f64 = (0..3).map(|k| a.get(i, k) * inv.get(k, j)).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((v - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn lu_rejects_singular() {
        let a = Matrix::from_rows(&[[1.0, 2.0], [2.0, 4.0]]).unwrap();
        assert!(Lu::new(&a, 1e-12).is_none());
    }
}
