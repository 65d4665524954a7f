//! Ordinary least squares, the symmetric-cost baseline.

use crate::dataset::SupervisedSet;
use crate::error::{Error, Result};
use crate::linalg::{HouseholderQr, Matrix};

#[derive(Debug, Clone, PartialEq)]
pub struct LinearModel {
    pub coefficients: Vec<f64>,
    pub feature_names: Vec<String>,
    /// Residual sum of squares over the training rows.
    pub sse: f64,
}

impl LinearModel {
    pub fn predict(&self, design: &Matrix) -> Result<Vec<f64>> {
        predict_ols(self, design)
    }
}

/// Least-squares fit through a Householder QR of the column-scaled design.
pub fn fit_ols(set: &SupervisedSet) -> Result<LinearModel> {
    let x = set.design();
    let (n, p) = (x.rows(), x.cols());
    if p == 0 {
        return Err(Error::InvalidArgument("design has no columns".into()));
    }
    if n < p {
        return Err(Error::Underdetermined { rows: n, cols: p });
    }
    let qr = HouseholderQr::new(x, set.feature_names())?;
    let coefficients = qr.solve_least_squares(set.targets())?;
    let fitted = x.mul_vec(&coefficients)?;
    let sse = set
        .targets()
        .iter()
        .zip(&fitted)
        .map(|(y, f)| (y - f).powi(2))
        .sum();
    Ok(LinearModel {
        coefficients,
        feature_names: set.feature_names().to_vec(),
        sse,
    })
}

pub fn predict_ols(model: &LinearModel, design: &Matrix) -> Result<Vec<f64>> {
    design.mul_vec(&model.coefficients)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::dot;

    fn set(rows: &[&[f64]], y: &[f64]) -> SupervisedSet {
        SupervisedSet::from_xy(Matrix::from_rows(rows).unwrap(), y.to_vec()).unwrap()
    }

    #[test]
    fn exact_line() {
        let m = fit_ols(&set(&[&[1.0], &[2.0], &[3.0]], &[1.0, 2.0, 3.0])).unwrap();
        assert!((m.coefficients[0] - 1.0).abs() < 1e-14);
        assert!(m.sse < 1e-24);
    }

    #[test]
    fn constant_fit() {
        let m = fit_ols(&set(&[&[1.0], &[1.0]], &[1.0, 1.0])).unwrap();
        assert!((m.coefficients[0] - 1.0).abs() < 1e-14);
        assert!(m.sse < 1e-24);
    }

    #[test]
    fn four_point_line_with_intercept() {
        let s = set(
            &[&[0.0, 1.0], &[1.0, 1.0], &[2.0, 1.0], &[3.0, 1.0]],
            &[0.0, 1.0, 2.0, 4.0],
        );
        let m = fit_ols(&s).unwrap();
        assert!((m.coefficients[0] - 1.3).abs() < 1e-12);
        assert!((m.coefficients[1] + 0.2).abs() < 1e-12);
        assert!((m.sse - 0.3).abs() < 1e-12);
    }

    #[test]
    fn residuals_orthogonal_to_columns() {
        let s = set(
            &[
                &[0.3, 1.0, 2.0],
                &[1.7, 1.0, -1.0],
                &[2.2, 1.0, 0.5],
                &[3.9, 1.0, 4.0],
                &[5.1, 1.0, -2.5],
                &[6.4, 1.0, 1.0],
            ],
            &[1.0, 2.5, 2.0, 7.0, 3.3, 6.1],
        );
        let m = fit_ols(&s).unwrap();
        let fitted = m.predict(s.design()).unwrap();
        let r: Vec<f64> = s.targets().iter().zip(&fitted).map(|(y, f)| y - f).collect();
        for j in 0..3 {
            let col = s.design().column(j);
            let scale = dot(&col, s.targets()).abs().max(1.0);
            assert!(dot(&col, &r).abs() <= 1e-8 * scale);
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(
            fit_ols(&set(&[&[1.0, 2.0]], &[1.0])),
            Err(Error::Underdetermined { rows: 1, cols: 2 })
        ));
        assert!(matches!(
            fit_ols(&set(&[&[1.0, 2.0], &[2.0, 4.0], &[3.0, 6.0]], &[1.0, 2.0, 3.0])),
            Err(Error::RankDeficient { .. })
        ));
    }

    #[test]
    fn predict_examples() {
        let model = |c: Vec<f64>| LinearModel {
            feature_names: vec!["a".into(), "b".into()],
            coefficients: c,
            sse: 0.0,
        };
        let x = Matrix::from_rows(&[[5.0, 1.0], [2.0, 7.0]]).unwrap();
        assert_eq!(predict_ols(&model(vec![0.0, 0.0]), &x).unwrap(), vec![0.0, 0.0]);
        assert_eq!(predict_ols(&model(vec![0.0, 1.0]), &x).unwrap(), vec![1.0, 7.0]);
        let one = Matrix::from_rows(&[[5.0, 1.0]]).unwrap();
        assert_eq!(predict_ols(&model(vec![1.0, 0.0]), &one).unwrap(), vec![5.0]);
        assert!(predict_ols(&model(vec![1.0, 0.0]), &Matrix::zeros(1, 3)).is_err());
    }
}
