//! Linear least squares for the coefficient fits.

use nalgebra::{DMatrix, DVector};

/// Coefficients c minimising Σ (Σ_j c_j basis_j(x_i) − y_i)².
///
/// Columns are normalised before the SVD so mixed scales (1, x ln x, x²)
/// do not spoil the conditioning.
pub fn least_squares(xs: &[f64], ys: &[f64], basis: &[&dyn Fn(f64) -> f64]) -> Vec<f64> {
    let (n, m) = (xs.len(), basis.len());
    assert!(n >= m, "need at least as many points as basis functions");
    let mut a = DMatrix::from_fn(n, m, |i, j| basis[j](xs[i]));
    let scale: Vec<f64> = (0..m).map(|j| a.column(j).norm()).collect();
    for (j, s) in scale.iter().enumerate() {
        a.column_mut(j).scale_mut(1.0 / s);
    }
    let b = DVector::from_column_slice(ys);
    let c = a.svd(true, true).solve(&b, 0.0).expect("SVD solve");
    c.iter().zip(&scale).map(|(c, s)| c / s).collect()
}

/// Worst |fit − y|/|y| over the sample.
pub fn max_relative_residual(xs: &[f64], ys: &[f64], basis: &[&dyn Fn(f64) -> f64], coef: &[f64]) -> f64 {
    xs.iter()
        .zip(ys)
        .map(|(&x, &y)| {
            let f: f64 = basis.iter().zip(coef).map(|(b, c)| c * b(x)).sum();
            ((f - y) / y).abs()
        })
        .fold(0.0, f64::max)
}

pub fn geomspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let r = (hi / lo).ln() / (n - 1) as f64;
    (0..n).map(|k| lo * (r * k as f64).exp()).collect()
}
