//! Fixed-order pairwise summation.

/// Pairwise sum; the association order depends only on the slice length.
pub fn pairwise(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise(&xs[..mid]) + pairwise(&xs[mid..])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_tail_accuracy() {
        let xs: Vec<f64> = (1..=1_000_000).map(|k| 1.0 / (k as f64 * k as f64)).collect();
        let exact = std::f64::consts::PI.powi(2) / 6.0 - 1.0 / 1_000_000.5;
        assert!((pairwise(&xs) - exact).abs() < 1e-14);
    }

    #[test]
    fn empty_and_small() {
        assert_eq!(pairwise(&[]), 0.0);
        assert_eq!(pairwise(&[1.5, 2.5]), 4.0);
    }
}
