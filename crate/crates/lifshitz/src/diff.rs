//! Central differences with Richardson extrapolation.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivative {
    pub value: f64,
    /// |last extrapolant − previous extrapolant|
    pub abs_error: f64,
}

/// f'(x) from central differences at steps h, h/2, ..., h/2^(levels-1).
pub fn richardson<F>(f: F, x: f64, h: f64, levels: usize) -> Result<Derivative>
where
    F: Fn(f64) -> Result<f64>,
{
    let levels = levels.max(2);
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(levels);
    let mut step = h;
    for i in 0..levels {
        let d = (f(x + step)? - f(x - step)?) / (2.0 * step);
        let mut row = vec![d];
        let mut factor = 4.0;
        for j in 1..=i {
            let prev: f64 = table[i - 1][j - 1];
            let cur = row[j - 1];
            row.push(cur + (cur - prev) / (factor - 1.0));
            factor *= 4.0;
        }
        table.push(row);
        step *= 0.5;
    }
    let n = levels - 1;
    let best = table[n][n];
    let err = (best - table[n - 1][n - 1]).abs();
    if levels >= 3 {
        let prev_err = (table[n - 1][n - 1] - table[n - 2][n - 2]).abs();
        // growing corrections mean the step is too small (noise) or too large
        if err > 2.0 * prev_err && err > 1e-3 * best.abs() {
            return Err(Error::Convergence(format!(
                "Richardson tableau not converging at x = {x}: successive corrections {prev_err:.3e}, {err:.3e}"
            )));
        }
    }
    Ok(Derivative { value: best, abs_error: err })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exp_derivative() {
        let d = richardson(|x: f64| Ok(x.exp()), 1.0, 0.1, 4).unwrap();
        assert_relative_eq!(d.value, 1f64.exp(), max_relative = 1e-12);
        assert!(d.abs_error < 1e-9);
    }

    #[test]
    fn propagates_errors() {
        let r = richardson(|x: f64| if x > 1.05 { Err(Error::Domain("x".into())) } else { Ok(x) }, 1.0, 0.1, 3);
        assert!(r.is_err());
    }
}
