//! Tabulated absorption data and the dispersion relation
//! ε(iξ) = 1 + (2/π)∫₀^∞ ω Im ε(ω)/(ω² + ξ²) dω.

use crate::error::{config, domain, Error, Result};
use crate::quad::{integrate_breaks, QuadOptions};
use rayon::prelude::*;
use std::f64::consts::PI;
use std::io::{BufRead, Write};

const KK_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LowTail {
    ConstantExtension,
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HighTail {
    PowerLaw,
    Zero,
}

/// Sampled (ω, Im ε) data, ω in rad/s.
#[derive(Debug, Clone)]
pub struct OpticalTable {
    omega: Vec<f64>,
    im_eps: Vec<f64>,
    pub low_tail: LowTail,
    pub high_tail: HighTail,
    // amplitude A of the Im ε ≈ A/ω³ tail fit
    tail_amplitude: f64,
}

impl OpticalTable {
    pub fn new(samples: &[(f64, f64)], low_tail: LowTail, high_tail: HighTail) -> Result<Self> {
        if samples.len() < 8 {
            return config(format!("optical table needs at least 8 samples, got {}", samples.len()));
        }
        for (i, &(w, im)) in samples.iter().enumerate() {
            if !(w > 0.0) || !w.is_finite() {
                return config(format!("sample {i}: omega must be positive, got {w}"));
            }
            if !(im >= 0.0) || !im.is_finite() {
                return config(format!("sample {i}: Im eps must be >= 0, got {im}"));
            }
            if i > 0 && !(w > samples[i - 1].0) {
                return config(format!("sample {i}: omegas must be strictly increasing"));
            }
        }
        let omega: Vec<f64> = samples.iter().map(|s| s.0).collect();
        let im_eps: Vec<f64> = samples.iter().map(|s| s.1).collect();
        let tail_amplitude = fit_cubic_tail(&omega, &im_eps);
        Ok(OpticalTable { omega, im_eps, low_tail, high_tail, tail_amplitude })
    }

    pub fn from_im_eps(samples: &[(f64, f64)]) -> Result<Self> {
        Self::new(samples, LowTail::ConstantExtension, HighTail::PowerLaw)
    }

    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.omega.iter().copied().zip(self.im_eps.iter().copied())
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    pub fn omega_range(&self) -> (f64, f64) {
        (self.omega[0], *self.omega.last().unwrap())
    }

    /// Interpolated Im ε(ω) inside the sampled range.
    fn im_at(&self, i: usize, w: f64) -> f64 {
        let (w0, w1) = (self.omega[i], self.omega[i + 1]);
        let (v0, v1) = (self.im_eps[i], self.im_eps[i + 1]);
        if v0 > 0.0 && v1 > 0.0 {
            let s = (w / w0).ln() / (w1 / w0).ln();
            (v0.ln() + s * (v1 / v0).ln()).exp()
        } else {
            v0 + (v1 - v0) * (w - w0) / (w1 - w0)
        }
    }
}

/// Im ε = 2 n₁ n₂ for each (ω, n₁, n₂).
pub fn table_from_refractive_index(points: &[(f64, f64, f64)]) -> Result<OpticalTable> {
    let mut samples = Vec::with_capacity(points.len());
    for (i, &(w, n1, n2)) in points.iter().enumerate() {
        if !(n1 > 0.0) || !(n2 >= 0.0) {
            return config(format!("row {i}: need n1 > 0 and n2 >= 0, got {n1}, {n2}"));
        }
        samples.push((w, 2.0 * n1 * n2));
    }
    OpticalTable::from_im_eps(&samples)
}

// ln A = mean(ln Im ε + 3 ln ω) over the last decade of positive samples
fn fit_cubic_tail(omega: &[f64], im: &[f64]) -> f64 {
    let w_max = *omega.last().unwrap();
    let mut acc = 0.0;
    let mut n = 0;
    for (&w, &v) in omega.iter().zip(im).rev() {
        if w < w_max / 10.0 && n >= 2 {
            break;
        }
        if v > 0.0 {
            acc += v.ln() + 3.0 * w.ln();
            n += 1;
        }
    }
    if n == 0 {
        0.0
    } else {
        (acc / n as f64).exp()
    }
}

/// ∫_W^∞ dω / (ω² (ω² + ξ²)).
fn cubic_tail_integral(w: f64, xi: f64) -> f64 {
    let r = xi / w;
    if r < 0.1 {
        let r2 = r * r;
        let mut sum = 0.0;
        let mut p = 1.0;
        for k in 0..12 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * p / (2 * k + 3) as f64;
            p *= r2;
        }
        sum / (w * w * w)
    } else {
        (1.0 / w - r.atan() / xi) / (xi * xi)
    }
}

/// ε(iξ) from the table by the dispersion relation, ξ > 0.
pub fn kk_transform(table: &OpticalTable, xi: f64) -> Result<f64> {
    if table.is_empty() {
        return config("empty optical table");
    }
    if !(xi > 0.0) || !xi.is_finite() {
        return domain(format!("dispersion relation needs xi > 0, got {xi}"));
    }
    let opts = QuadOptions::new(KK_TOL);
    let mut panels = Vec::with_capacity(table.len());
    for i in 0..table.len() - 1 {
        let (w0, w1) = (table.omega[i], table.omega[i + 1]);
        if table.im_eps[i] == 0.0 && table.im_eps[i + 1] == 0.0 {
            continue;
        }
        // integrate in u = ln ω; the kernel ω²/(ω²+ξ²) turns over at ω = ξ
        let (u0, u1) = (w0.ln(), w1.ln());
        let ux = xi.ln();
        let breaks: Vec<f64> = if ux > u0 && ux < u1 { vec![u0, ux, u1] } else { vec![u0, u1] };
        let f = |u: f64| {
            let w = u.exp();
            let k = w * w / (w * w + xi * xi);
            k * table.im_at(i, w.clamp(w0, w1))
        };
        let r = integrate_breaks(f, &breaks, &opts)?;
        panels.push(r.value);
    }
    let mut integral = crate::sum::pairwise(&panels);
    let (w_min, w_max) = table.omega_range();
    if table.low_tail == LowTail::ConstantExtension {
        integral += 0.5 * table.im_eps[0] * (w_min * w_min / (xi * xi)).ln_1p();
    }
    if table.high_tail == HighTail::PowerLaw {
        integral += table.tail_amplitude * cubic_tail_integral(w_max, xi);
    }
    Ok(1.0 + 2.0 / PI * integral)
}

/// Value ε(i·xi_min) used for every ξ ≤ xi_min.
pub fn static_step_extension(table: &OpticalTable, xi_min: f64) -> Result<f64> {
    kk_transform(table, xi_min)
}

/// Tabulated model: dispersion relation precomputed on a log grid and
/// interpolated by a cubic Hermite in (ln ξ, ln(ε − 1)).
#[derive(Debug, Clone)]
pub struct TabulatedPermittivity {
    table: OpticalTable,
    xi_min: f64,
    eps_static: f64,
    ln_xi: Vec<f64>,
    ln_chi: Vec<f64>,
    slopes: Vec<f64>,
}

const GRID_PER_DECADE: f64 = 40.0;

impl TabulatedPermittivity {
    pub fn new(table: OpticalTable, xi_min: f64) -> Result<Self> {
        if !(xi_min > 0.0) {
            return config(format!("xi_min must be > 0, got {xi_min}"));
        }
        let eps_static = static_step_extension(&table, xi_min)?;
        let (_, w_max) = table.omega_range();
        let xi_max = (w_max * 1e3).max(xi_min * 10.0);
        let decades = (xi_max / xi_min).log10();
        let n = (decades * GRID_PER_DECADE).ceil() as usize + 1;
        let ln_lo = xi_min.ln();
        let step = (xi_max.ln() - ln_lo) / (n - 1) as f64;
        let ln_xi: Vec<f64> = (0..n).map(|k| ln_lo + step * k as f64).collect();
        let chi: Vec<f64> = ln_xi
            .par_iter()
            .map(|&u| kk_transform(&table, u.exp()).map(|e| e - 1.0))
            .collect::<Result<_>>()?;
        if chi.iter().all(|&c| c == 0.0) {
            return Ok(TabulatedPermittivity { table, xi_min, eps_static, ln_xi: Vec::new(), ln_chi: Vec::new(), slopes: Vec::new() });
        }
        if chi.iter().any(|&c| !(c > 0.0)) {
            return Err(Error::Domain("dispersion relation produced a non-positive susceptibility".into()));
        }
        let ln_chi: Vec<f64> = chi.iter().map(|c| c.ln()).collect();
        let slopes = grid_slopes(step, &ln_chi);
        Ok(TabulatedPermittivity { table, xi_min, eps_static, ln_xi, ln_chi, slopes })
    }

    pub fn table(&self) -> &OpticalTable {
        &self.table
    }

    pub fn xi_min(&self) -> f64 {
        self.xi_min
    }

    pub fn eval(&self, xi: f64) -> Result<f64> {
        if xi <= self.xi_min {
            return Ok(self.eps_static);
        }
        if self.ln_xi.is_empty() {
            return Ok(1.0);
        }
        let u = xi.ln();
        let last = self.ln_xi.len() - 1;
        if u >= self.ln_xi[last] {
            return kk_transform(&self.table, xi);
        }
        let h = self.ln_xi[1] - self.ln_xi[0];
        let i = (((u - self.ln_xi[0]) / h) as usize).min(last - 1);
        let t = (u - self.ln_xi[i]) / h;
        let (y0, y1) = (self.ln_chi[i], self.ln_chi[i + 1]);
        let (m0, m1) = (self.slopes[i] * h, self.slopes[i + 1] * h);
        let t2 = t * t;
        let t3 = t2 * t;
        let v = (2.0 * t3 - 3.0 * t2 + 1.0) * y0 + (t3 - 2.0 * t2 + t) * m0 + (-2.0 * t3 + 3.0 * t2) * y1 + (t3 - t2) * m1;
        Ok(1.0 + v.exp())
    }

    pub(crate) fn frequency_scales(&self) -> Vec<f64> {
        let (lo, hi) = self.table.omega_range();
        vec![self.xi_min, lo, (lo * hi).sqrt(), hi]
    }
}

// fourth-order finite-difference slopes on a uniform grid
fn grid_slopes(h: f64, y: &[f64]) -> Vec<f64> {
    let n = y.len();
    let mut m = vec![0.0; n];
    if n < 5 {
        for i in 0..n {
            let (lo, hi) = (i.saturating_sub(1), (i + 1).min(n - 1));
            m[i] = if hi > lo { (y[hi] - y[lo]) / (h * (hi - lo) as f64) } else { 0.0 };
        }
        return m;
    }
    for i in 2..n - 2 {
        m[i] = (y[i - 2] - 8.0 * y[i - 1] + 8.0 * y[i + 1] - y[i + 2]) / (12.0 * h);
    }
    m[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * h);
    m[1] = (y[2] - y[0]) / (2.0 * h);
    m[n - 2] = (y[n - 1] - y[n - 3]) / (2.0 * h);
    m[n - 1] = (3.0 * y[n - 1] - 4.0 * y[n - 2] + y[n - 3]) / (2.0 * h);
    m
}

/// Read `omega_rad_s,n1,n2` or `omega_rad_s,im_eps` CSV; `#` starts a comment.
pub fn read_table_csv<R: BufRead>(reader: R) -> Result<OpticalTable> {
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers().map_err(|e| Error::Config(format!("csv header: {e}")))?.clone();
    let cols: Vec<&str> = headers.iter().collect();
    let refractive = match cols.as_slice() {
        ["omega_rad_s", "n1", "n2"] => true,
        ["omega_rad_s", "im_eps"] => false,
        _ => return config(format!("unrecognised csv header {cols:?}; expected omega_rad_s,n1,n2 or omega_rad_s,im_eps")),
    };
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::Config(format!("csv row {}: {e}", i + 1)))?;
        let vals: Vec<f64> = rec
            .iter()
            .map(|s| s.parse::<f64>().map_err(|e| Error::Config(format!("csv row {}: {e}", i + 1))))
            .collect::<Result<_>>()?;
        if vals.len() != cols.len() {
            return config(format!("csv row {}: expected {} columns", i + 1, cols.len()));
        }
        rows.push(vals);
    }
    if rows.is_empty() {
        return config("empty optical table");
    }
    if refractive {
        let pts: Vec<(f64, f64, f64)> = rows.iter().map(|r| (r[0], r[1], r[2])).collect();
        table_from_refractive_index(&pts)
    } else {
        let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r[0], r[1])).collect();
        OpticalTable::from_im_eps(&pts)
    }
}

/// Write an (ξ, ε(iξ)) curve as CSV.
pub fn write_curve<W: Write>(mut out: W, curve: &[(f64, f64)]) -> std::io::Result<()> {
    writeln!(out, "xi_rad_s,eps")?;
    for (xi, e) in curve {
        writeln!(out, "{xi:.16e},{e:.16e}")?;
    }
    Ok(())
}

/// Damped Lorentz oscillator ε(ω) = 1 + C ω₀²/(ω₀² − iγω − ω²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzOscillator {
    pub strength: f64,
    pub omega0: f64,
    pub gamma: f64,
}

impl LorentzOscillator {
    pub fn im_eps(&self, w: f64) -> f64 {
        let w02 = self.omega0 * self.omega0;
        let d = w02 - w * w;
        self.strength * w02 * self.gamma * w / (d * d + self.gamma * self.gamma * w * w)
    }

    /// Closed-form value on the imaginary axis.
    pub fn eps_imaginary_axis(&self, xi: f64) -> f64 {
        let w02 = self.omega0 * self.omega0;
        1.0 + self.strength * w02 / (w02 + self.gamma * xi + xi * xi)
    }
}

/// Table of Σ Im ε over `n` log-spaced frequencies in [w_lo, w_hi].
pub fn lorentz_table(oscillators: &[LorentzOscillator], w_lo: f64, w_hi: f64, n: usize) -> Result<OpticalTable> {
    if n < 8 {
        return config("lorentz table needs at least 8 samples");
    }
    let r = (w_hi / w_lo).ln() / (n - 1) as f64;
    let samples: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let w = w_lo * (r * k as f64).exp();
            (w, oscillators.iter().map(|o| o.im_eps(w)).sum())
        })
        .collect();
    OpticalTable::from_im_eps(&samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn single() -> LorentzOscillator {
        LorentzOscillator { strength: 2.0, omega0: 2e15, gamma: 1e15 }
    }

    #[test]
    fn refractive_index_rows() {
        let pts: Vec<(f64, f64, f64)> = (1..=8).map(|k| (k as f64 * 1e14, 2.0, 0.5)).collect();
        let t = table_from_refractive_index(&pts).unwrap();
        assert!(t.samples().all(|(_, v)| v == 2.0));
        let pts: Vec<(f64, f64, f64)> = (1..=8).map(|k| (k as f64 * 1e14, 1.0, 0.0)).collect();
        let t = table_from_refractive_index(&pts).unwrap();
        assert!(t.samples().all(|(_, v)| v == 0.0));
        let bad = [(2e14, 1.0, 0.1), (1e14, 1.0, 0.1)];
        assert!(table_from_refractive_index(&bad).is_err());
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(OpticalTable::from_im_eps(&[(1.0, 0.1); 3]).is_err());
        let neg: Vec<(f64, f64)> = (1..=8).map(|k| (k as f64, -0.1)).collect();
        assert!(OpticalTable::from_im_eps(&neg).is_err());
    }

    #[test]
    fn transparent_table_gives_vacuum() {
        let samples: Vec<(f64, f64)> = (1..=10).map(|k| (k as f64 * 1e15, 0.0)).collect();
        let t = OpticalTable::from_im_eps(&samples).unwrap();
        assert_eq!(kk_transform(&t, 1e15).unwrap(), 1.0);
        let tab = TabulatedPermittivity::new(t, 1e10).unwrap();
        assert_eq!(tab.eval(3e14).unwrap(), 1.0);
    }

    #[test]
    fn lorentz_round_trip() {
        let o = single();
        let t = lorentz_table(&[o], 1e11, 1e19, 4000).unwrap();
        for k in 0..=16 {
            let xi = 1e13 * 10f64.powf(k as f64 / 4.0);
            let v = kk_transform(&t, xi).unwrap();
            assert_relative_eq!(v, o.eps_imaginary_axis(xi), max_relative = 1e-3);
        }
    }

    #[test]
    fn tail_decay_above_table() {
        let t = lorentz_table(&[single()], 1e11, 1e17, 600).unwrap();
        let x1 = kk_transform(&t, 1e19).unwrap();
        let x2 = kk_transform(&t, 2e19).unwrap();
        assert!(x1 > x2 && x2 > 1.0);
        assert_relative_eq!((x1 - 1.0) / (x2 - 1.0), 4.0, max_relative = 1e-2);
    }

    #[test]
    fn tail_integral_branches_agree() {
        let w = 1e16;
        let a = cubic_tail_integral(w, 0.0999999 * w);
        let b = cubic_tail_integral(w, 0.1000001 * w);
        assert_relative_eq!(a, b, max_relative = 1e-6);
        assert_relative_eq!(cubic_tail_integral(w, 1e-9 * w), 1.0 / (3.0 * w * w * w), max_relative = 1e-15);
    }

    #[test]
    fn tabulated_interpolant_matches_direct_transform() {
        let t = lorentz_table(&[single()], 1e11, 1e19, 800).unwrap();
        let tab = TabulatedPermittivity::new(t.clone(), 1e10).unwrap();
        for &xi in &[3.3e12, 7.7e14, 2.1e15, 9.9e16] {
            assert_relative_eq!(tab.eval(xi).unwrap(), kk_transform(&t, xi).unwrap(), max_relative = 1e-7);
        }
        assert_eq!(tab.eval(0.0).unwrap(), tab.eval(1e10).unwrap());
        assert!(tab.eval(0.0).unwrap() >= tab.eval(1e12).unwrap());
    }

    #[test]
    fn csv_round_trip() {
        let text = "# synthetic\nomega_rad_s,im_eps\n1e14,0.1\n2e14,0.2\n3e14,0.3\n4e14,0.2\n5e14,0.1\n6e14,0.05\n7e14,0.02\n8e14,0.01\n";
        let t = read_table_csv(text.as_bytes()).unwrap();
        assert_eq!(t.len(), 8);
        let text = "omega_rad_s,n1,n2\n1e14,2,0.5\n";
        assert!(read_table_csv(text.as_bytes()).is_err());
        assert!(read_table_csv("omega,foo\n1,2\n".as_bytes()).is_err());
        assert!(read_table_csv("omega_rad_s,im_eps\n".as_bytes()).is_err());
        let mut buf = Vec::new();
        write_curve(&mut buf, &[(1e15, 2.5)]).unwrap();
        assert!(String::from_utf8(buf).unwrap().contains("1.0000000000000000e15,2.5000000000000000e0"));
    }
}
