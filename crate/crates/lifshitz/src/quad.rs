//! Globally adaptive 21-point Gauss–Kronrod quadrature.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_980_755_070,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// weights of the embedded 10-point Gauss rule, nodes XGK[1], XGK[3], ..., XGK[9]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_intervals: usize,
}

impl QuadOptions {
    pub fn new(rel_tol: f64) -> Self {
        QuadOptions { rel_tol, abs_tol: 0.0, max_intervals: 4000 }
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Integral {
    pub value: f64,
    pub abs_error: f64,
    pub evals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    roundoff: f64,
}

impl Segment {
    // part of the error estimate above the roundoff floor
    fn excess(&self) -> f64 {
        (self.error - self.roundoff).max(0.0)
    }
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.excess().total_cmp(&other.excess()).then(other.a.total_cmp(&self.a))
    }
}

fn kronrod21<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resk = fc * WGK[10];
    let mut resg = 0.0;
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = resk * 0.5;
    let mut resasc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = resk * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut error = ((resk - resg) * half).abs();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    let roundoff = 50.0 * f64::EPSILON * resabs;
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(roundoff);
    }
    Segment { a, b, value, error, roundoff }
}

/// Integrate `f` over [a, b].
pub fn integrate<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<Integral> {
    integrate_breaks(f, &[a, b], opts)
}

/// Integrate `f` over the union of consecutive panels given by `breaks`.
pub fn integrate_breaks<F: FnMut(f64) -> f64>(mut f: F, breaks: &[f64], opts: &QuadOptions) -> Result<Integral> {
    if breaks.len() < 2 {
        return Err(Error::Domain("quadrature needs at least one panel".into()));
    }
    let mut heap = BinaryHeap::new();
    let mut evals = 0;
    let (mut value, mut error, mut excess) = (0.0, 0.0, 0.0);
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            let s = kronrod21(&mut f, w[0], w[1]);
            value += s.value;
            error += s.error;
            excess += s.excess();
            heap.push(s);
            evals += 21;
        }
    }
    loop {
        let target = opts.abs_tol.max(opts.rel_tol * value.abs());
        if error <= target || excess <= target {
            return Ok(finish(&heap, evals));
        }
        if heap.len() >= opts.max_intervals {
            return Err(Error::Convergence(format!(
                "adaptive quadrature hit {} intervals, error {:.3e} vs target {:.3e}",
                heap.len(),
                error,
                target
            )));
        }
        let worst = heap.pop().expect("non-empty heap");
        if worst.excess() == 0.0 {
            heap.push(worst);
            return Ok(finish(&heap, evals));
        }
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval cannot be split further; accept its error as final
            heap.push(Segment { error: worst.roundoff, ..worst });
            return Ok(finish(&heap, evals));
        }
        let left = kronrod21(&mut f, worst.a, mid);
        let right = kronrod21(&mut f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error = (error + left.error + right.error - worst.error).max(0.0);
        excess = (excess + left.excess() + right.excess() - worst.excess()).max(0.0);
        heap.push(left);
        heap.push(right);
        evals += 42;
    }
}

fn finish(heap: &BinaryHeap<Segment>, evals: usize) -> Integral {
    // sum in interval order so the result does not depend on heap layout
    let mut segs: Vec<&Segment> = heap.iter().collect();
    segs.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value = crate::sum::pairwise(&segs.iter().map(|s| s.value).collect::<Vec<_>>());
    let abs_error = segs.iter().map(|s| s.error).sum();
    Integral { value, abs_error, evals }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polynomials_are_exact() {
        let r = integrate(|x| x.powi(20) - 3.0 * x, -1.0, 2.0, &QuadOptions::new(1e-14)).unwrap();
        let exact = (2f64.powi(21) + 1.0) / 21.0 - 1.5 * (4.0 - 1.0);
        assert_relative_eq!(r.value, exact, max_relative = 1e-14);
    }

    #[test]
    fn endpoint_singularity() {
        let r = integrate(|x: f64| x.sqrt().ln(), 0.0, 1.0, &QuadOptions::new(1e-12)).unwrap();
        assert_relative_eq!(r.value, -0.5, max_relative = 1e-11);
    }

    #[test]
    fn peaked_integrand() {
        let w = 1e-4;
        let r = integrate_breaks(|x| w / (x * x + w * w), &[-1.0, 0.0, 1.0], &QuadOptions::new(1e-12)).unwrap();
        assert_relative_eq!(r.value, 2.0 * (1.0 / w).atan(), max_relative = 1e-11);
    }

    #[test]
    fn reports_non_convergence() {
        let opts = QuadOptions { rel_tol: 1e-14, abs_tol: 0.0, max_intervals: 3 };
        assert!(integrate(|x: f64| (1.0 / x).sin(), 1e-6, 1.0, &opts).is_err());
    }
}
