use lifshitz::models::DielectricModel;
use lifshitz::optics::{kk_transform, lorentz_table, LorentzOscillator, TabulatedPermittivity};

#[test]
fn sample_doubling_converges() {
    let band = [LorentzOscillator { strength: 3.0, omega0: 3e15, gamma: 2e15 }];
    let coarse = lorentz_table(&band, 1e11, 1e19, 20_000).unwrap();
    let fine = lorentz_table(&band, 1e11, 1e19, 40_000).unwrap();
    for xi in [1e13, 1e14, 1e15, 1e16, 1e17] {
        let (c, f) = (kk_transform(&coarse, xi).unwrap(), kk_transform(&fine, xi).unwrap());
        assert!(((c - f) / f).abs() < 1e-6, "xi = {xi}: {c} vs {f}");
    }
}

#[test]
fn tabulated_model_is_monotone_and_flat_below_xi_min() {
    let band = [
        LorentzOscillator { strength: 1.0, omega0: 2e14, gamma: 1e14 },
        LorentzOscillator { strength: 8.0, omega0: 5e15, gamma: 4e15 },
    ];
    let table = lorentz_table(&band, 1e11, 1e19, 4000).unwrap();
    let model = DielectricModel::tabulated(TabulatedPermittivity::new(table, 1e10).unwrap());
    let frozen = model.static_permittivity().unwrap();
    let mut prev = f64::INFINITY;
    for k in 0..60 {
        let xi = 1e9 * 10f64.powf(k as f64 / 6.0);
        let e = model.eval_eps(xi).unwrap().finite().unwrap();
        assert!(e <= prev && e >= 1.0);
        assert!(e <= frozen);
        prev = e;
    }
}
