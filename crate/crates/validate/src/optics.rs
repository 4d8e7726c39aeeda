use crate::fit::geomspace;
use crate::{rel, Outcome, Part};
use lifshitz::optics::{kk_transform, lorentz_table, LorentzOscillator};

pub(crate) fn kk_round_trip() -> Outcome {
    // an infrared and an ultraviolet band, both broad (γ ≈ ω₀)
    let bands = [
        LorentzOscillator { strength: 1.5, omega0: 1e14, gamma: 8e13 },
        LorentzOscillator { strength: 9.0, omega0: 6.6e15, gamma: 6e15 },
    ];
    let coarse = lorentz_table(&bands, 1e10, 1e20, 20_000)?;
    let fine = lorentz_table(&bands, 1e10, 1e20, 40_000)?;
    let (mut worst, mut drift): (f64, f64) = (0.0, 0.0);
    for xi in geomspace(1e13, 1e17, 41) {
        let exact: f64 = 1.0 + bands.iter().map(|b| b.eps_imaginary_axis(xi) - 1.0).sum::<f64>();
        let c = kk_transform(&coarse, xi)?;
        worst = worst.max(rel(c, exact));
        drift = drift.max(rel(kk_transform(&fine, xi)?, c));
    }
    Ok((
        vec![Part::at_most("max rel vs analytic", worst, 0.01), Part::at_most("grid doubling rel", drift, 1e-6)],
        vec![],
    ))
}
