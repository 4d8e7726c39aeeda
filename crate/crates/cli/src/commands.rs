use crate::config::{FileConfig, Format, Range};
use crate::error::CliError;
use crate::output::{emit_json, emit_table, Header, Table};
use lifshitz::lowtemp::{pressure_correction_low_t, thermal_correction_low_t};
use lifshitz::matsubara::{self, Options, PlateConfig};
use lifshitz::models::DielectricModel;
use lifshitz::optics::kk_transform;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

#[derive(Serialize)]
struct Run<'a> {
    command: &'a str,
    config: &'a FileConfig,
}

fn header(command: &str, cfg: &FileConfig, tol: Option<f64>) -> Header {
    Header::new(command, &Run { command, config: cfg }, tol)
}

pub fn compute(cfg: FileConfig) -> Result<(), CliError> {
    let tol = cfg.tolerance()?;
    let plates = cfg.plate_config()?;
    let r = matsubara::compute(&plates, &Options::new(tol)?)?;
    let h = header("compute", &cfg, Some(tol));
    match cfg.format.unwrap_or(Format::Json) {
        Format::Json => emit_json(&h, json!({ "config": cfg, "result": r }), cfg.out.as_deref()),
        Format::Csv => {
            let table = Table {
                columns: vec!["a_m", "T_K", "free_energy_J_m2", "pressure_Pa", "entropy_J_m2K", "l_max", "error_estimate"],
                rows: vec![vec![
                    Some(plates.a),
                    Some(plates.t),
                    Some(r.free_energy_per_area),
                    Some(r.pressure),
                    r.entropy_per_area,
                    Some(r.l_max_used as f64),
                    Some(r.quadrature_error_estimate),
                ]],
            };
            emit_table(&h, &table, Format::Csv, cfg.out.as_deref())
        }
    }
}

enum Axis {
    Temperature(Range),
    Separation(Range),
}

fn static_pair(m1: &DielectricModel, m2: &DielectricModel) -> Result<(f64, f64), CliError> {
    Ok((m1.static_permittivity()?, m2.static_permittivity()?))
}

/// ΔF and ΔP for the configured models, for their static limits and from the
/// low-temperature asymptote (absent where τ is outside its range).
fn sweep_row(base: &PlateConfig, statics: &PlateConfig, eps: (f64, f64), opts: &Options) -> Result<Vec<Option<f64>>, CliError> {
    let (a, t) = (base.a, base.t);
    Ok(vec![
        Some(matsubara::thermal_correction(base, opts)?.value),
        Some(matsubara::thermal_correction(statics, opts)?.value),
        thermal_correction_low_t(eps.0, eps.1, a, t).ok(),
        Some(matsubara::pressure_correction(base, opts)?.value),
        Some(matsubara::pressure_correction(statics, opts)?.value),
        pressure_correction_low_t(eps.0, eps.1, a, t).ok(),
    ])
}

pub fn sweep(cfg: FileConfig) -> Result<(), CliError> {
    let tol = cfg.tolerance()?;
    let opts = Options::new(tol)?;
    let axis = match (cfg.t_range, cfg.a_range) {
        (Some(r), None) => Axis::Temperature(r),
        (None, Some(r)) => Axis::Separation(r),
        (Some(_), Some(_)) => return Err(CliError::Config("T_range/a_range: give exactly one sweep range".into())),
        (None, None) => return Err(CliError::Config("T_range/a_range: a sweep needs one range".into())),
    };
    let (m1, m2) = cfg.models()?;
    let eps = static_pair(&m1, &m2)?;
    let (s1, s2) = (DielectricModel::constant(eps.0)?, DielectricModel::constant(eps.1)?);
    let (first, points, fixed_point) = match &axis {
        Axis::Temperature(r) => ("T_K", r.linear(), cfg.separation()?),
        Axis::Separation(r) => ("a_m", r.linear(), cfg.temperature()?),
    };
    let rows: Vec<Vec<Option<f64>>> = points
        .par_iter()
        .map(|&x| {
            let (a, t) = match axis {
                Axis::Temperature(_) => (fixed_point, x),
                Axis::Separation(_) => (x, fixed_point),
            };
            let base = PlateConfig::new(m1.clone(), m2.clone(), a, t)?;
            let statics = PlateConfig::new(s1.clone(), s2.clone(), a, t)?;
            let mut row = vec![Some(x)];
            row.extend(sweep_row(&base, &statics, eps, &opts)?);
            Ok(row)
        })
        .collect::<Result<_, CliError>>()?;
    let table = Table {
        columns: vec![first, "dF_model_J_m2", "dF_static_J_m2", "dF_asymptotic_J_m2", "dP_model_Pa", "dP_static_Pa", "dP_asymptotic_Pa"],
        rows,
    };
    emit_table(&header("sweep", &cfg, Some(tol)), &table, cfg.format.unwrap_or(Format::Csv), cfg.out.as_deref())
}

pub fn kk(cfg: FileConfig) -> Result<(), CliError> {
    let path = cfg.table.as_ref().ok_or_else(|| CliError::Config("table: missing optical table path".into()))?;
    let table = crate::config::read_table(path).map_err(|e| CliError::Config(format!("table: {e}")))?;
    let grid = cfg.xi_range.unwrap_or(Range { lo: 1e11, hi: 1e18, n: 71 });
    let rows: Vec<Vec<Option<f64>>> = grid
        .logarithmic()
        .par_iter()
        .map(|&xi| Ok(vec![Some(xi), Some(kk_transform(&table, xi)?)]))
        .collect::<Result<_, CliError>>()?;
    let t = Table { columns: vec!["xi_rad_s", "eps"], rows };
    emit_table(&header("kk", &cfg, None), &t, cfg.format.unwrap_or(Format::Csv), cfg.out.as_deref())
}

pub fn validate(cfg: FileConfig) -> Result<(), CliError> {
    let name = cfg.suite.clone().unwrap_or_else(|| "all".to_string());
    let checks = lifshitz_validate::run_suite(&name).ok_or_else(|| {
        let known: Vec<&str> = lifshitz_validate::suite_names().collect();
        CliError::Config(format!("suite: unknown {name:?}, expected one of {}", known.join(", ")))
    })?;
    let pass = checks.iter().all(|c| c.pass);
    let h = header("validate", &cfg, None);
    match cfg.format.unwrap_or(Format::Json) {
        Format::Json => emit_json(&h, json!({ "suite": name, "pass": pass, "checks": checks }), cfg.out.as_deref())?,
        Format::Csv => {
            let rows = checks
                .iter()
                .flat_map(|c| c.parts.iter().map(move |p| vec![Some(c.criterion as f64), Some(p.measured), Some(p.tolerance), Some(p.pass as u8 as f64)]))
                .collect();
            let t = Table { columns: vec!["criterion", "measured", "tolerance", "pass"], rows };
            emit_table(&h, &t, Format::Csv, cfg.out.as_deref())?;
        }
    }
    if pass {
        Ok(())
    } else {
        let failed: Vec<String> = checks.iter().filter(|c| !c.pass).map(|c| c.criterion.to_string()).collect();
        Err(CliError::Convergence(format!("criteria {} did not meet their tolerances", failed.join(", "))))
    }
}
