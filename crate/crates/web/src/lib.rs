//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export returns a flat `Float64Array` of rows; the row width is
//! given in each function's docs.

use qentropy::dispersion::{coherent_entropy_closed_form, evolve_exact, make_coherent, CoherentState, DispersionModel};
use qentropy::entropy::total_entropy;
use qentropy::grid::{born_density, fourier_transform, GridSpec};
use qentropy::qcurve::{classify, detect_critical_time, EntropySeries};
use qentropy::twolevel::{coefficients, oscillation_densities, OscillationBasis, TwoLevelSystem};
use qentropy::twoparticle::{collision_rows, CollisionSetup, Statistics};
use wasm_bindgen::prelude::*;

fn js_err(e: impl std::fmt::Display) -> JsError {
    JsError::new(&e.to_string())
}

fn times(tmax: f64, steps: usize) -> Vec<f64> {
    let steps = steps.max(1);
    (0..=steps).map(|i| tmax * i as f64 / steps as f64).collect()
}

/// Rows of `t, s_total, s_closed_form` for a free coherent state.
#[wasm_bindgen]
pub fn coherent_curve(model: &str, sigma2: f64, mass: f64, tmax: f64, steps: usize) -> Result<Vec<f64>, JsError> {
    let model = match model {
        "schroedinger" => DispersionModel::schroedinger(mass),
        "dirac" => DispersionModel::dirac(mass),
        other => return Err(JsError::new(&format!("unknown model {other:?}"))),
    };
    let cs = CoherentState::line(0.0, 0.0, sigma2);
    let a0 = make_coherent(GridSpec::line(2048, 80.0).map_err(js_err)?, &cs).map_err(js_err)?;
    let mut out = Vec::new();
    for t in times(tmax, steps) {
        let a = evolve_exact(&a0, &model, t).map_err(js_err)?;
        let phi = fourier_transform(&a).map_err(js_err)?;
        let s = total_entropy(&born_density(&a), &born_density(&phi)).map_err(js_err)?;
        out.extend([
            t,
            s.total,
            coherent_entropy_closed_form(&cs, &model, t).map_err(js_err)?,
        ]);
    }
    Ok(out)
}

/// Rows of `t, p1, p2, s_total` for a two-level system in the
/// harmonic-oscillator basis.
#[wasm_bindgen]
pub fn two_level_curve(omega11: f64, omega22: f64, w12: f64, tmax: f64, steps: usize) -> Result<Vec<f64>, JsError> {
    let sys = TwoLevelSystem::dressed(omega11, omega22, w12);
    let basis = OscillationBasis::harmonic_oscillator(GridSpec::line(256, 24.0).map_err(js_err)?).map_err(js_err)?;
    let mut out = Vec::new();
    for t in times(tmax, steps) {
        let (a1, a2) = coefficients(&sys, t);
        let (r, k) = oscillation_densities(&basis, &sys, t);
        out.extend([
            t,
            a1.norm_sqr(),
            a2.norm_sqr(),
            total_entropy(&r, &k).map_err(js_err)?.total,
        ]);
    }
    Ok(out)
}

/// Rows of `t, s_total, s_sum_singles, overlap` for a head-on collision of
/// two packets starting at `±c` on a reduced grid.
#[wasm_bindgen]
pub fn collision_curve(
    p1: f64,
    hbar_over_m: f64,
    c: f64,
    fermion: bool,
    points: usize,
    steps: usize,
) -> Result<Vec<f64>, JsError> {
    let setup = CollisionSetup {
        statistics: if fermion {
            Statistics::Fermion
        } else {
            Statistics::Boson
        },
        sigma2: 16.0,
        grid: GridSpec::line(points, 5.0 * c).map_err(js_err)?,
        ..CollisionSetup::symmetric(c, p1, hbar_over_m)
    };
    setup.validate().map_err(js_err)?;
    let rows = collision_rows(&setup, &times(2.0 * setup.meeting_time(), steps)).map_err(js_err)?;
    Ok(rows
        .iter()
        .flat_map(|r| [r.t, r.s_total.total, r.s_sum_singles, r.overlap])
        .collect())
}

/// QCurve label followed by the critical time, e.g. `"O 12.5"` or `"I -"`.
#[wasm_bindgen]
pub fn classify_curve(times: Vec<f64>, values: Vec<f64>, epsilon: f64) -> Result<String, JsError> {
    let s = EntropySeries::new(times, values, "browser").map_err(js_err)?;
    let label = classify(&s, epsilon).map_err(js_err)?.label;
    let tc = detect_critical_time(&s, epsilon).map_err(js_err)?;
    Ok(match tc {
        Some(t) => format!("{label} {t}"),
        None => format!("{label} -"),
    })
}
