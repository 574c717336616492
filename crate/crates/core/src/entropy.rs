//! Differential entropies of Born densities.
//!
//! With ħ = 1 the phase-space entropy of a pure state is `S = S_r + S_k`,
//! bounded below by `d(1 + ln π)` in `d` dimensions. All integrals are
//! Riemann sums on the uniform grid with `0·ln 0 = 0`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Density, Density2D, Representation};

/// Values in `[-NEG_CLAMP, 0)` are FFT round-off and are treated as zero.
pub const NEG_CLAMP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyValue {
    pub s_r: f64,
    pub s_k: f64,
    pub total: f64,
}

impl EntropyValue {
    pub fn new(s_r: f64, s_k: f64) -> Self {
        Self {
            s_r,
            s_k,
            total: s_r + s_k,
        }
    }
}

/// `-Σ ρ ln ρ · cell`.
pub fn entropy_sum(values: &[f64], cell: f64) -> Result<f64> {
    let mut acc = 0.0;
    for (index, &v) in values.iter().enumerate() {
        if !v.is_finite() || v < -NEG_CLAMP {
            return Err(Error::InvalidDensity { index, value: v });
        }
        if v > 0.0 {
            acc -= v * v.ln();
        }
    }
    Ok(acc * cell)
}

pub fn differential_entropy(d: &Density) -> Result<f64> {
    entropy_sum(&d.values, d.cell())
}

pub fn total_entropy(pos: &Density, freq: &Density) -> Result<EntropyValue> {
    if pos.grid.dim() != freq.grid.dim() {
        return Err(Error::DimensionMismatch(format!(
            "position density is {}D, frequency density is {}D",
            pos.grid.dim(),
            freq.grid.dim()
        )));
    }
    if pos.representation != Representation::Position {
        return Err(Error::WrongRepresentation { expected: "position" });
    }
    if freq.representation != Representation::Frequency {
        return Err(Error::WrongRepresentation { expected: "frequency" });
    }
    Ok(EntropyValue::new(
        differential_entropy(pos)?,
        differential_entropy(freq)?,
    ))
}

/// Joint entropy of two 1D particles; the `-2d ln ħ` term vanishes for ħ = 1.
pub fn two_particle_entropy(rho_r12: &Density2D, rho_k12: &Density2D) -> Result<EntropyValue> {
    if rho_r12.representation != Representation::Position {
        return Err(Error::WrongRepresentation { expected: "position" });
    }
    if rho_k12.representation != Representation::Frequency {
        return Err(Error::WrongRepresentation { expected: "frequency" });
    }
    if rho_r12.grid != rho_k12.grid {
        return Err(Error::DimensionMismatch(
            "joint densities live on different grids".into(),
        ));
    }
    Ok(EntropyValue::new(joint_entropy(rho_r12)?, joint_entropy(rho_k12)?))
}

pub fn joint_entropy(d: &Density2D) -> Result<f64> {
    entropy_sum(&d.values, d.cell())
}

/// `dim·(1 + ln π)`, the entropy of a coherent state.
pub fn min_entropy_bound(dim: usize) -> f64 {
    dim as f64 * (1.0 + PI.ln())
}
