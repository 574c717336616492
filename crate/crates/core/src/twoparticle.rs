//! Two identical particles in one dimension: (anti)symmetrized joint
//! densities and the entropy trace of a head-on collision.

use serde::{Deserialize, Serialize};

use crate::dispersion::{evolve_dispersion_transform, group_velocity, make_coherent, CoherentState, DispersionModel};
use crate::entropy::{total_entropy, EntropyValue, NEG_CLAMP};
use crate::error::{Error, Result};
use crate::grid::{born_density, fourier_transform, Density2D, GridSpec, SampledAmplitude};
use crate::qcurve::{classify, EntropySeries, QCurveClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistics {
    Fermion,
    Boson,
}

impl Statistics {
    /// `-1` for fermions, `+1` for bosons.
    pub fn sign(self) -> f64 {
        match self {
            Statistics::Fermion => -1.0,
            Statistics::Boson => 1.0,
        }
    }
}

impl std::str::FromStr for Statistics {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fermion" => Ok(Statistics::Fermion),
            "boson" => Ok(Statistics::Boson),
            other => Err(Error::Parse(format!(
                "unknown statistics {other:?} (expected fermion or boson)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CollisionSetup {
    /// Center of the packet moving with `+p1`.
    pub c1: f64,
    /// Center of the packet moving with `-p1`.
    pub c2: f64,
    pub p1: f64,
    /// Amplitude covariance `Σ` of each packet.
    pub sigma2: f64,
    pub hbar_over_m: f64,
    pub statistics: Statistics,
    pub grid: GridSpec,
}

impl Default for CollisionSetup {
    fn default() -> Self {
        Self {
            c1: -150.0,
            c2: 150.0,
            p1: 1.0,
            sigma2: 25.0,
            hbar_over_m: 1.0,
            statistics: Statistics::Fermion,
            grid: GridSpec::line(1000, 800.0).expect("default grid is valid"),
        }
    }
}

impl CollisionSetup {
    /// Packets at `∓c` moving towards each other with `±p1`.
    pub fn symmetric(c: f64, p1: f64, hbar_over_m: f64) -> Self {
        Self {
            c1: -c,
            c2: c,
            p1,
            hbar_over_m,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid.dim() != 1 {
            return Err(Error::InvalidGrid("collisions need a 1D grid".into()));
        }
        if !(self.sigma2 > 0.0) || !(self.hbar_over_m > 0.0) {
            return Err(Error::InvalidParameter(
                "sigma2 and hbar_over_m must be positive".into(),
            ));
        }
        if (self.c2 - self.c1).abs() < 10.0 * self.sigma2.sqrt() {
            log::warn!("packets start closer than 10σ apart");
        }
        Ok(())
    }

    /// Positive-energy Dirac relation with `m = 1/(ħ/m)`.
    pub fn model(&self) -> DispersionModel {
        DispersionModel::dirac(1.0 / self.hbar_over_m)
    }

    pub fn carrier(&self, which: usize) -> f64 {
        if which == 1 {
            self.p1
        } else {
            -self.p1
        }
    }

    pub fn group_speed(&self) -> f64 {
        group_velocity(&self.model(), &[self.p1])[0]
    }

    /// Time at which the packet centers coincide.
    pub fn meeting_time(&self) -> f64 {
        0.5 * (self.c2 - self.c1).abs() / self.group_speed()
    }
}

/// Packet `which ∈ {1, 2}` at time `t`, in the position representation.
pub fn single_packet(setup: &CollisionSetup, which: usize, t: f64) -> Result<SampledAmplitude> {
    if which != 1 && which != 2 {
        return Err(Error::InvalidParameter(format!(
            "packet index must be 1 or 2, got {which}"
        )));
    }
    if t < 0.0 {
        return Err(Error::InvalidParameter(format!("time must be non-negative, got {t}")));
    }
    let k0 = setup.carrier(which);
    let center = if which == 1 { setup.c1 } else { setup.c2 };
    let a = make_coherent(setup.grid, &CoherentState::line(center, k0, setup.sigma2))?;
    if t == 0.0 {
        return Ok(a);
    }
    let model = setup.model();
    let out = evolve_dispersion_transform(&a, &model, t, &[k0])?;
    let edge = 0.5 * setup.grid.extent() - 6.0 * setup.sigma2.sqrt();
    let moved = center + group_velocity(&model, &[k0])[0] * t;
    if moved.abs() > edge {
        log::warn!("packet {which} leaves the grid interior at t = {t}");
    }
    Ok(out)
}

/// Unnormalized `ρ(x1, x2) = |u1|²|u2|² + |v1|²|v2|² ± 2Re(u1* v2* v1 u2)`
/// with `u = ψ1`, `v = ψ2` evaluated at `x1` (index 1) and `x2` (index 2).
fn joint_value(a: &[num_complex::Complex64], b: &[num_complex::Complex64], i: usize, j: usize, sign: f64) -> f64 {
    let (u1, u2, v1, v2) = (a[i], a[j], b[i], b[j]);
    // factored per coordinate so that swapping i and j is bitwise symmetric
    let cross = (u1.conj() * v1) * (v2.conj() * u2);
    u1.norm_sqr() * v2.norm_sqr() + v1.norm_sqr() * u2.norm_sqr() + sign * 2.0 * cross.re
}

/// Joint norms below this are treated as an annihilated state; the
/// unsymmetrized product contributes 2.
const MIN_JOINT_NORM: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct JointDensity {
    pub position: Density2D,
    pub frequency: Density2D,
    /// Grid integral of the unnormalized position density.
    pub c_t: f64,
    /// Largest magnitude of the normalized exchange term, per representation.
    pub interference_linf_r: f64,
    pub interference_linf_k: f64,
}

fn build(a: &SampledAmplitude, b: &SampledAmplitude, sign: f64) -> Result<(Density2D, f64, f64)> {
    let n = a.grid.len();
    let repr = a.representation;
    let cell = a.grid.cell(repr).powi(2);
    let mut values = vec![0.0; n * n];
    let mut linf: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            values[i * n + j] = joint_value(&a.values, &b.values, i, j, sign);
            let x = ((a.values[i].conj() * b.values[i]) * (b.values[j].conj() * a.values[j])).re;
            linf = linf.max(2.0 * x.abs());
        }
    }
    let c = values.iter().sum::<f64>() * cell;
    if !(c > MIN_JOINT_NORM) {
        return Err(Error::DegenerateAmplitude);
    }
    values.iter_mut().for_each(|v| *v /= c);
    Ok((Density2D::new(a.grid, values, repr)?, c, linf / c))
}

pub fn joint_density(setup: &CollisionSetup, t: f64) -> Result<JointDensity> {
    setup.validate()?;
    let a = single_packet(setup, 1, t)?;
    let b = single_packet(setup, 2, t)?;
    let sign = setup.statistics.sign();
    let (position, c_t, lr) = build(&a, &b, sign)?;
    let (frequency, _, lk) = build(&fourier_transform(&a)?, &fourier_transform(&b)?, sign)?;
    Ok(JointDensity {
        position,
        frequency,
        c_t,
        interference_linf_r: lr,
        interference_linf_k: lk,
    })
}

/// Entropy of the normalized joint density without materializing it.
fn streamed_entropy(a: &SampledAmplitude, b: &SampledAmplitude, sign: f64) -> Result<(f64, f64)> {
    let n = a.grid.len();
    let cell = a.grid.cell(a.representation).powi(2);
    let (mut z, mut h) = (0.0, 0.0);
    for i in 0..n {
        let (mut zr, mut hr) = (0.0, 0.0);
        for j in 0..n {
            let v = joint_value(&a.values, &b.values, i, j, sign);
            if v < -NEG_CLAMP {
                return Err(Error::InvalidDensity {
                    index: i * n + j,
                    value: v,
                });
            }
            if v > 0.0 {
                zr += v;
                hr += v * v.ln();
            }
        }
        z += zr;
        h += hr;
    }
    let c = z * cell;
    if !(c > MIN_JOINT_NORM) {
        return Err(Error::DegenerateAmplitude);
    }
    // S = -Σ (v/c) ln(v/c) cell
    Ok((-(h * cell) / c + c.ln(), c))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CollisionRow {
    pub t: f64,
    pub s_total: EntropyValue,
    /// `S(ψ1) + S(ψ2)` for the unsymmetrized packets.
    pub s_sum_singles: f64,
    /// `∫|ψ1||ψ2| dx`, 0 for disjoint and 1 for coincident packets.
    pub overlap: f64,
    pub c_t: f64,
}

fn single_entropy(a: &SampledAmplitude) -> Result<f64> {
    Ok(total_entropy(&born_density(a), &born_density(&fourier_transform(a)?))?.total)
}

pub fn collision_row(setup: &CollisionSetup, t: f64) -> Result<CollisionRow> {
    let a = single_packet(setup, 1, t)?;
    let b = single_packet(setup, 2, t)?;
    let (fa, fb) = (fourier_transform(&a)?, fourier_transform(&b)?);
    let sign = setup.statistics.sign();
    let (s_r, c_t) = streamed_entropy(&a, &b, sign)?;
    let (s_k, _) = streamed_entropy(&fa, &fb, sign)?;
    let overlap = a
        .values
        .iter()
        .zip(&b.values)
        .map(|(x, y)| x.norm() * y.norm())
        .sum::<f64>()
        * setup.grid.spacing();
    Ok(CollisionRow {
        t,
        s_total: EntropyValue::new(s_r, s_k),
        s_sum_singles: single_entropy(&a)? + single_entropy(&b)?,
        overlap,
        c_t,
    })
}

/// One row per time; computed in parallel over `t` when the `parallel`
/// feature is on, with identical results either way.
pub fn collision_rows(setup: &CollisionSetup, t_grid: &[f64]) -> Result<Vec<CollisionRow>> {
    setup.validate()?;
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        t_grid.par_iter().map(|&t| collision_row(setup, t)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        t_grid.iter().map(|&t| collision_row(setup, t)).collect()
    }
}

pub fn collision_entropy_series(setup: &CollisionSetup, t_grid: &[f64]) -> Result<EntropySeries> {
    let rows = collision_rows(setup, t_grid)?;
    EntropySeries::new(
        t_grid.to_vec(),
        rows.iter().map(|r| r.s_total.total).collect(),
        format!("{:?} collision", setup.statistics).to_lowercase(),
    )
}

/// Times `0, dt, …` up to twice the meeting time.
pub fn default_time_grid(setup: &CollisionSetup, steps: usize) -> Vec<f64> {
    let end = 2.0 * setup.meeting_time();
    (0..=steps).map(|i| end * i as f64 / steps as f64).collect()
}

pub fn classify_collision(setup: &CollisionSetup, steps: usize, epsilon: f64) -> Result<QCurveClass> {
    let series = collision_entropy_series(setup, &default_time_grid(setup, steps))?;
    classify(&series, epsilon)
}
