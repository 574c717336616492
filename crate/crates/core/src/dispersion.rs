//! Free-particle dispersion relations and wavepacket propagation.
//!
//! Units are ħ = c = 1, so `ω_S(k) = k²/2m` and `ω_D(k) = ±√(k² + m²)`.
//! Exact evolution multiplies the frequency samples by `e^{-iω(k)t}`; the
//! dispersion transform replaces `ω` by its second-order Taylor expansion
//! around the packet's carrier `k0`, which is exact for the quadratic
//! Schrödinger relation.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::entropy::min_entropy_bound;
use crate::error::{Error, Result};
use crate::grid::{normalize, transform_in_place, GridSpec, Representation, SampledAmplitude};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DispersionKind {
    Schroedinger,
    Dirac,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Positive,
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DispersionModel {
    pub kind: DispersionKind,
    pub mass: f64,
    pub branch: Branch,
}

impl DispersionModel {
    pub fn schroedinger(mass: f64) -> Self {
        Self {
            kind: DispersionKind::Schroedinger,
            mass,
            branch: Branch::Positive,
        }
    }

    pub fn dirac(mass: f64) -> Self {
        Self {
            kind: DispersionKind::Dirac,
            mass,
            branch: Branch::Positive,
        }
    }

    pub fn with_branch(mut self, branch: Branch) -> Self {
        self.branch = branch;
        self
    }

    fn sign(&self) -> f64 {
        match (self.kind, self.branch) {
            (DispersionKind::Dirac, Branch::Negative) => -1.0,
            _ => 1.0,
        }
    }
}

fn norm_sq(k: &[f64]) -> f64 {
    k.iter().map(|x| x * x).sum()
}

pub fn omega(model: &DispersionModel, k: &[f64]) -> f64 {
    let k2 = norm_sq(k);
    match model.kind {
        DispersionKind::Schroedinger => k2 / (2.0 * model.mass),
        DispersionKind::Dirac => model.sign() * (k2 + model.mass * model.mass).sqrt(),
    }
}

pub fn group_velocity(model: &DispersionModel, k: &[f64]) -> Vec<f64> {
    match model.kind {
        DispersionKind::Schroedinger => k.iter().map(|x| x / model.mass).collect(),
        DispersionKind::Dirac => {
            let e = (norm_sq(k) + model.mass * model.mass).sqrt();
            k.iter().map(|x| model.sign() * x / e).collect()
        }
    }
}

pub fn hessian(model: &DispersionModel, k: &[f64]) -> DMatrix<f64> {
    let d = k.len();
    match model.kind {
        DispersionKind::Schroedinger => DMatrix::identity(d, d) / model.mass,
        DispersionKind::Dirac => {
            let e2 = norm_sq(k) + model.mass * model.mass;
            let pre = model.sign() * e2.powf(-1.5);
            DMatrix::from_fn(d, d, |i, j| {
                let delta = if i == j { e2 } else { 0.0 };
                pre * (delta - k[i] * k[j])
            })
        }
    }
}

/// Closed-form Hessian spectrum `(λ1, λ2, λ3)`: for Dirac `λ1` is the
/// longitudinal value `m²/(m²+|k|²)^{3/2}` and `λ2 = λ3 = (m²+|k|²)^{-1/2}`.
pub fn hessian_eigenvalues(model: &DispersionModel, k: &[f64]) -> [f64; 3] {
    match model.kind {
        DispersionKind::Schroedinger => [1.0 / model.mass; 3],
        DispersionKind::Dirac => {
            let m2 = model.mass * model.mass;
            let e2 = m2 + norm_sq(k);
            let s = model.sign();
            let t = s / e2.sqrt();
            [s * m2 / e2.powf(1.5), t, t]
        }
    }
}

/// Gaussian packet `N(r; r0, Σ) e^{i k0·r}`; its Born density has covariance `Σ/2`
/// and its frequency density covariance `Σ⁻¹/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentState {
    pub center_r: Vec<f64>,
    pub center_k: Vec<f64>,
    pub sigma2: DMatrix<f64>,
}

impl CoherentState {
    pub fn new(center_r: Vec<f64>, center_k: Vec<f64>, sigma2: DMatrix<f64>) -> Result<Self> {
        let d = center_r.len();
        if center_k.len() != d || sigma2.nrows() != d || sigma2.ncols() != d {
            return Err(Error::DimensionMismatch(
                "center_r, center_k and sigma2 must share a dimension".into(),
            ));
        }
        Ok(Self {
            center_r,
            center_k,
            sigma2,
        })
    }

    /// 1D packet with scalar `σ²`.
    pub fn line(center_r: f64, center_k: f64, sigma2: f64) -> Self {
        Self {
            center_r: vec![center_r],
            center_k: vec![center_k],
            sigma2: DMatrix::from_element(1, 1, sigma2),
        }
    }

    /// Isotropic 3D packet.
    pub fn isotropic(center_r: [f64; 3], center_k: [f64; 3], sigma2: f64) -> Self {
        Self {
            center_r: center_r.to_vec(),
            center_k: center_k.to_vec(),
            sigma2: DMatrix::identity(3, 3) * sigma2,
        }
    }

    pub fn dim(&self) -> usize {
        self.center_r.len()
    }

    fn inverse(&self) -> Result<DMatrix<f64>> {
        let chol = self.sigma2.clone().cholesky().ok_or(Error::NotPositiveDefinite)?;
        Ok(chol.inverse())
    }
}

/// Samples a normalized coherent state; logs a warning when the density
/// reaches within six standard deviations of the boundary.
pub fn make_coherent(grid: GridSpec, cs: &CoherentState) -> Result<SampledAmplitude> {
    let d = grid.dim();
    if cs.dim() != d {
        return Err(Error::DimensionMismatch(format!(
            "{}D coherent state on a {d}D grid",
            cs.dim()
        )));
    }
    let inv = cs.inverse()?;
    let half = 0.5 * grid.extent();
    for a in 0..d {
        let sd = (0.5 * cs.sigma2[(a, a)]).sqrt();
        if cs.center_r[a] - 6.0 * sd < -half || cs.center_r[a] + 6.0 * sd > half {
            log::warn!("packet truncation: axis {a} comes within 6σ of the grid boundary");
        }
    }
    let a = SampledAmplitude::from_fn(grid, Representation::Position, |p| {
        let mut q = 0.0;
        let mut phase = 0.0;
        for i in 0..d {
            phase += cs.center_k[i] * p[i];
            for j in 0..d {
                q += (p[i] - cs.center_r[i]) * inv[(i, j)] * (p[j] - cs.center_r[j]);
            }
        }
        Complex64::from_polar((-0.5 * q).exp(), phase)
    });
    normalize(&a)
}

fn apply_spectral_phase(a: &SampledAmplitude, time: f64, phase: impl Fn(&[f64]) -> f64) -> Result<SampledAmplitude> {
    let grid = a.grid;
    let mut values = a.values.clone();
    if a.representation == Representation::Position {
        transform_in_place(&grid, &mut values, Representation::Position);
    }
    let d = grid.dim();
    for (i, v) in values.iter_mut().enumerate() {
        let k = grid.point(Representation::Frequency, i);
        *v *= Complex64::from_polar(1.0, -phase(&k[..d]));
    }
    if a.representation == Representation::Position {
        transform_in_place(&grid, &mut values, Representation::Frequency);
    }
    Ok(SampledAmplitude {
        grid,
        values,
        representation: a.representation,
        time: a.time + time,
    })
}

/// Propagates by `e^{-iω(k)t}` in the frequency representation. The result
/// keeps the input's representation.
pub fn evolve_exact(a: &SampledAmplitude, model: &DispersionModel, t: f64) -> Result<SampledAmplitude> {
    apply_spectral_phase(a, t, |k| omega(model, k) * t)
}

/// Second-order dispersion transform around `k0`: translation by the group
/// velocity, the carrier phase `ω(k0)t`, and the imaginary-covariance
/// blur `itH(k0)`. Renormalized afterwards.
pub fn evolve_dispersion_transform(
    a: &SampledAmplitude,
    model: &DispersionModel,
    t: f64,
    k0: &[f64],
) -> Result<SampledAmplitude> {
    let d = a.grid.dim();
    if k0.len() != d {
        return Err(Error::DimensionMismatch(format!(
            "k0 has {} components on a {d}D grid",
            k0.len()
        )));
    }
    let w0 = omega(model, k0);
    let vg = group_velocity(model, k0);
    let h = hessian(model, k0);
    let out = apply_spectral_phase(a, t, |k| {
        let mut lin = 0.0;
        let mut quad = 0.0;
        for i in 0..d {
            let di = k[i] - k0[i];
            lin += vg[i] * di;
            for j in 0..d {
                quad += di * h[(i, j)] * (k[j] - k0[j]);
            }
        }
        (w0 + lin + 0.5 * quad) * t
    })?;
    normalize(&out)
}

/// `d(1 + ln π) + ½ ln det(I + t²(Σ⁻¹H)²)` with `H` evaluated at the packet carrier.
pub fn coherent_entropy_closed_form(cs: &CoherentState, model: &DispersionModel, t: f64) -> Result<f64> {
    let d = cs.dim();
    let inv = cs.inverse()?;
    let m = &inv * hessian(model, &cs.center_k);
    let a = DMatrix::identity(d, d) + (&m * &m) * (t * t);
    Ok(min_entropy_bound(d) + 0.5 * a.determinant().ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::total_entropy;
    use crate::grid::{born_density, fourier_transform};
    use approx::assert_abs_diff_eq;

    fn entropy_of(a: &SampledAmplitude) -> f64 {
        let phi = fourier_transform(a).unwrap();
        total_entropy(&born_density(a), &born_density(&phi)).unwrap().total
    }

    #[test]
    fn omega_examples() {
        assert_abs_diff_eq!(omega(&DispersionModel::schroedinger(1.0), &[2.0, 0.0, 0.0]), 2.0);
        assert_abs_diff_eq!(omega(&DispersionModel::dirac(1.0), &[0.0, 0.0, 0.0]), 1.0);
        assert_abs_diff_eq!(omega(&DispersionModel::dirac(1.0), &[1.0, 0.0, 0.0]), 2f64.sqrt());
        let neg = DispersionModel::dirac(1.0).with_branch(Branch::Negative);
        assert_abs_diff_eq!(omega(&neg, &[0.0]), -1.0);
    }

    #[test]
    fn group_velocity_examples() {
        assert_eq!(
            group_velocity(&DispersionModel::schroedinger(1.0), &[2.0, 0.0, 0.0]),
            vec![2.0, 0.0, 0.0]
        );
        let v = group_velocity(&DispersionModel::dirac(1.0), &[1.0, 0.0, 0.0]);
        assert_abs_diff_eq!(v[0], 0.5f64.sqrt(), epsilon = 1e-15);
        for m in [DispersionModel::schroedinger(2.0), DispersionModel::dirac(0.7)] {
            assert!(group_velocity(&m, &[0.0; 3]).iter().all(|x| *x == 0.0));
        }
    }

    #[test]
    fn hessian_examples() {
        let h = hessian(&DispersionModel::schroedinger(2.0), &[0.3, -1.0, 4.0]);
        assert_eq!(h, DMatrix::identity(3, 3) * 0.5);
        let h0 = hessian(&DispersionModel::dirac(1.0), &[0.0; 3]);
        assert_eq!(h0, DMatrix::identity(3, 3));
        let h1 = hessian(&DispersionModel::dirac(1.0), &[1.0, 0.0, 0.0]);
        assert_abs_diff_eq!(h1[(0, 0)], 2f64.powf(-1.5), epsilon = 1e-15);
        assert_abs_diff_eq!(h1[(1, 1)], 2f64.powf(-0.5), epsilon = 1e-15);
        assert_abs_diff_eq!(h1[(2, 2)], 2f64.powf(-0.5), epsilon = 1e-15);
        assert_eq!(h1[(0, 1)], 0.0);
    }

    #[test]
    fn eigenvalue_examples() {
        let dirac1 = DispersionModel::dirac(1.0);
        assert_eq!(hessian_eigenvalues(&dirac1, &[0.0; 3]), [1.0; 3]);
        let e = hessian_eigenvalues(&dirac1, &[1.0, 0.0, 0.0]);
        assert_abs_diff_eq!(e[0], 0.35355, epsilon = 1e-5);
        assert_abs_diff_eq!(e[1], 2f64.powf(-0.5), epsilon = 1e-12);
        let e2 = hessian_eigenvalues(&DispersionModel::dirac(2.0), &[0.0, 1.0, 0.0]);
        assert_abs_diff_eq!(e2[0], 4.0 / 5f64.powf(1.5), epsilon = 1e-15);
        assert_abs_diff_eq!(e2[0], 0.35777, epsilon = 1e-5);
        assert_abs_diff_eq!(e2[2], 0.44721, epsilon = 1e-5);
    }

    #[test]
    fn coherent_state_minimum_and_scaling() {
        let grid = GridSpec::line(4096, 80.0).unwrap();
        let a = make_coherent(grid, &CoherentState::line(0.0, 0.0, 1.0)).unwrap();
        assert_abs_diff_eq!(entropy_of(&a), min_entropy_bound(1), epsilon = 1e-3);

        let wide = make_coherent(grid, &CoherentState::line(0.0, 0.0, 4.0)).unwrap();
        let phi_a = fourier_transform(&a).unwrap();
        let phi_w = fourier_transform(&wide).unwrap();
        let ea = total_entropy(&born_density(&a), &born_density(&phi_a)).unwrap();
        let ew = total_entropy(&born_density(&wide), &born_density(&phi_w)).unwrap();
        assert_abs_diff_eq!(ew.s_r - ea.s_r, 2f64.ln(), epsilon = 1e-9);
        assert_abs_diff_eq!(ew.s_k - ea.s_k, -2f64.ln(), epsilon = 1e-9);
        assert_abs_diff_eq!(ew.total, ea.total, epsilon = 1e-9);
    }

    #[test]
    fn modulated_packet_peaks_at_carrier() {
        let grid = GridSpec::line(1024, 80.0).unwrap();
        let a = make_coherent(grid, &CoherentState::line(0.0, 5.0, 1.0)).unwrap();
        let rho = born_density(&fourier_transform(&a).unwrap());
        let (imax, _) = rho
            .values
            .iter()
            .enumerate()
            .fold((0, f64::MIN), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
        assert!((grid.k(imax) - 5.0).abs() <= grid.freq_spacing());
    }

    #[test]
    fn non_positive_definite_sigma_rejected() {
        let cs = CoherentState::line(0.0, 0.0, -1.0);
        let m = DispersionModel::schroedinger(1.0);
        assert_eq!(
            coherent_entropy_closed_form(&cs, &m, 1.0),
            Err(Error::NotPositiveDefinite)
        );
        let grid = GridSpec::line(64, 10.0).unwrap();
        assert_eq!(make_coherent(grid, &cs), Err(Error::NotPositiveDefinite));
    }

    #[test]
    fn closed_form_examples() {
        let cs = CoherentState::line(0.0, 0.0, 1.0);
        let m = DispersionModel::schroedinger(1.0);
        assert_abs_diff_eq!(
            coherent_entropy_closed_form(&cs, &m, 0.0).unwrap(),
            min_entropy_bound(1)
        );
        assert_abs_diff_eq!(
            coherent_entropy_closed_form(&cs, &m, 1.0).unwrap(),
            1.0 + std::f64::consts::PI.ln() + 0.5 * 2f64.ln(),
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            coherent_entropy_closed_form(&cs, &m, 1.0).unwrap(),
            2.49131,
            epsilon = 1e-5
        );
        let mut prev = f64::MIN;
        for i in 0..50 {
            let s = coherent_entropy_closed_form(&cs, &m, 0.2 * i as f64).unwrap();
            assert!(s > prev);
            prev = s;
        }
    }

    #[test]
    fn evolution_identities() {
        let grid = GridSpec::line(1024, 80.0).unwrap();
        let a = make_coherent(grid, &CoherentState::line(-3.0, 1.5, 2.0)).unwrap();
        let m = DispersionModel::dirac(1.3);
        let same = evolve_exact(&a, &m, 0.0).unwrap();
        let err = |x: &SampledAmplitude, y: &SampledAmplitude| {
            x.values
                .iter()
                .zip(&y.values)
                .map(|(p, q)| (p - q).norm())
                .fold(0.0, f64::max)
        };
        assert!(err(&same, &a) < 1e-12);
        let two = evolve_exact(&evolve_exact(&a, &m, 0.7).unwrap(), &m, 1.9).unwrap();
        let one = evolve_exact(&a, &m, 2.6).unwrap();
        assert!(err(&two, &one) < 1e-9);
        assert_abs_diff_eq!(one.time, 2.6);
        assert_abs_diff_eq!(one.norm_sq(), 1.0, epsilon = 1e-9);
        let t0 = evolve_dispersion_transform(&a, &m, 0.0, &[1.5]).unwrap();
        assert!(err(&t0, &a) < 1e-12);
    }

    #[test]
    fn schroedinger_spreading_matches_gaussian_law() {
        let grid = GridSpec::line(4096, 80.0).unwrap();
        let a = make_coherent(grid, &CoherentState::line(0.0, 0.0, 1.0)).unwrap();
        let m = DispersionModel::schroedinger(1.0);
        for t in [0.5, 1.0, 3.0] {
            let rho = born_density(&evolve_exact(&a, &m, t).unwrap());
            // amplitude parameter Σ(t) = Σ + t²H²/Σ; the density carries Σ(t)/2
            assert_abs_diff_eq!(rho.variance(0), 0.5 * (1.0 + t * t), epsilon = 1e-9);
        }
    }
}
