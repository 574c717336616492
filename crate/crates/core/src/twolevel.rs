//! Exact transition amplitudes of a two-level system under `H⁰ + Hᴵ`, the
//! N-level generalization, and the entropy oscillation they drive.
//!
//! With `H = [[ω11, ω12ᴵ], [ω12ᴵ, ω22]]` diagonalized by the rotation `R(θ)`,
//! `e^{-iHt}(1,0)ᵀ = (cos²θ e^{-iλ1t} + sin²θ e^{-iλ2t}, sin2θ (e^{-iλ1t} - e^{-iλ2t})/2)`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::entropy::total_entropy;
use crate::error::{Error, Result};
use crate::grid::{fourier_transform, Density, GridSpec, Representation, SampledAmplitude};
use crate::qcurve::EntropySeries;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoLevelSystem {
    pub omega1: f64,
    pub omega2: f64,
    pub w11i: f64,
    pub w22i: f64,
    /// Real symmetric coupling; `ω21ᴵ = ω12ᴵ` keeps `Hᴵ` Hermitian.
    pub w12i: f64,
}

impl TwoLevelSystem {
    pub fn new(omega1: f64, omega2: f64, w11i: f64, w22i: f64, w12i: f64) -> Self {
        Self {
            omega1,
            omega2,
            w11i,
            w22i,
            w12i,
        }
    }

    /// System with the given dressed diagonal `ω11`, `ω22` and coupling.
    pub fn dressed(omega11: f64, omega22: f64, w12i: f64) -> Self {
        Self::new(omega11, omega22, 0.0, 0.0, w12i)
    }

    pub fn omega11(&self) -> f64 {
        self.omega1 + self.w11i
    }

    pub fn omega22(&self) -> f64 {
        self.omega2 + self.w22i
    }

    fn discriminant(&self) -> f64 {
        let d = self.omega11() - self.omega22();
        (d * d + 4.0 * self.w12i * self.w12i).sqrt()
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(2, 2, &[self.omega11(), self.w12i, self.w12i, self.omega22()])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixingAngle {
    pub theta: f64,
    /// Set when `ω11 = ω22` and `ω12ᴵ = 0`; `θ` is then reported as 0.
    pub degenerate: bool,
}

pub fn mixing_angle(sys: &TwoLevelSystem) -> MixingAngle {
    if sys.discriminant() == 0.0 {
        return MixingAngle {
            theta: 0.0,
            degenerate: true,
        };
    }
    // atan2 ∈ (-π, π] puts θ in (-π/2, π/2]
    let theta = 0.5 * (2.0 * sys.w12i).atan2(sys.omega11() - sys.omega22());
    MixingAngle {
        theta,
        degenerate: false,
    }
}

/// `(λ1, λ2)` with `λ1` taking the `+` root.
pub fn eigenvalues(sys: &TwoLevelSystem) -> (f64, f64) {
    let s = sys.omega11() + sys.omega22();
    let d = sys.discriminant();
    (0.5 * (s + d), 0.5 * (s - d))
}

/// Full propagator `e^{-iHt}` in the `H⁰` eigenbasis, row-major.
fn propagator(sys: &TwoLevelSystem, t: f64) -> [[Complex64; 2]; 2] {
    let th = mixing_angle(sys).theta;
    let (l1, l2) = eigenvalues(sys);
    let e1 = Complex64::from_polar(1.0, -l1 * t);
    let e2 = Complex64::from_polar(1.0, -l2 * t);
    let (c2, s2) = (th.cos().powi(2), th.sin().powi(2));
    let off = (e1 - e2) * (0.5 * (2.0 * th).sin());
    [[e1 * c2 + e2 * s2, off], [off, e1 * s2 + e2 * c2]]
}

/// Amplitudes of `e^{-iHt}|ψ_E1⟩` on `|ψ_E1⟩, |ψ_E2⟩`.
pub fn coefficients(sys: &TwoLevelSystem, t: f64) -> (Complex64, Complex64) {
    let u = propagator(sys, t);
    (u[0][0], u[1][0])
}

pub fn superposition_coefficients(
    sys: &TwoLevelSystem,
    t: f64,
    a1: Complex64,
    a2: Complex64,
) -> Result<(Complex64, Complex64)> {
    let n = a1.norm_sqr() + a2.norm_sqr();
    if (n - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized(n));
    }
    let u = propagator(sys, t);
    Ok((u[0][0] * a1 + u[0][1] * a2, u[1][0] * a1 + u[1][1] * a2))
}

/// Weak-coupling estimate `4(ω12ᴵ)²/(ω1-ω2)² sin²((ω2-ω1)t/2)` of `|α2|²`.
pub fn fermi_approximation(sys: &TwoLevelSystem, t: f64) -> Result<f64> {
    let d = sys.omega1 - sys.omega2;
    if d == 0.0 {
        return Err(Error::Resonant);
    }
    Ok(4.0 * sys.w12i * sys.w12i / (d * d) * (0.5 * (sys.omega2 - sys.omega1) * t).sin().powi(2))
}

/// Eigen-decomposition of a real symmetric matrix with eigenvectors as
/// columns; each vector's first nonzero component is made positive.
pub fn symmetric_eigen(h: &DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    check_symmetric(h)?;
    let eig = SymmetricEigen::new(h.clone());
    let mut vecs = eig.eigenvectors;
    for c in 0..vecs.ncols() {
        let first = vecs.column(c).iter().copied().find(|x| x.abs() > 1e-14).unwrap_or(1.0);
        if first < 0.0 {
            vecs.column_mut(c).neg_mut();
        }
    }
    Ok((eig.eigenvalues.iter().copied().collect(), vecs))
}

fn check_symmetric(h: &DMatrix<f64>) -> Result<()> {
    if h.nrows() != h.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix is not square",
            h.nrows(),
            h.ncols()
        )));
    }
    let scale = h.amax().max(1.0);
    let asym = (h - h.transpose()).amax();
    if asym > 1e-12 * scale {
        return Err(Error::AsymmetricMatrix(asym));
    }
    Ok(())
}

/// `|α_j(t)|²` for a system started in the first `H⁰` eigenstate.
///
/// `j` is zero-based: `j = 0` is the initial state.
pub fn n_level_transition(h0_diag: &[f64], hi: &DMatrix<f64>, j: usize, t: f64) -> Result<f64> {
    Ok(n_level_probabilities(h0_diag, hi, t)?[j])
}

/// All `|α_j(t)|²`, from `Σ_i [v_ij² v_i1² + 2 Σ_{k>i} v_ij v_i1 v_kj v_k1 cos((λi-λk)t)]`.
pub fn n_level_probabilities(h0_diag: &[f64], hi: &DMatrix<f64>, t: f64) -> Result<Vec<f64>> {
    let n = h0_diag.len();
    if hi.nrows() != n || hi.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "H0 has {n} levels but HI is {}x{}",
            hi.nrows(),
            hi.ncols()
        )));
    }
    check_symmetric(hi)?;
    let h = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(h0_diag)) + hi;
    let (lambda, v) = symmetric_eigen(&h)?;
    // v[(j, i)] is component j of eigenvector i
    Ok((0..n)
        .map(|j| {
            let mut p = 0.0;
            for i in 0..n {
                let wi = v[(j, i)] * v[(0, i)];
                p += wi * wi;
                for k in (i + 1)..n {
                    let wk = v[(j, k)] * v[(0, k)];
                    p += 2.0 * wi * wk * ((lambda[i] - lambda[k]) * t).cos();
                }
            }
            p
        })
        .collect())
}

/// Orthonormal pair of states with their frequency representations.
#[derive(Debug, Clone)]
pub struct OscillationBasis {
    pub psi1: SampledAmplitude,
    pub psi2: SampledAmplitude,
    pub phi1: SampledAmplitude,
    pub phi2: SampledAmplitude,
}

impl OscillationBasis {
    pub fn new(psi1: SampledAmplitude, psi2: SampledAmplitude) -> Result<Self> {
        if psi1.representation != Representation::Position || psi2.representation != Representation::Position {
            return Err(Error::WrongRepresentation { expected: "position" });
        }
        let n1 = psi1.norm_sq();
        let n2 = psi2.norm_sq();
        let overlap = psi1.inner(&psi2)?.norm();
        if (n1 - 1.0).abs() > 1e-8 || (n2 - 1.0).abs() > 1e-8 || overlap > 1e-8 {
            return Err(Error::NotOrthonormal(format!("norms {n1}, {n2}; overlap {overlap:e}")));
        }
        let phi1 = fourier_transform(&psi1)?;
        let phi2 = fourier_transform(&psi2)?;
        Ok(Self { psi1, psi2, phi1, phi2 })
    }

    /// Harmonic-oscillator ground and first excited states (unit frequency
    /// and mass) sampled on a 1D grid.
    pub fn harmonic_oscillator(grid: GridSpec) -> Result<Self> {
        let c = PI.powf(-0.25);
        let ground = SampledAmplitude::from_fn(grid, Representation::Position, |p| {
            Complex64::new(c * (-0.5 * p[0] * p[0]).exp(), 0.0)
        });
        let first = SampledAmplitude::from_fn(grid, Representation::Position, |p| {
            Complex64::new(c * 2f64.sqrt() * p[0] * (-0.5 * p[0] * p[0]).exp(), 0.0)
        });
        Self::new(ground, first)
    }

    pub fn grid(&self) -> GridSpec {
        self.psi1.grid
    }
}

fn mix(a1: Complex64, a2: Complex64, u: &SampledAmplitude, v: &SampledAmplitude) -> Density {
    Density {
        grid: u.grid,
        values: u
            .values
            .iter()
            .zip(&v.values)
            .map(|(x, y)| (a1 * x + a2 * y).norm_sqr())
            .collect(),
        representation: u.representation,
    }
}

/// `(|α1ψ1 + α2ψ2|², |α1φ1 + α2φ2|²)` at time `t`.
pub fn oscillation_densities(basis: &OscillationBasis, sys: &TwoLevelSystem, t: f64) -> (Density, Density) {
    let (a1, a2) = coefficients(sys, t);
    (
        mix(a1, a2, &basis.psi1, &basis.psi2),
        mix(a1, a2, &basis.phi1, &basis.phi2),
    )
}

/// Time-independent coefficient fields of
/// `ρ(t) = c1 + c2 sin²(Δλt/2) + c3 sin(Δλt)` with `Δλ = λ2 - λ1`:
///
/// * `c1 = |ψ1|²`
/// * `c2 = sin²2θ (|ψ2|² - |ψ1|²) + sin2θ·cos2θ · 2Re(ψ1*ψ2)`
/// * `c3 = -sin2θ Im(ψ1*ψ2)`
#[derive(Debug, Clone)]
pub struct OscillationCoefficients {
    pub delta_lambda: f64,
    pub a: [Vec<f64>; 3],
    pub b: [Vec<f64>; 3],
    grid: GridSpec,
}

fn expansion(u: &SampledAmplitude, v: &SampledAmplitude, th: f64) -> [Vec<f64>; 3] {
    let (s2, c2) = ((2.0 * th).sin(), (2.0 * th).cos());
    let mut c = [Vec::new(), Vec::new(), Vec::new()];
    for (x, y) in u.values.iter().zip(&v.values) {
        let cross = x.conj() * y;
        c[0].push(x.norm_sqr());
        c[1].push(s2 * s2 * (y.norm_sqr() - x.norm_sqr()) + 2.0 * s2 * c2 * cross.re);
        c[2].push(-s2 * cross.im);
    }
    c
}

impl OscillationCoefficients {
    pub fn new(basis: &OscillationBasis, sys: &TwoLevelSystem) -> Self {
        let th = mixing_angle(sys).theta;
        let (l1, l2) = eigenvalues(sys);
        Self {
            delta_lambda: l2 - l1,
            a: expansion(&basis.psi1, &basis.psi2, th),
            b: expansion(&basis.phi1, &basis.phi2, th),
            grid: basis.grid(),
        }
    }

    pub fn densities_at(&self, t: f64) -> (Density, Density) {
        let x = self.delta_lambda * t;
        let (w2, w3) = ((0.5 * x).sin().powi(2), x.sin());
        let eval = |c: &[Vec<f64>; 3]| -> Vec<f64> {
            (0..c[0].len()).map(|i| c[0][i] + w2 * c[1][i] + w3 * c[2][i]).collect()
        };
        (
            Density {
                grid: self.grid,
                values: eval(&self.a),
                representation: Representation::Position,
            },
            Density {
                grid: self.grid,
                values: eval(&self.b),
                representation: Representation::Frequency,
            },
        )
    }

    /// Largest magnitude of the `sin(Δλt)` fields in either representation.
    pub fn odd_term_size(&self) -> f64 {
        self.a[2].iter().chain(&self.b[2]).fold(0.0, |m, v| m.max(v.abs()))
    }
}

pub fn oscillation_entropy_series(
    basis: &OscillationBasis,
    sys: &TwoLevelSystem,
    t_grid: &[f64],
) -> Result<EntropySeries> {
    let values = t_grid
        .iter()
        .map(|&t| {
            let (r, k) = oscillation_densities(basis, sys, t);
            total_entropy(&r, &k).map(|e| e.total)
        })
        .collect::<Result<Vec<_>>>()?;
    EntropySeries::new(t_grid.to_vec(), values, "two-level oscillation")
}

/// How closely the densities recur after `2π/|Δλ|` and after `π/|Δλ|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceReport {
    pub full_period: f64,
    pub full_period_max_diff: f64,
    pub half_period_max_diff: f64,
    pub half_period_recurs: bool,
}

/// Compares densities at `t` against `t + 2π/|Δλ|` and `t + π/|Δλ|` over
/// the sample times; the half period recurs only when the odd terms vanish.
pub fn recurrence_report(
    basis: &OscillationBasis,
    sys: &TwoLevelSystem,
    sample_times: &[f64],
    tol: f64,
) -> Result<RecurrenceReport> {
    let (l1, l2) = eigenvalues(sys);
    let dl = (l2 - l1).abs();
    if dl == 0.0 {
        return Err(Error::InvalidParameter(
            "degenerate eigenvalues: no oscillation period".into(),
        ));
    }
    let full = 2.0 * PI / dl;
    let diff = |t: f64, shift: f64| -> f64 {
        let (r0, k0) = oscillation_densities(basis, sys, t);
        let (r1, k1) = oscillation_densities(basis, sys, t + shift);
        r0.values
            .iter()
            .zip(&r1.values)
            .chain(k0.values.iter().zip(&k1.values))
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    };
    let full_diff = sample_times.iter().map(|&t| diff(t, full)).fold(0.0, f64::max);
    let half_diff = sample_times.iter().map(|&t| diff(t, 0.5 * full)).fold(0.0, f64::max);
    Ok(RecurrenceReport {
        full_period: full,
        full_period_max_diff: full_diff,
        half_period_max_diff: half_diff,
        half_period_recurs: half_diff <= tol,
    })
}
