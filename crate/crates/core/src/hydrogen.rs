//! Hydrogen 1s and 2p₀ amplitudes, their entropies by spherical quadrature,
//! and the Lyman-alpha entropy budget including the emitted photon.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::Rule;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HydrogenState {
    pub n: u32,
    pub l: u32,
    pub m: i32,
    /// Bohr radius.
    pub a0: f64,
    /// Momentum unit `ħ/a0`.
    pub p0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Level {
    Ground,
    TwoP0,
}

impl HydrogenState {
    pub fn new(n: u32, l: u32, m: i32) -> Result<Self> {
        let s = Self {
            n,
            l,
            m,
            a0: 1.0,
            p0: 1.0,
        };
        s.level()?;
        Ok(s)
    }

    pub fn ground() -> Self {
        Self::new(1, 0, 0).expect("1s is supported")
    }

    pub fn two_p0() -> Self {
        Self::new(2, 1, 0).expect("2p0 is supported")
    }

    /// Same state with Bohr radius `a0` and `p0 = 1/a0`.
    pub fn with_bohr_radius(mut self, a0: f64) -> Self {
        self.a0 = a0;
        self.p0 = 1.0 / a0;
        self
    }

    fn level(&self) -> Result<Level> {
        match (self.n, self.l, self.m) {
            (1, 0, 0) => Ok(Level::Ground),
            (2, 1, 0) => Ok(Level::TwoP0),
            (n, l, m) => Err(Error::UnsupportedState { n, l, m }),
        }
    }
}

pub fn position_amplitude(state: &HydrogenState, r: f64, theta: f64, _phi: f64) -> Result<Complex64> {
    let rho = r / state.a0;
    let scale = state.a0.powf(-1.5);
    let v = match state.level()? {
        Level::Ground => scale * (-rho).exp() / PI.sqrt(),
        Level::TwoP0 => scale * rho * (-0.5 * rho).exp() * theta.cos() / (32.0 * PI).sqrt(),
    };
    Ok(Complex64::new(v, 0.0))
}

/// Momentum amplitudes normalized over `ℝ³`.
///
/// The textbook prefactors `√(128²/2π)` and `√(32/π)` carry norms `2π` and
/// `4π`; these are divided out here.
pub fn momentum_amplitude_standard(state: &HydrogenState, p: f64, theta_p: f64, _phi_p: f64) -> Result<Complex64> {
    let q = p / state.p0;
    let scale = state.p0.powf(-1.5);
    let v = match state.level()? {
        Level::Ground => scale * 8f64.sqrt() / PI * (1.0 + q * q).powi(-2),
        Level::TwoP0 => scale * 64.0 / PI * q * (1.0 + 4.0 * q * q).powi(-3) * theta_p.cos(),
    };
    Ok(Complex64::new(v, 0.0))
}

/// `(θ cos θ - sin θ)/θ²`, continuous at 0.
fn theta_p_factor(t: f64) -> f64 {
    if t.abs() < 1e-4 {
        -t / 3.0 + t.powi(3) / 30.0
    } else {
        (t * t.cos() - t.sin()) / (t * t)
    }
}

/// `sin θ/θ`, continuous at 0.
fn sinc(t: f64) -> f64 {
    if t.abs() < 1e-4 {
        1.0 - t * t / 6.0
    } else {
        t.sin() / t
    }
}

/// `(e^{2iπφ} - 1)/φ`, continuous at 0.
fn phi_factor(phi: f64) -> Complex64 {
    let a = Complex64::new(0.0, 2.0 * PI);
    if phi.abs() < 1e-6 {
        a + a * a * (0.5 * phi)
    } else {
        ((a * phi).exp() - 1.0) / phi
    }
}

/// Spherical conjugate-momentum amplitudes, as published; not normalized.
pub fn momentum_amplitude_alt(state: &HydrogenState, p: f64, theta_p: f64, phi_p: f64) -> Result<Complex64> {
    let i = Complex64::new(0.0, 1.0);
    let c = Complex64::new(-1.0, 1.0) * 2f64.sqrt() / (PI * PI);
    let q = p / state.p0;
    Ok(match state.level()? {
        Level::Ground => c * 0.5 / (i - q).powi(2) * sinc(theta_p) * phi_factor(phi_p),
        Level::TwoP0 => c * 2.0 / (i - 2.0 * q).powi(3) * theta_p_factor(theta_p) * phi_factor(phi_p),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Standard,
    Alt,
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Variant::Standard),
            "alt" => Ok(Variant::Alt),
            other => Err(Error::Parse(format!(
                "unknown variant {other:?} (expected standard or alt)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Measure {
    /// `r² sin θ dr dθ dφ`
    Volume,
    /// `dr dθ dφ`
    Plain,
}

struct SphericalRule {
    radial: Rule,
    theta: Rule,
    phi: Rule,
    measure: Measure,
}

/// `(Z, S)` where `Z = ∫ρ dV` and `S` is the entropy of `ρ/Z`.
fn spherical_entropy(rule: &SphericalRule, density: impl Fn(f64, f64, f64) -> f64 + Sync) -> Result<(f64, f64)> {
    let shell = |(r, wr): (&f64, &f64)| -> (f64, f64) {
        let (mut z, mut h) = (0.0, 0.0);
        for (t, wt) in rule.theta.nodes.iter().zip(&rule.theta.weights) {
            let jac = match rule.measure {
                Measure::Volume => r * r * t.sin(),
                Measure::Plain => 1.0,
            };
            for (f, wf) in rule.phi.nodes.iter().zip(&rule.phi.weights) {
                let d = density(*r, *t, *f);
                let w = wr * wt * wf * jac;
                z += w * d;
                if d > 0.0 {
                    h += w * d * d.ln();
                }
            }
        }
        (z, h)
    };
    #[cfg(feature = "parallel")]
    let parts: Vec<(f64, f64)> = {
        use rayon::prelude::*;
        rule.radial
            .nodes
            .par_iter()
            .zip(rule.radial.weights.par_iter())
            .map(shell)
            .collect()
    };
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<(f64, f64)> = rule.radial.nodes.iter().zip(&rule.radial.weights).map(shell).collect();
    let (z, h) = parts.iter().fold((0.0, 0.0), |(a, b), (z, h)| (a + z, b + h));
    if !(z > 0.0) || !h.is_finite() {
        return Err(Error::QuadratureNotConverged(format!("norm {z}, ∫ρlnρ {h}")));
    }
    Ok((z, -h / z + z.ln()))
}

const U_BREAKS: [f64; 7] = [0.0, 0.2, 0.4, 0.6, 0.8, 0.95, 1.0];

fn volume_rule(scale: f64, n: usize) -> SphericalRule {
    SphericalRule {
        radial: Rule::semi_infinite(scale, &U_BREAKS, n),
        theta: Rule::composite(&[0.0, PI / 2.0, PI], n),
        phi: Rule {
            nodes: vec![0.0],
            weights: vec![2.0 * PI],
        },
        measure: Measure::Volume,
    }
}

fn plain_rule(scale: f64, n: usize) -> SphericalRule {
    let mut phi_breaks: Vec<f64> = (0..=6).map(f64::from).collect();
    phi_breaks.push(2.0 * PI);
    SphericalRule {
        radial: Rule::semi_infinite(scale, &U_BREAKS, n),
        theta: Rule::composite(&[0.0, PI / 2.0, PI], n),
        phi: Rule::composite(&phi_breaks, n),
        measure: Measure::Plain,
    }
}

/// Normalization and entropy of one state in one representation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateEntropy {
    /// Integral of the density before normalization.
    pub norm: f64,
    pub entropy: f64,
    /// Change in the entropy when the quadrature resolution is doubled.
    pub refinement_change: f64,
}

/// Quadrature nodes per panel; the refinement check uses twice this.
pub const DEFAULT_NODES: usize = 24;
pub const CONVERGENCE_TOL: f64 = 1e-3;

fn converged(
    make: impl Fn(usize) -> SphericalRule,
    density: impl Fn(f64, f64, f64) -> f64 + Sync + Copy,
    nodes: usize,
    what: &str,
) -> Result<StateEntropy> {
    let (_, coarse) = spherical_entropy(&make(nodes), density)?;
    let (norm, entropy) = spherical_entropy(&make(2 * nodes), density)?;
    let change = (entropy - coarse).abs();
    if change > CONVERGENCE_TOL {
        return Err(Error::QuadratureNotConverged(format!(
            "{what}: entropy moved by {change:e} between {nodes} and {} nodes per panel",
            2 * nodes
        )));
    }
    Ok(StateEntropy {
        norm,
        entropy,
        refinement_change: change,
    })
}

pub fn position_entropy(state: &HydrogenState, nodes: usize) -> Result<StateEntropy> {
    let scale = f64::from(state.n * state.n) * state.a0;
    converged(
        |n| volume_rule(scale, n),
        |r, t, f| {
            position_amplitude(state, r, t, f)
                .map(|a| a.norm_sqr())
                .unwrap_or(f64::NAN)
        },
        nodes,
        "position",
    )
}

pub fn momentum_entropy(state: &HydrogenState, variant: Variant, nodes: usize) -> Result<StateEntropy> {
    state.level()?;
    let scale = state.p0 / f64::from(state.n);
    match variant {
        Variant::Standard => converged(
            |n| volume_rule(scale, n),
            |p, t, f| {
                momentum_amplitude_standard(state, p, t, f)
                    .map(|a| a.norm_sqr())
                    .unwrap_or(f64::NAN)
            },
            nodes,
            "standard momentum",
        ),
        Variant::Alt => converged(
            |n| plain_rule(scale, n),
            |p, t, f| {
                momentum_amplitude_alt(state, p, t, f)
                    .map(|a| a.norm_sqr())
                    .unwrap_or(f64::NAN)
            },
            nodes,
            "alternative momentum",
        ),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhotonEntropy {
    pub s_q: f64,
    pub s_r: f64,
    /// `s_q + s_r + ΔS` for the electron transition.
    pub bound: f64,
}

/// Uniform emission angle in the plane `θ = π/2`: `ln 2π` for both parts.
pub fn photon_angular_entropy(delta_s: f64) -> PhotonEntropy {
    let s = (2.0 * PI).ln();
    PhotonEntropy {
        s_q: s,
        s_r: s,
        bound: 2.0 * s + delta_s,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HydrogenBudget {
    pub variant: Variant,
    pub s_r_2p0: StateEntropy,
    pub s_r_1s: StateEntropy,
    pub s_p_2p0: StateEntropy,
    pub s_p_1s: StateEntropy,
    /// `S_r(1s) + S_p(1s) - S_r(2p₀) - S_p(2p₀)`.
    pub delta_s: f64,
    pub photon: PhotonEntropy,
    pub measure: String,
    pub transition_energy_ev: f64,
    pub wavelength_nm: f64,
}

/// Entropy budget for `2p₀ → 1s` in units `a0 = p0 = 1`.
pub fn hydrogen_entropy_budget(variant: Variant, nodes: usize) -> Result<HydrogenBudget> {
    let (hi, lo) = (HydrogenState::two_p0(), HydrogenState::ground());
    let s_r_2p0 = position_entropy(&hi, nodes)?;
    let s_r_1s = position_entropy(&lo, nodes)?;
    let s_p_2p0 = momentum_entropy(&hi, variant, nodes)?;
    let s_p_1s = momentum_entropy(&lo, variant, nodes)?;
    let delta_s = s_r_1s.entropy + s_p_1s.entropy - s_r_2p0.entropy - s_p_2p0.entropy;
    let measure = match variant {
        Variant::Standard => "p^2 sin(theta) dp dtheta dphi over R^3",
        Variant::Alt => "dp dtheta dphi on (0,inf) x (0,pi] x (0,2pi], normalized numerically",
    };
    Ok(HydrogenBudget {
        variant,
        s_r_2p0,
        s_r_1s,
        s_p_2p0,
        s_p_1s,
        delta_s,
        photon: photon_angular_entropy(delta_s),
        measure: measure.to_string(),
        transition_energy_ev: 10.2,
        wavelength_nm: 121.567,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn amplitude_examples() {
        let g = HydrogenState::ground();
        let p = HydrogenState::two_p0();
        assert_abs_diff_eq!(
            position_amplitude(&g, 0.0, 0.3, 0.0).unwrap().re,
            1.0 / PI.sqrt(),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            position_amplitude(&p, 2.0, PI / 2.0, 0.0).unwrap().re,
            0.0,
            epsilon = 1e-16
        );
        assert_abs_diff_eq!(
            momentum_amplitude_standard(&g, 0.0, 0.0, 0.0).unwrap().re,
            (32.0 / PI).sqrt() / (4.0 * PI).sqrt(),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            momentum_amplitude_standard(&p, 0.7, PI / 2.0, 0.0).unwrap().re,
            0.0,
            epsilon = 1e-16
        );
        assert!(matches!(
            HydrogenState::new(3, 0, 0),
            Err(Error::UnsupportedState { n: 3, .. })
        ));
    }

    #[test]
    fn removable_limits() {
        let g = HydrogenState::ground();
        let p = HydrogenState::two_p0();
        let at0 = momentum_amplitude_alt(&g, 0.5, 0.0, 0.0).unwrap();
        let near = momentum_amplitude_alt(&g, 0.5, 1e-3, 1e-3).unwrap();
        assert!(at0.norm().is_finite() && (at0 - near).norm() < 1e-2 * at0.norm());
        assert_eq!(momentum_amplitude_alt(&p, 0.5, 0.0, 0.3).unwrap().norm(), 0.0);
        assert!((phi_factor(0.0) - Complex64::new(0.0, 2.0 * PI)).norm() < 1e-15);
        assert!((phi_factor(1e-5) - phi_factor(2e-6)).norm() < 1e-3);
        assert_abs_diff_eq!(theta_p_factor(0.99999e-4), theta_p_factor(1.00001e-4), epsilon = 2e-8);
    }

    #[test]
    fn normalized_by_quadrature() {
        for s in [HydrogenState::ground(), HydrogenState::two_p0()] {
            assert_abs_diff_eq!(position_entropy(&s, 32).unwrap().norm, 1.0, epsilon = 1e-6);
            assert_abs_diff_eq!(
                momentum_entropy(&s, Variant::Standard, 32).unwrap().norm,
                1.0,
                epsilon = 1e-6
            );
        }
    }

    #[test]
    fn ground_state_position_entropy_is_exact() {
        let s = position_entropy(&HydrogenState::ground(), DEFAULT_NODES).unwrap();
        assert_abs_diff_eq!(s.entropy, 3.0 + PI.ln(), epsilon = 5e-4);
    }

    #[test]
    fn bohr_radius_scaling() {
        let a = position_entropy(&HydrogenState::two_p0(), DEFAULT_NODES)
            .unwrap()
            .entropy;
        let b = position_entropy(&HydrogenState::two_p0().with_bohr_radius(2.0), DEFAULT_NODES)
            .unwrap()
            .entropy;
        assert_abs_diff_eq!(b - a, 3.0 * 2f64.ln(), epsilon = 1e-6);
    }

    #[test]
    fn standard_budget() {
        let b = hydrogen_entropy_budget(Variant::Standard, DEFAULT_NODES).unwrap();
        assert_abs_diff_eq!(b.s_r_2p0.entropy - PI.ln(), 6.120, epsilon = 0.01);
        assert_abs_diff_eq!(b.s_r_1s.entropy - PI.ln(), 3.000, epsilon = 0.005);
        assert_abs_diff_eq!(b.s_p_2p0.entropy, 0.042, epsilon = 0.01);
        assert_abs_diff_eq!(b.s_p_1s.entropy, 2.422, epsilon = 0.01);
        assert_abs_diff_eq!(b.delta_s, -0.740, epsilon = 0.02);
        assert_abs_diff_eq!(b.photon.bound, 2.936, epsilon = 0.02);
    }

    #[test]
    fn alt_budget_is_normalized_and_decreasing() {
        let b = hydrogen_entropy_budget(Variant::Alt, DEFAULT_NODES).unwrap();
        assert!(b.delta_s < 0.0);
        assert!(b.photon.bound > 0.0);
        assert!(b.s_p_1s.entropy > b.s_p_2p0.entropy);
    }

    #[test]
    fn photon() {
        let p = photon_angular_entropy(-0.740);
        assert_abs_diff_eq!(p.s_q, 1.83788, epsilon = 1e-5);
        assert_abs_diff_eq!(p.bound, 2.936, epsilon = 1e-3);
    }

    #[test]
    fn variant_parse() {
        assert_eq!("alt".parse::<Variant>().unwrap(), Variant::Alt);
        assert!("x".parse::<Variant>().is_err());
    }
}
