//! Dirac matrices in the standard representation and the discrete C, P, T
//! and CPT maps on sampled four-spinor fields.

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;

use crate::entropy::{entropy_sum, EntropyValue};
use crate::error::{Error, Result};
use crate::grid::{transform_in_place, GridSpec, Representation};

pub type Mat4 = Matrix4<Complex64>;
pub type Spinor = Vector4<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, PartialEq)]
pub struct GammaSet {
    pub gamma: [Mat4; 4],
    pub gamma5: Mat4,
    pub c: Mat4,
    pub t: Mat4,
    pub p: Mat4,
}

fn block(a: [[Complex64; 2]; 2], b: [[Complex64; 2]; 2], c: [[Complex64; 2]; 2], d: [[Complex64; 2]; 2]) -> Mat4 {
    let mut m = Mat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            m[(i, j)] = a[i][j];
            m[(i, j + 2)] = b[i][j];
            m[(i + 2, j)] = c[i][j];
            m[(i + 2, j + 2)] = d[i][j];
        }
    }
    m
}

fn neg(m: [[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    [[-m[0][0], -m[0][1]], [-m[1][0], -m[1][1]]]
}

impl GammaSet {
    /// `γ⁰ = diag(I, -I)`, `γⁱ = [[0, σⁱ], [-σⁱ, 0]]`.
    pub fn standard() -> Self {
        let id = [[ONE, ZERO], [ZERO, ONE]];
        let zero = [[ZERO; 2]; 2];
        let sigma = [
            [[ZERO, ONE], [ONE, ZERO]],
            [[ZERO, -I], [I, ZERO]],
            [[ONE, ZERO], [ZERO, -ONE]],
        ];
        let g0 = block(id, zero, zero, neg(id));
        let gi = sigma.map(|s| block(zero, s, neg(s), zero));
        let gamma = [g0, gi[0], gi[1], gi[2]];
        let gamma5 = gamma[0] * gamma[1] * gamma[2] * gamma[3] * I;
        Self {
            c: gamma[2] * gamma[0] * I,
            t: gamma[1] * gamma[3] * I,
            p: g0,
            gamma,
            gamma5,
        }
    }

    /// Metric `η = diag(+1, -1, -1, -1)`.
    pub fn metric(mu: usize) -> f64 {
        if mu == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Free Dirac Hamiltonian `α·k + βm` with `α = γ⁰γ`, `β = γ⁰`.
    pub fn hamiltonian(&self, k: [f64; 3], mass: f64) -> Mat4 {
        let g0 = self.gamma[0];
        let mut h = g0 * Complex64::new(mass, 0.0);
        for (i, &ki) in k.iter().enumerate() {
            h += g0 * self.gamma[i + 1] * Complex64::new(ki, 0.0);
        }
        h
    }
}

/// Largest entry modulus of `a - b`.
pub fn max_abs_diff(a: &Mat4, b: &Mat4) -> f64 {
    (a - b).iter().fold(0.0, |m, z| m.max(z.norm()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpinorField {
    pub grid: GridSpec,
    pub values: Vec<Spinor>,
    pub representation: Representation,
    pub time: f64,
}

impl SpinorField {
    pub fn new(grid: GridSpec, values: Vec<Spinor>, representation: Representation) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch(format!(
                "grid has {} nodes but {} spinors were given",
                grid.len(),
                values.len()
            )));
        }
        for (i, s) in values.iter().enumerate() {
            if s.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::NonFinite(i));
            }
        }
        Ok(Self {
            grid,
            values,
            representation,
            time: 0.0,
        })
    }

    /// Gaussian envelope `exp(-|r - r0|²/(2σ²) + i k0·r)` times a fixed spinor.
    pub fn gaussian(grid: GridSpec, center: [f64; 3], sigma2: f64, k0: [f64; 3], spinor: Spinor) -> Self {
        let values = (0..grid.len())
            .map(|flat| {
                let p = grid.point(Representation::Position, flat);
                let (mut q, mut phase) = (0.0, 0.0);
                for a in 0..grid.dim() {
                    q += (p[a] - center[a]).powi(2);
                    phase += k0[a] * p[a];
                }
                spinor * Complex64::from_polar((-0.5 * q / sigma2).exp(), phase)
            })
            .collect();
        Self {
            grid,
            values,
            representation: Representation::Position,
            time: 0.0,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.grid != other.grid || self.representation != other.representation {
            return Err(Error::DimensionMismatch("spinor fields live on different grids".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(Self { values, ..self.clone() })
    }

    pub fn norm_sq(&self) -> f64 {
        self.values.iter().map(|s| s.norm_squared()).sum::<f64>() * self.grid.cell(self.representation)
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm_sq();
        if !(n > 0.0) {
            return Err(Error::DegenerateAmplitude);
        }
        let s = Complex64::new(n.sqrt().recip(), 0.0);
        Ok(Self {
            values: self.values.iter().map(|v| v * s).collect(),
            ..self.clone()
        })
    }

    /// `⟨self, other⟩ = Σ Ψ†Φ · cell`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.grid != other.grid || self.representation != other.representation {
            return Err(Error::DimensionMismatch("spinor fields live on different grids".into()));
        }
        let s: Complex64 = self.values.iter().zip(&other.values).map(|(a, b)| a.dotc(b)).sum();
        Ok(s * self.grid.cell(self.representation))
    }

    /// `Ψ†Ψ` at each node.
    pub fn density(&self) -> Vec<f64> {
        self.values.iter().map(|s| s.norm_squared()).collect()
    }

    /// Componentwise unitary Fourier transform into the dual representation.
    pub fn transformed(&self) -> Self {
        let mut out = self.clone();
        let mut comp = vec![ZERO; self.grid.len()];
        for c in 0..4 {
            for (slot, s) in comp.iter_mut().zip(&self.values) {
                *slot = s[c];
            }
            transform_in_place(&self.grid, &mut comp, self.representation);
            for (s, v) in out.values.iter_mut().zip(&comp) {
                s[c] = *v;
            }
        }
        out.representation = self.representation.dual();
        out
    }

    fn map(&self, f: impl Fn(&Spinor) -> Spinor) -> Self {
        Self {
            values: self.values.iter().map(f).collect(),
            ..self.clone()
        }
    }

    fn reflected(&self) -> Result<Self> {
        if !self.grid.is_symmetric() {
            return Err(Error::AsymmetricGrid);
        }
        Ok(Self {
            values: (0..self.grid.len())
                .map(|i| self.values[self.grid.reflect_index(i)])
                .collect(),
            ..self.clone()
        })
    }
}

/// `Ψ*` componentwise.
pub fn conjugate(f: &SpinorField) -> SpinorField {
    f.map(|s| s.map(|z| z.conj()))
}

/// `γ⁰ Ψ(-r)`.
pub fn apply_parity(f: &SpinorField) -> Result<SpinorField> {
    let g = GammaSet::standard();
    Ok(f.reflected()?.map(|s| g.p * s))
}

/// `iγ² Ψ*`, which equals `C Ψ̄ᵀ` because `γ⁰` is real symmetric here.
pub fn apply_charge_conjugation(f: &SpinorField) -> SpinorField {
    let g = GammaSet::standard();
    let m = g.gamma[2] * I;
    f.map(|s| m * s.map(|z| z.conj()))
}

/// `T Ψ*` with the time stamp negated.
pub fn apply_time_reversal(f: &SpinorField) -> SpinorField {
    let g = GammaSet::standard();
    let mut out = f.map(|s| g.t * s.map(|z| z.conj()));
    out.time = -f.time;
    out
}

/// `γ⁵ Ψ*(-r)`; an exact involution since `γ⁵` is real.
pub fn apply_cpt(f: &SpinorField) -> Result<SpinorField> {
    let g = GammaSet::standard();
    Ok(f.reflected()?.map(|s| g.gamma5 * s.map(|z| z.conj())))
}

/// Position and frequency entropies of `Ψ†Ψ` and `φ†φ`.
pub fn spinor_entropy(f: &SpinorField) -> Result<EntropyValue> {
    let dual = f.transformed();
    let (pos, freq) = match f.representation {
        Representation::Position => (f, &dual),
        Representation::Frequency => (&dual, f),
    };
    Ok(EntropyValue::new(
        entropy_sum(&pos.density(), pos.grid.cell(Representation::Position))?,
        entropy_sum(&freq.density(), freq.grid.cell(Representation::Frequency))?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-13;

    fn sample_field() -> SpinorField {
        let grid = GridSpec::line(256, 40.0).unwrap();
        let s1 = Spinor::new(ONE, I * 0.5, Complex64::new(0.2, -0.1), ZERO);
        let s2 = Spinor::new(ZERO, Complex64::new(0.3, 0.3), ONE, -I);
        let a = SpinorField::gaussian(grid, [-3.0, 0.0, 0.0], 2.0, [1.5, 0.0, 0.0], s1);
        let b = SpinorField::gaussian(grid, [4.0, 0.0, 0.0], 1.0, [-0.7, 0.0, 0.0], s2);
        a.add(&b).unwrap().normalized().unwrap()
    }

    #[test]
    fn clifford_algebra() {
        let g = GammaSet::standard();
        for mu in 0..4 {
            for nu in 0..4 {
                let ac = g.gamma[mu] * g.gamma[nu] + g.gamma[nu] * g.gamma[mu];
                let want = if mu == nu {
                    Mat4::identity() * Complex64::new(2.0 * GammaSet::metric(mu), 0.0)
                } else {
                    Mat4::zeros()
                };
                assert!(max_abs_diff(&ac, &want) < TOL);
            }
        }
    }

    #[test]
    fn gamma5_is_real_and_anticommutes() {
        let g = GammaSet::standard();
        assert!(g.gamma5.iter().all(|z| z.im == 0.0));
        assert!(max_abs_diff(&(g.gamma5 * g.gamma5), &Mat4::identity()) < TOL);
        for mu in 0..4 {
            assert!(max_abs_diff(&(g.gamma5 * g.gamma[mu]), &(-g.gamma[mu] * g.gamma5)) < TOL);
        }
    }

    #[test]
    fn charge_conjugation_matrix() {
        let g = GammaSet::standard();
        let cinv = g.c.try_inverse().unwrap();
        for mu in 0..4 {
            assert!(max_abs_diff(&(g.c * g.gamma[mu] * cinv), &(-g.gamma[mu].transpose())) < TOL);
        }
    }

    #[test]
    fn time_reversal_matrix() {
        let g = GammaSet::standard();
        let tinv = g.t.try_inverse().unwrap();
        assert!(max_abs_diff(&tinv, &g.t) < TOL);
        assert!(max_abs_diff(&(g.t * g.t.conjugate()), &-Mat4::identity()) < TOL);
        let conj = |m: &Mat4| m.map(|z| z.conj());
        assert!(max_abs_diff(&(g.t * conj(&g.gamma[0]) * tinv), &g.gamma[0]) < TOL);
        for i in 1..4 {
            assert!(max_abs_diff(&(g.t * conj(&g.gamma[i]) * tinv), &-g.gamma[i]) < TOL);
        }
        let h = g.hamiltonian([0.3, -1.1, 0.7], 0.9);
        let hm = g.hamiltonian([-0.3, 1.1, -0.7], 0.9);
        assert!(max_abs_diff(&(g.t * conj(&hm) * tinv), &h) < TOL);
    }

    #[test]
    fn parity_reflects_density() {
        let f = sample_field();
        let p = apply_parity(&f).unwrap();
        let (d, dp) = (f.density(), p.density());
        for i in 0..d.len() {
            assert_eq!(dp[i], d[f.grid.reflect_index(i)]);
        }
        let pp = apply_parity(&p).unwrap();
        assert_eq!(pp.values, f.values);
    }

    #[test]
    fn parity_in_frequency_space() {
        let f = sample_field();
        let fp = apply_parity(&f).unwrap().transformed();
        let phi = f.transformed();
        let g = GammaSet::standard();
        for m in 0..phi.values.len() {
            let want = g.p * phi.values[f.grid.reflect_index(m)];
            assert!((fp.values[m] - want).norm() < 1e-10);
        }
    }

    #[test]
    fn charge_conjugation_preserves_density() {
        let f = sample_field();
        let c = apply_charge_conjugation(&f);
        for (a, b) in f.density().iter().zip(c.density()) {
            assert!((a - b).abs() < 1e-12);
        }
        let cc = apply_charge_conjugation(&c);
        assert!((f.inner(&cc).unwrap().norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn kramers() {
        let f = sample_field();
        let tt = apply_time_reversal(&apply_time_reversal(&f));
        let max = f
            .values
            .iter()
            .zip(&tt.values)
            .fold(0.0f64, |m, (a, b)| m.max((a + b).norm()));
        assert!(max < 1e-15);
        assert_eq!(apply_time_reversal(&f.clone()).time, -f.time);
    }

    #[test]
    fn cpt_involution_and_density() {
        let f = sample_field();
        let c = apply_cpt(&f).unwrap();
        let (d, dc) = (f.density(), c.density());
        for i in 0..d.len() {
            assert!((dc[i] - d[f.grid.reflect_index(i)]).abs() < 1e-15);
        }
        let cc = apply_cpt(&c).unwrap();
        let max = f
            .values
            .iter()
            .zip(&cc.values)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).norm()));
        assert!(max <= 1e-12);
    }

    #[test]
    fn asymmetric_grid_rejected() {
        let grid = GridSpec::line(255, 40.0).unwrap();
        let f = SpinorField::gaussian(grid, [0.0; 3], 1.0, [0.0; 3], Spinor::new(ONE, ZERO, ZERO, ZERO));
        assert_eq!(apply_parity(&f), Err(Error::AsymmetricGrid));
        assert_eq!(apply_cpt(&f), Err(Error::AsymmetricGrid));
    }

    #[test]
    fn entropies_unchanged() {
        let f = sample_field();
        let s = spinor_entropy(&f).unwrap();
        for g in [
            conjugate(&f),
            apply_parity(&f).unwrap(),
            apply_charge_conjugation(&f),
            apply_time_reversal(&f),
            apply_cpt(&f).unwrap(),
        ] {
            let e = spinor_entropy(&g).unwrap();
            assert!((e.s_r - s.s_r).abs() < 1e-10 && (e.s_k - s.s_k).abs() < 1e-10);
        }
    }
}
