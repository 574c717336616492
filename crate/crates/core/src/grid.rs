//! Uniform periodic grids, sampled amplitudes and Born densities.
//!
//! Every axis covers `[-L/2, L/2)` with `N` nodes, `x_j = -L/2 + j L/N`. The
//! dual grid has spacing `2π/L` and covers `[-πN/L, πN/L)`, `k_m = -πN/L + m 2π/L`.
//! The transform is the unitary `φ(k) = (2π)^(-d/2) ∫ ψ(r) e^(-ik·r) d^d r`
//! evaluated by a Riemann sum, so `Σ|ψ|²Δx^d = Σ|φ|²Δk^d` holds exactly.
//! Multi-dimensional samples are stored flat, row-major in `(x, y, z)` order.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    dim: usize,
    points_per_axis: usize,
    extent_per_axis: f64,
}

impl GridSpec {
    pub fn new(dim: usize, points_per_axis: usize, extent_per_axis: f64) -> Result<Self> {
        if dim != 1 && dim != 3 {
            return Err(Error::InvalidGrid(format!("dim must be 1 or 3, got {dim}")));
        }
        if points_per_axis < 8 {
            return Err(Error::InvalidGrid(format!(
                "need at least 8 points per axis, got {points_per_axis}"
            )));
        }
        if !(extent_per_axis > 0.0 && extent_per_axis.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "extent must be positive, got {extent_per_axis}"
            )));
        }
        Ok(Self {
            dim,
            points_per_axis,
            extent_per_axis,
        })
    }

    pub fn line(points: usize, extent: f64) -> Result<Self> {
        Self::new(1, points, extent)
    }

    pub fn cube(points: usize, extent: f64) -> Result<Self> {
        Self::new(3, points, extent)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points_per_axis(&self) -> usize {
        self.points_per_axis
    }

    pub fn extent(&self) -> f64 {
        self.extent_per_axis
    }

    pub fn len(&self) -> usize {
        self.points_per_axis.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        self.extent_per_axis / self.points_per_axis as f64
    }

    pub fn freq_spacing(&self) -> f64 {
        2.0 * PI / self.extent_per_axis
    }

    /// Node spacing of the given representation.
    pub fn step(&self, repr: Representation) -> f64 {
        match repr {
            Representation::Position => self.spacing(),
            Representation::Frequency => self.freq_spacing(),
        }
    }

    /// Volume element `step^dim`.
    pub fn cell(&self, repr: Representation) -> f64 {
        self.step(repr).powi(self.dim as i32)
    }

    pub fn x(&self, j: usize) -> f64 {
        -0.5 * self.extent_per_axis + j as f64 * self.spacing()
    }

    pub fn k(&self, m: usize) -> f64 {
        -PI * self.points_per_axis as f64 / self.extent_per_axis + m as f64 * self.freq_spacing()
    }

    pub fn coord(&self, repr: Representation, j: usize) -> f64 {
        match repr {
            Representation::Position => self.x(j),
            Representation::Frequency => self.k(j),
        }
    }

    pub fn axis(&self, repr: Representation) -> Vec<f64> {
        (0..self.points_per_axis).map(|j| self.coord(repr, j)).collect()
    }

    /// Per-axis indices of a flat node index.
    pub fn unravel(&self, flat: usize) -> [usize; 3] {
        let n = self.points_per_axis;
        match self.dim {
            1 => [flat, 0, 0],
            _ => [flat / (n * n), (flat / n) % n, flat % n],
        }
    }

    pub fn ravel(&self, idx: [usize; 3]) -> usize {
        let n = self.points_per_axis;
        match self.dim {
            1 => idx[0],
            _ => (idx[0] * n + idx[1]) * n + idx[2],
        }
    }

    /// Coordinates of a flat node; unused trailing axes are zero.
    pub fn point(&self, repr: Representation, flat: usize) -> [f64; 3] {
        let idx = self.unravel(flat);
        let mut p = [0.0; 3];
        for (a, slot) in p.iter_mut().enumerate().take(self.dim) {
            *slot = self.coord(repr, idx[a]);
        }
        p
    }

    /// `x → -x` maps node `j` onto node `(N - j) mod N` only for even `N`.
    pub fn is_symmetric(&self) -> bool {
        self.points_per_axis.is_multiple_of(2)
    }

    /// Flat index of the node at the reflected coordinate `-r`.
    pub fn reflect_index(&self, flat: usize) -> usize {
        let n = self.points_per_axis;
        let idx = self.unravel(flat);
        let mut out = [0; 3];
        for a in 0..self.dim {
            out[a] = (n - idx[a]) % n;
        }
        self.ravel(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Representation {
    Position,
    Frequency,
}

impl Representation {
    pub fn dual(self) -> Self {
        match self {
            Self::Position => Self::Frequency,
            Self::Frequency => Self::Position,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Position => "position",
            Self::Frequency => "frequency",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampledAmplitude {
    pub grid: GridSpec,
    pub values: Vec<Complex64>,
    pub representation: Representation,
    pub time: f64,
}

impl SampledAmplitude {
    pub fn new(grid: GridSpec, values: Vec<Complex64>, representation: Representation) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch(format!(
                "grid has {} nodes, got {} samples",
                grid.len(),
                values.len()
            )));
        }
        Ok(Self {
            grid,
            values,
            representation,
            time: 0.0,
        })
    }

    /// Samples `f` at every node of the given representation.
    pub fn from_fn(grid: GridSpec, representation: Representation, f: impl Fn([f64; 3]) -> Complex64) -> Self {
        let values = (0..grid.len()).map(|i| f(grid.point(representation, i))).collect();
        Self {
            grid,
            values,
            representation,
            time: 0.0,
        }
    }

    pub fn with_time(mut self, time: f64) -> Self {
        self.time = time;
        self
    }

    pub fn norm_sq(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.cell(self.representation)
    }

    /// `Σ conj(self)·other · cell`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.grid != other.grid || self.representation != other.representation {
            return Err(Error::DimensionMismatch(
                "inner product needs matching grids and representations".into(),
            ));
        }
        let s: Complex64 = self.values.iter().zip(&other.values).map(|(a, b)| a.conj() * b).sum();
        Ok(s * self.grid.cell(self.representation))
    }

    fn check_finite(&self) -> Result<()> {
        match self.values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            Some(i) => Err(Error::NonFinite(i)),
            None => Ok(()),
        }
    }
}

pub fn normalize(a: &SampledAmplitude) -> Result<SampledAmplitude> {
    a.check_finite()?;
    let n2 = a.norm_sq();
    if !(n2 > 0.0) {
        return Err(Error::DegenerateAmplitude);
    }
    let s = 1.0 / n2.sqrt();
    let mut out = a.clone();
    out.values.iter_mut().for_each(|v| *v *= s);
    Ok(out)
}

/// Position → frequency (or frequency → position for frequency input).
pub fn fourier_transform(a: &SampledAmplitude) -> Result<SampledAmplitude> {
    a.check_finite()?;
    let mut values = a.values.clone();
    transform_in_place(&a.grid, &mut values, a.representation);
    Ok(SampledAmplitude {
        grid: a.grid,
        values,
        representation: a.representation.dual(),
        time: a.time,
    })
}

/// Frequency → position; identical to [`fourier_transform`] on frequency input.
pub fn inverse_fourier_transform(a: &SampledAmplitude) -> Result<SampledAmplitude> {
    if a.representation != Representation::Frequency {
        return Err(Error::WrongRepresentation { expected: "frequency" });
    }
    fourier_transform(a)
}

pub(crate) fn transform_in_place(grid: &GridSpec, values: &mut [Complex64], from: Representation) {
    let n = grid.points_per_axis();
    let dx = grid.spacing();
    let dk = grid.freq_spacing();
    let x0 = grid.x(0);
    let k0 = grid.k(0);
    // forward:  φ_m = Δx/√2π · e^{-i k_m x0} · FFT[ψ_j e^{-i k0 j Δx}]_m
    // inverse:  ψ_j = Δk/√2π · e^{+i k0 x_j} · IFFT[φ_m e^{+i m Δk x0}]_j
    let (pre, post, scale, direction): (Vec<Complex64>, Vec<Complex64>, f64, FftDirection) = match from {
        Representation::Position => (
            (0..n)
                .map(|j| Complex64::from_polar(1.0, -k0 * j as f64 * dx))
                .collect(),
            (0..n).map(|m| Complex64::from_polar(1.0, -grid.k(m) * x0)).collect(),
            dx / (2.0 * PI).sqrt(),
            FftDirection::Forward,
        ),
        Representation::Frequency => (
            (0..n).map(|m| Complex64::from_polar(1.0, m as f64 * dk * x0)).collect(),
            (0..n).map(|j| Complex64::from_polar(1.0, k0 * grid.x(j))).collect(),
            dk / (2.0 * PI).sqrt(),
            FftDirection::Inverse,
        ),
    };
    let fft = FftPlanner::new().plan_fft(n, direction);
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
    let dim = grid.dim();
    for axis in 0..dim {
        let stride = n.pow((dim - 1 - axis) as u32);
        let lines = values.len() / n;
        for l in 0..lines {
            // base index of line l along `axis`
            let outer = l / stride;
            let inner = l % stride;
            let base = outer * stride * n + inner;
            for (j, slot) in line.iter_mut().enumerate() {
                *slot = values[base + j * stride] * pre[j];
            }
            fft.process_with_scratch(&mut line, &mut scratch);
            for (m, v) in line.iter().enumerate() {
                values[base + m * stride] = v * post[m] * scale;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Density {
    pub grid: GridSpec,
    pub values: Vec<f64>,
    pub representation: Representation,
}

impl Density {
    pub fn new(grid: GridSpec, values: Vec<f64>, representation: Representation) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch(format!(
                "grid has {} nodes, got {} samples",
                grid.len(),
                values.len()
            )));
        }
        Ok(Self {
            grid,
            values,
            representation,
        })
    }

    pub fn cell(&self) -> f64 {
        self.grid.cell(self.representation)
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.cell()
    }

    /// First moment along `axis`.
    pub fn mean(&self, axis: usize) -> f64 {
        (0..self.values.len())
            .map(|i| self.values[i] * self.grid.point(self.representation, i)[axis])
            .sum::<f64>()
            * self.cell()
    }

    pub fn variance(&self, axis: usize) -> f64 {
        let mu = self.mean(axis);
        (0..self.values.len())
            .map(|i| {
                let d = self.grid.point(self.representation, i)[axis] - mu;
                self.values[i] * d * d
            })
            .sum::<f64>()
            * self.cell()
    }
}

pub fn born_density(a: &SampledAmplitude) -> Density {
    Density {
        grid: a.grid,
        values: a.values.iter().map(|v| v.norm_sqr()).collect(),
        representation: a.representation,
    }
}

/// Joint density of two particles on the product of two 1D grids,
/// row-major with the first particle's coordinate as the slow index.
#[derive(Debug, Clone, PartialEq)]
pub struct Density2D {
    pub grid: GridSpec,
    pub values: Vec<f64>,
    pub representation: Representation,
}

impl Density2D {
    pub fn new(grid: GridSpec, values: Vec<f64>, representation: Representation) -> Result<Self> {
        if grid.dim() != 1 {
            return Err(Error::InvalidGrid("two-particle grids are built from 1D axes".into()));
        }
        let n = grid.points_per_axis();
        if values.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "expected {} joint samples, got {}",
                n * n,
                values.len()
            )));
        }
        Ok(Self {
            grid,
            values,
            representation,
        })
    }

    pub fn cell(&self) -> f64 {
        self.grid.step(self.representation).powi(2)
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.cell()
    }

    pub fn at(&self, i1: usize, i2: usize) -> f64 {
        self.values[i1 * self.grid.points_per_axis() + i2]
    }

    /// Product density of two independent particles.
    pub fn product(a: &Density, b: &Density) -> Result<Self> {
        if a.grid != b.grid || a.representation != b.representation {
            return Err(Error::DimensionMismatch(
                "product of densities on different grids".into(),
            ));
        }
        let values = a
            .values
            .iter()
            .flat_map(|&u| b.values.iter().map(move |&v| u * v))
            .collect();
        Self::new(a.grid, values, a.representation)
    }
}
