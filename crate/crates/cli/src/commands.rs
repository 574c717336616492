use std::f64::consts::PI;
use std::fmt;
use std::fs::{self, File};
use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, ensure, Context as _};
use clap::{Args, Subcommand, ValueEnum};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use qentropy::dispersion::{coherent_entropy_closed_form, evolve_exact, make_coherent, CoherentState, DispersionModel};
use qentropy::entropy::{min_entropy_bound, total_entropy, EntropyValue};
use qentropy::grid::{born_density, fourier_transform, GridSpec, SampledAmplitude};
use qentropy::hydrogen::{hydrogen_entropy_budget, Variant, CONVERGENCE_TOL, DEFAULT_NODES};
use qentropy::io::{self, fmt_g, SCHEMA_VERSION};
use qentropy::qcurve::{classify, default_epsilon, detect_critical_time};
use qentropy::symmetry::{
    apply_charge_conjugation, apply_cpt, apply_parity, apply_time_reversal, conjugate, max_abs_diff, spinor_entropy,
    GammaSet, Mat4, Spinor, SpinorField,
};
use qentropy::twolevel::{
    coefficients, eigenvalues, n_level_probabilities, oscillation_densities, OscillationBasis, TwoLevelSystem,
};
use qentropy::twoparticle::{collision_row, collision_rows, CollisionSetup, Statistics};

pub struct Context {
    pub guard: bool,
}

/// Grid refinement moved an entropy by more than the tolerance.
#[derive(Debug)]
pub struct GuardTrip {
    pub diagnostic: Value,
}

impl fmt::Display for GuardTrip {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "convergence guard tripped: {}",
            self.diagnostic["what"].as_str().unwrap_or("entropy")
        )
    }
}

impl std::error::Error for GuardTrip {}

pub enum Report {
    Csv { header: Vec<String>, rows: Vec<Vec<f64>> },
    Json(Value),
}

impl Report {
    fn csv(header: &[&str], rows: Vec<Vec<f64>>) -> Self {
        Report::Csv {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows,
        }
    }

    fn json(mut v: Value) -> Self {
        if let Value::Object(m) = &mut v {
            m.insert("schema_version".into(), Value::from(SCHEMA_VERSION));
        }
        round_json(&mut v);
        Report::Json(v)
    }

    pub fn write(&self, out: &mut dyn Write) -> anyhow::Result<()> {
        match self {
            Report::Csv { header, rows } => {
                let h: Vec<&str> = header.iter().map(String::as_str).collect();
                io::write_table(out, &h, rows.iter().cloned())?;
            }
            Report::Json(v) => {
                serde_json::to_writer_pretty(&mut *out, v)?;
                writeln!(out)?;
            }
        }
        Ok(())
    }
}

/// Rounds every float to 12 significant digits so JSON output is as stable as the CSV.
fn round_json(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            if let Some(r) = fmt_g(x).parse::<f64>().ok().and_then(serde_json::Number::from_f64) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_json),
        Value::Object(m) => m.values_mut().for_each(round_json),
        _ => {}
    }
}

fn check_guard(ctx: &Context, what: &str, points: usize, coarse: f64, fine: f64) -> anyhow::Result<()> {
    let change = (fine - coarse).abs();
    if change <= CONVERGENCE_TOL {
        log::info!("{what}: N={points} vs 2N change {change:e}");
        return Ok(());
    }
    let diagnostic = json!({
        "schema_version": SCHEMA_VERSION,
        "guard": "convergence",
        "what": what,
        "points": points,
        "entropy_n": coarse,
        "entropy_2n": fine,
        "change": change,
        "tolerance": CONVERGENCE_TOL,
    });
    trip(ctx, diagnostic)
}

fn trip(ctx: &Context, mut diagnostic: Value) -> anyhow::Result<()> {
    round_json(&mut diagnostic);
    if ctx.guard {
        Err(GuardTrip { diagnostic }.into())
    } else {
        log::warn!("guard disabled, continuing: {diagnostic}");
        Ok(())
    }
}

/// A sampled state whose entropy sits below `dim(1 + ln π)` is under-resolved.
fn check_bound(ctx: &Context, what: &str, dim: usize, s: f64) -> anyhow::Result<()> {
    let bound = min_entropy_bound(dim);
    if s >= bound - BOUND_SLACK {
        return Ok(());
    }
    trip(
        ctx,
        json!({
            "schema_version": SCHEMA_VERSION,
            "guard": "entropy_bound",
            "what": what,
            "entropy": s,
            "bound": bound,
            "tolerance": BOUND_SLACK,
        }),
    )
}

const BOUND_SLACK: f64 = 5e-3;

fn positive(name: &str, v: f64) -> anyhow::Result<()> {
    ensure!(v.is_finite() && v > 0.0, "--{name} must be positive, got {v}");
    Ok(())
}

fn finite(name: &str, v: f64) -> anyhow::Result<()> {
    ensure!(v.is_finite(), "--{name} must be finite, got {v}");
    Ok(())
}

fn grid_points(n: usize) -> anyhow::Result<()> {
    ensure!(n >= 8, "grid needs at least 8 points, got {n}");
    Ok(())
}

fn time_grid(tmax: f64, steps: usize) -> anyhow::Result<Vec<f64>> {
    ensure!(
        tmax.is_finite() && tmax >= 0.0,
        "--tmax must be non-negative, got {tmax}"
    );
    ensure!(steps >= 1, "--steps must be at least 1");
    Ok((0..=steps).map(|i| tmax * i as f64 / steps as f64).collect())
}

fn entropy_of(a: &SampledAmplitude) -> anyhow::Result<EntropyValue> {
    let phi = fourier_transform(a)?;
    Ok(total_entropy(&born_density(a), &born_density(&phi))?)
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Model {
    Schroedinger,
    Dirac,
}

impl Model {
    fn build(self, mass: f64) -> DispersionModel {
        match self {
            Model::Schroedinger => DispersionModel::schroedinger(mass),
            Model::Dirac => DispersionModel::dirac(mass),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Entropy of an amplitude CSV or of a coherent state.
    Entropy(EntropyArgs),
    /// Entropy of a freely evolving coherent state next to the closed form.
    CoherentEvolve(CoherentArgs),
    /// Two-level oscillation in the harmonic-oscillator basis.
    TwoState(TwoStateArgs),
    /// Transition probabilities of an N-level system.
    NState(NStateArgs),
    /// Entropy of two colliding identical particles.
    Collide(CollideArgs),
    /// Entropy budget of the hydrogen 2p0 -> 1s transition.
    Hydrogen(HydrogenArgs),
    /// QCurve class and critical time of an entropy series CSV.
    Classify(ClassifyArgs),
    /// Check gamma-matrix identities and C, P, T entropy invariance.
    VerifySymmetries(SymmetryArgs),
    /// Minimum entropy d(1 + ln pi).
    MinBound(MinBoundArgs),
}

impl Command {
    pub fn run(&self, ctx: &Context) -> anyhow::Result<Report> {
        match self {
            Command::Entropy(a) => a.run(ctx),
            Command::CoherentEvolve(a) => a.run(ctx),
            Command::TwoState(a) => a.run(ctx),
            Command::NState(a) => a.run(),
            Command::Collide(a) => a.run(ctx),
            Command::Hydrogen(a) => a.run(),
            Command::Classify(a) => a.run(),
            Command::VerifySymmetries(a) => a.run(),
            Command::MinBound(a) => a.run(),
        }
    }
}

#[derive(Debug, Args)]
pub struct EntropyArgs {
    /// Position amplitude CSV with columns index,x,re,im.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    dim: usize,
    #[arg(long, default_value_t = 1.0)]
    sigma2: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    x0: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    k0: f64,
    /// Points per axis [default: 4096 in 1D, 64 otherwise].
    #[arg(long)]
    points: Option<usize>,
    /// Box length per axis [default: 80 in 1D, 16 otherwise].
    #[arg(long)]
    extent: Option<f64>,
    /// Also write the sampled amplitude CSV here, with a `.json` metadata sidecar.
    #[arg(long, value_name = "FILE")]
    dump_amplitude: Option<PathBuf>,
}

impl EntropyArgs {
    fn coherent(&self, points: usize, extent: f64) -> anyhow::Result<SampledAmplitude> {
        let grid = GridSpec::new(self.dim, points, extent)?;
        let cs = match self.dim {
            1 => CoherentState::line(self.x0, self.k0, self.sigma2),
            d => CoherentState::new(
                vec![self.x0; d],
                vec![self.k0; d],
                DMatrix::identity(d, d) * self.sigma2,
            )?,
        };
        Ok(make_coherent(grid, &cs)?)
    }

    fn run(&self, ctx: &Context) -> anyhow::Result<Report> {
        ensure!((1..=3).contains(&self.dim), "--dim must be 1, 2 or 3, got {}", self.dim);
        let a = match &self.input {
            Some(path) => {
                let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
                log::info!("convergence guard skipped for sampled input");
                io::read_amplitude(f)?
            }
            None => {
                positive("sigma2", self.sigma2)?;
                finite("x0", self.x0)?;
                finite("k0", self.k0)?;
                let points = self.points.unwrap_or(if self.dim == 1 { 4096 } else { 64 });
                let extent = self.extent.unwrap_or(if self.dim == 1 { 80.0 } else { 16.0 });
                grid_points(points)?;
                positive("extent", extent)?;
                let a = self.coherent(points, extent)?;
                let fine = entropy_of(&self.coherent(2 * points, extent)?)?.total;
                let coarse = entropy_of(&a)?.total;
                check_bound(ctx, "coherent entropy", self.dim, coarse)?;
                check_guard(ctx, "coherent entropy", points, coarse, fine)?;
                a
            }
        };
        if let Some(path) = &self.dump_amplitude {
            ensure!(a.grid.dim() == 1, "--dump-amplitude supports 1D grids only");
            let f = File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
            io::write_amplitude(f, &a)?;
            let mut meta = io::amplitude_metadata(&a);
            round_json(&mut meta);
            let side = path.with_extension("json");
            fs::write(&side, serde_json::to_string_pretty(&meta)? + "\n")
                .with_context(|| format!("cannot write {}", side.display()))?;
        }
        let e = entropy_of(&a)?;
        Ok(Report::csv(
            &["t", "s_r", "s_k", "s_total"],
            vec![vec![a.time, e.s_r, e.s_k, e.total]],
        ))
    }
}

#[derive(Debug, Args)]
pub struct CoherentArgs {
    #[arg(long, default_value_t = 1.0)]
    sigma2: f64,
    #[arg(long, value_enum, default_value_t = Model::Schroedinger)]
    model: Model,
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    k0: f64,
    #[arg(long, default_value_t = 10.0)]
    tmax: f64,
    #[arg(long, default_value_t = 20)]
    steps: usize,
    #[arg(long, default_value_t = 4096)]
    points: usize,
    #[arg(long, default_value_t = 80.0)]
    extent: f64,
}

impl CoherentArgs {
    fn run(&self, ctx: &Context) -> anyhow::Result<Report> {
        positive("sigma2", self.sigma2)?;
        positive("mass", self.mass)?;
        positive("extent", self.extent)?;
        finite("k0", self.k0)?;
        grid_points(self.points)?;
        let times = time_grid(self.tmax, self.steps)?;
        let model = self.model.build(self.mass);
        let cs = CoherentState::line(0.0, self.k0, self.sigma2);
        let a0 = make_coherent(GridSpec::line(self.points, self.extent)?, &cs)?;
        let rows = times
            .iter()
            .map(|&t| {
                let e = entropy_of(&evolve_exact(&a0, &model, t)?)?;
                Ok(vec![
                    t,
                    e.s_r,
                    e.s_k,
                    e.total,
                    coherent_entropy_closed_form(&cs, &model, t)?,
                ])
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        let fine = make_coherent(GridSpec::line(2 * self.points, self.extent)?, &cs)?;
        let fine = entropy_of(&evolve_exact(&fine, &model, self.tmax)?)?.total;
        for r in &rows {
            check_bound(ctx, &format!("coherent entropy at t={}", fmt_g(r[0])), 1, r[3])?;
        }
        let coarse = rows.last().expect("at least one row")[3];
        check_guard(ctx, "coherent entropy at tmax", self.points, coarse, fine)?;
        Ok(Report::csv(&["t", "s_r", "s_k", "s_total", "s_closed_form"], rows))
    }
}

#[derive(Debug, Args)]
pub struct TwoStateArgs {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    omega1: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    omega2: f64,
    /// Diagonal interaction on level 1.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    w11: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    w22: f64,
    /// Off-diagonal coupling.
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    w12: f64,
    /// End time [default: one density period 2 pi / |lambda2 - lambda1|].
    #[arg(long)]
    tmax: Option<f64>,
    #[arg(long, default_value_t = 80)]
    steps: usize,
    #[arg(long, default_value_t = 512)]
    points: usize,
    #[arg(long, default_value_t = 30.0)]
    extent: f64,
}

impl TwoStateArgs {
    fn run(&self, ctx: &Context) -> anyhow::Result<Report> {
        for (n, v) in [
            ("omega1", self.omega1),
            ("omega2", self.omega2),
            ("w11", self.w11),
            ("w22", self.w22),
            ("w12", self.w12),
        ] {
            finite(n, v)?;
        }
        positive("extent", self.extent)?;
        grid_points(self.points)?;
        let sys = TwoLevelSystem::new(self.omega1, self.omega2, self.w11, self.w22, self.w12);
        let tmax = match self.tmax {
            Some(t) => t,
            None => {
                let (l1, l2) = eigenvalues(&sys);
                ensure!(l1 != l2, "degenerate levels have no oscillation period; pass --tmax");
                2.0 * PI / (l2 - l1).abs()
            }
        };
        let times = time_grid(tmax, self.steps)?;
        let basis = OscillationBasis::harmonic_oscillator(GridSpec::line(self.points, self.extent)?)?;
        let fine = OscillationBasis::harmonic_oscillator(GridSpec::line(2 * self.points, self.extent)?)?;
        let entropy = |b: &OscillationBasis, t: f64| -> anyhow::Result<f64> {
            let (r, k) = oscillation_densities(b, &sys, t);
            Ok(total_entropy(&r, &k)?.total)
        };
        let mut rows = Vec::with_capacity(times.len());
        for &t in &times {
            let (a1, a2) = coefficients(&sys, t);
            rows.push(vec![t, a1.norm_sqr(), a2.norm_sqr(), entropy(&basis, t)?]);
        }
        for r in &rows {
            check_bound(ctx, &format!("two-level entropy at t={}", fmt_g(r[0])), 1, r[3])?;
        }
        let probe = 0.25 * tmax;
        check_guard(
            ctx,
            "two-level entropy",
            self.points,
            entropy(&basis, probe)?,
            entropy(&fine, probe)?,
        )?;
        Ok(Report::csv(&["t", "p1", "p2", "s_total"], rows))
    }
}

#[derive(Debug, Args)]
pub struct NStateArgs {
    /// JSON file holding the symmetric interaction matrix as an array of rows.
    #[arg(long, value_name = "FILE")]
    hi: PathBuf,
    /// Diagonal unperturbed frequencies [default: zeros].
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    h0: Vec<f64>,
    #[arg(long, default_value_t = 10.0)]
    tmax: f64,
    #[arg(long, default_value_t = 100)]
    steps: usize,
}

impl NStateArgs {
    fn run(&self) -> anyhow::Result<Report> {
        let text = fs::read_to_string(&self.hi).with_context(|| format!("reading {}", self.hi.display()))?;
        let rows: Vec<Vec<f64>> = serde_json::from_str(&text)
            .with_context(|| format!("{} must be a JSON array of number rows", self.hi.display()))?;
        let n = rows.len();
        ensure!(n >= 1, "interaction matrix is empty");
        ensure!(rows.iter().all(|r| r.len() == n), "interaction matrix must be square");
        let hi = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
        let h0 = if self.h0.is_empty() {
            vec![0.0; n]
        } else {
            self.h0.clone()
        };
        ensure!(h0.len() == n, "--h0 has {} entries for a {n}x{n} matrix", h0.len());
        let times = time_grid(self.tmax, self.steps)?;
        let out = times
            .iter()
            .map(|&t| {
                let mut row = vec![t];
                row.extend(n_level_probabilities(&h0, &hi, t)?);
                Ok(row)
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        let header: Vec<String> = std::iter::once("t".to_string())
            .chain((1..=n).map(|j| format!("p{j}")))
            .collect();
        Ok(Report::Csv { header, rows: out })
    }
}

#[derive(Debug, Args)]
pub struct CollideArgs {
    /// Carrier frequency of the left packet; the right one moves with -p1.
    #[arg(long, default_value_t = 1.0)]
    p1: f64,
    #[arg(long, default_value_t = 1.0)]
    hbar_over_m: f64,
    #[arg(long, default_value_t = 25.0)]
    sigma2: f64,
    /// Packets start at -c and +c.
    #[arg(long, default_value_t = 150.0)]
    c: f64,
    /// Grid points.
    #[arg(long, default_value_t = 1000)]
    grid: usize,
    #[arg(long, default_value_t = 800.0)]
    extent: f64,
    #[arg(long, default_value = "fermion")]
    stats: Statistics,
    /// End time [default: twice the meeting time].
    #[arg(long)]
    tmax: Option<f64>,
    #[arg(long, default_value_t = 120)]
    steps: usize,
}

impl CollideArgs {
    fn setup(&self, points: usize) -> anyhow::Result<CollisionSetup> {
        let s = CollisionSetup {
            statistics: self.stats,
            sigma2: self.sigma2,
            grid: GridSpec::line(points, self.extent)?,
            ..CollisionSetup::symmetric(self.c, self.p1, self.hbar_over_m)
        };
        s.validate()?;
        Ok(s)
    }

    fn run(&self, ctx: &Context) -> anyhow::Result<Report> {
        positive("p1", self.p1)?;
        positive("hbar-over-m", self.hbar_over_m)?;
        positive("sigma2", self.sigma2)?;
        positive("c", self.c)?;
        positive("extent", self.extent)?;
        grid_points(self.grid)?;
        let setup = self.setup(self.grid)?;
        let tmax = self.tmax.unwrap_or(2.0 * setup.meeting_time());
        let times = time_grid(tmax, self.steps)?;
        let rows = collision_rows(&setup, &times)?;
        let fine = self.setup(2 * self.grid)?;
        for (label, t) in [
            ("start", 0.0),
            ("meeting", setup.meeting_time().min(tmax)),
            ("end", tmax),
        ] {
            let coarse = collision_row(&setup, t)?.s_total.total;
            let refined = collision_row(&fine, t)?.s_total.total;
            check_guard(
                ctx,
                &format!("collision entropy at {label} (t={})", fmt_g(t)),
                self.grid,
                coarse,
                refined,
            )?;
        }
        for r in &rows {
            check_bound(
                ctx,
                &format!("collision entropy at t={}", fmt_g(r.t)),
                2,
                r.s_total.total,
            )?;
        }
        let rows = rows
            .iter()
            .map(|r| vec![r.t, r.s_total.total, r.s_sum_singles, r.overlap])
            .collect();
        Ok(Report::csv(&["t", "s_total", "s_sum_singles", "overlap"], rows))
    }
}

#[derive(Debug, Args)]
pub struct HydrogenArgs {
    #[arg(long, default_value = "standard")]
    variant: Variant,
    /// Gauss-Legendre nodes per panel and axis.
    #[arg(long, default_value_t = DEFAULT_NODES)]
    nodes: usize,
}

impl HydrogenArgs {
    fn run(&self) -> anyhow::Result<Report> {
        ensure!(self.nodes >= 2, "--nodes must be at least 2");
        let b = match hydrogen_entropy_budget(self.variant, self.nodes) {
            Ok(b) => b,
            Err(qentropy::Error::QuadratureNotConverged(msg)) => {
                return Err(GuardTrip {
                    diagnostic: json!({
                        "schema_version": SCHEMA_VERSION,
                        "guard": "convergence",
                        "what": msg,
                        "nodes": self.nodes,
                        "tolerance": CONVERGENCE_TOL,
                    }),
                }
                .into())
            }
            Err(e) => return Err(e.into()),
        };
        let mut v = serde_json::to_value(&b)?;
        let lp = PI.ln();
        v["s_r_minus_ln_pi"] = json!({"2p0": b.s_r_2p0.entropy - lp, "1s": b.s_r_1s.entropy - lp});
        Ok(Report::json(v))
    }
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Series CSV with a `t` column and `s_total` (or a last entropy column).
    #[arg(long, value_name = "FILE")]
    input: PathBuf,
    /// Absolute tolerance [default: 1e-4 times the series range].
    #[arg(long)]
    epsilon: Option<f64>,
}

impl ClassifyArgs {
    fn run(&self) -> anyhow::Result<Report> {
        let f = File::open(&self.input).with_context(|| format!("opening {}", self.input.display()))?;
        let s = io::read_series(f, &self.input.display().to_string())?;
        let eps = self.epsilon.unwrap_or_else(|| default_epsilon(&s));
        ensure!(
            eps.is_finite() && eps >= 0.0,
            "--epsilon must be non-negative, got {eps}"
        );
        let c = classify(&s, eps)?;
        let t_c = detect_critical_time(&s, eps)?;
        Ok(Report::json(json!({
            "label": c.label.to_string(),
            "t_c": t_c,
            "epsilon": eps,
            "extrema": c.extrema.iter().map(|&i| s.times[i]).collect::<Vec<_>>(),
        })))
    }
}

#[derive(Debug, Args)]
pub struct SymmetryArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Random spinor fields to test.
    #[arg(long, default_value_t = 100)]
    fields: usize,
    #[arg(long, default_value_t = 256)]
    points: usize,
    #[arg(long, default_value_t = 48.0)]
    extent: f64,
}

fn gamma_identity_error(g: &GammaSet) -> f64 {
    let mut err: f64 = 0.0;
    for mu in 0..4 {
        for nu in 0..4 {
            let ac = g.gamma[mu] * g.gamma[nu] + g.gamma[nu] * g.gamma[mu];
            let want = if mu == nu {
                Mat4::identity() * Complex64::new(2.0 * GammaSet::metric(mu), 0.0)
            } else {
                Mat4::zeros()
            };
            err = err.max(max_abs_diff(&ac, &want));
        }
        let c_inv = g.c.try_inverse().expect("C is unitary");
        err = err.max(max_abs_diff(&(g.c * g.gamma[mu] * c_inv), &(-g.gamma[mu].transpose())));
        let t_inv = g.t.try_inverse().expect("T is unitary");
        let sign = if mu == 0 { 1.0 } else { -1.0 };
        let lhs = g.t * g.gamma[mu].map(|z| z.conj()) * t_inv;
        err = err.max(max_abs_diff(&lhs, &(g.gamma[mu] * Complex64::new(sign, 0.0))));
    }
    let g5 = g.gamma[0] * g.gamma[1] * g.gamma[2] * g.gamma[3] * Complex64::new(0.0, 1.0);
    err.max(max_abs_diff(&g5, &g.gamma5))
}

impl SymmetryArgs {
    fn run(&self) -> anyhow::Result<Report> {
        grid_points(self.points)?;
        positive("extent", self.extent)?;
        ensure!(self.points.is_multiple_of(2), "parity needs an even number of points");
        log::info!("verify-symmetries seed {}", self.seed);
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let grid = GridSpec::line(self.points, self.extent)?;
        let reach = 0.2 * self.extent;
        let (mut entropy_err, mut involution_err): (f64, f64) = (0.0, 0.0);
        for _ in 0..self.fields {
            let mut f = SpinorField::gaussian(grid, [0.0; 3], 1.0, [0.0; 3], Spinor::zeros());
            for _ in 0..3 {
                let mut c = || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                let spinor = Spinor::new(c(), c(), c(), c());
                let center = [rng.gen_range(-reach..reach), 0.0, 0.0];
                let k = [rng.gen_range(-2.0..2.0), 0.0, 0.0];
                f = f.add(&SpinorField::gaussian(grid, center, rng.gen_range(0.4..3.0), k, spinor))?;
            }
            let f = f.normalized()?;
            let e = spinor_entropy(&f)?;
            for h in [
                conjugate(&f),
                apply_parity(&f)?,
                apply_charge_conjugation(&f),
                apply_time_reversal(&f),
                apply_cpt(&f)?,
            ] {
                let eh = spinor_entropy(&h)?;
                entropy_err = entropy_err.max((eh.s_r - e.s_r).abs()).max((eh.s_k - e.s_k).abs());
            }
            let back = apply_cpt(&apply_cpt(&f)?)?;
            involution_err = f
                .values
                .iter()
                .zip(&back.values)
                .fold(involution_err, |m, (a, b)| m.max((a - b).norm()));
        }
        let gamma_err = gamma_identity_error(&GammaSet::standard());
        let pass = gamma_err <= 1e-13 && entropy_err <= 1e-9 && involution_err <= 1e-12;
        if !pass {
            bail!("symmetry check failed: gamma {gamma_err:e}, entropy {entropy_err:e}, CPT {involution_err:e}");
        }
        Ok(Report::json(json!({
            "seed": self.seed,
            "fields": self.fields,
            "gamma_identity_max_error": gamma_err,
            "entropy_invariance_max_error": entropy_err,
            "cpt_involution_max_error": involution_err,
            "pass": pass,
        })))
    }
}

#[derive(Debug, Args)]
pub struct MinBoundArgs {
    #[arg(long, default_value_t = 3)]
    dim: usize,
}

impl MinBoundArgs {
    fn run(&self) -> anyhow::Result<Report> {
        ensure!(self.dim >= 1, "--dim must be at least 1");
        Ok(Report::json(
            json!({"dim": self.dim, "bound": min_entropy_bound(self.dim)}),
        ))
    }
}
