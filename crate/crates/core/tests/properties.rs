use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use qentropy::dispersion::{group_velocity, hessian, omega, DispersionModel};
use qentropy::entropy::{min_entropy_bound, total_entropy};
use qentropy::grid::{born_density, fourier_transform, normalize, GridSpec, Representation, SampledAmplitude};
use qentropy::qcurve::{class_of_reflection, classify, reflect, EntropySeries, QCurveLabel};
use qentropy::symmetry::{
    apply_charge_conjugation, apply_cpt, apply_parity, apply_time_reversal, conjugate, spinor_entropy, Spinor,
    SpinorField,
};
use qentropy::twolevel::{coefficients, n_level_probabilities, TwoLevelSystem};

fn entropy(a: &SampledAmplitude) -> f64 {
    let phi = fourier_transform(a).unwrap();
    total_entropy(&born_density(a), &born_density(&phi)).unwrap().total
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).norm()))
}

/// Up to three Gaussian bumps with random centers, widths, carriers and weights.
fn mixture() -> impl Strategy<Value = Vec<(f64, f64, f64, f64, f64)>> {
    prop::collection::vec(
        (-8.0..8.0f64, 0.3..3.0f64, -3.0..3.0f64, 0.1..1.0f64, 0.0..(2.0 * PI)),
        1..4,
    )
}

fn sample_mixture(grid: GridSpec, bumps: &[(f64, f64, f64, f64, f64)]) -> SampledAmplitude {
    let a = SampledAmplitude::from_fn(grid, Representation::Position, |p| {
        bumps
            .iter()
            .map(|&(c, s2, k, w, ph)| {
                let x = p[0] - c;
                Complex64::from_polar(w * (-0.5 * x * x / s2).exp(), k * p[0] + ph)
            })
            .sum()
    });
    normalize(&a).unwrap()
}

fn grid() -> GridSpec {
    GridSpec::line(512, 64.0).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parseval(bumps in mixture(), scale in 0.1..10.0f64) {
        let mut a = sample_mixture(grid(), &bumps);
        a.values.iter_mut().for_each(|v| *v *= scale);
        let phi = fourier_transform(&a).unwrap();
        prop_assert!((a.norm_sq() - phi.norm_sq()).abs() <= 1e-9 * a.norm_sq().max(1.0));
    }

    #[test]
    fn shift_theorem(bumps in mixture(), shift in -40i64..40) {
        let g = grid();
        let a = sample_mixture(g, &bumps);
        let n = g.points_per_axis() as i64;
        let x0 = shift as f64 * g.spacing();
        let shifted = SampledAmplitude::new(
            g,
            (0..n).map(|j| a.values[(j - shift).rem_euclid(n) as usize]).collect(),
            Representation::Position,
        ).unwrap();
        let lhs = fourier_transform(&shifted).unwrap();
        let phi = fourier_transform(&a).unwrap();
        let rhs: Vec<Complex64> = phi.values.iter().enumerate()
            .map(|(m, v)| v * Complex64::from_polar(1.0, -g.k(m) * x0))
            .collect();
        prop_assert!(max_diff(&lhs.values, &rhs) < 1e-8);
    }

    #[test]
    fn hermitian_symmetry(bumps in mixture()) {
        let g = grid();
        let mut a = sample_mixture(g, &bumps);
        a.values.iter_mut().for_each(|v| *v = Complex64::new(v.re, 0.0));
        let phi = fourier_transform(&a).unwrap();
        for m in 1..g.points_per_axis() {
            let r = g.reflect_index(m);
            prop_assert!((phi.values[r] - phi.values[m].conj()).norm() < 1e-9);
        }
    }

    #[test]
    fn entropy_lower_bound(bumps in mixture()) {
        let a = sample_mixture(grid(), &bumps);
        prop_assert!(entropy(&a) >= min_entropy_bound(1) - 5e-3);
    }

    #[test]
    fn translation_and_modulation_invariance(bumps in mixture(), shift in -20i64..20, kstep in -10i64..10) {
        let g = grid();
        let a = sample_mixture(g, &bumps);
        let s0 = entropy(&a);
        let n = g.points_per_axis() as i64;
        let shifted = SampledAmplitude::new(
            g,
            (0..n).map(|j| a.values[(j - shift).rem_euclid(n) as usize]).collect(),
            Representation::Position,
        ).unwrap();
        prop_assert!((entropy(&shifted) - s0).abs() < 1e-8);
        let k0 = kstep as f64 * g.freq_spacing();
        let modulated = SampledAmplitude::new(
            g,
            a.values.iter().enumerate().map(|(j, v)| v * Complex64::from_polar(1.0, k0 * g.x(j))).collect(),
            Representation::Position,
        ).unwrap();
        prop_assert!((entropy(&modulated) - s0).abs() < 1e-8);
        let conj = SampledAmplitude::new(g, a.values.iter().map(|v| v.conj()).collect(), Representation::Position).unwrap();
        prop_assert_eq!(born_density(&conj).values, born_density(&a).values);
    }

    #[test]
    fn derivatives_match_finite_differences(k in prop::array::uniform3(-3.0..3.0f64), mass in 0.2..3.0f64, dirac in any::<bool>()) {
        let model = if dirac { DispersionModel::dirac(mass) } else { DispersionModel::schroedinger(mass) };
        let h = 1e-5;
        let v = group_velocity(&model, &k);
        let hs = hessian(&model, &k);
        for i in 0..3 {
            let mut kp = k; kp[i] += h;
            let mut km = k; km[i] -= h;
            let fd = (omega(&model, &kp) - omega(&model, &km)) / (2.0 * h);
            prop_assert!((fd - v[i]).abs() <= 1e-7 * v[i].abs().max(1.0));
            let gp = group_velocity(&model, &kp);
            let gm = group_velocity(&model, &km);
            for j in 0..3 {
                let fd = (gp[j] - gm[j]) / (2.0 * h);
                prop_assert!((fd - hs[(i, j)]).abs() <= 1e-7 * hs[(i, j)].abs().max(1.0));
            }
        }
    }

    #[test]
    fn two_level_unitarity(w1 in -5.0..5.0f64, w2 in -5.0..5.0f64, d1 in -1.0..1.0f64, d2 in -1.0..1.0f64, c in -2.0..2.0f64, t in 0.0..50.0f64) {
        let (a1, a2) = coefficients(&TwoLevelSystem::new(w1, w2, d1, d2, c), t);
        prop_assert!((a1.norm_sqr() + a2.norm_sqr() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn n_level_matches_expm(n in 2usize..=8, seed in prop::collection::vec(-1.0..1.0f64, 72), t in 0.0..10.0f64) {
        let h0: Vec<f64> = (0..n).map(|i| seed[i] * 3.0).collect();
        let mut hi = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = seed[8 + i * 8 + j];
                hi[(i, j)] = v;
                hi[(j, i)] = v;
            }
        }
        let p = n_level_probabilities(&h0, &hi, t).unwrap();
        let h = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&h0)) + &hi;
        let u = (h.map(|x| Complex64::new(0.0, -t * x))).exp();
        for j in 0..n {
            prop_assert!((p[j] - u[(j, 0)].norm_sqr()).abs() <= 1e-10);
        }
    }

    #[test]
    fn spinor_entropies_invariant(c in prop::collection::vec(-1.0..1.0f64, 16), x1 in -6.0..6.0f64, x2 in -6.0..6.0f64, k1 in -2.0..2.0f64) {
        let g = GridSpec::line(256, 48.0).unwrap();
        let s1 = Spinor::new(Complex64::new(c[0], c[1]), Complex64::new(c[2], c[3]), Complex64::new(c[4], c[5]), Complex64::new(c[6], c[7]));
        let s2 = Spinor::new(Complex64::new(c[8], c[9]), Complex64::new(c[10], c[11]), Complex64::new(c[12], c[13]), Complex64::new(c[14], c[15]));
        prop_assume!(s1.norm() > 0.1 && s2.norm() > 0.1);
        let f = SpinorField::gaussian(g, [x1, 0.0, 0.0], 1.5, [k1, 0.0, 0.0], s1)
            .add(&SpinorField::gaussian(g, [x2, 0.0, 0.0], 0.7, [-k1, 0.0, 0.0], s2)).unwrap();
        let Ok(f) = f.normalized() else { return Ok(()); };
        let e = spinor_entropy(&f).unwrap();
        for h in [conjugate(&f), apply_parity(&f).unwrap(), apply_charge_conjugation(&f), apply_time_reversal(&f), apply_cpt(&f).unwrap()] {
            let eh = spinor_entropy(&h).unwrap();
            prop_assert!((eh.s_r - e.s_r).abs() < 1e-9 && (eh.s_k - e.s_k).abs() < 1e-9);
        }
    }
}

/// Piecewise-monotone series: random segment slopes and lengths.
fn piecewise() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec((0.1..1.0f64, any::<bool>(), 1usize..8, any::<bool>()), 1..6).prop_map(|segs| {
        let mut v = vec![0.0];
        for (mag, up, len, flat) in segs {
            let s = match (flat, up) {
                (true, _) => 0.0,
                (false, true) => mag,
                (false, false) => -mag,
            };
            for _ in 0..len {
                v.push(v.last().unwrap() + s);
            }
        }
        while v.len() < 3 {
            v.push(*v.last().unwrap());
        }
        v
    })
}

fn series(v: Vec<f64>) -> EntropySeries {
    EntropySeries::new((0..v.len()).map(|i| i as f64 * 0.1).collect(), v, "corpus").unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn partition_is_total_and_exclusive(v in piecewise(), eps in 0.0..0.5f64) {
        let s = series(v);
        let c = classify(&s, eps).unwrap();
        let r = &s.values;
        let range = s.range();
        let mut rise: f64 = 0.0;
        let mut drop: f64 = 0.0;
        for i in 0..r.len() {
            for j in i + 1..r.len() {
                rise = rise.max(r[j] - r[i]);
                drop = drop.max(r[i] - r[j]);
            }
        }
        let holds = [
            (QCurveLabel::C, range <= eps),
            (QCurveLabel::I, range > eps && drop <= eps),
            (QCurveLabel::D, range > eps && drop > eps && rise <= eps),
            (QCurveLabel::O, range > eps && drop > eps && rise > eps),
        ];
        prop_assert_eq!(holds.iter().filter(|(_, h)| *h).count(), 1);
        prop_assert!(holds.iter().any(|(l, h)| *h && *l == c.label));
    }

    #[test]
    fn reflection_commutes_with_classification(v in piecewise(), eps in 0.0..0.5f64) {
        let s = series(v);
        let c = classify(&s, eps).unwrap();
        prop_assert_eq!(classify(&reflect(&s), eps).unwrap().label, class_of_reflection(&c).label);
        prop_assert_eq!(class_of_reflection(&class_of_reflection(&c)).label, c.label);
        prop_assert_eq!(reflect(&reflect(&s)), s);
    }

    #[test]
    fn classification_survives_small_noise(v in piecewise(), noise in prop::collection::vec(-1.0..1.0f64, 64)) {
        let eps = 0.04;
        let s = series(v.clone());
        // margins: every step is 0 or at least eps/2 away from the ±eps boundary
        let ok = s.values.windows(2).all(|w| {
            let d = (w[1] - w[0]).abs();
            d == 0.0 || d >= 1.5 * eps
        });
        prop_assume!(ok && (s.range() == 0.0 || s.range() >= 1.5 * eps));
        let noisy: Vec<f64> = v.iter().enumerate().map(|(i, x)| x + noise[i % 64] * eps / 8.0).collect();
        prop_assert_eq!(classify(&series(noisy), eps).unwrap().label, classify(&s, eps).unwrap().label);
    }
}
