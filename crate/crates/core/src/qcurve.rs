//! Entropy traces and their partition into constant, decreasing, increasing
//! and oscillating classes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropySeries {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    /// Name of the generator that produced the series.
    pub meta: String,
}

impl EntropySeries {
    pub fn new(times: Vec<f64>, values: Vec<f64>, meta: impl Into<String>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::InvalidSeries(format!(
                "{} times but {} values",
                times.len(),
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        if let Some(i) = times.windows(2).position(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidSeries(format!(
                "times not strictly increasing at index {}",
                i + 1
            )));
        }
        Ok(Self {
            times,
            values,
            meta: meta.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn range(&self) -> f64 {
        let (lo, hi) = self
            .values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
        if self.values.is_empty() {
            0.0
        } else {
            hi - lo
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QCurveLabel {
    C,
    D,
    I,
    O,
}

impl QCurveLabel {
    pub const ALL: [QCurveLabel; 4] = [QCurveLabel::C, QCurveLabel::D, QCurveLabel::I, QCurveLabel::O];

    pub fn reflected(self) -> Self {
        match self {
            QCurveLabel::C => QCurveLabel::C,
            QCurveLabel::D => QCurveLabel::I,
            QCurveLabel::I => QCurveLabel::D,
            QCurveLabel::O => QCurveLabel::O,
        }
    }
}

impl fmt::Display for QCurveLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            QCurveLabel::C => "C",
            QCurveLabel::D => "D",
            QCurveLabel::I => "I",
            QCurveLabel::O => "O",
        };
        f.write_str(s)
    }
}

impl FromStr for QCurveLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "C" => Ok(QCurveLabel::C),
            "D" => Ok(QCurveLabel::D),
            "I" => Ok(QCurveLabel::I),
            "O" => Ok(QCurveLabel::O),
            other => Err(Error::Parse(format!("unknown class label {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QCurveClass {
    pub label: QCurveLabel,
    pub epsilon: f64,
    /// Indices where the ε-filtered direction flips.
    pub extrema: Vec<usize>,
}

/// `1e-4 · (max - min + 1e-30)`.
pub fn default_epsilon(s: &EntropySeries) -> f64 {
    1e-4 * (s.range() + 1e-30)
}

/// Largest `v[j] - v[i]` over `i < j` (rise) and largest `v[i] - v[j]` (drop).
fn largest_moves(v: &[f64]) -> (f64, f64) {
    let (mut lo, mut hi) = (v[0], v[0]);
    let (mut rise, mut drop) = (0.0f64, 0.0f64);
    for &x in &v[1..] {
        rise = rise.max(x - lo);
        drop = drop.max(hi - x);
        lo = lo.min(x);
        hi = hi.max(x);
    }
    (rise, drop)
}

/// C when the range is within `ε`; otherwise I when no later value sits more
/// than `ε` below an earlier one, D for the mirror condition, and O when the
/// series both rises and falls by more than `ε`.
pub fn classify(s: &EntropySeries, epsilon: f64) -> Result<QCurveClass> {
    if s.len() < 3 {
        return Err(Error::SeriesTooShort {
            needed: 3,
            got: s.len(),
        });
    }
    if !(epsilon >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "epsilon must be non-negative, got {epsilon}"
        )));
    }
    let (rise, drop) = largest_moves(&s.values);
    let label = if s.range() <= epsilon {
        QCurveLabel::C
    } else if drop <= epsilon {
        QCurveLabel::I
    } else if rise <= epsilon {
        QCurveLabel::D
    } else {
        QCurveLabel::O
    };
    Ok(QCurveClass {
        label,
        epsilon,
        extrema: extrema(&s.values, epsilon),
    })
}

/// Turning points of the ε-hysteresis trend.
fn extrema(v: &[f64], eps: f64) -> Vec<usize> {
    let mut out = Vec::new();
    let mut dir = 0i8;
    let mut pivot = 0usize;
    for i in 1..v.len() {
        match dir {
            0 => {
                if v[i] - v[pivot] > eps {
                    dir = 1;
                    pivot = i;
                } else if v[pivot] - v[i] > eps {
                    dir = -1;
                    pivot = i;
                }
            }
            1 => {
                if v[i] >= v[pivot] {
                    pivot = i;
                } else if v[pivot] - v[i] > eps {
                    out.push(pivot);
                    dir = -1;
                    pivot = i;
                }
            }
            _ => {
                if v[i] <= v[pivot] {
                    pivot = i;
                } else if v[i] - v[pivot] > eps {
                    out.push(pivot);
                    dir = 1;
                    pivot = i;
                }
            }
        }
    }
    out
}

/// Same time stamps, values reversed.
pub fn reflect(s: &EntropySeries) -> EntropySeries {
    let mut values = s.values.clone();
    values.reverse();
    EntropySeries {
        times: s.times.clone(),
        values,
        meta: s.meta.clone(),
    }
}

/// Class of the reflected series. Extrema indices depend on the series
/// length, so they are left empty.
pub fn class_of_reflection(c: &QCurveClass) -> QCurveClass {
    QCurveClass {
        label: c.label.reflected(),
        epsilon: c.epsilon,
        extrema: Vec::new(),
    }
}

/// End of the first ε-increasing stretch: the time of the running maximum at
/// the first sample falling more than ε below it. `None` unless the series
/// classifies as O.
pub fn detect_critical_time(s: &EntropySeries, epsilon: f64) -> Result<Option<f64>> {
    if classify(s, epsilon)?.label != QCurveLabel::O {
        return Ok(None);
    }
    let mut best = 0usize;
    for i in 1..s.len() {
        if s.values[i] > s.values[best] {
            best = i;
        } else if s.values[best] - s.values[i] > epsilon {
            return Ok(Some(s.times[best]));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(v: &[f64]) -> EntropySeries {
        EntropySeries::new((0..v.len()).map(|i| i as f64).collect(), v.to_vec(), "test").unwrap()
    }

    #[test]
    fn labels() {
        assert_eq!(classify(&series(&[1.0; 5]), 1e-9).unwrap().label, QCurveLabel::C);
        assert_eq!(
            classify(&series(&[1.0, 2.0, 2.0, 3.0]), 1e-9).unwrap().label,
            QCurveLabel::I
        );
        assert_eq!(classify(&series(&[3.0, 2.0, 1.0]), 1e-9).unwrap().label, QCurveLabel::D);
        let o = classify(&series(&[0.0, 1.0, 0.0, 1.0]), 1e-9).unwrap();
        assert_eq!(o.label, QCurveLabel::O);
        assert_eq!(o.extrema, vec![1, 2]);
    }

    #[test]
    fn epsilon_band() {
        let s = series(&[0.0, 1.0, 0.99, 2.0]);
        assert_eq!(classify(&s, 1e-3).unwrap().label, QCurveLabel::O);
        assert_eq!(classify(&s, 0.02).unwrap().label, QCurveLabel::I);
        assert_eq!(classify(&s, 2.0).unwrap().label, QCurveLabel::C);
        let slow = series(&[0.0, -0.1, -0.2, -0.3]);
        assert_eq!(classify(&slow, 0.24).unwrap().label, QCurveLabel::D);
        assert_eq!(classify(&reflect(&slow), 0.24).unwrap().label, QCurveLabel::I);
    }

    #[test]
    fn too_short() {
        assert_eq!(
            classify(&series(&[1.0, 2.0]), 0.1),
            Err(Error::SeriesTooShort { needed: 3, got: 2 })
        );
    }

    #[test]
    fn invalid_series() {
        assert!(EntropySeries::new(vec![0.0, 0.0, 1.0], vec![1.0; 3], "x").is_err());
        assert!(EntropySeries::new(vec![0.0, 1.0], vec![1.0; 3], "x").is_err());
        assert!(EntropySeries::new(vec![0.0, 1.0], vec![1.0, f64::NAN], "x").is_err());
    }

    #[test]
    fn reflection() {
        let s = series(&[1.0, 2.0, 4.0]);
        let r = reflect(&s);
        assert_eq!(r.values, vec![4.0, 2.0, 1.0]);
        assert_eq!(r.times, s.times);
        assert_eq!(reflect(&r), s);
        assert_eq!(classify(&r, 1e-9).unwrap().label, QCurveLabel::D);
        let c = series(&[2.0; 4]);
        assert_eq!(classify(&reflect(&c), 1e-9).unwrap().label, QCurveLabel::C);
    }

    #[test]
    fn reflection_class_map() {
        assert_eq!(QCurveLabel::I.reflected(), QCurveLabel::D);
        assert_eq!(QCurveLabel::O.reflected(), QCurveLabel::O);
        assert_eq!(QCurveLabel::C.reflected(), QCurveLabel::C);
        for l in QCurveLabel::ALL {
            assert_eq!(l.reflected().reflected(), l);
        }
    }

    #[test]
    fn critical_time() {
        let s = series(&[0.0, 1.0, 2.0, 1.5, 1.0, 2.5]);
        assert_eq!(detect_critical_time(&s, 0.1).unwrap(), Some(2.0));
        assert_eq!(detect_critical_time(&series(&[0.0, 1.0, 2.0]), 0.1).unwrap(), None);
    }

    #[test]
    fn label_round_trip() {
        for l in QCurveLabel::ALL {
            assert_eq!(l.to_string().parse::<QCurveLabel>().unwrap(), l);
        }
        assert!("X".parse::<QCurveLabel>().is_err());
    }
}
