//! CSV and JSON serialization with fixed `%.12g` float formatting.

use std::io::{Read, Write};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{Density, GridSpec, Representation, SampledAmplitude};
use crate::qcurve::EntropySeries;

pub const SCHEMA_VERSION: &str = "1";

/// C-style `%.12g`.
pub fn fmt_g(x: f64) -> String {
    fmt_g_prec(x, 12)
}

pub fn fmt_g_prec(x: f64, prec: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let p = prec.max(1);
    let sci = format!("{:.*e}", p - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= p as i32 {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (p as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Writes a header and rows of floats.
pub fn write_table<W: Write>(out: W, header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header).map_err(io_err)?;
    for row in rows {
        if row.len() != header.len() {
            return Err(Error::DimensionMismatch(format!(
                "row has {} fields, header has {}",
                row.len(),
                header.len()
            )));
        }
        w.write_record(row.iter().map(|v| fmt_g(*v))).map_err(io_err)?;
    }
    w.flush().map_err(|e| Error::Parse(e.to_string()))
}

fn io_err(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}

/// First coordinate of node `i`; 3D grids use the flat index with `x` from the first axis.
fn coord(grid: &GridSpec, repr: Representation, i: usize) -> f64 {
    grid.point(repr, i)[0]
}

/// `index,x,re,im`.
pub fn write_amplitude<W: Write>(out: W, a: &SampledAmplitude) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["index", "x", "re", "im"]).map_err(io_err)?;
    for (i, v) in a.values.iter().enumerate() {
        let x = coord(&a.grid, a.representation, i);
        w.write_record([i.to_string(), fmt_g(x), fmt_g(v.re), fmt_g(v.im)])
            .map_err(io_err)?;
    }
    w.flush().map_err(|e| Error::Parse(e.to_string()))
}

/// `index,x,rho`.
pub fn write_density<W: Write>(out: W, d: &Density) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["index", "x", "rho"]).map_err(io_err)?;
    for (i, v) in d.values.iter().enumerate() {
        let x = coord(&d.grid, d.representation, i);
        w.write_record([i.to_string(), fmt_g(x), fmt_g(*v)]).map_err(io_err)?;
    }
    w.flush().map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleMetadata<'a> {
    pub schema_version: &'static str,
    pub grid: &'a GridSpec,
    pub representation: &'static str,
    pub time: f64,
}

pub fn amplitude_metadata(a: &SampledAmplitude) -> serde_json::Value {
    serde_json::to_value(SampleMetadata {
        schema_version: SCHEMA_VERSION,
        grid: &a.grid,
        representation: a.representation.name(),
        time: a.time,
    })
    .expect("metadata serializes")
}

/// Reads the `t` column and an entropy column (`s_total` when present,
/// otherwise the last column) from a series CSV.
pub fn read_series<R: Read>(input: R, meta: &str) -> Result<EntropySeries> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let header = r.headers().map_err(io_err)?.clone();
    let t_col = header
        .iter()
        .position(|h| h == "t")
        .ok_or_else(|| Error::Parse("missing column \"t\"".into()))?;
    let s_col = header
        .iter()
        .position(|h| h == "s_total")
        .or_else(|| (header.len() > 1).then(|| header.len() - 1))
        .filter(|&c| c != t_col)
        .ok_or_else(|| Error::Parse("missing entropy column \"s_total\"".into()))?;
    let (mut times, mut values) = (Vec::new(), Vec::new());
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(io_err)?;
        let field = |c: usize| -> Result<f64> {
            let s = rec.get(c).unwrap_or("");
            s.parse()
                .map_err(|_| Error::Parse(format!("row {}: {s:?} is not a number", line + 2)))
        };
        times.push(field(t_col)?);
        values.push(field(s_col)?);
    }
    EntropySeries::new(times, values, meta)
}

/// Reads an `index,x,re,im` position-space CSV written by [`write_amplitude`].
/// The grid is recovered from the first two `x` values and the row count.
pub fn read_amplitude<R: Read>(input: R) -> Result<SampledAmplitude> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let header = r.headers().map_err(io_err)?.clone();
    if header.iter().collect::<Vec<_>>() != ["index", "x", "re", "im"] {
        return Err(Error::Parse("expected header index,x,re,im".into()));
    }
    let (mut xs, mut values) = (Vec::new(), Vec::new());
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(io_err)?;
        let mut f = [0.0; 3];
        for (slot, c) in f.iter_mut().zip(1..4) {
            let s = rec.get(c).unwrap_or("");
            *slot = s
                .parse()
                .map_err(|_| Error::Parse(format!("row {}: {s:?} is not a number", line + 2)))?;
        }
        xs.push(f[0]);
        values.push(Complex64::new(f[1], f[2]));
    }
    if xs.len() < 2 {
        return Err(Error::Parse("need at least two samples".into()));
    }
    let dx = xs[1] - xs[0];
    let grid = GridSpec::line(xs.len(), dx * xs.len() as f64)?;
    let off = xs
        .iter()
        .enumerate()
        .fold(0.0f64, |m, (j, &x)| m.max((x - grid.x(j)).abs()));
    if off > 1e-6 * dx.abs().max(1.0) {
        return Err(Error::Parse(format!(
            "x column is not a centered uniform grid (off by {off:e})"
        )));
    }
    SampledAmplitude::new(grid, values, Representation::Position)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_format_matches_c() {
        assert_eq!(fmt_g(0.0), "0");
        assert_eq!(fmt_g(1.0), "1");
        assert_eq!(fmt_g(2.5), "2.5");
        assert_eq!(fmt_g(-0.125), "-0.125");
        assert_eq!(fmt_g(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_g(std::f64::consts::PI * 1e6), "3141592.65359");
        assert_eq!(fmt_g(1e-5), "1e-05");
        assert_eq!(fmt_g(0.0001), "0.0001");
        assert_eq!(fmt_g(1.5e12), "1.5e+12");
        assert_eq!(fmt_g(123456789012.0), "123456789012");
        assert_eq!(fmt_g(2.14472988584940), "2.14472988585");
        assert_eq!(fmt_g(9.9999999999999e-1), "1");
        assert_eq!(fmt_g(f64::NAN), "nan");
    }

    #[test]
    fn table_and_series_round_trip() {
        let mut buf = Vec::new();
        let rows = (0..4).map(|i| vec![i as f64, 1.0, 2.0, 3.0 + i as f64]);
        write_table(&mut buf, &["t", "s_r", "s_k", "s_total"], rows).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("t,s_r,s_k,s_total\n0,1,2,3\n"));
        let s = read_series(&buf[..], "csv").unwrap();
        assert_eq!(s.values, vec![3.0, 4.0, 5.0, 6.0]);
        assert!(read_series("t,s_total\n0,x\n".as_bytes(), "bad").is_err());
        assert!(read_series("a,b\n0,1\n".as_bytes(), "bad").is_err());
    }

    #[test]
    fn amplitude_csv() {
        let grid = GridSpec::line(8, 8.0).unwrap();
        let a = SampledAmplitude::new(grid, vec![Complex64::new(0.5, -1.0); 8], Representation::Position).unwrap();
        let mut buf = Vec::new();
        write_amplitude(&mut buf, &a).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("index,x,re,im\n0,-4,0.5,-1\n1,-3,0.5,-1\n"));
        let back = read_amplitude(&buf[..]).unwrap();
        assert_eq!(back.grid, grid);
        assert_eq!(back.values, a.values);
        assert!(read_amplitude("index,x,re,im\n0,0,1,0\n1,1,1,0\n".as_bytes()).is_err());
        let meta = amplitude_metadata(&a);
        assert_eq!(meta["schema_version"], "1");
        assert_eq!(meta["representation"], "position");
    }
}
