//! Labelled result series and their CSV form.
//!
//! A series file is UTF-8 with `#`-prefixed metadata lines, then a header row
//! `x_name,y_name`, then one `x,y` row per point:
//!
//! ```text
//! # label=papr_ccdf_conventional
//! # scheme=conventional
//! # seed=1
//! papr_db,ccdf
//! 0,1
//! 0.1,1
//! ```
//!
//! Numbers use Rust's shortest round-trip formatting, so identical series
//! produce byte-identical files.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct MetricSeries {
    pub label: String,
    pub x_name: String,
    pub y_name: String,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub meta: BTreeMap<String, String>,
}

impl MetricSeries {
    /// Build a series, checking equal lengths and strictly increasing `x`.
    pub fn new(
        label: impl Into<String>,
        x_name: impl Into<String>,
        y_name: impl Into<String>,
        x: Vec<f64>,
        y: Vec<f64>,
    ) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::Dimension(format!(
                "series x has {} points, y has {}",
                x.len(),
                y.len()
            )));
        }
        if let Some(i) = x.windows(2).position(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less)) {
            return Err(Error::Parameter(format!(
                "series x not strictly increasing at index {}",
                i + 1
            )));
        }
        Ok(MetricSeries {
            label: label.into(),
            x_name: x_name.into(),
            y_name: y_name.into(),
            x,
            y,
            meta: BTreeMap::new(),
        })
    }

    pub fn with_meta(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.meta.insert(key.into(), value.to_string());
        self
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.x.iter().copied().zip(self.y.iter().copied())
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "# label={}", self.label)?;
        for (k, v) in &self.meta {
            writeln!(out, "# {k}={v}")?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record([&self.x_name, &self.y_name])?;
        for (x, y) in self.points() {
            w.write_record([x.to_string(), y.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("series CSV is UTF-8")
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let f = File::create(path)?;
        self.write_csv(std::io::BufWriter::new(f))
    }

    pub fn read_csv<R: Read>(mut input: R) -> Result<Self> {
        let mut text = String::new();
        input.read_to_string(&mut text)?;
        let mut label = String::new();
        let mut meta = BTreeMap::new();
        for line in text.lines().take_while(|l| l.starts_with('#')) {
            let body = line.trim_start_matches('#').trim();
            if let Some((k, v)) = body.split_once('=') {
                if k == "label" {
                    label = v.to_string();
                } else {
                    meta.insert(k.to_string(), v.to_string());
                }
            }
        }
        let mut r = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let headers = r.headers()?.clone();
        if headers.len() != 2 {
            return Err(Error::Parse(format!(
                "expected 2 header columns, found {}",
                headers.len()
            )));
        }
        let (mut x, mut y) = (Vec::new(), Vec::new());
        for rec in r.records() {
            let rec = rec?;
            let num = |i: usize| -> Result<f64> {
                rec[i]
                    .trim()
                    .parse()
                    .map_err(|e| Error::Parse(format!("'{}': {e}", &rec[i])))
            };
            x.push(num(0)?);
            y.push(num(1)?);
        }
        let mut s = MetricSeries::new(label, &headers[0], &headers[1], x, y)?;
        s.meta = meta;
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Self> {
        MetricSeries::read_csv(File::open(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> MetricSeries {
        MetricSeries::new("ber_mstc", "ebn0_db", "ber", vec![0.0, 0.5, 1.0], vec![0.0786, 0.0563, 1.0e-7])
            .unwrap()
            .with_meta("scheme", "mstc")
            .with_meta("seed", 7)
    }

    #[test]
    fn csv_layout() {
        let text = sample().to_csv_string();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# label=ber_mstc");
        assert_eq!(lines[1], "# scheme=mstc");
        assert_eq!(lines[2], "# seed=7");
        assert_eq!(lines[3], "ebn0_db,ber");
        assert_eq!(lines[4], "0,0.0786");
        assert_eq!(lines[6], "1,0.0000001");
    }

    #[test]
    fn csv_roundtrip() {
        let s = sample();
        let back = MetricSeries::read_csv(s.to_csv_string().as_bytes()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn rejects_bad_series() {
        assert!(MetricSeries::new("a", "x", "y", vec![0.0, 1.0], vec![0.0]).is_err());
        assert!(MetricSeries::new("a", "x", "y", vec![1.0, 1.0], vec![0.0, 0.0]).is_err());
        assert!(MetricSeries::read_csv("x,y\n1,abc\n".as_bytes()).is_err());
        assert!(MetricSeries::read_csv("x,y,z\n1,2,3\n".as_bytes()).is_err());
    }
}
