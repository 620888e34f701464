//! Welch power spectral density and occupied bandwidth.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::fft::Radix2Fft;
use crate::ofdm::WaveformFrame;
use crate::scalar::Real;
use crate::series::MetricSeries;

/// Floor applied before taking dB so empty bins stay finite.
const FLOOR_DB: f64 = -300.0;

/// Welch estimate with a periodic Hann window over segments of `segment_len`
/// samples overlapping by the fraction `overlap`. The frequency axis runs
/// from `-fs/2` upward in Hz; values are dB relative to the highest bin.
pub fn psd_estimate<T: Real>(frame: &WaveformFrame<T>, segment_len: usize, overlap: f64) -> Result<MetricSeries> {
    let x = frame.samples();
    if segment_len < 2 || !segment_len.is_power_of_two() {
        return Err(Error::Parameter(format!(
            "segment length {segment_len} must be a power of two >= 2"
        )));
    }
    if segment_len > x.len() {
        return Err(Error::Parameter(format!(
            "segment length {segment_len} exceeds frame length {}",
            x.len()
        )));
    }
    if !(0.0..1.0).contains(&overlap) {
        return Err(Error::Parameter(format!("overlap {overlap} outside [0, 1)")));
    }
    let step = ((segment_len as f64 * (1.0 - overlap)).round() as usize).max(1);
    let window: Vec<f64> = (0..segment_len)
        .map(|n| 0.5 - 0.5 * (std::f64::consts::TAU * n as f64 / segment_len as f64).cos())
        .collect();
    let plan = Radix2Fft::<f64>::new(segment_len)?;
    let mut acc = vec![0.0f64; segment_len];
    let mut buf = vec![Complex::new(0.0, 0.0); segment_len];
    let mut segments = 0usize;
    let mut start = 0;
    while start + segment_len <= x.len() {
        for ((b, s), w) in buf.iter_mut().zip(&x[start..start + segment_len]).zip(&window) {
            *b = Complex::new(s.re.as_f64() * w, s.im.as_f64() * w);
        }
        plan.forward(&mut buf)?;
        for (a, b) in acc.iter_mut().zip(&buf) {
            *a += b.norm_sqr();
        }
        segments += 1;
        start += step;
    }
    let peak = acc.iter().copied().fold(0.0, f64::max);
    if peak == 0.0 {
        return Err(Error::UndefinedPower);
    }
    let fs = frame.sampling_rate_hz();
    let half = segment_len / 2;
    let (freq, db): (Vec<f64>, Vec<f64>) = (0..segment_len)
        .map(|i| {
            let bin = (i + half) % segment_len;
            let f = (i as f64 - half as f64) * fs / segment_len as f64;
            let v = acc[bin] / peak;
            (f, if v > 0.0 { (10.0 * v.log10()).max(FLOOR_DB) } else { FLOOR_DB })
        })
        .unzip();
    Ok(MetricSeries::new("psd", "freq_hz", "psd_db", freq, db)?
        .with_meta("segment_len", segment_len)
        .with_meta("overlap", overlap)
        .with_meta("segments", segments)
        .with_meta("sampling_rate_hz", fs))
}

/// Width in Hz of the band whose PSD stays at or above `threshold_db`
/// relative to the in-band plateau.
///
/// The plateau level starts at the peak and is refined a few times as the
/// mean linear power between the outermost bins that clear the threshold.
/// Band edges are placed by linear interpolation in linear power between the
/// last bin above and the first bin below the threshold.
pub fn occupied_bandwidth_hz(psd: &MetricSeries, threshold_db: f64) -> Result<f64> {
    let n = psd.len();
    if n < 2 {
        return Err(Error::Parameter("PSD needs at least two points".into()));
    }
    if !(threshold_db.is_finite() && threshold_db < 0.0) {
        return Err(Error::Parameter(format!("threshold {threshold_db} dB must be negative")));
    }
    let lin: Vec<f64> = psd.y.iter().map(|&d| 10f64.powf(d / 10.0)).collect();
    let df = psd.x[1] - psd.x[0];
    let rel = 10f64.powf(threshold_db / 10.0);
    let mut reference = lin.iter().copied().fold(0.0, f64::max);
    let mut span = (0, n - 1);
    for _ in 0..8 {
        let thr = reference * rel;
        let lo = lin.iter().position(|&v| v >= thr).expect("peak clears threshold");
        let hi = lin.iter().rposition(|&v| v >= thr).expect("peak clears threshold");
        span = (lo, hi);
        let plateau = lin[lo..=hi].iter().sum::<f64>() / (hi - lo + 1) as f64;
        if plateau == reference {
            break;
        }
        reference = plateau;
    }
    let thr = reference * rel;
    let (lo, hi) = span;
    let left = if lo == 0 {
        psd.x[0] - 0.5 * df
    } else {
        let (a, b) = (lin[lo - 1], lin[lo]);
        psd.x[lo - 1] + (thr - a) / (b - a) * df
    };
    let right = if hi == n - 1 {
        psd.x[n - 1] + 0.5 * df
    } else {
        let (a, b) = (lin[hi], lin[hi + 1]);
        psd.x[hi] + (a - thr) / (a - b) * df
    };
    Ok(right - left)
}
