//! Monte-Carlo bit error rate over AWGN.
//!
//! Each Eb/N0 point runs batches of random payloads through
//! transmit → AWGN → receive. A point stops once `min_bits` bits have been
//! simulated or `max_errors` errors counted, whichever comes first. Batches
//! are seeded from `(seed, point, batch)` and evaluated in fixed-size rounds,
//! so the result does not depend on the number of worker threads.

use rayon::prelude::*;

use crate::bits::BitBlock;
use crate::channel::{apply_awgn, ChannelSpec};
use crate::config::SystemConfig;
use crate::error::{Error, Result};
use crate::ofdm::{receive, transmit};
use crate::rng::{derive_seed, seeded_rng};
use crate::scalar::Real;
use crate::series::MetricSeries;

/// Smallest accepted `min_bits`.
pub const MIN_BITS_FLOOR: u64 = 10_000;
/// Target payload bits per batch.
const BATCH_BITS: usize = 8192;
/// Batches evaluated concurrently before the stopping rule is checked.
const ROUND: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BerPoint {
    pub ebn0_db: f64,
    pub bits: u64,
    pub errors: u64,
}

impl BerPoint {
    pub fn ber(&self) -> f64 {
        if self.bits == 0 {
            0.0
        } else {
            self.errors as f64 / self.bits as f64
        }
    }

    /// Binomial standard error `√(p(1-p)/n)` at error rate `p`.
    pub fn std_error_at(&self, p: f64) -> f64 {
        (p * (1.0 - p) / self.bits as f64).sqrt()
    }
}

fn run_batch<T: Real>(cfg: &SystemConfig, ebn0_db: f64, blocks: usize, seed: u64) -> Result<(u64, u64)> {
    let mut rng = seeded_rng(derive_seed(seed, 0));
    let payload = BitBlock::random(&mut rng, blocks * cfg.bits_per_block());
    let tx = transmit::<T>(&payload, cfg)?;
    let spec = ChannelSpec::ebn0_db(ebn0_db, cfg.bits_per_complex_sample(), derive_seed(seed, 1));
    let rx = receive(&apply_awgn(&tx, &spec)?, cfg)?;
    Ok((payload.len() as u64, payload.hamming_distance(&rx)? as u64))
}

fn run_point<T: Real>(
    cfg: &SystemConfig,
    ebn0_db: f64,
    min_bits: u64,
    max_errors: u64,
    seed: u64,
) -> Result<BerPoint> {
    let blocks = (BATCH_BITS / cfg.bits_per_block()).max(1);
    let mut point = BerPoint {
        ebn0_db,
        bits: 0,
        errors: 0,
    };
    let mut next = 0u64;
    while point.bits < min_bits && point.errors < max_errors {
        let round: Vec<(u64, u64)> = (next..next + ROUND as u64)
            .into_par_iter()
            .map(|b| run_batch::<T>(cfg, ebn0_db, blocks, derive_seed(seed, b)))
            .collect::<Result<_>>()?;
        next += ROUND as u64;
        for (bits, errors) in round {
            if point.bits >= min_bits || point.errors >= max_errors {
                break;
            }
            point.bits += bits;
            point.errors += errors;
        }
    }
    Ok(point)
}

/// Raw counts per grid point; `+∞` is a noiseless point.
pub fn ber_points<T: Real>(
    cfg: &SystemConfig,
    ebn0_grid_db: &[f64],
    min_bits: u64,
    max_errors: u64,
    seed: u64,
) -> Result<Vec<BerPoint>> {
    cfg.validate()?;
    if ebn0_grid_db.is_empty() {
        return Err(Error::Parameter("empty Eb/N0 grid".into()));
    }
    if min_bits < MIN_BITS_FLOOR {
        return Err(Error::Parameter(format!(
            "min_bits {min_bits} below {MIN_BITS_FLOOR}"
        )));
    }
    if max_errors == 0 {
        return Err(Error::Parameter("max_errors must be positive".into()));
    }
    if let Some(x) = ebn0_grid_db.iter().find(|x| x.is_nan() || **x == f64::NEG_INFINITY) {
        return Err(Error::Parameter(format!("Eb/N0 grid value {x}")));
    }
    ebn0_grid_db
        .par_iter()
        .enumerate()
        .map(|(i, &x)| run_point::<T>(cfg, x, min_bits, max_errors, derive_seed(seed, i as u64)))
        .collect()
}

fn join<I: IntoIterator<Item = u64>>(v: I) -> String {
    v.into_iter().map(|n| n.to_string()).collect::<Vec<_>>().join(";")
}

/// BER against Eb/N0 as a series; per-point bit and error counts are kept in
/// the `bits` and `errors` metadata entries (`;`-separated).
pub fn ber_curve(
    cfg: &SystemConfig,
    ebn0_grid_db: &[f64],
    min_bits: u64,
    max_errors: u64,
    seed: u64,
) -> Result<MetricSeries> {
    let points = ber_points::<f64>(cfg, ebn0_grid_db, min_bits, max_errors, seed)?;
    let series = MetricSeries::new(
        format!("ber_{}_{}", cfg.scheme, cfg.modulation),
        "ebn0_db",
        "ber",
        points.iter().map(|p| p.ebn0_db).collect(),
        points.iter().map(BerPoint::ber).collect(),
    )?;
    Ok(series
        .with_meta("scheme", cfg.scheme)
        .with_meta("modulation", cfg.modulation)
        .with_meta("fft_size", cfg.fft_size)
        .with_meta("seed", seed)
        .with_meta("min_bits", min_bits)
        .with_meta("max_errors", max_errors)
        .with_meta("bits", join(points.iter().map(|p| p.bits)))
        .with_meta("errors", join(points.iter().map(|p| p.errors))))
}
