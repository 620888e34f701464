//! Peak-to-average power ratio and its empirical CCDF.

use num_complex::Complex;
use rayon::prelude::*;

use crate::bits::BitBlock;
use crate::config::SystemConfig;
use crate::error::{Error, Result};
use crate::metrics::theory::x_at_y_loglinear;
use crate::ofdm::transmit;
use crate::rng::{derive_seed, seeded_rng};
use crate::scalar::Real;
use crate::series::MetricSeries;

/// Spacing of the CCDF threshold grid.
pub const PAPR_GRID_STEP_DB: f64 = 0.1;
/// Last threshold of the CCDF grid.
pub const PAPR_GRID_MAX_DB: f64 = 14.0;

/// Blocks generated per worker task.
const BLOCKS_PER_TASK: usize = 256;

/// PAPR of one symbol, dB. Never negative.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PaprSample(f64);

impl PaprSample {
    pub fn new(value_db: f64) -> Result<Self> {
        if value_db.is_nan() || value_db < 0.0 {
            return Err(Error::Parameter(format!("PAPR {value_db} dB is negative")));
        }
        Ok(PaprSample(value_db))
    }

    pub fn value_db(self) -> f64 {
        self.0
    }
}

/// `10·log10(max|x|² / mean|x|²)`.
pub fn papr_db<T: Real>(samples: &[Complex<T>]) -> Result<PaprSample> {
    if samples.is_empty() {
        return Err(Error::UndefinedPower);
    }
    let (mut peak, mut sum) = (0.0f64, 0.0f64);
    for s in samples {
        let p = s.norm_sqr().as_f64();
        peak = peak.max(p);
        sum += p;
    }
    if sum == 0.0 {
        return Err(Error::UndefinedPower);
    }
    let mean = sum / samples.len() as f64;
    // Rounding can put a constant signal's peak a hair under its mean.
    PaprSample::new((10.0 * (peak / mean).log10()).max(0.0))
}

/// Per-symbol PAPR of `symbols` random OFDM symbols (CP-free bodies).
pub fn papr_samples<T: Real>(cfg: &SystemConfig, symbols: usize, seed: u64) -> Result<Vec<f64>> {
    if symbols == 0 {
        return Err(Error::Parameter("PAPR needs at least one symbol".into()));
    }
    cfg.validate()?;
    let spb = cfg.symbols_per_block();
    let blocks = symbols.div_ceil(spb);
    let tasks = blocks.div_ceil(BLOCKS_PER_TASK);
    let per_task: Vec<Vec<f64>> = (0..tasks)
        .into_par_iter()
        .map(|t| {
            let n = BLOCKS_PER_TASK.min(blocks - t * BLOCKS_PER_TASK);
            let mut rng = seeded_rng(derive_seed(seed, t as u64));
            let payload = BitBlock::random(&mut rng, n * cfg.bits_per_block());
            let frame = transmit::<T>(&payload, cfg)?;
            frame
                .iter_bodies()
                .map(|b| papr_db(b).map(PaprSample::value_db))
                .collect()
        })
        .collect::<Result<_>>()?;
    let mut out: Vec<f64> = per_task.into_iter().flatten().collect();
    out.truncate(symbols);
    Ok(out)
}

/// Empirical `Pr(PAPR > γ)` over `trials` symbols on the 0–14 dB grid.
pub fn papr_ccdf(cfg: &SystemConfig, trials: usize, seed: u64) -> Result<MetricSeries> {
    let mut values = papr_samples::<f64>(cfg, trials, seed)?;
    values.sort_by(f64::total_cmp);
    let steps = (PAPR_GRID_MAX_DB / PAPR_GRID_STEP_DB).round() as usize;
    let x: Vec<f64> = (0..=steps).map(|i| i as f64 * PAPR_GRID_STEP_DB).collect();
    let n = values.len() as f64;
    let y = x
        .iter()
        .map(|&g| {
            let at_or_below = values.partition_point(|&v| v <= g);
            (values.len() - at_or_below) as f64 / n
        })
        .collect();
    Ok(
        MetricSeries::new(format!("papr_ccdf_{}", cfg.scheme), "papr_db", "ccdf", x, y)?
            .with_meta("scheme", cfg.scheme)
            .with_meta("fft_size", cfg.fft_size)
            .with_meta("seed", seed)
            .with_meta("trials", trials),
    )
}

/// PAPR threshold at which the CCDF falls to `level`.
pub fn papr_at_ccdf(ccdf: &MetricSeries, level: f64) -> Option<f64> {
    x_at_y_loglinear(&ccdf.x, &ccdf.y, level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{default_config, Scheme};
    use crate::fft::ifft_modulate;
    use num_complex::Complex64;

    #[test]
    fn closed_form_cases() {
        let c = vec![Complex64::new(0.3, -0.4); 16];
        assert_eq!(papr_db(&c).unwrap().value_db(), 0.0);
        let mut imp = vec![Complex64::new(0.0, 0.0); 128];
        imp[5] = Complex64::new(1.0, 0.0);
        let expected = 10.0 * 128f64.log10();
        assert!((papr_db(&imp).unwrap().value_db() - expected).abs() < 1e-12);
        let ones = ifft_modulate(&vec![Complex64::new(1.0, 0.0); 128], 128).unwrap();
        assert!((papr_db(&ones).unwrap().value_db() - expected).abs() < 1e-9);
        assert!(matches!(papr_db::<f64>(&[Complex64::new(0.0, 0.0)]), Err(Error::UndefinedPower)));
        assert!(matches!(papr_db::<f64>(&[]), Err(Error::UndefinedPower)));
    }

    #[test]
    fn ccdf_shape_and_determinism() {
        let cfg = default_config(Scheme::MstcOfdm);
        let a = papr_ccdf(&cfg, 1001, 4).unwrap();
        assert_eq!(a, papr_ccdf(&cfg, 1001, 4).unwrap());
        assert_eq!(a.len(), 141);
        assert!((a.y[0] - 1.0).abs() <= 1.0 / 1001.0);
        assert!(a.y.windows(2).all(|w| w[1] <= w[0]));
        assert!(a.y.iter().all(|&v| (0.0..=1.0).contains(&v)));
        assert_eq!(a.meta["trials"], "1001");
        assert!(papr_ccdf(&cfg, 0, 4).is_err());
    }

    #[test]
    fn sample_count_is_exact() {
        let cfg = default_config(Scheme::CstcOfdm);
        assert_eq!(papr_samples::<f64>(&cfg, 777, 1).unwrap().len(), 777);
    }
}
