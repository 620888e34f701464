//! OFDM symbol duration including the cyclic prefix.

use num_rational::Ratio;

use crate::config::SystemConfig;
use crate::error::{Error, Result};

/// `(fft_size + cp_len) / sampling_rate_hz`, seconds.
pub fn symbol_duration_s(cfg: &SystemConfig) -> f64 {
    cfg.symbol_len() as f64 / cfg.sampling_rate_hz
}

/// Exact duration in seconds; requires an integral sampling rate.
pub fn symbol_duration_exact(cfg: &SystemConfig) -> Result<Ratio<u64>> {
    let fs = cfg.sampling_rate_hz;
    if !(fs.is_finite() && fs >= 1.0 && fs.fract() == 0.0 && fs < u64::MAX as f64) {
        return Err(Error::Parameter(format!(
            "sampling rate {fs} Hz is not an integer number of hertz"
        )));
    }
    Ok(Ratio::new(cfg.symbol_len() as u64, fs as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{default_config, Scheme};

    #[test]
    fn default_durations() {
        let us = |s| symbol_duration_s(&default_config(s)) * 1e6;
        assert!((us(Scheme::ConventionalOfdm) - 83.333_333).abs() < 1e-5);
        assert!((us(Scheme::CstcOfdm) - 41.666_667).abs() < 1e-5);
        assert!((us(Scheme::MstcOfdm) - 20.833_333).abs() < 1e-5);
        let conv = symbol_duration_exact(&default_config(Scheme::ConventionalOfdm)).unwrap();
        assert_eq!(conv, Ratio::new(1, 12_000));
    }

    #[test]
    fn fractional_rate_rejected() {
        let mut c = default_config(Scheme::MstcOfdm);
        c.sampling_rate_hz = 1.5;
        assert!(symbol_duration_exact(&c).is_err());
    }
}
