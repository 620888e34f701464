//! Complex AWGN channel calibrated in Eb/N0 or per-sample SNR.

use num_complex::Complex;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::ofdm::WaveformFrame;
use crate::rng::seeded_rng;
use crate::scalar::Real;

/// Noise level of a [`ChannelSpec`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseLevel {
    EbN0Db(f64),
    SnrDb(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSpec {
    pub level: NoiseLevel,
    /// Payload bits per CP-free body sample.
    pub bits_per_complex_sample: f64,
    pub rng_seed: u64,
}

impl ChannelSpec {
    pub fn ebn0_db(ebn0_db: f64, bits_per_complex_sample: f64, rng_seed: u64) -> Self {
        ChannelSpec {
            level: NoiseLevel::EbN0Db(ebn0_db),
            bits_per_complex_sample,
            rng_seed,
        }
    }

    pub fn snr_db(snr_db: f64, rng_seed: u64) -> Self {
        ChannelSpec {
            level: NoiseLevel::SnrDb(snr_db),
            bits_per_complex_sample: 1.0,
            rng_seed,
        }
    }

    /// Per-sample SNR in dB. `+∞` means a noiseless channel.
    pub fn effective_snr_db(&self) -> Result<f64> {
        let bpcs = self.bits_per_complex_sample;
        if !(bpcs.is_finite() && bpcs > 0.0) {
            return Err(Error::Parameter(format!(
                "bits_per_complex_sample must be positive and finite, got {bpcs}"
            )));
        }
        let db = match self.level {
            NoiseLevel::EbN0Db(x) => ebn0_to_snr(x, bpcs)?,
            NoiseLevel::SnrDb(x) => x,
        };
        if db.is_nan() || db == f64::NEG_INFINITY {
            return Err(Error::Parameter(format!("noise level {db} dB")));
        }
        Ok(db)
    }
}

/// `snr_db = ebn0_db + 10·log10(bits_per_complex_sample)`.
pub fn ebn0_to_snr(ebn0_db: f64, bits_per_complex_sample: f64) -> Result<f64> {
    if !(bits_per_complex_sample.is_finite() && bits_per_complex_sample > 0.0) {
        return Err(Error::Parameter(format!(
            "bits_per_complex_sample must be positive, got {bits_per_complex_sample}"
        )));
    }
    Ok(ebn0_db + 10.0 * bits_per_complex_sample.log10())
}

/// Unit-variance circular complex Gaussian samples drawn from `seed`.
pub fn unit_noise(seed: u64, len: usize) -> Vec<Complex<f64>> {
    let mut rng = seeded_rng(seed);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    (0..len)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex::new(re * s, im * s)
        })
        .collect()
}

/// Add noise of variance `σ² = P / snr` per complex sample, where `P` is the
/// frame's measured mean power over the CP-free bodies.
pub fn apply_awgn<T: Real>(frame: &WaveformFrame<T>, spec: &ChannelSpec) -> Result<WaveformFrame<T>> {
    if frame.samples().is_empty() {
        return Err(Error::Parameter("empty frame".into()));
    }
    let snr_db = spec.effective_snr_db()?;
    if snr_db == f64::INFINITY {
        return Ok(frame.clone());
    }
    let power = frame.body_power();
    if power <= 0.0 {
        return Err(Error::UndefinedPower);
    }
    let sigma = (power / 10f64.powf(snr_db / 10.0)).sqrt();
    let noisy = frame
        .samples()
        .iter()
        .zip(unit_noise(spec.rng_seed, frame.samples().len()))
        .map(|(x, n)| x + Complex::new(T::of(n.re * sigma), T::of(n.im * sigma)))
        .collect();
    frame.with_samples(noisy)
}
