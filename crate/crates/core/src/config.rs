//! Transceiver configuration and its flat `key=value` text form.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Subcarrier spacing of the narrowband profile, Hz.
pub const SUBCARRIER_SPACING_HZ: f64 = 15_000.0;
/// Sampling rate shared by every scheme, Hz.
pub const SAMPLING_RATE_HZ: f64 = 1_920_000.0;
/// FFT size of the conventional reference system.
pub const BASE_FFT_SIZE: usize = 128;
/// Subcarriers in one 180 kHz narrowband resource block.
pub const RESOURCE_BLOCK_SUBCARRIERS: usize = 12;

/// Transceiver variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheme {
    /// Plain OFDM: one constellation symbol per subcarrier.
    ConventionalOfdm,
    /// One spreading/combining unit on the real axis; symbol time halved.
    CstcOfdm,
    /// Two units joined on I and Q; symbol time quartered.
    MstcOfdm,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::ConventionalOfdm, Scheme::CstcOfdm, Scheme::MstcOfdm];

    /// Factor by which the scheme shrinks the IFFT (and the symbol) relative to
    /// the conventional system.
    pub fn compression(self) -> usize {
        match self {
            Scheme::ConventionalOfdm => 1,
            Scheme::CstcOfdm => 2,
            Scheme::MstcOfdm => 4,
        }
    }

    /// Number of parallel bit streams fed to the encoder.
    pub fn streams(self) -> usize {
        self.compression()
    }

    /// OFDM symbols produced per encoded block: one per chip-matrix column.
    pub fn symbols_per_block(self) -> usize {
        match self {
            Scheme::ConventionalOfdm => 1,
            Scheme::CstcOfdm | Scheme::MstcOfdm => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scheme::ConventionalOfdm => "conventional",
            Scheme::CstcOfdm => "cstc",
            Scheme::MstcOfdm => "mstc",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "conventional" => Ok(Scheme::ConventionalOfdm),
            "cstc" => Ok(Scheme::CstcOfdm),
            "mstc" => Ok(Scheme::MstcOfdm),
            other => Err(Error::Parse(format!(
                "unknown scheme '{other}' (expected conventional, cstc or mstc)"
            ))),
        }
    }
}

/// Constellation used on the subcarriers of the conventional system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Modulation {
    Bpsk,
    Qam16,
}

impl Modulation {
    pub fn bits_per_symbol(self) -> usize {
        match self {
            Modulation::Bpsk => 1,
            Modulation::Qam16 => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Modulation::Bpsk => "bpsk",
            Modulation::Qam16 => "qam16",
        }
    }
}

impl fmt::Display for Modulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Modulation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "bpsk" => Ok(Modulation::Bpsk),
            "qam16" => Ok(Modulation::Qam16),
            other => Err(Error::Parse(format!(
                "unknown modulation '{other}' (expected bpsk or qam16)"
            ))),
        }
    }
}

/// Full parameterization of one transceiver variant.
///
/// `active_subcarriers` restricts data to a contiguous block of bins centred
/// on DC; `None` loads every bin of the IFFT.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig {
    pub scheme: Scheme,
    pub fft_size: usize,
    pub cp_len: usize,
    pub subcarrier_spacing_hz: f64,
    pub sampling_rate_hz: f64,
    pub modulation: Modulation,
    pub rng_seed: u64,
    pub active_subcarriers: Option<usize>,
}

/// Key names of the flat text form, in serialization order.
pub const CONFIG_KEYS: [&str; 8] = [
    "scheme",
    "fft_size",
    "cp_len",
    "subcarrier_spacing_hz",
    "sampling_rate_hz",
    "modulation",
    "rng_seed",
    "active_subcarriers",
];

/// Reference profile for `scheme`: 15 kHz spacing, 1.92 MHz sampling, BPSK,
/// IFFT of N, N/2 or N/4 (N = 128) and a cyclic prefix of a quarter symbol.
pub fn default_config(scheme: Scheme) -> SystemConfig {
    let fft_size = BASE_FFT_SIZE / scheme.compression();
    SystemConfig {
        scheme,
        fft_size,
        cp_len: fft_size / 4,
        subcarrier_spacing_hz: SUBCARRIER_SPACING_HZ,
        sampling_rate_hz: SAMPLING_RATE_HZ,
        modulation: Modulation::Bpsk,
        rng_seed: 1,
        active_subcarriers: None,
    }
}

/// Narrowband profile used for spectral-occupancy measurements.
///
/// Every scheme uses the conventional 128-point grid at 15 kHz spacing and
/// carries one 12-bit resource-block payload per encoded block: 12 BPSK
/// subcarriers for conventional OFDM, 6 for C-STC and 3 for M-STC.
pub fn narrowband_config(scheme: Scheme) -> SystemConfig {
    let base = default_config(Scheme::ConventionalOfdm);
    SystemConfig {
        scheme,
        active_subcarriers: Some(RESOURCE_BLOCK_SUBCARRIERS / scheme.streams()),
        ..base
    }
}

impl SystemConfig {
    /// Derive the configuration of `scheme` from a conventional base profile by
    /// dividing FFT size and CP length by the scheme's compression factor.
    pub fn derive(&self, scheme: Scheme) -> Result<SystemConfig> {
        let base_div = self.scheme.compression();
        let div = scheme.compression();
        let fft = self.fft_size * base_div;
        let cp = self.cp_len * base_div;
        if !fft.is_multiple_of(div) || !cp.is_multiple_of(div) {
            return Err(Error::Parameter(format!(
                "fft_size {fft} / cp_len {cp} not divisible by {div} for {scheme}"
            )));
        }
        let cfg = SystemConfig {
            scheme,
            fft_size: fft / div,
            cp_len: cp / div,
            ..self.clone()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.fft_size < 4 || !self.fft_size.is_power_of_two() {
            return Err(Error::Size {
                size: self.fft_size,
                reason: "fft_size must be a power of two >= 4",
            });
        }
        if self.cp_len > self.fft_size {
            return Err(Error::Parameter(format!(
                "cp_len {} exceeds fft_size {}",
                self.cp_len, self.fft_size
            )));
        }
        for (name, v) in [
            ("subcarrier_spacing_hz", self.subcarrier_spacing_hz),
            ("sampling_rate_hz", self.sampling_rate_hz),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Parameter(format!("{name} must be positive and finite, got {v}")));
            }
        }
        if let Some(k) = self.active_subcarriers {
            if k == 0 || k > self.fft_size {
                return Err(Error::Parameter(format!(
                    "active_subcarriers {k} outside 1..={}",
                    self.fft_size
                )));
            }
        }
        if self.scheme != Scheme::ConventionalOfdm && self.modulation != Modulation::Bpsk {
            return Err(Error::Parameter(format!(
                "{} carries polar (BPSK) payloads only",
                self.scheme
            )));
        }
        Ok(())
    }

    /// Bins carrying data in each OFDM symbol.
    pub fn data_subcarriers(&self) -> usize {
        self.active_subcarriers.unwrap_or(self.fft_size)
    }

    /// Samples per OFDM symbol including the cyclic prefix.
    pub fn symbol_len(&self) -> usize {
        self.fft_size + self.cp_len
    }

    /// Payload bits consumed by one encoded block.
    pub fn bits_per_block(&self) -> usize {
        let k = self.data_subcarriers();
        match self.scheme {
            Scheme::ConventionalOfdm => k * self.modulation.bits_per_symbol(),
            s => k * s.streams(),
        }
    }

    pub fn symbols_per_block(&self) -> usize {
        self.scheme.symbols_per_block()
    }

    /// Payload bits per CP-free body sample; converts Eb/N0 into per-sample SNR.
    pub fn bits_per_complex_sample(&self) -> f64 {
        self.bits_per_block() as f64 / (self.symbols_per_block() * self.fft_size) as f64
    }

    /// Serialize as flat `key=value` lines in [`CONFIG_KEYS`] order.
    pub fn to_kv_string(&self) -> String {
        let active = match self.active_subcarriers {
            Some(k) => k.to_string(),
            None => "all".to_string(),
        };
        format!(
            "scheme={}\nfft_size={}\ncp_len={}\nsubcarrier_spacing_hz={}\nsampling_rate_hz={}\nmodulation={}\nrng_seed={}\nactive_subcarriers={}\n",
            self.scheme,
            self.fft_size,
            self.cp_len,
            self.subcarrier_spacing_hz,
            self.sampling_rate_hz,
            self.modulation,
            self.rng_seed,
            active
        )
    }

    /// Parse flat `key=value` text. Keys absent from the text keep the values
    /// of the default profile of the named scheme (conventional if unnamed).
    pub fn from_kv_str(text: &str) -> Result<SystemConfig> {
        let pairs = parse_kv(text)?;
        let scheme = match pairs.iter().find(|(k, _)| k == "scheme") {
            Some((_, v)) => v.parse()?,
            None => Scheme::ConventionalOfdm,
        };
        let mut cfg = default_config(scheme);
        for (k, v) in &pairs {
            cfg.set(k, v)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Set one field from its text form. Unknown keys are rejected.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |e: &dyn fmt::Display| Error::Parse(format!("{key}={value}: {e}"));
        let value = value.trim();
        match key {
            "scheme" => self.scheme = value.parse()?,
            "fft_size" => self.fft_size = value.parse().map_err(|e| bad(&e))?,
            "cp_len" => self.cp_len = value.parse().map_err(|e| bad(&e))?,
            "subcarrier_spacing_hz" => {
                self.subcarrier_spacing_hz = value.parse().map_err(|e| bad(&e))?
            }
            "sampling_rate_hz" => self.sampling_rate_hz = value.parse().map_err(|e| bad(&e))?,
            "modulation" => self.modulation = value.parse()?,
            "rng_seed" => self.rng_seed = value.parse().map_err(|e| bad(&e))?,
            "active_subcarriers" => {
                self.active_subcarriers = if value.eq_ignore_ascii_case("all") {
                    None
                } else {
                    Some(value.parse().map_err(|e| bad(&e))?)
                }
            }
            other => return Err(Error::Parse(format!("unknown config key '{other}'"))),
        }
        Ok(())
    }
}

/// Split flat `key=value` text into pairs. Blank lines and lines starting with
/// `#` are skipped; duplicate keys are an error.
pub fn parse_kv(text: &str) -> Result<Vec<(String, String)>> {
    let mut out: Vec<(String, String)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("line {}: expected key=value", lineno + 1)))?;
        let k = k.trim();
        if k.is_empty() {
            return Err(Error::Parse(format!("line {}: empty key", lineno + 1)));
        }
        if out.iter().any(|(seen, _)| seen == k) {
            return Err(Error::Parse(format!("line {}: duplicate key '{k}'", lineno + 1)));
        }
        out.push((k.to_string(), v.trim().to_string()));
    }
    Ok(out)
}
