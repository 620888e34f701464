//! Baseband link simulation of symbol-time-compressed OFDM.
//!
//! Three transceivers share one chain: conventional OFDM, C-STC-OFDM (one
//! Walsh spreading unit, half-length symbols) and M-STC-OFDM (two units on I
//! and Q, quarter-length symbols). The crate provides the codecs, a radix-2
//! FFT, CP framing, an AWGN channel and the PAPR, BER, PSD, duration and
//! complexity metrics used to compare them.
//!
//! Signal-chain types are generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix `f64` for everyday use.
//!
//! ```
//! use mstc_core::{default_config, receive, seeded_rng, transmit, BitBlock, Scheme, Waveform};
//!
//! let cfg = default_config(Scheme::MstcOfdm);
//! let payload = BitBlock::random(&mut seeded_rng(7), cfg.bits_per_block());
//! let frame: Waveform = transmit(&payload, &cfg).unwrap();
//! assert_eq!(frame.samples().len(), 80);
//! assert_eq!(receive(&frame, &cfg).unwrap(), payload);
//! ```

pub mod bits;
pub mod channel;
pub mod config;
pub mod constellation;
pub mod error;
pub mod fft;
pub mod metrics;
pub mod ofdm;
pub mod rng;
pub mod scalar;
pub mod series;
pub mod spreading;

pub use bits::{bits_to_polar, polar, polar_to_bits, BitBlock, PolarBlock};
pub use channel::{apply_awgn, ebn0_to_snr, ChannelSpec, NoiseLevel};
pub use config::{default_config, narrowband_config, parse_kv, Modulation, Scheme, SystemConfig};
pub use constellation::{demap_symbols, map_symbols, ConstellationSymbolBlock};
pub use error::{Error, Result};
pub use fft::{fft_demodulate, ifft_modulate, Radix2Fft};
pub use ofdm::{add_cp, receive, remove_cp, transmit, WaveformFrame};
pub use rng::{derive_seed, seeded_rng, RandomSource};
pub use scalar::Real;
pub use series::MetricSeries;
pub use spreading::{
    cstc_decode, cstc_encode, hadamard, mste_decode, mstc_encode, ChipMatrix, HadamardMatrix,
    SoftChipMatrix, WalshCode,
};

pub use num_complex::{Complex32, Complex64};

/// Exact duration in seconds.
pub type ExactSeconds = num_rational::Ratio<u64>;

pub type Waveform = WaveformFrame<f64>;
pub type Waveform32 = WaveformFrame<f32>;
pub type Chips = ChipMatrix<f64>;
pub type SoftChips = SoftChipMatrix<f64>;
pub type Symbols = ConstellationSymbolBlock<f64>;
pub type Fft = Radix2Fft<f64>;
