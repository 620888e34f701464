//! OFDM framing and the transmit/receive chains of the three schemes.
//!
//! A payload is cut into blocks of [`SystemConfig::bits_per_block`] bits.
//! Conventional OFDM maps one block onto the data subcarriers of one symbol.
//! The STC schemes split a block into 2 or 4 contiguous streams of `K` bits
//! (`K` data subcarriers), encode them into a `K×2` chip matrix and send each
//! chip column as one compressed OFDM symbol.
//!
//! Data value `m` of a symbol goes to bin `(m - K/2) mod N`, a block of `K`
//! bins centred on DC. With `K = N` this is a permutation of all bins.

use num_complex::Complex;

use crate::bits::BitBlock;
use crate::config::{Scheme, SystemConfig};
use crate::constellation::{demap_symbols, map_symbols};
use crate::error::{Error, Result};
use crate::fft::Radix2Fft;
use crate::scalar::Real;
use crate::spreading::{cstc_decode, cstc_encode, mste_decode, mstc_encode, SoftChipMatrix};

/// Prepend the last `cp_len` samples of `body`.
pub fn add_cp<T: Copy>(body: &[T], cp_len: usize) -> Result<Vec<T>> {
    if cp_len > body.len() {
        return Err(Error::Framing(format!(
            "cyclic prefix {cp_len} longer than body {}",
            body.len()
        )));
    }
    let mut out = Vec::with_capacity(body.len() + cp_len);
    out.extend_from_slice(&body[body.len() - cp_len..]);
    out.extend_from_slice(body);
    Ok(out)
}

/// Strip the prefix from one `fft_size + cp_len` symbol.
pub fn remove_cp<T: Copy>(symbol: &[T], fft_size: usize, cp_len: usize) -> Result<Vec<T>> {
    if cp_len > fft_size {
        return Err(Error::Framing(format!(
            "cyclic prefix {cp_len} longer than body {fft_size}"
        )));
    }
    if symbol.len() != fft_size + cp_len {
        return Err(Error::Framing(format!(
            "symbol of {} samples, expected {}",
            symbol.len(),
            fft_size + cp_len
        )));
    }
    Ok(symbol[cp_len..].to_vec())
}

/// Time-domain samples of consecutive OFDM symbols, prefixes included.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveformFrame<T> {
    samples: Vec<Complex<T>>,
    fft_size: usize,
    cp_len: usize,
    symbol_count: usize,
    sampling_rate_hz: f64,
}

impl<T: Real> WaveformFrame<T> {
    pub fn new(
        samples: Vec<Complex<T>>,
        fft_size: usize,
        cp_len: usize,
        sampling_rate_hz: f64,
    ) -> Result<Self> {
        let sym = fft_size + cp_len;
        if fft_size == 0 || cp_len > fft_size {
            return Err(Error::Framing(format!(
                "invalid symbol layout fft_size={fft_size}, cp_len={cp_len}"
            )));
        }
        if !samples.len().is_multiple_of(sym) {
            return Err(Error::Framing(format!(
                "{} samples is not a whole number of {sym}-sample symbols",
                samples.len()
            )));
        }
        if !(sampling_rate_hz.is_finite() && sampling_rate_hz > 0.0) {
            return Err(Error::Parameter(format!("sampling rate {sampling_rate_hz}")));
        }
        Ok(WaveformFrame {
            symbol_count: samples.len() / sym,
            samples,
            fft_size,
            cp_len,
            sampling_rate_hz,
        })
    }

    pub fn samples(&self) -> &[Complex<T>] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex<T>> {
        self.samples
    }

    /// Same layout with replaced samples (e.g. after a channel).
    pub fn with_samples(&self, samples: Vec<Complex<T>>) -> Result<Self> {
        if samples.len() != self.samples.len() {
            return Err(Error::Dimension(format!(
                "{} replacement samples for a frame of {}",
                samples.len(),
                self.samples.len()
            )));
        }
        Ok(WaveformFrame { samples, ..self.clone() })
    }

    pub fn fft_size(&self) -> usize {
        self.fft_size
    }

    pub fn cp_len(&self) -> usize {
        self.cp_len
    }

    pub fn symbol_count(&self) -> usize {
        self.symbol_count
    }

    pub fn sampling_rate_hz(&self) -> f64 {
        self.sampling_rate_hz
    }

    pub fn symbol_len(&self) -> usize {
        self.fft_size + self.cp_len
    }

    /// Duration of the whole frame in seconds.
    pub fn duration_s(&self) -> f64 {
        self.samples.len() as f64 / self.sampling_rate_hz
    }

    /// Symbol `i` with its prefix.
    pub fn symbol(&self, i: usize) -> &[Complex<T>] {
        let n = self.symbol_len();
        &self.samples[i * n..(i + 1) * n]
    }

    /// Symbol `i` without its prefix.
    pub fn body(&self, i: usize) -> &[Complex<T>] {
        &self.symbol(i)[self.cp_len..]
    }

    pub fn iter_bodies(&self) -> impl Iterator<Item = &[Complex<T>]> + '_ {
        (0..self.symbol_count).map(move |i| self.body(i))
    }

    /// The frame with every prefix removed.
    pub fn bodies(&self) -> WaveformFrame<T> {
        let samples = self.iter_bodies().flatten().copied().collect();
        WaveformFrame {
            samples,
            fft_size: self.fft_size,
            cp_len: 0,
            symbol_count: self.symbol_count,
            sampling_rate_hz: self.sampling_rate_hz,
        }
    }

    /// Mean `|x|²` over the CP-free bodies.
    pub fn body_power(&self) -> f64 {
        let n = self.symbol_count * self.fft_size;
        if n == 0 {
            return 0.0;
        }
        self.iter_bodies()
            .flatten()
            .map(|s| s.norm_sqr().as_f64())
            .sum::<f64>()
            / n as f64
    }
}

/// FFT bin carrying data value `m` of `k` on an `n`-point grid.
pub fn subcarrier_bin(m: usize, k: usize, n: usize) -> usize {
    (m + n - k / 2) % n
}

/// Modulator state reused across the symbols of one call.
struct SymbolCodec<'a, T> {
    cfg: &'a SystemConfig,
    plan: Radix2Fft<T>,
    bins: Vec<usize>,
}

impl<'a, T: Real> SymbolCodec<'a, T> {
    fn new(cfg: &'a SystemConfig) -> Result<Self> {
        cfg.validate()?;
        let k = cfg.data_subcarriers();
        Ok(SymbolCodec {
            cfg,
            plan: Radix2Fft::new(cfg.fft_size)?,
            bins: (0..k).map(|m| subcarrier_bin(m, k, cfg.fft_size)).collect(),
        })
    }

    /// One symbol with prefix, appended to `out`.
    fn modulate(&self, data: &[Complex<T>], out: &mut Vec<Complex<T>>) {
        let mut spec = vec![Complex::new(T::zero(), T::zero()); self.cfg.fft_size];
        for (&b, &d) in self.bins.iter().zip(data) {
            spec[b] = d;
        }
        self.plan.inverse(&mut spec).expect("spectrum sized to plan");
        out.extend_from_slice(&spec[self.cfg.fft_size - self.cfg.cp_len..]);
        out.extend_from_slice(&spec);
    }

    fn demodulate(&self, body: &[Complex<T>]) -> Vec<Complex<T>> {
        let mut buf = body.to_vec();
        self.plan.forward(&mut buf).expect("body sized to plan");
        self.bins.iter().map(|&b| buf[b]).collect()
    }
}

fn stream(bits: &[u8], j: usize, k: usize) -> BitBlock {
    BitBlock::new(bits[j * k..(j + 1) * k].to_vec()).expect("slice of a valid block")
}

/// Payload to baseband waveform.
pub fn transmit<T: Real>(payload: &BitBlock, cfg: &SystemConfig) -> Result<WaveformFrame<T>> {
    let codec = SymbolCodec::<T>::new(cfg)?;
    let block = cfg.bits_per_block();
    if payload.is_empty() || !payload.len().is_multiple_of(block) {
        return Err(Error::Framing(format!(
            "payload of {} bits is not a positive multiple of the {block}-bit {} block",
            payload.len(),
            cfg.scheme
        )));
    }
    let k = cfg.data_subcarriers();
    let blocks = payload.len() / block;
    let mut samples = Vec::with_capacity(blocks * cfg.symbols_per_block() * cfg.symbol_len());
    for bits in payload.as_slice().chunks_exact(block) {
        match cfg.scheme {
            Scheme::ConventionalOfdm => {
                let b = BitBlock::new(bits.to_vec()).expect("slice of a valid block");
                let syms = map_symbols::<T>(&b, cfg.modulation)?;
                codec.modulate(&syms.symbols, &mut samples);
            }
            Scheme::CstcOfdm => {
                let chips = cstc_encode::<T>(&stream(bits, 0, k), &stream(bits, 1, k))?;
                codec.modulate(&chips.column(0), &mut samples);
                codec.modulate(&chips.column(1), &mut samples);
            }
            Scheme::MstcOfdm => {
                let chips = mstc_encode::<T>(
                    &stream(bits, 0, k),
                    &stream(bits, 1, k),
                    &stream(bits, 2, k),
                    &stream(bits, 3, k),
                )?;
                codec.modulate(&chips.column(0), &mut samples);
                codec.modulate(&chips.column(1), &mut samples);
            }
        }
    }
    WaveformFrame::new(samples, cfg.fft_size, cfg.cp_len, cfg.sampling_rate_hz)
}

/// Baseband waveform to hard-decided payload bits, in transmit order.
pub fn receive<T: Real>(frame: &WaveformFrame<T>, cfg: &SystemConfig) -> Result<BitBlock> {
    let codec = SymbolCodec::<T>::new(cfg)?;
    if frame.fft_size() != cfg.fft_size || frame.cp_len() != cfg.cp_len {
        return Err(Error::Framing(format!(
            "frame layout {}+{} does not match config {}+{}",
            frame.fft_size(),
            frame.cp_len(),
            cfg.fft_size,
            cfg.cp_len
        )));
    }
    let spb = cfg.symbols_per_block();
    if !frame.symbol_count().is_multiple_of(spb) {
        return Err(Error::Framing(format!(
            "{} symbols is not a whole number of {spb}-symbol blocks",
            frame.symbol_count()
        )));
    }
    let mut bits = Vec::with_capacity(frame.symbol_count() / spb * cfg.bits_per_block());
    for blk in 0..frame.symbol_count() / spb {
        let first = codec.demodulate(frame.body(blk * spb));
        match cfg.scheme {
            Scheme::ConventionalOfdm => {
                bits.extend(demap_symbols(&first, cfg.modulation).into_inner());
            }
            Scheme::CstcOfdm => {
                let second = codec.demodulate(frame.body(blk * spb + 1));
                let (a, b) = cstc_decode(&SoftChipMatrix::from_columns(&first, &second)?);
                bits.extend(a.into_inner());
                bits.extend(b.into_inner());
            }
            Scheme::MstcOfdm => {
                let second = codec.demodulate(frame.body(blk * spb + 1));
                let (a, b, c, d) = mste_decode(&SoftChipMatrix::from_columns(&first, &second)?);
                for s in [a, b, c, d] {
                    bits.extend(s.into_inner());
                }
            }
        }
    }
    BitBlock::new(bits)
}
