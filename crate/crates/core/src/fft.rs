//! Iterative radix-2 FFT with unitary scaling.
//!
//! Both directions scale by `1/√N`, so the transform pair preserves energy
//! (Parseval) and a unit impulse in frequency maps to a flat `1/√N` sequence.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Precomputed twiddles and bit-reversal permutation for one transform size.
#[derive(Debug, Clone)]
pub struct Radix2Fft<T> {
    size: usize,
    /// `exp(-2πik/N)` for `k < N/2`.
    twiddles: Vec<Complex<T>>,
    bitrev: Vec<usize>,
    scale: T,
}

impl<T: Real> Radix2Fft<T> {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 || !size.is_power_of_two() {
            return Err(Error::Size {
                size,
                reason: "FFT size must be a power of two",
            });
        }
        let bits = size.trailing_zeros();
        let bitrev = (0..size)
            .map(|i| if bits == 0 { 0 } else { i.reverse_bits() >> (usize::BITS - bits) })
            .collect();
        let n = T::of_usize(size);
        let twiddles = (0..size / 2)
            .map(|k| {
                let phase = -T::TAU() * T::of_usize(k) / n;
                Complex::new(phase.cos(), phase.sin())
            })
            .collect();
        Ok(Radix2Fft {
            size,
            twiddles,
            bitrev,
            scale: n.sqrt().recip(),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn check(&self, len: usize) -> Result<()> {
        if len != self.size {
            return Err(Error::Dimension(format!(
                "buffer of length {len} for a {}-point transform",
                self.size
            )));
        }
        Ok(())
    }

    fn transform(&self, buf: &mut [Complex<T>], inverse: bool) {
        let n = self.size;
        for i in 0..n {
            let j = self.bitrev[i];
            if i < j {
                buf.swap(i, j);
            }
        }
        let mut half = 1;
        while half < n {
            let stride = n / (2 * half);
            for start in (0..n).step_by(2 * half) {
                for k in 0..half {
                    let mut w = self.twiddles[k * stride];
                    if inverse {
                        w = w.conj();
                    }
                    let a = buf[start + k];
                    let b = buf[start + k + half] * w;
                    buf[start + k] = a + b;
                    buf[start + k + half] = a - b;
                }
            }
            half *= 2;
        }
        for v in buf.iter_mut() {
            *v *= self.scale;
        }
    }

    /// In-place forward DFT, `X[k] = N^{-1/2} Σ x[n] e^{-2πikn/N}`.
    pub fn forward(&self, buf: &mut [Complex<T>]) -> Result<()> {
        self.check(buf.len())?;
        self.transform(buf, false);
        Ok(())
    }

    /// In-place inverse DFT, `x[n] = N^{-1/2} Σ X[k] e^{+2πikn/N}`.
    pub fn inverse(&self, buf: &mut [Complex<T>]) -> Result<()> {
        self.check(buf.len())?;
        self.transform(buf, true);
        Ok(())
    }
}

/// Subcarrier spectrum to time samples.
pub fn ifft_modulate<T: Real>(spectrum: &[Complex<T>], size: usize) -> Result<Vec<Complex<T>>> {
    let plan = Radix2Fft::new(size)?;
    let mut buf = spectrum.to_vec();
    plan.inverse(&mut buf)?;
    Ok(buf)
}

/// Time samples to subcarrier spectrum.
pub fn fft_demodulate<T: Real>(samples: &[Complex<T>], size: usize) -> Result<Vec<Complex<T>>> {
    let plan = Radix2Fft::new(size)?;
    let mut buf = samples.to_vec();
    plan.forward(&mut buf)?;
    Ok(buf)
}
