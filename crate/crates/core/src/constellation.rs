//! BPSK and Gray-mapped 16-QAM constellations.

use num_complex::Complex;

use crate::bits::{polar, BitBlock};
use crate::config::Modulation;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Complex constellation points with the modulation that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstellationSymbolBlock<T> {
    pub symbols: Vec<Complex<T>>,
    pub modulation: Modulation,
}

/// Gray-coded 4-PAM level for one axis: 00→-3, 01→-1, 11→+1, 10→+3.
fn pam4_level(msb: u8, lsb: u8) -> f64 {
    match (msb, lsb) {
        (0, 0) => -3.0,
        (0, 1) => -1.0,
        (1, 1) => 1.0,
        _ => 3.0,
    }
}

fn qam16_scale<T: Real>() -> T {
    T::of(10.0).sqrt().recip()
}

/// Map bits to constellation points.
///
/// BPSK places the polar image on the real axis. 16-QAM takes bits in groups
/// of four, `(i_msb, i_lsb, q_msb, q_lsb)`, Gray-maps each pair onto
/// `{±1, ±3}` and scales by `1/√10` for unit mean energy.
pub fn map_symbols<T: Real>(bits: &BitBlock, modulation: Modulation) -> Result<ConstellationSymbolBlock<T>> {
    let b = bits.as_slice();
    let symbols = match modulation {
        Modulation::Bpsk => b
            .iter()
            .map(|&bit| Complex::new(T::of(polar(bit) as f64), T::zero()))
            .collect(),
        Modulation::Qam16 => {
            if !b.len().is_multiple_of(4) {
                return Err(Error::Framing(format!(
                    "16-QAM needs a multiple of 4 bits, got {}",
                    b.len()
                )));
            }
            let s = qam16_scale::<T>();
            b.chunks_exact(4)
                .map(|q| {
                    Complex::new(
                        T::of(pam4_level(q[0], q[1])) * s,
                        T::of(pam4_level(q[2], q[3])) * s,
                    )
                })
                .collect()
        }
    };
    Ok(ConstellationSymbolBlock { symbols, modulation })
}

/// Hard-decision demapping (minimum distance), inverse of [`map_symbols`].
pub fn demap_symbols<T: Real>(symbols: &[Complex<T>], modulation: Modulation) -> BitBlock {
    let mut out = Vec::with_capacity(symbols.len() * modulation.bits_per_symbol());
    match modulation {
        Modulation::Bpsk => out.extend(symbols.iter().map(|s| u8::from(s.re > T::zero()))),
        Modulation::Qam16 => {
            let two = T::of(2.0) * qam16_scale::<T>();
            let axis = |v: T, out: &mut Vec<u8>| {
                out.push(u8::from(v > T::zero()));
                out.push(u8::from(v.abs() < two));
            };
            for s in symbols {
                axis(s.re, &mut out);
                axis(s.im, &mut out);
            }
        }
    }
    BitBlock::new(out).expect("decisions are binary")
}
