//! Closed-form AWGN error rates and curve read-off helpers.

use statrs::function::erf::erfc;

use crate::config::Modulation;
use crate::error::{Error, Result};

/// Gaussian tail probability `Q(x) = ½·erfc(x/√2)`.
pub fn q_function(x: f64) -> f64 {
    0.5 * erfc(x / std::f64::consts::SQRT_2)
}

/// Bit error rate over AWGN at `ebn0_db`: BPSK `Q(√(2γ))`; Gray 16-QAM
/// `¾Q(a) + ½Q(3a) − ¼Q(5a)` with `a = √(4γ/5)`.
pub fn ber_theory(modulation: Modulation, ebn0_db: f64) -> f64 {
    let g = 10f64.powf(ebn0_db / 10.0);
    match modulation {
        Modulation::Bpsk => q_function((2.0 * g).sqrt()),
        Modulation::Qam16 => {
            let a = (0.8 * g).sqrt();
            0.75 * q_function(a) + 0.5 * q_function(3.0 * a) - 0.25 * q_function(5.0 * a)
        }
    }
}

/// Eb/N0 (dB) at which the theoretical BER equals `target`, by bisection.
pub fn ebn0_for_ber(modulation: Modulation, target: f64) -> Result<f64> {
    if !(target > 0.0 && target < ber_theory(modulation, -20.0)) {
        return Err(Error::Parameter(format!("target BER {target} out of range")));
    }
    let (mut lo, mut hi) = (-20.0, 60.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if ber_theory(modulation, mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// First `x` where a decreasing curve falls to `target`, interpolating
/// linearly in `x` against `log10(y)`. Falls back to linear `y` when the
/// lower neighbour is zero. `None` if the curve never brackets `target`.
pub fn x_at_y_loglinear(x: &[f64], y: &[f64], target: f64) -> Option<f64> {
    if target <= 0.0 {
        return None;
    }
    for i in 0..x.len().min(y.len()).saturating_sub(1) {
        let (y0, y1) = (y[i], y[i + 1]);
        if y0 >= target && target >= y1 && y0 > y1 {
            let t = if y1 > 0.0 {
                (y0.log10() - target.log10()) / (y0.log10() - y1.log10())
            } else {
                (y0 - target) / (y0 - y1)
            };
            return Some(x[i] + t * (x[i + 1] - x[i]));
        }
        if y0 == target {
            return Some(x[i]);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_function_reference_points() {
        assert!((q_function(0.0) - 0.5).abs() < 1e-15);
        for (x, q) in [(1.0, 0.158_655_253_931_457_07), (3.0, 1.349_898_031_630_096e-3), (5.0, 2.866_515_718_791_945e-7)] {
            assert!((q_function(x) / q - 1.0).abs() < 1e-9, "Q({x}) = {:e}", q_function(x));
        }
    }

    #[test]
    fn bpsk_reference() {
        let p = ber_theory(Modulation::Bpsk, 4.0);
        assert!((p - 1.25e-2).abs() < 0.01e-2, "{p}");
        let at6 = ebn0_for_ber(Modulation::Bpsk, 1e-6).unwrap();
        assert!((at6 - 10.53).abs() < 0.01, "{at6}");
    }

    #[test]
    fn qam16_gap() {
        let q = ebn0_for_ber(Modulation::Qam16, 1e-6).unwrap();
        assert!((q - 14.4).abs() < 0.1, "{q}");
        let gap3 = ebn0_for_ber(Modulation::Qam16, 1e-3).unwrap() - ebn0_for_ber(Modulation::Bpsk, 1e-3).unwrap();
        assert!(gap3 > 3.5 && gap3 < 3.9, "{gap3}");
    }

    #[test]
    fn loglinear_readoff() {
        let x = [0.0, 1.0, 2.0];
        let y = [1e-1, 1e-3, 1e-5];
        assert!((x_at_y_loglinear(&x, &y, 1e-2).unwrap() - 0.5).abs() < 1e-12);
        assert!((x_at_y_loglinear(&x, &y, 1e-4).unwrap() - 1.5).abs() < 1e-12);
        assert_eq!(x_at_y_loglinear(&x, &y, 1e-7), None);
        let z = [1.0, 0.5, 0.0];
        assert!((x_at_y_loglinear(&x, &z, 0.25).unwrap() - 1.5).abs() < 1e-12);
    }
}
