//! Real-operation counts of the IFFT stage for each scheme.

use crate::config::Scheme;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComplexityCount {
    pub scheme: Scheme,
    pub n: u64,
    pub multiplications: u64,
    pub additions: u64,
}

/// Multiplications and additions for reference size `n` (the conventional
/// IFFT size). The STC schemes run transforms of `n/2` and `n/4` points.
pub fn complexity_counts(scheme: Scheme, n: u64) -> Result<ComplexityCount> {
    if n < 8 || !n.is_power_of_two() {
        return Err(Error::Parameter(format!("n = {n} must be a power of two >= 8")));
    }
    let lg = u64::from(n.trailing_zeros());
    let (multiplications, additions) = match scheme {
        Scheme::ConventionalOfdm => (2 * n * lg - 2 * n, 3 * n * lg - n),
        Scheme::CstcOfdm => (n * (lg - 1) - n, (3 * n * (lg - 1) - n) / 2),
        Scheme::MstcOfdm => (n / 2 * (lg - 2) - n / 2, 3 * n / 4 * (lg - 2) - n / 4),
    };
    Ok(ComplexityCount {
        scheme,
        n,
        multiplications,
        additions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_size() {
        let c = |s| {
            let r = complexity_counts(s, 128).unwrap();
            (r.multiplications, r.additions)
        };
        assert_eq!(c(Scheme::ConventionalOfdm), (1536, 2560));
        assert_eq!(c(Scheme::CstcOfdm), (640, 1088));
        assert_eq!(c(Scheme::MstcOfdm), (256, 448));
    }

    #[test]
    fn invalid_sizes() {
        assert!(complexity_counts(Scheme::MstcOfdm, 4).is_err());
        assert!(complexity_counts(Scheme::MstcOfdm, 96).is_err());
    }
}
