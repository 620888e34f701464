//! Walsh spreading and the symbol-time codecs.
//!
//! Each *unit* takes two polar streams `b0`, `b1` of length `L`, spreads them
//! with the length-2 Walsh codes `c0 = [1, 1]` and `c1 = [1, -1]`, and combines
//! the spread chips by halved addition:
//!
//! ```text
//! x[m] = ½ · [ b0[m] + b1[m],  b0[m] - b1[m] ]      (one L×2 row per bit pair)
//! ```
//!
//! The M-STC encoder runs two units and joins them on the I and Q axes,
//! `X = x¹ + j·x²`. The C-STC baseline is the first unit alone on the real
//! axis. Column 0 of the chip matrix is the first chip epoch, column 1 the
//! second.
//!
//! The matched receivers (M-STE, C-STC decode) multiply each received row by
//! `c0` and `c1`, sum the two chips (`D`), map `(D + 1) / 2` and decide bit 1
//! when the result is strictly greater than 0.5.

use num_complex::Complex;

use crate::bits::{polar, BitBlock};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// ±1 Hadamard matrix of Sylvester type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HadamardMatrix {
    order: usize,
    entries: Vec<i8>,
}

/// Sylvester construction `H(2n) = [[H, H], [H, -H]]`, `H(1) = [1]`.
pub fn hadamard(order: usize) -> Result<HadamardMatrix> {
    if order == 0 || !order.is_power_of_two() {
        return Err(Error::Size {
            size: order,
            reason: "Hadamard order must be a power of two",
        });
    }
    let mut entries = vec![1i8];
    let mut n = 1;
    while n < order {
        let mut next = vec![0i8; 4 * n * n];
        for r in 0..n {
            for c in 0..n {
                let h = entries[r * n + c];
                next[r * 2 * n + c] = h;
                next[r * 2 * n + c + n] = h;
                next[(r + n) * 2 * n + c] = h;
                next[(r + n) * 2 * n + c + n] = -h;
            }
        }
        entries = next;
        n *= 2;
    }
    Ok(HadamardMatrix { order, entries })
}

impl HadamardMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> i8 {
        self.entries[row * self.order + col]
    }

    pub fn row(&self, row: usize) -> &[i8] {
        &self.entries[row * self.order..(row + 1) * self.order]
    }
}

/// Length-2 Walsh code: a row of the order-2 Hadamard matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalshCode([i8; 2]);

impl WalshCode {
    /// `c0 = [1, 1]`
    pub const C0: WalshCode = WalshCode([1, 1]);
    /// `c1 = [1, -1]`
    pub const C1: WalshCode = WalshCode([1, -1]);

    /// Row `index` (0 or 1) of `H(2)`.
    pub fn from_hadamard(h: &HadamardMatrix, index: usize) -> Result<WalshCode> {
        if h.order() != 2 || index > 1 {
            return Err(Error::Parameter(format!(
                "length-2 Walsh codes come from rows 0..2 of H(2), got row {index} of H({})",
                h.order()
            )));
        }
        Ok(WalshCode([h.get(index, 0), h.get(index, 1)]))
    }

    pub fn chips(self) -> [i8; 2] {
        self.0
    }

    /// Spread one polar symbol into two chips.
    pub fn spread(self, symbol: i8) -> [i8; 2] {
        [symbol * self.0[0], symbol * self.0[1]]
    }

    /// Correlate one received row against the code: the despread products
    /// summed across the two chip epochs.
    pub fn despread<T: Real>(self, row: [T; 2]) -> T {
        row[0] * T::of(self.0[0] as f64) + row[1] * T::of(self.0[1] as f64)
    }
}

/// Number of spreading units joined in a chip matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompressionUnits {
    /// C-STC: real axis only.
    One,
    /// M-STC: unit 1 on I, unit 2 on Q.
    Two,
}

/// Transmit chips: `L` rows by 2 chip epochs.
#[derive(Debug, Clone, PartialEq)]
pub struct ChipMatrix<T> {
    rows: Vec<[Complex<T>; 2]>,
    units: CompressionUnits,
}

impl<T: Real> ChipMatrix<T> {
    pub fn rows(&self) -> &[[Complex<T>; 2]] {
        &self.rows
    }

    pub fn units(&self) -> CompressionUnits {
        self.units
    }

    /// Number of rows `L` (bits per input stream).
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Chips of one epoch (0 or 1), i.e. one column.
    pub fn column(&self, epoch: usize) -> Vec<Complex<T>> {
        self.rows.iter().map(|r| r[epoch]).collect()
    }

    /// Noiseless view of the chips as a receiver input.
    pub fn to_soft(&self) -> SoftChipMatrix<T> {
        SoftChipMatrix { rows: self.rows.clone() }
    }
}

/// Received (noisy) chips with the same `L×2` layout as [`ChipMatrix`].
#[derive(Debug, Clone, PartialEq)]
pub struct SoftChipMatrix<T> {
    rows: Vec<[Complex<T>; 2]>,
}

impl<T: Real> SoftChipMatrix<T> {
    pub fn from_rows(rows: Vec<[Complex<T>; 2]>) -> Self {
        SoftChipMatrix { rows }
    }

    /// Build from the two chip epochs received as separate columns.
    pub fn from_columns(first: &[Complex<T>], second: &[Complex<T>]) -> Result<Self> {
        if first.len() != second.len() {
            return Err(Error::Dimension(format!(
                "chip columns of length {} and {}",
                first.len(),
                second.len()
            )));
        }
        Ok(SoftChipMatrix {
            rows: first.iter().zip(second).map(|(&a, &b)| [a, b]).collect(),
        })
    }

    /// Reshape a flat `2L` received vector into `L×2`, column-major: the first
    /// `L` values are chip epoch 0, the next `L` epoch 1.
    pub fn from_flat(values: &[Complex<T>]) -> Result<Self> {
        if !values.len().is_multiple_of(2) {
            return Err(Error::Dimension(format!(
                "flat chip vector of odd length {} cannot be reshaped to L×2",
                values.len()
            )));
        }
        let (a, b) = values.split_at(values.len() / 2);
        Self::from_columns(a, b)
    }

    /// Build from a row-major table; every row must have exactly 2 columns.
    pub fn from_table(table: &[Vec<Complex<T>>]) -> Result<Self> {
        let rows = table
            .iter()
            .map(|r| match r.as_slice() {
                [a, b] => Ok([*a, *b]),
                other => Err(Error::Dimension(format!(
                    "chip row has {} columns, expected 2",
                    other.len()
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SoftChipMatrix { rows })
    }

    pub fn rows(&self) -> &[[Complex<T>; 2]] {
        &self.rows
    }

    pub fn rows_mut(&mut self) -> &mut [[Complex<T>; 2]] {
        &mut self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

fn check_equal_lengths(blocks: &[&BitBlock]) -> Result<usize> {
    let len = blocks[0].len();
    if len == 0 {
        return Err(Error::Dimension("input streams must be non-empty".into()));
    }
    if let Some(b) = blocks.iter().find(|b| b.len() != len) {
        return Err(Error::Dimension(format!(
            "input streams of unequal length ({len} vs {})",
            b.len()
        )));
    }
    Ok(len)
}

/// One spreading/combining unit: returns the two real chips of each row.
fn combine_unit<'a, T: Real>(s0: &'a BitBlock, s1: &'a BitBlock) -> impl Iterator<Item = [T; 2]> + 'a {
    let half = T::of(0.5);
    s0.as_slice().iter().zip(s1.as_slice()).map(move |(&a, &b)| {
        let spread0 = WalshCode::C0.spread(polar(a));
        let spread1 = WalshCode::C1.spread(polar(b));
        [
            half * T::of((spread0[0] + spread1[0]) as f64),
            half * T::of((spread0[1] + spread1[1]) as f64),
        ]
    })
}

/// Hard decision of one unit: despread, sum, `(D + 1) / 2 > 0.5`.
fn decide_unit<T: Real>(row: [T; 2]) -> (u8, u8) {
    let half = T::of(0.5);
    let decide = |d: T| u8::from((d + T::one()) * half > half);
    (
        decide(WalshCode::C0.despread(row)),
        decide(WalshCode::C1.despread(row)),
    )
}

/// M-STC encoder: four equal-length streams into an `L×2` complex chip matrix.
/// Streams 0/1 ride the real axis, streams 2/3 the imaginary axis.
pub fn mstc_encode<T: Real>(
    s0: &BitBlock,
    s1: &BitBlock,
    s2: &BitBlock,
    s3: &BitBlock,
) -> Result<ChipMatrix<T>> {
    check_equal_lengths(&[s0, s1, s2, s3])?;
    let rows = combine_unit::<T>(s0, s1)
        .zip(combine_unit::<T>(s2, s3))
        .map(|(re, im)| [Complex::new(re[0], im[0]), Complex::new(re[1], im[1])])
        .collect();
    Ok(ChipMatrix {
        rows,
        units: CompressionUnits::Two,
    })
}

/// M-STE decoder: recovers the four streams from received chips.
pub fn mste_decode<T: Real>(y: &SoftChipMatrix<T>) -> (BitBlock, BitBlock, BitBlock, BitBlock) {
    let l = y.len();
    let mut out: [Vec<u8>; 4] = std::array::from_fn(|_| Vec::with_capacity(l));
    for row in y.rows() {
        let (b0, b1) = decide_unit([row[0].re, row[1].re]);
        let (b2, b3) = decide_unit([row[0].im, row[1].im]);
        out[0].push(b0);
        out[1].push(b1);
        out[2].push(b2);
        out[3].push(b3);
    }
    let [a, b, c, d] = out.map(|v| BitBlock::new(v).expect("decisions are binary"));
    (a, b, c, d)
}

/// C-STC encoder: the first M-STC unit alone, imaginary part zero.
pub fn cstc_encode<T: Real>(s0: &BitBlock, s1: &BitBlock) -> Result<ChipMatrix<T>> {
    check_equal_lengths(&[s0, s1])?;
    let rows = combine_unit::<T>(s0, s1)
        .map(|re| [Complex::new(re[0], T::zero()), Complex::new(re[1], T::zero())])
        .collect();
    Ok(ChipMatrix {
        rows,
        units: CompressionUnits::One,
    })
}

/// C-STC decoder: reads the real part only.
pub fn cstc_decode<T: Real>(y: &SoftChipMatrix<T>) -> (BitBlock, BitBlock) {
    let (mut s0, mut s1) = (Vec::with_capacity(y.len()), Vec::with_capacity(y.len()));
    for row in y.rows() {
        let (b0, b1) = decide_unit([row[0].re, row[1].re]);
        s0.push(b0);
        s1.push(b1);
    }
    (
        BitBlock::new(s0).expect("decisions are binary"),
        BitBlock::new(s1).expect("decisions are binary"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded_rng;
    use num_complex::Complex64;
    use rand::Rng;

    fn bits(v: &[u8]) -> BitBlock {
        BitBlock::new(v.to_vec()).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Product oracle independent of the construction.
    fn gram(h: &HadamardMatrix) -> Vec<i64> {
        let n = h.order();
        let mut g = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                g[i * n + j] = (0..n).map(|k| h.get(i, k) as i64 * h.get(j, k) as i64).sum();
            }
        }
        g
    }

    #[test]
    fn hadamard_small_orders() {
        assert_eq!(hadamard(1).unwrap().row(0), &[1]);
        let h2 = hadamard(2).unwrap();
        assert_eq!(h2.row(0), &[1, 1]);
        assert_eq!(h2.row(1), &[1, -1]);
        for order in [4, 8, 16, 32] {
            let h = hadamard(order).unwrap();
            let g = gram(&h);
            for i in 0..order {
                for j in 0..order {
                    assert_eq!(g[i * order + j], if i == j { order as i64 } else { 0 });
                    assert_eq!(h.get(i, j), h.get(j, i));
                }
            }
        }
    }

    #[test]
    fn hadamard_rejects_non_power_of_two() {
        for bad in [0, 3, 6, 12] {
            assert!(matches!(hadamard(bad), Err(Error::Size { .. })));
        }
    }

    #[test]
    fn walsh_codes_are_hadamard_rows() {
        let h = hadamard(2).unwrap();
        assert_eq!(WalshCode::from_hadamard(&h, 0).unwrap(), WalshCode::C0);
        assert_eq!(WalshCode::from_hadamard(&h, 1).unwrap(), WalshCode::C1);
        assert!(WalshCode::from_hadamard(&hadamard(4).unwrap(), 0).is_err());
    }

    #[test]
    fn orthogonal_despreading_of_every_pair() {
        for b0 in [-1i8, 1] {
            for b1 in [-1i8, 1] {
                let s0 = WalshCode::C0.spread(b0);
                let s1 = WalshCode::C1.spread(b1);
                let combined = [(s0[0] + s1[0]) as f64 / 2.0, (s0[1] + s1[1]) as f64 / 2.0];
                assert_eq!(WalshCode::C0.despread(combined), b0 as f64);
                assert_eq!(WalshCode::C1.despread(combined), b1 as f64);
            }
        }
    }

    #[test]
    fn mstc_worked_examples() {
        let x = mstc_encode::<f64>(&bits(&[1]), &bits(&[0]), &bits(&[1]), &bits(&[1])).unwrap();
        assert_eq!(x.rows(), &[[c(0.0, 1.0), c(1.0, 0.0)]]);
        assert_eq!(x.units(), CompressionUnits::Two);

        let z = bits(&[0]);
        let x = mstc_encode::<f64>(&z, &z, &z, &z).unwrap();
        assert_eq!(x.rows(), &[[c(-1.0, -1.0), c(0.0, 0.0)]]);

        let mut rng = seeded_rng(3);
        let s: Vec<BitBlock> = (0..4).map(|_| BitBlock::random(&mut rng, 37)).collect();
        let x = mstc_encode::<f64>(&s[0], &s[1], &s[2], &s[3]).unwrap();
        assert_eq!(x.len(), 37);
        assert_eq!(x.column(1).len(), 37);
    }

    #[test]
    fn mste_worked_example() {
        let y = SoftChipMatrix::from_rows(vec![[c(0.0, 1.0), c(1.0, 0.0)]]);
        let (a, b, cc, d) = mste_decode(&y);
        assert_eq!((a, b, cc, d), (bits(&[1]), bits(&[0]), bits(&[1]), bits(&[1])));
    }

    #[test]
    fn mstc_exhaustive_single_row() {
        for word in 0u8..16 {
            let s: Vec<BitBlock> = (0..4).map(|i| bits(&[(word >> i) & 1])).collect();
            let x = mstc_encode::<f64>(&s[0], &s[1], &s[2], &s[3]).unwrap();
            for chip in x.rows()[0] {
                assert!([-1.0, 0.0, 1.0].contains(&chip.re));
                assert!([-1.0, 0.0, 1.0].contains(&chip.im));
            }
            let (a, b, cc, d) = mste_decode(&x.to_soft());
            assert_eq!(vec![a, b, cc, d], s);
        }
    }

    #[test]
    fn length_mismatch_is_dimension_error() {
        let r = mstc_encode::<f64>(&bits(&[1, 0]), &bits(&[1]), &bits(&[1, 0]), &bits(&[0, 0]));
        assert!(matches!(r, Err(Error::Dimension(_))));
        assert!(matches!(cstc_encode::<f64>(&bits(&[1]), &bits(&[1, 1])), Err(Error::Dimension(_))));
        assert!(cstc_encode::<f64>(&bits(&[]), &bits(&[])).is_err());
    }

    #[test]
    fn wrong_column_count_rejected() {
        let table = vec![vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]];
        assert!(matches!(SoftChipMatrix::from_table(&table), Err(Error::Dimension(_))));
        assert!(SoftChipMatrix::<f64>::from_flat(&[c(1.0, 0.0); 3]).is_err());
    }

    #[test]
    fn flat_reshape_is_column_major() {
        let flat = [c(0.0, 1.0), c(1.0, 0.0)];
        let y = SoftChipMatrix::from_flat(&flat).unwrap();
        assert_eq!(y.rows(), &[[c(0.0, 1.0), c(1.0, 0.0)]]);
    }

    #[test]
    fn cstc_worked_examples() {
        let x = cstc_encode::<f64>(&bits(&[1]), &bits(&[0])).unwrap();
        assert_eq!(x.rows(), &[[c(0.0, 0.0), c(1.0, 0.0)]]);
        assert_eq!(x.units(), CompressionUnits::One);
        let x = cstc_encode::<f64>(&bits(&[1]), &bits(&[1])).unwrap();
        assert_eq!(x.rows(), &[[c(1.0, 0.0), c(0.0, 0.0)]]);

        let y = SoftChipMatrix::from_rows(vec![[c(0.0, 0.0), c(1.0, 0.0)]]);
        assert_eq!(cstc_decode(&y), (bits(&[1]), bits(&[0])));
    }

    #[test]
    fn cstc_ignores_imaginary_part() {
        let mut rng = seeded_rng(11);
        let a = BitBlock::random(&mut rng, 64);
        let b = BitBlock::random(&mut rng, 64);
        let mut y = cstc_encode::<f64>(&a, &b).unwrap().to_soft();
        for row in y.rows_mut() {
            row[0].im += rng.random_range(-5.0..5.0);
            row[1].im += rng.random_range(-5.0..5.0);
        }
        assert_eq!(cstc_decode(&y), (a, b));
    }

    #[test]
    fn cstc_roundtrip_random() {
        let mut rng = seeded_rng(12);
        for _ in 0..10_000 {
            let len = rng.random_range(1..16);
            let a = BitBlock::random(&mut rng, len);
            let b = BitBlock::random(&mut rng, len);
            let x = cstc_encode::<f64>(&a, &b).unwrap();
            assert_eq!(cstc_decode(&x.to_soft()), (a, b));
        }
    }

    #[test]
    fn decision_tie_maps_to_zero() {
        let y = SoftChipMatrix::from_rows(vec![[c(0.0, 0.0), c(0.0, 0.0)]]);
        let (a, b, cc, d) = mste_decode(&y);
        assert_eq!([a, b, cc, d].map(|x| x.as_slice()[0]), [0, 0, 0, 0]);
        // D = 0 for c0 but D = 1 for c1
        let y = SoftChipMatrix::from_rows(vec![[c(0.5, 0.0), c(-0.5, 0.0)]]);
        assert_eq!(cstc_decode(&y), (bits(&[0]), bits(&[1])));
    }

    #[test]
    fn soft_values_are_not_clipped() {
        // a large chip outweighs an opposing small one
        let y = SoftChipMatrix::from_rows(vec![[c(7.0, 0.0), c(-3.0, 0.0)]]);
        assert_eq!(cstc_decode(&y), (bits(&[1]), bits(&[1])));
    }

    #[test]
    fn codec_works_in_f32() {
        let mut rng = seeded_rng(13);
        let s: Vec<BitBlock> = (0..4).map(|_| BitBlock::random(&mut rng, 256)).collect();
        let x = mstc_encode::<f32>(&s[0], &s[1], &s[2], &s[3]).unwrap();
        let (a, b, cc, d) = mste_decode(&x.to_soft());
        assert_eq!(vec![a, b, cc, d], s);
    }
}
