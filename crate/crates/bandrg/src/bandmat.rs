//! Symmetric band matrix storage.
//!
//! A symmetric matrix with half-bandwidth `m` has `M[k][l] = 0` whenever
//! `|k - l| > m`, so only the main diagonal and the `m` subdiagonals need to
//! be stored. Symmetry is structural here: there is no way to set
//! `M[k][l] != M[l][k]`, and entries outside the band read as exactly zero.
//!
//! Rows and columns are indexed by basis label `0..=cutoff`, so a matrix with
//! cutoff `N` has dimension `N + 1`.

use std::io::{self, Write};

use crate::error::{Error, Result};

/// Row-indexed generator for the stored diagonals of a symmetric band matrix.
///
/// `value(i, k)` is the entry `M[k][k - i]`, defined for `0 <= i <= m` and
/// `k >= i`. Generators are evaluated once per stored entry at build time.
pub trait BandGenerator {
    /// Number of stored subdiagonals below the main diagonal.
    fn half_bandwidth(&self) -> usize;

    /// Entry at row `k`, column `k - i`.
    fn value(&self, offset: usize, row: usize) -> f64;
}

/// Adapter turning a closure `(offset, row) -> f64` into a [`BandGenerator`].
pub struct FnBandGenerator<F> {
    half_bandwidth: usize,
    f: F,
}

impl<F: Fn(usize, usize) -> f64> FnBandGenerator<F> {
    pub fn new(half_bandwidth: usize, f: F) -> Self {
        Self { half_bandwidth, f }
    }
}

impl<F: Fn(usize, usize) -> f64> BandGenerator for FnBandGenerator<F> {
    fn half_bandwidth(&self) -> usize {
        self.half_bandwidth
    }

    fn value(&self, offset: usize, row: usize) -> f64 {
        (self.f)(offset, row)
    }
}

/// Immutable symmetric band matrix.
///
/// Storage is one array per subdiagonal offset: `diagonals[i][l]` holds
/// `M[l + i][l]` for `l` in `0..dim - i`. All stored values are finite;
/// construction rejects NaN and infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct BandMatrix {
    dim: usize,
    half_bandwidth: usize,
    diagonals: Vec<Vec<f64>>,
}

impl BandMatrix {
    /// Builds the matrix of dimension `cutoff + 1` from a generator.
    ///
    /// Fails with the offending `(offset, row)` if the generator produces a
    /// non-finite value.
    pub fn build<G: BandGenerator + ?Sized>(generator: &G, cutoff: usize) -> Result<Self> {
        let dim = cutoff + 1;
        let m = generator.half_bandwidth().min(cutoff);
        let mut diagonals = Vec::with_capacity(m + 1);
        for i in 0..=m {
            let mut diag = Vec::with_capacity(dim - i);
            for l in 0..dim - i {
                let v = generator.value(i, l + i);
                if !v.is_finite() {
                    return Err(Error::NonFiniteEntry {
                        offset: i,
                        row: l + i,
                        value: v,
                    });
                }
                diag.push(v);
            }
            diagonals.push(diag);
        }
        Ok(Self {
            dim,
            half_bandwidth: m,
            diagonals,
        })
    }

    /// Builds directly from diagonal arrays; lengths must satisfy
    /// `diagonals[i].len() == dim - i` and all values must be finite.
    pub(crate) fn from_diagonals(dim: usize, diagonals: Vec<Vec<f64>>) -> Result<Self> {
        debug_assert!(!diagonals.is_empty());
        let m = diagonals.len() - 1;
        debug_assert!(m < dim);
        for (i, diag) in diagonals.iter().enumerate() {
            debug_assert_eq!(diag.len(), dim - i);
            for (l, &v) in diag.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonFiniteEntry {
                        offset: i,
                        row: l + i,
                        value: v,
                    });
                }
            }
        }
        Ok(Self {
            dim,
            half_bandwidth: m,
            diagonals,
        })
    }

    /// Matrix dimension (`cutoff + 1`).
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Highest basis label, `dim - 1`.
    pub fn cutoff(&self) -> usize {
        self.dim - 1
    }

    /// Number of stored subdiagonals.
    pub fn half_bandwidth(&self) -> usize {
        self.half_bandwidth
    }

    /// Entry `M[k][l]`, using symmetry and returning zero outside the band.
    pub fn get(&self, k: usize, l: usize) -> Result<f64> {
        if k >= self.dim || l >= self.dim {
            return Err(Error::IndexOutOfRange {
                k,
                l,
                dim: self.dim,
            });
        }
        let (hi, lo) = if k >= l { (k, l) } else { (l, k) };
        let offset = hi - lo;
        if offset > self.half_bandwidth {
            Ok(0.0)
        } else {
            Ok(self.diagonals[offset][lo])
        }
    }

    /// Read-only view of the stored subdiagonal at `offset`;
    /// element `l` is `M[l + offset][l]`.
    pub fn diagonal(&self, offset: usize) -> &[f64] {
        &self.diagonals[offset]
    }

    /// Unchecked variant of [`get`](Self::get) for internal hot paths;
    /// panics on out-of-range indices instead of returning an error.
    pub(crate) fn at(&self, k: usize, l: usize) -> f64 {
        let (hi, lo) = if k >= l { (k, l) } else { (l, k) };
        let offset = hi - lo;
        if offset > self.half_bandwidth {
            assert!(hi < self.dim, "index ({k}, {l}) out of range");
            0.0
        } else {
            self.diagonals[offset][lo]
        }
    }

    /// Leading principal submatrix of dimension `cutoff + 1`.
    ///
    /// The half-bandwidth is clamped to the new dimension when the matrix
    /// becomes smaller than the band is wide.
    pub fn truncate(&self, cutoff: usize) -> Result<Self> {
        let dim = cutoff + 1;
        if dim > self.dim {
            return Err(Error::TruncateBeyondDim {
                cutoff,
                dim: self.dim,
            });
        }
        let m = self.half_bandwidth.min(cutoff);
        let diagonals = (0..=m)
            .map(|i| self.diagonals[i][..dim - i].to_vec())
            .collect();
        Ok(Self {
            dim,
            half_bandwidth: m,
            diagonals,
        })
    }

    /// Dense symmetric copy, row-major.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut dense = vec![vec![0.0; self.dim]; self.dim];
        for (i, diag) in self.diagonals.iter().enumerate() {
            for (l, &v) in diag.iter().enumerate() {
                dense[l + i][l] = v;
                dense[l][l + i] = v;
            }
        }
        dense
    }

    /// Sum of the main diagonal.
    pub fn trace(&self) -> f64 {
        self.diagonals[0].iter().sum()
    }

    /// Writes the stored lower-triangle entries as CSV rows `k,l,value`,
    /// offset-major (whole main diagonal, then offset 1, ...), 17 significant
    /// digits.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "k,l,value")?;
        for (i, diag) in self.diagonals.iter().enumerate() {
            for (l, &v) in diag.iter().enumerate() {
                writeln!(w, "{},{},{:.16e}", l + i, l, v)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample(m: usize, cutoff: usize) -> BandMatrix {
        let gen = FnBandGenerator::new(m, |i, k| (10 * k + i) as f64);
        BandMatrix::build(&gen, cutoff).unwrap()
    }

    #[test]
    fn build_places_generator_values() {
        let mat = sample(2, 4);
        assert_eq!(mat.dim(), 5);
        assert_eq!(mat.cutoff(), 4);
        assert_eq!(mat.half_bandwidth(), 2);
        assert_eq!(mat.get(3, 3).unwrap(), 30.0);
        assert_eq!(mat.get(3, 1).unwrap(), 32.0);
        assert_eq!(mat.get(1, 3).unwrap(), 32.0);
        assert_eq!(mat.get(4, 1).unwrap(), 0.0);
    }

    #[test]
    fn build_clamps_bandwidth_to_dimension() {
        let mat = sample(4, 2);
        assert_eq!(mat.half_bandwidth(), 2);
        assert_eq!(mat.dim(), 3);
    }

    #[test]
    fn build_rejects_non_finite() {
        let gen = FnBandGenerator::new(1, |i, k| if i == 1 && k == 3 { f64::NAN } else { 1.0 });
        match BandMatrix::build(&gen, 5) {
            Err(Error::NonFiniteEntry { offset: 1, row: 3, .. }) => {}
            other => panic!("expected NonFiniteEntry, got {other:?}"),
        }
    }

    #[test]
    fn get_rejects_out_of_range() {
        let mat = sample(1, 3);
        assert!(matches!(
            mat.get(4, 0),
            Err(Error::IndexOutOfRange { k: 4, l: 0, dim: 4 })
        ));
        assert!(matches!(mat.get(0, 7), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn truncate_rejects_growth() {
        let mat = sample(1, 3);
        assert!(matches!(
            mat.truncate(4),
            Err(Error::TruncateBeyondDim { cutoff: 4, dim: 4 })
        ));
        assert_eq!(mat.truncate(3).unwrap(), mat);
    }

    #[test]
    fn to_dense_round_trips() {
        let mat = sample(3, 6);
        let dense = mat.to_dense();
        for k in 0..7 {
            for l in 0..7 {
                assert_eq!(dense[k][l], mat.get(k, l).unwrap());
            }
        }
    }

    #[test]
    fn csv_layout_is_offset_major() {
        let mat = sample(1, 1);
        let mut buf = Vec::new();
        mat.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "k,l,value");
        assert_eq!(lines[1], "0,0,0.0000000000000000e0");
        assert_eq!(lines[2], "1,1,1.0000000000000000e1");
        assert_eq!(lines[3], "1,0,1.1000000000000000e1");
        assert_eq!(lines.len(), 4);
    }

    proptest! {
        #[test]
        fn symmetry_and_band_structure(
            m in 0usize..5,
            cutoff in 0usize..12,
            seed in any::<i64>(),
        ) {
            let gen = FnBandGenerator::new(m, |i, k| {
                ((seed % 1000) as f64) + (i * 31 + k * 7) as f64 * 0.25
            });
            let mat = BandMatrix::build(&gen, cutoff).unwrap();
            for k in 0..=cutoff {
                for l in 0..=cutoff {
                    let a = mat.get(k, l).unwrap();
                    let b = mat.get(l, k).unwrap();
                    prop_assert_eq!(a.to_bits(), b.to_bits());
                    if k.abs_diff(l) > mat.half_bandwidth() {
                        prop_assert_eq!(a, 0.0);
                    }
                }
            }
        }

        #[test]
        fn truncate_composes(
            m in 0usize..5,
            c_small in 0usize..8,
            extra1 in 0usize..6,
            extra2 in 0usize..6,
        ) {
            let c_mid = c_small + extra1;
            let c_big = c_mid + extra2;
            let mat = sample(m, c_big);
            let two_steps = mat.truncate(c_mid).unwrap().truncate(c_small).unwrap();
            let one_step = mat.truncate(c_small).unwrap();
            prop_assert_eq!(two_steps, one_step);
        }

        #[test]
        fn truncated_entries_match_original(m in 0usize..5, cutoff in 3usize..10) {
            let mat = sample(m, cutoff);
            let small = mat.truncate(cutoff - 2).unwrap();
            for k in 0..small.dim() {
                for l in 0..small.dim() {
                    prop_assert_eq!(
                        small.get(k, l).unwrap().to_bits(),
                        mat.get(k, l).unwrap().to_bits()
                    );
                }
            }
        }
    }
}
