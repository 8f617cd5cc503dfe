//! Quartic anharmonic oscillator in the harmonic-oscillator number basis.
//!
//! With `H = H0 + g x^4` scaled so the free level spacing is 1 and states
//! labeled by occupation number `k`, the Hamiltonian is band diagonal with
//! half-bandwidth 4. Using row-indexed elements `H[k][k - i]`:
//!
//! * offset 0: `k + 3 g (2 k^2 + 2 k + 1)`
//! * offset 2: `g (4 k - 2) sqrt(k (k - 1))`
//! * offset 4: `g sqrt(k (k - 1) (k - 2) (k - 3))`
//!
//! and the odd offsets 1 and 3 vanish identically because `x^4` only couples
//! states of equal parity. The interaction matrix `H_I = (H - H0) / g` is
//! independent of the coupling.

use crate::bandmat::{BandGenerator, BandMatrix};
use crate::error::{Error, Result};

/// Half-bandwidth of the oscillator Hamiltonian.
pub const HALF_BANDWIDTH: usize = 4;

/// Oscillator coupling. `g > 0` is the physical regime; `g = 0` is admitted
/// so the free limit can serve as a test fixture.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams {
    g: f64,
}

impl OscillatorParams {
    /// Validates `g`: must be finite and nonnegative.
    pub fn new(g: f64) -> Result<Self> {
        if !g.is_finite() || g < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "coupling must be finite and nonnegative, got {g}"
            )));
        }
        Ok(Self { g })
    }

    pub fn g(&self) -> f64 {
        self.g
    }
}

/// Interaction element `H_I[row][row - offset]`, independent of `g`.
///
/// Zero for odd offsets, for offsets above 4, and for rows where the formula
/// terminates on a vanishing factor (`row < offset`).
pub fn interaction_element(offset: usize, row: usize) -> f64 {
    if row < offset {
        return 0.0;
    }
    let k = row as f64;
    match offset {
        0 => 3.0 * (2.0 * k * k + 2.0 * k + 1.0),
        2 => (4.0 * k - 2.0) * (k * (k - 1.0)).sqrt(),
        4 => (k * (k - 1.0) * (k - 2.0) * (k - 3.0)).sqrt(),
        _ => 0.0,
    }
}

/// Free diagonal `H0[k][k] = k` for `k` in `0..=cutoff`.
pub fn free_diagonal(cutoff: usize) -> Vec<f64> {
    (0..=cutoff).map(|k| k as f64).collect()
}

struct InteractionGenerator;

impl BandGenerator for InteractionGenerator {
    fn half_bandwidth(&self) -> usize {
        HALF_BANDWIDTH
    }

    fn value(&self, offset: usize, row: usize) -> f64 {
        interaction_element(offset, row)
    }
}

struct HamiltonianGenerator {
    g: f64,
}

impl BandGenerator for HamiltonianGenerator {
    fn half_bandwidth(&self) -> usize {
        HALF_BANDWIDTH
    }

    // Computed as h0 + g * h_int per entry so that
    // hamiltonian = diag(k) + g * interaction holds exactly.
    fn value(&self, offset: usize, row: usize) -> f64 {
        let free = if offset == 0 { row as f64 } else { 0.0 };
        free + self.g * interaction_element(offset, row)
    }
}

/// Full oscillator Hamiltonian at the given cutoff.
pub fn hamiltonian(params: &OscillatorParams, cutoff: usize) -> Result<BandMatrix> {
    BandMatrix::build(&HamiltonianGenerator { g: params.g }, cutoff)
}

/// Coupling-independent interaction matrix `(H - H0) / g` at the given cutoff.
pub fn interaction(cutoff: usize) -> Result<BandMatrix> {
    BandMatrix::build(&InteractionGenerator, cutoff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn params_validate_coupling() {
        assert!(OscillatorParams::new(0.0).is_ok());
        assert!(OscillatorParams::new(10.0).is_ok());
        assert!(OscillatorParams::new(-0.5).is_err());
        assert!(OscillatorParams::new(f64::NAN).is_err());
        assert!(OscillatorParams::new(f64::INFINITY).is_err());
    }

    #[test]
    fn interaction_matches_hand_expanded_elements() {
        let hi = interaction(6).unwrap();
        assert_eq!(hi.half_bandwidth(), HALF_BANDWIDTH);
        // Diagonal 3(2k^2 + 2k + 1) for k = 0..=6.
        let diag = [3.0, 15.0, 39.0, 75.0, 123.0, 183.0, 255.0];
        for (k, &want) in diag.iter().enumerate() {
            assert_eq!(hi.get(k, k).unwrap(), want);
        }
        // Offset 2 in the column form (l + 2, l): (4l + 6) sqrt((l + 1)(l + 2)).
        assert_relative_eq!(hi.get(2, 0).unwrap(), 6.0 * 2.0_f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(hi.get(3, 1).unwrap(), 10.0 * 6.0_f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(hi.get(6, 4).unwrap(), 22.0 * 30.0_f64.sqrt(), max_relative = 1e-15);
        // Offset 4 in the column form (l + 4, l): sqrt((l+1)(l+2)(l+3)(l+4)).
        assert_relative_eq!(hi.get(4, 0).unwrap(), 24.0_f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(hi.get(6, 2).unwrap(), 360.0_f64.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn odd_offsets_vanish() {
        let params = OscillatorParams::new(2.5).unwrap();
        let h = hamiltonian(&params, 12).unwrap();
        for k in 0..12 {
            assert_eq!(h.get(k + 1, k).unwrap(), 0.0);
            if k < 10 {
                assert_eq!(h.get(k + 3, k).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn hamiltonian_diagonal_includes_free_part() {
        let params = OscillatorParams::new(1.0).unwrap();
        let h = hamiltonian(&params, 4).unwrap();
        let want = [3.0, 16.0, 41.0, 78.0, 127.0];
        for (k, &v) in want.iter().enumerate() {
            assert_eq!(h.get(k, k).unwrap(), v);
        }

        let weak = OscillatorParams::new(0.01).unwrap();
        let h = hamiltonian(&weak, 200).unwrap();
        // 200 + 0.03 (2 * 200^2 + 2 * 200 + 1) = 2612.03.
        assert_relative_eq!(h.get(200, 200).unwrap(), 2612.03, max_relative = 1e-13);
    }

    #[test]
    fn free_limit_is_diagonal_spectrum_ladder() {
        let params = OscillatorParams::new(0.0).unwrap();
        let h = hamiltonian(&params, 9).unwrap();
        for k in 0..=9 {
            assert_eq!(h.get(k, k).unwrap(), k as f64);
            if k >= 2 {
                assert_eq!(h.get(k, k - 2).unwrap(), 0.0);
            }
        }
    }

    proptest! {
        #[test]
        fn splits_exactly_into_free_plus_coupling_times_interaction(
            g in 0.0..50.0f64,
            cutoff in 4usize..40,
        ) {
            let params = OscillatorParams::new(g).unwrap();
            let h = hamiltonian(&params, cutoff).unwrap();
            let hi = interaction(cutoff).unwrap();
            for k in 0..=cutoff {
                for l in k.saturating_sub(4)..=k {
                    let free = if k == l { k as f64 } else { 0.0 };
                    let split = free + g * hi.get(k, l).unwrap();
                    prop_assert_eq!(h.get(k, l).unwrap().to_bits(), split.to_bits());
                }
            }
        }

        #[test]
        fn off_diagonal_entries_linear_in_coupling(
            g1 in 0.0..20.0f64,
            g2 in 0.0..20.0f64,
            cutoff in 4usize..30,
        ) {
            let ha = hamiltonian(&OscillatorParams::new(g1).unwrap(), cutoff).unwrap();
            let hb = hamiltonian(&OscillatorParams::new(g2).unwrap(), cutoff).unwrap();
            let hc = hamiltonian(&OscillatorParams::new(g1 + g2).unwrap(), cutoff).unwrap();
            for k in 0..=cutoff {
                for l in k.saturating_sub(4)..k {
                    let sum = ha.get(k, l).unwrap() + hb.get(k, l).unwrap();
                    let direct = hc.get(k, l).unwrap();
                    prop_assert!(
                        (sum - direct).abs() <= 1e-14 * direct.abs().max(1.0),
                        "entry ({}, {}): {} vs {}", k, l, sum, direct
                    );
                }
            }
        }
    }
}
