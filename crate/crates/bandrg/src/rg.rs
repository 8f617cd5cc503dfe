//! Cutoff reduction by Gaussian elimination.
//!
//! Eliminating the highest state `t` from a symmetric matrix `H` rewrites the
//! remaining block as
//!
//! ```text
//! H'[k][l] = H[k][l] + H[k][t] H[t][l] / (E - H[t][t])
//! ```
//!
//! which preserves `E` as an eigenvalue exactly: this is the Schur complement
//! of the eliminated 1x1 block at trial energy `E`. Iterating the step walks
//! the cutoff down one state at a time.
//!
//! Two properties make this cheap for band matrices with half-bandwidth `m`:
//!
//! * closure: `H[k][t]` vanishes for `k < t - m`, so the correction only
//!   touches the `m x m` block just below the eliminated state and the
//!   half-bandwidth never grows;
//! * locality: by the same argument, the reduced matrix differs from a plain
//!   truncation only in its `m x m` highest-index corner.
//!
//! The production path therefore carries just that sliding corner window, at
//! O(m^2) per eliminated state, while [`eliminate_top_exact`] and
//! [`eliminate_top_approx`] expose the verbatim single steps the fast path
//! must reproduce.
//!
//! For a Hamiltonian split as `H = H0 + g H_I` with `H0` diagonal, the same
//! step can be phrased on the interaction alone:
//!
//! ```text
//! H_I'[k][l] = H_I[k][l] + g H_I[k][t] H_I[t][l] / (E - H0[t][t] - g H_I[t][t])
//! ```
//!
//! The approximate scheme sets `E = 0` (every retained eigenvalue is far
//! below the eliminated diagonal), giving a spectrum-independent reduction;
//! [`Mode::ExactAtE`] keeps a caller-supplied trial energy instead.
//!
//! Because renormalization is confined to the corner, its entire effect on
//! the oscillator interaction is captured by six ratios `xi_i` between
//! renormalized and unrenormalized corner entries; [`xi_flow`] evolves those
//! six numbers directly, one O(1) update per eliminated state, without ever
//! forming a matrix.

use std::io::{self, Write};

use crate::bandmat::{BandMatrix, FnBandGenerator};
use crate::error::{Error, Result};
use crate::oscillator;

/// Smallest admissible magnitude for an elimination denominator.
pub const DEFAULT_PIVOT_FLOOR: f64 = 1e-12;

/// Denominator convention for the elimination step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// `E = 0`: spectrum-independent reduction, valid when retained
    /// eigenvalues are small against the eliminated diagonal entries.
    Approximate,
    /// Keep the configured trial energy in the denominator; the trial energy
    /// is preserved as an exact eigenvalue of the reduced matrix.
    ExactAtE,
}

/// Parameters of a multi-step reduction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RgConfig {
    /// Coupling multiplying the interaction.
    pub g: f64,
    /// Cutoff the interaction matrix starts at.
    pub initial_cutoff: usize,
    /// Cutoff to stop at; `initial_cutoff` means no elimination at all.
    pub target_cutoff: usize,
    pub mode: Mode,
    /// Trial energy; used by [`Mode::ExactAtE`] only. The approximate scheme
    /// is the `E = 0` case by definition and ignores this field.
    pub trial_e: f64,
    /// Denominators at or below this magnitude abort the reduction.
    pub pivot_floor: f64,
}

impl RgConfig {
    /// Spectrum-independent reduction at `E = 0`.
    pub fn approximate(g: f64, initial_cutoff: usize, target_cutoff: usize) -> Self {
        Self {
            g,
            initial_cutoff,
            target_cutoff,
            mode: Mode::Approximate,
            trial_e: 0.0,
            pivot_floor: DEFAULT_PIVOT_FLOOR,
        }
    }

    /// Reduction preserving the trial energy exactly.
    pub fn exact_at(g: f64, initial_cutoff: usize, target_cutoff: usize, trial_e: f64) -> Self {
        Self {
            g,
            initial_cutoff,
            target_cutoff,
            mode: Mode::ExactAtE,
            trial_e,
            pivot_floor: DEFAULT_PIVOT_FLOOR,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.g.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "coupling must be finite, got {}",
                self.g
            )));
        }
        if !self.trial_e.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "trial energy must be finite, got {}",
                self.trial_e
            )));
        }
        if !(self.pivot_floor > 0.0 && self.pivot_floor.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "pivot floor must be positive and finite, got {}",
                self.pivot_floor
            )));
        }
        if self.target_cutoff > self.initial_cutoff {
            return Err(Error::InvalidConfig(format!(
                "target cutoff {} exceeds initial cutoff {}",
                self.target_cutoff, self.initial_cutoff
            )));
        }
        Ok(())
    }
}

/// One exact elimination step on a full Hamiltonian.
///
/// Removes the highest state `t = dim - 1` at trial energy `E`; any
/// eigenvalue of the input equal to `E` is an eigenvalue of the output
/// exactly. Fails when `|E - H[t][t]|` is below [`DEFAULT_PIVOT_FLOOR`].
pub fn eliminate_top_exact(h: &BandMatrix, trial_e: f64) -> Result<BandMatrix> {
    let dim = h.dim();
    if dim < 2 {
        return Err(Error::InvalidConfig(
            "cannot eliminate the only state of a dimension-1 matrix".into(),
        ));
    }
    let t = dim - 1;
    let m = h.half_bandwidth();
    let pivot = trial_e - h.diagonal(0)[t];
    if pivot.abs() < DEFAULT_PIVOT_FLOOR {
        return Err(Error::SingularPivot { index: t, pivot });
    }
    let new_dim = t;
    let m_out = m.min(new_dim - 1);
    let mut diagonals: Vec<Vec<f64>> = (0..=m_out)
        .map(|i| h.diagonal(i)[..new_dim - i].to_vec())
        .collect();
    let klo = t.saturating_sub(m);
    for k in klo..t {
        let top_k = h.at(k, t);
        for l in klo..=k {
            diagonals[k - l][l] += (top_k * h.at(t, l)) / pivot;
        }
    }
    BandMatrix::from_diagonals(new_dim, diagonals).map_err(|e| e.at_step(t))
}

/// One approximate (`E = 0`) elimination step on the interaction matrix of a
/// Hamiltonian `H0 + g H_I` with diagonal `H0`.
///
/// Returns the reduced interaction. The denominator `H0[t] + g H_I[t][t]`
/// must be positive and above [`DEFAULT_PIVOT_FLOOR`]; the approximation has
/// no meaning when an eliminated state sits at or below the trial energy 0.
pub fn eliminate_top_approx(h0_diag: &[f64], h_int: &BandMatrix, g: f64) -> Result<BandMatrix> {
    let dim = h_int.dim();
    if h0_diag.len() != dim {
        return Err(Error::DimMismatch {
            left: h0_diag.len(),
            right: dim,
        });
    }
    if dim < 2 {
        return Err(Error::InvalidConfig(
            "cannot eliminate the only state of a dimension-1 matrix".into(),
        ));
    }
    let t = dim - 1;
    let m = h_int.half_bandwidth();
    let den = h0_diag[t] + g * h_int.diagonal(0)[t];
    if den <= DEFAULT_PIVOT_FLOOR {
        return Err(Error::SingularPivot { index: t, pivot: den });
    }
    let new_dim = t;
    let m_out = m.min(new_dim - 1);
    let mut diagonals: Vec<Vec<f64>> = (0..=m_out)
        .map(|i| h_int.diagonal(i)[..new_dim - i].to_vec())
        .collect();
    let klo = t.saturating_sub(m);
    for k in klo..t {
        let top_k = h_int.at(k, t);
        for l in klo..=k {
            diagonals[k - l][l] -= g * (top_k * h_int.at(t, l)) / den;
        }
    }
    BandMatrix::from_diagonals(new_dim, diagonals).map_err(|e| e.at_step(t))
}

/// Multi-step reduction of a generic split Hamiltonian, returning the
/// renormalized interaction at `config.target_cutoff`.
///
/// Only the sliding `(m + 1) x (m + 1)` corner window is carried between
/// steps; entries below the corner are taken verbatim from the input. The
/// result reproduces iterated [`eliminate_top_approx`] (or the interaction
/// form of [`eliminate_top_exact`]) step for step.
pub fn reduce_interaction(
    h0_diag: &[f64],
    h_int: &BandMatrix,
    config: &RgConfig,
) -> Result<BandMatrix> {
    config.validate()?;
    let big_n = config.initial_cutoff;
    let n = config.target_cutoff;
    if h_int.cutoff() != big_n {
        return Err(Error::InvalidConfig(format!(
            "interaction cutoff {} does not match configured initial cutoff {big_n}",
            h_int.cutoff()
        )));
    }
    if h0_diag.len() != h_int.dim() {
        return Err(Error::DimMismatch {
            left: h0_diag.len(),
            right: h_int.dim(),
        });
    }
    let m = h_int.half_bandwidth();
    let g = config.g;

    // Window over global rows lo..=t, top state at local index size - 1.
    let mut lo = big_n.saturating_sub(m);
    let mut size = big_n - lo + 1;
    let mut w = vec![vec![0.0; m + 1]; m + 1];
    for a in 0..size {
        for b in 0..size {
            w[a][b] = h_int.at(lo + a, lo + b);
        }
    }

    for t in (n + 1..=big_n).rev() {
        debug_assert_eq!(lo + size - 1, t);
        let tt = size - 1;
        // Same expression tree as the single-step functions, so the window
        // path matches them bitwise.
        match config.mode {
            Mode::Approximate => {
                let den = h0_diag[t] + g * w[tt][tt];
                if den <= config.pivot_floor {
                    return Err(Error::SingularPivot { index: t, pivot: den });
                }
                for a in 0..tt {
                    for b in 0..=a {
                        let v = w[a][b] - g * (w[a][tt] * w[tt][b]) / den;
                        w[a][b] = v;
                        w[b][a] = v;
                    }
                }
            }
            Mode::ExactAtE => {
                let den = config.trial_e - (h0_diag[t] + g * w[tt][tt]);
                if den.abs() < config.pivot_floor {
                    return Err(Error::SingularPivot { index: t, pivot: den });
                }
                for a in 0..tt {
                    for b in 0..=a {
                        let v = w[a][b] + g * (w[a][tt] * w[tt][b]) / den;
                        w[a][b] = v;
                        w[b][a] = v;
                    }
                }
            }
        }
        // Slide down one state, pulling in the fresh unrenormalized row.
        if lo > 0 {
            for a in (1..size).rev() {
                for b in (1..size).rev() {
                    w[a][b] = w[a - 1][b - 1];
                }
            }
            lo -= 1;
            w[0][0] = h_int.at(lo, lo);
            for b in 1..size {
                let v = h_int.at(lo, lo + b);
                w[0][b] = v;
                w[b][0] = v;
            }
        } else {
            size -= 1;
        }
    }

    let dim = n + 1;
    let m_out = m.min(n);
    let mut diagonals: Vec<Vec<f64>> = (0..=m_out)
        .map(|i| h_int.diagonal(i)[..dim - i].to_vec())
        .collect();
    if n < big_n {
        // Renormalization lives in the square lo_ren..=n; everything else is
        // already correct from the verbatim copy above.
        let lo_ren = (n + 1).saturating_sub(m);
        for k in lo_ren..=n {
            for l in lo_ren..=k {
                diagonals[k - l][l] = w[k - lo][l - lo];
            }
        }
    }
    BandMatrix::from_diagonals(dim, diagonals)
}

/// Reduces the oscillator Hamiltonian at coupling `config.g` from
/// `config.initial_cutoff` to `config.target_cutoff` and returns the full
/// renormalized Hamiltonian `H0 + g H_I'`.
pub fn reduce(config: &RgConfig) -> Result<BandMatrix> {
    config.validate()?;
    let h0 = oscillator::free_diagonal(config.initial_cutoff);
    let h_int = oscillator::interaction(config.initial_cutoff)?;
    let reduced = reduce_interaction(&h0, &h_int, config)?;
    assemble_hamiltonian(config.g, &reduced)
}

/// `diag(k) + g * H_I`, entry for entry the expression used by
/// [`oscillator::hamiltonian`], so unrenormalized entries agree bitwise with
/// a plain-cutoff Hamiltonian.
fn assemble_hamiltonian(g: f64, h_int: &BandMatrix) -> Result<BandMatrix> {
    let gen = FnBandGenerator::new(h_int.half_bandwidth(), |i, k| {
        let free = if i == 0 { k as f64 } else { 0.0 };
        free + g * h_int.at(k, k - i)
    });
    BandMatrix::build(&gen, h_int.cutoff())
}

/// Difference between a renormalized matrix and its plain-cutoff counterpart
/// over the corner the renormalization is confined to.
#[derive(Debug, Clone)]
pub struct CornerDelta {
    /// Global index of the first corner row/column.
    pub corner_start: usize,
    /// `renormalized - plain` over the corner square, rows ascending.
    pub delta: Vec<Vec<f64>>,
}

impl CornerDelta {
    /// Largest absolute difference in the corner.
    pub fn max_abs(&self) -> f64 {
        self.delta
            .iter()
            .flatten()
            .fold(0.0f64, |acc, v| acc.max(v.abs()))
    }
}

/// Extracts the `m x m` highest-index corner difference between a reduced
/// matrix and the plain truncation, verifying on the way that every entry
/// outside that corner agrees exactly.
pub fn corner_delta(renormalized: &BandMatrix, plain: &BandMatrix) -> Result<CornerDelta> {
    if renormalized.dim() != plain.dim() {
        return Err(Error::DimMismatch {
            left: renormalized.dim(),
            right: plain.dim(),
        });
    }
    if renormalized.half_bandwidth() != plain.half_bandwidth() {
        return Err(Error::InvalidConfig(format!(
            "half-bandwidth mismatch: {} vs {}",
            renormalized.half_bandwidth(),
            plain.half_bandwidth()
        )));
    }
    let dim = renormalized.dim();
    let m = renormalized.half_bandwidth();
    let c = m.min(dim);
    let start = dim - c;
    // A stored entry (l + i, l) lies in the corner square iff l >= start.
    for i in 0..=m {
        for l in 0..start.min(dim - i) {
            let a = renormalized.diagonal(i)[l];
            let b = plain.diagonal(i)[l];
            if a != b {
                return Err(Error::LocalityViolation {
                    m,
                    k: l + i,
                    l,
                    delta: a - b,
                });
            }
        }
    }
    let delta = (0..c)
        .map(|a| {
            (0..c)
                .map(|b| renormalized.at(start + a, start + b) - plain.at(start + a, start + b))
                .collect()
        })
        .collect();
    Ok(CornerDelta {
        corner_start: start,
        delta,
    })
}

/// Position of entry `(k, l)` in the six-coefficient corner parametrization
/// at cutoff `n`, if it has one: diagonal entries `(n - j, n - j)` are
/// coefficients `j + 1` for `j <= 3`, `(n, n - 2)` is 5 and `(n - 1, n - 3)`
/// is 6. Every other renormalized corner entry either vanishes structurally
/// or is related to these by symmetry.
pub fn xi_index(k: usize, l: usize, n: usize) -> Option<usize> {
    let (hi, lo) = if k >= l { (k, l) } else { (l, k) };
    if hi > n {
        return None;
    }
    if hi == lo {
        return if n - hi <= 3 { Some(n - hi + 1) } else { None };
    }
    if hi == n && lo + 2 == n {
        Some(5)
    } else if hi + 1 == n && lo + 3 == n {
        Some(6)
    } else {
        None
    }
}

/// Unrenormalized oscillator interaction elements entering the flow step that
/// eliminates state `n`; `f_kl` is the element at `(n - k, n - l)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowInputs {
    /// Diagonal at the eliminated state, `(n, n)`.
    pub f00: f64,
    /// Offset-2 coupling `(n, n - 2)`.
    pub f02: f64,
    /// Offset-4 coupling `(n, n - 4)`.
    pub f04: f64,
    /// Diagonal two below, `(n - 2, n - 2)`.
    pub f22: f64,
    /// Offset-2 coupling `(n - 2, n - 4)`.
    pub f24: f64,
    /// Diagonal four below, `(n - 4, n - 4)`.
    pub f44: f64,
}

impl FlowInputs {
    /// Requires `n >= 4`.
    fn at(n: usize) -> Self {
        use crate::oscillator::interaction_element as elem;
        Self {
            f00: elem(0, n),
            f02: elem(2, n),
            f04: elem(4, n),
            f22: elem(0, n - 2),
            f24: elem(2, n - 2),
            f44: elem(0, n - 4),
        }
    }
}

/// Corner coefficients at one retained cutoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiStep {
    pub cutoff: usize,
    /// `xi[i]` is coefficient `i + 1` of the six-coefficient parametrization.
    pub xi: [f64; 6],
    /// Inputs consumed by the elimination of state `cutoff`; for the final
    /// row that step is never taken.
    pub inputs: FlowInputs,
}

/// Flow of the six corner coefficients, one row per cutoff descending from
/// the initial cutoff.
#[derive(Debug, Clone, PartialEq)]
pub struct XiTrace {
    pub g: f64,
    pub initial_cutoff: usize,
    pub min_cutoff: usize,
    pub trial_e: f64,
    pub steps: Vec<XiStep>,
}

impl XiTrace {
    /// Row at cutoff `n`, if the trace covers it.
    pub fn at_cutoff(&self, n: usize) -> Option<&XiStep> {
        if n > self.initial_cutoff || n < self.min_cutoff {
            return None;
        }
        self.steps.get(self.initial_cutoff - n)
    }

    /// Writes CSV rows `n,xi1,...,xi6` with 17 significant digits,
    /// descending in `n`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "n,xi1,xi2,xi3,xi4,xi5,xi6")?;
        for step in &self.steps {
            write!(w, "{}", step.cutoff)?;
            for v in step.xi {
                write!(w, ",{:.16e}", v)?;
            }
            writeln!(w)?;
        }
        Ok(())
    }
}

/// Evolves the six corner coefficients of the oscillator interaction from
/// `initial_cutoff` down to `min_cutoff` at coupling `g` and trial energy
/// `trial_e` (0 for the spectrum-independent scheme), without forming any
/// matrix.
///
/// At the starting cutoff nothing is renormalized, so all six coefficients
/// are exactly 1. Eliminating state `t` maps the coefficients at cutoff `t`
/// to those at `t - 1`:
///
/// ```text
/// D      = trial_e - (t + g xi1 f00)
/// xi1' = xi2                                  xi2' = xi3 + g xi5^2 f02^2 / (f22 D)
/// xi3' = xi4                                  xi4' = 1 + g f04^2 / (f44 D)
/// xi5' = xi6                                  xi6' = 1 + g xi5 f02 f04 / (f24 D)
/// ```
///
/// The primed odd coefficients are pure relabelings because the odd-offset
/// couplings to the eliminated state vanish; the even updates add the
/// second-order correction from the one eliminated state. `min_cutoff >= 4`
/// keeps every ratio and denominator well defined: one step further, the
/// step eliminating state 3 would divide by the vanishing coupling
/// `f24 = 0`.
pub fn xi_flow(g: f64, initial_cutoff: usize, min_cutoff: usize, trial_e: f64) -> Result<XiTrace> {
    if !g.is_finite() || !trial_e.is_finite() {
        return Err(Error::InvalidConfig(format!(
            "coupling and trial energy must be finite, got {g} and {trial_e}"
        )));
    }
    if min_cutoff < 4 {
        return Err(Error::InvalidConfig(format!(
            "corner coefficients need min cutoff >= 4, got {min_cutoff}"
        )));
    }
    if initial_cutoff < min_cutoff + 2 {
        return Err(Error::InvalidConfig(format!(
            "initial cutoff {initial_cutoff} must exceed min cutoff {min_cutoff} by at least 2"
        )));
    }

    let mut xi = [1.0f64; 6];
    let mut steps = Vec::with_capacity(initial_cutoff - min_cutoff + 1);
    steps.push(XiStep {
        cutoff: initial_cutoff,
        xi,
        inputs: FlowInputs::at(initial_cutoff),
    });
    for t in (min_cutoff + 1..=initial_cutoff).rev() {
        let f = FlowInputs::at(t);
        let den = trial_e - (t as f64 + g * (xi[0] * f.f00));
        if den.abs() < DEFAULT_PIVOT_FLOOR {
            return Err(Error::SingularPivot { index: t, pivot: den });
        }
        xi = [
            xi[1],
            xi[2] + g * (xi[4] * xi[4]) * (f.f02 * f.f02) / (f.f22 * den),
            xi[3],
            1.0 + g * (f.f04 * f.f04) / (f.f44 * den),
            xi[5],
            1.0 + g * (xi[4] * f.f02) * f.f04 / (f.f24 * den),
        ];
        steps.push(XiStep {
            cutoff: t - 1,
            xi,
            inputs: FlowInputs::at(t - 1),
        });
    }
    Ok(XiTrace {
        g,
        initial_cutoff,
        min_cutoff,
        trial_e,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bandmat::FnBandGenerator;
    use crate::eig::eigenvalues_symmetric;
    use crate::oscillator::{free_diagonal, hamiltonian, interaction, OscillatorParams};
    use proptest::prelude::*;

    fn band(m: usize, cutoff: usize, f: impl Fn(usize, usize) -> f64) -> BandMatrix {
        BandMatrix::build(&FnBandGenerator::new(m, f), cutoff).unwrap()
    }

    #[test]
    fn exact_step_two_by_two_closed_form() {
        // [[0, 1], [1, 2]] eliminated at E = 0: 0 + 1 * 1 / (0 - 2) = -1/2.
        let h = band(1, 1, |i, k| if i == 0 { 2.0 * k as f64 } else { 1.0 });
        assert_eq!(h.at(0, 0), 0.0);
        assert_eq!(h.at(1, 0), 1.0);
        assert_eq!(h.at(1, 1), 2.0);
        let reduced = eliminate_top_exact(&h, 0.0).unwrap();
        assert_eq!(reduced.dim(), 1);
        assert_eq!(reduced.at(0, 0), -0.5);
    }

    #[test]
    fn exact_step_preserves_trial_eigenvalue() {
        let h = band(2, 4, |i, k| match i {
            0 => 2.0 + k as f64,
            _ => 0.4 + 0.1 * k as f64,
        });
        let evs = eigenvalues_symmetric(&h.to_dense()).unwrap();
        for &e_star in &evs {
            let reduced = eliminate_top_exact(&h, e_star).unwrap();
            let revs = eigenvalues_symmetric(&reduced.to_dense()).unwrap();
            let closest = revs
                .iter()
                .map(|v| (v - e_star).abs())
                .fold(f64::INFINITY, f64::min);
            assert!(closest < 1e-10, "lost eigenvalue {e_star}: {closest:e}");
        }
    }

    #[test]
    fn exact_step_rejects_singular_pivot() {
        let h = band(1, 3, |i, k| (1 + i + k) as f64);
        let top = h.at(3, 3);
        match eliminate_top_exact(&h, top) {
            Err(Error::SingularPivot { index: 3, pivot }) => assert_eq!(pivot, 0.0),
            other => panic!("expected SingularPivot, got {other:?}"),
        }
    }

    #[test]
    fn approx_step_matches_hand_evaluated_oscillator_entry() {
        // At cutoff 6, eliminating state 6 corrects the (4, 4) interaction
        // entry by -f02^2 / (6 + f00): 123 - (22 sqrt(30))^2 / (6 + 255).
        let hi = interaction(6).unwrap();
        let reduced = eliminate_top_approx(&free_diagonal(6), &hi, 1.0).unwrap();
        let want = 123.0 - 14520.0 / 261.0;
        assert!((reduced.at(4, 4) - want).abs() < 1e-12 * want);
        // Entries not coupled to state 6 are copied verbatim.
        assert_eq!(reduced.at(1, 1), hi.at(1, 1));
        assert_eq!(reduced.at(3, 1), hi.at(3, 1));
    }

    #[test]
    fn approx_step_rejects_nonpositive_denominator() {
        let hi = band(1, 2, |i, _| if i == 0 { -1.0 } else { 0.3 });
        match eliminate_top_approx(&[0.0, 0.0, 0.0], &hi, 1.0) {
            Err(Error::SingularPivot { index: 2, pivot }) => assert_eq!(pivot, -1.0),
            other => panic!("expected SingularPivot, got {other:?}"),
        }
    }

    #[test]
    fn approx_step_checks_dimensions() {
        let hi = interaction(5).unwrap();
        assert!(matches!(
            eliminate_top_approx(&free_diagonal(4), &hi, 1.0),
            Err(Error::DimMismatch { left: 5, right: 6 })
        ));
    }

    #[test]
    fn reduce_with_equal_cutoffs_is_identity() {
        let config = RgConfig::approximate(0.75, 24, 24);
        let reduced = reduce(&config).unwrap();
        let direct = hamiltonian(&OscillatorParams::new(0.75).unwrap(), 24).unwrap();
        assert_eq!(reduced, direct);
    }

    #[test]
    fn reduce_at_zero_coupling_is_plain_truncation() {
        let config = RgConfig::approximate(0.0, 30, 12);
        let reduced = reduce(&config).unwrap();
        let direct = hamiltonian(&OscillatorParams::new(0.0).unwrap(), 12).unwrap();
        assert_eq!(reduced, direct);
    }

    #[test]
    fn window_path_reproduces_iterated_single_steps_bitwise() {
        let g = 1.0;
        let (big_n, n) = (30usize, 9usize);
        let fast = reduce_interaction(
            &free_diagonal(big_n),
            &interaction(big_n).unwrap(),
            &RgConfig::approximate(g, big_n, n),
        )
        .unwrap();
        let mut slow = interaction(big_n).unwrap();
        for t in (n + 1..=big_n).rev() {
            slow = eliminate_top_approx(&free_diagonal(t), &slow, g).unwrap();
        }
        assert_eq!(fast.dim(), slow.dim());
        for i in 0..=fast.half_bandwidth() {
            for (a, b) in fast.diagonal(i).iter().zip(slow.diagonal(i)) {
                assert_eq!(a.to_bits(), b.to_bits());
            }
        }
    }

    #[test]
    fn window_path_matches_iterated_exact_steps() {
        // With H0 = 0 and g = 1 the interaction reduction at trial energy E
        // is the exact elimination of the matrix itself.
        let h = band(3, 20, |i, k| match i {
            0 => 3.0 + 0.5 * k as f64,
            _ => 0.2 + 0.05 * (i * k) as f64,
        });
        let e = 0.37;
        let config = RgConfig::exact_at(1.0, 20, 8, e);
        let fast = reduce_interaction(&vec![0.0; 21], &h, &config).unwrap();
        let mut slow = h.clone();
        for _ in 0..12 {
            slow = eliminate_top_exact(&slow, e).unwrap();
        }
        for k in 0..=8 {
            for l in 0..=k {
                let (a, b) = (fast.at(k, l), slow.at(k, l));
                assert!(
                    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0),
                    "({k}, {l}): {a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn reduction_changes_only_the_corner() {
        let config = RgConfig::approximate(10.0, 60, 20);
        let reduced = reduce(&config).unwrap();
        let plain = hamiltonian(&OscillatorParams::new(10.0).unwrap(), 60)
            .unwrap()
            .truncate(20)
            .unwrap();
        let delta = corner_delta(&reduced, &plain).unwrap();
        assert_eq!(delta.corner_start, 17);
        assert!(delta.max_abs() > 0.0);
        // Parity is conserved: states of odd and even occupation never mix,
        // so odd-offset entries stay exactly zero even inside the corner and
        // the whole shift sits in the six even-offset slots.
        assert_eq!(reduced.at(20, 19), 0.0);
        assert_eq!(reduced.at(20, 17), 0.0);
        assert_ne!(reduced.at(20, 18), plain.at(20, 18));
        assert_ne!(reduced.at(19, 17), plain.at(19, 17));
        assert_ne!(reduced.at(18, 18), plain.at(18, 18));
    }

    #[test]
    fn corner_delta_flags_outside_changes() {
        let plain = band(2, 10, |i, k| (i + k) as f64);
        let doctored = band(2, 10, |i, k| {
            let v = (i + k) as f64;
            if i == 1 && k == 3 {
                v + 1e-9
            } else {
                v
            }
        });
        match corner_delta(&doctored, &plain) {
            Err(Error::LocalityViolation { k: 3, l: 2, .. }) => {}
            other => panic!("expected LocalityViolation, got {other:?}"),
        }
    }

    #[test]
    fn corner_delta_zero_coupling_is_all_zeros() {
        let config = RgConfig::approximate(0.0, 40, 15);
        let reduced = reduce(&config).unwrap();
        let plain = hamiltonian(&OscillatorParams::new(0.0).unwrap(), 40)
            .unwrap()
            .truncate(15)
            .unwrap();
        let delta = corner_delta(&reduced, &plain).unwrap();
        assert_eq!(delta.max_abs(), 0.0);
    }

    #[test]
    fn exact_step_on_a_decoupled_top_state_is_plain_truncation() {
        // When nothing couples to the top state, every correction term carries
        // a factor of zero and elimination degenerates to dropping the state.
        let h = band(3, 8, |i, k| {
            if i > 0 && k == 8 {
                0.0
            } else {
                1.0 + (i * 10 + k) as f64
            }
        });
        let reduced = eliminate_top_exact(&h, 0.3).unwrap();
        let truncated = h.truncate(7).unwrap();
        assert_eq!(reduced, truncated);
    }

    #[test]
    fn reduction_touches_exactly_eight_corner_entries() {
        // Reducing 20 -> 12 at unit coupling changes the four highest diagonal
        // entries and the two highest offset-2 entries; with their mirror
        // images that is eight positions in the corner square, six of them
        // independent by symmetry.
        let config = RgConfig::approximate(1.0, 20, 12);
        let reduced = reduce(&config).unwrap();
        let plain = hamiltonian(&OscillatorParams::new(1.0).unwrap(), 20)
            .unwrap()
            .truncate(12)
            .unwrap();
        let delta = corner_delta(&reduced, &plain).unwrap();
        assert_eq!(delta.corner_start, 9);
        let mut touched = Vec::new();
        for (a, row) in delta.delta.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                if *v != 0.0 {
                    touched.push((9 + a, 9 + b));
                }
            }
        }
        assert_eq!(
            touched,
            vec![
                (9, 9),
                (9, 11),
                (10, 10),
                (10, 12),
                (11, 9),
                (11, 11),
                (12, 10),
                (12, 12),
            ]
        );
        // The two off-diagonal changes appear twice, once per triangle.
        assert_eq!(delta.delta[0][2], delta.delta[2][0]);
        assert_eq!(delta.delta[1][3], delta.delta[3][1]);
    }

    #[test]
    fn xi_index_maps_the_six_corner_slots() {
        let n = 100;
        assert_eq!(xi_index(n, n, n), Some(1));
        assert_eq!(xi_index(n - 1, n - 1, n), Some(2));
        assert_eq!(xi_index(n - 2, n - 2, n), Some(3));
        assert_eq!(xi_index(n - 3, n - 3, n), Some(4));
        assert_eq!(xi_index(n, n - 2, n), Some(5));
        assert_eq!(xi_index(n - 2, n, n), Some(5));
        assert_eq!(xi_index(n - 1, n - 3, n), Some(6));
        assert_eq!(xi_index(n - 3, n - 1, n), Some(6));
        assert_eq!(xi_index(n - 4, n - 4, n), None);
        assert_eq!(xi_index(n, n - 1, n), None);
        assert_eq!(xi_index(n, n - 4, n), None);
        assert_eq!(xi_index(n - 2, n - 4, n), None);
        assert_eq!(xi_index(n + 1, n + 1, n), None);
    }

    #[test]
    fn xi_flow_starts_at_unity_and_matches_matrix_reduction() {
        let g = 10.0;
        let (big_n, n_min) = (60usize, 8usize);
        let trace = xi_flow(g, big_n, n_min, 0.0).unwrap();
        assert_eq!(trace.steps.len(), big_n - n_min + 1);
        assert_eq!(trace.at_cutoff(big_n).unwrap().xi, [1.0; 6]);

        use crate::oscillator::interaction_element as elem;
        let mut hi = interaction(big_n).unwrap();
        for t in (n_min + 1..=big_n).rev() {
            hi = eliminate_top_approx(&free_diagonal(t), &hi, g).unwrap();
            let c = t - 1;
            let want = [
                hi.at(c, c) / elem(0, c),
                hi.at(c - 1, c - 1) / elem(0, c - 1),
                hi.at(c - 2, c - 2) / elem(0, c - 2),
                hi.at(c - 3, c - 3) / elem(0, c - 3),
                hi.at(c, c - 2) / elem(2, c),
                hi.at(c - 1, c - 3) / elem(2, c - 1),
            ];
            let got = trace.at_cutoff(c).unwrap().xi;
            for (i, (a, b)) in got.iter().zip(&want).enumerate() {
                assert!(
                    (a - b).abs() <= 1e-12 * b.abs(),
                    "xi{} at cutoff {c}: {a} vs {b}",
                    i + 1
                );
            }
        }
    }

    #[test]
    fn xi_flow_validates_range() {
        assert!(matches!(
            xi_flow(1.0, 50, 3, 0.0),
            Err(Error::InvalidConfig(_))
        ));
        assert!(matches!(
            xi_flow(1.0, 5, 4, 0.0),
            Err(Error::InvalidConfig(_))
        ));
        assert!(xi_flow(1.0, 6, 4, 0.0).is_ok());
    }

    #[test]
    fn xi_trace_csv_layout() {
        let trace = xi_flow(0.0, 6, 4, 0.0).unwrap();
        let mut buf = Vec::new();
        trace.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "n,xi1,xi2,xi3,xi4,xi5,xi6");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("6,1.0000000000000000e0,"));
        assert!(lines[3].starts_with("4,"));
    }

    #[test]
    fn config_validation_rejects_bad_values() {
        assert!(RgConfig::approximate(f64::NAN, 10, 5).validate().is_err());
        assert!(RgConfig::approximate(1.0, 5, 10).validate().is_err());
        assert!(RgConfig::exact_at(1.0, 10, 5, f64::INFINITY)
            .validate()
            .is_err());
        let mut config = RgConfig::approximate(1.0, 10, 5);
        config.pivot_floor = 0.0;
        assert!(config.validate().is_err());
        assert!(RgConfig::approximate(1.0, 10, 5).validate().is_ok());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn random_band_reductions_stay_local_and_banded(
            m in 1usize..5,
            keep in 0usize..8,
            steps in 1usize..6,
            diag in proptest::collection::vec(0.0..0.5f64, 24),
            off in proptest::collection::vec(-0.5..0.5f64, 96),
        ) {
            let target = m + 2 + keep;
            let big_n = target + steps;
            let h = band(m, big_n, |i, k| {
                if i == 0 {
                    (k + 1) as f64 + diag[k % diag.len()]
                } else {
                    off[(i * 31 + k * 7) % off.len()]
                }
            });
            let zeros = vec![0.0; big_n + 1];
            let config = RgConfig::approximate(1.0, big_n, target);
            let reduced = reduce_interaction(&zeros, &h, &config).unwrap();
            prop_assert_eq!(reduced.half_bandwidth(), m);
            prop_assert_eq!(reduced.dim(), target + 1);
            let plain = h.truncate(target).unwrap();
            let delta = corner_delta(&reduced, &plain);
            prop_assert!(delta.is_ok(), "locality violated: {:?}", delta.err());
        }

        #[test]
        fn multi_step_exact_reduction_preserves_trial_eigenvalue(
            m in 1usize..4,
            steps in 1usize..5,
            diag in proptest::collection::vec(0.0..0.5f64, 16),
            off in proptest::collection::vec(-0.4..0.4f64, 64),
        ) {
            let target = m + 3;
            let big_n = target + steps;
            let h = band(m, big_n, |i, k| {
                if i == 0 {
                    (k + 1) as f64 + diag[k % diag.len()]
                } else {
                    off[(i * 31 + k * 7) % off.len()]
                }
            });
            let e_star = eigenvalues_symmetric(&h.to_dense()).unwrap()[0];
            let config = RgConfig::exact_at(1.0, big_n, target, e_star);
            let reduced = reduce_interaction(&vec![0.0; big_n + 1], &h, &config).unwrap();
            let revs = eigenvalues_symmetric(&reduced.to_dense()).unwrap();
            let closest = revs
                .iter()
                .map(|v| (v - e_star).abs())
                .fold(f64::INFINITY, f64::min);
            prop_assert!(closest <= 1e-9, "eigenvalue {} drifted by {:e}", e_star, closest);
        }
    }
}
