pub mod bandmat;
pub mod eig;
pub mod error;
pub mod harness;
pub mod oscillator;
mod plot;
pub mod rg;

pub use bandmat::{BandGenerator, BandMatrix, FnBandGenerator};
pub use eig::{eigenvalues_symmetric, lowest_k, Method, Spectrum};
pub use error::{Error, Result};
pub use harness::{
    compare_rg_pc, convergence_study, reference_spectrum, write_comparison_report, xi_flow_report,
    ComparisonReport, ComparisonRow, ConvergenceReport, REFERENCE_CUTOFF,
};
pub use oscillator::OscillatorParams;
pub use rg::{
    corner_delta, eliminate_top_approx, eliminate_top_exact, reduce, reduce_interaction, xi_flow,
    xi_index, CornerDelta, FlowInputs, Mode, RgConfig, XiStep, XiTrace,
};
