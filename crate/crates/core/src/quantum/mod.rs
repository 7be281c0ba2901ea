//! Quantum side: periodic grid, Lagrangian states, Weyl operators and
//! split-step propagation.

mod grid;
mod propagate;
mod state;
mod weyl;

pub use grid::Grid;
pub use propagate::{split_step_propagate, Propagation, SplitStep, StabilityWarning};
pub use state::{synthesize_momentum_state, synthesize_state, WaveFunction};
pub use weyl::{expectation, weyl_quantize, weyl_quantize_dense, OperatorForm, WeylOperator};
