//! Numerical simulator for small spin-1/2 chains with competing one-,
//! two- and three-body Ising interactions:
//!
//!   H = wz sum sz^i + wx sum sx^i + J2 sum sz^i sz^{i+1}
//!       + J3 sum sz^i sz^{i+1} sz^{i+2}
//!
//! On the periodic three-spin ring this model's ground state moves
//! between a product regime, a W-type entangled regime (driven by the
//! two-body coupling) and a GHZ-type entangled regime (driven by the
//! three-body coupling). The crate drives discretized adiabatic scans
//! between the regimes, models per-spin relaxation, detects the
//! transitions through two-spin correlations and entanglement witnesses,
//! and compiles individual Trotter steps into abstract NMR pulse
//! schedules.
//!
//! ## Examples
//!
//! Each major capability has a runnable example:
//!
//! - **`ground_state_phases`** — classify ground states over the
//!   (J2, J3) plane and print a regime map
//! - **`case_a_correlation_step`** — J2 scan whose transition shows up
//!   as a step in the two-spin correlation C_xx
//! - **`case_b_witness_detection`** — J3 scan invisible to C_xx but
//!   caught by the GHZ witness, with and without decoherence
//! - **`step_count_tradeoff`** — minimum scan fidelity vs step count;
//!   decoherence turns it into an interior optimum
//! - **`trotter_error_scaling`** — third-order error of the symmetric
//!   Trotter step
//! - **`pulse_schedule`** — compile a step into delays, offsets and
//!   rotations, and verify the realized unitary
//! - **`critical_gap_scan`** — spectral gap and degeneracy along one
//!   coupling axis
//!
//! ```bash
//! cargo run --release --example case_a_correlation_step
//! cargo run --release --example step_count_tradeoff
//! ```
//!
//! The `trispin` binary exposes the same machinery as CLI verbs (`run`,
//! `msweep`, `phasescan`, `compile-pulse`, `selftest`) with CSV output;
//! see the crate README.
//!
//! ## Layout
//!
//! - [`algebra`] — dense complex matrices, Pauli operators, Hermitian
//!   eigendecomposition, matrix exponentials
//! - [`state`] — state vectors, density matrices, partial traces
//! - [`hamiltonian`] — the model Hamiltonian and its x/z split
//! - [`ground_state`] — ground spaces, gaps, degeneracies, and the
//!   product/W/GHZ classifier (three-tangle based)
//! - [`adiabatic`] — control schedules, Trotter steps, the decoherence
//!   channel, and the scan driver
//! - [`observables`] — correlations, witnesses, projective witness
//!   measurement, fidelity measures, decay rescaling
//! - [`pulse`] — pulse-schedule compilation and verification
//! - [`config`] / [`experiments`] — experiment configuration, named
//!   cases, CSV emission
//! - [`selftest`] — seeded self-check battery

pub mod adiabatic;
pub mod algebra;
pub mod config;
pub mod error;
pub mod experiments;
pub mod ground_state;
pub mod hamiltonian;
pub mod observables;
pub mod pulse;
pub mod selftest;
pub mod state;

pub use adiabatic::{DecoherenceParams, Evolution, ScanTrace, Schedule};
pub use error::{Error, Result};
pub use ground_state::{GroundStateReport, PhaseLabel};
pub use hamiltonian::{ControlKnob, HamiltonianParams};
pub use observables::WitnessOperator;
pub use state::{DensityMatrix, Spin, StateVector};
