//! Compile one Trotter step of the model Hamiltonian into an abstract
//! NMR schedule (delays, frequency offsets, rotations) and verify the
//! composed schedule against the target step unitary.
//!
//! Run with: `cargo run --release --example pulse_schedule`

use trispin::adiabatic::trotter_step_unitary;
use trispin::algebra::process_fidelity;
use trispin::hamiltonian::HamiltonianParams;
use trispin::pulse::{compile_step, simulate_plan, NmrSystem};

fn main() -> trispin::Result<()> {
    // Case A endpoint with a small three-body term added, so every
    // schedule element appears.
    let p = HamiltonianParams::new(-2.0, 0.09, 1.0, 0.3, 3, true)?;
    let tau = 0.05;
    let sys = NmrSystem::synthetic();

    let plan = compile_step(&p, tau, &sys)?;
    print!("{}", plan.listing());

    let realized = simulate_plan(&plan)?;
    let target = trotter_step_unitary(&p, tau)?;
    println!(
        "\nprocess fidelity against the Trotter step: {:.12}",
        process_fidelity(&realized, &target)
    );

    // negative couplings compile but are flagged
    let reversed = HamiltonianParams::new(0.0, 0.0, -1.0, 0.0, 3, true)?;
    let plan = compile_step(&reversed, tau, &sys)?;
    println!(
        "\nJ2 = -1 compiles with delays {:?} (realizable = {})",
        plan.delays, plan.realizable
    );
    Ok(())
}
