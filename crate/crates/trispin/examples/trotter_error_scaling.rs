//! Third-order error scaling of the symmetric Trotter step
//! `exp(-i Hx tau/2) exp(-i Hz tau) exp(-i Hx tau/2)` against the exact
//! segment exponential.
//!
//! Run with: `cargo run --release --example trotter_error_scaling`

use trispin::adiabatic::trotter_step_unitary;
use trispin::algebra::unitary_exp;
use trispin::hamiltonian::{build_hamiltonian, HamiltonianParams};

fn main() -> trispin::Result<()> {
    // Case A at the transition point J2 = 1
    let p = HamiltonianParams::new(-2.0, 0.09, 1.0, 0.0, 3, true)?;
    let h = build_hamiltonian(&p)?;

    println!("     tau      ||S(tau) - exp(-i H tau)||_F");
    let mut log_points = Vec::new();
    for &tau in &[0.1, 0.05, 0.025, 0.0125] {
        let err = (trotter_step_unitary(&p, tau)? - unitary_exp(&h, tau)?).norm();
        println!("  {tau:>7.4}       {err:.6e}");
        log_points.push((tau.ln(), err.ln()));
    }

    let n = log_points.len() as f64;
    let sx: f64 = log_points.iter().map(|p| p.0).sum();
    let sy: f64 = log_points.iter().map(|p| p.1).sum();
    let sxx: f64 = log_points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = log_points.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    println!("\nlog-log slope: {slope:.4} (third-order step)");
    Ok(())
}
