//! Classify the ground state across the (J2, J3) plane and print a small
//! regime map, plus the classification of the exemplar states.
//!
//! Run with: `cargo run --release --example ground_state_phases`

use trispin::config::{ExperimentConfig, GridAxis};
use trispin::experiments::run_phase_scan;
use trispin::ground_state::{classify_pure_state, three_tangle, PhaseLabel};
use trispin::state::{Spin, StateVector};

fn main() -> trispin::Result<()> {
    println!("exemplar states:");
    for (name, psi) in [
        ("|uuu>      ", StateVector::basis(3, 0)),
        ("GHZ-       ", StateVector::ghz(3, -1.0)),
        ("GHZ+       ", StateVector::ghz(3, 1.0)),
        ("W (one down)", StateVector::w_single_flip(3, Spin::Down)),
        ("H^3 GHZ-   ", StateVector::ghz(3, -1.0).hadamard_all()),
    ] {
        println!(
            "  {name}: {} (three-tangle {:.3})",
            classify_pure_state(&psi)?,
            three_tangle(&psi)?
        );
    }

    // Case A field frame: wz = -2, wx = 0.09
    let mut cfg = ExperimentConfig::custom();
    cfg.grid_j2 = GridAxis {
        lo: 0.0,
        hi: 2.0,
        samples: 25,
    };
    cfg.grid_j3 = GridAxis {
        lo: 0.0,
        hi: 2.0,
        samples: 25,
    };
    let points = run_phase_scan(&cfg)?;

    println!("\nregime map for wz = -2, wx = 0.09 (rows: J3 top-down, cols: J2):");
    println!("  . product   w  W-type   g  GHZ-type   = degenerate boundary");
    let n = 25;
    for row in (0..n).rev() {
        let mut line = String::from("  ");
        for col in 0..n {
            // points are row-major in (j2, j3)
            let p = &points[col * n + row];
            line.push(match p.phase {
                PhaseLabel::Product => '.',
                PhaseLabel::WType => 'w',
                PhaseLabel::GhzType => 'g',
                PhaseLabel::DegenerateBoundary => '=',
            });
        }
        println!("{line}");
    }
    println!("  J2 from 0 (left) to 2 (right); J3 from 0 (bottom) to 2 (top)");
    Ok(())
}
