//! Seeded sampled self-checks, used by the `selftest` CLI verb.
//!
//! Each check draws its own deterministic RNG stream from the configured
//! seed, so individual checks are reproducible in isolation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adiabatic::{run_adiabatic_scan, trotter_step_unitary, ScanOptions};
use crate::algebra::{
    hermitian_eigensystem, max_abs_diff, unitary_exp, C64, CMatrix, CVector, unitarity_defect,
};
use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::hamiltonian::{build_hamiltonian, HamiltonianParams};
use crate::observables::{GhzReference, WitnessOperator};
use crate::pulse::{compile_step, simulate_plan, NmrSystem};
use crate::state::{DensityMatrix, Spin, StateVector};

/// Outcome of one self-check.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> CMatrix {
    let g = CMatrix::from_fn(dim, dim, |_, _| {
        C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
    });
    (&g + g.adjoint()) * C64::new(0.5, 0.0)
}

fn random_density_matrix(rng: &mut ChaCha8Rng, dim: usize) -> DensityMatrix {
    let g = CMatrix::from_fn(dim, dim, |_, _| {
        C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
    });
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(m * C64::new(1.0 / tr, 0.0)).expect("Wishart state is valid")
}

fn random_product_state(rng: &mut ChaCha8Rng) -> StateVector {
    let mut amps = CVector::from_element(1, C64::new(1.0, 0.0));
    for _ in 0..3 {
        let mut q = CVector::from_fn(2, |_, _| {
            C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        });
        q /= C64::new(q.norm(), 0.0);
        amps = amps.kronecker(&q);
    }
    StateVector::new(amps).expect("normalized by construction")
}

fn check(name: &'static str, run: impl FnOnce() -> Result<(bool, String)>) -> CheckOutcome {
    match run() {
        Ok((passed, detail)) => CheckOutcome {
            name,
            passed,
            detail,
        },
        Err(e) => CheckOutcome {
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

/// Run the full self-check battery with the given seed.
pub fn run_selftest(seed: u64) -> Vec<CheckOutcome> {
    let mut results = Vec::new();

    results.push(check("eigensystem-reconstruction", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x01);
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let h = random_hermitian(&mut rng, 8);
            let eig = hermitian_eigensystem(&h)?;
            let scale = eig.eigenvalues.iter().fold(1.0, |a: f64, &l| a.max(l.abs()));
            worst = worst.max(max_abs_diff(&eig.reconstruct(), &h) / scale);
        }
        Ok((worst <= 1e-9, format!("worst relative defect {worst:.2e}")))
    }));

    results.push(check("unitary-exp-inverse", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x02);
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let h = random_hermitian(&mut rng, 8);
            let t = rng.random::<f64>();
            let u = unitary_exp(&h, t)?;
            let v = unitary_exp(&h, -t)?;
            worst = worst.max(max_abs_diff(&(u * v), &CMatrix::identity(8, 8)));
        }
        Ok((worst <= 1e-9, format!("worst defect {worst:.2e}")))
    }));

    results.push(check("witness-soundness-on-product-states", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x03);
        let witnesses = [
            WitnessOperator::w_witness(Spin::Down),
            WitnessOperator::w_witness(Spin::Up),
            WitnessOperator::ghz_witness(GhzReference::ZMinus),
            WitnessOperator::ghz_witness(GhzReference::XMinus),
        ];
        let mut min_value = f64::INFINITY;
        for _ in 0..1000 {
            let rho = DensityMatrix::from_pure(&random_product_state(&mut rng));
            for w in &witnesses {
                min_value = min_value.min(w.expectation(&rho)?);
            }
        }
        Ok((
            min_value >= -1e-9,
            format!("minimum witness value {min_value:.3e} over 1000 product states"),
        ))
    }));

    results.push(check("projective-matches-direct-expectation", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x04);
        let w = WitnessOperator::ghz_witness(GhzReference::XMinus);
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let rho = random_density_matrix(&mut rng, 8);
            worst = worst.max((w.expectation(&rho)? - w.measure_projectively(&rho)?).abs());
        }
        Ok((worst <= 1e-10, format!("worst disagreement {worst:.2e}")))
    }));

    results.push(check("pulse-roundtrip-process-fidelity", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x05);
        let sys = NmrSystem::synthetic();
        let mut worst: f64 = 1.0;
        for _ in 0..20 {
            let p = HamiltonianParams::new(
                4.0 * rng.random::<f64>() - 2.0,
                2.0 * rng.random::<f64>() - 1.0,
                0.2 + 1.8 * rng.random::<f64>(),
                0.2 + 1.8 * rng.random::<f64>(),
                3,
                true,
            )?;
            let tau = 0.02 + 0.08 * rng.random::<f64>();
            let plan = compile_step(&p, tau, &sys)?;
            let u = simulate_plan(&plan)?;
            let target = trotter_step_unitary(&p, tau)?;
            worst = worst.min(crate::algebra::process_fidelity(&u, &target));
        }
        Ok((
            worst >= 1.0 - 1e-6,
            format!("worst process fidelity {worst:.9}"),
        ))
    }));

    results.push(check("trotter-third-order-scaling", || {
        let p = HamiltonianParams::new(-2.0, 0.09, 1.0, 0.0, 3, true)?;
        let h = build_hamiltonian(&p)?;
        let taus = [0.1, 0.05, 0.025, 0.0125];
        let mut logs = Vec::new();
        for &tau in &taus {
            let err = (trotter_step_unitary(&p, tau)? - unitary_exp(&h, tau)?).norm();
            logs.push((tau.ln(), err.ln()));
        }
        let n = logs.len() as f64;
        let sx: f64 = logs.iter().map(|p| p.0).sum();
        let sy: f64 = logs.iter().map(|p| p.1).sum();
        let sxx: f64 = logs.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = logs.iter().map(|p| p.0 * p.1).sum();
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        Ok(((slope - 3.0).abs() <= 0.2, format!("slope {slope:.3}")))
    }));

    results.push(check("trotter-step-unitarity", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x06);
        let mut worst = 0.0f64;
        for _ in 0..10 {
            let p = HamiltonianParams::new(
                4.0 * rng.random::<f64>() - 2.0,
                rng.random::<f64>(),
                2.0 * rng.random::<f64>(),
                2.0 * rng.random::<f64>(),
                3,
                true,
            )?;
            let u = trotter_step_unitary(&p, 0.1)?;
            worst = worst.max(unitarity_defect(&u));
        }
        Ok((worst <= 1e-9, format!("worst unitarity defect {worst:.2e}")))
    }));

    results.push(check("ideal-scan-stays-pure-and-traced", || {
        let mut cfg = ExperimentConfig::case_a();
        cfg.decoherence = None;
        cfg.schedule.steps = 8;
        let trace = run_adiabatic_scan(
            &cfg.hamiltonian,
            &cfg.schedule,
            None,
            &ScanOptions::exact(),
        )?;
        let worst_purity = trace
            .steps
            .iter()
            .map(|s| (s.purity - 1.0).abs())
            .fold(0.0, f64::max);
        let worst_trace = trace
            .steps
            .iter()
            .map(|s| (s.rho.trace().re - 1.0).abs())
            .fold(0.0, f64::max);
        Ok((
            worst_purity <= 1e-9 && worst_trace <= 1e-9,
            format!("purity defect {worst_purity:.2e}, trace defect {worst_trace:.2e}"),
        ))
    }));

    results
}
