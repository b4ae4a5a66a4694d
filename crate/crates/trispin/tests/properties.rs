//! Randomized invariants, run under proptest. Matrix- and state-valued
//! inputs are generated from a seed through a counter-mode RNG so shrink
//! behavior stays sane.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trispin::adiabatic::{ControlShape, Schedule};
use trispin::algebra::{max_abs_diff, unitary_exp, C64, CMatrix, CVector};
use trispin::ground_state::three_tangle;
use trispin::hamiltonian::{build_hamiltonian, split_xz, ControlKnob, HamiltonianParams};
use trispin::observables::{
    experimental_fidelity, fidelity, rescale_decay, GhzReference, WitnessOperator,
};
use trispin::state::{DensityMatrix, Spin, StateVector};

fn params_strategy() -> impl Strategy<Value = HamiltonianParams> {
    (
        -2.0f64..2.0,
        -1.0f64..1.0,
        -2.0f64..2.0,
        -2.0f64..2.0,
        prop::bool::ANY,
    )
        .prop_map(|(wz, wx, j2, j3, periodic)| {
            HamiltonianParams::new(wz, wx, j2, j3, 3, periodic).unwrap()
        })
}

fn random_hermitian(seed: u64, dim: usize) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = CMatrix::from_fn(dim, dim, |_, _| {
        C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
    });
    (&g + g.adjoint()) * C64::new(0.5, 0.0)
}

fn random_density_matrix(seed: u64) -> DensityMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = CMatrix::from_fn(8, 8, |_, _| {
        C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
    });
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(m * C64::new(1.0 / tr, 0.0)).unwrap()
}

fn random_product_state(seed: u64) -> StateVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut amps = CVector::from_element(1, C64::new(1.0, 0.0));
    for _ in 0..3 {
        let mut q = CVector::from_fn(2, |_, _| {
            C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        });
        q /= C64::new(q.norm(), 0.0);
        amps = amps.kronecker(&q);
    }
    StateVector::new(amps).unwrap()
}

fn random_pure_state(seed: u64) -> StateVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amps = CVector::from_fn(8, |_, _| {
        C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
    });
    StateVector::normalized(amps).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hamiltonian_splits_exactly_and_hz_diagonal(p in params_strategy()) {
        let h = build_hamiltonian(&p).unwrap();
        let (hx, hz) = split_xz(&p).unwrap();
        prop_assert_eq!(max_abs_diff(&(&hx + &hz), &h), 0.0);
        for i in 0..8 {
            for j in 0..8 {
                if i != j {
                    prop_assert!(hz[(i, j)].norm() == 0.0);
                }
            }
        }
    }

    #[test]
    fn hamiltonian_linear_in_coefficients(
        p in params_strategy(),
        q in params_strategy(),
        lambda in 0.0f64..1.0,
    ) {
        // interpolate only coefficient fields; geometry must match
        let q = HamiltonianParams { periodic: p.periodic, ..q };
        let mix = HamiltonianParams {
            omega_z: lambda * p.omega_z + (1.0 - lambda) * q.omega_z,
            omega_x: lambda * p.omega_x + (1.0 - lambda) * q.omega_x,
            j2: lambda * p.j2 + (1.0 - lambda) * q.j2,
            j3: lambda * p.j3 + (1.0 - lambda) * q.j3,
            ..p
        };
        let interpolated = build_hamiltonian(&p).unwrap() * C64::new(lambda, 0.0)
            + build_hamiltonian(&q).unwrap() * C64::new(1.0 - lambda, 0.0);
        prop_assert!(max_abs_diff(&build_hamiltonian(&mix).unwrap(), &interpolated) <= 1e-12);
    }

    #[test]
    fn schedule_endpoints_are_exact(
        c_start in -2.0f64..2.0,
        c_end in -2.0f64..2.0,
        steps in 1usize..64,
        sharpness in 0.1f64..6.0,
        linear in prop::bool::ANY,
    ) {
        let s = Schedule {
            knob: ControlKnob::J2,
            c_start,
            c_end,
            total_time: 10.0,
            steps,
            shape: if linear { ControlShape::Linear } else { ControlShape::HyperbolicSine },
            sinh_sharpness: sharpness,
        };
        prop_assert_eq!(s.control_value(0).unwrap(), c_start);
        prop_assert_eq!(s.control_value(steps).unwrap(), c_end);
    }

    #[test]
    fn evolution_inverts(seed in any::<u64>(), t in -2.0f64..2.0) {
        let h = random_hermitian(seed, 8);
        let u = unitary_exp(&h, t).unwrap();
        let v = unitary_exp(&h, -t).unwrap();
        prop_assert!(max_abs_diff(&(u * v), &CMatrix::identity(8, 8)) <= 1e-9);
    }

    #[test]
    fn witnesses_sound_on_product_states(seed in any::<u64>()) {
        let rho = DensityMatrix::from_pure(&random_product_state(seed));
        for w in [
            WitnessOperator::w_witness(Spin::Down),
            WitnessOperator::w_witness(Spin::Up),
            WitnessOperator::ghz_witness(GhzReference::ZMinus),
            WitnessOperator::ghz_witness(GhzReference::XPlus),
        ] {
            prop_assert!(w.expectation(&rho).unwrap() >= -1e-9);
        }
    }

    #[test]
    fn projective_equals_direct(seed in any::<u64>()) {
        let rho = random_density_matrix(seed);
        let w = WitnessOperator::ghz_witness(GhzReference::XMinus);
        let direct = w.expectation(&rho).unwrap();
        let projective = w.measure_projectively(&rho).unwrap();
        prop_assert!((direct - projective).abs() <= 1e-10);
    }

    #[test]
    fn tangle_invariant_under_local_phases(
        seed in any::<u64>(),
        phases in prop::array::uniform3(-std::f64::consts::PI..std::f64::consts::PI),
    ) {
        let psi = random_pure_state(seed);
        // per-site z rotations are local unitaries
        let mut u = CMatrix::identity(1, 1);
        for phi in phases {
            let mut site = CMatrix::identity(2, 2);
            site[(1, 1)] = C64::new(phi.cos(), phi.sin());
            u = u.kronecker(&site);
        }
        let rotated = psi.evolved(&u);
        let a = three_tangle(&psi).unwrap();
        let b = three_tangle(&rotated).unwrap();
        prop_assert!((a - b).abs() <= 1e-9);
    }

    #[test]
    fn fidelities_coincide_on_pure_states(seed in any::<u64>(), seed2 in any::<u64>()) {
        let rho = DensityMatrix::from_pure(&random_pure_state(seed));
        let target = random_pure_state(seed2);
        let f = fidelity(&rho, &target).unwrap();
        let fe = experimental_fidelity(&rho, &target).unwrap();
        prop_assert!((f - fe).abs() <= 1e-10);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&f));
    }

    #[test]
    fn rescaling_inverts_exponential_damping(
        kappa in 2.0f64..50.0,
        values in prop::collection::vec(0.1f64..2.0, 4..30),
    ) {
        let series: Vec<(f64, f64)> = values
            .iter()
            .enumerate()
            .map(|(m, &x)| (m as f64, x * (-(m as f64) / kappa).exp()))
            .collect();
        let norms: Vec<(f64, f64)> = (0..values.len())
            .map(|m| (m as f64, (-(m as f64) / kappa).exp()))
            .collect();
        let out = rescale_decay(&series, &norms).unwrap();
        for ((_, got), &want) in out.values.iter().zip(&values) {
            prop_assert!((got - want).abs() <= 1e-6);
        }
    }

    #[test]
    fn partial_trace_preserves_normalization(seed in any::<u64>()) {
        let rho = random_density_matrix(seed);
        for keep in [vec![1usize], vec![2], vec![3], vec![1, 2], vec![1, 3], vec![2, 3]] {
            let reduced = rho.partial_trace(&keep).unwrap();
            prop_assert!((reduced.trace().re - 1.0).abs() <= 1e-10);
            reduced.validate().map_err(|e| {
                TestCaseError::fail(format!("reduced state invalid: {e}"))
            })?;
        }
    }
}
