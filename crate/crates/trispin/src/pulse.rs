//! Compile one Trotter step of the model Hamiltonian into an abstract
//! NMR-style schedule, and verify the compiled schedule against the
//! target unitary.
//!
//! The spectrometer-facing timing numbers follow the standard
//! three-spin refocusing construction: coupling delays
//!
//!   tau_i = J2 tau / [1/(pi J_ij) + 1/(pi J_jk)],  (i,j,k) an even
//!   permutation of (1,2,3),
//!
//! the three-body gadget delay `d1 = 2 J3 tau / (pi J_12)`, and
//! irradiation-frequency offsets
//!
//!   FQ1 = 2 wz tau / (tau_1 - tau_2 + 3 tau_3)
//!   FQ2 = 2 wz tau / (tau_1 + tau_2 - tau_3)
//!   FQ3 = 2 wz tau / (tau_1 + tau_2 + tau_3)
//!
//! which realize the longitudinal field as rotating-frame z rotations.
//! Exact pulse coordinates inside each delay are spectrometer detail; the
//! plan instead carries the effective evolution every interval must
//! realize, which is what [`simulate_plan`] composes and what the
//! round-trip contract against [`trotter_step_unitary`] checks.
//!
//! [`trotter_step_unitary`]: crate::adiabatic::trotter_step_unitary

use crate::algebra::{pauli_string, unitary_exp, CMatrix, Pauli};
use crate::error::{Error, Result};
use crate::hamiltonian::{neighbor_pairs, neighbor_triples, HamiltonianParams};

/// Three-spin NMR register parameters. Larmor frequencies and relaxation
/// times are informational; the J couplings enter the delay formulas.
#[derive(Debug, Clone, Copy)]
pub struct NmrSystem {
    /// Larmor frequencies `w_i / 2 pi`, Hz.
    pub larmor_hz: [f64; 3],
    /// Scalar couplings J_12, J_13, J_23, Hz.
    pub j12_hz: f64,
    pub j13_hz: f64,
    pub j23_hz: f64,
    /// Longitudinal relaxation times, seconds.
    pub t1_s: [f64; 3],
    /// Transverse relaxation times, seconds.
    pub t2_s: [f64; 3],
}

impl NmrSystem {
    /// Synthetic round-number register for demonstrations; not measured
    /// values of any molecule.
    pub fn synthetic() -> Self {
        Self {
            larmor_hz: [100.0e6, 200.0e6, 300.0e6],
            j12_hz: 100.0,
            j13_hz: -80.0,
            j23_hz: 50.0,
            t1_s: [2.0, 2.0, 2.0],
            t2_s: [0.5, 0.5, 0.5],
        }
    }

    fn coupling(&self, i: usize, j: usize) -> f64 {
        match (i.min(j), i.max(j)) {
            (1, 2) => self.j12_hz,
            (1, 3) => self.j13_hz,
            (2, 3) => self.j23_hz,
            _ => unreachable!("coupling index out of range"),
        }
    }
}

/// Rotation axis of a pulse element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// One element of the abstract schedule. Rotations apply
/// `exp(-i angle/2 sigma_axis)` on every listed spin; coupling elements
/// apply the effective evolution accumulated during a delay interval.
#[derive(Debug, Clone, PartialEq)]
pub enum PlanElement {
    Rotation {
        spins: Vec<usize>,
        axis: Axis,
        angle: f64,
    },
    /// `exp(-i angle sz_i sz_j)` realized during a coupling delay.
    ZzEvolution { pair: (usize, usize), angle: f64 },
    /// `exp(-i angle sz sz sz)` realized by the three-body gadget.
    ZzzEvolution { angle: f64 },
}

/// Compiled schedule for one Trotter step.
#[derive(Debug, Clone, PartialEq)]
pub struct PulsePlan {
    /// Model duration of the compiled step.
    pub tau_model: f64,
    /// Coupling delays tau_1..tau_3 per the even-permutation formula.
    pub delays: [f64; 3],
    /// Three-body gadget delay.
    pub d1: f64,
    /// Irradiation-frequency offsets FQ1..FQ3, Hz; `None` when the delay
    /// combinations in the denominators vanish (degenerate timing).
    pub offsets_hz: Option<[f64; 3]>,
    /// False when any computed delay is negative; such plans are kept for
    /// inspection but flagged as not directly realizable.
    pub realizable: bool,
    /// Ordered abstract schedule realizing the step.
    pub sequence: Vec<PlanElement>,
}

impl PulsePlan {
    /// Human-readable schedule listing.
    pub fn listing(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("step tau (model) = {}\n", self.tau_model));
        for (i, d) in self.delays.iter().enumerate() {
            out.push_str(&format!("delay tau_{} = {}\n", i + 1, d));
        }
        out.push_str(&format!("delay d1 = {}\n", self.d1));
        match self.offsets_hz {
            Some(fq) => {
                for (i, f) in fq.iter().enumerate() {
                    out.push_str(&format!("offset FQ{} = {} Hz\n", i + 1, f));
                }
            }
            None => out.push_str("offsets: degenerate timing\n"),
        }
        out.push_str(&format!("realizable = {}\n", self.realizable));
        for el in &self.sequence {
            match el {
                PlanElement::Rotation { spins, axis, angle } => {
                    out.push_str(&format!(
                        "rotation {:?} angle {:.6} on spins {:?}\n",
                        axis, angle, spins
                    ));
                }
                PlanElement::ZzEvolution { pair, angle } => {
                    out.push_str(&format!(
                        "zz evolution on ({},{}) angle {:.6}\n",
                        pair.0, pair.1, angle
                    ));
                }
                PlanElement::ZzzEvolution { angle } => {
                    out.push_str(&format!("zzz evolution angle {:.6}\n", angle));
                }
            }
        }
        out
    }

    /// CSV listing of the schedule elements.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("#schema=trispin.pulseplan.v1\nelement,targets,axis,angle\n");
        for el in &self.sequence {
            match el {
                PlanElement::Rotation { spins, axis, angle } => {
                    let targets = spins
                        .iter()
                        .map(|s| s.to_string())
                        .collect::<Vec<_>>()
                        .join("+");
                    out.push_str(&format!("rotation,{targets},{axis:?},{angle}\n"));
                }
                PlanElement::ZzEvolution { pair, angle } => {
                    out.push_str(&format!("zz,{}+{},Z,{angle}\n", pair.0, pair.1));
                }
                PlanElement::ZzzEvolution { angle } => {
                    out.push_str(&format!("zzz,1+2+3,Z,{angle}\n"));
                }
            }
        }
        out
    }
}

/// Compile the symmetric Trotter step of the model Hamiltonian at model
/// duration `tau` into a pulse plan for the given register.
pub fn compile_step(p: &HamiltonianParams, tau: f64, sys: &NmrSystem) -> Result<PulsePlan> {
    p.validate()?;
    if p.n_spins != 3 {
        return Err(Error::WrongSpinCount {
            expected: 3,
            got: p.n_spins,
        });
    }

    let pairs = neighbor_pairs(3, p.periodic);
    let n_triples = neighbor_triples(3, p.periodic).len();

    if p.j2 != 0.0 {
        for (name, j) in [("J_12", sys.j12_hz), ("J_13", sys.j13_hz), ("J_23", sys.j23_hz)] {
            if j == 0.0 {
                return Err(Error::ZeroCouplingDivisor { name });
            }
        }
    }
    if p.j3 != 0.0 && sys.j12_hz == 0.0 {
        return Err(Error::ZeroCouplingDivisor { name: "J_12" });
    }

    // tau_i = J2 tau / [1/(pi J_ij) + 1/(pi J_jk)], (i,j,k) even permutations
    let delay = |j_ij: f64, j_jk: f64| -> f64 {
        if p.j2 == 0.0 {
            0.0
        } else {
            let denom = 1.0 / (std::f64::consts::PI * j_ij) + 1.0 / (std::f64::consts::PI * j_jk);
            p.j2 * tau / denom
        }
    };
    let delays = [
        delay(sys.coupling(1, 2), sys.coupling(2, 3)),
        delay(sys.coupling(2, 3), sys.coupling(3, 1)),
        delay(sys.coupling(3, 1), sys.coupling(1, 2)),
    ];
    let d1 = if p.j3 == 0.0 {
        0.0
    } else {
        2.0 * p.j3 * tau / (std::f64::consts::PI * sys.j12_hz)
    };

    let offset_denoms = [
        delays[0] - delays[1] + 3.0 * delays[2],
        delays[0] + delays[1] - delays[2],
        delays[0] + delays[1] + delays[2],
    ];
    let offsets_hz = if offset_denoms.contains(&0.0) {
        None
    } else {
        Some([
            2.0 * p.omega_z * tau / offset_denoms[0],
            2.0 * p.omega_z * tau / offset_denoms[1],
            2.0 * p.omega_z * tau / offset_denoms[2],
        ])
    };

    let realizable = delays.iter().all(|&d| d >= 0.0) && d1 >= 0.0;

    let mut sequence = Vec::new();
    let all_spins = vec![1usize, 2, 3];
    if p.omega_x != 0.0 {
        sequence.push(PlanElement::Rotation {
            spins: all_spins.clone(),
            axis: Axis::X,
            angle: p.omega_x * tau,
        });
    }
    if p.j2 != 0.0 {
        for &(i, j) in &pairs {
            let spectator = 6 - i - j;
            sequence.push(PlanElement::Rotation {
                spins: vec![spectator],
                axis: Axis::X,
                angle: std::f64::consts::PI,
            });
            sequence.push(PlanElement::ZzEvolution {
                pair: (i, j),
                angle: p.j2 * tau,
            });
            sequence.push(PlanElement::Rotation {
                spins: vec![spectator],
                axis: Axis::X,
                angle: std::f64::consts::PI,
            });
        }
    }
    if p.j3 != 0.0 {
        sequence.push(PlanElement::ZzzEvolution {
            angle: n_triples as f64 * p.j3 * tau,
        });
    }
    if p.omega_z != 0.0 {
        for spin in 1..=3 {
            sequence.push(PlanElement::Rotation {
                spins: vec![spin],
                axis: Axis::Z,
                angle: 2.0 * p.omega_z * tau,
            });
        }
    }
    if p.omega_x != 0.0 {
        sequence.push(PlanElement::Rotation {
            spins: all_spins,
            axis: Axis::X,
            angle: p.omega_x * tau,
        });
    }

    Ok(PulsePlan {
        tau_model: tau,
        delays,
        d1,
        offsets_hz,
        realizable,
        sequence,
    })
}

fn element_unitary(el: &PlanElement) -> Result<CMatrix> {
    match el {
        PlanElement::Rotation { spins, axis, angle } => {
            let pauli = match axis {
                Axis::X => Pauli::X,
                Axis::Y => Pauli::Y,
                Axis::Z => Pauli::Z,
            };
            let mut u = CMatrix::identity(8, 8);
            for &spin in spins {
                let generator = pauli_string(&[(pauli, spin)], 3)?;
                u = unitary_exp(&generator, angle / 2.0)? * u;
            }
            Ok(u)
        }
        PlanElement::ZzEvolution { pair, angle } => {
            let generator = pauli_string(&[(Pauli::Z, pair.0), (Pauli::Z, pair.1)], 3)?;
            unitary_exp(&generator, *angle)
        }
        PlanElement::ZzzEvolution { angle } => {
            let generator =
                pauli_string(&[(Pauli::Z, 1), (Pauli::Z, 2), (Pauli::Z, 3)], 3)?;
            unitary_exp(&generator, *angle)
        }
    }
}

/// Compose the ideal unitary of every schedule element, in order. An
/// empty plan gives the identity.
pub fn simulate_plan(plan: &PulsePlan) -> Result<CMatrix> {
    let mut u = CMatrix::identity(8, 8);
    for el in &plan.sequence {
        u = element_unitary(el)? * u;
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adiabatic::trotter_step_unitary;
    use crate::algebra::{max_abs_diff, process_fidelity};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn params(omega_z: f64, omega_x: f64, j2: f64, j3: f64) -> HamiltonianParams {
        HamiltonianParams::new(omega_z, omega_x, j2, j3, 3, true).unwrap()
    }

    #[test]
    fn delay_formula_values() {
        // J2 tau = 0.1, J_12 = 100 Hz, J_23 = 50 Hz:
        // tau_1 = 0.1 / (1/(100 pi) + 1/(50 pi)) = 10 pi / 3
        let sys = NmrSystem {
            j12_hz: 100.0,
            j23_hz: 50.0,
            j13_hz: 80.0,
            ..NmrSystem::synthetic()
        };
        let plan = compile_step(&params(0.0, 0.0, 1.0, 0.0), 0.1, &sys).unwrap();
        let want = 10.0 * std::f64::consts::PI / 3.0;
        assert!((plan.delays[0] - want).abs() < 1e-9, "{}", plan.delays[0]);
        assert!((plan.delays[0] - 10.472).abs() < 1e-3);
    }

    #[test]
    fn gadget_delay_value() {
        // J3 tau = 0.1, J_12 = 100 Hz: d1 = 0.2/(100 pi)
        let sys = NmrSystem {
            j12_hz: 100.0,
            ..NmrSystem::synthetic()
        };
        let plan = compile_step(&params(0.0, 0.0, 0.0, 1.0), 0.1, &sys).unwrap();
        let want = 0.2 / (100.0 * std::f64::consts::PI);
        assert!((plan.d1 - want).abs() < 1e-12);
        assert!((plan.d1 - 6.3662e-4).abs() < 1e-7);
    }

    #[test]
    fn zero_couplings_give_zero_delays_and_degenerate_offsets() {
        let plan = compile_step(&params(1.0, 0.2, 0.0, 0.0), 0.1, &NmrSystem::synthetic()).unwrap();
        assert_eq!(plan.delays, [0.0, 0.0, 0.0]);
        assert_eq!(plan.d1, 0.0);
        assert!(plan.offsets_hz.is_none());
        assert!(plan.realizable);
    }

    #[test]
    fn zero_register_coupling_is_an_error_when_needed() {
        let sys = NmrSystem {
            j23_hz: 0.0,
            ..NmrSystem::synthetic()
        };
        assert!(matches!(
            compile_step(&params(0.0, 0.0, 1.0, 0.0), 0.1, &sys),
            Err(Error::ZeroCouplingDivisor { .. })
        ));
        // but harmless when J2 = 0
        assert!(compile_step(&params(1.0, 0.3, 0.0, 0.0), 0.1, &sys).is_ok());
    }

    #[test]
    fn negative_delays_flagged_unrealizable() {
        let plan =
            compile_step(&params(0.0, 0.0, -1.0, 0.0), 0.1, &NmrSystem::synthetic()).unwrap();
        assert!(!plan.realizable);
        // the effective schedule still verifies against the target
        let target = trotter_step_unitary(&params(0.0, 0.0, -1.0, 0.0), 0.1).unwrap();
        let u = simulate_plan(&plan).unwrap();
        assert!(process_fidelity(&u, &target) >= 1.0 - 1e-9);
    }

    #[test]
    fn empty_plan_is_identity() {
        let plan = compile_step(&params(0.0, 0.0, 0.0, 0.0), 0.1, &NmrSystem::synthetic()).unwrap();
        assert!(plan.sequence.is_empty());
        let u = simulate_plan(&plan).unwrap();
        assert!(max_abs_diff(&u, &CMatrix::identity(8, 8)) < 1e-12);
    }

    #[test]
    fn pure_two_body_step_matches_exact_exponential() {
        let p = params(0.0, 0.0, 0.7, 0.0);
        let plan = compile_step(&p, 0.05, &NmrSystem::synthetic()).unwrap();
        let u = simulate_plan(&plan).unwrap();
        let h = crate::hamiltonian::build_hamiltonian(&p).unwrap();
        let exact = unitary_exp(&h, 0.05).unwrap();
        assert!(process_fidelity(&u, &exact) >= 1.0 - 1e-9);
    }

    #[test]
    fn full_case_a_step_matches_trotter_unitary() {
        let p = params(-2.0, 0.09, 1.0, 0.0);
        let tau = 0.05;
        let plan = compile_step(&p, tau, &NmrSystem::synthetic()).unwrap();
        let u = simulate_plan(&plan).unwrap();
        let target = trotter_step_unitary(&p, tau).unwrap();
        assert!(process_fidelity(&u, &target) >= 1.0 - 1e-9);
    }

    #[test]
    fn roundtrip_on_random_parameter_sets() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let p = params(
                4.0 * rng.random::<f64>() - 2.0,
                2.0 * rng.random::<f64>() - 1.0,
                0.2 + 1.8 * rng.random::<f64>(),
                0.2 + 1.8 * rng.random::<f64>(),
            );
            let tau = 0.02 + 0.08 * rng.random::<f64>();
            let plan = compile_step(&p, tau, &NmrSystem::synthetic()).unwrap();
            let u = simulate_plan(&plan).unwrap();
            let target = trotter_step_unitary(&p, tau).unwrap();
            let f = process_fidelity(&u, &target);
            assert!(f >= 1.0 - 1e-6, "process fidelity {f}");
        }
    }

    #[test]
    fn delays_scale_linearly_in_couplings_and_tau() {
        let sys = NmrSystem::synthetic();
        let base = compile_step(&params(0.5, 0.1, 0.8, 0.4), 0.05, &sys).unwrap();
        let double_j2 = compile_step(&params(0.5, 0.1, 1.6, 0.4), 0.05, &sys).unwrap();
        let double_j3 = compile_step(&params(0.5, 0.1, 0.8, 0.8), 0.05, &sys).unwrap();
        let double_tau = compile_step(&params(0.5, 0.1, 0.8, 0.4), 0.1, &sys).unwrap();
        for k in 0..3 {
            assert!((double_j2.delays[k] - 2.0 * base.delays[k]).abs() < 1e-12);
            assert!((double_tau.delays[k] - 2.0 * base.delays[k]).abs() < 1e-12);
        }
        assert!((double_j3.d1 - 2.0 * base.d1).abs() < 1e-12);
        assert!((double_tau.d1 - 2.0 * base.d1).abs() < 1e-12);
    }

    #[test]
    fn compilation_is_deterministic() {
        let p = params(-2.0, 0.09, 1.0, 0.3);
        let a = compile_step(&p, 0.07, &NmrSystem::synthetic()).unwrap();
        let b = compile_step(&p, 0.07, &NmrSystem::synthetic()).unwrap();
        assert_eq!(a, b);
        for k in 0..3 {
            assert_eq!(a.delays[k].to_bits(), b.delays[k].to_bits());
        }
        assert_eq!(a.d1.to_bits(), b.d1.to_bits());
    }

    #[test]
    fn open_chain_step_compiles_and_verifies() {
        let p = HamiltonianParams::new(0.4, 0.2, 0.9, 0.5, 3, false).unwrap();
        let tau = 0.04;
        let plan = compile_step(&p, tau, &NmrSystem::synthetic()).unwrap();
        let u = simulate_plan(&plan).unwrap();
        let target = trotter_step_unitary(&p, tau).unwrap();
        assert!(process_fidelity(&u, &target) >= 1.0 - 1e-9);
    }

    #[test]
    fn refocusing_pulses_appear_in_pairs() {
        let plan =
            compile_step(&params(0.0, 0.0, 1.0, 0.0), 0.05, &NmrSystem::synthetic()).unwrap();
        let pi_count = plan
            .sequence
            .iter()
            .filter(|el| {
                matches!(el, PlanElement::Rotation { angle, .. }
                    if (*angle - std::f64::consts::PI).abs() < 1e-12)
            })
            .count();
        assert_eq!(pi_count % 2, 0);
        assert!(pi_count > 0);
    }
}
