//! Experiment orchestration: scan execution, observable decoration,
//! signal-decay rescaling, summaries, and CSV emission.
//!
//! CSV schemas are versioned in a leading comment line beginning
//! `#schema=`; column order is fixed:
//!
//! * `trispin.scan.v1`: `m,t,control,fidelity,purity,c_xx,witness_w,witness_ghz,energy`
//! * `trispin.msweep.v1`: `steps,min_fidelity_ideal,min_fidelity_noisy`
//! * `trispin.phasescan.v1`: `j2,j3,energy,gap,degeneracy,phase`
//! * `trispin.gapscan.v1`: `knob,energy,gap,degeneracy,phase`

use std::io::Write;

use rayon::prelude::*;

use crate::adiabatic::{
    min_fidelity_vs_steps, run_adiabatic_scan, ScanOptions, ScanTrace, StepCountPoint,
};
use crate::config::ExperimentConfig;
use crate::error::{Error, Result};
use crate::ground_state::{
    classify_phase, critical_point_scan, ground_state_report, CriticalPointScan, PhaseLabel,
    DEFAULT_DEGENERACY_TOL,
};
use crate::hamiltonian::ControlKnob;
use crate::observables::{
    correlation_xx, experimental_fidelity, fidelity, rescale_decay, WitnessOperator,
};
use crate::state::StateVector;

/// Observable columns evaluated along a scan.
#[derive(Debug, Clone)]
pub struct ScanObservables {
    /// C_xx per step (unordered-pair mean).
    pub c_xx: Vec<f64>,
    /// W-witness expectation per step.
    pub witness_w: Vec<f64>,
    /// GHZ-witness expectation per step.
    pub witness_ghz: Vec<f64>,
}

/// Step index and control value of a detected transition.
#[derive(Debug, Clone, Copy)]
pub struct TransitionLocation {
    pub step: usize,
    pub control: f64,
    /// Size of the single-step change that flagged the transition.
    pub jump: f64,
}

/// End-of-run summary of one case execution.
#[derive(Debug, Clone)]
pub struct CaseSummary {
    /// Overlap of the final state with the exact final ground state.
    pub final_fidelity_raw: f64,
    /// The same overlap divided by the final purity.
    pub final_fidelity_rescaled: f64,
    pub final_witness_w: f64,
    pub final_witness_ghz: f64,
    /// Witness endpoints after dividing out the fitted signal-decay
    /// envelope (purity as the decay proxy).
    pub final_witness_w_rescaled: f64,
    pub final_witness_ghz_rescaled: f64,
    /// Step of the largest single-step change in C_xx.
    pub transition_by_cxx: TransitionLocation,
    /// Step of the largest single-step change of the larger-swing witness.
    pub transition_by_witness: TransitionLocation,
    /// True when the configured W-witness flip convention maximizes the
    /// overlap with the ideal endpoint among the two global-flip choices.
    pub w_convention_is_optimal: bool,
}

/// Everything produced by [`run_case`].
#[derive(Debug, Clone)]
pub struct CaseOutcome {
    pub trace: ScanTrace,
    pub observables: ScanObservables,
    pub witness_w: WitnessOperator,
    pub witness_ghz: WitnessOperator,
    pub summary: CaseSummary,
}

fn largest_jump(series: &[f64], controls: &[f64]) -> TransitionLocation {
    let mut best = TransitionLocation {
        step: 1,
        control: controls.get(1).copied().unwrap_or(0.0),
        jump: 0.0,
    };
    for m in 1..series.len() {
        let jump = (series[m] - series[m - 1]).abs();
        if jump > best.jump {
            best = TransitionLocation {
                step: m,
                control: controls[m],
                jump,
            };
        }
    }
    best
}

/// Execute the configured scan and decorate it with observables and the
/// end-of-run summary.
pub fn run_case(cfg: &ExperimentConfig) -> Result<CaseOutcome> {
    cfg.validate()?;
    let opts = ScanOptions {
        evolution: cfg.evolution,
        substeps: cfg.substeps,
        noise_granularity: cfg.noise_granularity,
    };
    let trace = run_adiabatic_scan(
        &cfg.hamiltonian,
        &cfg.schedule,
        cfg.decoherence.as_ref(),
        &opts,
    )?;

    let witness_w = WitnessOperator::w_witness(cfg.witness_w_flip);
    let witness_ghz = WitnessOperator::ghz_witness(cfg.witness_ghz);

    let mut c_xx = Vec::with_capacity(trace.steps.len());
    let mut w_w = Vec::with_capacity(trace.steps.len());
    let mut w_ghz = Vec::with_capacity(trace.steps.len());
    for step in &trace.steps {
        c_xx.push(correlation_xx(&step.rho)?.c_xx);
        w_w.push(witness_w.expectation(&step.rho)?);
        w_ghz.push(witness_ghz.expectation(&step.rho)?);
    }
    let observables = ScanObservables {
        c_xx: c_xx.clone(),
        witness_w: w_w.clone(),
        witness_ghz: w_ghz.clone(),
    };

    // purity as the overall signal-decay proxy for the envelope fit
    let steps_f: Vec<f64> = trace.steps.iter().map(|s| s.m as f64).collect();
    let purities: Vec<(f64, f64)> = trace
        .steps
        .iter()
        .map(|s| (s.m as f64, s.purity))
        .collect();
    let series_of = |values: &[f64]| -> Vec<(f64, f64)> {
        steps_f.iter().cloned().zip(values.iter().cloned()).collect()
    };
    let w_w_rescaled = rescale_decay(&series_of(&w_w), &purities)?;
    let w_ghz_rescaled = rescale_decay(&series_of(&w_ghz), &purities)?;

    let final_step = trace.final_step();
    let ideal_target: &StateVector = &final_step.ground;
    let final_fidelity_raw = fidelity(&final_step.rho, ideal_target)?;
    let final_fidelity_rescaled = experimental_fidelity(&final_step.rho, ideal_target)?;

    let controls: Vec<f64> = trace.steps.iter().map(|s| s.control).collect();
    let transition_by_cxx = largest_jump(&c_xx, &controls);
    let swing = |v: &[f64]| {
        v.iter().cloned().fold(f64::MIN, f64::max) - v.iter().cloned().fold(f64::MAX, f64::min)
    };
    let transition_by_witness = if swing(&w_w) >= swing(&w_ghz) {
        largest_jump(&w_w, &controls)
    } else {
        largest_jump(&w_ghz, &controls)
    };

    // a-priori convention check: does the configured flip direction best
    // overlap the ideal endpoint ground state?
    let configured = witness_w.reference();
    let flipped = WitnessOperator::w_witness(cfg.witness_w_flip.flipped());
    let w_convention_is_optimal =
        configured.overlap(ideal_target) >= flipped.reference().overlap(ideal_target);

    let summary = CaseSummary {
        final_fidelity_raw,
        final_fidelity_rescaled,
        final_witness_w: *w_w.last().unwrap(),
        final_witness_ghz: *w_ghz.last().unwrap(),
        final_witness_w_rescaled: w_w_rescaled.values.last().unwrap().1,
        final_witness_ghz_rescaled: w_ghz_rescaled.values.last().unwrap().1,
        transition_by_cxx,
        transition_by_witness,
        w_convention_is_optimal,
    };

    Ok(CaseOutcome {
        trace,
        observables,
        witness_w,
        witness_ghz,
        summary,
    })
}

/// Write the per-step CSV of a case outcome.
pub fn write_scan_csv<W: Write>(w: &mut W, outcome: &CaseOutcome) -> Result<()> {
    writeln!(w, "#schema=trispin.scan.v1")?;
    writeln!(
        w,
        "m,t,control,fidelity,purity,c_xx,witness_w,witness_ghz,energy"
    )?;
    for (i, step) in outcome.trace.steps.iter().enumerate() {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{}",
            step.m,
            step.t,
            step.control,
            step.fidelity,
            step.purity,
            outcome.observables.c_xx[i],
            outcome.observables.witness_w[i],
            outcome.observables.witness_ghz[i],
            step.energy
        )?;
    }
    Ok(())
}

/// Render the end-of-run summary as plain text.
pub fn format_summary(outcome: &CaseOutcome) -> String {
    let s = &outcome.summary;
    let mut out = String::new();
    out.push_str(&format!(
        "final fidelity (vs exact final ground): raw {:.6}, rescaled {:.6}\n",
        s.final_fidelity_raw, s.final_fidelity_rescaled
    ));
    out.push_str(&format!(
        "final witness_w: raw {:+.6}, rescaled {:+.6}\n",
        s.final_witness_w, s.final_witness_w_rescaled
    ));
    out.push_str(&format!(
        "final witness_ghz: raw {:+.6}, rescaled {:+.6}\n",
        s.final_witness_ghz, s.final_witness_ghz_rescaled
    ));
    out.push_str(&format!(
        "transition by c_xx: step {} (control {:.4}, jump {:.4})\n",
        s.transition_by_cxx.step, s.transition_by_cxx.control, s.transition_by_cxx.jump
    ));
    out.push_str(&format!(
        "transition by witness: step {} (control {:.4}, jump {:.4})\n",
        s.transition_by_witness.step, s.transition_by_witness.control, s.transition_by_witness.jump
    ));
    out.push_str(&format!(
        "w-witness flip convention optimal for endpoint: {}\n",
        s.w_convention_is_optimal
    ));
    out.push_str(&format!(
        "min fidelity over scan: {:.6}\n",
        outcome.trace.min_fidelity()
    ));
    out
}

/// Step-count sweep of the configured experiment; the template's segment
/// duration `tau = T / M` is held fixed, so total scan time grows with M.
pub fn run_msweep(cfg: &ExperimentConfig) -> Result<Vec<StepCountPoint>> {
    cfg.validate()?;
    let d = cfg.decoherence.as_ref().ok_or_else(|| {
        Error::Config("msweep requires decoherence parameters (the noisy curve)".into())
    })?;
    let tau = cfg.schedule.tau();
    let opts = ScanOptions {
        evolution: cfg.evolution,
        substeps: cfg.substeps,
        noise_granularity: cfg.noise_granularity,
    };
    cfg.m_list
        .par_iter()
        .map(|&steps| {
            let mut schedule = cfg.schedule.with_steps(steps);
            schedule.total_time = tau * steps as f64;
            let ideal = run_adiabatic_scan(&cfg.hamiltonian, &schedule, None, &opts)?;
            let noisy = run_adiabatic_scan(&cfg.hamiltonian, &schedule, Some(d), &opts)?;
            Ok(StepCountPoint {
                steps,
                ideal_min_fidelity: ideal.min_fidelity(),
                noisy_min_fidelity: noisy.min_fidelity(),
            })
        })
        .collect()
}

/// The same sweep at an explicit fixed total time (`tau` shrinking with
/// M), for comparing discretization against the fixed-`tau` convention.
pub fn run_msweep_fixed_total(cfg: &ExperimentConfig) -> Result<Vec<StepCountPoint>> {
    cfg.validate()?;
    let d = cfg.decoherence.as_ref().ok_or_else(|| {
        Error::Config("msweep requires decoherence parameters (the noisy curve)".into())
    })?;
    let opts = ScanOptions {
        evolution: cfg.evolution,
        substeps: cfg.substeps,
        noise_granularity: cfg.noise_granularity,
    };
    min_fidelity_vs_steps(&cfg.hamiltonian, &cfg.schedule, d, &cfg.m_list, &opts)
}

/// Write the M-sweep CSV.
pub fn write_msweep_csv<W: Write>(w: &mut W, points: &[StepCountPoint]) -> Result<()> {
    writeln!(w, "#schema=trispin.msweep.v1")?;
    writeln!(w, "steps,min_fidelity_ideal,min_fidelity_noisy")?;
    for p in points {
        writeln!(
            w,
            "{},{},{}",
            p.steps, p.ideal_min_fidelity, p.noisy_min_fidelity
        )?;
    }
    Ok(())
}

/// One classified point of the (J2, J3) phase grid.
#[derive(Debug, Clone)]
pub struct PhasePoint {
    pub j2: f64,
    pub j3: f64,
    pub energy: f64,
    pub gap: f64,
    pub degeneracy: usize,
    pub phase: PhaseLabel,
}

/// Classify the ground state over the configured (J2, J3) grid. Grid
/// points evaluate in parallel; output order is row-major and
/// deterministic.
pub fn run_phase_scan(cfg: &ExperimentConfig) -> Result<Vec<PhasePoint>> {
    cfg.validate()?;
    if cfg.hamiltonian.n_spins != 3 {
        return Err(Error::WrongSpinCount {
            expected: 3,
            got: cfg.hamiltonian.n_spins,
        });
    }
    let axis_values = |axis: &crate::config::GridAxis| -> Vec<f64> {
        if axis.samples < 2 {
            vec![axis.lo]
        } else {
            (0..axis.samples)
                .map(|k| axis.lo + (axis.hi - axis.lo) * k as f64 / (axis.samples - 1) as f64)
                .collect()
        }
    };
    let j2s = axis_values(&cfg.grid_j2);
    let j3s = axis_values(&cfg.grid_j3);
    let grid: Vec<(f64, f64)> = j2s
        .iter()
        .flat_map(|&j2| j3s.iter().map(move |&j3| (j2, j3)))
        .collect();
    grid.par_iter()
        .map(|&(j2, j3)| {
            let mut p = cfg.hamiltonian;
            p.j2 = j2;
            p.j3 = j3;
            let report = ground_state_report(&p, DEFAULT_DEGENERACY_TOL)?;
            let phase = classify_phase(&report, &p)?;
            Ok(PhasePoint {
                j2,
                j3,
                energy: report.energy,
                gap: report.gap,
                degeneracy: report.degeneracy,
                phase,
            })
        })
        .collect()
}

/// Write the phase-grid CSV.
pub fn write_phase_csv<W: Write>(w: &mut W, points: &[PhasePoint]) -> Result<()> {
    writeln!(w, "#schema=trispin.phasescan.v1")?;
    writeln!(w, "j2,j3,energy,gap,degeneracy,phase")?;
    for p in points {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            p.j2, p.j3, p.energy, p.gap, p.degeneracy, p.phase
        )?;
    }
    Ok(())
}

/// Single-knob critical-point scan of the configured Hamiltonian.
pub fn run_knob_scan(
    cfg: &ExperimentConfig,
    knob: ControlKnob,
    lo: f64,
    hi: f64,
    samples: usize,
) -> Result<CriticalPointScan> {
    critical_point_scan(&cfg.hamiltonian, knob, lo, hi, samples)
}

/// Write a single-knob scan CSV.
pub fn write_knob_scan_csv<W: Write>(w: &mut W, scan: &CriticalPointScan) -> Result<()> {
    writeln!(w, "#schema=trispin.gapscan.v1")?;
    writeln!(w, "knob,energy,gap,degeneracy,phase")?;
    for p in &scan.points {
        writeln!(
            w,
            "{},{},{},{},{}",
            p.knob_value, p.energy, p.gap, p.degeneracy, p.phase
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::NamedCase;

    #[test]
    fn case_a_shows_correlation_step_near_unit_coupling() {
        let mut cfg = ExperimentConfig::case_a();
        cfg.decoherence = None;
        let outcome = run_case(&cfg).unwrap();
        let t = outcome.summary.transition_by_cxx;
        assert!(
            t.control >= 0.8 && t.control <= 1.2,
            "transition at control {}",
            t.control
        );
        assert!(t.jump > 0.2);
        // endpoint witness negative, GHZ witness not
        assert!(outcome.summary.final_witness_w < 0.0);
        assert!(outcome.summary.final_witness_ghz > 0.0);
        assert!(outcome.summary.w_convention_is_optimal);
    }

    #[test]
    fn case_b_correlations_flat_but_witness_fires() {
        let mut cfg = ExperimentConfig::case_b();
        cfg.decoherence = None;
        let outcome = run_case(&cfg).unwrap();
        let cxx = &outcome.observables.c_xx;
        let spread = cxx.iter().cloned().fold(f64::MIN, f64::max)
            - cxx.iter().cloned().fold(f64::MAX, f64::min);
        assert!(spread < 0.1, "c_xx spread {spread}");
        assert!(outcome.summary.final_witness_ghz < -0.15);
    }

    #[test]
    fn rescaled_witness_more_negative_than_raw_under_decoherence() {
        let cfg = ExperimentConfig::case_b();
        let outcome = run_case(&cfg).unwrap();
        let s = &outcome.summary;
        assert!(s.final_witness_ghz < 0.0);
        assert!(s.final_witness_ghz_rescaled < s.final_witness_ghz);
    }

    #[test]
    fn scan_csv_is_reproducible_and_schema_tagged() {
        let mut cfg = ExperimentConfig::case_a();
        cfg.decoherence = None;
        let outcome = run_case(&cfg).unwrap();
        let mut a = Vec::new();
        write_scan_csv(&mut a, &outcome).unwrap();
        let outcome2 = run_case(&cfg).unwrap();
        let mut b = Vec::new();
        write_scan_csv(&mut b, &outcome2).unwrap();
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        assert!(text.starts_with("#schema=trispin.scan.v1\n"));
        assert_eq!(text.lines().count(), 2 + cfg.schedule.steps + 1);
    }

    #[test]
    fn msweep_requires_decoherence() {
        let mut cfg = ExperimentConfig::case_a();
        cfg.decoherence = None;
        assert!(run_msweep(&cfg).is_err());
    }

    #[test]
    fn msweep_noisy_below_ideal() {
        let mut cfg = ExperimentConfig::case_a();
        cfg.m_list = vec![2, 4, 8];
        let points = run_msweep(&cfg).unwrap();
        assert_eq!(points.len(), 3);
        for p in &points {
            assert!(p.noisy_min_fidelity <= p.ideal_min_fidelity + 1e-9);
        }
    }

    #[test]
    fn msweep_conventions_agree_at_the_template_step_count() {
        // fixed-tau and fixed-total sweeps coincide where M equals the
        // template's step count
        let mut cfg = ExperimentConfig::case_a();
        cfg.m_list = vec![8];
        let fixed_tau = run_msweep(&cfg).unwrap();
        let fixed_total = run_msweep_fixed_total(&cfg).unwrap();
        assert_eq!(
            fixed_tau[0].ideal_min_fidelity,
            fixed_total[0].ideal_min_fidelity
        );
        assert_eq!(
            fixed_tau[0].noisy_min_fidelity,
            fixed_total[0].noisy_min_fidelity
        );
    }

    #[test]
    fn phase_scan_reproduces_the_three_regimes() {
        let mut cfg = ExperimentConfig::custom();
        cfg.case = NamedCase::Custom;
        // Case A frame: wz = -2, wx = 0.09
        cfg.grid_j2 = crate::config::GridAxis {
            lo: 0.0,
            hi: 2.0,
            samples: 2,
        };
        cfg.grid_j3 = crate::config::GridAxis {
            lo: 0.0,
            hi: 0.0,
            samples: 1,
        };
        let points = run_phase_scan(&cfg).unwrap();
        assert_eq!(points.len(), 2);
        assert_eq!(points[0].phase, PhaseLabel::Product); // (0, 0)
        assert_eq!(points[1].phase, PhaseLabel::WType); // (2, 0)

        // Case B frame: wz = 0, wx = 0.12
        cfg.hamiltonian.omega_z = 0.0;
        cfg.hamiltonian.omega_x = 0.12;
        cfg.grid_j2 = crate::config::GridAxis {
            lo: 0.0,
            hi: 0.0,
            samples: 1,
        };
        cfg.grid_j3 = crate::config::GridAxis {
            lo: 2.0,
            hi: 2.0,
            samples: 1,
        };
        let points = run_phase_scan(&cfg).unwrap();
        assert_eq!(points[0].phase, PhaseLabel::GhzType);
    }

    #[test]
    fn knob_scan_csv_has_schema() {
        let cfg = ExperimentConfig::case_b();
        let scan = run_knob_scan(&cfg, ControlKnob::J3, 0.0, 0.5, 6).unwrap();
        let mut buf = Vec::new();
        write_knob_scan_csv(&mut buf, &scan).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("#schema=trispin.gapscan.v1\n"));
        assert_eq!(text.lines().count(), 8);
    }
}
