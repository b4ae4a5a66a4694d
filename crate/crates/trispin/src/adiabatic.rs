//! Discretized adiabatic evolution driver.
//!
//! A scan discretizes the time-dependent Hamiltonian into `M + 1`
//! segments `H(m) = H[C(m T / M)]`, starts in the ground state of `H(0)`
//! and evolves each segment for `tau = T / M`, either exactly
//! (`exp(-i H(m) tau)`) or through the symmetric Trotter step
//!
//!   `exp(-i H tau) = exp(-i Hx tau/2) exp(-i Hz tau) exp(-i Hx tau/2) + O(tau^3)`.
//!
//! Decoherence, when configured, acts between unitary segments as a
//! product of per-spin phase-damping (T2) and optional amplitude-damping
//! (T1) channels over the physical duration of one segment.

use rayon::prelude::*;

use crate::algebra::{unitary_exp, CMatrix};
use crate::error::{Error, Result};
use crate::ground_state::{ground_state_report, GroundStateReport, DEFAULT_DEGENERACY_TOL};
use crate::hamiltonian::{build_hamiltonian, split_xz, ControlKnob, HamiltonianParams};
use crate::state::{DensityMatrix, StateVector};

/// Shape of the control-parameter path `C(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ControlShape {
    /// `C(t) = c_start + (c_end - c_start) sinh(a t/T) / sinh(a)`:
    /// slow where the gap closes early in the scan, fast at the end.
    HyperbolicSine,
    Linear,
}

/// Default sharpness `a` of the hyperbolic-sine path.
pub const DEFAULT_SINH_SHARPNESS: f64 = 3.0;

/// Discretized control-parameter path of one adiabatic scan.
#[derive(Debug, Clone, Copy)]
pub struct Schedule {
    pub knob: ControlKnob,
    pub c_start: f64,
    pub c_end: f64,
    /// Total scan duration in model time units.
    pub total_time: f64,
    /// Number of evolution segments M.
    pub steps: usize,
    pub shape: ControlShape,
    /// Dimensionless sharpness `a` of the hyperbolic-sine path.
    pub sinh_sharpness: f64,
}

impl Schedule {
    pub fn validate(&self) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::InvalidSchedule {
                reason: "step count must be at least 1".into(),
            });
        }
        if !self.total_time.is_finite() || self.total_time <= 0.0 {
            return Err(Error::InvalidSchedule {
                reason: format!("total time {} must be positive", self.total_time),
            });
        }
        if self.shape == ControlShape::HyperbolicSine
            && (!self.sinh_sharpness.is_finite() || self.sinh_sharpness <= 0.0)
        {
            return Err(Error::InvalidSchedule {
                reason: format!("sinh sharpness {} must be positive", self.sinh_sharpness),
            });
        }
        Ok(())
    }

    /// Segment duration `tau = T / M`.
    pub fn tau(&self) -> f64 {
        self.total_time / self.steps as f64
    }

    /// Control value at step `m` of `0..=M`; exact at both endpoints.
    pub fn control_value(&self, m: usize) -> Result<f64> {
        self.validate()?;
        if m > self.steps {
            return Err(Error::StepOutOfRange {
                m,
                max: self.steps,
            });
        }
        // endpoints are exact by contract
        if m == 0 {
            return Ok(self.c_start);
        }
        if m == self.steps {
            return Ok(self.c_end);
        }
        let frac = m as f64 / self.steps as f64;
        let span = self.c_end - self.c_start;
        let value = match self.shape {
            ControlShape::Linear => self.c_start + span * frac,
            ControlShape::HyperbolicSine => {
                let a = self.sinh_sharpness;
                self.c_start + span * (a * frac).sinh() / a.sinh()
            }
        };
        Ok(value)
    }

    /// Copy with a different step count.
    pub fn with_steps(&self, steps: usize) -> Schedule {
        Schedule { steps, ..*self }
    }
}

/// Per-spin relaxation model, uniform across the chain.
#[derive(Debug, Clone, Copy)]
pub struct DecoherenceParams {
    /// Effective transverse relaxation time, seconds.
    pub t2_eff: f64,
    /// Longitudinal relaxation time, seconds; `None` disables amplitude
    /// damping.
    pub t1: Option<f64>,
    /// Physical wall-clock duration charged per segment, seconds.
    pub step_duration: f64,
}

impl DecoherenceParams {
    pub fn validate(&self) -> Result<()> {
        if !self.t2_eff.is_finite() || self.t2_eff <= 0.0 {
            return Err(Error::NonPhysicalDecoherence {
                reason: format!("t2_eff {} must be positive", self.t2_eff),
            });
        }
        if !self.step_duration.is_finite() || self.step_duration <= 0.0 {
            return Err(Error::NonPhysicalDecoherence {
                reason: format!("step duration {} must be positive", self.step_duration),
            });
        }
        if let Some(t1) = self.t1 {
            if !t1.is_finite() || t1 <= 0.0 {
                return Err(Error::NonPhysicalDecoherence {
                    reason: format!("t1 {t1} must be positive"),
                });
            }
            if self.t2_eff > 2.0 * t1 {
                return Err(Error::NonPhysicalDecoherence {
                    reason: format!("t2_eff {} exceeds 2 t1 = {}", self.t2_eff, 2.0 * t1),
                });
            }
        }
        Ok(())
    }
}

/// How each segment unitary is generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evolution {
    /// Symmetric Trotter product, optionally sub-stepped.
    TrotterSequence,
    /// Exact segment exponential; the discretization-error reference.
    ExactSegmentwise,
}

/// Where the decoherence channel is inserted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseGranularity {
    /// Once per segment, after its unitary (the default).
    PerSegment,
    /// Split across the Trotter substeps of each segment.
    PerSubstep,
}

/// Evolution options of a scan.
#[derive(Debug, Clone, Copy)]
pub struct ScanOptions {
    pub evolution: Evolution,
    /// Trotter substeps per segment (k >= 1); each substep evolves
    /// `tau / k`.
    pub substeps: usize,
    pub noise_granularity: NoiseGranularity,
}

impl ScanOptions {
    pub fn exact() -> Self {
        Self {
            evolution: Evolution::ExactSegmentwise,
            substeps: 1,
            noise_granularity: NoiseGranularity::PerSegment,
        }
    }

    pub fn trotter(substeps: usize) -> Self {
        Self {
            evolution: Evolution::TrotterSequence,
            substeps,
            noise_granularity: NoiseGranularity::PerSegment,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.substeps == 0 {
            return Err(Error::InvalidSchedule {
                reason: "substep count must be at least 1".into(),
            });
        }
        if self.noise_granularity == NoiseGranularity::PerSubstep
            && self.evolution == Evolution::ExactSegmentwise
        {
            return Err(Error::NoiseGranularityMismatch);
        }
        Ok(())
    }
}

/// One symmetric Trotter step
/// `exp(-i Hx tau/2) exp(-i Hz tau) exp(-i Hx tau/2)`.
pub fn trotter_step_unitary(p: &HamiltonianParams, tau: f64) -> Result<CMatrix> {
    let (hx, hz) = split_xz(p)?;
    let ux_half = unitary_exp(&hx, tau / 2.0)?;
    let uz = unitary_exp(&hz, tau)?;
    Ok(&ux_half * uz * &ux_half)
}

/// Apply per-spin phase damping (rate `1/t2_eff`) and optional amplitude
/// damping (rate `1/t1`) over `d.step_duration` seconds.
pub fn apply_decoherence(rho: &DensityMatrix, d: &DecoherenceParams) -> Result<DensityMatrix> {
    d.validate()?;
    apply_decoherence_for(rho, d, d.step_duration)
}

/// The same channel over an explicit duration; used when noise is split
/// across Trotter substeps.
pub fn apply_decoherence_for(
    rho: &DensityMatrix,
    d: &DecoherenceParams,
    seconds: f64,
) -> Result<DensityMatrix> {
    d.validate()?;
    let n = rho.n_spins();
    let dim = rho.dim();
    let mut m = rho.matrix().clone();

    // Product of per-spin phase-damping channels: the coherence between
    // basis states a and b decays by exp(-t/T2) for every spin on which
    // they differ.
    let damp = (-seconds / d.t2_eff).exp();
    for a in 0..dim {
        for b in 0..dim {
            let differing = ((a ^ b) as u32).count_ones();
            if differing > 0 {
                m[(a, b)] *= nalgebra::Complex::new(damp.powi(differing as i32), 0.0);
            }
        }
    }

    // Amplitude damping toward |up> on each spin, Kraus
    // K0 = diag(1, sqrt(1-g)), K1 = |0><1| sqrt(g), g = 1 - exp(-t/T1).
    if let Some(t1) = d.t1 {
        let g = 1.0 - (-seconds / t1).exp();
        let sqrt_keep = (1.0 - g).sqrt();
        for site_bit in (0..n).map(|s| 1usize << s) {
            let mut next = m.clone();
            for a in 0..dim {
                for b in 0..dim {
                    let abit = a & site_bit != 0;
                    let bbit = b & site_bit != 0;
                    match (abit, bbit) {
                        (false, false) => {
                            next[(a, b)] = m[(a, b)]
                                + m[(a | site_bit, b | site_bit)]
                                    * nalgebra::Complex::new(g, 0.0);
                        }
                        (true, true) => {
                            next[(a, b)] = m[(a, b)] * nalgebra::Complex::new(1.0 - g, 0.0);
                        }
                        _ => {
                            next[(a, b)] = m[(a, b)] * nalgebra::Complex::new(sqrt_keep, 0.0);
                        }
                    }
                }
            }
            m = next;
        }
    }

    Ok(DensityMatrix::from_matrix_unchecked(m))
}

/// State of the scan after one segment.
#[derive(Debug, Clone)]
pub struct ScanStep {
    /// Segment index, 0..=M.
    pub m: usize,
    /// Elapsed model time `m T / M`.
    pub t: f64,
    /// Control value `C(t)`.
    pub control: f64,
    /// Density matrix after the segment (and its decoherence, if any).
    pub rho: DensityMatrix,
    /// Instantaneous ground state of `H(m)` (lowest eigenvector).
    pub ground: StateVector,
    /// Overlap with the instantaneous ground space.
    pub fidelity: f64,
    /// `tr(rho^2)`.
    pub purity: f64,
    /// `tr(rho H(m))`.
    pub energy: f64,
    /// Instantaneous spectral gap.
    pub gap: f64,
    /// Instantaneous ground-space dimension.
    pub ground_degeneracy: usize,
}

/// Full record of one adiabatic scan.
#[derive(Debug, Clone)]
pub struct ScanTrace {
    pub params: HamiltonianParams,
    pub schedule: Schedule,
    pub steps: Vec<ScanStep>,
}

impl ScanTrace {
    pub fn min_fidelity(&self) -> f64 {
        self.steps
            .iter()
            .map(|s| s.fidelity)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn final_step(&self) -> &ScanStep {
        self.steps.last().expect("scan has at least the m=0 step")
    }
}

fn instantaneous_report(
    p: &HamiltonianParams,
    knob: ControlKnob,
    control: f64,
) -> Result<(HamiltonianParams, GroundStateReport)> {
    let pm = p.with_knob(knob, control);
    let report = ground_state_report(&pm, DEFAULT_DEGENERACY_TOL)?;
    Ok((pm, report))
}

/// Run one adiabatic scan.
///
/// The state starts as the (required unique) ground state of `H(0)`.
/// Each segment applies the configured evolution for `tau = T / M`, then
/// the decoherence channel when `d` is given, and records fidelity and
/// per-step diagnostics against the instantaneous ground space.
pub fn run_adiabatic_scan(
    p0: &HamiltonianParams,
    schedule: &Schedule,
    d: Option<&DecoherenceParams>,
    opts: &ScanOptions,
) -> Result<ScanTrace> {
    schedule.validate()?;
    opts.validate()?;
    if let Some(d) = d {
        d.validate()?;
    }

    let c0 = schedule.control_value(0)?;
    let (p_init, report) = instantaneous_report(p0, schedule.knob, c0)?;
    if report.degeneracy != 1 {
        return Err(Error::DegenerateInitialState {
            degeneracy: report.degeneracy,
        });
    }

    let tau = schedule.tau();
    let mut rho = DensityMatrix::from_pure(report.ground_state());
    let h0 = build_hamiltonian(&p_init)?;
    let mut steps = Vec::with_capacity(schedule.steps + 1);
    steps.push(ScanStep {
        m: 0,
        t: 0.0,
        control: c0,
        rho: rho.clone(),
        ground: report.ground_state().clone(),
        fidelity: 1.0,
        purity: rho.purity(),
        energy: rho.expectation(&h0).re,
        gap: report.gap,
        ground_degeneracy: report.degeneracy,
    });

    for m in 1..=schedule.steps {
        let control = schedule.control_value(m)?;
        let (pm, report) = instantaneous_report(p0, schedule.knob, control)?;

        match opts.evolution {
            Evolution::ExactSegmentwise => {
                let hm = build_hamiltonian(&pm)?;
                let u = unitary_exp(&hm, tau)?;
                rho = rho.evolved(&u);
                if let Some(d) = d {
                    rho = apply_decoherence(&rho, d)?;
                }
            }
            Evolution::TrotterSequence => {
                let sub_tau = tau / opts.substeps as f64;
                let u = trotter_step_unitary(&pm, sub_tau)?;
                match opts.noise_granularity {
                    NoiseGranularity::PerSegment => {
                        for _ in 0..opts.substeps {
                            rho = rho.evolved(&u);
                        }
                        if let Some(d) = d {
                            rho = apply_decoherence(&rho, d)?;
                        }
                    }
                    NoiseGranularity::PerSubstep => {
                        let sub_seconds =
                            d.map(|d| d.step_duration / opts.substeps as f64);
                        for _ in 0..opts.substeps {
                            rho = rho.evolved(&u);
                            if let (Some(d), Some(seconds)) = (d, sub_seconds) {
                                rho = apply_decoherence_for(&rho, d, seconds)?;
                            }
                        }
                    }
                }
            }
        }

        let hm = build_hamiltonian(&pm)?;
        steps.push(ScanStep {
            m,
            t: m as f64 * tau,
            control,
            rho: rho.clone(),
            ground: report.ground_state().clone(),
            fidelity: report.fidelity_of(&rho),
            purity: rho.purity(),
            energy: rho.expectation(&hm).re,
            gap: report.gap,
            ground_degeneracy: report.degeneracy,
        });
    }

    Ok(ScanTrace {
        params: *p0,
        schedule: *schedule,
        steps,
    })
}

/// One point of a step-count sweep.
#[derive(Debug, Clone, Copy)]
pub struct StepCountPoint {
    pub steps: usize,
    /// Minimum fidelity over the decoherence-free scan.
    pub ideal_min_fidelity: f64,
    /// Minimum fidelity with the decoherence channel active.
    pub noisy_min_fidelity: f64,
}

/// Minimum scan fidelity versus step count M, with and without
/// decoherence.
///
/// `d.step_duration` is charged per segment regardless of M, so the total
/// physical duration grows with M: small M loses fidelity to
/// nonadiabatic jumps, large M to relaxation, producing an interior
/// optimum. Sweep points run in parallel.
pub fn min_fidelity_vs_steps(
    p0: &HamiltonianParams,
    template: &Schedule,
    d: &DecoherenceParams,
    m_list: &[usize],
    opts: &ScanOptions,
) -> Result<Vec<StepCountPoint>> {
    if m_list.is_empty() {
        return Err(Error::TooFewSamples { min: 1, got: 0 });
    }
    m_list
        .par_iter()
        .map(|&steps| {
            let schedule = template.with_steps(steps);
            let ideal = run_adiabatic_scan(p0, &schedule, None, opts)?;
            let noisy = run_adiabatic_scan(p0, &schedule, Some(d), opts)?;
            Ok(StepCountPoint {
                steps,
                ideal_min_fidelity: ideal.min_fidelity(),
                noisy_min_fidelity: noisy.min_fidelity(),
            })
        })
        .collect()
}
