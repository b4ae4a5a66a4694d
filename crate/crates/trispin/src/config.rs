//! Experiment configuration: named cases, a flat key-value config format,
//! and command-line overrides.
//!
//! The config format is deliberately flat and diff-friendly: one
//! `section.key = value` pair per line, `#` comments. Example:
//!
//! ```text
//! case = custom
//! hamiltonian.omega_z = -2
//! hamiltonian.omega_x = 0.09
//! schedule.control = j2
//! schedule.end = 2
//! schedule.steps = 8
//! decoherence.t2_eff = 0.150
//! out = trace.csv
//! ```
//!
//! The named cases pin the Hamiltonian parameters and control range of
//! the two reference experiments:
//!
//! * Case A: `wz = -2, wx = 0.09, J3 = 0`, scanning `J2: 0 -> 2`
//!   (product state into a W-type state).
//! * Case B: `wz = J2 = 0, wx = 0.12`, scanning `J3: 0 -> 2`
//!   (product state into a GHZ-type state).
//!
//! Overriding a pinned value of a named case is an error; use
//! `case = custom` to change the physics. Step counts, durations, the
//! path shape, decoherence and output settings remain adjustable.

use std::path::{Path, PathBuf};

use crate::adiabatic::{
    ControlShape, DecoherenceParams, Evolution, NoiseGranularity, Schedule,
    DEFAULT_SINH_SHARPNESS,
};
use crate::error::{Error, Result};
use crate::hamiltonian::{ControlKnob, HamiltonianParams};
use crate::observables::GhzReference;
use crate::pulse::NmrSystem;
use crate::state::Spin;

/// Named experiment selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedCase {
    A,
    B,
    Custom,
}

/// One axis of the phase-diagram grid.
#[derive(Debug, Clone, Copy)]
pub struct GridAxis {
    pub lo: f64,
    pub hi: f64,
    pub samples: usize,
}

/// Full experiment configuration.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub case: NamedCase,
    /// Base Hamiltonian; the scanned coupling holds its start value.
    pub hamiltonian: HamiltonianParams,
    pub schedule: Schedule,
    pub decoherence: Option<DecoherenceParams>,
    pub evolution: Evolution,
    pub substeps: usize,
    pub noise_granularity: NoiseGranularity,
    /// Seed for sampled self-tests.
    pub seed: u64,
    pub out: Option<PathBuf>,
    /// Reference conventions of the recorded witnesses.
    pub witness_w_flip: Spin,
    pub witness_ghz: GhzReference,
    /// Register for pulse compilation.
    pub nmr: NmrSystem,
    /// Phase-scan grid.
    pub grid_j2: GridAxis,
    pub grid_j3: GridAxis,
    /// When set, `phasescan` sweeps this single knob instead of the grid.
    pub knob_scan: Option<(ControlKnob, GridAxis)>,
    /// Step counts of the M sweep.
    pub m_list: Vec<usize>,
}

impl ExperimentConfig {
    /// Case A defaults: J2 scan from the product regime into the W
    /// regime. The linear path holds the scan rate down through the
    /// level-anticrossing near J2 = 1; total model time 70 sits in the
    /// middle of the high-endpoint-fidelity plateau at M = 8.
    pub fn case_a() -> Self {
        let hamiltonian = HamiltonianParams {
            omega_z: -2.0,
            omega_x: 0.09,
            j2: 0.0,
            j3: 0.0,
            n_spins: 3,
            periodic: true,
        };
        let schedule = Schedule {
            knob: ControlKnob::J2,
            c_start: 0.0,
            c_end: 2.0,
            total_time: 70.0,
            steps: 8,
            shape: ControlShape::Linear,
            sinh_sharpness: DEFAULT_SINH_SHARPNESS,
        };
        Self {
            case: NamedCase::A,
            hamiltonian,
            schedule,
            decoherence: Some(DecoherenceParams {
                t2_eff: 0.150,
                t1: None,
                step_duration: 0.146 / 8.0,
            }),
            witness_ghz: GhzReference::ZMinus,
            ..Self::base(hamiltonian, schedule)
        }
    }

    /// Case B defaults: J3 scan from the product regime into the GHZ
    /// regime. The hyperbolic-sine path is slow at the start, where this
    /// scan's gap minimum sits; the scan ends in the x-basis GHZ state,
    /// so the GHZ witness uses that frame.
    pub fn case_b() -> Self {
        let hamiltonian = HamiltonianParams {
            omega_z: 0.0,
            omega_x: 0.12,
            j2: 0.0,
            j3: 0.0,
            n_spins: 3,
            periodic: true,
        };
        let schedule = Schedule {
            knob: ControlKnob::J3,
            c_start: 0.0,
            c_end: 2.0,
            total_time: 150.0,
            steps: 8,
            shape: ControlShape::HyperbolicSine,
            sinh_sharpness: DEFAULT_SINH_SHARPNESS,
        };
        Self {
            case: NamedCase::B,
            hamiltonian,
            schedule,
            decoherence: Some(DecoherenceParams {
                t2_eff: 0.600,
                t1: None,
                step_duration: 0.062 / 8.0,
            }),
            witness_ghz: GhzReference::XMinus,
            ..Self::base(hamiltonian, schedule)
        }
    }

    /// Custom-case defaults (Case A physics until overridden).
    pub fn custom() -> Self {
        let mut cfg = Self::case_a();
        cfg.case = NamedCase::Custom;
        cfg
    }

    fn base(hamiltonian: HamiltonianParams, schedule: Schedule) -> Self {
        Self {
            case: NamedCase::Custom,
            hamiltonian,
            schedule,
            decoherence: None,
            evolution: Evolution::ExactSegmentwise,
            substeps: 1,
            noise_granularity: NoiseGranularity::PerSegment,
            seed: 17,
            out: None,
            witness_w_flip: Spin::Down,
            witness_ghz: GhzReference::ZMinus,
            nmr: NmrSystem::synthetic(),
            grid_j2: GridAxis {
                lo: 0.0,
                hi: 2.0,
                samples: 21,
            },
            grid_j3: GridAxis {
                lo: 0.0,
                hi: 2.0,
                samples: 21,
            },
            knob_scan: None,
            m_list: vec![2, 4, 8, 16, 32, 64],
        }
    }

    pub fn named(case: NamedCase) -> Self {
        match case {
            NamedCase::A => Self::case_a(),
            NamedCase::B => Self::case_b(),
            NamedCase::Custom => Self::custom(),
        }
    }

    /// Parse a config file.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    /// Parse flat `key = value` text.
    pub fn parse(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            pairs.push((key.trim().to_string(), value.trim().to_string()));
        }

        let case = match pairs.iter().find(|(k, _)| k == "case") {
            Some((_, v)) => match v.to_ascii_lowercase().as_str() {
                "a" => NamedCase::A,
                "b" => NamedCase::B,
                "custom" => NamedCase::Custom,
                other => {
                    return Err(Error::Config(format!(
                        "case must be A, B or custom, got `{other}`"
                    )))
                }
            },
            None => NamedCase::Custom,
        };
        let mut cfg = Self::named(case);
        for (key, value) in &pairs {
            if key != "case" {
                cfg.apply_key(key, value)?;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn pinned_by_case(&self, key: &str) -> bool {
        matches!(
            key,
            "hamiltonian.omega_z"
                | "hamiltonian.omega_x"
                | "hamiltonian.j2"
                | "hamiltonian.j3"
                | "hamiltonian.n_spins"
                | "hamiltonian.periodic"
                | "schedule.control"
                | "schedule.start"
                | "schedule.end"
        )
    }

    fn check_pinned(&self, key: &str, conflicting: bool) -> Result<()> {
        if self.case != NamedCase::Custom && self.pinned_by_case(key) && conflicting {
            let case = if self.case == NamedCase::A { 'A' } else { 'B' };
            return Err(Error::CaseOverrideConflict {
                case,
                key: key.to_string(),
            });
        }
        Ok(())
    }

    /// Apply one `key = value` pair.
    pub fn apply_key(&mut self, key: &str, value: &str) -> Result<()> {
        fn f64_of(key: &str, value: &str) -> Result<f64> {
            value
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("{key}: `{value}` is not a number")))
        }
        fn usize_of(key: &str, value: &str) -> Result<usize> {
            value
                .parse::<usize>()
                .map_err(|_| Error::Config(format!("{key}: `{value}` is not a count")))
        }
        fn bool_of(key: &str, value: &str) -> Result<bool> {
            match value {
                "true" => Ok(true),
                "false" => Ok(false),
                _ => Err(Error::Config(format!("{key}: `{value}` is not a boolean"))),
            }
        }
        fn axis_of(key: &str, value: &str) -> Result<GridAxis> {
            let parts: Vec<&str> = value.split(':').collect();
            if parts.len() != 3 {
                return Err(Error::Config(format!("{key}: expected `lo:hi:samples`")));
            }
            Ok(GridAxis {
                lo: f64_of(key, parts[0])?,
                hi: f64_of(key, parts[1])?,
                samples: usize_of(key, parts[2])?,
            })
        }

        match key {
            "hamiltonian.omega_z" => {
                let v = f64_of(key, value)?;
                self.check_pinned(key, v != self.hamiltonian.omega_z)?;
                self.hamiltonian.omega_z = v;
            }
            "hamiltonian.omega_x" => {
                let v = f64_of(key, value)?;
                self.check_pinned(key, v != self.hamiltonian.omega_x)?;
                self.hamiltonian.omega_x = v;
            }
            "hamiltonian.j2" => {
                let v = f64_of(key, value)?;
                self.check_pinned(key, v != self.hamiltonian.j2)?;
                self.hamiltonian.j2 = v;
            }
            "hamiltonian.j3" => {
                let v = f64_of(key, value)?;
                self.check_pinned(key, v != self.hamiltonian.j3)?;
                self.hamiltonian.j3 = v;
            }
            "hamiltonian.n_spins" => {
                let v = usize_of(key, value)?;
                self.check_pinned(key, v != self.hamiltonian.n_spins)?;
                self.hamiltonian.n_spins = v;
            }
            "hamiltonian.periodic" => {
                let v = bool_of(key, value)?;
                self.check_pinned(key, v != self.hamiltonian.periodic)?;
                self.hamiltonian.periodic = v;
            }
            "schedule.control" => {
                let knob = match value {
                    "j2" => ControlKnob::J2,
                    "j3" => ControlKnob::J3,
                    _ => return Err(Error::Config(format!("{key}: expected j2 or j3"))),
                };
                self.check_pinned(key, knob != self.schedule.knob)?;
                self.schedule.knob = knob;
            }
            "schedule.start" => {
                let v = f64_of(key, value)?;
                self.check_pinned(key, v != self.schedule.c_start)?;
                self.schedule.c_start = v;
            }
            "schedule.end" => {
                let v = f64_of(key, value)?;
                self.check_pinned(key, v != self.schedule.c_end)?;
                self.schedule.c_end = v;
            }
            "schedule.total_time" => self.schedule.total_time = f64_of(key, value)?,
            "schedule.steps" => self.schedule.steps = usize_of(key, value)?,
            "schedule.shape" => {
                self.schedule.shape = match value {
                    "sinh" => ControlShape::HyperbolicSine,
                    "linear" => ControlShape::Linear,
                    _ => return Err(Error::Config(format!("{key}: expected sinh or linear"))),
                }
            }
            "schedule.sharpness" => self.schedule.sinh_sharpness = f64_of(key, value)?,
            "decoherence.enabled" => {
                if !bool_of(key, value)? {
                    self.decoherence = None;
                } else if self.decoherence.is_none() {
                    self.decoherence = Some(DecoherenceParams {
                        t2_eff: 0.150,
                        t1: None,
                        step_duration: self.schedule.total_time / self.schedule.steps as f64,
                    });
                }
            }
            "decoherence.t2_eff" => {
                let v = f64_of(key, value)?;
                self.decoherence
                    .get_or_insert(DecoherenceParams {
                        t2_eff: v,
                        t1: None,
                        step_duration: 0.01,
                    })
                    .t2_eff = v;
            }
            "decoherence.t1" => {
                let t1 = if value == "inf" {
                    None
                } else {
                    Some(f64_of(key, value)?)
                };
                if let Some(d) = self.decoherence.as_mut() {
                    d.t1 = t1;
                } else {
                    return Err(Error::Config(
                        "decoherence.t1 set but decoherence is disabled".into(),
                    ));
                }
            }
            "decoherence.step_duration" => {
                let v = f64_of(key, value)?;
                if let Some(d) = self.decoherence.as_mut() {
                    d.step_duration = v;
                } else {
                    return Err(Error::Config(
                        "decoherence.step_duration set but decoherence is disabled".into(),
                    ));
                }
            }
            "evolution" => {
                self.evolution = match value {
                    "exact" => Evolution::ExactSegmentwise,
                    "trotter" => Evolution::TrotterSequence,
                    _ => return Err(Error::Config(format!("{key}: expected exact or trotter"))),
                }
            }
            "substeps" => self.substeps = usize_of(key, value)?,
            "noise" => {
                self.noise_granularity = match value {
                    "per-segment" => NoiseGranularity::PerSegment,
                    "per-substep" => NoiseGranularity::PerSubstep,
                    _ => {
                        return Err(Error::Config(format!(
                            "{key}: expected per-segment or per-substep"
                        )))
                    }
                }
            }
            "seed" => {
                self.seed = value
                    .parse::<u64>()
                    .map_err(|_| Error::Config(format!("{key}: `{value}` is not a seed")))?
            }
            "out" => self.out = Some(PathBuf::from(value)),
            "witness.w" => {
                self.witness_w_flip = match value {
                    "down" => Spin::Down,
                    "up" => Spin::Up,
                    _ => return Err(Error::Config(format!("{key}: expected down or up"))),
                }
            }
            "witness.ghz" => {
                self.witness_ghz = match value {
                    "z-minus" => GhzReference::ZMinus,
                    "z-plus" => GhzReference::ZPlus,
                    "x-minus" => GhzReference::XMinus,
                    "x-plus" => GhzReference::XPlus,
                    _ => {
                        return Err(Error::Config(format!(
                            "{key}: expected z-minus, z-plus, x-minus or x-plus"
                        )))
                    }
                }
            }
            "nmr.larmor1" => self.nmr.larmor_hz[0] = f64_of(key, value)?,
            "nmr.larmor2" => self.nmr.larmor_hz[1] = f64_of(key, value)?,
            "nmr.larmor3" => self.nmr.larmor_hz[2] = f64_of(key, value)?,
            "nmr.j12" => self.nmr.j12_hz = f64_of(key, value)?,
            "nmr.j13" => self.nmr.j13_hz = f64_of(key, value)?,
            "nmr.j23" => self.nmr.j23_hz = f64_of(key, value)?,
            "phase.j2" => self.grid_j2 = axis_of(key, value)?,
            "phase.j3" => self.grid_j3 = axis_of(key, value)?,
            "phase.knob" => {
                let knob = match value {
                    "j2" => ControlKnob::J2,
                    "j3" => ControlKnob::J3,
                    _ => return Err(Error::Config(format!("{key}: expected j2 or j3"))),
                };
                let axis = self
                    .knob_scan
                    .map(|(_, a)| a)
                    .unwrap_or(GridAxis {
                        lo: 0.0,
                        hi: 2.0,
                        samples: 41,
                    });
                self.knob_scan = Some((knob, axis));
            }
            "phase.range" => {
                let axis = axis_of(key, value)?;
                let knob = self
                    .knob_scan
                    .map(|(k, _)| k)
                    .unwrap_or(self.schedule.knob);
                self.knob_scan = Some((knob, axis));
            }
            "msweep.m_list" => {
                self.m_list = value
                    .split(',')
                    .map(|s| usize_of(key, s.trim()))
                    .collect::<Result<Vec<_>>>()?;
                if self.m_list.is_empty() {
                    return Err(Error::Config("msweep.m_list is empty".into()));
                }
            }
            other => return Err(Error::Config(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.hamiltonian.validate()?;
        self.schedule.validate()?;
        if let Some(d) = &self.decoherence {
            d.validate()?;
        }
        if self.substeps == 0 {
            return Err(Error::Config("substeps must be at least 1".into()));
        }
        Ok(())
    }
}
