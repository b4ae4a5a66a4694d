//! Command-line front end. The library does the work; this binary only
//! parses arguments, loads configuration, dispatches, and writes output.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use trispin::config::{ExperimentConfig, NamedCase};
use trispin::experiments::{
    format_summary, run_case, run_msweep, run_phase_scan, write_msweep_csv, write_phase_csv,
    write_scan_csv,
};
use trispin::pulse::{compile_step, simulate_plan};
use trispin::selftest::run_selftest;

const USAGE: &str = "\
usage: trispin <verb> [options]

verbs:
  run             execute the configured adiabatic scan, emit per-step CSV
  msweep          minimum fidelity vs step count (fixed per-step duration)
  phasescan       classify ground states over the (J2, J3) grid
  compile-pulse   compile one Trotter step into an abstract pulse schedule
  selftest        run the seeded self-check battery

options:
  --case A|B           named experiment (default: custom defaults)
  --config PATH        flat key=value config file
  --M N                override schedule step count
  --T X                override total model time
  --no-decoherence     drop the decoherence channel
  --evolution MODE     exact | trotter
  --substeps K         Trotter substeps per segment
  --tau X              (compile-pulse) model duration of the step
  --out PATH           write CSV here (default: stdout)
  --seed N             seed for sampled self-tests
";

struct Cli {
    verb: String,
    case: Option<NamedCase>,
    config: Option<PathBuf>,
    steps: Option<usize>,
    total_time: Option<f64>,
    no_decoherence: bool,
    evolution: Option<String>,
    substeps: Option<usize>,
    tau: Option<f64>,
    out: Option<PathBuf>,
    seed: Option<u64>,
}

fn parse_cli(args: &[String]) -> Result<Cli, String> {
    let verb = args.first().cloned().ok_or_else(|| USAGE.to_string())?;
    let mut cli = Cli {
        verb,
        case: None,
        config: None,
        steps: None,
        total_time: None,
        no_decoherence: false,
        evolution: None,
        substeps: None,
        tau: None,
        out: None,
        seed: None,
    };
    let mut it = args[1..].iter();
    while let Some(flag) = it.next() {
        let mut value_of = |name: &str| {
            it.next()
                .cloned()
                .ok_or_else(|| format!("{name} needs a value"))
        };
        match flag.as_str() {
            "--case" => {
                cli.case = Some(match value_of("--case")?.as_str() {
                    "A" | "a" => NamedCase::A,
                    "B" | "b" => NamedCase::B,
                    other => return Err(format!("unknown case `{other}`")),
                })
            }
            "--config" => cli.config = Some(PathBuf::from(value_of("--config")?)),
            "--M" => {
                cli.steps = Some(
                    value_of("--M")?
                        .parse()
                        .map_err(|_| "--M needs an integer".to_string())?,
                )
            }
            "--T" => {
                cli.total_time = Some(
                    value_of("--T")?
                        .parse()
                        .map_err(|_| "--T needs a number".to_string())?,
                )
            }
            "--no-decoherence" => cli.no_decoherence = true,
            "--evolution" => cli.evolution = Some(value_of("--evolution")?),
            "--substeps" => {
                cli.substeps = Some(
                    value_of("--substeps")?
                        .parse()
                        .map_err(|_| "--substeps needs an integer".to_string())?,
                )
            }
            "--tau" => {
                cli.tau = Some(
                    value_of("--tau")?
                        .parse()
                        .map_err(|_| "--tau needs a number".to_string())?,
                )
            }
            "--out" => cli.out = Some(PathBuf::from(value_of("--out")?)),
            "--seed" => {
                cli.seed = Some(
                    value_of("--seed")?
                        .parse()
                        .map_err(|_| "--seed needs an integer".to_string())?,
                )
            }
            other => return Err(format!("unknown flag `{other}`\n\n{USAGE}")),
        }
    }
    Ok(cli)
}

fn build_config(cli: &Cli) -> trispin::Result<ExperimentConfig> {
    let mut cfg = match (&cli.config, cli.case) {
        (Some(path), _) => {
            let cfg = ExperimentConfig::from_file(path)?;
            if let Some(case) = cli.case {
                // --case next to --config must agree with the file
                if cfg.case != case {
                    return Err(trispin::Error::Config(
                        "--case conflicts with the case named in the config file".into(),
                    ));
                }
            }
            cfg
        }
        (None, Some(case)) => ExperimentConfig::named(case),
        (None, None) => ExperimentConfig::custom(),
    };
    if let Some(steps) = cli.steps {
        cfg.schedule.steps = steps;
    }
    if let Some(total) = cli.total_time {
        cfg.schedule.total_time = total;
    }
    if cli.no_decoherence {
        cfg.decoherence = None;
    }
    if let Some(mode) = &cli.evolution {
        cfg.apply_key("evolution", mode)?;
    }
    if let Some(substeps) = cli.substeps {
        cfg.substeps = substeps;
    }
    if let Some(out) = &cli.out {
        cfg.out = Some(out.clone());
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// CSV goes to `--out` when given (summary to stdout), otherwise CSV to
/// stdout and summary to stderr.
fn emit(cfg: &ExperimentConfig, csv: &[u8], summary: Option<&str>) -> trispin::Result<()> {
    match &cfg.out {
        Some(path) => {
            std::fs::write(path, csv)?;
            if let Some(s) = summary {
                print!("{s}");
            }
            eprintln!("wrote {}", path.display());
        }
        None => {
            std::io::stdout().write_all(csv)?;
            if let Some(s) = summary {
                eprint!("{s}");
            }
        }
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> trispin::Result<bool> {
    match cli.verb.as_str() {
        "run" => {
            let cfg = build_config(cli)?;
            let outcome = run_case(&cfg)?;
            let mut csv = Vec::new();
            write_scan_csv(&mut csv, &outcome)?;
            emit(&cfg, &csv, Some(&format_summary(&outcome)))?;
            if let Some(path) = &cfg.out {
                // witness definitions alongside the data, for the record
                let mut defs = String::new();
                defs.push_str("[witness_w]\n");
                defs.push_str(&outcome.witness_w.serialize_definition());
                defs.push_str("[witness_ghz]\n");
                defs.push_str(&outcome.witness_ghz.serialize_definition());
                let mut witness_path = path.clone();
                witness_path.as_mut_os_string().push(".witness.txt");
                std::fs::write(&witness_path, defs)?;
            }
            Ok(true)
        }
        "msweep" => {
            let cfg = build_config(cli)?;
            let points = run_msweep(&cfg)?;
            let mut csv = Vec::new();
            write_msweep_csv(&mut csv, &points)?;
            let best = points
                .iter()
                .max_by(|a, b| a.noisy_min_fidelity.partial_cmp(&b.noisy_min_fidelity).unwrap())
                .expect("m_list is nonempty");
            let summary = format!(
                "best decoherent step count: M = {} (min fidelity {:.6})\n",
                best.steps, best.noisy_min_fidelity
            );
            emit(&cfg, &csv, Some(&summary))?;
            Ok(true)
        }
        "phasescan" => {
            let cfg = build_config(cli)?;
            let mut csv = Vec::new();
            match cfg.knob_scan {
                Some((knob, axis)) => {
                    let scan =
                        trispin::experiments::run_knob_scan(&cfg, knob, axis.lo, axis.hi, axis.samples)?;
                    trispin::experiments::write_knob_scan_csv(&mut csv, &scan)?;
                    let summary = format!(
                        "minimum gap {:.6} at knob value {:.6}\n",
                        scan.min_gap, scan.min_gap_at
                    );
                    emit(&cfg, &csv, Some(&summary))?;
                }
                None => {
                    let points = run_phase_scan(&cfg)?;
                    write_phase_csv(&mut csv, &points)?;
                    emit(&cfg, &csv, None)?;
                }
            }
            Ok(true)
        }
        "compile-pulse" => {
            let cfg = build_config(cli)?;
            let tau = cli.tau.unwrap_or_else(|| cfg.schedule.tau());
            // compile at the scan endpoint, where every configured term
            // is active
            let params = cfg
                .hamiltonian
                .with_knob(cfg.schedule.knob, cfg.schedule.c_end);
            let plan = compile_step(&params, tau, &cfg.nmr)?;
            let unitary = simulate_plan(&plan)?;
            let target = trispin::adiabatic::trotter_step_unitary(&params, tau)?;
            let fidelity = trispin::algebra::process_fidelity(&unitary, &target);
            let csv = plan.to_csv();
            let summary = format!(
                "{}schedule verifies against the Trotter step with process fidelity {:.9}\n",
                plan.listing(),
                fidelity
            );
            emit(&cfg, csv.as_bytes(), Some(&summary))?;
            Ok(true)
        }
        "selftest" => {
            let cfg = build_config(cli)?;
            let outcomes = run_selftest(cfg.seed);
            let mut all_ok = true;
            for o in &outcomes {
                println!(
                    "{} {} ({})",
                    if o.passed { "PASS" } else { "FAIL" },
                    o.name,
                    o.detail
                );
                all_ok &= o.passed;
            }
            Ok(all_ok)
        }
        other => Err(trispin::Error::Config(format!(
            "unknown verb `{other}`\n\n{USAGE}"
        ))),
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cli = match parse_cli(&args) {
        Ok(cli) => cli,
        Err(msg) => {
            eprintln!("{msg}");
            return ExitCode::from(2);
        }
    };
    match dispatch(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
