//! Subcommand implementations.
//!
//! Exit-code contract: 0 on success, 1 for usage/configuration/I/O errors,
//! 2 for numerical failures (divergence, infeasible synthesis). Summary and
//! status lines go to stdout, errors to stderr. Files are written atomically
//! (temp file in the same directory, then rename).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use chua_dual::{
    chaotic_band, classify, derive_dimensionless, dimensionless_params, integrate, label_band,
    lyapunov_max, preset, rescale, sweep_ic, sweep_r0, synthesize_network, verify_network,
    AttractorLabel, ChuaParams, CircuitParams, Classification, ClassifyOptions,
    IntegrationSettings, LyapunovEstimate, LyapunovOptions, PwlOddFunction, Quantity, State3,
    SweepOptions, SweepResult, SynthesisRequest, Trajectory,
};

use crate::args::{Mode, ProjectionArg, SimulateArgs, SweepArgs, SweepCommand, SynthesizeArgs};
use crate::csv::{export_csv, CsvMode};
use crate::error::CliError;
use crate::svg::{render_svg, Projection};

/// Fully resolved simulate invocation.
pub struct ResolvedRun {
    pub mode: Mode,
    /// Where the parameters came from, for the config echo.
    pub source: String,
    /// Dimensionless equivalent, used for classification and exponents
    /// (and for integration in dimensionless mode).
    pub params: ChuaParams,
    /// The circuit, when physical equations are integrated.
    pub circuit: Option<CircuitParams>,
    /// Seconds per τ (1 for dimensionless runs).
    pub time_scale: f64,
    /// Initial state in run units.
    pub initial: State3,
    /// Integration settings in run units.
    pub settings: IntegrationSettings,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn reference_network() -> Result<(chua_dual::OpAmpResistor, chua_dual::OpAmpResistor), CliError> {
    let net = preset("multisim")?;
    Ok((net.resistor1().clone(), net.resistor2().clone()))
}

fn build_circuit(args: &SimulateArgs) -> Result<Option<CircuitParams>, CliError> {
    let explicit = [args.l1, args.l2, args.cap];
    let any_explicit = explicit.iter().any(Option::is_some);
    match (&args.preset, any_explicit) {
        (Some(_), true) => Err(usage(
            "give exactly one parameter source: --preset or explicit components",
        )),
        (Some(name), false) => {
            let mut circuit = preset(name)?;
            if let Some(ohms) = args.r0 {
                circuit = circuit.with_r0(rescale(ohms, Quantity::Resistance)?.magnitude())?;
            }
            Ok(Some(circuit))
        }
        (None, true) => {
            let (Some(l1), Some(l2), Some(cap), Some(r0)) =
                (args.l1, args.l2, args.cap, args.r0)
            else {
                return Err(usage(
                    "an explicit circuit needs all of --l1, --l2, --cap and --r0 (SI units)",
                ));
            };
            let (r1, r2) = reference_network()?;
            Ok(Some(CircuitParams::new(
                rescale(l1, Quantity::Inductance)?.magnitude(),
                rescale(l2, Quantity::Inductance)?.magnitude(),
                rescale(cap, Quantity::Capacitance)?.magnitude(),
                rescale(r0, Quantity::Resistance)?.magnitude(),
                r1,
                r2,
            )?))
        }
        (None, false) => Ok(None),
    }
}

pub fn resolve_run(args: &SimulateArgs) -> Result<ResolvedRun, CliError> {
    let dim_explicit = args.alpha.is_some() || args.beta.is_some();
    let reference = IntegrationSettings::new(args.h, args.tau_end, args.stride, args.blowup)?;

    match args.mode {
        Mode::Dimensionless => {
            if args.i10.is_some() || args.i20.is_some() || args.uc0.is_some() {
                return Err(usage(
                    "--i10/--i20/--uc0 set physical initial conditions; use --mode physical",
                ));
            }
            let circuit = build_circuit(args)?;
            let (params, source) = match (&circuit, dim_explicit) {
                (Some(_), true) => {
                    return Err(usage(
                        "give exactly one parameter source: --alpha/--beta or a circuit",
                    ))
                }
                (Some(c), false) => {
                    let d = derive_dimensionless(c);
                    let params = if args.five_segment {
                        dimensionless_params(c)?
                    } else {
                        // three-segment equivalent: inner two slopes of u/r0
                        let report = verify_network(c);
                        let g = PwlOddFunction::three_segment(
                            report.slopes[2],
                            report.slopes[1],
                            report.inner_breakpoint,
                        )?;
                        ChuaParams::with_g(d.alpha, d.beta, g)?
                    };
                    let name = args.preset.clone().unwrap_or_else(|| "explicit".into());
                    (params, format!("circuit:{name}"))
                }
                (None, true) => {
                    if args.five_segment {
                        return Err(usage(
                            "--five-segment needs a circuit network (--preset or --mode physical)",
                        ));
                    }
                    let (Some(alpha), Some(beta)) = (args.alpha, args.beta) else {
                        return Err(usage("--alpha and --beta are required together"));
                    };
                    let g = PwlOddFunction::three_segment(args.m1, args.m0, args.g_breakpoint)?;
                    (ChuaParams::with_g(alpha, beta, g)?, "explicit".to_string())
                }
                (None, false) => {
                    return Err(usage(
                        "no parameters: give --preset NAME or --alpha/--beta (see --help)",
                    ))
                }
            };
            Ok(ResolvedRun {
                mode: Mode::Dimensionless,
                source,
                params,
                circuit: None,
                time_scale: 1.0,
                initial: State3::new(
                    args.x0.unwrap_or(1e-3),
                    args.y0.unwrap_or(0.0),
                    args.z0.unwrap_or(0.0),
                ),
                settings: reference,
            })
        }
        Mode::Physical => {
            if dim_explicit {
                return Err(usage(
                    "--alpha/--beta are dimensionless parameters; use --mode dimensionless",
                ));
            }
            if args.x0.is_some() || args.y0.is_some() || args.z0.is_some() {
                return Err(usage(
                    "--x0/--y0/--z0 set dimensionless initial conditions; use --i10/--i20/--uc0",
                ));
            }
            let circuit = build_circuit(args)?.ok_or_else(|| {
                usage("physical mode needs --preset NAME or an explicit circuit (see --help)")
            })?;
            let d = derive_dimensionless(&circuit);
            let params = dimensionless_params(&circuit)?;
            let settings = reference.scaled(d.time_scale, circuit.r0().max(1.0))?;
            let name = args.preset.clone().unwrap_or_else(|| "explicit".into());
            Ok(ResolvedRun {
                mode: Mode::Physical,
                source: format!("circuit:{name}"),
                params,
                circuit: Some(circuit),
                time_scale: d.time_scale,
                initial: State3::new(
                    args.i10.unwrap_or(1e-3),
                    args.i20.unwrap_or(0.0),
                    args.uc0.unwrap_or(0.0),
                ),
                settings,
            })
        }
    }
}

/// Deterministic key=value echo of a resolved run.
pub fn dump_config(run: &ResolvedRun) -> String {
    let mut out = String::new();
    let mode = match run.mode {
        Mode::Dimensionless => "dimensionless",
        Mode::Physical => "physical",
    };
    let join = |vals: &[f64]| {
        vals.iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    writeln!(out, "config.mode = {mode}").unwrap();
    writeln!(out, "config.source = {}", run.source).unwrap();
    writeln!(out, "config.alpha = {}", run.params.alpha()).unwrap();
    writeln!(out, "config.beta = {}", run.params.beta()).unwrap();
    writeln!(out, "config.g_slopes = {}", join(run.params.g().slopes())).unwrap();
    writeln!(
        out,
        "config.g_breakpoints = {}",
        join(run.params.g().breakpoints())
    )
    .unwrap();
    if let Some(c) = &run.circuit {
        writeln!(out, "config.l1_kH = {}", c.l1()).unwrap();
        writeln!(out, "config.l2_kH = {}", c.l2()).unwrap();
        writeln!(out, "config.c_mF = {}", c.c()).unwrap();
        writeln!(out, "config.r0_kohm = {}", c.r0()).unwrap();
    }
    writeln!(out, "config.time_scale_s_per_tau = {}", run.time_scale).unwrap();
    writeln!(
        out,
        "config.initial = {}",
        join(&[run.initial.x(), run.initial.y(), run.initial.z()])
    )
    .unwrap();
    writeln!(out, "config.step = {}", run.settings.step()).unwrap();
    writeln!(out, "config.duration = {}", run.settings.duration()).unwrap();
    writeln!(out, "config.record_stride = {}", run.settings.record_stride()).unwrap();
    writeln!(out, "config.blowup_norm = {}", run.settings.blowup_norm()).unwrap();
    out
}

fn parse_size(text: &str) -> Result<(u32, u32), CliError> {
    let (w, h) = text
        .split_once(['x', 'X'])
        .ok_or_else(|| usage(format!("--size must be WIDTHxHEIGHT, got `{text}`")))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<u32>()
            .map_err(|_| usage(format!("--size must be WIDTHxHEIGHT in pixels, got `{text}`")))
    };
    Ok((parse(w)?, parse(h)?))
}

fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    std::fs::write(&tmp, contents)
        .map_err(|e| usage(format!("cannot write {}: {e}", tmp.display())))?;
    std::fs::rename(&tmp, path)
        .map_err(|e| usage(format!("cannot rename into {}: {e}", path.display())))?;
    Ok(())
}

/// Integrates a resolved run.
pub fn run_trajectory(run: &ResolvedRun) -> Trajectory {
    match (&run.circuit, run.mode) {
        (Some(c), Mode::Physical) => integrate(|s| c.derivative(s), run.initial, &run.settings),
        _ => integrate(|s| run.params.derivative(s), run.initial, &run.settings),
    }
}

fn classify_run(run: &ResolvedRun, traj: &Trajectory) -> Option<Classification> {
    let eq = run.params.equilibria().ok()?;
    classify(traj, &eq, &ClassifyOptions::default()).ok()
}

fn lyapunov_for_run(run: &ResolvedRun) -> Result<LyapunovEstimate, CliError> {
    // exponent is estimated on the dimensionless equivalent; per-second
    // value is lambda / time_scale
    let s0 = match run.mode {
        Mode::Dimensionless => run.initial,
        Mode::Physical => {
            let r0 = run.circuit.as_ref().map(|c| c.r0()).unwrap_or(1.0);
            State3::new(run.initial.x(), run.initial.y(), run.initial.z() / r0)
        }
    };
    Ok(lyapunov_max(&run.params, s0, &LyapunovOptions::default())?)
}

pub fn cmd_simulate(args: &SimulateArgs) -> Result<(), CliError> {
    let run = resolve_run(args)?;
    if args.dump_config {
        print!("{}", dump_config(&run));
    }
    let traj = run_trajectory(&run);
    let csv_mode = match run.mode {
        Mode::Dimensionless => CsvMode::Dimensionless,
        Mode::Physical => CsvMode::Physical,
    };

    if let Some(path) = &args.out {
        write_atomic(path, &export_csv(&traj, csv_mode)?)?;
    }
    if let Some(path) = &args.svg {
        let projection = match args.projection {
            ProjectionArg::Xy => Projection::Xy,
            ProjectionArg::Xz => Projection::Xz,
            ProjectionArg::Yz => Projection::Yz,
        };
        write_atomic(path, &render_svg(&traj, projection, parse_size(&args.size)?, csv_mode)?)?;
    }

    let classification = classify_run(&run, &traj);
    let lambda = if args.lyapunov {
        Some(lyapunov_for_run(&run)?)
    } else {
        None
    };

    let mut line = format!(
        "status={} mode={} points={}",
        if traj.diverged() { "diverged" } else { "completed" },
        match run.mode {
            Mode::Dimensionless => "dimensionless",
            Mode::Physical => "physical",
        },
        traj.len()
    );
    if run.mode == Mode::Physical {
        write!(line, " time_scale_s_per_tau={}", run.time_scale).unwrap();
    }
    if let Some(c) = &classification {
        write!(
            line,
            " label={} transitions={} final_amplitude={:.6}",
            c.label.as_str(),
            c.evidence.transitions,
            c.evidence.final_amplitude
        )
        .unwrap();
    }
    if let Some(l) = &lambda {
        write!(line, " lambda={:.4} lambda_stderr={:.4}", l.lambda, l.std_error).unwrap();
    }
    println!("{line}");

    match traj.termination() {
        chua_dual::Termination::Completed => Ok(()),
        chua_dual::Termination::Diverged { time } => Err(CliError::Numerical(format!(
            "trajectory diverged at t = {time}"
        ))),
    }
}

fn sweep_csv(result: &SweepResult, column: &str) -> String {
    let mut csv = String::new();
    writeln!(csv, "{column},label,lambda").unwrap();
    for p in &result.points {
        let label = p.label().map(|l| l.as_str()).unwrap_or("error");
        match p.lambda() {
            Some(l) => writeln!(csv, "{},{},{}", p.value, label, l).unwrap(),
            None => writeln!(csv, "{},{},", p.value, label).unwrap(),
        }
    }
    csv
}

fn band_text(band: Option<(f64, f64)>, fmt: impl Fn(f64) -> String, unit: &str) -> String {
    match band {
        Some((lo, hi)) => format!("{} .. {} {unit}", fmt(lo), fmt(hi)),
        None => "none".to_string(),
    }
}

pub fn cmd_sweep(kind: &SweepCommand) -> Result<(), CliError> {
    let (args, is_r0): (&SweepArgs, bool) = match kind {
        SweepCommand::R0(a) => (a, true),
        SweepCommand::Uc0(a) => (a, false),
    };
    if !(args.step.is_finite() && args.step > 0.0) || !args.from.is_finite() || !args.to.is_finite()
    {
        return Err(usage(format!(
            "sweep needs finite bounds and --step > 0 (got --from {} --to {} --step {})",
            args.from, args.to, args.step
        )));
    }
    let base = preset(&args.preset)?;
    let opts = SweepOptions {
        settings: IntegrationSettings::new(args.h, args.tau_end, 1, 100.0)?,
        lyapunov: args.lyapunov.then(LyapunovOptions::default),
        ..SweepOptions::default()
    };
    let (result, column) = if is_r0 {
        (
            sweep_r0(
                args.from / 1000.0,
                args.to / 1000.0,
                args.step / 1000.0,
                &base,
                &opts,
            )?,
            "r0_kohm",
        )
    } else {
        (sweep_ic(args.from, args.to, args.step, &base, &opts)?, "uc0_V")
    };

    let csv = sweep_csv(&result, column);
    match &args.out {
        Some(path) => write_atomic(path, &csv)?,
        None => print!("{csv}"),
    }

    if is_r0 {
        let ohm = |v: f64| format!("{:.0}", v * 1000.0);
        println!(
            "# double-scroll band: {}",
            band_text(label_band(&result, AttractorLabel::DoubleScroll), ohm, "ohm")
        );
        let ohm = |v: f64| format!("{:.0}", v * 1000.0);
        println!(
            "# single-scroll band: {}",
            band_text(label_band(&result, AttractorLabel::SingleScroll), ohm, "ohm")
        );
    } else {
        println!(
            "# chaotic band: {}",
            band_text(chaotic_band(&result), |v| v.to_string(), "V")
        );
    }
    Ok(())
}

pub fn cmd_synthesize(args: &SynthesizeArgs) -> Result<(), CliError> {
    let req = SynthesisRequest {
        m0: args.m0,
        m1: args.m1,
        s_out: args.s_out,
        r0: args.r0,
        i_break: args.i_break,
        rf_split: args.rf_split,
        r_a1: args.ra1,
        r_a2: args.ra2,
        v_headroom: args.v_headroom,
        vcc1: args.vcc1,
    };
    let out = synthesize_network(&req)?;
    println!(
        "Rf1 = {} kohm  Ra1 = {} kohm  Rb1 = {} kohm  VCC1 = {} V (u_sat {} V)",
        out.resistor1.r_f(),
        out.resistor1.r_a(),
        out.resistor1.r_b(),
        out.vcc1,
        out.resistor1.u_sat()
    );
    println!(
        "Rf2 = {} kohm  Ra2 = {} kohm  Rb2 = {} kohm  VCC2 = {} V (u_sat {} V)",
        out.resistor2.r_f(),
        out.resistor2.r_a(),
        out.resistor2.r_b(),
        out.vcc2,
        out.resistor2.u_sat()
    );
    let s = out.report.slopes;
    println!("segment slopes: {} {} {} {} {}", s[0], s[1], s[2], s[3], s[4]);
    println!(
        "breakpoints: inner {} mA, outer {} mA",
        out.report.inner_breakpoint, out.report.outer_breakpoint
    );

    if args.verify {
        // reactive values don't enter the segment report; placeholders suffice
        let circuit = CircuitParams::new(
            1.0,
            1.0,
            1.0,
            req.r0,
            out.resistor1.clone(),
            out.resistor2.clone(),
        )?;
        let report = verify_network(&circuit);
        let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1e-12);
        let ok = rel(report.slopes[2], req.m1) < 1e-9
            && rel(report.slopes[1], req.m0) < 1e-9
            && rel(report.slopes[0], req.s_out) < 1e-9
            && rel(report.inner_breakpoint, req.i_break) < 1e-9;
        if ok {
            println!("verify: PASS (slopes and inner breakpoint reproduce the request)");
        } else {
            println!(
                "verify: FAIL (slopes {:?}, inner breakpoint {} mA)",
                report.slopes, report.inner_breakpoint
            );
            return Err(CliError::Numerical(
                "synthesized network failed verification".into(),
            ));
        }
    }
    Ok(())
}
