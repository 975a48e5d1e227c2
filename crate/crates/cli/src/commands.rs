//! Subcommand implementations: construct, verify, wellscape, spectrum,
//! figure2, sweep.

use std::path::PathBuf;

use clap::Args;

use bottomless_core::construct::{
    build_pair, gamma_zero_potential, DegeneratePair, EnergyRef, GridSpec, PairConfig,
};
use bottomless_core::profiles::Profile;
use bottomless_core::spectra::{
    count_nodes, eigen_bisect, numerov_integrate, paired_spectrum, BoxProblem, Parity,
    SpectrumResult,
};
use bottomless_core::verify::{run_battery, Thresholds};
use bottomless_core::wellscape::{classify_sweep_gamma_sq, solve_maxima_gamma_sq};

use crate::args::{
    parse_range, parse_real, parse_real_list, parse_window, CommonArgs, Format, PairArgs, RealList,
};
use crate::errors::CliError;
use crate::output::{
    fmt_f64, sweep_csv, to_json_pretty, write_output, ConstructJson, SpectrumJson, VerifyJson,
    WellJson,
};

/// Resolve the family flags into a profile and pair configuration.
///
/// Defaults reproduce the sech-power bottomless family with nu = 1 and
/// A1 = 1/144 (the shipped reference construction): `--a1` selects the
/// literal form with gamma = sqrt(A1) and the as-given energy reference,
/// `--gamma` selects the general construction with V(0) = 0.
fn resolve_profile_config(args: &PairArgs) -> Result<(Profile, PairConfig), CliError> {
    let family = args.family.as_deref().unwrap_or("sech-power");
    let b = args.b.unwrap_or(1.0);
    let energy_ref = match args.energy_ref.as_deref() {
        None => None,
        Some("origin") => Some(EnergyRef::PotentialZeroAtOrigin),
        Some("as-given") => Some(EnergyRef::PotentialAsGiven),
        Some(other) => {
            return Err(CliError::config(format!(
                "unknown energy reference `{other}` (expected origin or as-given)"
            )))
        }
    };
    let require_gamma = || {
        args.gamma.ok_or_else(|| {
            CliError::config(format!("--gamma is required for the {family} family"))
        })
    };

    match family {
        "sech-power" => {
            let nu = args.nu.unwrap_or(1.0);
            let profile = Profile::sech_power(nu)?;
            match (args.a1, args.gamma) {
                (Some(_), Some(_)) => Err(CliError::config(
                    "--a1 and --gamma are mutually exclusive: A1 already fixes gamma = sqrt(A1)",
                )),
                (None, Some(gamma)) => {
                    let cfg = PairConfig::new(
                        gamma,
                        b,
                        energy_ref.unwrap_or(EnergyRef::PotentialZeroAtOrigin),
                    )?;
                    Ok((profile, cfg))
                }
                (a1, None) => {
                    let a1 = a1.unwrap_or(1.0 / 144.0);
                    if !(a1 > 0.0 && a1.is_finite()) {
                        return Err(CliError::config(format!(
                            "--a1 must be a positive real, got {a1}"
                        )));
                    }
                    let cfg = PairConfig::new(
                        a1.sqrt(),
                        b,
                        energy_ref.unwrap_or(EnergyRef::PotentialAsGiven),
                    )?;
                    Ok((profile, cfg))
                }
            }
        }
        "lorentz" => {
            let profile = Profile::lorentz_sqrt(args.a.unwrap_or(1.0))?;
            let cfg = PairConfig::new(
                require_gamma()?,
                b,
                energy_ref.unwrap_or(EnergyRef::PotentialZeroAtOrigin),
            )?;
            Ok((profile, cfg))
        }
        "gaussian" => {
            let profile = Profile::gaussian(args.alpha.unwrap_or(1.0))?;
            let cfg = PairConfig::new(
                require_gamma()?,
                b,
                energy_ref.unwrap_or(EnergyRef::PotentialZeroAtOrigin),
            )?;
            Ok((profile, cfg))
        }
        "tabulated" => {
            let path = args.profile_file.as_ref().ok_or_else(|| {
                CliError::config("--profile-file is required for the tabulated family")
            })?;
            let profile = Profile::tabulated_from_file(path)?;
            let cfg = PairConfig::new(
                require_gamma()?,
                b,
                energy_ref.unwrap_or(EnergyRef::PotentialZeroAtOrigin),
            )?;
            Ok((profile, cfg))
        }
        other => Err(CliError::config(format!(
            "unknown family `{other}` (expected sech-power, gaussian, lorentz, or tabulated)"
        ))),
    }
}

fn resolve_pair(args: &PairArgs) -> Result<DegeneratePair, CliError> {
    let (profile, cfg) = resolve_profile_config(args)?;
    let grid = GridSpec::new(args.xmax.unwrap_or(6.0), args.n.unwrap_or(2001))?;
    Ok(build_pair(&profile, &cfg, &grid)?)
}

// ---------------------------------------------------------------- construct

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub pair: PairArgs,
}

pub fn cmd_construct(mut args: ConstructArgs) -> Result<(), CliError> {
    let cfg = args.common.load_config()?;
    args.common.merge(&cfg)?;
    args.pair.merge(&cfg)?;
    let pair = resolve_pair(&args.pair)?;

    let body = match args.common.format(Format::Csv)? {
        Format::Csv => {
            let mut s = String::from("x,v,psi_plus,psi_minus,energy\n");
            for i in 0..pair.n_points() {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    fmt_f64(pair.grid[i]),
                    fmt_f64(pair.v_minus_e[i] + pair.energy),
                    fmt_f64(pair.psi_plus[i]),
                    fmt_f64(pair.psi_minus[i]),
                    fmt_f64(pair.energy),
                ));
            }
            s
        }
        Format::Json => to_json_pretty(&ConstructJson {
            family: pair.profile.family_name().to_string(),
            energy: pair.energy,
            wronskian_const: pair.wronskian_const,
            x: pair.grid.clone(),
            v: pair
                .v_minus_e
                .iter()
                .map(|v| v + pair.energy)
                .collect(),
            psi_plus: pair.psi_plus.clone(),
            psi_minus: pair.psi_minus.clone(),
        })?,
    };
    write_output(&args.common.out_path(), &body)
}

// ------------------------------------------------------------------- verify

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub pair: PairArgs,
    /// Corrupt one interior potential sample by 1e-3 before checking;
    /// the report must then fail (used to prove the battery has teeth).
    #[arg(long)]
    pub inject_fault: bool,
}

pub fn cmd_verify(mut args: VerifyArgs) -> Result<(), CliError> {
    let cfg = args.common.load_config()?;
    args.common.merge(&cfg)?;
    args.pair.merge(&cfg)?;
    cfg.fill_flag(&mut args.inject_fault, "inject-fault")?;

    let mut pair = resolve_pair(&args.pair)?;
    if args.inject_fault {
        let i = pair.n_points() / 3;
        pair.v_minus_e[i] += 1e-3;
    }
    let report = run_battery(&pair, Thresholds::default())?;
    let doc = VerifyJson::from_report(&report);

    let body = match args.common.format(Format::Json)? {
        Format::Json => to_json_pretty(&doc)?,
        Format::Csv => doc.to_csv(),
    };
    write_output(&args.common.out_path(), &body)?;

    if report.all_pass() {
        Ok(())
    } else {
        Err(CliError::CheckFailed)
    }
}

// ---------------------------------------------------------------- wellscape

#[derive(Args, Debug)]
pub struct WellscapeArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Lorentzian amplitude a.
    #[arg(long, value_parser = parse_real)]
    pub a: Option<f64>,
    #[arg(long, value_parser = parse_real)]
    pub gamma: Option<f64>,
    /// gamma², for exact threshold values like 2 or 1/16.
    #[arg(long, value_parser = parse_real)]
    pub gamma_sq: Option<f64>,
}

fn resolve_gamma_sq(gamma: Option<f64>, gamma_sq: Option<f64>) -> Result<f64, CliError> {
    match (gamma, gamma_sq) {
        (Some(_), Some(_)) => Err(CliError::config(
            "--gamma and --gamma-sq are mutually exclusive",
        )),
        (Some(g), None) => Ok(g * g),
        (None, Some(g2)) => Ok(g2),
        (None, None) => Err(CliError::config("one of --gamma or --gamma-sq is required")),
    }
}

pub fn cmd_wellscape(mut args: WellscapeArgs) -> Result<(), CliError> {
    let cfg = args.common.load_config()?;
    args.common.merge(&cfg)?;
    cfg.fill_real(&mut args.a, "a")?;
    cfg.fill_real(&mut args.gamma, "gamma")?;
    cfg.fill_real(&mut args.gamma_sq, "gamma-sq")?;

    let a = args.a.unwrap_or(1.0);
    let g2 = resolve_gamma_sq(args.gamma, args.gamma_sq)?;
    let report = solve_maxima_gamma_sq(a, g2)?;

    let body = match args.common.format(Format::Json)? {
        Format::Json => to_json_pretty(&WellJson::from_report(g2, &report))?,
        Format::Csv => sweep_csv(&[(g2, report)]),
    };
    write_output(&args.common.out_path(), &body)
}

// -------------------------------------------------------------------- sweep

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Lorentzian amplitude a.
    #[arg(long, value_parser = parse_real)]
    pub a: Option<f64>,
    /// Comma-separated gamma² values.
    #[arg(long, value_parser = parse_real_list)]
    pub gamma_sq: Option<RealList>,
    /// Linear gamma² range `lo:hi:n`.
    #[arg(long, value_parser = parse_range)]
    pub gamma_sq_range: Option<(f64, f64, usize)>,
}

pub fn cmd_sweep(mut args: SweepArgs) -> Result<(), CliError> {
    let cfg = args.common.load_config()?;
    args.common.merge(&cfg)?;
    cfg.fill_real(&mut args.a, "a")?;
    cfg.fill_with(&mut args.gamma_sq, "gamma-sq", parse_real_list)?;
    cfg.fill_with(&mut args.gamma_sq_range, "gamma-sq-range", parse_range)?;

    let a = args.a.unwrap_or(1.0);
    let gamma_sqs: Vec<f64> = match (args.gamma_sq, args.gamma_sq_range) {
        (Some(_), Some(_)) => {
            return Err(CliError::config(
                "--gamma-sq and --gamma-sq-range are mutually exclusive",
            ))
        }
        (Some(list), None) => list.0,
        (None, Some((lo, hi, n))) => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
        (None, None) => {
            return Err(CliError::config(
                "one of --gamma-sq or --gamma-sq-range is required",
            ))
        }
    };

    let reports = classify_sweep_gamma_sq(a, &gamma_sqs)?;
    let rows: Vec<(f64, bottomless_core::wellscape::WellReport)> =
        gamma_sqs.into_iter().zip(reports).collect();

    let body = match args.common.format(Format::Csv)? {
        Format::Csv => sweep_csv(&rows),
        Format::Json => {
            let docs: Vec<WellJson> = rows
                .iter()
                .map(|(g2, r)| WellJson::from_report(*g2, r))
                .collect();
            to_json_pretty(&docs)?
        }
    };
    write_output(&args.common.out_path(), &body)
}

// ----------------------------------------------------------------- spectrum

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Potential family: free (V = 0) or any construct family.
    #[command(flatten)]
    pub pair: PairArgs,
    /// Wall position L.
    #[arg(long, value_parser = parse_real)]
    pub half_width: Option<f64>,
    /// Numerov step h.
    #[arg(long, value_parser = parse_real)]
    pub step: Option<f64>,
    /// even, odd, or both (both also measures the splitting).
    #[arg(long)]
    pub parity: Option<String>,
    /// Energy search window `lo:hi`.
    #[arg(long, value_parser = parse_window)]
    pub window: Option<(f64, f64)>,
    /// Eigenvalue bisection tolerance.
    #[arg(long, value_parser = parse_real)]
    pub tol_e: Option<f64>,
    /// Reference energy for the splitting (default: window midpoint).
    #[arg(long, value_parser = parse_real)]
    pub e_ref: Option<f64>,
    /// Also write the Numerov trace (x, psi CSV) at the lowest eigenvalue.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

/// Absolute potential V(x) for the spectrum solver: reconstructed from the
/// profile as V - E plus the configured energy, or identically zero for
/// the free box. The solver itself never sees the wavefunction ansatz.
/// Also returns the analytic pair energy (None for the free box), which
/// seeds the default search window.
type Potential = Box<dyn Fn(f64) -> f64>;

fn resolve_potential(args: &PairArgs) -> Result<(Potential, Option<f64>), CliError> {
    if args.family.as_deref() == Some("free") {
        return Ok((Box::new(|_| 0.0), None));
    }
    let (profile, cfg) = resolve_profile_config(args)?;
    let energy = match cfg.energy_ref {
        EnergyRef::PotentialZeroAtOrigin => {
            let j = profile.eval(0.0);
            let f2 = j.f * j.f;
            -(j.ddf / j.f - cfg.gamma * cfg.gamma / (f2 * f2))
        }
        EnergyRef::PotentialAsGiven => -profile
            .curvature_ratio_limit()
            .ok_or_else(|| CliError::config("the as-given energy reference needs a family with a finite f''/f limit"))?,
    };
    let gamma = cfg.gamma;
    let pot = move |x: f64| {
        let j = profile.eval(x);
        let f2 = j.f * j.f;
        j.ddf / j.f - gamma * gamma / (f2 * f2) + energy
    };
    Ok((Box::new(pot), Some(energy)))
}

/// Default search window: the analytic energy ± 25% of the local level
/// spacing, the spacing estimated from two trial integrations by node
/// counting (one node enters per level crossed).
fn default_window(
    potential: &dyn Fn(f64) -> f64,
    half_width: f64,
    step: f64,
    e_analytic: f64,
) -> Result<(f64, f64), CliError> {
    let prob = BoxProblem::new(potential, half_width, step, Parity::Even)?;
    let base_nodes = count_nodes(&prob, e_analytic)?;
    let mut delta = 0.5;
    let spacing = loop {
        let probe_nodes = count_nodes(&prob, e_analytic + delta)?;
        if probe_nodes > base_nodes {
            break delta / (probe_nodes - base_nodes) as f64;
        }
        delta *= 2.0;
        if delta > 8.0 {
            break 1.0;
        }
    };
    Ok((e_analytic - 0.25 * spacing, e_analytic + 0.25 * spacing))
}

pub fn cmd_spectrum(mut args: SpectrumArgs) -> Result<(), CliError> {
    let cfg = args.common.load_config()?;
    args.common.merge(&cfg)?;
    args.pair.merge(&cfg)?;
    cfg.fill_real(&mut args.half_width, "half-width")?;
    cfg.fill_real(&mut args.step, "step")?;
    cfg.fill_string(&mut args.parity, "parity")?;
    cfg.fill_with(&mut args.window, "window", parse_window)?;
    cfg.fill_real(&mut args.tol_e, "tol-e")?;
    cfg.fill_real(&mut args.e_ref, "e-ref")?;
    cfg.fill_path(&mut args.trace, "trace")?;

    let (potential, e_analytic) = resolve_potential(&args.pair)?;
    let half_width = args
        .half_width
        .ok_or_else(|| CliError::config("--half-width is required"))?;
    let step = args.step.ok_or_else(|| CliError::config("--step is required"))?;
    let window = match (args.window, e_analytic) {
        (Some(w), _) => w,
        (None, Some(e)) => default_window(&potential, half_width, step, e)?,
        (None, None) => {
            return Err(CliError::config(
                "--window lo:hi is required for the free potential",
            ))
        }
    };
    let tol_e = args.tol_e.unwrap_or(1e-8);
    let e_ref = args.e_ref.unwrap_or(0.5 * (window.0 + window.1));
    let parity_flag = args.parity.as_deref().unwrap_or("even");

    let result: SpectrumResult = match parity_flag {
        "both" => paired_spectrum(&potential, half_width, step, window, tol_e, e_ref)?,
        "even" | "odd" => {
            let parity = if parity_flag == "even" {
                Parity::Even
            } else {
                Parity::Odd
            };
            eigen_bisect(
                &BoxProblem::new(&potential, half_width, step, parity)?,
                window,
                tol_e,
            )?
        }
        other => {
            return Err(CliError::config(format!(
                "unknown parity `{other}` (expected even, odd, or both)"
            )))
        }
    };

    if let Some(trace_path) = &args.trace {
        if let Some(&e0) = result.eigenvalues.first() {
            let parity = if parity_flag == "odd" {
                Parity::Odd
            } else {
                Parity::Even
            };
            let prob = BoxProblem::new(&potential, half_width, step, parity)?;
            let shot = numerov_integrate(&prob, e0)?;
            let h = prob.effective_step();
            let mut s = String::from("x,psi\n");
            for (i, y) in shot.psi.iter().enumerate() {
                s.push_str(&format!("{},{}\n", fmt_f64(i as f64 * h), fmt_f64(*y)));
            }
            write_output(trace_path, &s)?;
        } else {
            eprintln!("no eigenvalue in the window; trace not written");
        }
    }

    let body = match args.common.format(Format::Json)? {
        Format::Json => to_json_pretty(&SpectrumJson {
            eigenvalues: result.eigenvalues.clone(),
            endpoint_residuals: result.endpoint_residuals.clone(),
            splitting: result.splitting,
            empty: result.is_empty(),
        })?,
        Format::Csv => {
            let mut s = String::from("eigenvalue,endpoint_residual\n");
            for (e, r) in result.eigenvalues.iter().zip(&result.endpoint_residuals) {
                s.push_str(&format!("{},{}\n", fmt_f64(*e), fmt_f64(*r)));
            }
            s
        }
    };
    write_output(&args.common.out_path(), &body)
}

// ------------------------------------------------------------------ figure2

#[derive(Args, Debug)]
pub struct Figure2Args {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Lorentzian amplitude a.
    #[arg(long, value_parser = parse_real)]
    pub a: Option<f64>,
    #[arg(long, value_parser = parse_real)]
    pub xmax: Option<f64>,
    #[arg(long)]
    pub n: Option<usize>,
}

/// The gamma = 0 volcano curve of the Lorentzian family: x,v data with
/// V(0) = -1 and V(±inf) -> 0.
pub fn cmd_figure2(mut args: Figure2Args) -> Result<(), CliError> {
    let cfg = args.common.load_config()?;
    args.common.merge(&cfg)?;
    cfg.fill_real(&mut args.a, "a")?;
    cfg.fill_real(&mut args.xmax, "xmax")?;
    cfg.fill_usize(&mut args.n, "n")?;

    let profile = Profile::lorentz_sqrt(args.a.unwrap_or(1.0))?;
    let grid = GridSpec::new(args.xmax.unwrap_or(6.0), args.n.unwrap_or(1201))?;
    let curve = gamma_zero_potential(&profile, &grid)?;

    let body = match args.common.format(Format::Csv)? {
        Format::Csv => {
            let mut s = String::from("x,v\n");
            for (x, v) in curve.grid.iter().zip(&curve.v) {
                s.push_str(&format!("{},{}\n", fmt_f64(*x), fmt_f64(*v)));
            }
            s
        }
        Format::Json => {
            #[derive(serde::Serialize)]
            struct CurveJson {
                x: Vec<f64>,
                v: Vec<f64>,
            }
            to_json_pretty(&CurveJson {
                x: curve.grid,
                v: curve.v,
            })?
        }
    };
    write_output(&args.common.out_path(), &body)
}
