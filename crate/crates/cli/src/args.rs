//! Flag definitions shared by the subcommands, plus the flag/config-file
//! resolution: a value comes from the flag if given, else from the config
//! file, else from the documented default.

use std::path::PathBuf;

use clap::Args;

use crate::config::ConfigFile;
use crate::errors::CliError;

/// Parse a real number, accepting exact rational `p/q` syntax (the
/// sech-power amplitude 1/144 is exact, so every physics flag takes it).
pub fn parse_real(s: &str) -> Result<f64, String> {
    let v = if let Some((p, q)) = s.split_once('/') {
        let p: f64 = p
            .trim()
            .parse()
            .map_err(|e| format!("bad numerator `{p}`: {e}"))?;
        let q: f64 = q
            .trim()
            .parse()
            .map_err(|e| format!("bad denominator `{q}`: {e}"))?;
        if q == 0.0 {
            return Err("zero denominator".into());
        }
        p / q
    } else {
        s.parse::<f64>().map_err(|e| format!("`{s}`: {e}"))?
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

/// `lo:hi` pair.
pub fn parse_window(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected `lo:hi`")?;
    Ok((parse_real(lo)?, parse_real(hi)?))
}

/// `lo:hi:n` linear range.
pub fn parse_range(s: &str) -> Result<(f64, f64, usize), String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err("expected `lo:hi:n`".into());
    }
    let n: usize = parts[2].parse().map_err(|e| format!("bad count: {e}"))?;
    if n < 2 {
        return Err("range needs at least 2 points".into());
    }
    Ok((parse_real(parts[0])?, parse_real(parts[1])?, n))
}

/// Comma-separated reals. Wrapped in a newtype because clap gives bare
/// `Vec` fields multi-occurrence semantics.
#[derive(Debug, Clone)]
pub struct RealList(pub Vec<f64>);

pub fn parse_real_list(s: &str) -> Result<RealList, String> {
    s.split(',')
        .map(|tok| parse_real(tok.trim()))
        .collect::<Result<Vec<f64>, String>>()
        .map(RealList)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Flags every subcommand carries: config file, output target, format.
#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Key-value config file; explicit flags override its entries.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output path, `-` for stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format: csv or json.
    #[arg(long)]
    pub format: Option<String>,
}

impl CommonArgs {
    pub fn load_config(&self) -> Result<ConfigFile, CliError> {
        match &self.config {
            Some(path) => ConfigFile::load(path),
            None => Ok(ConfigFile::default()),
        }
    }

    pub fn merge(&mut self, cfg: &ConfigFile) -> Result<(), CliError> {
        cfg.fill_path(&mut self.out, "out")?;
        cfg.fill_string(&mut self.format, "format")?;
        Ok(())
    }

    pub fn out_path(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| PathBuf::from("-"))
    }

    pub fn format(&self, default: Format) -> Result<Format, CliError> {
        match self.format.as_deref() {
            None => Ok(default),
            Some("csv") => Ok(Format::Csv),
            Some("json") => Ok(Format::Json),
            Some(other) => Err(CliError::config(format!(
                "unknown format `{other}` (expected csv or json)"
            ))),
        }
    }
}

/// Profile-and-pair flags shared by construct, verify, and spectrum.
#[derive(Args, Debug, Clone)]
pub struct PairArgs {
    /// Profile family: sech-power, gaussian, lorentz, tabulated.
    #[arg(long)]
    pub family: Option<String>,
    /// Sech-power exponent nu (default 1).
    #[arg(long, value_parser = parse_real)]
    pub nu: Option<f64>,
    /// Gaussian width parameter.
    #[arg(long, value_parser = parse_real)]
    pub alpha: Option<f64>,
    /// Lorentzian amplitude.
    #[arg(long, value_parser = parse_real)]
    pub a: Option<f64>,
    /// Sech-power amplitude A1; selects the literal bottomless form with
    /// gamma = sqrt(A1) and the as-given energy reference.
    #[arg(long, value_parser = parse_real)]
    pub a1: Option<f64>,
    /// Phase coupling gamma of the general construction.
    #[arg(long, value_parser = parse_real)]
    pub gamma: Option<f64>,
    /// Odd-state scale B (default 1).
    #[arg(long, value_parser = parse_real)]
    pub b: Option<f64>,
    /// Energy reference: origin (V(0) = 0) or as-given.
    #[arg(long)]
    pub energy_ref: Option<String>,
    /// Two-column (x, f) whitespace-delimited file for tabulated profiles.
    #[arg(long)]
    pub profile_file: Option<PathBuf>,
    /// Grid half-width.
    #[arg(long, value_parser = parse_real)]
    pub xmax: Option<f64>,
    /// Grid point count, odd.
    #[arg(long)]
    pub n: Option<usize>,
}

impl PairArgs {
    pub fn merge(&mut self, cfg: &ConfigFile) -> Result<(), CliError> {
        cfg.fill_string(&mut self.family, "family")?;
        cfg.fill_real(&mut self.nu, "nu")?;
        cfg.fill_real(&mut self.alpha, "alpha")?;
        cfg.fill_real(&mut self.a, "a")?;
        cfg.fill_real(&mut self.a1, "a1")?;
        cfg.fill_real(&mut self.gamma, "gamma")?;
        cfg.fill_real(&mut self.b, "b")?;
        cfg.fill_string(&mut self.energy_ref, "energy-ref")?;
        cfg.fill_path(&mut self.profile_file, "profile-file")?;
        cfg.fill_real(&mut self.xmax, "xmax")?;
        cfg.fill_usize(&mut self.n, "n")?;
        Ok(())
    }
}
