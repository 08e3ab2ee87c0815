//! Command-line configuration. Every numeric flag is validated here, before
//! any computation starts.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dipole_fade::{Complex64, RegionKind};

#[derive(Debug, Parser)]
#[command(
    name = "dipole-fade",
    version,
    about = "Orientation-fading statistics of dipole links as CSV"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub config: RunConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Scaled near- and far-field magnitudes on a slice through the dipole axis.
    FieldMap,
    /// Closed-form and sampled densities of the alignment factors J_nf, J_ff.
    PdfJ,
    /// Closed-form and sampled densities of the field magnitudes β_nf, β_ff.
    PdfBeta,
    /// Density of h for a fixed dᵀo_tx (`--dot`) and random o_rx.
    PdfHCond,
    /// Density of h for random o_tx and o_rx.
    PdfHFull,
    /// Raw draws of h.
    Scatter,
    /// Misalignment-loss CDFs, outage tables, BER curves and diversity exponents.
    Outage,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::FieldMap => "field-map",
            Command::PdfJ => "pdf-j",
            Command::PdfBeta => "pdf-beta",
            Command::PdfHCond => "pdf-h-cond",
            Command::PdfHFull => "pdf-h-full",
            Command::Scatter => "scatter",
            Command::Outage => "outage",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegionArg {
    Near,
    Far,
    Transition,
}

impl From<RegionArg> for RegionKind {
    fn from(r: RegionArg) -> Self {
        match r {
            RegionArg::Near => RegionKind::NearField,
            RegionArg::Far => RegionKind::FarField,
            RegionArg::Transition => RegionKind::Transition,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    BothRandom,
    RxRandom,
}

/// Complex prefactor given as `re,im`, `mag∠phase` / `mag@phase` (phase in
/// radians) or a plain real number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaBar(pub Complex64);

impl FromStr for AlphaBar {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| format!("invalid number {t:?} in alpha-bar: {e}"))
        };
        let z = if let Some((m, p)) = s.split_once('∠').or_else(|| s.split_once('@')) {
            Complex64::from_polar(num(m)?, num(p)?)
        } else if let Some((re, im)) = s.split_once(',') {
            Complex64::new(num(re)?, num(im)?)
        } else {
            Complex64::new(num(s)?, 0.0)
        };
        if !(z.re.is_finite() && z.im.is_finite()) || z.norm() == 0.0 {
            return Err(format!("alpha-bar must be finite and nonzero, got {s:?}"));
        }
        Ok(AlphaBar(z))
    }
}

/// Grid resolution, `N` (square) or `NxM`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub nx: usize,
    pub ny: usize,
}

/// Fewest nodes per axis a grid may have.
pub const MIN_GRID: usize = 2;

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let dim = |t: &str| {
            let n = t
                .trim()
                .parse::<usize>()
                .map_err(|e| format!("invalid grid size {t:?}: {e}"))?;
            if n < MIN_GRID {
                return Err(format!(
                    "grid needs at least {MIN_GRID} nodes per axis, got {n}"
                ));
            }
            Ok(n)
        };
        match s.split_once(['x', 'X']) {
            Some((a, b)) => Ok(GridSpec {
                nx: dim(a)?,
                ny: dim(b)?,
            }),
            None => {
                let n = dim(s)?;
                Ok(GridSpec { nx: n, ny: n })
            }
        }
    }
}

fn positive_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("must be positive and finite, got {s}"))
    }
}

fn unit_interval_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if (-1.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("must lie in [-1, 1], got {s}"))
    }
}

fn tolerance(s: &str) -> Result<f64, String> {
    let v = positive_f64(s)?;
    if v < 1.0 {
        Ok(v)
    } else {
        Err(format!("tolerance must be below 1, got {s}"))
    }
}

fn sample_count(s: &str) -> Result<usize, String> {
    // Accepts scientific notation such as 1e6.
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v >= 1.0 && v.fract() == 0.0 && v <= usize::MAX as f64 {
        Ok(v as usize)
    } else {
        Err(format!("must be a positive integer, got {s}"))
    }
}

fn thread_count(s: &str) -> Result<usize, String> {
    let v: usize = s.parse().map_err(|e| format!("{e}"))?;
    if v == 0 {
        Err("thread count must be positive".into())
    } else {
        Ok(v)
    }
}

/// Comma-separated positive `kr` values.
#[derive(Debug, Clone, PartialEq)]
pub struct KrList(pub Vec<f64>);

impl FromStr for KrList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(',')
            .map(positive_f64)
            .collect::<Result<Vec<_>, _>>()
            .map(KrList)
    }
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Normalized distance kr.
    #[arg(long, global = true, default_value = "2", value_parser = positive_f64)]
    pub kr: f64,
    /// Channel prefactor magnitude/phase: `re,im`, `mag∠phase`, `mag@phase` or real.
    #[arg(long = "alpha-bar", global = true, default_value = "0.01")]
    pub alpha_bar: AlphaBar,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Monte-Carlo sample count.
    #[arg(long, global = true, default_value = "1000000", value_parser = sample_count)]
    pub samples: usize,
    /// Grid resolution, `N` or `NxM`.
    #[arg(long, global = true, default_value = "201")]
    pub grid: GridSpec,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads. Output does not depend on this value.
    #[arg(long, global = true, env = "DIPOLE_FADE_THREADS", value_parser = thread_count)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "near")]
    pub region: RegionArg,
    /// Orientation model for `scatter`.
    #[arg(long, global = true, value_enum, default_value = "both-random")]
    pub mode: ModeArg,
    /// dᵀo_tx for the conditional commands.
    #[arg(long, global = true, default_value = "0.3", value_parser = unit_interval_f64)]
    pub dot: f64,
    /// Relative quadrature tolerance.
    #[arg(long, global = true, default_value = "1e-6", value_parser = tolerance)]
    pub tol: f64,
    /// kr values of the misalignment-loss curves in `outage`.
    #[arg(long = "kr-list", global = true, default_value = "0.1,1,2,10,100")]
    pub kr_list: KrList,
    /// SNR_opt used by the outage-capacity table.
    #[arg(long = "snr-opt", global = true, default_value = "100", value_parser = positive_f64)]
    pub snr_opt: f64,
    /// Add the Rayleigh reference curves to `outage`.
    #[arg(long, global = true)]
    pub rayleigh: bool,
}

fn flag_name(v: impl ValueEnum) -> String {
    v.to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string()
}

impl RunConfig {
    /// `key=value` pairs recorded in the CSV header. Threads and the output
    /// path are excluded so that the file content is a function of the
    /// computation alone.
    pub fn provenance(&self, command: Command) -> Vec<(&'static str, String)> {
        let ab = self.alpha_bar.0;
        vec![
            ("command", command.name().to_string()),
            ("kr", format!("{:e}", self.kr)),
            ("alpha_bar", format!("{:e},{:e}", ab.re, ab.im)),
            ("seed", self.seed.to_string()),
            ("samples", self.samples.to_string()),
            ("grid", format!("{}x{}", self.grid.nx, self.grid.ny)),
            ("region", flag_name(self.region)),
            ("mode", flag_name(self.mode)),
            ("dot", format!("{:e}", self.dot)),
            ("tol", format!("{:e}", self.tol)),
            (
                "kr_list",
                self.kr_list
                    .0
                    .iter()
                    .map(|k| format!("{k:e}"))
                    .collect::<Vec<_>>()
                    .join(";"),
            ),
            ("snr_opt", format!("{:e}", self.snr_opt)),
            ("rayleigh", self.rayleigh.to_string()),
        ]
    }
}
