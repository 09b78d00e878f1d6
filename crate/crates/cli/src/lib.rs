//! Command-line front end for `divisor-core`.
//!
//! All numeric output is exact: integers, or reduced fractions `p/q`.
//! [`run`] writes to any sink so the commands can be driven in-process.

pub mod verify;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use divisor_core::divmatrix::{
    build_divisor_matrix, build_inverse_matrix, lambert_coefficients, sigma0, IntMatrix,
};
use divisor_core::exactnum::format_rational;
use divisor_core::parabolas::{ParabolaFamily, StepAudit};
use divisor_core::render::{render_figure, render_matrix_heatmap, FigureSpec, Style};
use divisor_core::series::{alpha_traced, Indicator};
use serde::Serialize;

use verify::{Suite, VerifyConfig};

#[derive(Debug, Parser)]
#[command(
    name = "divisors",
    version,
    about = "Exact analytic divisor indicators and identities"
)]
pub struct Cli {
    /// Print intermediate exact values where available.
    #[arg(long, short, global = true)]
    pub verbose: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

/// Size given either positionally or as `--n`.
#[derive(Debug, Args)]
pub struct Size {
    #[arg(value_name = "N")]
    positional: Option<u64>,
    #[arg(long = "n", value_name = "N", conflicts_with = "positional")]
    flag: Option<u64>,
}

impl Size {
    fn resolve(&self, default: Option<u64>) -> Result<u64> {
        let n = self
            .positional
            .or(self.flag)
            .or(default)
            .context("a size N is required")?;
        if n == 0 {
            bail!("N must be at least 1");
        }
        Ok(n)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate alpha_nk: 1 if k divides n, else 0.
    Alpha {
        n: u64,
        k: u64,
        /// Generator name, or oracle / exp_scaled / gamma_mod / delta_sum.
        #[arg(long = "gen", default_value = "exp")]
        generator: String,
    },
    /// Write the divisor matrix, or its Möbius inverse with --invert.
    Matrix {
        #[command(flatten)]
        size: Size,
        #[arg(long = "gen", default_value = "oracle")]
        generator: String,
        #[arg(long)]
        invert: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Number of divisors of n, summed from alpha_nk.
    Sigma0 {
        #[command(flatten)]
        size: Size,
        #[arg(long = "gen", default_value = "oracle")]
        generator: String,
    },
    /// Coefficients of sum_k x^k / (1 - x^k) up to x^N.
    Lambert {
        #[command(flatten)]
        size: Size,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Index set of a parabola family, optionally with the step audit.
    Parabolas {
        #[arg(long)]
        mu: u64,
        #[arg(long)]
        nu: u64,
        #[arg(long = "n")]
        n: u64,
        #[arg(long)]
        audit: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a figure as SVG with CSV and JSON sidecars.
    Render(RenderArgs),
    /// Run the invariant suite; exits 1 if any assertive check fails.
    Verify {
        #[command(flatten)]
        size: Size,
        /// Comma-separated suites (default: all).
        #[arg(long, value_delimiter = ',')]
        suite: Vec<Suite>,
        /// Largest size for the determinant and Redheffer sweeps.
        #[arg(long, default_value_t = 50)]
        det_max: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureName {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    pub figure: FigureName,
    /// Largest n (fig1-fig4).
    #[arg(long = "n")]
    pub n: Option<u64>,
    /// Centre of the n window (fig5).
    #[arg(long)]
    pub center: Option<u64>,
    /// Half-width of the n window (fig5).
    #[arg(long)]
    pub width: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    pub mu: Vec<u64>,
    #[arg(long, value_delimiter = ',')]
    pub nu: Vec<u64>,
    #[arg(long)]
    pub i_start: Option<u64>,
    #[arg(long)]
    pub i_count: Option<u64>,
    /// Highest ray drawn (fig2).
    #[arg(long)]
    pub j_max: Option<u64>,
    /// Sampling step of parabola guide curves.
    #[arg(long)]
    pub step: Option<f64>,
    #[arg(long)]
    pub no_primes: bool,
    #[arg(long)]
    pub positive_color: Option<String>,
    #[arg(long)]
    pub negative_color: Option<String>,
    #[arg(long, value_enum, default_value = "svg")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Process exit status of a completed command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    VerificationFailed,
}

fn parse_indicator(name: &str) -> Result<Indicator> {
    name.parse::<Indicator>().map_err(anyhow::Error::from)
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => out.write_all(text.as_bytes()).map_err(Into::into),
    }
}

fn matrix_text(m: &IntMatrix, format: Format, title: &str) -> Result<String> {
    Ok(match format {
        Format::Csv => m.to_csv()?,
        Format::Json => m.to_json()? + "\n",
        Format::Svg => render_matrix_heatmap(m, title, &Style::default()),
    })
}

#[derive(Serialize)]
struct LambertJson<'a> {
    n: usize,
    coefficients: &'a [u64],
}

#[derive(Serialize)]
struct ParabolaJson {
    mu: u64,
    nu: u64,
    delta: u64,
    #[serde(rename = "N")]
    n: u64,
    index_set: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    audit: Option<StepAudit>,
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Outcome> {
    match &cli.command {
        Command::Alpha { n, k, generator } => {
            let source = parse_indicator(generator)?;
            if *k > *n {
                bail!("k = {k} exceeds n = {n}: no divisor can exceed the number");
            }
            match source {
                Indicator::Series(g) => {
                    let trace = alpha_traced(g, *n, *k)?;
                    writeln!(out, "{}", trace.value)?;
                    if cli.verbose {
                        writeln!(
                            out,
                            "derivative: {}",
                            format_rational(&trace.raw_derivative)
                        )?;
                        match &trace.normalization {
                            Some(f) => writeln!(out, "normalization: {}", format_rational(f))?,
                            None => writeln!(out, "normalization: none (k does not divide n)")?,
                        }
                    }
                }
                other => writeln!(out, "{}", other.evaluate(*n, *k)?)?,
            }
        }
        Command::Matrix {
            size,
            generator,
            invert,
            format,
            out: path,
        } => {
            let dim = size.resolve(None)? as usize;
            let text = if *invert {
                let b = build_inverse_matrix(dim)?;
                matrix_text(b.matrix(), *format, &format!("Inverse matrix, N = {dim}"))?
            } else {
                let a = build_divisor_matrix(dim, parse_indicator(generator)?)?;
                matrix_text(a.matrix(), *format, &format!("Divisor matrix, N = {dim}"))?
            };
            emit(out, path.as_deref(), &text)?;
        }
        Command::Sigma0 { size, generator } => {
            let n = size.resolve(None)?;
            writeln!(out, "{}", sigma0(n, parse_indicator(generator)?)?)?;
        }
        Command::Lambert {
            size,
            format,
            out: path,
        } => {
            let n = size.resolve(None)? as usize;
            let coeffs = lambert_coefficients(n)?;
            let text = match format {
                Format::Csv => {
                    let cells: Vec<String> = coeffs.iter().map(u64::to_string).collect();
                    cells.join(",") + "\n"
                }
                Format::Json => {
                    serde_json::to_string(&LambertJson {
                        n,
                        coefficients: &coeffs,
                    })? + "\n"
                }
                Format::Svg => bail!("lambert supports csv or json output"),
            };
            emit(out, path.as_deref(), &text)?;
        }
        Command::Parabolas {
            mu,
            nu,
            n,
            audit,
            out: path,
        } => {
            if *n == 0 {
                bail!("N must be at least 1");
            }
            let fam = ParabolaFamily::new(*mu, *nu)?;
            let doc = ParabolaJson {
                mu: *mu,
                nu: *nu,
                delta: fam.delta(),
                n: *n,
                index_set: fam.index_set(*n).into_iter().collect(),
                audit: if *audit {
                    Some(fam.audit_step_claim(*n)?)
                } else {
                    None
                },
            };
            emit(out, path.as_deref(), &(serde_json::to_string(&doc)? + "\n"))?;
        }
        Command::Render(args) => render(args, out)?,
        Command::Verify {
            size,
            suite,
            det_max,
            format,
            out: path,
        } => {
            let n = size.resolve(Some(100))?;
            let suites: Vec<Suite> = if suite.is_empty() {
                Suite::ALL.to_vec()
            } else {
                suite.clone()
            };
            let config = VerifyConfig {
                det_max: *det_max,
                ..VerifyConfig::new(n)
            };
            let report = verify::run(config, &suites);
            let text = match format {
                ReportFormat::Json => serde_json::to_string_pretty(&report)? + "\n",
                ReportFormat::Text => report.to_string(),
            };
            emit(out, path.as_deref(), &text)?;
            if !report.passed() {
                return Ok(Outcome::VerificationFailed);
            }
        }
    }
    Ok(Outcome::Success)
}

fn figure_spec(args: &RenderArgs) -> Result<FigureSpec> {
    let window_only = args.center.is_some() || args.width.is_some();
    let parabola_flags = !args.mu.is_empty()
        || !args.nu.is_empty()
        || args.i_start.is_some()
        || args.i_count.is_some()
        || args.step.is_some();
    let or = |v: &[u64], default: &[u64]| {
        if v.is_empty() {
            default.to_vec()
        } else {
            v.to_vec()
        }
    };
    let mut spec = match args.figure {
        FigureName::Fig1 | FigureName::Fig2 => {
            if window_only || parabola_flags {
                bail!("--center/--width/--mu/--nu/--i-*/--step apply to parabola figures only");
            }
            if args.figure == FigureName::Fig1 {
                if args.j_max.is_some() {
                    bail!("--j-max applies to fig2 only");
                }
                FigureSpec::matrix_heatmap(args.n.unwrap_or(50))
            } else {
                let mut spec = FigureSpec::ray_diagram(args.n.unwrap_or(20));
                spec.j_max = args.j_max;
                spec
            }
        }
        FigureName::Fig3 | FigureName::Fig4 => {
            if window_only || args.j_max.is_some() {
                bail!("--center/--width apply to fig5 and --j-max to fig2");
            }
            if args.figure == FigureName::Fig3 {
                FigureSpec::parabola_families(
                    args.n.unwrap_or(60),
                    or(&args.mu, &[1, 2, 3]),
                    or(&args.nu, &[1, 2, 3]),
                    args.i_count.unwrap_or(8),
                )
            } else {
                FigureSpec::parabola_window(
                    1,
                    args.n.unwrap_or(99),
                    or(&args.mu, &[1]),
                    or(&args.nu, &[1, 2, 3, 4]),
                    args.i_count.unwrap_or(50),
                )
            }
        }
        FigureName::Fig5 => {
            if args.n.is_some() || args.j_max.is_some() {
                bail!("fig5 takes --center/--width instead of --n; --j-max applies to fig2");
            }
            let center = args.center.unwrap_or(740);
            let width = args.width.unwrap_or(20);
            if center == 0 {
                bail!("--center must be at least 1");
            }
            FigureSpec::parabola_window(
                center.saturating_sub(width).max(1),
                center + width,
                or(&args.mu, &[1]),
                or(&args.nu, &[1, 2, 3]),
                args.i_count.unwrap_or(5),
            )
        }
    };
    spec.i_start = args.i_start;
    if let Some(step) = args.step {
        spec.curve_step = step;
    }
    if args.no_primes {
        spec.mark_primes = false;
    }
    spec.validate()?;
    Ok(spec)
}

fn sibling(base: &Path, suffix: &str, extension: &str) -> PathBuf {
    let stem = base
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "figure".into());
    base.with_file_name(format!("{stem}{suffix}.{extension}"))
}

fn render(args: &RenderArgs, out: &mut dyn Write) -> Result<()> {
    if args.format != Format::Svg {
        bail!("render writes SVG documents (CSV and JSON sidecars are written alongside)");
    }
    let spec = figure_spec(args)?;
    let mut style = Style::default();
    if let Some(c) = &args.positive_color {
        style.positive = c.clone();
    }
    if let Some(c) = &args.negative_color {
        style.negative = c.clone();
    }
    let figures = render_figure(&spec, &style)?;
    let default_name = format!("{:?}.svg", args.figure).to_lowercase();
    let base = args
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(default_name));
    for (index, fig) in figures.iter().enumerate() {
        let suffix = if index == 0 {
            String::new()
        } else {
            format!("-{}", fig.name)
        };
        let svg_path = sibling(&base, &suffix, "svg");
        let csv_path = sibling(&base, &suffix, "csv");
        let json_path = sibling(&base, &suffix, "json");
        for (path, text) in [
            (&svg_path, fig.svg.clone()),
            (&csv_path, fig.data.points_csv()?),
            (&json_path, fig.data.to_json()? + "\n"),
        ] {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
            writeln!(out, "{}", path.display())?;
        }
    }
    Ok(())
}
