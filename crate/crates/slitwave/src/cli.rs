//! Command-line front end: preset scenarios or free-form parameters in,
//! CSV/JSON pattern data and analysis out.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use crate::analysis::{
    compare_patterns, find_extrema, missing_orders, scan_pattern, PatternModel, PatternSeries,
    DEFAULT_MISSING_ORDER_THRESHOLD, DEFAULT_PROMINENCE_FLOOR,
};
use crate::error::{Error, Result};
use crate::output::{render_csv, render_json, Normalize, OutputFormat, RunOutput, SeriesAnalysis};
use crate::scenario::{self, ModelSelection};
use crate::types::{
    PolarizationAmplitude, ScreenScan, SlitGeometry, SlitLength, TruncationPolicy, WaveSpec,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Quantum,
    Classical,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormalizeArg {
    Peak,
    None,
}

/// Slit diffraction patterns from the slit-mode/Kirchhoff model and the
/// classical grating formula.
#[derive(Debug, Parser)]
#[command(name = "slitwave", version, about)]
pub struct Cli {
    /// Preset scenario name (fig4a..fig4f, fig5, fig6a..c, fig7a..c, fig8,
    /// fig9a..c, fig10a..d, fig11a..c, fig12a..c)
    #[arg(long)]
    pub scenario: Option<String>,

    /// Optional key=value config file mirroring the flags; flags override it
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Vacuum wavelength [m]
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,

    /// Slit width a [m]
    #[arg(long = "slit-width", allow_negative_numbers = true)]
    pub slit_width: Option<f64>,

    /// Slit length b [m], or "inf"
    #[arg(long = "slit-length")]
    pub slit_length: Option<String>,

    /// Slit thickness c' [m]
    #[arg(long, allow_negative_numbers = true)]
    pub thickness: Option<f64>,

    /// Edge-to-edge gap d between slits [m]
    #[arg(long, allow_negative_numbers = true)]
    pub gap: Option<f64>,

    /// Number of slits N
    #[arg(long)]
    pub slits: Option<u32>,

    /// Fixed diffraction angle alpha [rad]
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,

    /// Scan start [rad]
    #[arg(long = "beta-min", allow_negative_numbers = true)]
    pub beta_min: Option<f64>,

    /// Scan end [rad]
    #[arg(long = "beta-max", allow_negative_numbers = true)]
    pub beta_max: Option<f64>,

    /// Number of scan samples
    #[arg(long)]
    pub samples: Option<usize>,

    /// Cap on the mode indices m and n
    #[arg(long = "modes-max")]
    pub modes_max: Option<u32>,

    /// Relative tail tolerance for mode admission
    #[arg(long = "tail-tol", allow_negative_numbers = true)]
    pub tail_tol: Option<f64>,

    /// Which model(s) to evaluate
    #[arg(long, value_enum)]
    pub model: Option<ModelArg>,

    /// Output format
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,

    /// Output path; stdout when omitted
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Peak-normalize emitted intensities
    #[arg(long, value_enum)]
    pub normalize: Option<NormalizeArg>,
}

/// Fully resolved run parameters: defaults, then scenario, then config file,
/// then flags.
#[derive(Debug, Clone)]
struct Settings {
    scenario: Option<String>,
    lambda: f64,
    width: f64,
    length: SlitLength,
    thickness: f64,
    gap: f64,
    slits: u32,
    alpha: f64,
    beta_min: f64,
    beta_max: f64,
    samples: usize,
    modes_max: u32,
    tail_tol: f64,
    model: ModelSelection,
    format: OutputFormat,
    normalize: Normalize,
    output: Option<PathBuf>,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            scenario: None,
            lambda: scenario::LAMBDA_HENE,
            width: 1.76e-4,
            length: SlitLength::Finite(4.0e-4),
            thickness: 1.1e-6,
            gap: 0.0,
            slits: 1,
            alpha: scenario::ALPHA_REF,
            beta_min: -scenario::BETA_RANGE,
            beta_max: scenario::BETA_RANGE,
            samples: scenario::SCAN_SAMPLES,
            modes_max: 2000,
            tail_tol: 1e-9,
            model: ModelSelection::Both,
            format: OutputFormat::Csv,
            normalize: Normalize::None,
            output: None,
        }
    }
}

pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    init_thread_pool();
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

/// SLITWAVE_THREADS caps the rayon pool; unset or invalid leaves the default.
fn init_thread_pool() {
    if let Ok(raw) = std::env::var("SLITWAVE_THREADS") {
        match raw.parse::<usize>() {
            Ok(n) if n >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
            _ => eprintln!("warning: ignoring invalid SLITWAVE_THREADS={raw}"),
        }
    }
}

pub fn run(cli: Cli) -> Result<()> {
    let settings = resolve(&cli)?;
    let wave = WaveSpec::new(settings.lambda)?;
    let geometry = SlitGeometry::new(
        settings.width,
        settings.length,
        settings.thickness,
        settings.gap,
        settings.slits,
    )?;
    let scan = ScreenScan::new(
        scenario::R_SCREEN,
        settings.alpha,
        settings.beta_min,
        settings.beta_max,
        settings.samples,
    )?;
    let trunc = TruncationPolicy::new(settings.modes_max, settings.tail_tol)?;
    let amplitude = PolarizationAmplitude::default();

    let quantum = settings
        .model
        .wants(PatternModel::Quantum)
        .then(|| {
            scan_pattern(
                PatternModel::Quantum,
                &geometry,
                &wave,
                &amplitude,
                &scan,
                &trunc,
            )
        })
        .transpose()?;
    let classical = settings
        .model
        .wants(PatternModel::Classical)
        .then(|| {
            scan_pattern(
                PatternModel::Classical,
                &geometry,
                &wave,
                &amplitude,
                &scan,
                &trunc,
            )
        })
        .transpose()?;

    let (quantum_analysis, classical_analysis, agreement) = if settings.format == OutputFormat::Json
    {
        let qa = quantum.as_ref().map(analyze).transpose()?;
        let ca = classical.as_ref().map(analyze).transpose()?;
        let agree = match (&quantum, &classical) {
            (Some(q), Some(c)) => Some(compare_patterns(q, c)?),
            _ => None,
        };
        (qa, ca, agree)
    } else {
        (None, None, None)
    };

    let run_output = RunOutput {
        scenario: settings.scenario.clone(),
        model: settings.model,
        normalize: settings.normalize,
        beta_min: settings.beta_min,
        beta_max: settings.beta_max,
        samples: settings.samples,
        quantum,
        classical,
        quantum_analysis,
        classical_analysis,
        agreement,
    };

    let rendered = match settings.format {
        OutputFormat::Csv => render_csv(&run_output),
        OutputFormat::Json => render_json(&run_output),
    };
    match &settings.output {
        Some(path) => {
            std::fs::write(path, rendered)?;
            eprintln!(
                "wrote {} ({} samples, {})",
                path.display(),
                settings.samples,
                settings.format.label()
            );
        }
        None => print!("{rendered}"),
    }
    Ok(())
}

fn analyze(series: &PatternSeries) -> Result<SeriesAnalysis> {
    let report = find_extrema(series, DEFAULT_PROMINENCE_FLOOR)?;
    let missing = if series.params.n_slits >= 2 {
        match missing_orders(series, DEFAULT_MISSING_ORDER_THRESHOLD) {
            Ok(orders) => Some(orders),
            Err(Error::NoOrdersInRange) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    Ok(SeriesAnalysis {
        peak_intensity: series.peak_intensity(),
        report,
        missing_orders: missing,
    })
}

fn resolve(cli: &Cli) -> Result<Settings> {
    let mut settings = Settings::default();

    let config = match &cli.config {
        Some(path) => parse_config(&std::fs::read_to_string(path)?)?,
        None => BTreeMap::new(),
    };

    // Scenario first (flag wins over config), then config values, then flags.
    let scenario_name = cli
        .scenario
        .clone()
        .or_else(|| config.get("scenario").cloned());
    if let Some(name) = &scenario_name {
        let preset = scenario::by_name(name)?;
        settings.scenario = Some(preset.name.to_string());
        settings.lambda = preset.lambda;
        settings.width = preset.width;
        settings.length = preset.length;
        settings.thickness = preset.thickness;
        settings.gap = preset.gap;
        settings.slits = preset.n_slits;
        settings.alpha = preset.alpha;
        settings.beta_min = preset.beta_min;
        settings.beta_max = preset.beta_max;
        settings.samples = preset.samples;
        settings.model = preset.model;
    }

    let mut overridden: Vec<&str> = Vec::new();
    apply_config(&mut settings, &config, &mut overridden)?;
    apply_flags(&mut settings, cli, &mut overridden)?;
    if settings.scenario.is_some() && !overridden.is_empty() {
        eprintln!(
            "note: overriding scenario parameter(s): {}",
            overridden.join(", ")
        );
    }
    Ok(settings)
}

fn note_override(name: &'static str, overridden: &mut Vec<&'static str>) {
    if !overridden.contains(&name) {
        overridden.push(name);
    }
}

fn apply_flags(
    settings: &mut Settings,
    cli: &Cli,
    overridden: &mut Vec<&'static str>,
) -> Result<()> {
    if let Some(v) = cli.lambda {
        settings.lambda = v;
        note_override("lambda", overridden);
    }
    if let Some(v) = cli.slit_width {
        settings.width = v;
        note_override("slit-width", overridden);
    }
    if let Some(v) = &cli.slit_length {
        settings.length = parse_length(v)?;
        note_override("slit-length", overridden);
    }
    if let Some(v) = cli.thickness {
        settings.thickness = v;
        note_override("thickness", overridden);
    }
    if let Some(v) = cli.gap {
        settings.gap = v;
        note_override("gap", overridden);
    }
    if let Some(v) = cli.slits {
        settings.slits = v;
        note_override("slits", overridden);
    }
    if let Some(v) = cli.alpha {
        settings.alpha = v;
        note_override("alpha", overridden);
    }
    if let Some(v) = cli.beta_min {
        settings.beta_min = v;
        note_override("beta-min", overridden);
    }
    if let Some(v) = cli.beta_max {
        settings.beta_max = v;
        note_override("beta-max", overridden);
    }
    if let Some(v) = cli.samples {
        settings.samples = v;
        note_override("samples", overridden);
    }
    if let Some(v) = cli.modes_max {
        settings.modes_max = v;
    }
    if let Some(v) = cli.tail_tol {
        settings.tail_tol = v;
    }
    if let Some(v) = cli.model {
        settings.model = match v {
            ModelArg::Quantum => ModelSelection::Quantum,
            ModelArg::Classical => ModelSelection::Classical,
            ModelArg::Both => ModelSelection::Both,
        };
    }
    if let Some(v) = cli.format {
        settings.format = match v {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        };
    }
    if let Some(v) = cli.normalize {
        settings.normalize = match v {
            NormalizeArg::Peak => Normalize::Peak,
            NormalizeArg::None => Normalize::None,
        };
    }
    if let Some(v) = &cli.output {
        settings.output = Some(v.clone());
    }
    Ok(())
}

fn parse_length(raw: &str) -> Result<SlitLength> {
    if raw.eq_ignore_ascii_case("inf") || raw.eq_ignore_ascii_case("infinite") {
        return Ok(SlitLength::Infinite);
    }
    raw.parse::<f64>()
        .map(SlitLength::Finite)
        .map_err(|_| Error::NonPositiveLength)
}

fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Config {
                line: lineno + 1,
                message: format!("expected key=value, got '{line}'"),
            });
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn apply_config(
    settings: &mut Settings,
    config: &BTreeMap<String, String>,
    overridden: &mut Vec<&'static str>,
) -> Result<()> {
    for (key, value) in config {
        let bad = |message: String| Error::Config { line: 0, message };
        let parse_f64 = || {
            value
                .parse::<f64>()
                .map_err(|_| bad(format!("invalid number for {key}: '{value}'")))
        };
        match key.as_str() {
            "scenario" => {} // handled during resolution
            "lambda" => {
                settings.lambda = parse_f64()?;
                overridden.push("lambda");
            }
            "slit-width" => {
                settings.width = parse_f64()?;
                overridden.push("slit-width");
            }
            "slit-length" => {
                settings.length = parse_length(value)?;
                overridden.push("slit-length");
            }
            "thickness" => {
                settings.thickness = parse_f64()?;
                overridden.push("thickness");
            }
            "gap" => {
                settings.gap = parse_f64()?;
                overridden.push("gap");
            }
            "slits" => {
                settings.slits = value
                    .parse()
                    .map_err(|_| bad(format!("invalid slit count: '{value}'")))?;
                overridden.push("slits");
            }
            "alpha" => {
                settings.alpha = parse_f64()?;
                overridden.push("alpha");
            }
            "beta-min" => {
                settings.beta_min = parse_f64()?;
                overridden.push("beta-min");
            }
            "beta-max" => {
                settings.beta_max = parse_f64()?;
                overridden.push("beta-max");
            }
            "samples" => {
                settings.samples = value
                    .parse()
                    .map_err(|_| bad(format!("invalid sample count: '{value}'")))?;
                overridden.push("samples");
            }
            "modes-max" => {
                settings.modes_max = value
                    .parse()
                    .map_err(|_| bad(format!("invalid mode cap: '{value}'")))?;
            }
            "tail-tol" => {
                settings.tail_tol = parse_f64()?;
            }
            "model" => {
                settings.model = match value.as_str() {
                    "quantum" => ModelSelection::Quantum,
                    "classical" => ModelSelection::Classical,
                    "both" => ModelSelection::Both,
                    other => return Err(bad(format!("invalid model: '{other}'"))),
                };
            }
            "format" => {
                settings.format = match value.as_str() {
                    "csv" => OutputFormat::Csv,
                    "json" => OutputFormat::Json,
                    other => return Err(bad(format!("invalid format: '{other}'"))),
                };
            }
            "normalize" => {
                settings.normalize = match value.as_str() {
                    "peak" => Normalize::Peak,
                    "none" => Normalize::None,
                    other => return Err(bad(format!("invalid normalize mode: '{other}'"))),
                };
            }
            "output" => settings.output = Some(PathBuf::from(value)),
            other => {
                return Err(bad(format!("unknown config key '{other}'")));
            }
        }
    }
    Ok(())
}
