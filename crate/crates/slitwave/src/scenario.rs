//! Named presets bundling geometry, wave, scan window, and model selection
//! for the standard pattern runs.

use crate::analysis::PatternModel;
use crate::error::{Error, Result};
use crate::types::{ScreenScan, SlitGeometry, SlitLength, TruncationPolicy, WaveSpec};

/// HeNe wavelength used by the reference experiment [m].
pub const LAMBDA_HENE: f64 = 6.328e-7;
/// Slit-to-screen distance of the reference setup [m].
pub const R_SCREEN: f64 = 4.572;
/// Diffraction angle α of the reference setup [rad].
pub const ALPHA_REF: f64 = 0.001;

/// Default scan window: β ∈ [−0.01, 0.01] rad, 4001 samples (5 µrad grid).
pub const BETA_RANGE: f64 = 0.01;
pub const SCAN_SAMPLES: usize = 4001;

/// Which series a run computes by default.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelSelection {
    Quantum,
    Classical,
    Both,
}

impl ModelSelection {
    pub fn wants(&self, model: PatternModel) -> bool {
        matches!(
            (self, model),
            (ModelSelection::Both, _)
                | (ModelSelection::Quantum, PatternModel::Quantum)
                | (ModelSelection::Classical, PatternModel::Classical)
        )
    }

    pub fn label(&self) -> &'static str {
        match self {
            ModelSelection::Quantum => "quantum",
            ModelSelection::Classical => "classical",
            ModelSelection::Both => "both",
        }
    }
}

/// A fully specified preset run.
#[derive(Debug, Clone, Copy)]
pub struct Scenario {
    pub name: &'static str,
    pub summary: &'static str,
    pub lambda: f64,
    pub width: f64,
    pub length: SlitLength,
    pub thickness: f64,
    pub gap: f64,
    pub n_slits: u32,
    pub alpha: f64,
    pub r_screen: f64,
    pub beta_min: f64,
    pub beta_max: f64,
    pub samples: usize,
    pub model: ModelSelection,
}

impl Scenario {
    pub fn wave(&self) -> Result<WaveSpec> {
        WaveSpec::new(self.lambda)
    }

    pub fn geometry(&self) -> Result<SlitGeometry> {
        SlitGeometry::new(
            self.width,
            self.length,
            self.thickness,
            self.gap,
            self.n_slits,
        )
    }

    pub fn scan(&self) -> Result<ScreenScan> {
        ScreenScan::new(
            self.r_screen,
            self.alpha,
            self.beta_min,
            self.beta_max,
            self.samples,
        )
    }

    pub fn truncation(&self) -> TruncationPolicy {
        TruncationPolicy::default()
    }
}

#[allow(clippy::too_many_arguments)]
const fn preset(
    name: &'static str,
    summary: &'static str,
    lambda: f64,
    width: f64,
    length: SlitLength,
    thickness: f64,
    gap: f64,
    n_slits: u32,
    model: ModelSelection,
) -> Scenario {
    Scenario {
        name,
        summary,
        lambda,
        width,
        length,
        thickness,
        gap,
        n_slits,
        alpha: ALPHA_REF,
        r_screen: R_SCREEN,
        beta_min: -BETA_RANGE,
        beta_max: BETA_RANGE,
        samples: SCAN_SAMPLES,
        model,
    }
}

// Multi-slit gratings: a = 0.88e-4, pitch a + d = 3.52e-4, b = 3.52e-4,
// c' = 0.88e-4, N = 2..7.
const FIG4_WIDTH: f64 = 0.88e-4;
const FIG4_GAP: f64 = 2.64e-4;
const FIG4_LENGTH: f64 = 3.52e-4;
const FIG4_THICKNESS: f64 = 0.88e-4;

// Single-slit baseline: a = 1.76e-4, b = 4.0e-4, c' = 1.1e-6.
const FIG5_WIDTH: f64 = 1.76e-4;
const FIG5_LENGTH: f64 = 4.0e-4;
const FIG5_THICKNESS: f64 = 1.1e-6;

pub static SCENARIOS: &[Scenario] = &[
    preset(
        "fig4a",
        "two-slit grating vs classical formula",
        LAMBDA_HENE,
        FIG4_WIDTH,
        SlitLength::Finite(FIG4_LENGTH),
        FIG4_THICKNESS,
        FIG4_GAP,
        2,
        ModelSelection::Both,
    ),
    preset(
        "fig4b",
        "three-slit grating vs classical formula",
        LAMBDA_HENE,
        FIG4_WIDTH,
        SlitLength::Finite(FIG4_LENGTH),
        FIG4_THICKNESS,
        FIG4_GAP,
        3,
        ModelSelection::Both,
    ),
    preset(
        "fig4c",
        "four-slit grating vs classical formula",
        LAMBDA_HENE,
        FIG4_WIDTH,
        SlitLength::Finite(FIG4_LENGTH),
        FIG4_THICKNESS,
        FIG4_GAP,
        4,
        ModelSelection::Both,
    ),
    preset(
        "fig4d",
        "five-slit grating vs classical formula",
        LAMBDA_HENE,
        FIG4_WIDTH,
        SlitLength::Finite(FIG4_LENGTH),
        FIG4_THICKNESS,
        FIG4_GAP,
        5,
        ModelSelection::Both,
    ),
    preset(
        "fig4e",
        "six-slit grating vs classical formula",
        LAMBDA_HENE,
        FIG4_WIDTH,
        SlitLength::Finite(FIG4_LENGTH),
        FIG4_THICKNESS,
        FIG4_GAP,
        6,
        ModelSelection::Both,
    ),
    preset(
        "fig4f",
        "seven-slit grating vs classical formula",
        LAMBDA_HENE,
        FIG4_WIDTH,
        SlitLength::Finite(FIG4_LENGTH),
        FIG4_THICKNESS,
        FIG4_GAP,
        7,
        ModelSelection::Both,
    ),
    preset(
        "fig5",
        "single slit vs classical envelope",
        LAMBDA_HENE,
        FIG5_WIDTH,
        SlitLength::Finite(FIG5_LENGTH),
        FIG5_THICKNESS,
        0.0,
        1,
        ModelSelection::Both,
    ),
    preset(
        "fig6a",
        "single slit, width 5a",
        LAMBDA_HENE,
        5.0 * FIG5_WIDTH,
        SlitLength::Finite(FIG5_LENGTH),
        FIG5_THICKNESS,
        0.0,
        1,
        ModelSelection::Quantum,
    ),
    preset(
        "fig6b",
        "single slit, width 10a",
        LAMBDA_HENE,
        10.0 * FIG5_WIDTH,
        SlitLength::Finite(FIG5_LENGTH),
        FIG5_THICKNESS,
        0.0,
        1,
        ModelSelection::Quantum,
    ),
    preset(
        "fig6c",
        "single slit, width 20a",
        LAMBDA_HENE,
        20.0 * FIG5_WIDTH,
        SlitLength::Finite(FIG5_LENGTH),
        FIG5_THICKNESS,
        0.0,
        1,
        ModelSelection::Quantum,
    ),
    preset(
        "fig7a",
        "square aperture, side λ",
        LAMBDA_HENE,
        LAMBDA_HENE,
        SlitLength::Finite(LAMBDA_HENE),
        FIG5_THICKNESS,
        0.0,
        1,
        ModelSelection::Quantum,
    ),
    preset(
        "fig7b",
        "square aperture, side 3λ",
        LAMBDA_HENE,
        3.0 * LAMBDA_HENE,
        SlitLength::Finite(3.0 * LAMBDA_HENE),
        FIG5_THICKNESS,
        0.0,
        1,
        ModelSelection::Quantum,
    ),
    preset(
        "fig7c",
        "square aperture, side 5λ",
        LAMBDA_HENE,
        5.0 * LAMBDA_HENE,
        SlitLength::Finite(5.0 * LAMBDA_HENE),
        FIG5_THICKNESS,
        0.0,
        1,
        ModelSelection::Quantum,
    ),
    preset(
        "fig8",
        "subwavelength hole, side 0.1λ (no pattern)",
        LAMBDA_HENE,
        0.1 * LAMBDA_HENE,
        SlitLength::Finite(0.1 * LAMBDA_HENE),
        FIG5_THICKNESS,
        0.0,
        1,
        ModelSelection::Quantum,
    ),
    preset(
        "fig9a",
        "single slit, length 50·b0",
        LAMBDA_HENE,
        FIG5_WIDTH,
        SlitLength::Finite(50.0 * FIG5_LENGTH),
        FIG5_THICKNESS,
        0.0,
        1,
        ModelSelection::Quantum,
    ),
    preset(
        "fig9b",
        "single slit, length 70·b0",
        LAMBDA_HENE,
        FIG5_WIDTH,
        SlitLength::Finite(70.0 * FIG5_LENGTH),
        FIG5_THICKNESS,
        0.0,
        1,
        ModelSelection::Quantum,
    ),
    preset(
        "fig9c",
        "single slit, infinite length",
        LAMBDA_HENE,
        FIG5_WIDTH,
        SlitLength::Infinite,
        FIG5_THICKNESS,
        0.0,
        1,
        ModelSelection::Quantum,
    ),
    preset(
        "fig10a",
        "single slit, thickness 100·c0",
        LAMBDA_HENE,
        FIG5_WIDTH,
        SlitLength::Finite(FIG5_LENGTH),
        100.0 * FIG5_THICKNESS,
        0.0,
        1,
        ModelSelection::Quantum,
    ),
    preset(
        "fig10b",
        "single slit, thickness 1000·c0",
        LAMBDA_HENE,
        FIG5_WIDTH,
        SlitLength::Finite(FIG5_LENGTH),
        1000.0 * FIG5_THICKNESS,
        0.0,
        1,
        ModelSelection::Quantum,
    ),
    preset(
        "fig10c",
        "single slit, thickness 2000·c0",
        LAMBDA_HENE,
        FIG5_WIDTH,
        SlitLength::Finite(FIG5_LENGTH),
        2000.0 * FIG5_THICKNESS,
        0.0,
        1,
        ModelSelection::Quantum,
    ),
    preset(
        "fig10d",
        "single slit, thickness 3000·c0",
        LAMBDA_HENE,
        FIG5_WIDTH,
        SlitLength::Finite(FIG5_LENGTH),
        3000.0 * FIG5_THICKNESS,
        0.0,
        1,
        ModelSelection::Quantum,
    ),
    preset(
        "fig11a",
        "single slit at 10λ",
        10.0 * LAMBDA_HENE,
        FIG5_WIDTH,
        SlitLength::Finite(FIG5_LENGTH),
        FIG5_THICKNESS,
        0.0,
        1,
        ModelSelection::Quantum,
    ),
    preset(
        "fig11b",
        "single slit at 20λ",
        20.0 * LAMBDA_HENE,
        FIG5_WIDTH,
        SlitLength::Finite(FIG5_LENGTH),
        FIG5_THICKNESS,
        0.0,
        1,
        ModelSelection::Quantum,
    ),
    preset(
        "fig11c",
        "single slit at 50λ",
        50.0 * LAMBDA_HENE,
        FIG5_WIDTH,
        SlitLength::Finite(FIG5_LENGTH),
        FIG5_THICKNESS,
        0.0,
        1,
        ModelSelection::Quantum,
    ),
    preset(
        "fig12a",
        "double slit, thickness c0",
        LAMBDA_HENE,
        FIG4_WIDTH,
        SlitLength::Finite(FIG4_LENGTH),
        FIG4_THICKNESS,
        FIG4_GAP,
        2,
        ModelSelection::Quantum,
    ),
    preset(
        "fig12b",
        "double slit, thickness 10·c0",
        LAMBDA_HENE,
        FIG4_WIDTH,
        SlitLength::Finite(FIG4_LENGTH),
        10.0 * FIG4_THICKNESS,
        FIG4_GAP,
        2,
        ModelSelection::Quantum,
    ),
    preset(
        "fig12c",
        "double slit, thickness 50·c0",
        LAMBDA_HENE,
        FIG4_WIDTH,
        SlitLength::Finite(FIG4_LENGTH),
        50.0 * FIG4_THICKNESS,
        FIG4_GAP,
        2,
        ModelSelection::Quantum,
    ),
];

/// Look up a preset by name.
pub fn by_name(name: &str) -> Result<&'static Scenario> {
    SCENARIOS
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::UnknownScenario(name.to_string()))
}
