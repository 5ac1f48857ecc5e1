//! The boundary-value problem inside the slit.
//!
//! With hard walls the field separates into odd sine harmonics across the
//! slit cross-section. Each mode (2m+1, 2n+1) carries the axial wavenumber
//!
//! ```text
//! kz² = 4π²/λ² − ((2n+1)π/b)² − ((2m+1)π/a)²
//! ```
//!
//! (the b term drops for an infinitely long slit). Positive radicand means a
//! propagating mode; negative means an evanescent one that decays as
//! e^{−κ c'} through the slit thickness — the mechanism behind both the
//! thickness dependence of the patterns and the null pattern of a
//! subwavelength hole.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::types::{PolarizationAmplitude, SlitGeometry, SlitLength, TruncationPolicy, WaveSpec};

/// Absolute floor on |D|·|e^{i kz c'}|. Modes below it are dropped, so an
/// all-evanescent slit with a thick wall yields an exactly empty expansion
/// instead of denormal noise.
pub const MODE_MEASURE_FLOOR: f64 = 1e-300;

/// Mode index pair. The realized harmonics are the odd numbers 2m+1
/// (y direction, width a) and 2n+1 (x direction, length b); even harmonics
/// carry zero coefficient. `n` is ignored when the slit length is infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModeIndex {
    pub m: u32,
    pub n: u32,
}

impl ModeIndex {
    pub fn new(m: u32, n: u32) -> Self {
        Self { m, n }
    }

    /// Odd harmonic 2m+1 across the slit width.
    pub fn harmonic_y(&self) -> u32 {
        2 * self.m + 1
    }

    /// Odd harmonic 2n+1 along the slit length.
    pub fn harmonic_x(&self) -> u32 {
        2 * self.n + 1
    }
}

/// Propagation class of a slit mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeClass {
    /// Real kz ≥ 0. Exact cutoff (kz = 0) is reported here: it neither
    /// decays nor accumulates phase.
    Propagating,
    /// Purely imaginary kz = iκ with κ > 0, so e^{i kz z} decays for z > 0.
    Evanescent,
}

/// Complex axial wavenumber of one mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxialWavenumber {
    pub kz: Complex64,
    pub class: ModeClass,
}

impl AxialWavenumber {
    pub fn is_propagating(&self) -> bool {
        self.class == ModeClass::Propagating
    }
}

/// Axial wavenumber on the physical branch: the real positive root when the
/// radicand is positive, +i√|radicand| when negative (so thickness always
/// attenuates), exactly zero at cutoff.
pub fn axial_wavenumber(
    mode: ModeIndex,
    geometry: &SlitGeometry,
    wave: &WaveSpec,
) -> AxialWavenumber {
    let k = wave.wavenumber();
    let mu_y = mode.harmonic_y() as f64 * PI / geometry.width();
    let mut radicand = k * k - mu_y * mu_y;
    if let SlitLength::Finite(b) = geometry.length() {
        let mu_x = mode.harmonic_x() as f64 * PI / b;
        radicand -= mu_x * mu_x;
    }
    if radicand > 0.0 {
        AxialWavenumber {
            kz: Complex64::new(radicand.sqrt(), 0.0),
            class: ModeClass::Propagating,
        }
    } else if radicand < 0.0 {
        AxialWavenumber {
            kz: Complex64::new(0.0, (-radicand).sqrt()),
            class: ModeClass::Evanescent,
        }
    } else {
        AxialWavenumber {
            kz: Complex64::new(0.0, 0.0),
            class: ModeClass::Propagating,
        }
    }
}

/// Fourier coefficient of a mode, per polarization component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeCoefficient {
    pub d: [Complex64; 3],
}

/// Coefficient for raw harmonic numbers (p across the width, q along the
/// length): 16/(p·q·π²) when both are odd, zero otherwise.
pub fn harmonic_coefficient(p: u32, q: u32) -> f64 {
    if p.is_multiple_of(2) || q.is_multiple_of(2) {
        return 0.0;
    }
    16.0 / (p as f64 * q as f64 * PI * PI)
}

/// Scalar coefficient 16/((2m+1)(2n+1)π²) of the reindexed double sum.
pub fn coefficient_scalar(mode: ModeIndex) -> f64 {
    16.0 / (mode.harmonic_y() as f64 * mode.harmonic_x() as f64 * PI * PI)
}

/// Scalar coefficient 4/((2m+1)π) of the single sum for infinite length.
pub fn coefficient_scalar_infinite(m: u32) -> f64 {
    4.0 / ((2 * m + 1) as f64 * PI)
}

/// Mode coefficient D_{mn,j} = 16 A_j / ((2m+1)(2n+1)π²).
pub fn mode_coefficient(mode: ModeIndex, amplitude: &PolarizationAmplitude) -> ModeCoefficient {
    let scale = coefficient_scalar(mode);
    let a = amplitude.components();
    ModeCoefficient {
        d: [a[0] * scale, a[1] * scale, a[2] * scale],
    }
}

/// Per-mode transmission through the slit thickness, e^{i kz c'}: unit
/// modulus for propagating modes, e^{−κ c'} for evanescent ones.
pub fn transmission_factor(mode: ModeIndex, geometry: &SlitGeometry, wave: &WaveSpec) -> Complex64 {
    let kz = axial_wavenumber(mode, geometry, wave).kz;
    (Complex64::i() * kz * geometry.thickness()).exp()
}

/// Shared admission rule for mode sums: relative tail threshold against the
/// fundamental mode's |D|·|transmission|, an absolute floor, and the
/// guarantee that propagating modes within the index cap always enter.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ModeFilter {
    pub max_index: u32,
    rel_cutoff: f64,
}

impl ModeFilter {
    pub fn new(geometry: &SlitGeometry, wave: &WaveSpec, trunc: &TruncationPolicy) -> Self {
        let fundamental = mode_measure(ModeIndex::new(0, 0), geometry, wave);
        Self {
            max_index: trunc.max_mode_index(),
            rel_cutoff: trunc.tail_tolerance() * fundamental,
        }
    }

    pub fn admits(&self, measure: f64, class: ModeClass) -> bool {
        measure >= MODE_MEASURE_FLOOR
            && (class == ModeClass::Propagating || measure >= self.rel_cutoff)
    }
}

/// |D|·|e^{i kz c'}| for unit amplitude; the quantity the tail filter acts on.
pub(crate) fn mode_measure(mode: ModeIndex, geometry: &SlitGeometry, wave: &WaveSpec) -> f64 {
    let coeff = match geometry.length() {
        SlitLength::Finite(_) => coefficient_scalar(mode),
        SlitLength::Infinite => coefficient_scalar_infinite(mode.m),
    };
    coeff * transmission_factor(mode, geometry, wave).norm()
}

/// Enumerate the modes admitted by the truncation policy, in lexicographic
/// (m, n) order. All propagating modes within the index cap are included;
/// evanescent modes are kept only while their coefficient-weighted
/// transmission stays above the tail threshold. For an infinite slit length
/// only m runs (entries carry n = 0).
pub fn enumerate_modes(
    geometry: &SlitGeometry,
    wave: &WaveSpec,
    trunc: &TruncationPolicy,
) -> Vec<(ModeIndex, AxialWavenumber)> {
    let filter = ModeFilter::new(geometry, wave, trunc);
    let mut modes = Vec::new();
    match geometry.length() {
        SlitLength::Infinite => {
            for m in 0..=filter.max_index {
                let mode = ModeIndex::new(m, 0);
                let axial = axial_wavenumber(mode, geometry, wave);
                let measure = mode_measure(mode, geometry, wave);
                if filter.admits(measure, axial.class) {
                    modes.push((mode, axial));
                } else if axial.class == ModeClass::Evanescent {
                    // κ grows and the coefficient shrinks with m: nothing
                    // further can pass.
                    break;
                }
            }
        }
        SlitLength::Finite(_) => {
            for m in 0..=filter.max_index {
                let mut admitted_any = false;
                let mut first_class = ModeClass::Propagating;
                for n in 0..=filter.max_index {
                    let mode = ModeIndex::new(m, n);
                    let axial = axial_wavenumber(mode, geometry, wave);
                    if n == 0 {
                        first_class = axial.class;
                    }
                    let measure = mode_measure(mode, geometry, wave);
                    if filter.admits(measure, axial.class) {
                        modes.push((mode, axial));
                        admitted_any = true;
                    } else if axial.class == ModeClass::Evanescent {
                        // Monotone in n beyond cutoff.
                        break;
                    }
                }
                if !admitted_any && first_class == ModeClass::Evanescent {
                    // The n = 0 column is already below threshold and
                    // evanescent; larger m only decays faster.
                    break;
                }
            }
        }
    }
    modes
}

/// Evaluate the in-slit wavefunction partial sum at a point.
///
/// Finite length (double sum over admitted modes):
/// ψ_j = Σ D_{mn,j} sin((2n+1)πx/b) sin((2m+1)πy/a) e^{i kz z} e^{−iωt};
/// infinite length uses the single sum with coefficients 4A_j/((2m+1)π) and
/// no x factor. The point must lie inside the slit box.
#[allow(clippy::too_many_arguments)]
pub fn slit_wavefunction(
    x: f64,
    y: f64,
    z: f64,
    t: f64,
    geometry: &SlitGeometry,
    wave: &WaveSpec,
    amplitude: &PolarizationAmplitude,
    trunc: &TruncationPolicy,
) -> Result<[Complex64; 3]> {
    let outside = |ok: bool| -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::PointOutsideSlit { x, y, z })
        }
    };
    outside(y >= 0.0 && y <= geometry.width())?;
    outside(z >= 0.0 && z <= geometry.thickness())?;
    if let SlitLength::Finite(b) = geometry.length() {
        outside(x >= 0.0 && x <= b)?;
    }

    let time_phase = (-Complex64::i() * wave.angular_frequency() * t).exp();
    let a = geometry.width();
    let mut scalar = Complex64::new(0.0, 0.0);
    for (mode, axial) in enumerate_modes(geometry, wave, trunc) {
        let axial_phase = (Complex64::i() * axial.kz * z).exp();
        let sin_y = (mode.harmonic_y() as f64 * PI * y / a).sin();
        match geometry.length() {
            SlitLength::Finite(b) => {
                let sin_x = (mode.harmonic_x() as f64 * PI * x / b).sin();
                scalar += coefficient_scalar(mode) * sin_x * sin_y * axial_phase;
            }
            SlitLength::Infinite => {
                scalar += coefficient_scalar_infinite(mode.m) * sin_y * axial_phase;
            }
        }
    }
    scalar *= time_phase;

    let components = amplitude.components();
    Ok([
        components[0] * scalar,
        components[1] * scalar,
        components[2] * scalar,
    ])
}
