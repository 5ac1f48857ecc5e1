//! Shared domain types: wave parameters, slit geometry, observation
//! directions, scan windows, and truncation policy.
//!
//! All types are immutable value objects after construction and are safe to
//! share across threads. Units are SI throughout (metres, radians, seconds).

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Speed of light in vacuum [m/s].
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Monochromatic incident wave.
///
/// Stores the vacuum wavelength λ and the derived wavenumber k = 2π/λ and
/// angular frequency ω = c·k. The global factor e^{-iωt} cancels in every
/// intensity, so ω is carried only for completeness of the evaluated
/// wavefunctions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSpec {
    lambda: f64,
    k: f64,
    omega: f64,
}

impl WaveSpec {
    pub fn new(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(Error::NonPositiveWavelength);
        }
        let k = 2.0 * std::f64::consts::PI / lambda;
        Ok(Self {
            lambda,
            k,
            omega: SPEED_OF_LIGHT * k,
        })
    }

    /// Vacuum wavelength λ [m], exactly as given at construction.
    pub fn wavelength(&self) -> f64 {
        self.lambda
    }

    /// Wavenumber k = 2π/λ [1/m].
    pub fn wavenumber(&self) -> f64 {
        self.k
    }

    /// Angular frequency ω = c·k [rad/s].
    pub fn angular_frequency(&self) -> f64 {
        self.omega
    }
}

/// Slit length along x: finite, or the distinguished infinite value.
///
/// `Infinite` is not a huge float; it routes computation to the single-sum
/// (length-free) formulas, which avoids catastrophic cancellation at extreme
/// aspect ratios.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SlitLength {
    Finite(f64),
    Infinite,
}

impl SlitLength {
    pub fn is_infinite(&self) -> bool {
        matches!(self, SlitLength::Infinite)
    }

    pub fn as_finite(&self) -> Option<f64> {
        match self {
            SlitLength::Finite(b) => Some(*b),
            SlitLength::Infinite => None,
        }
    }
}

/// Rectangular slit system.
///
/// `width` (a) runs along y, `length` (b) along x, `thickness` (c') along
/// the propagation axis z. `gap` (d) is the edge-to-edge distance between
/// adjacent slits, so the grating pitch is a + d.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlitGeometry {
    width: f64,
    length: SlitLength,
    thickness: f64,
    gap: f64,
    n_slits: u32,
}

impl SlitGeometry {
    pub fn new(
        width: f64,
        length: SlitLength,
        thickness: f64,
        gap: f64,
        n_slits: u32,
    ) -> Result<Self> {
        if !width.is_finite() || width <= 0.0 {
            return Err(Error::NonPositiveWidth);
        }
        if let SlitLength::Finite(b) = length {
            if !b.is_finite() || b <= 0.0 {
                return Err(Error::NonPositiveLength);
            }
        }
        if !thickness.is_finite() || thickness < 0.0 {
            return Err(Error::InvalidThickness);
        }
        if !gap.is_finite() || gap < 0.0 {
            return Err(Error::InvalidGap);
        }
        if n_slits < 1 {
            return Err(Error::NoSlits);
        }
        Ok(Self {
            width,
            length,
            thickness,
            gap,
            n_slits,
        })
    }

    /// Slit width a [m] (y direction).
    pub fn width(&self) -> f64 {
        self.width
    }

    /// Slit length b (x direction).
    pub fn length(&self) -> SlitLength {
        self.length
    }

    /// Slit thickness c' [m] (z direction).
    pub fn thickness(&self) -> f64 {
        self.thickness
    }

    /// Edge-to-edge gap d [m] between adjacent slits.
    pub fn gap(&self) -> f64 {
        self.gap
    }

    pub fn n_slits(&self) -> u32 {
        self.n_slits
    }

    /// Grating pitch a + d [m].
    pub fn pitch(&self) -> f64 {
        self.width + self.gap
    }

    /// The same geometry reduced to a single slit.
    pub fn as_single_slit(&self) -> SlitGeometry {
        SlitGeometry {
            n_slits: 1,
            ..*self
        }
    }
}

/// Complex polarization amplitude of the incident plane wave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationAmplitude([Complex64; 3]);

impl PolarizationAmplitude {
    pub fn new(components: [Complex64; 3]) -> Self {
        Self(components)
    }

    /// Unit amplitude along x, the default. Intensities are proportional to
    /// Σ_j |A_j|² times a polarization-independent scalar pattern, so this
    /// default loses no generality.
    pub fn x_polarized() -> Self {
        Self([
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ])
    }

    pub fn components(&self) -> &[Complex64; 3] {
        &self.0
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }
}

impl Default for PolarizationAmplitude {
    fn default() -> Self {
        Self::x_polarized()
    }
}

/// Far-field observation direction.
///
/// α is the angle between the observation ray and the yz surface (so the
/// x spatial frequency is k·sinα); β the angle to the xz surface (y spatial
/// frequency k·sinβ). A real propagation direction needs
/// sin²α + sin²β ≤ 1; cosθ = √(1 − sin²α − sin²β) is the direction cosine
/// against the slit normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservationDirection {
    alpha: f64,
    beta: f64,
    sin_alpha: f64,
    cos_alpha: f64,
    sin_beta: f64,
    cos_theta: f64,
}

impl ObservationDirection {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let sin_alpha = alpha.sin();
        let sin_beta = beta.sin();
        let s2 = sin_alpha * sin_alpha + sin_beta * sin_beta;
        if s2.is_nan() || s2 > 1.0 {
            return Err(Error::InvalidDirection);
        }
        Ok(Self {
            alpha,
            beta,
            sin_alpha,
            cos_alpha: alpha.cos(),
            sin_beta,
            cos_theta: (1.0 - s2).sqrt(),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn sin_alpha(&self) -> f64 {
        self.sin_alpha
    }

    pub fn cos_alpha(&self) -> f64 {
        self.cos_alpha
    }

    pub fn sin_beta(&self) -> f64 {
        self.sin_beta
    }

    pub fn cos_theta(&self) -> f64 {
        self.cos_theta
    }
}

/// Screen scan window: intensity versus β at fixed α, on a uniform β grid,
/// at slit-to-screen distance R.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScreenScan {
    r_screen: f64,
    alpha: f64,
    beta_min: f64,
    beta_max: f64,
    n_samples: usize,
}

impl ScreenScan {
    pub fn new(
        r_screen: f64,
        alpha: f64,
        beta_min: f64,
        beta_max: f64,
        n_samples: usize,
    ) -> Result<Self> {
        if !r_screen.is_finite() || r_screen <= 0.0 {
            return Err(Error::NonPositiveScreenDistance);
        }
        if !beta_min.is_finite() || !beta_max.is_finite() || beta_min >= beta_max {
            return Err(Error::EmptyScanRange);
        }
        if n_samples < 2 {
            return Err(Error::TooFewSamples);
        }
        if !alpha.is_finite() {
            return Err(Error::InvalidDirection);
        }
        Ok(Self {
            r_screen,
            alpha,
            beta_min,
            beta_max,
            n_samples,
        })
    }

    pub fn r_screen(&self) -> f64 {
        self.r_screen
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta_min(&self) -> f64 {
        self.beta_min
    }

    pub fn beta_max(&self) -> f64 {
        self.beta_max
    }

    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    /// Grid spacing in β [rad].
    pub fn step(&self) -> f64 {
        (self.beta_max - self.beta_min) / (self.n_samples - 1) as f64
    }

    /// β of the i-th sample.
    pub fn beta_at(&self, i: usize) -> f64 {
        self.beta_min + i as f64 * self.step()
    }
}

/// Truncation of the (formally infinite) mode sums.
///
/// `max_mode_index` caps both mode indices m and n. `tail_tolerance` drops
/// modes whose coefficient-weighted transmission falls below that fraction
/// of the fundamental mode's.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    max_mode_index: u32,
    tail_tolerance: f64,
}

impl TruncationPolicy {
    pub fn new(max_mode_index: u32, tail_tolerance: f64) -> Result<Self> {
        if max_mode_index < 1 {
            return Err(Error::ZeroModeCap);
        }
        if !(tail_tolerance > 0.0 && tail_tolerance < 1.0) {
            return Err(Error::TailToleranceOutOfRange);
        }
        Ok(Self {
            max_mode_index,
            tail_tolerance,
        })
    }

    pub fn max_mode_index(&self) -> u32 {
        self.max_mode_index
    }

    pub fn tail_tolerance(&self) -> f64 {
        self.tail_tolerance
    }
}

impl Default for TruncationPolicy {
    /// The coefficient decay 1/((2m+1)(2n+1)) is slow, so the default cap
    /// is generous; the transmission-weighted tail filter does the real
    /// pruning for thick slits.
    fn default() -> Self {
        Self {
            max_mode_index: 2000,
            tail_tolerance: 1e-9,
        }
    }
}

/// Result of [`validate_geometry`]: derived quantities worth surfacing
/// before running a scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometryReport {
    /// Grating pitch a + d [m].
    pub pitch: f64,
    /// Whether at least one slit mode propagates (the fundamental has the
    /// largest axial wavenumber, so this is the fundamental's class).
    pub has_propagating_mode: bool,
}

/// Annotate a geometry/wave pair with its pitch and whether any mode
/// propagates through the slit. A slit smaller than roughly half a
/// wavelength in both transverse directions carries only evanescent modes
/// and produces no far-field pattern.
pub fn validate_geometry(geometry: &SlitGeometry, wave: &WaveSpec) -> GeometryReport {
    let fundamental =
        crate::slitmodes::axial_wavenumber(crate::slitmodes::ModeIndex::new(0, 0), geometry, wave);
    GeometryReport {
        pitch: geometry.pitch(),
        has_propagating_mode: fundamental.class == crate::slitmodes::ModeClass::Propagating,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn wave_spec_defining_relations() {
        let w = WaveSpec::new(6.328e-7).unwrap();
        assert_eq!(w.wavelength(), 6.328e-7);
        let two_pi = 2.0 * std::f64::consts::PI;
        assert!((w.wavenumber() * w.wavelength() - two_pi).abs() / two_pi < 1e-12);
        assert!(
            (w.angular_frequency() - SPEED_OF_LIGHT * w.wavenumber()).abs() / w.angular_frequency()
                < 1e-12
        );
    }

    #[test]
    fn wave_spec_rejects_bad_wavelength() {
        assert!(matches!(
            WaveSpec::new(0.0),
            Err(Error::NonPositiveWavelength)
        ));
        assert!(matches!(
            WaveSpec::new(-1.0),
            Err(Error::NonPositiveWavelength)
        ));
        assert!(matches!(
            WaveSpec::new(f64::NAN),
            Err(Error::NonPositiveWavelength)
        ));
        assert_eq!(
            WaveSpec::new(-1.0).unwrap_err().to_string(),
            "wavelength must be positive"
        );
    }

    #[test]
    fn geometry_validation_messages() {
        let err = SlitGeometry::new(-1.0, SlitLength::Finite(1.0), 0.0, 0.0, 1).unwrap_err();
        assert_eq!(err.to_string(), "width must be positive");
        assert!(matches!(
            SlitGeometry::new(1.0, SlitLength::Finite(0.0), 0.0, 0.0, 1),
            Err(Error::NonPositiveLength)
        ));
        assert!(matches!(
            SlitGeometry::new(1.0, SlitLength::Infinite, -1e-9, 0.0, 1),
            Err(Error::InvalidThickness)
        ));
        assert!(matches!(
            SlitGeometry::new(1.0, SlitLength::Infinite, 0.0, -1.0, 1),
            Err(Error::InvalidGap)
        ));
        assert!(matches!(
            SlitGeometry::new(1.0, SlitLength::Infinite, 0.0, 0.0, 0),
            Err(Error::NoSlits)
        ));
    }

    #[test]
    fn fig4_geometry_is_valid_with_expected_pitch() {
        // a = 0.88e-4, a + d = 3.52e-4, two slits, HeNe wavelength.
        let g =
            SlitGeometry::new(0.88e-4, SlitLength::Finite(3.52e-4), 0.88e-4, 2.64e-4, 2).unwrap();
        let w = WaveSpec::new(6.328e-7).unwrap();
        let report = validate_geometry(&g, &w);
        assert!((report.pitch - 3.52e-4).abs() < 1e-19);
        assert!(report.has_propagating_mode);
    }

    #[test]
    fn subwavelength_hole_has_no_propagating_mode() {
        // a = b = 0.1 λ: the lowest-mode radicand 4π²/λ² − π²/a² − π²/b² is
        // negative, so everything is evanescent.
        let lambda = 6.328e-7;
        let g = SlitGeometry::new(
            0.1 * lambda,
            SlitLength::Finite(0.1 * lambda),
            1.1e-6,
            0.0,
            1,
        )
        .unwrap();
        let w = WaveSpec::new(lambda).unwrap();
        let report = validate_geometry(&g, &w);
        assert!(!report.has_propagating_mode);
    }

    #[test]
    fn direction_validation() {
        let d = ObservationDirection::new(0.001, 0.003).unwrap();
        assert!((d.sin_alpha() - 0.001f64.sin()).abs() < 1e-18);
        assert!(d.cos_theta() > 0.99999);
        assert!(matches!(
            ObservationDirection::new(1.2, 1.2),
            Err(Error::InvalidDirection)
        ));
    }

    #[test]
    fn scan_validation_and_grid() {
        let scan = ScreenScan::new(4.572, 0.001, -0.01, 0.01, 4001).unwrap();
        assert!((scan.step() - 5e-6).abs() < 1e-18);
        assert_eq!(scan.beta_at(0), -0.01);
        assert!((scan.beta_at(4000) - 0.01).abs() < 1e-12);
        assert!(matches!(
            ScreenScan::new(0.0, 0.0, -0.01, 0.01, 4001),
            Err(Error::NonPositiveScreenDistance)
        ));
        assert!(matches!(
            ScreenScan::new(1.0, 0.0, 0.01, -0.01, 4001),
            Err(Error::EmptyScanRange)
        ));
        assert!(matches!(
            ScreenScan::new(1.0, 0.0, -0.01, 0.01, 1),
            Err(Error::TooFewSamples)
        ));
    }

    #[test]
    fn truncation_policy_bounds() {
        assert!(matches!(
            TruncationPolicy::new(0, 0.5),
            Err(Error::ZeroModeCap)
        ));
        assert!(matches!(
            TruncationPolicy::new(10, 1.0),
            Err(Error::TailToleranceOutOfRange)
        ));
        let d = TruncationPolicy::default();
        assert_eq!(d.max_mode_index(), 2000);
        assert_eq!(d.tail_tolerance(), 1e-9);
    }

    proptest! {
        // Validation is total: any finite input either constructs or yields
        // a structured error, never a panic.
        #[test]
        fn geometry_construction_never_panics(
            a in -1e-3f64..1e-3,
            b in -1e-3f64..1e-3,
            c in -1e-3f64..1e-3,
            d in -1e-3f64..1e-3,
            n in 0u32..4,
        ) {
            let _ = SlitGeometry::new(a, SlitLength::Finite(b), c, d, n);
            let _ = SlitGeometry::new(a, SlitLength::Infinite, c, d, n);
        }

        #[test]
        fn direction_construction_never_panics(alpha in -4.0f64..4.0, beta in -4.0f64..4.0) {
            let _ = ObservationDirection::new(alpha, beta);
        }
    }
}
