//! Far-field propagation of the slit exit field.
//!
//! Each admitted mode contributes
//!
//! ```text
//! D_mn · e^{i kz c'} · [i kz + (ik − 1/R)·√(cos²α − sin²β)]
//!      · I_x(2n+1, b, k sinα) · I_y(2m+1, a, k sinβ)
//! ```
//!
//! to the screen amplitude, with the common prefactor −e^{ikR}/(4πR). The
//! aperture integrals I(p, L, q) = ∫₀^L e^{−iqs} sin(pπs/L) ds have the
//! closed form μ(1 − (−1)^p e^{−iqL})/(μ² − q²), μ = pπ/L, with removable
//! singularities at q = ±μ handled by a convergent series.
//!
//! N slits translated by the pitch a + d multiply the single-slit amplitude
//! by the geometric grating factor Σ_q e^{−i k sinβ (a+d) q}; a literal
//! per-slit summation over translated aperture integrals is kept as an
//! independent arithmetic route for validation.

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::slitmodes::{
    axial_wavenumber, coefficient_scalar, coefficient_scalar_infinite, mode_measure,
    AxialWavenumber, ModeClass, ModeFilter, ModeIndex,
};
use crate::types::{
    ObservationDirection, PolarizationAmplitude, SlitGeometry, SlitLength, TruncationPolicy,
    WaveSpec,
};

/// Half-width of the resonance band |q ∓ μ| ≤ RESONANCE_BAND·μ inside which
/// the closed form loses digits to cancellation and the series form is used.
const RESONANCE_BAND: f64 = 1e-4;

/// (1 − e^{−iw}) / (iw) as a convergent series; exactly 1 at w = 0.
fn expm1_ratio(w: f64) -> Complex64 {
    let z = Complex64::new(0.0, -w);
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 1..=60 {
        term = term * z / (k as f64 + 1.0);
        sum += term;
        if term.norm() <= f64::EPSILON * sum.norm() {
            break;
        }
    }
    sum
}

/// Closed-form aperture integral ∫₀^L e^{−iqs} sin(pπs/L) ds.
///
/// Finite for all real q. At q = ±μ the removable singularity evaluates to
/// the analytic limits ∓iL/2; across the surrounding band the series form
/// keeps full precision where the closed form would cancel.
pub fn aperture_integral(harmonic: u32, length: f64, q: f64) -> Complex64 {
    debug_assert!(harmonic >= 1);
    debug_assert!(length > 0.0);
    let mu = harmonic as f64 * PI / length;
    let d_plus = q - mu;
    if d_plus.abs() <= RESONANCE_BAND * mu {
        let phi = expm1_ratio(d_plus * length);
        return Complex64::new(0.0, -1.0) * mu * length * phi / (2.0 * mu + d_plus);
    }
    let d_minus = q + mu;
    if d_minus.abs() <= RESONANCE_BAND * mu {
        let phi = expm1_ratio(d_minus * length);
        return Complex64::new(0.0, 1.0) * mu * length * phi / (2.0 * mu - d_minus);
    }
    let parity = if harmonic.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    let osc = Complex64::new(0.0, -q * length).exp();
    mu * (Complex64::new(1.0, 0.0) - parity * osc) / (mu * mu - q * q)
}

/// Aperture integral over a translated window:
/// ∫ e^{−iqs} sin(pπ(s − offset)/L) ds over [offset, offset + L],
/// evaluated from the antiderivative at the shifted limits. This is the
/// literal per-slit route; near resonance it falls back to the phase-factored
/// series form.
pub fn aperture_integral_translated(harmonic: u32, length: f64, q: f64, offset: f64) -> Complex64 {
    let mu = harmonic as f64 * PI / length;
    if (q - mu).abs() <= RESONANCE_BAND * mu || (q + mu).abs() <= RESONANCE_BAND * mu {
        return Complex64::new(0.0, -q * offset).exp() * aperture_integral(harmonic, length, q);
    }
    let parity = if harmonic.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    let lead = Complex64::new(0.0, -q * offset).exp();
    let trail = Complex64::new(0.0, -q * (offset + length)).exp();
    mu * (lead - parity * trail) / (mu * mu - q * q)
}

/// Obliquity bracket i·kz + (ik − 1/R)·√(cos²α − sin²β) weighting one mode.
///
/// For every valid direction the radicand equals cos²θ ≥ 0; boundary
/// rounding can push it infinitesimally negative, in which case the
/// principal branch gives an imaginary contribution (flagged on the
/// amplitude metadata).
pub fn obliquity_bracket(
    kz: &AxialWavenumber,
    dir: &ObservationDirection,
    wave: &WaveSpec,
    r_screen: f64,
) -> Complex64 {
    let (oblique, _) = obliquity_cosine(dir);
    let radial = Complex64::new(-1.0 / r_screen, wave.wavenumber());
    Complex64::i() * kz.kz + radial * oblique
}

/// Principal-branch √(cos²α − sin²β) and whether the radicand was negative.
fn obliquity_cosine(dir: &ObservationDirection) -> (Complex64, bool) {
    let radicand = dir.cos_alpha() * dir.cos_alpha() - dir.sin_beta() * dir.sin_beta();
    if radicand >= 0.0 {
        (Complex64::new(radicand.sqrt(), 0.0), false)
    } else {
        (Complex64::new(0.0, (-radicand).sqrt()), true)
    }
}

/// Geometric grating factor Σ_{q=0}^{N−1} e^{−i q_y · pitch · q}.
pub fn grating_factor(q_y: f64, pitch: f64, n_slits: u32) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for s in 0..n_slits {
        sum += Complex64::new(0.0, -q_y * pitch * s as f64).exp();
    }
    sum
}

/// Screen amplitude at one observation direction, with the inputs that
/// produced it.
#[derive(Debug, Clone, Copy)]
pub struct DiffractionAmplitude {
    pub phi: [Complex64; 3],
    pub direction: ObservationDirection,
    pub r_screen: f64,
    /// True when cos²α − sin²β rounded negative and the principal branch
    /// produced an imaginary obliquity term.
    pub imaginary_obliquity: bool,
}

/// Screen intensity I = |Φ_x|² + |Φ_y|² + |Φ_z|² (proportionality constant
/// fixed to 1; figure comparisons are peak-normalized anyway).
pub fn intensity(amplitude: &DiffractionAmplitude) -> f64 {
    amplitude.phi.iter().map(|c| c.norm_sqr()).sum()
}

/// One y-harmonic row of the precomputed mode table: the x-sum is folded
/// into two β-independent complex weights so a scan over directions costs
/// O(rows) per point instead of O(modes).
#[derive(Debug, Clone, Copy)]
struct ModeRow {
    harmonic_y: u32,
    /// Σ_n c_mn · e^{i kz c'} · (i kz) · I_x
    weighted_kz: Complex64,
    /// Σ_n c_mn · e^{i kz c'} · I_x
    weighted: Complex64,
}

/// Mode-sum evaluator bound to a geometry, wave, polarization, screen
/// distance, and fixed α. Precomputes everything β-independent once.
#[derive(Debug, Clone)]
pub struct DiffractionEvaluator {
    rows: Vec<ModeRow>,
    amplitude: [Complex64; 3],
    width: f64,
    pitch: f64,
    n_slits: u32,
    alpha: f64,
    r_screen: f64,
    k: f64,
    /// ik − 1/R
    radial: Complex64,
    /// −e^{ikR} / (4πR)
    prefactor: Complex64,
}

impl DiffractionEvaluator {
    pub fn new(
        geometry: &SlitGeometry,
        wave: &WaveSpec,
        amplitude: &PolarizationAmplitude,
        r_screen: f64,
        trunc: &TruncationPolicy,
        alpha: f64,
    ) -> Result<Self> {
        if !r_screen.is_finite() || r_screen <= 0.0 {
            return Err(Error::NonPositiveScreenDistance);
        }
        if !alpha.is_finite() || alpha.sin().abs() > 1.0 {
            return Err(Error::InvalidDirection);
        }
        let k = wave.wavenumber();
        let q_x = k * alpha.sin();
        let filter = ModeFilter::new(geometry, wave, trunc);

        let rows: Vec<ModeRow> = match geometry.length() {
            SlitLength::Infinite => {
                // Cheap single loop; terminates once the evanescent tail
                // falls below threshold.
                let mut rows = Vec::new();
                for m in 0..=filter.max_index {
                    match infinite_row(m, geometry, wave, &filter) {
                        Some(row) => rows.push(row),
                        None => break,
                    }
                }
                rows
            }
            SlitLength::Finite(b) => (0..=filter.max_index)
                .into_par_iter()
                .filter_map(|m| finite_row(m, b, q_x, geometry, wave, &filter))
                .collect(),
        };

        let exp_ikr = Complex64::new(0.0, k * r_screen).exp();
        Ok(Self {
            rows,
            amplitude: *amplitude.components(),
            width: geometry.width(),
            pitch: geometry.pitch(),
            n_slits: geometry.n_slits(),
            alpha,
            r_screen,
            k,
            radial: Complex64::new(-1.0 / r_screen, k),
            prefactor: -exp_ikr / (4.0 * PI * r_screen),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn r_screen(&self) -> f64 {
        self.r_screen
    }

    /// N-slit amplitude at β: single-slit mode sum times the grating factor.
    pub fn amplitude(&self, beta: f64) -> Result<DiffractionAmplitude> {
        let dir = ObservationDirection::new(self.alpha, beta)?;
        let q_y = dir.sin_beta() * self.k;
        let scalar = self.mode_sum(&dir)? * grating_factor(q_y, self.pitch, self.n_slits);
        Ok(self.package(dir, scalar))
    }

    /// N-slit amplitude by literal summation of individually translated
    /// aperture integrals, one per slit. Algebraically identical to
    /// [`Self::amplitude`]; kept as an independent arithmetic route.
    pub fn amplitude_literal(&self, beta: f64) -> Result<DiffractionAmplitude> {
        let dir = ObservationDirection::new(self.alpha, beta)?;
        let q_y = dir.sin_beta() * self.k;
        let (oblique, flagged) = obliquity_cosine(&dir);
        let oblique_radial = self.radial * oblique;
        let mut acc = Complex64::new(0.0, 0.0);
        for row in &self.rows {
            let mut window = Complex64::new(0.0, 0.0);
            for s in 0..self.n_slits {
                window += aperture_integral_translated(
                    row.harmonic_y,
                    self.width,
                    q_y,
                    s as f64 * self.pitch,
                );
            }
            acc += window * (row.weighted_kz + oblique_radial * row.weighted);
        }
        let scalar = self.prefactor * acc;
        let mut out = self.package(dir, scalar);
        out.imaginary_obliquity = flagged;
        Ok(out)
    }

    pub fn intensity_at(&self, beta: f64) -> Result<f64> {
        Ok(intensity(&self.amplitude(beta)?))
    }

    fn mode_sum(&self, dir: &ObservationDirection) -> Result<Complex64> {
        let q_y = dir.sin_beta() * self.k;
        let (oblique, _) = obliquity_cosine(dir);
        let oblique_radial = self.radial * oblique;
        let mut acc = Complex64::new(0.0, 0.0);
        for row in &self.rows {
            let window = aperture_integral(row.harmonic_y, self.width, q_y);
            acc += window * (row.weighted_kz + oblique_radial * row.weighted);
        }
        Ok(self.prefactor * acc)
    }

    fn package(&self, dir: ObservationDirection, scalar: Complex64) -> DiffractionAmplitude {
        let (_, flagged) = obliquity_cosine(&dir);
        DiffractionAmplitude {
            phi: [
                self.amplitude[0] * scalar,
                self.amplitude[1] * scalar,
                self.amplitude[2] * scalar,
            ],
            direction: dir,
            r_screen: self.r_screen,
            imaginary_obliquity: flagged,
        }
    }
}

fn finite_row(
    m: u32,
    length: f64,
    q_x: f64,
    geometry: &SlitGeometry,
    wave: &WaveSpec,
    filter: &ModeFilter,
) -> Option<ModeRow> {
    let thickness = geometry.thickness();
    let mut weighted_kz = Complex64::new(0.0, 0.0);
    let mut weighted = Complex64::new(0.0, 0.0);
    let mut any = false;
    for n in 0..=filter.max_index {
        let mode = ModeIndex::new(m, n);
        let axial = axial_wavenumber(mode, geometry, wave);
        let measure = mode_measure(mode, geometry, wave);
        if !filter.admits(measure, axial.class) {
            if axial.class == ModeClass::Evanescent {
                break;
            }
            continue;
        }
        any = true;
        let transmission = (Complex64::i() * axial.kz * thickness).exp();
        let along = aperture_integral(mode.harmonic_x(), length, q_x);
        let base = coefficient_scalar(mode) * transmission * along;
        weighted_kz += base * (Complex64::i() * axial.kz);
        weighted += base;
    }
    any.then_some(ModeRow {
        harmonic_y: 2 * m + 1,
        weighted_kz,
        weighted,
    })
}

/// Row for the infinite-length single sum; `None` once the evanescent tail
/// falls below threshold (terminates the parallel iterator).
fn infinite_row(
    m: u32,
    geometry: &SlitGeometry,
    wave: &WaveSpec,
    filter: &ModeFilter,
) -> Option<ModeRow> {
    let mode = ModeIndex::new(m, 0);
    let axial = axial_wavenumber(mode, geometry, wave);
    let measure = mode_measure(mode, geometry, wave);
    if !filter.admits(measure, axial.class) {
        return None;
    }
    let transmission = (Complex64::i() * axial.kz * geometry.thickness()).exp();
    let base = coefficient_scalar_infinite(m) * transmission;
    Some(ModeRow {
        harmonic_y: 2 * m + 1,
        weighted_kz: base * (Complex64::i() * axial.kz),
        weighted: base,
    })
}

/// Single-slit amplitude: the double mode sum, or the single-sum form when
/// the length is infinite. The slit count of `geometry` is ignored.
pub fn single_slit_amplitude(
    dir: &ObservationDirection,
    geometry: &SlitGeometry,
    wave: &WaveSpec,
    amplitude: &PolarizationAmplitude,
    r_screen: f64,
    trunc: &TruncationPolicy,
) -> Result<DiffractionAmplitude> {
    let single = geometry.as_single_slit();
    DiffractionEvaluator::new(&single, wave, amplitude, r_screen, trunc, dir.alpha())?
        .amplitude(dir.beta())
}

/// N-slit amplitude via the factored grating sum.
pub fn multi_slit_amplitude(
    dir: &ObservationDirection,
    geometry: &SlitGeometry,
    wave: &WaveSpec,
    amplitude: &PolarizationAmplitude,
    r_screen: f64,
    trunc: &TruncationPolicy,
) -> Result<DiffractionAmplitude> {
    DiffractionEvaluator::new(geometry, wave, amplitude, r_screen, trunc, dir.alpha())?
        .amplitude(dir.beta())
}

/// N-slit amplitude via the literal sum of translated per-slit integrals.
pub fn multi_slit_amplitude_literal(
    dir: &ObservationDirection,
    geometry: &SlitGeometry,
    wave: &WaveSpec,
    amplitude: &PolarizationAmplitude,
    r_screen: f64,
    trunc: &TruncationPolicy,
) -> Result<DiffractionAmplitude> {
    DiffractionEvaluator::new(geometry, wave, amplitude, r_screen, trunc, dir.alpha())?
        .amplitude_literal(dir.beta())
}

/// Single-sum amplitude for an infinitely long slit. Errors if the geometry
/// has a finite length.
pub fn infinite_length_amplitude(
    dir: &ObservationDirection,
    geometry: &SlitGeometry,
    wave: &WaveSpec,
    amplitude: &PolarizationAmplitude,
    r_screen: f64,
    trunc: &TruncationPolicy,
) -> Result<DiffractionAmplitude> {
    if !geometry.length().is_infinite() {
        return Err(Error::FiniteLength);
    }
    single_slit_amplitude(dir, geometry, wave, amplitude, r_screen, trunc)
}
