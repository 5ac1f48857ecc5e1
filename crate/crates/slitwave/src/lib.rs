//! Light diffraction through rectangular slits of finite width, length, and
//! thickness.
//!
//! The slit interior is treated as a hard-walled waveguide: an incident
//! plane wave excites the odd sine modes of the cross-section, each of which
//! propagates (or decays) through the slit thickness with its own complex
//! axial wavenumber. A Kirchhoff integral carries the exit field to a far
//! screen, where N translated slits superpose through a geometric grating
//! factor. The classical N-slit Fraunhofer formula is included as the
//! reference model, together with analysis utilities (extrema structure,
//! missing orders, agreement metrics) and a CLI with figure presets.

pub mod analysis;
pub mod classical;
pub mod cli;
pub mod error;
pub mod kirchhoff;
pub mod output;
pub mod scenario;
pub mod slitmodes;
pub mod types;

pub use error::{Error, Result};
pub use types::{
    validate_geometry, GeometryReport, ObservationDirection, PolarizationAmplitude, ScreenScan,
    SlitGeometry, SlitLength, TruncationPolicy, WaveSpec, SPEED_OF_LIGHT,
};
