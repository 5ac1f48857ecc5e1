//! Classical N-slit Fraunhofer reference model,
//!
//! ```text
//! I = I₀ · sin²β/β² · sin²(Nγ)/sin²γ,   β = aπ sinθ/λ,  γ = (a+d)π sinθ/λ
//! ```
//!
//! used for validation plots and agreement metrics. The dimensionless β, γ
//! here are the classical-formula arguments, not the observation angle β of
//! the screen scan; when the two models are overlaid we identify
//! sinθ := sin(scan β).

use std::f64::consts::PI;

/// Half-width of the windows around removable singularities that are
/// evaluated by their series limits.
const SINGULARITY_WINDOW: f64 = 1e-8;

/// The dimensionless classical arguments at one diffraction angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalParams {
    pub beta_cl: f64,
    pub gamma_cl: f64,
    pub i0: f64,
}

impl ClassicalParams {
    pub fn new(theta: f64, width: f64, gap: f64, lambda: f64, i0: f64) -> Self {
        let s = theta.sin();
        Self {
            beta_cl: width * PI * s / lambda,
            gamma_cl: (width + gap) * PI * s / lambda,
            i0,
        }
    }
}

/// Single-slit envelope sin²β/β², with the θ = 0 limit 1.
pub fn envelope(beta_cl: f64) -> f64 {
    if beta_cl.abs() < SINGULARITY_WINDOW {
        return 1.0;
    }
    let s = beta_cl.sin() / beta_cl;
    s * s
}

/// Grating factor sin²(Nγ)/sin²γ, with the limit N² at γ = jπ.
pub fn grating_factor_sq(gamma_cl: f64, n_slits: u32) -> f64 {
    let n = n_slits as f64;
    let nearest = (gamma_cl / PI).round() * PI;
    if (gamma_cl - nearest).abs() < SINGULARITY_WINDOW {
        return n * n;
    }
    let r = (n * gamma_cl).sin() / gamma_cl.sin();
    r * r
}

/// Classical N-slit intensity at diffraction angle θ.
pub fn classical_intensity(
    theta: f64,
    width: f64,
    gap: f64,
    n_slits: u32,
    lambda: f64,
    i0: f64,
) -> f64 {
    let p = ClassicalParams::new(theta, width, gap, lambda, i0);
    i0 * envelope(p.beta_cl) * grating_factor_sq(p.gamma_cl, n_slits)
}
