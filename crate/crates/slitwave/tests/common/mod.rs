//! Shared helpers for the integration suites: an adaptive Gauss-Kronrod
//! quadrature oracle for the aperture integrals (independent of the
//! closed-form implementation path) and small series utilities.

// Each integration-test binary compiles its own copy; not all of them use
// every helper.
#![allow(dead_code)]

use num_complex::Complex64;
use std::f64::consts::PI;

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        kronrod += (f1 + f2) * WGK[j];
        // Odd Kronrod indices are the embedded Gauss nodes.
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    kronrod *= half;
    gauss *= half;
    ((kronrod), (kronrod - gauss).norm())
}

fn adapt<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> (Complex64, f64) {
    let (value, err) = gk15(f, a, b);
    if err <= tol || depth == 0 {
        return (value, err);
    }
    let mid = 0.5 * (a + b);
    let (v1, e1) = adapt(f, a, mid, 0.5 * tol, depth - 1);
    let (v2, e2) = adapt(f, mid, b, 0.5 * tol, depth - 1);
    (v1 + v2, e1 + e2)
}

/// Adaptive quadrature of ∫₀^L e^{−iqs} sin(pπs/L) ds: panels resolve both
/// oscillation scales before Gauss-Kronrod bisection refines each one.
pub fn aperture_quadrature(harmonic: u32, length: f64, q: f64) -> Complex64 {
    let mu = harmonic as f64 * PI / length;
    let f = move |s: f64| Complex64::new(0.0, -q * s).exp() * (mu * s).sin();
    let cycles = (q.abs() + mu) * length / (2.0 * PI);
    let panels = ((4.0 * cycles).ceil() as usize).clamp(8, 400_000);
    let step = length / panels as f64;
    let panel_tol = 1e-14 * length / panels as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..panels {
        let a = i as f64 * step;
        let b = if i + 1 == panels { length } else { a + step };
        let (v, _) = adapt(&f, a, b, panel_tol, 6);
        total += v;
    }
    total
}

/// Sample index of the series minimum nearest the given sinβ.
pub fn minimum_nearest(
    report: &slitwave::analysis::ExtremaReport,
    target_sin_beta: f64,
) -> Option<slitwave::analysis::Extremum> {
    report
        .minima
        .iter()
        .min_by(|a, b| {
            (a.sin_beta - target_sin_beta)
                .abs()
                .total_cmp(&(b.sin_beta - target_sin_beta).abs())
        })
        .copied()
}

pub fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}
