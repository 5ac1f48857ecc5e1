//! Pattern-level analysis of sampled intensity series: extrema structure
//! against the grating-order grid, missing orders, and quantum-vs-classical
//! agreement metrics.

use rayon::prelude::*;

use crate::classical::{classical_intensity, envelope};
use crate::error::{Error, Result};
use crate::kirchhoff::{intensity, DiffractionEvaluator};
use crate::types::{PolarizationAmplitude, ScreenScan, SlitGeometry, TruncationPolicy, WaveSpec};

/// Local maxima with prominence below this fraction of the global maximum
/// are ignored as noise by default.
pub const DEFAULT_PROMINENCE_FLOOR: f64 = 1e-6;

/// Default relative threshold below which a grating order counts as missing.
pub const DEFAULT_MISSING_ORDER_THRESHOLD: f64 = 1e-3;

/// Which model produced a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternModel {
    Quantum,
    Classical,
}

impl PatternModel {
    pub fn label(&self) -> &'static str {
        match self {
            PatternModel::Quantum => "quantum",
            PatternModel::Classical => "classical",
        }
    }
}

/// Snapshot of the parameters that generated a series; carried along so the
/// analysis can recover the grating-order grid and the envelope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesParams {
    pub lambda: f64,
    pub slit_width: f64,
    /// `None` encodes an infinite slit length.
    pub slit_length: Option<f64>,
    pub thickness: f64,
    pub gap: f64,
    pub n_slits: u32,
    pub alpha: f64,
    pub r_screen: f64,
    pub max_mode_index: u32,
    pub tail_tolerance: f64,
}

impl SeriesParams {
    pub fn new(
        geometry: &SlitGeometry,
        wave: &WaveSpec,
        scan: &ScreenScan,
        trunc: &TruncationPolicy,
    ) -> Self {
        Self {
            lambda: wave.wavelength(),
            slit_width: geometry.width(),
            slit_length: geometry.length().as_finite(),
            thickness: geometry.thickness(),
            gap: geometry.gap(),
            n_slits: geometry.n_slits(),
            alpha: scan.alpha(),
            r_screen: scan.r_screen(),
            max_mode_index: trunc.max_mode_index(),
            tail_tolerance: trunc.tail_tolerance(),
        }
    }

    pub fn pitch(&self) -> f64 {
        self.slit_width + self.gap
    }

    /// Spacing of grating orders in sinβ: λ/(a+d).
    pub fn order_spacing(&self) -> f64 {
        self.lambda / self.pitch()
    }
}

/// One sampled point of a pattern.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub beta: f64,
    pub sin_beta: f64,
    pub intensity: f64,
}

/// Intensity versus β for one model, on a strictly increasing β grid.
#[derive(Debug, Clone)]
pub struct PatternSeries {
    pub samples: Vec<Sample>,
    pub model: PatternModel,
    pub params: SeriesParams,
}

impl PatternSeries {
    pub fn peak_intensity(&self) -> f64 {
        self.samples.iter().fold(0.0f64, |m, s| m.max(s.intensity))
    }

    /// Σ I·Δβ over the scan window.
    pub fn integrated_intensity(&self) -> f64 {
        if self.samples.len() < 2 {
            return 0.0;
        }
        let step = (self.samples[self.samples.len() - 1].beta - self.samples[0].beta)
            / (self.samples.len() - 1) as f64;
        let mut total = 0.0;
        for (i, s) in self.samples.iter().enumerate() {
            let w = if i == 0 || i == self.samples.len() - 1 {
                0.5
            } else {
                1.0
            };
            total += w * s.intensity;
        }
        total * step
    }

    pub fn grid_step(&self) -> f64 {
        if self.samples.len() < 2 {
            return 0.0;
        }
        (self.samples[self.samples.len() - 1].beta - self.samples[0].beta)
            / (self.samples.len() - 1) as f64
    }
}

/// Evaluate the selected model over the scan grid. Deterministic for fixed
/// inputs; the direction sweep is a parallel map collected in grid order.
pub fn scan_pattern(
    model: PatternModel,
    geometry: &SlitGeometry,
    wave: &WaveSpec,
    amplitude: &PolarizationAmplitude,
    scan: &ScreenScan,
    trunc: &TruncationPolicy,
) -> Result<PatternSeries> {
    let n = scan.n_samples();
    let samples: Vec<Sample> = match model {
        PatternModel::Quantum => {
            let evaluator = DiffractionEvaluator::new(
                geometry,
                wave,
                amplitude,
                scan.r_screen(),
                trunc,
                scan.alpha(),
            )?;
            (0..n)
                .into_par_iter()
                .map(|i| {
                    let beta = scan.beta_at(i);
                    let amp = evaluator.amplitude(beta)?;
                    Ok(Sample {
                        beta,
                        sin_beta: amp.direction.sin_beta(),
                        intensity: intensity(&amp),
                    })
                })
                .collect::<Result<Vec<_>>>()?
        }
        PatternModel::Classical => (0..n)
            .into_par_iter()
            .map(|i| {
                // sinθ := sinβ when overlaying the two models.
                let beta = scan.beta_at(i);
                Sample {
                    beta,
                    sin_beta: beta.sin(),
                    intensity: classical_intensity(
                        beta,
                        geometry.width(),
                        geometry.gap(),
                        geometry.n_slits(),
                        wave.wavelength(),
                        1.0,
                    ),
                }
            })
            .collect(),
    };
    Ok(PatternSeries {
        samples,
        model,
        params: SeriesParams::new(geometry, wave, scan, trunc),
    })
}

/// One classified extremum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub index: usize,
    pub beta: f64,
    pub sin_beta: f64,
    pub intensity: f64,
    /// Grating order for principal maxima; `None` for secondary maxima and
    /// minima.
    pub order: Option<i64>,
}

/// Extrema counts between one adjacent pair of principal maxima.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GapCount {
    pub order_lo: i64,
    pub order_hi: i64,
    pub secondary_maxima: usize,
    pub minima: usize,
}

/// Classified extrema of a series.
#[derive(Debug, Clone, Default)]
pub struct ExtremaReport {
    pub principal_maxima: Vec<Extremum>,
    pub secondary_maxima: Vec<Extremum>,
    pub minima: Vec<Extremum>,
    pub gaps: Vec<GapCount>,
}

impl ExtremaReport {
    /// Intensity of the strongest principal maximum, if any.
    pub fn strongest_principal(&self) -> Option<f64> {
        self.principal_maxima
            .iter()
            .map(|e| e.intensity)
            .fold(None, |m, v| Some(m.map_or(v, |x: f64| x.max(v))))
    }

    /// The common secondary-maxima count across unit-order gaps, when they
    /// all agree (gaps spanning a missing order are excluded).
    pub fn secondary_per_unit_gap(&self) -> Option<usize> {
        let counts: Vec<usize> = self
            .gaps
            .iter()
            .filter(|g| g.order_hi - g.order_lo == 1)
            .map(|g| g.secondary_maxima)
            .collect();
        match counts.split_first() {
            Some((first, rest)) if rest.iter().all(|c| c == first) => Some(*first),
            _ => None,
        }
    }
}

/// Find and classify local extrema.
///
/// A local maximum is principal when it lies within the order window of an
/// integer grating order j (sinβ ≈ j·λ/(a+d)) and reaches at least half of
/// the envelope-scaled prediction at that angle; everything else above the
/// prominence floor is secondary. With a single slit only the global
/// maximum is principal (order 0).
///
/// The order window is max(0.3·spacing/N, half a grid step): the principal
/// peaks sit off the ideal positions by up to the envelope-slope pull
/// (∝ 1/(N²−1)), while the first secondary lies 1.5·spacing/N away, so this
/// window separates the two robustly.
pub fn find_extrema(series: &PatternSeries, prominence_floor: f64) -> Result<ExtremaReport> {
    let samples = &series.samples;
    if samples.len() < 3 {
        return Err(Error::SeriesTooShort);
    }
    let values: Vec<f64> = samples.iter().map(|s| s.intensity).collect();
    let global_max = series.peak_intensity();
    if global_max <= 0.0 {
        return Ok(ExtremaReport::default());
    }
    let floor = prominence_floor * global_max;

    // Runs of equal values count once, at their midpoint: an even grid can
    // straddle a symmetric peak with two equal samples.
    let mut maxima = Vec::new();
    let mut minima = Vec::new();
    let mut start = 0usize;
    while start < values.len() {
        let mut end = start;
        while end + 1 < values.len() && values[end + 1] == values[start] {
            end += 1;
        }
        if start > 0 && end < values.len() - 1 {
            let v = values[start];
            let rep = (start + end) / 2;
            if v > values[start - 1] && v > values[end + 1] {
                if prominence(&values, rep, true) >= floor {
                    maxima.push(rep);
                }
            } else if v < values[start - 1]
                && v < values[end + 1]
                && prominence(&values, rep, false) >= floor
            {
                minima.push(rep);
            }
        }
        start = end + 1;
    }

    let params = &series.params;
    let spacing = params.order_spacing();
    let sin_step =
        (samples[samples.len() - 1].sin_beta - samples[0].sin_beta) / (samples.len() - 1) as f64;
    let gmax_idx = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let env_at = |sin_beta: f64| {
        envelope(params.slit_width * std::f64::consts::PI * sin_beta / params.lambda)
    };
    let env_ref = env_at(samples[gmax_idx].sin_beta).max(1e-12);

    let mut principal: Vec<Extremum> = Vec::new();
    let mut secondary: Vec<Extremum> = Vec::new();

    if params.n_slits >= 2 {
        let window = (0.3 * spacing / params.n_slits as f64).max(0.5 * sin_step.abs());
        for &i in &maxima {
            let s = samples[i];
            let order = (s.sin_beta / spacing).round();
            let aligned = (s.sin_beta - order * spacing).abs() <= window;
            let predicted = global_max * env_at(order * spacing) / env_ref;
            if aligned && s.intensity >= 0.5 * predicted {
                principal.push(Extremum {
                    index: i,
                    beta: s.beta,
                    sin_beta: s.sin_beta,
                    intensity: s.intensity,
                    order: Some(order as i64),
                });
            } else {
                secondary.push(extremum(samples, i, None));
            }
        }
        // Keep one principal maximum per order (the highest); demote the rest.
        principal.sort_by(|a, b| {
            a.order
                .cmp(&b.order)
                .then(b.intensity.total_cmp(&a.intensity))
        });
        let mut deduped: Vec<Extremum> = Vec::new();
        for e in principal {
            if deduped.last().map(|d| d.order) == Some(e.order) {
                secondary.push(Extremum { order: None, ..e });
            } else {
                deduped.push(e);
            }
        }
        principal = deduped;
        secondary.sort_by_key(|e| e.index);
    } else {
        // Single slit: the central lobe is the only principal maximum.
        if let Some(&best) = maxima
            .iter()
            .max_by(|&&a, &&b| values[a].total_cmp(&values[b]))
        {
            principal.push(extremum(samples, best, Some(0)));
            for &i in &maxima {
                if i != best {
                    secondary.push(extremum(samples, i, None));
                }
            }
        }
    }

    let minima: Vec<Extremum> = minima
        .into_iter()
        .map(|i| extremum(samples, i, None))
        .collect();

    principal.sort_by_key(|e| e.index);
    let mut gaps = Vec::new();
    for pair in principal.windows(2) {
        let (lo, hi) = (&pair[0], &pair[1]);
        let inside = |e: &Extremum| e.index > lo.index && e.index < hi.index;
        if let (Some(jl), Some(jh)) = (lo.order, hi.order) {
            gaps.push(GapCount {
                order_lo: jl,
                order_hi: jh,
                secondary_maxima: secondary.iter().filter(|e| inside(e)).count(),
                minima: minima.iter().filter(|e| inside(e)).count(),
            });
        }
    }

    Ok(ExtremaReport {
        principal_maxima: principal,
        secondary_maxima: secondary,
        minima,
        gaps,
    })
}

fn extremum(samples: &[Sample], i: usize, order: Option<i64>) -> Extremum {
    Extremum {
        index: i,
        beta: samples[i].beta,
        sin_beta: samples[i].sin_beta,
        intensity: samples[i].intensity,
        order,
    }
}

/// Topographic prominence of the extremum at `i` (peaks when `is_max`,
/// dips on the negated series otherwise).
fn prominence(values: &[f64], i: usize, is_max: bool) -> f64 {
    let sign = if is_max { 1.0 } else { -1.0 };
    let v = sign * values[i];
    let mut bases = [f64::NEG_INFINITY; 2];
    for (slot, range) in [(0usize, 0..i), (1usize, i + 1..values.len())] {
        let mut lowest = v;
        let iter: Box<dyn Iterator<Item = usize>> = if slot == 0 {
            Box::new(range.rev())
        } else {
            Box::new(range)
        };
        for j in iter {
            let w = sign * values[j];
            if w > v {
                break;
            }
            lowest = lowest.min(w);
        }
        bases[slot] = lowest;
    }
    v - bases[0].max(bases[1])
}

/// Orders whose intensity at the order position falls below
/// `threshold × strongest principal maximum`. Requires at least two slits
/// and a scan range covering at least order 1.
pub fn missing_orders(series: &PatternSeries, threshold: f64) -> Result<Vec<u32>> {
    let params = &series.params;
    if params.n_slits < 2 {
        return Err(Error::TooFewSlitsForOrders);
    }
    let report = find_extrema(series, DEFAULT_PROMINENCE_FLOOR)?;
    let reference = report
        .strongest_principal()
        .unwrap_or_else(|| series.peak_intensity());
    if reference <= 0.0 {
        return Err(Error::NoOrdersInRange);
    }

    let spacing = params.order_spacing();
    let sin_lo = series.samples[0].sin_beta;
    let sin_hi = series.samples[series.samples.len() - 1].sin_beta;
    let mut missing = Vec::new();
    let mut any_order_in_range = false;
    let mut j = 1u32;
    loop {
        let target = j as f64 * spacing;
        let pos_in = target <= sin_hi;
        let neg_in = -target >= sin_lo;
        if !pos_in && !neg_in {
            break;
        }
        any_order_in_range = true;
        let mut best = f64::NEG_INFINITY;
        if pos_in {
            best = best.max(intensity_near(series, target));
        }
        if neg_in {
            best = best.max(intensity_near(series, -target));
        }
        if best < threshold * reference {
            missing.push(j);
        }
        j += 1;
    }
    if !any_order_in_range {
        return Err(Error::NoOrdersInRange);
    }
    Ok(missing)
}

/// Series intensity at the sample nearest to the given sinβ.
fn intensity_near(series: &PatternSeries, sin_beta: f64) -> f64 {
    let samples = &series.samples;
    let idx = samples.partition_point(|s| s.sin_beta < sin_beta);
    let mut best = f64::INFINITY;
    let mut value = 0.0;
    for i in [idx.saturating_sub(1), idx.min(samples.len() - 1)] {
        let d = (samples[i].sin_beta - sin_beta).abs();
        if d < best {
            best = d;
            value = samples[i].intensity;
        }
    }
    value
}

/// Agreement between two series on the same grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AgreementMetrics {
    /// RMS deviation of the peak-normalized curves.
    pub rms: f64,
    /// Largest principal-peak position offset, in grid steps, over orders
    /// detected in both series.
    pub max_peak_offset_steps: f64,
    /// Ratio of secondary-maxima counts (first/second); 1 when both are 0,
    /// infinite when only the second is 0.
    pub secondary_count_ratio: f64,
}

/// Compare two series sampled on identical β grids.
pub fn compare_patterns(first: &PatternSeries, second: &PatternSeries) -> Result<AgreementMetrics> {
    if first.samples.len() != second.samples.len()
        || first
            .samples
            .iter()
            .zip(&second.samples)
            .any(|(a, b)| a.beta != b.beta)
    {
        return Err(Error::GridMismatch);
    }
    let n = first.samples.len();
    let peak_a = first.peak_intensity();
    let peak_b = second.peak_intensity();
    let norm_a = if peak_a > 0.0 { 1.0 / peak_a } else { 0.0 };
    let norm_b = if peak_b > 0.0 { 1.0 / peak_b } else { 0.0 };
    let mut sum_sq = 0.0;
    for (a, b) in first.samples.iter().zip(&second.samples) {
        let d = a.intensity * norm_a - b.intensity * norm_b;
        sum_sq += d * d;
    }
    let rms = (sum_sq / n as f64).sqrt();

    let report_a = find_extrema(first, DEFAULT_PROMINENCE_FLOOR)?;
    let report_b = find_extrema(second, DEFAULT_PROMINENCE_FLOOR)?;
    let step = first.grid_step();
    let mut max_offset: f64 = 0.0;
    for ea in &report_a.principal_maxima {
        if let Some(eb) = report_b
            .principal_maxima
            .iter()
            .find(|e| e.order == ea.order)
        {
            max_offset = max_offset.max((ea.beta - eb.beta).abs() / step);
        }
    }
    let (sa, sb) = (
        report_a.secondary_maxima.len(),
        report_b.secondary_maxima.len(),
    );
    let ratio = match (sa, sb) {
        (0, 0) => 1.0,
        (_, 0) => f64::INFINITY,
        _ => sa as f64 / sb as f64,
    };
    Ok(AgreementMetrics {
        rms,
        max_peak_offset_steps: max_offset,
        secondary_count_ratio: ratio,
    })
}
