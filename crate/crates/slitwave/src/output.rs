//! CSV and JSON emission.
//!
//! Formatting is deterministic and locale-independent: every number is
//! rendered in scientific notation with 12 significant digits, so identical
//! runs produce byte-identical files.

use crate::analysis::{AgreementMetrics, ExtremaReport, PatternSeries};
use crate::scenario::ModelSelection;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn label(&self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalize {
    Peak,
    None,
}

impl Normalize {
    pub fn label(&self) -> &'static str {
        match self {
            Normalize::Peak => "peak",
            Normalize::None => "none",
        }
    }
}

/// Scientific notation with 12 significant digits.
pub fn fmt_sci(x: f64) -> String {
    format!("{:.11e}", x)
}

/// Analysis results attached to one series in the JSON report.
#[derive(Debug, Clone)]
pub struct SeriesAnalysis {
    pub report: ExtremaReport,
    pub peak_intensity: f64,
    /// `None` when the run has fewer than 2 slits or the scan covers no
    /// grating orders.
    pub missing_orders: Option<Vec<u32>>,
}

/// Everything one CLI invocation produced.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub scenario: Option<String>,
    pub model: ModelSelection,
    pub normalize: Normalize,
    pub beta_min: f64,
    pub beta_max: f64,
    pub samples: usize,
    pub quantum: Option<PatternSeries>,
    pub classical: Option<PatternSeries>,
    pub quantum_analysis: Option<SeriesAnalysis>,
    pub classical_analysis: Option<SeriesAnalysis>,
    pub agreement: Option<AgreementMetrics>,
}

impl RunOutput {
    fn any_series(&self) -> &PatternSeries {
        self.quantum
            .as_ref()
            .or(self.classical.as_ref())
            .expect("a run always carries at least one series")
    }

    fn scale(&self, series: &Option<PatternSeries>) -> f64 {
        match (self.normalize, series) {
            (Normalize::Peak, Some(s)) => {
                let peak = s.peak_intensity();
                if peak > 0.0 {
                    1.0 / peak
                } else {
                    1.0
                }
            }
            _ => 1.0,
        }
    }
}

/// CSV columns, in order: beta_rad, sin_beta, screen_y_m, then one intensity
/// column per computed model. Absent models drop their column; the header is
/// always present.
pub fn render_csv(run: &RunOutput) -> String {
    let base = run.any_series();
    let n = base.samples.len();
    let r_screen = base.params.r_screen;
    let q_scale = run.scale(&run.quantum);
    let c_scale = run.scale(&run.classical);

    let mut header = String::from("beta_rad,sin_beta,screen_y_m");
    if run.quantum.is_some() {
        header.push_str(",intensity_quantum");
    }
    if run.classical.is_some() {
        header.push_str(",intensity_classical");
    }

    let mut out = String::with_capacity(64 * (n + 1));
    out.push_str(&header);
    out.push('\n');
    for i in 0..n {
        let s = &base.samples[i];
        out.push_str(&fmt_sci(s.beta));
        out.push(',');
        out.push_str(&fmt_sci(s.sin_beta));
        out.push(',');
        out.push_str(&fmt_sci(r_screen * s.beta.tan()));
        if let Some(q) = &run.quantum {
            out.push(',');
            out.push_str(&fmt_sci(q.samples[i].intensity * q_scale));
        }
        if let Some(c) = &run.classical {
            out.push(',');
            out.push_str(&fmt_sci(c.samples[i].intensity * c_scale));
        }
        out.push('\n');
    }
    out
}

/// JSON mirror of the CSV columns plus the full parameter echo and the
/// analysis report.
pub fn render_json(run: &RunOutput) -> String {
    let base = run.any_series();
    let p = &base.params;
    let mut w = JsonWriter::new();

    w.open_object();
    match &run.scenario {
        Some(name) => w.field_str("scenario", name),
        None => w.field_raw("scenario", "null"),
    }

    w.key("parameters");
    w.open_object();
    w.field_num("lambda_m", p.lambda);
    w.field_num("slit_width_m", p.slit_width);
    match p.slit_length {
        Some(b) => w.field_num("slit_length_m", b),
        None => w.field_str("slit_length_m", "infinite"),
    }
    w.field_num("thickness_m", p.thickness);
    w.field_num("gap_m", p.gap);
    w.field_num("pitch_m", p.pitch());
    w.field_raw("n_slits", &p.n_slits.to_string());
    w.field_num("alpha_rad", p.alpha);
    w.field_num("r_screen_m", p.r_screen);
    w.field_num("beta_min_rad", run.beta_min);
    w.field_num("beta_max_rad", run.beta_max);
    w.field_raw("samples", &run.samples.to_string());
    w.field_raw("max_mode_index", &p.max_mode_index.to_string());
    w.field_num("tail_tolerance", p.tail_tolerance);
    w.field_str("model", run.model.label());
    w.field_str("normalize", run.normalize.label());
    w.close_object();

    w.key("series");
    w.open_object();
    w.array_num("beta_rad", base.samples.iter().map(|s| s.beta));
    w.array_num("sin_beta", base.samples.iter().map(|s| s.sin_beta));
    w.array_num(
        "screen_y_m",
        base.samples.iter().map(|s| p.r_screen * s.beta.tan()),
    );
    if let Some(q) = &run.quantum {
        let scale = run.scale(&run.quantum);
        w.array_num(
            "intensity_quantum",
            q.samples.iter().map(|s| s.intensity * scale),
        );
    }
    if let Some(c) = &run.classical {
        let scale = run.scale(&run.classical);
        w.array_num(
            "intensity_classical",
            c.samples.iter().map(|s| s.intensity * scale),
        );
    }
    w.close_object();

    w.key("analysis");
    w.open_object();
    match &run.quantum_analysis {
        Some(a) => {
            w.key("quantum");
            write_analysis(&mut w, a);
        }
        None => w.field_raw("quantum", "null"),
    }
    match &run.classical_analysis {
        Some(a) => {
            w.key("classical");
            write_analysis(&mut w, a);
        }
        None => w.field_raw("classical", "null"),
    }
    match &run.agreement {
        Some(m) => {
            w.key("agreement");
            w.open_object();
            w.field_num("rms", m.rms);
            w.field_num("max_peak_offset_steps", m.max_peak_offset_steps);
            w.field_num("secondary_count_ratio", m.secondary_count_ratio);
            w.close_object();
        }
        None => w.field_raw("agreement", "null"),
    }
    w.close_object();

    w.close_object();
    w.finish()
}

fn write_analysis(w: &mut JsonWriter, a: &SeriesAnalysis) {
    w.open_object();
    w.field_num("peak_intensity", a.peak_intensity);
    w.key("principal_maxima");
    w.open_array();
    for e in &a.report.principal_maxima {
        w.open_object();
        match e.order {
            Some(j) => w.field_raw("order", &j.to_string()),
            None => w.field_raw("order", "null"),
        }
        w.field_num("beta_rad", e.beta);
        w.field_num("sin_beta", e.sin_beta);
        w.field_num("intensity", e.intensity);
        w.close_object();
    }
    w.close_array();
    w.field_raw(
        "secondary_maxima_count",
        &a.report.secondary_maxima.len().to_string(),
    );
    w.field_raw("minima_count", &a.report.minima.len().to_string());
    w.key("gaps");
    w.open_array();
    for g in &a.report.gaps {
        w.open_object();
        w.field_raw("order_lo", &g.order_lo.to_string());
        w.field_raw("order_hi", &g.order_hi.to_string());
        w.field_raw("secondary_maxima", &g.secondary_maxima.to_string());
        w.field_raw("minima", &g.minima.to_string());
        w.close_object();
    }
    w.close_array();
    match a.report.secondary_per_unit_gap() {
        Some(c) => w.field_raw("secondary_maxima_per_gap", &c.to_string()),
        None => w.field_raw("secondary_maxima_per_gap", "null"),
    }
    match &a.missing_orders {
        Some(orders) => {
            w.key("missing_orders");
            w.open_array();
            for j in orders {
                w.item_raw(&j.to_string());
            }
            w.close_array();
        }
        None => w.field_raw("missing_orders", "null"),
    }
    w.close_object();
}

/// Minimal JSON writer with deterministic formatting. Handles exactly the
/// shapes used above; numbers go through [`fmt_sci`], non-finite values
/// become null.
struct JsonWriter {
    out: String,
    need_comma: Vec<bool>,
    /// A key was just written; the next value attaches without a comma.
    after_key: bool,
}

impl JsonWriter {
    fn new() -> Self {
        Self {
            out: String::new(),
            need_comma: Vec::new(),
            after_key: false,
        }
    }

    fn separate(&mut self) {
        if self.after_key {
            self.after_key = false;
            return;
        }
        if let Some(need) = self.need_comma.last_mut() {
            if *need {
                self.out.push(',');
            }
            *need = true;
        }
    }

    fn open_object(&mut self) {
        self.separate();
        self.out.push('{');
        self.need_comma.push(false);
    }

    fn close_object(&mut self) {
        self.out.push('}');
        self.need_comma.pop();
    }

    fn open_array(&mut self) {
        self.separate();
        self.out.push('[');
        self.need_comma.push(false);
    }

    fn close_array(&mut self) {
        self.out.push(']');
        self.need_comma.pop();
    }

    fn key(&mut self, name: &str) {
        self.separate();
        self.out.push('"');
        self.out.push_str(name);
        self.out.push_str("\":");
        self.after_key = true;
    }

    fn value_raw(&mut self, raw: &str) {
        self.separate();
        self.out.push_str(raw);
    }

    fn field_raw(&mut self, name: &str, raw: &str) {
        self.key(name);
        self.value_raw(raw);
    }

    fn field_num(&mut self, name: &str, value: f64) {
        if value.is_finite() {
            let rendered = fmt_sci(value);
            self.field_raw(name, &rendered);
        } else {
            self.field_raw(name, "null");
        }
    }

    fn field_str(&mut self, name: &str, value: &str) {
        self.key(name);
        let rendered = format!("\"{}\"", escape(value));
        self.value_raw(&rendered);
    }

    fn item_raw(&mut self, raw: &str) {
        self.value_raw(raw);
    }

    fn array_num(&mut self, name: &str, values: impl Iterator<Item = f64>) {
        self.key(name);
        self.open_array();
        for v in values {
            if v.is_finite() {
                let rendered = fmt_sci(v);
                self.value_raw(&rendered);
            } else {
                self.value_raw("null");
            }
        }
        self.close_array();
    }

    fn finish(self) -> String {
        let mut out = self.out;
        out.push('\n');
        out
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}
