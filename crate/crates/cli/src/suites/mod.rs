//! Verification suites. Each check produces one [`CheckRecord`]; records
//! are sorted by name so reports are byte-stable.

mod algebra;
mod dirac;
mod geometry;
mod weierstrass;

use crate::config::{Suite, SuiteConfig, Tolerances};
use crate::report::{CheckRecord, Environment, NormalizationFinding, Report, SCHEMA_VERSION};
use crate::shapes::{parse_shape, ShapeEntry};
use subdirac_core::convergence::fit_order;
use subdirac_core::geometry::{shape_data, FrameOptions, ImmersionChart, ShapeData, ShapeOptions, ShapeSpec};
use subdirac_core::Result;

/// Measured outcome of one check.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub max: f64,
    pub l2: f64,
    pub order: Option<f64>,
    pub pass: bool,
    pub note: Option<String>,
}

impl Outcome {
    pub fn within(max: f64, l2: f64, tol: f64) -> Self {
        Self {
            max,
            l2,
            order: None,
            pass: max <= tol,
            note: None,
        }
    }

    pub fn noted(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Root mean square.
pub fn rms(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    (values.iter().map(|v| v * v).sum::<f64>() / values.len() as f64).sqrt()
}

pub fn max_of(values: &[f64]) -> f64 {
    values.iter().copied().fold(0.0, f64::max)
}

pub(crate) struct Ctx<'a> {
    pub cfg: &'a SuiteConfig,
    records: Vec<CheckRecord>,
    pub normalization: Option<NormalizationFinding>,
}

impl<'a> Ctx<'a> {
    fn new(cfg: &'a SuiteConfig) -> Self {
        Self {
            cfg,
            records: Vec::new(),
            normalization: None,
        }
    }

    pub fn check(&mut self, name: String, reference: &str, run: impl FnOnce() -> Result<Outcome>) {
        let record = match run() {
            Ok(o) => CheckRecord {
                name,
                reference: reference.to_string(),
                max_abs_residual: o.max,
                l2_residual: o.l2,
                convergence_order: o.order,
                pass: o.pass,
                note: o.note,
            },
            Err(e) => CheckRecord {
                name,
                reference: reference.to_string(),
                max_abs_residual: f64::NAN,
                l2_residual: f64::NAN,
                convergence_order: None,
                pass: false,
                note: Some(format!("error: {e}")),
            },
        };
        self.records.push(record);
    }

    /// Records a failed check for an error raised outside its closure.
    pub fn fail(&mut self, name: String, reference: &str, err: &dyn std::fmt::Display) {
        let msg = err.to_string();
        self.check(name, reference, || Err(subdirac_core::Error::Validation(msg)));
    }

    /// Samples per axis for a grid size.
    pub fn samples(spec: &ShapeSpec<f64>, n: usize) -> Vec<usize> {
        vec![n; spec.k()]
    }

    pub fn prepare(
        &self,
        spec: &ShapeSpec<f64>,
        n: usize,
        parallel: bool,
    ) -> Result<(ImmersionChart<f64>, ShapeData<f64>)> {
        let chart = spec.chart(&Self::samples(spec, n))?;
        let options = ShapeOptions {
            jet: self.cfg.jet.mode(),
            frame: FrameOptions { parallel },
            strict: self.cfg.strict,
        };
        let shape = shape_data(&chart, options)?;
        Ok((chart, shape))
    }

    /// Shapes from the config, or the suite's defaults.
    pub fn shapes(&self, defaults: &[&str]) -> Vec<ShapeEntry> {
        match &self.cfg.shapes {
            Some(list) => list.clone(),
            None => defaults
                .iter()
                .map(|s| parse_shape(s).expect("default shapes parse"))
                .collect(),
        }
    }
}

/// Refinement study: `max[i]`, `l2[i]` measured at spacing `h[i]`.
/// Passes when the fitted order is in band and the finest error is below
/// `finest_limit`, or when every error is at roundoff level.
pub fn convergence_with(tol: &Tolerances, h: &[f64], max: &[f64], l2: &[f64], finest_limit: f64) -> Outcome {
    let last = *max.last().unwrap_or(&f64::NAN);
    let last_l2 = *l2.last().unwrap_or(&f64::NAN);
    if max.iter().all(|e| *e <= tol.exact_floor) {
        return Outcome::within(last, last_l2, tol.exact_floor).noted("exact to roundoff on every grid");
    }
    if h.len() < 3 {
        return Outcome::within(last, last_l2, finest_limit).noted("fewer than three grids; no order fitted");
    }
    match fit_order(h, max) {
        Ok(order) => Outcome {
            max: last,
            l2: last_l2,
            order: Some(order),
            pass: order >= tol.order_min && order <= tol.order_max && last <= finest_limit,
            note: None,
        },
        Err(e) => Outcome {
            max: last,
            l2: last_l2,
            order: None,
            pass: false,
            note: Some(format!("order fit failed: {e}")),
        },
    }
}

/// Surface charts of E³ are padded into E⁴.
pub fn in_e4(spec: &ShapeSpec<f64>) -> Option<ShapeSpec<f64>> {
    match (spec.k(), spec.natural_ambient()) {
        (2, 3) => Some(spec.clone().in_ambient(4)),
        (2, 4) => Some(spec.clone()),
        _ => None,
    }
}

pub fn run_suite(cfg: &SuiteConfig) -> Report {
    let mut ctx = Ctx::new(cfg);
    if cfg.suite.includes(Suite::Algebra) {
        algebra::run(&mut ctx);
    }
    if cfg.suite.includes(Suite::Geometry) {
        geometry::run(&mut ctx);
    }
    if cfg.suite.includes(Suite::Dirac) {
        dirac::run(&mut ctx);
    }
    if cfg.suite.includes(Suite::Weierstrass) {
        weierstrass::run(&mut ctx);
    }
    let mut checks = ctx.records;
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    Report {
        schema_version: SCHEMA_VERSION,
        suite: cfg.suite.name().to_string(),
        checks,
        normalization: ctx.normalization,
        env: Environment {
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed: cfg.seed,
            grid: cfg.sorted_grids(),
            jet: cfg.jet.name().to_string(),
            strict: cfg.strict,
        },
    }
}
