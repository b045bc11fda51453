//! Suite configuration: a JSON document, overridden by command-line flags.

use crate::error::{CliError, CliResult};
use crate::shapes::{parse_shape, ShapeEntry};
use serde::Deserialize;
use std::path::{Path, PathBuf};
use subdirac_core::geometry::JetMode;

pub const MIN_GRID: usize = 8;
pub const DEFAULT_GRIDS: [usize; 3] = [16, 32, 64];
pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra,
    Geometry,
    Dirac,
    Weierstrass,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Self::Algebra => "algebra",
            Self::Geometry => "geometry",
            Self::Dirac => "dirac",
            Self::Weierstrass => "weierstrass",
            Self::All => "all",
        }
    }

    pub fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Jet {
    Analytic,
    #[value(name = "finite_difference")]
    FiniteDifference,
}

impl Jet {
    pub fn mode(self) -> JetMode {
        match self {
            Self::Analytic => JetMode::Analytic,
            Self::FiniteDifference => JetMode::FiniteDifference,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Analytic => "analytic",
            Self::FiniteDifference => "finite_difference",
        }
    }
}

/// Pass thresholds. Every key can be overridden from the config file.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Exact algebraic identities.
    pub algebra: f64,
    pub spin_lift: f64,
    /// Minimum log-log slope of the tubular expansion error.
    pub tubular_slope: f64,
    pub sa_transform: f64,
    pub minimal_potential: f64,
    pub umbilic: f64,
    /// Agreement of quantities computed along two code paths.
    pub identity: f64,
    /// Finest-grid ceiling for discretization residuals.
    pub coarse: f64,
    pub frame: f64,
    pub gauge: f64,
    pub exponent: f64,
    pub order_min: f64,
    pub order_max: f64,
    /// Errors below this on every grid count as exact; no order is fitted.
    pub exact_floor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            algebra: 1e-12,
            spin_lift: 1e-10,
            tubular_slope: 2.7,
            sa_transform: 1e-6,
            minimal_potential: 1e-8,
            umbilic: 1e-8,
            identity: 1e-10,
            coarse: 1e-2,
            frame: 1e-8,
            gauge: 1e-10,
            exponent: 1e-8,
            order_min: 1.7,
            order_max: 2.3,
            exact_floor: 1e-12,
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub path: Option<PathBuf>,
    pub format: Option<String>,
}

/// Raw config document; every key is optional.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub suite: Option<Suite>,
    pub shapes: Option<Vec<String>>,
    pub grids: Option<Vec<usize>>,
    pub jet: Option<Jet>,
    pub tolerances: Option<Tolerances>,
    pub output: Option<OutputSection>,
    pub seed: Option<u64>,
    pub strict: Option<bool>,
}

impl FileConfig {
    pub fn parse(text: &str, origin: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("{origin}: {e}")))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text, &path.display().to_string())
    }
}

/// Flag values; `None` defers to the config file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub suite: Option<Suite>,
    pub grids: Option<Vec<usize>>,
    pub jet: Option<Jet>,
    pub out: Option<PathBuf>,
    pub strict: bool,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: Suite,
    /// `None`: each suite uses its own default shapes.
    pub shapes: Option<Vec<ShapeEntry>>,
    pub grids: Vec<usize>,
    pub jet: Jet,
    pub tolerances: Tolerances,
    pub output: Option<PathBuf>,
    pub seed: u64,
    pub strict: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            suite: Suite::All,
            shapes: None,
            grids: DEFAULT_GRIDS.to_vec(),
            jet: Jet::Analytic,
            tolerances: Tolerances::default(),
            output: None,
            seed: DEFAULT_SEED,
            strict: false,
        }
    }
}

impl SuiteConfig {
    /// Flags > config > defaults.
    pub fn resolve(file: FileConfig, flags: Overrides) -> CliResult<Self> {
        let base = Self::default();
        if let Some(fmt) = file.output.as_ref().and_then(|o| o.format.as_deref()) {
            if fmt != "json" {
                return Err(CliError::Config(format!(
                    "output.format: unsupported format `{fmt}` (only `json`)"
                )));
            }
        }
        let shapes = match file.shapes {
            Some(list) => {
                if list.is_empty() {
                    return Err(CliError::Config("shapes: list is empty".into()));
                }
                Some(list.iter().map(|s| parse_shape(s)).collect::<CliResult<Vec<_>>>()?)
            }
            None => None,
        };
        let grids = flags.grids.or(file.grids).unwrap_or(base.grids);
        if grids.is_empty() {
            return Err(CliError::Config("grids: list is empty".into()));
        }
        if let Some(g) = grids.iter().find(|g| **g < MIN_GRID) {
            return Err(CliError::Config(format!(
                "grids: size {g} is below the minimum {MIN_GRID}"
            )));
        }
        Ok(Self {
            suite: flags.suite.or(file.suite).unwrap_or(base.suite),
            shapes,
            grids,
            jet: flags.jet.or(file.jet).unwrap_or(base.jet),
            tolerances: file.tolerances.unwrap_or(base.tolerances),
            output: flags.out.or(file.output.and_then(|o| o.path)),
            seed: flags.seed.or(file.seed).unwrap_or(base.seed),
            strict: flags.strict || file.strict.unwrap_or(false),
        })
    }

    pub fn finest(&self) -> usize {
        *self.grids.iter().max().expect("grids validated non-empty")
    }

    /// Grids in increasing order, duplicates removed.
    pub fn sorted_grids(&self) -> Vec<usize> {
        let mut g = self.grids.clone();
        g.sort_unstable();
        g.dedup();
        g
    }
}
