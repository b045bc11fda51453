//! Charts described by a JSON document:
//!
//! ```json
//! {"shape": "sphere", "params": {"radius": 2},
//!  "grid": {"sizes": [32, 32], "ranges": [[-1, 1], [-0.5, 0.5]], "periodic": [false, false]},
//!  "jet": "finite_difference"}
//! ```
//!
//! `params`, `grid.ranges`, `grid.periodic` and `jet` are optional; missing
//! ranges and periodicity come from the shape's default domain.

use crate::config::{Jet, MIN_GRID};
use crate::error::{CliError, CliResult};
use crate::shapes::{parse_shape, ShapeEntry};
use serde::Deserialize;
use serde_json::{Map, Value};
use std::path::Path;
use subdirac_core::grid::{Axis, Grid};

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridDocument {
    pub sizes: Vec<usize>,
    #[serde(default)]
    pub ranges: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    pub periodic: Option<Vec<bool>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartDocument {
    pub shape: String,
    #[serde(default)]
    pub params: Map<String, Value>,
    pub grid: GridDocument,
    #[serde(default = "analytic")]
    pub jet: Jet,
}

fn analytic() -> Jet {
    Jet::Analytic
}

/// Parameter names in positional order, per catalog shape.
fn param_names(shape: &str) -> Option<&'static [&'static str]> {
    Some(match shape {
        "plane" => &["shear"],
        "line" | "enneper" => &[],
        "circle" | "sphere" => &["radius"],
        "helix" => &["radius", "pitch"],
        "catenoid" => &["a"],
        "product_torus" => &["r1", "r2"],
        "graph" => &["F"],
        _ => return None,
    })
}

/// A document resolved to a catalog shape and an explicit grid.
#[derive(Clone, Debug)]
pub struct ResolvedChart {
    pub entry: ShapeEntry,
    pub grid: Grid<f64>,
    pub jet: Jet,
}

impl ChartDocument {
    pub fn parse(text: &str) -> CliResult<Self> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Config(format!("chart document line {} column {}: {e}", e.line(), e.column())))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text)
    }

    /// Canonical text form, e.g. `helix(1,0.5)`.
    fn shape_text(&self) -> CliResult<String> {
        let names = param_names(&self.shape).ok_or_else(|| {
            CliError::Catalog(
                self.shape.clone(),
                "not in the catalog (see `subdirac list-shapes`)".into(),
            )
        })?;
        if let Some(extra) = self.params.keys().find(|k| !names.contains(&k.as_str())) {
            return Err(CliError::Catalog(
                self.shape.clone(),
                format!("unknown parameter `{extra}`"),
            ));
        }
        if self.params.is_empty() {
            return Ok(self.shape.clone());
        }
        let mut args = Vec::new();
        for name in names {
            let v = self
                .params
                .get(*name)
                .ok_or_else(|| CliError::Catalog(self.shape.clone(), format!("missing parameter `{name}`")))?;
            args.push(match v {
                Value::Number(x) => x.to_string(),
                Value::String(s) => s.clone(),
                other => {
                    return Err(CliError::Catalog(
                        self.shape.clone(),
                        format!("`{name}` = {other} is not a number"),
                    ))
                }
            });
        }
        Ok(format!("{}({})", self.shape, args.join(",")))
    }

    pub fn resolve(&self) -> CliResult<ResolvedChart> {
        let entry = parse_shape(&self.shape_text()?)?;
        let domain = entry.spec.domain();
        let k = domain.len();
        let g = &self.grid;
        let count = |what: &str, len: usize| {
            if len == k {
                Ok(())
            } else {
                Err(CliError::Config(format!(
                    "grid.{what} has {len} entries, {} needs {k}",
                    entry.label
                )))
            }
        };
        count("sizes", g.sizes.len())?;
        if let Some(r) = &g.ranges {
            count("ranges", r.len())?;
        }
        if let Some(p) = &g.periodic {
            count("periodic", p.len())?;
        }
        let mut axes = Vec::with_capacity(k);
        for (a, &(start, end, periodic)) in domain.iter().enumerate() {
            let n = g.sizes[a];
            if n < MIN_GRID {
                return Err(CliError::Config(format!(
                    "grid size {n} is below the minimum {MIN_GRID}"
                )));
            }
            let [s, e] = g.ranges.as_ref().map_or([start, end], |r| r[a]);
            let p = g.periodic.as_ref().map_or(periodic, |p| p[a]);
            axes.push(Axis::new(n, s, e, p)?);
        }
        Ok(ResolvedChart {
            entry,
            grid: Grid::new(axes)?,
            jet: self.jet,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_follow_the_shape_domain() {
        let doc = ChartDocument::parse(r#"{"shape": "product_torus", "grid": {"sizes": [16, 24]}}"#).unwrap();
        let r = doc.resolve().unwrap();
        assert_eq!(r.entry.label, "product_torus(1,1)");
        assert_eq!(r.grid.shape(), vec![16, 24]);
        assert!(r.grid.axis(0).periodic && r.grid.axis(1).periodic);
        assert_eq!(r.jet, Jet::Analytic);
    }

    #[test]
    fn named_params_and_overrides() {
        let doc = ChartDocument::parse(
            r#"{"shape": "helix", "params": {"pitch": 0.25, "radius": 2},
                "grid": {"sizes": [40], "ranges": [[0, 3]], "periodic": [false]},
                "jet": "finite_difference"}"#,
        )
        .unwrap();
        let r = doc.resolve().unwrap();
        assert_eq!(r.entry.label, "helix(2,0.25)");
        assert_eq!(r.grid.axis(0).end, 3.0);
        assert_eq!(r.jet, Jet::FiniteDifference);
        let g = ChartDocument::parse(r#"{"shape": "graph", "params": {"F": "saddle"}, "grid": {"sizes": [8, 8]}}"#)
            .unwrap()
            .resolve()
            .unwrap();
        assert_eq!(g.entry.label, "graph(saddle)");
    }

    #[test]
    fn rejects_bad_documents() {
        let doc = |s: &str| ChartDocument::parse(s).and_then(|d| d.resolve());
        assert!(matches!(
            doc(r#"{"shape": "sphere", "grid": {"sizes": [8]}}"#),
            Err(CliError::Config(_))
        ));
        assert!(matches!(
            doc(r#"{"shape": "sphere", "grid": {"sizes": [4, 4]}}"#),
            Err(CliError::Config(_))
        ));
        assert!(matches!(
            doc(r#"{"shape": "torus", "grid": {"sizes": [8, 8]}}"#),
            Err(CliError::Catalog(..))
        ));
        assert!(matches!(
            doc(r#"{"shape": "sphere", "params": {"R": 1}, "grid": {"sizes": [8, 8]}}"#),
            Err(CliError::Catalog(..))
        ));
        assert!(matches!(
            doc(r#"{"shape": "helix", "params": {"radius": 1}, "grid": {"sizes": [8]}}"#),
            Err(CliError::Catalog(..))
        ));
        match doc("{\"shape\": \"sphere\",\n \"grid\": {\"sizes\": [8, 8]}, \"colour\": 1}") {
            Err(CliError::Config(m)) => assert!(m.contains("line 2"), "{m}"),
            other => panic!("{other:?}"),
        }
    }
}
