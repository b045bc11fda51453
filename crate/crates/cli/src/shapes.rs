//! Text form of catalog shapes: `name` or `name(p1,p2,…)`.

use crate::error::{CliError, CliResult};
use subdirac_core::geometry::{GraphKind, Shape, ShapeSpec};

/// Parsed shape with its canonical label, e.g. `helix(1,0.5)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShapeEntry {
    pub label: String,
    pub spec: ShapeSpec<f64>,
}

pub const CATALOG: [(&str, &str); 9] = [
    ("plane(shear=0)", "(s1 + shear s2, s2, 0) on [-1,1]^2"),
    ("line", "straight segment in E^2"),
    ("circle(R=1)", "arclength circle in E^2, periodic"),
    ("helix(R=1,c=0.5)", "arclength helix (R cos t, R sin t, c t) in E^3"),
    ("sphere(R=1)", "inverse stereographic chart on [-1,1]^2, conformal"),
    ("catenoid(a=1)", "minimal, conformal, periodic in u"),
    ("enneper", "minimal, conformal, on [-1,1]^2"),
    ("product_torus(r1=1,r2=1)", "flat torus in E^4, periodic in both axes"),
    ("graph(F)", "height graph, F in paraboloid|saddle|wave|gaussian"),
];

fn fmt_num(x: f64) -> String {
    format!("{x}")
}

fn bad(text: &str, why: impl Into<String>) -> CliError {
    CliError::Catalog(text.to_string(), why.into())
}

fn numbers(text: &str, args: &[&str], defaults: &[f64], positive: bool) -> CliResult<Vec<f64>> {
    if args.is_empty() {
        return Ok(defaults.to_vec());
    }
    if args.len() != defaults.len() {
        return Err(bad(
            text,
            format!("expected {} parameter(s), got {}", defaults.len(), args.len()),
        ));
    }
    args.iter()
        .map(|a| {
            let v: f64 = a
                .trim()
                .parse()
                .map_err(|_| bad(text, format!("`{a}` is not a number")))?;
            if !v.is_finite() || (positive && v <= 0.0) {
                return Err(bad(text, format!("parameter {v} out of range")));
            }
            Ok(v)
        })
        .collect()
}

pub fn parse_shape(text: &str) -> CliResult<ShapeEntry> {
    let t = text.trim();
    let (name, args): (&str, Vec<&str>) = match t.find('(') {
        Some(open) => {
            let inner = t[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| bad(text, "missing closing parenthesis"))?;
            let args = if inner.trim().is_empty() {
                Vec::new()
            } else {
                inner.split(',').collect()
            };
            (t[..open].trim(), args)
        }
        None => (t, Vec::new()),
    };
    let (shape, params) = match name {
        "plane" => {
            let p = numbers(text, &args, &[0.0], false)?;
            (Shape::Plane { shear: p[0] }, p)
        }
        "line" => (Shape::Line, numbers(text, &args, &[], true)?),
        "circle" => {
            let p = numbers(text, &args, &[1.0], true)?;
            (Shape::Circle { radius: p[0] }, p)
        }
        "helix" => {
            let p = numbers(text, &args, &[1.0, 0.5], true)?;
            (
                Shape::Helix {
                    radius: p[0],
                    pitch: p[1],
                },
                p,
            )
        }
        "sphere" => {
            let p = numbers(text, &args, &[1.0], true)?;
            (Shape::Sphere { radius: p[0] }, p)
        }
        "catenoid" => {
            let p = numbers(text, &args, &[1.0], true)?;
            (Shape::Catenoid { a: p[0] }, p)
        }
        "enneper" => (Shape::Enneper, numbers(text, &args, &[], true)?),
        "product_torus" => {
            let p = numbers(text, &args, &[1.0, 1.0], true)?;
            (Shape::ProductTorus { r1: p[0], r2: p[1] }, p)
        }
        "graph" => {
            let [kind] = args.as_slice() else {
                return Err(bad(text, "graph takes exactly one of paraboloid|saddle|wave|gaussian"));
            };
            let kind =
                GraphKind::parse(kind.trim()).ok_or_else(|| bad(text, format!("unknown height function `{kind}`")))?;
            let label = format!("graph({})", kind.name());
            return Ok(ShapeEntry {
                label,
                spec: ShapeSpec::new(Shape::Graph { kind }),
            });
        }
        _ => return Err(bad(text, "not in the catalog (see `subdirac list-shapes`)")),
    };
    let label = if params.is_empty() {
        name.to_string()
    } else {
        format!(
            "{name}({})",
            params.iter().map(|p| fmt_num(*p)).collect::<Vec<_>>().join(",")
        )
    };
    Ok(ShapeEntry {
        label,
        spec: ShapeSpec::new(shape),
    })
}

pub fn list_shapes() -> String {
    let width = CATALOG.iter().map(|(n, _)| n.len()).max().unwrap_or(0);
    CATALOG.iter().map(|(n, d)| format!("{n:<width$}  {d}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_labels() {
        assert_eq!(parse_shape("sphere").unwrap().label, "sphere(1)");
        assert_eq!(parse_shape(" helix( 2 , 0.25 ) ").unwrap().label, "helix(2,0.25)");
        assert_eq!(parse_shape("enneper").unwrap().label, "enneper");
        assert_eq!(parse_shape("graph(wave)").unwrap().label, "graph(wave)");
        assert_eq!(
            parse_shape("product_torus(1,1)").unwrap().spec.shape,
            Shape::ProductTorus { r1: 1.0, r2: 1.0 }
        );
    }

    #[test]
    fn rejects_garbage() {
        for s in [
            "torus",
            "sphere(-1)",
            "helix(1)",
            "circle(x)",
            "graph(cubic)",
            "sphere(1",
            "enneper(2)",
        ] {
            assert!(matches!(parse_shape(s), Err(CliError::Catalog(..))), "{s}");
        }
    }
}
