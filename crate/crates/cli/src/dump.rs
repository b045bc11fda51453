//! Per-sample field dump as RFC 4180 CSV.
//!
//! Columns (empty where a quantity does not apply to the shape):
//! `index, s1, s2` parameters; `x1..x4` the point; `g11, g12, g22` induced
//! metric; `rho` conformal factor `(g11 + g22)/2` of surfaces; `t1, t2`
//! signed mean-curvature traces per normal; `p_re, p_im, p_abs` surface
//! potential of conformal surfaces; `f_*, g_*, m_*, n_*` extracted spinors;
//! `residual` the pointwise Dirac residual of the zero mode (empty where the
//! stencil is incomplete).

use crate::config::Jet;
use crate::error::{CliError, CliResult};
use crate::shapes::ShapeEntry;
use crate::suites::in_e4;
use std::io::Write;
use std::path::Path;
use subdirac_core::dirac::{apply_dirac, build_curve_dirac, build_surface_dirac_e4, curve_zero_mode, Residual};
use subdirac_core::geometry::{conformal_data, default_conformal_tolerance, shape_data, FrameOptions, ShapeOptions};
use subdirac_core::grid::Grid;
use subdirac_core::scalar::C;
use subdirac_core::weierstrass::{spinors_from_immersion_e4, verify_zero_mode, ExtractOptions};

pub const HEADER: [&str; 26] = [
    "index", "s1", "s2", "x1", "x2", "x3", "x4", "g11", "g12", "g22", "rho", "t1", "t2", "p_re", "p_im", "p_abs",
    "f_re", "f_im", "f_abs", "g_re", "g_im", "m_re", "m_im", "n_re", "n_im", "residual",
];

fn col(name: &str) -> usize {
    HEADER.iter().position(|h| *h == name).expect("known column")
}

fn num(x: f64) -> String {
    format!("{x:e}")
}

fn pointwise(res: &[Residual<f64>], idx: usize) -> Option<f64> {
    if !res.iter().all(|r| r.valid[idx]) {
        return None;
    }
    Some(
        res.iter()
            .map(|r| r.field.get(idx).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
            .fold(0.0, f64::max),
    )
}

/// Table of per-sample fields on the shape's default domain, header first.
pub fn field_table(entry: &ShapeEntry, grid: usize, jet: Jet) -> CliResult<Vec<Vec<String>>> {
    if grid < crate::config::MIN_GRID {
        return Err(CliError::Config(format!(
            "grid {grid} is below the minimum {}",
            crate::config::MIN_GRID
        )));
    }
    let chart = entry.spec.chart(&vec![grid; entry.spec.k()])?;
    field_table_on(entry, chart.grid(), jet)
}

/// Same as [`field_table`] on an explicit lattice.
pub fn field_table_on(entry: &ShapeEntry, grid: &Grid<f64>, jet: Jet) -> CliResult<Vec<Vec<String>>> {
    let spec = &entry.spec;
    let k = spec.k();
    let chart = spec.chart_on(grid.clone())?;
    let options = ShapeOptions {
        jet: jet.mode(),
        frame: FrameOptions { parallel: k == 1 },
        strict: false,
    };
    let shape = shape_data(&chart, options)?;
    let mut rows: Vec<Vec<String>> = (0..chart.len()).map(|_| vec![String::new(); HEADER.len()]).collect();

    for (idx, row) in rows.iter_mut().enumerate() {
        row[0] = idx.to_string();
        let s = chart.grid().coords(idx);
        for a in 0..k {
            row[col("s1") + a] = num(s[a]);
        }
        for (i, x) in chart.point(idx).iter().enumerate() {
            row[col("x1") + i] = num(*x);
        }
        let g = &shape.metric.metric[idx];
        row[col("g11")] = num(g[(0, 0)]);
        if k == 2 {
            row[col("g12")] = num(g[(0, 1)]);
            row[col("g22")] = num(g[(1, 1)]);
            row[col("rho")] = num(0.5 * (g[(0, 0)] + g[(1, 1)]));
        }
        for a in 0..shape.codim().min(2) {
            row[col("t1") + a] = num(shape.signed_mean_trace(idx, a));
        }
    }

    if k == 1 {
        let op = build_curve_dirac(&chart, &shape)?;
        let psi = curve_zero_mode(&chart, &shape, &op, &[C::new(0.6, 0.1), C::new(-0.3, 0.7)])?;
        let res = [apply_dirac(&op, &psi)?];
        for (idx, row) in rows.iter_mut().enumerate() {
            if let Some(r) = pointwise(&res, idx) {
                row[col("residual")] = num(r);
            }
        }
    } else if let Some(e4) = in_e4(spec) {
        let chart4 = e4.chart_on(grid.clone())?;
        let shape4 = shape_data(
            &chart4,
            ShapeOptions {
                jet: jet.mode(),
                ..Default::default()
            },
        )?;
        let tol = default_conformal_tolerance(&chart4, jet.mode());
        let conf = conformal_data(&chart4, &shape4.metric, tol, false)?;
        if conf.is_conformal() {
            let op = build_surface_dirac_e4(&chart4, &shape4, &conf)?;
            let options = ExtractOptions {
                jet: jet.mode(),
                ..Default::default()
            };
            let sp = spinors_from_immersion_e4(&chart4, &shape4, &conf, options)?;
            let res = verify_zero_mode(&chart4, &shape4, &conf, &sp)?;
            for (idx, row) in rows.iter_mut().enumerate() {
                let p = op.potential()[idx];
                row[col("p_re")] = num(p.re);
                row[col("p_im")] = num(p.im);
                row[col("p_abs")] = num(p.norm());
                for (name, z) in [("f", sp.f[idx]), ("g", sp.g[idx]), ("m", sp.m[idx]), ("n", sp.n[idx])] {
                    row[col(&format!("{name}_re"))] = num(z.re);
                    row[col(&format!("{name}_im"))] = num(z.im);
                }
                row[col("f_abs")] = num(sp.f[idx].norm());
                if let Some(r) = pointwise(&res, idx) {
                    row[col("residual")] = num(r);
                }
            }
        }
    }
    let mut table = vec![HEADER.iter().map(|h| h.to_string()).collect()];
    table.extend(rows);
    Ok(table)
}

pub fn write_table<W: Write>(table: &[Vec<String>], out: W) -> CliResult<usize> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(out);
    for row in table {
        w.write_record(row)?;
    }
    w.flush().map_err(|e| CliError::io("<csv>", e))?;
    Ok(table.len() - 1)
}

pub fn write_fields<W: Write>(entry: &ShapeEntry, grid: usize, jet: Jet, out: W) -> CliResult<usize> {
    write_table(&field_table(entry, grid, jet)?, out)
}

/// Writes a finished table; building it first means a failed computation
/// leaves no partial file.
pub fn table_to_path(table: &[Vec<String>], path: &Path) -> CliResult<usize> {
    let file = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(file);
    for row in table {
        w.write_record(row)?;
    }
    w.flush().map_err(|e| CliError::io(path, e))?;
    Ok(table.len() - 1)
}

pub fn dump_to_path(entry: &ShapeEntry, grid: usize, jet: Jet, path: &Path) -> CliResult<usize> {
    table_to_path(&field_table(entry, grid, jet)?, path)
}
