use super::dirac::conformal_surface;
use super::{convergence_with, in_e4, max_of, rms, Ctx, Outcome};
use crate::report::{NormalizationFinding, STATED_NORMALIZATION_EXPONENT};
use crate::shapes::parse_shape;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subdirac_core::geometry::{shape_data, JetMode, ShapeOptions, ShapeSpec};
use subdirac_core::linalg::Mat;
use subdirac_core::weierstrass::{
    double_gauge_defect, reconstruct_immersion, regression_exponent, scaling_exponent, spinors_from_immersion_e4,
    verify_weierstrass_frame, verify_zero_mode, ExtractOptions, WeierstrassSpinors,
};
use subdirac_core::{Error, Result};

pub const DEFAULT_SHAPES: [&str; 3] = ["product_torus(1,1)", "sphere(1)", "circle(1)"];
pub const SCALINGS: [f64; 2] = [0.5, 2.0];

#[derive(Default)]
struct Study {
    h: Vec<f64>,
    zero_max: Vec<f64>,
    zero_l2: Vec<f64>,
    align: Vec<f64>,
    closed: Vec<f64>,
    path: Vec<f64>,
    normalization: Vec<f64>,
}

fn study(ctx: &Ctx, spec: &ShapeSpec<f64>, grids: &[usize]) -> Result<Option<Study>> {
    let mut s = Study::default();
    for &n in grids {
        let Some((chart, shape, conf)) = conformal_surface(ctx, spec, n)? else {
            return Ok(None);
        };
        let options = ExtractOptions {
            jet: ctx.cfg.jet.mode(),
            ..Default::default()
        };
        let sp = spinors_from_immersion_e4(&chart, &shape, &conf, options)?;
        let res = verify_zero_mode(&chart, &shape, &conf, &sp)?;
        let rec = reconstruct_immersion(&sp, &chart, 0)?;
        s.h.push(chart.grid().max_spacing());
        s.zero_max.push(res.iter().map(|r| r.max_norm()).fold(0.0, f64::max));
        s.zero_l2.push(res.iter().map(|r| r.l2_norm()).fold(0.0, f64::max));
        s.align.push(rec.alignment_error);
        s.closed.push(rec.closedness_residual);
        s.path.push(rec.path_discrepancy);
        s.normalization.push(sp.normalization_residual);
    }
    Ok(Some(s))
}

fn spinors(spec: &ShapeSpec<f64>, n: usize) -> Result<(WeierstrassSpinors<f64>, Vec<f64>)> {
    let chart = spec.chart(&[n, n])?;
    let shape = shape_data(&chart, ShapeOptions::default())?;
    let m = subdirac_core::geometry::induced_metric(&chart, &chart.jet(JetMode::Analytic))?;
    let conf = subdirac_core::geometry::conformal_data(&chart, &m, 1e-6, true)?;
    let sp = spinors_from_immersion_e4(&chart, &shape, &conf, ExtractOptions::default())?;
    Ok((sp, conf.rho))
}

pub(super) fn run(ctx: &mut Ctx) {
    let tol = ctx.cfg.tolerances.clone();
    let grids = ctx.cfg.sorted_grids();
    let finest = ctx.cfg.finest();
    let analytic = ctx.cfg.jet.mode() == JetMode::Analytic;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.cfg.seed);

    for entry in ctx.shapes(&DEFAULT_SHAPES) {
        let label = entry.label.clone();

        if let Some(spec) = in_e4(&entry.spec) {
            let names = ["zero_mode", "reconstruction", "closedness", "normalization"]
                .map(|k| format!("weierstrass.{k}.{label}"));
            match study(ctx, &spec, &grids) {
                Ok(None) => {}
                Err(e) => {
                    for name in names {
                        ctx.fail(name, "spinor representation", &e);
                    }
                }
                Ok(Some(s)) => {
                    let [zm, rc, cl, nm] = names;
                    ctx.check(zm, "spinors are zero modes", || {
                        Ok(convergence_with(&tol, &s.h, &s.zero_max, &s.zero_l2, tol.coarse))
                    });
                    ctx.check(rc, "immersion from spinors", || {
                        Ok(convergence_with(&tol, &s.h, &s.align, &s.align, tol.coarse))
                    });
                    ctx.check(cl, "immersion from spinors", || {
                        let mut o = convergence_with(&tol, &s.h, &s.closed, &s.path, tol.coarse);
                        if o.note.is_none() {
                            o.note = Some("l2 column holds the path discrepancy".into());
                        }
                        Ok(o)
                    });
                    ctx.check(nm, "spinor normalization", || {
                        let limit = if analytic { tol.identity } else { tol.coarse };
                        Ok(Outcome::within(max_of(&s.normalization), rms(&s.normalization), limit)
                            .noted("(|f|^2+|g|^2)(|m|^2+|n|^2) = rho"))
                    });
                }
            }
        }

        let n = entry.spec.natural_ambient();
        let omega0 = Mat::from_fn(n, n, |i, j| if i < j { rng.gen_range(-1.0..1.0) } else { 0.0 });
        let omega0 = &omega0 - &omega0.transpose();
        let spec = entry.spec.clone();
        let runs: Vec<_> = if analytic {
            vec![ctx.prepare(&spec, finest, false).map(|p| (p, finest))]
        } else {
            grids
                .iter()
                .map(|&g| ctx.prepare(&spec, g, false).map(|p| (p, g)))
                .collect()
        };
        let gauge_run = ctx.prepare(&spec, finest, false);
        ctx.check(
            format!("weierstrass.frame.{label}"),
            "tangent vectors from spinor bilinears",
            || {
                let (mut hs, mut maxs, mut l2s) = (Vec::new(), Vec::new(), Vec::new());
                for run in runs {
                    let ((chart, shape), _) = run?;
                    let v = verify_weierstrass_frame(&chart, &shape)?;
                    hs.push(chart.grid().max_spacing());
                    maxs.push(v.max_residual);
                    l2s.push(rms(&v.residual));
                }
                if analytic {
                    Ok(Outcome::within(maxs[0], l2s[0], tol.frame))
                } else {
                    Ok(convergence_with(&tol, &hs, &maxs, &l2s, tol.coarse))
                }
            },
        );
        ctx.check(
            format!("weierstrass.frame_gauge.{label}"),
            "tangent vectors from spinor bilinears",
            || {
                let (chart, shape) = gauge_run?;
                let d = double_gauge_defect(&chart, &shape, &omega0)?;
                Ok(Outcome::within(d, d, tol.gauge).noted("constant spin gauge change"))
            },
        );
    }

    let sphere = parse_shape("sphere(1)").expect("catalog").spec;
    let fd_runs: Vec<_> = grids
        .iter()
        .map(|&g| -> Result<_> {
            let chart = sphere.chart(&[g, g])?;
            let options = ShapeOptions {
                jet: JetMode::FiniteDifference,
                ..Default::default()
            };
            Ok((shape_data(&chart, options)?, chart))
        })
        .collect();
    ctx.check(
        "weierstrass.frame_convergence.sphere(1)".into(),
        "tangent vectors from spinor bilinears",
        || {
            let (mut hs, mut maxs, mut l2s) = (Vec::new(), Vec::new(), Vec::new());
            for run in fd_runs {
                let (shape, chart) = run?;
                let v = verify_weierstrass_frame(&chart, &shape)?;
                hs.push(chart.grid().max_spacing());
                maxs.push(v.max_residual);
                l2s.push(rms(&v.residual));
            }
            Ok(convergence_with(&tol, &hs, &maxs, &l2s, tol.coarse)
                .noted("finite-difference shape data vs analytic tangents"))
        },
    );

    let coarse = grids[0];
    let mut resolved = None;
    ctx.check(
        "weierstrass.normalization_exponent".into(),
        "spinor normalization",
        || {
            let torus = parse_shape("product_torus(1,1)").expect("catalog").spec;
            let sphere = parse_shape("sphere(1)").expect("catalog").spec.in_ambient(4);
            let mut exps = Vec::new();
            for base in [&torus, &sphere] {
                let (sp, _) = spinors(base, coarse)?;
                for lambda in SCALINGS {
                    let (scaled, _) = spinors(&base.clone().scaled(lambda), coarse)?;
                    exps.extend(scaling_exponent(&sp, &scaled, lambda)?);
                }
            }
            let (sp, rho) = spinors(&sphere, coarse)?;
            exps.push(regression_exponent(&sp, &rho)?);
            let e = *exps
                .first()
                .ok_or_else(|| Error::Validation("no exponent samples".into()))?;
            let dev: Vec<f64> = exps.iter().map(|x| (x - e).abs()).collect();
            resolved = Some(e);
            let deviates = (e - STATED_NORMALIZATION_EXPONENT).abs() > tol.exponent;
            let note = format!(
                "resolved exponent {e}; {}",
                if deviates {
                    "differs from the stated 1/2"
                } else {
                    "matches the stated 1/2"
                }
            );
            Ok(Outcome::within(max_of(&dev), rms(&dev), tol.exponent).noted(note))
        },
    );
    if let Some(e) = resolved {
        ctx.normalization = Some(NormalizationFinding {
            exponent: e,
            stated_exponent: STATED_NORMALIZATION_EXPONENT,
            deviates: (e - STATED_NORMALIZATION_EXPONENT).abs() > tol.exponent,
        });
    }
}
