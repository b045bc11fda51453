use super::{convergence_with, max_of, rms, Ctx, Outcome};
use subdirac_core::convergence::fit_order;
use subdirac_core::dirac::sa_transform_check;
use subdirac_core::geometry::{expansion_error, induced_metric, tubular_metric, JetMode, Shape};

pub const DEFAULT_SHAPES: [&str; 6] = [
    "circle(2)",
    "helix(1,0.5)",
    "sphere(1)",
    "catenoid(1)",
    "enneper",
    "graph(wave)",
];
/// Normal offsets for the tubular expansion, relative to the focal radius scale.
pub const TUBULAR_OFFSETS: [f64; 3] = [0.1, 0.05, 0.025];
pub const SA_STEP: f64 = 1e-4;

pub(super) fn run(ctx: &mut Ctx) {
    let tol = ctx.cfg.tolerances.clone();
    let grids = ctx.cfg.sorted_grids();
    let coarsest = grids[0];
    let finest = ctx.cfg.finest();
    let analytic = ctx.cfg.jet.mode() == JetMode::Analytic;

    for entry in ctx.shapes(&DEFAULT_SHAPES) {
        let spec = entry.spec.clone();
        let label = entry.label.clone();

        ctx.check(format!("geometry.metric_fd.{label}"), "induced metric", || {
            let (mut hs, mut maxs, mut l2s) = (Vec::new(), Vec::new(), Vec::new());
            for &n in &grids {
                let chart = spec.chart(&Ctx::samples(&spec, n))?;
                let exact = induced_metric(&chart, &chart.jet(JetMode::Analytic))?;
                let fd = induced_metric(&chart, &chart.finite_difference_jet())?;
                let errs: Vec<f64> = exact
                    .metric
                    .iter()
                    .zip(&fd.metric)
                    .map(|(a, b)| (a - b).max_abs_real())
                    .collect();
                hs.push(chart.grid().max_spacing());
                maxs.push(max_of(&errs));
                l2s.push(rms(&errs));
            }
            // the order is the criterion; the absolute cap only guards unfitted runs
            let cap = if hs.len() < 3 { tol.coarse } else { f64::INFINITY };
            Ok(convergence_with(&tol, &hs, &maxs, &l2s, cap))
        });

        let prepared = ctx.prepare(&spec, coarsest, false);
        ctx.check(format!("geometry.tubular.{label}"), "tubular volume expansion", || {
            let (chart, shape) = prepared?;
            let kappa = shape.max_abs_curvature();
            let scale = if kappa > 0.0 { (1.0 / kappa).min(1.0) } else { 1.0 };
            let codim = shape.codim();
            let qs: Vec<f64> = TUBULAR_OFFSETS.iter().map(|q| q * scale).collect();
            let mut errs = Vec::new();
            for q in &qs {
                let mut v = vec![0.0; codim];
                v[0] = *q;
                errs.push(expansion_error(&tubular_metric(&chart, &shape, &v)?));
            }
            let last = *errs.last().expect("three offsets");
            if errs.iter().all(|e| *e <= tol.exact_floor) {
                return Ok(Outcome::within(last, rms(&errs), tol.exact_floor)
                    .noted("second-order expansion exact to roundoff"));
            }
            let slope = fit_order(&qs, &errs)?;
            Ok(Outcome {
                max: last,
                l2: rms(&errs),
                order: Some(slope),
                pass: slope >= tol.tubular_slope,
                note: None,
            })
        });

        let prepared = ctx.prepare(&spec, finest, false);
        ctx.check(
            format!("geometry.sa_transform.{label}"),
            "self-adjoint normal derivative",
            || {
                let (chart, shape) = prepared?;
                let kappa = shape.max_abs_curvature().max(1.0);
                let r = sa_transform_check(&chart, &shape, SA_STEP / kappa)?;
                let errs: Vec<f64> = r.measured.iter().zip(&r.expected).map(|(m, e)| (m - e).abs()).collect();
                Ok(Outcome::within(r.max_error, rms(&errs), tol.sa_transform))
            },
        );

        let umbilic = matches!(spec.shape, Shape::Sphere { .. });
        let saddle = matches!(spec.shape, Shape::Catenoid { .. } | Shape::Enneper);
        if (umbilic || saddle) && spec.natural_ambient() == 3 {
            let prepared = ctx.prepare(&spec, finest, false);
            ctx.check(format!("geometry.umbilic.{label}"), "H^2 - K", || {
                let (_, shape) = prepared?;
                let gap: Vec<f64> = (0..shape.len())
                    .map(|idx| {
                        let k = shape.principal_curvatures(idx, 0);
                        let h = 0.5 * (k[0] + k[1]);
                        h * h - k[0] * k[1]
                    })
                    .collect();
                if umbilic {
                    let limit = if analytic { tol.umbilic } else { tol.coarse };
                    let abs: Vec<f64> = gap.iter().map(|g| g.abs()).collect();
                    Ok(Outcome::within(max_of(&abs), rms(&abs), limit).noted("umbilic: H^2 - K vanishes"))
                } else {
                    let min = gap.iter().copied().fold(f64::INFINITY, f64::min);
                    Ok(Outcome {
                        max: min,
                        l2: rms(&gap),
                        order: None,
                        pass: min > 0.0,
                        note: Some("no umbilics: residual is min(H^2 - K), must be positive".into()),
                    })
                }
            });
        }
    }
}
