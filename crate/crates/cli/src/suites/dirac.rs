use super::{convergence_with, in_e4, max_of, rms, Ctx, Outcome};
use subdirac_core::dirac::{
    apply_dirac, build_curve_dirac, build_surface_dirac_e4, curve_zero_mode, SURFACE_POTENTIAL_FACTOR,
};
use subdirac_core::geometry::{
    conformal_data, default_conformal_tolerance, ConformalData, ImmersionChart, JetMode, Shape, ShapeData, ShapeSpec,
    WEINGARTEN_SIGN,
};
use subdirac_core::scalar::C;
use subdirac_core::Result;

pub const DEFAULT_SHAPES: [&str; 6] = [
    "circle(1)",
    "helix(1,0.5)",
    "plane",
    "sphere(1)",
    "catenoid(1)",
    "enneper",
];

/// Shape data and conformal factor for a surface padded into E⁴; `None` when
/// the chart is not conformal.
pub(super) type ConformalSurface = (ImmersionChart<f64>, ShapeData<f64>, ConformalData<f64>);

pub(super) fn conformal_surface(ctx: &Ctx, spec: &ShapeSpec<f64>, n: usize) -> Result<Option<ConformalSurface>> {
    let (chart, shape) = ctx.prepare(spec, n, false)?;
    let tol = default_conformal_tolerance(&chart, ctx.cfg.jet.mode());
    let conf = conformal_data(&chart, &shape.metric, tol, false)?;
    if !conf.is_conformal() {
        return Ok(None);
    }
    Ok(Some((chart, shape, conf)))
}

/// `t_a = s_W Σ h_αβ g^αβ` straight from the second fundamental form.
fn direct_potential(shape: &ShapeData<f64>, conf: &ConformalData<f64>, idx: usize) -> C<f64> {
    let t = |a: usize| {
        let h = shape.second_fundamental(idx, a);
        let gi = &shape.metric.inverse[idx];
        let mut s = 0.0;
        for al in 0..2 {
            for be in 0..2 {
                s += h[(al, be)] * gi[(al, be)];
            }
        }
        f64::from(WEINGARTEN_SIGN) * s
    };
    let c = -SURFACE_POTENTIAL_FACTOR * conf.rho[idx].sqrt();
    C::new(c * t(0), c * t(1))
}

pub(super) fn run(ctx: &mut Ctx) {
    let tol = ctx.cfg.tolerances.clone();
    let grids = ctx.cfg.sorted_grids();
    let finest = ctx.cfg.finest();
    let analytic = ctx.cfg.jet.mode() == JetMode::Analytic;
    let psi0 = [C::new(0.6, 0.1), C::new(-0.3, 0.7)];

    for entry in ctx.shapes(&DEFAULT_SHAPES) {
        let label = entry.label.clone();
        if entry.spec.k() == 1 {
            let runs: Vec<_> = grids.iter().map(|&n| ctx.prepare(&entry.spec, n, true)).collect();
            ctx.check(
                format!("dirac.curve_zero_mode.{label}"),
                "curve operator zero mode",
                || {
                    let (mut hs, mut maxs, mut l2s) = (Vec::new(), Vec::new(), Vec::new());
                    for run in runs {
                        let (chart, shape) = run?;
                        let op = build_curve_dirac(&chart, &shape)?;
                        let psi = curve_zero_mode(&chart, &shape, &op, &psi0)?;
                        let r = apply_dirac(&op, &psi)?;
                        hs.push(chart.grid().max_spacing());
                        maxs.push(r.max_norm());
                        l2s.push(r.l2_norm());
                    }
                    Ok(convergence_with(&tol, &hs, &maxs, &l2s, tol.coarse))
                },
            );
            continue;
        }
        let Some(spec) = in_e4(&entry.spec) else { continue };
        let surface = match conformal_surface(ctx, &spec, finest) {
            Ok(Some(s)) => s,
            Ok(None) => continue,
            Err(e) => {
                ctx.fail(format!("dirac.potential_paths.{label}"), "surface potential", &e);
                continue;
            }
        };
        let (chart, shape, conf) = surface;
        let op = match build_surface_dirac_e4(&chart, &shape, &conf) {
            Ok(op) => op,
            Err(e) => {
                ctx.fail(format!("dirac.potential_paths.{label}"), "surface potential", &e);
                continue;
            }
        };
        let p = op.potential().to_vec();

        ctx.check(format!("dirac.potential_paths.{label}"), "surface potential", || {
            let errs: Vec<f64> = (0..chart.len())
                .map(|i| (p[i] - direct_potential(&shape, &conf, i)).norm())
                .collect();
            Ok(Outcome::within(max_of(&errs), rms(&errs), tol.identity))
        });

        if entry.spec.natural_ambient() == 3 {
            ctx.check(format!("dirac.potential_real.{label}"), "surface potential", || {
                let im: Vec<f64> = p.iter().map(|z| z.im.abs()).collect();
                Ok(Outcome::within(max_of(&im), rms(&im), tol.identity))
            });
        }

        let limit = |exact: f64| if analytic { exact } else { tol.coarse };
        match entry.spec.shape {
            Shape::Sphere { .. } => {
                ctx.check(format!("dirac.sphere_potential.{label}"), "surface potential", || {
                    let errs: Vec<f64> = (0..chart.len())
                        .map(|i| {
                            let [a, b] = chart.grid().coords(i);
                            (p[i].norm() - 1.0 / (1.0 + a * a + b * b)).abs()
                        })
                        .collect();
                    Ok(Outcome::within(max_of(&errs), rms(&errs), limit(tol.identity))
                        .noted("|p| = 1/(1 + |s|^2) for every radius"))
                });
            }
            Shape::Catenoid { .. } | Shape::Enneper | Shape::Plane { .. } => {
                ctx.check(format!("dirac.minimal_potential.{label}"), "minimal surfaces", || {
                    let abs: Vec<f64> = p.iter().map(|z| z.norm()).collect();
                    Ok(Outcome::within(max_of(&abs), rms(&abs), limit(tol.minimal_potential)))
                });
            }
            _ => {}
        }
    }
}
