use proptest::prelude::*;
use subdirac_core::dirac::{apply_dirac, build_curve_dirac, build_surface_dirac_e4, curve_zero_mode};
use subdirac_core::geometry::{conformal_data, shape_data, Shape, ShapeOptions, ShapeSpec};
use subdirac_core::scalar::C;
use subdirac_core::weierstrass::{reconstruct_immersion, spinors_from_immersion_e4, ExtractOptions};
use subdirac_core::{Chart64, ShapeData64, WeierstrassSpinors64};

fn surface(spec: &ShapeSpec<f64>, n: usize) -> (Chart64, ShapeData64, WeierstrassSpinors64, Vec<f64>) {
    let chart = spec.chart(&[n, n]).unwrap();
    let shape = shape_data(&chart, ShapeOptions::default()).unwrap();
    let conf = conformal_data(&chart, &shape.metric, 1e-10, true).unwrap();
    let sp = spinors_from_immersion_e4(&chart, &shape, &conf, ExtractOptions::default()).unwrap();
    (chart, shape, sp, conf.rho)
}

fn torus() -> ShapeSpec<f64> {
    ShapeSpec::new(Shape::ProductTorus { r1: 1.0, r2: 1.0 })
}

#[test]
fn spinor_products_rebuild_the_derivatives() {
    for spec in [torus(), ShapeSpec::new(Shape::Sphere { radius: 1.0 }).in_ambient(4)] {
        let (chart, _, sp, rho) = surface(&spec, 16);
        let jet = chart.analytic_jet().unwrap();
        for (idx, r) in rho.iter().enumerate() {
            let [fm, mgn, fnb, gmb] = sp.products(idx);
            let d = |a: usize, i: usize| jet.first(idx, a)[i];
            // ∂1Z¹ = fm − gn, ∂1Z² = f n̄ + g m̄
            assert!((fm + mgn - C::new(d(0, 0), d(0, 1))).norm() < 1e-12);
            assert!((fnb + gmb - C::new(d(0, 2), d(0, 3))).norm() < 1e-12);
            let norm = sp.norm_product(idx);
            assert!((norm - r).abs() < 1e-10 * r.max(1.0));
        }
    }
}

#[test]
fn sphere_reconstruction_error_shrinks_quadratically() {
    let spec = ShapeSpec::new(Shape::Sphere { radius: 1.0 }).in_ambient(4);
    let errs: Vec<f64> = [16, 32]
        .iter()
        .map(|&n| {
            let (chart, _, sp, _) = surface(&spec, n);
            reconstruct_immersion(&sp, &chart, 0).unwrap().alignment_error
        })
        .collect();
    let ratio = errs[0] / errs[1];
    assert!(ratio > 3.0 && ratio < 5.0, "{errs:?}");
}

#[test]
fn sphere_potential_is_independent_of_radius() {
    for r in [0.5f64, 2.0] {
        let spec = ShapeSpec::new(Shape::Sphere { radius: r }).in_ambient(4);
        let chart = spec.chart(&[9, 9]).unwrap();
        let shape = shape_data(&chart, ShapeOptions::default()).unwrap();
        let conf = conformal_data(&chart, &shape.metric, 1e-10, true).unwrap();
        let op = build_surface_dirac_e4(&chart, &shape, &conf).unwrap();
        for (idx, p) in op.potential().iter().enumerate() {
            let [a, b] = chart.grid().coords(idx);
            assert!((p.norm() - 1.0 / (1.0 + a * a + b * b)).abs() < 1e-12);
        }
    }
}

#[test]
fn circle_zero_mode_converges() {
    let mut errs = Vec::new();
    for n in [32, 64] {
        let chart = ShapeSpec::new(Shape::Circle { radius: 1.0 }).chart(&[n]).unwrap();
        let shape = shape_data(&chart, ShapeOptions::default()).unwrap();
        let op = build_curve_dirac(&chart, &shape).unwrap();
        let psi = curve_zero_mode(&chart, &shape, &op, &[C::new(1.0, 0.0), C::new(0.0, 0.5)]).unwrap();
        errs.push(apply_dirac(&op, &psi).unwrap().max_norm());
    }
    assert!(errs[1] < errs[0] / 3.0, "{errs:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn constant_phase_regauging_keeps_products(theta in -3.1f64..3.1, scale in 0.3f64..3.0) {
        let (_, _, sp, _) = surface(&torus(), 8);
        let unit = sp.regauged(C::from_polar(1.0, theta));
        // a non-unit factor rescales every product by |λ|²
        let stretched = sp.regauged(C::from_polar(scale, theta));
        for idx in 0..sp.len() {
            let (a, b, c) = (sp.products(idx), unit.products(idx), stretched.products(idx));
            for i in 0..4 {
                prop_assert!((a[i] - b[i]).norm() < 1e-12);
                prop_assert!((a[i] * (scale * scale) - c[i]).norm() < 1e-12 * scale * scale);
            }
        }
    }

    #[test]
    fn scaled_torus_keeps_spinor_structure(r1 in 0.5f64..2.0, r2 in 0.5f64..2.0) {
        let spec = ShapeSpec::new(Shape::ProductTorus { r1, r2 });
        let (chart, _, sp, _) = surface(&spec, 8);
        let rec = reconstruct_immersion(&sp, &chart, 0).unwrap();
        // the flat torus is reconstructed exactly by the trapezoid rule on its periodic lines
        prop_assert!(rec.closedness_residual < 1e-10);
    }
}
