use super::{max_of, rms, Ctx, Outcome};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subdirac_core::clifford::{
    build_clifford, extract_rotation, frame_spinors, iota_inclusion, lift_rotation, spin_exp, tau_inclusion,
};
use subdirac_core::linalg::Mat;
use subdirac_core::scalar::C;
use subdirac_core::weierstrass::surface_frames;
use subdirac_core::CliffordRepI64;

pub const MAX_N: usize = 8;
pub const INCLUSION_PAIRS: [(usize, usize); 5] = [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)];
pub const SPIN_SAMPLES: usize = 100;

pub(super) fn run(ctx: &mut Ctx) {
    let tol = ctx.cfg.tolerances.clone();
    let seed = ctx.cfg.seed;

    ctx.check("algebra.anticommutation".into(), "generator relations", || {
        let mut errs = Vec::new();
        for n in 1..=MAX_N {
            for sign in [1, -1] {
                let rep = build_clifford::<f64>(n, sign)?;
                let id = rep.identity();
                for i in 0..n {
                    for j in 0..n {
                        let ac = rep.gamma(i).anticommutator(rep.gamma(j));
                        let want = if i == j {
                            id.scale(&C::new(2.0, 0.0))
                        } else {
                            Mat::zeros(id.rows(), id.cols())
                        };
                        errs.push((&ac - &want).max_abs());
                    }
                }
            }
        }
        Ok(Outcome::within(max_of(&errs), rms(&errs), tol.algebra))
    });

    ctx.check("algebra.anticommutation_integer".into(), "generator relations", || {
        let mut mismatches = 0usize;
        for n in 1..=MAX_N {
            let rep: CliffordRepI64 = build_clifford(n, 1)?;
            let id = rep.identity();
            let two = id.scale(&C::new(2, 0));
            let zero = Mat::zeros(id.rows(), id.cols());
            for i in 0..n {
                for j in 0..n {
                    let want = if i == j { &two } else { &zero };
                    if &rep.gamma(i).anticommutator(rep.gamma(j)) != want {
                        mismatches += 1;
                    }
                }
            }
        }
        let m = mismatches as f64;
        Ok(Outcome::within(m, m, 0.0).noted("integer arithmetic; residual counts mismatched pairs"))
    });

    ctx.check("algebra.hermitian_unitary".into(), "generator relations", || {
        let mut errs = Vec::new();
        for n in 1..=MAX_N {
            let rep = build_clifford::<f64>(n, 1)?;
            let id = rep.identity();
            for g in rep.generators() {
                errs.push((g - &g.adjoint()).max_abs());
                errs.push((&g.matmul(&g.adjoint()) - &id).max_abs());
            }
        }
        Ok(Outcome::within(max_of(&errs), rms(&errs), tol.algebra))
    });

    ctx.check("algebra.frame_spinors".into(), "frame-spinor identity", || {
        let mut errs = Vec::new();
        for n in 1..=MAX_N {
            let rep = build_clifford::<f64>(n, 1)?;
            for (a, (psi, bar)) in frame_spinors(&rep)?.iter().enumerate() {
                for b in 0..n {
                    let want = if a == b { 1.0 } else { 0.0 };
                    errs.push((bar.sandwich(rep.gamma(b), psi) - C::new(want, 0.0)).norm());
                }
            }
        }
        Ok(Outcome::within(max_of(&errs), rms(&errs), tol.algebra))
    });

    ctx.check(
        "algebra.inclusion".into(),
        "set vs algebra inclusion on even products",
        || {
            let mut errs = Vec::new();
            for (k, n) in INCLUSION_PAIRS {
                let rk = build_clifford::<f64>(k, 1)?;
                let rn = build_clifford::<f64>(n, 1)?;
                for i in 0..k {
                    for j in 0..k {
                        let t = tau_inclusion(&rk, &rn, &[(vec![i, j], C::new(1.0, 0.0))])?;
                        let a = iota_inclusion(&rk, &rn, rk.gamma(i))?;
                        let b = iota_inclusion(&rk, &rn, rk.gamma(j))?;
                        errs.push((&t - &a.matmul(&b)).max_abs());
                    }
                }
            }
            Ok(Outcome::within(max_of(&errs), rms(&errs), tol.algebra))
        },
    );

    ctx.check("algebra.spin_exp_rotation".into(), "spin covering of rotations", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut errs = Vec::with_capacity(SPIN_SAMPLES);
        for t in 0..SPIN_SAMPLES {
            let n = 2 + t % 5;
            let rep = build_clifford::<f64>(n, 1)?;
            let w = random_generator(&mut rng, n, std::f64::consts::PI);
            let s = spin_exp(&rep, &w)?;
            let rot = extract_rotation(&rep, &s)?;
            let target = s.source_rotation.as_ref().expect("spin_exp records its rotation");
            errs.push((&rot - target).max_abs_real());
        }
        Ok(Outcome::within(max_of(&errs), rms(&errs), tol.spin_lift)
            .noted(format!("{SPIN_SAMPLES} generators, n = 2..6")))
    });

    ctx.check(
        "algebra.spin_lift_roundtrip".into(),
        "spin covering of rotations",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
            let mut errs = Vec::new();
            for t in 0..SPIN_SAMPLES / 4 {
                let n = 2 + t % 4;
                let rep = build_clifford::<f64>(n, 1)?;
                let w = random_generator(&mut rng, n, 3.0);
                let r = spin_exp(&rep, &w)?
                    .source_rotation
                    .expect("spin_exp records its rotation");
                let lifted = lift_rotation(&rep, &r)?;
                errs.push((&extract_rotation(&rep, &lifted)? - &r).max_abs_real());
                errs.push(lifted.unitarity_defect());
            }
            Ok(Outcome::within(max_of(&errs), rms(&errs), tol.spin_lift))
        },
    );

    ctx.check(
        "algebra.surface_frame_identities".into(),
        "spinor bilinears give 2dZ",
        || {
            let frames = surface_frames();
            let failed = frames
                .coefficients
                .iter()
                .zip(&frames.expected)
                .filter(|(c, e)| c != e)
                .count() as f64;
            Ok(Outcome::within(failed, failed, 0.0).noted("integer arithmetic; residual counts failed identities"))
        },
    );
}

/// Antisymmetric matrix with random direction and rotation size in `[0, bound)`.
fn random_generator(rng: &mut ChaCha8Rng, n: usize, bound: f64) -> Mat<f64> {
    let mut w = Mat::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v: f64 = rng.gen_range(-1.0..1.0);
            w[(i, j)] = v;
            w[(j, i)] = -v;
        }
    }
    // a single-plane rotation by θ has Frobenius norm √2 θ
    let f = w.frobenius_real() / std::f64::consts::SQRT_2;
    if f > 0.0 {
        let target = rng.gen_range(0.0..bound);
        w = w.map(|x| x * target / f);
    }
    w
}
