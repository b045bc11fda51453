use proptest::prelude::*;
use subdirac_core::clifford::{build_clifford, extract_rotation, gamma_of_form, lift_rotation, spin_exp};
use subdirac_core::linalg::Mat;
use subdirac_core::scalar::C;
use subdirac_core::{CliffordRep32, CliffordRep64, CliffordRepI64};

fn antisymmetric(n: usize, entries: &[f64]) -> Mat<f64> {
    let mut w = Mat::zeros(n, n);
    let mut it = entries.iter();
    for i in 0..n {
        for j in i + 1..n {
            let v = *it.next().unwrap();
            w[(i, j)] = v;
            w[(j, i)] = -v;
        }
    }
    w
}

#[test]
fn spinor_dimension_doubles_every_two_generators() {
    for n in 1..=8 {
        let rep: CliffordRep64 = build_clifford(n, 1).unwrap();
        assert_eq!(rep.spinor_dim(), 1 << (n / 2), "n = {n}");
    }
}

#[test]
fn single_precision_and_integer_reps_agree_with_double() {
    for n in 1..=6 {
        let d: CliffordRep64 = build_clifford(n, 1).unwrap();
        let s: CliffordRep32 = build_clifford(n, 1).unwrap();
        let i: CliffordRepI64 = build_clifford(n, 1).unwrap();
        for a in 0..n {
            for (r, c) in (0..d.spinor_dim()).flat_map(|r| (0..d.spinor_dim()).map(move |c| (r, c))) {
                let z = d.gamma(a)[(r, c)];
                let zs = s.gamma(a)[(r, c)];
                let zi = i.gamma(a)[(r, c)];
                assert_eq!((z.re, z.im), (f64::from(zs.re), f64::from(zs.im)));
                assert_eq!((z.re, z.im), (zi.re as f64, zi.im as f64));
            }
        }
    }
}

#[test]
fn odd_sign_flips_one_generator_for_odd_n_only() {
    for n in 1..=8 {
        let plus: CliffordRep64 = build_clifford(n, 1).unwrap();
        let minus: CliffordRep64 = build_clifford(n, -1).unwrap();
        let flipped: Vec<usize> = (0..n)
            .filter(|&a| (plus.gamma(a) + minus.gamma(a)).max_abs() == 0.0)
            .collect();
        let same = (0..n).filter(|&a| plus.gamma(a) == minus.gamma(a)).count();
        if n % 2 == 1 {
            assert_eq!((flipped.len(), same), (1, n - 1), "n = {n}");
            assert_eq!(minus.odd_sign(), -1);
        } else {
            assert_eq!(same, n, "n = {n}");
            assert_eq!(minus.odd_sign(), 1);
        }
    }
    assert!(build_clifford::<f64>(3, 2).is_err());
}

#[test]
fn invalid_forms_are_rejected() {
    let rep: CliffordRep64 = build_clifford(3, 1).unwrap();
    let one = C::new(1.0, 0.0);
    assert!(gamma_of_form(&rep, &[(vec![1, 1], one)]).is_err());
    assert!(gamma_of_form(&rep, &[(vec![2, 0], one)]).is_err());
    assert!(gamma_of_form(&rep, &[(vec![0, 3], one)]).is_err());
    assert!(build_clifford::<f64>(0, 1).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn vector_forms_square_to_their_length(v in prop::collection::vec(-2.0f64..2.0, 5)) {
        let rep: CliffordRep64 = build_clifford(5, 1).unwrap();
        let form: Vec<_> = v.iter().enumerate().map(|(i, x)| (vec![i], C::new(*x, 0.0))).collect();
        let g = gamma_of_form(&rep, &form).unwrap();
        let len2: f64 = v.iter().map(|x| x * x).sum();
        let want = rep.identity().scale(&C::new(len2, 0.0));
        prop_assert!((&g.matmul(&g) - &want).max_abs() < 1e-12);
    }

    #[test]
    fn spin_exp_is_unitary_and_covers_its_rotation(
        n in 2usize..=5,
        entries in prop::collection::vec(-0.8f64..0.8, 10),
    ) {
        let rep: CliffordRep64 = build_clifford(n, 1).unwrap();
        let w = antisymmetric(n, &entries);
        let s = spin_exp(&rep, &w).unwrap();
        prop_assert!(s.unitarity_defect() < 1e-12);
        let r = extract_rotation(&rep, &s).unwrap();
        prop_assert!(r.is_orthogonal(1e-12));
        prop_assert!((r.det() - 1.0).abs() < 1e-12);
        // S and -S cover the same rotation
        let r2 = extract_rotation(&rep, &s.negated()).unwrap();
        prop_assert!((&r - &r2).max_abs_real() < 1e-14);
        let lifted = lift_rotation(&rep, &r).unwrap();
        prop_assert!((&extract_rotation(&rep, &lifted).unwrap() - &r).max_abs_real() < 1e-10);
    }

    #[test]
    fn spin_exp_is_a_homomorphism_on_commuting_generators(a in -1.5f64..1.5, b in -1.5f64..1.5) {
        let rep: CliffordRep64 = build_clifford(4, 1).unwrap();
        // rotations in the disjoint planes (0,1) and (2,3) commute
        let mut wa = Mat::zeros(4, 4);
        wa[(0, 1)] = a;
        wa[(1, 0)] = -a;
        let mut wb = Mat::zeros(4, 4);
        wb[(2, 3)] = b;
        wb[(3, 2)] = -b;
        let sa = spin_exp(&rep, &wa).unwrap();
        let sb = spin_exp(&rep, &wb).unwrap();
        let sab = spin_exp(&rep, &(&wa + &wb)).unwrap();
        prop_assert!((&sa.matrix.matmul(&sb.matrix) - &sab.matrix).max_abs() < 1e-12);
    }
}
