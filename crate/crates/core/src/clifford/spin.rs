use super::rep::CliffordRep;
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::linalg::Mat;
use crate::scalar::{Real, C};

/// Element `e^Ω` of the spin group, with the rotation it covers when known.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinElement<T> {
    pub matrix: Mat<C<T>>,
    pub source_rotation: Option<Mat<T>>,
}

impl<T: Real> SpinElement<T> {
    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: Mat::identity(dim),
            source_rotation: None,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
            source_rotation: self.source_rotation.as_ref().map(Mat::transpose),
        }
    }

    pub fn negated(&self) -> Self {
        Self {
            matrix: -&self.matrix,
            source_rotation: self.source_rotation.clone(),
        }
    }

    pub fn unitarity_defect(&self) -> T {
        let d = self.matrix.rows();
        (&self.matrix.matmul(&self.matrix.adjoint()) - &Mat::identity(d)).max_abs()
    }
}

fn check_rotation_shape<T: Real>(rep: &CliffordRep<T>, m: &Mat<T>) -> Result<()> {
    if m.rows() != rep.n() || m.cols() != rep.n() {
        return Err(Error::ShapeMismatch(format!(
            "expected {n}x{n} matrix, got {}x{}",
            m.rows(),
            m.cols(),
            n = rep.n()
        )));
    }
    Ok(())
}

/// `exp(¼ Σ_ij ω_ij γ_i γ_j)`.
pub fn spin_exp<T: Real>(rep: &CliffordRep<T>, omega: &Mat<T>) -> Result<SpinElement<T>> {
    check_rotation_shape(rep, omega)?;
    let asym = (omega + &omega.transpose()).max_abs_real();
    if asym > T::lit(1e-12) {
        return Err(Error::Validation(format!(
            "omega is not antisymmetric (defect {asym:e})"
        )));
    }
    let d = rep.spinor_dim();
    let quarter = T::lit(0.25);
    let mut big = Mat::zeros(d, d);
    for i in 0..rep.n() {
        for j in 0..rep.n() {
            if i == j || omega[(i, j)] == T::zero() {
                continue;
            }
            let term = rep
                .gamma(i)
                .matmul(rep.gamma(j))
                .scale(&C::new(quarter * omega[(i, j)], T::zero()));
            big = &big + &term;
        }
    }
    let rotation = Mat::<C<T>>::from_real(omega).expm().real_part();
    Ok(SpinElement {
        matrix: big.expm(),
        source_rotation: Some(rotation),
    })
}

/// Coefficients of `X` on the generators, `c_j = tr(γ_j X) / d`, and the
/// residual after projecting onto their span.
fn generator_coefficients<T: Real>(rep: &CliffordRep<T>, x: &Mat<C<T>>) -> (Vec<C<T>>, T) {
    let d = T::from_usize_lossy(rep.spinor_dim());
    let coeffs: Vec<C<T>> = rep.generators().iter().map(|g| g.matmul(x).trace() / d).collect();
    let mut rest = x.clone();
    for (g, c) in rep.generators().iter().zip(&coeffs) {
        rest = &rest - &g.scale(c);
    }
    (coeffs, rest.max_abs())
}

/// Rotation `R` with `S γ_i S⁻¹ = Σ_j R_ji γ_j`.
pub fn extract_rotation<T: Real>(rep: &CliffordRep<T>, s: &SpinElement<T>) -> Result<Mat<T>> {
    let d = rep.spinor_dim();
    if s.matrix.rows() != d || s.matrix.cols() != d {
        return Err(Error::ShapeMismatch(format!("spin element is not {d}x{d}")));
    }
    let defect = s.unitarity_defect();
    if defect > T::lit(1e-10) {
        return Err(Error::SpinLift(format!("element is not unitary (defect {defect:e})")));
    }
    let inv = s.matrix.adjoint();
    let n = rep.n();
    let mut r = Mat::zeros(n, n);
    for i in 0..n {
        let conj = s.matrix.matmul(rep.gamma(i)).matmul(&inv);
        let (coeffs, resid) = generator_coefficients(rep, &conj);
        if resid > T::lit(1e-10) {
            return Err(Error::SpinLift(format!(
                "conjugated generator {i} leaves the generator span (residual {resid:e})"
            )));
        }
        for (j, c) in coeffs.iter().enumerate() {
            if c.im.abs() > T::lit(1e-10) {
                return Err(Error::SpinLift(format!("complex rotation coefficient at ({j},{i})")));
            }
            r[(j, i)] = c.re;
        }
    }
    Ok(r)
}

fn validate_rotation<T: Real>(rep: &CliffordRep<T>, r: &Mat<T>) -> Result<()> {
    check_rotation_shape(rep, r)?;
    if !r.is_orthogonal(T::lit(1e-8)) {
        return Err(Error::Validation("rotation is not orthogonal".into()));
    }
    if r.det() < T::zero() {
        return Err(Error::Validation("rotation has determinant -1".into()));
    }
    Ok(())
}

/// Blade table reused across many lifts.
pub struct LiftCache<T> {
    blades: Vec<(Vec<usize>, Mat<C<T>>)>,
}

impl<T: Real> LiftCache<T> {
    pub fn new(rep: &CliffordRep<T>) -> Self {
        Self { blades: rep.blades() }
    }
}

/// One of the two spin elements covering `r`, phase-fixed so that its
/// dominant even-blade coefficient is real and positive.
///
/// Built as the intertwiner `Σ_I γ'_I X γ_I⁻¹` between the representation
/// and its rotated copy `γ'_i = Σ_j R_ji γ_j`.
pub fn lift_rotation<T: Real>(rep: &CliffordRep<T>, r: &Mat<T>) -> Result<SpinElement<T>> {
    lift_rotation_cached(rep, &LiftCache::new(rep), r)
}

pub fn lift_rotation_cached<T: Real>(rep: &CliffordRep<T>, cache: &LiftCache<T>, r: &Mat<T>) -> Result<SpinElement<T>> {
    validate_rotation(rep, r)?;
    let d = rep.spinor_dim();
    let n = rep.n();
    let rotated: Vec<Mat<C<T>>> = (0..n)
        .map(|i| {
            (0..n).fold(Mat::zeros(d, d), |acc, j| {
                &acc + &rep.gamma(j).scale(&C::new(r[(j, i)], T::zero()))
            })
        })
        .collect();
    let rotated_blades: Vec<Mat<C<T>>> = cache
        .blades
        .iter()
        .map(|(idx, _)| idx.iter().fold(Mat::identity(d), |acc, &i| acc.matmul(&rotated[i])))
        .collect();
    let adjoints: Vec<Mat<C<T>>> = cache.blades.iter().map(|(_, b)| b.adjoint()).collect();

    let mut best: Option<(T, Mat<C<T>>)> = None;
    for a in 0..d {
        for b in 0..d {
            // Σ_I γ'_I E_ab γ_I^† = Σ_I col_a(γ'_I) row_b(γ_I^†)
            let mut m = Mat::zeros(d, d);
            for (gp, ga) in rotated_blades.iter().zip(&adjoints) {
                for row in 0..d {
                    let u = gp[(row, a)];
                    if u == C::new(T::zero(), T::zero()) {
                        continue;
                    }
                    for col in 0..d {
                        m[(row, col)] = m[(row, col)] + u * ga[(b, col)];
                    }
                }
            }
            let f = m.frobenius();
            if best.as_ref().is_none_or(|(bf, _)| f > *bf) {
                best = Some((f, m));
            }
        }
    }
    let (f, m) = best.expect("spinor dimension >= 1");
    if f <= T::lit(1e-8) {
        return Err(Error::SpinLift("intertwiner vanished".into()));
    }
    let scale = (f * f / T::from_usize_lossy(d)).sqrt();
    let mut s = m.scale(&C::new(T::one() / scale, T::zero()));

    let dd = T::from_usize_lossy(d);
    let mut dominant = C::new(T::zero(), T::zero());
    for (idx, blade) in &cache.blades {
        if idx.len() % 2 == 1 {
            continue;
        }
        let c = blade.adjoint().matmul(&s).trace() / dd;
        if c.norm() > dominant.norm() + T::lit(1e-12) {
            dominant = c;
        }
    }
    let phase = dominant.conj() / dominant.norm();
    s = s.scale(&phase);
    Ok(SpinElement {
        matrix: s,
        source_rotation: Some(r.clone()),
    })
}

/// Continuous lift of a rotation field.
#[derive(Clone, Debug)]
pub struct SpinLiftField<T> {
    pub elements: Vec<SpinElement<T>>,
    /// Per axis: sign picked up when crossing the periodic seam (`+1` on open axes).
    pub wrap_signs: Vec<i8>,
}

fn overlap<T: Real>(a: &SpinElement<T>, b: &SpinElement<T>) -> T {
    a.matrix.adjoint().matmul(&b.matrix).trace().re
}

/// Lifts a grid of rotations to spin elements, fixing the sign ambiguity by
/// propagation along the sweep tree from sample 0.
///
/// Every lattice edge must join rotations closer than a right angle in every
/// rotation plane.
pub fn spin_lift_field<T: Real>(
    rep: &CliffordRep<T>,
    grid: &Grid<T>,
    rotations: &[Mat<T>],
) -> Result<SpinLiftField<T>> {
    if rotations.len() != grid.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} rotations for a grid of {} samples",
            rotations.len(),
            grid.len()
        )));
    }
    for (a, b, _, _) in grid.edges() {
        let q = rotations[a].transpose().matmul(&rotations[b]);
        let sym = (&q + &q.transpose()).map(|x| *x * T::lit(0.5));
        if !sym.is_positive_definite() {
            return Err(Error::LiftAmbiguity {
                from: a,
                to: b,
                reason: "adjacent rotations differ by a right angle or more".into(),
            });
        }
    }
    let cache = LiftCache::new(rep);
    let mut elements: Vec<SpinElement<T>> = Vec::with_capacity(grid.len());
    for (idx, r) in rotations.iter().enumerate() {
        let mut s = lift_rotation_cached(rep, &cache, r)?;
        if let Some(p) = grid.predecessor(idx) {
            if overlap(&elements[p], &s) < T::zero() {
                s = s.negated();
            }
        }
        elements.push(s);
    }
    let mut wrap_signs = vec![1i8; grid.dim()];
    let mut seen = vec![false; grid.dim()];
    for (a, b, axis, wrapped) in grid.edges() {
        let o = overlap(&elements[a], &elements[b]);
        if wrapped {
            let sign = if o < T::zero() { -1 } else { 1 };
            if !seen[axis] {
                seen[axis] = true;
                wrap_signs[axis] = sign;
            } else if wrap_signs[axis] != sign {
                return Err(Error::LiftAmbiguity {
                    from: a,
                    to: b,
                    reason: format!("inconsistent seam sign on axis {axis}"),
                });
            }
        } else if o < T::zero() {
            return Err(Error::LiftAmbiguity {
                from: a,
                to: b,
                reason: "lift changes sign across an interior edge".into(),
            });
        }
    }
    Ok(SpinLiftField { elements, wrap_signs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::rep::build_clifford;
    use crate::grid::Axis;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn plane_rotation(theta: f64) -> Mat<f64> {
        let (s, c) = theta.sin_cos();
        Mat::from_vec(2, 2, vec![c, -s, s, c])
    }

    fn series_exp(a: &Mat<f64>) -> Mat<f64> {
        let n = a.rows();
        let mut term = Mat::identity(n);
        let mut sum = Mat::identity(n);
        for k in 1..60 {
            term = term.matmul(a).map(|x| x / k as f64);
            sum = &sum + &term;
        }
        sum
    }

    fn random_generator(rng: &mut ChaCha8Rng, n: usize, bound: f64) -> Mat<f64> {
        let mut w = Mat::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let v: f64 = rng.gen_range(-1.0..1.0);
                w[(i, j)] = v;
                w[(j, i)] = -v;
            }
        }
        let f = w.frobenius_real();
        if f > 0.0 {
            let target = rng.gen_range(0.0..bound);
            w = w.map(|x| x * target / f);
        }
        w
    }

    #[test]
    fn zero_generator_gives_identity() {
        let r = build_clifford::<f64>(3, 1).unwrap();
        let s = spin_exp(&r, &Mat::zeros(3, 3)).unwrap();
        assert!((&s.matrix - &Mat::identity(2)).max_abs() < 1e-15);
        let rot = extract_rotation(&r, &s).unwrap();
        assert!((&rot - &Mat::identity(3)).max_abs_real() < 1e-15);
    }

    #[test]
    fn plane_generator_is_diagonal_phase() {
        let r = build_clifford::<f64>(2, 1).unwrap();
        let theta = 0.7;
        let mut w = Mat::zeros(2, 2);
        w[(0, 1)] = theta;
        w[(1, 0)] = -theta;
        let s = spin_exp(&r, &w).unwrap();
        let half = C::new(0.0, theta / 2.0).exp();
        assert!((s.matrix[(0, 0)] - half).norm() < 1e-14);
        assert!((s.matrix[(1, 1)] - half.conj()).norm() < 1e-14);
        assert!(s.matrix[(0, 1)].norm() < 1e-14);
        let rot = extract_rotation(&r, &s).unwrap();
        assert!((&rot - &series_exp(&w)).max_abs_real() < 1e-12);
    }

    #[test]
    fn half_turn_about_third_axis() {
        let r = build_clifford::<f64>(3, 1).unwrap();
        let mut w = Mat::zeros(3, 3);
        w[(0, 1)] = std::f64::consts::PI;
        w[(1, 0)] = -std::f64::consts::PI;
        let rot = extract_rotation(&r, &spin_exp(&r, &w).unwrap()).unwrap();
        let expect = Mat::from_vec(3, 3, vec![-1.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 1.0]);
        assert!((&rot - &expect).max_abs_real() < 1e-12);
    }

    #[test]
    fn roundtrip_random_generators() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 2..=5 {
            let r = build_clifford::<f64>(n, 1).unwrap();
            for _ in 0..25 {
                let w = random_generator(&mut rng, n, std::f64::consts::PI);
                let s = spin_exp(&r, &w).unwrap();
                assert!(s.unitarity_defect() < 1e-12);
                let rot = extract_rotation(&r, &s).unwrap();
                assert!((&rot - &series_exp(&w)).max_abs_real() < 1e-10);
                assert!(rot.is_orthogonal(1e-10));
                let neg = extract_rotation(&r, &s.negated()).unwrap();
                assert!((&neg - &rot).max_abs_real() < 1e-14);
            }
        }
    }

    #[test]
    fn lift_covers_rotation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=4 {
            let r = build_clifford::<f64>(n, 1).unwrap();
            for _ in 0..10 {
                let w = random_generator(&mut rng, n, 3.0);
                let rot = series_exp(&w);
                let s = lift_rotation(&r, &rot).unwrap();
                assert!(s.unitarity_defect() < 1e-12);
                let back = extract_rotation(&r, &s).unwrap();
                assert!((&back - &rot).max_abs_real() < 1e-10, "n={n}");
                // agrees with the exponential up to sign
                let e = spin_exp(&r, &w).unwrap();
                let o = e.matrix.adjoint().matmul(&s.matrix).trace().re / r.spinor_dim() as f64;
                assert!((o.abs() - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn lift_rejects_reflection() {
        let r = build_clifford::<f64>(2, 1).unwrap();
        let refl = Mat::from_vec(2, 2, vec![1.0, 0.0, 0.0, -1.0]);
        assert!(lift_rotation(&r, &refl).is_err());
    }

    #[test]
    fn constant_identity_field() {
        let r = build_clifford::<f64>(3, 1).unwrap();
        let g = Grid::rect(
            Axis::new(4, 0.0, 1.0, true).unwrap(),
            Axis::new(3, 0.0, 1.0, false).unwrap(),
        );
        let rots = vec![Mat::identity(3); g.len()];
        let lift = spin_lift_field(&r, &g, &rots).unwrap();
        for e in &lift.elements {
            assert!((&e.matrix - &Mat::identity(2)).max_abs() < 1e-14);
        }
        assert_eq!(lift.wrap_signs, vec![1, 1]);
    }

    #[test]
    fn full_turn_is_antiperiodic() {
        let r = build_clifford::<f64>(2, 1).unwrap();
        let n = 16;
        let g = Grid::line(Axis::new(n, 0.0, std::f64::consts::TAU, true).unwrap());
        let rots: Vec<_> = (0..n).map(|i| plane_rotation(g.coords(i)[0])).collect();
        let lift = spin_lift_field(&r, &g, &rots).unwrap();
        assert_eq!(lift.wrap_signs, vec![-1]);
        for (i, e) in lift.elements.iter().enumerate() {
            let th = g.coords(i)[0];
            let back = extract_rotation(&r, e).unwrap();
            assert!((&back - &rots[i]).max_abs_real() < 1e-10);
            // continuous branch of diag(e^{∓iθ/2}) (sign convention of the rep)
            let z = C::new(0.0, -th / 2.0).exp();
            let d = (e.matrix[(0, 0)] - z).norm().min((e.matrix[(0, 0)] - z.conj()).norm());
            assert!(d < 1e-12, "i={i}");
        }
        // adjacent spin elements move no more than the rotations do
        for (a, b, _, wrapped) in g.edges() {
            let sign = if wrapped { -1.0 } else { 1.0 };
            let ds = (&lift.elements[b].matrix - &lift.elements[a].matrix.scale(&C::new(sign, 0.0))).max_abs();
            let dr = (&rots[b] - &rots[a]).max_abs_real();
            assert!(ds <= dr + 1e-14);
        }
    }

    #[test]
    fn jump_is_reported_with_edge() {
        let r = build_clifford::<f64>(2, 1).unwrap();
        let g = Grid::line(Axis::new(8, 0.0, 1.0, false).unwrap());
        let mut rots = vec![Mat::identity(2); 8];
        for r in rots.iter_mut().skip(5) {
            *r = plane_rotation(2.0);
        }
        match spin_lift_field(&r, &g, &rots) {
            Err(Error::LiftAmbiguity { from, to, .. }) => assert_eq!((from, to), (4, 5)),
            other => panic!("expected ambiguity, got {other:?}"),
        }
    }
}
