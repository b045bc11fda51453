use crate::dirac::{apply_dirac, build_surface_dirac_e4, Residual, SpinorField};
use crate::error::{Error, Result};
use crate::geometry::{ConformalData, ImmersionChart, JetMode, ShapeData};
use crate::grid::Grid;
use crate::linalg::dot;
use crate::scalar::{Real, C};

/// Exponent `e` in `(|f|² + |g|²)(|m|² + |n|²) = ρ^e` for the extracted spinors.
pub const NORMALIZATION_EXPONENT: f64 = 1.0;

/// Modulus convention for `f`; the phase is fixed geometrically.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Gauge {
    /// `|f| = |m|`, i.e. `|f|² = |∂Z¹|`.
    #[default]
    EqualModulus,
    /// `|f|² = (|∂Z¹|² + |∂Z²|²) / ρ^{1/2}`.
    Balanced,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtractOptions<T> {
    pub gauge: Gauge,
    pub jet: JetMode,
    /// Relative tolerance on `|Ā B + C̄ D| / ρ`; `None` uses the conformal tolerance.
    pub compatibility_tolerance: Option<T>,
    /// Samples with `|A| + |C| ≤ epsilon·ρ^{1/2}` are treated as branch points.
    pub epsilon: T,
}

impl<T: Real> Default for ExtractOptions<T> {
    fn default() -> Self {
        Self {
            gauge: Gauge::default(),
            jet: JetMode::Analytic,
            compatibility_tolerance: None,
            epsilon: T::lit(1e-8),
        }
    }
}

/// `(f, g, m, n)` with `f m = ∂Z¹`, `−g n = ∂̄Z¹`, `f n̄ = ∂Z²`, `g m̄ = ∂̄Z²`.
#[derive(Clone, Debug)]
pub struct WeierstrassSpinors<T> {
    pub grid: Grid<T>,
    pub f: Vec<C<T>>,
    pub g: Vec<C<T>>,
    pub m: Vec<C<T>>,
    pub n: Vec<C<T>>,
    pub gauge: Gauge,
    /// Seam sign shared by all four components, per axis.
    pub wrap_signs: Vec<i8>,
    pub degenerate: Vec<bool>,
    pub exponent: T,
    pub normalization_residual: T,
    pub compatibility_residual: T,
}

impl<T: Real> WeierstrassSpinors<T> {
    pub fn len(&self) -> usize {
        self.f.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f.is_empty()
    }

    /// `(|f|² + |g|²)(|m|² + |n|²)`.
    pub fn norm_product(&self, idx: usize) -> T {
        (self.f[idx].norm_sqr() + self.g[idx].norm_sqr()) * (self.m[idx].norm_sqr() + self.n[idx].norm_sqr())
    }

    fn field(&self, make: impl Fn(usize) -> Vec<C<T>>) -> SpinorField<T> {
        SpinorField::from_fn(&self.grid, 4, make).with_wrap_signs(self.wrap_signs.clone())
    }

    /// `(f, g, 0, 0)`.
    pub fn phi1(&self) -> SpinorField<T> {
        let z = C::new(T::zero(), T::zero());
        self.field(|i| vec![self.f[i], self.g[i], z, z])
    }

    /// `(0, 0, m, n)`.
    pub fn phi2(&self) -> SpinorField<T> {
        let z = C::new(T::zero(), T::zero());
        self.field(|i| vec![z, z, self.m[i], self.n[i]])
    }

    /// `(−ḡ, f̄, 0, 0)`.
    pub fn phi3(&self) -> SpinorField<T> {
        let z = C::new(T::zero(), T::zero());
        self.field(|i| vec![-self.g[i].conj(), self.f[i].conj(), z, z])
    }

    /// `(0, 0, −n̄, m̄)`.
    pub fn phi4(&self) -> SpinorField<T> {
        let z = C::new(T::zero(), T::zero());
        self.field(|i| vec![z, z, -self.n[i].conj(), self.m[i].conj()])
    }

    /// `(f, g, m, n) → (λf, λ̄g, λ̄m, λn)` with `|λ| = 1`; leaves every
    /// product `f m`, `g n`, `f n̄`, `g m̄` unchanged.
    pub fn regauged(&self, lambda: C<T>) -> Self {
        let mut out = self.clone();
        let lb = lambda.conj();
        out.f.iter_mut().for_each(|z| *z = *z * lambda);
        out.g.iter_mut().for_each(|z| *z = *z * lb);
        out.m.iter_mut().for_each(|z| *z = *z * lb);
        out.n.iter_mut().for_each(|z| *z = *z * lambda);
        out
    }

    /// The four products `(f m, −g n, f n̄, g m̄)` at a sample.
    pub fn products(&self, idx: usize) -> [C<T>; 4] {
        let (f, g, m, n) = (self.f[idx], self.g[idx], self.m[idx], self.n[idx]);
        [f * m, -(g * n), f * n.conj(), g * m.conj()]
    }
}

/// `(A, B, C, D) = (∂Z¹, ∂̄Z¹, ∂Z², ∂̄Z²)` with `∂ = (∂_1 − i∂_2)/2`.
pub fn complex_derivatives<T: Real>(d1: &[T], d2: &[T]) -> [C<T>; 4] {
    let half = T::lit(0.5);
    let z1 = (C::new(d1[0], d1[1]), C::new(d2[0], d2[1]));
    let z2 = (C::new(d1[2], d1[3]), C::new(d2[2], d2[3]));
    let i = C::new(T::zero(), T::one());
    [
        (z1.0 - i * z1.1) * half,
        (z1.0 + i * z1.1) * half,
        (z2.0 - i * z2.1) * half,
        (z2.0 + i * z2.1) * half,
    ]
}

/// Solves for `(f, g, m, n)` given the modulus and phase of `f`.
fn solve<T: Real>(abcd: [C<T>; 4], f: C<T>) -> [C<T>; 4] {
    let [a, b, c, d] = abcd;
    let m = a / f;
    let n = (c / f).conj();
    let g = if a.norm() >= c.norm() {
        d * f.conj() / a.conj()
    } else {
        -(b * f.conj()) / c.conj()
    };
    [f, g, m, n]
}

/// `v ∈ C²` read as a real 4-vector `(Re v0, Im v0, Re v1, Im v1)`.
fn real4<T: Real>(v: [C<T>; 2]) -> [T; 4] {
    [v[0].re, v[0].im, v[1].re, v[1].im]
}

/// Normal vectors `Y1 = g u1 + f u2`, `Y2 = i(g u1 − f u2)` with
/// `u1 = (m, n̄)`, `u2 = (n, −m̄)`.
fn normal_pair<T: Real>(s: [C<T>; 4]) -> ([T; 4], [T; 4]) {
    let [f, g, m, n] = s;
    let i = C::new(T::zero(), T::one());
    let p = [g * m, g * n.conj()];
    let q = [f * n, -(f * m.conj())];
    (
        real4([p[0] + q[0], p[1] + q[1]]),
        real4([i * (p[0] - q[0]), i * (p[1] - q[1])]),
    )
}

/// Extracts Weierstrass spinors from a conformal chart in E⁴.
///
/// The phase of `f` is chosen so that `Y1` points along the first normal
/// `e_3` of `shape`; the remaining sign is fixed by continuity along the
/// sweep tree, and samples where both `∂Z¹` and `∂Z²` vanish are filled from
/// their neighbours.
pub fn spinors_from_immersion_e4<T: Real>(
    chart: &ImmersionChart<T>,
    shape: &ShapeData<T>,
    conformal: &ConformalData<T>,
    options: ExtractOptions<T>,
) -> Result<WeierstrassSpinors<T>> {
    if chart.k() != 2 || chart.n() != 4 {
        return Err(Error::Unsupported(
            "spinor extraction needs a surface chart in E^4".into(),
        ));
    }
    let grid = chart.grid();
    let jet = chart.jet(options.jet);
    let tol = options.compatibility_tolerance.unwrap_or(conformal.tolerance);
    let abcd: Vec<[C<T>; 4]> = (0..grid.len())
        .map(|i| complex_derivatives(jet.first(i, 0), jet.first(i, 1)))
        .collect();
    let mut compat = T::zero();
    for (i, [a, b, c, d]) in abcd.iter().enumerate() {
        let r = (a.conj() * *b + c.conj() * *d).norm() / conformal.rho[i];
        compat = compat.max(r);
    }
    if compat > tol {
        return Err(Error::NonConformalData {
            residual: compat.to_f64_lossy(),
            tolerance: tol.to_f64_lossy(),
        });
    }

    let zero = C::new(T::zero(), T::zero());
    let mut vals = vec![[zero; 4]; grid.len()];
    let mut degenerate = vec![false; grid.len()];
    for idx in 0..grid.len() {
        let [a, _, c, _] = abcd[idx];
        let root_rho = conformal.rho[idx].sqrt();
        if a.norm() + c.norm() <= options.epsilon * root_rho {
            degenerate[idx] = true;
            continue;
        }
        let modulus_sq = match options.gauge {
            Gauge::EqualModulus if a.norm() > options.epsilon * root_rho => a.norm(),
            _ => (a.norm_sqr() + c.norm_sqr()) / root_rho,
        };
        let r = modulus_sq.sqrt();
        let trial = solve(abcd[idx], C::new(r, T::zero()));
        // Y1(θ) = cos 2θ Y1(0) − sin 2θ Y2(0)
        let (y1, y2) = normal_pair(trial);
        let e3 = shape.normals.normal(idx, 0);
        let e4 = shape.normals.normal(idx, 1);
        let (pa, pb) = (dot(&y1, e3), dot(&y1, e4));
        let (pc, pd) = (dot(&y2, e3), dot(&y2, e4));
        let orient = if pa * pd - pc * pb >= T::zero() {
            T::one()
        } else {
            -T::one()
        };
        let two_theta = (orient * pb).atan2(orient * pd);
        let f = C::from_polar(r, two_theta * T::lit(0.5));
        vals[idx] = solve(abcd[idx], f);
    }
    if degenerate.iter().all(|d| *d) {
        return Err(Error::Degenerate("every sample is a branch point".into()));
    }

    // sign continuity along the sweep tree
    let mut anchor: Vec<Option<C<T>>> = vec![None; grid.len()];
    for idx in 0..grid.len() {
        let prev = grid.predecessor(idx).and_then(|p| anchor[p]);
        if degenerate[idx] {
            anchor[idx] = prev;
            continue;
        }
        if let Some(pf) = prev {
            if (pf.conj() * vals[idx][0]).re < T::zero() {
                vals[idx].iter_mut().for_each(|z| *z = -*z);
            }
        }
        anchor[idx] = Some(vals[idx][0]);
    }
    fill_degenerate(grid, &mut vals, &degenerate);

    let mut wrap_signs = vec![1i8; grid.dim()];
    let mut seen = vec![false; grid.dim()];
    for (a, b, axis, wrapped) in grid.edges() {
        let o = (vals[a][0].conj() * vals[b][0]).re;
        let sign = if o < T::zero() { -1 } else { 1 };
        if wrapped {
            if !seen[axis] {
                seen[axis] = true;
                wrap_signs[axis] = sign;
            } else if wrap_signs[axis] != sign {
                return Err(Error::Degenerate(format!(
                    "inconsistent spinor seam sign on axis {axis}"
                )));
            }
        } else if sign < 0 && !degenerate[a] && !degenerate[b] {
            return Err(Error::Degenerate(format!("spinor sign flips across edge {a} -> {b}")));
        }
    }

    let exponent = T::lit(NORMALIZATION_EXPONENT);
    let mut out = WeierstrassSpinors {
        grid: grid.clone(),
        f: vals.iter().map(|v| v[0]).collect(),
        g: vals.iter().map(|v| v[1]).collect(),
        m: vals.iter().map(|v| v[2]).collect(),
        n: vals.iter().map(|v| v[3]).collect(),
        gauge: options.gauge,
        wrap_signs,
        degenerate,
        exponent,
        normalization_residual: T::zero(),
        compatibility_residual: compat,
    };
    out.normalization_residual = (0..out.len())
        .map(|i| (out.norm_product(i) - conformal.rho[i].powf(exponent)).abs())
        .fold(T::zero(), T::max);
    Ok(out)
}

/// Replaces branch-point samples by the mean of already-known neighbours,
/// sweeping until every sample is filled.
pub(crate) fn fill_degenerate<T: Real>(grid: &Grid<T>, vals: &mut [[C<T>; 4]], degenerate: &[bool]) {
    let mut known: Vec<bool> = degenerate.iter().map(|d| !d).collect();
    while known.iter().any(|k| !k) {
        let snapshot = known.clone();
        for idx in 0..grid.len() {
            if snapshot[idx] {
                continue;
            }
            let mut acc = [C::new(T::zero(), T::zero()); 4];
            let mut count = 0usize;
            for axis in 0..grid.dim() {
                for step in [-1isize, 1] {
                    if let Some(nb) = grid.neighbor(idx, axis, step) {
                        if snapshot[nb.index] && !nb.wrapped {
                            for (a, v) in acc.iter_mut().zip(vals[nb.index]) {
                                *a = *a + v;
                            }
                            count += 1;
                        }
                    }
                }
            }
            if count > 0 {
                let w = T::one() / T::from_usize_lossy(count);
                vals[idx] = acc.map(|a| a * w);
                known[idx] = true;
            }
        }
        if known == snapshot {
            break;
        }
    }
}

/// Pointwise exponent from a uniformly rescaled copy: `ρ → λ²ρ` gives
/// `e = ln(N_λ / N_1) / (2 ln λ)`.
pub fn scaling_exponent<T: Real>(
    base: &WeierstrassSpinors<T>,
    scaled: &WeierstrassSpinors<T>,
    lambda: T,
) -> Result<Vec<T>> {
    if base.len() != scaled.len() {
        return Err(Error::ShapeMismatch("spinor fields differ in size".into()));
    }
    if !(lambda > T::zero()) || lambda == T::one() {
        return Err(Error::Validation("scale factor must be positive and not 1".into()));
    }
    let denom = T::lit(2.0) * lambda.ln();
    Ok((0..base.len())
        .map(|i| (scaled.norm_product(i) / base.norm_product(i)).ln() / denom)
        .collect())
}

/// Least-squares slope of `ln N` against `ln ρ` over the chart.
pub fn regression_exponent<T: Real>(spinors: &WeierstrassSpinors<T>, rho: &[T]) -> Result<T> {
    let x: Vec<T> = rho.iter().map(|r| r.ln()).collect();
    let y: Vec<T> = (0..spinors.len()).map(|i| spinors.norm_product(i).ln()).collect();
    let m = T::from_usize_lossy(x.len());
    let mx = x.iter().fold(T::zero(), |s, v| s + *v) / m;
    let my = y.iter().fold(T::zero(), |s, v| s + *v) / m;
    let (mut sxy, mut sxx) = (T::zero(), T::zero());
    for (a, b) in x.iter().zip(&y) {
        sxy = sxy + (*a - mx) * (*b - my);
        sxx = sxx + (*a - mx) * (*a - mx);
    }
    if sxx <= T::lit(1e-20) {
        return Err(Error::Validation(
            "conformal factor is constant; regression undefined".into(),
        ));
    }
    Ok(sxy / sxx)
}

/// `D φ_i` for the four solutions `φ1..φ4` under the surface operator.
pub fn verify_zero_mode<T: Real>(
    chart: &ImmersionChart<T>,
    shape: &ShapeData<T>,
    conformal: &ConformalData<T>,
    spinors: &WeierstrassSpinors<T>,
) -> Result<[Residual<T>; 4]> {
    let op = build_surface_dirac_e4(chart, shape, conformal)?;
    Ok([
        apply_dirac(&op, &spinors.phi1())?,
        apply_dirac(&op, &spinors.phi2())?,
        apply_dirac(&op, &spinors.phi3())?,
        apply_dirac(&op, &spinors.phi4())?,
    ])
}
