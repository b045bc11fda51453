use super::chart::{diff1, ImmersionChart, Jet, JetMode};
use super::frame::{normal_frame, FrameOptions, NormalFrame};
use super::metric::{induced_metric, MetricField};
use crate::error::{Error, Result};
use crate::linalg::{dot, Mat};
use crate::scalar::Real;

/// Sign relating the stored Weingarten coefficients `h g⁻¹` (with
/// `h = e·∂²x`) to the coefficients entering the Dirac potential and the
/// tubular frame: `γ = WEINGARTEN_SIGN · h g⁻¹`.
pub const WEINGARTEN_SIGN: i8 = -1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ShapeOptions {
    pub jet: JetMode,
    pub frame: FrameOptions,
    /// Escalates accuracy warnings to errors.
    pub strict: bool,
}

/// Extrinsic data of a sampled immersion.
#[derive(Clone, Debug)]
pub struct ShapeData<T> {
    k: usize,
    n: usize,
    pub jet: Jet<T>,
    pub jet_mode: JetMode,
    /// Whether normals were parallel-transported.
    pub parallel: bool,
    pub metric: MetricField<T>,
    pub normals: NormalFrame<T>,
    second: Vec<Mat<T>>,
    weingarten: Vec<Mat<T>>,
    connection: Vec<T>,
    pub warnings: Vec<String>,
}

impl<T: Real> ShapeData<T> {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn codim(&self) -> usize {
        self.n - self.k
    }

    pub fn len(&self) -> usize {
        self.metric.metric.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `h_{ȧ,αβ} = e_ȧ · ∂_α∂_β x`.
    pub fn second_fundamental(&self, idx: usize, a: usize) -> &Mat<T> {
        &self.second[idx * self.codim() + a]
    }

    /// Stored Weingarten matrix `W_αβ = h_{ȧ,αγ} g^{γβ}`.
    pub fn weingarten(&self, idx: usize, a: usize) -> &Mat<T> {
        &self.weingarten[idx * self.codim() + a]
    }

    /// `WEINGARTEN_SIGN · W`.
    pub fn signed_weingarten(&self, idx: usize, a: usize) -> Mat<T> {
        let s = T::lit(f64::from(WEINGARTEN_SIGN));
        self.weingarten(idx, a).map(|x| *x * s)
    }

    /// `t_ȧ = tr W`.
    pub fn mean_trace(&self, idx: usize, a: usize) -> T {
        self.weingarten(idx, a).trace()
    }

    pub fn signed_mean_trace(&self, idx: usize, a: usize) -> T {
        T::lit(f64::from(WEINGARTEN_SIGN)) * self.mean_trace(idx, a)
    }

    /// Normal connection `e_ȧ · ∂_α e_ḃ` (finite differences of the frame).
    pub fn normal_connection(&self, idx: usize, alpha: usize, a: usize, b: usize) -> T {
        let c = self.codim();
        self.connection[((idx * self.k + alpha) * c + a) * c + b]
    }

    /// Eigenvalues of `W` along normal `a` (real: `W` is `g`-self-adjoint).
    pub fn principal_curvatures(&self, idx: usize, a: usize) -> Vec<T> {
        let w = self.weingarten(idx, a);
        if self.k == 1 {
            return vec![w[(0, 0)]];
        }
        let tr = w.trace();
        let det = w.det();
        let disc = (tr * tr - T::lit(4.0) * det).max(T::zero()).sqrt();
        let half = T::lit(0.5);
        vec![(tr + disc) * half, (tr - disc) * half]
    }

    pub fn max_abs_curvature(&self) -> T {
        let mut m = T::zero();
        for idx in 0..self.len() {
            for a in 0..self.codim() {
                for kappa in self.principal_curvatures(idx, a) {
                    m = m.max(kappa.abs());
                }
            }
        }
        m
    }
}

pub fn shape_data<T: Real>(chart: &ImmersionChart<T>, options: ShapeOptions) -> Result<ShapeData<T>> {
    let (k, n) = (chart.k(), chart.n());
    let codim = n - k;
    let mut warnings = Vec::new();
    let analytic = options.jet == JetMode::Analytic && chart.analytic_jet().is_some();
    if !analytic {
        let h = chart.grid().max_spacing();
        if h > T::lit(0.5) {
            let msg = format!("finite-difference curvature on a coarse grid (h = {h})");
            if options.strict {
                return Err(Error::Accuracy(msg));
            }
            warnings.push(msg);
        }
    }
    let jet = chart.jet(options.jet);
    let metric = induced_metric(chart, &jet)?;
    let normals = normal_frame(chart, &jet, options.frame)?;
    let mut second = Vec::with_capacity(chart.len() * codim);
    let mut weingarten = Vec::with_capacity(chart.len() * codim);
    for idx in 0..chart.len() {
        for a in 0..codim {
            let e = normals.normal(idx, a);
            let h = Mat::from_fn(k, k, |al, be| dot(e, jet.second(idx, al, be)));
            weingarten.push(h.matmul(&metric.inverse[idx]));
            second.push(h);
        }
    }
    let width = codim * n;
    let mut connection = vec![T::zero(); chart.len() * k * codim * codim];
    for alpha in 0..k {
        let d = diff1(chart.grid(), alpha, width, &|i| normals.sample(i).to_vec());
        for idx in 0..chart.len() {
            for a in 0..codim {
                for b in 0..codim {
                    let de = &d[idx * width + b * n..idx * width + (b + 1) * n];
                    connection[((idx * k + alpha) * codim + a) * codim + b] = dot(normals.normal(idx, a), de);
                }
            }
        }
    }
    Ok(ShapeData {
        k,
        n,
        parallel: options.frame.parallel,
        jet_mode: if analytic {
            JetMode::Analytic
        } else {
            JetMode::FiniteDifference
        },
        jet,
        metric,
        normals,
        second,
        weingarten,
        connection,
        warnings,
    })
}

/// `H² − K` for surfaces in E³, with `H = t/2` and `K = det W`.
pub fn schrodinger_potential_e3<T: Real>(shape: &ShapeData<T>) -> Result<Vec<T>> {
    if shape.k() != 2 || shape.n() != 3 {
        return Err(Error::Unsupported(format!(
            "H^2 - K needs a surface in E^3, got k={}, n={}",
            shape.k(),
            shape.n()
        )));
    }
    Ok((0..shape.len())
        .map(|idx| {
            let h = shape.mean_trace(idx, 0) * T::lit(0.5);
            h * h - shape.weingarten(idx, 0).det()
        })
        .collect())
}
