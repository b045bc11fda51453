use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::scalar::Real;

/// How derivatives of a chart are obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum JetMode {
    #[default]
    Analytic,
    FiniteDifference,
}

/// First and second derivatives of the immersion at every sample.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet<T> {
    k: usize,
    n: usize,
    d1: Vec<T>,
    d2: Vec<T>,
}

impl<T: Real> Jet<T> {
    pub fn zeros(samples: usize, k: usize, n: usize) -> Self {
        Self {
            k,
            n,
            d1: vec![T::zero(); samples * k * n],
            d2: vec![T::zero(); samples * k * k * n],
        }
    }

    /// `∂_α x` at a sample.
    pub fn first(&self, idx: usize, alpha: usize) -> &[T] {
        let o = (idx * self.k + alpha) * self.n;
        &self.d1[o..o + self.n]
    }

    pub fn first_mut(&mut self, idx: usize, alpha: usize) -> &mut [T] {
        let o = (idx * self.k + alpha) * self.n;
        &mut self.d1[o..o + self.n]
    }

    /// `∂_α ∂_β x` at a sample.
    pub fn second(&self, idx: usize, alpha: usize, beta: usize) -> &[T] {
        let o = ((idx * self.k + alpha) * self.k + beta) * self.n;
        &self.d2[o..o + self.n]
    }

    pub fn second_mut(&mut self, idx: usize, alpha: usize, beta: usize) -> &mut [T] {
        let o = ((idx * self.k + alpha) * self.k + beta) * self.n;
        &mut self.d2[o..o + self.n]
    }
}

/// Sampled immersion `x: R^k → R^n` on a rectangular grid.
#[derive(Clone, Debug)]
pub struct ImmersionChart<T> {
    k: usize,
    n: usize,
    grid: Grid<T>,
    points: Vec<T>,
    jet: Option<Jet<T>>,
}

impl<T: Real> ImmersionChart<T> {
    /// `points` is row-major: `n` coordinates per sample in grid order.
    pub fn new(n: usize, grid: Grid<T>, points: Vec<T>, jet: Option<Jet<T>>) -> Result<Self> {
        let k = grid.dim();
        if !(2..=4).contains(&n) || k >= n {
            return Err(Error::InvalidDimension(format!("unsupported (k, n) = ({k}, {n})")));
        }
        if points.len() != grid.len() * n {
            return Err(Error::ShapeMismatch(format!(
                "{} coordinates for {} samples in R^{n}",
                points.len(),
                grid.len()
            )));
        }
        if let Some(j) = &jet {
            if j.k != k || j.n != n || j.d1.len() != grid.len() * k * n {
                return Err(Error::ShapeMismatch("jet does not match chart".into()));
            }
        }
        Ok(Self {
            k,
            n,
            grid,
            points,
            jet,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn grid(&self) -> &Grid<T> {
        &self.grid
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn point(&self, idx: usize) -> &[T] {
        &self.points[idx * self.n..(idx + 1) * self.n]
    }

    pub fn points(&self) -> &[T] {
        &self.points
    }

    pub fn analytic_jet(&self) -> Option<&Jet<T>> {
        self.jet.as_ref()
    }

    pub fn without_jet(&self) -> Self {
        Self {
            jet: None,
            ..self.clone()
        }
    }

    /// Derivatives in the requested mode; `Analytic` falls back to finite
    /// differences when the chart carries no jet.
    pub fn jet(&self, mode: JetMode) -> Jet<T> {
        match (mode, &self.jet) {
            (JetMode::Analytic, Some(j)) => j.clone(),
            _ => self.finite_difference_jet(),
        }
    }

    /// Second-order finite differences: central on interior and periodic
    /// samples, one-sided second-order stencils at open boundaries.
    pub fn finite_difference_jet(&self) -> Jet<T> {
        let (k, n) = (self.k, self.n);
        let mut jet = Jet::zeros(self.len(), k, n);
        let pts = |i: usize| self.point(i).to_vec();
        for a in 0..k {
            let d = diff1(&self.grid, a, n, &pts);
            for idx in 0..self.len() {
                jet.first_mut(idx, a).copy_from_slice(&d[idx * n..(idx + 1) * n]);
            }
            let dd = diff2(&self.grid, a, n, &pts);
            for idx in 0..self.len() {
                jet.second_mut(idx, a, a).copy_from_slice(&dd[idx * n..(idx + 1) * n]);
            }
        }
        if k == 2 {
            let first0 = |i: usize| jet.first(i, 0).to_vec();
            let mixed = diff1(&self.grid, 1, n, &first0);
            for idx in 0..self.len() {
                let m = &mixed[idx * n..(idx + 1) * n];
                jet.second_mut(idx, 0, 1).copy_from_slice(m);
                jet.second_mut(idx, 1, 0).copy_from_slice(m);
            }
        }
        jet
    }
}

/// Second-order first derivative of a vector field along `axis`.
pub fn diff1<T: Real>(grid: &Grid<T>, axis: usize, width: usize, f: &dyn Fn(usize) -> Vec<T>) -> Vec<T> {
    let h = grid.spacing(axis);
    let two_h = h + h;
    let c3 = T::lit(3.0);
    let c4 = T::lit(4.0);
    let mut out = vec![T::zero(); grid.len() * width];
    for idx in 0..grid.len() {
        let fwd = grid.neighbor(idx, axis, 1);
        let bwd = grid.neighbor(idx, axis, -1);
        let o = &mut out[idx * width..(idx + 1) * width];
        match (bwd, fwd) {
            (Some(b), Some(f1)) => {
                let (fb, ff) = (f(b.index), f(f1.index));
                for c in 0..width {
                    o[c] = (ff[c] - fb[c]) / two_h;
                }
            }
            (None, Some(f1)) => {
                let f2 = grid.neighbor(idx, axis, 2).expect("axis has >= 3 samples");
                let (f0, ff1, ff2) = (f(idx), f(f1.index), f(f2.index));
                for c in 0..width {
                    o[c] = (-c3 * f0[c] + c4 * ff1[c] - ff2[c]) / two_h;
                }
            }
            (Some(b1), None) => {
                let b2 = grid.neighbor(idx, axis, -2).expect("axis has >= 3 samples");
                let (f0, fb1, fb2) = (f(idx), f(b1.index), f(b2.index));
                for c in 0..width {
                    o[c] = (c3 * f0[c] - c4 * fb1[c] + fb2[c]) / two_h;
                }
            }
            (None, None) => {}
        }
    }
    out
}

/// Second-order pure second derivative along `axis`.
pub fn diff2<T: Real>(grid: &Grid<T>, axis: usize, width: usize, f: &dyn Fn(usize) -> Vec<T>) -> Vec<T> {
    let h = grid.spacing(axis);
    let h2 = h * h;
    let two = T::lit(2.0);
    let (c2, c5, c4) = (T::lit(2.0), T::lit(5.0), T::lit(4.0));
    let mut out = vec![T::zero(); grid.len() * width];
    for idx in 0..grid.len() {
        let fwd = grid.neighbor(idx, axis, 1);
        let bwd = grid.neighbor(idx, axis, -1);
        let o = &mut out[idx * width..(idx + 1) * width];
        let one_sided = |dir: isize, o: &mut [T]| {
            let s: Vec<Vec<T>> = (0..4)
                .map(|j| {
                    let i = if j == 0 {
                        idx
                    } else {
                        grid.neighbor(idx, axis, dir * j).expect("axis has >= 4 samples").index
                    };
                    f(i)
                })
                .collect();
            for c in 0..width {
                o[c] = (c2 * s[0][c] - c5 * s[1][c] + c4 * s[2][c] - s[3][c]) / h2;
            }
        };
        match (bwd, fwd) {
            (Some(b), Some(f1)) => {
                let (fb, f0, ff) = (f(b.index), f(idx), f(f1.index));
                for c in 0..width {
                    o[c] = (ff[c] - two * f0[c] + fb[c]) / h2;
                }
            }
            (None, Some(_)) => one_sided(1, o),
            (Some(_), None) => one_sided(-1, o),
            (None, None) => {}
        }
    }
    out
}
