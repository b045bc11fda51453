use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::scalar::{Real, C};

/// Spinor values on a grid.
///
/// `wrap_signs[axis]` is the factor a value picks up when a stencil crosses
/// the periodic seam of that axis (`−1` for antiperiodic spinors).
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorField<T> {
    dim: usize,
    data: Vec<C<T>>,
    pub wrap_signs: Vec<i8>,
}

impl<T: Real> SpinorField<T> {
    pub fn zeros(grid: &Grid<T>, dim: usize) -> Self {
        Self {
            dim,
            data: vec![C::new(T::zero(), T::zero()); grid.len() * dim],
            wrap_signs: vec![1; grid.dim()],
        }
    }

    pub fn from_fn(grid: &Grid<T>, dim: usize, mut f: impl FnMut(usize) -> Vec<C<T>>) -> Self {
        let mut out = Self::zeros(grid, dim);
        for idx in 0..grid.len() {
            let v = f(idx);
            assert_eq!(v.len(), dim, "spinor length");
            out.data[idx * dim..(idx + 1) * dim].copy_from_slice(&v);
        }
        out
    }

    pub fn with_wrap_signs(mut self, signs: Vec<i8>) -> Self {
        self.wrap_signs = signs;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn samples(&self) -> usize {
        self.data.len() / self.dim
    }

    pub fn get(&self, idx: usize) -> &[C<T>] {
        &self.data[idx * self.dim..(idx + 1) * self.dim]
    }

    pub fn get_mut(&mut self, idx: usize) -> &mut [C<T>] {
        &mut self.data[idx * self.dim..(idx + 1) * self.dim]
    }

    pub fn data(&self) -> &[C<T>] {
        &self.data
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: C<T>, other: &Self, b: C<T>) -> Result<Self> {
        if self.dim != other.dim || self.data.len() != other.data.len() {
            return Err(Error::ShapeMismatch("spinor fields differ in shape".into()));
        }
        Ok(Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(x, y)| a * *x + b * *y)
                .collect(),
            wrap_signs: self.wrap_signs.clone(),
        })
    }

    pub(crate) fn check_grid(&self, grid: &Grid<T>, dim: usize) -> Result<()> {
        if self.dim != dim || self.samples() != grid.len() || self.wrap_signs.len() != grid.dim() {
            return Err(Error::ShapeMismatch(format!(
                "field of {} spinors of length {} vs grid of {} samples, operator spinor length {dim}",
                self.samples(),
                self.dim,
                grid.len()
            )));
        }
        Ok(())
    }

    /// Central difference along `axis` at `idx`, honouring seam signs.
    /// `None` at open boundaries.
    pub fn central_diff(&self, grid: &Grid<T>, idx: usize, axis: usize) -> Option<Vec<C<T>>> {
        let f = grid.neighbor(idx, axis, 1)?;
        let b = grid.neighbor(idx, axis, -1)?;
        let sign = |wrapped: bool| {
            if wrapped && self.wrap_signs[axis] < 0 {
                -T::one()
            } else {
                T::one()
            }
        };
        let (sf, sb) = (sign(f.wrapped), sign(b.wrapped));
        let two_h = grid.spacing(axis) * T::lit(2.0);
        Some(
            self.get(f.index)
                .iter()
                .zip(self.get(b.index))
                .map(|(x, y)| (*x * sf - *y * sb) / two_h)
                .collect(),
        )
    }
}

/// Output of an operator application; samples without a full stencil are
/// excluded from the norms.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual<T> {
    pub field: SpinorField<T>,
    pub valid: Vec<bool>,
    pub cell: T,
}

impl<T: Real> Residual<T> {
    fn pointwise(&self) -> impl Iterator<Item = T> + '_ {
        (0..self.valid.len())
            .filter(|&i| self.valid[i])
            .map(|i| self.field.get(i).iter().fold(T::zero(), |s, z| s + z.norm_sqr()).sqrt())
    }

    pub fn max_norm(&self) -> T {
        self.pointwise().fold(T::zero(), T::max)
    }

    /// `sqrt(Σ |r|² · cell)`.
    pub fn l2_norm(&self) -> T {
        (self.pointwise().fold(T::zero(), |s, r| s + r * r) * self.cell).sqrt()
    }

    pub fn valid_count(&self) -> usize {
        self.valid.iter().filter(|v| **v).count()
    }
}
