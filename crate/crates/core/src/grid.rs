//! Uniform rectangular sample lattices (one or two axes).

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq)]
pub struct Axis<T> {
    pub samples: usize,
    pub start: T,
    pub end: T,
    /// Periodic axes exclude the end point: `x(end) == x(start)`.
    pub periodic: bool,
}

impl<T: Real> Axis<T> {
    pub fn new(samples: usize, start: T, end: T, periodic: bool) -> Result<Self> {
        let min = if periodic { 3 } else { 2 };
        if samples < min {
            return Err(Error::Grid(format!("axis needs at least {min} samples, got {samples}")));
        }
        if !(end > start) {
            return Err(Error::Grid("axis range must be increasing".into()));
        }
        Ok(Self {
            samples,
            start,
            end,
            periodic,
        })
    }

    pub fn spacing(&self) -> T {
        let span = self.end - self.start;
        if self.periodic {
            span / T::from_usize_lossy(self.samples)
        } else {
            span / T::from_usize_lossy(self.samples - 1)
        }
    }

    pub fn coord(&self, i: usize) -> T {
        self.start + self.spacing() * T::from_usize_lossy(i)
    }
}

/// Row-major lattice: axis 0 is the slow index.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid<T> {
    axes: Vec<Axis<T>>,
}

/// Neighbour lookup result.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Neighbor {
    pub index: usize,
    /// True when the step crossed a periodic seam.
    pub wrapped: bool,
}

impl<T: Real> Grid<T> {
    pub fn new(axes: Vec<Axis<T>>) -> Result<Self> {
        if axes.is_empty() || axes.len() > 2 {
            return Err(Error::Grid(format!("expected 1 or 2 axes, got {}", axes.len())));
        }
        Ok(Self { axes })
    }

    pub fn line(axis: Axis<T>) -> Self {
        Self { axes: vec![axis] }
    }

    pub fn rect(a0: Axis<T>, a1: Axis<T>) -> Self {
        Self { axes: vec![a0, a1] }
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Axis<T>] {
        &self.axes
    }

    pub fn axis(&self, a: usize) -> &Axis<T> {
        &self.axes[a]
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.samples).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn spacing(&self, a: usize) -> T {
        self.axes[a].spacing()
    }

    pub fn max_spacing(&self) -> T {
        self.axes.iter().map(Axis::spacing).fold(T::zero(), T::max)
    }

    /// Product of spacings (cell measure).
    pub fn cell_measure(&self) -> T {
        self.axes.iter().map(Axis::spacing).fold(T::one(), |p, h| p * h)
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.samples).collect()
    }

    pub fn flat(&self, multi: &[usize]) -> usize {
        match self.axes.len() {
            1 => multi[0],
            _ => multi[0] * self.axes[1].samples + multi[1],
        }
    }

    pub fn multi(&self, flat: usize) -> [usize; 2] {
        match self.axes.len() {
            1 => [flat, 0],
            _ => [flat / self.axes[1].samples, flat % self.axes[1].samples],
        }
    }

    /// Parameter coordinates of a sample.
    pub fn coords(&self, flat: usize) -> [T; 2] {
        let m = self.multi(flat);
        let c0 = self.axes[0].coord(m[0]);
        let c1 = if self.axes.len() > 1 {
            self.axes[1].coord(m[1])
        } else {
            T::zero()
        };
        [c0, c1]
    }

    /// Step `offset` samples along `axis`, wrapping on periodic axes.
    pub fn neighbor(&self, flat: usize, axis: usize, offset: isize) -> Option<Neighbor> {
        let mut m = self.multi(flat);
        let n = self.axes[axis].samples as isize;
        let pos = m[axis] as isize + offset;
        let (pos, wrapped) = if (0..n).contains(&pos) {
            (pos, false)
        } else if self.axes[axis].periodic {
            (pos.rem_euclid(n), true)
        } else {
            return None;
        };
        m[axis] = pos as usize;
        Some(Neighbor {
            index: self.flat(&m[..self.axes.len()]),
            wrapped,
        })
    }

    /// Predecessor in the sweep tree rooted at sample 0: paths run along
    /// axis 0 first, then along axis 1.
    pub fn predecessor(&self, flat: usize) -> Option<usize> {
        if flat == 0 {
            return None;
        }
        let m = self.multi(flat);
        if self.axes.len() == 1 {
            return Some(flat - 1);
        }
        if m[1] > 0 {
            Some(self.flat(&[m[0], m[1] - 1]))
        } else {
            Some(self.flat(&[m[0] - 1, 0]))
        }
    }

    /// Every lattice edge `(a, b, axis, wrapped)` with `b` one step forward.
    pub fn edges(&self) -> Vec<(usize, usize, usize, bool)> {
        let mut out = Vec::new();
        for idx in 0..self.len() {
            for axis in 0..self.axes.len() {
                if let Some(nb) = self.neighbor(idx, axis, 1) {
                    out.push((idx, nb.index, axis, nb.wrapped));
                }
            }
        }
        out
    }

    /// Samples with a full central stencil on every axis.
    pub fn interior(&self, flat: usize) -> bool {
        (0..self.axes.len()).all(|a| self.neighbor(flat, a, -1).is_some() && self.neighbor(flat, a, 1).is_some())
    }

    /// Same lattice with every axis uniformly rescaled in range.
    pub fn with_samples(&self, samples: &[usize]) -> Result<Self> {
        let axes = self
            .axes
            .iter()
            .zip(samples)
            .map(|(a, &n)| Axis::new(n, a.start, a.end, a.periodic))
            .collect::<Result<Vec<_>>>()?;
        Self::new(axes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periodic_spacing_excludes_endpoint() {
        let a = Axis::new(8, 0.0, 8.0, true).unwrap();
        assert_eq!(a.spacing(), 1.0);
        let b = Axis::new(9, 0.0, 8.0, false).unwrap();
        assert_eq!(b.spacing(), 1.0);
    }

    #[test]
    fn sweep_tree_runs_axis0_then_axis1() {
        let g = Grid::rect(
            Axis::new(3, 0.0, 1.0, false).unwrap(),
            Axis::new(4, 0.0, 1.0, false).unwrap(),
        );
        let mut path = vec![g.flat(&[2, 3])];
        while let Some(p) = g.predecessor(*path.last().unwrap()) {
            path.push(p);
        }
        let multis: Vec<_> = path.iter().rev().map(|&i| g.multi(i)).collect();
        assert_eq!(multis, vec![[0, 0], [1, 0], [2, 0], [2, 1], [2, 2], [2, 3]]);
    }

    #[test]
    fn wrap_only_on_periodic_axes() {
        let g = Grid::rect(
            Axis::new(4, 0.0, 1.0, true).unwrap(),
            Axis::new(4, 0.0, 1.0, false).unwrap(),
        );
        let nb = g.neighbor(g.flat(&[3, 1]), 0, 1).unwrap();
        assert!(nb.wrapped);
        assert_eq!(g.multi(nb.index), [0, 1]);
        assert!(g.neighbor(g.flat(&[1, 3]), 1, 1).is_none());
        assert!(!g.interior(g.flat(&[0, 0])));
        assert!(g.interior(g.flat(&[0, 1])));
    }

    #[test]
    fn rejects_tiny_axes() {
        assert!(Axis::new(1, 0.0, 1.0, false).is_err());
        assert!(Axis::new(4, 1.0, 0.0, false).is_err());
    }
}
