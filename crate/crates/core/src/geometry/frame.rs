use super::chart::{ImmersionChart, Jet};
use crate::error::{Error, Result};
use crate::linalg::{dot, Mat};
use crate::scalar::Real;

/// Orthonormal normal vectors `e_ȧ` at every sample.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalFrame<T> {
    n: usize,
    codim: usize,
    data: Vec<T>,
}

impl<T: Real> NormalFrame<T> {
    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn normal(&self, idx: usize, a: usize) -> &[T] {
        let o = (idx * self.codim + a) * self.n;
        &self.data[o..o + self.n]
    }

    /// All normals of one sample, concatenated.
    pub fn sample(&self, idx: usize) -> &[T] {
        let w = self.codim * self.n;
        &self.data[idx * w..(idx + 1) * w]
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FrameOptions {
    /// Transport normals without rotation along the curve (curves only).
    pub parallel: bool,
}

fn sub_proj<T: Real>(v: &mut [T], basis: &[Vec<T>]) {
    for b in basis {
        let c = dot(v, b);
        for (x, y) in v.iter_mut().zip(b) {
            *x = *x - c * *y;
        }
    }
}

fn normalized<T: Real>(mut v: Vec<T>) -> Option<Vec<T>> {
    let n = dot(&v, &v).sqrt();
    if n.is_finite() && n > T::zero() {
        v.iter_mut().for_each(|x| *x = *x / n);
        Some(v)
    } else {
        None
    }
}

/// Gram–Schmidt complement of the tangent space.
///
/// Seeds are tried in order; a seed is skipped when less than `keep` of its
/// length survives projection.
fn complement<T: Real>(tangents: &[Vec<T>], seeds: &[Vec<T>], codim: usize) -> Option<Vec<Vec<T>>> {
    let mut basis: Vec<Vec<T>> = Vec::new();
    for t in tangents {
        let mut v = t.clone();
        sub_proj(&mut v, &basis);
        basis.push(normalized(v)?);
    }
    let keep = T::lit(0.1);
    let mut normals = Vec::with_capacity(codim);
    for s in seeds {
        if normals.len() == codim {
            break;
        }
        let len = dot(s, s).sqrt();
        let mut v = s.clone();
        sub_proj(&mut v, &basis);
        sub_proj(&mut v, &normals);
        if dot(&v, &v).sqrt() <= keep * len {
            continue;
        }
        // second pass for numerical orthogonality
        sub_proj(&mut v, &basis);
        sub_proj(&mut v, &normals);
        normals.push(normalized(v)?);
    }
    (normals.len() == codim).then_some(normals)
}

fn orientation<T: Real>(tangents: &[Vec<T>], normals: &[Vec<T>]) -> T {
    let n = tangents[0].len();
    let cols: Vec<&Vec<T>> = tangents.iter().chain(normals).collect();
    Mat::from_fn(n, n, |r, c| cols[c][r]).det()
}

/// Orthonormal normals, continuous along the sweep tree and positively
/// oriented (`det[∂_1 x, …, ∂_k x, e_1, …, e_{n−k}] > 0`).
///
/// The base sample seeds Gram–Schmidt with the ambient axes in order; every
/// later sample seeds with its tree predecessor's normals. With
/// `options.parallel` (curves), each step applies the minimal rotation that
/// carries the predecessor's normals into the new normal space.
pub fn normal_frame<T: Real>(chart: &ImmersionChart<T>, jet: &Jet<T>, options: FrameOptions) -> Result<NormalFrame<T>> {
    let (k, n) = (chart.k(), chart.n());
    if k >= n {
        return Err(Error::Unsupported(format!("no normal space for k={k}, n={n}")));
    }
    if options.parallel && k != 1 {
        return Err(Error::Unsupported("parallel frames are defined for curves only".into()));
    }
    let codim = n - k;
    let grid = chart.grid();
    let axes: Vec<Vec<T>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect();
    let mut data = Vec::with_capacity(grid.len() * codim * n);
    for idx in 0..grid.len() {
        let tangents: Vec<Vec<T>> = (0..k).map(|a| jet.first(idx, a).to_vec()).collect();
        let pred: Option<Vec<Vec<T>>> = grid.predecessor(idx).map(|p| {
            let w = codim * n;
            data[p * w..(p + 1) * w].chunks(n).map(<[T]>::to_vec).collect()
        });
        let mut seeds = pred.clone().unwrap_or_default();
        seeds.extend(axes.iter().cloned());
        let mut normals = complement(&tangents, &seeds, codim).ok_or(Error::Frame { index: idx })?;
        if let (true, Some(prev)) = (options.parallel, &pred) {
            let f = Mat::from_fn(n, codim, |r, c| normals[c][r]);
            let p = Mat::from_fn(n, codim, |r, c| prev[c][r]);
            let q = f
                .transpose()
                .matmul(&p)
                .polar_orthogonal()
                .ok_or(Error::Frame { index: idx })?;
            let moved = f.matmul(&q);
            normals = (0..codim).map(|c| (0..n).map(|r| moved[(r, c)]).collect()).collect();
        }
        if orientation(&tangents, &normals) < T::zero() {
            let last = normals.last_mut().expect("codim >= 1");
            last.iter_mut().for_each(|x| *x = -*x);
        }
        for v in &normals {
            data.extend_from_slice(v);
        }
    }
    Ok(NormalFrame { n, codim, data })
}
