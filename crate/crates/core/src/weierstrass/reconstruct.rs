use super::spinors::WeierstrassSpinors;
use crate::error::{Error, Result};
use crate::geometry::ImmersionChart;
use crate::grid::Grid;
use crate::scalar::{Real, C};

/// Immersion rebuilt from spinors, `Z¹ = x¹ + i x²`, `Z² = x³ + i x⁴`.
#[derive(Clone, Debug)]
pub struct ReconstructionResult<T> {
    pub z1: Vec<C<T>>,
    pub z2: Vec<C<T>>,
    /// `max |∂_2 F_1 − ∂_1 F_2|` over both forms, central differences.
    pub closedness_residual: T,
    /// Threshold above which the forms are declared not closed.
    pub closedness_bound: T,
    /// Largest difference between the axis-0-first and axis-1-first paths.
    pub path_discrepancy: T,
    pub alignment_error: T,
}

/// `∂_α Z` for both coordinates: `[∂1Z¹, ∂2Z¹, ∂1Z², ∂2Z²]`.
fn forms<T: Real>(sp: &WeierstrassSpinors<T>, idx: usize) -> [C<T>; 4] {
    let i = C::new(T::zero(), T::one());
    let (f, g, m, n) = (sp.f[idx], sp.g[idx], sp.m[idx], sp.n[idx]);
    let (fm, gn) = (f * m, g * n);
    let (fn_, gm) = (f * n.conj(), g * m.conj());
    [fm - gn, i * (fm + gn), fn_ + gm, i * (fn_ - gm)]
}

/// Trapezoid integration of `dZ = F_0 ds⁰ + F_1 ds¹` from `base`, first along
/// `first`, then along the other axis. Periodic seams are not crossed.
fn integrate<T: Real>(grid: &Grid<T>, df: &[[C<T>; 4]], base: usize, comp: usize, first: usize) -> Vec<C<T>> {
    let zero = C::new(T::zero(), T::zero());
    let mut out = vec![zero; grid.len()];
    let b = grid.multi(base);
    let shape = grid.shape();
    let second = 1 - first;
    let half = T::lit(0.5);
    let line = |out: &mut Vec<C<T>>, start: [usize; 2], axis: usize| {
        let h = grid.spacing(axis);
        let c = comp * 2 + axis;
        for dir in [1isize, -1] {
            let mut cur = start;
            loop {
                let next = cur[axis] as isize + dir;
                if next < 0 || next >= shape[axis] as isize {
                    break;
                }
                let mut nxt = cur;
                nxt[axis] = next as usize;
                let (ia, ib) = (grid.flat(&cur[..grid.dim()]), grid.flat(&nxt[..grid.dim()]));
                let step = (df[ia][c] + df[ib][c]) * (h * half);
                out[ib] = if dir > 0 { out[ia] + step } else { out[ia] - step };
                cur = nxt;
            }
        }
    };
    line(&mut out, b, first);
    for j in 0..shape[first] {
        let mut start = b;
        start[first] = j;
        line(&mut out, start, second);
    }
    out
}

/// Central difference of component `c` along `axis`; `None` without a full stencil.
fn central<T: Real>(grid: &Grid<T>, df: &[[C<T>; 4]], idx: usize, axis: usize, c: usize) -> Option<C<T>> {
    let f = grid.neighbor(idx, axis, 1)?;
    let b = grid.neighbor(idx, axis, -1)?;
    Some((df[f.index][c] - df[b.index][c]) / (grid.spacing(axis) * T::lit(2.0)))
}

/// `|(F[i+2] − 2F[i+1] + 2F[i−1] − F[i−2]) / 2h³|`.
fn third<T: Real>(grid: &Grid<T>, df: &[[C<T>; 4]], idx: usize, axis: usize, c: usize) -> Option<T> {
    let at = |o: isize| grid.neighbor(idx, axis, o).map(|n| df[n.index][c]);
    let (p2, p1, m1, m2) = (at(2)?, at(1)?, at(-1)?, at(-2)?);
    let two = T::lit(2.0);
    let h = grid.spacing(axis);
    Some(((p2 - p1 * two + m1 * two - m2) / (two * h * h * h)).norm())
}

/// Integrates `dZ¹ = fm dz − gn dz̄`, `dZ² = f n̄ dz + g m̄ dz̄` from `base`,
/// matching the chart point there, and compares against the chart.
///
/// The curl of the sampled forms is compared with ten times its expected
/// central-difference truncation `h²/6 |∂³F|`; exceeding that is an error.
pub fn reconstruct_immersion<T: Real>(
    spinors: &WeierstrassSpinors<T>,
    chart: &ImmersionChart<T>,
    base: usize,
) -> Result<ReconstructionResult<T>> {
    let grid = &spinors.grid;
    if grid.dim() != 2 || chart.len() != grid.len() || chart.n() != 4 {
        return Err(Error::ShapeMismatch(
            "reconstruction needs spinors on the chart's surface grid in E^4".into(),
        ));
    }
    if base >= grid.len() {
        return Err(Error::Grid(format!("base point {base} outside grid of {}", grid.len())));
    }
    let df: Vec<[C<T>; 4]> = (0..grid.len()).map(|i| forms(spinors, i)).collect();

    let mut curl = T::zero();
    let mut truncation = T::zero();
    let mut scale = T::zero();
    let sixth = T::one() / T::lit(6.0);
    for idx in 0..grid.len() {
        for c in 0..4 {
            scale = scale.max(df[idx][c].norm());
        }
        for comp in 0..2 {
            let (c0, c1) = (2 * comp, 2 * comp + 1);
            if let (Some(d1f0), Some(d0f1)) = (central(grid, &df, idx, 1, c0), central(grid, &df, idx, 0, c1)) {
                curl = curl.max((d1f0 - d0f1).norm());
                let h0 = grid.spacing(0);
                let h1 = grid.spacing(1);
                let t = third(grid, &df, idx, 1, c0).unwrap_or(T::zero()) * h1 * h1
                    + third(grid, &df, idx, 0, c1).unwrap_or(T::zero()) * h0 * h0;
                truncation = truncation.max(t * sixth);
            }
        }
    }
    let bound = T::lit(10.0) * truncation + T::lit(1e-10) * (T::one() + scale);
    if curl > bound {
        return Err(Error::InconsistentSpinor {
            residual: curl.to_f64_lossy(),
            bound: bound.to_f64_lossy(),
        });
    }

    let x0 = chart.point(base);
    let origin = [C::new(x0[0], x0[1]), C::new(x0[2], x0[3])];
    let mut z = [Vec::new(), Vec::new()];
    let mut path = T::zero();
    for comp in 0..2 {
        let a = integrate(grid, &df, base, comp, 0);
        let b = integrate(grid, &df, base, comp, 1);
        for (p, q) in a.iter().zip(&b) {
            path = path.max((*p - *q).norm());
        }
        z[comp] = a.into_iter().map(|v| v + origin[comp]).collect();
    }
    let [z1, z2] = z;
    let mut align = T::zero();
    for idx in 0..grid.len() {
        let x = chart.point(idx);
        let e = (z1[idx] - C::new(x[0], x[1])).norm_sqr() + (z2[idx] - C::new(x[2], x[3])).norm_sqr();
        align = align.max(e.sqrt());
    }
    Ok(ReconstructionResult {
        z1,
        z2,
        closedness_residual: curl,
        closedness_bound: bound,
        path_discrepancy: path,
        alignment_error: align,
    })
}
