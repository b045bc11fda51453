//! Closed-form immersions with hand-coded first and second derivatives.

use super::chart::{ImmersionChart, Jet};
use crate::error::{Error, Result};
use crate::grid::{Axis, Grid};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphKind {
    /// `(s1² + s2²)/2`
    Paraboloid,
    /// `(s1² − s2²)/2`
    Saddle,
    /// `sin(s1) cos(s2)/2`
    Wave,
    /// `exp(−(s1² + s2²))`
    Gaussian,
}

impl GraphKind {
    pub const ALL: [GraphKind; 4] = [Self::Paraboloid, Self::Saddle, Self::Wave, Self::Gaussian];

    pub fn name(self) -> &'static str {
        match self {
            Self::Paraboloid => "paraboloid",
            Self::Saddle => "saddle",
            Self::Wave => "wave",
            Self::Gaussian => "gaussian",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    /// `(F, [F_1, F_2], [F_11, F_12, F_22])`
    fn eval<T: Real>(self, a: T, b: T) -> (T, [T; 2], [T; 3]) {
        let half = T::lit(0.5);
        match self {
            Self::Paraboloid => (half * (a * a + b * b), [a, b], [T::one(), T::zero(), T::one()]),
            Self::Saddle => (half * (a * a - b * b), [a, -b], [T::one(), T::zero(), -T::one()]),
            Self::Wave => {
                let (sa, ca) = a.sin_cos();
                let (sb, cb) = b.sin_cos();
                (
                    half * sa * cb,
                    [half * ca * cb, -half * sa * sb],
                    [-half * sa * cb, -half * ca * sb, -half * sa * cb],
                )
            }
            Self::Gaussian => {
                let f = (-(a * a + b * b)).exp();
                let two = T::lit(2.0);
                let four = T::lit(4.0);
                (
                    f,
                    [-two * a * f, -two * b * f],
                    [(four * a * a - two) * f, four * a * b * f, (four * b * b - two) * f],
                )
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Shape<T> {
    /// `(s1 + shear·s2, s2)`
    Plane {
        shear: T,
    },
    /// `(s, 0)`
    Line,
    /// Arclength-parameterized circle, periodic.
    Circle {
        radius: T,
    },
    /// Arclength-parameterized helix `(R cos t, R sin t, c t)`.
    Helix {
        radius: T,
        pitch: T,
    },
    /// Inverse stereographic projection from the north pole.
    Sphere {
        radius: T,
    },
    /// `(a cosh v cos u, a cosh v sin u, a v)`, periodic in `u`.
    Catenoid {
        a: T,
    },
    Enneper,
    /// Arclength product of two circles in E⁴, periodic in both axes.
    ProductTorus {
        r1: T,
        r2: T,
    },
    Graph {
        kind: GraphKind,
    },
}

pub const SHAPE_NAMES: [&str; 9] = [
    "plane",
    "line",
    "circle",
    "helix",
    "sphere",
    "catenoid",
    "enneper",
    "product_torus",
    "graph",
];

/// A catalog shape with a uniform scale and optional zero-padding into a
/// larger ambient space.
#[derive(Clone, Debug, PartialEq)]
pub struct ShapeSpec<T> {
    pub shape: Shape<T>,
    pub scale: T,
    pub ambient: Option<usize>,
}

/// Position and derivatives at one parameter point.
#[derive(Clone, Debug, PartialEq)]
pub struct PointJet<T> {
    pub x: Vec<T>,
    /// `d1[α]`
    pub d1: Vec<Vec<T>>,
    /// `d2[α][β]`
    pub d2: Vec<Vec<Vec<T>>>,
}

impl<T: Real> ShapeSpec<T> {
    pub fn new(shape: Shape<T>) -> Self {
        Self {
            shape,
            scale: T::one(),
            ambient: None,
        }
    }

    pub fn scaled(mut self, scale: T) -> Self {
        self.scale = scale;
        self
    }

    pub fn in_ambient(mut self, n: usize) -> Self {
        self.ambient = Some(n);
        self
    }

    pub fn name(&self) -> &'static str {
        match self.shape {
            Shape::Plane { .. } => "plane",
            Shape::Line => "line",
            Shape::Circle { .. } => "circle",
            Shape::Helix { .. } => "helix",
            Shape::Sphere { .. } => "sphere",
            Shape::Catenoid { .. } => "catenoid",
            Shape::Enneper => "enneper",
            Shape::ProductTorus { .. } => "product_torus",
            Shape::Graph { .. } => "graph",
        }
    }

    pub fn k(&self) -> usize {
        match self.shape {
            Shape::Line | Shape::Circle { .. } | Shape::Helix { .. } => 1,
            _ => 2,
        }
    }

    pub fn natural_ambient(&self) -> usize {
        match self.shape {
            Shape::Line | Shape::Circle { .. } => 2,
            Shape::ProductTorus { .. } => 4,
            _ => 3,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient.unwrap_or_else(|| self.natural_ambient())
    }

    /// Parameter box: `(start, end, periodic)` per axis.
    pub fn domain(&self) -> Vec<(T, T, bool)> {
        let tau = T::TAU();
        let unit = (-T::one(), T::one(), false);
        match self.shape {
            Shape::Line => vec![unit],
            Shape::Circle { radius } => vec![(T::zero(), tau * radius, true)],
            Shape::Helix { radius, pitch } => {
                let l = (radius * radius + pitch * pitch).sqrt();
                vec![(T::zero(), tau * l, false)]
            }
            Shape::Catenoid { .. } => vec![(T::zero(), tau, true), unit],
            Shape::ProductTorus { r1, r2 } => {
                vec![(T::zero(), tau * r1, true), (T::zero(), tau * r2, true)]
            }
            Shape::Plane { .. } | Shape::Sphere { .. } | Shape::Enneper | Shape::Graph { .. } => {
                vec![unit, unit]
            }
        }
    }

    fn validate(&self) -> Result<()> {
        let positive = |v: T, what: &str| {
            if v > T::zero() && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidDimension(format!("{what} must be positive")))
            }
        };
        positive(self.scale, "scale")?;
        match self.shape {
            Shape::Circle { radius } | Shape::Sphere { radius } => positive(radius, "radius")?,
            Shape::Helix { radius, pitch } => {
                positive(radius, "radius")?;
                if !pitch.is_finite() {
                    return Err(Error::InvalidDimension("pitch must be finite".into()));
                }
            }
            Shape::Catenoid { a } => positive(a, "a")?,
            Shape::ProductTorus { r1, r2 } => {
                positive(r1, "r1")?;
                positive(r2, "r2")?;
            }
            _ => {}
        }
        let n = self.ambient();
        if n < self.natural_ambient() || n > 4 {
            return Err(Error::InvalidDimension(format!("{} cannot live in R^{n}", self.name())));
        }
        Ok(())
    }

    /// Unscaled, unpadded position and derivatives.
    fn raw(&self, s: [T; 2]) -> PointJet<T> {
        let z = T::zero();
        let o = T::one();
        let two = T::lit(2.0);
        let [u, v] = s;
        match self.shape {
            Shape::Plane { shear } => PointJet {
                x: vec![u + shear * v, v, z],
                d1: vec![vec![o, z, z], vec![shear, o, z]],
                d2: vec![vec![vec![z; 3]; 2]; 2],
            },
            Shape::Line => PointJet {
                x: vec![u, z],
                d1: vec![vec![o, z]],
                d2: vec![vec![vec![z, z]]],
            },
            Shape::Circle { radius: r } => {
                let (sn, cs) = (u / r).sin_cos();
                PointJet {
                    x: vec![r * cs, r * sn],
                    d1: vec![vec![-sn, cs]],
                    d2: vec![vec![vec![-cs / r, -sn / r]]],
                }
            }
            Shape::Helix { radius: r, pitch: c } => {
                let l = (r * r + c * c).sqrt();
                let t = u / l;
                let (sn, cs) = t.sin_cos();
                PointJet {
                    x: vec![r * cs, r * sn, c * t],
                    d1: vec![vec![-r * sn / l, r * cs / l, c / l]],
                    d2: vec![vec![vec![-r * cs / (l * l), -r * sn / (l * l), z]]],
                }
            }
            Shape::Sphere { radius: r } => {
                let w = o / (o + u * u + v * v);
                let w2 = w * w;
                let w3 = w2 * w;
                let eight = T::lit(8.0);
                let wu = -two * u * w2;
                let wv = -two * v * w2;
                let wuu = -two * w2 + eight * u * u * w3;
                let wvv = -two * w2 + eight * v * v * w3;
                let wuv = eight * u * v * w3;
                let tr = two * r;
                PointJet {
                    x: vec![tr * u * w, tr * v * w, r * (o - two * w)],
                    d1: vec![
                        vec![tr * (w + u * wu), tr * v * wu, -tr * wu],
                        vec![tr * u * wv, tr * (w + v * wv), -tr * wv],
                    ],
                    d2: vec![
                        vec![
                            vec![tr * (two * wu + u * wuu), tr * v * wuu, -tr * wuu],
                            vec![tr * (wv + u * wuv), tr * (wu + v * wuv), -tr * wuv],
                        ],
                        vec![
                            vec![tr * (wv + u * wuv), tr * (wu + v * wuv), -tr * wuv],
                            vec![tr * u * wvv, tr * (two * wv + v * wvv), -tr * wvv],
                        ],
                    ],
                }
            }
            Shape::Catenoid { a } => {
                let (su, cu) = u.sin_cos();
                let (ch, sh) = (v.cosh(), v.sinh());
                let uv = vec![-a * sh * su, a * sh * cu, z];
                PointJet {
                    x: vec![a * ch * cu, a * ch * su, a * v],
                    d1: vec![vec![-a * ch * su, a * ch * cu, z], vec![a * sh * cu, a * sh * su, a]],
                    d2: vec![
                        vec![vec![-a * ch * cu, -a * ch * su, z], uv.clone()],
                        vec![uv, vec![a * ch * cu, a * ch * su, z]],
                    ],
                }
            }
            Shape::Enneper => {
                let third = T::lit(3.0);
                let uv = vec![two * v, two * u, z];
                PointJet {
                    x: vec![
                        u - u * u * u / third + u * v * v,
                        v - v * v * v / third + v * u * u,
                        u * u - v * v,
                    ],
                    d1: vec![
                        vec![o - u * u + v * v, two * u * v, two * u],
                        vec![two * u * v, o - v * v + u * u, -two * v],
                    ],
                    d2: vec![
                        vec![vec![-two * u, two * v, two], uv.clone()],
                        vec![uv, vec![two * u, -two * v, -two]],
                    ],
                }
            }
            Shape::ProductTorus { r1, r2 } => {
                let (s1, c1) = (u / r1).sin_cos();
                let (s2, c2) = (v / r2).sin_cos();
                PointJet {
                    x: vec![r1 * c1, r1 * s1, r2 * c2, r2 * s2],
                    d1: vec![vec![-s1, c1, z, z], vec![z, z, -s2, c2]],
                    d2: vec![
                        vec![vec![-c1 / r1, -s1 / r1, z, z], vec![z; 4]],
                        vec![vec![z; 4], vec![z, z, -c2 / r2, -s2 / r2]],
                    ],
                }
            }
            Shape::Graph { kind } => {
                let (f, g, h) = kind.eval(u, v);
                PointJet {
                    x: vec![u, v, f],
                    d1: vec![vec![o, z, g[0]], vec![z, o, g[1]]],
                    d2: vec![
                        vec![vec![z, z, h[0]], vec![z, z, h[1]]],
                        vec![vec![z, z, h[1]], vec![z, z, h[2]]],
                    ],
                }
            }
        }
    }

    /// Scaled and padded point jet.
    pub fn eval(&self, s: [T; 2]) -> PointJet<T> {
        let mut p = self.raw(s);
        let n = self.ambient();
        let lam = self.scale;
        let fix = |v: &mut Vec<T>| {
            for c in v.iter_mut() {
                *c = *c * lam;
            }
            v.resize(n, T::zero());
        };
        fix(&mut p.x);
        p.d1.iter_mut().for_each(fix);
        p.d2.iter_mut().flatten().for_each(fix);
        p
    }

    /// Samples the shape on its default domain.
    pub fn chart(&self, samples: &[usize]) -> Result<ImmersionChart<T>> {
        let dom = self.domain();
        if samples.len() != dom.len() {
            return Err(Error::Grid(format!(
                "{} needs {} grid sizes, got {}",
                self.name(),
                dom.len(),
                samples.len()
            )));
        }
        let axes = dom
            .iter()
            .zip(samples)
            .map(|(&(a, b, p), &n)| Axis::new(n, a, b, p))
            .collect::<Result<Vec<_>>>()?;
        self.chart_on(Grid::new(axes)?)
    }

    /// Samples the shape on an explicit grid; periodic axes must close up.
    pub fn chart_on(&self, grid: Grid<T>) -> Result<ImmersionChart<T>> {
        self.validate()?;
        let (k, n) = (self.k(), self.ambient());
        if grid.dim() != k {
            return Err(Error::Grid(format!("{} is {k}-dimensional", self.name())));
        }
        for (a, ax) in grid.axes().iter().enumerate() {
            if ax.periodic {
                let mut s0 = [T::zero(); 2];
                for (b, other) in grid.axes().iter().enumerate() {
                    s0[b] = other.start;
                }
                let mut s1 = s0;
                s1[a] = ax.end;
                let (p0, p1) = (self.eval(s0), self.eval(s1));
                let gap =
                    p0.x.iter()
                        .zip(&p1.x)
                        .map(|(x, y)| (*x - *y).abs())
                        .fold(T::zero(), T::max);
                if gap > T::lit(1e-9) * (T::one() + self.scale) {
                    return Err(Error::Grid(format!(
                        "axis {a} is marked periodic but the chart does not close (gap {gap:e})"
                    )));
                }
            }
        }
        let mut points = Vec::with_capacity(grid.len() * n);
        let mut jet = Jet::zeros(grid.len(), k, n);
        for idx in 0..grid.len() {
            let p = self.eval(grid.coords(idx));
            points.extend_from_slice(&p.x);
            for a in 0..k {
                jet.first_mut(idx, a).copy_from_slice(&p.d1[a]);
                for b in 0..k {
                    jet.second_mut(idx, a, b).copy_from_slice(&p.d2[a][b]);
                }
            }
        }
        ImmersionChart::new(n, grid, points, Some(jet))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalog() -> Vec<ShapeSpec<f64>> {
        let mut v = vec![
            ShapeSpec::new(Shape::Plane { shear: 0.3 }),
            ShapeSpec::new(Shape::Line),
            ShapeSpec::new(Shape::Circle { radius: 2.0 }),
            ShapeSpec::new(Shape::Helix {
                radius: 1.0,
                pitch: 0.5,
            }),
            ShapeSpec::new(Shape::Sphere { radius: 1.5 }),
            ShapeSpec::new(Shape::Catenoid { a: 0.8 }),
            ShapeSpec::new(Shape::Enneper),
            ShapeSpec::new(Shape::ProductTorus { r1: 1.0, r2: 0.7 }).scaled(2.0),
        ];
        for kind in GraphKind::ALL {
            v.push(ShapeSpec::new(Shape::Graph { kind }));
        }
        v
    }

    /// Central-difference oracle on the point evaluator itself.
    #[test]
    fn analytic_derivatives_match_numeric() {
        let h = 1e-5;
        for spec in catalog() {
            let s = [0.31, -0.42];
            let p = spec.eval(s);
            for a in 0..spec.k() {
                let mut sp = s;
                let mut sm = s;
                sp[a] += h;
                sm[a] -= h;
                let (pp, pm) = (spec.eval(sp), spec.eval(sm));
                for i in 0..spec.ambient() {
                    let num = (pp.x[i] - pm.x[i]) / (2.0 * h);
                    assert!((num - p.d1[a][i]).abs() < 1e-8, "{} d1[{a}][{i}]", spec.name());
                    for b in 0..spec.k() {
                        let num2 = (pp.d1[b][i] - pm.d1[b][i]) / (2.0 * h);
                        assert!((num2 - p.d2[a][b][i]).abs() < 1e-7, "{} d2[{a}][{b}][{i}]", spec.name());
                    }
                }
            }
        }
    }

    #[test]
    fn periodic_axes_close() {
        for spec in catalog() {
            let samples = vec![12; spec.k()];
            spec.chart(&samples).unwrap();
        }
        let helix = ShapeSpec::new(Shape::Helix {
            radius: 1.0,
            pitch: 0.5,
        });
        let g = Grid::line(Axis::new(10, 0.0, 1.0, true).unwrap());
        assert!(helix.chart_on(g).is_err());
    }

    #[test]
    fn ambient_padding_and_validation() {
        let s = ShapeSpec::new(Shape::Sphere { radius: 1.0 }).in_ambient(4);
        let c = s.chart(&[8, 8]).unwrap();
        assert_eq!(c.n(), 4);
        assert!(c.points().chunks(4).all(|p| p[3] == 0.0));
        assert!(ShapeSpec::new(Shape::ProductTorus { r1: 1.0, r2: 1.0 })
            .in_ambient(3)
            .chart(&[8, 8])
            .is_err());
        assert!(ShapeSpec::new(Shape::Sphere { radius: -1.0 }).chart(&[8, 8]).is_err());
    }
}
