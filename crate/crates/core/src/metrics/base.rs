//! Metrics on the fiber `Y` and the mapping-torus interpolation `g_theta`.

use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;

use super::MetricError;

type Field = Arc<dyn Fn(&[f64]) -> DMatrix<f64> + Send + Sync>;

#[derive(Clone)]
enum Kind {
    /// `scale^2` times the identity.
    Flat {
        scale: f64,
    },
    Field(Field),
}

/// A Riemannian metric on a box of `R^dim` (or all of `R^dim` when
/// unbounded, for angular coordinates).
#[derive(Clone)]
pub struct BaseMetric {
    dim: usize,
    bounds: Option<Vec<(f64, f64)>>,
    kind: Kind,
}

impl fmt::Debug for BaseMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            Kind::Flat { scale } => write!(f, "BaseMetric::Flat(dim={}, scale={scale})", self.dim),
            Kind::Field(_) => write!(f, "BaseMetric::Field(dim={})", self.dim),
        }
    }
}

impl BaseMetric {
    /// Flat metric on the unit cube `[0,1]^dim`.
    pub fn flat(dim: usize) -> BaseMetric {
        BaseMetric::flat_scaled(dim, 1.0)
    }

    /// `scale^2 (dy_1^2 + ... + dy_dim^2)` on the unit cube.
    pub fn flat_scaled(dim: usize, scale: f64) -> BaseMetric {
        BaseMetric {
            dim,
            bounds: Some(vec![(0.0, 1.0); dim]),
            kind: Kind::Flat { scale },
        }
    }

    /// The flat circle `d theta^2` with an unbounded angular coordinate.
    pub fn circle() -> BaseMetric {
        BaseMetric {
            dim: 1,
            bounds: None,
            kind: Kind::Flat { scale: 1.0 },
        }
    }

    /// A metric given by its coefficient matrix on the unit cube.
    pub fn from_fn<F>(dim: usize, f: F) -> BaseMetric
    where
        F: Fn(&[f64]) -> DMatrix<f64> + Send + Sync + 'static,
    {
        BaseMetric {
            dim,
            bounds: Some(vec![(0.0, 1.0); dim]),
            kind: Kind::Field(Arc::new(f)),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bounds(&self) -> Option<&[(f64, f64)]> {
        self.bounds.as_deref()
    }

    pub fn is_flat(&self) -> bool {
        matches!(self.kind, Kind::Flat { .. })
    }

    pub fn contains(&self, y: &[f64]) -> bool {
        const SLACK: f64 = 1e-12;
        y.len() == self.dim
            && y.iter().all(|v| v.is_finite())
            && self.bounds.as_ref().is_none_or(|b| {
                b.iter()
                    .zip(y)
                    .all(|((lo, hi), v)| *v >= lo - SLACK && *v <= hi + SLACK)
            })
    }

    pub fn tensor(&self, y: &[f64]) -> Result<DMatrix<f64>, MetricError> {
        if !self.contains(y) {
            return Err(MetricError::OutsideDomain(format!("{y:?} is not in the fiber")));
        }
        Ok(match &self.kind {
            Kind::Flat { scale } => DMatrix::identity(self.dim, self.dim) * (scale * scale),
            Kind::Field(f) => f(y),
        })
    }

    fn segment_length(&self, a: &[f64], b: &[f64]) -> f64 {
        let v = nalgebra::DVector::from_iterator(self.dim, a.iter().zip(b).map(|(x, y)| y - x));
        super::curve::gauss_legendre(0.0, 1.0, 4, |s| {
            let p: Vec<f64> = a.iter().zip(b).map(|(x, y)| x + s * (y - x)).collect();
            let g = self.tensor(&p).expect("segment inside a convex box");
            (v.transpose() * g * &v)[(0, 0)].max(0.0).sqrt()
        })
    }

    /// Diameter of the fiber: the exact diagonal for flat boxes, otherwise
    /// the longest straight segment between grid points.
    pub fn diameter(&self) -> Result<f64, MetricError> {
        let Some(bounds) = &self.bounds else {
            return Err(MetricError::NoFiber("the fiber is unbounded".into()));
        };
        if let Kind::Flat { scale } = self.kind {
            let d2: f64 = bounds.iter().map(|(lo, hi)| (hi - lo) * (hi - lo)).sum();
            return Ok(scale * d2.sqrt());
        }
        let per_axis = match self.dim {
            1 => 33,
            2 => 9,
            _ => 4,
        };
        let mut grid: Vec<Vec<f64>> = vec![Vec::new()];
        for (lo, hi) in bounds {
            grid = grid
                .into_iter()
                .flat_map(|p| {
                    (0..per_axis).map(move |k| {
                        let mut q = p.clone();
                        q.push(lo + (hi - lo) * k as f64 / (per_axis - 1) as f64);
                        q
                    })
                })
                .collect();
        }
        let mut best: f64 = 0.0;
        for i in 0..grid.len() {
            for j in i + 1..grid.len() {
                best = best.max(self.segment_length(&grid[i], &grid[j]));
            }
        }
        Ok(best)
    }
}

/// Finite-order linear gluing of the fiber, acting about the center of the
/// box.
#[derive(Debug, Clone, PartialEq)]
pub enum Monodromy {
    Identity,
    Linear(DMatrix<f64>),
}

impl Monodromy {
    /// Checks that the matrix has finite order at most 24.
    pub fn linear(m: DMatrix<f64>) -> Result<Monodromy, MetricError> {
        if !m.is_square() {
            return Err(MetricError::InvalidChart("monodromy must be square".into()));
        }
        let n = m.nrows();
        let id = DMatrix::<f64>::identity(n, n);
        let mut p = m.clone();
        for _ in 0..24 {
            if (&p - &id).amax() < 1e-12 {
                return Ok(Monodromy::Linear(m));
            }
            p = &p * &m;
        }
        Err(MetricError::InvalidChart("monodromy does not have finite order".into()))
    }

    /// Rotation of a square by `k` quarter turns.
    pub fn quarter_turns(k: u32) -> Monodromy {
        let (s, c) = [(0.0, 1.0), (1.0, 0.0), (0.0, -1.0), (-1.0, 0.0)][(k % 4) as usize];
        Monodromy::Linear(DMatrix::from_row_slice(2, 2, &[c, -s, s, c]))
    }

    fn pullback(&self, base: &BaseMetric, y: &[f64]) -> Result<DMatrix<f64>, MetricError> {
        match self {
            Monodromy::Identity => base.tensor(y),
            Monodromy::Linear(h) => {
                if h.nrows() != base.dim() {
                    return Err(MetricError::InvalidChart("monodromy dimension mismatch".into()));
                }
                let center: Vec<f64> = match base.bounds() {
                    Some(b) => b.iter().map(|(lo, hi)| 0.5 * (lo + hi)).collect(),
                    None => vec![0.0; base.dim()],
                };
                let v = nalgebra::DVector::from_iterator(base.dim(), y.iter().zip(&center).map(|(a, c)| a - c));
                let image = h * v;
                let hy: Vec<f64> = image.iter().zip(&center).map(|(a, c)| a + c).collect();
                Ok(h.transpose() * base.tensor(&hy)? * h)
            }
        }
    }
}

/// `g_theta`: `g0` on `[0, delta]`, `h* g0` on `[2 pi - delta, 2 pi]`, and
/// linear interpolation of the coefficients in between. `theta` is read
/// modulo `2 pi`.
pub fn interpolated_fiber_metric(
    base: &BaseMetric,
    monodromy: &Monodromy,
    delta: f64,
    theta: f64,
    y: &[f64],
) -> Result<DMatrix<f64>, MetricError> {
    let tau = std::f64::consts::TAU;
    let th = theta.rem_euclid(tau);
    let w = ((th - delta) / (tau - 2.0 * delta)).clamp(0.0, 1.0);
    let g0 = base.tensor(y)?;
    if w == 0.0 {
        return Ok(g0);
    }
    let g1 = monodromy.pullback(base, y)?;
    Ok(g0 * (1.0 - w) + g1 * w)
}
