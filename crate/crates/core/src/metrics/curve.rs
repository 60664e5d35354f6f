//! Curves, their lengths, and length ratios under coordinate changes.

use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use super::chart::MetricChart;
use super::MetricError;

const GL_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683_1,
    0.0,
    0.538_469_310_105_683_1,
    0.906_179_845_938_664,
];
const GL_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189_1,
    0.478_628_670_499_366_5,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
];

/// Composite five-point Gauss-Legendre rule over `[a, b]`.
pub fn gauss_legendre<F: FnMut(f64) -> f64>(a: f64, b: f64, steps: usize, mut f: F) -> f64 {
    let h = (b - a) / steps as f64;
    let mut total = 0.0;
    for k in 0..steps {
        let mid = a + (k as f64 + 0.5) * h;
        for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS) {
            total += w * f(mid + 0.5 * h * x);
        }
    }
    0.5 * h * total
}

type CurveFn = Arc<dyn Fn(f64) -> (Vec<f64>, Vec<f64>) + Send + Sync>;

/// A parametrized curve in chart coordinates.
#[derive(Clone)]
pub enum ParamCurve {
    /// Piecewise-linear through the given points.
    Polyline(Vec<Vec<f64>>),
    /// `f(s) = (point, derivative)` on `[a, b]`.
    Smooth { a: f64, b: f64, f: CurveFn },
}

impl fmt::Debug for ParamCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamCurve::Polyline(ps) => write!(f, "Polyline({ps:?})"),
            ParamCurve::Smooth { a, b, .. } => write!(f, "Smooth([{a}, {b}])"),
        }
    }
}

impl ParamCurve {
    pub fn segment(p: Vec<f64>, q: Vec<f64>) -> ParamCurve {
        ParamCurve::Polyline(vec![p, q])
    }

    pub fn smooth<F>(a: f64, b: f64, f: F) -> ParamCurve
    where
        F: Fn(f64) -> (Vec<f64>, Vec<f64>) + Send + Sync + 'static,
    {
        ParamCurve::Smooth { a, b, f: Arc::new(f) }
    }

    /// The loop varying coordinate `axis` over `[from, to]`, the others fixed
    /// at `base`.
    pub fn coordinate_loop(base: Vec<f64>, axis: usize, from: f64, to: f64) -> ParamCurve {
        ParamCurve::smooth(from, to, move |s| {
            let mut p = base.clone();
            p[axis] = s;
            let mut d = vec![0.0; base.len()];
            d[axis] = 1.0;
            (p, d)
        })
    }

    /// Calls `visit(point, velocity, weight)` at every quadrature node.
    fn quadrature<F>(&self, steps: usize, mut visit: F) -> Result<(), MetricError>
    where
        F: FnMut(&[f64], &[f64], f64) -> Result<(), MetricError>,
    {
        let mut run = |a: f64, b: f64, eval: &dyn Fn(f64) -> (Vec<f64>, Vec<f64>)| {
            let h = (b - a) / steps as f64;
            for k in 0..steps {
                let mid = a + (k as f64 + 0.5) * h;
                for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS) {
                    let (p, v) = eval(mid + 0.5 * h * x);
                    visit(&p, &v, 0.5 * h * w)?;
                }
            }
            Ok::<(), MetricError>(())
        };
        match self {
            ParamCurve::Polyline(points) => {
                if points.len() < 2 {
                    return Err(MetricError::InvalidCurve("a polyline needs two points".into()));
                }
                for pair in points.windows(2) {
                    let (p, q) = (&pair[0], &pair[1]);
                    if p.len() != q.len() {
                        return Err(MetricError::InvalidCurve("points of different dimension".into()));
                    }
                    let v: Vec<f64> = p.iter().zip(q).map(|(a, b)| b - a).collect();
                    run(0.0, 1.0, &|s| {
                        (p.iter().zip(q).map(|(a, b)| a + s * (b - a)).collect(), v.clone())
                    })?;
                }
                Ok(())
            }
            ParamCurve::Smooth { a, b, f } => run(*a, *b, &|s| f(s)),
        }
    }
}

fn quadratic_form(g: &DMatrix<f64>, v: &[f64]) -> f64 {
    let v = DVector::from_column_slice(v);
    (v.transpose() * g * &v)[(0, 0)].max(0.0)
}

/// Length of `curve` in `chart`: composite Gauss-Legendre with `steps`
/// subintervals (per segment for polylines).
pub fn curve_length(chart: &MetricChart, curve: &ParamCurve, steps: usize) -> Result<f64, MetricError> {
    if steps < 2 {
        return Err(MetricError::InvalidCurve(format!("need at least 2 steps, got {steps}")));
    }
    let mut total = 0.0;
    curve.quadrature(steps, |p, v, w| {
        let g = chart
            .metric_tensor_at(p)
            .map_err(|e| MetricError::CurveExitsDomain(e.to_string()))?;
        total += w * quadratic_form(&g, v).sqrt();
        Ok(())
    })?;
    Ok(total)
}

type MapFn = Arc<dyn Fn(&[f64]) -> (Vec<f64>, DMatrix<f64>) + Send + Sync>;

/// A coordinate change with its Jacobian.
#[derive(Clone)]
pub struct CoordinateMap {
    f: MapFn,
}

impl fmt::Debug for CoordinateMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoordinateMap")
    }
}

impl CoordinateMap {
    pub fn new<F>(f: F) -> CoordinateMap
    where
        F: Fn(&[f64]) -> (Vec<f64>, DMatrix<f64>) + Send + Sync + 'static,
    {
        CoordinateMap { f: Arc::new(f) }
    }

    pub fn identity() -> CoordinateMap {
        CoordinateMap::new(|p| (p.to_vec(), DMatrix::identity(p.len(), p.len())))
    }

    /// `(t, theta, r, psi) -> (t, theta, s, Theta)` with
    /// `s = (r - 1)(1 - t^(nu' - nu))` and `Theta = 2 pi psi`.
    pub fn annulus_to_cheeger_nagase(nu: f64, nu_prime: f64) -> CoordinateMap {
        let gap = nu_prime - nu;
        CoordinateMap::new(move |p| {
            let (t, r) = (p[0], p[2]);
            let damp = 1.0 - t.powf(gap);
            let image = vec![t, p[1], (r - 1.0) * damp, std::f64::consts::TAU * p[3]];
            let mut j = DMatrix::zeros(4, 4);
            j[(0, 0)] = 1.0;
            j[(1, 1)] = 1.0;
            j[(2, 0)] = -(r - 1.0) * gap * t.powf(gap - 1.0);
            j[(2, 2)] = damp;
            j[(3, 3)] = std::f64::consts::TAU;
            (image, j)
        })
    }

    pub fn apply(&self, p: &[f64]) -> (Vec<f64>, DMatrix<f64>) {
        (self.f)(p)
    }
}

/// Largest ratio `max(l_A / l_B, l_B / l_A)` over the sample curves, where
/// `l_A` is the length in `chart_a` and `l_B` the length of the image in
/// `chart_b`. An empirical lower bound for the bi-Lipschitz constant.
pub fn bilipschitz_ratio(
    chart_a: &MetricChart,
    chart_b: &MetricChart,
    map: &CoordinateMap,
    curves: &[ParamCurve],
    steps: usize,
) -> Result<f64, MetricError> {
    let mut worst: f64 = 1.0;
    for curve in curves {
        let la = curve_length(chart_a, curve, steps)?;
        let mut lb = 0.0;
        curve.quadrature(steps, |p, v, w| {
            let (q, j) = map.apply(p);
            let g = chart_b
                .metric_tensor_at(&q)
                .map_err(|e| MetricError::MapExitsDomain(e.to_string()))?;
            let u = &j * DVector::from_column_slice(v);
            lb += w * quadratic_form(&g, u.as_slice()).sqrt();
            Ok(())
        })?;
        if la == 0.0 && lb == 0.0 {
            continue;
        }
        worst = worst.max(la / lb).max(lb / la);
    }
    Ok(worst)
}
