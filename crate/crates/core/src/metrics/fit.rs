//! Shrink exponents from lengths of loop families.

use std::f64::consts::TAU;

use super::base::BaseMetric;
use super::chart::MetricChart;
use super::curve::{curve_length, ParamCurve};
use super::MetricError;

/// A fitted exponent is called conical when it is this close to 1.
pub const CONICAL_TOLERANCE: f64 = 1e-2;

#[derive(Debug, Clone, PartialEq)]
pub struct ShrinkFit {
    /// Least-squares slope of `log(length)` against `log(t)`.
    pub exponent: f64,
    pub intercept: f64,
    /// Root mean square of the regression residuals.
    pub residual: f64,
    pub lengths: Vec<(f64, f64)>,
    pub conical: bool,
}

/// The loop whose length sets the shrink rate of `chart` at height `t`: a
/// diagonal of a bounded base or a full turn of an unbounded one, and for
/// the thickened torus charts the fast circle (`s = 0`, `r = 1`).
pub fn fiber_loop(chart: &MetricChart, t: f64) -> ParamCurve {
    let across = |prefix: Vec<f64>, base: &BaseMetric| match base.bounds() {
        Some(b) => {
            let mut p = prefix.clone();
            let mut q = prefix;
            p.extend(b.iter().map(|(lo, _)| *lo));
            q.extend(b.iter().map(|(_, hi)| *hi));
            ParamCurve::segment(p, q)
        }
        None => {
            let axis = prefix.len();
            let mut p = prefix;
            p.extend(std::iter::repeat_n(0.0, base.dim()));
            ParamCurve::coordinate_loop(p, axis, 0.0, TAU)
        }
    };
    match chart {
        MetricChart::Cone { base } => across(vec![t], base),
        MetricChart::HsiangPati { base, .. } | MetricChart::MappingTorusCone { base, .. } => across(vec![t, 0.0], base),
        MetricChart::CheegerNagase { .. } => ParamCurve::coordinate_loop(vec![t, 0.0, 0.0, 0.0], 3, 0.0, TAU),
        MetricChart::Annulus { .. } => ParamCurve::coordinate_loop(vec![t, 0.0, 1.0, 0.0], 3, 0.0, TAU),
    }
}

/// Fits `length(loop_family(t)) ~ C t^e` over `t_samples`.
pub fn fit_shrink_exponent<F>(
    chart: &MetricChart,
    loop_family: F,
    t_samples: &[f64],
    steps: usize,
) -> Result<ShrinkFit, MetricError>
where
    F: Fn(f64) -> ParamCurve,
{
    if t_samples.len() < 3 {
        return Err(MetricError::InsufficientSamples(t_samples.len()));
    }
    for &t in t_samples {
        if t.is_nan() || t <= 0.0 {
            return Err(MetricError::NonPositiveT(t));
        }
        if t > 1.0 {
            return Err(MetricError::OutsideDomain(format!("t = {t} > 1")));
        }
    }
    let lo = t_samples.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = t_samples.iter().cloned().fold(0.0, f64::max);
    if lo == hi {
        return Err(MetricError::DegenerateSamples("all t samples are equal".into()));
    }
    if hi / lo < 100.0 * (1.0 - 1e-9) {
        return Err(MetricError::DegenerateSamples(format!(
            "t samples span {:.2} decades; at least 2 are needed",
            (hi / lo).log10()
        )));
    }
    let mut lengths = Vec::with_capacity(t_samples.len());
    for &t in t_samples {
        let l = curve_length(chart, &loop_family(t), steps)?;
        if l.is_nan() || l <= 0.0 {
            return Err(MetricError::DegenerateSamples(format!(
                "loop at t = {t} has length {l}"
            )));
        }
        lengths.push((t, l));
    }
    let n = lengths.len() as f64;
    let xs: Vec<f64> = lengths.iter().map(|(t, _)| t.ln()).collect();
    let ys: Vec<f64> = lengths.iter().map(|(_, l)| l.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let residual = (xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - exponent * x).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    Ok(ShrinkFit {
        exponent,
        intercept,
        residual,
        lengths,
        conical: (exponent - 1.0).abs() <= CONICAL_TOLERANCE,
    })
}
