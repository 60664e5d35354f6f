//! The change of variables taking the annulus family to the
//! Cheeger-Nagase metric.
//!
//! With `s = (r - 1)(1 - t^(nu' - nu))` and `Theta = 2 pi psi`,
//!
//! ```text
//! (t^nu - t^nu')^2 dr^2 = t^(2 nu) ds^2
//! ((r-1) t^nu + (2-r) t^nu')^2 dpsi^2 = t^(2 nu) h(t, s)^2 dTheta^2
//! ```
//!
//! on each fiber `t = const`, because
//! `(r-1) t^nu + (2-r) t^nu' = t^nu (s + t^(nu' - nu))`.

use super::chart::{cn_h, MetricChart};
use super::curve::CoordinateMap;
use super::MetricError;
use crate::poly::Rational;
use crate::puiseux::rational_to_f64;

pub const CN_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct CnIdentityReport {
    pub max_deviation: f64,
    pub samples_used: usize,
    /// Samples at `t = 1`, where both radii equal 1 and the annulus is
    /// degenerate; they are skipped.
    pub flagged: usize,
    /// `nu' = nu`: `s` is identically zero and the change of variables is
    /// singular, so nothing is compared.
    pub degenerate: bool,
    pub tolerance: f64,
}

impl CnIdentityReport {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

/// Largest absolute difference between the fiber coefficients of the
/// annulus chart and the pulled-back Cheeger-Nagase chart over `samples`
/// `(t, r, psi)`, together with the interpolation identity.
pub fn verify_cn_identity(
    nu: &Rational,
    nu_prime: &Rational,
    samples: &[[f64; 3]],
) -> Result<CnIdentityReport, MetricError> {
    if *nu < Rational::from_integer(1.into()) || nu_prime < nu {
        return Err(MetricError::InvalidChart(format!(
            "need nu' >= nu >= 1, got nu = {nu}, nu' = {nu_prime}"
        )));
    }
    let mut report = CnIdentityReport {
        max_deviation: 0.0,
        samples_used: 0,
        flagged: 0,
        degenerate: nu == nu_prime,
        tolerance: CN_TOLERANCE,
    };
    if report.degenerate {
        return Ok(report);
    }
    let annulus = MetricChart::annulus(nu.clone(), nu_prime.clone())?;
    let cn = MetricChart::cheeger_nagase(nu.clone(), nu_prime.clone())?;
    let (a, b) = (rational_to_f64(nu), rational_to_f64(nu_prime));
    let map = CoordinateMap::annulus_to_cheeger_nagase(a, b);
    for &[t, r, psi] in samples {
        if t == 1.0 {
            report.flagged += 1;
            continue;
        }
        let p = [t, 0.0, r, psi];
        let lhs = annulus.metric_tensor_at(&p)?;
        let (q, j) = map.apply(&p);
        let g = cn.metric_tensor_at(&q)?;
        let (ds_dr, dtheta_dpsi) = (j[(2, 2)], j[(3, 3)]);
        let rhs_rr = g[(2, 2)] * ds_dr * ds_dr;
        let rhs_pp = g[(3, 3)] * dtheta_dpsi * dtheta_dpsi;
        let interpolation = (r - 1.0) * t.powf(a) + (2.0 - r) * t.powf(b);
        let factored = t.powf(a) * (q[2] + t.powf(b - a));
        let via_h = t.powf(a) * cn_h(t, q[2], b - a) * std::f64::consts::TAU;
        let dev = [
            (lhs[(2, 2)] - rhs_rr).abs(),
            (lhs[(3, 3)] - rhs_pp).abs(),
            (interpolation - factored).abs(),
            (interpolation - via_h).abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max);
        report.max_deviation = report.max_deviation.max(dev);
        report.samples_used += 1;
    }
    Ok(report)
}
