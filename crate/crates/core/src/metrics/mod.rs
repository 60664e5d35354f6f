//! Model Riemannian metrics on cones over the pieces of the link, with
//! lengths, fiber diameters and fitted shrink rates.

mod base;
mod chart;
mod cn;
mod curve;
mod fit;

use nalgebra::DMatrix;
use thiserror::Error;

pub use base::{interpolated_fiber_metric, BaseMetric, Monodromy};
pub use chart::{cn_h, MetricChart, COLLAR};
pub use cn::{verify_cn_identity, CnIdentityReport, CN_TOLERANCE};
pub use curve::{bilipschitz_ratio, curve_length, gauss_legendre, CoordinateMap, ParamCurve};
pub use fit::{fiber_loop, fit_shrink_exponent, ShrinkFit, CONICAL_TOLERANCE};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error("t must be positive, got {0}")]
    NonPositiveT(f64),
    #[error("point outside the chart domain: {0}")]
    OutsideDomain(String),
    #[error("invalid chart parameters: {0}")]
    InvalidChart(String),
    #[error("no fiber to measure: {0}")]
    NoFiber(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("curve leaves the chart: {0}")]
    CurveExitsDomain(String),
    #[error("coordinate map leaves the target chart: {0}")]
    MapExitsDomain(String),
    #[error("need at least 3 t samples, got {0}")]
    InsufficientSamples(usize),
    #[error("degenerate samples: {0}")]
    DegenerateSamples(String),
}

/// Smallest eigenvalue of a symmetric matrix.
pub fn min_eigenvalue(g: &DMatrix<f64>) -> f64 {
    g.clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{PI, TAU};

    use super::*;
    use crate::poly::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn diag(g: &DMatrix<f64>) -> Vec<f64> {
        (0..g.nrows()).map(|i| g[(i, i)]).collect()
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn tensors_read_off_the_formulas() {
        let cone = MetricChart::cone(BaseMetric::circle());
        assert!(close(
            &diag(&cone.metric_tensor_at(&[0.3, 5.0]).unwrap()),
            &[1.0, 0.09],
            1e-15
        ));

        let cn = MetricChart::cheeger_nagase(r(1, 1), r(4, 3)).unwrap();
        let h = (0.5 + 0.5f64.powf(1.0 / 3.0)) / TAU;
        let g = cn.metric_tensor_at(&[0.5, 0.0, 0.5, 0.0]).unwrap();
        assert!(close(&diag(&g), &[1.0, 0.25, 0.25, 0.25 * h * h], 1e-15));

        let hp = MetricChart::hsiang_pati(r(4, 3), BaseMetric::flat(2)).unwrap();
        let g = hp.metric_tensor_at(&[1.0, 0.0, 0.5, 0.5]).unwrap();
        assert!(close(&diag(&g), &[1.0, 1.0, 1.0, 1.0], 1e-15));
    }

    #[test]
    fn domain_errors() {
        let hp = MetricChart::hsiang_pati(r(4, 3), BaseMetric::flat(2)).unwrap();
        assert_eq!(
            hp.metric_tensor_at(&[0.0, 0.0, 0.5, 0.5]),
            Err(MetricError::NonPositiveT(0.0))
        );
        assert!(matches!(
            hp.metric_tensor_at(&[0.5, 0.0, 1.5, 0.5]),
            Err(MetricError::OutsideDomain(_))
        ));
        assert!(MetricChart::cheeger_nagase(r(4, 3), r(1, 1)).is_err());
        assert!(MetricChart::cheeger_nagase(r(4, 3), r(4, 3)).is_err());
    }

    #[test]
    fn length_examples() {
        let cone = MetricChart::cone(BaseMetric::circle());
        let radial = ParamCurve::segment(vec![0.2, 1.0], vec![1.0, 1.0]);
        assert!((curve_length(&cone, &radial, 4).unwrap() - 0.8).abs() < 1e-12);

        let hp = MetricChart::hsiang_pati(r(4, 3), BaseMetric::flat(2)).unwrap();
        let t = 0.37;
        let theta = ParamCurve::coordinate_loop(vec![t, 0.0, 0.5, 0.5], 1, 0.0, 1.0);
        assert!((curve_length(&hp, &theta, 4).unwrap() - t).abs() < 1e-10);

        let (nu, nu_prime) = (4.0 / 3.0, 3.0 / 2.0);
        let annulus = MetricChart::annulus(r(4, 3), r(3, 2)).unwrap();
        let psi = ParamCurve::coordinate_loop(vec![t, 0.0, 2.0, 0.0], 3, 0.0, TAU);
        assert!((curve_length(&annulus, &psi, 8).unwrap() - TAU * t.powf(nu)).abs() < 1e-10);
        let _ = nu_prime;

        assert!(curve_length(&hp, &theta, 1).is_err());
        let outside = ParamCurve::segment(vec![0.5, 0.0, 0.5, 0.5], vec![0.5, 0.0, 2.0, 0.5]);
        assert!(matches!(
            curve_length(&hp, &outside, 4),
            Err(MetricError::CurveExitsDomain(_))
        ));
    }

    #[test]
    fn fiber_diameters() {
        let hp1 = MetricChart::hsiang_pati(r(1, 1), BaseMetric::flat(2)).unwrap();
        assert!((hp1.fiber_diameter(0.5).unwrap() - 0.5 * 2f64.sqrt()).abs() < 1e-6);
        assert!((hp1.fiber_diameter(1.0).unwrap() - 2f64.sqrt()).abs() < 1e-12);
        let hp = MetricChart::hsiang_pati(r(4, 3), BaseMetric::flat(2)).unwrap();
        assert!((hp.fiber_diameter(0.01).unwrap() - 0.01f64.powf(4.0 / 3.0) * 2f64.sqrt()).abs() < 1e-6);
        let cone = MetricChart::cone(BaseMetric::flat(2));
        assert!(matches!(cone.fiber_diameter(0.5), Err(MetricError::NoFiber(_))));
        let curved = BaseMetric::from_fn(2, |y| DMatrix::identity(2, 2) * (1.0 + y[0]));
        let mtc = MetricChart::mapping_torus_cone(r(3, 2), curved, Monodromy::Identity).unwrap();
        let d = mtc.fiber_diameter(1.0).unwrap();
        assert!(d > 2f64.sqrt() && d < 2.0);
    }

    #[test]
    fn fit_examples() {
        let ts = [1e-1, 1e-2, 1e-3];
        let hp = MetricChart::hsiang_pati(r(4, 3), BaseMetric::flat(2)).unwrap();
        let fit = fit_shrink_exponent(
            &hp,
            |t| ParamCurve::segment(vec![t, 0.0, 0.0, 0.0], vec![t, 0.0, 1.0, 1.0]),
            &ts,
            4,
        )
        .unwrap();
        assert!((fit.exponent - 4.0 / 3.0).abs() < 1e-2);
        assert!(!fit.conical);

        let cone = MetricChart::cone(BaseMetric::circle());
        let fit = fit_shrink_exponent(
            &cone,
            |t| ParamCurve::coordinate_loop(vec![t, 0.0], 1, 0.0, TAU),
            &ts,
            4,
        )
        .unwrap();
        assert!((fit.exponent - 1.0).abs() < 1e-3);
        assert!(fit.conical);

        // At s = 0 the Theta-loop has length 2 pi t^nu h(t, 0) = t^nu'.
        let cn = MetricChart::cheeger_nagase(r(1, 1), r(4, 3)).unwrap();
        let fit = fit_shrink_exponent(
            &cn,
            |t| ParamCurve::coordinate_loop(vec![t, 0.0, 0.0, 0.0], 3, 0.0, TAU),
            &ts,
            4,
        )
        .unwrap();
        assert!((fit.exponent - 4.0 / 3.0).abs() < 1e-2);

        assert_eq!(
            fit_shrink_exponent(
                &cone,
                |t| ParamCurve::coordinate_loop(vec![t, 0.0], 1, 0.0, PI),
                &[0.1, 0.01],
                4
            ),
            Err(MetricError::InsufficientSamples(2))
        );
        assert!(matches!(
            fit_shrink_exponent(
                &cone,
                |t| ParamCurve::coordinate_loop(vec![t, 0.0], 1, 0.0, PI),
                &[0.1; 3],
                4
            ),
            Err(MetricError::DegenerateSamples(_))
        ));
    }

    #[test]
    fn cn_identity_examples() {
        let samples: Vec<[f64; 3]> = (1..100)
            .map(|k| {
                let u = k as f64 / 100.0;
                [u, 1.0 + (u * 7.3).fract(), TAU * (u * 3.1).fract()]
            })
            .collect();
        let rep = verify_cn_identity(&r(1, 1), &r(4, 3), &samples).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.samples_used, samples.len());

        let rep = verify_cn_identity(&r(4, 3), &r(4, 3), &samples).unwrap();
        assert!(rep.degenerate && rep.max_deviation == 0.0);

        let rep = verify_cn_identity(&r(1, 1), &r(2, 1), &[[1.0, 1.5, 0.0]]).unwrap();
        assert_eq!((rep.flagged, rep.samples_used), (1, 0));

        assert!(verify_cn_identity(&r(2, 1), &r(1, 1), &samples).is_err());
    }

    #[test]
    fn bilipschitz_examples() {
        let hp = MetricChart::hsiang_pati(r(3, 2), BaseMetric::flat(2)).unwrap();
        let curves = vec![
            ParamCurve::segment(vec![0.5, 0.0, 0.1, 0.2], vec![0.9, 1.0, 0.8, 0.3]),
            ParamCurve::coordinate_loop(vec![0.2, 0.0, 0.5, 0.5], 1, 0.0, 3.0),
        ];
        assert_eq!(
            bilipschitz_ratio(&hp, &hp, &CoordinateMap::identity(), &curves, 8).unwrap(),
            1.0
        );

        let flat = MetricChart::hsiang_pati(r(3, 2), BaseMetric::flat(2)).unwrap();
        let doubled = MetricChart::hsiang_pati(r(3, 2), BaseMetric::flat_scaled(2, 2.0)).unwrap();
        let fiber = vec![ParamCurve::segment(vec![0.4, 0.0, 0.1, 0.2], vec![0.4, 0.0, 0.9, 0.7])];
        let ratio = bilipschitz_ratio(&flat, &doubled, &CoordinateMap::identity(), &fiber, 8).unwrap();
        assert!((ratio - 2.0).abs() < 1e-9);

        let annulus = MetricChart::annulus(r(1, 1), r(4, 3)).unwrap();
        let cn = MetricChart::cheeger_nagase(r(1, 1), r(4, 3)).unwrap();
        let map = CoordinateMap::annulus_to_cheeger_nagase(1.0, 4.0 / 3.0);
        let fibers = vec![
            ParamCurve::segment(vec![0.3, 0.0, 1.0, 0.0], vec![0.3, 0.0, 2.0, 0.0]),
            ParamCurve::coordinate_loop(vec![0.3, 0.0, 1.5, 0.0], 3, 0.0, TAU),
            ParamCurve::segment(vec![0.05, 0.4, 1.2, 0.1], vec![0.05, 1.0, 1.9, 2.0]),
        ];
        let ratio = bilipschitz_ratio(&annulus, &cn, &map, &fibers, 8).unwrap();
        assert!((ratio - 1.0).abs() < 1e-9, "{ratio}");
    }

    #[test]
    fn monodromy_must_have_finite_order() {
        assert!(Monodromy::linear(DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0])).is_ok());
        assert!(Monodromy::linear(DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 1.0])).is_err());
        let twisted = BaseMetric::from_fn(2, |y| {
            DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0 + y[0], 1.0]))
        });
        let g_start =
            interpolated_fiber_metric(&twisted, &Monodromy::quarter_turns(1), COLLAR, 0.05, &[0.2, 0.7]).unwrap();
        let g_end =
            interpolated_fiber_metric(&twisted, &Monodromy::quarter_turns(1), COLLAR, TAU - 0.05, &[0.2, 0.7]).unwrap();
        assert!((g_start[(0, 0)] - 1.2).abs() < 1e-12);
        // h rotates about (1/2, 1/2): h(0.2, 0.7) = (0.3, 0.2), and h* swaps the axes.
        assert!((g_end[(1, 1)] - 1.3).abs() < 1e-12, "{g_end}");
    }
}
