//! The model metrics and their coefficient matrices.
//!
//! Coordinates, in order:
//!
//! | chart | coordinates | metric |
//! |---|---|---|
//! | `Cone` | `t, y` | `dt^2 + t^2 g(y)` |
//! | `HsiangPati` | `t, theta, y` | `dt^2 + t^2 dtheta^2 + t^(2 nu) g(y)` |
//! | `CheegerNagase` | `t, theta, s, Theta` | `dt^2 + t^2 dtheta^2 + t^(2 nu) (ds^2 + h^2 dTheta^2)` |
//! | `Annulus` | `t, theta, r, psi` | `dt^2 + t^2 dtheta^2 + (t^nu - t^nu')^2 dr^2 + ((r-1) t^nu + (2-r) t^nu')^2 dpsi^2` |
//! | `MappingTorusCone` | `t, theta, y` | `dt^2 + t^2 dtheta^2 + t^(2 nu) g_theta(y)` |
//!
//! with `h(t, s) = (s + t^(nu' - nu)) / (2 pi)`, `s` in `[0, 1]`, `r` in
//! `[1, 2]`, angles unbounded and `t` in `(0, 1]`.

use nalgebra::DMatrix;

use super::base::{interpolated_fiber_metric, BaseMetric, Monodromy};
use super::MetricError;
use crate::poly::Rational;
use crate::puiseux::rational_to_f64;

/// Width of the collars of `g_theta` where it equals `g0` or `h* g0`.
pub const COLLAR: f64 = 0.1;

#[derive(Debug, Clone)]
pub enum MetricChart {
    Cone {
        base: BaseMetric,
    },
    HsiangPati {
        nu: Rational,
        base: BaseMetric,
    },
    CheegerNagase {
        nu: Rational,
        nu_prime: Rational,
    },
    Annulus {
        nu: Rational,
        nu_prime: Rational,
    },
    MappingTorusCone {
        nu: Rational,
        base: BaseMetric,
        monodromy: Monodromy,
    },
}

pub fn cn_h(t: f64, s: f64, gap: f64) -> f64 {
    (s + t.powf(gap)) / std::f64::consts::TAU
}

fn check_pair(nu: &Rational, nu_prime: &Rational) -> Result<(), MetricError> {
    if *nu < Rational::from_integer(1.into()) || nu_prime <= nu {
        return Err(MetricError::InvalidChart(format!(
            "need nu' > nu >= 1, got nu = {nu}, nu' = {nu_prime}"
        )));
    }
    Ok(())
}

fn check_rate(nu: &Rational) -> Result<(), MetricError> {
    if *nu < Rational::from_integer(1.into()) {
        return Err(MetricError::InvalidChart(format!("need nu >= 1, got {nu}")));
    }
    Ok(())
}

impl MetricChart {
    pub fn cone(base: BaseMetric) -> MetricChart {
        MetricChart::Cone { base }
    }

    pub fn hsiang_pati(nu: Rational, base: BaseMetric) -> Result<MetricChart, MetricError> {
        check_rate(&nu)?;
        Ok(MetricChart::HsiangPati { nu, base })
    }

    pub fn cheeger_nagase(nu: Rational, nu_prime: Rational) -> Result<MetricChart, MetricError> {
        check_pair(&nu, &nu_prime)?;
        Ok(MetricChart::CheegerNagase { nu, nu_prime })
    }

    pub fn annulus(nu: Rational, nu_prime: Rational) -> Result<MetricChart, MetricError> {
        check_pair(&nu, &nu_prime)?;
        Ok(MetricChart::Annulus { nu, nu_prime })
    }

    pub fn mapping_torus_cone(
        nu: Rational,
        base: BaseMetric,
        monodromy: Monodromy,
    ) -> Result<MetricChart, MetricError> {
        check_rate(&nu)?;
        if let Monodromy::Linear(h) = &monodromy {
            if h.nrows() != base.dim() {
                return Err(MetricError::InvalidChart("monodromy dimension mismatch".into()));
            }
        }
        Ok(MetricChart::MappingTorusCone { nu, base, monodromy })
    }

    pub fn name(&self) -> &'static str {
        match self {
            MetricChart::Cone { .. } => "cone",
            MetricChart::HsiangPati { .. } => "hsiang-pati",
            MetricChart::CheegerNagase { .. } => "cheeger-nagase",
            MetricChart::Annulus { .. } => "annulus",
            MetricChart::MappingTorusCone { .. } => "mapping-torus-cone",
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            MetricChart::Cone { base } => 1 + base.dim(),
            MetricChart::HsiangPati { base, .. } | MetricChart::MappingTorusCone { base, .. } => 2 + base.dim(),
            MetricChart::CheegerNagase { .. } | MetricChart::Annulus { .. } => 4,
        }
    }

    /// The shrink rate of the fiber; 1 for the metric cone.
    pub fn nu(&self) -> Rational {
        match self {
            MetricChart::Cone { .. } => Rational::from_integer(1.into()),
            MetricChart::HsiangPati { nu, .. }
            | MetricChart::CheegerNagase { nu, .. }
            | MetricChart::Annulus { nu, .. }
            | MetricChart::MappingTorusCone { nu, .. } => nu.clone(),
        }
    }

    fn rates(&self) -> (f64, f64) {
        match self {
            MetricChart::CheegerNagase { nu, nu_prime } | MetricChart::Annulus { nu, nu_prime } => {
                (rational_to_f64(nu), rational_to_f64(nu_prime))
            }
            other => {
                let nu = rational_to_f64(&other.nu());
                (nu, nu)
            }
        }
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        self.check_domain(p).is_ok()
    }

    fn check_domain(&self, p: &[f64]) -> Result<(), MetricError> {
        if p.len() != self.dimension() {
            return Err(MetricError::OutsideDomain(format!(
                "expected {} coordinates, got {}",
                self.dimension(),
                p.len()
            )));
        }
        let t = p[0];
        if t.is_nan() || t <= 0.0 {
            return Err(MetricError::NonPositiveT(t));
        }
        if t > 1.0 + 1e-12 {
            return Err(MetricError::OutsideDomain(format!("t = {t} > 1")));
        }
        let ok = match self {
            MetricChart::Cone { base } => base.contains(&p[1..]),
            MetricChart::HsiangPati { base, .. } | MetricChart::MappingTorusCone { base, .. } => {
                p[1].is_finite() && base.contains(&p[2..])
            }
            MetricChart::CheegerNagase { .. } => {
                p[1].is_finite() && (-1e-12..=1.0 + 1e-12).contains(&p[2]) && p[3].is_finite()
            }
            MetricChart::Annulus { .. } => {
                p[1].is_finite() && (1.0 - 1e-12..=2.0 + 1e-12).contains(&p[2]) && p[3].is_finite()
            }
        };
        if ok {
            Ok(())
        } else {
            Err(MetricError::OutsideDomain(format!(
                "{p:?} is outside the {} chart",
                self.name()
            )))
        }
    }

    /// The coefficient matrix of the metric at `p`.
    pub fn metric_tensor_at(&self, p: &[f64]) -> Result<DMatrix<f64>, MetricError> {
        self.check_domain(p)?;
        let t = p[0];
        let n = self.dimension();
        let mut g = DMatrix::zeros(n, n);
        g[(0, 0)] = 1.0;
        let (nu, nu_prime) = self.rates();
        match self {
            MetricChart::Cone { base } => {
                let b = base.tensor(&p[1..])?;
                g.view_mut((1, 1), (n - 1, n - 1)).copy_from(&(b * (t * t)));
            }
            MetricChart::HsiangPati { base, .. } => {
                g[(1, 1)] = t * t;
                let b = base.tensor(&p[2..])?;
                g.view_mut((2, 2), (n - 2, n - 2)).copy_from(&(b * t.powf(2.0 * nu)));
            }
            MetricChart::MappingTorusCone { base, monodromy, .. } => {
                g[(1, 1)] = t * t;
                let b = interpolated_fiber_metric(base, monodromy, COLLAR, p[1], &p[2..])?;
                g.view_mut((2, 2), (n - 2, n - 2)).copy_from(&(b * t.powf(2.0 * nu)));
            }
            MetricChart::CheegerNagase { .. } => {
                let scale = t.powf(2.0 * nu);
                let h = cn_h(t, p[2], nu_prime - nu);
                g[(1, 1)] = t * t;
                g[(2, 2)] = scale;
                g[(3, 3)] = scale * h * h;
            }
            MetricChart::Annulus { .. } => {
                let (a, b) = (t.powf(nu), t.powf(nu_prime));
                let r = p[2];
                g[(1, 1)] = t * t;
                g[(2, 2)] = (a - b) * (a - b);
                let c = (r - 1.0) * a + (2.0 - r) * b;
                g[(3, 3)] = c * c;
            }
        }
        Ok(g)
    }

    /// Diameter of the fiber `{t} x {theta} x Y`.
    pub fn fiber_diameter(&self, t: f64) -> Result<f64, MetricError> {
        if t.is_nan() || t <= 0.0 {
            return Err(MetricError::NonPositiveT(t));
        }
        if t > 1.0 + 1e-12 {
            return Err(MetricError::OutsideDomain(format!("t = {t} > 1")));
        }
        let (nu, nu_prime) = self.rates();
        match self {
            MetricChart::Cone { .. } => Err(MetricError::NoFiber("the metric cone has no designated fiber".into())),
            MetricChart::HsiangPati { base, .. } | MetricChart::MappingTorusCone { base, .. } => {
                Ok(t.powf(nu) * base.diameter()?)
            }
            MetricChart::CheegerNagase { .. } => {
                // Fiber [0,1] x circle with ds^2 + h(t,s)^2 dTheta^2.
                let gap = nu_prime - nu;
                let fiber = BaseMetric::from_fn(2, move |y| {
                    let h = cn_h(t, y[0], gap) * std::f64::consts::PI;
                    DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, h * h]))
                });
                Ok(t.powf(nu) * fiber.diameter()?)
            }
            MetricChart::Annulus { .. } => {
                let (a, b) = (t.powf(nu), t.powf(nu_prime));
                let fiber = BaseMetric::from_fn(2, move |y| {
                    let r = 1.0 + y[0];
                    let c = ((r - 1.0) * a + (2.0 - r) * b) * std::f64::consts::PI;
                    DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![(a - b) * (a - b), c * c]))
                });
                fiber.diameter()
            }
        }
    }
}
