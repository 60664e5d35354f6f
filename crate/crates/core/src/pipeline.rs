//! End-to-end analysis: classify, singular locus, normalization,
//! discriminant, Puiseux data, carousel, decomposition graph and metric
//! checks of every piece.

use std::f64::consts::TAU;

use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::carousel::{build_carousel, CarouselConfig, CarouselError, CarouselSpec};
use crate::germ::{
    axis_multiplicity, classify_input, discriminant_curve, normalize_double_cover, singular_locus, transversal_data,
    GermError, GermInput, NormalizedGerm, SingularLocusReport,
};
use crate::graph::{
    assemble, glue_circles, marked_circles, summary, CircleClass, DecompositionGraph, GraphError, GraphSummary,
    MarkedCircle, PieceKind, Provenance, TubeInput,
};
use crate::metrics::{
    curve_length, fiber_loop, fit_shrink_exponent, verify_cn_identity, BaseMetric, CnIdentityReport, MetricChart,
    MetricError, Monodromy, ParamCurve, ShrinkFit, CONICAL_TOLERANCE,
};
use crate::poly::{parse_poly, MPoly, ParseError, Rational, Var};
use crate::puiseux::{
    branch_distance_exponent, characteristic_data, puiseux_expand, PuiseuxBranch, PuiseuxCharacteristic, PuiseuxConfig,
    PuiseuxError, Valuation,
};

pub const VARIABLES: [&str; 3] = ["z1", "z2", "z3"];

/// Largest shear `z1 -> z1 + c z2` tried when the coordinates are not generic.
pub const MAX_SHEAR: i64 = 8;

/// Shrink rate given to the tube around a smooth singular branch.
pub fn smooth_tube_rate() -> Rational {
    Rational::from_integer(2.into())
}

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Germ(#[from] GermError),
    #[error(transparent)]
    Puiseux(#[from] PuiseuxError),
    #[error(transparent)]
    Carousel(#[from] CarouselError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error("no shear z1 -> z1 + c*z2 with |c| <= {MAX_SHEAR} makes the projection to z1 generic")]
    NoGenericCoordinates,
}

impl AnalysisError {
    /// 1 for bad input text or options, 2 for inputs outside what the
    /// pipeline handles.
    pub fn exit_code(&self) -> i32 {
        match self {
            AnalysisError::Parse(_) | AnalysisError::Config(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisConfig {
    /// Puiseux truncation; `None` is one past the last characteristic exponent.
    pub truncation_order: Option<Rational>,
    pub carousel: CarouselConfig,
    pub t_sweep: Vec<f64>,
    pub quadrature_steps: usize,
    pub cn_samples: usize,
    pub seed: u64,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            truncation_order: None,
            carousel: CarouselConfig::default(),
            t_sweep: vec![1e-1, 1e-2, 1e-3],
            quadrature_steps: 16,
            cn_samples: 1000,
            seed: 0,
        }
    }
}

impl AnalysisConfig {
    pub fn validate(&self) -> Result<(), AnalysisError> {
        if self.quadrature_steps < 2 || self.cn_samples == 0 {
            return Err(AnalysisError::Config(
                "sample counts must be positive (and steps >= 2)".into(),
            ));
        }
        if let Some(&t) = self.t_sweep.iter().find(|&&t| !(t > 0.0 && t <= 1.0)) {
            return Err(AnalysisError::Config(format!("t = {t} is not in (0, 1]")));
        }
        if let Some(order) = &self.truncation_order {
            if *order <= Rational::zero() {
                return Err(AnalysisError::Config(format!(
                    "truncation order {order} is not positive"
                )));
            }
        }
        self.carousel
            .validate()
            .map_err(|e| AnalysisError::Config(e.to_string()))
    }

    fn puiseux(&self) -> PuiseuxConfig {
        PuiseuxConfig {
            order: self.truncation_order.clone(),
            ..PuiseuxConfig::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BranchAnalysis {
    pub poly: MPoly,
    pub multiplicity: u32,
    pub axis_multiplicity: u32,
    pub transversal: crate::germ::TransversalData,
    pub classes: Vec<PuiseuxBranch>,
    pub characteristics: Vec<PuiseuxCharacteristic>,
    pub tube_rate: Rational,
    pub host_region: Option<usize>,
    /// `tau`-valuation of `s` along each class; `None` when `s` vanishes on
    /// the branch or the contact orders could not be separated.
    pub s_valuations: Vec<Option<u32>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricCheck {
    pub piece: usize,
    pub chart: &'static str,
    pub expected: Rational,
    pub fit: ShrinkFit,
    pub tolerance: f64,
    pub cn: Option<CnIdentityReport>,
    pub passed: bool,
}

#[derive(Debug, Clone)]
pub struct Analysis {
    pub input: MPoly,
    /// The shear `c` in `z1 -> z1 + c z2` applied before the analysis.
    pub shear: i64,
    pub germ: GermInput,
    pub locus: SingularLocusReport,
    pub normalization: NormalizedGerm,
    pub discriminant: Option<MPoly>,
    pub discriminant_branches: Vec<PuiseuxBranch>,
    pub characteristics: Vec<PuiseuxCharacteristic>,
    pub carousel: Option<CarouselSpec>,
    pub branches: Vec<BranchAnalysis>,
    pub circles: Vec<MarkedCircle>,
    pub circle_classes: Vec<CircleClass>,
    pub graph: DecompositionGraph,
    pub summary: GraphSummary,
    pub checks: Vec<MetricCheck>,
}

impl Analysis {
    pub fn verified(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn analyze_text(text: &str, cfg: &AnalysisConfig) -> Result<Analysis, AnalysisError> {
    let f = parse_poly(text, &VARIABLES)?;
    analyze(&f, cfg)
}

/// The projection to `z1` is usable for `p` when its leading coefficient in
/// `z2` is a nonzero constant and the `z2` axis is not in its tangent cone.
pub fn z2_generic(p: &MPoly) -> bool {
    if p.is_constant() {
        return true;
    }
    if !p.constant_term().is_zero() {
        return true;
    }
    let lead = p.leading_coefficient_in(Var::Z2);
    if !lead.is_constant() || lead.is_zero() {
        return false;
    }
    let ord = p.terms().map(|(e, _)| e.total_degree()).min().unwrap_or(0);
    p.terms().any(|(e, _)| e.0 == [0, ord, 0])
}

fn shear(p: &MPoly, c: i64) -> MPoly {
    if c == 0 {
        return p.clone();
    }
    let image = &MPoly::var(Var::Z1) + &MPoly::var(Var::Z2).scale(&Rational::from_integer(c.into()));
    p.substitute(Var::Z1, &image).with_names(p.names().clone())
}

fn shear_candidates() -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=MAX_SHEAR).flat_map(|c| [c, -c]))
}

pub fn analyze(f: &MPoly, cfg: &AnalysisConfig) -> Result<Analysis, AnalysisError> {
    cfg.validate()?;
    let input = f.clone();
    let mut chosen = None;
    for c in shear_candidates() {
        let f_c = shear(f, c);
        let germ = classify_input(&f_c)?;
        let locus = singular_locus(&germ)?;
        let normalization = normalize_double_cover(&germ)?;
        let generic = z2_generic(&normalization.s) && locus.curve_branches.iter().all(|b| z2_generic(&b.poly));
        if generic {
            chosen = Some((c, germ, locus, normalization));
            break;
        }
    }
    let (shear, germ, locus, normalization) = chosen.ok_or(AnalysisError::NoGenericCoordinates)?;
    log::info!("shear c = {shear}; singular branches: {}", locus.curve_branches.len());

    let s = &normalization.s;
    let (discriminant, discriminant_branches, characteristics, carousel) =
        if s.is_constant() || !s.constant_term().is_zero() {
            (None, Vec::new(), Vec::new(), None)
        } else {
            let delta = discriminant_curve(&normalization.f_bar)?;
            let branches = puiseux_expand(&delta, &cfg.puiseux())?;
            let characteristics = branches
                .iter()
                .map(characteristic_data)
                .collect::<Result<Vec<_>, _>>()?;
            let spec = build_carousel(&branches, cfg.carousel)?;
            (Some(delta), branches, characteristics, Some(spec))
        };

    let mut branch_reports = Vec::new();
    let mut tubes = Vec::new();
    for (j, b) in locus.curve_branches.iter().enumerate() {
        let report = analyze_branch(b, s, &discriminant_branches, carousel.as_ref(), locus.d, cfg)?;
        tubes.push(TubeInput {
            branch: j,
            transversal: report.transversal,
            nu: report.tube_rate.clone(),
            host_region: report.host_region,
        });
        branch_reports.push(report);
    }
    let graph = assemble(&locus, carousel.as_ref(), &tubes)?;

    let mut circles = Vec::new();
    let mut images = Vec::new();
    let mut target = 0;
    for (j, b) in branch_reports.iter().enumerate() {
        let host = graph
            .pieces
            .iter()
            .find(|p| matches!(p.kind, PieceKind::TubularCone { .. }) && p.provenance == Provenance::Branch(j))
            .map(|p| p.id)
            .expect("every branch has a tube");
        for (class, v) in b.classes.iter().zip(&b.s_valuations) {
            for c in marked_circles(j, locus.d, class.ramification, *v, host) {
                circles.push(c);
                images.push(target);
            }
            target += 1;
        }
    }
    let circle_classes = glue_circles(&circles, &images)?;
    let summary = summary(&graph);
    let checks = metric_checks(&graph, cfg)?;

    Ok(Analysis {
        input,
        shear,
        germ,
        locus,
        normalization,
        discriminant,
        discriminant_branches,
        characteristics,
        carousel,
        branches: branch_reports,
        circles,
        circle_classes,
        graph,
        summary,
        checks,
    })
}

fn analyze_branch(
    branch: &crate::germ::CurveBranch,
    s: &MPoly,
    discriminant_branches: &[PuiseuxBranch],
    carousel: Option<&CarouselSpec>,
    d: u32,
    cfg: &AnalysisConfig,
) -> Result<BranchAnalysis, AnalysisError> {
    let transversal = transversal_data(d, branch.multiplicity)?;
    let axis = axis_multiplicity(&branch.poly, Var::Z1)?;
    let classes = puiseux_expand(&branch.poly, &cfg.puiseux())?;
    let characteristics = classes.iter().map(characteristic_data).collect::<Result<Vec<_>, _>>()?;
    let tube_rate = characteristics
        .iter()
        .map(|c| c.last_exponent().cloned().unwrap_or_else(smooth_tube_rate))
        .max()
        .unwrap_or_else(smooth_tube_rate);

    let host_region = carousel.and_then(|spec| {
        let first = classes.first()?;
        let x = num_complex::Complex64::new(spec.epsilon * 1e-6, 0.0);
        spec.classify_point(x, first.eval(x)).ok().map(|r| r.id)
    });

    let on_s = branch.poly.divides(s);
    let s_valuations = classes
        .iter()
        .map(|class| {
            if on_s {
                return None;
            }
            let mut total = Rational::zero();
            for delta in discriminant_branches {
                for conj in delta.conjugates() {
                    match branch_distance_exponent(class, &conj) {
                        Ok(Valuation::Finite(e)) => total += e,
                        Ok(Valuation::NegInfinity) => {}
                        _ => return None,
                    }
                }
            }
            (total * Rational::from_integer(class.ramification.into()))
                .to_integer()
                .to_u32()
        })
        .collect();

    Ok(BranchAnalysis {
        poly: branch.poly.clone(),
        multiplicity: branch.multiplicity,
        axis_multiplicity: axis,
        transversal,
        classes,
        characteristics,
        tube_rate,
        host_region,
        s_valuations,
    })
}

/// Fits the shrink exponent of every distinct piece chart, and checks the
/// Cheeger-Nagase identity for every thickened torus.
pub fn metric_checks(graph: &DecompositionGraph, cfg: &AnalysisConfig) -> Result<Vec<MetricCheck>, AnalysisError> {
    let samples = cn_samples(cfg.cn_samples, cfg.seed);
    let mut seen: Vec<PieceKind> = Vec::new();
    let mut checks = Vec::new();
    for piece in &graph.pieces {
        let kind_key = match &piece.kind {
            PieceKind::TubularCone { nu, transversal } => PieceKind::TubularCone {
                nu: nu.clone(),
                transversal: *transversal,
            },
            k => k.clone(),
        };
        if seen.contains(&kind_key) {
            continue;
        }
        seen.push(kind_key);
        let chart = &piece.chart;
        let fit = fit_shrink_exponent(chart, |t| fiber_loop(chart, t), &cfg.t_sweep, cfg.quadrature_steps)?;
        let expected = piece.kind.rate();
        let expected_f = expected.to_f64().unwrap_or(f64::NAN);
        let cn = match &piece.kind {
            PieceKind::ThickenedTorusCone { nu, nu_prime } => Some(verify_cn_identity(nu, nu_prime, &samples)?),
            _ => None,
        };
        let passed = (fit.exponent - expected_f).abs() <= CONICAL_TOLERANCE
            && fit.conical == piece.kind.is_conical()
            && cn.as_ref().is_none_or(|r| r.passed());
        checks.push(MetricCheck {
            piece: piece.id,
            chart: chart.name(),
            expected,
            fit,
            tolerance: CONICAL_TOLERANCE,
            cn,
            passed,
        });
    }
    Ok(checks)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChartChoice {
    Cone,
    HsiangPati,
    CheegerNagase,
    Annulus,
    MappingTorusCone,
}

impl std::str::FromStr for ChartChoice {
    type Err = AnalysisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "cone" => ChartChoice::Cone,
            "hp" | "hsiang-pati" => ChartChoice::HsiangPati,
            "cn" | "cheeger-nagase" => ChartChoice::CheegerNagase,
            "annulus" => ChartChoice::Annulus,
            "mtc" | "mapping-torus-cone" => ChartChoice::MappingTorusCone,
            other => {
                return Err(AnalysisError::Config(format!(
                    "unknown chart {other:?}; expected cone, hp, cn, annulus or mtc"
                )))
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricsRequest {
    pub chart: ChartChoice,
    pub nu: Rational,
    pub nu_prime: Option<Rational>,
    pub t_sweep: Vec<f64>,
    pub quadrature_steps: usize,
    pub verify_cn: bool,
    pub samples: usize,
    pub seed: u64,
}

impl Default for MetricsRequest {
    fn default() -> Self {
        MetricsRequest {
            chart: ChartChoice::HsiangPati,
            nu: Rational::from_integer(1.into()),
            nu_prime: None,
            t_sweep: vec![1e-1, 1e-2, 1e-3],
            quadrature_steps: 16,
            verify_cn: false,
            samples: 1000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct MetricsOutcome {
    pub chart: MetricChart,
    pub expected: Rational,
    pub fit: ShrinkFit,
    pub fit_passed: bool,
    pub cn: Option<CnIdentityReport>,
    /// Largest `|length - |t^nu - t^nu'||` of radial annulus segments over the sweep.
    pub radial_width_error: Option<f64>,
}

impl MetricsOutcome {
    pub fn passed(&self) -> bool {
        self.fit_passed
            && self.cn.as_ref().is_none_or(|c| c.passed())
            && self.radial_width_error.is_none_or(|e| e <= RADIAL_WIDTH_TOLERANCE)
    }
}

pub const RADIAL_WIDTH_TOLERANCE: f64 = 1e-10;

/// Uniform samples `(t, r, psi)` with `t` in `(0, 1)`, `r` in `[1, 2]`.
pub fn cn_samples(count: usize, seed: u64) -> Vec<[f64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            [
                rng.gen_range(1e-6..1.0),
                rng.gen_range(1.0..=2.0),
                rng.gen_range(0.0..TAU),
            ]
        })
        .collect()
}

pub fn run_metrics(req: &MetricsRequest) -> Result<MetricsOutcome, AnalysisError> {
    if req.quadrature_steps < 2 || req.samples == 0 {
        return Err(AnalysisError::Config(
            "sample counts must be positive (and steps >= 2)".into(),
        ));
    }
    let pair = || {
        req.nu_prime
            .clone()
            .ok_or_else(|| AnalysisError::Config("this chart needs --nuprime".into()))
    };
    let chart = match req.chart {
        ChartChoice::Cone => MetricChart::cone(BaseMetric::flat(2)),
        ChartChoice::HsiangPati => MetricChart::hsiang_pati(req.nu.clone(), BaseMetric::flat(2))?,
        ChartChoice::CheegerNagase => MetricChart::cheeger_nagase(req.nu.clone(), pair()?)?,
        ChartChoice::Annulus => MetricChart::annulus(req.nu.clone(), pair()?)?,
        ChartChoice::MappingTorusCone => {
            MetricChart::mapping_torus_cone(req.nu.clone(), BaseMetric::flat(2), Monodromy::quarter_turns(1))?
        }
    };
    // The fiber loop of a thickened torus chart is its fast circle.
    let expected = match &chart {
        MetricChart::CheegerNagase { nu_prime, .. } | MetricChart::Annulus { nu_prime, .. } => nu_prime.clone(),
        _ => chart.nu(),
    };
    let fit = fit_shrink_exponent(&chart, |t| fiber_loop(&chart, t), &req.t_sweep, req.quadrature_steps)?;
    let expected_f = expected.to_f64().unwrap_or(f64::NAN);
    let fit_passed = (fit.exponent - expected_f).abs() <= CONICAL_TOLERANCE
        && fit.conical == (expected == Rational::from_integer(1.into()));

    let (cn, radial_width_error) = if req.verify_cn {
        let nu_prime = pair()?;
        if nu_prime <= req.nu {
            return Err(AnalysisError::Config(format!(
                "--verify-cn needs nu' > nu, got nu = {}, nu' = {nu_prime}",
                req.nu
            )));
        }
        let report = verify_cn_identity(&req.nu, &nu_prime, &cn_samples(req.samples, req.seed))?;
        let annulus = MetricChart::annulus(req.nu.clone(), nu_prime.clone())?;
        let (a, b) = (
            req.nu.to_f64().unwrap_or(f64::NAN),
            nu_prime.to_f64().unwrap_or(f64::NAN),
        );
        let mut worst = 0.0f64;
        for &t in &req.t_sweep {
            if t >= 1.0 {
                continue;
            }
            let radial = ParamCurve::segment(vec![t, 0.0, 1.0, 0.0], vec![t, 0.0, 2.0, 0.0]);
            let length = curve_length(&annulus, &radial, req.quadrature_steps)?;
            worst = worst.max((length - (t.powf(a) - t.powf(b)).abs()).abs());
        }
        (Some(report), Some(worst))
    } else {
        (None, None)
    };
    Ok(MetricsOutcome {
        chart,
        expected,
        fit,
        fit_passed,
        cn,
        radial_width_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn parse(text: &str) -> MPoly {
        parse_poly(text, &VARIABLES).unwrap()
    }

    #[test]
    fn worked_example() {
        let a = analyze_text("z3^2 - (z1^3 - z2^2)^2*(z1^4 - z2^3)", &AnalysisConfig::default()).unwrap();
        assert_eq!(a.shear, 0);
        assert_eq!(a.locus.curve_branches.len(), 1);
        assert_eq!(a.locus.curve_branches[0].multiplicity, 2);
        assert_eq!(a.normalization.f_bar, parse("z3^2 - (z1^4 - z2^3)"));
        assert_eq!(a.characteristics.len(), 1);
        assert_eq!(a.characteristics[0].exponents, vec![r(4, 3)]);
        assert_eq!(a.branches[0].axis_multiplicity, 2);
        assert_eq!(a.branches[0].tube_rate, r(3, 2));
        assert_eq!(a.summary.conical_count(), 1);
        assert_eq!(a.summary.nonconical_rate(), Some(r(4, 3)));
        for kind in ["SeifertCone", "ThickenedTorusCone", "MappingTorusCone", "TubularCone"] {
            assert!(a.summary.count(kind) >= 1, "{kind}");
        }
        // s = z1^4 - z2^3 restricted to z1 = tau^2, z2 = tau^3 is tau^8 - tau^9.
        assert_eq!(a.branches[0].s_valuations, vec![Some(8)]);
        assert_eq!(a.circle_classes.len(), 1);
        assert_eq!(a.circle_classes[0].members.len(), 2);
        assert_eq!(a.circle_classes[0].degree, 2);
        assert!(a.verified(), "{:?}", a.checks);
    }

    #[test]
    fn a1_germ_is_one_cone() {
        let a = analyze_text("z3^2 - z1^2 - z2^2", &AnalysisConfig::default()).unwrap();
        assert!(a.locus.curve_branches.is_empty());
        assert_eq!(a.graph.pieces.len(), 1);
        assert_eq!(a.summary.count("SeifertCone"), 1);
        assert!(a.verified());
    }

    #[test]
    fn non_generic_coordinates_are_sheared() {
        let a = analyze_text("z3^2 - z1*z2", &AnalysisConfig::default()).unwrap();
        assert_ne!(a.shear, 0);
        assert!(z2_generic(&a.normalization.s));
        assert_eq!(a.graph.pieces.len(), 1);
    }

    #[test]
    fn smooth_normalization_with_a_singular_line() {
        let a = analyze_text("z3^2 - z2^4", &AnalysisConfig::default()).unwrap();
        assert!(a.normalization.smooth);
        assert!(a.carousel.is_none());
        let kinds: Vec<String> = a.graph.pieces.iter().map(|p| p.kind.to_string()).collect();
        assert_eq!(
            kinds,
            [
                "SeifertCone nu=1",
                "ThickenedTorusCone nu=1 nu'=2",
                "TubularCone d=2 m=4 nu=2"
            ]
        );
        assert_eq!(a.branches[0].s_valuations, vec![Some(0)]);
        assert_eq!(a.circle_classes[0].members.len(), 2);
        assert!(a.verified());
    }

    #[test]
    fn capability_and_parse_errors() {
        let e = analyze_text("z1 + z2", &AnalysisConfig::default()).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = analyze_text("z3^2 - (", &AnalysisConfig::default()).unwrap_err();
        assert_eq!(e.exit_code(), 1);
        let e = analyze_text("z3^3 - z1^2 - z2^3", &AnalysisConfig::default()).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let bad = AnalysisConfig {
            t_sweep: vec![0.1, 2.0, 0.001],
            ..AnalysisConfig::default()
        };
        assert_eq!(analyze_text("z3^2 - z1^2 - z2^2", &bad).unwrap_err().exit_code(), 1);
    }

    #[test]
    fn metrics_requests() {
        let hp = run_metrics(&MetricsRequest {
            nu: r(4, 3),
            ..MetricsRequest::default()
        })
        .unwrap();
        assert!((hp.fit.exponent - 4.0 / 3.0).abs() < 1e-2 && hp.passed());
        let cone = run_metrics(&MetricsRequest {
            chart: ChartChoice::Cone,
            ..MetricsRequest::default()
        })
        .unwrap();
        assert!(cone.fit.conical && cone.passed());
        let cn = run_metrics(&MetricsRequest {
            chart: ChartChoice::CheegerNagase,
            nu_prime: Some(r(4, 3)),
            verify_cn: true,
            ..MetricsRequest::default()
        })
        .unwrap();
        assert!(cn.passed(), "{cn:?}");
        assert!(cn.cn.unwrap().max_deviation <= 1e-12);
        let mtc = run_metrics(&MetricsRequest {
            chart: ChartChoice::MappingTorusCone,
            nu: r(3, 2),
            ..MetricsRequest::default()
        })
        .unwrap();
        assert!(mtc.passed());
        let bad = MetricsRequest {
            chart: ChartChoice::CheegerNagase,
            nu: r(4, 3),
            nu_prime: Some(r(1, 1)),
            ..MetricsRequest::default()
        };
        assert_eq!(run_metrics(&bad).unwrap_err().exit_code(), 2);
        assert!("torus".parse::<ChartChoice>().is_err());
    }

    #[test]
    fn deterministic() {
        let cfg = AnalysisConfig::default();
        let a = analyze_text("z3^2 - (z1^3 - z2^2)^2*(z1^4 - z2^3)", &cfg).unwrap();
        let b = analyze_text("z3^2 - (z1^3 - z2^2)^2*(z1^4 - z2^3)", &cfg).unwrap();
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.checks, b.checks);
    }
}
