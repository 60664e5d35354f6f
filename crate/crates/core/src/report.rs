//! Serializable analysis report (JSON schema "1") and its text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::carousel::MetricKind;
use crate::germ::{IsolatedCandidates, TransversalData};
use crate::graph::{DecompositionGraph, GraphError, Piece, PieceKind, Provenance};
use crate::metrics::CONICAL_TOLERANCE;
use crate::pipeline::{Analysis, MetricsOutcome, MetricsRequest, RADIAL_WIDTH_TOLERANCE};
use crate::poly::Rational;
use crate::puiseux::{PuiseuxBranch, PuiseuxCharacteristic};

pub const SCHEMA: &str = "1";

/// An exact rational as `{"num": p, "den": q}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Exact {
    pub num: i64,
    pub den: i64,
}

impl Exact {
    pub fn to_rational(self) -> Result<Rational, GraphError> {
        if self.den <= 0 {
            return Err(GraphError::InvalidPiece(format!(
                "denominator {} is not positive",
                self.den
            )));
        }
        Ok(Rational::new(self.num.into(), self.den.into()))
    }
}

impl From<&Rational> for Exact {
    fn from(r: &Rational) -> Exact {
        Exact {
            num: r.numer().to_i64().expect("numerator fits in i64"),
            den: r.denom().to_i64().expect("denominator fits in i64"),
        }
    }
}

impl std::fmt::Display for Exact {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransversalReport {
    pub d: u32,
    pub m: u32,
    pub milnor_number: u32,
    pub link_components: u32,
}

impl From<TransversalData> for TransversalReport {
    fn from(t: TransversalData) -> Self {
        TransversalReport {
            d: t.d,
            m: t.m,
            milnor_number: t.milnor_number,
            link_components: t.link_components,
        }
    }
}

impl From<TransversalReport> for TransversalData {
    fn from(t: TransversalReport) -> Self {
        TransversalData {
            d: t.d,
            m: t.m,
            milnor_number: t.milnor_number,
            link_components: t.link_components,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub series: String,
    pub ramification: u32,
    pub exact: bool,
    pub exponents: Vec<Exact>,
    pub pairs: Vec<(u64, u64)>,
}

fn series_report(b: &PuiseuxBranch, c: &PuiseuxCharacteristic) -> SeriesReport {
    SeriesReport {
        series: b.to_string(),
        ramification: b.ramification,
        exact: b.is_exact(),
        exponents: c.exponents.iter().map(Exact::from).collect(),
        pairs: c.pairs.clone(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchReport {
    pub poly: String,
    pub multiplicity: u32,
    pub embedded_equations: (String, String),
    pub axis_multiplicity: u32,
    pub transversal: TransversalReport,
    pub classes: Vec<SeriesReport>,
    pub tube_rate: Exact,
    pub host_region: Option<usize>,
    pub s_valuations: Vec<Option<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LocusReport {
    pub d: u32,
    pub rule: String,
    pub branches: Vec<BranchReport>,
    /// `None` when not computed.
    pub isolated_candidates: Option<Vec<(String, String)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct NormalizationReport {
    pub f_bar: String,
    pub substitution: String,
    pub smooth: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionReport {
    pub id: usize,
    pub kind: String,
    pub carousel: Option<usize>,
    pub nu: Exact,
    pub nu_outer: Option<Exact>,
    pub metric: String,
    pub rate: Exact,
    pub conical: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProvenanceReport {
    Regions(Vec<usize>),
    Branch(usize),
    Germ,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceReport {
    pub id: usize,
    pub kind: String,
    pub nu: Exact,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu_prime: Option<Exact>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transversal: Option<TransversalReport>,
    pub rate: Exact,
    pub conical: bool,
    pub provenance: ProvenanceReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeReport {
    pub a: usize,
    pub b: usize,
    pub gluing: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GraphReport {
    pub pieces: Vec<PieceReport>,
    pub edges: Vec<EdgeReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleReport {
    pub branch: usize,
    pub sheet: usize,
    pub degree: u32,
    pub host: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleClassReport {
    pub target: usize,
    pub members: Vec<usize>,
    pub degree: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SummaryReport {
    pub counts: BTreeMap<String, usize>,
    pub conical_pieces: usize,
    pub nonconical_rate: Option<Exact>,
    pub conical_flags: Vec<(usize, bool)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub piece: usize,
    pub chart: String,
    pub expected: Exact,
    pub fitted: f64,
    pub residual: f64,
    pub lengths: Vec<(f64, f64)>,
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cn_max_deviation: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cn_tolerance: Option<f64>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct AnalysisReport {
    pub schema: String,
    pub input: String,
    pub coordinates: String,
    pub singular_locus: LocusReport,
    pub normalization: NormalizationReport,
    pub discriminant: Option<String>,
    pub puiseux: Vec<SeriesReport>,
    pub regions: Vec<RegionReport>,
    pub graph: GraphReport,
    pub circles: Vec<CircleReport>,
    pub circle_classes: Vec<CircleClassReport>,
    pub summary: SummaryReport,
    pub verification: Vec<CheckReport>,
    pub verified: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("invalid JSON report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported report schema {0:?}")]
    Schema(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn metric_name(kind: &MetricKind) -> String {
    match kind {
        MetricKind::Cone => "cone".into(),
        MetricKind::MappingTorusCone { nu, .. } => format!("mapping torus cone, nu = {nu}"),
        MetricKind::CheegerNagase { nu, nu_prime } => format!("thickened torus cone, nu = {nu}, nu' = {nu_prime}"),
    }
}

pub fn piece_report(p: &Piece) -> PieceReport {
    let (nu, nu_prime, transversal) = match &p.kind {
        PieceKind::SeifertCone => (Exact { num: 1, den: 1 }, None, None),
        PieceKind::ThickenedTorusCone { nu, nu_prime } => (nu.into(), Some(nu_prime.into()), None),
        PieceKind::MappingTorusCone { nu } => (nu.into(), None, None),
        PieceKind::TubularCone { transversal, nu } => (nu.into(), None, Some((*transversal).into())),
    };
    PieceReport {
        id: p.id,
        kind: p.kind.name().to_string(),
        nu,
        nu_prime,
        transversal,
        rate: (&p.kind.rate()).into(),
        conical: p.kind.is_conical(),
        provenance: match &p.provenance {
            Provenance::Regions(r) => ProvenanceReport::Regions(r.clone()),
            Provenance::Branch(b) => ProvenanceReport::Branch(*b),
            Provenance::Germ => ProvenanceReport::Germ,
        },
    }
}

pub fn graph_report(g: &DecompositionGraph) -> GraphReport {
    GraphReport {
        pieces: g.pieces.iter().map(piece_report).collect(),
        edges: g
            .edges
            .iter()
            .map(|e| EdgeReport {
                a: e.a,
                b: e.b,
                gluing: e.gluing.clone(),
            })
            .collect(),
    }
}

/// Rebuilds and revalidates the graph stored in a report.
pub fn graph_from_report(g: &GraphReport) -> Result<DecompositionGraph, GraphError> {
    let pieces = g
        .pieces
        .iter()
        .map(|p| {
            let nu = p.nu.to_rational()?;
            let kind = match p.kind.as_str() {
                "SeifertCone" => PieceKind::SeifertCone,
                "ThickenedTorusCone" => PieceKind::ThickenedTorusCone {
                    nu,
                    nu_prime: p
                        .nu_prime
                        .ok_or_else(|| GraphError::InvalidPiece(format!("piece {} lacks nu_prime", p.id)))?
                        .to_rational()?,
                },
                "MappingTorusCone" => PieceKind::MappingTorusCone { nu },
                "TubularCone" => PieceKind::TubularCone {
                    transversal: p
                        .transversal
                        .ok_or_else(|| GraphError::InvalidPiece(format!("piece {} lacks transversal data", p.id)))?
                        .into(),
                    nu,
                },
                other => return Err(GraphError::InvalidPiece(format!("unknown piece kind {other:?}"))),
            };
            let provenance = match &p.provenance {
                ProvenanceReport::Regions(r) => Provenance::Regions(r.clone()),
                ProvenanceReport::Branch(b) => Provenance::Branch(*b),
                ProvenanceReport::Germ => Provenance::Germ,
            };
            Piece::new(p.id, kind, provenance)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let edges: Vec<(usize, usize)> = g.edges.iter().map(|e| (e.a, e.b)).collect();
    DecompositionGraph::from_parts(pieces, &edges)
}

pub fn build_report(a: &Analysis) -> AnalysisReport {
    let coordinates = if a.shear == 0 {
        "as given".to_string()
    } else {
        format!("z1 -> z1 + ({})*z2", a.shear)
    };
    let branches = a
        .branches
        .iter()
        .map(|b| {
            let (e1, e2) = crate::germ::CurveBranch {
                poly: b.poly.clone(),
                multiplicity: b.multiplicity,
            }
            .embedded_equations();
            BranchReport {
                poly: b.poly.to_string(),
                multiplicity: b.multiplicity,
                embedded_equations: (format!("{e1} = 0"), format!("{e2} = 0")),
                axis_multiplicity: b.axis_multiplicity,
                transversal: b.transversal.into(),
                classes: b
                    .classes
                    .iter()
                    .zip(&b.characteristics)
                    .map(|(s, c)| series_report(s, c))
                    .collect(),
                tube_rate: (&b.tube_rate).into(),
                host_region: b.host_region,
                s_valuations: b.s_valuations.clone(),
            }
        })
        .collect();
    let regions = a
        .carousel
        .iter()
        .flat_map(|spec| spec.regions.iter())
        .map(|r| {
            let m = r.metric_type();
            RegionReport {
                id: r.id,
                kind: r.kind.to_string(),
                carousel: r.carousel,
                nu: (&r.nu).into(),
                nu_outer: r.nu_outer.as_ref().map(Exact::from),
                metric: metric_name(&m),
                rate: (&m.rate()).into(),
                conical: m.is_conical(),
            }
        })
        .collect();
    let summary = SummaryReport {
        counts: a.summary.counts.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        conical_pieces: a.summary.conical_count(),
        nonconical_rate: a.summary.nonconical_rate().as_ref().map(Exact::from),
        conical_flags: a.summary.pieces.iter().map(|p| (p.id, p.conical)).collect(),
    };
    let verification = a
        .checks
        .iter()
        .map(|c| CheckReport {
            piece: c.piece,
            chart: c.chart.to_string(),
            expected: (&c.expected).into(),
            fitted: c.fit.exponent,
            residual: c.fit.residual,
            lengths: c.fit.lengths.clone(),
            tolerance: c.tolerance,
            cn_max_deviation: c.cn.as_ref().map(|r| r.max_deviation),
            cn_tolerance: c.cn.as_ref().map(|r| r.tolerance),
            passed: c.passed,
        })
        .collect();
    AnalysisReport {
        schema: SCHEMA.to_string(),
        input: a.input.to_string(),
        coordinates,
        singular_locus: LocusReport {
            d: a.locus.d,
            rule: a.locus.rule.clone(),
            branches,
            isolated_candidates: match &a.locus.isolated_candidates {
                IsolatedCandidates::NotComputed => None,
                IsolatedCandidates::Points(p) => Some(p.iter().map(|(x, y)| (x.to_string(), y.to_string())).collect()),
            },
        },
        normalization: NormalizationReport {
            f_bar: a.normalization.f_bar.to_string(),
            substitution: a.normalization.substitution(),
            smooth: a.normalization.smooth,
        },
        discriminant: a.discriminant.as_ref().map(|d| d.to_string()),
        puiseux: a
            .discriminant_branches
            .iter()
            .zip(&a.characteristics)
            .map(|(b, c)| series_report(b, c))
            .collect(),
        regions,
        graph: graph_report(&a.graph),
        circles: a
            .circles
            .iter()
            .map(|c| CircleReport {
                branch: c.branch,
                sheet: c.sheet,
                degree: c.degree,
                host: c.host,
            })
            .collect(),
        circle_classes: a
            .circle_classes
            .iter()
            .map(|c| CircleClassReport {
                target: c.target,
                members: c.members.clone(),
                degree: c.degree,
            })
            .collect(),
        summary,
        verification,
        verified: a.verified(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PuiseuxReport {
    pub schema: String,
    pub input: String,
    pub branches: Vec<SeriesReport>,
}

pub fn puiseux_report(input: &str, branches: &[PuiseuxBranch], data: &[PuiseuxCharacteristic]) -> PuiseuxReport {
    PuiseuxReport {
        schema: SCHEMA.to_string(),
        input: input.to_string(),
        branches: branches.iter().zip(data).map(|(b, c)| series_report(b, c)).collect(),
    }
}

pub fn render_puiseux(r: &PuiseuxReport) -> String {
    let mut o = String::new();
    for (k, b) in r.branches.iter().enumerate() {
        let _ = writeln!(o, "branch {k}: {}", b.series);
        let _ = writeln!(
            o,
            "  ramification {}, characteristic exponents {}, pairs {:?}",
            b.ramification,
            exps(&b.exponents),
            b.pairs
        );
    }
    o
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CnReport {
    pub samples_used: usize,
    pub flagged: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub schema: String,
    pub chart: String,
    pub nu: Exact,
    pub nu_prime: Option<Exact>,
    pub lengths: Vec<(f64, f64)>,
    pub fitted: f64,
    pub residual: f64,
    pub expected: Exact,
    pub tolerance: f64,
    pub conical: bool,
    pub fit_passed: bool,
    pub cn: Option<CnReport>,
    pub radial_width_error: Option<f64>,
    pub radial_width_tolerance: f64,
    pub passed: bool,
}

pub fn metrics_report(req: &MetricsRequest, out: &MetricsOutcome) -> MetricsReport {
    MetricsReport {
        schema: SCHEMA.to_string(),
        chart: out.chart.name().to_string(),
        nu: (&req.nu).into(),
        nu_prime: req.nu_prime.as_ref().map(Exact::from),
        lengths: out.fit.lengths.clone(),
        fitted: out.fit.exponent,
        residual: out.fit.residual,
        expected: (&out.expected).into(),
        tolerance: CONICAL_TOLERANCE,
        conical: out.fit.conical,
        fit_passed: out.fit_passed,
        cn: out.cn.as_ref().map(|c| CnReport {
            samples_used: c.samples_used,
            flagged: c.flagged,
            max_deviation: c.max_deviation,
            tolerance: c.tolerance,
            passed: c.passed(),
        }),
        radial_width_error: out.radial_width_error,
        radial_width_tolerance: RADIAL_WIDTH_TOLERANCE,
        passed: out.passed(),
    }
}

pub fn render_metrics(r: &MetricsReport) -> String {
    let mut o = String::new();
    let pair = r.nu_prime.map(|p| format!(", nu' = {p}")).unwrap_or_default();
    let _ = writeln!(o, "chart {} (nu = {}{pair})", r.chart, r.nu);
    for (t, l) in &r.lengths {
        let _ = writeln!(o, "  t = {t:e}: loop length {l:.6e}");
    }
    let _ = writeln!(
        o,
        "fitted exponent {:.4} (expected {} +- {}), {}: {}",
        r.fitted,
        r.expected,
        r.tolerance,
        if r.conical { "metrically conical" } else { "not conical" },
        if r.fit_passed { "ok" } else { "FAILED" }
    );
    if let Some(c) = &r.cn {
        let _ = writeln!(
            o,
            "identity: max deviation {:.3e} over {} samples ({} at t = 1 skipped), tolerance {:.0e}: {}",
            c.max_deviation,
            c.samples_used,
            c.flagged,
            c.tolerance,
            if c.passed { "ok" } else { "FAILED" }
        );
    }
    if let Some(e) = r.radial_width_error {
        let _ = writeln!(
            o,
            "annulus radial width error {e:.3e}, tolerance {:.0e}: {}",
            r.radial_width_tolerance,
            if e <= r.radial_width_tolerance { "ok" } else { "FAILED" }
        );
    }
    o
}

/// Pretty JSON with a trailing newline.
pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

pub fn to_json(r: &AnalysisReport) -> String {
    json(r)
}

pub fn from_json(text: &str) -> Result<AnalysisReport, ReportError> {
    let r: AnalysisReport = serde_json::from_str(text)?;
    if r.schema != SCHEMA {
        return Err(ReportError::Schema(r.schema));
    }
    Ok(r)
}

fn exps(e: &[Exact]) -> String {
    let v: Vec<String> = e.iter().map(|x| x.to_string()).collect();
    format!("[{}]", v.join(", "))
}

/// Locus, normalization, exponents, regions, pieces, then the checks.
pub fn render_text(r: &AnalysisReport) -> String {
    let mut o = String::new();
    let _ = writeln!(o, "input: {}", r.input);
    if r.coordinates != "as given" {
        let _ = writeln!(o, "coordinates: {}", r.coordinates);
    }
    let _ = writeln!(o, "\nsingular locus ({})", r.singular_locus.rule);
    if r.singular_locus.branches.is_empty() {
        let _ = writeln!(o, "  no curve branches");
    }
    for (j, b) in r.singular_locus.branches.iter().enumerate() {
        let _ = writeln!(
            o,
            "  branch {j}: {{{}, {}}}, multiplicity {} in g, axis multiplicity {}",
            b.embedded_equations.0, b.embedded_equations.1, b.multiplicity, b.axis_multiplicity
        );
        let t = &b.transversal;
        let _ = writeln!(
            o,
            "    transversal type z3^{} - w^{}: Milnor number {}, {} link components",
            t.d, t.m, t.milnor_number, t.link_components
        );
    }
    if let Some(points) = &r.singular_locus.isolated_candidates {
        let p: Vec<String> = points.iter().map(|(x, y)| format!("({x}, {y})")).collect();
        let listed = if p.is_empty() { "none".to_string() } else { p.join(", ") };
        let _ = writeln!(o, "  isolated candidates (sampled): {listed}");
    }
    let _ = writeln!(o, "\nnormalization");
    let _ = writeln!(o, "  f_bar = {}", r.normalization.f_bar);
    let _ = writeln!(o, "  {}", r.normalization.substitution);
    if r.normalization.smooth {
        let _ = writeln!(o, "  smooth after normalization");
    }
    let _ = writeln!(o, "\ndiscriminant");
    match &r.discriminant {
        Some(d) => {
            let _ = writeln!(o, "  {d} = 0");
        }
        None => {
            let _ = writeln!(o, "  none at the origin");
        }
    }
    for s in &r.puiseux {
        let _ = writeln!(o, "  {}", s.series);
        let _ = writeln!(
            o,
            "    characteristic exponents {} pairs {:?}",
            exps(&s.exponents),
            s.pairs
        );
    }
    let _ = writeln!(o, "\ncarousel regions");
    if r.regions.is_empty() {
        let _ = writeln!(o, "  none");
    }
    for reg in &r.regions {
        let _ = writeln!(
            o,
            "  {}: {}{}",
            reg.kind,
            reg.metric,
            if reg.conical { " (conical)" } else { "" }
        );
    }
    let _ = writeln!(o, "\npieces");
    for p in &r.graph.pieces {
        let rate = if p.conical {
            "metrically conical".to_string()
        } else {
            format!("rate {}", p.rate)
        };
        let _ = writeln!(o, "  {} {}: {rate}", p.id, p.kind);
    }
    for e in &r.graph.edges {
        let _ = writeln!(o, "  {} -- {}", e.a, e.b);
    }
    for c in &r.circle_classes {
        let _ = writeln!(o, "  glued circles {:?}: degree {}", c.members, c.degree);
    }
    let counts: Vec<String> = r.summary.counts.iter().map(|(k, v)| format!("{k} {v}")).collect();
    let _ = writeln!(o, "  counts: {}", counts.join(", "));
    if let Some(rate) = r.summary.nonconical_rate {
        let _ = writeln!(o, "  non-conical rate {rate}");
    }
    let _ = writeln!(o, "\nmetric checks");
    for c in &r.verification {
        let mut line = format!(
            "  piece {} ({}): fitted {:.4}, expected {} +- {}",
            c.piece, c.chart, c.fitted, c.expected, c.tolerance
        );
        if let (Some(dev), Some(tol)) = (c.cn_max_deviation, c.cn_tolerance) {
            let _ = write!(line, "; identity deviation {dev:.2e} <= {tol:.0e}");
        }
        let _ = writeln!(o, "{line}: {}", if c.passed { "ok" } else { "FAILED" });
    }
    o
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::{analyze_text, AnalysisConfig};

    #[test]
    fn exponents_serialize_as_pairs() {
        let e = Exact::from(&Rational::new(4.into(), 3.into()));
        assert_eq!(serde_json::to_string(&e).unwrap(), r#"{"num":4,"den":3}"#);
        assert_eq!(e.to_string(), "4/3");
        assert!(Exact { num: 1, den: 0 }.to_rational().is_err());
    }

    #[test]
    fn worked_example_round_trips() {
        let a = analyze_text("z3^2 - (z1^3 - z2^2)^2*(z1^4 - z2^3)", &AnalysisConfig::default()).unwrap();
        let r = build_report(&a);
        let json = to_json(&r);
        assert!(json.contains("\"schema\": \"1\""));
        assert_eq!(from_json(&json).unwrap(), r);
        assert_eq!(graph_from_report(&r.graph).unwrap(), a.graph);
        let text = render_text(&r);
        let order = [
            "singular locus",
            "normalization",
            "discriminant",
            "carousel regions",
            "pieces",
        ];
        let at: Vec<usize> = order.iter().map(|h| text.find(h).unwrap()).collect();
        assert!(at.windows(2).all(|w| w[0] < w[1]), "{text}");
        assert!(text.contains("characteristic exponents [4/3]"));
    }

    #[test]
    fn empty_report_gives_empty_graph() {
        let r = from_json(r#"{"schema": "1"}"#).unwrap();
        assert!(graph_from_report(&r.graph).unwrap().pieces.is_empty());
        assert!(matches!(from_json(r#"{"schema": "2"}"#), Err(ReportError::Schema(_))));
        assert!(matches!(from_json("{"), Err(ReportError::Json(_))));
    }
}
