//! The four-kind decomposition as a graph of pieces glued along boundaries.
//!
//! Pieces come from carousel regions (outer part and rate-1 disks form the
//! Seifert piece, each Upsilon level with its disks forms a mapping torus
//! piece, each Omega level a thickened torus) and from the singular branches
//! (one tubular piece each). Thickened tori sit between any two other pieces.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::carousel::CarouselSpec;
use crate::germ::{SingularLocusReport, TransversalData};
use crate::metrics::{BaseMetric, MetricChart, MetricError, Monodromy};
use crate::poly::Rational;

pub const GLUING: &str = "isometric boundary identification";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("singular branch {0} has no transversal data")]
    MissingTransversal(usize),
    #[error("transversal data given for branch {0}, which is not in the singular locus")]
    UnknownBranch(usize),
    #[error("carousel region {0} does not map to a piece")]
    UnmappedRegion(usize),
    #[error("invalid piece: {0}")]
    InvalidPiece(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("circles over target {target} have different degrees {first} and {second}")]
    DegreeMismatch { target: usize, first: u32, second: u32 },
    #[error("{circles} circles but {images} images")]
    ImageCount { circles: usize, images: usize },
    #[error("Hirzebruch-Jung fraction needs n > q >= 1 with gcd(n, q) = 1, got n = {n}, q = {q}")]
    HjInput { n: u64, q: u64 },
}

impl From<MetricError> for GraphError {
    fn from(e: MetricError) -> GraphError {
        GraphError::InvalidPiece(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PieceKind {
    SeifertCone,
    ThickenedTorusCone {
        nu: Rational,
        nu_prime: Rational,
    },
    MappingTorusCone {
        nu: Rational,
    },
    /// Cone over the tube around a singular circle of the link; its fibers
    /// shrink at rate `nu`.
    TubularCone {
        transversal: TransversalData,
        nu: Rational,
    },
}

impl PieceKind {
    pub fn name(&self) -> &'static str {
        match self {
            PieceKind::SeifertCone => "SeifertCone",
            PieceKind::ThickenedTorusCone { .. } => "ThickenedTorusCone",
            PieceKind::MappingTorusCone { .. } => "MappingTorusCone",
            PieceKind::TubularCone { .. } => "TubularCone",
        }
    }

    /// Shrink rate; the inner one for a thickened torus.
    pub fn rate(&self) -> Rational {
        match self {
            PieceKind::SeifertCone => Rational::one(),
            PieceKind::ThickenedTorusCone { nu_prime, .. } => nu_prime.clone(),
            PieceKind::MappingTorusCone { nu } => nu.clone(),
            PieceKind::TubularCone { nu, .. } => nu.clone(),
        }
    }

    pub fn is_conical(&self) -> bool {
        matches!(self, PieceKind::SeifertCone)
    }

    pub fn is_torus(&self) -> bool {
        matches!(self, PieceKind::ThickenedTorusCone { .. })
    }

    fn chart(&self) -> Result<MetricChart, MetricError> {
        match self {
            PieceKind::SeifertCone => Ok(MetricChart::cone(BaseMetric::flat(3))),
            PieceKind::ThickenedTorusCone { nu, nu_prime } => MetricChart::cheeger_nagase(nu.clone(), nu_prime.clone()),
            PieceKind::MappingTorusCone { nu } => {
                MetricChart::mapping_torus_cone(nu.clone(), BaseMetric::flat(2), Monodromy::Identity)
            }
            PieceKind::TubularCone { nu, .. } => MetricChart::hsiang_pati(nu.clone(), BaseMetric::flat(2)),
        }
    }
}

impl fmt::Display for PieceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PieceKind::SeifertCone => write!(f, "SeifertCone nu=1"),
            PieceKind::ThickenedTorusCone { nu, nu_prime } => write!(f, "ThickenedTorusCone nu={nu} nu'={nu_prime}"),
            PieceKind::MappingTorusCone { nu } => write!(f, "MappingTorusCone nu={nu}"),
            PieceKind::TubularCone { transversal, nu } => {
                write!(f, "TubularCone d={} m={} nu={nu}", transversal.d, transversal.m)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// Carousel region ids.
    Regions(Vec<usize>),
    /// Index into the singular locus branches.
    Branch(usize),
    /// Whole germ, when there is no carousel.
    Germ,
}

#[derive(Debug, Clone)]
pub struct Piece {
    pub id: usize,
    pub kind: PieceKind,
    pub chart: MetricChart,
    pub provenance: Provenance,
}

impl Piece {
    pub fn new(id: usize, kind: PieceKind, provenance: Provenance) -> Result<Piece, GraphError> {
        if let PieceKind::ThickenedTorusCone { nu, nu_prime } = &kind {
            if nu_prime <= nu {
                return Err(GraphError::InvalidPiece(format!(
                    "thickened torus needs nu' > nu, got {nu}, {nu_prime}"
                )));
            }
        }
        if let (PieceKind::TubularCone { .. }, p) = (&kind, &provenance) {
            if !matches!(p, Provenance::Branch(_)) {
                return Err(GraphError::InvalidPiece(
                    "a tubular piece must come from a singular branch".into(),
                ));
            }
        }
        let chart = kind.chart()?;
        Ok(Piece {
            id,
            kind,
            chart,
            provenance,
        })
    }
}

impl PartialEq for Piece {
    fn eq(&self, other: &Piece) -> bool {
        self.id == other.id && self.kind == other.kind && self.provenance == other.provenance
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    /// Smaller endpoint first.
    pub a: usize,
    pub b: usize,
    pub gluing: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DecompositionGraph {
    pub pieces: Vec<Piece>,
    pub edges: Vec<Edge>,
    /// Per piece, incident edge ids in gluing order.
    pub boundary_order: Vec<Vec<usize>>,
}

impl DecompositionGraph {
    /// Builds a graph and checks connectedness, degree 2 for thickened tori,
    /// and that no two other pieces touch.
    pub fn from_parts(pieces: Vec<Piece>, edges: &[(usize, usize)]) -> Result<DecompositionGraph, GraphError> {
        for (k, p) in pieces.iter().enumerate() {
            if p.id != k {
                return Err(GraphError::InvalidGraph(format!(
                    "piece at position {k} has id {}",
                    p.id
                )));
            }
        }
        let mut graph = DecompositionGraph {
            boundary_order: vec![Vec::new(); pieces.len()],
            pieces,
            edges: Vec::new(),
        };
        for &(a, b) in edges {
            graph.connect(a, b)?;
        }
        graph.validate()?;
        Ok(graph)
    }

    fn connect(&mut self, a: usize, b: usize) -> Result<(), GraphError> {
        let n = self.pieces.len();
        if a >= n || b >= n || a == b {
            return Err(GraphError::InvalidGraph(format!("bad edge {a} -- {b}")));
        }
        let (a, b) = (a.min(b), a.max(b));
        if self.edges.iter().any(|e| e.a == a && e.b == b) {
            return Err(GraphError::InvalidGraph(format!("duplicate edge {a} -- {b}")));
        }
        let id = self.edges.len();
        self.edges.push(Edge {
            a,
            b,
            gluing: GLUING.to_string(),
        });
        self.boundary_order[a].push(id);
        self.boundary_order[b].push(id);
        Ok(())
    }

    pub fn degree(&self, piece: usize) -> usize {
        self.boundary_order[piece].len()
    }

    pub fn neighbors(&self, piece: usize) -> Vec<usize> {
        self.boundary_order[piece]
            .iter()
            .map(|&e| {
                let edge = &self.edges[e];
                if edge.a == piece {
                    edge.b
                } else {
                    edge.a
                }
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.pieces.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.pieces.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(p) = stack.pop() {
            for q in self.neighbors(p) {
                if !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        if !self.is_connected() {
            return Err(GraphError::InvalidGraph("not connected".into()));
        }
        for p in &self.pieces {
            if p.kind.is_torus() && self.degree(p.id) != 2 {
                return Err(GraphError::InvalidGraph(format!(
                    "thickened torus {} has degree {}",
                    p.id,
                    self.degree(p.id)
                )));
            }
        }
        for e in &self.edges {
            let (ka, kb) = (&self.pieces[e.a].kind, &self.pieces[e.b].kind);
            if !ka.is_torus() && !kb.is_torus() {
                return Err(GraphError::InvalidGraph(format!(
                    "{} and {} are glued without a thickened torus",
                    e.a, e.b
                )));
            }
        }
        Ok(())
    }
}

/// What the assembly needs to know about one singular branch.
#[derive(Debug, Clone, PartialEq)]
pub struct TubeInput {
    /// Index into `SingularLocusReport::curve_branches`.
    pub branch: usize,
    pub transversal: TransversalData,
    /// Shrink rate of the tube: the last characteristic exponent of the branch.
    pub nu: Rational,
    /// Carousel region containing the branch near the origin, if known.
    pub host_region: Option<usize>,
}

struct Assembly {
    pieces: Vec<Piece>,
    edges: Vec<(usize, usize)>,
}

impl Assembly {
    fn push(&mut self, kind: PieceKind, provenance: Provenance) -> Result<usize, GraphError> {
        let id = self.pieces.len();
        self.pieces.push(Piece::new(id, kind, provenance)?);
        Ok(id)
    }

    fn region_ids(&mut self, piece: usize) -> &mut Vec<usize> {
        match &mut self.pieces[piece].provenance {
            Provenance::Regions(r) => r,
            _ => unreachable!("carousel pieces record regions"),
        }
    }
}

/// Pieces in gluing order: the Seifert piece, then per carousel the levels
/// from the outside in (torus before band), then per branch a torus and the
/// tube.
pub fn assemble(
    locus: &SingularLocusReport,
    carousel: Option<&CarouselSpec>,
    tubes: &[TubeInput],
) -> Result<DecompositionGraph, GraphError> {
    let mut by_branch: BTreeMap<usize, &TubeInput> = BTreeMap::new();
    for t in tubes {
        if t.branch >= locus.curve_branches.len() {
            return Err(GraphError::UnknownBranch(t.branch));
        }
        by_branch.insert(t.branch, t);
    }
    if let Some(missing) = (0..locus.curve_branches.len()).find(|b| !by_branch.contains_key(b)) {
        return Err(GraphError::MissingTransversal(missing));
    }

    let mut asm = Assembly {
        pieces: Vec::new(),
        edges: Vec::new(),
    };
    let seifert = match carousel {
        Some(spec) => asm.push(PieceKind::SeifertCone, Provenance::Regions(vec![spec.outer]))?,
        None => asm.push(PieceKind::SeifertCone, Provenance::Germ)?,
    };
    // Carousel region -> piece.
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    let mut level_piece: Vec<usize> = Vec::new();
    if let Some(spec) = carousel {
        owner.insert(spec.outer, seifert);
        for c in &spec.carousels {
            if let Some(l) = c.lambda {
                asm.region_ids(seifert).push(l);
                owner.insert(l, seifert);
            }
        }
        // Levels are created parents first.
        for (l, level) in spec.levels.iter().enumerate() {
            let outer_piece = match level.parent {
                Some(p) => level_piece[p],
                None => seifert,
            };
            let torus = asm.push(
                PieceKind::ThickenedTorusCone {
                    nu: level.nu_outer.clone(),
                    nu_prime: level.nu.clone(),
                },
                Provenance::Regions(vec![level.omega]),
            )?;
            let mut regions = vec![level.upsilon];
            regions.extend(level.lambdas.iter().copied());
            let band = asm.push(
                PieceKind::MappingTorusCone { nu: level.nu.clone() },
                Provenance::Regions(regions.clone()),
            )?;
            owner.insert(level.omega, torus);
            for r in regions {
                owner.insert(r, band);
            }
            asm.edges.push((outer_piece, torus));
            asm.edges.push((torus, band));
            debug_assert_eq!(level_piece.len(), l);
            level_piece.push(band);
        }
        for r in &spec.regions {
            if !owner.contains_key(&r.id) {
                return Err(GraphError::UnmappedRegion(r.id));
            }
        }
        for p in &mut asm.pieces {
            if let Provenance::Regions(r) = &mut p.provenance {
                r.sort();
            }
        }
    }

    for (&b, tube) in &by_branch {
        let mut host = tube.host_region.and_then(|r| owner.get(&r).copied()).unwrap_or(seifert);
        // A thickened torus host is replaced by its outer neighbor, and the
        // host must shrink slower than the tube.
        loop {
            let kind = &asm.pieces[host].kind;
            let too_fast = kind.rate() >= tube.nu;
            if (kind.is_torus() || too_fast) && host != seifert {
                host = outward(&asm, host, seifert);
            } else {
                break;
            }
        }
        let host_rate = asm.pieces[host].kind.rate();
        if tube.nu <= host_rate {
            return Err(GraphError::InvalidPiece(format!(
                "tube rate {} of branch {b} does not exceed the host rate {host_rate}",
                tube.nu
            )));
        }
        let torus = asm.push(
            PieceKind::ThickenedTorusCone {
                nu: host_rate,
                nu_prime: tube.nu.clone(),
            },
            Provenance::Branch(b),
        )?;
        let tubular = asm.push(
            PieceKind::TubularCone {
                transversal: tube.transversal,
                nu: tube.nu.clone(),
            },
            Provenance::Branch(b),
        )?;
        asm.edges.push((host, torus));
        asm.edges.push((torus, tubular));
    }
    DecompositionGraph::from_parts(asm.pieces, &asm.edges)
}

/// The neighbor of `piece` one step closer to the Seifert piece.
fn outward(asm: &Assembly, piece: usize, seifert: usize) -> usize {
    // Pieces are pushed outside-in, so the outer neighbor has the smaller id.
    asm.edges
        .iter()
        .filter_map(|&(a, b)| if b == piece { Some(a) } else { None })
        .min()
        .unwrap_or(seifert)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MarkedCircle {
    /// Singular branch `j`.
    pub branch: usize,
    /// Sheet `i` over the branch.
    pub sheet: usize,
    /// Degree of the covering onto the target circle.
    pub degree: u32,
    pub host: usize,
}

/// Circles of the normalization over the link circle of one singular
/// branch. Along the branch `z1 = tau^n`, the normalized equation reads
/// `w^d = c tau^v + ...`, so the preimage of the tau-circle is gcd(d, v)
/// circles, each covering the z1-circle with degree `n d / gcd(d, v)`. A
/// branch on which `s` vanishes has a single preimage circle.
pub fn marked_circles(branch: usize, d: u32, n: u32, v: Option<u32>, host: usize) -> Vec<MarkedCircle> {
    let (count, degree) = match v {
        Some(v) => {
            let g = d.gcd(&v);
            (g, n * d / g)
        }
        None => (1, n),
    };
    (0..count as usize)
        .map(|sheet| MarkedCircle {
            branch,
            sheet,
            degree,
            host,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleClass {
    pub target: usize,
    /// Indices into the input circle list.
    pub members: Vec<usize>,
    pub degree: u32,
}

/// Identifies circles with the same image: one class per target circle.
pub fn glue_circles(circles: &[MarkedCircle], images: &[usize]) -> Result<Vec<CircleClass>, GraphError> {
    if circles.len() != images.len() {
        return Err(GraphError::ImageCount {
            circles: circles.len(),
            images: images.len(),
        });
    }
    let mut classes: BTreeMap<usize, CircleClass> = BTreeMap::new();
    for (k, (c, &target)) in circles.iter().zip(images).enumerate() {
        if c.degree == 0 {
            return Err(GraphError::InvalidPiece(format!("circle {k} has degree 0")));
        }
        let class = classes.entry(target).or_insert_with(|| CircleClass {
            target,
            members: Vec::new(),
            degree: c.degree,
        });
        if class.degree != c.degree {
            return Err(GraphError::DegreeMismatch {
                target,
                first: class.degree,
                second: c.degree,
            });
        }
        class.members.push(k);
    }
    Ok(classes.into_values().collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HJFraction {
    pub n: u64,
    pub q: u64,
    pub entries: Vec<u64>,
}

impl HJFraction {
    /// `a1 - 1/(a2 - 1/(...))`.
    pub fn evaluate(&self) -> Rational {
        let mut it = self.entries.iter().rev();
        let Some(&last) = it.next() else {
            return Rational::zero();
        };
        let mut acc = Rational::from_integer(last.into());
        for &a in it {
            acc = Rational::from_integer(a.into()) - acc.recip();
        }
        acc
    }
}

pub fn hj_continued_fraction(n: u64, q: u64) -> Result<HJFraction, GraphError> {
    if q < 1 || n <= q || n.gcd(&q) != 1 {
        return Err(GraphError::HjInput { n, q });
    }
    let mut entries = Vec::new();
    let (mut a, mut b) = (n, q);
    while b > 0 {
        let c = a.div_ceil(b);
        entries.push(c);
        (a, b) = (b, c * b - a);
    }
    Ok(HJFraction { n, q, entries })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceFlag {
    pub id: usize,
    pub kind: &'static str,
    pub conical: bool,
    pub rate: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSummary {
    pub counts: BTreeMap<&'static str, usize>,
    pub pieces: Vec<PieceFlag>,
}

impl GraphSummary {
    pub fn count(&self, kind: &str) -> usize {
        self.counts.get(kind).copied().unwrap_or(0)
    }

    pub fn conical_count(&self) -> usize {
        self.pieces.iter().filter(|p| p.conical).count()
    }

    /// Smallest rate among the non-conical pieces.
    pub fn nonconical_rate(&self) -> Option<Rational> {
        self.pieces.iter().filter(|p| !p.conical).map(|p| p.rate.clone()).min()
    }
}

pub fn summary(graph: &DecompositionGraph) -> GraphSummary {
    let mut counts = BTreeMap::new();
    for kind in ["SeifertCone", "ThickenedTorusCone", "MappingTorusCone", "TubularCone"] {
        counts.insert(kind, 0);
    }
    let pieces = graph
        .pieces
        .iter()
        .map(|p| {
            *counts.get_mut(p.kind.name()).expect("four kinds") += 1;
            PieceFlag {
                id: p.id,
                kind: p.kind.name(),
                conical: p.kind.is_conical(),
                rate: p.kind.rate(),
            }
        })
        .collect();
    GraphSummary { counts, pieces }
}

pub fn to_dot(graph: &DecompositionGraph) -> String {
    if graph.pieces.is_empty() {
        return "graph G {}\n".to_string();
    }
    let mut out = String::from("graph G {\n");
    for p in &graph.pieces {
        let _ = writeln!(out, "  n{} [label=\"{}\"];", p.id, p.kind);
    }
    for e in &graph.edges {
        let _ = writeln!(out, "  n{} -- n{} [label=\"{}\"];", e.a, e.b, e.gluing);
    }
    out.push_str("}\n");
    out
}
