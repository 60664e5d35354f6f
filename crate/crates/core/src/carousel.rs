//! Carousel decomposition of a cone around each tangent line of the
//! discriminant curve.
//!
//! All conjugates of all branches are arranged in a tree: a node is a set of
//! conjugates that agree below some exponent `nu` and differ at `nu`. Around
//! the common truncation `C(x)` a node owns
//!
//! * the band `alpha |x|^nu <= |y - C(x)| <= beta |x|^nu` minus the disks of
//!   radius `gamma |x|^nu` around the child points `C(x) + c x^nu` (Upsilon),
//! * the part of the enclosing disk outside the band (Omega),
//! * the inner disk `|y - C(x)| < alpha |x|^nu` when no child sits at the
//!   center (Lambda).
//!
//! A child made of a single conjugate is a disk around the curve itself
//! (Lambda). Conjugate nodes are merged into one region. The constants are
//! multiplied by the moduli of the child coefficients so that the disks are
//! disjoint and lie inside the band.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::Rational;
use crate::puiseux::{
    characteristic_data, rational_to_f64, ComplexValue, PuiseuxBranch, PuiseuxError, PuiseuxTerm, Valuation,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CarouselError {
    #[error("no discriminant branches to build a carousel from")]
    Empty,
    #[error("invalid carousel constants: {0}")]
    Constants(String),
    #[error(transparent)]
    Puiseux(#[from] PuiseuxError),
    #[error("branch has leading exponent {0} < 1: z1 = 0 is tangent to the discriminant")]
    NotTransversal(Rational),
    #[error("x = 0 is the apex of the cone")]
    Apex,
    #[error("|x| = {0} exceeds epsilon")]
    OutsideBall(f64),
}

/// Base constants; the per-level constants are derived from them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarouselConfig {
    pub epsilon: f64,
    pub mu: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl Default for CarouselConfig {
    fn default() -> Self {
        CarouselConfig {
            epsilon: 0.25,
            mu: 2.0,
            alpha: 0.5,
            beta: 2.0,
            gamma: 0.25,
        }
    }
}

impl CarouselConfig {
    pub fn validate(&self) -> Result<(), CarouselError> {
        let all = [self.epsilon, self.mu, self.alpha, self.beta, self.gamma];
        if all.iter().any(|v| !v.is_finite() || *v <= 0.0) {
            return Err(CarouselError::Constants("all constants must be positive".into()));
        }
        if self.epsilon > 1.0 {
            return Err(CarouselError::Constants("epsilon must be at most 1".into()));
        }
        if self.alpha >= self.beta {
            return Err(CarouselError::Constants(format!(
                "alpha = {} must be smaller than beta = {}",
                self.alpha, self.beta
            )));
        }
        if self.gamma >= 0.5 || self.alpha + self.gamma > 1.0 || 1.0 + self.gamma > self.beta {
            return Err(CarouselError::Constants(
                "need gamma < 1/2, alpha + gamma <= 1 and 1 + gamma <= beta so the disks fit in the band".into(),
            ));
        }
        Ok(())
    }
}

/// Effective constants of one level: radii are these times `|x|^nu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelConstants {
    /// Inner radius of the band; `None` when a child point sits at the center.
    pub alpha: Option<f64>,
    pub beta: f64,
    pub gamma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RegionKind {
    Upsilon { level: usize },
    Omega { level: usize },
    Lambda { index: usize },
    OuterA,
}

impl fmt::Display for RegionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionKind::Upsilon { level } => write!(f, "Upsilon_{level}"),
            RegionKind::Omega { level } => write!(f, "Omega_{level}"),
            RegionKind::Lambda { index } => write!(f, "Lambda_{index}"),
            RegionKind::OuterA => write!(f, "outside A"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiberBase {
    /// Planar surface with holes around the child points.
    Planar,
    Disk,
}

/// The model metric a region is bi-Lipschitz to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MetricKind {
    /// Metric cone `dt^2 + t^2 g`.
    Cone,
    MappingTorusCone {
        nu: Rational,
        base: FiberBase,
    },
    CheegerNagase {
        nu: Rational,
        nu_prime: Rational,
    },
}

impl MetricKind {
    /// Shrink rate of the fibers; for a thickened torus the inner one.
    pub fn rate(&self) -> Rational {
        match self {
            MetricKind::Cone => Rational::one(),
            MetricKind::MappingTorusCone { nu, .. } => nu.clone(),
            MetricKind::CheegerNagase { nu_prime, .. } => nu_prime.clone(),
        }
    }

    pub fn is_conical(&self) -> bool {
        match self {
            MetricKind::Cone => true,
            MetricKind::MappingTorusCone { nu, .. } => nu.is_one(),
            MetricKind::CheegerNagase { .. } => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    pub id: usize,
    pub kind: RegionKind,
    /// Index into `CarouselSpec::carousels`; `None` outside every cone.
    pub carousel: Option<usize>,
    /// Index into `CarouselSpec::levels` of the owning level.
    pub level: Option<usize>,
    pub nu: Rational,
    /// Outer rate of an Omega region.
    pub nu_outer: Option<Rational>,
    /// Discriminant branches with a conjugate through this region.
    pub classes: Vec<usize>,
    /// Truncated series the region is centered on.
    pub approximant: Vec<PuiseuxTerm>,
}

impl Region {
    pub fn metric_type(&self) -> MetricKind {
        region_metric_type(self)
    }
}

pub fn region_metric_type(region: &Region) -> MetricKind {
    match region.kind {
        RegionKind::OuterA => MetricKind::Cone,
        RegionKind::Upsilon { .. } => MetricKind::MappingTorusCone {
            nu: region.nu.clone(),
            base: FiberBase::Planar,
        },
        RegionKind::Omega { .. } => MetricKind::CheegerNagase {
            nu: region.nu_outer.clone().unwrap_or_else(Rational::one),
            nu_prime: region.nu.clone(),
        },
        RegionKind::Lambda { .. } => MetricKind::MappingTorusCone {
            nu: region.nu.clone(),
            base: FiberBase::Disk,
        },
    }
}

/// A class of conjugate tree nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct Level {
    pub carousel: usize,
    pub parent: Option<usize>,
    pub depth: usize,
    pub nu: Rational,
    pub nu_outer: Rational,
    pub constants: LevelConstants,
    pub classes: Vec<usize>,
    pub upsilon: usize,
    pub omega: usize,
    /// Inner disk and curve disks owned by this level.
    pub lambdas: Vec<usize>,
}

/// The cone `|y - a x| <= mu |x|` around one tangent line.
#[derive(Debug, Clone, PartialEq)]
pub struct Carousel {
    pub tangent: ComplexValue,
    /// Aperture actually used; smaller than the configured `mu` when
    /// tangent lines are close.
    pub aperture: f64,
    pub root: Option<usize>,
    /// The whole cone, when a single conjugate is tangent to this line.
    pub lambda: Option<usize>,
    pub classes: Vec<usize>,
}

#[derive(Debug, Clone)]
struct Child {
    coefficient: Complex64,
    target: Target,
}

#[derive(Debug, Clone)]
enum Target {
    Node(usize),
    Leaf(usize),
}

#[derive(Debug, Clone)]
struct Node {
    level: usize,
    nu: f64,
    center: Vec<(f64, Complex64)>,
    children: Vec<Child>,
}

#[derive(Debug, Clone)]
pub struct CarouselSpec {
    pub epsilon: f64,
    pub mu: f64,
    pub config: CarouselConfig,
    pub carousels: Vec<Carousel>,
    pub levels: Vec<Level>,
    pub regions: Vec<Region>,
    /// Per branch, the series through its deepest level.
    pub approximants: Vec<PuiseuxBranch>,
    pub outer: usize,
    nodes: Vec<Node>,
    roots: Vec<Option<usize>>,
}

#[derive(Debug, Clone)]
struct Conj {
    class: usize,
    terms: Vec<PuiseuxTerm>,
    precision: Valuation,
}

impl Conj {
    fn coefficient(&self, e: &Rational) -> ComplexValue {
        self.terms
            .iter()
            .find(|t| &t.exponent == e)
            .map(|t| t.coefficient.clone())
            .unwrap_or_else(|| ComplexValue::Exact(Rational::zero()))
    }
}

fn same(a: &ComplexValue, b: &ComplexValue) -> bool {
    !a.differs_from(b)
}

/// Groups members by the value of `key`, keeping first-seen order.
fn cluster<T, F: Fn(&T) -> ComplexValue>(items: Vec<T>, key: F) -> Vec<(ComplexValue, Vec<T>)> {
    let mut groups: Vec<(ComplexValue, Vec<T>)> = Vec::new();
    for item in items {
        let k = key(&item);
        match groups.iter_mut().find(|(g, _)| same(g, &k)) {
            Some((_, members)) => members.push(item),
            None => groups.push((k, vec![item])),
        }
    }
    groups
}

fn power(x: Complex64, e: f64) -> Complex64 {
    let (r, theta) = x.to_polar();
    Complex64::from_polar(r.powf(e), theta * e)
}

fn eval_terms(terms: &[(f64, Complex64)], x: Complex64) -> Complex64 {
    terms.iter().map(|(e, c)| c * power(x, *e)).sum()
}

fn numeric_terms(terms: &[PuiseuxTerm]) -> Vec<(f64, Complex64)> {
    terms
        .iter()
        .map(|t| (rational_to_f64(&t.exponent), t.coefficient.to_complex()))
        .collect()
}

struct Builder {
    config: CarouselConfig,
    spec_levels: Vec<Level>,
    regions: Vec<Region>,
    nodes: Vec<Node>,
    orbit_of: BTreeMap<(Rational, usize), usize>,
    leaf_region: BTreeMap<usize, usize>,
    deepest: Vec<Rational>,
    lambda_count: usize,
}

impl Builder {
    fn push_region(&mut self, region: Region) -> usize {
        let id = self.regions.len();
        self.regions.push(Region { id, ..region });
        id
    }

    /// First exponent above `floor` where the members do not all agree.
    fn split_exponent(members: &[Conj], floor: &Rational) -> Result<Rational, CarouselError> {
        let mut exps: Vec<&Rational> = members
            .iter()
            .flat_map(|m| m.terms.iter().map(|t| &t.exponent))
            .filter(|e| *e > floor)
            .collect();
        exps.sort();
        exps.dedup();
        let known = members.iter().map(|m| m.precision.clone()).min().expect("members");
        for e in exps {
            if let Valuation::Finite(limit) = &known {
                if e >= limit {
                    break;
                }
            }
            let first = members[0].coefficient(e);
            if members.iter().any(|m| !same(&first, &m.coefficient(e))) {
                return Ok(e.clone());
            }
        }
        Err(PuiseuxError::TruncationTooShort.into())
    }

    fn build_node(
        &mut self,
        carousel: usize,
        parent: Option<usize>,
        depth: usize,
        nu_outer: Rational,
        members: Vec<Conj>,
    ) -> Result<usize, CarouselError> {
        let nu = Self::split_exponent(&members, &nu_outer)?;
        let center_terms: Vec<PuiseuxTerm> = members[0].terms.iter().filter(|t| t.exponent < nu).cloned().collect();
        let groups = cluster(members, |m| m.coefficient(&nu));
        let values: Vec<Complex64> = groups.iter().map(|(c, _)| c.to_complex()).collect();
        let tol = 1e-12;
        let nonzero: Vec<f64> = values.iter().map(|c| c.norm()).filter(|m| *m > tol).collect();
        let has_center_child = nonzero.len() < values.len();
        let max_mod = nonzero.iter().cloned().fold(0.0, f64::max);
        let min_mod = nonzero.iter().cloned().fold(f64::INFINITY, f64::min);
        let mut gap = min_mod;
        for i in 0..values.len() {
            for j in i + 1..values.len() {
                gap = gap.min((values[i] - values[j]).norm());
            }
        }
        let constants = LevelConstants {
            alpha: if has_center_child {
                None
            } else {
                Some(self.config.alpha * min_mod)
            },
            beta: self.config.beta * max_mod,
            gamma: self.config.gamma * gap,
        };

        let mut classes: Vec<usize> = groups.iter().flat_map(|(_, ms)| ms.iter().map(|m| m.class)).collect();
        classes.sort();
        classes.dedup();
        let key = (nu.clone(), classes[0]);
        let level = match self.orbit_of.get(&key) {
            Some(&l) => l,
            None => {
                let l = self.spec_levels.len();
                let region = |kind, nu: Rational, nu_outer: Option<Rational>| Region {
                    id: 0,
                    kind,
                    carousel: Some(carousel),
                    level: Some(l),
                    nu,
                    nu_outer,
                    classes: classes.clone(),
                    approximant: center_terms.clone(),
                };
                let upsilon = self.push_region(region(RegionKind::Upsilon { level: depth }, nu.clone(), None));
                let omega = self.push_region(region(
                    RegionKind::Omega { level: depth },
                    nu.clone(),
                    Some(nu_outer.clone()),
                ));
                let mut lambdas = Vec::new();
                if constants.alpha.is_some() {
                    self.lambda_count += 1;
                    let index = self.lambda_count;
                    lambdas.push(self.push_region(region(RegionKind::Lambda { index }, nu.clone(), None)));
                }
                self.spec_levels.push(Level {
                    carousel,
                    parent,
                    depth,
                    nu: nu.clone(),
                    nu_outer: nu_outer.clone(),
                    constants,
                    classes: classes.clone(),
                    upsilon,
                    omega,
                    lambdas,
                });
                self.orbit_of.insert(key, l);
                l
            }
        };

        let node = self.nodes.len();
        self.nodes.push(Node {
            level,
            nu: rational_to_f64(&nu),
            center: numeric_terms(&center_terms),
            children: Vec::new(),
        });
        let mut children = Vec::new();
        for (value, ms) in groups {
            let target = if ms.len() == 1 {
                let class = ms[0].class;
                if self.deepest[class] < nu {
                    self.deepest[class] = nu.clone();
                }
                let region = match self.leaf_region.get(&class) {
                    Some(&r) => r,
                    None => {
                        self.lambda_count += 1;
                        let index = self.lambda_count;
                        let approximant = ms[0].terms.iter().filter(|t| t.exponent <= nu).cloned().collect();
                        let r = self.push_region(Region {
                            id: 0,
                            kind: RegionKind::Lambda { index },
                            carousel: Some(carousel),
                            level: Some(level),
                            nu: nu.clone(),
                            nu_outer: None,
                            classes: vec![class],
                            approximant,
                        });
                        self.spec_levels[level].lambdas.push(r);
                        self.leaf_region.insert(class, r);
                        r
                    }
                };
                Target::Leaf(region)
            } else {
                Target::Node(self.build_node(carousel, Some(level), depth + 1, nu.clone(), ms)?)
            };
            children.push(Child {
                coefficient: value.to_complex(),
                target,
            });
        }
        self.nodes[node].children = children;
        Ok(node)
    }
}

/// Builds one carousel per tangent line of the given discriminant branches.
pub fn build_carousel(branches: &[PuiseuxBranch], config: CarouselConfig) -> Result<CarouselSpec, CarouselError> {
    config.validate()?;
    if branches.is_empty() {
        return Err(CarouselError::Empty);
    }
    let one = Rational::one();
    let mut conjugates = Vec::new();
    for (class, b) in branches.iter().enumerate() {
        characteristic_data(b)?;
        if let Some(e) = b.leading_exponent() {
            if *e < one {
                return Err(CarouselError::NotTransversal(e.clone()));
            }
        }
        for c in b.conjugates() {
            conjugates.push(Conj {
                class,
                terms: c.terms,
                precision: c.precision,
            });
        }
    }

    let tangent_groups = cluster(conjugates, |c| c.coefficient(&one));
    let tangents: Vec<Complex64> = tangent_groups.iter().map(|(t, _)| t.to_complex()).collect();
    let mut aperture = config.mu;
    for i in 0..tangents.len() {
        for j in i + 1..tangents.len() {
            aperture = aperture.min(config.gamma * (tangents[i] - tangents[j]).norm());
        }
    }

    let mut builder = Builder {
        config,
        spec_levels: Vec::new(),
        regions: Vec::new(),
        nodes: Vec::new(),
        orbit_of: BTreeMap::new(),
        leaf_region: BTreeMap::new(),
        deepest: vec![one.clone(); branches.len()],
        lambda_count: 0,
    };
    let outer = builder.push_region(Region {
        id: 0,
        kind: RegionKind::OuterA,
        carousel: None,
        level: None,
        nu: one.clone(),
        nu_outer: None,
        classes: Vec::new(),
        approximant: Vec::new(),
    });

    let mut carousels = Vec::new();
    let mut roots = Vec::new();
    for (k, (tangent, members)) in tangent_groups.into_iter().enumerate() {
        let mut classes: Vec<usize> = members.iter().map(|m| m.class).collect();
        classes.sort();
        classes.dedup();
        let tangent_terms: Vec<PuiseuxTerm> = members[0].terms.iter().filter(|t| t.exponent <= one).cloned().collect();
        if members.len() == 1 {
            builder.lambda_count += 1;
            let index = builder.lambda_count;
            let lambda = builder.push_region(Region {
                id: 0,
                kind: RegionKind::Lambda { index },
                carousel: Some(k),
                level: None,
                nu: one.clone(),
                nu_outer: None,
                classes: classes.clone(),
                approximant: tangent_terms,
            });
            carousels.push(Carousel {
                tangent,
                aperture,
                root: None,
                lambda: Some(lambda),
                classes,
            });
            roots.push(None);
        } else {
            let node = builder.build_node(k, None, 1, one.clone(), members)?;
            carousels.push(Carousel {
                tangent,
                aperture,
                root: Some(builder.nodes[node].level),
                lambda: None,
                classes,
            });
            roots.push(Some(node));
        }
    }

    let approximants = branches
        .iter()
        .zip(&builder.deepest)
        .map(|(b, d)| {
            let mut t = b.clone();
            t.terms.retain(|term| &term.exponent <= d);
            t.truncation_order = d.clone();
            t
        })
        .collect();
    Ok(CarouselSpec {
        epsilon: config.epsilon,
        mu: config.mu,
        config,
        carousels,
        levels: builder.spec_levels,
        regions: builder.regions,
        approximants,
        outer,
        nodes: builder.nodes,
        roots,
    })
}

impl CarouselSpec {
    fn check_point(&self, x: Complex64) -> Result<(), CarouselError> {
        if x.norm() == 0.0 {
            return Err(CarouselError::Apex);
        }
        if x.norm() > self.epsilon * (1.0 + 1e-12) {
            return Err(CarouselError::OutsideBall(x.norm()));
        }
        Ok(())
    }

    fn nearest_carousel(&self, x: Complex64, y: Complex64) -> (usize, f64) {
        let mut best = (0, f64::INFINITY);
        for (k, c) in self.carousels.iter().enumerate() {
            let d = (y - c.tangent.to_complex() * x).norm();
            if d < best.1 {
                best = (k, d);
            }
        }
        best
    }

    /// The region containing `(x, y)`. Boundary points go to the Upsilon
    /// band they touch, or to the cone rather than its outside.
    pub fn classify_point(&self, x: Complex64, y: Complex64) -> Result<&Region, CarouselError> {
        self.check_point(x)?;
        let (k, d) = self.nearest_carousel(x, y);
        let carousel = &self.carousels[k];
        if d > carousel.aperture * x.norm() {
            return Ok(&self.regions[self.outer]);
        }
        let Some(mut node) = self.roots[k] else {
            return Ok(&self.regions[carousel.lambda.expect("trivial carousel")]);
        };
        'descend: loop {
            let n = &self.nodes[node];
            let level = &self.levels[n.level];
            let center = eval_terms(&n.center, x);
            let s = x.norm().powf(n.nu);
            let r = (y - center).norm();
            if r > level.constants.beta * s {
                return Ok(&self.regions[level.omega]);
            }
            let xnu = power(x, n.nu);
            for child in &n.children {
                if (y - center - child.coefficient * xnu).norm() < level.constants.gamma * s {
                    match child.target {
                        Target::Leaf(region) => return Ok(&self.regions[region]),
                        Target::Node(next) => {
                            node = next;
                            continue 'descend;
                        }
                    }
                }
            }
            if let Some(alpha) = level.constants.alpha {
                if r < alpha * s {
                    return Ok(&self.regions[level.lambdas[0]]);
                }
            }
            return Ok(&self.regions[level.upsilon]);
        }
    }

    fn node_disk_members(&self, node: usize, x: Complex64, y: Complex64, out: &mut Vec<usize>) {
        let n = &self.nodes[node];
        let level = &self.levels[n.level];
        let center = eval_terms(&n.center, x);
        let s = x.norm().powf(n.nu);
        let r = (y - center).norm();
        let c = &level.constants;
        if r >= c.beta * s {
            out.push(level.omega);
        }
        let xnu = power(x, n.nu);
        let mut outside_disks = true;
        for child in &n.children {
            let dist = (y - center - child.coefficient * xnu).norm();
            if dist <= c.gamma * s {
                match child.target {
                    Target::Leaf(region) => out.push(region),
                    Target::Node(next) => self.node_disk_members(next, x, y, out),
                }
            }
            if dist < c.gamma * s {
                outside_disks = false;
            }
        }
        let alpha = c.alpha.unwrap_or(0.0);
        if outside_disks && r <= c.beta * s && r >= alpha * s {
            out.push(level.upsilon);
        }
        if c.alpha.is_some() && r <= alpha * s {
            out.push(level.lambdas[0]);
        }
    }

    /// Every region whose closed defining inequalities hold at `(x, y)`,
    /// evaluated independently of the tie-breaking in `classify_point`.
    pub fn regions_containing(&self, x: Complex64, y: Complex64) -> Result<Vec<usize>, CarouselError> {
        self.check_point(x)?;
        let mut out = Vec::new();
        let mut outside = true;
        for (k, c) in self.carousels.iter().enumerate() {
            let d = (y - c.tangent.to_complex() * x).norm();
            if d < c.aperture * x.norm() {
                outside = false;
            }
            if d > c.aperture * x.norm() {
                continue;
            }
            match self.roots[k] {
                None => out.push(c.lambda.expect("trivial carousel")),
                Some(node) => self.node_disk_members(node, x, y, &mut out),
            }
        }
        if outside {
            out.push(self.outer);
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Number of Lambda regions.
    pub fn lambda_count(&self) -> usize {
        self.regions
            .iter()
            .filter(|r| matches!(r.kind, RegionKind::Lambda { .. }))
            .count()
    }
}
