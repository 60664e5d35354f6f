//! Germ-level analysis for surfaces `z3^d = g(z1, z2)`: classification,
//! singular locus, normalization of double covers, discriminant curve,
//! projection multiplicity and transversal slice data.

use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::{resultant, squarefree_decompose, squarefree_part, MPoly, Rational, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GermError {
    #[error("the zero polynomial does not define a surface germ")]
    ZeroPolynomial,
    #[error("f does not vanish at the origin (constant term {0})")]
    NotAtOrigin(Rational),
    #[error("unsupported input: {0}")]
    Capability(String),
    #[error("the discriminant resultant vanishes identically; the input is not reduced")]
    ResultantVanishes,
    #[error("the discriminant resultant is constant; there is no discriminant curve")]
    NoDiscriminantCurve,
    #[error("coordinates are not generic for the projection to {axis}: leading coefficient {leading} in {fiber} is not constant")]
    NonGeneric {
        axis: String,
        fiber: String,
        leading: String,
    },
    #[error("expected a polynomial in z1, z2 only")]
    NotPlanar,
    #[error("transversal data needs d >= 2 and m >= 2 (got d = {d}, m = {m})")]
    InvalidTransversal { d: u32, m: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GermForm {
    /// `f = z3^d - g(z1, z2)` with `d >= 2`.
    VerticalClass {
        d: u32,
        g: MPoly,
    },
    General,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermInput {
    pub f: MPoly,
    pub form: GermForm,
}

impl GermInput {
    fn vertical(&self) -> Result<(u32, &MPoly), GermError> {
        match &self.form {
            GermForm::VerticalClass { d, g } => Ok((*d, g)),
            GermForm::General => Err(GermError::Capability(
                "input is not of the form z3^d - g(z1, z2) with d >= 2".into(),
            )),
        }
    }
}

pub fn classify_input(f: &MPoly) -> Result<GermInput, GermError> {
    if f.is_zero() {
        return Err(GermError::ZeroPolynomial);
    }
    let c = f.constant_term();
    if !c.is_zero() {
        return Err(GermError::NotAtOrigin(c));
    }
    let z3_terms: Vec<_> = f.terms().filter(|(e, _)| e.get(Var::Z3) > 0).collect();
    let form = match z3_terms.as_slice() {
        [(e, coeff)] if e.0[0] == 0 && e.0[1] == 0 && e.0[2] >= 2 && coeff.is_one() => {
            let d = e.0[2];
            let g = &MPoly::var(Var::Z3).pow(d) - f;
            GermForm::VerticalClass {
                d,
                g: g.with_names(f.names().clone()),
            }
        }
        _ => GermForm::General,
    };
    Ok(GermInput { f: f.clone(), form })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveBranch {
    pub poly: MPoly,
    pub multiplicity: u32,
}

impl CurveBranch {
    /// The pair of equations `z3 = 0`, `branch = 0` cutting the branch out of C^3.
    pub fn embedded_equations(&self) -> (MPoly, MPoly) {
        (
            MPoly::var(Var::Z3).with_names(self.poly.names().clone()),
            self.poly.clone(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsolatedCandidates {
    NotComputed,
    /// Grid points `(z1, z2)` where the odd-multiplicity part of `g` and its
    /// gradient vanish. Sampled, not certified.
    Points(Vec<(Rational, Rational)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularLocusReport {
    pub d: u32,
    pub curve_branches: Vec<CurveBranch>,
    pub isolated_candidates: IsolatedCandidates,
    /// Explains which factors of `g` count as singular for this `d`.
    pub rule: String,
}

/// Singular curve of `z3^d = g`: the factors of `g` through the origin with
/// multiplicity at least 2, or every factor when `d >= 3`.
pub fn singular_locus(germ: &GermInput) -> Result<SingularLocusReport, GermError> {
    let (d, g) = germ.vertical()?;
    let decomposition = squarefree_decompose(g, Var::Z2).map_err(|_| GermError::ZeroPolynomial)?;
    let min_mult = if d == 2 { 2 } else { 1 };
    let curve_branches = decomposition
        .factors
        .iter()
        .filter(|(poly, m)| *m >= min_mult && poly.constant_term().is_zero())
        .map(|(poly, m)| CurveBranch {
            poly: poly.clone(),
            multiplicity: *m,
        })
        .collect();
    let (isolated_candidates, rule) = if d == 2 {
        let s = odd_part(g);
        (
            IsolatedCandidates::Points(grid_critical_points(&s)),
            "d = 2: factors of g with multiplicity >= 2".to_string(),
        )
    } else {
        (
            IsolatedCandidates::NotComputed,
            format!("d = {d} >= 3: every factor of g through the origin is singular"),
        )
    };
    Ok(SingularLocusReport {
        d,
        curve_branches,
        isolated_candidates,
        rule,
    })
}

fn odd_part(g: &MPoly) -> MPoly {
    let decomposition = squarefree_decompose(g, Var::Z2).expect("g is nonzero");
    decomposition
        .factors
        .iter()
        .filter(|(_, m)| m % 2 == 1)
        .fold(MPoly::constant(decomposition.unit.clone()), |acc, (f, _)| &acc * f)
}

fn grid_critical_points(s: &MPoly) -> Vec<(Rational, Rational)> {
    if s.is_constant() {
        return Vec::new();
    }
    let d1 = s.partial_derivative(Var::Z1);
    let d2 = s.partial_derivative(Var::Z2);
    let mut out = Vec::new();
    for i in -4i64..=4 {
        for j in -4i64..=4 {
            let x = Rational::new(i.into(), 4.into());
            let y = Rational::new(j.into(), 4.into());
            let pt = [x.clone(), y.clone(), Rational::zero()];
            if s.eval(&pt).is_zero() && d1.eval(&pt).is_zero() && d2.eval(&pt).is_zero() {
                out.push((x, y));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedGerm {
    pub f_bar: MPoly,
    /// `z3 = q * w` with `w` renamed back to `z3` in `f_bar`.
    pub q: MPoly,
    pub s: MPoly,
    /// True when `s` is a nonzero constant: the normalization is smooth.
    pub smooth: bool,
}

impl NormalizedGerm {
    pub fn substitution(&self) -> String {
        format!("z3 -> ({})*w", self.q)
    }
}

/// Normalizes `z3^2 = s*q^2` to `z3^2 = s` with `s` squarefree.
pub fn normalize_double_cover(germ: &GermInput) -> Result<NormalizedGerm, GermError> {
    let (d, g) = germ.vertical()?;
    if d != 2 {
        return Err(GermError::Capability(format!(
            "normalization is only implemented for d = 2 (got d = {d})"
        )));
    }
    let decomposition = squarefree_decompose(g, Var::Z2).map_err(|_| GermError::ZeroPolynomial)?;
    let mut q = MPoly::one();
    let mut s = MPoly::constant(decomposition.unit.clone());
    for (factor, m) in &decomposition.factors {
        q = &q * &factor.pow(m / 2);
        if m % 2 == 1 {
            s = &s * factor;
        }
    }
    let names = germ.f.names().clone();
    let f_bar = (&MPoly::var(Var::Z3).pow(2) - &s).with_names(names.clone());
    Ok(NormalizedGerm {
        f_bar,
        q: q.with_names(names.clone()),
        smooth: s.is_constant(),
        s: s.with_names(names),
    })
}

/// Squarefree part of `Res_z3(f, df/dz3)`, made primitive with positive
/// leading coefficient.
pub fn discriminant_curve(f_bar: &MPoly) -> Result<MPoly, GermError> {
    let germ = classify_input(f_bar)?;
    let is_linear_sheet = f_bar.degree_in(Var::Z3) == Some(1);
    if germ.form == GermForm::General && !is_linear_sheet {
        return Err(GermError::Capability(
            "discriminant needs the form z3^d - g(z1, z2)".into(),
        ));
    }
    let df = f_bar.partial_derivative(Var::Z3);
    let res = resultant(f_bar, &df, Var::Z3).map_err(|_| GermError::ResultantVanishes)?;
    if res.is_zero() {
        return Err(GermError::ResultantVanishes);
    }
    if res.is_constant() {
        return Err(GermError::NoDiscriminantCurve);
    }
    let part = squarefree_part(&res).map_err(|_| GermError::ResultantVanishes)?;
    Ok(part.primitive_integer().with_names(f_bar.names().clone()))
}

/// Number of points of `branch = 0` over a generic point of `axis`.
pub fn axis_multiplicity(branch: &MPoly, axis: Var) -> Result<u32, GermError> {
    let fiber = match axis {
        Var::Z1 => Var::Z2,
        Var::Z2 => Var::Z1,
        Var::Z3 => return Err(GermError::NotPlanar),
    };
    if branch.involves(Var::Z3) || branch.is_constant() {
        return Err(GermError::NotPlanar);
    }
    let lead = branch.leading_coefficient_in(fiber);
    if !lead.is_constant() {
        return Err(GermError::NonGeneric {
            axis: branch.names().name(axis).to_string(),
            fiber: branch.names().name(fiber).to_string(),
            leading: lead.to_string(),
        });
    }
    Ok(branch.degree_in(fiber).unwrap_or(0))
}

/// Slice model `z3^d - w^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TransversalData {
    pub d: u32,
    pub m: u32,
    pub milnor_number: u32,
    pub link_components: u32,
}

pub fn transversal_data(d: u32, m: u32) -> Result<TransversalData, GermError> {
    if d < 2 || m < 2 {
        return Err(GermError::InvalidTransversal { d, m });
    }
    Ok(TransversalData {
        d,
        m,
        milnor_number: (d - 1) * (m - 1),
        link_components: d.gcd(&m),
    })
}

/// Weierstrass order of `g(0, z2)`: the number of branches over `z1 = 0`
/// counted with ramification, or `None` if `g` vanishes on the `z2` axis.
pub fn weierstrass_order(g: &MPoly) -> Option<u32> {
    g.terms()
        .filter(|(e, _)| e.get(Var::Z1) == 0 && e.get(Var::Z3) == 0)
        .map(|(e, _)| e.get(Var::Z2))
        .min()
}
