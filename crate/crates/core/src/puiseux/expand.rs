//! The Newton-Puiseux recursion.
//!
//! A partial expansion is tracked as `(n, e, a, P, H)` with
//! `g(w^n, P(w) + w^e v) = w^a H(w, v)`. An edge of slope `-q/m` of the
//! Newton polygon of `H` and a root `Z` of its edge polynomial give the next
//! term `c w^(e q + m)` with `c^q = Z`, after the ramification `w -> w^q`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::characteristic::characteristic_exponents;
use super::newton::lower_chain;
use super::num::Num;
use super::roots::{qth_root, roots};
use super::{PuiseuxBranch, PuiseuxError, PuiseuxTerm, Valuation};
use crate::poly::{MPoly, Rational, Var};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuiseuxConfig {
    /// Expand until the residual valuation and the known precision exceed
    /// this. `None` means one past the last characteristic exponent.
    pub order: Option<Rational>,
    pub max_ramification: u32,
    pub max_steps: u32,
}

impl Default for PuiseuxConfig {
    fn default() -> Self {
        PuiseuxConfig {
            order: None,
            max_ramification: 64,
            max_steps: 400,
        }
    }
}

impl PuiseuxConfig {
    pub fn with_order(order: Rational) -> Self {
        PuiseuxConfig {
            order: Some(order),
            ..Default::default()
        }
    }
}

type Biv = BTreeMap<(u32, u32), Num>;

const PRUNE: f64 = 1e-10;

#[derive(Clone)]
struct State {
    n: u32,
    e: u64,
    a: u64,
    terms: Vec<(Rational, Num, f64)>,
    h: Biv,
    steps: u32,
}

fn q_of(n: u64, d: u64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn prune(h: &mut Biv) {
    if h.values().all(Num::is_exact) {
        h.retain(|_, v| !v.is_zero());
        return;
    }
    let scale = h.values().map(Num::abs).fold(0.0, f64::max);
    h.retain(|_, v| v.abs() > PRUNE * scale);
}

fn binomial_row(j: u32) -> Vec<u64> {
    let mut row = vec![1u64];
    for _ in 0..j {
        let mut next = vec![1u64; row.len() + 1];
        for k in 1..row.len() {
            next[k] = row[k - 1] + row[k];
        }
        row = next;
    }
    row
}

/// `H(w^q, w^m (c + v)) / w^base`.
fn substitute(h: &Biv, c: &Num, m: u32, q: u32, base: u64) -> Biv {
    let max_j = h.keys().map(|(_, j)| *j).max().unwrap_or(0);
    let mut c_pows = vec![Num::one()];
    for k in 1..=max_j as usize {
        let next = c_pows[k - 1].mul(c);
        c_pows.push(next);
    }
    let mut out: Biv = BTreeMap::new();
    for (&(i, j), a) in h {
        let shift = q as u64 * i as u64 + m as u64 * j as u64;
        debug_assert!(shift >= base, "edge must support every point");
        let wexp = u32::try_from(shift - base).expect("exponent fits");
        let row = binomial_row(j);
        for (l, binom) in row.iter().enumerate() {
            let coef = a.mul(&c_pows[j as usize - l]).scale_int(*binom);
            let slot = out.entry((wexp, l as u32)).or_insert_with(Num::zero);
            *slot = slot.add(&coef);
        }
    }
    prune(&mut out);
    out
}

fn step(state: &State, c: Num, radius: f64, m: u32, q: u32, base: u64) -> State {
    let n = state.n * q;
    let e = state.e * q as u64 + m as u64;
    let mut terms = state.terms.clone();
    terms.push((q_of(e, n as u64), c.clone(), radius));
    State {
        n,
        e,
        a: state.a * q as u64 + base,
        terms,
        h: substitute(&state.h, &c, m, q, base),
        steps: state.steps + 1,
    }
}

fn finish(state: &State, order: Rational, precision: Valuation, residual: Valuation, stable: bool) -> PuiseuxBranch {
    let terms: Vec<PuiseuxTerm> = state
        .terms
        .iter()
        .map(|(exp, c, radius)| PuiseuxTerm {
            exponent: exp.clone(),
            coefficient: c.to_value(*radius),
        })
        .collect();
    let mut branch = PuiseuxBranch {
        terms,
        ramification: 1,
        truncation_order: order,
        precision,
        residual_valuation: residual,
        stable,
    };
    branch.ramification = branch.denominators_lcm();
    debug_assert_eq!(branch.ramification, state.n);
    branch
}

fn auto_order(terms: &[(Rational, Num, f64)]) -> Rational {
    let exps: Vec<Rational> = terms.iter().map(|(e, _, _)| e.clone()).collect();
    let last = characteristic_exponents(&exps)
        .last()
        .cloned()
        .unwrap_or_else(|| Rational::from_integer(1.into()));
    last + Rational::from_integer(1.into())
}

fn develop(mut state: State, cfg: &PuiseuxConfig, out: &mut Vec<PuiseuxBranch>) -> Result<(), PuiseuxError> {
    loop {
        if state.steps > cfg.max_steps {
            return Err(PuiseuxError::StepLimit(cfg.max_steps));
        }
        if state.n > cfg.max_ramification {
            return Err(PuiseuxError::RamificationBound(state.n, cfg.max_ramification));
        }
        let k = state
            .h
            .keys()
            .filter(|(i, _)| *i == 0)
            .map(|(_, j)| *j)
            .min()
            .ok_or_else(|| PuiseuxError::Numeric("lost the v-axis term while expanding".into()))?;
        let j_min = state.h.keys().map(|(_, j)| *j).min().expect("nonempty");
        if j_min >= 2 {
            return Err(PuiseuxError::NotSquarefree);
        }
        let finite = |s: &State, stable| {
            let order = cfg.order.clone().unwrap_or_else(|| auto_order(&s.terms));
            finish(s, order, Valuation::Infinity, Valuation::Infinity, stable)
        };

        if k == 1 {
            // Unramified from here on: one term per step.
            if j_min == 1 {
                out.push(finite(&state, true));
                return Ok(());
            }
            let i_star = state
                .h
                .keys()
                .filter(|(_, j)| *j == 0)
                .map(|(i, _)| *i)
                .min()
                .expect("j_min is 0");
            let order = cfg.order.clone().unwrap_or_else(|| auto_order(&state.terms));
            let n = state.n as u64;
            let residual = q_of(state.a + i_star as u64, n);
            let precision = q_of(state.e + i_star as u64, n);
            if residual > order && precision > order {
                out.push(finish(
                    &state,
                    order,
                    Valuation::Finite(precision),
                    Valuation::Finite(residual),
                    true,
                ));
                return Ok(());
            }
            let a01 = state.h[&(0, 1)].clone();
            let ai0 = state.h[&(i_star, 0)].clone();
            let c = ai0.div(&a01).neg();
            let radius = if c.is_exact() {
                0.0
            } else {
                let prev = state.terms.iter().map(|t| t.2).fold(0.0, f64::max);
                prev.max(1e-13 * (1.0 + c.abs()))
            };
            state = step(&state, c, radius, i_star, 1, i_star as u64);
            continue;
        }

        let points: Vec<(u32, u32)> = state.h.keys().copied().collect();
        let chain = lower_chain(&points);
        if j_min == 1 {
            out.push(finite(&state, true));
        }
        for (s, t) in chain {
            let di = (t.0 - s.0) as u64;
            let dj = (s.1 - t.1) as u64;
            let g = di.gcd(&dj);
            let (m, q) = ((di / g) as u32, (dj / g) as u32);
            let base = q as u64 * s.0 as u64 + m as u64 * s.1 as u64;
            let degree = ((s.1 - t.1) / q) as usize;
            let mut edge = vec![Num::zero(); degree + 1];
            for (&(i, j), a) in &state.h {
                if q as u64 * i as u64 + m as u64 * j as u64 == base && j >= t.1 {
                    edge[((j - t.1) / q) as usize] = a.clone();
                }
            }
            for root in roots(&edge) {
                if root.radius > 1e-8 {
                    return Err(PuiseuxError::Numeric(format!(
                        "edge root radius {:.2e} is too large",
                        root.radius
                    )));
                }
                let (c, radius) = qth_root(&root.value, q, root.radius);
                let prev = state.terms.iter().map(|t| t.2).fold(0.0, f64::max);
                let next = step(&state, c, radius.max(prev), m, q, base);
                let k_next = next.h.keys().filter(|(i, _)| *i == 0).map(|(_, j)| *j).min();
                if k_next != Some(root.multiplicity) {
                    return Err(PuiseuxError::Numeric(format!(
                        "root of multiplicity {} left order {:?} after substitution",
                        root.multiplicity, k_next
                    )));
                }
                develop(next, cfg, out)?;
            }
        }
        return Ok(());
    }
}

/// Expands every branch of `g = 0` through the origin, one representative
/// per conjugacy class.
pub fn puiseux_expand(g: &MPoly, cfg: &PuiseuxConfig) -> Result<Vec<PuiseuxBranch>, PuiseuxError> {
    if g.involves(Var::Z3) {
        return Err(PuiseuxError::NotPlanar);
    }
    if g.is_constant() {
        return Err(PuiseuxError::Constant);
    }
    if !g.constant_term().is_zero() {
        return Err(PuiseuxError::NotAtOrigin);
    }
    if !g.involves(Var::Z2) {
        return Err(PuiseuxError::NoZ2);
    }
    let h: Biv = g
        .terms()
        .map(|(e, c)| ((e.get(Var::Z1), e.get(Var::Z2)), Num::Q(c.clone())))
        .collect();
    if !h.keys().any(|(i, _)| *i == 0) {
        return Err(PuiseuxError::NotRegular);
    }
    let state = State {
        n: 1,
        e: 0,
        a: 0,
        terms: Vec::new(),
        h,
        steps: 0,
    };
    let mut out = Vec::new();
    develop(state, cfg, &mut out)?;
    for b in &mut out {
        b.terms.retain(|t| match &t.coefficient {
            super::ComplexValue::Exact(r) => !r.is_zero(),
            super::ComplexValue::Numeric { re, im, .. } => *re != 0.0 || *im != 0.0,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::puiseux::ComplexValue;

    fn p(s: &str) -> MPoly {
        parse_poly(s, &["z1", "z2", "z3"]).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn exact(b: &PuiseuxBranch) -> Vec<(Rational, Rational)> {
        b.terms
            .iter()
            .map(|t| (t.exponent.clone(), t.coefficient.as_exact().unwrap().clone()))
            .collect()
    }

    #[test]
    fn cusp_four_thirds() {
        let bs = puiseux_expand(&p("z1^4 - z2^3"), &PuiseuxConfig::with_order(r(3, 1))).unwrap();
        assert_eq!(bs.len(), 1);
        assert_eq!(exact(&bs[0]), vec![(r(4, 3), r(1, 1))]);
        assert_eq!(bs[0].ramification, 3);
        assert_eq!(bs[0].residual_valuation, Valuation::Infinity);
    }

    #[test]
    fn graph_of_a_function() {
        let bs = puiseux_expand(&p("z2 - z1^2"), &PuiseuxConfig::default()).unwrap();
        assert_eq!(bs.len(), 1);
        assert_eq!(exact(&bs[0]), vec![(r(2, 1), r(1, 1))]);
        assert_eq!(bs[0].ramification, 1);
    }

    #[test]
    fn two_conjugate_half_integer_terms() {
        // Class of z2 = z1^3 + z1^(5/2): (z2 - z1^3)^2 - z1^5.
        let g = p("(z2 - z1^3)^2 - z1^5");
        let bs = puiseux_expand(&g, &PuiseuxConfig::with_order(r(4, 1))).unwrap();
        assert_eq!(bs.len(), 1);
        let terms = exact(&bs[0]);
        assert_eq!(terms[0].0, r(5, 2));
        assert_eq!(terms[0].1.clone() * terms[0].1.clone(), r(1, 1));
        assert_eq!(terms[1], (r(3, 1), r(1, 1)));
        assert_eq!(bs[0].ramification, 2);
    }

    #[test]
    fn product_of_cusp_and_line() {
        let bs = puiseux_expand(&p("(z2^2 - z1^3)*(z2 - z1)"), &PuiseuxConfig::default()).unwrap();
        let mut leading: Vec<_> = bs.iter().map(|b| b.leading_exponent().unwrap().clone()).collect();
        leading.sort();
        assert_eq!(leading, vec![r(1, 1), r(3, 2)]);
        let total: u32 = bs.iter().map(|b| b.ramification).sum();
        assert_eq!(total, 3);
    }

    #[test]
    fn irrational_tangents_are_numeric() {
        let bs = puiseux_expand(&p("z2^2 - 2*z1^2 - z1^3"), &PuiseuxConfig::with_order(r(3, 1))).unwrap();
        assert_eq!(bs.len(), 2);
        for b in &bs {
            let c = b.terms[0].coefficient.to_complex();
            assert!((c.norm() - 2f64.sqrt()).abs() < 1e-12);
            assert!(matches!(b.terms[0].coefficient, ComplexValue::Numeric { .. }));
            assert!(b.residual_valuation.exceeds(&r(3, 1)));
        }
    }

    #[test]
    fn axis_branch_is_the_empty_series() {
        let bs = puiseux_expand(&p("z2*(z2 - z1^2)"), &PuiseuxConfig::default()).unwrap();
        assert_eq!(bs.len(), 2);
        assert!(bs.iter().any(|b| b.terms.is_empty()));
    }

    #[test]
    fn rejects_bad_input() {
        let cfg = PuiseuxConfig::default();
        assert_eq!(
            puiseux_expand(&p("(z2 - z1)^2"), &cfg),
            Err(PuiseuxError::NotSquarefree)
        );
        assert_eq!(puiseux_expand(&p("z1^2"), &cfg), Err(PuiseuxError::NoZ2));
        assert_eq!(puiseux_expand(&p("z1*z2 - z1^3"), &cfg), Err(PuiseuxError::NotRegular));
        assert_eq!(puiseux_expand(&p("z2 + 1"), &cfg), Err(PuiseuxError::NotAtOrigin));
        let tight = PuiseuxConfig {
            max_ramification: 2,
            ..Default::default()
        };
        assert!(matches!(
            puiseux_expand(&p("z2^3 - z1^4"), &tight),
            Err(PuiseuxError::RamificationBound(3, 2))
        ));
    }
}
