//! Squarefree decomposition over `Q[z1, z2, z3]`.
//!
//! The content with respect to the main variable is decomposed recursively;
//! the primitive part is handled by Yun's algorithm.

use num_traits::Zero;
use thiserror::Error;

use super::gcd::{content_in, gcd, main_var};
use super::{MPoly, Rational, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SquarefreeError {
    #[error("the zero polynomial has no squarefree decomposition")]
    Zero,
}

/// `p = unit * prod(f_i ^ m_i)` with every `f_i` monic, squarefree and
/// non-constant. Factors are sorted by decreasing multiplicity, then degree,
/// then text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub unit: Rational,
    pub factors: Vec<(MPoly, u32)>,
}

impl SquarefreeDecomposition {
    pub fn expand(&self) -> MPoly {
        let mut acc = MPoly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }
}

/// Decomposes `p`, running Yun's algorithm in `main_var`. The content with
/// respect to `main_var` is decomposed recursively in the remaining variables.
pub fn squarefree_decompose(p: &MPoly, main_var: Var) -> Result<SquarefreeDecomposition, SquarefreeError> {
    if p.is_zero() {
        return Err(SquarefreeError::Zero);
    }
    let mut factors = Vec::new();
    collect_factors(p, Some(main_var), &mut factors);
    factors.sort_by(|(fa, ma), (fb, mb)| {
        mb.cmp(ma)
            .then_with(|| fa.total_degree().cmp(&fb.total_degree()))
            .then_with(|| fa.to_string().cmp(&fb.to_string()))
    });
    let unit = p.leading_coefficient();
    debug_assert!(!unit.is_zero());
    Ok(SquarefreeDecomposition { unit, factors })
}

/// Product of the distinct monic squarefree factors; `1` for constants.
pub fn squarefree_part(p: &MPoly) -> Result<MPoly, SquarefreeError> {
    let v = main_var(p, &MPoly::zero()).unwrap_or(Var::Z1);
    let d = squarefree_decompose(p, v)?;
    Ok(d.factors
        .iter()
        .fold(MPoly::one(), |acc, (f, _)| &acc * f)
        .with_names(p.names().clone()))
}

fn collect_factors(p: &MPoly, preferred: Option<Var>, out: &mut Vec<(MPoly, u32)>) {
    let v = match preferred.filter(|v| p.involves(*v)) {
        Some(v) => v,
        None => match main_var(p, &MPoly::zero()) {
            Some(v) => v,
            None => return,
        },
    };
    let content = content_in(p, v);
    if !content.is_constant() {
        collect_factors(&content, None, out);
    }
    let f = p.div_exact(&content).expect("content divides");

    let df = f.partial_derivative(v);
    let a0 = gcd(&f, &df);
    let mut b = f.div_exact(&a0).expect("gcd divides");
    let c = df.div_exact(&a0).expect("gcd divides");
    let mut d = &c - &b.partial_derivative(v);
    let mut i = 1;
    while !b.is_constant() {
        let a = gcd(&b, &d);
        if !a.is_constant() {
            out.push((a.monic().with_names(p.names().clone()), i));
        }
        b = b.div_exact(&a).expect("gcd divides");
        let c = d.div_exact(&a).expect("gcd divides");
        d = &c - &b.partial_derivative(v);
        i += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, Exponent};
    use proptest::prelude::*;

    fn p(s: &str) -> MPoly {
        parse_poly(s, &["z1", "z2", "z3"]).unwrap()
    }

    #[test]
    fn worked_example_splits_by_multiplicity() {
        let f = p("(z1^3 - z2^2)^2*(z1^4 - z2^3)");
        let d = squarefree_decompose(&f, Var::Z2).unwrap();
        assert_eq!(d.factors.len(), 2);
        assert_eq!(d.factors[0], (p("z1^3 - z2^2"), 2));
        assert_eq!(d.factors[1], (p("z1^4 - z2^3"), 1));
        assert_eq!(d.expand(), f);
    }

    #[test]
    fn cube_of_linear_form() {
        let f = p("(z2 - z1)^3");
        let d = squarefree_decompose(&f, Var::Z2).unwrap();
        assert_eq!(d.factors, vec![(p("z1 - z2"), 3)]);
        assert_eq!(d.unit, Rational::from_integer((-1).into()));
        assert_eq!(d.expand(), f);
    }

    #[test]
    fn content_factors_are_kept() {
        let f = p("z1^2*(z2 - z1)*(z2 + 1)^2");
        let d = squarefree_decompose(&f, Var::Z2).unwrap();
        assert_eq!(d.expand(), f);
        assert!(d.factors.contains(&(p("z1"), 2)));
        assert_eq!(squarefree_part(&f).unwrap(), p("z1*(z1 - z2)*(z2 + 1)"));
    }

    #[test]
    fn squarefree_input_is_a_single_factor() {
        let f = p("z1^4 - z2^3");
        let d = squarefree_decompose(&f, Var::Z2).unwrap();
        assert_eq!(d.factors, vec![(f, 1)]);
    }

    #[test]
    fn constants_and_zero() {
        let d = squarefree_decompose(&p("-7/2"), Var::Z2).unwrap();
        assert!(d.factors.is_empty());
        assert!(squarefree_part(&p("3")).unwrap().is_one());
        assert_eq!(
            squarefree_decompose(&MPoly::zero(), Var::Z2),
            Err(SquarefreeError::Zero)
        );
    }

    fn factor() -> impl Strategy<Value = MPoly> {
        proptest::collection::vec((-3i64..=3, 0u32..3, 0u32..3), 1..4).prop_map(|terms| {
            MPoly::from_terms(
                terms
                    .into_iter()
                    .map(|(c, i, j)| (Rational::from_integer(c.into()), Exponent([i, j, 0]))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(120))]

        #[test]
        fn decomposition_reconstructs_input(a in factor(), b in factor(), m in 1u32..4) {
            let f = &a.pow(m) * &b;
            prop_assume!(!f.is_zero());
            let d = squarefree_decompose(&f, Var::Z2).unwrap();
            prop_assert_eq!(d.expand(), f.clone());
            for (g, _) in &d.factors {
                prop_assert_eq!(g.leading_coefficient(), Rational::from_integer(1.into()));
                let dg = squarefree_decompose(g, Var::Z2).unwrap();
                prop_assert!(dg.factors.iter().all(|(_, k)| *k == 1));
            }
        }
    }
}
