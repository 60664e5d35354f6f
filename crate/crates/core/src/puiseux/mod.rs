//! Newton-Puiseux expansion of plane curves `g(z1, z2) = 0` at the origin.
//!
//! Each branch is returned as one representative of its conjugacy class,
//! `z2 = sum c_k z1^(e_k)`, with exact rational exponents. Coefficients are
//! exact rationals until an irrational root shows up, then complex floats.

mod characteristic;
mod expand;
mod newton;
mod num;
mod roots;

use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::Rational;

pub use characteristic::{branch_distance_exponent, characteristic_data, PuiseuxCharacteristic};
pub use expand::{puiseux_expand, PuiseuxConfig};
pub use newton::{newton_polygon, NewtonEdge, NewtonPolygon};
pub use num::{rational_to_f64, ComplexValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PuiseuxError {
    #[error("expected a polynomial in z1, z2 only")]
    NotPlanar,
    #[error("the polynomial is constant")]
    Constant,
    #[error("the curve does not pass through the origin")]
    NotAtOrigin,
    #[error("the polynomial does not involve z2")]
    NoZ2,
    #[error("g(0, z2) vanishes identically: the curve contains the z2 axis, coordinates are not z2-regular")]
    NotRegular,
    #[error("the curve has a repeated branch; expected a squarefree polynomial")]
    NotSquarefree,
    #[error("ramification {0} exceeds the configured bound {1}")]
    RamificationBound(u32, u32),
    #[error("expansion did not reach the requested order within {0} steps")]
    StepLimit(u32),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("the branch is not expanded past its last characteristic exponent")]
    NotStable,
    #[error("characteristic exponent {0} is not greater than 1; the curve is not transversal to z1 = 0")]
    NotTransversal(Rational),
    #[error("the two truncations agree as far as both are known; expand further to separate them")]
    TruncationTooShort,
}

/// Extended rational with both infinities; `NegInfinity` is the valuation of
/// the empty series.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    NegInfinity,
    Finite(Rational),
    Infinity,
}

impl Valuation {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Valuation::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn exceeds(&self, r: &Rational) -> bool {
        match self {
            Valuation::NegInfinity => false,
            Valuation::Finite(v) => v > r,
            Valuation::Infinity => true,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::NegInfinity => write!(f, "-inf"),
            Valuation::Finite(r) => write!(f, "{r}"),
            Valuation::Infinity => write!(f, "+inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PuiseuxTerm {
    pub exponent: Rational,
    pub coefficient: ComplexValue,
}

/// One conjugacy class of roots `z2(z1)`, given by a representative.
#[derive(Debug, Clone, PartialEq)]
pub struct PuiseuxBranch {
    /// Nonzero terms with strictly increasing exponents.
    pub terms: Vec<PuiseuxTerm>,
    /// Lcm of the exponent denominators; also the size of the conjugacy class.
    pub ramification: u32,
    /// The requested order; all terms with exponent <= this are present.
    pub truncation_order: Rational,
    /// Every term with exponent below this is known (`Infinity` for a finite series).
    pub precision: Valuation,
    /// Valuation in `z1` of `g(z1, truncated series)`.
    pub residual_valuation: Valuation,
    /// True once no further characteristic exponents can appear.
    pub stable: bool,
}

impl PuiseuxBranch {
    pub fn leading_exponent(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.exponent)
    }

    pub fn is_exact(&self) -> bool {
        self.terms.iter().all(|t| t.coefficient.is_exact())
    }

    /// The series with every coefficient `c_k` replaced by
    /// `c_k * exp(2*pi*i*k*e_k)`, i.e. the image under `z1^(1/n) -> zeta^k z1^(1/n)`.
    pub fn conjugate(&self, k: u32) -> PuiseuxBranch {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let turn = (&t.exponent * Rational::from_integer(k.into())).fract();
                let coefficient = if turn.is_zero() {
                    t.coefficient.clone()
                } else if turn == Rational::new(1.into(), 2.into()) {
                    match &t.coefficient {
                        ComplexValue::Exact(r) => ComplexValue::Exact(-r.clone()),
                        ComplexValue::Numeric { re, im, radius } => ComplexValue::Numeric {
                            re: -re,
                            im: -im,
                            radius: *radius,
                        },
                    }
                } else {
                    let phase = 2.0 * std::f64::consts::PI * rational_to_f64(&turn);
                    let z = t.coefficient.to_complex() * Complex64::from_polar(1.0, phase);
                    ComplexValue::Numeric {
                        re: z.re,
                        im: z.im,
                        radius: t.coefficient.radius() + 4.0 * f64::EPSILON * (1.0 + z.norm()),
                    }
                };
                PuiseuxTerm {
                    exponent: t.exponent.clone(),
                    coefficient,
                }
            })
            .collect();
        PuiseuxBranch { terms, ..self.clone() }
    }

    /// All members of the conjugacy class.
    pub fn conjugates(&self) -> Vec<PuiseuxBranch> {
        (0..self.ramification).map(|k| self.conjugate(k)).collect()
    }

    /// Sum of the terms with exponent strictly below `bound`.
    pub fn truncated_below(&self, bound: &Rational) -> PuiseuxBranch {
        PuiseuxBranch {
            terms: self.terms.iter().filter(|t| &t.exponent < bound).cloned().collect(),
            ..self.clone()
        }
    }

    /// Evaluates the truncated series at `x`, using the principal branch of
    /// `x^e`.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        let (r, theta) = x.to_polar();
        self.terms
            .iter()
            .map(|t| {
                let e = rational_to_f64(&t.exponent);
                t.coefficient.to_complex() * Complex64::from_polar(r.powf(e), theta * e)
            })
            .sum()
    }

    pub(crate) fn denominators_lcm(&self) -> u32 {
        self.terms.iter().fold(1u64, |acc, t| {
            let d = t.exponent.denom().iter_u64_digits().next().unwrap_or(1);
            acc.lcm(&d)
        }) as u32
    }
}

impl fmt::Display for PuiseuxBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "z2 = 0");
        }
        write!(f, "z2 = ")?;
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let c = &t.coefficient;
            let coef = match c {
                ComplexValue::Exact(r) if r.is_one() => String::new(),
                _ => format!("({c})*"),
            };
            if t.exponent.is_one() {
                write!(f, "{coef}z1")?;
            } else if t.exponent.is_integer() {
                write!(f, "{coef}z1^{}", t.exponent)?;
            } else {
                write!(f, "{coef}z1^({})", t.exponent)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn branch(terms: &[(i64, i64, i64)]) -> PuiseuxBranch {
        let terms: Vec<PuiseuxTerm> = terms
            .iter()
            .map(|&(n, d, c)| PuiseuxTerm {
                exponent: r(n, d),
                coefficient: ComplexValue::Exact(r(c, 1)),
            })
            .collect();
        let mut b = PuiseuxBranch {
            terms,
            ramification: 1,
            truncation_order: r(3, 1),
            precision: Valuation::Infinity,
            residual_valuation: Valuation::Infinity,
            stable: true,
        };
        b.ramification = b.denominators_lcm();
        b
    }

    #[test]
    fn conjugates_of_a_square_root_flip_sign() {
        let b = branch(&[(1, 1, 1), (3, 2, 1)]);
        assert_eq!(b.ramification, 2);
        let c = b.conjugate(1);
        assert_eq!(c.terms[0].coefficient, ComplexValue::Exact(r(1, 1)));
        assert_eq!(c.terms[1].coefficient, ComplexValue::Exact(r(-1, 1)));
    }

    #[test]
    fn cube_root_conjugates_are_numeric() {
        let b = branch(&[(4, 3, 1)]);
        let cs = b.conjugates();
        assert_eq!(cs.len(), 3);
        let z = cs[1].terms[0].coefficient.to_complex();
        assert!((z - Complex64::from_polar(1.0, 8.0 * std::f64::consts::PI / 3.0)).norm() < 1e-12);
    }

    #[test]
    fn valuation_order() {
        assert!(Valuation::NegInfinity < Valuation::Finite(r(-5, 1)));
        assert!(Valuation::Finite(r(100, 1)) < Valuation::Infinity);
        assert!(Valuation::Infinity.exceeds(&r(7, 1)));
    }

    #[test]
    fn evaluation_uses_principal_powers() {
        let b = branch(&[(3, 2, 1)]);
        let v = b.eval(Complex64::new(0.25, 0.0));
        assert!((v.re - 0.125).abs() < 1e-15);
    }
}
