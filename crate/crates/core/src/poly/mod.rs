//! Exact sparse polynomials over the rationals in (at most) three variables.
//!
//! Terms are stored in a `BTreeMap` keyed by [`Exponent`], whose ordering is
//! graded lexicographic with `z1 > z2 > z3`. Zero coefficients are never
//! stored, so structural equality is mathematical equality.

mod gcd;
mod parse;
mod rational;
mod resultant;
mod squarefree;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use gcd::{bivariate_gcd, content_in, gcd, primitive_part_in};
pub use parse::{parse_poly, parse_poly_with_limits, ParseError, ParseErrorKind, ParseLimits};
pub use rational::{parse_rational, Rational, RationalParseError};
pub use resultant::{resultant, ResultantError};
pub use squarefree::{squarefree_decompose, squarefree_part, SquarefreeDecomposition, SquarefreeError};

/// One of the three coordinate variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Z1,
    Z2,
    Z3,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::Z1, Var::Z2, Var::Z3];

    /// Zero-based slot in an exponent triple.
    pub fn slot(self) -> usize {
        match self {
            Var::Z1 => 0,
            Var::Z2 => 1,
            Var::Z3 => 2,
        }
    }

    /// Variables are numbered 1, 2, 3 externally.
    pub fn from_index(index: usize) -> Option<Var> {
        match index {
            1 => Some(Var::Z1),
            2 => Some(Var::Z2),
            3 => Some(Var::Z3),
            _ => None,
        }
    }

    fn from_slot(slot: usize) -> Var {
        Var::ALL[slot]
    }
}

/// Exponent triple of a monomial. Ordered graded-lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Exponent(pub [u32; 3]);

impl Exponent {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn get(&self, var: Var) -> u32 {
        self.0[var.slot()]
    }

    fn divides(&self, other: &Exponent) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Names used when rendering the three variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarNames(pub [String; 3]);

impl Default for VarNames {
    fn default() -> Self {
        VarNames(["z1".to_string(), "z2".to_string(), "z3".to_string()])
    }
}

impl VarNames {
    pub fn name(&self, var: Var) -> &str {
        &self.0[var.slot()]
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Equality and hashing look at the terms only; display names are cosmetic.
#[derive(Clone)]
pub struct MPoly {
    terms: BTreeMap<Exponent, Rational>,
    names: VarNames,
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for MPoly {}

impl std::hash::Hash for MPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Default for MPoly {
    fn default() -> Self {
        MPoly::zero()
    }
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly {
            terms: BTreeMap::new(),
            names: VarNames::default(),
        }
    }

    pub fn one() -> MPoly {
        MPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> MPoly {
        let mut p = MPoly::zero();
        if !c.is_zero() {
            p.terms.insert(Exponent::default(), c);
        }
        p
    }

    pub fn from_int(c: i64) -> MPoly {
        MPoly::constant(Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(var: Var) -> MPoly {
        let mut e = [0; 3];
        e[var.slot()] = 1;
        MPoly::monomial(Rational::one(), Exponent(e))
    }

    pub fn monomial(c: Rational, e: Exponent) -> MPoly {
        let mut p = MPoly::zero();
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    /// Builds a polynomial from `(coefficient, exponent)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (Rational, Exponent)>>(terms: I) -> MPoly {
        let mut p = MPoly::zero();
        for (c, e) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn with_names(mut self, names: VarNames) -> MPoly {
        self.names = names;
        self
    }

    pub fn names(&self) -> &VarNames {
        &self.names
    }

    fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        let remove = match self.terms.get_mut(&e) {
            Some(existing) => {
                *existing += c;
                existing.is_zero()
            }
            None => {
                self.terms.insert(e, c);
                false
            }
        };
        if remove {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for the zero polynomial and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.total_degree() == 0)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &Exponent) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Exponent::default())
    }

    /// Leading term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponent::total_degree).max()
    }

    /// Degree in one variable; `None` for the zero polynomial.
    pub fn degree_in(&self, var: Var) -> Option<u32> {
        self.terms.keys().map(|e| e.get(var)).max()
    }

    pub fn involves(&self, var: Var) -> bool {
        self.terms.keys().any(|e| e.get(var) > 0)
    }

    /// Variables that occur with positive exponent, in index order.
    pub fn variables(&self) -> Vec<Var> {
        Var::ALL.into_iter().filter(|v| self.involves(*v)).collect()
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero().with_names(self.names.clone());
        }
        MPoly {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
            names: self.names.clone(),
        }
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut result = MPoly::one().with_names(self.names.clone());
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative.
    pub fn partial_derivative(&self, var: Var) -> MPoly {
        let slot = var.slot();
        let mut out = MPoly::zero().with_names(self.names.clone());
        for (e, c) in &self.terms {
            let k = e.0[slot];
            if k == 0 {
                continue;
            }
            let mut ne = *e;
            ne.0[slot] -= 1;
            out.add_term(ne, c * Rational::from_integer(BigInt::from(k)));
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rational; 3]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (slot, k) in e.0.iter().enumerate() {
                if *k > 0 {
                    t *= num_traits::pow(point[slot].clone(), *k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Replaces `var` by the polynomial `value`.
    pub fn substitute(&self, var: Var, value: &MPoly) -> MPoly {
        let slot = var.slot();
        let max = self.degree_in(var).unwrap_or(0);
        let mut powers = vec![MPoly::one()];
        for k in 1..=max as usize {
            let next = &powers[k - 1] * value;
            powers.push(next);
        }
        let mut out = MPoly::zero().with_names(self.names.clone());
        for (e, c) in &self.terms {
            let k = e.0[slot] as usize;
            let mut rest = *e;
            rest.0[slot] = 0;
            let term = MPoly::monomial(c.clone(), rest);
            out = &out + &(&term * &powers[k]);
        }
        out
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `var`;
    /// entry `k` is the coefficient of `var^k`.
    pub fn to_univariate(&self, var: Var) -> Vec<MPoly> {
        let slot = var.slot();
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut coeffs = vec![MPoly::zero().with_names(self.names.clone()); deg + 1];
        if self.is_zero() {
            return Vec::new();
        }
        for (e, c) in &self.terms {
            let k = e.0[slot] as usize;
            let mut rest = *e;
            rest.0[slot] = 0;
            coeffs[k].add_term(rest, c.clone());
        }
        coeffs
    }

    pub fn from_univariate(coeffs: &[MPoly], var: Var) -> MPoly {
        let slot = var.slot();
        let mut out = MPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            for (e, a) in &c.terms {
                let mut ne = *e;
                ne.0[slot] += k as u32;
                out.add_term(ne, a.clone());
            }
        }
        if let Some(first) = coeffs.first() {
            out.names = first.names.clone();
        }
        out
    }

    /// Leading coefficient with respect to `var` (a polynomial in the other variables).
    pub fn leading_coefficient_in(&self, var: Var) -> MPoly {
        self.to_univariate(var).pop().unwrap_or_else(MPoly::zero)
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &MPoly) -> Option<MPoly> {
        if divisor.is_zero() {
            return None;
        }
        let (lead_e, lead_c) = divisor.leading_term().map(|(e, c)| (*e, c.clone()))?;
        let mut rem = self.clone();
        let mut quot = MPoly::zero().with_names(self.names.clone());
        while let Some((re, rc)) = rem.leading_term().map(|(e, c)| (*e, c.clone())) {
            if !lead_e.divides(&re) {
                return None;
            }
            let mut qe = re;
            for s in 0..3 {
                qe.0[s] -= lead_e.0[s];
            }
            let qc = rc / &lead_c;
            let t = MPoly::monomial(qc.clone(), qe);
            quot.add_term(qe, qc);
            rem = &rem - &(&t * divisor);
        }
        Some(quot)
    }

    pub fn divides(&self, other: &MPoly) -> bool {
        other.div_exact(self).is_some()
    }

    /// Scales so that the graded-lex leading coefficient is 1.
    pub fn monic(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading_coefficient();
        self.scale(&lc.recip())
    }

    /// Scales to coprime integer coefficients with positive leading coefficient.
    pub fn primitive_integer(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        let mut factor = Rational::new(den_lcm, num_gcd);
        if self.leading_coefficient().is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || e.total_degree() == 0 {
                factors.push(abs.to_string());
            }
            for slot in 0..3 {
                let k = e.0[slot];
                let name = self.names.name(Var::from_slot(slot));
                match k {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{k}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &'a MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &'a MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &'a MPoly) -> MPoly {
        let mut out = MPoly::zero().with_names(self.names.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = Exponent([ea.0[0] + eb.0[0], ea.0[1] + eb.0[1], ea.0[2] + eb.0[2]]);
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
            names: self.names.clone(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &'a MPoly) -> MPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MPoly {
        parse_poly(s, &["z1", "z2", "z3"]).unwrap()
    }

    #[test]
    fn grlex_order_puts_higher_degree_last() {
        let a = Exponent([0, 0, 2]);
        let b = Exponent([1, 0, 0]);
        let c = Exponent([0, 1, 1]);
        assert!(b < a);
        assert!(c > a);
        assert!(Exponent([1, 1, 0]) > Exponent([0, 2, 0]));
    }

    #[test]
    fn derivative_examples() {
        let f = p("z3^2 - (z1^4 - z2^3)");
        assert_eq!(f.partial_derivative(Var::Z3), p("2*z3"));
        assert!(p("7").partial_derivative(Var::Z1).is_zero());
        assert_eq!(p("z1^4 - z2^3").partial_derivative(Var::Z2), p("-3*z2^2"));
    }

    #[test]
    fn exact_division() {
        let a = p("z1^3 - z2^2");
        let b = p("z2 - 1");
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!(prod.div_exact(&p("z1 + 1")).is_none());
        assert!(p("z1").div_exact(&MPoly::zero()).is_none());
    }

    #[test]
    fn substitution_and_univariate_view() {
        let f = p("z3^2 - z1*z2");
        let g = f.substitute(Var::Z3, &p("z1 + z2"));
        assert_eq!(g, p("z1^2 + z1*z2 + z2^2"));
        let coeffs = f.to_univariate(Var::Z3);
        assert_eq!(coeffs.len(), 3);
        assert_eq!(MPoly::from_univariate(&coeffs, Var::Z3), f);
    }

    #[test]
    fn primitive_integer_normalization() {
        let f = p("-1/2*z1^4 + 1/2*z2^3");
        assert_eq!(f.primitive_integer(), p("z1^4 - z2^3"));
        assert_eq!(p("6*z1 + 4*z2").primitive_integer(), p("3*z1 + 2*z2"));
    }

    #[test]
    fn rendering_is_grlex_descending() {
        assert_eq!(p("(z1+z2)^2").to_string(), "z1^2 + 2*z1*z2 + z2^2");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("-3/4*z1 + 2").to_string(), "-3/4*z1 + 2");
    }
}
