//! Characteristic exponents, Puiseux pairs and contact orders.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::{PuiseuxBranch, PuiseuxError, Valuation};
use crate::poly::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuiseuxCharacteristic {
    /// `r_1 < r_2 < ...`, the exponents at which the running denominator grows.
    pub exponents: Vec<Rational>,
    /// `(m_j, n_j)` with `r_j = m_j / (n_1 ... n_j)`.
    pub pairs: Vec<(u64, u64)>,
    /// Leading exponent of the series; `NegInfinity` for the zero series.
    pub valuation: Valuation,
}

impl PuiseuxCharacteristic {
    pub fn last_exponent(&self) -> Option<&Rational> {
        self.exponents.last()
    }

    /// Product of the `n_j`.
    pub fn ramification(&self) -> u64 {
        self.pairs.iter().map(|(_, n)| *n).product()
    }
}

/// Exponents (in increasing order) that are not multiples of `1/D`, where
/// `D` is the lcm of the denominators seen so far. Integral exponents never
/// qualify.
pub(crate) fn characteristic_exponents(exps: &[Rational]) -> Vec<Rational> {
    let mut d = BigInt::one();
    let mut out = Vec::new();
    for e in exps {
        let scaled = e * Rational::from_integer(d.clone());
        if !scaled.is_integer() {
            d = d.lcm(e.denom());
            out.push(e.clone());
        }
    }
    out
}

pub fn characteristic_data(branch: &PuiseuxBranch) -> Result<PuiseuxCharacteristic, PuiseuxError> {
    if !branch.stable {
        return Err(PuiseuxError::NotStable);
    }
    let exps: Vec<Rational> = branch.terms.iter().map(|t| t.exponent.clone()).collect();
    let exponents = characteristic_exponents(&exps);
    let mut pairs = Vec::new();
    let mut d = BigInt::one();
    for r in &exponents {
        if *r <= Rational::one() {
            return Err(PuiseuxError::NotTransversal(r.clone()));
        }
        let next = d.lcm(r.denom());
        let n = (&next / &d).to_u64().expect("small ramification");
        let m = (r * Rational::from_integer(next.clone()))
            .to_integer()
            .to_u64()
            .expect("small numerator");
        pairs.push((m, n));
        d = next;
    }
    let valuation = match exps.first() {
        Some(e) => Valuation::Finite(e.clone()),
        None => Valuation::NegInfinity,
    };
    Ok(PuiseuxCharacteristic {
        exponents,
        pairs,
        valuation,
    })
}

/// Exponent of the first term where the two series differ: their contact
/// order. `Infinity` when they agree to the full known precision of both.
pub fn branch_distance_exponent(b1: &PuiseuxBranch, b2: &PuiseuxBranch) -> Result<Valuation, PuiseuxError> {
    let known = std::cmp::min(&b1.precision, &b2.precision).clone();
    let mut exps: Vec<&Rational> = b1.terms.iter().chain(b2.terms.iter()).map(|t| &t.exponent).collect();
    exps.sort();
    exps.dedup();
    for e in exps {
        if let Valuation::Finite(limit) = &known {
            if e >= limit {
                break;
            }
        }
        let c1 = b1.terms.iter().find(|t| &t.exponent == e);
        let c2 = b2.terms.iter().find(|t| &t.exponent == e);
        let differ = match (c1, c2) {
            (Some(a), Some(b)) => a.coefficient.differs_from(&b.coefficient),
            _ => true,
        };
        if differ {
            return Ok(Valuation::Finite(e.clone()));
        }
    }
    if b1.precision == b2.precision {
        Ok(Valuation::Infinity)
    } else {
        Err(PuiseuxError::TruncationTooShort)
    }
}
