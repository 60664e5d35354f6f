//! Coefficients that stay exact while they can and degrade to complex floats.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::poly::Rational;

/// Coefficient of a Puiseux term.
#[derive(Debug, Clone, PartialEq)]
pub enum ComplexValue {
    Exact(Rational),
    /// Floating-point value with an a-posteriori error radius.
    Numeric {
        re: f64,
        im: f64,
        radius: f64,
    },
}

impl ComplexValue {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            ComplexValue::Exact(r) => Complex64::new(rational_to_f64(r), 0.0),
            ComplexValue::Numeric { re, im, .. } => Complex64::new(*re, *im),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ComplexValue::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            ComplexValue::Exact(r) => Some(r),
            ComplexValue::Numeric { .. } => None,
        }
    }

    pub fn radius(&self) -> f64 {
        match self {
            ComplexValue::Exact(_) => 0.0,
            ComplexValue::Numeric { radius, .. } => *radius,
        }
    }

    pub fn modulus(&self) -> f64 {
        self.to_complex().norm()
    }

    /// True when the two values are provably different given their radii.
    pub fn differs_from(&self, other: &ComplexValue) -> bool {
        match (self, other) {
            (ComplexValue::Exact(a), ComplexValue::Exact(b)) => a != b,
            _ => {
                let gap = (self.to_complex() - other.to_complex()).norm();
                gap > self.radius() + other.radius() + 1e-9 * (1.0 + self.modulus())
            }
        }
    }
}

impl fmt::Display for ComplexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexValue::Exact(r) => write!(f, "{r}"),
            ComplexValue::Numeric { re, im, .. } => {
                if *im >= 0.0 {
                    write!(f, "{re:.12}+{im:.12}i")
                } else {
                    write!(f, "{re:.12}-{:.12}i", -im)
                }
            }
        }
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Ratio::to_f64 only fails on overflow; fall back on the sign.
        if r.numer().sign() == num_bigint::Sign::Minus {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Internal arithmetic value used while expanding.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Num {
    Q(Rational),
    C(Complex64),
}

impl Num {
    pub fn zero() -> Num {
        Num::Q(Rational::zero())
    }

    pub fn one() -> Num {
        Num::Q(Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Num::Q(r) => r.is_zero(),
            Num::C(c) => *c == Complex64::new(0.0, 0.0),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Num::Q(_))
    }

    pub fn to_c(&self) -> Complex64 {
        match self {
            Num::Q(r) => Complex64::new(rational_to_f64(r), 0.0),
            Num::C(c) => *c,
        }
    }

    pub fn abs(&self) -> f64 {
        self.to_c().norm()
    }

    pub fn add(&self, o: &Num) -> Num {
        match (self, o) {
            (Num::Q(a), Num::Q(b)) => Num::Q(a + b),
            _ => Num::C(self.to_c() + o.to_c()),
        }
    }

    pub fn mul(&self, o: &Num) -> Num {
        match (self, o) {
            (Num::Q(a), Num::Q(b)) => Num::Q(a * b),
            _ => Num::C(self.to_c() * o.to_c()),
        }
    }

    pub fn div(&self, o: &Num) -> Num {
        match (self, o) {
            (Num::Q(a), Num::Q(b)) => Num::Q(a / b),
            _ => Num::C(self.to_c() / o.to_c()),
        }
    }

    pub fn neg(&self) -> Num {
        match self {
            Num::Q(a) => Num::Q(-a.clone()),
            Num::C(c) => Num::C(-c),
        }
    }

    pub fn scale_int(&self, k: u64) -> Num {
        match self {
            Num::Q(a) => Num::Q(a * Rational::from_integer(k.into())),
            Num::C(c) => Num::C(c * k as f64),
        }
    }

    pub fn to_value(&self, radius: f64) -> ComplexValue {
        match self {
            Num::Q(r) => ComplexValue::Exact(r.clone()),
            Num::C(c) => ComplexValue::Numeric {
                re: c.re,
                im: c.im,
                radius,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_arithmetic_stays_exact() {
        let a = Num::Q(Rational::new(1.into(), 3.into()));
        let b = Num::Q(Rational::new(2.into(), 3.into()));
        assert_eq!(a.add(&b), Num::one());
        assert!(a.mul(&b).is_exact());
        let c = Num::C(Complex64::new(0.0, 1.0));
        assert!(!a.add(&c).is_exact());
    }

    #[test]
    fn differs_uses_radii() {
        let a = ComplexValue::Numeric {
            re: 1.0,
            im: 0.0,
            radius: 1e-10,
        };
        let b = ComplexValue::Exact(Rational::one());
        assert!(!a.differs_from(&b));
        let c = ComplexValue::Exact(Rational::new(1.into(), 2.into()));
        assert!(a.differs_from(&c));
    }
}
