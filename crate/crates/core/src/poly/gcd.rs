//! Multivariate gcd by recursion on the main variable and a subresultant
//! remainder sequence over the coefficient ring.

use super::{MPoly, Var};

/// Highest-index variable occurring in either argument.
pub(crate) fn main_var(a: &MPoly, b: &MPoly) -> Option<Var> {
    Var::ALL.into_iter().rev().find(|v| a.involves(*v) || b.involves(*v))
}

/// Monic gcd over `Q[z1, z2, z3]`. `gcd(0, 0) = 0`; otherwise the result has
/// graded-lex leading coefficient 1.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let Some(v) = main_var(a, b) else {
        return MPoly::one();
    };
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = primitive_gcd(pa, pb, v);
    (&c * &g).monic()
}

/// Gcd of two polynomials in `z1, z2`; the same routine as [`gcd`], kept
/// under its own name for call sites that only ever see plane curves.
pub fn bivariate_gcd(a: &MPoly, b: &MPoly) -> MPoly {
    debug_assert!(!a.involves(Var::Z3) && !b.involves(Var::Z3));
    gcd(a, b)
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `var`.
pub fn content_in(p: &MPoly, var: Var) -> MPoly {
    let mut acc = MPoly::zero();
    for c in p.to_univariate(var) {
        if c.is_zero() {
            continue;
        }
        acc = gcd(&acc, &c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

pub fn primitive_part_in(p: &MPoly, var: Var) -> MPoly {
    if p.is_zero() {
        return p.clone();
    }
    p.div_exact(&content_in(p, var)).expect("content divides")
}

type Upoly = Vec<MPoly>;

fn trim(p: &mut Upoly) {
    while p.last().is_some_and(MPoly::is_zero) {
        p.pop();
    }
}

fn deg(p: &Upoly) -> usize {
    p.len() - 1
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &Upoly, b: &Upoly) -> Upoly {
    let db = deg(b);
    let lb = b[db].clone();
    let mut r = a.clone();
    let mut steps = 0;
    let delta = deg(a) + 1 - db;
    while !r.is_empty() && deg(&r) >= db {
        let dr = deg(&r);
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for (k, bc) in b.iter().enumerate() {
            r[k + shift] = &r[k + shift] - &(&lr * bc);
        }
        trim(&mut r);
        steps += 1;
    }
    if steps < delta {
        let f = lb.pow((delta - steps) as u32);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

fn div_all(p: &Upoly, d: &MPoly) -> Upoly {
    p.iter()
        .map(|c| c.div_exact(d).expect("subresultant division is exact"))
        .collect()
}

fn primitive_gcd(a: MPoly, b: MPoly, v: Var) -> MPoly {
    let mut a = a.to_univariate(v);
    let mut b = b.to_univariate(v);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = MPoly::one();
    let mut h = MPoly::one();
    loop {
        let delta = (deg(&a) - deg(&b)) as u32;
        let r = prem(&a, &b);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            return MPoly::one();
        }
        let divisor = &g * &h.pow(delta);
        a = b;
        b = div_all(&r, &divisor);
        g = a[deg(&a)].clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant division is exact")
        };
    }
    primitive_part_in(&MPoly::from_univariate(&b, v), v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use proptest::prelude::*;

    fn p(s: &str) -> MPoly {
        parse_poly(s, &["z1", "z2", "z3"]).unwrap()
    }

    #[test]
    fn gcd_of_products() {
        let a = p("(z1^3 - z2^2)*(z2 - z1)");
        let b = p("(z1^3 - z2^2)^2*(z1 + 1)");
        assert_eq!(gcd(&a, &b), p("z1^3 - z2^2"));
    }

    #[test]
    fn bivariate_example() {
        let a = p("(z1^3 - z2^2)^2");
        let b = p("(z1^3 - z2^2)*(z2 - 1)");
        assert_eq!(bivariate_gcd(&a, &b), p("z1^3 - z2^2"));
    }

    #[test]
    fn gcd_edge_cases() {
        assert!(gcd(&MPoly::zero(), &MPoly::zero()).is_zero());
        assert_eq!(gcd(&p("3*z1 + 6"), &MPoly::zero()), p("z1 + 2"));
        assert!(gcd(&p("z1"), &p("z2")).is_one());
        assert!(gcd(&p("5"), &p("z1^2")).is_one());
    }

    #[test]
    fn three_variable_gcd() {
        let common = p("z3^2 - z1*z2 + 1");
        let a = &common * &p("z3 + z1");
        let b = &common * &p("z2^2 - z3");
        assert_eq!(gcd(&a, &b), common.monic());
    }

    #[test]
    fn content_and_primitive_part() {
        let f = p("(z1 + 1)*z2^2 + (z1^2 - 1)*z2");
        assert_eq!(content_in(&f, Var::Z2), p("z1 + 1"));
        assert_eq!(primitive_part_in(&f, Var::Z2), p("z2^2 + z1*z2 - z2"));
    }

    fn small_poly() -> impl Strategy<Value = MPoly> {
        proptest::collection::vec((-3i64..=3, 0u32..3, 0u32..3), 1..4).prop_map(|terms| {
            MPoly::from_terms(terms.into_iter().map(|(c, i, j)| {
                (
                    crate::poly::Rational::from_integer(c.into()),
                    crate::poly::Exponent([i, j, 0]),
                )
            }))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(120))]

        #[test]
        fn gcd_divides_both_and_contains_common_factor(
            a in small_poly(), b in small_poly(), c in small_poly()
        ) {
            prop_assume!(!c.is_zero());
            let ac = &a * &c;
            let bc = &b * &c;
            let g = gcd(&ac, &bc);
            if !ac.is_zero() {
                prop_assert!(g.divides(&ac));
            }
            if !bc.is_zero() {
                prop_assert!(g.divides(&bc));
            }
            prop_assert!(c.divides(&g));
        }

        #[test]
        fn coprime_linear_factors_have_constant_gcd(
            a in -4i64..=4, b in -4i64..=4, c in -4i64..=4, d in -4i64..=4
        ) {
            prop_assume!(a != c || b != d);
            let f = p(&format!("(z2 - ({a})*z1 - ({b}))*(z2 - ({a})*z1 - ({b}) + z1^2)"));
            let g = p(&format!("z2 - ({c})*z1 - ({d})"));
            prop_assume!(!g.divides(&f));
            prop_assert!(gcd(&f, &g).is_constant());
        }
    }
}
