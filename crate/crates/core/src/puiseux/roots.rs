//! Roots of the univariate edge polynomials met during expansion.
//!
//! Rational roots are isolated exactly: floating-point roots propose
//! candidates through continued-fraction convergents and each candidate is
//! checked and deflated in exact arithmetic. Whatever remains is solved with
//! the Aberth iteration; clustered roots are refined on the derivative whose
//! root is simple.

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::num::Num;
use crate::poly::{squarefree_decompose, Exponent, MPoly, Rational, Var};

#[derive(Debug, Clone)]
pub(crate) struct Root {
    pub value: Num,
    pub multiplicity: u32,
    pub radius: f64,
}

fn horner_c(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

fn derivative_c(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect()
}

/// All complex roots with multiplicity, by the Aberth-Ehrlich iteration.
pub(crate) fn aberth(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    if n == 1 {
        return vec![-monic[0]];
    }
    let dmonic = derivative_c(&monic);
    let r0 = monic[0].norm().powf(1.0 / n as f64).max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(r0, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..800 {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let p = horner_c(&monic, z[k]);
            let dp = horner_c(&dmonic, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    let diff = z[k] - z[j];
                    if diff.norm() > 0.0 {
                        sum += 1.0 / diff;
                    }
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if w.is_finite() {
                z[k] -= w;
                max_step = max_step.max(w.norm() / (1.0 + z[k].norm()));
            }
        }
        if max_step < 1e-16 {
            break;
        }
    }
    z
}

/// Groups approximations of a multiple root and refines each group on the
/// derivative of order `multiplicity - 1`.
fn clustered_roots(coeffs: &[Complex64]) -> Vec<(Complex64, u32, f64)> {
    let approx = aberth(coeffs);
    let mut groups: Vec<Vec<Complex64>> = Vec::new();
    for z in approx {
        match groups.iter_mut().find(|g| {
            let c = g.iter().sum::<Complex64>() / g.len() as f64;
            (c - z).norm() < 1e-4 * (1.0 + z.norm())
        }) {
            Some(g) => g.push(z),
            None => groups.push(vec![z]),
        }
    }
    let mut out = Vec::new();
    for g in groups {
        let k = g.len() as u32;
        let mut target = coeffs.to_vec();
        for _ in 1..k {
            target = derivative_c(&target);
        }
        let dtarget = derivative_c(&target);
        let mut z = g.iter().sum::<Complex64>() / g.len() as f64;
        let mut radius = f64::EPSILON * (1.0 + z.norm());
        for _ in 0..60 {
            let p = horner_c(&target, z);
            let dp = horner_c(&dtarget, z);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if !step.is_finite() {
                break;
            }
            z -= step;
            radius = step.norm();
            if step.norm() <= f64::EPSILON * (1.0 + z.norm()) {
                break;
            }
        }
        let radius = (4.0 * radius).max(4.0 * f64::EPSILON * (1.0 + z.norm()));
        out.push((z, k, radius));
    }
    out
}

fn eval_q(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Synthetic division by `(Z - r)`; `None` if `r` is not a root.
fn deflate(coeffs: &[Rational], r: &Rational) -> Option<Vec<Rational>> {
    let n = coeffs.len() - 1;
    let mut out = vec![Rational::zero(); n];
    let mut carry = Rational::zero();
    for k in (0..=n).rev() {
        let v = &coeffs[k] + &carry * r;
        if k == 0 {
            return if v.is_zero() { Some(out) } else { None };
        }
        out[k - 1] = v.clone();
        carry = v;
    }
    unreachable!()
}

/// Continued-fraction convergents of `x` with bounded denominators.
fn convergents(x: f64) -> Vec<Rational> {
    let mut out = Vec::new();
    if !x.is_finite() {
        return out;
    }
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut v = x;
    for _ in 0..40 {
        let a = v.floor();
        let Some(ai) = BigInt::parse_bytes(format!("{a:.0}").as_bytes(), 10) else {
            break;
        };
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if k2.abs() > BigInt::from(1_000_000_000u64) {
            break;
        }
        out.push(Rational::new(h2.clone(), k2.clone()));
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let frac = v - a;
        if frac.abs() < 1e-12 {
            break;
        }
        v = 1.0 / frac;
    }
    out
}

/// Roots of a polynomial given by low-to-high coefficients with nonzero
/// constant and leading terms.
pub(crate) fn roots(coeffs: &[Num]) -> Vec<Root> {
    if coeffs.iter().all(Num::is_exact) {
        let exact: Vec<Rational> = coeffs
            .iter()
            .map(|c| match c {
                Num::Q(r) => r.clone(),
                Num::C(_) => unreachable!(),
            })
            .collect();
        return exact_roots(exact);
    }
    let cs: Vec<Complex64> = coeffs.iter().map(Num::to_c).collect();
    clustered_roots(&cs)
        .into_iter()
        .map(|(z, k, radius)| Root {
            value: Num::C(z),
            multiplicity: k,
            radius,
        })
        .collect()
}

fn exact_roots(poly: Vec<Rational>) -> Vec<Root> {
    let p = MPoly::from_terms(
        poly.iter()
            .enumerate()
            .map(|(k, c)| (c.clone(), Exponent([k as u32, 0, 0]))),
    );
    let decomposition = squarefree_decompose(&p, Var::Z1).expect("nonzero edge polynomial");
    let mut found = Vec::new();
    for (factor, mult) in &decomposition.factors {
        let coeffs: Vec<Rational> = factor.to_univariate(Var::Z1).iter().map(MPoly::constant_term).collect();
        for (value, radius) in simple_exact_roots(coeffs) {
            found.push(Root {
                value,
                multiplicity: *mult,
                radius,
            });
        }
    }
    found
}

/// Roots of a squarefree polynomial: rational ones exactly, the rest as floats.
fn simple_exact_roots(mut poly: Vec<Rational>) -> Vec<(Num, f64)> {
    let mut found = Vec::new();
    loop {
        if poly.len() <= 1 {
            break;
        }
        let cs: Vec<Complex64> = poly
            .iter()
            .map(|r| Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0))
            .collect();
        let candidate = aberth(&cs)
            .into_iter()
            .filter(|z| z.im.abs() <= 1e-6 * (1.0 + z.re.abs()))
            .find_map(|z| convergents(z.re).into_iter().find(|c| eval_q(&poly, c).is_zero()));
        match candidate {
            Some(r) => {
                poly = deflate(&poly, &r).expect("checked root");
                found.push((Num::Q(r), 0.0));
            }
            None => break,
        }
    }
    if poly.len() > 1 {
        let cs: Vec<Complex64> = poly
            .iter()
            .map(|r| Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0))
            .collect();
        for (z, _, radius) in clustered_roots(&cs) {
            found.push((Num::C(z), radius));
        }
    }
    found
}

fn exact_int_root(n: &BigInt, q: u32) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        if q.is_multiple_of(2) {
            return None;
        }
        return exact_int_root(&-n, q).map(|r| -r);
    }
    let r = n.nth_root(q);
    if num_traits::pow(r.clone(), q as usize) == *n {
        Some(r)
    } else {
        None
    }
}

/// A `q`-th root of `z`: the exact rational one when it exists (for odd `q`
/// and negative `z` that is the negative real root), otherwise the complex
/// root with the smallest argument in `[0, 2*pi)`.
pub(crate) fn qth_root(z: &Num, q: u32, radius: f64) -> (Num, f64) {
    if q == 1 {
        return (z.clone(), radius);
    }
    if let Num::Q(r) = z {
        if let (Some(a), Some(b)) = (exact_int_root(r.numer(), q), exact_int_root(r.denom(), q)) {
            return (Num::Q(Rational::new(a, b)), 0.0);
        }
    }
    let c = z.to_c();
    let mut arg = c.arg();
    if arg < 0.0 {
        arg += 2.0 * std::f64::consts::PI;
    }
    let modulus = c.norm().powf(1.0 / q as f64);
    let root = Complex64::from_polar(modulus, arg / q as f64);
    let propagated = if c.norm() > 0.0 {
        radius * modulus / (q as f64 * c.norm())
    } else {
        radius
    };
    let r = propagated.max(8.0 * f64::EPSILON * (1.0 + modulus));
    (Num::C(root), r)
}
