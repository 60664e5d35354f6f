//! Independent construction of plane curves with prescribed Puiseux data.
//!
//! A conjugacy class `y = sum c_k x^(e_k)` with exponent denominators
//! dividing `N` has class polynomial `prod_{zeta^N = 1} (y - phi(zeta t))`,
//! `t^N = x`. It is computed as `det(y I - B(T))` where `T` is the companion
//! matrix of `t^N - x` over `Q[x]` and `B(T) = sum c_k T^(N e_k)`: the
//! eigenvalues of `T` are the `N`-th roots of `x`. The determinant comes from
//! the Faddeev-LeVerrier recursion, so nothing here touches resultants,
//! Newton polygons or root finding.

#![allow(dead_code)]

use germsplit::poly::{Exponent, MPoly, Rational, Var};
use germsplit::puiseux::PuiseuxBranch;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// One prescribed conjugacy class.
#[derive(Debug, Clone)]
pub struct ClassSpec {
    /// `(exponent, coefficient)` with increasing exponents.
    pub terms: Vec<(Rational, i64)>,
    /// Lcm of the exponent denominators.
    pub n: u32,
    pub exponents: Vec<Rational>,
    pub pairs: Vec<(u64, u64)>,
}

impl ClassSpec {
    pub fn new(mut terms: Vec<(Rational, i64)>) -> ClassSpec {
        terms.retain(|(_, c)| *c != 0);
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut d: u64 = 1;
        let mut exponents = Vec::new();
        let mut pairs = Vec::new();
        for (e, _) in &terms {
            let den = e.denom().to_u64().unwrap();
            let next = d.lcm(&den);
            if next != d {
                let m = (e * Rational::from_integer(next.into())).to_integer().to_u64().unwrap();
                exponents.push(e.clone());
                pairs.push((m, next / d));
                d = next;
            }
        }
        ClassSpec {
            terms,
            n: d as u32,
            exponents,
            pairs,
        }
    }

    /// Coefficient of `x^1`, zero if absent. Invariant under conjugation.
    pub fn linear_coefficient(&self) -> i64 {
        self.terms
            .iter()
            .find(|(e, _)| e.is_one())
            .map(|(_, c)| *c)
            .unwrap_or(0)
    }
}

type Matrix = Vec<Vec<MPoly>>;

fn x_pow(k: u32) -> MPoly {
    MPoly::monomial(Rational::one(), Exponent([k, 0, 0]))
}

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { MPoly::one() } else { MPoly::zero() })
                .collect()
        })
        .collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![MPoly::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] = &out[i][j] + &(&a[i][k] * &b[k][j]);
                }
            }
        }
    }
    out
}

fn mat_add_scaled(a: &Matrix, b: &Matrix, c: &MPoly) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + &(y * c)).collect())
        .collect()
}

fn trace(a: &Matrix) -> MPoly {
    (0..a.len()).fold(MPoly::zero(), |acc, i| &acc + &a[i][i])
}

/// `det(y I - A)` as a polynomial in `z1` (entries) and `z2` (`y`).
fn characteristic_polynomial(a: &Matrix) -> MPoly {
    let n = a.len();
    let mut coeffs = vec![MPoly::zero(); n + 1];
    coeffs[n] = MPoly::one();
    let id = identity(n);
    let mut m = vec![vec![MPoly::zero(); n]; n];
    for k in 1..=n {
        m = mat_add_scaled(&mat_mul(a, &m), &id, &coeffs[n - k + 1]);
        let am = mat_mul(a, &m);
        coeffs[n - k] = trace(&am).scale(&-q(1, k as i64));
    }
    MPoly::from_univariate(&coeffs, Var::Z2)
}

pub fn class_polynomial(spec: &ClassSpec) -> MPoly {
    let n = spec.n as usize;
    let mut t = vec![vec![MPoly::zero(); n]; n];
    for i in 0..n.saturating_sub(1) {
        t[i + 1][i] = MPoly::one();
    }
    t[0][n - 1] = &t[0][n - 1] + &x_pow(1);
    let mut powers = vec![identity(n)];
    for k in 1..n {
        let next = mat_mul(&powers[k - 1], &t);
        powers.push(next);
    }
    let mut b = vec![vec![MPoly::zero(); n]; n];
    for (e, c) in &spec.terms {
        let a = (e * Rational::from_integer((n as i64).into()))
            .to_integer()
            .to_u32()
            .unwrap();
        let scale = x_pow(a / n as u32).scale(&q(*c, 1));
        b = mat_add_scaled(&b, &powers[(a as usize) % n], &scale);
    }
    characteristic_polynomial(&b)
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub classes: Vec<ClassSpec>,
    pub g: MPoly,
}

fn nonzero_coefficient<R: Rng>(rng: &mut R) -> i64 {
    let c = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        c
    } else {
        -c
    }
}

fn coprime_numerator<R: Rng>(rng: &mut R, den: i64, lo: i64, hi: i64) -> i64 {
    loop {
        let m = rng.gen_range(lo..=hi);
        if m.gcd(&den) == 1 {
            return m;
        }
    }
}

/// A class with at most two Puiseux pairs and denominators at most 6.
pub fn random_class<R: Rng>(rng: &mut R, linear: i64) -> ClassSpec {
    const SHAPES: [&[i64]; 9] = [&[], &[2], &[3], &[4], &[5], &[6], &[2, 2], &[2, 3], &[3, 2]];
    let shape = SHAPES[rng.gen_range(0..SHAPES.len())];
    let mut terms = vec![(q(1, 1), linear)];
    let mut d = 1i64;
    let mut last = q(1, 1);
    for &nj in shape {
        let den = d * nj;
        let lo = (&last * Rational::from_integer(den.into()))
            .to_integer()
            .to_i64()
            .unwrap()
            + 1;
        let m = coprime_numerator(rng, nj, lo, lo + 2 * den);
        let r = q(m, den);
        // A non-characteristic term between levels.
        if d > 1 && rng.gen_bool(0.4) {
            let between = &last + q(1, d);
            if between < r {
                terms.push((between, nonzero_coefficient(rng)));
            }
        }
        terms.push((r.clone(), nonzero_coefficient(rng)));
        last = r;
        d = den;
    }
    if rng.gen_bool(0.5) {
        let tail = &last + q(1, d) * q(rng.gen_range(1..=3), 1);
        terms.push((tail, nonzero_coefficient(rng)));
    }
    if shape.is_empty() {
        terms.push((q(2, 1), nonzero_coefficient(rng)));
    }
    ClassSpec::new(terms)
}

/// Product of one to three classes with distinct linear coefficients, so
/// the product is squarefree, and total ramification at most 10.
pub fn random_instance<R: Rng>(rng: &mut R) -> Instance {
    let mut linear_pool = vec![0i64, 1, -1, 2, -2, 3];
    let count = rng.gen_range(1..=3);
    let mut classes: Vec<ClassSpec> = Vec::new();
    let mut total = 0;
    while classes.len() < count {
        let idx = rng.gen_range(0..linear_pool.len());
        let linear = linear_pool[idx];
        let spec = random_class(rng, linear);
        if total + spec.n > 10 {
            if classes.is_empty() {
                continue;
            }
            break;
        }
        linear_pool.swap_remove(idx);
        total += spec.n;
        classes.push(spec);
    }
    let g = classes.iter().fold(MPoly::one(), |acc, c| &acc * &class_polynomial(c));
    Instance { classes, g }
}

/// Valuation in `x` of `g(x, branch(x))`, computed exactly by substituting
/// `x = t^n`. The outer `None` means the branch has numeric coefficients,
/// the inner one that the residual vanishes identically.
pub fn exact_residual_valuation(g: &MPoly, branch: &PuiseuxBranch) -> Option<Option<Rational>> {
    let n = branch.ramification;
    let mut phi = MPoly::zero();
    for term in &branch.terms {
        let c = term.coefficient.as_exact()?;
        let a = (&term.exponent * Rational::from_integer(n.into()))
            .to_integer()
            .to_u32()
            .unwrap();
        phi = &phi + &MPoly::monomial(c.clone(), Exponent([a, 0, 0]));
    }
    let lifted = g.substitute(Var::Z1, &x_pow(n)).substitute(Var::Z2, &phi);
    Some(
        lifted
            .terms()
            .map(|(e, _)| e.0[0])
            .min()
            .map(|low| q(low as i64, n as i64)),
    )
}

/// Numeric counterpart: the coefficients of `g(t^n, branch(t^n))` below
/// `x`-order `bound` are all below `tol`.
pub fn numeric_residual_below(g: &MPoly, branch: &PuiseuxBranch, bound: &Rational, tol: f64) -> bool {
    let n = branch.ramification as usize;
    let cutoff = (bound * Rational::from_integer((n as i64).into()))
        .floor()
        .to_integer()
        .to_usize()
        .unwrap();
    let len = cutoff + 1;
    let mut phi = vec![Complex64::zero(); len];
    for term in &branch.terms {
        let a = (&term.exponent * Rational::from_integer((n as i64).into()))
            .to_integer()
            .to_usize()
            .unwrap();
        if a < len {
            phi[a] += term.coefficient.to_complex();
        }
    }
    let mul = |a: &[Complex64], b: &[Complex64]| {
        let mut out = vec![Complex64::zero(); len];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate().take(len - i) {
                out[i + j] += x * y;
            }
        }
        out
    };
    let mut acc = vec![Complex64::zero(); len];
    for coeff in g.to_univariate(Var::Z2).iter().rev() {
        acc = mul(&acc, &phi);
        for (e, c) in coeff.terms() {
            let k = e.0[0] as usize * n;
            if k < len {
                acc[k] += c.to_f64().unwrap();
            }
        }
    }
    acc.iter().all(|c| c.norm() <= tol)
}
