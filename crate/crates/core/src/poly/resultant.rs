//! Resultants via the Sylvester matrix and fraction-free (Bareiss) elimination.

use thiserror::Error;

use super::{MPoly, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResultantError {
    #[error("resultant of two zero polynomials is undefined")]
    BothZero,
}

/// Resultant of `a` and `b` with respect to `var`.
///
/// A polynomial of degree zero in `var` is treated as a constant `c`, giving
/// `Res(a, c) = c^deg(a)`. If exactly one argument is zero the result is zero.
pub fn resultant(a: &MPoly, b: &MPoly, var: Var) -> Result<MPoly, ResultantError> {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return Err(ResultantError::BothZero),
        (true, false) | (false, true) => return Ok(MPoly::zero()),
        _ => {}
    }
    let ca = a.to_univariate(var);
    let cb = b.to_univariate(var);
    let m = ca.len() - 1;
    let n = cb.len() - 1;
    if m == 0 {
        return Ok(ca[0].pow(n as u32));
    }
    if n == 0 {
        return Ok(cb[0].pow(m as u32));
    }
    let size = m + n;
    let mut mat = vec![vec![MPoly::zero(); size]; size];
    for i in 0..n {
        for (k, c) in ca.iter().rev().enumerate() {
            mat[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in cb.iter().rev().enumerate() {
            mat[n + i][i + k] = c.clone();
        }
    }
    Ok(bareiss_det(mat))
}

fn bareiss_det(mut mat: Vec<Vec<MPoly>>) -> MPoly {
    let size = mat.len();
    let mut negate = false;
    let mut prev = MPoly::one();
    for k in 0..size {
        if mat[k][k].is_zero() {
            match (k + 1..size).find(|&r| !mat[r][k].is_zero()) {
                Some(r) => {
                    mat.swap(k, r);
                    negate = !negate;
                }
                None => return MPoly::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &(&mat[i][j] * &mat[k][k]) - &(&mat[i][k] * &mat[k][j]);
                mat[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}
