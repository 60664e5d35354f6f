//! Low-discrepancy samples of the carousel neighbourhood.

#![allow(dead_code)]

use germsplit::carousel::CarouselSpec;
use germsplit::puiseux::PuiseuxBranch;
use num_complex::Complex64;

pub fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

/// Halton points of the cones `A`, cycling through the tangent lines.
pub fn sample_a(spec: &CarouselSpec, count: u64) -> Vec<(Complex64, Complex64)> {
    (1..=count)
        .map(|i| {
            let c = &spec.carousels[(i as usize) % spec.carousels.len()];
            let modulus = spec.epsilon * radical_inverse(i, 2).max(1e-6);
            let x = Complex64::from_polar(modulus, std::f64::consts::TAU * radical_inverse(i, 3));
            let w = Complex64::from_polar(
                radical_inverse(i, 5).sqrt(),
                std::f64::consts::TAU * radical_inverse(i, 7),
            );
            (x, c.tangent.to_complex() * x + w * (c.aperture * modulus))
        })
        .collect()
}

/// Halton points clustered around the curve at every scale: `|x|` is
/// log-uniform over six decades and `y` sits at distance `|x|^p`,
/// `1 <= p <= 2.5`, from a conjugate of an approximant.
pub fn sample_near_curve(spec: &CarouselSpec, count: u64) -> Vec<(Complex64, Complex64)> {
    let conjugates: Vec<PuiseuxBranch> = spec.approximants.iter().flat_map(|b| b.conjugates()).collect();
    (1..=count)
        .map(|i| {
            let branch = &conjugates[(i as usize) % conjugates.len()];
            let modulus = spec.epsilon * 10f64.powf(-6.0 * radical_inverse(i, 2));
            let x = Complex64::from_polar(modulus, std::f64::consts::TAU * radical_inverse(i, 3));
            let p = 1.0 + 1.5 * radical_inverse(i, 5);
            let w = Complex64::from_polar(modulus.powf(p), std::f64::consts::TAU * radical_inverse(i, 7));
            (x, branch.eval(x) + w)
        })
        .collect()
}
