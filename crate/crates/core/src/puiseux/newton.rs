//! Newton polygon of a plane curve `g(z1, z2)`, with `i` the `z1` exponent
//! and `j` the `z2` exponent.

use num_bigint::BigInt;
use num_traits::Zero;

use super::PuiseuxError;
use crate::poly::{MPoly, Rational, Var};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonEdge {
    pub start: (u32, u32),
    pub end: (u32, u32),
    /// `(j_end - j_start) / (i_end - i_start)`, always negative.
    pub slope: Rational,
    /// Leading exponent `-1/slope` of the roots `z2 ~ c*z1^exponent` it carries.
    pub exponent: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub support: Vec<(u32, u32)>,
    /// Lower hull edges, by increasing slope magnitude.
    pub edges: Vec<NewtonEdge>,
}

/// Walks the lower-left hull from the lowest point on the leftmost column to
/// the leftmost point on the lowest row, always taking the steepest descent.
pub(crate) fn lower_chain(points: &[(u32, u32)]) -> Vec<((u32, u32), (u32, u32))> {
    let Some(&i_min) = points.iter().map(|(i, _)| i).min() else {
        return Vec::new();
    };
    let j_start = points
        .iter()
        .filter(|(i, _)| *i == i_min)
        .map(|(_, j)| *j)
        .min()
        .expect("nonempty column");
    let mut current = (i_min, j_start);
    let mut chain = Vec::new();
    loop {
        let (i0, j0) = current;
        // Minimise (j - j0)/(i - i0) over points strictly below; ties go to the farthest.
        let mut best: Option<(u32, u32)> = None;
        for &(i, j) in points {
            if j >= j0 || i <= i0 {
                continue;
            }
            best = Some(match best {
                None => (i, j),
                Some((bi, bj)) => {
                    let lhs = (j as i64 - j0 as i64) * (bi as i64 - i0 as i64);
                    let rhs = (bj as i64 - j0 as i64) * (i as i64 - i0 as i64);
                    if lhs < rhs || (lhs == rhs && i > bi) {
                        (i, j)
                    } else {
                        (bi, bj)
                    }
                }
            });
        }
        match best {
            Some(next) => {
                chain.push((current, next));
                current = next;
            }
            None => break,
        }
    }
    chain
}

pub(crate) fn edge_exponent(start: (u32, u32), end: (u32, u32)) -> Rational {
    Rational::new(BigInt::from(end.0 - start.0), BigInt::from(start.1 - end.1))
}

pub fn newton_polygon(g: &MPoly) -> Result<NewtonPolygon, PuiseuxError> {
    if g.involves(Var::Z3) {
        return Err(PuiseuxError::NotPlanar);
    }
    if g.is_constant() {
        return Err(PuiseuxError::Constant);
    }
    if !g.constant_term().is_zero() {
        return Err(PuiseuxError::NotAtOrigin);
    }
    let support: Vec<(u32, u32)> = g.terms().map(|(e, _)| (e.get(Var::Z1), e.get(Var::Z2))).collect();
    let mut edges: Vec<NewtonEdge> = lower_chain(&support)
        .into_iter()
        .map(|(start, end)| {
            let exponent = edge_exponent(start, end);
            NewtonEdge {
                start,
                end,
                slope: -exponent.recip(),
                exponent,
            }
        })
        .collect();
    edges.reverse();
    let mut support = support;
    support.sort();
    Ok(NewtonPolygon { support, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use proptest::prelude::*;

    fn p(s: &str) -> MPoly {
        parse_poly(s, &["z1", "z2", "z3"]).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn single_edge_curves() {
        let np = newton_polygon(&p("z1^4 - z2^3")).unwrap();
        assert_eq!(np.edges.len(), 1);
        assert_eq!(np.edges[0].start, (0, 3));
        assert_eq!(np.edges[0].end, (4, 0));
        assert_eq!(np.edges[0].exponent, r(4, 3));
        assert_eq!(np.edges[0].slope, r(-3, 4));

        let line = newton_polygon(&p("z2 - z1")).unwrap();
        assert_eq!(line.edges.len(), 1);
        assert_eq!(line.edges[0].exponent, r(1, 1));
    }

    #[test]
    fn two_edges_sorted_by_slope_magnitude() {
        let np = newton_polygon(&p("(z2^2 - z1^3)*(z2 - z1)")).unwrap();
        let exps: Vec<_> = np.edges.iter().map(|e| e.exponent.clone()).collect();
        assert_eq!(exps, vec![r(3, 2), r(1, 1)]);
    }

    #[test]
    fn errors() {
        assert_eq!(newton_polygon(&p("3")), Err(PuiseuxError::Constant));
        assert_eq!(newton_polygon(&p("z2 - 1")), Err(PuiseuxError::NotAtOrigin));
        assert_eq!(newton_polygon(&p("z3 + z1")), Err(PuiseuxError::NotPlanar));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn hull_supports_every_point(pts in proptest::collection::vec((0u32..8, 0u32..8), 1..10)) {
            let chain = lower_chain(&pts);
            let mut prev: Option<Rational> = None;
            for (s, e) in &chain {
                let gamma = edge_exponent(*s, *e);
                let weight = |(i, j): (u32, u32)| Rational::from_integer(i.into()) + &gamma * Rational::from_integer(j.into());
                let w0 = weight(*s);
                prop_assert_eq!(weight(*e), w0.clone());
                for &pt in &pts {
                    prop_assert!(weight(pt) >= w0);
                }
                if let Some(pg) = &prev {
                    prop_assert!(&gamma > pg, "exponents increase along the walk");
                }
                prev = Some(gamma);
            }
        }
    }
}
