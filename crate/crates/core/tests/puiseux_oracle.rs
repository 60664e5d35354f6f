mod support;

use germsplit::poly::{parse_poly, MPoly, Var};
use germsplit::puiseux::{characteristic_data, newton_polygon, puiseux_expand, PuiseuxBranch, PuiseuxConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::oracle::{self, q, ClassSpec};

fn linear_coefficient(b: &PuiseuxBranch) -> i64 {
    b.terms
        .iter()
        .find(|t| t.exponent == q(1, 1))
        .map(|t| {
            let c = t
                .coefficient
                .as_exact()
                .expect("integral exponents have rational coefficients here");
            assert!(c.is_integer());
            c.to_integer().try_into().unwrap()
        })
        .unwrap_or(0)
}

fn residual_holds(g: &MPoly, b: &PuiseuxBranch) -> bool {
    match oracle::exact_residual_valuation(g, b) {
        Some(None) => true,
        Some(Some(v)) => v > b.truncation_order,
        None => {
            let lead = b.terms[0].coefficient.modulus().max(1.0);
            let scale = g
                .terms()
                .map(|(_, c)| num_traits::ToPrimitive::to_f64(c).unwrap().abs())
                .fold(0.0, f64::max);
            let deg = g.degree_in(Var::Z2).unwrap() as i32;
            oracle::numeric_residual_below(g, b, &b.truncation_order, 1e-6 * scale * lead.powi(deg))
        }
    }
}

#[test]
fn class_polynomial_of_a_cusp() {
    let spec = ClassSpec::new(vec![(q(3, 2), 1)]);
    let g = oracle::class_polynomial(&spec);
    assert_eq!(g, parse_poly("z2^2 - z1^3", &["z1", "z2", "z3"]).unwrap());
}

#[test]
fn class_polynomial_with_an_integral_lead() {
    // z2 = z1^3 +- z1^(5/2): (z2 - z1^3)^2 - z1^5.
    let spec = ClassSpec::new(vec![(q(5, 2), 1), (q(3, 1), 1)]);
    let g = oracle::class_polynomial(&spec);
    assert_eq!(
        g,
        parse_poly("z2^2 - 2*z1^3*z2 + z1^6 - z1^5", &["z1", "z2", "z3"]).unwrap()
    );
    let branches = puiseux_expand(&g, &PuiseuxConfig::default()).unwrap();
    assert_eq!(branches.len(), 1);
    let c = characteristic_data(&branches[0]).unwrap();
    assert_eq!(c.exponents, vec![q(5, 2)]);
    assert_eq!(c.pairs, vec![(5, 2)]);
}

#[test]
fn randomized_products_recover_prescribed_data() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for case in 0..60 {
        let inst = oracle::random_instance(&mut rng);
        let branches = puiseux_expand(&inst.g, &PuiseuxConfig::default())
            .unwrap_or_else(|e| panic!("case {case}: {e} for {}", inst.g));
        let mut got: Vec<(i64, Vec<_>, Vec<_>)> = branches
            .iter()
            .map(|b| {
                let c = characteristic_data(b).unwrap();
                (linear_coefficient(b), c.exponents, c.pairs)
            })
            .collect();
        let mut want: Vec<(i64, Vec<_>, Vec<_>)> = inst
            .classes
            .iter()
            .map(|c| (c.linear_coefficient(), c.exponents.clone(), c.pairs.clone()))
            .collect();
        got.sort();
        want.sort();
        assert_eq!(got, want, "case {case}: {}", inst.g);

        let total: u32 = branches.iter().map(|b| b.ramification).sum();
        assert_eq!(total, inst.g.degree_in(Var::Z2).unwrap(), "case {case}");
        for b in &branches {
            assert!(residual_holds(&inst.g, b), "case {case}: residual of {b}");
        }
    }
}

#[test]
fn newton_edges_give_the_leading_exponents() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..30 {
        let inst = oracle::random_instance(&mut rng);
        let poly = newton_polygon(&inst.g).unwrap();
        let mut edges: Vec<_> = poly.edges.iter().map(|e| e.exponent.clone()).collect();
        edges.sort();
        edges.dedup();
        let branches = puiseux_expand(&inst.g, &PuiseuxConfig::default()).unwrap();
        let mut leading: Vec<_> = branches.iter().map(|b| b.leading_exponent().unwrap().clone()).collect();
        leading.sort();
        leading.dedup();
        assert_eq!(edges, leading, "{}", inst.g);
    }
}
