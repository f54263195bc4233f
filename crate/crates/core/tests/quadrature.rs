use fracvar::power::{weighted_inner_product, Anchor, PowerSum};
use fracvar::quadrature::{endpoint_singular_integral, weighted_integral, JacobiRule};
use fracvar::special::beta;
use fracvar::{FracOrder, Interval};

#[test]
fn jacobi_rules_integrate_monomials_exactly() {
    for n in [1, 2, 3, 7, 16, 33, 64] {
        for (ga, de) in [(0.0, 0.0), (-0.5, -0.5), (-0.9, 0.0), (-0.25, 0.75), (1.0, 2.5)] {
            let rule = JacobiRule::new(n, ga, de).unwrap();
            for k in 0..2 * n {
                let exact = 2f64.powf(ga + de + 1.0) * beta(ga + 1.0, de + k as f64 + 1.0).unwrap();
                let got = rule.integrate(|x| (0.5 * (1.0 + x)).powi(k as i32));
                assert!(
                    ((got - exact) / exact).abs() <= 1e-12,
                    "n={n} weight=({ga},{de}) degree {k}: {got} vs {exact}"
                );
            }
        }
    }
}

#[test]
fn weights_are_positive_and_nodes_sorted() {
    let rule = JacobiRule::new(40, -0.7, 0.2).unwrap();
    assert!(rule.weights().iter().all(|&w| w > 0.0));
    assert!(rule.nodes().windows(2).all(|w| w[0] < w[1]));
    assert!(rule.nodes().iter().all(|x| x.abs() < 1.0));
}

#[test]
fn weighted_integral_matches_beta_path() {
    let iv = Interval::new(-1.0, 2.0).unwrap();
    for a in [0.1, 0.25, 0.5, 0.75, 1.0] {
        let alpha = FracOrder::new(a).unwrap();
        let p = PowerSum::new(iv, Anchor::Left, [(1.0, 0.0), (-2.0, a), (0.5, 2.0 * a), (3.0, 1.0 + a)]).unwrap();
        let one = PowerSum::constant(iv, Anchor::Left, 1.0);
        let exact = weighted_inner_product(&p, &one, a - 1.0, alpha).unwrap();
        let quad = weighted_integral(|t| p.eval(t), iv, alpha, 64).unwrap();
        assert!(((quad - exact) / exact).abs() <= 1e-10, "alpha {a}: {quad} vs {exact}");
    }
}

#[test]
fn endpoint_singularities_at_both_ends() {
    // ∫_0^1 (1-t)^(-0.5) t^(-0.5) dt = B(0.5, 0.5) = π. The left singularity is
    // only resolved by the geometric grading, which converges algebraically.
    let got = endpoint_singular_integral(|t| Ok(t.powf(-0.5)), Interval::unit(), -0.5, 64).unwrap();
    assert!((got - std::f64::consts::PI).abs() <= 1e-9, "{got}");
    // bounded integrands are integrated to rounding level
    let got = endpoint_singular_integral(|t| Ok(t.sqrt()), Interval::unit(), -0.5, 64).unwrap();
    assert!((got - beta(0.5, 1.5).unwrap()).abs() <= 1e-13, "{got}");
}
