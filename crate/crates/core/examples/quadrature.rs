//! Gauss-Jacobi rules and the weighted integral with kernel `(b - t)^(α-1)`.
//!
//! `cargo run --example quadrature`

use std::f64::consts::PI;

use fracvar::quadrature::{weighted_integral, JacobiRule};
use fracvar::special::{beta, gamma};
use fracvar::{FracOrder, Interval};

fn main() -> fracvar::Result<()> {
    // Weight (1 - x)^(-1/2) (1 + x)^(1/2) on [-1, 1].
    let rule = JacobiRule::new(8, -0.5, 0.5)?;
    for (x, w) in rule.nodes().iter().zip(rule.weights()) {
        println!("node {x:+.15}  weight {w:.15}");
    }
    println!("weight mass {:.15} (pi = {:.15})", rule.weight_mass(), PI);
    println!("B(1.5, 0.5) = {:.15}", beta(1.5, 0.5)?);

    // (1/Gamma(a)) int_0^1 (1 - t)^(a-1) t^a dt = Gamma(a+1) / Gamma(2a+1)
    let alpha = FracOrder::new(0.3)?;
    let a = alpha.value();
    let approx = weighted_integral(|t| Ok(t.powf(a)), Interval::unit(), alpha, 64)?;
    let exact = gamma(a + 1.0)? / gamma(2.0 * a + 1.0)?;
    println!("weighted integral of t^a: {approx:.15}, exact {exact:.15}");
    Ok(())
}
