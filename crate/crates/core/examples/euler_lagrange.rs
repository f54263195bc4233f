//! Euler-Lagrange residuals: constant at a minimizer, non-constant elsewhere.
//!
//! `cargo run --example euler_lagrange`

use fracvar::euler_lagrange::{differential_form_residual, integral_form_residual, chebyshev_lobatto};
use fracvar::functional::{Trajectory, VariationalProblem};
use fracvar::power::{Anchor, PowerSum};
use fracvar::{FracOrder, Interval};

fn main() -> fracvar::Result<()> {
    let alpha = FracOrder::new(0.5)?;
    let iv = Interval::unit();
    let prob = VariationalProblem::weighted_dirichlet(alpha);

    for (name, exponent) in [("t^a", 0.5), ("t", 1.0)] {
        let y = Trajectory::exact(PowerSum::monomial(iv, Anchor::Left, 1.0, exponent)?, alpha)?;
        let r = integral_form_residual(&prob, &y, 9, 64)?;
        println!("{name}: k ~ {:.12}, max deviation {:.3e}, constant {}", r.k_estimate, r.max_deviation, r.constant);
        for (t, v) in r.sample_ts.iter().zip(&r.residual_values) {
            println!("    t = {t:.4}  residual {v:.12}");
        }
    }

    // Differential form at points of [0, 1).
    let y = Trajectory::exact(PowerSum::monomial(iv, Anchor::Left, 1.0, 0.5)?, alpha)?;
    let ts: Vec<f64> = chebyshev_lobatto(iv, 6)?.into_iter().filter(|&t| t < 1.0).collect();
    for (t, v) in ts.iter().zip(differential_form_residual(&prob, &y, &ts)?) {
        println!("differential form at t^a, t = {t:.4}: {v:.3e}");
    }
    Ok(())
}
