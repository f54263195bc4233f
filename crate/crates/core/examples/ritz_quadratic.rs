//! Direct solve of quadratic problems on the trial space `τ^α, τ^(α+k)`.
//!
//! `cargo run --example ritz_quadratic`

use fracvar::functional::{Lagrangian, QuadraticCoeffs, VariationalProblem};
use fracvar::ritz::{solve_quadratic, verify_minimizer, SolverOptions};
use fracvar::special::gamma;
use fracvar::{FracOrder, Interval};

fn main() -> fracvar::Result<()> {
    let opts = SolverOptions::default();
    for a in [0.25, 0.5, 0.75, 1.0] {
        let prob = VariationalProblem::weighted_dirichlet(FracOrder::new(a)?);
        let res = solve_quadratic(&prob, 3, &opts)?;
        println!("alpha {a}: J = {:.15}, Gamma(a+1) = {:.15}", res.value, gamma(a + 1.0)?);
    }

    // L = v^2 + u^2 on [0, 2] from 1 to 0.
    let alpha = FracOrder::new(0.7)?;
    let l = Lagrangian::quadratic(QuadraticCoeffs { c_vv: 1.0, c_uu: 1.0, c_u: 0.0, c_v: 0.0, c_0: 0.0 });
    let prob = VariationalProblem::new(Interval::new(0.0, 2.0)?, alpha, 1.0, 0.0, l)?;
    for m in [1, 2, 4, 6] {
        let res = solve_quadratic(&prob, m, &opts)?;
        println!("m = {m}: J = {:.12}, residual deviation {:.3e}", res.value, res.residual.max_deviation);
    }

    // The power-law minimizer of the v^2 problem lies in the trial space.
    let prob = VariationalProblem::weighted_dirichlet(FracOrder::new(0.5)?);
    let res = solve_quadratic(&prob, 3, &opts)?;
    for check in verify_minimizer(&prob, &res, 50, opts.quad_n).checks {
        println!("{}: {} ({})", check.name, if check.passed { "pass" } else { "fail" }, check.detail);
    }
    Ok(())
}
