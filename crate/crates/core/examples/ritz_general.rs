//! Simplex search for a Lagrangian given as an expression.
//!
//! `cargo run --example ritz_general`

use fracvar::functional::{Lagrangian, VariationalProblem};
use fracvar::ritz::{solve_general, solve_quadratic, SolverOptions};
use fracvar::FracOrder;

fn main() -> fracvar::Result<()> {
    let alpha = FracOrder::new(0.5)?;
    let opts = SolverOptions::default();

    let v2 = VariationalProblem::weighted_dirichlet(alpha);
    let expr = v2.with_lagrangian(Lagrangian::parse_expr("v^2 + 0*u")?);
    let direct = solve_quadratic(&v2, 2, &opts)?;
    let search = solve_general(&expr, 2, &opts)?;
    println!("direct  J = {:.15}", direct.value);
    println!("search  J = {:.15} after {} iterations (converged {})", search.value, search.iterations, search.converged);

    // A non-quadratic Lagrangian.
    let quartic = v2.with_lagrangian(Lagrangian::parse_expr("v^2 + 0.1*v^4")?);
    let res = solve_general(&quartic, 3, &opts)?;
    println!("v^2 + 0.1 v^4: J = {:.12}, coefficients {:?}", res.value, res.coefficients);
    println!("residual deviation {:.3e} (tolerance {:.3e})", res.residual.max_deviation, res.residual.tolerance);
    Ok(())
}
