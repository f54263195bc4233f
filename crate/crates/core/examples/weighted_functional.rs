//! The weighted and unweighted functionals on a few trajectories.
//!
//! `cargo run --example weighted_functional`

use fracvar::functional::{
    convexity_gap, evaluate_unweighted, evaluate_weighted, evaluate_weighted_exact, Lagrangian,
    Trajectory, VariationalProblem,
};
use fracvar::power::{Anchor, PowerSum};
use fracvar::special::gamma;
use fracvar::{FracOrder, Interval};

fn main() -> fracvar::Result<()> {
    let alpha = FracOrder::new(0.5)?;
    let iv = Interval::unit();
    let prob = VariationalProblem::weighted_dirichlet(alpha);

    let power = Trajectory::exact(PowerSum::monomial(iv, Anchor::Left, 1.0, 0.5)?, alpha)?;
    let line = Trajectory::exact(PowerSum::monomial(iv, Anchor::Left, 1.0, 1.0)?, alpha)?;

    println!("J[t^a]  exact {:.15}  quadrature {:.15}  Gamma(a+1) {:.15}",
        evaluate_weighted_exact(&prob, &power)?,
        evaluate_weighted(&prob, &power, 64)?,
        gamma(1.5)?);
    println!("J[t]    exact {:.15}", evaluate_weighted_exact(&prob, &line)?);
    println!("gap J[t] - J[t^a] - first variation = {:.15}", convexity_gap(&prob, &power, &line, 64)?);

    // Unweighted functional of the line, and the same number through the weighted
    // functional with an endpoint factor that cancels the kernel.
    println!("unweighted J[t] = {:.15}", evaluate_unweighted(&prob, &line, 64)?);
    let rescaled = prob.with_lagrangian(Lagrangian::rescaled_v_squared(alpha)?);
    println!("rescaled weighted J[t] = {:.15}", evaluate_weighted(&rescaled, &line, 64)?);
    Ok(())
}
