//! The unweighted problem has no minimizer with a continuous Caputo derivative for `α < 1`.
//!
//! `cargo run --example nonexistence`

use fracvar::euler_lagrange::{unweighted_obstruction, Obstruction};
use fracvar::FracOrder;

fn main() -> fracvar::Result<()> {
    for a in [0.25, 0.5, 0.75, 1.0] {
        let report = unweighted_obstruction(FracOrder::new(a)?)?;
        match report.outcome {
            Obstruction::NoSolution => {
                println!("alpha {a}: no minimizer (forced k = {:?})", report.forced_k);
                for (t, v) in &report.candidate_samples {
                    println!("    (1-t)^(a-1) at t = {t}: {v:.6}");
                }
            }
            Obstruction::Solution { trajectory, value } => {
                println!("alpha {a}: y = {trajectory}, J = {value}");
            }
        }
    }
    Ok(())
}
