//! Parsing and evaluating Lagrangian expressions in `t`, `u` (state) and `v` (Caputo derivative).
//!
//! `cargo run --example expressions`

use fracvar::expr::parse_expression;
use fracvar::functional::Lagrangian;

fn main() -> fracvar::Result<()> {
    let e = parse_expression("-(v - 1)^2 / 2 + gamma(1.5) * u * exp(-t)")?;
    println!("parsed: {e}");
    println!("at (t, u, v) = (0.5, 2, 3): {}", e.eval(0.5, 2.0, 3.0)?);

    let l = Lagrangian::parse_expr("v^2 + sin(t) * u^2")?;
    println!("L   (0.2, 1, 2) = {}", l.core(0.2, 1.0, 2.0)?);
    println!("L_u (0.2, 1, 2) = {}", l.core_du(0.2, 1.0, 2.0)?);
    println!("L_v (0.2, 1, 2) = {}", l.core_dv(0.2, 1.0, 2.0)?);

    for bad in ["v^2 +", "sqrt(v)", "ln(u - 2)"] {
        match parse_expression(bad).and_then(|e| e.eval(0.0, 1.0, 0.0)) {
            Ok(x) => println!("{bad:>10}: {x}"),
            Err(err) => println!("{bad:>10}: {err}"),
        }
    }
    Ok(())
}
