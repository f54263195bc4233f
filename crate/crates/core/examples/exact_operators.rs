//! Fractional integrals and derivatives of power sums in closed form.
//!
//! `cargo run --example exact_operators`

use fracvar::power::{
    left_caputo_derivative, left_frac_integral, left_rl_derivative, right_frac_integral,
    right_rl_derivative, Anchor, PowerSum,
};
use fracvar::{FracOrder, Interval};

fn main() -> fracvar::Result<()> {
    let iv = Interval::unit();
    let alpha = FracOrder::new(0.5)?;

    // y(t) = 1 + t^0.5 + 3 t^2
    let y = PowerSum::new(iv, Anchor::Left, [(1.0, 0.0), (1.0, 0.5), (3.0, 2.0)])?;
    println!("y          = {y}");
    println!("I^a y      = {}", left_frac_integral(&y, alpha)?);
    println!("D^a y      = {}", left_rl_derivative(&y, alpha)?);
    println!("cD^a y     = {}", left_caputo_derivative(&y, alpha)?);

    // (t - a)^(a-1) sits on a pole of 1/Gamma and is annihilated.
    let kernel = PowerSum::monomial(iv, Anchor::Left, 1.0, alpha.value() - 1.0)?;
    println!("D^a t^(a-1) = {}", left_rl_derivative(&kernel, alpha)?);

    // Right-anchored sums live in powers of (b - t).
    let z = PowerSum::new(iv, Anchor::Right, [(1.0, 0.0), (-2.0, 1.0)])?;
    let iz = right_frac_integral(&z, alpha)?;
    println!("I_b^a z    = {iz}");
    println!("D_b^a I_b^a z = {}", right_rl_derivative(&iz, alpha)?);

    // Converting between anchors is exact for integer exponents.
    let line = PowerSum::monomial(iv, Anchor::Left, 1.0, 1.0)?;
    println!("t as a sum in (1 - t): {}", line.reanchored()?);
    Ok(())
}
