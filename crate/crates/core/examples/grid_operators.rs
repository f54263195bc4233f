//! Sampled operators on uniform grids, compared with the exact power-sum results.
//!
//! `cargo run --release --example grid_operators`

use fracvar::grid::{caputo_left_grid, rl_left_integral_grid, rl_right_integral_grid, GridFn};
use fracvar::power::{left_caputo_derivative, left_frac_integral, right_frac_integral, Anchor, PowerSum};
use fracvar::{FracOrder, Interval};

fn sup_error(approx: &GridFn, exact: &PowerSum) -> fracvar::Result<f64> {
    let mut worst = 0.0_f64;
    for (i, v) in approx.values().iter().enumerate() {
        worst = worst.max((v - exact.eval(approx.node(i))?).abs());
    }
    Ok(worst)
}

fn main() -> fracvar::Result<()> {
    let iv = Interval::unit();
    let alpha = FracOrder::new(0.6)?;
    let y = PowerSum::new(iv, Anchor::Left, [(1.0, 1.0), (0.5, 2.5)])?;
    let z = PowerSum::new(iv, Anchor::Right, [(1.0, 1.0), (0.5, 2.5)])?;
    let caputo = left_caputo_derivative(&y, alpha)?;
    let left = left_frac_integral(&y, alpha)?;
    let right = right_frac_integral(&z, alpha)?;

    println!("{:>6} {:>12} {:>12} {:>12}", "N", "L1 Caputo", "left I^a", "right I^a");
    for cells in [64, 256, 1024, 4096] {
        let g = GridFn::from_power_sum(&y, cells)?;
        let h = GridFn::from_power_sum(&z, cells)?;
        println!(
            "{cells:>6} {:>12.3e} {:>12.3e} {:>12.3e}",
            sup_error(&caputo_left_grid(&g, alpha)?, &caputo)?,
            sup_error(&rl_left_integral_grid(&g, alpha)?, &left)?,
            sup_error(&rl_right_integral_grid(&h, alpha)?, &right)?,
        );
    }
    Ok(())
}
