//! The fundamental lemma: constants pair to zero with every variation, and any
//! non-constant `f` has a variation that detects it.
//!
//! `cargo run --example du_bois_reymond`

use fracvar::euler_lagrange::{dubois_reymond_eta, dubois_reymond_pairing, weighted_norm_sq, Variation};
use fracvar::power::{Anchor, PowerSum};
use fracvar::{FracOrder, Interval};

fn main() -> fracvar::Result<()> {
    let alpha = FracOrder::new(0.5)?;
    let iv = Interval::unit();

    // eta = t^a - t vanishes at both ends.
    let eta = Variation::exact(PowerSum::new(iv, Anchor::Left, [(1.0, 0.5), (-1.0, 1.0)])?, alpha)?;
    let c = PowerSum::constant(iv, Anchor::Left, 2.0);
    println!("pairing of a constant: {:.3e}", dubois_reymond_pairing(&c, &eta, 64)?);

    let f = PowerSum::new(iv, Anchor::Left, [(1.0, 0.0), (1.0, 1.5)])?;
    let (eta_f, k) = dubois_reymond_eta(&f, alpha)?;
    println!("f = {f}");
    println!("k = {k:.15}");
    println!("eta(0) = {:.3e}, eta(1) = {:.3e}", eta_f.value(0.0)?, eta_f.value(1.0)?);
    println!("pairing {:.15}", dubois_reymond_pairing(&f, &eta_f, 64)?);
    println!("norm    {:.15}", weighted_norm_sq(&f, k, alpha)?);
    Ok(())
}
