//! Runs the operator, lemma and integration-by-parts property suites.
//!
//! `cargo run --release --example verification`

use fracvar::validation::{by_parts_sides, by_parts_suite, lemma_suite, operator_suite};
use fracvar::power::{Anchor, PowerSum};
use fracvar::{FracOrder, Interval};

fn main() -> fracvar::Result<()> {
    let iv = Interval::unit();
    let one_left = PowerSum::constant(iv, Anchor::Left, 1.0);
    let one_right = PowerSum::constant(iv, Anchor::Right, 1.0);
    let (lhs, rhs) = by_parts_sides(&one_right, &one_left, FracOrder::new(0.5)?)?;
    println!("by parts with phi = psi = 1: {lhs:.12} = {rhs:.12}");

    let mut failed = 0;
    for check in operator_suite().into_iter().chain(lemma_suite()).chain(by_parts_suite()) {
        failed += usize::from(!check.passed);
        println!("{} {}: {}", if check.passed { "PASS" } else { "FAIL" }, check.name, check.detail);
    }
    println!("{failed} failures");
    Ok(())
}
