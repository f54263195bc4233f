//! Property suites run by `fracvar verify`: operator identities on random
//! power sums, agreement of the grid operators with the exact ones, the
//! du Bois-Reymond lemma in both directions, and fractional integration by
//! parts on constructed pairs.
//!
//! All randomness comes from fixed seeds, so every run checks the same cases.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::domain::{FracOrder, Interval};
use crate::error::Result;
use crate::euler_lagrange::{
    dubois_reymond_eta, dubois_reymond_eta_grid, dubois_reymond_pairing, weighted_norm_sq, Variation,
};
use crate::grid::{caputo_left_grid, rl_left_integral_grid, rl_right_integral_grid, GridFn};
use crate::power::{
    left_caputo_derivative, left_frac_integral, left_rl_derivative, mixed_integral, right_frac_integral,
    right_rl_derivative, Anchor, PowerSum,
};
use crate::quadrature::{JacobiRule, DEFAULT_NODES};
use crate::ritz::CheckOutcome;
use crate::special::{beta, gamma};

/// Coefficientwise tolerance of the exact identities.
pub const IDENTITY_TOL: f64 = 1e-12;

/// Interior sup-error bound of the grid operators at [`GRID_CELLS`].
pub const GRID_TOL: f64 = 1e-3;
pub const GRID_CELLS: usize = 4096;

/// Fraction of the interval excluded at each end when measuring grid error.
pub const INTERIOR_MARGIN: f64 = 0.05;

pub const PAIRING_TOL: f64 = 1e-10;
pub const CONVERSE_RTOL: f64 = 1e-8;
pub const BYPARTS_TOL: f64 = 1e-6;

const SEED: u64 = 0xf4ac_7a1e;

pub fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Random order in `[0.1, 0.95]`.
pub fn random_order(rng: &mut impl Rng) -> FracOrder {
    FracOrder::new(rng.gen_range(0.1..=0.95)).expect("in range")
}

/// One to four terms with coefficients in `[-2, 2]` and exponents in
/// `{0} ∪ [α, 3]`, so both the sum and its Caputo derivative are continuous.
pub fn random_power_sum(rng: &mut impl Rng, interval: Interval, anchor: Anchor, alpha: FracOrder) -> PowerSum {
    let terms: Vec<(f64, f64)> = (0..rng.gen_range(1..=4))
        .map(|_| {
            let c = rng.gen_range(-2.0..=2.0);
            let e = if rng.gen_bool(0.2) {
                0.0
            } else {
                rng.gen_range(alpha.value()..=3.0)
            };
            (c, e)
        })
        .collect();
    PowerSum::new(interval, anchor, terms).expect("finite terms with exponent >= 0")
}

/// `max |c_p - c_q| / max(1, max |c_p|)` after merging equal exponents.
pub fn coefficient_distance(p: &PowerSum, q: &PowerSum) -> Result<f64> {
    let scale = p.terms().iter().map(|t| t.coeff.abs()).fold(1.0, f64::max);
    let d = p.minus(q)?;
    Ok(d.terms().iter().map(|t| t.coeff.abs()).fold(0.0, f64::max) / scale)
}

fn outcome(name: impl Into<String>, passed: bool, detail: String) -> CheckOutcome {
    CheckOutcome {
        name: name.into(),
        passed,
        exercised: true,
        detail,
    }
}

fn from_result(name: &str, r: Result<CheckOutcome>) -> CheckOutcome {
    r.unwrap_or_else(|e| outcome(name, false, format!("error: {e}")))
}

/// Worst coefficient distance of `identity` over `count` random cases.
fn identity_check(
    name: &str,
    stream: u64,
    count: usize,
    identity: impl Fn(&mut ChaCha8Rng) -> Result<(PowerSum, PowerSum)>,
) -> CheckOutcome {
    from_result(name, (|| {
        let mut rng = rng(stream);
        let mut worst = 0.0_f64;
        for _ in 0..count {
            let (lhs, rhs) = identity(&mut rng)?;
            worst = worst.max(coefficient_distance(&lhs, &rhs)?);
        }
        Ok(outcome(
            name,
            worst <= IDENTITY_TOL,
            format!("max coefficient error {worst:.2e} over {count} cases"),
        ))
    })())
}

/// Interior sup error of a grid operator against its exact counterpart.
pub fn grid_error(approx: &GridFn, exact: &PowerSum) -> Result<f64> {
    let iv = approx.interval();
    let (lo, hi) = (
        iv.a() + INTERIOR_MARGIN * iv.len(),
        iv.b() - INTERIOR_MARGIN * iv.len(),
    );
    let mut worst = 0.0_f64;
    for (i, v) in approx.values().iter().enumerate() {
        let t = approx.node(i);
        if t >= lo && t <= hi {
            worst = worst.max((v - exact.eval(t)?).abs());
        }
    }
    Ok(worst)
}

/// Grid operator paired with its exact counterpart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridOp {
    Caputo,
    LeftIntegral,
    RightIntegral,
}

impl GridOp {
    pub const ALL: [GridOp; 3] = [GridOp::Caputo, GridOp::LeftIntegral, GridOp::RightIntegral];

    pub fn name(self) -> &'static str {
        match self {
            GridOp::Caputo => "Caputo (L1)",
            GridOp::LeftIntegral => "left RL integral",
            GridOp::RightIntegral => "right RL integral",
        }
    }

    pub fn anchor(self) -> Anchor {
        match self {
            GridOp::RightIntegral => Anchor::Right,
            _ => Anchor::Left,
        }
    }

    /// Interior sup error of the grid operator on `cells` cells.
    pub fn error(self, f: &PowerSum, alpha: FracOrder, cells: usize) -> Result<f64> {
        let g = GridFn::from_power_sum(f, cells)?;
        let (approx, exact) = match self {
            GridOp::Caputo => (caputo_left_grid(&g, alpha)?, left_caputo_derivative(f, alpha)?),
            GridOp::LeftIntegral => (rl_left_integral_grid(&g, alpha)?, left_frac_integral(f, alpha)?),
            GridOp::RightIntegral => (rl_right_integral_grid(&g, alpha)?, right_frac_integral(f, alpha)?),
        };
        grid_error(&approx, &exact)
    }
}

/// Operator identities, closed forms, quadrature exactness, and grid
/// agreement.
pub fn operator_suite() -> Vec<CheckOutcome> {
    let iv = Interval::unit();
    let mut checks = Vec::new();

    checks.push(from_result("power rule", (|| {
        // I^0.5 (t-a)^1 = Γ(2)/Γ(2.5) (t-a)^1.5
        let half = FracOrder::new(0.5)?;
        let p = PowerSum::monomial(iv, Anchor::Left, 1.0, 1.0)?;
        let i = left_frac_integral(&p, half)?;
        let want = gamma(2.0)? / gamma(2.5)?;
        let err = (i.terms()[0].coeff - want).abs() + (i.terms()[0].exponent - 1.5).abs();
        Ok(outcome("power rule", err <= IDENTITY_TOL, format!("I^0.5 t = {i}, error {err:.2e}")))
    })()));

    checks.push(from_result("pole annihilation", (|| {
        let mut rng = rng(1);
        let mut worst = 0usize;
        for _ in 0..20 {
            let alpha = random_order(&mut rng);
            let a = alpha.value();
            let left = PowerSum::monomial(iv, Anchor::Left, 1.0, a - 1.0)?;
            let right = PowerSum::monomial(iv, Anchor::Right, 1.0, a - 1.0)?;
            worst = worst
                .max(left_rl_derivative(&left, alpha)?.terms().len())
                .max(right_rl_derivative(&right, alpha)?.terms().len());
        }
        Ok(outcome(
            "pole annihilation",
            worst == 0,
            "D^a (t-a)^(a-1) = 0 and D^a (b-t)^(a-1) = 0 for 20 orders".into(),
        ))
    })()));

    checks.push(identity_check("semigroup I^a I^b = I^(a+b)", 2, 100, |rng| {
        let a = FracOrder::new(rng.gen_range(0.05..=0.5))?;
        let b = FracOrder::new(rng.gen_range(0.05..=0.5))?;
        let f = random_power_sum(rng, iv, Anchor::Left, a);
        let lhs = left_frac_integral(&left_frac_integral(&f, b)?, a)?;
        let rhs = left_frac_integral(&f, FracOrder::new(a.value() + b.value())?)?;
        Ok((lhs, rhs))
    }));

    checks.push(identity_check("D^a I^a f = f (left)", 3, 100, |rng| {
        let a = random_order(rng);
        let f = random_power_sum(rng, iv, Anchor::Left, a);
        Ok((left_rl_derivative(&left_frac_integral(&f, a)?, a)?, f))
    }));

    checks.push(identity_check("D^a I^a f = f (right)", 4, 100, |rng| {
        let a = random_order(rng);
        let f = random_power_sum(rng, iv, Anchor::Right, a);
        Ok((right_rl_derivative(&right_frac_integral(&f, a)?, a)?, f))
    }));

    checks.push(identity_check("cD^a I^a f = f", 5, 100, |rng| {
        let a = random_order(rng);
        let f = random_power_sum(rng, iv, Anchor::Left, a);
        Ok((left_caputo_derivative(&left_frac_integral(&f, a)?, a)?, f))
    }));

    checks.push(identity_check("I^a cD^a f = f - f(a)", 6, 100, |rng| {
        let a = random_order(rng);
        let f = random_power_sum(rng, iv, Anchor::Left, a);
        let rhs = f.minus(&PowerSum::constant(iv, Anchor::Left, f.value_at_anchor()?))?;
        Ok((left_frac_integral(&left_caputo_derivative(&f, a)?, a)?, rhs))
    }));

    checks.push(identity_check("linearity", 7, 100, |rng| {
        let a = random_order(rng);
        let (f, g) = (
            random_power_sum(rng, iv, Anchor::Left, a),
            random_power_sum(rng, iv, Anchor::Left, a),
        );
        let (c, d) = (rng.gen_range(-2.0..=2.0), rng.gen_range(-2.0..=2.0));
        let lhs = left_frac_integral(&f.scaled(c).plus(&g.scaled(d))?, a)?;
        let rhs = left_frac_integral(&f, a)?.scaled(c).plus(&left_frac_integral(&g, a)?.scaled(d))?;
        Ok((lhs, rhs))
    }));

    checks.push(from_result("Gauss-Jacobi exactness", (|| {
        let mut worst = 0.0_f64;
        for (n, ga, de) in [(5, -0.5, 0.0), (8, -0.75, -0.25), (12, 0.3, 1.5), (20, -0.5, -0.5)] {
            let rule = JacobiRule::new(n, ga, de)?;
            for k in 0..2 * n {
                // ∫ (1-x)^γ (1+x)^δ ((1+x)/2)^k dx = 2^(γ+δ+1) B(γ+1, δ+k+1)
                let exact = 2f64.powf(ga + de + 1.0) * beta(ga + 1.0, de + k as f64 + 1.0)?;
                let got = rule.integrate(|x| (0.5 * (1.0 + x)).powi(k as i32));
                worst = worst.max((got - exact).abs() / exact.abs());
            }
        }
        let b = beta(1.5, 0.5)?;
        let pi_err = (b - std::f64::consts::FRAC_PI_2).abs();
        Ok(outcome(
            "Gauss-Jacobi exactness",
            worst <= 1e-12 && pi_err <= 1e-12,
            format!("max relative error {worst:.2e} on degree <= 2n-1; |B(1.5,0.5) - pi/2| = {pi_err:.2e}"),
        ))
    })()));

    for op in GridOp::ALL {
        let name = format!("grid {} vs exact", op.name());
        checks.push(from_result(&name.clone(), (|| {
            let mut rng = rng(10 + op as u64);
            let mut worst = 0.0_f64;
            for _ in 0..4 {
                let a = random_order(&mut rng);
                let f = random_power_sum(&mut rng, iv, op.anchor(), a);
                worst = worst.max(op.error(&f, a, GRID_CELLS)?);
            }
            Ok(outcome(
                name.clone(),
                worst <= GRID_TOL,
                format!("interior sup error {worst:.2e} at N = {GRID_CELLS}"),
            ))
        })()));
    }
    checks
}

/// Size of the random function suite for grid convergence.
pub const GRID_SUITE_SIZE: usize = 20;

/// Grid sizes of the convergence study.
pub const GRID_REFINEMENTS: [usize; 5] = [256, 512, 1024, 2048, 4096];

/// Errors below this are rounding noise in the convergence study.
pub const ROUNDOFF_FLOOR: f64 = 1e-13;

/// Each refinement lowers the error, or the error is already at rounding level
/// (operators are exact on some inputs, for example L1 on linear functions).
pub fn decreases_monotonically(errors: &[f64]) -> bool {
    errors.windows(2).all(|w| w[1] < w[0] || w[1] <= ROUNDOFF_FLOOR)
}

/// Interior sup error of each grid operator against its exact result, over
/// [`GRID_SUITE_SIZE`] random power sums (cycling through [`GridOp::ALL`]),
/// one row per function and one column per entry of `cells`.
pub fn grid_convergence(cells: &[usize]) -> Result<Vec<(GridOp, Vec<f64>)>> {
    let iv = Interval::unit();
    let mut rng = rng(20);
    (0..GRID_SUITE_SIZE)
        .map(|i| {
            let op = GridOp::ALL[i % GridOp::ALL.len()];
            let a = random_order(&mut rng);
            let f = random_power_sum(&mut rng, iv, op.anchor(), a);
            let errors = cells.iter().map(|&n| op.error(&f, a, n)).collect::<Result<Vec<_>>>()?;
            Ok((op, errors))
        })
        .collect()
}

/// Random element of the variation space: `Σ c (τ^e - τ^α)` on `[0, 1]`.
pub fn random_variation(rng: &mut impl Rng, alpha: FracOrder) -> Result<Variation> {
    let a = alpha.value();
    let iv = Interval::unit();
    let mut terms = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let c = rng.gen_range(-2.0..=2.0);
        let e = rng.gen_range(a..=a + 3.0);
        terms.push((c, e));
        terms.push((-c, a));
    }
    Variation::exact(PowerSum::new(iv, Anchor::Left, terms)?, alpha)
}

/// du Bois-Reymond lemma: constant `f` pairs to zero with every variation;
/// for non-constant `f` the constructed variation pairs to the positive
/// weighted norm of `f - k`.
pub fn lemma_suite() -> Vec<CheckOutcome> {
    let iv = Interval::unit();
    let mut checks = Vec::new();

    checks.push(from_result("forward: constant f", (|| {
        let mut rng = rng(20);
        let mut worst = 0.0_f64;
        for _ in 0..50 {
            let alpha = random_order(&mut rng);
            let c = rng.gen_range(-2.0..=2.0);
            let eta = random_variation(&mut rng, alpha)?;
            let f = PowerSum::constant(iv, Anchor::Left, c);
            worst = worst.max(dubois_reymond_pairing(&f, &eta, DEFAULT_NODES)?.abs());
        }
        Ok(outcome(
            "forward: constant f",
            worst <= PAIRING_TOL,
            format!("max |pairing| {worst:.2e} over 50 variations"),
        ))
    })()));

    checks.push(from_result("converse: constructed variation", (|| {
        let mut rng = rng(21);
        let mut worst = 0.0_f64;
        let mut min_norm = f64::INFINITY;
        for _ in 0..20 {
            let alpha = random_order(&mut rng);
            let f = loop {
                let f = random_power_sum(&mut rng, iv, Anchor::Left, alpha);
                if f.max_exponent().is_some_and(|e| e > 0.0) {
                    break f;
                }
            };
            let (eta, k) = dubois_reymond_eta(&f, alpha)?;
            let pairing = dubois_reymond_pairing(&f, &eta, DEFAULT_NODES)?;
            let norm = weighted_norm_sq(&f, k, alpha)?;
            worst = worst.max((pairing - norm).abs() / norm);
            min_norm = min_norm.min(norm);
        }
        Ok(outcome(
            "converse: constructed variation",
            worst <= CONVERSE_RTOL && min_norm > 0.0,
            format!("max relative gap {worst:.2e}, min norm {min_norm:.3e} over 20 f"),
        ))
    })()));

    checks.push(from_result("eta(b) - eta(a) identity", (|| {
        // (1/Γ(α)) ∫ (b-s)^(α-1) cD^α η ds = I^α cD^α η (b) = η(b) - η(a)
        let mut rng = rng(22);
        let mut worst = 0.0_f64;
        for _ in 0..20 {
            let alpha = random_order(&mut rng);
            let f = random_power_sum(&mut rng, iv, Anchor::Left, alpha);
            let (eta, _) = dubois_reymond_eta(&f, alpha)?;
            let one = PowerSum::constant(iv, Anchor::Left, 1.0);
            let lhs = dubois_reymond_pairing(&one, &eta, DEFAULT_NODES)?;
            let rhs = eta.value(1.0)? - eta.value(0.0)?;
            worst = worst.max((lhs - rhs).abs());
        }
        Ok(outcome(
            "eta(b) - eta(a) identity",
            worst <= PAIRING_TOL,
            format!("max error {worst:.2e} over 20 variations"),
        ))
    })()));

    checks.push(from_result("sampled construction", (|| {
        let alpha = FracOrder::new(0.5)?;
        let f = PowerSum::new(iv, Anchor::Left, [(1.0, 1.0), (-0.5, 2.0)])?;
        let (exact, k) = dubois_reymond_eta(&f, alpha)?;
        let (approx, kg) = dubois_reymond_eta_grid(&GridFn::from_power_sum(&f, 2048)?, alpha)?;
        let mut worst = (k - kg).abs();
        for i in 1..20 {
            let t = i as f64 / 20.0;
            worst = worst.max((exact.value(t)? - approx.value(t)?).abs());
        }
        Ok(outcome(
            "sampled construction",
            worst <= 1e-5,
            format!("grid eta and k within {worst:.2e} of the exact construction"),
        ))
    })()));
    checks
}

/// Both sides of `∫ f D^α_{a+} g = ∫ g D^α_{b-} f` for `f = I^α_{b-} φ`,
/// `g = I^α_{a+} ψ`.
pub fn by_parts_sides(phi: &PowerSum, psi: &PowerSum, alpha: FracOrder) -> Result<(f64, f64)> {
    let f = right_frac_integral(phi, alpha)?;
    let g = left_frac_integral(psi, alpha)?;
    let lhs = mixed_integral(&left_rl_derivative(&g, alpha)?, &f)?;
    let rhs = mixed_integral(&g, &right_rl_derivative(&f, alpha)?)?;
    Ok((lhs, rhs))
}

/// Fractional integration by parts on the canonical pair and on ten random
/// pairs with power-sum densities.
pub fn by_parts_suite() -> Vec<CheckOutcome> {
    let iv = Interval::unit();
    let mut checks = Vec::new();
    checks.push(from_result("canonical pair", (|| {
        let alpha = FracOrder::new(0.5)?;
        let (lhs, rhs) = by_parts_sides(
            &PowerSum::constant(iv, Anchor::Right, 1.0),
            &PowerSum::constant(iv, Anchor::Left, 1.0),
            alpha,
        )?;
        let want = (2.0 / 3.0) / gamma(1.5)?;
        Ok(outcome(
            "canonical pair",
            (lhs - want).abs() <= BYPARTS_TOL && (rhs - want).abs() <= BYPARTS_TOL,
            format!("lhs {lhs:.10}, rhs {rhs:.10}, expected {want:.10}"),
        ))
    })()));
    checks.push(from_result("random pairs", (|| {
        let mut rng = rng(30);
        let mut worst = 0.0_f64;
        for _ in 0..10 {
            let alpha = FracOrder::new(rng.gen_range(0.1..0.95))?;
            let phi = random_power_sum(&mut rng, iv, Anchor::Right, alpha);
            let psi = random_power_sum(&mut rng, iv, Anchor::Left, alpha);
            let (lhs, rhs) = by_parts_sides(&phi, &psi, alpha)?;
            worst = worst.max((lhs - rhs).abs());
        }
        Ok(outcome(
            "random pairs",
            worst <= BYPARTS_TOL,
            format!("max |lhs - rhs| {worst:.2e} over 10 pairs"),
        ))
    })()));
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_all_pass(checks: &[CheckOutcome]) {
        for c in checks {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn operator_suite_passes() {
        assert_all_pass(&operator_suite());
    }

    #[test]
    fn lemma_suite_passes() {
        assert_all_pass(&lemma_suite());
    }

    #[test]
    fn by_parts_suite_passes() {
        assert_all_pass(&by_parts_suite());
    }

    #[test]
    fn random_sums_are_deterministic() {
        let a = FracOrder::new(0.5).unwrap();
        let p = random_power_sum(&mut rng(9), Interval::unit(), Anchor::Left, a);
        let q = random_power_sum(&mut rng(9), Interval::unit(), Anchor::Left, a);
        assert_eq!(p, q);
    }
}
