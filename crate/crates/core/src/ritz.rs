//! Direct minimization over fractional power trial functions.
//!
//! With `τ = (t-a)/(b-a)` the trial space is
//!
//! ```text
//! y(t) = y_a + (y_b - y_a) τ^α + Σ_k c_k (τ^(α+k) - τ^α),   k = 1..m
//! ```
//!
//! Every trial function meets the boundary values and has a bounded Caputo
//! derivative. For quadratic Lagrangians the functional restricted to this
//! space is a quadratic form in `c` whose entries are Beta integrals.

use rand::Rng;

use crate::domain::FracOrder;
use crate::error::{Error, Result};
use crate::euler_lagrange::{first_variation, integral_form_residual, ResidualReport, Variation, DEFAULT_SAMPLES};
use crate::functional::{
    convexity_gap, evaluate_weighted, evaluate_weighted_exact, Trajectory, VariationalProblem,
};
use crate::power::{left_caputo_derivative, weighted_inner_product, Anchor, PowerSum, EXPONENT_TOL};
use crate::quadrature::DEFAULT_NODES;

/// Edge length of the initial Nelder-Mead simplex.
pub const SIMPLEX_EDGE: f64 = 0.1;

/// Tolerance on the first variation of a verified minimizer, relative to
/// `max(1, |J|)`.
pub const STATIONARITY_TOL: f64 = 1e-8;

/// Lowest admissible convexity gap.
pub const CONVEXITY_TOL: f64 = 1e-9;

/// Seed of the competitor stream used by [`verify_minimizer`].
pub const COMPETITOR_SEED: u64 = 0x5eed_4a11;

#[derive(Debug, Clone, PartialEq)]
pub struct SolverOptions {
    /// Simplex diameter at which the search stops.
    pub x_tol: f64,
    /// Spread of simplex values at which the search stops.
    pub f_tol: f64,
    pub max_iter: usize,
    /// Quadrature nodes per panel.
    pub quad_n: usize,
    /// Chebyshev-Lobatto samples of the residual report.
    pub residual_samples: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            x_tol: 1e-9,
            f_tol: 1e-12,
            max_iter: 5000,
            quad_n: DEFAULT_NODES,
            residual_samples: DEFAULT_SAMPLES,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RitzBasis {
    /// `y_a + (y_b - y_a) τ^α`.
    pub boundary_interpolant: PowerSum,
    /// `τ^(α+k) - τ^α`, `k = 1..=m`.
    pub modes: Vec<PowerSum>,
    pub alpha: FracOrder,
}

impl RitzBasis {
    /// `boundary_interpolant + Σ coefficients[k]·modes[k]`.
    pub fn combine(&self, coefficients: &[f64]) -> Result<PowerSum> {
        if coefficients.len() != self.modes.len() {
            return Err(Error::Unsupported(format!(
                "{} coefficients for {} modes",
                coefficients.len(),
                self.modes.len()
            )));
        }
        let mut y = self.boundary_interpolant.clone();
        for (c, mode) in coefficients.iter().zip(&self.modes) {
            y = y.plus(&mode.scaled(*c))?;
        }
        Ok(y)
    }
}

/// `c·τ^e` as a left power sum on the problem interval.
fn scaled_power(prob: &VariationalProblem, c: f64, e: f64) -> Result<PowerSum> {
    PowerSum::monomial(prob.interval, Anchor::Left, c / prob.interval.len().powf(e), e)
}

pub fn build_basis(prob: &VariationalProblem, m: usize) -> Result<RitzBasis> {
    let a = prob.alpha.value();
    let lift = PowerSum::constant(prob.interval, Anchor::Left, prob.y_a)
        .plus(&scaled_power(prob, prob.y_b - prob.y_a, a)?)?;
    let base = scaled_power(prob, 1.0, a)?;
    let modes = (1..=m)
        .map(|k| scaled_power(prob, 1.0, a + k as f64)?.minus(&base))
        .collect::<Result<Vec<_>>>()?;
    Ok(RitzBasis {
        boundary_interpolant: lift,
        modes,
        alpha: prob.alpha,
    })
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub coefficients: Vec<f64>,
    pub trajectory: Trajectory,
    pub value: f64,
    pub residual: ResidualReport,
    pub iterations: usize,
    pub converged: bool,
}

/// Assembles a [`SolveResult`] for given coefficients: trajectory, weighted
/// value (exact for quadratic Lagrangians) and residual report.
pub fn evaluate_candidate(
    prob: &VariationalProblem,
    basis: &RitzBasis,
    coefficients: Vec<f64>,
    opts: &SolverOptions,
) -> Result<SolveResult> {
    let trajectory = Trajectory::exact(basis.combine(&coefficients)?, prob.alpha)?;
    let value = match prob.lagrangian.quadratic_coeffs() {
        Some(_) => evaluate_weighted_exact(prob, &trajectory)?,
        None => evaluate_weighted(prob, &trajectory, opts.quad_n)?,
    };
    let residual = integral_form_residual(prob, &trajectory, opts.residual_samples, opts.quad_n)?;
    Ok(SolveResult {
        coefficients,
        trajectory,
        value,
        residual,
        iterations: 0,
        converged: true,
    })
}

/// Solves `A c = -r` for symmetric positive semidefinite `A` by Cholesky with
/// diagonal pivoting. Pivots below `64·ε·max diag` mark a singular system.
fn pivoted_cholesky_solve(mut a: Vec<Vec<f64>>, rhs: &[f64]) -> Result<Vec<f64>> {
    let n = rhs.len();
    let scale = (0..n).map(|i| a[i][i].abs()).fold(0.0, f64::max);
    let tol = 64.0 * f64::EPSILON * scale;
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[i][i].total_cmp(&a[j][j]))
            .expect("k < n");
        if a[p][p] <= tol {
            let modes: Vec<usize> = perm[k..].iter().map(|i| i + 1).collect();
            let what = if a[p][p] < -tol { "indefinite" } else { "singular" };
            return Err(Error::Degenerate(format!(
                "{what} quadratic form on modes {modes:?} (pivot {:e})",
                a[p][p]
            )));
        }
        a.swap(k, p);
        for row in a.iter_mut() {
            row.swap(k, p);
        }
        perm.swap(k, p);
        let d = a[k][k].sqrt();
        for row in &mut a[k..] {
            row[k] /= d;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] -= a[i][k] * a[j][k];
            }
        }
    }
    // L z = -P r, then L^T w = z, c = P^T w
    let mut z: Vec<f64> = perm.iter().map(|&i| -rhs[i]).collect();
    for i in 0..n {
        for j in 0..i {
            z[i] -= a[i][j] * z[j];
        }
        z[i] /= a[i][i];
    }
    for i in (0..n).rev() {
        for j in i + 1..n {
            z[i] -= a[j][i] * z[j];
        }
        z[i] /= a[i][i];
    }
    let mut c = vec![0.0; n];
    for (k, &i) in perm.iter().enumerate() {
        c[i] = z[k];
    }
    Ok(c)
}

/// Exact minimizer over the trial space for a quadratic Lagrangian.
///
/// A Lagrangian whose quadratic part vanishes on the trial space (for
/// instance `L = 0`) yields all-zero coefficients.
pub fn solve_quadratic(prob: &VariationalProblem, m: usize, opts: &SolverOptions) -> Result<SolveResult> {
    let c = prob.lagrangian.quadratic_coeffs().ok_or_else(|| {
        Error::Unsupported(format!(
            "solve_quadratic needs a quadratic lagrangian, got '{}'",
            prob.lagrangian.label()
        ))
    })?;
    let basis = build_basis(prob, m)?;
    let alpha = prob.alpha;
    let w = prob.weight_exponent();
    let ip = |p: &PowerSum, q: &PowerSum| weighted_inner_product(p, q, w, alpha);
    let one = PowerSum::constant(prob.interval, Anchor::Left, 1.0);

    let y0 = &basis.boundary_interpolant;
    let v0 = left_caputo_derivative(y0, alpha)?;
    let dmodes = basis
        .modes
        .iter()
        .map(|p| left_caputo_derivative(p, alpha))
        .collect::<Result<Vec<_>>>()?;

    let mut gram = vec![vec![0.0; m]; m];
    let mut load = vec![0.0; m];
    for k in 0..m {
        for l in 0..=k {
            let g = c.c_vv * ip(&dmodes[k], &dmodes[l])? + c.c_uu * ip(&basis.modes[k], &basis.modes[l])?;
            gram[k][l] = g;
            gram[l][k] = g;
        }
        load[k] = c.c_vv * ip(&v0, &dmodes[k])?
            + c.c_uu * ip(y0, &basis.modes[k])?
            + 0.5 * (c.c_u * ip(&basis.modes[k], &one)? + c.c_v * ip(&dmodes[k], &one)?);
    }

    let all_zero = gram.iter().flatten().all(|&g| g == 0.0) && load.iter().all(|&r| r == 0.0);
    let coefficients = if m == 0 || all_zero {
        vec![0.0; m]
    } else {
        pivoted_cholesky_solve(gram, &load)?
    };
    evaluate_candidate(prob, &basis, coefficients, opts)
}

struct SimplexOutcome {
    x: Vec<f64>,
    iterations: usize,
    converged: bool,
}

/// Nelder-Mead with reflection 1, expansion 2, contraction 1/2, shrink 1/2.
fn nelder_mead(
    mut f: impl FnMut(&[f64]) -> Result<f64>,
    x0: Vec<f64>,
    opts: &SolverOptions,
) -> Result<SimplexOutcome> {
    let n = x0.len();
    let mut eval = |x: &[f64]| -> Result<f64> {
        match f(x) {
            Ok(v) if v.is_finite() => Ok(v),
            Ok(v) => Err(Error::Search {
                coefficients: x.to_vec(),
                reason: format!("value {v}"),
            }),
            Err(e) => Err(Error::Search {
                coefficients: x.to_vec(),
                reason: e.to_string(),
            }),
        }
    };
    let mut simplex = Vec::with_capacity(n + 1);
    simplex.push((eval(&x0)?, x0.clone()));
    for i in 0..n {
        let mut x = x0.clone();
        x[i] += SIMPLEX_EDGE;
        simplex.push((eval(&x)?, x));
    }
    let along = |from: &[f64], to: &[f64], s: f64| -> Vec<f64> {
        from.iter().zip(to).map(|(p, q)| p + s * (q - p)).collect()
    };

    let mut iterations = 0;
    loop {
        simplex.sort_by(|p, q| p.0.total_cmp(&q.0));
        let best = &simplex[0].1;
        let diameter = simplex[1..]
            .iter()
            .map(|(_, x)| x.iter().zip(best).map(|(p, q)| (p - q).powi(2)).sum::<f64>().sqrt())
            .fold(0.0, f64::max);
        let spread = simplex[n].0 - simplex[0].0;
        if diameter <= opts.x_tol && spread <= opts.f_tol {
            return Ok(SimplexOutcome {
                x: simplex.swap_remove(0).1,
                iterations,
                converged: true,
            });
        }
        if iterations >= opts.max_iter {
            return Ok(SimplexOutcome {
                x: simplex.swap_remove(0).1,
                iterations,
                converged: false,
            });
        }
        iterations += 1;

        let mut centroid = vec![0.0; n];
        for (_, x) in &simplex[..n] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / n as f64;
            }
        }
        let (f_worst, worst) = simplex[n].clone();
        let xr = along(&centroid, &worst, -1.0);
        let fr = eval(&xr)?;
        if fr < simplex[0].0 {
            let xe = along(&centroid, &worst, -2.0);
            let fe = eval(&xe)?;
            simplex[n] = if fe < fr { (fe, xe) } else { (fr, xr) };
            continue;
        }
        if fr < simplex[n - 1].0 {
            simplex[n] = (fr, xr);
            continue;
        }
        let (xc, outside) = if fr < f_worst {
            (along(&centroid, &xr, 0.5), true)
        } else {
            (along(&centroid, &worst, 0.5), false)
        };
        let fc = eval(&xc)?;
        if (outside && fc <= fr) || (!outside && fc < f_worst) {
            simplex[n] = (fc, xc);
            continue;
        }
        let best = simplex[0].1.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let x = along(&best, &vertex.1, 0.5);
            *vertex = (eval(&x)?, x);
        }
    }
}

/// Minimizer over the trial space by Nelder-Mead from `c = 0`, for any
/// Lagrangian. The functional is evaluated by quadrature.
pub fn solve_general(prob: &VariationalProblem, m: usize, opts: &SolverOptions) -> Result<SolveResult> {
    let basis = build_basis(prob, m)?;
    let objective = |c: &[f64]| -> Result<f64> {
        let y = Trajectory::exact(basis.combine(c)?, prob.alpha)?;
        evaluate_weighted(prob, &y, opts.quad_n)
    };
    let outcome = if m == 0 {
        SimplexOutcome {
            x: Vec::new(),
            iterations: 0,
            converged: true,
        }
    } else {
        nelder_mead(objective, vec![0.0; m], opts)?
    };
    let mut res = evaluate_candidate(prob, &basis, outcome.x, opts)?;
    res.value = evaluate_weighted(prob, &res.trajectory, opts.quad_n)?;
    res.iterations = outcome.iterations;
    res.converged = outcome.converged;
    Ok(res)
}

/// Random admissible competitor: the boundary interpolant plus one to three
/// terms `c (τ^e - τ^α)` with `e ∈ {α, α+1, α+2, 1, 2}` and `c ∈ [-2, 2]`.
pub fn random_competitor(prob: &VariationalProblem, rng: &mut impl Rng) -> Result<PowerSum> {
    let a = prob.alpha.value();
    let exponents = [a, a + 1.0, a + 2.0, 1.0, 2.0];
    let mut x = build_basis(prob, 0)?.boundary_interpolant;
    let base = scaled_power(prob, 1.0, a)?;
    for _ in 0..rng.gen_range(1..=3) {
        let e = exponents[rng.gen_range(0..exponents.len())];
        let c = rng.gen_range(-2.0..=2.0);
        x = x.plus(&scaled_power(prob, c, e)?.minus(&base.scaled(c))?)?;
    }
    Ok(x)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    /// False when the check did not apply or had nothing to test.
    pub exercised: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Variations `τ^e - τ^α` for the stationarity panel.
fn variation_panel(prob: &VariationalProblem) -> Result<Vec<Variation>> {
    let a = prob.alpha.value();
    let base = scaled_power(prob, 1.0, a)?;
    let mut exps: Vec<f64> = vec![a + 1.0, a + 2.0, a + 3.0, 1.0, 2.0];
    exps.retain(|e| (e - a).abs() > EXPONENT_TOL);
    exps.dedup_by(|p, q| (*p - *q).abs() <= EXPONENT_TOL);
    exps.into_iter()
        .map(|e| Variation::exact(scaled_power(prob, 1.0, e)?.minus(&base)?, prob.alpha))
        .collect()
}

/// Checks residual constancy, stationarity against a panel of variations,
/// and, for `c·v²` Lagrangians, the convexity gap against `trials` random
/// competitors.
pub fn verify_minimizer(
    prob: &VariationalProblem,
    res: &SolveResult,
    trials: usize,
    quad_n: usize,
) -> VerificationReport {
    let mut checks = Vec::new();
    let r = &res.residual;
    checks.push(CheckOutcome {
        name: "residual constancy".into(),
        passed: r.constant,
        exercised: true,
        detail: format!(
            "k = {:.12}, max deviation {:.3e}, tolerance {:.3e}",
            r.k_estimate, r.max_deviation, r.tolerance
        ),
    });

    let tol = STATIONARITY_TOL * res.value.abs().max(1.0);
    let stationarity = variation_panel(prob).and_then(|panel| {
        let mut worst = 0.0_f64;
        for eta in &panel {
            let fv = first_variation(prob, &res.trajectory, eta, quad_n)?;
            worst = worst.max(fv.analytic.abs());
        }
        Ok((panel.len(), worst))
    });
    checks.push(match stationarity {
        Ok((count, worst)) => CheckOutcome {
            name: "first variation".into(),
            passed: worst <= tol,
            exercised: true,
            detail: format!("max |dJ| = {worst:.3e} over {count} variations, tolerance {tol:.3e}"),
        },
        Err(e) => CheckOutcome {
            name: "first variation".into(),
            passed: false,
            exercised: true,
            detail: e.to_string(),
        },
    });

    checks.push(if !prob.lagrangian.is_v_squared_family() {
        CheckOutcome {
            name: "convexity".into(),
            passed: true,
            exercised: false,
            detail: "not applicable: lagrangian is not of the form c*v^2".into(),
        }
    } else if trials == 0 {
        CheckOutcome {
            name: "convexity".into(),
            passed: true,
            exercised: false,
            detail: "not exercised: 0 trials".into(),
        }
    } else {
        convexity_check(prob, res, trials, quad_n)
    });
    VerificationReport { checks }
}

fn convexity_check(prob: &VariationalProblem, res: &SolveResult, trials: usize, quad_n: usize) -> CheckOutcome {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(COMPETITOR_SEED);
    let mut min_gap = f64::INFINITY;
    for _ in 0..trials {
        let gap = random_competitor(prob, &mut rng)
            .and_then(|x| Trajectory::exact(x, prob.alpha))
            .and_then(|x| convexity_gap(prob, &res.trajectory, &x, quad_n));
        match gap {
            Ok(g) => min_gap = min_gap.min(g),
            Err(e) => {
                return CheckOutcome {
                    name: "convexity".into(),
                    passed: false,
                    exercised: true,
                    detail: e.to_string(),
                }
            }
        }
    }
    CheckOutcome {
        name: "convexity".into(),
        passed: min_gap >= -CONVEXITY_TOL,
        exercised: true,
        detail: format!("min gap {min_gap:.3e} over {trials} competitors"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Interval;
    use crate::functional::{Lagrangian, QuadraticCoeffs};
    use crate::special::gamma;

    fn order(a: f64) -> FracOrder {
        FracOrder::new(a).unwrap()
    }

    #[test]
    fn basis_shapes() {
        let prob = VariationalProblem::weighted_dirichlet(order(0.5));
        let b0 = build_basis(&prob, 0).unwrap();
        assert!(b0.modes.is_empty());
        assert_eq!(b0.boundary_interpolant.terms().len(), 1);
        assert_eq!(b0.boundary_interpolant.terms()[0].exponent, 0.5);
        let b2 = build_basis(&prob, 2).unwrap();
        for mode in &b2.modes {
            assert!(mode.eval(0.0).unwrap().abs() < 1e-15);
            assert!(mode.eval(1.0).unwrap().abs() < 1e-15);
            assert!(mode.min_exponent().unwrap() >= 0.5);
        }
        let homogeneous = VariationalProblem::new(Interval::unit(), order(0.5), 0.0, 0.0, Lagrangian::v_squared()).unwrap();
        assert!(build_basis(&homogeneous, 1).unwrap().boundary_interpolant.is_zero());
    }

    #[test]
    fn basis_on_a_shifted_interval() {
        let iv = Interval::new(1.0, 3.0).unwrap();
        let prob = VariationalProblem::new(iv, order(0.4), -1.0, 2.0, Lagrangian::v_squared()).unwrap();
        let b = build_basis(&prob, 3).unwrap();
        assert!((b.boundary_interpolant.eval(1.0).unwrap() + 1.0).abs() < 1e-14);
        assert!((b.boundary_interpolant.eval(3.0).unwrap() - 2.0).abs() < 1e-14);
        for mode in &b.modes {
            assert!(mode.eval(3.0).unwrap().abs() < 1e-14);
        }
    }

    #[test]
    fn quadratic_solve_recovers_power_minimizer() {
        for a in [0.25, 0.5, 0.75, 1.0] {
            let prob = VariationalProblem::weighted_dirichlet(order(a));
            let res = solve_quadratic(&prob, 3, &SolverOptions::default()).unwrap();
            assert!(res.coefficients.iter().all(|c| c.abs() <= 1e-10), "{a}: {:?}", res.coefficients);
            assert!((res.value - gamma(a + 1.0).unwrap()).abs() <= 1e-10);
            assert!(res.residual.constant);
        }
    }

    #[test]
    fn zero_lagrangian_convention() {
        let prob = VariationalProblem::weighted_dirichlet(order(0.5)).with_lagrangian(Lagrangian::zero());
        let res = solve_quadratic(&prob, 2, &SolverOptions::default()).unwrap();
        assert_eq!(res.coefficients, vec![0.0, 0.0]);
        assert_eq!(res.value, 0.0);
    }

    #[test]
    fn indefinite_form_is_degenerate() {
        let c = QuadraticCoeffs {
            c_vv: -1.0,
            ..QuadraticCoeffs::default()
        };
        let prob = VariationalProblem::weighted_dirichlet(order(0.5)).with_lagrangian(Lagrangian::quadratic(c));
        match solve_quadratic(&prob, 2, &SolverOptions::default()) {
            Err(Error::Degenerate(msg)) => assert!(msg.contains("modes [1, 2]") || msg.contains("modes [2, 1]"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn pivoted_cholesky_small_system() {
        let a = vec![vec![4.0, 2.0], vec![2.0, 3.0]];
        let c = pivoted_cholesky_solve(a, &[-2.0, -1.0]).unwrap();
        // 4x + 2y = 2, 2x + 3y = 1
        assert!((c[0] - 0.5).abs() < 1e-15 && c[1].abs() < 1e-15);
        let singular = vec![vec![1.0, 1.0], vec![1.0, 1.0]];
        assert!(matches!(pivoted_cholesky_solve(singular, &[1.0, 1.0]), Err(Error::Degenerate(_))));
    }

    #[test]
    fn general_path_agrees_with_quadratic() {
        let prob = VariationalProblem::weighted_dirichlet(order(0.5));
        let res = solve_general(&prob, 2, &SolverOptions::default()).unwrap();
        assert!((res.value - gamma(1.5).unwrap()).abs() < 1e-6);
        for i in 0..=100 {
            let t = i as f64 / 100.0;
            assert!((res.trajectory.value(t).unwrap() - t.sqrt()).abs() < 1e-4);
        }
        let m0 = solve_general(&prob, 0, &SolverOptions::default()).unwrap();
        assert_eq!(m0.iterations, 0);
        assert!(m0.coefficients.is_empty());
    }

    #[test]
    fn values_decrease_with_m() {
        let c = QuadraticCoeffs {
            c_vv: 1.0,
            c_uu: 1.0,
            ..QuadraticCoeffs::default()
        };
        let prob = VariationalProblem::weighted_dirichlet(order(0.5)).with_lagrangian(Lagrangian::quadratic(c));
        let opts = SolverOptions::default();
        let mut prev = f64::INFINITY;
        for m in 0..=3 {
            let q = solve_quadratic(&prob, m, &opts).unwrap();
            assert!(q.value <= prev + 1e-14 && q.value > 0.0);
            let g = solve_general(&prob, m, &opts).unwrap();
            assert!((g.value - q.value).abs() < 1e-6, "m {m}: {} vs {}", g.value, q.value);
            prev = q.value;
        }
    }

    #[test]
    fn verification_of_the_minimizer() {
        let prob = VariationalProblem::weighted_dirichlet(order(0.5));
        let opts = SolverOptions::default();
        let res = solve_quadratic(&prob, 3, &opts).unwrap();
        let report = verify_minimizer(&prob, &res, 25, opts.quad_n);
        assert!(report.passed(), "{report:?}");
        assert!(report.checks.iter().all(|c| c.exercised));

        let none = verify_minimizer(&prob, &res, 0, opts.quad_n);
        assert!(none.passed());
        assert!(!none.checks[2].exercised);

        let basis = build_basis(&prob, 3).unwrap();
        let perturbed = evaluate_candidate(&prob, &basis, vec![0.05, 0.0, 0.0], &opts).unwrap();
        let report = verify_minimizer(&prob, &perturbed, 5, opts.quad_n);
        assert!(!report.checks[0].passed);
        assert!(!report.passed());
    }

    #[test]
    fn competitors_are_admissible() {
        use rand::SeedableRng;
        let prob = VariationalProblem::weighted_dirichlet(order(0.25));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let x = Trajectory::exact(random_competitor(&prob, &mut rng).unwrap(), prob.alpha).unwrap();
            prob.check_admissible(&x).unwrap();
        }
    }
}
