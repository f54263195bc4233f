//! First-order conditions for the weighted functional.
//!
//! A minimizer `y` makes
//!
//! ```text
//! f(t) = (b-t)^(1-α) I^α_{b-}[(b-s)^(α-1) L_u(s, y, ᶜD^α y)](t) + L_v(t, y, ᶜD^α y)
//! ```
//!
//! constant on `[a, b]` (integral form), and on `[a, b)`
//!
//! ```text
//! (b-t)^(α-1) L_u + D^α_{b-}[(b-s)^(α-1) L_v](t) = 0
//! ```
//!
//! (differential form). The du Bois-Reymond construction turns any continuous
//! `f` into a variation `η` with `ᶜD^α η = f - k`, which is how constancy is
//! forced.

use crate::domain::{FracOrder, Interval};
use crate::error::{domain, Error, Result};
use crate::functional::{evaluate_unweighted, evaluate_weighted, Lagrangian, Repr, Trajectory, VariationalProblem};
use crate::grid::{right_kernel_transform, rl_left_integral_grid, GridFn};
use crate::power::{left_frac_integral, right_rl_derivative, weighted_inner_product, Anchor, PowerSum};
use crate::quadrature::{endpoint_singular_integral, weighted_integral};
use crate::special::gamma;

/// Endpoint tolerance for variations.
pub const VARIATION_TOL: f64 = 1e-10;

/// Step of the central difference in [`first_variation`].
pub const FD_STEP: f64 = 1e-5;

/// Relative and absolute agreement required of the two first-variation
/// estimates.
pub const FD_RTOL: f64 = 1e-6;
pub const FD_ATOL: f64 = 1e-8;

/// Relative constancy band of the integral-form residual.
pub const RESIDUAL_RTOL: f64 = 1e-6;

/// Default number of Chebyshev-Lobatto samples for residual reports.
pub const DEFAULT_SAMPLES: usize = 33;

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub sample_ts: Vec<f64>,
    pub residual_values: Vec<f64>,
    /// Mean of `residual_values`.
    pub k_estimate: f64,
    /// `max |residual - k_estimate|`.
    pub max_deviation: f64,
    pub tolerance: f64,
    /// `max_deviation <= tolerance`.
    pub constant: bool,
}

impl ResidualReport {
    fn from_samples(sample_ts: Vec<f64>, residual_values: Vec<f64>) -> Self {
        let k = residual_values.iter().sum::<f64>() / residual_values.len() as f64;
        let max_deviation = residual_values
            .iter()
            .map(|r| (r - k).abs())
            .fold(0.0, f64::max);
        let tolerance = RESIDUAL_RTOL * k.abs().max(1.0);
        Self {
            sample_ts,
            residual_values,
            k_estimate: k,
            max_deviation,
            tolerance,
            constant: max_deviation <= tolerance,
        }
    }
}

/// `count >= 2` Chebyshev-Lobatto points of `interval` in increasing order,
/// both endpoints included.
pub fn chebyshev_lobatto(interval: Interval, count: usize) -> Result<Vec<f64>> {
    if count < 2 {
        return Err(domain("chebyshev_lobatto", format!("need at least 2 samples, got {count}")));
    }
    let (mid, half) = (0.5 * (interval.a() + interval.b()), 0.5 * interval.len());
    let last = (count - 1) as f64;
    let mut ts: Vec<f64> = (0..count)
        .map(|k| mid - half * (std::f64::consts::PI * k as f64 / last).cos())
        .collect();
    ts[0] = interval.a();
    ts[count - 1] = interval.b();
    Ok(ts)
}

/// Samples the integral-form residual at `sample_count` Chebyshev-Lobatto
/// points, including `t = b` where the transform term vanishes.
pub fn integral_form_residual(
    prob: &VariationalProblem,
    y: &Trajectory,
    sample_count: usize,
    quad_n: usize,
) -> Result<ResidualReport> {
    prob.check_admissible(y)?;
    let l_u = |s: f64| prob.l_u(s, y.value(s)?, y.caputo(s)?);
    let ts = chebyshev_lobatto(prob.interval, sample_count)?;
    let mut values = Vec::with_capacity(ts.len());
    for &t in &ts {
        let transform = right_kernel_transform(l_u, prob.interval, prob.alpha, t, quad_n)?;
        let r = transform + prob.l_v(t, y.value(t)?, y.caputo(t)?)?;
        if !r.is_finite() {
            return Err(Error::Evaluation { t, value: r });
        }
        values.push(r);
    }
    Ok(ResidualReport::from_samples(ts, values))
}

/// Exact left side of the differential form at each of `t_samples`, which
/// must lie in `[a, b)`.
///
/// Needs `α < 1`, a quadratic Lagrangian, and a power-sum trajectory whose
/// `L_v` re-expands finitely around `b` (constant or integer-power Caputo
/// derivative).
pub fn differential_form_residual(
    prob: &VariationalProblem,
    y: &Trajectory,
    t_samples: &[f64],
) -> Result<Vec<f64>> {
    prob.check_admissible(y)?;
    if prob.alpha.is_one() {
        return Err(Error::Unsupported(
            "differential form needs alpha < 1; use integral_form_residual".into(),
        ));
    }
    let redirect = |why: String| {
        Error::Representation(format!("{why}; use integral_form_residual instead"))
    };
    let c = prob
        .lagrangian
        .quadratic_coeffs()
        .ok_or_else(|| redirect(format!("lagrangian '{}' is not quadratic", prob.lagrangian.label())))?;
    let (Some(u), Some(v)) = (y.as_power_sum(), y.caputo_power_sum()) else {
        return Err(redirect("trajectory is sampled".into()));
    };
    let iv = prob.interval;
    let w = prob.weight_exponent();

    // core of L_v as a left power sum, then around b
    let lv = v
        .scaled(2.0 * c.c_vv)
        .plus(&PowerSum::constant(iv, Anchor::Left, c.c_v))?;
    let lv_right = if lv.max_exponent().is_none_or(|e| e == 0.0) {
        PowerSum::constant(iv, Anchor::Right, lv.constant_term())
    } else {
        lv.reanchored()
            .map_err(|e| redirect(format!("L_v = {lv} does not re-expand around b ({e})")))?
    };
    let h = PowerSum::monomial(iv, Anchor::Right, 1.0, w)?.times(&lv_right)?;
    let dh = right_rl_derivative(&h, prob.alpha)?;

    let mut out = Vec::with_capacity(t_samples.len());
    for &t in t_samples {
        if !(t >= iv.a() && t < iv.b()) {
            return Err(domain(
                "differential_form_residual",
                format!("sample t = {t} outside [{}, {})", iv.a(), iv.b()),
            ));
        }
        let lu = 2.0 * c.c_uu * u.eval(t)? + c.c_u;
        let first = if lu == 0.0 { 0.0 } else { (iv.b() - t).powf(w) * lu };
        out.push(first + dh.eval(t)?);
    }
    Ok(out)
}

/// Element of the variation space: `η(a) = η(b) = 0`.
#[derive(Debug, Clone)]
pub struct Variation {
    inner: Trajectory,
}

impl Variation {
    fn checked(inner: Trajectory) -> Result<Self> {
        let iv = inner.interval();
        for t in [iv.a(), iv.b()] {
            let value = inner.value(t)?;
            if value.abs() > VARIATION_TOL {
                return Err(Error::Admissibility(format!(
                    "variation must vanish at both endpoints, eta({t}) = {value}"
                )));
            }
        }
        Ok(Self { inner })
    }

    pub fn exact(eta: PowerSum, alpha: FracOrder) -> Result<Self> {
        Self::checked(Trajectory::exact(eta, alpha)?)
    }

    pub fn sampled(eta: GridFn, alpha: FracOrder) -> Result<Self> {
        Self::checked(Trajectory::sampled(eta, alpha)?)
    }

    pub fn zero(interval: Interval, alpha: FracOrder) -> Self {
        Self {
            inner: Trajectory::exact(PowerSum::zero(interval, Anchor::Left), alpha)
                .expect("zero is a valid trajectory"),
        }
    }

    pub fn alpha(&self) -> FracOrder {
        self.inner.alpha()
    }

    pub fn interval(&self) -> Interval {
        self.inner.interval()
    }

    pub fn as_trajectory(&self) -> &Trajectory {
        &self.inner
    }

    pub fn value(&self, t: f64) -> Result<f64> {
        self.inner.value(t)
    }

    pub fn caputo(&self, t: f64) -> Result<f64> {
        self.inner.caputo(t)
    }
}

/// Variation `η = I^α f - k (t-a)^α/Γ(α+1)` with `k = I^α f(b)·Γ(α+1)/(b-a)^α`,
/// so that `ᶜD^α η = f - k`. `f` must have nonnegative exponents.
pub fn dubois_reymond_eta(f: &PowerSum, alpha: FracOrder) -> Result<(Variation, f64)> {
    if f.anchor() != Anchor::Left {
        return Err(domain("dubois_reymond_eta", "f must be left-anchored"));
    }
    if f.min_exponent().is_some_and(|e| e < 0.0) {
        return Err(domain("dubois_reymond_eta", format!("f = {f} is not continuous at a")));
    }
    let a = alpha.value();
    let iv = f.interval();
    let g1 = gamma(a + 1.0)?;
    let integral = left_frac_integral(f, alpha)?;
    let k = integral.eval(iv.b())? * g1 / iv.len().powf(a);
    let eta = integral.minus(&PowerSum::monomial(iv, Anchor::Left, k / g1, a)?)?;
    // drop the rounding residue left where the two terms cancel
    let scale = eta.terms().iter().map(|t| t.coeff.abs()).fold(k.abs(), f64::max);
    let eta = PowerSum::new(
        iv,
        Anchor::Left,
        eta.terms()
            .iter()
            .filter(|t| t.coeff.abs() > 1e-15 * scale)
            .map(|t| (t.coeff, t.exponent)),
    )?;
    Ok((Variation::exact(eta, alpha)?, k))
}

/// Sampled counterpart of [`dubois_reymond_eta`] using the product-trapezoid
/// fractional integral.
pub fn dubois_reymond_eta_grid(f: &GridFn, alpha: FracOrder) -> Result<(Variation, f64)> {
    let a = alpha.value();
    let iv = f.interval();
    let g1 = gamma(a + 1.0)?;
    let integral = rl_left_integral_grid(f, alpha)?;
    let n = integral.cells();
    let k = integral.values()[n] * g1 / iv.len().powf(a);
    let mut values: Vec<f64> = (0..=n)
        .map(|i| integral.values()[i] - k * (f.node(i) - iv.a()).powf(a) / g1)
        .collect();
    values[0] = 0.0;
    values[n] = 0.0;
    Ok((Variation::sampled(GridFn::new(iv, values)?, alpha)?, k))
}

/// `(1/Γ(α)) ∫_a^b (b-s)^(α-1) f(s) ᶜD^α η(s) ds` by quadrature.
pub fn dubois_reymond_pairing(f: &PowerSum, eta: &Variation, quad_n: usize) -> Result<f64> {
    if f.interval() != eta.interval() {
        return Err(domain("dubois_reymond_pairing", "f and eta live on different intervals"));
    }
    weighted_integral(|s| Ok(f.eval(s)? * eta.caputo(s)?), f.interval(), eta.alpha(), quad_n)
}

/// Exact `(1/Γ(α)) ∫_a^b (b-s)^(α-1) (f(s) - k)² ds`.
pub fn weighted_norm_sq(f: &PowerSum, k: f64, alpha: FracOrder) -> Result<f64> {
    let g = f.minus(&PowerSum::constant(f.interval(), Anchor::Left, k))?;
    weighted_inner_product(&g, &g, alpha.value() - 1.0, alpha)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstVariation {
    pub finite_difference: f64,
    pub analytic: f64,
}

fn combine(y: &Trajectory, eta: &Variation, s: f64) -> Result<Trajectory> {
    let eta = eta.as_trajectory();
    let repr = match (y.repr(), eta.repr()) {
        (Repr::Exact { y: p, caputo: dp }, Repr::Exact { y: q, caputo: dq }) => Repr::Exact {
            y: p.plus(&q.scaled(s))?,
            caputo: dp.plus(&dq.scaled(s))?,
        },
        (Repr::Sampled { y: p, caputo: dp }, Repr::Sampled { y: q, caputo: dq }) => Repr::Sampled {
            y: p.axpy(s, q)?,
            caputo: dp.axpy(s, dq)?,
        },
        (Repr::Exact { y: p, caputo: dp }, Repr::Sampled { y: q, caputo: dq }) => {
            let cells = q.cells();
            Repr::Sampled {
                y: GridFn::from_power_sum(p, cells)?.axpy(s, q)?,
                caputo: GridFn::from_power_sum(dp, cells)?.axpy(s, dq)?,
            }
        }
        (Repr::Sampled { y: p, caputo: dp }, Repr::Exact { y: q, caputo: dq }) => {
            let cells = p.cells();
            Repr::Sampled {
                y: p.axpy(s, &GridFn::from_power_sum(q, cells)?)?,
                caputo: dp.axpy(s, &GridFn::from_power_sum(dq, cells)?)?,
            }
        }
    };
    Ok(Trajectory::from_parts(y.alpha(), repr))
}

/// Directional derivative of the weighted functional at `y` along `eta`,
/// computed both as a central difference with step [`FD_STEP`] and from the
/// partials of `L`. Fails with [`Error::Inconsistent`] when the two disagree.
pub fn first_variation(
    prob: &VariationalProblem,
    y: &Trajectory,
    eta: &Variation,
    quad_n: usize,
) -> Result<FirstVariation> {
    prob.check_admissible(y)?;
    if eta.interval() != prob.interval || eta.alpha() != prob.alpha {
        return Err(Error::Admissibility("variation does not match the problem".into()));
    }
    let plus = evaluate_weighted(prob, &combine(y, eta, FD_STEP)?, quad_n)?;
    let minus = evaluate_weighted(prob, &combine(y, eta, -FD_STEP)?, quad_n)?;
    let finite_difference = (plus - minus) / (2.0 * FD_STEP);

    let l = &prob.lagrangian;
    let integrand = |s: f64| {
        let (u, v) = (y.value(s)?, y.caputo(s)?);
        Ok(l.core_du(s, u, v)? * eta.value(s)? + l.core_dv(s, u, v)? * eta.caputo(s)?)
    };
    let analytic = endpoint_singular_integral(integrand, prob.interval, prob.weight_exponent(), quad_n)?
        / gamma(prob.alpha.value())?;

    let diff = (finite_difference - analytic).abs();
    if diff > FD_ATOL && diff > FD_RTOL * finite_difference.abs().max(analytic.abs()) {
        return Err(Error::Inconsistent {
            finite_difference,
            analytic,
        });
    }
    Ok(FirstVariation {
        finite_difference,
        analytic,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum Obstruction {
    /// The forced constant leaves only constant trajectories, which cannot
    /// meet `y(0) = 0`, `y(1) = 1`.
    NoSolution,
    Solution { trajectory: PowerSum, value: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObstructionReport {
    pub alpha: f64,
    /// `Γ(α)(1-t)^(1-α)` at `t = 1`.
    pub factor_at_one: f64,
    /// Constant forced on the Euler-Lagrange equation, when forced.
    pub forced_k: Option<f64>,
    pub outcome: Obstruction,
    /// `(t, (1-t)^(α-1))` samples of the Riemann-Liouville derivative of the
    /// candidate that ignores the continuity requirement.
    pub candidate_samples: Vec<(f64, f64)>,
    pub derivation: Vec<String>,
}

/// Points at which the unbounded candidate derivative is sampled.
pub const CANDIDATE_SAMPLE_TS: [f64; 3] = [0.9, 0.99, 0.999];

/// Solves the Euler-Lagrange equation of `∫_0^1 (ᶜD^α y)² dt` with
/// `y(0) = 0`, `y(1) = 1` in the class of trajectories with continuous Caputo
/// derivative.
///
/// Written as a weighted problem the Lagrangian is `Γ(α)(1-t)^(1-α) v²` and
/// the condition reads `2Γ(α)(1-t)^(1-α) ᶜD^α y(t) = k`.
pub fn unweighted_obstruction(alpha: FracOrder) -> Result<ObstructionReport> {
    let a = alpha.value();
    let iv = Interval::unit();
    let factor = PowerSum::monomial(iv, Anchor::Right, gamma(a)?, 1.0 - a)?;
    let factor_at_one = factor.value_at_anchor()?;
    let mut derivation = vec![format!(
        "Euler-Lagrange: 2*{factor} * cD^{a} y(t) = k on [0, 1]"
    )];

    if factor_at_one == 0.0 {
        derivation.push(format!(
            "at t = 1 the factor is {factor_at_one} and cD^{a} y(1) is finite, so k = 0"
        ));
        derivation.push("the factor is positive on [0, 1), so cD^a y = 0 there and, by continuity, on [0, 1]".into());
        derivation.push("y(t) - y(0) = I^a cD^a y(t) = 0, so y is constant".into());
        derivation.push("a constant cannot satisfy y(0) = 0 and y(1) = 1: no minimizer in F".into());
        let candidate_samples = CANDIDATE_SAMPLE_TS
            .iter()
            .map(|&t| (t, (1.0 - t).powf(a - 1.0)))
            .collect();
        return Ok(ObstructionReport {
            alpha: a,
            factor_at_one,
            forced_k: Some(0.0),
            outcome: Obstruction::NoSolution,
            candidate_samples,
            derivation,
        });
    }

    // factor is the constant Γ(1) = 1: 2 y' = k, so y = (k/2) t + y(0)
    let (y0, y1) = (0.0, 1.0);
    let k = 2.0 * (y1 - y0) / iv.len() / factor_at_one;
    let trajectory = PowerSum::new(iv, Anchor::Left, [(y0, 0.0), (0.5 * k, 1.0)])?;
    derivation.push(format!("factor is {factor_at_one} on [0, 1]: y' = k/2, y(t) = (k/2) t"));
    derivation.push(format!("boundary values give k = {k}, y(t) = {trajectory}"));
    let prob = VariationalProblem::new(iv, alpha, y0, y1, Lagrangian::v_squared())?;
    let traj = Trajectory::exact(trajectory.clone(), alpha)?;
    let value = evaluate_unweighted(&prob, &traj, crate::quadrature::DEFAULT_NODES)?;
    derivation.push(format!("value = {value}"));
    Ok(ObstructionReport {
        alpha: a,
        factor_at_one,
        forced_k: None,
        outcome: Obstruction::Solution { trajectory, value },
        candidate_samples: Vec::new(),
        derivation,
    })
}
