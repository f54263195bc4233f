//! Lagrangians, variational problems, trajectories, and the two functionals
//! built from them:
//!
//! * weighted: `(1/Γ(α)) ∫_a^b (b-t)^(α-1) L(t, y, ᶜD^α y) dt`
//! * unweighted: `∫_a^b L(t, y, ᶜD^α y) dt`
//!
//! A Lagrangian may carry an endpoint factor `(b-t)^μ` in front of its core
//! `(t, u, v) ↦ ℓ(t, u, v)`. The factor is folded into the quadrature weight
//! so that `μ = 1-α` turns the weighted functional into the unweighted one
//! exactly.

use std::fmt;
use std::sync::Arc;

use crate::domain::{FracOrder, Interval};
use crate::error::{domain, Error, Result};
use crate::expr::{parse_expression, Expr};
use crate::grid::{caputo_left_grid, GridFn};
use crate::power::{left_caputo_derivative, weighted_inner_product, Anchor, PowerSum};
use crate::quadrature::endpoint_singular_integral;
use crate::special::gamma;

/// Tolerance for boundary values of attached trajectories.
pub const ADMISSIBILITY_TOL: f64 = 1e-9;

/// Relative step for central-difference partials of expression Lagrangians.
pub const PARTIAL_STEP: f64 = 1e-6;

pub type ScalarFn = Arc<dyn Fn(f64, f64, f64) -> Result<f64> + Send + Sync>;

/// `c_vv·v² + c_uu·u² + c_u·u + c_v·v + c_0`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct QuadraticCoeffs {
    pub c_vv: f64,
    pub c_uu: f64,
    pub c_u: f64,
    pub c_v: f64,
    pub c_0: f64,
}

impl QuadraticCoeffs {
    pub fn v_squared() -> Self {
        Self {
            c_vv: 1.0,
            ..Self::default()
        }
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::default()
    }
}

#[derive(Clone)]
enum Core {
    Quadratic(QuadraticCoeffs),
    Expression(Arc<Expr>),
    Custom {
        eval: ScalarFn,
        d_u: ScalarFn,
        d_v: ScalarFn,
    },
}

/// `L(t, u, v) = (b-t)^μ · ℓ(t, u, v)` with partials of `ℓ`.
#[derive(Clone)]
pub struct Lagrangian {
    label: String,
    core: Core,
    endpoint_power: f64,
}

impl fmt::Debug for Lagrangian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lagrangian")
            .field("label", &self.label)
            .field("endpoint_power", &self.endpoint_power)
            .finish()
    }
}

fn central_difference(
    e: &Expr,
    t: f64,
    u: f64,
    v: f64,
    along_u: bool,
) -> Result<f64> {
    let x = if along_u { u } else { v };
    let h = PARTIAL_STEP * x.abs().max(1.0);
    let (plus, minus) = if along_u {
        (e.eval(t, u + h, v)?, e.eval(t, u - h, v)?)
    } else {
        (e.eval(t, u, v + h)?, e.eval(t, u, v - h)?)
    };
    Ok((plus - minus) / (2.0 * h))
}

impl Lagrangian {
    /// `L = v²`.
    pub fn v_squared() -> Self {
        Self::quadratic(QuadraticCoeffs::v_squared()).with_label("v2")
    }

    pub fn zero() -> Self {
        Self::quadratic(QuadraticCoeffs::default()).with_label("0")
    }

    pub fn quadratic(c: QuadraticCoeffs) -> Self {
        Self {
            label: format!(
                "quadratic({}, {}, {}, {}, {})",
                c.c_vv, c.c_uu, c.c_u, c.c_v, c.c_0
            ),
            core: Core::Quadratic(c),
            endpoint_power: 0.0,
        }
    }

    /// Lagrangian given by an expression in `t`, `u`, `v`; partials by
    /// central differences.
    pub fn from_expr(e: Expr) -> Self {
        Self {
            label: format!("expr:{e}"),
            core: Core::Expression(Arc::new(e)),
            endpoint_power: 0.0,
        }
    }

    pub fn parse_expr(src: &str) -> Result<Self> {
        Ok(Self::from_expr(parse_expression(src)?))
    }

    pub fn custom(
        label: impl Into<String>,
        eval: ScalarFn,
        d_u: ScalarFn,
        d_v: ScalarFn,
    ) -> Self {
        Self {
            label: label.into(),
            core: Core::Custom { eval, d_u, d_v },
            endpoint_power: 0.0,
        }
    }

    /// `Γ(α)·(b-t)^(1-α)·v²`, whose weighted functional is the unweighted
    /// functional of `v²`.
    pub fn rescaled_v_squared(alpha: FracOrder) -> Result<Self> {
        let a = alpha.value();
        let c = QuadraticCoeffs {
            c_vv: gamma(a)?,
            ..QuadraticCoeffs::default()
        };
        Ok(Self::quadratic(c)
            .with_endpoint_power(1.0 - a)
            .with_label(format!("gamma({a})*(b-t)^{}*v2", 1.0 - a)))
    }

    /// Registry lookup: `v2`, `zero`, or `expr:<expression>`. Quadratic
    /// Lagrangians are built with [`Lagrangian::quadratic`].
    pub fn from_registry(key: &str) -> Result<Self> {
        let key = key.trim();
        if let Some(src) = key.strip_prefix("expr:") {
            return Self::parse_expr(src.trim());
        }
        match key {
            "v2" => Ok(Self::v_squared()),
            "zero" | "0" => Ok(Self::zero()),
            _ => Err(Error::Unsupported(format!(
                "unknown lagrangian '{key}' (expected v2, zero, quadratic or expr:<expression>)"
            ))),
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Multiplies by `(b-t)^mu`; `mu >= 0` keeps the integrand bounded.
    pub fn with_endpoint_power(mut self, mu: f64) -> Self {
        self.endpoint_power = mu;
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn endpoint_power(&self) -> f64 {
        self.endpoint_power
    }

    pub fn quadratic_coeffs(&self) -> Option<QuadraticCoeffs> {
        match self.core {
            Core::Quadratic(c) => Some(c),
            _ => None,
        }
    }

    /// True for `c·v²` with `c > 0` and no endpoint factor.
    pub fn is_v_squared_family(&self) -> bool {
        matches!(self.quadratic_coeffs(), Some(c)
            if c.c_vv > 0.0 && c.c_uu == 0.0 && c.c_u == 0.0 && c.c_v == 0.0 && c.c_0 == 0.0)
            && self.endpoint_power == 0.0
    }

    fn checked(&self, t: f64, value: f64) -> Result<f64> {
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::Evaluation { t, value })
        }
    }

    /// Core value `ℓ(t, u, v)` without the endpoint factor.
    pub fn core(&self, t: f64, u: f64, v: f64) -> Result<f64> {
        let value = match &self.core {
            Core::Quadratic(c) => c.c_vv * v * v + c.c_uu * u * u + c.c_u * u + c.c_v * v + c.c_0,
            Core::Expression(e) => e.eval(t, u, v)?,
            Core::Custom { eval, .. } => eval(t, u, v)?,
        };
        self.checked(t, value)
    }

    /// `∂ℓ/∂u`.
    pub fn core_du(&self, t: f64, u: f64, v: f64) -> Result<f64> {
        let value = match &self.core {
            Core::Quadratic(c) => 2.0 * c.c_uu * u + c.c_u,
            Core::Expression(e) => central_difference(e, t, u, v, true)?,
            Core::Custom { d_u, .. } => d_u(t, u, v)?,
        };
        self.checked(t, value)
    }

    /// `∂ℓ/∂v`.
    pub fn core_dv(&self, t: f64, u: f64, v: f64) -> Result<f64> {
        let value = match &self.core {
            Core::Quadratic(c) => 2.0 * c.c_vv * v + c.c_v,
            Core::Expression(e) => central_difference(e, t, u, v, false)?,
            Core::Custom { d_v, .. } => d_v(t, u, v)?,
        };
        self.checked(t, value)
    }

    fn factor(&self, b: f64, t: f64) -> f64 {
        if self.endpoint_power == 0.0 {
            1.0
        } else {
            (b - t).max(0.0).powf(self.endpoint_power)
        }
    }
}

/// Minimize the weighted functional subject to `y(a) = y_a`, `y(b) = y_b`.
#[derive(Debug, Clone)]
pub struct VariationalProblem {
    pub interval: Interval,
    pub alpha: FracOrder,
    pub y_a: f64,
    pub y_b: f64,
    pub lagrangian: Lagrangian,
}

impl VariationalProblem {
    pub fn new(
        interval: Interval,
        alpha: FracOrder,
        y_a: f64,
        y_b: f64,
        lagrangian: Lagrangian,
    ) -> Result<Self> {
        if !y_a.is_finite() || !y_b.is_finite() {
            return Err(domain("VariationalProblem", "boundary values must be finite"));
        }
        Ok(Self {
            interval,
            alpha,
            y_a,
            y_b,
            lagrangian,
        })
    }

    /// `L = v²` on `[0, 1]` with `y(0) = 0`, `y(1) = 1`; minimized by `t^α`.
    pub fn weighted_dirichlet(alpha: FracOrder) -> Self {
        Self {
            interval: Interval::unit(),
            alpha,
            y_a: 0.0,
            y_b: 1.0,
            lagrangian: Lagrangian::v_squared(),
        }
    }

    pub fn with_lagrangian(&self, lagrangian: Lagrangian) -> Self {
        Self {
            lagrangian,
            ..self.clone()
        }
    }

    /// `L(t, u, v)` including the endpoint factor.
    pub fn l(&self, t: f64, u: f64, v: f64) -> Result<f64> {
        Ok(self.lagrangian.factor(self.interval.b(), t) * self.lagrangian.core(t, u, v)?)
    }

    /// `L_u(t, u, v)` including the endpoint factor.
    pub fn l_u(&self, t: f64, u: f64, v: f64) -> Result<f64> {
        Ok(self.lagrangian.factor(self.interval.b(), t) * self.lagrangian.core_du(t, u, v)?)
    }

    /// `L_v(t, u, v)` including the endpoint factor.
    pub fn l_v(&self, t: f64, u: f64, v: f64) -> Result<f64> {
        Ok(self.lagrangian.factor(self.interval.b(), t) * self.lagrangian.core_dv(t, u, v)?)
    }

    /// Exponent of `(b-t)` in the weighted integrand.
    pub(crate) fn weight_exponent(&self) -> f64 {
        self.alpha.value() - 1.0 + self.lagrangian.endpoint_power()
    }

    /// Checks that `y` lives on this problem's interval and order and meets
    /// both boundary values.
    pub fn check_admissible(&self, y: &Trajectory) -> Result<()> {
        self.check_compatible(y)?;
        let ya = y.value(self.interval.a())?;
        let yb = y.value(self.interval.b())?;
        for (side, got, want) in [("a", ya, self.y_a), ("b", yb, self.y_b)] {
            if (got - want).abs() > ADMISSIBILITY_TOL {
                return Err(Error::Admissibility(format!(
                    "y({side}) = {got}, expected {want}"
                )));
            }
        }
        Ok(())
    }

    pub(crate) fn check_compatible(&self, y: &Trajectory) -> Result<()> {
        if y.interval() != self.interval {
            return Err(Error::Admissibility(format!(
                "trajectory on {} but problem on {}",
                y.interval(),
                self.interval
            )));
        }
        if y.alpha() != self.alpha {
            return Err(Error::Admissibility(format!(
                "trajectory built for alpha = {} but problem has alpha = {}",
                y.alpha(),
                self.alpha
            )));
        }
        Ok(())
    }
}

/// Representation of a trajectory and its Caputo derivative.
#[derive(Debug, Clone)]
pub enum Repr {
    Exact { y: PowerSum, caputo: PowerSum },
    Sampled { y: GridFn, caputo: GridFn },
}

/// Candidate `y` together with `ᶜD^α_{a+} y`.
#[derive(Debug, Clone)]
pub struct Trajectory {
    alpha: FracOrder,
    repr: Repr,
}

impl Trajectory {
    /// Left-anchored power sum with nonnegative exponents.
    pub fn exact(y: PowerSum, alpha: FracOrder) -> Result<Self> {
        let caputo = left_caputo_derivative(&y, alpha)?;
        if caputo.min_exponent().is_some_and(|e| e < 0.0) {
            return Err(Error::Admissibility(format!(
                "Caputo derivative of {y} is unbounded at the left endpoint"
            )));
        }
        Ok(Self {
            alpha,
            repr: Repr::Exact { y, caputo },
        })
    }

    /// Uniformly sampled trajectory; Caputo derivative by the L1 scheme.
    pub fn sampled(y: GridFn, alpha: FracOrder) -> Result<Self> {
        let caputo = caputo_left_grid(&y, alpha)?;
        Ok(Self {
            alpha,
            repr: Repr::Sampled { y, caputo },
        })
    }

    pub(crate) fn from_parts(alpha: FracOrder, repr: Repr) -> Self {
        Self { alpha, repr }
    }

    pub fn alpha(&self) -> FracOrder {
        self.alpha
    }

    pub fn repr(&self) -> &Repr {
        &self.repr
    }

    pub fn as_power_sum(&self) -> Option<&PowerSum> {
        match &self.repr {
            Repr::Exact { y, .. } => Some(y),
            Repr::Sampled { .. } => None,
        }
    }

    pub fn caputo_power_sum(&self) -> Option<&PowerSum> {
        match &self.repr {
            Repr::Exact { caputo, .. } => Some(caputo),
            Repr::Sampled { .. } => None,
        }
    }

    pub fn interval(&self) -> Interval {
        match &self.repr {
            Repr::Exact { y, .. } => y.interval(),
            Repr::Sampled { y, .. } => y.interval(),
        }
    }

    pub fn value(&self, t: f64) -> Result<f64> {
        match &self.repr {
            Repr::Exact { y, .. } => y.eval(t),
            Repr::Sampled { y, .. } => y.interpolate(t),
        }
    }

    /// `ᶜD^α_{a+} y(t)`.
    pub fn caputo(&self, t: f64) -> Result<f64> {
        match &self.repr {
            Repr::Exact { caputo, .. } => caputo.eval(t),
            Repr::Sampled { caputo, .. } => caputo.interpolate(t),
        }
    }
}

fn integrand<'a>(prob: &'a VariationalProblem, y: &'a Trajectory) -> impl Fn(f64) -> Result<f64> + 'a {
    move |t| prob.lagrangian.core(t, y.value(t)?, y.caputo(t)?)
}

/// Weighted functional by composite Gauss-Jacobi quadrature, `n` nodes per
/// panel.
pub fn evaluate_weighted(prob: &VariationalProblem, y: &Trajectory, n: usize) -> Result<f64> {
    prob.check_compatible(y)?;
    let value = endpoint_singular_integral(integrand(prob, y), prob.interval, prob.weight_exponent(), n)?;
    Ok(value / gamma(prob.alpha.value())?)
}

/// Weighted functional for a quadratic Lagrangian and an exact trajectory,
/// summed from Beta integrals.
pub fn evaluate_weighted_exact(prob: &VariationalProblem, y: &Trajectory) -> Result<f64> {
    prob.check_compatible(y)?;
    let c = prob.lagrangian.quadratic_coeffs().ok_or_else(|| {
        Error::Representation(format!("lagrangian '{}' is not quadratic", prob.lagrangian.label()))
    })?;
    let (Some(u), Some(v)) = (y.as_power_sum(), y.caputo_power_sum()) else {
        return Err(Error::Representation("trajectory is sampled, not a power sum".into()));
    };
    let one = PowerSum::constant(prob.interval, Anchor::Left, 1.0);
    let w = prob.weight_exponent();
    let ip = |p: &PowerSum, q: &PowerSum| weighted_inner_product(p, q, w, prob.alpha);
    let mut acc = 0.0;
    for (coeff, p, q) in [
        (c.c_vv, v, v),
        (c.c_uu, u, u),
        (c.c_u, u, &one),
        (c.c_v, v, &one),
        (c.c_0, &one, &one),
    ] {
        if coeff != 0.0 {
            acc += coeff * ip(p, q)?;
        }
    }
    Ok(acc)
}

/// Unweighted functional `∫_a^b L(t, y, ᶜD^α y) dt`.
pub fn evaluate_unweighted(prob: &VariationalProblem, y: &Trajectory, n: usize) -> Result<f64> {
    prob.check_compatible(y)?;
    endpoint_singular_integral(
        integrand(prob, y),
        prob.interval,
        prob.lagrangian.endpoint_power(),
        n,
    )
}

/// `J(x) - J(y_candidate)` for the `v²` family; nonnegative when the
/// candidate is the minimizer.
pub fn convexity_gap(
    prob: &VariationalProblem,
    y_candidate: &Trajectory,
    x_competitor: &Trajectory,
    n: usize,
) -> Result<f64> {
    if !prob.lagrangian.is_v_squared_family() {
        return Err(Error::Unsupported(format!(
            "convexity gap needs a c·v² lagrangian, got '{}'",
            prob.lagrangian.label()
        )));
    }
    prob.check_admissible(y_candidate)?;
    prob.check_admissible(x_competitor)?;
    Ok(evaluate_weighted(prob, x_competitor, n)? - evaluate_weighted(prob, y_candidate, n)?)
}
