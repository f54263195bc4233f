//! Gauss-Jacobi quadrature for integrands with algebraic endpoint behaviour.
//!
//! Rules are built with the Golub-Welsch method: the symmetric tridiagonal
//! Jacobi matrix of the orthonormal Jacobi polynomials is diagonalised by an
//! implicit QL iteration that only tracks the first component of each
//! eigenvector. Nodes are the eigenvalues and weights are `μ₀·v₀²`.
//!
//! [`weighted_integral`] evaluates `(1/Γ(α)) ∫_a^b (b-t)^(α-1) f(t) dt`. The
//! half of the interval next to `b` uses a mapped Jacobi rule carrying the
//! weight singularity; the half next to `a` is split geometrically toward `a`
//! so that fractional powers `(t-a)^β` in `f` are integrated to full precision.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::domain::{FracOrder, Interval};
use crate::error::{domain, Error, Result};
use crate::special::{beta, gamma};

/// Node count used when callers do not choose one.
pub const DEFAULT_NODES: usize = 64;
/// Upper bound for the doubling refinement in [`weighted_integral_adaptive`].
pub const MAX_NODES: usize = 512;
/// Relative change below which [`weighted_integral_adaptive`] stops doubling.
pub const ADAPTIVE_RTOL: f64 = 1e-10;

/// Ratio between successive panels of the geometric split toward `a`.
const GRADING_RATIO: f64 = 0.125;
/// Number of geometric panels; `0.125^18 ≈ 2e-17`.
const GRADING_LEVELS: usize = 18;
/// Per-panel node floor for the composite rule. Legendre panels with a 1:8
/// aspect ratio toward an algebraic singularity reach ~1e-16 at 24 nodes.
pub const MIN_PANEL_NODES: usize = 24;

/// An n-point Gauss-Jacobi rule for the weight `(1-x)^exp_right (1+x)^exp_left`
/// on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiRule {
    exp_right: f64,
    exp_left: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl JacobiRule {
    /// Builds the rule. Both exponents must exceed -1.
    pub fn new(n: usize, exp_right: f64, exp_left: f64) -> Result<Self> {
        if n == 0 {
            return Err(domain("JacobiRule::new", "need at least one node"));
        }
        for (name, e) in [("exp_right", exp_right), ("exp_left", exp_left)] {
            if !(e.is_finite() && e > -1.0) {
                return Err(domain("JacobiRule::new", format!("{name} = {e} must exceed -1")));
            }
        }
        let (g, d) = (exp_right, exp_left);
        let s = g + d;
        let mut diag = vec![0.0; n];
        let mut off = vec![0.0; n];
        diag[0] = (d - g) / (s + 2.0);
        for (k, a) in diag.iter_mut().enumerate().skip(1) {
            let k = k as f64;
            *a = (d * d - g * g) / ((2.0 * k + s) * (2.0 * k + s + 2.0));
        }
        for k in 1..n {
            let b = if k == 1 {
                4.0 * (1.0 + g) * (1.0 + d) / ((2.0 + s).powi(2) * (3.0 + s))
            } else {
                let k = k as f64;
                let m = 2.0 * k + s;
                4.0 * k * (k + g) * (k + d) * (k + s) / (m * m * (m + 1.0) * (m - 1.0))
            };
            off[k - 1] = b.sqrt();
        }
        let (nodes, first) = symmetric_tridiagonal_eigen(diag, off)?;
        let mu0 = 2f64.powf(s + 1.0) * beta(g + 1.0, d + 1.0)?;
        let weights = first.iter().map(|v| mu0 * v * v).collect();
        Ok(Self {
            exp_right,
            exp_left,
            nodes,
            weights,
        })
    }

    /// Shared, cached instance of a rule.
    pub fn cached(n: usize, exp_right: f64, exp_left: f64) -> Result<Arc<Self>> {
        type Key = (usize, u64, u64);
        static CACHE: OnceLock<Mutex<HashMap<Key, Arc<JacobiRule>>>> = OnceLock::new();
        let key = (n, exp_right.to_bits(), exp_left.to_bits());
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(rule) = cache.lock().expect("rule cache poisoned").get(&key) {
            return Ok(Arc::clone(rule));
        }
        let rule = Arc::new(Self::new(n, exp_right, exp_left)?);
        cache
            .lock()
            .expect("rule cache poisoned")
            .insert(key, Arc::clone(&rule));
        Ok(rule)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn exp_right(&self) -> f64 {
        self.exp_right
    }

    pub fn exp_left(&self) -> f64 {
        self.exp_left
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `∫_{-1}^{1} (1-x)^γ (1+x)^δ dx`.
    pub fn weight_mass(&self) -> f64 {
        let (g, d) = (self.exp_right, self.exp_left);
        2f64.powf(g + d + 1.0) * beta(g + 1.0, d + 1.0).expect("exponents validated")
    }

    /// `Σ wᵢ f(xᵢ)` on the reference interval.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(x, w)| w * f(*x)).sum()
    }

    /// Approximates `∫_lo^hi (hi-t)^γ (t-lo)^δ f(t) dt`, failing on the first
    /// non-finite `f` value.
    pub fn integrate_mapped(
        &self,
        lo: f64,
        hi: f64,
        mut f: impl FnMut(f64) -> Result<f64>,
    ) -> Result<f64> {
        let half = 0.5 * (hi - lo);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let t = lo + half * (x + 1.0);
            let v = f(t)?;
            if !v.is_finite() {
                return Err(Error::Evaluation { t, value: v });
            }
            acc += w * v;
        }
        Ok(half.powf(self.exp_right + self.exp_left + 1.0) * acc)
    }
}

/// Eigenvalues (ascending) and first eigenvector components of the symmetric
/// tridiagonal matrix with diagonal `d` and off-diagonal `e` (`e[i]` couples
/// `i` and `i+1`; `e[n-1]` is ignored).
fn symmetric_tridiagonal_eigen(mut d: Vec<f64>, mut e: Vec<f64>) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = d.len();
    let mut z = vec![0.0; n];
    z[0] = 1.0;
    if let Some(last) = e.last_mut() {
        *last = 0.0;
    }
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(domain("JacobiRule::new", "QL iteration did not converge"));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    Ok((order.iter().map(|&i| d[i]).collect(), order.iter().map(|&i| z[i]).collect()))
}

/// `∫_a^b (b-t)^right_exp f(t) dt` with the composite rule described in the
/// module docs. `n` is the node count per panel, raised to at least
/// [`MIN_PANEL_NODES`].
pub fn endpoint_singular_integral(
    f: impl Fn(f64) -> Result<f64>,
    interval: Interval,
    right_exp: f64,
    n: usize,
) -> Result<f64> {
    let n = n.max(MIN_PANEL_NODES);
    let (a, b) = (interval.a(), interval.b());
    let mid = a + 0.5 * interval.len();
    let singular = JacobiRule::cached(n, right_exp, 0.0)?;
    let mut acc = singular.integrate_mapped(mid, b, &f)?;

    let legendre = JacobiRule::cached(n, 0.0, 0.0)?;
    let weight = |t: f64| -> Result<f64> { Ok((b - t).powf(right_exp) * f(t)?) };
    let mut hi = mid;
    for level in 1..=GRADING_LEVELS {
        let lo = if level == GRADING_LEVELS {
            a
        } else {
            a + (mid - a) * GRADING_RATIO.powi(level as i32)
        };
        acc += legendre.integrate_mapped(lo, hi, &weight)?;
        hi = lo;
    }
    Ok(acc)
}

/// `(1/Γ(α)) ∫_a^b (b-t)^(α-1) f(t) dt` with `n` nodes per panel.
pub fn weighted_integral(
    f: impl Fn(f64) -> Result<f64>,
    interval: Interval,
    alpha: FracOrder,
    n: usize,
) -> Result<f64> {
    let a = alpha.value();
    Ok(endpoint_singular_integral(f, interval, a - 1.0, n)? / gamma(a)?)
}

/// [`weighted_integral`] starting from `n` nodes and doubling until two
/// successive values agree to [`ADAPTIVE_RTOL`] or [`MAX_NODES`] is reached.
pub fn weighted_integral_adaptive(
    f: impl Fn(f64) -> Result<f64>,
    interval: Interval,
    alpha: FracOrder,
    n: usize,
) -> Result<f64> {
    let mut n = n.clamp(1, MAX_NODES);
    let mut prev = weighted_integral(&f, interval, alpha, n)?;
    while n < MAX_NODES {
        n = (2 * n).min(MAX_NODES);
        let next = weighted_integral(&f, interval, alpha, n)?;
        if (next - prev).abs() <= ADAPTIVE_RTOL * next.abs().max(f64::MIN_POSITIVE) {
            return Ok(next);
        }
        prev = next;
    }
    Ok(prev)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_rule_checks(rule: &JacobiRule) {
        let nodes = rule.nodes();
        assert!(nodes.windows(2).all(|w| w[0] < w[1]));
        assert!(nodes.iter().all(|x| *x > -1.0 && *x < 1.0));
        assert!(rule.weights().iter().all(|w| *w > 0.0));
        let total: f64 = rule.weights().iter().sum();
        let mass = rule.weight_mass();
        assert!(((total - mass) / mass).abs() <= 1e-12, "sum {total} vs {mass}");
    }

    #[test]
    fn midpoint_and_two_point_legendre() {
        let r = JacobiRule::new(1, 0.0, 0.0).unwrap();
        assert!(r.nodes()[0].abs() < 1e-16);
        assert!((r.weights()[0] - 2.0).abs() < 1e-15);

        let r = JacobiRule::new(2, 0.0, 0.0).unwrap();
        let x = 1.0 / 3f64.sqrt();
        assert!((r.nodes()[0] + x).abs() < 1e-15 && (r.nodes()[1] - x).abs() < 1e-15);
        assert!(r.weights().iter().all(|w| (w - 1.0).abs() < 1e-14));
    }

    #[test]
    fn eight_point_mass() {
        let r = JacobiRule::new(8, -0.5, 0.0).unwrap();
        let total: f64 = r.weights().iter().sum();
        assert!((total - 2.0 * 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn structural_invariants() {
        for n in [1, 2, 3, 5, 16, 64, 200] {
            for (g, d) in [(0.0, 0.0), (-0.5, 0.0), (-0.75, -0.75), (-0.99, 0.3), (2.5, -0.2)] {
                unit_rule_checks(&JacobiRule::new(n, g, d).unwrap());
            }
        }
    }

    #[test]
    fn skewed_weight_pushes_nodes() {
        // Large exponent on (1+x) pulls mass toward +1.
        let r = JacobiRule::new(4, 0.0, 5.0).unwrap();
        let mean: f64 = r.nodes().iter().zip(r.weights()).map(|(x, w)| x * w).sum::<f64>()
            / r.weight_mass();
        assert!(mean > 0.5);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(JacobiRule::new(0, 0.0, 0.0).is_err());
        assert!(JacobiRule::new(4, -1.0, 0.0).is_err());
        assert!(JacobiRule::new(4, 0.0, -1.5).is_err());
    }

    #[test]
    fn weighted_integral_examples() {
        let iv = Interval::unit();
        let half = FracOrder::new(0.5).unwrap();
        let v = weighted_integral(|_| Ok(1.0), iv, half, 64).unwrap();
        assert!((v - std::f64::consts::FRAC_2_SQRT_PI).abs() < 1e-14);
        let v = weighted_integral(|_| Ok(1.0), iv, FracOrder::new(1.0).unwrap(), 8).unwrap();
        assert!((v - 1.0).abs() < 1e-15);
        let v = weighted_integral(|t| Ok(t.sqrt()), iv, half, 64).unwrap();
        assert!((v - 0.886_226_925_452_758).abs() < 1e-13);
    }

    #[test]
    fn non_finite_integrand_reports_location() {
        let err = weighted_integral(
            |t| Ok(if t > 0.9 { f64::NAN } else { 1.0 }),
            Interval::unit(),
            FracOrder::new(0.5).unwrap(),
            16,
        )
        .unwrap_err();
        match err {
            Error::Evaluation { t, .. } => assert!(t > 0.9),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn adaptive_converges_on_smooth_integrand() {
        let v = weighted_integral_adaptive(
            |t| Ok((3.0 * t).cos()),
            Interval::new(-1.0, 2.0).unwrap(),
            FracOrder::new(0.3).unwrap(),
            8,
        )
        .unwrap();
        let fixed = weighted_integral(
            |t| Ok((3.0 * t).cos()),
            Interval::new(-1.0, 2.0).unwrap(),
            FracOrder::new(0.3).unwrap(),
            128,
        )
        .unwrap();
        assert!((v - fixed).abs() < 1e-12);
    }
}
