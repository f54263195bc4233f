//! Fractional operators on uniformly sampled functions.
//!
//! The Caputo derivative uses the L1 scheme and the Riemann-Liouville
//! integrals use product-trapezoidal weights; both integrate the piecewise
//! linear interpolant of the samples exactly against the kernel. All three are
//! O(N²). Uniform grids lose order next to `a` for functions like `t^α`, so
//! error checks are made on `[a + 0.05(b-a), b]`.

use crate::domain::{FracOrder, Interval};
use crate::error::{domain, Error, Result};
use crate::power::PowerSum;
use crate::quadrature::JacobiRule;
use crate::special::gamma;

/// Uniform samples `values[i] = y(a + i·(b-a)/N)`, `i = 0..=N`, `N >= 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFn {
    interval: Interval,
    values: Vec<f64>,
}

impl GridFn {
    pub fn new(interval: Interval, values: Vec<f64>) -> Result<Self> {
        let cells = values.len().saturating_sub(1);
        if cells < 2 {
            return Err(Error::GridSize(cells));
        }
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            let h = interval.len() / cells as f64;
            return Err(Error::Evaluation {
                t: interval.a() + i as f64 * h,
                value: *v,
            });
        }
        Ok(Self { interval, values })
    }

    /// Samples `f` on `cells + 1` uniform nodes.
    pub fn sample(interval: Interval, cells: usize, f: impl Fn(f64) -> Result<f64>) -> Result<Self> {
        if cells < 2 {
            return Err(Error::GridSize(cells));
        }
        let h = interval.len() / cells as f64;
        let values = (0..=cells)
            .map(|i| f(node(interval, h, i, cells)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(interval, values)
    }

    pub fn from_power_sum(p: &PowerSum, cells: usize) -> Result<Self> {
        Self::sample(p.interval(), cells, |t| p.eval(t))
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn cells(&self) -> usize {
        self.values.len() - 1
    }

    pub fn step(&self) -> f64 {
        self.interval.len() / self.cells() as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        node(self.interval, self.step(), i, self.cells())
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..=self.cells()).map(|i| self.node(i)).collect()
    }

    /// Piecewise-linear interpolation at `t ∈ [a, b]`.
    pub fn interpolate(&self, t: f64) -> Result<f64> {
        let t = self.interval.clamp_checked("GridFn::interpolate", t)?;
        let x = (t - self.interval.a()) / self.step();
        let i = (x.floor() as usize).min(self.cells() - 1);
        let w = x - i as f64;
        Ok((1.0 - w) * self.values[i] + w * self.values[i + 1])
    }

    /// `self + s·other` on the same grid.
    pub fn axpy(&self, s: f64, other: &GridFn) -> Result<GridFn> {
        if self.interval != other.interval || self.values.len() != other.values.len() {
            return Err(Error::GridMismatch);
        }
        self.with_values(self.values.iter().zip(&other.values).map(|(x, y)| x + s * y).collect())
    }

    fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        Self::new(self.interval, values)
    }

    fn reversed(&self) -> Vec<f64> {
        self.values.iter().rev().copied().collect()
    }
}

fn node(interval: Interval, h: f64, i: usize, cells: usize) -> f64 {
    if i == cells {
        interval.b()
    } else {
        interval.a() + i as f64 * h
    }
}

/// `(1+u)^q + (1-u)^q - 2` for `0 < u <= 1` without cancellation.
fn symmetric_second_difference(q: f64, u: f64) -> f64 {
    if u > 0.1 {
        return (1.0 + u).powf(q) + (1.0 - u).powf(q) - 2.0;
    }
    // 2 Σ_{m even >= 2} C(q, m) u^m
    let mut sum = 0.0;
    let mut binom = 1.0;
    let mut upow = 1.0;
    for m in 1..=24 {
        let mf = m as f64;
        binom *= (q - mf + 1.0) / mf;
        upow *= u;
        if m % 2 == 0 {
            let term = 2.0 * binom * upow;
            sum += term;
            if term.abs() <= 1e-18 * sum.abs() {
                break;
            }
        }
    }
    sum
}

/// L1 weights `(j+1)^(1-α) - j^(1-α)`, `j = 0..n`.
fn l1_weights(alpha: f64, n: usize) -> Vec<f64> {
    let q = 1.0 - alpha;
    (0..n)
        .map(|j| {
            if j == 0 {
                1.0
            } else {
                let jf = j as f64;
                jf.powf(q) * (q * (1.0 / jf).ln_1p()).exp_m1()
            }
        })
        .collect()
}

/// Caputo derivative `ᶜD^α_{a+}` on the grid.
///
/// For α < 1 this is the L1 scheme; node 0 takes the scheme's limit value 0.
/// For α = 1 it is the classical derivative by central differences with
/// second-order one-sided stencils at the ends.
pub fn caputo_left_grid(y: &GridFn, alpha: FracOrder) -> Result<GridFn> {
    let n = y.cells();
    let h = y.step();
    let v = y.values();
    if alpha.is_one() {
        let mut out = vec![0.0; n + 1];
        out[0] = (4.0 * (v[1] - v[0]) - (v[2] - v[0])) / (2.0 * h);
        out[n] = (4.0 * (v[n] - v[n - 1]) - (v[n] - v[n - 2])) / (2.0 * h);
        for i in 1..n {
            out[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
        }
        return y.with_values(out);
    }
    let a = alpha.value();
    let weights = l1_weights(a, n);
    let diffs: Vec<f64> = v.windows(2).map(|w| w[1] - w[0]).collect();
    let scale = 1.0 / (gamma(2.0 - a)? * h.powf(a));
    let mut out = vec![0.0; n + 1];
    for (k, slot) in out.iter_mut().enumerate().skip(1) {
        // Σ_{i=1}^{k} b_{k-i} (y_i - y_{i-1})
        let s: f64 = (1..=k).map(|i| weights[k - i] * diffs[i - 1]).sum();
        *slot = scale * s;
    }
    y.with_values(out)
}

/// Product-trapezoidal left integral on raw samples.
fn product_trapezoid(values: &[f64], alpha: f64, h: f64) -> Result<Vec<f64>> {
    let n = values.len() - 1;
    let q = alpha + 1.0;
    // interior weights depend on the distance k = n - j only
    let interior: Vec<f64> = (0..=n)
        .map(|k| {
            if k == 0 {
                1.0
            } else {
                let kf = k as f64;
                kf.powf(q) * symmetric_second_difference(q, 1.0 / kf)
            }
        })
        .collect();
    let scale = h.powf(alpha) / gamma(alpha + 2.0)?;
    let mut out = vec![0.0; n + 1];
    for (m, slot) in out.iter_mut().enumerate().skip(1) {
        let mf = m as f64;
        let first = mf.powf(alpha) * ((mf - 1.0) * (alpha * (-1.0 / mf).ln_1p()).exp_m1() + alpha);
        let mut s = first * values[0];
        for j in 1..=m {
            s += interior[m - j] * values[j];
        }
        *slot = scale * s;
    }
    Ok(out)
}

/// Left Riemann-Liouville integral `I^α_{a+}` on the grid. Exact for
/// piecewise-linear data.
pub fn rl_left_integral_grid(y: &GridFn, alpha: FracOrder) -> Result<GridFn> {
    let out = product_trapezoid(y.values(), alpha.value(), y.step())?;
    y.with_values(out)
}

/// Right Riemann-Liouville integral `I^α_{b-}` on the grid.
pub fn rl_right_integral_grid(y: &GridFn, alpha: FracOrder) -> Result<GridFn> {
    let mut out = product_trapezoid(&y.reversed(), alpha.value(), y.step())?;
    out.reverse();
    y.with_values(out)
}

/// `(b-t)^(1-α) · I^α_{b-}[(b-s)^(α-1) h(s)](t)`, i.e.
/// `(b-t)^(1-α)/Γ(α) ∫_t^b (s-t)^(α-1) (b-s)^(α-1) h(s) ds`,
/// by an `n`-point Gauss-Jacobi rule carrying both kernel singularities.
/// Returns 0 at `t = b`.
pub fn right_kernel_transform(
    h: impl Fn(f64) -> Result<f64>,
    interval: Interval,
    alpha: FracOrder,
    t: f64,
    n: usize,
) -> Result<f64> {
    let t = interval
        .clamp_checked("right_kernel_transform", t)
        .map_err(|_| domain("right_kernel_transform", format!("t = {t} outside {interval}")))?;
    let b = interval.b();
    if t >= b {
        return Ok(0.0);
    }
    let a = alpha.value();
    let rule = JacobiRule::cached(n, a - 1.0, a - 1.0)?;
    let integral = rule.integrate_mapped(t, b, h)?;
    Ok((b - t).powf(1.0 - a) * integral / gamma(a)?)
}

/// [`right_kernel_transform`] of a sampled `h`, interpolated linearly.
pub fn right_kernel_transform_grid(h: &GridFn, alpha: FracOrder, t: f64, n: usize) -> Result<f64> {
    right_kernel_transform(|s| h.interpolate(s), h.interval(), alpha, t, n)
}
