//! Exact fractional calculus on finite sums of powers.
//!
//! A [`PowerSum`] is `Σ cᵢ·(t-a)^βᵢ` (left anchor) or `Σ cᵢ·(b-t)^βᵢ` (right
//! anchor). Fractional integrals and Riemann-Liouville derivatives map each term
//! to a single term of the same anchor:
//!
//! ```text
//! I^α (s-a)^(β-1) = Γ(β)/Γ(β+α) · (t-a)^(β+α-1)
//! D^α (s-a)^(β-1) = Γ(β)/Γ(β-α) · (t-a)^(β-α-1)
//! ```
//!
//! and likewise for the right-sided operators, so the class is closed under
//! every operator here and the results are exact up to the evaluation of Γ.
//! Everything numerical in the crate is tested against this module.

use std::fmt;

use crate::domain::{FracOrder, Interval};
use crate::error::{domain, Error, Result};
use crate::special::{beta, gamma, near_nonpositive_integer};

/// Exponents closer than this are merged; it is also the snapping distance to
/// integers and the width of the Γ-pole annihilation test.
pub const EXPONENT_TOL: f64 = 1e-12;

/// Which endpoint a power sum is expanded around.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Anchor {
    /// Terms `c·(t-a)^β`.
    Left,
    /// Terms `c·(b-t)^β`.
    Right,
}

/// One term `coeff·(t-a)^exponent` or `coeff·(b-t)^exponent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub coeff: f64,
    pub exponent: f64,
}

/// Finite sum of powers anchored at one endpoint of an interval.
///
/// Terms are sorted by exponent, exponents are distinct and each exceeds -1,
/// and no stored coefficient is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSum {
    interval: Interval,
    anchor: Anchor,
    terms: Vec<Term>,
}

fn snap_exponent(e: f64) -> f64 {
    let r = e.round();
    if (e - r).abs() <= EXPONENT_TOL {
        r
    } else {
        e
    }
}

impl PowerSum {
    /// Builds a sum from `(coeff, exponent)` pairs, merging equal exponents.
    pub fn new(
        interval: Interval,
        anchor: Anchor,
        terms: impl IntoIterator<Item = (f64, f64)>,
    ) -> Result<Self> {
        let mut raw = Vec::new();
        for (coeff, exponent) in terms {
            if !coeff.is_finite() || !exponent.is_finite() {
                return Err(domain(
                    "PowerSum::new",
                    format!("non-finite term {coeff}·x^{exponent}"),
                ));
            }
            let exponent = snap_exponent(exponent);
            if exponent <= -1.0 {
                return Err(Error::NonIntegrable { exponent });
            }
            raw.push(Term { coeff, exponent });
        }
        Ok(Self::from_valid_terms(interval, anchor, raw))
    }

    fn from_valid_terms(interval: Interval, anchor: Anchor, mut raw: Vec<Term>) -> Self {
        raw.sort_by(|x, y| x.exponent.total_cmp(&y.exponent));
        let mut terms: Vec<Term> = Vec::with_capacity(raw.len());
        for t in raw {
            match terms.last_mut() {
                Some(last) if (t.exponent - last.exponent).abs() <= EXPONENT_TOL => {
                    last.coeff += t.coeff;
                }
                _ => terms.push(t),
            }
        }
        terms.retain(|t| t.coeff != 0.0);
        Self {
            interval,
            anchor,
            terms,
        }
    }

    pub fn zero(interval: Interval, anchor: Anchor) -> Self {
        Self {
            interval,
            anchor,
            terms: Vec::new(),
        }
    }

    pub fn constant(interval: Interval, anchor: Anchor, c: f64) -> Self {
        Self::from_valid_terms(interval, anchor, vec![Term { coeff: c, exponent: 0.0 }])
    }

    pub fn monomial(interval: Interval, anchor: Anchor, coeff: f64, exponent: f64) -> Result<Self> {
        Self::new(interval, anchor, [(coeff, exponent)])
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn anchor(&self) -> Anchor {
        self.anchor
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exponent(&self) -> Option<f64> {
        self.terms.first().map(|t| t.exponent)
    }

    pub fn max_exponent(&self) -> Option<f64> {
        self.terms.last().map(|t| t.exponent)
    }

    /// Coefficient of the exponent-0 term.
    pub fn constant_term(&self) -> f64 {
        self.terms
            .iter()
            .find(|t| t.exponent == 0.0)
            .map_or(0.0, |t| t.coeff)
    }

    /// Value at the anchoring endpoint. Requires every exponent `>= 0`.
    pub fn value_at_anchor(&self) -> Result<f64> {
        if self.min_exponent().is_some_and(|e| e < 0.0) {
            let t = match self.anchor {
                Anchor::Left => self.interval.a(),
                Anchor::Right => self.interval.b(),
            };
            return Err(Error::Singular { t });
        }
        Ok(self.constant_term())
    }

    /// Distance from the anchor, `t-a` or `b-t`.
    fn offset(&self, t: f64) -> f64 {
        match self.anchor {
            Anchor::Left => t - self.interval.a(),
            Anchor::Right => self.interval.b() - t,
        }
    }

    /// Evaluates the sum at `t ∈ [a, b]`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        let t = self.interval.clamp_checked("PowerSum::eval", t)?;
        let x = self.offset(t);
        if x == 0.0 && self.terms.iter().any(|term| term.exponent < 0.0) {
            return Err(Error::Singular { t });
        }
        Ok(self.terms.iter().map(|term| term.coeff * x.powf(term.exponent)).sum())
    }

    pub fn scaled(&self, c: f64) -> PowerSum {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: t.coeff * c,
                exponent: t.exponent,
            })
            .collect();
        Self::from_valid_terms(self.interval, self.anchor, terms)
    }

    fn check_compatible(&self, other: &PowerSum, op: &'static str) -> Result<()> {
        if self.anchor != other.anchor || self.interval != other.interval {
            return Err(domain(op, "operands differ in anchor or interval"));
        }
        Ok(())
    }

    pub fn plus(&self, other: &PowerSum) -> Result<PowerSum> {
        self.check_compatible(other, "PowerSum::plus")?;
        let terms = self.terms.iter().chain(other.terms.iter()).copied().collect();
        Ok(Self::from_valid_terms(self.interval, self.anchor, terms))
    }

    pub fn minus(&self, other: &PowerSum) -> Result<PowerSum> {
        self.plus(&other.scaled(-1.0))
    }

    /// Product of two sums with the same anchor (exponents add).
    pub fn times(&self, other: &PowerSum) -> Result<PowerSum> {
        self.check_compatible(other, "PowerSum::times")?;
        let mut pairs = Vec::with_capacity(self.terms.len() * other.terms.len());
        for p in &self.terms {
            for q in &other.terms {
                pairs.push((p.coeff * q.coeff, p.exponent + q.exponent));
            }
        }
        Self::new(self.interval, self.anchor, pairs)
    }

    /// Re-expands a sum with nonnegative integer exponents around the other
    /// endpoint using the binomial theorem. Non-integer exponents would need an
    /// infinite series and are rejected.
    pub fn reanchored(&self) -> Result<PowerSum> {
        let len = self.interval.len();
        let mut pairs = Vec::new();
        for term in &self.terms {
            let e = term.exponent;
            if e < 0.0 || e != e.round() {
                return Err(Error::Representation(format!(
                    "exponent {e} has no finite expansion around the opposite endpoint"
                )));
            }
            let n = e as u32;
            // (t-a)^n = (L - (b-t))^n, and symmetrically for the right anchor.
            let mut binom = 1.0;
            for k in 0..=n {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                pairs.push((term.coeff * binom * sign * len.powi((n - k) as i32), k as f64));
                binom = binom * f64::from(n - k) / f64::from(k + 1);
            }
        }
        let anchor = match self.anchor {
            Anchor::Left => Anchor::Right,
            Anchor::Right => Anchor::Left,
        };
        Self::new(self.interval, anchor, pairs)
    }

    fn expect_anchor(&self, anchor: Anchor, op: &'static str) -> Result<()> {
        if self.anchor != anchor {
            return Err(domain(op, format!("expected {anchor:?}-anchored power sum")));
        }
        Ok(())
    }
}

impl fmt::Display for PowerSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let base = match self.anchor {
            Anchor::Left => format!("(t-{})", self.interval.a()),
            Anchor::Right => format!("({}-t)", self.interval.b()),
        };
        for (i, term) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if term.exponent == 0.0 {
                write!(f, "{}", term.coeff)?;
            } else {
                write!(f, "{}*{}^{}", term.coeff, base, term.exponent)?;
            }
        }
        Ok(())
    }
}

/// Fractional integral of any order `>= 0` (order 0 is the identity).
fn integral_of_order(p: &PowerSum, order: f64) -> Result<PowerSum> {
    if order == 0.0 {
        return Ok(p.clone());
    }
    let mut out = Vec::with_capacity(p.terms.len());
    for term in &p.terms {
        let beta = term.exponent + 1.0;
        let c = term.coeff * gamma(beta)? / gamma(beta + order)?;
        out.push((c, term.exponent + order));
    }
    PowerSum::new(p.interval, p.anchor, out)
}

/// Riemann-Liouville derivative of order in `(0, 1]`.
///
/// A term whose Γ(β-order) denominator sits on a pole is annihilated; any
/// other term whose result exponent drops to `<= -1` is not representable.
fn rl_derivative_of_order(p: &PowerSum, order: f64) -> Result<PowerSum> {
    let mut out = Vec::with_capacity(p.terms.len());
    for term in &p.terms {
        let beta = term.exponent + 1.0;
        let shifted = beta - order;
        if near_nonpositive_integer(shifted, EXPONENT_TOL) {
            continue;
        }
        let exponent = term.exponent - order;
        if exponent <= -1.0 {
            return Err(Error::NonRepresentable { exponent });
        }
        out.push((term.coeff * gamma(beta)? / gamma(shifted)?, exponent));
    }
    PowerSum::new(p.interval, p.anchor, out)
}

/// Left Riemann-Liouville integral `I^α_{a+}`.
pub fn left_frac_integral(p: &PowerSum, alpha: FracOrder) -> Result<PowerSum> {
    p.expect_anchor(Anchor::Left, "left_frac_integral")?;
    integral_of_order(p, alpha.value())
}

/// Left Riemann-Liouville derivative `D^α_{a+}`.
pub fn left_rl_derivative(p: &PowerSum, alpha: FracOrder) -> Result<PowerSum> {
    p.expect_anchor(Anchor::Left, "left_rl_derivative")?;
    rl_derivative_of_order(p, alpha.value())
}

/// Left Caputo derivative `ᶜD^α_{a+}`: the Riemann-Liouville derivative of
/// `p - p(a)`. Requires all exponents `>= 0`.
pub fn left_caputo_derivative(p: &PowerSum, alpha: FracOrder) -> Result<PowerSum> {
    p.expect_anchor(Anchor::Left, "left_caputo_derivative")?;
    if let Some(e) = p.min_exponent().filter(|e| *e < 0.0) {
        return Err(domain(
            "left_caputo_derivative",
            format!("exponent {e} < 0: p(a) is not finite"),
        ));
    }
    let shifted = p.minus(&PowerSum::constant(p.interval, Anchor::Left, p.constant_term()))?;
    rl_derivative_of_order(&shifted, alpha.value())
}

/// Right Riemann-Liouville integral `I^α_{b-}`.
pub fn right_frac_integral(p: &PowerSum, alpha: FracOrder) -> Result<PowerSum> {
    p.expect_anchor(Anchor::Right, "right_frac_integral")?;
    integral_of_order(p, alpha.value())
}

/// Right Riemann-Liouville derivative `D^α_{b-}`.
pub fn right_rl_derivative(p: &PowerSum, alpha: FracOrder) -> Result<PowerSum> {
    p.expect_anchor(Anchor::Right, "right_rl_derivative")?;
    rl_derivative_of_order(p, alpha.value())
}

/// `∫_a^b (t-a)^β (b-t)^γ dt = (b-a)^(β+γ+1) · B(β+1, γ+1)`.
fn beta_moment(len: f64, left_exp: f64, right_exp: f64) -> Result<f64> {
    if left_exp <= -1.0 {
        return Err(Error::NonIntegrable { exponent: left_exp });
    }
    if right_exp <= -1.0 {
        return Err(Error::NonIntegrable { exponent: right_exp });
    }
    Ok(len.powf(left_exp + right_exp + 1.0) * beta(left_exp + 1.0, right_exp + 1.0)?)
}

/// Exact `∫_a^b left(t)·right(t) dt` for a left- and a right-anchored sum.
pub fn mixed_integral(left: &PowerSum, right: &PowerSum) -> Result<f64> {
    left.expect_anchor(Anchor::Left, "mixed_integral")?;
    right.expect_anchor(Anchor::Right, "mixed_integral")?;
    if left.interval != right.interval {
        return Err(domain("mixed_integral", "operands live on different intervals"));
    }
    let len = left.interval.len();
    let mut acc = 0.0;
    for p in &left.terms {
        for q in &right.terms {
            acc += p.coeff * q.coeff * beta_moment(len, p.exponent, q.exponent)?;
        }
    }
    Ok(acc)
}

/// Exact `(1/Γ(α)) ∫_a^b (b-t)^weight_exp · p(t) · q(t) dt` for left-anchored
/// `p` and `q`, summed term by term through Beta integrals.
pub fn weighted_inner_product(
    p: &PowerSum,
    q: &PowerSum,
    weight_exp: f64,
    alpha: FracOrder,
) -> Result<f64> {
    p.expect_anchor(Anchor::Left, "weighted_inner_product")?;
    q.expect_anchor(Anchor::Left, "weighted_inner_product")?;
    if p.interval != q.interval {
        return Err(domain("weighted_inner_product", "operands live on different intervals"));
    }
    if weight_exp <= -1.0 {
        return Err(Error::NonIntegrable { exponent: weight_exp });
    }
    let len = p.interval.len();
    let mut acc = 0.0;
    for x in &p.terms {
        for y in &q.terms {
            acc += x.coeff * y.coeff * beta_moment(len, x.exponent + y.exponent, weight_exp)?;
        }
    }
    Ok(acc / gamma(alpha.value())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> Interval {
        Interval::unit()
    }

    fn order(a: f64) -> FracOrder {
        FracOrder::new(a).unwrap()
    }

    fn left(terms: &[(f64, f64)]) -> PowerSum {
        PowerSum::new(unit(), Anchor::Left, terms.iter().copied()).unwrap()
    }

    fn right(terms: &[(f64, f64)]) -> PowerSum {
        PowerSum::new(unit(), Anchor::Right, terms.iter().copied()).unwrap()
    }

    const GAMMA_1_5: f64 = 0.886_226_925_452_758;

    #[test]
    fn construction_merges_and_sorts() {
        let p = left(&[(1.0, 2.0), (2.0, 0.5), (3.0, 2.0 + 1e-14), (0.0, 1.0)]);
        assert_eq!(p.terms().len(), 2);
        assert_eq!(p.terms()[0], Term { coeff: 2.0, exponent: 0.5 });
        assert_eq!(p.terms()[1].coeff, 4.0);
        let cancelled = left(&[(1.0, 0.5), (-1.0, 0.5)]);
        assert!(cancelled.is_zero());
        assert!(PowerSum::new(unit(), Anchor::Left, [(1.0, -1.0)]).is_err());
    }

    #[test]
    fn eval_examples() {
        assert_eq!(left(&[(1.0, 0.5)]).eval(0.25).unwrap(), 0.5);
        assert_eq!(PowerSum::zero(unit(), Anchor::Left).eval(0.3).unwrap(), 0.0);
        assert_eq!(right(&[(1.0, -0.5)]).eval(0.75).unwrap(), 2.0);
        assert!(matches!(right(&[(1.0, -0.5)]).eval(1.0), Err(Error::Singular { .. })));
        assert!(left(&[(1.0, 0.5)]).eval(1.5).is_err());
        assert_eq!(left(&[(3.0, 0.0), (1.0, 0.5)]).eval(0.0).unwrap(), 3.0);
    }

    #[test]
    fn left_integral_examples() {
        let one = PowerSum::constant(unit(), Anchor::Left, 1.0);
        let i = left_frac_integral(&one, order(0.5)).unwrap();
        assert!((i.eval(1.0).unwrap() - std::f64::consts::FRAC_2_SQRT_PI).abs() < 1e-15);
        assert!(left_frac_integral(&PowerSum::zero(unit(), Anchor::Left), order(0.3))
            .unwrap()
            .is_zero());
        let twice = left_frac_integral(&i, order(0.5)).unwrap();
        assert_eq!(twice.terms().len(), 1);
        assert_eq!(twice.terms()[0].exponent, 1.0);
        assert!((twice.terms()[0].coeff - 1.0).abs() < 1e-15);
    }

    #[test]
    fn left_rl_derivative_examples() {
        let d = left_rl_derivative(&left(&[(1.0, 0.5)]), order(0.5)).unwrap();
        assert_eq!(d.terms().len(), 1);
        assert_eq!(d.terms()[0].exponent, 0.0);
        assert!((d.terms()[0].coeff - GAMMA_1_5).abs() < 1e-15);

        for a in [0.2, 0.5, 0.9] {
            let kernel = left(&[(1.0, a - 1.0)]);
            assert!(left_rl_derivative(&kernel, order(a)).unwrap().is_zero());
        }

        let d1 = left_rl_derivative(&left(&[(1.0, 2.0)]), order(1.0)).unwrap();
        assert_eq!(d1.terms(), &[Term { coeff: 2.0, exponent: 1.0 }]);
    }

    #[test]
    fn rl_derivative_rejects_nonrepresentable() {
        // exponent -0.3 with α = 0.5: result exponent -0.8
        assert!(left_rl_derivative(&left(&[(1.0, -0.3)]), order(0.5)).is_ok());
        // exponent -0.2 with α = 0.9: β-α = -0.1 is not a pole, exponent -1.1
        assert!(matches!(
            left_rl_derivative(&left(&[(1.0, -0.2)]), order(0.9)),
            Err(Error::NonRepresentable { .. })
        ));
    }

    #[test]
    fn caputo_examples() {
        let d = left_caputo_derivative(&left(&[(1.0, 0.0), (1.0, 0.5)]), order(0.5)).unwrap();
        assert_eq!(d.terms().len(), 1);
        assert!((d.terms()[0].coeff - GAMMA_1_5).abs() < 1e-15);
        assert!(left_caputo_derivative(&left(&[(4.2, 0.0)]), order(0.7))
            .unwrap()
            .is_zero());
        let d = left_caputo_derivative(&left(&[(1.0, 0.75)]), order(0.75)).unwrap();
        assert!((d.eval(0.3).unwrap() - 0.919_062_526_848_883_2).abs() < 1e-15);
        assert!(left_caputo_derivative(&left(&[(1.0, -0.5)]), order(0.5)).is_err());
    }

    #[test]
    fn caputo_matches_rl_when_vanishing_at_a() {
        let p = left(&[(1.5, 0.3), (-2.0, 1.7), (0.25, 3.0)]);
        let a = order(0.45);
        assert_eq!(left_caputo_derivative(&p, a).unwrap(), left_rl_derivative(&p, a).unwrap());
    }

    #[test]
    fn right_operator_examples() {
        let one = PowerSum::constant(unit(), Anchor::Right, 1.0);
        let i = right_frac_integral(&one, order(0.5)).unwrap();
        assert!((i.eval(0.0).unwrap() - std::f64::consts::FRAC_2_SQRT_PI).abs() < 1e-15);
        assert!((i.eval(0.75).unwrap() - 0.5 * std::f64::consts::FRAC_2_SQRT_PI).abs() < 1e-15);

        let c = right_frac_integral(&right(&[(1.0, -0.5)]), order(0.5)).unwrap();
        assert_eq!(c.terms()[0].exponent, 0.0);
        assert!((c.terms()[0].coeff - std::f64::consts::PI.sqrt()).abs() < 1e-14);

        for a in [0.3, 0.5, 0.8] {
            let kernel = right(&[(2.0, a - 1.0)]);
            assert!(right_rl_derivative(&kernel, order(a)).unwrap().is_zero());
        }
        let d = right_rl_derivative(&right(&[(1.0, 1.0)]), order(1.0)).unwrap();
        assert_eq!(d.terms(), &[Term { coeff: 1.0, exponent: 0.0 }]);
        let d = right_rl_derivative(&right(&[(1.0, 0.5)]), order(0.5)).unwrap();
        assert!((d.terms()[0].coeff - GAMMA_1_5).abs() < 1e-15);
    }

    #[test]
    fn anchor_mismatch_is_rejected() {
        let r = right(&[(1.0, 1.0)]);
        assert!(left_frac_integral(&r, order(0.5)).is_err());
        assert!(right_frac_integral(&left(&[(1.0, 1.0)]), order(0.5)).is_err());
        assert!(r.plus(&left(&[(1.0, 1.0)])).is_err());
    }

    #[test]
    fn weighted_inner_product_examples() {
        let a = order(0.5);
        let one = PowerSum::constant(unit(), Anchor::Left, 1.0);
        let v = weighted_inner_product(&one, &one, -0.5, a).unwrap();
        assert!((v - std::f64::consts::FRAC_2_SQRT_PI).abs() < 1e-14);
        let half = left(&[(1.0, 0.5)]);
        let v = weighted_inner_product(&half, &one, -0.5, a).unwrap();
        assert!((v - GAMMA_1_5).abs() < 1e-14);
        let zero = PowerSum::zero(unit(), Anchor::Left);
        assert_eq!(weighted_inner_product(&zero, &zero, -0.5, a).unwrap(), 0.0);
        assert!(weighted_inner_product(&one, &one, -1.0, a).is_err());
        let sing = left(&[(1.0, -0.6)]);
        assert!(matches!(
            weighted_inner_product(&sing, &sing, 0.0, a),
            Err(Error::NonIntegrable { .. })
        ));
    }

    #[test]
    fn reanchoring_integer_polynomials() {
        let p = left(&[(2.0, 0.0), (-1.0, 1.0), (3.0, 2.0)]);
        let r = p.reanchored().unwrap();
        assert_eq!(r.anchor(), Anchor::Right);
        for t in [0.0, 0.3, 0.9, 1.0] {
            assert!((p.eval(t).unwrap() - r.eval(t).unwrap()).abs() < 1e-14);
        }
        assert!(left(&[(1.0, 0.5)]).reanchored().is_err());
    }

    #[test]
    fn mixed_integral_matches_beta() {
        let l = left(&[(1.0, 0.5)]);
        let r = right(&[(1.0, -0.5)]);
        assert!((mixed_integral(&l, &r).unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-14);
    }

    #[test]
    fn exponents_snap_to_integers() {
        let p = left(&[(1.0, 1.0 + 1e-15)]);
        assert_eq!(p.terms()[0].exponent, 1.0);
    }
}
