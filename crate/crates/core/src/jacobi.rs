//! Jacobi coefficients of the measures `mu` and `nu`, and everything derived
//! from them: moments, norms, Gauss rules and support estimates.
//!
//! A measure is never stored as a density. The pair `(b_n, a_n)` of the
//! monic recurrence `x P_n = P_{n+1} + b_n P_n + a_n P_{n-1}` is the measure.

use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::params::{Framework, MeixnerParams};
use crate::scalar::{int, Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct JacobiCoeffs<S = Rational> {
    b: Vec<S>,
    /// `a[k]` holds `a_{k+1}`.
    a: Vec<S>,
}

impl<S: Scalar> JacobiCoeffs<S> {
    /// `b = (b_0, ..., b_N)`, `a = (a_1, ..., a_M)`.
    pub fn new(b: Vec<S>, a: Vec<S>) -> Self {
        Self { b, a }
    }

    pub fn b(&self, n: usize) -> Result<S> {
        self.b
            .get(n)
            .cloned()
            .ok_or(Error::InsufficientCoefficients { needed: n, available: self.b.len().saturating_sub(1) })
    }

    /// `a_n` for `n >= 1`.
    pub fn a(&self, n: usize) -> Result<S> {
        debug_assert!(n >= 1, "a_0 is not defined");
        self.a
            .get(n - 1)
            .cloned()
            .ok_or(Error::InsufficientCoefficients { needed: n, available: self.a.len() })
    }

    pub fn diagonal(&self) -> &[S] {
        &self.b
    }

    /// `(a_1, a_2, ...)`.
    pub fn off_diagonal(&self) -> &[S] {
        &self.a
    }

    /// Highest diagonal index `N`.
    pub fn len(&self) -> usize {
        self.b.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    /// `a_1 = 0` encodes the point mass at `b_0`.
    pub fn is_point_mass(&self) -> bool {
        self.a.first().is_none_or(|a1| a1.is_zero())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> JacobiCoeffs<T> {
        JacobiCoeffs { b: self.b.iter().map(&f).collect(), a: self.a.iter().map(&f).collect() }
    }
}

/// Recurrence coefficients of `mu^{(t)}_{lambda,eta}`, indices up to `order`.
///
/// Classical: `b_n = lambda n`, `a_n = n (t + eta (n - 1))`.
/// Free: `b_0 = 0`, `b_n = lambda`; `a_1 = t`, `a_n = t + eta`.
pub fn mu_jacobi(p: &MeixnerParams, order: usize) -> JacobiCoeffs {
    let (lambda, eta, t) = (p.lambda(), p.eta(), p.t());
    let b = (0..=order)
        .map(|n| match p.framework() {
            Framework::Classical => lambda * int(n as i64),
            Framework::Free if n == 0 => Rational::zero(),
            Framework::Free => lambda.clone(),
        })
        .collect();
    let a = (1..=order)
        .map(|n| match p.framework() {
            Framework::Classical => int(n as i64) * (t + eta * int(n as i64 - 1)),
            Framework::Free if n == 1 => t.clone(),
            Framework::Free => t + eta,
        })
        .collect();
    JacobiCoeffs { b, a }
}

/// Recurrence coefficients of `nu_{lambda,eta}` (independent of `t`).
///
/// Classical: `b_n = lambda (n + 1)`, `a_n = eta n (n + 1)`.
/// Free: `b_n = lambda`, `a_n = eta`. With `eta = 0` both encode `delta_lambda`.
pub fn nu_jacobi(p: &MeixnerParams, order: usize) -> JacobiCoeffs {
    let (lambda, eta) = (p.lambda(), p.eta());
    let b = (0..=order)
        .map(|n| match p.framework() {
            Framework::Classical => lambda * int(n as i64 + 1),
            Framework::Free => lambda.clone(),
        })
        .collect();
    let a = (1..=order)
        .map(|n| match p.framework() {
            Framework::Classical => eta * int((n * (n + 1)) as i64),
            Framework::Free => eta.clone(),
        })
        .collect();
    JacobiCoeffs { b, a }
}

/// Moment sequence `m(0), ..., m(N)` with `m(0) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentSeq<S = Rational>(Vec<S>);

impl<S: Scalar> MomentSeq<S> {
    pub fn new(m: Vec<S>) -> Self {
        Self(m)
    }

    pub fn get(&self, n: usize) -> Option<&S> {
        self.0.get(n)
    }

    pub fn as_slice(&self) -> &[S] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<S> {
        self.0
    }

    /// Highest index available.
    pub fn order(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    /// Contracts a coefficient vector against the moments: `sum_k c_k m(k)`.
    pub fn contract(&self, c: &[S]) -> Result<S> {
        if c.len() > self.0.len() {
            return Err(Error::InsufficientMoments { needed: c.len() - 1, available: self.order() });
        }
        Ok(c.iter()
            .zip(&self.0)
            .fold(S::zero(), |acc, (ck, mk)| acc + ck.clone() * mk.clone()))
    }
}

/// `m(n)` is the `P_0` coordinate of `x^n` expanded in the orthogonal basis,
/// i.e. the top-left entry of the n-th power of the Jacobi matrix.
pub fn moments<S: Scalar>(jacobi: &JacobiCoeffs<S>, order: usize) -> Result<MomentSeq<S>> {
    let mut out = Vec::with_capacity(order + 1);
    out.push(S::one());
    // coordinates of x^k in the P-basis, truncated to what can still reach P_0
    let mut c: Vec<S> = vec![S::one()];
    for step in 1..=order {
        let remaining = order - step;
        let width = (c.len() + 1).min(remaining + 1);
        let mut next = vec![S::zero(); width];
        for (j, cj) in c.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            if j + 1 < width {
                next[j + 1] = next[j + 1].clone() + cj.clone();
            }
            if j < width {
                next[j] = next[j].clone() + jacobi.b(j)? * cj.clone();
            }
            if j >= 1 && j - 1 < width {
                next[j - 1] = next[j - 1].clone() + jacobi.a(j)? * cj.clone();
            }
        }
        out.push(next[0].clone());
        c = next;
    }
    Ok(MomentSeq(out))
}

/// `||P_n||^2 = a_1 ... a_n` for `n = 0..=order`.
pub fn norms<S: Scalar>(jacobi: &JacobiCoeffs<S>, order: usize) -> Result<Vec<S>> {
    let mut out = Vec::with_capacity(order + 1);
    let mut acc = S::one();
    out.push(acc.clone());
    for n in 1..=order {
        let an = jacobi.a(n)?;
        if an.is_zero() || an.re_f64() <= 0.0 {
            return Err(Error::NonPositiveOffDiagonal { index: n });
        }
        acc = acc * an;
        out.push(acc.clone());
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(x, w)| w * f(*x)).sum()
    }

    /// Error of the rule on `x^k` against the exact moment, relative to
    /// `int |x|^k` (the natural scale; odd moments may vanish).
    pub fn moment_error(&self, k: usize, exact: f64) -> f64 {
        let approx = self.integrate(|x| x.powi(k as i32));
        let scale = self.integrate(|x| x.abs().powi(k as i32)).max(exact.abs());
        if scale == 0.0 {
            approx.abs()
        } else {
            (approx - exact).abs() / scale
        }
    }
}

/// Golub-Welsch: nodes are the eigenvalues of the symmetrized `m x m`
/// Jacobi matrix, weights the squared first components of its normalized
/// eigenvectors. The point-mass encoding yields the one-point rule at `b_0`.
pub fn gauss_quadrature<S: Scalar>(jacobi: &JacobiCoeffs<S>, m: usize) -> Result<QuadratureRule> {
    if m == 0 {
        return Err(Error::OrderTooSmall { min: 1, got: 0 });
    }
    if m == 1 || jacobi.is_point_mass() {
        return Ok(QuadratureRule { nodes: vec![jacobi.b(0)?.re_f64()], weights: vec![1.0] });
    }
    let b = (0..m).map(|i| jacobi.b(i).map(|v| v.re_f64())).collect::<Result<Vec<_>>>()?;
    let mut sqrt_a = Vec::with_capacity(m);
    for k in 1..m {
        let ak = jacobi.a(k)?.re_f64();
        if ak.is_nan() || ak <= 0.0 {
            return Err(Error::NonPositiveOffDiagonal { index: k });
        }
        sqrt_a.push(ak.sqrt());
    }
    let mut mat = DMatrix::<f64>::zeros(m, m);
    for i in 0..m {
        mat[(i, i)] = b[i];
    }
    for (k, s) in sqrt_a.iter().enumerate() {
        mat[(k, k + 1)] = *s;
        mat[(k + 1, k)] = *s;
    }
    let eig = SymmetricEigen::try_new(mat, f64::EPSILON, 10_000).ok_or(Error::EigenFailure)?;
    let mut nodes: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    nodes.sort_by(f64::total_cmp);
    // Newton polish on the characteristic polynomial, then Christoffel
    // weights 1 / sum p_k(x)^2 in the orthonormal basis; both keep relative
    // accuracy at the extreme nodes, where the weights are tiny.
    let mut weights = Vec::with_capacity(m);
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (value, slope, _) = orthonormal_eval(&b, &sqrt_a, *x);
            if slope == 0.0 || !slope.is_finite() {
                break;
            }
            let step = value / slope;
            if !step.is_finite() || step.abs() > 1e-6 * (1.0 + x.abs()) {
                break;
            }
            *x -= step;
        }
        let (_, _, sum_sq) = orthonormal_eval(&b, &sqrt_a, *x);
        weights.push(sum_sq.recip());
    }
    if nodes.iter().chain(&weights).any(|v| !v.is_finite()) {
        return Err(Error::EigenFailure);
    }
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);
    Ok(QuadratureRule { nodes, weights })
}

/// Orthonormal recurrence at `x`: the `m`-th polynomial (up to the positive
/// factor `sqrt(a_m)`), its derivative, and `sum_{k<m} p_k(x)^2`.
fn orthonormal_eval(b: &[f64], sqrt_a: &[f64], x: f64) -> (f64, f64, f64) {
    let (mut p_prev, mut p) = (0.0, 1.0);
    let (mut d_prev, mut d) = (0.0, 0.0);
    let mut sum_sq = 1.0;
    for k in 0..b.len() {
        let back = if k == 0 { 0.0 } else { sqrt_a[k - 1] };
        let next = (x - b[k]) * p - back * p_prev;
        let next_d = p + (x - b[k]) * d - back * d_prev;
        let scale = sqrt_a.get(k).copied().unwrap_or(1.0);
        p_prev = p;
        d_prev = d;
        p = next / scale;
        d = next_d / scale;
        if k + 1 < b.len() {
            sum_sq += p * p;
        }
    }
    (p, d, sum_sq)
}

/// `[min node, max node]` of the `m`-point rule. Meant for free-framework
/// data, whose Jacobi matrix is bounded.
pub fn support_estimate<S: Scalar>(jacobi: &JacobiCoeffs<S>, m: usize) -> Result<(f64, f64)> {
    let rule = gauss_quadrature(jacobi, m)?;
    Ok((rule.nodes[0], *rule.nodes.last().expect("nonempty rule")))
}

/// Weighted integral of a polynomial, given in the monomial basis, against
/// the measure encoded by `jacobi`; exact for exact scalars.
pub fn integrate_poly<S: Scalar>(jacobi: &JacobiCoeffs<S>, coeffs: &[S]) -> Result<S> {
    if coeffs.is_empty() {
        return Ok(S::zero());
    }
    moments(jacobi, coeffs.len() - 1)?.contract(coeffs)
}
