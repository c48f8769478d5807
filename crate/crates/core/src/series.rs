//! Truncated formal power series and the transforms of the Meixner classes:
//! `Psi`, its compositional inverse, the cumulant transform `C`, the
//! generating functions and the raising symbols.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::jacobi::{moments, nu_jacobi};
use crate::params::{alpha_beta, Framework, MeixnerParams};
use crate::scalar::{int, QuadraticSurd, Rational, Scalar};

/// Coefficients `c_0, ..., c_N`; every result is exact modulo `z^{N+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<S = Rational> {
    coeffs: Vec<S>,
}

fn precondition(index: usize, reason: &'static str) -> Error {
    Error::SeriesPrecondition { index, reason }
}

impl<S: Scalar> TruncatedSeries<S> {
    /// Pads with zeros or truncates to `order + 1` coefficients.
    pub fn new(mut coeffs: Vec<S>, order: usize) -> Self {
        coeffs.resize(order + 1, S::zero());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn constant(c: S, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(S::one(), order)
    }

    /// The series `z`.
    pub fn var(order: usize) -> Self {
        Self::new(vec![S::zero(), S::one()], order)
    }

    /// `c_0 + c_1 z` (plus `c_2 z^2` and so on) from a short coefficient list.
    pub fn from_poly(cs: &[S], order: usize) -> Self {
        Self::new(cs.to_vec(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Self::new(self.coeffs[..=order].to_vec(), order)
    }

    pub fn scale(&self, s: &S) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect() }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> TruncatedSeries<T> {
        TruncatedSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Multiplication by `z^k`; the order grows by `k`.
    pub fn mul_z_pow(&self, k: usize) -> Self {
        let mut coeffs = vec![S::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Division by `z^k`; the order shrinks by `k`.
    pub fn div_z_pow(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(precondition(self.order(), "order too small for division by z^k"));
        }
        if let Some(i) = (0..k).find(|&i| !self.coeffs[i].is_zero()) {
            return Err(precondition(i, "coefficient must vanish for division by z^k"));
        }
        Ok(Self { coeffs: self.coeffs[k..].to_vec() })
    }

    /// Reciprocal `1 / f`; needs an invertible constant term.
    pub fn recip(&self) -> Result<Self> {
        let inv0 = self.coeffs[0]
            .try_inv()
            .ok_or_else(|| precondition(0, "constant term must be invertible"))?;
        let n = self.order();
        let mut out: Vec<S> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let acc = (1..=k).fold(S::zero(), |acc, j| acc + self.coeffs[j].clone() * out[k - j].clone());
            out.push(-(acc * inv0.clone()));
        }
        Ok(Self { coeffs: out })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    /// `f(g(z))`; `g` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(precondition(0, "inner series must have zero constant term"));
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = Self::constant(self.coeffs[order].clone(), order);
        for k in (0..order).rev() {
            acc = &acc * &inner;
            acc.coeffs[0] = acc.coeffs[0].clone() + self.coeffs[k].clone();
        }
        Ok(acc)
    }

    /// Compositional inverse `h` with `f(h(z)) = z`.
    pub fn comp_inverse(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(precondition(0, "constant term must be zero"));
        }
        let order = self.order();
        if order == 0 {
            return Ok(Self::zero(0));
        }
        let inv1 = self.coeffs[1]
            .try_inv()
            .ok_or_else(|| precondition(1, "linear term must be nonzero"))?;
        let mut h = Self::new(vec![S::zero(), inv1.clone()], order);
        // coefficient n of f(h) depends on h_n only through c_1 h_n
        for n in 2..=order {
            let partial = self.truncate(n).compose(&h.truncate(n))?;
            let err = partial.coeffs[n].clone();
            h.coeffs[n] = h.coeffs[n].clone() - err * inv1.clone();
        }
        Ok(h)
    }

    /// Square root with constant term `+1`; needs `c_0 = 1`.
    pub fn sqrt(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(precondition(0, "constant term must be 1"));
        }
        let n = self.order();
        let half = S::from_rational(&Rational::new(1.into(), 2.into()));
        let mut out: Vec<S> = Vec::with_capacity(n + 1);
        out.push(S::one());
        for k in 1..=n {
            let cross = (1..k).fold(S::zero(), |acc, j| acc + out[j].clone() * out[k - j].clone());
            out.push((self.coeffs[k].clone() - cross) * half.clone());
        }
        Ok(Self { coeffs: out })
    }

    /// `exp(f)`; needs `c_0 = 0`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(precondition(0, "constant term must be 0"));
        }
        let n = self.order();
        let mut out: Vec<S> = Vec::with_capacity(n + 1);
        out.push(S::one());
        for k in 1..=n {
            let acc = (1..=k).fold(S::zero(), |acc, j| {
                acc + S::from_int(j as i64) * self.coeffs[j].clone() * out[k - j].clone()
            });
            out.push(acc.div_by(&S::from_int(k as i64)));
        }
        Ok(Self { coeffs: out })
    }

    /// `log(f)`; needs `c_0 = 1`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(precondition(0, "constant term must be 1"));
        }
        let n = self.order();
        if n == 0 {
            return Ok(Self::zero(0));
        }
        let quotient = self.derivative().div(&self.truncate(n - 1))?;
        Ok(quotient.integral())
    }

    /// `f'`, known to order `N - 1`.
    pub fn derivative(&self) -> Self {
        let n = self.order();
        if n == 0 {
            return Self::zero(0);
        }
        Self {
            coeffs: (1..=n).map(|k| self.coeffs[k].clone() * S::from_int(k as i64)).collect(),
        }
    }

    /// Antiderivative with zero constant term, known to order `N + 1`.
    pub fn integral(&self) -> Self {
        let mut coeffs = vec![S::zero()];
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c.div_by(&S::from_int(k as i64 + 1))),
        );
        Self { coeffs }
    }

    pub fn max_distance(&self, other: &Self) -> f64 {
        let n = self.order().min(other.order());
        (0..=n)
            .map(|k| self.coeffs[k].distance(&other.coeffs[k]))
            .fold(0.0, f64::max)
    }

    /// First index where the two series differ, up to the smaller order.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let n = self.order().min(other.order());
        (0..=n).find(|&k| self.coeffs[k] != other.coeffs[k])
    }
}

impl<S: Scalar> Add for &TruncatedSeries<S> {
    type Output = TruncatedSeries<S>;
    fn add(self, rhs: Self) -> TruncatedSeries<S> {
        let n = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=n).map(|k| self.coeffs[k].clone() + rhs.coeffs[k].clone()).collect(),
        }
    }
}

impl<S: Scalar> Sub for &TruncatedSeries<S> {
    type Output = TruncatedSeries<S>;
    fn sub(self, rhs: Self) -> TruncatedSeries<S> {
        let n = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=n).map(|k| self.coeffs[k].clone() - rhs.coeffs[k].clone()).collect(),
        }
    }
}

impl<S: Scalar> Mul for &TruncatedSeries<S> {
    type Output = TruncatedSeries<S>;
    fn mul(self, rhs: Self) -> TruncatedSeries<S> {
        let n = self.order().min(rhs.order());
        let mut out = vec![S::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                out[i + j] = out[i + j].clone() + self.coeffs[i].clone() * rhs.coeffs[j].clone();
            }
        }
        TruncatedSeries { coeffs: out }
    }
}

impl<S: Scalar> Neg for &TruncatedSeries<S> {
    type Output = TruncatedSeries<S>;
    fn neg(self) -> TruncatedSeries<S> {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

/// `1 + lambda z + eta z^2`.
fn quadratic(lambda: &Rational, eta: &Rational, order: usize) -> TruncatedSeries {
    TruncatedSeries::new(vec![Rational::one(), lambda.clone(), eta.clone()], order)
}

fn check_order(order: usize, min: usize) -> Result<()> {
    if order < min {
        return Err(Error::OrderTooSmall { min, got: order });
    }
    Ok(())
}

fn factorial(n: usize) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| acc * int(k))
}

/// Free `Psi_{lambda,eta}(z) = z / (1 + lambda z + eta z^2)`.
pub fn psi_free(lambda: &Rational, eta: &Rational, order: usize) -> TruncatedSeries {
    let denom = quadratic(lambda, eta, order).recip().expect("unit constant term");
    &TruncatedSeries::var(order) * &denom
}

/// Free `C_{lambda,eta}(Psi_{lambda,eta}(z)) = z^2 / (1 + lambda z + eta z^2)`.
pub fn c_compose_psi_free(lambda: &Rational, eta: &Rational, order: usize) -> TruncatedSeries {
    let denom = quadratic(lambda, eta, order).recip().expect("unit constant term");
    &TruncatedSeries::new(vec![Rational::zero(), Rational::zero(), Rational::one()], order) * &denom
}

/// Cumulant transform `C^{(t)} = t C` through its Levy-measure expansion: the
/// `z^n` coefficient is `t m_nu(n-2) / n!` classically and `t m_nu(n-2)` in
/// the free case.
pub fn cumulant_series(p: &MeixnerParams, order: usize) -> Result<TruncatedSeries> {
    check_order(order, 2)?;
    let nu = moments(&nu_jacobi(p, order), order - 2)?;
    let mut coeffs = vec![Rational::zero(); 2];
    for n in 2..=order {
        let m = nu.get(n - 2).expect("computed above") * p.t();
        coeffs.push(match p.framework() {
            Framework::Classical => m / factorial(n),
            Framework::Free => m,
        });
    }
    Ok(TruncatedSeries::new(coeffs, order))
}

/// `Psi^{-1}_{lambda,eta}`: `C'` classically, `comp_inverse(Psi)` in the free case.
pub fn psi_inv(p: &MeixnerParams, order: usize) -> Result<TruncatedSeries> {
    check_order(order, 1)?;
    let unit = p.with_t(Rational::one())?;
    match p.framework() {
        Framework::Classical => Ok(cumulant_series(&unit, order + 1)?.derivative()),
        Framework::Free => psi_free(p.lambda(), p.eta(), order).comp_inverse(),
    }
}

/// `Psi_{lambda,eta}`: the free closed form, or the compositional inverse of
/// `C'` classically.
pub fn psi(p: &MeixnerParams, order: usize) -> Result<TruncatedSeries> {
    match p.framework() {
        Framework::Classical => psi_inv(p, order)?.comp_inverse(),
        Framework::Free => Ok(psi_free(p.lambda(), p.eta(), order)),
    }
}

/// `(e^{z delta} - 1) / delta`, expanded without dividing by `delta`.
fn exp_difference<S: Scalar>(delta: &S, order: usize) -> TruncatedSeries<S> {
    let mut coeffs = vec![S::zero()];
    let mut term = S::one(); // delta^{n-1} / n!
    for n in 1..=order {
        term = term.div_by(&S::from_int(n as i64));
        coeffs.push(term.clone());
        term = term * delta.clone();
    }
    TruncatedSeries::new(coeffs, order)
}

/// Classical `Psi^{-1}` from the root pair: `E / (1 + alpha E)` with
/// `E = (e^{z(alpha-beta)} - 1)/(alpha - beta)`, and the limit
/// `z / (1 + alpha z)` when `alpha = beta`.
pub fn psi_inv_exponential<S: Scalar>(alpha: &S, beta: &S, order: usize) -> Result<TruncatedSeries<S>> {
    let e = if alpha == beta {
        TruncatedSeries::var(order)
    } else {
        exp_difference(&(alpha.clone() - beta.clone()), order)
    };
    let denom = &TruncatedSeries::one(order) + &e.scale(alpha);
    e.div(&denom)
}

/// Free `Psi^{-1}_{lambda,eta}` from the square-root closed form
/// `(1 - lambda z - sqrt((1 - lambda z)^2 - 4 eta z^2)) / (2 eta z)`;
/// `z / (1 - lambda z)` when `eta = 0`.
pub fn psi_inv_free_sqrt(lambda: &Rational, eta: &Rational, order: usize) -> Result<TruncatedSeries> {
    if eta.is_zero() {
        let denom = TruncatedSeries::new(vec![Rational::one(), -lambda.clone()], order);
        return TruncatedSeries::var(order).div(&denom);
    }
    let root = free_radical(lambda, eta, order + 1)?;
    let one_minus = TruncatedSeries::new(vec![Rational::one(), -lambda.clone()], order + 1);
    let numer = &one_minus - &root;
    Ok(numer.div_z_pow(1)?.scale(&(int(2) * eta).recip()))
}

/// `sqrt((1 - lambda z)^2 - 4 eta z^2)`.
fn free_radical(lambda: &Rational, eta: &Rational, order: usize) -> Result<TruncatedSeries> {
    let inside = TruncatedSeries::new(
        vec![Rational::one(), int(-2) * lambda, lambda * lambda - int(4) * eta],
        order,
    );
    inside.sqrt()
}

/// `Psi^{-1}` through the closed forms: the root-pair exponential formula
/// classically (exact in `Q(sqrt(lambda^2 - 4 eta))`), the square-root form
/// in the free case.
pub fn psi_inv_closed_form(p: &MeixnerParams, order: usize) -> Result<TruncatedSeries> {
    match p.framework() {
        Framework::Classical => {
            let ab = alpha_beta(p.lambda(), p.eta())?;
            let series = psi_inv_exponential(&ab.alpha, &ab.beta, order)?;
            surd_series_to_rational(&series)
        }
        Framework::Free => psi_inv_free_sqrt(p.lambda(), p.eta(), order),
    }
}

/// Drops the `sqrt(d)` parts, requiring each to vanish exactly.
pub fn surd_series_to_rational(s: &TruncatedSeries<QuadraticSurd>) -> Result<TruncatedSeries> {
    let coeffs = s
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            c.as_rational()
                .cloned()
                .ok_or_else(|| Error::Mismatch(format!("irrational part survives at coefficient {k}: {c}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TruncatedSeries::new(coeffs, s.order()))
}

/// Closed-form generating function evaluated at `x0`. Coefficient `n` is
/// `P_n(x0) / n!` classically and `P_n(x0)` in the free case.
pub fn generating_function(p: &MeixnerParams, x0: &Rational, order: usize) -> Result<TruncatedSeries> {
    check_order(order, 1)?;
    match p.framework() {
        Framework::Classical => {
            // C needs order >= 2
            let work = order.max(2);
            let psi = psi(p, work)?;
            let c_of_psi = cumulant_series(p, work)?.compose(&psi)?;
            let exponent = &psi.scale(x0) - &c_of_psi;
            Ok(exponent.exp()?.truncate(order))
        }
        Framework::Free => {
            let psi = psi_free(p.lambda(), p.eta(), order);
            let c_of_psi = c_compose_psi_free(p.lambda(), p.eta(), order).scale(p.t());
            let denom = &(&TruncatedSeries::one(order) - &psi.scale(x0)) + &c_of_psi;
            denom.recip()
        }
    }
}

/// Raising symbol `(A, B)` with `raise(e^{xz}) = (x A + B) e^{xz}`
/// (classical) or `raise((1 - xz)^{-1}) = (x A + B)(1 - xz)^{-1}` (free),
/// from `A = 1 / (1 + lambda w + eta w^2)`, `B = -w A`.
///
/// `w = Psi^{-1}_{lambda,eta}` classically and `Psi^{-1}_{lambda,eta+1}` in
/// the free case.
pub fn raising_symbol_from_psi_inv(p: &MeixnerParams, order: usize) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let w = match p.framework() {
        Framework::Classical => psi_inv(p, order)?,
        Framework::Free => psi_inv(&p.eta_plus_one(), order)?,
    };
    let denom = &(&TruncatedSeries::one(order) + &w.scale(p.lambda())) + &(&w * &w).scale(p.eta());
    let a = denom.recip()?;
    let b = -&(&w * &a);
    Ok((a, b))
}

/// Classical raising symbol from the root pair:
/// `A = e^{-z delta} (1 + alpha E)^2`, `B = -e^{-z delta} (1 + alpha E) E`,
/// `delta = alpha - beta`; `A = (1 + alpha z)^2`, `B = -(1 + alpha z) z` when
/// `alpha = beta`.
pub fn raising_symbol_exponential<S: Scalar>(
    alpha: &S,
    beta: &S,
    order: usize,
) -> Result<(TruncatedSeries<S>, TruncatedSeries<S>)> {
    let one = TruncatedSeries::<S>::one(order);
    if alpha == beta {
        let lin = &one + &TruncatedSeries::var(order).scale(alpha);
        let a = &lin * &lin;
        let b = -&(&lin * &TruncatedSeries::var(order));
        return Ok((a, b));
    }
    let delta = alpha.clone() - beta.clone();
    let e = exp_difference(&delta, order);
    let decay = TruncatedSeries::var(order).scale(&-delta).exp()?;
    let lin = &one + &e.scale(alpha);
    let a = &decay * &(&lin * &lin);
    let b = -&(&decay * &(&lin * &e));
    Ok((a, b))
}

/// Free raising symbol through composition:
/// `A = Psi_{l,e}(w) / w`, `B = -Psi_{l,e}(w)` with `w = Psi^{-1}_{l,e+1}`.
pub fn free_raising_symbol_by_composition(
    lambda: &Rational,
    eta: &Rational,
    order: usize,
) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let work = order + 1;
    let w = psi_free(lambda, &(eta + Rational::one()), work).comp_inverse()?;
    let composed = psi_free(lambda, eta, work).compose(&w)?;
    let a = composed.div_z_pow(1)?.div(&w.div_z_pow(1)?)?;
    let b = -&composed.truncate(order);
    Ok((a, b))
}

/// Free raising symbol through the square-root closed forms.
pub fn free_raising_symbol_closed_form(
    lambda: &Rational,
    eta: &Rational,
    order: usize,
) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let work = order + 2;
    let eta1 = eta + Rational::one();
    let root = free_radical(lambda, &eta1, work)?;
    // 2 eta + 1 + lambda z + sqrt(...)
    let big = &TruncatedSeries::new(vec![int(2) * eta + Rational::one(), lambda.clone()], work) + &root;
    // 1 - lambda z - sqrt(...) = 2 (eta + 1) z^2 + O(z^3)
    let small = &TruncatedSeries::new(vec![Rational::one(), -lambda.clone()], work) - &root;
    let numer_a = TruncatedSeries::constant(int(4) * &eta1 * &eta1, order);
    let a = numer_a.div(&(&big.truncate(order) * &small.div_z_pow(2)?))?;
    let numer_b = TruncatedSeries::var(work).scale(&(int(-2) * &eta1));
    let b = numer_b.div(&big)?.truncate(order);
    Ok((a, b))
}

/// Free raising symbol `(A, B)`; both constructions must agree exactly.
pub fn free_raising_symbol(lambda: &Rational, eta: &Rational, order: usize) -> Result<(TruncatedSeries, TruncatedSeries)> {
    check_order(order, 1)?;
    let (a1, b1) = free_raising_symbol_by_composition(lambda, eta, order)?;
    let (a2, b2) = free_raising_symbol_closed_form(lambda, eta, order)?;
    if let Some(k) = a1.first_difference(&a2) {
        return Err(Error::Mismatch(format!("free raising symbol A differs at z^{k}")));
    }
    if let Some(k) = b1.first_difference(&b2) {
        return Err(Error::Mismatch(format!("free raising symbol B differs at z^{k}")));
    }
    Ok((a1, b1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ops_from_jacobi;
    use crate::jacobi::mu_jacobi;
    use crate::scalar::rat;
    use num_complex::Complex64;
    use proptest::prelude::*;

    type T = TruncatedSeries<Rational>;

    fn ints(cs: &[i64], order: usize) -> T {
        T::new(cs.iter().map(|&c| int(c)).collect(), order)
    }

    fn params(fw: Framework, l: Rational, e: Rational) -> MeixnerParams {
        MeixnerParams::unit(fw, l, e).unwrap()
    }

    fn grid() -> Vec<(Rational, Rational)> {
        vec![(int(0), int(0)), (int(1), int(0)), (int(2), int(1)), (int(3), int(2)), (int(1), int(1)), (rat(-1, 2), rat(1, 3))]
    }

    #[test]
    fn primitive_examples() {
        let f = ints(&[0, 1, 1], 4);
        let inv = f.comp_inverse().unwrap();
        assert_eq!(inv, ints(&[0, 1, -1, 2, -5], 4));
        assert_eq!(f.compose(&inv).unwrap(), T::var(4));

        let s = ints(&[1, 0, -4], 4).sqrt().unwrap();
        assert_eq!(s, ints(&[1, 0, -2, 0, -2], 4));
        assert_eq!(&s * &s, ints(&[1, 0, -4], 4));

        assert_eq!(T::zero(5).exp().unwrap(), T::one(5));
    }

    #[test]
    fn precondition_errors_name_the_index() {
        let f = ints(&[1, 1], 3);
        assert_eq!(f.comp_inverse().unwrap_err(), precondition(0, "constant term must be zero"));
        assert!(matches!(ints(&[0, 0, 1], 3).comp_inverse(), Err(Error::SeriesPrecondition { index: 1, .. })));
        assert!(matches!(ints(&[2, 1], 3).sqrt(), Err(Error::SeriesPrecondition { index: 0, .. })));
        assert!(matches!(ints(&[1], 3).exp(), Err(Error::SeriesPrecondition { index: 0, .. })));
        assert!(matches!(ints(&[0, 1], 3).recip(), Err(Error::SeriesPrecondition { index: 0, .. })));
        assert!(matches!(ints(&[0, 1], 3).log(), Err(Error::SeriesPrecondition { index: 0, .. })));
        assert!(matches!(ints(&[1, 1], 3).compose(&ints(&[1], 3)), Err(Error::SeriesPrecondition { index: 0, .. })));
        assert!(matches!(ints(&[1, 1], 3).div_z_pow(1), Err(Error::SeriesPrecondition { index: 0, .. })));
    }

    #[test]
    fn exp_and_log_are_inverse() {
        let f = T::new(vec![int(0), rat(1, 2), int(-3), rat(2, 7)], 8);
        assert_eq!(f.exp().unwrap().log().unwrap(), f.truncate(8));
        // exp(z) = sum z^n / n!
        let e = T::var(6).exp().unwrap();
        for n in 0..=6 {
            assert_eq!(e.coeff(n), factorial(n).recip());
        }
    }

    #[test]
    fn psi_free_examples() {
        assert_eq!(psi_free(&int(0), &int(0), 6), T::var(6));
        assert_eq!(psi_free(&int(0), &int(1), 5), ints(&[0, 1, 0, -1, 0, 1], 5));
        assert_eq!(psi_free(&int(1), &int(1), 4), ints(&[0, 1, -1, 0, 1], 4));
        // multiply back
        let p = psi_free(&rat(2, 3), &rat(5, 2), 10);
        assert_eq!(&p * &quadratic(&rat(2, 3), &rat(5, 2), 10), T::var(10));
    }

    #[test]
    fn c_compose_psi_examples() {
        assert_eq!(c_compose_psi_free(&int(0), &int(0), 5), ints(&[0, 0, 1], 5));
        assert_eq!(c_compose_psi_free(&int(0), &int(1), 5), ints(&[0, 0, 1, 0, -1], 5));
        for (l, e) in grid() {
            let p = params(Framework::Free, l.clone(), e.clone());
            let c = cumulant_series(&p, 12).unwrap();
            let composed = c.compose(&psi_free(&l, &e, 12)).unwrap();
            assert_eq!(composed, c_compose_psi_free(&l, &e, 12));
        }
    }

    #[test]
    fn cumulant_series_examples() {
        let gauss = cumulant_series(&params(Framework::Classical, int(0), int(0)), 6).unwrap();
        assert_eq!(gauss, T::new(vec![int(0), int(0), rat(1, 2)], 6));
        let free = cumulant_series(&params(Framework::Free, int(0), int(0)), 6).unwrap();
        assert_eq!(free, ints(&[0, 0, 1], 6));
        let poisson = cumulant_series(&params(Framework::Classical, int(1), int(0)), 8).unwrap();
        let expected = &(&T::var(8).exp().unwrap() - &T::one(8)) - &T::var(8);
        assert_eq!(poisson, expected);
        let scaled = cumulant_series(&MeixnerParams::new(Framework::Free, int(1), int(1), int(3)).unwrap(), 8).unwrap();
        let unit = cumulant_series(&params(Framework::Free, int(1), int(1)), 8).unwrap();
        assert_eq!(scaled, unit.scale(&int(3)));
    }

    #[test]
    fn psi_inv_examples() {
        let free = psi_inv_free_sqrt(&int(0), &int(1), 5).unwrap();
        assert_eq!(free, ints(&[0, 1, 0, 1, 0, 2], 5));
        assert_eq!(psi_inv(&params(Framework::Free, int(0), int(1)), 5).unwrap(), free);
        assert_eq!(psi_inv(&params(Framework::Classical, int(0), int(0)), 8).unwrap(), T::var(8));
    }

    #[test]
    fn psi_inverts_psi_inv() {
        for fw in Framework::ALL {
            for (l, e) in grid() {
                let p = params(fw, l, e);
                let w = psi_inv(&p, 16).unwrap();
                let f = psi(&p, 16).unwrap();
                assert_eq!(f.compose(&w).unwrap(), T::var(16));
                assert_eq!(w.compose(&f).unwrap(), T::var(16));
            }
        }
    }

    #[test]
    fn closed_forms_match_psi_inv() {
        for fw in Framework::ALL {
            for (l, e) in grid() {
                let p = params(fw, l, e);
                assert_eq!(psi_inv_closed_form(&p, 16).unwrap(), psi_inv(&p, 16).unwrap(), "{fw} {p:?}");
            }
        }
    }

    #[test]
    fn gamma_limit_branch() {
        // lambda = 2, eta = 1: alpha = beta = -1, Psi^{-1} = z / (1 - z)
        let w = psi_inv_closed_form(&params(Framework::Classical, int(2), int(1)), 8).unwrap();
        assert_eq!(w, ints(&[0, 1, 1, 1, 1, 1, 1, 1, 1], 8));
    }

    #[test]
    fn complex_float_exponential_form() {
        let ab = alpha_beta(&int(1), &int(1)).unwrap();
        let (a, b) = ab.to_complex();
        let w = psi_inv_exponential::<Complex64>(&a, &b, 12).unwrap();
        let exact = psi_inv(&params(Framework::Classical, int(1), int(1)), 12).unwrap();
        assert!(w.max_distance(&exact.map(Complex64::from_rational)) < 1e-12);
    }

    #[test]
    fn generating_function_examples() {
        let x0 = rat(3, 2);
        let free = generating_function(&params(Framework::Free, int(0), int(0)), &x0, 6).unwrap();
        let expected = (&(&T::one(6) - &T::var(6).scale(&x0)) + &ints(&[0, 0, 1], 6)).recip().unwrap();
        assert_eq!(free, expected);
        assert_eq!(free.coeff(2), &x0 * &x0 - int(1));

        let gauss = generating_function(&params(Framework::Classical, int(0), int(0)), &int(0), 6).unwrap();
        assert_eq!(gauss.coeff(0), int(1));
        assert_eq!(gauss.coeff(2), rat(-1, 2));
    }

    #[test]
    fn generating_function_matches_recurrence() {
        for fw in Framework::ALL {
            for (l, e) in grid() {
                let p = MeixnerParams::new(fw, l, e, rat(3, 2)).unwrap();
                let basis = ops_from_jacobi(&mu_jacobi(&p, 10), 10).unwrap();
                for x0 in [int(0), int(-2), rat(1, 3)] {
                    let g = generating_function(&p, &x0, 10).unwrap();
                    for n in 0..=10 {
                        let pn = basis.get(n).eval(&x0);
                        let expected = match fw {
                            Framework::Classical => pn / factorial(n),
                            Framework::Free => pn,
                        };
                        assert_eq!(g.coeff(n), expected, "{fw} {p:?} x0={x0} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn free_raising_symbol_examples() {
        let (a, b) = free_raising_symbol(&int(0), &int(0), 7).unwrap();
        assert_eq!(a, T::one(7));
        assert_eq!(b, ints(&[0, -1, 0, -1, 0, -2, 0, -5], 7));
        for (l, e) in grid() {
            let (a, b) = free_raising_symbol(&l, &e, 12).unwrap();
            let (a2, b2) = raising_symbol_from_psi_inv(&params(Framework::Free, l.clone(), e.clone()), 12).unwrap();
            assert_eq!((a, b), (a2, b2));
        }
    }

    #[test]
    fn free_reciprocal_identities() {
        for (l, e) in grid() {
            let n = 16;
            let e1 = &e + Rational::one();
            // 1/Psi_{l,e+1} - 1/Psi_{l,e} = z, i.e. z^2 after multiplying by z
            let u1 = psi_free(&l, &e1, n + 1).div_z_pow(1).unwrap().recip().unwrap();
            let u0 = psi_free(&l, &e, n + 1).div_z_pow(1).unwrap().recip().unwrap();
            assert_eq!(&u1 - &u0, ints(&[0, 0, 1], n));

            let w = psi_free(&l, &e1, n).comp_inverse().unwrap();
            let lhs = psi_free(&l, &e, n).compose(&w).unwrap();
            let rhs = T::var(n).div(&(&T::one(n) - &(&T::var(n) * &w))).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn classical_symbol_forms_agree() {
        for (l, e) in grid() {
            let p = params(Framework::Classical, l.clone(), e.clone());
            let ab = alpha_beta(&l, &e).unwrap();
            let (a, b) = raising_symbol_exponential(&ab.alpha, &ab.beta, 12).unwrap();
            let (a, b) = (surd_series_to_rational(&a).unwrap(), surd_series_to_rational(&b).unwrap());
            assert_eq!((a, b), raising_symbol_from_psi_inv(&p, 12).unwrap());
        }
    }

    proptest! {
        #[test]
        fn comp_inverse_round_trips(cs in prop::collection::vec(-5i64..6, 1..8), lead in prop::sample::select(vec![-2i64, -1, 1, 3])) {
            let mut coeffs = vec![int(0), int(lead)];
            coeffs.extend(cs.iter().map(|&c| int(c)));
            let f = T::new(coeffs, 9);
            let g = f.comp_inverse().unwrap();
            prop_assert_eq!(f.compose(&g).unwrap(), T::var(9));
        }

        #[test]
        fn sqrt_squares_back(cs in prop::collection::vec((-5i64..6, 1i64..4), 1..8)) {
            let mut coeffs = vec![int(1)];
            coeffs.extend(cs.iter().map(|&(n, d)| rat(n, d)));
            let f = T::new(coeffs, 8);
            let s = f.sqrt().unwrap();
            prop_assert_eq!(&s * &s, f);
        }
    }
}
