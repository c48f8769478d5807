//! Dense univariate polynomials and monic orthogonal families.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};



use crate::error::{Error, Result};
use crate::jacobi::JacobiCoeffs;
use crate::scalar::{Rational, Scalar};

/// Polynomial in the monomial basis, lowest degree first. The coefficient
/// vector never carries trailing zeros, so the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<S = Rational> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    /// The variable `x`.
    pub fn x() -> Self {
        Self::monomial(1)
    }

    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![S::zero(); k + 1];
        coeffs[k] = S::one();
        Self { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| S::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x0: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x0.clone() + c.clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// Multiplication by `x`.
    pub fn mul_x(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(S::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// `x -> f(x + s)`.
    pub fn shift(&self, s: &S) -> Self {
        let linear = Self::new(vec![s.clone(), S::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * &linear) + &Self::constant(c.clone()))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * S::from_int(k as i64))
                .collect(),
        )
    }

    /// `(f(x) - f(0)) / x`.
    pub fn free_derivative(&self) -> Self {
        Self::new(self.coeffs.iter().skip(1).cloned().collect())
    }

    /// `(f(x) - f(s)) / (x - s)` as a polynomial in `x`.
    pub fn divided_difference(&self, s: &S) -> Self {
        // synthetic division by (x - s); the remainder f(s) is dropped
        let n = self.coeffs.len();
        if n <= 1 {
            return Self::zero();
        }
        let mut quotient = vec![S::zero(); n - 1];
        let mut carry = S::zero();
        for k in (1..n).rev() {
            carry = carry * s.clone() + self.coeffs[k].clone();
            quotient[k - 1] = carry.clone();
        }
        Self::new(quotient)
    }

    /// Exact division by a nonzero scalar.
    pub fn div_scalar(&self, s: &S) -> Self {
        let inv = s.try_inv().expect("division of polynomial by zero scalar");
        self.scale(&inv)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Largest coefficient distance to `other`.
    pub fn max_distance(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|k| self.coeff(k).distance(&other.coeff(k)))
            .fold(0.0, f64::max)
    }
}

impl<S: Scalar> Default for Poly<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> Add for &Poly<S> {
    type Output = Poly<S>;
    fn add(self, rhs: Self) -> Poly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<S: Scalar> Sub for &Poly<S> {
    type Output = Poly<S>;
    fn sub(self, rhs: Self) -> Poly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<S: Scalar> Mul for &Poly<S> {
    type Output = Poly<S>;
    fn mul(self, rhs: Self) -> Poly<S> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<S: Scalar> Neg for &Poly<S> {
    type Output = Poly<S>;
    fn neg(self) -> Poly<S> {
        Poly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl<S: Scalar> $tr for Poly<S> {
            type Output = Poly<S>;
            fn $m(self, rhs: Self) -> Poly<S> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl<S: Scalar> Neg for Poly<S> {
    type Output = Poly<S>;
    fn neg(self) -> Poly<S> {
        -&self
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Monic orthogonal family `P_0, ..., P_N` generated by a Jacobi recurrence
/// `P_{n+1} = (x - b_n) P_n - a_n P_{n-1}`.
#[derive(Clone, Debug)]
pub struct OpsBasis<S = Rational> {
    family: Vec<Poly<S>>,
    source: JacobiCoeffs<S>,
}

impl<S: Scalar> OpsBasis<S> {
    pub fn family(&self) -> &[Poly<S>] {
        &self.family
    }

    pub fn get(&self, n: usize) -> &Poly<S> {
        &self.family[n]
    }

    /// Highest index `N` available.
    pub fn order(&self) -> usize {
        self.family.len() - 1
    }

    pub fn source(&self) -> &JacobiCoeffs<S> {
        &self.source
    }
}

pub fn ops_from_jacobi<S: Scalar>(jacobi: &JacobiCoeffs<S>, order: usize) -> Result<OpsBasis<S>> {
    let mut family: Vec<Poly<S>> = Vec::with_capacity(order + 1);
    family.push(Poly::one());
    for n in 0..order {
        let x_minus_b = Poly::new(vec![-jacobi.b(n)?, S::one()]);
        let mut next = &x_minus_b * &family[n];
        if n >= 1 {
            next = &next - &family[n - 1].scale(&jacobi.a(n)?);
        }
        family.push(next);
    }
    Ok(OpsBasis { family, source: jacobi.clone() })
}

/// Coefficients `c` with `f = sum_k c_k P_k`.
pub fn to_ops_coeffs<S: Scalar>(f: &Poly<S>, basis: &OpsBasis<S>) -> Result<Vec<S>> {
    let Some(deg) = f.degree() else {
        return Ok(Vec::new());
    };
    if deg > basis.order() {
        return Err(Error::DegreeOverflow { degree: deg, order: basis.order() });
    }
    let mut rest = f.clone();
    let mut c = vec![S::zero(); deg + 1];
    for k in (0..=deg).rev() {
        let lead = rest.coeff(k);
        if !lead.is_zero() {
            rest = &rest - &basis.get(k).scale(&lead);
            c[k] = lead;
        }
    }
    debug_assert!(rest.is_zero());
    Ok(c)
}

pub fn from_ops_coeffs<S: Scalar>(c: &[S], basis: &OpsBasis<S>) -> Result<Poly<S>> {
    if c.len() > basis.order() + 1 {
        return Err(Error::DegreeOverflow { degree: c.len() - 1, order: basis.order() });
    }
    Ok(c.iter()
        .zip(basis.family())
        .filter(|(ck, _)| !ck.is_zero())
        .fold(Poly::zero(), |acc, (ck, pk)| &acc + &pk.scale(ck)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi::{mu_jacobi, JacobiCoeffs};
    use crate::params::{Framework, MeixnerParams};
    use crate::scalar::{int, rat};
    use proptest::prelude::*;

    type P = Poly<Rational>;

    fn gaussian(fw: Framework) -> OpsBasis {
        let p = MeixnerParams::unit(fw, int(0), int(0)).unwrap();
        ops_from_jacobi(&mu_jacobi(&p, 8), 8).unwrap()
    }

    #[test]
    fn recurrence_families() {
        let free = gaussian(Framework::Free);
        assert_eq!(free.get(0), &P::one());
        assert_eq!(free.get(2), &P::from_ints(&[-1, 0, 1]));
        assert_eq!(free.get(3), &P::from_ints(&[0, -2, 0, 1]));
        let classical = gaussian(Framework::Classical);
        assert_eq!(classical.get(3), &P::from_ints(&[0, -3, 0, 1]));
        assert!(classical.family().iter().all(|p| p.is_monic()));
    }

    #[test]
    fn basis_conversion_examples() {
        let free = gaussian(Framework::Free);
        assert_eq!(to_ops_coeffs(&P::monomial(2), &free).unwrap(), vec![int(1), int(0), int(1)]);
        let e3 = to_ops_coeffs(free.get(3), &free).unwrap();
        assert_eq!(e3, vec![int(0), int(0), int(0), int(1)]);
        let classical = gaussian(Framework::Classical);
        assert_eq!(
            to_ops_coeffs(&P::monomial(3), &classical).unwrap(),
            vec![int(0), int(3), int(0), int(1)]
        );
        assert_eq!(
            from_ops_coeffs(&[int(0), int(0), int(1)], &free).unwrap(),
            P::from_ints(&[-1, 0, 1])
        );
        assert_eq!(from_ops_coeffs::<Rational>(&[], &free).unwrap(), P::zero());
        assert_eq!(
            from_ops_coeffs(&[int(1), int(1)], &free).unwrap(),
            &P::one() + free.get(1)
        );
        assert!(matches!(
            to_ops_coeffs(&P::monomial(9), &free),
            Err(Error::DegreeOverflow { degree: 9, order: 8 })
        ));
    }

    #[test]
    fn elementary_operations() {
        let s = rat(3, 2);
        let cube = P::monomial(3);
        let dd = cube.divided_difference(&s);
        assert_eq!(dd, P::new(vec![&s * &s, s.clone(), int(1)]));
        assert_eq!(cube.free_derivative(), P::monomial(2));
        assert_eq!(P::monomial(2).shift(&int(1)), P::from_ints(&[1, 2, 1]));
        assert_eq!(cube.derivative(), P::from_ints(&[0, 0, 3]));
        assert_eq!(P::from_ints(&[1, 2, 3]).eval(&int(2)), int(17));
        assert_eq!(P::constant(int(5)).divided_difference(&s), P::zero());
    }

    #[test]
    fn divided_difference_matches_definition() {
        let f = P::from_ints(&[4, -1, 0, 2, 5]);
        let s = rat(-2, 3);
        let x0 = rat(7, 5);
        let lhs = f.divided_difference(&s).eval(&x0);
        let rhs = (f.eval(&x0) - f.eval(&s)) / (&x0 - &s);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn recurrence_from_explicit_coefficients() {
        let j = JacobiCoeffs::new(vec![int(1), int(2)], vec![int(3)]);
        let basis = ops_from_jacobi(&j, 2).unwrap();
        // P_2 = (x - 2)(x - 1) - 3
        assert_eq!(basis.get(2), &P::from_ints(&[-1, -3, 1]));
    }

    fn small_poly(max_deg: usize) -> impl Strategy<Value = P> {
        prop::collection::vec((-9i64..9, 1i64..4), 0..=max_deg + 1)
            .prop_map(|v| P::new(v.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn basis_round_trip(f in small_poly(8), lambda in -3i64..4, eta in 0i64..3) {
            let p = MeixnerParams::unit(Framework::Classical, int(lambda), int(eta)).unwrap();
            let basis = ops_from_jacobi(&mu_jacobi(&p, 8), 8).unwrap();
            let c = to_ops_coeffs(&f, &basis).unwrap();
            prop_assert_eq!(from_ops_coeffs(&c, &basis).unwrap(), f);
        }

        #[test]
        fn derivatives_are_nilpotent(f in small_poly(6)) {
            let n = f.degree().map_or(1, |d| d + 1);
            let mut d = f.clone();
            let mut fd = f.clone();
            for _ in 0..n {
                d = d.derivative();
                fd = fd.free_derivative();
            }
            prop_assert!(d.is_zero());
            prop_assert!(fd.is_zero());
        }

        #[test]
        fn shift_composes(f in small_poly(5), s in -5i64..5, u in -5i64..5) {
            prop_assert_eq!(f.shift(&int(s)).shift(&int(u)), f.shift(&int(s + u)));
        }
    }
}
