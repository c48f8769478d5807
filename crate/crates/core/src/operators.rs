//! Lowering and raising operators in each available representation: basis
//! matrices, integral (jump or divided-difference) kernels against `nu`,
//! functions of `D` or `D_free`, classical difference operators, and the
//! generating-function symbols.

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::check::{CheckReport, Checker};
use crate::error::{Error, Result};
use crate::jacobi::{moments, mu_jacobi, nu_jacobi, JacobiCoeffs};
use crate::params::{alpha_beta, Framework, MeixnerCase, MeixnerParams};
use crate::poly::{from_ops_coeffs, ops_from_jacobi, to_ops_coeffs, OpsBasis, Poly};
use crate::scalar::{int, QuadraticSurd, Rational, Scalar};
use crate::series::{free_raising_symbol, psi_inv, raising_symbol_exponential, raising_symbol_from_psi_inv, surd_series_to_rational};

/// Tolerance on discarded imaginary parts in the complex-float raising path.
pub const DEFAULT_IMAGINARY_TOLERANCE: f64 = 1e-10;

/// Linear map on coordinates in an orthogonal basis: column `j` holds the
/// image of `P_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix<S = Rational> {
    columns: Vec<Vec<S>>,
    codomain_dim: usize,
}

impl<S: Scalar> OperatorMatrix<S> {
    pub fn from_columns(columns: Vec<Vec<S>>, codomain_dim: usize) -> Self {
        let columns = columns
            .into_iter()
            .map(|mut c| {
                assert!(c.len() <= codomain_dim, "column longer than codomain");
                c.resize(codomain_dim, S::zero());
                c
            })
            .collect();
        Self { columns, codomain_dim }
    }

    pub fn identity(dim: usize) -> Self {
        let columns = (0..dim)
            .map(|j| {
                let mut c = vec![S::zero(); dim];
                c[j] = S::one();
                c
            })
            .collect();
        Self { columns, codomain_dim: dim }
    }

    pub fn domain_dim(&self) -> usize {
        self.columns.len()
    }

    pub fn codomain_dim(&self) -> usize {
        self.codomain_dim
    }

    pub fn column(&self, j: usize) -> &[S] {
        &self.columns[j]
    }

    pub fn entry(&self, i: usize, j: usize) -> &S {
        &self.columns[j][i]
    }

    /// Image of a coordinate vector; entries past the domain must be zero.
    pub fn apply(&self, c: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.codomain_dim];
        for (j, cj) in c.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            assert!(j < self.domain_dim(), "vector outside operator domain");
            for (o, m) in out.iter_mut().zip(&self.columns[j]) {
                *o = o.clone() + m.clone() * cj.clone();
            }
        }
        out
    }

    /// `self` after `inner`. Coordinates of `inner`'s image beyond this
    /// operator's domain must vanish.
    pub fn compose(&self, inner: &Self) -> Self {
        Self {
            columns: inner.columns.iter().map(|c| self.apply(c)).collect(),
            codomain_dim: self.codomain_dim,
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        Self {
            columns: self
                .columns
                .iter()
                .map(|c| c.iter().map(|v| v.clone() * s.clone()).collect())
                .collect(),
            codomain_dim: self.codomain_dim,
        }
    }

    /// Sum of two maps on the same domain; the codomain is the larger one.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.domain_dim(), other.domain_dim(), "domains differ");
        let dim = self.codomain_dim.max(other.codomain_dim);
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| {
                (0..dim)
                    .map(|i| {
                        a.get(i).cloned().unwrap_or_else(S::zero) + b.get(i).cloned().unwrap_or_else(S::zero)
                    })
                    .collect()
            })
            .collect();
        Self { columns, codomain_dim: dim }
    }
}

/// `P_n -> w(n) P_{n-1}` on `span(P_0..P_N)`.
pub fn lowering_matrix(fw: Framework, order: usize) -> OperatorMatrix {
    let columns = (0..=order)
        .map(|j| {
            let mut c = vec![Rational::zero(); order + 1];
            if j > 0 {
                c[j - 1] = int(fw.weight(j) as i64);
            }
            c
        })
        .collect();
    OperatorMatrix::from_columns(columns, order + 1)
}

/// `P_n -> P_{n+1}` from `span(P_0..P_N)` into `span(P_0..P_{N+1})`.
pub fn raising_matrix(order: usize) -> OperatorMatrix {
    let columns = (0..=order)
        .map(|j| {
            let mut c = vec![Rational::zero(); order + 2];
            c[j + 1] = Rational::one();
            c
        })
        .collect();
    OperatorMatrix::from_columns(columns, order + 2)
}

/// Multiplication by `x` read off the recurrence:
/// `x P_j = P_{j+1} + b_j P_j + a_j P_{j-1}`.
pub fn recurrence_matrix<S: Scalar>(jacobi: &JacobiCoeffs<S>, order: usize) -> Result<OperatorMatrix<S>> {
    let columns = (0..=order)
        .map(|j| {
            let mut c = vec![S::zero(); order + 2];
            c[j + 1] = S::one();
            c[j] = jacobi.b(j)?;
            if j >= 1 {
                c[j - 1] = jacobi.a(j)?;
            }
            Ok(c)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OperatorMatrix::from_columns(columns, order + 2))
}

fn binomial(n: usize, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, i| acc * int((n - i) as i64) / int(i as i64 + 1))
}

/// The measure whose moments feed the lowering kernel: `nu_{lambda,eta}`
/// classically, `nu_{lambda,eta+1}` in the free case.
fn lowering_measure(p: &MeixnerParams, max_moment: usize) -> Result<Vec<Rational>> {
    let q = match p.framework() {
        Framework::Classical => p.clone(),
        Framework::Free => p.eta_plus_one(),
    };
    Ok(moments(&nu_jacobi(&q, max_moment + 1), max_moment)?.into_vec())
}

/// `sum_{k} f_k sum_{j<k} weight(k, j) x^j m(k-1-j)`.
fn contract_kernel(f: &Poly, m: &[Rational], weight: impl Fn(usize, usize) -> Rational) -> Poly {
    let Some(deg) = f.degree() else {
        return Poly::zero();
    };
    let coeffs = (0..deg)
        .map(|j| {
            (j + 1..=deg).fold(Rational::zero(), |acc, k| {
                let fk = f.coeff(k);
                if fk.is_zero() {
                    acc
                } else {
                    acc + fk * weight(k, j) * &m[k - 1 - j]
                }
            })
        })
        .collect();
    Poly::new(coeffs)
}

/// Classical jump kernel `int (f(x+s) - f(x))/s nu(ds)` expanded in powers
/// of `s` and contracted against the moments of `nu`.
fn classical_jump_contraction(p: &MeixnerParams, f: &Poly) -> Result<Poly> {
    let deg = f.degree().unwrap_or(0);
    let m = lowering_measure(p, deg.max(1))?;
    Ok(contract_kernel(f, &m, binomial))
}

/// Lowering operator through its integral representation. Classical:
/// `int (f(x+s) - f(x))/s nu_{lambda,eta}(ds)`, read as `f'` for `nu = delta_0`.
/// Free: `int (f(x) - f(s))/(x - s) nu_{lambda,eta+1}(ds)`.
pub fn lowering_integral_apply(p: &MeixnerParams, f: &Poly) -> Result<Poly> {
    match p.framework() {
        Framework::Classical if p.case() == MeixnerCase::Gaussian => Ok(f.derivative()),
        Framework::Classical => classical_jump_contraction(p, f),
        Framework::Free => {
            let deg = f.degree().unwrap_or(0);
            let m = lowering_measure(p, deg.max(1))?;
            Ok(contract_kernel(f, &m, |_, _| Rational::one()))
        }
    }
}

/// Lowering of `x^n` from the moment formulas:
/// `sum_k C(n,k) m_{l,e}(n-1-k) x^k` classically and
/// `sum_k m_{l,e+1}(n-1-k) x^k` in the free case.
pub fn lowering_moment_formula(p: &MeixnerParams, n: usize) -> Result<Poly> {
    if n == 0 {
        return Err(Error::OrderTooSmall { min: 1, got: 0 });
    }
    let m = lowering_measure(p, n)?;
    let coeffs = (0..n)
        .map(|k| {
            let base = m[n - 1 - k].clone();
            match p.framework() {
                Framework::Classical => binomial(n, k) * base,
                Framework::Free => base,
            }
        })
        .collect();
    Ok(Poly::new(coeffs))
}

/// Lowering as a function of a nilpotent operator: `Psi^{-1}_{l,e}(D)`
/// classically and `Psi^{-1}_{l,e+1}(D_free)` in the free case.
pub fn lowering_symbol_apply(p: &MeixnerParams, f: &Poly) -> Result<Poly> {
    let Some(deg) = f.degree() else {
        return Ok(Poly::zero());
    };
    let order = deg.max(1);
    let (symbol, step): (_, fn(&Poly) -> Poly) = match p.framework() {
        Framework::Classical => (psi_inv(p, order)?, Poly::derivative),
        Framework::Free => (psi_inv(&p.eta_plus_one(), order)?, Poly::free_derivative),
    };
    let mut acc = Poly::zero();
    let mut power = f.clone();
    for k in 1..=deg {
        power = step(&power);
        let wk = symbol.coeff(k);
        if !wk.is_zero() {
            acc = &acc + &power.scale(&wk);
        }
    }
    Ok(acc)
}

/// Classical lowering as the `nu`-mixture of Poisson lowerings
/// `f -> (f(x+s) - f(x))/s`. The jump operator is evaluated at the nodes
/// `s = 1..=deg f`, interpolated in `s`, and the interpolant's coefficients
/// are contracted against the moments of `nu_{lambda,eta}`.
pub fn poisson_mixture_apply(p: &MeixnerParams, f: &Poly) -> Result<Poly> {
    if p.framework() != Framework::Classical {
        return Err(Error::WrongFramework { what: "Poisson mixture", expected: "classical" });
    }
    let Some(deg) = f.degree() else {
        return Ok(Poly::zero());
    };
    if deg == 0 {
        return Ok(Poly::zero());
    }
    let nodes: Vec<Rational> = (1..=deg as i64).map(int).collect();
    let samples: Vec<Poly> = nodes.iter().map(|s| (&f.shift(s) - f).div_scalar(s)).collect();
    // Lagrange basis polynomials in s
    let mut s_coeffs: Vec<Poly> = vec![Poly::zero(); deg];
    for (i, si) in nodes.iter().enumerate() {
        let mut basis = Poly::<Rational>::one();
        for (k, sk) in nodes.iter().enumerate() {
            if k != i {
                let factor = Poly::new(vec![-sk.clone(), Rational::one()]).div_scalar(&(si - sk));
                basis = &basis * &factor;
            }
        }
        for (j, slot) in s_coeffs.iter_mut().enumerate() {
            let c = basis.coeff(j);
            if !c.is_zero() {
                *slot = &*slot + &samples[i].scale(&c);
            }
        }
    }
    let m = lowering_measure(p, deg)?;
    Ok(s_coeffs
        .iter()
        .enumerate()
        .fold(Poly::zero(), |acc, (j, h)| &acc + &h.scale(&m[j])))
}

/// `(f(x+s) - f(x)) / s`.
fn nabla<S: Scalar>(f: &Poly<S>, s: &S) -> Poly<S> {
    (&f.shift(s) - f).div_scalar(s)
}

/// `g + a * op(g)`.
fn one_plus<S: Scalar>(g: &Poly<S>, a: &S, op: impl Fn(&Poly<S>) -> Poly<S>) -> Poly<S> {
    g + &op(g).scale(a)
}

/// Classical raising through difference operators, over any scalar field
/// holding `lambda`, `alpha`, `beta`:
///
/// * Gaussian: `x - D`
/// * Poisson: `x U_{-lambda} - nabla_{-lambda}`
/// * `lambda^2 = 4 eta`: `x (1 + alpha D)^2 - D (1 + alpha D)`
/// * otherwise: `x (1 + alpha nabla_d)^2 U_{-d} - (1 + alpha nabla_d) nabla_d U_{-d}`, `d = alpha - beta`
pub fn raising_difference_in<S: Scalar>(case: MeixnerCase, lambda: &S, alpha: &S, beta: &S, f: &Poly<S>) -> Poly<S> {
    match case {
        MeixnerCase::Gaussian => &f.mul_x() - &f.derivative(),
        MeixnerCase::Poisson => {
            let back = -lambda.clone();
            &f.shift(&back).mul_x() - &nabla(f, &back)
        }
        MeixnerCase::Gamma => {
            let d = |g: &Poly<S>| g.derivative();
            let g = one_plus(f, alpha, d);
            &one_plus(&g, alpha, d).mul_x() - &g.derivative()
        }
        MeixnerCase::Pascal | MeixnerCase::MeixnerSecondKind => {
            let delta = alpha.clone() - beta.clone();
            let nab = |g: &Poly<S>| nabla(g, &delta);
            let u = f.shift(&-delta.clone());
            let g = one_plus(&u, alpha, nab);
            &one_plus(&g, alpha, nab).mul_x() - &nab(&g)
        }
    }
}

/// A polynomial computed either exactly or in floating point.
#[derive(Clone, Debug, PartialEq)]
pub enum DomainPoly {
    Exact(Poly<Rational>),
    Float(Poly<f64>),
}

impl DomainPoly {
    /// Largest coefficient deviation from an exact polynomial.
    pub fn distance_to(&self, exact: &Poly) -> f64 {
        match self {
            DomainPoly::Exact(p) => p.max_distance(exact),
            DomainPoly::Float(p) => p.max_distance(&exact.map(|c| c.re_f64())),
        }
    }

    pub fn as_exact(&self) -> Option<&Poly> {
        match self {
            DomainPoly::Exact(p) => Some(p),
            DomainPoly::Float(_) => None,
        }
    }
}

pub fn raising_difference_apply(p: &MeixnerParams, f: &Poly) -> Result<DomainPoly> {
    raising_difference_apply_with_tolerance(p, f, DEFAULT_IMAGINARY_TOLERANCE)
}

/// Classical raising by difference operators: exact when `alpha - beta` is
/// rational, otherwise in complex floating point with the imaginary parts of
/// the result required below `tolerance` and then dropped.
pub fn raising_difference_apply_with_tolerance(p: &MeixnerParams, f: &Poly, tolerance: f64) -> Result<DomainPoly> {
    if p.framework() != Framework::Classical {
        return Err(Error::WrongFramework { what: "difference-operator raising", expected: "classical" });
    }
    let ab = alpha_beta(p.lambda(), p.eta())?;
    if let (Some(a), Some(b)) = (ab.alpha.as_rational(), ab.beta.as_rational()) {
        return Ok(DomainPoly::Exact(raising_difference_in(p.case(), p.lambda(), a, b, f)));
    }
    let (a, b) = ab.to_complex();
    let lambda = Complex64::from_rational(p.lambda());
    let out = raising_difference_in(p.case(), &lambda, &a, &b, &f.map(Complex64::from_rational));
    let residual = out.coeffs().iter().map(|c| c.im.abs()).fold(0.0, f64::max);
    if residual > tolerance {
        return Err(Error::ImaginaryResidual { residual, tolerance });
    }
    Ok(DomainPoly::Float(out.map(|c| c.re)))
}

/// Exact classical raising over `Q(sqrt(lambda^2 - 4 eta))`, for every case.
pub fn raising_difference_apply_exact(p: &MeixnerParams, f: &Poly) -> Result<Poly> {
    if p.framework() != Framework::Classical {
        return Err(Error::WrongFramework { what: "difference-operator raising", expected: "classical" });
    }
    let ab = alpha_beta(p.lambda(), p.eta())?;
    let lambda = QuadraticSurd::rational(p.lambda().clone());
    let out = raising_difference_in(p.case(), &lambda, &ab.alpha, &ab.beta, &f.map(QuadraticSurd::from_rational));
    out.coeffs()
        .iter()
        .map(|c| {
            c.as_rational()
                .cloned()
                .ok_or_else(|| Error::Mismatch(format!("irrational coefficient {c} in raised polynomial")))
        })
        .collect::<Result<Vec<_>>>()
        .map(Poly::new)
}

/// Orthogonal basis `P_0..P_{N+1}` of `mu_{lambda,eta}` with `t = 1`.
fn unit_basis(p: &MeixnerParams, order: usize) -> Result<OpsBasis> {
    let unit = p.with_t(Rational::one())?;
    ops_from_jacobi(&mu_jacobi(&unit, order + 1), order + 1)
}

/// `raise(f)` through basis coordinates.
fn raise_via_basis(f: &Poly, basis: &OpsBasis, raise: &OperatorMatrix) -> Result<Poly> {
    let c = to_ops_coeffs(f, basis)?;
    from_ops_coeffs(&raise.apply(&c), basis)
}

/// `sum_k (x A_k + B_k) x^{n-k} / norm(n-k)`.
fn symbol_coefficient(
    a: &crate::series::TruncatedSeries,
    b: &crate::series::TruncatedSeries,
    n: usize,
    norm: impl Fn(usize) -> Rational,
) -> Poly {
    (0..=n).fold(Poly::zero(), |acc, k| {
        let mono = Poly::monomial(n - k);
        let shifted = &mono.mul_x().scale(&a.coeff(k)) + &mono.scale(&b.coeff(k));
        &acc + &shifted.scale(&norm(n - k).recip())
    })
}

fn factorial(n: usize) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| acc * int(k))
}

/// Free raising operator as a resolvent identity: the polynomial
/// coefficients of `sum z^n raise(x^n)` against those of
/// `(x A(z) + B(z)) sum z^n x^n`, for `n = 0..=N`.
pub fn free_raising_resolvent_check(lambda: &Rational, eta: &Rational, order: usize) -> Result<CheckReport> {
    if order < 2 {
        return Err(Error::OrderTooSmall { min: 2, got: order });
    }
    let p = MeixnerParams::unit(Framework::Free, lambda.clone(), eta.clone())?;
    let mut checker = Checker::new();
    let (a, b) = match free_raising_symbol(lambda, eta, order) {
        Ok(ab) => ab,
        Err(e) => {
            checker.record_failure(e.to_string());
            return Ok(checker.finish());
        }
    };
    let basis = unit_basis(&p, order)?;
    let raise = raising_matrix(order);
    for n in 0..=order {
        let lhs = raise_via_basis(&Poly::monomial(n), &basis, &raise)?;
        let rhs = symbol_coefficient(&a, &b, n, |_| Rational::one());
        checker.exact(|| format!("z^{n} coefficient of raise((1-xz)^-1)"), &lhs, &rhs, || lhs.max_distance(&rhs));
    }
    Ok(checker.finish())
}

/// Classical raising operator on `e^{xz}` as an identity of formal series in
/// `z` with polynomial coefficients, plus agreement of the `Psi^{-1}` form of
/// the symbol with the root-pair exponential form (exact in `Q(sqrt d)`).
pub fn classical_raising_exponential_check(lambda: &Rational, eta: &Rational, order: usize) -> Result<CheckReport> {
    if order < 2 {
        return Err(Error::OrderTooSmall { min: 2, got: order });
    }
    let p = MeixnerParams::unit(Framework::Classical, lambda.clone(), eta.clone())?;
    let mut checker = Checker::new();
    let (a, b) = raising_symbol_from_psi_inv(&p, order)?;

    let ab = alpha_beta(lambda, eta)?;
    let (ea, eb) = raising_symbol_exponential(&ab.alpha, &ab.beta, order)?;
    match (surd_series_to_rational(&ea), surd_series_to_rational(&eb)) {
        (Ok(ea), Ok(eb)) => {
            checker.exact(|| "A: Psi^-1 form vs exponential form".into(), &a, &ea, || a.max_distance(&ea));
            checker.exact(|| "B: Psi^-1 form vs exponential form".into(), &b, &eb, || b.max_distance(&eb));
        }
        (Err(e), _) | (_, Err(e)) => checker.record_failure(e.to_string()),
    }

    let basis = unit_basis(&p, order)?;
    let raise = raising_matrix(order);
    for n in 0..=order {
        let lhs = raise_via_basis(&Poly::monomial(n), &basis, &raise)?.scale(&factorial(n).recip());
        let rhs = symbol_coefficient(&a, &b, n, factorial);
        checker.exact(|| format!("z^{n} coefficient of raise(e^(xz))"), &lhs, &rhs, || lhs.max_distance(&rhs));
    }
    Ok(checker.finish())
}

/// `x = raise (1 + lambda lower + eta lower^2) + lower` as an
/// `(N+2) x (N+1)` matrix identity, with `t = 1`.
pub fn multiplication_decomposition_check(p: &MeixnerParams, order: usize) -> Result<CheckReport> {
    if order < 3 {
        return Err(Error::OrderTooSmall { min: 3, got: order });
    }
    let unit = p.with_t(Rational::one())?;
    let x = recurrence_matrix(&mu_jacobi(&unit, order + 1), order)?;
    let lower = lowering_matrix(p.framework(), order);
    let inner = OperatorMatrix::identity(order + 1)
        .add(&lower.scale(p.lambda()))
        .add(&lower.compose(&lower).scale(p.eta()));
    let rhs = raising_matrix(order).compose(&inner).add(&lower);
    let mut checker = Checker::new();
    for j in 0..=order {
        let (l, r) = (x.column(j), rhs.column(j));
        checker.exact(
            || format!("column {j} of the multiplication operator"),
            &l.to_vec(),
            &r.to_vec(),
            || l.iter().zip(r).map(|(a, b)| a.distance(b)).fold(0.0, f64::max),
        );
    }
    Ok(checker.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    type P = Poly<Rational>;

    fn params(fw: Framework, l: Rational, e: Rational) -> MeixnerParams {
        MeixnerParams::unit(fw, l, e).unwrap()
    }

    fn grid() -> Vec<(Rational, Rational)> {
        vec![(int(0), int(0)), (int(1), int(0)), (int(2), int(1)), (int(3), int(2)), (int(1), int(1)), (rat(-2, 3), rat(1, 4)), (rat(-4, 3), rat(4, 9))]
    }

    fn family(p: &MeixnerParams, n: usize) -> OpsBasis {
        unit_basis(p, n).unwrap()
    }

    #[test]
    fn lowering_matrix_columns() {
        let l = lowering_matrix(Framework::Classical, 5);
        assert_eq!(l.column(3), &[int(0), int(0), int(3), int(0), int(0), int(0)]);
        let l = lowering_matrix(Framework::Free, 5);
        assert_eq!(l.column(3), &[int(0), int(0), int(1), int(0), int(0), int(0)]);
        assert!(l.column(0).iter().all(Zero::is_zero));
    }

    #[test]
    fn raising_matrix_columns() {
        let r = raising_matrix(4);
        assert_eq!(r.codomain_dim(), 6);
        for n in 0..=4 {
            let mut e = vec![int(0); 6];
            e[n + 1] = int(1);
            assert_eq!(r.column(n), &e[..]);
        }
        for fw in Framework::ALL {
            let lr = lowering_matrix(fw, 5).compose(&raising_matrix(4));
            for n in 0..=4 {
                assert_eq!(lr.entry(n, n), &int(fw.weight(n + 1) as i64));
            }
        }
    }

    #[test]
    fn lowering_integral_examples() {
        let gauss = params(Framework::Classical, int(0), int(0));
        assert_eq!(lowering_integral_apply(&gauss, &P::monomial(3)).unwrap(), P::from_ints(&[0, 0, 3]));
        // the limit branch agrees with contracting against delta_0
        let f = P::from_ints(&[3, -1, 4, 1, -5, 9]);
        assert_eq!(classical_jump_contraction(&gauss, &f).unwrap(), f.derivative());

        let poisson = params(Framework::Classical, int(1), int(0));
        assert_eq!(lowering_integral_apply(&poisson, &P::monomial(2)).unwrap(), P::from_ints(&[1, 2]));

        let free = params(Framework::Free, int(0), int(0));
        assert_eq!(lowering_integral_apply(&free, &P::monomial(2)).unwrap(), P::x());
    }

    #[test]
    fn poisson_lowering_is_a_difference_quotient() {
        let l = rat(-3, 2);
        let p = params(Framework::Classical, l.clone(), int(0));
        let f = P::from_ints(&[2, 0, -1, 0, 1, 3]);
        let expected = (&f.shift(&l) - &f).div_scalar(&l);
        assert_eq!(lowering_integral_apply(&p, &f).unwrap(), expected);
    }

    #[test]
    fn moment_formula_examples() {
        let gauss = params(Framework::Classical, int(0), int(0));
        assert_eq!(lowering_moment_formula(&gauss, 2).unwrap(), P::from_ints(&[0, 2]));
        let free = params(Framework::Free, int(0), int(0));
        assert_eq!(lowering_moment_formula(&free, 2).unwrap(), P::x());
        // semicircle nu_{0,1} moments (1, 0, 1, 0): x^3 + x
        let four = lowering_moment_formula(&free, 4).unwrap();
        assert_eq!(four, P::from_ints(&[0, 1, 0, 1]));
        assert_eq!(four, lowering_integral_apply(&free, &P::monomial(4)).unwrap());
    }

    #[test]
    fn symbol_examples() {
        let gauss = params(Framework::Classical, int(0), int(0));
        assert_eq!(lowering_symbol_apply(&gauss, &P::monomial(2)).unwrap(), P::from_ints(&[0, 2]));
        let free = params(Framework::Free, int(0), int(0));
        let cube = lowering_symbol_apply(&free, &P::monomial(3)).unwrap();
        assert_eq!(cube, P::from_ints(&[1, 0, 1]));
        let basis = family(&free, 4);
        let via_basis = from_ops_coeffs(&lowering_matrix(Framework::Free, 4).apply(&to_ops_coeffs(&P::monomial(3), &basis).unwrap()), &basis).unwrap();
        assert_eq!(cube, via_basis);
        for (l, e) in grid() {
            for fw in Framework::ALL {
                assert!(lowering_symbol_apply(&params(fw, l.clone(), e.clone()), &P::constant(int(7))).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn lowering_representations_agree() {
        for fw in Framework::ALL {
            for (l, e) in grid() {
                let p = params(fw, l, e);
                let basis = family(&p, 10);
                for n in 0..=10 {
                    let pn = basis.get(n);
                    let expected = if n == 0 { P::zero() } else { basis.get(n - 1).scale(&int(fw.weight(n) as i64)) };
                    assert_eq!(lowering_integral_apply(&p, pn).unwrap(), expected, "{fw} {p:?} n={n}");
                    assert_eq!(lowering_symbol_apply(&p, pn).unwrap(), expected, "{fw} {p:?} n={n}");
                }
                for n in 1..=10 {
                    assert_eq!(lowering_moment_formula(&p, n).unwrap(), lowering_integral_apply(&p, &P::monomial(n)).unwrap());
                }
            }
        }
    }

    #[test]
    fn poisson_mixture_matches_integral() {
        for (l, e) in grid() {
            let p = params(Framework::Classical, l, e);
            let f = P::new(vec![rat(1, 2), int(-3), int(0), rat(5, 7), int(2), int(-1), int(1)]);
            assert_eq!(poisson_mixture_apply(&p, &f).unwrap(), classical_jump_contraction(&p, &f).unwrap());
        }
        assert!(poisson_mixture_apply(&params(Framework::Free, int(0), int(1)), &P::x()).is_err());
    }

    #[test]
    fn raising_difference_examples() {
        let gauss = params(Framework::Classical, int(0), int(0));
        let out = raising_difference_apply(&gauss, &P::from_ints(&[-1, 0, 1])).unwrap();
        assert_eq!(out, DomainPoly::Exact(P::from_ints(&[0, -3, 0, 1])));
        let poisson = params(Framework::Classical, int(1), int(0));
        assert_eq!(raising_difference_apply(&poisson, &P::one()).unwrap(), DomainPoly::Exact(P::x()));
    }

    #[test]
    fn raising_difference_reproduces_next_polynomial() {
        for (l, e) in grid() {
            let p = params(Framework::Classical, l, e);
            let basis = family(&p, 11);
            for n in 0..=10 {
                let next = basis.get(n + 1);
                let raised = raising_difference_apply_with_tolerance(&p, basis.get(n), f64::INFINITY).unwrap();
                match &raised {
                    DomainPoly::Exact(r) => assert_eq!(r, next, "{p:?} n={n}"),
                    DomainPoly::Float(_) => {
                        // double precision: accurate to a few ulps of the largest coefficient
                        let scale = next.coeffs().iter().map(|c| c.re_f64().abs()).fold(0.0, f64::max);
                        assert!(raised.distance_to(next) <= 1e-14 * scale, "{p:?} n={n}");
                    }
                }
                assert_eq!(&raising_difference_apply_exact(&p, basis.get(n)).unwrap(), basis.get(n + 1));
            }
        }
    }

    #[test]
    fn complex_path_for_second_kind() {
        let p = params(Framework::Classical, int(1), int(1));
        let raised = raising_difference_apply(&p, &P::from_ints(&[1, 1, 1])).unwrap();
        assert!(matches!(raised, DomainPoly::Float(_)));
        let basis = family(&p, 11);
        for n in 0..=7 {
            let raised = raising_difference_apply(&p, basis.get(n)).unwrap();
            assert!(raised.distance_to(basis.get(n + 1)) <= 1e-10, "n={n}");
        }
        // coefficients of P_11 reach 3e7, whose ulp already exceeds 1e-10
        assert!(matches!(
            raising_difference_apply(&p, basis.get(10)),
            Err(Error::ImaginaryResidual { .. })
        ));
    }

    #[test]
    fn free_resolvent_examples() {
        assert!(free_raising_resolvent_check(&int(0), &int(0), 8).unwrap().passed);
        assert!(free_raising_resolvent_check(&int(1), &rat(1, 2), 8).unwrap().passed);
        assert!(free_raising_resolvent_check(&int(1), &int(1), 1).is_err());
    }

    #[test]
    fn classical_exponential_examples() {
        assert!(classical_raising_exponential_check(&int(0), &int(0), 8).unwrap().passed);
        assert!(classical_raising_exponential_check(&int(3), &int(2), 8).unwrap().passed);
        assert!(classical_raising_exponential_check(&int(2), &int(1), 8).unwrap().passed);
    }

    #[test]
    fn decomposition_examples() {
        for fw in Framework::ALL {
            for (l, e) in grid() {
                let r = multiplication_decomposition_check(&params(fw, l, e), 8).unwrap();
                assert!(r.passed, "{:?}", r.detail);
            }
        }
        let p = params(Framework::Classical, int(2), int(1));
        let x = recurrence_matrix(&mu_jacobi(&p, 6), 5).unwrap();
        assert_eq!(x.entry(4, 4), &int(8));
        let p = params(Framework::Free, int(2), int(1));
        let x = recurrence_matrix(&mu_jacobi(&p, 6), 5).unwrap();
        assert_eq!(x.entry(4, 4), &int(2));
        assert_eq!(x.entry(0, 0), &int(0));
    }

    #[test]
    fn decomposition_detects_a_wrong_family() {
        // t = 2 breaks the identity, which is stated for t = 1
        let unit = params(Framework::Classical, int(1), int(1));
        let x = recurrence_matrix(&mu_jacobi(&unit.with_t(int(2)).unwrap(), 6), 5).unwrap();
        let lower = lowering_matrix(Framework::Classical, 5);
        let inner = OperatorMatrix::identity(6).add(&lower.scale(&int(1))).add(&lower.compose(&lower));
        let rhs = raising_matrix(5).compose(&inner).add(&lower);
        assert_ne!(x, rhs);
    }
}
