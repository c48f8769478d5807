//! Meixner parameters, the five-case classification and the root pair
//! `(alpha, beta)` of `1 + lambda x + eta x^2 = (1 - alpha x)(1 - beta x)`.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{int, QuadraticSurd, Rational};

/// Classical (all set partitions, `z^n / n!` normalization) or free
/// (non-crossing partitions, `z^n` normalization).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Framework {
    Classical,
    Free,
}

impl Framework {
    pub const ALL: [Framework; 2] = [Framework::Classical, Framework::Free];

    /// Basis weight `w(n)`: `n` classically, the 0-integer `[n]_0` in the free case.
    pub fn weight(self, n: usize) -> usize {
        match self {
            Framework::Classical => n,
            Framework::Free => usize::from(n > 0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Framework::Classical => "classical",
            Framework::Free => "free",
        }
    }
}

impl fmt::Display for Framework {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Framework {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "classical" => Ok(Framework::Classical),
            "free" => Ok(Framework::Free),
            other => Err(format!("unknown framework '{other}'")),
        }
    }
}

/// Parameters of a centered (l = 0) Meixner family.
#[derive(Debug, Clone, PartialEq)]
pub struct MeixnerParams {
    framework: Framework,
    lambda: Rational,
    eta: Rational,
    t: Rational,
}

impl MeixnerParams {
    pub fn new(framework: Framework, lambda: Rational, eta: Rational, t: Rational) -> Result<Self> {
        if eta.is_negative() {
            return Err(Error::NegativeEta);
        }
        if !t.is_positive() {
            return Err(Error::NonPositiveT);
        }
        Ok(Self { framework, lambda, eta, t })
    }

    /// Parameters with `t = 1`.
    pub fn unit(framework: Framework, lambda: Rational, eta: Rational) -> Result<Self> {
        Self::new(framework, lambda, eta, Rational::one())
    }

    pub fn framework(&self) -> Framework {
        self.framework
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn eta(&self) -> &Rational {
        &self.eta
    }

    pub fn t(&self) -> &Rational {
        &self.t
    }

    /// The shift parameter; always zero for centered measures.
    pub fn l(&self) -> Rational {
        Rational::zero()
    }

    pub fn case(&self) -> MeixnerCase {
        classify(&self.lambda, &self.eta).expect("validated on construction")
    }

    pub fn with_framework(&self, framework: Framework) -> Self {
        Self { framework, ..self.clone() }
    }

    pub fn with_t(&self, t: Rational) -> Result<Self> {
        Self::new(self.framework, self.lambda.clone(), self.eta.clone(), t)
    }

    /// Same family with `eta` replaced by `eta + 1`, as used by the free
    /// lowering and raising operators.
    pub fn eta_plus_one(&self) -> Self {
        Self { eta: &self.eta + Rational::one(), ..self.clone() }
    }
}

/// The five families a) to e).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MeixnerCase {
    Gaussian,
    Poisson,
    Gamma,
    Pascal,
    MeixnerSecondKind,
}

impl MeixnerCase {
    pub fn name(self) -> &'static str {
        match self {
            MeixnerCase::Gaussian => "gaussian",
            MeixnerCase::Poisson => "poisson",
            MeixnerCase::Gamma => "gamma",
            MeixnerCase::Pascal => "pascal",
            MeixnerCase::MeixnerSecondKind => "meixner-second-kind",
        }
    }
}

/// `lambda^2 - 4 eta`, the discriminant of `u^2 + lambda u + eta`.
pub fn discriminant(lambda: &Rational, eta: &Rational) -> Rational {
    lambda * lambda - int(4) * eta
}

pub fn classify(lambda: &Rational, eta: &Rational) -> Result<MeixnerCase> {
    if eta.is_negative() {
        return Err(Error::NegativeEta);
    }
    if eta.is_zero() {
        return Ok(if lambda.is_zero() { MeixnerCase::Gaussian } else { MeixnerCase::Poisson });
    }
    let disc = discriminant(lambda, eta);
    Ok(if disc.is_zero() {
        MeixnerCase::Gamma
    } else if disc.is_positive() {
        MeixnerCase::Pascal
    } else {
        MeixnerCase::MeixnerSecondKind
    })
}

/// Roots `alpha`, `beta` with `alpha + beta = -lambda`, `alpha beta = eta`,
/// held exactly in `Q(sqrt(lambda^2 - 4 eta))`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaBeta {
    pub alpha: QuadraticSurd,
    pub beta: QuadraticSurd,
}

impl AlphaBeta {
    /// `alpha - beta`.
    pub fn delta(&self) -> QuadraticSurd {
        self.alpha.clone() - self.beta.clone()
    }

    /// True when both roots (and hence `alpha - beta`) are rational.
    pub fn is_rational(&self) -> bool {
        self.alpha.is_rational() && self.beta.is_rational()
    }

    pub fn to_complex(&self) -> (num_complex::Complex64, num_complex::Complex64) {
        (self.alpha.to_complex(), self.beta.to_complex())
    }
}

/// Root pair ordered so that `alpha` has the larger real part, then the
/// larger imaginary part; for `eta = 0, lambda != 0` the convention
/// `alpha = -lambda, beta = 0` wins.
pub fn alpha_beta(lambda: &Rational, eta: &Rational) -> Result<AlphaBeta> {
    if eta.is_negative() {
        return Err(Error::NegativeEta);
    }
    if eta.is_zero() {
        return Ok(AlphaBeta {
            alpha: QuadraticSurd::rational(-lambda.clone()),
            beta: QuadraticSurd::rational(Rational::zero()),
        });
    }
    let half = Rational::new(1.into(), 2.into());
    let root = QuadraticSurd::sqrt_of(&discriminant(lambda, eta));
    let mid = QuadraticSurd::rational(-lambda * &half);
    let half_root = root * QuadraticSurd::rational(half);
    Ok(AlphaBeta { alpha: mid.clone() + half_root.clone(), beta: mid - half_root })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use proptest::prelude::*;

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&int(0), &int(0)).unwrap(), MeixnerCase::Gaussian);
        assert_eq!(classify(&int(2), &int(1)).unwrap(), MeixnerCase::Gamma);
        assert_eq!(classify(&int(1), &int(1)).unwrap(), MeixnerCase::MeixnerSecondKind);
        assert_eq!(classify(&int(-1), &int(0)).unwrap(), MeixnerCase::Poisson);
        assert_eq!(classify(&int(3), &int(2)).unwrap(), MeixnerCase::Pascal);
        assert_eq!(classify(&int(0), &int(-1)), Err(Error::NegativeEta));
    }

    #[test]
    fn classify_boundary_is_exact() {
        // lambda^2 = 4 eta with non-dyadic values
        assert_eq!(classify(&rat(2, 3), &rat(1, 9)).unwrap(), MeixnerCase::Gamma);
    }

    #[test]
    fn alpha_beta_examples() {
        let ab = alpha_beta(&int(0), &int(0)).unwrap();
        assert!(ab.alpha.is_zero() && ab.beta.is_zero());

        let ab = alpha_beta(&int(-3), &int(2)).unwrap();
        assert_eq!(ab.alpha, QuadraticSurd::rational(int(2)));
        assert_eq!(ab.beta, QuadraticSurd::rational(int(1)));

        let ab = alpha_beta(&int(2), &int(0)).unwrap();
        assert_eq!(ab.alpha, QuadraticSurd::rational(int(-2)));
        assert!(ab.beta.is_zero());
    }

    #[test]
    fn complex_roots_are_conjugate() {
        let ab = alpha_beta(&int(1), &int(1)).unwrap();
        assert_eq!(ab.alpha.conj(), ab.beta);
        let (a, b) = ab.to_complex();
        assert!(a.im > 0.0 && (a.im + b.im).abs() < 1e-15);
        assert!((a.re + 0.5).abs() < 1e-15);
    }

    #[test]
    fn parameter_validation() {
        assert_eq!(
            MeixnerParams::new(Framework::Free, int(0), int(-1), int(1)),
            Err(Error::NegativeEta)
        );
        assert_eq!(
            MeixnerParams::new(Framework::Free, int(0), int(0), int(0)),
            Err(Error::NonPositiveT)
        );
    }

    fn rational_strategy() -> impl Strategy<Value = Rational> {
        (-40i64..40, 1i64..7).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn roots_reproduce_quadratic(lambda in rational_strategy(), eta in rational_strategy()) {
            let eta = eta.abs();
            let ab = alpha_beta(&lambda, &eta).unwrap();
            let sum = ab.alpha.clone() + ab.beta.clone();
            let prod = ab.alpha.clone() * ab.beta.clone();
            prop_assert_eq!(sum, QuadraticSurd::rational(-lambda.clone()));
            prop_assert_eq!(prod, QuadraticSurd::rational(eta.clone()));
            // real of the same sign, or a conjugate pair
            if ab.is_rational() {
                let (a, b) = (ab.alpha.re().clone(), ab.beta.re().clone());
                prop_assert!(!(a.is_positive() && b.is_negative()) && !(a.is_negative() && b.is_positive()));
            } else if discriminant(&lambda, &eta).is_negative() {
                prop_assert_eq!(ab.alpha.conj(), ab.beta);
            }
        }

        #[test]
        fn classify_follows_discriminant(lambda in rational_strategy(), eta in 1i64..30) {
            let eta = int(eta);
            let case = classify(&lambda, &eta).unwrap();
            let disc = discriminant(&lambda, &eta);
            let expected = if disc.is_zero() { MeixnerCase::Gamma }
                else if disc.is_positive() { MeixnerCase::Pascal }
                else { MeixnerCase::MeixnerSecondKind };
            prop_assert_eq!(case, expected);
        }
    }
}
