//! Scalar domains used by polynomials and truncated series.
//!
//! Three fields are supported: exact rationals (the default for every
//! identity check), exact elements of a quadratic extension `Q(sqrt d)` (used
//! when the root pair of `1 + lambda x + eta x^2` is irrational or complex),
//! and double-precision complex numbers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Builds an exact rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A field of coefficients.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_rational(r: &Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&int(n))
    }

    /// Multiplicative inverse, `None` for zero.
    fn try_inv(&self) -> Option<Self>;

    /// Magnitude of `self - other` as a float. Zero iff equal for exact domains.
    fn distance(&self, other: &Self) -> f64;

    /// Real part as a float.
    fn re_f64(&self) -> f64;

    fn is_exact() -> bool;

    /// Divides by a nonzero scalar. Panics on zero; callers check first.
    fn div_by(&self, d: &Self) -> Self {
        self.clone() * d.try_inv().expect("division by zero scalar")
    }
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn distance(&self, other: &Self) -> f64 {
        (self - other).abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn re_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn is_exact() -> bool {
        true
    }
}

impl Scalar for Complex64 {
    fn from_rational(r: &Rational) -> Self {
        Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.inv())
        }
    }

    fn distance(&self, other: &Self) -> f64 {
        (self - other).norm()
    }

    fn re_f64(&self) -> f64 {
        self.re
    }

    fn is_exact() -> bool {
        false
    }
}

impl Scalar for f64 {
    fn from_rational(r: &Rational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }

    fn try_inv(&self) -> Option<Self> {
        (*self != 0.0).then(|| self.recip())
    }

    fn distance(&self, other: &Self) -> f64 {
        (self - other).abs()
    }

    fn re_f64(&self) -> f64 {
        *self
    }

    fn is_exact() -> bool {
        false
    }
}

/// Parses `p/q`, an integer, or a terminating decimal, exactly.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let bad = || format!("'{s}' is not a rational number (expected p/q, an integer or a decimal)");
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den == BigInt::from(0) {
            return Err(format!("'{s}' has a zero denominator"));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole: BigInt = match whole.trim_start_matches(['-', '+']) {
            "" => BigInt::from(0),
            w => w.parse().map_err(|_| bad())?,
        };
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let magnitude = Rational::new(whole * &scale + frac, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    s.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad())
}

/// Exact rational square root, if one exists.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer();
    let d = r.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

/// `re + im * sqrt(d)` with rational parts.
///
/// Values whose `im` part is zero are plain rationals and combine with any
/// radicand. Two values with nonzero `im` parts must share `d`. Inverses are
/// only well defined when `d` is not a rational square, which is how the
/// crate constructs these values.
#[derive(Clone, Debug)]
pub struct QuadraticSurd {
    re: Rational,
    im: Rational,
    d: Rational,
}

impl QuadraticSurd {
    pub fn new(re: Rational, im: Rational, d: Rational) -> Self {
        if im.is_zero() {
            Self { re, im, d: Rational::zero() }
        } else {
            Self { re, im, d }
        }
    }

    pub fn rational(re: Rational) -> Self {
        Self::new(re, Rational::zero(), Rational::zero())
    }

    /// `sqrt(d)` itself, reduced to a rational when `d` is a square.
    pub fn sqrt_of(d: &Rational) -> Self {
        match rational_sqrt(d) {
            Some(s) => Self::rational(s),
            None => Self::new(Rational::zero(), Rational::one(), d.clone()),
        }
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn radicand(&self) -> &Rational {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.re)
    }

    pub fn to_complex(&self) -> Complex64 {
        let re = self.re.to_f64().unwrap_or(f64::NAN);
        let im = self.im.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        if d >= 0.0 {
            Complex64::new(re + im * d.sqrt(), 0.0)
        } else {
            Complex64::new(re, im * (-d).sqrt())
        }
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone(), self.d.clone())
    }

    fn joint_radicand(&self, other: &Self) -> Rational {
        match (self.im.is_zero(), other.im.is_zero()) {
            (true, _) => other.d.clone(),
            (_, true) => self.d.clone(),
            _ => {
                assert_eq!(self.d, other.d, "surds over different radicands");
                self.d.clone()
            }
        }
    }
}

impl PartialEq for QuadraticSurd {
    fn eq(&self, other: &Self) -> bool {
        self.re == other.re && self.im == other.im && (self.im.is_zero() || self.d == other.d)
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{} + {}*sqrt({})", self.re, self.im, self.d)
        }
    }
}

impl Add for QuadraticSurd {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let d = self.joint_radicand(&rhs);
        Self::new(self.re + rhs.re, self.im + rhs.im, d)
    }
}

impl Sub for QuadraticSurd {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let d = self.joint_radicand(&rhs);
        Self::new(self.re - rhs.re, self.im - rhs.im, d)
    }
}

impl Mul for QuadraticSurd {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let d = self.joint_radicand(&rhs);
        let re = &self.re * &rhs.re + &self.im * &rhs.im * &d;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        Self::new(re, im, d)
    }
}

impl Neg for QuadraticSurd {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im, self.d)
    }
}

impl Zero for QuadraticSurd {
    fn zero() -> Self {
        Self::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for QuadraticSurd {
    fn one() -> Self {
        Self::rational(Rational::one())
    }
}

impl Scalar for QuadraticSurd {
    fn from_rational(r: &Rational) -> Self {
        Self::rational(r.clone())
    }

    fn try_inv(&self) -> Option<Self> {
        if self.im.is_zero() {
            return self.re.try_inv().map(Self::rational);
        }
        let norm = &self.re * &self.re - &self.im * &self.im * &self.d;
        if norm.is_zero() {
            return None;
        }
        Some(Self::new(&self.re / &norm, -&self.im / &norm, self.d.clone()))
    }

    fn distance(&self, other: &Self) -> f64 {
        (self.clone() - other.clone()).to_complex().norm()
    }

    fn re_f64(&self) -> f64 {
        self.to_complex().re
    }

    fn is_exact() -> bool {
        true
    }
}
