//! Verification suites: each runs one family of identities for one
//! parameter set and condenses the outcome into a [`VerificationReport`].

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::check::{CheckReport, Checker, ErrorMeasure};
use crate::cumulants::{cumulants_to_moments, moments_to_cumulants};
use crate::error::Result;
use crate::jacobi::{moments, mu_jacobi};
use crate::operators::{
    classical_raising_exponential_check, free_raising_resolvent_check, lowering_integral_apply, lowering_moment_formula,
    lowering_symbol_apply, multiplication_decomposition_check, poisson_mixture_apply, raising_difference_apply_exact,
    raising_difference_apply_with_tolerance, DomainPoly,
};
use crate::params::{Framework, MeixnerCase, MeixnerParams};
use crate::poly::{ops_from_jacobi, Poly};
use crate::scalar::{int, Rational};
use crate::series::{
    c_compose_psi_free, cumulant_series, free_raising_symbol, generating_function, psi, psi_free, psi_inv,
    psi_inv_closed_form, psi_inv_free_sqrt, TruncatedSeries,
};

/// Version of the report layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Tolerance for floating-point comparisons unless configured otherwise.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Highest degree fed to the difference-operator raising formulas.
pub const RAISING_DIFFERENCE_MAX_DEGREE: usize = 10;

/// Highest cumulant index compared against the cumulant series.
pub const CUMULANT_MAX_ORDER: usize = 10;

/// Evaluation points for generating-function checks.
pub const GENERATING_POINTS: [i64; 5] = [0, 1, -1, 2, -2];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Lowering,
    Raising,
    Series,
    Cumulants,
    Decomposition,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Lowering, Suite::Raising, Suite::Series, Suite::Cumulants, Suite::Decomposition];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lowering => "lowering",
            Suite::Raising => "raising",
            Suite::Series => "series",
            Suite::Cumulants => "cumulants",
            Suite::Decomposition => "decomposition",
        }
    }

    /// Suites selected by a command-line name; `all` expands to every suite.
    pub fn parse_selection(s: &str) -> std::result::Result<Vec<Suite>, String> {
        if s == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        s.parse().map(|suite| vec![suite])
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

/// One parameter point per case a) to e), per framework, all with `t = 1`.
pub fn default_grid() -> Vec<MeixnerParams> {
    let points = [(0, 0), (1, 0), (2, 1), (3, 2), (1, 1)];
    Framework::ALL
        .into_iter()
        .flat_map(|fw| {
            points
                .into_iter()
                .map(move |(l, e)| MeixnerParams::unit(fw, int(l), int(e)).expect("grid parameters are valid"))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub suite: String,
    pub framework: Framework,
    pub lambda: String,
    pub eta: String,
    pub t: String,
    pub order: usize,
    pub status: Status,
    pub max_abs_error: ErrorMeasure,
    pub detail: Option<String>,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Runs one suite and wraps its outcome; errors become failing reports.
pub fn run_suite(suite: Suite, p: &MeixnerParams, order: usize, tolerance: f64) -> VerificationReport {
    let start = Instant::now();
    let outcome = match suite {
        Suite::Lowering => lowering_suite(p, order),
        Suite::Raising => raising_suite(p, order, tolerance),
        Suite::Series => series_suite(p, order),
        Suite::Cumulants => cumulants_suite(p, order),
        Suite::Decomposition => multiplication_decomposition_check(p, order),
    };
    let check = outcome.unwrap_or_else(|e| {
        let mut c = Checker::new();
        c.record_failure(e.to_string());
        c.finish()
    });
    let within = match check.error {
        ErrorMeasure::Exact => true,
        ErrorMeasure::Value(v) => v <= tolerance,
    };
    VerificationReport {
        schema: SCHEMA_VERSION,
        suite: suite.name().to_string(),
        framework: p.framework(),
        lambda: p.lambda().to_string(),
        eta: p.eta().to_string(),
        t: p.t().to_string(),
        order,
        status: if check.passed && within { Status::Pass } else { Status::Fail },
        max_abs_error: check.error,
        detail: check.detail,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

/// Runs every (point, suite) pair, points concurrently, and returns the
/// reports in grid order, suites in the given order within a point.
pub fn run_grid(points: &[MeixnerParams], suites: &[Suite], order: usize, tolerance: f64) -> Vec<VerificationReport> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = points
            .iter()
            .map(|p| scope.spawn(move || suites.iter().map(|&s| run_suite(s, p, order, tolerance)).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("suite thread panicked"))
            .collect()
    })
}

fn basis_for(p: &MeixnerParams, order: usize) -> Result<crate::poly::OpsBasis> {
    ops_from_jacobi(&mu_jacobi(&p.with_t(Rational::one())?, order), order)
}

/// Lowering in every representation on `P_0..P_N`, the moment formula on
/// `x^1..x^N`, and (classically) the Poisson-mixture form.
pub fn lowering_suite(p: &MeixnerParams, order: usize) -> Result<CheckReport> {
    let unit = p.with_t(Rational::one())?;
    let basis = basis_for(p, order)?;
    let mut c = Checker::new();
    for n in 0..=order {
        let pn = basis.get(n);
        let expected = match n {
            0 => Poly::zero(),
            _ => basis.get(n - 1).scale(&int(unit.framework().weight(n) as i64)),
        };
        let integral = lowering_integral_apply(&unit, pn)?;
        c.exact(|| format!("integral form on P_{n}"), &integral, &expected, || integral.max_distance(&expected));
        let symbol = lowering_symbol_apply(&unit, pn)?;
        c.exact(|| format!("symbol form on P_{n}"), &symbol, &expected, || symbol.max_distance(&expected));
        if unit.framework() == Framework::Classical && unit.case() != MeixnerCase::Gaussian {
            let mixture = poisson_mixture_apply(&unit, pn)?;
            c.exact(|| format!("Poisson mixture on P_{n}"), &mixture, &integral, || mixture.max_distance(&integral));
        }
    }
    for n in 1..=order {
        let formula = lowering_moment_formula(&unit, n)?;
        let integral = lowering_integral_apply(&unit, &Poly::monomial(n))?;
        c.exact(|| format!("moment formula on x^{n}"), &formula, &integral, || formula.max_distance(&integral));
    }
    Ok(c.finish())
}

/// Classical: difference-operator raising on `P_n` (exact over `Q(sqrt d)`
/// always, plus the rational or complex-float path) and the exponential
/// form of the raising identity. Free: the resolvent form.
pub fn raising_suite(p: &MeixnerParams, order: usize, tolerance: f64) -> Result<CheckReport> {
    match p.framework() {
        Framework::Free => free_raising_resolvent_check(p.lambda(), p.eta(), order),
        Framework::Classical => {
            let unit = p.with_t(Rational::one())?;
            let top = order.min(RAISING_DIFFERENCE_MAX_DEGREE);
            let basis = basis_for(p, top + 1)?;
            let mut c = Checker::new();
            for n in 0..=top {
                let next = basis.get(n + 1);
                let exact = raising_difference_apply_exact(&unit, basis.get(n))?;
                c.exact(|| format!("exact difference raising on P_{n}"), &exact, next, || exact.max_distance(next));
                match raising_difference_apply_with_tolerance(&unit, basis.get(n), tolerance) {
                    Ok(DomainPoly::Exact(r)) => {
                        c.exact(|| format!("difference raising on P_{n}"), &r, next, || r.max_distance(next));
                    }
                    Ok(float @ DomainPoly::Float(_)) => {
                        c.within(|| format!("complex difference raising on P_{n}"), float.distance_to(next), tolerance);
                    }
                    Err(e) => c.record_failure(format!("complex difference raising on P_{n}: {e}")),
                }
            }
            c.absorb(classical_raising_exponential_check(p.lambda(), p.eta(), order)?);
            Ok(c.finish())
        }
    }
}

fn series_eq(c: &mut Checker, what: impl FnOnce() -> String, lhs: &TruncatedSeries, rhs: &TruncatedSeries) {
    c.exact(what, lhs, rhs, || lhs.max_distance(rhs));
}

/// Series identities through order `N`, and generating-function
/// coefficients against recurrence-built polynomials.
pub fn series_suite(p: &MeixnerParams, order: usize) -> Result<CheckReport> {
    let unit = p.with_t(Rational::one())?;
    let (l, e) = (unit.lambda(), unit.eta());
    let mut c = Checker::new();
    let inv = psi_inv(&unit, order)?;
    let forward = psi(&unit, order)?;
    let z = TruncatedSeries::var(order);
    series_eq(&mut c, || "Psi(Psi^-1(z)) = z".into(), &forward.compose(&inv)?, &z);
    series_eq(&mut c, || "Psi^-1(Psi(z)) = z".into(), &inv.compose(&forward)?, &z);
    series_eq(&mut c, || "Psi^-1 against its closed form".into(), &inv, &psi_inv_closed_form(&unit, order)?);
    let cumulant = cumulant_series(&unit, order + 1)?;
    match unit.framework() {
        Framework::Classical => {
            series_eq(&mut c, || "Psi^-1 = C'".into(), &inv, &cumulant.derivative());
        }
        Framework::Free => {
            series_eq(&mut c, || "Psi^-1 = C / z".into(), &inv, &cumulant.div_z_pow(1)?.truncate(order));
            series_eq(&mut c, || "Psi^-1 = comp_inverse(Psi)".into(), &inv, &psi_free(l, e, order).comp_inverse()?);
            let c_psi = cumulant_series(&unit, order)?.compose(&psi_free(l, e, order))?;
            series_eq(&mut c, || "C(Psi(z)) = z^2/(1 + lambda z + eta z^2)".into(), &c_psi, &c_compose_psi_free(l, e, order));
            // 1/Psi_{l,e+1} - 1/Psi_{l,e} = z, multiplied through by z
            let shifted = psi_free(l, &(e + Rational::one()), order + 1).div_z_pow(1)?.recip()?;
            let plain = psi_free(l, e, order + 1).div_z_pow(1)?.recip()?;
            let z2 = TruncatedSeries::new(vec![Rational::zero(), Rational::zero(), Rational::one()], order);
            series_eq(&mut c, || "1/Psi_{l,e+1} - 1/Psi_{l,e} = z".into(), &(&shifted - &plain).truncate(order), &z2);
            series_eq(&mut c, || "Psi^-1_{l,e+1} against its closed form".into(), &psi_inv(&unit.eta_plus_one(), order)?, &psi_inv_free_sqrt(l, &(e + Rational::one()), order)?);
            if let Err(err) = free_raising_symbol(l, e, order) {
                c.record_failure(format!("free raising symbol constructions: {err}"));
            }
        }
    }
    let gf_order = order.min(12);
    let basis = basis_for(p, gf_order)?;
    for x0 in GENERATING_POINTS.map(int) {
        let g = generating_function(&unit, &x0, gf_order)?;
        let mut factorial = Rational::one();
        for n in 0..=gf_order {
            if n > 0 && unit.framework() == Framework::Classical {
                factorial *= int(n as i64);
            }
            let expected = basis.get(n).eval(&x0) / &factorial;
            c.exact_scalar(|| format!("generating function coefficient {n} at x = {x0}"), &g.coeff(n), &expected);
        }
    }
    Ok(c.finish())
}

/// Cumulants of `mu^(t)` from its moments against the cumulant series, the
/// moment/cumulant round trip, and additivity in `t`.
pub fn cumulants_suite(p: &MeixnerParams, order: usize) -> Result<CheckReport> {
    let n = order.min(CUMULANT_MAX_ORDER);
    let mut c = Checker::new();
    let m = moments(&mu_jacobi(p, n + 1), n)?;
    let kappa = moments_to_cumulants(p.framework(), &m, n)?;
    let series = cumulant_series(p, n.max(2))?;
    let mut factorial = Rational::one();
    for k in 1..=n {
        factorial *= int(k as i64);
        let expected = match p.framework() {
            Framework::Classical => series.coeff(k) * &factorial,
            Framework::Free => series.coeff(k),
        };
        c.exact_scalar(|| format!("cumulant {k} against the cumulant series"), &kappa.get(k), &expected);
    }
    let back = cumulants_to_moments(p.framework(), &kappa, n)?;
    c.exact(|| "moment/cumulant round trip".into(), &back, &m, || {
        back.as_slice().iter().zip(m.as_slice()).map(|(a, b)| crate::Scalar::distance(a, b)).fold(0.0, f64::max)
    });
    let unit = p.with_t(Rational::one())?;
    let unit_kappa = moments_to_cumulants(p.framework(), &moments(&mu_jacobi(&unit, n + 1), n)?, n)?;
    for k in 1..=n {
        let scaled = unit_kappa.get(k) * p.t();
        c.exact_scalar(|| format!("cumulant {k} is linear in t"), &kappa.get(k), &scaled);
    }
    if kappa.get(1) != Rational::zero() {
        c.record_failure("first cumulant of a centered family is nonzero".into());
    }
    Ok(c.finish())
}
