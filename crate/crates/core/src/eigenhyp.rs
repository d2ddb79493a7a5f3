//! Gauss hypergeometric series and the formal eigenfunctions of the two operators.
//!
//! For exponent `e` the eigenfunction is
//! `(1-x)^e [C1 F(a1, b1; c1; x) + C2 x^(-1/2) F(a2, b2; c2; x)]`, parameters supplied by
//! the family. Derivatives come from shifted series, never from differences.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::ratpoly::rat_to_f64;

/// Largest `|x|` accepted by [`hyp2f1`].
pub const HYP_X_MAX: f64 = 0.8;
/// Target bound on the discarded tail.
pub const HYP_TAIL: f64 = 1e-14;
const MAX_TERMS: usize = 20_000;
/// Residual grid limits.
pub const RESIDUAL_X_RANGE: (f64, f64) = (0.05, 0.6);

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HypParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Index of the last summed term.
    pub truncation: usize,
    /// Bound on the absolute value of the discarded tail.
    pub tail_bound: f64,
}

fn nonpositive_integer(v: f64) -> bool {
    v <= 0.0 && v.fract() == 0.0
}

impl HypParams {
    /// Chooses the truncation at `x` so that the ratio-test tail bound is at most `tol`.
    pub fn at(a: f64, b: f64, c: f64, x: f64, tol: f64) -> Result<Self> {
        if nonpositive_integer(c) {
            return Err(Error::InvalidArgument(format!("c = {c} is a nonpositive integer")));
        }
        if !(x.abs() <= HYP_X_MAX) {
            return Err(Error::OutOfDomain(x, format!("hypergeometric series needs |x| <= {HYP_X_MAX}")));
        }
        let ax = x.abs();
        let cneg = (-c).max(0.0);
        let mut term = 1.0f64;
        for k in 0..MAX_TERMS {
            let kf = k as f64;
            if term == 0.0 {
                return Ok(HypParams { a, b, c, truncation: k, tail_bound: 0.0 });
            }
            // for j >= k: |t_{j+1}/t_j| <= |x| (1+|a|/k)(1+|b|/k)/(1-c⁻/k)
            if k > 0 && kf > cneg {
                let rho = ax * (1.0 + a.abs() / kf) * (1.0 + b.abs() / kf) / (1.0 - cneg / kf);
                if rho < 1.0 {
                    let tail = term.abs() * rho / (1.0 - rho);
                    if tail <= tol {
                        return Ok(HypParams { a, b, c, truncation: k, tail_bound: tail });
                    }
                }
            }
            term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * x;
        }
        Err(Error::Precondition(format!("series did not reach tail {tol} in {MAX_TERMS} terms")))
    }

    pub fn new(a: f64, b: f64, c: f64, x: f64) -> Result<Self> {
        Self::at(a, b, c, x, HYP_TAIL)
    }
}

/// Sums terms `0..=p.truncation` of the Gauss series at `x`.
pub fn hyp2f1(p: &HypParams, x: f64) -> Result<f64> {
    if nonpositive_integer(p.c) {
        return Err(Error::InvalidArgument(format!("c = {} is a nonpositive integer", p.c)));
    }
    if !(x.abs() <= HYP_X_MAX) {
        return Err(Error::OutOfDomain(x, format!("hypergeometric series needs |x| <= {HYP_X_MAX}")));
    }
    let (mut term, mut sum) = (1.0f64, 1.0f64);
    for k in 0..p.truncation {
        let kf = k as f64;
        term *= (p.a + kf) * (p.b + kf) / ((p.c + kf) * (kf + 1.0)) * x;
        sum += term;
    }
    Ok(sum)
}

/// `₂F₁(a, b; c; x)` with the default tail target.
pub fn f21(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    hyp2f1(&HypParams::new(a, b, c, x)?, x)
}

/// `F, F', F''` of `₂F₁(a, b; c; x)`.
fn f21_jet(a: f64, b: f64, c: f64, x: f64) -> Result<[f64; 3]> {
    let f0 = f21(a, b, c, x)?;
    let f1 = a * b / c * f21(a + 1.0, b + 1.0, c + 1.0, x)?;
    let f2 = a * (a + 1.0) * b * (b + 1.0) / (c * (c + 1.0)) * f21(a + 2.0, b + 2.0, c + 2.0, x)?;
    Ok([f0, f1, f2])
}

/// Value and first two derivatives of `x^p (1-x)^e F(x)`.
fn branch_jet(p: f64, e: f64, f: [f64; 3], x: f64) -> [f64; 3] {
    let h = x.powf(p) * (1.0 - x).powf(e);
    let g = p / x - e / (1.0 - x);
    let dg = -p / (x * x) - e / ((1.0 - x) * (1.0 - x));
    let h1 = h * g;
    let h2 = h * (g * g + dg);
    [h * f[0], h1 * f[0] + h * f[1], h2 * f[0] + 2.0 * h1 * f[1] + h * f[2]]
}

fn check_x(x: f64, c2: f64) -> Result<()> {
    if !(x <= HYP_X_MAX) {
        return Err(Error::OutOfDomain(x, format!("eigenfunctions are evaluated on (0, {HYP_X_MAX}]")));
    }
    if x <= 0.0 && (c2 != 0.0 || x < 0.0) {
        return Err(Error::OutOfDomain(x, "the x^(-1/2) branch needs x > 0".into()));
    }
    Ok(())
}

fn eigen_jet(family: Family, exponent: f64, c1: f64, c2: f64, x: f64) -> Result<[f64; 3]> {
    check_x(x, c2)?;
    let [(a1, b1, cc1), (a2, b2, cc2)] = family.imp().eigen_series(exponent);
    let mut out = [0.0; 3];
    if c1 != 0.0 {
        let j = branch_jet(0.0, exponent, f21_jet(a1, b1, cc1, x)?, x);
        for (o, v) in out.iter_mut().zip(j) {
            *o += c1 * v;
        }
    }
    if c2 != 0.0 {
        let j = branch_jet(-0.5, exponent, f21_jet(a2, b2, cc2, x)?, x);
        for (o, v) in out.iter_mut().zip(j) {
            *o += c2 * v;
        }
    }
    Ok(out)
}

pub fn eigenfunction(family: Family, exponent: f64, c1: f64, c2: f64, x: f64) -> Result<f64> {
    if x == 0.0 && c2 == 0.0 {
        return Ok(c1);
    }
    Ok(eigen_jet(family, exponent, c1, c2, x)?[0])
}

/// `D[f](x) - λ f(x)` at one point.
pub fn residual_at(family: Family, exponent: f64, eigenvalue: f64, c1: f64, c2: f64, x: f64) -> Result<f64> {
    let [f, f1, f2] = eigen_jet(family, exponent, c1, c2, x)?;
    let op = family.imp().operator();
    let ev = |p: &crate::ratpoly::RatPoly| {
        p.coeffs().iter().rev().fold(0.0, |acc, c| acc * x + rat_to_f64(c))
    };
    Ok(ev(&op.q2) * f2 + ev(&op.q1) * f1 + ev(&op.q0) * f - eigenvalue * f)
}

/// Max `|D[f] - λ f|` over `xs` with an explicit eigenvalue.
pub fn eigen_residual_with(
    family: Family,
    exponent: f64,
    eigenvalue: f64,
    c1: f64,
    c2: f64,
    xs: &[f64],
) -> Result<f64> {
    let (lo, hi) = RESIDUAL_X_RANGE;
    let mut worst = 0.0f64;
    for &x in xs {
        if !(lo..=hi).contains(&x) {
            return Err(Error::OutOfDomain(x, format!("residual grid must lie in [{lo}, {hi}]")));
        }
        worst = worst.max(residual_at(family, exponent, eigenvalue, c1, c2, x)?.abs());
    }
    Ok(worst)
}

/// Max residual with the family's eigenvalue for `exponent`.
pub fn eigen_residual(family: Family, exponent: f64, c1: f64, c2: f64, xs: &[f64]) -> Result<f64> {
    let lambda = family.imp().eigenvalue(exponent);
    eigen_residual_with(family, exponent, lambda, c1, c2, xs)
}

/// Evenly spaced residual grid over the working range.
pub fn residual_grid(points: usize) -> Vec<f64> {
    let (lo, hi) = RESIDUAL_X_RANGE;
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..points)
            .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
            .collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SingularPoint {
    Zero,
    One,
}

/// Local exponents at a regular singular point, larger real part first.
pub fn indicial_exponents(family: Family, point: SingularPoint, eigenvalue: f64) -> (Complex64, Complex64) {
    match point {
        SingularPoint::Zero => (Complex64::new(0.0, 0.0), Complex64::new(-0.5, 0.0)),
        SingularPoint::One => family.imp().indicial_at_one(eigenvalue),
    }
}
