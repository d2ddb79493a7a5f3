//! The limiting zero distribution of the P-sequences and its empirical comparison.
//!
//! With `L(x) = log((1+√x)/(1-√x)) = 2 artanh(√x)`:
//! `F(x) = (2/π) atan(L(x)/π)`, `ρ(x) = 2 / (√x (1-x) (L(x)² + π²))`,
//! `F⁻¹(t) = tanh²((π/2) tan(πt/2))`.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::eulerian::{quotient_at, u_map};
use crate::families::{aux_family, iterate_p, FamilySpec};
use crate::family::Family;
use crate::ratpoly::{f64_to_rat, rat_to_f64, RatNum, RatPoly};
use crate::rootlab::{isolate, RootSet};

/// Sample points in `ℂ \ (-∞, 1]`, away from the cut.
pub const OMEGA_GRID: [(f64, f64); 7] = [
    (2.0, 0.0),
    (3.0, 0.0),
    (4.0, 0.0),
    (9.0, 0.0),
    (1.5, 0.5),
    (1.5, -0.5),
    (-1.0, 2.0),
];

pub fn omega_grid() -> Vec<Complex64> {
    OMEGA_GRID.iter().map(|&(re, im)| Complex64::new(re, im)).collect()
}

/// Isolation width for empirical statistics, `2^-34 < 1e-10`.
pub fn stats_width() -> RatNum {
    RatNum::new(1.into(), num_bigint::BigInt::from(1u64 << 34))
}

/// `L(x) = 2 log(1+√x) - log(1-x)`, which keeps `1-x` exact near 1.
fn log_ratio(x: f64) -> f64 {
    2.0 * x.sqrt().ln_1p() - (-x).ln_1p()
}

pub fn limit_density(x: f64) -> Result<f64> {
    if x == 0.0 || x == 1.0 {
        return Err(Error::OutOfDomain(x, "density is singular at 0 and 1".into()));
    }
    if !(0.0..1.0).contains(&x) {
        return Ok(0.0);
    }
    let l = log_ratio(x);
    Ok(2.0 / (x.sqrt() * (1.0 - x) * (l * l + PI * PI)))
}

pub fn limit_cdf(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x >= 1.0 {
        1.0
    } else {
        2.0 / PI * (log_ratio(x) / PI).atan()
    }
}

pub fn limit_quantile(t: f64) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::OutOfDomain(t, "quantile needs 0 < t < 1".into()));
    }
    Ok((PI / 2.0 * (PI * t / 2.0).tan()).tanh().powi(2))
}

fn c_pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuantileError {
    pub k: usize,
    pub x_kn: f64,
    pub predicted: f64,
    pub abs_err: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SSample {
    pub z: [f64; 2],
    pub s_n: [f64; 2],
    pub s_limit: [f64; 2],
    pub abs_err: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistReport {
    pub n: usize,
    pub family: Family,
    pub ks: f64,
    /// `max_k |F(x_k) - k/n|`.
    pub max_cdf_gap: f64,
    /// Every root lies in `(0, 1)`.
    pub confined: bool,
    pub quantile_errors: Vec<QuantileError>,
    pub s_samples: Vec<SSample>,
}

/// Kolmogorov-Smirnov distance between the empirical measure of sorted `xs` and `F`.
pub fn ks_distance(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = limit_cdf(x);
            (((i + 1) as f64 / n) - f).max(f - i as f64 / n)
        })
        .fold(0.0, f64::max)
}

fn expand(set: &RootSet) -> Vec<f64> {
    set.intervals()
        .iter()
        .flat_map(|iv| std::iter::repeat(iv.midpoint_f64()).take(iv.mult))
        .collect()
}

/// Sorted root values of `p`, repeated by multiplicity.
pub fn sorted_roots(p: &RatPoly) -> Result<Vec<f64>> {
    Ok(expand(&isolate(p, &stats_width())?))
}

pub fn compare_distribution(spec: &FamilySpec, n: usize) -> Result<DistReport> {
    compare_distribution_on(spec, n, &omega_grid())
}

pub fn compare_distribution_on(spec: &FamilySpec, n: usize, grid: &[Complex64]) -> Result<DistReport> {
    let seq = iterate_p(spec, n)?;
    let p = seq.get(n).unwrap();
    let mut set = isolate(p, &stats_width())?;
    let xs = expand(&set);
    if xs.len() != n {
        return Err(Error::NotHyperbolic { expected: n, found: xs.len() });
    }
    let one = RatNum::from_integer(1.into());
    let confined = match set.all_within(&one)? {
        Some(v) => v,
        None => crate::rootlab::confined(p, &one)?,
    };
    let nf = n as f64;
    let quantile_errors = xs
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let k = i + 1;
            let predicted = if k == n { 1.0 } else { limit_quantile(k as f64 / nf)? };
            Ok(QuantileError { k, x_kn: x, predicted, abs_err: (x - predicted).abs() })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_cdf_gap = xs
        .iter()
        .enumerate()
        .map(|(i, &x)| (limit_cdf(x) - (i + 1) as f64 / nf).abs())
        .fold(0.0, f64::max);
    let dp = p.differentiate();
    let s_samples = grid
        .iter()
        .map(|&z| {
            let s = s_n_from_poly(p, &dp, n, z)?;
            let lim = s_limit(z)?;
            Ok(SSample { z: c_pair(z), s_n: c_pair(s), s_limit: c_pair(lim), abs_err: (s - lim).norm() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DistReport {
        n,
        family: spec.family,
        ks: ks_distance(&xs),
        max_cdf_gap,
        confined,
        quantile_errors,
        s_samples,
    })
}

fn s_n_from_poly(p: &RatPoly, dp: &RatPoly, n: usize, z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re <= 1.0 {
        return Err(Error::OnCut { re: z.re, im: z.im });
    }
    let q = quotient_at(dp, p, z).map_err(|_| Error::Pole(format!("P_{n} vanishes at {z}")))?;
    Ok(q / n as f64)
}

/// `(1/n) P_n'(z) / P_n(z)`, evaluated exactly at the rational point `z` and rounded once.
pub fn s_n_eval(spec: &FamilySpec, n: usize, z: Complex64) -> Result<Complex64> {
    let seq = iterate_p(spec, n)?;
    let p = seq.get(n).unwrap();
    s_n_from_poly(p, &p.differentiate(), n, z)
}

/// `1/(√z(1+√z)) + (u + (1-u)/log u) / (√z(1-√z))`.
pub fn s_limit(z: Complex64) -> Result<Complex64> {
    let u = u_map(z)?;
    let r = z.sqrt();
    let one = Complex64::new(1.0, 0.0);
    Ok(one / (r * (one + r)) + (u + (one - u) / u.ln()) / (r * (one - r)))
}

/// Exact Gaussian rational, only what the decomposition needs.
#[derive(Clone, Debug)]
struct Gauss {
    re: RatNum,
    im: RatNum,
}

impl Gauss {
    fn at(p: &RatPoly, re: &RatNum, im: &RatNum) -> Gauss {
        let (re, im) = p.evaluate_gaussian(re, im);
        Gauss { re, im }
    }

    fn mul(&self, o: &Gauss) -> Gauss {
        Gauss {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn add(&self, o: &Gauss) -> Gauss {
        Gauss { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    fn sub(&self, o: &Gauss) -> Gauss {
        Gauss { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn scale(&self, c: &RatNum) -> Gauss {
        Gauss { re: &self.re * c, im: &self.im * c }
    }

    fn div(&self, o: &Gauss) -> Result<Gauss> {
        let norm = &o.re * &o.re + &o.im * &o.im;
        if norm.is_zero() {
            return Err(Error::Pole("division by zero in the decomposition".into()));
        }
        Ok(Gauss {
            re: (&self.re * &o.re + &self.im * &o.im) / &norm,
            im: (&self.im * &o.re - &self.re * &o.im) / &norm,
        })
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

/// The two terms of `s_n = (1/n) T_n'/T_n + (1/n) α R_n'/(α R_n + β)` with
/// `R_n = T_{n+1}/T_n`, `α = lead·c`, `β = d - shift·c`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Decomposition {
    pub main: Complex64,
    pub correction: Complex64,
}

impl Decomposition {
    pub fn total(&self) -> Complex64 {
        self.main + self.correction
    }
}

pub fn decomposition(spec: &FamilySpec, n: usize, z: Complex64) -> Result<Decomposition> {
    u_map(z)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let aux = aux_family(spec.family, n + 1)?;
    let consts = spec.family.imp().closed_form_constants(n as u64);
    let alpha = &consts.lead * &spec.c;
    let beta = &spec.d - &consts.shift * &spec.c;
    let (re, im) = (f64_to_rat(z.re)?, f64_to_rat(z.im)?);
    let t = aux.get(n).unwrap();
    let t1 = aux.get(n + 1).unwrap();
    let tv = Gauss::at(t, &re, &im);
    let tdv = Gauss::at(&t.differentiate(), &re, &im);
    let t1v = Gauss::at(t1, &re, &im);
    let t1dv = Gauss::at(&t1.differentiate(), &re, &im);
    let inv_n = RatNum::new(1.into(), n.into());

    let main = tdv.div(&tv)?.scale(&inv_n);
    // α R' / (α R + β) = α (T1' T - T1 T') / (T (α T1 + β T))
    let num = t1dv.mul(&tv).sub(&t1v.mul(&tdv)).scale(&alpha);
    let den = tv.mul(&t1v.scale(&alpha).add(&tv.scale(&beta)));
    let correction = num.div(&den)?.scale(&inv_n);
    Ok(Decomposition { main: main.to_c64(), correction: correction.to_c64() })
}
