//! Exact rational scalars and dense univariate polynomials over the rationals.
//!
//! Scalars are `num_rational::BigRational`, which already maintains the canonical form
//! (positive denominator, reduced, zero as `0/1`). Polynomials are stored lowest degree
//! first with no trailing zeros; the zero polynomial is the empty vector.

pub mod intpoly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
pub use intpoly::{IntPoly, RationalPoint};

pub type RatNum = BigRational;

pub fn rat(num: i64, den: i64) -> RatNum {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> RatNum {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"-0.25"`.
pub fn parse_rat(s: &str) -> Result<RatNum> {
    let t = s.trim();
    let err = || Error::ParseRational(s.to_string());
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let negative = ip.starts_with('-');
        let whole = match ip.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            w => BigInt::from_str(w).map_err(|_| err())?,
        };
        let scale = num_traits::pow(BigInt::from(10), fp.len());
        let frac = BigInt::from_str(fp).map_err(|_| err())?;
        let mag = BigRational::new(whole * &scale + frac, scale);
        return Ok(if negative { -mag } else { mag });
    }
    BigInt::from_str(t)
        .map(BigRational::from_integer)
        .map_err(|_| err())
}

/// Canonical wire form: always `"num/den"`, denominator included even when it is 1.
pub fn format_rat(r: &RatNum) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Nearest-ish f64; correct for magnitudes far outside the f64 range of numerator
/// and denominator separately.
pub fn rat_to_f64(r: &RatNum) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational value of a finite double.
pub fn f64_to_rat(x: f64) -> Result<RatNum> {
    BigRational::from_float(x).ok_or_else(|| Error::InvalidArgument(format!("{x} is not finite")))
}

pub(crate) mod serde_rat {
    use super::*;

    pub fn serialize<S: Serializer>(r: &RatNum, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<RatNum, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(D::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
}

/// Dense polynomial with exact rational coefficients; `coeffs[k]` multiplies `x^k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<RatNum>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<RatNum>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        RatPoly::new(cs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RatPoly::constant(RatNum::one())
    }

    pub fn x() -> Self {
        RatPoly::from_ints(&[0, 1])
    }

    pub fn constant(c: RatNum) -> Self {
        RatPoly::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: RatNum, k: usize) -> Self {
        let mut coeffs = vec![RatNum::zero(); k + 1];
        coeffs[k] = c;
        RatPoly::new(coeffs)
    }

    /// `c*x - d`
    pub fn linear(c: &RatNum, d: &RatNum) -> Self {
        RatPoly::new(vec![-d.clone(), c.clone()])
    }

    pub fn coeffs(&self) -> &[RatNum] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> RatNum {
        self.coeffs.get(k).cloned().unwrap_or_else(RatNum::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&RatNum> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &RatNum) -> RatPoly {
        if c.is_zero() {
            return RatPoly::zero();
        }
        RatPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn arith(&self, other: &RatPoly, kind: ArithKind) -> RatPoly {
        match kind {
            ArithKind::Add => self + other,
            ArithKind::Sub => self - other,
            ArithKind::Mul => self * other,
        }
    }

    pub fn differentiate(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Exact Horner evaluation.
    pub fn evaluate(&self, x: &RatNum) -> RatNum {
        let mut acc = RatNum::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Double-precision Horner evaluation at a complex point.
    pub fn evaluate_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + rat_to_f64(c);
        }
        acc
    }

    /// Exact evaluation at the Gaussian rational `re + i*im`, returned as `(re, im)`.
    ///
    /// Runs over integers: coefficients are cleared to a primitive integer polynomial and
    /// the point to a common denominator, so only one rational reduction happens at the end.
    pub fn evaluate_gaussian(&self, re: &RatNum, im: &RatNum) -> (RatNum, RatNum) {
        let Some(d) = self.degree() else {
            return (RatNum::zero(), RatNum::zero());
        };
        let (factor, ip) = self.to_primitive_int();
        let q = re.denom().lcm(im.denom());
        let a = re.numer() * (&q / re.denom());
        let b = im.numer() * (&q / im.denom());
        let cs = ip.coeffs();
        let mut vr = cs[d].clone();
        let mut vi = BigInt::zero();
        let mut qpow = BigInt::one();
        for k in (0..d).rev() {
            let nr = &vr * &a - &vi * &b;
            let ni = &vr * &b + &vi * &a;
            qpow *= &q;
            vr = nr + &cs[k] * &qpow;
            vi = ni;
        }
        let scale = &factor / BigRational::from_integer(qpow);
        (
            BigRational::from_integer(vr) * &scale,
            BigRational::from_integer(vi) * scale,
        )
    }

    /// `g(x) = f(x^2)`.
    pub fn compose_square(&self) -> RatPoly {
        let mut coeffs = vec![RatNum::zero(); (2 * self.coeffs.len()).saturating_sub(1)];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * k] = c.clone();
        }
        RatPoly::new(coeffs)
    }

    /// `self = factor * prim` with `prim` an integer polynomial of content 1 and
    /// positive leading coefficient. The zero polynomial maps to `(0, 0)`.
    pub fn to_primitive_int(&self) -> (RatNum, IntPoly) {
        if self.is_zero() {
            return (RatNum::zero(), IntPoly::zero());
        }
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        let ip = IntPoly::new(ints);
        let mut g = ip.content();
        if ip.leading().unwrap().is_negative() {
            g = -g;
        }
        let prim = ip.exact_div_scalar(&g);
        (BigRational::new(g, l), prim)
    }

    pub fn from_int(p: &IntPoly) -> RatPoly {
        RatPoly::new(p.coeffs().iter().cloned().map(BigRational::from_integer).collect())
    }

    /// Euclidean division over the rationals. Panics on division by zero.
    pub fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let Some(nd) = self.degree() else {
            return (RatPoly::zero(), RatPoly::zero());
        };
        if nd < dd {
            return (RatPoly::zero(), self.clone());
        }
        let lc_inv = divisor.leading_coeff().unwrap().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![RatNum::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let t = &rem[k + dd] * &lc_inv;
            if !t.is_zero() {
                for (j, dj) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &t * dj;
                }
            }
            quot[k] = t;
        }
        rem.truncate(dd);
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let g = intpoly::gcd(&self.to_primitive_int().1, &other.to_primitive_int().1);
        let g = RatPoly::from_int(&g);
        match g.leading_coeff() {
            None => g,
            Some(lc) => g.scale(&lc.recip()),
        }
    }

    /// `f / gcd(f, f')`, normalized to an integer-primitive polynomial with positive
    /// leading coefficient.
    pub fn squarefree_part(&self) -> Result<RatPoly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = self.gcd(&self.differentiate());
        let (q, _) = self.div_rem(&g);
        Ok(RatPoly::from_int(&q.to_primitive_int().1))
    }

    /// Yun's square-free decomposition: `f = c * prod_i factors[i]^(i+1)` with every factor
    /// square-free, pairwise coprime, integer-primitive with positive leading coefficient
    /// (constant factors are `1`).
    pub fn squarefree_decomposition(&self) -> Result<Vec<RatPoly>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out = Vec::new();
        if self.degree() == Some(0) {
            return Ok(out);
        }
        let fp = self.differentiate();
        let a0 = self.gcd(&fp);
        let mut b = self.div_rem(&a0).0;
        let mut c = fp.div_rem(&a0).0;
        let mut d = &c - &b.differentiate();
        loop {
            let a = b.gcd(&d);
            out.push(RatPoly::from_int(&a.to_primitive_int().1));
            b = b.div_rem(&a).0;
            if b.degree() == Some(0) {
                break;
            }
            c = d.div_rem(&a).0;
            d = &c - &b.differentiate();
        }
        while out.last().is_some_and(|f| f.degree() == Some(0)) {
            out.pop();
        }
        Ok(out)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let coef = if mag.is_integer() {
                mag.numer().to_string()
            } else {
                format!("({mag})")
            };
            match k {
                0 => write!(f, "{coef}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{coef}*")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Serialize for RatPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.coeffs.iter().map(format_rat).collect();
        strs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        let coeffs = strs
            .iter()
            .map(|s| parse_rat(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(RatPoly::new(coeffs))
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![RatNum::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatPoly {
            type Output = RatPoly;
            fn $m(self, rhs: RatPoly) -> RatPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatPoly> for RatPoly {
            type Output = RatPoly;
            fn $m(self, rhs: &RatPoly) -> RatPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        -&self
    }
}
