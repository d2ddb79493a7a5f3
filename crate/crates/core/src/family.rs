//! The two operator families, D_Xi and D_Lambda, as interchangeable strategies.
//!
//! Everything that differs between the families (operator coefficients, weight, scaling
//! constants, Eulerian representation, interlacing window) lives behind
//! [`OperatorFamily`]. Implementations are registered by name and looked up at runtime.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::diffop::{DiffOp, WeightSpec};
use crate::error::{Error, Result};
use crate::ratpoly::{int, rat, RatNum, RatPoly};

/// Handle naming one of the registered families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Xi,
    Lambda,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EulerianType {
    A,
    B,
}

/// Constants of the closed form
/// `P_n = outer * prod_{k<n}(s_k / scale_k) * (lead * c * T_{n+1} + (d - shift * c) * T_n)`
/// where `T` is the auxiliary family and `s_k` the caller's scaling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormConstants {
    pub outer: RatNum,
    pub lead: RatNum,
    pub shift: RatNum,
}

pub trait OperatorFamily: Send + Sync {
    fn name(&self) -> &'static str;
    fn family(&self) -> Family;

    /// Coefficient triple of the second-order operator, as displayed.
    fn operator(&self) -> DiffOp;
    /// `k` such that the operator equals `A_k ∘ B_k`.
    fn factor_index(&self) -> u64;
    fn weight(&self) -> WeightSpec;

    /// Constant first member of the auxiliary family.
    fn aux_seed(&self) -> RatNum;
    /// Scaling constant turning `T_n` into `T_{n+1} = scale_n * D[T_n]`.
    fn scaling(&self, n: u64) -> Result<RatNum>;
    fn closed_form_constants(&self, n: u64) -> ClosedFormConstants;

    fn eulerian_type(&self) -> EulerianType;
    /// Index `m` of the Eulerian polynomial representing `T_n`.
    fn eulerian_index(&self, n: u64) -> usize;
    /// Rational prefactor of `T_n(t^2) = pre * (1+t)^(2n-1) / t * E_m(-(1-t)/(1+t))`.
    fn eulerian_prefactor(&self, n: u64) -> RatNum;
    /// The real factor multiplying `-(1+sqrt z)^2 E_{m(n+1)}(u)/E_{m(n)}(u)` in `T_{n+1}/T_n`.
    fn ratio_prefactor(&self, n: u64) -> f64;

    /// Open window `(lo, hi)` for `d/c` in which `cx - d` and its image strictly interlace.
    fn interlacing_window(&self) -> (RatNum, RatNum);

    /// Eigenvalue attached to the exponent of the `(1-x)^e` factor.
    fn eigenvalue(&self, exponent: f64) -> f64;
    /// `(a, b, c)` of the regular and the `x^(-1/2)` hypergeometric branch.
    fn eigen_series(&self, exponent: f64) -> [(f64, f64, f64); 2];
    /// Local exponents at `x = 1`, larger real part first.
    fn indicial_at_one(&self, eigenvalue: f64) -> (Complex64, Complex64);
}

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn sign_alternating(n: u64) -> RatNum {
    if n % 2 == 1 {
        RatNum::one()
    } else {
        -RatNum::one()
    }
}

fn require_positive(n: u64, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument(format!("{what} requires n >= 1")));
    }
    Ok(())
}

pub struct XiFamily;
pub struct LambdaFamily;

impl OperatorFamily for XiFamily {
    fn name(&self) -> &'static str {
        "xi"
    }

    fn family(&self) -> Family {
        Family::Xi
    }

    fn operator(&self) -> DiffOp {
        let xm1 = RatPoly::from_ints(&[-1, 1]);
        DiffOp::new(
            &RatPoly::from_ints(&[0, 4]) * &(&xm1 * &xm1),
            (&xm1 * &RatPoly::from_ints(&[-3, 7])).scale(&int(2)),
            RatPoly::from_ints(&[-5, 6]),
        )
    }

    fn factor_index(&self) -> u64 {
        1
    }

    fn weight(&self) -> WeightSpec {
        WeightSpec::new(Family::Xi, rat(1, 2), 0)
    }

    fn aux_seed(&self) -> RatNum {
        rat(1, 4)
    }

    fn scaling(&self, n: u64) -> Result<RatNum> {
        require_positive(n, "a_n")?;
        Ok(-RatNum::new(BigInt::one(), BigInt::from(8 * n) * (2 * n + 1)))
    }

    fn closed_form_constants(&self, n: u64) -> ClosedFormConstants {
        ClosedFormConstants {
            outer: int(-4),
            lead: RatNum::new(BigInt::from(4 * n) * (2 * n + 1), BigInt::from(3)),
            shift: rat(5, 6),
        }
    }

    fn eulerian_type(&self) -> EulerianType {
        EulerianType::B
    }

    fn eulerian_index(&self, n: u64) -> usize {
        (2 * n - 1) as usize
    }

    fn eulerian_prefactor(&self, n: u64) -> RatNum {
        sign_alternating(n) / RatNum::from_integer(pow2(4 * n - 1) * factorial(2 * n - 1))
    }

    fn ratio_prefactor(&self, n: u64) -> f64 {
        let n = n as f64;
        1.0 / (16.0 * (2.0 * n) * (2.0 * n + 1.0))
    }

    fn interlacing_window(&self) -> (RatNum, RatNum) {
        (rat(3, 7), int(1))
    }

    fn eigenvalue(&self, a: f64) -> f64 {
        (2.0 * a + 1.0).powi(2)
    }

    fn eigen_series(&self, a: f64) -> [(f64, f64, f64); 2] {
        [(a + 1.0, a + 1.5, 1.5), (a + 0.5, a + 1.0, 0.5)]
    }

    // 4r^2 + 4r + 1 - λ = 0
    fn indicial_at_one(&self, lambda: f64) -> (Complex64, Complex64) {
        let r = Complex64::new(lambda, 0.0).sqrt();
        ((r - 1.0) / 2.0, (-r - 1.0) / 2.0)
    }
}

impl OperatorFamily for LambdaFamily {
    fn name(&self) -> &'static str {
        "lambda"
    }

    fn family(&self) -> Family {
        Family::Lambda
    }

    fn operator(&self) -> DiffOp {
        let xm1 = RatPoly::from_ints(&[-1, 1]);
        DiffOp::new(
            &RatPoly::from_ints(&[0, 4]) * &(&xm1 * &xm1),
            (&xm1 * &RatPoly::from_ints(&[-1, 3])).scale(&int(6)),
            RatPoly::from_ints(&[-8, 12]),
        )
    }

    fn factor_index(&self) -> u64 {
        2
    }

    fn weight(&self) -> WeightSpec {
        WeightSpec::new(Family::Lambda, rat(1, 2), 1)
    }

    fn aux_seed(&self) -> RatNum {
        rat(1, 7)
    }

    fn scaling(&self, n: u64) -> Result<RatNum> {
        require_positive(n, "b_n")?;
        let num = pow2(2 * n + 1) - 1;
        let den = (pow2(2 * n + 3) - 1) * (2 * n + 1) * (2 * n + 2);
        Ok(-RatNum::new(num, den))
    }

    fn closed_form_constants(&self, n: u64) -> ClosedFormConstants {
        let num = (pow2(2 * n + 3) - 1) * (2 * n + 1) * (2 * n + 2);
        let den = (pow2(2 * n + 1) - 1) * 12;
        ClosedFormConstants {
            outer: int(-7),
            lead: RatNum::new(num, den),
            shift: rat(2, 3),
        }
    }

    fn eulerian_type(&self) -> EulerianType {
        EulerianType::A
    }

    fn eulerian_index(&self, n: u64) -> usize {
        (2 * n) as usize
    }

    fn eulerian_prefactor(&self, n: u64) -> RatNum {
        sign_alternating(n) / RatNum::from_integer((pow2(2 * n + 1) - 1) * factorial(2 * n))
    }

    fn ratio_prefactor(&self, n: u64) -> f64 {
        let m = 2.0 * n as f64;
        ((m + 1.0).exp2() - 1.0) / ((m + 3.0).exp2() - 1.0) / ((m + 1.0) * (m + 2.0))
    }

    fn interlacing_window(&self) -> (RatNum, RatNum) {
        (rat(1, 3), int(1))
    }

    fn eigenvalue(&self, b: f64) -> f64 {
        4.0 * (b + 1.0).powi(2)
    }

    fn eigen_series(&self, b: f64) -> [(f64, f64, f64); 2] {
        [(b + 1.5, b + 2.0, 1.5), (b + 1.0, b + 1.5, 0.5)]
    }

    // 4(r + 1)^2 - μ = 0
    fn indicial_at_one(&self, mu: f64) -> (Complex64, Complex64) {
        let r = Complex64::new(mu, 0.0).sqrt() / 2.0;
        (r - 1.0, -r - 1.0)
    }
}

static REGISTRY: [&dyn OperatorFamily; 2] = [&XiFamily, &LambdaFamily];

/// All registered families, in registration order.
pub fn registry() -> &'static [&'static dyn OperatorFamily] {
    &REGISTRY
}

pub fn lookup(name: &str) -> Result<&'static dyn OperatorFamily> {
    let key = name.trim().to_ascii_lowercase();
    REGISTRY
        .iter()
        .copied()
        .find(|f| f.name() == key)
        .ok_or_else(|| Error::UnknownFamily(name.to_string(), names().join(", ")))
}

pub fn names() -> Vec<&'static str> {
    REGISTRY.iter().map(|f| f.name()).collect()
}

impl Family {
    pub const ALL: [Family; 2] = [Family::Xi, Family::Lambda];

    pub fn imp(self) -> &'static dyn OperatorFamily {
        match self {
            Family::Xi => &XiFamily,
            Family::Lambda => &LambdaFamily,
        }
    }

    pub fn name(self) -> &'static str {
        self.imp().name()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        lookup(s).map(|f| f.family())
    }
}

/// `d/c` strictly inside the family's interlacing window.
pub fn in_window(family: Family, c: &RatNum, d: &RatNum) -> bool {
    if c.is_zero() {
        return false;
    }
    let r = d / c;
    let (lo, hi) = family.imp().interlacing_window();
    lo < r && r < hi
}
