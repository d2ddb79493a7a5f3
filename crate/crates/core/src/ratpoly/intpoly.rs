//! Dense integer polynomials: the working representation for remainder sequences,
//! gcds and exact sign evaluation. Rational polynomials are cleared of denominators
//! and content before entering this module.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Integer polynomial, `coeffs[k]` multiplies `x^k`. No trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

/// An exact evaluation point `num / den` with `den > 0`.
///
/// Dyadic denominators are detected once so that evaluation replaces
/// multiplications by powers of the denominator with shifts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPoint {
    num: BigInt,
    den: BigInt,
    den_log2: Option<u64>,
}

impl RationalPoint {
    pub fn new(num: BigInt, den: BigInt) -> Self {
        assert!(den.is_positive(), "denominator must be positive");
        let den_log2 = if (&den & (&den - 1u32)).is_zero() {
            Some(den.bits() - 1)
        } else {
            None
        };
        RationalPoint { num, den, den_log2 }
    }

    pub fn from_rational(r: &num_rational::BigRational) -> Self {
        RationalPoint::new(r.numer().clone(), r.denom().clone())
    }

    pub fn to_rational(&self) -> num_rational::BigRational {
        num_rational::BigRational::new(self.num.clone(), self.den.clone())
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Nonnegative gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Content removed and leading coefficient made positive.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            g = -g;
        }
        self.exact_div_scalar(&g)
    }

    pub fn exact_div_scalar(&self, d: &BigInt) -> IntPoly {
        if d.is_one() {
            return self.clone();
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / d).collect())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn prem(&self, b: &IntPoly) -> IntPoly {
        let bd = b.degree().expect("pseudo-division by the zero polynomial");
        let Some(ad) = self.degree() else {
            return IntPoly::zero();
        };
        if ad < bd {
            return self.clone();
        }
        let lb = b.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        let mut steps = 0usize;
        while r.len() > bd {
            let top = r.len() - 1;
            let lr = r[top].clone();
            let shift = top - bd;
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                r[shift + j] -= &lr * bj;
            }
            debug_assert!(r[top].is_zero());
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
            steps += 1;
        }
        let missing = ad - bd + 1 - steps;
        if missing > 0 && !r.is_empty() {
            let f = num_traits::pow(lb, missing);
            for c in r.iter_mut() {
                *c *= &f;
            }
        }
        IntPoly::new(r)
    }

    /// `sum a_k num^k den^(d-k)`: the value at `num/den` scaled by `den^d > 0`.
    pub fn eval_homogeneous(&self, pt: &RationalPoint) -> BigInt {
        let Some(d) = self.degree() else {
            return BigInt::zero();
        };
        let mut v = self.coeffs[d].clone();
        match pt.den_log2 {
            Some(k) => {
                for i in (0..d).rev() {
                    v *= &pt.num;
                    let shift = k * (d - i) as u64;
                    if !self.coeffs[i].is_zero() {
                        v += &self.coeffs[i] << shift;
                    }
                }
            }
            None => {
                let mut qpow = BigInt::one();
                for i in (0..d).rev() {
                    v *= &pt.num;
                    qpow *= &pt.den;
                    if !self.coeffs[i].is_zero() {
                        v += &self.coeffs[i] * &qpow;
                    }
                }
            }
        }
        v
    }

    pub fn sign_at(&self, pt: &RationalPoint) -> Sign {
        self.eval_homogeneous(pt).sign()
    }

    /// Sign of the polynomial as x tends to +inf (`positive`) or -inf.
    pub fn sign_at_infinity(&self, positive: bool) -> Sign {
        match self.leading() {
            None => Sign::NoSign,
            Some(lc) => {
                let s = lc.sign();
                if positive || self.coeffs.len() % 2 == 1 {
                    s
                } else {
                    -s
                }
            }
        }
    }
}

/// Signed remainder chain `a, b, -rem(a, b), ...` with every entry a positive multiple of
/// the corresponding Euclidean entry. Coefficient growth is held to subresultant size by
/// dividing each pseudo-remainder by the subresultant factor `g * h^delta`.
pub fn signed_remainder_chain(a: &IntPoly, b: &IntPoly) -> Vec<IntPoly> {
    let mut seq = vec![a.clone()];
    if b.is_zero() {
        return seq;
    }
    seq.push(b.clone());
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let n = seq.len();
        let (prev, cur) = (&seq[n - 2], &seq[n - 1]);
        let cur_deg = cur.degree().unwrap();
        if cur_deg == 0 {
            break;
        }
        let delta = prev.degree().unwrap() - cur_deg;
        let r = prev.prem(cur);
        if r.is_zero() {
            break;
        }
        let lc_cur = cur.leading().unwrap().clone();
        let divisor = &g * num_traits::pow(h.clone(), delta);
        let mut next = r.exact_div_scalar(&divisor);
        // prem carries lc(cur)^(delta+1); undo its sign and negate the remainder.
        let lc_power_negative = lc_cur.is_negative() && (delta + 1) % 2 == 1;
        if !lc_power_negative {
            next = next.neg();
        }
        g = lc_cur.abs();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => num_traits::pow(g.clone(), delta) / num_traits::pow(h, delta - 1),
        };
        seq.push(next);
    }
    seq
}

/// Primitive gcd with positive leading coefficient.
pub fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    let (a, b) = if a.degree() >= b.degree() { (a, b) } else { (b, a) };
    let chain = signed_remainder_chain(&a.primitive(), &b.primitive());
    let last = chain.last().unwrap();
    if last.degree() == Some(0) {
        IntPoly::new(vec![BigInt::one()])
    } else {
        last.primitive()
    }
}
