//! Linear differential operators of order at most two with polynomial coefficients.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::Family;
use crate::ratpoly::{int, RatNum, RatPoly};

/// `L[f] = q2 f'' + q1 f' + q0 f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiffOp {
    pub q2: RatPoly,
    pub q1: RatPoly,
    pub q0: RatPoly,
}

/// Weight `x^alpha (1-x)^beta` on (0,1). Only the exponents are kept, so all
/// integrals stay rational.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub family: Family,
    #[serde(with = "crate::ratpoly::serde_rat")]
    pub alpha: RatNum,
    pub beta: u32,
}

impl WeightSpec {
    pub fn new(family: Family, alpha: RatNum, beta: u32) -> Self {
        WeightSpec { family, alpha, beta }
    }

    /// `∫_0^1 x^(k + alpha) (1-x)^beta dx`, expanded binomially in `(1-x)`.
    pub fn moment(&self, k: usize) -> RatNum {
        let mut total = RatNum::zero();
        let mut binom = BigInt::one();
        for j in 0..=self.beta as usize {
            let denom = &self.alpha + int((k + j + 1) as i64);
            let term = RatNum::from_integer(binom.clone()) / denom;
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
            binom = binom * (self.beta as usize - j) / (j + 1);
        }
        total
    }
}

impl DiffOp {
    pub fn new(q2: RatPoly, q1: RatPoly, q0: RatPoly) -> Self {
        DiffOp { q2, q1, q0 }
    }

    pub fn order(&self) -> usize {
        if !self.q2.is_zero() {
            2
        } else if !self.q1.is_zero() {
            1
        } else {
            0
        }
    }

    pub fn apply(&self, f: &RatPoly) -> RatPoly {
        let f1 = f.differentiate();
        let f2 = f1.differentiate();
        &(&(&self.q2 * &f2) + &(&self.q1 * &f1)) + &(&self.q0 * f)
    }

    /// `self ∘ inner`, by the product rule. Fails if the result would need a third or
    /// fourth derivative.
    pub fn compose(&self, inner: &DiffOp) -> Result<DiffOp> {
        let (a2, a1, a0) = (&self.q2, &self.q1, &self.q0);
        let (b2, b1, b0) = (&inner.q2, &inner.q1, &inner.q0);
        let (b2d, b1d, b0d) = (b2.differentiate(), b1.differentiate(), b0.differentiate());
        let (b2dd, b1dd, b0dd) = (b2d.differentiate(), b1d.differentiate(), b0d.differentiate());
        let two = int(2);

        let d4 = a2 * b2;
        let d3 = &(&(a2 * &b2d).scale(&two) + &(a2 * b1)) + &(a1 * b2);
        if !d4.is_zero() || !d3.is_zero() {
            return Err(Error::InvalidArgument(
                "composition has order above two".into(),
            ));
        }
        let q2 = [a2 * &b2dd, (a2 * &b1d).scale(&two), a2 * b0, a1 * &b2d, a1 * b1, a0 * b2]
            .iter()
            .fold(RatPoly::zero(), |acc, t| &acc + t);
        let q1 = [a2 * &b1dd, (a2 * &b0d).scale(&two), a1 * &b1d, a1 * b0, a0 * b1]
            .iter()
            .fold(RatPoly::zero(), |acc, t| &acc + t);
        let q0 = [a2 * &b0dd, a1 * &b0d, a0 * b0]
            .iter()
            .fold(RatPoly::zero(), |acc, t| &acc + t);
        Ok(DiffOp::new(q2, q1, q0))
    }
}

/// `A_n = 2(x-1) D + n`.
pub fn make_a(n: u64) -> DiffOp {
    DiffOp::new(
        RatPoly::zero(),
        RatPoly::from_ints(&[-2, 2]),
        RatPoly::constant(RatNum::from_integer(n.into())),
    )
}

/// `B_n = 2x(x-1) D + ((n+1)x - 1)`.
pub fn make_b(n: u64) -> DiffOp {
    DiffOp::new(
        RatPoly::zero(),
        RatPoly::from_ints(&[0, -2, 2]),
        RatPoly::new(vec![int(-1), RatNum::from_integer((n + 1).into())]),
    )
}

pub fn make_d(family: Family) -> DiffOp {
    family.imp().operator()
}

pub fn compose_ab(n: u64) -> DiffOp {
    make_a(n)
        .compose(&make_b(n))
        .expect("first-order operators compose to order two")
}

/// Coefficients `(c+, c0, c-)` of `D[x^m] = c+ x^(m+1) + c0 x^m + c- x^(m-1)`.
/// Only defined for the two built-in operators.
pub fn monomial_action(op: &DiffOp, m: usize) -> Result<(RatNum, RatNum, RatNum)> {
    if !Family::ALL.iter().any(|&f| make_d(f) == *op) {
        return Err(Error::InvalidArgument(
            "monomial_action is defined only for D_Xi and D_Lambda".into(),
        ));
    }
    let img = op.apply(&RatPoly::monomial(RatNum::one(), m));
    let below = if m == 0 { RatNum::zero() } else { img.coeff(m - 1) };
    Ok((img.coeff(m + 1), img.coeff(m), below))
}

/// Checks that `w' / w = (q1 - q2') / q2` for the weight `w = x^alpha (1-x)^beta`, i.e. that
/// `w L` is in divergence form `(w q2 f')' + w q0 f`. Cross-multiplied:
/// `x(1-x)(q1 - q2') = (alpha(1-x) - beta x) q2`.
pub fn divergence_check_op(op: &DiffOp, weight: &WeightSpec) -> bool {
    let x1mx = RatPoly::from_ints(&[0, 1, -1]);
    let lhs = &x1mx * &(&op.q1 - &op.q2.differentiate());
    let log_deriv = RatPoly::new(vec![
        weight.alpha.clone(),
        -(&weight.alpha + int(weight.beta as i64)),
    ]);
    lhs == &log_deriv * &op.q2
}

pub fn divergence_check(family: Family) -> bool {
    divergence_check_op(&make_d(family), &family.imp().weight())
}

/// Exact `∫_0^1 f g w dx` for the family's weight.
pub fn inner_product(f: &RatPoly, g: &RatPoly, family: Family) -> RatNum {
    weighted_integral(&(f * g), &family.imp().weight())
}

pub fn weighted_integral(h: &RatPoly, weight: &WeightSpec) -> RatNum {
    h.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| c * weight.moment(k))
        .fold(RatNum::zero(), |a, b| a + b)
}

/// `<D f, g> - <f, D g>`; identically zero on polynomials.
pub fn selfadjoint_defect(f: &RatPoly, g: &RatPoly, family: Family) -> RatNum {
    let d = make_d(family);
    inner_product(&d.apply(f), g, family) - inner_product(f, &d.apply(g), family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::rat;

    fn poly(cs: &[(i64, i64)]) -> RatPoly {
        RatPoly::new(cs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn a_and_b_on_remark_fixture() {
        let f = poly(&[(-1, 4), (1, 1)]);
        assert_eq!(make_a(1).apply(&f), poly(&[(-9, 4), (3, 1)]));
        assert_eq!(make_b(1).apply(&f), poly(&[(1, 4), (-7, 2), (4, 1)]));
        assert!(make_a(0).apply(&RatPoly::constant(rat(3, 5))).is_zero());
        assert_eq!(make_b(1).apply(&RatPoly::one()), RatPoly::from_ints(&[-1, 2]));
        let g = poly(&[(2, 3), (-1, 1), (5, 1)]);
        assert!(make_b(0).apply(&g).evaluate(&int(1)).is_zero());
    }

    #[test]
    fn built_in_operators() {
        let xi = make_d(Family::Xi);
        assert_eq!(xi.q2, RatPoly::from_ints(&[0, 4, -8, 4]));
        assert_eq!(xi.q1, RatPoly::from_ints(&[6, -20, 14]));
        assert_eq!(xi.q0, RatPoly::from_ints(&[-5, 6]));
        let la = make_d(Family::Lambda);
        assert_eq!(la.q1, RatPoly::from_ints(&[6, -24, 18]));
        assert_eq!(la.q0, RatPoly::from_ints(&[-8, 12]));
        assert_eq!(xi.q2, la.q2);
        assert_eq!(xi.order(), 2);
        assert_eq!(make_a(3).order(), 1);
    }

    #[test]
    fn apply_fixtures() {
        let xi = make_d(Family::Xi);
        let la = make_d(Family::Lambda);
        assert_eq!(xi.apply(&RatPoly::constant(rat(1, 4))), poly(&[(-5, 4), (6, 4)]));
        assert_eq!(la.apply(&RatPoly::constant(rat(1, 7))), poly(&[(-8, 7), (12, 7)]));
        assert_eq!(xi.apply(&RatPoly::x()), RatPoly::from_ints(&[6, -25, 20]));
    }

    #[test]
    fn monomial_action_fixtures() {
        let xi = make_d(Family::Xi);
        let la = make_d(Family::Lambda);
        assert_eq!(monomial_action(&xi, 0).unwrap(), (int(6), int(-5), int(0)));
        assert_eq!(monomial_action(&la, 1).unwrap(), (int(30), int(-32), int(6)));
        assert_eq!(monomial_action(&xi, 2).unwrap(), (int(42), int(-61), int(20)));
        assert!(monomial_action(&make_a(1), 2).is_err());
    }

    #[test]
    fn factorization() {
        assert_eq!(compose_ab(1), make_d(Family::Xi));
        assert_eq!(compose_ab(2), make_d(Family::Lambda));
        assert_eq!(compose_ab(0).q0, RatPoly::from_ints(&[-2, 2]));
        assert!(make_d(Family::Xi).compose(&make_a(1)).is_err());
    }

    #[test]
    fn weights_and_inner_products() {
        assert!(divergence_check(Family::Xi));
        assert!(divergence_check(Family::Lambda));
        let mut bad = make_d(Family::Xi);
        bad.q1 = &bad.q1 + &RatPoly::one();
        assert!(!divergence_check_op(&bad, &Family::Xi.imp().weight()));

        let one = RatPoly::one();
        assert_eq!(inner_product(&one, &one, Family::Xi), rat(2, 3));
        assert_eq!(inner_product(&one, &one, Family::Lambda), rat(4, 15));
        assert_eq!(inner_product(&RatPoly::x(), &one, Family::Xi), rat(2, 5));
        let w = WeightSpec::new(Family::Lambda, rat(1, 2), 3);
        // ∫ x^{1/2}(1-x)^3 = B(3/2, 4) = 32/315
        assert_eq!(w.moment(0), rat(32, 315));
    }

    #[test]
    fn defect_fixture() {
        let x2 = RatPoly::monomial(int(1), 2);
        assert!(selfadjoint_defect(&RatPoly::x(), &x2, Family::Xi).is_zero());
        assert!(selfadjoint_defect(&x2, &x2, Family::Lambda).is_zero());
    }
}
