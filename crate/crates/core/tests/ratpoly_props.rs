use proptest::prelude::*;
use xilam_core::ratpoly::{format_rat, parse_rat, rat, RatNum, RatPoly};

fn coeff() -> impl Strategy<Value = RatNum> {
    (-50i64..=50, 1i64..=20).prop_map(|(n, d)| rat(n, d))
}

fn poly(max_deg: usize) -> impl Strategy<Value = RatPoly> {
    prop::collection::vec(coeff(), 1..=max_deg + 1).prop_map(RatPoly::new)
}

fn nonzero_poly(max_deg: usize) -> impl Strategy<Value = RatPoly> {
    poly(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn leibniz_rule(f in poly(20), g in poly(20)) {
        let lhs = (&f * &g).differentiate();
        let rhs = &(&f.differentiate() * &g) + &(&f * &g.differentiate());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn compose_square_is_substitution(f in poly(12), t in coeff()) {
        prop_assert_eq!(f.compose_square().evaluate(&t), f.evaluate(&(&t * &t)));
    }

    #[test]
    fn division_is_exact(f in poly(10), g in nonzero_poly(6)) {
        let (q, r) = (&f * &g).div_rem(&g);
        prop_assert_eq!(q, f.clone());
        prop_assert!(r.is_zero());
        let (q, r) = f.div_rem(&g);
        prop_assert_eq!(&(&q * &g) + &r, f);
        prop_assert!(r.is_zero() || r.degree() < g.degree());
    }

    #[test]
    fn gcd_divides_both(a in nonzero_poly(5), b in nonzero_poly(5), c in nonzero_poly(4)) {
        let f = &a * &c;
        let g = &b * &c;
        let h = f.gcd(&g);
        prop_assert!(f.div_rem(&h).1.is_zero());
        prop_assert!(g.div_rem(&h).1.is_zero());
        prop_assert!(h.degree() >= c.degree());
    }

    #[test]
    fn squarefree_part_has_simple_roots(a in nonzero_poly(4), b in nonzero_poly(3)) {
        let f = &(&a * &a) * &b;
        let s = f.squarefree_part().unwrap();
        prop_assert!(f.div_rem(&s).1.is_zero());
        prop_assert_eq!(s.gcd(&s.differentiate()).degree(), Some(0));
        // the decomposition multiplies back to f up to a constant
        let parts = f.squarefree_decomposition().unwrap();
        let prod = parts
            .iter()
            .enumerate()
            .fold(RatPoly::one(), |acc, (i, p)| (0..=i).fold(acc, |acc, _| &acc * p));
        prop_assert_eq!(prod.degree(), f.degree());
        prop_assert!(f.div_rem(&prod).1.is_zero());
    }

    #[test]
    fn arithmetic_is_exact(f in poly(8), g in poly(8), x in coeff()) {
        prop_assert_eq!((&f * &g).evaluate(&x), f.evaluate(&x) * g.evaluate(&x));
        prop_assert_eq!((&f - &g).evaluate(&x), f.evaluate(&x) - g.evaluate(&x));
        prop_assert_eq!(&(&f + &g) - &g, f);
    }

    #[test]
    fn gaussian_evaluation_matches_expansion(f in poly(8), a in coeff(), b in coeff()) {
        // (a + ib)^k expanded with exact real arithmetic
        let (mut pr, mut pi) = (RatNum::from_integer(1.into()), RatNum::from_integer(0.into()));
        let (mut re, mut im) = (RatNum::from_integer(0.into()), RatNum::from_integer(0.into()));
        for c in f.coeffs() {
            re += c * &pr;
            im += c * &pi;
            let nr = &pr * &a - &pi * &b;
            pi = &pr * &b + &pi * &a;
            pr = nr;
        }
        prop_assert_eq!(f.evaluate_gaussian(&a, &b), (re, im));
    }

    #[test]
    fn rational_text_round_trip(x in coeff()) {
        prop_assert_eq!(parse_rat(&format_rat(&x)).unwrap(), x);
    }

    #[test]
    fn serde_round_trip(f in poly(6)) {
        let text = serde_json::to_string(&f).unwrap();
        let back: RatPoly = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, f);
    }
}
