use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use super::sturm::SturmChain;
use super::{contains_root_of, sign_right_of, RootInterval, RootSet};
use crate::error::{Error, Result};
use crate::ratpoly::{IntPoly, RatNum, RatPoly, RationalPoint};

/// `2^-40`.
pub fn default_width() -> RatNum {
    RatNum::new(BigInt::one(), BigInt::one() << 40u32)
}

/// Square-free integer part with its Sturm chain, and Yun factors (index `i` has
/// multiplicity `i + 1`). Constant input has no factors.
struct Decomposition {
    squarefree: IntPoly,
    chain: Option<SturmChain>,
    factors: Vec<IntPoly>,
}

fn decompose(f: &RatPoly) -> Result<Decomposition> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (_, ip) = f.to_primitive_int();
    if ip.degree() == Some(0) {
        return Ok(Decomposition { squarefree: ip, chain: None, factors: Vec::new() });
    }
    // The chain of (f, f') ends in gcd(f, f'); when that is constant it is already the
    // Sturm chain we need.
    let chain = SturmChain::new(&ip);
    if chain.last().degree() == Some(0) {
        return Ok(Decomposition { squarefree: ip.clone(), chain: Some(chain), factors: vec![ip] });
    }
    let factors: Vec<IntPoly> = f
        .squarefree_decomposition()?
        .iter()
        .map(|p| p.to_primitive_int().1)
        .collect();
    let squarefree = f.squarefree_part()?.to_primitive_int().1;
    let chain = SturmChain::new(&squarefree);
    Ok(Decomposition { squarefree, chain: Some(chain), factors })
}

/// Power of two strictly exceeding every root's absolute value (Cauchy bound).
fn root_bound_log2(p: &IntPoly) -> u64 {
    let lead_bits = p.leading().unwrap().bits();
    let max_bits = p.coeffs().iter().map(BigInt::bits).max().unwrap_or(0);
    (max_bits + 2).saturating_sub(lead_bits).max(1)
}

fn dyadic(num: BigInt, log2_den: u64) -> RatNum {
    RatNum::new(num, BigInt::one() << log2_den)
}

/// One bisection step on an interval `(lo, hi)` known to hold exactly one root of the
/// square-free `p`. Returns the new bounds; `lo == hi` when the midpoint is the root.
pub(crate) fn bisect_simple(p: &IntPoly, lo: &RatNum, hi: &RatNum) -> (RatNum, RatNum) {
    let mid = (lo + hi) / RatNum::from_integer(2.into());
    let s_mid = p.sign_at(&RationalPoint::from_rational(&mid));
    if s_mid == Sign::NoSign {
        return (mid.clone(), mid);
    }
    if s_mid == sign_right_of(p, lo) {
        (mid, hi.clone())
    } else {
        (lo.clone(), mid)
    }
}

fn isolate_squarefree(sq: &IntPoly, chain: &SturmChain) -> Vec<RootInterval> {
    let total = chain.count_real();
    if total == 0 {
        return Vec::new();
    }
    let k = root_bound_log2(sq);
    let bound = BigInt::one() << k;
    let v_lo = chain.variations_at(&RationalPoint::new(-bound.clone(), BigInt::one()));
    let v_hi = chain.variations_at(&RationalPoint::new(bound.clone(), BigInt::one()));

    // Work items: interval (lo, hi] over the common denominator 2^den, variations at ends.
    // A root at hi that was already reported is excluded from the count.
    struct Item {
        lo: BigInt,
        hi: BigInt,
        den: u64,
        v_lo: usize,
        v_hi: usize,
        hi_is_root: bool,
    }
    let mut out = Vec::with_capacity(total);
    let mut stack = vec![Item { lo: -bound.clone(), hi: bound, den: 0, v_lo, v_hi, hi_is_root: false }];
    while let Some(it) = stack.pop() {
        let count = it.v_lo - it.v_hi - usize::from(it.hi_is_root);
        if count == 0 {
            continue;
        }
        if count == 1 {
            out.push(RootInterval { lo: dyadic(it.lo, it.den), hi: dyadic(it.hi, it.den), mult: 1 });
            continue;
        }
        let (lo2, hi2, den) = (it.lo << 1u32, it.hi << 1u32, it.den + 1);
        let mid: BigInt = (&lo2 + &hi2) >> 1u32;
        let mid_pt = RationalPoint::new(mid.clone(), BigInt::one() << den);
        let v_mid = chain.variations_at(&mid_pt);
        let mid_is_root = sq.sign_at(&mid_pt) == Sign::NoSign;
        if mid_is_root {
            let m = dyadic(mid.clone(), den);
            out.push(RootInterval { lo: m.clone(), hi: m, mult: 1 });
        }
        stack.push(Item { lo: mid.clone(), hi: hi2, den, v_lo: v_mid, v_hi: it.v_hi, hi_is_root: it.hi_is_root });
        stack.push(Item { lo: lo2, hi: mid, den, v_lo: it.v_lo, v_hi: v_mid, hi_is_root: mid_is_root });
    }
    out.sort_by(|a, b| a.position(b));
    out
}

/// Isolating intervals for every distinct real root of `f`, each refined to width at most
/// `width`, with multiplicities from the square-free decomposition.
pub fn isolate(f: &RatPoly, width: &RatNum) -> Result<RootSet> {
    if !width.is_positive() {
        return Err(Error::InvalidArgument("width must be positive".into()));
    }
    let dec = decompose(f)?;
    let Some(chain) = &dec.chain else {
        return Ok(RootSet { intervals: Vec::new(), source: Some(dec.squarefree) });
    };
    let mut intervals = isolate_squarefree(&dec.squarefree, chain);
    if dec.factors.len() > 1 {
        for iv in &mut intervals {
            iv.mult = dec
                .factors
                .iter()
                .position(|p| contains_root_of(p, iv))
                .map_or(1, |i| i + 1);
        }
    }
    let mut set = RootSet { intervals, source: Some(dec.squarefree) };
    set.refine_to(width)?;
    Ok(set)
}

pub fn isolate_default(f: &RatPoly) -> Result<RootSet> {
    isolate(f, &default_width())
}

/// Real roots counted with multiplicity.
pub fn real_root_count(f: &RatPoly) -> Result<usize> {
    let dec = decompose(f)?;
    if dec.factors.len() == 1 {
        return Ok(dec.chain.map_or(0, |c| c.count_real()));
    }
    Ok(dec
        .factors
        .iter()
        .enumerate()
        .filter(|(_, p)| p.degree() != Some(0))
        .map(|(i, p)| (i + 1) * SturmChain::new(p).count_real())
        .sum())
}

/// All roots real (counted with multiplicity).
pub fn is_hyperbolic(f: &RatPoly) -> Result<bool> {
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    Ok(real_root_count(f)? == deg)
}

/// Every real root of `f` lies in the open interval `(0, b)`.
pub fn confined(f: &RatPoly, b: &RatNum) -> Result<bool> {
    let dec = decompose(f)?;
    let sq = &dec.squarefree;
    let Some(chain) = &dec.chain else {
        return Ok(true);
    };
    let total = chain.count_real();
    if total == 0 {
        return Ok(true);
    }
    if !b.is_positive() {
        return Ok(false);
    }
    let zero = RationalPoint::new(BigInt::zero(), BigInt::one());
    if sq.sign_at(&zero) == Sign::NoSign {
        return Ok(false);
    }
    let bp = RationalPoint::from_rational(b);
    let at_b = usize::from(sq.sign_at(&bp) == Sign::NoSign);
    let inside = chain.count_in(&zero, &bp) - at_b;
    Ok(inside == total)
}
