//! Exact real-root isolation, hyperbolicity and confinement verdicts, interlacing and
//! proper position. Floating point never decides anything here.

mod interlace;
mod isolate;
pub mod sturm;

use std::cmp::Ordering;

use num_bigint::Sign;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratpoly::{rat_to_f64, IntPoly, RatNum, RationalPoint};

pub use interlace::{
    consecutive_interlacing, interlace, proper_position, threshold_check, threshold_details,
    weakly_interlacing, InterlaceVerdict, ThresholdReport, VerdictKind, Witness, WitnessRoot,
};
pub use isolate::{confined, default_width, is_hyperbolic, isolate, isolate_default, real_root_count};
pub use sturm::SturmChain;

/// Refinement rounds `interlace` spends trying to separate intervals.
pub const MAX_REFINE_ROUNDS: usize = 200;

/// One distinct real root: either exactly `lo == hi`, or strictly inside `(lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootInterval {
    #[serde(with = "crate::ratpoly::serde_rat")]
    pub lo: RatNum,
    #[serde(with = "crate::ratpoly::serde_rat")]
    pub hi: RatNum,
    pub mult: usize,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> RatNum {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> RatNum {
        (&self.lo + &self.hi) / RatNum::from_integer(2.into())
    }

    pub fn midpoint_f64(&self) -> f64 {
        rat_to_f64(&self.midpoint())
    }

    /// Whether the two root locations cannot be told apart yet.
    pub fn overlaps(&self, other: &RootInterval) -> bool {
        if self.is_exact() && other.is_exact() {
            return self.lo == other.lo;
        }
        self.lo < other.hi && other.lo < self.hi
    }

    /// Order of two disjoint intervals.
    fn position(&self, other: &RootInterval) -> Ordering {
        self.lo.cmp(&other.lo).then(self.hi.cmp(&other.hi))
    }
}

/// Sorted, pairwise disjoint isolating intervals, one per distinct real root.
///
/// Keeps the square-free part of the polynomial it came from so intervals can be refined
/// later; a deserialized set has no source and cannot be refined.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootSet {
    intervals: Vec<RootInterval>,
    #[serde(skip)]
    source: Option<IntPoly>,
}

impl PartialEq for RootSet {
    fn eq(&self, other: &Self) -> bool {
        self.intervals == other.intervals
    }
}

impl RootSet {
    pub fn from_intervals(intervals: Vec<RootInterval>) -> Self {
        RootSet { intervals, source: None }
    }

    pub fn intervals(&self) -> &[RootInterval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn source(&self) -> Option<&IntPoly> {
        self.source.as_ref()
    }

    /// Number of real roots counted with multiplicity.
    pub fn total_multiplicity(&self) -> usize {
        self.intervals.iter().map(|r| r.mult).sum()
    }

    pub fn midpoints(&self) -> Vec<f64> {
        self.intervals.iter().map(RootInterval::midpoint_f64).collect()
    }

    pub fn max_width(&self) -> RatNum {
        self.intervals
            .iter()
            .map(RootInterval::width)
            .max()
            .unwrap_or_else(RatNum::zero)
    }

    /// Halves interval `i` (or pins it to an exact root).
    pub fn bisect(&mut self, i: usize) -> Result<()> {
        let src = self.source.as_ref().ok_or(Error::MissingSource)?;
        let iv = &mut self.intervals[i];
        if iv.is_exact() {
            return Ok(());
        }
        let (lo, hi) = isolate::bisect_simple(src, &iv.lo, &iv.hi);
        iv.lo = lo;
        iv.hi = hi;
        Ok(())
    }

    /// Every root lies in the open interval `(0, b)`, refining intervals that straddle an
    /// endpoint. `None` when the refinement budget runs out.
    pub fn all_within(&mut self, b: &RatNum) -> Result<Option<bool>> {
        let zero = RatNum::zero();
        for i in 0..self.intervals.len() {
            let mut rounds = 0;
            loop {
                let iv = &self.intervals[i];
                if iv.is_exact() {
                    if iv.lo <= zero || iv.lo >= *b {
                        return Ok(Some(false));
                    }
                    break;
                }
                if iv.hi <= zero || iv.lo >= *b {
                    return Ok(Some(false));
                }
                if iv.lo >= zero && iv.hi <= *b {
                    break;
                }
                if rounds == MAX_REFINE_ROUNDS {
                    return Ok(None);
                }
                self.bisect(i)?;
                rounds += 1;
            }
        }
        Ok(Some(true))
    }

    pub fn refine_to(&mut self, width: &RatNum) -> Result<()> {
        for i in 0..self.intervals.len() {
            while self.intervals[i].width() > *width {
                self.bisect(i)?;
            }
        }
        Ok(())
    }
}

/// Sign of `p` just to the right of `x` for square-free `p`.
pub(crate) fn sign_right_of(p: &IntPoly, x: &RatNum) -> Sign {
    let pt = RationalPoint::from_rational(x);
    match p.sign_at(&pt) {
        Sign::NoSign => p.derivative().sign_at(&pt),
        s => s,
    }
}

/// Sign of `p` just to the left of `x` for square-free `p`.
pub(crate) fn sign_left_of(p: &IntPoly, x: &RatNum) -> Sign {
    let pt = RationalPoint::from_rational(x);
    match p.sign_at(&pt) {
        Sign::NoSign => -p.derivative().sign_at(&pt),
        s => s,
    }
}

/// Whether the square-free `p` has a root at the location described by `iv`, given
/// that `iv` contains at most one root of `p`.
pub(crate) fn contains_root_of(p: &IntPoly, iv: &RootInterval) -> bool {
    if p.degree().unwrap_or(0) == 0 {
        return false;
    }
    if iv.is_exact() {
        return p.sign_at(&RationalPoint::from_rational(&iv.lo)) == Sign::NoSign;
    }
    sign_right_of(p, &iv.lo) != sign_left_of(p, &iv.hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{int, rat, RatPoly};

    #[test]
    fn all_within_refines_straddling_intervals() {
        // roots 0.999 and 1.001 start in one coarse interval around 1
        let f = RatPoly::new(vec![rat(-999, 1000), int(1)]) * RatPoly::new(vec![rat(-1001, 1000), int(1)]);
        let mut set = isolate(&f, &int(4)).unwrap();
        assert_eq!(set.all_within(&int(1)).unwrap(), Some(false));
        let g = RatPoly::new(vec![rat(-999, 1000), int(1)]);
        let mut set = isolate(&g, &int(4)).unwrap();
        assert_eq!(set.all_within(&int(1)).unwrap(), Some(true));
        let mut set = isolate(&RatPoly::x(), &int(4)).unwrap();
        assert_eq!(set.all_within(&int(1)).unwrap(), Some(false));
    }
}
