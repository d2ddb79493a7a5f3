use num_bigint::Sign;

use crate::ratpoly::{intpoly::signed_remainder_chain, IntPoly, RationalPoint};

/// Sturm sequence of a square-free integer polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    polys: Vec<IntPoly>,
}

fn variations(signs: impl Iterator<Item = Sign>) -> usize {
    let mut last = Sign::NoSign;
    let mut count = 0;
    for s in signs {
        if s == Sign::NoSign {
            continue;
        }
        if last != Sign::NoSign && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

impl SturmChain {
    pub fn new(f: &IntPoly) -> Self {
        SturmChain {
            polys: signed_remainder_chain(f, &f.derivative()),
        }
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn source(&self) -> &IntPoly {
        &self.polys[0]
    }

    /// Last entry: a constant exactly when the source is square-free.
    pub fn last(&self) -> &IntPoly {
        self.polys.last().unwrap()
    }

    pub fn variations_at(&self, pt: &RationalPoint) -> usize {
        variations(self.polys.iter().map(|p| p.sign_at(pt)))
    }

    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        variations(self.polys.iter().map(|p| p.sign_at_infinity(positive)))
    }

    /// Number of distinct real roots.
    pub fn count_real(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }

    /// Number of distinct roots in `(a, b]`, `a < b`.
    pub fn count_in(&self, a: &RationalPoint, b: &RationalPoint) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }
}
