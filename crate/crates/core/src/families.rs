//! Auxiliary families `T_{n+1} = scale_n D[T_n]` and the general sequences
//! `P_1 = cx - d`, `P_{n+1} = s_n D[P_n]`.

use std::fmt;
use std::str::FromStr;

use log::warn;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::diffop::make_d;
use crate::error::{Error, Result};
use crate::family::{ClosedFormConstants, Family};
use crate::ratpoly::{format_rat, parse_rat, RatNum, RatPoly};

/// Above this index coefficient growth makes exact sequences slow; a warning is logged.
pub const DESK_SCALE_N_MAX: usize = 100;

pub fn scaling_a(n: u64) -> Result<RatNum> {
    Family::Xi.imp().scaling(n)
}

pub fn scaling_b(n: u64) -> Result<RatNum> {
    Family::Lambda.imp().scaling(n)
}

/// Multipliers applied between consecutive members of a P-sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scaling {
    /// The family's own `a_n` or `b_n`.
    PaperDefault,
    AllOnes,
    /// Explicit multipliers `s_1, s_2, ...`, repeated cyclically when shorter than needed.
    Custom(Vec<RatNum>),
}

impl Scaling {
    pub fn validate(&self) -> Result<()> {
        if let Scaling::Custom(vals) = self {
            if vals.is_empty() {
                return Err(Error::InvalidArgument("custom scaling needs at least one value".into()));
            }
            if vals.iter().any(Zero::is_zero) {
                return Err(Error::InvalidArgument("scaling values must be nonzero".into()));
            }
        }
        Ok(())
    }

    pub fn value(&self, family: Family, n: u64) -> Result<RatNum> {
        match self {
            Scaling::PaperDefault => family.imp().scaling(n),
            Scaling::AllOnes => Ok(RatNum::one()),
            Scaling::Custom(vals) => {
                self.validate()?;
                Ok(vals[(n as usize - 1) % vals.len()].clone())
            }
        }
    }
}

impl fmt::Display for Scaling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scaling::PaperDefault => f.write_str("paper"),
            Scaling::AllOnes => f.write_str("ones"),
            Scaling::Custom(vals) => {
                let parts: Vec<String> = vals.iter().map(format_rat).collect();
                write!(f, "custom:{}", parts.join(","))
            }
        }
    }
}

impl FromStr for Scaling {
    type Err = Error;

    /// `paper`, `ones`, or `custom:v1,v2,...` with rational values.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let scaling = match t.to_ascii_lowercase().as_str() {
            "paper" | "default" => Scaling::PaperDefault,
            "ones" | "all-ones" => Scaling::AllOnes,
            _ => {
                let body = t
                    .strip_prefix("custom:")
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown scaling {s:?}")))?;
                let vals = body.split(',').map(parse_rat).collect::<Result<Vec<_>>>()?;
                Scaling::Custom(vals)
            }
        };
        scaling.validate()?;
        Ok(scaling)
    }
}

impl Serialize for Scaling {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scaling {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    #[serde(with = "crate::ratpoly::serde_rat")]
    pub c: RatNum,
    #[serde(with = "crate::ratpoly::serde_rat")]
    pub d: RatNum,
    pub scaling: Scaling,
}

impl FamilySpec {
    pub fn new(family: Family, c: RatNum, d: RatNum, scaling: Scaling) -> Self {
        FamilySpec { family, c, d, scaling }
    }

    pub fn initial(&self) -> RatPoly {
        RatPoly::linear(&self.c, &self.d)
    }
}

/// Members `1..=n_max` of a sequence together with the multipliers that produced them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceCache {
    pub family: Family,
    entries: Vec<RatPoly>,
    #[serde(skip)]
    scales: Vec<RatNum>,
}

impl SequenceCache {
    fn build(family: Family, first: RatPoly, n_max: usize, scale: impl Fn(u64) -> Result<RatNum>) -> Result<Self> {
        if n_max == 0 {
            return Err(Error::InvalidArgument("n_max must be at least 1".into()));
        }
        if n_max > DESK_SCALE_N_MAX {
            warn!("building {family} sequence to n = {n_max}; exact coefficients grow quickly past {DESK_SCALE_N_MAX}");
        }
        let op = make_d(family);
        let mut entries = Vec::with_capacity(n_max);
        let mut scales = Vec::with_capacity(n_max - 1);
        entries.push(first);
        for n in 1..n_max as u64 {
            let s = scale(n)?;
            if s.is_zero() {
                return Err(Error::InvalidArgument(format!("scaling value {n} is zero")));
            }
            let next = op.apply(entries.last().unwrap()).scale(&s);
            scales.push(s);
            entries.push(next);
        }
        Ok(SequenceCache { family, entries, scales })
    }

    /// Member `n` (1-based).
    pub fn get(&self, n: usize) -> Option<&RatPoly> {
        n.checked_sub(1).and_then(|i| self.entries.get(i))
    }

    pub fn entries(&self) -> &[RatPoly] {
        &self.entries
    }

    /// Multiplier used to produce member `n+1` from member `n`.
    pub fn scale(&self, n: usize) -> Option<&RatNum> {
        n.checked_sub(1).and_then(|i| self.scales.get(i))
    }

    pub fn n_max(&self) -> usize {
        self.entries.len()
    }
}

pub fn aux_family(family: Family, n_max: usize) -> Result<SequenceCache> {
    let imp = family.imp();
    SequenceCache::build(family, RatPoly::constant(imp.aux_seed()), n_max, |n| imp.scaling(n))
}

pub fn iterate_p(spec: &FamilySpec, n_max: usize) -> Result<SequenceCache> {
    if spec.c.is_zero() {
        return Err(Error::Precondition("c must be nonzero".into()));
    }
    spec.scaling.validate()?;
    SequenceCache::build(spec.family, spec.initial(), n_max, |n| {
        spec.scaling.value(spec.family, n)
    })
}

/// Right-hand side of the closed form for `P_n` in terms of the auxiliary family.
/// `aux` must hold members up to `n + 1`.
pub fn closed_form_rhs(
    spec: &FamilySpec,
    n: usize,
    aux: &SequenceCache,
    constants: &ClosedFormConstants,
) -> Result<RatPoly> {
    let imp = spec.family.imp();
    let (Some(t_n), Some(t_next)) = (aux.get(n), aux.get(n + 1)) else {
        return Err(Error::InvalidArgument(format!("auxiliary cache too short for n = {n}")));
    };
    let mut k = constants.outer.clone();
    for j in 1..n as u64 {
        k *= spec.scaling.value(spec.family, j)? / imp.scaling(j)?;
    }
    let alpha = &constants.lead * &spec.c;
    let beta = &spec.d - &constants.shift * &spec.c;
    Ok((&t_next.scale(&alpha) + &t_n.scale(&beta)).scale(&k))
}

/// Exact comparison of `P_n` from the recurrence with the closed form, for one `n`.
pub fn closed_form_check(spec: &FamilySpec, n: usize) -> Result<bool> {
    Ok(closed_form_check_range(spec, n)?.last().copied().unwrap_or(true))
}

/// Same as [`closed_form_check`] for every `1 <= n <= n_max`, sharing the caches.
pub fn closed_form_check_range(spec: &FamilySpec, n_max: usize) -> Result<Vec<bool>> {
    closed_form_check_with(spec, n_max, |n| spec.family.imp().closed_form_constants(n))
}

/// Closed-form comparison with caller-supplied constants (negative controls).
pub fn closed_form_check_with(
    spec: &FamilySpec,
    n_max: usize,
    constants: impl Fn(u64) -> ClosedFormConstants,
) -> Result<Vec<bool>> {
    let p = iterate_p(spec, n_max)?;
    let aux = aux_family(spec.family, n_max + 1)?;
    (1..=n_max)
        .map(|n| {
            let rhs = closed_form_rhs(spec, n, &aux, &constants(n as u64))?;
            Ok(p.get(n) == Some(&rhs))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{int, rat};

    fn spec(family: Family, c: RatNum, d: RatNum, scaling: Scaling) -> FamilySpec {
        FamilySpec::new(family, c, d, scaling)
    }

    #[test]
    fn aux_second_members() {
        let xi = aux_family(Family::Xi, 3).unwrap();
        assert_eq!(xi.get(1).unwrap(), &RatPoly::constant(rat(1, 4)));
        assert_eq!(xi.get(2).unwrap(), &RatPoly::new(vec![rat(5, 96), rat(-6, 96)]));
        let la = aux_family(Family::Lambda, 2).unwrap();
        assert_eq!(la.get(2).unwrap(), &RatPoly::new(vec![rat(2, 93), rat(-3, 93)]));
        let t3 = make_d(Family::Xi).apply(xi.get(2).unwrap()).scale(&scaling_a(2).unwrap());
        assert_eq!(xi.get(3).unwrap(), &t3);
        assert!(xi.get(0).is_none() && xi.get(4).is_none());
    }

    #[test]
    fn p_sequence_fixtures() {
        let p = iterate_p(&spec(Family::Xi, int(1), int(0), Scaling::AllOnes), 2).unwrap();
        assert_eq!(p.get(2).unwrap(), &RatPoly::from_ints(&[6, -25, 20]));
        let p = iterate_p(&spec(Family::Xi, int(1), rat(1, 2), Scaling::AllOnes), 2).unwrap();
        assert_eq!(p.get(2).unwrap(), &RatPoly::new(vec![rat(17, 2), int(-28), int(20)]));
        let p = iterate_p(&spec(Family::Lambda, int(1), rat(1, 2), Scaling::AllOnes), 2).unwrap();
        assert_eq!(p.get(2).unwrap(), &RatPoly::from_ints(&[10, -38, 30]));
    }

    #[test]
    fn closed_form_and_negative_control() {
        let s = spec(Family::Xi, int(1), rat(1, 2), Scaling::AllOnes);
        assert!(closed_form_check_range(&s, 10).unwrap().iter().all(|&b| b));
        let s = spec(Family::Lambda, int(2), int(1), Scaling::PaperDefault);
        assert!(closed_form_check_range(&s, 10).unwrap().iter().all(|&b| b));

        let s = spec(Family::Xi, int(1), rat(1, 2), Scaling::AllOnes);
        let wrong = closed_form_check_with(&s, 6, |n| ClosedFormConstants {
            shift: rat(2, 3),
            ..Family::Xi.imp().closed_form_constants(n)
        })
        .unwrap();
        assert!(wrong.iter().all(|&b| !b));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(scaling_a(0).is_err());
        assert!(iterate_p(&spec(Family::Xi, int(0), int(1), Scaling::AllOnes), 3).is_err());
        let zero = Scaling::Custom(vec![int(1), int(0)]);
        assert!(iterate_p(&spec(Family::Xi, int(1), int(1), zero), 3).is_err());
        assert!(aux_family(Family::Xi, 0).is_err());
    }

    #[test]
    fn scaling_text_round_trip() {
        for s in ["paper", "ones", "custom:1/1,-2/3"] {
            let parsed: Scaling = s.parse().unwrap();
            assert_eq!(parsed.to_string(), s);
        }
        assert!("custom:1,0".parse::<Scaling>().is_err());
        assert!("bogus".parse::<Scaling>().is_err());
    }
}
