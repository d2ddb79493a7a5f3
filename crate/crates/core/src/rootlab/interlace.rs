//! Interlacing of two root sets and the proper-position relation.
//!
//! Truth table for swapped arguments: when `interlace(f, g)` is an A-pattern
//! (`f1 < g1 < ... < fm < gm`), `interlace(g, f)` starts with its second argument while
//! the counts are equal, which is neither pattern, so it is `Fails`. When `interlace(f, g)`
//! is a B-pattern, `interlace(g, f)` has the first argument carrying the extra root and is
//! also `Fails`. Both witnesses are the two leftmost roots.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::isolate::{is_hyperbolic, isolate};
use super::{contains_root_of, RootInterval, RootSet, SturmChain, MAX_REFINE_ROUNDS};
use crate::diffop::make_d;
use crate::error::{Error, Result};
use crate::families::{iterate_p, FamilySpec};
use crate::family::{in_window, Family};
use crate::ratpoly::{intpoly, RatNum, RatPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    /// Equal counts, `f1 < g1 < f2 < ... < fm < gm`.
    APattern,
    /// `g` has one extra root, `g1 < f1 < g2 < ... < fm < g(m+1)`.
    BPattern,
    Fails,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    F,
    G,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessRoot {
    pub set: Side,
    pub index: usize,
    #[serde(flatten)]
    pub location: RootInterval,
}

/// Two roots, adjacent in the merged order, that break the pattern. When only one root
/// exists it appears on both sides.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub left: WitnessRoot,
    pub right: WitnessRoot,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InterlaceVerdict {
    pub kind: VerdictKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl InterlaceVerdict {
    fn pass(kind: VerdictKind) -> Self {
        InterlaceVerdict { kind, witness: None }
    }

    fn fails(witness: Witness) -> Self {
        InterlaceVerdict { kind: VerdictKind::Fails, witness: Some(witness) }
    }

    pub fn is_pattern(&self) -> bool {
        self.kind != VerdictKind::Fails
    }
}

/// One distinct location in the merged order: a root of `f`, of `g`, or of both.
#[derive(Clone, Copy, Debug)]
struct Event {
    f: Option<usize>,
    g: Option<usize>,
}

struct Merged<'a> {
    f: &'a RootSet,
    g: &'a RootSet,
    events: Vec<Event>,
}

impl Merged<'_> {
    fn root(&self, side: Side, index: usize) -> WitnessRoot {
        let set = match side {
            Side::F => self.f,
            Side::G => self.g,
        };
        WitnessRoot { set: side, index, location: set.intervals()[index].clone() }
    }

    fn event_root(&self, e: &Event) -> WitnessRoot {
        match (e.f, e.g) {
            (Some(i), _) => self.root(Side::F, i),
            (None, Some(j)) => self.root(Side::G, j),
            (None, None) => unreachable!("event without roots"),
        }
    }

    fn witness_at(&self, i: usize) -> Witness {
        let e = &self.events[i];
        if let (Some(a), Some(b)) = (e.f, e.g) {
            return Witness { left: self.root(Side::F, a), right: self.root(Side::G, b) };
        }
        let j = if i + 1 < self.events.len() { i + 1 } else { i.saturating_sub(1) };
        let (a, b) = if j < i { (j, i) } else { (i, j) };
        Witness {
            left: self.event_root(&self.events[a]),
            right: self.event_root(&self.events[b]),
        }
    }
}

/// Refines both sets until every location is told apart (shared roots, known from the
/// gcd of the sources, are paired instead) and returns the merged order.
fn merge<'a>(f: &'a mut RootSet, g: &'a mut RootSet) -> Result<Merged<'a>> {
    let mut tie_f = vec![None; f.len()];
    if let (Some(sf), Some(sg)) = (f.source(), g.source()) {
        let common = intpoly::gcd(sf, sg);
        if common.degree().unwrap_or(0) > 0 {
            let fi: Vec<usize> = (0..f.len()).filter(|&i| contains_root_of(&common, &f.intervals()[i])).collect();
            let gi: Vec<usize> = (0..g.len()).filter(|&j| contains_root_of(&common, &g.intervals()[j])).collect();
            debug_assert_eq!(fi.len(), gi.len());
            for (&i, &j) in fi.iter().zip(&gi) {
                tie_f[i] = Some(j);
            }
        }
    }

    let mut rounds = 0;
    loop {
        let mut clash = Vec::new();
        for (i, a) in f.intervals().iter().enumerate() {
            for (j, b) in g.intervals().iter().enumerate() {
                if tie_f[i] != Some(j) && a.overlaps(b) {
                    clash.push((i, j));
                }
            }
        }
        if clash.is_empty() {
            break;
        }
        if rounds == MAX_REFINE_ROUNDS {
            return Err(Error::Indistinguishable { rounds });
        }
        rounds += 1;
        let mut fs: Vec<usize> = clash.iter().map(|c| c.0).collect();
        let mut gs: Vec<usize> = clash.iter().map(|c| c.1).collect();
        fs.sort_unstable();
        fs.dedup();
        gs.sort_unstable();
        gs.dedup();
        for i in fs {
            f.bisect(i)?;
        }
        for j in gs {
            g.bisect(j)?;
        }
    }

    let mut events: Vec<(RootInterval, Event)> = Vec::with_capacity(f.len() + g.len());
    let mut paired_g = vec![false; g.len()];
    for (i, a) in f.intervals().iter().enumerate() {
        if let Some(j) = tie_f[i] {
            paired_g[j] = true;
        }
        events.push((a.clone(), Event { f: Some(i), g: tie_f[i] }));
    }
    for (j, b) in g.intervals().iter().enumerate() {
        if !paired_g[j] {
            events.push((b.clone(), Event { f: None, g: Some(j) }));
        }
    }
    events.sort_by(|a, b| a.0.position(&b.0));
    Ok(Merged { f, g, events: events.into_iter().map(|e| e.1).collect() })
}

/// Feasibility of a weakly alternating labelling, multiplicities expanded and coincident
/// roots ordered freely. `start` fixes the first label. Returns the label expected next,
/// or the index of the first event that breaks alternation.
fn weak_alternation(m: &Merged, start: Side) -> std::result::Result<Option<Side>, usize> {
    let mut next: [bool; 2] = match start {
        Side::F => [true, false],
        Side::G => [false, true],
    };
    for (idx, e) in m.events.iter().enumerate() {
        let cf = e.f.map_or(0, |i| m.f.intervals()[i].mult);
        let cg = e.g.map_or(0, |j| m.g.intervals()[j].mult);
        let mut after = [false; 2];
        // Starting with F: F G F G ... needs cf == cg (ends on G) or cf == cg + 1.
        if next[0] {
            if cf == cg {
                after[0] = true;
            } else if cf == cg + 1 {
                after[1] = true;
            }
        }
        if next[1] {
            if cg == cf {
                after[1] = true;
            } else if cg == cf + 1 {
                after[0] = true;
            }
        }
        if after == [false, false] {
            return Err(idx);
        }
        next = after;
    }
    Ok(match next {
        [true, false] => Some(Side::F),
        [false, true] => Some(Side::G),
        _ => None,
    })
}

fn classify(m: &Merged, strict: bool) -> InterlaceVerdict {
    if m.events.is_empty() {
        return InterlaceVerdict::pass(VerdictKind::APattern);
    }
    let nf = m.f.total_multiplicity();
    let ng = m.g.total_multiplicity();
    if strict {
        for (idx, e) in m.events.iter().enumerate() {
            let shared = e.f.is_some() && e.g.is_some();
            let repeated = e.f.is_some_and(|i| m.f.intervals()[i].mult > 1)
                || e.g.is_some_and(|j| m.g.intervals()[j].mult > 1);
            if shared || repeated {
                let root = m.event_root(e);
                let right = if shared { m.root(Side::G, e.g.unwrap()) } else { root.clone() };
                return InterlaceVerdict::fails(Witness { left: root, right });
            }
            if idx > 0 {
                let prev = &m.events[idx - 1];
                if prev.f.is_some() == e.f.is_some() {
                    return InterlaceVerdict::fails(m.witness_at(idx - 1));
                }
            }
        }
        let starts_f = m.events[0].f.is_some();
        return if nf == ng && starts_f {
            InterlaceVerdict::pass(VerdictKind::APattern)
        } else if ng == nf + 1 {
            InterlaceVerdict::pass(VerdictKind::BPattern)
        } else {
            InterlaceVerdict::fails(m.witness_at(0))
        };
    }
    let a = weak_alternation(m, Side::F);
    if nf == ng && a.is_ok() {
        return InterlaceVerdict::pass(VerdictKind::APattern);
    }
    let b = weak_alternation(m, Side::G);
    if ng == nf + 1 && b.is_ok() {
        return InterlaceVerdict::pass(VerdictKind::BPattern);
    }
    let idx = match (a, b) {
        (Err(i), Err(j)) => i.max(j),
        (Err(i), _) | (_, Err(i)) => i,
        _ => 0,
    };
    InterlaceVerdict::fails(m.witness_at(idx.saturating_sub(1)))
}

/// Classifies how the roots of `g` sit relative to those of `f`. With `strict`, roots must
/// be simple and distinct; otherwise coincident and repeated roots may alternate weakly.
pub fn interlace(roots_f: &RootSet, roots_g: &RootSet, strict: bool) -> Result<InterlaceVerdict> {
    let (mut f, mut g) = (roots_f.clone(), roots_g.clone());
    let merged = merge(&mut f, &mut g)?;
    Ok(classify(&merged, strict))
}

/// Weak alternation in either orientation, multiplicities counted.
pub fn weakly_interlacing(roots_f: &RootSet, roots_g: &RootSet) -> Result<bool> {
    let (mut f, mut g) = (roots_f.clone(), roots_g.clone());
    let merged = merge(&mut f, &mut g)?;
    Ok(weak_alternation(&merged, Side::F).is_ok() || weak_alternation(&merged, Side::G).is_ok())
}

/// Width used when isolating inputs for interlacing; `interlace` refines further on demand.
fn working_width() -> RatNum {
    RatNum::new(1.into(), num_bigint::BigInt::from(1u64 << 20))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub family: Family,
    #[serde(with = "crate::ratpoly::serde_rat")]
    pub ratio: RatNum,
    /// `d/c` strictly inside the window.
    pub predicted: bool,
    /// `cx - d` and its image strictly interlace.
    pub observed: bool,
    pub verdict: Option<InterlaceVerdict>,
}

impl ThresholdReport {
    pub fn agrees(&self) -> bool {
        self.predicted == self.observed
    }
}

pub fn threshold_details(family: Family, c: &RatNum, d: &RatNum) -> Result<ThresholdReport> {
    if c.is_zero() {
        return Err(Error::Precondition("c must be nonzero".into()));
    }
    let p1 = RatPoly::linear(c, d);
    let p2 = make_d(family).apply(&p1);
    let f = isolate(&p1, &working_width())?;
    let g = isolate(&p2, &working_width())?;
    let verdict = match interlace(&f, &g, true) {
        Ok(v) => Some(v),
        Err(Error::Indistinguishable { .. }) => None,
        Err(e) => return Err(e),
    };
    let observed = verdict.as_ref().is_some_and(|v| v.kind == VerdictKind::BPattern);
    Ok(ThresholdReport {
        family,
        ratio: d / c,
        predicted: in_window(family, c, d),
        observed,
        verdict,
    })
}

/// Whether the observed interlacing of `cx - d` and `D[cx - d]` matches the window test.
pub fn threshold_check(family: Family, c: &RatNum, d: &RatNum) -> Result<bool> {
    Ok(threshold_details(family, c, d)?.agrees())
}

/// Verdicts for the pairs `(P_n, P_{n+1})`, `n = 1..=n_max`.
pub fn consecutive_interlacing(spec: &FamilySpec, n_max: usize) -> Result<Vec<InterlaceVerdict>> {
    if !in_window(spec.family, &spec.c, &spec.d) {
        let (lo, hi) = spec.family.imp().interlacing_window();
        return Err(Error::Precondition(format!(
            "d/c must lie strictly between {lo} and {hi} for {}",
            spec.family
        )));
    }
    let seq = iterate_p(spec, n_max + 1)?;
    let roots = seq
        .entries()
        .iter()
        .map(|p| isolate(p, &working_width()))
        .collect::<Result<Vec<_>>>()?;
    roots.windows(2).map(|w| interlace(&w[0], &w[1], true)).collect()
}

/// `f ≪ g`: both real-rooted, zeros weakly interlacing, and `f'g - fg' <= 0` on the
/// real line. The sign condition is decided exactly: every real root of the Wronskian
/// must have even multiplicity and its leading coefficient must be negative.
pub fn proper_position(f: &RatPoly, g: &RatPoly) -> Result<bool> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !is_hyperbolic(f)? || !is_hyperbolic(g)? {
        return Ok(false);
    }
    let rf = isolate(f, &working_width())?;
    let rg = isolate(g, &working_width())?;
    if !weakly_interlacing(&rf, &rg)? {
        return Ok(false);
    }
    let w = &(&f.differentiate() * g) - &(f * &g.differentiate());
    if w.is_zero() {
        return Ok(true);
    }
    for (i, factor) in w.squarefree_decomposition()?.iter().enumerate() {
        let odd = i % 2 == 0;
        if odd && factor.degree() != Some(0) {
            let chain = SturmChain::new(&factor.to_primitive_int().1);
            if chain.count_real() > 0 {
                return Ok(false);
            }
        }
    }
    Ok(w.leading_coeff().unwrap().is_negative())
}
