//! Verification suites, registered by name behind the [`Suite`] trait.
//!
//! Each suite counts individual checks and records a short message for every failure.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diffop::{compose_ab, divergence_check, make_a, make_b, make_d, monomial_action, selfadjoint_defect, DiffOp};
use crate::eigenhyp::{eigen_residual, eigen_residual_with, residual_grid};
use crate::error::{Error, Result};
use crate::eulerian::{build_table, closed_form_eval_with, oracle_eulerian, ratio_r_direct, ratio_r_with, ORACLE_MAX};
use crate::families::{aux_family, closed_form_check_range, iterate_p, FamilySpec, Scaling};
use crate::family::Family;
use crate::ratpoly::{int, rat, RatNum, RatPoly};
use crate::rootlab::{confined, consecutive_interlacing, is_hyperbolic, threshold_details, VerdictKind};
use crate::zerodist::decomposition;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Overrides the suite's own size parameter.
    pub n_max: Option<usize>,
    pub seed: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteOutcome {
    pub suite: String,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    fn new(name: &str) -> Self {
        SuiteOutcome { suite: name.to_string(), ..Default::default() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            self.failures.push(what());
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

pub trait Suite: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn default_n_max(&self) -> usize;
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteOutcome>;

    fn n_max(&self, cfg: &SuiteConfig) -> usize {
        cfg.n_max.unwrap_or(self.default_n_max())
    }
}

/// The general composition display `4x(x-1)²D² + 2(x-1)((2n+5)x-3)D + ((n+1)(n+2)x-(3n+2))`.
fn composition_display(n: u64) -> DiffOp {
    let n = n as i64;
    DiffOp::new(
        RatPoly::from_ints(&[0, 4, -8, 4]),
        &RatPoly::from_ints(&[-2, 2]) * &RatPoly::from_ints(&[-3, 2 * n + 5]),
        RatPoly::from_ints(&[-(3 * n + 2), (n + 1) * (n + 2)]),
    )
}

fn monomial_formula(family: Family, m: i64) -> (RatNum, RatNum, RatNum) {
    let below = int(4 * m * m + 2 * m);
    match family {
        Family::Xi => (int(4 * m * m + 10 * m + 6), int(-(8 * m * m + 12 * m + 5)), below),
        Family::Lambda => (int(4 * m * m + 14 * m + 12), int(-(8 * m * m + 16 * m + 8)), below),
    }
}

fn random_poly(rng: &mut ChaCha8Rng, max_degree: usize) -> RatPoly {
    let deg = rng.gen_range(0..=max_degree);
    RatPoly::new(
        (0..=deg)
            .map(|_| rat(rng.gen_range(-20..=20), rng.gen_range(1..=9)))
            .collect(),
    )
}

/// `(c, d, scaling)` configurations shared by the closed-form and interlacing suites.
pub fn standard_configs() -> Vec<(RatNum, RatNum, Scaling)> {
    vec![
        (int(1), int(0), Scaling::PaperDefault),
        (int(1), rat(1, 2), Scaling::AllOnes),
        (int(3), int(2), Scaling::PaperDefault),
        (int(-2), rat(5, 3), Scaling::Custom(vec![int(1), int(-1), int(2)])),
        (rat(1, 2), rat(-1, 3), Scaling::Custom(vec![rat(-3, 2), rat(2, 5)])),
    ]
}

/// `(c, d, scaling)` with `d/c` inside both windows, one with alternating scaling signs.
pub fn interlacing_configs() -> Vec<(RatNum, RatNum, Scaling)> {
    vec![
        (int(1), rat(1, 2), Scaling::PaperDefault),
        (int(3), int(2), Scaling::AllOnes),
        (int(-4), int(-3), Scaling::PaperDefault),
        (int(1), rat(4, 5), Scaling::Custom(vec![int(1), int(-1)])),
    ]
}

/// 20 ratios `d/c` including both ends of both windows.
pub fn threshold_sweep() -> Vec<RatNum> {
    let mut v: Vec<RatNum> = (-2..=16).map(|k| rat(k, 12)).collect();
    v.extend([rat(3, 7)]);
    v.sort();
    v.dedup();
    v
}

pub const RATIO_GRID: [(f64, f64); 3] = [(2.0, 0.0), (4.0, 0.0), (1.5, 0.5)];

struct Factorization;
struct Monomial;
struct Divergence;
struct SelfAdjoint;
struct ClosedForm;
struct EulerianOracle;
struct EulerianClosedForm;
struct Hyperbolicity;
struct Thresholds;
struct Consecutive;
struct Ratio;
struct LogDerivative;
struct Eigen;

impl Suite for Factorization {
    fn name(&self) -> &'static str {
        "factorization"
    }
    fn description(&self) -> &'static str {
        "A_n∘B_n against D_Xi, D_Lambda and the general display, also on monomials"
    }
    fn default_n_max(&self) -> usize {
        5
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
        let mut out = SuiteOutcome::new(self.name());
        out.check(compose_ab(1) == make_d(Family::Xi), || "A_1∘B_1 != D_Xi".into());
        out.check(compose_ab(2) == make_d(Family::Lambda), || "A_2∘B_2 != D_Lambda".into());
        for n in 0..=self.n_max(cfg) as u64 {
            let display = composition_display(n);
            out.check(compose_ab(n) == display, || format!("compose_ab({n}) differs from display"));
            for m in 0..=30 {
                let f = RatPoly::monomial(int(1), m);
                let lhs = make_a(n).apply(&make_b(n).apply(&f));
                out.check(lhs == display.apply(&f), || format!("n={n} m={m}"));
            }
        }
        Ok(out)
    }
}

impl Suite for Monomial {
    fn name(&self) -> &'static str {
        "monomial"
    }
    fn description(&self) -> &'static str {
        "D[x^m] against the three-term closed formula"
    }
    fn default_n_max(&self) -> usize {
        50
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
        let mut out = SuiteOutcome::new(self.name());
        for fam in Family::ALL {
            let d = make_d(fam);
            for m in 0..=self.n_max(cfg) {
                let (cp, c0, cm) = monomial_formula(fam, m as i64);
                let mut want = &RatPoly::monomial(cp.clone(), m + 1) + &RatPoly::monomial(c0.clone(), m);
                if m > 0 {
                    want = &want + &RatPoly::monomial(cm.clone(), m - 1);
                }
                let got = d.apply(&RatPoly::monomial(int(1), m));
                let cm = if m == 0 { int(0) } else { cm };
                out.check(got == want && monomial_action(&d, m)? == (cp, c0, cm), || {
                    format!("{fam} m={m}")
                });
            }
        }
        Ok(out)
    }
}

impl Suite for Divergence {
    fn name(&self) -> &'static str {
        "divergence"
    }
    fn description(&self) -> &'static str {
        "weight times operator is in divergence form"
    }
    fn default_n_max(&self) -> usize {
        0
    }
    fn run(&self, _: &SuiteConfig) -> Result<SuiteOutcome> {
        let mut out = SuiteOutcome::new(self.name());
        for fam in Family::ALL {
            out.check(divergence_check(fam), || format!("{fam}"));
        }
        Ok(out)
    }
}

impl Suite for SelfAdjoint {
    fn name(&self) -> &'static str {
        "selfadjoint"
    }
    fn description(&self) -> &'static str {
        "exact zero defect <Df,g> - <f,Dg> on seeded random polynomials of degree <= 10"
    }
    fn default_n_max(&self) -> usize {
        50
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
        let mut out = SuiteOutcome::new(self.name());
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for fam in Family::ALL {
            for i in 0..self.n_max(cfg) {
                let f = random_poly(&mut rng, 10);
                let g = random_poly(&mut rng, 10);
                let defect = selfadjoint_defect(&f, &g, fam);
                out.check(defect == int(0), || format!("{fam} pair {i}: defect {defect}"));
            }
        }
        Ok(out)
    }
}

impl Suite for ClosedForm {
    fn name(&self) -> &'static str {
        "closed-form"
    }
    fn description(&self) -> &'static str {
        "P_n from the recurrence against the closed form in the auxiliary family"
    }
    fn default_n_max(&self) -> usize {
        12
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
        let mut out = SuiteOutcome::new(self.name());
        let n_max = self.n_max(cfg);
        for fam in Family::ALL {
            let aux = aux_family(fam, 2)?;
            let want = match fam {
                Family::Xi => RatPoly::new(vec![rat(5, 96), rat(-1, 16)]),
                Family::Lambda => RatPoly::new(vec![rat(2, 93), rat(-1, 31)]),
            };
            out.check(aux.get(2) == Some(&want), || format!("{fam} second auxiliary member"));
            for (c, d, s) in standard_configs() {
                let spec = FamilySpec::new(fam, c, d, s);
                for (i, ok) in closed_form_check_range(&spec, n_max)?.into_iter().enumerate() {
                    out.check(ok, || format!("{fam} c={} d={} {} n={}", spec.c, spec.d, spec.scaling, i + 1));
                }
            }
        }
        Ok(out)
    }
}

impl Suite for EulerianOracle {
    fn name(&self) -> &'static str {
        "eulerian-oracle"
    }
    fn description(&self) -> &'static str {
        "recurrence table against descent enumeration over (signed) permutations"
    }
    fn default_n_max(&self) -> usize {
        ORACLE_MAX
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
        let mut out = SuiteOutcome::new(self.name());
        let m_max = self.n_max(cfg);
        for fam in Family::ALL {
            let kind = fam.imp().eulerian_type();
            let table = build_table(kind, m_max);
            for m in 0..=m_max {
                let oracle = oracle_eulerian(kind, m)?;
                out.check(table.get(m) == Some(&oracle), || format!("{kind:?} m={m}"));
            }
        }
        Ok(out)
    }
}

impl Suite for EulerianClosedForm {
    fn name(&self) -> &'static str {
        "eulerian-closed-form"
    }
    fn description(&self) -> &'static str {
        "Eulerian closed form against the auxiliary polynomials at t²"
    }
    fn default_n_max(&self) -> usize {
        12
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
        let mut out = SuiteOutcome::new(self.name());
        let n_max = self.n_max(cfg);
        let ts = [rat(1, 3), rat(1, 2), rat(2, 3), rat(3, 4)];
        for fam in Family::ALL {
            let imp = fam.imp();
            let aux = aux_family(fam, n_max)?;
            let table = build_table(imp.eulerian_type(), imp.eulerian_index(n_max as u64));
            for n in 1..=n_max {
                for t in &ts {
                    let lhs = closed_form_eval_with(&table, fam, n as u64, t)?;
                    let rhs = aux.get(n).unwrap().evaluate(&(t * t));
                    out.check(lhs == rhs, || format!("{fam} n={n} t={t}"));
                }
            }
        }
        Ok(out)
    }
}

impl Suite for Hyperbolicity {
    fn name(&self) -> &'static str {
        "hyperbolicity"
    }
    fn description(&self) -> &'static str {
        "auxiliary and P-sequences real-rooted with zeros in (0,1), plus seeded in-window P-sequences"
    }
    fn default_n_max(&self) -> usize {
        25
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
        let mut out = SuiteOutcome::new(self.name());
        let n_max = self.n_max(cfg);
        let one = int(1);
        let check_seq = |out: &mut SuiteOutcome, label: &str, polys: &[RatPoly]| -> Result<()> {
            for (i, p) in polys.iter().enumerate() {
                let ok = is_hyperbolic(p)? && confined(p, &one)?;
                out.check(ok, || format!("{label} n={}", i + 1));
            }
            Ok(())
        };
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for fam in Family::ALL {
            check_seq(&mut out, &format!("{fam} aux"), aux_family(fam, n_max)?.entries())?;
            for (c, d) in [(int(1), rat(1, 2)), (int(3), int(2))] {
                let spec = FamilySpec::new(fam, c, d, Scaling::PaperDefault);
                let label = format!("{fam} c={} d={}", spec.c, spec.d);
                check_seq(&mut out, &label, iterate_p(&spec, n_max)?.entries())?;
            }
            let (lo, hi) = fam.imp().interlacing_window();
            for _ in 0..3 {
                let t = rat(rng.gen_range(1..100), 100);
                let ratio = &lo + (&hi - &lo) * t;
                let spec = FamilySpec::new(fam, int(1), ratio, Scaling::AllOnes);
                let label = format!("{fam} seeded d/c={}", spec.d);
                check_seq(&mut out, &label, iterate_p(&spec, n_max.min(10))?.entries())?;
            }
        }
        Ok(out)
    }
}

impl Suite for Thresholds {
    fn name(&self) -> &'static str {
        "thresholds"
    }
    fn description(&self) -> &'static str {
        "strict interlacing of cx-d and D[cx-d] exactly inside the d/c windows"
    }
    fn default_n_max(&self) -> usize {
        0
    }
    fn run(&self, _: &SuiteConfig) -> Result<SuiteOutcome> {
        let mut out = SuiteOutcome::new(self.name());
        for fam in Family::ALL {
            for ratio in threshold_sweep() {
                let r = threshold_details(fam, &int(1), &ratio)?;
                out.check(r.agrees(), || {
                    format!("{fam} d/c={ratio}: predicted {} observed {}", r.predicted, r.observed)
                });
            }
        }
        Ok(out)
    }
}

impl Suite for Consecutive {
    fn name(&self) -> &'static str {
        "consecutive-interlacing"
    }
    fn description(&self) -> &'static str {
        "(P_n, P_{n+1}) strictly interlace in the B-pattern for in-window (c,d)"
    }
    fn default_n_max(&self) -> usize {
        15
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
        let mut out = SuiteOutcome::new(self.name());
        for fam in Family::ALL {
            for (c, d, s) in interlacing_configs() {
                let spec = FamilySpec::new(fam, c, d, s);
                for (i, v) in consecutive_interlacing(&spec, self.n_max(cfg))?.iter().enumerate() {
                    out.check(v.kind == VerdictKind::BPattern, || {
                        format!("{fam} c={} d={} {} n={}: {:?}", spec.c, spec.d, spec.scaling, i + 1, v.kind)
                    });
                }
            }
        }
        Ok(out)
    }
}

impl Suite for Ratio {
    fn name(&self) -> &'static str {
        "ratio"
    }
    fn description(&self) -> &'static str {
        "Eulerian ratio formula against the direct quotient, relative 1e-10"
    }
    fn default_n_max(&self) -> usize {
        12
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
        let mut out = SuiteOutcome::new(self.name());
        let n_max = self.n_max(cfg);
        for fam in Family::ALL {
            let imp = fam.imp();
            let table = build_table(imp.eulerian_type(), imp.eulerian_index(n_max as u64 + 1));
            for n in 1..=n_max as u64 {
                for &(re, im) in &RATIO_GRID {
                    let z = Complex64::new(re, im);
                    let a = ratio_r_with(&table, fam, n, z)?;
                    let b = ratio_r_direct(fam, n, z)?;
                    let rel = (a - b).norm() / b.norm();
                    out.check(rel <= 1e-10, || format!("{fam} n={n} z={z}: rel {rel:e}"));
                }
            }
        }
        Ok(out)
    }
}

impl Suite for LogDerivative {
    fn name(&self) -> &'static str {
        "log-derivative"
    }
    fn description(&self) -> &'static str {
        "decomposition of s_n into auxiliary and correction terms at z = 3"
    }
    fn default_n_max(&self) -> usize {
        10
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
        let mut out = SuiteOutcome::new(self.name());
        let z = Complex64::new(3.0, 0.0);
        for fam in Family::ALL {
            let spec = FamilySpec::new(fam, int(1), rat(1, 2), Scaling::PaperDefault);
            let seq = iterate_p(&spec, self.n_max(cfg))?;
            for n in 1..=self.n_max(cfg) {
                let p = seq.get(n).unwrap();
                let s = crate::eulerian::quotient_at(&p.differentiate(), p, z)? / n as f64;
                let err = (decomposition(&spec, n, z)?.total() - s).norm();
                out.check(err <= 1e-9, || format!("{fam} n={n}: {err:e}"));
            }
        }
        Ok(out)
    }
}

impl Suite for Eigen {
    fn name(&self) -> &'static str {
        "eigen"
    }
    fn description(&self) -> &'static str {
        "hypergeometric eigenfunction residuals and a perturbed-eigenvalue control"
    }
    fn default_n_max(&self) -> usize {
        23
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
        let mut out = SuiteOutcome::new(self.name());
        let xs = residual_grid(self.n_max(cfg).max(2));
        for fam in Family::ALL {
            for e in [0.0, 0.25, 0.5, 1.0] {
                for (c1, c2) in [(1.0, 0.0), (0.0, 1.0)] {
                    let r = eigen_residual(fam, e, c1, c2, &xs)?;
                    out.check(r <= 1e-8, || format!("{fam} e={e} C=({c1},{c2}): {r:e}"));
                    let lambda = fam.imp().eigenvalue(e) + 1.0;
                    let r = eigen_residual_with(fam, e, lambda, c1, c2, &xs)?;
                    out.check(r > 1e-2, || format!("{fam} e={e} perturbed: {r:e}"));
                }
            }
        }
        Ok(out)
    }
}

static SUITES: [&dyn Suite; 13] = [
    &Factorization,
    &Monomial,
    &Divergence,
    &SelfAdjoint,
    &ClosedForm,
    &EulerianOracle,
    &EulerianClosedForm,
    &Hyperbolicity,
    &Thresholds,
    &Consecutive,
    &Ratio,
    &LogDerivative,
    &Eigen,
];

pub fn suites() -> &'static [&'static dyn Suite] {
    &SUITES
}

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name()).collect()
}

pub fn lookup_suite(name: &str) -> Result<&'static dyn Suite> {
    SUITES
        .iter()
        .copied()
        .find(|s| s.name() == name)
        .ok_or_else(|| Error::UnknownSuite(name.to_string(), suite_names().join(", ")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names_unique() {
        let mut names = suite_names();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), SUITES.len());
        assert!(lookup_suite("factorization").is_ok());
        assert!(matches!(lookup_suite("nope"), Err(Error::UnknownSuite(..))));
    }

    #[test]
    fn sweep_has_both_boundaries() {
        let s = threshold_sweep();
        assert_eq!(s.len(), 20);
        for b in [rat(3, 7), rat(1, 3), int(1)] {
            assert!(s.contains(&b));
        }
    }

    #[test]
    fn cheap_suites_pass() {
        let cfg = SuiteConfig { n_max: Some(3), seed: 7 };
        for name in ["factorization", "monomial", "divergence", "selfadjoint", "closed-form", "eulerian-oracle"] {
            let out = lookup_suite(name).unwrap().run(&cfg).unwrap();
            assert!(out.ok() && out.passed > 0, "{name}: {:?}", out.failures);
        }
    }

    #[test]
    fn display_recovers_builtins() {
        assert_eq!(composition_display(1), make_d(Family::Xi));
        assert_eq!(composition_display(2), make_d(Family::Lambda));
    }
}
