//! Acceptance suite: one PASS/FAIL line per criterion, each checked against its tolerance
//! and its runtime budget. Expected values come from oracles written here, independent of
//! the library code paths they check.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use xilam_core::diffop::{compose_ab, divergence_check, make_a, make_b, make_d, selfadjoint_defect};
use xilam_core::eigenhyp::{eigen_residual, eigen_residual_with, indicial_exponents, residual_grid, SingularPoint};
use xilam_core::eulerian::{build_table, closed_form_eval, limit_r, oracle_eulerian, ratio_r, ratio_r_direct};
use xilam_core::families::{aux_family, closed_form_check_range, iterate_p, FamilySpec, Scaling};
use xilam_core::family::EulerianType;
use xilam_core::ratpoly::{int, rat, RatNum, RatPoly};
use xilam_core::rootlab::{
    confined, consecutive_interlacing, interlace, is_hyperbolic, isolate, threshold_check, threshold_details,
    VerdictKind,
};
use xilam_core::zerodist::{
    compare_distribution, decomposition, limit_cdf, limit_density, limit_quantile, omega_grid, s_limit, s_n_eval,
};
use xilam_core::Family;

/// Criteria that cannot be met as stated; they still print FAIL.
const KNOWN_RED: &[(usize, &str)] = &[(
    11,
    "F(F^-1(t)) within 1e-12 at t = 0.9 is below double resolution: one ulp of x moves F by ~5.7e-11 there",
)];

struct Check {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Check { failures: Vec::new(), notes: Vec::new() }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn note(&mut self, s: String) {
        self.notes.push(s);
    }
}

fn lin(r: &RatNum) -> RatPoly {
    RatPoly::new(vec![-r.clone(), int(1)])
}

fn monomial(m: usize) -> RatPoly {
    RatPoly::monomial(int(1), m)
}

/// `c_{m+1} x^{m+1} + c_m x^m + c_{m-1} x^{m-1}` from integer coefficients.
fn three_term(m: usize, up: i64, same: i64, down: i64) -> RatPoly {
    let mut cs = vec![int(0); m + 2];
    cs[m + 1] = int(up);
    cs[m] = int(same);
    if m > 0 {
        cs[m - 1] = int(down);
    }
    RatPoly::new(cs)
}

fn c1_factorization() -> Check {
    let mut c = Check::new();
    c.expect(compose_ab(1) == make_d(Family::Xi), || "A_1∘B_1 != D_Xi".into());
    c.expect(compose_ab(2) == make_d(Family::Lambda), || "A_2∘B_2 != D_Lambda".into());
    for n in 0..=5i64 {
        for m in 0..=30usize {
            let mi = m as i64;
            // 4x(x-1)² D² + 2(x-1)((2n+5)x-3) D + ((n+1)(n+2)x - (3n+2)) on x^m
            let want = three_term(
                m,
                4 * mi * (mi - 1) + 2 * (2 * n + 5) * mi + (n + 1) * (n + 2),
                -8 * mi * (mi - 1) - 2 * (2 * n + 8) * mi - (3 * n + 2),
                4 * mi * (mi - 1) + 6 * mi,
            );
            let nested = make_a(n as u64).apply(&make_b(n as u64).apply(&monomial(m)));
            let composed = compose_ab(n as u64).apply(&monomial(m));
            c.expect(nested == want && composed == want, || format!("n={n} m={m}"));
        }
    }
    c
}

fn c2_monomial() -> Check {
    let mut c = Check::new();
    for m in 0..=50usize {
        let mi = m as i64;
        let xi = three_term(m, 4 * mi * mi + 10 * mi + 6, -(8 * mi * mi + 12 * mi + 5), 4 * mi * mi + 2 * mi);
        let la = three_term(m, 4 * mi * mi + 14 * mi + 12, -(8 * mi * mi + 16 * mi + 8), 4 * mi * mi + 2 * mi);
        c.expect(make_d(Family::Xi).apply(&monomial(m)) == xi, || format!("xi m={m}"));
        c.expect(make_d(Family::Lambda).apply(&monomial(m)) == la, || format!("lambda m={m}"));
    }
    c
}

fn random_poly(rng: &mut ChaCha8Rng) -> RatPoly {
    let deg = rng.gen_range(0..=10);
    RatPoly::new((0..=deg).map(|_| rat(rng.gen_range(-99..=99), rng.gen_range(1..=13))).collect())
}

fn c3_divergence() -> Check {
    let mut c = Check::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for fam in Family::ALL {
        c.expect(divergence_check(fam), || format!("{fam} divergence form"));
        for i in 0..50 {
            let (f, g) = (random_poly(&mut rng), random_poly(&mut rng));
            c.expect(selfadjoint_defect(&f, &g, fam) == int(0), || format!("{fam} pair {i}"));
        }
    }
    c
}

fn c4_closed_form() -> Check {
    let mut c = Check::new();
    let xi = aux_family(Family::Xi, 2).unwrap();
    let la = aux_family(Family::Lambda, 2).unwrap();
    // (5 - 6x)/96 and (2 - 3x)/93
    c.expect(xi.get(2) == Some(&RatPoly::new(vec![rat(5, 96), rat(-6, 96)])), || "xi second member".into());
    c.expect(la.get(2) == Some(&RatPoly::new(vec![rat(2, 93), rat(-3, 93)])), || "lambda second member".into());
    let configs = [
        (int(1), int(0), Scaling::PaperDefault),
        (int(1), rat(1, 2), Scaling::AllOnes),
        (int(3), int(2), Scaling::PaperDefault),
        (int(-2), rat(5, 3), Scaling::Custom(vec![int(1), int(-1), int(2)])),
        (rat(7, 5), rat(-1, 3), Scaling::Custom(vec![rat(-3, 2), rat(2, 5)])),
    ];
    for fam in Family::ALL {
        for (cc, d, s) in configs.clone() {
            let spec = FamilySpec::new(fam, cc, d, s);
            let results = closed_form_check_range(&spec, 15).unwrap();
            c.expect(results.len() == 15 && results.iter().all(|&b| b), || {
                format!("{fam} c={} d={} {}", spec.c, spec.d, spec.scaling)
            });
        }
    }
    c
}

/// Descent polynomial by direct enumeration. Type B uses signed permutations with
/// `π(0) = 0` so that a negative first entry is a descent.
fn enumerate_eulerian(kind: EulerianType, m: usize) -> Vec<u64> {
    fn rec(kind: EulerianType, m: usize, prefix: &mut Vec<i64>, used: &mut [bool], counts: &mut [u64]) {
        if prefix.len() == m {
            let start = if kind == EulerianType::B { 0 } else { 1 };
            let seq: Vec<i64> = std::iter::once(0).chain(prefix.iter().copied()).collect();
            let des = (start..m).filter(|&i| seq[i] > seq[i + 1]).count();
            counts[des] += 1;
            return;
        }
        for v in 1..=m {
            if used[v] {
                continue;
            }
            used[v] = true;
            let signs: &[i64] = if kind == EulerianType::B { &[1, -1] } else { &[1] };
            for &s in signs {
                prefix.push(s * v as i64);
                rec(kind, m, prefix, used, counts);
                prefix.pop();
            }
            used[v] = false;
        }
    }
    let mut counts = vec![0u64; m + 1];
    rec(kind, m, &mut Vec::new(), &mut vec![false; m + 1], &mut counts);
    while counts.len() > 1 && *counts.last().unwrap() == 0 {
        counts.pop();
    }
    counts
}

fn c5_eulerian() -> Check {
    let mut c = Check::new();
    for kind in [EulerianType::A, EulerianType::B] {
        let table = build_table(kind, 8);
        for m in 0..=8 {
            let want = RatPoly::new(enumerate_eulerian(kind, m).iter().map(|&k| int(k as i64)).collect());
            let got = table.get(m).unwrap();
            c.expect(*got == want, || format!("{kind:?} m={m} table vs enumeration"));
            c.expect(oracle_eulerian(kind, m).unwrap() == want, || format!("{kind:?} m={m} library oracle"));
        }
    }
    let ts = [rat(1, 3), rat(1, 2), rat(2, 3), rat(3, 4)];
    for fam in Family::ALL {
        let aux = aux_family(fam, 12).unwrap();
        for n in 1..=12 {
            for t in &ts {
                let want = aux.get(n).unwrap().evaluate(&(t * t));
                c.expect(closed_form_eval(fam, n as u64, t).unwrap() == want, || format!("{fam} n={n} t={t}"));
            }
        }
    }
    for (fam, first) in [(Family::Xi, rat(1, 4)), (Family::Lambda, rat(1, 7))] {
        let v = closed_form_eval(fam, 1, &rat(1, 2)).unwrap();
        c.expect(v == first, || format!("{fam} first member {v}"));
    }
    c
}

fn c6_hyperbolicity() -> Check {
    let mut c = Check::new();
    let one = int(1);
    for fam in Family::ALL {
        let mut seqs = vec![("aux".to_string(), aux_family(fam, 25).unwrap())];
        for (cc, d) in [(int(1), rat(1, 2)), (int(3), int(2))] {
            let spec = FamilySpec::new(fam, cc, d, Scaling::PaperDefault);
            seqs.push((format!("P c={} d={}", spec.c, spec.d), iterate_p(&spec, 25).unwrap()));
        }
        for (label, seq) in &seqs {
            for n in 1..=25 {
                let p = seq.get(n).unwrap();
                let ok = is_hyperbolic(p).unwrap() && confined(p, &one).unwrap();
                c.expect(ok, || format!("{fam} {label} n={n}"));
            }
        }
    }
    let width = rat(1, 1_000_000);
    let f = lin(&rat(1, 4));
    // A_1[x - 1/4] = 3x - 9/4
    let a = isolate(&make_a(1).apply(&f), &width).unwrap();
    let r = a.intervals().first().map(|iv| iv.midpoint_f64());
    c.expect(a.len() == 1 && (r.unwrap() - 0.75).abs() <= 1e-6, || format!("A_1 root {r:?}"));
    // B_1[x - 1/4] = 4x² - 7x/2 + 1/4, roots (7/2 ± sqrt(33/4))/8
    let disc = (33.0f64 / 4.0).sqrt();
    let want = [(3.5 - disc) / 8.0, (3.5 + disc) / 8.0];
    let b = isolate(&make_b(1).apply(&f), &width).unwrap();
    let got = b.midpoints();
    c.expect(got.len() == 2 && got.iter().zip(&want).all(|(g, w)| (g - w).abs() <= 1e-6), || {
        format!("B_1 roots {got:?} vs {want:?}")
    });
    c.note(format!("B_1 roots {:.4} {:.4}", got[0], got[1]));
    c
}

fn c7_thresholds() -> Check {
    let mut c = Check::new();
    let mut sweep: Vec<RatNum> = (-2..=16).map(|k| rat(k, 12)).collect();
    sweep.push(rat(3, 7));
    sweep.sort();
    c.expect(sweep.len() == 20, || "sweep size".into());
    for fam in Family::ALL {
        let (lo, hi) = match fam {
            Family::Xi => (rat(3, 7), int(1)),
            Family::Lambda => (rat(1, 3), int(1)),
        };
        for r in &sweep {
            let inside = lo < *r && *r < hi;
            let rep = threshold_details(fam, &int(1), r).unwrap();
            c.expect(rep.observed == inside && threshold_check(fam, &int(1), r).unwrap(), || {
                format!("{fam} d/c={r}: observed {} expected {inside}", rep.observed)
            });
            // scaling c must not matter
            let scaled = threshold_details(fam, &int(-5), &(r * int(-5))).unwrap();
            c.expect(scaled.observed == inside, || format!("{fam} d/c={r} with c=-5"));
        }
    }
    let f = &lin(&rat(13, 20)) * &lin(&rat(67, 100));
    let g = make_d(Family::Xi).apply(&f);
    let width = rat(1, 1 << 30);
    let rg = isolate(&g, &width).unwrap();
    let want = [0.3105, 0.7888, 0.9812];
    let got = rg.midpoints();
    c.expect(got.len() == 3 && got.iter().zip(&want).all(|(g, w)| (g - w).abs() <= 1e-3), || {
        format!("image roots {got:?}")
    });
    let rf = isolate(&f, &width).unwrap();
    let verdict = interlace(&rf, &rg, true).unwrap();
    c.expect(verdict.kind == VerdictKind::Fails && verdict.witness.is_some(), || {
        format!("verdict {:?}", verdict.kind)
    });
    c
}

fn c8_consecutive() -> Check {
    let mut c = Check::new();
    let configs = [
        (int(1), rat(1, 2), Scaling::PaperDefault),
        (int(3), int(2), Scaling::AllOnes),
        (int(1), rat(9, 10), Scaling::Custom(vec![int(1), int(-1)])),
        (int(-2), rat(-3, 2), Scaling::Custom(vec![rat(-1, 3), int(2), rat(5, 7)])),
    ];
    for fam in Family::ALL {
        for (cc, d, s) in configs.clone() {
            let spec = FamilySpec::new(fam, cc, d, s);
            let verdicts = consecutive_interlacing(&spec, 15).unwrap();
            c.expect(verdicts.len() == 15, || "pair count".into());
            for (i, v) in verdicts.iter().enumerate() {
                c.expect(v.kind == VerdictKind::BPattern, || {
                    format!("{fam} c={} d={} {} n={}: {:?}", spec.c, spec.d, spec.scaling, i + 1, v.kind)
                });
            }
        }
    }
    c
}

fn c9_ratio() -> Check {
    let mut c = Check::new();
    let grid = [Complex64::new(2.0, 0.0), Complex64::new(4.0, 0.0), Complex64::new(1.5, 0.5)];
    for fam in Family::ALL {
        let aux = aux_family(fam, 17).unwrap();
        for n in 1..=12u64 {
            for &z in &grid {
                let a = ratio_r(fam, n, z).unwrap();
                let b = ratio_r_direct(fam, n, z).unwrap();
                let rel = (a - b).norm() / b.norm();
                c.expect(rel <= 1e-10, || format!("{fam} n={n} z={z}: rel {rel:e}"));
                // float Horner on the auxiliary polynomials as a loose cross-check
                let t0 = aux.get(n as usize).unwrap().evaluate_complex(z);
                let t1 = aux.get(n as usize + 1).unwrap().evaluate_complex(z);
                let rel = (t1 / t0 - b).norm() / b.norm();
                c.expect(rel <= 1e-6, || format!("{fam} n={n} z={z}: horner rel {rel:e}"));
            }
        }
        for &z in &grid {
            let lim = limit_r(z).unwrap();
            let e4 = (ratio_r(fam, 4, z).unwrap() - lim).norm();
            let e16 = (ratio_r(fam, 16, z).unwrap() - lim).norm();
            c.expect(e16 < e4, || format!("{fam} z={z}: {e16:e} !< {e4:e}"));
        }
    }
    c
}

fn c10_log_derivative() -> Check {
    let mut c = Check::new();
    let three = Complex64::new(3.0, 0.0);
    let specs: Vec<FamilySpec> = Family::ALL
        .iter()
        .map(|&f| FamilySpec::new(f, int(1), rat(1, 2), Scaling::PaperDefault))
        .collect();
    for spec in &specs {
        for n in 1..=10 {
            let d = decomposition(spec, n, three).unwrap();
            let s = s_n_eval(spec, n, three).unwrap();
            let err = (d.total() - s).norm();
            c.expect(err <= 1e-9, || format!("{} n={n}: {err:e}", spec.family));
        }
    }
    let mut worst = 0.0f64;
    for z in omega_grid() {
        let lim = s_limit(z).unwrap();
        let at = |n: usize| -> Vec<Complex64> { specs.iter().map(|s| s_n_eval(s, n, z).unwrap()).collect() };
        let (s5, s40) = (at(5), at(40));
        for (i, spec) in specs.iter().enumerate() {
            let (e5, e40) = ((s5[i] - lim).norm(), (s40[i] - lim).norm());
            worst = worst.max(e40);
            c.expect(e40 < e5, || format!("{} z={z}: {e40:e} !< {e5:e}", spec.family));
        }
        let (g5, g40) = ((s5[0] - s5[1]).norm(), (s40[0] - s40[1]).norm());
        c.expect(g40 < g5, || format!("inter-family gap at z={z}: {g40:e} !< {g5:e}"));
    }
    c.note(format!("max |s_40 - s_limit| {worst:.2e}"));
    c
}

/// Adaptive Simpson on `[a, b]`.
fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn step(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 40)
}

/// `∫_0^1 ρ`: with `x = tanh²(s)` the measure becomes `4/(4s² + π²) ds` on `(0, ∞)`.
/// The library density is integrated numerically on `s ∈ [s0, s1]`; the two end pieces
/// use the transformed integrand, `(2/π) atan(2 s0/π)` and `1 - (2/π) atan(2 s1/π)`.
fn density_mass() -> f64 {
    let (s0, s1) = (1e-6, 5.0);
    let integrand = |s: f64| {
        let t = s.tanh();
        let sech2 = 1.0 - t * t;
        limit_density(t * t).unwrap() * 2.0 * t * sech2
    };
    let bulk = simpson(&integrand, s0, s1, 1e-13);
    let head = 2.0 / PI * (2.0 * s0 / PI).atan();
    let tail = 1.0 - 2.0 / PI * (2.0 * s1 / PI).atan();
    head + bulk + tail
}

fn c11_distribution() -> Check {
    let mut c = Check::new();
    let jobs: Vec<(Family, usize)> = Family::ALL
        .iter()
        .flat_map(|&f| [10usize, 25, 100].map(move |n| (f, n)))
        .collect();
    let reports = std::thread::scope(|s| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|&(f, n)| {
                s.spawn(move || {
                    let spec = FamilySpec::new(f, int(1), rat(1, 2), Scaling::PaperDefault);
                    compare_distribution(&spec, n).unwrap()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect::<Vec<_>>()
    });
    let get = |f: Family, n: usize| reports.iter().find(|r| r.family == f && r.n == n).unwrap();
    for fam in Family::ALL {
        let (r10, r25, r100) = (get(fam, 10), get(fam, 25), get(fam, 100));
        c.expect(r100.ks < r10.ks, || format!("{fam} ks(100) {} !< ks(10) {}", r100.ks, r10.ks));
        c.expect(r100.max_cdf_gap < r25.max_cdf_gap, || {
            format!("{fam} gap(100) {} !< gap(25) {}", r100.max_cdf_gap, r25.max_cdf_gap)
        });
        c.expect(r100.confined && r100.quantile_errors.len() == 100, || format!("{fam} n=100 zeros"));
        c.note(format!(
            "{fam}: ks {:.4}/{:.4}, gap {:.4}/{:.4}",
            r10.ks, r100.ks, r25.max_cdf_gap, r100.max_cdf_gap
        ));
    }
    let mass = density_mass();
    c.expect((mass - 1.0).abs() <= 1e-8, || format!("∫ρ = {mass}"));
    c.note(format!("|∫ρ - 1| {:.1e}", (mass - 1.0).abs()));
    let mut worst = (0.0f64, 0.0f64);
    for k in 1..=9 {
        let t = k as f64 / 10.0;
        let err = (limit_cdf(limit_quantile(t).unwrap()) - t).abs();
        if err > worst.0 {
            worst = (err, t);
        }
    }
    c.expect(worst.0 <= 1e-12, || format!("round trip {:.1e} at t={}", worst.0, worst.1));
    c
}

fn c12_eigen() -> Check {
    let mut c = Check::new();
    let xs = residual_grid(56);
    let mut worst = 0.0f64;
    for fam in Family::ALL {
        for e in [0.0, 0.25, 0.5, 1.0] {
            // (2e+1)² and 4(e+1)²
            let lambda = match fam {
                Family::Xi => (2.0 * e + 1.0) * (2.0 * e + 1.0),
                Family::Lambda => 4.0 * (e + 1.0) * (e + 1.0),
            };
            for (c1, c2) in [(1.0, 0.0), (0.0, 1.0)] {
                let r = eigen_residual_with(fam, e, lambda, c1, c2, &xs).unwrap();
                worst = worst.max(r);
                c.expect(r <= 1e-8, || format!("{fam} e={e} C=({c1},{c2}): {r:e}"));
                c.expect(eigen_residual(fam, e, c1, c2, &xs).unwrap() == r, || "family eigenvalue".into());
                let p = eigen_residual_with(fam, e, lambda + 1.0, c1, c2, &xs).unwrap();
                c.expect(p > 1e-2, || format!("{fam} e={e} perturbed: {p:e}"));
            }
        }
    }
    c.note(format!("max residual {worst:.1e}"));
    let pair = |f, pt, v| {
        let (a, b) = indicial_exponents(f, pt, v);
        (a.re, a.im, b.re, b.im)
    };
    c.expect(pair(Family::Xi, SingularPoint::One, 4.0) == (0.5, 0.0, -1.5, 0.0), || "xi at 1".into());
    c.expect(pair(Family::Lambda, SingularPoint::One, 4.0) == (0.0, 0.0, -2.0, 0.0), || "lambda at 1".into());
    for fam in Family::ALL {
        c.expect(pair(fam, SingularPoint::Zero, 4.0) == (0.0, 0.0, -0.5, 0.0), || format!("{fam} at 0"));
    }
    c
}

type Criterion = (usize, &'static str, Duration, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (1, "factorization identity", Duration::from_secs(1), c1_factorization),
        (2, "monomial action", Duration::from_secs(1), c2_monomial),
        (3, "divergence form and self-adjointness", Duration::from_secs(5), c3_divergence),
        (4, "auxiliary fixtures and closed form", Duration::from_secs(10), c4_closed_form),
        (5, "Eulerian cross-validation", Duration::from_secs(30), c5_eulerian),
        (6, "hyperbolicity and confinement", Duration::from_secs(120), c6_hyperbolicity),
        (7, "interlacing thresholds", Duration::from_secs(30), c7_thresholds),
        (8, "consecutive interlacing", Duration::from_secs(60), c8_consecutive),
        (9, "ratio asymptotics", Duration::from_secs(30), c9_ratio),
        (10, "log-derivative convergence", Duration::from_secs(60), c10_log_derivative),
        (11, "zero distribution", Duration::from_secs(300), c11_distribution),
        (12, "eigen residuals", Duration::from_secs(10), c12_eigen),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut unexpected = Vec::new();
    for (id, name, budget, run) in criteria {
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let start = Instant::now();
        let mut check = run();
        let elapsed = start.elapsed();
        if elapsed > budget {
            check.failures.push(format!("took {elapsed:.2?}, budget {budget:?}"));
        }
        let pass = check.failures.is_empty();
        println!(
            "{} criterion {id:>2}: {name} [{elapsed:.2?} / {budget:?}]",
            if pass { "PASS" } else { "FAIL" }
        );
        for n in &check.notes {
            println!("      {n}");
        }
        for f in check.failures.iter().take(10) {
            println!("      - {f}");
        }
        match KNOWN_RED.iter().find(|(k, _)| *k == id) {
            Some((_, why)) if !pass => println!("      known red: {why}"),
            _ if !pass => unexpected.push(id),
            _ => {}
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
