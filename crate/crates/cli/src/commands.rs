use std::fs;
use std::process::ExitCode;

use serde::Serialize;
use serde_json::json;
use xilam_core::eigenhyp::{eigenfunction, residual_at, residual_grid};
use xilam_core::families::{aux_family, iterate_p, FamilySpec, Scaling, SequenceCache};
use xilam_core::family::in_window;
use xilam_core::ratpoly::{format_rat, parse_rat, RatNum, RatPoly};
use xilam_core::rootlab::{
    consecutive_interlacing, isolate, threshold_details, InterlaceVerdict, RootSet, ThresholdReport,
};
use xilam_core::suites::{lookup_suite, suites, Suite, SuiteConfig};
use xilam_core::zerodist::{compare_distribution, DistReport};
use xilam_core::Family;

use crate::output::{envelope, float, write_json, CliError, CliResult, Csv};
use crate::{DistArgs, EigenArgs, GenArgs, InterlaceArgs, OutputFormat, RootsArgs, SeqArgs, VerifyArgs};

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn require_n(n: usize) -> CliResult<()> {
    if n == 0 {
        return Err(usage("n must be at least 1"));
    }
    Ok(())
}

struct Parsed {
    c: RatNum,
    d: RatNum,
    scaling: Scaling,
}

fn parse_seq(a: &SeqArgs) -> CliResult<Parsed> {
    let parsed = Parsed { c: parse_rat(&a.c)?, d: parse_rat(&a.d)?, scaling: a.scaling.parse()? };
    if !a.aux && parsed.c == RatNum::from_integer(0.into()) {
        return Err(usage("c must be nonzero"));
    }
    Ok(parsed)
}

impl Parsed {
    fn spec(&self, family: Family) -> FamilySpec {
        FamilySpec::new(family, self.c.clone(), self.d.clone(), self.scaling.clone())
    }
}

#[derive(Serialize)]
struct GenOut<'a> {
    family: Family,
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    c: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    d: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    scaling: Option<String>,
    sequence: &'a SequenceCache,
}

fn sequence(a: &SeqArgs, p: &Parsed, family: Family, n: usize) -> CliResult<SequenceCache> {
    Ok(if a.aux { aux_family(family, n)? } else { iterate_p(&p.spec(family), n)? })
}

pub fn gen(a: &GenArgs) -> CliResult<ExitCode> {
    require_n(a.n)?;
    let p = parse_seq(&a.seq)?;
    let caches = a
        .seq
        .family
        .families()
        .into_iter()
        .map(|f| sequence(&a.seq, &p, f, a.n))
        .collect::<CliResult<Vec<_>>>()?;
    let outs: Vec<GenOut> = caches
        .iter()
        .map(|s| GenOut {
            family: s.family,
            kind: if a.seq.aux { "aux" } else { "p" },
            c: (!a.seq.aux).then(|| format_rat(&p.c)),
            d: (!a.seq.aux).then(|| format_rat(&p.d)),
            scaling: (!a.seq.aux).then(|| p.scaling.to_string()),
            sequence: s,
        })
        .collect();
    write_json(&envelope("gen", outs)?, a.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

pub fn verify(a: &VerifyArgs) -> CliResult<ExitCode> {
    let selected: Vec<&dyn Suite> = if a.suite == "all" {
        suites().to_vec()
    } else {
        vec![lookup_suite(&a.suite)?]
    };
    let cfg = SuiteConfig { n_max: a.n_max, seed: a.seed };
    let mut outcomes = Vec::new();
    for s in selected {
        log::info!("running suite {}", s.name());
        let out = s.run(&cfg)?;
        for f in &out.failures {
            eprintln!("{}: FAIL {f}", out.suite);
        }
        outcomes.push(out);
    }
    let ok = outcomes.iter().all(|o| o.ok());
    write_json(&envelope("verify", json!({ "ok": ok, "seed": a.seed, "suites": outcomes }))?, a.out.as_deref())?;
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

#[derive(Serialize)]
struct RootsOut {
    family: Family,
    n: usize,
    polynomial: RatPoly,
    degree: usize,
    real_roots: usize,
    hyperbolic: bool,
    confined: bool,
    roots: RootSet,
}

pub fn roots(a: &RootsArgs) -> CliResult<ExitCode> {
    require_n(a.n)?;
    let p = parse_seq(&a.seq)?;
    let width = parse_rat(&a.width)?;
    if width <= RatNum::from_integer(0.into()) {
        return Err(usage("width must be positive"));
    }
    let one = RatNum::from_integer(1.into());
    let mut outs = Vec::new();
    for f in a.seq.family.families() {
        let seq = sequence(&a.seq, &p, f, a.n)?;
        let poly = seq.get(a.n).unwrap().clone();
        let mut set = isolate(&poly, &width)?;
        let degree = poly.degree().unwrap_or(0);
        let confined = match set.all_within(&one)? {
            Some(v) => v,
            None => xilam_core::rootlab::confined(&poly, &one)?,
        };
        outs.push(RootsOut {
            family: f,
            n: a.n,
            degree,
            real_roots: set.total_multiplicity(),
            hyperbolic: set.total_multiplicity() == degree,
            confined,
            polynomial: poly,
            roots: set,
        });
    }
    write_json(&envelope("roots", outs)?, a.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct InterlaceOut {
    threshold: ThresholdReport,
    /// Verdicts for `(P_n, P_{n+1})`, absent when `d/c` lies outside the window.
    consecutive: Option<Vec<InterlaceVerdict>>,
}

pub fn interlace(a: &InterlaceArgs) -> CliResult<ExitCode> {
    let mut seq = a.seq.clone();
    seq.aux = false;
    let p = parse_seq(&seq)?;
    let mut outs = Vec::new();
    for f in seq.family.families() {
        let threshold = threshold_details(f, &p.c, &p.d)?;
        let consecutive = if a.n_max > 0 && in_window(f, &p.c, &p.d) {
            Some(consecutive_interlacing(&p.spec(f), a.n_max)?)
        } else {
            if a.n_max > 0 {
                log::warn!("d/c = {} is outside the {f} window; skipping consecutive pairs", format_rat(&(&p.d / &p.c)));
            }
            None
        };
        outs.push(InterlaceOut { threshold, consecutive });
    }
    write_json(&envelope("interlace", outs)?, a.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

pub fn dist(a: &DistArgs) -> CliResult<ExitCode> {
    let mut seq = a.seq.clone();
    seq.aux = false;
    let p = parse_seq(&seq)?;
    for &n in &a.n {
        require_n(n)?;
    }
    let jobs: Vec<(Family, usize)> = seq
        .family
        .families()
        .into_iter()
        .flat_map(|f| a.n.iter().map(move |&n| (f, n)))
        .collect();
    // independent jobs run concurrently; results keep the job order
    let results: Vec<xilam_core::Result<DistReport>> = std::thread::scope(|s| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|&(f, n)| {
                let spec = p.spec(f);
                s.spawn(move || compare_distribution(&spec, n))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let reports = results.into_iter().collect::<xilam_core::Result<Vec<_>>>()?;
    match a.output {
        OutputFormat::Json => write_json(&envelope("dist", &reports)?, a.out.as_deref())?,
        OutputFormat::Csv => match &a.out {
            Some(dir) => {
                fs::create_dir_all(dir)?;
                for r in &reports {
                    let mut csv = Csv::new(&["k", "x_kn", "predicted", "err"]);
                    for q in &r.quantile_errors {
                        csv.row(&[q.k.to_string(), float(q.x_kn), float(q.predicted), float(q.abs_err)]);
                    }
                    csv.write(Some(&dir.join(format!("dist_{}_n{}.csv", r.family, r.n))))?;
                }
            }
            None => {
                let mut csv = Csv::new(&["family", "n", "k", "x_kn", "predicted", "err"]);
                for r in &reports {
                    for q in &r.quantile_errors {
                        csv.row(&[
                            r.family.to_string(),
                            r.n.to_string(),
                            q.k.to_string(),
                            float(q.x_kn),
                            float(q.predicted),
                            float(q.abs_err),
                        ]);
                    }
                }
                csv.write(None)?;
            }
        },
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct EigenPoint {
    x: f64,
    f: f64,
    residual: f64,
}

#[derive(Serialize)]
struct EigenOut {
    family: Family,
    exponent: f64,
    eigenvalue: f64,
    c1: f64,
    c2: f64,
    max_residual: f64,
    points: Vec<EigenPoint>,
}

pub fn eigen(a: &EigenArgs) -> CliResult<ExitCode> {
    if a.points == 0 {
        return Err(usage("points must be at least 1"));
    }
    let xs = residual_grid(a.points);
    let mut outs = Vec::new();
    for f in a.family.families() {
        let eigenvalue = a.eigenvalue.unwrap_or_else(|| f.imp().eigenvalue(a.exponent));
        let points = xs
            .iter()
            .map(|&x| {
                Ok(EigenPoint {
                    x,
                    f: eigenfunction(f, a.exponent, a.c1, a.c2, x)?,
                    residual: residual_at(f, a.exponent, eigenvalue, a.c1, a.c2, x)?,
                })
            })
            .collect::<xilam_core::Result<Vec<_>>>()?;
        let max_residual = points.iter().map(|p| p.residual.abs()).fold(0.0, f64::max);
        outs.push(EigenOut { family: f, exponent: a.exponent, eigenvalue, c1: a.c1, c2: a.c2, max_residual, points });
    }
    match a.output {
        OutputFormat::Json => write_json(&envelope("eigen", &outs)?, a.out.as_deref())?,
        OutputFormat::Csv => {
            let mut csv = Csv::new(&["family", "x", "f", "residual"]);
            for o in &outs {
                for p in &o.points {
                    csv.row(&[o.family.to_string(), float(p.x), float(p.f), float(p.residual)]);
                }
            }
            csv.write(a.out.as_deref())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
