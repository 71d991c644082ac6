use serde::Serialize;
use thiserror::Error;

use approxmu_core::contfrac::{
    cf_expand, convergent_pairs, eval_finite_cf, is_convergent_of, periodic_to_surd, surd_eval,
    theorem1_candidates, theorem2_candidates, Candidate, FiniteCF, PeriodicCF, QuadraticSurd,
};
use approxmu_core::families::{liouville_mu_series_at, sqrt2_family, sqrt5_family, FamilyReport};
use approxmu_core::measure::{
    measure_with_retry, mu, rational_intelligent, Approximation, MeasureKind, MeasureRecord, Target,
    Verdict, DEFAULT_RETRIES,
};
use approxmu_core::modeldsl::parse_model;
use approxmu_core::records::{ser_bigint, ser_bigints};
use approxmu_core::search::{exhaustive_search, SearchSpec, SearchStats};
use approxmu_core::{BigInt, BigRational, BigReal};

use crate::output::{Report, Table};
use crate::{CfOp, Command, FamilyArg, MeasureArgs, SearchArgs, EXIT_AUDIT};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] approxmu_core::Error),
    #[error("{0}")]
    Input(String),
}

type Outcome = Result<(Report, u8), CliError>;

pub fn run(cmd: &Command) -> Outcome {
    match cmd {
        Command::Measure(a) => measure(a),
        Command::Cf { op } => cf(op),
        Command::Search(a) => search(a),
        Command::Families { family, max_n } => families(*family, *max_n),
        Command::Liouville { k_max, precision } => liouville(*k_max, *precision),
        Command::Theorems { target, max_n, precision } => theorems(target, *max_n, *precision),
    }
}

fn int_list(flag: &str, text: &str) -> Result<Vec<BigInt>, CliError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<BigInt>()
                .map_err(|_| CliError::Input(format!("--{flag}: `{}` is not an integer", s.trim())))
        })
        .collect()
}

fn range(flag: &str, text: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Input(format!("--{flag}: `{text}` is not a range lo..hi"));
    let (lo, hi) = text.trim().split_once("..").ok_or_else(bad)?;
    let lo = lo.trim().parse().map_err(|_| bad())?;
    let hi = hi.trim().parse().map_err(|_| bad())?;
    Ok((lo, hi))
}

fn target(text: &str) -> Result<Target, CliError> {
    Ok(text.parse::<Target>()?)
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Intelligent => 0,
        Verdict::Naive => 1,
        Verdict::Indeterminate => 2,
    }
}

/// Runs `f` at `precision`, doubling it while the enclosure is too coarse.
fn with_more_precision<T>(
    precision: usize,
    f: impl Fn(usize) -> approxmu_core::Result<T>,
) -> approxmu_core::Result<T> {
    let mut p = precision;
    let mut r = f(p);
    for _ in 0..DEFAULT_RETRIES {
        if !matches!(r, Err(approxmu_core::Error::InsufficientPrecision(_))) {
            break;
        }
        p *= 2;
        r = f(p);
    }
    r
}

fn measure(a: &MeasureArgs) -> Outcome {
    let model = parse_model(&a.model)?;
    let approx = Approximation::new(model, int_list("params", &a.params)?, target(&a.target)?)?;
    let kind = if a.mu_prime { MeasureKind::MuPrime } else { MeasureKind::Mu };
    let report = measure_with_retry(&approx, kind, a.precision, DEFAULT_RETRIES)?;
    let record = report.to_record(&approx);
    let mut out = Report::default();
    let mu_head = if a.mu_prime { "μ'" } else { "μ" };
    let mut t = Table::new(&["Number", "Approximation", "Params", "Error", mu_head, "Verdict"]);
    t.push(vec![
        record.target.clone(),
        record.model.clone(),
        join(&approx.params),
        record.error.clone(),
        record.mu.clone(),
        record.verdict.to_string(),
    ]);
    out.table(t);
    out.record("measure", record);
    Ok((out, verdict_code(report.verdict)))
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

#[derive(Serialize)]
struct ExpansionRecord {
    target: String,
    cf: String,
    #[serde(serialize_with = "ser_bigints")]
    terms: Vec<BigInt>,
    reliable_count: usize,
    truncated: bool,
    precision_bits: usize,
}

#[derive(Serialize)]
struct ConvergentRecord {
    index: usize,
    #[serde(serialize_with = "ser_bigint")]
    p: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    q: BigInt,
    fraction: String,
}

#[derive(Serialize)]
struct ValueRecord {
    cf: String,
    value: String,
    decimal: String,
}

#[derive(Serialize)]
struct ClosedFormRecord {
    cf: String,
    surd: String,
    nested: Option<String>,
    decimal: String,
}

fn cf(op: &CfOp) -> Outcome {
    let mut out = Report::default();
    match op {
        CfOp::Expand { target: t, terms, precision } => {
            let tg = target(t)?;
            let (e, p) = with_more_precision(*precision, |p| Ok((cf_expand(&tg.value(p), *terms)?, p)))?;
            let mut table = Table::new(&["Number", "Expansion", "Certain terms"]);
            table.push(vec![tg.id(), e.cf.to_string(), e.reliable_count.to_string()]);
            out.table(table);
            out.record(
                "cf_expansion",
                ExpansionRecord {
                    target: tg.id(),
                    cf: e.cf.to_string(),
                    terms: e.cf.terms().to_vec(),
                    reliable_count: e.reliable_count,
                    truncated: e.truncated,
                    precision_bits: p,
                },
            );
        }
        CfOp::Convergents { target: t, terms, cf, precision } => {
            let finite = match (t, cf) {
                (_, Some(text)) => text.parse::<FiniteCF>()?,
                (Some(t), None) => {
                    let tg = target(t)?;
                    with_more_precision(*precision, |p| cf_expand(&tg.value(p), *terms))?.cf
                }
                (None, None) => return Err(CliError::Input("either --target or --cf is required".into())),
            };
            let mut table = Table::new(&["k", "a_k", "p_k/q_k"]).titled(finite.to_string());
            for (k, ((p, q), a)) in convergent_pairs(&finite).into_iter().zip(finite.terms()).enumerate() {
                let fraction = format!("{p}/{q}");
                table.push(vec![k.to_string(), a.to_string(), fraction.clone()]);
                out.record("convergent", ConvergentRecord { index: k, p, q, fraction });
            }
            out.table(table);
        }
        CfOp::Eval { terms } => {
            let finite = FiniteCF::new(int_list("terms", terms)?)?;
            let v = eval_finite_cf(&finite);
            let decimal = BigReal::from_rational(&v, 128).to_fixed(20);
            let mut table = Table::new(&["Continued fraction", "Value", "Decimal"]);
            table.push(vec![finite.to_string(), v.to_string(), decimal.clone()]);
            out.table(table);
            out.record("cf_value", ValueRecord { cf: finite.to_string(), value: v.to_string(), decimal });
        }
        CfOp::ClosedForm { pre, period, digits } => {
            let pcf = PeriodicCF::new(int_list("pre", pre)?, int_list("period", period)?)?;
            let surd = periodic_to_surd(&pcf)?;
            let nested = match pcf.preperiod().split_first() {
                Some((a0, rest)) => {
                    let tail = periodic_to_surd(&PeriodicCF::new(rest.to_vec(), pcf.period().to_vec())?)?;
                    Some(format!("{a0} + 1/({})", root_first(&tail)))
                }
                None => None,
            };
            let bits = (*digits as f64 * std::f64::consts::LOG2_10) as usize + 64;
            let decimal = surd_eval(&surd, bits).to_fixed(*digits);
            let mut table = Table::new(&["Continued fraction", "Closed form", "Nested", "Decimal"]);
            table.push(vec![
                pcf.to_string(),
                surd.to_string(),
                nested.clone().unwrap_or_default(),
                decimal.clone(),
            ]);
            out.table(table);
            out.record(
                "closed_form",
                ClosedFormRecord { cf: pcf.to_string(), surd: surd.to_string(), nested, decimal },
            );
        }
    }
    Ok((out, 0))
}

/// `(P + Q√D)/R` written with the radical first, e.g. `√65 - 1`.
fn root_first(s: &QuadraticSurd) -> String {
    let zero = BigInt::from(0);
    let q = s.q().magnitude().to_string();
    let mut num = if q == "1" { format!("√{}", s.d()) } else { format!("{q}√{}", s.d()) };
    if s.q() < &zero {
        num.insert(0, '-');
    }
    if s.p() < &zero {
        num = format!("{num} - {}", s.p().magnitude());
    } else if s.p() > &zero {
        num = format!("{num} + {}", s.p());
    }
    if s.r() == &BigInt::from(1) {
        num
    } else {
        format!("({num})/{}", s.r())
    }
}

#[derive(Serialize)]
struct HitRecord {
    rank: usize,
    #[serde(flatten)]
    measure: MeasureRecord,
}

#[derive(Serialize)]
struct SearchSummary {
    model: String,
    target: String,
    volume: String,
    workers: usize,
    allow_negative: bool,
    hits: usize,
    undecided: usize,
    #[serde(flatten)]
    stats: SearchStats,
}

fn search(a: &SearchArgs) -> Outcome {
    let model = parse_model(&a.model)?;
    let bounds = a
        .bounds
        .split(',')
        .map(|r| range("bounds", r))
        .collect::<Result<Vec<_>, _>>()?;
    let mut spec = SearchSpec::new(model, target(&a.target)?, bounds);
    spec.top_k = a.top_k;
    spec.min_mu = a.min_mu;
    spec.precision_bits = a.precision;
    if a.allow_negative {
        spec.allow_negative = true;
    }
    if a.positive_only {
        spec.allow_negative = false;
    }
    if let Some(b) = a.budget {
        spec.budget = b;
    }
    if let Some(w) = a.workers {
        spec.workers = w;
    }
    let result = exhaustive_search(&spec)?;
    let mut out = Report::default();
    let mut table = Table::new(&["Rank", "Params", "Error", "μ", "Verdict"])
        .titled(format!("{} ≃ {}", spec.target.id(), spec.model.canonical_text()));
    for (i, e) in result.entries.iter().enumerate() {
        let measure = e.to_record(&spec);
        table.push(vec![
            (i + 1).to_string(),
            join(&e.params),
            measure.error.clone(),
            measure.mu.clone(),
            measure.verdict.to_string(),
        ]);
        out.record("search_hit", HitRecord { rank: i + 1, measure });
    }
    for e in &result.undecided {
        let measure = e.to_record(&spec);
        table.push(vec!["?".into(), join(&e.params), measure.error.clone(), measure.mu.clone(), measure.verdict.to_string()]);
        out.record("search_undecided", measure);
    }
    out.table(table);
    let s = &result.stats;
    let mut stats = Table::new(&["Total", "Examined", "Pruned", "Inadmissible", "Errors", "Retried"]);
    stats.push(
        [s.tuples_total, s.tuples_examined, s.tuples_pruned, s.skipped_inadmissible, s.skipped_errors, s.retried]
            .iter()
            .map(u64::to_string)
            .collect(),
    );
    out.table(stats);
    out.record(
        "search_summary",
        SearchSummary {
            model: spec.model.canonical_text(),
            target: spec.target.id(),
            volume: spec.volume().to_string(),
            workers: spec.workers,
            allow_negative: spec.allow_negative,
            hits: result.entries.len(),
            undecided: result.undecided.len(),
            stats: result.stats.clone(),
        },
    );
    Ok((out, 0))
}

fn families(family: FamilyArg, max_n: u32) -> Outcome {
    let rows: Vec<FamilyReport> = match family {
        FamilyArg::Sqrt5 => sqrt5_family(max_n)?,
        FamilyArg::Sqrt2 => sqrt2_family(max_n)?,
    };
    let mut out = Report::default();
    let mut table = Table::new(&["n", "Fraction", "gcd", "Reduced", "Error", "μ", "Verdict", "Convergent", "CF"]);
    let mut code = 0;
    for r in &rows {
        let rec = r.to_record();
        if !rec.identity_holds {
            code = EXIT_AUDIT;
        }
        table.push(vec![
            rec.index.to_string(),
            rec.fraction.clone(),
            rec.gcd.clone(),
            yes_no(rec.reduced),
            rec.measure.error.clone(),
            rec.measure.mu.clone(),
            rec.measure.verdict.to_string(),
            yes_no(rec.is_convergent),
            rec.cf.clone().unwrap_or_default(),
        ]);
        out.record("family", rec);
    }
    out.table(table);
    Ok((out, code))
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn liouville(k_max: u32, precision: usize) -> Outcome {
    let rows = liouville_mu_series_at(k_max, precision)?;
    let mut out = Report::default();
    let mut table = Table::new(&["k", "Denominator", "μ", "Verdict"]);
    for r in &rows {
        let rec = r.to_record();
        table.push(vec![
            rec.k.to_string(),
            format!("10^{}", rec.denominator_exponent),
            rec.mu.clone(),
            rec.verdict.to_string(),
        ]);
        out.record("liouville", rec);
    }
    out.table(table);
    Ok((out, 0))
}

#[derive(Serialize)]
struct CandidateRecord {
    target: String,
    theorem: u8,
    n: usize,
    cf: String,
    fraction: String,
    mu: String,
    verdict: Verdict,
    is_convergent: bool,
    passed: bool,
}

#[derive(Serialize)]
struct AuditRecord {
    target: String,
    max_n: usize,
    candidates: usize,
    failures: usize,
    passed: bool,
}

fn theorems(t: &str, max_n: usize, precision: usize) -> Outcome {
    let tg = target(t)?;
    let (x, t1, t2) = with_more_precision(precision, |p| {
        let x = tg.value(p);
        let t1 = theorem1_candidates(&x, max_n)?;
        let t2 = theorem2_candidates(&x, max_n)?;
        Ok((x, t1, t2))
    })?;
    let mut out = Report::default();
    let mut table = Table::new(&["Theorem", "n", "CF", "Fraction", "μ", "Verdict", "Convergent", "Check"])
        .titled(format!("{} (n ≤ {max_n})", tg.id()));
    let mut failures = 0;
    let all: Vec<(u8, &Candidate)> = t1.iter().map(|c| (1, c)).chain(t2.iter().map(|c| (2, c))).collect();
    for &(theorem, c) in &all {
        let rec = audit(&tg, &x, theorem, c)?;
        if !rec.passed {
            failures += 1;
        }
        table.push(vec![
            theorem.to_string(),
            rec.n.to_string(),
            rec.cf.clone(),
            rec.fraction.clone(),
            rec.mu.clone(),
            rec.verdict.to_string(),
            yes_no(rec.is_convergent),
            if rec.passed { "ok" } else { "FAILED" }.to_string(),
        ]);
        out.record("theorem_candidate", rec);
    }
    out.table(table);
    out.record(
        "theorem_audit",
        AuditRecord { target: tg.id(), max_n, candidates: all.len(), failures, passed: failures == 0 },
    );
    Ok((out, if failures == 0 { 0 } else { EXIT_AUDIT }))
}

fn audit(tg: &Target, x: &BigReal, theorem: u8, c: &Candidate) -> Result<CandidateRecord, CliError> {
    let v: &BigRational = &c.value;
    let verdict = rational_intelligent(x, v.numer(), v.denom())?;
    let is_convergent = is_convergent_of(v, x)?;
    let m = mu(&Approximation::rational(v.numer().clone(), v.denom().clone(), tg.clone())?, x.precision_bits())?;
    Ok(CandidateRecord {
        target: tg.id(),
        theorem,
        n: c.n,
        cf: c.cf.to_string(),
        fraction: format!("{}/{}", v.numer(), v.denom()),
        mu: m.mu_text(),
        passed: verdict == Verdict::Intelligent && m.verdict == Verdict::Intelligent && !is_convergent,
        verdict,
        is_convergent,
    })
}
