//! Exhaustive enumeration of parameter boxes.
//!
//! A tuple `a` qualifies when `mu(a) >= min_mu`, which is equivalent to
//! `|x - M(a)| <= |x| · size(a)^(-min_mu)`. A machine-precision interval pass
//! discards every tuple that provably violates this inequality; the
//! survivors are measured with [`BigReal`](crate::numerics::BigReal)
//! arithmetic. Pruning never changes the result, only the work done.

mod interval;
mod rational;

use std::cmp::Ordering;
use std::ops::Range;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measure::{measure_in_base, Approximation, LogBase, MeasureKind, MeasureRecord, MeasureReport, Target};
use crate::modeldsl::Model;
use crate::numerics::{compare_guarded, rational_to_f64, BigReal, Ordering3, DEFAULT_PRECISION};

pub use interval::{Iv, IvDomain};
pub use rational::{best_rational, scan_rational_intelligent, ScanHit};

/// Default cap on the number of tuples in a search box.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Precision doublings tried on a tuple whose measure straddles `min_mu`.
const RETRIES: u32 = 2;

#[derive(Debug, Clone)]
pub struct SearchSpec {
    pub model: Model,
    pub target: Target,
    /// Inclusive range per parameter; a range must not contain 0.
    pub bounds: Vec<(i64, i64)>,
    pub top_k: usize,
    pub min_mu: f64,
    /// Also enumerate the mirror image `[-hi, -lo]` of every range.
    pub allow_negative: bool,
    pub precision_bits: usize,
    pub budget: u64,
    pub workers: usize,
}

impl SearchSpec {
    /// A spec with the default settings: ten results, `min_mu = 1`,
    /// negative parameters for every model but `a1/a2`, 256 bits, one
    /// worker per available core.
    pub fn new(model: Model, target: impl Into<Target>, bounds: Vec<(i64, i64)>) -> SearchSpec {
        let allow_negative = !model.is_rational_model();
        SearchSpec {
            model,
            target: target.into(),
            bounds,
            top_k: 10,
            min_mu: 1.0,
            allow_negative,
            precision_bits: DEFAULT_PRECISION,
            budget: DEFAULT_BUDGET,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.bounds.len() != self.model.arity() {
            return Err(Error::ArityMismatch { expected: self.model.arity(), got: self.bounds.len() });
        }
        for (i, &(lo, hi)) in self.bounds.iter().enumerate() {
            if lo > hi || (lo <= 0 && hi >= 0) {
                return Err(Error::InvalidArgument(format!(
                    "bound {} = [{lo}, {hi}] must be a nonempty range excluding 0",
                    i + 1
                )));
            }
            if lo == i64::MIN {
                return Err(Error::InvalidArgument(format!("bound {} is out of range", i + 1)));
            }
        }
        if self.top_k == 0 {
            return Err(Error::InvalidArgument("top_k must be positive".into()));
        }
        if !self.min_mu.is_finite() {
            return Err(Error::InvalidArgument("min_mu must be finite".into()));
        }
        Ok(())
    }

    fn value_lists(&self) -> Vec<Vec<i64>> {
        self.bounds
            .iter()
            .map(|&(lo, hi)| {
                let mut v: Vec<i64> = (lo..=hi).collect();
                if self.allow_negative {
                    v.extend((-hi..=-lo).rev());
                }
                v.sort_unstable();
                v
            })
            .collect()
    }

    /// Number of tuples in the box.
    pub fn volume(&self) -> u128 {
        self.bounds
            .iter()
            .map(|&(lo, hi)| {
                let n = (hi as i128 - lo as i128 + 1) as u128;
                if self.allow_negative { 2 * n } else { n }
            })
            .product()
    }
}

/// One measured tuple.
#[derive(Debug, Clone)]
pub struct SearchEntry {
    pub params: Vec<i64>,
    pub report: MeasureReport,
}

impl SearchEntry {
    pub fn to_record(&self, spec: &SearchSpec) -> MeasureRecord {
        let approx = Approximation {
            model: spec.model.clone(),
            params: self.params.iter().map(|&a| BigInt::from(a)).collect(),
            target: spec.target.clone(),
        };
        self.report.to_record(&approx)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub tuples_total: u64,
    /// Tuples measured at full precision.
    pub tuples_examined: u64,
    /// Tuples discarded by the interval prefilter.
    pub tuples_pruned: u64,
    pub skipped_inadmissible: u64,
    /// Tuples whose evaluation failed (singular division, domain errors,
    /// target indistinguishable from the model value).
    pub skipped_errors: u64,
    pub retried: u64,
}

impl SearchStats {
    fn absorb(&mut self, o: &SearchStats) {
        self.tuples_total += o.tuples_total;
        self.tuples_examined += o.tuples_examined;
        self.tuples_pruned += o.tuples_pruned;
        self.skipped_inadmissible += o.skipped_inadmissible;
        self.skipped_errors += o.skipped_errors;
        self.retried += o.retried;
    }
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    /// Qualifying tuples, best first, at most `top_k`.
    pub entries: Vec<SearchEntry>,
    /// Tuples whose comparison with `min_mu` stayed open after retries,
    /// ordered by parameters.
    pub undecided: Vec<SearchEntry>,
    pub stats: SearchStats,
}

struct Ranked {
    key: BigRational,
    entry: SearchEntry,
}

fn rank(a: &Ranked, b: &Ranked) -> Ordering {
    b.key
        .cmp(&a.key)
        .then_with(|| a.entry.report.size.cmp(&b.entry.report.size))
        .then_with(|| a.entry.params.cmp(&b.entry.params))
}

fn mid_key(x: &BigReal) -> BigRational {
    let (lo, hi) = x.endpoints();
    (lo + hi) / BigRational::from_integer(BigInt::from(2))
}

struct Prefilter {
    x: Iv,
    x_abs_hi: f64,
    min_mu: f64,
}

impl Prefilter {
    fn new(x: &BigReal, min_mu: f64) -> Prefilter {
        let (lo, hi) = x.endpoints();
        let lo = rational_to_f64(&lo).next_down().next_down();
        let hi = rational_to_f64(&hi).next_up().next_up();
        let x = Iv { lo, hi };
        Prefilter { x, x_abs_hi: x.abs().hi, min_mu }
    }

    /// True only when the tuple certainly misses the threshold.
    fn prunes(&self, model: &Model, params: &[i64]) -> bool {
        let v = match model.expr().eval_in(&IvDomain { params }) {
            Ok(v) if v.is_finite() => v,
            _ => return false,
        };
        let err_lo = self.x.sub(&v).abs().lo;
        if err_lo.is_nan() || err_lo <= 0.0 {
            return false;
        }
        let ls: f64 = params.iter().map(|a| (a.unsigned_abs() as f64).ln()).sum();
        let slack = ls.abs() * 1e-12 + 1e-300;
        let ls = if self.min_mu >= 0.0 { ls - slack } else { ls + slack };
        let t = (-self.min_mu * ls).exp() * (1.0 + 1e-9);
        let t_hi = (self.x_abs_hi * t).next_up();
        t_hi.is_finite() && err_lo > t_hi
    }
}

enum Outcome {
    Skip,
    Pruned,
    Error,
    Below,
    Qualified(SearchEntry, BigRational),
    Undecided(SearchEntry),
}

struct Runner<'a> {
    spec: &'a SearchSpec,
    lists: Vec<Vec<i64>>,
    prefilter: Option<Prefilter>,
    min_mu: BigReal,
}

#[derive(Default)]
struct Partial {
    top: Vec<Ranked>,
    undecided: Vec<SearchEntry>,
    stats: SearchStats,
}

impl Runner<'_> {
    fn tuple(&self, mut idx: u64) -> Vec<i64> {
        let mut out = vec![0; self.lists.len()];
        for (slot, list) in out.iter_mut().zip(&self.lists).rev() {
            let n = list.len() as u64;
            *slot = list[(idx % n) as usize];
            idx /= n;
        }
        out
    }

    fn visit(&self, params: Vec<i64>, stats: &mut SearchStats) -> Outcome {
        if params.iter().all(|a| a.unsigned_abs() == 1) {
            return Outcome::Skip;
        }
        if let Some(pf) = &self.prefilter {
            if pf.prunes(&self.spec.model, &params) {
                return Outcome::Pruned;
            }
        }
        let big: Vec<BigInt> = params.iter().map(|&a| BigInt::from(a)).collect();
        let approx = Approximation {
            model: self.spec.model.clone(),
            params: big,
            target: self.spec.target.clone(),
        };
        let mut p = self.spec.precision_bits;
        for attempt in 0..=RETRIES {
            let report = match measure_in_base(&approx, MeasureKind::Mu, p, LogBase::Natural) {
                Ok(r) => r,
                Err(_) => return Outcome::Error,
            };
            let threshold = self.min_mu.with_precision(p);
            match compare_guarded(&report.mu, &threshold) {
                Ordering3::Less => return Outcome::Below,
                Ordering3::Greater => {
                    let key = mid_key(&report.mu);
                    return Outcome::Qualified(SearchEntry { params, report }, key);
                }
                Ordering3::Indeterminate if attempt == RETRIES => {
                    return Outcome::Undecided(SearchEntry { params, report });
                }
                Ordering3::Indeterminate => {
                    stats.retried += 1;
                    p *= 2;
                }
            }
        }
        unreachable!("the last attempt always returns")
    }

    fn run_range(&self, range: Range<u64>) -> Partial {
        let k = self.spec.top_k;
        let mut part = Partial::default();
        for idx in range {
            part.stats.tuples_total += 1;
            let params = self.tuple(idx);
            match self.visit(params, &mut part.stats) {
                Outcome::Skip => part.stats.skipped_inadmissible += 1,
                Outcome::Pruned => part.stats.tuples_pruned += 1,
                Outcome::Error => {
                    part.stats.tuples_examined += 1;
                    part.stats.skipped_errors += 1;
                }
                Outcome::Below => part.stats.tuples_examined += 1,
                Outcome::Qualified(entry, key) => {
                    part.stats.tuples_examined += 1;
                    part.top.push(Ranked { key, entry });
                    if part.top.len() >= 2 * k + 16 {
                        part.top.sort_by(rank);
                        part.top.truncate(k);
                    }
                }
                Outcome::Undecided(entry) => {
                    part.stats.tuples_examined += 1;
                    part.undecided.push(entry);
                }
            }
        }
        part.top.sort_by(rank);
        part.top.truncate(k);
        part
    }
}

fn run(spec: &SearchSpec, prune: bool, workers: usize) -> Result<SearchResult> {
    spec.validate()?;
    let volume = spec.volume();
    if volume > spec.budget as u128 {
        return Err(Error::BudgetExceeded(format!(
            "box holds {volume} tuples, budget is {}",
            spec.budget
        )));
    }
    let total = volume as u64;
    let x = spec.target.value(spec.precision_bits);
    let runner = Runner {
        spec,
        lists: spec.value_lists(),
        prefilter: prune.then(|| Prefilter::new(&x, spec.min_mu)),
        min_mu: BigReal::from_f64(spec.min_mu, spec.precision_bits),
    };
    let workers = workers.max(1);
    let chunk = (total / (workers as u64 * 8)).clamp(1, 1 << 20);
    let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();
    let parts: Vec<Partial> = if workers == 1 {
        starts.iter().map(|&s| runner.run_range(s..(s + chunk).min(total))).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("cannot start workers: {e}")))?;
        pool.install(|| {
            starts
                .par_iter()
                .map(|&s| runner.run_range(s..(s + chunk).min(total)))
                .collect()
        })
    };
    let mut stats = SearchStats::default();
    let mut top = Vec::new();
    let mut undecided = Vec::new();
    for p in parts {
        stats.absorb(&p.stats);
        top.extend(p.top);
        undecided.extend(p.undecided);
    }
    top.sort_by(rank);
    top.truncate(spec.top_k);
    undecided.sort_by(|a: &SearchEntry, b| a.params.cmp(&b.params));
    Ok(SearchResult {
        entries: top.into_iter().map(|r| r.entry).collect(),
        undecided,
        stats,
    })
}

/// Searches the whole box with pruning, splitting the work over
/// `spec.workers` threads. The result does not depend on the worker count.
pub fn exhaustive_search(spec: &SearchSpec) -> Result<SearchResult> {
    run(spec, true, spec.workers)
}

/// Prune-free single-threaded enumeration of the same box, for checking
/// [`exhaustive_search`].
pub fn reference_search(spec: &SearchSpec) -> Result<SearchResult> {
    run(spec, false, 1)
}

/// Size of a tuple as a big integer, for callers holding `i64` parameters.
pub fn tuple_size(params: &[i64]) -> BigUint {
    params.iter().map(|a| BigUint::from(a.unsigned_abs())).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modeldsl::parse_model;
    use crate::numerics::ConstantId;

    fn spec(model: &str, bounds: Vec<(i64, i64)>, target: ConstantId) -> SearchSpec {
        let mut s = SearchSpec::new(parse_model(model).unwrap(), target, bounds);
        s.workers = 1;
        s
    }

    fn params(r: &SearchResult) -> Vec<Vec<i64>> {
        r.entries.iter().map(|e| e.params.clone()).collect()
    }

    #[test]
    fn rational_pi() {
        let mut s = spec("a1/a2", vec![(1, 400), (1, 120)], ConstantId::Pi);
        s.top_k = 3;
        let r = exhaustive_search(&s).unwrap();
        let ps = params(&r);
        assert!(ps.contains(&vec![355, 113]), "{ps:?}");
        assert!(ps.contains(&vec![22, 7]), "{ps:?}");
        assert_eq!(r.stats.tuples_total, 400 * 120);
        assert_eq!(
            r.stats.tuples_total,
            r.stats.tuples_examined + r.stats.tuples_pruned + r.stats.skipped_inadmissible
        );
        assert!(r.stats.tuples_pruned > r.stats.tuples_total / 2);
    }

    #[test]
    fn two_roots() {
        let r = exhaustive_search(&spec("sqrt(a1)+sqrt(a2)", vec![(1, 50), (1, 50)], ConstantId::Pi)).unwrap();
        assert_eq!(r.entries[0].params, vec![2, 3]);
        assert!(r.entries[0].report.mu_text().starts_with("3.63"));
    }

    #[test]
    fn nothing_beats_22_over_7() {
        let mut s = spec("a1/a2", vec![(1, 40), (1, 7)], ConstantId::Pi);
        s.top_k = 1000;
        s.min_mu = 0.0;
        let r = exhaustive_search(&s).unwrap();
        let best = r.entries.iter().find(|e| e.params == vec![22, 7]).unwrap();
        for e in &r.entries {
            assert!(compare_guarded(&e.report.error, &best.report.error) != Ordering3::Less, "{:?}", e.params);
        }
    }

    #[test]
    fn matches_reference_and_worker_counts() {
        let mut s = spec("a1 + a2*sqrt(a3)", vec![(1, 12), (1, 9), (2, 7)], ConstantId::E);
        s.top_k = 25;
        let reference = reference_search(&s).unwrap();
        for w in [1, 2, 8] {
            s.workers = w;
            let r = exhaustive_search(&s).unwrap();
            assert_eq!(params(&r), params(&reference), "workers {w}");
            assert_eq!(r.stats, exhaustive_search(&s).unwrap().stats);
        }
    }

    #[test]
    fn validation_and_budget() {
        let mut s = spec("a1/a2", vec![(-3, 4), (1, 5)], ConstantId::Pi);
        assert!(matches!(exhaustive_search(&s), Err(Error::InvalidArgument(_))));
        s.bounds = vec![(1, 100_000), (1, 100_000)];
        assert!(matches!(exhaustive_search(&s), Err(Error::BudgetExceeded(_))));
        s.bounds = vec![(1, 5)];
        assert!(matches!(exhaustive_search(&s), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn negative_mirror() {
        let mut s = spec("a1/a2", vec![(1, 3), (1, 2)], ConstantId::Pi);
        assert!(!s.allow_negative);
        assert_eq!(s.volume(), 6);
        s.allow_negative = true;
        assert_eq!(s.volume(), 24);
        assert_eq!(s.value_lists()[0], vec![-3, -2, -1, 1, 2, 3]);
    }
}
