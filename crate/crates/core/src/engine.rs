//! The outer detection loop.
//!
//! Each repetition draws `(T, z, q)` from its own ChaCha8 stream, lists the
//! contributing assignments branch by branch, and sums their signed
//! determinants. Branch sizes are known from the GF(2) nullities before any
//! determinant is computed, so the abort test is exact and does not depend
//! on scheduling. Work inside a batch runs on a rayon pool; ring addition is
//! commutative, so the worker count never changes a report.

use std::fmt;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::EngineError;
use crate::fingerprint::{
    derive_params, sample_point, LaplacianBuilder, ParamOverrides, Params, QVector, SamplePoint,
};
use crate::graph::{DirectedGraph, SplitGraph};
use crate::oracle::{is_hamiltonian_bruteforce, BRUTEFORCE_MAX_VERTICES};
use crate::ring::RingElement;
use crate::sieve::{
    abort_threshold, expected_contributing_count, AssignmentLayout, Branch, Branches,
};

/// Graphs with at most this many vertices go to the exact oracle.
pub const DEFAULT_ORACLE_THRESHOLD: usize = 10;

/// Largest number of determinants handed to one worker at a time.
const CHUNK: u128 = 256;
/// A batch is closed once it holds this many terms.
const BATCH_TERMS: u128 = 1 << 14;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    pub overrides: ParamOverrides,
    pub master_seed: u64,
    /// Threads in the evaluation pool; 0 means one per core.
    pub workers: usize,
    /// Input vertex to split into `s` and `t`.
    pub split_vertex: usize,
    pub oracle_threshold: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            overrides: ParamOverrides::default(),
            master_seed: 0,
            workers: 1,
            split_vertex: 0,
            oracle_threshold: DEFAULT_ORACLE_THRESHOLD,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "YES",
            Verdict::No => "NO",
        })
    }
}

/// How a verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// A vertex without in- or out-arcs, or fewer than two vertices.
    ShortCircuit,
    Oracle,
    Sieve,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::ShortCircuit => "short-circuit",
            Route::Oracle => "oracle",
            Route::Sieve => "sieve",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepetitionStats {
    /// Terms evaluated; `threshold + 1` when the repetition aborted.
    pub terms_streamed: u128,
    pub expected_terms: BigRational,
    /// `floor(abort_factor * expected_terms)`.
    pub threshold: u128,
    pub aborted: bool,
    pub nonzero: bool,
    /// Linear systems solved.
    pub systems: u64,
    pub infeasible: u64,
    pub tau_prime: usize,
    pub t_in_t: bool,
}

#[derive(Clone, Debug)]
pub struct RepetitionOutcome {
    pub stats: RepetitionStats,
    /// The accumulated value, absent after an abort.
    pub value: Option<RingElement>,
}

#[derive(Clone, Debug)]
pub struct DetectionReport {
    pub verdict: Verdict,
    pub route: Route,
    /// Derived parameters; only set on the sieve route.
    pub params: Option<Params>,
    pub repetitions_run: usize,
    pub per_rep: Vec<RepetitionStats>,
    pub wall_time: Duration,
}

impl DetectionReport {
    pub fn aborted_count(&self) -> usize {
        self.per_rep.iter().filter(|r| r.aborted).count()
    }
}

/// Ring addition. Panics when the operands live in different rings.
pub fn accumulate(partial: &RingElement, term: &RingElement) -> RingElement {
    partial + term
}

/// The sample point and perturbation of repetition `rep`.
pub fn draw_sample(
    g: &SplitGraph,
    p: &Params,
    master_seed: u64,
    rep: u64,
) -> (SamplePoint, QVector) {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(rep);
    let sp = sample_point(g, p, &mut rng);
    let q = QVector::sample(g, &sp, &mut rng);
    (sp, q)
}

fn sum_branches(
    builder: &LaplacianBuilder<'_>,
    layout: &AssignmentLayout,
    q: &QVector,
    batch: &[Branch],
) -> Result<RingElement, EngineError> {
    let mut work = Vec::new();
    for (i, b) in batch.iter().enumerate() {
        let total = b.term_count();
        let mut start = 0;
        while start < total {
            let end = (start + CHUNK).min(total);
            work.push((i, start, end));
            start = end;
        }
    }
    let zero = || RingElement::zero(builder.ring_params());
    work.into_par_iter()
        .map(|(i, start, end)| {
            let b = &batch[i];
            let mut stream = b.solution.stream_range(start, end);
            let mut acc = RingElement::zero(builder.ring_params());
            while let Some(free) = stream.next_ref() {
                let y = layout.assemble(&b.y_star, free);
                acc += &builder.term(q, &y)?;
            }
            Ok(acc)
        })
        .try_reduce(zero, |a, b| Ok(accumulate(&a, &b)))
}

/// Lists and sums the contributing terms at one `(T, z, q)`, aborting once
/// the listed count would exceed `floor(abort_factor * E[Y])`. Runs on the
/// current rayon pool.
pub fn run_repetition(
    g: &SplitGraph,
    p: &Params,
    sp: &SamplePoint,
    q: &QVector,
) -> Result<RepetitionOutcome, EngineError> {
    let n = g.input_vertex_count();
    let tau_prime = sp.tau_prime(g);
    let t_in_t = sp.contains_t(g);
    let expected = expected_contributing_count(n, tau_prime, t_in_t, p.k);
    let threshold = abort_threshold(&expected, p.abort_factor);

    let builder = LaplacianBuilder::new(g, sp, p.ring_params())?;
    let layout = AssignmentLayout::new(g, sp);
    let mut branches = Branches::new(g, sp, q, p.k);
    let mut total = RingElement::zero(p.ring_params());
    let mut streamed: u128 = 0;
    let mut aborted = false;
    let mut batch = Vec::new();
    let mut batch_terms: u128 = 0;
    loop {
        let next = branches.next();
        if let Some(b) = &next {
            batch_terms = batch_terms.saturating_add(b.term_count());
            if streamed.saturating_add(batch_terms) > threshold {
                aborted = true;
                break;
            }
        }
        let done = next.is_none();
        batch.extend(next);
        if done || batch_terms >= BATCH_TERMS {
            total += &sum_branches(&builder, &layout, q, &batch)?;
            streamed += batch_terms;
            batch.clear();
            batch_terms = 0;
        }
        if done {
            break;
        }
    }

    let stats = RepetitionStats {
        terms_streamed: if aborted {
            threshold.saturating_add(1)
        } else {
            streamed
        },
        expected_terms: expected,
        threshold,
        aborted,
        nonzero: !aborted && !total.is_zero(),
        systems: branches.systems_solved(),
        infeasible: branches.infeasible(),
        tau_prime,
        t_in_t,
    };
    Ok(RepetitionOutcome {
        stats,
        value: (!aborted).then_some(total),
    })
}

/// The sieved sum without an abort threshold, on the calling thread.
pub fn evaluate_sieved(
    g: &SplitGraph,
    sp: &SamplePoint,
    q: &QVector,
    p: &Params,
) -> Result<RingElement, EngineError> {
    let builder = LaplacianBuilder::new(g, sp, p.ring_params())?;
    let layout = AssignmentLayout::new(g, sp);
    let mut total = RingElement::zero(p.ring_params());
    for b in Branches::new(g, sp, q, p.k) {
        let mut stream = b.solution.stream();
        while let Some(free) = stream.next_ref() {
            total += &builder.term(q, &layout.assemble(&b.y_star, free))?;
        }
    }
    Ok(total)
}

pub fn decide_hamiltonicity(
    g: &DirectedGraph,
    cfg: &EngineConfig,
) -> Result<DetectionReport, EngineError> {
    let start = Instant::now();
    let n = g.vertex_count();
    let report = |verdict, route, params, per_rep: Vec<RepetitionStats>| DetectionReport {
        verdict,
        route,
        params,
        repetitions_run: per_rep.len(),
        per_rep,
        wall_time: start.elapsed(),
    };

    if cfg.split_vertex >= n.max(1) {
        return Err(crate::error::GraphError::NoSuchVertex {
            vertex: cfg.split_vertex,
            vertex_count: n,
        }
        .into());
    }
    if n < 2 || g.has_dead_vertex() {
        return Ok(report(Verdict::No, Route::ShortCircuit, None, Vec::new()));
    }
    if n <= cfg.oracle_threshold.min(BRUTEFORCE_MAX_VERTICES) {
        let verdict = if is_hamiltonian_bruteforce(g)? {
            Verdict::Yes
        } else {
            Verdict::No
        };
        return Ok(report(verdict, Route::Oracle, None, Vec::new()));
    }

    let sg = g.split_vertex(cfg.split_vertex)?;
    let p = derive_params(&sg, &cfg.overrides)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| EngineError::Pool(e.to_string()))?;

    let mut per_rep = Vec::new();
    let mut verdict = Verdict::No;
    for rep in 0..p.reps as u64 {
        let (sp, q) = draw_sample(&sg, &p, cfg.master_seed, rep);
        let outcome = pool.install(|| run_repetition(&sg, &p, &sp, &q))?;
        let hit = outcome.stats.nonzero;
        per_rep.push(outcome.stats);
        if hit {
            verdict = Verdict::Yes;
            break;
        }
    }
    Ok(report(verdict, Route::Sieve, Some(p), per_rep))
}
