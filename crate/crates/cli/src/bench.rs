//! Benchmark harness: runs a grid of (instance, field, algorithm, engine)
//! rows, each in a worker thread with a wall-clock timeout, and streams one
//! CSV row per run.

use std::io::Write;
use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use anyhow::Result;
use sha2::{Digest, Sha256};

use exshift::elimination::Engine;
use exshift::exterior::generic_matrix;
use exshift::fields::{ExtField, FieldSpec, PrimeField, Rationals};
use exshift::hypergraphs::UniformHypergraph;
use exshift::permutations::Permutation;
use exshift::shifting::{
    full_shift, las_vegas_shift, monte_carlo_shift, shift_by_matrix, LasVegasParams, ShiftError,
};

pub const CSV_HEADER: &str = "instance,field,algorithm,engine,time_ms,phase_a_ms,phase_b_ms,\
trials,short_circuit,max_len,max_deg,result_digest";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Algorithm {
    /// Symbolic reduction of the compound of R(w0).
    Deterministic,
    /// Sample concrete matrices, verify the family-lex minimum.
    LasVegas,
    /// One uncertified sample.
    MonteCarlo,
    /// Symbolic reduction with the fully generic n^2-variable matrix.
    Generic,
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Algorithm::Deterministic => "deterministic",
            Algorithm::LasVegas => "las-vegas",
            Algorithm::MonteCarlo => "monte-carlo",
            Algorithm::Generic => "generic",
        };
        write!(f, "{s}")
    }
}

/// One fully-described bench cell.
#[derive(Clone)]
pub struct BenchJob {
    pub instance_id: String,
    pub hypergraph: UniformHypergraph,
    pub field: FieldSpec,
    pub algorithm: Algorithm,
    pub engine: Engine,
    pub seed: u64,
    pub samples: Option<u64>,
    pub rounds: u64,
}

/// Columns of one CSV row; timeout and failure rows carry placeholders.
pub struct BenchRecord {
    pub instance_id: String,
    pub field: FieldSpec,
    pub algorithm: Algorithm,
    pub engine: Engine,
    pub outcome: BenchOutcome,
}

pub enum BenchOutcome {
    Done {
        time_ms: u128,
        phase_a_ms: u128,
        phase_b_ms: u128,
        trials: String,
        short_circuit: bool,
        max_len: usize,
        max_deg: i64,
        digest: String,
    },
    /// Las Vegas rounds exhausted: ">N" in the trials column.
    NotFound { time_ms: u128, trials: String },
    TimedOut,
    Failed(String),
}

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        let prefix = format!(
            "{},{},{},{}",
            self.instance_id, self.field, self.algorithm, self.engine
        );
        match &self.outcome {
            BenchOutcome::Done {
                time_ms,
                phase_a_ms,
                phase_b_ms,
                trials,
                short_circuit,
                max_len,
                max_deg,
                digest,
            } => format!(
                "{prefix},{time_ms},{phase_a_ms},{phase_b_ms},{trials},{short_circuit},{max_len},{max_deg},{digest}"
            ),
            BenchOutcome::NotFound { time_ms, trials } => {
                format!("{prefix},{time_ms},-,-,{trials},-,-,-,-")
            }
            BenchOutcome::TimedOut => format!("{prefix},oot,-,-,-,-,-,-,-"),
            BenchOutcome::Failed(msg) => {
                let clean = msg.replace([',', '\n'], ";");
                format!("{prefix},error:{clean},-,-,-,-,-,-,-")
            }
        }
    }
}

/// Short stable digest of a face family.
pub fn family_digest(h: &UniformHypergraph) -> String {
    let mut hasher = Sha256::new();
    hasher.update(format!("n={};k={};", h.n(), h.k()));
    for f in h.faces() {
        hasher.update(f.to_string());
        hasher.update(";");
    }
    let out = hasher.finalize();
    hex_prefix(&out, 16)
}

fn hex_prefix(bytes: &[u8], len: usize) -> String {
    let mut s = String::with_capacity(len);
    for b in bytes {
        s.push_str(&format!("{b:02x}"));
        if s.len() >= len {
            break;
        }
    }
    s.truncate(len);
    s
}

/// Runs one job to completion in the current thread.
pub fn run_job(job: &BenchJob) -> BenchOutcome {
    let started = Instant::now();
    let result = dispatch_job(job);
    let time_ms = started.elapsed().as_millis();
    match result {
        Ok(done) => done,
        Err(e) => match e.downcast_ref::<ShiftError>() {
            Some(ShiftError::RoundsExhausted { rounds, samples }) => BenchOutcome::NotFound {
                time_ms,
                trials: format!(">{}", rounds * samples),
            },
            _ => BenchOutcome::Failed(e.to_string()),
        },
    }
}

fn dispatch_job(job: &BenchJob) -> Result<BenchOutcome> {
    match job.field {
        FieldSpec::Rational => run_typed(job, &Rationals::default()),
        FieldSpec::Prime(p) => run_typed(job, &PrimeField::new(p)?),
        FieldSpec::Ext { p, d } => run_typed(job, &ExtField::new(p, d)?),
    }
}

fn run_typed<F: exshift::fields::Field>(job: &BenchJob, field: &F) -> Result<BenchOutcome> {
    let s = &job.hypergraph;
    let started = Instant::now();
    let res = match job.algorithm {
        Algorithm::Deterministic => full_shift(s, field, job.engine)?,
        Algorithm::Generic => {
            let x = generic_matrix(&field.prime_subfield(), s.n());
            let t0 = Instant::now();
            let (family, stats) = shift_by_matrix(s, &x, job.engine)?;
            exshift::shifting::ShiftResult {
                family,
                method: exshift::shifting::Method::Deterministic,
                certified: true,
                trials: 0,
                short_circuit: false,
                phase_a: t0.elapsed(),
                phase_b: Duration::ZERO,
                stats,
            }
        }
        Algorithm::LasVegas => {
            let mut params = LasVegasParams::defaults_for(field, job.seed);
            if let Some(n) = job.samples {
                params.samples = n;
            }
            params.max_rounds = job.rounds;
            let w0 = Permutation::longest_element(s.n());
            las_vegas_shift(s, &w0, field, params, job.engine)?
        }
        Algorithm::MonteCarlo => {
            let w0 = Permutation::longest_element(s.n());
            monte_carlo_shift(s, &w0, field, job.seed, job.engine)?
        }
    };
    Ok(BenchOutcome::Done {
        time_ms: started.elapsed().as_millis(),
        phase_a_ms: res.phase_a.as_millis(),
        phase_b_ms: res.phase_b.as_millis(),
        trials: res.trials.to_string(),
        short_circuit: res.short_circuit,
        max_len: res.stats.max_len,
        max_deg: res.stats.max_deg,
        digest: family_digest(&res.family),
    })
}

/// Runs jobs sequentially, each in a fresh worker thread guarded by the
/// per-row timeout, writing rows as they complete.
pub fn run_suite(
    jobs: Vec<BenchJob>,
    timeout: Duration,
    out: &mut dyn Write,
) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for job in jobs {
        let record = run_with_timeout(job, timeout);
        writeln!(out, "{}", record.csv_row())?;
        out.flush()?;
    }
    Ok(())
}

fn run_with_timeout(job: BenchJob, timeout: Duration) -> BenchRecord {
    let (tx, rx) = mpsc::channel();
    let meta = (
        job.instance_id.clone(),
        job.field,
        job.algorithm,
        job.engine,
    );
    thread::spawn(move || {
        let outcome = run_job(&job);
        let _ = tx.send(outcome);
    });
    let outcome = match rx.recv_timeout(timeout) {
        Ok(o) => o,
        Err(_) => BenchOutcome::TimedOut,
    };
    BenchRecord {
        instance_id: meta.0,
        field: meta.1,
        algorithm: meta.2,
        engine: meta.3,
        outcome,
    }
}
