//! Command-line front end for exact exterior algebraic shifting.
//!
//! Exit codes: 0 success (or "true"), 1 negative answer ("false" / nothing
//! found), 2 usage or data errors, 3 Las Vegas sampling exhausted (the
//! field may be too small).

mod bench;
mod instance;

use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use bench::{Algorithm, BenchJob};
use exshift::elimination::Engine;
use exshift::fields::{ExtField, Field, FieldSpec, PrimeField, Rationals};
use exshift::hypergraphs::UniformHypergraph;
use exshift::permutations::Permutation;
use exshift::shifting::{
    las_vegas_shift, monte_carlo_shift, partial_shift, scan_assignments,
    shift_by_matrix, shift_complex, verify_claimed, ComplexMethod, LasVegasParams, Method,
    ShiftError, ShiftResult,
};
use instance::InstanceFile;

/// Environment variable consulted when --seed is absent.
const SEED_ENV: &str = "EXSHIFT_SEED";

#[derive(Parser)]
#[command(
    name = "exshift",
    version,
    about = "Exact exterior algebraic shifting of uniform hypergraphs and simplicial complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a uniform hypergraph is shifted.
    IsShifted {
        /// Instance file (text or JSON).
        file: PathBuf,
    },
    /// Compute a (partial) shift of a uniform hypergraph or complex.
    Shift(ShiftArgs),
    /// Check whether a claimed family equals the partial shift.
    Verify {
        file: PathBuf,
        /// File with the claimed shifted family.
        #[arg(long)]
        claimed: PathBuf,
        /// Permutation: one-line notation, `id`, or `w0`.
        #[arg(long, default_value = "w0")]
        perm: String,
        /// Coefficient field: `q`, `<p>`, or `<p>^<d>`.
        #[arg(long, default_value = "q", value_parser = parse_field)]
        field: FieldSpec,
        #[arg(long, default_value = "eager", value_parser = parse_engine)]
        engine: Engine,
    },
    /// Compression along a transposition (no linear algebra).
    CombShift {
        file: PathBuf,
        /// The transposition, e.g. "2 5".
        #[arg(long)]
        transposition: String,
    },
    /// Write the complete bipartite graph K_{m,n} (sides {1..m}, {m+1..m+n}).
    GenBipartite {
        m: u32,
        n: u32,
        /// Write to a file instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Run a benchmark grid and emit CSV.
    Bench(BenchArgs),
    /// Exhaustively scan all value assignments for the inversion variables
    /// and count how many reproduce the symbolic shift.
    SearchGenericity {
        file: PathBuf,
        #[arg(long, default_value = "w0")]
        perm: String,
        #[arg(long, default_value = "2", value_parser = parse_field)]
        field: FieldSpec,
        #[arg(long, default_value = "eager", value_parser = parse_engine)]
        engine: Engine,
    },
}

#[derive(Args)]
struct ShiftArgs {
    file: PathBuf,
    /// Coefficient field: `q`, `<p>`, or `<p>^<d>`.
    #[arg(long, default_value = "q", value_parser = parse_field)]
    field: FieldSpec,
    /// Permutation: one-line notation, `id`, or `w0`.
    #[arg(long, default_value = "w0")]
    perm: String,
    #[arg(long, value_enum, default_value_t = Algorithm::Deterministic)]
    algorithm: Algorithm,
    /// Samples per Las Vegas round (default: 1 over q, 100 over finite fields).
    #[arg(long)]
    samples: Option<u64>,
    /// Las Vegas rounds before giving up.
    #[arg(long, default_value_t = 1)]
    rounds: u64,
    #[arg(long, default_value = "eager", value_parser = parse_engine)]
    engine: Engine,
    /// Seed for randomized algorithms (default: $EXSHIFT_SEED or 0).
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,
    /// Include wall-clock phase timings in the output (breaks byte-for-byte
    /// reproducibility of reruns).
    #[arg(long)]
    timings: bool,
    /// Treat the input as the facets of a simplicial complex and shift it
    /// levelwise.
    #[arg(long)]
    complex: bool,
    /// Numerator bound for random rationals.
    #[arg(long)]
    bound: Option<i64>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    /// Largest m for the bipartite suite.
    #[arg(long, default_value_t = 2)]
    max_m: u32,
    /// Largest n for the bipartite suite.
    #[arg(long, default_value_t = 2)]
    max_n: u32,
    /// Instance files for the file-list suite.
    #[arg(long, value_delimiter = ',')]
    files: Vec<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "q", value_parser = parse_field)]
    fields: Vec<FieldSpec>,
    #[arg(long, value_delimiter = ',', value_enum,
          default_values_t = [Algorithm::Deterministic, Algorithm::LasVegas])]
    algorithms: Vec<Algorithm>,
    #[arg(long, value_delimiter = ',', value_parser = parse_engine,
          default_values_t = [Engine::Eager, Engine::Lazy])]
    engines: Vec<Engine>,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Per-row wall-clock timeout in seconds; timed-out rows read `oot`.
    #[arg(long, default_value_t = 1800)]
    timeout_secs: u64,
    #[arg(long)]
    seed: Option<u64>,
    /// Samples per Las Vegas round (default depends on the field).
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 1)]
    rounds: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Bipartite,
    FileList,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

fn parse_engine(s: &str) -> Result<Engine, String> {
    s.parse()
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    s.parse().map_err(|e: exshift::fields::FieldError| e.to_string())
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<ShiftError>() {
                Some(ShiftError::RoundsExhausted { .. }) => 3,
                _ => 2,
            }
        }
    };
    std::process::exit(code);
}

fn run(command: Command) -> Result<i32> {
    match command {
        Command::IsShifted { file } => {
            let s = InstanceFile::from_path(&file)?.to_hypergraph()?;
            let shifted = s.is_shifted();
            println!("{shifted}");
            Ok(if shifted { 0 } else { 1 })
        }
        Command::Shift(args) => cmd_shift(args),
        Command::Verify {
            file,
            claimed,
            perm,
            field,
            engine,
        } => {
            let s = InstanceFile::from_path(&file)?.to_hypergraph()?;
            let claimed = InstanceFile::from_path(&claimed)?.to_hypergraph()?;
            let w = Permutation::parse(&perm, s.n())?;
            let equal = with_field(field, None, |f| f.claimed(&s, &w, &claimed, engine))?;
            println!("{equal}");
            Ok(if equal { 0 } else { 1 })
        }
        Command::CombShift {
            file,
            transposition,
        } => {
            let s = InstanceFile::from_path(&file)?.to_hypergraph()?;
            let parts: Vec<u32> = transposition
                .split([' ', ','])
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u32>())
                .collect::<Result<_, _>>()
                .context("transposition must be two vertices, e.g. \"2 5\"")?;
            let [a, b] = parts[..] else {
                bail!("transposition must name exactly two vertices");
            };
            let t = Permutation::transposition(s.n(), a, b)?;
            let shifted = s.combinatorial_shift(&t)?;
            print_family(&shifted);
            Ok(0)
        }
        Command::GenBipartite { m, n, output, json } => {
            if m < 1 || n < 1 {
                bail!("both sides must have at least one node");
            }
            let inst = InstanceFile::bipartite(m, n);
            let text = if json { inst.to_json() + "\n" } else { inst.to_text() };
            match output {
                Some(path) => std::fs::write(&path, text)
                    .with_context(|| format!("cannot write {}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Bench(args) => cmd_bench(args),
        Command::SearchGenericity {
            file,
            perm,
            field,
            engine,
        } => {
            let s = InstanceFile::from_path(&file)?.to_hypergraph()?;
            let w = Permutation::parse(&perm, s.n())?;
            let scan = with_field(field, None, |f| f.scan(&s, &w, engine))?;
            println!("symbolic: {}", family_line(&scan.symbolic));
            println!("assignments: {}", scan.total_assignments);
            println!("matching: {}", scan.matching);
            Ok(if scan.matching > 0 { 0 } else { 1 })
        }
    }
}

/// Resolve the seed: flag, then environment, then 0.
fn resolve_seed(flag: Option<u64>) -> Result<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .map_err(|_| anyhow!("{SEED_ENV} must be an unsigned integer, got `{v}`")),
        Err(_) => Ok(0),
    }
}

/// Instantiate the field described by `spec` and run `body` with it.
fn with_field<T>(
    spec: FieldSpec,
    rational_bound: Option<i64>,
    body: impl Fn(&dyn FieldRunner) -> Result<T>,
) -> Result<T> {
    match spec {
        FieldSpec::Rational => {
            let f = match rational_bound {
                Some(b) => Rationals::with_bound(b),
                None => Rationals::default(),
            };
            body(&f)
        }
        FieldSpec::Prime(p) => body(&PrimeField::new(p)?),
        FieldSpec::Ext { p, d } => body(&ExtField::new(p, d)?),
    }
}

/// Object-safe shim so `with_field` can hand a closure one of several field
/// types: each concrete field forwards to the generic operations below.
trait FieldRunner {
    fn partial(&self, s: &UniformHypergraph, w: &Permutation, e: Engine)
        -> Result<ShiftResult>;
    fn generic_x(&self, s: &UniformHypergraph, e: Engine) -> Result<ShiftResult>;
    fn las_vegas(
        &self,
        s: &UniformHypergraph,
        w: &Permutation,
        params: LasVegasParams,
        fill_samples: bool,
        e: Engine,
    ) -> Result<ShiftResult>;
    fn monte_carlo(
        &self,
        s: &UniformHypergraph,
        w: &Permutation,
        seed: u64,
        e: Engine,
    ) -> Result<ShiftResult>;
    fn claimed(
        &self,
        s: &UniformHypergraph,
        w: &Permutation,
        claimed: &UniformHypergraph,
        e: Engine,
    ) -> Result<bool>;
    fn scan(
        &self,
        s: &UniformHypergraph,
        w: &Permutation,
        e: Engine,
    ) -> Result<exshift::shifting::GenericityScan>;
    fn complex(
        &self,
        k: &exshift::hypergraphs::SimplicialComplex,
        method: ComplexMethod,
        e: Engine,
    ) -> Result<exshift::shifting::ComplexShiftResult>;
}

impl<F: Field> FieldRunner for F {
    fn partial(&self, s: &UniformHypergraph, w: &Permutation, e: Engine)
        -> Result<ShiftResult> {
        Ok(partial_shift(s, w, self, e)?)
    }

    fn generic_x(&self, s: &UniformHypergraph, e: Engine) -> Result<ShiftResult> {
        let x = exshift::exterior::generic_matrix(&self.prime_subfield(), s.n());
        let t0 = std::time::Instant::now();
        let (family, stats) = shift_by_matrix(s, &x, e)?;
        Ok(ShiftResult {
            family,
            method: Method::Deterministic,
            certified: true,
            trials: 0,
            short_circuit: false,
            phase_a: t0.elapsed(),
            phase_b: Duration::ZERO,
            stats,
        })
    }

    fn las_vegas(
        &self,
        s: &UniformHypergraph,
        w: &Permutation,
        mut params: LasVegasParams,
        fill_samples: bool,
        e: Engine,
    ) -> Result<ShiftResult> {
        if fill_samples {
            params.samples = LasVegasParams::defaults_for(self, params.seed).samples;
        }
        Ok(las_vegas_shift(s, w, self, params, e)?)
    }

    fn monte_carlo(
        &self,
        s: &UniformHypergraph,
        w: &Permutation,
        seed: u64,
        e: Engine,
    ) -> Result<ShiftResult> {
        Ok(monte_carlo_shift(s, w, self, seed, e)?)
    }

    fn claimed(
        &self,
        s: &UniformHypergraph,
        w: &Permutation,
        claimed: &UniformHypergraph,
        e: Engine,
    ) -> Result<bool> {
        Ok(verify_claimed(s, w, claimed, self, e)?)
    }

    fn scan(
        &self,
        s: &UniformHypergraph,
        w: &Permutation,
        e: Engine,
    ) -> Result<exshift::shifting::GenericityScan> {
        Ok(scan_assignments(s, w, self, e)?)
    }

    fn complex(
        &self,
        k: &exshift::hypergraphs::SimplicialComplex,
        method: ComplexMethod,
        e: Engine,
    ) -> Result<exshift::shifting::ComplexShiftResult> {
        Ok(shift_complex(k, self, method, e)?)
    }
}

fn cmd_shift(args: ShiftArgs) -> Result<i32> {
    let seed = resolve_seed(args.seed)?;
    let inst = InstanceFile::from_path(&args.file)?;

    if args.complex {
        return cmd_shift_complex(&args, &inst, seed);
    }

    if args.samples == Some(0) || args.rounds == 0 {
        bail!("--samples and --rounds must be at least 1");
    }
    let s = inst.to_hypergraph()?;
    let w = Permutation::parse(&args.perm, s.n())?;
    let lv_params = LasVegasParams {
        samples: args.samples.unwrap_or(1),
        max_rounds: args.rounds,
        seed,
    };
    let fill_samples = args.samples.is_none();
    let res = with_field(args.field, args.bound, |f: &dyn FieldRunner| {
        match args.algorithm {
            Algorithm::Deterministic => f.partial(&s, &w, args.engine),
            Algorithm::Generic => {
                if w != Permutation::longest_element(s.n()) {
                    bail!("--algorithm generic computes the full shift; use --perm w0");
                }
                f.generic_x(&s, args.engine)
            }
            Algorithm::LasVegas => f.las_vegas(&s, &w, lv_params, fill_samples, args.engine),
            Algorithm::MonteCarlo => f.monte_carlo(&s, &w, seed, args.engine),
        }
    })?;

    match args.output {
        OutputFormat::Text => {
            print_family(&res.family);
            let mut meta = format!(
                "# method={} certified={} trials={} short_circuit={}",
                res.method, res.certified, res.trials, res.short_circuit
            );
            if args.timings {
                meta.push_str(&format!(
                    " phase_a_ms={} phase_b_ms={}",
                    res.phase_a.as_millis(),
                    res.phase_b.as_millis()
                ));
            }
            eprintln!("{meta}");
        }
        OutputFormat::Json => {
            let out = ShiftJson::from_result(&res, args.timings);
            println!("{}", serde_json::to_string(&out)?);
        }
    }
    Ok(0)
}

fn cmd_shift_complex(args: &ShiftArgs, inst: &InstanceFile, seed: u64) -> Result<i32> {
    let k = inst.to_complex()?;
    if Permutation::parse(&args.perm, k.n())? != Permutation::longest_element(k.n()) {
        bail!("complex shifting always uses the full shift; use --perm w0");
    }
    let default_samples = if matches!(args.field, FieldSpec::Rational) {
        1
    } else {
        100
    };
    let method = match args.algorithm {
        Algorithm::Deterministic => ComplexMethod::Deterministic,
        Algorithm::LasVegas => ComplexMethod::LasVegas(LasVegasParams {
            samples: args.samples.unwrap_or(default_samples),
            max_rounds: args.rounds,
            seed,
        }),
        Algorithm::MonteCarlo => ComplexMethod::MonteCarlo { seed },
        Algorithm::Generic => bail!("--algorithm generic is not available for complexes"),
    };
    let res = with_field(args.field, args.bound, |f: &dyn FieldRunner| {
        f.complex(&k, method, args.engine)
    })?;

    match args.output {
        OutputFormat::Text => {
            for facet in res.complex.facets() {
                println!("{facet}");
            }
            eprintln!(
                "# certified={} trials={} f_vector={:?}",
                res.certified,
                res.trials,
                res.complex.f_vector()
            );
        }
        OutputFormat::Json => {
            let out = ComplexJson {
                n: res.complex.n(),
                facets: res
                    .complex
                    .facets()
                    .map(|f| f.vertices().to_vec())
                    .collect(),
                f_vector: res.complex.f_vector(),
                certified: res.certified,
                trials: res.trials,
            };
            println!("{}", serde_json::to_string(&out)?);
        }
    }
    Ok(0)
}

fn cmd_bench(args: BenchArgs) -> Result<i32> {
    let seed = resolve_seed(args.seed)?;
    let mut instances: Vec<(String, UniformHypergraph)> = Vec::new();
    match args.suite {
        Suite::Bipartite => {
            for m in 1..=args.max_m {
                for n in 1..=args.max_n {
                    let inst = InstanceFile::bipartite(m, n);
                    instances.push((format!("K{m}{n}"), inst.to_hypergraph()?));
                }
            }
        }
        Suite::FileList => {
            if args.files.is_empty() {
                bail!("--suite file-list requires --files");
            }
            for path in &args.files {
                let id = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| path.display().to_string());
                instances.push((id, InstanceFile::from_path(path)?.to_hypergraph()?));
            }
        }
    }

    let mut jobs = Vec::new();
    for (id, hg) in &instances {
        for &field in &args.fields {
            for &algorithm in &args.algorithms {
                for &engine in &args.engines {
                    jobs.push(BenchJob {
                        instance_id: id.clone(),
                        hypergraph: hg.clone(),
                        field,
                        algorithm,
                        engine,
                        seed,
                        samples: args.samples,
                        rounds: args.rounds,
                    });
                }
            }
        }
    }

    let timeout = Duration::from_secs(args.timeout_secs);
    match &args.csv {
        Some(path) => {
            let mut file = std::fs::File::create(path)
                .with_context(|| format!("cannot write {}", path.display()))?;
            bench::run_suite(jobs, timeout, &mut file)?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            bench::run_suite(jobs, timeout, &mut lock)?;
            lock.flush()?;
        }
    }
    Ok(0)
}

fn print_family(h: &UniformHypergraph) {
    for face in h.faces() {
        println!("{face}");
    }
}

fn family_line(h: &UniformHypergraph) -> String {
    let faces: Vec<String> = h.faces().map(|f| f.to_string()).collect();
    faces.join(", ")
}

#[derive(Serialize)]
struct ShiftJson {
    n: u32,
    k: usize,
    faces: Vec<Vec<u32>>,
    method: String,
    certified: bool,
    trials: u64,
    short_circuit: bool,
    max_len: usize,
    max_deg: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    timings_ms: Option<TimingsJson>,
}

#[derive(Serialize)]
struct TimingsJson {
    phase_a: u128,
    phase_b: u128,
}

impl ShiftJson {
    fn from_result(res: &ShiftResult, timings: bool) -> Self {
        ShiftJson {
            n: res.family.n(),
            k: res.family.k(),
            faces: res
                .family
                .faces()
                .map(|f| f.vertices().to_vec())
                .collect(),
            method: res.method.to_string(),
            certified: res.certified,
            trials: res.trials,
            short_circuit: res.short_circuit,
            max_len: res.stats.max_len,
            max_deg: res.stats.max_deg,
            timings_ms: timings.then(|| TimingsJson {
                phase_a: res.phase_a.as_millis(),
                phase_b: res.phase_b.as_millis(),
            }),
        }
    }
}

#[derive(Serialize)]
struct ComplexJson {
    n: u32,
    facets: Vec<Vec<u32>>,
    f_vector: Vec<usize>,
    certified: bool,
    trials: u64,
}
