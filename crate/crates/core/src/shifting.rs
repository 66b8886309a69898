//! Partial and full exterior shifts of uniform hypergraphs and simplicial
//! complexes, with a deterministic symbolic route, a certifying Las Vegas
//! route, and an uncertified Monte Carlo route.
//!
//! The shift of S by an invertible matrix g collects the faces whose columns
//! of the compound submatrix g^(S) fall outside the span of the lex-earlier
//! columns; for a permutation w the matrix is R(w) = U(w) P(w) over the
//! polynomial ring in one indeterminate per inversion of w. Verification of
//! a sampled shift only ever reduces a lex-prefix of the columns over the
//! prime subfield's polynomial ring, and skips the reduction entirely when
//! the sampled family is a full initial segment.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::elimination::{ind, ElimStats, Engine};
use crate::exterior::{
    build_r, build_unipotent_numeric, compound_submatrix, permutation_matrix, random_unipotent,
    Matrix,
};
use crate::fields::{ElimDomain, Field};
use crate::hypergraphs::{all_ksets, HypergraphError, KSet, SimplicialComplex, UniformHypergraph};
use crate::permutations::Permutation;
use crate::polyring::PolyError;

#[derive(Debug, Error)]
pub enum ShiftError {
    #[error("matrix must be {expected} x {expected}, got {rows} x {cols}")]
    MatrixSize {
        expected: u32,
        rows: usize,
        cols: usize,
    },
    #[error("matrix is singular (compound rank fell short of the family size)")]
    SingularMatrix,
    #[error("matrix is not upper-triangular unipotent")]
    NotUnipotent,
    #[error("matrix entry ({0},{1}) lies outside the permutation's inversion set")]
    SupportOutsideInversions(u32, u32),
    #[error("hypergraph lives on [{hypergraph}] but the permutation acts on [{permutation}]")]
    GroundSetMismatch { hypergraph: u32, permutation: u32 },
    #[error("claimed family has {claimed} faces, expected {expected}")]
    CardinalityMismatch { claimed: usize, expected: usize },
    #[error(
        "no sample verified after {rounds} round(s) of {samples} sample(s); \
         the field may be too small; try an extension"
    )]
    RoundsExhausted { rounds: u64, samples: u64 },
    #[error("exhaustive scan over {0} assignments exceeds the supported limit")]
    ScanTooLarge(u128),
    #[error("cannot scan an infinite field exhaustively")]
    ScanInfiniteField,
    #[error("shifted skeleta are not compatible across dimensions")]
    InconsistentLevels,
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// How a shift was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Deterministic,
    LasVegas,
    MonteCarlo,
    Combinatorial,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Method::Deterministic => "deterministic",
            Method::LasVegas => "las-vegas",
            Method::MonteCarlo => "monte-carlo",
            Method::Combinatorial => "combinatorial",
        };
        write!(f, "{s}")
    }
}

/// A computed shift with its certification status and phase timings:
/// phase A covers computing candidate shifts, phase B the verification.
#[derive(Debug, Clone)]
pub struct ShiftResult {
    pub family: UniformHypergraph,
    pub method: Method,
    pub certified: bool,
    /// 1-based index of the first sample attaining the returned shift
    /// (cumulative across rounds); 0 for deterministic computations.
    pub trials: u64,
    /// Whether verification exited at the initial-segment shortcut.
    pub short_circuit: bool,
    pub phase_a: Duration,
    pub phase_b: Duration,
    pub stats: ElimStats,
}

/// The shift of `s` by an explicit invertible matrix: the pivot columns of
/// the compound submatrix under ascending lex, computed by the chosen
/// engine. Cardinality is preserved; a rank shortfall reports the matrix as
/// singular.
pub fn shift_by_matrix<D: ElimDomain>(
    s: &UniformHypergraph,
    g: &Matrix<D>,
    engine: Engine,
) -> Result<(UniformHypergraph, ElimStats), ShiftError> {
    if !g.is_square() || g.rows() != s.n() as usize {
        return Err(ShiftError::MatrixSize {
            expected: s.n(),
            rows: g.rows(),
            cols: g.cols(),
        });
    }
    let comp = compound_submatrix(g, s, None);
    let result = ind(&comp.matrix, engine);
    if result.rank() < s.len() {
        return Err(ShiftError::SingularMatrix);
    }
    let faces: Vec<KSet> = result
        .pivot_cols
        .iter()
        .map(|&j| comp.col_sets[j].clone())
        .collect();
    let family = UniformHypergraph::new(s.n(), faces)?;
    Ok((family, result.stats))
}

/// The partial shift of `s` by the permutation `w`: a deterministic
/// symbolic computation over the prime subfield's polynomial ring in the
/// inversion variables of `w`. Always certified.
pub fn partial_shift<F: Field>(
    s: &UniformHypergraph,
    w: &Permutation,
    field: &F,
    engine: Engine,
) -> Result<ShiftResult, ShiftError> {
    check_ground_set(s, w)?;
    let started = Instant::now();
    let prime = field.prime_subfield();
    let r = build_r(&prime, w);
    let (family, stats) = shift_by_matrix(s, &r, engine)?;
    Ok(ShiftResult {
        family,
        method: Method::Deterministic,
        certified: true,
        trials: 0,
        short_circuit: false,
        phase_a: started.elapsed(),
        phase_b: Duration::ZERO,
        stats,
    })
}

/// The full shift: the partial shift by the longest element. Depends only
/// on the characteristic of `field`, and the result is always shifted.
pub fn full_shift<F: Field>(
    s: &UniformHypergraph,
    field: &F,
    engine: Engine,
) -> Result<ShiftResult, ShiftError> {
    partial_shift(s, &Permutation::longest_element(s.n()), field, engine)
}

fn check_ground_set(s: &UniformHypergraph, w: &Permutation) -> Result<(), ShiftError> {
    if s.n() != w.n() {
        return Err(ShiftError::GroundSetMismatch {
            hypergraph: s.n(),
            permutation: w.n(),
        });
    }
    Ok(())
}

/// Outcome of verifying a sampled shift.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub verified: bool,
    /// True when the sampled family was a full lex-initial segment, so no
    /// symbolic reduction was needed.
    pub short_circuit: bool,
    /// The sampled shift that was checked.
    pub sampled: UniformHypergraph,
    pub stats: ElimStats,
}

/// Decides whether the concrete unipotent matrix `u` computes the partial
/// shift by `w`: computes S' from u, and unless S' is a full initial
/// segment, reduces the columns lex-below max S' of the symbolic compound
/// over the prime subfield and compares pivots against S' minus its
/// maximum.
pub fn verify_shift<E: Field>(
    s: &UniformHypergraph,
    w: &Permutation,
    u: &Matrix<E>,
    engine: Engine,
) -> Result<VerifyReport, ShiftError> {
    check_ground_set(s, w)?;
    validate_unipotent_support(u, w)?;
    let field = u.ring().clone();
    let uw = u.mul(&permutation_matrix(&field, w));
    let (sampled, _) = shift_by_matrix(s, &uw, engine)?;
    verify_sampled(s, w, sampled, &field, engine)
}

/// Core of the verification, reusing an already computed sampled shift.
fn verify_sampled<E: Field>(
    s: &UniformHypergraph,
    w: &Permutation,
    sampled: UniformHypergraph,
    field: &E,
    engine: Engine,
) -> Result<VerifyReport, ShiftError> {
    let sigma_max = sampled.max_face().clone();
    let cols: Vec<KSet> = all_ksets(s.n(), s.k())
        .into_iter()
        .filter(|t| *t < sigma_max)
        .collect();
    if sampled.len() == cols.len() + 1 {
        return Ok(VerifyReport {
            verified: true,
            short_circuit: true,
            sampled,
            stats: ElimStats::default(),
        });
    }
    let prime = field.prime_subfield();
    let r = build_r(&prime, w);
    let comp = compound_submatrix(&r, s, Some(cols));
    let result = ind(&comp.matrix, engine);
    let pivots: Vec<&KSet> = result.pivot_cols.iter().map(|&j| &comp.col_sets[j]).collect();
    let expected: Vec<&KSet> = sampled.faces().filter(|f| **f != sigma_max).collect();
    Ok(VerifyReport {
        verified: pivots == expected,
        short_circuit: false,
        sampled,
        stats: result.stats,
    })
}

/// Decides whether an arbitrary claimed family equals the partial shift by
/// `w`. Without knowing how the claim was produced, the column window must
/// include the claimed maximum itself, and there is no shortcut.
pub fn verify_claimed<F: Field>(
    s: &UniformHypergraph,
    w: &Permutation,
    claimed: &UniformHypergraph,
    field: &F,
    engine: Engine,
) -> Result<bool, ShiftError> {
    check_ground_set(s, w)?;
    if claimed.len() != s.len() {
        return Err(ShiftError::CardinalityMismatch {
            claimed: claimed.len(),
            expected: s.len(),
        });
    }
    let sigma_max = claimed.max_face();
    let cols: Vec<KSet> = all_ksets(s.n(), s.k())
        .into_iter()
        .filter(|t| t <= sigma_max)
        .collect();
    let prime = field.prime_subfield();
    let r = build_r(&prime, w);
    let comp = compound_submatrix(&r, s, Some(cols));
    let result = ind(&comp.matrix, engine);
    let pivots: Vec<&KSet> = result.pivot_cols.iter().map(|&j| &comp.col_sets[j]).collect();
    let expected: Vec<&KSet> = claimed.faces().collect();
    Ok(pivots == expected)
}

fn validate_unipotent_support<E: Field>(
    u: &Matrix<E>,
    w: &Permutation,
) -> Result<(), ShiftError> {
    if !u.is_unipotent_upper() || u.rows() != w.n() as usize {
        return Err(ShiftError::NotUnipotent);
    }
    let field = u.ring();
    let inv = w.inversions();
    for i in 0..u.rows() {
        for j in (i + 1)..u.cols() {
            if !field.is_zero(u.get(i, j)) && !inv.contains(i as u32 + 1, j as u32 + 1) {
                return Err(ShiftError::SupportOutsideInversions(
                    i as u32 + 1,
                    j as u32 + 1,
                ));
            }
        }
    }
    Ok(())
}

/// Parameters of the Las Vegas scheme: `samples` matrices per round, the
/// family-lex argmin of their shifts is verified, for up to `max_rounds`
/// rounds.
#[derive(Debug, Clone, Copy)]
pub struct LasVegasParams {
    pub samples: u64,
    pub max_rounds: u64,
    pub seed: u64,
}

impl LasVegasParams {
    /// Defaults: 1 sample over the rationals, 100 over a finite field, one
    /// round.
    pub fn defaults_for<E: Field>(field: &E, seed: u64) -> Self {
        LasVegasParams {
            samples: if field.order().is_some() { 100 } else { 1 },
            max_rounds: 1,
            seed,
        }
    }
}

/// Per-sample generator: derived from the master seed by (round, index), so
/// results do not depend on evaluation order.
fn sample_rng(seed: u64, round: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((round << 32) | (index & 0xffff_ffff));
    rng
}

/// Las Vegas computation of the partial shift over `field`: per round, draw
/// unipotent samples supported on the inversions of `w`, take the
/// family-lex minimal sampled shift (ties to the earliest sample), and
/// certify it against the symbolic shift. The error after `max_rounds`
/// failed rounds is distinguishable and suggests a field extension.
pub fn las_vegas_shift<E: Field>(
    s: &UniformHypergraph,
    w: &Permutation,
    field: &E,
    params: LasVegasParams,
    engine: Engine,
) -> Result<ShiftResult, ShiftError> {
    check_ground_set(s, w)?;
    assert!(params.samples >= 1, "at least one sample per round");
    let p = permutation_matrix(field, w);
    for round in 0..params.max_rounds {
        let phase_a_start = Instant::now();
        let mut best: Option<(UniformHypergraph, u64)> = None;
        for i in 0..params.samples {
            let mut rng = sample_rng(params.seed, round, i);
            let u = random_unipotent(field, w, &mut rng);
            let (fam, _) = shift_by_matrix(s, &u.mul(&p), engine)?;
            let better = match &best {
                None => true,
                Some((cur, _)) => fam.family_lex_cmp(cur) == std::cmp::Ordering::Less,
            };
            if better {
                best = Some((fam, i));
            }
        }
        let (fam, idx) = best.expect("samples >= 1");
        let phase_a = phase_a_start.elapsed();

        let phase_b_start = Instant::now();
        let report = verify_sampled(s, w, fam, field, engine)?;
        let phase_b = phase_b_start.elapsed();
        if report.verified {
            return Ok(ShiftResult {
                family: report.sampled,
                method: Method::LasVegas,
                certified: true,
                trials: round * params.samples + idx + 1,
                short_circuit: report.short_circuit,
                phase_a,
                phase_b,
                stats: report.stats,
            });
        }
    }
    Err(ShiftError::RoundsExhausted {
        rounds: params.max_rounds,
        samples: params.samples,
    })
}

/// Single-sample Monte Carlo shift: never certified. The true partial shift
/// is family-lex less or equal to whatever this returns.
pub fn monte_carlo_shift<E: Field>(
    s: &UniformHypergraph,
    w: &Permutation,
    field: &E,
    seed: u64,
    engine: Engine,
) -> Result<ShiftResult, ShiftError> {
    check_ground_set(s, w)?;
    let started = Instant::now();
    let mut rng = sample_rng(seed, 0, 0);
    let u = random_unipotent(field, w, &mut rng);
    let uw = u.mul(&permutation_matrix(field, w));
    let (family, stats) = shift_by_matrix(s, &uw, engine)?;
    Ok(ShiftResult {
        family,
        method: Method::MonteCarlo,
        certified: false,
        trials: 1,
        short_circuit: false,
        phase_a: started.elapsed(),
        phase_b: Duration::ZERO,
        stats,
    })
}

/// Exhaustive scan over all assignments of field values to the inversion
/// variables of `w`, counting how many reproduce the symbolic partial
/// shift.
#[derive(Debug, Clone)]
pub struct GenericityScan {
    /// The symbolic partial shift the assignments are compared against.
    pub symbolic: UniformHypergraph,
    pub total_assignments: u128,
    pub matching: u64,
    /// Index (in the mixed-radix enumeration order) of the first matching
    /// assignment, if any.
    pub first_match: Option<u128>,
}

const SCAN_LIMIT: u128 = 1 << 22;

pub fn scan_assignments<E: Field>(
    s: &UniformHypergraph,
    w: &Permutation,
    field: &E,
    engine: Engine,
) -> Result<GenericityScan, ShiftError> {
    check_ground_set(s, w)?;
    let symbolic = partial_shift(s, w, field, engine)?.family;
    let elems = field.elements().ok_or(ShiftError::ScanInfiniteField)?;
    let pairs: Vec<(u32, u32)> = w.inversions().iter().collect();
    let q = elems.len() as u128;
    let total = q
        .checked_pow(pairs.len() as u32)
        .filter(|&t| t <= SCAN_LIMIT)
        .ok_or(ShiftError::ScanTooLarge(u128::MAX))?;
    if total > SCAN_LIMIT {
        return Err(ShiftError::ScanTooLarge(total));
    }
    let p = permutation_matrix(field, w);
    let mut matching = 0u64;
    let mut first_match = None;
    for idx in 0..total {
        let mut assignment = BTreeMap::new();
        let mut rest = idx;
        for &pair in &pairs {
            assignment.insert(pair, elems[(rest % q) as usize].clone());
            rest /= q;
        }
        let u = build_unipotent_numeric(field, w, &assignment)?;
        let (fam, _) = shift_by_matrix(s, &u.mul(&p), engine)?;
        if fam == symbolic {
            matching += 1;
            first_match.get_or_insert(idx);
        }
    }
    Ok(GenericityScan {
        symbolic,
        total_assignments: total,
        matching,
        first_match,
    })
}

/// How to shift a simplicial complex.
#[derive(Debug, Clone, Copy)]
pub enum ComplexMethod {
    Deterministic,
    LasVegas(LasVegasParams),
    MonteCarlo { seed: u64 },
}

/// A shifted complex together with the per-cardinality shifted skeleta.
#[derive(Debug, Clone)]
pub struct ComplexShiftResult {
    pub complex: SimplicialComplex,
    /// Shifted k-th skeleta, indexed by face cardinality k = 1..=dim+1.
    pub levels: Vec<UniformHypergraph>,
    pub certified: bool,
    pub trials: u64,
}

/// Shift every skeleton of `k` with one and the same transformation (the
/// longest element symbolically, or one sampled matrix governing all
/// levels), check that the shifted levels still form a complex, and return
/// the complex they generate. Face counts are preserved level by level.
pub fn shift_complex<E: Field>(
    k: &SimplicialComplex,
    field: &E,
    method: ComplexMethod,
    engine: Engine,
) -> Result<ComplexShiftResult, ShiftError> {
    let n = k.n();
    let w0 = Permutation::longest_element(n);
    let cards: Vec<usize> = (1..=k.dim() + 1).collect();
    let skeleta: Vec<UniformHypergraph> = cards
        .iter()
        .map(|&c| k.skeleton(c - 1).expect("c - 1 <= dim"))
        .collect();

    let (levels, certified, trials) = match method {
        ComplexMethod::Deterministic => {
            let mut levels = Vec::new();
            for skel in &skeleta {
                levels.push(partial_shift(skel, &w0, field, engine)?.family);
            }
            (levels, true, 0)
        }
        ComplexMethod::MonteCarlo { seed } => {
            let mut rng = sample_rng(seed, 0, 0);
            let u = random_unipotent(field, &w0, &mut rng);
            let uw = u.mul(&permutation_matrix(field, &w0));
            let mut levels = Vec::new();
            for skel in &skeleta {
                levels.push(shift_by_matrix(skel, &uw, engine)?.0);
            }
            (levels, false, 1)
        }
        ComplexMethod::LasVegas(params) => {
            lv_shift_levels(&skeleta, &w0, field, params, engine)?
        }
    };

    // every boundary face of a shifted level must appear one level down
    for idx in 1..levels.len() {
        for face in levels[idx].faces() {
            for sub in face.subsets(cards[idx] - 1) {
                if !levels[idx - 1].contains(&sub) {
                    return Err(ShiftError::InconsistentLevels);
                }
            }
        }
    }

    let all_faces: Vec<KSet> = levels
        .iter()
        .flat_map(|lvl| lvl.faces().cloned())
        .collect();
    let complex = SimplicialComplex::from_generators(n, all_faces)?;
    Ok(ComplexShiftResult {
        complex,
        levels,
        certified,
        trials,
    })
}

/// One sampled matrix per round governs all levels; the argmin is taken on
/// the top level and every level must verify.
fn lv_shift_levels<E: Field>(
    skeleta: &[UniformHypergraph],
    w0: &Permutation,
    field: &E,
    params: LasVegasParams,
    engine: Engine,
) -> Result<(Vec<UniformHypergraph>, bool, u64), ShiftError> {
    assert!(params.samples >= 1);
    let p = permutation_matrix(field, w0);
    let top = skeleta.len() - 1;
    'rounds: for round in 0..params.max_rounds {
        let mut best: Option<(UniformHypergraph, Matrix<E>, u64)> = None;
        for i in 0..params.samples {
            let mut rng = sample_rng(params.seed, round, i);
            let u = random_unipotent(field, w0, &mut rng);
            let (fam, _) = shift_by_matrix(&skeleta[top], &u.mul(&p), engine)?;
            let better = match &best {
                None => true,
                Some((cur, _, _)) => fam.family_lex_cmp(cur) == std::cmp::Ordering::Less,
            };
            if better {
                best = Some((fam, u, i));
            }
        }
        let (top_fam, u, idx) = best.expect("samples >= 1");
        let uw = u.mul(&p);
        let mut levels = Vec::with_capacity(skeleta.len());
        for (li, skel) in skeleta.iter().enumerate() {
            let fam = if li == top {
                top_fam.clone()
            } else {
                shift_by_matrix(skel, &uw, engine)?.0
            };
            let report = verify_sampled(skel, w0, fam, field, engine)?;
            if !report.verified {
                continue 'rounds;
            }
            levels.push(report.sampled);
        }
        return Ok((levels, true, round * params.samples + idx + 1));
    }
    Err(ShiftError::RoundsExhausted {
        rounds: params.max_rounds,
        samples: params.samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{ExtField, PrimeField, Rationals};

    fn gf2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn four_cycle() -> Permutation {
        Permutation::from_one_line(vec![2, 3, 4, 1]).unwrap()
    }

    fn hg(n: u32, faces: &[&[u32]]) -> UniformHypergraph {
        UniformHypergraph::from_faces(n, faces).unwrap()
    }

    fn example_s() -> UniformHypergraph {
        hg(4, &[&[1, 3], &[1, 4], &[2, 3], &[2, 4]])
    }

    /// u with a single off-diagonal one at (3,4); u' with ones at (2,4) and
    /// (3,4).
    fn example_u(prime: PrimeField, entries: &[(usize, usize)]) -> Matrix<PrimeField> {
        let mut u = Matrix::identity(prime, 4);
        for &(i, j) in entries {
            u.set(i - 1, j - 1, 1);
        }
        u
    }

    #[test]
    fn identity_shift_is_identity() {
        let s = example_s();
        let id = Matrix::identity(gf2(), 4);
        let (fam, _) = shift_by_matrix(&s, &id, Engine::Eager).unwrap();
        assert_eq!(fam, s);
        let res = partial_shift(&s, &Permutation::identity(4), &gf2(), Engine::Lazy).unwrap();
        assert_eq!(res.family, s);
    }

    #[test]
    fn sampled_shifts_of_worked_example() {
        let s = example_s();
        let w = four_cycle();
        let p = permutation_matrix(&gf2(), &w);

        // the sample with x14 = 1 misses the true shift at 14 vs 24
        let u = example_u(gf2(), &[(1, 4)]);
        let (fam, _) = shift_by_matrix(&s, &u.mul(&p), Engine::Eager).unwrap();
        assert_eq!(fam, hg(4, &[&[1, 2], &[1, 3], &[1, 4], &[3, 4]]));

        // the sample with x24 = x34 = 1 attains the true shift
        let u2 = example_u(gf2(), &[(2, 4), (3, 4)]);
        let (fam2, _) = shift_by_matrix(&s, &u2.mul(&p), Engine::Eager).unwrap();
        assert_eq!(fam2, hg(4, &[&[1, 2], &[1, 3], &[1, 4], &[2, 4]]));

        // x34 = 1 alone also misses, in a different column
        let u3 = example_u(gf2(), &[(3, 4)]);
        let (fam3, _) = shift_by_matrix(&s, &u3.mul(&p), Engine::Eager).unwrap();
        assert_eq!(fam3, hg(4, &[&[1, 2], &[1, 3], &[2, 4], &[3, 4]]));
    }

    #[test]
    fn symbolic_shift_of_worked_example() {
        let s = example_s();
        let w = four_cycle();
        for engine in [Engine::Eager, Engine::Lazy] {
            let res = partial_shift(&s, &w, &gf2(), engine).unwrap();
            assert_eq!(res.family, hg(4, &[&[1, 2], &[1, 3], &[1, 4], &[2, 4]]));
            assert!(res.certified);
        }
    }

    #[test]
    fn verification_of_worked_example() {
        let s = example_s();
        let w = four_cycle();
        for bad in [vec![(1, 4)], vec![(3, 4)]] {
            let report = verify_shift(&s, &w, &example_u(gf2(), &bad), Engine::Eager).unwrap();
            assert!(!report.verified);
            assert!(!report.short_circuit);
        }
        let report =
            verify_shift(&s, &w, &example_u(gf2(), &[(2, 4), (3, 4)]), Engine::Eager).unwrap();
        assert!(report.verified);
    }

    #[test]
    fn verification_short_circuit_on_singleton() {
        // a singleton family whose sampled shift is the first k-set gives
        // |S'| = |T| + 1 and skips the symbolic reduction entirely
        let s = hg(3, &[&[1, 2]]);
        let w = Permutation::longest_element(3);
        let mut u = Matrix::identity(gf2(), 3);
        u.set(0, 2, 1); // x13 = 1
        let report = verify_shift(&s, &w, &u, Engine::Eager).unwrap();
        assert!(report.verified);
        assert!(report.short_circuit);
        assert_eq!(report.sampled, s);

        // the identity matrix sends {12} to {23}, which does not match the
        // symbolic shift {12}, so verification must fail
        let id = Matrix::identity(gf2(), 3);
        let report = verify_shift(&s, &w, &id, Engine::Eager).unwrap();
        assert_eq!(report.sampled, hg(3, &[&[2, 3]]));
        assert!(!report.verified);
    }

    #[test]
    fn verify_rejects_bad_unipotents() {
        let s = example_s();
        let w = four_cycle();
        // support outside the inversion set
        let bad = example_u(gf2(), &[(1, 2)]);
        assert!(matches!(
            verify_shift(&s, &w, &bad, Engine::Eager),
            Err(ShiftError::SupportOutsideInversions(1, 2))
        ));
        // not unipotent
        let mut nonuni = Matrix::identity(gf2(), 4);
        nonuni.set(1, 1, 0);
        assert!(matches!(
            verify_shift(&s, &w, &nonuni, Engine::Eager),
            Err(ShiftError::NotUnipotent)
        ));
    }

    #[test]
    fn claimed_families_of_worked_example() {
        let s = example_s();
        let w = four_cycle();
        let good = hg(4, &[&[1, 2], &[1, 3], &[1, 4], &[2, 4]]);
        assert!(verify_claimed(&s, &w, &good, &gf2(), Engine::Eager).unwrap());
        let bad = hg(4, &[&[1, 2], &[1, 3], &[1, 4], &[3, 4]]);
        assert!(!verify_claimed(&s, &w, &bad, &gf2(), Engine::Eager).unwrap());
        // identity: claimed = S
        assert!(verify_claimed(&s, &Permutation::identity(4), &s, &gf2(), Engine::Eager).unwrap());
        // cardinality mismatch
        let short = hg(4, &[&[1, 2]]);
        assert!(matches!(
            verify_claimed(&s, &w, &short, &gf2(), Engine::Eager),
            Err(ShiftError::CardinalityMismatch { .. })
        ));
    }

    #[test]
    fn small_field_example_has_no_generic_assignment() {
        // the transposition (2 4): over GF(2) no assignment reproduces the
        // symbolic shift, over GF(4) exactly 18 of the 64 do
        let s = hg(6, &[&[1, 2], &[1, 4], &[2, 3], &[2, 6], &[3, 5]]);
        let w = Permutation::transposition(6, 2, 4).unwrap();
        let expected = hg(6, &[&[1, 2], &[1, 3], &[2, 3], &[2, 5], &[2, 6]]);

        let scan = scan_assignments(&s, &w, &gf2(), Engine::Eager).unwrap();
        assert_eq!(scan.symbolic, expected);
        assert_eq!(scan.total_assignments, 8);
        assert_eq!(scan.matching, 0);

        let gf4 = ExtField::new(2, 2).unwrap();
        let scan4 = scan_assignments(&s, &w, &gf4, Engine::Eager).unwrap();
        assert_eq!(scan4.symbolic, expected);
        assert_eq!(scan4.total_assignments, 64);
        assert_eq!(scan4.matching, 18);
    }

    #[test]
    fn las_vegas_fails_over_gf2_succeeds_over_gf4() {
        let s = hg(6, &[&[1, 2], &[1, 4], &[2, 3], &[2, 6], &[3, 5]]);
        let w = Permutation::transposition(6, 2, 4).unwrap();
        let params = LasVegasParams {
            samples: 100,
            max_rounds: 1,
            seed: 42,
        };
        let res = las_vegas_shift(&s, &w, &gf2(), params, Engine::Eager);
        assert!(matches!(res, Err(ShiftError::RoundsExhausted { .. })));

        let gf4 = ExtField::new(2, 2).unwrap();
        let res = las_vegas_shift(&s, &w, &gf4, params, Engine::Eager).unwrap();
        assert!(res.certified);
        assert_eq!(
            res.family,
            hg(6, &[&[1, 2], &[1, 3], &[2, 3], &[2, 5], &[2, 6]])
        );
    }

    #[test]
    fn las_vegas_matches_deterministic_over_rationals() {
        let k22 = hg(4, &[&[1, 3], &[1, 4], &[2, 3], &[2, 4]]);
        let q = Rationals::default();
        let det = full_shift(&k22, &q, Engine::Eager).unwrap();
        let params = LasVegasParams::defaults_for(&q, 7);
        assert_eq!(params.samples, 1);
        let w0 = Permutation::longest_element(4);
        let lv = las_vegas_shift(&k22, &w0, &q, params, Engine::Eager).unwrap();
        assert!(lv.certified);
        assert_eq!(lv.trials, 1);
        assert_eq!(lv.family, det.family);
        assert_eq!(det.family, hg(4, &[&[1, 2], &[1, 3], &[1, 4], &[2, 3]]));
    }

    #[test]
    fn monte_carlo_respects_lex_lower_bound() {
        let s = example_s();
        let w = four_cycle();
        let truth = partial_shift(&s, &w, &gf2(), Engine::Eager).unwrap().family;
        for seed in 0..30 {
            let mc = monte_carlo_shift(&s, &w, &gf2(), seed, Engine::Eager).unwrap();
            assert!(!mc.certified);
            assert_ne!(
                truth.family_lex_cmp(&mc.family),
                std::cmp::Ordering::Greater
            );
        }
        // identity permutation: result is S itself
        let mc = monte_carlo_shift(&s, &Permutation::identity(4), &gf2(), 1, Engine::Eager)
            .unwrap();
        assert_eq!(mc.family, s);
    }

    #[test]
    fn deterministic_seeding_is_schedule_independent() {
        let s = example_s();
        let w0 = Permutation::longest_element(4);
        let q = Rationals::default();
        let params = LasVegasParams {
            samples: 3,
            max_rounds: 2,
            seed: 99,
        };
        let a = las_vegas_shift(&s, &w0, &q, params, Engine::Eager).unwrap();
        let b = las_vegas_shift(&s, &w0, &q, params, Engine::Lazy).unwrap();
        assert_eq!(a.family, b.family);
        assert_eq!(a.trials, b.trials);
    }

    #[test]
    fn full_shift_is_shifted_and_preserves_cardinality() {
        let s = hg(5, &[&[2, 5], &[3, 4], &[1, 5]]);
        for engine in [Engine::Eager, Engine::Lazy] {
            let res = full_shift(&s, &gf2(), engine).unwrap();
            assert!(res.family.is_shifted());
            assert_eq!(res.family.len(), s.len());
            let res = full_shift(&s, &Rationals::default(), engine).unwrap();
            assert!(res.family.is_shifted());
        }
    }

    #[test]
    fn initial_segment_is_fixed_by_full_shift() {
        // the lex-initial segment of size 4 in binom([4], 2)
        let s = hg(4, &[&[1, 2], &[1, 3], &[1, 4], &[2, 3]]);
        let res = full_shift(&s, &Rationals::default(), Engine::Eager).unwrap();
        assert_eq!(res.family, s);
    }

    #[test]
    fn shift_complex_deterministic() {
        // the hollow triangle is already shifted and pure
        let hollow = SimplicialComplex::from_generators(
            3,
            vec![
                KSet::new(vec![1, 2]).unwrap(),
                KSet::new(vec![1, 3]).unwrap(),
                KSet::new(vec![2, 3]).unwrap(),
            ],
        )
        .unwrap();
        let res = shift_complex(
            &hollow,
            &Rationals::default(),
            ComplexMethod::Deterministic,
            Engine::Eager,
        )
        .unwrap();
        assert_eq!(res.complex, hollow);
        assert_eq!(res.complex.f_vector(), hollow.f_vector());
        assert!(res.certified);
    }

    #[test]
    fn shift_complex_preserves_f_vector() {
        let k = SimplicialComplex::from_generators(
            5,
            vec![
                KSet::new(vec![1, 4, 5]).unwrap(),
                KSet::new(vec![2, 3, 5]).unwrap(),
                KSet::new(vec![2, 4]).unwrap(),
            ],
        )
        .unwrap();
        let res = shift_complex(
            &k,
            &gf2(),
            ComplexMethod::Deterministic,
            Engine::Lazy,
        )
        .unwrap();
        assert_eq!(res.complex.f_vector(), k.f_vector());
        assert!(!k.is_pure());

        // shifting need not preserve purity: two triangles glued at a
        // vertex shift to a complex with a stray edge facet
        let pure_glued = SimplicialComplex::from_generators(
            5,
            vec![
                KSet::new(vec![1, 4, 5]).unwrap(),
                KSet::new(vec![2, 3, 5]).unwrap(),
            ],
        )
        .unwrap();
        assert!(pure_glued.is_pure());
        let res = shift_complex(
            &pure_glued,
            &Rationals::default(),
            ComplexMethod::Deterministic,
            Engine::Eager,
        )
        .unwrap();
        assert_eq!(res.complex.f_vector(), pure_glued.f_vector());
        assert!(!res.complex.is_pure());

        // the tetrahedron boundary shifts to itself: here the complex is
        // generated by the shifted top skeleton
        let tetra = SimplicialComplex::from_generators(
            4,
            all_ksets(4, 3).into_iter().collect::<Vec<_>>(),
        )
        .unwrap();
        let res = shift_complex(
            &tetra,
            &Rationals::default(),
            ComplexMethod::Deterministic,
            Engine::Eager,
        )
        .unwrap();
        assert_eq!(res.complex, tetra);
        let top = res.levels.last().unwrap();
        let gen_by_top =
            SimplicialComplex::from_generators(4, top.faces().cloned().collect::<Vec<_>>())
                .unwrap();
        assert_eq!(res.complex, gen_by_top);
    }

    #[test]
    fn size_mismatch_errors() {
        let s = example_s();
        let g = Matrix::identity(gf2(), 3);
        assert!(matches!(
            shift_by_matrix(&s, &g, Engine::Eager),
            Err(ShiftError::MatrixSize { .. })
        ));
        let w5 = Permutation::identity(5);
        assert!(matches!(
            partial_shift(&s, &w5, &gf2(), Engine::Eager),
            Err(ShiftError::GroundSetMismatch { .. })
        ));
    }

    #[test]
    fn singular_matrix_detected() {
        let s = hg(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        let mut g = Matrix::identity(gf2(), 3);
        g.set(2, 2, 0); // rank 2
        assert!(matches!(
            shift_by_matrix(&s, &g, Engine::Eager),
            Err(ShiftError::SingularMatrix)
        ));
    }
}
