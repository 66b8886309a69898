//! Row-echelon machinery producing the pivot-column set of a matrix: the
//! columns lying outside the span of the columns to their left.
//!
//! Two engines compute the same set. The eager engine builds an ordinary row
//! echelon form, fraction-free over polynomial entries. The lazy engine
//! walks the columns left to right and maintains only the accumulated
//! row-operation matrix `v`, evaluating the sub-column of `v * m_{*,j}`
//! below the settled rows; entries in settled rows are never touched, and
//! the loop stops as soon as every row carries a pivot.
//!
//! Over polynomial entries a pivot is the lowest-index nonzero entry of
//! minimal length (term count); a row subtraction multiplies both rows by
//! the gcd cofactors of the entries being cancelled, and every updated row
//! is divided by the gcd of its entries.

use crate::exterior::Matrix;
use crate::fields::{ElimDomain, Ring};

/// Which row-reduction engine to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    #[default]
    Eager,
    Lazy,
}

impl std::str::FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "eager" => Ok(Engine::Eager),
            "lazy" => Ok(Engine::Lazy),
            other => Err(format!("unknown engine `{other}` (expected eager|lazy)")),
        }
    }
}

impl std::fmt::Display for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Engine::Eager => write!(f, "eager"),
            Engine::Lazy => write!(f, "lazy"),
        }
    }
}

/// Operation counters and entry-size maxima observed by an engine run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ElimStats {
    /// Ring multiplications performed on matrix/transform entries.
    pub mults: u64,
    /// Gcd computations (cofactor steps and row content removal).
    pub gcds: u64,
    /// Maximal term count over all entries seen.
    pub max_len: usize,
    /// Maximal total degree over all entries seen (-1 if everything was 0).
    pub max_deg: i64,
}

impl Default for ElimStats {
    fn default() -> Self {
        ElimStats {
            mults: 0,
            gcds: 0,
            max_len: 0,
            max_deg: -1,
        }
    }
}

impl ElimStats {
    fn observe<R: Ring>(&mut self, ring: &R, e: &R::Elem) {
        self.max_len = self.max_len.max(ring.term_len(e));
        self.max_deg = self.max_deg.max(ring.term_degree(e));
    }

    pub fn merge(&mut self, other: &ElimStats) {
        self.mults += other.mults;
        self.gcds += other.gcds;
        self.max_len = self.max_len.max(other.max_len);
        self.max_deg = self.max_deg.max(other.max_deg);
    }
}

/// Result of a reduction: the ascending pivot columns (their count is the
/// rank), the final matrix (echelon form for the eager engine, accumulated
/// row transform for the lazy engine), and the counters.
#[derive(Debug, Clone)]
pub struct EchelonResult<R: Ring> {
    pub pivot_cols: Vec<usize>,
    pub matrix: Matrix<R>,
    pub stats: ElimStats,
}

impl<R: Ring> EchelonResult<R> {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }
}

/// The pivot of a column: among the nonzero entries of minimal length, the
/// least row index. `None` on an all-zero (or empty) column.
pub fn pivot_select<R: Ring>(ring: &R, col: &[R::Elem]) -> Option<usize> {
    col.iter()
        .enumerate()
        .filter(|(_, e)| !ring.is_zero(e))
        .min_by_key(|(i, e)| (ring.term_len(e), *i))
        .map(|(i, _)| i)
}

pub fn ind<D: ElimDomain>(m: &Matrix<D>, engine: Engine) -> EchelonResult<D> {
    match engine {
        Engine::Eager => ind_eager(m),
        Engine::Lazy => ind_lazy(m),
    }
}

/// Row echelon form with pivot read-off. Entries above pivots are never
/// cleared; rows below a pivot are cancelled with `elim_multipliers` and
/// then stripped of their content.
pub fn ind_eager<D: ElimDomain>(m: &Matrix<D>) -> EchelonResult<D> {
    let ring = m.ring().clone();
    let (l, n) = (m.rows(), m.cols());
    let mut work: Vec<Vec<D::Elem>> = (0..l).map(|i| m.row(i).to_vec()).collect();
    let mut stats = ElimStats::default();
    let mut pivots = Vec::new();
    let mut r = 0usize;

    for j in 0..n {
        if r == l {
            break;
        }
        let offset = pivot_select_at(&ring, &work, r, j);
        let Some(off) = offset else { continue };
        work.swap(r, r + off);
        pivots.push(j);

        for i in (r + 1)..l {
            if ring.is_zero(&work[i][j]) {
                continue;
            }
            let (alpha, beta) = ring.elim_multipliers(&work[r][j], &work[i][j]);
            stats.gcds += D::ELIM_GCDS;
            let (head, tail) = work.split_at_mut(i);
            let pivot_row = &head[r];
            let target_row = &mut tail[0];
            for jj in (j + 1)..n {
                let t1 = scaled(&ring, &alpha, &target_row[jj], &mut stats);
                let t2 = scaled(&ring, &beta, &pivot_row[jj], &mut stats);
                target_row[jj] = ring.sub(&t1, &t2);
            }
            target_row[j] = ring.zero();
            stats.gcds += ring.remove_content(&mut target_row[j + 1..]);
            for e in &target_row[j + 1..] {
                stats.observe(&ring, e);
            }
        }
        r += 1;
    }

    let echelon = Matrix::from_fn(ring.clone(), l, n, |i, j| work[i][j].clone());
    for i in 0..l {
        for j in 0..n {
            stats.observe(&ring, echelon.get(i, j));
        }
    }
    EchelonResult {
        pivot_cols: pivots,
        matrix: echelon,
        stats,
    }
}

/// Column-oriented reduction: only the accumulated row transform `v` is
/// updated; for each candidate column only the entries below the settled
/// rows of `v * m_{*,j}` are evaluated, and the scan exits as soon as the
/// pivot count reaches the row count.
pub fn ind_lazy<D: ElimDomain>(m: &Matrix<D>) -> EchelonResult<D> {
    let ring = m.ring().clone();
    let (l, n) = (m.rows(), m.cols());
    let mut v: Vec<Vec<D::Elem>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| if i == j { ring.one() } else { ring.zero() })
                .collect()
        })
        .collect();
    let mut stats = ElimStats::default();
    let mut pivots: Vec<usize> = Vec::new();

    for j in 0..n {
        let r = pivots.len();
        if r == l {
            break;
        }
        // c = (v * m_{*,j}) restricted to rows r..l
        let mut c: Vec<D::Elem> = Vec::with_capacity(l - r);
        for vi in r..l {
            let mut acc = ring.zero();
            for (t, ve) in v[vi].iter().enumerate() {
                if ring.is_zero(ve) {
                    continue;
                }
                let me = m.get(t, j);
                if ring.is_zero(me) {
                    continue;
                }
                let prod = mul_counted(&ring, ve, me, &mut stats);
                acc = ring.add(&acc, &prod);
            }
            stats.observe(&ring, &acc);
            c.push(acc);
        }
        let Some(p) = pivot_select(&ring, &c) else {
            continue;
        };
        pivots.push(j);
        if pivots.len() == l {
            break;
        }
        if p != 0 {
            c.swap(0, p);
            v.swap(r, r + p);
        }
        for i in 1..(l - r) {
            if ring.is_zero(&c[i]) {
                continue;
            }
            let (alpha, beta) = ring.elim_multipliers(&c[0], &c[i]);
            stats.gcds += D::ELIM_GCDS;
            let (head, tail) = v.split_at_mut(r + i);
            let pivot_row = &head[r];
            let target_row = &mut tail[0];
            for t in 0..l {
                let t1 = scaled(&ring, &alpha, &target_row[t], &mut stats);
                let t2 = scaled(&ring, &beta, &pivot_row[t], &mut stats);
                target_row[t] = ring.sub(&t1, &t2);
            }
            stats.gcds += ring.remove_content(&mut target_row[..]);
            for e in target_row.iter() {
                stats.observe(&ring, e);
            }
        }
    }

    let transform = Matrix::from_fn(ring.clone(), l, l, |i, j| v[i][j].clone());
    EchelonResult {
        pivot_cols: pivots,
        matrix: transform,
        stats,
    }
}

fn pivot_select_at<D: ElimDomain>(
    ring: &D,
    work: &[Vec<D::Elem>],
    from_row: usize,
    col: usize,
) -> Option<usize> {
    work[from_row..]
        .iter()
        .enumerate()
        .filter(|(_, row)| !ring.is_zero(&row[col]))
        .min_by_key(|(i, row)| (ring.term_len(&row[col]), *i))
        .map(|(i, _)| i)
}

/// factor * e, counting the multiplication unless it is skippable.
fn scaled<R: Ring>(ring: &R, factor: &R::Elem, e: &R::Elem, stats: &mut ElimStats) -> R::Elem {
    if ring.is_zero(e) || ring.is_zero(factor) {
        return ring.zero();
    }
    if ring.is_one(factor) {
        return e.clone();
    }
    if ring.is_one(e) {
        return factor.clone();
    }
    stats.mults += 1;
    ring.mul(factor, e)
}

fn mul_counted<R: Ring>(ring: &R, a: &R::Elem, b: &R::Elem, stats: &mut ElimStats) -> R::Elem {
    if ring.is_one(a) {
        return b.clone();
    }
    if ring.is_one(b) {
        return a.clone();
    }
    stats.mults += 1;
    ring.mul(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{Field, PrimeField};
    use crate::polyring::{PolyRing, VariableSet};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pivot_rule_examples() {
        // polynomial column: length 1 beats length 2
        let vars = VariableSet::new(vec![(1, 4), (2, 4), (3, 4)]).unwrap();
        let r = PolyRing::new(PrimeField::new(2).unwrap(), vars);
        let col = vec![
            r.variable(0).add(&r.variable(1)), // x14 + x24
            r.variable(2),                     // x34
            r.zero(),
        ];
        assert_eq!(pivot_select(&r, &col), Some(1));

        // tie broken by lowest index
        let col = vec![r.variable(0), r.variable(1)];
        assert_eq!(pivot_select(&r, &col), Some(0));

        // plain field: first nonzero
        let f = PrimeField::new(11).unwrap();
        let col = vec![0u64, 5, 7];
        assert_eq!(pivot_select(&f, &col), Some(1));

        let col: Vec<u64> = vec![0, 0];
        assert_eq!(pivot_select(&f, &col), None);
    }

    #[test]
    fn zero_matrix_has_no_pivots() {
        let f = PrimeField::new(5).unwrap();
        let m = Matrix::zero(f, 3, 4);
        assert!(ind_eager(&m).pivot_cols.is_empty());
        assert!(ind_lazy(&m).pivot_cols.is_empty());
    }

    #[test]
    fn degenerate_dimensions() {
        let f = PrimeField::new(5).unwrap();
        let m = Matrix::zero(f, 0, 4);
        assert!(ind_eager(&m).pivot_cols.is_empty());
        assert!(ind_lazy(&m).pivot_cols.is_empty());
        let m = Matrix::zero(f, 3, 0);
        assert!(ind_eager(&m).pivot_cols.is_empty());
        assert!(ind_lazy(&m).pivot_cols.is_empty());
    }

    #[test]
    fn identity_early_exit() {
        let f = PrimeField::new(5).unwrap();
        let m = Matrix::identity(f, 4);
        let eager = ind_eager(&m);
        let lazy = ind_lazy(&m);
        assert_eq!(eager.pivot_cols, vec![0, 1, 2, 3]);
        assert_eq!(lazy.pivot_cols, vec![0, 1, 2, 3]);
    }

    fn random_field_matrix(
        f: PrimeField,
        rows: usize,
        cols: usize,
        rng: &mut ChaCha8Rng,
    ) -> Matrix<PrimeField> {
        Matrix::from_fn(f, rows, cols, |_, _| {
            if rng.gen_bool(0.3) {
                0
            } else {
                f.sample(rng)
            }
        })
    }

    /// Independent oracle: rank of each column prefix via determinant
    /// search; pivot columns are exactly where the prefix rank grows.
    fn rank_prefix_pivots<D: ElimDomain>(m: &Matrix<D>) -> Vec<usize> {
        use itertools::Itertools;
        let ring = m.ring().clone();
        let rank = |cols: &[usize]| -> usize {
            let max = cols.len().min(m.rows());
            for size in (1..=max).rev() {
                for rsel in (0..m.rows()).combinations(size) {
                    for csel in cols.iter().copied().combinations(size) {
                        let sub = Matrix::from_fn(ring.clone(), size, size, |a, b| {
                            m.get(rsel[a], csel[b]).clone()
                        });
                        if !ring.is_zero(&naive_det(&sub)) {
                            return size;
                        }
                    }
                }
            }
            0
        };
        let mut pivots = Vec::new();
        let mut prev = 0;
        let mut cols: Vec<usize> = Vec::new();
        for j in 0..m.cols() {
            cols.push(j);
            let r = rank(&cols);
            if r > prev {
                pivots.push(j);
                prev = r;
            }
        }
        pivots
    }

    /// Leibniz-style determinant by direct cofactor recursion over the first
    /// row, independent of both engines and of Bareiss.
    fn naive_det<R: Ring>(m: &Matrix<R>) -> R::Elem {
        let ring = m.ring().clone();
        let n = m.rows();
        if n == 0 {
            return ring.one();
        }
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut acc = ring.zero();
        for j in 0..n {
            if ring.is_zero(m.get(0, j)) {
                continue;
            }
            let sub = Matrix::from_fn(ring.clone(), n - 1, n - 1, |a, b| {
                m.get(a + 1, if b < j { b } else { b + 1 }).clone()
            });
            let term = ring.mul(m.get(0, j), &naive_det(&sub));
            acc = if j % 2 == 0 {
                ring.add(&acc, &term)
            } else {
                ring.sub(&acc, &term)
            };
        }
        acc
    }

    #[test]
    fn engines_match_oracle_on_field_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(100);
        for p in [2u64, 5, 7919] {
            let f = PrimeField::new(p).unwrap();
            for _ in 0..30 {
                let rows = rng.gen_range(1..=4);
                let cols = rng.gen_range(1..=6);
                let m = random_field_matrix(f, rows, cols, &mut rng);
                let eager = ind_eager(&m).pivot_cols;
                let lazy = ind_lazy(&m).pivot_cols;
                let oracle = rank_prefix_pivots(&m);
                assert_eq!(eager, oracle, "eager vs oracle on {m:?}");
                assert_eq!(lazy, oracle, "lazy vs oracle on {m:?}");
            }
        }
    }

    #[test]
    fn engines_match_oracle_on_polynomial_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        let vars = VariableSet::new(vec![(1, 2), (1, 3), (2, 3)]).unwrap();
        let ring = PolyRing::new(PrimeField::new(2).unwrap(), vars);
        for _ in 0..15 {
            let rows = rng.gen_range(1..=3);
            let cols = rng.gen_range(1..=5);
            let m = Matrix::from_fn(ring.clone(), rows, cols, |_, _| {
                crate::polyring::random_poly_for_tests(&ring, &mut rng, 3)
            });
            let eager = ind_eager(&m).pivot_cols;
            let lazy = ind_lazy(&m).pivot_cols;
            let oracle = rank_prefix_pivots(&m);
            assert_eq!(eager, oracle, "eager vs oracle");
            assert_eq!(lazy, oracle, "lazy vs oracle");
        }
    }

    #[test]
    fn row_permutation_leaves_pivots_unchanged() {
        let mut rng = ChaCha8Rng::seed_from_u64(102);
        let f = PrimeField::new(5).unwrap();
        for _ in 0..25 {
            let rows = rng.gen_range(2..=4);
            let cols = rng.gen_range(1..=6);
            let m = random_field_matrix(f, rows, cols, &mut rng);
            let mut order: Vec<usize> = (0..rows).collect();
            for i in (1..rows).rev() {
                order.swap(i, rng.gen_range(0..=i));
            }
            let shuffled = Matrix::from_fn(f, rows, cols, |i, j| *m.get(order[i], j));
            assert_eq!(ind_eager(&m).pivot_cols, ind_eager(&shuffled).pivot_cols);
            assert_eq!(ind_lazy(&m).pivot_cols, ind_lazy(&shuffled).pivot_cols);
        }
    }

    #[test]
    fn rank_matches_independent_determinant_check() {
        let mut rng = ChaCha8Rng::seed_from_u64(103);
        let f = PrimeField::new(7).unwrap();
        for _ in 0..25 {
            let rows = rng.gen_range(1..=4);
            let cols = rng.gen_range(1..=5);
            let m = random_field_matrix(f, rows, cols, &mut rng);
            let oracle = rank_prefix_pivots(&m).len();
            assert_eq!(ind_eager(&m).rank(), oracle);
            assert_eq!(ind_lazy(&m).rank(), oracle);
        }
    }
}
