//! Dense matrices over a field or polynomial ring, exact minors, compound
//! submatrices, and the unipotent matrices whose minors drive shifting.
//!
//! For a permutation w, `build_unipotent` returns the upper-triangular
//! matrix U(w) with an indeterminate x_{ij} at every inversion position
//! (i, j) and ones on the diagonal; `build_r` multiplies it with the
//! permutation matrix P (convention `P[i, w(i)] = 1`). Substituting values
//! for the indeterminates commutes with these constructions.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;

use crate::fields::{ElimDomain, Field, Ring};
use crate::hypergraphs::{all_ksets, KSet, UniformHypergraph};
use crate::permutations::Permutation;
use crate::polyring::{PolyError, PolyRing, VariableSet};

/// Dense row-major matrix over a runtime ring descriptor.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<R: Ring> {
    ring: R,
    rows: usize,
    cols: usize,
    data: Vec<R::Elem>,
}

impl<R: Ring> Matrix<R> {
    pub fn from_fn(ring: R, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { ring, rows, cols, data }
    }

    pub fn zero(ring: R, rows: usize, cols: usize) -> Self {
        let z = ring.zero();
        Matrix {
            ring,
            rows,
            cols,
            data: vec![z; rows * cols],
        }
    }

    pub fn identity(ring: R, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            let one = m.ring.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &Matrix<R>) -> Matrix<R> {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        assert!(self.ring == other.ring, "matrix rings differ");
        Matrix::from_fn(self.ring.clone(), self.rows, other.cols, |i, j| {
            let mut acc = self.ring.zero();
            for t in 0..self.cols {
                let a = self.get(i, t);
                if self.ring.is_zero(a) {
                    continue;
                }
                let b = other.get(t, j);
                if self.ring.is_zero(b) {
                    continue;
                }
                acc = self.ring.add(&acc, &self.ring.mul(a, b));
            }
            acc
        })
    }

    /// True iff upper triangular with unit diagonal.
    pub fn is_unipotent_upper(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            if !self.ring.is_one(self.get(i, i)) {
                return false;
            }
            for j in 0..i {
                if !self.ring.is_zero(self.get(i, j)) {
                    return false;
                }
            }
        }
        true
    }
}

/// The permutation matrix P with P[i, w(i)] = 1. This orientation makes
/// the map a homomorphism: P(v.compose(w)) = P(v) * P(w).
pub fn permutation_matrix<R: Ring>(ring: &R, w: &Permutation) -> Matrix<R> {
    let n = w.n() as usize;
    let mut m = Matrix::zero(ring.clone(), n, n);
    for i in 1..=w.n() {
        let one = ring.one();
        m.set(i as usize - 1, w.apply(i) as usize - 1, one);
    }
    m
}

/// U(w): upper-triangular unipotent with the indeterminate x_{ij} at every
/// inversion (i, j) of w and zeros elsewhere above the diagonal.
pub fn build_unipotent<F: Field>(field: &F, w: &Permutation) -> Matrix<PolyRing<F>> {
    let inv = w.inversions();
    let ring = PolyRing::new(field.clone(), VariableSet::from_inversions(&inv));
    let n = w.n() as usize;
    Matrix::from_fn(ring.clone(), n, n, |i, j| {
        let (i1, j1) = (i as u32 + 1, j as u32 + 1);
        if i == j {
            ring.one()
        } else if inv.contains(i1, j1) {
            ring.variable_for_pair((i1, j1)).expect("inversion variable")
        } else {
            ring.zero()
        }
    })
}

/// R(w) = U(w) * P(w); column j of R is column w^{-1}(j) of U.
pub fn build_r<F: Field>(field: &F, w: &Permutation) -> Matrix<PolyRing<F>> {
    let u = build_unipotent(field, w);
    let p = permutation_matrix(u.ring(), w);
    u.mul(&p)
}

/// U(w) with concrete field values substituted for the indeterminates. The
/// assignment must cover every inversion pair.
pub fn build_unipotent_numeric<F: Field>(
    field: &F,
    w: &Permutation,
    assignment: &BTreeMap<(u32, u32), F::Elem>,
) -> Result<Matrix<F>, PolyError> {
    let inv = w.inversions();
    let n = w.n() as usize;
    let mut m = Matrix::identity(field.clone(), n);
    for (i, j) in inv.iter() {
        let v = assignment
            .get(&(i, j))
            .ok_or(PolyError::MissingAssignment(i, j))?;
        m.set(i as usize - 1, j as usize - 1, v.clone());
    }
    Ok(m)
}

/// A unipotent matrix with independent uniform entries at the inversion
/// positions of w, drawn in ascending row-major pair order.
pub fn random_unipotent<F: Field, R: Rng + ?Sized>(
    field: &F,
    w: &Permutation,
    rng: &mut R,
) -> Matrix<F> {
    let mut m = Matrix::identity(field.clone(), w.n() as usize);
    for (i, j) in w.inversions().iter() {
        let v = field.sample(rng);
        m.set(i as usize - 1, j as usize - 1, v);
    }
    m
}

/// The fully generic n x n matrix (x_{ij}) over all n^2 indeterminates.
pub fn generic_matrix<F: Field>(field: &F, n: u32) -> Matrix<PolyRing<F>> {
    let ring = PolyRing::new(field.clone(), VariableSet::full_square(n));
    Matrix::from_fn(ring.clone(), n as usize, n as usize, |i, j| {
        ring.variable_for_pair((i as u32 + 1, j as u32 + 1))
            .expect("full variable square")
    })
}

/// Substitute values into every entry of a polynomial matrix, possibly
/// through an embedding into an extension field.
pub fn evaluate_matrix<F: Field, E: Field>(
    m: &Matrix<PolyRing<F>>,
    target: &E,
    embed: impl Fn(&F::Elem) -> E::Elem,
    assignment: &BTreeMap<(u32, u32), E::Elem>,
) -> Result<Matrix<E>, PolyError> {
    let mut out = Matrix::zero(target.clone(), m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = m.get(i, j).evaluate_in(target, &embed, assignment)?;
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// Memo for minors shared across one compound computation, keyed by row and
/// column bitmasks (ground sets are capped at 64 elements).
pub struct MinorCache<R: Ring> {
    map: HashMap<(u64, u64), R::Elem>,
}

impl<R: Ring> MinorCache<R> {
    pub fn new() -> Self {
        MinorCache { map: HashMap::new() }
    }
}

impl<R: Ring> Default for MinorCache<R> {
    fn default() -> Self {
        Self::new()
    }
}

/// det of the submatrix of `g` with the given rows and columns (0-based,
/// equal length), by cofactor expansion along the sparsest line. Entirely
/// division-free, so it works over any ring.
pub fn minor_det_cached<R: Ring>(
    g: &Matrix<R>,
    rows: &[usize],
    cols: &[usize],
    cache: &mut MinorCache<R>,
) -> R::Elem {
    assert_eq!(rows.len(), cols.len(), "minor must be square");
    assert!(g.rows() <= 64 && g.cols() <= 64, "ground set too large");
    minor_rec(g, rows, cols, cache)
}

/// Minor indexed by vertex sets (1-based), as a standalone computation.
pub fn minor_det<R: Ring>(g: &Matrix<R>, sigma: &KSet, tau: &KSet) -> R::Elem {
    let rows: Vec<usize> = sigma.vertices().iter().map(|&v| v as usize - 1).collect();
    let cols: Vec<usize> = tau.vertices().iter().map(|&v| v as usize - 1).collect();
    minor_det_cached(g, &rows, &cols, &mut MinorCache::new())
}

fn mask(idx: &[usize]) -> u64 {
    idx.iter().fold(0u64, |m, &i| m | (1 << i))
}

fn minor_rec<R: Ring>(
    g: &Matrix<R>,
    rows: &[usize],
    cols: &[usize],
    cache: &mut MinorCache<R>,
) -> R::Elem {
    let ring = g.ring().clone();
    match rows.len() {
        0 => return ring.one(),
        1 => return g.get(rows[0], cols[0]).clone(),
        _ => {}
    }
    let key = (mask(rows), mask(cols));
    if let Some(v) = cache.map.get(&key) {
        return v.clone();
    }

    // pick the row or column of the submatrix with the fewest nonzeros
    let mut best_row = (usize::MAX, 0usize);
    for (ri, &r) in rows.iter().enumerate() {
        let nz = cols.iter().filter(|&&c| !ring.is_zero(g.get(r, c))).count();
        if nz < best_row.0 {
            best_row = (nz, ri);
        }
    }
    let mut best_col = (usize::MAX, 0usize);
    for (ci, &c) in cols.iter().enumerate() {
        let nz = rows.iter().filter(|&&r| !ring.is_zero(g.get(r, c))).count();
        if nz < best_col.0 {
            best_col = (nz, ci);
        }
    }

    let mut acc = ring.zero();
    if best_row.0 <= best_col.0 {
        let ri = best_row.1;
        let sub_rows: Vec<usize> = rows
            .iter()
            .enumerate()
            .filter_map(|(t, &r)| (t != ri).then_some(r))
            .collect();
        for (ci, &c) in cols.iter().enumerate() {
            let e = g.get(rows[ri], c);
            if ring.is_zero(e) {
                continue;
            }
            let sub_cols: Vec<usize> = cols
                .iter()
                .enumerate()
                .filter_map(|(t, &cc)| (t != ci).then_some(cc))
                .collect();
            let minor = minor_rec(g, &sub_rows, &sub_cols, cache);
            let term = ring.mul(e, &minor);
            acc = if (ri + ci) % 2 == 0 {
                ring.add(&acc, &term)
            } else {
                ring.sub(&acc, &term)
            };
        }
    } else {
        let ci = best_col.1;
        let sub_cols: Vec<usize> = cols
            .iter()
            .enumerate()
            .filter_map(|(t, &c)| (t != ci).then_some(c))
            .collect();
        for (ri, &r) in rows.iter().enumerate() {
            let e = g.get(r, cols[ci]);
            if ring.is_zero(e) {
                continue;
            }
            let sub_rows: Vec<usize> = rows
                .iter()
                .enumerate()
                .filter_map(|(t, &rr)| (t != ri).then_some(rr))
                .collect();
            let minor = minor_rec(g, &sub_rows, &sub_cols, cache);
            let term = ring.mul(e, &minor);
            acc = if (ri + ci) % 2 == 0 {
                ring.add(&acc, &term)
            } else {
                ring.sub(&acc, &term)
            };
        }
    }
    cache.map.insert(key, acc.clone());
    acc
}

/// The rows of the k-th compound matrix of `g` indexed by the faces of `s`
/// (ascending lex), restricted to the given column families.
pub struct CompoundSubmatrix<R: Ring> {
    pub row_sets: Vec<KSet>,
    pub col_sets: Vec<KSet>,
    pub matrix: Matrix<R>,
}

/// Minors are memoized across all entries of one compound computation.
/// `col_sets` defaults to all k-subsets of [n] in ascending lex; only the
/// requested columns are ever materialized.
pub fn compound_submatrix<R: Ring>(
    g: &Matrix<R>,
    s: &UniformHypergraph,
    col_sets: Option<Vec<KSet>>,
) -> CompoundSubmatrix<R> {
    assert!(g.is_square() && g.rows() == s.n() as usize, "matrix size mismatch");
    let row_sets: Vec<KSet> = s.faces().cloned().collect();
    let col_sets = col_sets.unwrap_or_else(|| all_ksets(s.n(), s.k()));
    let mut cache = MinorCache::new();
    let row_idx: Vec<Vec<usize>> = row_sets
        .iter()
        .map(|ks| ks.vertices().iter().map(|&v| v as usize - 1).collect())
        .collect();
    let col_idx: Vec<Vec<usize>> = col_sets
        .iter()
        .map(|ks| ks.vertices().iter().map(|&v| v as usize - 1).collect())
        .collect();
    let matrix = Matrix::from_fn(
        g.ring().clone(),
        row_sets.len(),
        col_sets.len(),
        |i, j| minor_det_cached(g, &row_idx[i], &col_idx[j], &mut cache),
    );
    CompoundSubmatrix {
        row_sets,
        col_sets,
        matrix,
    }
}

/// Fraction-free determinant (one-step Bareiss), used as an independent
/// cross-check against the cofactor expansion.
pub fn det_bareiss<D: ElimDomain>(m: &Matrix<D>) -> D::Elem {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let ring = m.ring().clone();
    let n = m.rows();
    if n == 0 {
        return ring.one();
    }
    let mut a: Vec<Vec<D::Elem>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut negate = false;
    let mut prev = ring.one();
    for k in 0..n {
        let pivot = (k..n).find(|&i| !ring.is_zero(&a[i][k]));
        let Some(p) = pivot else {
            return ring.zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = ring.sub(
                    &ring.mul(&a[k][k], &a[i][j]),
                    &ring.mul(&a[i][k], &a[k][j]),
                );
                a[i][j] = ring.exact_div(&num, &prev);
            }
            a[i][k] = ring.zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        ring.neg(&det)
    } else {
        det
    }
}

/// Helper shared by tests and the symbolic shift: the entries of R(w) as
/// polynomials, evaluated at an assignment, must reproduce u * P(w) for the
/// matching numeric unipotent u.
pub fn substituted_r<F: Field>(
    field: &F,
    w: &Permutation,
    assignment: &BTreeMap<(u32, u32), F::Elem>,
) -> Result<Matrix<F>, PolyError> {
    let u = build_unipotent_numeric(field, w, assignment)?;
    let p = permutation_matrix(field, w);
    Ok(u.mul(&p))
}
