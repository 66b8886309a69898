//! k-element subsets of [n], uniform hypergraphs, simplicial complexes, and
//! the purely combinatorial side of shifting: domination and lex orders,
//! shiftedness, and compression along a transposition.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::permutations::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("vertices must be strictly increasing positive integers, got {0:?}")]
    InvalidKSet(Vec<u32>),
    #[error("replacing {i} by {j} in {sigma:?} would duplicate a vertex")]
    DuplicateReplacement { sigma: Vec<u32>, i: u32, j: u32 },
    #[error("face {0:?} has {1} vertices, expected {2}")]
    NonUniform(Vec<u32>, usize, usize),
    #[error("vertex {0} exceeds ground-set size {1}")]
    VertexOutOfRange(u32, u32),
    #[error("a hypergraph must have at least one face")]
    Empty,
    #[error("duplicate face {0:?}")]
    DuplicateFace(Vec<u32>),
    #[error("skeleton dimension {0} exceeds complex dimension {1}")]
    DimensionOutOfRange(usize, usize),
    #[error("permutation is not a transposition: {0:?}")]
    NotATransposition(Vec<u32>),
}

/// A k-element subset of [n], stored as a strictly increasing vertex list.
///
/// The derived order on the sorted list coincides with the lexicographic
/// order on sets of equal cardinality (smaller minimum of the symmetric
/// difference first), so `KSet` can be used directly in ordered collections.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KSet {
    vertices: Vec<u32>,
}

impl fmt::Debug for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", strs.join(" "))
    }
}

impl KSet {
    /// Vertices must already be strictly increasing and positive.
    pub fn new(vertices: Vec<u32>) -> Result<Self, HypergraphError> {
        let ok = !vertices.is_empty()
            && vertices[0] >= 1
            && vertices.windows(2).all(|w| w[0] < w[1]);
        if ok {
            Ok(KSet { vertices })
        } else {
            Err(HypergraphError::InvalidKSet(vertices))
        }
    }

    /// Sorts the input; duplicates are an error.
    pub fn from_unsorted(mut vertices: Vec<u32>) -> Result<Self, HypergraphError> {
        vertices.sort_unstable();
        Self::new(vertices)
    }

    pub fn cardinality(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn max_vertex(&self) -> u32 {
        *self.vertices.last().expect("a k-set is nonempty")
    }

    pub fn contains(&self, v: u32) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Lexicographic comparison: the set owning the minimum of the symmetric
    /// difference is smaller. Total order refining the domination order.
    ///
    /// # Panics
    /// On cardinality mismatch.
    pub fn lex_cmp(&self, other: &KSet) -> Ordering {
        assert_eq!(
            self.cardinality(),
            other.cardinality(),
            "lex comparison requires equal cardinalities"
        );
        self.vertices.cmp(&other.vertices)
    }

    /// Domination: true iff the i-th smallest vertex of `self` is <= the
    /// i-th smallest vertex of `other` for all i.
    ///
    /// # Panics
    /// On cardinality mismatch.
    pub fn dominated_by(&self, other: &KSet) -> bool {
        assert_eq!(
            self.cardinality(),
            other.cardinality(),
            "domination requires equal cardinalities"
        );
        self.vertices.iter().zip(&other.vertices).all(|(a, b)| a <= b)
    }

    /// `self` with `i` replaced by `j` when `i` is present; unchanged when
    /// it is not. Errors when the replacement would duplicate `j`.
    pub fn replace_vertex(&self, i: u32, j: u32) -> Result<KSet, HypergraphError> {
        if !self.contains(i) {
            return Ok(self.clone());
        }
        if i != j && self.contains(j) {
            return Err(HypergraphError::DuplicateReplacement {
                sigma: self.vertices.clone(),
                i,
                j,
            });
        }
        let mut vertices: Vec<u32> = self
            .vertices
            .iter()
            .map(|&v| if v == i { j } else { v })
            .collect();
        vertices.sort_unstable();
        Ok(KSet { vertices })
    }

    /// Apply the transposition (a b) to the vertices. Always a valid k-set.
    pub fn apply_transposition(&self, a: u32, b: u32) -> KSet {
        let mut vertices: Vec<u32> = self
            .vertices
            .iter()
            .map(|&v| {
                if v == a {
                    b
                } else if v == b {
                    a
                } else {
                    v
                }
            })
            .collect();
        vertices.sort_unstable();
        KSet { vertices }
    }

    pub fn subsets(&self, size: usize) -> impl Iterator<Item = KSet> + '_ {
        self.vertices
            .iter()
            .copied()
            .combinations(size)
            .map(|v| KSet { vertices: v })
    }

    pub fn is_subset_of(&self, other: &KSet) -> bool {
        self.vertices.iter().all(|&v| other.contains(v))
    }
}

/// All k-subsets of [n] in ascending lexicographic order.
pub fn all_ksets(n: u32, k: usize) -> Vec<KSet> {
    (1..=n)
        .combinations(k)
        .map(|v| KSet { vertices: v })
        .collect()
}

/// A finite family of k-sets on the ground set [n]. Faces are kept in a
/// sorted set, so iteration is always ascending lex.
#[derive(Clone, PartialEq, Eq)]
pub struct UniformHypergraph {
    n: u32,
    k: usize,
    faces: BTreeSet<KSet>,
}

impl fmt::Debug for UniformHypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniformHypergraph(n={}, {:?})", self.n, self.faces)
    }
}

impl UniformHypergraph {
    pub fn new(
        n: u32,
        faces: impl IntoIterator<Item = KSet>,
    ) -> Result<Self, HypergraphError> {
        let mut set = BTreeSet::new();
        let mut k = None;
        for face in faces {
            let fk = face.cardinality();
            match k {
                None => k = Some(fk),
                Some(k0) if k0 != fk => {
                    return Err(HypergraphError::NonUniform(
                        face.vertices.clone(),
                        fk,
                        k0,
                    ))
                }
                _ => {}
            }
            if face.max_vertex() > n {
                return Err(HypergraphError::VertexOutOfRange(face.max_vertex(), n));
            }
            if !set.insert(face.clone()) {
                return Err(HypergraphError::DuplicateFace(face.vertices.clone()));
            }
        }
        match k {
            None => Err(HypergraphError::Empty),
            Some(k) => Ok(UniformHypergraph { n, k, faces: set }),
        }
    }

    /// Convenience constructor from vertex slices.
    pub fn from_faces(n: u32, faces: &[&[u32]]) -> Result<Self, HypergraphError> {
        let ksets: Result<Vec<KSet>, _> = faces
            .iter()
            .map(|f| KSet::from_unsorted(f.to_vec()))
            .collect();
        Self::new(n, ksets?)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        false // nonempty by construction
    }

    /// Ascending lex iteration.
    pub fn faces(&self) -> impl Iterator<Item = &KSet> + '_ {
        self.faces.iter()
    }

    pub fn contains(&self, face: &KSet) -> bool {
        self.faces.contains(face)
    }

    /// Lex-maximal face.
    pub fn max_face(&self) -> &KSet {
        self.faces.iter().next_back().expect("nonempty")
    }

    /// True iff every replacement of a vertex i by i-1 stays in the family.
    /// Replacements with i-1 already present leave the face unchanged and
    /// hold vacuously. O(k |S|) membership checks.
    pub fn is_shifted(&self) -> bool {
        for sigma in &self.faces {
            for &i in sigma.vertices() {
                if i == 1 || sigma.contains(i - 1) {
                    continue;
                }
                let rho = sigma
                    .replace_vertex(i, i - 1)
                    .expect("i-1 checked absent");
                if !self.faces.contains(&rho) {
                    return false;
                }
            }
        }
        true
    }

    /// Compression along the transposition t = (a b): each face containing b
    /// but not a moves to its image under t unless that image is already
    /// present. Runs in O(|S|) membership checks and preserves cardinality.
    pub fn combinatorial_shift(
        &self,
        t: &Permutation,
    ) -> Result<UniformHypergraph, HypergraphError> {
        Ok(self.combinatorial_shift_counted(t)?.0)
    }

    /// As `combinatorial_shift`, also reporting the number of membership
    /// checks performed (for complexity instrumentation).
    pub fn combinatorial_shift_counted(
        &self,
        t: &Permutation,
    ) -> Result<(UniformHypergraph, u64), HypergraphError> {
        let (a, b) = t
            .as_transposition()
            .ok_or_else(|| HypergraphError::NotATransposition(t.one_line().to_vec()))?;
        let mut checks = 0u64;
        let mut out = BTreeSet::new();
        for sigma in &self.faces {
            let moved = if sigma.contains(b) && !sigma.contains(a) {
                let image = sigma.apply_transposition(a, b);
                checks += 1;
                if self.faces.contains(&image) {
                    sigma.clone()
                } else {
                    image
                }
            } else {
                sigma.clone()
            };
            out.insert(moved);
        }
        debug_assert_eq!(out.len(), self.faces.len());
        Ok((
            UniformHypergraph {
                n: self.n,
                k: self.k,
                faces: out,
            },
            checks,
        ))
    }

    /// Compare two families of equal cardinality by their ascending-lex
    /// sorted sequences, position by position.
    ///
    /// # Panics
    /// On cardinality or uniformity mismatch.
    pub fn family_lex_cmp(&self, other: &UniformHypergraph) -> Ordering {
        assert_eq!(self.k, other.k, "family comparison requires equal k");
        assert_eq!(
            self.len(),
            other.len(),
            "family comparison requires equal cardinality"
        );
        self.faces.iter().cmp(other.faces.iter())
    }
}

/// A simplicial complex, represented by its inclusion-maximal faces.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: u32,
    facets: BTreeSet<KSet>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialComplex(n={}, facets={:?})", self.n, self.facets)
    }
}

impl SimplicialComplex {
    /// Builds the complex generated by the given faces; non-maximal
    /// generators are dropped.
    pub fn from_generators(
        n: u32,
        generators: impl IntoIterator<Item = KSet>,
    ) -> Result<Self, HypergraphError> {
        let gens: Vec<KSet> = generators.into_iter().collect();
        if gens.is_empty() {
            return Err(HypergraphError::Empty);
        }
        for g in &gens {
            if g.max_vertex() > n {
                return Err(HypergraphError::VertexOutOfRange(g.max_vertex(), n));
            }
        }
        let mut facets: BTreeSet<KSet> = BTreeSet::new();
        for g in &gens {
            if gens.iter().any(|h| g != h && g.is_subset_of(h) ) {
                continue;
            }
            facets.insert(g.clone());
        }
        Ok(SimplicialComplex { n, facets })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn facets(&self) -> impl Iterator<Item = &KSet> + '_ {
        self.facets.iter()
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn dim(&self) -> usize {
        self.facets
            .iter()
            .map(|f| f.cardinality() - 1)
            .max()
            .expect("nonempty")
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets.iter().all(|f| f.cardinality() - 1 == d)
    }

    /// All d-dimensional faces, i.e. the (d+1)-subsets of the facets.
    pub fn skeleton(&self, d: usize) -> Result<UniformHypergraph, HypergraphError> {
        if d > self.dim() {
            return Err(HypergraphError::DimensionOutOfRange(d, self.dim()));
        }
        let mut faces = BTreeSet::new();
        for facet in &self.facets {
            if facet.cardinality() >= d + 1 {
                faces.extend(facet.subsets(d + 1));
            }
        }
        UniformHypergraph::new(self.n, faces)
    }

    /// Entry d counts the d-dimensional faces.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..=self.dim())
            .map(|d| self.skeleton(d).expect("d <= dim").len())
            .collect()
    }
}
