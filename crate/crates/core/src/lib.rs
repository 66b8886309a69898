//! Exact computation of exterior algebraic shifts of uniform hypergraphs and
//! simplicial complexes.
//!
//! The library works over the rationals and over finite fields, and offers
//! four routes to a shift:
//!
//! * a deterministic symbolic computation over a multivariate polynomial ring,
//!   using a unipotent matrix with one indeterminate per inversion of a
//!   permutation (`shifting::partial_shift`, `shifting::full_shift`);
//! * a Las Vegas scheme that samples concrete unipotent matrices and certifies
//!   the sampled result against the symbolic one (`shifting::las_vegas_shift`);
//! * an uncertified single-sample Monte Carlo variant
//!   (`shifting::monte_carlo_shift`);
//! * combinatorial shifting along a transposition
//!   (`hypergraphs::UniformHypergraph::combinatorial_shift`).
//!
//! The row reductions behind all of these run either eagerly (classic row
//! echelon form, fraction-free over polynomial entries) or lazily (a
//! column-oriented scheme that maintains only the accumulated row transform);
//! see [`elimination`].

pub mod elimination;
pub mod exterior;
pub mod fields;
pub mod hypergraphs;
pub mod permutations;
pub mod polyring;
pub mod shifting;

pub use elimination::{Engine, ElimStats};
pub use fields::{Field, FieldSpec, Ring};
pub use hypergraphs::{KSet, SimplicialComplex, UniformHypergraph};
pub use permutations::Permutation;
pub use shifting::ShiftResult;
