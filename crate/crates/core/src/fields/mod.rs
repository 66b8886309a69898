//! Exact coefficient arithmetic: prime fields GF(p), extension fields
//! GF(p^d), and arbitrary-precision rationals.
//!
//! Fields are runtime descriptors implementing [`Field`]; elements are plain
//! values (`u64` residues, coefficient vectors, big rationals) that carry no
//! back-reference, so all arithmetic goes through the descriptor.

mod ext;
mod prime;
mod rational;

pub use ext::{find_irreducible, ExtField};
pub use prime::{is_prime_u64, PrimeField};
pub use rational::{is_canonical, Rationals};

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    BadDegree,
    #[error("invalid field spec `{0}` (expected `q`, `<p>`, or `<p>^<d>`)")]
    BadSpec(String),
}

/// Commutative ring operations dispatched through a descriptor value.
///
/// `term_len` and `term_degree` report the size of an element as a
/// polynomial: for plain field elements both degenerate to 0/1 and -1/0.
/// They drive pivot selection and the size statistics of row reductions.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    /// Number of terms: 0 for zero, 1 for any other field element.
    fn term_len(&self, a: &Self::Elem) -> usize {
        if self.is_zero(a) {
            0
        } else {
            1
        }
    }

    /// Maximal total degree: -1 for zero, 0 for any other field element.
    fn term_degree(&self, a: &Self::Elem) -> i64 {
        if self.is_zero(a) {
            -1
        } else {
            0
        }
    }

    fn fmt_elem(&self, a: &Self::Elem, f: &mut fmt::Formatter<'_>) -> fmt::Result;

    fn display<'a>(&'a self, a: &'a Self::Elem) -> DisplayElem<'a, Self> {
        DisplayElem { ring: self, elem: a }
    }
}

pub struct DisplayElem<'a, R: Ring + ?Sized> {
    ring: &'a R,
    elem: &'a R::Elem,
}

impl<R: Ring> fmt::Display for DisplayElem<'_, R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.ring.fmt_elem(self.elem, f)
    }
}

/// A field descriptor: exact inverses plus uniform sampling.
pub trait Field: Ring {
    /// Descriptor of the prime subfield (`Self` for GF(p) and for the
    /// rationals). Row reductions that certify a sampled shift always run
    /// over this subfield's polynomial ring, no matter which extension the
    /// sample was drawn from.
    type Prime: Field;

    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, FieldError>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn prime_subfield(&self) -> Self::Prime;

    /// Embed an element of the prime subfield.
    fn from_prime(&self, a: &<Self::Prime as Ring>::Elem) -> Self::Elem;

    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;

    /// Number of elements; `None` for infinite fields.
    fn order(&self) -> Option<u128>;

    /// Uniform sample. For the rationals: a uniform integer numerator in
    /// `[-B, B]` with denominator 1, where `B` is the descriptor's bound.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// All elements in a canonical order, for exhaustive scans.
    /// `None` for infinite fields.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
}

/// Coefficient domains usable by the row-reduction engines.
///
/// `elim_multipliers(pivot, target)` yields `(alpha, beta)` such that
/// `alpha * target - beta * pivot = 0`; a row update is then
/// `row_t <- alpha * row_t - beta * row_p`. Over a field this is ordinary
/// Gaussian elimination (`alpha = 1`, `beta = target / pivot`); over a
/// polynomial ring both multipliers are gcd cofactors, keeping every entry in
/// the ring.
pub trait ElimDomain: Ring {
    /// Gcd computations implied by one `elim_multipliers` call (0 over a
    /// field, 1 over a polynomial ring); feeds the engine counters.
    const ELIM_GCDS: u64 = 0;

    fn elim_multipliers(&self, pivot: &Self::Elem, target: &Self::Elem)
        -> (Self::Elem, Self::Elem);

    /// Exact division by a nonzero divisor known to divide `a`.
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Divide a row by the gcd of its entries (no-op over a field).
    /// Returns the number of gcd computations performed.
    fn remove_content(&self, row: &mut [Self::Elem]) -> u64;
}

impl<F: Field> ElimDomain for F {
    fn elim_multipliers(&self, pivot: &Self::Elem, target: &Self::Elem)
        -> (Self::Elem, Self::Elem) {
        let beta = self
            .div(target, pivot)
            .expect("elimination pivot must be nonzero");
        (self.one(), beta)
    }

    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.div(a, b).expect("exact_div by zero")
    }

    fn remove_content(&self, _row: &mut [Self::Elem]) -> u64 {
        0
    }
}

/// Runtime description of a coefficient field, as written on the command
/// line: `q` for the rationals, `<p>` for GF(p), `<p>^<d>` for GF(p^d).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
    Ext { p: u64, d: usize },
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime(p) => *p,
            FieldSpec::Ext { p, .. } => *p,
        }
    }

    /// The spec of the prime subfield.
    pub fn prime_spec(&self) -> FieldSpec {
        match self {
            FieldSpec::Rational => FieldSpec::Rational,
            FieldSpec::Prime(p) | FieldSpec::Ext { p, .. } => FieldSpec::Prime(*p),
        }
    }

    /// Validates primality (and degree) eagerly.
    pub fn validate(&self) -> Result<(), FieldError> {
        match self {
            FieldSpec::Rational => Ok(()),
            FieldSpec::Prime(p) => PrimeField::new(*p).map(|_| ()),
            FieldSpec::Ext { p, d } => ExtField::new(*p, *d).map(|_| ()),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, FieldError> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rational);
        }
        let spec = if let Some((base, deg)) = s.split_once('^') {
            let p: u64 = base.trim().parse().map_err(|_| FieldError::BadSpec(s.into()))?;
            let d: usize = deg.trim().parse().map_err(|_| FieldError::BadSpec(s.into()))?;
            if d == 0 {
                return Err(FieldError::BadSpec(s.into()));
            }
            if d == 1 {
                FieldSpec::Prime(p)
            } else {
                FieldSpec::Ext { p, d }
            }
        } else {
            let p: u64 = s.parse().map_err(|_| FieldError::BadSpec(s.into()))?;
            FieldSpec::Prime(p)
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "{p}"),
            FieldSpec::Ext { p, d } => write!(f, "{p}^{d}"),
        }
    }
}
