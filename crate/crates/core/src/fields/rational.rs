//! The rationals with arbitrary-precision arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::{Field, FieldError, Ring};

/// The field of rationals. `numerator_bound` only parameterizes sampling
/// (uniform integer numerator in `[-B, B]`, denominator 1); it does not
/// affect field identity.
#[derive(Debug, Clone, Copy)]
pub struct Rationals {
    pub numerator_bound: i64,
}

pub const DEFAULT_NUMERATOR_BOUND: i64 = 1 << 16;

impl Default for Rationals {
    fn default() -> Self {
        Rationals {
            numerator_bound: DEFAULT_NUMERATOR_BOUND,
        }
    }
}

impl Rationals {
    pub fn with_bound(numerator_bound: i64) -> Self {
        assert!(numerator_bound >= 1, "sampling bound must be positive");
        Rationals { numerator_bound }
    }

    pub fn from_i64(&self, x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    pub fn from_frac(&self, num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

impl PartialEq for Rationals {
    fn eq(&self, _other: &Self) -> bool {
        true // all descriptors denote the same field
    }
}

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn fmt_elem(&self, a: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{a}")
    }
}

impl Field for Rationals {
    type Prime = Rationals;

    fn inv(&self, a: &BigRational) -> Result<BigRational, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(a.recip())
    }

    fn prime_subfield(&self) -> Rationals {
        *self
    }

    fn from_prime(&self, a: &BigRational) -> BigRational {
        a.clone()
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn order(&self) -> Option<u128> {
        None
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let b = self.numerator_bound;
        self.from_i64(rng.gen_range(-b..=b))
    }

    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }
}

/// Canonical-form check used by tests: positive denominator in lowest terms.
pub fn is_canonical(a: &BigRational) -> bool {
    use num_integer::Integer;
    a.denom().is_positive() && a.numer().gcd(a.denom()).is_one()
}
