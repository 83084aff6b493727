//! Coefficient fields.
//!
//! Every polynomial in the engine is generic over a [`Field`] object that
//! owns the arithmetic of its elements.  Three implementations exist:
//! exact rationals (here), rational function fields ℚ(params)
//! ([`crate::ratfunc`]), and residue fields of primes ([`crate::residue`]).
//! The object-with-elements shape (rather than element-only traits) lets
//! residue-field elements share one description of their quotient ring.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A field of coefficients, presented as an object that performs arithmetic
/// on its element type.  All operations are exact.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Multiplicative inverse.  Errors on zero, and in residue rings also on
    /// zero divisors (which is the standard symptom of a non-prime quotient).
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Embed a rational number.
    fn from_rat(&self, q: &BigRational) -> Self::Elem;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_rat(&BigRational::from_integer(BigInt::from(n)))
    }

    fn fmt_elem(&self, a: &Self::Elem, f: &mut fmt::Formatter<'_>) -> fmt::Result;

    fn elem_to_string(&self, a: &Self::Elem) -> String {
        struct D<'a, F: Field>(&'a F, &'a F::Elem);
        impl<F: Field> fmt::Display for D<'_, F> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_elem(self.1, f)
            }
        }
        D(self, a).to_string()
    }

    /// True when the printed element needs parentheses inside a product
    /// (sums, fractions with non-trivial denominators, residue classes).
    fn elem_is_compound(&self, _a: &Self::Elem) -> bool {
        false
    }
}

/// The field ℚ of arbitrary-precision rationals.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
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
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
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
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.recip())
    }
    fn from_rat(&self, q: &BigRational) -> BigRational {
        q.clone()
    }
    fn fmt_elem(&self, a: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", a)
    }
}

/// Convenience constructors for rational numbers in tests and fixtures.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Sign of a rational: -1, 0, or 1.
pub fn rat_sign(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_negative() {
        -1
    } else {
        1
    }
}
