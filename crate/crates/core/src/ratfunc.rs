//! The rational function field ℚ(params).
//!
//! Elements are reduced fractions of polynomials over ℚ in a fixed
//! parameter ring: numerator and denominator coprime and the denominator
//! monic under the canonical order, so equal elements are structurally
//! equal.  This is the coefficient field for computations over the
//! independent variables of a prime, and the base over which residue fields
//! are realized.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::gcd::gcd;
use crate::poly::{Polynomial, Ring};

type QPoly = Polynomial<Rationals>;

/// Field object: fractions over this parameter ring.
#[derive(Clone, Debug)]
pub struct RatFuncField {
    pub params: Arc<Ring<Rationals>>,
}

impl PartialEq for RatFuncField {
    fn eq(&self, other: &Self) -> bool {
        *self.params == *other.params
    }
}

impl RatFuncField {
    pub fn new(params: Arc<Ring<Rationals>>) -> Self {
        RatFuncField { params }
    }

    /// Embed a polynomial over ℚ in the parameters.
    pub fn from_poly(&self, p: QPoly) -> RatFunc {
        self.make(p, Polynomial::one(&self.params))
    }

    pub fn param(&self, i: usize) -> RatFunc {
        self.from_poly(Polynomial::var(&self.params, i))
    }

    fn make(&self, num: QPoly, den: QPoly) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc { num, den: Polynomial::one(&self.params) };
        }
        let g = gcd(&num, &den);
        let mut num = num.try_div_exact(&g).expect("gcd divides");
        let mut den = den.try_div_exact(&g).expect("gcd divides");
        // Monic denominator pins the representative.
        let lc = den.lt().unwrap().1.clone();
        let inv = BigRational::new(lc.denom().clone(), lc.numer().clone());
        num = num.scale(&inv);
        den = den.scale(&inv);
        RatFunc { num, den }
    }
}

/// A reduced fraction num/den of parameter polynomials.
#[derive(Clone, PartialEq)]
pub struct RatFunc {
    num: QPoly,
    den: QPoly,
}

impl RatFunc {
    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            let n = if self.num.num_terms() > 1 { format!("({})", self.num) } else { self.num.to_string() };
            let d = if self.den.num_terms() > 1 { format!("({})", self.den) } else { self.den.to_string() };
            write!(f, "{}/{}", n, d)
        }
    }
}

impl Field for RatFuncField {
    type Elem = RatFunc;

    fn zero(&self) -> RatFunc {
        RatFunc { num: Polynomial::zero(&self.params), den: Polynomial::one(&self.params) }
    }

    fn one(&self) -> RatFunc {
        RatFunc { num: Polynomial::one(&self.params), den: Polynomial::one(&self.params) }
    }

    fn is_zero(&self, a: &RatFunc) -> bool {
        a.num.is_zero()
    }

    fn is_one(&self, a: &RatFunc) -> bool {
        a.den.is_constant() && a.num == a.den
    }

    fn neg(&self, a: &RatFunc) -> RatFunc {
        RatFunc { num: a.num.neg(), den: a.den.clone() }
    }

    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let num = a.num.mul(&b.den).add(&b.num.mul(&a.den));
        let den = a.den.mul(&b.den);
        self.make(num, den)
    }

    fn sub(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        self.make(a.num.mul(&b.num), a.den.mul(&b.den))
    }

    fn inv(&self, a: &RatFunc) -> Result<RatFunc> {
        if a.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.make(a.den.clone(), a.num.clone()))
    }

    fn from_rat(&self, q: &BigRational) -> RatFunc {
        RatFunc {
            num: Polynomial::constant(&self.params, q.clone()),
            den: Polynomial::one(&self.params),
        }
    }

    fn fmt_elem(&self, a: &RatFunc, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", a)
    }

    fn elem_is_compound(&self, a: &RatFunc) -> bool {
        !a.den.is_constant() || a.num.num_terms() > 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::qring;

    fn field() -> RatFuncField {
        RatFuncField::new(qring(&["s", "t"]))
    }

    fn el(f: &RatFuncField, num: &str, den: &str) -> RatFunc {
        let n = parse_poly(&f.params, num).unwrap();
        let d = parse_poly(&f.params, den).unwrap();
        f.make(n, d)
    }

    #[test]
    fn reduction_and_canonical_form() {
        let f = field();
        // (s^2-1)/(s-1) reduces to s+1.
        let a = el(&f, "s^2 - 1", "s - 1");
        assert_eq!(a, el(&f, "s + 1", "1"));
        assert!(a.is_polynomial());
        // Denominator is forced monic.
        let b = el(&f, "s", "2*t");
        assert_eq!(b.den().to_string(), "t");
        assert_eq!(b.num().to_string(), "1/2*s");
    }

    #[test]
    fn field_laws_on_samples() {
        let f = field();
        let a = el(&f, "s + 1", "t");
        let b = el(&f, "t^2", "s - 1");
        let c = el(&f, "s*t - 1", "s + t");
        // Associativity and distributivity.
        assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
        assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        // Inverses.
        for x in [&a, &b, &c] {
            assert!(f.is_one(&f.mul(x, &f.inv(x).unwrap())));
        }
        assert!(f.inv(&f.zero()).is_err());
        // Subtraction against addition.
        assert_eq!(f.sub(&f.add(&a, &b), &b), a);
    }

    #[test]
    fn cancellation_across_products() {
        let f = field();
        let a = el(&f, "s^2 - t^2", "s + t"); // = s - t
        assert_eq!(a, el(&f, "s - t", "1"));
        let b = f.mul(&el(&f, "s", "s^2 + s"), &el(&f, "s + 1", "1"));
        assert!(f.is_one(&b));
    }
}
