//! Multivariate polynomial gcd over ℚ by primitive pseudo-remainder
//! sequences.
//!
//! Polynomials are viewed recursively as univariate in their highest
//! occurring variable with polynomial coefficients; contents are pulled out
//! and the primitive parts run through a Euclidean pseudo-remainder loop.
//! This keeps rational function fields ℚ(params) in reduced form without
//! any Gröbner machinery.

use crate::field::Rationals;
use crate::poly::Polynomial;

type QPoly = Polynomial<Rationals>;

/// Greatest common divisor, normalized to integer content one with positive
/// leading coefficient.  `gcd(0, 0) = 0`; nonzero constants count as units.
pub fn gcd(f: &QPoly, g: &QPoly) -> QPoly {
    if f.is_zero() {
        return g.primitive();
    }
    if g.is_zero() {
        return f.primitive();
    }
    if f.is_constant() || g.is_constant() {
        return Polynomial::one(f.ring());
    }
    let v = main_var(f, g);
    let (df, dg) = (f.deg_in(v), g.deg_in(v));
    if df == 0 {
        return gcd(f, &content_wrt(g, v));
    }
    if dg == 0 {
        return gcd(&content_wrt(f, v), g);
    }
    let cf = content_wrt(f, v);
    let cg = content_wrt(g, v);
    let c = gcd(&cf, &cg);
    let mut a = f.try_div_exact(&cf).expect("content divides");
    let mut b = g.try_div_exact(&cg).expect("content divides");
    if a.deg_in(v) < b.deg_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = prem(&a, &b, v);
        a = b;
        b = if r.is_zero() {
            r
        } else {
            let cr = content_wrt(&r, v);
            r.try_div_exact(&cr).expect("content divides")
        };
    }
    c.mul(&a).primitive()
}

pub fn lcm(f: &QPoly, g: &QPoly) -> QPoly {
    if f.is_zero() || g.is_zero() {
        return Polynomial::zero(f.ring());
    }
    let d = gcd(f, g);
    f.mul(g).try_div_exact(&d).expect("gcd divides the product").primitive()
}

/// Highest-index variable occurring in either argument.
fn main_var(f: &QPoly, g: &QPoly) -> usize {
    let mut v = 0;
    for p in [f, g] {
        for i in p.support() {
            v = v.max(i);
        }
    }
    v
}

/// Content with respect to variable `v`: gcd of the coefficients of the
/// powers of x_v.
pub fn content_wrt(p: &QPoly, v: usize) -> QPoly {
    let mut c = Polynomial::zero(p.ring());
    for e in 0..=p.deg_in(v) {
        let coeff = p.coeff_wrt(v, e);
        if !coeff.is_zero() {
            c = gcd(&c, &coeff);
            if c.is_constant() {
                break;
            }
        }
    }
    c
}

/// Pseudo-remainder of `a` by `b` in the variable `v`: multiples of `a` by
/// powers of b's leading coefficient are reduced until the degree drops
/// below deg_v(b).
fn prem(a: &QPoly, b: &QPoly, v: usize) -> QPoly {
    let db = b.deg_in(v);
    let lb = b.coeff_wrt(v, db);
    let xv = Polynomial::var(a.ring(), v);
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = r.deg_in(v);
        if dr < db {
            break;
        }
        let lr = r.coeff_wrt(v, dr);
        r = r.mul(&lb).sub(&lr.mul(&xv.pow(dr - db)).mul(b));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use crate::parse::parse_poly;
    use crate::poly::qring;

    fn p(src: &str) -> QPoly {
        let r = qring(&["x1", "x2", "x3"]);
        parse_poly(&r, src).unwrap()
    }

    #[test]
    fn univariate_cases() {
        assert_eq!(gcd(&p("x1^2 - 1"), &p("x1 - 1")), p("x1 - 1"));
        assert_eq!(gcd(&p("x1^3 + 3*x1^2 - 9*x1 + 5"), &p("x1^2 - 2*x1 + 1")), p("x1^2 - 2*x1 + 1"));
        assert_eq!(gcd(&p("x1^2 + 1"), &p("x1 - 1")), p("1"));
        // Rational scalars are units; the result is primitive with positive lead.
        assert_eq!(gcd(&p("-2*x1 + 2"), &p("4*x1^2 - 4")), p("x1 - 1"));
    }

    #[test]
    fn multivariate_cases() {
        assert_eq!(gcd(&p("x1^2 - x2^2"), &p("x1^2 + 2*x1*x2 + x2^2")), p("x1 + x2"));
        let a = p("x1*x2 - x2").mul(&p("x3^2 + x1"));
        let b = p("x1*x3 - x3").mul(&p("x3^2 + x1"));
        assert_eq!(gcd(&a, &b), p("x1 - 1").mul(&p("x3^2 + x1")));
        assert_eq!(gcd(&p("x1*x2 + 1"), &p("x1 + x2")), p("1"));
        assert_eq!(gcd(&p("0"), &p("0")), p("0"));
        assert_eq!(gcd(&p("0"), &p("3*x2")), p("x2"));
    }

    #[test]
    fn gcd_divides_and_lcm_identity() {
        let cases = [
            (p("x1^2 - x2*x3"), p("x1^2 - x2*x3").mul(&p("x1 + 1"))),
            (p("x1 + x2 + x3"), p("x2^2 + x2*x3 + x3^2")),
            (p("x1*x2^2 - x3"), p("x1*x2^2 + x3")),
        ];
        for (f, g) in cases {
            let d = gcd(&f, &g);
            assert!(f.try_div_exact(&d).is_some());
            assert!(g.try_div_exact(&d).is_some());
            let m = lcm(&f, &g);
            // f*g and gcd*lcm agree up to a rational unit.
            let fg = f.mul(&g).primitive();
            assert_eq!(fg, d.mul(&m).primitive());
        }
    }

    #[test]
    fn content_extraction() {
        let q = p("2*x1*x2^2 + 4*x2^2*x3").coeff_wrt(1, 2);
        assert_eq!(q, p("2*x1 + 4*x3"));
        assert_eq!(content_wrt(&p("x1^2*x3 + x1*x3^2"), 0), p("x3"));
        assert_eq!(p("6").constant_term(), rat(6));
    }
}
