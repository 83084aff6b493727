//! Weyl-algebra presentation of solution certificates.
//!
//! Every multiplier B(x, z) produced by the solver has a twin life as a
//! differential operator acting back on the equation side: reading each
//! z-power z^β as ∂^β in the x-variables turns B into a normally-ordered
//! Weyl algebra element D = Σ b_β(x)·∂_x^β.  Under the solver's pairing
//! conventions the two presentations carry identical coefficient data, and
//! the operator form decides membership: a vector w lies in the module iff
//! for every component the twisted identity Σ_j w_j(∂+x)·B_j ≡ 0 (mod P)
//! holds for all of its multipliers.
//!
//! The Weyl elements here are honest noncommutative citizens: products are
//! normally reordered with [∂_i, x_i] = 1, and the faithful action on
//! polynomials is available both as a correctness oracle and for applying
//! operator certificates directly.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::field::{Field, Rationals};
use crate::groebner::Submodule;
use crate::monomial::Monomial;
use crate::poly::{Polynomial, PolyVector, Ring};
use crate::residue::lift_ring;
use crate::solver::{annihilates, Component, Solution};
use crate::{Error, Result};

/// Ring ℚ[x1..xn, d&lt;v&gt;..] whose monomials encode normally-ordered Weyl
/// words: position i is multiplication by x_i, position n+i is ∂/∂x_i.
pub fn weyl_ring(base: &Arc<Ring<Rationals>>) -> Arc<Ring<Rationals>> {
    let mut vars = base.vars.clone();
    vars.extend(base.vars.iter().map(|v| format!("d{}", v)));
    Ring::new(Rationals, vars)
}

/// A differential operator with polynomial coefficients, stored normally
/// ordered (all x's to the left of all ∂'s) in a `weyl_ring`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeylOperator {
    n: usize,
    rep: Polynomial<Rationals>,
}

impl WeylOperator {
    /// Wrap an already normally-ordered representative.
    pub fn from_rep(n: usize, rep: Polynomial<Rationals>) -> Result<Self> {
        if rep.ring().nvars() != 2 * n {
            return Err(Error::ArityMismatch(format!(
                "a Weyl representative over {} base variables needs {} slots, found {}",
                n,
                2 * n,
                rep.ring().nvars()
            )));
        }
        Ok(WeylOperator { n, rep })
    }

    pub fn rep(&self) -> &Polynomial<Rationals> {
        &self.rep
    }

    pub fn zero(ring: &Arc<Ring<Rationals>>) -> Self {
        WeylOperator { n: ring.nvars() / 2, rep: Polynomial::zero(ring) }
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        WeylOperator { n: self.n, rep: self.rep.add(&other.rep) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        WeylOperator { n: self.n, rep: self.rep.sub(&other.rep) }
    }

    /// Normally-ordered product.  Concatenating x^a ∂^b with x^p ∂^q pushes
    /// ∂^b through x^p one variable at a time:
    /// ∂^b x^p = Σ_j C(b,j)·C(p,j)·j!·x^(p−j) ∂^(b−j).
    pub fn mul(&self, other: &Self) -> Self {
        let ring = self.rep.ring();
        let f = &ring.field;
        let n = self.n;
        let mut terms: Vec<(Monomial, BigRational)> = Vec::new();
        for (m1, c1) in self.rep.terms() {
            for (m2, c2) in other.rep.terms() {
                // Componentwise: b = d-part of m1, p = x-part of m2.
                let mut partial: Vec<(Vec<u32>, BigRational)> =
                    vec![(vec![0; 2 * n], f.mul(c1, c2))];
                for i in 0..n {
                    let (a, b) = (m1.0[i], m1.0[n + i]);
                    let (p, q) = (m2.0[i], m2.0[n + i]);
                    let mut next = Vec::new();
                    for (exps, coef) in &partial {
                        for j in 0..=b.min(p) {
                            let w = binom(b, j) * binom(p, j) * factorial(j);
                            let mut e = exps.clone();
                            e[i] = a + p - j;
                            e[n + i] = b + q - j;
                            next.push((e, coef * BigRational::from_integer(w)));
                        }
                    }
                    partial = next;
                }
                for (e, c) in partial {
                    terms.push((Monomial(e), c));
                }
            }
        }
        WeylOperator { n, rep: Polynomial::from_terms(ring, terms) }
    }

    /// Faithful action on polynomials in the base ring: x^a ∂^b acts as
    /// multiplication after iterated differentiation.
    pub fn apply(&self, target: &Polynomial<Rationals>) -> Polynomial<Rationals> {
        let n = self.n;
        assert_eq!(target.ring().nvars(), n, "target lives in the base ring");
        let base = target.ring();
        let one = crate::field::rat(1);
        let mut out = Polynomial::zero(base);
        for (m, c) in self.rep.terms() {
            let xpart = Monomial(m.0[..n].to_vec());
            let dpart = Monomial(m.0[n..].to_vec());
            out = out.add(&target.differentiate_multi(&dpart).mul_term(&xpart, &one).scale(c));
        }
        out
    }
}

fn factorial(j: u32) -> BigInt {
    let mut f = BigInt::one();
    for t in 2..=j {
        f *= BigInt::from(t as i64);
    }
    f
}

fn binom(a: u32, b: u32) -> BigInt {
    if b > a {
        return BigInt::from(0);
    }
    let mut num = BigInt::one();
    for t in 0..b {
        num *= BigInt::from((a - t) as i64);
    }
    num / factorial(b)
}

/// Operator presentation of one multiplier of a component: per coordinate,
/// reinterpret the d-partner of each dependent direction as ∂ in that
/// direction.  Coefficient data is untouched — the pairing convention makes
/// the dictionary factorial-free.
pub fn multiplier_to_operators(comp: &Component, idx: usize) -> Result<Vec<WeylOperator>> {
    let base = comp.prime.ring();
    let n = base.nvars();
    let wring = weyl_ring(base);
    let source = lift_ring(&comp.field);
    // Lift-ring slot -> weyl-ring slot: originals in place, the partner of
    // dependent variable v at n + v.
    let mut var_map: Vec<usize> = (0..n).collect();
    var_map.extend(comp.field.dep.iter().map(|&v| n + v));
    let b = comp.multipliers.get(idx).ok_or_else(|| {
        Error::Input(format!("component has {} multipliers", comp.multipliers.len()))
    })?;
    b.entries
        .iter()
        .map(|p| {
            debug_assert_eq!(p.ring(), &source);
            WeylOperator::from_rep(n, p.embed(&wring, &var_map))
        })
        .collect()
}

/// Inverse of `multiplier_to_operators`: fails when the operator involves a
/// ∂-direction that is independent for the component (no z pairs with it).
pub fn operators_to_multiplier(
    comp: &Component,
    ops: &[WeylOperator],
) -> Result<PolyVector<Rationals>> {
    let base = comp.prime.ring();
    let n = base.nvars();
    let target = lift_ring(&comp.field);
    let mut var_map: Vec<usize> = (0..n).collect();
    var_map.extend(comp.field.dep.iter().map(|&v| n + v));
    let entries = ops
        .iter()
        .map(|op| op.rep.restrict(&target, &var_map))
        .collect::<Result<Vec<_>>>()?;
    Ok(PolyVector::new(entries))
}

/// Decide membership of a vector in the solved module through its
/// certificates: w belongs iff every component's multipliers are killed by
/// the twisted action of w.
pub fn membership_test(sol: &Solution, w: &PolyVector<Rationals>) -> Result<bool> {
    if w.rank() != sol.module.k() {
        return Err(Error::ArityMismatch(format!(
            "vector has {} coordinates, the module has rank {}",
            w.rank(),
            sol.module.k()
        )));
    }
    Ok(sol.components.iter().all(|c| annihilates(w, c)))
}

/// Re-run the full operator-identity verification of a solution against an
/// arbitrary module: every generator must annihilate every component.
pub fn verify_solution(m: &Submodule<Rationals>, sol: &Solution) -> bool {
    m.gens().iter().all(|g| sol.components.iter().all(|c| annihilates(g, c)))
}
