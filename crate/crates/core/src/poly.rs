//! Multivariate polynomials and polynomial vectors over a coefficient field.
//!
//! Terms are stored sorted in descending graded reverse lexicographic order
//! with no zero coefficients, so structural equality is mathematical
//! equality within one ring.  Gröbner routines that need other orders sort
//! working copies themselves; everything outside them sees one canonical
//! shape.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::monomial::{Monomial, MonomialOrder};

/// A polynomial ring: a coefficient field plus named variables.  Rings are
/// shared behind `Arc` and compared structurally.
#[derive(Clone, PartialEq, Debug)]
pub struct Ring<F: Field> {
    pub field: F,
    pub vars: Vec<String>,
}

impl<F: Field> Ring<F> {
    pub fn new(field: F, vars: Vec<String>) -> Arc<Self> {
        Arc::new(Ring { field, vars })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

/// Ring of polynomials over ℚ in the given variables.
pub fn qring(vars: &[&str]) -> Arc<Ring<Rationals>> {
    Ring::new(Rationals, vars.iter().map(|s| s.to_string()).collect())
}

#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Arc<Ring<F>>,
    /// Descending grevlex, no zero coefficients.
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.terms == other.terms
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Arc<Ring<F>>) -> Self {
        Polynomial { ring: ring.clone(), terms: vec![] }
    }

    pub fn constant(ring: &Arc<Ring<F>>, c: F::Elem) -> Self {
        if ring.field.is_zero(&c) {
            return Self::zero(ring);
        }
        Polynomial { ring: ring.clone(), terms: vec![(Monomial::one(ring.nvars()), c)] }
    }

    pub fn one(ring: &Arc<Ring<F>>) -> Self {
        Self::constant(ring, ring.field.one())
    }

    pub fn var(ring: &Arc<Ring<F>>, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index out of range");
        Polynomial { ring: ring.clone(), terms: vec![(Monomial::var(ring.nvars(), i), ring.field.one())] }
    }

    pub fn monomial(ring: &Arc<Ring<F>>, m: Monomial, c: F::Elem) -> Self {
        Self::from_terms(ring, vec![(m, c)])
    }

    /// Build from an arbitrary term list: sorts, combines, drops zeros.
    pub fn from_terms(ring: &Arc<Ring<F>>, mut terms: Vec<(Monomial, F::Elem)>) -> Self {
        let ord = MonomialOrder::GrevLex;
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = ring.field.add(&last.1, &c);
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|(_, c)| !ring.field.is_zero(c));
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        &self.ring.field
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_deg(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.total_deg()).max()
    }

    pub fn coeff(&self, m: &Monomial) -> F::Elem {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.field.zero())
    }

    /// Constant coefficient.
    pub fn constant_term(&self) -> F::Elem {
        self.coeff(&Monomial::one(self.ring.nvars()))
    }

    /// Leading term under the canonical (grevlex) storage order.
    pub fn lt(&self) -> Option<&(Monomial, F::Elem)> {
        self.terms.first()
    }

    /// Leading term under an arbitrary order (linear scan).
    pub fn lt_under(&self, ord: &MonomialOrder) -> Option<&(Monomial, F::Elem)> {
        self.terms.iter().max_by(|a, b| ord.cmp(&a.0, &b.0))
    }

    /// Degree in a single variable.
    pub fn deg_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[var]).max().unwrap_or(0)
    }

    /// Variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        let mut seen = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for i in m.support() {
                seen[i] = true;
            }
        }
        (0..seen.len()).filter(|&i| seen[i]).collect()
    }

    fn assert_same_ring(&self, other: &Self) {
        assert!(
            *self.ring == *other.ring,
            "ring mismatch: [{}] vs [{}]",
            self.ring.vars.join(","),
            other.ring.vars.join(",")
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        let f = &self.ring.field;
        let ord = MonomialOrder::GrevLex;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match ord.cmp(&self.terms[i].0, &other.terms[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = f.add(&self.terms[i].1, &other.terms[j].1);
                    if !f.is_zero(&c) {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn neg(&self) -> Self {
        let f = &self.ring.field;
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.ring.field;
        if f.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), f.mul(a, c)))
                .filter(|(_, a)| !f.is_zero(a))
                .collect(),
        }
    }

    /// Multiply by a single term c·x^m.
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let f = &self.ring.field;
        if f.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), f.mul(a, c)))
                .filter(|(_, a)| !f.is_zero(a))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        let f = &self.ring.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                let p = f.mul(c1, c2);
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let s = f.add(e.get(), &p);
                        *e.get_mut() = s;
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(p);
                    }
                }
            }
        }
        Self::from_terms(&self.ring, acc.into_iter().collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(&self.ring);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Partial derivative with respect to variable `var`.
    pub fn differentiate(&self, var: usize) -> Self {
        let f = &self.ring.field;
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] = e - 1;
            terms.push((m2, f.mul(c, &f.from_i64(e as i64))));
        }
        Self::from_terms(&self.ring, terms)
    }

    /// Iterated partial derivative ∂^a.
    pub fn differentiate_multi(&self, a: &Monomial) -> Self {
        let f = &self.ring.field;
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            if !a.divides(m) {
                continue;
            }
            let mut ff = BigInt::one();
            for i in 0..m.nvars() {
                for j in 0..a.0[i] {
                    ff *= BigInt::from((m.0[i] - j) as i64);
                }
            }
            let coeff = f.mul(c, &f.from_rat(&BigRational::from_integer(ff)));
            terms.push((a.quotient(m), coeff));
        }
        Self::from_terms(&self.ring, terms)
    }

    /// Apply `op`, read as a constant-coefficient differential operator
    /// (each monomial x^a acting as ∂^a), to `target`.
    pub fn apply_operator(&self, target: &Self) -> Self {
        self.assert_same_ring(target);
        let mut out = Self::zero(&self.ring);
        for (a, c) in &self.terms {
            out = out.add(&target.differentiate_multi(a).scale(c));
        }
        out
    }

    /// Evaluate at a point given by one field element per variable.
    pub fn eval(&self, point: &[F::Elem]) -> F::Elem {
        assert_eq!(point.len(), self.ring.nvars(), "point arity mismatch");
        let f = &self.ring.field;
        // Memoized powers per variable.
        let mut powers: Vec<Vec<F::Elem>> = point.iter().map(|p| vec![f.one(), p.clone()]).collect();
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..m.nvars() {
                let e = m.0[i] as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = f.mul(powers[i].last().unwrap(), &point[i]);
                    powers[i].push(next);
                }
                t = f.mul(&t, &powers[i][e]);
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Apply a ring homomorphism: map coefficients with `coeff_map` and each
    /// variable `i` to `var_images[i]`.
    pub fn map_into<G: Field>(
        &self,
        target: &Arc<Ring<G>>,
        coeff_map: &mut impl FnMut(&F::Elem) -> G::Elem,
        var_images: &[Polynomial<G>],
    ) -> Polynomial<G> {
        assert_eq!(var_images.len(), self.ring.nvars(), "one image per variable required");
        let mut powers: Vec<Vec<Polynomial<G>>> =
            var_images.iter().map(|p| vec![Polynomial::one(target), p.clone()]).collect();
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, coeff_map(c));
            for i in 0..m.nvars() {
                let e = m.0[i] as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul(&var_images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e]);
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Transport into another ring over the same field, sending variable `i`
    /// to variable `var_map[i]`.  Pure exponent relabelling.
    pub fn embed(&self, target: &Arc<Ring<F>>, var_map: &[usize]) -> Polynomial<F> {
        assert_eq!(var_map.len(), self.ring.nvars());
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; target.nvars()];
                for i in 0..m.nvars() {
                    if m.0[i] > 0 {
                        e[var_map[i]] += m.0[i];
                    }
                }
                (Monomial(e), c.clone())
            })
            .collect();
        Polynomial::from_terms(target, terms)
    }

    /// Inverse of `embed` for polynomials supported on mapped variables:
    /// fails if a variable outside the image occurs.
    pub fn restrict(&self, target: &Arc<Ring<F>>, var_map: &[usize]) -> Result<Polynomial<F>> {
        // var_map[i] = position in self's ring of target variable i.
        let mut back = vec![usize::MAX; self.ring.nvars()];
        for (i, &src) in var_map.iter().enumerate() {
            back[src] = i;
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.nvars()];
            for i in 0..m.nvars() {
                if m.0[i] > 0 {
                    if back[i] == usize::MAX {
                        return Err(Error::RingMismatch(format!(
                            "variable {} occurs but is not kept",
                            self.ring.vars[i]
                        )));
                    }
                    e[back[i]] = m.0[i];
                }
            }
            terms.push((Monomial(e), c.clone()));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Exact quotient self / divisor, or `None` when the division leaves a
    /// remainder.  Single-divisor term division under the canonical order.
    pub fn try_div_exact(&self, divisor: &Self) -> Option<Self> {
        self.assert_same_ring(divisor);
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let f = &self.ring.field;
        let (dm, dc) = divisor.lt().unwrap();
        let dc_inv = f.inv(dc).ok()?;
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, F::Elem)> = Vec::new();
        while let Some((m, c)) = rem.lt().cloned() {
            if !dm.divides(&m) {
                return None;
            }
            let qm = dm.quotient(&m);
            let qc = f.mul(&c, &dc_inv);
            rem = rem.sub(&divisor.mul_term(&qm, &qc));
            quot.push((qm, qc));
        }
        Some(Self::from_terms(&self.ring, quot))
    }

    /// Coefficient of x_v^e viewed as a univariate polynomial in variable
    /// `v`: the returned polynomial has exponent zero in `v`.
    pub fn coeff_wrt(&self, v: usize, e: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[v] == e)
            .map(|(m, c)| {
                let mut m2 = m.clone();
                m2.0[v] = 0;
                (m2, c.clone())
            })
            .collect();
        Self::from_terms(&self.ring, terms)
    }

    /// Divide by a scalar so the canonical leading coefficient is one.
    pub fn monic(&self) -> Result<Self> {
        match self.lt() {
            None => Ok(self.clone()),
            Some((_, c)) => {
                let inv = self.ring.field.inv(c)?;
                Ok(self.scale(&inv))
            }
        }
    }
}

impl Polynomial<Rationals> {
    /// Rescale to the unique associate with integer coefficients, content
    /// one, and positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            den = den.lcm(c.denom());
        }
        let mut num = BigInt::zero();
        for (_, c) in &self.terms {
            num = num.gcd(&(c.numer() * (&den / c.denom())));
        }
        let mut scale = BigRational::new(den, num);
        if self.terms[0].1.is_negative() {
            scale = -scale;
        }
        self.scale(&scale)
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Grammar-compatible rendering: explicit `*` and `^`, terms in descending
/// canonical order, e.g. `x1^3*x2 - 9*x1 + 5`.
impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let fl = &self.ring.field;
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let mono = mono_string(&self.ring.vars, m);
            let compound = fl.elem_is_compound(c);
            let mut cs = fl.elem_to_string(c);
            let mut neg = false;
            if !compound && cs.starts_with('-') {
                neg = true;
                cs = cs[1..].to_string();
            }
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let body = if mono.is_empty() {
                if compound {
                    format!("({})", cs)
                } else {
                    cs
                }
            } else if !compound && cs == "1" {
                mono
            } else if compound {
                format!("({})*{}", cs, mono)
            } else {
                format!("{}*{}", cs, mono)
            };
            write!(f, "{}", body)?;
        }
        Ok(())
    }
}

pub fn mono_string(vars: &[String], m: &Monomial) -> String {
    let mut parts = Vec::new();
    for i in 0..m.nvars() {
        match m.0[i] {
            0 => {}
            1 => parts.push(vars[i].clone()),
            e => parts.push(format!("{}^{}", vars[i], e)),
        }
    }
    parts.join("*")
}

/// An element of the free module R^k: a column of polynomials.
#[derive(Clone, PartialEq)]
pub struct PolyVector<F: Field> {
    pub entries: Vec<Polynomial<F>>,
}

impl<F: Field> PolyVector<F> {
    pub fn new(entries: Vec<Polynomial<F>>) -> Self {
        assert!(!entries.is_empty(), "rank zero vector");
        PolyVector { entries }
    }

    pub fn zero(ring: &Arc<Ring<F>>, k: usize) -> Self {
        PolyVector { entries: (0..k).map(|_| Polynomial::zero(ring)).collect() }
    }

    /// Standard basis vector e_j scaled by a polynomial.
    pub fn unit(ring: &Arc<Ring<F>>, k: usize, j: usize, p: Polynomial<F>) -> Self {
        let mut v = Self::zero(ring, k);
        v.entries[j] = p;
        v
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        self.entries[0].ring()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        PolyVector {
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        PolyVector {
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        PolyVector { entries: self.entries.iter().map(|p| p.neg()).collect() }
    }

    pub fn scale_poly(&self, p: &Polynomial<F>) -> Self {
        PolyVector { entries: self.entries.iter().map(|e| e.mul(p)).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        PolyVector { entries: self.entries.iter().map(|e| e.mul_term(m, c)).collect() }
    }

    pub fn map_entries(&self, f: impl Fn(&Polynomial<F>) -> Polynomial<F>) -> Self {
        PolyVector { entries: self.entries.iter().map(f).collect() }
    }
}

impl<F: Field> fmt::Debug for PolyVector<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}

impl<F: Field> fmt::Display for PolyVector<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

// Operator sugar on references, matching how the arithmetic is used inside
// the Gröbner and solver code.
impl<F: Field> std::ops::Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        Polynomial::add(self, rhs)
    }
}
impl<F: Field> std::ops::Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        Polynomial::sub(self, rhs)
    }
}
impl<F: Field> std::ops::Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        Polynomial::mul(self, rhs)
    }
}
impl<F: Field> std::ops::Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial::neg(self)
    }
}
