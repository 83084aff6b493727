//! Residue fields of prime ideals, realized exactly.
//!
//! For a prime P ⊂ R = ℚ[x1..xn] with maximal independent set S, the field
//! of fractions K of R/P is the finite extension ℚ(x_S)[x_dep] / P^e of the
//! rational function field in the independent variables.  Elements are kept
//! as normal forms against a Gröbner basis of the extended ideal; the
//! quotient is a finite-dimensional ℚ(x_S)-vector space on the standard
//! monomials, which makes inversion a linear solve.  When the modulus is
//! not actually prime, that solve is inconsistent for some element and the
//! failure surfaces as a zero-divisor error naming the culprit — the signal
//! to split the candidate further or supply true primes.

use std::fmt;
use std::sync::Arc;

use crate::assoc::max_independent_set;
use crate::field::{Field, Rationals};
use crate::groebner::Submodule;
use crate::linalg;
use crate::modops::{std_monomials, Ideal};
use crate::monomial::Monomial;
use crate::poly::{Polynomial, PolyVector, Ring};
use crate::ratfunc::{RatFunc, RatFuncField};
use crate::{Error, Result};

/// Shared description of one residue field.
#[derive(Debug)]
pub struct ResidueFieldData {
    /// The prime in the original ring.
    pub prime: Ideal<Rationals>,
    /// Original indices of the transcendence basis S.
    pub indep: Vec<usize>,
    /// Original indices of the algebraic (dependent) variables.
    pub dep: Vec<usize>,
    /// ℚ[x_S].
    pub params: Arc<Ring<Rationals>>,
    /// ℚ(x_S)[x_dep].
    pub dep_ring: Arc<Ring<RatFuncField>>,
    /// The extended ideal P·ℚ(x_S)[x_dep], as a rank-1 submodule.
    pub ext: Submodule<RatFuncField>,
    /// ℚ(x_S)-basis of the quotient: standard monomials, ascending.
    pub std_basis: Vec<Monomial>,
}

impl ResidueFieldData {
    pub fn new(prime: &Ideal<Rationals>) -> Result<Arc<Self>> {
        if !prime.is_proper() {
            return Err(Error::UnitIdeal);
        }
        let ring = prime.ring().clone();
        let indep = max_independent_set(prime).expect("proper ideal has an independent set");
        let dep: Vec<usize> = (0..ring.nvars()).filter(|v| !indep.contains(v)).collect();
        let params = Ring::new(
            Rationals,
            indep.iter().map(|&v| ring.vars[v].clone()).collect(),
        );
        let base = RatFuncField::new(params.clone());
        let dep_ring = Ring::new(
            base.clone(),
            dep.iter().map(|&v| ring.vars[v].clone()).collect(),
        );
        let gens: Vec<PolyVector<RatFuncField>> = prime
            .gens_poly()
            .iter()
            .map(|g| PolyVector::new(vec![to_dep_ring(&dep_ring, &indep, &dep, g)]))
            .filter(|v| !v.is_zero())
            .collect();
        let ext = Submodule::new(&dep_ring, 1, gens);
        let std_basis: Vec<Monomial> = std_monomials(&ext)
            .ok_or_else(|| {
                Error::Input(
                    "independent set is not maximal for the candidate ideal; \
                     its extension is not zero-dimensional"
                        .into(),
                )
            })?
            .into_iter()
            .map(|(_, m)| m)
            .collect();
        Ok(Arc::new(ResidueFieldData {
            prime: prime.clone(),
            indep,
            dep,
            params,
            dep_ring,
            ext,
            std_basis,
        }))
    }

    /// Degree [K : ℚ(x_S)] of the algebraic part.
    pub fn degree_over_base(&self) -> usize {
        self.std_basis.len()
    }

    /// Degree [K : ℚ] when S is empty (a number field); None otherwise.
    pub fn degree_over_q(&self) -> Option<usize> {
        if self.indep.is_empty() {
            Some(self.std_basis.len())
        } else {
            None
        }
    }

    /// Normal form of an element of ℚ(x_S)[x_dep] against the extended ideal.
    pub fn reduce(&self, p: &Polynomial<RatFuncField>) -> Polynomial<RatFuncField> {
        let mut v = self.ext.normal_form(&PolyVector::new(vec![p.clone()]));
        v.entries.remove(0)
    }

    /// Image of the original variable v in the residue field.
    pub fn var_image(&self, v: usize) -> Polynomial<RatFuncField> {
        if let Some(pos) = self.indep.iter().position(|&i| i == v) {
            Polynomial::constant(&self.dep_ring, self.dep_ring.field.param(pos))
        } else {
            let pos = self.dep.iter().position(|&d| d == v).unwrap();
            self.reduce(&Polynomial::var(&self.dep_ring, pos))
        }
    }

    /// Residue-class image of an arbitrary element of the original ring.
    pub fn project(&self, f: &Polynomial<Rationals>) -> Polynomial<RatFuncField> {
        self.reduce(&to_dep_ring(&self.dep_ring, &self.indep, &self.dep, f))
    }

    /// Coordinates of a (normal-form) element in the standard-monomial basis.
    fn coords(&self, p: &Polynomial<RatFuncField>) -> Vec<RatFunc> {
        let base = &self.dep_ring.field;
        let mut out = vec![base.zero(); self.std_basis.len()];
        for (m, c) in p.terms() {
            let pos = self
                .std_basis
                .iter()
                .position(|b| b == m)
                .expect("normal form supported on standard monomials");
            out[pos] = c.clone();
        }
        out
    }
}

/// Rewrite f ∈ ℚ[x1..xn] inside ℚ(x_S)[x_dep]: independent variables become
/// scalars of the function field, dependent ones stay variables.
fn to_dep_ring(
    dep_ring: &Arc<Ring<RatFuncField>>,
    indep: &[usize],
    dep: &[usize],
    f: &Polynomial<Rationals>,
) -> Polynomial<RatFuncField> {
    let base = &dep_ring.field;
    let n = f.ring().nvars();
    let images: Vec<Polynomial<RatFuncField>> = (0..n)
        .map(|v| {
            if let Some(pos) = dep.iter().position(|&d| d == v) {
                Polynomial::var(dep_ring, pos)
            } else {
                let pos = indep.iter().position(|&i| i == v).unwrap();
                Polynomial::constant(dep_ring, base.param(pos))
            }
        })
        .collect();
    f.map_into(dep_ring, &mut |c| base.from_rat(c), &images)
}

/// The residue field as a coefficient field: elements are normal forms in
/// ℚ(x_S)[x_dep].
#[derive(Clone, Debug)]
pub struct ResField(pub Arc<ResidueFieldData>);

impl PartialEq for ResField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Field for ResField {
    type Elem = Polynomial<RatFuncField>;

    fn zero(&self) -> Self::Elem {
        Polynomial::zero(&self.0.dep_ring)
    }
    fn one(&self) -> Self::Elem {
        Polynomial::one(&self.0.dep_ring)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &Self::Elem) -> bool {
        a.sub(&self.one()).is_zero()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(b)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.sub(b)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.0.reduce(&a.mul(b))
    }

    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let data = &self.0;
        let base = &data.dep_ring.field;
        // Multiplication by a, as a matrix in the standard basis: column per
        // basis monomial b, holding the coordinates of reduce(b·a).
        let dim = data.std_basis.len();
        let mut mat = vec![vec![base.zero(); dim]; dim];
        for (col, b) in data.std_basis.iter().enumerate() {
            let prod = data.reduce(&a.mul_term(b, &base.one()));
            for (row, c) in data.coords(&prod).into_iter().enumerate() {
                mat[row][col] = c;
            }
        }
        let one_pos = data
            .std_basis
            .iter()
            .position(|m| m.is_one())
            .expect("1 is a standard monomial of a proper ideal");
        let mut rhs = vec![base.zero(); dim];
        rhs[one_pos] = base.one();
        match linalg::solve(base, &mat, &rhs)? {
            Some(sol) => {
                let mut out = Polynomial::zero(&data.dep_ring);
                for (pos, c) in sol.into_iter().enumerate() {
                    if !base.is_zero(&c) {
                        out = out.add(&Polynomial::monomial(
                            &data.dep_ring,
                            data.std_basis[pos].clone(),
                            c,
                        ));
                    }
                }
                Ok(out)
            }
            None => Err(Error::ZeroDivisor(a.to_string())),
        }
    }

    fn from_rat(&self, q: &num_rational::BigRational) -> Self::Elem {
        Polynomial::constant(&self.0.dep_ring, self.0.dep_ring.field.from_rat(q))
    }

    fn fmt_elem(&self, a: &Self::Elem, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", a)
    }

    fn elem_is_compound(&self, a: &Self::Elem) -> bool {
        match a.terms() {
            [] => false,
            [(m, c)] => {
                if m.is_one() {
                    self.0.dep_ring.field.elem_is_compound(c)
                } else {
                    !self.0.dep_ring.field.is_one(c)
                }
            }
            _ => true,
        }
    }
}

// ---------------------------------------------------------------------------
// The γ substitution and lifting multipliers back to integer polynomials.
// ---------------------------------------------------------------------------

/// Ring K[y_dep] of multiplier polynomials: one variable per dependent
/// direction, named d<orig> after its partner.
pub fn multiplier_ring(data: &Arc<ResidueFieldData>) -> Arc<Ring<ResField>> {
    let orig = data.prime.ring();
    Ring::new(
        ResField(data.clone()),
        data.dep.iter().map(|&v| format!("d{}", orig.vars[v])).collect(),
    )
}

/// γ(f): substitute x_i ↦ y_i + u_i for dependent variables and x_i ↦ u_i
/// for independent ones, where u_i is the residue class of x_i.  Members of
/// the prime land in the ideal generated by the y's.
pub fn gamma(
    data: &Arc<ResidueFieldData>,
    t_ring: &Arc<Ring<ResField>>,
    f: &Polynomial<Rationals>,
) -> Polynomial<ResField> {
    let field = &t_ring.field;
    let n = f.ring().nvars();
    let images: Vec<Polynomial<ResField>> = (0..n)
        .map(|v| {
            let u = Polynomial::constant(t_ring, data.var_image(v));
            match data.dep.iter().position(|&d| d == v) {
                Some(pos) => Polynomial::var(t_ring, pos).add(&u),
                None => u,
            }
        })
        .collect();
    f.map_into(t_ring, &mut |c| field.from_rat(c), &images)
}

/// Ring ℚ[x1..xn, d<dep>...] receiving lifted multipliers: the original
/// variables followed by the dependent-direction partners.
pub fn lift_ring(data: &Arc<ResidueFieldData>) -> Arc<Ring<Rationals>> {
    let orig = data.prime.ring();
    let mut vars = orig.vars.clone();
    vars.extend(data.dep.iter().map(|&v| format!("d{}", orig.vars[v])));
    Ring::new(Rationals, vars)
}

/// Lift a multiplier vector over the residue field to a vector of integer
/// polynomials in `lift_ring`, clearing every denominator and dividing by
/// the overall rational content; the first nonzero coefficient is positive.
pub fn lift_vector(
    data: &Arc<ResidueFieldData>,
    b: &PolyVector<ResField>,
) -> PolyVector<Rationals> {
    let target = lift_ring(data);
    let orig_n = data.prime.ring().nvars();
    // Global denominator: lcm over every rational-function coefficient.
    let mut den = Polynomial::one(&data.params);
    for entry in &b.entries {
        for (_, kelem) in entry.terms() {
            for (_, c) in kelem.terms() {
                den = crate::gcd::lcm(&den, c.den());
            }
        }
    }
    let par_map: Vec<usize> = data.indep.clone();
    let mut entries: Vec<Polynomial<Rationals>> = Vec::new();
    for entry in &b.entries {
        let mut acc = Polynomial::zero(&target);
        for (ym, kelem) in entry.terms() {
            // y-monomial part, re-indexed to the tail of the lift ring.
            let mut mono = Monomial::one(target.nvars());
            for (pos, &e) in ym.0.iter().enumerate() {
                mono.0[orig_n + pos] = e;
            }
            for (xm, c) in kelem.terms() {
                let scale = den.try_div_exact(c.den()).expect("lcm divisible");
                let num = c.num().mul(&scale).embed(&target, &par_map);
                let mut full_mono = mono.clone();
                for (pos, &e) in xm.0.iter().enumerate() {
                    full_mono.0[data.dep[pos]] = e;
                }
                acc = acc.add(&num.mul_term(&full_mono, &crate::field::rat(1)));
            }
        }
        entries.push(acc);
    }
    // Rational content: make the coefficients coprime integers.
    let mut content: Option<num_rational::BigRational> = None;
    for e in &entries {
        for (_, c) in e.terms() {
            content = Some(match content {
                None => c.clone(),
                Some(g) => rat_gcd(&g, c),
            });
        }
    }
    if let Some(g) = content {
        let mut scale = g.recip();
        // Sign: first nonzero coefficient positive.
        'sign: for e in &entries {
            for (_, c) in e.terms() {
                if crate::field::rat_sign(&(c * &scale)) < 0 {
                    scale = -scale;
                }
                break 'sign;
            }
        }
        entries = entries.iter().map(|e| e.scale(&scale)).collect();
    }
    PolyVector::new(entries)
}

/// gcd of rationals: gcd of numerators over lcm of denominators, so that
/// dividing by it yields coprime integers.
fn rat_gcd(a: &num_rational::BigRational, b: &num_rational::BigRational) -> num_rational::BigRational {
    use num_bigint::BigInt;
    use num_integer::Integer;
    let num = a.numer().gcd(b.numer());
    let den = a.denom().lcm(b.denom());
    num_rational::BigRational::new(num, den.max(BigInt::from(1)))
}
